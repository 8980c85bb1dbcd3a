//! Decomposes a two-tone signal and prints the features of each IMF.

use gaitforge::features::{emd_decompose, feature_vector, quartile_stats, EmdOptions};

fn main() -> gaitforge::Result<()> {
    let tau = std::f64::consts::TAU;
    let x: Vec<f64> = (0..2000)
        .map(|i| {
            let t = i as f64 / 1000.0;
            (tau * 10.0 * t).sin() + (tau * t).sin()
        })
        .collect();
    let d = emd_decompose(&x, &EmdOptions::default())?;
    println!("{} IMFs", d.imfs.len());
    for imf in &d.imfs {
        let f = feature_vector(&imf.values)?;
        let b = quartile_stats(&imf.values)?;
        println!(
            "imf {} ({} sifts): min {:.3} max {:.3} H {:.3} logE {:.1} rms {:.3} zcr {:.4} iqr {:.3}",
            imf.index, imf.sifts, f.min, f.max, f.shannon_entropy, f.log_energy, f.rms, f.zcr, b.iqr
        );
    }
    Ok(())
}
