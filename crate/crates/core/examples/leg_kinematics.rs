//! Sensor conversions and two-link inverse kinematics for a leg.

use gaitforge::capture::{
    counts_to_angle, counts_to_force, fk_two_link, ik_alg1_batch, ik_two_link, Elbow,
    TwoLinkGeometry,
};

fn main() -> gaitforge::Result<()> {
    println!("100 counts = {} N", counts_to_force(100.0)?);
    println!("pot 200 vs 100 = {} deg", counts_to_angle(200.0, 100.0)?);

    let geom = TwoLinkGeometry::new(5.0, 4.0)?;
    let (t1, t2) = ik_two_link(6.0, -3.0, &geom, Elbow::Down)?;
    let pose = fk_two_link(t1, t2, &geom);
    println!(
        "ik(6, -3) = ({:.4}, {:.4}) rad, fk tip = ({:.6}, {:.6})",
        t1, t2, pose.tip.0, pose.tip.1
    );

    let xs: Vec<f64> = (0..5).map(|i| 4.0 + i as f64).collect();
    let ys = vec![-2.0; 5];
    let (hip, knee) = ik_alg1_batch(&xs, &ys, &geom)?;
    for ((x, h), k) in xs.iter().zip(&hip).zip(&knee) {
        println!("  x={x}: hip {h:.4} knee {k:.4}");
    }
    Ok(())
}
