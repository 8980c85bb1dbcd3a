//! Command-line front end.
//!
//! Each verb is a thin wrapper over a library operation. Numeric output uses
//! six decimal places. Malformed inputs exit with code 2, other failures
//! with code 1.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::capture::{
    ik_alg1_batch, read_accel_csv, smooth_moving_average, write_joint_angles_csv, zero_correct,
    TwoLinkGeometry,
};
use crate::error::{Error, Result};
use crate::features::{
    emd_decompose, feature_vector, quartile_stats, write_feature_csv, EmdOptions, FeatureRow,
};
use crate::fixtures::{self, FixtureDir};
use crate::gait_ca::CAState;
use crate::gait_model::{
    generate_gait_cycle, limit_cycle, validate_ranges, write_trajectory_tsv, FieldBank, GaitCycle,
    GaitModelConfig, JointId, PhaseSchedule, SchedulePreset, DEFAULT_TC,
};
use crate::learn::{
    biometric_metrics, confusion_and_accuracy, kfold_cv, knn_classify, mlp_train, read_dataset_csv,
    Dataset, KMeansClassifier, MetricsReport, MlpConfig,
};
use crate::push_fuzzy::{recover, validate_against_ranges, Direction, ForceInput};
use crate::rocking_block::{simulate, write_trace_csv, BlockParams, BlockState, Mode};

#[derive(Debug, Parser)]
#[command(
    name = "gaitforge",
    version,
    about = "Gait generation, analysis and push recovery"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one six-joint gait cycle from the polynomial model bank.
    GenGait(GenGaitArgs),
    /// Integrate the rocking block through its impacts.
    SimulateBlock(SimulateBlockArgs),
    /// Iterate the gait-state automaton.
    CaPredict(CaPredictArgs),
    /// Clean an accelerometer recording or turn tip positions into joint angles.
    Ingest(IngestArgs),
    /// EMD feature matrix of an accelerometer recording.
    Features(FeaturesArgs),
    /// Train on one dataset and score another.
    Classify(ClassifyArgs),
    /// Stratified k-fold cross-validation.
    Cv(CvArgs),
    /// Fuzzy push-recovery decision.
    Push(PushArgs),
    /// Two-column CSVs for limit cycles, stick figures and box plots.
    PlotData(PlotDataArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// JSON model bank; defaults to the shipped one.
    #[arg(long)]
    pub model_bank: Option<PathBuf>,
    #[arg(long, default_value = "guard")]
    pub schedule: SchedulePreset,
    #[arg(long, default_value_t = DEFAULT_TC)]
    pub tc: f64,
    /// Blend adjacent phase fields near each boundary.
    #[arg(long)]
    pub crossfade: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenGaitArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Trajectory file; the trajectory goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateBlockArgs {
    #[arg(long, default_value_t = 0.2)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.9)]
    pub r: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value = "left")]
    pub mode: Mode,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub x1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x2: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t_end: f64,
    /// Mirror the left-mode dynamics in the right mode.
    #[arg(long)]
    pub restoring: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CaPredictArgs {
    /// Initial 4-bit state, e.g. 0000.
    #[arg(long)]
    pub init: CAState,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// CSV with header t,x,y,z.
    #[arg(long)]
    pub input: PathBuf,
    /// Treat x,y as two-link tip positions and write joint angles.
    #[arg(long)]
    pub joint_angles: bool,
    #[arg(long, default_value_t = 5.0)]
    pub l1: f64,
    #[arg(long, default_value_t = 4.0)]
    pub l2: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FeaturesArgs {
    /// CSV with header t,x,y,z.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "s1")]
    pub subject: String,
    #[arg(long, default_value = "unlabeled")]
    pub label: String,
    #[arg(long, default_value_t = 10)]
    pub max_imfs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Knn,
    Kmeans,
    Mlp,
}

#[derive(Debug, Clone, Args)]
pub struct TrainerArgs {
    #[arg(long, value_enum, default_value = "knn")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Hidden layer sizes, comma separated.
    #[arg(long, default_value = "8")]
    pub layers: String,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[arg(long, default_value_t = 200)]
    pub epochs: usize,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub train: PathBuf,
    /// Defaults to the training set.
    #[arg(long)]
    pub test: Option<PathBuf>,
    #[command(flatten)]
    pub trainer: TrainerArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CvArgs {
    /// Dataset CSV; defaults to the bundled synthetic set.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    #[command(flatten)]
    pub trainer: TrainerArgs,
    /// JSON metrics report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PushArgs {
    /// Push magnitude in newtons.
    #[arg(long)]
    pub force: f64,
    #[arg(long)]
    pub dir: Direction,
    /// Six observed joint angles (degrees) in trajectory column order.
    #[arg(long, allow_hyphen_values = true)]
    pub angles: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PlotDataArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

/// Exit code for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Csv(_) | Error::Json(_) | Error::Io(_) | Error::Config(_) => 2,
        _ => 1,
    }
}

/// Runs one verb. Primary output goes to `--out` when given, otherwise to
/// `stdout`; summaries go to `stdout` when the primary output went to a file.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::GenGait(a) => gen_gait(a, stdout),
        Command::SimulateBlock(a) => simulate_block(a, stdout),
        Command::CaPredict(a) => ca_predict(a, stdout),
        Command::Ingest(a) => ingest(a, stdout),
        Command::Features(a) => features(a, stdout),
        Command::Classify(a) => classify(a, stdout),
        Command::Cv(a) => cv(a, stdout),
        Command::Push(a) => push(a, stdout),
        Command::PlotData(a) => plot_data(a),
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

/// Serializes with every non-integral number rounded to six decimals.
fn to_json_6dp<T: Serialize>(v: &T) -> Result<String> {
    fn round(v: Value) -> Value {
        match v {
            Value::Number(n) if n.is_f64() => {
                let x = n.as_f64().expect("f64 number");
                Value::from((x * 1e6).round() / 1e6)
            }
            Value::Array(a) => Value::Array(a.into_iter().map(round).collect()),
            Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round(v))).collect()),
            other => other,
        }
    }
    let mut s = serde_json::to_string_pretty(&round(serde_json::to_value(v)?))?;
    s.push('\n');
    Ok(s)
}

fn model_setup(a: &ModelArgs) -> Result<(FieldBank, GaitModelConfig)> {
    let bank = match &a.model_bank {
        Some(p) => FieldBank::load(p)?,
        None => FixtureDir::from_env().model_bank()?,
    };
    let config = GaitModelConfig {
        tc: a.tc,
        schedule: PhaseSchedule::preset(a.schedule),
        crossfade: a.crossfade,
        ..GaitModelConfig::default()
    };
    Ok((bank, config))
}

fn gait_summary(cycle: &GaitCycle) -> Result<String> {
    let traj = &cycle.trajectory;
    let ranges = FixtureDir::from_env().range_table()?;
    let report = validate_ranges(traj, &ranges);
    let mut s = String::new();
    s.push_str(&format!("samples {}\n", traj.len()));
    for (phase, start, end) in traj.segments() {
        s.push_str(&format!(
            "segment {} {:.6} {:.6} {}\n",
            phase.as_str(),
            traj.grid[start],
            traj.grid[end - 1],
            end - start
        ));
    }
    for b in &cycle.boundaries {
        s.push_str(&format!(
            "jump {} {}->{} x={:.6} {:.6}\n",
            b.joint,
            b.from.as_str(),
            b.to.as_str(),
            b.x,
            b.jump
        ));
    }
    s.push_str(&format!(
        "ranges checked {} violations {}\n",
        report.checked,
        report.violations.len()
    ));
    for ((phase, joint), n) in report.summary() {
        s.push_str(&format!("violation {} {} {}\n", phase.as_str(), joint, n));
    }
    Ok(s)
}

fn gen_gait(a: &GenGaitArgs, stdout: &mut dyn Write) -> Result<()> {
    let (bank, config) = model_setup(&a.model)?;
    let cycle = generate_gait_cycle(&bank, &config)?;
    let mut tsv = Vec::new();
    write_trajectory_tsv(&cycle.trajectory, &mut tsv)?;
    let summary = gait_summary(&cycle)?;
    match &a.out {
        Some(p) => {
            std::fs::write(p, tsv)?;
            stdout.write_all(summary.as_bytes())?;
        }
        None => {
            stdout.write_all(&tsv)?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn simulate_block(a: &SimulateBlockArgs, stdout: &mut dyn Write) -> Result<()> {
    let params = BlockParams::new(a.alpha, a.r, a.dt)?.with_restoring_sign(a.restoring);
    let trace = simulate(BlockState::new(a.mode, a.x1, a.x2), &params, a.t_end)?;
    let mut csv = Vec::new();
    write_trace_csv(&trace, &mut csv)?;
    let mut summary = format!(
        "impacts {} status {:?}\n",
        trace.impacts.len(),
        trace.status
    );
    for e in &trace.impacts {
        summary.push_str(&format!(
            "impact t={:.6} {:.6} -> {:.6}\n",
            e.t, e.pre_velocity, e.post_velocity
        ));
    }
    match &a.out {
        Some(p) => {
            std::fs::write(p, csv)?;
            stdout.write_all(summary.as_bytes())?;
        }
        None => stdout.write_all(&csv)?,
    }
    Ok(())
}

fn ca_predict(a: &CaPredictArgs, stdout: &mut dyn Write) -> Result<()> {
    let rules = FixtureDir::from_env().ca_rules()?;
    let seq = rules.predict_sequence(a.init, a.n)?;
    let line: Vec<String> = seq.iter().map(|s| s.to_string()).collect();
    emit(&a.out, stdout, format!("{}\n", line.join(" ")).as_bytes())
}

fn ingest(a: &IngestArgs, stdout: &mut dyn Write) -> Result<()> {
    let rec = read_accel_csv(&a.input)?;
    let mut buf = Vec::new();
    if a.joint_angles {
        let xs = smooth_moving_average(&rec.axis('x')?)?.series.values;
        let ys = smooth_moving_average(&rec.axis('y')?)?.series.values;
        let geom = TwoLinkGeometry::new(a.l1, a.l2)?;
        let (t1, t2) = ik_alg1_batch(&xs, &ys, &geom)?;
        let deg = |v: Vec<f64>| -> Vec<f64> { v.into_iter().map(f64::to_degrees).collect() };
        write_joint_angles_csv(&rec.t, &deg(t1), &deg(t2), &mut buf)?;
    } else {
        let mut cols = Vec::with_capacity(3);
        for axis in ['x', 'y', 'z'] {
            let series = zero_correct(&rec.axis(axis)?)?;
            cols.push(smooth_moving_average(&series)?.series.values);
        }
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["t", "x", "y", "z"])?;
        for i in 0..rec.len() {
            w.write_record([
                format!("{:.6}", rec.t[i]),
                format!("{:.6}", cols[0][i]),
                format!("{:.6}", cols[1][i]),
                format!("{:.6}", cols[2][i]),
            ])?;
        }
        w.flush()?;
    }
    emit(&a.out, stdout, &buf)
}

fn features(a: &FeaturesArgs, stdout: &mut dyn Write) -> Result<()> {
    let rec = read_accel_csv(&a.input)?;
    let opts = EmdOptions {
        max_imfs: a.max_imfs,
        ..EmdOptions::default()
    };
    let mut rows = Vec::new();
    for axis in ['x', 'y', 'z'] {
        let series = rec.axis(axis)?;
        let d = emd_decompose(&series.values, &opts)?;
        for imf in &d.imfs {
            rows.push(FeatureRow {
                subject: a.subject.clone(),
                joint: axis.to_string(),
                imf: imf.index + 1,
                features: feature_vector(&imf.values)?,
                label: a.label.clone(),
            });
        }
    }
    let mut buf = Vec::new();
    write_feature_csv(&rows, &mut buf)?;
    emit(&a.out, stdout, &buf)
}

fn parse_layers(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Config(format!("bad layer size {t:?}")))
        })
        .collect()
}

fn train_predict(t: &TrainerArgs, train: &Dataset, test: &Dataset) -> Result<Vec<usize>> {
    match t.model {
        ModelKind::Knn => test
            .features
            .iter()
            .map(|x| knn_classify(train, t.k, x))
            .collect(),
        ModelKind::Kmeans => {
            let model = KMeansClassifier::fit(train, t.max_iter, t.seed)?;
            test.features.iter().map(|x| model.predict(x)).collect()
        }
        ModelKind::Mlp => {
            let k = train.n_classes();
            let mut layers = vec![train.dim()];
            layers.extend(parse_layers(&t.layers)?);
            layers.push(if k == 2 { 1 } else { k });
            let model = mlp_train(train, &MlpConfig::new(layers, t.eta, t.epochs, t.seed))?;
            test.features.iter().map(|x| model.classify(x)).collect()
        }
    }
}

/// Relabels `test` with the class ids of `train`, matching by name.
fn align_classes(test: Dataset, train: &Dataset) -> Result<Dataset> {
    let labels = test
        .labels
        .iter()
        .map(|&l| {
            let name = &test.class_names[l];
            train
                .class_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Config(format!("test label {name:?} not in training set")))
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(test.features, labels, train.class_names.clone())
}

fn classify(a: &ClassifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let train = read_dataset_csv(&a.train)?;
    let test = match &a.test {
        Some(p) => align_classes(read_dataset_csv(p)?, &train)?,
        None => train.clone(),
    };
    let preds = train_predict(&a.trainer, &train, &test)?;
    let confusion = confusion_and_accuracy(&preds, &test.labels, train.n_classes())?;
    let report = MetricsReport {
        class_names: train.class_names.clone(),
        biometric: biometric_metrics(&confusion.matrix)?,
        confusion,
        cv: None,
        anova: None,
    };
    emit(&a.out, stdout, to_json_6dp(&report)?.as_bytes())
}

fn cv(a: &CvArgs, stdout: &mut dyn Write) -> Result<()> {
    let data = match &a.data {
        Some(p) => read_dataset_csv(p)?,
        None => fixtures::synthetic_dataset(),
    };
    let r = kfold_cv(&data, a.folds, a.trainer.seed, |train, test| {
        train_predict(&a.trainer, train, test)
    })?;
    let mut text = String::new();
    for (i, acc) in r.summary.fold_accuracies.iter().enumerate() {
        text.push_str(&format!("fold {} {:.6}\n", i + 1, acc));
    }
    text.push_str(&format!("mean {:.6}\n", r.summary.mean));
    text.push_str(&format!("variance {:.6}\n", r.summary.variance));
    text.push_str(&format!("std_dev {:.6}\n", r.summary.std_dev));
    stdout.write_all(text.as_bytes())?;
    if let Some(p) = &a.out {
        let confusion = crate::learn::report_for(r.confusion);
        let report = MetricsReport {
            class_names: data.class_names.clone(),
            biometric: biometric_metrics(&confusion.matrix)?,
            confusion,
            cv: Some(r.summary),
            anova: None,
        };
        std::fs::write(p, to_json_6dp(&report)?)?;
    }
    Ok(())
}

fn parse_angles(s: &str) -> Result<[f64; 6]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad angle {t:?}")))
        })
        .collect::<Result<_>>()?;
    v.try_into().map_err(|v: Vec<f64>| Error::Dimension {
        expected: 6,
        got: v.len(),
    })
}

fn push(a: &PushArgs, stdout: &mut dyn Write) -> Result<()> {
    let tables = FixtureDir::from_env().push_tables()?;
    let response = recover(
        ForceInput {
            magnitude: a.force,
            direction: a.dir,
        },
        &tables,
    )?;
    let mut value = serde_json::to_value(&response)?;
    if let Some(text) = &a.angles {
        let angles = parse_angles(text)?;
        let outcome = validate_against_ranges(&response, &angles, &tables);
        value["validation"] = serde_json::to_value(outcome)?;
    }
    emit(&a.out, stdout, to_json_6dp(&value)?.as_bytes())
}

fn write_two_column(path: &Path, header: [&str; 2], rows: &[(String, String)]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for (a, b) in rows {
        w.write_record([a, b])?;
    }
    w.flush()?;
    Ok(())
}

fn plot_data(a: &PlotDataArgs) -> Result<()> {
    let (bank, config) = model_setup(&a.model)?;
    let cycle = generate_gait_cycle(&bank, &config)?;
    let traj = &cycle.trajectory;
    std::fs::create_dir_all(&a.out)?;
    let f6 = |v: f64| format!("{v:.6}");

    for joint in JointId::ALL {
        let lc = limit_cycle(traj, joint)?;
        let rows: Vec<(String, String)> = lc.points.iter().map(|&(x, v)| (f6(x), f6(v))).collect();
        write_two_column(
            &a.out.join(format!("limit_cycle_{joint}.csv")),
            ["angle_deg", "velocity_deg_per_unit"],
            &rows,
        )?;

        let stats = quartile_stats(traj.joint(joint))?;
        let rows = vec![
            ("q1".to_string(), f6(stats.q1)),
            ("q2".to_string(), f6(stats.q2)),
            ("q3".to_string(), f6(stats.q3)),
            ("iqr".to_string(), f6(stats.iqr)),
            ("outliers".to_string(), stats.outliers.len().to_string()),
            (
                "suspected_outliers".to_string(),
                stats.suspected_outliers.len().to_string(),
            ),
        ];
        write_two_column(
            &a.out.join(format!("boxplot_{joint}.csv")),
            ["stat", "value"],
            &rows,
        )?;
    }

    // hip at the origin, thigh hanging straight down at zero hip angle
    let geom = TwoLinkGeometry::new(config.l1, config.l2)?;
    for (side, hip, knee) in [
        ("left", JointId::LEFT_HIP, JointId::LEFT_KNEE),
        ("right", JointId::RIGHT_HIP, JointId::RIGHT_KNEE),
    ] {
        let mut rows = Vec::new();
        for (h, k) in traj.joint(hip).iter().zip(traj.joint(knee)) {
            let th1 = h.to_radians() - std::f64::consts::FRAC_PI_2;
            let pose = crate::capture::fk_two_link(th1, -k.to_radians(), &geom);
            rows.push((f6(0.0), f6(0.0)));
            rows.push((f6(pose.elbow.0), f6(pose.elbow.1)));
            rows.push((f6(pose.tip.0), f6(pose.tip.1)));
        }
        write_two_column(&a.out.join(format!("stick_{side}.csv")), ["x", "y"], &rows)?;
    }
    Ok(())
}
