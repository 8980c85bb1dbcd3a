//! Rocking-block walker: two continuous modes joined by impact resets.
//!
//! The state is a normalized lean `x1` (fraction of the half-angle α) and
//! its rate `x2`. In mode `Left` the block pivots with `x1 ≤ 0`, in mode
//! `Right` with `x1 ≥ 0`. Crossing `x1 = 0` is an impact: the velocity is
//! scaled by the restitution `r` and the mode flips.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

const EVENT_TOL: f64 = 1e-10;
const REST_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Left,
    Right,
}

impl Mode {
    pub fn flipped(self) -> Mode {
        match self {
            Mode::Left => Mode::Right,
            Mode::Right => Mode::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Left => "left",
            Mode::Right => "right",
        }
    }

    /// Impact guard: on or past `x1 = 0` while moving outward.
    fn on_guard(self, x1: f64, x2: f64) -> bool {
        match self {
            Mode::Left => x1 >= 0.0 && x2 >= 0.0,
            Mode::Right => x1 <= 0.0 && x2 <= 0.0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Mode::Left),
            "right" | "r" => Ok(Mode::Right),
            _ => Err(Error::Config(format!("unknown block mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockState {
    pub mode: Mode,
    pub x1: f64,
    pub x2: f64,
    pub t: f64,
}

impl BlockState {
    pub fn new(mode: Mode, x1: f64, x2: f64) -> Self {
        BlockState {
            mode,
            x1,
            x2,
            t: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockParams {
    /// Half-angle of the block (rad).
    pub alpha: f64,
    /// Restitution coefficient applied to `x2` at impact.
    pub r: f64,
    /// Integrator step (s).
    pub dt: f64,
    /// Use `dx2 = −sin(α(1−x1))/α` in mode `Right`, making it the mirror of `Left`.
    pub restoring_sign: bool,
    /// Impact budget before the run is declared chattering.
    pub max_impacts: usize,
}

impl BlockParams {
    pub fn new(alpha: f64, r: f64, dt: f64) -> Result<Self> {
        let p = BlockParams {
            alpha,
            r,
            dt,
            restoring_sign: false,
            max_impacts: 1_000_000,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_restoring_sign(mut self, on: bool) -> Self {
        self.restoring_sign = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        use std::f64::consts::FRAC_PI_2;
        if !(self.alpha > 0.0 && self.alpha < FRAC_PI_2) {
            return Err(Error::Range {
                what: "alpha",
                value: self.alpha,
                lo: 0.0,
                hi: FRAC_PI_2,
            });
        }
        if !(self.r > 0.0 && self.r <= 1.0) {
            return Err(Error::Range {
                what: "r",
                value: self.r,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        Ok(())
    }
}

/// Vector field as printed: `dx1 = x2`, `dx2 = sin(α(1 ± x1))/α`
/// (plus sign in `Left`, minus in `Right`).
pub fn flow(mode: Mode, x1: f64, x2: f64, alpha: f64) -> (f64, f64) {
    let a = match mode {
        Mode::Left => (alpha * (1.0 + x1)).sin() / alpha,
        Mode::Right => (alpha * (1.0 - x1)).sin() / alpha,
    };
    (x2, a)
}

fn field(mode: Mode, x1: f64, x2: f64, p: &BlockParams) -> (f64, f64) {
    let (d1, d2) = flow(mode, x1, x2, p.alpha);
    if p.restoring_sign && mode == Mode::Right {
        (d1, -d2)
    } else {
        (d1, d2)
    }
}

/// Mode energy scaled by α², referenced so both modes read `(αx2)²/2` at `x1 = 0`.
/// Conserved along the flow of the active mode.
pub fn energy(state: &BlockState, p: &BlockParams) -> f64 {
    let a = p.alpha;
    let kinetic = 0.5 * (a * state.x2).powi(2);
    let potential = match (state.mode, p.restoring_sign) {
        (Mode::Left, _) => (a * (1.0 + state.x1)).cos() - a.cos(),
        (Mode::Right, false) => a.cos() - (a * (1.0 - state.x1)).cos(),
        (Mode::Right, true) => (a * (1.0 - state.x1)).cos() - a.cos(),
    };
    potential + kinetic
}

fn rk4(s: &BlockState, p: &BlockParams, h: f64) -> Result<BlockState> {
    let f = |x1: f64, x2: f64| field(s.mode, x1, x2, p);
    let (k1a, k1b) = f(s.x1, s.x2);
    let (k2a, k2b) = f(s.x1 + 0.5 * h * k1a, s.x2 + 0.5 * h * k1b);
    let (k3a, k3b) = f(s.x1 + 0.5 * h * k2a, s.x2 + 0.5 * h * k2b);
    let (k4a, k4b) = f(s.x1 + h * k3a, s.x2 + h * k3b);
    let next = BlockState {
        mode: s.mode,
        x1: s.x1 + h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a),
        x2: s.x2 + h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b),
        t: s.t + h,
    };
    if !(next.x1.is_finite() && next.x2.is_finite()) {
        return Err(Error::Divergence { t: next.t });
    }
    Ok(next)
}

/// One classical Runge–Kutta step of length `params.dt`; the mode is kept.
pub fn step(state: &BlockState, params: &BlockParams) -> Result<BlockState> {
    rk4(state, params, params.dt)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpactEvent {
    pub t: f64,
    /// Mode left at this impact.
    pub from: Mode,
    pub pre_velocity: f64,
    pub post_velocity: f64,
    /// Row of the post-impact state in [`BlockTrace::states`].
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimStatus {
    Completed,
    /// Post-impact speed fell below 1e-12.
    AtRest,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockTrace {
    pub states: Vec<BlockState>,
    pub impacts: Vec<ImpactEvent>,
    pub status: SimStatus,
}

impl BlockTrace {
    /// Times between consecutive impacts.
    pub fn impact_intervals(&self) -> Vec<f64> {
        self.impacts.windows(2).map(|w| w[1].t - w[0].t).collect()
    }

    pub fn last(&self) -> &BlockState {
        self.states.last().expect("trace holds the initial state")
    }
}

/// Integrates from `init` to `t_end`, resolving every `x1 = 0` crossing by
/// bisection and applying the impact reset.
pub fn simulate(init: BlockState, params: &BlockParams, t_end: f64) -> Result<BlockTrace> {
    params.validate()?;
    if !(init.x1.is_finite() && init.x2.is_finite() && init.t.is_finite()) {
        return Err(Error::Domain("non-finite initial state".into()));
    }
    let outside = match init.mode {
        Mode::Left => init.x1 > EVENT_TOL,
        Mode::Right => init.x1 < -EVENT_TOL,
    };
    if outside {
        return Err(Error::Domain(format!(
            "x1 = {} is outside the {} mode domain",
            init.x1, init.mode
        )));
    }

    let mut states = vec![init];
    let mut impacts = Vec::new();
    let mut s = init;
    while s.t < t_end {
        let hit = if s.mode.on_guard(s.x1, s.x2) {
            s
        } else {
            let h = params.dt.min(t_end - s.t);
            let next = rk4(&s, params, h)?;
            if !s.mode.on_guard(next.x1, next.x2) {
                states.push(next);
                s = next;
                continue;
            }
            let hit = locate_crossing(&s, params, h, next)?;
            states.push(hit);
            hit
        };
        if impacts.len() >= params.max_impacts {
            return Err(Error::Chattering {
                limit: params.max_impacts,
                t: hit.t,
            });
        }
        // the reset places the block exactly on the switching surface
        let post = BlockState {
            mode: hit.mode.flipped(),
            x1: 0.0,
            x2: params.r * hit.x2,
            t: hit.t,
        };
        states.push(post);
        impacts.push(ImpactEvent {
            t: hit.t,
            from: hit.mode,
            pre_velocity: hit.x2,
            post_velocity: post.x2,
            index: states.len() - 1,
        });
        if post.x2.abs() < REST_TOL {
            return Ok(BlockTrace {
                states,
                impacts,
                status: SimStatus::AtRest,
            });
        }
        s = post;
    }
    Ok(BlockTrace {
        states,
        impacts,
        status: SimStatus::Completed,
    })
}

/// Bisects the step down to the earliest representable time on the guard.
fn locate_crossing(s: &BlockState, p: &BlockParams, h: f64, end: BlockState) -> Result<BlockState> {
    let (mut lo, mut hi) = (0.0, h);
    let mut best = end;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let m = rk4(s, p, mid)?;
        if s.mode.on_guard(m.x1, m.x2) {
            hi = mid;
            best = m;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * s.t.abs().max(1.0) {
            break;
        }
    }
    Ok(best)
}

/// CSV with header `t,mode,x1,x2,event`; `event` is 1 on post-impact rows.
pub fn write_trace_csv<W: Write>(trace: &BlockTrace, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "mode", "x1", "x2", "event"])?;
    let mut events = trace.impacts.iter().map(|e| e.index).peekable();
    for (i, s) in trace.states.iter().enumerate() {
        let flag = if events.peek() == Some(&i) {
            events.next();
            "1"
        } else {
            "0"
        };
        w.write_record([
            format!("{:.6}", s.t),
            s.mode.to_string(),
            format!("{:.6}", s.x1),
            format!("{:.6}", s.x2),
            flag.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, r: f64, dt: f64) -> BlockParams {
        BlockParams::new(alpha, r, dt).unwrap()
    }

    #[test]
    fn flow_examples() {
        assert_eq!(flow(Mode::Left, -1.0, 0.0, 0.7), (0.0, 0.0));
        assert_eq!(flow(Mode::Right, 1.0, 0.0, 0.7), (0.0, 0.0));
        let (d1, d2) = flow(Mode::Left, 0.0, 0.5, 0.3);
        assert_eq!(d1, 0.5);
        assert!((d2 - 0.3f64.sin() / 0.3).abs() < 1e-15);
    }

    #[test]
    fn equilibrium_does_not_move() {
        let p = params(0.2, 0.9, 1e-3);
        let s = BlockState::new(Mode::Left, -1.0, 0.0);
        let n = step(&s, &p).unwrap();
        assert!((n.x1 - s.x1).abs() < 1e-14 && n.x2.abs() < 1e-14);
        let trace = simulate(s, &p, 2.0).unwrap();
        assert!(trace.impacts.is_empty());
        assert!(trace.states.iter().all(|q| q.x1 == -1.0 && q.x2 == 0.0));
    }

    #[test]
    fn energy_conserved_between_impacts() {
        for restoring in [false, true] {
            let p = params(0.2, 0.9, 1e-3).with_restoring_sign(restoring);
            let trace = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 1.0).unwrap();
            assert!(trace.impacts.is_empty());
            let e0 = energy(&trace.states[0], &p);
            let drift = trace
                .states
                .iter()
                .map(|s| (energy(s, &p) - e0).abs())
                .fold(0.0, f64::max);
            assert!(drift < 1e-8, "drift {drift}");
        }
    }

    #[test]
    fn impacts_scale_velocity_and_alternate_modes() {
        let p = params(0.3, 0.9, 1e-3);
        let trace = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 20.0).unwrap();
        assert!(trace.impacts.len() >= 4);
        for w in trace.impacts.windows(2) {
            assert_ne!(w[0].from, w[1].from);
            assert!(w[1].post_velocity.abs() < w[0].post_velocity.abs());
        }
        for e in &trace.impacts {
            assert!((e.post_velocity - 0.9 * e.pre_velocity).abs() <= 1e-12);
            assert!(trace.states[e.index - 1].x1.abs() < 1e-10);
        }
    }

    #[test]
    fn energy_non_increasing_with_dissipation() {
        let p = params(0.3, 0.8, 1e-3).with_restoring_sign(true);
        let trace = simulate(BlockState::new(Mode::Left, -0.6, 0.0), &p, 15.0).unwrap();
        let e: Vec<f64> = trace.states.iter().map(|s| energy(s, &p)).collect();
        assert!(e.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    }

    #[test]
    fn mirrored_modes_give_equal_intervals() {
        let p = params(0.2, 1.0, 1e-4).with_restoring_sign(true);
        let trace = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 20.0).unwrap();
        let iv = trace.impact_intervals();
        assert!(iv.len() >= 4);
        for w in iv.windows(2) {
            assert!((w[1] - w[0]).abs() < 1e-6);
        }
    }

    #[test]
    fn printed_sign_intervals_alternate() {
        let p = params(0.2, 1.0, 1e-4);
        let trace = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 30.0).unwrap();
        let iv = trace.impact_intervals();
        assert!(iv.len() >= 5);
        for w in iv.windows(3) {
            assert!((w[2] - w[0]).abs() < 1e-6);
        }
        assert!((iv[1] - iv[0]).abs() > 1e-3);
    }

    #[test]
    fn rest_status_on_tiny_restitution() {
        let mut p = params(0.2, 1e-3, 1e-3).with_restoring_sign(true);
        p.max_impacts = 100;
        let trace = simulate(BlockState::new(Mode::Left, -0.1, 0.0), &p, 1e4).unwrap();
        assert_eq!(trace.status, SimStatus::AtRest);
    }

    #[test]
    fn chattering_guard() {
        let mut p = params(0.3, 0.99, 1e-3);
        p.max_impacts = 3;
        let err = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 100.0).unwrap_err();
        assert!(matches!(err, Error::Chattering { limit: 3, .. }));
    }

    #[test]
    fn rejects_bad_params_and_state() {
        assert!(BlockParams::new(0.0, 0.5, 1e-3).is_err());
        assert!(BlockParams::new(0.2, 1.1, 1e-3).is_err());
        assert!(BlockParams::new(0.2, 0.5, 0.0).is_err());
        let p = params(0.2, 0.5, 1e-3);
        assert!(simulate(BlockState::new(Mode::Left, 0.3, 0.0), &p, 1.0).is_err());
    }

    #[test]
    fn csv_export() {
        let p = params(0.3, 0.9, 0.05);
        let trace = simulate(BlockState::new(Mode::Left, -0.5, 0.0), &p, 5.0).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,mode,x1,x2,event\n"));
        let flagged = text.lines().filter(|l| l.ends_with(",1")).count();
        assert_eq!(flagged, trace.impacts.len());
        assert_eq!(text.lines().count(), trace.states.len() + 1);
    }
}
