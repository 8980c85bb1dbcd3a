//! Cellular-automaton gait-state predictor.
//!
//! A state is a 4-bit code: bit 3 selects the leg (0 left, 1 right) and
//! bits 2..0 carry one of the eight sub-phases. Transitions are a fixed
//! 16-entry rule table that depends only on the current code.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gait_model::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubPhase8 {
    IC,
    LR,
    MS,
    TST,
    PSW,
    ISW,
    MSW,
    TSW,
}

impl SubPhase8 {
    pub const ALL: [SubPhase8; 8] = [
        SubPhase8::IC,
        SubPhase8::LR,
        SubPhase8::MS,
        SubPhase8::TST,
        SubPhase8::PSW,
        SubPhase8::ISW,
        SubPhase8::MSW,
        SubPhase8::TSW,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SubPhase8::IC => "IC",
            SubPhase8::LR => "LR",
            SubPhase8::MS => "MS",
            SubPhase8::TST => "TST",
            SubPhase8::PSW => "PSW",
            SubPhase8::ISW => "ISW",
            SubPhase8::MSW => "MSW",
            SubPhase8::TSW => "TSW",
        }
    }
}

impl FromStr for SubPhase8 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown sub-phase {s:?}")))
    }
}

impl fmt::Display for SubPhase8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Four-bit leg-state code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CAState(u8);

impl CAState {
    pub fn new(code: u8) -> Result<Self> {
        if code > 15 {
            return Err(Error::Range {
                what: "CA code",
                value: code as f64,
                lo: 0.0,
                hi: 15.0,
            });
        }
        Ok(CAState(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn side(self) -> Side {
        if self.0 & 0b1000 == 0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn subphase(self) -> SubPhase8 {
        SubPhase8::ALL[(self.0 & 0b111) as usize]
    }

    pub fn all() -> impl Iterator<Item = CAState> {
        (0..16).map(CAState)
    }
}

impl fmt::Display for CAState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl FromStr for CAState {
    type Err = Error;

    /// Exactly four binary digits, e.g. `"1000"`.
    fn from_str(s: &str) -> Result<Self> {
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Config(format!(
                "CA state must be four binary digits, got {s:?}"
            )));
        }
        CAState::new(u8::from_str_radix(s, 2).expect("validated binary"))
    }
}

pub fn encode(side: Side, subphase: SubPhase8) -> CAState {
    let leg = match side {
        Side::Left => 0,
        Side::Right => 0b1000,
    };
    CAState(leg | subphase.code())
}

pub fn decode(state: CAState) -> (Side, SubPhase8) {
    (state.side(), state.subphase())
}

/// Rule tables loaded from the fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaRules {
    next: [CAState; 16],
    complement: [SubPhase8; 8],
    /// Printed result label per 3-bit neighborhood, index = neighborhood value.
    neighborhood_labels: [String; 8],
}

#[derive(Deserialize)]
struct CaFile {
    neighborhood_rule_results: Vec<NeighborhoodRow>,
    transitions: Vec<TransitionRow>,
    complement: Vec<ComplementRow>,
}

#[derive(Deserialize)]
struct NeighborhoodRow {
    neighborhood: String,
    result: String,
}

#[derive(Deserialize)]
struct TransitionRow {
    neighbor: String,
    result: String,
}

#[derive(Deserialize)]
struct ComplementRow {
    left: String,
    right: String,
}

impl CaRules {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: CaFile = serde_json::from_str(s)?;

        let mut next: [Option<CAState>; 16] = [None; 16];
        for row in &file.transitions {
            let from: CAState = row.neighbor.parse()?;
            let to: CAState = row.result.parse()?;
            if next[from.0 as usize].replace(to).is_some() {
                return Err(Error::Config(format!("duplicate CA rule for {from}")));
            }
        }
        let next = collect_total(next, "CA transition")?;

        let mut complement: [Option<SubPhase8>; 8] = [None; 8];
        for row in &file.complement {
            let l: SubPhase8 = row.left.parse()?;
            complement[l.code() as usize] = Some(row.right.parse()?);
        }
        let complement = collect_total(complement, "complement map")?;

        let mut labels: [Option<String>; 8] = Default::default();
        for row in file.neighborhood_rule_results {
            if row.neighborhood.len() != 3 {
                return Err(Error::Config(format!(
                    "neighborhood must be three bits: {:?}",
                    row.neighborhood
                )));
            }
            let k = u8::from_str_radix(&row.neighborhood, 2)
                .map_err(|_| Error::Config(format!("bad neighborhood {:?}", row.neighborhood)))?;
            labels[k as usize] = Some(row.result);
        }
        let neighborhood_labels = collect_total(labels, "neighborhood table")?;

        Ok(CaRules {
            next,
            complement,
            neighborhood_labels,
        })
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Table lookup of the successor state.
    pub fn next_state(&self, s: CAState) -> CAState {
        self.next[s.0 as usize]
    }

    /// Sub-phase of the other leg while this leg is in `p`.
    pub fn complement(&self, p: SubPhase8) -> SubPhase8 {
        self.complement[p.code() as usize]
    }

    pub fn neighborhood_label(&self, neighborhood: u8) -> Option<&str> {
        self.neighborhood_labels
            .get(neighborhood as usize)
            .map(String::as_str)
    }

    /// `n` states starting with `init`.
    pub fn predict_sequence(&self, init: CAState, n: usize) -> Result<Vec<CAState>> {
        if n == 0 {
            return Err(Error::Size { needed: 1, got: 0 });
        }
        Ok(
            std::iter::successors(Some(init), |&s| Some(self.next_state(s)))
                .take(n)
                .collect(),
        )
    }

    pub fn transitions(&self) -> impl Iterator<Item = (CAState, CAState)> + '_ {
        CAState::all().map(|s| (s, self.next_state(s)))
    }
}

impl Default for CaRules {
    fn default() -> Self {
        crate::fixtures::ca_rules()
    }
}

fn collect_total<T: Clone, const N: usize>(slots: [Option<T>; N], what: &str) -> Result<[T; N]> {
    if let Some(missing) = slots.iter().position(Option::is_none) {
        return Err(Error::Config(format!("{what} has no entry for {missing}")));
    }
    Ok(slots.map(|s| s.expect("checked above")))
}
