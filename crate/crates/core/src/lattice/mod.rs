//! Real node sequences `Λ = {λ_n}` and the tests that decide whether they are
//! complete interpolating sequences for `V²_c`.
//!
//! Three models are supported: an explicit finite window of nodes, a periodic
//! perturbation of the integers, and an affine grid. Periodic and affine
//! inputs are infinite sequences whose properties can be decided exactly;
//! explicit windows only ever yield finite-window heuristics.

mod avdonin;
mod density;
mod enumeration;
mod separation;

pub use avdonin::{avdonin_verdict, AvdoninOptions, AvdoninVerdict, AveragingWindow, Caveat};
pub use density::{beurling_densities, DensityEstimate, DensityMethod, ScaleDensity};
pub use enumeration::{canonical_enumeration, Enumeration};
pub use separation::{check_separation, Separation};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Closed integer range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IndexRange { lo, hi }
    }

    /// `[-m, m]`
    pub fn symmetric(m: i64) -> Self {
        IndexRange { lo: -m, hi: m }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn intersect(&self, other: IndexRange) -> IndexRange {
        IndexRange { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl From<[i64; 2]> for IndexRange {
    fn from(v: [i64; 2]) -> Self {
        IndexRange { lo: v[0], hi: v[1] }
    }
}

impl From<IndexRange> for [i64; 2] {
    fn from(r: IndexRange) -> Self {
        [r.lo, r.hi]
    }
}

/// JSON description of a node sequence, e.g.
/// `{"kind": "periodic", "offsets": [0.45, -0.35]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SequenceSpec {
    Affine {
        alpha: f64,
        #[serde(default)]
        beta: f64,
    },
    Periodic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<usize>,
        offsets: Vec<f64>,
    },
    Explicit {
        nodes: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index_range: Option<IndexRange>,
    },
}

/// The validated shape of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// `λ_m` for `m ∈ [first_index, first_index + nodes.len())`.
    Explicit { first_index: i64, nodes: Vec<f64> },
    /// `λ_n = n + offsets[n mod P]`.
    Periodic { offsets: Vec<f64> },
    /// `λ_n = alpha * n + beta`.
    Affine { alpha: f64, beta: f64 },
}

/// A strictly increasing real node sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceSpec", into = "SequenceSpec")]
pub struct NodeSequence {
    kind: SequenceKind,
}

impl TryFrom<SequenceSpec> for NodeSequence {
    type Error = Error;

    fn try_from(spec: SequenceSpec) -> Result<Self> {
        build_sequence(&spec)
    }
}

impl From<NodeSequence> for SequenceSpec {
    fn from(seq: NodeSequence) -> Self {
        seq.spec()
    }
}

/// Validates a sequence description.
pub fn build_sequence(spec: &SequenceSpec) -> Result<NodeSequence> {
    match spec {
        SequenceSpec::Affine { alpha, beta } => NodeSequence::affine(*alpha, *beta),
        SequenceSpec::Periodic { period, offsets } => {
            if let Some(p) = period {
                if *p != offsets.len() {
                    return Err(Error::BadParameter(format!(
                        "period {p} does not match {} offsets",
                        offsets.len()
                    )));
                }
            }
            NodeSequence::periodic(offsets.clone())
        }
        SequenceSpec::Explicit { nodes, index_range } => {
            let first = match index_range {
                Some(r) => {
                    if r.len() != nodes.len() {
                        return Err(Error::BadParameter(format!(
                            "index range [{}, {}] has {} slots for {} nodes",
                            r.lo,
                            r.hi,
                            r.len(),
                            nodes.len()
                        )));
                    }
                    r.lo
                }
                None => 0,
            };
            NodeSequence::explicit(first, nodes.clone())
        }
    }
}

fn check_finite(values: &[f64], what: &str) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::BadParameter(format!("{what} contains non-finite value {v}")));
    }
    Ok(())
}

impl NodeSequence {
    pub fn affine(alpha: f64, beta: f64) -> Result<Self> {
        check_finite(&[alpha, beta], "affine grid")?;
        if alpha <= 0.0 {
            return Err(Error::BadParameter(format!("slope must be > 0, got {alpha}")));
        }
        Ok(NodeSequence { kind: SequenceKind::Affine { alpha, beta } })
    }

    /// The integer lattice `λ_n = n`.
    pub fn integers() -> Self {
        NodeSequence { kind: SequenceKind::Affine { alpha: 1.0, beta: 0.0 } }
    }

    pub fn periodic(offsets: Vec<f64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::BadParameter("period must be at least 1".into()));
        }
        check_finite(&offsets, "offsets")?;
        let p = offsets.len();
        for j in 0..p {
            let cur = j as f64 + offsets[j];
            let next = (j + 1) as f64 + offsets[(j + 1) % p];
            if next <= cur {
                return Err(Error::NonIncreasing { index: j as i64 + 1, prev: cur, next });
            }
        }
        Ok(NodeSequence { kind: SequenceKind::Periodic { offsets } })
    }

    pub fn explicit(first_index: i64, nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyWindow);
        }
        check_finite(&nodes, "nodes")?;
        for (i, w) in nodes.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::NonIncreasing {
                    index: first_index + i as i64 + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(NodeSequence { kind: SequenceKind::Explicit { first_index, nodes } })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn spec(&self) -> SequenceSpec {
        match &self.kind {
            SequenceKind::Affine { alpha, beta } => {
                SequenceSpec::Affine { alpha: *alpha, beta: *beta }
            }
            SequenceKind::Periodic { offsets } => {
                SequenceSpec::Periodic { period: Some(offsets.len()), offsets: offsets.clone() }
            }
            SequenceKind::Explicit { first_index, nodes } => SequenceSpec::Explicit {
                nodes: nodes.clone(),
                index_range: Some(IndexRange::new(
                    *first_index,
                    *first_index + nodes.len() as i64 - 1,
                )),
            },
        }
    }

    /// Index range of the stored data; `None` for infinite sequences.
    pub fn data_range(&self) -> Option<IndexRange> {
        match &self.kind {
            SequenceKind::Explicit { first_index, nodes } => {
                Some(IndexRange::new(*first_index, *first_index + nodes.len() as i64 - 1))
            }
            _ => None,
        }
    }

    /// `λ_n`, or `None` outside an explicit window.
    pub fn node(&self, n: i64) -> Option<f64> {
        match &self.kind {
            SequenceKind::Affine { alpha, beta } => Some(alpha * n as f64 + beta),
            SequenceKind::Periodic { offsets } => {
                let p = offsets.len() as i64;
                Some(n as f64 + offsets[n.rem_euclid(p) as usize])
            }
            SequenceKind::Explicit { first_index, nodes } => {
                let i = n.checked_sub(*first_index)?;
                usize::try_from(i).ok().and_then(|i| nodes.get(i).copied())
            }
        }
    }

    /// Nodes over `range`, clipped to the data for explicit windows.
    pub fn window(&self, range: IndexRange) -> Result<NodeWindow> {
        let range = match self.data_range() {
            Some(data) => range.intersect(data),
            None => range,
        };
        if range.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let positions = range.iter().map(|n| self.node(n).expect("in range")).collect();
        Ok(NodeWindow { first_index: range.lo, positions })
    }
}

/// A contiguous run of nodes `λ_first, λ_{first+1}, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeWindow {
    pub first_index: i64,
    pub positions: Vec<f64>,
}

impl NodeWindow {
    pub fn range(&self) -> IndexRange {
        IndexRange::new(self.first_index, self.first_index + self.positions.len() as i64 - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.positions.iter().enumerate().map(|(i, &x)| (self.first_index + i as i64, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_lattice() {
        let s = build_sequence(&SequenceSpec::Affine { alpha: 1.0, beta: 0.0 }).unwrap();
        for n in -5..=5 {
            assert_eq!(s.node(n), Some(n as f64));
        }
    }

    #[test]
    fn large_alternating_period_two_is_rejected() {
        let err = NodeSequence::periodic(vec![0.7, -0.7]).unwrap_err();
        match err {
            Error::NonIncreasing { prev, next, .. } => {
                assert!((prev - 0.7).abs() < 1e-15);
                assert!((next - 0.3).abs() < 1e-15);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn small_alternating_period_two() {
        let s = NodeSequence::periodic(vec![0.3, -0.3]).unwrap();
        let got: Vec<f64> = (0..4).map(|n| s.node(n).unwrap()).collect();
        let want = [0.3, 0.7, 2.3, 2.7];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15);
        }
        assert!((s.node(-1).unwrap() - (-1.3)).abs() < 1e-15);
    }

    #[test]
    fn period_four_showcase_is_increasing() {
        let s = NodeSequence::periodic(vec![0.7, -0.1, -0.7, 0.1]).unwrap();
        let w = s.window(IndexRange::new(-8, 8)).unwrap();
        assert!(w.positions.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(NodeSequence::affine(0.0, 0.0), Err(Error::BadParameter(_))));
        assert!(matches!(NodeSequence::affine(-1.0, 0.0), Err(Error::BadParameter(_))));
        assert!(matches!(NodeSequence::periodic(vec![]), Err(Error::BadParameter(_))));
        assert!(matches!(
            NodeSequence::explicit(0, vec![0.0, 0.0, 1.0]),
            Err(Error::NonIncreasing { .. })
        ));
        assert!(matches!(
            NodeSequence::explicit(0, vec![0.0, f64::NAN]),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn json_spec_round_trip() {
        let json = r#"{"kind":"periodic","period":2,"offsets":[0.45,-0.35]}"#;
        let s: NodeSequence = serde_json::from_str(json).unwrap();
        assert_eq!(s.kind(), &SequenceKind::Periodic { offsets: vec![0.45, -0.35] });
        let back = serde_json::to_string(&s).unwrap();
        let again: NodeSequence = serde_json::from_str(&back).unwrap();
        assert_eq!(s, again);

        let e: NodeSequence =
            serde_json::from_str(r#"{"kind":"explicit","nodes":[-1.0,0.5,2.0],"index_range":[-1,1]}"#)
                .unwrap();
        assert_eq!(e.node(-1), Some(-1.0));
        assert_eq!(e.node(2), None);

        let bad: std::result::Result<NodeSequence, _> =
            serde_json::from_str(r#"{"kind":"explicit","nodes":[0.0,1.0],"index_range":[0,5]}"#);
        assert!(bad.is_err());
        let bad: std::result::Result<NodeSequence, _> =
            serde_json::from_str(r#"{"kind":"periodic","period":3,"offsets":[0.0]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn explicit_window_is_clipped() {
        let s = NodeSequence::explicit(10, vec![10.0, 11.0, 12.5]).unwrap();
        let w = s.window(IndexRange::new(0, 11)).unwrap();
        assert_eq!(w.first_index, 10);
        assert_eq!(w.positions, vec![10.0, 11.0]);
        assert!(matches!(s.window(IndexRange::new(0, 5)), Err(Error::EmptyWindow)));
    }
}
