//! Sufficient conditions for Hamilton-connectedness as predicates returning a
//! structured [`Verdict`].
//!
//! | id            | hypothesis                                   | structure              |
//! |---------------|----------------------------------------------|------------------------|
//! | `degree_scan` | no `k` with `d_{k−1} ≤ k`, `d_{n−k} ≤ n−k`   | none                   |
//! | `ore`         | `m ≥ C(n−1,2) + 3`                           | none                   |
//! | `zw`          | `m ≥ C(n−2,2) + 6`                           | connected, n≥6, δ≥3    |
//! | `main`        | `m ≥ C(n−3,2) + 13`                          | connected, n≥11, δ≥3   |
//! | `cor14`       | `m ≥ C(n−2,2) + 4`                           | connected, n≥14, δ≥3   |
//! | `cor15`       | `m ≥ C(n−2,2) + 3`                           | connected, n≥13, δ≥3   |
//! | `yufan_rho`   | `ρ > −1/2 + sqrt(n² − 3n + 17/4)`            | none                   |
//! | `yufan_comp`  | `ρ(complement) < sqrt((n−2)²/n)`             | none                   |
//! | `yufan_q`     | `q > 2n − 4 + 2/(n−1)`                       | none                   |
//! | `zw_rho`      | `ρ ≥ sqrt(n² − 6n + 19)`                     | connected, n≥6, δ≥3    |
//! | `zw_q`        | `q ≥ 2n − 6 + 14/(n−1)`                      | connected, n≥6, δ≥3    |
//! | `main_rho`    | `ρ > n − 3`                                  | connected, n≥14, δ≥3   |
//! | `cor_rho`     | `ρ ≥ ρ(S_n^3)`                               | connected, n≥14, δ≥3   |
//! | `main_q`      | `q > 2n − 6 + 6/(n−1)`                       | connected, n≥13, δ≥3   |
//! | `cor_q`       | `q ≥ q(S_n^3)`                               | connected, n≥13, δ≥3   |
//!
//! Every condition is `NotApplicable` below `n = 3`. Spectral comparisons
//! within [`GUARD_BAND`] of the threshold give `Boundary` unless the graph is
//! a listed exception.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    in_deleted_family, is_clique_plus_cherry, np1_graphs, s_certificate, s_edge_count, s_graph,
    sporadic_exception, t_certificate, t_edge_count, Family, Sporadic,
};
use crate::graph::{choose2, Graph};
use crate::iso::are_isomorphic;
use crate::spectra::{adjacency_spectral_radius, signless_laplacian_spectral_radius, DEFAULT_TOL};

/// Spectral comparisons closer than this to the threshold are not decided.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ConditionId {
    DegreeScan,
    Ore,
    ZhouWangEdges,
    MainEdges,
    CorollaryEdges4,
    CorollaryEdges3,
    YuFanRho,
    YuFanComplement,
    YuFanQ,
    ZhouWangRho,
    ZhouWangQ,
    MainRho,
    ExtremalRho,
    MainQ,
    ExtremalQ,
}

impl ConditionId {
    /// Evaluation order of [`evaluate_all`].
    pub const ALL: [ConditionId; 15] = [
        ConditionId::DegreeScan,
        ConditionId::Ore,
        ConditionId::ZhouWangEdges,
        ConditionId::MainEdges,
        ConditionId::CorollaryEdges4,
        ConditionId::CorollaryEdges3,
        ConditionId::YuFanRho,
        ConditionId::YuFanComplement,
        ConditionId::YuFanQ,
        ConditionId::ZhouWangRho,
        ConditionId::ZhouWangQ,
        ConditionId::MainRho,
        ConditionId::ExtremalRho,
        ConditionId::MainQ,
        ConditionId::ExtremalQ,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ConditionId::DegreeScan => "degree_scan",
            ConditionId::Ore => "ore",
            ConditionId::ZhouWangEdges => "zw",
            ConditionId::MainEdges => "main",
            ConditionId::CorollaryEdges4 => "cor14",
            ConditionId::CorollaryEdges3 => "cor15",
            ConditionId::YuFanRho => "yufan_rho",
            ConditionId::YuFanComplement => "yufan_comp",
            ConditionId::YuFanQ => "yufan_q",
            ConditionId::ZhouWangRho => "zw_rho",
            ConditionId::ZhouWangQ => "zw_q",
            ConditionId::MainRho => "main_rho",
            ConditionId::ExtremalRho => "cor_rho",
            ConditionId::MainQ => "main_q",
            ConditionId::ExtremalQ => "cor_q",
        }
    }

    pub fn is_edge_condition(self) -> bool {
        matches!(
            self,
            ConditionId::Ore
                | ConditionId::ZhouWangEdges
                | ConditionId::MainEdges
                | ConditionId::CorollaryEdges4
                | ConditionId::CorollaryEdges3
        )
    }

    /// Exact edge threshold for edge-count conditions.
    pub fn edge_threshold(self, n: usize) -> Option<usize> {
        let t = match self {
            ConditionId::Ore => choose2(n.checked_sub(1)?) + 3,
            ConditionId::ZhouWangEdges => choose2(n.checked_sub(2)?) + 6,
            ConditionId::MainEdges => choose2(n.checked_sub(3)?) + 13,
            ConditionId::CorollaryEdges4 => choose2(n.checked_sub(2)?) + 4,
            ConditionId::CorollaryEdges3 => choose2(n.checked_sub(2)?) + 3,
            _ => return None,
        };
        Some(t)
    }

    /// Smallest order at which the structural hypotheses can hold, and
    /// whether connectivity and `δ ≥ 3` are required.
    fn structure(self) -> (usize, bool) {
        match self {
            ConditionId::DegreeScan
            | ConditionId::Ore
            | ConditionId::YuFanRho
            | ConditionId::YuFanComplement
            | ConditionId::YuFanQ => (3, false),
            ConditionId::ZhouWangEdges | ConditionId::ZhouWangRho | ConditionId::ZhouWangQ => (6, true),
            ConditionId::MainEdges => (11, true),
            ConditionId::CorollaryEdges3 | ConditionId::MainQ | ConditionId::ExtremalQ => (13, true),
            ConditionId::CorollaryEdges4 | ConditionId::MainRho | ConditionId::ExtremalRho => (14, true),
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConditionId> {
        ConditionId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::input(format!("unknown condition '{s}'")))
    }
}

impl From<ConditionId> for String {
    fn from(c: ConditionId) -> String {
        c.id().to_string()
    }
}

impl TryFrom<String> for ConditionId {
    type Error = Error;

    fn try_from(s: String) -> Result<ConditionId> {
        s.parse()
    }
}

/// Parses a comma-separated list of condition ids.
pub fn parse_condition_list(s: &str) -> Result<Vec<ConditionId>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Certified,
    ExceptionMember,
    Inconclusive,
    NotApplicable,
    Boundary,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Evidence {
    Int(i64),
    Real(f64),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Int(v) => write!(f, "{v}"),
            Evidence::Real(v) => write!(f, "{v:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub condition: ConditionId,
    pub outcome: Outcome,
    pub evidence: BTreeMap<String, Evidence>,
    pub exception: Option<String>,
}

impl Verdict {
    fn new(condition: ConditionId, outcome: Outcome) -> Verdict {
        Verdict {
            condition,
            outcome,
            evidence: BTreeMap::new(),
            exception: None,
        }
    }

    fn int(mut self, key: &str, v: usize) -> Verdict {
        self.evidence.insert(key.into(), Evidence::Int(v as i64));
        self
    }

    fn real(mut self, key: &str, v: f64) -> Verdict {
        self.evidence.insert(key.into(), Evidence::Real(v));
        self
    }
}

/// Smallest `k` in `2..=n/2` with `d_{k−1} ≤ k` and `d_{n−k} ≤ n−k`
/// (1-based, nondecreasing `d`). When there is none the graph is
/// Hamilton-connected.
pub fn nhc_degree_scan(d: &[usize]) -> Result<Option<usize>> {
    let n = d.len();
    if n < 3 {
        return Err(Error::input(format!("degree scan needs n >= 3, got {n}")));
    }
    if d.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::input("degree sequence must be nondecreasing"));
    }
    Ok((2..=n / 2).find(|&k| d[k - 2] <= k && d[n - k - 1] <= n - k))
}

/// Per-graph evaluation state; spectral quantities are computed at most
/// once.
pub struct Evaluator<'g> {
    g: &'g Graph,
    tol: f64,
    n: usize,
    m: usize,
    delta: usize,
    connected: bool,
    rho: OnceCell<f64>,
    q: OnceCell<f64>,
    rho_comp: OnceCell<f64>,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g Graph) -> Evaluator<'g> {
        Self::with_tol(g, DEFAULT_TOL)
    }

    pub fn with_tol(g: &'g Graph, tol: f64) -> Evaluator<'g> {
        Evaluator {
            g,
            tol,
            n: g.n(),
            m: g.edge_count(),
            delta: if g.n() == 0 { 0 } else { g.min_degree() },
            connected: g.is_connected(),
            rho: OnceCell::new(),
            q: OnceCell::new(),
            rho_comp: OnceCell::new(),
        }
    }

    fn cached(cell: &OnceCell<f64>, f: impl FnOnce() -> Result<f64>) -> Result<f64> {
        if let Some(&v) = cell.get() {
            return Ok(v);
        }
        let v = f()?;
        Ok(*cell.get_or_init(|| v))
    }

    fn rho(&self) -> Result<f64> {
        Self::cached(&self.rho, || Ok(adjacency_spectral_radius(self.g, self.tol)?.value))
    }

    fn q(&self) -> Result<f64> {
        Self::cached(&self.q, || {
            Ok(signless_laplacian_spectral_radius(self.g, self.tol)?.value)
        })
    }

    fn rho_complement(&self) -> Result<f64> {
        Self::cached(&self.rho_comp, || {
            Ok(adjacency_spectral_radius(&self.g.complement(), self.tol)?.value)
        })
    }

    pub fn evaluate(&self, which: ConditionId) -> Result<Verdict> {
        let (min_n, structural) = which.structure();
        if self.n < min_n || (structural && (!self.connected || self.delta < 3)) {
            return Ok(Verdict::new(which, Outcome::NotApplicable)
                .int("n", self.n)
                .int("delta", self.delta));
        }
        if which == ConditionId::DegreeScan {
            let found = nhc_degree_scan(self.g.degree_sequence().as_slice())?;
            return Ok(match found {
                None => Verdict::new(which, Outcome::Certified),
                Some(k) => Verdict::new(which, Outcome::Inconclusive).int("found_k", k),
            });
        }
        if let Some(threshold) = which.edge_threshold(self.n) {
            let v = if self.m < threshold {
                Verdict::new(which, Outcome::Inconclusive)
            } else {
                self.with_exception(which, Outcome::Certified)
            };
            return Ok(v.int("m", self.m).int("threshold", threshold));
        }
        self.spectral(which)
    }

    fn spectral(&self, which: ConditionId) -> Result<Verdict> {
        let nf = self.n as f64;
        let (value, threshold, key) = match which {
            ConditionId::YuFanRho => (self.rho()?, -0.5 + (nf * nf - 3.0 * nf + 4.25).sqrt(), "rho"),
            ConditionId::YuFanComplement => {
                (self.rho_complement()?, ((nf - 2.0).powi(2) / nf).sqrt(), "rho_complement")
            }
            ConditionId::YuFanQ => (self.q()?, 2.0 * nf - 4.0 + 2.0 / (nf - 1.0), "q"),
            ConditionId::ZhouWangRho => (self.rho()?, (nf * nf - 6.0 * nf + 19.0).sqrt(), "rho"),
            ConditionId::ZhouWangQ => (self.q()?, 2.0 * nf - 6.0 + 14.0 / (nf - 1.0), "q"),
            ConditionId::MainRho => (self.rho()?, nf - 3.0, "rho"),
            ConditionId::ExtremalRho => (self.rho()?, extremal_rho(self.n, self.tol)?, "rho"),
            ConditionId::MainQ => (self.q()?, 2.0 * nf - 6.0 + 6.0 / (nf - 1.0), "q"),
            ConditionId::ExtremalQ => (self.q()?, extremal_q(self.n, self.tol)?, "q"),
            _ => unreachable!("edge conditions handled by the caller"),
        };
        // the complement condition bounds from above
        let margin = if which == ConditionId::YuFanComplement {
            threshold - value
        } else {
            value - threshold
        };
        let v = if margin < -GUARD_BAND {
            Verdict::new(which, Outcome::Inconclusive)
        } else if margin <= GUARD_BAND {
            self.with_exception(which, Outcome::Boundary)
        } else {
            self.with_exception(which, Outcome::Certified)
        };
        Ok(v.real(key, value).real("threshold", threshold))
    }

    fn with_exception(&self, which: ConditionId, otherwise: Outcome) -> Verdict {
        match self.exception(which) {
            Some(id) => {
                let mut v = Verdict::new(which, Outcome::ExceptionMember);
                v.exception = Some(id);
                v
            }
            None => Verdict::new(which, otherwise),
        }
    }

    /// Identifier of the listed exception `G` belongs to, if any.
    fn exception(&self, which: ConditionId) -> Option<String> {
        let (g, n) = (self.g, self.n);
        match which {
            ConditionId::DegreeScan | ConditionId::Ore | ConditionId::YuFanComplement | ConditionId::ZhouWangRho => None,
            ConditionId::YuFanRho | ConditionId::YuFanQ => {
                is_clique_plus_cherry(g).then(|| Sporadic::CliquePlusCherry.to_string())
            }
            ConditionId::ZhouWangEdges => np1_graphs(n)
                .into_iter()
                .find(|m| m.graph.edge_count() == self.m && are_isomorphic(&m.graph, g))
                .map(|m| format!("NP1:{}", m.name)),
            ConditionId::ZhouWangQ => {
                let k4 = np1_graphs(8).into_iter().find(|m| m.name == "K4+4K1")?;
                (n == 8 && are_isomorphic(&k4.graph, g)).then(|| format!("NP1:{}", k4.name))
            }
            ConditionId::MainEdges => self
                .deleted(Family::S, 3, None)
                .or_else(|| self.deleted(Family::T, 3, None))
                .or_else(|| match n {
                    11 => self.exact(Family::S, 5),
                    12 => self.deleted(Family::S, 6, Some(2)),
                    13 => self.exact(Family::S, 6),
                    14 => self.deleted(Family::S, 7, Some(2)),
                    16 => self.deleted(Family::S, 8, Some(1)).or_else(|| {
                        let sp = sporadic_exception(Sporadic::K7K2K16, None).ok()?;
                        are_isomorphic(&sp, g).then(|| Sporadic::K7K2K16.to_string())
                    }),
                    _ => None,
                }),
            ConditionId::CorollaryEdges4 => self
                .deleted(Family::S, 3, Some(2))
                .or_else(|| self.deleted(Family::T, 3, Some(1)))
                .or_else(|| if n == 14 { self.exact(Family::S, 7) } else { None }),
            ConditionId::CorollaryEdges3 => self
                .deleted(Family::S, 3, Some(3))
                .or_else(|| self.deleted(Family::T, 3, Some(2)))
                .or_else(|| match n {
                    13 => self.exact(Family::S, 6),
                    14 => self.deleted(Family::S, 7, Some(1)),
                    _ => None,
                }),
            ConditionId::MainRho => self.exact(Family::S, 3).or_else(|| self.exact(Family::T, 3)),
            ConditionId::ExtremalRho | ConditionId::MainQ | ConditionId::ExtremalQ => {
                self.exact(Family::S, 3)
            }
        }
    }

    /// `G` in a deleted class with at most `max_t` deletions; reports the
    /// actual `t`.
    fn deleted(&self, family: Family, k: usize, max_t: Option<usize>) -> Option<String> {
        if 2 * k > self.n || self.n < 5 {
            return None;
        }
        let base = match family {
            Family::S => s_edge_count(self.n, k),
            Family::T => t_edge_count(self.n, k),
        };
        in_deleted_family(self.g, family, k, max_t)
            .then(|| format!("{family}_{}^{}({})", self.n, k, base - self.m))
    }

    fn exact(&self, family: Family, k: usize) -> Option<String> {
        if 2 * k > self.n || self.n < 5 {
            return None;
        }
        let (base, found) = match family {
            Family::S => (s_edge_count(self.n, k), s_certificate(self.g, k).is_some()),
            Family::T => (t_edge_count(self.n, k), t_certificate(self.g, k).is_some()),
        };
        (self.m == base && found).then(|| format!("{family}_{}^{}", self.n, k))
    }

    pub fn evaluate_all(&self) -> Result<Vec<Verdict>> {
        ConditionId::ALL.iter().map(|&c| self.evaluate(c)).collect()
    }
}

/// `ρ(S_n^3)`.
pub fn extremal_rho(n: usize, tol: f64) -> Result<f64> {
    Ok(adjacency_spectral_radius(&s_graph(n, 3)?, tol)?.value)
}

/// `q(S_n^3)`.
pub fn extremal_q(n: usize, tol: f64) -> Result<f64> {
    Ok(signless_laplacian_spectral_radius(&s_graph(n, 3)?, tol)?.value)
}

pub fn edge_condition(g: &Graph, which: ConditionId) -> Result<Verdict> {
    if !which.is_edge_condition() {
        return Err(Error::input(format!("{which} is not an edge-count condition")));
    }
    Evaluator::new(g).evaluate(which)
}

pub fn spectral_condition(g: &Graph, which: ConditionId, tol: f64) -> Result<Verdict> {
    if which.is_edge_condition() || which == ConditionId::DegreeScan {
        return Err(Error::input(format!("{which} is not a spectral condition")));
    }
    Evaluator::with_tol(g, tol).evaluate(which)
}

/// One verdict per condition, in [`ConditionId::ALL`] order.
pub fn evaluate_all(g: &Graph) -> Result<Vec<Verdict>> {
    Evaluator::new(g).evaluate_all()
}
