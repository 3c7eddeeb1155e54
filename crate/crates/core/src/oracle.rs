//! Exact Hamilton path, cycle and connectivity decisions for small graphs.
//!
//! For a fixed start `s`, `reach[S]` is the set of vertices `v` such that some
//! path starting at `s` visits exactly the vertices of `S` and ends at `v`.
//! It satisfies `v ∈ reach[S] ⟺ reach[S − v] ∩ N(v) ≠ ∅`, so one sweep over
//! the subsets containing `s` answers every target at once.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, full_mask, Graph};

/// Largest order the subset dynamic program accepts.
pub const MAX_ORACLE_ORDER: usize = 24;

const CLOCK_STRIDE: usize = 4096;

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Keep one Hamilton path per pair (memory grows as `C(n,2)·n`).
    pub witnesses: bool,
    /// Wall-clock budget for a single call.
    pub timeout: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonVerdict {
    pub hamilton_connected: bool,
    /// Lexicographically first pair `(s, t)`, `s < t`, with no Hamilton path.
    pub failing_pair: Option<(usize, usize)>,
    /// Present only when requested; covers every pair checked before the
    /// first failure.
    pub witnesses: Option<BTreeMap<(usize, usize), Vec<usize>>>,
}

struct Deadline {
    start: Instant,
    budget: Option<Duration>,
}

impl Deadline {
    fn new(budget: Option<Duration>) -> Self {
        Deadline {
            start: Instant::now(),
            budget,
        }
    }

    fn check(&self) -> Result<()> {
        match self.budget {
            Some(b) if self.start.elapsed() > b => Err(Error::Timeout(b)),
            _ => Ok(()),
        }
    }
}

fn check_order(g: &Graph) -> Result<()> {
    if g.n() > MAX_ORACLE_ORDER {
        return Err(Error::TooLarge {
            n: g.n(),
            max: MAX_ORACLE_ORDER,
        });
    }
    Ok(())
}

/// Fills `reach` for paths starting at `s`. Entries for subsets without `s`
/// are left zero.
fn sweep_from(g: &Graph, s: usize, reach: &mut [u32], deadline: &Deadline) -> Result<()> {
    let n = g.n();
    reach.fill(0);
    let sb = bit(s);
    reach[sb as usize] = sb as u32;
    let rows = g.rows();
    for (count, mask) in (1..=full_mask(n)).enumerate() {
        if count % CLOCK_STRIDE == 0 {
            deadline.check()?;
        }
        if mask & sb == 0 || mask == sb {
            continue;
        }
        let mut ends = 0u32;
        for v in bits(mask & !sb) {
            if reach[(mask & !bit(v)) as usize] as u64 & rows[v] != 0 {
                ends |= 1 << v;
            }
        }
        reach[mask as usize] = ends;
    }
    Ok(())
}

/// Recovers the path `s → … → t` over all vertices from a filled table.
fn extract(g: &Graph, s: usize, t: usize, reach: &[u32]) -> Vec<usize> {
    let mut path = vec![t];
    let mut mask = full_mask(g.n());
    let mut cur = t;
    while cur != s {
        let rest = mask & !bit(cur);
        let prev = bits(reach[rest as usize] as u64 & g.neighbors(cur))
            .next()
            .expect("table entry implies a predecessor");
        path.push(prev);
        mask = rest;
        cur = prev;
    }
    path.reverse();
    path
}

/// A Hamilton path from `s` to `t`, if one exists.
pub fn has_hamilton_path_between(g: &Graph, s: usize, t: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if s == t {
        return Err(Error::input("Hamilton path endpoints must differ"));
    }
    check_order(g)?;
    let mut reach = vec![0u32; 1usize << n];
    sweep_from(g, s, &mut reach, &Deadline::new(None))?;
    let full = full_mask(n) as usize;
    Ok((reach[full] >> t & 1 == 1).then(|| extract(g, s, t, &reach)))
}

pub fn is_hamilton_connected(g: &Graph) -> Result<HamiltonVerdict> {
    is_hamilton_connected_with(g, &OracleOptions::default())
}

/// Scans pairs in lexicographic order and stops at the first failure.
pub fn is_hamilton_connected_with(g: &Graph, opts: &OracleOptions) -> Result<HamiltonVerdict> {
    let n = g.n();
    if n < 3 {
        return Err(Error::input(format!(
            "Hamilton-connectedness needs n >= 3, got {n}"
        )));
    }
    check_order(g)?;
    let mut witnesses = opts.witnesses.then(BTreeMap::new);
    let fail = |pair, witnesses| {
        Ok(HamiltonVerdict {
            hamilton_connected: false,
            failing_pair: Some(pair),
            witnesses,
        })
    };
    if !g.is_connected() {
        return fail((0, 1), witnesses);
    }
    let deadline = Deadline::new(opts.timeout);
    let mut reach = vec![0u32; 1usize << n];
    let full = full_mask(n) as usize;
    for s in 0..n - 1 {
        sweep_from(g, s, &mut reach, &deadline)?;
        let ends = reach[full] as u64;
        for t in s + 1..n {
            if ends >> t & 1 == 0 {
                return fail((s, t), witnesses);
            }
            if let Some(w) = witnesses.as_mut() {
                w.insert((s, t), extract(g, s, t, &reach));
            }
        }
    }
    debug_assert!(n < 4 || g.min_degree() >= 3);
    Ok(HamiltonVerdict {
        hamilton_connected: true,
        failing_pair: None,
        witnesses,
    })
}

pub fn is_hamiltonian(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 3 {
        return Err(Error::input(format!("Hamiltonicity needs n >= 3, got {n}")));
    }
    check_order(g)?;
    if !g.is_connected() || g.min_degree() < 2 {
        return Ok(false);
    }
    let mut reach = vec![0u32; 1usize << n];
    sweep_from(g, 0, &mut reach, &Deadline::new(None))?;
    Ok(reach[full_mask(n) as usize] as u64 & g.neighbors(0) != 0)
}

pub fn is_traceable(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n == 0 {
        return Err(Error::input("traceability needs n >= 1"));
    }
    check_order(g)?;
    if !g.is_connected() {
        return Ok(false);
    }
    // start-free variant: reach[S] = possible ends of paths covering S
    let mut reach = vec![0u32; 1usize << n];
    let rows = g.rows();
    for mask in 1..=full_mask(n) {
        if mask.is_power_of_two() {
            reach[mask as usize] = mask as u32;
            continue;
        }
        let mut ends = 0u32;
        for v in bits(mask) {
            if reach[(mask & !bit(v)) as usize] as u64 & rows[v] != 0 {
                ends |= 1 << v;
            }
        }
        reach[mask as usize] = ends;
    }
    Ok(reach[full_mask(n) as usize] != 0)
}

/// Checks that `path` runs from `s` to `t`, visits every vertex exactly
/// once, and follows edges of `g`.
pub fn is_hamilton_path(g: &Graph, path: &[usize], s: usize, t: usize) -> bool {
    let n = g.n();
    if path.len() != n || path.first() != Some(&s) || path.last() != Some(&t) {
        return false;
    }
    let mut seen = 0u64;
    for &v in path {
        if v >= n || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}
