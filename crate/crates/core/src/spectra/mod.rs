//! Spectral radii of the adjacency and signless-Laplacian matrices, quotient
//! matrices of vertex partitions, and the classical upper bounds.

mod poly;

use num::bigint::BigInt;
use num::rational::{BigRational, Ratio};
use num::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use poly::{fourier_budan_clear, largest_real_root, IntPolynomial, NamedPolynomial};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Default convergence tolerance for the power iteration.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration cap of the power iteration, summed over components.
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Largest quotient dimension accepted by [`largest_eigenvalue_small`].
pub const MAX_QUOTIENT_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    /// `A(G)`
    Adjacency,
    /// `Q(G) = D(G) + A(G)`
    SignlessLaplacian,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub value: f64,
    /// `‖Mx − λx‖₂` for the final unit iterate (largest over components).
    pub residual: f64,
    pub iterations: usize,
}

/// Largest adjacency eigenvalue `ρ(G)`.
pub fn adjacency_spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    spectral_radius(g, MatrixKind::Adjacency, tol)
}

/// Largest signless-Laplacian eigenvalue `q(G)`.
pub fn signless_laplacian_spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    spectral_radius(g, MatrixKind::SignlessLaplacian, tol)
}

/// Power iteration from the all-ones vector, run per connected component.
///
/// The adjacency matrix is shifted by the identity first: a bipartite
/// component has `−ρ` in its spectrum and plain iteration would oscillate.
/// `Q` is positive semidefinite and needs no shift.
pub fn spectral_radius(g: &Graph, kind: MatrixKind, tol: f64) -> Result<SpectralResult> {
    if g.n() == 0 {
        return Err(Error::input("spectral radius of the empty graph"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input(format!("tolerance must be positive, got {tol}")));
    }
    let mut best = SpectralResult {
        value: 0.0,
        residual: 0.0,
        iterations: 0,
    };
    let mut budget = MAX_ITERATIONS;
    for comp in g.components() {
        let r = component_radius(g, comp, kind, tol, budget)?;
        budget -= r.iterations;
        best.iterations += r.iterations;
        best.residual = best.residual.max(r.residual);
        best.value = best.value.max(r.value);
    }
    Ok(best)
}

fn component_radius(
    g: &Graph,
    comp: u64,
    kind: MatrixKind,
    tol: f64,
    budget: usize,
) -> Result<SpectralResult> {
    let verts: Vec<usize> = bits(comp).collect();
    let k = verts.len();
    if k == 1 {
        return Ok(SpectralResult {
            value: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| bits(g.neighbors(v)).map(|u| local[u]).collect())
        .collect();
    let diag: Vec<f64> = match kind {
        MatrixKind::Adjacency => vec![1.0; k],
        MatrixKind::SignlessLaplacian => adj.iter().map(|a| a.len() as f64).collect(),
    };
    let shift = match kind {
        MatrixKind::Adjacency => 1.0,
        MatrixKind::SignlessLaplacian => 0.0,
    };
    let apply = |x: &[f64], y: &mut [f64]| {
        for i in 0..k {
            y[i] = diag[i] * x[i] + adj[i].iter().map(|&j| x[j]).sum::<f64>();
        }
    };

    let mut x = vec![1.0 / (k as f64).sqrt(); k];
    let mut y = vec![0.0; k];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=budget {
        apply(&x, &mut y);
        lambda = dot(&x, &y);
        residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - lambda * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            return Ok(SpectralResult {
                value: (lambda - shift).max(0.0),
                residual,
                iterations: it,
            });
        }
        let norm = dot(&y, &y).sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    Err(Error::Numeric(format!(
        "power iteration did not converge on a component of order {k}: \
         estimate {:.12}, residual {residual:.3e} > tol {tol:.3e} after {budget} iterations",
        lambda - shift
    )))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Ordered list of disjoint nonempty blocks covering `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let order: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; order];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::input(format!("partition block {i} is empty")));
            }
            for &v in b {
                if v >= order {
                    return Err(Error::input(format!(
                        "vertex {v} out of range for a partition of {order} vertices"
                    )));
                }
                if seen[v] {
                    return Err(Error::input(format!("vertex {v} appears in two blocks")));
                }
                seen[v] = true;
            }
        }
        Ok(Partition { blocks })
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn whole(n: usize) -> Partition {
        Partition {
            blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// Vertices grouped by degree, blocks in decreasing degree order.
    pub fn by_degree(g: &Graph) -> Partition {
        let mut degs: Vec<usize> = g.degrees();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs.dedup();
        Partition {
            blocks: degs
                .iter()
                .map(|&d| (0..g.n()).filter(|&v| g.degree(v) == d).collect())
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of vertices covered.
    pub fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.order() != g.n() {
            return Err(Error::input(format!(
                "partition covers {} vertices but the graph has {}",
                self.order(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Row sums of `M` from vertex `v` into the block `mask`.
fn row_sum(g: &Graph, kind: MatrixKind, v: usize, mask: u64) -> i64 {
    let mut s = (g.neighbors(v) & mask).count_ones() as i64;
    if kind == MatrixKind::SignlessLaplacian && mask >> v & 1 == 1 {
        s += g.degree(v) as i64;
    }
    s
}

/// Quotient matrix with exact rational entries `b_ij` (average row sum of
/// block `i` into block `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    rows: Vec<Vec<Ratio<i64>>>,
}

impl QuotientMatrix {
    pub fn from_rows(rows: Vec<Vec<Ratio<i64>>>) -> Result<QuotientMatrix> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::input("quotient matrix must be square"));
        }
        Ok(QuotientMatrix { rows })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<QuotientMatrix> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Ratio<i64> {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Ratio<i64>>] {
        &self.rows
    }

    /// Entries as integers when all are integral.
    pub fn to_integers(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// `det(xI − B)` scaled to a primitive integer polynomial.
    pub fn characteristic_polynomial(&self) -> Result<IntPolynomial> {
        poly::to_int_polynomial(&poly::characteristic_polynomial(&self.big_rows()))
    }

    fn big_rows(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom())))
                    .collect()
            })
            .collect()
    }
}

pub fn quotient_matrix(g: &Graph, pi: &Partition, kind: MatrixKind) -> Result<QuotientMatrix> {
    pi.check(g)?;
    let masks = pi.masks();
    let rows = pi
        .blocks()
        .iter()
        .map(|block| {
            masks
                .iter()
                .map(|&m| {
                    let total: i64 = block.iter().map(|&v| row_sum(g, kind, v, m)).sum();
                    Ratio::new(total, block.len() as i64)
                })
                .collect()
        })
        .collect();
    Ok(QuotientMatrix { rows })
}

/// Every vertex of a block has the same row sum into every block.
pub fn is_equitable(g: &Graph, pi: &Partition, kind: MatrixKind) -> Result<bool> {
    pi.check(g)?;
    let masks = pi.masks();
    Ok(pi.blocks().iter().all(|block| {
        masks.iter().all(|&m| {
            let first = row_sum(g, kind, block[0], m);
            block.iter().all(|&v| row_sum(g, kind, v, m) == first)
        })
    }))
}

/// Largest real eigenvalue of a small quotient matrix, as the largest root
/// of its square-free characteristic polynomial.
pub fn largest_eigenvalue_small(m: &QuotientMatrix, tol: f64) -> Result<f64> {
    let d = m.dim();
    if d == 0 || d > MAX_QUOTIENT_DIM {
        return Err(Error::input(format!(
            "quotient dimension {d} outside 1..={MAX_QUOTIENT_DIM}"
        )));
    }
    let p = poly::characteristic_polynomial(&m.big_rows());
    let p = poly::to_int_polynomial(&poly::square_free(&p))?;
    // every eigenvalue is bounded by the largest absolute row sum
    let bound = m
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<Ratio<i64>>())
        .max()
        .unwrap_or_else(Ratio::zero);
    let b = bound.ceil().to_integer() as f64 + 1.0;
    largest_real_root(&p, -b, b, tol)
}

/// `(x−1)/2 + sqrt(2m − nx + (1+x)²/4)`: at `x = δ(G)` this bounds `ρ(G)`
/// from above, and it is decreasing in `x` on `[0, n−1]`.
pub fn hong_nikiforov_bound(n: usize, m: usize, x: f64) -> Result<f64> {
    let (nf, mf) = (n as f64, m as f64);
    if 2 * m > n * n.saturating_sub(1) {
        return Err(Error::Domain(format!("m={m} exceeds C({n},2)")));
    }
    if !(0.0..=nf - 1.0).contains(&x) {
        return Err(Error::Domain(format!("x={x} outside [0, {}]", nf - 1.0)));
    }
    let radicand = 2.0 * mf - nf * x + (1.0 + x).powi(2) / 4.0;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand {radicand} for n={n}, m={m}, x={x}"
        )));
    }
    Ok((x - 1.0) / 2.0 + radicand.sqrt())
}

/// `2m/(n−1) + n − 2`, an upper bound on `q(G)`.
pub fn q_upper_bound(n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::input(format!("q upper bound needs n >= 2, got {n}")));
    }
    Ok(2.0 * m as f64 / (n - 1) as f64 + n as f64 - 2.0)
}
