//! Integer polynomials, exact characteristic polynomials, and real-root
//! location.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored in ascending degree order.
/// Trailing zero coefficients are trimmed, so the leading coefficient is
/// nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Builds `c_d x^d + … + c_0` from coefficients in descending order.
    pub fn from_descending(coeffs: &[i128]) -> Self {
        Self::new(coeffs.iter().rev().copied().collect())
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[i128]) -> Self {
        let mut c = vec![1i128];
        for &r in roots {
            let mut next = vec![0i128; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    /// `k`-th derivative.
    pub fn derivative_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Exact value at an integer point; `None` on `i128` overflow.
    pub fn eval_int(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    /// Floating-point value (Horner).
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(BigInt::from(c)))
    }

    /// Exact sign at `x`; every finite `f64` is a dyadic rational.
    pub fn sign_at(&self, x: f64) -> Ordering {
        match BigRational::from_float(x) {
            Some(r) => self.eval_rational(&r).cmp(&BigRational::zero()),
            None => self.eval(x).partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The explicit polynomials used by the extremal-family arguments, each a
/// function of the order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedPolynomial {
    /// `f(x) = 3x² − (2n+3)x + 8n − 38`: twice the slack between the edge
    /// bound of a degree-scan witness `k` and `C(n−3,2)+13`.
    EdgeSlack,
    /// `f1`: adjacency quotient of `H3` (one clique edge deleted from `S_n^3`).
    H3Adjacency,
    /// `f2`: adjacency quotient of `T3` (one clique edge deleted from `T_n^3`).
    T3Adjacency,
    /// `g1`: signless-Laplacian quotient of `S_n^3`.
    SSignless,
    /// `g2`: degree-class signless-Laplacian quotient of `H3`.
    H3Signless,
    /// `g3`: signless-Laplacian quotient of `T_n^3`.
    TSignless,
}

impl NamedPolynomial {
    pub const ALL: [NamedPolynomial; 6] = [
        NamedPolynomial::EdgeSlack,
        NamedPolynomial::H3Adjacency,
        NamedPolynomial::T3Adjacency,
        NamedPolynomial::SSignless,
        NamedPolynomial::H3Signless,
        NamedPolynomial::TSignless,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NamedPolynomial::EdgeSlack => "f",
            NamedPolynomial::H3Adjacency => "f1",
            NamedPolynomial::T3Adjacency => "f2",
            NamedPolynomial::SSignless => "g1",
            NamedPolynomial::H3Signless => "g2",
            NamedPolynomial::TSignless => "g3",
        }
    }

    /// Integer coefficients at order `n` (requires `n >= 5`).
    pub fn instantiate(self, n: i128) -> Result<IntPolynomial> {
        if n < 5 {
            return Err(Error::input(format!("polynomial {} needs n >= 5, got {n}", self.id())));
        }
        let d = match self {
            NamedPolynomial::EdgeSlack => vec![3, -(2 * n + 3), 8 * n - 38],
            NamedPolynomial::H3Adjacency => {
                vec![1, -(n - 6), -(3 * n - 7), 4 * (n - 10), 12 * n - 84]
            }
            NamedPolynomial::T3Adjacency => {
                vec![1, -(n - 5), -(2 * n - 3), 5 * n - 33, 10 * n - 56]
            }
            NamedPolynomial::SSignless => {
                vec![1, -(3 * n - 5), 2 * n * n - n - 24, -6 * (n - 3) * (n - 4)]
            }
            NamedPolynomial::H3Signless => vec![
                1,
                -(4 * n - 11),
                5 * n * n - 24 * n + 10,
                -(2 * n * n * n - 7 * n * n - 56 * n + 220),
                6 * (n * n * n - 13 * n * n + 56 * n - 80),
            ],
            NamedPolynomial::TSignless => vec![
                1,
                -(3 * n - 4),
                2 * (n * n + n - 14),
                -8 * (n * n - 6 * n + 8),
            ],
        };
        Ok(IntPolynomial::from_descending(&d))
    }
}

impl fmt::Display for NamedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NamedPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedPolynomial::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::input(format!("unknown polynomial '{s}' (expected f, f1, f2, g1, g2 or g3)")))
    }
}

/// True when `poly` and every derivative are strictly positive at `a`,
/// which rules out real roots in `[a, ∞)`. `false` is inconclusive.
pub fn fourier_budan_clear(poly: &IntPolynomial, a: f64) -> bool {
    if poly.is_zero() {
        return false;
    }
    let mut p = poly.clone();
    while !p.is_zero() {
        if p.sign_at(a) != Ordering::Greater {
            return false;
        }
        p = p.derivative();
    }
    true
}

/// Largest real root in `[lo, hi]`, to within `tol`.
///
/// Roots are counted exactly with a Sturm sequence, so close pairs and roots
/// of even multiplicity are not skipped. The search bisects on "some root
/// lies in `(x, hi]`".
pub fn largest_real_root(poly: &IntPolynomial, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if poly.is_zero() {
        return Err(Error::Numeric("zero polynomial has no isolated roots".into()));
    }
    if lo >= hi || !lo.is_finite() || !hi.is_finite() || !tol.is_finite() || tol <= 0.0 {
        return Err(Error::input(format!("bad bracket [{lo}, {hi}] / tol {tol}")));
    }
    if poly.sign_at(hi) == Ordering::Equal {
        return Ok(hi);
    }
    let chain = sturm_chain(poly);
    let v_hi = variations(&chain, hi);
    let roots_above = |x: f64| variations(&chain, x) - v_hi;
    if roots_above(lo) == 0 {
        if poly.sign_at(lo) == Ordering::Equal {
            return Ok(lo);
        }
        return Err(Error::Numeric(format!("{poly} has no real root in [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if roots_above(mid) > 0 {
            a = mid;
        } else if poly.sign_at(mid) == Ordering::Equal {
            return Ok(mid);
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

fn to_rat_poly(p: &IntPolynomial) -> RatPoly {
    p.coeffs()
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

fn sturm_chain(p: &IntPolynomial) -> Vec<RatPoly> {
    let p0 = to_rat_poly(p);
    let p1 = rat_derivative(&p0);
    let mut chain = vec![p0, p1];
    while chain.last().is_some_and(|q| !q.is_empty()) {
        let k = chain.len();
        let r: RatPoly = rat_rem(&chain[k - 2], &chain[k - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain.pop();
    chain
}

fn rat_eval(p: &RatPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sign changes along the Sturm chain at `x`, zeros skipped.
fn variations(chain: &[RatPoly], x: f64) -> usize {
    let x = BigRational::from_float(x).expect("finite abscissa");
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = rat_eval(p, &x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

// ---------------------------------------------------------------------------
// Exact rational helpers for characteristic polynomials.

pub(crate) type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// `det(xI − M)` in ascending order, by Faddeev–LeVerrier.
pub(crate) fn characteristic_polynomial(m: &[Vec<BigRational>]) -> RatPoly {
    let d = m.len();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    // work = M_k, starting from M_1 = I
    let mut work: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 1..=d {
        let am = mat_mul(m, &work);
        let trace = (0..d).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        let c = -trace / BigRational::from_integer(BigInt::from(k));
        coeffs[d - k] = c.clone();
        work = am;
        for (i, row) in work.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn rat_derivative(p: &RatPoly) -> RatPoly {
    let mut out: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    trim(&mut r);
    let lead = b.last().expect("division by zero polynomial");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn rat_div(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return Vec::new();
    }
    let lead = b.last().expect("division by zero polynomial");
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    q
}

fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// `p / gcd(p, p')`: same roots, each simple.
pub(crate) fn square_free(p: &RatPoly) -> RatPoly {
    let dp = rat_derivative(p);
    if dp.is_empty() {
        return p.clone();
    }
    let g = rat_gcd(p, &dp);
    if g.len() <= 1 {
        return p.clone();
    }
    rat_div(p, &g)
}

/// Scales a rational polynomial to a primitive integer polynomial with the
/// same roots.
pub(crate) fn to_int_polynomial(p: &RatPoly) -> Result<IntPolynomial> {
    let denom_lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign: i32 = if ints.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    let coeffs = ints
        .iter()
        .map(|c| {
            let v: BigInt = if content.is_zero() { c.clone() } else { c / &content };
            (v * sign)
                .to_i128()
                .ok_or_else(|| Error::Numeric("polynomial coefficient exceeds i128".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn edge_slack_values() {
        let f11 = NamedPolynomial::EdgeSlack.instantiate(11).unwrap();
        assert_eq!(f11.eval_int(3), Some(2));
        for n in 5..40 {
            let f = NamedPolynomial::EdgeSlack.instantiate(n).unwrap();
            assert_eq!(f.eval_int(4), Some(-2));
            assert_eq!(f.eval_int(3), Some(2 * n - 20));
        }
    }

    #[test]
    fn h3_polynomial_at_n_minus_3() {
        let f1 = NamedPolynomial::H3Adjacency.instantiate(14).unwrap();
        assert_eq!(f1.eval_int(11), Some(18));
        assert_eq!(f1.to_string(), "x^4 - 8x^3 - 35x^2 + 16x + 84");
    }

    #[test]
    fn named_parse_and_errors() {
        for p in NamedPolynomial::ALL {
            assert_eq!(p.id().parse::<NamedPolynomial>().unwrap(), p);
        }
        assert!("h".parse::<NamedPolynomial>().is_err());
        assert!(NamedPolynomial::SSignless.instantiate(4).is_err());
    }

    #[test]
    fn fourier_budan_examples() {
        let f1 = NamedPolynomial::H3Adjacency.instantiate(14).unwrap();
        assert!(fourier_budan_clear(&f1, 11.0));
        let f2 = NamedPolynomial::T3Adjacency.instantiate(14).unwrap();
        assert!(fourier_budan_clear(&f2, 11.0));
        // x² − 1 at 0: derivative data is fine but the value is negative
        let p = IntPolynomial::from_roots(&[1, -1]);
        assert!(!fourier_budan_clear(&p, 0.0));
        assert!(fourier_budan_clear(&p, 1.5));
        assert!(!fourier_budan_clear(&IntPolynomial::new(vec![]), 0.0));
    }

    #[test]
    fn root_examples() {
        let p = IntPolynomial::from_roots(&[2, 5]);
        let r = largest_real_root(&p, 0.0, 10.0, 1e-12).unwrap();
        assert!((r - 5.0).abs() < 1e-10);
        // root sitting exactly on the upper end
        assert_eq!(largest_real_root(&p, 0.0, 5.0, 1e-12).unwrap(), 5.0);
        assert!(largest_real_root(&IntPolynomial::from_roots(&[20]), 0.0, 10.0, 1e-9).is_err());
        assert!(largest_real_root(&p, 3.0, 1.0, 1e-9).is_err());
        // root on the lower end
        assert_eq!(largest_real_root(&p, 5.0, 9.0, 1e-9).unwrap(), 5.0);
    }

    #[test]
    fn close_and_repeated_roots_are_found() {
        // (x−3)² never changes sign
        let double = IntPolynomial::from_roots(&[3, 3, -2]);
        let r = largest_real_root(&double, -10.0, 10.0, 1e-12).unwrap();
        assert!((r - 3.0).abs() < 1e-9, "{r}");
        // (x − 1)(10000x − 10002): roots 1 and 1.0002
        let pair = IntPolynomial::from_descending(&[10_000, -20_002, 10_002]);
        let r = largest_real_root(&pair, 0.0, 100.0, 1e-12).unwrap();
        assert!((r - 1.0002).abs() < 1e-9, "{r}");
    }

    #[test]
    fn derivatives_are_exact() {
        let p = IntPolynomial::from_descending(&[1, -3, 0, 7]);
        assert_eq!(p.derivative(), IntPolynomial::from_descending(&[3, -6, 0]));
        assert_eq!(p.derivative_n(3), IntPolynomial::new(vec![6]));
        assert!(p.derivative_n(4).is_zero());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn charpoly_of_small_matrix() {
        // [[2,1],[1,2]] → x² − 4x + 3
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(2)]];
        let p = to_int_polynomial(&characteristic_polynomial(&m)).unwrap();
        assert_eq!(p, IntPolynomial::from_descending(&[1, -4, 3]));
    }

    #[test]
    fn square_free_removes_repeats() {
        let p = IntPolynomial::from_roots(&[1, 1, -1, -1, 3]);
        let rp: RatPoly = p.coeffs().iter().map(|&c| rat(c as i64)).collect();
        let sf = to_int_polynomial(&square_free(&rp)).unwrap();
        assert_eq!(sf, IntPolynomial::from_roots(&[1, -1, 3]));
    }

    #[test]
    fn sign_is_exact_near_roots() {
        let p = IntPolynomial::from_roots(&[3]);
        assert_eq!(p.sign_at(3.0), Ordering::Equal);
        assert_eq!(p.sign_at(3.0 + f64::EPSILON * 4.0), Ordering::Greater);
    }
}
