//! Certified spectral radius computation for nonnegative integer matrices.
//!
//! Every growth rate in this crate is the Perron eigenvalue of a nonnegative
//! integer matrix, and every comparison between growth rates must be *sound*:
//! the separation arguments are chains of strict inequalities, so a sloppy
//! bound invalidates the whole chain. This module therefore works entirely
//! with exact rational enclosures.
//!
//! Strategy, in order of preference:
//!
//! 1. **Exact fast paths** — equal row sums (covers 1×1, zero, and
//!    permutation matrices) give the radius exactly.
//! 2. **Block decomposition** — the radius of a matrix is the maximum over
//!    its strongly connected diagonal blocks, so only irreducible matrices
//!    need iteration.
//! 3. **Collatz–Wielandt on scaled powers** — for irreducible `A`, the
//!    quotients `(Ax)_i / x_i` bound the radius below (minimum) and above
//!    (maximum) for *any* positive vector `x`; taking `x` to be the row sums
//!    of `(A + I)^(2^t)` (computed by repeated squaring with denominator-free
//!    scaling) drives the bounds together quadratically.
//! 4. **Sturm fallback** — if iteration stalls, isolate the largest real
//!    root of the characteristic polynomial exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph;
use crate::matrix::Matrix;
use crate::poly::{self, LargestRoot};

/// How an enclosure was obtained; carried for reporting, never branched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Degenerate input (empty matrix).
    Empty,
    /// All row sums equal; the radius is that common sum, exactly.
    EqualRowSums,
    /// Collatz–Wielandt quotient bounds on scaled powers.
    PowerIteration,
    /// Exact isolation of the largest characteristic root.
    SturmExact,
    /// Maximum over strongly connected diagonal blocks.
    BlockMax,
}

/// Certified interval containing a spectral radius (equivalently, a growth
/// rate): `lo ≤ v ≤ hi` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Squaring steps (or bisection steps) spent obtaining the interval.
    pub iterations: usize,
    pub method: Method,
}

impl Enclosure {
    pub fn exact(value: BigRational, method: Method) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
            iterations: 0,
            method,
        }
    }

    pub fn from_endpoints(lo: BigRational, hi: BigRational, iterations: usize, method: Method) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure {
            lo,
            hi,
            iterations,
            method,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// True when every value of `self` is strictly below every value of
    /// `other` — the certified form of `v(self) < v(other)`.
    pub fn strictly_below(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    /// Enclosure of `v^e` for `v ≥ 0` in `self`.
    pub fn pow(&self, e: u32) -> Enclosure {
        assert!(!self.lo.is_negative(), "pow expects a nonnegative enclosure");
        Enclosure {
            lo: rational_pow(&self.lo, e),
            hi: rational_pow(&self.hi, e),
            iterations: self.iterations,
            method: self.method,
        }
    }

    /// Combine block enclosures: the radius of a block-triangular matrix is
    /// the maximum over its diagonal blocks, so intervals combine endpoint-wise.
    pub fn max(self, other: Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
            iterations: self.iterations + other.iterations,
            method: Method::BlockMax,
        }
    }

    /// Intersect with another valid enclosure of the same quantity.
    fn intersect(&mut self, lo: BigRational, hi: BigRational) {
        if lo > self.lo {
            self.lo = lo;
        }
        if hi < self.hi {
            self.hi = hi;
        }
        assert!(
            self.lo <= self.hi,
            "intersecting enclosures of the same radius produced an empty interval"
        );
    }

    /// Midpoint as f64 — display and heuristics only, never decisions.
    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

pub fn rational_pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Lossy conversion for display purposes. Exact integer division after a
/// 64-bit scale keeps full f64 precision even when numerator and
/// denominator individually exceed the f64 range.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    let q: BigInt = (x.numer() << 64u32) / x.denom();
    bigint_to_f64(&q) / 2f64.powi(64)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("entry ({0}, {1}) is zero; nothing to decrement")]
    EntryZero(usize, usize),
    #[error("could not certify a strict decrease: radii compare as {0:?}")]
    NotStrict(Ordering),
}

/// Default enclosure width target: 10⁻¹⁰.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(10))
}

/// Certified enclosure of the spectral radius, width ≤ the default
/// tolerance (10⁻¹⁰).
pub fn spectral_radius(a: &Matrix<BigInt>) -> Enclosure {
    spectral_radius_with(a, &default_tolerance())
}

/// Certified enclosure of the spectral radius with a caller-chosen width
/// target. Entries must be nonnegative.
pub fn spectral_radius_with(a: &Matrix<BigInt>, tol: &BigRational) -> Enclosure {
    let n = a.dim();
    debug_assert!(
        (0..n).all(|i| (0..n).all(|j| !a[(i, j)].is_negative())),
        "spectral radius requires a nonnegative matrix"
    );
    if n == 0 {
        return Enclosure::exact(BigRational::zero(), Method::Empty);
    }
    if let Some(s) = equal_row_sums(a) {
        return Enclosure::exact(BigRational::from_integer(s), Method::EqualRowSums);
    }
    let comps = graph::tarjan_scc(&a.nonzero_adjacency());
    if comps.len() == 1 {
        return irreducible_radius(a, tol);
    }
    // Reducible: the radius is the maximum over diagonal blocks. Trivial
    // singleton blocks (no self-loop) contribute their diagonal entry, zero.
    let mut best = Enclosure::exact(BigRational::zero(), Method::BlockMax);
    for comp in &comps {
        let block = if comp.len() == 1 {
            let i = comp[0];
            Enclosure::exact(
                BigRational::from_integer(a[(i, i)].clone()),
                Method::EqualRowSums,
            )
        } else {
            let sub = a.submatrix(comp);
            if let Some(s) = equal_row_sums(&sub) {
                Enclosure::exact(BigRational::from_integer(s), Method::EqualRowSums)
            } else {
                irreducible_radius(&sub, tol)
            }
        };
        best = best.max(block);
    }
    best
}

fn equal_row_sums(a: &Matrix<BigInt>) -> Option<BigInt> {
    let sums = a.row_sums();
    let first = sums.first()?.clone();
    if sums.iter().all(|s| *s == first) {
        Some(first)
    } else {
        None
    }
}

/// Spectral radius of an irreducible matrix with unequal row sums, by
/// Collatz–Wielandt bounds on scaled powers of `A + I`, falling back to
/// exact root isolation if the bounds stall.
fn irreducible_radius(a: &Matrix<BigInt>, tol: &BigRational) -> Enclosure {
    let n = a.dim();
    let sums = a.row_sums();
    let min_rs = sums.iter().min().unwrap().clone();
    let max_rs = sums.iter().max().unwrap().clone();
    let mut enc = Enclosure::from_endpoints(
        BigRational::from_integer(min_rs),
        BigRational::from_integer(max_rs),
        0,
        Method::PowerIteration,
    );

    // s tracks a scaled version of (A + I)^(2^t); its row sums approach the
    // Perron direction. Scaling only rescales the test vector, which the
    // Collatz–Wielandt bounds are insensitive to.
    let mut s = a.clone();
    for i in 0..n {
        let d = s[(i, i)].clone() + BigInt::one();
        s[(i, i)] = d;
    }
    const MAX_SQUARINGS: usize = 30;
    const SCALE_TRIGGER_BITS: u64 = 1024;
    const SCALE_TARGET_BITS: u64 = 512;
    let mut iterations = 0;
    while enc.width() > *tol && iterations < MAX_SQUARINGS {
        s = s.mul(&s);
        let max_bits = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| s[(i, j)].bits())
            .max()
            .unwrap_or(0);
        if max_bits > SCALE_TRIGGER_BITS {
            let shift = max_bits - SCALE_TARGET_BITS;
            s = s.map(|e| e >> shift);
        }
        // Positive test vector: row sums, clamped to ≥ 1 in case scaling
        // floored an entire row away.
        let x: Vec<BigInt> = s
            .row_sums()
            .into_iter()
            .map(|v| if v.is_zero() { BigInt::one() } else { v })
            .collect();
        let ax = a.mul_vec(&x);
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for i in 0..n {
            let q = BigRational::new(ax[i].clone(), x[i].clone());
            if lo.as_ref().map(|l| q < *l).unwrap_or(true) {
                lo = Some(q.clone());
            }
            if hi.as_ref().map(|h| q > *h).unwrap_or(true) {
                hi = Some(q);
            }
        }
        enc.intersect(lo.unwrap(), hi.unwrap());
        iterations += 1;
    }
    enc.iterations = iterations;
    if enc.width() <= *tol {
        return enc;
    }
    // Stalled (nearly defective or periodic spectrum): go exact.
    let mut exact = sturm_radius(a, tol);
    exact.intersect(enc.lo.clone(), enc.hi.clone());
    exact
}

/// Enclosure of the spectral radius via exact isolation of the largest real
/// root of the characteristic polynomial (which, for a nonnegative matrix,
/// is the spectral radius).
fn sturm_radius(a: &Matrix<BigInt>, tol: &BigRational) -> Enclosure {
    let cp = poly::char_poly(a);
    match poly::isolate_largest_root(&cp, tol) {
        LargestRoot::Exact(r) => Enclosure::exact(r, Method::SturmExact),
        LargestRoot::Interval(lo, hi) => {
            Enclosure::from_endpoints(lo.max(BigRational::zero()), hi, 0, Method::SturmExact)
        }
        LargestRoot::NoRealRoot => {
            unreachable!("a nonnegative matrix always has a real eigenvalue")
        }
    }
}

/// True iff the directed graph of nonzero entries is strongly connected.
/// (A 1×1 matrix is vacuously strongly connected, including `[[0]]`.)
pub fn is_irreducible(a: &Matrix<BigInt>) -> bool {
    graph::is_strongly_connected(&a.nonzero_adjacency())
}

/// Exact matrix power with big-integer arithmetic.
pub fn matrix_power(a: &Matrix<BigInt>, l: u64) -> Matrix<BigInt> {
    a.pow(l)
}

/// Sum of all entries.
pub fn sum_elements(a: &Matrix<BigInt>) -> BigInt {
    a.sum_elements()
}

/// Certificate that decrementing one positive entry of an irreducible
/// matrix strictly lowered the spectral radius: the two enclosures are
/// disjoint with `decremented.hi < original.lo`.
#[derive(Clone, Debug)]
pub struct DecreaseCertificate {
    pub original: Enclosure,
    pub decremented: Enclosure,
    /// True when interval refinement alone could not separate the radii and
    /// exact polynomial isolation finished the job.
    pub exact_fallback: bool,
}

/// Decrement entry `(row, col)` of an irreducible nonnegative matrix and
/// certify that the spectral radius strictly decreased, refining enclosures
/// until they separate and falling back to exact characteristic-polynomial
/// comparison if they refuse.
pub fn strict_decrease(
    a: &Matrix<BigInt>,
    row: usize,
    col: usize,
) -> Result<DecreaseCertificate, SpectraError> {
    if !is_irreducible(a) || a.dim() == 0 {
        return Err(SpectraError::NotIrreducible);
    }
    if a[(row, col)].is_zero() {
        return Err(SpectraError::EntryZero(row, col));
    }
    let mut b = a.clone();
    b[(row, col)] -= BigInt::one();

    let mut tol = default_tolerance();
    for _ in 0..3 {
        let ea = spectral_radius_with(a, &tol);
        let eb = spectral_radius_with(&b, &tol);
        if eb.strictly_below(&ea) {
            return Ok(DecreaseCertificate {
                original: ea,
                decremented: eb,
                exact_fallback: false,
            });
        }
        if ea.strictly_below(&eb) {
            // Mathematically impossible for a genuine decrement; report
            // rather than certify nonsense.
            return Err(SpectraError::NotStrict(Ordering::Greater));
        }
        tol = &tol * &tol; // square the tolerance: 10⁻¹⁰ → 10⁻²⁰ → 10⁻⁴⁰
    }
    exact_separation(a, &b)
}

/// Separate two radii known (or suspected) to differ by exact root
/// isolation, shrinking widths until the intervals are disjoint.
fn exact_separation(
    a: &Matrix<BigInt>,
    b: &Matrix<BigInt>,
) -> Result<DecreaseCertificate, SpectraError> {
    let pa = poly::char_poly(a);
    let pb = poly::char_poly(b);
    match poly::compare_largest_roots(&pb, &pa) {
        Ordering::Less => {}
        other => return Err(SpectraError::NotStrict(other)),
    }
    // The radii differ; isolate both until the intervals separate.
    let mut width = default_tolerance();
    let two = BigRational::from_integer(BigInt::from(2));
    loop {
        let ea = enclosure_from_root(&pa, &width);
        let eb = enclosure_from_root(&pb, &width);
        if eb.strictly_below(&ea) {
            return Ok(DecreaseCertificate {
                original: ea,
                decremented: eb,
                exact_fallback: true,
            });
        }
        width = width / &two;
    }
}

fn enclosure_from_root(p: &poly::IntPoly, width: &BigRational) -> Enclosure {
    match poly::isolate_largest_root(p, width) {
        LargestRoot::Exact(r) => Enclosure::exact(r, Method::SturmExact),
        LargestRoot::Interval(lo, hi) => {
            Enclosure::from_endpoints(lo.max(BigRational::zero()), hi, 0, Method::SturmExact)
        }
        LargestRoot::NoRealRoot => {
            unreachable!("characteristic polynomial of a nonnegative matrix has a real root")
        }
    }
}

/// Exactly compare two spectral radii: refine enclosures, then decide ties
/// by exact characteristic-polynomial comparison. Total and always decisive.
pub fn compare_radii(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Ordering {
    let mut tol = default_tolerance();
    for _ in 0..2 {
        let ea = spectral_radius_with(a, &tol);
        let eb = spectral_radius_with(b, &tol);
        if ea.hi < eb.lo {
            return Ordering::Less;
        }
        if eb.hi < ea.lo {
            return Ordering::Greater;
        }
        tol = &tol * &tol;
    }
    poly::compare_largest_roots(&poly::char_poly(a), &poly::char_poly(b))
}
