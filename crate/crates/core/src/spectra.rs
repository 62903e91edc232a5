//! Random Hermitian triples `A + B + C = 0` and their sorted spectra, the
//! empirical source of points of `Δ(n)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

use crate::horn::{is_member, HornSystem, SpectrumPoint, Verdict};
use crate::scalar::{Scalar, Tolerance};

/// Relative tolerance for the Hermitian and zero-sum invariants.
pub const MATRIX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("matrix {0} is not square")]
    NotSquare(char),
    #[error("matrices have different sizes")]
    SizeMismatch,
    #[error("matrix {0} is not Hermitian")]
    NotHermitian(char),
    #[error("A + B + C is not zero (largest entry {0:e})")]
    NonzeroSum(f64),
}

/// Three Hermitian matrices summing to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianTriple {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    c: DMatrix<Complex64>,
}

impl HermitianTriple {
    pub fn new(
        a: DMatrix<Complex64>,
        b: DMatrix<Complex64>,
        c: DMatrix<Complex64>,
    ) -> Result<Self, SpectraError> {
        let t = HermitianTriple { a, b, c };
        t.validate()?;
        Ok(t)
    }

    /// `C := −A − B`.
    pub fn completing(a: DMatrix<Complex64>, b: DMatrix<Complex64>) -> Result<Self, SpectraError> {
        let c = -(&a + &b);
        Self::new(a, b, c)
    }

    /// Diagonal matrices `diag(a)`, `diag(b)` and `C = −A − B`.
    pub fn diagonal(a: &[f64], b: &[f64]) -> Result<Self, SpectraError> {
        let diag = |v: &[f64]| {
            DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                v.len(),
                v.iter().map(|&x| Complex64::new(x, 0.0)),
            ))
        };
        if a.len() != b.len() {
            return Err(SpectraError::SizeMismatch);
        }
        Self::completing(diag(a), diag(b))
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<Complex64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<Complex64> {
        &self.c
    }

    /// `(A, B, C) ↦ (B, C, A)`.
    pub fn rotated(&self) -> Self {
        HermitianTriple {
            a: self.b.clone(),
            b: self.c.clone(),
            c: self.a.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), SpectraError> {
        let n = self.a.nrows();
        for (name, m) in self.named() {
            if !m.is_square() {
                return Err(SpectraError::NotSquare(name));
            }
            if m.nrows() != n {
                return Err(SpectraError::SizeMismatch);
            }
            check_hermitian(name, m)?;
        }
        let scale = self
            .named()
            .iter()
            .map(|(_, m)| m.norm())
            .fold(0.0, f64::max);
        let sum = &self.a + &self.b + &self.c;
        let largest = max_abs(&sum);
        if largest > MATRIX_TOLERANCE * scale {
            return Err(SpectraError::NonzeroSum(largest));
        }
        Ok(())
    }

    fn named(&self) -> [(char, &DMatrix<Complex64>); 3] {
        [('A', &self.a), ('B', &self.b), ('C', &self.c)]
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_hermitian(name: char, m: &DMatrix<Complex64>) -> Result<(), SpectraError> {
    let defect = max_abs(&(m - m.adjoint()));
    if defect > MATRIX_TOLERANCE * m.norm() {
        return Err(SpectraError::NotHermitian(name));
    }
    Ok(())
}

/// Gaussian Hermitian matrix: real standard normal diagonal, complex off-diagonal
/// entries with independent standard normal real and imaginary parts.
fn gaussian_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let d: f64 = StandardNormal.sample(rng);
        m[(i, i)] = Complex64::new(d, 0.0);
        for j in i + 1..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            let z = Complex64::new(re, im) / std::f64::consts::SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Seeded random triple; `C = −A − B` makes the sum vanish exactly.
pub fn random_triple(n: usize, seed: u64) -> HermitianTriple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = gaussian_hermitian(n, &mut rng);
    let b = gaussian_hermitian(n, &mut rng);
    let c = -(&a + &b);
    HermitianTriple { a, b, c }
}

/// Eigenvalues of a Hermitian matrix in weakly decreasing order.
pub fn hermitian_spectrum(m: &DMatrix<Complex64>) -> Result<Vec<f64>, SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare('M'));
    }
    check_hermitian('M', m)?;
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Sorted spectra `(α(A), β(B), γ(C))`.
pub fn spectrum_point(t: &HermitianTriple) -> Result<SpectrumPoint<f64>, SpectraError> {
    t.validate()?;
    let alpha = hermitian_spectrum(&t.a)?;
    let beta = hermitian_spectrum(&t.b)?;
    let gamma = hermitian_spectrum(&t.c)?;
    Ok(SpectrumPoint::new(alpha, beta, gamma).expect("equal sizes"))
}

/// SplitMix64 step; derives independent per-sample seeds from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Spectrum point of sample `index` in the stream of `seed`.
pub fn sample_point(n: usize, seed: u64, index: u64) -> SpectrumPoint<f64> {
    spectrum_point(&random_triple(n, derive_seed(seed, index))).expect("sampled triples are valid")
}

/// `count` sampled spectrum points, in index order.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<SpectrumPoint<f64>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample_point(n, seed, i))
        .collect()
}

/// Outcome of checking a batch of samples against an inequality system.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub n: usize,
    pub count: usize,
    /// Largest positive inequality value or negative chamber gap (zero if none).
    pub max_violation: f64,
    /// Largest `|Σα + Σβ + Σγ|`.
    pub max_trace: f64,
    /// Index of the sample attaining `max_violation`, when it is positive.
    pub worst_sample: Option<usize>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        let tol = Tolerance::<f64>::standard();
        self.max_violation <= tol.slack && self.max_trace <= tol.trace
    }
}

fn violation(p: &SpectrumPoint<f64>, system: &HornSystem) -> f64 {
    let chamber = p.chamber_gaps().iter().map(|g| -g).fold(0.0, f64::max);
    let horn = system
        .inequalities()
        .iter()
        .map(|ineq| ineq.evaluate(p))
        .fold(0.0, f64::max);
    chamber.max(horn)
}

/// Samples `count` triples and measures how far their spectra are from `system`.
pub fn verify_sample_batch(n: usize, count: usize, seed: u64, system: &HornSystem) -> SampleReport {
    let stats: Vec<(f64, f64)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_point(n, seed, i);
            (violation(&p, system), p.trace().abs())
        })
        .collect();
    let mut report = SampleReport {
        n,
        count,
        max_violation: 0.0,
        max_trace: 0.0,
        worst_sample: None,
    };
    for (i, (v, t)) in stats.into_iter().enumerate() {
        if v > report.max_violation {
            report.max_violation = v;
            report.worst_sample = Some(i);
        }
        report.max_trace = report.max_trace.max(t);
    }
    report
}

/// Rounds every coordinate to a multiple of `1/max_den`, then shifts γ uniformly
/// so the total trace is exactly zero.
pub fn rationalize(p: &SpectrumPoint<f64>, max_den: u64) -> SpectrumPoint<BigRational> {
    let q = p.map(|x| BigRational::rounded_from_f64(*x, max_den));
    let n = q.n();
    if n == 0 {
        return q;
    }
    let shift = q.trace() / BigRational::from_int(n as i64);
    let gamma = q.gamma().iter().map(|g| g - &shift).collect();
    SpectrumPoint::new(q.alpha().to_vec(), q.beta().to_vec(), gamma).expect("same size")
}

/// Denominator bound used when turning sampled spectra into exact points.
pub const RATIONAL_DENOMINATOR: u64 = 1_000_000;

/// First sample in the stream of `seed` whose spectrum, rationalized with
/// denominator `max_den`, passes an exact membership check against `system`;
/// returned with the number of draws used.
pub fn rational_member(
    system: &HornSystem,
    seed: u64,
    max_den: u64,
    max_draws: u64,
) -> Option<(SpectrumPoint<BigRational>, u64)> {
    let tol = Tolerance::exact();
    (0..max_draws).find_map(|i| {
        let q = rationalize(&sample_point(system.n(), seed, i), max_den);
        matches!(is_member(&q, system, &tol), Ok(Verdict::Member)).then_some((q, i + 1))
    })
}

/// Spectra of `diag(a)`, `diag(b)`, `−diag(a) − diag(b)` for random integer
/// entries in `[−range, range]`: an exact member of `Δ(n)` on its boundary.
pub fn diagonal_member(n: usize, seed: u64, range: i64) -> SpectrumPoint<BigRational> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    let mut b: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    let mut c: Vec<i64> = a.iter().zip(&b).map(|(x, y)| -x - y).collect();
    for v in [&mut a, &mut b, &mut c] {
        v.sort_unstable_by(|x, y| y.cmp(x));
    }
    let conv = |v: Vec<i64>| v.into_iter().map(BigRational::from_int).collect();
    SpectrumPoint::new(conv(a), conv(b), conv(c)).expect("equal sizes")
}
