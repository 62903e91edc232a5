//! Faces `F_{IJK}` of the Horn cone through the splitting isomorphism
//! `ρ_{IJK}: E(n) → E(r) ⊕ E(n − r)`.
//!
//! A point `p ∈ E(n)^+` lies on `F_{IJK}` exactly when both halves of
//! `ρ_{IJK}(p)` lie in the smaller cones. Points of the face are built the other
//! way round: take members of `Δ(r)` and `Δ(n − r)` and interleave them, the
//! first into the positions `I, J, K` and the second into the complements.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::horn::{is_member, triple_form, HornError, HornSystem, Role, SpectrumPoint, Verdict};
use crate::linalg::rank;
use crate::lr::triple_intersection_of;
use crate::partition::SubsetTriple;
use crate::scalar::{near_zero, Scalar, Tolerance};
use crate::simplex::InequalityLp;
use crate::spectra::{derive_seed, diagonal_member, rational_member};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaceError {
    #[error("point has size {found}, triple lives in E({expected})")]
    SizeMismatch { expected: usize, found: usize },
    #[error("point is not in the closed chamber E(n)^+")]
    NotInChamber,
    #[error("{block} block is not in its cone: {reason}")]
    BlockNotMember { block: &'static str, reason: String },
    #[error("triple {0} has zero intersection number")]
    ZeroIntersection(SubsetTriple),
    #[error("only {achieved} of {requested} face samples could be generated")]
    InsufficientSamples { requested: usize, achieved: usize },
    #[error(transparent)]
    Horn(#[from] HornError),
}

fn positions(triple: &SubsetTriple, role: Role) -> (Vec<usize>, Vec<usize>) {
    let set = match role {
        Role::Alpha => &triple.i,
        Role::Beta => &triple.j,
        Role::Gamma => &triple.k,
    };
    let inside = set.elements().iter().map(|e| e - 1).collect();
    let outside = set.complement().iter().map(|e| e - 1).collect();
    (inside, outside)
}

/// `ρ_{IJK}(p)`: coordinates at `I, J, K` and at their complements.
pub fn rho<T: Scalar>(
    p: &SpectrumPoint<T>,
    triple: &SubsetTriple,
) -> Result<(SpectrumPoint<T>, SpectrumPoint<T>), FaceError> {
    if p.n() != triple.n() {
        return Err(FaceError::SizeMismatch {
            expected: triple.n(),
            found: p.n(),
        });
    }
    let mut inner: Vec<Vec<T>> = Vec::with_capacity(3);
    let mut outer: Vec<Vec<T>> = Vec::with_capacity(3);
    for role in Role::ALL {
        let xs = p.component(role);
        let (inside, outside) = positions(triple, role);
        inner.push(inside.iter().map(|&i| xs[i].clone()).collect());
        outer.push(outside.iter().map(|&i| xs[i].clone()).collect());
    }
    let split = |mut v: Vec<Vec<T>>| {
        let gamma = v.pop().expect("three roles");
        let beta = v.pop().expect("three roles");
        let alpha = v.pop().expect("three roles");
        SpectrumPoint::new(alpha, beta, gamma).expect("equal sizes")
    };
    Ok((split(inner), split(outer)))
}

/// Inverse of [`rho`], with no membership or monotonicity checks.
pub fn interleave<T: Scalar>(
    q_r: &SpectrumPoint<T>,
    q_s: &SpectrumPoint<T>,
    triple: &SubsetTriple,
) -> Result<SpectrumPoint<T>, FaceError> {
    let (r, n) = (triple.r(), triple.n());
    for (q, expected) in [(q_r, r), (q_s, n - r)] {
        if q.n() != expected {
            return Err(FaceError::SizeMismatch {
                expected,
                found: q.n(),
            });
        }
    }
    let mut parts: Vec<Vec<T>> = Vec::with_capacity(3);
    for role in Role::ALL {
        let mut xs = vec![T::zero(); n];
        let (inside, outside) = positions(triple, role);
        for (&pos, v) in inside.iter().zip(q_r.component(role)) {
            xs[pos] = v.clone();
        }
        for (&pos, v) in outside.iter().zip(q_s.component(role)) {
            xs[pos] = v.clone();
        }
        parts.push(xs);
    }
    let gamma = parts.pop().expect("three roles");
    let beta = parts.pop().expect("three roles");
    let alpha = parts.pop().expect("three roles");
    Ok(SpectrumPoint::new(alpha, beta, gamma)?)
}

/// Horn systems for `Δ(n)`, `Δ(r)` and `Δ(n − r)` attached to one triple shape.
#[derive(Clone, Debug)]
pub struct FaceSystems {
    pub whole: HornSystem,
    pub block_r: HornSystem,
    pub block_s: HornSystem,
}

impl FaceSystems {
    /// Facet systems for the shape of `triple`.
    pub fn for_triple(triple: &SubsetTriple) -> Self {
        Self::new(triple.r(), triple.n())
    }

    pub fn new(r: usize, n: usize) -> Self {
        FaceSystems {
            whole: HornSystem::facets(n),
            block_r: HornSystem::facets(r),
            block_s: HornSystem::facets(n - r),
        }
    }
}

fn check_block<T: Scalar>(
    q: &SpectrumPoint<T>,
    system: &HornSystem,
    tol: &Tolerance<T>,
    block: &'static str,
) -> Result<(), FaceError> {
    match is_member(q, system, tol)? {
        Verdict::Member => Ok(()),
        Verdict::NonMember(v) => Err(FaceError::BlockNotMember {
            block,
            reason: v.to_string(),
        }),
    }
}

/// Spectrum of the block-diagonal triple `A = diag(A′, A″)` etc. whose blocks
/// have spectra `q_r` and `q_s`, placed at `I, J, K` and the complements.
pub fn assemble_block_spectrum<T: Scalar>(
    q_r: &SpectrumPoint<T>,
    q_s: &SpectrumPoint<T>,
    triple: &SubsetTriple,
    systems: &FaceSystems,
    tol: &Tolerance<T>,
) -> Result<SpectrumPoint<T>, FaceError> {
    let p = interleave(q_r, q_s, triple)?;
    check_block(q_r, &systems.block_r, tol, "r")?;
    check_block(q_s, &systems.block_s, tol, "n-r")?;
    if !p.in_chamber(&tol.slack) {
        return Err(FaceError::NotInChamber);
    }
    Ok(p)
}

/// Face test through the splitting: `ρ(p) ∈ Δ(r) × Δ(n − r)`.
pub fn on_face<T: Scalar>(
    p: &SpectrumPoint<T>,
    triple: &SubsetTriple,
    systems: &FaceSystems,
    tol: &Tolerance<T>,
) -> Result<bool, FaceError> {
    if p.n() != triple.n() {
        return Err(FaceError::SizeMismatch {
            expected: triple.n(),
            found: p.n(),
        });
    }
    if !p.in_chamber(&tol.slack) {
        return Err(FaceError::NotInChamber);
    }
    let (q_r, q_s) = rho(p, triple)?;
    Ok(is_member(&q_r, &systems.block_r, tol)?.is_member()
        && is_member(&q_s, &systems.block_s, tol)?.is_member())
}

/// Face test in `E(n)`: `p ∈ Δ(n)` and the `(I, J, K)` form vanishes at `p`.
pub fn direct_face_test<T: Scalar>(
    p: &SpectrumPoint<T>,
    triple: &SubsetTriple,
    whole: &HornSystem,
    tol: &Tolerance<T>,
) -> Result<bool, FaceError> {
    Ok(is_member(p, whole, tol)?.is_member() && near_zero(&triple_form(triple, p), &tol.slack))
}

/// Exact face point together with the smallest chamber gap it achieves.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceSample {
    pub point: SpectrumPoint<BigRational>,
    pub min_gap: BigRational,
}

/// Layout of the transform parameters: nonnegative weights of the r-block and
/// (n − r)-block generators, the α and β shifts of each block (γ absorbs minus
/// their sum), and the common gap bound δ.
struct Params {
    gens_r: usize,
    gens_s: usize,
}

impl Params {
    fn shift_r(&self) -> (usize, usize) {
        let base = self.gens_r + self.gens_s;
        (base, base + 1)
    }

    fn shift_s(&self) -> (usize, usize) {
        let base = self.gens_r + self.gens_s + 2;
        (base, base + 1)
    }

    fn delta(&self) -> usize {
        self.gens_r + self.gens_s + 4
    }

    fn len(&self) -> usize {
        self.gens_r + self.gens_s + 5
    }

    fn unit(&self, index: usize) -> Vec<BigRational> {
        let mut e = vec![BigRational::zero(); self.len()];
        e[index] = BigRational::one();
        e
    }
}

/// Coordinate of the interleaved point as a linear form in the parameters.
fn coordinate_form(
    layout: &Params,
    gens_r: &[SpectrumPoint<BigRational>],
    gens_s: &[SpectrumPoint<BigRational>],
    triple: &SubsetTriple,
    role: Role,
    pos: usize,
) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); layout.len()];
    let (inside, outside) = positions(triple, role);
    let (x, y) = match inside.iter().position(|&i| i == pos) {
        Some(k) => {
            for (g, gen) in gens_r.iter().enumerate() {
                coeffs[g] = gen.component(role)[k].clone();
            }
            layout.shift_r()
        }
        None => {
            let k = outside.iter().position(|&i| i == pos).expect("complement");
            for (g, gen) in gens_s.iter().enumerate() {
                coeffs[layout.gens_r + g] = gen.component(role)[k].clone();
            }
            layout.shift_s()
        }
    };
    let one = BigRational::one();
    match role {
        Role::Alpha => coeffs[x] = one,
        Role::Beta => coeffs[y] = one,
        Role::Gamma => {
            coeffs[x] = -one.clone();
            coeffs[y] = -one;
        }
    }
    coeffs
}

/// `Σ w_g · gen_g` plus the scalar triple `(x, y, −x − y)`.
fn combine(
    gens: &[SpectrumPoint<BigRational>],
    weights: &[BigRational],
    x: &BigRational,
    y: &BigRational,
) -> SpectrumPoint<BigRational> {
    let n = gens[0].n();
    let mut coords = vec![BigRational::zero(); 3 * n];
    for (gen, w) in gens.iter().zip(weights) {
        for (c, v) in coords.iter_mut().zip(gen.coords()) {
            *c += v * w;
        }
    }
    let xy = x + y;
    for (idx, c) in coords.iter_mut().enumerate() {
        match idx / n {
            0 => *c += x,
            1 => *c += y,
            _ => *c -= &xy,
        }
    }
    SpectrumPoint::from_coords(&coords).expect("3n coordinates")
}

/// Feasible parameters keep the weights in `[0, bound]`, shifts in
/// `[−bound, bound]`, and every chamber gap of the interleaved point `≥ δ`.
fn transform_lp(
    layout: &Params,
    gens_r: &[SpectrumPoint<BigRational>],
    gens_s: &[SpectrumPoint<BigRational>],
    triple: &SubsetTriple,
) -> InequalityLp<BigRational> {
    let n = triple.n();
    let largest = gens_r
        .iter()
        .chain(gens_s)
        .flat_map(SpectrumPoint::coords)
        .map(|v| v.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let bound = (largest + BigRational::one()) * BigRational::from_int(10);
    let mut lp = InequalityLp::new(layout.len());
    for role in Role::ALL {
        for pos in 0..n.saturating_sub(1) {
            // δ − (x_pos − x_{pos+1}) ≤ 0
            let hi = coordinate_form(layout, gens_r, gens_s, triple, role, pos);
            let lo = coordinate_form(layout, gens_r, gens_s, triple, role, pos + 1);
            let mut row: Vec<BigRational> = lo.iter().zip(&hi).map(|(l, h)| l - h).collect();
            row[layout.delta()] = BigRational::one();
            lp.add_le(row, BigRational::zero()).expect("row size");
        }
    }
    let weights = layout.gens_r + layout.gens_s;
    for v in 0..layout.delta() {
        lp.add_le(layout.unit(v), bound.clone()).expect("row size");
        let lower = if v < weights {
            BigRational::zero()
        } else {
            bound.clone()
        };
        lp.add_le(negated(layout.unit(v)), lower).expect("row size");
    }
    lp
}

fn negated(v: Vec<BigRational>) -> Vec<BigRational> {
    v.into_iter().map(|x| -x).collect()
}

/// Builds a face point from generators of `Δ(r)` and `Δ(n − r)`.
///
/// Each block is a nonnegative combination of its generators plus a scalar
/// triple summing to zero, so it stays in its cone. An exact LP picks the
/// combination making the interleaving as monotone as possible, then a random
/// point of the region where the smallest gap is at least half the optimum is
/// taken. The optimum is zero when no combination interleaves strictly.
pub fn face_point_from_blocks(
    gens_r: &[SpectrumPoint<BigRational>],
    gens_s: &[SpectrumPoint<BigRational>],
    triple: &SubsetTriple,
    rng: &mut impl Rng,
) -> Option<FaceSample> {
    if gens_r.is_empty() || gens_s.is_empty() {
        return None;
    }
    let layout = Params {
        gens_r: gens_r.len(),
        gens_s: gens_s.len(),
    };
    let mut lp = transform_lp(&layout, gens_r, gens_s, triple);
    lp.maximize(layout.unit(layout.delta()))
        .expect("objective size");
    let best = lp.solve().ok()?;
    if best.value.is_negative() {
        return None;
    }
    lp.add_le(
        negated(layout.unit(layout.delta())),
        -best.value.clone() / BigRational::from_int(2),
    )
    .expect("row size");
    let mut vertices = vec![best.point];
    for _ in 0..RANDOM_VERTICES {
        let mut objective: Vec<BigRational> = (0..layout.len())
            .map(|_| BigRational::from_int(rng.random_range(-10..=10)))
            .collect();
        objective[layout.delta()] = BigRational::zero();
        lp.maximize(objective).expect("objective size");
        vertices.push(lp.solve().ok()?.point);
    }
    let weights: Vec<i64> = vertices.iter().map(|_| rng.random_range(1..=99)).collect();
    let total = BigRational::from_int(weights.iter().sum::<i64>());
    let mut z = vec![BigRational::zero(); layout.len()];
    for (v, &w) in vertices.iter().zip(&weights) {
        let w = BigRational::from_int(w) / &total;
        for (zi, vi) in z.iter_mut().zip(v) {
            *zi += vi * &w;
        }
    }
    let (xr, yr) = layout.shift_r();
    let (xs, ys) = layout.shift_s();
    let a = combine(gens_r, &z[..layout.gens_r], &z[xr], &z[yr]);
    let b = combine(gens_s, &z[layout.gens_r..xr], &z[xs], &z[ys]);
    let point = interleave(&a, &b, triple).ok()?;
    let min_gap = point
        .chamber_gaps()
        .into_iter()
        .fold(None, |acc: Option<BigRational>, g| match acc {
            Some(m) if m <= g => Some(m),
            _ => Some(g),
        })
        .unwrap_or_else(BigRational::zero);
    if min_gap.is_negative() {
        return None;
    }
    Some(FaceSample { point, min_gap })
}

/// Smallest positive multiple of `p` with integer coordinates.
fn integral_multiple(p: &SpectrumPoint<BigRational>) -> SpectrumPoint<BigRational> {
    let den = p
        .coords()
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    p.scaled(&BigRational::from_integer(den))
}

/// Vertices for random objectives mixed into each face point.
const RANDOM_VERTICES: usize = 3;

/// Denominator used when rationalizing Gaussian generators; small values keep
/// the exact LP cheap.
pub const GENERATOR_DENOMINATOR: u64 = 100;

/// Sampled cone members combined in each block: rationalized spectra of
/// Gaussian triples, and spectra of random diagonal triples.
pub const GAUSSIAN_GENERATORS: usize = 3;
pub const DIAGONAL_GENERATORS: usize = 3;

fn generators(system: &HornSystem, seed: u64) -> Option<Vec<SpectrumPoint<BigRational>>> {
    let mut gens: Vec<SpectrumPoint<BigRational>> = (0..GAUSSIAN_GENERATORS as u64)
        .map(|g| {
            rational_member(system, derive_seed(seed, g), GENERATOR_DENOMINATOR, 64)
                .map(|(q, _)| integral_multiple(&q))
        })
        .collect::<Option<_>>()?;
    let tol = Tolerance::exact();
    for g in 0..DIAGONAL_GENERATORS as u64 {
        let q = diagonal_member(system.n(), derive_seed(seed, 1000 + g), 10);
        if is_member(&q, system, &tol).ok()?.is_member() {
            gens.push(q);
        }
    }
    Some(gens)
}

/// Exact random point of `F_{IJK} ∩ E(n)^+` from the sample stream `seed`.
///
/// Block generators are rationalized Hermitian samples checked exactly against
/// their cones; the result is re-checked through [`assemble_block_spectrum`].
pub fn sample_face_point(
    triple: &SubsetTriple,
    systems: &FaceSystems,
    seed: u64,
) -> Option<FaceSample> {
    let gens_r = generators(&systems.block_r, derive_seed(seed, 0))?;
    let gens_s = generators(&systems.block_s, derive_seed(seed, 1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    let sample = face_point_from_blocks(&gens_r, &gens_s, triple, &mut rng)?;
    let (a, b) = rho(&sample.point, triple).ok()?;
    assemble_block_spectrum(&a, &b, triple, systems, &Tolerance::exact()).ok()?;
    Some(sample)
}

/// Up to `count` face samples, attempt `i` drawing from stream `derive_seed(seed, i)`.
pub fn face_samples(
    triple: &SubsetTriple,
    systems: &FaceSystems,
    count: usize,
    seed: u64,
    max_attempts: usize,
) -> Vec<FaceSample> {
    let mut out = Vec::with_capacity(count);
    let mut next = 0usize;
    while out.len() < count && next < max_attempts {
        let batch = (count - out.len()).min(max_attempts - next);
        let found: Vec<Option<FaceSample>> = (next..next + batch)
            .into_par_iter()
            .map(|i| sample_face_point(triple, systems, derive_seed(seed, i as u64)))
            .collect();
        out.extend(found.into_iter().flatten());
        next += batch;
    }
    out
}

/// Average of `count` face samples lying in the open chamber: a point in the
/// relative interior of the face for generic samples.
pub fn relative_interior_point(
    triple: &SubsetTriple,
    systems: &FaceSystems,
    count: usize,
    seed: u64,
) -> Result<SpectrumPoint<BigRational>, FaceError> {
    let strict: Vec<FaceSample> = face_samples(triple, systems, count, seed, 20 * count + 20)
        .into_iter()
        .filter(|s| s.min_gap.is_positive())
        .collect();
    if strict.is_empty() {
        return Err(FaceError::InsufficientSamples {
            requested: count,
            achieved: 0,
        });
    }
    let n = triple.n();
    let total = strict
        .iter()
        .fold(vec![BigRational::zero(); 3 * n], |acc, s| {
            acc.iter()
                .zip(s.point.coords())
                .map(|(a, b)| a + b)
                .collect()
        });
    let k = BigRational::from_int(strict.len() as i64);
    let mean: Vec<BigRational> = total.into_iter().map(|v| v / &k).collect();
    Ok(SpectrumPoint::from_coords(&mean)?)
}

/// Affine rank of a set of points of `E(n)`, exact.
pub fn affine_rank(points: &[SpectrumPoint<BigRational>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let origin = base.coords();
    let rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.coords().iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();
    rank(rows)
}

/// Dimension of `F_{IJK}` estimated as the affine rank of `sample_count`
/// random face points.
pub fn face_dimension(
    triple: &SubsetTriple,
    sample_count: usize,
    seed: u64,
) -> Result<usize, FaceError> {
    if triple_intersection_of(triple) == BigUint::zero() {
        return Err(FaceError::ZeroIntersection(triple.clone()));
    }
    let systems = FaceSystems::for_triple(triple);
    let samples = face_samples(triple, &systems, sample_count, seed, 4 * sample_count + 20);
    if samples.len() < sample_count {
        return Err(FaceError::InsufficientSamples {
            requested: sample_count,
            achieved: samples.len(),
        });
    }
    let points: Vec<SpectrumPoint<BigRational>> = samples.into_iter().map(|s| s.point).collect();
    Ok(affine_rank(&points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horn::enumerate_inequalities;
    use crate::spectra::{rationalize, sample_point};

    fn q(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    fn pt(a: &[i64], b: &[i64], c: &[i64]) -> SpectrumPoint<BigRational> {
        let conv = |v: &[i64]| v.iter().map(|&x| q(x)).collect();
        SpectrumPoint::new(conv(a), conv(b), conv(c)).unwrap()
    }

    fn triple(text: &str, n: usize) -> SubsetTriple {
        SubsetTriple::parse(text, n).unwrap()
    }

    #[test]
    fn rho_selects_coordinates() {
        let t = triple("{1}{1}{1}", 2);
        let (a, b) = rho(&pt(&[1, 0], &[0, -1], &[0, 0]), &t).unwrap();
        assert_eq!(a, pt(&[1], &[0], &[0]));
        assert_eq!(b, pt(&[0], &[-1], &[0]));
        let (a, b) = rho(&SpectrumPoint::<BigRational>::zero(2), &t).unwrap();
        assert_eq!((a, b), (SpectrumPoint::zero(1), SpectrumPoint::zero(1)));
        assert!(rho(&SpectrumPoint::<BigRational>::zero(3), &t).is_err());
    }

    #[test]
    fn assemble_small_example() {
        let t = triple("{1}{2}{2}", 2);
        let systems = FaceSystems::for_triple(&t);
        let tol = Tolerance::exact();
        let p = assemble_block_spectrum(
            &pt(&[1], &[-1], &[0]),
            &pt(&[0], &[0], &[0]),
            &t,
            &systems,
            &tol,
        )
        .unwrap();
        assert_eq!(p, pt(&[1, 0], &[0, -1], &[0, 0]));
        assert!(on_face(&p, &t, &systems, &tol).unwrap());
        assert!(direct_face_test(&p, &t, &systems.whole, &tol).unwrap());
        let zero = SpectrumPoint::zero(1);
        assert_eq!(
            assemble_block_spectrum(&zero, &zero, &t, &systems, &tol).unwrap(),
            SpectrumPoint::zero(2)
        );
    }

    #[test]
    fn assemble_rejects_bad_inputs() {
        let t = triple("{1}{2}{2}", 2);
        let systems = FaceSystems::for_triple(&t);
        let tol = Tolerance::exact();
        // α would be (0, 1)
        let err = assemble_block_spectrum(
            &pt(&[0], &[0], &[0]),
            &pt(&[1], &[0], &[-1]),
            &t,
            &systems,
            &tol,
        );
        assert_eq!(err, Err(FaceError::NotInChamber));
        let err = assemble_block_spectrum(
            &pt(&[1], &[0], &[0]),
            &pt(&[0], &[0], &[0]),
            &t,
            &systems,
            &tol,
        );
        assert!(matches!(
            err,
            Err(FaceError::BlockNotMember { block: "r", .. })
        ));
    }

    #[test]
    fn on_face_requires_chamber() {
        let t = triple("{1}{2}{2}", 2);
        let systems = FaceSystems::for_triple(&t);
        let p = pt(&[0, 1], &[0, 0], &[0, -1]);
        assert_eq!(
            on_face(&p, &t, &systems, &Tolerance::exact()),
            Err(FaceError::NotInChamber)
        );
    }

    #[test]
    fn apex_lies_on_every_face() {
        for n in 2..=4 {
            for ineq in enumerate_inequalities(n, true) {
                let systems = FaceSystems::for_triple(&ineq.triple);
                let zero = SpectrumPoint::<BigRational>::zero(n);
                assert!(on_face(&zero, &ineq.triple, &systems, &Tolerance::exact()).unwrap());
            }
        }
    }

    #[test]
    fn interior_samples_are_off_faces() {
        let n = 3;
        let systems_whole = HornSystem::facets(n);
        for seed in 0..5 {
            let p = rationalize(&sample_point(n, 100, seed), 1_000_000);
            if !is_member(&p, &systems_whole, &Tolerance::exact())
                .unwrap()
                .is_member()
            {
                continue;
            }
            for ineq in systems_whole.inequalities() {
                let systems = FaceSystems::for_triple(&ineq.triple);
                let tol = Tolerance::exact();
                assert!(!on_face(&p, &ineq.triple, &systems, &tol).unwrap());
                assert!(!direct_face_test(&p, &ineq.triple, &systems.whole, &tol).unwrap());
            }
        }
    }

    #[test]
    fn sampled_face_points_round_trip() {
        for n in 2..=4 {
            for ineq in enumerate_inequalities(n, true) {
                let t = &ineq.triple;
                let systems = FaceSystems::for_triple(t);
                let s = (0..10)
                    .filter_map(|seed| sample_face_point(t, &systems, seed))
                    .find(|s| s.min_gap.is_positive())
                    .unwrap_or_else(|| panic!("no strict face sample for {t}"));
                let tol = Tolerance::exact();
                assert!(on_face(&s.point, t, &systems, &tol).unwrap());
                assert!(direct_face_test(&s.point, t, &systems.whole, &tol).unwrap());
                let (a, b) = rho(&s.point, t).unwrap();
                assert_eq!(interleave(&a, &b, t).unwrap(), s.point);
                // trace of each block equals the sum over the index set
                for role in Role::ALL {
                    let (inside, _) = positions(t, role);
                    let over_set: BigRational = inside
                        .iter()
                        .map(|&i| s.point.component(role)[i].clone())
                        .sum();
                    let block: BigRational = a.component(role).iter().cloned().sum();
                    assert_eq!(over_set, block);
                }
            }
        }
    }

    #[test]
    fn facet_dimensions_small() {
        for n in 2..=3 {
            for ineq in enumerate_inequalities(n, true) {
                assert_eq!(
                    face_dimension(&ineq.triple, 3 * n + 2, 9).unwrap(),
                    3 * n - 2,
                    "{}",
                    ineq.triple
                );
            }
        }
    }

    #[test]
    fn zero_intersection_rejected() {
        let t = triple("{1}{1}{1}", 2);
        assert_eq!(
            face_dimension(&t, 4, 0),
            Err(FaceError::ZeroIntersection(t.clone()))
        );
    }
}
