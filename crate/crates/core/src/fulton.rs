//! Fulton's conjecture `c_{λμ}^ν = 1 ⇒ c_{Nλ,Nμ}^{Nν} = 1`: exhaustive checks on
//! small partitions, saturation spot checks, and an executable version of the
//! geometric argument through faces of the Horn cone.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::face::{on_face, relative_interior_point, rho, FaceSystems};
use crate::horn::{
    classify_facet, is_member, triple_form, FacetStatus, HornInequality, HornSystem, Role,
    SpectrumPoint,
};
use crate::lr::{lr_coefficient, schubert_constant, triple_intersection};
use crate::partition::{minimal_ambient, partitions_of, Partition, SubsetIndex, SubsetTriple};
use crate::scalar::{Scalar, Tolerance};
use crate::spectra::{derive_seed, rational_member};

/// A triple of partitions `(λ, μ, ν)`, read as the coefficient `c_{λμ}^ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LrTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl LrTriple {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Self {
        LrTriple { lambda, mu, nu }
    }

    pub fn coefficient(&self) -> BigUint {
        lr_coefficient(&self.lambda, &self.mu, &self.nu)
    }

    pub fn scaled(&self, n: usize) -> LrTriple {
        let s = |p: &Partition| p.scale(n).expect("positive factor");
        LrTriple::new(s(&self.lambda), s(&self.mu), s(&self.nu))
    }

    fn weights_match(&self) -> bool {
        self.lambda.weight() + self.mu.weight() == self.nu.weight()
    }
}

impl fmt::Display for LrTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ({}) ({})", self.lambda, self.mu, self.nu)
    }
}

/// Every `(λ, μ, ν)` with at most `max_parts` parts, `|ν| = |λ| + |μ| ≤ max_weight`
/// and `c_{λμ}^ν = 1`, ordered by `|ν|`, then `ν`, `λ`, `μ` as enumerated.
pub fn enumerate_lr_one_triples(max_weight: usize, max_parts: usize) -> Vec<LrTriple> {
    let candidates = weight_compatible_triples(max_weight, max_parts);
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|t| t.coefficient().is_one())
        .collect();
    candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect()
}

/// All `(λ, μ, ν)` with at most `max_parts` parts, `|ν| = |λ| + |μ| ≤ max_weight`
/// and `λ, μ ⊆ ν`.
fn weight_compatible_triples(max_weight: usize, max_parts: usize) -> Vec<LrTriple> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        for nu in partitions_of(w, max_parts, w) {
            for wl in 0..=w {
                for lam in partitions_of(wl, max_parts, wl) {
                    if !lam.is_contained_in(&nu) {
                        continue;
                    }
                    for mu in partitions_of(w - wl, max_parts, w - wl) {
                        if mu.is_contained_in(&nu) {
                            out.push(LrTriple::new(lam.clone(), mu, nu.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FultonError {
    #[error("c{triple} = {coefficient}, expected 1")]
    Hypothesis {
        triple: LrTriple,
        coefficient: BigUint,
    },
    #[error("scale factors start at 1")]
    ZeroScale,
}

/// Scaled coefficients `c_{Nλ,Nμ}^{Nν}` for `N = 1..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct FultonReport {
    pub triple: LrTriple,
    pub coefficients: Vec<(usize, BigUint)>,
}

impl FultonReport {
    pub fn passed(&self) -> bool {
        self.coefficients.iter().all(|(_, c)| c.is_one())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(usize, BigUint)> {
        self.coefficients.iter().filter(|(_, c)| !c.is_one())
    }
}

fn check_hypothesis(triple: &LrTriple) -> Result<(), FultonError> {
    let coefficient = triple.coefficient();
    if !coefficient.is_one() {
        return Err(FultonError::Hypothesis {
            triple: triple.clone(),
            coefficient,
        });
    }
    Ok(())
}

pub fn verify_fulton(triple: &LrTriple, n_max: usize) -> Result<FultonReport, FultonError> {
    check_hypothesis(triple)?;
    let coefficients = (1..=n_max)
        .map(|n| (n, triple.scaled(n).coefficient()))
        .collect();
    Ok(FultonReport {
        triple: triple.clone(),
        coefficients,
    })
}

/// `c_{Nλ,Nμ}^{Nν} ≠ 0 ⇒ c_{λμ}^ν ≠ 0` for one instance.
pub fn verify_saturation(triple: &LrTriple, n: usize) -> Result<bool, FultonError> {
    if n == 0 {
        return Err(FultonError::ZeroScale);
    }
    if triple.scaled(n).coefficient().is_zero() {
        return Ok(true);
    }
    Ok(!triple.coefficient().is_zero())
}

/// One line of a sweep: a scaled coefficient of an enumerated triple.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepLine {
    pub triple: LrTriple,
    pub scale: usize,
    pub coefficient: BigUint,
}

impl SweepLine {
    pub fn passed(&self) -> bool {
        self.coefficient.is_one()
    }
}

/// Checks every enumerated `c = 1` triple at scales `2..=n_max`; lines come
/// out in enumeration order, then by scale.
pub fn fulton_sweep(max_weight: usize, max_parts: usize, n_max: usize) -> Vec<SweepLine> {
    let family = enumerate_lr_one_triples(max_weight, max_parts);
    family
        .par_iter()
        .map(|t| {
            (2..=n_max)
                .map(|n| SweepLine {
                    triple: t.clone(),
                    scale: n,
                    coefficient: t.scaled(n).coefficient(),
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All `(λ, μ, ν)` with at most `max_parts` parts, `|ν| = |λ| + |μ| ≤ max_weight`
/// and `λ, μ ⊆ ν` (any coefficient), checked for saturation at scales `1..=n_max`; returns the
/// violating `(triple, N)` pairs and the number of instances checked.
pub fn saturation_sweep(
    max_weight: usize,
    max_parts: usize,
    n_max: usize,
) -> (Vec<(LrTriple, usize)>, usize) {
    let triples = weight_compatible_triples(max_weight, max_parts);
    let checked = triples.len() * n_max;
    let violations = triples
        .par_iter()
        .flat_map_iter(|t| {
            (1..=n_max)
                .filter(|&n| !verify_saturation(t, n).expect("positive scale"))
                .map(|n| (t.clone(), n))
                .collect::<Vec<_>>()
        })
        .collect();
    (violations, checked)
}

/// The seven steps of the geometric argument.
pub const TRACE_STEPS: [&str; 7] = [
    "index sets",
    "facet",
    "interior face point",
    "perturbed block spectrum",
    "scaled index sets",
    "face of the scaled triple",
    "scaled coefficient",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("c{triple} = {coefficient}, expected 1")]
    Precondition {
        triple: LrTriple,
        coefficient: BigUint,
    },
    #[error("step {step} ({}) failed: {predicate}", TRACE_STEPS[*step - 1])]
    StepFailed { step: usize, predicate: String },
}

fn fail<T>(step: usize, predicate: impl Into<String>) -> Result<T, TraceError> {
    Err(TraceError::StepFailed {
        step,
        predicate: predicate.into(),
    })
}

fn ensure(step: usize, ok: bool, predicate: impl FnOnce() -> String) -> Result<(), TraceError> {
    if ok {
        Ok(())
    } else {
        fail(step, predicate())
    }
}

/// A completed step and what it established.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} {}: {}",
            self.step,
            TRACE_STEPS[self.step - 1],
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceReport {
    pub triple: LrTriple,
    pub scale: usize,
    pub steps: Vec<TraceStep>,
    /// `σ_{I″} · σ_{J″} · σ_{K″^∨}` in the scaled Grassmannian.
    pub geometric_coefficient: BigUint,
    /// `c_{Nλ,Nμ}^{Nν}` by tableau count.
    pub direct_coefficient: BigUint,
}

/// Retry cap for drawing perturbations without ties.
pub const PERTURBATION_RETRIES: u64 = 100;

/// Sorted merge of the `N` perturbed copies of the (n − r)-block, role by role.
fn merged_copies(copies: &[SpectrumPoint<BigRational>]) -> SpectrumPoint<BigRational> {
    let merge = |role: Role| {
        let mut v: Vec<BigRational> = copies
            .iter()
            .flat_map(|c| c.component(role).iter().cloned())
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    };
    SpectrumPoint::new(merge(Role::Alpha), merge(Role::Beta), merge(Role::Gamma))
        .expect("equal sizes")
}

/// Merges the r-block into the sorted block of copies, returning the full
/// point and the 1-based positions taken by the r-block in each role.
fn merge_blocks(
    q_r: &SpectrumPoint<BigRational>,
    block: &SpectrumPoint<BigRational>,
) -> (SpectrumPoint<BigRational>, [Vec<usize>; 3]) {
    let mut comps: Vec<Vec<BigRational>> = Vec::new();
    let mut places: Vec<Vec<usize>> = Vec::new();
    for role in Role::ALL {
        let mut tagged: Vec<(BigRational, bool)> = q_r
            .component(role)
            .iter()
            .map(|v| (v.clone(), true))
            .chain(block.component(role).iter().map(|v| (v.clone(), false)))
            .collect();
        tagged.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        places.push(
            tagged
                .iter()
                .enumerate()
                .filter(|(_, (_, inner))| *inner)
                .map(|(i, _)| i + 1)
                .collect(),
        );
        comps.push(tagged.into_iter().map(|(v, _)| v).collect());
    }
    let gamma = comps.pop().expect("three roles");
    let beta = comps.pop().expect("three roles");
    let alpha = comps.pop().expect("three roles");
    let point = SpectrumPoint::new(alpha, beta, gamma).expect("equal sizes");
    let gamma_pos = places.pop().expect("three roles");
    let beta_pos = places.pop().expect("three roles");
    let alpha_pos = places.pop().expect("three roles");
    (point, [alpha_pos, beta_pos, gamma_pos])
}

fn max_abs(p: &SpectrumPoint<BigRational>) -> BigRational {
    p.coords()
        .into_iter()
        .map(|v| v.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

/// Runs the geometric argument for `(λ, μ, ν)` at scale `n_scale`, asserting
/// each step; randomness (face samples, perturbations) comes from `seed`.
pub fn geometric_trace(
    triple: &LrTriple,
    n_scale: usize,
    seed: u64,
) -> Result<TraceReport, TraceError> {
    let coefficient = triple.coefficient();
    if !coefficient.is_one() {
        return Err(TraceError::Precondition {
            triple: triple.clone(),
            coefficient,
        });
    }
    if n_scale == 0 {
        return fail(4, "the number of copies N must be positive");
    }
    let tol = Tolerance::<BigRational>::exact();
    let mut steps = Vec::new();
    let (lam, mu, nu) = (&triple.lambda, &triple.mu, &triple.nu);

    // 1
    ensure(1, triple.weights_match(), || {
        format!(
            "|λ| + |μ| = {} but |ν| = {}",
            lam.weight() + mu.weight(),
            nu.weight()
        )
    })?;
    let a = lam.len().max(mu.len()).max(nu.len()).max(1);
    let n = minimal_ambient(a, &[lam, mu, nu]);
    if n == a {
        return fail(
            1,
            "all partitions are empty, so there is no proper Grassmannian",
        );
    }
    let subset = |p: &Partition, a: usize, n: usize, step: usize| {
        p.to_subset(a, n).or_else(|e| fail(step, e.to_string()))
    };
    let (i, j, k) = (
        subset(lam, a, n, 1)?,
        subset(mu, a, n, 1)?,
        subset(nu, a, n, 1)?,
    );
    let c_schubert = schubert_constant(&i, &j, &k).or_else(|e| fail(1, e.to_string()))?;
    ensure(1, c_schubert == coefficient, || {
        format!("c_IJ^K = {c_schubert} differs from c_λμ^ν = {coefficient}")
    })?;
    let face_triple = SubsetTriple::new(i.clone(), j.clone(), k.dual()).expect("common shape");
    steps.push(TraceStep {
        step: 1,
        detail: format!(
            "a = {a}, n = {n}, I = {}, J = {}, K = {}, c = 1",
            i.braces(),
            j.braces(),
            k.braces()
        ),
    });

    // 2
    let whole = HornSystem::facets(n);
    let target = HornInequality {
        triple: face_triple.clone(),
        coefficient: triple_intersection(&i, &j, &k.dual()).expect("common shape"),
        status: FacetStatus::Unclassified,
    };
    ensure(2, target.coefficient.is_one(), || {
        format!("σ_I σ_J σ_K∨ = {}", target.coefficient)
    })?;
    let report = classify_facet(&target, &whole).or_else(|e| fail(2, e.to_string()))?;
    ensure(2, report.status == FacetStatus::Facet, || {
        format!("{face_triple} is {}", report.status)
    })?;
    steps.push(TraceStep {
        step: 2,
        detail: format!("{face_triple} is a facet (LP margin {})", report.margin),
    });

    // 3
    let systems = FaceSystems {
        whole,
        block_r: HornSystem::facets(a),
        block_s: HornSystem::facets(n - a),
    };
    let p = relative_interior_point(&face_triple, &systems, 8, derive_seed(seed, 0))
        .or_else(|e| fail(3, e.to_string()))?;
    ensure(3, p.in_open_chamber(), || {
        "face point is not in E^{++}".into()
    })?;
    ensure(3, triple_form(&face_triple, &p).is_zero(), || {
        "face form does not vanish".into()
    })?;
    ensure(
        3,
        on_face(&p, &face_triple, &systems, &tol).unwrap_or(false),
        || "ρ(p) is not in Δ(r) × Δ(n−r)".into(),
    )?;
    let (q_r, q_s) = rho(&p, &face_triple).expect("same size");
    let min_gap = p.min_positive_gap().expect("open chamber");
    steps.push(TraceStep {
        step: 3,
        detail: format!(
            "interior point with smallest gap {min_gap}, split into blocks of sizes {a} and {}",
            n - a
        ),
    });

    // 4
    let s = n - a;
    let eps = min_gap / BigRational::from_int(10);
    let big_s = n_scale * s;
    let block_system = HornSystem::facets(big_s);
    let mut found = None;
    for attempt in 0..PERTURBATION_RETRIES {
        let stream = derive_seed(seed, 1 + attempt);
        let copies: Option<Vec<SpectrumPoint<BigRational>>> = (0..n_scale as u64)
            .map(|c| {
                let (m, _) = rational_member(&systems.block_s, derive_seed(stream, c), 100, 64)?;
                let norm = max_abs(&m);
                let scale = if norm.is_zero() {
                    BigRational::zero()
                } else {
                    &eps / norm
                };
                let shifted: Vec<BigRational> = q_s
                    .coords()
                    .iter()
                    .zip(m.coords())
                    .map(|(x, y)| x + y * &scale)
                    .collect();
                Some(SpectrumPoint::from_coords(&shifted).expect("3s coordinates"))
            })
            .collect();
        let Some(copies) = copies else { continue };
        let block = merged_copies(&copies);
        let (point, places) = merge_blocks(&q_r, &block);
        if point.in_open_chamber() {
            found = Some((copies, block, point, places, attempt + 1));
            break;
        }
    }
    let Some((copies, block, big_point, places, attempts)) = found else {
        return fail(
            4,
            format!("no tie-free perturbation in {PERTURBATION_RETRIES} draws"),
        );
    };
    for (c, copy) in copies.iter().enumerate() {
        ensure(
            4,
            is_member(copy, &systems.block_s, &tol)
                .map(|v| v.is_member())
                .unwrap_or(false),
            || format!("perturbed copy {} left Δ({s})", c + 1),
        )?;
    }
    ensure(
        4,
        is_member(&block, &block_system, &tol)
            .map(|v| v.is_member())
            .unwrap_or(false),
        || format!("block of {n_scale} copies is not in Δ({big_s})"),
    )?;
    steps.push(TraceStep {
        step: 4,
        detail: format!(
            "{n_scale} copies with ε = {eps}, assembled size {} ({attempts} draw(s))",
            a + big_s
        ),
    });

    // 5
    let big_n = a + big_s;
    let scaled = triple.scaled(n_scale);
    let (i2, j2, k2) = (
        subset(&scaled.lambda, a, big_n, 5)?,
        subset(&scaled.mu, a, big_n, 5)?,
        subset(&scaled.nu, a, big_n, 5)?,
    );
    for (name, set, original) in [("I″", &i2, lam), ("J″", &j2, mu), ("K″", &k2, nu)] {
        let expected = original.scale(n_scale).expect("positive scale");
        ensure(5, Partition::from_subset(set) == expected, || {
            format!("{name} = {} does not encode {expected}", set.braces())
        })?;
    }
    let scaled_face = SubsetTriple::new(i2.clone(), j2.clone(), k2.dual()).expect("common shape");
    steps.push(TraceStep {
        step: 5,
        detail: format!(
            "I″ = {}, J″ = {}, K″ = {} in {{1..{big_n}}}",
            i2.braces(),
            j2.braces(),
            k2.braces()
        ),
    });

    // 6
    let observed: Vec<SubsetIndex> = places
        .iter()
        .map(|v| SubsetIndex::new(big_n, v.clone()).expect("valid positions"))
        .collect();
    let expected = [&scaled_face.i, &scaled_face.j, &scaled_face.k];
    for (role, (seen, want)) in Role::ALL.iter().zip(observed.iter().zip(expected)) {
        ensure(6, seen == want, || {
            format!(
                "{} block occupies {} instead of {}",
                role.name(),
                seen.braces(),
                want.braces()
            )
        })?;
    }
    ensure(6, big_point.in_open_chamber(), || {
        "assembled point is not in E^{++}".into()
    })?;
    ensure(6, triple_form(&scaled_face, &big_point).is_zero(), || {
        format!("{scaled_face} form does not vanish")
    })?;
    let scaled_systems = FaceSystems {
        whole: HornSystem::from_inequalities(big_n, Vec::new()),
        block_r: systems.block_r.clone(),
        block_s: block_system,
    };
    ensure(
        6,
        on_face(&big_point, &scaled_face, &scaled_systems, &tol).unwrap_or(false),
        || format!("assembled point is not on F{scaled_face}"),
    )?;
    steps.push(TraceStep {
        step: 6,
        detail: format!("assembled point lies on F{scaled_face} inside E^{{++}}"),
    });

    // 7
    let geometric = triple_intersection(&i2, &j2, &k2.dual()).expect("common shape");
    let direct = scaled.coefficient();
    ensure(7, geometric.is_one(), || {
        format!("σ_I″ σ_J″ σ_K″∨ = {geometric}")
    })?;
    ensure(7, geometric == direct, || {
        format!("geometric coefficient {geometric} differs from tableau count {direct}")
    })?;
    steps.push(TraceStep {
        step: 7,
        detail: format!("c_{{Nλ,Nμ}}^{{Nν}} = {direct} for N = {n_scale}"),
    });

    Ok(TraceReport {
        triple: triple.clone(),
        scale: n_scale,
        steps,
        geometric_coefficient: geometric,
        direct_coefficient: direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t(l: &[usize], m: &[usize], n: &[usize]) -> LrTriple {
        LrTriple::new(p(l), p(m), p(n))
    }

    #[test]
    fn small_family() {
        let family = enumerate_lr_one_triples(2, 2);
        assert!(family.contains(&t(&[1], &[1], &[2])));
        assert!(family.contains(&t(&[1], &[1], &[1, 1])));
        assert!(family.contains(&t(&[], &[2], &[2])));
        assert!(!enumerate_lr_one_triples(6, 3).contains(&t(&[2, 1], &[2, 1], &[3, 2, 1])));
        assert_eq!(enumerate_lr_one_triples(0, 3), vec![t(&[], &[], &[])]);
    }

    #[test]
    fn family_matches_brute_force_count() {
        // every (λ, μ, ν) in the bounds with c = 1, counted independently
        let all: Vec<Partition> = crate::partition::partitions_up_to(5, 2);
        let mut count = 0;
        for nu in &all {
            for lam in &all {
                for mu in &all {
                    if lr_coefficient(lam, mu, nu).is_one() {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(enumerate_lr_one_triples(5, 2).len(), count);
    }

    #[test]
    fn fulton_examples() {
        let r = verify_fulton(&t(&[1], &[1], &[1, 1]), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.coefficients.len(), 3);
        let r = verify_fulton(&t(&[3, 1], &[], &[3, 1]), 4).unwrap();
        assert!(r.passed());
        match verify_fulton(&t(&[2, 1], &[2, 1], &[3, 2, 1]), 2) {
            Err(FultonError::Hypothesis { coefficient, .. }) => {
                assert_eq!(coefficient, BigUint::from(2u32))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficient_two_grows() {
        // c_{Nλ,Nμ}^{Nν} = N + 1 for the smallest coefficient-two triple
        let base = t(&[2, 1], &[2, 1], &[3, 2, 1]);
        for n in 1..=3 {
            assert_eq!(base.scaled(n).coefficient(), BigUint::from(n as u32 + 1));
        }
    }

    #[test]
    fn saturation_examples() {
        assert!(verify_saturation(&t(&[1], &[1], &[2]), 2).unwrap());
        assert!(verify_saturation(&t(&[1], &[1], &[3]), 2).unwrap());
        assert_eq!(
            verify_saturation(&t(&[1], &[1], &[2]), 0),
            Err(FultonError::ZeroScale)
        );
        let (violations, checked) = saturation_sweep(6, 3, 3);
        assert!(violations.is_empty());
        assert!(checked > 0);
    }

    #[test]
    fn sweep_small() {
        let lines = fulton_sweep(6, 3, 3);
        assert_eq!(lines.len(), 2 * enumerate_lr_one_triples(6, 3).len());
        assert!(lines.iter().all(SweepLine::passed));
    }

    #[test]
    fn trace_examples() {
        for (triple, n) in [(t(&[1], &[1], &[1, 1]), 2), (t(&[1], &[1], &[2]), 3)] {
            let report = geometric_trace(&triple, n, 7).unwrap();
            assert_eq!(report.steps.len(), 7);
            assert_eq!(report.geometric_coefficient, report.direct_coefficient);
        }
    }

    #[test]
    fn trace_rejects_coefficient_two() {
        let err = geometric_trace(&t(&[2, 1], &[2, 1], &[3, 2, 1]), 2, 0).unwrap_err();
        assert!(matches!(err, TraceError::Precondition { .. }));
    }

    #[test]
    fn trace_of_trivial_factor() {
        let report = geometric_trace(&t(&[1], &[], &[1]), 2, 3).unwrap();
        assert_eq!(report.direct_coefficient, BigUint::one());
    }
}
