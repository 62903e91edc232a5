//! The eigenvalue cone `Δ(n)`: spectrum points, Horn inequalities, exact
//! membership with certificates, and facet classification by linear programming.
//!
//! A point `(α, β, γ)` lies in `Δ(n)` when the three sequences are weakly
//! decreasing, their total sum vanishes, and every Horn inequality
//! `Σ_{i∈I} α_i + Σ_{j∈J} β_j + Σ_{k∈K} γ_k ≤ 0` holds, where `(I, J, K)`
//! ranges over triples with `σ_I · σ_J · σ_K ≠ 0` in `Gr(r, n)`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::lr::triple_intersection;
use crate::partition::{subsets, SubsetIndex, SubsetTriple};
use crate::scalar::{le_tol, near_zero, parse_rational, sum, Scalar, Tolerance};
use crate::simplex::{InequalityLp, LpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornError {
    #[error("point has size {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("point is not in the closed chamber E(n)^+")]
    NotInChamber,
    #[error("cannot parse point: {0}")]
    Parse(String),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Which of the three spectra a coordinate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Alpha,
    Beta,
    Gamma,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Alpha, Role::Beta, Role::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Role::Alpha => "alpha",
            Role::Beta => "beta",
            Role::Gamma => "gamma",
        }
    }

    fn offset(self, n: usize) -> usize {
        match self {
            Role::Alpha => 0,
            Role::Beta => n,
            Role::Gamma => 2 * n,
        }
    }
}

/// A point `(α, β, γ)` of `E(n) = R^{3n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPoint<T> {
    alpha: Vec<T>,
    beta: Vec<T>,
    gamma: Vec<T>,
}

impl<T: Scalar> SpectrumPoint<T> {
    pub fn new(alpha: Vec<T>, beta: Vec<T>, gamma: Vec<T>) -> Result<Self, HornError> {
        let n = alpha.len();
        for other in [&beta, &gamma] {
            if other.len() != n {
                return Err(HornError::LengthMismatch {
                    expected: n,
                    found: other.len(),
                });
            }
        }
        Ok(SpectrumPoint { alpha, beta, gamma })
    }

    pub fn zero(n: usize) -> Self {
        SpectrumPoint {
            alpha: vec![T::zero(); n],
            beta: vec![T::zero(); n],
            gamma: vec![T::zero(); n],
        }
    }

    /// Splits a flat `3n` vector laid out as `α ‖ β ‖ γ`.
    pub fn from_coords(coords: &[T]) -> Result<Self, HornError> {
        if !coords.len().is_multiple_of(3) {
            return Err(HornError::LengthMismatch {
                expected: coords.len() / 3 * 3,
                found: coords.len(),
            });
        }
        let n = coords.len() / 3;
        Ok(SpectrumPoint {
            alpha: coords[..n].to_vec(),
            beta: coords[n..2 * n].to_vec(),
            gamma: coords[2 * n..].to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn beta(&self) -> &[T] {
        &self.beta
    }

    pub fn gamma(&self) -> &[T] {
        &self.gamma
    }

    pub fn component(&self, role: Role) -> &[T] {
        match role {
            Role::Alpha => &self.alpha,
            Role::Beta => &self.beta,
            Role::Gamma => &self.gamma,
        }
    }

    pub fn coords(&self) -> Vec<T> {
        let mut out = self.alpha.clone();
        out.extend_from_slice(&self.beta);
        out.extend_from_slice(&self.gamma);
        out
    }

    /// `Σα + Σβ + Σγ`; zero exactly on the hyperplane `E_0(n)`.
    pub fn trace(&self) -> T {
        sum(&self.alpha) + sum(&self.beta) + sum(&self.gamma)
    }

    /// Chamber gaps `x_i − x_{i+1}` in [`chamber_constraints`] order.
    pub fn chamber_gaps(&self) -> Vec<T> {
        Role::ALL
            .iter()
            .flat_map(|&role| {
                self.component(role)
                    .windows(2)
                    .map(|w| w[0].clone() - w[1].clone())
            })
            .collect()
    }

    /// Membership in the closed chamber `E(n)^+`, up to `tol`.
    pub fn in_chamber(&self, tol: &T) -> bool {
        self.chamber_gaps().iter().all(|g| le_tol(&-g.clone(), tol))
    }

    /// Membership in the open chamber `E(n)^{++}`.
    pub fn in_open_chamber(&self) -> bool {
        self.chamber_gaps().iter().all(|g| g.is_positive())
    }

    /// Smallest strictly positive chamber gap.
    pub fn min_positive_gap(&self) -> Option<T> {
        self.chamber_gaps()
            .into_iter()
            .filter(|g| g.is_positive())
            .fold(None, |acc: Option<T>, g| match acc {
                Some(m) if m <= g => Some(m),
                _ => Some(g),
            })
    }

    pub fn scaled(&self, factor: &T) -> Self {
        self.map(|x| x.clone() * factor.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SpectrumPoint<U> {
        SpectrumPoint {
            alpha: self.alpha.iter().map(&f).collect(),
            beta: self.beta.iter().map(&f).collect(),
            gamma: self.gamma.iter().map(&f).collect(),
        }
    }

    /// `(α, β, γ) ↦ (β, γ, α)`.
    pub fn rotated(&self) -> Self {
        SpectrumPoint {
            alpha: self.beta.clone(),
            beta: self.gamma.clone(),
            gamma: self.alpha.clone(),
        }
    }

    /// `(α, β, γ) ↦ (β, α, γ)`.
    pub fn swapped(&self) -> Self {
        SpectrumPoint {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            gamma: self.gamma.clone(),
        }
    }

    /// Three comma-separated lines, one per spectrum.
    pub fn render(&self) -> String {
        Role::ALL
            .iter()
            .map(|&role| {
                self.component(role)
                    .iter()
                    .map(Scalar::render)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Reads a point file: three non-empty lines of comma-separated rationals
/// (`p/q`, integers or finite decimals). Lines starting with `#` are skipped.
pub fn parse_point(text: &str) -> Result<SpectrumPoint<BigRational>, HornError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.len() != 3 {
        return Err(HornError::Parse(format!(
            "expected 3 lines, found {}",
            lines.len()
        )));
    }
    let mut parts = lines.iter().map(|line| {
        line.split(',')
            .map(|x| parse_rational(x).ok_or_else(|| HornError::Parse(x.trim().to_string())))
            .collect::<Result<Vec<_>, _>>()
    });
    let alpha = parts.next().expect("three lines")?;
    let beta = parts.next().expect("three lines")?;
    let gamma = parts.next().expect("three lines")?;
    SpectrumPoint::new(alpha, beta, gamma)
}

/// Outcome of an LP facet test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetStatus {
    Facet,
    Redundant,
    Unclassified,
}

impl fmt::Display for FacetStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FacetStatus::Facet => "facet",
            FacetStatus::Redundant => "redundant",
            FacetStatus::Unclassified => "unclassified",
        };
        write!(f, "{s}")
    }
}

/// `Σ_{i∈I} α_i + Σ_{j∈J} β_j + Σ_{k∈K} γ_k ≤ 0`, valid on `Δ(n)` whenever
/// the Schubert intersection number `c_{IJ}^{K^∨}` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornInequality {
    pub triple: SubsetTriple,
    pub coefficient: BigUint,
    pub status: FacetStatus,
}

impl HornInequality {
    pub fn r(&self) -> usize {
        self.triple.r()
    }

    pub fn n(&self) -> usize {
        self.triple.n()
    }

    pub fn evaluate<T: Scalar>(&self, p: &SpectrumPoint<T>) -> T {
        triple_form(&self.triple, p)
    }

    /// Dense coefficient vector over `α ‖ β ‖ γ`.
    pub fn coefficients<T: Scalar>(&self) -> Vec<T> {
        triple_coefficients(&self.triple)
    }
}

impl fmt::Display for HornInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={} c={}", self.triple, self.r(), self.coefficient)
    }
}

pub(crate) fn triple_form<T: Scalar>(t: &SubsetTriple, p: &SpectrumPoint<T>) -> T {
    let pick = |s: &SubsetIndex, xs: &[T]| sum(s.elements().iter().map(|&e| &xs[e - 1]));
    pick(&t.i, p.alpha()) + pick(&t.j, p.beta()) + pick(&t.k, p.gamma())
}

pub(crate) fn triple_coefficients<T: Scalar>(t: &SubsetTriple) -> Vec<T> {
    let n = t.n();
    let mut out = vec![T::zero(); 3 * n];
    for (role, s) in [(Role::Alpha, &t.i), (Role::Beta, &t.j), (Role::Gamma, &t.k)] {
        for &e in s.elements() {
            out[role.offset(n) + e - 1] = T::one();
        }
    }
    out
}

/// All Horn triples `(I, J, K)` with `1 ≤ r ≤ n − 1` and `c_{IJ}^{K^∨} ≥ 1`
/// (exactly `1` when `facets_only`), ordered by `r` then lexicographically.
pub fn enumerate_inequalities(n: usize, facets_only: bool) -> Vec<HornInequality> {
    let mut out = Vec::new();
    for r in 1..n {
        let subs = subsets(n, r);
        let dim = r * (n - r);
        let codims: Vec<usize> = subs.iter().map(SubsetIndex::codimension).collect();
        let pairs: Vec<(usize, usize)> = (0..subs.len())
            .flat_map(|a| (0..subs.len()).map(move |b| (a, b)))
            .collect();
        let blocks: Vec<Vec<HornInequality>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let mut block = Vec::new();
                if codims[a] + codims[b] > dim {
                    return block;
                }
                for (c, k) in subs.iter().enumerate() {
                    if codims[a] + codims[b] + codims[c] != dim {
                        continue;
                    }
                    let coefficient =
                        triple_intersection(&subs[a], &subs[b], k).expect("shared shape");
                    let keep = if facets_only {
                        coefficient.is_one()
                    } else {
                        !coefficient.is_zero()
                    };
                    if keep {
                        block.push(HornInequality {
                            triple: SubsetTriple {
                                i: subs[a].clone(),
                                j: subs[b].clone(),
                                k: k.clone(),
                            },
                            coefficient,
                            status: FacetStatus::Unclassified,
                        });
                    }
                }
                block
            })
            .collect();
        out.extend(blocks.into_iter().flatten());
    }
    out
}

/// The inequality system of `Δ(n)` together with its ambient size.
#[derive(Clone, Debug, PartialEq)]
pub struct HornSystem {
    n: usize,
    inequalities: Vec<HornInequality>,
}

impl HornSystem {
    /// Coefficient-one inequalities only.
    pub fn facets(n: usize) -> Self {
        HornSystem {
            n,
            inequalities: enumerate_inequalities(n, true),
        }
    }

    /// Every inequality with nonzero coefficient.
    pub fn full(n: usize) -> Self {
        HornSystem {
            n,
            inequalities: enumerate_inequalities(n, false),
        }
    }

    pub fn from_inequalities(n: usize, inequalities: Vec<HornInequality>) -> Self {
        HornSystem { n, inequalities }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inequalities(&self) -> &[HornInequality] {
        &self.inequalities
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }
}

/// `x_i ≥ x_{i+1}` for the spectrum `role`; `index` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChamberConstraint {
    pub role: Role,
    pub index: usize,
}

impl ChamberConstraint {
    pub fn gap<T: Scalar>(&self, p: &SpectrumPoint<T>) -> T {
        let xs = p.component(self.role);
        xs[self.index].clone() - xs[self.index + 1].clone()
    }

    /// Coefficients of `x_i − x_{i+1}` over `α ‖ β ‖ γ`.
    pub fn coefficients<T: Scalar>(&self, n: usize) -> Vec<T> {
        let mut out = vec![T::zero(); 3 * n];
        let base = self.role.offset(n) + self.index;
        out[base] = T::one();
        out[base + 1] = -T::one();
        out
    }
}

impl fmt::Display for ChamberConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.role.name();
        write!(f, "{name}_{} >= {name}_{}", self.index + 1, self.index + 2)
    }
}

/// The `3(n − 1)` walls of `E(n)^+`: all α walls, then β, then γ.
pub fn chamber_constraints(n: usize) -> Vec<ChamberConstraint> {
    Role::ALL
        .iter()
        .flat_map(|&role| {
            (0..n.saturating_sub(1)).map(move |index| ChamberConstraint { role, index })
        })
        .collect()
}

/// Why a point failed the membership test.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<T> {
    Chamber { wall: ChamberConstraint, gap: T },
    Trace { trace: T },
    Inequality { triple: SubsetTriple, value: T },
}

impl<T: Scalar> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Chamber { wall, gap } => {
                write!(f, "chamber {wall} violated (gap {})", gap.render())
            }
            Violation::Trace { trace } => write!(f, "trace {} is not zero", trace.render()),
            Violation::Inequality { triple, value } => {
                write!(f, "{triple} (value {})", value.render())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<T> {
    Member,
    NonMember(Violation<T>),
}

impl<T> Verdict<T> {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }
}

/// Tests `p ∈ Δ(n)` against `system`, reporting the first violated constraint
/// (chamber walls, then the trace, then inequalities in system order).
pub fn is_member<T: Scalar>(
    p: &SpectrumPoint<T>,
    system: &HornSystem,
    tol: &Tolerance<T>,
) -> Result<Verdict<T>, HornError> {
    if p.n() != system.n() {
        return Err(HornError::LengthMismatch {
            expected: system.n(),
            found: p.n(),
        });
    }
    for wall in chamber_constraints(p.n()) {
        let gap = wall.gap(p);
        if !le_tol(&-gap.clone(), &tol.slack) {
            return Ok(Verdict::NonMember(Violation::Chamber { wall, gap }));
        }
    }
    let trace = p.trace();
    if !near_zero(&trace, &tol.trace) {
        return Ok(Verdict::NonMember(Violation::Trace { trace }));
    }
    for ineq in system.inequalities() {
        let value = ineq.evaluate(p);
        if !le_tol(&value, &tol.slack) {
            return Ok(Verdict::NonMember(Violation::Inequality {
                triple: ineq.triple.clone(),
                value,
            }));
        }
    }
    Ok(Verdict::Member)
}

/// Largest value of any system inequality at `p` (how far `p` is from violating).
pub fn max_inequality_value<T: Scalar>(p: &SpectrumPoint<T>, system: &HornSystem) -> Option<T> {
    system
        .inequalities()
        .iter()
        .map(|ineq| ineq.evaluate(p))
        .fold(None, |acc: Option<T>, v| match acc {
            Some(m) if m >= v => Some(m),
            _ => Some(v),
        })
}

/// LP facet test result: the optimal common slack and a point attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetReport {
    pub status: FacetStatus,
    /// Optimal `t` in `max t` s.t. every other constraint holds with slack `≥ t`.
    pub margin: BigRational,
    pub witness: SpectrumPoint<BigRational>,
}

/// Maximizes the common slack `t` of `strict` forms (each `g·x + t ≤ 0`) over
/// points with `target·x = 0`, zero trace, `weak` forms `≤ 0`, and
/// `|x_c| ≤ 1`, `t ≤ 1`.
fn max_common_slack(
    n: usize,
    target: Vec<BigRational>,
    strict: impl Iterator<Item = Vec<BigRational>>,
    weak: impl Iterator<Item = Vec<BigRational>>,
) -> Result<(BigRational, SpectrumPoint<BigRational>), HornError> {
    let dim = 3 * n;
    let mut lp = InequalityLp::new(dim + 1);
    let mut objective = vec![BigRational::zero(); dim + 1];
    objective[dim] = BigRational::one();
    lp.maximize(objective)?;
    let with_t = |mut coeffs: Vec<BigRational>, t: BigRational| {
        coeffs.push(t);
        coeffs
    };
    lp.add_eq(with_t(target, BigRational::zero()), BigRational::zero())?;
    lp.add_eq(
        with_t(vec![BigRational::one(); dim], BigRational::zero()),
        BigRational::zero(),
    )?;
    for g in strict {
        lp.add_le(with_t(g, BigRational::one()), BigRational::zero())?;
    }
    for g in weak {
        lp.add_le(with_t(g, BigRational::zero()), BigRational::zero())?;
    }
    for c in 0..=dim {
        let mut e = vec![BigRational::zero(); dim + 1];
        e[c] = BigRational::one();
        lp.add_le(e.clone(), BigRational::one())?;
        if c < dim {
            e[c] = -BigRational::one();
            lp.add_le(e, BigRational::one())?;
        }
    }
    let sol = lp.solve()?;
    let witness = SpectrumPoint::from_coords(&sol.point[..dim])?;
    Ok((sol.value, witness))
}

fn negated(v: Vec<BigRational>) -> Vec<BigRational> {
    v.into_iter().map(|x| -x).collect()
}

/// Decides whether `target` cuts a facet of `Δ(n)` meeting the open chamber:
/// `facet` iff some point has `target = 0` while every other inequality of
/// `system` and every chamber wall holds strictly.
pub fn classify_facet(
    target: &HornInequality,
    system: &HornSystem,
) -> Result<FacetReport, HornError> {
    let n = system.n();
    if target.n() != n {
        return Err(HornError::LengthMismatch {
            expected: n,
            found: target.n(),
        });
    }
    let others = system
        .inequalities()
        .iter()
        .filter(|ineq| ineq.triple != target.triple)
        .map(|ineq| ineq.coefficients());
    let walls = chamber_constraints(n)
        .into_iter()
        .map(move |w| negated(w.coefficients(n)));
    let (margin, witness) = max_common_slack(
        n,
        target.coefficients(),
        others.chain(walls),
        std::iter::empty(),
    )?;
    Ok(FacetReport {
        status: if margin.is_positive() {
            FacetStatus::Facet
        } else {
            FacetStatus::Redundant
        },
        margin,
        witness,
    })
}

/// Same test for a chamber wall `x_i = x_{i+1}`: `facet` iff some member of
/// `Δ(n)` lies on the wall with every Horn inequality and other wall strict.
pub fn classify_chamber_wall(
    wall: ChamberConstraint,
    system: &HornSystem,
) -> Result<FacetReport, HornError> {
    let n = system.n();
    let others = system.inequalities().iter().map(|ineq| ineq.coefficients());
    let walls = chamber_constraints(n)
        .into_iter()
        .filter(move |w| *w != wall)
        .map(move |w| negated(w.coefficients(n)));
    let (margin, witness) = max_common_slack(
        n,
        wall.coefficients(n),
        others.chain(walls),
        std::iter::empty(),
    )?;
    Ok(FacetReport {
        status: if margin.is_positive() {
            FacetStatus::Facet
        } else {
            FacetStatus::Redundant
        },
        margin,
        witness,
    })
}

/// Looks for a member of `Δ(n)` on the wall `x_i = x_{i+1}` away from the apex:
/// maximizes the slack of the other walls while the Horn inequalities hold
/// weakly. A positive margin means the wall is active at a nonzero member
/// point with every other wall strict.
pub fn chamber_wall_activity(
    wall: ChamberConstraint,
    system: &HornSystem,
) -> Result<FacetReport, HornError> {
    let n = system.n();
    let walls = chamber_constraints(n)
        .into_iter()
        .filter(move |w| *w != wall)
        .map(move |w| negated(w.coefficients(n)));
    let horn = system.inequalities().iter().map(|ineq| ineq.coefficients());
    let (margin, witness) = max_common_slack(n, wall.coefficients(n), walls, horn)?;
    Ok(FacetReport {
        status: if margin.is_positive() {
            FacetStatus::Facet
        } else {
            FacetStatus::Redundant
        },
        margin,
        witness,
    })
}

/// Classifies every inequality of `system` in place.
pub fn classify_all(system: &HornSystem) -> Result<Vec<HornInequality>, HornError> {
    system
        .inequalities()
        .par_iter()
        .map(|ineq| {
            let report = classify_facet(ineq, system)?;
            Ok(HornInequality {
                status: report.status,
                ..ineq.clone()
            })
        })
        .collect()
}
