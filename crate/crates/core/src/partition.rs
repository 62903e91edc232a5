//! Partitions, Schubert index subsets, and the bijection between them.
//!
//! A partition `λ` with at most `a` parts inside the `a × (n − a)` box
//! corresponds to the `a`-subset `{n − a + i − λ_i : i = 1..a}` of `{1..n}`.
//! The partition weight is the codimension of the Schubert class.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("partition {partition} does not fit in the {rows}x{cols} box")]
    BoxViolation {
        partition: Partition,
        rows: usize,
        cols: usize,
    },
    #[error("invalid subset {elements:?} of {{1..{n}}}")]
    InvalidSubset { n: usize, elements: Vec<usize> },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of nonnegative integers, stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts padded input; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn scale(&self, factor: usize) -> Result<Self, PartitionError> {
        if factor == 0 {
            return Err(PartitionError::ZeroScale);
        }
        Ok(Partition(self.0.iter().map(|p| p * factor).collect()))
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let cols = self.first();
        let parts = (0..cols)
            .map(|c| self.0.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition(parts)
    }

    /// Diagram containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// Complement inside the `rows × cols` box, read backwards:
    /// `(cols − λ_rows, …, cols − λ_1)`.
    pub fn box_complement(&self, rows: usize, cols: usize) -> Result<Self, PartitionError> {
        self.check_box(rows, cols)?;
        Partition::new((0..rows).rev().map(|i| cols - self.part(i)).collect())
    }

    /// `{n − a + i − λ_i : i = 1..a}`.
    pub fn to_subset(&self, a: usize, n: usize) -> Result<SubsetIndex, PartitionError> {
        if a == 0 || a > n {
            return Err(PartitionError::BoxViolation {
                partition: self.clone(),
                rows: a,
                cols: n.saturating_sub(a),
            });
        }
        self.check_box(a, n - a)?;
        let elements = (1..=a).map(|i| n - a + i - self.part(i - 1)).collect();
        SubsetIndex::new(n, elements)
    }

    /// Inverse of [`Partition::to_subset`], with `a = |s|` and `n` taken from `s`.
    pub fn from_subset(s: &SubsetIndex) -> Self {
        let a = s.len();
        let n = s.n();
        let parts = s
            .elements()
            .iter()
            .enumerate()
            .map(|(idx, &e)| n - a + (idx + 1) - e)
            .collect();
        Partition::new(parts).expect("subset elements increase strictly")
    }

    fn check_box(&self, rows: usize, cols: usize) -> Result<(), PartitionError> {
        if self.fits_in_box(rows, cols) {
            Ok(())
        } else {
            Err(PartitionError::BoxViolation {
                partition: self.clone(),
                rows,
                cols,
            })
        }
    }
}

/// Smallest ambient size `n = a + max(λ₁, μ₁, ν₁)` for which all three
/// partitions fit in the `a × (n − a)` box.
pub fn minimal_ambient(a: usize, partitions: &[&Partition]) -> usize {
    a + partitions.iter().map(|p| p.first()).max().unwrap_or(0)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// `"2,1"`; the empty partition is `""`, `"0"` or `"()"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `weight` with at most `max_parts` parts, each at most `max_part`,
/// in reverse lexicographic order.
pub fn partitions_of(weight: usize, max_parts: usize, max_part: usize) -> Vec<Partition> {
    fn rec(
        remaining: usize,
        slots: usize,
        cap: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        if slots == 0 || cap * slots < remaining {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            current.push(p);
            rec(remaining - p, slots - 1, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions with weight at most `max_weight` and at most `max_parts` parts,
/// ordered by weight.
pub fn partitions_up_to(max_weight: usize, max_parts: usize) -> Vec<Partition> {
    (0..=max_weight)
        .flat_map(|w| partitions_of(w, max_parts, w))
        .collect()
}

/// All partitions fitting in the `rows × cols` box.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    (0..=rows * cols)
        .flat_map(|w| partitions_of(w, rows, cols))
        .collect()
}

/// An `r`-element subset of `{1, …, n}`, stored increasing and 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    elements: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self, PartitionError> {
        let valid = !elements.is_empty()
            && elements.len() <= n
            && elements.windows(2).all(|w| w[0] < w[1])
            && elements.iter().all(|&e| (1..=n).contains(&e));
        if !valid {
            return Err(PartitionError::InvalidSubset { n, elements });
        }
        Ok(SubsetIndex { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cardinality `r`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    /// `i ∈ dual ⇔ n + 1 − i ∈ self`.
    pub fn dual(&self) -> Self {
        let elements = self
            .elements
            .iter()
            .rev()
            .map(|&e| self.n + 1 - e)
            .collect();
        SubsetIndex {
            n: self.n,
            elements,
        }
    }

    /// Complement in `{1..n}` (possibly empty, so returned as a plain list).
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.contains(i)).collect()
    }

    /// Codimension of the Schubert class, i.e. the weight of the partition.
    pub fn codimension(&self) -> usize {
        let a = self.len();
        self.elements
            .iter()
            .enumerate()
            .map(|(idx, &e)| self.n - a + idx + 1 - e)
            .sum()
    }

    /// Renders only the braces part, e.g. `{1,3}`.
    pub fn braces(&self) -> String {
        let text: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        format!("{{{}}}", text.join(","))
    }

    /// Parses `{1,3}` given the ambient size.
    pub fn parse_braces(text: &str, n: usize) -> Result<Self, PartitionError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| PartitionError::Parse(text.to_string()))?;
        let elements = inner
            .split(',')
            .map(|e| e.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(text.to_string()))?;
        SubsetIndex::new(n, elements)
    }
}

/// All `r`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<SubsetIndex> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<SubsetIndex>) {
        if cur.len() == r {
            out.push(SubsetIndex {
                n,
                elements: cur.clone(),
            });
            return;
        }
        for e in start..=n {
            if n - e + 1 < r - cur.len() {
                break;
            }
            cur.push(e);
            rec(e + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && r <= n {
        rec(1, n, r, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@n={}", self.braces(), self.n)
    }
}

impl FromStr for SubsetIndex {
    type Err = PartitionError;

    /// `"{1,3}@n=4"`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (set, n) = s
            .trim()
            .split_once("@n=")
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        SubsetIndex::parse_braces(set, n)
    }
}

/// Three subsets of `{1..n}` with a common cardinality, written `{I}{J}{K}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetTriple {
    pub i: SubsetIndex,
    pub j: SubsetIndex,
    pub k: SubsetIndex,
}

impl SubsetTriple {
    pub fn new(i: SubsetIndex, j: SubsetIndex, k: SubsetIndex) -> Result<Self, PartitionError> {
        let shape = (i.n(), i.len());
        if (j.n(), j.len()) != shape || (k.n(), k.len()) != shape {
            return Err(PartitionError::Parse(format!(
                "mismatched triple {}{}{}",
                i.braces(),
                j.braces(),
                k.braces()
            )));
        }
        Ok(SubsetTriple { i, j, k })
    }

    pub fn r(&self) -> usize {
        self.i.len()
    }

    pub fn n(&self) -> usize {
        self.i.n()
    }

    /// Total codimension of the three Schubert classes.
    pub fn codimension(&self) -> usize {
        self.i.codimension() + self.j.codimension() + self.k.codimension()
    }

    /// Parses `{I}{J}{K}` in ambient size `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionError> {
        let t = text.trim();
        let pieces: Vec<&str> = t
            .split('}')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .collect();
        if pieces.len() != 3 {
            return Err(PartitionError::Parse(text.to_string()));
        }
        let parse_one = |piece: &str| SubsetIndex::parse_braces(&format!("{piece}}}"), n);
        SubsetTriple::new(
            parse_one(pieces[0])?,
            parse_one(pieces[1])?,
            parse_one(pieces[2])?,
        )
    }
}

impl fmt::Display for SubsetTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.i.braces(),
            self.j.braces(),
            self.k.braces()
        )
    }
}
