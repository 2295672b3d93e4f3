//! Cyclic quotient singularities `1/r(b_1, ..., b_s)` and their
//! canonical/terminal classification: the direct criterion (minimum of
//! the age sums over the group) plus cheap shortcut certificates that
//! avoid the loop when `r` is astronomically large.

use rug::ops::RemRounding;
use rug::{Complete, Integer};
use thiserror::Error;

/// Default cap on `r` for the direct loop.
pub const DEFAULT_REID_TAI_BUDGET: u64 = 10_000_000;

/// `1/r(b_1, ..., b_s)` with every stored weight in `[1, r-1]`.
/// `trivial_rank` counts weights that reduced to zero: the quotient
/// splits off a trivially-acted factor of that dimension, which does
/// not affect the classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSingularity {
    r: Integer,
    weights: Vec<Integer>,
    trivial_rank: usize,
}

/// Reduces `raw_weights` mod `r`, dropping zeros into `trivial_rank`.
pub fn normalize(r: Integer, raw_weights: &[Integer]) -> QuotientSingularity {
    assert!(r >= 1u32, "group order must be positive");
    let mut weights = Vec::with_capacity(raw_weights.len());
    let mut trivial_rank = 0;
    for b in raw_weights {
        let b = b.rem_euc(&r).complete();
        if b.is_zero() {
            trivial_rank += 1;
        } else {
            weights.push(b);
        }
    }
    QuotientSingularity {
        r,
        weights,
        trivial_rank,
    }
}

impl QuotientSingularity {
    pub fn order(&self) -> &Integer {
        &self.r
    }

    pub fn weights(&self) -> &[Integer] {
        &self.weights
    }

    pub fn trivial_rank(&self) -> usize {
        self.trivial_rank
    }

    /// Records `k` extra trivially-acted directions (transverse slice
    /// bookkeeping); the classification is unaffected.
    pub fn augment_trivial_rank(&mut self, k: usize) {
        self.trivial_rank += k;
    }

    pub fn is_smooth(&self) -> bool {
        self.r == 1u32
    }

    /// Well-formed presentation: no non-trivial subgroup acts as
    /// quasi-reflections, i.e. `gcd(r, b_1, ..., b_s)` with any single
    /// weight omitted is 1 for every choice of omitted weight.
    pub fn is_well_formed(&self) -> bool {
        if self.r == 1u32 {
            return true;
        }
        let s = self.weights.len();
        if s == 0 {
            return false;
        }
        // prefix[j] = gcd(r, b_0..b_{j-1}); suffix[j] = gcd(r, b_j..).
        let mut prefix = vec![self.r.clone(); s + 1];
        for j in 0..s {
            prefix[j + 1] = prefix[j].clone().gcd(&self.weights[j]);
        }
        let mut suffix = vec![self.r.clone(); s + 1];
        for j in (0..s).rev() {
            suffix[j] = suffix[j + 1].clone().gcd(&self.weights[j]);
        }
        (0..s).all(|j| prefix[j].clone().gcd(&suffix[j + 1]) == 1u32)
    }
}

impl std::fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_smooth() {
            return write!(f, "smooth");
        }
        write!(f, "1/{}(", self.r)?;
        for (i, b) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")?;
        if self.trivial_rank > 0 {
            write!(f, "xA^{}", self.trivial_rank)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingClass {
    Terminal,
    CanonicalNotTerminal,
    /// Canonical proven; terminality unresolved.
    CanonicalAtLeast,
    NotCanonical,
    /// Budget exceeded and no certificate applies.
    Unknown,
}

impl SingClass {
    pub fn is_canonical(self) -> bool {
        matches!(
            self,
            SingClass::Terminal | SingClass::CanonicalNotTerminal | SingClass::CanonicalAtLeast
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SingClass::Terminal => "terminal",
            SingClass::CanonicalNotTerminal => "canonical-not-terminal",
            SingClass::CanonicalAtLeast => "canonical-at-least",
            SingClass::NotCanonical => "not-canonical",
            SingClass::Unknown => "unknown",
        }
    }
}

/// Machine-checkable evidence for a verdict; see the `check_*`
/// functions for the independent verifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `r = 1`.
    SmoothPoint,
    /// Exhaustive minimum over the group.
    DirectReidTai,
    /// A sub-multiset of the weights summing to `0 mod r` whose values
    /// together with `r` have gcd 1: proves canonical (at least).
    WeightSubset { subset: Vec<Integer> },
    /// The full weight sum is `0 mod r`: proves canonical (at least).
    GorensteinSum,
    /// Canonical evidence promoted to terminal because the ambient
    /// hypersurface has canonical class of degree +1 or -1.
    Index1Promotion { base: Box<Certificate> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SmoothPoint => "smooth-point",
            Certificate::DirectReidTai => "direct-reid-tai",
            Certificate::WeightSubset { .. } => "weight-subset",
            Certificate::GorensteinSum => "gorenstein-sum",
            Certificate::Index1Promotion { .. } => "index1-promotion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub class: SingClass,
    pub certificate: Option<Certificate>,
}

/// Degree of the canonical class of the ambient hypersurface,
/// `d - (a_0 + ... + a_N)`; degree +1 or -1 lets canonical imply
/// terminal for its singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionContext {
    pub adjunction_degree: Integer,
}

impl AdjunctionContext {
    pub fn new(adjunction_degree: Integer) -> Self {
        AdjunctionContext { adjunction_degree }
    }

    pub fn index_one(&self) -> bool {
        self.adjunction_degree == 1u32 || self.adjunction_degree == -1i32
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingError {
    #[error("ill-formed quotient presentation {presentation}: the criterion requires a well-formed presentation")]
    IllFormedPresentation { presentation: String },
}

/// The age sum `sum_j (i * b_j mod r)` for one group element `i`.
pub fn reid_tai_sum(r: u64, weights: &[u64], i: u64) -> u64 {
    weights
        .iter()
        .map(|&b| ((i as u128 * b as u128) % r as u128) as u64)
        .sum()
}

/// Exhaustive classification: the singularity is canonical iff the age
/// sum is at least `r` for every `i = 1..r-1`, terminal iff strictly
/// greater for every `i`.
///
/// Returns `Unknown` when `r` exceeds `budget`; errors on ill-formed
/// presentations.
pub fn reid_tai_direct(
    sing: &QuotientSingularity,
    budget: u64,
) -> Result<SingularityVerdict, SingError> {
    if sing.is_smooth() {
        return Ok(SingularityVerdict {
            class: SingClass::Terminal,
            certificate: Some(Certificate::SmoothPoint),
        });
    }
    if !sing.is_well_formed() {
        return Err(SingError::IllFormedPresentation {
            presentation: sing.to_string(),
        });
    }
    let Some(r) = sing.r.to_u64().filter(|&r| r <= budget) else {
        return Ok(SingularityVerdict {
            class: SingClass::Unknown,
            certificate: None,
        });
    };
    let w: Vec<u64> = sing.weights.iter().map(|b| b.to_u64().unwrap()).collect();
    let r128 = r as u128;
    let mut equal_seen = false;
    for i in 1..r {
        let mut sum = 0u64;
        for &b in &w {
            sum += ((i as u128 * b as u128) % r128) as u64;
            if sum > r {
                break;
            }
        }
        if sum < r {
            return Ok(SingularityVerdict {
                class: SingClass::NotCanonical,
                certificate: Some(Certificate::DirectReidTai),
            });
        }
        equal_seen = equal_seen || sum == r;
    }
    let class = if equal_seen {
        SingClass::CanonicalNotTerminal
    } else {
        SingClass::Terminal
    };
    Ok(SingularityVerdict {
        class,
        certificate: Some(Certificate::DirectReidTai),
    })
}

/// Verifies a [`Certificate::WeightSubset`] claim.
pub fn check_weight_subset(sing: &QuotientSingularity, subset: &[Integer]) -> bool {
    if subset.is_empty() || !sing.is_well_formed() {
        return false;
    }
    // The subset must be a sub-multiset of the stored weights.
    let mut pool = sing.weights.to_vec();
    for v in subset {
        let Some(pos) = pool.iter().position(|w| w == v) else {
            return false;
        };
        pool.swap_remove(pos);
    }
    let sum = Integer::sum(subset.iter()).complete();
    if !sum.is_divisible(&sing.r) {
        return false;
    }
    let mut g = sing.r.clone();
    for v in subset {
        g.gcd_mut(v);
    }
    g == 1u32
}

/// Verifies a [`Certificate::GorensteinSum`] claim.
pub fn check_gorenstein_sum(sing: &QuotientSingularity) -> bool {
    sing.is_well_formed()
        && Integer::sum(sing.weights.iter())
            .complete()
            .is_divisible(&sing.r)
}

/// Cap on subset size in the certificate search; every use of the
/// subset trick in the source constructions needs at most four weights
/// (or the full list, or all but one).
const SUBSET_SEARCH_CAP: usize = 4;

/// Searches for a canonical-at-least certificate: a non-empty weight
/// subset with sum `0 mod r` and `gcd(subset, r) = 1`. Search order:
/// singletons, pairs, the full list, all-but-one, then subsets of size
/// up to [`SUBSET_SEARCH_CAP`].
pub fn weight_subset_certificate(sing: &QuotientSingularity) -> Option<Certificate> {
    if sing.is_smooth() || !sing.is_well_formed() {
        return None;
    }
    let w = &sing.weights;
    let s = w.len();
    let admissible = |idx: &[usize]| -> bool {
        let sum = Integer::sum(idx.iter().map(|&j| &w[j])).complete();
        if !sum.is_divisible(&sing.r) {
            return false;
        }
        let mut g = sing.r.clone();
        for &j in idx {
            g.gcd_mut(&w[j]);
        }
        g == 1u32
    };
    let found = |idx: &[usize]| Certificate::WeightSubset {
        subset: idx.iter().map(|&j| w[j].clone()).collect(),
    };
    for j in 0..s {
        if admissible(&[j]) {
            return Some(found(&[j]));
        }
    }
    let mut stack: Vec<usize> = Vec::new();
    for size in [2] {
        if let Some(idx) = first_subset(s, size, &mut stack, &admissible) {
            return Some(found(&idx));
        }
    }
    let full: Vec<usize> = (0..s).collect();
    if admissible(&full) {
        return Some(found(&full));
    }
    if s > 1 {
        for skip in 0..s {
            let idx: Vec<usize> = (0..s).filter(|&j| j != skip).collect();
            if admissible(&idx) {
                return Some(found(&idx));
            }
        }
    }
    for size in 3..=SUBSET_SEARCH_CAP.min(s) {
        if let Some(idx) = first_subset(s, size, &mut stack, &admissible) {
            return Some(found(&idx));
        }
    }
    None
}

/// First size-`k` index subset (lexicographic) satisfying `pred`.
fn first_subset(
    s: usize,
    k: usize,
    stack: &mut Vec<usize>,
    pred: &impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    fn rec(
        s: usize,
        k: usize,
        start: usize,
        stack: &mut Vec<usize>,
        pred: &impl Fn(&[usize]) -> bool,
    ) -> bool {
        if stack.len() == k {
            return pred(stack);
        }
        for j in start..s {
            stack.push(j);
            if rec(s, k, j + 1, stack, pred) {
                return true;
            }
            stack.pop();
        }
        false
    }
    stack.clear();
    if k > s {
        return None;
    }
    if rec(s, k, 0, stack, pred) {
        Some(stack.clone())
    } else {
        None
    }
}

/// Tiered classification: smooth check, shortcut certificates
/// (re-verified before use, promoted to terminal under an index-one
/// ambient context, or confirmed exactly when the direct loop is
/// affordable), then the direct loop, then `Unknown`.
///
/// `budget = 0` disables the direct loop entirely.
pub fn classify(
    sing: &QuotientSingularity,
    context: Option<&AdjunctionContext>,
    budget: u64,
) -> Result<SingularityVerdict, SingError> {
    if sing.is_smooth() {
        return Ok(SingularityVerdict {
            class: SingClass::Terminal,
            certificate: Some(Certificate::SmoothPoint),
        });
    }
    if !sing.is_well_formed() {
        return Err(SingError::IllFormedPresentation {
            presentation: sing.to_string(),
        });
    }
    let direct_feasible = budget > 0 && sing.r.to_u64().is_some_and(|r| r <= budget);
    let promote = context.is_some_and(AdjunctionContext::index_one);
    let canonical_evidence = match weight_subset_certificate(sing) {
        Some(Certificate::WeightSubset { subset }) if check_weight_subset(sing, &subset) => {
            Some(Certificate::WeightSubset { subset })
        }
        _ if check_gorenstein_sum(sing) => Some(Certificate::GorensteinSum),
        _ => None,
    };
    if let Some(cert) = canonical_evidence {
        if promote {
            return Ok(SingularityVerdict {
                class: SingClass::Terminal,
                certificate: Some(Certificate::Index1Promotion {
                    base: Box::new(cert),
                }),
            });
        }
        if direct_feasible {
            return reid_tai_direct(sing, budget);
        }
        return Ok(SingularityVerdict {
            class: SingClass::CanonicalAtLeast,
            certificate: Some(cert),
        });
    }
    if direct_feasible {
        return reid_tai_direct(sing, budget);
    }
    Ok(SingularityVerdict {
        class: SingClass::Unknown,
        certificate: None,
    })
}
