//! Weighted projective spaces and quasi-smooth hypersurfaces:
//! well-formedness, quasi-smoothness, singular strata, adjunction,
//! exact volume, section counts, and the classification pipeline.
//!
//! "General hypersurface" semantics throughout: quasi-smoothness and
//! base-locus avoidance are decided for the generic member of the
//! linear system; no explicit polynomial is ever constructed.

use std::collections::HashSet;

use rug::{Complete, Integer, Rational};
use thiserror::Error;

use crate::exactmath::{Semigroup, SemigroupError};
use crate::singularities::{
    classify, normalize, AdjunctionContext, Certificate, QuotientSingularity, SingClass, SingError,
    SingularityVerdict,
};

/// Strata are enumerated by subset iteration; cap the weight count to
/// keep that bounded.
pub const MAX_WEIGHTS: usize = 21;

/// Cap for [`section_count`]'s dynamic programming.
pub const SECTION_COUNT_CAP: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Singularity(#[from] SingError),
    #[error("too many weights ({0}); subset enumeration is capped at {MAX_WEIGHTS}")]
    TooManyWeights(usize),
    #[error("weight system needs at least two positive weights")]
    InvalidWeights,
    #[error("degree must be positive")]
    InvalidDegree,
    #[error("section count argument {0} exceeds cap {SECTION_COUNT_CAP}")]
    SectionCapExceeded(Integer),
    #[error("base-locus stratum has no index j outside it with r | d - a_j; input is not quasi-smooth")]
    NoAdmissibleIndex,
    #[error("stratum is missed by the general hypersurface; no singularity on it")]
    StratumMissed,
}

/// Weights `a_0 >= a_1 >= ... >= a_N >= 1`, stored sorted descending
/// with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<Integer>,
}

impl WeightSystem {
    pub fn new(mut weights: Vec<Integer>) -> Result<Self, GeomError> {
        if weights.len() < 2 {
            return Err(GeomError::InvalidWeights);
        }
        if weights.iter().any(|a| *a < 1u32) {
            return Err(GeomError::InvalidWeights);
        }
        weights.sort_unstable_by(|x, y| y.cmp(x));
        Ok(WeightSystem { weights })
    }

    pub fn from_u64(weights: &[u64]) -> Result<Self, GeomError> {
        Self::new(weights.iter().map(|&a| Integer::from(a)).collect())
    }

    pub fn weights(&self) -> &[Integer] {
        &self.weights
    }

    /// Top index N (one less than the number of weights).
    pub fn top_index(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn sum(&self) -> Integer {
        Integer::sum(self.weights.iter()).complete()
    }

    pub fn product(&self) -> Integer {
        Integer::product(self.weights.iter()).complete()
    }

    /// Distinct weight values (descending) with their multiplicities.
    fn support(&self) -> Vec<(Integer, usize)> {
        let mut out: Vec<(Integer, usize)> = Vec::new();
        for a in &self.weights {
            match out.last_mut() {
                Some((v, c)) if v == a => *c += 1,
                _ => out.push((a.clone(), 1)),
            }
        }
        out
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P(")?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A general degree-`d` hypersurface in the weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    pub space: WeightSystem,
    pub degree: Integer,
}

impl Hypersurface {
    pub fn new(space: WeightSystem, degree: Integer) -> Result<Self, GeomError> {
        if degree < 1u32 {
            return Err(GeomError::InvalidDegree);
        }
        Ok(Hypersurface { space, degree })
    }

    pub fn from_u64(weights: &[u64], degree: u64) -> Result<Self, GeomError> {
        Hypersurface::new(WeightSystem::from_u64(weights)?, Integer::from(degree))
    }

    /// dim X = N - 1.
    pub fn dimension(&self) -> usize {
        self.space.top_index() - 1
    }

    /// Degree of K_X: d - sum of weights.
    pub fn adjunction_degree(&self) -> Integer {
        self.degree.clone() - self.space.sum()
    }
}

impl std::fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "X_{} in {}", self.degree, self.space)
    }
}

/// True iff every leave-one-out gcd of the weights is 1.
pub fn wps_well_formed(space: &WeightSystem) -> bool {
    let w = space.weights();
    let n = w.len();
    let mut prefix = vec![Integer::from(0); n + 1];
    for j in 0..n {
        prefix[j + 1] = prefix[j].clone().gcd(&w[j]);
    }
    let mut suffix = vec![Integer::from(0); n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1].clone().gcd(&w[j]);
    }
    (0..n).all(|j| prefix[j].clone().gcd(&suffix[j + 1]) == 1u32)
}

/// `1 / (a_0 ... a_N)`.
pub fn wps_volume(space: &WeightSystem) -> Rational {
    Rational::from((Integer::from(1), space.product()))
}

/// `d / (a_0 ... a_N)`.
pub fn hyp_volume(h: &Hypersurface) -> Rational {
    Rational::from((h.degree.clone(), h.space.product()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyClass {
    /// K_X ample of degree k > 0.
    GeneralType(Integer),
    /// K_X trivial.
    CalabiYau,
    /// -K_X ample of degree k > 0.
    Fano(Integer),
}

impl VarietyClass {
    pub fn as_str(&self) -> String {
        match self {
            VarietyClass::GeneralType(k) => format!("general-type({k})"),
            VarietyClass::CalabiYau => "calabi-yau".to_string(),
            VarietyClass::Fano(k) => format!("fano({k})"),
        }
    }
}

/// Classifies by the sign of `deg K_X = d - sum a_j`.
pub fn adjunction_class(h: &Hypersurface) -> VarietyClass {
    let k = h.adjunction_degree();
    match k.cmp0() {
        std::cmp::Ordering::Equal => VarietyClass::CalabiYau,
        std::cmp::Ordering::Greater => VarietyClass::GeneralType(k),
        std::cmp::Ordering::Less => VarietyClass::Fano(-k),
    }
}

/// Two-branch quasi-smoothness criterion for the general member:
/// either some `a_i = d` (linear cone), or for every non-empty index
/// set `I`, `d` is representable by the weights in `I` or at least
/// `|I|` outside indices `j` have `d - a_j` representable.
///
/// Representability depends only on the set of distinct values in `I`,
/// and the outside-index count is weakest when `I` is the full preimage
/// of its value set, so it suffices to check one `I` per value subset.
pub fn quasi_smooth_general(h: &Hypersurface) -> Result<bool, GeomError> {
    let support = h.space.support();
    if support.len() > MAX_WEIGHTS {
        return Err(GeomError::TooManyWeights(h.space.weights().len()));
    }
    if support.iter().any(|(v, _)| *v == h.degree) {
        return Ok(true);
    }
    let k = support.len();
    for mask in 1u32..(1 << k) {
        let values: Vec<Integer> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i].0.clone())
            .collect();
        let sg = Semigroup::new(values)?;
        if sg.contains(&h.degree)? {
            continue;
        }
        let inside: usize = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i].1)
            .sum();
        let mut outside_ok = 0usize;
        for i in 0..k {
            if mask & (1 << i) != 0 {
                continue;
            }
            let shifted = (&h.degree - &support[i].0).complete();
            if sg.contains(&shifted)? {
                outside_ok += support[i].1;
            }
        }
        if outside_ok < inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which rule established hypersurface well-formedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WellFormedRule {
    /// Quasi-smooth of dimension >= 3 with d != a_j for all j.
    HighDimension,
    /// Direct check: every singular stratum meets X in codimension >= 2.
    DirectCodimension,
    /// The ambient space itself is ill-formed.
    AmbientIllFormed,
}

impl WellFormedRule {
    pub fn as_str(self) -> &'static str {
        match self {
            WellFormedRule::HighDimension => "dim>=3-rule",
            WellFormedRule::DirectCodimension => "direct-codimension",
            WellFormedRule::AmbientIllFormed => "ambient-ill-formed",
        }
    }
}

/// Well-formedness of the hypersurface (assumed quasi-smooth).
///
/// Dimension >= 3 with `d != a_j` is automatic; low dimensions check
/// directly that `X` meets every singular stratum in codimension >= 2.
pub fn hyp_well_formed(h: &Hypersurface) -> Result<(bool, WellFormedRule), GeomError> {
    if !wps_well_formed(&h.space) {
        return Ok((false, WellFormedRule::AmbientIllFormed));
    }
    let no_linear = h.space.weights().iter().all(|a| *a != h.degree);
    if h.dimension() >= 3 && no_linear {
        return Ok((true, WellFormedRule::HighDimension));
    }
    // Direct check over value-subset strata: a non-base-locus stratum
    // meets X in dimension |I| - 2 (empty if |I| = 1), a base-locus
    // stratum is contained in X with dimension |I| - 1. All must be at
    // most dim X - 2 = N - 3.
    let support = h.space.support();
    if support.len() > MAX_WEIGHTS {
        return Err(GeomError::TooManyWeights(h.space.weights().len()));
    }
    let n_top = h.space.top_index();
    let k = support.len();
    for mask in 1u32..(1 << k) {
        let values: Vec<Integer> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i].0.clone())
            .collect();
        let mut r = values[0].clone();
        for v in &values[1..] {
            r.gcd_mut(v);
        }
        if r == 1u32 {
            continue;
        }
        let size: usize = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i].1)
            .sum();
        let in_base_locus = !Semigroup::new(values)?.contains(&h.degree)?;
        let meet_dim: i64 = if in_base_locus {
            size as i64 - 1
        } else if size >= 2 {
            size as i64 - 2
        } else {
            continue; // coordinate point missed by the general member
        };
        if meet_dim > n_top as i64 - 3 {
            return Ok((false, WellFormedRule::DirectCodimension));
        }
    }
    Ok((true, WellFormedRule::DirectCodimension))
}

/// A stratum of the singular locus of the ambient space that is
/// relevant to `X`: indices whose weights share a common factor `r`,
/// or whose coordinate subspace lies in the base locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    /// Index set I into the (descending) weight list; taken maximal
    /// for its set of weight values.
    pub indices: Vec<usize>,
    pub r: Integer,
    pub in_base_locus: bool,
}

impl Stratum {
    /// A one-point stratum not in the base locus is avoided by the
    /// general hypersurface (the pure power monomial is present).
    pub fn missed_by_general_member(&self) -> bool {
        !self.in_base_locus && self.indices.len() == 1
    }
}

/// Enumerates the singular strata relevant to `h`: value subsets with
/// gcd > 1, plus base-locus subsets. One representative per quotient
/// datum.
pub fn strata(h: &Hypersurface) -> Result<Vec<Stratum>, GeomError> {
    let support = h.space.support();
    if support.len() > MAX_WEIGHTS {
        return Err(GeomError::TooManyWeights(h.space.weights().len()));
    }
    let w = h.space.weights();
    let k = support.len();
    let mut out = Vec::new();
    let mut seen: HashSet<(Integer, bool, Vec<Integer>)> = HashSet::new();
    for mask in 1u32..(1 << k) {
        let values: Vec<Integer> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i].0.clone())
            .collect();
        let mut r = values[0].clone();
        for v in &values[1..] {
            r.gcd_mut(v);
        }
        let in_base_locus = !Semigroup::new(values.clone())?.contains(&h.degree)?;
        if r == 1u32 && !in_base_locus {
            continue;
        }
        let indices: Vec<usize> = (0..w.len()).filter(|&j| values.contains(&w[j])).collect();
        let outside: Vec<Integer> = (0..w.len())
            .filter(|&j| !values.contains(&w[j]))
            .map(|j| w[j].clone())
            .collect();
        if seen.insert((r.clone(), in_base_locus, outside)) {
            out.push(Stratum {
                indices,
                r,
                in_base_locus,
            });
        }
    }
    Ok(out)
}

/// The quotient singularity of `X` along a stratum.
///
/// Outside the base locus one inside direction is absorbed
/// transversally: type `1/r(a_i : i not in I)` with `|I| - 2` trivial
/// directions along the stratum. On the base locus, some outside index
/// `j` with `r | d - a_j` is consumed by the defining equation: type
/// `1/r(a_i : i not in I, i != j)` with `|I| - 1` trivial directions.
pub fn stratum_singularity(
    h: &Hypersurface,
    s: &Stratum,
) -> Result<QuotientSingularity, GeomError> {
    let mut all = stratum_singularity_choices(h, s)?;
    Ok(all.swap_remove(0))
}

/// All admissible presentations of the stratum singularity (one entry
/// unless the stratum is in the base locus with several admissible
/// `j`). Their verdicts must agree; callers in verification mode check
/// that.
pub fn stratum_singularity_choices(
    h: &Hypersurface,
    s: &Stratum,
) -> Result<Vec<QuotientSingularity>, GeomError> {
    let w = h.space.weights();
    let inside: HashSet<usize> = s.indices.iter().copied().collect();
    let outside: Vec<usize> = (0..w.len()).filter(|j| !inside.contains(j)).collect();
    if !s.in_base_locus {
        if s.missed_by_general_member() {
            return Err(GeomError::StratumMissed);
        }
        let raw: Vec<Integer> = outside.iter().map(|&j| w[j].clone()).collect();
        let mut sing = normalize(s.r.clone(), &raw);
        sing.augment_trivial_rank(s.indices.len() - 2);
        return Ok(vec![sing]);
    }
    let admissible: Vec<usize> = outside
        .iter()
        .copied()
        .filter(|&j| (&h.degree - &w[j]).complete().is_divisible(&s.r))
        .collect();
    if admissible.is_empty() {
        return Err(GeomError::NoAdmissibleIndex);
    }
    let mut out = Vec::with_capacity(admissible.len());
    for &drop in &admissible {
        let raw: Vec<Integer> = outside
            .iter()
            .copied()
            .filter(|&j| j != drop)
            .map(|j| w[j].clone())
            .collect();
        let mut sing = normalize(s.r.clone(), &raw);
        sing.augment_trivial_rank(s.indices.len() - 1);
        out.push(sing);
    }
    Ok(out)
}

/// Monomial count of weighted degree exactly `t` (0 for negative `t`).
fn monomial_count(space: &WeightSystem, t: &Integer) -> Result<Integer, GeomError> {
    if *t < 0u32 {
        return Ok(Integer::from(0));
    }
    let Some(t) = t.to_u64().filter(|&t| t <= SECTION_COUNT_CAP) else {
        return Err(GeomError::SectionCapExceeded(t.clone()));
    };
    let t = t as usize;
    let mut dp = vec![Integer::from(0); t + 1];
    dp[0] = Integer::from(1);
    for a in space.weights() {
        let Some(a) = a.to_u64().map(|a| a as usize).filter(|&a| a <= t) else {
            continue;
        };
        for v in a..=t {
            let prev = dp[v - a].clone();
            dp[v] += prev;
        }
    }
    Ok(dp.pop().unwrap())
}

/// `h^0` of the degree-`l` graded piece of the section ring of `X`:
/// monomials of degree `l` minus relations through the degree-`d`
/// equation.
pub fn section_count(h: &Hypersurface, l: &Integer) -> Result<Integer, GeomError> {
    let all = monomial_count(&h.space, l)?;
    let removed = monomial_count(&h.space, &(l - &h.degree).complete())?;
    Ok(all - removed)
}

/// Least `l >= 1` with a non-zero section: the bottom weight.
pub fn first_nonvanishing(h: &Hypersurface) -> Integer {
    let m = h.space.weights().last().unwrap().clone();
    debug_assert!(
        m.to_u64().map_or(true, |v| v > 10_000)
            || section_count(h, &m).map_or(true, |c| c >= 1u32),
        "bottom weight must carry a section"
    );
    m
}

/// One classified stratum in a report.
#[derive(Debug, Clone)]
pub struct StratumVerdict {
    pub stratum: Stratum,
    pub singularity: QuotientSingularity,
    pub verdict: SingularityVerdict,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub hypersurface: Hypersurface,
    pub well_formed: bool,
    pub well_formed_rule: WellFormedRule,
    pub quasi_smooth: bool,
    pub variety_class: VarietyClass,
    pub adjunction_degree: Integer,
    pub volume: Rational,
    pub first_nonvanishing: Integer,
    pub strata_verdicts: Vec<StratumVerdict>,
    pub overall: SingularityVerdict,
    pub notes: Vec<String>,
}

/// Full pipeline: well-formedness, quasi-smoothness, adjunction,
/// volume, bottom weight, per-stratum singularity verdicts, and the
/// aggregate verdict.
///
/// `budget` bounds the direct classification loop per stratum
/// (0 disables it; shortcut certificates still apply).
pub fn classify_hypersurface(h: &Hypersurface, budget: u64) -> Result<ClassificationReport, GeomError> {
    let quasi_smooth = quasi_smooth_general(h)?;
    let (well_formed, well_formed_rule) = hyp_well_formed(h)?;
    let variety_class = adjunction_class(h);
    let adjunction_degree = h.adjunction_degree();
    let volume = hyp_volume(h);
    let bottom = first_nonvanishing(h);
    let mut notes = Vec::new();

    if !well_formed || !quasi_smooth {
        notes.push(if !well_formed {
            "hypersurface is not well-formed; singularity analysis skipped".to_string()
        } else {
            "general member is not quasi-smooth; singularity analysis skipped".to_string()
        });
        return Ok(ClassificationReport {
            hypersurface: h.clone(),
            well_formed,
            well_formed_rule,
            quasi_smooth,
            variety_class,
            adjunction_degree,
            volume,
            first_nonvanishing: bottom,
            strata_verdicts: Vec::new(),
            overall: SingularityVerdict {
                class: SingClass::Unknown,
                certificate: None,
            },
            notes,
        });
    }

    let is_cy = adjunction_degree == 0u32;
    let context = AdjunctionContext::new(adjunction_degree.clone());
    let ctx = context.index_one().then_some(&context);

    let mut verdicts: Vec<StratumVerdict> = Vec::new();
    for s in strata(h)? {
        if s.missed_by_general_member() {
            continue;
        }
        let choices = stratum_singularity_choices(h, &s)?;
        let mut verdict: Option<SingularityVerdict> = None;
        for sing in &choices {
            let v = classify(sing, ctx, budget)?;
            match &verdict {
                None => verdict = Some(v),
                Some(prev) => {
                    // Base-locus type independence: every admissible
                    // choice must classify identically.
                    assert_eq!(
                        prev.class, v.class,
                        "admissible presentations disagree on {s:?}"
                    );
                }
            }
        }
        verdicts.push(StratumVerdict {
            singularity: choices.into_iter().next().unwrap(),
            stratum: s,
            verdict: verdict.unwrap(),
        });
    }

    // A stratum whose closure contains an already-classified smaller
    // stratum inherits: terminal (an open condition) transfers as is,
    // canonical evidence transfers as canonical-at-least.
    let mut inherited: Vec<(usize, SingClass)> = Vec::new();
    for (i, sv) in verdicts.iter().enumerate() {
        if !matches!(sv.verdict.class, SingClass::Unknown | SingClass::CanonicalAtLeast) {
            continue;
        }
        for other in &verdicts {
            if other.stratum.indices.len() >= sv.stratum.indices.len()
                || !other
                    .stratum
                    .indices
                    .iter()
                    .all(|j| sv.stratum.indices.contains(j))
            {
                continue;
            }
            match other.verdict.class {
                SingClass::Terminal => {
                    inherited.push((i, SingClass::Terminal));
                    break;
                }
                SingClass::CanonicalNotTerminal | SingClass::CanonicalAtLeast
                    if sv.verdict.class == SingClass::Unknown =>
                {
                    inherited.push((i, SingClass::CanonicalAtLeast));
                }
                _ => {}
            }
        }
    }
    for (i, class) in inherited {
        if class == SingClass::Terminal || verdicts[i].verdict.class == SingClass::Unknown {
            notes.push(format!(
                "stratum {:?} inherits {} from a smaller stratum in its closure",
                verdicts[i].stratum.indices,
                class.as_str()
            ));
            verdicts[i].verdict = SingularityVerdict {
                class,
                certificate: None,
            };
        }
    }

    // Aggregate verdict: the meet over strata, with the global
    // Calabi-Yau shortcut (quasi-smooth CY is canonical) as a floor.
    let mut any_cnt = false;
    let mut any_cal = false;
    let mut any_unknown = false;
    let mut any_not = false;
    for sv in &verdicts {
        match sv.verdict.class {
            SingClass::Terminal => {}
            SingClass::CanonicalNotTerminal => any_cnt = true,
            SingClass::CanonicalAtLeast => any_cal = true,
            SingClass::Unknown => any_unknown = true,
            SingClass::NotCanonical => any_not = true,
        }
    }
    let overall_class = if any_not {
        SingClass::NotCanonical
    } else if any_unknown {
        if is_cy {
            notes.push("unresolved strata floored at canonical by the Calabi-Yau shortcut".into());
            SingClass::CanonicalAtLeast
        } else {
            SingClass::Unknown
        }
    } else if any_cal {
        SingClass::CanonicalAtLeast
    } else if any_cnt {
        SingClass::CanonicalNotTerminal
    } else {
        SingClass::Terminal
    };
    let overall_certificate = if is_cy && overall_class.is_canonical() {
        Some(Certificate::GorensteinSum)
    } else if verdicts.is_empty() {
        notes.push("no singular strata meet the general member".into());
        Some(Certificate::SmoothPoint)
    } else {
        None
    };
    if matches!(variety_class, VarietyClass::GeneralType(_)) {
        notes.push(format!(
            "pluricanonical embedding degree is at least the top weight {}",
            h.space.weights()[0]
        ));
    }

    Ok(ClassificationReport {
        hypersurface: h.clone(),
        well_formed,
        well_formed_rule,
        quasi_smooth,
        variety_class,
        adjunction_degree,
        volume,
        first_nonvanishing: bottom,
        strata_verdicts: verdicts,
        overall: SingularityVerdict {
            class: overall_class,
            certificate: overall_certificate,
        },
        notes,
    })
}
