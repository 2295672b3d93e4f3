//! Exact integer and rational arithmetic support: Sylvester's sequence,
//! numerical-semigroup membership, and one-sided double-exponential bound
//! checks. No floating point is used anywhere in this module.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::RwLock;

use rug::{Complete, Integer, Rational};
use thiserror::Error;

/// Largest admissible index for [`sylvester`]. `s_32` already has
/// hundreds of millions of digits; nothing past the dimension cap of
/// the extremal families ever needs more.
pub const SYLVESTER_MAX_INDEX: u32 = 32;

/// Indices up to this bound are kept in the memo table (the family
/// constructions hit every index up to the dimension cap repeatedly;
/// recomputing the chain per call is quadratic). The last two indices
/// are recomputed on demand so the table stays under ~350 MB.
const SYLVESTER_MEMO_INDEX: u32 = 30;

static SYLVESTER_TABLE: RwLock<Vec<Integer>> = RwLock::new(Vec::new());

/// Returns `s_m` of Sylvester's sequence: `s_0 = 2`,
/// `s_m = s_{m-1}(s_{m-1} - 1) + 1`.
///
/// Panics if `m > SYLVESTER_MAX_INDEX`.
pub fn sylvester(m: u32) -> Integer {
    assert!(
        m <= SYLVESTER_MAX_INDEX,
        "sylvester index {m} exceeds cap {SYLVESTER_MAX_INDEX}"
    );
    {
        let table = SYLVESTER_TABLE.read().unwrap();
        if (m as usize) < table.len() {
            return table[m as usize].clone();
        }
    }
    let mut table = SYLVESTER_TABLE.write().unwrap();
    if table.is_empty() {
        table.push(Integer::from(2));
    }
    while table.len() <= (m.min(SYLVESTER_MEMO_INDEX) as usize) {
        let next = sylvester_step(table.last().unwrap());
        table.push(next);
    }
    if (m as usize) < table.len() {
        return table[m as usize].clone();
    }
    // Past the memo bound: extend from the last stored value without
    // retaining the intermediates.
    let mut cur = table.last().unwrap().clone();
    for _ in table.len()..=(m as usize) {
        cur = sylvester_step(&cur);
    }
    cur
}

fn sylvester_step(prev: &Integer) -> Integer {
    (prev * prev).complete() - prev + 1u32
}

/// `s_m - 1 = s_0 s_1 ... s_{m-1}`, the telescoped product form.
pub fn sylvester_minus_one(m: u32) -> Integer {
    sylvester(m) - 1u32
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("membership query over budget (smallest generator {min_generator}, target {target}); raise the budget caps")]
    BudgetExceeded { min_generator: String, target: String },
    #[error("semigroup generators must be positive and non-empty")]
    InvalidGenerators,
}

/// Resource limits for membership queries.
#[derive(Debug, Clone, Copy)]
pub struct SemigroupBudget {
    /// Build an Apery table only when the smallest generator is at most this.
    pub apery_cap: u64,
    /// Fall back to direct dynamic programming for targets at most this.
    pub dp_cap: u64,
}

impl Default for SemigroupBudget {
    fn default() -> Self {
        SemigroupBudget {
            apery_cap: 10_000_000,
            dp_cap: 10_000_000,
        }
    }
}

#[derive(Debug)]
enum AperyState {
    /// `table[c]` is the least semigroup element congruent to `c` modulo
    /// the smallest generator (`u128::MAX` for unreachable residues).
    Built { table: Vec<u128> },
    /// Generators too large for the table; queries fall through to DP.
    Infeasible,
}

/// A numerical semigroup `<g_1, ..., g_k>` answering N-linear
/// representability queries via a lazily built Apery table, with a
/// bounded dynamic-programming fallback.
#[derive(Debug)]
pub struct Semigroup {
    gens: Vec<Integer>,
    gcd: Integer,
    budget: SemigroupBudget,
    apery: RwLock<Option<AperyState>>,
}

impl Semigroup {
    pub fn new(gens: impl IntoIterator<Item = Integer>) -> Result<Self, SemigroupError> {
        Self::with_budget(gens, SemigroupBudget::default())
    }

    pub fn with_budget(
        gens: impl IntoIterator<Item = Integer>,
        budget: SemigroupBudget,
    ) -> Result<Self, SemigroupError> {
        let mut gens: Vec<Integer> = gens.into_iter().collect();
        if gens.is_empty() || gens.iter().any(|g| *g <= 0u32) {
            return Err(SemigroupError::InvalidGenerators);
        }
        gens.sort_unstable();
        gens.dedup();
        let mut gcd = gens[0].clone();
        for g in &gens[1..] {
            gcd.gcd_mut(g);
        }
        Ok(Semigroup {
            gens,
            gcd,
            budget,
            apery: RwLock::new(None),
        })
    }

    pub fn generators(&self) -> &[Integer] {
        &self.gens
    }

    /// True iff `target` is a non-negative integer combination of the
    /// generators.
    pub fn contains(&self, target: &Integer) -> Result<bool, SemigroupError> {
        if target.is_zero() {
            return Ok(true);
        }
        if *target < 0u32 {
            return Ok(false);
        }
        // Sufficient: some generator divides the target.
        if self.gens.iter().any(|g| target.is_divisible(g)) {
            return Ok(true);
        }
        if target < &self.gens[0] {
            return Ok(false);
        }
        // Necessary: the gcd of all generators divides the target.
        if !target.is_divisible(&self.gcd) {
            return Ok(false);
        }
        self.ensure_apery();
        let state = self.apery.read().unwrap();
        match state.as_ref().unwrap() {
            AperyState::Built { table } => {
                let c = (target % &self.gens[0]).complete().to_usize().unwrap();
                Ok(table[c] != u128::MAX && *target >= table[c])
            }
            AperyState::Infeasible => self.dp_membership(target),
        }
    }

    fn ensure_apery(&self) {
        if self.apery.read().unwrap().is_some() {
            return;
        }
        let mut slot = self.apery.write().unwrap();
        if slot.is_some() {
            return;
        }
        *slot = Some(self.build_apery());
    }

    fn build_apery(&self) -> AperyState {
        let Some(a) = self.gens[0].to_u64() else {
            return AperyState::Infeasible;
        };
        if a < 2 || a > self.budget.apery_cap {
            return AperyState::Infeasible;
        }
        let a = a as usize;
        // Shortest paths use fewer than `a` edges, so distances stay
        // below a * max_gen; require that to fit in u128.
        let mut small: Vec<(u128, usize)> = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let Some(v) = g.to_u128() else {
                return AperyState::Infeasible;
            };
            if v > u128::MAX / (a as u128) {
                return AperyState::Infeasible;
            }
            small.push((v, (v % a as u128) as usize));
        }
        // Dijkstra over residue classes mod the smallest generator.
        let mut dist = vec![u128::MAX; a];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u128, 0usize)));
        while let Some(Reverse((d, c))) = heap.pop() {
            if d > dist[c] {
                continue;
            }
            for &(g, gm) in &small {
                let nc = (c + gm) % a;
                let nd = d + g;
                if nd < dist[nc] {
                    dist[nc] = nd;
                    heap.push(Reverse((nd, nc)));
                }
            }
        }
        AperyState::Built { table: dist }
    }

    fn dp_membership(&self, target: &Integer) -> Result<bool, SemigroupError> {
        let feasible = target.to_u64().filter(|&t| t <= self.budget.dp_cap);
        let Some(t) = feasible else {
            return Err(SemigroupError::BudgetExceeded {
                min_generator: self.gens[0].to_string(),
                target: target.to_string(),
            });
        };
        let t = t as usize;
        let mut reach = vec![false; t + 1];
        reach[0] = true;
        for g in &self.gens {
            let Some(g) = g.to_u64().map(|g| g as usize).filter(|&g| g <= t) else {
                continue;
            };
            for v in g..=t {
                reach[v] = reach[v] || reach[v - g];
            }
        }
        Ok(reach[t])
    }
}

/// One-shot membership query; see [`Semigroup::contains`].
pub fn semigroup_member(target: &Integer, gens: &[Integer]) -> Result<bool, SemigroupError> {
    Semigroup::new(gens.iter().cloned())?.contains(target)
}

/// How a double-exponential comparison was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundProofMode {
    /// Integer exponent: exact comparison against `2^(2^(n/2))`.
    Exact,
    /// Half-integer exponent: the sufficient floor-log2 criterion.
    BitLengthBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub mode: BoundProofMode,
}

/// Strict comparison `x > 2^(2^(n/2))` for a positive rational `x`.
///
/// Even `n` is decided exactly. For odd `n` the exponent is irrational
/// and only a one-sided sufficient criterion is used: with
/// `k = floor(log2 x)`, `k >= 1` and `k^2 >= 2^n` imply
/// `log2 x >= k > 2^(n/2)` (strictly, since `2^(n/2)` is never an
/// integer). A `false` for odd `n` therefore means "not proven".
pub fn exceeds_double_exponential_checked(x: &Rational, n: u32) -> BoundCheck {
    double_exp_compare(x, n, true)
}

/// Non-strict variant: `x >= 2^(2^(n/2))`. Same proof modes as the
/// strict form; for odd `n` the sufficient criterion already yields a
/// strict inequality.
pub fn meets_double_exponential_checked(x: &Rational, n: u32) -> BoundCheck {
    double_exp_compare(x, n, false)
}

pub fn exceeds_double_exponential(x: &Rational, n: u32) -> bool {
    exceeds_double_exponential_checked(x, n).holds
}

pub fn meets_double_exponential(x: &Rational, n: u32) -> bool {
    meets_double_exponential_checked(x, n).holds
}

fn double_exp_compare(x: &Rational, n: u32, strict: bool) -> BoundCheck {
    assert!(*x > 0u32, "bound check requires a positive rational");
    assert!(n <= 64, "double-exponential threshold too large for n = {n}");
    if n % 2 == 0 {
        let shift = 1u32 << (n / 2);
        let rhs = (x.denom() << shift).complete();
        let ord = x.numer().cmp(&rhs);
        let holds = if strict { ord.is_gt() } else { ord.is_ge() };
        return BoundCheck {
            holds,
            mode: BoundProofMode::Exact,
        };
    }
    let k = floor_log2(x);
    let holds = k >= 1 && {
        let k = k as u128;
        k.checked_mul(k).map_or(true, |sq| sq >= 1u128 << n)
    };
    BoundCheck {
        holds,
        mode: BoundProofMode::BitLengthBound,
    }
}

/// `floor(log2 x)` for positive rational `x`, exactly, from bit lengths
/// plus one shifted comparison.
pub fn floor_log2(x: &Rational) -> i64 {
    debug_assert!(*x > 0u32);
    let e = x.numer().significant_bits() as i64 - x.denom().significant_bits() as i64;
    // 2^(e-1) <= x < 2^(e+1); one comparison against 2^e settles it.
    let at_least = if e >= 0 {
        *x.numer() >= (x.denom() << (e as u32)).complete()
    } else {
        (x.numer() << ((-e) as u32)).complete() >= *x.denom()
    };
    if at_least {
        e
    } else {
        e - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: u64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn sylvester_initial_values() {
        let expect = [2u64, 3, 7, 43, 1807, 3263443];
        for (m, &v) in expect.iter().enumerate() {
            assert_eq!(sylvester(m as u32), v);
        }
    }

    #[test]
    fn sylvester_product_recursion_agrees() {
        // s_m = 1 + s_0 s_1 ... s_{m-1}
        for m in 0..=8u32 {
            let mut prod = Integer::from(1);
            for j in 0..m {
                prod *= sylvester(j);
            }
            assert_eq!(sylvester(m), prod + 1u32);
            assert_eq!(sylvester_minus_one(m) + 1u32, sylvester(m));
        }
    }

    #[test]
    fn sylvester_reciprocal_sum_identity() {
        // sum_{j<=m} 1/s_j = 1 - 1/(s_{m+1} - 1)
        for m in 0..=6u32 {
            let mut sum = Rational::new();
            for j in 0..=m {
                sum += Rational::from((Integer::from(1), sylvester(j)));
            }
            let expect =
                Rational::from(1) - Rational::from((Integer::from(1), sylvester_minus_one(m + 1)));
            assert_eq!(sum, expect);
        }
    }

    #[test]
    fn sylvester_beyond_memo_bound() {
        let s21 = sylvester(21);
        assert_eq!(s21.clone() - 1u32, {
            let mut prod = Integer::from(1);
            for j in 0..21 {
                prod *= sylvester(j);
            }
            prod
        });
        assert_eq!(sylvester_step(&sylvester(20)), s21);
    }

    #[test]
    #[should_panic(expected = "exceeds cap")]
    fn sylvester_cap_enforced() {
        sylvester(SYLVESTER_MAX_INDEX + 1);
    }

    #[test]
    fn semigroup_spec_examples() {
        assert_eq!(semigroup_member(&int(66), &[int(33), int(22)]), Ok(true));
        assert_eq!(semigroup_member(&int(7), &[int(3), int(5)]), Ok(false));
        assert_eq!(semigroup_member(&int(7), &[int(5), int(3), int(2)]), Ok(true));
    }

    #[test]
    fn semigroup_rejects_bad_generators() {
        assert_eq!(
            semigroup_member(&int(5), &[]),
            Err(SemigroupError::InvalidGenerators)
        );
        assert_eq!(
            semigroup_member(&int(5), &[Integer::from(0)]),
            Err(SemigroupError::InvalidGenerators)
        );
        assert_eq!(
            semigroup_member(&int(5), &[Integer::from(-3)]),
            Err(SemigroupError::InvalidGenerators)
        );
    }

    /// Brute-force oracle: bounded coefficient enumeration.
    fn naive_member(target: u64, gens: &[u64]) -> bool {
        fn rec(target: u64, gens: &[u64]) -> bool {
            if target == 0 {
                return true;
            }
            let Some((&g, rest)) = gens.split_first() else {
                return false;
            };
            let mut t = target;
            loop {
                if rec(t, rest) {
                    return true;
                }
                if t < g {
                    return false;
                }
                t -= g;
            }
        }
        rec(target, gens)
    }

    #[test]
    fn semigroup_matches_naive_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e311);
        for _ in 0..200 {
            let k = rng.gen_range(1..=4);
            let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=50)).collect();
            let sg = Semigroup::new(gens.iter().map(|&g| int(g))).unwrap();
            for _ in 0..25 {
                let t = rng.gen_range(0..=500u64);
                assert_eq!(
                    sg.contains(&int(t)).unwrap(),
                    naive_member(t, &gens),
                    "target {t} gens {gens:?}"
                );
            }
        }
    }

    #[test]
    fn semigroup_dp_fallback_agrees_with_apery() {
        // Force the DP path with a tiny Apery cap and compare answers.
        let gens = [int(9), int(12), int(20)];
        let fast = Semigroup::new(gens.iter().cloned()).unwrap();
        let slow = Semigroup::with_budget(
            gens.iter().cloned(),
            SemigroupBudget {
                apery_cap: 1,
                dp_cap: 10_000,
            },
        )
        .unwrap();
        for t in 0..300u64 {
            assert_eq!(
                fast.contains(&int(t)).unwrap(),
                slow.contains(&int(t)).unwrap(),
                "target {t}"
            );
        }
    }

    #[test]
    fn semigroup_budget_exhaustion_is_an_error() {
        let sg = Semigroup::with_budget(
            [int(1_000_003), int(1_000_033)],
            SemigroupBudget {
                apery_cap: 10,
                dp_cap: 10,
            },
        )
        .unwrap();
        // Not settled by the cheap filters, and both strategies are capped.
        let t = Integer::from(1_000_003u64) + 1_000_033u64 + 2u64;
        assert!(matches!(
            sg.contains(&t),
            Err(SemigroupError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn semigroup_huge_targets_with_small_generators() {
        let sg = Semigroup::new([int(33), int(22), int(6), int(5)]).unwrap();
        let t = sylvester(10) * 330u32;
        assert!(sg.contains(&t).unwrap());
    }

    fn rat(n: u64, d: u64) -> Rational {
        Rational::from((Integer::from(n), Integer::from(d)))
    }

    #[test]
    fn double_exp_even_dimension_exact() {
        // 330 > 2^(2^1) = 4
        let c = exceeds_double_exponential_checked(&rat(330, 1), 2);
        assert!(c.holds);
        assert_eq!(c.mode, BoundProofMode::Exact);
        // 498240036 > 2^(2^2) = 16
        assert!(exceeds_double_exponential(&rat(498_240_036, 1), 4));
        // 2 < 2^(2^3) = 256
        assert!(!exceeds_double_exponential(&rat(2, 1), 6));
        // Boundary: 4 = 2^(2^1) exactly.
        assert!(!exceeds_double_exponential(&rat(4, 1), 2));
        assert!(meets_double_exponential(&rat(4, 1), 2));
        assert!(!meets_double_exponential(&rat(399, 100), 2));
    }

    #[test]
    fn double_exp_odd_dimension_sufficient_bound() {
        // floor(log2 10^9) = 29 and 29^2 = 841 >= 2^5.
        let c = exceeds_double_exponential_checked(&rat(1_000_000_000, 1), 5);
        assert!(c.holds);
        assert_eq!(c.mode, BoundProofMode::BitLengthBound);
        // floor(log2 40) = 5 and 25 < 32: not provable by the bound.
        assert!(!exceeds_double_exponential(&rat(40, 1), 5));
        // x in (1, 2): k = 0 fails the k >= 1 requirement.
        assert!(!exceeds_double_exponential(&rat(3, 2), 1));
    }

    #[test]
    fn floor_log2_exact_on_boundaries() {
        assert_eq!(floor_log2(&rat(1, 1)), 0);
        assert_eq!(floor_log2(&rat(1023, 1)), 9);
        assert_eq!(floor_log2(&rat(1024, 1)), 10);
        assert_eq!(floor_log2(&rat(1025, 1)), 10);
        assert_eq!(floor_log2(&rat(1, 3)), -2);
        assert_eq!(floor_log2(&rat(2, 3)), -1);
        assert_eq!(floor_log2(&rat(7, 2)), 1);
    }
}
