//! The table of planar curve counts and the recursion that fills it.
//!
//! `N_d(r, s, theta)` counts rational degree-`d` curves lying in a moving
//! plane inside projective 3-space, meeting `r` general lines, passing
//! through `s` general points, with the first insertion additionally twisted
//! by the `theta`-th power of the base hyperplane class. Values are exact
//! rationals (in fact integers on meaningful keys) computed by a recursion
//! in `r` with a short table of base cases, and memoized.
//!
//! A key is *balanced* when `r + 2s + theta = 3d + 2`, the virtual dimension
//! count for the underlying moduli problem; everything else vanishes, as does
//! any key with more than three point conditions or base-class powers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::RwLock;

use num::bigint::BigInt;
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::Error;

/// Index of one curve count: degree `d >= 1`, `r` line conditions, `s` point
/// conditions, and the base-class exponent `theta`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GwKey {
    d: u32,
    r: u32,
    s: u32,
    theta: u32,
}

impl GwKey {
    /// Validated constructor; the degree must be positive.
    pub fn new(d: u32, r: u32, s: u32, theta: u32) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidDegree(0));
        }
        Ok(GwKey { d, r, s, theta })
    }

    pub(crate) const fn raw(d: u32, r: u32, s: u32, theta: u32) -> Self {
        GwKey { d, r, s, theta }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// Dimension balance `r + 2s + theta = 3d + 2`; unbalanced keys vanish.
    pub fn is_balanced(&self) -> bool {
        self.r + 2 * self.s + self.theta == 3 * self.d + 2
    }
}

impl fmt::Display for GwKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(d={}, r={}, s={}, theta={})",
            self.d, self.r, self.s, self.theta
        )
    }
}

/// The five keys with value 1 in the base-case table; every other key with
/// `r <= 2` vanishes.
const INITIAL_ONES: [(u32, u32, u32, u32); 5] = [
    (1, 0, 2, 1),
    (1, 2, 1, 1),
    (1, 1, 1, 2),
    (1, 2, 0, 3),
    (2, 2, 3, 0),
];

/// Write-once memo of computed counts. Concurrent readers are fine; racing
/// writers always carry equal values (the recursion is pure), so the first
/// write sticks.
pub struct MemoTable {
    map: RwLock<HashMap<GwKey, Rational>>,
}

impl Default for MemoTable {
    fn default() -> Self {
        Self::new()
    }
}

impl MemoTable {
    pub fn new() -> Self {
        MemoTable {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &GwKey) -> Option<Rational> {
        self.map.read().unwrap().get(key).cloned()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.read().unwrap().is_empty()
    }

    /// Write-once insert for the recursion itself: keeps the existing entry,
    /// which equals the incoming one for any honestly computed value.
    fn memoize(&self, key: GwKey, value: Rational) -> Rational {
        let mut map = self.map.write().unwrap();
        map.entry(key).or_insert(value).clone()
    }

    /// Insert that surfaces conflicts, used when ingesting external caches.
    pub fn insert_checked(&self, key: GwKey, value: Rational) -> Result<(), Error> {
        let mut map = self.map.write().unwrap();
        if let Some(existing) = map.get(&key) {
            if existing != &value {
                return Err(Error::CacheConflict {
                    key: key.to_string(),
                    cached: value.to_string(),
                    computed: existing.to_string(),
                });
            }
            return Ok(());
        }
        map.insert(key, value);
        Ok(())
    }

    /// Sorted copy of the memo contents.
    pub fn snapshot(&self) -> BTreeMap<GwKey, Rational> {
        self.map
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }
}

/// Expected codimension of the cut-down moduli space of degree-`d` planar
/// rational curves with `n` markings: `3d + 2 + n`. Requires `d >= 1`.
pub fn expected_codim(d: u32, n: u32) -> u32 {
    debug_assert!(d >= 1);
    3 * d + 2 + n
}

/// Binomial coefficient with the convention that it vanishes for `k < 0`
/// or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// The planar curve count `N_d(r, s, theta)`.
///
/// Evaluation order: dimension balance, then the `s <= 3` / `theta <= 3`
/// vanishing bounds, then the base-case table for `r <= 2`, then the
/// recursion in `r`. Splitting summands whose parts land outside the
/// vanishing bounds contribute zero through the same rules rather than
/// being skipped.
pub fn n_planar(key: GwKey, memo: &MemoTable) -> Rational {
    debug_assert!(key.d >= 1);
    if !key.is_balanced() || key.s > 3 || key.theta > 3 {
        return Rational::zero();
    }
    if key.r <= 2 {
        let tuple = (key.d, key.r, key.s, key.theta);
        return if INITIAL_ONES.contains(&tuple) {
            Rational::one()
        } else {
            Rational::zero()
        };
    }
    if let Some(v) = memo.get(&key) {
        return v;
    }

    let (d, r, s, theta) = (key.d, key.r, key.s, key.theta);
    let mut acc = Rational::from_int(2 * d as i64)
        * n_planar(GwKey::raw(d, r - 1, s, theta + 1), memo)
        - Rational::from_int(2 * (d as i64) * (d as i64))
            * n_planar(GwKey::raw(d, r - 2, s, theta + 2), memo);

    for d1 in 1..d {
        let d2 = d - d1;
        let (b1, b2) = (BigInt::from(d1), BigInt::from(d2));
        let quartic = &b1 * &b1 * &b2 * &b2;
        let cubic = &b1 * &b1 * &b1 * &b2;
        for r1 in 0..r {
            let r2 = r - 1 - r1;
            let weight = &quartic * binomial((r - 3) as u64, r1 as i64 - 1)
                - &cubic * binomial((r - 3) as u64, r1 as i64);
            if weight.is_zero() {
                continue;
            }
            for s1 in 0..=s {
                let s2 = s - s1;
                let point_split = binomial(s as u64, s1 as i64);
                for t1 in 0..=theta + 3 {
                    let t2 = theta + 3 - t1;
                    let left = n_planar(GwKey::raw(d1, r1, s1, t1), memo);
                    if left.is_zero() {
                        continue;
                    }
                    let right = n_planar(GwKey::raw(d2, r2, s2, t2), memo);
                    if right.is_zero() {
                        continue;
                    }
                    acc += Rational::from_bigint(&weight * &point_split) * left * right;
                }
            }
        }
    }
    memo.memoize(key, acc)
}

/// Expands one point condition through `H^3 = a H^2 - a^2 H + a^3`: the
/// first summand trades the point for a line condition and one base-class
/// power, the second is a divisor insertion contributing a factor `d`, and
/// the pure base-class remainder vanishes. An independent route to the same
/// number as [`n_planar`] whenever `s >= 1`.
pub fn reduce_point_insertion(key: GwKey, memo: &MemoTable) -> Result<Rational, Error> {
    if key.s == 0 {
        return Err(Error::NoPointInsertion);
    }
    let (d, r, s, theta) = (key.d, key.r, key.s, key.theta);
    let first = n_planar(GwKey::raw(d, r + 1, s - 1, theta + 1), memo);
    let second = n_planar(GwKey::raw(d, r, s - 1, theta + 2), memo);
    Ok(first - Rational::from_int(d as i64) * second)
}

/// General insertion list reduced to the table: each insertion is a power
/// `H^m` with `m` in `1..=3`, and all base-class powers are summed into
/// `theta_total`. Divisor insertions (`m = 1`) each contribute a factor `d`.
/// An insertion with `m = 0` is a pullback from the base against a nonzero
/// curve class, so the whole invariant is zero; that case short-circuits
/// rather than erroring.
pub fn gw_invariant(
    d: u32,
    theta_total: u32,
    insertions: &[u32],
    memo: &MemoTable,
) -> Result<Rational, Error> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let (mut k, mut r, mut s) = (0u32, 0u32, 0u32);
    for &m in insertions {
        match m {
            0 => return Ok(Rational::zero()),
            1 => k += 1,
            2 => r += 1,
            3 => s += 1,
            _ => return Err(Error::InvalidInsertion(m)),
        }
    }
    let scale = BigInt::from(d).pow(k);
    Ok(Rational::from_bigint(scale) * n_planar(GwKey::raw(d, r, s, theta_total), memo))
}

/// All balanced keys with `d <= d_max`, `s <= 3`, `theta <= 3` and their
/// values, sorted by `(d, s, theta)`.
pub fn full_table(d_max: u32, memo: &MemoTable) -> Vec<(GwKey, Rational)> {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        for s in 0..=3u32 {
            for theta in 0..=3u32 {
                let used = 2 * s + theta;
                let total = 3 * d + 2;
                if used > total {
                    continue;
                }
                let key = GwKey::raw(d, total - used, s, theta);
                rows.push((key, n_planar(key, memo)));
            }
        }
    }
    rows.sort_by_key(|(k, _)| (k.d, k.s, k.theta));
    rows
}

/// Schema tag of the JSON memo cache.
pub const CACHE_SCHEMA: &str = "planar-gw-memo-v1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    values: BTreeMap<String, String>,
}

fn cache_error(path: &Path, reason: impl Into<String>) -> Error {
    Error::CacheFormat {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

/// Flushes the memo to a JSON cache file. Keys serialize as
/// `"d,r,s,theta"`, values as exact decimal integer strings; map order is
/// lexicographic, so identical memo contents produce identical bytes.
pub fn save_cache(memo: &MemoTable, path: &Path) -> Result<(), Error> {
    let mut values = BTreeMap::new();
    for (key, value) in memo.snapshot() {
        let int = value
            .to_integer()
            .ok_or_else(|| cache_error(path, format!("non-integer value for key {key}")))?;
        values.insert(
            format!("{},{},{},{}", key.d, key.r, key.s, key.theta),
            int.to_string(),
        );
    }
    let file = CacheFile {
        schema: CACHE_SCHEMA.to_string(),
        values,
    };
    let mut text = serde_json::to_string(&file)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn parse_cache_key(path: &Path, raw: &str) -> Result<GwKey, Error> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 4 {
        return Err(cache_error(path, format!("malformed key {raw:?}")));
    }
    let mut nums = [0u32; 4];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| cache_error(path, format!("malformed key {raw:?}")))?;
    }
    GwKey::new(nums[0], nums[1], nums[2], nums[3])
        .map_err(|_| cache_error(path, format!("key {raw:?} has degree 0")))
}

/// Parses a cache file without touching any memo.
pub fn cache_entries(path: &Path) -> Result<Vec<(GwKey, Rational)>, Error> {
    let text = fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&text)?;
    if file.schema != CACHE_SCHEMA {
        return Err(cache_error(
            path,
            format!(
                "unknown schema {:?}, expected {CACHE_SCHEMA:?}",
                file.schema
            ),
        ));
    }
    let mut entries = Vec::new();
    for (raw_key, raw_value) in &file.values {
        let key = parse_cache_key(path, raw_key)?;
        let value: BigInt = raw_value
            .parse()
            .map_err(|_| cache_error(path, format!("value {raw_value:?} is not an integer")))?;
        entries.push((key, Rational::from_bigint(value)));
    }
    Ok(entries)
}

/// Loads a cache file into the memo. Entries whose value is forced by the
/// vanishing rules or the base-case table are checked on the spot; a wrong
/// forced value, or a conflict with an entry already in the memo, is a fatal
/// integrity error. Returns the number of entries ingested.
pub fn load_cache(memo: &MemoTable, path: &Path) -> Result<usize, Error> {
    let entries = cache_entries(path)?;
    let count = entries.len();
    for (key, value) in entries {
        let forced = if !key.is_balanced() || key.s > 3 || key.theta > 3 {
            Some(Rational::zero())
        } else if key.r <= 2 {
            let tuple = (key.d, key.r, key.s, key.theta);
            Some(if INITIAL_ONES.contains(&tuple) {
                Rational::one()
            } else {
                Rational::zero()
            })
        } else {
            None
        };
        if let Some(expected) = forced {
            if value != expected {
                return Err(Error::CacheConflict {
                    key: key.to_string(),
                    cached: value.to_string(),
                    computed: expected.to_string(),
                });
            }
            // forced keys are never read back through the memo
            continue;
        }
        memo.insert_checked(key, value)?;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(d: u32, r: u32, s: u32, theta: u32) -> GwKey {
        GwKey::new(d, r, s, theta).unwrap()
    }

    #[test]
    fn degree_zero_is_rejected() {
        assert!(GwKey::new(0, 5, 0, 0).is_err());
    }

    #[test]
    fn expected_codim_examples() {
        assert_eq!(expected_codim(3, 11), 22);
        assert_eq!(expected_codim(1, 0), 5);
        assert_eq!(expected_codim(2, 5), 13);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn base_case_table() {
        let memo = MemoTable::new();
        for &(d, r, s, t) in &INITIAL_ONES {
            assert_eq!(n_planar(key(d, r, s, t), &memo), Rational::one());
        }
        // balanced keys with r <= 2 outside the table vanish
        assert_eq!(n_planar(key(1, 1, 2, 0), &memo), Rational::zero());
        assert_eq!(n_planar(key(1, 0, 1, 3), &memo), Rational::zero());
        assert_eq!(n_planar(key(3, 1, 3, 4), &memo), Rational::zero());
    }

    #[test]
    fn unbalanced_keys_vanish() {
        let memo = MemoTable::new();
        assert_eq!(n_planar(key(2, 1, 2, 1), &memo), Rational::zero());
        assert_eq!(n_planar(key(1, 5, 1, 0), &memo), Rational::zero());
    }

    #[test]
    fn one_recursion_step_by_hand() {
        // N_1(3,0,2) = 2*N_1(2,0,3) - 2*N_1(1,0,4) with an empty splitting
        // sum; the first base case is 1, the second vanishes (theta > 3).
        let memo = MemoTable::new();
        assert_eq!(n_planar(key(1, 3, 0, 2), &memo), Rational::from_int(2));
    }

    #[test]
    fn degree_one_ladder() {
        let memo = MemoTable::new();
        assert_eq!(n_planar(key(1, 4, 0, 1), &memo), Rational::from_int(2));
        // no line meets five general lines
        assert_eq!(n_planar(key(1, 5, 0, 0), &memo), Rational::zero());
    }

    #[test]
    fn conic_counts_match_classical_characteristic_numbers() {
        // conics in P^3 through p points and l lines, 2p + l = 8:
        // (p, l) = (3, 2), (2, 4), (1, 6), (0, 8) give 1, 4, 18, 92
        let memo = MemoTable::new();
        assert_eq!(n_planar(key(2, 2, 3, 0), &memo), Rational::one());
        assert_eq!(n_planar(key(2, 4, 2, 0), &memo), Rational::from_int(4));
        assert_eq!(n_planar(key(2, 6, 1, 0), &memo), Rational::from_int(18));
        assert_eq!(n_planar(key(2, 8, 0, 0), &memo), Rational::from_int(92));
    }

    #[test]
    fn twelve_thousand_planar_cubics() {
        let memo = MemoTable::new();
        assert_eq!(n_planar(key(3, 11, 0, 0), &memo), Rational::from_int(12960));
    }

    #[test]
    fn point_insertion_route_agrees() {
        let memo = MemoTable::new();
        assert_eq!(
            reduce_point_insertion(key(1, 0, 2, 1), &memo).unwrap(),
            Rational::one()
        );
        assert_eq!(
            reduce_point_insertion(key(2, 2, 3, 0), &memo).unwrap(),
            Rational::one()
        );
        assert!(reduce_point_insertion(key(1, 5, 0, 0), &memo).is_err());
        // exhaustive small-range agreement
        for d in 1..=3u32 {
            for s in 1..=3u32 {
                for theta in 0..=3u32 {
                    let used = 2 * s + theta;
                    if used > 3 * d + 2 {
                        continue;
                    }
                    let k = key(d, 3 * d + 2 - used, s, theta);
                    assert_eq!(
                        reduce_point_insertion(k, &memo).unwrap(),
                        n_planar(k, &memo),
                        "routes disagree at {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn excess_point_conditions_vanish() {
        let memo = MemoTable::new();
        for d in 1..=4u32 {
            for s in 0..=3u32 {
                for theta in 0..=3u32 {
                    if s + theta < 4 {
                        continue;
                    }
                    let used = 2 * s + theta;
                    if used > 3 * d + 2 {
                        continue;
                    }
                    let k = key(d, 3 * d + 2 - used, s, theta);
                    assert_eq!(n_planar(k, &memo), Rational::zero(), "{k}");
                }
            }
        }
    }

    #[test]
    fn gw_invariant_reduction() {
        let memo = MemoTable::new();
        // one divisor and two line conditions at theta = 1: unbalanced
        assert_eq!(
            gw_invariant(1, 1, &[1, 2, 2], &memo).unwrap(),
            Rational::zero()
        );
        assert_eq!(gw_invariant(1, 3, &[2, 2], &memo).unwrap(), Rational::one());
        assert_eq!(
            gw_invariant(2, 0, &[1, 3, 3, 3], &memo).unwrap(),
            Rational::zero()
        );
        // pullback insertion short-circuits to zero
        assert_eq!(
            gw_invariant(2, 0, &[0, 2, 2], &memo).unwrap(),
            Rational::zero()
        );
        assert!(gw_invariant(2, 0, &[4], &memo).is_err());
        assert!(gw_invariant(0, 0, &[2], &memo).is_err());
        let direct = gw_invariant(3, 0, &[2; 11], &memo).unwrap();
        assert_eq!(direct, Rational::from_int(12960));
    }

    #[test]
    fn full_table_degree_one() {
        let memo = MemoTable::new();
        let table = full_table(1, &memo);
        assert_eq!(table.len(), 10);
        let lookup = |r, s, t| {
            table
                .iter()
                .find(|(k, _)| (k.r(), k.s(), k.theta()) == (r, s, t))
                .map(|(_, v)| v.clone())
                .unwrap()
        };
        assert_eq!(lookup(0, 2, 1), Rational::one());
        assert_eq!(lookup(2, 1, 1), Rational::one());
        assert_eq!(lookup(5, 0, 0), Rational::zero());
        assert_eq!(lookup(4, 0, 1), Rational::from_int(2));
        // sorted by (d, s, theta)
        let mut sorted = table.clone();
        sorted.sort_by_key(|(k, _)| (k.d(), k.s(), k.theta()));
        assert_eq!(
            table.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            sorted.iter().map(|(k, _)| *k).collect::<Vec<_>>()
        );
    }

    #[test]
    fn table_is_deterministic_across_memos() {
        let a = full_table(5, &MemoTable::new());
        let b = full_table(5, &MemoTable::new());
        assert_eq!(a, b);
    }

    #[test]
    fn evaluation_order_does_not_matter() {
        // warm one memo in reverse order, then compare full tables
        let memo = MemoTable::new();
        let mut keys: Vec<GwKey> = full_table(4, &MemoTable::new())
            .into_iter()
            .map(|(k, _)| k)
            .collect();
        keys.reverse();
        for k in keys {
            n_planar(k, &memo);
        }
        assert_eq!(full_table(4, &memo), full_table(4, &MemoTable::new()));
    }

    #[test]
    fn shared_memo_is_thread_safe() {
        let memo = MemoTable::new();
        std::thread::scope(|scope| {
            for chunk in 0..4u32 {
                let memo = &memo;
                scope.spawn(move || {
                    for d in 1..=4u32 {
                        if d % 4 != chunk % 4 {
                            continue;
                        }
                        full_table(d, memo);
                    }
                });
            }
        });
        assert_eq!(full_table(4, &memo), full_table(4, &MemoTable::new()));
    }

    #[test]
    fn integrality_on_small_degrees() {
        let memo = MemoTable::new();
        for (k, v) in full_table(4, &memo) {
            assert!(v.is_integer(), "{k} has denominator {}", v.denom());
        }
    }

    #[test]
    fn table_values_are_nonnegative() {
        // the values for d >= 2 are honest enumerative counts; a negative
        // entry anywhere would mean the recursion went wrong
        let memo = MemoTable::new();
        for (k, v) in full_table(6, &memo) {
            assert!(v >= Rational::zero(), "{k} is negative: {v}");
        }
    }

    #[test]
    fn second_route_catches_a_poisoned_recursion_value() {
        // plant a wrong value for N_2(3,2,1) before anything computes it;
        // the point-insertion expansion of N_2(2,3,0) reads it back and
        // disagrees with the base-case table
        let memo = MemoTable::new();
        memo.insert_checked(key(2, 3, 2, 1), Rational::from_int(5))
            .unwrap();
        let direct = n_planar(key(2, 2, 3, 0), &memo);
        let expanded = reduce_point_insertion(key(2, 2, 3, 0), &memo).unwrap();
        assert_eq!(direct, Rational::one());
        assert_eq!(expanded, Rational::from_int(5));
        assert_ne!(direct, expanded);
    }

    #[test]
    fn base_case_keys_never_read_the_memo() {
        // rule precedence puts the base-case table before the memo lookup,
        // so a poisoned entry on such a key is inert
        let memo = MemoTable::new();
        memo.insert_checked(key(1, 2, 0, 3), Rational::from_int(9))
            .unwrap();
        assert_eq!(n_planar(key(1, 2, 0, 3), &memo), Rational::one());
    }

    #[test]
    fn cache_round_trip_and_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.json");

        let memo = MemoTable::new();
        full_table(3, &memo);
        save_cache(&memo, &path).unwrap();

        let reloaded = MemoTable::new();
        let n = load_cache(&reloaded, &path).unwrap();
        assert_eq!(n, memo.len());
        assert_eq!(full_table(3, &reloaded), full_table(3, &memo));

        // identical save after reload: byte-for-byte
        let path2 = dir.path().join("memo2.json");
        save_cache(&reloaded, &path2).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());

        // a forced key with a wrong value is a fatal integrity error
        let bad = format!("{{\"schema\":\"{CACHE_SCHEMA}\",\"values\":{{\"1,0,2,1\":\"7\"}}}}");
        let bad_path = dir.path().join("bad.json");
        fs::write(&bad_path, bad).unwrap();
        assert!(matches!(
            load_cache(&MemoTable::new(), &bad_path),
            Err(Error::CacheConflict { .. })
        ));

        // unknown schema is rejected
        let alien = "{\"schema\":\"other\",\"values\":{}}";
        fs::write(&bad_path, alien).unwrap();
        assert!(matches!(
            load_cache(&MemoTable::new(), &bad_path),
            Err(Error::CacheFormat { .. })
        ));

        // conflicting recursion entries across two loads
        let v1 = format!("{{\"schema\":\"{CACHE_SCHEMA}\",\"values\":{{\"3,11,0,0\":\"12960\"}}}}");
        let v2 = format!("{{\"schema\":\"{CACHE_SCHEMA}\",\"values\":{{\"3,11,0,0\":\"12961\"}}}}");
        let p1 = dir.path().join("v1.json");
        let p2 = dir.path().join("v2.json");
        fs::write(&p1, v1).unwrap();
        fs::write(&p2, v2).unwrap();
        let memo = MemoTable::new();
        load_cache(&memo, &p1).unwrap();
        assert!(matches!(
            load_cache(&memo, &p2),
            Err(Error::CacheConflict { .. })
        ));
    }
}
