//! The verification suite: every identity the crate promises, run exactly
//! and reported one line per check. Scans that pass collapse to a single
//! entry; every individual failure gets its own entry so nothing hides.

use std::path::Path;

use serde::Serialize;

use crate::gw::{cache_entries, full_table, n_planar, reduce_point_insertion, GwKey, MemoTable};
use crate::oracle::plane_counts;
use crate::quantum::QuantumAlgebra;
use crate::rational::Rational;
use crate::ring::{basis_pairs, diagonal, dual_basis, pairing_tensor, reduce, CohClass, BASIS_DIM};
use crate::series::{
    derive_wdvv_shape, wdvv1_coefficient_identity, wdvv1_sides, wdvv_sides_from_shape, SeriesBounds,
};
use crate::Error;

/// One verification outcome. Serialized field order matches declaration
/// order, so reports are byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<u32>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(check: &str, ok: bool) -> Self {
        CheckResult {
            check: check.to_string(),
            d: None,
            r: None,
            s: None,
            theta: None,
            ok,
            lhs: None,
            rhs: None,
            detail: None,
        }
    }

    fn with_key(mut self, key: GwKey) -> Self {
        self.d = Some(key.d());
        self.r = Some(key.r());
        self.s = Some(key.s());
        self.theta = Some(key.theta());
        self
    }

    fn with_sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

pub fn all_ok(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.ok)
}

/// Appends one summary entry when a scan is clean, or one entry per failure.
fn summarize(out: &mut Vec<CheckResult>, check: &str, failures: Vec<CheckResult>, scope: String) {
    if failures.is_empty() {
        out.push(CheckResult::new(check, true).with_detail(scope));
    } else {
        out.extend(failures);
    }
}

/// Ring identities: nilpotence of the generators, duality of the closed-form
/// dual basis, agreement of the diagonal closed form with the inverse
/// pairing, and the classical triple-derivative block.
pub fn check_ring() -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();

    let h4 = reduce(&[(0, 4, Rational::one())]);
    let a4 = reduce(&[(4, 0, Rational::one())]);
    out.push(
        CheckResult::new("ring-nilpotence", h4.is_zero() && a4.is_zero())
            .with_detail("H^4 = 0 and a^4 = 0"),
    );

    let pairing = pairing_tensor()?;
    let duals = dual_basis();
    let mut failures = Vec::new();
    for (u, (i, j)) in basis_pairs().enumerate() {
        for (v, _) in basis_pairs().enumerate() {
            let got = CohClass::basis(i, j).mul(&duals[v]).integrate();
            let expected = if u == v {
                Rational::one()
            } else {
                Rational::zero()
            };
            if got != expected {
                failures.push(
                    CheckResult::new("ring-duality", false)
                        .with_sides(&got, &expected)
                        .with_detail(format!("pair ({u}, {v})")),
                );
            }
        }
    }
    summarize(
        &mut out,
        "ring-duality",
        failures,
        format!("{} pairs", BASIS_DIM * BASIS_DIM),
    );

    let diag = diagonal(&pairing);
    match diag {
        Ok(_) => out.push(
            CheckResult::new("ring-diagonal", true)
                .with_detail("closed form equals inverse pairing"),
        ),
        Err(e) => out.push(CheckResult::new("ring-diagonal", false).with_detail(e.to_string())),
    }

    let h = CohClass::basis(0, 1);
    let h2 = CohClass::basis(0, 2);
    let mut failures = Vec::new();
    for (i, j) in basis_pairs() {
        let t = CohClass::basis(i, j);
        let cases = [
            (h.mul(&h).mul(&t), (i, j) == (3, 0) || (i, j) == (2, 1)),
            (h.mul(&h2).mul(&t), (i, j) == (2, 0)),
            (h2.mul(&h2).mul(&t), false),
        ];
        for (n, (product, expect_one)) in cases.into_iter().enumerate() {
            let got = product.integrate();
            let expected = if expect_one {
                Rational::one()
            } else {
                Rational::zero()
            };
            if got != expected {
                failures.push(
                    CheckResult::new("classical-derivatives", false)
                        .with_sides(&got, &expected)
                        .with_detail(format!("block {n} at T_{i}{j}")),
                );
            }
        }
    }
    summarize(
        &mut out,
        "classical-derivatives",
        failures,
        "36 integrals".to_string(),
    );

    Ok(out)
}

/// The base-case table: exactly five keys with `r <= 2` carry value 1.
pub fn check_initial_conditions(d_max: u32) -> Vec<CheckResult> {
    let memo = MemoTable::new();
    let ones = [
        (1, 0, 2, 1),
        (1, 2, 1, 1),
        (1, 1, 1, 2),
        (1, 2, 0, 3),
        (2, 2, 3, 0),
    ];
    let mut failures = Vec::new();
    let mut scanned = 0u32;
    for d in 1..=d_max {
        for r in 0..=2u32 {
            for s in 0..=5u32 {
                for theta in 0..=5u32 {
                    scanned += 1;
                    let key = GwKey::new(d, r, s, theta).expect("d >= 1");
                    let got = n_planar(key, &memo);
                    let expected = if ones.contains(&(d, r, s, theta)) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    if got != expected {
                        failures.push(
                            CheckResult::new("initial-conditions", false)
                                .with_key(key)
                                .with_sides(&got, &expected),
                        );
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "initial-conditions",
        failures,
        format!("{scanned} keys with r <= 2, d <= {d_max}"),
    );
    out
}

/// Exhaustive vanishing scan: unbalanced keys, too many point conditions or
/// base powers, and the excess rule `s + theta >= 4` all give exactly zero.
pub fn check_vanishing(d_max: u32, memo: &MemoTable) -> Vec<CheckResult> {
    let mut failures = Vec::new();
    let mut scanned = 0u32;
    for d in 1..=d_max {
        for r in 0..=3 * d + 2 {
            for s in 0..=5u32 {
                for theta in 0..=5u32 {
                    let key = GwKey::new(d, r, s, theta).expect("d >= 1");
                    let forced_zero = !key.is_balanced() || s > 3 || theta > 3 || s + theta >= 4;
                    if !forced_zero {
                        continue;
                    }
                    scanned += 1;
                    let got = n_planar(key, memo);
                    if !got.is_zero() {
                        failures.push(
                            CheckResult::new("vanishing", false)
                                .with_key(key)
                                .with_sides(&got, "0"),
                        );
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "vanishing",
        failures,
        format!("{scanned} forced-zero keys, d <= {d_max}"),
    );
    out
}

/// The point-insertion expansion agrees with the recursion on every balanced
/// key with at least one point condition.
pub fn check_route_consistency(d_max: u32, memo: &MemoTable) -> Vec<CheckResult> {
    let mut failures = Vec::new();
    let mut scanned = 0u32;
    for d in 1..=d_max {
        for s in 1..=3u32 {
            for theta in 0..=3u32 {
                let used = 2 * s + theta;
                if used > 3 * d + 2 {
                    continue;
                }
                let key = GwKey::new(d, 3 * d + 2 - used, s, theta).expect("d >= 1");
                scanned += 1;
                let direct = n_planar(key, memo);
                let expanded = reduce_point_insertion(key, memo).expect("s >= 1");
                if direct != expanded {
                    failures.push(
                        CheckResult::new("route-consistency", false)
                            .with_key(key)
                            .with_sides(&direct, &expanded),
                    );
                }
            }
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "route-consistency",
        failures,
        format!("{scanned} balanced keys with s >= 1, d <= {d_max}"),
    );
    out
}

/// Every balanced value is an integer.
pub fn check_integrality(d_max: u32, memo: &MemoTable) -> Vec<CheckResult> {
    let mut failures = Vec::new();
    let table = full_table(d_max, memo);
    let count = table.len();
    for (key, value) in table {
        if !value.is_integer() {
            failures.push(
                CheckResult::new("integrality", false)
                    .with_key(key)
                    .with_sides(&value, "an integer"),
            );
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "integrality",
        failures,
        format!("{count} balanced keys, d <= {d_max}"),
    );
    out
}

/// Three general points pin the plane, so the table at `s = 3`, `theta = 0`
/// must reproduce the classical plane-curve counts.
pub fn check_oracle(d_max: u32, memo: &MemoTable) -> Result<Vec<CheckResult>, Error> {
    let mut failures = Vec::new();
    let mut scanned = 0u32;
    if d_max >= 2 {
        let counts = plane_counts(d_max)?;
        for c in counts.iter().filter(|c| c.d >= 2) {
            let key = GwKey::new(c.d, 3 * c.d - 4, 3, 0).expect("d >= 2");
            scanned += 1;
            let planar = n_planar(key, memo);
            let classical = Rational::from_bigint(c.value.clone());
            if planar != classical {
                failures.push(
                    CheckResult::new("oracle-cross-check", false)
                        .with_key(key)
                        .with_sides(&planar, &classical),
                );
            }
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "oracle-cross-check",
        failures,
        format!("{scanned} degrees against the plane-curve recursion"),
    );
    Ok(out)
}

/// The pairing form of the WDVV identity over all basis 4-tuples.
pub fn check_wdvv_pairing(q_max: u32, memo: &MemoTable) -> Result<Vec<CheckResult>, Error> {
    let algebra = QuantumAlgebra::new(q_max, memo)?;
    let mut failures = Vec::new();
    for i in basis_pairs() {
        for j in basis_pairs() {
            for k in basis_pairs() {
                for l in basis_pairs() {
                    if !algebra.wdvv_pairing_check(i, j, k, l) {
                        failures.push(CheckResult::new("wdvv-pairing", false).with_detail(
                            format!(
                                "tuple T_{}{} T_{}{} T_{}{} T_{}{}",
                                i.0, i.1, j.0, j.1, k.0, k.1, l.0, l.1
                            ),
                        ));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "wdvv-pairing",
        failures,
        format!("all {} tuples at q-degree <= {q_max}", BASIS_DIM.pow(4)),
    );
    Ok(out)
}

/// The series coefficient identity, one entry per balanced key with `r >= 3`.
pub fn check_wdvv1(d_max: u32, memo: &MemoTable) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        for s in 0..=3u32 {
            for theta in 0..=3u32 {
                let used = 2 * s + theta;
                if used + 3 > 3 * d + 2 {
                    continue;
                }
                let key = GwKey::new(d, 3 * d + 2 - used, s, theta).expect("d >= 1");
                let report = wdvv1_coefficient_identity(key, memo).expect("balanced, r >= 3");
                out.push(
                    CheckResult::new("wdvv1", report.ok)
                        .with_key(key)
                        .with_sides(&report.lhs, &report.rhs),
                );
            }
        }
    }
    out
}

/// The survival pattern of the pairing contraction, re-derived from the
/// diagonal tensor instead of hard-coding which cross terms live.
pub fn check_wdvv1_survival(d_max: u32, memo: &MemoTable) -> Result<Vec<CheckResult>, Error> {
    let pairing = pairing_tensor()?;
    let bounds = SeriesBounds {
        q: d_max,
        p: 3 * d_max + 2,
        s: 3,
        u: 3,
    };
    let shape = derive_wdvv_shape(&pairing);
    let (lhs_shape, rhs_shape) = wdvv_sides_from_shape(&shape, bounds, memo);
    let (lhs, rhs) = wdvv1_sides(bounds, memo);
    let mut out = Vec::new();
    out.push(
        CheckResult::new("wdvv1-survival", lhs_shape == lhs && rhs_shape == rhs)
            .with_detail("pairing-derived sides match the explicit assembly"),
    );
    out.push(
        CheckResult::new("wdvv1-series", lhs_shape == rhs_shape)
            .with_detail(format!("series identity at q <= {d_max}")),
    );
    Ok(out)
}

/// Unit law and associativity of the quantum product on the whole basis.
pub fn check_quantum(
    unit_q_max: u32,
    assoc_q_max: u32,
    memo: &MemoTable,
) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();

    let algebra = QuantumAlgebra::new(unit_q_max, memo)?;
    let unit = algebra.unit();
    let mut failures = Vec::new();
    for u in basis_pairs() {
        let e = algebra.basis_element(u);
        if algebra.product(&unit, &e) != e || algebra.product(&e, &unit) != e {
            failures.push(
                CheckResult::new("quantum-unit", false)
                    .with_detail(format!("unit fails on T_{}{}", u.0, u.1)),
            );
        }
    }
    summarize(
        &mut out,
        "quantum-unit",
        failures,
        format!("12 basis classes at q-degree <= {unit_q_max}"),
    );

    let algebra = QuantumAlgebra::new(assoc_q_max, memo)?;
    let mut failures = Vec::new();
    for u in basis_pairs() {
        for v in basis_pairs() {
            for w in basis_pairs() {
                if !algebra.associator_vanishes(u, v, w) {
                    failures.push(
                        CheckResult::new("quantum-associativity", false).with_detail(format!(
                            "triple T_{}{} T_{}{} T_{}{}",
                            u.0, u.1, v.0, v.1, w.0, w.1
                        )),
                    );
                }
            }
        }
    }
    summarize(
        &mut out,
        "quantum-associativity",
        failures,
        format!(
            "all {} triples at q-degree <= {assoc_q_max}",
            BASIS_DIM.pow(3)
        ),
    );

    Ok(out)
}

/// Every cache entry must equal a fresh recomputation.
pub fn check_cache(path: &Path, d_hint: u32) -> Vec<CheckResult> {
    let entries = match cache_entries(path) {
        Ok(entries) => entries,
        Err(e) => {
            return vec![CheckResult::new("cache-consistency", false).with_detail(e.to_string())]
        }
    };
    let fresh = MemoTable::new();
    // warm the fresh memo so the comparison is not quadratic
    full_table(
        d_hint.max(entries.iter().map(|(k, _)| k.d()).max().unwrap_or(1)),
        &fresh,
    );
    let count = entries.len();
    let mut failures = Vec::new();
    for (key, cached) in entries {
        let computed = n_planar(key, &fresh);
        if cached != computed {
            failures.push(
                CheckResult::new("cache-consistency", false)
                    .with_key(key)
                    .with_sides(&cached, &computed),
            );
        }
    }
    let mut out = Vec::new();
    summarize(
        &mut out,
        "cache-consistency",
        failures,
        format!("{count} cached entries recomputed"),
    );
    out
}

/// The full suite at a given degree bound. Quantum and pairing checks run
/// at their standard degree windows, capped by `d_max`.
pub fn run_suite(d_max: u32, cache: Option<&Path>) -> Result<Vec<CheckResult>, Error> {
    let memo = MemoTable::new();
    let mut out = Vec::new();
    out.extend(check_ring()?);
    out.extend(check_initial_conditions(d_max));
    out.extend(check_vanishing(d_max, &memo));
    out.extend(check_route_consistency(d_max, &memo));
    out.extend(check_integrality(d_max, &memo));
    out.extend(check_oracle(d_max, &memo)?);
    out.extend(check_wdvv_pairing(d_max.min(3), &memo)?);
    out.extend(check_wdvv1(d_max, &memo));
    out.extend(check_wdvv1_survival(d_max, &memo)?);
    out.extend(check_quantum(d_max.min(5), d_max.min(4), &memo)?);
    if let Some(path) = cache {
        out.extend(check_cache(path, d_max));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_is_green() {
        let results = run_suite(2, None).unwrap();
        assert!(
            all_ok(&results),
            "failures: {:?}",
            results
                .iter()
                .filter(|r| !r.ok)
                .map(|r| &r.check)
                .collect::<Vec<_>>()
        );
        // per-key entries exist for the coefficient identity
        assert!(results.iter().filter(|r| r.check == "wdvv1").count() >= 5);
    }

    #[test]
    fn report_lines_are_flat_json() {
        let results = check_initial_conditions(1);
        let line = serde_json::to_string(&results[0]).unwrap();
        assert!(line.starts_with("{\"check\":\"initial-conditions\""));
        assert!(line.contains("\"ok\":true"));
    }

    #[test]
    fn cache_check_flags_poison() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("poison.json");
        let text = format!(
            "{{\"schema\":\"{}\",\"values\":{{\"3,11,0,0\":\"12961\"}}}}",
            crate::gw::CACHE_SCHEMA
        );
        std::fs::write(&path, text).unwrap();
        let results = check_cache(&path, 3);
        assert!(!all_ok(&results));
    }
}
