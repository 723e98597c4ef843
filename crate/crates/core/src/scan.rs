//! Batch evaluation over families of inputs, with the selectors checked
//! against the oracle on every case.

use num_integer::Integer;

use crate::extension::QuadraticExtension;
use crate::feasibility::{
    report_from_profile, build_profile, FeasibilityError, FeasibilityReport, SelectorOptions,
};
use crate::field::{IdealFactorization, IdealInput, NumberField};
use crate::oracle::{enumerate_admissible_with, OracleError, OracleOptions};
use crate::par::{self, Execution};
use crate::poly::ZPoly;

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub label: String,
    pub report: FeasibilityReport,
    /// Selector output equals the oracle's enumeration.
    pub oracle_agrees: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("{label}: {source}")]
    Feasibility { label: String, source: FeasibilityError },
    #[error("{label}: {source}")]
    Oracle { label: String, source: OracleError },
}

/// Computes the report for `(k, n)` and compares its options with the oracle.
pub fn evaluate(
    label: impl Into<String>,
    k: &QuadraticExtension,
    n: &IdealFactorization,
    opts: SelectorOptions,
) -> Result<ScanOutcome, ScanError> {
    let label = label.into();
    let profile = build_profile(k, n)
        .map_err(|source| ScanError::Feasibility { label: label.clone(), source })?;
    let oracle = enumerate_admissible_with(
        &profile,
        OracleOptions { relax_b4: opts.allow_drop_b4, execution: Execution::Sequential, ..Default::default() },
    )
    .map_err(|source| ScanError::Oracle { label: label.clone(), source })?;
    let report = report_from_profile(profile, None, opts);
    let mut selected: Vec<_> = report.all_options().cloned().collect();
    selected.sort();
    Ok(ScanOutcome { label, oracle_agrees: selected == oracle, report })
}

/// Squarefree `n <= n_max` coprime to the discriminant of `Q(√d)`.
pub fn squarefree_levels_coprime_to(d: i64, n_max: u64) -> Vec<u64> {
    let disc = if d.rem_euclid(4) == 1 { d.abs() } else { 4 * d.abs() } as u64;
    (1..=n_max)
        .filter(|&n| n.gcd(&disc) == 1 && is_squarefree(n))
        .collect()
}

fn is_squarefree(n: u64) -> bool {
    let mut k = 2;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Every `(d, N)` with `K = Q(√d)`, `d ∈ deltas`, and `N` a squarefree
/// integer up to `n_max` coprime to `disc(K)`.
pub fn scan_quadratic_over_q(
    deltas: &[i64],
    n_max: u64,
    exec: Execution,
) -> Result<Vec<ScanOutcome>, ScanError> {
    let q = NumberField::parse(&[0, 1]).expect("Q is a valid field");
    let mut cases = Vec::new();
    for &d in deltas {
        let k = QuadraticExtension::new(q.clone(), &[d]).expect("d is not a square");
        for n in squarefree_levels_coprime_to(d, n_max) {
            cases.push((k.clone(), n));
        }
    }
    par::map(exec, &cases, |(k, n)| {
        let ideal = q
            .factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[*n as i64])))
            .expect("small integers factor");
        let label = format!("Q(√{})/Q, N = ({n})", k.delta.coeff(0));
        evaluate(label, k, &ideal, SelectorOptions::default())
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_exclude_ramified_primes() {
        let levels = squarefree_levels_coprime_to(5, 30);
        assert!(!levels.contains(&5) && !levels.contains(&15));
        assert!(!levels.contains(&4) && !levels.contains(&12));
        assert!(levels.contains(&22) && levels.contains(&1));
        let levels = squarefree_levels_coprime_to(3, 20);
        assert!(levels.iter().all(|n| n % 2 == 1 && n % 3 != 0));
    }

    #[test]
    fn small_scan_agrees_with_oracle() {
        let out = scan_quadratic_over_q(&[5, 13], 60, Execution::default()).unwrap();
        assert!(!out.is_empty());
        assert!(out.iter().all(|o| o.oracle_agrees && o.report.sign_consistent));
    }
}
