//! Human-readable account of a run: classifications, parity, each candidate
//! with its assumption checks, and the verdict.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use darmon_core::{
    ConductorProfile, ConstructionKind, Distinguished, FeasibilityReport, PlaceType, PrimeIdeal,
    QuaternionAlgebraSpec,
};

use crate::{distinguished_label, ideal_label, kind_label, place_label, type_name, OracleCheck};

pub fn render(report: &FeasibilityReport, oracle: Option<&OracleCheck>) -> String {
    let p = &report.profile;
    let k = &p.extension;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "F = Q[θ]/({}), degree {}, disc {}",
        k.base.defining_poly, k.base.degree, k.base.discriminant
    );
    let _ = writeln!(s, "K = F(√δ), δ = {}", k.delta);
    let _ = writeln!(s, "N = {}", ideal_label(&p.conductor));

    let _ = writeln!(s, "real places:");
    for c in &p.real_classes {
        let _ = writeln!(s, "  {}: {}", place_label(&p.real_classes, c.place.index), type_name(c.place_type));
    }
    let _ = writeln!(s, "primes dividing N:");
    if p.finite_classes.is_empty() {
        let _ = writeln!(s, "  (none)");
    }
    for c in &p.finite_classes {
        let _ = writeln!(s, "  {}^{}: {}", c.prime, c.exponent, type_name(c.place_type));
    }

    let sum = p.parity_sum();
    let _ = writeln!(
        s,
        "parity: r_B + r_K = {}, f_B + f_K = {}, sum {} => sign {:+}",
        p.inert_real_count,
        p.inert_finite.len(),
        sum,
        report.sign
    );

    for kind in [ConstructionKind::Gartner, ConstructionKind::Greenberg] {
        let _ = writeln!(s, "{} candidates:", kind_label(kind));
        let candidates = candidates(p, kind, report);
        if candidates.is_empty() {
            let _ = writeln!(s, "  (none)");
        }
        for (spec, checks) in candidates {
            let ok = checks.iter().all(|c| c.1 != Status::Fail);
            let _ = writeln!(
                s,
                "  at {}: {}",
                distinguished_label(p, &spec.distinguished),
                if ok { "admissible" } else { "rejected" }
            );
            let _ = writeln!(
                s,
                "    ram(B) = {{{}}}, N⁺ = {}, N′ = {}, N⁻ = {}",
                ramification(&spec),
                ideal_label(&spec.n_plus),
                ideal_label(&spec.n_prime),
                ideal_label(&spec.n_minus)
            );
            for (label, status) in checks {
                let _ = writeln!(s, "    [{label}] {}", status.as_str());
            }
        }
    }

    if !report.failure_reasons.is_empty() {
        let reasons: Vec<String> = report.failure_reasons.iter().map(|r| format!("{r:?}")).collect();
        let _ = writeln!(s, "failure reasons: {}", reasons.join(", "));
    }
    let _ = writeln!(s, "assumed: {}", report.assumed_true.join(", "));
    if let Some(o) = oracle {
        let _ = writeln!(s, "oracle: {} specs, agrees = {}", o.oracle_specs, o.agrees);
    }
    let _ = writeln!(
        s,
        "verdict: {} ({} Gartner, {} Greenberg)",
        if report.is_feasible() { "feasible" } else { "infeasible" },
        report.gartner_options.len(),
        report.greenberg_options.len()
    );
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Assumed,
    Skipped,
}

impl Status {
    fn of(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Assumed => "assumed",
            Status::Skipped => "not checked",
        }
    }
}

fn ramification(spec: &QuaternionAlgebraSpec) -> String {
    let mut parts: Vec<String> = spec.ramified_real.iter().map(|v| format!("τ{v}")).collect();
    parts.extend(spec.ramified_finite.iter().map(|q| q.to_string()));
    parts.join(", ")
}

/// Emitted specs plus the candidates the selectors tried and discarded.
fn candidates(
    p: &ConductorProfile,
    kind: ConstructionKind,
    report: &FeasibilityReport,
) -> Vec<(QuaternionAlgebraSpec, Vec<(&'static str, Status)>)> {
    let emitted: Vec<&QuaternionAlgebraSpec> = match kind {
        ConstructionKind::Gartner => report.gartner_options.iter().collect(),
        ConstructionKind::Greenberg => report.greenberg_options.iter().collect(),
    };
    let mut tried: Vec<QuaternionAlgebraSpec> = emitted.iter().map(|s| (*s).clone()).collect();
    let inert_real: BTreeSet<usize> = p.inert_real_places().into_iter().collect();
    let inert_fin: BTreeSet<PrimeIdeal> = p.inert_finite.iter().map(|(q, _)| q.clone()).collect();
    let n_minus_of = |set: &BTreeSet<PrimeIdeal>| {
        darmon_core::IdealFactorization::from_pairs(set.iter().map(|q| (q.clone(), p.conductor.exponent(q))))
    };
    // Main-line candidates that did not survive, reconstructed for display.
    match kind {
        ConstructionKind::Gartner => {
            for &tau in &inert_real {
                let d = Distinguished::RealPlace(tau);
                if emitted.iter().any(|s| s.distinguished == d) {
                    continue;
                }
                let ramified_real: BTreeSet<usize> = inert_real.iter().copied().filter(|v| *v != tau).collect();
                let n_minus = n_minus_of(&inert_fin);
                let n_plus = n_minus.quotient_of(&p.conductor).unwrap_or_default();
                tried.push(QuaternionAlgebraSpec {
                    kind,
                    distinguished: d,
                    ramified_real,
                    ramified_finite: inert_fin.clone(),
                    n_plus,
                    n_prime: Default::default(),
                    n_minus,
                });
            }
        }
        ConstructionKind::Greenberg => {
            for (q, _) in &p.inert_finite {
                let d = Distinguished::Prime(q.clone());
                if emitted.iter().any(|s| s.distinguished == d) {
                    continue;
                }
                let others: BTreeSet<PrimeIdeal> = inert_fin.iter().filter(|x| *x != q).cloned().collect();
                let n_minus = n_minus_of(&others);
                let n_prime = darmon_core::IdealFactorization::from_pairs([(q.clone(), p.conductor.exponent(q))]);
                let n_plus = n_minus.mul(&n_prime).quotient_of(&p.conductor).unwrap_or_default();
                tried.push(QuaternionAlgebraSpec {
                    kind,
                    distinguished: d,
                    ramified_real: inert_real.clone(),
                    ramified_finite: others,
                    n_plus,
                    n_prime,
                    n_minus,
                });
            }
        }
    }
    tried.into_iter().map(|s| {
        let checks = checks(p, &s, report.options.allow_drop_b4);
        (s, checks)
    }).collect()
}

fn checks(p: &ConductorProfile, s: &QuaternionAlgebraSpec, drop_b4: bool) -> Vec<(&'static str, Status)> {
    let real_type = |v: usize| p.real_classes.iter().find(|c| c.place.index == v).map(|c| c.place_type);
    let fin_type = |q: &PrimeIdeal| p.finite_type(q);
    let inert_real: BTreeSet<usize> = p.inert_real_places().into_iter().collect();
    let inert_fin: BTreeSet<PrimeIdeal> = p.inert_finite.iter().map(|(q, _)| q.clone()).collect();

    let a = s.ramified_real.iter().all(|&v| real_type(v) == Some(PlaceType::Inert))
        && s.ramified_finite.iter().all(|q| fin_type(q) == Some(PlaceType::Inert));
    let iv = s.n_plus.mul(&s.n_prime).mul(&s.n_minus) == p.conductor
        && s.n_plus.is_coprime_to(&s.n_prime)
        && s.n_plus.is_coprime_to(&s.n_minus)
        && s.n_prime.is_coprime_to(&s.n_minus)
        && s.n_minus.is_squarefree();
    let vii = s.ramified_count() % 2 == 0;
    let viii = s.n_minus.support().all(|q| fin_type(q) == Some(PlaceType::Inert))
        && s.n_plus.support().all(|q| fin_type(q) == Some(PlaceType::Split));

    let mut out = vec![("A", Status::of(a))];
    match &s.distinguished {
        Distinguished::RealPlace(tau) => {
            let b1 = real_type(*tau) == Some(PlaceType::Inert)
                && !s.ramified_real.contains(tau)
                && inert_real.len() == s.ramified_real.len() + 1;
            out.push(("B1", Status::of(b1)));
            out.push(("B2", Status::Assumed));
            out.push(("B3", Status::Assumed));
            let b4 = s.ramified_finite == inert_fin && s.n_prime.is_unit();
            out.push(("B4", if drop_b4 && !b4 { Status::Skipped } else { Status::of(b4) }));
        }
        Distinguished::Prime(q) => {
            out.push(("C1", Status::of(s.ramified_real == inert_real)));
            let c2 = fin_type(q) == Some(PlaceType::Inert) && p.conductor.exponent(q) == 1;
            out.push(("C2", Status::of(c2)));
            let others: BTreeSet<PrimeIdeal> = inert_fin.iter().filter(|x| *x != q).cloned().collect();
            out.push(("C3", Status::of(s.ramified_finite == others && p.inert_part_squarefree)));
            out.push(("C4", Status::Assumed));
        }
    }
    out.push(("(iv)", Status::of(iv)));
    out.push(("(vii)", Status::of(vii)));
    out.push(("(viii)", Status::of(viii)));
    out
}
