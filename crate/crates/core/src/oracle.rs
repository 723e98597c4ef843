//! Brute-force enumeration of admissible quaternion data.
//!
//! Every candidate ramification set `S_∞ ∪ S_f` of even size drawn from the
//! places of `F` that are inert in `K`, and every level split
//! `N = N⁺·N′·N⁻` with `N⁻ = ∏ S_f`, is tested against the construction
//! hypotheses one predicate at a time. Nothing here calls into the selectors.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::extension::PlaceType;
use crate::feasibility::{ConductorProfile, ConstructionKind, Distinguished, QuaternionAlgebraSpec};
use crate::field::{IdealFactorization, PrimeIdeal};
use crate::par::{self, Execution};

/// Largest number of inert places the oracle will enumerate subsets of.
pub const MAX_SEARCH_PLACES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} inert places exceed the oracle search bound of {MAX_SEARCH_PLACES}")]
    SearchSpaceTooLarge(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub kind_filter: Option<ConstructionKind>,
    /// Drop Assumption B4: Gartner candidates may leave inert primes of `N`
    /// unramified in `B`, in which case they go into `N′`.
    pub relax_b4: bool,
    pub execution: Execution,
}

pub fn enumerate_admissible(
    profile: &ConductorProfile,
    kind_filter: Option<ConstructionKind>,
) -> Result<Vec<QuaternionAlgebraSpec>, OracleError> {
    enumerate_admissible_with(profile, OracleOptions { kind_filter, ..Default::default() })
}

/// Facts about `K` and `N` read off the profile's raw classification lists.
struct Facts<'a> {
    profile: &'a ConductorProfile,
    real_inert: Vec<usize>,
    finite_inert: Vec<PrimeIdeal>,
}

impl Facts<'_> {
    fn real_type(&self, v: usize) -> Option<PlaceType> {
        self.profile
            .real_classes
            .iter()
            .find(|c| c.place.index == v)
            .map(|c| c.place_type)
    }

    fn finite_type(&self, q: &PrimeIdeal) -> Option<PlaceType> {
        self.profile
            .finite_classes
            .iter()
            .find(|c| &c.prime == q)
            .map(|c| c.place_type)
    }

    fn exponent_in_n(&self, q: &PrimeIdeal) -> u32 {
        self.profile.conductor.exponent(q)
    }
}

pub fn enumerate_admissible_with(
    profile: &ConductorProfile,
    opts: OracleOptions,
) -> Result<Vec<QuaternionAlgebraSpec>, OracleError> {
    let real_inert: Vec<usize> = profile
        .real_classes
        .iter()
        .filter(|c| c.place_type == PlaceType::Inert)
        .map(|c| c.place.index)
        .collect();
    let finite_inert: Vec<PrimeIdeal> = profile
        .finite_classes
        .iter()
        .filter(|c| c.place_type == PlaceType::Inert)
        .map(|c| c.prime.clone())
        .collect();
    let places = real_inert.len() + finite_inert.len();
    if places > MAX_SEARCH_PLACES {
        return Err(OracleError::SearchSpaceTooLarge(places));
    }
    let facts = Facts { profile, real_inert, finite_inert };
    let mut found = par::flat_map_range(opts.execution, 1u64 << places, |mask| {
        candidates_for_mask(&facts, mask, opts)
    });
    found.sort();
    found.dedup();
    Ok(found)
}

fn candidates_for_mask(facts: &Facts, mask: u64, opts: OracleOptions) -> Vec<QuaternionAlgebraSpec> {
    let nr = facts.real_inert.len();
    let ramified_real: BTreeSet<usize> = facts
        .real_inert
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    let ramified_finite: BTreeSet<PrimeIdeal> = facts
        .finite_inert
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (nr + i) & 1 == 1)
        .map(|(_, q)| q.clone())
        .collect();
    // (vii): a quaternion algebra ramifies at an even number of places.
    if (ramified_real.len() + ramified_finite.len()) % 2 != 0 {
        return Vec::new();
    }
    // N⁻ is the squarefree product of the finite ramified primes and must
    // carry their full power in N.
    if ramified_finite.iter().any(|q| facts.exponent_in_n(q) != 1) {
        return Vec::new();
    }
    let n_minus = IdealFactorization::from_pairs(ramified_finite.iter().map(|q| (q.clone(), 1)));

    let mut level_primes: Vec<IdealFactorization> = vec![IdealFactorization::unit()];
    for q in &facts.finite_inert {
        if facts.exponent_in_n(q) == 1 && !ramified_finite.contains(q) {
            level_primes.push(IdealFactorization::prime(q.clone()));
        }
    }
    if opts.relax_b4 {
        let free: Vec<&PrimeIdeal> = facts
            .finite_inert
            .iter()
            .filter(|q| !ramified_finite.contains(*q))
            .collect();
        for sub in 0u64..(1 << free.len()) {
            let n_prime = IdealFactorization::from_pairs(
                free.iter()
                    .enumerate()
                    .filter(|(i, _)| sub >> i & 1 == 1)
                    .map(|(_, q)| ((*q).clone(), facts.exponent_in_n(q))),
            );
            if !level_primes.contains(&n_prime) {
                level_primes.push(n_prime);
            }
        }
    }

    let mut out = Vec::new();
    for n_prime in level_primes {
        let Some(n_plus) = n_minus.mul(&n_prime).quotient_of(&facts.profile.conductor) else {
            continue;
        };
        let candidate = |kind, distinguished| QuaternionAlgebraSpec {
            kind,
            distinguished,
            ramified_real: ramified_real.clone(),
            ramified_finite: ramified_finite.clone(),
            n_plus: n_plus.clone(),
            n_prime: n_prime.clone(),
            n_minus: n_minus.clone(),
        };
        if opts.kind_filter != Some(ConstructionKind::Greenberg) {
            if let Some(tau) = gartner_place(facts, &ramified_real) {
                let spec = candidate(ConstructionKind::Gartner, Distinguished::RealPlace(tau));
                if common_requirements(facts, &spec) && gartner_requirements(facts, &spec, opts.relax_b4) {
                    out.push(spec);
                }
            }
        }
        if opts.kind_filter != Some(ConstructionKind::Gartner) {
            if let Some(p) = single_prime(&n_prime) {
                let spec = candidate(ConstructionKind::Greenberg, Distinguished::Prime(p));
                if common_requirements(facts, &spec) && greenberg_requirements(facts, &spec) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// B1: the unique real place where `B` splits but `K` does not.
fn gartner_place(facts: &Facts, ramified_real: &BTreeSet<usize>) -> Option<usize> {
    let split_in_b_inert_in_k: Vec<usize> = facts
        .profile
        .real_classes
        .iter()
        .map(|c| c.place.index)
        .filter(|v| !ramified_real.contains(v) && facts.real_type(*v) == Some(PlaceType::Inert))
        .collect();
    match split_in_b_inert_in_k.as_slice() {
        [tau] => Some(*tau),
        _ => None,
    }
}

fn single_prime(ideal: &IdealFactorization) -> Option<PrimeIdeal> {
    let mut it = ideal.iter();
    match (it.next(), it.next()) {
        (Some((q, 1)), None) => Some(q.clone()),
        _ => None,
    }
}

/// A, (iv), (vii), (viii).
fn common_requirements(facts: &Facts, spec: &QuaternionAlgebraSpec) -> bool {
    // A: every ramified place, archimedean or not, is inert in K.
    let a = spec.ramified_real.iter().all(|&v| facts.real_type(v) == Some(PlaceType::Inert))
        && spec.ramified_finite.iter().all(|q| facts.finite_type(q) == Some(PlaceType::Inert));
    // (iv): N = N⁺N′N⁻, pairwise coprime, N⁻ squarefree and inert.
    let product = spec.n_plus.mul(&spec.n_prime).mul(&spec.n_minus);
    let iv = product == facts.profile.conductor
        && spec.n_plus.is_coprime_to(&spec.n_prime)
        && spec.n_plus.is_coprime_to(&spec.n_minus)
        && spec.n_prime.is_coprime_to(&spec.n_minus)
        && spec.n_minus.is_squarefree()
        && spec.n_minus.support().cloned().collect::<BTreeSet<_>>() == spec.ramified_finite;
    // (vii): even number of ramified places.
    let vii = (spec.ramified_real.len() + spec.ramified_finite.len()) % 2 == 0;
    // (viii): primes of N⁻ inert, primes of N⁺ split.
    let viii = spec.n_minus.support().all(|q| facts.finite_type(q) == Some(PlaceType::Inert))
        && spec.n_plus.support().all(|q| facts.finite_type(q) == Some(PlaceType::Split));
    a && iv && vii && viii
}

/// B1, B4 and `N′ = 1`.
fn gartner_requirements(facts: &Facts, spec: &QuaternionAlgebraSpec, relax_b4: bool) -> bool {
    let b1 = matches!(spec.distinguished, Distinguished::RealPlace(tau)
        if !spec.ramified_real.contains(&tau) && facts.real_type(tau) == Some(PlaceType::Inert))
        && facts.real_inert.len() == spec.ramified_real.len() + 1;
    if relax_b4 {
        // N′ collects the inert primes left unramified in B.
        let rest: BTreeSet<PrimeIdeal> = facts
            .finite_inert
            .iter()
            .filter(|q| !spec.ramified_finite.contains(*q))
            .cloned()
            .collect();
        return b1 && spec.n_prime.support().cloned().collect::<BTreeSet<_>>() == rest;
    }
    let b4 = spec.ramified_finite == facts.finite_inert.iter().cloned().collect();
    b1 && b4 && spec.n_prime.is_unit()
}

/// C1, C2, C3.
fn greenberg_requirements(facts: &Facts, spec: &QuaternionAlgebraSpec) -> bool {
    let Distinguished::Prime(p) = &spec.distinguished else {
        return false;
    };
    let c1 = spec.ramified_real == facts.real_inert.iter().copied().collect();
    let c2 = facts.exponent_in_n(p) == 1
        && facts.finite_type(p) == Some(PlaceType::Inert)
        && spec.n_prime == IdealFactorization::prime(p.clone());
    let inert_part_squarefree = facts.finite_inert.iter().all(|q| facts.exponent_in_n(q) == 1);
    let others: BTreeSet<PrimeIdeal> =
        facts.finite_inert.iter().filter(|q| *q != p).cloned().collect();
    let c3 = inert_part_squarefree && spec.ramified_finite == others;
    c1 && c2 && c3
}
