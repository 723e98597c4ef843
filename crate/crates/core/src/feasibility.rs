//! Sign of the functional equation and selection of quaternion algebras for
//! Gartner's and Greenberg's constructions.
//!
//! Notation: a quaternion algebra `B` over `F` ramifies at a set of real
//! places and at the primes of `N⁻`. Every ramified place must be inert in
//! `K` (Assumption A) and the number of ramified places must be even. Among
//! the inert real places, `r_B` are ramified in `B` and `r_K` split in `B`;
//! among the inert primes dividing `N`, `f_B` ramify in `B` and `f_K` split.
//! `r_B + r_K` and `f_B + f_K` depend only on `K` and `N`, and
//! `r_B + r_K + f_B + f_K` is the exponent of `-1` in the sign.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{ExtensionError, PlaceType, QuadraticExtension};
use crate::field::{IdealFactorization, PrimeIdeal};
use crate::sturm::RealPlace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("prime {0} of N ramifies in K")]
    DiscNotCoprime(String),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteClass {
    pub prime: PrimeIdeal,
    pub exponent: u32,
    pub place_type: PlaceType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealClass {
    pub place: RealPlace,
    pub place_type: PlaceType,
}

/// Splitting data of `N` and of the real places of `F` in `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorProfile {
    pub extension: QuadraticExtension,
    pub conductor: IdealFactorization,
    pub finite_classes: Vec<FiniteClass>,
    pub real_classes: Vec<RealClass>,
    /// `r_B + r_K`.
    pub inert_real_count: usize,
    /// Inert primes dividing `N` with their exponents; the count is `f_B + f_K`.
    pub inert_finite: Vec<(PrimeIdeal, u32)>,
    pub inert_part_squarefree: bool,
    pub disc_coprime: bool,
}

impl ConductorProfile {
    /// Indices of the real places that are inert in `K`.
    pub fn inert_real_places(&self) -> Vec<usize> {
        self.real_classes
            .iter()
            .filter(|c| c.place_type == PlaceType::Inert)
            .map(|c| c.place.index)
            .collect()
    }

    /// Inert primes dividing `N` exactly.
    pub fn exact_inert_primes(&self) -> Vec<PrimeIdeal> {
        self.inert_finite
            .iter()
            .filter(|(_, k)| *k == 1)
            .map(|(q, _)| q.clone())
            .collect()
    }

    pub fn finite_type(&self, q: &PrimeIdeal) -> Option<PlaceType> {
        self.finite_classes
            .iter()
            .find(|c| &c.prime == q)
            .map(|c| c.place_type)
    }

    /// `r_B + r_K + f_B + f_K`.
    pub fn parity_sum(&self) -> usize {
        self.inert_real_count + self.inert_finite.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionKind {
    /// Archimedean construction; one real place split in `B`, inert in `K`.
    Gartner,
    /// `𝔭`-adic construction at an inert prime exactly dividing `N`.
    Greenberg,
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionKind::Gartner => write!(f, "Gartner"),
            ConstructionKind::Greenberg => write!(f, "Greenberg"),
        }
    }
}

/// The place singled out by a construction: `τ₁` for Gartner, `𝔭` for Greenberg.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Distinguished {
    RealPlace(usize),
    Prime(PrimeIdeal),
}

/// One admissible quaternion algebra with its level factorization.
///
/// Field order gives the canonical ordering: kind, distinguished place,
/// then ramification sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuaternionAlgebraSpec {
    pub kind: ConstructionKind,
    pub distinguished: Distinguished,
    /// Indices of real places where `B` ramifies.
    pub ramified_real: BTreeSet<usize>,
    /// Support of `N⁻`.
    pub ramified_finite: BTreeSet<PrimeIdeal>,
    pub n_plus: IdealFactorization,
    pub n_prime: IdealFactorization,
    pub n_minus: IdealFactorization,
}

impl QuaternionAlgebraSpec {
    pub fn ramified_count(&self) -> usize {
        self.ramified_real.len() + self.ramified_finite.len()
    }

    /// True when `B` is the matrix algebra.
    pub fn is_split_algebra(&self) -> bool {
        self.ramified_count() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FailureReason {
    NoInertRealPlace,
    NoExactInertPrime,
    InertPartNotSquarefree,
    SignPlusOne,
    DiscNotCoprime,
    ParityObstruction,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectorOptions {
    /// Let Gartner's construction leave inert primes of `N` unramified in `B`
    /// (placing them in `N′`), subject only to parity.
    pub allow_drop_b4: bool,
}

/// Hypotheses that are never computed and are recorded as assumed.
pub const ASSUMED_TRUE: [&str; 3] = ["B2", "B3", "C4"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub profile: ConductorProfile,
    pub sign: i8,
    pub gartner_options: Vec<QuaternionAlgebraSpec>,
    pub greenberg_options: Vec<QuaternionAlgebraSpec>,
    /// Main-line options exist only under sign −1, and sign −1 with a
    /// squarefree inert part always produces some.
    pub sign_consistent: bool,
    pub failure_reasons: Vec<FailureReason>,
    pub assumed_true: Vec<String>,
    pub options: SelectorOptions,
}

impl FeasibilityReport {
    pub fn all_options(&self) -> impl Iterator<Item = &QuaternionAlgebraSpec> {
        self.gartner_options.iter().chain(&self.greenberg_options)
    }

    /// At least one construction applies and no standing hypothesis failed.
    pub fn is_feasible(&self) -> bool {
        self.all_options().next().is_some()
            && !self.failure_reasons.contains(&FailureReason::DiscNotCoprime)
    }
}

/// Classifies every real place of `F` and every prime divisor of `N`.
pub fn build_profile(
    k: &QuadraticExtension,
    n: &IdealFactorization,
) -> Result<ConductorProfile, FeasibilityError> {
    let mut finite_classes = Vec::with_capacity(n.len());
    for (q, exponent) in n.iter() {
        let place_type = k.classify_finite_prime(q)?;
        if place_type == PlaceType::Ramified {
            return Err(FeasibilityError::DiscNotCoprime(q.to_string()));
        }
        finite_classes.push(FiniteClass { prime: q.clone(), exponent, place_type });
    }
    let real_classes: Vec<RealClass> = k
        .real_place_types()?
        .into_iter()
        .map(|(place, place_type)| RealClass { place, place_type })
        .collect();
    let inert_real_count = real_classes
        .iter()
        .filter(|c| c.place_type == PlaceType::Inert)
        .count();
    let inert_finite: Vec<(PrimeIdeal, u32)> = finite_classes
        .iter()
        .filter(|c| c.place_type == PlaceType::Inert)
        .map(|c| (c.prime.clone(), c.exponent))
        .collect();
    let inert_part_squarefree = inert_finite.iter().all(|(_, k)| *k == 1);
    Ok(ConductorProfile {
        extension: k.clone(),
        conductor: n.clone(),
        finite_classes,
        real_classes,
        inert_real_count,
        inert_finite,
        inert_part_squarefree,
        disc_coprime: true,
    })
}

/// `(-1)^(r_B + r_K + f_B + f_K)`.
pub fn sign_functional_equation(profile: &ConductorProfile) -> i8 {
    if profile.parity_sum() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn product(primes: &BTreeSet<PrimeIdeal>) -> IdealFactorization {
    IdealFactorization::from_pairs(primes.iter().map(|q| (q.clone(), 1)))
}

/// Selector output plus the number of candidates dropped for odd parity.
struct Selection {
    specs: Vec<QuaternionAlgebraSpec>,
    parity_rejected: usize,
}

fn gartner(profile: &ConductorProfile, opts: SelectorOptions) -> Selection {
    let mut out = Selection { specs: Vec::new(), parity_rejected: 0 };
    let inert_real = profile.inert_real_places();
    if inert_real.is_empty() {
        return out;
    }
    let all_inert: Vec<(PrimeIdeal, u32)> = profile.inert_finite.clone();
    // Choices of the finite ramification set. Main line: every inert prime
    // dividing N, which must then divide N exactly.
    let mut finite_choices: Vec<BTreeSet<PrimeIdeal>> = Vec::new();
    if profile.inert_part_squarefree {
        finite_choices.push(all_inert.iter().map(|(q, _)| q.clone()).collect());
    }
    if opts.allow_drop_b4 {
        let exact = profile.exact_inert_primes();
        for mask in 0u64..(1 << exact.len()) {
            let s: BTreeSet<PrimeIdeal> = exact
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, q)| q.clone())
                .collect();
            if !finite_choices.contains(&s) {
                finite_choices.push(s);
            }
        }
    }
    for tau in &inert_real {
        let ramified_real: BTreeSet<usize> =
            inert_real.iter().copied().filter(|v| v != tau).collect();
        for ramified_finite in &finite_choices {
            if (ramified_real.len() + ramified_finite.len()) % 2 == 1 {
                out.parity_rejected += 1;
                continue;
            }
            let n_minus = product(ramified_finite);
            let n_prime = IdealFactorization::from_pairs(
                all_inert
                    .iter()
                    .filter(|(q, _)| !ramified_finite.contains(q))
                    .cloned(),
            );
            let n_plus = n_minus
                .mul(&n_prime)
                .quotient_of(&profile.conductor)
                .expect("inert part divides N");
            out.specs.push(QuaternionAlgebraSpec {
                kind: ConstructionKind::Gartner,
                distinguished: Distinguished::RealPlace(*tau),
                ramified_real: ramified_real.clone(),
                ramified_finite: ramified_finite.clone(),
                n_plus,
                n_prime,
                n_minus,
            });
        }
    }
    out.specs.sort();
    out
}

fn greenberg(profile: &ConductorProfile) -> Selection {
    let mut out = Selection { specs: Vec::new(), parity_rejected: 0 };
    if !profile.inert_part_squarefree {
        return out;
    }
    let ramified_real: BTreeSet<usize> = profile.inert_real_places().into_iter().collect();
    for p in profile.exact_inert_primes() {
        let ramified_finite: BTreeSet<PrimeIdeal> = profile
            .inert_finite
            .iter()
            .map(|(q, _)| q.clone())
            .filter(|q| *q != p)
            .collect();
        if (ramified_real.len() + ramified_finite.len()) % 2 == 1 {
            out.parity_rejected += 1;
            continue;
        }
        let n_minus = product(&ramified_finite);
        let n_prime = IdealFactorization::prime(p.clone());
        let n_plus = n_minus
            .mul(&n_prime)
            .quotient_of(&profile.conductor)
            .expect("inert part divides N");
        out.specs.push(QuaternionAlgebraSpec {
            kind: ConstructionKind::Greenberg,
            distinguished: Distinguished::Prime(p),
            ramified_real: ramified_real.clone(),
            ramified_finite,
            n_plus,
            n_prime,
            n_minus,
        });
    }
    out.specs.sort();
    out
}

/// Every admissible algebra for Gartner's construction: one candidate per
/// choice of the inert real place `τ₁` left split in `B`.
pub fn select_gartner(profile: &ConductorProfile) -> Vec<QuaternionAlgebraSpec> {
    gartner(profile, SelectorOptions::default()).specs
}

pub fn select_gartner_with(
    profile: &ConductorProfile,
    opts: SelectorOptions,
) -> Vec<QuaternionAlgebraSpec> {
    gartner(profile, opts).specs
}

/// Every admissible algebra for Greenberg's construction: one candidate per
/// inert prime `𝔭` exactly dividing `N`.
pub fn select_greenberg(profile: &ConductorProfile) -> Vec<QuaternionAlgebraSpec> {
    greenberg(profile).specs
}

/// Local criterion for an optimal embedding of `O` into an Eichler order of
/// level `N⁺`: primes of `N⁻` inert, primes of `N⁺` split.
pub fn check_optimal_embedding_local(
    spec: &QuaternionAlgebraSpec,
    profile: &ConductorProfile,
) -> bool {
    let has_type = |q: &PrimeIdeal, t: PlaceType| profile.finite_type(q) == Some(t);
    spec.n_minus.support().all(|q| has_type(q, PlaceType::Inert))
        && spec.n_plus.support().all(|q| has_type(q, PlaceType::Split))
}

pub fn feasibility_report(
    k: &QuadraticExtension,
    n: &IdealFactorization,
    order_conductor: Option<&IdealFactorization>,
) -> Result<FeasibilityReport, FeasibilityError> {
    feasibility_report_with(k, n, order_conductor, SelectorOptions::default())
}

pub fn feasibility_report_with(
    k: &QuadraticExtension,
    n: &IdealFactorization,
    order_conductor: Option<&IdealFactorization>,
    opts: SelectorOptions,
) -> Result<FeasibilityReport, FeasibilityError> {
    let profile = build_profile(k, n)?;
    Ok(report_from_profile(profile, order_conductor, opts))
}

pub fn report_from_profile(
    profile: ConductorProfile,
    order_conductor: Option<&IdealFactorization>,
    opts: SelectorOptions,
) -> FeasibilityReport {
    let sign = sign_functional_equation(&profile);
    let g = gartner(&profile, opts);
    let h = greenberg(&profile);
    let embeds = |s: &QuaternionAlgebraSpec| check_optimal_embedding_local(s, &profile);
    let gartner_options: Vec<_> = g.specs.into_iter().filter(|s| embeds(s)).collect();
    let greenberg_options: Vec<_> = h.specs.into_iter().filter(|s| embeds(s)).collect();

    let mut reasons = BTreeSet::new();
    if gartner_options.is_empty() || greenberg_options.is_empty() {
        if profile.inert_real_count == 0 {
            reasons.insert(FailureReason::NoInertRealPlace);
        }
        if profile.exact_inert_primes().is_empty() {
            reasons.insert(FailureReason::NoExactInertPrime);
        }
        if !profile.inert_part_squarefree {
            reasons.insert(FailureReason::InertPartNotSquarefree);
        }
        if sign == 1 {
            reasons.insert(FailureReason::SignPlusOne);
        }
        if g.parity_rejected + h.parity_rejected > 0 {
            reasons.insert(FailureReason::ParityObstruction);
        }
    }
    if let Some(oc) = order_conductor {
        if !oc.is_coprime_to(&profile.conductor) {
            reasons.insert(FailureReason::DiscNotCoprime);
        }
    }

    // The sign constraints hold on the main line, where Gartner's N′ is trivial.
    let main_line_nonempty = !greenberg_options.is_empty()
        || gartner_options.iter().any(|s| s.n_prime.is_unit());
    let sign_minus = sign == -1;
    let sign_consistent = (!main_line_nonempty || sign_minus)
        && (!(sign_minus && profile.inert_part_squarefree && profile.disc_coprime)
            || main_line_nonempty);

    FeasibilityReport {
        profile,
        sign,
        gartner_options,
        greenberg_options,
        sign_consistent,
        failure_reasons: reasons.into_iter().collect(),
        assumed_true: ASSUMED_TRUE.iter().map(|s| s.to_string()).collect(),
        options: opts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{IdealInput, NumberField};
    use crate::poly::ZPoly;

    fn over_q(delta: i64, n: i64) -> (QuadraticExtension, IdealFactorization) {
        let q = NumberField::parse(&[0, 1]).unwrap();
        let k = QuadraticExtension::new(q.clone(), &[delta]).unwrap();
        let n = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[n]))).unwrap();
        (k, n)
    }

    fn atr() -> QuadraticExtension {
        let f = NumberField::parse(&[-2, 0, 1]).unwrap();
        QuadraticExtension::new(f, &[0, 1]).unwrap()
    }

    #[test]
    fn profile_examples() {
        let (k, n) = over_q(5, 22);
        let p = build_profile(&k, &n).unwrap();
        assert_eq!(p.inert_real_count, 0);
        assert_eq!(p.inert_finite.len(), 1);
        assert_eq!((p.inert_finite[0].0.p, p.inert_finite[0].1), (2, 1));
        assert!(p.inert_part_squarefree);

        let p = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
        assert_eq!(p.inert_real_count, 1);
        assert!(p.inert_finite.is_empty());

        let (k, n) = over_q(5, 15);
        assert!(matches!(build_profile(&k, &n), Err(FeasibilityError::DiscNotCoprime(_))));
    }

    #[test]
    fn sign_examples() {
        let (k, n) = over_q(5, 22);
        assert_eq!(sign_functional_equation(&build_profile(&k, &n).unwrap()), -1);
        let (k, n) = over_q(5, 6);
        assert_eq!(sign_functional_equation(&build_profile(&k, &n).unwrap()), 1);
        let p = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
        assert_eq!(sign_functional_equation(&p), -1);
    }

    #[test]
    fn greenberg_for_q_sqrt5_level_22() {
        let (k, n) = over_q(5, 22);
        let profile = build_profile(&k, &n).unwrap();
        assert!(select_gartner(&profile).is_empty());
        let specs = select_greenberg(&profile);
        assert_eq!(specs.len(), 1);
        let s = &specs[0];
        assert_eq!(s.n_prime.support().next().unwrap().p, 2);
        assert_eq!(s.n_plus.support().map(|q| q.p).collect::<Vec<_>>(), vec![11]);
        assert!(s.n_minus.is_unit());
        assert!(s.is_split_algebra());
        assert!(check_optimal_embedding_local(s, &profile));
    }

    #[test]
    fn gartner_atr_case() {
        let profile = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
        let specs = select_gartner(&profile);
        assert_eq!(specs.len(), 1);
        // The place θ ↦ -√2 comes first in ascending order.
        assert_eq!(specs[0].distinguished, Distinguished::RealPlace(1));
        assert!(specs[0].is_split_algebra());
        assert!(specs[0].n_plus.is_unit() && specs[0].n_prime.is_unit());
        assert!(select_greenberg(&profile).is_empty());
        assert!(check_optimal_embedding_local(&specs[0], &profile));
    }

    #[test]
    fn parity_rejections() {
        let (k, n) = over_q(5, 66);
        let profile = build_profile(&k, &n).unwrap();
        assert!(select_greenberg(&profile).is_empty());
        assert_eq!(greenberg(&profile).parity_rejected, 2);

        let (k, n) = over_q(5, 4);
        let report = feasibility_report(&k, &n, None).unwrap();
        assert!(report.all_options().next().is_none());
        assert!(report.failure_reasons.contains(&FailureReason::NoExactInertPrime));
        assert!(report.failure_reasons.contains(&FailureReason::InertPartNotSquarefree));
    }

    #[test]
    fn embedding_check_rejects_inert_prime_in_level() {
        let (k, n) = over_q(5, 22);
        let profile = build_profile(&k, &n).unwrap();
        let mut bad = select_greenberg(&profile).remove(0);
        std::mem::swap(&mut bad.n_plus, &mut bad.n_prime);
        assert!(!check_optimal_embedding_local(&bad, &profile));
    }

    #[test]
    fn report_examples() {
        let (k, n) = over_q(5, 22);
        let r = feasibility_report(&k, &n, None).unwrap();
        assert_eq!((r.sign, r.gartner_options.len(), r.greenberg_options.len()), (-1, 0, 1));
        assert!(r.sign_consistent && r.is_feasible());

        let r = feasibility_report(&atr(), &IdealFactorization::unit(), None).unwrap();
        assert_eq!((r.sign, r.gartner_options.len(), r.greenberg_options.len()), (-1, 1, 0));
        assert!(r.sign_consistent);

        let (k, n) = over_q(5, 6);
        let r = feasibility_report(&k, &n, None).unwrap();
        assert_eq!((r.sign, r.gartner_options.len(), r.greenberg_options.len()), (1, 0, 0));
        assert!(r.sign_consistent);
        assert!(r.failure_reasons.contains(&FailureReason::SignPlusOne));
    }

    #[test]
    fn order_conductor_must_be_coprime() {
        let (k, n) = over_q(5, 22);
        let q = NumberField::parse(&[0, 1]).unwrap();
        let bad = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[11]))).unwrap();
        let r = feasibility_report(&k, &n, Some(&bad)).unwrap();
        assert!(r.failure_reasons.contains(&FailureReason::DiscNotCoprime));
        assert!(!r.is_feasible());
        let good = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[3]))).unwrap();
        assert!(feasibility_report(&k, &n, Some(&good)).unwrap().is_feasible());
    }

    #[test]
    fn dropping_b4_widens_gartner() {
        // K = Q(√2)(√θ) with N a split prime times an inert prime.
        let k = atr();
        let f = k.base.clone();
        let inert = [3u64, 5, 7, 11, 13, 17, 19, 23]
            .iter()
            .flat_map(|&p| f.primes_above(p).unwrap())
            .find(|q| k.classify_finite_prime(q).unwrap() == PlaceType::Inert)
            .unwrap();
        let n = IdealFactorization::prime(inert);
        let profile = build_profile(&k, &n).unwrap();
        // r = 1, f = 1: sign +1, main line empty.
        assert!(select_gartner(&profile).is_empty());
        let widened = select_gartner_with(&profile, SelectorOptions { allow_drop_b4: true });
        assert_eq!(widened.len(), 1);
        assert!(widened[0].n_minus.is_unit());
        assert_eq!(widened[0].n_prime, n);
        let r = report_from_profile(profile, None, SelectorOptions { allow_drop_b4: true });
        assert_eq!(r.sign, 1);
        assert!(r.sign_consistent);
    }
}
