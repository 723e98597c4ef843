use darmon_core::extension::ExtensionError;
use darmon_core::feasibility::{report_from_profile, select_gartner, select_greenberg};
use darmon_core::{
    build_profile, check_optimal_embedding_local, feasibility_report, enumerate_admissible,
    sign_functional_equation, Distinguished, FailureReason, FeasibilityError, FieldError,
    IdealFactorization, IdealInput, NumberField, PlaceType, PrimeIdeal, QuadraticExtension,
    SelectorOptions, ZPoly,
};

fn field(c: &[i64]) -> NumberField {
    NumberField::parse(c).unwrap()
}

fn q() -> NumberField {
    field(&[0, 1])
}

fn cubic() -> NumberField {
    field(&[-1, -2, 1, 1])
}

fn gen(f: &NumberField, g: &[i64]) -> IdealFactorization {
    f.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(g))).unwrap()
}

fn q_sqrt(d: i64) -> QuadraticExtension {
    QuadraticExtension::new(q(), &[d]).unwrap()
}

fn atr() -> QuadraticExtension {
    QuadraticExtension::new(field(&[-2, 0, 1]), &[0, 1]).unwrap()
}

/// The prime of the cubic above 13 with residue `θ ≡ 8`, inert in `F(√θ)`.
fn cubic_inert_13() -> PrimeIdeal {
    PrimeIdeal { p: 13, local_factor: vec![5, 1], e: 1, f: 1 }
}

#[test]
fn field_parsing() {
    assert_eq!(field(&[1]).degree, 1);
    assert_eq!(field(&[0, 1]).degree, 1);
    assert_eq!(field(&[-2, 0, 1]).real_embeddings().len(), 2);
    let c = cubic();
    assert_eq!(c.real_embeddings().len(), 3);
    assert_eq!(c.discriminant, 49.into());
    assert!(matches!(NumberField::parse(&[1, 0, 1]), Err(FieldError::NotTotallyReal { .. })));
    assert!(matches!(NumberField::parse(&[-4, 0, 1]), Err(FieldError::NotIrreducible)));
    assert!(matches!(NumberField::parse(&[1, 2]), Err(FieldError::NotMonic)));
}

#[test]
fn real_places_are_ascending() {
    let approx: Vec<f64> = cubic().real_embeddings().iter().map(|v| v.approx()).collect();
    for (got, want) in approx.iter().zip([-1.80194, -0.44504, 1.24698]) {
        assert!((got - want).abs() < 1e-4, "{approx:?}");
    }
    let s2 = field(&[-2, 0, 1]);
    let places = s2.real_embeddings();
    assert!(places[0].hi < places[1].lo);
    assert!((places[1].approx() - 2f64.sqrt()).abs() < 1e-6);
}

#[test]
fn primes_above_examples() {
    let s2 = field(&[-2, 0, 1]);
    let seven = s2.primes_above(7).unwrap();
    assert_eq!(seven.len(), 2);
    assert!(seven.iter().all(|q| q.e == 1 && q.f == 1));
    let five = s2.primes_above(5).unwrap();
    assert_eq!((five.len(), five[0].e, five[0].f), (1, 1, 2));
    let two = s2.primes_above(2).unwrap();
    assert_eq!((two.len(), two[0].e, two[0].f), (1, 2, 1));
    let c = cubic();
    let seven = c.primes_above(7).unwrap();
    assert_eq!((seven.len(), seven[0].e), (1, 3));
    assert_eq!(c.primes_above(13).unwrap().len(), 3);
}

#[test]
fn ideal_factorization_examples() {
    let f = q();
    let n = gen(&f, &[22]);
    let ps: Vec<u64> = n.support().map(|q| q.p).collect();
    assert_eq!(ps, [2, 11]);
    assert!(gen(&f, &[1]).is_unit());
    let s2 = field(&[-2, 0, 1]);
    let theta = gen(&s2, &[0, 1]);
    let (q2, k) = theta.iter().next().unwrap();
    assert_eq!((theta.len(), q2.p, q2.e, k), (1, 2, 2, 1));
    assert!(matches!(
        f.factor_ideal(&IdealInput::Generator(ZPoly::zero())),
        Err(FieldError::ZeroGenerator)
    ));
}

#[test]
fn extension_construction() {
    assert_eq!(q_sqrt(5).nonsquare_certificate.p, 3);
    assert!(matches!(QuadraticExtension::new(q(), &[-1]), Err(ExtensionError::NoRealPlace)));
    assert!(matches!(QuadraticExtension::new(q(), &[9]), Err(ExtensionError::IsSquare)));
    assert!(matches!(QuadraticExtension::new(q(), &[0]), Err(ExtensionError::ZeroDelta)));
    let s2 = field(&[-2, 0, 1]);
    assert!(matches!(
        QuadraticExtension::new(s2.clone(), &[3, 2]),
        Err(ExtensionError::IsSquare)
    ));
    assert!(QuadraticExtension::new(s2, &[0, 1]).is_ok());
}

#[test]
fn classification_examples() {
    let k = q_sqrt(5);
    let f = q();
    let at = |p| f.primes_above(p).unwrap().remove(0);
    assert_eq!(k.classify_finite_prime(&at(11)).unwrap(), PlaceType::Split);
    assert_eq!(k.classify_finite_prime(&at(2)).unwrap(), PlaceType::Inert);
    assert_eq!(k.classify_finite_prime(&at(5)).unwrap(), PlaceType::Ramified);
    assert_eq!(k.classify_finite_prime(&at(3)).unwrap(), PlaceType::Inert);
    assert_eq!(k.real_place_types().unwrap()[0].1, PlaceType::Split);

    let types: Vec<PlaceType> = atr().real_place_types().unwrap().into_iter().map(|x| x.1).collect();
    assert_eq!(types, [PlaceType::Inert, PlaceType::Split]);

    assert!(k.disc_coprime_to(&gen(&f, &[22])).unwrap());
    assert!(!k.disc_coprime_to(&gen(&f, &[15])).unwrap());
    assert!(k.disc_coprime_to(&IdealFactorization::unit()).unwrap());
}

#[test]
fn cubic_classification() {
    let c = cubic();
    let k = QuadraticExtension::new(c.clone(), &[0, 1]).unwrap();
    let types: Vec<PlaceType> = k.real_place_types().unwrap().into_iter().map(|x| x.1).collect();
    assert_eq!(types, [PlaceType::Inert, PlaceType::Inert, PlaceType::Split]);
    let mut found: Vec<(Vec<u64>, PlaceType)> = c
        .primes_above(13)
        .unwrap()
        .into_iter()
        .map(|q| (q.local_factor.clone(), k.classify_finite_prime(&q).unwrap()))
        .collect();
    found.sort();
    assert_eq!(
        found,
        [
            (vec![3, 1], PlaceType::Split),
            (vec![5, 1], PlaceType::Inert),
            (vec![6, 1], PlaceType::Inert)
        ]
    );
    for (p, t) in [(2, PlaceType::Ramified), (3, PlaceType::Split), (5, PlaceType::Split)] {
        let q = c.primes_above(p).unwrap().remove(0);
        assert_eq!(k.classify_finite_prime(&q).unwrap(), t, "p = {p}");
    }
}

#[test]
fn profiles_and_signs() {
    let f = q();
    let p = build_profile(&q_sqrt(5), &gen(&f, &[22])).unwrap();
    assert_eq!((p.inert_real_count, p.inert_finite.len(), p.inert_part_squarefree), (0, 1, true));
    assert_eq!(sign_functional_equation(&p), -1);
    let p = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
    assert_eq!((p.inert_real_count, p.inert_finite.len()), (1, 0));
    assert_eq!(sign_functional_equation(&p), -1);
    let p = build_profile(&q_sqrt(5), &gen(&f, &[6])).unwrap();
    assert_eq!(sign_functional_equation(&p), 1);
    assert!(matches!(
        build_profile(&q_sqrt(5), &gen(&f, &[15])),
        Err(FeasibilityError::DiscNotCoprime(_))
    ));
}

#[test]
fn gartner_examples() {
    let p = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
    let [s] = select_gartner(&p).try_into().unwrap();
    assert_eq!(s.distinguished, Distinguished::RealPlace(1));
    assert!(s.is_split_algebra() && s.n_plus.is_unit() && s.n_prime.is_unit());
    assert!(check_optimal_embedding_local(&s, &p));

    let f = q();
    assert!(select_gartner(&build_profile(&q_sqrt(5), &gen(&f, &[22])).unwrap()).is_empty());

    let k = QuadraticExtension::new(cubic(), &[0, 1]).unwrap();
    let n = IdealFactorization::prime(cubic_inert_13());
    let p = build_profile(&k, &n).unwrap();
    let specs = select_gartner(&p);
    assert_eq!(specs.len(), 2);
    assert!(specs.iter().all(|s| s.ramified_real.len() == 1 && s.ramified_finite.len() == 1));
    assert_eq!(enumerate_admissible(&p, None).unwrap().len(), 3);

    let r = feasibility_report(&k, &IdealFactorization::unit(), None).unwrap();
    assert_eq!(r.sign, 1);
    assert!(r.all_options().next().is_none());
    assert!(r.failure_reasons.contains(&FailureReason::ParityObstruction));
}

#[test]
fn greenberg_examples() {
    let f = q();
    let p = build_profile(&q_sqrt(5), &gen(&f, &[22])).unwrap();
    let [s] = select_greenberg(&p).try_into().unwrap();
    assert!(matches!(&s.distinguished, Distinguished::Prime(q) if q.p == 2));
    assert_eq!(s.n_plus, gen(&f, &[11]));
    assert_eq!(s.n_prime, gen(&f, &[2]));
    assert!(s.n_minus.is_unit() && s.is_split_algebra());
    assert!(check_optimal_embedding_local(&s, &p));

    let mut bad = s.clone();
    std::mem::swap(&mut bad.n_plus, &mut bad.n_prime);
    assert!(!check_optimal_embedding_local(&bad, &p));

    let p = build_profile(&q_sqrt(5), &gen(&f, &[66])).unwrap();
    assert!(select_greenberg(&p).is_empty());
    let r = report_from_profile(p, None, SelectorOptions::default());
    assert!(r.failure_reasons.contains(&FailureReason::ParityObstruction));
    assert_eq!(r.sign, 1);

    let r = feasibility_report(&q_sqrt(5), &gen(&f, &[4]), None).unwrap();
    assert!(r.all_options().next().is_none());
    assert!(r.failure_reasons.contains(&FailureReason::NoExactInertPrime));
    assert!(r.failure_reasons.contains(&FailureReason::InertPartNotSquarefree));
}

#[test]
fn report_examples() {
    let f = q();
    let r = feasibility_report(&q_sqrt(5), &gen(&f, &[22]), None).unwrap();
    assert_eq!((r.sign, r.gartner_options.len(), r.greenberg_options.len()), (-1, 0, 1));
    assert!(r.sign_consistent && r.is_feasible());
    let r = feasibility_report(&atr(), &IdealFactorization::unit(), None).unwrap();
    assert_eq!((r.sign, r.gartner_options.len(), r.greenberg_options.len()), (-1, 1, 0));
    assert!(r.sign_consistent);
    let r = feasibility_report(&q_sqrt(5), &gen(&f, &[6]), None).unwrap();
    assert_eq!((r.sign, r.all_options().count()), (1, 0));
    assert!(r.sign_consistent);
    assert!(r.failure_reasons.contains(&FailureReason::SignPlusOne));
    assert_eq!(r.assumed_true, ["B2", "B3", "C4"]);
}

#[test]
fn order_conductor_must_be_coprime() {
    let f = q();
    let n = gen(&f, &[22]);
    let r = feasibility_report(&q_sqrt(5), &n, Some(&gen(&f, &[2]))).unwrap();
    assert!(r.failure_reasons.contains(&FailureReason::DiscNotCoprime));
    assert!(!r.is_feasible());
    let r = feasibility_report(&q_sqrt(5), &n, Some(&gen(&f, &[3]))).unwrap();
    assert!(r.is_feasible());
}

#[test]
fn dropping_b4_moves_inert_primes_to_level() {
    let f = field(&[-2, 0, 1]);
    let k = QuadraticExtension::new(f.clone(), &[0, 1]).unwrap();
    let n = gen(&f, &[7]);
    let p = build_profile(&k, &n).unwrap();
    let [(inert, 1)] = p.inert_finite.as_slice() else { panic!("{:?}", p.inert_finite) };
    let inert = inert.clone();
    assert_eq!(sign_functional_equation(&p), 1);
    assert!(select_gartner(&p).is_empty());
    let r = report_from_profile(p, None, SelectorOptions { allow_drop_b4: true });
    let [s] = r.gartner_options.as_slice() else { panic!("{:?}", r.gartner_options) };
    assert_eq!(s.n_prime, IdealFactorization::prime(inert));
    assert!(s.is_split_algebra());
    assert!(r.sign_consistent);
}

#[test]
fn oracle_examples() {
    let f = q();
    let p = build_profile(&q_sqrt(5), &gen(&f, &[6])).unwrap();
    assert!(enumerate_admissible(&p, None).unwrap().is_empty());
    let p = build_profile(&atr(), &IdealFactorization::unit()).unwrap();
    assert_eq!(enumerate_admissible(&p, None).unwrap(), select_gartner(&p));
}
