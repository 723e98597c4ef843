//! Monogenic totally real number fields `F = Q(θ)`, their real places, and
//! prime ideals of `Z[θ]` in Kummer-Dedekind form.
//!
//! All arithmetic happens in `Z[θ] = Z[x]/(f)`. A rational prime dividing
//! `disc(f)` is flagged as an index-warning prime; such a prime is still
//! usable when Dedekind's criterion certifies that `Z[θ]` is maximal at it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, trial_factor, DEFAULT_TRIAL_BOUND};
use crate::poly::{det_bareiss, factor_order, FpPoly, ZPoly};
use crate::sturm::{isolate_real_roots, width_bound, RealPlace, SturmChain};

/// Default width of certified root intervals, as a power of two.
pub const DEFAULT_PRECISION_BITS: u32 = 32;
/// Largest supported field degree.
pub const MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("defining polynomial is reducible over the rationals")]
    NotIrreducible,
    #[error("defining polynomial has {real_roots} real roots, expected {degree}")]
    NotTotallyReal { real_roots: usize, degree: usize },
    #[error("degree {0} is not supported (1 <= d <= 4)")]
    DegreeUnsupported(usize),
    #[error("Z[θ] may be non-maximal at {p}; supply the prime ideals above {p} explicitly")]
    IndexObstruction { p: u64 },
    #[error("norm {norm} has no complete factorization below the trial bound {bound}")]
    NormTooLarge { norm: BigInt, bound: u64 },
    #[error("valuations above {p} do not account for the norm")]
    AmbiguousValuation { p: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid prime ideal data: {0}")]
    InvalidPrime(String),
    #[error("prime ideal {0} listed twice")]
    DuplicatePrime(String),
    #[error("generator is zero")]
    ZeroGenerator,
}

/// A prime of `F` lying over `p`, written as `(p, g(θ))` with `g` a monic
/// irreducible factor of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Ascending coefficients of the monic local factor, reduced mod `p`.
    pub local_factor: Vec<u64>,
    pub e: u32,
    pub f: u32,
}

impl PrimeIdeal {
    pub fn local_poly(&self) -> FpPoly {
        FpPoly::new(self.p, self.local_factor.clone())
    }

    /// Size of the residue field.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| factor_order(&self.local_poly(), &other.local_poly()))
            .then_with(|| self.e.cmp(&other.e))
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.local_factor.len() == 2 && self.local_factor[0] == 0 {
            write!(f, "({}, θ)", self.p)
        } else {
            let g = self.local_poly().to_string().replace('x', "θ");
            write!(f, "({}, {})", self.p, g)
        }
    }
}

/// Wire form of one factor of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFactor {
    pub p: u64,
    pub local_factor: Vec<u64>,
    pub e: u32,
    pub f: u32,
    pub exponent: u32,
}

/// An integral ideal in factored form. The empty map is the unit ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<IdealFactor>", into = "Vec<IdealFactor>")]
pub struct IdealFactorization {
    factors: BTreeMap<PrimeIdeal, u32>,
}

impl From<Vec<IdealFactor>> for IdealFactorization {
    fn from(v: Vec<IdealFactor>) -> Self {
        IdealFactorization::from_pairs(v.into_iter().map(|x| {
            (PrimeIdeal { p: x.p, local_factor: x.local_factor, e: x.e, f: x.f }, x.exponent)
        }))
    }
}

impl From<IdealFactorization> for Vec<IdealFactor> {
    fn from(v: IdealFactorization) -> Self {
        v.factors
            .into_iter()
            .map(|(q, exponent)| IdealFactor {
                p: q.p,
                local_factor: q.local_factor,
                e: q.e,
                f: q.f,
                exponent,
            })
            .collect()
    }
}

impl IdealFactorization {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Builds from `(prime, exponent)` pairs, summing repeated primes and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Self {
        let mut factors = BTreeMap::new();
        for (q, k) in pairs {
            if k > 0 {
                *factors.entry(q).or_insert(0) += k;
            }
        }
        IdealFactorization { factors }
    }

    pub fn prime(q: PrimeIdeal) -> Self {
        Self::from_pairs([(q, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, q: &PrimeIdeal) -> u32 {
        self.factors.get(q).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeIdeal, u32)> {
        self.factors.iter().map(|(q, &k)| (q, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.factors.keys()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.values().all(|&k| k == 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()).map(|(q, k)| (q.clone(), k)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(q, k)| other.exponent(q) >= k)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Self::from_pairs(
            other.iter().map(|(q, k)| (q.clone(), k - self.exponent(q))),
        ))
    }

    pub fn is_coprime_to(&self, other: &Self) -> bool {
        self.support().all(|q| other.exponent(q) == 0)
    }

    /// Norm as a rational integer.
    pub fn norm(&self) -> BigUint {
        self.iter()
            .map(|(q, k)| q.norm().pow(k))
            .fold(BigUint::one(), |a, b| a * b)
    }
}

impl fmt::Display for IdealFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(q, k)| if k == 1 { q.to_string() } else { format!("{q}^{k}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// How an ideal is presented to [`NumberField::factor_ideal`].
#[derive(Clone, Debug)]
pub enum IdealInput {
    Factored(Vec<(PrimeIdeal, u32)>),
    /// Principal ideal generated by an element of `Z[θ]`, ascending coefficients.
    Generator(ZPoly),
}

/// A validated totally real field `Q(θ)` with `θ` a root of `defining_poly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberField {
    pub degree: usize,
    pub defining_poly: ZPoly,
    #[serde(with = "crate::decimal::int")]
    pub discriminant: BigInt,
    /// Primes dividing `disc(defining_poly)`.
    pub index_warning_primes: Vec<u64>,
    pub places: Vec<RealPlace>,
    pub trial_bound: u64,
}

impl NumberField {
    /// Validates ascending integer coefficients of a monic polynomial.
    pub fn parse(coefficients: &[i64]) -> Result<Self, FieldError> {
        Self::parse_with(coefficients, DEFAULT_PRECISION_BITS)
    }

    pub fn parse_with(coefficients: &[i64], precision_bits: u32) -> Result<Self, FieldError> {
        Self::from_poly(ZPoly::from_i64(coefficients), precision_bits)
    }

    /// The constant list `[1]` is read as shorthand for `x`, i.e. `F = Q`.
    pub fn from_poly(poly: ZPoly, precision_bits: u32) -> Result<Self, FieldError> {
        let poly = if poly == ZPoly::from_i64(&[1]) { ZPoly::from_i64(&[0, 1]) } else { poly };
        let degree = match poly.degree() {
            None | Some(0) => return Err(FieldError::DegreeUnsupported(0)),
            Some(d) => d,
        };
        if !poly.is_monic() {
            return Err(FieldError::NotMonic);
        }
        if degree > MAX_DEGREE {
            return Err(FieldError::DegreeUnsupported(degree));
        }
        let chain = SturmChain::new(&poly);
        if !chain.is_squarefree() {
            return Err(FieldError::NotIrreducible);
        }
        let real_roots = chain.count_real();
        if real_roots != degree {
            return Err(FieldError::NotTotallyReal { real_roots, degree });
        }
        let places = isolate_real_roots(&poly, precision_bits.max(8));
        if degree > 1 && has_rational_factor(&poly, &places) {
            return Err(FieldError::NotIrreducible);
        }
        let discriminant = discriminant(&poly);
        let warn = trial_factor(&discriminant, DEFAULT_TRIAL_BOUND);
        let mut index_warning_primes: Vec<u64> = warn.factors.iter().map(|&(p, _)| p).collect();
        if let Some(c) = warn.cofactor.to_u64().filter(|&c| c > 1) {
            index_warning_primes.push(c);
        }
        Ok(NumberField {
            degree,
            defining_poly: poly,
            discriminant,
            index_warning_primes,
            places,
            trial_bound: DEFAULT_TRIAL_BOUND,
        })
    }

    pub fn with_trial_bound(mut self, bound: u64) -> Self {
        self.trial_bound = bound;
        self
    }

    /// The `d` real places in ascending order of their roots.
    pub fn real_embeddings(&self) -> &[RealPlace] {
        &self.places
    }

    pub fn place(&self, index: usize) -> Option<&RealPlace> {
        self.places.get(index.checked_sub(1)?)
    }

    /// True when `p` divides the polynomial discriminant.
    pub fn is_index_warning(&self, p: u64) -> bool {
        (&self.discriminant % BigInt::from(p)).is_zero()
    }

    /// Reduces a polynomial in `θ` to its canonical representative.
    pub fn element(&self, coeffs: &[i64]) -> ZPoly {
        ZPoly::from_i64(coeffs).rem_monic(&self.defining_poly)
    }

    pub fn reduce(&self, a: &ZPoly) -> ZPoly {
        a.rem_monic(&self.defining_poly)
    }

    pub fn mul(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        a.mul(b).rem_monic(&self.defining_poly)
    }

    /// Absolute norm, the determinant of multiplication by `a`.
    pub fn norm(&self, a: &ZPoly) -> BigInt {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut basis = ZPoly::from_i64(&[1]);
        let theta = ZPoly::from_i64(&[0, 1]);
        for _ in 0..d {
            cols.push(self.mul(a, &basis));
            basis = self.mul(&basis, &theta);
        }
        let m = (0..d)
            .map(|i| (0..d).map(|j| cols[j].coeff(i)).collect())
            .collect();
        det_bareiss(m)
    }

    /// Kummer-Dedekind factorization of `p`.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimeIdeal>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let factors = self.defining_poly.reduce_mod(p).factor();
        if self.is_index_warning(p) && !self.dedekind_maximal(p, &factors) {
            return Err(FieldError::IndexObstruction { p });
        }
        Ok(factors
            .into_iter()
            .map(|(g, e)| {
                let f = g.degree().unwrap() as u32;
                PrimeIdeal { p, local_factor: g.into_coeffs(), e, f }
            })
            .collect())
    }

    /// Dedekind's criterion: `Z[θ]` is `p`-maximal iff `gcd(F̄, ḡ, h̄) = 1`
    /// where `ḡ` is the radical of `f̄`, `ḡh̄ = f̄` and `F = (f - gh)/p`.
    fn dedekind_maximal(&self, p: u64, factors: &[(FpPoly, u32)]) -> bool {
        let mut g = FpPoly::one(p);
        let mut h = FpPoly::one(p);
        for (gi, e) in factors {
            g = g.mul(gi);
            for _ in 1..*e {
                h = h.mul(gi);
            }
        }
        let diff = self.defining_poly.sub(&g.lift().mul(&h.lift()));
        let bp = BigInt::from(p);
        let big_f = ZPoly::new(diff.coeffs().iter().map(|c| c / &bp).collect()).reduce_mod(p);
        let t = g.gcd(&h);
        let t = if big_f.is_zero() { t } else { t.gcd(&big_f) };
        t.degree() == Some(0)
    }

    /// Confirms that `q` is one of the certified primes above its residue
    /// characteristic, so valuations at `q` can be computed in `Z[θ]`.
    pub fn certify_prime(&self, q: &PrimeIdeal) -> Result<(), FieldError> {
        let primes = self.primes_above(q.p)?;
        if primes.contains(q) {
            Ok(())
        } else {
            Err(FieldError::InvalidPrime(format!(
                "{q} (e={}, f={}) is not a prime of Z[θ] above {}",
                q.e, q.f, q.p
            )))
        }
    }

    /// Checks caller-supplied prime data at a prime where `Z[θ]` is not
    /// certified maximal: `g` must be monic, irreducible mod `p`, of degree
    /// `f`, and divide `f mod p`.
    fn validate_uncertified(&self, q: &PrimeIdeal) -> Result<(), FieldError> {
        let g = q.local_poly();
        let bad = |why: &str| Err(FieldError::InvalidPrime(format!("{q}: {why}")));
        if q.e == 0 || q.f == 0 {
            return bad("e and f must be positive");
        }
        if g.coeffs().last() != Some(&1) || g.coeffs().len() != q.local_factor.len() {
            return bad("local factor must be monic and reduced mod p");
        }
        if g.degree() != Some(q.f as usize) {
            return bad("degree of local factor differs from f");
        }
        if !g.is_irreducible() {
            return bad("local factor is reducible mod p");
        }
        if !self.defining_poly.reduce_mod(q.p).rem(&g).is_zero() {
            return bad("local factor does not divide the defining polynomial mod p");
        }
        Ok(())
    }

    /// `f̄ / ḡ` lifted to `Z[x]`; multiplied by `1/p` it has valuation `-1`
    /// at `q` and is integral at the other primes above `p`.
    fn inverse_multiplier(&self, q: &PrimeIdeal) -> ZPoly {
        let (h, _) = self.defining_poly.reduce_mod(q.p).div_rem(&q.local_poly());
        h.lift()
    }

    /// Returns `(v, a·(h/p)^v)` with `v = min(v_q(a), cap)`. The second
    /// component has valuation `v_q(a) - v` at `q`. `q` must be certified.
    pub fn valuation_capped(&self, a: &ZPoly, q: &PrimeIdeal, cap: u32) -> (u32, ZPoly) {
        let h = self.inverse_multiplier(q);
        let bp = BigInt::from(q.p);
        let mut cur = self.reduce(a);
        let mut v = 0;
        while v < cap {
            if cur.is_zero() {
                return (cap, cur);
            }
            let next = self.mul(&cur, &h);
            if next.coeffs().iter().any(|c| !(c % &bp).is_zero()) {
                break;
            }
            cur = ZPoly::new(next.coeffs().iter().map(|c| c / &bp).collect());
            v += 1;
        }
        (v, cur)
    }

    /// `v_q(a)` for nonzero `a`.
    pub fn valuation(&self, a: &ZPoly, q: &PrimeIdeal) -> u32 {
        assert!(!self.reduce(a).is_zero(), "valuation of zero");
        self.valuation_capped(a, q, u32::MAX).0
    }

    /// Image of a `q`-integral element of `Z[θ]` in the residue field
    /// `F_p[x]/(g)`.
    pub fn residue(&self, a: &ZPoly, q: &PrimeIdeal) -> FpPoly {
        a.reduce_mod(q.p).rem(&q.local_poly())
    }

    /// Validates factored input or factors a principal ideal.
    pub fn factor_ideal(&self, input: &IdealInput) -> Result<IdealFactorization, FieldError> {
        match input {
            IdealInput::Factored(pairs) => self.validate_factored(pairs),
            IdealInput::Generator(g) => self.factor_generator(g),
        }
    }

    fn validate_factored(
        &self,
        pairs: &[(PrimeIdeal, u32)],
    ) -> Result<IdealFactorization, FieldError> {
        let mut seen: BTreeMap<&PrimeIdeal, ()> = BTreeMap::new();
        let mut weight: BTreeMap<u64, usize> = BTreeMap::new();
        for (q, k) in pairs {
            if *k == 0 {
                return Err(FieldError::InvalidPrime(format!("{q}: exponent must be positive")));
            }
            if seen.insert(q, ()).is_some() {
                return Err(FieldError::DuplicatePrime(q.to_string()));
            }
            if !is_prime(q.p) {
                return Err(FieldError::NotPrime(q.p));
            }
            match self.certify_prime(q) {
                Ok(()) => {}
                Err(FieldError::IndexObstruction { .. }) => self.validate_uncertified(q)?,
                Err(e) => return Err(e),
            }
            *weight.entry(q.p).or_default() += (q.e * q.f) as usize;
        }
        if let Some((p, _)) = weight.iter().find(|(_, &w)| w > self.degree) {
            return Err(FieldError::InvalidPrime(format!(
                "sum of e·f above {p} exceeds the degree"
            )));
        }
        Ok(IdealFactorization::from_pairs(pairs.iter().cloned()))
    }

    fn factor_generator(&self, g: &ZPoly) -> Result<IdealFactorization, FieldError> {
        let g = self.reduce(g);
        if g.is_zero() {
            return Err(FieldError::ZeroGenerator);
        }
        let norm = self.norm(&g);
        let fac = trial_factor(&norm, self.trial_bound);
        if !fac.is_complete() {
            return Err(FieldError::NormTooLarge { norm, bound: self.trial_bound });
        }
        let mut pairs = Vec::new();
        for (p, k) in fac.factors {
            let mut accounted = 0u32;
            for q in self.primes_above(p)? {
                let v = self.valuation(&g, &q);
                accounted += v * q.f;
                if v > 0 {
                    pairs.push((q, v));
                }
            }
            if accounted != k {
                return Err(FieldError::AmbiguousValuation { p });
            }
        }
        Ok(IdealFactorization::from_pairs(pairs))
    }

    /// Sign of `a` at a real place, certified by interval evaluation with
    /// refinement down to width `2^-max_bits`. `None` if zero is never excluded.
    pub fn sign_at(&self, a: &ZPoly, place: &RealPlace, max_bits: u32) -> Option<i8> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        if place.is_exact() {
            return match crate::sturm::sign_of(&a.eval_rat(&place.lo)) {
                0 => None,
                s => Some(s),
            };
        }
        let mut current = place.clone();
        let mut bits = 0u32;
        loop {
            let (lo, hi) = a.eval_interval(&current.lo, &current.hi);
            if lo.is_positive() {
                return Some(1);
            }
            if hi.is_negative() {
                return Some(-1);
            }
            if current.width() <= width_bound(max_bits) {
                return None;
            }
            bits = (bits.max(current_bits(&current)) + 16).min(max_bits);
            current = current.refine(&self.defining_poly, &width_bound(bits));
        }
    }
}

fn current_bits(place: &RealPlace) -> u32 {
    // Width 2^-k has a denominator of about k bits.
    let w = place.width();
    (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as u32
}

/// Resultant of two integer polynomials via the Sylvester matrix.
pub fn resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    let m = f.degree().expect("nonzero f");
    let n = g.degree().expect("nonzero g");
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Discriminant of a monic polynomial.
pub fn discriminant(f: &ZPoly) -> BigInt {
    let d = f.degree().expect("nonzero polynomial");
    if d == 1 {
        return BigInt::one();
    }
    let r = resultant(f, &f.derivative());
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Detects a linear or quadratic factor over the integers of a monic,
/// squarefree, totally real polynomial of degree at most 4, using the
/// certified root intervals to bound candidate coefficients.
fn has_rational_factor(f: &ZPoly, places: &[RealPlace]) -> bool {
    let one = BigInt::one();
    for r in places {
        let mut k = r.lo.floor().to_integer();
        let top = r.hi.ceil().to_integer();
        while k <= top {
            if f.eval_int(&k).is_zero() {
                return true;
            }
            k += &one;
        }
    }
    if f.degree() != Some(4) {
        return false;
    }
    for i in 0..places.len() {
        for j in i + 1..places.len() {
            let (a, b) = (&places[i], &places[j]);
            let sum = (&a.lo + &b.lo, &a.hi + &b.hi);
            let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
            let prod = (prods.iter().min().unwrap().clone(), prods.iter().max().unwrap().clone());
            let mut s = sum.0.floor().to_integer();
            while s <= sum.1.ceil().to_integer() {
                let mut t = prod.0.floor().to_integer();
                while t <= prod.1.ceil().to_integer() {
                    let quad = ZPoly::new(vec![t.clone(), -s.clone(), one.clone()]);
                    if f.div_exact_monic(&quad).is_some() {
                        return true;
                    }
                    t += &one;
                }
                s += &one;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_sqrt2() -> NumberField {
        NumberField::parse(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let q = NumberField::parse(&[0, 1]).unwrap();
        assert_eq!(q.degree, 1);
        assert!(q.index_warning_primes.is_empty());
        assert_eq!(q_sqrt2().real_embeddings().len(), 2);
        let cubic = NumberField::parse(&[-1, -2, 1, 1]).unwrap();
        assert_eq!(cubic.degree, 3);
        assert_eq!(cubic.discriminant, BigInt::from(49));
        assert_eq!(cubic.index_warning_primes, vec![7]);
        assert!(matches!(
            NumberField::parse(&[1, 0, 1]),
            Err(FieldError::NotTotallyReal { real_roots: 0, degree: 2 })
        ));
    }

    #[test]
    fn parse_rejections() {
        assert_eq!(NumberField::parse(&[1, 2]), Err(FieldError::NotMonic));
        assert_eq!(NumberField::parse(&[-1, 0, 1]), Err(FieldError::NotIrreducible));
        // (x^2 - 2)(x^2 - 3)
        assert_eq!(NumberField::parse(&[6, 0, -5, 0, 1]), Err(FieldError::NotIrreducible));
        // (x^2 - 2)^2
        assert_eq!(NumberField::parse(&[4, 0, -4, 0, 1]), Err(FieldError::NotIrreducible));
        assert_eq!(
            NumberField::parse(&[0, 0, 0, 0, 0, 1]),
            Err(FieldError::DegreeUnsupported(5))
        );
        // x^4 - 4x^2 + 2 is irreducible (Eisenstein at 2) and totally real
        assert!(NumberField::parse(&[2, 0, -4, 0, 1]).is_ok());
    }

    #[test]
    fn primes_above_examples() {
        let q = NumberField::parse(&[0, 1]).unwrap();
        let p7 = q.primes_above(7).unwrap();
        assert_eq!(p7.len(), 1);
        assert_eq!((p7[0].e, p7[0].f), (1, 1));

        let k = q_sqrt2();
        let p7 = k.primes_above(7).unwrap();
        assert_eq!(p7.len(), 2);
        assert!(p7.iter().all(|q| q.e == 1 && q.f == 1));
        let p5 = k.primes_above(5).unwrap();
        assert_eq!(p5.len(), 1);
        assert_eq!((p5[0].e, p5[0].f), (1, 2));
        // 2 divides disc(x^2 - 2) but Z[√2] is 2-maximal.
        let p2 = k.primes_above(2).unwrap();
        assert_eq!(p2, vec![PrimeIdeal { p: 2, local_factor: vec![0, 1], e: 2, f: 1 }]);
    }

    #[test]
    fn index_obstruction_for_non_maximal_order() {
        // x^2 - 5: Z[√5] has index 2 in the ring of integers.
        let k = NumberField::parse(&[-5, 0, 1]).unwrap();
        assert_eq!(k.primes_above(2), Err(FieldError::IndexObstruction { p: 2 }));
        assert!(k.primes_above(5).is_ok());
    }

    #[test]
    fn factor_generators() {
        let q = NumberField::parse(&[0, 1]).unwrap();
        let n = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[22]))).unwrap();
        let primes: Vec<u64> = n.support().map(|q| q.p).collect();
        assert_eq!(primes, vec![2, 11]);
        assert!(n.is_squarefree());
        let unit = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[1]))).unwrap();
        assert!(unit.is_unit());

        let k = q_sqrt2();
        let theta = k.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[0, 1]))).unwrap();
        assert_eq!(theta.len(), 1);
        let (p, exp) = theta.iter().next().unwrap();
        assert_eq!((p.p, p.e, exp), (2, 2, 1));

        // 7 = (3 + θ)(3 - θ) splits over Q(√2).
        let seven = k.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[3, 1]))).unwrap();
        assert_eq!(seven.len(), 1);
        assert_eq!(seven.iter().next().unwrap().0.p, 7);
    }

    #[test]
    fn factored_round_trip_and_validation() {
        let k = q_sqrt2();
        let p7 = k.primes_above(7).unwrap();
        let input = vec![(p7[0].clone(), 2), (p7[1].clone(), 1)];
        let n = k.factor_ideal(&IdealInput::Factored(input.clone())).unwrap();
        assert_eq!(n, IdealFactorization::from_pairs(input));

        let bogus = PrimeIdeal { p: 7, local_factor: vec![1, 1], e: 1, f: 1 };
        assert!(matches!(
            k.factor_ideal(&IdealInput::Factored(vec![(bogus, 1)])),
            Err(FieldError::InvalidPrime(_))
        ));
        let dup = vec![(p7[0].clone(), 1), (p7[0].clone(), 1)];
        assert!(matches!(
            k.factor_ideal(&IdealInput::Factored(dup)),
            Err(FieldError::DuplicatePrime(_))
        ));
    }

    #[test]
    fn norm_too_large() {
        let q = NumberField::parse(&[0, 1]).unwrap().with_trial_bound(100);
        let big = ZPoly::new(vec![BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64)]);
        assert!(matches!(
            q.factor_ideal(&IdealInput::Generator(big)),
            Err(FieldError::NormTooLarge { .. })
        ));
    }

    #[test]
    fn signs_at_real_places() {
        let k = q_sqrt2();
        let theta = ZPoly::from_i64(&[0, 1]);
        let signs: Vec<i8> = k
            .real_embeddings()
            .iter()
            .map(|v| k.sign_at(&theta, v, 256).unwrap())
            .collect();
        assert_eq!(signs, vec![-1, 1]);
        // 3 - 2θ: conjugates 3 ∓ 2√2, both positive but one tiny.
        let tiny = ZPoly::from_i64(&[3, -2]);
        assert!(k.real_embeddings().iter().all(|v| k.sign_at(&tiny, v, 256) == Some(1)));
    }
}
