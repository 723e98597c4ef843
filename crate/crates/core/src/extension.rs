//! Quadratic extensions `K = F(√δ)` and the split/inert/ramified
//! classification of places of `F`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{exact_sqrt, primes_from, trial_factor, DEFAULT_TRIAL_BOUND};
use crate::field::{FieldError, IdealFactorization, NumberField, PrimeIdeal};
use crate::poly::ZPoly;
use crate::sturm::{rational_to_f64, width_bound, RealPlace};

/// Finest interval width tried when certifying the sign of `δ` at a real place.
pub const MAX_PRECISION_BITS: u32 = 256;
/// Residue tests run before the exact square-root attempt.
const RESIDUE_TESTS: usize = 20;
/// Upper limit of the prime search for a non-residue certificate.
const CERTIFICATE_SEARCH_LIMIT: u64 = 1_000_000;

/// Behaviour of a place of `F` in `K`. Real places are never `Ramified`: a
/// non-split real place is called inert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlaceType {
    Split,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("δ is zero")]
    ZeroDelta,
    #[error("δ is a square in F")]
    IsSquare,
    #[error("δ is negative at every real place, so K has no real place")]
    NoRealPlace,
    #[error("sign of δ at real place {place} not certified at width 2^-{bits}")]
    PrecisionExhausted { place: usize, bits: u32 },
    #[error("no non-residue certificate for δ below {0}")]
    NoCertificate(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `K = F(√δ)` with `δ ∈ Z[θ]`, certified non-square and positive at some
/// real place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticExtension {
    pub base: NumberField,
    pub delta: ZPoly,
    /// A prime at which `δ` is a unit and a quadratic non-residue.
    pub nonsquare_certificate: PrimeIdeal,
}

impl QuadraticExtension {
    /// Builds `F(√δ)` from the ascending coefficients of `δ` in `θ`.
    pub fn new(base: NumberField, delta: &[i64]) -> Result<Self, ExtensionError> {
        let delta = base.element(delta);
        Self::from_element(base, delta)
    }

    pub fn from_element(base: NumberField, delta: ZPoly) -> Result<Self, ExtensionError> {
        let delta = base.reduce(&delta);
        if delta.is_zero() {
            return Err(ExtensionError::ZeroDelta);
        }
        let mut any_positive = false;
        for v in base.real_embeddings() {
            if real_sign(&base, &delta, v)? > 0 {
                any_positive = true;
            }
        }
        if !any_positive {
            return Err(ExtensionError::NoRealPlace);
        }
        let nonsquare_certificate = find_certificate(&base, &delta)?;
        Ok(QuadraticExtension { base, delta, nonsquare_certificate })
    }

    /// `Split` iff `δ` is positive at `v`.
    pub fn classify_real_place(&self, v: &RealPlace) -> Result<PlaceType, ExtensionError> {
        Ok(if real_sign(&self.base, &self.delta, v)? > 0 {
            PlaceType::Split
        } else {
            PlaceType::Inert
        })
    }

    /// All real places of the base with their types, in index order.
    pub fn real_place_types(&self) -> Result<Vec<(RealPlace, PlaceType)>, ExtensionError> {
        self.base
            .real_embeddings()
            .iter()
            .map(|v| Ok((v.clone(), self.classify_real_place(v)?)))
            .collect()
    }

    pub fn classify_finite_prime(&self, q: &PrimeIdeal) -> Result<PlaceType, ExtensionError> {
        classify_prime(&self.base, &self.delta, q)
    }

    /// True iff no prime dividing `n` ramifies in `K`.
    pub fn disc_coprime_to(&self, n: &IdealFactorization) -> Result<bool, ExtensionError> {
        for q in n.support() {
            if self.classify_finite_prime(q)? == PlaceType::Ramified {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Type of `q` in `F(√δ)` for any nonzero `δ`. The question is local, so
/// neither a real place nor a non-square certificate is required.
pub fn classify_prime(
    base: &NumberField,
    delta: &ZPoly,
    q: &PrimeIdeal,
) -> Result<PlaceType, ExtensionError> {
    let delta = base.reduce(delta);
    if delta.is_zero() {
        return Err(ExtensionError::ZeroDelta);
    }
    base.certify_prime(q)?;
    Ok(local_type(base, &delta, q))
}

fn real_sign(base: &NumberField, delta: &ZPoly, v: &RealPlace) -> Result<i8, ExtensionError> {
    base.sign_at(delta, v, MAX_PRECISION_BITS)
        .ok_or(ExtensionError::PrecisionExhausted { place: v.index, bits: MAX_PRECISION_BITS })
}

/// Type of a certified prime `q` in `F(√δ)`.
///
/// Writes `δ = (π-adic part)·u` with `u` a `q`-unit; odd valuation means
/// ramified. For odd residue characteristic `u` is then classified by the
/// quadratic character of the residue field. Over 2 with `e = v_q(2)`, `u` is
/// a local square iff it is a square mod `q^(2e+1)`, and `F_q(√u)` is
/// unramified iff `u` is a square mod `q^(2e)`.
pub(crate) fn local_type(base: &NumberField, delta: &ZPoly, q: &PrimeIdeal) -> PlaceType {
    let (v, unit) = base.valuation_capped(delta, q, u32::MAX);
    if v % 2 == 1 {
        return PlaceType::Ramified;
    }
    if q.p != 2 {
        return if quadratic_character(base, &unit, q) == 1 {
            PlaceType::Split
        } else {
            PlaceType::Inert
        };
    }
    if is_square_mod_power(base, &unit, q, 2 * q.e + 1) {
        PlaceType::Split
    } else if is_square_mod_power(base, &unit, q, 2 * q.e) {
        PlaceType::Inert
    } else {
        PlaceType::Ramified
    }
}

/// `u^((N(q)-1)/2)` in the residue field at an odd prime, as `±1` (or `0`
/// when `u` is not a unit at `q`).
pub(crate) fn quadratic_character(base: &NumberField, u: &ZPoly, q: &PrimeIdeal) -> i8 {
    let r = base.residue(u, q);
    if r.is_zero() {
        return 0;
    }
    let exp = (q.norm() - BigUint::one()) / BigUint::from(2u32);
    if r.pow_mod(&exp, &q.local_poly()).is_one() {
        1
    } else {
        -1
    }
}

/// Whether `u ≡ x² (mod q^k)` for some `x`, for `q` above 2 and `k <= 3e`.
/// Since `8O ⊆ q^(3e)` and `(x + 4y)² ≡ x² (mod 8)`, `x` ranges over `Z[θ]/4`.
fn is_square_mod_power(base: &NumberField, u: &ZPoly, q: &PrimeIdeal, k: u32) -> bool {
    debug_assert!(q.p == 2 && k <= 3 * q.e);
    let d = base.degree;
    let total = 4usize.pow(d as u32);
    (0..total).any(|mut idx| {
        let coeffs: Vec<i64> = (0..d)
            .map(|_| {
                let c = (idx % 4) as i64;
                idx /= 4;
                c
            })
            .collect();
        let x = ZPoly::from_i64(&coeffs);
        let diff = u.sub(&base.mul(&x, &x));
        base.valuation_capped(&diff, q, k).0 >= k
    })
}

/// Finds a prime at which `δ` is a unit non-residue. After
/// [`RESIDUE_TESTS`] residue tests fail to find one, an exact square root is
/// attempted so that squares are rejected deterministically.
fn find_certificate(base: &NumberField, delta: &ZPoly) -> Result<PrimeIdeal, ExtensionError> {
    let norm = base.norm(delta);
    let mut tests = 0;
    let mut sqrt_tried = false;
    for p in primes_from(3).take_while(|&p| p < CERTIFICATE_SEARCH_LIMIT) {
        if base.is_index_warning(p) || (&norm % BigInt::from(p)).is_zero() {
            continue;
        }
        for q in base.primes_above(p)? {
            if quadratic_character(base, delta, &q) == -1 {
                return Ok(q);
            }
            tests += 1;
        }
        if tests >= RESIDUE_TESTS && !sqrt_tried {
            sqrt_tried = true;
            if field_sqrt(base, delta).is_some() {
                return Err(ExtensionError::IsSquare);
            }
        }
    }
    Err(ExtensionError::NoCertificate(CERTIFICATE_SEARCH_LIMIT))
}

/// Exact square root of `δ` in `F`, returned as `(c, m)` with `√δ = c/m`,
/// `c ∈ Z[θ]`. Candidates come from a floating-point solve over the real
/// embeddings and are verified exactly.
pub fn field_sqrt(base: &NumberField, delta: &ZPoly) -> Option<(ZPoly, BigInt)> {
    let delta = base.reduce(delta);
    if base.degree == 1 {
        return exact_sqrt(&delta.coeff(0)).map(|r| (ZPoly::new(vec![r]), BigInt::one()));
    }
    // Denominators of integral elements divide the index, whose square divides disc.
    let disc = trial_factor(&base.discriminant, DEFAULT_TRIAL_BOUND);
    let m: BigInt = disc
        .factors
        .iter()
        .map(|&(p, k)| BigInt::from(p).pow(k / 2))
        .product();
    let bits = 60;
    let xs: Vec<f64> = base
        .real_embeddings()
        .iter()
        .map(|v| rational_to_f64(&v.refine(&base.defining_poly, &width_bound(bits)).midpoint()))
        .collect();
    let vals: Vec<f64> = xs
        .iter()
        .map(|&x| {
            delta
                .coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
        })
        .collect();
    if vals.iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    let roots: Vec<f64> = vals.iter().map(|v| v.sqrt()).collect();
    let d = base.degree;
    let m2_delta = base.reduce(&delta.scale(&(&m * &m)));
    let mf = m.to_f64()?;
    for signs in 0..(1u32 << (d - 1)) {
        let rhs: Vec<f64> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| if i > 0 && signs >> (i - 1) & 1 == 1 { -r } else { *r })
            .collect();
        let b = solve_vandermonde(&xs, &rhs)?;
        let c = ZPoly::new(
            b.iter()
                .map(|x| BigInt::from((x * mf).round() as i64))
                .collect(),
        );
        if base.mul(&c, &c) == m2_delta {
            return Some((c, m.clone()));
        }
    }
    None
}

fn solve_vandermonde(xs: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = xs.len();
    let mut a: Vec<Vec<f64>> = xs
        .iter()
        .zip(rhs)
        .map(|(&x, &r)| {
            let mut row: Vec<f64> = (0..n).map(|j| x.powi(j as i32)).collect();
            row.push(r);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..=n {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}
