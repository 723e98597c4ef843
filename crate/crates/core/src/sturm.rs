//! Sturm sequences and certified real-root isolation for squarefree integer
//! polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::ZPoly;

/// Polynomial with rational coefficients, ascending degree, trimmed.
type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

fn to_q(f: &ZPoly) -> QPoly {
    f.coeffs().iter().map(|c| BigRational::from(c.clone())).collect()
}

fn rem_q(a: &QPoly, b: &QPoly) -> QPoly {
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &factor * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn eval_q(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm chain `f, f', -rem(f, f'), ...` of an integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(f: &ZPoly) -> Self {
        let mut chain = vec![to_q(f), to_q(&f.derivative())];
        while chain.last().map_or(false, |p| p.len() > 1) {
            let n = chain.len();
            let r = rem_q(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        chain.retain(|p| !p.is_empty());
        SturmChain { chain }
    }

    fn sign_changes_at(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| sign_of(&eval_q(p, x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn sign_changes_at_infinity(&self, positive: bool) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let s = sign_of(p.last().unwrap());
                let odd = (p.len() - 1) % 2 == 1;
                if !positive && odd {
                    -s
                } else {
                    s
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes_at(lo).saturating_sub(self.sign_changes_at(hi))
    }

    /// True iff `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        self.chain.last().map_or(false, |p| p.len() == 1)
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.sign_changes_at_infinity(false)
            .saturating_sub(self.sign_changes_at_infinity(true))
    }
}

pub(crate) fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `2^-bits` as a rational.
pub fn width_bound(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// An archimedean place of a totally real field, given by a rational interval
/// isolating one root of the defining polynomial. A degenerate interval
/// (`lo == hi`) is an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPlace {
    /// 1-based position in ascending order of roots.
    pub index: usize,
    #[serde(with = "crate::decimal::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::decimal::rational")]
    pub hi: BigRational,
    /// Width bound the interval was refined to.
    #[serde(with = "crate::decimal::rational")]
    pub precision: BigRational,
}

impl RealPlace {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// Bisects until the width is at most `bound`. `f` must be the defining
    /// polynomial this place was isolated from.
    pub fn refine(&self, f: &ZPoly, bound: &BigRational) -> RealPlace {
        let mut out = self.clone();
        if out.is_exact() {
            out.precision = bound.clone();
            return out;
        }
        // A neighbouring exact root may sit on `lo`; the sign just right of it
        // is then opposite to the sign at `hi`.
        let s_lo = match sign_of(&f.eval_rat(&out.lo)) {
            0 => -sign_of(&f.eval_rat(&out.hi)),
            s => s,
        };
        while out.width() > *bound {
            let mid = out.midpoint();
            match sign_of(&f.eval_rat(&mid)) {
                0 => {
                    out.lo = mid.clone();
                    out.hi = mid;
                    break;
                }
                s if s == s_lo => out.lo = mid,
                _ => out.hi = mid,
            }
        }
        out.precision = bound.clone();
        out
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Isolates every real root of a squarefree polynomial and refines each to
/// width at most `2^-bits`, ascending.
pub fn isolate_real_roots(f: &ZPoly, bits: u32) -> Vec<RealPlace> {
    let chain = SturmChain::new(f);
    let bound = BigRational::from(f.height() + BigInt::one());
    let precision = width_bound(bits);
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
                pending.push((lo, mid.clone()));
                pending.push((mid, hi));
            }
        }
    }
    isolated.sort();
    isolated
        .into_iter()
        .enumerate()
        .map(|(i, (lo, hi))| {
            // Root lies in (lo, hi]; an exact root at hi is taken as degenerate.
            let place = if f.eval_rat(&hi).is_zero() {
                RealPlace { index: i + 1, lo: hi.clone(), hi, precision: precision.clone() }
            } else {
                RealPlace { index: i + 1, lo, hi, precision: precision.clone() }
            };
            place.refine(f, &precision)
        })
        .collect()
}
