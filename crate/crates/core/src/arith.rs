//! Small-integer helpers: modular arithmetic on `u64`, primality, and
//! trial-division factorization of big integers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default trial-division bound used when factoring norms.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime. Panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces a big integer into `[0, m)`.
pub fn reduce(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p` with `lo <= p < hi`.
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..hi).filter(|&n| is_prime(n))
}

/// Iterator over all primes starting from `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&n| is_prime(n))
}

/// Outcome of factoring `|n|` by trial division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFactorization {
    /// `(prime, exponent)` pairs in ascending order.
    pub factors: Vec<(u64, u32)>,
    /// Cofactor left over when the bound was exhausted; `1` when complete.
    pub cofactor: BigInt,
}

impl TrialFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }
}

/// Factors `|n|` by trial division up to `bound`. A leftover cofactor below
/// `bound²` is necessarily prime and is reported as a factor.
pub fn trial_factor(n: &BigInt, bound: u64) -> TrialFactorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.abs();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p <= bound {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if rest.is_one() {
        return TrialFactorization { factors, cofactor: rest };
    }
    let bound_sq = BigInt::from(bound) * BigInt::from(bound);
    let last_trial = BigInt::from(p);
    if rest < bound_sq || &last_trial * &last_trial > rest {
        if let Some(q) = rest.to_u64() {
            factors.push((q, 1));
            factors.sort_unstable();
            return TrialFactorization { factors, cofactor: BigInt::one() };
        }
    }
    TrialFactorization { factors, cofactor: rest }
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    v
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
