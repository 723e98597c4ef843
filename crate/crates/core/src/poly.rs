//! Dense univariate polynomials over the integers and over prime fields.
//!
//! Coefficient vectors are ascending-degree and kept trimmed, so the zero
//! polynomial is the empty vector.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, inv_mod, mul_mod, reduce, sub_mod};

/// Integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZPoly {
    #[serde(with = "crate::decimal::int_vec")]
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, One::is_one)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Remainder on division by a monic polynomial.
    pub fn rem_monic(&self, modulus: &ZPoly) -> ZPoly {
        assert!(modulus.is_monic(), "modulus must be monic");
        let m = modulus.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > m {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() - m;
            for (i, c) in modulus.coeffs[..m].iter().enumerate() {
                r[shift + i] -= &lead * c;
            }
        }
        ZPoly::new(r)
    }

    /// Exact quotient by a monic divisor; `None` when the division leaves a remainder.
    pub fn div_exact_monic(&self, divisor: &ZPoly) -> Option<ZPoly> {
        assert!(divisor.is_monic());
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return self.is_zero().then(ZPoly::zero);
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let lead = r[k + dd].clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[k + i] -= &lead * c;
            }
            q[k] = lead;
        }
        r.iter().all(Zero::is_zero).then(|| ZPoly::new(q))
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Encloses the range of the polynomial on `[lo, hi]` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = products.iter().min().unwrap().clone();
            let max = products.iter().max().unwrap().clone();
            let c = BigRational::from(c.clone());
            acc = (min + &c, max + c);
        }
        acc
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        FpPoly::new(p, self.coeffs.iter().map(|c| reduce(c, p)).collect())
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<String>) -> fmt::Result {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match i {
            0 => c.clone(),
            1 if c == "1" => "x".into(),
            1 => format!("{c}*x"),
            _ if c == "1" => format!("x^{i}"),
            _ => format!("{c}*x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomial over the prime field with `p` elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn lift(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| add_mod(self.get(i), other.get(i), self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| sub_mod(self.get(i), other.get(i), self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        FpPoly::new(self.p, out)
    }

    fn get(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = inv_mod(lead, self.p);
                FpPoly::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = divisor.deg();
        let inv = inv_mod(*divisor.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let lead = mul_mod(r[k + dd], inv, p);
            if lead != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    r[k + i] = sub_mod(r[k + i], mul_mod(lead, c, p), p);
                }
            }
            q[k] = lead;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Replaces `x` by `x^(1/p)` on a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// (degree, coefficients).
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero(), "cannot factor zero");
        let mut out = Vec::new();
        for (part, mult) in self.monic().squarefree_decomposition() {
            for g in part.distinct_degree()
                .into_iter()
                .flat_map(|(g, k)| g.equal_degree(k))
            {
                out.push((g, mult));
            }
        }
        out.sort_by(|a, b| factor_order(&a.0, &b.0));
        out
    }

    /// `(squarefree part, multiplicity)` pairs whose product (with powers) is `self`.
    fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree_decomposition() {
                out.push((g, m * self.p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, m) in c.monic().pth_root().squarefree_decomposition() {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into products of same-degree irreducibles.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = FpPoly::x(p);
        let mut h = x.rem(&rest);
        let mut k = 0;
        while rest.deg() >= 2 * (k + 1) {
            k += 1;
            h = h.pow_mod(&BigUint::from(p), &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.deg() > 0 {
                rest = rest.div_rem(&g).0.monic();
                h = h.rem(&rest);
                out.push((g, k));
            }
        }
        if rest.deg() > 0 {
            let k = rest.deg();
            out.push((rest, k));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct degree-`k` irreducibles,
    /// driven by a deterministic sequence of probe polynomials.
    fn equal_degree(self, k: usize) -> Vec<FpPoly> {
        if self.deg() == k {
            return vec![self];
        }
        let p = self.p;
        let n = self.deg();
        for probe in probes(p, n) {
            let t = if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(k-1)).
                let mut acc = FpPoly::zero(p);
                let mut term = probe.rem(&self);
                for _ in 0..k {
                    acc = acc.add(&term);
                    term = term.mul(&term).rem(&self);
                }
                acc
            } else {
                let q = BigUint::from(p).pow(k as u32);
                let e = (q - 1u32) / 2u32;
                probe.pow_mod(&e, &self).sub(&FpPoly::one(p))
            };
            let g = self.gcd(&t);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let other = self.div_rem(&g).0.monic();
                let mut out = g.equal_degree(k);
                out.extend(other.equal_degree(k));
                return out;
            }
        }
        unreachable!("probe sequence exhausted without splitting")
    }

    /// True iff the polynomial is irreducible over the prime field.
    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

/// Probe polynomials `x^j + c_{j-1} x^{j-1} + ... + c_0` of degree below `n`,
/// in order of increasing degree and then increasing coefficients.
fn probes(p: u64, n: usize) -> impl Iterator<Item = FpPoly> {
    (1..n).flat_map(move |deg| {
        let count = (p as u128).saturating_pow(deg as u32).min(4096) as u64;
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            FpPoly::new(p, c)
        })
    })
}

pub(crate) fn factor_order(a: &FpPoly, b: &FpPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
