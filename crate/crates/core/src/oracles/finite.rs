//! Finite multiple zeta values modulo a prime:
//! `ζ_p(k₁,…,k_r) = Σ_{0<n₁<⋯<n_r<p} n₁^{-k₁}⋯n_r^{-k_r} mod p`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Index;
use crate::error::{Error, Result};
use crate::{ParamPoly, Poly, Rational};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in `lo..=hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// One coordinate of an element of 𝒜 = ∏ 𝔽_p / ⊕ 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteValue {
    pub p: u64,
    pub residue: u64,
}

impl FiniteValue {
    pub fn new(p: u64, residue: u64) -> FiniteValue {
        FiniteValue { p, residue: residue % p }
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn mul(self, other: FiniteValue) -> FiniteValue {
        assert_eq!(self.p, other.p);
        FiniteValue::new(self.p, mul_mod(self.residue, other.residue, self.p))
    }
}

/// Evaluator for one prime with a table of inverses and a memo of values.
pub struct FiniteEvaluator {
    p: u64,
    inv: Vec<u64>,
    cache: HashMap<Index, u64>,
}

impl FiniteEvaluator {
    pub fn new(p: u64) -> Result<FiniteEvaluator> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // inv[i] = -(p / i) · inv[p mod i]
        let mut inv = vec![0u64, 1];
        for i in 2..p {
            let v = mul_mod(p - p / i, inv[(p % i) as usize], p);
            inv.push(v);
        }
        inv.truncate(p as usize);
        Ok(FiniteEvaluator { p, inv, cache: HashMap::new() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `ζ_p(k)`; requires `p` above the largest part.
    pub fn zeta(&mut self, k: &Index) -> Result<FiniteValue> {
        let p = self.p;
        if p <= k.max_part() as u64 {
            return Err(Error::PrimeTooSmall { p, max_part: k.max_part() });
        }
        if let Some(&r) = self.cache.get(k) {
            return Ok(FiniteValue::new(p, r));
        }
        let parts = k.parts();
        let r = parts.len();
        // prefix[j] = Σ over chains of length j+1 with largest element < n
        let mut prefix = vec![0u64; r];
        for n in 1..p {
            let inv_n = self.inv[n as usize];
            for j in (0..r).rev() {
                let below = if j == 0 { 1 } else { prefix[j - 1] };
                if below == 0 {
                    continue;
                }
                let term = mul_mod(pow_mod(inv_n, parts[j] as u64, p), below, p);
                prefix[j] = (prefix[j] + term) % p;
            }
        }
        let value = prefix[r - 1];
        self.cache.insert(k.clone(), value);
        Ok(FiniteValue::new(p, value))
    }

    /// `Z_F(poly)` with `c = c_val`; every word must begin with `y`.
    pub fn eval_poly(&mut self, poly: &Poly, c_val: &Rational) -> Result<FiniteValue> {
        let p = self.p;
        let c = c_val.mod_p(p).ok_or_else(|| Error::DenominatorDivisible { value: c_val.to_string(), p })?;
        let mut acc = 0u64;
        for (w, coeff) in poly.terms() {
            let k = Index::from_word(*w)?;
            let coeff = param_mod_p(coeff, c, p)?;
            if coeff == 0 {
                continue;
            }
            acc = (acc + mul_mod(coeff, self.zeta(&k)?.residue, p)) % p;
        }
        Ok(FiniteValue::new(p, acc))
    }
}

/// A ℚ[c] coefficient evaluated at `c ≡ c_mod (mod p)`.
fn param_mod_p(r: &ParamPoly, c_mod: u64, p: u64) -> Result<u64> {
    let mut acc = 0u64;
    let mut c_pow = 1u64;
    let mut last = 0usize;
    for (e, s) in r.terms() {
        while last < e {
            c_pow = mul_mod(c_pow, c_mod, p);
            last += 1;
        }
        let s_mod = s.mod_p(p).ok_or_else(|| Error::DenominatorDivisible { value: s.to_string(), p })?;
        acc = (acc + mul_mod(s_mod, c_pow, p)) % p;
    }
    Ok(acc)
}

/// `ζ_p(k)` for a single index.
pub fn zeta_a_mod_p(k: &Index, p: u64) -> Result<FiniteValue> {
    FiniteEvaluator::new(p)?.zeta(k)
}

/// `Z_F(poly)` modulo `p` with `c = c_val`.
pub fn zf_mod_p(poly: &Poly, p: u64, c_val: &Rational) -> Result<FiniteValue> {
    FiniteEvaluator::new(p)?.eval_poly(poly, c_val)
}
