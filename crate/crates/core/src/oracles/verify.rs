//! Verification drivers: relations against the numeric oracle, and the
//! mod-p identities (the quasi-derivation product formula, the stuffle
//! homomorphism and φ-invariance) against the finite oracle.

use serde::{Deserialize, Serialize};

use crate::algebra::{Letter, Word};
use crate::error::{Error, Result};
use crate::oracles::finite::{mul_mod, FiniteEvaluator};
use crate::oracles::numeric::NumericEvaluator;
use crate::products::{harmonic, phi};
use crate::relations::{enumerate_admissible, enumerate_y_words, Range, Relation};
use crate::{Operators, ParamPoly, Poly, Rational};

/// One check: passes iff `|value| ≤ threshold` (numeric) or the residue
/// difference is zero (finite).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u64>,
    /// `truncated` or `accelerated`, for numeric checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    /// Decimal magnitude (numeric) or residue of `lhs − rhs` (finite).
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<u64>,
    pub threshold: String,
    pub pass: bool,
}

/// A parameter tuple skipped because its prime sits at or below the
/// small-prime bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub source: String,
    pub n: usize,
    pub generator: String,
    pub c: String,
    pub prime: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub reports: Vec<VerificationReport>,
    pub excluded: Vec<Exclusion>,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn max_value(&self) -> f64 {
        self.reports.iter().filter_map(|r| r.value.parse::<f64>().ok()).fold(0.0, f64::max)
    }

    pub fn extend(&mut self, other: SweepReport) {
        self.reports.extend(other.reports);
        self.excluded.extend(other.excluded);
    }
}

/// `Σ coefficient(c_val) · ζ_N(index)`.
pub fn relation_value(r: &Relation, c_val: &Rational, ev: &mut NumericEvaluator) -> Result<f64> {
    let mut acc = 0.0;
    for (k, coeff) in r.specialize(c_val) {
        acc += coeff.to_f64() * ev.zeta(&k)?;
    }
    Ok(acc)
}

pub fn verify_relation_numeric(
    r: &Relation,
    c_val: &Rational,
    ev: &mut NumericEvaluator,
    tol: f64,
) -> Result<VerificationReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidBound(format!("tolerance must be positive, got {tol}")));
    }
    let value = relation_value(r, c_val, ev)?.abs();
    Ok(VerificationReport {
        family: r.family.to_string(),
        source: r.source(),
        n: r.n,
        c: c_val.to_string(),
        truncation: Some(ev.config().truncation()),
        method: Some(ev.config().method().to_string()),
        prime: None,
        value: format!("{value:.3e}"),
        lhs: None,
        rhs: None,
        threshold: format!("{tol:e}"),
        pass: value <= tol,
    })
}

/// Every relation at every `c`.
pub fn numeric_sweep(
    relations: &[Relation],
    cs: &[Rational],
    ev: &mut NumericEvaluator,
    tol: f64,
) -> Result<SweepReport> {
    let mut out = SweepReport::default();
    for r in relations {
        for c in cs {
            out.reports.push(verify_relation_numeric(r, c, ev, tol)?);
        }
    }
    Ok(out)
}

/// Smallest prime allowed in a mod-p check of `∂ₙ^(c)(w)` is above this.
pub fn exclusion_bound(w: Word, n: usize) -> u64 {
    (w.degree() + n + 2) as u64
}

/// Both sides of `Z_F(∂ₙ^(c)(w)x⁻¹) = Z_F(wx⁻¹)·Z_F(qₙ^(c))` modulo
/// `ev.p()`, without the small-prime exclusion. Fails only when some index
/// has a part ≥ p or `c` is undefined mod p.
pub fn product_formula_sides(
    ops: &Operators<ParamPoly>,
    n: usize,
    w: Word,
    c_val: &Rational,
    ev: &mut FiniteEvaluator,
) -> Result<(u64, u64)> {
    let p = ev.p();
    let pw = Poly::word(w);
    let lhs_poly = ops.quasi_del(n, &pw)?.right_divide_by_x()?;
    let lhs = ev.eval_poly(&lhs_poly, c_val)?.residue;
    let w_div = pw.right_divide_by_x()?;
    let q = ops.q_n_recursive(n)?;
    let rhs = mul_mod(ev.eval_poly(&w_div, c_val)?.residue, ev.eval_poly(&q, c_val)?.residue, p);
    Ok((lhs, rhs))
}

/// `Z_F(∂ₙ^(c)(w)x⁻¹) = Z_F(wx⁻¹)·Z_F(qₙ^(c))` modulo `ev.p()`.
pub fn verify_product_formula(
    ops: &Operators<ParamPoly>,
    n: usize,
    w: Word,
    c_val: &Rational,
    ev: &mut FiniteEvaluator,
) -> Result<VerificationReport> {
    let p = ev.p();
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let bound = exclusion_bound(w, n);
    if p <= bound {
        return Err(Error::PrimeExcluded { p, bound });
    }
    let (lhs, rhs) = product_formula_sides(ops, n, w, c_val, ev)?;
    let diff = (lhs + p - rhs) % p;
    Ok(VerificationReport {
        family: "product_formula".into(),
        source: format!("n={n} w={w}"),
        n: Some(n),
        c: c_val.to_string(),
        truncation: None,
        method: None,
        prime: Some(p),
        value: diff.to_string(),
        lhs: Some(lhs),
        rhs: Some(rhs),
        threshold: "0".into(),
        pass: diff == 0,
    })
}

/// The product formula for every admissible generator of weight in
/// `weights`, `n` in `ns`, every `c` and every prime. Primes at or below the
/// exclusion bound are listed in `excluded`; a `c` whose denominator is
/// divisible by `p` is excluded the same way.
pub fn product_formula_sweep(
    ops: &Operators<ParamPoly>,
    weights: Range,
    ns: Range,
    cs: &[Rational],
    primes: &[u64],
) -> Result<SweepReport> {
    let mut out = SweepReport::default();
    for &p in primes {
        let mut ev = FiniteEvaluator::new(p)?;
        for weight in weights.iter() {
            for w in enumerate_admissible(weight)? {
                for n in ns.iter() {
                    for c in cs {
                        let bound = exclusion_bound(w, n);
                        let excluded = p <= bound || c.mod_p(p).is_none();
                        if excluded {
                            out.excluded.push(Exclusion {
                                source: format!("n={n} w={w}"),
                                n,
                                generator: w.to_string(),
                                c: c.to_string(),
                                prime: p,
                                bound,
                            });
                            continue;
                        }
                        out.reports.push(verify_product_formula(ops, n, w, c, &mut ev)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn finite_report(family: &str, source: String, p: u64, lhs: u64, rhs: u64) -> VerificationReport {
    let diff = (lhs + p - rhs) % p;
    VerificationReport {
        family: family.into(),
        source,
        n: None,
        c: "0".into(),
        truncation: None,
        method: None,
        prime: Some(p),
        value: diff.to_string(),
        lhs: Some(lhs),
        rhs: Some(rhs),
        threshold: "0".into(),
        pass: diff == 0,
    }
}

/// `Z_F(w₁ ∗ w₂) = Z_F(w₁)·Z_F(w₂)` for unordered pairs of words in y𝔥 of
/// weight ≤ `max_weight`.
pub fn stuffle_sweep(max_weight: usize, primes: &[u64]) -> Result<SweepReport> {
    let words: Vec<Word> = (1..=max_weight).flat_map(enumerate_y_words).collect();
    let zero = Rational::integer(0);
    let mut out = SweepReport::default();
    for &p in primes {
        let mut ev = FiniteEvaluator::new(p)?;
        for (i, &w1) in words.iter().enumerate() {
            for &w2 in &words[i..] {
                let (a, b) = (Poly::word(w1), Poly::word(w2));
                let lhs = ev.eval_poly(&harmonic(&a, &b), &zero)?.residue;
                let rhs = mul_mod(ev.eval_poly(&a, &zero)?.residue, ev.eval_poly(&b, &zero)?.residue, p);
                out.reports.push(finite_report("stuffle", format!("w1={w1} w2={w2}"), p, lhs, rhs));
            }
        }
    }
    Ok(out)
}

/// `Z_F(φ(w)) = Z_F(w)` for words in y𝔥 of weight ≤ `max_weight`.
pub fn phi_invariance_sweep(max_weight: usize, primes: &[u64]) -> Result<SweepReport> {
    let zero = Rational::integer(0);
    let mut out = SweepReport::default();
    for &p in primes {
        let mut ev = FiniteEvaluator::new(p)?;
        for w in (1..=max_weight).flat_map(enumerate_y_words) {
            debug_assert!(w.starts_with(Letter::Y));
            let pw = Poly::word(w);
            let lhs = ev.eval_poly(&phi(&pw), &zero)?.residue;
            let rhs = ev.eval_poly(&pw, &zero)?.residue;
            out.reports.push(finite_report("phi", format!("w={w}"), p, lhs, rhs));
        }
    }
    Ok(out)
}
