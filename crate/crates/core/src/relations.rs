//! Relation families among multiple zeta values.
//!
//! A [`Relation`] is a ℚ[c]-linear combination of admissible indices that
//! the MZV map sends to zero. Two families are generated: the
//! quasi-derivation relations `Z(∂ₙ^(c)(w)) = 0` for `w ∈ y𝔥x`, and the
//! linear part of Kawashima's relations `Z(φ(w₁ ∗ w₂)x) = 0` for
//! `w₁, w₂ ∈ y𝔥`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::push_scaled;
use crate::algebra::{Index, Letter, Word};
use crate::error::{Error, Result};
use crate::products::{harmonic, phi};
use crate::scalar::Coeff;
use crate::{Operators, ParamPoly, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "qd")]
    QuasiDerivation,
    #[serde(rename = "kawashima")]
    Kawashima,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::QuasiDerivation => "qd",
            Family::Kawashima => "kawashima",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "qd" => Ok(Family::QuasiDerivation),
            "kawashima" => Ok(Family::Kawashima),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected qd or kawashima)"))),
        }
    }
}

/// `Σ coefficient · ζ(index) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "RelationRecord", try_from = "RelationRecord")]
pub struct Relation {
    pub family: Family,
    /// Operator index for the quasi-derivation family.
    pub n: Option<usize>,
    pub generators: Vec<Word>,
    /// Weight shared by every index of the combination.
    pub weight: u32,
    /// Set on the per-power pieces produced by [`expand_relation_in_c`].
    pub c_power: Option<usize>,
    /// Sorted by index, no zero coefficients.
    pub combination: Vec<(Index, ParamPoly)>,
}

impl Relation {
    pub fn is_empty(&self) -> bool {
        self.combination.is_empty()
    }

    /// Short descriptor such as `qd n=2 w=yx`.
    pub fn source(&self) -> String {
        let mut s = self.family.to_string();
        if let Some(n) = self.n {
            s.push_str(&format!(" n={n}"));
        }
        let gens: Vec<String> = self.generators.iter().map(Word::to_string).collect();
        s.push_str(&format!(" w={}", gens.join(",")));
        if let Some(e) = self.c_power {
            s.push_str(&format!(" c^{e}"));
        }
        s
    }

    /// The combination with `c` specialized.
    pub fn specialize(&self, c: &Rational) -> Vec<(Index, Rational)> {
        self.combination
            .iter()
            .map(|(k, r)| (k.clone(), r.eval(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Human-readable `coef·ζ(k) + … = 0`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, r) in &self.combination {
            push_scaled(&mut out, r, &format!("ζ{k}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(" = 0");
        out
    }
}

/// Wire form of one coefficient term: `[exponent, numerator, denominator]`.
pub type CoeffTerm = (usize, String, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub index: String,
    pub coefficient: Vec<CoeffTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub family: Family,
    pub n: Option<usize>,
    pub generators: Vec<String>,
    pub weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_power: Option<usize>,
    pub combination: Vec<TermRecord>,
}

pub fn encode_coeff(r: &ParamPoly) -> Vec<CoeffTerm> {
    r.terms().map(|(e, s)| (e, s.numer().to_string(), s.denom().to_string())).collect()
}

pub fn decode_coeff(terms: &[CoeffTerm]) -> Result<ParamPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for (e, num, den) in terms {
        out.push((*e, format!("{num}/{den}").parse::<Rational>()?));
    }
    Ok(ParamPoly::from_terms(out))
}

impl From<Relation> for RelationRecord {
    fn from(r: Relation) -> RelationRecord {
        RelationRecord {
            family: r.family,
            n: r.n,
            generators: r.generators.iter().map(Word::to_string).collect(),
            weight: r.weight,
            c_power: r.c_power,
            combination: r
                .combination
                .iter()
                .map(|(k, c)| TermRecord { index: k.to_string(), coefficient: encode_coeff(c) })
                .collect(),
        }
    }
}

impl TryFrom<RelationRecord> for Relation {
    type Error = Error;

    fn try_from(rec: RelationRecord) -> Result<Relation> {
        Ok(Relation {
            family: rec.family,
            n: rec.n,
            generators: rec.generators.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            weight: rec.weight,
            c_power: rec.c_power,
            combination: rec
                .combination
                .iter()
                .map(|t| Ok((t.index.parse()?, decode_coeff(&t.coefficient)?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Words of degree `weight` beginning with `y` and ending with `x`,
/// lexicographic with `x < y`.
pub fn enumerate_admissible(weight: usize) -> Result<Vec<Word>> {
    if weight < 2 {
        return Err(Error::InvalidBound(format!("admissible words need weight ≥ 2, got {weight}")));
    }
    Ok(Word::all_of_degree(weight - 2).map(|m| Word::y().concat(m).push(Letter::X)).collect())
}

/// Words of degree `weight` beginning with `y`.
pub fn enumerate_y_words(weight: usize) -> Vec<Word> {
    if weight == 0 {
        return Vec::new();
    }
    Word::all_of_degree(weight - 1).map(|m| Word::y().concat(m)).collect()
}

/// Converts a polynomial in y𝔥x to `(index, coefficient)` pairs sorted by index.
pub fn to_zeta_combination(p: &Poly) -> Result<Vec<(Index, ParamPoly)>> {
    let mut out = Vec::with_capacity(p.len());
    for (w, r) in p.terms() {
        if !w.is_admissible() {
            return Err(Error::NotAdmissible(format!("{w:?}")));
        }
        out.push((Index::from_word(*w)?, r.clone()));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn homogeneous_weight(p: &Poly, expected: usize) -> Result<u32> {
    if !p.is_homogeneous_of(expected) {
        return Err(Error::Consistency(format!("relation is not of homogeneous weight {expected}")));
    }
    Ok(expected as u32)
}

/// `Z(∂ₙ^(c)(w)) = 0`, after checking the adjoint recursion against the
/// diamond formula `(w x⁻¹ ⋄ qₙ) x`.
pub fn quasi_derivation_relation(ops: &Operators<ParamPoly>, n: usize, w: Word) -> Result<Relation> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let pw = Poly::word(w);
    let direct = ops.quasi_del(n, &pw)?;
    if !direct.all_words_admissible() {
        return Err(Error::Consistency(format!("∂_{n}^(c)({w}) leaves y𝔥x")));
    }
    let via_diamond = ops.quasi_del_via_diamond(n, &pw)?;
    if direct != via_diamond {
        return Err(Error::Consistency(format!("∂_{n}^(c)({w}): adjoint recursion and diamond formula differ")));
    }
    Ok(Relation {
        family: Family::QuasiDerivation,
        n: Some(n),
        generators: vec![w],
        weight: homogeneous_weight(&direct, w.degree() + n)?,
        c_power: None,
        combination: to_zeta_combination(&direct)?,
    })
}

/// `Z(φ(w₁ ∗ w₂)x) = 0` for `w₁, w₂ ∈ y𝔥`.
pub fn kawashima_linear_relation(w1: Word, w2: Word) -> Result<Relation> {
    for w in [w1, w2] {
        if !w.starts_with(Letter::Y) {
            return Err(Error::NotInYH(format!("{w:?}")));
        }
    }
    let p = phi(&harmonic(&Poly::word(w1), &Poly::word(w2))).append_letter(Letter::X);
    if !p.all_words_admissible() {
        return Err(Error::Consistency(format!("φ({w1}∗{w2})x leaves y𝔥x")));
    }
    Ok(Relation {
        family: Family::Kawashima,
        n: None,
        generators: vec![w1, w2],
        weight: homogeneous_weight(&p, w1.degree() + w2.degree() + 1)?,
        c_power: None,
        combination: to_zeta_combination(&p)?,
    })
}

/// One constant-coefficient relation per power of `c`.
pub fn expand_relation_in_c(r: &Relation) -> Vec<Relation> {
    let max = r.combination.iter().filter_map(|(_, c)| c.degree()).max();
    let Some(max) = max else {
        return Vec::new();
    };
    (0..=max)
        .filter_map(|e| {
            let combination: Vec<(Index, ParamPoly)> = r
                .combination
                .iter()
                .map(|(k, c)| (k.clone(), ParamPoly::constant(c.coeff(e))))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (!combination.is_empty()).then(|| Relation { c_power: Some(e), combination, ..r.clone() })
        })
        .collect()
}

/// Inverse of [`expand_relation_in_c`].
pub fn recombine_relation(parts: &[Relation]) -> Vec<(Index, ParamPoly)> {
    let mut acc: std::collections::BTreeMap<Index, ParamPoly> = Default::default();
    for part in parts {
        let e = part.c_power.unwrap_or(0);
        for (k, c) in &part.combination {
            acc.entry(k.clone())
                .or_insert_with(ParamPoly::zero)
                .add_ref(&ParamPoly::monomial(e, c.coeff(0)));
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Inclusive range of positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn new(lo: usize, hi: usize) -> Result<Range> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidBound(format!("{lo}..{hi}")));
        }
        Ok(Range { lo, hi })
    }

    pub fn single(v: usize) -> Result<Range> {
        Range::new(v, v)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = Error;

    /// `"k"` or `"lo..hi"`.
    fn from_str(s: &str) -> Result<Range> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad range {s:?}")));
        match s.split_once("..") {
            Some((a, b)) => Range::new(num(a)?, num(b.trim_start_matches('='))?),
            None => Range::single(num(s)?),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// All quasi-derivation relations with generator weight and `n` in range,
/// ordered by (relation weight, n, generator).
pub fn quasi_derivation_family(ops: &Operators<ParamPoly>, weights: Range, ns: Range) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for k in weights.iter() {
        let words = enumerate_admissible(k)?;
        for n in ns.iter() {
            for &w in &words {
                out.push(quasi_derivation_relation(ops, n, w)?);
            }
        }
    }
    sort_relations(&mut out);
    Ok(out)
}

/// Kawashima relations for unordered pairs `w₁ ≤ w₂` of y-words whose
/// weights lie in range.
pub fn kawashima_family(weights: Range) -> Result<Vec<Relation>> {
    let words: Vec<Word> = weights.iter().flat_map(enumerate_y_words).collect();
    let mut out = Vec::new();
    for (i, &a) in words.iter().enumerate() {
        for &b in &words[i..] {
            out.push(kawashima_linear_relation(a, b)?);
        }
    }
    sort_relations(&mut out);
    Ok(out)
}

pub fn sort_relations(rels: &mut [Relation]) {
    rels.sort_by(|a, b| {
        (a.weight, a.n, &a.generators, a.c_power).cmp(&(b.weight, b.n, &b.generators, b.c_power))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn int(k: i64) -> ParamPoly {
        ParamPoly::from_int(k)
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_admissible(2).unwrap(), vec![w("yx")]);
        assert_eq!(enumerate_admissible(3).unwrap(), vec![w("yxx"), w("yyx")]);
        let four = enumerate_admissible(4).unwrap();
        // brute force over all 16 words of degree 4
        let brute: Vec<Word> = Word::all_of_degree(4).filter(Word::is_admissible).collect();
        assert_eq!(four, brute);
        assert_eq!(four.len(), 4);
        assert!(enumerate_admissible(1).is_err());
    }

    #[test]
    fn euler_relation() {
        let ops = Operators::formal();
        let r = quasi_derivation_relation(&ops, 1, w("yx")).unwrap();
        assert_eq!(r.combination, vec![(idx("(1,2)"), int(1)), (idx("(3)"), int(-1))]);
        assert_eq!(r.weight, 3);
        assert_eq!(expand_relation_in_c(&r), vec![Relation { c_power: Some(0), ..r.clone() }]);
    }

    #[test]
    fn classical_part_of_n2() {
        let ops = Operators::formal();
        let r = quasi_derivation_relation(&ops, 2, w("yx")).unwrap();
        let parts = expand_relation_in_c(&r);
        assert_eq!(parts.iter().map(|p| p.c_power.unwrap()).collect::<Vec<_>>(), vec![0, 1]);
        let classical = crate::operators::del_n(2, &Poly::word(w("yx"))).unwrap();
        let c0: Vec<(Index, ParamPoly)> = to_zeta_combination(&classical).unwrap();
        assert_eq!(parts[0].combination, c0);
        assert_eq!(recombine_relation(&parts), r.combination);
    }

    #[test]
    fn two_paths_on_weight_three() {
        let ops = Operators::formal();
        let r = quasi_derivation_relation(&ops, 1, w("yyx")).unwrap();
        assert_eq!(r.weight, 4);
        assert!(r.combination.iter().all(|(k, _)| k.is_admissible() && k.weight() == 4));
        assert!(matches!(quasi_derivation_relation(&ops, 1, w("yxy")), Err(Error::NotAdmissible(_))));
        assert!(matches!(quasi_derivation_relation(&ops, 1, w("xyx")), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn kawashima_examples() {
        let r = kawashima_linear_relation(w("y"), w("y")).unwrap();
        let ops = Operators::formal();
        let euler = quasi_derivation_relation(&ops, 1, w("yx")).unwrap();
        assert_eq!(r.combination, euler.combination);
        let r = kawashima_linear_relation(w("y"), w("yx")).unwrap();
        assert_eq!(r.weight, 4);
        assert!(r.combination.iter().all(|(k, _)| k.weight() == 4 && k.is_admissible()));
        assert!(matches!(kawashima_linear_relation(Word::empty(), w("y")), Err(Error::NotInYH(_))));
    }

    #[test]
    fn zeta_combination_examples() {
        let p = Poly::from_int_terms([(w("yyx"), 1), (w("yxx"), -1)]);
        assert_eq!(to_zeta_combination(&p).unwrap(), vec![(idx("(1,2)"), int(1)), (idx("(3)"), int(-1))]);
        assert!(to_zeta_combination(&Poly::zero()).unwrap().is_empty());
        assert_eq!(to_zeta_combination(&Poly::word(w("yxy"))), Err(Error::NotAdmissible("yxy".into())));
    }

    #[test]
    fn empty_relation_expands_to_nothing() {
        let r = Relation {
            family: Family::QuasiDerivation,
            n: Some(1),
            generators: vec![w("yx")],
            weight: 3,
            c_power: None,
            combination: vec![],
        };
        assert!(expand_relation_in_c(&r).is_empty());
    }

    #[test]
    fn serialization_round_trip() {
        let ops = Operators::formal();
        let r = quasi_derivation_relation(&ops, 3, w("yxyx")).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: Relation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["family"], "qd");
        assert_eq!(v["generators"][0], "yxyx");
        assert_eq!(v["weight"], 7);
        let term = &v["combination"][0]["coefficient"][0];
        assert!(term[0].is_u64() && term[1].is_string() && term[2].is_string());
    }

    #[test]
    fn family_sizes_and_order() {
        let ops = Operators::formal();
        let rels = quasi_derivation_family(&ops, Range::single(3).unwrap(), Range::single(1).unwrap()).unwrap();
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[0].generators, vec![w("yxx")]);
        let rels = kawashima_family(Range::new(1, 2).unwrap()).unwrap();
        // y-words of weight 1..2: y, yx, yy → 6 unordered pairs
        assert_eq!(rels.len(), 6);
        assert!(rels.windows(2).all(|p| p[0].weight <= p[1].weight));
    }

    #[test]
    fn ranges() {
        assert_eq!("3".parse::<Range>().unwrap(), Range { lo: 3, hi: 3 });
        assert_eq!("2..5".parse::<Range>().unwrap(), Range { lo: 2, hi: 5 });
        assert!("5..2".parse::<Range>().is_err());
        assert!("0".parse::<Range>().is_err());
        assert_eq!(Range::new(2, 5).unwrap().to_string(), "2..5");
    }

    #[test]
    fn specialize_drops_vanishing_terms() {
        let ops = Operators::formal();
        let r = quasi_derivation_relation(&ops, 2, w("yx")).unwrap();
        let at_minus_one = r.specialize(&Rational::integer(-1));
        // the (1,1,2) coefficient is 1 + c
        assert!(at_minus_one.iter().all(|(k, _)| k != &idx("(1,1,2)")));
        assert!(r.combination.iter().any(|(k, c)| k == &idx("(1,1,2)") && c == &(ParamPoly::one() + ParamPoly::c())));
    }
}
