use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::param::CPoly;
use super::word::{Letter, Word};
use crate::error::Error;
use crate::scalar::{Coeff, Scalar};
use crate::Rational;

/// An element of ℚ⟨x,y⟩ (or of R⟨x,y⟩ for a coefficient ring `R`).
///
/// Canonical: no stored coefficient is zero, so two polynomials are equal
/// exactly when their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct NcPoly<R> {
    terms: BTreeMap<Word, R>,
}

impl<R: Coeff> Default for NcPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> NcPoly<R> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, R::one())
    }

    pub fn monomial(w: Word, r: R) -> Self {
        let mut p = Self::zero();
        p.add_term(w, r);
        p
    }

    pub fn x() -> Self {
        Self::word(Word::x())
    }

    pub fn y() -> Self {
        Self::word(Word::y())
    }

    /// `z = x + y`.
    pub fn z() -> Self {
        Self::x() + Self::y()
    }

    /// `z^n`, expanded.
    pub fn z_pow(n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.concat(&Self::z()))
    }

    pub fn from_int_terms<I: IntoIterator<Item = (Word, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, k) in terms {
            p.add_term(w, R::from_int(k));
        }
        p
    }

    pub fn add_term(&mut self, w: Word, r: R) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(r);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_ref(&r);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, w: Word, r: &R) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(r.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_ref(r);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k · p`.
    pub fn add_scaled(&mut self, p: &NcPoly<R>, k: &R) {
        if k.is_zero() {
            return;
        }
        let unit = k.is_one();
        for (w, r) in &p.terms {
            if unit {
                self.add_term_ref(*w, r);
            } else {
                self.add_term(*w, r.mul_ref(k));
            }
        }
    }

    /// `self += k · p` for an integer `k`.
    pub fn add_scaled_int(&mut self, p: &NcPoly<R>, k: i64) {
        match k {
            0 => {}
            1 => p.terms.iter().for_each(|(w, r)| self.add_term_ref(*w, r)),
            _ => p.terms.iter().for_each(|(w, r)| self.add_term(*w, r.scale_int(k))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    /// Terms in graded-lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|w| w.degree() == degree)
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let mut out = Self::zero();
        out.add_scaled_int(self, k);
        out
    }

    pub fn div_int(&self, d: i64) -> Self {
        self.map_coeffs(|r| r.div_int(d))
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&R) -> T) -> NcPoly<T> {
        let mut out = NcPoly::zero();
        for (w, r) in &self.terms {
            out.add_term(*w, f(r));
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ra) in &self.terms {
            for (b, rb) in &other.terms {
                out.add_term(a.concat(*b), ra.mul_ref(rb));
            }
        }
        out
    }

    pub fn concat_word(&self, w: Word) -> Self {
        self.map_words(|v| v.concat(w))
    }

    pub fn prepend_word(&self, w: Word) -> Self {
        self.map_words(|v| w.concat(v))
    }

    pub fn prepend_letter(&self, l: Letter) -> Self {
        self.prepend_word(Word::letter(l))
    }

    pub fn append_letter(&self, l: Letter) -> Self {
        self.concat_word(Word::letter(l))
    }

    /// Applies an injective word map; coefficients carry over.
    pub fn map_words(&self, f: impl Fn(Word) -> Word) -> Self {
        NcPoly { terms: self.terms.iter().map(|(w, r)| (f(*w), r.clone())).collect() }
    }

    /// Extends a word-level linear map to the polynomial.
    pub fn apply_linear(&self, mut f: impl FnMut(Word) -> NcPoly<R>) -> Self {
        let mut out = Self::zero();
        for (w, r) in &self.terms {
            out.add_scaled(&f(*w), r);
        }
        out
    }

    /// Strips one trailing `x` from every word.
    pub fn right_divide_by_x(&self) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (w, r) in &self.terms {
            match w.split_last() {
                Some((head, Letter::X)) => {
                    terms.insert(head, r.clone());
                }
                _ => return Err(Error::NotRightDivisible(format!("{w:?}"))),
            }
        }
        Ok(NcPoly { terms })
    }

    pub fn all_words_start_with(&self, l: Letter) -> bool {
        self.terms.keys().all(|w| w.starts_with(l))
    }

    pub fn all_words_admissible(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }
}

impl<S: Scalar> NcPoly<CPoly<S>> {
    /// Embeds constant coefficients.
    pub fn lift(p: &NcPoly<S>) -> Self {
        p.map_coeffs(|s| CPoly::constant(s.clone()))
    }

    /// Evaluates every coefficient at `c = a`.
    pub fn specialize(&self, a: &S) -> NcPoly<S> {
        self.map_coeffs(|r| r.eval(a))
    }

    /// Like [`NcPoly::specialize`] but stays in the parameter ring.
    pub fn substitute_c(&self, a: &S) -> Self {
        Self::lift(&self.specialize(a))
    }

    /// Groups terms by power of `c`: `p = Σ cᵉ · pₑ`, ascending `e`.
    pub fn expand_in_c(&self) -> Vec<(usize, NcPoly<S>)> {
        let mut by_exp: BTreeMap<usize, NcPoly<S>> = BTreeMap::new();
        for (w, r) in &self.terms {
            for (e, s) in r.terms() {
                by_exp.entry(e).or_insert_with(NcPoly::zero).add_term_ref(*w, s);
            }
        }
        by_exp.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Inverse of [`NcPoly::expand_in_c`].
    pub fn recombine_c(parts: &[(usize, NcPoly<S>)]) -> Self {
        let mut out = Self::zero();
        for (e, p) in parts {
            for (w, s) in p.terms() {
                out.add_term(*w, CPoly::monomial(*e, s.clone()));
            }
        }
        out
    }

    /// Largest power of `c` among the coefficients.
    pub fn c_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(CPoly::degree).max()
    }
}

impl<R: Coeff> Add for NcPoly<R> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<R: Coeff> Add<&NcPoly<R>> for &NcPoly<R> {
    type Output = NcPoly<R>;

    fn add(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Coeff> AddAssign<&NcPoly<R>> for NcPoly<R> {
    fn add_assign(&mut self, rhs: &NcPoly<R>) {
        for (w, r) in &rhs.terms {
            self.add_term_ref(*w, r);
        }
    }
}

impl<R: Coeff> SubAssign<&NcPoly<R>> for NcPoly<R> {
    fn sub_assign(&mut self, rhs: &NcPoly<R>) {
        for (w, r) in &rhs.terms {
            self.add_term(*w, -r.clone());
        }
    }
}

impl<R: Coeff> Sub for NcPoly<R> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<R: Coeff> Sub<&NcPoly<R>> for &NcPoly<R> {
    type Output = NcPoly<R>;

    fn sub(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<R: Coeff> Neg for NcPoly<R> {
    type Output = Self;

    fn neg(self) -> Self {
        NcPoly { terms: self.terms.into_iter().map(|(w, r)| (w, -r)).collect() }
    }
}

impl<R: Coeff> Mul for NcPoly<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.concat(&rhs)
    }
}

impl<R: Coeff> Mul<&NcPoly<R>> for &NcPoly<R> {
    type Output = NcPoly<R>;

    fn mul(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        self.concat(rhs)
    }
}

impl<R: Coeff> FromIterator<(Word, R)> for NcPoly<R> {
    fn from_iter<I: IntoIterator<Item = (Word, R)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (w, r) in iter {
            p.add_term(w, r);
        }
        p
    }
}

impl<R: Coeff> fmt::Debug for NcPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn push_signed(out: &mut String, neg: bool, body: &str) {
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(body);
}

/// Appends `coefficient · body` to a rendered sum, choosing the sign so
/// that `-1/2` shows as ` - (1/2)body` and `-c-c^2` as ` - (c+c^2)body`.
/// An empty `body` stands for the unit.
pub fn push_scaled(out: &mut String, r: &CPoly<Rational>, body: &str) {
    if r.is_constant() {
        let s = r.coeff(0);
        let neg = s < Rational::zero();
        let mag = if neg { -s } else { s };
        let text = if body.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            body.to_string()
        } else if mag.is_integer() {
            format!("{}{}", mag.numer(), body)
        } else {
            format!("({mag}){body}")
        };
        push_signed(out, neg, &text);
    } else {
        let neg_all = r.terms().all(|(_, s)| s < &Rational::zero());
        let shown = if neg_all { -r.clone() } else { r.clone() };
        let text = if shown.terms().count() == 1 && shown.coeff(shown.degree().unwrap()).is_one() {
            format!("{}{}", shown.render(), body)
        } else {
            format!("({}){}", shown.render(), body)
        };
        push_signed(out, neg_all, &text);
    }
}

impl NcPoly<CPoly<Rational>> {
    /// Human-readable form, e.g. `yx + (1+c)yy`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (w, r) in &self.terms {
            push_scaled(&mut out, r, &w.to_string());
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl NcPoly<Rational> {
    pub fn render(&self) -> String {
        NcPoly::<CPoly<Rational>>::lift(self).render()
    }
}
