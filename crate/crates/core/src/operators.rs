//! Linear operators on ℚ⟨x,y⟩: the degree operator `H`, the derivations `∂ₙ`,
//! `θ` and `θ̃`, the quasi-derivations `∂ₙ^(c)`, and the elements `qₙ`.
//!
//! Operators depending on the parameter `c` live on [`Operators`], which
//! carries the value of `c` (the formal generator of ℚ[c] for exact
//! identities, or a specialization) and its memo tables.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Index, Letter, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Scalar};
use crate::{CPoly, ParamPoly, Poly};

/// `H(w) = deg(w) · w`.
pub fn cap_h<R: Coeff>(p: &NcPoly<R>) -> NcPoly<R> {
    let mut out = NcPoly::zero();
    for (w, r) in p.terms() {
        out.add_term(*w, r.scale_int(w.degree() as i64));
    }
    out
}

/// `∂ₙ` on a single word as integer terms.
fn del_word(n: usize, w: Word) -> Vec<(Word, i64)> {
    // ∂ₙ(x) = y zⁿ⁻¹ x = -∂ₙ(y)
    let image: Vec<Word> = Word::all_of_degree(n - 1)
        .map(|mid| Word::y().concat(mid).push(Letter::X))
        .collect();
    let mut out = Vec::with_capacity(w.degree() * image.len());
    for i in 0..w.degree() {
        let (head, tail) = w.split_at(i);
        let (l, tail) = tail.split_first().unwrap();
        let sign = if l == Letter::X { 1 } else { -1 };
        for m in &image {
            out.push((head.concat(*m).concat(tail), sign));
        }
    }
    out
}

/// The derivation `∂ₙ` with `∂ₙ(x) = y(x+y)ⁿ⁻¹x = -∂ₙ(y)`.
pub fn del_n<R: Coeff>(n: usize, p: &NcPoly<R>) -> Result<NcPoly<R>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut out = NcPoly::zero();
    for (w, r) in p.terms() {
        for (v, k) in del_word(n, *w) {
            out.add_term(v, r.scale_int(k));
        }
    }
    Ok(out)
}

/// Optional shift of θ by `±(zw − wz)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThetaShift {
    #[default]
    None,
    Plus,
    Minus,
}

/// Deliberate defects for negative-control runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the `c·∂₁` term inside θ.
    ThetaSign,
}

type Memo<K, R> = RefCell<HashMap<K, Arc<NcPoly<R>>>>;

/// θ, θ̃, `∂ₙ^(c)`, `qₙ` and `a(𝒍)` at a fixed value of `c`.
///
/// Memo tables are per instance and not shared across threads.
pub struct Operators<R: Coeff> {
    c: R,
    shift: ThetaShift,
    fault: Option<Fault>,
    theta_memo: Memo<Word, R>,
    qd_memo: Memo<(usize, Word), R>,
    q_memo: RefCell<Vec<NcPoly<R>>>,
    a_memo: RefCell<HashMap<Index, R>>,
}

impl<S: Scalar> Operators<CPoly<S>> {
    /// Operators over the formal parameter `c`.
    pub fn formal() -> Self {
        Self::new(CPoly::c())
    }
}

impl<R: Coeff> Operators<R> {
    pub fn new(c: R) -> Self {
        Operators {
            c,
            shift: ThetaShift::None,
            fault: None,
            theta_memo: RefCell::default(),
            qd_memo: RefCell::default(),
            q_memo: RefCell::default(),
            a_memo: RefCell::default(),
        }
    }

    pub fn with_shift(mut self, shift: ThetaShift) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn c(&self) -> &R {
        &self.c
    }

    fn theta_word(&self, w: Word) -> Arc<NcPoly<R>> {
        if let Some(hit) = self.theta_memo.borrow().get(&w).cloned() {
            return hit;
        }
        let mut out = self.theta_letters(w);
        if self.shift != ThetaShift::None {
            // (zw - wz)/2
            let z = NcPoly::<R>::z();
            let word = NcPoly::word(w);
            let comm = (&z.concat(&word) - &word.concat(&z)).div_int(2);
            match self.shift {
                ThetaShift::Plus => out += &comm,
                ThetaShift::Minus => out -= &comm,
                ThetaShift::None => {}
            }
        }
        let out = Arc::new(out);
        self.theta_memo.borrow_mut().insert(w, out.clone());
        out
    }

    /// θ(u w′) = u (z w′ + θ(w′) + c ∂₁(w′)), θ(1) = 0.
    fn theta_letters(&self, w: Word) -> NcPoly<R> {
        let Some((u, rest)) = w.split_first() else {
            return NcPoly::zero();
        };
        let c = match self.fault {
            Some(Fault::ThetaSign) => -self.c.clone(),
            None => self.c.clone(),
        };
        let mut inner = NcPoly::<R>::z().concat_word(rest);
        inner += &self.theta_letters(rest);
        for (v, k) in del_word(1, rest) {
            inner.add_term(v, c.scale_int(k));
        }
        inner.prepend_letter(u)
    }

    /// θ = θ^(c): `θ(u) = uz` for letters and
    /// `θ(ww′) = θ(w)w′ + wθ(w′) + c H(w) ∂₁(w′)`.
    pub fn theta(&self, p: &NcPoly<R>) -> NcPoly<R> {
        let mut out = NcPoly::zero();
        for (w, r) in p.terms() {
            out.add_scaled(&self.theta_word(*w), r);
        }
        out
    }

    /// θ̃(w) = θ(w) + c H(w) y.
    pub fn theta_tilde(&self, p: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.theta(p);
        out.add_scaled(&cap_h(p).append_letter(Letter::Y), &self.c);
        out
    }

    fn quasi_del_word(&self, n: usize, w: Word) -> Arc<NcPoly<R>> {
        if let Some(hit) = self.qd_memo.borrow().get(&(n, w)).cloned() {
            return hit;
        }
        let out = if n == 1 {
            NcPoly::from_int_terms(del_word(1, w))
        } else {
            // (θ Dₙ₋₁ − Dₙ₋₁ θ)(w) / (n − 1)
            let prev = self.quasi_del_word(n - 1, w);
            let mut acc = self.theta(&prev);
            for (v, r) in self.theta_word(w).terms() {
                acc.add_scaled(&self.quasi_del_word(n - 1, *v), &-r.clone());
            }
            acc.div_int(n as i64 - 1)
        };
        let out = Arc::new(out);
        self.qd_memo.borrow_mut().insert((n, w), out.clone());
        out
    }

    /// `∂ₙ^(c) = ad(θ)ⁿ⁻¹(∂₁) / (n−1)!`.
    pub fn quasi_del(&self, n: usize, p: &NcPoly<R>) -> Result<NcPoly<R>> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut out = NcPoly::zero();
        for (w, r) in p.terms() {
            out.add_scaled(&self.quasi_del_word(n, *w), r);
        }
        Ok(out)
    }

    /// `q₁ = y`, `qₙ = θ̃(qₙ₋₁)/(n−1)`.
    pub fn q_n_recursive(&self, n: usize) -> Result<NcPoly<R>> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut memo = self.q_memo.borrow_mut();
        if memo.is_empty() {
            memo.push(NcPoly::y());
        }
        while memo.len() < n {
            let k = memo.len() as i64;
            let next = self.theta_tilde(memo.last().unwrap()).div_int(k);
            memo.push(next);
        }
        Ok(memo[n - 1].clone())
    }

    /// `a(𝒍)`: `a(1) = 1` and
    /// `a(𝒍) = Σᵢ (lᵢ − 1 − (l₁+⋯+lᵢ₋₁)c) a(𝒍⁽ⁱ⁾)`, where `𝒍⁽ⁱ⁾` lowers
    /// `lᵢ` by one and drops it when it reaches zero.
    pub fn a_coeff(&self, l: &Index) -> R {
        if l.parts() == [1] {
            return R::one();
        }
        if let Some(hit) = self.a_memo.borrow().get(l) {
            return hit.clone();
        }
        let parts = l.parts();
        let mut acc = R::zero();
        let mut prefix = 0i64;
        for (i, &li) in parts.iter().enumerate() {
            let factor = R::from_int(li as i64 - 1) - self.c.scale_int(prefix);
            prefix += li as i64;
            if factor.is_zero() {
                continue;
            }
            let mut lowered = parts.to_vec();
            if li == 1 {
                lowered.remove(i);
            } else {
                lowered[i] -= 1;
            }
            let sub = Index::new(lowered).expect("weight ≥ 2 leaves a nonempty index");
            acc.add_ref(&factor.mul_ref(&self.a_coeff(&sub)));
        }
        self.a_memo.borrow_mut().insert(l.clone(), acc.clone());
        acc
    }

    /// `qₙ = −(1/(n−1)!) Σ_{|𝒍|=n} a(𝒍) w(𝒍)` with
    /// `w(𝒍) = (−1)ˢ y z^{l₁−1} ⋯ y z^{lₛ−1}`.
    pub fn q_n_explicit(&self, n: usize) -> Result<NcPoly<R>> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut sum = NcPoly::zero();
        for l in Index::compositions(n as u32) {
            let a = self.a_coeff(&l);
            if a.is_zero() {
                continue;
            }
            let mut word = NcPoly::<R>::one();
            for &k in l.parts() {
                word = word.append_letter(Letter::Y).concat(&NcPoly::z_pow(k as usize - 1));
            }
            let sign = if l.depth() % 2 == 0 { 1 } else { -1 };
            sum.add_scaled(&word, &a.scale_int(sign));
        }
        let mut q = -sum;
        for k in 2..n as i64 {
            q = q.div_int(k);
        }
        Ok(q)
    }

    /// `qₙ` by recursion, after checking it against the explicit formula.
    pub fn q_n_checked(&self, n: usize) -> Result<NcPoly<R>> {
        let rec = self.q_n_recursive(n)?;
        let exp = self.q_n_explicit(n)?;
        if rec != exp {
            return Err(Error::Consistency(format!("q_{n}: recursive and explicit constructions differ")));
        }
        Ok(rec)
    }

    /// `(w ⋄ qₙ) x` for `p = w x`: the right-hand side of the main identity,
    /// computed without the adjoint recursion.
    pub fn quasi_del_via_diamond(&self, n: usize, p: &NcPoly<R>) -> Result<NcPoly<R>> {
        let head = p.right_divide_by_x()?;
        let q = self.q_n_recursive(n)?;
        Ok(crate::products::diamond(&head, &q).append_letter(Letter::X))
    }
}

/// `a(𝒍)` as a polynomial in the formal `c`.
pub fn a_coeff(l: &Index) -> ParamPoly {
    Operators::<ParamPoly>::formal().a_coeff(l)
}

/// `qₙ` with formal `c`, by recursion.
pub fn q_n_recursive(n: usize) -> Result<Poly> {
    Operators::<ParamPoly>::formal().q_n_recursive(n)
}

/// `qₙ` with formal `c`, by the explicit formula.
pub fn q_n_explicit(n: usize) -> Result<Poly> {
    Operators::<ParamPoly>::formal().q_n_explicit(n)
}

impl<R: Coeff> Clone for Operators<R> {
    fn clone(&self) -> Self {
        Operators::new(self.c.clone()).with_shift(self.shift).with_fault(self.fault)
    }
}

impl<R: Coeff> std::fmt::Debug for Operators<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Operators")
            .field("c", &self.c)
            .field("shift", &self.shift)
            .field("fault", &self.fault)
            .finish_non_exhaustive()
    }
}
