//! The automorphism φ, the harmonic product `∗` on all of ℚ⟨x,y⟩, and the
//! diamond product `w₁ ⋄ w₂ = φ(φ(w₁) ∗ φ(w₂))`.
//!
//! Word-pair products have integer coefficients and are memoized per thread;
//! polynomial products are their bilinear extensions.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::algebra::{Letter, NcPoly, Word};
use crate::scalar::Coeff;

/// Integer linear combination of words, sorted by word.
pub type IntTerms = Rc<[(Word, i64)]>;

type PairCache = RefCell<HashMap<(Word, Word), IntTerms>>;

thread_local! {
    static HARMONIC: PairCache = RefCell::new(HashMap::new());
    static DIAMOND: PairCache = RefCell::new(HashMap::new());
}

/// Drops the per-thread product memo tables.
pub fn clear_caches() {
    HARMONIC.with(|c| c.borrow_mut().clear());
    DIAMOND.with(|c| c.borrow_mut().clear());
}

fn ordered(a: Word, b: Word) -> (Word, Word) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn finish(acc: HashMap<Word, i64>) -> IntTerms {
    let mut v: Vec<(Word, i64)> = acc.into_iter().filter(|&(_, k)| k != 0).collect();
    v.sort_unstable_by_key(|&(w, _)| w);
    v.into()
}

/// Visits the terms of φ(w): each `x` becomes `x` or `y`, each `y` becomes `-y`.
pub fn for_each_phi_term(w: Word, mut f: impl FnMut(Word, i64)) {
    let n = w.degree();
    let bits = w.to_bits();
    let full = if n == 0 { 0 } else { u128::MAX >> (128 - n) };
    let xs = !bits & full;
    let sign = if (n - w.count_x()).is_multiple_of(2) { 1 } else { -1 };
    // enumerate every subset of the x positions
    let mut sub: u128 = 0;
    loop {
        f(Word::from_bits(n, bits | sub), sign);
        if sub == xs {
            break;
        }
        sub = sub.wrapping_sub(xs) & xs;
    }
}

/// Splits a `y`-leading word into its first block `y x^{k-1}` and the rest.
fn split_block(w: Word) -> (usize, Word) {
    debug_assert!(w.starts_with(Letter::Y));
    let mut k = 1;
    while w.get(k) == Some(Letter::X) {
        k += 1;
    }
    (k, w.split_at(k).1)
}

fn block(k: usize) -> Word {
    Word::from_letters(std::iter::once(Letter::Y).chain(std::iter::repeat_n(Letter::X, k - 1)))
}

/// Harmonic product of two words.
pub fn harmonic_words(a: Word, b: Word) -> IntTerms {
    if a.is_empty() {
        return Rc::from([(b, 1)]);
    }
    if b.is_empty() {
        return Rc::from([(a, 1)]);
    }
    let key = ordered(a, b);
    if let Some(hit) = HARMONIC.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut acc: HashMap<Word, i64> = HashMap::new();
    let mut put = |prefix: Word, terms: &[(Word, i64)]| {
        for &(w, k) in terms {
            *acc.entry(prefix.concat(w)).or_insert(0) += k;
        }
    };
    match (a.split_first().unwrap(), b.split_first().unwrap()) {
        ((Letter::X, rest), _) => put(Word::x(), &harmonic_words(rest, b)),
        (_, (Letter::X, rest)) => put(Word::x(), &harmonic_words(a, rest)),
        _ => {
            let (k, u) = split_block(a);
            let (l, v) = split_block(b);
            put(block(k), &harmonic_words(u, b));
            put(block(l), &harmonic_words(a, v));
            put(block(k + l), &harmonic_words(u, v));
        }
    }
    let out = finish(acc);
    HARMONIC.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Degrees up to which word-pair diamonds use dense coefficient vectors.
const DENSE_LIMIT: usize = 22;

/// Applies φ in place to a dense vector indexed by the bits of degree-`d`
/// words: per letter, `αx + βy ↦ αx + (α − β)y`.
fn phi_dense(v: &mut [i64], d: usize) {
    debug_assert_eq!(v.len(), 1 << d);
    for j in 0..d {
        let bit = 1usize << j;
        for i in 0..v.len() {
            if i & bit == 0 {
                let (a, b) = (v[i], v[i | bit]);
                v[i | bit] = a - b;
            }
        }
    }
}

fn phi_terms(w: Word) -> Vec<(Word, i64)> {
    let mut out = Vec::with_capacity(1 << w.count_x().min(20));
    for_each_phi_term(w, |v, s| out.push((v, s)));
    out
}

/// Diamond product of two words, computed as φ(φ(a) ∗ φ(b)).
pub fn diamond_words(a: Word, b: Word) -> IntTerms {
    if a.is_empty() {
        return Rc::from([(b, 1)]);
    }
    if b.is_empty() {
        return Rc::from([(a, 1)]);
    }
    let key = ordered(a, b);
    if let Some(hit) = DIAMOND.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let phi_a = phi_terms(a);
    let phi_b = phi_terms(b);
    // harmonic products are homogeneous in degree
    let d = a.degree() + b.degree();
    let out: IntTerms = if d <= DENSE_LIMIT {
        let mut dense = vec![0i64; 1 << d];
        for &(wa, sa) in &phi_a {
            for &(wb, sb) in &phi_b {
                let s = sa * sb;
                for &(w, k) in harmonic_words(wa, wb).iter() {
                    dense[w.to_bits() as usize] += s * k;
                }
            }
        }
        phi_dense(&mut dense, d);
        dense
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(bits, &k)| (Word::from_bits(d, bits as u128), k))
            .collect()
    } else {
        let mut star: HashMap<Word, i64> = HashMap::new();
        for &(wa, sa) in &phi_a {
            for &(wb, sb) in &phi_b {
                for &(w, k) in harmonic_words(wa, wb).iter() {
                    *star.entry(w).or_insert(0) += sa * sb * k;
                }
            }
        }
        let mut acc: HashMap<Word, i64> = HashMap::new();
        for (w, k) in star {
            if k != 0 {
                for_each_phi_term(w, |v, s| *acc.entry(v).or_insert(0) += s * k);
            }
        }
        finish(acc)
    };
    DIAMOND.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// φ: the automorphism with `x ↦ x + y`, `y ↦ -y`, extended linearly.
pub fn phi<R: Coeff>(p: &NcPoly<R>) -> NcPoly<R> {
    let mut out = NcPoly::zero();
    for (w, r) in p.terms() {
        let neg = -r.clone();
        for_each_phi_term(*w, |v, s| out.add_term_ref(v, if s > 0 { r } else { &neg }));
    }
    out
}

fn bilinear<R: Coeff>(p: &NcPoly<R>, q: &NcPoly<R>, f: impl Fn(Word, Word) -> IntTerms) -> NcPoly<R> {
    let mut out = NcPoly::zero();
    for (a, ra) in p.terms() {
        for (b, rb) in q.terms() {
            let k = ra.mul_ref(rb);
            for &(w, n) in f(*a, *b).iter() {
                out.add_term(w, k.scale_int(n));
            }
        }
    }
    out
}

/// Harmonic (stuffle) product `p ∗ q`.
pub fn harmonic<R: Coeff>(p: &NcPoly<R>, q: &NcPoly<R>) -> NcPoly<R> {
    bilinear(p, q, harmonic_words)
}

/// Diamond product `p ⋄ q = φ(φ(p) ∗ φ(q))`.
pub fn diamond<R: Coeff>(p: &NcPoly<R>, q: &NcPoly<R>) -> NcPoly<R> {
    bilinear(p, q, diamond_words)
}
