//! Exhaustive symbolic checks of the algebraic identities, over all words up
//! to configurable degree bounds. Every suite compares two independent
//! computations exactly; a suite passes when it records zero mismatches.

use serde::{Deserialize, Serialize};

use crate::algebra::{Letter, Word};
use crate::operators::{cap_h, del_n, Fault, Operators, ThetaShift};
use crate::products::{diamond, harmonic, phi};
use crate::scalar::Coeff;
use crate::{ParamPoly, Poly, QPoly, Rational};

const MAX_EXAMPLES: usize = 5;

/// Degree bounds for [`run_all`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Degree of `w` in `∂ₙ^(c)(wx) = (w ⋄ qₙ)x`.
    pub identity_degree: usize,
    /// Single-word degree for the single-word suites.
    pub word_degree: usize,
    /// Combined degree for the two-argument product suites.
    pub pair_degree: usize,
    /// Degree bound for the derivation identity of θ̃ over ⋄.
    pub derivation_degree: usize,
    /// Word degree for the commutativity and θ-shift suites.
    pub commutator_degree: usize,
    pub n_max: usize,
    pub q_max: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            identity_degree: 7,
            word_degree: 7,
            pair_degree: 6,
            derivation_degree: 6,
            commutator_degree: 6,
            n_max: 5,
            q_max: 8,
        }
    }
}

impl Bounds {
    /// The same degree `d` for every suite.
    pub fn uniform(degree: usize, n_max: usize) -> Self {
        Bounds {
            identity_degree: degree,
            word_degree: degree,
            pair_degree: degree,
            derivation_degree: degree,
            commutator_degree: degree,
            n_max,
            q_max: n_max.max(1),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    /// Failures here do not affect the overall verdict.
    pub informational: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failing_cases: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: 0,
            informational: false,
            failing_cases: Vec::new(),
            note: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failing_cases.len() < MAX_EXAMPLES {
                self.failing_cases.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn words_up_to(d: usize) -> Vec<Word> {
    Word::all_up_to(d).collect()
}

/// Pairs of words with combined degree at most `d`.
fn pairs_up_to(d: usize) -> Vec<(Word, Word)> {
    let all = words_up_to(d);
    let mut out = Vec::new();
    for &a in &all {
        for &b in &all {
            if a.degree() + b.degree() <= d {
                out.push((a, b));
            }
        }
    }
    out
}

fn wp(w: Word) -> Poly {
    Poly::word(w)
}

/// `θ(ww′) = θ(w)w′ + wθ(w′) + c H(w) ∂₁(w′)` for every split.
pub fn theta_product_rule(ops: &Operators<ParamPoly>, max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("theta_product_rule");
    for (a, b) in pairs_up_to(max_degree) {
        let (pa, pb) = (wp(a), wp(b));
        let lhs = ops.theta(&wp(a.concat(b)));
        let mut rhs = ops.theta(&pa).concat(&pb);
        rhs += &pa.concat(&ops.theta(&pb));
        rhs.add_scaled(&cap_h(&pa).concat(&del_n(1, &pb).unwrap()), ops.c());
        r.check(lhs == rhs, || format!("w={a:?} w'={b:?}"));
    }
    r
}

/// φ is an involution on words and multiplicative on pairs.
pub fn phi_automorphism(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("phi_automorphism");
    for w in words_up_to(max_degree) {
        r.check(phi(&phi(&wp(w))) == wp(w), || format!("phi(phi({w:?}))"));
    }
    for (a, b) in pairs_up_to(max_degree.min(7)) {
        let lhs = phi(&wp(a.concat(b)));
        let rhs = phi(&wp(a)).concat(&phi(&wp(b)));
        r.check(lhs == rhs, || format!("phi({a:?}{b:?})"));
    }
    r
}

/// Commutativity and associativity of `∗`.
pub fn harmonic_laws(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("harmonic_comm_assoc");
    let pairs = pairs_up_to(max_degree);
    for &(a, b) in &pairs {
        r.check(harmonic(&wp(a), &wp(b)) == harmonic(&wp(b), &wp(a)), || format!("{a:?}*{b:?} commutes"));
    }
    for &(a, b) in &pairs {
        for c in words_up_to(max_degree - a.degree() - b.degree()) {
            let lhs = harmonic(&harmonic(&wp(a), &wp(b)), &wp(c));
            let rhs = harmonic(&wp(a), &harmonic(&wp(b), &wp(c)));
            r.check(lhs == rhs, || format!("({a:?}*{b:?})*{c:?}"));
        }
    }
    r
}

/// `xw₁ ⋄ yw₂ = x(w₁ ⋄ yw₂) + y(xw₁ ⋄ w₂)` for each `wᵢ` up to the bound.
pub fn diamond_shuffle_rule(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("diamond_shuffle_rule");
    let words = words_up_to(max_degree);
    for &a in &words {
        let xa = wp(a.prepend(Letter::X));
        for &b in &words {
            let yb = wp(b.prepend(Letter::Y));
            let lhs = diamond(&xa, &yb);
            let mut rhs = diamond(&wp(a), &yb).prepend_letter(Letter::X);
            rhs += &diamond(&xa, &wp(b)).prepend_letter(Letter::Y);
            r.check(lhs == rhs, || format!("w1={a:?} w2={b:?}"));
        }
    }
    r
}

/// `zw₁ ⋄ w₂ = w₁ ⋄ zw₂ = z(w₁ ⋄ w₂)`.
pub fn diamond_z_shift(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("diamond_z_shift");
    let z = Poly::z();
    for (a, b) in pairs_up_to(max_degree) {
        let (pa, pb) = (wp(a), wp(b));
        let left = diamond(&z.concat(&pa), &pb);
        let right = diamond(&pa, &z.concat(&pb));
        let outer = z.concat(&diamond(&pa, &pb));
        r.check(left == outer && right == outer, || format!("w1={a:?} w2={b:?}"));
    }
    r
}

/// Commutativity, associativity, and closure of ⋄ on y𝔥.
pub fn diamond_laws(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("diamond_comm_assoc_closure");
    let pairs = pairs_up_to(max_degree);
    for &(a, b) in &pairs {
        let ab = diamond(&wp(a), &wp(b));
        r.check(ab == diamond(&wp(b), &wp(a)), || format!("{a:?}<>{b:?} commutes"));
        if a.starts_with(Letter::Y) && b.starts_with(Letter::Y) {
            r.check(ab.all_words_start_with(Letter::Y), || format!("{a:?}<>{b:?} in yH"));
        }
    }
    for &(a, b) in &pairs {
        for c in words_up_to(max_degree - a.degree() - b.degree()) {
            let lhs = diamond(&diamond(&wp(a), &wp(b)), &wp(c));
            let rhs = diamond(&wp(a), &diamond(&wp(b), &wp(c)));
            r.check(lhs == rhs, || format!("({a:?}<>{b:?})<>{c:?}"));
        }
    }
    r
}

/// `∂₁(w) = w ⋄ y − wy`.
pub fn del1_via_diamond(max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("del1_via_diamond");
    for w in words_up_to(max_degree) {
        let lhs = del_n(1, &wp(w)).unwrap();
        let rhs = &diamond(&wp(w), &Poly::y()) - &wp(w.push(Letter::Y));
        r.check(lhs == rhs, || format!("w={w:?}"));
    }
    r
}

/// `θ̃(uw) = u(θ̃(w) + zw + c(w ⋄ y))` for `u ∈ {x, y}`.
pub fn theta_tilde_leading_letter(ops: &Operators<ParamPoly>, max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("theta_tilde_leading_letter");
    for w in words_up_to(max_degree) {
        let pw = wp(w);
        let mut inner = ops.theta_tilde(&pw);
        inner += &Poly::z().concat(&pw);
        inner.add_scaled(&diamond(&pw, &Poly::y()), ops.c());
        for u in [Letter::X, Letter::Y] {
            let lhs = ops.theta_tilde(&wp(w.prepend(u)));
            r.check(lhs == inner.prepend_letter(u), || format!("u={} w={w:?}", u.as_char()));
        }
    }
    r
}

/// θ̃ is a derivation for ⋄.
pub fn theta_tilde_derivation(ops: &Operators<ParamPoly>, max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("theta_tilde_derivation");
    for (a, b) in pairs_up_to(max_degree) {
        let (pa, pb) = (wp(a), wp(b));
        let lhs = ops.theta_tilde(&diamond(&pa, &pb));
        let mut rhs = diamond(&ops.theta_tilde(&pa), &pb);
        rhs += &diamond(&pa, &ops.theta_tilde(&pb));
        r.check(lhs == rhs, || format!("w1={a:?} w2={b:?}"));
    }
    r
}

/// `∂ₙ^(c)(wx) = (w ⋄ qₙ)x` with formal `c`.
pub fn main_identity(ops: &Operators<ParamPoly>, max_degree: usize, n_max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("quasi_derivation_diamond_formula");
    for n in 1..=n_max {
        let q = ops.q_n_recursive(n).unwrap();
        for w in words_up_to(max_degree) {
            let lhs = ops.quasi_del(n, &wp(w.push(Letter::X))).unwrap();
            let rhs = diamond(&wp(w), &q).append_letter(Letter::X);
            r.check(lhs == rhs, || format!("n={n} w={w:?}"));
        }
    }
    r
}

/// `∂ₙ^(c)(wz) = ∂ₙ^(c)(w)z` and `∂ₙ^(c)(zw) = z∂ₙ^(c)(w)`.
pub fn quasi_del_z_linearity(ops: &Operators<ParamPoly>, max_degree: usize, n_max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("quasi_del_z_linearity");
    let z = Poly::z();
    for n in 1..=n_max {
        for w in words_up_to(max_degree) {
            let pw = wp(w);
            let d = ops.quasi_del(n, &pw).unwrap();
            let right = ops.quasi_del(n, &pw.concat(&z)).unwrap() == d.concat(&z);
            let left = ops.quasi_del(n, &z.concat(&pw)).unwrap() == z.concat(&d);
            r.check(right && left, || format!("n={n} w={w:?}"));
        }
    }
    r
}

/// Distinct sample values for specializing `c`.
pub fn c_grid(len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_int(0)];
    let mut k = 1;
    while out.len() < len {
        for v in [Rational::from_int(k), Rational::from_int(-k), Rational::from_int(1).div_int(k + 1)] {
            if out.len() < len && !out.contains(&v) {
                out.push(v);
            }
        }
        k += 1;
    }
    out
}

/// `[∂_{n₁}^(c₁), ∂_{n₂}^(c₂)] = 0` on a grid of `(n₁+n₂+1)²` specializations.
pub fn commutativity(pairs: &[(usize, usize)], max_degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("quasi_del_commutativity");
    let words = words_up_to(max_degree);
    for &(n1, n2) in pairs {
        let grid = c_grid(n1 + n2 + 1);
        let ops: Vec<Operators<Rational>> = grid.iter().cloned().map(Operators::new).collect();
        for (i, o1) in ops.iter().enumerate() {
            for (j, o2) in ops.iter().enumerate() {
                for &w in &words {
                    let pw = QPoly::word(w);
                    let ab = o1.quasi_del(n1, &o2.quasi_del(n2, &pw).unwrap()).unwrap();
                    let ba = o2.quasi_del(n2, &o1.quasi_del(n1, &pw).unwrap()).unwrap();
                    r.check(ab == ba, || {
                        format!("n1={n1} n2={n2} c1={} c2={} w={w:?}", grid[i], grid[j])
                    });
                }
            }
        }
    }
    r
}

/// Explicit and recursive constructions of `qₙ` agree.
pub fn q_formula(ops: &Operators<ParamPoly>, n_max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("q_explicit_vs_recursive");
    for n in 1..=n_max {
        let rec = ops.q_n_recursive(n).unwrap();
        let exp = ops.q_n_explicit(n).unwrap();
        r.check(rec == exp && rec.all_words_start_with(Letter::Y), || format!("n={n}"));
    }
    r
}

/// `qₙ` at `c = 0` is `y zⁿ⁻¹`.
pub fn q_at_zero(ops: &Operators<ParamPoly>, n_max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("q_at_c_zero");
    let zero = Rational::from_int(0);
    for n in 1..=n_max {
        let q = ops.q_n_recursive(n).unwrap().specialize(&zero);
        r.check(q == QPoly::y().concat(&QPoly::z_pow(n - 1)), || format!("n={n}"));
    }
    r
}

/// Shifting θ by `±(zw − wz)/2` leaves `∂ₙ^(c)` unchanged.
///
/// Informational: reports which signs hold.
pub fn theta_shift(max_degree: usize, n_max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("theta_shift_invariance");
    r.informational = true;
    let base = Operators::<ParamPoly>::formal();
    let mut holding = Vec::new();
    for (name, shift) in [("+", ThetaShift::Plus), ("-", ThetaShift::Minus)] {
        let shifted = Operators::<ParamPoly>::formal().with_shift(shift);
        let before = r.failures;
        for n in 1..=n_max {
            for w in words_up_to(max_degree) {
                let lhs = shifted.quasi_del(n, &wp(w)).unwrap();
                let rhs = base.quasi_del(n, &wp(w)).unwrap();
                r.check(lhs == rhs, || format!("sign={name} n={n} w={w:?}"));
            }
        }
        if r.failures == before {
            holding.push(name);
        }
    }
    r.note = Some(format!("signs holding: [{}]", holding.join(",")));
    r
}

/// Runs every suite. `fault` injects a defect into θ for negative controls.
pub fn run_all(bounds: &Bounds, fault: Option<Fault>) -> Vec<SuiteReport> {
    let ops = Operators::<ParamPoly>::formal().with_fault(fault);
    let b = bounds;
    vec![
        theta_product_rule(&ops, b.word_degree + 1),
        phi_automorphism(b.word_degree + 1),
        harmonic_laws(b.pair_degree),
        diamond_laws(b.pair_degree),
        diamond_shuffle_rule(b.pair_degree.saturating_sub(1).max(1)),
        diamond_z_shift(b.pair_degree),
        del1_via_diamond(b.word_degree),
        theta_tilde_leading_letter(&ops, b.word_degree.saturating_sub(1)),
        theta_tilde_derivation(&ops, b.derivation_degree),
        q_formula(&ops, b.q_max),
        q_at_zero(&ops, b.q_max),
        main_identity(&ops, b.identity_degree, b.n_max),
        quasi_del_z_linearity(&ops, b.commutator_degree, b.n_max),
        commutativity(&[(1, 2), (2, 2), (2, 3)], b.commutator_degree),
        theta_shift(b.commutator_degree, b.n_max.min(4)),
    ]
}

/// True when every non-informational suite passed.
pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.informational || r.passed())
}
