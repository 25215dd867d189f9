use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Coeff, Scalar};
use crate::Rational;

/// A polynomial in the formal parameter `c` over the scalar field `S`.
///
/// Stored densely by exponent with trailing zeros trimmed, so the zero
/// polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Default)]
pub struct CPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> CPoly<S> {
    pub fn constant(s: S) -> Self {
        Self::monomial(0, s)
    }

    /// The parameter `c` itself.
    pub fn c() -> Self {
        Self::monomial(1, S::one())
    }

    pub fn monomial(exp: usize, s: S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); exp + 1];
        coeffs[exp] = s;
        CPoly { coeffs }
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (usize, S)>>(terms: I) -> Self {
        let mut coeffs: Vec<S> = Vec::new();
        for (e, s) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, S::zero());
            }
            coeffs[e].add_ref(&s);
        }
        let mut p = CPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|s| s.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Degree in `c`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> S {
        self.coeffs.get(exp).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, s)| !s.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &S) -> S {
        let mut acc = S::zero();
        for s in self.coeffs.iter().rev() {
            acc = acc.mul_ref(at);
            acc.add_ref(s);
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CPoly<T> {
        CPoly::from_terms(self.coeffs.iter().enumerate().map(|(e, s)| (e, f(s))))
    }
}

impl<S: Scalar> Zero for CPoly<S> {
    fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> One for CPoly<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Add for CPoly<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self.add_ref(&rhs);
        self
    }
}

impl<S: Scalar> Sub for CPoly<S> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self.add_ref(&-rhs);
        self
    }
}

impl<S: Scalar> Neg for CPoly<S> {
    type Output = Self;

    fn neg(self) -> Self {
        CPoly { coeffs: self.coeffs.into_iter().map(|s| -s).collect() }
    }
}

impl<S: Scalar> Mul for CPoly<S> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<S: Scalar> Coeff for CPoly<S> {
    fn from_int(v: i64) -> Self {
        Self::constant(S::from_int(v))
    }

    fn div_int(&self, d: i64) -> Self {
        CPoly { coeffs: self.coeffs.iter().map(|s| s.div_int(d)).collect() }
    }

    fn add_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), S::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_ref(b);
        }
        self.trim();
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        let mut p = CPoly { coeffs };
        p.trim();
        p
    }

    fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        CPoly { coeffs: self.coeffs.iter().map(|s| s.scale_int(k)).collect() }
    }
}

impl CPoly<Rational> {
    /// `"1+c"`, `"1/2c-1/2c^2"`, `"0"`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, s) in self.terms() {
            let neg = s < &Rational::zero();
            let mag = if neg { -s.clone() } else { s.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let var = match e {
                0 => String::new(),
                1 => "c".to_string(),
                _ => format!("c^{e}"),
            };
            if e == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for CPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}
