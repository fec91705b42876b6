//! Polynomials over the mixed `(t, x)` monomials with exact coefficients.
//!
//! One representation serves recurrence relations (pure `x` support), Gröbner
//! basis files, and the quasi-commutative arithmetic in [`crate::skew`]. The
//! term map is kept in a canonical structural order so equal polynomials
//! compare equal; leading monomials are computed per ordering on demand.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    terms: BTreeMap<Monomial, F::Elem>,
    nvars: usize,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(field, m, c);
        }
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, c);
        Poly { terms, nvars }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            Poly::zero(nvars)
        } else {
            Poly::monomial(nvars, Monomial::one(nvars), c)
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    pub fn is_pure_x(&self) -> bool {
        self.terms.keys().all(|m| m.is_pure_x())
    }

    /// Adds `c * m`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if field.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = field.add(&old, &c);
                if !field.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(field, m.clone(), field.neg(c));
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), field.mul(v, c)))
            .collect();
        Poly {
            terms,
            nvars: self.nvars,
        }
    }

    /// Commutative product by a monomial (exponents add). Correct for pure
    /// `x` multipliers; the quasi-commutative product lives in
    /// [`crate::skew`].
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.mul(m), v.clone()))
            .collect();
        Poly {
            terms,
            nvars: self.nvars,
        }
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        order.max(self.terms.keys())
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&F::Elem> {
        self.leading_monomial(order).and_then(|m| self.terms.get(m))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, field: &F, order: &MonomialOrder) -> Self {
        match self.leading_coefficient(order) {
            None => self.clone(),
            Some(lc) => {
                let inv = field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(field, &inv)
            }
        }
    }
}
