//! Elements of the Hecke algebra H_{r,q} as sparse vectors over the T_w
//! basis, with the defining multiplication
//!
//!   T_w T_s = T_{ws}                 if l(ws) = l(w) + 1,
//!   T_w T_s = q T_{ws} + (q-1) T_w   otherwise,
//!
//! and the distinguished elements x_lambda, y_lambda, z_lambda. Generic over
//! the coefficient ring so the same code runs over Z[q,q^-1] and its
//! specializations.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::perm::{enumerate_w_lambda, w_lambda, Permutation};
use crate::scalar::CoeffRing;
use crate::shape::Composition;

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement<R: CoeffRing> {
    r: usize,
    support: HashMap<Permutation, R::Elem>,
}

impl<R: CoeffRing> HeckeElement<R> {
    pub fn zero(r: usize) -> Self {
        HeckeElement {
            r,
            support: HashMap::new(),
        }
    }

    /// T_w.
    pub fn basis(ring: &R, w: Permutation) -> Self {
        let mut support = HashMap::new();
        let r = w.r();
        support.insert(w, ring.one());
        HeckeElement { r, support }
    }

    /// The identity T_1.
    pub fn one(ring: &R, r: usize) -> Self {
        Self::basis(ring, Permutation::identity(r))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.support.len()
    }

    pub fn coefficient(&self, ring: &R, w: &Permutation) -> R::Elem {
        self.support.get(w).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (&Permutation, &R::Elem)> {
        self.support.iter()
    }

    /// Terms sorted by (length, one-line notation) for deterministic output.
    pub fn terms_sorted(&self) -> Vec<(Permutation, R::Elem)> {
        let mut terms: Vec<(Permutation, R::Elem)> = self
            .support
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        terms.sort_by_key(|(w, _)| (w.length(), w.one_line()));
        terms
    }

    pub fn add_term(&mut self, ring: &R, w: Permutation, c: R::Elem) {
        if ring.is_zero(&c) {
            return;
        }
        match self.support.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, ring: &R, other: &HeckeElement<R>) -> HeckeElement<R> {
        debug_assert_eq!(self.r, other.r);
        let mut out = self.clone();
        for (w, c) in &other.support {
            out.add_term(ring, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, ring: &R, other: &HeckeElement<R>) -> HeckeElement<R> {
        debug_assert_eq!(self.r, other.r);
        let mut out = self.clone();
        for (w, c) in &other.support {
            out.add_term(ring, w.clone(), ring.neg(c));
        }
        out
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> HeckeElement<R> {
        let mut out = HeckeElement::zero(self.r);
        for (w, a) in &self.support {
            out.add_term(ring, w.clone(), ring.mul(a, c));
        }
        out
    }

    /// Multiply on the right by T_s for a simple transposition s = s_i.
    pub fn mul_by_ts(&self, ring: &R, i: usize) -> HeckeElement<R> {
        let mut out = HeckeElement::zero(self.r);
        let q = ring.q_power(1);
        let q_minus_one = ring.q_minus_one();
        for (w, c) in &self.support {
            let ws = w.mul_simple(i);
            if w.right_mul_lengthens(i) {
                out.add_term(ring, ws, c.clone());
            } else {
                out.add_term(ring, ws, ring.mul(&q, c));
                out.add_term(ring, w.clone(), ring.mul(&q_minus_one, c));
            }
        }
        out
    }

    /// Multiply on the right by T_w, expanding w along a reduced word.
    pub fn mul_by_tw(&self, ring: &R, w: &Permutation) -> HeckeElement<R> {
        let mut acc = self.clone();
        for i in w.reduced_word() {
            acc = acc.mul_by_ts(ring, i);
        }
        acc
    }

    pub fn mul(&self, ring: &R, other: &HeckeElement<R>) -> HeckeElement<R> {
        debug_assert_eq!(self.r, other.r);
        let mut out = HeckeElement::zero(self.r);
        for (w, c) in &other.support {
            let part = self.mul_by_tw(ring, w).scale(ring, c);
            out = out.add(ring, &part);
        }
        out
    }

    /// Render with terms sorted by (length, one-line): "c * T[2,1,3] + ...".
    pub fn render(&self) -> String
    where
        R::Elem: fmt::Display,
    {
        if self.support.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms_sorted()
            .iter()
            .map(|(w, c)| format!("({}) * T{}", c, w))
            .collect();
        parts.join(" + ")
    }
}

impl<R: CoeffRing> fmt::Debug for HeckeElement<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// x_lambda: the sum of T_w over the parabolic subgroup W_lambda.
pub fn x_elem<R: CoeffRing>(ring: &R, lambda: &Composition) -> HeckeElement<R> {
    let mut out = HeckeElement::zero(lambda.r());
    for w in enumerate_w_lambda(lambda) {
        out.add_term(ring, w, ring.one());
    }
    out
}

/// y_lambda: the signed sum of (-q)^{-l(w)} T_w over W_lambda.
pub fn y_elem<R: CoeffRing>(ring: &R, lambda: &Composition) -> HeckeElement<R> {
    let mut out = HeckeElement::zero(lambda.r());
    for w in enumerate_w_lambda(lambda) {
        let l = w.length();
        let mut c = ring.q_power(-(l as i64));
        if l % 2 == 1 {
            c = ring.neg(&c);
        }
        out.add_term(ring, w, c);
    }
    out
}

/// z_lambda = x_lambda T_{w_lambda} y_{lambda'}, defined for partitions.
pub fn z_elem<R: CoeffRing>(ring: &R, lambda: &Composition) -> Result<HeckeElement<R>, Error> {
    let wl = w_lambda(lambda)?;
    let x = x_elem(ring, lambda);
    let y = y_elem(ring, &lambda.dual());
    Ok(x.mul_by_tw(ring, &wl).mul(ring, &y))
}
