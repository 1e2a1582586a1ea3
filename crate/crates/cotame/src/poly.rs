//! Sparse multivariate polynomials over the exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by monomial, so iteration is always
//! in ascending lexicographic order and the last entry is the leading
//! term. No zero coefficient is ever stored; the zero polynomial is the
//! empty map. Every value is immutable after construction and all
//! operations are pure.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::space::{Monomial, VarSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    space: VarSpace,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(space: VarSpace) -> Self {
        Polynomial { space, terms: BTreeMap::new() }
    }

    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, Rat::one())
    }

    pub fn constant(space: VarSpace, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(space), c);
        }
        Polynomial { space, terms }
    }

    /// The variable occupying `slot`.
    pub fn var_slot(space: VarSpace, slot: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(space, slot), Rat::one());
        Polynomial { space, terms }
    }

    /// `x_i` (1-based).
    pub fn var_x(space: VarSpace, i: usize) -> Result<Self> {
        Ok(Self::var_slot(space, space.x_slot(i)?))
    }

    /// `t` in an extended space.
    pub fn var_t(space: VarSpace) -> Result<Self> {
        Ok(Self::var_slot(space, space.t_slot()?))
    }

    pub fn monomial(space: VarSpace, m: Monomial, c: Rat) -> Result<Self> {
        if m.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(Polynomial { space, terms })
    }

    /// Builds a polynomial from terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(space: VarSpace, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut acc = Polynomial::zero(space);
        for (m, c) in iter {
            if m.len() != space.len() {
                return Err(Error::SpaceMismatch);
            }
            acc.add_term(m, c);
        }
        Ok(acc)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn check_space(&self, other: &Polynomial) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { space: self.space, terms }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.space);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Polynomial { space: self.space, terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.space);
        }
        // single-term fast path
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms.iter().next().unwrap();
            return self.mul_term(m, c);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Polynomial::zero(self.space);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m2, c2)| (m.mul(m2), c * c2))
            .collect();
        Polynomial { space: self.space, terms }
    }

    /// `self^e`; `p^0 = 1`.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.space);
        for _ in 0..e {
            acc = acc.mul_raw(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Maximum weighted exponent sum over the support.
    pub fn weighted_degree(&self, weights: &[u64]) -> Result<u64> {
        if weights.len() != self.space.len() {
            return Err(Error::SpaceMismatch);
        }
        self.terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Leading term for the lexicographic order (slot 0 most significant).
    pub fn leading_term(&self) -> Result<(&Monomial, &Rat)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// Partial derivative with respect to the variable in `slot`.
    pub fn partial(&self, slot: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.exp(slot);
            if e > 0 {
                out.add_term(m.with_exp(slot, e - 1), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Embeds `k[x]` into `k[t, x]` with `t`-exponent zero.
    pub fn embed_extended(&self) -> Polynomial {
        let space = self.space.to_extended();
        if self.space.is_extended() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.embed_extended(), c.clone()))
            .collect();
        Polynomial { space, terms }
    }

    /// Applies the ring homomorphism sending the variable in slot `j` to
    /// `images[j]`. All images must share one target space.
    ///
    /// Evaluation is a nested Horner scheme over the slots: within one
    /// slot, terms are processed by descending exponent and the partial
    /// result is multiplied by the image once per exponent step. That
    /// keeps intermediate sizes near the output size even when images
    /// are large.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.space.len() {
            return Err(Error::ArityMismatch { expected: self.space.len(), got: images.len() });
        }
        let target = images[0].space();
        if images.iter().any(|p| p.space() != target) {
            return Err(Error::SpaceMismatch);
        }
        if self.is_zero() {
            return Ok(Polynomial::zero(target));
        }
        let terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        Ok(subst_rec(&terms, 0, images, target))
    }
}

/// Horner evaluation of a block of terms sharing their exponents on all
/// slots below `slot`. `terms` is sorted ascending, so equal exponents
/// at `slot` are contiguous.
fn subst_rec(
    terms: &[(&Monomial, &Rat)],
    slot: usize,
    images: &[Polynomial],
    target: VarSpace,
) -> Polynomial {
    if slot == images.len() {
        debug_assert_eq!(terms.len(), 1);
        return Polynomial::constant(target, terms[0].1.clone());
    }
    let image = &images[slot];
    let mut result: Option<Polynomial> = None;
    let mut prev_e = 0u32;
    let mut hi = terms.len();
    while hi > 0 {
        let e = terms[hi - 1].0.exp(slot);
        let mut lo = hi;
        while lo > 0 && terms[lo - 1].0.exp(slot) == e {
            lo -= 1;
        }
        let sub = subst_rec(&terms[lo..hi], slot + 1, images, target);
        result = Some(match result {
            None => sub,
            Some(r) => mul_image_power(r, image, prev_e - e)
                .add(&sub)
                .expect("same target space"),
        });
        prev_e = e;
        hi = lo;
    }
    let r = result.expect("nonempty term block");
    if prev_e > 0 {
        mul_image_power(r, image, prev_e)
    } else {
        r
    }
}

/// `r * image^k`, multiplying step by step so partial products stay as
/// small as the running result allows.
fn mul_image_power(r: Polynomial, image: &Polynomial, k: u32) -> Polynomial {
    if k == 0 {
        return r;
    }
    if image.num_terms() <= 1 {
        // a monomial image: one shifted-key rebuild
        return r.mul_raw(&image.pow(k));
    }
    let mut acc = r;
    for _ in 0..k {
        acc = acc.mul_raw(image);
    }
    acc
}
