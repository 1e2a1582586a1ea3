//! Variable spaces and monomials.
//!
//! A space is either `k[x_1..x_n]` or the extended ring `k[t, x_1..x_n]`.
//! Monomials store one exponent per slot; slot 0 is `t` in an extended
//! space, and the `x_i` follow in order. The derived ordering on the
//! exponent vector is exactly the lexicographic order with `t` most
//! significant, then `x_1, ..., x_n`.

use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarSpace {
    n: usize,
    extended: bool,
}

impl VarSpace {
    pub fn new(n: usize, extended: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension(0));
        }
        Ok(VarSpace { n, extended })
    }

    /// `k[x_1..x_n]`.
    pub fn plain(n: usize) -> Result<Self> {
        Self::new(n, false)
    }

    /// `k[t, x_1..x_n]`.
    pub fn extended(n: usize) -> Result<Self> {
        Self::new(n, true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Number of exponent slots.
    pub fn len(&self) -> usize {
        self.n + usize::from(self.extended)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Slot of `t`; error in a plain space.
    pub fn t_slot(&self) -> Result<usize> {
        if self.extended {
            Ok(0)
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Slot of `x_i` (1-based).
    pub fn x_slot(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::BadDimension(i));
        }
        Ok(i - 1 + usize::from(self.extended))
    }

    /// Name of a slot: `t`, `x1`, `x2`, ...
    pub fn slot_name(&self, slot: usize) -> String {
        if self.extended && slot == 0 {
            "t".to_string()
        } else {
            format!("x{}", slot + 1 - usize::from(self.extended))
        }
    }

    /// The same space with `t` adjoined.
    pub fn to_extended(&self) -> Self {
        VarSpace { n: self.n, extended: true }
    }
}

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector; the derived `Ord` is the lexicographic monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn one(space: VarSpace) -> Self {
        Monomial(smallvec::smallvec![0; space.len()])
    }

    pub fn from_exponents(space: VarSpace, exps: &[u32]) -> Result<Self> {
        if exps.len() != space.len() {
            return Err(Error::ArityMismatch { expected: space.len(), got: exps.len() });
        }
        Ok(Monomial(exps.iter().copied().collect()))
    }

    /// Single variable in the given slot.
    pub fn var(space: VarSpace, slot: usize) -> Self {
        let mut m = Self::one(space);
        m.0[slot] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, slot: usize) -> u32 {
        self.0[slot]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * w)
            .sum()
    }

    /// Product of monomials (exponent-wise sum).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_exp(&self, slot: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[slot] = e;
        m
    }

    /// Prepends a zero `t` exponent (embedding into the extended space).
    pub fn embed_extended(&self) -> Monomial {
        let mut exps = Exps::with_capacity(self.0.len() + 1);
        exps.push(0);
        exps.extend_from_slice(&self.0);
        Monomial(exps)
    }
}
