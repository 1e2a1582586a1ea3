//! k-derivations on polynomial rings.
//!
//! A derivation is determined by the images of the variables and the
//! Leibniz rule; `apply` realizes the unique extension as the sum of
//! partial derivatives against those images. Exponentials iterate until
//! the power of the derivation hits exactly zero, which a cap turns into
//! a hard error for inputs that are not locally nilpotent.


use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::space::VarSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    space: VarSpace,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(space: VarSpace, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != space.len() {
            return Err(Error::ArityMismatch { expected: space.len(), got: images.len() });
        }
        if images.iter().any(|p| p.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Derivation { space, images })
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    /// Image of the variable occupying `slot`.
    pub fn image(&self, slot: usize) -> &Polynomial {
        &self.images[slot]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// D(p) via the Leibniz rule: sum of (dp/dv) * D(v) over all variables.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = Polynomial::zero(self.space);
        for slot in 0..self.space.len() {
            if self.images[slot].is_zero() {
                continue;
            }
            let d = p.partial(slot);
            if !d.is_zero() {
                out = out.add(&d.mul_raw(&self.images[slot]))?;
            }
        }
        Ok(out)
    }

    /// D^k(p).
    pub fn power_apply(&self, k: u64, p: &Polynomial) -> Result<Polynomial> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut acc = p.clone();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }

    pub fn kernel_member(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.apply(p)?.is_zero())
    }

    /// The derivation p*D. Preserves local nilpotency when p is in ker D;
    /// this is not checked here.
    pub fn scale(&self, p: &Polynomial) -> Result<Derivation> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        let images = self.images.iter().map(|img| img.mul_raw(p)).collect();
        Ok(Derivation { space: self.space, images })
    }

    /// exp(D) applied to p: the sum of D^k(p)/k! until a power vanishes.
    /// Errors with `ExpDiverged` when `cap` steps pass without reaching
    /// zero, which signals a non-locally-nilpotent derivation (or a cap
    /// that is too small).
    pub fn exp_apply(&self, p: &Polynomial, cap: u64) -> Result<Polynomial> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut sum = p.clone();
        let mut term = p.clone();
        let mut k: u64 = 0;
        loop {
            k += 1;
            if k > cap {
                return Err(Error::ExpDiverged { cap });
            }
            term = self
                .apply(&term)?
                .scale(&Rat::new(1.into(), k.into()));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term)?;
        }
    }

    /// Extends a derivation on k[x] to k[t,x] with D(t) = 0.
    pub fn embed_extended(&self) -> Derivation {
        let space = self.space.to_extended();
        if self.space.is_extended() {
            return self.clone();
        }
        let mut images = Vec::with_capacity(space.len());
        images.push(Polynomial::zero(space));
        images.extend(self.images.iter().map(|p| p.embed_extended()));
        Derivation { space, images }
    }

    /// A variable ordering under which the derivation is triangular
    /// (each image uses only earlier variables), or `None` when no such
    /// ordering exists. A returned order certifies local nilpotency.
    pub fn triangular_certificate(&self) -> Option<Vec<usize>> {
        let len = self.space.len();
        let deps: Vec<Vec<usize>> = (0..len)
            .map(|slot| {
                let mut used = vec![false; len];
                for (m, _) in self.images[slot].terms() {
                    for (j, flag) in used.iter_mut().enumerate() {
                        *flag |= m.exp(j) > 0;
                    }
                }
                used.iter()
                    .enumerate()
                    .filter_map(|(j, &u)| u.then_some(j))
                    .collect()
            })
            .collect();
        let mut placed = vec![false; len];
        let mut order = Vec::with_capacity(len);
        for _ in 0..len {
            let next = (0..len).find(|&slot| {
                !placed[slot] && deps[slot].iter().all(|&j| placed[j])
            })?;
            placed[next] = true;
            order.push(next);
        }
        Some(order)
    }
}

/// Termination cap for exponentials, generous for every triangular
/// derivation scaled by a kernel element of the stated degrees.
pub fn exp_cap(space: VarSpace, arg: &Polynomial, coeff: &Polynomial) -> u64 {
    let deg = |p: &Polynomial| p.total_degree().unwrap_or(0);
    (space.n() as u64 + 1) * (1 + deg(arg)) * (1 + deg(coeff))
}
