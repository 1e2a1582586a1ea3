//! Polynomial endomorphisms and the named automorphism families.
//!
//! An endomorphism is the tuple of images of the variables; applying it
//! to a polynomial is substitution, and composition follows the
//! convention (g . h)(x) = g(h(x)).

use num::Zero;

use crate::derivation::{exp_cap, Derivation};
use crate::error::{Error, Result};
use crate::matrix::{invert, Mat};
use crate::parse::format_poly;
use crate::poly::Polynomial;
use crate::rational::{rat_pow, Rat};
use crate::space::{Monomial, VarSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    space: VarSpace,
    images: Vec<Polynomial>,
}

impl Endomorphism {
    pub fn new(space: VarSpace, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != space.len() {
            return Err(Error::ArityMismatch { expected: space.len(), got: images.len() });
        }
        if images.iter().any(|p| p.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Endomorphism { space, images })
    }

    pub fn identity(space: VarSpace) -> Self {
        let images = (0..space.len()).map(|s| Polynomial::var_slot(space, s)).collect();
        Endomorphism { space, images }
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, slot: usize) -> &Polynomial {
        &self.images[slot]
    }

    /// g(p): substitutes the images into p.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        p.substitute(&self.images)
    }

    /// g . h with (g . h)(x_i) = g(h(x_i)).
    pub fn compose(&self, inner: &Endomorphism) -> Result<Endomorphism> {
        if self.space != inner.space {
            return Err(Error::SpaceMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { space: self.space, images })
    }

    /// Exact equality of canonical images.
    pub fn equal(&self, other: &Endomorphism) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self == other)
    }

    /// The (A, b) decomposition with image_i = sum_j v_j A[j][i] + b[i],
    /// or `None` when some image has degree above one.
    pub fn as_affine(&self) -> Option<AffineForm> {
        let len = self.space.len();
        let mut matrix = vec![vec![Rat::zero(); len]; len];
        let mut offset = vec![Rat::zero(); len];
        for (i, img) in self.images.iter().enumerate() {
            for (m, c) in img.terms() {
                match m.total_degree() {
                    0 => offset[i] = c.clone(),
                    1 => {
                        let slot = (0..len).find(|&j| m.exp(j) == 1).expect("degree-1 monomial");
                        matrix[slot][i] = c.clone();
                    }
                    _ => return None,
                }
            }
        }
        Some(AffineForm { matrix, offset })
    }

    /// True when each image is a_i v_i + f_i with a_i nonzero and f_i
    /// supported on strictly earlier variables.
    pub fn is_triangular(&self) -> bool {
        let len = self.space.len();
        (0..len).all(|i| {
            let var = Monomial::var(self.space, i);
            let diag_ok = !self.images[i].coeff(&var).is_zero();
            diag_ok
                && self.images[i]
                    .terms()
                    .all(|(m, _)| *m == var || (i..len).all(|j| m.exp(j) == 0))
        })
    }

    /// Extends a map on k[x] to k[t,x] leaving t untouched. This is the
    /// inert embedding, distinct from the coefficient lifts that trade
    /// kernel polynomials for powers of t.
    pub fn embed_extended(&self) -> Endomorphism {
        if self.space.is_extended() {
            return self.clone();
        }
        let space = self.space.to_extended();
        let mut images = vec![Polynomial::var_slot(space, 0)];
        images.extend(self.images.iter().map(|p| p.embed_extended()));
        Endomorphism { space, images }
    }

    /// JSON rendering: n, extended flag, canonical image strings in slot
    /// order (t first in an extended space). Bit-exact across runs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.space.n(),
            "extended": self.space.is_extended(),
            "images": self.images.iter().map(format_poly).collect::<Vec<_>>(),
        })
    }
}

/// Affine decomposition of a map: (v_1..v_k)A + b, row-vector convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub matrix: Mat,
    pub offset: Vec<Rat>,
}

impl AffineForm {
    pub fn to_endo(&self, space: VarSpace) -> Result<Endomorphism> {
        let len = space.len();
        if self.matrix.len() != len || self.offset.len() != len {
            return Err(Error::ArityMismatch { expected: len, got: self.matrix.len() });
        }
        let images = (0..len)
            .map(|i| {
                let mut img = Polynomial::constant(space, self.offset[i].clone());
                for j in 0..len {
                    img.add_term(Monomial::var(space, j), self.matrix[j][i].clone());
                }
                img
            })
            .collect();
        Endomorphism::new(space, images)
    }

    /// Invertible iff the map is an automorphism.
    pub fn is_invertible(&self) -> bool {
        invert(&self.matrix).is_some()
    }

    /// Inverse affine map: v -> (v - b) A^{-1}.
    pub fn inverse(&self) -> Option<AffineForm> {
        let inv = invert(&self.matrix)?;
        let n = inv.len();
        let offset = (0..n)
            .map(|i| -(0..n).map(|j| &self.offset[j] * &inv[j][i]).sum::<Rat>())
            .collect();
        Some(AffineForm { matrix: inv, offset })
    }
}

/// Translation x_i -> x_i + a_i on k[x], n = a.len().
pub fn make_translation(a: &[Rat]) -> Result<Endomorphism> {
    let space = VarSpace::plain(a.len())?;
    let images = (0..a.len())
        .map(|i| {
            let mut img = Polynomial::var_slot(space, i);
            img.add_term(Monomial::one(space), a[i].clone());
            img
        })
        .collect();
    Endomorphism::new(space, images)
}

/// mu_a = (a^{n-1} x_1, ..., a^{n-2i+1} x_i, ..., a^{-n+1} x_n).
pub fn make_mu(a: &Rat, n: usize) -> Result<Endomorphism> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let space = VarSpace::plain(n)?;
    let images = (1..=n)
        .map(|i| {
            let e = n as i64 - 2 * i as i64 + 1;
            Ok(Polynomial::var_x(space, i)?.scale(&rat_pow(a, e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(space, images)
}

/// nu_b = (b x_1, ..., b x_n).
pub fn make_nu(b: &Rat, n: usize) -> Result<Endomorphism> {
    if b.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let space = VarSpace::plain(n)?;
    let images = (1..=n)
        .map(|i| Ok(Polynomial::var_x(space, i)?.scale(b)))
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(space, images)
}

/// The order-reversing involution sigma(x_i) = x_{n-i+1}.
pub fn make_sigma(n: usize) -> Result<Endomorphism> {
    let space = VarSpace::plain(n)?;
    let images = (1..=n)
        .map(|i| Polynomial::var_x(space, n - i + 1))
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(space, images)
}

/// exp(coeff * D) as an endomorphism. The coefficient must lie in ker D,
/// which makes the scaled derivation locally nilpotent alongside D.
pub fn exp_endo(d: &Derivation, coeff: &Polynomial) -> Result<Endomorphism> {
    if !d.kernel_member(coeff)? {
        return Err(Error::NotInKernel);
    }
    let space = d.space();
    let scaled = d.scale(coeff)?;
    let images = (0..space.len())
        .map(|slot| {
            let v = Polynomial::var_slot(space, slot);
            let cap = exp_cap(space, &v, coeff);
            scaled.exp_apply(&v, cap)
        })
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(space, images)
}

/// The substitution k[t,x] -> k[x] sending t to f and fixing the x_i.
pub fn substitution_pi(p: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    let space = p.space();
    let target = f.space();
    if !space.is_extended() || target.is_extended() || target.n() != space.n() {
        return Err(Error::SpaceMismatch);
    }
    let mut images = Vec::with_capacity(space.len());
    images.push(f.clone());
    for i in 1..=target.n() {
        images.push(Polynomial::var_x(target, i)?);
    }
    p.substitute(&images)
}

/// Lift of the translation tau_a to k[t,x]:
/// t -> t + tau_a(f) - f, x_i -> x_i + a_i. Fixes t - f.
pub fn lift_translation(a: &[Rat], f: &Polynomial) -> Result<Endomorphism> {
    let plain = f.space();
    if plain.is_extended() || a.len() != plain.n() {
        return Err(Error::SpaceMismatch);
    }
    let tau = make_translation(a)?;
    let shifted = tau.apply(f)?;
    let space = plain.to_extended();
    let t_image = Polynomial::var_t(space)?
        .add(&shifted.sub(f)?.embed_extended())?;
    let mut images = vec![t_image];
    for (i, ai) in a.iter().enumerate() {
        let mut img = Polynomial::var_x(space, i + 1)?;
        img.add_term(Monomial::one(space), ai.clone());
        images.push(img);
    }
    Endomorphism::new(space, images)
}
