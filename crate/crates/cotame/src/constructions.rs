//! The named objects of the construction: the derivation pair D and D',
//! the kernel polynomial family f_[n], the conjugated exponential
//! automorphism phi and its lift, the sigma pair whose product is a
//! single exponential, the symmetric-power matrices behind the diagonal
//! reduction, and evaluation of composition words.

use num::{One, Zero};

use crate::derivation::Derivation;
use crate::endo::{
    exp_endo, lift_translation, make_mu, make_nu, make_sigma, make_translation, Endomorphism,
};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Polynomial;
use crate::rational::{binomial, rat_pow, rint, Rat};
use crate::space::VarSpace;
use crate::words::WordSpec;

/// D = sum_{j<n} (n-j) x_{j+1} d/dx_j.
pub fn make_d(n: usize) -> Result<Derivation> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    let space = VarSpace::plain(n)?;
    let images = (1..=n)
        .map(|j| {
            if j < n {
                Ok(Polynomial::var_x(space, j + 1)?.scale(&rint((n - j) as i64)))
            } else {
                Ok(Polynomial::zero(space))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(space, images)
}

/// D' = sigma . D . sigma = sum_{j>1} (j-1) x_{j-1} d/dx_j. Built from
/// the closed form and cross-checked against the conjugation.
pub fn make_d_prime(n: usize) -> Result<Derivation> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    let space = VarSpace::plain(n)?;
    let images = (1..=n)
        .map(|j| {
            if j > 1 {
                Ok(Polynomial::var_x(space, j - 1)?.scale(&rint((j - 1) as i64)))
            } else {
                Ok(Polynomial::zero(space))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let closed = Derivation::new(space, images)?;

    let d = make_d(n)?;
    let sigma = make_sigma(n)?;
    for i in 1..=n {
        let xi = Polynomial::var_x(space, i)?;
        let conjugated = sigma.apply(&d.apply(&sigma.apply(&xi)?)?)?;
        debug_assert_eq!(&conjugated, closed.image(space.x_slot(i)?), "D' image of x{i}");
        let _ = conjugated;
    }
    Ok(closed)
}

/// Total degree of f_[n]: 2 for odd n, 4 for even n.
pub fn f_degree(n: usize) -> u64 {
    if n % 2 == 1 {
        2
    } else {
        4
    }
}

/// (1/2) sum_i (-1)^{i-1} C(2m-2, i-1) x_i x_{2m-i}, built inside an
/// ambient space with at least 2m-1 variables.
fn odd_kernel_poly(space: VarSpace, m: usize) -> Result<Polynomial> {
    let half = Rat::new(1.into(), 2.into());
    let mut acc = Polynomial::zero(space);
    for i in 1..=(2 * m - 1) {
        let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
        let c = sign * Rat::from_integer(binomial(2 * m as u64 - 2, i as u64 - 1)) * &half;
        let term = Polynomial::var_x(space, i)?.mul(&Polynomial::var_x(space, 2 * m - i)?)?;
        acc = acc.add(&term.scale(&c))?;
    }
    Ok(acc)
}

/// The kernel polynomial f_[n]: the alternating quadratic for odd n,
/// and D(f')^2 - 2 D^2(f') f' for even n (f' one dimension down,
/// embedded in the n-variable ring with its n-variable derivation).
pub fn make_f(n: usize) -> Result<Polynomial> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    let space = VarSpace::plain(n)?;
    if n % 2 == 1 {
        odd_kernel_poly(space, (n + 1) / 2)
    } else {
        let m = n / 2;
        let fp = odd_kernel_poly(space, m)?;
        let d = make_d(n)?;
        let dfp = d.apply(&fp)?;
        let d2fp = d.apply(&dfp)?;
        dfp.pow(2).sub(&d2fp.mul(&fp)?.scale(&rint(2)))
    }
}

/// An automorphism together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    fwd: Endomorphism,
    inv: Endomorphism,
}

impl Factor {
    /// exp(coeff * D); inverse negates the coefficient.
    pub fn exp(d: &Derivation, coeff: &Polynomial) -> Result<Factor> {
        Ok(Factor {
            fwd: exp_endo(d, coeff)?,
            inv: exp_endo(d, &coeff.neg())?,
        })
    }

    pub fn translation(a: &[Rat]) -> Result<Factor> {
        let neg: Vec<Rat> = a.iter().map(|c| -c.clone()).collect();
        Ok(Factor { fwd: make_translation(a)?, inv: make_translation(&neg)? })
    }

    pub fn lifted_translation(a: &[Rat], f: &Polynomial) -> Result<Factor> {
        let neg: Vec<Rat> = a.iter().map(|c| -c.clone()).collect();
        Ok(Factor {
            fwd: lift_translation(a, f)?,
            inv: lift_translation(&neg, f)?,
        })
    }

    pub fn mu(a: &Rat, n: usize) -> Result<Factor> {
        Ok(Factor { fwd: make_mu(a, n)?, inv: make_mu(&a.recip(), n)? })
    }

    pub fn nu(b: &Rat, n: usize) -> Result<Factor> {
        Ok(Factor { fwd: make_nu(b, n)?, inv: make_nu(&b.recip(), n)? })
    }

    pub fn sigma(n: usize) -> Result<Factor> {
        let s = make_sigma(n)?;
        Ok(Factor { inv: s.clone(), fwd: s })
    }

    pub fn identity(space: VarSpace) -> Factor {
        let id = Endomorphism::identity(space);
        Factor { fwd: id.clone(), inv: id }
    }

    /// Wraps a bare endomorphism; only affine maps with invertible
    /// linear part can be inverted here.
    pub fn from_endo(e: &Endomorphism) -> Result<Factor> {
        let form = e.as_affine().ok_or(Error::NoInverseAvailable)?;
        let inv = form
            .inverse()
            .ok_or(Error::NoInverseAvailable)?
            .to_endo(e.space())?;
        Ok(Factor { fwd: e.clone(), inv })
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.fwd
    }

    fn swap(self) -> Factor {
        Factor { fwd: self.inv, inv: self.fwd }
    }

    fn embed_extended(&self) -> Factor {
        Factor { fwd: self.fwd.embed_extended(), inv: self.inv.embed_extended() }
    }
}

/// A composition of invertible factors; index 0 is applied last, in
/// keeping with (g . h)(x) = g(h(x)).
#[derive(Debug, Clone)]
pub struct MapProgram {
    space: VarSpace,
    factors: Vec<Factor>,
}

impl MapProgram {
    pub fn new(space: VarSpace, factors: Vec<Factor>) -> Result<Self> {
        if factors.iter().any(|f| f.fwd.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(MapProgram { space, factors })
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    /// Applies the composite map to a polynomial, one factor at a time
    /// starting from the innermost.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut acc = p.clone();
        for factor in self.factors.iter().rev() {
            acc = factor.fwd.apply(&acc)?;
        }
        Ok(acc)
    }

    /// The fully composed endomorphism.
    pub fn to_endo(&self) -> Result<Endomorphism> {
        let images = (0..self.space.len())
            .map(|slot| self.apply(&Polynomial::var_slot(self.space, slot)))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::new(self.space, images)
    }

    /// The inverse program: reversed factors, each inverted.
    pub fn inverse(&self) -> MapProgram {
        let factors = self.factors.iter().rev().map(|f| f.clone().swap()).collect();
        MapProgram { space: self.space, factors }
    }

    /// The same map on k[t,x] with t inert.
    pub fn embed_extended(&self) -> MapProgram {
        MapProgram {
            space: self.space.to_extended(),
            factors: self.factors.iter().map(Factor::embed_extended).collect(),
        }
    }

    pub fn concat(mut self, mut tail: MapProgram) -> Result<MapProgram> {
        if self.space != tail.space {
            return Err(Error::SpaceMismatch);
        }
        self.factors.append(&mut tail.factors);
        Ok(self)
    }
}

/// phi^power as a three-factor program. Conjugation collapses arbitrary
/// powers: phi^d = eps_{f^l} . eps'_d . eps_{-f^l}, with t^l replacing
/// f^l in the lifted ring.
pub fn phi_program(n: usize, l: u64, power: i64, lifted: bool) -> Result<MapProgram> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    if l < 1 {
        return Err(Error::BadParameter("l must be >= 1".into()));
    }
    if power == 0 {
        return Err(Error::InvalidWord("phi powers must be nonzero".into()));
    }
    let (d, dp, coeff) = if lifted {
        let space = VarSpace::extended(n)?;
        let t_l = Polynomial::var_t(space)?.pow(l as u32);
        (make_d(n)?.embed_extended(), make_d_prime(n)?.embed_extended(), t_l)
    } else {
        let space = VarSpace::plain(n)?;
        let _ = space;
        (make_d(n)?, make_d_prime(n)?, make_f(n)?.pow(l as u32))
    };
    let space = d.space();
    let middle = Polynomial::constant(space, rint(power));
    let factors = vec![
        Factor::exp(&d, &coeff)?,
        Factor::exp(&dp, &middle)?,
        Factor::exp(&d, &coeff.neg())?,
    ];
    MapProgram::new(space, factors)
}

/// phi = exp(f^l D) . exp(D') . exp(-f^l D), optionally in its lifted
/// form on k[t,x].
pub fn make_phi(n: usize, l: u64, lifted: bool) -> Result<Endomorphism> {
    phi_program(n, l, 1, lifted)?.to_endo()
}

/// The program for a whole word phi^{i_1} . tau_{a_1} . ... . phi^{i_s}.
pub fn word_program(word: &WordSpec, n: usize, l: u64, lifted: bool) -> Result<MapProgram> {
    for a in word.translations() {
        if a.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: a.len() });
        }
    }
    let f = make_f(n)?;
    let mut program = phi_program(n, l, word.powers()[0], lifted)?;
    let space = program.space();
    for (j, power) in word.powers().iter().enumerate().skip(1) {
        let a = &word.translations()[j - 1];
        let tau = if lifted {
            Factor::lifted_translation(a, &f)?
        } else {
            Factor::translation(a)?
        };
        program = program.concat(MapProgram::new(space, vec![tau])?)?;
        program = program.concat(phi_program(n, l, *power, lifted)?)?;
    }
    Ok(program)
}

/// Fully composed word; negative powers go through the conjugated
/// closed form of the inverse.
pub fn evaluate_word(word: &WordSpec, n: usize, l: u64, lifted: bool) -> Result<Endomorphism> {
    word_program(word, n, l, lifted)?.to_endo()
}

/// The pair sigma_1 = phi^{-1} . eps_{1-u^{-dl}} . mu_{u^{dl/2}} . nu_u . phi
/// and sigma_2 = nu_{1/u} . mu_{u^{dl/2}} . eps_{1-u^{dl}}, defined for
/// u with 1 - u^{2dl} nonzero. Their product is eps_{(1-u^{2dl}) f^l}.
pub fn make_sigma_pair(n: usize, l: u64, u: &Rat) -> Result<(Endomorphism, Endomorphism)> {
    if u.is_zero() {
        return Err(Error::BadParameter("u must be nonzero".into()));
    }
    let d = f_degree(n);
    let dl = (d * l) as i64;
    let u_2dl = rat_pow(u, 2 * dl)?;
    if (Rat::one() - &u_2dl).is_zero() {
        return Err(Error::BadParameter("1 - u^(2dl) must be nonzero".into()));
    }
    let half_pow = rat_pow(u, dl / 2)?;
    let deriv = make_d(n)?;
    let space = deriv.space();
    let const_poly = |c: Rat| Polynomial::constant(space, c);

    let phi = phi_program(n, l, 1, false)?;
    let sigma1 = phi.inverse().concat(MapProgram::new(
        space,
        vec![
            Factor::exp(&deriv, &const_poly(Rat::one() - rat_pow(u, -dl)?))?,
            Factor::mu(&half_pow, n)?,
            Factor::nu(u, n)?,
        ],
    )?)?;
    let sigma1 = sigma1.concat(phi)?;
    let sigma2 = MapProgram::new(
        space,
        vec![
            Factor::nu(&u.recip(), n)?,
            Factor::mu(&half_pow, n)?,
            Factor::exp(&deriv, &const_poly(Rat::one() - rat_pow(u, dl)?))?,
        ],
    )?;
    Ok((sigma1.to_endo()?, sigma2.to_endo()?))
}

/// The matrices A'(a), B'(a), C'(a) representing eps_a, eps'_a and mu_a
/// on the degree-(n-1) symmetric power, by their closed-form columns.
pub fn el_matrices(a: &Rat, n: usize) -> Result<(Mat, Mat, Mat)> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let zero = || vec![vec![Rat::zero(); n]; n];
    let (mut ma, mut mb, mut mc) = (zero(), zero(), zero());
    for i in 1..=n {
        for j in 0..=(n - i) {
            ma[i + j - 1][i - 1] =
                Rat::from_integer(binomial((n - i) as u64, j as u64)) * rat_pow(a, j as i64)?;
        }
        for j in 0..i {
            mb[i - j - 1][i - 1] =
                Rat::from_integer(binomial(i as u64 - 1, j as u64)) * rat_pow(a, j as i64)?;
        }
        mc[i - 1][i - 1] = rat_pow(a, n as i64 - 2 * i as i64 + 1)?;
    }
    Ok((ma, mb, mc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::substitution_pi;
    use crate::matrix::mat_mul;
    use crate::parse::parse_poly;
    use crate::rational::rat;
    use crate::space::Monomial;

    fn s(n: usize) -> VarSpace {
        VarSpace::plain(n).unwrap()
    }

    fn p(text: &str, n: usize) -> Polynomial {
        parse_poly(text, s(n)).unwrap()
    }

    #[test]
    fn derivation_pair() {
        let d = make_d(3).unwrap();
        assert_eq!(d.images(), &[p("2*x2", 3), p("x3", 3), p("0", 3)]);
        let dp = make_d_prime(3).unwrap();
        assert_eq!(dp.images(), &[p("0", 3), p("x1", 3), p("2*x2", 3)]);
        assert!(make_d(1).is_err());
        // the conjugation route agrees for larger n as well
        for n in 4..=6 {
            let d = make_d(n).unwrap();
            let dp = make_d_prime(n).unwrap();
            let sigma = make_sigma(n).unwrap();
            for i in 1..=n {
                let xi = Polynomial::var_x(s(n), i).unwrap();
                let conj = sigma.apply(&d.apply(&sigma.apply(&xi).unwrap()).unwrap()).unwrap();
                assert_eq!(&conj, dp.image(s(n).x_slot(i).unwrap()));
            }
        }
    }

    #[test]
    fn kernel_polynomials_closed_forms() {
        assert_eq!(make_f(3).unwrap(), p("x1*x3 - x2^2", 3));
        assert_eq!(make_f(5).unwrap(), p("x1*x5 - 4*x2*x4 + 3*x3^2", 5));
        let f4 = make_f(4).unwrap();
        assert_eq!(
            f4,
            p("x1^2*x4^2 - 6*x1*x2*x3*x4 + 4*x1*x3^3 + 4*x2^3*x4 - 3*x2^2*x3^2", 4)
        );
        assert!(make_f(2).is_err());
        assert_eq!(make_f(3).unwrap().total_degree().unwrap(), f_degree(3));
        assert_eq!(f4.total_degree().unwrap(), f_degree(4));
    }

    #[test]
    fn even_case_building_blocks() {
        // the intermediate derivatives behind f_[4]
        let fp = p("x1*x3 - x2^2", 4);
        let d = make_d(4).unwrap();
        let dfp = d.apply(&fp).unwrap();
        assert_eq!(dfp, p("x1*x4 - x2*x3", 4));
        let d2fp = d.apply(&dfp).unwrap();
        assert_eq!(d2fp, p("2*x2*x4 - 2*x3^2", 4));
        assert!(d.apply(&d2fp).unwrap().is_zero());
    }

    #[test]
    fn kernel_membership_small() {
        for n in 3..=5 {
            let f = make_f(n).unwrap();
            assert!(make_d(n).unwrap().kernel_member(&f).unwrap(), "n={n}");
            assert!(make_d_prime(n).unwrap().kernel_member(&f).unwrap(), "n={n}");
        }
    }

    #[test]
    fn sigma_fixes_kernel_polynomials() {
        for n in 3..=6 {
            let f = make_f(n).unwrap();
            let sigma = make_sigma(n).unwrap();
            assert_eq!(sigma.apply(&f).unwrap(), f, "n={n}");
        }
    }

    #[test]
    fn phi_basics() {
        let phi = make_phi(3, 1, false).unwrap();
        let f = make_f(3).unwrap();
        assert_eq!(phi.apply(&f).unwrap(), f);
        assert_eq!(phi.image(0).total_degree().unwrap(), 9);
        assert_ne!(phi, Endomorphism::identity(s(3)));

        // lifted phi projects onto phi under t -> f
        let lifted = make_phi(3, 1, true).unwrap();
        let e3 = VarSpace::extended(3).unwrap();
        let t_minus_f = Polynomial::var_t(e3)
            .unwrap()
            .sub(&f.embed_extended())
            .unwrap();
        assert_eq!(lifted.apply(&t_minus_f).unwrap(), t_minus_f);
        for slot in 1..=3 {
            let projected = substitution_pi(lifted.image(slot), &f).unwrap();
            assert_eq!(&projected, phi.image(slot - 1));
        }
    }

    #[test]
    fn phi_powers_match_honest_composition() {
        let phi = make_phi(3, 1, false).unwrap();
        let phi2 = phi_program(3, 1, 2, false).unwrap().to_endo().unwrap();
        assert_eq!(phi2, phi.compose(&phi).unwrap());
        let phi_inv = phi_program(3, 1, -1, false).unwrap().to_endo().unwrap();
        assert_eq!(phi.compose(&phi_inv).unwrap(), Endomorphism::identity(s(3)));
        assert!(phi_program(3, 1, 0, false).is_err());
    }

    #[test]
    fn word_evaluation() {
        let single = WordSpec::new(vec![1], vec![]).unwrap();
        assert_eq!(
            evaluate_word(&single, 3, 1, false).unwrap(),
            make_phi(3, 1, false).unwrap()
        );
        // phi . phi^-1 as separate evaluations composed
        let inv = WordSpec::new(vec![-1], vec![]).unwrap();
        let id = evaluate_word(&single, 3, 1, false)
            .unwrap()
            .compose(&evaluate_word(&inv, 3, 1, false).unwrap())
            .unwrap();
        assert_eq!(id, Endomorphism::identity(s(3)));
    }

    #[test]
    fn word_with_translation_has_predicted_degree() {
        let word = WordSpec::new(vec![1, 1], vec![vec![rint(1), rint(0), rint(0)]]).unwrap();
        let theta = evaluate_word(&word, 3, 1, false).unwrap();
        assert!(theta.as_affine().is_none());
        assert_eq!(theta.image(0).total_degree().unwrap(), 25);
    }

    #[test]
    fn sigma_pair_product_is_one_exponential() {
        let (s1, s2) = make_sigma_pair(3, 1, &rint(2)).unwrap();
        // sigma_2 = nu_{1/2} . mu_2 . eps_{-3}
        let d = make_d(3).unwrap();
        let eps = exp_endo(&d, &Polynomial::constant(s(3), rint(-3))).unwrap();
        let expected2 = make_nu(&rat(1, 2), 3)
            .unwrap()
            .compose(&make_mu(&rint(2), 3).unwrap())
            .unwrap()
            .compose(&eps)
            .unwrap();
        assert_eq!(s2, expected2);

        // sigma_1 . sigma_2 = eps_{-15 f}
        let f = make_f(3).unwrap();
        let target = exp_endo(&d, &f.scale(&rint(-15))).unwrap();
        assert_eq!(s1.compose(&s2).unwrap(), target);
    }

    #[test]
    fn sigma_pair_rejects_degenerate_u() {
        assert!(make_sigma_pair(3, 1, &Rat::zero()).is_err());
        assert!(make_sigma_pair(3, 1, &rint(1)).is_err());
        assert!(make_sigma_pair(3, 1, &rint(-1)).is_err());
    }

    #[test]
    fn two_by_two_matrix_identity() {
        // A(1-a) B(-1) A(1-a^{-1}) B(a) = C(a^{-1}) at a = 2
        let a_mat = |c: Rat| vec![vec![Rat::one(), Rat::zero()], vec![c, Rat::one()]];
        let b_mat = |c: Rat| vec![vec![Rat::one(), c], vec![Rat::zero(), Rat::one()]];
        let prod = mat_mul(
            &mat_mul(&mat_mul(&a_mat(rint(-1)), &b_mat(rint(-1))), &a_mat(rat(1, 2))),
            &b_mat(rint(2)),
        );
        assert_eq!(
            prod,
            vec![vec![rat(1, 2), Rat::zero()], vec![Rat::zero(), rint(2)]]
        );
    }

    #[test]
    fn symmetric_power_matrices() {
        let n = 4;
        let (ma, mb, mc) = el_matrices(&rint(2), n).unwrap();
        // C' is diagonal with entries a^{n-2i+1}
        for i in 1..=n {
            assert_eq!(mc[i - 1][i - 1], rat_pow(&rint(2), n as i64 - 2 * i as i64 + 1).unwrap());
        }
        // independent route: act on the basis x^{n-i} y^{i-1} of binary forms
        let two = s(2);
        let basis: Vec<Monomial> = (1..=n)
            .map(|i| {
                Monomial::from_exponents(two, &[(n - i) as u32, (i - 1) as u32]).unwrap()
            })
            .collect();
        let sym_matrix = |x_img: Polynomial, y_img: Polynomial| -> Mat {
            let map = Endomorphism::new(two, vec![x_img, y_img]).unwrap();
            let mut m = vec![vec![Rat::zero(); n]; n];
            for (col, b) in basis.iter().enumerate() {
                let image = map
                    .apply(&Polynomial::monomial(two, b.clone(), Rat::one()).unwrap())
                    .unwrap();
                for (row, rb) in basis.iter().enumerate() {
                    m[row][col] = image.coeff(rb);
                }
            }
            m
        };
        // (x, y) A(a) = (x + a y, y), (x, y) B(a) = (x, a x + y),
        // (x, y) C(a) = (a x, y / a)
        assert_eq!(ma, sym_matrix(p("x1 + 2*x2", 2), p("x2", 2)));
        assert_eq!(mb, sym_matrix(p("x1", 2), p("2*x1 + x2", 2)));
        assert_eq!(mc, sym_matrix(p("2*x1", 2), p("1/2*x2", 2)));
        assert!(el_matrices(&Rat::zero(), 3).is_err());
    }

    #[test]
    fn el_matrix_identity_and_map_correspondence() {
        // A'(1-a) B'(-1) A'(1-a^{-1}) B'(a) = C'(a^{-1}) for several a
        for (n, a) in [(3, rint(2)), (4, rat(3, 5)), (5, rint(-2))] {
            let col_a = |c: &Rat| el_matrices(c, n).unwrap().0;
            let col_b = |c: &Rat| el_matrices(c, n).unwrap().1;
            let one = Rat::one();
            let prod = mat_mul(
                &mat_mul(
                    &mat_mul(&col_a(&(&one - &a)), &col_b(&rint(-1))),
                    &col_a(&(&one - a.recip())),
                ),
                &col_b(&a),
            );
            let c_inv = el_matrices(&a.recip(), n).unwrap().2;
            assert_eq!(prod, c_inv, "n={n}");
        }

        // eps_a = (x_1..x_n) A'(a) as maps at n = 3, a = 2
        let n = 3;
        let (ma, mb, _) = el_matrices(&rint(2), n).unwrap();
        let eps = exp_endo(&make_d(n).unwrap(), &Polynomial::constant(s(n), rint(2))).unwrap();
        let from_matrix = crate::endo::AffineForm {
            matrix: ma,
            offset: vec![Rat::zero(); n],
        }
        .to_endo(s(n))
        .unwrap();
        assert_eq!(eps, from_matrix);
        let epsp = exp_endo(&make_d_prime(n).unwrap(), &Polynomial::constant(s(n), rint(2)))
            .unwrap();
        let from_matrix = crate::endo::AffineForm {
            matrix: mb,
            offset: vec![Rat::zero(); n],
        }
        .to_endo(s(n))
        .unwrap();
        assert_eq!(epsp, from_matrix);
    }

    #[test]
    fn from_endo_requires_invertible_affine() {
        let tau = make_translation(&[rint(1), rint(2)]).unwrap();
        let factor = Factor::from_endo(&tau).unwrap();
        assert_eq!(
            factor.forward().compose(&factor.inv).unwrap(),
            Endomorphism::identity(s(2))
        );
        let collapse = Endomorphism::new(s(2), vec![p("x1", 2), p("x1", 2)]).unwrap();
        assert_eq!(Factor::from_endo(&collapse), Err(Error::NoInverseAvailable));
        let nagata = exp_endo(&make_d(3).unwrap(), &make_f(3).unwrap()).unwrap();
        assert_eq!(Factor::from_endo(&nagata), Err(Error::NoInverseAvailable));
    }
}
