//! Weighted degrees and the degree classes that certify word growth.
//!
//! Three weight vectors on k[t,x] drive everything: w1 is total degree,
//! w2 = (n-2, 2n-2, 2n-3, ..., n) and w3 = (0, 1, ..., 1) (x-degree).
//! A class tag P/Q/R records bounds on these degrees together with the
//! exact shape of the lexicographic leading term; the transition maps
//! below track how the lifted generators move polynomials between
//! classes, ending in the degree prediction for a whole word.

use num::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rint, Rat};
use crate::space::{Monomial, VarSpace};
use crate::words::WordSpec;

pub type WeightVector = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    W1,
    W2,
    W3,
}

/// The weight vectors on k[t, x_1..x_n]; slot 0 weighs t.
pub fn make_weight(kind: WeightKind, n: usize) -> Result<WeightVector> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    let n64 = n as u64;
    Ok(match kind {
        WeightKind::W1 => vec![1; n + 1],
        WeightKind::W2 => {
            let mut w = vec![n64 - 2];
            w.extend((1..=n64).map(|j| 2 * n64 - j - 1));
            w
        }
        WeightKind::W3 => {
            let mut w = vec![0];
            w.extend(std::iter::repeat(1).take(n));
            w
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    P,
    Q,
    R,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassKind::P => "P",
            ClassKind::Q => "Q",
            ClassKind::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeClassTag {
    pub kind: ClassKind,
    pub alpha: u64,
    pub beta: u64,
}

impl DegreeClassTag {
    pub fn new(kind: ClassKind, alpha: u64, beta: u64) -> Result<Self> {
        if alpha < 1 || beta < 1 {
            return Err(Error::BadParameter(format!(
                "class parameters must be >= 1, got alpha={alpha} beta={beta}"
            )));
        }
        Ok(DegreeClassTag { kind, alpha, beta })
    }
}

impl std::fmt::Display for DegreeClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({},{})", self.kind, self.alpha, self.beta)
    }
}

/// Exact class membership: the weighted-degree bounds plus the leading
/// term shape, on a nonzero polynomial in an extended space.
pub fn in_class(p: &Polynomial, tag: &DegreeClassTag) -> Result<bool> {
    let space = p.space();
    if !space.is_extended() {
        return Err(Error::SpaceMismatch);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = space.n();
    let (lt, _) = p.leading_term()?;
    let lt_slot = match tag.kind {
        ClassKind::Q => space.x_slot(1)?,
        ClassKind::P | ClassKind::R => space.x_slot(n)?,
    };
    let mut expected = Monomial::one(space).with_exp(0, tag.alpha as u32);
    expected = expected.with_exp(lt_slot, tag.beta as u32);
    if *lt != expected {
        return Ok(false);
    }
    match tag.kind {
        ClassKind::P => {
            let w1 = p.weighted_degree(&make_weight(WeightKind::W1, n)?)?;
            let w2 = p.weighted_degree(&make_weight(WeightKind::W2, n)?)?;
            let n64 = n as u64;
            Ok(w1 <= tag.alpha + tag.beta
                && w2 <= (n64 - 2) * tag.alpha + (n64 - 1) * tag.beta)
        }
        ClassKind::Q | ClassKind::R => {
            let w3 = p.weighted_degree(&make_weight(WeightKind::W3, n)?)?;
            Ok(w3 <= tag.beta)
        }
    }
}

/// The lifted eps'_d maps send R(alpha, beta) into Q(alpha, beta).
pub fn transition_eps_prime(tag: &DegreeClassTag) -> Result<DegreeClassTag> {
    if tag.kind != ClassKind::R {
        return Err(Error::WrongKind);
    }
    DegreeClassTag::new(ClassKind::Q, tag.alpha, tag.beta)
}

/// The lifted eps_{t^l} map sends Q(alpha, beta) into
/// P(alpha + (n-1) l beta, beta).
pub fn transition_eps_t(tag: &DegreeClassTag, n: usize, l: u64) -> Result<DegreeClassTag> {
    if tag.kind != ClassKind::Q {
        return Err(Error::WrongKind);
    }
    DegreeClassTag::new(
        ClassKind::P,
        tag.alpha + (n as u64 - 1) * l * tag.beta,
        tag.beta,
    )
}

/// The translation constant mu: for odd n it is max{i : a_i != 0} + n - 2,
/// for even n = 2m it is 2 max{i : a_i != 0} + 4m - 4.
pub fn mu_param(a: &[Rat], n: usize) -> Result<u64> {
    if a.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: a.len() });
    }
    let max_idx = a
        .iter()
        .rposition(|c| !c.is_zero())
        .map(|i| (i + 1) as u64)
        .ok_or(Error::ZeroVector)?;
    let n64 = n as u64;
    Ok(if n % 2 == 1 {
        max_idx + n64 - 2
    } else {
        2 * max_idx + 2 * n64 - 4
    })
}

/// One word step phi^d . tau_a applied to a P-class member:
/// alpha' = l(mu alpha + (n-1) beta), beta' = alpha + beta for odd n and
/// 2 alpha + beta for even n.
pub fn transition_word_step(
    tag: &DegreeClassTag,
    mu: u64,
    n: usize,
    l: u64,
) -> Result<DegreeClassTag> {
    if tag.kind != ClassKind::P {
        return Err(Error::WrongKind);
    }
    let n64 = n as u64;
    let alpha = l * (mu * tag.alpha + (n64 - 1) * tag.beta);
    let beta = if n % 2 == 1 {
        tag.alpha + tag.beta
    } else {
        2 * tag.alpha + tag.beta
    };
    DegreeClassTag::new(ClassKind::P, alpha, beta)
}

/// Predicted class of the lifted word applied to x_1 and the exact total
/// degree of the projected image: start from P((2n-2)l, 1) for the
/// innermost phi power, fold the translation steps innermost-first, and
/// report deg(f) * alpha + beta.
pub fn word_class_predict(word: &WordSpec, n: usize, l: u64) -> Result<(DegreeClassTag, u64)> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    if l < 1 {
        return Err(Error::BadParameter("l must be >= 1".into()));
    }
    let mut tag = DegreeClassTag::new(ClassKind::P, (2 * n as u64 - 2) * l, 1)?;
    for a in word.translations().iter().rev() {
        let mu = mu_param(a, n)?;
        tag = transition_word_step(&tag, mu, n, l)?;
    }
    let d = if n % 2 == 1 { 2 } else { 4 };
    Ok((tag, d * tag.alpha + tag.beta))
}

/// Seeded random member of a class: the mandatory leading term plus up
/// to `extra` lex-smaller terms rejection-sampled under the degree
/// bounds of the class.
pub fn sample_class_member<R: Rng>(
    rng: &mut R,
    tag: &DegreeClassTag,
    n: usize,
    extra: usize,
) -> Result<Polynomial> {
    let space = VarSpace::extended(n)?;
    let lt_slot = match tag.kind {
        ClassKind::Q => space.x_slot(1)?,
        ClassKind::P | ClassKind::R => space.x_slot(n)?,
    };
    let lead = Monomial::one(space)
        .with_exp(0, tag.alpha as u32)
        .with_exp(lt_slot, tag.beta as u32);
    let mut coeff = rint(rng.gen_range(-5i64..=5));
    if coeff.is_zero() {
        coeff = rint(1);
    }
    let mut p = Polynomial::monomial(space, lead.clone(), coeff)?;
    let w1 = make_weight(WeightKind::W1, n)?;
    let w2 = make_weight(WeightKind::W2, n)?;
    let w3 = make_weight(WeightKind::W3, n)?;
    let n64 = n as u64;
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 200 {
        attempts += 1;
        let mut exps = vec![rng.gen_range(0..=tag.alpha as u32)];
        for _ in 0..n {
            exps.push(rng.gen_range(0..=tag.beta as u32));
        }
        let m = Monomial::from_exponents(space, &exps)?;
        if m >= lead {
            continue;
        }
        let ok = match tag.kind {
            ClassKind::P => {
                m.weighted_degree(&w1) <= tag.alpha + tag.beta
                    && m.weighted_degree(&w2) <= (n64 - 2) * tag.alpha + (n64 - 1) * tag.beta
            }
            ClassKind::Q | ClassKind::R => m.weighted_degree(&w3) <= tag.beta,
        };
        if !ok {
            continue;
        }
        let c = rint(rng.gen_range(-5i64..=5));
        p.add_term(m, c);
        added += 1;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e3() -> VarSpace {
        VarSpace::extended(3).unwrap()
    }

    fn tag(kind: ClassKind, a: u64, b: u64) -> DegreeClassTag {
        DegreeClassTag::new(kind, a, b).unwrap()
    }

    #[test]
    fn weight_vectors() {
        assert_eq!(make_weight(WeightKind::W1, 3).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(make_weight(WeightKind::W2, 3).unwrap(), vec![1, 4, 3, 2]);
        assert_eq!(make_weight(WeightKind::W3, 4).unwrap(), vec![0, 1, 1, 1, 1]);
        assert_eq!(make_weight(WeightKind::W2, 4).unwrap(), vec![2, 6, 5, 4, 3]);
        assert!(make_weight(WeightKind::W1, 2).is_err());
    }

    #[test]
    fn class_membership() {
        // the lifted eps_{-t}(x_1) at n = 3, l = 1
        let p = parse_poly("x1 - 2*t*x2 + t^2*x3", e3()).unwrap();
        assert!(in_class(&p, &tag(ClassKind::R, 2, 1)).unwrap());
        assert!(!in_class(&p, &tag(ClassKind::Q, 2, 1)).unwrap());

        let x1 = parse_poly("x1", e3()).unwrap();
        assert!(!in_class(&x1, &tag(ClassKind::P, 1, 1)).unwrap());

        let q = parse_poly("t^2*x1 + x2", e3()).unwrap();
        assert!(in_class(&q, &tag(ClassKind::Q, 2, 1)).unwrap());

        assert!(in_class(&Polynomial::zero(e3()), &tag(ClassKind::P, 1, 1)).is_err());
        let plain = parse_poly("x1", VarSpace::plain(3).unwrap()).unwrap();
        assert!(in_class(&plain, &tag(ClassKind::P, 1, 1)).is_err());
    }

    #[test]
    fn class_transitions() {
        let r = tag(ClassKind::R, 2, 1);
        assert_eq!(transition_eps_prime(&r).unwrap(), tag(ClassKind::Q, 2, 1));
        let r2 = tag(ClassKind::R, 1, 5);
        assert_eq!(transition_eps_prime(&r2).unwrap(), tag(ClassKind::Q, 1, 5));
        assert_eq!(transition_eps_prime(&tag(ClassKind::P, 2, 1)), Err(Error::WrongKind));

        assert_eq!(
            transition_eps_t(&tag(ClassKind::Q, 2, 1), 3, 1).unwrap(),
            tag(ClassKind::P, 4, 1)
        );
        assert_eq!(
            transition_eps_t(&tag(ClassKind::Q, 1, 2), 4, 1).unwrap(),
            tag(ClassKind::P, 7, 2)
        );
        assert_eq!(
            transition_eps_t(&tag(ClassKind::Q, 1, 1), 3, 2).unwrap(),
            tag(ClassKind::P, 5, 1)
        );
        assert_eq!(transition_eps_t(&tag(ClassKind::R, 1, 1), 3, 1), Err(Error::WrongKind));
    }

    #[test]
    fn mu_constants() {
        let a = [rint(1), rint(0), rint(0)];
        assert_eq!(mu_param(&a, 3).unwrap(), 2);
        let b = [rint(0), rint(0), rint(5)];
        assert_eq!(mu_param(&b, 3).unwrap(), 4);
        let c = [rint(1), rint(0), rint(0), rint(0)];
        assert_eq!(mu_param(&c, 4).unwrap(), 6);
        let z = [Rat::zero(), Rat::zero(), Rat::zero()];
        assert_eq!(mu_param(&z, 3), Err(Error::ZeroVector));
    }

    #[test]
    fn word_steps() {
        assert_eq!(
            transition_word_step(&tag(ClassKind::P, 4, 1), 2, 3, 1).unwrap(),
            tag(ClassKind::P, 10, 5)
        );
        assert_eq!(
            transition_word_step(&tag(ClassKind::P, 6, 1), 6, 4, 1).unwrap(),
            tag(ClassKind::P, 39, 13)
        );
        assert_eq!(
            transition_word_step(&tag(ClassKind::Q, 1, 1), 2, 3, 1),
            Err(Error::WrongKind)
        );
    }

    #[test]
    fn word_predictions() {
        let phi = WordSpec::new(vec![1], vec![]).unwrap();
        assert_eq!(
            word_class_predict(&phi, 3, 1).unwrap(),
            (tag(ClassKind::P, 4, 1), 9)
        );
        let w = WordSpec::new(vec![1, 1], vec![vec![rint(1), rint(0), rint(0)]]).unwrap();
        assert_eq!(
            word_class_predict(&w, 3, 1).unwrap(),
            (tag(ClassKind::P, 10, 5), 25)
        );
        // class is independent of the phi power
        let sq = WordSpec::new(vec![2], vec![]).unwrap();
        assert_eq!(
            word_class_predict(&sq, 3, 1).unwrap(),
            (tag(ClassKind::P, 4, 1), 9)
        );
    }

    #[test]
    fn sampled_members_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [ClassKind::P, ClassKind::Q, ClassKind::R] {
            for (a, b) in [(1, 1), (2, 1), (3, 2), (1, 3)] {
                let t = tag(kind, a, b);
                for _ in 0..5 {
                    let p = sample_class_member(&mut rng, &t, 3, 8).unwrap();
                    assert!(in_class(&p, &t).unwrap(), "{t} sample {p}");
                }
            }
        }
    }
}
