//! Executable checks binding the algebraic statements to exact
//! computations, plus the deterministic suite runner.
//!
//! Every check produces a `CheckReport`; a failed report always carries
//! the two sides of the identity that broke, in canonical text form.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{
    el_matrices, f_degree, make_d, make_d_prime, make_f, make_sigma_pair, phi_program,
    word_program, Factor, MapProgram,
};
use crate::derivation::Derivation;
use crate::endo::{exp_endo, make_mu, make_nu, substitution_pi, Endomorphism};
use crate::error::{Error, Result};
use crate::grading::{
    in_class, make_weight, sample_class_member, transition_eps_t, word_class_predict, ClassKind,
    DegreeClassTag, WeightKind,
};
use crate::matrix::{mat_mul, Mat};
use crate::parse::{format_poly, parse_poly};
use crate::poly::Polynomial;
use crate::rational::{rat_pow, rint, Rat};
use crate::space::{Monomial, VarSpace};
use crate::words::WordSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
}

impl CheckReport {
    /// JSON object for the report; timing is opt-in so that identical
    /// runs stay byte-identical.
    pub fn to_json(&self, include_elapsed: bool) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "name": self.name,
            "parameters": self.parameters,
            "passed": self.passed,
        });
        if let Some(w) = &self.witness {
            obj["witness"] = serde_json::json!({ "left": w.left, "right": w.right });
        }
        if include_elapsed {
            obj["elapsed_ms"] = serde_json::json!(self.elapsed.as_millis() as u64);
        }
        obj
    }

    /// One human-readable line per check.
    pub fn text_line(&self, include_elapsed: bool) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let params: Vec<String> =
            self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{verdict} {}", self.name);
        if !params.is_empty() {
            line.push(' ');
            line.push_str(&params.join(" "));
        }
        if include_elapsed {
            line.push_str(&format!(" ({:.1?})", self.elapsed));
        }
        line
    }
}

fn timed_report(
    name: &str,
    parameters: BTreeMap<String, String>,
    body: impl FnOnce() -> Result<(bool, Option<Witness>)>,
) -> Result<CheckReport> {
    let start = Instant::now();
    let (passed, witness) = body()?;
    Ok(CheckReport {
        name: name.to_string(),
        parameters,
        passed,
        witness,
        elapsed: start.elapsed(),
    })
}

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn endo_witness(left: &Endomorphism, right: &Endomorphism) -> Witness {
    Witness { left: left.to_json().to_string(), right: right.to_json().to_string() }
}

/// f_[n] lies in ker D and ker D'.
pub fn check_theorem2(n: usize) -> Result<CheckReport> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    timed_report("theorem2", params(&[("n", n.to_string())]), || {
        let f = make_f(n)?;
        let df = make_d(n)?.apply(&f)?;
        let dpf = make_d_prime(n)?.apply(&f)?;
        if df.is_zero() && dpf.is_zero() {
            Ok((true, None))
        } else {
            let bad = if df.is_zero() { dpf } else { df };
            Ok((false, Some(Witness { left: format_poly(&bad), right: "0".into() })))
        }
    })
}

/// eps with a polynomial coefficient: exp(coeff * D).
fn eps(n: usize, coeff: &Polynomial) -> Result<Endomorphism> {
    exp_endo(&make_d(n)?, coeff)
}

/// eps' with a constant coefficient: exp(c * D').
fn eps_prime(n: usize, c: &Rat) -> Result<Endomorphism> {
    let coeff = Polynomial::constant(VarSpace::plain(n)?, c.clone());
    exp_endo(&make_d_prime(n)?, &coeff)
}

/// The four commutation identities between mu/nu and the exponential
/// generators, checked as exact map equalities.
pub fn check_lemma1(n: usize, l: u64, a: &Rat, b: &Rat) -> Result<CheckReport> {
    if a.is_zero() {
        return Err(Error::BadParameter("a must be nonzero".into()));
    }
    let p = params(&[
        ("n", n.to_string()),
        ("l", l.to_string()),
        ("a", crate::rational::format_rat(a)),
        ("b", crate::rational::format_rat(b)),
    ]);
    timed_report("lemma1", p, || {
        let fl = make_f(n)?.pow(l as u32);
        let dl = (f_degree(n) * l) as i64;
        let mu = make_mu(a, n)?;
        let nu = make_nu(a, n)?;
        let bfl = fl.scale(b);
        let cases: [(Endomorphism, Endomorphism); 4] = [
            // mu_a . eps_{b f^l} = eps_{a^{-2} b f^l} . mu_a
            (
                mu.compose(&eps(n, &bfl)?)?,
                eps(n, &bfl.scale(&rat_pow(a, -2)?))?.compose(&mu)?,
            ),
            // nu_a . eps_{b f^l} = eps_{a^{dl} b f^l} . nu_a
            (
                nu.compose(&eps(n, &bfl)?)?,
                eps(n, &bfl.scale(&rat_pow(a, dl)?))?.compose(&nu)?,
            ),
            // mu_a . eps'_b = eps'_{a^2 b} . mu_a
            (
                mu.compose(&eps_prime(n, b)?)?,
                eps_prime(n, &(rat_pow(a, 2)? * b))?.compose(&mu)?,
            ),
            // nu_a . eps'_b = eps'_b . nu_a
            (
                nu.compose(&eps_prime(n, b)?)?,
                eps_prime(n, b)?.compose(&nu)?,
            ),
        ];
        for (left, right) in &cases {
            if left != right {
                return Ok((false, Some(endo_witness(left, right))));
            }
        }
        Ok((true, None))
    })
}

/// eps_{1-a} . eps'_{-1} . eps_{1-a^{-1}} . eps'_a = mu_{a^{-1}}.
pub fn check_lemma2(n: usize, a: &Rat) -> Result<CheckReport> {
    if a.is_zero() {
        return Err(Error::BadParameter("a must be nonzero".into()));
    }
    let p = params(&[("n", n.to_string()), ("a", crate::rational::format_rat(a))]);
    timed_report("lemma2", p, || {
        let space = VarSpace::plain(n)?;
        let c = |r: Rat| Polynomial::constant(space, r);
        let one = Rat::one();
        let left = eps(n, &c(&one - a))?
            .compose(&eps_prime(n, &-one.clone())?)?
            .compose(&eps(n, &c(&one - a.recip()))?)?
            .compose(&eps_prime(n, a)?)?;
        let right = make_mu(&a.recip(), n)?;
        if left == right {
            Ok((true, None))
        } else {
            Ok((false, Some(endo_witness(&left, &right))))
        }
    })
}

/// The 2x2 seed identity A(1-a) B(-1) A(1-a^{-1}) B(a) = C(a^{-1}).
pub fn check_d1_matrix(a: &Rat) -> Result<CheckReport> {
    if a.is_zero() {
        return Err(Error::BadParameter("a must be nonzero".into()));
    }
    let p = params(&[("a", crate::rational::format_rat(a))]);
    timed_report("d1_matrix", p, || {
        let lower = |c: &Rat| vec![vec![Rat::one(), Rat::zero()], vec![c.clone(), Rat::one()]];
        let upper = |c: &Rat| vec![vec![Rat::one(), c.clone()], vec![Rat::zero(), Rat::one()]];
        let one = Rat::one();
        let prod = mat_mul(
            &mat_mul(
                &mat_mul(&lower(&(&one - a)), &upper(&-one.clone())),
                &lower(&(&one - a.recip())),
            ),
            &upper(a),
        );
        let expect: Mat = vec![
            vec![a.recip(), Rat::zero()],
            vec![Rat::zero(), a.clone()],
        ];
        if prod == expect {
            Ok((true, None))
        } else {
            Ok((false, Some(Witness {
                left: format!("{prod:?}"),
                right: format!("{expect:?}"),
            })))
        }
    })
}

/// The symmetric-power identity A'(1-a) B'(-1) A'(1-a^{-1}) B'(a) = C'(a^{-1}).
pub fn check_d2_matrix(n: usize, a: &Rat) -> Result<CheckReport> {
    if a.is_zero() {
        return Err(Error::BadParameter("a must be nonzero".into()));
    }
    let p = params(&[("n", n.to_string()), ("a", crate::rational::format_rat(a))]);
    timed_report("d2_matrix", p, || {
        let one = Rat::one();
        let prod = mat_mul(
            &mat_mul(
                &mat_mul(
                    &el_matrices(&(&one - a), n)?.0,
                    &el_matrices(&-one.clone(), n)?.1,
                ),
                &el_matrices(&(&one - a.recip()), n)?.0,
            ),
            &el_matrices(a, n)?.1,
        );
        let expect = el_matrices(&a.recip(), n)?.2;
        if prod == expect {
            Ok((true, None))
        } else {
            Ok((false, Some(Witness {
                left: format!("{prod:?}"),
                right: format!("{expect:?}"),
            })))
        }
    })
}

/// sigma_1 . sigma_2 = eps_{(1-u^{2dl}) f^l}, reported with the target
/// exponential as witness.
pub fn check_sigma(n: usize, l: u64, u: &Rat) -> Result<CheckReport> {
    let p = params(&[
        ("n", n.to_string()),
        ("l", l.to_string()),
        ("u", crate::rational::format_rat(u)),
    ]);
    timed_report("sigma", p, || {
        let (s1, s2) = make_sigma_pair(n, l, u)?;
        let product = s1.compose(&s2)?;
        let coeff = Rat::one() - rat_pow(u, 2 * (f_degree(n) * l) as i64)?;
        let target = eps(n, &make_f(n)?.pow(l as u32).scale(&coeff))?;
        let witness = Some(endo_witness(&product, &target));
        Ok((product == target, witness))
    })
}

/// Free-product evidence for one word: the composed map is non-affine,
/// the lifted image of x_1 lands in the predicted class, the projected
/// degree matches the prediction exactly, and the lifted and direct
/// routes agree under t -> f.
pub fn check_word(word: &WordSpec, n: usize, l: u64) -> Result<CheckReport> {
    let (tag, degree) = word_class_predict(word, n, l)?;
    let p = params(&[
        ("n", n.to_string()),
        ("l", l.to_string()),
        ("word", word.to_string()),
        ("class", tag.to_string()),
        ("degree", degree.to_string()),
    ]);
    timed_report("word", p, || {
        let theta = crate::constructions::evaluate_word(word, n, l, false)?;
        if theta.as_affine().is_some() {
            return Ok((false, Some(Witness {
                left: theta.to_json().to_string(),
                right: "a non-affine map".into(),
            })));
        }
        let x1 = Polynomial::var_x(VarSpace::extended(n)?, 1)?;
        let lifted_x1 = word_program(word, n, l, true)?.apply(&x1)?;
        if !in_class(&lifted_x1, &tag)? {
            return Ok((false, Some(Witness {
                left: format_poly(&lifted_x1),
                right: format!("a member of {tag}"),
            })));
        }
        let direct = theta.image(0);
        let got_degree = direct.total_degree()?;
        if got_degree != degree {
            return Ok((false, Some(Witness {
                left: got_degree.to_string(),
                right: degree.to_string(),
            })));
        }
        let projected = substitution_pi(&lifted_x1, &make_f(n)?)?;
        if &projected != direct {
            return Ok((false, Some(Witness {
                left: format_poly(&projected),
                right: format_poly(direct),
            })));
        }
        Ok((true, None))
    })
}

/// Exact decision of the translation-conjugation condition for one
/// direction: adjoin a scalar parameter as the variable t, conjugate
/// tau_{t a} by the map, and test that every image stays affine in x.
/// Deciding it for the generic parameter covers every b in k a at once.
pub fn check_el_dagger(program: &MapProgram, a: &[Rat]) -> Result<bool> {
    if a.iter().all(Rat::is_zero) {
        return Err(Error::ZeroVector);
    }
    let space = program.space();
    if space.is_extended() || a.len() != space.n() {
        return Err(Error::SpaceMismatch);
    }
    let g = program.to_endo()?;
    if g.as_affine().is_some() {
        return Err(Error::AffineInput);
    }
    let n = space.n();
    let ext = space.to_extended();
    let embedded = program.embed_extended();
    let inverse = embedded.inverse();
    // tau_{t a}: x_i -> x_i + t a_i
    let t = Polynomial::var_t(ext)?;
    let mut tau_images = vec![t.clone()];
    for (i, ai) in a.iter().enumerate() {
        tau_images.push(Polynomial::var_x(ext, i + 1)?.add(&t.scale(ai))?);
    }
    let tau = Endomorphism::new(ext, tau_images)?;
    let x_weights = make_weight(WeightKind::W3, n)?;
    for i in 1..=n {
        let xi = Polynomial::var_x(ext, i)?;
        let conj = embedded.apply(&tau.apply(&inverse.apply(&xi)?)?)?;
        if conj.weighted_degree(&x_weights)? > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Derksen's triangular automorphism (x_1, ..., x_{n-1}, x_n + x_1^2)
/// as an invertible program.
pub fn derksen_program(n: usize) -> Result<MapProgram> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    let space = VarSpace::plain(n)?;
    let mut images = vec![Polynomial::zero(space); n];
    images[n - 1] = Polynomial::var_x(space, 1)?.pow(2);
    let partial_last = Derivation::new(space, images)?;
    let factor = Factor::exp(&partial_last, &Polynomial::one(space))?;
    MapProgram::new(space, vec![factor])
}

/// phi^d(x_i) lands in P((2n-i-1)l, 1) for the sampled powers, and the
/// innermost lifted generator lands in R((n-i)l, 1) for i < n (for
/// i = n it fixes x_n outright).
pub fn check_phi_classes(n: usize, l: u64, powers: &[i64]) -> Result<CheckReport> {
    let p = params(&[
        ("n", n.to_string()),
        ("l", l.to_string()),
        ("powers", format!("{powers:?}")),
    ]);
    timed_report("phi_classes", p, || {
        let ext = VarSpace::extended(n)?;
        for &d in powers {
            let program = phi_program(n, l, d, true)?;
            for i in 1..=n {
                let image = program.apply(&Polynomial::var_x(ext, i)?)?;
                let tag = DegreeClassTag::new(
                    ClassKind::P,
                    (2 * n as u64 - i as u64 - 1) * l,
                    1,
                )?;
                if !in_class(&image, &tag)? {
                    return Ok((false, Some(Witness {
                        left: format_poly(&image),
                        right: format!("a member of {tag} (d={d}, i={i})"),
                    })));
                }
            }
        }
        // the innermost factor of the lifted conjugation
        let t_l = Polynomial::var_t(ext)?.pow(l as u32);
        let inner = exp_endo(&make_d(n)?.embed_extended(), &t_l.neg())?;
        for i in 1..n {
            let image = inner.image(ext.x_slot(i)?);
            let tag = DegreeClassTag::new(ClassKind::R, (n as u64 - i as u64) * l, 1)?;
            if !in_class(image, &tag)? {
                return Ok((false, Some(Witness {
                    left: format_poly(image),
                    right: format!("a member of {tag} (i={i})"),
                })));
            }
        }
        let xn = Polynomial::var_x(ext, n)?;
        if inner.image(ext.x_slot(n)?) != &xn {
            return Ok((false, Some(Witness {
                left: format_poly(inner.image(ext.x_slot(n)?)),
                right: format_poly(&xn),
            })));
        }
        Ok((true, None))
    })
}

/// Sampled membership transport: lifted eps'_d maps R into Q, and the
/// lifted eps_{t^l} maps Q into P with the predicted parameters.
pub fn check_class_transport(seed: u64, samples: usize) -> Result<CheckReport> {
    let p = params(&[("samples", samples.to_string()), ("seed", seed.to_string())]);
    timed_report("class_transport", p, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7ab1);
        for _ in 0..samples {
            let n = *[3usize, 4].get(rng.gen_range(0..2)).unwrap();
            let ext = VarSpace::extended(n)?;
            let alpha = rng.gen_range(1..=3u64);
            let beta = rng.gen_range(1..=3u64);
            let d = [rint(1), rint(-1), rint(2)][rng.gen_range(0..3)].clone();

            let r_tag = DegreeClassTag::new(ClassKind::R, alpha, beta)?;
            let r = sample_class_member(&mut rng, &r_tag, n, 8)?;
            let eps_prime_lift =
                exp_endo(&make_d_prime(n)?.embed_extended(), &Polynomial::constant(ext, d))?;
            let image = eps_prime_lift.apply(&r)?;
            let q_tag = crate::grading::transition_eps_prime(&r_tag)?;
            if !in_class(&image, &q_tag)? {
                return Ok((false, Some(Witness {
                    left: format_poly(&image),
                    right: format!("a member of {q_tag}"),
                })));
            }

            let l = rng.gen_range(1..=2u64);
            let q = sample_class_member(&mut rng, &q_tag, n, 8)?;
            let t_l = Polynomial::var_t(ext)?.pow(l as u32);
            let eps_lift = exp_endo(&make_d(n)?.embed_extended(), &t_l)?;
            let image = eps_lift.apply(&q)?;
            let p_tag = transition_eps_t(&q_tag, n, l)?;
            if !in_class(&image, &p_tag)? {
                return Ok((false, Some(Witness {
                    left: format_poly(&image),
                    right: format!("a member of {p_tag}"),
                })));
            }
        }
        Ok((true, None))
    })
}

/// Inverse laws: eps_p . eps_{-p} = id for p in {1, f, f^2} and
/// phi . phi^{-1} = id.
pub fn check_inverses(n: usize, l: u64) -> Result<CheckReport> {
    let p = params(&[("n", n.to_string()), ("l", l.to_string())]);
    timed_report("inverses", p, || {
        let space = VarSpace::plain(n)?;
        let id = Endomorphism::identity(space);
        let f = make_f(n)?;
        for coeff in [Polynomial::one(space), f.clone(), f.pow(2)] {
            let prod = eps(n, &coeff)?.compose(&eps(n, &coeff.neg())?)?;
            if prod != id {
                return Ok((false, Some(endo_witness(&prod, &id))));
            }
        }
        let phi = phi_program(n, l, 1, false)?;
        let prod = phi.to_endo()?.compose(&phi.inverse().to_endo()?)?;
        if prod != id {
            return Ok((false, Some(endo_witness(&prod, &id))));
        }
        Ok((true, None))
    })
}

/// format . parse is the identity on seeded canonical strings.
pub fn check_parse_roundtrip(seed: u64, count: usize) -> Result<CheckReport> {
    let p = params(&[("count", count.to_string()), ("seed", seed.to_string())]);
    timed_report("parse_roundtrip", p, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x90f2);
        for _ in 0..count {
            let n = rng.gen_range(1..=5usize);
            let space = VarSpace::new(n, rng.gen_bool(0.5))?;
            let poly = random_poly(&mut rng, space);
            let text = format_poly(&poly);
            let reparsed = parse_poly(&text, space)?;
            if reparsed != poly {
                return Ok((false, Some(Witness {
                    left: text,
                    right: format_poly(&reparsed),
                })));
            }
        }
        Ok((true, None))
    })
}

/// Exponential additivity in the kernel coefficient:
/// eps_p . eps_q = eps_{p+q} for kernel elements p, q.
pub fn check_exp_additivity(n: usize) -> Result<CheckReport> {
    let p = params(&[("n", n.to_string())]);
    timed_report("exp_additivity", p, || {
        let f = make_f(n)?;
        let space = VarSpace::plain(n)?;
        let pool = [
            Polynomial::one(space),
            Polynomial::constant(space, rint(-2)),
            f.clone(),
            f.pow(2),
        ];
        for a in &pool {
            for b in &pool {
                let left = eps(n, a)?.compose(&eps(n, b)?)?;
                let right = eps(n, &a.add(b)?)?;
                if left != right {
                    return Ok((false, Some(endo_witness(&left, &right))));
                }
            }
        }
        Ok((true, None))
    })
}

fn random_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    Rat::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=3i64).into())
}

fn random_nonzero_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let r = random_rat(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_poly<R: Rng>(rng: &mut R, space: VarSpace) -> Polynomial {
    let terms = rng.gen_range(0..10usize);
    let mut acc = Polynomial::zero(space);
    for _ in 0..terms {
        let exps: Vec<u32> = (0..space.len()).map(|_| rng.gen_range(0..5)).collect();
        let m = Monomial::from_exponents(space, &exps).expect("matching length");
        acc.add_term(m, random_rat(rng, 9));
    }
    acc
}

fn random_direction<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Rat> {
    loop {
        let a: Vec<Rat> = (0..n).map(|_| rint(rng.gen_range(-bound..=bound))).collect();
        if a.iter().any(|c| !c.is_zero()) {
            return a;
        }
    }
}

/// Word-corpus shape parameters.
#[derive(Debug, Clone)]
pub struct WordGrid {
    pub count: usize,
    pub ns: Vec<usize>,
    pub max_segments: usize,
    pub max_power: i64,
    pub entry_bound: i64,
    /// Per-n cap on the predicted total degree of theta(x_1). Words are
    /// resampled until they fit, which keeps exact evaluation tractable:
    /// the support of theta(x_1) grows polynomially in this degree.
    pub degree_caps: Vec<(usize, u64)>,
}

impl WordGrid {
    fn cap_for(&self, n: usize) -> u64 {
        self.degree_caps
            .iter()
            .find(|(m, _)| *m == n)
            .map(|(_, c)| *c)
            .unwrap_or(u64::MAX)
    }
}

/// Deterministic seeded word corpus honoring the grid bounds.
pub fn sample_word_corpus(seed: u64, grid: &WordGrid) -> Vec<(WordSpec, usize, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3c91);
    let mut corpus = Vec::with_capacity(grid.count);
    while corpus.len() < grid.count {
        let n = grid.ns[rng.gen_range(0..grid.ns.len())];
        let s = rng.gen_range(1..=grid.max_segments);
        let powers: Vec<i64> = (0..s)
            .map(|_| loop {
                let p = rng.gen_range(-grid.max_power..=grid.max_power);
                if p != 0 {
                    break p;
                }
            })
            .collect();
        let translations: Vec<Vec<Rat>> = (0..s - 1)
            .map(|_| random_direction(&mut rng, n, grid.entry_bound))
            .collect();
        let word = WordSpec::new(powers, translations).expect("sampled word is valid");
        let Ok((_, degree)) = word_class_predict(&word, n, 1) else {
            continue;
        };
        if degree > grid.cap_for(n) {
            continue;
        }
        corpus.push((word, n, 1));
    }
    corpus
}

/// Parameter grid for the full suite.
#[derive(Debug, Clone)]
pub struct SuiteGrid {
    pub theorem2_ns: Vec<usize>,
    pub lemma1_cases: Vec<(usize, u64)>,
    pub lemma1_pairs: usize,
    pub lemma2_ns: Vec<usize>,
    pub lemma2_values: Vec<Rat>,
    pub d1_samples: usize,
    pub sigma_cases: Vec<(usize, u64, Rat)>,
    pub class_ns: Vec<usize>,
    pub class_powers: Vec<i64>,
    pub transport_samples: usize,
    pub words: WordGrid,
    pub dagger_directions: usize,
    pub inverse_cases: Vec<(usize, u64)>,
    pub roundtrip_count: usize,
}

impl SuiteGrid {
    /// The acceptance-scale grid.
    pub fn default_grid() -> Self {
        SuiteGrid {
            theorem2_ns: (3..=8).collect(),
            lemma1_cases: vec![(3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)],
            lemma1_pairs: 20,
            lemma2_ns: vec![3, 4, 5, 6],
            lemma2_values: vec![rint(2), rint(-1), Rat::new(1.into(), 2.into()), Rat::new(3.into(), 5.into())],
            d1_samples: 100,
            sigma_cases: vec![
                (3, 1, rint(2)),
                (3, 2, rint(2)),
                (4, 1, rint(2)),
                (5, 1, rint(3)),
            ],
            class_ns: vec![3, 4, 5],
            class_powers: vec![-2, -1, 1, 2],
            transport_samples: 30,
            words: WordGrid {
                count: 50,
                ns: vec![3, 4],
                max_segments: 3,
                max_power: 2,
                entry_bound: 2,
                degree_caps: vec![(3, 200), (4, 320)],
            },
            dagger_directions: 10,
            inverse_cases: vec![(3, 1), (4, 1)],
            roundtrip_count: 200,
        }
    }

    /// A light grid for smoke runs.
    pub fn quick_grid() -> Self {
        SuiteGrid {
            theorem2_ns: vec![3, 4],
            lemma1_cases: vec![(3, 1)],
            lemma1_pairs: 4,
            lemma2_ns: vec![3],
            lemma2_values: vec![rint(2)],
            d1_samples: 10,
            sigma_cases: vec![(3, 1, rint(2))],
            class_ns: vec![3],
            class_powers: vec![-1, 1],
            transport_samples: 6,
            words: WordGrid {
                count: 6,
                ns: vec![3],
                max_segments: 2,
                max_power: 2,
                entry_bound: 2,
                degree_caps: vec![(3, 80)],
            },
            dagger_directions: 2,
            inverse_cases: vec![(3, 1)],
            roundtrip_count: 25,
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::default_grid()),
            "quick" => Ok(Self::quick_grid()),
            other => Err(Error::BadParameter(format!("unknown grid preset '{other}'"))),
        }
    }
}

fn error_report(name: &str, parameters: BTreeMap<String, String>, err: &Error) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        parameters,
        passed: false,
        witness: Some(Witness { left: format!("error: {err}"), right: "a completed check".into() }),
        elapsed: Duration::ZERO,
    }
}

fn push(reports: &mut Vec<CheckReport>, name: &str, result: Result<CheckReport>) {
    match result {
        Ok(r) => reports.push(r),
        Err(e) => reports.push(error_report(name, BTreeMap::new(), &e)),
    }
}

/// Runs the whole grid. Deterministic for a fixed seed: the corpus, the
/// parameter choices, and the report order never depend on timing.
pub fn run_suite(seed: u64, grid: &SuiteGrid) -> Vec<CheckReport> {
    let mut reports = Vec::new();

    for &n in &grid.theorem2_ns {
        push(&mut reports, "theorem2", check_theorem2(n));
    }

    push(&mut reports, "closed_forms", check_closed_forms());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &(n, l) in &grid.lemma1_cases {
        let pairs: Vec<(Rat, Rat)> = (0..grid.lemma1_pairs)
            .map(|_| (random_nonzero_rat(&mut rng, 4), random_rat(&mut rng, 4)))
            .collect();
        let results: Vec<Result<CheckReport>> = pairs
            .par_iter()
            .map(|(a, b)| check_lemma1(n, l, a, b))
            .collect();
        // fold the pair grid into one report per (n, l)
        let mut merged: Option<CheckReport> = None;
        for r in results {
            match (r, &mut merged) {
                (Ok(rep), None) => merged = Some(rep),
                (Ok(rep), Some(m)) => {
                    m.passed &= rep.passed;
                    m.elapsed += rep.elapsed;
                    if m.witness.is_none() {
                        m.witness = rep.witness;
                    }
                    m.parameters.remove("a");
                    m.parameters.remove("b");
                    m.parameters.insert("pairs".into(), grid.lemma1_pairs.to_string());
                }
                (Err(e), _) => {
                    reports.push(error_report("lemma1", BTreeMap::new(), &e));
                }
            }
        }
        if let Some(m) = merged {
            reports.push(m);
        }
    }

    for &n in &grid.lemma2_ns {
        for a in &grid.lemma2_values {
            push(&mut reports, "lemma2", check_lemma2(n, a));
        }
    }
    {
        let mut all = CheckReport {
            name: "d1_matrix".into(),
            parameters: params(&[("samples", grid.d1_samples.to_string())]),
            passed: true,
            witness: None,
            elapsed: Duration::ZERO,
        };
        for _ in 0..grid.d1_samples {
            let a = random_nonzero_rat(&mut rng, 9);
            match check_d1_matrix(&a) {
                Ok(rep) => {
                    all.passed &= rep.passed;
                    all.elapsed += rep.elapsed;
                    if all.witness.is_none() {
                        all.witness = rep.witness;
                    }
                }
                Err(e) => {
                    all.passed = false;
                    all.witness = Some(Witness {
                        left: format!("error: {e}"),
                        right: "a completed check".into(),
                    });
                }
            }
        }
        reports.push(all);
        push(&mut reports, "d2_matrix", check_d2_matrix(4, &random_nonzero_rat(&mut rng, 5)));
    }

    let sigma_reports: Vec<Result<CheckReport>> = grid
        .sigma_cases
        .par_iter()
        .map(|(n, l, u)| check_sigma(*n, *l, u))
        .collect();
    for r in sigma_reports {
        push(&mut reports, "sigma", r);
    }

    for &n in &grid.class_ns {
        push(&mut reports, "phi_classes", check_phi_classes(n, 1, &grid.class_powers));
    }
    push(&mut reports, "class_transport", check_class_transport(seed, grid.transport_samples));

    let corpus = sample_word_corpus(seed, &grid.words);
    let word_reports: Vec<Result<CheckReport>> = corpus
        .par_iter()
        .map(|(word, n, l)| check_word(word, *n, *l))
        .collect();
    for r in word_reports {
        push(&mut reports, "word", r);
    }

    reports.push(dagger_report("dagger_derksen", true, || {
        check_el_dagger(&derksen_program(3)?, &[rint(0), rint(0), rint(1)])
    }));
    for _ in 0..grid.dagger_directions {
        let a = random_direction(&mut rng, 3, 3);
        let a_text = a.iter().map(crate::rational::format_rat).collect::<Vec<_>>().join(",");
        let mut rep = dagger_report("dagger_phi", false, || {
            check_el_dagger(&phi_program(3, 1, 1, false)?, &a)
        });
        rep.parameters.insert("direction".into(), a_text);
        reports.push(rep);
    }

    for &(n, l) in &grid.inverse_cases {
        push(&mut reports, "inverses", check_inverses(n, l));
    }
    push(&mut reports, "parse_roundtrip", check_parse_roundtrip(seed, grid.roundtrip_count));
    push(&mut reports, "exp_additivity", check_exp_additivity(3));

    reports
}

fn dagger_report(name: &str, expected: bool, body: impl FnOnce() -> Result<bool>) -> CheckReport {
    let start = Instant::now();
    match body() {
        Ok(observed) => CheckReport {
            name: name.to_string(),
            parameters: params(&[("expected", expected.to_string()), ("observed", observed.to_string())]),
            passed: observed == expected,
            witness: if observed == expected {
                None
            } else {
                Some(Witness {
                    left: format!("dagger = {observed}"),
                    right: format!("dagger = {expected}"),
                })
            },
            elapsed: start.elapsed(),
        },
        Err(e) => error_report(name, BTreeMap::new(), &e),
    }
}

/// The frozen closed forms of the first kernel polynomials.
pub fn check_closed_forms() -> Result<CheckReport> {
    timed_report("closed_forms", BTreeMap::new(), || {
        let expect = [
            (3usize, "x1*x3 - x2^2"),
            (4, "x1^2*x4^2 - 6*x1*x2*x3*x4 + 4*x1*x3^3 + 4*x2^3*x4 - 3*x2^2*x3^2"),
            (5, "x1*x5 - 4*x2*x4 + 3*x3^2"),
        ];
        for (n, text) in expect {
            let f = make_f(n)?;
            if format_poly(&f) != text {
                return Ok((false, Some(Witness {
                    left: format_poly(&f),
                    right: text.to_string(),
                })));
            }
        }
        Ok((true, None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_reports() {
        let rep = check_theorem2(3).unwrap();
        assert!(rep.passed);
        assert!(rep.witness.is_none());
        let rep = check_theorem2(6).unwrap();
        assert!(rep.passed);
        assert!(matches!(check_theorem2(2), Err(Error::BadDimension(2))));
    }

    #[test]
    fn lemma1_single_case() {
        let rep = check_lemma1(3, 1, &rint(2), &Rat::one()).unwrap();
        assert!(rep.passed, "{:?}", rep.witness);
        assert!(check_lemma1(3, 1, &Rat::zero(), &Rat::one()).is_err());
    }

    #[test]
    fn lemma2_single_case() {
        let rep = check_lemma2(3, &rint(2)).unwrap();
        assert!(rep.passed, "{:?}", rep.witness);
        let rep = check_lemma2(4, &Rat::new(3.into(), 5.into())).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn sigma_single_case() {
        let rep = check_sigma(3, 1, &rint(2)).unwrap();
        assert!(rep.passed);
        // the witness names the target exponential
        assert!(rep.witness.unwrap().right.contains("-15"));
    }

    #[test]
    fn word_single_case() {
        let word = WordSpec::new(vec![1, 1], vec![vec![rint(1), rint(0), rint(0)]]).unwrap();
        let rep = check_word(&word, 3, 1).unwrap();
        assert!(rep.passed, "{:?}", rep.witness);
        assert_eq!(rep.parameters["degree"], "25");
    }

    #[test]
    fn dagger_discriminates() {
        let derksen = derksen_program(3).unwrap();
        assert!(check_el_dagger(&derksen, &[rint(0), rint(0), rint(1)]).unwrap());
        let phi = phi_program(3, 1, 1, false).unwrap();
        assert!(!check_el_dagger(&phi, &[rint(1), rint(0), rint(0)]).unwrap());
        // error paths
        assert_eq!(
            check_el_dagger(&derksen, &[Rat::zero(), Rat::zero(), Rat::zero()]),
            Err(Error::ZeroVector)
        );
        let tau_only = MapProgram::new(
            VarSpace::plain(3).unwrap(),
            vec![Factor::translation(&[rint(1), rint(0), rint(0)]).unwrap()],
        )
        .unwrap();
        assert_eq!(
            check_el_dagger(&tau_only, &[rint(1), rint(0), rint(0)]),
            Err(Error::AffineInput)
        );
    }

    #[test]
    fn dagger_true_for_eps_with_invariant_coefficient() {
        // exp(x3^2 D) conjugates x1-translations to themselves
        let space = VarSpace::plain(3).unwrap();
        let x3sq = Polynomial::var_x(space, 3).unwrap().pow(2);
        let factor = Factor::exp(&make_d(3).unwrap(), &x3sq).unwrap();
        let program = MapProgram::new(space, vec![factor]).unwrap();
        assert!(check_el_dagger(&program, &[rint(1), rint(0), rint(0)]).unwrap());
    }

    #[test]
    fn phi_class_certificates() {
        let rep = check_phi_classes(3, 1, &[-1, 1]).unwrap();
        assert!(rep.passed, "{:?}", rep.witness);
    }

    #[test]
    fn transport_and_roundtrip() {
        assert!(check_class_transport(5, 6).unwrap().passed);
        assert!(check_parse_roundtrip(5, 30).unwrap().passed);
        assert!(check_exp_additivity(3).unwrap().passed);
        assert!(check_inverses(3, 1).unwrap().passed);
    }

    #[test]
    fn quick_suite_is_deterministic_and_green() {
        let grid = SuiteGrid::quick_grid();
        let a = run_suite(7, &grid);
        let b = run_suite(7, &grid);
        assert!(a.iter().all(|r| r.passed), "failures: {:?}",
            a.iter().filter(|r| !r.passed).map(|r| (&r.name, &r.witness)).collect::<Vec<_>>());
        let verdicts_a: Vec<(String, bool)> =
            a.iter().map(|r| (r.text_line(false), r.passed)).collect();
        let verdicts_b: Vec<(String, bool)> =
            b.iter().map(|r| (r.text_line(false), r.passed)).collect();
        assert_eq!(verdicts_a, verdicts_b);
    }

    #[test]
    fn report_rendering() {
        let rep = check_theorem2(3).unwrap();
        let line = rep.text_line(false);
        assert_eq!(line, "PASS theorem2 n=3");
        let json = rep.to_json(false);
        assert_eq!(json["passed"], serde_json::json!(true));
        assert!(json.get("elapsed_ms").is_none());
        assert!(rep.to_json(true).get("elapsed_ms").is_some());
    }
}
