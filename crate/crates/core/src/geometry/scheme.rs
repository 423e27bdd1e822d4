//! Constructive factorisation of group elements into words over the
//! generating set `U = ∪_i {exp(t e_i) : |t| ≤ 1}`.
//!
//! For every `e_i` of weight `j ≥ 2` we solve exactly for
//! `e_i = Σ_U μ_U E_U` with `E_U = [e_{u_1}, [e_{u_2}, …]]` over weight-one
//! basis vectors and `j ≤ |U| ≤ k`. A nested group commutator of one-letter
//! factors realises `exp(a E_U)` up to terms of higher weight; the product of
//! those commutators differs from `exp(c e_i)` by `exp(err)` with
//! `err ∈ g_{j+1}`, which is expanded recursively through its second-kind
//! coordinates. Nilpotency ends the recursion.
//!
//! This yields exact rational words `W_i^±` for `exp(±e_i)` using only
//! weight-one letters. When the F-basis is graded, `δ_s` is an automorphism
//! fixing each weight-one direction up to the factor `s`, so
//! `exp(t e_i) = δ_s(exp(±e_i))` with `s = |t|^{1/w_i}` is the same word with
//! every parameter multiplied by `s`.
//!
//! Otherwise `δ_s` is not a homomorphism, and `g` is peeled one weight layer
//! at a time instead: the weight-`j` first-kind coordinates `r_i` of the
//! residual are realised together by balanced commutators, where every letter
//! carries the integer `s = ⌈|r_i|^{1/j}⌉` except the outermost, which
//! carries `r_i μ_U / s^{|U|-1}`. The residual is then recomputed exactly and
//! lies in `g_{j+1}`. All parameters stay rational and `O(s)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ball::Ball;
use crate::bch::{exp_of_word_exact, exp_of_word_in, Group, GroupElement, Letter, Param, Word};
use crate::error::{Error, Result};
use crate::filtration::AdaptedAlgebra;
use crate::linalg::solve;
use crate::scalar::{Rational, Scalar};

/// `e_i = Σ μ_U E_U` over words `U` in the weight-one indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub index: usize,
    pub terms: Vec<(Vec<usize>, Rational)>,
}

#[derive(Clone, Debug)]
pub struct CommutatorScheme {
    group: Group<Rational>,
    generators: Vec<usize>,
    combinations: Vec<Option<Combination>>,
    graded: bool,
    plus: Vec<Word>,
    minus: Vec<Word>,
}

/// Right-nested bracket `[e_{u_1}, [e_{u_2}, …, e_{u_p}]]`.
pub fn nested_basis_bracket(group: &Group<Rational>, word: &[usize]) -> Vec<Rational> {
    let alg = group.algebra();
    let (&last, rest) = word.split_last().expect("nonempty word");
    let mut acc = alg.basis_vector(last);
    for &u in rest.iter().rev() {
        acc = alg.ad_basis(u, &acc);
    }
    acc
}

/// `K(a, b) = a b a⁻¹ b⁻¹` nested along `word`, with parameter `a` on the
/// outermost letter and `1` on the others; its logarithm is
/// `a E_word` plus brackets of higher weight.
pub fn commutator_word(word: &[usize], a: &Rational) -> Word {
    commutator_word_scaled(word, a, &Rational::one())
}

/// As [`commutator_word`], with parameter `s` on the inner letters; the
/// leading term is `a s^{|word|-1} E_word`.
pub fn commutator_word_scaled(word: &[usize], a: &Rational, s: &Rational) -> Word {
    let letter = |i: usize, s: Rational| Letter {
        index: i,
        param: Param::Exact(s),
    };
    match word {
        [] => Word::default(),
        [u] => Word::new(vec![letter(*u, a.clone())]),
        [u, rest @ ..] => {
            let inner = commutator_word_scaled(rest, s, s);
            Word::new(vec![letter(*u, a.clone())])
                .concat(inner.clone())
                .concat(Word::new(vec![letter(*u, -a.clone())]))
                .concat(inner.inverse())
        }
    }
}

/// Every word over `generators` of each length in `lengths`, in order of
/// length, skipping words whose bracket vanishes trivially.
fn words(generators: &[usize], lengths: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in lengths {
        let mut cur = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::with_capacity(cur.len() * generators.len());
            for w in &cur {
                for &g in generators {
                    let mut v: Vec<usize> = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            cur = next;
        }
        out.extend(
            cur.into_iter()
                .filter(|w| len < 2 || w[len - 1] != w[len - 2]),
        );
    }
    out
}

/// The least positive integer `s` with `s^k ≥ |q|`.
fn integer_root_ceil(q: &Rational, k: u32) -> Rational {
    let n = q.abs().ceil().to_integer();
    let mut r = n.nth_root(k);
    if num_traits::Pow::pow(&r, k) < n {
        r += 1;
    }
    Rational::from_integer(r.max(BigInt::one()))
}

/// Whether every `[e_a, e_b]` lies in the span of weight `w_a + w_b`.
fn is_graded(group: &Group<Rational>) -> bool {
    let w = group.weights();
    let alg = group.algebra();
    (0..group.dim()).all(|a| {
        (0..group.dim()).all(|b| {
            alg.structure(a, b)
                .iter()
                .all(|(k, c)| c.is_zero() || w[*k] == w[a] + w[b])
        })
    })
}

fn rational_root(q: &Rational, k: u32) -> Option<Rational> {
    let root = |n: &BigInt| {
        let r = n.nth_root(k);
        (num_traits::Pow::pow(&r, k) == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

impl CommutatorScheme {
    pub fn build(adapted: &AdaptedAlgebra<Rational>) -> Result<Self> {
        let group = Group::from_adapted(adapted);
        let weights = group.weights().to_vec();
        let m = group.dim();
        let k = group.class();
        let generators: Vec<usize> = (0..m).filter(|&i| weights[i] == 1).collect();
        let mut combinations = vec![None; m];
        for i in 0..m {
            let j = weights[i] as usize;
            if j < 2 {
                continue;
            }
            let cands: Vec<(Vec<usize>, Vec<Rational>)> = words(&generators, j..=k)
                .into_iter()
                .map(|w| {
                    let v = nested_basis_bracket(&group, &w);
                    (w, v)
                })
                .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
                .collect();
            let columns: Vec<Vec<Rational>> = cands.iter().map(|(_, v)| v.clone()).collect();
            let target = group.algebra().basis_vector(i);
            let mu = solve(&columns, &target).ok_or(Error::InfeasibleScheme { index: i + 1 })?;
            let terms = cands
                .into_iter()
                .zip(mu)
                .filter(|(_, c)| !c.is_zero())
                .map(|((w, _), c)| (w, c))
                .collect();
            combinations[i] = Some(Combination { index: i, terms });
        }
        let graded = is_graded(&group);
        let mut scheme = CommutatorScheme {
            group,
            generators,
            combinations,
            graded,
            plus: Vec::new(),
            minus: Vec::new(),
        };
        for i in 0..m {
            let p = scheme.expand(i, &Rational::one())?;
            let n = scheme.expand(i, &-Rational::one())?;
            scheme.plus.push(p);
            scheme.minus.push(n);
        }
        Ok(scheme)
    }

    pub fn group(&self) -> &Group<Rational> {
        &self.group
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `None` for weight-one indices.
    pub fn combination(&self, i: usize) -> Option<&Combination> {
        self.combinations[i].as_ref()
    }

    /// Whether there is nothing to expand (every weight is one).
    pub fn is_trivial(&self) -> bool {
        self.combinations.iter().all(Option::is_none)
    }

    /// The exact weight-one word for `exp(±e_i)`.
    pub fn template(&self, i: usize, negative: bool) -> &Word {
        if negative {
            &self.minus[i]
        } else {
            &self.plus[i]
        }
    }

    /// Whether the F-basis is graded, so that dilated templates are exact.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// An exact word over weight-one letters whose product is `exp(c e_i)`.
    pub fn expand(&self, i: usize, c: &Rational) -> Result<Word> {
        let m = self.group.dim();
        if c.is_zero() {
            return Ok(Word::default());
        }
        if self.combinations[i].is_none() {
            return Ok(Word::exact(&[(i, c.clone())]));
        }
        let mut word = self.commutators(i, c, &Rational::one());
        let p = exp_of_word_exact(&self.group, &word)?.expect("exact word");
        let mut target = vec![Rational::zero(); m];
        target[i] = c.clone();
        let err = self.residual(&p, &target, self.group.weights()[i])?;
        let bar = self.group.first_to_second(&GroupElement::new(err))?;
        for (q, t) in bar.coords.iter().enumerate() {
            if !t.is_zero() {
                word = word.concat(self.expand(q, t)?);
            }
        }
        Ok(word)
    }

    /// Nested commutators whose product is `exp(c e_i)` modulo `g_{w_i+1}`,
    /// with `s` on the inner letters.
    fn commutators(&self, i: usize, c: &Rational, s: &Rational) -> Word {
        let Some(comb) = &self.combinations[i] else {
            return Word::exact(&[(i, c.clone())]);
        };
        let mut word = Word::default();
        for (u, mu) in &comb.terms {
            let mut spread = Rational::one();
            for _ in 1..u.len() {
                spread *= s;
            }
            word = word.concat(commutator_word_scaled(u, &(c * mu / spread), s));
        }
        word
    }

    /// `log(exp(-p) exp(target))`, which must lie in `g_{j+1}`.
    fn residual(&self, p: &[Rational], target: &[Rational], j: u32) -> Result<Vec<Rational>> {
        let minus_p: Vec<Rational> = p.iter().map(|x| -x.clone()).collect();
        let err = self.group.bch(&minus_p, target);
        if let Some(q) = (0..err.len()).find(|&q| self.group.weights()[q] <= j && !err[q].is_zero())
        {
            return Err(Error::InfeasibleScheme { index: q + 1 });
        }
        Ok(err)
    }

    /// A word with product `g`, built layer by layer with balanced parameters.
    pub fn peel(&self, g: &[Rational]) -> Result<Word> {
        let w = self.group.weights();
        let mut word = Word::default();
        let mut residual = g.to_vec();
        for j in 1..=self.group.class() as u32 {
            let mut stage = Word::default();
            for i in (0..residual.len()).filter(|&i| w[i] == j && !residual[i].is_zero()) {
                let s = integer_root_ceil(&residual[i], j);
                stage = stage.concat(self.commutators(i, &residual[i], &s));
            }
            if stage.is_empty() {
                continue;
            }
            let p = exp_of_word_exact(&self.group, &stage)?.expect("exact word");
            residual = self.residual(&p, &residual, j)?;
            word = word.concat(stage);
        }
        Ok(word)
    }

    /// `exp(t e_i)` as the dilated template, before unit splitting.
    fn scaled_template(&self, i: usize, t: &Rational, prec: u32) -> Word {
        let w = self.group.weights()[i];
        let template = self.template(i, t.is_negative());
        let s = rational_root(&t.abs(), w);
        let letters = template
            .letters
            .iter()
            .map(|l| {
                let Param::Exact(a) = &l.param else {
                    unreachable!("templates are exact")
                };
                let param = match &s {
                    Some(s) => Param::Exact(s * a),
                    None => Param::Real(Ball::from_rational(&t.abs(), prec).root(w).scale(a)),
                };
                Letter {
                    index: l.index,
                    param,
                }
            })
            .collect();
        Word::new(letters)
    }
}

/// `{"length", "residual_radius", "precision_bits"}`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub length: usize,
    /// Upper bound on `max_i |t_i(word) − t_i(g)|`; `"0"` when exact.
    pub residual_radius: String,
    pub precision_bits: u32,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub word: Word,
    pub certificate: Certificate,
    /// The word has rational parameters and reproduces `g` exactly.
    pub exact: bool,
    /// Upper bound on the residual.
    pub residual: f64,
}

/// Writes `g` as a word of unit-bounded letters and certifies the product.
pub fn word_factorize(
    scheme: &CommutatorScheme,
    g: &GroupElement<Rational>,
    prec: u32,
) -> Result<Factorization> {
    if prec < 64 {
        return Err(Error::PrecisionTooLow(prec));
    }
    let group = scheme.group();
    let word = if scheme.graded {
        let bar = group.first_to_second(g)?;
        let mut word = Word::default();
        for (i, t) in bar.coords.iter().enumerate() {
            if !t.is_zero() {
                word = word.concat(scheme.scaled_template(i, t, prec));
            }
        }
        word
    } else {
        scheme.peel(&g.coords)?
    };
    let word = word.split_unit();
    if let Some(product) = exp_of_word_exact(group, &word)? {
        if product != g.coords {
            return Err(Error::InfeasibleScheme { index: 0 });
        }
        return Ok(Factorization {
            certificate: Certificate {
                length: word.len(),
                residual_radius: "0".into(),
                precision_bits: prec,
            },
            word,
            exact: true,
            residual: 0.0,
        });
    }
    let balls = group.to_balls(prec);
    let product = exp_of_word_in(&balls, &word, prec)?;
    let mut residual = Ball::exact_zero(prec);
    for (p, t) in product.iter().zip(&g.coords) {
        let diff = (p.clone() - Ball::from_rational(t, prec)).abs();
        residual = residual.max(&diff);
    }
    let bound = Ball::from_endpoints(residual.hi().clone(), residual.hi().clone());
    Ok(Factorization {
        certificate: Certificate {
            length: word.len(),
            residual_radius: bound.mid_string(6),
            precision_bits: prec,
        },
        word,
        exact: false,
        residual: residual.hi_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::scalar::{q, qi};

    fn scheme(name: &str) -> CommutatorScheme {
        let alg = bundled::by_name(name).unwrap();
        CommutatorScheme::build(&AdaptedAlgebra::from_lower_central_series(&alg).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_template_is_the_commutator() {
        let s = scheme("heisenberg3");
        let c = s.combination(2).unwrap();
        assert_eq!(c.terms, vec![(vec![0, 1], qi(1))]);
        assert_eq!(
            s.template(2, false).to_json(),
            r#"[[1,"1"],[2,"1"],[1,"-1"],[2,"-1"]]"#
        );
    }

    #[test]
    fn abelian_scheme_is_trivial() {
        assert!(scheme("abelian").is_trivial());
    }

    #[test]
    fn favre_templates_are_exact() {
        let s = scheme("favre7");
        let g = s.group();
        for i in 0..7 {
            for neg in [false, true] {
                let p = exp_of_word_exact(g, s.template(i, neg)).unwrap().unwrap();
                let mut t = vec![qi(0); 7];
                t[i] = if neg { qi(-1) } else { qi(1) };
                assert_eq!(p, t, "e{}", i + 1);
                assert!(s
                    .template(i, neg)
                    .letters
                    .iter()
                    .all(|l| g.weights()[l.index] == 1));
            }
        }
    }

    #[test]
    fn heisenberg_exp_4e3_has_length_eight() {
        let s = scheme("heisenberg3");
        let f = word_factorize(&s, &GroupElement::new(vec![qi(0), qi(0), qi(4)]), 128).unwrap();
        assert_eq!(f.certificate.length, 8);
        assert!(f.exact);
        assert_eq!(f.certificate.residual_radius, "0");
    }

    #[test]
    fn single_letter_and_irrational_paths() {
        let s = scheme("heisenberg3");
        let f = word_factorize(&s, &GroupElement::new(vec![q(1, 2), qi(0), qi(0)]), 128).unwrap();
        assert_eq!(f.certificate.length, 1);
        let f = word_factorize(&s, &GroupElement::new(vec![q(1, 3), qi(-2), qi(3)]), 256).unwrap();
        assert!(!f.exact);
        assert!(f.residual < 1e-40, "{}", f.residual);
        assert!(f.word.is_unit_bounded());
    }

    #[test]
    fn favre_is_not_graded_and_factors_exactly() {
        let s = scheme("favre7");
        assert!(!s.is_graded());
        assert!(scheme("heisenberg3").is_graded());
        let g = GroupElement::new((1..=7).map(|k| q(k * 7 - 3, 5)).collect());
        let f = word_factorize(&s, &g, 256).unwrap();
        assert!(f.exact);
        assert!(f.word.is_unit_bounded());
    }

    #[test]
    fn roots_of_rationals() {
        assert_eq!(rational_root(&q(16, 81), 4), Some(q(2, 3)));
        assert_eq!(rational_root(&qi(2), 2), None);
    }
}
