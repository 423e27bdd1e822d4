//! Baker–Campbell–Hausdorff group law on the simply connected group.
//!
//! `log(exp X · exp Y)` is evaluated with Dynkin's formula. The coefficient
//! of every two-letter word `W` (letters `X`, `Y`) is precomputed once per
//! nilpotency class by summing over the ways to cut `W` into blocks
//! `X^p Y^q`, and the right-nested brackets `[W_1, [W_2, …, W_n]]` are
//! evaluated with a suffix memo. Words longer than the class vanish.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::filtration::AdaptedAlgebra;
use crate::scalar::{parse_rational, rational_text, ExactScalar, Rational, Scalar};

/// A word over `{X, Y}` packed into bits: letter `p` (from the left) is `Y`
/// iff bit `p` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XyWord {
    len: u8,
    bits: u32,
}

impl XyWord {
    pub fn new(letters: &[bool]) -> Self {
        assert!(letters.len() <= 31, "word too long");
        let bits = letters
            .iter()
            .enumerate()
            .fold(0u32, |acc, (p, &y)| acc | ((y as u32) << p));
        XyWord {
            len: letters.len() as u8,
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `true` for `Y`.
    pub fn letter(&self, p: usize) -> bool {
        (self.bits >> p) & 1 == 1
    }

    pub fn letters(&self) -> Vec<bool> {
        (0..self.len()).map(|p| self.letter(p)).collect()
    }

    pub fn count_x(&self) -> usize {
        self.len() - self.bits.count_ones() as usize
    }

    fn tail(&self) -> XyWord {
        XyWord {
            len: self.len - 1,
            bits: self.bits >> 1,
        }
    }
}

/// Dynkin coefficients of every word up to a given length.
#[derive(Clone, Debug)]
pub struct BchTable {
    class: usize,
    terms: Vec<(XyWord, Rational)>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Whether `letters` is of the form `X^p Y^q`.
fn is_block(letters: &[bool]) -> bool {
    letters.windows(2).all(|w| !(w[0] && !w[1]))
}

/// Σ over cuts of `w` into `n` blocks `X^{p_i} Y^{q_i}` of
/// `(-1)^{n-1} / (n · |w| · Π p_i! q_i!)`.
pub fn dynkin_coefficient(w: &XyWord) -> Rational {
    let letters = w.letters();
    let len = letters.len();
    if len == 0 {
        return Rational::zero();
    }
    // ways[pos][n]: sum over cuts of letters[..pos] into n blocks of Π 1/(p! q!)
    let mut ways = vec![vec![Rational::zero(); len + 1]; len + 1];
    ways[0][0] = Rational::one();
    for start in 0..len {
        for end in start + 1..=len {
            let block = &letters[start..end];
            if !is_block(block) {
                break;
            }
            let ys = block.iter().filter(|&&y| y).count();
            let weight = Rational::new(BigInt::one(), factorial(block.len() - ys) * factorial(ys));
            for n in 0..len {
                if !ways[start][n].is_zero() {
                    let add = &ways[start][n] * &weight;
                    ways[end][n + 1] += add;
                }
            }
        }
    }
    let mut total = Rational::zero();
    for (n, w) in ways[len].iter().enumerate().skip(1) {
        if w.is_zero() {
            continue;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        total += w * Rational::new(BigInt::from(sign), BigInt::from(n * len));
    }
    total
}

impl BchTable {
    /// All words of length `1..=class` with nonzero coefficient whose
    /// right-nested bracket is not identically zero.
    pub fn new(class: usize) -> Self {
        assert!(
            (1..=24).contains(&class),
            "unsupported nilpotency class {class}"
        );
        let mut terms = Vec::new();
        for len in 1..=class {
            for bits in 0u32..(1 << len) {
                let w = XyWord {
                    len: len as u8,
                    bits,
                };
                // [.., [a, a]] = 0
                if len >= 2 && w.letter(len - 1) == w.letter(len - 2) {
                    continue;
                }
                let c = dynkin_coefficient(&w);
                if !c.is_zero() {
                    terms.push((w, c));
                }
            }
        }
        BchTable { class, terms }
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn terms(&self) -> &[(XyWord, Rational)] {
        &self.terms
    }

    /// `log(exp X · exp Y)` in the algebra.
    pub fn bch<S: Scalar>(&self, alg: &LieAlgebra<S>, x: &[S], y: &[S]) -> Vec<S> {
        if x.iter().all(Zero::is_zero) {
            return y.to_vec();
        }
        if y.iter().all(Zero::is_zero) {
            return x.to_vec();
        }
        let mut memo: HashMap<XyWord, Option<Vec<S>>> = HashMap::new();
        let mut out = vec![S::zero(); alg.dim()];
        for (w, c) in &self.terms {
            if let Some(v) = nested(alg, x, y, *w, &mut memo) {
                for (o, vi) in out.iter_mut().zip(v) {
                    if !vi.is_zero() {
                        *o = o.clone() + vi.scale(c);
                    }
                }
            }
        }
        out
    }
}

/// Right-nested bracket of the word with `X ↦ x`, `Y ↦ y`; `None` when zero.
fn nested<S: Scalar>(
    alg: &LieAlgebra<S>,
    x: &[S],
    y: &[S],
    w: XyWord,
    memo: &mut HashMap<XyWord, Option<Vec<S>>>,
) -> Option<Vec<S>> {
    if let Some(v) = memo.get(&w) {
        return v.clone();
    }
    let head = if w.letter(0) { y } else { x };
    let value = if w.len() == 1 {
        Some(head.to_vec())
    } else {
        nested(alg, x, y, w.tail(), memo).and_then(|inner| {
            let v = alg.bracket(head, &inner);
            (!v.iter().all(Zero::is_zero)).then_some(v)
        })
    };
    memo.insert(w, value.clone());
    value
}

/// First-kind coordinates: `g = exp(Σ t_i e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement<S> {
    pub coords: Vec<S>,
}

/// Second-kind coordinates: `g = exp(t̄_1 e_1) ⋯ exp(t̄_m e_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SecondKindCoords<S> {
    pub coords: Vec<S>,
}

impl<S> GroupElement<S> {
    pub fn new(coords: Vec<S>) -> Self {
        GroupElement { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The simply connected group of a nilpotent algebra, in F-basis coordinates.
#[derive(Clone, Debug)]
pub struct Group<S> {
    algebra: LieAlgebra<S>,
    weights: Vec<u32>,
    table: Arc<BchTable>,
}

impl<S: ExactScalar> Group<S> {
    pub fn from_adapted(adapted: &AdaptedAlgebra<S>) -> Self {
        Group::new(
            adapted.algebra().clone(),
            adapted.weights().to_vec(),
            adapted.class(),
        )
    }
}

impl<S: Scalar> Group<S> {
    /// `weights` must belong to an F-basis of `algebra` and `class` must be at
    /// least its nilpotency class.
    pub fn new(algebra: LieAlgebra<S>, weights: Vec<u32>, class: usize) -> Self {
        assert_eq!(algebra.dim(), weights.len(), "one weight per basis vector");
        Group {
            algebra,
            weights,
            table: Arc::new(BchTable::new(class.max(1))),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn class(&self) -> usize {
        self.table.class()
    }

    pub fn table(&self) -> &BchTable {
        &self.table
    }

    /// The same group over another scalar type.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Group<T> {
        Group {
            algebra: self.algebra.map_scalars(f),
            weights: self.weights.clone(),
            table: Arc::clone(&self.table),
        }
    }

    pub fn bch(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.table.bch(&self.algebra, x, y)
    }

    pub fn identity(&self) -> GroupElement<S> {
        GroupElement::new(vec![S::zero(); self.dim()])
    }

    fn check(&self, g: &GroupElement<S>) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, g: &GroupElement<S>, h: &GroupElement<S>) -> Result<GroupElement<S>> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement::new(self.bch(&g.coords, &h.coords)))
    }

    pub fn inv(&self, g: &GroupElement<S>) -> Result<GroupElement<S>> {
        self.check(g)?;
        Ok(GroupElement::new(
            g.coords.iter().map(|t| -t.clone()).collect(),
        ))
    }

    /// `exp(s e_i)`.
    pub fn one_parameter(&self, i: usize, s: S) -> GroupElement<S> {
        let mut t = vec![S::zero(); self.dim()];
        t[i] = s;
        GroupElement::new(t)
    }

    /// Peels `exp(t_i e_i)` off the left one index at a time:
    /// `(-t_i e_i) * (Σ_{s≥i} t_s e_s)` is supported on `e_{i+1}, …, e_m`.
    pub fn first_to_second(&self, g: &GroupElement<S>) -> Result<SecondKindCoords<S>> {
        self.check(g)?;
        let m = self.dim();
        let mut rest = g.coords.clone();
        let mut bar = Vec::with_capacity(m);
        for i in 0..m {
            let ti = rest[i].clone();
            bar.push(ti.clone());
            if ti.is_zero() {
                continue;
            }
            let mut peel = vec![S::zero(); m];
            peel[i] = -ti;
            rest = self.bch(&peel, &rest);
            // The e_i component cancels exactly; pin it for inexact scalars.
            rest[i] = S::zero();
        }
        Ok(SecondKindCoords { coords: bar })
    }

    pub fn second_to_first(&self, bar: &SecondKindCoords<S>) -> Result<GroupElement<S>> {
        if bar.coords.len() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = vec![S::zero(); self.dim()];
        for i in (0..self.dim()).rev() {
            if bar.coords[i].is_zero() {
                continue;
            }
            let mut f = vec![S::zero(); self.dim()];
            f[i] = bar.coords[i].clone();
            acc = self.bch(&f, &acc);
        }
        Ok(GroupElement::new(acc))
    }
}

impl Group<Rational> {
    /// The group over certified intervals at the given precision.
    pub fn to_balls(&self, prec: u32) -> Group<Ball> {
        self.map_scalars(|c| Ball::from_rational(c, prec))
    }
}

/// A word parameter: exact when possible, otherwise a certified interval.
#[derive(Clone, Debug)]
pub enum Param {
    Exact(Rational),
    Real(Ball),
}

impl Param {
    pub fn to_ball(&self, prec: u32) -> Ball {
        match self {
            Param::Exact(q) => Ball::from_rational(q, prec),
            Param::Real(b) => b.with_precision(prec.max(b.precision())),
        }
    }

    /// Upper bound on `|s|`.
    pub fn magnitude_upper(&self) -> f64 {
        match self {
            Param::Exact(q) => q.abs().to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-15),
            Param::Real(b) => b.abs().hi_f64(),
        }
    }

    fn divide(&self, n: u64) -> Param {
        match self {
            Param::Exact(q) => Param::Exact(q / Rational::from_integer(BigInt::from(n))),
            Param::Real(b) => Param::Real(b.scale(&Rational::new(BigInt::one(), BigInt::from(n)))),
        }
    }

    fn ceil_abs(&self) -> u64 {
        match self {
            Param::Exact(q) => q.abs().ceil().to_integer().to_u64().unwrap_or(u64::MAX),
            Param::Real(b) => b.abs().hi_f64().ceil() as u64,
        }
    }
}

/// One factor `exp(s · e_index)` of a word.
#[derive(Clone, Debug)]
pub struct Letter {
    pub index: usize,
    pub param: Param,
}

/// An ordered product of one-parameter factors.
#[derive(Clone, Debug, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn exact(letters: &[(usize, Rational)]) -> Self {
        Word {
            letters: letters
                .iter()
                .map(|(i, s)| Letter {
                    index: *i,
                    param: Param::Exact(s.clone()),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.letters
            .iter()
            .all(|l| matches!(l.param, Param::Exact(_)))
    }

    /// Whether every parameter satisfies `|s| ≤ 1`.
    pub fn is_unit_bounded(&self) -> bool {
        self.letters.iter().all(|l| match &l.param {
            Param::Exact(q) => q.abs() <= Rational::one(),
            Param::Real(b) => b.abs().hi_f64() <= 1.0,
        })
    }

    /// Replaces each letter with `|s| > 1` by `⌈|s|⌉` equal letters of
    /// parameter `s / ⌈|s|⌉`; the product is unchanged.
    pub fn split_unit(&self) -> Word {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let n = l.param.ceil_abs().max(1);
            if n == 1 {
                out.push(l.clone());
                continue;
            }
            let piece = l.param.divide(n);
            for _ in 0..n {
                out.push(Letter {
                    index: l.index,
                    param: piece.clone(),
                });
            }
        }
        Word { letters: out }
    }

    /// Length after [`Word::split_unit`], without materialising it.
    pub fn split_len(&self) -> u64 {
        self.letters.iter().map(|l| l.param.ceil_abs().max(1)).sum()
    }

    pub fn concat(mut self, other: Word) -> Word {
        self.letters.extend(other.letters);
        self
    }

    /// The inverse word: reversed with negated parameters.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    index: l.index,
                    param: match &l.param {
                        Param::Exact(q) => Param::Exact(-q.clone()),
                        Param::Real(b) => Param::Real(-b.clone()),
                    },
                })
                .collect(),
        }
    }

    /// Serialises as `[[i, "s"], …]` with one-based `i`. Interval parameters
    /// are written as their midpoint.
    pub fn to_json(&self) -> String {
        let items: Vec<(usize, String)> = self
            .letters
            .iter()
            .map(|l| {
                let s = match &l.param {
                    Param::Exact(q) => rational_text(q),
                    Param::Real(b) => b.mid_string(40),
                };
                (l.index + 1, s)
            })
            .collect();
        serde_json::to_string(&items).expect("word serializes")
    }

    pub fn from_json(text: &str) -> Result<Word> {
        let items: Vec<(usize, WordParamText)> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut letters = Vec::with_capacity(items.len());
        for (i, s) in items {
            if i == 0 {
                return Err(Error::Parse("letter indices are one-based".into()));
            }
            letters.push(Letter {
                index: i - 1,
                param: Param::Exact(s.parse()?),
            });
        }
        Ok(Word { letters })
    }
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum WordParamText {
    Text(String),
    Int(i64),
}

impl WordParamText {
    fn parse(&self) -> Result<Rational> {
        match self {
            WordParamText::Text(s) => parse_rational(s),
            WordParamText::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
        }
    }
}

/// Maximal runs of consecutive letters on the same generator. A run
/// multiplies out to a single factor, since `exp(a e_i) exp(b e_i) =
/// exp((a + b) e_i)`.
fn runs(word: &Word, dim: usize) -> Result<Vec<(usize, Vec<&Param>)>> {
    let mut out: Vec<(usize, Vec<&Param>)> = Vec::new();
    for l in &word.letters {
        if l.index >= dim {
            return Err(Error::IndexOutOfRange {
                index: l.index + 1,
                dim,
            });
        }
        match out.last_mut() {
            Some((i, run)) if *i == l.index => run.push(&l.param),
            _ => out.push((l.index, vec![&l.param])),
        }
    }
    Ok(out)
}

/// Exact product of a word whose parameters are all rational.
pub fn exp_of_word_exact(group: &Group<Rational>, word: &Word) -> Result<Option<Vec<Rational>>> {
    let m = group.dim();
    let mut acc = vec![Rational::zero(); m];
    for (index, run) in runs(word, m)? {
        let mut f = vec![Rational::zero(); m];
        for p in run {
            let Param::Exact(s) = p else {
                return Ok(None);
            };
            f[index] += s;
        }
        acc = group.bch(&acc, &f);
    }
    Ok(Some(acc))
}

/// Left-to-right product of the letters in certified interval arithmetic.
///
/// Exact words are multiplied in rationals and only rounded at the end.
/// Fails with [`Error::PrecisionExhausted`] if some coordinate comes back
/// with a radius above `2^{-prec/2} · max(1, |t|)`.
pub fn exp_of_word(group: &Group<Rational>, word: &Word, prec: u32) -> Result<Vec<Ball>> {
    if prec < 64 {
        return Err(Error::PrecisionTooLow(prec));
    }
    if let Some(exact) = exp_of_word_exact(group, word)? {
        return Ok(exact.iter().map(|q| Ball::from_rational(q, prec)).collect());
    }
    let balls = group.to_balls(prec);
    exp_of_word_in(&balls, word, prec)
}

/// [`exp_of_word`] against a group already converted to intervals.
pub fn exp_of_word_in(group: &Group<Ball>, word: &Word, prec: u32) -> Result<Vec<Ball>> {
    let m = group.dim();
    let mut acc = vec![Ball::exact_zero(prec); m];
    for (index, run) in runs(word, m)? {
        let mut f = vec![Ball::exact_zero(prec); m];
        for p in run {
            f[index] = f[index].clone() + p.to_ball(prec);
        }
        acc = group.bch(&acc, &f);
    }
    for t in &acc {
        let mag = t.mag().to_f64().max(1.0);
        let rad = t.radius_f64();
        if !t.is_finite() || rad > mag * 2f64.powi(-(prec as i32) / 2) {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                radius: format!("{rad:e}"),
            });
        }
    }
    Ok(acc)
}

/// Coordinates as rational strings.
pub fn coords_to_json<S: ExactScalar>(coords: &[S]) -> String {
    let items: Vec<String> = coords.iter().map(ExactScalar::to_text).collect();
    serde_json::to_string(&items).expect("coordinates serialize")
}

pub fn coords_from_json<S: ExactScalar>(text: &str) -> Result<Vec<S>> {
    let items: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    items.iter().map(|s| S::parse_str(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::scalar::{q, qi};

    fn group(alg: &LieAlgebra<Rational>) -> Group<Rational> {
        Group::from_adapted(&AdaptedAlgebra::from_lower_central_series(alg).unwrap())
    }

    fn v(xs: &[Rational]) -> Vec<Rational> {
        xs.to_vec()
    }

    #[test]
    fn low_order_dynkin_coefficients() {
        // log(e^X e^Y) = X + Y + 1/2 [X,Y] + 1/12 [X,[X,Y]] - 1/12 [Y,[X,Y]] + …
        let t = BchTable::new(3);
        let coeff = |letters: &[bool]| {
            t.terms()
                .iter()
                .find(|(w, _)| *w == XyWord::new(letters))
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero)
        };
        assert_eq!(coeff(&[false]), qi(1));
        assert_eq!(coeff(&[true]), qi(1));
        // [X,Y] and [Y,X] combine to 1/2 [X,Y].
        assert_eq!(coeff(&[false, true]) - coeff(&[true, false]), q(1, 2));
    }

    #[test]
    fn heisenberg_bch() {
        let g = group(&bundled::heisenberg3());
        let x = v(&[qi(1), qi(0), qi(0)]);
        let y = v(&[qi(0), qi(1), qi(0)]);
        assert_eq!(g.bch(&x, &y), v(&[qi(1), qi(1), q(1, 2)]));
        let minus: Vec<Rational> = x.iter().map(|c| -c.clone()).collect();
        assert!(g.bch(&x, &minus).iter().all(Zero::is_zero));
        assert_eq!(g.bch(&x, &[qi(0), qi(0), qi(0)]), x);
    }

    #[test]
    fn heisenberg_second_kind() {
        let g = group(&bundled::heisenberg3());
        let el = GroupElement::new(v(&[qi(1), qi(1), qi(1)]));
        let bar = g.first_to_second(&el).unwrap();
        assert_eq!(bar.coords, v(&[qi(1), qi(1), q(1, 2)]));
        assert_eq!(g.second_to_first(&bar).unwrap(), el);
    }

    #[test]
    fn abelian_second_kind_is_identity() {
        let g = group(&bundled::abelian(3));
        let el = GroupElement::new(v(&[q(1, 3), qi(-2), q(7, 5)]));
        assert_eq!(g.first_to_second(&el).unwrap().coords, el.coords);
    }

    #[test]
    fn group_identity_and_inverse() {
        let g = group(&bundled::favre7());
        let el = GroupElement::new((1..=7).map(|k| q(k, 3)).collect());
        assert_eq!(g.mul(&el, &g.identity()).unwrap(), el);
        let inv = g.inv(&el).unwrap();
        assert_eq!(g.mul(&el, &inv).unwrap(), g.identity());
        assert!(matches!(
            g.mul(&el, &GroupElement::new(vec![qi(0); 3])),
            Err(Error::AlgebraMismatch)
        ));
    }

    #[test]
    fn commutator_word_gives_central_element() {
        let g = group(&bundled::heisenberg3());
        let word = Word::exact(&[(0, qi(1)), (1, qi(1)), (0, qi(-1)), (1, qi(-1))]);
        let exact = exp_of_word_exact(&g, &word).unwrap().unwrap();
        assert_eq!(exact, v(&[qi(0), qi(0), qi(1)]));
        let balls = exp_of_word(&g, &word, 128).unwrap();
        assert!(balls[2].contains_rational(&qi(1)));
        assert!(balls.iter().all(|b| b.radius_f64() < 1e-40));
    }

    #[test]
    fn interval_word_matches_exact_word() {
        let g = group(&bundled::favre7());
        let exact = Word::exact(&[(0, q(1, 3)), (1, q(-2, 7)), (0, q(5, 2)), (1, qi(1))]);
        let inexact = Word::new(
            exact
                .letters
                .iter()
                .map(|l| Letter {
                    index: l.index,
                    param: Param::Real(l.param.to_ball(256)),
                })
                .collect(),
        );
        let reference = exp_of_word_exact(&g, &exact).unwrap().unwrap();
        let balls = exp_of_word(&g, &inexact, 256).unwrap();
        for (b, t) in balls.iter().zip(&reference) {
            assert!(b.contains_rational(t));
            assert!(b.radius_f64() < 1e-60);
        }
    }

    #[test]
    fn word_edge_cases() {
        let g = group(&bundled::heisenberg3());
        let empty = exp_of_word(&g, &Word::default(), 64).unwrap();
        assert!(empty.iter().all(Ball::is_exact_zero));
        let single = exp_of_word_exact(&g, &Word::exact(&[(2, q(-3, 4))]))
            .unwrap()
            .unwrap();
        assert_eq!(single, v(&[qi(0), qi(0), q(-3, 4)]));
        assert!(matches!(
            exp_of_word(&g, &Word::default(), 32),
            Err(Error::PrecisionTooLow(32))
        ));
    }

    #[test]
    fn splitting_preserves_product() {
        let g = group(&bundled::heisenberg3());
        let w = Word::exact(&[(0, q(5, 2)), (1, qi(-3)), (2, q(1, 2))]);
        let split = w.split_unit();
        assert_eq!(split.len(), 3 + 3 + 1);
        assert_eq!(w.split_len(), 7);
        assert!(split.is_unit_bounded());
        assert_eq!(
            exp_of_word_exact(&g, &w).unwrap(),
            exp_of_word_exact(&g, &split).unwrap()
        );
    }

    #[test]
    fn word_json_round_trip() {
        let w = Word::from_json(r#"[[1, "1"], [2, "0.5"], [1, "-1/3"], [3, 2]]"#).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.letters[1].index, 1);
        let back = Word::from_json(&w.to_json()).unwrap();
        assert_eq!(back.to_json(), w.to_json());
        let coords: Vec<Rational> = coords_from_json(r#"["1/2", "-3", "0"]"#).unwrap();
        assert_eq!(coords, v(&[q(1, 2), qi(-3), qi(0)]));
        assert_eq!(coords_to_json(&coords), r#"["1/2","-3","0"]"#);
    }
}
