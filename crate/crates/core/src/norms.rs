//! Weight sequences and the prenorms `‖x‖_r = Σ_α |c_α| α! M_α r^{w(α)}` on
//! `U(g)`, with the entireness conditions and the growth function
//! `Φ = Σ_α M_α σ^{w(α)}`.
//!
//! Every sequence used here depends on `α` only through `w(α)`, so series
//! over multi-indices are regrouped by weight value using exact counts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::filtration::{weight_of, MultiIndex};
use crate::pbw::{PbwMultiplier, UElement};
use crate::report::ValidationReport;
use crate::scalar::{ExactScalar, Rational};

/// `M_α` as a function of `w(α)`. `M_0 = 1` in every variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSequence {
    /// `M_α = w(α)^{-w(α)}`.
    M1,
    /// `M_α = q` for `α ≠ 0`.
    Constant(Rational),
    /// `M_α = table[w(α)]`; weights past the table are undefined.
    ByWeight(Vec<Rational>),
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `w^w` with `0^0 = 1`.
fn self_power(w: u32) -> BigUint {
    BigUint::from(w).pow(w)
}

impl WeightSequence {
    pub fn by_weight(table: Vec<Rational>) -> Result<Self> {
        if table.first() != Some(&Rational::one()) {
            return Err(Error::InvalidArgument(
                "a weight table must start with M_0 = 1".into(),
            ));
        }
        if table.iter().any(|m| !m.is_positive()) {
            return Err(Error::InvalidArgument(
                "weight table entries must be positive".into(),
            ));
        }
        Ok(WeightSequence::ByWeight(table))
    }

    pub fn constant(q: Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::InvalidArgument("M must be positive".into()));
        }
        Ok(WeightSequence::Constant(q))
    }

    pub fn label(&self) -> String {
        match self {
            WeightSequence::M1 => "M1".into(),
            WeightSequence::Constant(q) => format!("constant({q})"),
            WeightSequence::ByWeight(t) => format!("table({} entries)", t.len()),
        }
    }

    pub fn m(&self, w: u32) -> Result<Rational> {
        if w == 0 {
            return Ok(Rational::one());
        }
        match self {
            WeightSequence::M1 => Ok(Rational::new(BigInt::one(), self_power(w).into())),
            WeightSequence::Constant(q) => Ok(q.clone()),
            WeightSequence::ByWeight(t) => {
                t.get(w as usize).cloned().ok_or(Error::WeightOutOfTable(w))
            }
        }
    }

    pub fn m_ball(&self, w: u32, prec: u32) -> Result<Ball> {
        Ok(Ball::from_rational(&self.m(w)?, prec))
    }

    /// A rational `ρ` with `M_{v+1} ≤ ρ M_v` for every `v ≥ w`, if one is
    /// known without inspecting infinitely many values.
    pub fn ratio_bound(&self, w: u32) -> Option<Rational> {
        match self {
            // M_{v+1}/M_v = (1/(v+1)) (v/(v+1))^v ≤ 1/(v+1) ≤ 1/(w+1)
            WeightSequence::M1 => Some(Rational::new(BigInt::one(), big(w as u64 + 1))),
            WeightSequence::Constant(q) => Some(if w == 0 {
                q.clone().max(Rational::one())
            } else {
                Rational::one()
            }),
            WeightSequence::ByWeight(_) => None,
        }
    }
}

/// `‖x‖_r` with a certified enclosure.
pub fn prenorm<S: ExactScalar>(
    x: &UElement<S>,
    weights: &[u32],
    r: &Ball,
    seq: &WeightSequence,
    prec: u32,
) -> Result<Ball> {
    if !(r.lo_f64() > 0.0) {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let mut total = Ball::exact_zero(prec);
    for (alpha, c) in x.terms() {
        let w = weight_of(weights, alpha)?;
        let fact = Ball::from_rational(&Rational::from_integer(alpha.factorial().into()), prec);
        let term =
            Ball::modulus(c, prec) * fact * seq.m_ball(w, prec)? * r.with_precision(prec).powi(w);
        total = total + term;
    }
    Ok(total)
}

/// `‖x‖_r` in exact arithmetic, for real rational coefficients and `r`.
pub fn prenorm_exact(
    x: &UElement<Rational>,
    weights: &[u32],
    r: &Rational,
    seq: &WeightSequence,
) -> Result<Rational> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let mut total = Rational::zero();
    for (alpha, c) in x.terms() {
        let w = weight_of(weights, alpha)?;
        let fact = Rational::from_integer(alpha.factorial().into());
        total += c.abs() * fact * seq.m(w)? * Pow::pow(r, w);
    }
    Ok(total)
}

/// `‖e_i^n‖_r = n! (r/(n w_i))^{n w_i}` for the `M1` sequence.
pub fn power_norm_closed_form(w_i: u32, n: u32, r: &Ball, prec: u32) -> Ball {
    assert!(n >= 1 && w_i >= 1, "n and w_i are positive");
    let nw = n * w_i;
    let base = r.with_precision(prec) / Ball::from_i64(nw as i64, prec);
    Ball::factorial(n, prec) * base.powi(nw)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayRow {
    pub n: u32,
    pub norm: Ball,
    /// `‖e_i^n‖_r^{1/n} · n^{w_i − 1}`.
    pub normalized: Ball,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayProfile {
    pub index: usize,
    pub weight: u32,
    pub r: String,
    pub rows: Vec<DecayRow>,
    /// Upper endpoint of the largest normalized value for `n ≤ 10`.
    pub head_max: Ball,
    pub tail_max: Ball,
    /// Every `n > 10` value is certainly at most the `n ≤ 10` maximum.
    pub bounded: bool,
}

pub const DECAY_HEAD: u32 = 10;

/// The normalized decay sequence of `e_i^n` for `1 ≤ n ≤ n_max`, with the
/// powers formed in `U(g)` and normed with `M1`.
pub fn decay_profile<S: ExactScalar>(
    alg: &LieAlgebra<S>,
    weights: &[u32],
    i: usize,
    r: &Rational,
    n_max: u32,
    prec: u32,
) -> Result<DecayProfile> {
    if n_max < DECAY_HEAD {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least {DECAY_HEAD}"
        )));
    }
    if i >= alg.dim() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            dim: alg.dim(),
        });
    }
    let w = weights[i];
    let r_ball = Ball::from_rational(r, prec);
    let gen = UElement::<S>::generator(alg.dim(), i);
    let mut mul = PbwMultiplier::new(alg);
    let mut power = UElement::one(alg.dim());
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        power = mul.mul(&power, &gen)?;
        let norm = prenorm(&power, weights, &r_ball, &WeightSequence::M1, prec)?;
        let scale = Ball::from_i64(n as i64, prec).powi(w - 1);
        let normalized = norm.root(n) * scale;
        rows.push(DecayRow {
            n,
            norm,
            normalized,
        });
    }
    let fold = |rows: &[DecayRow]| {
        rows.iter()
            .map(|row| row.normalized.clone())
            .reduce(|a, b| a.max(&b))
            .expect("nonempty")
    };
    let head_max = fold(&rows[..DECAY_HEAD as usize]);
    let tail_max = if n_max > DECAY_HEAD {
        fold(&rows[DECAY_HEAD as usize..])
    } else {
        Ball::exact_zero(prec)
    };
    let bounded = tail_max.certainly_le(&head_max);
    Ok(DecayProfile {
        index: i,
        weight: w,
        r: r.to_string(),
        rows,
        head_max,
        tail_max,
        bounded,
    })
}

impl DecayProfile {
    /// Columns `n,r,norm,radius,normalized_decay`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,norm,radius,normalized_decay\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.n,
                self.r,
                row.norm.mid_string(30),
                row.norm.radius_string(),
                row.normalized.mid_string(30)
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

pub const MAX_AXIOM_BOUND: u32 = 60;

/// Checks `M_c ≤ M_a M_b` for all weight values `a ≤ b` with
/// `a + b ≤ c ≤ w_bound`. For `M1` this is the integer inequality
/// `a^a b^b ≤ c^c`.
pub fn weight_axiom_check(
    seq: &WeightSequence,
    w_bound: u32,
) -> Result<ValidationReport<AxiomViolation>> {
    if w_bound > MAX_AXIOM_BOUND {
        return Err(Error::InvalidArgument(format!(
            "w_bound must be at most {MAX_AXIOM_BOUND}"
        )));
    }
    let mut report = ValidationReport::new();
    match seq {
        WeightSequence::M1 => {
            let pw: Vec<BigUint> = (0..=w_bound).map(self_power).collect();
            for a in 0..=w_bound {
                for b in a..=w_bound - a {
                    let lhs = &pw[a as usize] * &pw[b as usize];
                    for c in a + b..=w_bound {
                        report.record((lhs > pw[c as usize]).then_some(AxiomViolation { a, b, c }));
                    }
                }
            }
        }
        _ => {
            let ms: Vec<Rational> = (0..=w_bound).map(|w| seq.m(w)).collect::<Result<_>>()?;
            for a in 0..=w_bound {
                for b in a..=w_bound - a {
                    let lhs = &ms[a as usize] * &ms[b as usize];
                    for c in a + b..=w_bound {
                        report.record((ms[c as usize] > lhs).then_some(AxiomViolation { a, b, c }));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `count[w] = #{α : w(α) = w}` for `0 ≤ w ≤ w_max`.
pub fn weight_counts(weights: &[u32], w_max: u32) -> Vec<BigUint> {
    let mut count = vec![BigUint::zero(); w_max as usize + 1];
    count[0] = BigUint::one();
    for &wi in weights {
        assert!(wi > 0, "weights are positive");
        for w in wi as usize..=w_max as usize {
            let add = count[w - wi as usize].clone();
            count[w] += add;
        }
    }
    count
}

/// `C(w + m, m)`, an upper bound for the number of multi-indices of weight
/// `w` when every `w_i ≥ 1`.
fn count_bound(w: u32, m: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 1..=m as u64 {
        acc = acc * BigUint::from(w as u64 + k) / BigUint::from(k);
    }
    acc
}

/// Bound on `U_{v+1}/U_v` for all `v ≥ w`, where `U_v = C(v+m, m) M_v r^v`.
fn tail_ratio(seq: &WeightSequence, w: u32, m: usize, r: &Rational) -> Option<Rational> {
    let rho = seq.ratio_bound(w)?;
    let growth = Rational::new(big(w as u64 + m as u64 + 1), big(w as u64 + 1));
    Some(growth * r * rho)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SeriesVerdict {
    /// `Σ_α M_α r^{w(α)}` lies in `[partial_sum, partial_sum + tail_bound]`.
    Convergent {
        certified_at: u32,
        partial_sum: Ball,
        tail_bound: Ball,
        value: Ball,
    },
    /// No certificate up to the weight bound; not evidence of divergence.
    Inconclusive {
        reached: u32,
        partial_sum: Ball,
        last_ratio: Option<String>,
    },
}

impl SeriesVerdict {
    pub fn is_convergent(&self) -> bool {
        matches!(self, SeriesVerdict::Convergent { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition1 {
    pub r: String,
    pub verdict: SeriesVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition2 {
    pub a: String,
    /// Largest `A^{a/b} M_b^{1/b} M_a^{-1/a}` over probed weight pairs.
    pub supremum: Ball,
    pub argmax: (u32, u32),
    /// `(bound, sup over pairs with a, b ≤ bound)` at doubling bounds.
    pub trend: Vec<(u32, f64)>,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntiretyReport {
    pub sequence: String,
    pub condition1: Vec<Condition1>,
    pub condition2: Vec<Condition2>,
}

impl EntiretyReport {
    pub fn all_convergent(&self) -> bool {
        self.condition1.iter().all(|c| c.verdict.is_convergent())
    }
}

/// Largest pair bound probed for the sup condition.
pub const CONDITION2_PAIRS: u32 = 64;

/// Evaluates `Σ_α M_α r^{w(α)}` by weight, certifying a geometric tail
/// once the term-ratio bound drops to `½`.
pub fn series_by_weight(
    seq: &WeightSequence,
    weights: &[u32],
    r: &Rational,
    w_bound: u32,
    prec: u32,
) -> Result<SeriesVerdict> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let m = weights.len();
    let counts = weight_counts(weights, w_bound + 1);
    let half = Rational::new(BigInt::one(), big(2));
    let mut sum = Rational::zero();
    let mut last_ratio = None;
    for w in 0..=w_bound {
        let mw = match seq.m(w) {
            Ok(v) => v,
            Err(Error::WeightOutOfTable(_)) => {
                return Ok(SeriesVerdict::Inconclusive {
                    reached: w.saturating_sub(1),
                    partial_sum: Ball::from_rational(&sum, prec),
                    last_ratio,
                })
            }
            Err(e) => return Err(e),
        };
        sum += Rational::from_integer(counts[w as usize].clone().into()) * mw * Pow::pow(r, w);
        let ratio = tail_ratio(seq, w, m, r);
        last_ratio = ratio.as_ref().map(|q| q.to_string());
        if ratio.is_some_and(|q| q <= half) {
            let next = w + 1;
            let u_next = Rational::from_integer(count_bound(next, m).into())
                * seq.m(next)?
                * Pow::pow(r, next);
            let tail = u_next * Rational::from_integer(big(2));
            let partial = Ball::from_rational(&sum, prec);
            let tail_ball = Ball::from_rational(&tail, prec);
            let value = partial.add_upper_slack(&tail_ball);
            return Ok(SeriesVerdict::Convergent {
                certified_at: w,
                partial_sum: partial,
                tail_bound: tail_ball,
                value,
            });
        }
    }
    Ok(SeriesVerdict::Inconclusive {
        reached: w_bound,
        partial_sum: Ball::from_rational(&sum, prec),
        last_ratio,
    })
}

fn condition2(seq: &WeightSequence, a_val: &Rational, bound: u32, prec: u32) -> Result<Condition2> {
    if !a_val.is_positive() {
        return Err(Error::InvalidArgument("A must be positive".into()));
    }
    let ln_a = Ball::from_rational(a_val, prec).ln();
    // M_w^{1/w} and M_w^{-1/w}
    let mut root = Vec::with_capacity(bound as usize + 1);
    root.push(Ball::from_i64(1, prec));
    for w in 1..=bound {
        root.push(seq.m_ball(w, prec)?.root(w));
    }
    let one = Ball::from_i64(1, prec);
    let mut best: Option<(Ball, (u32, u32))> = None;
    let mut trend = Vec::new();
    let mut checkpoint = 2;
    for top in 1..=bound {
        // new pairs with max(a, b) = top
        for other in 1..=top {
            for (a, b) in [(top, other), (other, top)] {
                let x = Ball::from_rational(&Rational::new(big(a as u64), big(b as u64)), prec);
                let v = (ln_a.clone() * x).exp()
                    * root[b as usize].clone()
                    * (one.clone() / root[a as usize].clone());
                let better = match &best {
                    None => true,
                    Some((cur, _)) => v.mid_f64() > cur.mid_f64(),
                };
                if better {
                    best = Some((v, (a, b)));
                }
            }
        }
        if top == checkpoint || top == bound {
            trend.push((top, best.as_ref().expect("probed").0.hi_f64()));
            checkpoint *= 2;
        }
    }
    let (supremum, argmax) = best.ok_or_else(|| Error::InvalidArgument("empty probe".into()))?;
    let stable = match trend.as_slice() {
        [.., (_, prev), (_, last)] => *last <= *prev * (1.0 + 1e-9),
        _ => true,
    };
    Ok(Condition2 {
        a: a_val.to_string(),
        supremum,
        argmax,
        trend,
        stable,
    })
}

/// Both conditions of entireness, probed on the given `r` and `A` values.
pub fn entire_check(
    seq: &WeightSequence,
    weights: &[u32],
    r_list: &[Rational],
    a_list: &[Rational],
    w_bound: u32,
    prec: u32,
) -> Result<EntiretyReport> {
    let condition1 = r_list
        .iter()
        .map(|r| {
            Ok(Condition1 {
                r: r.to_string(),
                verdict: series_by_weight(seq, weights, r, w_bound, prec)?,
            })
        })
        .collect::<Result<_>>()?;
    let pairs = w_bound.clamp(2, CONDITION2_PAIRS);
    let condition2 = a_list
        .iter()
        .map(|a| condition2(seq, a, pairs, prec))
        .collect::<Result<_>>()?;
    Ok(EntiretyReport {
        sequence: seq.label(),
        condition1,
        condition2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthValue {
    /// Encloses `Φ`, tail included.
    pub value: Ball,
    pub truncated_at: u32,
    pub tail_bound: Ball,
}

/// Largest truncation weight tried before giving up on `tol`.
pub const GROWTH_MAX_WEIGHT: u32 = 20_000;

/// `Φ = Σ_α M_α σ^{w(α)}` for `M1`, truncated once the certified tail is
/// below `tol`.
pub fn growth_function(
    sigma: &Ball,
    weights: &[u32],
    tol: &Rational,
    prec: u32,
) -> Result<GrowthValue> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    if sigma.lo_f64() < 0.0 {
        return Err(Error::InvalidArgument("sigma must be nonnegative".into()));
    }
    let m = weights.len();
    let seq = WeightSequence::M1;
    let sigma = sigma.with_precision(prec);
    let sigma_hi = Ball::from_f64(sigma.hi_f64(), prec);
    let tol_ball = Ball::from_rational(tol, prec);
    let half = Ball::from_rational(&Rational::new(BigInt::one(), big(2)), prec);
    let mut counts = weight_counts(weights, 64);
    let mut sum = Ball::exact_zero(prec);
    let mut w = 0u32;
    loop {
        if w as usize >= counts.len() - 1 {
            counts = weight_counts(weights, (counts.len() as u32) * 2);
        }
        let c = Ball::from_rational(
            &Rational::from_integer(counts[w as usize].clone().into()),
            prec,
        );
        sum = sum + c * seq.m_ball(w, prec)? * sigma.powi(w);
        let rho = Ball::from_rational(&seq.ratio_bound(w).expect("M1 ratio"), prec);
        let growth = Ball::from_rational(
            &Rational::new(big(w as u64 + m as u64 + 1), big(w as u64 + 1)),
            prec,
        );
        let ratio = growth * sigma_hi.clone() * rho;
        if ratio.certainly_le(&half) {
            let next = w + 1;
            let u_next =
                Ball::from_rational(&Rational::from_integer(count_bound(next, m).into()), prec)
                    * seq.m_ball(next, prec)?
                    * sigma_hi.powi(next);
            let tail = u_next * Ball::from_i64(2, prec);
            if tail.certainly_lt(&tol_ball) {
                let value = sum.add_upper_slack(&tail);
                return Ok(GrowthValue {
                    value,
                    truncated_at: w,
                    tail_bound: tail,
                });
            }
        }
        w += 1;
        if w > GROWTH_MAX_WEIGHT {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                radius: "tail not certified".into(),
            });
        }
    }
}

/// Support multi-indices of `e^α e^β` that drop below `w(α) + w(β)`.
pub fn weight_drop(
    mul: &mut PbwMultiplier<'_, Rational>,
    weights: &[u32],
    a: &MultiIndex,
    b: &MultiIndex,
) -> Result<Vec<MultiIndex>> {
    let floor = weight_of(weights, a)? + weight_of(weights, b)?;
    let p = mul.mul_monomials(a, b);
    let mut out = Vec::new();
    for g in p.terms().keys() {
        if weight_of(weights, g)? < floor {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::filtration::AdaptedAlgebra;
    use crate::scalar::{q, qi};

    const H: [u32; 3] = [1, 1, 2];

    fn mi(a: &[u32]) -> MultiIndex {
        MultiIndex(a.to_vec())
    }

    #[test]
    fn prenorm_examples() {
        let r2 = Ball::from_i64(2, 128);
        let one = UElement::<Rational>::one(3);
        assert!(prenorm(&one, &H, &r2, &WeightSequence::M1, 128)
            .unwrap()
            .contains_rational(&qi(1)));
        let e3 = UElement::<Rational>::generator(3, 2);
        let v = prenorm(&e3, &H, &r2, &WeightSequence::M1, 128).unwrap();
        assert!(v.contains_rational(&qi(1)));
        assert_eq!(
            prenorm_exact(&e3, &H, &qi(2), &WeightSequence::M1).unwrap(),
            qi(1)
        );
        let x = &UElement::<Rational>::generator(3, 0) + &UElement::generator(3, 1);
        assert_eq!(
            prenorm_exact(&x, &H, &qi(1), &WeightSequence::M1).unwrap(),
            qi(2)
        );
    }

    #[test]
    fn gaussian_prenorm_uses_modulus() {
        use crate::scalar::Gaussian;
        let c = Gaussian::new(qi(3), qi(4));
        let x = UElement::monomial(mi(&[1, 0, 0]), c);
        let v = prenorm(&x, &H, &Ball::from_i64(1, 128), &WeightSequence::M1, 128).unwrap();
        assert!(v.contains_rational(&qi(5)));
    }

    #[test]
    fn closed_form_examples() {
        let prec = 128;
        let v = power_norm_closed_form(1, 2, &Ball::from_i64(1, prec), prec);
        assert!(v.contains_rational(&q(1, 2)));
        let v = power_norm_closed_form(2, 3, &Ball::from_i64(6, prec), prec);
        assert!(v.contains_rational(&qi(6)));
        let v = power_norm_closed_form(2, 1, &Ball::from_i64(3, prec), prec);
        assert!(v.contains_rational(&q(9, 4)));
    }

    #[test]
    fn decay_first_row_and_trend() {
        let h = bundled::heisenberg3();
        let p = decay_profile(&h, &H, 2, &qi(1), 100, 128).unwrap();
        assert!(p.rows[0].norm.contains_rational(&q(1, 4)));
        assert!(p.rows[99].normalized.certainly_lt(&p.rows[9].normalized));
        assert!(p.bounded);
        assert!(p
            .to_csv()
            .starts_with("n,r,norm,radius,normalized_decay\n1,1,"));
        assert!(decay_profile(&h, &H, 2, &qi(1), 5, 128).is_err());
    }

    #[test]
    fn weight_axiom() {
        let rep = weight_axiom_check(&WeightSequence::M1, 30).unwrap();
        assert!(rep.is_ok());
        assert!(rep.checked > 0);
        // M_2 larger than M_1 · M_1
        let bad = WeightSequence::by_weight(vec![qi(1), q(1, 2), qi(1), q(1, 100)]).unwrap();
        let rep = weight_axiom_check(&bad, 3).unwrap();
        assert!(rep
            .violations
            .contains(&AxiomViolation { a: 1, b: 1, c: 2 }));
        assert!(weight_axiom_check(&WeightSequence::M1, 61).is_err());
    }

    #[test]
    fn counts_by_weight() {
        let c = weight_counts(&H, 4);
        let as_u: Vec<u64> = c.iter().map(|x| x.try_into().unwrap()).collect();
        // weight 2: e1², e1e2, e2², e3
        assert_eq!(as_u, vec![1, 2, 4, 6, 9]);
    }

    #[test]
    fn m1_entire_and_constant_not() {
        let rep = entire_check(&WeightSequence::M1, &H, &[qi(10)], &[], 400, 128).unwrap();
        assert!(rep.all_convergent());
        let deg = WeightSequence::constant(qi(1)).unwrap();
        let rep = entire_check(&deg, &H, &[qi(2)], &[], 200, 128).unwrap();
        assert!(!rep.all_convergent());
    }

    #[test]
    fn m1_condition2_sup_is_one_over_e() {
        let prec = 128;
        let inv_e = Ball::from_i64(1, prec) / Ball::e(prec);
        let a = Rational::new(
            BigInt::from(367879441171442u64),
            BigInt::from(1_000_000_000_000_000u64),
        );
        let rep = entire_check(&WeightSequence::M1, &H, &[], &[a], 40, prec).unwrap();
        let c2 = &rep.condition2[0];
        assert!(c2.supremum.hi_f64() <= inv_e.hi_f64() * (1.0 + 1e-12));
        assert_eq!(c2.argmax.0, c2.argmax.1);
        assert!(c2.stable);
    }

    #[test]
    fn growth_function_basics() {
        let prec = 128;
        let tol = q(1, 1_000_000);
        let id = growth_function(&Ball::exact_zero(prec), &H, &tol, prec).unwrap();
        assert!(id.value.contains_rational(&qi(1)));
        let p1 = growth_function(&Ball::from_i64(1, prec), &H, &tol, prec).unwrap();
        let p2 = growth_function(&Ball::from_i64(2, prec), &H, &tol, prec).unwrap();
        assert!(p1.value.certainly_lt(&p2.value));
    }

    #[test]
    fn products_respect_weight_floor() {
        let ad = AdaptedAlgebra::from_lower_central_series(&bundled::heisenberg3()).unwrap();
        let mut mul = PbwMultiplier::new(ad.algebra());
        let drop = weight_drop(&mut mul, ad.weights(), &mi(&[0, 3, 1]), &mi(&[2, 0, 0])).unwrap();
        assert!(drop.is_empty());
    }
}
