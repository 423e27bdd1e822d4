//! The twelve acceptance criteria, each with its tolerance and time limit.
//! A criterion passes only if its check holds and it finishes in time.

use std::time::Instant;

use nilgeom::bch::{GroupElement, SecondKindCoords};
use nilgeom::filtration::{lower_central_series, weight_of};
use nilgeom::geometry::subpoly::{fit_and_validate, Observation, DEFAULT_MARGIN};
use nilgeom::geometry::{
    adapted_norm, ball_bound_check, corcbh_constant, dilate, sigma, sigma_of, subpoly_estimate,
    word_factorize, CommutatorScheme,
};
use nilgeom::norms::{
    decay_profile, entire_check, growth_function, power_norm_closed_form, prenorm_exact,
    weight_axiom_check,
};
use nilgeom::pbw::monomials_up_to_weight;
use nilgeom::sampling::{rational, rational_vec, stream, Sampler};
use nilgeom::{
    bundled, AdaptedAlgebra, Ball, Group, MultiIndex, PbwMultiplier, Rational, UElement,
    WeightSequence,
};
use nilgeom_oracle::{dynkin, enumerate};
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.2}s of {}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

type Check = fn(u64) -> Result<(bool, String), String>;

pub const CRITERIA: [(u32, &str, f64, Check); 12] = [
    (1, "structural exactness", 1.0, structural),
    (2, "bch correctness", 30.0, bch_correctness),
    (3, "coordinate duality", 10.0, coordinate_duality),
    (4, "pbw soundness", 60.0, pbw_soundness),
    (5, "norm formula", 30.0, norm_formula),
    (6, "decay", 60.0, decay),
    (7, "weight axiom", 5.0, weight_axiom),
    (8, "entireness", 60.0, entireness),
    (9, "sub-polynomial bound", 120.0, subpolynomial),
    (10, "factorization", 600.0, factorization),
    (11, "ball bound", 300.0, ball_bound),
    (12, "dilation homogeneity", 5.0, dilation),
];

pub fn run_one(id: u32, seed: u64) -> Option<CriterionResult> {
    let &(id, name, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check(seed);
    let seconds = start.elapsed().as_secs_f64();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = seconds <= limit;
    Some(CriterionResult {
        id,
        name,
        passed: ok && in_time,
        detail: if in_time {
            detail
        } else {
            format!("{detail}; over time limit")
        },
        seconds,
        limit_seconds: limit,
    })
}

pub fn run_all(seed: u64) -> Summary {
    let criteria: Vec<CriterionResult> =
        CRITERIA.iter().filter_map(|c| run_one(c.0, seed)).collect();
    Summary {
        seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

fn algebras() -> Result<Vec<(&'static str, AdaptedAlgebra<Rational>)>, String> {
    bundled::all()
        .into_iter()
        .map(|(n, a)| {
            AdaptedAlgebra::from_lower_central_series(&a)
                .map(|a| (n, a))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn structural(_: u64) -> Result<(bool, String), String> {
    let mut ok = true;
    for (name, a) in bundled::all() {
        let rep = a.validate();
        if !rep.is_ok() {
            ok = false;
        }
        AdaptedAlgebra::from_lower_central_series(&a).map_err(|x| format!("{name}: {x}"))?;
    }
    let h = lower_central_series(&bundled::heisenberg3())
        .map_err(e)?
        .dims();
    let f = AdaptedAlgebra::from_lower_central_series(&bundled::favre7()).map_err(e)?;
    let class = f.layers().class();
    ok &= h == [3, 1] && class == 6 && f.weights() == [1, 1, 2, 3, 4, 5, 6];
    Ok((
        ok,
        format!(
            "heisenberg lcs {h:?}; 7-dim class {class}, weights {:?}",
            f.weights()
        ),
    ))
}

fn bch_correctness(seed: u64) -> Result<(bool, String), String> {
    let mut failures = 0;
    for (_, a) in algebras()? {
        let g = Group::from_adapted(&a);
        let m = g.dim();
        for k in 0..200 {
            let mut rng = stream(seed, k);
            let x = GroupElement::new(rational_vec(&mut rng, m, 12, 7));
            let y = GroupElement::new(rational_vec(&mut rng, m, 12, 7));
            let z = GroupElement::new(rational_vec(&mut rng, m, 12, 7));
            let l = g.mul(&g.mul(&x, &y).map_err(e)?, &z).map_err(e)?;
            let r = g.mul(&x, &g.mul(&y, &z).map_err(e)?).map_err(e)?;
            let inv = g.inv(&x).map_err(e)?;
            if l != r
                || g.mul(&x, &inv).map_err(e)? != g.identity()
                || g.mul(&inv, &x).map_err(e)? != g.identity()
            {
                failures += 1;
            }
        }
        for k in 0..50 {
            let mut rng = stream(seed ^ 0xb0c4, k);
            let x = rational_vec(&mut rng, m, 12, 7);
            let y = rational_vec(&mut rng, m, 12, 7);
            if g.bch(&x, &y) != dynkin::bch(g.algebra(), &x, &y, g.class()) {
                failures += 1;
            }
        }
    }
    Ok((
        failures == 0,
        format!("{failures} mismatches over 3×(200 triples + 50 oracle pairs)"),
    ))
}

fn coordinate_duality(seed: u64) -> Result<(bool, String), String> {
    let mut failures = 0;
    for (name, a) in algebras()? {
        let g = Group::from_adapted(&a);
        for k in 0..200 {
            let mut rng = stream(seed, k);
            let t = GroupElement::new(rational_vec(&mut rng, g.dim(), 20, 9));
            let bar = g.first_to_second(&t).map_err(e)?;
            if g.second_to_first(&bar).map_err(e)? != t {
                failures += 1;
            }
            let back = g
                .first_to_second(
                    &g.second_to_first(&SecondKindCoords {
                        coords: t.coords.clone(),
                    })
                    .map_err(e)?,
                )
                .map_err(e)?;
            if back.coords != t.coords {
                failures += 1;
            }
            if name == "heisenberg3" {
                let closed = &t.coords[2] - &t.coords[0] * &t.coords[1] / qi(2);
                if bar.coords[2] != closed {
                    failures += 1;
                }
            }
        }
    }
    Ok((
        failures == 0,
        format!("{failures} failures over 3×200 points, both directions"),
    ))
}

/// Three random terms, each a monomial of total degree at most `degree`.
fn random_element(seed: u64, k: u64, m: usize, degree: u32) -> UElement<Rational> {
    let mut rng = stream(seed, k);
    let terms: Vec<(MultiIndex, Rational)> = (0..3)
        .map(|_| {
            let mut alpha = vec![0u32; m];
            for _ in 0..rng.random_range(0..=degree) {
                alpha[rng.random_range(0..m)] += 1;
            }
            (MultiIndex(alpha), rational(&mut rng, 9, 4))
        })
        .collect();
    UElement::from_terms(m, terms).expect("dimensions agree")
}

fn pbw_soundness(seed: u64) -> Result<(bool, String), String> {
    let mut failures = 0;
    let mut products = 0;
    for (_, a) in algebras()? {
        let alg = a.algebra();
        let m = alg.dim();
        let w = a.weights();
        let mut mul = PbwMultiplier::new(alg);
        for i in 0..m {
            for j in 0..m {
                let (ei, ej) = (UElement::generator(m, i), UElement::generator(m, j));
                let c = mul.commutator(&ei, &ej).map_err(e)?;
                if c != UElement::from_vector(
                    &alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j)),
                ) {
                    failures += 1;
                }
            }
        }
        for k in 0..20 {
            let x = random_element(seed, 3 * k, m, 4);
            let y = random_element(seed, 3 * k + 1, m, 4);
            let z = random_element(seed, 3 * k + 2, m, 4);
            let xy = mul.mul(&x, &y).map_err(e)?;
            let yz = mul.mul(&y, &z).map_err(e)?;
            if mul.mul(&xy, &z).map_err(e)? != mul.mul(&x, &yz).map_err(e)? {
                failures += 1;
            }
        }
        let monos = monomials_up_to_weight(w, 8);
        for al in &monos {
            let wa = weight_of(w, al).map_err(e)?;
            for be in &monos {
                let floor = wa + weight_of(w, be).map_err(e)?;
                products += 1;
                for g in mul.mul_monomials(al, be).terms().keys() {
                    if weight_of(w, g).map_err(e)? < floor {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok((
        failures == 0,
        format!("{failures} failures; {products} monomial products checked for weight support"),
    ))
}

fn norm_formula(_: u64) -> Result<(bool, String), String> {
    const PREC: u32 = 256;
    let mut worst = 0f64;
    let mut bad = 0;
    for (_, a) in algebras()? {
        let m = a.algebra().dim();
        let mut mul = PbwMultiplier::new(a.algebra());
        for i in 0..m {
            let gen = UElement::generator(m, i);
            let mut p = UElement::one(m);
            for n in 1..=50u32 {
                p = mul.mul(&p, &gen).map_err(e)?;
                for r in [1i64, 10] {
                    let exact =
                        prenorm_exact(&p, a.weights(), &qi(r), &WeightSequence::M1).map_err(e)?;
                    let closed =
                        power_norm_closed_form(a.weights()[i], n, &Ball::from_i64(r, PREC), PREC);
                    let diff = (Ball::from_rational(&exact, PREC) - closed).abs().hi_f64();
                    worst = worst.max(diff);
                    if !(diff < 1e-30) {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((
        bad == 0,
        format!("max |prenorm − closed form| ≤ {worst:.3e} (tolerance 1e-30)"),
    ))
}

fn decay(_: u64) -> Result<(bool, String), String> {
    let mut unbounded = Vec::new();
    let mut rows = 0;
    for (name, a) in algebras()? {
        for i in 0..a.algebra().dim() {
            for r in [1i64, 10] {
                let prof =
                    decay_profile(a.algebra(), a.weights(), i, &qi(r), 300, 128).map_err(e)?;
                rows += prof.rows.len();
                if !prof.bounded {
                    unbounded.push(format!("{name} e{} r={r}", i + 1));
                }
            }
        }
    }
    Ok((
        unbounded.is_empty(),
        format!("{rows} rows; unbounded profiles: {unbounded:?}"),
    ))
}

fn weight_axiom(_: u64) -> Result<(bool, String), String> {
    let rep = weight_axiom_check(&WeightSequence::M1, 30).map_err(e)?;
    Ok((
        rep.is_ok(),
        format!(
            "{} triples, {} violations",
            rep.checked,
            rep.violations.len()
        ),
    ))
}

fn entireness(_: u64) -> Result<(bool, String), String> {
    let mut ok = true;
    let mut worst = 0f64;
    let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(25));
    for (name, a) in algebras()? {
        let rep = entire_check(
            &WeightSequence::M1,
            a.weights(),
            &[qi(1), qi(10), qi(100)],
            &[],
            4000,
            128,
        )
        .map_err(|x| format!("{name}: {x}"))?;
        ok &= rep.all_convergent();
        let phi = growth_function(&Ball::from_i64(1, 192), a.weights(), &tol, 192).map_err(e)?;
        let brute = Ball::from_rational(&enumerate::phi_truncated(a.weights(), &qi(1), 80), 192);
        let diff = (phi.value - brute).abs().hi_f64();
        worst = worst.max(diff);
        ok &= diff < 1e-20;
    }
    Ok((
        ok,
        format!("condition 1 certified at r = 1, 10, 100; max |Φ(1) − enumeration| ≤ {worst:.3e}"),
    ))
}

fn subpolynomial(seed: u64) -> Result<(bool, String), String> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, a) in algebras()? {
        let g = Group::from_adapted(&a);
        let s = Sampler::new(g.weights(), 100, seed);
        let rep = subpoly_estimate(&g, 10_000, 10_000, &s, 128).map_err(e)?;
        ok &= rep.accepted();
        parts.push(format!(
            "{name} C={} D={} violations={}",
            rep.c, rep.d, rep.violations
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Targets drawn in second-kind coordinates so that `σ̄ ≤ 10`.
fn factorization(seed: u64) -> Result<(bool, String), String> {
    const PREC: u32 = 256;
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, a) in algebras()? {
        let scheme = CommutatorScheme::build(&a).map_err(e)?;
        let g = scheme.group();
        let s = Sampler::new(g.weights(), 10, seed);
        let mut obs = Vec::new();
        let mut worst = 0f64;
        for k in 0..200 {
            let bar = SecondKindCoords {
                coords: s.sample(k),
            };
            let target = g.second_to_first(&bar).map_err(e)?;
            let f = word_factorize(&scheme, &target, PREC).map_err(e)?;
            worst = worst.max(f.residual);
            ok &= f.residual < 1e-40 && f.word.is_unit_bounded();
            obs.push(Observation {
                x: sigma_of(&bar.coords, g.weights(), PREC).map_err(e)?,
                y: Ball::from_i64(f.certificate.length as i64, PREC),
            });
        }
        // λ-power-compatible targets: t̄_i = k^{w_i} factor exactly
        for k in 1..=5i64 {
            let coords = g.weights().iter().map(|&w| qi(k.pow(w))).collect();
            let target = g.second_to_first(&SecondKindCoords { coords }).map_err(e)?;
            let f = word_factorize(&scheme, &target, PREC).map_err(e)?;
            ok &= f.exact && f.certificate.residual_radius == "0";
        }
        let (train, test) = obs.split_at(100);
        let rep = fit_and_validate("length vs sigma_bar", train, test, seed, DEFAULT_MARGIN);
        ok &= rep.accepted();
        parts.push(format!(
            "{name} max residual {worst:.1e}, length ≤ {}·σ̄ + {} with {} holdout violations",
            rep.c, rep.d, rep.violations
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn ball_bound(seed: u64) -> Result<(bool, String), String> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, a) in algebras()? {
        let g = Group::from_adapted(&a);
        let target = corcbh_constant(&g);
        let spec = adapted_norm(&g, target.as_ref(), 64).map_err(e)?;
        let rep = ball_bound_check(&g, &spec, 500, 40, seed);
        ok &= rep.is_ok();
        parts.push(format!(
            "{name}: {} checks, {} violations",
            rep.checked,
            rep.violations.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn dilation(seed: u64) -> Result<(bool, String), String> {
    const PREC: u32 = 192;
    let mut worst = 0f64;
    for (_, a) in algebras()? {
        let g = Group::from_adapted(&a);
        let s = Sampler::new(g.weights(), 100, seed);
        for k in 0..100 {
            let el = GroupElement::new(s.sample(k));
            let base = sigma(&g, &el, PREC).map_err(e)?;
            for z in [2i64, 10] {
                let d = dilate(&g, &el, &qi(z)).map_err(e)?;
                let lhs = sigma(&g, &d, PREC).map_err(e)?;
                let diff = (lhs - base.clone() * Ball::from_i64(z, PREC)).abs();
                worst = worst.max(diff.hi_f64());
            }
        }
    }
    Ok((
        worst < 1e-30,
        format!("max |σ(δ_z g) − zσ(g)| ≤ {worst:.3e} (tolerance 1e-30)"),
    ))
}
