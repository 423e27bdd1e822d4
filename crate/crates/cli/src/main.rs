use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilgeom::bch::{coords_to_json, GroupElement, SecondKindCoords};
use nilgeom::filtration::lower_central_series;
use nilgeom::geometry::{
    adapted_norm, ball_bound_check, corcbh_constant, exp_type_norm, sigma, sigma_bar,
    subpoly_estimate, word_factorize, CommutatorScheme, CoordPolynomial,
};
use nilgeom::norms::{decay_profile, entire_check, growth_function, prenorm, weight_axiom_check};
use nilgeom::sampling::Sampler;
use nilgeom::scalar::{parse_rational, rational_text};
use nilgeom::{
    bundled, AdaptedAlgebra, Ball, Error, ExactScalar, Gaussian, Group, LieAlgebra, PbwMultiplier,
    Rational, UElement, WeightSequence,
};
use nilgeom_cli::acceptance::{run_all, run_one, Summary, DEFAULT_SEED};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nilgeom",
    version,
    about = "Exact computations on nilpotent Lie algebras and groups"
)]
struct Cli {
    /// Working precision in bits for interval results.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the output into this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Algebras are JSON files or bundled names (`heisenberg3`, `favre7`,
/// `abelian_<m>`). Coordinates and indices refer to the F-basis printed by
/// `fbasis`, one-based on the command line.
#[derive(Subcommand)]
enum Command {
    /// Jacobi identity, antisymmetry conventions and nilpotency.
    Validate { algebra: String },
    /// Dimensions of the lower central series.
    Lcs { algebra: String },
    /// F-basis adapted to the lower central series, with weights.
    Fbasis { algebra: String },
    /// log(exp x exp y).
    Bch {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// First- and second-kind coordinates of one group element.
    Coords {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Kind of the given coordinates.
        #[arg(long, value_enum, default_value = "first")]
        kind: Kind,
    },
    /// Product in the enveloping algebra, PBW normal form.
    PbwMul {
        algebra: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Weighted prenorm of an enveloping-algebra element.
    Norm {
        algebra: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        r: String,
        /// `m1`, `const:<q>` or `table:<M_0>,<M_1>,…`.
        #[arg(long, default_value = "m1")]
        seq: String,
    },
    /// Normalized decay of ‖e_i^n‖_r.
    Decay {
        algebra: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 300)]
        nmax: u32,
    },
    /// The weight axiom M_{a+b} ≤ M_a M_b up to a bound.
    WeightsCheck {
        #[arg(long, default_value_t = 30)]
        bound: u32,
        #[arg(long, default_value = "m1")]
        seq: String,
    },
    /// Convergence of Σ_α M_α r^{w(α)} and the sup condition.
    Entire {
        algebra: String,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
        r: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1/3")]
        a: Vec<String>,
        #[arg(long, default_value = "m1")]
        seq: String,
        #[arg(long, default_value_t = 4000)]
        wbound: u32,
    },
    /// The growth function Φ(σ).
    Phi {
        algebra: String,
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value = "1/1000000000000000000000000000000")]
        tol: String,
    },
    /// Homogeneous norms σ and σ̄.
    Sigma {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Fits σ(g₁g₂) ≤ C max σ(g_i) + D and validates it on fresh pairs.
    Subpoly {
        algebra: String,
        #[arg(long, default_value_t = 10_000)]
        train: usize,
        #[arg(long, default_value_t = 10_000)]
        test: usize,
        #[arg(long, default_value_t = 100)]
        radius: u32,
    },
    /// A word over unit one-parameter subgroups of weight-one generators.
    Factorize {
        algebra: String,
        /// First-kind coordinates of the target.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Layer-scaled norm with small bracket constant.
    Normtrick {
        algebra: String,
        /// Bound for the bracket constant; defaults to the BCH-derived one.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// ‖V_j‖ ≤ n^j on random products of n unit weight-one letters.
    Ballbound {
        algebra: String,
        #[arg(long, default_value_t = 500)]
        words: u64,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
    },
    /// Lower and upper bounds for sup |f| e^{-rσ}.
    Exptype {
        algebra: String,
        /// Polynomial as `{"terms":[{"alpha":[…],"c":"…"}]}`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 256)]
        budget: u64,
    },
    /// Runs the acceptance criteria and prints a JSON summary.
    Report {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    First,
    Second,
}

/// A failed run: exit code 1 for a failed check, 2 for bad input.
enum Failure {
    Check,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<bool, Failure>;

enum Loaded {
    Real(LieAlgebra<Rational>),
    Complex(LieAlgebra<Gaussian>),
}

fn load(spec: &str) -> Result<Loaded, Error> {
    let path = Path::new(spec);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        let alg = LieAlgebra::<Gaussian>::from_json(&text)?;
        if alg.is_real() {
            return Ok(Loaded::Real(
                alg.map_scalars(|c| c.to_real().expect("real")),
            ));
        }
        return Ok(Loaded::Complex(alg));
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or(spec);
    bundled::by_name(name)
        .map(Loaded::Real)
        .ok_or_else(|| Error::Parse(format!("{spec}: no such file or bundled algebra")))
}

fn load_real(spec: &str) -> Result<LieAlgebra<Rational>, Error> {
    match load(spec)? {
        Loaded::Real(a) => Ok(a),
        Loaded::Complex(_) => Err(Error::NotReal(format!(
            "{spec} has non-real structure constants"
        ))),
    }
}

fn parse_vec<S: ExactScalar>(text: &str) -> Result<Vec<S>, Error> {
    let text = text.trim();
    if text.starts_with('[') {
        return nilgeom::bch::coords_from_json(text);
    }
    text.split(',').map(|s| S::parse_str(s.trim())).collect()
}

fn parse_seq(text: &str) -> Result<WeightSequence, Error> {
    if text.eq_ignore_ascii_case("m1") {
        return Ok(WeightSequence::M1);
    }
    if let Some(q) = text.strip_prefix("const:") {
        return WeightSequence::constant(parse_rational(q)?);
    }
    if let Some(t) = text.strip_prefix("table:") {
        let table = t
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        return WeightSequence::by_weight(table);
    }
    Err(Error::InvalidArgument(format!(
        "unknown weight sequence {text:?}"
    )))
}

fn index(i: usize, dim: usize) -> Result<usize, Error> {
    if i == 0 || i > dim {
        return Err(Error::IndexOutOfRange { index: i, dim });
    }
    Ok(i - 1)
}

fn texts<S: ExactScalar>(v: &[S]) -> Vec<String> {
    v.iter().map(ExactScalar::to_text).collect()
}

struct Emitter {
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Emitter {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, name: &str, format: Format, text: &str) -> Result<(), Error> {
        // a closed pipe (`| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
        if let Some(dir) = &self.out {
            let ext = if format == Format::Csv { "csv" } else { "json" };
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
            let file = dir.join(format!("{name}.{ext}"));
            std::fs::write(&file, format!("{}\n", text.trim_end()))
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", file.display())))?;
        }
        Ok(())
    }

    fn json(&self, name: &str, value: &Value) -> Result<(), Error> {
        if self.format == Some(Format::Csv) {
            return Err(Error::InvalidArgument(format!("{name} has no CSV form")));
        }
        self.emit(
            name,
            Format::Json,
            &serde_json::to_string_pretty(value).expect("json"),
        )
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn validate<S: ExactScalar>(alg: &LieAlgebra<S>, em: &Emitter) -> Outcome {
    let rep = alg.validate();
    let nilpotent = match AdaptedAlgebra::from_lower_central_series(alg) {
        Ok(_) => Ok(true),
        Err(Error::NotNilpotent { .. }) => Ok(false),
        Err(e) => Err(e),
    }?;
    let valid = rep.is_ok() && nilpotent;
    em.json(
        "validate",
        &json!({"dim": alg.dim(), "checked": rep.checked, "violations": rep.violations,
                "nilpotent": nilpotent, "valid": valid}),
    )?;
    Ok(valid)
}

fn lcs<S: ExactScalar>(alg: &LieAlgebra<S>, em: &Emitter) -> Outcome {
    let dims = lower_central_series(alg)?.dims();
    if em.format(Format::Json) == Format::Csv {
        let mut s = String::from("j,dim\n");
        for (j, d) in dims.iter().enumerate() {
            s.push_str(&format!("{},{d}\n", j + 1));
        }
        em.emit("lcs", Format::Csv, &s)?;
    } else {
        em.json("lcs", &json!({"dims": dims, "class": dims.len()}))?;
    }
    Ok(true)
}

fn fbasis<S: ExactScalar>(alg: &LieAlgebra<S>, em: &Emitter) -> Outcome {
    let a = AdaptedAlgebra::from_lower_central_series(alg)?;
    let vectors: Vec<Vec<String>> = a.basis().vectors().iter().map(|v| texts(v)).collect();
    if em.format(Format::Json) == Format::Csv {
        let mut s = String::from("index,weight,vector\n");
        for (i, (w, v)) in a.weights().iter().zip(&vectors).enumerate() {
            s.push_str(&format!("{},{w},\"{}\"\n", i + 1, v.join(" ")));
        }
        em.emit("fbasis", Format::Csv, &s)?;
    } else {
        em.json("fbasis", &json!({"weights": a.weights(), "basis": vectors}))?;
    }
    Ok(true)
}

fn group_of<S: ExactScalar>(alg: &LieAlgebra<S>) -> Result<Group<S>, Error> {
    Ok(Group::from_adapted(
        &AdaptedAlgebra::from_lower_central_series(alg)?,
    ))
}

fn bch<S: ExactScalar>(alg: &LieAlgebra<S>, x: &str, y: &str, em: &Emitter) -> Outcome {
    let g = group_of(alg)?;
    let (x, y) = (parse_vec::<S>(x)?, parse_vec::<S>(y)?);
    let z = g.mul(&GroupElement::new(x), &GroupElement::new(y))?;
    em.json("bch", &json!({"z": texts(&z.coords)}))?;
    Ok(true)
}

fn coords<S: ExactScalar>(alg: &LieAlgebra<S>, t: &str, kind: Kind, em: &Emitter) -> Outcome {
    let g = group_of(alg)?;
    let t = parse_vec::<S>(t)?;
    let (first, second) = match kind {
        Kind::First => {
            let el = GroupElement::new(t);
            let bar = g.first_to_second(&el)?;
            (el.coords, bar.coords)
        }
        Kind::Second => {
            let bar = SecondKindCoords { coords: t };
            let el = g.second_to_first(&bar)?;
            (el.coords, bar.coords)
        }
    };
    em.json(
        "coords",
        &json!({"first": texts(&first), "second": texts(&second)}),
    )?;
    Ok(true)
}

fn pbw_mul<S: ExactScalar>(alg: &LieAlgebra<S>, x: &str, y: &str, em: &Emitter) -> Outcome {
    let a = AdaptedAlgebra::from_lower_central_series(alg)?;
    let m = alg.dim();
    let (x, y) = (
        UElement::<S>::from_json(m, x)?,
        UElement::<S>::from_json(m, y)?,
    );
    let p = PbwMultiplier::new(a.algebra()).mul(&x, &y)?;
    let v: Value = serde_json::from_str(&p.to_json()).expect("element json");
    em.json("pbw-mul", &v)?;
    Ok(true)
}

fn norm<S: ExactScalar>(
    alg: &LieAlgebra<S>,
    x: &str,
    r: &str,
    seq: &str,
    prec: u32,
    em: &Emitter,
) -> Outcome {
    let a = AdaptedAlgebra::from_lower_central_series(alg)?;
    let x = UElement::<S>::from_json(alg.dim(), x)?;
    let seq = parse_seq(seq)?;
    let r = parse_rational(r)?;
    let n = prenorm(&x, a.weights(), &Ball::from_rational(&r, prec), &seq, prec)?;
    em.json(
        "norm",
        &json!({"norm": n, "r": rational_text(&r), "sequence": seq.label()}),
    )?;
    Ok(true)
}

fn decay<S: ExactScalar>(
    alg: &LieAlgebra<S>,
    i: usize,
    r: &str,
    nmax: u32,
    prec: u32,
    em: &Emitter,
) -> Outcome {
    let a = AdaptedAlgebra::from_lower_central_series(alg)?;
    let i = index(i, alg.dim())?;
    let prof = decay_profile(a.algebra(), a.weights(), i, &parse_rational(r)?, nmax, prec)?;
    if em.format(Format::Csv) == Format::Csv {
        em.emit("decay", Format::Csv, &prof.to_csv())?;
    } else {
        em.json("decay", &to_value(&prof))?;
    }
    Ok(prof.bounded)
}

fn sigmas<S: ExactScalar>(alg: &LieAlgebra<S>, t: &str, prec: u32, em: &Emitter) -> Outcome {
    let g = group_of(alg)?;
    let el = GroupElement::new(parse_vec::<S>(t)?);
    if el.coords.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: el.coords.len(),
        }
        .into());
    }
    let s = sigma(&g, &el, prec)?;
    let sb = sigma_bar(&g, &el, prec)?;
    em.json("sigma", &json!({"sigma": s, "sigma_bar": sb}))?;
    Ok(true)
}

fn adapted_weights(spec: &str) -> Result<Vec<u32>, Error> {
    Ok(match load(spec)? {
        Loaded::Real(a) => AdaptedAlgebra::from_lower_central_series(&a)?
            .weights()
            .to_vec(),
        Loaded::Complex(a) => AdaptedAlgebra::from_lower_central_series(&a)?
            .weights()
            .to_vec(),
    })
}

fn report_csv(s: &Summary) -> String {
    let mut out = String::from("id,name,passed,seconds,limit_seconds,detail\n");
    for c in &s.criteria {
        out.push_str(&format!(
            "{},{},{},{:.3},{},\"{}\"\n",
            c.id,
            c.name,
            c.passed,
            c.seconds,
            c.limit_seconds,
            c.detail.replace('"', "'")
        ));
    }
    out
}

fn run(cli: Cli) -> Outcome {
    let prec = cli.precision;
    if prec < 64 {
        return Err(Error::PrecisionTooLow(prec).into());
    }
    let seed = cli.seed;
    let em = Emitter {
        out: cli.out,
        format: cli.format,
    };
    macro_rules! generic {
        ($spec:expr, $alg:ident => $body:expr) => {
            match load($spec)? {
                Loaded::Real($alg) => $body,
                Loaded::Complex($alg) => $body,
            }
        };
    }
    match cli.command {
        Command::Validate { algebra } => generic!(&algebra, a => validate(&a, &em)),
        Command::Lcs { algebra } => generic!(&algebra, a => lcs(&a, &em)),
        Command::Fbasis { algebra } => generic!(&algebra, a => fbasis(&a, &em)),
        Command::Bch { algebra, x, y } => generic!(&algebra, a => bch(&a, &x, &y, &em)),
        Command::Coords { algebra, t, kind } => generic!(&algebra, a => coords(&a, &t, kind, &em)),
        Command::PbwMul { algebra, x, y } => generic!(&algebra, a => pbw_mul(&a, &x, &y, &em)),
        Command::Norm { algebra, x, r, seq } => {
            generic!(&algebra, a => norm(&a, &x, &r, &seq, prec, &em))
        }
        Command::Decay {
            algebra,
            i,
            r,
            nmax,
        } => generic!(&algebra, a => decay(&a, i, &r, nmax, prec, &em)),
        Command::Sigma { algebra, t } => generic!(&algebra, a => sigmas(&a, &t, prec, &em)),
        Command::WeightsCheck { bound, seq } => {
            let rep = weight_axiom_check(&parse_seq(&seq)?, bound)?;
            em.json("weights-check", &to_value(&rep))?;
            Ok(rep.is_ok())
        }
        Command::Entire {
            algebra,
            r,
            a,
            seq,
            wbound,
        } => {
            let w = adapted_weights(&algebra)?;
            let r = r
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let a = a
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let rep = entire_check(&parse_seq(&seq)?, &w, &r, &a, wbound, prec)?;
            em.json("entire", &to_value(&rep))?;
            Ok(rep.all_convergent())
        }
        Command::Phi {
            algebra,
            sigma,
            tol,
        } => {
            let w = adapted_weights(&algebra)?;
            let s = Ball::from_rational(&parse_rational(&sigma)?, prec);
            let v = growth_function(&s, &w, &parse_rational(&tol)?, prec)?;
            em.json("phi", &to_value(&v))?;
            Ok(true)
        }
        Command::Subpoly {
            algebra,
            train,
            test,
            radius,
        } => {
            let g = group_of(&load_real(&algebra)?)?;
            let s = Sampler::new(g.weights(), radius, seed);
            let rep = subpoly_estimate(&g, train, test, &s, prec)?;
            em.json("subpoly", &to_value(&rep))?;
            Ok(rep.accepted())
        }
        Command::Factorize { algebra, t } => {
            let a = AdaptedAlgebra::from_lower_central_series(&load_real(&algebra)?)?;
            let scheme = CommutatorScheme::build(&a)?;
            let target = GroupElement::new(parse_vec::<Rational>(&t)?);
            let f = word_factorize(&scheme, &target, prec)?;
            let word: Value = serde_json::from_str(&f.word.to_json()).expect("word json");
            em.json(
                "factorize",
                &json!({"word": word, "certificate": f.certificate, "exact": f.exact,
                        "target": target.coords.iter().map(rational_text).collect::<Vec<_>>()}),
            )?;
            Ok(true)
        }
        Command::Normtrick {
            algebra,
            target,
            max_steps,
        } => {
            let g = group_of(&load_real(&algebra)?)?;
            let corcbh = corcbh_constant(&g);
            let target = match target {
                Some(t) => Some(parse_rational(&t)?),
                None => corcbh.clone(),
            };
            match adapted_norm(&g, target.as_ref(), max_steps) {
                Ok(spec) => {
                    em.json(
                        "normtrick",
                        &json!({"epsilon": rational_text(&spec.epsilon),
                                "scales": spec.scales().iter().map(rational_text).collect::<Vec<_>>(),
                                "achieved": rational_text(&spec.achieved),
                                "target": target.as_ref().map(rational_text),
                                "corcbh": corcbh.as_ref().map(rational_text)}),
                    )?;
                    Ok(true)
                }
                Err(e @ Error::SearchExhausted { .. }) => {
                    eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
                    Err(Failure::Check)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Ballbound {
            algebra,
            words,
            max_len,
        } => {
            let g = group_of(&load_real(&algebra)?)?;
            let spec = adapted_norm(&g, corcbh_constant(&g).as_ref(), 64)?;
            let rep = ball_bound_check(&g, &spec, words, max_len, seed);
            em.json(
                "ballbound",
                &json!({"checked": rep.checked, "violations": rep.violations, "seed": seed,
                        "epsilon": rational_text(&spec.epsilon)}),
            )?;
            Ok(rep.is_ok())
        }
        Command::Exptype {
            algebra,
            f,
            r,
            budget,
        } => {
            let w = adapted_weights(&algebra)?;
            let f = CoordPolynomial::from_json(w.len(), &f)?;
            let b = exp_type_norm(&f, &parse_rational(&r)?, &w, budget, seed, prec)?;
            em.json(
                "exptype",
                &json!({"lower": b.lower, "upper": b.upper, "witness": coords_to_json(&b.witness), "seed": seed}),
            )?;
            Ok(b.consistent())
        }
        Command::Report { only } => {
            let summary = if only.is_empty() {
                run_all(seed)
            } else {
                let criteria: Vec<_> = only.iter().filter_map(|&id| run_one(id, seed)).collect();
                if criteria.len() != only.len() {
                    return Err(
                        Error::InvalidArgument("criteria are numbered 1..=12".into()).into(),
                    );
                }
                Summary {
                    seed,
                    passed: criteria.iter().all(|c| c.passed),
                    criteria,
                }
            };
            if em.format(Format::Json) == Format::Csv {
                em.emit("report", Format::Csv, &report_csv(&summary))?;
            } else {
                em.json("report", &to_value(&summary))?;
            }
            Ok(summary.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) | Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(2)
        }
    }
}
