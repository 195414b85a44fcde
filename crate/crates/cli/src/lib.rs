//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it
//! in-process and inspect the exit code and both output streams.

mod examples;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use phantom_arith::{format_rational, parse_poly, parse_rational, BigRational, Fp, QPoly};
use phantom_core::json::{self as cj, AnyForm};
use phantom_core::quadric::{FormField, GenusSource};
use phantom_core::weil::{is_entire, WeilCertificate};
use phantom_core::{
    build_projector, decompose_representation, discriminant, hodge_polygon, is_ordinary,
    is_ordinary_at, is_ordinary_polygon, is_poincare_symmetric, is_weil_polynomial,
    lefschetz_projectors, motive_idempotents, newton_over_hodge, newton_polygon, ordinary_phantom,
    phantom_exists_with, prym_bookkeeping, rank_at, simple_class_from_weil, smooth_fibration_betti,
    tate_twist, verify_decomposition, vial_table, ContainingConvention, CoreError, ErrorClass,
    HodgeNumbers, PhantomDecision, Polygon, PrimePower, SearchOptions, SymmetricFormMatrix,
};
use serde_json::{json, Value};

pub use examples::{builtin_examples, ExampleOutcome, DIAG_F7_JSON, FERMAT_F7_JSON};

/// Default number of projective points the ordinariness search may visit.
pub const DEFAULT_SEARCH_LIMIT: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_SEARCH_LIMIT`].
pub const SEARCH_LIMIT_VAR: &str = "PHANTOM_SEARCH_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "phantom",
    version,
    about = "Weil polynomials, Honda-Tate classes, projectors and quadric bundles"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the point enumeration of quad-ordinary.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyQ {
    /// Polynomial in T, e.g. "T^2 - 2*T + 8" or "(T^2-T+5)^2".
    #[arg(long)]
    poly: String,
    /// The prime power q.
    #[arg(long)]
    q: String,
}

#[derive(Args, Debug)]
struct Input {
    /// JSON input: a file path, or inline JSON starting with '{' or '['.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a polynomial is a q-Weil polynomial.
    WeilCheck(PolyQ),
    /// Substitute T -> q^n T and rescale (Tate twist by n).
    WeilTwist {
        #[command(flatten)]
        pq: PolyQ,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Newton polygon normalized by ord_p(q).
    Newton(PolyQ),
    /// Hodge polygon of a list of Hodge numbers h^{r-j,j}.
    Hodge {
        /// Comma-separated Hodge numbers, e.g. "0,5,5,0".
        #[arg(long)]
        h: String,
    },
    /// Compare Newton and Hodge polygons.
    Compare {
        #[command(flatten)]
        pq: PolyQ,
        #[arg(long)]
        h: String,
    },
    /// Simple isogeny class of an irreducible Weil polynomial.
    HtClass(PolyQ),
    /// Factor a Weil polynomial into simple classes.
    HtDecompose(PolyQ),
    /// Decide whether some abelian variety has exactly this Frobenius polynomial.
    Phantom {
        #[command(flatten)]
        pq: PolyQ,
        /// Hodge numbers of an odd-degree piece; enables the ordinary coniveau test.
        #[arg(long)]
        hodge: Option<String>,
        /// Report e copies of each simple class instead of the ceiling multiplicities.
        #[arg(long)]
        copies: bool,
    },
    /// Cayley-Hamilton idempotent of a morphism of polarized spaces.
    ProjBuild(Input),
    /// Motive idempotents f, g and the target idempotent.
    ProjMotive(Input),
    /// Lefschetz projectors p^{n,r} and s_n.
    Lefschetz {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Discriminant of a symmetric matrix of forms.
    QuadDisc(Input),
    /// Rank and fiber class at a point.
    QuadRank {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Smoothness of the discriminant curve in P^2.
    QuadOrdinary {
        #[command(flatten)]
        input: Input,
        /// Prime at which to reduce a matrix over Q.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Betti numbers of a smooth quadric fibration.
    Betti {
        #[command(flatten)]
        base: Base,
        /// Relative dimension of the fibers.
        #[arg(long)]
        m: u32,
        /// Betti numbers of the double cover of the base (even m).
        #[arg(long)]
        tilde: Option<String>,
    },
    /// Genus, Prym dimension and middle Betti number of a conic-bundle-type quadric bundle.
    Prym {
        #[command(flatten)]
        base: Base,
        /// Degree of the plane discriminant curve.
        #[arg(long, conflicts_with = "genus")]
        delta_degree: Option<u64>,
        /// Genus of the discriminant curve.
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, default_value_t = 0)]
        n: u64,
        /// The double cover of the discriminant is disconnected.
        #[arg(long)]
        disconnected: bool,
        /// Dimension of the base for the summand table (defaults to the Betti vector length).
        #[arg(long)]
        dim_s: Option<u32>,
    },
    /// Run the built-in regression examples.
    PaperExamples,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct Base {
    /// Named base surface: P2, P1xP1 or a point.
    #[arg(long)]
    surface: Option<String>,
    /// Comma-separated Betti numbers of the base.
    #[arg(long)]
    base: Option<String>,
}

/// Exit code and captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Usage(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<phantom_arith::ArithError> for CliError {
    fn from(e: phantom_arith::ArithError) -> Self {
        CliError::Core(e.into())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runtime settings not carried by the arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub search_limit: u64,
}

impl Settings {
    /// Reads [`SEARCH_LIMIT_VAR`] from the process environment.
    pub fn from_env() -> Result<Self, String> {
        Self::from_value(std::env::var(SEARCH_LIMIT_VAR).ok().as_deref())
    }

    pub fn from_value(v: Option<&str>) -> Result<Self, String> {
        let search_limit = match v {
            None => DEFAULT_SEARCH_LIMIT,
            Some(s) => s.trim().parse().map_err(|_| {
                format!("{SEARCH_LIMIT_VAR} must be a nonnegative integer, got {s:?}")
            })?,
        };
        Ok(Settings { search_limit })
    }
}

/// Run the program on `argv` (including the program name) with settings from the environment.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Settings::from_env() {
        Ok(settings) => run_with(argv, &settings),
        Err(msg) => Outcome {
            code: EXIT_VALIDATION,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

pub fn run_with<I, S>(argv: I, settings: &Settings) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli, settings) {
        Ok((value, text)) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&value).expect("serializable");
                s.push('\n');
                s
            } else {
                text
            };
            let code = if matches!(cli.command, Command::PaperExamples)
                && value["failed"].as_u64().is_some_and(|f| f > 0)
            {
                EXIT_PRECONDITION
            } else {
                EXIT_OK
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(err) => {
            let (code, kind, msg) = match &err {
                CliError::Usage(m) => (EXIT_VALIDATION, "validation", m.clone()),
                CliError::Core(e) => {
                    let (code, kind) = exit_code(e.class());
                    (code, kind, e.to_string())
                }
            };
            let stderr = if cli.json {
                format!("{}\n", json!({ "error": msg, "kind": kind }))
            } else {
                format!("error: {msg}\n")
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

/// Exit code and JSON error kind for an error class.
pub fn exit_code(class: ErrorClass) -> (i32, &'static str) {
    match class {
        ErrorClass::Validation => (EXIT_VALIDATION, "validation"),
        ErrorClass::Precondition => (EXIT_PRECONDITION, "precondition"),
        ErrorClass::Budget => (EXIT_BUDGET, "budget"),
    }
}

fn parse_q(s: &str) -> CliResult<PrimePower> {
    Ok(PrimePower::parse(s)?)
}

fn parse_pq(pq: &PolyQ) -> CliResult<(QPoly, PrimePower)> {
    Ok((parse_poly(&pq.poly)?, parse_q(&pq.q)?))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| CliError::Usage(format!("invalid {what} entry {t:?}")))
        })
        .collect()
}

fn parse_hodge(s: &str) -> CliResult<HodgeNumbers> {
    Ok(HodgeNumbers::new(parse_list(s, "Hodge number")?)?)
}

fn read_input(src: &str) -> CliResult<Value> {
    let text = if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else {
        std::fs::read_to_string(src)
            .map_err(|e| CliError::Usage(format!("cannot read {src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid JSON input: {e}")))
}

fn named_surface(name: &str) -> CliResult<Vec<u64>> {
    match name.to_ascii_uppercase().as_str() {
        "P2" => Ok(vec![1, 0, 1, 0, 1]),
        "P1XP1" => Ok(vec![1, 0, 2, 0, 1]),
        "P1" => Ok(vec![1, 0, 1]),
        "POINT" | "PT" => Ok(vec![1]),
        _ => Err(CliError::Usage(format!(
            "unknown surface {name:?}; use P2, P1xP1, P1 or point"
        ))),
    }
}

fn base_betti(b: &Base) -> CliResult<Vec<u64>> {
    match (&b.surface, &b.base) {
        (Some(s), None) => named_surface(s),
        (None, Some(v)) => parse_list(v, "Betti number"),
        (None, None) => named_surface("P2"),
        (Some(_), Some(_)) => Err(CliError::Usage("--surface and --base are exclusive".into())),
    }
}

fn rat_str(x: &BigRational) -> String {
    format_rational(x)
}

fn polygon_text(p: &Polygon) -> String {
    let slopes: Vec<String> = p
        .slopes
        .iter()
        .map(|(s, l)| format!("{} (x{})", rat_str(s), rat_str(l)))
        .collect();
    let verts: Vec<String> = p
        .vertices
        .iter()
        .map(|(x, y)| format!("({}, {})", rat_str(x), rat_str(y)))
        .collect();
    format!(
        "slopes: {}\nvertices: {}\n",
        slopes.join(", "),
        verts.join(" ")
    )
}

fn certificate_json(f: &QPoly, q: &PrimePower, c: &WeilCertificate) -> Value {
    json!({
        "poly": cj::poly(f),
        "q": q.q.to_string(),
        "is_weil": c.is_weil,
        "factors": c.factors.iter().map(|v| json!({
            "factor": cj::poly(&v.factor),
            "multiplicity": v.multiplicity,
            "ok": v.ok,
            "reason": v.reason,
        })).collect::<Vec<_>>(),
    })
}

fn decision_text(d: &PhantomDecision) -> String {
    let mut s = format!("realizable: {}\n", d.realizable);
    for f in &d.factors {
        let _ = writeln!(
            s,
            "  {}  e = {}, required divisor {}, {}",
            f.class.m,
            f.multiplicity,
            f.required,
            if f.ok { "ok" } else { "fails" }
        );
    }
    let list = |v: &[(phantom_core::SimpleIsogenyClass, u64)]| {
        v.iter()
            .map(|(c, k)| format!("A[{}]^{k} (dim {})", c.m, c.d))
            .collect::<Vec<_>>()
            .join(" x ")
    };
    if let Some(w) = &d.witness {
        let _ = writeln!(s, "witness: {}", list(w));
    }
    let _ = writeln!(s, "minimal containing: {}", list(&d.minimal_containing));
    s
}

fn matrix_text(name: &str, m: &phantom_arith::RatMatrix) -> String {
    let mut s = format!("{name} ({}x{}):\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(rat_str).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn parse_point<F: FormField>(
    s: &str,
    conv: impl Fn(&BigRational) -> Option<F>,
) -> CliResult<Vec<F>> {
    s.split(',')
        .map(|t| {
            let r = parse_rational(t.trim())?;
            conv(&r).ok_or_else(|| {
                CliError::Usage(format!("coordinate {t} is not defined in the field"))
            })
        })
        .collect()
}

fn rank_report<F: FormField>(
    q: &SymmetricFormMatrix<F>,
    point: &[F],
) -> CliResult<(Value, String)> {
    let (rank, class) = rank_at(q, point)?;
    let name = format!("{class:?}");
    Ok((
        json!({ "rank": rank, "size": q.size(), "class": name }),
        format!("rank {rank} of {}: {name}\n", q.size()),
    ))
}

fn disc_report<F: FormField>(
    q: &SymmetricFormMatrix<F>,
    field: Value,
    show: impl Fn(&phantom_arith::MultiPoly<F>) -> String,
) -> (Value, String) {
    let delta = discriminant(q);
    let text = show(&delta);
    let degree = delta.total_degree();
    (
        json!({
            "delta": text,
            "degree": degree,
            "expected_degree": q.expected_degree(),
            "zero": delta.is_zero(),
            "field": field,
        }),
        format!(
            "delta = {text}\ndegree: {}\n",
            degree.map_or("-".to_string(), |d| d.to_string())
        ),
    )
}

fn var_names(q: &[String]) -> Vec<&str> {
    q.iter().map(String::as_str).collect()
}

fn dispatch(cli: &Cli, settings: &Settings) -> CliResult<(Value, String)> {
    let opts = SearchOptions {
        point_limit: settings.search_limit,
        jobs: cli.jobs.max(1),
        ..Default::default()
    };
    match &cli.command {
        Command::WeilCheck(pq) => {
            let (f, q) = parse_pq(pq)?;
            let c = is_weil_polynomial(&f, &q)?;
            let mut text = format!(
                "{f} is {}a {}-Weil polynomial\n",
                if c.is_weil { "" } else { "not " },
                q
            );
            for v in &c.factors {
                let _ = writeln!(text, "  ({})^{}: {}", v.factor, v.multiplicity, v.reason);
            }
            Ok((certificate_json(&f, &q, &c), text))
        }
        Command::WeilTwist { pq, n } => {
            let (f, q) = parse_pq(pq)?;
            let g = tate_twist(&f, *n, &q)?;
            let entire = is_entire(&g)?;
            Ok((
                json!({ "poly": cj::poly(&g), "entire": entire, "n": n }),
                format!("{g}\nentire: {entire}\n"),
            ))
        }
        Command::Newton(pq) => {
            let (f, q) = parse_pq(pq)?;
            let np = newton_polygon(&f, &q)?;
            Ok((cj::polygon(&np), polygon_text(&np)))
        }
        Command::Hodge { h } => {
            let hp = hodge_polygon(&parse_hodge(h)?);
            Ok((cj::polygon(&hp), polygon_text(&hp)))
        }
        Command::Compare { pq, h } => {
            let (f, q) = parse_pq(pq)?;
            let np = newton_polygon(&f, &q)?;
            let hp = hodge_polygon(&parse_hodge(h)?);
            let above = newton_over_hodge(&np, &hp)?;
            let ordinary = is_ordinary_polygon(&np, &hp)?;
            Ok((
                json!({
                    "newton": cj::polygon(&np),
                    "hodge": cj::polygon(&hp),
                    "newton_over_hodge": above,
                    "ordinary": ordinary,
                }),
                format!(
                    "Newton\n{}Hodge\n{}Newton on or above Hodge: {above}\nordinary: {ordinary}\n",
                    polygon_text(&np),
                    polygon_text(&hp)
                ),
            ))
        }
        Command::HtClass(pq) => {
            let (f, q) = parse_pq(pq)?;
            let c = simple_class_from_weil(&f, &q)?;
            let invs: Vec<String> = c
                .local_invariants
                .iter()
                .map(|l| rat_str(&l.invariant))
                .collect();
            let slopes: Vec<String> = c.slopes.iter().map(rat_str).collect();
            Ok((
                cj::simple_class(&c),
                format!(
                    "n = {}\nslopes: {}\ninvariants: {}\ne = {}\ndimension = {}\n",
                    c.n,
                    slopes.join(", "),
                    invs.join(", "),
                    c.e,
                    c.d
                ),
            ))
        }
        Command::HtDecompose(pq) => {
            let (f, q) = parse_pq(pq)?;
            let parts = decompose_representation(&f, &q)?;
            let mut text = String::new();
            for (c, k) in &parts {
                let _ = writeln!(
                    text,
                    "({})^{k}: n = {}, e = {}, dimension {}",
                    c.m, c.n, c.e, c.d
                );
            }
            Ok((
                json!(parts
                    .iter()
                    .map(|(c, k)| json!({ "class": cj::simple_class(c), "mult": k }))
                    .collect::<Vec<_>>()),
                text,
            ))
        }
        Command::Phantom { pq, hodge, copies } => {
            let (f, q) = parse_pq(pq)?;
            let conv = if *copies {
                ContainingConvention::Copies
            } else {
                ContainingConvention::Ceiling
            };
            let d = match hodge {
                Some(h) => ordinary_phantom(&f, &q, &parse_hodge(h)?)?,
                None => phantom_exists_with(&f, &q, conv)?,
            };
            Ok((cj::phantom_decision(&d), decision_text(&d)))
        }
        Command::ProjBuild(input) => {
            let p = cj::parse_proj(&read_input(&input.input)?)?;
            let sp = build_projector(&p.gamma, &p.src, &p.tgt)?;
            let rep = verify_decomposition(&sp, &p.gamma, &p.src)?;
            Ok((
                json!({
                    "pi": cj::matrix(&sp.pi),
                    "P": cj::poly(&sp.p),
                    "gamma_prime": cj::matrix(&sp.gamma_prime),
                    "rank_gamma_prime": rep.rank_gamma_prime,
                    "nullity_gamma": rep.nullity_gamma,
                }),
                format!(
                    "{}{}P(x) = {}\nrank(gamma') = {}, nullity(gamma) = {}\n",
                    matrix_text("pi", &sp.pi),
                    matrix_text("gamma'", &sp.gamma_prime),
                    sp.p.to_string().replace('T', "x"),
                    rep.rank_gamma_prime,
                    rep.nullity_gamma
                ),
            ))
        }
        Command::ProjMotive(input) => {
            let p = cj::parse_proj(&read_input(&input.input)?)?;
            let mp = motive_idempotents(&p.gamma, &p.src, &p.tgt)?;
            let trace = mp.idem_target.trace();
            Ok((
                json!({
                    "f": cj::matrix(&mp.f_mat),
                    "g": cj::matrix(&mp.g_mat),
                    "idem_target": cj::matrix(&mp.idem_target),
                    "trace": cj::rational(&trace),
                }),
                format!(
                    "{}{}{}trace = {}\n",
                    matrix_text("f", &mp.f_mat),
                    matrix_text("g", &mp.g_mat),
                    matrix_text("target idempotent", &mp.idem_target),
                    rat_str(&trace)
                ),
            ))
        }
        Command::Lefschetz { input, n } => {
            let ld = cj::parse_lefschetz(&read_input(&input.input)?)?;
            let lp = lefschetz_projectors(&ld, *n)?;
            let mut text = String::new();
            for (r, p) in lp.projectors.iter().enumerate() {
                text.push_str(&matrix_text(&format!("p^{{{n},{r}}}"), p));
            }
            text.push_str(&matrix_text(&format!("s_{n}"), &lp.s));
            Ok((
                json!({
                    "n": n,
                    "projectors": lp.projectors.iter().map(cj::matrix).collect::<Vec<_>>(),
                    "s": cj::matrix(&lp.s),
                }),
                text,
            ))
        }
        Command::QuadDisc(input) => match cj::parse_form(&read_input(&input.input)?)? {
            AnyForm::Q(q) => {
                let names = q.vars().to_vec();
                Ok(disc_report(&q, json!("Q"), |d| {
                    d.to_string_with(&var_names(&names), rat_str)
                        .replace(' ', "")
                }))
            }
            AnyForm::Fp(q, p) => {
                let names = q.vars().to_vec();
                Ok(disc_report(&q, json!({ "Fp": p }), |d| {
                    d.to_string_with(&var_names(&names), |c| c.to_string())
                        .replace(' ', "")
                }))
            }
        },
        Command::QuadRank { input, point } => match cj::parse_form(&read_input(&input.input)?)? {
            AnyForm::Q(q) => rank_report(&q, &parse_point(point, |r| Some(r.clone()))?),
            AnyForm::Fp(q, p) => rank_report(&q, &parse_point(point, |r| Fp::from_rational(r, p))?),
        },
        Command::QuadOrdinary { input, prime } => {
            let form = cj::parse_form(&read_input(&input.input)?)?;
            let r = match (&form, prime) {
                (AnyForm::Fp(q, _), None) => is_ordinary(q, &opts)?,
                (AnyForm::Fp(_, p), Some(x)) if p != x => {
                    return Err(CliError::Usage(format!(
                        "--prime {x} conflicts with the field F_{p}"
                    )))
                }
                (AnyForm::Fp(q, _), Some(_)) => is_ordinary(q, &opts)?,
                (AnyForm::Q(q), Some(p)) => is_ordinary_at(q, *p, &opts)?,
                (AnyForm::Q(_), None) => {
                    return Err(CliError::Usage(
                        "a matrix over Q needs --prime for the reduction".into(),
                    ))
                }
            };
            let mut text = format!(
                "{} at p = {}\n",
                if r.ordinary {
                    "ordinary"
                } else {
                    "not ordinary"
                },
                r.p
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(
                    text,
                    "singular point of the discriminant: ({})",
                    w.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
                );
            }
            Ok((
                json!({
                    "ordinary": r.ordinary,
                    "p": r.p,
                    "witness": r.witness,
                    "points_checked": r.points_checked,
                    "certified": r.certified,
                }),
                text,
            ))
        }
        Command::Betti { base, m, tilde } => {
            let bs = base_betti(base)?;
            let bt = tilde
                .as_deref()
                .map(|t| parse_list::<u64>(t, "Betti number"))
                .transpose()?;
            let bx = smooth_fibration_betti(&bs, *m, bt.as_deref())?;
            let symmetric = is_poincare_symmetric(&bx);
            let mut text = format!(
                "b(X) = ({})\n",
                bx.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            );
            if !symmetric {
                text.push_str("warning: Betti numbers are not Poincare symmetric\n");
            }
            Ok((
                json!({ "betti": bx, "poincare_symmetric": symmetric }),
                text,
            ))
        }
        Command::Prym {
            base,
            delta_degree,
            genus,
            n,
            disconnected,
            dim_s,
        } => {
            let bs = base_betti(base)?;
            let source = match (delta_degree, genus) {
                (Some(d), _) => GenusSource::PlaneDegree(*d),
                (None, Some(g)) => GenusSource::Genus(*g),
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --delta-degree or --genus is required".into(),
                    ))
                }
            };
            let r = prym_bookkeeping(&bs, source, *n, !disconnected)?;
            let dim = dim_s.unwrap_or(((bs.len() - 1) / 2) as u32);
            let table = vial_table(&bs, dim, r.prym_dim)?;
            let mut text = format!(
                "genus: {}\nprym_dim: {}\nmiddle_betti: {} (degree {})\n",
                r.genus, r.prym_dim, r.middle_betti, r.middle_degree
            );
            let _ = writeln!(
                text,
                "summands: {}",
                table
                    .iter()
                    .map(|(k, v)| format!("{k} = {v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            Ok((
                json!({
                    "genus": r.genus,
                    "prym_dim": r.prym_dim,
                    "middle_degree": r.middle_degree,
                    "middle_betti": r.middle_betti,
                    "summands": table.iter().map(|(k, v)| json!({ "name": k, "dim": v })).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Command::PaperExamples => {
            let results = builtin_examples();
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(
                    text,
                    "{:<4} {}{}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                        .as_deref()
                        .map(|d| format!(" ({d})"))
                        .unwrap_or_default()
                );
            }
            let _ = writeln!(text, "{} passed, {failed} failed", results.len() - failed);
            Ok((
                json!({
                    "examples": results.iter().map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail })).collect::<Vec<_>>(),
                    "passed": results.len() - failed,
                    "failed": failed,
                }),
                text,
            ))
        }
    }
}
