//! Command-line driver. `run` parses arguments, writes the report to `out`
//! and diagnostics to `err`, and returns the process exit status:
//! 0 on success, 1 on a domain error (or a failed `verify`), 2 on a parse
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::apcomplex::{approximant_tower, build_collared, build_uncollared};
use crate::confrac::cf_expand;
use crate::cps::{
    origin_vertex, tiling_from_cps, vertices_in_range, CutProjectScheme, WindowConvention,
};
use crate::equivalence::{class_substitutive_witness, diffeo_criterion, soe_tiling_spaces};
use crate::error::{Error, Result};
use crate::exactnum::{parse_decimal, QuadraticNumber};
use crate::hull::{metric_d, psi, return_module, return_vectors, translate, Patch, Tiling};
use crate::render::{cps_picture, tiling_strip};
use crate::substitution::{is_primitive, perron, PerronData, SubstitutionRule};
use crate::verify::{run_all, run_criterion, DEFAULT_SEED};
use crate::words::{sturmian_block, Branch, SturmianParams};

/// Longest word `subst` will print.
const MAX_WORD: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "aperiodic",
    version,
    about = "Exact one-dimensional aperiodic tilings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symbols s_n for from <= n < to.
    Sturmian {
        #[arg(long, allow_hyphen_values = true)]
        alpha: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        rho: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, default_value = "upper")]
        branch: Branch,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Vertices of the cut-and-project set with positions in [lo, hi).
    Cps {
        #[arg(long, allow_hyphen_values = true)]
        alpha: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        rho: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        lo: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        hi: QuadraticNumber,
        /// Which end of the window is closed.
        #[arg(long, default_value = "low")]
        branch: WindowConvention,
        /// Also write the lattice-and-strip picture here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Pixels per lattice unit in the picture.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Iterates a substitution, or finds one for a slope.
    Subst {
        /// Productions such as "a>b; b>ab".
        #[arg(long, required_unless_present = "from_slope")]
        rule: Option<String>,
        #[arg(long)]
        seed: Option<char>,
        #[arg(long, default_value_t = 5)]
        iters: u32,
        /// Certify a substitution tiling space in the class of this slope.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "rule")]
        from_slope: Option<QuadraticNumber>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Continued fraction expansion.
    Cf {
        #[arg(allow_hyphen_values = true)]
        number: QuadraticNumber,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decides strong orbit equivalence of two sturmian tiling spaces.
    Equiv {
        #[arg(allow_hyphen_values = true, conflicts_with = "alpha")]
        x: Option<QuadraticNumber>,
        #[arg(allow_hyphen_values = true, requires = "x")]
        y: Option<QuadraticNumber>,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        alpha: Option<QuadraticNumber>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<QuadraticNumber>,
        /// Also certify a substitution tiling space in the class of alpha.
        #[arg(long)]
        certificate: bool,
        /// Classify the torus map of the integer matrix "a b c d" instead.
        #[arg(long, conflicts_with_all = ["x", "alpha"])]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certified bounds on the tiling distance.
    Metric {
        /// JSON tiling spec or a path to one.
        a: String,
        b: String,
        #[arg(long, default_value = "1e-6")]
        tol: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Return module of a patch of a sturmian tiling, in Hermite normal form.
    ReturnModule {
        #[arg(long, allow_hyphen_values = true)]
        alpha: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true)]
        rho: QuadraticNumber,
        #[arg(long, default_value = "upper")]
        branch: Branch,
        /// Number of tiles searched, split evenly around the origin.
        #[arg(long, default_value_t = 10_000)]
        tiles: u32,
        /// Tiles in the patch starting at the origin tile.
        #[arg(long, default_value_t = 1)]
        patch: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Anderson-Putnam graph of a substitution.
    Ap {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        collared: bool,
        /// Also report the n-fold composite of the self-map.
        #[arg(long)]
        tower: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// SVG strip of a tiling, or the lattice picture of a cps spec.
    Render {
        /// JSON tiling spec or a path to one.
        spec: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-10")]
        lo: QuadraticNumber,
        #[arg(long, allow_hyphen_values = true, default_value = "10")]
        hi: QuadraticNumber,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Draw the lattice, strip and staircase (cps specs only).
        #[arg(long)]
        staircase: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Runs the acceptance criteria.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// An exact number in a JSON spec: either a literal such as `"sqrt(2) - 1"`
/// or the object form `{"rat": .., "surd": .., "D": ..}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Text(String),
    Exact(QuadraticNumber),
}

impl Num {
    fn value(self) -> Result<QuadraticNumber> {
        match self {
            Num::Text(s) => s.parse(),
            Num::Exact(q) => Ok(q),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum TilingKind {
    /// Lengths default to `(1, alpha)`.
    Sturmian {
        alpha: Num,
        rho: Num,
        #[serde(default)]
        branch: Branch,
    },
    Cps {
        alpha: Num,
        rho: Num,
        #[serde(default)]
        convention: WindowConvention,
    },
    Subst {
        rule: String,
    },
    /// Unit lengths unless given, one per letter in order of appearance.
    Periodic {
        word: String,
        #[serde(default)]
        lengths: Option<Vec<Num>>,
    },
}

#[derive(Debug, Deserialize)]
struct TilingSpec {
    #[serde(flatten)]
    kind: TilingKind,
    #[serde(default)]
    translate: Option<Num>,
}

enum Built {
    Plain(Tiling),
    Cps(Box<CutProjectScheme>, Tiling),
}

impl Built {
    fn tiling(&self) -> &Tiling {
        match self {
            Built::Plain(t) | Built::Cps(_, t) => t,
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.column(), format!("invalid tiling spec: {e}"))
}

fn read_spec(arg: &str) -> Result<TilingSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(json_error)
}

fn build(spec: TilingSpec) -> Result<Built> {
    let built = match spec.kind {
        TilingKind::Sturmian { alpha, rho, branch } => Built::Plain(psi(&SturmianParams::new(
            alpha.value()?,
            rho.value()?,
            branch,
        )?)),
        TilingKind::Cps {
            alpha,
            rho,
            convention,
        } => {
            let s = CutProjectScheme::new(alpha.value()?, rho.value()?, convention)?;
            let t = tiling_from_cps(&s)?;
            Built::Cps(Box::new(s), t)
        }
        TilingKind::Subst { rule } => Built::Plain(Tiling::substitution(&rule.parse()?)?),
        TilingKind::Periodic { word, lengths } => {
            let mut alphabet: Vec<char> = Vec::new();
            for c in word.chars() {
                if !alphabet.contains(&c) {
                    alphabet.push(c);
                }
            }
            let letters = word
                .chars()
                .map(|c| {
                    alphabet
                        .iter()
                        .position(|&a| a == c)
                        .expect("collected above") as u8
                })
                .collect();
            let lengths = match lengths {
                Some(ls) => ls.into_iter().map(Num::value).collect::<Result<Vec<_>>>()?,
                None => vec![QuadraticNumber::one(); alphabet.len()],
            };
            Built::Plain(Tiling::periodic(
                letters,
                alphabet,
                lengths,
                QuadraticNumber::zero(),
            )?)
        }
    };
    Ok(match spec.translate {
        None => built,
        Some(x) => {
            let x = x.value()?;
            match built {
                Built::Plain(t) => Built::Plain(translate(&t, &x)),
                Built::Cps(s, t) => Built::Cps(s, translate(&t, &x)),
            }
        }
    })
}

fn unsupported(format: Format, cmd: &str) -> Error {
    Error::parse(
        0,
        format!("{cmd} does not support --format {format:?}").to_lowercase(),
    )
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// The text report and whether the command succeeded.
fn execute(cmd: Command) -> Result<(String, bool)> {
    let text = match cmd {
        Command::Sturmian {
            alpha,
            rho,
            from,
            to,
            branch,
            format,
        } => {
            let p = SturmianParams::new(alpha, rho, branch)?;
            let w = sturmian_block(&p, from, to);
            match format {
                Format::Text if w.is_empty() => String::new(),
                Format::Text => format!("{w}\n"),
                Format::Json => pretty(&json!({ "params": p, "word": w })),
                f => return Err(unsupported(f, "sturmian")),
            }
        }
        Command::Cps {
            alpha,
            rho,
            lo,
            hi,
            branch,
            svg,
            scale,
            format,
        } => {
            let s = CutProjectScheme::new(alpha, rho, branch)?;
            let verts = vertices_in_range(&s, &lo, &hi)?;
            if let Some(path) = &svg {
                write_file(path, &cps_picture(&s, &lo, &hi, scale)?)?;
            }
            match format {
                Format::Text => verts
                    .points
                    .iter()
                    .map(|&p| {
                        let x = s.position(p);
                        format!("{} {} {} {:.12}\n", p.0, p.1, x, x.to_f64())
                    })
                    .collect(),
                Format::Json => {
                    let vertices: Vec<Value> = verts
                        .points
                        .iter()
                        .map(|&p| {
                            let x = s.position(p);
                            json!({ "lattice": [p.0, p.1], "position": x, "approx": x.to_f64() })
                        })
                        .collect();
                    let v0 = origin_vertex(&s);
                    pretty(&json!({
                        "scheme": s,
                        "sturmian": s.sturmian_params(),
                        "origin_vertex": [v0.0, v0.1],
                        "vertices": vertices,
                    }))
                }
                Format::Svg => cps_picture(&s, &lo, &hi, scale)?,
                f => return Err(unsupported(f, "cps")),
            }
        }
        Command::Subst {
            rule,
            seed,
            iters,
            from_slope,
            format,
        } => {
            if let Some(alpha) = from_slope {
                let c = class_substitutive_witness(&alpha)?;
                return Ok((
                    match format {
                        Format::Text => format!(
                            "rule: {}\nbeta: {}\ncf(1/beta): {}\nlambda: {}\npisot: {}\n",
                            c.rule, c.beta, c.reciprocal_cf, c.lambda, c.pisot
                        ),
                        Format::Json => pretty(&to_value(&c)),
                        f => return Err(unsupported(f, "subst")),
                    },
                    true,
                ));
            }
            let rule: SubstitutionRule = rule.expect("clap requires a rule").parse()?;
            let seed = match seed {
                Some(c) => rule.letter_index(c).ok_or_else(|| {
                    Error::parse(0, format!("seed {c:?} is not a letter of the rule"))
                })?,
                None => 0,
            };
            let mut w = vec![seed];
            for _ in 0..iters {
                w = rule.apply_letters(&w);
                if w.len() > MAX_WORD {
                    return Err(Error::OutOfRange {
                        value: format!("{iters} iterations"),
                        range: format!("words of at most {MAX_WORD} letters"),
                    });
                }
            }
            let word = rule.render(&w);
            match format {
                Format::Text => format!("{word}\n"),
                Format::Json => {
                    let (primitive, _) = is_primitive(&rule);
                    let lambda = if primitive {
                        match perron(&rule)? {
                            PerronData::Exact { lambda, lengths } => {
                                json!({ "lambda": lambda, "lengths": lengths })
                            }
                            pd => json!({ "lambda_approx": pd.lambda_f64() }),
                        }
                    } else {
                        Value::Null
                    };
                    pretty(&json!({
                        "rule": rule.to_string(),
                        "seed": rule.alphabet()[seed as usize].to_string(),
                        "iters": iters,
                        "word": word,
                        "length": w.len(),
                        "primitive": primitive,
                        "perron": lambda,
                    }))
                }
                f => return Err(unsupported(f, "subst")),
            }
        }
        Command::Cf { number, format } => {
            let cf = cf_expand(&number);
            match format {
                Format::Text => format!("{cf}\n"),
                Format::Json => pretty(&cf.to_json()),
                f => return Err(unsupported(f, "cf")),
            }
        }
        Command::Equiv {
            x,
            y,
            alpha,
            beta,
            certificate,
            matrix,
            format,
        } => {
            if let Some(m) = matrix {
                let entries: Vec<num_bigint::BigInt> = m
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse()
                            .map_err(|_| Error::parse(0, format!("not an integer: {s:?}")))
                    })
                    .collect::<Result<_>>()?;
                let entries: [num_bigint::BigInt; 4] = entries
                    .try_into()
                    .map_err(|_| Error::parse(0, "expected four matrix entries"))?;
                let class = diffeo_criterion(&entries);
                return Ok((
                    match format {
                        Format::Text => {
                            format!("{}\n", to_value(&class).as_str().expect("unit variant"))
                        }
                        Format::Json => pretty(
                            &json!({ "matrix": entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(), "class": class }),
                        ),
                        f => return Err(unsupported(f, "equiv")),
                    },
                    true,
                ));
            }
            let (a, b) = match (x.or(alpha), y.or(beta)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::parse(0, "equiv needs two numbers")),
            };
            let v = soe_tiling_spaces(&a, &b)?;
            let cert = if certificate {
                Some(class_substitutive_witness(&a)?)
            } else {
                None
            };
            match format {
                Format::Text => {
                    let mut s = String::new();
                    if let Some(w) = &v.witness {
                        s += &format!(
                            "equivalent\nwitness: {w}\nperiod: {}\n",
                            period(&v.route.alpha_cf)
                        );
                    } else {
                        s += &format!(
                            "not equivalent\nalpha: {}\nbeta: {}\n",
                            v.route.alpha_cf, v.route.beta_cf
                        );
                    }
                    if let Some(c) = &cert {
                        s += &format!(
                            "substitution: {}\nbeta': {}\nlambda: {}\n",
                            c.rule, c.beta, c.lambda
                        );
                    }
                    s
                }
                Format::Json => pretty(&json!({ "verdict": v, "certificate": cert })),
                f => return Err(unsupported(f, "equiv")),
            }
        }
        Command::Metric { a, b, tol, format } => {
            let tol = parse_decimal(&tol)?;
            let (ta, tb) = (build(read_spec(&a)?)?, build(read_spec(&b)?)?);
            let d = metric_d(ta.tiling(), tb.tiling(), &tol)?;
            match format {
                Format::Text => format!(
                    "lower: {} ~ {:.12}\nupper: {} ~ {:.12}\n",
                    d.lower,
                    d.lower.to_f64(),
                    d.upper,
                    d.upper.to_f64()
                ),
                Format::Json => pretty(&to_value(&d)),
                f => return Err(unsupported(f, "metric")),
            }
        }
        Command::ReturnModule {
            alpha,
            rho,
            branch,
            tiles,
            patch,
            format,
        } => {
            let p = SturmianParams::new(alpha, rho, branch)?;
            let t = psi(&p);
            let patch = Patch {
                tiles: t.tiles(0, patch.max(1) as i64),
            };
            let radius = t.tile_start((tiles / 2).max(1) as i64);
            let vectors = return_vectors(&t, &patch, &radius)?;
            let r = return_module(&vectors, p.alpha())?;
            match format {
                Format::Text => {
                    let gens: Vec<String> = r.generators().iter().map(|g| g.to_string()).collect();
                    let rows: Vec<String> = r
                        .basis()
                        .iter()
                        .map(|[i, j]| format!("({i}, {j})"))
                        .collect();
                    format!(
                        "return vectors: {}\nbasis (1, alpha) coordinates: {}\ngenerators: {}\nfull lattice: {}\n",
                        vectors.len(),
                        rows.join(" "),
                        gens.join(", "),
                        r.is_full_lattice()
                    )
                }
                Format::Json => pretty(&json!({ "return_vectors": vectors.len(), "module": r })),
                f => return Err(unsupported(f, "return-module")),
            }
        }
        Command::Ap {
            rule,
            collared,
            tower,
            format,
        } => {
            let rule: SubstitutionRule = rule.parse()?;
            let g = if collared {
                build_collared(&rule)?
            } else {
                build_uncollared(&rule)?
            };
            match format {
                Format::Dot => g.to_dot(),
                Format::Json => pretty(&json!({
                    "graph": g,
                    "betti1": g.betti1(),
                    "tower": tower.map(|n| approximant_tower(&g, n)),
                })),
                Format::Text => format!(
                    "vertices: {}\nedges: {}\nbetti1: {}\n",
                    g.vertex_count,
                    g.edges.len(),
                    g.betti1()
                ),
                f => return Err(unsupported(f, "ap")),
            }
        }
        Command::Render {
            spec,
            lo,
            hi,
            scale,
            staircase,
            output,
        } => {
            let built = build(read_spec(&spec)?)?;
            let svg = match (&built, staircase) {
                (Built::Cps(s, _), true) => cps_picture(s, &lo, &hi, scale)?,
                (_, true) => return Err(Error::parse(0, "--staircase needs a cps spec")),
                (b, false) => tiling_strip(b.tiling(), &lo, &hi, scale)?,
            };
            match output {
                Some(path) => {
                    write_file(&path, &svg)?;
                    String::new()
                }
                None => svg,
            }
        }
        Command::Verify {
            seed,
            criterion,
            format,
        } => {
            let reports = match criterion {
                Some(id) => vec![run_criterion(id as usize, seed)],
                None => run_all(seed),
            };
            let ok = reports.iter().all(|r| r.passed);
            let text = match format {
                Format::Text => {
                    let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
                    let passed = reports.iter().filter(|r| r.passed).count();
                    s += &format!("{passed}/{} criteria passed\n", reports.len());
                    s
                }
                Format::Json => pretty(&json!({ "seed": seed, "criteria": reports })),
                f => return Err(unsupported(f, "verify")),
            };
            return Ok((text, ok));
        }
    };
    Ok((text, true))
}

fn period(cf: &crate::confrac::ContinuedFraction) -> String {
    let p: Vec<String> = cf.period().iter().map(|q| q.to_string()).collect();
    format!("({})", p.join(", "))
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code() as u8;
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, ok)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}
