//! Command-line front end. Every verb prints one pretty JSON document on
//! stdout; failures print a one-line JSON object on stderr.
//!
//! Exit codes: 0 success, 1 domain error, 2 parse error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::algebra::{homology, relative_complex, simplicial_chain_complex, Ring};
use crate::assembly::{assemble_over_cover, restrict_scalars, validate_cover, CoverSpec};
use crate::delta::{json as delta_json, DeltaSet, SimplexCategory, SubDeltaSet};
use crate::duality::{chain_dual_x, cochain_oracle, cohomology_via_dual, double_dual_check};
use crate::error::Error;
use crate::fixtures;
use crate::functor::delta_prime_as_xcomplex;
use crate::subdivision::{
    homology_manifold_check, image_pair_homology, star_homology, Subdivision,
};
use crate::total::{constant_tot_isomorphism, tot_assembled, FunctorComplex};

#[derive(Parser, Debug)]
#[command(
    name = "deltacx",
    version,
    about = "Chain-level algebra over finite Δ-sets"
)]
pub struct Cli {
    /// Add human-readable commentary on stderr.
    #[arg(long, global = true)]
    pub describe: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// A Δ-set JSON file, or `fixture:NAME`.
    pub input: String,
}

#[derive(Args, Debug, Clone)]
pub struct RingArg {
    /// Coefficients: Z or Z/p.
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the simplicial identities.
    Validate(Input),
    /// Counts, Euler characteristic and labels.
    Info(Input),
    /// Barycentric subdivision.
    Subdivide {
        #[command(flatten)]
        input: Input,
        /// Print only the simplex counts.
        #[arg(long)]
        counts: bool,
    },
    /// The dual cell of a simplex and its boundary.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        simplex: String,
        /// Include the relative homology of the dual pair and its image.
        #[arg(long)]
        homology: bool,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Homology of the open star of a simplex.
    Star {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        simplex: String,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Simplicial homology, optionally relative to the closure of some simplices.
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ring: RingArg,
        /// Labels whose closure is the subcomplex.
        #[arg(long, num_args = 1..)]
        pair: Option<Vec<String>>,
    },
    /// Cohomology of the subdivision through the chain duality.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Local homology of every star against ℤ in one degree.
    ManifoldCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: i64,
    },
    /// The assembled total complex.
    Tot {
        #[command(flatten)]
        input: Input,
        /// Use the constant functor instead of the subdivision complex.
        #[arg(long)]
        constant: bool,
        #[command(flatten)]
        ring: RingArg,
    },
    /// The chain dual of the subdivision complex.
    ChainDual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Assemble the subdivision complex of the base over a regular cover.
    Assemble {
        /// A cover JSON file, or `fixture:cyclic-cover-N`.
        #[arg(long)]
        cover: String,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            kind: "parse",
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind, "message": self.message})
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (2, "parse"),
            Error::Malformed { .. } => (1, "malformed"),
            Error::UnknownFixture(_) => (1, "unknown-fixture"),
            Error::UnknownSimplex(_) => (1, "unknown-simplex"),
            Error::UnsupportedRing(_) | Error::RingMismatch(..) => (1, "ring"),
            Error::InvalidCover(_) | Error::InvalidAction(_) => (1, "cover"),
            _ => (1, "domain"),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_text(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))
}

/// `fixture:NAME` or a JSON file.
pub fn load_delta(input: &str) -> std::result::Result<DeltaSet, Failure> {
    match input.strip_prefix("fixture:") {
        Some(name) => Ok(fixtures::by_name(name)?),
        None => Ok(delta_json::parse(&read_text(input)?)?),
    }
}

pub fn load_cover(input: &str) -> std::result::Result<CoverSpec, Failure> {
    match input.strip_prefix("fixture:") {
        Some(name) => Ok(fixtures::cover_by_name(name)?),
        None => Ok(CoverSpec::from_json(&read_text(input)?)?),
    }
}

fn valid_delta(input: &str) -> std::result::Result<DeltaSet, Failure> {
    let x = load_delta(input)?;
    x.ensure_valid()?;
    Ok(x)
}

fn ring(arg: &RingArg) -> std::result::Result<Ring, Failure> {
    let r: Ring = arg
        .ring
        .parse()
        .map_err(|e: Error| Failure::parse(e.to_string()))?;
    r.ensure_scalar()?;
    Ok(r)
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn labels(x: &DeltaSet) -> Value {
    let mut m = Map::new();
    for (n, _) in x.counts().iter().enumerate() {
        m.insert(n.to_string(), json!(x.labels(n)));
    }
    Value::Object(m)
}

/// Run one command; the JSON value for stdout and commentary for `--describe`.
pub fn execute(command: &Command) -> std::result::Result<(Value, String), Failure> {
    let out = match command {
        Command::Validate(i) => {
            let x = load_delta(&i.input)?;
            let report = x.validate();
            let note = if report.is_ok() {
                "all simplicial identities hold".to_string()
            } else {
                format!("{} simplicial identities fail", report.violations.len())
            };
            return Ok((
                json!({"valid": report.is_ok(), "violations": value(&report.violations)}),
                note,
            ));
        }
        Command::Info(i) => {
            let x = valid_delta(&i.input)?;
            json!({
                "counts": x.counts(),
                "dimension": x.top_dim(),
                "euler_characteristic": x.euler_characteristic(),
                "labels": labels(&x),
            })
        }
        Command::Subdivide { input, counts } => {
            let x = valid_delta(&input.input)?;
            let sub = Subdivision::new(&x);
            if *counts {
                json!(sub.delta().counts())
            } else {
                delta_json::to_value(sub.delta())
            }
        }
        Command::Dual {
            input,
            simplex,
            homology: with_homology,
            ring: r,
        } => dual(&input.input, simplex, *with_homology, r)?,
        Command::Star {
            input,
            simplex,
            ring: r,
        } => {
            let x = valid_delta(&input.input)?;
            let s = x.require(simplex)?;
            let h = star_homology(&x, s, ring(r)?)?;
            json!({"simplex": simplex, "dim": s.dim, "homology": value(&h)})
        }
        Command::Homology {
            input,
            ring: r,
            pair,
        } => {
            let x = valid_delta(&input.input)?;
            let r = ring(r)?;
            let c = match pair {
                None => simplicial_chain_complex(&x, r),
                Some(list) => {
                    let refs = list
                        .iter()
                        .map(|l| x.require(l))
                        .collect::<crate::Result<Vec<_>>>()?;
                    relative_complex(&x, &SubDeltaSet::closure(&x, refs), r)?
                }
            };
            json!({"ring": r, "euler_characteristic": c.euler_characteristic(), "homology": value(&homology(&c)?)})
        }
        Command::Cohomology { input, ring: r } => {
            let x = valid_delta(&input.input)?;
            let r = ring(r)?;
            let via_dual = cohomology_via_dual(&x, r)?;
            let oracle = cochain_oracle(&x, r)?;
            json!({
                "ring": r,
                "grading": "cochain",
                "cohomology": value(&via_dual),
                "agrees_with_cochains": via_dual.is_isomorphic(&oracle),
            })
        }
        Command::ManifoldCheck { input, dim } => {
            let x = valid_delta(&input.input)?;
            value(&homology_manifold_check(&x, *dim)?)
        }
        Command::Tot {
            input,
            constant,
            ring: r,
        } => {
            let x = valid_delta(&input.input)?;
            let r = ring(r)?;
            if *constant {
                let cat = std::sync::Arc::new(SimplexCategory::new(&x));
                let t = tot_assembled(&FunctorComplex::constant(cat, r));
                json!({
                    "functor": "constant",
                    "complex": t.to_json(),
                    "homology": value(&homology(&t)?),
                    "sign_isomorphism": constant_tot_isomorphism(&x, r).is_ok(),
                })
            } else {
                let c = delta_prime_as_xcomplex(&Subdivision::new(&x), r);
                let t = tot_assembled(&FunctorComplex::from_induced(&c)?);
                let (ht, ha) = (homology(&t)?, homology(&c.assemble())?);
                json!({
                    "functor": "subdivision",
                    "complex": t.to_json(),
                    "homology": value(&ht),
                    "matches_assembly": ht.is_isomorphic(&ha),
                })
            }
        }
        Command::ChainDual { input, ring: r } => {
            let x = valid_delta(&input.input)?;
            let r = ring(r)?;
            let c = delta_prime_as_xcomplex(&Subdivision::new(&x), r);
            let t = chain_dual_x(&c)?;
            let mut ranks = Map::new();
            for s in x.simplices() {
                let per: Map<String, Value> = t
                    .degrees()
                    .filter(|&n| t.object(n).rank(s) > 0)
                    .map(|n| (n.to_string(), json!(t.object(n).rank(s))))
                    .collect();
                ranks.insert(x.label(s).to_string(), Value::Object(per));
            }
            let check = double_dual_check(&c)?;
            json!({
                "ring": r,
                "ranks": ranks,
                "homology": value(&homology(&t.assemble())?),
                "double_dual": check.verdict,
            })
        }
        Command::Assemble { cover } => {
            let c = load_cover(cover)?;
            let report = validate_cover(&c);
            if !report.ok {
                return Err(Error::InvalidCover(report.failures.join("; ")).into());
            }
            let x = delta_prime_as_xcomplex(&Subdivision::new(&c.base), Ring::Integers);
            let a = assemble_over_cover(&x, &c)?;
            let r = restrict_scalars(&a);
            json!({
                "group_order": c.group().order(),
                "complex": a.to_json(),
                "restricted_ranks": r.ranks(),
                "restricted_homology": value(&homology(&r)?),
            })
        }
    };
    let note = describe(command, &out);
    Ok((out, note))
}

fn dual(input: &str, simplex: &str, with_homology: bool, r: &RingArg) -> Outcome {
    let x = valid_delta(input)?;
    let s = x.require(simplex)?;
    let sub = Subdivision::new(&x);
    let d = sub.dual(s);
    let mut out = json!({
        "simplex": simplex,
        "counts": d.delta.counts(),
        "boundary_counts": d.boundary.counts(),
        "labels": labels(&d.delta),
    });
    if with_homology {
        let r = ring(r)?;
        out["homology"] = value(&d.relative_homology(r)?);
        out["image_homology"] = value(&image_pair_homology(&sub, &d, r)?);
    }
    Ok(out)
}

fn describe(command: &Command, out: &Value) -> String {
    match command {
        Command::Subdivide { .. } => "simplex counts of the barycentric subdivision".into(),
        Command::Dual { simplex, .. } => {
            format!("dual cell of {simplex}; boundary = chains not starting at the identity")
        }
        Command::Star { simplex, .. } => format!("local homology at {simplex}, graded by the star"),
        Command::Homology { .. } | Command::Cohomology { .. } => {
            "free rank and torsion per degree".into()
        }
        Command::ManifoldCheck { dim, .. } => format!(
            "every star must have homology Z in degree {dim}; verdict {}",
            out["verdict"]
        ),
        Command::Tot { .. } => "total complex assembled over all simplices".into(),
        Command::ChainDual { .. } => "ranks of the dual per simplex, in chain grading".into(),
        Command::Assemble { .. } => {
            "group-ring entries are coefficient vectors indexed by powers of the generator".into()
        }
        Command::Validate(_) | Command::Info(_) => String::new(),
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            let _ = writeln!(stderr, "{}", Failure::parse(first).to_json());
            return 2;
        }
    };
    match execute(&cli.command) {
        Ok((out, note)) => {
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&out).expect("JSON values print")
            );
            if cli.describe && !note.is_empty() {
                let _ = writeln!(stderr, "{note}");
            }
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.to_json());
            f.code
        }
    }
}
