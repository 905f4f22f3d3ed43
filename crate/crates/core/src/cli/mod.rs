//! Command line front end: JSON documents in, verification reports out.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for unreadable or schema-invalid input.

mod commands;
pub mod input;
pub mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::conventions::Conventions;
use crate::scalar::{ScalarMode, DEFAULT_EPSILON, Q};
pub use input::{parse_document, InputDocument, InputError};
pub use report::{Report, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

#[derive(Parser, Debug)]
#[command(name = "kpoisson", version, about = "Verify polysymplectic and k-poly-Poisson structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Joint nondegeneracy of a polyform.
    CheckPolysymplectic(Args),
    /// Poly-Poisson structure `S = Im ω♭`, `Λ♯ = (ω♭)⁻¹`.
    FromPolysymplectic(Args),
    /// Dirac-type structure of a subspace.
    Dirac(Args),
    /// Whitney sum of an algebroid dual at a point.
    Whitney(Args),
    /// The structure on `(g*)ᵏ` at `μ⃗`.
    Gstar(Args),
    /// Jacobi identity and the section-level integrability identity.
    Integrability(Args),
    /// Polysymplectic form of the k-coadjoint orbit.
    OrbitForm(Args),
    /// Pointwise polysymplectic reduction.
    Reduce(Args),
    /// Reduction of the k-covelocities of a Lie group.
    CotangentGroup(Args),
    /// Reduction of a trivial principal bundle against the Atiyah model.
    PrincipalLocal(Args),
    /// Randomized cross-construction comparisons with a single sign ledger.
    Crosscheck(Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckPolysymplectic(_) => "check-polysymplectic",
            Command::FromPolysymplectic(_) => "from-polysymplectic",
            Command::Dirac(_) => "dirac",
            Command::Whitney(_) => "whitney",
            Command::Gstar(_) => "gstar",
            Command::Integrability(_) => "integrability",
            Command::OrbitForm(_) => "orbit-form",
            Command::Reduce(_) => "reduce",
            Command::CotangentGroup(_) => "cotangent-group",
            Command::PrincipalLocal(_) => "principal-local",
            Command::Crosscheck(_) => "crosscheck",
        }
    }

    pub fn args(&self) -> &Args {
        match self {
            Command::CheckPolysymplectic(a)
            | Command::FromPolysymplectic(a)
            | Command::Dirac(a)
            | Command::Whitney(a)
            | Command::Gstar(a)
            | Command::Integrability(a)
            | Command::OrbitForm(a)
            | Command::Reduce(a)
            | Command::CotangentGroup(a)
            | Command::PrincipalLocal(a)
            | Command::Crosscheck(a) => a,
        }
    }

    /// Subcommands built on structure constants default to exact arithmetic.
    fn exact_by_default(&self) -> bool {
        matches!(
            self,
            Command::Whitney(_)
                | Command::Gstar(_)
                | Command::Integrability(_)
                | Command::OrbitForm(_)
                | Command::CotangentGroup(_)
                | Command::PrincipalLocal(_)
                | Command::Crosscheck(_)
        )
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    Coadjoint,
    Interior,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Args {
    /// Input document (`-` for stdin).
    pub input: Option<String>,
    #[arg(long, value_enum)]
    pub scalar: Option<ScalarArg>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Comparison target.
    #[arg(long)]
    pub crosscheck: Option<String>,
    /// Number of random samples.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lie algebra document or bundled name (so3, heisenberg3, abelianN, sl2, non_jacobi).
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Momenta as a JSON list of lists.
    #[arg(long)]
    pub mu: Option<String>,
    /// Base momenta for `principal-local`, as a JSON list of lists.
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long = "m-base")]
    pub m_base: Option<usize>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
}

impl Args {
    fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("scalar", self.scalar.map(|s| format!("{s:?}").to_lowercase()));
        put("epsilon", self.epsilon.map(|e| format!("{e:e}")));
        put("crosscheck", self.crosscheck.clone());
        put("samples", self.samples.map(|s| s.to_string()));
        put("seed", self.samples.map(|_| self.seed.to_string()));
        put("algebra", self.algebra.clone());
        put("k", self.k.map(|k| k.to_string()));
        put("mu", self.mu.clone());
        put("point", self.point.clone());
        put("m-base", self.m_base.map(|m| m.to_string()));
        put("convention", self.convention.map(|c| format!("{c:?}").to_lowercase()));
        m
    }

    pub fn conventions(&self) -> Conventions {
        match self.convention {
            Some(ConventionArg::Interior) => Conventions::INTERIOR,
            _ => Conventions::COADJOINT,
        }
    }
}

/// Reads the document, resolves the scalar mode and runs the subcommand.
pub fn run(command: &Command) -> Report {
    let args = command.args();
    let conv = args.conventions();
    let (doc, base_dir, read_err) = match &args.input {
        None => (None, PathBuf::from("."), None),
        Some(path) => match read_input(path) {
            Ok(text) => match parse_document(&text) {
                Ok(doc) => (Some(doc), parent_dir(path), None),
                Err(e) => (None, PathBuf::from("."), Some(e.to_string())),
            },
            Err(e) => (None, PathBuf::from("."), Some(e)),
        },
    };
    let mode = match resolve_mode(command, doc.as_ref()) {
        Ok(m) => m,
        Err(e) => {
            let fallback = ScalarMode::Exact;
            return Report::new(command.name(), args.input.clone(), args.echo(), fallback, conv).input_error(e);
        }
    };
    let report = Report::new(command.name(), args.input.clone(), args.echo(), mode, conv);
    if let Some(e) = read_err {
        return report.input_error(e);
    }
    let ctx = commands::Ctx {
        command,
        args,
        conv,
        doc,
        base_dir,
    };
    match mode {
        ScalarMode::Exact => commands::execute::<Q>(&ctx, mode.tol(), report),
        ScalarMode::Float { .. } => commands::execute::<f64>(&ctx, mode.tol(), report),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn parent_dir(path: &str) -> PathBuf {
    if path == "-" {
        return PathBuf::from(".");
    }
    Path::new(path).parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

fn resolve_mode(command: &Command, doc: Option<&InputDocument>) -> Result<ScalarMode, String> {
    let args = command.args();
    let doc_scalar = doc.and_then(|d| d.scalar.as_ref());
    let exact = match (args.scalar, doc_scalar) {
        (Some(s), _) => s == ScalarArg::Exact,
        (None, Some(s)) => match s.mode.as_str() {
            "exact" => true,
            "float" => false,
            other => return Err(format!("at `scalar.mode`: unknown mode {other:?}")),
        },
        (None, None) => command.exact_by_default(),
    };
    if exact {
        return Ok(ScalarMode::Exact);
    }
    let epsilon = match (args.epsilon, doc_scalar.and_then(|s| s.epsilon.as_ref())) {
        (Some(e), _) => e,
        (None, Some(e)) => e
            .0
            .parse::<f64>()
            .map_err(|_| format!("at `scalar.epsilon`: cannot parse {:?}", e.0))?,
        (None, None) => DEFAULT_EPSILON,
    };
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(format!("epsilon must be a nonnegative real, got {epsilon}"));
    }
    Ok(ScalarMode::Float { epsilon })
}

/// Renders the report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}
