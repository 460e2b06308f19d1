//! The `symcone` command-line tool.
//!
//! Models are given as `@name` (see `symcone catalog list`) or as a path to a
//! JSON model file. Exit codes: 0 success, 1 internal error, 2 invalid input or
//! model, 3 a falsified vanishing check.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use symcone::invariants::{betti, cohomology_table, lefschetz_ranks, semicharacteristics, verify_vanishing, Verdict};
use symcone::modelfile::{load_model, parse_model, ModelFile};
use symcone::spectral::build_bundle;
use symcone::{catalog, ConeComplex, Error, Model};

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "symcone",
    version,
    about = "Exact filtered symplectic cohomology of finite models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report to PATH (`-` for stdout, replacing the text output)
    #[arg(long, global = true, visible_alias = "out", value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structural invariants of a model
    Validate { model: String },
    /// de Rham Betti numbers and ranks of [omega^(p+1)]
    Betti {
        #[arg(short = 'p', default_value_t = 1)]
        p: usize,
        model: String,
    },
    /// Filtered Betti numbers by the cone and by the long exact sequence
    Filtered {
        #[arg(short = 'p', default_value_t = 1)]
        p: usize,
        /// List every cone degree instead of stopping at dimension + 2
        #[arg(long)]
        all_degrees: bool,
        model: String,
    },
    /// The semi-characteristics ell and kChar
    Semichar { model: String },
    /// Check that ell vanishes, by both paths
    Verify {
        models: Vec<String>,
        /// Also verify every *.json file in DIR
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Include the operator checks
        #[arg(long)]
        with_ops: bool,
    },
    /// Adjoint, Hodge and skew operator checks (p = 1 only)
    Ops {
        #[arg(short = 'p', default_value_t = 1)]
        p: usize,
        model: String,
    },
    /// Built-in models
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List catalog names
    List,
    /// Show one model and its file form
    Show { name: String },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::ConeBoundary { .. } | Error::Shape(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

/// Outcome of one model in a command: sections, findings and an exit code.
struct Part {
    model: Option<ModelRef>,
    sections: Vec<Section>,
    findings: Vec<String>,
    code: i32,
}

impl Part {
    fn ok(model: &Model, source: &str, sections: Vec<Section>) -> Self {
        Part {
            model: Some(model_ref(model, source)),
            sections,
            findings: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn failed(source: &str, f: Failure) -> Self {
        Part {
            model: None,
            sections: vec![Section::Error {
                source: source.to_string(),
                message: f.message().to_string(),
            }],
            findings: vec![format!("{source}: {}", f.message())],
            code: f.code(),
        }
    }
}

fn model_ref(model: &Model, source: &str) -> ModelRef {
    ModelRef {
        name: model.name().to_string(),
        source: source.to_string(),
        sha256: model.fingerprint(),
    }
}

/// Worst code wins: internal errors, then falsification, then input errors.
fn combine(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        EXIT_INTERNAL => 3,
        EXIT_FALSIFIED => 2,
        EXIT_INPUT => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn load(input: &str) -> Result<Model, Failure> {
    Ok(parse_model(input)?)
}

fn validate_cmd(input: &str) -> Part {
    let model = match load_model::<symcone::Rational>(input) {
        Ok(m) => m,
        Err(e) => return Part::failed(input, e.into()),
    };
    let v = model.validate();
    let passed = v.passed();
    let mut part = Part::ok(
        &model,
        input,
        vec![Section::Validate(ValidateSection {
            model: model.name().to_string(),
            passed,
            checks: v.checks.clone(),
        })],
    );
    for c in v.failures() {
        part.findings.push(format!(
            "{}: {} fails at {}",
            model.name(),
            c.name,
            c.witnesses.join("; ")
        ));
    }
    if !passed {
        part.code = EXIT_INPUT;
    }
    part
}

fn betti_cmd(input: &str, p: usize) -> Result<Part, Failure> {
    let m = load(input)?;
    let s = BettiSection {
        model: m.name().to_string(),
        top_degree: m.top_degree(),
        q: p + 1,
        b: betti(&m),
        r: lefschetz_ranks(&m, p + 1)?,
    };
    Ok(Part::ok(&m, input, vec![Section::Betti(s)]))
}

fn filtered_cmd(input: &str, p: usize, all: bool) -> Result<Part, Failure> {
    let m = load(input)?;
    let t = cohomology_table(&m, p)?;
    let max = t.b_phi_direct.len() - 1;
    let last = if all { max } else { max.min(m.top_degree() + 2) };
    let cone: Vec<usize> = t.b_phi_direct[..=last].to_vec();
    let s = FilteredSection {
        model: m.name().to_string(),
        top_degree: m.top_degree(),
        p,
        last_degree: last,
        even_part: cone.iter().step_by(2).copied().collect(),
        b_phi_formula: t.b_phi_formula[..=last].to_vec(),
        b_phi_cone: cone,
        even_sum: t.even_sum,
        euler: t.euler,
        ell: t.ell,
        k_char: t.k_char,
        paths_agree: t.paths_agree(),
    };
    let mut part = Part::ok(&m, input, vec![Section::Filtered(s)]);
    if !t.paths_agree() {
        part.findings
            .push(format!("{}: formula and cone paths disagree", m.name()));
        part.code = EXIT_INTERNAL;
    }
    Ok(part)
}

fn semichar_cmd(input: &str) -> Result<Part, Failure> {
    let m = load(input)?;
    let sc = semicharacteristics(&m)?;
    let s = SemicharSection {
        model: m.name().to_string(),
        top_degree: m.top_degree(),
        ell: sc.ell,
        k_char: sc.k_char,
        even_sum_p1: sc.even_sum_p1,
        even_sum_p0: sc.even_sum_p0,
    };
    Ok(Part::ok(&m, input, vec![Section::Semichar(s)]))
}

fn ops_summary(m: &Model) -> Result<symcone::spectral::OpsSummary, Failure> {
    let cone = ConeComplex::build(m, 1)?;
    let bundle = build_bundle(&cone)?;
    Ok(bundle.summary()?)
}

fn verify_one(input: &str, with_ops: bool) -> Result<Part, Failure> {
    let m = load(input)?;
    let v = verify_vanishing(&m)?;
    let ops = if with_ops { Some(ops_summary(&m)?) } else { None };
    let mut findings: Vec<String> = v.findings.iter().map(|f| format!("{}: {f}", m.name())).collect();
    if let Some(o) = &ops {
        findings.extend(o.findings.iter().map(|f| format!("{}: {f}", m.name())));
    }
    let code = match v.verdict {
        Verdict::Falsified => EXIT_FALSIFIED,
        _ if !v.paths_agree => EXIT_INTERNAL,
        _ => EXIT_OK,
    };
    let s = VerifySection {
        model: m.name().to_string(),
        top_degree: m.top_degree(),
        verdict: v.verdict,
        ell_cone: v.ell_direct,
        ell_formula: v.ell_formula,
        even_sum_cone: v.even_sum_direct,
        even_sum_formula: v.even_sum_formula,
        paths_agree: v.paths_agree,
        b_phi: v.table.b_phi_direct.clone(),
        ops,
    };
    let mut part = Part::ok(&m, input, vec![Section::Verify(s)]);
    part.findings = findings;
    part.code = code;
    Ok(part)
}

fn dir_entries(dir: &Path) -> Result<Vec<String>, Failure> {
    let read = std::fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files.into_iter().map(|p| p.display().to_string()).collect())
}

fn ops_cmd(input: &str, p: usize) -> Result<Part, Failure> {
    if p != 1 {
        return Err(Error::WrongFiltration(p).into());
    }
    let m = load(input)?;
    let o = ops_summary(&m)?;
    let mut part = Part::ok(&m, input, Vec::new());
    part.findings = o.findings.iter().map(|f| format!("{}: {f}", m.name())).collect();
    part.sections.push(Section::Ops(o));
    Ok(part)
}

fn catalog_list() -> Part {
    let entries = catalog::NAMES
        .iter()
        .map(|(n, d)| CatalogEntry {
            name: n.to_string(),
            description: d.to_string(),
        })
        .collect();
    Part {
        model: None,
        sections: vec![Section::CatalogList { entries }],
        findings: Vec::new(),
        code: EXIT_OK,
    }
}

fn catalog_show(name: &str) -> Result<Part, Failure> {
    let name = name.trim_start_matches('@');
    let m: Model = catalog::by_name(name)?;
    let description = catalog::NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .unwrap_or_else(|| format!("family member {name}"));
    let file = ModelFile::from_model(&m)?;
    let s = CatalogShow {
        name: m.name().to_string(),
        description,
        top_degree: m.top_degree(),
        basis: m.basis().to_vec(),
        omega: m.format(&m.omega()),
        betti: betti(&m),
        file,
    };
    Ok(Part::ok(&m, &format!("@{name}"), vec![Section::CatalogShow(s)]))
}

fn settle(input: &str, r: Result<Part, Failure>) -> Part {
    r.unwrap_or_else(|f| Part::failed(input, f))
}

/// Runs a parsed command and returns the report with its exit code.
pub fn execute(cli: &Cli) -> (Report, i32) {
    let (command, p_values, parts): (&str, Vec<usize>, Vec<Part>) = match &cli.command {
        Command::Validate { model } => ("validate", vec![], vec![validate_cmd(model)]),
        Command::Betti { p, model } => ("betti", vec![*p], vec![settle(model, betti_cmd(model, *p))]),
        Command::Filtered { p, all_degrees, model } => (
            "filtered",
            vec![*p],
            vec![settle(model, filtered_cmd(model, *p, *all_degrees))],
        ),
        Command::Semichar { model } => ("semichar", vec![0, 1], vec![settle(model, semichar_cmd(model))]),
        Command::Verify { models, dir, with_ops } => {
            let mut inputs = models.clone();
            let mut parts = Vec::new();
            if let Some(d) = dir {
                match dir_entries(d) {
                    Ok(files) => inputs.extend(files),
                    Err(f) => parts.push(Part::failed(&d.display().to_string(), f)),
                }
            }
            if inputs.is_empty() && parts.is_empty() {
                parts.push(Part::failed("verify", Failure::Input("no models given".into())));
            }
            let done: Vec<Part> = inputs.par_iter().map(|s| settle(s, verify_one(s, *with_ops))).collect();
            parts.extend(done);
            ("verify", vec![1], parts)
        }
        Command::Ops { p, model } => ("ops", vec![*p], vec![settle(model, ops_cmd(model, *p))]),
        Command::Catalog { action } => match action {
            CatalogAction::List => ("catalog list", vec![], vec![catalog_list()]),
            CatalogAction::Show { name } => ("catalog show", vec![], vec![settle(name, catalog_show(name))]),
        },
    };
    let mut report = Report {
        provenance: Provenance {
            tool: "symcone",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            p_values,
            models: Vec::new(),
        },
        sections: Vec::new(),
        findings: Vec::new(),
    };
    let mut code = EXIT_OK;
    for part in parts {
        report.provenance.models.extend(part.model);
        report.sections.extend(part.sections);
        report.findings.extend(part.findings);
        code = combine(code, part.code);
    }
    (report, code)
}

/// Parses `args`, runs the command and writes the output. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (report, code) = execute(&cli);
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match cli.json.as_deref() {
        Some(p) if p == Path::new("-") => {
            let _ = out.write_all(json.as_bytes());
        }
        Some(p) => {
            let _ = out.write_all(render_text(&report).as_bytes());
            if let Err(e) = std::fs::write(p, json) {
                let _ = writeln!(err, "symcone: cannot write {}: {e}", p.display());
                return combine(code, EXIT_INPUT);
            }
        }
        None => {
            let _ = out.write_all(render_text(&report).as_bytes());
        }
    }
    if code != EXIT_OK {
        for f in &report.findings {
            let _ = writeln!(err, "symcone: {f}");
        }
    }
    code
}
