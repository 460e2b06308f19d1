//! Report structure and its text rendering.
//!
//! Every number in the text output is read from the same [`Report`] value that
//! is serialized as JSON.

use std::fmt::Write;

use serde::Serialize;
use symcone::invariants::Verdict;
use symcone::model::Check;
use symcone::modelfile::ModelFile;
use symcone::spectral::OpsSummary;
use symcone::BasisElement;

#[derive(Clone, Debug, Serialize)]
pub struct ModelRef {
    pub name: String,
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub p_values: Vec<usize>,
    pub models: Vec<ModelRef>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub provenance: Provenance,
    pub sections: Vec<Section>,
    pub findings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiSection {
    pub model: String,
    pub top_degree: usize,
    pub q: usize,
    pub b: Vec<usize>,
    pub r: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilteredSection {
    pub model: String,
    pub top_degree: usize,
    pub p: usize,
    /// Degrees `0 ..= last_degree` are listed.
    pub last_degree: usize,
    pub b_phi_cone: Vec<usize>,
    pub b_phi_formula: Vec<usize>,
    pub even_part: Vec<usize>,
    pub even_sum: usize,
    pub euler: i64,
    pub ell: Option<u8>,
    pub k_char: Option<u8>,
    pub paths_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicharSection {
    pub model: String,
    pub top_degree: usize,
    pub ell: Option<u8>,
    pub k_char: Option<u8>,
    pub even_sum_p1: usize,
    pub even_sum_p0: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySection {
    pub model: String,
    pub top_degree: usize,
    pub verdict: Verdict,
    pub ell_cone: u8,
    pub ell_formula: u8,
    pub even_sum_cone: usize,
    pub even_sum_formula: usize,
    pub paths_agree: bool,
    pub b_phi: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ops: Option<OpsSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateSection {
    pub model: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogShow {
    pub name: String,
    pub description: String,
    pub top_degree: usize,
    pub basis: Vec<BasisElement>,
    pub omega: String,
    pub betti: Vec<usize>,
    pub file: ModelFile,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Section {
    Validate(ValidateSection),
    Betti(BettiSection),
    Filtered(FilteredSection),
    Semichar(SemicharSection),
    Verify(VerifySection),
    Ops(OpsSummary),
    CatalogList { entries: Vec<CatalogEntry> },
    CatalogShow(CatalogShow),
    Error { source: String, message: String },
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn tuple(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bit(v: Option<u8>, top: usize, what: &str) -> String {
    match v {
        Some(x) => format!("{what} = {x}"),
        None => format!("{what} undefined in dimension {top}"),
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::NotApplicable => "not applicable",
        Verdict::Falsified => "FALSIFIED",
    }
}

fn render_ops(out: &mut String, o: &OpsSummary, indent: &str) {
    let _ = writeln!(out, "{indent}C^even dim {}, C^odd dim {}", o.c_even_dim, o.c_odd_dim);
    let _ = writeln!(
        out,
        "{indent}adjoints are transposes: {}",
        yes(o.adjoints_are_transposes)
    );
    let _ = writeln!(
        out,
        "{indent}dim ker (∂+∂*)|C^even = {} (even sum {})",
        o.hodge.kernel_dim, o.hodge.even_sum
    );
    let _ = writeln!(
        out,
        "{indent}Laplacian block diagonal: {}, kernel dims {}",
        yes(o.laplacian_block_diagonal),
        join(&o.laplacian_kernel_dims)
    );
    let s = &o.skew;
    let _ = writeln!(
        out,
        "{indent}D: {}x{}, skew-symmetric: {}, rank {}, dim ker {}, parity {}",
        s.size,
        s.size,
        yes(s.skew_symmetric),
        s.rank,
        s.kernel_dim,
        s.parity
    );
    let agree = match s.agrees {
        Some(a) => yes(a).to_string(),
        None => "n/a".to_string(),
    };
    let ell = s.ell.map_or("undefined".to_string(), |x| x.to_string());
    let _ = writeln!(out, "{indent}ell = {ell}, parity agrees with ell: {agree}");
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let pv = &report.provenance;
    let _ = writeln!(out, "{} {} {}", pv.tool, pv.version, pv.command);
    for m in &pv.models {
        let _ = writeln!(out, "model {} from {} sha256 {}", m.name, m.source, m.sha256);
    }
    if !pv.p_values.is_empty() {
        let _ = writeln!(out, "p values: {}", join(&pv.p_values));
    }
    for s in &report.sections {
        out.push('\n');
        match s {
            Section::Validate(v) => {
                let _ = writeln!(out, "== validate {} ==", v.model);
                for c in &v.checks {
                    if c.passed {
                        let _ = writeln!(out, "  ok    {}", c.name);
                    } else {
                        let _ = writeln!(out, "  FAIL  {}: {}", c.name, c.witnesses.join("; "));
                    }
                }
                let _ = writeln!(out, "  result: {}", if v.passed { "valid" } else { "invalid" });
            }
            Section::Betti(b) => {
                let _ = writeln!(out, "== betti {} (dimension {}) ==", b.model, b.top_degree);
                let _ = writeln!(out, "  {:>3}  {:>5}  {:>5}", "k", "b_k", "r_k");
                for k in 0..b.b.len() {
                    let _ = writeln!(out, "  {:>3}  {:>5}  {:>5}", k, b.b[k], b.r[k]);
                }
                let _ = writeln!(out, "  r_k = rank of [omega^{}] on H^k", b.q);
            }
            Section::Filtered(f) => {
                let _ = writeln!(
                    out,
                    "== filtered {} (dimension {}), p = {} ==",
                    f.model, f.top_degree, f.p
                );
                let _ = writeln!(out, "  {:>3}  {:>10}  {:>12}", "k", "b^Φ (cone)", "b^Φ (formula)");
                for k in 0..=f.last_degree {
                    let _ = writeln!(out, "  {:>3}  {:>10}  {:>12}", k, f.b_phi_cone[k], f.b_phi_formula[k]);
                }
                let _ = writeln!(out, "  even part: {}", tuple(&f.even_part));
                let _ = writeln!(out, "  even sum = {}", f.even_sum);
                let _ = writeln!(out, "  euler characteristic = {}", f.euler);
                if f.p == 1 {
                    let _ = writeln!(out, "  {}", bit(f.ell, f.top_degree, "ell"));
                }
                if f.p == 0 {
                    let _ = writeln!(out, "  {}", bit(f.k_char, f.top_degree, "kChar"));
                }
                let _ = writeln!(out, "  paths agree: {}", yes(f.paths_agree));
            }
            Section::Semichar(s) => {
                let _ = writeln!(out, "== semichar {} (dimension {}) ==", s.model, s.top_degree);
                let _ = writeln!(
                    out,
                    "  {} (p = 0 even sum {})",
                    bit(s.k_char, s.top_degree, "kChar"),
                    s.even_sum_p0
                );
                let _ = writeln!(
                    out,
                    "  {} (p = 1 even sum {})",
                    bit(s.ell, s.top_degree, "ell"),
                    s.even_sum_p1
                );
            }
            Section::Verify(v) => {
                let _ = writeln!(out, "== verify {} (dimension {}) ==", v.model, v.top_degree);
                let _ = writeln!(out, "  verdict: {}", verdict(v.verdict));
                if v.verdict == Verdict::NotApplicable {
                    let _ = writeln!(
                        out,
                        "  ell undefined; even sum parity = {} (cone {}, formula {})",
                        v.ell_cone, v.ell_cone, v.ell_formula
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "  ell = {} (cone {}, formula {})",
                        v.ell_cone, v.ell_cone, v.ell_formula
                    );
                }
                let _ = writeln!(
                    out,
                    "  even sum = {} (cone {}, formula {})",
                    v.even_sum_cone, v.even_sum_cone, v.even_sum_formula
                );
                let _ = writeln!(out, "  paths agree: {}", yes(v.paths_agree));
                let _ = writeln!(out, "  b^Φ (p = 1): {}", join(&v.b_phi));
                if let Some(o) = &v.ops {
                    let _ = writeln!(out, "  ops:");
                    render_ops(&mut out, o, "    ");
                }
            }
            Section::Ops(o) => {
                let _ = writeln!(out, "== ops {} ==", o.model_name);
                render_ops(&mut out, o, "  ");
            }
            Section::CatalogList { entries } => {
                let _ = writeln!(out, "== catalog ==");
                let w = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                for e in entries {
                    let _ = writeln!(out, "  @{:<w$}  {}", e.name, e.description);
                }
            }
            Section::CatalogShow(c) => {
                let _ = writeln!(out, "== catalog {} ==", c.name);
                let _ = writeln!(out, "  {}", c.description);
                let _ = writeln!(out, "  dimension {}, basis size {}", c.top_degree, c.basis.len());
                let labels: Vec<String> = c.basis.iter().map(|b| format!("{}:{}", b.label, b.degree)).collect();
                let _ = writeln!(out, "  basis: {}", labels.join(" "));
                let _ = writeln!(out, "  omega = {}", c.omega);
                let _ = writeln!(out, "  betti: {}", join(&c.betti));
                let _ = writeln!(out, "  model file:");
                for line in c.file.to_json().lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
            Section::Error { source, message } => {
                let _ = writeln!(out, "== error {source} ==");
                let _ = writeln!(out, "  {message}");
            }
        }
    }
    if !report.findings.is_empty() {
        let _ = writeln!(out, "\nfindings:");
        for f in &report.findings {
            let _ = writeln!(out, "  - {f}");
        }
    }
    out
}
