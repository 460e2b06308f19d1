//! JSON model files.
//!
//! ```json
//! { "schema": 1, "name": "kodaira_thurston", "kind": "ce",
//!   "generators": ["e1", "e2", "e3", "e4"],
//!   "differential": { "e4": [["e2^e3", 1]] },
//!   "omega": [["e1^e2", 1], ["e3^e4", 1]] }
//! ```
//!
//! `kind` is `ce`, `ring` or `product`. Ring files list the non-unit basis
//! (`{"label", "degree"}` objects), optional `top_degree`, and `products` as
//! `{"left", "right", "result"}` objects; the unit is implicit and labelled `1`.
//! Product files list `factors`, each either `"@catalog_name"`, a path relative
//! to the file, or an inline model object. Coefficients are JSON integers or
//! strings `"p"` / `"p/q"`. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::model::{make_ce_model, make_ring_model, product, GradedModel, Recipe, Terms};
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;
const MAX_DEPTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Str(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ce,
    Ring,
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, Coeff)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    Ref(String),
    Inline(Box<ModelFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema: u32,
    pub name: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<BTreeMap<String, Vec<(String, Coeff)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Factor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<(String, Coeff)>>,
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ModelFile(msg.into())
}

fn coeff<T: Scalar>(c: &Coeff) -> Result<T> {
    match c {
        Coeff::Int(n) => Ok(T::from_i64(*n)),
        Coeff::Str(s) => T::parse(s).ok_or_else(|| bad(format!("bad coefficient '{s}'"))),
    }
}

fn terms<T: Scalar>(v: &[(String, Coeff)]) -> Result<Terms<T>> {
    v.iter().map(|(m, c)| Ok((m.clone(), coeff(c)?))).collect()
}

fn out_terms<T: Scalar>(t: &Terms<T>) -> Vec<(String, Coeff)> {
    t.iter().map(|(m, c)| (m.clone(), Coeff::Str(c.to_string()))).collect()
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    fn check_fields(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(bad(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let present = [
            ("generators", self.generators.is_some()),
            ("differential", self.differential.is_some()),
            ("top_degree", self.top_degree.is_some()),
            ("basis", self.basis.is_some()),
            ("products", self.products.is_some()),
            ("factors", self.factors.is_some()),
            ("omega", self.omega.is_some()),
        ];
        let (allowed, required): (&[&str], &[&str]) = match self.kind {
            Kind::Ce => (&["generators", "differential", "omega"], &["generators"]),
            Kind::Ring => (&["top_degree", "basis", "products", "omega"], &["basis"]),
            Kind::Product => (&["factors"], &["factors"]),
        };
        for (name, here) in present {
            if here && !allowed.contains(&name) {
                return Err(bad(format!("field '{name}' is not allowed for kind {:?}", self.kind)));
            }
            if !here && required.contains(&name) {
                return Err(bad(format!("field '{name}' is required for kind {:?}", self.kind)));
            }
        }
        let labels: Vec<&str> = match self.kind {
            Kind::Ce => self.generators.iter().flatten().map(String::as_str).collect(),
            Kind::Ring => self.basis.iter().flatten().map(|b| b.label.as_str()).collect(),
            Kind::Product => Vec::new(),
        };
        if let Some(l) = labels.iter().find(|l| !valid_label(l)) {
            return Err(bad(format!("invalid label '{l}'")));
        }
        Ok(())
    }

    /// Builds the model. Relative factor paths resolve against `base`.
    pub fn build<T: Scalar>(&self, base: &Path) -> Result<GradedModel<T>> {
        self.build_at(base, 0)
    }

    fn build_at<T: Scalar>(&self, base: &Path, depth: usize) -> Result<GradedModel<T>> {
        if depth > MAX_DEPTH {
            return Err(bad("factor references nest too deeply"));
        }
        self.check_fields()?;
        let omega = terms(self.omega.as_deref().unwrap_or(&[]))?;
        match self.kind {
            Kind::Ce => {
                let gens = self.generators.clone().unwrap_or_default();
                let mut diff2 = Vec::new();
                for (g, t) in self.differential.iter().flatten() {
                    diff2.push((g.clone(), terms(t)?));
                }
                make_ce_model(&self.name, &gens, &diff2, &omega)
            }
            Kind::Ring => {
                let basis: Vec<(String, usize)> = self
                    .basis
                    .iter()
                    .flatten()
                    .map(|b| (b.label.clone(), b.degree))
                    .collect();
                let mut products = Vec::new();
                for p in self.products.iter().flatten() {
                    products.push((p.left.clone(), p.right.clone(), terms(&p.result)?));
                }
                make_ring_model(&self.name, self.top_degree, &basis, &products, &omega)
            }
            Kind::Product => {
                let mut factors = Vec::new();
                for f in self.factors.iter().flatten() {
                    factors.push(match f {
                        Factor::Ref(r) => resolve_at(r, base, depth + 1)?,
                        Factor::Inline(m) => m.build_at(base, depth + 1)?,
                    });
                }
                Ok(product(&factors)?.renamed(self.name.clone()))
            }
        }
    }

    /// Writes a model back out from its construction recipe.
    pub fn from_model<T: Scalar>(model: &GradedModel<T>) -> Result<Self> {
        let mut f = ModelFile {
            schema: SCHEMA_VERSION,
            name: model.name().to_string(),
            kind: Kind::Ce,
            generators: None,
            differential: None,
            top_degree: None,
            basis: None,
            products: None,
            factors: None,
            omega: None,
        };
        match model.recipe() {
            Recipe::Ce {
                generators,
                diff2,
                omega,
            } => {
                f.generators = Some(generators.clone());
                if !diff2.is_empty() {
                    f.differential = Some(diff2.iter().map(|(g, t)| (g.clone(), out_terms(t))).collect());
                }
                f.omega = Some(out_terms(omega));
            }
            Recipe::Ring {
                top_degree,
                basis,
                products,
                omega,
            } => {
                f.kind = Kind::Ring;
                f.top_degree = Some(*top_degree);
                f.basis = Some(
                    basis
                        .iter()
                        .map(|(l, d)| BasisEntry {
                            label: l.clone(),
                            degree: *d,
                        })
                        .collect(),
                );
                if !products.is_empty() {
                    f.products = Some(
                        products
                            .iter()
                            .map(|(a, b, t)| ProductEntry {
                                left: a.clone(),
                                right: b.clone(),
                                result: out_terms(t),
                            })
                            .collect(),
                    );
                }
                f.omega = Some(out_terms(omega));
            }
            Recipe::Product(factors) => {
                f.kind = Kind::Product;
                f.factors = Some(
                    factors
                        .iter()
                        .map(|m| Ok(Factor::Inline(Box::new(Self::from_model(m)?))))
                        .collect::<Result<_>>()?,
                );
            }
            Recipe::Derived => return Err(bad(format!("model '{}' has no file form", model.name()))),
        }
        Ok(f)
    }
}

fn resolve_at<T: Scalar>(input: &str, base: &Path, depth: usize) -> Result<GradedModel<T>> {
    if let Some(name) = input.strip_prefix('@') {
        return catalog::by_name(name);
    }
    let path: PathBuf = if Path::new(input).is_absolute() {
        input.into()
    } else {
        base.join(input)
    };
    let text = std::fs::read_to_string(&path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let file = ModelFile::from_json(&text).map_err(|e| match e {
        Error::ModelFile(m) => bad(format!("{}: {m}", path.display())),
        other => other,
    })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    file.build_at(&dir, depth)
}

/// Loads `@name` from the catalog or a model file path without running [`GradedModel::validate`].
pub fn load_model<T: Scalar>(input: &str) -> Result<GradedModel<T>> {
    resolve_at(input, Path::new(""), 0)
}

/// Loads `@name` from the catalog or a model file path, and requires it to validate.
pub fn parse_model<T: Scalar>(input: &str) -> Result<GradedModel<T>> {
    let model = load_model::<T>(input)?;
    let report = model.validate();
    if let Some(c) = report.failures().next() {
        return Err(Error::InvalidModel(format!(
            "{}: invariant {} fails at {}",
            model.name(),
            c.name,
            c.witnesses.join("; ")
        )));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cohomology_table;
    use crate::Rational;

    #[test]
    fn labels() {
        assert!(valid_label("e1"));
        assert!(valid_label("vol_2"));
        assert!(!valid_label("1"));
        assert!(!valid_label("e-1"));
        assert!(!valid_label(""));
    }

    #[test]
    fn parse_ce_file() {
        let text = r#"{ "schema": 1, "name": "kt", "kind": "ce",
            "generators": ["e1", "e2", "e3", "e4"],
            "differential": { "e4": [["e2^e3", 1]] },
            "omega": [["e1^e2", "1"], ["e3^e4", 1]] }"#;
        let m: GradedModel<Rational> = ModelFile::from_json(text).unwrap().build(Path::new(".")).unwrap();
        let kt = catalog::kodaira_thurston::<Rational>();
        assert_eq!(
            cohomology_table(&m, 1).unwrap().b_phi_direct,
            cohomology_table(&kt, 1).unwrap().b_phi_direct
        );
    }

    #[test]
    fn rejects_unknown_and_misplaced_fields() {
        let text = r#"{ "schema": 1, "name": "x", "kind": "ce", "generators": [], "colour": 3 }"#;
        let e = ModelFile::from_json(text).unwrap_err();
        assert!(e.to_string().contains("colour"), "{e}");
        assert!(e.to_string().contains("line"), "{e}");

        let text = r#"{ "schema": 1, "name": "x", "kind": "ce", "generators": ["e1"], "basis": [] }"#;
        let e = ModelFile::from_json(text)
            .unwrap()
            .build::<Rational>(Path::new("."))
            .unwrap_err();
        assert!(e.to_string().contains("basis"));

        let text = r#"{ "schema": 2, "name": "x", "kind": "ce", "generators": [] }"#;
        assert!(ModelFile::from_json(text)
            .unwrap()
            .build::<Rational>(Path::new("."))
            .is_err());

        let text = r#"{ "schema": 1, "name": "x", "kind": "ring", "basis": [{"label": "2x", "degree": 2}] }"#;
        assert!(ModelFile::from_json(text)
            .unwrap()
            .build::<Rational>(Path::new("."))
            .is_err());
    }

    #[test]
    fn wrong_degree_differential_names_generator() {
        let text = r#"{ "schema": 1, "name": "x", "kind": "ce", "generators": ["e1", "e2", "e3"],
            "differential": { "e1": [["e2", 1]] } }"#;
        let e = ModelFile::from_json(text)
            .unwrap()
            .build::<Rational>(Path::new("."))
            .unwrap_err();
        assert!(
            matches!(e, Error::DiffDegree { ref generator, .. } if generator == "e1"),
            "{e}"
        );
    }

    #[test]
    fn product_of_catalog_refs() {
        let text = r#"{ "schema": 1, "name": "kt_x_s2", "kind": "product",
            "factors": ["@kodaira_thurston", "@sphere2"] }"#;
        let m: GradedModel<Rational> = ModelFile::from_json(text).unwrap().build(Path::new(".")).unwrap();
        assert_eq!(cohomology_table(&m, 1).unwrap().even_sum, 20);
        let text = r#"{ "schema": 1, "name": "x", "kind": "product", "factors": ["@nope"] }"#;
        let e = ModelFile::from_json(text)
            .unwrap()
            .build::<Rational>(Path::new("."))
            .unwrap_err();
        assert_eq!(e, Error::UnknownCatalog("nope".into()));
    }

    #[test]
    fn catalog_round_trip() {
        for m in catalog::all::<Rational>() {
            let json = ModelFile::from_model(&m).unwrap().to_json();
            let back: GradedModel<Rational> = ModelFile::from_json(&json).unwrap().build(Path::new(".")).unwrap();
            assert_eq!(back.name(), m.name());
            for p in 0..=1 {
                assert_eq!(
                    cohomology_table(&back, p).unwrap(),
                    cohomology_table(&m, p).unwrap(),
                    "{}",
                    m.name()
                );
            }
        }
    }
}
