//! JSON input documents.
//!
//! ```json
//! {
//!   "prime": 32003,
//!   "variables": ["x", "y"],
//!   "ideal": ["y^3"],
//!   "modules": {"M": {"generators": 2, "relations": [["x", "-y^2"], ["y", "0"]], "syzygy": "K"}},
//!   "ideal_I": ["x^2", "y"],
//!   "matrix_factorizations": {"F": {"phi": [["x", "y"], ["-y^2", "0"]], "psi": "adjugate"}},
//!   "omega": {"module": "W", "tau": 2},
//!   "sequence": {"sub": "M", "quotient": "E"}
//! }
//! ```
//!
//! Relations are columns. Everything except `variables` is optional.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matfac::{MatrixFactorization, PolyMatrix};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::presentations::{ModulePresentation, RingPresentation};
use crate::verify::{Instance, OmegaInput};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub modules: Map<String, Value>,
    #[serde(rename = "ideal_I", default, skip_serializing_if = "Option::is_none")]
    pub ideal_i: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub matrix_factorizations: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub generators: usize,
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syzygy: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfDoc {
    pub phi: Vec<Vec<String>>,
    pub psi: PsiDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PsiDoc {
    Matrix(Vec<Vec<String>>),
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaDoc {
    pub module: String,
    pub tau: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub sub: String,
    pub quotient: String,
}

/// A parsed document: presentations in document order.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub label: String,
    pub ring: RingPresentation,
    pub modules: Vec<(String, ModulePresentation)>,
    pub syzygies: Vec<(String, String)>,
    pub ideal_i: Option<Vec<Poly>>,
    pub mfs: Vec<(String, MatrixFactorization)>,
    pub omega: Option<OmegaInput>,
    pub sequence: Option<(ModulePresentation, ModulePresentation)>,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, col, msg } => Error::Parse {
            line,
            col,
            msg: format!("{path}: {msg}"),
        },
        Error::Input(m) => Error::Input(format!("{path}: {m}")),
        Error::Dimension(m) => Error::Dimension(format!("{path}: {m}")),
        Error::Validation(m) => Error::Validation(format!("{path}: {m}")),
        other => other,
    }
}

fn entry<T: for<'de> Deserialize<'de>>(path: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("{path}: {e}")))
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Parses every polynomial over `field` (the document prime applies
    /// only when the caller passes `None`).
    pub fn load(&self, field: Option<Field>) -> Result<Loaded> {
        let field = match (field, self.prime) {
            (Some(f), _) => f,
            (None, Some(p)) => Field::new(p)?,
            (None, None) => Field::default(),
        };
        let vars = &self.variables;
        let poly = |path: &str, s: &str| parse_poly(s, vars, field).map_err(|e| at(path, e));
        let label = self.label.clone().unwrap_or_else(|| "A".into());
        let ideal = self
            .ideal
            .iter()
            .enumerate()
            .map(|(i, s)| poly(&format!("ideal[{i}]"), s))
            .collect::<Result<Vec<_>>>()?;
        let ring = RingPresentation::new(&label, vars.clone(), field, ideal).map_err(|e| at("ideal", e))?;
        let mut modules = Vec::new();
        let mut syzygies = Vec::new();
        for (name, v) in &self.modules {
            let path = format!("modules.{name}");
            let doc: ModuleDoc = entry(&path, v)?;
            let rels = doc
                .relations
                .iter()
                .enumerate()
                .map(|(j, col)| {
                    if col.len() != doc.generators {
                        return Err(Error::Dimension(format!(
                            "{path}.relations[{j}] has {} entries for {} generators",
                            col.len(),
                            doc.generators
                        )));
                    }
                    col.iter()
                        .enumerate()
                        .map(|(i, s)| poly(&format!("{path}.relations[{j}][{i}]"), s))
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = ModulePresentation::new(name, ring.clone(), doc.generators, rels).map_err(|e| at(&path, e))?;
            if let Some(k) = doc.syzygy {
                syzygies.push((name.clone(), k));
            }
            modules.push((name.clone(), m));
        }
        let find = |what: &str, name: &str| -> Result<ModulePresentation> {
            modules
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, m)| m.clone())
                .ok_or_else(|| Error::Input(format!("{what} refers to unknown module '{name}'")))
        };
        for (m, k) in &syzygies {
            find(&format!("modules.{m}.syzygy"), k)?;
        }
        let ideal_i = self
            .ideal_i
            .as_ref()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .map(|(i, s)| poly(&format!("ideal_I[{i}]"), s))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let mut mfs = Vec::new();
        for (name, v) in &self.matrix_factorizations {
            let path = format!("matrix_factorizations.{name}");
            let doc: MfDoc = entry(&path, v)?;
            let mat = |which: &str, m: &[Vec<String>]| -> Result<PolyMatrix> {
                m.iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, s)| poly(&format!("{path}.{which}[{i}][{j}]"), s))
                            .collect()
                    })
                    .collect()
            };
            let phi = mat("phi", &doc.phi)?;
            let mf = match &doc.psi {
                PsiDoc::Matrix(p) => MatrixFactorization::validate(vars.clone(), field, phi, mat("psi", p)?),
                PsiDoc::Keyword(k) if k == "adjugate" => MatrixFactorization::from_adjugate(vars.clone(), field, phi),
                PsiDoc::Keyword(k) => {
                    return Err(Error::Input(format!("{path}.psi: expected a matrix or \"adjugate\", got \"{k}\"")))
                }
            }
            .map_err(|e| at(&path, e))?;
            mfs.push((name.clone(), mf));
        }
        let omega = self
            .omega
            .as_ref()
            .map(|o| {
                Ok(OmegaInput {
                    omega: find("omega.module", &o.module)?,
                    tau: o.tau,
                })
            })
            .transpose()?;
        let sequence = self
            .sequence
            .as_ref()
            .map(|s| Ok((find("sequence.sub", &s.sub)?, find("sequence.quotient", &s.quotient)?)))
            .transpose()?;
        Ok(Loaded {
            label,
            ring,
            modules,
            syzygies,
            ideal_i,
            mfs,
            omega,
            sequence,
        })
    }

    /// Rewrites every polynomial in normal form (degree-lex term order).
    pub fn normalized(&self, field: Option<Field>) -> Result<Document> {
        let l = self.load(field)?;
        let names = &self.variables;
        let show = |p: &Poly| p.to_string_with(names);
        let mut out = self.clone();
        out.ideal = l.ring.ideal.iter().map(show).collect();
        out.ideal_i = l.ideal_i.as_ref().map(|g| g.iter().map(show).collect());
        for (name, m) in &l.modules {
            let mut doc: ModuleDoc = entry("modules", &self.modules[name])?;
            doc.relations = m.relations.iter().map(|c| c.iter().map(show).collect()).collect();
            out.modules.insert(name.clone(), serde_json::to_value(doc).expect("serializable"));
        }
        for (name, mf) in &l.mfs {
            let mut doc: MfDoc = entry("matrix_factorizations", &self.matrix_factorizations[name])?;
            doc.phi = mf.phi_strings();
            if let PsiDoc::Matrix(_) = doc.psi {
                doc.psi = PsiDoc::Matrix(mf.psi_strings());
            }
            out.matrix_factorizations
                .insert(name.clone(), serde_json::to_value(doc).expect("serializable"));
        }
        Ok(out)
    }
}

impl Loaded {
    /// One instance for the ring (with `ω`, `ideal_I` and the sequence),
    /// one per module and one per factorization.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        let mut ring = Instance::ring(&self.label, self.ring.clone());
        ring.omega = self.omega.clone();
        ring.sequence = self.sequence.clone();
        out.push(ring);
        for (name, m) in &self.modules {
            let syz = self
                .syzygies
                .iter()
                .find(|(n, _)| n == name)
                .and_then(|(_, k)| self.modules.iter().find(|(n, _)| n == k))
                .map(|(_, k)| k.clone());
            let mut inst = Instance::module(name, m.clone(), syz);
            inst.ideal_i = self.ideal_i.clone();
            out.push(inst);
        }
        for (name, mf) in &self.mfs {
            let mut inst = Instance::from_mf(name, mf)?;
            inst.ideal_i = self.ideal_i.clone();
            out.push(inst);
        }
        Ok(out)
    }

    pub fn module(&self, name: &str) -> Result<&ModulePresentation> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Input(format!("no module named '{name}'")))
    }

    pub fn mf(&self, name: &str) -> Result<&MatrixFactorization> {
        self.mfs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Input(format!("no matrix factorization named '{name}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "prime": 32003,
        "variables": ["x", "y"],
        "ideal": ["y^3"],
        "modules": {
            "M": {"generators": 2, "relations": [["y + x", "-y^2"], ["y", "0"]], "syzygy": "K"},
            "K": {"generators": 2, "relations": [["0", "y^2"], ["-y", "x"]]}
        },
        "ideal_I": ["y", "x^2"],
        "matrix_factorizations": {"F": {"phi": [["x", "y"], ["-y^2", "0"]], "psi": "adjugate"}}
    }"#;

    #[test]
    fn loads_and_builds_instances() {
        let d = Document::from_json(DOC).unwrap();
        let l = d.load(None).unwrap();
        assert_eq!(l.ring.field.p(), 32003);
        assert_eq!(l.modules.len(), 2);
        let inst = l.instances().unwrap();
        assert_eq!(inst.len(), 4);
        assert!(inst[1].syzygy.is_some());
        assert!(inst[3].mf.is_some());
    }

    #[test]
    fn round_trip_is_stable() {
        let d = Document::from_json(DOC).unwrap();
        let n1 = d.normalized(None).unwrap();
        let text = n1.to_json();
        let n2 = Document::from_json(&text).unwrap().normalized(None).unwrap();
        assert_eq!(text, n2.to_json());
        assert_eq!(n1.modules["M"]["relations"][0][0], "x + y");
    }

    #[test]
    fn errors_carry_positions() {
        let bad = DOC.replace("y^3", "y^^3");
        let e = Document::from_json(&bad).unwrap().load(None).unwrap_err();
        assert!(matches!(&e, Error::Parse { msg, .. } if msg.starts_with("ideal[0]")), "{e}");
        let e = Document::from_json("{\"variables\": [\"x\"], \"bogus\": 1}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = Document::from_json(&DOC.replace("\"K\"}", "\"Q\"}")).unwrap().load(None).unwrap_err();
        assert!(e.is_input_error());
    }
}
