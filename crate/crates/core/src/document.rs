//! JSON documents for instances and bid vectors.
//!
//! An instance file looks like
//!
//! ```json
//! {
//!   "schemaVersion": 1,
//!   "budget": 15.0,
//!   "keywords": [
//!     { "id": "a", "cpc": 1.0 },
//!     { "id": "b", "cpc": 2.0, "weight": 1.5 }
//!   ],
//!   "model": "fixed",
//!   "clicks": [10.0, 10.0]
//! }
//! ```
//!
//! with the model payload one of `clicks` (fixed), `q` plus `totalClicks`
//! (proportional), `pmfs` (independent) or `scenarios` (scenario). A pmf is
//! a list of `{ "value": .., "prob": .. }` objects. Numbers are written in
//! the shortest form that parses back to the same double.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dist::{ClickModel, DiscretePmf, Scenario};
use crate::error::{Result, SboError};
use crate::model::{BidVector, Instance, Keyword};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeywordDoc {
    pub id: String,
    pub cpc: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub value: f64,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub prob: f64,
    pub clicks: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelDoc {
    Fixed {
        clicks: Vec<f64>,
    },
    Proportional {
        q: Vec<f64>,
        #[serde(rename = "totalClicks")]
        total_clicks: Vec<PointDoc>,
    },
    Independent {
        pmfs: Vec<Vec<PointDoc>>,
    },
    Scenario {
        scenarios: Vec<ScenarioDoc>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub budget: f64,
    pub keywords: Vec<KeywordDoc>,
    #[serde(flatten)]
    pub model: ModelDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BidsDocument {
    pub schema_version: u32,
    pub bids: Vec<f64>,
}

fn pmf_doc(pmf: &DiscretePmf) -> Vec<PointDoc> {
    pmf.points()
        .iter()
        .map(|&(value, prob)| PointDoc { value, prob })
        .collect()
}

fn pmf_from_doc(points: &[PointDoc]) -> Result<DiscretePmf> {
    DiscretePmf::new(points.iter().map(|p| (p.value, p.prob)))
}

fn check_version(found: u32) -> Result<()> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(SboError::Validation(format!(
            "unsupported schemaVersion {found}, expected {SCHEMA_VERSION}"
        )))
    }
}

impl From<&Instance> for InstanceDocument {
    fn from(instance: &Instance) -> Self {
        let keywords = instance
            .keywords()
            .iter()
            .map(|k| KeywordDoc {
                id: k.id.clone(),
                cpc: k.cpc,
                weight: (k.weight != 1.0).then_some(k.weight),
            })
            .collect();
        let model = match instance.model() {
            ClickModel::Fixed { clicks } => ModelDoc::Fixed {
                clicks: clicks.clone(),
            },
            ClickModel::Proportional { q, total_clicks } => ModelDoc::Proportional {
                q: q.clone(),
                total_clicks: pmf_doc(total_clicks),
            },
            ClickModel::Independent { pmfs } => ModelDoc::Independent {
                pmfs: pmfs.iter().map(pmf_doc).collect(),
            },
            ClickModel::Scenario { scenarios } => ModelDoc::Scenario {
                scenarios: scenarios
                    .iter()
                    .map(|s| ScenarioDoc {
                        prob: s.prob,
                        clicks: s.clicks.clone(),
                    })
                    .collect(),
            },
        };
        Self {
            schema_version: SCHEMA_VERSION,
            budget: instance.budget(),
            keywords,
            model,
        }
    }
}

impl InstanceDocument {
    /// Validates the document into an [`Instance`], keeping keyword order.
    pub fn to_instance(&self) -> Result<Instance> {
        check_version(self.schema_version)?;
        let keywords = self
            .keywords
            .iter()
            .map(|k| Keyword::weighted(k.id.clone(), k.cpc, k.weight.unwrap_or(1.0)))
            .collect();
        let model = match &self.model {
            ModelDoc::Fixed { clicks } => ClickModel::Fixed {
                clicks: clicks.clone(),
            },
            ModelDoc::Proportional { q, total_clicks } => ClickModel::Proportional {
                q: q.clone(),
                total_clicks: pmf_from_doc(total_clicks)?,
            },
            ModelDoc::Independent { pmfs } => ClickModel::Independent {
                pmfs: pmfs
                    .iter()
                    .map(|p| pmf_from_doc(p))
                    .collect::<Result<_>>()?,
            },
            ModelDoc::Scenario { scenarios } => ClickModel::Scenario {
                scenarios: scenarios
                    .iter()
                    .map(|s| Scenario::new(s.prob, s.clicks.clone()))
                    .collect(),
            },
        };
        Instance::new(keywords, self.budget, model)
    }
}

fn parse_error(err: serde_json::Error) -> SboError {
    SboError::Validation(format!("malformed document: {err}"))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents always serialize");
    out.push('\n');
    out
}

pub fn instance_to_json(instance: &Instance) -> String {
    to_json(&InstanceDocument::from(instance))
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(parse_error)?;
    doc.to_instance()
}

pub fn bids_to_json(bids: &BidVector) -> String {
    to_json(&BidsDocument {
        schema_version: SCHEMA_VERSION,
        bids: bids.as_slice().to_vec(),
    })
}

/// Parses a bids document, or a bare JSON array of bids.
pub fn bids_from_json(text: &str) -> Result<BidVector> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Doc(BidsDocument),
        Bare(Vec<f64>),
    }
    let bids = match serde_json::from_str(text).map_err(parse_error)? {
        Either::Doc(doc) => {
            check_version(doc.schema_version)?;
            doc.bids
        }
        Either::Bare(bids) => bids,
    };
    BidVector::new(bids)
}

/// Reads a file, or standard input when `path` is `-`.
pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| SboError::Io(format!("{}: {e}", path.display())))
    }
}

/// Writes `text` to a file (through a temporary file and a rename), or to
/// standard output when `path` is `-`.
pub fn write_output(path: &Path, text: &str) -> Result<()> {
    use std::io::Write;
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return Ok(out.flush()?);
    }
    let io_err = |e: std::io::Error| SboError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(io_err)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read_input(path)?)
}

pub fn load_bids(path: &Path, instance: &Instance) -> Result<BidVector> {
    let bids = bids_from_json(&read_input(path)?)?;
    if bids.len() != instance.n() {
        return Err(SboError::Dimension {
            what: "bids",
            expected: instance.n(),
            found: bids.len(),
        });
    }
    Ok(bids)
}
