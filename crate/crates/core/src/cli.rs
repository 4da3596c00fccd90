//! Command implementations behind the `sbo` binary.
//!
//! Each command takes parsed inputs and returns a serializable report, so it
//! can be driven from tests without spawning a process. Reports echo every
//! parameter needed to reproduce the run.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use crate::dist::{ModelKind, RNG_ALGORITHM};
use crate::document::{InstanceDocument, SCHEMA_VERSION};
use crate::error::{Result, SboError};
use crate::eval::{self, EvalReport, EXACT_ORACLE_CAP};
use crate::gen::{self, CliqueReductionParams, Graph, RandomConfig};
use crate::model::{BidVector, Instance};
use crate::opt::{self, bruteforce_cap, OptReport};

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// Process exit code for an error: 2 for invalid input, 3 for size caps,
/// 4 for I/O.
pub fn exit_code(err: &SboError) -> i32 {
    match err {
        SboError::Dimension { .. }
        | SboError::InvalidWeight { .. }
        | SboError::Validation(_)
        | SboError::ModelMismatch { .. }
        | SboError::Parameter(_) => 2,
        SboError::OracleTooLarge { .. } | SboError::SizeCap { .. } => 3,
        SboError::Io(_) => 4,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethodArg {
    Exact,
    Ptas,
    Mc,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptMethodArg {
    Auto,
    Prefix,
    Exact,
    Bruteforce,
    Ptas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenerateKind {
    Nonprefix,
    Gap,
    Clique,
    Random,
}

fn invalid_method(method: &str, model: ModelKind, valid: &str) -> SboError {
    SboError::Parameter(format!(
        "method {method} is not available for the {model} model; valid methods: {valid}"
    ))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvaluateOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub model: ModelKind,
    pub method: EvalMethodArg,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    pub oracle_cap: u128,
    pub bids: BidVector,
    pub report: EvalReport,
}

pub fn evaluate(
    instance: &Instance,
    bids: &BidVector,
    method: EvalMethodArg,
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<EvaluateOutput> {
    let model = instance.model().kind();
    let report = match method {
        EvalMethodArg::Exact => eval::eval_exact(bids, instance)?,
        EvalMethodArg::Ptas if model == ModelKind::Independent => {
            eval::eval_independent_ptas(bids, instance, epsilon)?
        }
        EvalMethodArg::Ptas => return Err(invalid_method("ptas", model, "exact, mc, auto")),
        EvalMethodArg::Mc => eval::eval_monte_carlo(bids, instance, samples, seed)?,
        EvalMethodArg::Auto => eval::eval_auto(bids, instance, epsilon)?,
    };
    let sampled = method == EvalMethodArg::Mc;
    Ok(EvaluateOutput {
        schema_version: SCHEMA_VERSION,
        command: "evaluate",
        model,
        method,
        epsilon,
        samples: sampled.then_some(samples),
        seed: sampled.then_some(seed),
        rng: sampled.then_some(RNG_ALGORITHM),
        oracle_cap: EXACT_ORACLE_CAP,
        bids: bids.clone(),
        report,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OptimizeOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub model: ModelKind,
    pub method: OptMethodArg,
    pub epsilon: f64,
    pub bruteforce_cap: usize,
    pub result: OptReport,
}

pub fn optimize(instance: &Instance, method: OptMethodArg, epsilon: f64) -> Result<OptimizeOutput> {
    use ModelKind::*;
    let model = instance.model().kind();
    let cap = bruteforce_cap();
    let result = match (method, model) {
        (OptMethodArg::Auto | OptMethodArg::Exact, Fixed) => opt::opt_fixed_fractional(instance)?,
        (OptMethodArg::Auto | OptMethodArg::Exact, Proportional) => {
            opt::opt_proportional_exact(instance)?
        }
        (OptMethodArg::Auto | OptMethodArg::Ptas, Independent) => {
            opt::opt_independent_prefix(instance, epsilon)?
        }
        (OptMethodArg::Auto, Scenario) if instance.n() > cap => {
            opt::opt_prefix_search(instance, epsilon)?
        }
        (OptMethodArg::Auto | OptMethodArg::Bruteforce, Scenario) => {
            opt::opt_scenario_bruteforce_capped(instance, cap)?
        }
        (OptMethodArg::Bruteforce, Fixed) => opt::opt_fixed_integer(instance)?,
        (OptMethodArg::Ptas, Proportional) => opt::opt_proportional_ptas(instance, epsilon)?,
        (OptMethodArg::Prefix, _) => opt::opt_prefix_search(instance, epsilon)?,
        (OptMethodArg::Exact, _) => {
            return Err(invalid_method("exact", model, "auto, prefix, ptas or bruteforce as applicable"))
        }
        (OptMethodArg::Bruteforce, _) => {
            let valid = if model == Independent { "auto, prefix, ptas" } else { "auto, prefix, exact, ptas" };
            return Err(invalid_method("bruteforce", model, valid));
        }
        (OptMethodArg::Ptas, _) => {
            return Err(invalid_method("ptas", model, "auto, prefix, exact, bruteforce"))
        }
    };
    Ok(OptimizeOutput {
        schema_version: SCHEMA_VERSION,
        command: "optimize",
        model,
        method,
        epsilon,
        bruteforce_cap: cap,
        result,
    })
}

/// Inputs for [`generate`]; which fields are required depends on the kind.
#[derive(Debug, Clone, Default)]
pub struct GenerateParams {
    pub n: Option<usize>,
    pub c: Option<f64>,
    pub budget: Option<f64>,
    pub graph: Option<Graph>,
    pub k: Option<usize>,
    pub model: Option<ModelKind>,
    pub seed: u64,
}

fn required<T: Clone>(value: &Option<T>, flag: &str, kind: &str) -> Result<T> {
    value
        .clone()
        .ok_or_else(|| SboError::Parameter(format!("--{flag} is required for kind {kind}")))
}

/// Target and parameter record written next to a generated clique instance.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionSidecar {
    pub schema_version: u32,
    #[serde(rename = "V")]
    pub target: f64,
    pub params: CliqueReductionParams,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

pub struct Generated {
    pub document: InstanceDocument,
    pub sidecar: Option<ReductionSidecar>,
}

pub fn generate(kind: GenerateKind, params: &GenerateParams) -> Result<Generated> {
    let mut sidecar = None;
    let instance = match kind {
        GenerateKind::Nonprefix => gen::gen_nonprefix_example(),
        GenerateKind::Gap => gen::gen_gap_example(
            required(&params.n, "n", "gap")?,
            required(&params.c, "c", "gap")?,
            required(&params.budget, "budget", "gap")?,
        )?,
        GenerateKind::Clique => {
            let graph = required(&params.graph, "graph", "clique")?;
            let red = gen::gen_clique_reduction(&graph, required(&params.k, "k", "clique")?)?;
            sidecar = Some(ReductionSidecar {
                schema_version: SCHEMA_VERSION,
                target: red.target,
                params: red.params,
                nodes: graph.node_count(),
                edges: graph.edges().to_vec(),
            });
            red.instance
        }
        GenerateKind::Random => gen::gen_random(
            required(&params.model, "model", "random")?,
            required(&params.n, "n", "random")?,
            params.seed,
            &RandomConfig::default(),
        )?,
    };
    Ok(Generated {
        document: InstanceDocument::from(&instance),
        sidecar,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub has_clique: bool,
    pub optimum: f64,
    #[serde(rename = "V")]
    pub target: f64,
    pub bids: BidVector,
    pub params: CliqueReductionParams,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.has_clique { "CLIQUE-YES" } else { "CLIQUE-NO" };
        write!(f, "{tag} optimum={} V={}", self.optimum, self.target)
    }
}

/// Builds the reduction for `graph` and `k` and solves it exhaustively.
pub fn verify_reduction(graph: &Graph, k: usize) -> Result<Verdict> {
    let red = gen::gen_clique_reduction(graph, k)?;
    let best = opt::opt_scenario_bruteforce(&red.instance)?;
    Ok(Verdict {
        has_clique: best.value.value >= red.target,
        optimum: best.value.value,
        target: red.target,
        bids: best.bids,
        params: red.params,
    })
}
