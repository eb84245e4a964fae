//! Verification harness: a fixed registry of checks, run for one `m`, each
//! producing a JSON report entry.

use std::cell::OnceCell;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{AlgebraKind, BasisCache, CacheKey};
use crate::centralizer::{
    build_centralizer, check_direct_sum, check_products, check_subalgebra, closure_pairs,
    index_set, index_set_by_enumeration, orbits_by_group_action, rho_partition, subalgebra_labels,
    tuple_bijection, tuple_bijection_inverse, BlockTag, CentralizerBasis,
};
use crate::combinatorics::{intersection_numbers, DoubledOddGraph};
use crate::covering::verify_intertwining;
use crate::error::{Error, Result};
use crate::export::{export_matrices, ExportSummary};
use crate::formulas::{
    center_dimension_formula, centralizer_dimension_formula, index_set_size, vertex_count,
};
use crate::terwilliger::{
    block_profile, build_terwilliger, center_dimension, terwilliger_generators, upsilon,
    verify_equality, verify_inclusion, verify_sphere_identities, GeneratorChoice,
    TerwilligerAlgebra,
};

/// Ordered pairs tried exhaustively in the closure check before switching to
/// sampling; covers every `m <= 2`.
const EXHAUSTIVE_PAIRS: usize = 3600;
const SAMPLED_PAIRS: usize = 500;
const SAMPLE_SEED: u64 = 0x0dd_7e55;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    VertexCount,
    DistanceRegular,
    IndexSets,
    Bijections,
    OrbitsOracle,
    CentralizerDim,
    SubalgebraClosure,
    DirectSum,
    Lemma41,
    TerwilligerDim,
    Inclusion,
    Equality,
    CenterDim,
    Upsilon,
    BlockProfile,
    PsiIntertwining,
}

impl CheckId {
    /// Registry order, which is also execution order.
    pub const ALL: [CheckId; 16] = [
        CheckId::VertexCount,
        CheckId::DistanceRegular,
        CheckId::IndexSets,
        CheckId::Bijections,
        CheckId::OrbitsOracle,
        CheckId::CentralizerDim,
        CheckId::SubalgebraClosure,
        CheckId::DirectSum,
        CheckId::Lemma41,
        CheckId::TerwilligerDim,
        CheckId::Inclusion,
        CheckId::Equality,
        CheckId::CenterDim,
        CheckId::Upsilon,
        CheckId::BlockProfile,
        CheckId::PsiIntertwining,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::VertexCount => "vertex-count",
            CheckId::DistanceRegular => "distance-regular",
            CheckId::IndexSets => "index-sets",
            CheckId::Bijections => "bijections",
            CheckId::OrbitsOracle => "orbits-oracle",
            CheckId::CentralizerDim => "centralizer-dim",
            CheckId::SubalgebraClosure => "subalgebra-closure",
            CheckId::DirectSum => "direct-sum",
            CheckId::Lemma41 => "lemma41",
            CheckId::TerwilligerDim => "terwilliger-dim",
            CheckId::Inclusion => "inclusion",
            CheckId::Equality => "equality",
            CheckId::CenterDim => "center-dim",
            CheckId::Upsilon => "upsilon",
            CheckId::BlockProfile => "block-profile",
            CheckId::PsiIntertwining => "psi-intertwining",
        }
    }

    /// Checks about `T`, whose statements assume `m >= 3`.
    pub fn needs_m_at_least_3(self) -> bool {
        self >= CheckId::Lemma41
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Parses `all` or a comma-separated list of check ids.
pub fn parse_checks(s: &str) -> Result<Vec<CheckId>> {
    if s.trim() == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub m: usize,
    pub checks: Vec<CheckId>,
    pub cache_dir: Option<PathBuf>,
    pub export_dir: Option<PathBuf>,
    pub allow_m5: bool,
}

impl RunConfig {
    /// Every check, no cache, no export.
    pub fn new(m: usize) -> Self {
        Self {
            m,
            checks: CheckId::ALL.to_vec(),
            cache_dir: None,
            export_dir: None,
            allow_m5: false,
        }
    }

    pub fn with_checks(mut self, checks: Vec<CheckId>) -> Self {
        self.checks = checks;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.m {
            1..=4 => Ok(()),
            5 if self.allow_m5 => Ok(()),
            m => Err(Error::UnsupportedM {
                m,
                allowed: if self.allow_m5 {
                    "1..=5"
                } else {
                    "1..=4 (5 with --allow-m5)"
                },
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperFormula,
    DerivedOracle,
    FindingOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: CheckId,
    pub m: usize,
    pub expected: Expected,
    pub actual: Value,
    pub status: Status,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default)]
pub struct RunOutcome {
    pub reports: Vec<VerificationReport>,
    pub export: Option<ExportSummary>,
}

impl RunOutcome {
    pub fn any_failed(&self) -> bool {
        self.reports.iter().any(|r| r.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failed())
    }

    pub fn report(&self, check: CheckId) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.check == check)
    }

    /// Pretty-printed JSON array of every report.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.reports).expect("reports serialize")
    }

    /// Same as [`to_json`](Self::to_json) with every `elapsed_ms` set to 0.
    pub fn to_json_without_timing(&self) -> String {
        let zeroed: Vec<VerificationReport> = self
            .reports
            .iter()
            .cloned()
            .map(|r| VerificationReport { elapsed_ms: 0, ..r })
            .collect();
        serde_json::to_string_pretty(&zeroed).expect("reports serialize")
    }
}

/// Lazily built data shared by the checks of one run.
struct Context {
    graph: DoubledOddGraph,
    cache: Option<BasisCache>,
    centralizer: OnceCell<CentralizerBasis>,
    terwilliger: OnceCell<TerwilligerAlgebra>,
    center_dim: OnceCell<usize>,
}

impl Context {
    fn new(graph: DoubledOddGraph, cache: Option<BasisCache>) -> Self {
        Self {
            graph,
            cache,
            centralizer: OnceCell::new(),
            terwilliger: OnceCell::new(),
            center_dim: OnceCell::new(),
        }
    }

    fn m(&self) -> usize {
        self.graph.m()
    }

    fn centralizer(&self) -> Result<&CentralizerBasis> {
        if let Some(c) = self.centralizer.get() {
            return Ok(c);
        }
        let c = build_centralizer(&self.graph)?;
        Ok(self.centralizer.get_or_init(|| c))
    }

    fn terwilliger(&self) -> Result<&TerwilligerAlgebra> {
        if let Some(t) = self.terwilliger.get() {
            return Ok(t);
        }
        let key = CacheKey::new(self.m(), AlgebraKind::Terwilliger);
        let n = self.graph.n();
        let cached = self
            .cache
            .as_ref()
            .and_then(|c| c.load_basis(&key))
            .filter(|c| c.basis.shape() == (n, n));
        let t = match cached {
            Some(hit) => TerwilligerAlgebra {
                m: self.m(),
                basis: hit.basis,
                generators: terwilliger_generators(
                    &self.graph,
                    GeneratorChoice::AllDistanceMatrices,
                ),
                iterations: hit.iterations.unwrap_or(0),
                stabilized: true,
            },
            None => {
                let t = build_terwilliger(&self.graph)?;
                if let Some(cache) = &self.cache {
                    cache.cache_basis(&key, &t.basis, Some(t.iterations))?;
                }
                t
            }
        };
        Ok(self.terwilliger.get_or_init(|| t))
    }

    fn center_dim(&self) -> Result<usize> {
        if let Some(&z) = self.center_dim.get() {
            return Ok(z);
        }
        let z = center_dimension(self.terwilliger()?)?;
        Ok(*self.center_dim.get_or_init(|| z))
    }
}

/// Raw outcome of one check before the status policy is applied.
struct Outcome {
    expected: Value,
    provenance: Provenance,
    actual: Value,
    holds: bool,
}

impl Outcome {
    fn new(expected: Value, provenance: Provenance, actual: Value, holds: bool) -> Self {
        Self {
            expected,
            provenance,
            actual,
            holds,
        }
    }
}

/// Runs the selected checks in registry order and exports if requested.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let graph = DoubledOddGraph::new(cfg.m)?;
    let ctx = Context::new(graph, cfg.cache_dir.as_ref().map(BasisCache::new));

    let mut checks = cfg.checks.clone();
    checks.sort_unstable();
    checks.dedup();

    let mut outcome = RunOutcome::default();
    for check in checks {
        log::info!("m = {}: running {check}", cfg.m);
        let start = Instant::now();
        let result = run_check(&ctx, check);
        let elapsed_ms = start.elapsed().as_millis() as u64;
        outcome
            .reports
            .push(into_report(check, cfg.m, result, elapsed_ms));
    }

    if let Some(dir) = &cfg.export_dir {
        let t = ctx.terwilliger()?;
        outcome.export = Some(export_matrices(
            dir,
            &ctx.graph,
            ctx.centralizer()?,
            Some(&t.basis),
        )?);
    }
    Ok(outcome)
}

fn into_report(
    check: CheckId,
    m: usize,
    result: Result<Outcome>,
    elapsed_ms: u64,
) -> VerificationReport {
    let outside_range = check.needs_m_at_least_3() && m < 3;
    let (expected, actual, status) = match result {
        Ok(o) => {
            let status = if outside_range || (check == CheckId::SubalgebraClosure && o.holds) {
                Status::Finding
            } else if o.holds {
                Status::Pass
            } else {
                Status::Fail
            };
            let provenance = if outside_range {
                Provenance::FindingOnly
            } else {
                o.provenance
            };
            (
                Expected {
                    value: o.expected,
                    provenance,
                },
                o.actual,
                status,
            )
        }
        Err(e) => (
            Expected {
                value: Value::Null,
                provenance: Provenance::FindingOnly,
            },
            json!({ "error": e.to_string() }),
            if outside_range {
                Status::Finding
            } else {
                Status::Fail
            },
        ),
    };
    VerificationReport {
        check,
        m,
        expected,
        actual,
        status,
        elapsed_ms,
    }
}

fn run_check(ctx: &Context, check: CheckId) -> Result<Outcome> {
    let m = ctx.m();
    let g = &ctx.graph;
    use Provenance::*;
    Ok(match check {
        CheckId::VertexCount => {
            let expected = vertex_count(m);
            Outcome::new(
                json!(expected),
                PaperFormula,
                json!(g.n()),
                g.n() == expected,
            )
        }
        CheckId::DistanceRegular => {
            let expected = json!({ "consistent": true, "diameter": g.diameter() });
            match intersection_numbers(g) {
                Ok(table) => Outcome::new(
                    expected,
                    DerivedOracle,
                    json!({
                        "consistent": true,
                        "diameter": table.diameter,
                        "valencies": table.valencies(),
                    }),
                    table.diameter == g.diameter(),
                ),
                Err(e @ Error::Violation { .. }) => Outcome::new(
                    expected,
                    DerivedOracle,
                    json!({ "consistent": false, "violation": e.to_string() }),
                    false,
                ),
                Err(e) => return Err(e),
            }
        }
        CheckId::IndexSets => {
            let size = index_set_size(m);
            let mut holds = true;
            let mut actual = serde_json::Map::new();
            for block in BlockTag::ALL {
                let closed = index_set(block, m);
                let matches = closed == index_set_by_enumeration(g, block);
                holds &= matches && closed.len() == size;
                actual.insert(
                    block.to_string(),
                    json!({ "size": closed.len(), "matches_enumeration": matches }),
                );
            }
            Outcome::new(
                json!({ "size_per_block": size }),
                PaperFormula,
                Value::Object(actual),
                holds,
            )
        }
        CheckId::Bijections => {
            let target = index_set(BlockTag::I, m);
            let mut actual = serde_json::Map::new();
            let mut holds = true;
            for block in [BlockTag::II, BlockTag::III, BlockTag::IV] {
                let source = index_set(block, m);
                let image: Result<std::collections::BTreeSet<_>> = source
                    .iter()
                    .map(|&t| tuple_bijection(block, t, m))
                    .collect();
                let image = image?;
                let inverts = source
                    .iter()
                    .map(|&t| {
                        tuple_bijection(block, t, m)
                            .and_then(|u| tuple_bijection_inverse(block, u, m))
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .eq(source.iter().copied());
                let bijective = image == target && image.len() == source.len() && inverts;
                holds &= bijective;
                actual.insert(block.to_string(), json!(bijective));
            }
            Outcome::new(
                json!({ "II": true, "III": true, "IV": true }),
                PaperFormula,
                Value::Object(actual),
                holds,
            )
        }
        CheckId::OrbitsOracle => {
            let by_group = orbits_by_group_action(g);
            let by_rho = rho_partition(g);
            let expected = centralizer_dimension_formula(m);
            let same = by_group == by_rho;
            Outcome::new(
                json!({ "orbits": expected, "partitions_equal": true }),
                PaperFormula,
                json!({
                    "orbits": by_group.classes,
                    "rho_classes": by_rho.classes,
                    "partitions_equal": same,
                }),
                same && by_group.classes == expected,
            )
        }
        CheckId::CentralizerDim => {
            let a = ctx.centralizer()?;
            let pairs = closure_pairs(a, EXHAUSTIVE_PAIRS, SAMPLED_PAIRS, SAMPLE_SEED);
            let closure = check_products(a, a.span(), &pairs)?;
            let expected = centralizer_dimension_formula(m);
            Outcome::new(
                json!({ "dim": expected, "closed": true }),
                PaperFormula,
                json!({
                    "dim": a.dim(),
                    "closure": closure,
                    "exhaustive": pairs.len() == a.dim() * a.dim(),
                }),
                a.dim() == expected && closure.closed,
            )
        }
        CheckId::SubalgebraClosure => {
            let a = ctx.centralizer()?;
            let [a1, a2, a3] = subalgebra_labels(a);
            let (c1, c2, c3) = (
                check_subalgebra(a, &a1)?,
                check_subalgebra(a, &a2)?,
                check_subalgebra(a, &a3)?,
            );
            let holds = c1.closed && c3.closed;
            Outcome::new(
                json!({ "A1_closed": true, "A3_closed": true, "A2_closed": "reported" }),
                PaperFormula,
                json!({ "A1": c1, "A2": c2, "A3": c3 }),
                holds,
            )
        }
        CheckId::DirectSum => {
            let a = ctx.centralizer()?;
            let ds = check_direct_sum(a)?;
            let s = index_set_size(m);
            let expected = [s, 2 * s, s];
            Outcome::new(
                json!({ "parts": expected, "total": 4 * s, "pairwise_trivial": [true, true, true] }),
                PaperFormula,
                json!(ds),
                ds.holds() && ds.parts == expected && ds.total == a.dim(),
            )
        }
        CheckId::Lemma41 => {
            let outcome = verify_sphere_identities(g, ctx.centralizer()?)?;
            let failed: Vec<&str> = outcome
                .identities
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.name.as_str())
                .collect();
            Outcome::new(
                json!({ "all_hold": true }),
                PaperFormula,
                json!({
                    "identities": outcome.identities.len(),
                    "failed": failed,
                    "swapped_forms": outcome.swapped_forms,
                }),
                outcome.holds(),
            )
        }
        CheckId::TerwilligerDim => {
            let t = ctx.terwilliger()?;
            let expected = centralizer_dimension_formula(m);
            Outcome::new(
                json!({ "dim": expected, "stabilized": true }),
                PaperFormula,
                json!({ "dim": t.dim(), "iterations": t.iterations, "stabilized": t.stabilized }),
                t.dim() == expected && t.stabilized,
            )
        }
        CheckId::Inclusion => {
            let inc = verify_inclusion(ctx.terwilliger()?, ctx.centralizer()?);
            Outcome::new(
                json!({ "contained": true }),
                PaperFormula,
                json!(inc),
                inc.holds(),
            )
        }
        CheckId::Equality => {
            let (t, a) = (ctx.terwilliger()?, ctx.centralizer()?);
            let inc = verify_inclusion(t, a);
            let eq = verify_equality(t, a)?;
            Outcome::new(
                json!({ "equal": true }),
                PaperFormula,
                json!({ "t_in_a": inc, "a_in_t": eq }),
                inc.holds() && eq.holds(),
            )
        }
        CheckId::CenterDim => {
            let z = ctx.center_dim()?;
            let expected = center_dimension_formula(m);
            let ups = upsilon(m).len();
            Outcome::new(
                json!({ "dim": expected, "upsilon_size": expected }),
                PaperFormula,
                json!({ "dim": z, "upsilon_size": ups }),
                z == expected && ups == z,
            )
        }
        CheckId::Upsilon => {
            let u = upsilon(m);
            let z = ctx.center_dim()?;
            Outcome::new(
                json!({ "size": center_dimension_formula(m) }),
                PaperFormula,
                json!({ "pairs": u.pairs, "size": u.len(), "center_dim": z }),
                u.len() == z && u.len() == center_dimension_formula(m),
            )
        }
        CheckId::BlockProfile => {
            let p = block_profile(m);
            let t = ctx.terwilliger()?;
            let z = ctx.center_dim()?;
            Outcome::new(
                json!({ "total_dim": t.dim(), "block_count": z }),
                PaperFormula,
                json!({ "blocks": p.blocks, "total_dim": p.total_dim(), "block_count": p.block_count() }),
                p.total_dim() == t.dim() && p.block_count() == z,
            )
        }
        CheckId::PsiIntertwining => {
            let c = verify_intertwining(g)?;
            Outcome::new(json!({ "holds": true }), DerivedOracle, json!(c), c.holds())
        }
    })
}
