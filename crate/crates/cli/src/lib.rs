//! Command dispatch, result bundles and table export for the `davlab` binary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use davlab_core::additive::{
    balanced_factorization, cauchy_davenport_check, dgm_check, dicyclic_direct, dicyclic_product_one_check,
    key_equivalence_check, random_balanced_instance, AbelianSequence,
};
use davlab_core::group::CayleyJson;
use davlab_core::index2::{
    build_group, centralizer_of_tau, enumerate_groups, structural_invariants, Index2Params, PresentationType,
    TwoGroupKind,
};
use davlab_core::search::{
    characterization_report, check_upper_bounds, davenport_report, large_davenport, small_davenport,
    verify_davenport_formulas, DavenportReport, SearchOptions, DEEP_CAP, DEFAULT_CAP,
};
use davlab_core::setpartition::find_subsequence_with_setpartition;
use davlab_core::witness::{check_all_upto, lower_bound_witness, WitnessRecord};
use davlab_core::{FiniteGroup, Sequence};

pub mod trials;

/// Seed used when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 0xDA71AB;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] davlab_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    /// `1` when a computation contradicted a closed form, `2` otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Core(davlab_core::Error::Mismatch(_)) => 1,
            _ => 2,
        }
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Parser, Debug, Clone, Serialize, Deserialize)]
#[command(
    name = "davlab",
    version,
    about = "Zero-sum computations over groups with a cyclic index-2 subgroup"
)]
pub struct RunConfig {
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, env = "DAVLAB_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Root seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the result bundle here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Raise the search cap from order 12 to order 16.
    #[arg(long, global = true)]
    pub deep: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum Command {
    /// Construct groups and check their structure.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Small and large Davenport constants.
    #[command(subcommand)]
    Davenport(DavenportCommand),
    /// Build and check the long atom of length n + n⁺.
    Witness(WitnessArgs),
    /// Check subgroup, quotient and commutator bounds on D(G).
    Bounds(GroupArgs),
    /// Additive checks over cyclic groups.
    #[command(subcommand)]
    Additive(AdditiveCommand),
    /// Setpartition existence and construction.
    #[command(subcommand)]
    Setpartition(SetpartitionCommand),
    /// End-to-end runs.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Convert a saved bundle to a table.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
pub struct GroupArgs {
    /// Parameters as JSON, e.g. {"s":0,"m":3,"r":2,"ptype":"A"}.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub ptype: Option<String>,
    /// Cayley table JSON file {order, table, labels?}.
    #[arg(long)]
    pub cayley: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum GroupCommand {
    /// Build one group and cross-check G', Z(G) and C_G(τ).
    Build(GroupArgs),
    /// List every group up to an order with its invariants.
    Classify {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum DavenportCommand {
    Small(GroupArgs),
    Large(GroupArgs),
    /// Both constants compared with d = |G|-1 or |G|/2 and D = d + |G'|.
    Verify(GroupArgs),
    /// Bounded check of the characterization of D(G).
    Characterize {
        #[command(flatten)]
        group: GroupArgs,
        /// Bound to test; defaults to the computed D(G).
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = 1)]
        max_extra: usize,
    },
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Check every non-abelian group up to this order instead.
    #[arg(long)]
    pub check_all_upto: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct RandomArgs {
    /// Run randomized trials instead of a single instance.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum AdditiveCommand {
    /// Sumset size against min{p, Σ|Aᵢ| - n + 1}.
    Cd {
        #[arg(long)]
        p: usize,
        /// JSON list of residue lists, e.g. [[0,1],[0,1]].
        #[arg(long, required_unless_present = "random")]
        sets: Option<String>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// |Σₙ(S)| against the stabilizer bound, over Z_k.
    Dgm {
        #[arg(long)]
        k: usize,
        /// JSON list of residues.
        #[arg(long, required_unless_present = "random")]
        seq: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// The two descriptions of σ(T) - σ(S - T) over |T| = n, over Z_k.
    Keyeq {
        #[arg(long)]
        k: usize,
        #[arg(long, required_unless_present = "random")]
        seq: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Balanced factorization S = U₁U₂V₁V₂ over Z_{2p}.
    Factorize {
        #[arg(long)]
        p: usize,
        #[arg(long, required_unless_present = "random")]
        t1: Option<String>,
        #[arg(long, required_unless_present = "random")]
        t2: Option<String>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Product-one test on τ⟨α⟩ in Q_{4p} through Z_{2p}, compared with π.
    Dicyclic {
        #[arg(long)]
        p: usize,
        /// Sequence literal, e.g. [["t",1],["t*a^3",1]].
        #[arg(long, required_unless_present = "random")]
        seq: Option<String>,
        #[command(flatten)]
        random: RandomArgs,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum SetpartitionCommand {
    Check {
        /// JSON list of ground-set elements (strings or numbers).
        #[arg(long)]
        seq: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum VerifyCommand {
    /// Constants, witnesses and structure for every group up to an order.
    Catalog {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ExportArgs {
    /// A bundle written with --out.
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Destination file.
    #[arg(long)]
    pub table: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

/// One randomized trial; `seed` and `stream` replay it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub check: String,
    pub seed: u64,
    pub stream: u64,
    pub ok: bool,
    pub instance: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultBundle {
    pub tool_version: String,
    pub config: RunConfig,
    pub verified: bool,
    pub groups: Vec<DavenportReport>,
    pub witnesses: Vec<WitnessRecord>,
    pub checks: Vec<CheckSummary>,
    pub trials: Vec<TrialRecord>,
    pub output: Value,
    pub timings: BTreeMap<String, u64>,
}

impl ResultBundle {
    fn new(config: &RunConfig) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            verified: true,
            groups: Vec::new(),
            witnesses: Vec::new(),
            checks: Vec::new(),
            trials: Vec::new(),
            output: Value::Null,
            timings: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.verified &= ok;
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) if ok => c.passed += 1,
            Some(c) => c.failed += 1,
            None => self.checks.push(CheckSummary {
                name: name.to_string(),
                passed: ok as u64,
                failed: !ok as u64,
            }),
        }
    }

    fn trial(&mut self, record: TrialRecord) {
        self.check(&record.check.clone(), record.ok);
        self.trials.push(record);
    }

    pub fn exit_code(&self) -> u8 {
        if self.verified {
            0
        } else {
            1
        }
    }
}

impl RunConfig {
    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            cap: if self.deep { DEEP_CAP } else { DEFAULT_CAP },
        }
    }
}

/// A group together with its index-2 parameters when it came from them.
pub struct ResolvedGroup {
    pub group: FiniteGroup,
    pub name: String,
    pub params: Option<Index2Params>,
}

impl ResolvedGroup {
    /// Whether the closed forms for d and D are claimed for this group.
    fn has_cyclic_index2(&self) -> bool {
        self.params.is_some() || (0..self.group.order()).any(|x| 2 * self.group.element_order(x) >= self.group.order())
    }
}

pub fn resolve_group(args: &GroupArgs) -> RunResult<ResolvedGroup> {
    let flags = [
        args.s.is_some(),
        args.m.is_some(),
        args.r.is_some(),
        args.ptype.is_some(),
    ];
    let sources = args.group.is_some() as usize + args.cayley.is_some() as usize + flags.iter().any(|&f| f) as usize;
    if sources != 1 {
        return Err(RunError::Usage(
            "give exactly one of --group JSON, --s/--m/--r/--ptype, or --cayley FILE".into(),
        ));
    }
    if let Some(path) = &args.cayley {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let json: CayleyJson = serde_json::from_str(&text)?;
        let group = FiniteGroup::from_cayley_json(&json)?;
        let name = path
            .file_stem()
            .map_or("cayley".into(), |s| s.to_string_lossy().into_owned());
        return Ok(ResolvedGroup {
            group,
            name,
            params: None,
        });
    }
    let params = match &args.group {
        Some(text) => serde_json::from_str::<Index2Params>(text)?,
        None => {
            let (Some(s), Some(m), Some(r), Some(t)) = (args.s, args.m, args.r, &args.ptype) else {
                return Err(RunError::Usage("--s, --m, --r and --ptype must all be given".into()));
            };
            Index2Params::new(s, m, r, t.parse::<PresentationType>()?)
        }
    };
    let built = build_group(params)?;
    Ok(ResolvedGroup {
        name: built.name(),
        group: built.group().clone(),
        params: Some(params),
    })
}

fn params_of(args: &GroupArgs) -> RunResult<Index2Params> {
    resolve_group(args)?
        .params
        .ok_or_else(|| RunError::Usage("this command needs index-2 parameters, not a Cayley table".into()))
}

fn labels(g: &FiniteGroup, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&e| g.label(e).to_string()).collect()
}

/// Runs one command and collects everything it computed.
pub fn run(config: &RunConfig) -> RunResult<ResultBundle> {
    let mut bundle = ResultBundle::new(config);
    let start = Instant::now();
    let opts = config.search_options();
    match &config.command {
        Command::Group(GroupCommand::Build(args)) => group_build(&mut bundle, args)?,
        Command::Group(GroupCommand::Classify { max_order }) => {
            let mut rows = Vec::new();
            for p in enumerate_groups(*max_order) {
                let g = build_group(p)?;
                let ok = structural_invariants(&g).is_ok()
                    && (matches!(g.kind(), TwoGroupKind::Cyclic | TwoGroupKind::GeneralizedQuaternion)
                        || centralizer_of_tau(&g).is_ok());
                bundle.check("structure", ok);
                rows.push(p.info()?);
            }
            bundle.output = serde_json::to_value(rows)?;
        }
        Command::Davenport(cmd) => davenport(&mut bundle, cmd, &opts)?,
        Command::Witness(args) => {
            let records = match args.check_all_upto {
                Some(max) => check_all_upto(max)?,
                None => vec![lower_bound_witness(params_of(&args.group)?)?],
            };
            for rec in &records {
                bundle.check("witness", rec.checks.all());
            }
            bundle.witnesses = records;
        }
        Command::Bounds(args) => {
            let g = resolve_group(args)?;
            let report = check_upper_bounds(&g.group, &opts)?;
            for c in &report.checks {
                bundle.check(&c.bound, c.holds);
            }
            bundle.output = serde_json::to_value(report)?;
        }
        Command::Additive(cmd) => additive(&mut bundle, cmd, config.seed)?,
        Command::Setpartition(SetpartitionCommand::Check { seq, ell, n }) => {
            let items: Vec<Value> = serde_json::from_str(seq)?;
            let keys: Vec<String> = items.iter().map(|v| v.to_string()).collect();
            let found = find_subsequence_with_setpartition(&keys, *ell, *n);
            let ok = found.as_ref().is_none_or(|(sub, part)| {
                part.is_valid() && part.is_near_equal() && part.len() == *n && part.sequence() == *sub
            });
            bundle.check("setpartition", ok);
            let back = |k: &String| serde_json::from_str::<Value>(k).unwrap_or(Value::String(k.clone()));
            bundle.output = match found {
                Some((sub, part)) => json!({
                    "exists": true,
                    "subsequence": sub.iter().map(back).collect::<Vec<_>>(),
                    "partition": part.blocks.iter().map(|b| b.iter().map(back).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                None => json!({ "exists": false }),
            };
        }
        Command::Verify(VerifyCommand::Catalog { max_order }) => {
            let cap = opts.cap;
            if *max_order > cap {
                return Err(davlab_core::Error::CapExceeded { order: *max_order, cap }.into());
            }
            for p in enumerate_groups(*max_order) {
                let t = Instant::now();
                let report = verify_davenport_formulas(p, &opts)?;
                bundle
                    .timings
                    .insert(report.group.clone(), t.elapsed().as_millis() as u64);
                bundle.check("davenport-formulas", report.matches());
                let g = build_group(p)?;
                bundle.check("structure", structural_invariants(&g).is_ok());
                if !p.is_abelian() {
                    let rec = lower_bound_witness(p)?;
                    bundle.check("witness", rec.checks.all());
                    bundle.witnesses.push(rec);
                }
                bundle.groups.push(report);
            }
        }
        Command::Export(args) => {
            let text = fs::read_to_string(&args.bundle).map_err(io_err(&args.bundle))?;
            let saved: ResultBundle = serde_json::from_str(&text)?;
            export_table(&saved, args.format, &args.table)?;
            bundle.output = json!({ "rows": saved.groups.len(), "table": args.table });
        }
    }
    bundle
        .timings
        .insert("total".into(), start.elapsed().as_millis() as u64);
    Ok(bundle)
}

fn group_build(bundle: &mut ResultBundle, args: &GroupArgs) -> RunResult<()> {
    let resolved = resolve_group(args)?;
    let g = &resolved.group;
    let commutator = g.commutator_subgroup();
    let center = g.center();
    let mut out = json!({
        "name": resolved.name,
        "order": g.order(),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "commutator": labels(g, &commutator.elements()),
        "center": labels(g, &center.elements()),
    });
    if let Some(p) = resolved.params {
        let built = build_group(p)?;
        structural_invariants(&built)?;
        bundle.check("structure", true);
        out["info"] = serde_json::to_value(p.info()?)?;
        match centralizer_of_tau(&built) {
            Ok(c) => {
                bundle.check("centralizer", true);
                out["centralizer_of_tau"] = json!(labels(g, &c.elements()));
            }
            Err(davlab_core::Error::Precondition(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    bundle.output = out;
    Ok(())
}

fn davenport(bundle: &mut ResultBundle, cmd: &DavenportCommand, opts: &SearchOptions) -> RunResult<()> {
    match cmd {
        DavenportCommand::Small(args) | DavenportCommand::Large(args) => {
            let g = resolve_group(args)?;
            let small = matches!(cmd, DavenportCommand::Small(_));
            let formula_d = davlab_core::search::d_formula(&g.group);
            let (key, result, formula) = if small {
                ("d", small_davenport(&g.group, opts)?, formula_d)
            } else {
                let commutator = g.group.commutator_subgroup().order();
                ("D", large_davenport(&g.group, opts)?, formula_d + commutator)
            };
            let claimed = g.has_cyclic_index2();
            if claimed {
                bundle.check(&format!("{key}-formula"), result.value == formula);
            }
            bundle.output = json!({
                "group": g.name,
                key: result.value,
                "formula": claimed.then_some(formula),
                "witness": result.witness.to_label_pairs(&g.group),
                "stats": result.stats,
            });
        }
        DavenportCommand::Verify(args) => {
            let g = resolve_group(args)?;
            let mut report = davenport_report(&g.group, &g.name, opts)?;
            report.params = g.params;
            if g.has_cyclic_index2() {
                bundle.check("davenport-formulas", report.matches());
            }
            bundle.groups.push(report);
        }
        DavenportCommand::Characterize { group, ell, max_extra } => {
            let g = resolve_group(group)?;
            let ell = match ell {
                Some(l) => *l,
                None => large_davenport(&g.group, opts)?.value,
            };
            let report = characterization_report(&g.group, ell, *max_extra, opts)?;
            bundle.check("characterization", report.verified());
            bundle.output = serde_json::to_value(report)?;
        }
    }
    Ok(())
}

fn parse_residues(text: &str, k: usize) -> RunResult<Sequence> {
    let values: Vec<usize> = serde_json::from_str(text)?;
    Ok(Sequence::from_elements(k, values.into_iter().map(|v| v % k)))
}

fn residues(s: &Sequence) -> Vec<usize> {
    s.elements()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn additive(bundle: &mut ResultBundle, cmd: &AdditiveCommand, seed: u64) -> RunResult<()> {
    match cmd {
        AdditiveCommand::Cd { p, sets, random } => {
            if random.random {
                for t in 0..random.trials {
                    let sets = trials::random_sets(*p, &mut rng_for(seed, t));
                    let r = cauchy_davenport_check(*p, &sets)?;
                    bundle.trial(record(
                        "cauchy-davenport",
                        seed,
                        t,
                        r.ok,
                        json!({ "p": p, "sets": sets }),
                    ));
                }
            } else {
                let sets: Vec<Vec<usize>> = serde_json::from_str(sets.as_deref().unwrap_or("[]"))?;
                let r = cauchy_davenport_check(*p, &sets)?;
                bundle.check("cauchy-davenport", r.ok);
                bundle.output = serde_json::to_value(r)?;
            }
        }
        AdditiveCommand::Dgm { k, seq, n, random } => {
            let g = FiniteGroup::cyclic(*k);
            if random.random {
                for t in 0..random.trials {
                    let (s, n) = trials::random_sequence_and_n(*k, 12, &mut rng_for(seed, t));
                    let r = dgm_check(&g, &AbelianSequence::new(&g, s.clone())?, n)?;
                    let inst = json!({ "k": k, "seq": residues(&s), "n": n });
                    bundle.trial(record("dgm", seed, t, r.ok, inst));
                }
            } else {
                let s = parse_residues(seq.as_deref().unwrap_or("[]"), *k)?;
                let n = n.ok_or_else(|| RunError::Usage("--n is required".into()))?;
                let r = dgm_check(&g, &AbelianSequence::new(&g, s)?, n)?;
                bundle.check("dgm", r.ok);
                bundle.output = json!({
                    "sums": r.sums.to_vec(),
                    "stabilizer": r.stabilizer.elements(),
                    "bound": r.bound,
                    "ok": r.ok,
                });
            }
        }
        AdditiveCommand::Keyeq { k, seq, n, random } => {
            let g = FiniteGroup::cyclic(*k);
            if random.random {
                for t in 0..random.trials {
                    let (s, n) = trials::random_sequence_and_n(*k, 10, &mut rng_for(seed, t));
                    let ok = key_equivalence_check(&g, &AbelianSequence::new(&g, s.clone())?, n)?;
                    let inst = json!({ "k": k, "seq": residues(&s), "n": n });
                    bundle.trial(record("key-equivalence", seed, t, ok, inst));
                }
            } else {
                let s = parse_residues(seq.as_deref().unwrap_or("[]"), *k)?;
                let n = n.ok_or_else(|| RunError::Usage("--n is required".into()))?;
                let ok = key_equivalence_check(&g, &AbelianSequence::new(&g, s)?, n)?;
                bundle.check("key-equivalence", ok);
                bundle.output = json!({ "equal": ok });
            }
        }
        AdditiveCommand::Factorize { p, t1, t2, random } => {
            let order = 2 * p;
            if random.random {
                for t in 0..random.trials {
                    let (a, b) = random_balanced_instance(*p, 4, &mut rng_for(seed, t));
                    let s = a.concat(&b).map_err(RunError::Core)?;
                    let ok = balanced_factorization(*p, &a, &b)
                        .map(|q| q.u1.len() <= 2 && q.is_valid(&FiniteGroup::cyclic(order), &s))
                        .unwrap_or(false);
                    let inst = json!({ "p": p, "t1": residues(&a), "t2": residues(&b) });
                    bundle.trial(record("balanced-factorization", seed, t, ok, inst));
                }
            } else {
                let a = parse_residues(t1.as_deref().unwrap_or("[]"), order)?;
                let b = parse_residues(t2.as_deref().unwrap_or("[]"), order)?;
                let q = balanced_factorization(*p, &a, &b)?;
                let s = a.concat(&b)?;
                bundle.check("balanced-factorization", q.is_valid(&FiniteGroup::cyclic(order), &s));
                bundle.output = json!({
                    "rule": q.rule,
                    "u1": residues(&q.u1),
                    "u2": residues(&q.u2),
                    "v1": residues(&q.v1),
                    "v2": residues(&q.v2),
                });
            }
        }
        AdditiveCommand::Dicyclic { p, seq, random } => {
            let params = Index2Params::new(1, *p, 2 * p - 1, PresentationType::B);
            let g = build_group(params)?;
            if random.random {
                for t in 0..random.trials {
                    let r = trials::random_tau_coset_sequence(&g, 14, &mut rng_for(seed, t));
                    let ok = dicyclic_product_one_check(&g, &r)? == dicyclic_direct(&g, &r)?;
                    let inst = json!({ "p": p, "seq": r.to_label_pairs(g.group()) });
                    bundle.trial(record("dicyclic", seed, t, ok, inst));
                }
            } else {
                let r = Sequence::parse(g.group(), seq.as_deref().unwrap_or("[]"))?;
                let via_sums = dicyclic_product_one_check(&g, &r)?;
                let direct = dicyclic_direct(&g, &r)?;
                bundle.check("dicyclic", via_sums == direct);
                bundle.output = json!({ "product_one": via_sums, "direct": direct });
            }
        }
    }
    Ok(())
}

fn record(check: &str, seed: u64, stream: u64, ok: bool, instance: Value) -> TrialRecord {
    TrialRecord {
        check: check.to_string(),
        seed,
        stream,
        ok,
        instance,
    }
}

/// One row of the catalog table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub order: usize,
    pub s: Option<u32>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    #[serde(rename = "type")]
    pub ptype: Option<PresentationType>,
    pub kind: Option<TwoGroupKind>,
    pub n_plus: Option<usize>,
    pub n_minus: Option<usize>,
    pub d: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub d_formula: usize,
    #[serde(rename = "D_formula")]
    pub big_d_formula: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn table_rows(bundle: &ResultBundle) -> Vec<TableRow> {
    bundle
        .groups
        .iter()
        .map(|r| {
            let p = r.params;
            TableRow {
                order: r.order,
                s: p.map(|p| p.s),
                m: p.map(|p| p.m),
                r: p.map(|p| p.r),
                ptype: p.map(|p| p.ptype),
                kind: p.and_then(|p| p.validate().ok()),
                n_plus: p.map(|p| p.n_plus()),
                n_minus: p.map(|p| p.n_minus()),
                d: r.d,
                big_d: r.big_d,
                d_formula: r.d_formula,
                big_d_formula: r.big_d_formula,
                matches: r.matches(),
            }
        })
        .collect()
}

pub const TABLE_COLUMNS: [&str; 13] = [
    "order",
    "s",
    "m",
    "r",
    "type",
    "kind",
    "n_plus",
    "n_minus",
    "d",
    "D",
    "d_formula",
    "D_formula",
    "match",
];

/// Writes the catalog table of a bundle as CSV or JSON.
pub fn export_table(bundle: &ResultBundle, format: TableFormat, path: &Path) -> RunResult<()> {
    let rows = table_rows(bundle);
    match format {
        TableFormat::Json => {
            let text = serde_json::to_string_pretty(&rows)?;
            fs::write(path, text + "\n").map_err(io_err(path))?;
        }
        TableFormat::Csv => {
            let file = fs::File::create(path).map_err(io_err(path))?;
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
            w.write_record(TABLE_COLUMNS)?;
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush().map_err(io_err(path))?;
        }
    }
    Ok(())
}

/// Serializes a bundle; timing fields are the only run-dependent values.
pub fn bundle_json(bundle: &ResultBundle) -> RunResult<String> {
    Ok(serde_json::to_string_pretty(bundle)? + "\n")
}
