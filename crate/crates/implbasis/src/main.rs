//! Command-line front end: compute bases, run checks, compare against the
//! brute-force oracle, and emit text or JSON reports.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use implbasis::canonical::{canonical_basis, is_uc_system, regularize};
use implbasis::drelation::{d_cycle_witness, delta, verify_tr_with};
use implbasis::ebasis::{
    aggregated_e_basis, e_basis, f_basis, foe_basis, optimized_e_basis, ordered_sequence,
    verify_main_e, verify_rs_min,
};
use implbasis::instances::{
    fixture, random_system, setcover_binary, setcover_nonbinary, SetCoverInstance,
};
use implbasis::io::{parse_implications, render_text, JsonBasis};
use implbasis::kbasis::{all_k_bases, k_basis};
use implbasis::optsearch::{optimum_bases, verify_hierarchy, SearchBounds};
use implbasis::oracle::{is_standard, Oracle};
use implbasis::{Error, ImplicationSet, Tiebreak};

#[derive(Parser)]
#[command(name = "implbasis", version, about = "implicational bases of finite closure systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// ground-set size limit for brute-force oracle operations
    #[arg(long, global = true, default_value_t = 14, env = "IMPLBASIS_ORACLE_BOUND")]
    oracle_bound: usize,
    /// tie-break used when picking minimal order generators
    #[arg(long, global = true, value_enum, default_value_t = TiebreakArg::First)]
    tiebreak: TiebreakArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TiebreakArg {
    First,
    Last,
}

impl From<TiebreakArg> for Tiebreak {
    fn from(t: TiebreakArg) -> Tiebreak {
        match t {
            TiebreakArg::First => Tiebreak::First,
            TiebreakArg::Last => Tiebreak::Last,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the canonical basis
    Canonical { file: String },
    /// Compute a K-basis (or all of them)
    Kbasis {
        file: String,
        #[arg(long)]
        all: bool,
    },
    /// Compute the E-basis family of a system without D-cycles
    Ebasis {
        file: String,
        #[arg(long)]
        aggregated: bool,
        #[arg(long)]
        optimized: bool,
        #[arg(long)]
        f: bool,
        #[arg(long)]
        foe: bool,
        /// emit an ordered direct sequence instead of sorted order
        #[arg(long)]
        ordered: bool,
        /// skip the join-semidistributivity certificate for the F-basis
        #[arg(long)]
        force: bool,
    },
    /// Exhaustively search for optimum bases (desk scale)
    Optimum {
        file: String,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        report_hierarchy: bool,
    },
    /// Rewrite into an equivalent regular basis
    Regularize { file: String },
    /// Size metrics of the input
    Metrics { file: String },
    /// Run a boolean check; exit code 1 when it fails
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Compute attribute relations
    Relation {
        #[command(subcommand)]
        what: RelationCmd,
    },
    /// Brute-force oracle queries
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Generate fixtures, set-cover reductions and random systems
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Verify structural properties against the oracle and the searches
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// standard closure system
    Standard { file: String },
    /// unique criticals
    Uc { file: String },
    /// no D-cycles
    DCycleFree { file: String },
    /// join-semidistributive closure lattice (oracle)
    SdJoin { file: String },
}

#[derive(Subcommand)]
enum RelationCmd {
    /// premise-conclusion pairs of the non-binary part of a regular basis
    Delta { file: String },
    /// the D-relation from minimal covers (oracle)
    D { file: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// all closed sets
    Closed { file: String },
    /// quasi-closed, critical and essential sets
    Critical { file: String },
    /// minimal covers of one attribute
    Covers {
        file: String,
        #[arg(long)]
        attr: String,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// a named built-in fixture
    Fixture { name: String },
    /// a closure system encoding a set cover instance
    Setcover {
        #[arg(long, value_enum)]
        mode: SetcoverMode,
        #[arg(long)]
        infile: String,
    },
    /// a reproducible random standard system
    Random {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'd', long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetcoverMode {
    Nb,
    B,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// refined-basis relation vs. the dual D-relation, up to transitive closure
    Tr { file: String },
    /// the aggregated E-basis refines the canonical basis
    MainE { file: String },
    /// optimized E-basis attains the minimal non-binary right size
    RsMin { file: String },
    /// optimum bases attain every per-critical-set parameter
    Hierarchy { file: String },
}

#[derive(Serialize)]
struct CheckResult {
    name: String,
    pass: bool,
    details: Vec<String>,
}

#[derive(Serialize)]
struct NamedBasis {
    name: String,
    metrics: implbasis::SizeMetrics,
    basis: JsonBasis,
}

#[derive(Serialize, Default)]
struct Report {
    command: String,
    input_digest: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    bases: Vec<NamedBasis>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    sets: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pairs: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Report {
    fn new(command: String) -> Self {
        Report { command, ..Default::default() }
    }

    fn add_basis(&mut self, name: &str, basis: &ImplicationSet) {
        self.bases.push(NamedBasis {
            name: name.to_string(),
            metrics: basis.metrics(),
            basis: JsonBasis::from_set(basis),
        });
    }

    fn add_check(&mut self, name: &str, pass: bool, details: Vec<String>) {
        self.checks.push(CheckResult { name: name.to_string(), pass, details });
    }

    fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for nb in &self.bases {
            let m = nb.metrics.total;
            out.push_str(&format!(
                "# {}: {} implications, s={} (sL={}, sR={})\n",
                nb.name, m.count, m.s, m.s_l, m.s_r
            ));
            for imp in &nb.basis.implications {
                out.push_str(&format!(
                    "{} -> {}\n",
                    imp.premise.join(" "),
                    imp.conclusion.join(" ")
                ));
            }
        }
        for s in &self.sets {
            out.push_str(&format!("{{{s}}}\n"));
        }
        for (a, b) in &self.pairs {
            out.push_str(&format!("{a} {b}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{}: {}\n", c.name, if c.pass { "pass" } else { "FAIL" }));
            for d in &c.details {
                out.push_str(&format!("  {d}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("# {n}\n"));
        }
        out
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(PathBuf::from(path))
    }
}

fn digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let out = hasher.finalize();
    hex_string(&out[..8])
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn load(path: &str, report: &mut Report) -> Result<ImplicationSet, Error> {
    let text = read_input(path).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    report.input_digest = digest(&text);
    if text.trim_start().starts_with('{') {
        implbasis::io::from_json(&text)
    } else {
        parse_implications(&text)
    }
}

/// exit codes: 0 ok, 1 check failed, 2 usage/input error, 3 bound exceeded
fn error_code(err: &Error) -> u8 {
    match err {
        Error::OracleBound { .. } | Error::SearchBound(_) | Error::CombinatorialBound(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(
        std::env::args().skip(1).collect::<Vec<_>>().join(" "),
    );
    match run(&cli, &mut report) {
        Ok(()) => {
            let ok = report.all_passed();
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", report.render_text());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_code(&err))
        }
    }
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Error> {
    let bounds = SearchBounds { oracle_bound: cli.oracle_bound, ..SearchBounds::default() };
    let tiebreak: Tiebreak = cli.tiebreak.into();
    match &cli.cmd {
        Cmd::Canonical { file } => {
            let sigma = load(file, report)?;
            report.add_basis("canonical", &canonical_basis(&sigma));
        }
        Cmd::Kbasis { file, all } => {
            let sigma = load(file, report)?;
            if *all {
                for (i, basis) in all_k_bases(&sigma)?.iter().enumerate() {
                    report.add_basis(&format!("k-basis {}", i + 1), basis);
                }
            } else {
                report.add_basis("k-basis", &k_basis(&sigma, tiebreak)?);
            }
        }
        Cmd::Ebasis { file, aggregated, optimized, f, foe, ordered, force } => {
            let sigma = load(file, report)?;
            let (name, basis) = if *foe {
                ("foe-basis", foe_basis(&sigma, cli.oracle_bound)?)
            } else if *f {
                ("f-basis", f_basis(&sigma, cli.oracle_bound, *force)?)
            } else if *optimized {
                ("optimized e-basis", optimized_e_basis(&sigma, cli.oracle_bound)?)
            } else if *aggregated {
                ("aggregated e-basis", aggregated_e_basis(&sigma, cli.oracle_bound)?)
            } else {
                ("e-basis", e_basis(&sigma, cli.oracle_bound)?)
            };
            if *ordered {
                let repeat_binary = *optimized || *foe;
                report.add_basis(name, &ordered_sequence(&basis, repeat_binary));
            } else {
                report.add_basis(name, &basis);
            }
        }
        Cmd::Optimum { file, all, report_hierarchy } => {
            let sigma = load(file, report)?;
            let result = optimum_bases(&sigma, &bounds)?;
            report.notes.push(format!(
                "{} optimum bases of size {}",
                result.bases.len(),
                result.s
            ));
            if *all {
                for (i, basis) in result.bases.iter().enumerate() {
                    report.add_basis(&format!("optimum {}", i + 1), basis);
                }
            } else if let Some(basis) = result.bases.first() {
                report.add_basis("optimum", basis);
            }
            if *report_hierarchy {
                let h = verify_hierarchy(&sigma, &bounds)?;
                add_hierarchy_checks(report, &h);
            }
        }
        Cmd::Regularize { file } => {
            let sigma = load(file, report)?;
            report.add_basis("regular", &regularize(&sigma)?);
        }
        Cmd::Metrics { file } => {
            let sigma = load(file, report)?;
            let m = sigma.metrics();
            report.notes.push(format!(
                "count={} s={} sL={} sR={} | binary: count={} s={} | non-binary: count={} s={}",
                m.total.count,
                m.total.s,
                m.total.s_l,
                m.total.s_r,
                m.binary.count,
                m.binary.s,
                m.nonbinary.count,
                m.nonbinary.s
            ));
        }
        Cmd::Check { what } => match what {
            CheckCmd::Standard { file } => {
                let sigma = load(file, report)?;
                let r = is_standard(&sigma);
                let mut details = Vec::new();
                if r.empty_violation {
                    details.push("closure of the empty set is non-empty".into());
                }
                for i in &r.violations {
                    details.push(format!(
                        "closure of {0:?} minus {0:?} is not closed",
                        sigma.ground().name(*i)
                    ));
                }
                report.add_check("standard", r.is_standard(), details);
            }
            CheckCmd::Uc { file } => {
                let sigma = load(file, report)?;
                report.add_check("unique criticals", is_uc_system(&sigma), vec![]);
            }
            CheckCmd::DCycleFree { file } => {
                let sigma = load(file, report)?;
                match d_cycle_witness(&sigma, tiebreak)? {
                    None => report.add_check("d-cycle-free", true, vec![]),
                    Some(cycle) => {
                        let g = sigma.ground();
                        let path: Vec<&str> = cycle.iter().map(|&a| g.name(a)).collect();
                        report.add_check(
                            "d-cycle-free",
                            false,
                            vec![format!("D-cycle: {}", path.join(" -> "))],
                        );
                    }
                }
            }
            CheckCmd::SdJoin { file } => {
                let sigma = load(file, report)?;
                let oracle = Oracle::new(&sigma, cli.oracle_bound)?;
                report.add_check("join-semidistributive", oracle.is_join_semidistributive()?, vec![]);
            }
        },
        Cmd::Relation { what } => match what {
            RelationCmd::Delta { file } => {
                let sigma = load(file, report)?;
                let rel = delta(&sigma)?;
                add_pairs(report, &sigma, rel.pairs());
            }
            RelationCmd::D { file } => {
                let sigma = load(file, report)?;
                let oracle = Oracle::new(&sigma, cli.oracle_bound)?;
                add_pairs(report, &sigma, oracle.d_relation()?.pairs());
            }
        },
        Cmd::Oracle { what } => match what {
            OracleCmd::Closed { file } => {
                let sigma = load(file, report)?;
                let oracle = Oracle::new(&sigma, cli.oracle_bound)?;
                for set in oracle.closed_family().sets() {
                    report.sets.push(sigma.ground().render_set(&set));
                }
            }
            OracleCmd::Critical { file } => {
                let sigma = load(file, report)?;
                let oracle = Oracle::new(&sigma, cli.oracle_bound)?;
                let catalog = oracle.catalog();
                report.notes.push(format!(
                    "{} quasi-closed, {} critical, {} essential",
                    catalog.quasi_closed.len(),
                    catalog.critical.len(),
                    catalog.essential.len()
                ));
                for set in &catalog.critical {
                    report.sets.push(sigma.ground().render_set(set));
                }
            }
            OracleCmd::Covers { file, attr } => {
                let sigma = load(file, report)?;
                let x = sigma
                    .ground()
                    .index_of(attr)
                    .ok_or_else(|| Error::InvalidAttrName(attr.clone()))?;
                let oracle = Oracle::new(&sigma, cli.oracle_bound)?;
                for cover in oracle.minimal_covers(x)? {
                    report.sets.push(sigma.ground().render_set(&cover));
                }
            }
        },
        Cmd::Gen { what } => match what {
            GenCmd::Fixture { name } => {
                let sigma = fixture(name)?;
                if cli.json {
                    report.add_basis(name, &sigma);
                } else {
                    print!("{}", render_text(&sigma));
                }
            }
            GenCmd::Setcover { mode, infile } => {
                let text = read_input(infile)
                    .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
                report.input_digest = digest(&text);
                let (inst, _names) = SetCoverInstance::parse(&text)?;
                let (sigma, decoder) = match mode {
                    SetcoverMode::Nb => setcover_nonbinary(&inst)?,
                    SetcoverMode::B => setcover_binary(&inst)?,
                };
                if cli.json {
                    report.add_basis("setcover system", &sigma);
                    for a in 0..sigma.ground().len() {
                        if let Ok(members) =
                            decoder.decode(&implbasis::AttrSet::singleton(sigma.ground().len(), a))
                        {
                            report.notes.push(format!(
                                "{} covers mask {:#b}",
                                sigma.ground().name(a),
                                members[0]
                            ));
                        }
                    }
                } else {
                    print!("{}", render_text(&sigma));
                    for a in 0..sigma.ground().len() {
                        if let Ok(members) =
                            decoder.decode(&implbasis::AttrSet::singleton(sigma.ground().len(), a))
                        {
                            println!("# {} covers mask {:#b}", sigma.ground().name(a), members[0]);
                        }
                    }
                }
            }
            GenCmd::Random { n, density, seed } => {
                let sigma = random_system(*n, *density, *seed);
                if cli.json {
                    report.add_basis("random system", &sigma);
                } else {
                    print!("{}", render_text(&sigma));
                }
            }
        },
        Cmd::Verify { what } => match what {
            VerifyCmd::Tr { file } => {
                let sigma = load(file, report)?;
                let r = verify_tr_with(&sigma, cli.oracle_bound, tiebreak)?;
                report.add_check(
                    "refined relation is a subrelation of the dual D-relation",
                    r.subset_before_closure,
                    vec![],
                );
                report.add_check("transitive closures coincide", r.equal, vec![]);
            }
            VerifyCmd::MainE { file } => {
                let sigma = load(file, report)?;
                let r = verify_main_e(&sigma, cli.oracle_bound)?;
                report.add_check("refinement map is a bijection", r.bijection, vec![]);
                report.add_check("conclusions avoid the saturation", r.refinement, vec![]);
                report.add_check(
                    "aggregated E-basis is no larger than the canonical basis",
                    r.s_e_aggregated <= r.s_canonical,
                    vec![format!("s(E aggregated)={} s(canonical)={}", r.s_e_aggregated, r.s_canonical)],
                );
            }
            VerifyCmd::RsMin { file } => {
                let sigma = load(file, report)?;
                let r = verify_rs_min(&sigma, &bounds)?;
                report.add_check(
                    "optimized E-basis attains the minimal non-binary right size",
                    r.pass(),
                    vec![format!(
                        "sR(OE non-binary)={} core bound={} exhaustive minimum={}",
                        r.s_r_oe_nonbinary, r.core_lower_bound, r.exhaustive_minimum
                    )],
                );
            }
            VerifyCmd::Hierarchy { file } => {
                let sigma = load(file, report)?;
                let h = verify_hierarchy(&sigma, &bounds)?;
                add_hierarchy_checks(report, &h);
            }
        },
    }
    Ok(())
}

fn add_pairs(report: &mut Report, sigma: &ImplicationSet, pairs: Vec<(usize, usize)>) {
    let g = sigma.ground();
    for (a, b) in pairs {
        report.pairs.push((g.name(a).to_string(), g.name(b).to_string()));
    }
}

fn add_hierarchy_checks(report: &mut Report, h: &implbasis::optsearch::HierarchyReport) {
    report.notes.push(format!("{} optimum bases of size {}", h.optimum_count, h.optimum_s));
    report.add_check("optimum bases are minimum", h.count_ok, vec![]);
    report.add_check("optimum bases are left-optimum", h.left_ok, vec![]);
    report.add_check("optimum bases are right-optimum", h.right_ok, vec![]);
    report.add_check("premise sizes match the per-critical minima", h.premise_sizes_ok, vec![]);
    report.add_check("binary conclusion sizes match their minima", h.binary_conclusions_ok, vec![]);
    report.add_check("extreme points are contained in binary conclusions", h.extreme_points_ok, vec![]);
    report.add_check(
        "non-binary right size is constant across optimum bases",
        h.srnb_constant_ok,
        vec![format!("sR(non-binary) = {}", h.srnb)],
    );
    report.add_check("optimum bases are regular", h.regular_ok, vec![]);
    for line in &h.conclusion_size_log {
        report.notes.push(line.clone());
    }
}
