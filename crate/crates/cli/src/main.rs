//! `riesz`: evaluate pseudonorms, check axioms, adjudicate convergence and
//! run the scenario catalog.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use riesz_core::convergence::{converges_to, order_converges, uo_converges, Ambient, Mode, NetSpec, Policy, Verdict};
use riesz_core::dualpair::{ideal_invariance_check, Interpretation};
use riesz_core::pseudonorm::{check_axioms, AxiomReport, AxiomStatus, NullSequence, ScalingOutcome};
use riesz_core::report::{Aggregate, ConfigEcho, Report, Row, Status};
use riesz_core::sampling::Sampler;
use riesz_core::scenarios::{list_scenarios, run_scenario, DEFAULT_SEED};
use riesz_core::syntax::{self, ParseError};
use riesz_core::topology::{compare_on, ideal_equivalence_check, CollectionSpec, Relation, TopologySpec};
use riesz_core::{Error, Execution, LatticeElement, Space};

const USAGE_EXIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "riesz", version, about = "Riesz pseudonorms and unbounded locally solid topologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a pseudonorm at an element.
    Eval {
        #[arg(short = 'p', long = "pseudonorm")]
        pseudonorm: String,
        #[arg(short = 'x', long = "element")]
        element: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the five pseudonorm conditions on random samples.
    Axioms {
        #[arg(short = 'p', long = "pseudonorm")]
        pseudonorm: String,
        /// Sample space; defaults to the pseudonorm's own.
        #[arg(long)]
        space: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide whether a net converges to a limit.
    Converge {
        #[arg(long)]
        net: String,
        /// Limit element; `0` is the zero of the net's space.
        #[arg(long)]
        limit: String,
        /// Topology for topological convergence.
        #[arg(long = "top")]
        topology: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::Topological)]
        kind: Kind,
        /// Probe elements for uo convergence, e.g. `[[1,1],[2,0]]`.
        #[arg(long)]
        probes: Option<String>,
        #[arg(long, value_enum, default_value_t = AmbientArg::Full)]
        ambient: AmbientArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare two topologies on samples and nets.
    Compare {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        /// Test nets, as `net -> limit`; repeatable.
        #[arg(long = "net")]
        nets: Vec<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Expected relation of the first topology to the second.
        #[arg(long, value_enum)]
        expect: Option<RelationArg>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check that convergence transfers to members of a generated ideal.
    Ideal {
        /// Topology whose members are restricted to the generators.
        #[arg(long = "top", conflicts_with = "pair")]
        topology: Option<String>,
        /// Dual pair, e.g. `pair(E=rn:3)`.
        #[arg(long, requires_all = ["e0", "f0", "collection"])]
        pair: Option<String>,
        /// Generators of the ideal (topology form).
        #[arg(long)]
        gens: Option<String>,
        /// Candidate members; random ideal members when omitted.
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long)]
        e0: Option<String>,
        #[arg(long)]
        f0: Option<String>,
        #[arg(long)]
        collection: Option<String>,
        #[arg(long, value_enum, default_value_t = InterpArg::Both)]
        interp: InterpArg,
        #[arg(long = "net")]
        nets: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The scenario catalog.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioAction {
    List,
    Run {
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    horizon: u64,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run sample sweeps on one thread.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn policy(&self) -> Policy {
        Policy {
            horizon: self.horizon,
            eps: self.eps,
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float => Mode::Float,
            },
            exec: if self.sequential { Execution::Sequential } else { Execution::default() },
        }
    }

    fn report(&self, command: String, rows: Vec<Row>, aggregate: Aggregate) -> Report {
        let policy = self.policy();
        Report {
            command,
            config: ConfigEcho {
                mode: policy.mode.to_string(),
                horizon: policy.horizon,
                eps: policy.eps,
                seed: self.seed,
            },
            rows,
            aggregate,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Topological,
    Order,
    Uo,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AmbientArg {
    Full,
    C0,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RelationArg {
    Finer,
    Coarser,
    Equal,
    Incomparable,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InterpArg {
    AsWritten,
    MeetA,
    Both,
}

/// Failures surfaced to the user.
enum Failure {
    Parse { flag: &'static str, input: String, error: ParseError },
    Run(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl Failure {
    fn render(&self) -> String {
        match self {
            Failure::Parse { flag, input, error } => {
                let lead = format!("  {flag} ");
                let caret = " ".repeat(lead.len() + input[..error.pos().min(input.len())].chars().count());
                format!("error: {error}\n{lead}{input}\n{caret}^")
            }
            Failure::Run(e) => format!("error: {e}"),
            Failure::Usage(m) => format!("error: {m}"),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Run(Error::Consistency(_)) => 1,
            _ => USAGE_EXIT,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parsed<T>(flag: &'static str, input: &str, f: impl Fn(&str) -> Result<T, ParseError>) -> CliResult<T> {
    f(input).map_err(|error| Failure::Parse { flag, input: input.to_string(), error })
}

/// `net -> limit`, with `0` for the zero of the net's space.
fn net_with_limit(text: &str) -> CliResult<(NetSpec, LatticeElement)> {
    let (net, limit) =
        text.split_once("->").ok_or_else(|| Failure::Usage(format!("`{text}`: expected `net -> limit`")))?;
    let net = parsed("--net", net.trim(), syntax::parse_net)?;
    let space = net.space();
    let limit = parsed("--net", limit.trim(), |t| syntax::parse_element_in(t, &space))?;
    Ok((net, limit))
}

fn emit(report: &Report, format: Format) -> u8 {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    report.aggregate.exit_code() as u8
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.render());
            ExitCode::from(f.exit_code())
        }
    }
}

fn dispatch(command: Command) -> CliResult<u8> {
    match command {
        Command::Eval { pseudonorm, element, run } => eval(&pseudonorm, &element, &run),
        Command::Axioms { pseudonorm, space, samples, run } => axioms(&pseudonorm, space.as_deref(), samples, &run),
        Command::Converge { net, limit, topology, kind, probes, ambient, run } => {
            converge(&net, &limit, topology.as_deref(), kind, probes.as_deref(), ambient, &run)
        }
        Command::Compare { first, second, nets, samples, expect, run } => {
            compare(&first, &second, &nets, samples, expect, &run)
        }
        Command::Ideal { topology, pair, gens, candidates, e0, f0, collection, interp, nets, run } => {
            let nets = nets.iter().map(|n| net_with_limit(n)).collect::<CliResult<Vec<_>>>()?;
            if nets.is_empty() {
                return Err(Failure::Usage("ideal needs at least one --net".into()));
            }
            match (topology, pair) {
                (Some(t), None) => {
                    let gens = gens.ok_or_else(|| Failure::Usage("--top needs --gens".into()))?;
                    ideal_topology(&t, &gens, candidates.as_deref(), &nets, &run)
                }
                (None, Some(p)) => {
                    let (e0, f0, c) = (e0.unwrap_or_default(), f0.unwrap_or_default(), collection.unwrap_or_default());
                    ideal_pair(&p, &e0, &f0, &c, interp, &nets, &run)
                }
                _ => Err(Failure::Usage("ideal needs exactly one of --top or --pair".into())),
            }
        }
        Command::Scenario { action: ScenarioAction::List } => {
            for s in list_scenarios() {
                println!("{s}");
            }
            Ok(0)
        }
        Command::Scenario { action: ScenarioAction::Run { name, run } } => {
            let report = run_scenario(&name, &run.policy(), run.seed)?;
            Ok(emit(&report, run.format))
        }
    }
}

fn eval(p_text: &str, x_text: &str, run: &RunArgs) -> CliResult<u8> {
    let p = parsed("-p", p_text, syntax::parse_pseudonorm)?;
    let x = match p.space() {
        Some(space) => parsed("-x", x_text, |t| syntax::parse_element_in(t, &space))?,
        None => parsed("-x", x_text, syntax::parse_element)?,
    };
    let policy = run.policy();
    let value = if p.uses_float_only() {
        if policy.mode == Mode::Exact {
            return Err(Error::FloatOnly(p.to_string()).into());
        }
        let v = p.evaluate_f64(&x.to_f64_coords()?)?;
        format!("{v}")
    } else {
        p.evaluate(&x)?.to_string()
    };
    match run.format {
        Format::Text => println!("{value}"),
        Format::Json => {
            let row = Row::new(format!("x = {x}"), p.to_string(), "value", value, Status::Info);
            let report = run.report(format!("eval -p {p}"), vec![row], Aggregate::Pass);
            println!("{}", report.to_json());
        }
    }
    Ok(0)
}

fn axiom_rows(report: &AxiomReport) -> Vec<Row> {
    let status_row = |n: u8, label: &str, s: &AxiomStatus| match s {
        AxiomStatus::Pass => Row::invariant(&report.map, format!("condition ({n}) {label}"), "no violation", true),
        AxiomStatus::Fail(w) => Row::invariant(&report.map, format!("condition ({n}) {label}"), w.to_string(), false),
    };
    let mut rows = vec![
        status_row(1, "nonnegative", &report.nonnegative),
        status_row(2, "zero at zero", &report.zero_at_zero),
        status_row(3, "subadditive", &report.subadditive),
    ];
    for r in &report.scaling {
        let label = format!("condition (4) scalar null {}", r.sequence);
        rows.push(match &r.outcome {
            ScalingOutcome::Exact { bound } => {
                Row::invariant(&report.map, label, format!("p(l_k x) <= l_k * {bound}"), true)
            }
            ScalingOutcome::Numeric { eps, horizon, worst } => Row::new(
                &report.map,
                label,
                "holds",
                format!("below {eps:e} by k = {horizon}, worst {worst:e}"),
                Status::SupportedNumeric,
            ),
            ScalingOutcome::Fail(w) => Row::invariant(&report.map, label, w.to_string(), false),
        });
    }
    rows.push(status_row(5, "lattice monotone", &report.monotone));
    rows
}

fn axioms(p_text: &str, space: Option<&str>, samples: usize, run: &RunArgs) -> CliResult<u8> {
    let p = parsed("-p", p_text, syntax::parse_pseudonorm)?;
    let space = match (space, p.space()) {
        (Some(s), _) => parsed("--space", s, syntax::parse_space)?,
        (None, Some(s)) => s,
        (None, None) => return Err(Failure::Usage(format!("{p} fixes no space; pass --space"))),
    };
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    if p.uses_float_only() {
        return Err(Error::FloatOnly(p.to_string()).into());
    }
    let policy = run.policy();
    let mut sampler = Sampler::new(run.seed);
    let xs = sampler.elements(&space, samples);
    let report = check_axioms(&p, &xs, &NullSequence::BATTERY, policy.horizon, policy.exec)?;
    let rows = axiom_rows(&report);
    let aggregate = Report::check_aggregate(&rows);
    Ok(emit(&run.report(format!("axioms -p {p}"), rows, aggregate), run.format))
}

fn verdict_rows(subject: &str, verdict: &Verdict) -> Vec<Row> {
    let mut rows: Vec<Row> = verdict
        .rows
        .iter()
        .map(|m| {
            Row::new(subject, &m.member, "converges", format!("{}: {}", m.status, m.detail), m.status.report_status())
        })
        .collect();
    rows.push(Row::new(subject, "aggregate verdict", "converges", verdict.to_string(), verdict.status.report_status()));
    rows
}

fn converge(
    net_text: &str,
    limit_text: &str,
    top: Option<&str>,
    kind: Kind,
    probes: Option<&str>,
    ambient: AmbientArg,
    run: &RunArgs,
) -> CliResult<u8> {
    let net = parsed("--net", net_text, syntax::parse_net)?;
    let space = net.space();
    let limit = parsed("--limit", limit_text, |t| syntax::parse_element_in(t, &space))?;
    let ambient = match ambient {
        AmbientArg::Full => Ambient::Full,
        AmbientArg::C0 => Ambient::C0,
    };
    let policy = run.policy();
    let (verdict, how) = match kind {
        Kind::Topological => {
            let text = top.ok_or_else(|| Failure::Usage("topological convergence needs --top".into()))?;
            let tau = with_space(parsed("--top", text, syntax::parse_topology)?, &space)?;
            (converges_to(&net, &limit, &tau, &policy)?, format!("in {tau}"))
        }
        Kind::Order => (order_converges(&net, &limit, ambient, &policy)?, format!("in order ({ambient})")),
        Kind::Uo => {
            let text = probes.ok_or_else(|| Failure::Usage("uo convergence needs --probes".into()))?;
            let probes = parsed("--probes", text, syntax::parse_elements)?;
            (uo_converges(&net, &limit, &probes, ambient, &policy)?, format!("in uo ({ambient})"))
        }
    };
    let subject = format!("{net} -> {limit} {how}");
    let rows = verdict_rows(&subject, &verdict);
    let aggregate = Report::check_aggregate(&rows);
    Ok(emit(&run.report(format!("converge --net {net}"), rows, aggregate), run.format))
}

/// Pin a topology without a fixed space to `space`.
fn with_space(tau: TopologySpec, space: &Space) -> CliResult<TopologySpec> {
    match tau.space() {
        Some(_) => Ok(tau),
        None => Ok(tau.with_space(space.clone())?),
    }
}

fn compare(
    first: &str,
    second: &str,
    nets: &[String],
    samples: usize,
    expect: Option<RelationArg>,
    run: &RunArgs,
) -> CliResult<u8> {
    let nets = nets.iter().map(|n| net_with_limit(n)).collect::<CliResult<Vec<_>>>()?;
    let t1 = parsed("--first", first, syntax::parse_topology)?;
    let t2 = parsed("--second", second, syntax::parse_topology)?;
    let space = t1
        .space()
        .or(t2.space())
        .cloned()
        .or_else(|| nets.first().map(|(n, _)| n.space()))
        .ok_or_else(|| Failure::Usage("neither topology fixes a space; pin one with space=".into()))?;
    let (t1, t2) = (with_space(t1, &space)?, with_space(t2, &space)?);
    let xs = Sampler::new(run.seed).elements(&space, samples);
    let verdict = compare_on(&t1, &t2, &nets, &xs, &run.policy())?;
    let mut rows = Vec::new();
    for d in &verdict.dominance {
        let (by, of) = if d.second_by_first { ("first", "second") } else { ("second", "first") };
        rows.push(Row::new(
            format!("{of} member {}", d.member),
            format!("dominated by a {by} member"),
            "context only",
            d.dominated_by.clone().unwrap_or_else(|| "none".into()),
            Status::Info,
        ));
    }
    for n in &verdict.nets {
        rows.push(Row::new(
            format!("{} -> {}", n.net, n.limit),
            "net evidence",
            "context only",
            format!("first: {}; second: {}", n.in_first, n.in_second),
            Status::Info,
        ));
    }
    let subject = format!("{t1} vs {t2}");
    match expect {
        Some(e) => {
            let want = match e {
                RelationArg::Finer => Relation::Finer,
                RelationArg::Coarser => Relation::Coarser,
                RelationArg::Equal => Relation::Equal,
                RelationArg::Incomparable => Relation::Incomparable,
            };
            rows.push(Row::claim(
                subject,
                "relation",
                want.to_string(),
                verdict.relation.to_string(),
                want == verdict.relation,
            ));
        }
        None => rows.push(Row::new(subject, "relation", "context only", verdict.relation.to_string(), Status::Info)),
    }
    let aggregate = Report::check_aggregate(&rows);
    Ok(emit(&run.report("compare".into(), rows, aggregate), run.format))
}

fn ideal_topology(
    top: &str,
    gens: &str,
    candidates: Option<&str>,
    nets: &[(NetSpec, LatticeElement)],
    run: &RunArgs,
) -> CliResult<u8> {
    let gens = parsed("--gens", gens, syntax::parse_elements)?;
    let space = gens.first().map(LatticeElement::space).ok_or_else(|| Failure::Usage("--gens is empty".into()))?;
    let tau = with_space(parsed("--top", top, syntax::parse_topology)?, &space)?;
    let candidates = match candidates {
        Some(c) => parsed("--candidates", c, syntax::parse_elements)?,
        None => random_ideal_members(&gens, run.seed, 20)?,
    };
    let rows = ideal_equivalence_check(&tau, &gens, &candidates, nets, &run.policy())?;
    let aggregate = Report::check_aggregate(&rows);
    Ok(emit(&run.report(format!("ideal --top {tau}"), rows, aggregate), run.format))
}

/// `Σ λ_j a_j` with small random positive rationals.
fn random_ideal_members(gens: &[LatticeElement], seed: u64, n: usize) -> CliResult<Vec<LatticeElement>> {
    let mut sampler = Sampler::new(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut b = gens[0].space().zero();
        for a in gens {
            b = b.add(&a.abs()?.scale(&sampler.positive_scalar()))?;
        }
        out.push(b);
    }
    Ok(out)
}

fn ideal_pair(
    pair: &str,
    e0: &str,
    f0: &str,
    collection: &str,
    interp: InterpArg,
    nets: &[(NetSpec, LatticeElement)],
    run: &RunArgs,
) -> CliResult<u8> {
    let pair = parsed("--pair", pair, syntax::parse_pair)?;
    let e0 = parsed("--e0", e0, syntax::parse_elements)?;
    let f0 = parsed("--f0", f0, |t| {
        let elems = syntax::parse_elements(t)?;
        Ok(elems.iter().map(|e| syntax::parse_functional(&e.to_string())).collect::<Result<Vec<_>, _>>()?)
    })?;
    let collection: CollectionSpec = parsed("--collection", collection, syntax::parse_collection)?;
    let e_samples = random_ideal_members(&e0, run.seed, 10)?;
    let f_elems: Vec<LatticeElement> = f0.iter().map(|f| f.element().clone()).collect();
    let f_samples = random_ideal_members(&f_elems, run.seed.wrapping_add(1), 10)?
        .iter()
        .map(|e| parsed("--f0", &e.to_string(), syntax::parse_functional))
        .collect::<CliResult<Vec<_>>>()?;
    let interps: &[Interpretation] = match interp {
        InterpArg::AsWritten => &[Interpretation::AsWritten],
        InterpArg::MeetA => &[Interpretation::MeetWithA],
        InterpArg::Both => &Interpretation::BOTH,
    };
    let mut rows = Vec::new();
    for i in interps {
        rows.extend(ideal_invariance_check(
            &pair,
            &e0,
            &f0,
            &collection,
            &e_samples,
            &f_samples,
            nets,
            *i,
            &run.policy(),
        )?);
    }
    let aggregate = Report::check_aggregate(&rows);
    Ok(emit(&run.report("ideal --pair".into(), rows, aggregate), run.format))
}
