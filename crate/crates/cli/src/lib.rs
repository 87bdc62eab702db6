//! Command-line front end for the causation and responsibility engine.
//!
//! `resp` loads a model (`.scm`) or scenario (`.rsp`) file and answers one
//! query per invocation: solving, formula evaluation, the four causation
//! definitions, the three responsibility definitions, graded degree, or the
//! bundled example corpus. `resp-test` drives the randomized invariant
//! checker.
//!
//! Exit codes: 0 when the query was answered (with either verdict), 1 for
//! usage or parse errors, 2 when an engine cap was exceeded. `resp corpus`
//! exits 0 exactly when every bundled example matches its expected verdicts.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};

use resp_core::dsl::{parse_model, parse_scenario, Scenario, SourceDiagnostic};
use resp_core::testkit::{check_invariants, GenParams};
use resp_core::{
    corpus, decide_cause, degree_of_responsibility, evaluate, find_causes, format_rational,
    responsible, CausalFormula, CausalModel, CausalVerdict, CausationDef, Context, Event, ExprAst,
    Limits, QueryError, Rational, ResponsibilityDef, ResponsibilitySetting, Witness,
    ENGINE_VERSION,
};

#[derive(Parser)]
#[command(name = "resp", version = ENGINE_VERSION)]
#[command(about = "Decide actual causation and moral responsibility over structural causal models")]
struct RespCli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the model and print every variable's value
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an intervened formula [X1<-x1, ...](E = e)
    Eval {
        #[command(flatten)]
        common: Common,
        /// Intervention as Var=value; repeatable
        #[arg(long = "cause", value_name = "VAR=VALUE")]
        causes: Vec<String>,
        /// The event the formula asserts, as Var=value
        #[arg(long, value_name = "VAR=VALUE")]
        effect: String,
    },
    /// Decide whether one event causes another under a chosen definition
    Cause {
        #[command(flatten)]
        common: Common,
        /// Causation definition: direct-ness, ness, cness, or hp
        #[arg(long, value_parser = parse_causation_def)]
        def: CausationDef,
        /// Candidate cause as Var=value
        #[arg(long, value_name = "VAR=VALUE")]
        cause: String,
        /// Effect as Var=value
        #[arg(long, value_name = "VAR=VALUE")]
        effect: String,
        /// Include witnesses in the report
        #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
        witnesses: bool,
    },
    /// Test every endogenous event at its actual value against a definition
    Causes {
        #[command(flatten)]
        common: Common,
        /// Causation definition: direct-ness, ness, cness, or hp
        #[arg(long, value_parser = parse_causation_def)]
        def: CausationDef,
        /// Effect as Var=value
        #[arg(long, value_name = "VAR=VALUE")]
        effect: String,
        /// Include witnesses in the report
        #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
        witnesses: bool,
    },
    /// Decide whether an agent is responsible for the scenario outcome
    Responsibility {
        #[command(flatten)]
        common: Common,
        /// Responsibility definition: bvh, hk, or beckers
        #[arg(long, value_parser = parse_responsibility_def)]
        def: ResponsibilityDef,
        /// Agent name from the scenario file
        #[arg(long)]
        agent: String,
    },
    /// Compute an agent's graded degree of responsibility
    Degree {
        #[command(flatten)]
        common: Common,
        /// Agent name from the scenario file
        #[arg(long)]
        agent: String,
        /// Weight of the actual-causation strength term, as a rational or
        /// decimal
        #[arg(long, value_parser = parse_rational)]
        alpha: Rational,
    },
    /// Check every bundled example against its expected verdicts
    Corpus {
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Cap on the endogenous state space per model
        #[arg(long, env = "RESP_MAX_STATES")]
        max_states: Option<u64>,
    },
}

#[derive(Args)]
struct Common {
    /// Model (.scm) or scenario (.rsp) file
    file: PathBuf,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Cap on the endogenous state space per model
    #[arg(long, env = "RESP_MAX_STATES")]
    max_states: Option<u64>,
}

enum CliError {
    /// Bad arguments, unreadable files, parse errors, malformed queries.
    Usage(String),
    /// A resource cap was exceeded; the query is undecided.
    Cap(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Cap(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => m,
        }
    }
}

fn engine(e: QueryError) -> CliError {
    match e {
        QueryError::StateSpaceExceeded { .. } | QueryError::ConjunctCapExceeded { .. } => {
            CliError::Cap(e.to_string())
        }
        other => CliError::Usage(other.to_string()),
    }
}

/// One answered query: the pieces of the report plus the process exit code.
struct Report {
    command: &'static str,
    query: Json,
    result: Json,
    text: String,
    exit: i32,
}

/// Runs the `resp` binary on the given arguments and returns its exit code.
pub fn run_resp<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match RespCli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json_mode = wants_json(&cli.command);
    let started = Instant::now();
    match execute(cli.command) {
        Ok(report) => {
            if json_mode {
                println!("{}", render_json(&report, started));
            } else {
                print!("{}", report.text);
            }
            report.exit
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Solve { common }
        | Command::Eval { common, .. }
        | Command::Cause { common, .. }
        | Command::Causes { common, .. }
        | Command::Responsibility { common, .. }
        | Command::Degree { common, .. } => common.json,
        Command::Corpus { json, .. } => *json,
    }
}

fn render_json(report: &Report, started: Instant) -> String {
    let envelope = json!({
        "command": report.command,
        "engine_version": ENGINE_VERSION,
        "query": report.query,
        "result": report.result,
        "timing_ms": started.elapsed().as_secs_f64() * 1000.0,
    });
    serde_json::to_string_pretty(&envelope).expect("report serializes")
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Solve { common } => cmd_solve(common),
        Command::Eval {
            common,
            causes,
            effect,
        } => cmd_eval(common, causes, effect),
        Command::Cause {
            common,
            def,
            cause,
            effect,
            witnesses,
        } => cmd_cause(common, def, cause, effect, witnesses),
        Command::Causes {
            common,
            def,
            effect,
            witnesses,
        } => cmd_causes(common, def, effect, witnesses),
        Command::Responsibility { common, def, agent } => cmd_responsibility(common, def, agent),
        Command::Degree {
            common,
            agent,
            alpha,
        } => cmd_degree(common, agent, alpha),
        Command::Corpus { max_states, .. } => cmd_corpus(limits_of(max_states)),
    }
}

fn parse_causation_def(token: &str) -> Result<CausationDef, String> {
    token.parse()
}

fn parse_responsibility_def(token: &str) -> Result<ResponsibilityDef, String> {
    token.parse()
}

/// Parses an integer, an exact decimal, or a `num/den` fraction.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    use num_bigint::BigInt;
    let bad = || format!("expected a rational or decimal, got `{text}`");
    let int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
    if let Some((num, den)) = text.split_once('/') {
        let den = int(den.trim())?;
        if den <= BigInt::from(0) {
            return Err(format!("denominator must be positive in `{text}`"));
        }
        Ok(Rational::new(int(num.trim())?, den))
    } else if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Ok(Rational::new(int(&digits)?, scale))
    } else {
        Ok(Rational::from(int(text.trim())?))
    }
}

fn limits_of(max_states: Option<u64>) -> Limits {
    let mut limits = Limits::default();
    if let Some(cap) = max_states {
        limits.max_states = cap;
    }
    limits
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn render_diagnostics(path: &Path, diagnostics: &[SourceDiagnostic]) -> CliError {
    let mut out = String::new();
    for d in diagnostics {
        let _ = writeln!(out, "{}: {d}", path.display());
    }
    CliError::Usage(out.trim_end().to_string())
}

fn load_model(path: &Path) -> Result<(CausalModel, Context), CliError> {
    let text = read_file(path)?;
    parse_model(&text).map_err(|d| render_diagnostics(path, &d))
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = read_file(path)?;
    parse_scenario(&text).map_err(|d| render_diagnostics(path, &d))
}

fn parse_event(token: &str) -> Result<Event, CliError> {
    Event::parse(token)
        .ok_or_else(|| CliError::Usage(format!("expected Var=value, got `{token}`")))
}

fn agent_setting<'a>(
    scenario: &'a Scenario,
    agent: &str,
) -> Result<&'a ResponsibilitySetting, CliError> {
    scenario.agent(agent).ok_or_else(|| {
        let known: Vec<&str> = scenario.agents.iter().map(|(n, _)| n.as_str()).collect();
        CliError::Usage(format!(
            "no agent named `{agent}`; the scenario declares: {}",
            known.join(", ")
        ))
    })
}

fn probability_json(r: &Rational) -> Json {
    json!({
        "decimal": r.to_f64().unwrap_or(f64::NAN),
        "rational": format_rational(r),
    })
}

fn events_json(events: &[Event]) -> Json {
    Json::Array(events.iter().map(|e| json!(e.to_string())).collect())
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn events_text(events: &[Event]) -> String {
    set_text(&events.iter().map(Event::to_string).collect::<Vec<_>>())
}

fn witness_json(witness: &Witness) -> Json {
    match witness {
        Witness::DirectNess { support } => json!({
            "type": "direct-ness",
            "support": events_json(support),
        }),
        Witness::Ness { path } => json!({
            "type": "ness",
            "path": path.variables,
        }),
        Witness::Cness {
            path,
            counterfactual,
        } => json!({
            "type": "cness",
            "path": path.variables,
            "counterfactual": counterfactual,
        }),
        Witness::Hp {
            conjuncts,
            support,
            flip,
        } => json!({
            "type": "hp",
            "conjuncts": events_json(conjuncts),
            "support": events_json(support),
            "flip": events_json(flip),
        }),
    }
}

fn witness_text(witness: &Witness) -> String {
    match witness {
        Witness::DirectNess { support } => format!("support {}", events_text(support)),
        Witness::Ness { path } => format!("path {}", set_text(&path.variables)),
        Witness::Cness {
            path,
            counterfactual,
        } => format!(
            "path {}, counterfactual {counterfactual}",
            set_text(&path.variables)
        ),
        Witness::Hp {
            conjuncts,
            support,
            flip,
        } => format!(
            "conjuncts {}, support {}, flip {}",
            events_text(conjuncts),
            events_text(support),
            events_text(flip)
        ),
    }
}

fn verdict_json(verdict: &CausalVerdict, witnesses: bool) -> Json {
    let witness = match (&verdict.witness, witnesses) {
        (Some(w), true) => witness_json(w),
        _ => Json::Null,
    };
    json!({ "holds": verdict.holds, "witness": witness })
}

fn probs_json(probs: &[(String, Rational)]) -> Json {
    Json::Array(
        probs
            .iter()
            .map(|(value, p)| json!({ "value": value, "probability": probability_json(p) }))
            .collect(),
    )
}

fn probs_text(probs: &[(String, Rational)]) -> String {
    probs
        .iter()
        .map(|(value, p)| format!("{value} -> {}", format_rational(p)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_solve(common: Common) -> Result<Report, CliError> {
    let (model, ctx) = load_model(&common.file)?;
    let solution = model.solve(&ctx).map_err(|e| engine(e.into()))?;
    let mut text = String::new();
    let mut values = serde_json::Map::new();
    for (name, value) in solution.iter() {
        let _ = writeln!(text, "{name} = {value}");
        values.insert(name.to_string(), json!(value));
    }
    Ok(Report {
        command: "solve",
        query: json!({ "file": common.file.display().to_string() }),
        result: json!({ "assignment": Json::Object(values) }),
        text,
        exit: 0,
    })
}

fn cmd_eval(common: Common, causes: Vec<String>, effect: String) -> Result<Report, CliError> {
    let (model, ctx) = load_model(&common.file)?;
    let interventions: Vec<Event> = causes
        .iter()
        .map(|t| parse_event(t))
        .collect::<Result<_, _>>()?;
    let effect_event = parse_event(&effect)?;
    let pairs: Vec<(&str, &str)> = interventions
        .iter()
        .map(|e| (e.variable.as_str(), e.value.as_str()))
        .collect();
    let body = ExprAst::is(&effect_event.variable, &effect_event.value);
    let formula = CausalFormula::new(model.signature(), &pairs, &body)
        .map_err(|e| engine(e.into()))?;
    let holds = evaluate(&model, &ctx, &formula).map_err(|e| engine(e.into()))?;
    let rendered: Vec<String> = interventions.iter().map(Event::to_string).collect();
    Ok(Report {
        command: "eval",
        query: json!({
            "file": common.file.display().to_string(),
            "interventions": rendered,
            "effect": effect_event.to_string(),
        }),
        result: json!({ "holds": holds }),
        text: format!(
            "[{}]({}) = {holds}\n",
            rendered.join(", "),
            effect_event
        ),
        exit: 0,
    })
}

fn cmd_cause(
    common: Common,
    def: CausationDef,
    cause: String,
    effect: String,
    witnesses: bool,
) -> Result<Report, CliError> {
    let (model, ctx) = load_model(&common.file)?;
    let limits = limits_of(common.max_states);
    let cause = parse_event(&cause)?;
    let effect = parse_event(&effect)?;
    let verdict = decide_cause(&model, &ctx, &cause, &effect, def, &limits).map_err(engine)?;
    let mut text = format!(
        "{cause} {} a {def} cause of {effect}\n",
        if verdict.holds { "is" } else { "is not" }
    );
    if witnesses {
        if let Some(w) = &verdict.witness {
            let _ = writeln!(text, "witness: {}", witness_text(w));
        }
    }
    Ok(Report {
        command: "cause",
        query: json!({
            "file": common.file.display().to_string(),
            "def": def.to_string(),
            "cause": cause.to_string(),
            "effect": effect.to_string(),
        }),
        result: verdict_json(&verdict, witnesses),
        text,
        exit: 0,
    })
}

fn cmd_causes(
    common: Common,
    def: CausationDef,
    effect: String,
    witnesses: bool,
) -> Result<Report, CliError> {
    let (model, ctx) = load_model(&common.file)?;
    let limits = limits_of(common.max_states);
    let effect = parse_event(&effect)?;
    let verdicts = find_causes(&model, &ctx, &effect, def, &limits).map_err(engine)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (event, verdict) in &verdicts {
        let _ = write!(
            text,
            "{event}: {}",
            if verdict.holds { "cause" } else { "not a cause" }
        );
        if witnesses {
            if let Some(w) = &verdict.witness {
                let _ = write!(text, "  ({})", witness_text(w));
            }
        }
        text.push('\n');
        let mut row = match verdict_json(verdict, witnesses) {
            Json::Object(map) => map,
            _ => unreachable!(),
        };
        row.insert("cause".into(), json!(event.to_string()));
        rows.push(Json::Object(row));
    }
    Ok(Report {
        command: "causes",
        query: json!({
            "file": common.file.display().to_string(),
            "def": def.to_string(),
            "effect": effect.to_string(),
        }),
        result: json!({ "causes": rows }),
        text,
        exit: 0,
    })
}

fn cmd_responsibility(
    common: Common,
    def: ResponsibilityDef,
    agent: String,
) -> Result<Report, CliError> {
    let scenario = load_scenario(&common.file)?;
    let setting = agent_setting(&scenario, &agent)?;
    let limits = limits_of(common.max_states);
    let verdict = responsible(setting, def, &limits).map_err(engine)?;
    let ep = &verdict.epistemic;
    let mut text = format!(
        "{agent} {} responsible under {def} for {}\n",
        if verdict.responsible { "is" } else { "is not" },
        setting.outcome
    );
    let _ = writeln!(text, "action: {}", verdict.action);
    let _ = writeln!(
        text,
        "causal condition: {}",
        if verdict.causal_evidence.holds {
            "holds"
        } else {
            "fails"
        }
    );
    if let Some(w) = &verdict.causal_evidence.witness {
        let _ = writeln!(text, "witness: {}", witness_text(w));
    }
    let _ = writeln!(text, "P_outcome: {}", probs_text(&ep.outcome_probs));
    if !ep.causation_probs.is_empty() {
        let _ = writeln!(text, "P_causation: {}", probs_text(&ep.causation_probs));
    }
    if let Some(alt) = &ep.alternative {
        let _ = writeln!(text, "alternative: {alt}");
    }
    if let Some(branch) = ep.branch {
        let _ = writeln!(text, "branch: {branch}");
    }
    Ok(Report {
        command: "responsibility",
        query: json!({
            "file": common.file.display().to_string(),
            "def": def.to_string(),
            "agent": agent,
        }),
        result: json!({
            "responsible": verdict.responsible,
            "action": verdict.action.to_string(),
            "causal": verdict_json(&verdict.causal_evidence, true),
            "epistemic": {
                "outcome_probs": probs_json(&ep.outcome_probs),
                "causation_probs": probs_json(&ep.causation_probs),
                "alternative": ep.alternative,
                "branch": ep.branch,
            },
        }),
        text,
        exit: 0,
    })
}

fn cmd_degree(common: Common, agent: String, alpha: Rational) -> Result<Report, CliError> {
    let scenario = load_scenario(&common.file)?;
    let setting = agent_setting(&scenario, &agent)?;
    let limits = limits_of(common.max_states);
    let report = degree_of_responsibility(setting, &alpha, &limits).map_err(engine)?;
    let mut text = format!("degree({agent}) = {}\n", format_rational(&report.degree));
    let _ = writeln!(
        text,
        "responsible: {}, action: {}, CS_e = {}, CS_ac = {}",
        report.responsible,
        report.action,
        format_rational(&report.cs_eells),
        format_rational(&report.cs_actual)
    );
    if let Some(alt) = &report.alternative {
        let _ = writeln!(
            text,
            "benchmark alternative: {alt}{}",
            if report.tie { " (tie, first in range order)" } else { "" }
        );
    }
    Ok(Report {
        command: "degree",
        query: json!({
            "file": common.file.display().to_string(),
            "agent": agent,
            "alpha": format_rational(&alpha),
        }),
        result: json!({
            "responsible": report.responsible,
            "degree": probability_json(&report.degree),
            "cs_eells": probability_json(&report.cs_eells),
            "cs_actual": probability_json(&report.cs_actual),
            "action": report.action,
            "alternative": report.alternative,
            "tie": report.tie,
        }),
        text,
        exit: 0,
    })
}

fn cmd_corpus(limits: Limits) -> Result<Report, CliError> {
    let results = corpus::verify(&limits);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (name, outcome) in &results {
        match outcome {
            Ok(()) => {
                let _ = writeln!(text, "{name}: ok");
                rows.push(json!({ "name": name, "ok": true, "error": Json::Null }));
            }
            Err(e) => {
                all_ok = false;
                let _ = writeln!(text, "{name}: FAIL - {e}");
                rows.push(json!({ "name": name, "ok": false, "error": e }));
            }
        }
    }
    Ok(Report {
        command: "corpus",
        query: json!({}),
        result: json!({ "all_ok": all_ok, "checks": rows }),
        text,
        exit: if all_ok { 0 } else { 1 },
    })
}

#[derive(Parser)]
#[command(name = "resp-test", version = ENGINE_VERSION)]
#[command(about = "Randomized invariant checking for the causation and responsibility engine")]
struct TestCli {
    /// Number of consecutive seeds to check, starting at 0
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    /// Generation parameters as comma-separated key=value pairs
    /// (max_endogenous, max_exogenous, max_range, max_depth)
    #[arg(long)]
    params: Option<String>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Cap on the endogenous state space per model
    #[arg(long, env = "RESP_MAX_STATES")]
    max_states: Option<u64>,
}

fn parse_params(text: &str) -> Result<GenParams, String> {
    let mut params = GenParams::default();
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{pair}`"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("`{key}` needs a non-negative integer, got `{value}`"))?;
        match key.trim() {
            "max_endogenous" => params.max_endogenous = value,
            "max_exogenous" => params.max_exogenous = value,
            "max_range" => params.max_range = value,
            "max_depth" => params.max_depth = value,
            other => return Err(format!("unknown parameter `{other}`")),
        }
    }
    Ok(params)
}

/// Runs the `resp-test` binary on the given arguments and returns its exit
/// code.
pub fn run_resp_test<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match TestCli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let params = match cli.params.as_deref().map(parse_params).transpose() {
        Ok(p) => p.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let limits = limits_of(cli.max_states);
    let started = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..cli.seeds {
        if let Err(message) = check_invariants(seed, &params, &limits) {
            failures.push((seed, message));
        }
    }
    if cli.json {
        let envelope = json!({
            "command": "resp-test",
            "engine_version": ENGINE_VERSION,
            "query": {
                "seeds": cli.seeds,
                "params": {
                    "max_endogenous": params.max_endogenous,
                    "max_exogenous": params.max_exogenous,
                    "max_range": params.max_range,
                    "max_depth": params.max_depth,
                },
            },
            "result": {
                "checked": cli.seeds,
                "failures": failures
                    .iter()
                    .map(|(seed, message)| json!({ "seed": seed, "message": message }))
                    .collect::<Vec<_>>(),
            },
            "timing_ms": started.elapsed().as_secs_f64() * 1000.0,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("report serializes")
        );
    } else {
        for (seed, message) in &failures {
            println!("seed {seed}: FAIL\n{message}\n");
        }
        println!(
            "checked {} seeds: {}",
            cli.seeds,
            if failures.is_empty() {
                "all invariants hold".to_string()
            } else {
                format!("{} failure(s)", failures.len())
            }
        );
    }
    if failures.is_empty() {
        0
    } else {
        1
    }
}
