//! `mkhunt`: evaluate MK profiles, hunt for MK-curves, check the BMY
//! inequality and rerun the reproduction suite.
//!
//! Exit status: 0 ok, 2 invalid input, 1 internal error or failed suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mkhunt::constraints::{
    check_langer_bmy, scaled_bmy, single_class_relaxation, sweep_langer_bmy, FactRegistry,
    DEFAULT_ALPHA_DENOM_LIMIT,
};
use mkhunt::gallery::{get_entry, list_entries};
use mkhunt::hunter::hunt_summary;
use mkhunt::suite::{run_suite, SuiteOptions};
use mkhunt::{
    ConstraintName, Error, HuntRequest, Hunter, Pipeline, Rational, Scalar, SingularityClass,
    SingularityProfile,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mkhunt", version, about = "Exact search and certification for Miyaoka-Kobayashi plane curves")]
struct Cli {
    /// Print a JSON CommandResult instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest denominator tried in BMY alpha sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_ALPHA_DENOM_LIMIT)]
    alpha_denom_limit: u32,

    /// Extra literature facts, appended to the bundled ones.
    #[arg(long, global = true, value_name = "PATH")]
    facts_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of a profile and the constraint verdicts on it.
    Evaluate(ProfileSource),
    /// Enumerate MK profiles of a degree over an alphabet and eliminate them.
    Hunt(HuntArgs),
    /// The BMY inequality at one alpha, or the full alpha sweep.
    Bmy(BmyArgs),
    /// Named curves with expected invariants.
    #[command(subcommand)]
    Gallery(GalleryCommand),
    /// Rerun every reproduction check.
    PaperSuite(SuiteArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ProfileSource {
    /// Profile as JSON: {"degree": 6, "singularities": {"A2": 9}}.
    #[arg(long)]
    profile: Option<String>,
    /// File holding a profile as JSON.
    #[arg(long, value_name = "PATH")]
    profile_file: Option<PathBuf>,
    /// Name of a gallery entry.
    #[arg(long, value_name = "NAME")]
    gallery: Option<String>,
}

#[derive(Args, Debug)]
struct HuntArgs {
    #[arg(long)]
    degree: u32,
    /// Comma-separated classes, e.g. A1,A2,A3,D4.
    #[arg(long, value_delimiter = ',', required = true)]
    alphabet: Vec<String>,
    #[arg(long)]
    irreducible: bool,
    /// Comma-separated constraint names to apply (default: all).
    #[arg(long, value_delimiter = ',')]
    constraints: Option<Vec<String>>,
    /// Enumerate and evaluate on all cores; output is unchanged.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug)]
struct BmyArgs {
    #[command(flatten)]
    source: ProfileSource,
    /// Exact alpha as "p/q"; without it the whole alpha grid is swept.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Subcommand, Debug)]
enum GalleryCommand {
    List,
    Show { name: String },
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Run only the named check; may be repeated.
    #[arg(long)]
    only: Vec<String>,
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    ViolatedInput,
    Error,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ViolatedInput => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
    warnings: Vec<String>,
    #[serde(skip)]
    text: String,
}

impl CommandResult {
    fn ok(payload: Value, text: String) -> Self {
        Self { status: Status::Ok, payload, warnings: Vec::new(), text }
    }

    fn failure(status: Status, message: String) -> Self {
        Self { status, payload: json!({ "error": message }), warnings: Vec::new(), text: message }
    }
}

/// Input errors exit with 2, anything else with 1.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

type Outcome = Result<CommandResult, Failure>;

fn to_json(v: &impl Serialize) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(internal)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let wants_json = std::env::args().any(|a| a == "--json");
            if !wants_json || matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let r = CommandResult::failure(Status::ViolatedInput, e.to_string());
            return emit(&r, true);
        }
    };
    let result = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Input(m)) => CommandResult::failure(Status::ViolatedInput, m),
        Err(Failure::Internal(m)) => CommandResult::failure(Status::Error, m),
    };
    emit(&result, cli.json)
}

fn emit(r: &CommandResult, json: bool) -> ExitCode {
    if json {
        match serde_json::to_string_pretty(r) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    } else if r.status == Status::Ok {
        print!("{}", r.text);
        for w in &r.warnings {
            eprintln!("warning: {w}");
        }
    } else {
        // A failed suite still prints its table on stdout.
        if r.payload.get("error").is_none() {
            print!("{}", r.text);
        } else {
            eprintln!("error: {}", r.text);
        }
    }
    ExitCode::from(r.status.exit_code())
}

fn facts(cli: &Cli) -> Result<FactRegistry, Failure> {
    let mut reg = FactRegistry::bundled();
    if let Some(path) = &cli.facts_file {
        reg.extend(FactRegistry::load(path)?);
    }
    Ok(reg)
}

fn run(cli: &Cli) -> Outcome {
    if cli.alpha_denom_limit == 0 {
        return Err(Failure::Input("--alpha-denom-limit must be positive".into()));
    }
    match &cli.command {
        Command::Evaluate(src) => cmd_evaluate(cli, src),
        Command::Hunt(args) => cmd_hunt(cli, args),
        Command::Bmy(args) => cmd_bmy(cli, args),
        Command::Gallery(GalleryCommand::List) => cmd_gallery_list(),
        Command::Gallery(GalleryCommand::Show { name }) => cmd_gallery_show(name),
        Command::PaperSuite(args) => cmd_paper_suite(cli, args),
    }
}

fn load_profile(src: &ProfileSource) -> Result<SingularityProfile, Failure> {
    let parse = |s: &str, origin: &str| {
        serde_json::from_str::<SingularityProfile>(s)
            .map_err(|e| Failure::Input(format!("{origin}: {e}")))
    };
    if let Some(s) = &src.profile {
        parse(s, "--profile")
    } else if let Some(path) = &src.profile_file {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        parse(&s, &path.display().to_string())
    } else if let Some(name) = &src.gallery {
        Ok(get_entry(name)?.profile)
    } else {
        Err(Failure::Input("no profile given".into()))
    }
}

fn cmd_evaluate(cli: &Cli, src: &ProfileSource) -> Outcome {
    let profile = load_profile(src)?;
    let eval = profile.evaluate::<Rational>();
    let pipeline = Pipeline {
        facts: facts(cli)?,
        alpha_denom_limit: cli.alpha_denom_limit,
        ..Pipeline::default()
    };
    let verdicts = pipeline.run::<Rational>(&profile);

    let opt = |v: &Option<Rational>| v.as_ref().map_or("not defined".to_string(), |q| q.to_string());
    let mut text = format!(
        "degree {}, {} singular point(s)\n  m(C)          = {}\n  MK target     = {}\n  mk_defect     = {}\n  is_mk         = {}\n  tau(C)        = {}\n  eps(C)        = {}\n",
        eval.degree,
        eval.count,
        eval.total_mk,
        opt(&eval.mk_target),
        opt(&eval.mk_defect),
        eval.is_mk.map_or("not defined".to_string(), |b| b.to_string()),
        eval.total_tjurina,
        eval.total_epsilon,
    );
    if let Some(nu) = eval.freeness_defect {
        text.push_str(&format!("  nu(C)         = {nu}\n"));
    }
    if let Some(d) = eval.dual_degree {
        text.push_str(&format!("  dual degree   = {d}\n"));
    }
    text.push_str("constraints:\n");
    for v in &verdicts {
        text.push_str(&format!("  {:<17} {}\n", v.constraint.to_string(), verdict_line(v)));
    }
    let mut r = CommandResult::ok(
        json!({ "profile": to_json(&profile)?, "evaluation": to_json(&eval)?, "verdicts": to_json(&verdicts)? }),
        text,
    );
    r.warnings = eval.warnings.clone();
    Ok(r)
}

fn verdict_line(v: &mkhunt::Verdict) -> String {
    let mut s = format!("{:?}", v.status);
    if let (Some(l), Some(r)) = (&v.lhs, &v.rhs) {
        let op = if v.is_violated() { ">" } else { "<=" };
        s.push_str(&format!(": {l} {op} {r}"));
    }
    if let Some(a) = v.alpha() {
        s.push_str(&format!(" at alpha = {a}"));
    }
    if let Some(n) = &v.note {
        s.push_str(&format!(" ({n})"));
    }
    s
}

fn cmd_hunt(cli: &Cli, args: &HuntArgs) -> Outcome {
    let alphabet = args
        .alphabet
        .iter()
        .map(|s| s.trim().parse::<SingularityClass>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut req = HuntRequest::new(args.degree, &alphabet)
        .irreducible(args.irreducible)
        .alpha_denom_limit(cli.alpha_denom_limit);
    if let Some(names) = &args.constraints {
        let names = names
            .iter()
            .map(|s| s.trim().parse::<ConstraintName>())
            .collect::<Result<Vec<_>, _>>()?;
        req = req.constraints(names);
    }
    let hunter = Hunter { facts: facts(cli)?, parallel: args.parallel };
    let report = hunter.hunt::<Rational>(&req)?;
    let summary = hunt_summary(&report);
    Ok(CommandResult::ok(
        json!({ "report": to_json(&report)?, "summary": to_json(&summary)? }),
        summary.to_string(),
    ))
}

fn cmd_bmy(cli: &Cli, args: &BmyArgs) -> Outcome {
    let profile = load_profile(&args.source)?;
    let verdict = match &args.alpha {
        Some(a) => check_langer_bmy(&profile, &Rational::parse_exact(a)?),
        None => sweep_langer_bmy(&profile, cli.alpha_denom_limit, false),
    };
    let mut payload = json!({ "profile": to_json(&profile)?, "verdict": to_json(&verdict)? });
    let mut text = format!("langer_bmy: {}\n", verdict_line(&verdict));

    let classes: Vec<SingularityClass> = profile.classes().collect();
    if let (Some(alpha), Some(lhs), Some(rhs)) = (verdict.alpha(), &verdict.lhs, &verdict.rhs) {
        if let Ok(b) = scaled_bmy::<Rational>(&classes, alpha) {
            let scale = Rational::from_int(b.scale.clone());
            let scaled = |v: &Rational| (v.clone() * scale.clone()).to_string();
            let op = if verdict.is_violated() { ">" } else { "<=" };
            text.push_str(&format!("  scaled by {}: {} {op} {}\n", b.scale, scaled(lhs), scaled(rhs)));
            payload["scaled"] = json!({
                "scale": b.scale.to_string(),
                "lhs": scaled(lhs),
                "rhs": scaled(rhs),
                "coefficients": b.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "rhs_n2": b.rhs_n2.to_string(),
                "rhs_n1": b.rhs_n1.to_string(),
            });
        }
        if let [class] = classes[..] {
            if let Ok(r) = single_class_relaxation::<Rational>(class, profile.degree(), alpha) {
                text.push_str(&format!(
                    "  at most {} = {} points of type {class} allowed at degree {}\n",
                    r.allowed,
                    r.allowed.approx(),
                    profile.degree()
                ));
                payload["single_class_bound"] = to_json(&r)?;
            }
        }
    }
    Ok(CommandResult::ok(payload, text))
}

fn cmd_gallery_list() -> Outcome {
    let entries = list_entries();
    let mut text = String::new();
    for e in &entries {
        let counts: Vec<String> =
            e.profile.counts().iter().map(|(c, k)| format!("{c}:{k}")).collect();
        text.push_str(&format!(
            "{:<18} degree {:<3} {{{}}}\n",
            e.name,
            e.profile.degree(),
            counts.join(", ")
        ));
    }
    Ok(CommandResult::ok(to_json(&entries)?, text))
}

fn cmd_gallery_show(name: &str) -> Outcome {
    let e = get_entry(name)?;
    let mut text = format!("{}\n  {}\n  profile: {}\n", e.name, e.citation, to_json(&e.profile)?);
    if let Some(n) = e.note {
        text.push_str(&format!("  note: {n}\n"));
    }
    for (k, v) in &e.expected {
        text.push_str(&format!("  {k:<24} {v}\n"));
    }
    Ok(CommandResult::ok(to_json(&e)?, text))
}

fn cmd_paper_suite(cli: &Cli, args: &SuiteArgs) -> Outcome {
    let opts = SuiteOptions {
        parallel: args.parallel,
        alpha_denom_limit: cli.alpha_denom_limit,
        facts: facts(cli)?,
        ..SuiteOptions::default()
    };
    let report = run_suite(&opts, &args.only)?;
    let mut r = CommandResult::ok(to_json(&report)?, report.render_text());
    if !report.all_passed {
        r.status = Status::Error;
    }
    Ok(r)
}
