//! Argument parsing and command execution for the `chamber` binary.
//!
//! [`run`] returns the exit code and the text for standard output, so commands can be
//! exercised without spawning a process.

use chamber_core::arith::frac::Frac;
use chamber_core::arith::{CountingProfile, Q};
use chamber_core::chamber::{chamber_coordinates, phi_evaluate, phi_evaluate_by_flags};
use chamber_core::character::{evaluate_at_chart, summand_phis, Tilting, TiltingContext};
use chamber_core::counting::{build_y_module, count_subrep_strata, euler_characteristic, ambient_bound, grassmannian_profiles};
use chamber_core::generic::{generic_basis, module_varieties, ComponentKind};
use chamber_core::report::{Check, Provenance, Report};
use chamber_core::rep::module::Rep;
use chamber_core::scenario::{load_scenario, Scenario, BUNDLED};
use chamber_core::seed::{ExchangeQuiver, Seed, SeedJson};
use chamber_core::twist::{verify_twist_identity, TwistMap};
use chamber_core::verify::{verify_scenario, VerifyOptions};
use chamber_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "chamber", version, about = "Exact verification of cluster characters and the Chamber Ansatz")]
pub struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit plain text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// φ_X on the chart x_i(t), with the Euler characteristic of every stratum.
    Phi(PhiArgs),
    /// Point counts and Euler characteristics of the quiver Grassmannians of Y.
    Grassmannian(ModuleArgs),
    /// Twisted minors and Chamber Ansatz coordinates.
    Chamber {
        #[command(subcommand)]
        action: ChamberAction,
    },
    /// Same as `chamber verify`.
    Verify(ScenarioArgs),
    /// Cluster characters.
    Character {
        #[command(subcommand)]
        action: CharacterAction,
    },
    /// Generic basis elements x^m ψ_Z up to a size bound.
    GenericBasis(GenericArgs),
    /// The twist automorphism.
    Twist {
        #[command(subcommand)]
        action: TwistAction,
    },
    /// Seed mutation.
    Mutate(MutateArgs),
    /// Every check for one scenario, or for all bundled scenarios.
    VerifyAll(VerifyAllArgs),
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// Bundled scenario name or path to a JSON scenario file.
    #[arg(long)]
    pub scenario: String,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[arg(long)]
    pub scenario: String,
    /// Named module of the scenario, or a JSON representation file.
    #[arg(long)]
    pub module: String,
    /// Primes to count over; by default primes are added until every Euler characteristic is decided.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PhiMethod {
    /// Quiver Grassmannians of Y.
    Grassmannian,
    /// Partial composition series of X.
    Flags,
}

#[derive(Args, Debug)]
pub struct PhiArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub module: String,
    #[arg(long, value_enum, default_value = "grassmannian")]
    pub method: PhiMethod,
}

#[derive(Subcommand, Debug)]
pub enum ChamberAction {
    /// Checks C_k(x(t)) = t_k for every k.
    Verify(ScenarioArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TiltingChoice {
    V,
    W,
}

#[derive(Subcommand, Debug)]
pub enum CharacterAction {
    /// g- and h-vectors, F-polynomial and θ^T_X on the chart.
    Theta {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_enum)]
        tilting: TiltingChoice,
        #[arg(long)]
        module: String,
    },
}

#[derive(Args, Debug)]
pub struct GenericArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long, value_enum, default_value = "w")]
    pub tilting: TiltingChoice,
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
}

#[derive(Subcommand, Debug)]
pub enum TwistAction {
    /// Checks κ(φ_X) = φ_Ω(X) / φ_P(X) for every named module.
    Verify(ScenarioArgs),
}

#[derive(Args, Debug)]
pub struct MutateArgs {
    /// Bundled quiver (`kronecker`, `A2`, `A3`) or a JSON seed file.
    #[arg(long)]
    pub quiver: String,
    /// 1-based vertex; repeat for a sequence.
    #[arg(long = "at", required = true)]
    pub at: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyAllArgs {
    /// Restrict to one scenario.
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
}

/// Failure of a command before it produced output.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::UnknownScenario(_) | Error::ParseError(_) | Error::Invalid(_) | Error::FrozenVertex(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Output of a successful command.
pub struct Outcome {
    pub passed: bool,
    pub json: serde_json::Value,
    pub text: String,
}

impl Outcome {
    fn info<T: Serialize>(value: &T, text: String) -> Outcome {
        Outcome { passed: true, json: serde_json::to_value(value).expect("serializable"), text }
    }

    fn report(r: Report) -> Outcome {
        Outcome { passed: r.all_pass(), json: serde_json::to_value(&r).expect("serializable"), text: r.to_text() }
    }
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the exit code together with the text for standard output and standard error.
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let msg = e.render().to_string();
            return if code == EXIT_PASS { (code, msg, String::new()) } else { (code, String::new(), msg) };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let body = if cli.text { out.text } else { format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable")) };
            (if out.passed { EXIT_PASS } else { EXIT_FAIL }, body, String::new())
        }
        Err(CliError::Usage(m)) => (EXIT_USAGE, String::new(), format!("error: {m}\n")),
        Err(CliError::Failed(m)) => (EXIT_FAIL, String::new(), format!("error: {m}\n")),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Phi(a) => phi(a),
        Command::Grassmannian(a) => grassmannian(a),
        Command::Chamber { action: ChamberAction::Verify(a) } | Command::Verify(a) => chamber_verify(a),
        Command::Character { action: CharacterAction::Theta { scenario, tilting, module } } => theta(scenario, *tilting, module),
        Command::GenericBasis(a) => generic(a, cli.seed),
        Command::Twist { action: TwistAction::Verify(a) } => twist(a),
        Command::Mutate(a) => mutate(a),
        Command::VerifyAll(a) => verify_all(a, cli.seed),
    }
}

fn scenario_module(scenario: &str, module: &str) -> Result<(Scenario, Rep<Q>), CliError> {
    let s = load_scenario(scenario)?;
    let m = if module.ends_with(".json") {
        let text = std::fs::read_to_string(module).map_err(|e| CliError::Usage(format!("{module}: {e}")))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{module}: line {} column {}: {e}", e.line(), e.column())))?;
        let rep = Rep::from_json(s.ctx.quiver(), &v)?;
        if !s.ctx.contains(&rep) {
            return Err(CliError::Usage(format!("{module} is not in the category of the scenario")));
        }
        rep
    } else {
        s.module(module)?.clone()
    };
    Ok((s, m))
}

/// One stratum: `{"stratum": a, "samples": {p: n}, "chi": c}`.
#[derive(Serialize)]
struct StratumJson {
    stratum: Vec<usize>,
    samples: BTreeMap<u64, u64>,
    chi: Option<i64>,
}

fn strata_json(strata: &BTreeMap<Vec<usize>, CountingProfile>) -> Vec<StratumJson> {
    strata.iter().map(|(a, p)| StratumJson { stratum: a.clone(), samples: p.samples.clone(), chi: p.euler_char }).collect()
}

fn strata_text(strata: &[StratumJson]) -> String {
    strata
        .iter()
        .map(|s| {
            let chi = s.chi.map_or("undecided".to_string(), |c| c.to_string());
            let samples: Vec<String> = s.samples.iter().map(|(p, n)| format!("{p}:{n}")).collect();
            format!("  {:?}  chi={chi}  counts {}\n", s.stratum, samples.join(" "))
        })
        .collect()
}

#[derive(Serialize)]
struct PhiJson {
    scenario: String,
    module: String,
    phi: String,
    strata: Vec<StratumJson>,
}

fn phi(a: &PhiArgs) -> Result<Outcome, CliError> {
    let (s, x) = scenario_module(&a.scenario, &a.module)?;
    let ev = match a.method {
        PhiMethod::Grassmannian => phi_evaluate(&s.ctx, &x)?,
        PhiMethod::Flags => phi_evaluate_by_flags(&s.ctx, &x)?,
    };
    let out = PhiJson { scenario: s.name.clone(), module: a.module.clone(), phi: ev.polynomial.to_string(), strata: strata_json(&ev.strata) };
    let text = format!("phi_{} = {}\n{}", a.module, out.phi, strata_text(&out.strata));
    Ok(Outcome::info(&out, text))
}

#[derive(Serialize)]
struct GrassmannianJson {
    scenario: String,
    module: String,
    dim_y: Vec<usize>,
    strata: Vec<StratumJson>,
}

fn grassmannian(a: &ModuleArgs) -> Result<Outcome, CliError> {
    let (s, x) = scenario_module(&a.scenario, &a.module)?;
    let y = build_y_module(s.ctx.quiver(), &s.ctx.word, &x)?;
    let strata = if a.primes.is_empty() {
        strata_json(&grassmannian_profiles(&y.quiver, &y.rep)?)
    } else {
        let mut samples: BTreeMap<Vec<usize>, BTreeMap<u64, u64>> = BTreeMap::new();
        for &p in &a.primes {
            let red = y.rep.mod_p(p).filter(|_| y.rep.good_prime(&y.quiver, p)).ok_or(Error::BadPrime(p))?;
            let f = chamber_core::arith::PrimeField::new(p);
            for (d, n) in count_subrep_strata(&f, &y.quiver, &red, None) {
                samples.entry(d).or_default().insert(p, n);
            }
        }
        samples
            .into_iter()
            .map(|(d, smp)| {
                let chi = euler_characteristic(&smp, ambient_bound(&y.rep.dims, &d)).ok().and_then(|p| p.euler_char);
                StratumJson { stratum: d, samples: smp, chi }
            })
            .collect()
    };
    let out = GrassmannianJson { scenario: s.name.clone(), module: a.module.clone(), dim_y: y.rep.dims.clone(), strata };
    let text = format!("dim Y = {:?}\n{}", out.dim_y, strata_text(&out.strata));
    Ok(Outcome::info(&out, text))
}

fn chamber_verify(a: &ScenarioArgs) -> Result<Outcome, CliError> {
    let s = load_scenario(&a.scenario)?;
    let ch = chamber_coordinates(&s.ctx)?;
    let mut r = Report::new();
    for m in &ch.minors {
        r.push(Check::holds(format!("phi'_{} = {}", m.k, m.value), Provenance::Computed, m.matches_word_formula, || "differs from t^(-a^-(V_k))".into()));
    }
    let t = chamber_core::chamber::t_vars(s.ctx.r());
    for (k, (sym, val)) in ch.symbolic.iter().zip(&ch.values).enumerate() {
        let expected = chamber_core::arith::Laurent::var(&t, k);
        r.push(Check::compare(format!("C_{} = {} evaluates to t{}", k + 1, sym, k + 1), Provenance::Published, &expected, val));
    }
    Ok(Outcome::report(r))
}

fn tilting_context(s: &Scenario, choice: TiltingChoice) -> Result<TiltingContext, CliError> {
    let q = s.ctx.quiver();
    let t = match choice {
        TiltingChoice::V => Tilting::v_of(&s.ctx),
        TiltingChoice::W => Tilting::w_of(&s.ctx)?,
    };
    Ok(TiltingContext::new(q, t)?)
}

#[derive(Serialize)]
struct ThetaJson {
    g: Vec<i64>,
    h: Vec<i64>,
    #[serde(rename = "F")]
    f: String,
    theta: String,
    theta_eval: String,
    phi: String,
    matches_phi: bool,
}

fn theta(scenario: &str, choice: TiltingChoice, module: &str) -> Result<Outcome, CliError> {
    let (s, x) = scenario_module(scenario, module)?;
    let tc = tilting_context(&s, choice)?;
    let d = tc.character_data(&s.ctx.algebra, &x)?;
    let th = tc.theta(&d)?;
    let eval = evaluate_at_chart(&th, &summand_phis(&s.ctx, &tc.t)?, s.ctx.r())?;
    let phi = Frac::from(phi_evaluate(&s.ctx, &x)?.polynomial);
    let out = ThetaJson {
        g: d.g.clone(),
        h: d.h.clone(),
        f: d.f_poly.to_string(),
        theta: th.to_string(),
        theta_eval: eval.to_string(),
        phi: phi.to_string(),
        matches_phi: eval == phi,
    };
    let text = format!(
        "g = {:?}\nh = {:?}\nF = {}\ntheta = {}\ntheta(x(t)) = {}\nphi(x(t)) = {}\n",
        out.g, out.h, out.f, out.theta, out.theta_eval, out.phi
    );
    Ok(Outcome { passed: out.matches_phi, json: serde_json::to_value(&out).expect("serializable"), text })
}

#[derive(Serialize)]
struct ComponentJson {
    d: Vec<usize>,
    kind: &'static str,
    summands: BTreeMap<String, usize>,
    c: usize,
    e: usize,
    h: usize,
}

#[derive(Serialize)]
struct BasisJson {
    m: Vec<usize>,
    component: ComponentJson,
    value: String,
    provenance: Provenance,
}

#[derive(Serialize)]
struct GenericJson {
    variables: Vec<String>,
    bound: usize,
    elements: Vec<BasisJson>,
}

fn generic(a: &GenericArgs, seed: u64) -> Result<Outcome, CliError> {
    let s = load_scenario(&a.scenario)?;
    let tc = tilting_context(&s, a.tilting)?;
    let varieties = module_varieties(&tc, 8, seed)?;
    let basis = generic_basis(&tc, &varieties, a.bound, seed)?;
    let elements: Vec<BasisJson> = basis
        .iter()
        .map(|e| BasisJson {
            m: e.m.clone(),
            component: ComponentJson {
                d: e.component.d.clone(),
                kind: match e.component.kind {
                    ComponentKind::OrbitClosure(_) => "orbit-closure",
                    ComponentKind::Affine => "affine",
                },
                summands: e.summands.iter().cloned().collect(),
                c: e.component.c,
                e: e.component.e,
                h: e.component.h,
            },
            value: e.value.to_string(),
            provenance: Provenance::Computed,
        })
        .collect();
    let variables = tc.t.mutable().iter().map(|k| format!("x{}", k + 1)).collect();
    let text = elements.iter().map(|e| format!("m={:?} {:?}  {}\n", e.m, e.component.summands, e.value)).collect();
    Ok(Outcome::info(&GenericJson { variables, bound: a.bound, elements }, text))
}

fn twist(a: &ScenarioArgs) -> Result<Outcome, CliError> {
    let s = load_scenario(&a.scenario)?;
    let q = s.ctx.quiver();
    let tv = TiltingContext::new(q, Tilting::v_of(&s.ctx))?;
    let map = TwistMap::new(&s.ctx)?;
    let mut r = Report::new();
    for name in s.module_names() {
        let claim = format!("kappa(phi_{name}) = phi_Omega({name}) / phi_P({name})");
        match verify_twist_identity(&s.ctx, &tv, &map, s.module(&name)?) {
            Ok(c) => r.push(Check::compare(claim, Provenance::Published, &c.expected, &Frac::from(c.kappa))),
            Err(e) => r.push(Check::error(claim, Provenance::Published, e)),
        }
    }
    Ok(Outcome::report(r))
}

/// Exchange quivers available by name; `gamma[i][j]` counts arrows `j → i` minus `i → j`.
fn named_quiver(name: &str) -> Option<ExchangeQuiver> {
    let gamma = match name {
        "kronecker" => vec![vec![0, -2], vec![2, 0]],
        "A2" => vec![vec![0, -1], vec![1, 0]],
        "A3" => vec![vec![0, -1, 0], vec![1, 0, -1], vec![0, 1, 0]],
        _ => return None,
    };
    let n = gamma.len();
    ExchangeQuiver::new(gamma, vec![false; n]).ok()
}

#[derive(Serialize)]
struct MutateJson {
    sequence: Vec<usize>,
    seed: SeedJson,
    equals_initial: bool,
}

fn mutate(a: &MutateArgs) -> Result<Outcome, CliError> {
    let initial = match named_quiver(&a.quiver) {
        Some(q) => Seed::initial(q),
        None if a.quiver.ends_with(".json") => {
            let text = std::fs::read_to_string(&a.quiver).map_err(|e| CliError::Usage(format!("{}: {e}", a.quiver)))?;
            let j: SeedJson = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: line {} column {}: {e}", a.quiver, e.line(), e.column())))?;
            Seed::from_json(&j)?
        }
        None => return Err(CliError::Usage(format!("unknown quiver {}; use kronecker, A2, A3 or a JSON seed file", a.quiver))),
    };
    let r = initial.quiver.r();
    if let Some(&k) = a.at.iter().find(|&&k| k == 0 || k > r) {
        return Err(CliError::Usage(format!("vertex {k} out of range 1..{r}")));
    }
    let ks: Vec<usize> = a.at.iter().map(|k| k - 1).collect();
    let out = initial.mutate_sequence(&ks)?;
    let result = MutateJson { sequence: a.at.clone(), seed: out.to_json(), equals_initial: out == initial };
    let mut text: String = out.cluster.iter().enumerate().map(|(i, c)| format!("x{}' = {c}\n", i + 1)).collect();
    if result.equals_initial {
        text.push_str("equal to the initial seed\n");
    }
    Ok(Outcome::info(&result, text))
}

fn verify_all(a: &VerifyAllArgs, seed: u64) -> Result<Outcome, CliError> {
    let names: Vec<String> = match &a.scenario {
        Some(s) => vec![s.clone()],
        None => BUNDLED.iter().map(|s| s.to_string()).collect(),
    };
    let opts = VerifyOptions { primes: a.primes.clone(), seed, bound: a.bound };
    let mut r = Report::new();
    for name in names {
        let s = load_scenario(&name)?;
        let mut part = verify_scenario(&s, &opts);
        if a.scenario.is_none() {
            for c in &mut part.checks {
                c.claim = format!("{name}: {}", c.claim);
            }
        }
        r.extend(part);
    }
    Ok(Outcome::report(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chamber_core::report::{Check, Provenance};

    #[test]
    fn failed_report_is_a_verification_failure() {
        let mut r = Report::new();
        r.push(Check::compare("one", Provenance::Definition, &1, &2));
        assert!(!Outcome::report(r).passed);
        assert!(matches!(CliError::from(Error::NotInCategory("x".into())), CliError::Failed(_)));
        assert!(matches!(CliError::from(Error::UnknownScenario("x".into())), CliError::Usage(_)));
    }
}
