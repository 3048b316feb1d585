//! The `carlitz` command line: argument grammar, dispatch and output.
//!
//! Every command is a pure function of its flags and seed. `--json` switches
//! the payload to a JSON document carrying `"schema": 1`.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use carlitz_core::carlitz::{
    carlitz_identity_check, partial_fractions, power_sum_brute, power_sum_closed,
};
use carlitz_core::classify::{classify, ClassifyOptions, Form, DEFAULT_BUDGET};
use carlitz_core::perm::{hermite_test, is_pr_brute, verify_theorem, TheoremId, VerifyOptions};
use carlitz_core::ratfun::are_equivalent;
use carlitz_core::reproduce::{run_item, Item, ReproduceOptions};
use carlitz_core::symident::{
    fixture, fixtures_checksum, resultant_wrt, Fixture, MultiPoly, FIXTURES_SHA256,
};
use carlitz_core::text::{format_poly, format_ratfun, parse_field, parse_ratfun};
use carlitz_core::{Error, Field, Poly, RationalFunction};

pub const SCHEMA: u32 = 1;
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// Table text, or a JSON document under `--json`.
    pub payload: String,
    pub diagnostics: Vec<String>,
}

#[derive(Parser, Debug)]
#[command(
    name = "carlitz",
    version,
    about = "Power sums and permutation rational functions over finite fields"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "CARLITZ_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field order, as `q` or `p^n`.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    /// Modulus coefficients, lowest degree first, leading 1 included.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SumMethod {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrMethod {
    Hermite,
    Brute,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a field.
    Field(FieldArgs),
    /// Check the Carlitz identity for k = 1..=k-max.
    CarlitzVerify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// The power sum of f(x)^s over the field.
    Powersum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: u64,
        #[arg(long, value_enum, default_value = "both")]
        method: SumMethod,
        /// Also print the partial fractions of f^s.
        #[arg(long)]
        decompose: bool,
    },
    /// Whether f permutes the projective line.
    IsPr {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value = "both")]
        method: PrMethod,
    },
    /// Search for f = phi(g(psi(x))) with degree-one phi, psi.
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Equivalence classes of PRs in a normal form.
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        degree: usize,
        /// deg3, 3.6 or 3.12.
        #[arg(long)]
        form: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a theorem on every (or, past the budget, sampled) parameter.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The h1, h2, h3 resultants.
    Resultants,
    /// Re-run every published computation.
    PaperCheck {
        /// Run only these items (name or number); repeatable.
        #[arg(long = "item")]
        items: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Budget for the theorem verifiers.
        #[arg(long)]
        budget: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Field(_) => "field",
            Command::CarlitzVerify { .. } => "carlitz-verify",
            Command::Powersum { .. } => "powersum",
            Command::IsPr { .. } => "is-pr",
            Command::Equiv { .. } => "equiv",
            Command::Classify { .. } => "classify",
            Command::Verify { .. } => "verify",
            Command::Resultants => "resultants",
            Command::PaperCheck { .. } => "paper-check",
        }
    }
}

struct Outcome {
    ok: bool,
    json: Value,
    text: String,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, json: Value, text: String) -> Outcome {
        Outcome {
            ok,
            json,
            text,
            diagnostics: Vec::new(),
        }
    }
}

type Res<T> = std::result::Result<T, Error>;

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: EXIT_PASS,
                    payload: text,
                    diagnostics: Vec::new(),
                },
                _ => CommandResult {
                    exit_code: EXIT_USAGE,
                    payload: String::new(),
                    diagnostics: vec![text],
                },
            };
        }
    };
    let exec = || dispatch(&cli.command);
    let res = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(Error::Unsupported(format!("cannot start {j} workers: {e}"))),
        },
        None => exec(),
    };
    let command = cli.command.name();
    match res {
        Ok(o) => {
            let payload = if cli.json {
                let mut doc = json!({ "schema": SCHEMA, "command": command });
                if let (Value::Object(d), Value::Object(body)) = (&mut doc, o.json) {
                    d.extend(body);
                }
                serde_json::to_string_pretty(&doc).expect("serializable")
            } else {
                o.text
            };
            CommandResult {
                exit_code: if o.ok { EXIT_PASS } else { EXIT_FAIL },
                payload,
                diagnostics: o.diagnostics,
            }
        }
        Err(e) => {
            let kind = error_kind(&e);
            let payload = if cli.json {
                let doc = json!({
                    "schema": SCHEMA,
                    "command": command,
                    "error": { "kind": kind, "message": e.to_string() },
                });
                serde_json::to_string_pretty(&doc).expect("serializable")
            } else {
                String::new()
            };
            CommandResult {
                exit_code: EXIT_USAGE,
                payload,
                diagnostics: vec![format!("error: {e}")],
            }
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let end = dbg.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(dbg.len());
    dbg[..end].to_string()
}

fn field_from(args: &FieldArgs) -> Res<Field> {
    let usage = |m: &str| Error::Hypothesis(m.to_string());
    let from_q = args.q.as_deref().map(parse_field).transpose()?;
    let p = match (&from_q, args.p) {
        (Some(f), Some(p)) if f.p() as u64 != p => return Err(usage("--p disagrees with --q")),
        (Some(f), _) => f.p() as u64,
        (None, Some(p)) => p,
        (None, None) => return Err(usage("select a field with --q or --p")),
    };
    if let Some(m) = &args.modulus {
        let f = Field::with_modulus(p, m)?;
        if let Some(g) = &from_q {
            if g.order() != f.order() {
                return Err(usage("--modulus degree disagrees with --q"));
            }
        }
        if args.n.is_some_and(|n| n != f.n()) {
            return Err(usage("--modulus degree disagrees with --n"));
        }
        return Ok(f);
    }
    match (from_q, args.n) {
        (Some(f), Some(n)) if f.n() != n => Err(usage("--n disagrees with --q")),
        (Some(f), _) => Ok(f),
        (None, n) => Field::new(p, n.unwrap_or(1)),
    }
}

fn dispatch(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Field(args) => field_info(&field_from(args)?),
        Command::CarlitzVerify { field, k_max } => carlitz_verify(&field_from(field)?, *k_max),
        Command::Powersum {
            field,
            f,
            s,
            method,
            decompose,
        } => powersum(&field_from(field)?, f, *s, *method, *decompose),
        Command::IsPr { field, f, method } => is_pr(&field_from(field)?, f, *method),
        Command::Equiv { field, f, g } => equiv(&field_from(field)?, f, g),
        Command::Classify {
            q,
            degree,
            form,
            budget,
        } => classify_cmd(*q, *degree, form, *budget),
        Command::Verify {
            theorem,
            q,
            budget,
            seed,
        } => verify(theorem, *q, *budget, *seed),
        Command::Resultants => resultants(),
        Command::PaperCheck {
            items,
            seed,
            budget,
        } => paper_check(items, *seed, *budget),
    }
}

fn field_info(f: &Field) -> Res<Outcome> {
    let modulus = Poly::from_coeffs(
        &f.prime_field(),
        f.modulus().iter().map(|&c| f.prime_field().from_int(c as i64)).collect(),
    );
    let prim = f.format_elem(f.primitive_element());
    let json = json!({
        "p": f.p(),
        "n": f.n(),
        "q": f.order(),
        "modulus": f.modulus(),
        "modulus_text": format_poly(&modulus),
        "canonical": f.is_canonical(),
        "primitive_element": prim,
    });
    let text = format!(
        "GF({}) = GF({})\nmodulus: {}\ncanonical: {}\nprimitive element: {}\n",
        f.order(),
        f.descriptor(),
        format_poly(&modulus),
        f.is_canonical(),
        prim
    );
    Ok(Outcome::new(true, json, text))
}

fn carlitz_verify(f: &Field, k_max: Option<u64>) -> Res<Outcome> {
    let q = f.order() as u64;
    if !f.is_canonical() {
        return Err(Error::Unsupported("carlitz-verify uses the canonical field".into()));
    }
    let k_max = k_max.unwrap_or(q);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for k in 1..=k_max {
        let holds = carlitz_identity_check(q, k)?;
        all &= holds;
        rows.push(json!({ "k": k, "holds": holds }));
        let _ = writeln!(text, "k={k}: {}", if holds { "holds" } else { "FAILS" });
    }
    let verdict = if all { "pass" } else { "fail" };
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(Outcome::new(
        all,
        json!({ "q": q, "k_max": k_max, "results": rows, "verdict": verdict }),
        text,
    ))
}

fn parse_f(field: &Field, s: &str) -> Res<RationalFunction> {
    parse_ratfun(field, s)
}

fn powersum(field: &Field, f: &str, s: u64, method: SumMethod, decompose: bool) -> Res<Outcome> {
    let f = parse_f(field, f)?;
    let mut diagnostics = Vec::new();
    let closed = match method {
        SumMethod::Brute => None,
        SumMethod::Closed => Some(power_sum_closed(&f, s)?),
        SumMethod::Both => match power_sum_closed(&f, s) {
            Ok(v) => Some(v),
            Err(e @ (Error::FormulaOutOfRange(_) | Error::EnvelopeExceeded { .. })) => {
                diagnostics.push(format!("closed form unavailable: {e}"));
                None
            }
            Err(e) => return Err(e),
        },
    };
    let brute = match method {
        SumMethod::Closed => None,
        _ => Some(power_sum_brute(&f, s)?),
    };
    let agree = match (closed, brute) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let fmt = |v: Option<carlitz_core::gf::Elem>| v.map(|v| field.format_elem(v));
    let mut json = json!({
        "q": field.order(),
        "f": format_ratfun(&f),
        "s": s,
        "closed": fmt(closed),
        "brute": fmt(brute),
        "agree": agree,
    });
    let mut text = format!("f = {}\ns = {s}\n", format_ratfun(&f));
    if let Some(v) = fmt(closed) {
        let _ = writeln!(text, "closed: {v}");
    }
    if let Some(v) = fmt(brute) {
        let _ = writeln!(text, "brute:  {v}");
    }
    if let Some(a) = agree {
        let _ = writeln!(text, "agree: {a}");
    }
    if decompose {
        let d = partial_fractions(&f, s)?;
        json["decomposition"] = Value::String(d.to_string());
        json["splitting_field"] = Value::String(d.ext_field.descriptor());
        let _ = writeln!(text, "f^{s} = {d}\nover GF({})", d.ext_field.descriptor());
    }
    let mut o = Outcome::new(agree != Some(false), json, text);
    o.diagnostics = diagnostics;
    Ok(o)
}

fn is_pr(field: &Field, f: &str, method: PrMethod) -> Res<Outcome> {
    let f = parse_f(field, f)?;
    let hermite = match method {
        PrMethod::Brute => None,
        _ => Some(hermite_test(&f)?),
    };
    let brute = match method {
        PrMethod::Hermite => None,
        _ => Some(is_pr_brute(&f)),
    };
    let agree = match (hermite, brute) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let is_pr = brute.or(hermite).expect("one method runs");
    let json = json!({
        "q": field.order(),
        "f": format_ratfun(&f),
        "degree": f.degree(),
        "is_pr": is_pr,
        "hermite": hermite,
        "brute": brute,
        "agree": agree,
    });
    let mut text = format!("f = {}\nPR of P^1(GF({})): {is_pr}\n", format_ratfun(&f), field.order());
    if agree == Some(false) {
        let _ = writeln!(text, "methods disagree: hermite {hermite:?}, brute {brute:?}");
    }
    Ok(Outcome::new(agree != Some(false), json, text))
}

fn equiv(field: &Field, f: &str, g: &str) -> Res<Outcome> {
    let f = parse_f(field, f)?;
    let g = parse_f(field, g)?;
    let w = are_equivalent(&f, &g)?;
    let (phi, psi) = match &w {
        Some(w) => (Some(w.phi.to_string()), Some(w.psi.to_string())),
        None => (None, None),
    };
    let json = json!({
        "q": field.order(),
        "f": format_ratfun(&f),
        "g": format_ratfun(&g),
        "equivalent": w.is_some(),
        "phi": phi,
        "psi": psi,
    });
    let text = match &w {
        Some(w) => format!("equivalent: f = phi(g(psi(x)))\nphi = {}\npsi = {}\n", w.phi, w.psi),
        None => "not equivalent\n".to_string(),
    };
    Ok(Outcome::new(true, json, text))
}

fn classify_cmd(q: u64, degree: usize, form: &str, budget: Option<u64>) -> Res<Outcome> {
    let form: Form = form.parse()?;
    let opts = ClassifyOptions {
        budget: budget.unwrap_or(DEFAULT_BUDGET),
    };
    let r = classify(q, degree, form, &opts)?;
    let mut text = format!(
        "{} over GF({q}), degree {degree}: {} classes ({} PRs in {} tuples)\n",
        r.form, r.class_count, r.prs_found, r.search_space_size
    );
    for c in &r.classes {
        let _ = writeln!(text, "  {}  [{} members]", c.representative, c.members);
    }
    if let Some(refs) = &r.references {
        for m in refs {
            let at = m
                .class_index
                .map_or("no class".to_string(), |i| format!("class {}", i + 1));
            let _ = writeln!(text, "listed {} -> {at}", m.text);
        }
    }
    let ok = r.matches_references() != Some(false);
    let json = serde_json::to_value(&r).expect("serializable");
    Ok(Outcome::new(ok, json, text))
}

fn verify(theorem: &str, q: u64, budget: Option<u64>, seed: u64) -> Res<Outcome> {
    let id: TheoremId = theorem.parse()?;
    let opts = VerifyOptions {
        budget: budget.unwrap_or(VerifyOptions::default().budget),
        seed,
    };
    let r = verify_theorem(id, q, &opts)?;
    let mut text = format!(
        "{id} at q={q}: {} ({} cases{}, {} PRs, {} mismatches)\n",
        if r.passed() { "pass" } else { "FAIL" },
        r.cases,
        if r.exhaustive {
            String::new()
        } else {
            format!(", sampled with seed {}", r.seed)
        },
        r.prs_found,
        r.failure_count
    );
    for c in &r.failures {
        let _ = writeln!(text, "  mismatch {:?}: expected {:?}", c.params, c.expected);
    }
    let json = serde_json::to_value(&r).expect("serializable");
    Ok(Outcome::new(r.passed(), json, text))
}

fn resultants() -> Res<Outcome> {
    let h1 = fixture(Fixture::H1);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for (h, stated) in [(Fixture::H2, 972i64), (Fixture::H3, 5103)] {
        let res = resultant_wrt(&h1, &fixture(h), "r1")?;
        let want = MultiPoly::monomial(stated.into(), &[("r2", 12)]);
        let signed = res == want;
        let up_to_sign = signed || res == want.neg();
        ok &= signed;
        rows.push(json!({
            "pair": format!("h1,{h}"),
            "variable": "r1",
            "resultant": res.to_string(),
            "stated": want.to_string(),
            "matches": signed,
            "matches_up_to_sign": up_to_sign,
        }));
        let _ = writeln!(
            text,
            "Res(h1, {h}; r1) = {res}\n  stated {want}: {}",
            if signed { "match" } else { "MISMATCH" }
        );
    }
    let checksum = fixtures_checksum();
    let intact = checksum == FIXTURES_SHA256;
    ok &= intact;
    let _ = writeln!(text, "fixture checksum: {checksum} ({})", if intact { "ok" } else { "CHANGED" });
    let fixtures: serde_json::Map<String, Value> = Fixture::ALL
        .iter()
        .map(|&f| (f.name().to_string(), Value::String(fixture(f).to_string())))
        .collect();
    let json = json!({
        "resultants": rows,
        "fixtures": fixtures,
        "fixtures_sha256": checksum,
        "verdict": if ok { "pass" } else { "fail" },
    });
    Ok(Outcome::new(ok, json, text))
}

fn paper_check(items: &[String], seed: u64, budget: Option<u64>) -> Res<Outcome> {
    let selected: Vec<Item> = if items.is_empty() {
        Item::ALL.to_vec()
    } else {
        items.iter().map(|s| s.parse()).collect::<Res<_>>()?
    };
    let mut opts = ReproduceOptions {
        seed,
        ..ReproduceOptions::default()
    };
    if let Some(b) = budget {
        opts.verify_budget = b;
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut diagnostics = Vec::new();
    for item in selected {
        let r = run_item(item, &opts);
        let label = r.criterion.map_or("-".to_string(), |n| n.to_string());
        let _ = writeln!(
            text,
            "[{}] {label} {item}: {} checks, {} skipped",
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            r.skipped
        );
        if let Some(f) = &r.failure {
            let _ = writeln!(text, "    first mismatch: {f}");
        }
        for n in &r.notes {
            let _ = writeln!(text, "    {n}");
        }
        diagnostics.push(format!("{item}: {:.3} s", r.elapsed.as_secs_f64()));
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.passed);
    let _ = writeln!(text, "verdict: {}", if ok { "pass" } else { "fail" });
    let json = json!({
        "seed": seed,
        "items": reports,
        "verdict": if ok { "pass" } else { "fail" },
    });
    let mut o = Outcome::new(ok, json, text);
    o.diagnostics = diagnostics;
    Ok(o)
}
