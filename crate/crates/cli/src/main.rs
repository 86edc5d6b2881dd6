//! `gpq`: balls, rewriting, endomorphic presentations and the Grigorchuk
//! verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or input error,
//! 3 oracle mismatch, 4 resource limit.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use gpq::backends::{bs_oracle, dihedral_group_with, FreeAbelianOracle, FreeOracle, WordOracle};
use gpq::ball::{
    build_ball, build_sphere, pi1_generators, pi1_kill_radius, BallError, KillRadius, SearchCaps,
};
use gpq::endo::{expand_relators, hnn_presentation, hnn_text};
use gpq::grigorchuk::{family_text, run_full_verification, Family, Variant};
use gpq::rewriting::{
    ball_null_homotopy_witness, certify_local_confluence, BallWitness, ConfluenceVerdict,
    RewriteError, RewritingOracle, RewritingSystem, Rule, Strategy,
};
use gpq::{parse_document, parse_presentation, Alphabet, Document, PresentationFile, Word};

const DEFAULT_STEP_CAP: usize = 10_000;
const WORD_CAP: u128 = 5_000_000;

#[derive(Parser)]
#[command(
    name = "gpq",
    version,
    about = "Combinatorial group presentation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric ball (or sphere) of a Cayley complex.
    Ball {
        file: PathBuf,
        /// auto, free, abelian, rewriting, dihedral:N or bs:M,N
        #[arg(long, default_value = "auto")]
        backend: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        sphere: bool,
        /// List the loop generators of the 1-skeleton.
        #[arg(long)]
        pi1: bool,
        /// Search the radius at which all loops of B(r) bound, up to this.
        #[arg(long, value_name = "RMAX")]
        kill_radius: Option<usize>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Reduce words, check confluence, or certify small balls.
    Rewrite {
        file: PathBuf,
        #[arg(long)]
        word: Option<String>,
        /// innermost or outermost
        #[arg(long, default_value = "innermost")]
        strategy: String,
        #[arg(long)]
        confluence: bool,
        /// Termination probe length for --confluence.
        #[arg(long, default_value_t = 6)]
        probe_len: usize,
        #[arg(long, value_name = "R")]
        ball_witness: Option<usize>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Relator families and the transport verification.
    Grigorchuk {
        #[command(subcommand)]
        action: GrigorchukAction,
    },
    /// HNN presentation of an endomorphic presentation.
    Hnn {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Relators of an endomorphic presentation up to a composition depth.
    Expand {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GrigorchukAction {
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    Show {
        #[arg(long, default_value = "acd")]
        variant: String,
        #[arg(long, default_value = "w")]
        family: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
struct Caps {
    step_cap: usize,
    search_states: usize,
    search_max_len: usize,
}

impl Caps {
    fn from_env() -> Result<Caps, Failure> {
        let defaults = SearchCaps::default();
        let mut caps = Caps {
            step_cap: DEFAULT_STEP_CAP,
            search_states: defaults.states,
            search_max_len: defaults.max_len,
        };
        if let Ok(v) = std::env::var("GPQ_STEP_CAP") {
            let n: usize = v.trim().parse().map_err(|_| {
                fail(
                    2,
                    format!("GPQ_STEP_CAP must be a nonnegative integer, got `{v}`"),
                )
            })?;
            caps.step_cap = n;
            caps.search_states = n;
        }
        Ok(caps)
    }

    fn search(&self) -> SearchCaps {
        SearchCaps {
            states: self.search_states,
            max_len: self.search_max_len,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<PresentationFile, Failure> {
    parse_presentation(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

/// Accepts `a d a' d` as well as `ada'd` when every name is one character.
fn parse_word(alpha: &Alphabet, text: &str) -> Result<Word, Failure> {
    if let Ok(w) = alpha.parse_word(text) {
        return Ok(w);
    }
    let mut spaced = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            spaced.push(' ');
        }
        spaced.push(ch);
    }
    alpha
        .parse_word(&spaced)
        .map_err(|e| fail(2, format!("word `{text}`: {e}")))
}

fn system_of(f: &PresentationFile) -> Result<RewritingSystem, Failure> {
    let rules = f
        .rules
        .iter()
        .map(|r| Rule {
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
        })
        .collect();
    RewritingSystem::new(f.presentation.alphabet().clone(), rules)
        .map_err(|e| fail(2, e.to_string()))
}

fn oracle_for(
    backend: &str,
    f: &PresentationFile,
    caps: Caps,
) -> Result<Box<dyn WordOracle>, Failure> {
    let alpha = f.presentation.alphabet();
    let (kind, arg) = backend.split_once(':').unwrap_or((backend, ""));
    let bad = |m: &str| fail(2, format!("backend `{backend}`: {m}"));
    Ok(match kind {
        "auto" if !f.rules.is_empty() => {
            Box::new(RewritingOracle::new(system_of(f)?, caps.step_cap))
        }
        "auto" if f.presentation.relators().is_empty() => Box::new(FreeOracle::new(alpha.clone())),
        "auto" => {
            return Err(bad(
                "no rules and nonempty relators; pick a backend explicitly",
            ))
        }
        "rewriting" => Box::new(RewritingOracle::new(system_of(f)?, caps.step_cap)),
        "free" => Box::new(FreeOracle::new(alpha.clone())),
        "abelian" => Box::new(FreeAbelianOracle::new(alpha.clone())),
        "dihedral" => {
            let order: usize = arg.parse().map_err(|_| bad("expected dihedral:ORDER"))?;
            if alpha.len() != 2 {
                return Err(fail(3, "dihedral backend needs exactly two generators"));
            }
            let names = [alpha.name(0), alpha.name(1)];
            Box::new(dihedral_group_with(order, names).map_err(|e| bad(&e.to_string()))?)
        }
        "bs" => {
            let (m, n) = arg.split_once(',').ok_or_else(|| bad("expected bs:M,N"))?;
            let m: u64 = m.parse().map_err(|_| bad("M is not an integer"))?;
            let n: u64 = n.parse().map_err(|_| bad("N is not an integer"))?;
            Box::new(bs_oracle(m, n).map_err(|e| bad(&e.to_string()))?)
        }
        _ => return Err(bad("unknown backend")),
    })
}

fn ball_failure(e: BallError) -> Failure {
    match e {
        BallError::OracleMismatch { .. } | BallError::AlphabetMismatch => fail(3, e.to_string()),
        _ => fail(1, e.to_string()),
    }
}

/// Runs `f`, turning a panic from a rewriting oracle that ran out of steps
/// into a resource-limit failure.
fn guarded<T>(f: impl FnOnce() -> Result<T, Failure>) -> Result<T, Failure> {
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let out = panic::catch_unwind(AssertUnwindSafe(f));
    panic::set_hook(hook);
    match out {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "oracle aborted".into());
            Err(fail(4, msg))
        }
    }
}

fn emit(
    json_path: &Option<PathBuf>,
    command: &str,
    caps: Caps,
    payload: Value,
    code: u8,
) -> Result<(), Failure> {
    let Some(path) = json_path else { return Ok(()) };
    let report = json!({
        "command": command,
        "caps": caps,
        "exit": code,
        "payload": payload,
    });
    let text = serde_json::to_string_pretty(&report).expect("json values serialize");
    fs::write(path, text + "\n").map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_ball(
    file: &Path,
    backend: &str,
    radius: usize,
    sphere: bool,
    list_pi1: bool,
    kill_radius: Option<usize>,
    json_path: &Option<PathBuf>,
    caps: Caps,
) -> Result<u8, Failure> {
    let f = load_presentation(file)?;
    let oracle = oracle_for(backend, &f, caps)?;
    let p = &f.presentation;
    let alpha = p.alphabet();
    guarded(|| {
        let ball = if sphere {
            build_sphere(oracle.as_ref(), p, radius, &Word::empty())
        } else {
            build_ball(oracle.as_ref(), p, radius, &Word::empty())
        }
        .map_err(ball_failure)?;
        let gens = pi1_generators(&ball).map_err(ball_failure)?;
        let (v, e, c) = ball.counts();
        let mut line = format!("V={v} E={e} C={c} pi1={}", gens.rank());
        let mut payload = ball.to_json();
        payload["backend"] = json!(oracle.describe());
        payload["pi1_generators"] = json!(gens
            .generators
            .iter()
            .map(|w| alpha.format(w))
            .collect::<Vec<_>>());
        if let Some(r_max) = kill_radius {
            let k = pi1_kill_radius(oracle.as_ref(), p, radius, r_max, caps.search())
                .map_err(ball_failure)?;
            match k {
                KillRadius::Found(r) => line.push_str(&format!(" kill_radius={r}")),
                KillRadius::Exhausted { r_max } => line.push_str(&format!(" kill_radius=>{r_max}")),
            }
            payload["kill_radius"] = json!(k);
        }
        println!("{line}");
        if list_pi1 {
            for g in &gens.generators {
                println!("  {}", alpha.format(g));
            }
        }
        emit(json_path, "ball", caps, payload, 0)?;
        Ok(0)
    })
}

fn rewrite_failure(e: RewriteError) -> Failure {
    match e {
        RewriteError::LimitExceeded { .. } | RewriteError::CombinatorialExplosion { .. } => {
            fail(4, e.to_string())
        }
        RewriteError::MissingRelator(_) => fail(3, e.to_string()),
        _ => fail(1, e.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_rewrite(
    file: &Path,
    word: Option<&str>,
    strategy: &str,
    confluence: bool,
    probe_len: usize,
    ball_witness: Option<usize>,
    json_path: &Option<PathBuf>,
    caps: Caps,
) -> Result<u8, Failure> {
    let f = load_presentation(file)?;
    let rs = system_of(&f)?;
    let alpha = rs.alphabet().clone();
    let strategy = match strategy {
        "innermost" => Strategy::LeftmostInnermost,
        "outermost" => Strategy::LeftmostOutermost,
        other => return Err(fail(2, format!("unknown strategy `{other}`"))),
    };
    let mut payload = json!({});
    let mut code = 0;
    if let Some(text) = word {
        let w = parse_word(&alpha, text)?;
        let (nf, trace) = match rs.reduce(&w, strategy, caps.step_cap) {
            Ok(r) => r,
            Err(e) => {
                let failure = rewrite_failure(e);
                emit(
                    json_path,
                    "rewrite",
                    caps,
                    json!({ "error": failure.message }),
                    failure.code,
                )?;
                return Err(failure);
            }
        };
        println!("{}", alpha.compact(&nf));
        for s in &trace.steps {
            println!(
                "  {} -> {}  (rule {} at {})",
                alpha.compact(&s.before),
                alpha.compact(&s.after),
                s.rule,
                s.pos
            );
        }
        payload["word"] = json!(alpha.format(&w));
        payload["normal_form"] = json!(alpha.format(&nf));
        payload["trace"] = trace.to_json(&alpha);
    }
    if confluence {
        let verdict = certify_local_confluence(&rs, caps.step_cap, probe_len);
        println!("{}", verdict.label());
        let detail = match &verdict {
            ConfluenceVerdict::Certified {
                pairs,
                probe_len,
                probe_words,
                geodesic,
            } => {
                json!({"pairs": pairs, "probe_len": probe_len, "probe_words": probe_words, "geodesic": geodesic})
            }
            ConfluenceVerdict::Counterexample { peak, left, right } => {
                code = code.max(1);
                println!(
                    "  {} => {} | {}",
                    alpha.format(peak),
                    alpha.format(left),
                    alpha.format(right)
                );
                json!({"peak": alpha.format(peak), "left": alpha.format(left), "right": alpha.format(right)})
            }
            ConfluenceVerdict::Inconclusive { reason } => {
                code = code.max(4);
                println!("  {reason}");
                json!({ "reason": reason })
            }
        };
        payload["confluence"] = json!({"verdict": verdict.label(), "detail": detail});
    }
    if let Some(r) = ball_witness {
        match ball_null_homotopy_witness(&rs, &f.presentation, r, WORD_CAP, caps.step_cap) {
            Ok(BallWitness::Certified {
                radius,
                words_checked,
                traces,
            }) => {
                println!(
                    "ball witness: B({radius}) simply connected, {words_checked} words, {} traces",
                    traces.len()
                );
                let monotone = traces.iter().all(|(_, t)| t.is_length_monotone());
                payload["ball_witness"] = json!({
                    "radius": radius,
                    "words_checked": words_checked,
                    "traces": traces.len(),
                    "length_monotone": monotone,
                });
            }
            Ok(BallWitness::Failure(w)) => {
                code = code.max(1);
                println!("ball witness failed at {}", alpha.format(&w));
                payload["ball_witness"] = json!({ "failure": alpha.format(&w) });
            }
            Err(e) => {
                let failure = rewrite_failure(e);
                emit(
                    json_path,
                    "rewrite",
                    caps,
                    json!({ "error": failure.message }),
                    failure.code,
                )?;
                return Err(failure);
            }
        }
    }
    emit(json_path, "rewrite", caps, payload, code)?;
    Ok(code)
}

fn cmd_verify(max_n: usize, json_path: &Option<PathBuf>, caps: Caps) -> Result<u8, Failure> {
    let run = run_full_verification(max_n);
    let s = &run.summary;
    println!("reports={} equal={} failed={}", s.total, s.equal, s.failed);
    println!(
        "strongest level: free={} klein={} dihedral={}",
        s.strongest_free, s.strongest_klein, s.strongest_dihedral
    );
    for line in &run.log {
        println!("note: {line}");
    }
    let code = if run.all_equal() { 0 } else { 1 };
    emit(
        json_path,
        "grigorchuk verify",
        caps,
        serde_json::to_value(&run).expect("serializable"),
        code,
    )?;
    Ok(code)
}

fn cmd_show(variant: &str, family: &str, n: usize) -> Result<u8, Failure> {
    let v: Variant = variant.parse().map_err(|e: String| fail(2, e))?;
    let fam: Family = family.parse().map_err(|e: String| fail(2, e))?;
    println!("{}", family_text(v, fam, n));
    Ok(0)
}

fn load_endomorphic(path: &Path) -> Result<gpq::endo::EndomorphicPresentation, Failure> {
    match parse_document(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))? {
        Document::Endomorphic(ep) => Ok(ep),
        Document::Plain(_) => Err(fail(
            2,
            format!("{}: expected an `endo` presentation", path.display()),
        )),
    }
}

fn cmd_hnn(file: &Path, json_path: &Option<PathBuf>, caps: Caps) -> Result<u8, Failure> {
    let ep = load_endomorphic(file)?;
    print!("{}", hnn_text(&ep));
    let p = hnn_presentation(&ep);
    let a = p.alphabet();
    let payload = json!({
        "generators": a.names(),
        "relators": p.relators().iter().map(|r| a.format(r)).collect::<Vec<_>>(),
    });
    emit(json_path, "hnn", caps, payload, 0)?;
    Ok(0)
}

fn cmd_expand(
    file: &Path,
    depth: usize,
    json_path: &Option<PathBuf>,
    caps: Caps,
) -> Result<u8, Failure> {
    let ep = load_endomorphic(file)?;
    let rels = expand_relators(&ep, depth);
    for r in &rels {
        let via = if r.composition.is_empty() {
            String::new()
        } else {
            format!("  [{}]", r.composition.join(" "))
        };
        let mark = if r.redundant {
            "  (freely trivial)"
        } else {
            ""
        };
        println!("{}{via}{mark}", r.text);
    }
    emit(
        json_path,
        "expand",
        caps,
        json!({ "depth": depth, "relators": rels }),
        0,
    )?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Ball {
            file,
            backend,
            radius,
            sphere,
            pi1,
            kill_radius,
            json,
        } => cmd_ball(
            &file,
            &backend,
            radius,
            sphere,
            pi1,
            kill_radius,
            &json,
            caps,
        ),
        Command::Rewrite {
            file,
            word,
            strategy,
            confluence,
            probe_len,
            ball_witness,
            json,
        } => cmd_rewrite(
            &file,
            word.as_deref(),
            &strategy,
            confluence,
            probe_len,
            ball_witness,
            &json,
            caps,
        ),
        Command::Grigorchuk { action } => match action {
            GrigorchukAction::Verify { max_n, json } => cmd_verify(max_n, &json, caps),
            GrigorchukAction::Show { variant, family, n } => cmd_show(&variant, &family, n),
        },
        Command::Hnn { file, json } => cmd_hnn(&file, &json, caps),
        Command::Expand { file, depth, json } => cmd_expand(&file, depth, &json, caps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gpq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
