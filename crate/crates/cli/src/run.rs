use std::fmt;
use std::fs;
use std::io::Read;
use std::os::unix::process::{CommandExt, ExitStatusExt};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitStatus, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use acyclic_cnf::checkers::Checker;
use acyclic_cnf::cnf::{parse_dimacs, parse_solver_output, Assignment, SolverAnswer};
use acyclic_cnf::engine::{verify_model, VerificationReport};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::pool::parallel_map;
use crate::suite::{encoding_path, family_of, instance_path, list_cnfs, load_instance, EncodingMeta};

pub const RUN_SCHEMA: &str = "acyc-run-v1";
const INPUT_PLACEHOLDERS: [&str; 2] = ["{input}", "{}"];
const OUTPUT_PLACEHOLDER: &str = "{output}";
const EXCERPT_LEN: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
    Memout,
    Error,
}

impl Status {
    pub fn is_solved(self) -> bool {
        matches!(self, Status::Sat | Status::Unsat)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Timeout => "TIMEOUT",
            Status::Memout => "MEMOUT",
            Status::Error => "ERROR",
        })
    }
}

/// How to invoke one solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverSpec {
    pub label: String,
    pub template: String,
    pub timeout: Duration,
    /// Address-space limit in bytes.
    pub memlimit: Option<u64>,
}

impl SolverSpec {
    /// `template` must contain exactly one `{input}` (or `{}`) placeholder.
    pub fn new(label: Option<String>, template: &str, timeout_secs: f64, memlimit_mb: u64) -> Result<Self> {
        let inputs: usize = INPUT_PLACEHOLDERS.iter().map(|p| template.matches(p).count()).sum();
        if inputs != 1 {
            bail!("solver command must contain exactly one input placeholder `{{input}}`, found {inputs}: {template}");
        }
        if template.matches(OUTPUT_PLACEHOLDER).count() > 1 {
            bail!("solver command has more than one `{{output}}` placeholder: {template}");
        }
        if !(timeout_secs.is_finite() && timeout_secs > 0.0) {
            bail!("timeout must be a positive number of seconds, got {timeout_secs}");
        }
        let label = match label {
            Some(l) => l,
            None => {
                let first = template.split_whitespace().next().unwrap_or("solver");
                Path::new(first).file_name().and_then(|s| s.to_str()).unwrap_or(first).to_string()
            }
        };
        Ok(SolverSpec {
            label,
            template: template.to_string(),
            timeout: Duration::from_secs_f64(timeout_secs),
            memlimit: (memlimit_mb > 0).then(|| memlimit_mb.saturating_mul(1 << 20)),
        })
    }

    pub fn command_line(&self, input: &Path, output: &Path) -> String {
        let mut line = self.template.replace(OUTPUT_PLACEHOLDER, &shell_quote(output));
        for p in INPUT_PLACEHOLDERS {
            line = line.replace(p, &shell_quote(input));
        }
        line
    }

    pub fn writes_output_file(&self) -> bool {
        self.template.contains(OUTPUT_PLACEHOLDER)
    }
}

fn shell_quote(p: &Path) -> String {
    format!("'{}'", p.display().to_string().replace('\'', r"'\''"))
}

/// What happened to one solver process.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub seconds: f64,
    pub answer: SolverAnswer,
    /// Start of the output, for failed runs.
    pub excerpt: String,
}

fn excerpt(text: &str) -> String {
    let flat: String = text.split_whitespace().collect::<Vec<_>>().join(" ");
    flat.chars().take(EXCERPT_LEN).collect()
}

fn looks_like_memout(exit: Option<ExitStatus>, text: &str) -> bool {
    let lower = text.to_lowercase();
    let says = ["out of memory", "memory allocation", "bad_alloc", "cannot allocate", "memory limit"]
        .iter()
        .any(|k| lower.contains(k));
    says || exit.and_then(|e| e.signal()).is_some_and(|s| s == libc::SIGKILL)
}

fn spawn_reader<R: Read + Send + 'static>(mut r: R) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = r.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    })
}

/// Run the solver on `input` in its own process group under the spec's
/// limits. `scratch` is the file substituted for `{output}`.
pub fn run_solver(spec: &SolverSpec, input: &Path, scratch: &Path) -> Result<Outcome> {
    let line = spec.command_line(input, scratch);
    let mut cmd = Command::new("sh");
    cmd.arg("-c").arg(&line).stdin(Stdio::null()).stdout(Stdio::piped()).stderr(Stdio::piped()).process_group(0);
    if let Some(bytes) = spec.memlimit {
        let lim = libc::rlimit { rlim_cur: bytes as libc::rlim_t, rlim_max: bytes as libc::rlim_t };
        // SAFETY: setrlimit is async-signal-safe and touches no parent state.
        unsafe {
            cmd.pre_exec(move || {
                if libc::setrlimit(libc::RLIMIT_AS, &lim) != 0 {
                    return Err(std::io::Error::last_os_error());
                }
                Ok(())
            });
        }
    }
    let start = Instant::now();
    let mut child = cmd.spawn().with_context(|| format!("starting `{line}`"))?;
    let pgid = child.id() as libc::pid_t;
    let out = spawn_reader(child.stdout.take().expect("piped"));
    let err = spawn_reader(child.stderr.take().expect("piped"));
    let mut pause = Duration::from_millis(1);
    let exit = loop {
        if let Some(st) = child.try_wait()? {
            break Some(st);
        }
        if start.elapsed() >= spec.timeout {
            break None;
        }
        thread::sleep(pause.min(spec.timeout.saturating_sub(start.elapsed())));
        pause = (pause * 2).min(Duration::from_millis(20));
    };
    let seconds = start.elapsed().as_secs_f64();
    // SAFETY: plain syscall; the group may already be gone.
    unsafe {
        libc::kill(-pgid, libc::SIGKILL);
    }
    if exit.is_none() {
        child.wait()?;
    }
    let stdout = out.join().unwrap_or_default();
    let stderr = err.join().unwrap_or_default();
    let mut text = stdout;
    if spec.writes_output_file() {
        if let Ok(file) = fs::read_to_string(scratch) {
            text.push('\n');
            text.push_str(&file);
        }
        let _ = fs::remove_file(scratch);
    }
    let Some(exit) = exit else {
        return Ok(Outcome {
            status: Status::Timeout,
            seconds,
            answer: SolverAnswer::Unknown("timeout".into()),
            excerpt: String::new(),
        });
    };
    let answer = parse_solver_output(&text);
    let status = match &answer {
        SolverAnswer::Sat(_) => Status::Sat,
        SolverAnswer::Unsat => Status::Unsat,
        SolverAnswer::Unknown(_) => {
            let all = format!("{text}\n{stderr}");
            if looks_like_memout(Some(exit), &all) {
                Status::Memout
            } else {
                Status::Error
            }
        }
    };
    let excerpt = match status {
        Status::Error | Status::Memout => excerpt(&format!("exit {exit}; {stderr} {text}")),
        _ => String::new(),
    };
    Ok(Outcome { status, seconds, answer, excerpt })
}

/// One line of the results CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: String,
    pub instance: String,
    pub family: String,
    pub n: usize,
    pub p: Option<f64>,
    pub seed: Option<u64>,
    pub checker: String,
    pub solver: String,
    pub status: Status,
    pub seconds: f64,
    pub size: u64,
    pub vars: u32,
    pub clauses: usize,
    /// Present exactly for SAT answers.
    pub verified: Option<bool>,
    pub note: String,
}

pub const RUN_FIELDS: [&str; 15] = [
    "schema", "instance", "family", "n", "p", "seed", "checker", "solver", "status", "seconds", "size", "vars",
    "clauses", "verified", "note",
];

/// Records of a suite run, plus the diagnostic of the verification failure
/// that stopped it, if any.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub records: Vec<RunRecord>,
    pub failure: Option<String>,
}

/// Check a solver's model against an instance file and its metadata.
pub fn verify_answer(cnf: &Path, instance: &Path, a: &Assignment) -> Result<VerificationReport> {
    let meta = load_instance(instance)?;
    let family = family_of(&meta)?;
    let text = fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let file = parse_dimacs(&text).with_context(|| format!("parsing {}", cnf.display()))?;
    let edges = file.varmap.edges().ok_or_else(|| anyhow!("{} has no `c edge` lines", cnf.display()))?;
    if edges.n() != family.n() {
        bail!("{} has {} vertices but {} says {}", cnf.display(), edges.n(), instance.display(), family.n());
    }
    match verify_model(&family, &file.formula, edges, a) {
        Ok(r) => Ok(r),
        Err(e) => Ok(VerificationReport {
            checks: vec![acyclic_cnf::engine::Check { name: "model", passed: false, detail: e.to_string() }],
        }),
    }
}

struct Job {
    id: String,
    checker: Checker,
    cnf: PathBuf,
}

/// Run `spec` on every instance of `suite` (optionally only `checkers`).
/// A SAT answer whose model fails verification stops the run: jobs not yet
/// started are skipped and the diagnostic is returned with the records.
pub fn cmd_run(suite: &Path, spec: &SolverSpec, jobs: usize, checkers: Option<&[Checker]>) -> Result<RunOutcome> {
    let all = list_cnfs(suite)?;
    let work: Vec<Job> = all
        .into_iter()
        .filter(|(_, c, _)| checkers.is_none_or(|cs| cs.contains(c)))
        .map(|(id, checker, cnf)| Job { id, checker, cnf })
        .collect();
    let scratch = std::env::temp_dir().join(format!("acyc-run-{}", std::process::id()));
    fs::create_dir_all(&scratch)?;
    let stop = AtomicBool::new(false);
    let results = parallel_map(&work, jobs, |job| -> Result<Option<(RunRecord, Option<String>)>> {
        if stop.load(Ordering::SeqCst) {
            return Ok(None);
        }
        let r = run_job(suite, spec, job, &scratch);
        if matches!(&r, Ok((_, Some(_))) | Err(_)) {
            stop.store(true, Ordering::SeqCst);
        }
        r.map(Some)
    });
    let _ = fs::remove_dir_all(&scratch);
    let mut records = Vec::new();
    let mut failure = None;
    for r in results {
        if let Some((rec, fail)) = r? {
            records.push(rec);
            if failure.is_none() {
                failure = fail;
            }
        }
    }
    records.sort_by(|a, b| (&a.instance, &a.checker, &a.solver).cmp(&(&b.instance, &b.checker, &b.solver)));
    Ok(RunOutcome { records, failure })
}

fn run_job(suite: &Path, spec: &SolverSpec, job: &Job, scratch: &Path) -> Result<(RunRecord, Option<String>)> {
    let meta = load_instance(&instance_path(suite, &job.id))?;
    let enc = EncodingMeta::load(&encoding_path(suite, &job.id, job.checker))?;
    let out_file = scratch.join(format!("{}.{}.out", job.id, job.checker));
    let outcome = run_solver(spec, &job.cnf, &out_file)?;
    let mut failure = None;
    let verified = match &outcome.answer {
        SolverAnswer::Sat(a) if outcome.status == Status::Sat => {
            let report = verify_answer(&job.cnf, &instance_path(suite, &job.id), a)?;
            if !report.passed() {
                failure = Some(format!("model from {} for {} failed verification:\n{report}", spec.label, job.cnf.display()));
            }
            Some(report.passed())
        }
        _ => None,
    };
    let rec = RunRecord {
        schema: RUN_SCHEMA.into(),
        instance: job.id.clone(),
        family: meta.family.clone(),
        n: meta.n,
        p: meta.p,
        seed: meta.seed,
        checker: job.checker.to_string(),
        solver: spec.label.clone(),
        status: outcome.status,
        seconds: outcome.seconds,
        size: enc.size,
        vars: enc.vars,
        clauses: enc.clauses,
        verified,
        note: outcome.excerpt,
    };
    Ok((rec, failure))
}
