use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use hilbert_mcm::config::{Format, RunConfig};
use hilbert_mcm::error::{Error, Result};
use hilbert_mcm::examples::{self, Example};
use hilbert_mcm::input::{Document, Loaded};
use hilbert_mcm::koszul;
use hilbert_mcm::matfac::{self, CorpusParams, MatrixFactorization};
use hilbert_mcm::poly::Poly;
use hilbert_mcm::presentations::{self, ModulePresentation, RingPresentation};
use hilbert_mcm::series;
use hilbert_mcm::superficial::{self, LinearForm, SuperficialVerdict};
use hilbert_mcm::tor;
use hilbert_mcm::verify::{self, Instance, Verdict, VerifyReport};

/// Hilbert functions, Hilbert coefficients and matrix-factorization
/// invariants of modules over quotients of polynomial rings over F_p.
///
/// Every number is computed on the window n <= --nmax and reported as such.
#[derive(Parser)]
#[command(name = "hmcm", version, after_help = ENV_HELP)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

const ENV_HELP: &str = "Environment: HMCM_PRIME and HMCM_SEED override the default prime and seed; \
command-line flags take precedence over both.\n\
Exit codes: 0 success (including inconclusive verdicts), 1 a check failed or a computation \
could not finish, 2 input or usage error.";

#[derive(Args)]
struct Global {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest degree n computed.
    #[arg(long = "nmax", global = true)]
    n_max: Option<usize>,
    /// Extra degrees required before a series counts as stable.
    #[arg(long, global = true)]
    slack: Option<usize>,
    /// Random draws per generic choice.
    #[arg(long, global = true)]
    tries: Option<usize>,
    /// Largest truncated basis allowed.
    #[arg(long = "memory-cap", global = true)]
    memory_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// JSON input document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in example (see `examples --list`).
    #[arg(long)]
    example: Option<String>,
    /// Module label; `A` is the ring itself. Examples provide M, K, E and omega.
    #[arg(long)]
    module: Option<String>,
    /// Matrix-factorization label; selects its cokernel.
    #[arg(long)]
    mf: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function H(M, n).
    Hf {
        #[command(flatten)]
        src: Source,
        /// Use the ideal_I-adic filtration instead of the maximal ideal.
        #[arg(long)]
        ideal_adic: bool,
    },
    /// h-polynomial, dimension, e_i and chi_i.
    Coeffs {
        #[command(flatten)]
        src: Source,
    },
    /// Superficiality of a seeded generic linear form and depth of G(M).
    Superficial {
        #[command(flatten)]
        src: Source,
    },
    /// Matrix factorizations.
    Mf {
        #[command(subcommand)]
        action: MfAction,
    },
    /// Tor_1 lengths against A/m^(n+1) and l_M(z).
    Tor {
        #[command(flatten)]
        src: Source,
        /// Label of the first syzygy when --module is used.
        #[arg(long)]
        syzygy: Option<String>,
    },
    /// Truncated Koszul complexes of the ring.
    Koszul {
        #[command(subcommand)]
        action: KoszulAction,
    },
    /// Run named checks.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        example: Option<String>,
        /// Comma-separated check ids (default: every applicable check).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Run checks over a seeded random corpus of adjugate factorizations.
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Built-in examples.
    Examples {
        /// List names and descriptions.
        #[arg(long)]
        list: bool,
        /// Recompute the expected invariants of one example, or `all`.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Args, Clone)]
struct CorpusArgs {
    #[arg(long, default_value_t = 8)]
    count: usize,
    /// Matrix shapes, e.g. 2x2 or 2x2,3x3.
    #[arg(long, value_delimiter = ',', default_value = "2x2,3x3")]
    shape: Vec<String>,
    /// Numbers of variables, e.g. 2 or 2,3.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    vars: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    min_order: u32,
    #[arg(long, default_value_t = 2)]
    max_order: u32,
}

#[derive(Subcommand)]
enum MfAction {
    /// Validate phi*psi = psi*phi = f*I.
    Check {
        #[command(flatten)]
        src: Source,
    },
    /// i(M), order of det phi, mu(M), type and the leading-form test.
    Invariants {
        #[command(flatten)]
        src: Source,
    },
    /// The factorization (psi^T, phi^T) presenting the dual module.
    Dual {
        #[command(flatten)]
        src: Source,
    },
    /// Normal form over k[y]/(y^e).
    Dvr {
        #[command(flatten)]
        src: Source,
    },
    /// Generate a seeded corpus and print its invariants.
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Subcommand)]
enum KoszulAction {
    /// w(y, n) with homology lengths.
    W {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Difference identity for r seeded forms.
    Identity {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// H(A/(y), n) for independent generic r-tuples.
    Invariance {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

/// Result of one command before rendering.
struct Output {
    command: &'static str,
    target: String,
    result: Value,
    failed: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    target: &'a str,
    config: &'a RunConfig,
    window: String,
    result: &'a Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(failed) => ExitCode::from(u8::from(failed)),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn read_doc(path: &PathBuf) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    Document::from_json(&text)
}

fn doc_path(cmd: &Command) -> Option<&PathBuf> {
    let src = match cmd {
        Command::Hf { src, .. }
        | Command::Coeffs { src }
        | Command::Superficial { src }
        | Command::Tor { src, .. } => src,
        Command::Mf { action } => match action {
            MfAction::Check { src } | MfAction::Invariants { src } | MfAction::Dual { src } | MfAction::Dvr { src } => src,
            MfAction::Corpus { .. } => return None,
        },
        Command::Koszul { action } => match action {
            KoszulAction::W { src, .. } | KoszulAction::Identity { src, .. } | KoszulAction::Invariance { src, .. } => src,
        },
        Command::Verify { input, .. } => return input.as_ref(),
        Command::Corpus { .. } | Command::Examples { .. } => return None,
    };
    src.input.as_ref()
}

/// Defaults, then the document prime, then the environment, then flags.
fn build_config(g: &Global, doc: Option<&Document>) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(p) = doc.and_then(|d| d.prime) {
        cfg.prime = p;
    }
    cfg.apply_env(|k| std::env::var(k).ok().filter(|v| !v.is_empty()))?;
    if let Some(p) = g.prime {
        cfg.prime = p;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(n) = g.n_max {
        cfg.n_max = n;
    }
    if let Some(s) = g.slack {
        cfg.slack = s;
    }
    if let Some(t) = g.tries {
        cfg.tries = t;
    }
    if let Some(c) = g.memory_cap {
        cfg.memory_cap = c;
    }
    cfg.format = match g.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool> {
    let doc = doc_path(&cli.cmd).map(read_doc).transpose()?;
    let cfg = build_config(&cli.global, doc.as_ref())?;
    let loaded = doc.map(|d| d.load(Some(cfg.field()))).transpose()?;
    let ctx = Env { cfg: &cfg, loaded: loaded.as_ref() };
    let out = match &cli.cmd {
        Command::Hf { src, ideal_adic } => ctx.hf(src, *ideal_adic)?,
        Command::Coeffs { src } => ctx.coeffs(src)?,
        Command::Superficial { src } => ctx.superficial(src)?,
        Command::Mf { action } => ctx.mf(action)?,
        Command::Tor { src, syzygy } => ctx.tor(src, syzygy.as_deref())?,
        Command::Koszul { action } => ctx.koszul(action)?,
        Command::Verify { example, checks, .. } => ctx.verify(example.as_deref(), checks.as_deref())?,
        Command::Corpus { corpus, checks } => ctx.corpus(corpus, checks.as_deref())?,
        Command::Examples { list, check } => ctx.examples(*list, check.as_deref())?,
    };
    emit(&cfg, &out);
    Ok(out.failed)
}

fn emit(cfg: &RunConfig, out: &Output) {
    use std::fmt::Write as _;
    use std::io::Write as _;
    let window = format!("n = 0..={} (values beyond n_max are not claimed)", cfg.n_max);
    let mut text = String::new();
    match cfg.format {
        Format::Json => {
            let r = Report {
                command: out.command,
                target: &out.target,
                config: cfg,
                window,
                result: &out.result,
            };
            text = serde_json::to_string_pretty(&r).expect("report serializes");
            text.push('\n');
        }
        Format::Table => {
            let _ = writeln!(text, "# {} {}", out.command, out.target);
            let _ = writeln!(
                text,
                "# prime {} seed {} nmax {} slack {} tries {}; {window}",
                cfg.prime, cfg.seed, cfg.n_max, cfg.slack, cfg.tries
            );
            table(&mut text, &out.result, "");
        }
    }
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(",")
        }
        other => other.to_string(),
    }
}

fn table(out: &mut String, v: &Value, indent: &str) {
    use std::fmt::Write as _;
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{indent}{k}:");
                        table(out, x, &format!("{indent}  "));
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                        let _ = writeln!(out, "{indent}{k}:");
                        for e in a {
                            table(out, e, &format!("{indent}  "));
                            let _ = writeln!(out, "{indent}  --");
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{indent}{k:width$}  {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{indent}{}", scalar(other));
        }
    }
}

struct Env<'a> {
    cfg: &'a RunConfig,
    loaded: Option<&'a Loaded>,
}

/// A resolved target: a module, the factorization it came from, and the
/// syzygy when known.
struct Target {
    label: String,
    module: ModulePresentation,
    syzygy: Option<ModulePresentation>,
    mf: Option<MatrixFactorization>,
    ideal_i: Option<Vec<Poly>>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

impl<'a> Env<'a> {
    fn cap(&self) -> usize {
        self.cfg.memory_cap
    }

    fn example(&self, name: &str) -> Result<Example> {
        examples::load(name, self.cfg)
    }

    fn resolve(&self, src: &Source) -> Result<Target> {
        match (&src.input, &src.example) {
            (Some(_), Some(_)) => Err(Error::Input("give either --input or --example, not both".into())),
            (None, None) => Err(Error::Input("no input: use --input FILE or --example NAME".into())),
            (Some(_), None) => self.resolve_doc(src, self.loaded.expect("loaded with --input")),
            (None, Some(name)) => self.resolve_example(src, &self.example(name)?),
        }
    }

    fn resolve_doc(&self, src: &Source, l: &Loaded) -> Result<Target> {
        if let Some(name) = &src.mf {
            let mf = l.mf(name)?;
            return self.from_mf(name, mf, l.ideal_i.clone());
        }
        let name = src.module.as_deref().unwrap_or("A");
        let module = match l.module(name) {
            Ok(m) => m.clone(),
            Err(_) if name == "A" => l.ring.as_module(),
            Err(e) => return Err(e),
        };
        let syzygy = l
            .syzygies
            .iter()
            .find(|(m, _)| m == name)
            .map(|(_, k)| l.module(k).cloned())
            .transpose()?;
        Ok(Target {
            label: name.to_string(),
            module,
            syzygy,
            mf: None,
            ideal_i: l.ideal_i.clone(),
        })
    }

    fn from_mf(&self, name: &str, mf: &MatrixFactorization, ideal_i: Option<Vec<Poly>>) -> Result<Target> {
        let inst = Instance::from_mf(name, mf)?;
        Ok(Target {
            label: name.to_string(),
            module: inst.module.expect("from_mf sets the module"),
            syzygy: inst.syzygy,
            mf: inst.mf,
            ideal_i,
        })
    }

    fn resolve_example(&self, src: &Source, ex: &Example) -> Result<Target> {
        let inst = &ex.instance;
        let name = src.module.as_deref().or(src.mf.as_deref().map(|_| "M")).unwrap_or("A");
        let module = match name {
            "A" => Some(inst.ring.as_module()),
            "M" => inst.module.clone().or(inst.sequence.as_ref().map(|s| s.0.clone())),
            "K" => inst.syzygy.clone(),
            "E" => inst.sequence.as_ref().map(|s| s.1.clone()),
            "omega" => inst.omega.as_ref().map(|o| o.omega.clone()),
            _ => None,
        }
        .ok_or_else(|| Error::Input(format!("example '{}' has no module '{name}'", ex.name)))?;
        Ok(Target {
            label: format!("{}:{name}", ex.name),
            module,
            syzygy: if name == "M" { inst.syzygy.clone() } else { None },
            mf: if name == "M" { inst.mf.clone() } else { None },
            ideal_i: inst.ideal_i.clone(),
        })
    }

    fn ring_of(&self, src: &Source) -> Result<(String, RingPresentation)> {
        let t = self.resolve(src)?;
        Ok((t.label, t.module.ring))
    }

    fn hf(&self, src: &Source, ideal_adic: bool) -> Result<Output> {
        let t = self.resolve(src)?;
        let (values, filtration) = if ideal_adic {
            let gens = t
                .ideal_i
                .as_ref()
                .ok_or_else(|| Error::Input("--ideal-adic needs ideal_I in the input".into()))?;
            (presentations::hilbert_function_ideal(&t.module, gens, self.cfg.n_max, self.cap())?, "I-adic")
        } else {
            (presentations::hilbert_function(&t.module, self.cfg.n_max, self.cap())?, "m-adic")
        };
        let mut m = Map::new();
        m.insert("filtration".into(), json!(filtration));
        m.insert("hilbert".into(), json!(values));
        Ok(Output {
            command: "hf",
            target: t.label,
            result: Value::Object(m),
            failed: false,
        })
    }

    fn coeffs(&self, src: &Source) -> Result<Output> {
        let t = self.resolve(src)?;
        let s = series::module_series(&t.module, self.cfg.n_max, self.cfg.slack, self.cap())?;
        let i_max = s.h.coeffs.len().max(3);
        let result = json!({
            "hilbert": s.hilbert.values,
            "h": s.h.coeffs,
            "r": s.h.dim_r,
            "mu": s.mu,
            "e": s.e(i_max),
            "chi": s.chi(i_max)?,
            "postulation": s.h.postulation,
        });
        Ok(Output {
            command: "coeffs",
            target: t.label,
            result,
            failed: false,
        })
    }

    fn superficial(&self, src: &Source) -> Result<Output> {
        let t = self.resolve(src)?;
        let m = &t.module;
        let mut attempts = Vec::new();
        let mut chosen = None;
        for k in 0..self.cfg.tries {
            let x = LinearForm::seeded(m.nvars(), m.field(), self.cfg.seed, k as u64);
            let rep = superficial::superficial_report(m, &x, self.cfg.n_max, self.cfg.slack, self.cap())?;
            let ok = rep.verdict == SuperficialVerdict::Superficial;
            attempts.push(rep);
            if ok {
                chosen = Some(k);
                break;
            }
        }
        let depth = superficial::depth_g_estimate(m, self.cfg.tries, self.cfg.n_max, self.cfg.slack, self.cfg.seed, self.cap())?;
        let result = json!({
            "chosen_attempt": chosen,
            "report": attempts.last().map(to_value),
            "attempts": attempts.len(),
            "depth_G": depth,
        });
        Ok(Output {
            command: "superficial",
            target: t.label,
            result,
            failed: false,
        })
    }

    fn mf_of(&self, src: &Source) -> Result<(String, MatrixFactorization)> {
        if let (Some(l), Some(name)) = (self.loaded, &src.mf) {
            return Ok((name.clone(), l.mf(name)?.clone()));
        }
        if let Some(l) = self.loaded {
            if let [(name, mf)] = &l.mfs[..] {
                return Ok((name.clone(), mf.clone()));
            }
            return Err(Error::Input("the document has several factorizations; pick one with --mf".into()));
        }
        let t = self.resolve(src)?;
        let mf = t
            .mf
            .ok_or_else(|| Error::Input(format!("'{}' has no matrix factorization", t.label)))?;
        Ok((t.label, mf))
    }

    fn mf(&self, action: &MfAction) -> Result<Output> {
        let (command, target, result) = match action {
            MfAction::Check { src } => {
                let (name, mf) = self.mf_of(src)?;
                let r = json!({
                    "valid": true,
                    "f": mf.f.to_string_with(&mf.vars),
                    "e": mf.e,
                    "size": mf.size(),
                    "warnings": mf.warnings,
                });
                ("mf check", name, r)
            }
            MfAction::Invariants { src } => {
                let (name, mf) = self.mf_of(src)?;
                let inv = mf.invariants()?;
                let lead = mf.leading_form_det_test()?;
                let ty = matfac::cm_type(&mf, self.cfg.seed, self.cfg.tries, self.cfg.n_max, self.cfg.slack, self.cap())?;
                let r = json!({
                    "invariants": inv,
                    "leading_form": lead,
                    "type": ty.cm_type,
                    "type_reduced_length": ty.reduced_length,
                    "free": inv.i_m == inv.e,
                });
                ("mf invariants", name, r)
            }
            MfAction::Dual { src } => {
                let (name, mf) = self.mf_of(src)?;
                let d = mf.dual();
                let r = json!({"phi": d.phi_strings(), "psi": d.psi_strings()});
                ("mf dual", name, r)
            }
            MfAction::Dvr { src } => {
                let t = self.resolve(src)?;
                let m = if src.module.is_none() && src.mf.is_none() && src.example.is_some() {
                    self.resolve(&Source { module: Some("M".into()), ..src.clone() })?.module
                } else {
                    t.module
                };
                let d = matfac::dvr_normal_form(&m, self.cfg.slack, self.cap())?;
                ("mf dvr", t.label, to_value(&d))
            }
            MfAction::Corpus { corpus } => {
                let p = corpus_params(corpus)?;
                let rows = matfac::generate_corpus(&p, self.cfg.field(), self.cfg.seed)?
                    .into_iter()
                    .map(|(name, mf)| {
                        let inv = mf.invariants()?;
                        Ok(json!({
                            "label": name,
                            "phi": mf.phi_strings(),
                            "e": mf.e,
                            "i_M": inv.i_m,
                            "mu": inv.mu,
                            "det_order": inv.det_order,
                        }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ("mf corpus", format!("{} factorizations", p.count), json!({"params": p, "corpus": rows}))
            }
        };
        Ok(Output {
            command,
            target,
            result,
            failed: false,
        })
    }

    fn tor(&self, src: &Source, syzygy: Option<&str>) -> Result<Output> {
        let mut t = self.resolve(src)?;
        if let (Some(k), Some(l)) = (syzygy, self.loaded) {
            t.syzygy = Some(l.module(k)?.clone());
        }
        let k = t
            .syzygy
            .as_ref()
            .ok_or_else(|| Error::Input(format!("'{}' has no syzygy; pass --syzygy or --mf", t.label)))?;
        let s = tor::l_polynomial(&t.module, k, self.cfg.n_max, self.cfg.slack, self.cap())?;
        Ok(Output {
            command: "tor",
            target: t.label,
            failed: !s.identity_holds,
            result: to_value(&s),
        })
    }

    fn forms(&self, a: &RingPresentation, r: usize) -> Vec<LinearForm> {
        (0..r)
            .map(|j| LinearForm::seeded(a.nvars(), a.field, self.cfg.seed, 500 + j as u64))
            .collect()
    }

    fn koszul(&self, action: &KoszulAction) -> Result<Output> {
        let (command, target, result, failed) = match action {
            KoszulAction::W { src, r } => {
                let (label, a) = self.ring_of(src)?;
                let w = koszul::koszul_w(&a, &self.forms(&a, *r), self.cfg.n_max, self.cfg.slack, self.cap())?;
                let bad = !w.complexes_ok || !w.euler_ok;
                ("koszul w", label, to_value(&w), bad)
            }
            KoszulAction::Identity { src, r } => {
                let (label, a) = self.ring_of(src)?;
                let rep = koszul::difference_identity_check(&a, &self.forms(&a, *r), self.cfg.n_max, self.cfg.slack, self.cap())?;
                ("koszul identity", label, to_value(&rep), !rep.holds)
            }
            KoszulAction::Invariance { src, r, samples } => {
                let (label, a) = self.ring_of(src)?;
                let rep = koszul::generic_invariance_sample(
                    &a,
                    *r,
                    *samples,
                    self.cfg.seed,
                    self.cfg.n_max,
                    self.cfg.tries,
                    self.cfg.slack,
                    self.cap(),
                )?;
                ("koszul invariance", label, to_value(&rep), false)
            }
        };
        Ok(Output {
            command,
            target,
            result,
            failed,
        })
    }

    fn verify_output(&self, target: String, rep: VerifyReport) -> Output {
        let failed = rep.any_fails();
        let rows: Vec<Value> = rep
            .checks
            .iter()
            .map(|c| {
                json!({
                    "check_id": c.check_id,
                    "instance": c.instance,
                    "verdict": c.verdict,
                    "witness": c.witness,
                })
            })
            .collect();
        let result = match self.cfg.format {
            Format::Json => json!({"summary": rep.summary, "checks": rows}),
            Format::Table => {
                let lines: Vec<Value> = rep
                    .checks
                    .iter()
                    .map(|c| {
                        let mut m = Map::new();
                        m.insert("check".into(), json!(c.check_id));
                        m.insert("instance".into(), json!(c.instance));
                        m.insert("verdict".into(), to_value(&c.verdict));
                        if c.verdict != Verdict::Holds {
                            for k in ["hypotheses", "error", "reason"] {
                                if let Some(v) = c.witness.get(k) {
                                    m.insert(k.into(), v.clone());
                                }
                            }
                        }
                        Value::Object(m)
                    })
                    .collect();
                json!({"summary": rep.summary, "checks": lines})
            }
        };
        Output {
            command: "verify",
            target,
            result,
            failed,
        }
    }

    fn verify(&self, example: Option<&str>, checks: Option<&[String]>) -> Result<Output> {
        let (target, instances) = match (self.loaded, example) {
            (Some(_), Some(_)) => return Err(Error::Input("give either --input or --example, not both".into())),
            (Some(l), None) => (l.label.clone(), l.instances()?),
            (None, Some(name)) => (name.to_string(), vec![self.example(name)?.instance]),
            (None, None) => (
                "all built-in examples".to_string(),
                examples::load_all(self.cfg)?.into_iter().map(|e| e.instance).collect(),
            ),
        };
        let rep = verify::run_checks(checks, &instances, self.cfg)?;
        Ok(self.verify_output(target, rep))
    }

    fn corpus(&self, args: &CorpusArgs, checks: Option<&[String]>) -> Result<Output> {
        let p = corpus_params(args)?;
        let rep = verify::corpus_run(self.cfg, &p, checks)?;
        let mut out = self.verify_output(format!("{} factorizations", p.count), rep);
        out.command = "corpus";
        if let Value::Object(m) = &mut out.result {
            m.insert("params".into(), to_value(&p));
        }
        Ok(out)
    }

    fn examples(&self, list: bool, check: Option<&str>) -> Result<Output> {
        if let (false, Some(name)) = (list, check) {
            let names: Vec<String> = if name == "all" {
                examples::BUILTINS.iter().map(|(n, _)| n.to_string()).collect()
            } else {
                vec![name.to_string()]
            };
            let mut rows = Vec::new();
            let mut failed = false;
            for n in names {
                let ex = self.example(&n)?;
                for g in ex.check_golden(self.cfg)? {
                    failed |= !g.matches;
                    rows.push(json!({
                        "example": n,
                        "key": g.key,
                        "expected": g.expected,
                        "actual": g.actual,
                        "origin": g.origin,
                        "matches": g.matches,
                    }));
                }
            }
            return Ok(Output {
                command: "examples check",
                target: name.to_string(),
                result: json!({ "golden": rows }),
                failed,
            });
        }
        let mut m = Map::new();
        for (n, d) in examples::BUILTINS {
            m.insert(n.to_string(), json!(d));
        }
        Ok(Output {
            command: "examples",
            target: "built-in library".into(),
            result: Value::Object(m),
            failed: false,
        })
    }
}

fn corpus_params(a: &CorpusArgs) -> Result<CorpusParams> {
    let sizes = a
        .shape
        .iter()
        .map(|s| match s.split_once('x') {
            Some((r, c)) if r == c => r
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Input(format!("bad shape '{s}'"))),
            _ => Err(Error::Input(format!("shape '{s}' must look like 2x2"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if a.vars.iter().any(|&v| v == 0 || v > 8) {
        return Err(Error::Input("--vars must lie in 1..=8".into()));
    }
    Ok(CorpusParams {
        count: a.count,
        nvars: a.vars.clone(),
        sizes,
        min_order: a.min_order,
        max_order: a.max_order,
        ..CorpusParams::default()
    })
}
