use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sandwich::campaign::{par_map, random_elementary, run_campaign, trial_rng, Target};
use sandwich::congruence::sct_desk_check;
use sandwich::gln::GlContext;
use sandwich::hyperbolic::FormRingContext;
use sandwich::{FormParam, FormParamKind, Group, InvolutionKind, Ring, RingSpec};

#[derive(Parser)]
#[command(name = "sandwich", version, about = "Elementary conjugate decompositions over finite rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose transvections for random elementary sigma, one trace per trial
    Decompose {
        #[command(flatten)]
        g: GroupArgs,
        /// entry, diagdiff, antidiag, oppdiag, value (or a full name such as u-entry)
        #[arg(long)]
        target: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the defining relations; exhaustive when |R|^2 <= --samples
    Relations {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Level extraction and both sandwich inclusions for random sigma
    Sct {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Random elementary matrices
    Gen {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Gl,
    O,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum)]
    group: GroupKind,
    #[arg(long)]
    m: u64,
    /// Monic modulus polynomial, coefficients from the constant term, e.g. 1,0,1
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// trivial, neg, or c-minus:<c>
    #[arg(long, default_value = "trivial")]
    involution: String,
    /// Coefficients of lambda, e.g. -1
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// min, max, or span:<gen>;<gen> with comma-separated coefficients
    #[arg(long, default_value = "max")]
    form: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, value_enum, default_value = "on")]
    strict_guards: Switch,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Length of the random generator word for sigma
    #[arg(long, default_value_t = 20)]
    len: usize,
    #[arg(long)]
    out: Option<String>,
}

fn coeffs(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',').map(|c| c.trim().parse::<i64>().with_context(|| format!("bad coefficient {c:?}"))).collect()
}

impl GroupArgs {
    fn build(&self) -> anyhow::Result<Arc<Group>> {
        let (involution, c) = match self.involution.as_str() {
            "trivial" => (InvolutionKind::Trivial, 0),
            "neg" => (InvolutionKind::Neg, 0),
            s => match s.strip_prefix("c-minus:") {
                Some(c) => (InvolutionKind::CMinus, c.parse()?),
                None => bail!("unknown involution {s:?}"),
            },
        };
        let spec = RingSpec {
            m: self.m,
            f: self.f.as_deref().map(coeffs).transpose()?,
            involution,
            c,
            lambda: coeffs(&self.lambda)?,
        };
        let ring = Arc::new(Ring::new(spec)?);
        let strict = matches!(self.strict_guards, Switch::On);
        let group = match self.group {
            GroupKind::Gl => Group::linear(ring, self.n)?,
            GroupKind::O => {
                if !ring.involution_is_trivial() || ring.lambda() != ring.one() {
                    bail!("o needs the trivial involution and lambda = 1");
                }
                let form = FormParam::min(&ring)?;
                Group::unitary(ring, self.n, form)?
            }
            GroupKind::U => {
                let kind = match self.form.as_str() {
                    "min" => FormParamKind::Min,
                    "max" => FormParamKind::Max,
                    s => match s.strip_prefix("span:") {
                        Some(list) => FormParamKind::Span(
                            list.split(';').filter(|g| !g.is_empty()).map(coeffs).collect::<anyhow::Result<_>>()?,
                        ),
                        None => bail!("unknown form parameter {s:?}"),
                    },
                };
                let form = FormParam::new(&ring, kind)?;
                Group::unitary(ring, self.n, form)?
            }
        };
        Ok(Arc::new(group.with_strict_guards(strict)))
    }
}

fn writer(out: &Option<String>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {p}"))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Ok(true) when everything verified.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Decompose { g, target, run } => {
            let group = g.build()?;
            let target = Target::resolve(target_prefix(g.group), &target)?;
            if target.group() != target_prefix(g.group) {
                bail!("target {target} does not belong to --group {}", target_prefix(g.group));
            }
            let records = run_campaign(&group, target, run.seed, run.trials, run.len);
            let mut w = writer(&run.out)?;
            for rec in &records {
                serde_json::to_writer(&mut w, rec)?;
                writeln!(w)?;
            }
            w.flush()?;
            Ok(records.iter().all(|r| r.passed()))
        }
        Cmd::Relations { g, samples, seed, out } => {
            let group = g.build()?;
            let mut rng = trial_rng(seed, 0);
            let report = if group.is_linear() {
                GlContext::from_group(group)?.check_relations(samples, &mut rng)
            } else {
                FormRingContext::from_group(group)?.check_unitary_relations(samples, &mut rng)
            };
            let mut w = writer(&out)?;
            serde_json::to_writer(&mut w, &json!({"seed": seed, "report": report}))?;
            writeln!(w)?;
            w.flush()?;
            Ok(report.all_pass())
        }
        Cmd::Sct { g, run } => {
            let group = g.build()?;
            let ids: Vec<u64> = (0..run.trials).collect();
            let lines = par_map(&ids, |&t| {
                let sigma = random_elementary(&group, &mut trial_rng(run.seed, t), run.len);
                let rep = sct_desk_check(&group, &sigma);
                let ok = rep.as_ref().is_ok_and(|r| r.all_pass());
                let mut v = json!({"seed": run.seed, "trial": t, "sigma": sigma.to_json(group.ring())});
                match rep {
                    Ok(r) => v["report"] = serde_json::to_value(r).expect("serializable"),
                    Err(e) => v["error"] = json!(e.to_string()),
                }
                (v, ok)
            });
            let mut w = writer(&run.out)?;
            for (v, _) in &lines {
                serde_json::to_writer(&mut w, v)?;
                writeln!(w)?;
            }
            w.flush()?;
            Ok(lines.iter().all(|l| l.1))
        }
        Cmd::Gen { g, run } => {
            let group = g.build()?;
            let mut w = writer(&run.out)?;
            for t in 0..run.trials {
                let sigma = random_elementary(&group, &mut trial_rng(run.seed, t), run.len);
                let v = json!({"seed": run.seed, "trial": t, "sigma": sigma.to_json(group.ring())});
                serde_json::to_writer(&mut w, &v)?;
                writeln!(w)?;
            }
            w.flush()?;
            Ok(true)
        }
    }
}

fn target_prefix(g: GroupKind) -> &'static str {
    match g {
        GroupKind::Gl => "gl",
        GroupKind::O => "o",
        GroupKind::U => "u",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
