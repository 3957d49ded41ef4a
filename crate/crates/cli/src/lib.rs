//! Command-line surface of the Steiner bundle toolkit: JSON formats for
//! point sets and presentations, one subcommand per library operation, and
//! the seeded census comparing the two unstable-hyperplane oracles.

pub mod census;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use steiner_core::exactalg::Field;
use steiner_core::instability::{
    classify_w_ideal, projected_cubic, scan_w_bundle, splitting_type, torelli_compare, unstable_test_bundle,
    unstable_test_ideal, ScanDomain, TorelliCase, WReportJson,
};
use steiner_core::polygeom::{HomForm, PointConfig};
use steiner_core::steiner::{
    build_curve_twist, build_logarithmic, build_schwarzenberger, is_isomorphic, restrict_to_hyperplane,
    validate_bundle, ValidationStrategy,
};

use census::{default_ideal_side, run_census, write_csv, CensusFailure, CensusOptions, DEFAULT_MAX_RETRIES};
use config::{emit, parse_field, parse_point, read_points, read_presentation, JobConfig};
use error::{CliError, CliResult};

pub const DEFAULT_FIELD: Field = Field::Prime(31);

#[derive(Parser, Debug)]
#[command(name = "steiner", version, about = "Steiner bundle presentations and their unstable hyperplanes")]
struct Cli {
    /// JSON job file supplying defaults for the flags below.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Logarithmic bundle of a point set in the dual plane.
    BuildLog {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Schwarzenberger bundle on P^n with m+1 trivial summands.
    BuildSchw {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Pushforward of O_X(a) for a plane curve X = {f = 0}.
    BuildCurve {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long = "a", alias = "twist")]
        twist: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Restriction to a hyperplane given by dual coordinates.
    Restrict {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Checks that the pencil has full rank everywhere.
    Validate {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Bundle-side test of one hyperplane, optionally against the point set.
    Unstable {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Splitting type on the line through two points.
    Splitting {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        line_a: String,
        #[arg(long)]
        line_b: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Unstable locus from the point set.
    WClassify {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Unstable locus by testing every line (or a sample file of lines).
    WScan {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        exhaustive: bool,
        /// Point configuration file listing the dual points to test.
        #[arg(long)]
        sample: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Isomorphism test of two presentations.
    Iso {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Compares the bundles of two point sets.
    Torelli {
        #[arg(long)]
        za: String,
        #[arg(long)]
        zb: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Implicit cubic of the twisted cubic projected into a plane of P^3.
    ProjectedCubic {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Seeded census of random configurations over a prime field.
    Census {
        #[arg(long)]
        field: Option<String>,
        /// Number of points, or a range `a..b`.
        #[arg(long, default_value = "10")]
        k: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Record wall-clock milliseconds (otherwise 0, for reproducible output).
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
        max_retries: usize,
        /// Where a reproducer is written on disagreement.
        #[arg(long)]
        reproducer: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
}

struct Ctx {
    job: JobConfig,
}

impl Ctx {
    fn field(&self, flag: &Option<String>) -> CliResult<Option<Field>> {
        flag.as_ref().or(self.job.field.as_ref()).map(|s| parse_field(s)).transpose()
    }

    fn field_or_default(&self, flag: &Option<String>) -> CliResult<Field> {
        Ok(self.field(flag)?.unwrap_or(DEFAULT_FIELD))
    }

    fn r(&self, flag: Option<usize>) -> CliResult<usize> {
        flag.or(self.job.r).ok_or_else(|| CliError::Io("missing --r".into()))
    }

    fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.job.seed).unwrap_or(0)
    }

    fn trials(&self, flag: Option<usize>) -> usize {
        flag.or(self.job.trials).unwrap_or(20)
    }

    fn out<'a>(&'a self, flag: &'a Option<String>) -> Option<&'a str> {
        flag.as_deref().or(self.job.out.as_deref())
    }

    fn points(&self, flag: &Option<String>, field: Option<Field>) -> CliResult<PointConfig> {
        match (flag, &self.job.points) {
            (Some(path), _) => read_points(path, field),
            (None, Some(inline)) => inline.to_config(field),
            (None, None) => Err(CliError::Io("missing --points".into())),
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

/// Output text and exit code of a successful run.
struct Done {
    text: Option<String>,
    code: i32,
}

fn ok(text: Option<String>) -> CliResult<Done> {
    Ok(Done { text, code: 0 })
}

fn strategy_from(name: &str, samples: usize, seed: u64) -> CliResult<ValidationStrategy> {
    match name {
        "exhaustive-fp" | "exhaustive" => Ok(ValidationStrategy::ExhaustiveFp),
        "sampled" => Ok(ValidationStrategy::Sampled { samples, seed }),
        "minors" => Ok(ValidationStrategy::Minors),
        other => Err(CliError::Io(format!("unknown strategy {other:?}"))),
    }
}

fn parse_k(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Io(format!("bad --k {text:?}"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..").or_else(|| text.split_once('-')) {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let k = parse(text)?;
            Ok((k, k))
        }
    }
}

fn execute(cmd: Command, ctx: &Ctx, stderr: &mut dyn Write) -> CliResult<Done> {
    match cmd {
        Command::BuildLog { field, r, points, out } => {
            let z = ctx.points(&points, ctx.field(&field)?)?;
            let p = build_logarithmic(&z, ctx.r(r)?)?;
            ok(emit(ctx.out(&out), &p.to_json())?)
        }
        Command::BuildSchw { field, n, m, out } => {
            let n = n.or(ctx.job.n).unwrap_or(2);
            let p = build_schwarzenberger(ctx.field_or_default(&field)?, n, m)?;
            ok(emit(ctx.out(&out), &p.to_json())?)
        }
        Command::BuildCurve { field, form, twist, out } => {
            let field = ctx.field_or_default(&field)?;
            let text = form.or(ctx.job.form.clone()).ok_or_else(|| CliError::Io("missing --form".into()))?;
            let a = twist.or(ctx.job.twist).ok_or_else(|| CliError::Io("missing --a".into()))?;
            let f = HomForm::parse(field, 3, &text)?;
            ok(emit(ctx.out(&out), &build_curve_twist(&f, a)?.to_json())?)
        }
        Command::Restrict { presentation, hyperplane, out } => {
            let p = read_presentation(&presentation)?;
            let h = parse_point(p.field(), &hyperplane)?;
            ok(emit(ctx.out(&out), &restrict_to_hyperplane(&p, &h)?.to_json())?)
        }
        Command::Validate { presentation, strategy, samples, seed, out } => {
            let p = read_presentation(&presentation)?;
            let name = strategy.or(ctx.job.strategy.clone()).unwrap_or_else(|| "exhaustive-fp".into());
            let rep = validate_bundle(&p, strategy_from(&name, samples, ctx.seed(seed))?)?;
            let code = if rep.valid { 0 } else { 2 };
            Ok(Done {
                text: emit(ctx.out(&out), &pretty(&rep))?,
                code,
            })
        }
        Command::Unstable { presentation, hyperplane, points, r, out } => {
            let p = read_presentation(&presentation)?;
            let h = parse_point(p.field(), &hyperplane)?;
            let t = unstable_test_bundle(&p, &h, None)?;
            let ideal = match points.is_some() || ctx.job.points.is_some() {
                true => {
                    let z = ctx.points(&points, Some(p.field()))?;
                    Some(unstable_test_ideal(&z, ctx.r(r)?, &h)?)
                }
                false => None,
            };
            let agree = ideal.map(|i| i == t.unstable);
            let body = json!({
                "hyperplane": h.to_strings(),
                "unstable": t.unstable,
                "kernel_dim": t.kernel_dim,
                "sheaf_mode": t.sheaf_mode,
                "ideal_unstable": ideal,
                "agree": agree,
            });
            Ok(Done {
                text: emit(ctx.out(&out), &pretty(&body))?,
                code: if agree == Some(false) { 2 } else { 0 },
            })
        }
        Command::Splitting { presentation, line_a, line_b, out } => {
            let p = read_presentation(&presentation)?;
            let a = parse_point(p.field(), &line_a)?;
            let b = parse_point(p.field(), &line_b)?;
            let st = splitting_type(&p, &a, &b)?;
            let body = json!({
                "degrees": st.degrees,
                "zeros": st.zeros(),
                "balanced": st.is_balanced(),
                "c1": p.m(),
            });
            ok(emit(ctx.out(&out), &pretty(&body))?)
        }
        Command::WClassify { field, points, r, out } => {
            let z = ctx.points(&points, ctx.field(&field)?)?;
            ok(emit(ctx.out(&out), &classify_w_ideal(&z, ctx.r(r)?)?.to_json())?)
        }
        Command::WScan { presentation, exhaustive, sample, out } => {
            let p = read_presentation(&presentation)?;
            let domain = match (exhaustive || ctx.job.exhaustive == Some(true), sample) {
                (_, Some(path)) => ScanDomain::Points(read_points(&path, Some(p.field()))?.points().to_vec()),
                (true, None) => ScanDomain::Exhaustive,
                (false, None) => return Err(CliError::Io("w-scan needs --exhaustive or --sample".into())),
            };
            let validity = match domain {
                ScanDomain::Exhaustive => Some(validate_bundle(&p, ValidationStrategy::ExhaustiveFp)?),
                ScanDomain::Points(_) => None,
            };
            let scan = scan_w_bundle(&p, &domain, validity.as_ref())?;
            #[derive(Serialize)]
            struct ScanJson {
                #[serde(flatten)]
                report: WReportJson,
                domain_size: usize,
                unstable_count: usize,
            }
            let body = ScanJson {
                report: scan.report.to_json_value(),
                domain_size: scan.domain_size,
                unstable_count: scan.found.len(),
            };
            Ok(Done {
                text: emit(ctx.out(&out), &pretty(&body))?,
                code: if scan.report.checks_pass() { 0 } else { 2 },
            })
        }
        Command::Iso { presentation, other, trials, seed, out } => {
            let p1 = read_presentation(&presentation)?;
            let p2 = read_presentation(&other)?;
            let outcome = is_isomorphic(&p1, &p2, ctx.trials(trials), ctx.seed(seed))?;
            let mut body = serde_json::to_value(&outcome)?;
            body["witness"] = match &outcome.witness {
                Some(w) => json!({ "a": w.a.to_string_rows(), "b": w.b.to_string_rows() }),
                None => serde_json::Value::Null,
            };
            ok(emit(ctx.out(&out), &pretty(&body))?)
        }
        Command::Torelli { za, zb, field, r, trials, seed, out } => {
            let field = ctx.field(&field)?;
            let a = read_points(&za, field)?;
            let b = read_points(&zb, field.or(Some(a.field())))?;
            let rep = torelli_compare(&a, &b, ctx.r(r)?, ctx.trials(trials), ctx.seed(seed))?;
            Ok(Done {
                text: emit(ctx.out(&out), &pretty(&rep))?,
                code: if rep.case == TorelliCase::Violation { 2 } else { 0 },
            })
        }
        Command::ProjectedCubic { field, hyperplane, out } => {
            let field = ctx.field_or_default(&field)?;
            let h = parse_point(field, &hyperplane)?;
            let f = projected_cubic(&h)?;
            let body = json!({
                "field": field.to_string(),
                "hyperplane": h.to_strings(),
                "equation": f.to_string(),
                "coefficients": f.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            ok(emit(ctx.out(&out), &pretty(&body))?)
        }
        Command::Census { field, k, r, count, seed, workers, timing, max_retries, reproducer, out } => {
            let (k_min, k_max) = parse_k(&k)?;
            let opts = CensusOptions {
                field: ctx.field_or_default(&field)?,
                k_min,
                k_max,
                r: ctx.r(r)?,
                count,
                seed: ctx.seed(seed),
                workers: workers.or(ctx.job.workers).unwrap_or(0),
                timing,
                max_retries,
            };
            run_census_command(&opts, ctx.out(&out), reproducer.as_deref(), stderr)
        }
    }
}

fn run_census_command(
    opts: &CensusOptions,
    out: Option<&str>,
    reproducer: Option<&str>,
    stderr: &mut dyn Write,
) -> CliResult<Done> {
    let run = run_census(opts, &default_ideal_side)?;
    let mut buf = Vec::new();
    write_csv(&run.records, opts.r, &mut buf)?;
    let text = emit(out, &String::from_utf8(buf).expect("utf-8 CSV"))?;
    match run.failure {
        None => ok(text),
        Some(CensusFailure::Infeasible(msg)) => {
            writeln!(stderr, "infeasible sampling: {msg}")?;
            Ok(Done { text, code: 1 })
        }
        Some(CensusFailure::Disagreement(rep)) => {
            let body = pretty(&rep);
            match reproducer {
                Some(path) => {
                    emit(Some(path), &body)?;
                    writeln!(stderr, "oracle disagreement in configuration {}; reproducer written to {path}", rep.id)?;
                }
                None => writeln!(stderr, "oracle disagreement; reproducer:\n{body}")?,
            }
            Ok(Done { text, code: 2 })
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `stdout` and diagnostics to `stderr`; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let job = match cli.config.as_deref().map(JobConfig::load).transpose() {
        Ok(j) => j.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let ctx = Ctx { job };
    match execute(cli.command, &ctx, stderr) {
        Ok(done) => {
            if let Some(text) = done.text {
                if let Err(e) = stdout.write_all(text.as_bytes()) {
                    let _ = writeln!(stderr, "error: {e}");
                    return 3;
                }
            }
            done.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
