//! Command-line front end: argument parsing, validation, file formats.

use crate::arith::{gcd, Factorization, FieldParams};
use crate::convolution::{dual_integrals, experiment_csv, exponent_experiment, make_bump, voronoi_with, Channel};
use crate::lfun::{rankin_partial_ratio, rankin_selberg_check, truncation_point, HeckeLSeries, DEFAULT_A};
use crate::quadforms::{characters, class_number, enumerate_class_group};
use crate::zeros::{
    d_statistic, gaps_csv, hypothesis_report, nearest_gaps, pair_correlation, read_zeros_jsonl, scan_zeros_cached,
    sig12, zero_set_from_records, zeros_jsonl, ZeroSet,
};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "hecke",
    version,
    about = "Class groups and Hecke L-functions of imaginary quadratic fields"
)]
pub struct Cli {
    /// Worker threads for zero scanning and convolution sweeps
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Cache directory (default: $HECKE_CACHE, then ./cache)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced forms, class number and group structure as JSON
    Classgroup {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Coefficients lambda(n) (or lambda*(n)) as CSV
    Coeffs {
        #[command(flatten)]
        ch: CharArgs,
        /// Largest n
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Dump the Dirichlet inverse lambda* instead
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// L(s) with error estimate as JSON
    Lvalue {
        #[command(flatten)]
        ch: CharArgs,
        /// Point in the critical strip, e.g. 0.5+14.13i
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// Exponent A of the test function (even, >= 4)
        #[arg(long, default_value_t = DEFAULT_A)]
        a_test: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Zeros on the critical line as JSON lines (resumable through the cache)
    Zeros {
        #[command(flatten)]
        ch: CharArgs,
        #[arg(long, default_value_t = 2.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Nearest-neighbour gaps (CSV) or pair correlation histogram of a zero file
    Gaps {
        /// Zero file written by `zeros`
        #[arg(long)]
        zeros: PathBuf,
        /// Emit the pair correlation histogram with this bin width instead
        #[arg(long)]
        pair_bin: Option<f64>,
        /// Upper end of the pair correlation range
        #[arg(long, default_value_t = 3.0)]
        u_max: f64,
        /// Height used for normalization (default: largest zero)
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Small-gap hypothesis report (JSON to output, table to stderr)
    Report {
        #[arg(long)]
        zeros: PathBuf,
        /// Exponent A of log q in the threshold
        #[arg(long = "A", default_value_t = 0.0)]
        a: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Constant c in the threshold
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Height T (default: largest zero)
        #[arg(long)]
        t: Option<f64>,
        /// Modulus when the zero file is empty
        #[arg(long)]
        q: Option<u64>,
        /// Evaluate the quotient condition with L instead of taking it as automatic
        #[arg(long)]
        check_quotients: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Shifted convolution experiment: CSV rows, JSON summary to stderr
    Conv {
        #[arg(long)]
        q: u64,
        /// Eisenstein channel of the factorization q = v w
        #[arg(long, conflicts_with_all = ["char_index", "synthetic"])]
        v: Option<u64>,
        /// Class group character (genus or cusp channel)
        #[arg(long = "char", conflicts_with = "synthetic")]
        char_index: Option<usize>,
        /// Control with lambda(n) = 1
        #[arg(long)]
        synthetic: bool,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        h: i64,
        /// Comma-separated geometric list of X
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        x: Vec<f64>,
        /// Write the JSON summary here as well
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Both sides of the Voronoi formula as JSON
    Voronoi {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        v: u64,
        #[arg(long, default_value_t = 1)]
        c: u64,
        /// Residue a mod c (default: every a coprime to c)
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        /// Bump scale X
        #[arg(long, default_value_t = 100.0)]
        x: f64,
        /// Dual sum stops once the integrals stay below this relative size
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rankin-Selberg series against its closed form as JSON
    Rankin {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_complex, default_value = "2", allow_hyphen_values = true)]
        s: Complex64,
        /// Number of series terms
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        /// Also report the partial sum over [X, Y] as X,Y
        #[arg(long, value_delimiter = ',')]
        partial: Option<Vec<usize>>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long)]
    pub q: u64,
    /// Character index (0 is trivial)
    #[arg(long = "char", default_value_t = 0)]
    pub char_index: usize,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    /// Output was written but a count deficit remains.
    #[error("{0}")]
    Warning(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Warning(_) => 1,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn compute(e: impl ToString) -> CliError {
    CliError::Compute(e.to_string())
}

/// Parses "re+imi", "re-imi", "re" or "imi".
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {text:?}; expected e.g. 0.5+14.13i");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("HECKE_CACHE").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("cache"))
}

fn emit(out: &OutArg, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| compute(format!("{}: {e}", path.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(compute)?;
            so.flush().map_err(compute)
        }
    }
}

fn params(q: u64) -> Result<FieldParams, CliError> {
    FieldParams::new(q).map_err(usage)
}

fn check_char(q: u64, index: usize) -> Result<(), CliError> {
    let h = class_number(q);
    if index >= h {
        return Err(usage(format!(
            "character index {index} out of range for class number {h}"
        )));
    }
    Ok(())
}

fn check_finite(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("{name} must be finite")))
    }
}

fn read_zero_file(path: &Path, q_flag: Option<u64>, t: Option<f64>) -> Result<ZeroSet, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let records = read_zeros_jsonl(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (q, ch) = match records.first() {
        Some(r) => (r.q, r.char_index),
        None => (q_flag.ok_or_else(|| usage("zero file is empty; pass --q"))?, 0),
    };
    if records.iter().any(|r| r.q != q || r.char_index != ch) {
        return Err(usage("zero file mixes several (q, char) pairs"));
    }
    params(q)?;
    Ok(zero_set_from_records(q, ch, &records, t))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(compute)
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("value serializes");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let pool = pool(cli.jobs)?;
    let cache = cache_dir(&cli.cache_dir);
    pool.install(|| run_command(cli.command, &cache))
}

fn run_command(command: Command, cache: &Path) -> Result<(), CliError> {
    match command {
        Command::Classgroup { q, out } => {
            let p = params(q)?;
            let mut text = enumerate_class_group(&p).to_json();
            text.push('\n');
            emit(&out, &text)
        }
        Command::Coeffs { ch, n, inverse, out } => {
            params(ch.q)?;
            check_char(ch.q, ch.char_index)?;
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let series = series_with_length(ch.q, ch.char_index, n)?;
            let mut text = String::from(if inverse { "n,lambda_star\n" } else { "n,lambda\n" });
            for k in 1..=n {
                let v = if inverse {
                    series.lambda_star(k)
                } else {
                    series.lambda(k)
                };
                text.push_str(&format!("{k},{}\n", clean(v)));
            }
            emit(&out, &text)
        }
        Command::Lvalue { ch, s, a_test, out } => {
            params(ch.q)?;
            check_char(ch.q, ch.char_index)?;
            if !(s.re > 0.0 && s.re < 1.0) {
                return Err(usage(format!("s = {s} must satisfy 0 < Re s < 1")));
            }
            if a_test < 4 || a_test % 2 == 1 {
                return Err(usage("--a-test must be even and at least 4"));
            }
            let series = series_for_a(ch.q, ch.char_index, s, a_test)?;
            let r = series.l_value(s).map_err(compute)?;
            let v = json!({
                "q": ch.q,
                "char_index": ch.char_index,
                "s_re": s.re,
                "s_im": s.im,
                "L_re": r.value.re,
                "L_im": r.value.im,
                "est_error": r.est_error,
                "truncation_N": r.truncation_n,
            });
            emit(&out, &json_line(&v))
        }
        Command::Zeros { ch, t_min, t_max, out } => {
            params(ch.q)?;
            check_char(ch.q, ch.char_index)?;
            check_finite("--t-min", t_min)?;
            check_finite("--t-max", t_max)?;
            if !(t_min >= 2.0 && t_max <= 1000.0) {
                return Err(usage("need 2 <= t-min and t-max <= 1000"));
            }
            if t_max <= t_min {
                return emit(&out, "");
            }
            let series = HeckeLSeries::for_character(ch.q, ch.char_index, t_max.max(2.0)).map_err(compute)?;
            let zs = scan_zeros_cached(&series, t_min, t_max, Some(cache)).map_err(compute)?;
            emit(&out, &zeros_jsonl(&zs))?;
            if zs.deficits.is_empty() {
                Ok(())
            } else {
                let list: Vec<String> = zs
                    .deficits
                    .iter()
                    .map(|d| format!("[{}, {}]: found {} expected {:.2}", d.t_lo, d.t_hi, d.found, d.expected))
                    .collect();
                Err(CliError::Warning(format!(
                    "unresolved zero count deficit on {}",
                    list.join("; ")
                )))
            }
        }
        Command::Gaps {
            zeros,
            pair_bin,
            u_max,
            t,
            out,
        } => {
            let zs = read_zero_file(&zeros, None, t)?;
            match pair_bin {
                Some(bin) => {
                    if !(bin > 0.0) || !(u_max > 0.0) {
                        return Err(usage("--pair-bin and --u-max must be positive"));
                    }
                    let bins = pair_correlation(&zs, bin, u_max).map_err(usage)?;
                    let mut text = String::from("u_lo,u_hi,count,density,pcc\n");
                    for b in bins {
                        text.push_str(&format!(
                            "{},{},{},{},{}\n",
                            sig12(b.u_lo),
                            sig12(b.u_hi),
                            b.count,
                            sig12(b.density),
                            sig12(b.pcc)
                        ));
                    }
                    emit(&out, &text)
                }
                None => {
                    let gaps = nearest_gaps(&zs).map_err(usage)?;
                    emit(&out, &gaps_csv(&gaps))
                }
            }
        }
        Command::Report {
            zeros,
            a,
            alpha,
            c,
            t,
            q,
            check_quotients,
            out,
        } => {
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(usage("--alpha must lie in (0, 1]"));
            }
            check_finite("--A", a)?;
            check_finite("--c", c)?;
            let zs = read_zero_file(&zeros, q, t)?;
            let t = t.unwrap_or(zs.t_max);
            if t < 2.0 {
                return Err(usage("--t must be at least 2"));
            }
            let series = if check_quotients && !zs.is_empty() {
                Some(HeckeLSeries::for_character(zs.q, zs.char_index, t + 1.0).map_err(compute)?)
            } else {
                None
            };
            let report = hypothesis_report(&zs, a, alpha, t, c, series.as_ref()).map_err(compute)?;
            let d = if t <= zs.t_max {
                d_statistic(&zs, alpha, t).ok()
            } else {
                None
            };
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["D_statistic"] = json!(d);
            eprint!("{}", report_table(&report, d));
            emit(&out, &json_line(&v))
        }
        Command::Conv {
            q,
            v,
            char_index,
            synthetic,
            h,
            x,
            summary,
            out,
        } => {
            params(q)?;
            let channel = if synthetic {
                Channel::Synthetic
            } else if let Some(v) = v {
                Channel::Eisenstein(Factorization::new(q, v).map_err(usage)?)
            } else {
                let index = char_index.unwrap_or(0);
                check_char(q, index)?;
                Channel::Hecke { q, index }
            };
            if h == 0 {
                return Err(usage("--h must be nonzero"));
            }
            validate_scales(&x)?;
            let fit = exponent_experiment(&channel, h, &x).map_err(compute)?;
            let sum = json_line(&json!({
                "slope": fit.slope,
                "intercept": fit.intercept,
                "gate": fit.gate,
                "error_floor": fit.error_floor,
            }));
            eprint!("{sum}");
            if let Some(path) = summary {
                fs::write(&path, &sum).map_err(|e| compute(format!("{}: {e}", path.display())))?;
            }
            emit(&out, &experiment_csv(&fit))
        }
        Command::Voronoi {
            q,
            v,
            c,
            a,
            x,
            threshold,
            out,
        } => {
            params(q)?;
            let f = Factorization::new(q, v).map_err(usage)?;
            if !(1..=20).contains(&c) {
                return Err(usage("--c must lie in 1..=20"));
            }
            if let Some(a) = a {
                if gcd(a.unsigned_abs(), c) != 1 {
                    return Err(usage(format!("a = {a} is not coprime to c = {c}")));
                }
            }
            if !(x >= 0.5) || !(threshold > 0.0) {
                return Err(usage("--x must be at least 1/2 and --threshold positive"));
            }
            let g = make_bump(x).map_err(compute)?;
            let dual = dual_integrals(q, c, &g, threshold).map_err(compute)?;
            let residues: Vec<i64> = match a {
                Some(a) => vec![a],
                None => (1..=c as i64).filter(|&a| gcd(a as u64, c) == 1).collect(),
            };
            let checks = residues
                .iter()
                .map(|&a| voronoi_with(&dual, &f, a, &g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(compute)?;
            emit(
                &out,
                &json_line(&serde_json::to_value(&checks).expect("checks serialize")),
            )
        }
        Command::Rankin { q, s, n, partial, out } => {
            let p = params(q)?;
            if s.re <= 1.0 {
                return Err(usage("the series side needs Re s > 1"));
            }
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            if let Some(xy) = &partial {
                if xy.len() != 2 || !(xy[0] >= 1 && xy[0] < xy[1]) {
                    return Err(usage("--partial needs 1 <= X < Y"));
                }
            }
            let chk = rankin_selberg_check(&p, s, n).map_err(compute)?;
            let mut v = json!({
                "q": q,
                "s": [s.re, s.im],
                "n_terms": n,
                "partial": [chk.partial.re, chk.partial.im],
                "tail_estimate": [chk.tail_estimate.re, chk.tail_estimate.im],
                "tail_bound": chk.tail_bound,
                "lhs": [chk.lhs.re, chk.lhs.im],
                "rhs": [chk.rhs.re, chk.rhs.im],
                "within_bound": (chk.partial - chk.rhs).norm() <= chk.tail_bound,
                "alpha": chk.alpha,
                "alpha_hat": chk.alpha_hat,
            });
            if let Some(xy) = partial {
                let (sum, reference, ratio) = rankin_partial_ratio(&p, xy[0], xy[1]).map_err(compute)?;
                v["partial_sum"] = json!({"X": xy[0], "Y": xy[1], "sum": sum, "reference": reference, "ratio": ratio});
            }
            emit(&out, &json_line(&v))
        }
    }
}

fn validate_scales(x: &[f64]) -> Result<(), CliError> {
    if x.len() < 3 {
        return Err(usage("--x needs at least 3 values"));
    }
    if x.iter().any(|&v| !(0.5..=1e6).contains(&v)) {
        return Err(usage("--x values must lie in [1/2, 1e6]"));
    }
    let r = x[1] / x[0];
    if r <= 1.0 || x.windows(2).any(|w| ((w[1] / w[0]) / r - 1.0).abs() > 1e-9) {
        return Err(usage("--x must be an increasing geometric list"));
    }
    Ok(())
}

/// Integers print without a fraction; other values in shortest round-trip form.
fn clean(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        format!("{}", r as i64)
    } else {
        format!("{v}")
    }
}

fn series_with_length(q: u64, index: usize, n: usize) -> Result<HeckeLSeries, CliError> {
    let p = params(q)?;
    let group = enumerate_class_group(&p);
    let psi = &characters(&group)[index];
    HeckeLSeries::new(&p, &group, psi, n, DEFAULT_A).map_err(compute)
}

/// Series with a coefficient cache long enough for a larger test exponent.
fn series_for_a(q: u64, index: usize, s: Complex64, a_test: u32) -> Result<HeckeLSeries, CliError> {
    let p = params(q)?;
    let n = truncation_point(&p, Complex64::new(1.0, s.norm()), a_test) + 1;
    let group = enumerate_class_group(&p);
    let psi = &characters(&group)[index];
    HeckeLSeries::new(&p, &group, psi, n, a_test).map_err(compute)
}

fn report_table(r: &crate::zeros::HypothesisReport, d: Option<usize>) -> String {
    let mut s = String::new();
    let row = |s: &mut String, k: &str, v: String| s.push_str(&format!("{k:<22} {v}\n"));
    row(&mut s, "q / char", format!("{} / {}", r.q, r.char_index));
    row(
        &mut s,
        "A, alpha, c, T",
        format!("{}, {}, {}, {}", r.a, r.alpha, r.c, r.t),
    );
    if let Some(d) = d {
        row(&mut s, "D(alpha, T)", d.to_string());
    }
    row(&mut s, "R selected", r.r_selected.to_string());
    row(&mut s, "threshold", format!("{:.6e}", r.threshold));
    row(&mut s, "verdict", r.verdict.to_string());
    row(&mut s, "implied L(1,chi) bound", format!("{:.6e}", r.implied_bound));
    row(&mut s, "variant count", r.variant_count.to_string());
    row(&mut s, "variant threshold", format!("{:.6e}", r.variant_threshold));
    row(&mut s, "variant verdict", r.variant_verdict.to_string());
    s.push_str(&format!("note: {}\n", r.disclaimer));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5+14.13i").unwrap(), Complex64::new(0.5, 14.13));
        assert_eq!(parse_complex("0.5-3i").unwrap(), Complex64::new(0.5, -3.0));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-14i").unwrap(), Complex64::new(0.0, -14.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert_eq!(parse_complex("0.5+i").unwrap(), Complex64::new(0.5, 1.0));
        assert!(parse_complex("0.5+x").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn integer_coefficients_print_plainly() {
        assert_eq!(clean(-0.999_999_999_999_999_8), "-1");
        assert_eq!(clean(2.0), "2");
        assert_eq!(clean(0.618_033_988_749_895), "0.618033988749895");
    }

    #[test]
    fn scale_lists() {
        assert!(validate_scales(&[1e3, 1e4, 1e5]).is_ok());
        assert!(validate_scales(&[1e3, 1e4]).is_err());
        assert!(validate_scales(&[1e3, 1e4, 2e4]).is_err());
        assert!(validate_scales(&[1e5, 1e6, 1e7]).is_err());
    }
}
