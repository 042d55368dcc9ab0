//! Command-line front end. Each subcommand is a thin adapter over the library.
//!
//! Numbers are written `p/q`, `sqrt:p/q` or `fracsqrt:s` (fractional part of
//! `sqrt(s)`). Index lists accept comma-separated items, each an integer `k`,
//! a range `a..b`, a power `2^e` or a power range `2^a..2^b`.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dependency::{dep_radius_m, dep_radius_n};
use crate::difference::total_diff_h;
use crate::digits::{flip_bits, freq_f_n, prefix_bits};
use crate::error::{Error, Result};
use crate::experiments::{dyadic_grid_upto, run_experiment, NumberSpec, Request, RunOptions};

const NUMBER_HELP: &str = "number: p/q, sqrt:p/q, or fracsqrt:s";

#[derive(Debug, Parser)]
#[command(name = "tu-lab", version, about = "Exact binary-digit calculus for omega and omega^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first bits of a number and their frequency of ones
    Expand {
        #[arg(help = NUMBER_HELP)]
        number: String,
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        json: bool,
    },
    /// Certified dependency radius: --r k for omega -> omega^2, --n k for nu -> sqrt(nu)
    Deps {
        #[arg(help = NUMBER_HELP)]
        number: String,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        search_limit: Option<usize>,
    },
    /// Total-difference decomposition of h_n between nu and nu with bits flipped
    Decompose {
        #[arg(help = NUMBER_HELP)]
        nu: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        flips: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        scan_limit: Option<usize>,
    },
    /// Sweep dh_n/du_r over r and n
    Converge {
        #[arg(help = NUMBER_HELP)]
        nu: String,
        #[arg(long = "r")]
        r_values: String,
        #[arg(long = "n")]
        n_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Drift of f_n between sqrt(eta) and sqrt(eta with bits flipped)
    Proposition {
        #[arg(help = NUMBER_HELP)]
        eta: String,
        #[arg(long, default_value = "")]
        flips: String,
        #[arg(long = "n")]
        n_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Frequency of ones in frac(sqrt(s)); a single --n means the dyadic grid up to n
    Normality {
        s_values: String,
        #[arg(long = "n")]
        n_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_item(item: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad list item `{item}`"));
    let atom = |s: &str| -> Result<(usize, bool)> {
        match s.trim().strip_prefix("2^") {
            Some(e) => {
                let e: u32 = e.parse().map_err(|_| bad())?;
                1usize.checked_shl(e).map(|v| (v, true)).ok_or_else(bad)
            }
            None => s.trim().parse().map(|v| (v, false)).map_err(|_| bad()),
        }
    };
    match item.split_once("..") {
        None => Ok(vec![atom(item)?.0]),
        Some((a, b)) => {
            let ((lo, lp), (hi, hp)) = (atom(a)?, atom(b)?);
            if lo > hi {
                return Err(bad());
            }
            if lp && hp {
                Ok((lo.trailing_zeros()..=hi.trailing_zeros())
                    .map(|e| 1usize << e)
                    .collect())
            } else {
                Ok((lo..=hi).collect())
            }
        }
    }
}

/// Parses an index list such as `1..8`, `2,5,9` or `2^2..2^12`.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in text.split(',') {
        out.extend(parse_item(item)?);
    }
    Ok(out)
}

fn number(s: &str) -> Result<NumberSpec> {
    s.parse()
}

fn run_request(request: Request, out: Option<PathBuf>, json: bool) -> Result<String> {
    let mut opts = RunOptions::from_env();
    opts.out_dir = Some(out.unwrap_or_else(|| PathBuf::from("tu-lab-out").join(request.kind())));
    let res = run_experiment(&request, &opts)?;
    if json {
        return Ok(res.results_json);
    }
    let mut text = String::new();
    for p in [&res.csv_path, &res.json_path, &res.manifest_path] {
        text.push_str(&format!("wrote {}\n", p.display()));
    }
    if res.manifest.cache_hit {
        text.push_str("cache hit\n");
    }
    text.push_str(&res.summary);
    text.push('\n');
    Ok(text)
}

/// Runs one command and returns what it prints on success.
pub fn execute(command: Command) -> Result<String> {
    match command {
        Command::Expand { number: x, bits, json } => {
            let x = number(&x)?.to_real()?;
            let p = prefix_bits(&x, bits)?;
            let f = freq_f_n(&p)?;
            if json {
                let v = serde_json::json!({ "bits": p.to_string(), "n": bits, "f_n": f });
                return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
            }
            Ok(format!("{p}  f_{bits} = {f}\n"))
        }
        Command::Deps {
            number: x,
            r,
            n,
            search_limit,
        } => {
            let x = number(&x)?.to_real()?;
            let res = match (r, n) {
                (Some(r), _) => dep_radius_n(&x, r, search_limit)?,
                (None, Some(n)) => dep_radius_m(&x, n, search_limit)?,
                (None, None) => return Err(Error::InvalidArgument("need --r or --n".into())),
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&res)?))
        }
        Command::Decompose {
            nu,
            flips,
            n,
            scan_limit,
        } => {
            let nu = number(&nu)?.to_real()?;
            let pert = flip_bits(&nu, &parse_index_list(&flips)?)?;
            let report = total_diff_h(&nu, &pert, n, scan_limit)?;
            Ok(format!("{}\n", serde_json::to_string_pretty(&report)?))
        }
        Command::Converge {
            nu,
            r_values,
            n_grid,
            out,
            json,
        } => {
            let request = Request::Sweep {
                nu: number(&nu)?,
                r_values: parse_index_list(&r_values)?,
                n_grid: parse_index_list(&n_grid)?,
                out_dir: None,
            };
            run_request(request, out, json)
        }
        Command::Proposition {
            eta,
            flips,
            n_grid,
            out,
            json,
        } => {
            let request = Request::Proposition {
                eta: number(&eta)?,
                flips: parse_index_list(&flips)?,
                n_grid: parse_index_list(&n_grid)?,
                out_dir: None,
            };
            run_request(request, out, json)
        }
        Command::Normality {
            s_values,
            n_grid,
            out,
            json,
        } => {
            let s_values = parse_index_list(&s_values)?
                .into_iter()
                .map(|s| s as u64)
                .collect();
            let mut grid = parse_index_list(&n_grid)?;
            if let [n] = grid[..] {
                grid = dyadic_grid_upto(n);
            }
            let request = Request::Normality {
                s_values,
                n_grid: grid,
                out_dir: None,
            };
            run_request(request, out, json)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
