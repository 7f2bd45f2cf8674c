//! `coinproof` - build and check balance-scale certificates proving one
//! coin's weight among coins of 1..n grams.
//!
//! Exit codes: 0 success/convincing, 1 verified-but-not-convincing, 2
//! usage or format errors, 3 exhaustive resource bound exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coinproof::audience::{self, StructuralVerdict, VerifyReport};
use coinproof::certificate::{Certificate, CoinSet, Outcome, Weighing};
use coinproof::construct::prove;
use coinproof::sequence::{
    a_brute_force, a_closed_form, emit_bfile, ones_indices, overlap_search, OracleError,
};

#[derive(Parser)]
#[command(
    name = "coinproof",
    version,
    about = "Balance-scale certificates proving one coin's weight among coins of 1..n grams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Pattern-match against the sound validation arguments (any n)
    Structural,
    /// Search every consistent weight assignment (small n)
    Exhaustive,
    /// Structural always, exhaustive when n is within the bound
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build a certificate of at most two weighings for n coins
    Prove {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Emit the canonical JSON form instead of text
        #[arg(long)]
        json: bool,
        /// Also run verification and append its report
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Mode::Structural)]
        mode: Mode,
        /// Cap on n for the exhaustive search
        #[arg(long = "max-n", default_value_t = audience::DEFAULT_EXHAUSTIVE_BOUND)]
        max_n: u64,
    },
    /// Check a JSON certificate file the way the audience would
    Verify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long = "max-n", default_value_t = audience::DEFAULT_EXHAUSTIVE_BOUND)]
        max_n: u64,
    },
    /// Print a(n) for a range of coin counts
    Seq {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
        /// One "n a(n)" line per term instead of a single row
        #[arg(long)]
        bfile: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the n up to a limit where one weighing suffices
    Ones {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Prepend 1 for byte-compatibility with the published list
        #[arg(long = "include-one")]
        include_one: bool,
        #[arg(long)]
        json: bool,
    },
    /// Establish a(n) from first principles (exhaustive; small n only)
    Oracle {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long = "max-n", default_value_t = audience::DEFAULT_ENUMERATION_BOUND)]
        max_n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Scan for counts matching two one-weighing shapes at once
    Overlaps {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Prove {
            n,
            json,
            verify,
            mode,
            max_n,
        } => cmd_prove(n, json, verify, mode, max_n),
        Command::Verify {
            path,
            json,
            mode,
            max_n,
        } => cmd_verify(&path, json, mode, max_n),
        Command::Seq {
            from,
            to,
            bfile,
            json,
        } => cmd_seq(from, to, bfile, json),
        Command::Ones {
            limit,
            include_one,
            json,
        } => cmd_ones(limit, include_one, json),
        Command::Oracle { n, max_n, json } => cmd_oracle(n, max_n, json),
        Command::Overlaps { limit, json } => cmd_overlaps(limit, json),
    };
    ExitCode::from(code)
}

fn cmd_prove(n: u64, json: bool, verify: bool, mode: Mode, max_n: u64) -> u8 {
    let cert = match prove(n) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if !verify {
        if json {
            println!("{}", cert.to_json());
        } else {
            print!("{}", certificate_text(&cert));
        }
        return 0;
    }
    let (lines, report, code) = run_verification(&cert, mode, max_n);
    if json {
        let doc = json!({
            "certificate": cert_value(&cert),
            "verification": report,
        });
        println!("{doc}");
    } else {
        print!("{}", certificate_text(&cert));
        for line in lines {
            println!("{line}");
        }
    }
    code
}

fn cmd_verify(path: &std::path::Path, json: bool, mode: Mode, max_n: u64) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return 2;
        }
    };
    let cert = match Certificate::from_json(&text) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let (lines, report, code) = run_verification(&cert, mode, max_n);
    if json {
        let doc = json!({
            "n": cert.n(),
            "claim": { "coin": cert.claim_coin(), "weight": cert.claim_weight() },
            "verification": report,
        });
        println!("{doc}");
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    code
}

fn cmd_seq(from: u64, to: u64, bfile: bool, json: bool) -> u8 {
    if from > to {
        eprintln!("error: need from <= to (got {from} > {to})");
        return 2;
    }
    let values: Vec<u8> = (from..=to).map(a_closed_form).collect();
    if json {
        println!("{}", json!({ "from": from, "to": to, "values": values }));
    } else if bfile {
        print!("{}", emit_bfile(from, to));
    } else {
        let row: Vec<String> = values.iter().map(u8::to_string).collect();
        println!("{}", row.join(" "));
    }
    0
}

fn cmd_ones(limit: u64, include_one: bool, json: bool) -> u8 {
    let mut indices = ones_indices(limit);
    if include_one {
        indices.insert(0, 1);
    }
    if json {
        println!("{}", json!({ "limit": limit, "indices": indices }));
    } else {
        let row: Vec<String> = indices.iter().map(u64::to_string).collect();
        println!("{}", row.join(" "));
    }
    0
}

fn cmd_oracle(n: u64, max_n: u64, json: bool) -> u8 {
    let a = match a_brute_force(n, max_n) {
        Ok(a) => a,
        Err(OracleError::Bound(e)) => {
            eprintln!("error: {e}");
            return 3;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let witness = prove(n).expect("the oracle already built this certificate");
    if json {
        println!(
            "{}",
            json!({ "n": n, "a": a, "witness": cert_value(&witness) })
        );
    } else {
        println!("a({n}) = {a}");
        if witness.weighings().is_empty() {
            println!("witness: none needed");
        } else {
            println!("witness:");
            print!("{}", certificate_text(&witness));
        }
    }
    0
}

fn cmd_overlaps(limit: u64, json: bool) -> u8 {
    let matches = overlap_search(limit);
    if json {
        let entries: Vec<Value> = matches
            .iter()
            .map(|(n, cases)| {
                json!({
                    "n": n,
                    "cases": cases.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", json!({ "limit": limit, "matches": entries }));
    } else if matches.is_empty() {
        println!("no count in [5, {limit}] matches two one-weighing shapes");
    } else {
        for (n, cases) in matches {
            let row: Vec<String> = cases.iter().map(|c| c.to_string()).collect();
            println!("{n}: {}", row.join(", "));
        }
    }
    0
}

/// Runs the requested checks; returns report lines, the JSON report, and the
/// exit code (0 pass, 1 fail, 3 bound exceeded in pure exhaustive mode).
fn run_verification(cert: &Certificate, mode: Mode, max_n: u64) -> (Vec<String>, Value, u8) {
    let mut lines = Vec::new();
    let mut report = serde_json::Map::new();
    let mut failed = false;
    if matches!(mode, Mode::Structural | Mode::Both) {
        let verdict = audience::verify_structural(cert);
        lines.push(format!("structural: {}", verdict.as_str()));
        report.insert("structural".into(), verdict.as_str().into());
        if verdict == StructuralVerdict::Unknown {
            failed = true;
        }
    }
    if matches!(mode, Mode::Exhaustive | Mode::Both) {
        if cert.n() > max_n {
            if mode == Mode::Exhaustive {
                eprintln!("error: n = {} exceeds the exhaustive bound {max_n}", cert.n());
                return (lines, Value::Object(report), 3);
            }
            lines.push(format!(
                "exhaustive: skipped (n = {} exceeds bound {max_n})",
                cert.n()
            ));
            report.insert("exhaustive".into(), "skipped".into());
        } else {
            let r = audience::verify_exhaustive(cert, max_n).expect("bound just checked");
            lines.push(exhaustive_line(&r));
            report.insert("exhaustive".into(), report_value(&r));
            if !r.convincing {
                failed = true;
            }
        }
    }
    (lines, Value::Object(report), u8::from(failed))
}

fn exhaustive_line(r: &VerifyReport) -> String {
    let weights: Vec<String> = r.claimed_coin_weights.iter().map(u64::to_string).collect();
    let mut line = format!(
        "exhaustive: {} ({} consistent assignment{}; claimed coin takes weights {{{}}})",
        if r.convincing { "convincing" } else { "not convincing" },
        r.consistent_count,
        if r.consistent_count == 1 { "" } else { "s" },
        weights.join(",")
    );
    if !r.secondary_determined.is_empty() {
        let pairs: Vec<String> = r
            .secondary_determined
            .iter()
            .map(|(coin, weight)| format!("coin {coin} weighs {weight}"))
            .collect();
        line.push_str(&format!("; also determined: {}", pairs.join(", ")));
    }
    line
}

fn report_value(r: &VerifyReport) -> Value {
    json!({
        "convincing": r.convincing,
        "consistent_count": r.consistent_count,
        "claimed_coin_weights": r.claimed_coin_weights.iter().collect::<Vec<_>>(),
        "secondary_determined": r
            .secondary_determined
            .iter()
            .map(|(coin, weight)| json!({ "coin": coin, "weight": weight }))
            .collect::<Vec<_>>(),
    })
}

fn cert_value(cert: &Certificate) -> Value {
    serde_json::from_str(&cert.to_json()).expect("certificates serialize to valid JSON")
}

fn side_text(cs: &CoinSet) -> String {
    let ids: Vec<String> = cs.ids().iter().map(u64::to_string).collect();
    ids.join("+")
}

/// One line per weighing in scale notation, lighter side on the left of "<".
fn weighing_text(w: &Weighing) -> String {
    match w.outcome() {
        Outcome::Balanced => format!("{} = {}", side_text(w.left()), side_text(w.right())),
        Outcome::LeftLighter => format!("{} < {}", side_text(w.left()), side_text(w.right())),
        Outcome::RightLighter => format!("{} < {}", side_text(w.right()), side_text(w.left())),
    }
}

fn certificate_text(cert: &Certificate) -> String {
    let mut out = format!("coins: {}\n", cert.n());
    for w in cert.weighings() {
        out.push_str(&weighing_text(w));
        out.push('\n');
    }
    out.push_str(&format!(
        "coin {} weighs {}\n",
        cert.claim_coin(),
        cert.claim_weight()
    ));
    out
}
