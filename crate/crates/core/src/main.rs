use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use period_index::arith::is_prime;
use period_index::bounds::{bound_table, compare_bounds, index_bound};
use period_index::complexes::{build_xp, homology_x};
use period_index::graded::GradedAbelianGroup;
use period_index::par::Strategy;
use period_index::verify::{run_suite, Suite};
use period_index::words::enumerate_words;

mod render;

use render::{Style, Table};

/// Period–index bounds and Cartan homology of K(Z/n, 2).
#[derive(Debug, Parser)]
#[command(name = "period-index", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::PrettyTable, global = true)]
    format: Format,

    /// Render Cartan symbols as s, g, f, y instead of σ, γ, φ, ψ.
    #[arg(long, global = true)]
    ascii: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(name = "pretty-table", alias = "table", alias = "pretty")]
    PrettyTable,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index bound for a class of period N on a finite 2D-dimensional complex.
    Bound {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        /// Also compare against the best known bound (d ≤ 4).
        #[arg(long)]
        compare: bool,
    },
    /// Grid of index bounds for 1 ≤ n ≤ N-MAX and 1 ≤ d ≤ D-MAX.
    Table {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        d_max: u64,
    },
    /// Homology of X (for N) or of the factor X_p (for --prime and --exponent).
    Homology {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        n: Option<u64>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        exponent: Option<u32>,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Admissible p-words and auxiliary words σ^{h−1}ψ_{p^r} up to a degree.
    Words {
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value_t = 10)]
        max_degree: u64,
        /// Only words of this height.
        #[arg(long, default_value_t = 2, conflicts_with = "all_heights")]
        height: usize,
        /// Words of every height.
        #[arg(long)]
        all_heights: bool,
    },
    /// Run the oracle cross-check suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["elementary", "xp-exponent", "snf", "all"])]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run cases one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
    },
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style {
        ascii: cli.ascii,
        color: std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal(),
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Bound { n, d, compare } => cmd_bound(&mut out, cli.format, style, n, d, compare),
        Command::Table { n_max, d_max } => cmd_table(&mut out, cli.format, style, n_max, d_max),
        Command::Homology { n, prime, exponent, max_degree } => {
            cmd_homology(&mut out, cli.format, style, n, prime, exponent, max_degree)
        }
        Command::Words { p, r, max_degree, height, all_heights } => {
            let height = (!all_heights).then_some(height);
            cmd_words(&mut out, cli.format, style, p, r, max_degree, height)
        }
        Command::Verify { suite, seed, sequential } => {
            let strategy = if sequential { Strategy::Sequential } else { Strategy::default() };
            match cmd_verify(&mut out, cli.format, &suite, seed, strategy) {
                Ok(true) => Ok(()),
                Ok(false) => return ExitCode::from(1),
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn cmd_bound(out: &mut impl Write, format: Format, style: Style, n: u64, d: u64, compare: bool) -> io::Result<()> {
    let report = index_bound(n, d);
    let comparison = compare.then(|| compare_bounds(n, d));
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    match format {
        Format::Json => match &comparison {
            Some(c) => emit_json(out, c),
            None => emit_json(out, &report),
        },
        Format::Csv => {
            if let Some(c) = &comparison {
                writeln!(out, "n,d,theorem_a,sharp,sharp_source,ratio,sharp_strictly_better")?;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    c.n,
                    c.d,
                    c.theorem_a,
                    opt(c.sharp.as_ref().map(|s| s.value.to_string())),
                    opt(c.sharp.as_ref().map(|s| s.source.to_string())),
                    opt(c.ratio.as_ref().map(|r| r.to_string())),
                    c.sharp_strictly_better
                )
            } else {
                writeln!(out, "n,d,p,r,bound")?;
                for pb in &report.primes {
                    writeln!(out, "{},{},{},{},{}", n, d, pb.p, pb.r, pb.bound)?;
                }
                writeln!(out, "{},{},all,-,{}", n, d, report.theorem_a_bound)
            }
        }
        Format::PrettyTable => {
            writeln!(out, "{}", style.bold(&format!("period n = {n}, dimension 2d = {}", 2 * d)))?;
            let mut t = Table::new(["p", "r", "bound"]);
            for pb in &report.primes {
                t.row([pb.p.to_string(), pb.r.to_string(), pb.bound.to_string()]);
            }
            if !report.primes.is_empty() {
                t.write(out, style)?;
            }
            writeln!(out, "theorem_a bound:  {}", report.theorem_a_bound)?;
            writeln!(
                out,
                "corollary_b:      {}",
                if report.corollary_b_applies { "applies (bound is n^(d-1))" } else { "does not apply" }
            )?;
            match &report.sharp {
                Some(s) => writeln!(out, "known sharp:      {} ({})", s.value, s.source)?,
                None => writeln!(out, "known sharp:      none for d ≥ 5")?,
            }
            if let Some(c) = &comparison {
                writeln!(out, "ratio:            {}", opt(c.ratio.as_ref().map(|r| r.to_string())))?;
                writeln!(out, "sharp is better:  {}", c.sharp_strictly_better)?;
            }
            Ok(())
        }
    }
}

fn cmd_table(out: &mut impl Write, format: Format, style: Style, n_max: u64, d_max: u64) -> io::Result<()> {
    let cells = bound_table(n_max, d_max, Strategy::default());
    match format {
        Format::Json => emit_json(out, &cells),
        Format::Csv => {
            writeln!(out, "n,d,theorem_a")?;
            for c in &cells {
                writeln!(out, "{},{},{}", c.n, c.d, c.bound)?;
            }
            Ok(())
        }
        Format::PrettyTable => {
            let header: Vec<String> =
                std::iter::once("n \\ d".to_string()).chain((1..=d_max).map(|d| d.to_string())).collect();
            let mut t = Table::new(header);
            for row in cells.chunks(d_max as usize) {
                t.row(std::iter::once(row[0].n.to_string()).chain(row.iter().map(|c| c.bound.to_string())));
            }
            t.write(out, style)
        }
    }
}

fn cmd_homology(
    out: &mut impl Write,
    format: Format,
    style: Style,
    n: Option<u64>,
    prime: Option<u64>,
    exponent: Option<u32>,
    max_degree: usize,
) -> io::Result<()> {
    let (group, title, factors): (GradedAbelianGroup, String, Vec<String>) = match (n, prime, exponent) {
        (Some(n), None, None) => {
            let g = homology_x(n, max_degree).unwrap_or_else(|e| usage_error(ErrorKind::ValueValidation, e));
            (g, format!("H_*(X) for n = {n}"), Vec::new())
        }
        (None, Some(p), Some(r)) => {
            let x = build_xp(p, r, max_degree).unwrap_or_else(|e| usage_error(ErrorKind::ValueValidation, e));
            let g = x.homology().unwrap_or_else(|e| usage_error(ErrorKind::ValueValidation, e));
            let labels = x.factors.iter().map(|c| style.symbols(c.label())).collect();
            (g, format!("H_*(X_{p}) for r = {r}"), labels)
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            usage_error(ErrorKind::MissingRequiredArgument, "--prime and --exponent must be given together")
        }
        (None, None, None) => usage_error(
            ErrorKind::MissingRequiredArgument,
            "give either N or both --prime and --exponent",
        ),
        _ => usage_error(ErrorKind::ArgumentConflict, "give either N or --prime/--exponent, not both"),
    };
    match format {
        Format::Json => emit_json(out, &group),
        Format::Csv => {
            writeln!(out, "degree,free,torsion,exponent")?;
            for d in 0..=max_degree {
                let c = group.component(d).expect("within cap");
                let torsion: Vec<String> = c.torsion.iter().map(|o| o.to_string()).collect();
                writeln!(out, "{d},{},{},{}", c.free, torsion.join(";"), c.torsion_exponent())?;
            }
            Ok(())
        }
        Format::PrettyTable => {
            writeln!(out, "{}", style.bold(&title))?;
            for f in &factors {
                writeln!(out, "  factor {f}")?;
            }
            let mut t = Table::new(["degree", "group", "exponent"]);
            for d in 0..=max_degree {
                let c = group.component(d).expect("within cap");
                t.row([d.to_string(), c.to_string(), c.torsion_exponent().to_string()]);
            }
            t.write(out, style)
        }
    }
}

fn cmd_words(
    out: &mut impl Write,
    format: Format,
    style: Style,
    p: u64,
    r: u32,
    max_degree: u64,
    height: Option<usize>,
) -> io::Result<()> {
    if !is_prime(p) {
        usage_error(ErrorKind::ValueValidation, format!("{p} is not prime"));
    }
    let words: Vec<_> = enumerate_words(p, r, max_degree)
        .unwrap_or_else(|e| usage_error(ErrorKind::ValueValidation, e))
        .into_iter()
        .filter(|w| height.is_none_or(|h| w.height == h))
        .collect();
    let render = |w: &period_index::words::Word| if style.ascii { w.to_ascii() } else { w.to_string() };
    let kind = |aux: bool| if aux { "auxiliary" } else { "admissible" };
    match format {
        Format::Json => {
            let rows: Vec<_> = words
                .iter()
                .map(|w| json!({"word": render(&w.word), "degree": w.degree, "height": w.height, "kind": kind(w.auxiliary)}))
                .collect();
            emit_json(out, &rows)
        }
        Format::Csv => {
            writeln!(out, "word,degree,height,kind")?;
            for w in &words {
                writeln!(out, "{},{},{},{}", render(&w.word), w.degree, w.height, kind(w.auxiliary))?;
            }
            Ok(())
        }
        Format::PrettyTable => {
            let mut t = Table::new(["word", "degree", "height", "kind"]);
            for w in &words {
                t.row([render(&w.word), w.degree.to_string(), w.height.to_string(), kind(w.auxiliary).to_string()]);
            }
            t.write(out, style)
        }
    }
}

fn cmd_verify(out: &mut impl Write, format: Format, suite: &str, seed: u64, strategy: Strategy) -> io::Result<bool> {
    let suite: Suite = suite.parse().unwrap_or_else(|e| usage_error(ErrorKind::InvalidValue, e));
    let results = run_suite(suite, seed, strategy);
    let passed = results.iter().filter(|c| c.passed).count();
    let all_passed = passed == results.len();
    match format {
        Format::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|c| json!({"suite": c.suite, "case": c.case, "passed": c.passed, "detail": c.detail}))
                .collect();
            emit_json(out, &json!({"suite": suite.name(), "seed": seed, "passed": all_passed, "checks": rows}))?;
        }
        Format::Csv => {
            writeln!(out, "suite,case,passed")?;
            for c in &results {
                writeln!(out, "{},{},{}", c.suite, c.case.replace(',', ";"), c.passed)?;
            }
        }
        Format::PrettyTable => {
            for c in &results {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "{passed}/{} checks passed", results.len())?;
        }
    }
    Ok(all_passed)
}
