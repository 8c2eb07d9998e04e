use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vbraid::gpv::{distinguish_cached, jpower_membership_cached, parse_combination, universal_gpv_cached, vp_variable_names};
use vbraid::quotients::{abelianization, gamma2_mod_gamma3};
use vbraid::suites::{run_suite, Suite};
use vbraid::{
    build_presentation, chi, epsilon, h_decompose, membership, mu, nu, omega, parse_alphabet_word, parse_word,
    rewrite, vb2_normal_form, Alphabet, Family, Target,
};

#[derive(Parser)]
#[command(name = "vbraid", version, about = "Computations in virtual braid groups")]
struct Cli {
    /// Directory for cached GPV ideal bases
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Mu,
    Nu,
    Chi,
    Eps,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    H,
    Vp,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Vb,
    Vp,
    H,
    M,
    S,
}

impl GroupArg {
    fn family(self) -> Family {
        match self {
            GroupArg::Vb => Family::VB,
            GroupArg::Vp => Family::VP,
            GroupArg::H => Family::H,
            GroupArg::M => Family::M,
            GroupArg::S => Family::S,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Omega,
    H,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum SuiteArg {
    Telescoping,
    Equivariance,
    Lemma5,
    Relations,
    FormulaRanks,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Image of a word under mu, nu, chi, or of an x-word under eps
    Project {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Membership in H, VP and EP
    Member {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Reidemeister-Schreier rewriting of a kernel word
    Rewrite {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Semidirect splitting: omega into VP x| S, or the H x| S variant
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "omega")]
        split: SplitArg,
        word: String,
    },
    /// Normal form in VB_2
    Nf2 { word: String },
    /// Print a presentation
    Presentation {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
    },
    /// Abelianization of a presentation
    Abelianize {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
    },
    /// Lower central section Gamma_depth / Gamma_(depth+1)
    Lcs {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        depth: u8,
    },
    /// Universal degree-d GPV coordinates
    Gpv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        word: String,
    },
    /// Least GPV degree separating two words
    Distinguish {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        first: String,
        second: String,
    },
    /// Membership of a formal combination in J^d
    Jmember {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        combination: String,
    },
    /// Run property suites and print tallies
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Domain(vbraid::Error),
    Property,
}

impl From<vbraid::Error> for Failure {
    fn from(e: vbraid::Error) -> Self {
        Failure::Domain(e)
    }
}

fn or_one(s: String) -> String {
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

fn run(cli: Cli) -> Result<Vec<String>, Failure> {
    let cache = cli.cache.as_deref();
    let mut out = Vec::new();
    match cli.command {
        Command::Project { map, n, word } => {
            let line = match map {
                MapArg::Mu => mu(&parse_word(&word, n)?).to_string(),
                MapArg::Nu => nu(&parse_word(&word, n)?).to_string(),
                MapArg::Chi => chi(&parse_word(&word, n)?).to_string(),
                MapArg::Eps => epsilon(&parse_alphabet_word(&word, n, Alphabet::X)?)?.to_string(),
            };
            out.push(line);
        }
        Command::Member { n, word } => {
            let m = membership(&parse_word(&word, n)?);
            out.push(format!("in_H: {}", m.in_h));
            out.push(format!("in_VP: {}", m.in_vp));
            out.push(format!("in_EP: {}", m.in_ep));
        }
        Command::Rewrite { target, n, word } => {
            let target = match target {
                TargetArg::H => Target::H,
                TargetArg::Vp => Target::VP,
            };
            let w = rewrite(&parse_word(&word, n)?, target)?;
            out.push(format!("rewrite: {}", or_one(w.to_string())));
        }
        Command::Decompose { n, split, word } => {
            let w = parse_word(&word, n)?;
            let e = match split {
                SplitArg::Omega => omega(&w),
                SplitArg::H => h_decompose(&w),
            };
            out.push(format!("pure: {}", or_one(e.pure.to_string())));
            out.push(format!("perm: {}", e.perm));
        }
        Command::Nf2 { word } => {
            let nf = vb2_normal_form(&parse_word(&word, 2)?)?;
            out.push(format!("nf: {}", or_one(nf.to_string())));
        }
        Command::Presentation { group, n } => {
            out.push(build_presentation(group.family(), n)?.to_string().trim_end().to_string());
        }
        Command::Abelianize { group, n } => {
            out.push(abelianization(&build_presentation(group.family(), n)?).to_string());
        }
        Command::Lcs { group, n, depth } => {
            let p = build_presentation(group.family(), n)?;
            let inv = if depth == 1 { abelianization(&p) } else { gamma2_mod_gamma3(&p) };
            out.push(inv.to_string());
        }
        Command::Gpv { n, degree, word } => {
            let g = universal_gpv_cached(&parse_word(&word, n)?, degree, cache)?;
            let names = vp_variable_names(n);
            out.push(format!("perm: {}", g.perm));
            out.push(format!("coords: {}", g.coords_line()));
            out.push(format!("series: {}", g.series(n, degree).format_with(&|i| names[i].clone())));
        }
        Command::Distinguish { n, degree, first, second } => {
            let v = distinguish_cached(&parse_word(&first, n)?, &parse_word(&second, n)?, degree, cache)?;
            out.push(format!("verdict: {v}"));
        }
        Command::Jmember { n, degree, combination } => {
            let c = parse_combination(&combination, n)?;
            out.push(format!("in_J^{degree}: {}", jpower_membership_cached(&c, degree, cache)?));
        }
        Command::Verify { suite, seed } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::Telescoping => vec![Suite::Telescoping],
                SuiteArg::Equivariance => vec![Suite::Equivariance],
                SuiteArg::Lemma5 => vec![Suite::Lemma5],
                SuiteArg::Relations => vec![Suite::Relations],
                SuiteArg::FormulaRanks => vec![Suite::FormulaRanks],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let mut failed = false;
            for s in suites {
                let report = run_suite(s, seed)?;
                let passed = report.checks.iter().filter(|c| c.ok()).count();
                for c in &report.checks {
                    out.push(format!("{s}: {c}"));
                }
                out.push(format!("{s} tally: {passed}/{} checks passed", report.checks.len()));
                failed |= !report.ok();
            }
            emit(&out);
            return if failed { Err(Failure::Property) } else { Ok(Vec::new()) };
        }
    }
    Ok(out)
}

// a closed pipe is not an error worth a panic
fn emit(lines: &[String]) {
    let mut stdout = std::io::stdout().lock();
    for l in lines {
        if writeln!(stdout, "{l}").is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            emit(&lines);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Property) => ExitCode::from(1),
    }
}
