mod commands;
mod report;

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use autlin::field::FieldSpec;
use clap::{Parser, Subcommand, ValueEnum};

use report::{usage, CliError, Report};

#[derive(Parser)]
#[command(name = "autlin", version, about = "Exact computations with plane polynomial automorphisms")]
struct Cli {
    /// Coefficient field: Q, Qt, Fp:<p> or Q(<vars>).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Poly,
    Gf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    /// E ⋉ F_p[E] generated by translations and the indicator of 0.
    G,
    /// E ⋉ M generated by translations and a·x^(q−1).
    Em,
}

/// Literals left out (or given as `-`) are read from stdin, one per line.
#[derive(Subcommand)]
pub enum Verb {
    /// Composite first ∘ second ∘ … (the last map is applied first).
    Compose {
        #[arg(required = true)]
        auts: Vec<String>,
    },
    Invert { aut: Option<String> },
    /// Factor into affine and triangular maps.
    Factor { aut: Option<String> },
    /// Normal form s ∘ u₁ ∘ … ∘ u_m of an automorphism fixing the origin.
    Word {
        aut: Option<String>,
        /// Subgroup the linear part must lie in.
        #[arg(long = "S", default_value = "GL2")]
        subgroup: String,
    },
    /// Matrix of a word under the representation of weight N.
    Rho {
        word: Option<String>,
        #[arg(long = "word", conflicts_with = "word")]
        word_flag: Option<String>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        /// Letters have degree below n.
        #[arg(long = "n", default_value_t = 3)]
        n: u32,
        /// Also run this many ping-pong samples between d0 and dinf.
        #[arg(long, default_value_t = 0)]
        pingpong: usize,
    },
    /// Image of a word in SL(2, K[z]).
    Nagao {
        word: Option<String>,
        #[arg(long = "word", conflicts_with = "word")]
        word_flag: Option<String>,
    },
    /// Good/bad classification of the subgroup generated by GENS.
    Classify {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Normalized generator of the relation ideal I_n.
    Relation {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(long = "n", default_value_t = 1)]
        n: u32,
    },
    /// Compares the Newton polygons of P_1 and P_n.
    Newton {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(long = "n", default_value_t = 2)]
        n: u32,
    },
    /// Linearity verdict for the automorphisms with linear part in S.
    Verdict {
        #[arg(long = "S")]
        subgroup: Option<String>,
    },
    /// Witnesses that linear maps are outside the core of the amalgam.
    Probe {
        #[arg(long = "S", default_value = "GL2")]
        subgroup: String,
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Checks σ²τσ⁻² = τ² on F_p² and over Q.
    Bs {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u32, 5, 7])]
        primes: Vec<u32>,
    },
    /// First prime where a word in s, t, S, T acts nontrivially.
    Separate {
        word: Option<String>,
        #[arg(long = "word", conflicts_with = "word")]
        word_flag: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 5, 7, 11, 13])]
        primes: Vec<u32>,
    },
    /// Checks Σ u^(p^r−1) = Π u over an r-dimensional space E.
    Sumprod {
        #[arg(long = "p")]
        p: u32,
        #[arg(long = "r")]
        r: u32,
        #[arg(long, value_enum, default_value_t = AlgebraArg::Poly)]
        algebra: AlgebraArg,
    },
    /// Lower central series and nilpotency class of a translation group.
    Nilpotency {
        #[arg(long = "p")]
        p: u32,
        #[arg(long = "r")]
        r: u32,
        #[arg(long, value_enum, default_value_t = GroupArg::G)]
        group: GroupArg,
        /// Coefficient a as an element index of GF(p^r), for --group em.
        #[arg(long, default_value_t = 1)]
        a: u32,
    },
}

pub fn parse_field(text: &str) -> Result<FieldSpec, CliError> {
    let t = text.trim();
    match t {
        "Q" => return Ok(FieldSpec::Rationals),
        "Qt" => return Ok(FieldSpec::qt()),
        _ => {}
    }
    if let Some(p) = t.strip_prefix("Fp:") {
        let p: u64 = p.parse().map_err(|_| usage(format!("bad prime in field '{t}'")))?;
        return FieldSpec::prime(p).map_err(|e| usage(e.to_string()));
    }
    if let Some(vars) = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
        let vars: Vec<&str> = vars.split(',').map(str::trim).collect();
        return FieldSpec::rational_functions(FieldSpec::Rationals, &vars).map_err(|e| usage(e.to_string()));
    }
    Err(usage(format!("unknown field '{t}'; expected Q, Qt, Fp:<p> or Q(<vars>)")))
}

/// The literal itself, or the nonblank non-comment lines of stdin.
pub fn inputs(arg: &Option<String>) -> Result<Vec<String>, CliError> {
    match arg.as_deref() {
        Some(s) if s != "-" => Ok(vec![s.to_string()]),
        _ => {
            let mut out = Vec::new();
            for line in io::stdin().lock().lines() {
                let line = line.map_err(|e| usage(format!("reading stdin: {e}")))?;
                let line = line.trim();
                if !line.is_empty() && !line.starts_with('#') {
                    out.push(line.to_string());
                }
            }
            if out.is_empty() {
                return Err(usage("no input given"));
            }
            Ok(out)
        }
    }
}

fn emit(out: &mut impl Write, format: Format, result: &Result<Report, CliError>) -> io::Result<()> {
    match (format, result) {
        (Format::Json, Ok(r)) => writeln!(out, "{}", r.json),
        (Format::Json, Err(e)) => writeln!(out, "{}", e.to_json()),
        (Format::Text, Ok(r)) => writeln!(out, "{}", r.text),
        (Format::Text, Err(e)) => {
            eprintln!("error: {e}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let results = match parse_field(&cli.field) {
        Ok(field) => commands::run(&cli.verb, &field, cli.seed),
        Err(e) => vec![Err(e)],
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut code = 0;
    for r in &results {
        match r {
            Ok(rep) if !rep.ok => code = code.max(1),
            Ok(_) => {}
            Err(e) => code = code.max(e.exit_code()),
        }
        if emit(&mut out, cli.format, r).is_err() {
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code as u8)
}
