use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use maass_core::qseries::{
    delta, eisenstein, eta_quotient, faber_jm, g_series, j_invariant, m_series, EtaQuotientSpec, LaurentQSeries,
};

#[derive(Args, Debug)]
pub struct QexpArgs {
    #[command(subcommand)]
    series: SeriesChoice,
}

#[derive(Args, Debug)]
struct Output {
    /// Number of coefficients, counted from the leading exponent.
    #[arg(long, default_value_t = 20)]
    terms: usize,
    /// Write the series here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SeriesChoice {
    /// Eta quotient, e.g. `1:3,9:-3` for η(z)³/η(9z)³.
    Eta {
        spec: String,
        #[command(flatten)]
        output: Output,
    },
    /// Normalized Eisenstein series of the given weight.
    Eisenstein {
        weight: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Klein's j.
    J {
        #[command(flatten)]
        output: Output,
    },
    /// Faber polynomial j_m(j).
    Jm {
        m: u32,
        #[command(flatten)]
        output: Output,
    },
    Delta {
        #[command(flatten)]
        output: Output,
    },
    /// m(z) at level 9.
    MSeries {
        #[command(flatten)]
        output: Output,
    },
    /// g(z) = η(3z)^8.
    GSeries {
        #[command(flatten)]
        output: Output,
    },
}

impl SeriesChoice {
    fn output(&self) -> &Output {
        match self {
            SeriesChoice::Eta { output, .. }
            | SeriesChoice::Eisenstein { output, .. }
            | SeriesChoice::J { output }
            | SeriesChoice::Jm { output, .. }
            | SeriesChoice::Delta { output }
            | SeriesChoice::MSeries { output }
            | SeriesChoice::GSeries { output } => output,
        }
    }
}

fn build(choice: &SeriesChoice, terms: usize) -> Result<LaurentQSeries> {
    if terms == 0 {
        bail!("--terms must be positive");
    }
    Ok(match choice {
        SeriesChoice::Eta { spec, .. } => eta_quotient(&spec.parse::<EtaQuotientSpec>()?, terms)?,
        SeriesChoice::Eisenstein { weight, .. } => eisenstein(*weight, terms)?,
        SeriesChoice::J { .. } => j_invariant(terms as i64 - 1),
        SeriesChoice::Jm { m, .. } => {
            if *m > 0 && terms <= *m as usize {
                bail!("j_{m} needs more than {m} terms");
            }
            faber_jm(*m, terms)
        }
        SeriesChoice::Delta { .. } => delta(terms),
        SeriesChoice::MSeries { .. } => m_series(terms),
        SeriesChoice::GSeries { .. } => g_series(terms),
    })
}

pub fn run(args: &QexpArgs) -> Result<ExitCode> {
    let output = args.series.output();
    let text = build(&args.series, output.terms)?.serialize();
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
