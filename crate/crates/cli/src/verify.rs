use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use maass_core::poincare::PoincareParams;
use maass_core::qseries::{delta, eisenstein, g_series, m_series, DirichletCharacterSpec, LaurentQSeries};
use maass_core::verify::{
    verify_bol_xi, verify_cm_vanishing, verify_good_example, verify_hecke_recursion, verify_lehmer_identity,
    verify_padic, CheckStatus, VerificationReport,
};

use crate::config::CliConfig;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    suite: Suite,
    /// Also write the report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Write density rows (`X,b,density`) here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    G,
    E4,
    E6,
    Delta,
    M,
}

impl SeriesName {
    fn build(self, terms: usize) -> Result<LaurentQSeries> {
        Ok(match self {
            SeriesName::G => g_series(terms),
            SeriesName::E4 => eisenstein(4, terms)?,
            SeriesName::E6 => eisenstein(6, terms)?,
            SeriesName::Delta => delta(terms),
            SeriesName::M => m_series(terms),
        })
    }

    fn level(self) -> u64 {
        match self {
            SeriesName::G | SeriesName::M => 9,
            _ => 1,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// P(-1,4,9) against m(z), and rationality of Q+(-1,4,9).
    GoodExample {
        #[arg(long, default_value_t = 11)]
        n_max: u64,
    },
    /// Bol and ξ identities for Q(-m,k,N).
    BolXi {
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 9)]
        level: u64,
        #[arg(long, default_value_t = 1)]
        n_lo: i64,
        #[arg(long, default_value_t = 11)]
        n_hi: i64,
    },
    /// Lehmer identity for Δ at a small prime.
    Lehmer {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        n_lo: Option<i64>,
        #[arg(long, default_value_t = 4)]
        n_hi: i64,
    },
    /// Vanishing at inert indices.
    Cm {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
        #[arg(long, value_enum, default_value = "g")]
        series: SeriesName,
        #[arg(long, default_value_t = 200)]
        x: u64,
    },
    /// Hecke recursion at a prime with vanishing eigenvalue.
    Hecke {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        k: i64,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        #[arg(long, value_enum, default_value = "g")]
        series: SeriesName,
    },
    /// 3-adic properties of m(z).
    Padic {
        #[arg(long, default_value_t = 19683)]
        terms: usize,
    },
}

fn report(suite: &Suite, cfg: &CliConfig) -> Result<VerificationReport> {
    Ok(match suite {
        Suite::GoodExample { n_max } => verify_good_example(*n_max, &cfg.policy(9)?)?,
        Suite::BolXi { m, k, level, n_lo, n_hi } => {
            let p = PoincareParams::new(*m, *k, *level)?;
            verify_bol_xi(&p, *n_lo..=*n_hi, &cfg.policy(*level)?)?
        }
        Suite::Lehmer { p, n_lo, n_hi } => verify_lehmer_identity(*p, n_lo.unwrap_or(-(*p as i64)), *n_hi, &cfg.policy(1)?)?,
        Suite::Cm { d, series, x } => verify_cm_vanishing(&series.build(*x as usize + 1)?, *d, *x)?,
        Suite::Hecke { p, k, m_max, series } => {
            let top = p.checked_pow(*m_max).unwrap_or(u64::MAX).max(*p);
            let f = series.build(top as usize + 1)?;
            let chi = DirichletCharacterSpec::trivial(series.level())?;
            verify_hecke_recursion(&f, *p, *k, &chi, *m_max)?
        }
        Suite::Padic { terms } => verify_padic(*terms)?,
    })
}

pub fn run(args: &VerifyArgs, cfg: &CliConfig) -> Result<ExitCode> {
    let r = report(&args.suite, cfg)?;
    let text = r.to_text();
    print!("{text}");
    if !r.densities.is_empty() {
        print!("{}", r.density_csv());
    }
    if let Some(path) = &args.report {
        fs::write(path, &text)?;
    }
    if let Some(path) = &args.csv {
        fs::write(path, r.density_csv())?;
    }
    Ok(match r.status() {
        CheckStatus::Fail => ExitCode::FAILURE,
        CheckStatus::Uncertified => {
            eprintln!("warning: some checks are uncertified");
            ExitCode::SUCCESS
        }
        CheckStatus::Pass => ExitCode::SUCCESS,
    })
}
