use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use maass_core::numerics::{recognize_numerator, BallReal};
use maass_core::poincare::{
    cusp_poincare_full_coeff, maass_poincare_holo_coeff, maass_poincare_nonholo_coeff, weakly_holo_poincare_coeff,
    CMax, Coefficient, CoefficientKind, CoefficientTable, PoincareError, PoincareParams, TruncationPolicy,
};

use crate::cache::{Cache, CacheOutcome};
use crate::config::CliConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    /// Cusp form `P(m,k,N)`.
    #[value(name = "+")]
    Plus,
    /// Weakly holomorphic `P(-m,k,N)`.
    #[value(name = "-")]
    Minus,
}

#[derive(Args, Debug)]
pub struct PoincareArgs {
    #[arg(long, value_enum, default_value = "-", allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    level: u64,
    #[arg(long)]
    n_max: u64,
    /// Maass–Poincaré series `Q(-m,k,N)`: non-holomorphic and holomorphic parts.
    #[arg(long)]
    maass: bool,
    /// Recognize each value as a fraction with denominator `n^(k-1)`.
    #[arg(long)]
    rationalize: bool,
}

fn ball_text(b: &BallReal) -> String {
    b.to_string().replace(" +- ", " ± ")
}

/// Table for one kind, reusing cached entries computed under the same policy.
fn compute(
    p: &PoincareParams,
    kind: CoefficientKind,
    ns: &[i64],
    t: &TruncationPolicy,
    cache: &Cache,
    certified: &mut bool,
) -> Result<CoefficientTable> {
    let fixed = match t.c_max {
        CMax::Fixed(c) => Some(c),
        CMax::Auto(_) => None,
    };
    let mut table = CoefficientTable::new(*p, kind, fixed.unwrap_or(0), t.bits());
    let stored = cache.load(&table)?;
    let reusable = stored.filter(|s| Some(s.c_max) == fixed && s.bits == t.bits() && p.k >= 4);
    let mut c_used = 0;
    for &n in ns {
        if let Some(v) = reusable.as_ref().and_then(|s| s.entries.get(&n)) {
            table.entries.insert(n, v.clone());
            continue;
        }
        let c = coefficient(p, kind, n, t)?;
        *certified &= c.certified;
        c_used = c_used.max(c.c_max);
        table.entries.insert(n, c.value);
    }
    if fixed.is_none() {
        table.c_max = c_used;
    }
    Ok(table)
}

fn coefficient(p: &PoincareParams, kind: CoefficientKind, n: i64, t: &TruncationPolicy) -> Result<Coefficient, PoincareError> {
    match kind {
        CoefficientKind::Cusp => cusp_poincare_full_coeff(p, n as u64, t),
        CoefficientKind::Weak => weakly_holo_poincare_coeff(p, n as u64, t),
        CoefficientKind::MaassHolo => maass_poincare_holo_coeff(p, n as u64, t),
        CoefficientKind::MaassNonholo => {
            let mut c = maass_poincare_nonholo_coeff(p, n, t)?;
            if n == -(p.m as i64) {
                // principal non-holomorphic term -1/(k-2)!
                let fact = (2..=p.k as u64 - 2).fold(BallReal::one(t.bits()), |acc, i| acc.mul_i64(i as i64));
                c.value = c.value.sub(&BallReal::one(t.bits()).div(&fact)?);
            }
            Ok(c)
        }
    }
}

pub fn run(args: &PoincareArgs, cfg: &CliConfig) -> Result<ExitCode> {
    let p = PoincareParams::new(args.m, args.k, args.level)?;
    let t = cfg.policy(p.level)?;
    if args.maass && args.sign == Sign::Plus {
        bail!("--maass builds Q(-m,k,N); drop --sign +");
    }
    let cache = Cache::new(&cfg.cache_dir);
    let mut certified = true;
    let positive: Vec<i64> = (1..=args.n_max as i64).collect();
    let tables = if args.maass {
        let neg: Vec<i64> = (1..=args.n_max as i64).rev().map(|n| -n).collect();
        let holo: Vec<i64> = (0..=args.n_max as i64).collect();
        vec![
            compute(&p, CoefficientKind::MaassNonholo, &neg, &t, &cache, &mut certified)?,
            compute(&p, CoefficientKind::MaassHolo, &holo, &t, &cache, &mut certified)?,
        ]
    } else {
        let kind = if args.sign == Sign::Plus { CoefficientKind::Cusp } else { CoefficientKind::Weak };
        vec![compute(&p, kind, &positive, &t, &cache, &mut certified)?]
    };

    if !certified {
        println!("uncertified: weight {} has no proven tail bound; radii include a heuristic tail", p.k);
        eprintln!("warning: results are uncertified");
    }
    println!("# m={} k={} N={} {}", p.m, p.k, p.level, t);
    for table in &tables {
        println!("# {}", table.kind.as_str());
        for (n, v) in &table.entries {
            let mut line = format!("{n}  {}", ball_text(v));
            if args.rationalize && *n > 0 && table.kind != CoefficientKind::MaassNonholo {
                let d = (*n as u64).pow(p.k - 1);
                match recognize_numerator(v, d) {
                    Some(num) => line.push_str(&format!(" = {num}/{d}")),
                    None => line.push_str(" = ?"),
                }
            }
            println!("{line}");
        }
        match cache.store(table)? {
            CacheOutcome::RefusedLowerPrecision => {
                eprintln!("note: {} holds higher-precision data; not overwritten", cache.path_for(table).display())
            }
            _ => {}
        }
    }
    Ok(ExitCode::SUCCESS)
}
