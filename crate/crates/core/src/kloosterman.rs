//! Kloosterman sums `K(m, n, c) = Σ_{v mod c, (v,c)=1} cos(2π(m v̄ + n v)/c)`.
//!
//! The sum is regrouped by residue: `K = Σ_r #{v : m v̄ + n v ≡ r} cos(2πr/c)`,
//! so each modulus needs one table of `cos(2πr/c)`, held in fixed point with
//! a single error bound. Tables and finished sums are memoized process-wide.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{divisors, mobius};
use crate::numerics::{cos_sin, pi, BallReal, Float, Mag, PrecisionConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KloostermanKey {
    pub m: i64,
    pub n: i64,
    pub c: u64,
}

impl KloostermanKey {
    pub fn new(m: i64, n: i64, c: u64) -> Result<KloostermanKey, KloostermanError> {
        if c == 0 {
            return Err(KloostermanError::ZeroModulus);
        }
        Ok(KloostermanKey { m, n, c })
    }

    /// Representative with `m, n` reduced into `[0, c)`.
    fn reduced(&self) -> KloostermanKey {
        let c = self.c as i64;
        KloostermanKey { m: self.m.rem_euclid(c), n: self.n.rem_euclid(c), c: self.c }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KloostermanError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{v} is not invertible modulo {c}")]
    NotInvertible { v: i64, c: u64 },
}

/// `v̄ ∈ [0, c)` with `v v̄ ≡ 1 (mod c)`.
pub fn mod_inverse(v: i64, c: u64) -> Result<u64, KloostermanError> {
    if c == 0 {
        return Err(KloostermanError::ZeroModulus);
    }
    let ci = c as i64;
    let e = v.rem_euclid(ci).extended_gcd(&ci);
    if e.gcd != 1 {
        return Err(KloostermanError::NotInvertible { v, c });
    }
    Ok(e.x.rem_euclid(ci) as u64)
}

/// `Σ_{d | (m, c)} d μ(c/d)`, which equals `K(m, 0, c) = K(0, m, c)`.
pub fn ramanujan_sum(m: i64, c: u64) -> i64 {
    let g = m.unsigned_abs().gcd(&c);
    let g = if m == 0 { c } else { g };
    divisors(g).into_iter().map(|d| d as i64 * mobius(c / d)).sum()
}

/// `cos(2πr/c)` for `0 <= r <= c/2`, as integers scaled by `2^bits`, each
/// within `err` of the true value (in unscaled units).
struct CosTable {
    fixed: Vec<BigInt>,
    bits: u32,
    err: Mag,
}

impl CosTable {
    fn build(c: u64, bits: u32) -> CosTable {
        let half = (c / 2) as usize;
        let wp = bits + 32;
        let two_pi_over_c = pi(wp).mul_2exp(1).div_u64(c);
        // baby steps r = j, giant steps r = i*b: cos(x+y) = cos x cos y - sin x sin y
        let b = ((half + 1) as f64).sqrt().ceil().max(1.0) as usize;
        let angle = |r: usize| cos_sin(&two_pi_over_c.mul_i64(r as i64));
        let baby: Vec<(BallReal, BallReal)> = (0..b).map(angle).collect();
        let mut fixed = Vec::with_capacity(half + 1);
        let mut err = Mag::ZERO;
        let mut i = 0usize;
        while i * b <= half {
            let (gc, gs) = angle(i * b);
            for (j, (bc, bs)) in baby.iter().enumerate() {
                let r = i * b + j;
                if r > half {
                    break;
                }
                let v = if j == 0 { gc.clone() } else { gc.mul(bc).sub(&gs.mul(bs)) };
                let scaled = v.midpoint().mul_2exp(bits as i64);
                fixed.push(scaled.round_to_integer());
                err = err.max(v.radius());
            }
            i += 1;
        }
        // rounding to the integer grid adds at most half a unit
        let err = err.add(Mag::pow2(-(bits as i64) - 1));
        CosTable { fixed, bits, err }
    }
}

/// Memo tables shared by all callers. Concurrent inserts of the same key may
/// both compute, but always store identical values.
pub struct KloostermanCache {
    tables: DashMap<(u64, u32), Arc<CosTable>>,
    inverses: DashMap<u64, Arc<Vec<(u32, u32)>>>,
    sums: DashMap<(i64, i64, u64, u32), BallReal>,
    max_c: u64,
}

impl KloostermanCache {
    /// Cache that memoizes sums with `c <= max_c`.
    pub fn new(max_c: u64) -> KloostermanCache {
        KloostermanCache { tables: DashMap::new(), inverses: DashMap::new(), sums: DashMap::new(), max_c }
    }

    /// The process-wide cache (moduli up to 10^6).
    pub fn global() -> &'static KloostermanCache {
        static CACHE: OnceLock<KloostermanCache> = OnceLock::new();
        CACHE.get_or_init(|| KloostermanCache::new(1_000_000))
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    pub fn clear(&self) {
        self.tables.clear();
        self.inverses.clear();
        self.sums.clear();
    }

    fn table(&self, c: u64, bits: u32) -> Arc<CosTable> {
        if let Some(t) = self.tables.get(&(c, bits)) {
            return t.clone();
        }
        let t = Arc::new(CosTable::build(c, bits));
        if c <= self.max_c {
            self.tables.insert((c, bits), t.clone());
        }
        t
    }

    /// Pairs `(v, v̄)` over the units modulo `c`.
    fn units(&self, c: u64) -> Arc<Vec<(u32, u32)>> {
        if let Some(u) = self.inverses.get(&c) {
            return u.clone();
        }
        let u: Vec<(u32, u32)> = (0..c)
            .filter_map(|v| mod_inverse(v as i64, c).ok().map(|w| (v as u32, w as u32)))
            .collect();
        let u = Arc::new(u);
        if c <= self.max_c {
            self.inverses.insert(c, u.clone());
        }
        u
    }

    pub fn kloosterman(&self, key: KloostermanKey, prec: &PrecisionConfig) -> BallReal {
        let key = key.reduced();
        let bits = prec.working_bits;
        let id = (key.m, key.n, key.c, bits);
        if let Some(k) = self.sums.get(&id) {
            return k.clone();
        }
        let k = self.compute(key, bits);
        if key.c <= self.max_c {
            self.sums.insert(id, k.clone());
        }
        k
    }

    fn compute(&self, key: KloostermanKey, bits: u32) -> BallReal {
        let KloostermanKey { m, n, c } = key;
        if c == 1 {
            return BallReal::one(bits);
        }
        if m == 0 || n == 0 {
            return BallReal::from_i64(ramanujan_sum(m + n, c), bits);
        }
        let mut counts = vec![0u64; c as usize];
        let (m, n) = (m as u64, n as u64);
        for &(v, w) in self.units(c).iter() {
            let r = (m * w as u64 + n * v as u64) % c;
            counts[r as usize] += 1;
        }
        // cos(2πr/c) = cos(2π(c-r)/c)
        let table = self.table(c, bits + 16);
        let mut acc = BigInt::zero();
        let mut total = 0u64;
        for r in 0..=(c / 2) as usize {
            let mut k = counts[r];
            if r != 0 && 2 * r as u64 != c {
                k += counts[c as usize - r];
            }
            if k > 0 {
                acc += &table.fixed[r] * k;
                total += k;
            }
        }
        let mid = Float::new(acc, -(table.bits as i64));
        let (mid, round) = mid.round(bits);
        BallReal::new(mid, table.err.mul_u64(total).add(round), bits)
    }

    /// Memoized sums as `K m n c <ball>` lines, sorted by key.
    pub fn dump(&self) -> String {
        let mut entries: Vec<((i64, i64, u64, u32), BallReal)> =
            self.sums.iter().map(|e| (*e.key(), e.value().clone())).collect();
        entries.sort_by_key(|(k, _)| (k.2, k.0, k.1, k.3));
        entries.iter().map(|((m, n, c, _), b)| format!("K {m} {n} {c} {b}\n")).collect()
    }
}

/// `K(m, n, c)` as a ball, via the global cache.
pub fn kloosterman(key: KloostermanKey, prec: &PrecisionConfig) -> BallReal {
    KloostermanCache::global().kloosterman(key, prec)
}

/// Parses one `K m n c <ball>` dump line.
pub fn parse_dump_line(line: &str) -> Option<(KloostermanKey, BallReal)> {
    let rest = line.trim().strip_prefix("K ")?;
    let mut it = rest.splitn(4, ' ');
    let m = it.next()?.parse().ok()?;
    let n = it.next()?.parse().ok()?;
    let c = it.next()?.parse().ok()?;
    let ball = it.next()?.parse().ok()?;
    Some((KloostermanKey::new(m, n, c).ok()?, ball))
}
