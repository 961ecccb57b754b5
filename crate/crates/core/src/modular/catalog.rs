//! Built-in modular data, verified on construction and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::ModularData;
use crate::error::{Error, Result};
use crate::fusion::{su2_fusion_ring, FusionRing};
use crate::linalg::CycloMatrix;
use crate::scalar::{sin_ratio, two_cos_pi, CycloNumber, RationalPhase};

pub const MAX_SU2_LEVEL: usize = 28;
pub const MAX_ZN: usize = 24;

/// Catalog families for listings.
pub fn families() -> Vec<(&'static str, String)> {
    vec![
        ("su2:<level>", format!("su(2) at level 0..={MAX_SU2_LEVEL}")),
        ("fibonacci", "Fibonacci, rank 2".to_string()),
        ("ising", "Ising, rank 3".to_string()),
        ("zn:<n>", format!("pointed Z_n, n = 1..={MAX_ZN}")),
    ]
}

/// Every concrete id that the test suites sweep.
pub fn standard_ids() -> Vec<String> {
    let mut ids: Vec<String> = (0..=MAX_SU2_LEVEL).map(|l| format!("su2:{l}")).collect();
    ids.push("fibonacci".into());
    ids.push("ising".into());
    ids.extend((1..=8).map(|n| format!("zn:{n}")));
    ids
}

fn parse_index(id: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad catalog id `{id}`")))
}

/// Canonical form of a catalog id (`su2:3`, `zn:4`, `fibonacci`, `ising`).
pub fn normalize_id(id: &str) -> Result<String> {
    let lower = id.trim().to_ascii_lowercase();
    match lower.split_once(':') {
        Some(("su2", l)) => {
            let l = parse_index(id, l)?;
            if l > MAX_SU2_LEVEL {
                return Err(Error::InvalidArgument(format!(
                    "su2 level {l} exceeds the catalog maximum {MAX_SU2_LEVEL}"
                )));
            }
            Ok(format!("su2:{l}"))
        }
        Some(("zn", n)) => {
            let n = parse_index(id, n)?;
            if n == 0 || n > MAX_ZN {
                return Err(Error::InvalidArgument(format!("zn order must be 1..={MAX_ZN}, got {n}")));
            }
            Ok(format!("zn:{n}"))
        }
        None if lower == "fibonacci" || lower == "fib" => Ok("fibonacci".into()),
        None if lower == "ising" => Ok("ising".into()),
        None if lower == "su2" => Err(Error::InvalidArgument(
            "su2 needs a level, e.g. su2:10 or --level 10".into(),
        )),
        _ => Err(Error::InvalidArgument(format!("unknown catalog id `{id}`"))),
    }
}

/// Build and verify without touching the cache.
pub fn build(id: &str) -> Result<ModularData> {
    let id = normalize_id(id)?;
    match id.split_once(':') {
        Some(("su2", l)) => su2_modular_data(l.parse().expect("normalized")),
        Some(("zn", n)) => zn_modular_data(n.parse().expect("normalized")),
        _ if id == "fibonacci" => fibonacci(),
        _ => ising(),
    }
}

/// Shared, verified catalog entry.
pub fn lookup(id: &str) -> Result<Arc<ModularData>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<ModularData>>>> = OnceLock::new();
    let key = normalize_id(id)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(md) = cache.lock().expect("catalog cache").get(&key) {
        return Ok(md.clone());
    }
    let md = Arc::new(build(&key)?);
    cache
        .lock()
        .expect("catalog cache")
        .entry(key)
        .or_insert(md.clone());
    Ok(md)
}

/// su(2) at level `level`, `h = level + 2`.
pub fn su2_modular_data(level: usize) -> Result<ModularData> {
    let h = level as i64 + 2;
    let ring = su2_fusion_ring(level);
    let r = level + 1;
    let s = CycloMatrix::from_fn(r, |a, b| {
        let k = ((a as i64 + 1) * (b as i64 + 1)).rem_euclid(2 * h);
        sin_ratio(k, h).expect("in range")
    });
    let t = (0..r as i64)
        .map(|a| RationalPhase::from_ratio(2 * a * (a + 2) - level as i64, 8 * h))
        .collect();
    ModularData::new(format!("su2:{level}"), ring, s, t)
}

pub fn fibonacci() -> Result<ModularData> {
    let ring = FusionRing::from_fn(vec!["1".into(), "tau".into()], vec![0, 1], |a, b, c| {
        match (a, b) {
            (0, _) => u32::from(b == c),
            (_, 0) => u32::from(a == c),
            _ => 1,
        }
    });
    let phi = two_cos_pi(1, 5);
    let s = CycloMatrix::from_fn(2, |a, b| match (a, b) {
        (0, 0) => CycloNumber::one(),
        (1, 1) => CycloNumber::from_integer(-1),
        _ => phi.clone(),
    });
    let t = vec![RationalPhase::from_ratio(53, 60), RationalPhase::from_ratio(17, 60)];
    ModularData::new("fibonacci", ring, s, t)
}

pub fn ising() -> Result<ModularData> {
    // labels 1, sigma, psi
    let ring = FusionRing::from_fn(
        vec!["1".into(), "sigma".into(), "psi".into()],
        vec![0, 1, 2],
        |a, b, c| match (a.min(b), a.max(b)) {
            (0, x) => u32::from(x == c),
            (1, 1) => u32::from(c != 1),
            (1, 2) => u32::from(c == 1),
            _ => u32::from(c == 0),
        },
    );
    let r2 = two_cos_pi(1, 4);
    let one = CycloNumber::one();
    let rows = [
        [one.clone(), r2.clone(), one.clone()],
        [r2.clone(), CycloNumber::zero(), -&r2],
        [one.clone(), -&r2, one.clone()],
    ];
    let s = CycloMatrix::from_fn(3, |a, b| rows[a][b].clone());
    let t = vec![
        RationalPhase::from_ratio(-1, 48),
        RationalPhase::from_ratio(1, 24),
        RationalPhase::from_ratio(23, 48),
    ];
    ModularData::new("ising", ring, s, t)
}

/// Pointed data on `Z_n`: `S_ab = zeta_n^(ab)`, `a* = -a`, spins `h_a`
/// (no central-charge shift).
pub fn zn_modular_data(n: usize) -> Result<ModularData> {
    let labels = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..n).map(|a| (n - a) % n).collect();
    let ring = FusionRing::from_fn(labels, dual, |a, b, c| u32::from((a + b) % n == c));
    let nn = u32::try_from(n).expect("small order");
    let s = CycloMatrix::from_fn(n, |a, b| CycloNumber::zeta_pow(nn, (a * b % n) as i64));
    let n64 = n as i64;
    let t = (0..n64)
        .map(|a| {
            if n % 2 == 0 {
                RationalPhase::from_ratio(a * a, 2 * n64)
            } else {
                // 2^{-1} mod n is (n + 1) / 2
                RationalPhase::from_ratio((n64 + 1) / 2 * a * a, n64)
            }
        })
        .collect();
    ModularData::new(format!("zn:{n}"), ring, s, t)
}
