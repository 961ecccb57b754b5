#![allow(dead_code)]

use fuselab::CycloNumber;
use rand::Rng;

/// A nonzero element of a small cyclotomic field.
pub fn nonzero_cyclo<R: Rng>(rng: &mut R) -> CycloNumber {
    loop {
        let n = [1u32, 3, 4, 5, 8, 12][rng.gen_range(0..6)];
        let a = CycloNumber::zeta_pow(n, rng.gen_range(0..n as i64)).scale(rng.gen_range(-3..=3));
        let b = CycloNumber::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let x = &a + &b;
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random partition of `0..n` into cliques; returns the components (each
/// ascending, ordered by least element) and every ordered pair inside them.
pub fn clique_partition<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let k = rng.gen_range(1..=n.max(1));
    let tag: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let mut comps: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..n).filter(|&i| tag[i] == c).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    comps.sort();
    let mut pairs = Vec::new();
    for c in &comps {
        for &i in c {
            for &j in c {
                if i < j {
                    pairs.push((i, j));
                }
            }
        }
    }
    (comps, pairs)
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}
