//! Per-order tables for the Zumbroich basis of `Q(zeta_n)`.
//!
//! For every prime power `q = p^e` exactly dividing `n`, write `w = n / q`.
//! An exponent `k` is *p-bad* when `s = (k mod q) * w^{-1} mod q` lies in
//!
//! * `[-(q/p - 1)/2, (q/p - 1)/2]` (as a centred residue) for odd `p`,
//! * `[q/2, q - 1]` for `p = 2`.
//!
//! Each coset `k + (n/p)Z` contains exactly one p-bad exponent, and the
//! relation `sum_b zeta_n^(k + b n/p) = 0` rewrites it in terms of the others.
//! Exponents that are good for every prime form a basis of size `phi(n)`.
//! The `w`-scaled choice makes the basis of `Q(zeta_{n/p})` a subset of the
//! basis of `Q(zeta_n)` whenever `p^2 | n`, which is what lets the minimal
//! conductor be read off the support.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Debug)]
pub(crate) struct PrimeData {
    pub p: u32,
    /// Exponent of `p` in `n`.
    pub e: u32,
    pub step: usize,
    pub bad: Vec<bool>,
}

#[derive(Debug)]
pub(crate) struct OrderInfo {
    pub n: u32,
    pub primes: Vec<PrimeData>,
    /// Exponents that are good for every prime, ascending.
    pub basis: Vec<usize>,
}

pub(crate) fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    let g = gcd_u64(a as u64, b as u64);
    u32::try_from(a as u64 / g * b as u64).expect("cyclotomic order overflow")
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid on signed integers
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not a unit mod {m}");
    old_s.rem_euclid(m as i64) as u64
}

impl OrderInfo {
    fn build(n: u32) -> Self {
        let nn = n as usize;
        let mut primes = Vec::new();
        for (p, e) in factorize(n) {
            let q = p.pow(e) as u64;
            let w = n as u64 / q;
            let w_inv = mod_inverse(w % q, q);
            let qp = q / p as u64;
            let bad = (0..nn)
                .map(|k| {
                    let s = (k as u64 % q) * w_inv % q;
                    if p == 2 {
                        s >= q / 2
                    } else {
                        let half = (qp - 1) / 2;
                        s <= half || s >= q - half
                    }
                })
                .collect();
            primes.push(PrimeData {
                p,
                e,
                step: nn / p as usize,
                bad,
            });
        }
        let basis = (0..nn)
            .filter(|&k| primes.iter().all(|pd| !pd.bad[k]))
            .collect();
        OrderInfo { n, primes, basis }
    }

    #[cfg(test)]
    pub fn phi(&self) -> usize {
        self.basis.len()
    }

    /// Units of `Z/n`, ascending.
    pub fn units(&self) -> Vec<u32> {
        (1..self.n.max(2))
            .filter(|&a| gcd_u64(a as u64, self.n as u64) == 1)
            .collect()
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<u32, Rc<OrderInfo>>> = RefCell::new(HashMap::new());
}

pub(crate) fn order_info(n: u32) -> Rc<OrderInfo> {
    assert!(n >= 1, "cyclotomic order must be positive");
    CACHE.with(|c| {
        c.borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(OrderInfo::build(n)))
            .clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_phi(n: u32) -> usize {
        (1..=n).filter(|&k| gcd_u64(k as u64, n as u64) == 1).count()
    }

    #[test]
    fn basis_has_phi_elements() {
        for n in 1..=240 {
            assert_eq!(order_info(n).phi(), euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn one_bad_exponent_per_coset() {
        for n in [3u32, 4, 8, 9, 12, 15, 20, 27, 36, 60, 120] {
            let info = order_info(n);
            for pd in &info.primes {
                for k in 0..pd.step {
                    let hits = (0..pd.p as usize)
                        .filter(|b| pd.bad[(k + b * pd.step) % n as usize])
                        .count();
                    assert_eq!(hits, 1, "n = {n}, p = {}, k = {k}", pd.p);
                }
            }
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(120), vec![(2, 3), (3, 1), (5, 1)]);
        assert_eq!(factorize(49), vec![(7, 2)]);
    }
}
