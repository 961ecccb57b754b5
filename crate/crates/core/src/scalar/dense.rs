//! Dense coefficient vectors over a fixed order with a common denominator.
//!
//! Everything here is generic over [`Coeff`] so the same code runs on a
//! checked `i128` fast path and on `BigInt`. A `None` from any routine means
//! the `i128` path overflowed and the caller must redo the work with `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::basis::OrderInfo;

pub(crate) trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Non-negative gcd.
    fn gcd(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        let (mut a, mut b) = (self.checked_abs()?, o.checked_abs()?);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Some(a)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        Some(Integer::gcd(self, o))
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

/// `sum num[k] zeta_n^k / den` at a fixed order `n = num.len()`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<T> {
    pub num: Vec<T>,
    pub den: T,
}

impl<T: Coeff> Dense<T> {
    pub fn order(&self) -> usize {
        self.num.len()
    }

    /// Re-embed into order `to` (a multiple of the current order). Not reduced.
    pub fn lift(&self, to: usize) -> Self {
        let from = self.order();
        if from == to {
            return self.clone();
        }
        debug_assert_eq!(to % from, 0);
        let f = to / from;
        let mut num = vec![T::zero(); to];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[k * f] = c.clone();
            }
        }
        Dense {
            num,
            den: self.den.clone(),
        }
    }

    /// Apply `zeta -> zeta^a`. Not reduced.
    pub fn galois(&self, a: usize) -> Self {
        let n = self.order();
        let mut num = vec![T::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[(k * a) % n] = c.clone();
            }
        }
        Dense {
            num,
            den: self.den.clone(),
        }
    }
}

/// Accumulates `sum_i num_i / den_i` at a fixed order against a precomputed
/// common denominator.
pub(crate) struct Accumulator<T> {
    pub num: Vec<T>,
    pub den: T,
}

impl<T: Coeff> Accumulator<T> {
    pub fn new(n: usize, den: T) -> Self {
        Accumulator {
            num: vec![T::zero(); n],
            den,
        }
    }

    /// Add `weight * src / src_den` where `src_den` divides `self.den`.
    /// `src` may be at any order dividing the accumulator order.
    pub fn add_scaled(&mut self, src: &[T], src_den: &T, weight: &T) -> Option<()> {
        let f = self.den.div_exact(src_den).mul(weight)?;
        let stride = self.num.len() / src.len();
        for (k, c) in src.iter().enumerate() {
            if !c.is_zero() {
                let slot = &mut self.num[k * stride];
                *slot = slot.add(&c.mul(&f)?)?;
            }
        }
        Some(())
    }

    /// Add `weight * (a / a_den) * (b / b_den)` where `a_den * b_den` divides
    /// `self.den`. Operands may be at any orders dividing the accumulator order.
    pub fn add_product(
        &mut self,
        a: &[T],
        a_den: &T,
        b: &[T],
        b_den: &T,
        weight: &T,
    ) -> Option<()> {
        let n = self.num.len();
        let f = self.den.div_exact(&a_den.mul(b_den)?).mul(weight)?;
        let sa = n / a.len();
        let sb = n / b.len();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xf = x.mul(&f)?;
            let base = i * sa;
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut idx = base + j * sb;
                if idx >= n {
                    idx -= n;
                }
                let slot = &mut self.num[idx];
                *slot = slot.add(&xf.mul(y)?)?;
            }
        }
        Some(())
    }

    pub fn finish(self) -> Dense<T> {
        Dense {
            num: self.num,
            den: self.den,
        }
    }
}

pub(crate) fn lcm<T: Coeff>(a: &T, b: &T) -> Option<T> {
    let g = a.gcd(b)?;
    a.div_exact(&g).mul(b)
}

/// Rewrite every bad exponent in terms of basis exponents.
pub(crate) fn reduce<T: Coeff>(d: &mut Dense<T>, info: &OrderInfo) -> Option<()> {
    let n = d.num.len();
    debug_assert_eq!(n, info.n as usize);
    for pd in &info.primes {
        for k in 0..n {
            if !pd.bad[k] || d.num[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut d.num[k], T::zero());
            for b in 1..pd.p as usize {
                let idx = (k + b * pd.step) % n;
                d.num[idx] = d.num[idx].sub(&c)?;
            }
        }
    }
    Some(())
}

/// Drop to the smallest order whose field contains the (reduced) element.
pub(crate) fn shrink<T: Coeff>(mut d: Dense<T>, info: &OrderInfo) -> Option<Dense<T>> {
    let mut n = d.num.len();
    let mut primes: Vec<(u32, u32)> = info.primes.iter().map(|pd| (pd.p, pd.e)).collect();
    'outer: loop {
        for slot in primes.iter_mut() {
            let (p, e) = *slot;
            if e == 0 {
                continue;
            }
            let p = p as usize;
            if p == 2 && e == 1 {
                // Q(zeta_2m) = Q(zeta_m) for odd m; reduced support is on even exponents.
                let m = n / 2;
                let mut num = vec![T::zero(); m];
                for (k, c) in d.num.iter().enumerate() {
                    if !c.is_zero() {
                        debug_assert_eq!(k % 2, 0);
                        num[k / 2] = c.clone();
                    }
                }
                d.num = num;
                n = m;
                slot.1 = 0;
                continue 'outer;
            }
            if e >= 2 {
                if d
                    .num
                    .iter()
                    .enumerate()
                    .all(|(k, c)| c.is_zero() || k % p == 0)
                {
                    let m = n / p;
                    let mut num = vec![T::zero(); m];
                    for (k, c) in d.num.iter().enumerate() {
                        if !c.is_zero() {
                            num[k / p] = c.clone();
                        }
                    }
                    d.num = num;
                    n = m;
                    slot.1 -= 1;
                    continue 'outer;
                }
                continue;
            }
            // odd p exactly dividing n
            let m = n / p;
            let mut ok = true;
            'check: for j in 0..m {
                let first = &d.num[(p * j + m) % n];
                for b in 2..p {
                    if d.num[(p * j + b * m) % n] != *first {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok {
                let mut num = Vec::with_capacity(m);
                for j in 0..m {
                    num.push(d.num[(p * j + m) % n].neg()?);
                }
                d.num = num;
                n = m;
                slot.1 = 0;
                continue 'outer;
            }
        }
        break;
    }
    Some(d)
}

/// Make the denominator positive and coprime to the numerators.
pub(crate) fn normalize<T: Coeff>(mut d: Dense<T>) -> Option<Dense<T>> {
    if d.num.iter().all(|c| c.is_zero()) {
        return Some(Dense {
            num: vec![T::zero()],
            den: T::one(),
        });
    }
    let mut g = d.den.gcd(&T::zero())?;
    for c in &d.num {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c)?;
        }
    }
    if d.den.is_negative() {
        g = g.neg()?;
    }
    if !g.is_one() {
        for c in d.num.iter_mut() {
            if !c.is_zero() {
                *c = c.div_exact(&g);
            }
        }
        d.den = d.den.div_exact(&g);
    }
    Some(d)
}

/// Full canonicalisation of a dense value at order `info.n`.
pub(crate) fn canonical<T: Coeff>(mut d: Dense<T>, info: &OrderInfo) -> Option<Dense<T>> {
    reduce(&mut d, info)?;
    let d = shrink(d, info)?;
    normalize(d)
}

pub(crate) fn big_to_small(d: &Dense<BigInt>) -> Option<Dense<i128>> {
    let num = d
        .num
        .iter()
        .map(|c| c.to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some(Dense {
        num,
        den: d.den.to_i128()?,
    })
}

pub(crate) fn small_to_big(d: &Dense<i128>) -> Dense<BigInt> {
    Dense {
        num: d.num.iter().map(|&c| BigInt::from(c)).collect(),
        den: BigInt::from(d.den),
    }
}
