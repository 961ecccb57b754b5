use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::basis::{lcm_u32, order_info, OrderInfo};
use super::dense::{
    big_to_small, canonical, lcm, small_to_big, Accumulator, Coeff, Dense,
};
use crate::error::{Error, Result};

/// An exact element of a cyclotomic field `Q(zeta_n)`.
///
/// Values are always stored at their minimal order (conductor, never
/// `2 mod 4`) with coefficients in the Zumbroich basis and a positive common
/// denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: Box<[i128]>, den: i128 },
    Big { num: Box<[BigInt]>, den: BigInt },
}

impl CycloNumber {
    fn from_small(d: Dense<i128>) -> Self {
        CycloNumber {
            repr: Repr::Small {
                num: d.num.into_boxed_slice(),
                den: d.den,
            },
        }
    }

    fn from_big(d: Dense<BigInt>) -> Self {
        match big_to_small(&d) {
            Some(s) => Self::from_small(s),
            None => CycloNumber {
                repr: Repr::Big {
                    num: d.num.into_boxed_slice(),
                    den: d.den,
                },
            },
        }
    }

    fn small(&self) -> Option<Dense<i128>> {
        match &self.repr {
            Repr::Small { num, den } => Some(Dense {
                num: num.to_vec(),
                den: *den,
            }),
            Repr::Big { .. } => None,
        }
    }

    fn big(&self) -> Dense<BigInt> {
        match &self.repr {
            Repr::Small { num, den } => small_to_big(&Dense {
                num: num.to_vec(),
                den: *den,
            }),
            Repr::Big { num, den } => Dense {
                num: num.to_vec(),
                den: den.clone(),
            },
        }
    }

    /// Run `k` on the `i128` path when every input is small, falling back to
    /// `BigInt` on overflow.
    fn compute<K: Kernel>(inputs: &[&CycloNumber], n: u32, k: K) -> CycloNumber {
        let info = order_info(n);
        if let Some(smalls) = inputs.iter().map(|x| x.small()).collect::<Option<Vec<_>>>() {
            if let Some(d) = k.run(&smalls, &info).and_then(|d| canonical(d, &info)) {
                return Self::from_small(d);
            }
        }
        let bigs: Vec<_> = inputs.iter().map(|x| x.big()).collect();
        let d = k
            .run(&bigs, &info)
            .and_then(|d| canonical(d, &info))
            .expect("BigInt arithmetic cannot overflow");
        Self::from_big(d)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_small(Dense {
            num: vec![v as i128],
            den: 1,
        })
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_big(Dense {
            num: vec![v],
            den: <BigInt as One>::one(),
        })
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_big(super::dense::normalize(Dense {
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        })
        .expect("bigint"))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// `zeta_n^k = exp(2 pi i k / n)`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "order must be positive");
        let mut num = vec![0i128; n as usize];
        num[k.rem_euclid(n as i64) as usize] = 1;
        let info = order_info(n);
        Self::from_small(canonical(Dense { num, den: 1 }, &info).expect("unit monomial"))
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Build from a dense coefficient list: `sum coeffs[k] zeta_n^k`, `n = coeffs.len()`.
    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        assert!(!coeffs.is_empty(), "at least one coefficient is required");
        let n = coeffs.len();
        let mut den = <BigInt as One>::one();
        for c in coeffs {
            den = lcm(&den, c.denom()).expect("bigint");
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let info = order_info(n as u32);
        Self::from_big(canonical(Dense { num, den }, &info).expect("bigint"))
    }

    /// Minimal order `n` with the value in `Q(zeta_n)`.
    pub fn order(&self) -> u32 {
        match &self.repr {
            Repr::Small { num, .. } => num.len() as u32,
            Repr::Big { num, .. } => num.len() as u32,
        }
    }

    /// Canonical dense coefficients, length [`order`](Self::order).
    pub fn coeffs(&self) -> Vec<BigRational> {
        let d = self.big();
        d.num
            .into_iter()
            .map(|c| BigRational::new(c, d.den.clone()))
            .collect()
    }

    /// Coefficients with respect to the basis of `Q(zeta_n)` for a multiple
    /// `n` of the order: the basis exponents of `n` (ascending) and the
    /// rational coordinate on each.
    pub fn basis_coords(&self, n: u32) -> Vec<BigRational> {
        assert_eq!(n % self.order(), 0, "{n} is not a multiple of the order");
        let info = order_info(n);
        let mut d = self.big().lift(n as usize);
        super::dense::reduce(&mut d, &info).expect("bigint");
        info.basis
            .iter()
            .map(|&k| BigRational::new(d.num[k].clone(), d.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.len() == 1 && num[0] == 0,
            Repr::Big { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.order() != 1 {
            return None;
        }
        let d = self.big();
        Some(BigRational::new(d.num[0].clone(), d.den))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let q = self.to_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer()?.to_i64()
    }

    /// Image under `zeta -> zeta^a` for `a` coprime to the order.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order();
        let a = a.rem_euclid(n as i64) as usize;
        assert!(
            super::basis::gcd_u64(a as u64, n as u64) == 1 || n == 1,
            "{a} is not a unit mod {n}"
        );
        Self::compute(&[self], n, Galois(a))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiply by an integer.
    pub fn scale(&self, w: i64) -> Self {
        Self::linear_combination([(w, self)])
    }

    /// `sum_i w_i x_i` with a single canonicalisation at the end.
    pub fn linear_combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, &'a CycloNumber)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(w, x)| *w != 0 && !x.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let n = terms.iter().fold(1, |n, (_, x)| lcm_u32(n, x.order()));
        let weights: Vec<i64> = terms.iter().map(|(w, _)| *w).collect();
        let xs: Vec<&CycloNumber> = terms.iter().map(|(_, x)| *x).collect();
        Self::compute(&xs, n, Combination(&weights))
    }

    /// `sum_i a_i b_i` with a single canonicalisation at the end.
    pub fn dot<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a CycloNumber, &'a CycloNumber)>,
    {
        Self::weighted_dot(pairs.into_iter().map(|(a, b)| (1, a, b)))
    }

    /// `sum_i w_i a_i b_i` with a single canonicalisation at the end.
    pub fn weighted_dot<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, &'a CycloNumber, &'a CycloNumber)>,
    {
        let terms: Vec<_> = terms
            .into_iter()
            .filter(|(w, a, b)| *w != 0 && !a.is_zero() && !b.is_zero())
            .collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let n = terms
            .iter()
            .fold(1, |n, (_, a, b)| lcm_u32(lcm_u32(n, a.order()), b.order()));
        let weights: Vec<i64> = terms.iter().map(|(w, _, _)| *w).collect();
        let xs: Vec<&CycloNumber> = terms.iter().flat_map(|(_, a, b)| [*a, *b]).collect();
        Self::compute(&xs, n, Products(&weights))
    }

    pub fn sum<'a, I>(xs: I) -> Self
    where
        I: IntoIterator<Item = &'a CycloNumber>,
    {
        Self::linear_combination(xs.into_iter().map(|x| (1, x)))
    }

    /// Field norm down to `Q` of the minimal field.
    fn norm_parts(&self) -> (CycloNumber, BigRational) {
        let info = order_info(self.order());
        let mut rest = CycloNumber::one();
        for a in info.units().into_iter().skip(1) {
            rest = &rest * &self.galois(a as i64);
        }
        let norm = (&rest * self)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        (rest, norm)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DegenerateScalar("inverse of zero".into()));
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let (rest, norm) = self.norm_parts();
        Ok(&rest * &Self::from_rational(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DegenerateScalar("division by zero".into()));
        }
        Ok(self * &other.inv()?)
    }

    /// Double-precision embedding under `zeta_n -> exp(2 pi i / n)`.
    pub fn to_c64(&self) -> Complex64 {
        let n = self.order() as f64;
        let d = self.big();
        let den = d.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in d.num.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
            let w = c.to_f64().unwrap_or(f64::NAN) / den;
            acc += Complex64::new(w * theta.cos(), w * theta.sin());
        }
        acc
    }

    /// Sum of absolute numerators over the denominator, an upper bound on |x|.
    pub(crate) fn l1_bound(&self) -> (BigInt, BigInt) {
        let d = self.big();
        let s = d.num.iter().fold(<BigInt as Zero>::zero(), |acc, c| acc + c.abs());
        (s, d.den)
    }

    pub(crate) fn dense_big(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.big();
        (d.num, d.den)
    }
}

trait Kernel {
    fn run<T: Coeff>(&self, xs: &[Dense<T>], info: &OrderInfo) -> Option<Dense<T>>;
}

struct Galois(usize);
struct Combination<'a>(&'a [i64]);
struct Products<'a>(&'a [i64]);
struct Binary(Op);

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Kernel for Galois {
    fn run<T: Coeff>(&self, xs: &[Dense<T>], _info: &OrderInfo) -> Option<Dense<T>> {
        Some(xs[0].galois(self.0))
    }
}

fn common_den<T: Coeff>(dens: impl Iterator<Item = T>) -> Option<T> {
    let mut l = T::one();
    for d in dens {
        l = lcm(&l, &d)?;
    }
    Some(l)
}

impl Kernel for Combination<'_> {
    fn run<T: Coeff>(&self, xs: &[Dense<T>], info: &OrderInfo) -> Option<Dense<T>> {
        let den = common_den(xs.iter().map(|x| x.den.clone()))?;
        let mut acc = Accumulator::new(info.n as usize, den);
        for (x, w) in xs.iter().zip(self.0) {
            acc.add_scaled(&x.num, &x.den, &T::from_i64(*w))?;
        }
        Some(acc.finish())
    }
}

impl Kernel for Products<'_> {
    fn run<T: Coeff>(&self, xs: &[Dense<T>], info: &OrderInfo) -> Option<Dense<T>> {
        let den = common_den(
            xs.chunks(2)
                .map(|p| p[0].den.mul(&p[1].den))
                .collect::<Option<Vec<_>>>()?
                .into_iter(),
        )?;
        let mut acc = Accumulator::new(info.n as usize, den);
        for (p, w) in xs.chunks(2).zip(self.0) {
            acc.add_product(&p[0].num, &p[0].den, &p[1].num, &p[1].den, &T::from_i64(*w))?;
        }
        Some(acc.finish())
    }
}

impl Kernel for Binary {
    fn run<T: Coeff>(&self, xs: &[Dense<T>], info: &OrderInfo) -> Option<Dense<T>> {
        let (a, b) = (&xs[0], &xs[1]);
        match self.0 {
            Op::Mul => {
                let den = a.den.mul(&b.den)?;
                let mut acc = Accumulator::new(info.n as usize, den);
                acc.add_product(&a.num, &a.den, &b.num, &b.den, &T::one())?;
                Some(acc.finish())
            }
            Op::Add | Op::Sub => {
                let den = lcm(&a.den, &b.den)?;
                let mut acc = Accumulator::new(info.n as usize, den);
                acc.add_scaled(&a.num, &a.den, &T::one())?;
                let w = if matches!(self.0, Op::Add) {
                    T::one()
                } else {
                    T::one().neg()?
                };
                acc.add_scaled(&b.num, &b.den, &w)?;
                Some(acc.finish())
            }
        }
    }
}

fn binary(a: &CycloNumber, b: &CycloNumber, op: Op) -> CycloNumber {
    let n = lcm_u32(a.order(), b.order());
    CycloNumber::compute(&[a, b], n, Binary(op))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                binary(self, rhs, $op)
            }
        }
        impl $trait<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                binary(&self, &rhs, $op)
            }
        }
        impl $trait<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                binary(&self, rhs, $op)
            }
        }
        impl $trait<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                binary(self, &rhs, $op)
            }
        }
    };
}

forward_binop!(Add, add, Op::Add);
forward_binop!(Sub, sub, Op::Sub);
forward_binop!(Mul, mul, Op::Mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.scale(-1)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.scale(-1)
    }
}

impl From<i64> for CycloNumber {
    fn from(v: i64) -> Self {
        CycloNumber::from_integer(v)
    }
}

impl Default for CycloNumber {
    fn default() -> Self {
        CycloNumber::zero()
    }
}

impl fmt::Display for CycloNumber {
    /// Rational values print as `p/q`; others as a sum of `c*z<n>^k` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{n}^{k}")?;
            } else {
                write!(f, "{a}*z{n}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        write!(f, "Cyclo({self} ~ {:.6}{:+.6}i)", z.re, z.im)
    }
}
