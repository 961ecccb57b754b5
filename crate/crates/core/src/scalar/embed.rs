//! Arbitrary-precision complex embedding of cyclotomic numbers.
//!
//! Fixed-point arithmetic on `BigInt` scaled by `10^P`; pi from Machin's
//! formula and cos/sin from their Taylor series on `[-pi, pi]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CycloNumber;

/// `re + i*im` where both parts are integers scaled by `10^-digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecimal {
    pub re: BigInt,
    pub im: BigInt,
    pub digits: u32,
}

impl ComplexDecimal {
    pub fn re_f64(&self) -> f64 {
        scaled_to_f64(&self.re, self.digits)
    }

    pub fn im_f64(&self) -> f64 {
        scaled_to_f64(&self.im, self.digits)
    }

    /// `|self - other|_inf` in units of `10^-digits`, for equal `digits`.
    pub fn max_abs_diff(&self, other: &ComplexDecimal) -> BigInt {
        assert_eq!(self.digits, other.digits);
        let a = (&self.re - &other.re).abs();
        let b = (&self.im - &other.im).abs();
        a.max(b)
    }
}

fn scaled_to_f64(v: &BigInt, digits: u32) -> f64 {
    // keep ~17 significant digits
    let s = BigInt::from(10u32).pow(digits.saturating_sub(17));
    let lead = (v / &s).to_f64().unwrap_or(f64::NAN);
    lead / 10f64.powi(digits.min(17) as i32)
}

fn fmt_scaled(v: &BigInt, digits: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let scale = BigInt::from(10u32).pow(digits);
    let (q, r) = v.abs().div_rem(&scale);
    let sign = if v.is_negative() { "-" } else { "" };
    if digits == 0 {
        write!(f, "{sign}{q}")
    } else {
        write!(f, "{sign}{q}.{:0>width$}", r.to_string(), width = digits as usize)
    }
}

impl fmt::Display for ComplexDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_scaled(&self.re, self.digits, f)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            fmt_scaled(&-&self.im, self.digits, f)?;
        } else {
            write!(f, " + ")?;
            fmt_scaled(&self.im, self.digits, f)?;
        }
        write!(f, "i")
    }
}

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// `atan(1/x) * scale`.
fn atan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x; // scale / x^(2j+1)
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        j += 1;
    }
    sum
}

fn pi_scaled(scale: &BigInt) -> BigInt {
    atan_inv(5, scale) * 16 - atan_inv(239, scale) * 4
}

/// `(cos theta, sin theta) * scale` for `theta * scale` given, `|theta| <= pi`.
fn cos_sin(theta: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let t2 = theta * theta / scale;
    let mut cos = scale.clone();
    let mut sin = theta.clone();
    let mut term_c = scale.clone();
    let mut term_s = theta.clone();
    let mut k = 1u64;
    loop {
        term_c = -(&term_c * &t2) / scale / BigInt::from((2 * k - 1) * (2 * k));
        term_s = -(&term_s * &t2) / scale / BigInt::from((2 * k) * (2 * k + 1));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos += &term_c;
        sin += &term_s;
        k += 1;
    }
    (cos, sin)
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(b);
    if &r * &two >= *b {
        q + 1
    } else {
        q
    }
}

fn decimal_len(v: &BigInt) -> u32 {
    v.abs().to_string().len() as u32
}

impl CycloNumber {
    /// Complex approximation with at least `digits` correct decimal places
    /// (absolute error below `10^-digits`). Deterministic.
    pub fn embed(&self, digits: u32) -> ComplexDecimal {
        assert!(digits >= 1, "need at least one digit");
        let n = self.order() as i64;
        let (num, den) = self.dense_big();
        let (l1, _) = self.l1_bound();
        // guard digits cover the series truncations (a few ulps per term) and
        // the amplification by the coefficient sizes
        let guard = 10 + decimal_len(&l1) + decimal_len(&BigInt::from(n));
        let p = digits + guard;
        let scale = pow10(p);
        let two_pi = pi_scaled(&scale) * 2;
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kk = if 2 * k as i64 > n { k as i64 - n } else { k as i64 };
            let theta = &two_pi * BigInt::from(kk) / BigInt::from(n);
            let (cs, sn) = if kk == 0 {
                (scale.clone(), BigInt::zero())
            } else {
                cos_sin(&theta, &scale)
            };
            re += c * cs;
            im += c * sn;
        }
        let shrink = pow10(guard) * &den;
        ComplexDecimal {
            re: round_div(&re, &shrink),
            im: round_div(&im, &shrink),
            digits,
        }
    }
}

impl ComplexDecimal {
    pub fn zero(digits: u32) -> Self {
        ComplexDecimal {
            re: BigInt::zero(),
            im: BigInt::zero(),
            digits,
        }
    }

    /// Parse a decimal string into the real part at this precision.
    pub fn real_from_str(s: &str, digits: u32) -> Option<Self> {
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let mut frac: String = frac.chars().take(digits as usize).collect();
        while frac.len() < digits as usize {
            frac.push('0');
        }
        let v: BigInt = format!("{int}{frac}").parse().ok()?;
        Some(ComplexDecimal {
            re: if neg { -v } else { v },
            im: BigInt::zero(),
            digits,
        })
    }

    pub fn one(digits: u32) -> Self {
        ComplexDecimal {
            re: pow10(digits),
            im: BigInt::zero(),
            digits,
        }
    }

    pub fn is_within(&self, other: &ComplexDecimal, ulps: u64) -> bool {
        self.max_abs_diff(other) <= BigInt::from(ulps)
    }
}
