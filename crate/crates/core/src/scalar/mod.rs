//! Exact cyclotomic scalars and rational phases.

mod basis;
mod cyclo;
mod dense;
mod embed;
mod phase;

pub(crate) use dense::Coeff;
pub use cyclo::CycloNumber;
pub use embed::ComplexDecimal;
pub use phase::RationalPhase;

use crate::error::{Error, Result};

/// `sin(k pi / h) / sin(pi / h)` as the quantum integer
/// `[k]_q = sum_{j<k} q^(k-1-2j)` with `q = exp(i pi / h)`.
pub fn sin_ratio(k: i64, h: i64) -> Result<CycloNumber> {
    if h < 2 || k < 0 || k > 2 * h {
        return Err(Error::InvalidArgument(format!(
            "sin_ratio needs h >= 2 and 0 <= k <= 2h, got k = {k}, h = {h}"
        )));
    }
    let n = u32::try_from(2 * h).map_err(|_| Error::InvalidArgument(format!("h = {h} too large")))?;
    let terms: Vec<CycloNumber> = (0..k).map(|j| CycloNumber::zeta_pow(n, k - 1 - 2 * j)).collect();
    Ok(CycloNumber::sum(&terms))
}

/// `2 cos(pi m / h)`.
pub fn two_cos_pi(m: i64, h: i64) -> CycloNumber {
    assert!(h >= 1);
    let n = u32::try_from(2 * h).expect("order fits u32");
    CycloNumber::zeta_pow(n, m) + CycloNumber::zeta_pow(n, -m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn close(a: &CycloNumber, re: f64, im: f64) -> bool {
        let z = a.to_c64();
        (z.re - re).abs() < 1e-12 && (z.im - im).abs() < 1e-12
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = CycloNumber::zeta_pow(8, 1) + CycloNumber::zeta_pow(8, 7);
        let sq = &s * &s;
        // oracle: 30-digit embedding of (2 cos(pi/4))^2
        let want = ComplexDecimal::real_from_str("2.000000000000000000000000000000", 30).unwrap();
        assert!(sq.embed(30).is_within(&want, 1));
        assert_eq!(sq, CycloNumber::from_integer(2));
        assert_eq!(sq.order(), 1);
    }

    #[test]
    fn golden_ratio_inverse() {
        let phi = two_cos_pi(1, 5);
        let inv = CycloNumber::one().checked_div(&phi).unwrap();
        assert_eq!(&inv * &phi, CycloNumber::one());
        assert_eq!(inv, &phi - &CycloNumber::one());
        assert!(close(&inv, 0.618_033_988_749_894_8, 0.0));
    }

    #[test]
    fn division_by_zero_is_degenerate() {
        let err = CycloNumber::one().checked_div(&CycloNumber::zero()).unwrap_err();
        assert!(matches!(err, Error::DegenerateScalar(_)));
    }

    #[test]
    fn sin_ratio_values() {
        assert_eq!(sin_ratio(2, 3).unwrap(), CycloNumber::one());
        assert_eq!(sin_ratio(0, 7).unwrap(), CycloNumber::zero());
        assert_eq!(sin_ratio(3, 4).unwrap(), CycloNumber::one());
        assert_eq!(sin_ratio(1, 9).unwrap(), CycloNumber::one());
        assert_eq!(sin_ratio(2, 9).unwrap(), two_cos_pi(1, 9));
        for h in 2..=30 {
            for k in 0..=2 * h {
                let want = (k as f64 * std::f64::consts::PI / h as f64).sin()
                    / (std::f64::consts::PI / h as f64).sin();
                assert!(close(&sin_ratio(k, h).unwrap(), want, 0.0), "k={k} h={h}");
            }
        }
        assert!(sin_ratio(-1, 4).is_err());
        assert!(sin_ratio(9, 4).is_err());
        assert!(sin_ratio(1, 1).is_err());
    }

    #[test]
    fn embed_examples() {
        let sqrt3 = two_cos_pi(1, 6);
        let want = ComplexDecimal::real_from_str("1.732050807568877", 15).unwrap();
        assert!(sqrt3.embed(15).is_within(&want, 1));
        assert_eq!(CycloNumber::zero().embed(15), ComplexDecimal::zero(15));
        let i = CycloNumber::zeta(4).embed(15);
        assert_eq!(i.re, BigInt::from(0));
        assert_eq!(i.im, BigInt::from(10).pow(15));
        let sqrt2 = two_cos_pi(1, 4).embed(40);
        assert_eq!(
            format!("{sqrt2}"),
            "1.4142135623730950488016887242096980785697 + 0.0000000000000000000000000000000000000000i"
        );
    }

    #[test]
    fn canonical_form_is_order_independent() {
        // 1 in Q(zeta_3) written as -zeta - zeta^2
        let a = CycloNumber::from_coeffs(&[q(0, 1), q(-1, 1), q(-1, 1)]);
        assert_eq!(a, CycloNumber::one());
        assert_eq!(a.order(), 1);
        // zeta_6 = -zeta_3^2
        assert_eq!(CycloNumber::zeta(6), -CycloNumber::zeta_pow(3, 2));
        assert_eq!(CycloNumber::zeta(6).order(), 3);
        // zeta_12^3 = i
        assert_eq!(CycloNumber::zeta_pow(12, 3), CycloNumber::zeta(4));
        // sum of all 15th roots vanishes
        let all: Vec<_> = (0..15).map(|k| CycloNumber::zeta_pow(15, k)).collect();
        assert!(CycloNumber::sum(&all).is_zero());
        // sqrt(5) = zeta5 - zeta5^2 - zeta5^3 + zeta5^4 lives in order 5
        let s5 = CycloNumber::zeta_pow(5, 1) - CycloNumber::zeta_pow(5, 2)
            - CycloNumber::zeta_pow(5, 3)
            + CycloNumber::zeta_pow(5, 4);
        assert_eq!(&s5 * &s5, CycloNumber::from_integer(5));
        assert_eq!(s5.order(), 5);
    }

    #[test]
    fn result_order_divides_lcm() {
        let a = CycloNumber::zeta(8);
        let b = CycloNumber::zeta(12);
        for c in [&a + &b, &a * &b, &a - &b] {
            assert_eq!(24 % c.order(), 0);
        }
    }

    #[test]
    fn big_coefficients_fall_back_exactly() {
        let big = CycloNumber::from_bigint(BigInt::from(10).pow(30));
        let x = &big + &CycloNumber::zeta(7);
        let y = &x * &x; // 10^60 overflows i128
        let z = &(&y - &(&big * &big)) - &CycloNumber::zeta_pow(7, 2);
        assert_eq!(z, &CycloNumber::zeta(7) * &big.scale(2));
    }

    #[test]
    fn galois_and_conjugation() {
        let z = CycloNumber::zeta(7);
        assert_eq!(z.conj(), CycloNumber::zeta_pow(7, 6));
        assert_eq!(z.galois(3), CycloNumber::zeta_pow(7, 3));
        let r = two_cos_pi(2, 9);
        assert_eq!(r.conj(), r);
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNumber> {
        let orders = prop::sample::select(vec![1u32, 3, 4, 5, 8, 9, 12, 15, 20, 24, 60, 120, 240]);
        orders.prop_flat_map(|n| {
            prop::collection::vec((-6i64..=6, 1i64..=4), 1..6).prop_map(move |terms| {
                let xs: Vec<_> = terms
                    .iter()
                    .enumerate()
                    .map(|(i, &(c, d))| {
                        let k = (i as i64 * 7 + c * 3 + d) % n as i64;
                        &CycloNumber::zeta_pow(n, k) * &CycloNumber::from_ratio(c, d)
                    })
                    .collect();
                CycloNumber::sum(&xs)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &CycloNumber::zero(), a.clone());
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloNumber::one());
            }
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn embedding_respects_arithmetic(a in arb_cyclo(), b in arb_cyclo()) {
            let (ea, eb, eab) = (a.to_c64(), b.to_c64(), (&a * &b).to_c64());
            prop_assert!((ea * eb - eab).norm() < 1e-9 * (1.0 + ea.norm() * eb.norm()));
            let (sa, sab) = (a.embed(25), (&a + &b).embed(25));
            let sb = b.embed(25);
            let sum_re = &sa.re + &sb.re;
            prop_assert!((&sab.re - sum_re).magnitude() <= &BigInt::from(2).magnitude().clone());
        }

        #[test]
        fn lifting_preserves_canonical_form(a in arb_cyclo(), m in 1u32..5) {
            let lifted = CycloNumber::from_coeffs(&{
                let n = a.order() * m * 2;
                let mut v = vec![BigRational::from_integer(0.into()); n as usize];
                for (k, c) in a.coeffs().into_iter().enumerate() {
                    v[k * (m as usize) * 2] = c;
                }
                v
            });
            prop_assert_eq!(lifted, a);
        }

        #[test]
        fn f64_and_decimal_embeddings_agree(a in arb_cyclo()) {
            let d = a.embed(20);
            let z = a.to_c64();
            prop_assert!((d.re_f64() - z.re).abs() < 1e-10);
            prop_assert!((d.im_f64() - z.im).abs() < 1e-10);
        }
    }
}
