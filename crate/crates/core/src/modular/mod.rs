//! Modular data: the unnormalised S matrix, topological spins, quantum
//! dimensions, the spectrum of the fusion algebra and its idempotents.

pub mod catalog;

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::{FusionElement, FusionRing};
use crate::linalg::CycloMatrix;
use crate::scalar::{CycloNumber, RationalPhase};

/// Fusion ring plus `S` with `S_0I = d(I)`, spins `t` with `T_II = exp(2 pi i t_I)`.
#[derive(Clone, Debug)]
pub struct ModularData {
    name: String,
    ring: FusionRing,
    s: CycloMatrix,
    t: Vec<RationalPhase>,
    d: Vec<CycloNumber>,
    global_dim: CycloNumber,
    idempotents: OnceLock<Vec<FusionElement>>,
}

impl PartialEq for ModularData {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.ring == other.ring && self.s == other.s && self.t == other.t
    }
}

impl Eq for ModularData {}

/// `lambda_I` as a character of the fusion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPoint {
    pub base_label: usize,
    /// `values[S] = lambda_I(S)`
    pub values: Vec<CycloNumber>,
    pub norm_sq: CycloNumber,
}

impl ModularData {
    /// Assemble without checking the modular identities; see [`ModularData::verify`].
    pub fn from_parts(
        name: impl Into<String>,
        ring: FusionRing,
        s: CycloMatrix,
        t: Vec<RationalPhase>,
    ) -> Result<Self> {
        let r = ring.rank();
        if s.size() != r || t.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "rank {r} ring with a {0}x{0} S matrix and {1} spins",
                s.size(),
                t.len()
            )));
        }
        let d: Vec<CycloNumber> = s.row(0).to_vec();
        let global_dim = CycloNumber::dot(d.iter().zip(&d));
        Ok(ModularData {
            name: name.into(),
            ring,
            s,
            t,
            d,
            global_dim,
            idempotents: OnceLock::new(),
        })
    }

    /// [`ModularData::from_parts`] followed by [`ModularData::verify`].
    pub fn new(
        name: impl Into<String>,
        ring: FusionRing,
        s: CycloMatrix,
        t: Vec<RationalPhase>,
    ) -> Result<Self> {
        let md = Self::from_parts(name, ring, s, t)?;
        md.verify()?;
        Ok(md)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn s(&self) -> &CycloMatrix {
        &self.s
    }

    pub fn t(&self) -> &[RationalPhase] {
        &self.t
    }

    pub fn d(&self) -> &[CycloNumber] {
        &self.d
    }

    pub fn global_dim(&self) -> &CycloNumber {
        &self.global_dim
    }

    pub fn dual(&self, a: usize) -> usize {
        self.ring.dual(a)
    }

    /// Fusion axioms, `d_0 = 1`, symmetry, duality, `S^2 = d(C) C` and
    /// Verlinde recovery of the ring. Stops at the first failure.
    pub fn verify(&self) -> Result<()> {
        self.ring.verify_axioms()?;
        let r = self.rank();
        let s = &self.s;
        if !s.get(0, 0).is_one() {
            return Err(Error::ModularDataViolated {
                identity: "d_0 = 1",
                witness: vec![0],
            });
        }
        for i in 0..r {
            for j in i + 1..r {
                if s.get(i, j) != s.get(j, i) {
                    return Err(Error::ModularDataViolated {
                        identity: "S symmetric",
                        witness: vec![i, j],
                    });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if s.get(i, j) != s.get(self.dual(i), self.dual(j)) {
                    return Err(Error::ModularDataViolated {
                        identity: "S_IJ = S_I*J*",
                        witness: vec![i, j],
                    });
                }
            }
        }
        if let Some((i, j)) = self.s_squared_failure() {
            return Err(Error::ModularDataViolated {
                identity: "S^2 = d(C) C",
                witness: vec![i, j],
            });
        }
        let v = self.verlinde()?;
        for (a, va) in v.iter().enumerate() {
            for (b, vab) in va.iter().enumerate() {
                for (c, x) in vab.iter().enumerate() {
                    let x = x.to_i64().expect("checked integral");
                    let ring = self.ring.coefficient(a, b, c);
                    if x != i64::from(ring) {
                        return Err(Error::VerlindeMismatch {
                            a,
                            b,
                            c,
                            verlinde: x,
                            ring,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// First `(I, J)` with `(S^2)_IJ != d(C) delta_{J, I*}`.
    fn s_squared_failure(&self) -> Option<(usize, usize)> {
        let r = self.rank();
        let s = &self.s;
        (0..r).into_par_iter().find_map_first(|i| {
            (0..r).find_map(|j| {
                let v = CycloNumber::dot((0..r).map(|k| (s.get(i, k), s.get(k, j))));
                let expect = if j == self.dual(i) {
                    self.global_dim.clone()
                } else {
                    CycloNumber::zero()
                };
                (v != expect).then_some((i, j))
            })
        })
    }

    /// `S^2` as a matrix.
    pub fn s_squared(&self) -> CycloMatrix {
        self.s.mul(&self.s)
    }

    /// `N_ab^c = sum_m S_am S_bm S_{c* m} / (S_0m d(C))`. Every entry must be a
    /// non-negative integer.
    pub fn verlinde(&self) -> Result<Vec<Vec<Vec<CycloNumber>>>> {
        let raw = self.verlinde_raw()?;
        for (a, va) in raw.iter().enumerate() {
            for (b, vab) in va.iter().enumerate() {
                for (c, x) in vab.iter().enumerate() {
                    let ok = x.to_i64().is_some_and(|v| v >= 0);
                    if !ok {
                        return Err(Error::NonIntegralVerlinde {
                            a,
                            b,
                            c,
                            value: x.to_string(),
                        });
                    }
                }
            }
        }
        Ok(raw)
    }

    /// Verlinde sums without the integrality check.
    pub fn verlinde_raw(&self) -> Result<Vec<Vec<Vec<CycloNumber>>>> {
        let r = self.rank();
        let s = &self.s;
        let weights: Vec<CycloNumber> = (0..r)
            .map(|m| (s.get(0, m) * &self.global_dim).inv())
            .collect::<Result<_>>()?;
        // T(x, y, z) = sum_m S_xm S_ym S_zm w_m is symmetric in (x, y, z) for
        // symmetric S, so only x <= y <= z is computed.
        let weighted: Vec<Vec<CycloNumber>> = (0..r)
            .into_par_iter()
            .map(|z| (0..r).map(|m| s.get(z, m) * &weights[m]).collect())
            .collect();
        let triples: Vec<(usize, usize)> = (0..r).flat_map(|x| (x..r).map(move |y| (x, y))).collect();
        let sym: Vec<((usize, usize), Vec<CycloNumber>)> = triples
            .into_par_iter()
            .map(|(x, y)| {
                let pair: Vec<CycloNumber> = (0..r).map(|m| s.get(x, m) * s.get(y, m)).collect();
                let vals = (y..r)
                    .map(|z| CycloNumber::dot(pair.iter().zip(&weighted[z])))
                    .collect();
                ((x, y), vals)
            })
            .collect();
        let mut t = vec![vec![vec![CycloNumber::zero(); r]; r]; r];
        for ((x, y), vals) in sym {
            for (k, v) in vals.into_iter().enumerate() {
                let z = y + k;
                for (p, q, u) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                    t[p][q][u] = v.clone();
                }
            }
        }
        Ok((0..r)
            .map(|a| {
                (0..r)
                    .map(|b| (0..r).map(|c| t[a][b][self.dual(c)].clone()).collect())
                    .collect()
            })
            .collect())
    }

    /// One point `lambda_I(S) = S_IS / d(I)` per label.
    pub fn spectrum(&self) -> Result<Vec<SpectrumPoint>> {
        (0..self.rank()).map(|i| self.spectrum_point(i)).collect()
    }

    pub fn spectrum_point(&self, i: usize) -> Result<SpectrumPoint> {
        let inv = self.d[i].inv().map_err(|_| {
            Error::DegenerateScalar(format!("quantum dimension of label {i} is zero"))
        })?;
        let values: Vec<CycloNumber> = self.s.row(i).iter().map(|x| x * &inv).collect();
        let norm_sq = self.inner_product(&values, &values)?;
        Ok(SpectrumPoint {
            base_label: i,
            values,
            norm_sq,
        })
    }

    /// `<a, b> = sum_S a(S) b(S*)`.
    pub fn inner_product(&self, a: &[CycloNumber], b: &[CycloNumber]) -> Result<CycloNumber> {
        let r = self.rank();
        if a.len() != r || b.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "characters of length {} and {} for rank {r}",
                a.len(),
                b.len()
            )));
        }
        Ok(CycloNumber::dot((0..r).map(|s| (&a[s], &b[self.dual(s)]))))
    }

    /// `e_lambda = (1 / |lambda|^2) sum_S lambda(S*) x_S`.
    pub fn spectral_idempotent(&self, lambda: &SpectrumPoint) -> Result<FusionElement> {
        let k = lambda.norm_sq.inv()?;
        Ok(FusionElement::new(
            (0..self.rank()).map(|s| &lambda.values[self.dual(s)] * &k).collect(),
        ))
    }

    /// `e_{lambda_I}` for every label, computed once.
    pub fn spectral_idempotents(&self) -> Result<&[FusionElement]> {
        if let Some(v) = self.idempotents.get() {
            return Ok(v);
        }
        let es = (0..self.rank())
            .into_par_iter()
            .map(|i| self.spectral_idempotent(&self.spectrum_point(i)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.idempotents.get_or_init(|| es))
    }

    /// `1_I = (d(I)^2 / d(C)) sum_S lambda_I(S*) x_S`, with `lambda_I(S*)`
    /// read directly from `S`.
    pub fn tube_idempotent(&self, i: usize) -> Result<FusionElement> {
        if i >= self.rank() {
            return Err(Error::InvalidArgument(format!("label {i} out of range")));
        }
        let di = &self.d[i];
        let k = (di * di).checked_div(&self.global_dim)?;
        let di_inv = di.inv()?;
        let scale = &k * &di_inv;
        Ok(FusionElement::new(
            (0..self.rank())
                .map(|s| self.s.get(i, self.dual(s)) * &scale)
                .collect(),
        ))
    }

    /// Evaluate a character on an element: `lambda(x) = sum_S x_S lambda(S)`.
    pub fn evaluate(&self, lambda: &SpectrumPoint, x: &FusionElement) -> CycloNumber {
        CycloNumber::dot(x.coeffs().iter().zip(&lambda.values))
    }
}

#[cfg(test)]
mod tests {
    use super::catalog;
    use super::*;
    use crate::scalar::two_cos_pi;

    #[test]
    fn level_one_spectrum() {
        let md = catalog::lookup("su2:1").unwrap();
        let sp = md.spectrum().unwrap();
        assert_eq!(sp[1].values[1], CycloNumber::from_integer(-1));
        assert_eq!(sp[1].values[1], two_cos_pi(2, 3));
        assert_eq!(sp[0].values, md.d());
        assert_eq!(sp[0].norm_sq, CycloNumber::from_integer(2));
        assert!(md.inner_product(&sp[0].values, &sp[1].values).unwrap().is_zero());
        let half = CycloNumber::from_ratio(1, 2);
        let e0 = md.spectral_idempotent(&sp[0]).unwrap();
        let e1 = md.spectral_idempotent(&sp[1]).unwrap();
        assert_eq!(e0.coeffs(), &[half.clone(), half.clone()]);
        assert_eq!(e1.coeffs(), &[half.clone(), -&half]);
        assert_eq!(md.tube_idempotent(0).unwrap(), e0);
    }

    #[test]
    fn level_two_values() {
        let md = catalog::lookup("su2:2").unwrap();
        assert_eq!(md.d()[1], two_cos_pi(1, 4));
        assert_eq!(md.global_dim(), &CycloNumber::from_integer(4));
        let sp = md.spectrum().unwrap();
        assert!(sp[1].values[1].is_zero());
        let t1 = md.tube_idempotent(1).unwrap();
        let half = CycloNumber::from_ratio(1, 2);
        assert_eq!(t1.coeffs(), &[half.clone(), CycloNumber::zero(), -&half]);
        assert_eq!(t1, md.spectral_idempotent(&sp[1]).unwrap());
        let n = md.verlinde().unwrap();
        assert!(n[1][1][0].is_one() && n[1][1][2].is_one() && n[1][1][1].is_zero());
    }

    #[test]
    fn rank_one() {
        let md = catalog::lookup("su2:0").unwrap();
        assert_eq!(md.global_dim(), &CycloNumber::one());
        let sp = md.spectrum().unwrap();
        assert!(sp[0].norm_sq.is_one());
        assert_eq!(md.spectral_idempotent(&sp[0]).unwrap(), md.ring().unit());
        assert_eq!(md.tube_idempotent(0).unwrap(), md.ring().unit());
        assert!(md.verlinde().unwrap()[0][0][0].is_one());
    }

    #[test]
    fn fibonacci_verlinde() {
        let md = catalog::lookup("fibonacci").unwrap();
        let n = md.verlinde().unwrap();
        assert!(n[1][1][1].is_one());
        assert!(n[1][1][0].is_one());
    }

    #[test]
    fn inconsistent_s_is_rejected() {
        let good = catalog::lookup("su2:1").unwrap();
        let s = CycloMatrix::from_fn(2, |i, j| {
            if i == 1 && j == 1 {
                CycloNumber::from_integer(2)
            } else {
                good.s().get(i, j).clone()
            }
        });
        let bad = ModularData::from_parts("bad", good.ring().clone(), s, good.t().to_vec()).unwrap();
        assert!(matches!(
            bad.verify(),
            Err(Error::ModularDataViolated { identity: "S^2 = d(C) C", .. })
        ));
        assert!(bad.verlinde().is_err());
    }
}
