//! NIM-reps: non-negative integer matrix representations of a fusion ring.

pub mod graph;
pub mod oracle;

pub use graph::{ade_cases, BoundaryGraph, GraphFamily};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::linalg::IntMatrix;
use crate::modular::ModularData;
use crate::scalar::CycloNumber;

/// Matrices `N(a)` over boundary labels with `N(a)_ji` the multiplicity of
/// `j` in `a . i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NimRep {
    ring: FusionRing,
    labels: Vec<String>,
    mats: Vec<IntMatrix>,
}

fn not_nimrep(identity: &'static str, witness: Vec<usize>) -> Error {
    Error::NotANimRep { identity, witness }
}

/// Check non-negativity, `N(0) = 1`, `N(a*) = N(a)^T` and
/// `N(a) N(b) = sum_c N_ab^c N(c)`, in that order.
pub fn verify_nimrep(ring: &FusionRing, mats: &[IntMatrix]) -> Result<()> {
    let r = ring.rank();
    if mats.len() != r {
        return Err(Error::ShapeMismatch(format!("{} matrices for a rank-{r} ring", mats.len())));
    }
    let n = mats[0].rows();
    if let Some(a) = mats.iter().position(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "N({a}) is {}x{}, expected {n}x{n}",
            mats[a].rows(),
            mats[a].cols()
        )));
    }
    for (a, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if m[(i, j)] < 0 {
                    return Err(not_nimrep("non-negative", vec![a, i, j]));
                }
            }
        }
    }
    if let Some((i, j)) = mats[0].first_difference(&IntMatrix::identity(n)) {
        return Err(not_nimrep("unit", vec![0, i, j]));
    }
    for a in 0..r {
        if let Some((i, j)) = mats[ring.dual(a)].first_difference(&mats[a].transpose()) {
            return Err(not_nimrep("duality", vec![a, i, j]));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|a| (a..r).map(move |b| (a, b))).collect();
    let failure = pairs.par_iter().find_map_first(|&(a, b)| {
        let lhs = &mats[a] * &mats[b];
        let mut rhs = IntMatrix::zeros(n, n);
        for &(c, v) in ring.product(a, b) {
            rhs = &rhs + &mats[c].scaled(i64::from(v));
        }
        lhs.first_difference(&rhs).map(|(i, j)| vec![a, b, i, j])
    });
    match failure {
        Some(w) => Err(not_nimrep("homomorphism", w)),
        None => Ok(()),
    }
}

impl NimRep {
    /// Validating constructor.
    pub fn new(ring: FusionRing, labels: Vec<String>, mats: Vec<IntMatrix>) -> Result<Self> {
        verify_nimrep(&ring, &mats)?;
        if labels.len() != mats[0].rows() {
            return Err(Error::ShapeMismatch(format!(
                "{} boundary labels for {}x{} matrices",
                labels.len(),
                mats[0].rows(),
                mats[0].rows()
            )));
        }
        Ok(NimRep { ring, labels, mats })
    }

    /// The ring acting on itself.
    pub fn regular(ring: &FusionRing) -> Self {
        NimRep {
            labels: ring.labels().to_vec(),
            mats: ring.regular_matrices(),
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &IntMatrix {
        &self.mats[a]
    }

    /// Number of boundary labels.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Block-diagonal sum over the same ring.
    pub fn direct_sum(&self, other: &NimRep) -> Result<NimRep> {
        if self.ring != other.ring {
            return Err(Error::InvalidArgument("direct sum of NIM-reps over different rings".into()));
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("0.{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("1.{l}")));
        Ok(NimRep {
            ring: self.ring.clone(),
            labels,
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    /// Components of the support graph (union over all `N(a)`).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let refs: Vec<&IntMatrix> = self.mats.iter().collect();
        graph::components_of(&refs)
    }

    /// `chi[a] = tr N(a)`.
    pub fn character(&self) -> Vec<i64> {
        self.mats.iter().map(IntMatrix::trace).collect()
    }
}

/// Build `N(x_0) = 1`, `N(x_1) = A`, `N(x_{i+1}) = A N(x_i) - N(x_{i-1})` and
/// verify the result, including the truncation `A N(x_level) = N(x_{level-1})`.
pub fn su2_nimrep_from_graph(g: &BoundaryGraph, level: usize) -> Result<NimRep> {
    let ring = crate::fusion::su2_fusion_ring(level);
    let n = g.len();
    let a = g.adjacency();
    let mut mats = vec![IntMatrix::identity(n)];
    let mut prev = IntMatrix::zeros(n, n);
    for i in 0..level {
        let next = &(a * &mats[i]) - &prev;
        if let Some(pos) = next.as_slice().iter().position(|&x| x < 0) {
            return Err(not_nimrep("non-negative", vec![i + 1, pos / n, pos % n]));
        }
        prev = mats[i].clone();
        mats.push(next);
    }
    verify_nimrep(&ring, &mats)?;
    // only bites at level 0, where the ring has no x_1 to test A against
    let beyond = &(a * &mats[level]) - &prev;
    if let Some((p, q)) = beyond.first_difference(&IntMatrix::zeros(n, n)) {
        return Err(not_nimrep("truncation", vec![p, q]));
    }
    Ok(NimRep {
        ring,
        labels: g.vertices().to_vec(),
        mats,
    })
}

/// `m[I] = sum_S coeff_S(e_{lambda_I}) chi(S)`.
pub fn multiplicity_profile_from_character(chi: &[i64], md: &ModularData) -> Result<Vec<i64>> {
    if chi.len() != md.rank() {
        return Err(Error::ShapeMismatch(format!(
            "character of length {} for rank {}",
            chi.len(),
            md.rank()
        )));
    }
    let es = md.spectral_idempotents()?;
    es.iter()
        .enumerate()
        .map(|(label, e)| {
            let v = CycloNumber::linear_combination(chi.iter().copied().zip(e.coeffs()));
            match v.to_i64() {
                Some(m) if m >= 0 => Ok(m),
                _ => Err(Error::NonIntegralMultiplicity {
                    label,
                    value: v.to_string(),
                }),
            }
        })
        .collect()
}

/// Multiplicity of each `lambda_I` in the NIM-rep, as projector traces.
pub fn multiplicity_profile(nr: &NimRep, md: &ModularData) -> Result<Vec<i64>> {
    if nr.ring() != md.ring() {
        return Err(Error::InvalidArgument("NIM-rep and modular data use different rings".into()));
    }
    multiplicity_profile_from_character(&nr.character(), md)
}

/// Projector onto the `lambda_I` eigenspace, `sum_S coeff_S(e_{lambda_I}) N(S)`.
pub fn projector(nr: &NimRep, md: &ModularData, label: usize) -> Result<Vec<Vec<CycloNumber>>> {
    let e = &md.spectral_idempotents()?[label];
    let n = nr.size();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    CycloNumber::linear_combination(
                        nr.mats.iter().map(|m| m[(i, j)]).zip(e.coeffs()),
                    )
                })
                .collect()
        })
        .collect())
}

/// The common eigenvector of all `N(a)` with eigenvalue `d(a)`, scaled so its
/// first nonzero entry is 1. Requires the unit multiplicity to be 1.
pub fn d_eigenvector(nr: &NimRep, md: &ModularData) -> Result<Vec<CycloNumber>> {
    let m0 = multiplicity_profile(nr, md)?[0];
    if m0 != 1 {
        return Err(Error::MultiplicityNotOne(m0));
    }
    let p = projector(nr, md, 0)?;
    let n = nr.size();
    let col = (0..n)
        .find(|&j| (0..n).any(|i| !p[i][j].is_zero()))
        .expect("rank-one projector has a nonzero column");
    let v: Vec<CycloNumber> = (0..n).map(|i| p[i][col].clone()).collect();
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero column").inv()?;
    Ok(v.iter().map(|x| x * &lead).collect())
}

/// `N v` for an integer matrix and a cyclotomic vector.
pub fn apply(m: &IntMatrix, v: &[CycloNumber]) -> Vec<CycloNumber> {
    (0..m.rows())
        .map(|i| CycloNumber::linear_combination((0..m.cols()).map(|j| (m[(i, j)], &v[j]))))
        .collect()
}
