//! Modular invariants: dimension formulas for the full centre, diagonal
//! profiles, exact verification, the commutant of the modular data and a
//! bounded lattice search inside it.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, IntMatrix};
use crate::modular::ModularData;
use crate::nimrep::{multiplicity_profile, NimRep};
use crate::scalar::CycloNumber;

pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;
pub const DEFAULT_ENTRY_BOUND: i64 = 3;

/// `FUSELAB_SEARCH_CAP` if set and parseable, else [`DEFAULT_SEARCH_CAP`].
pub fn search_cap_from_env() -> u64 {
    std::env::var("FUSELAB_SEARCH_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_CAP)
}

fn check_square(z: &IntMatrix, md: &ModularData) -> Result<()> {
    let r = md.rank();
    if z.rows() != r || z.cols() != r {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix for rank {r} modular data",
            z.rows(),
            z.cols()
        )));
    }
    Ok(())
}

/// `sum_S chi[S] d(S*)`.
pub fn rep_dimension(chi: &[i64], md: &ModularData) -> Result<CycloNumber> {
    if chi.len() != md.rank() {
        return Err(Error::ShapeMismatch(format!(
            "character of length {} for rank {}",
            chi.len(),
            md.rank()
        )));
    }
    let d = md.d();
    Ok(CycloNumber::linear_combination(
        chi.iter().enumerate().map(|(s, &c)| (c, &d[md.dual(s)])),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TmReport {
    pub d_tm: CycloNumber,
    pub mult_of_unit: i64,
    pub global_dim: CycloNumber,
    /// The support graph of the NIM-rep is connected.
    pub indecomposable: bool,
    pub unit_multiplicity_one: bool,
    pub dimension_is_global: bool,
    /// `d(TM) = multOfUnit . d(C)`.
    pub chain_holds: bool,
}

impl TmReport {
    /// The three verdicts agree.
    pub fn consistent(&self) -> bool {
        self.indecomposable == self.unit_multiplicity_one && self.unit_multiplicity_one == self.dimension_is_global
    }
}

pub fn tm_dimension_report(nr: &NimRep, md: &ModularData) -> Result<TmReport> {
    let d_tm = rep_dimension(&nr.character(), md)?;
    let m0 = multiplicity_profile(nr, md)?[0];
    let global_dim = md.global_dim().clone();
    Ok(TmReport {
        chain_holds: d_tm == global_dim.scale(m0),
        indecomposable: nr.components().len() == 1,
        unit_multiplicity_one: m0 == 1,
        dimension_is_global: d_tm == global_dim,
        d_tm,
        mult_of_unit: m0,
        global_dim,
    })
}

/// Where a `Z` matrix came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    User,
    Enumerated,
    DiagonalBuilt,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::User => "user",
            Provenance::Enumerated => "enumerated",
            Provenance::DiagonalBuilt => "diagonal-built",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "user" => Some(Provenance::User),
            "enumerated" => Some(Provenance::Enumerated),
            "diagonal-built" => Some(Provenance::DiagonalBuilt),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMatrix {
    z: IntMatrix,
    provenance: Provenance,
}

impl InvariantMatrix {
    /// Square and non-negative.
    pub fn new(z: IntMatrix, provenance: Provenance) -> Result<Self> {
        if !z.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} invariant matrix", z.rows(), z.cols())));
        }
        if z.min_entry().is_some_and(|m| m < 0) {
            return Err(Error::InvalidArgument("invariant matrix has a negative entry".into()));
        }
        Ok(InvariantMatrix { z, provenance })
    }

    pub fn z(&self) -> &IntMatrix {
        &self.z
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `Z_{I, I*}` for each label.
    pub fn dual_diagonal(&self, md: &ModularData) -> Vec<i64> {
        (0..self.z.rows()).map(|i| self.z[(i, md.dual(i))]).collect()
    }
}

/// Only the `(I, I*)` entries are known; the rest is left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInvariant {
    entries: Vec<Vec<Option<i64>>>,
}

impl PartialInvariant {
    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Option<i64>>] {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::DiagonalBuilt
    }

    /// Known entries in label order.
    pub fn diagonal(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().find_map(|x| *x).expect("one known entry per row"))
            .collect()
    }
}

pub fn diagonal_profile_as_z(nr: &NimRep, md: &ModularData) -> Result<PartialInvariant> {
    let m = multiplicity_profile(nr, md)?;
    let r = md.rank();
    let mut entries = vec![vec![None; r]; r];
    for (i, v) in m.into_iter().enumerate() {
        entries[i][md.dual(i)] = Some(v);
    }
    Ok(PartialInvariant { entries })
}

/// One sub-verdict; the witness is the first failing position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub witness: Option<(usize, usize)>,
}

impl Check {
    fn from_witness(witness: Option<(usize, usize)>) -> Self {
        Check {
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVerdict {
    pub integrality: Check,
    pub z00: Check,
    pub s_commutation: Check,
    pub t_compatibility: Check,
}

impl InvariantVerdict {
    pub fn passed(&self) -> bool {
        self.integrality.passed && self.z00.passed && self.s_commutation.passed && self.t_compatibility.passed
    }
}

fn positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

pub fn verify_invariant(z: &IntMatrix, md: &ModularData) -> Result<InvariantVerdict> {
    check_square(z, md)?;
    let n = md.rank();
    let s = md.s();
    let t = md.t();
    let integrality = positions(n).find(|&(i, j)| z[(i, j)] < 0);
    let z00 = (z[(0, 0)] != 1).then_some((0, 0));
    let pos: Vec<(usize, usize)> = positions(n).collect();
    let s_comm = pos.par_iter().find_first(|&&(i, j)| {
        let zs = CycloNumber::linear_combination((0..n).map(|k| (z[(i, k)], s.get(k, j))));
        let sz = CycloNumber::linear_combination((0..n).map(|k| (z[(k, j)], s.get(i, k))));
        zs != sz
    });
    let t_comp = positions(n).find(|&(i, j)| z[(i, j)] != 0 && t[i] != t[j]);
    Ok(InvariantVerdict {
        integrality: Check::from_witness(integrality),
        z00: Check::from_witness(z00),
        s_commutation: Check::from_witness(s_comm.copied()),
        t_compatibility: Check::from_witness(t_comp),
    })
}

/// Rational span of the matrices commuting with `S`, optionally cut down
/// to the `T`-compatible ones. Element `k` is 1 at `free[k]`, 0 at every
/// other free position.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutantBasis {
    size: usize,
    with_t: bool,
    free: Vec<(usize, usize)>,
    basis: Vec<Vec<BigRational>>,
}

impl CommutantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn with_t(&self) -> bool {
        self.with_t
    }

    /// Positions whose entries coordinatise the span.
    pub fn free_positions(&self) -> &[(usize, usize)] {
        &self.free
    }

    /// Row-major entries of basis element `k`.
    pub fn element(&self, k: usize) -> &[BigRational] {
        &self.basis[k]
    }

    /// Coordinates of `z` in the basis, when it lies in the span.
    pub fn coordinates(&self, z: &IntMatrix) -> Option<Vec<BigInt>> {
        if z.rows() != self.size || z.cols() != self.size {
            return None;
        }
        let c: Vec<BigInt> = self.free.iter().map(|&(i, j)| BigInt::from(z[(i, j)])).collect();
        let n = self.size;
        let ok = positions(n).all(|(i, j)| {
            let v: BigRational = self
                .basis
                .iter()
                .zip(&c)
                .map(|(b, ck)| &b[i * n + j] * BigRational::from_integer(ck.clone()))
                .sum();
            v == BigRational::from_integer(z[(i, j)].into())
        });
        ok.then_some(c)
    }

    pub fn contains(&self, z: &IntMatrix) -> bool {
        self.coordinates(z).is_some()
    }
}

/// Matrices commuting with `S` with `Z_IJ = 0` whenever `t_I != t_J`.
pub fn commutant_basis(md: &ModularData) -> CommutantBasis {
    commutant(md, true)
}

/// Matrices commuting with `S` alone.
pub fn commutant_basis_s_only(md: &ModularData) -> CommutantBasis {
    commutant(md, false)
}

fn commutant(md: &ModularData, with_t: bool) -> CommutantBasis {
    let n = md.rank();
    let s = md.s();
    let t = md.t();
    let unknowns: Vec<(usize, usize)> = positions(n).filter(|&(i, j)| !with_t || t[i] == t[j]).collect();
    let mut index = vec![usize::MAX; n * n];
    for (u, &(p, q)) in unknowns.iter().enumerate() {
        index[p * n + q] = u;
    }
    let order = positions(n).fold(1u32, |acc, (i, j)| acc.lcm(&s.get(i, j).order()));
    let coords: Vec<Vec<BigRational>> = positions(n).map(|(i, j)| s.get(i, j).basis_coords(order)).collect();
    let phi = coords[0].len();

    // (Z S - S Z)_ij = sum_q Z_iq S_qj - sum_p S_ip Z_pj, one rational row
    // per basis coordinate of the field
    let rows: Vec<Vec<BigInt>> = positions(n)
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let mut eq = vec![vec![BigRational::zero(); unknowns.len()]; phi];
            for q in 0..n {
                let u = index[i * n + q];
                if u != usize::MAX {
                    for (r, x) in coords[q * n + j].iter().enumerate() {
                        eq[r][u] += x;
                    }
                }
            }
            for p in 0..n {
                let u = index[p * n + j];
                if u != usize::MAX {
                    for (r, x) in coords[i * n + p].iter().enumerate() {
                        eq[r][u] -= x;
                    }
                }
            }
            eq.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).map(clear_denominators)
        })
        .collect();

    let (free_cols, vecs) = nullspace(&rows, unknowns.len());
    let basis = vecs
        .into_iter()
        .map(|v| {
            let mut full = vec![BigRational::zero(); n * n];
            for (u, x) in v.into_iter().enumerate() {
                let (p, q) = unknowns[u];
                full[p * n + q] = x;
            }
            full
        })
        .collect();
    CommutantBasis {
        size: n,
        with_t,
        free: free_cols.into_iter().map(|u| unknowns[u]).collect(),
        basis,
    }
}

fn clear_denominators(row: Vec<BigRational>) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.into_iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// All `Z` with entries in `[0, bound]`, `Z_00 = 1`, commuting with `S` and
/// compatible with `T`, in lexicographic row-major order. The cap counts
/// visited lattice points.
pub fn enumerate_invariants(md: &ModularData, bound: i64) -> Result<Vec<InvariantMatrix>> {
    enumerate_invariants_with_cap(md, bound, search_cap_from_env())
}

pub fn enumerate_invariants_with_cap(md: &ModularData, bound: i64, cap: u64) -> Result<Vec<InvariantMatrix>> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("entry bound must be at least 1, got {bound}")));
    }
    let cb = commutant_basis(md);
    let search = Search::new(&cb, bound)?;
    let mut found = search.run(cap)?;
    found.sort();
    let n = cb.size;
    Ok(found
        .into_iter()
        .map(|entries| InvariantMatrix {
            z: IntMatrix::from_rows(&entries.chunks(n).map(<[i64]>::to_vec).collect::<Vec<_>>()),
            provenance: Provenance::Enumerated,
        })
        .collect())
}

/// Depth-first search over the free coordinates. Dependent entries are
/// tracked scaled by the common denominator `scale` and pruned by interval
/// bounds on what the remaining coordinates can still add.
struct Search {
    n: usize,
    scale: i128,
    /// Per free coordinate: its range and position.
    ranges: Vec<(i64, i64)>,
    free_pos: Vec<usize>,
    /// Dependent positions, their allowed range and integer coefficients.
    dep_pos: Vec<usize>,
    dep_range: Vec<(i128, i128)>,
    coef: Vec<Vec<i128>>,
    /// `rest[d][u]` = (min, max) that coordinates `d..` can add to `u`.
    rest: Vec<Vec<(i128, i128)>>,
}

impl Search {
    fn new(cb: &CommutantBasis, bound: i64) -> Result<Self> {
        let n = cb.size;
        let free_pos: Vec<usize> = cb.free.iter().map(|&(i, j)| i * n + j).collect();
        let range_of = |pos: usize| if pos == 0 { (1, 1) } else { (0, bound) };
        let ranges: Vec<(i64, i64)> = free_pos.iter().map(|&p| range_of(p)).collect();
        let dep_pos: Vec<usize> = (0..n * n)
            .filter(|p| !free_pos.contains(p) && cb.basis.iter().any(|b| !b[*p].is_zero()))
            .collect();
        let l = cb
            .basis
            .iter()
            .flat_map(|b| dep_pos.iter().map(move |&p| b[p].denom()))
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        let too_big = || Error::InvalidArgument("commutant coefficients are too large to enumerate".into());
        let scale = l.to_i128().ok_or_else(too_big)?;
        let coef: Vec<Vec<i128>> = dep_pos
            .iter()
            .map(|&p| {
                cb.basis
                    .iter()
                    .map(|b| (&b[p] * BigRational::from_integer(l.clone())).to_integer().to_i128().ok_or_else(too_big))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let dep_range: Vec<(i128, i128)> = dep_pos
            .iter()
            .map(|&p| {
                let (lo, hi) = range_of(p);
                (lo as i128 * scale, hi as i128 * scale)
            })
            .collect();
        let k = free_pos.len();
        let mut rest = vec![vec![(0i128, 0i128); dep_pos.len()]; k + 1];
        for d in (0..k).rev() {
            for u in 0..dep_pos.len() {
                let (lo, hi) = (ranges[d].0 as i128 * coef[u][d], ranges[d].1 as i128 * coef[u][d]);
                let (mn, mx) = rest[d + 1][u];
                rest[d][u] = (mn + lo.min(hi), mx + lo.max(hi));
            }
        }
        Ok(Search {
            n,
            scale,
            ranges,
            free_pos,
            dep_pos,
            dep_range,
            coef,
            rest,
        })
    }

    fn run(&self, cap: u64) -> Result<Vec<Vec<i64>>> {
        let visited = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        let (lo, hi) = self.ranges[0];
        let results: Vec<Vec<Vec<i64>>> = (lo..=hi)
            .into_par_iter()
            .map(|c0| {
                let mut st = Walk {
                    s: self,
                    cap,
                    visited: &visited,
                    abort: &abort,
                    local: 0,
                    coords: vec![0; self.free_pos.len()],
                    sums: vec![0; self.dep_pos.len()],
                    out: Vec::new(),
                };
                st.assign(0, c0);
                st.flush();
                st.out
            })
            .collect();
        if abort.load(Ordering::Relaxed) {
            return Err(Error::SearchBudgetExceeded(cap));
        }
        Ok(results.into_iter().flatten().collect())
    }
}

struct Walk<'a> {
    s: &'a Search,
    cap: u64,
    visited: &'a AtomicU64,
    abort: &'a AtomicBool,
    local: u64,
    coords: Vec<i64>,
    sums: Vec<i128>,
    out: Vec<Vec<i64>>,
}

impl Walk<'_> {
    fn flush(&mut self) {
        let total = self.visited.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.cap {
            self.abort.store(true, Ordering::Relaxed);
        }
    }

    fn assign(&mut self, d: usize, c: i64) {
        self.local += 1;
        if self.local >= 4096 {
            self.flush();
        }
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        let s = self.s;
        self.coords[d] = c;
        for u in 0..self.sums.len() {
            self.sums[u] += c as i128 * s.coef[u][d];
        }
        let feasible = (0..self.sums.len()).all(|u| {
            let (mn, mx) = s.rest[d + 1][u];
            let (lo, hi) = s.dep_range[u];
            self.sums[u] + mx >= lo && self.sums[u] + mn <= hi
        });
        if feasible {
            if d + 1 == s.free_pos.len() {
                self.emit();
            } else {
                let (lo, hi) = s.ranges[d + 1];
                for c in lo..=hi {
                    self.assign(d + 1, c);
                }
            }
        }
        for u in 0..self.sums.len() {
            self.sums[u] -= c as i128 * s.coef[u][d];
        }
    }

    fn emit(&mut self) {
        let s = self.s;
        if self.sums.iter().any(|v| v % s.scale != 0) {
            return;
        }
        let mut z = vec![0i64; s.n * s.n];
        for (k, &p) in s.free_pos.iter().enumerate() {
            z[p] = self.coords[k];
        }
        for (u, &p) in s.dep_pos.iter().enumerate() {
            z[p] = (self.sums[u] / s.scale) as i64;
        }
        self.out.push(z);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalMatch {
    pub passed: bool,
    pub diagonal: Vec<i64>,
    pub profile: Vec<i64>,
    pub first_mismatch: Option<usize>,
    pub mismatches: Vec<usize>,
}

/// `Z_{I, I*}` against the multiplicity profile of the NIM-rep.
pub fn match_diagonal(z: &IntMatrix, nr: &NimRep, md: &ModularData) -> Result<DiagonalMatch> {
    check_square(z, md)?;
    let profile = multiplicity_profile(nr, md)?;
    let diagonal: Vec<i64> = (0..md.rank()).map(|i| z[(i, md.dual(i))]).collect();
    let mismatches: Vec<usize> = (0..md.rank()).filter(|&i| diagonal[i] != profile[i]).collect();
    Ok(DiagonalMatch {
        passed: mismatches.is_empty(),
        first_mismatch: mismatches.first().copied(),
        mismatches,
        diagonal,
        profile,
    })
}
