use std::sync::Arc;

use fuselab::catalog;
use fuselab::invariant::{
    commutant_basis, commutant_basis_s_only, diagonal_profile_as_z, enumerate_invariants_with_cap, match_diagonal,
    rep_dimension, tm_dimension_report, verify_invariant, CommutantBasis, DEFAULT_SEARCH_CAP,
};
use fuselab::nimrep::{ade_cases, multiplicity_profile, su2_nimrep_from_graph};
use fuselab::{BoundaryGraph, CycloNumber, Error, IntMatrix, ModularData, NimRep};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn md(id: &str) -> Arc<ModularData> {
    catalog::lookup(id).unwrap()
}

fn nimrep(spec: &str, level: usize) -> NimRep {
    su2_nimrep_from_graph(&BoundaryGraph::from_spec(spec).unwrap(), level).unwrap()
}

/// `sum_blocks |sum_{a in block} chi_a|^2`.
fn block_invariant(n: usize, blocks: &[&[usize]]) -> IntMatrix {
    let mut z = IntMatrix::zeros(n, n);
    for b in blocks {
        for &i in *b {
            for &j in *b {
                z[(i, j)] += 1;
            }
        }
    }
    z
}

fn e6_pattern() -> IntMatrix {
    block_invariant(11, &[&[0, 6], &[3, 7], &[4, 10]])
}

/// Dimension of the rational commutant from the numerical rank of the
/// maps `Z -> Z S' - S' Z` over every Galois conjugate `S'` of `S`,
/// restricted to the allowed positions. A rational `Z` commuting with `S`
/// commutes with each conjugate, and the joint solution space is defined
/// over the rationals.
fn float_commutant_dim(md: &ModularData, with_t: bool) -> usize {
    let n = md.rank();
    let order = (0..n)
        .flat_map(|i| (0..n).map(move |j| md.s().get(i, j).order() as i64))
        .fold(1, |a, b| a.lcm(&b));
    let conjugates: Vec<Vec<Vec<num_complex::Complex64>>> = (1..=order)
        .filter(|k| k.gcd(&order) == 1)
        .map(|k| (0..n).map(|i| (0..n).map(|j| md.s().get(i, j).galois(k).to_c64()).collect()).collect())
        .collect();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !with_t || md.t()[i] == md.t()[j])
        .collect();
    let block = 2 * n * n;
    let mut m = DMatrix::<f64>::zeros(block * conjugates.len(), unknowns.len());
    for (g, s) in conjugates.iter().enumerate() {
        for (u, &(p, q)) in unknowns.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let mut v = num_complex::Complex64::new(0.0, 0.0);
                    if p == i {
                        v += s[q][j];
                    }
                    if q == j {
                        v -= s[i][p];
                    }
                    m[(g * block + 2 * (i * n + j), u)] = v.re;
                    m[(g * block + 2 * (i * n + j) + 1, u)] = v.im;
                }
            }
        }
    }
    let rank = m.svd(false, false).rank(1e-8);
    unknowns.len() - rank
}

/// Basis element `k` cleared of denominators.
fn integral_element(cb: &CommutantBasis, k: usize) -> IntMatrix {
    let n = cb.size();
    let e = cb.element(k);
    let l = e.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&e[i * n + j] * num_rational::BigRational::from_integer(l.clone())).to_integer().to_i64().unwrap())
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

#[test]
fn rep_dimension_examples() {
    let m = md("su2:1");
    assert_eq!(rep_dimension(&[2, 0], &m).unwrap(), CycloNumber::from_integer(2));
    assert!(rep_dimension(&[0, 0], &m).unwrap().is_zero());
    assert_eq!(rep_dimension(&[4, 0], &m).unwrap(), CycloNumber::from_integer(4));
    assert!(matches!(rep_dimension(&[1], &m), Err(Error::ShapeMismatch(_))));
    // Z_3 is not self-dual: chi = e_1 pairs with d(x_2)
    let z3 = md("zn:3");
    assert_eq!(rep_dimension(&[0, 1, 0], &z3).unwrap(), z3.d()[2]);
}

#[test]
fn tm_dimension_examples() {
    for (fam, level) in ade_cases() {
        let m = md(&format!("su2:{level}"));
        let r = tm_dimension_report(&nimrep(&fam.spec(), level), &m).unwrap();
        assert_eq!(r.mult_of_unit, 1, "{fam}");
        assert_eq!(&r.d_tm, m.global_dim(), "{fam}");
        assert!(r.indecomposable && r.chain_holds && r.consistent());
    }
    let m = md("su2:1");
    let r = tm_dimension_report(&nimrep("A:2+A:2", 1), &m).unwrap();
    assert_eq!(r.mult_of_unit, 2);
    assert_eq!(r.d_tm, m.global_dim().scale(2));
    assert!(!r.indecomposable && !r.unit_multiplicity_one && !r.dimension_is_global);
    assert!(r.chain_holds && r.consistent());

    for id in catalog::standard_ids() {
        let m = md(&id);
        let r = tm_dimension_report(&NimRep::regular(m.ring()), &m).unwrap();
        assert_eq!(r.mult_of_unit, 1, "{id}");
        assert!(r.chain_holds && r.consistent(), "{id}");
    }
}

#[test]
fn tm_verdicts_agree_on_random_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases: Vec<_> = ade_cases().into_iter().filter(|(_, l)| *l <= 10).collect();
    for _ in 0..60 {
        let (fam, level) = &cases[rng.gen_range(0..cases.len())];
        let same: Vec<_> = ade_cases().into_iter().filter(|(_, l)| l == level).collect();
        let k = rng.gen_range(1..=3);
        let spec: Vec<String> = std::iter::once(fam.spec())
            .chain((1..k).map(|_| same[rng.gen_range(0..same.len())].0.spec()))
            .collect();
        let m = md(&format!("su2:{level}"));
        let r = tm_dimension_report(&nimrep(&spec.join("+"), *level), &m).unwrap();
        assert_eq!(r.mult_of_unit, k as i64);
        assert!(r.chain_holds && r.consistent(), "{spec:?}");
    }
}

#[test]
fn diagonal_profiles() {
    for level in 1..=12 {
        let p = diagonal_profile_as_z(&nimrep(&format!("A:{}", level + 1), level), &md(&format!("su2:{level}"))).unwrap();
        assert_eq!(p.diagonal(), vec![1; level + 1]);
        assert_eq!(p.get(0, 1), None);
    }
    let p = diagonal_profile_as_z(&nimrep("D:4", 4), &md("su2:4")).unwrap();
    assert_eq!(p.diagonal(), vec![1, 0, 2, 0, 1]);
    assert_eq!(p.get(2, 2), Some(2));
    let p = diagonal_profile_as_z(&nimrep("E:6", 10), &md("su2:10")).unwrap();
    let nonzero: Vec<usize> = (0..11).filter(|&i| p.diagonal()[i] != 0).collect();
    assert_eq!(nonzero, vec![0, 3, 4, 6, 7, 10]);
    assert!(p.diagonal().iter().all(|&v| v <= 1));

    // off-diagonal positions stay unknown even when the dual is nontrivial
    let z3 = md("zn:3");
    let p = diagonal_profile_as_z(&NimRep::regular(z3.ring()), &z3).unwrap();
    assert_eq!(p.get(1, 2), Some(1));
    assert_eq!(p.get(1, 1), None);
}

#[test]
fn verify_examples() {
    for id in catalog::standard_ids() {
        let m = md(&id);
        assert!(verify_invariant(&IntMatrix::identity(m.rank()), &m).unwrap().passed(), "{id}");
    }
    let m = md("su2:10");
    assert!(verify_invariant(&e6_pattern(), &m).unwrap().passed());

    let mut z = IntMatrix::identity(11);
    z[(0, 0)] = 2;
    let v = verify_invariant(&z, &m).unwrap();
    assert!(!v.z00.passed && v.integrality.passed && v.t_compatibility.passed);
    // diag(2, 1, ..., 1) is not in the commutant
    assert!(!v.s_commutation.passed);

    // at level 10, t_1 != t_2 while t_1 = t_9
    let mut z = IntMatrix::identity(11);
    z[(1, 2)] = 1;
    z[(1, 9)] = 1;
    let v = verify_invariant(&z, &m).unwrap();
    assert_eq!(v.t_compatibility.witness, Some((1, 2)));
    assert!(!v.s_commutation.passed);

    let mut z = IntMatrix::identity(11);
    z[(2, 2)] = -1;
    let v = verify_invariant(&z, &m).unwrap();
    assert_eq!(v.integrality.witness, Some((2, 2)));

    assert!(matches!(verify_invariant(&IntMatrix::identity(3), &m), Err(Error::ShapeMismatch(_))));
}

#[test]
fn s_commutation_witness_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = md("su2:4");
    for _ in 0..40 {
        let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.gen_range(0..=1)).collect()).collect();
        let z = IntMatrix::from_rows(&rows);
        let zs = fuselab::linalg::int_times_cyclo(&z, m.s());
        let sz = fuselab::linalg::cyclo_times_int(m.s(), &z);
        let want = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).find(|&(i, j)| zs.get(i, j) != sz.get(i, j));
        assert_eq!(verify_invariant(&z, &m).unwrap().s_commutation.witness, want);
    }
}

#[test]
fn commutant_examples() {
    let m1 = md("su2:1");
    assert_eq!(commutant_basis_s_only(&m1).dim(), 2);
    assert_eq!(commutant_basis(&m1).dim(), 1);
    assert_eq!(commutant_basis(&md("su2:0")).dim(), 1);
    assert_eq!(commutant_basis_s_only(&md("su2:0")).dim(), 1);

    let cb = commutant_basis(&md("su2:10"));
    assert!(cb.dim() >= 2);
    assert!(cb.contains(&e6_pattern()));
    assert!(cb.contains(&IntMatrix::identity(11)));
    let mut not_in = IntMatrix::identity(11);
    not_in[(2, 2)] = 2;
    assert!(!cb.contains(&not_in));
}

#[test]
fn commutant_dimensions_match_the_float_oracle() {
    let mut ids: Vec<String> = (0..=12).map(|l| format!("su2:{l}")).collect();
    ids.extend(["fibonacci", "ising", "zn:2", "zn:3", "zn:4", "zn:5", "zn:6", "zn:7", "zn:8"].map(String::from));
    for id in ids {
        let m = md(&id);
        for with_t in [true, false] {
            let cb = if with_t { commutant_basis(&m) } else { commutant_basis_s_only(&m) };
            assert_eq!(cb.dim(), float_commutant_dim(&m, with_t), "{id} with_t = {with_t}");
            for k in 0..cb.dim() {
                let z = integral_element(&cb, k);
                let v = verify_invariant(&z, &m).unwrap();
                assert!(v.s_commutation.passed, "{id} element {k}");
                if with_t {
                    assert!(v.t_compatibility.passed, "{id} element {k}");
                }
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    let found = enumerate_invariants_with_cap(&md("su2:1"), 1, DEFAULT_SEARCH_CAP).unwrap();
    assert!(found.iter().any(|z| z.z() == &IntMatrix::identity(2)));

    let m = md("su2:10");
    let found = enumerate_invariants_with_cap(&m, 1, DEFAULT_SEARCH_CAP).unwrap();
    assert!(found.iter().any(|z| z.z() == &IntMatrix::identity(11)));
    let e6 = diagonal_profile_as_z(&nimrep("E:6", 10), &m).unwrap().diagonal();
    assert!(found.iter().any(|z| z.dual_diagonal(&m) == e6));
    assert!(found.iter().any(|z| z.z() == &e6_pattern()));

    let m = md("su2:2");
    let found = enumerate_invariants_with_cap(&m, 1, DEFAULT_SEARCH_CAP).unwrap();
    assert!(found.iter().any(|z| z.z() == &IntMatrix::identity(3)));
    for z in &found {
        assert!(verify_invariant(z.z(), &m).unwrap().passed());
    }

    assert!(matches!(
        enumerate_invariants_with_cap(&m, 0, DEFAULT_SEARCH_CAP),
        Err(Error::InvalidArgument(_))
    ));
    assert_eq!(
        enumerate_invariants_with_cap(&md("su2:16"), 3, 10).unwrap_err(),
        Error::SearchBudgetExceeded(10)
    );
}

/// Every matrix with entries in `[0, bound]` and `Z_00 = 1`, filtered by
/// `verify_invariant`.
fn brute_force(m: &ModularData, bound: i64) -> Vec<IntMatrix> {
    let n = m.rank();
    let cells = n * n - 1;
    let total = (bound as u64 + 1).pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut data = vec![1i64];
        for _ in 0..cells {
            data.push((c % (bound as u64 + 1)) as i64);
            c /= bound as u64 + 1;
        }
        let z = IntMatrix::from_rows(&data.chunks(n).map(<[i64]>::to_vec).collect::<Vec<_>>());
        if verify_invariant(&z, m).unwrap().passed() {
            out.push(z);
        }
    }
    out.sort_by_key(|z| z.as_slice().to_vec());
    out
}

#[test]
fn enumeration_matches_brute_force_on_small_ranks() {
    for (id, bound) in [("su2:1", 3), ("su2:2", 2), ("ising", 2), ("fibonacci", 3), ("zn:3", 2), ("zn:4", 1), ("su2:3", 1)] {
        let m = md(id);
        let found: Vec<IntMatrix> = enumerate_invariants_with_cap(&m, bound, DEFAULT_SEARCH_CAP)
            .unwrap()
            .into_iter()
            .map(|z| z.z().clone())
            .collect();
        assert_eq!(found, brute_force(&m, bound), "{id} bound {bound}");
    }
}

#[test]
fn diagonal_matching() {
    for level in 1..=28 {
        let m = md(&format!("su2:{level}"));
        let r = match_diagonal(&IntMatrix::identity(level + 1), &nimrep(&format!("A:{}", level + 1), level), &m).unwrap();
        assert!(r.passed, "level {level}");
    }
    let m = md("su2:10");
    assert!(match_diagonal(&e6_pattern(), &nimrep("E:6", 10), &m).unwrap().passed);
    let r = match_diagonal(&IntMatrix::identity(5), &nimrep("D:4", 4), &md("su2:4")).unwrap();
    assert!(!r.passed);
    assert_eq!(r.first_mismatch, Some(1));
    assert_eq!(r.mismatches, vec![1, 2, 3]);
}

#[test]
fn every_ade_profile_is_realised_by_an_enumerated_invariant() {
    for (fam, level) in ade_cases() {
        let m = md(&format!("su2:{level}"));
        let nr = nimrep(&fam.spec(), level);
        let bound = *multiplicity_profile(&nr, &m).unwrap().iter().max().unwrap();
        let found = enumerate_invariants_with_cap(&m, bound, DEFAULT_SEARCH_CAP).unwrap();
        let mut seen = std::collections::HashSet::new();
        for z in &found {
            assert!(seen.insert(z.z().as_slice().to_vec()), "{fam}: duplicate");
            assert!(verify_invariant(z.z(), &m).unwrap().passed(), "{fam}");
        }
        assert!(
            found.iter().any(|z| match_diagonal(z.z(), &nr, &m).unwrap().passed),
            "{fam}: no enumerated invariant matches"
        );
    }
}
