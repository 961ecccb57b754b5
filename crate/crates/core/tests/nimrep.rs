use fuselab::catalog;
use fuselab::nimrep::{
    ade_cases, apply, d_eigenvector, multiplicity_profile, oracle, su2_nimrep_from_graph, verify_nimrep,
};
use fuselab::scalar::two_cos_pi;
use fuselab::{BoundaryGraph, CycloNumber, Error, FusionRing, GraphFamily, IntMatrix, NimRep};

fn md(level: usize) -> std::sync::Arc<fuselab::ModularData> {
    catalog::lookup(&format!("su2:{level}")).unwrap()
}

fn tadpole() -> BoundaryGraph {
    BoundaryGraph::new(
        vec!["a".into(), "b".into()],
        IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]),
        GraphFamily::Custom,
    )
    .unwrap()
}

#[test]
fn construction_examples() {
    let nr = su2_nimrep_from_graph(&BoundaryGraph::a(2).unwrap(), 1).unwrap();
    assert_eq!(nr.mat(1), &IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));

    let nr = su2_nimrep_from_graph(&BoundaryGraph::a(3).unwrap(), 2).unwrap();
    assert_eq!(
        nr.mat(2),
        &IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]])
    );

    let err = su2_nimrep_from_graph(&BoundaryGraph::a(2).unwrap(), 2).unwrap_err();
    assert!(matches!(err, Error::NotANimRep { .. }), "{err}");
}

#[test]
fn tadpole_fails_the_homomorphism_check() {
    // N(x_2) = A^2 - 1 = A, so N(x_1) N(x_2) = A^2 != N(x_1)
    let a = tadpole().adjacency().clone();
    let mats = vec![IntMatrix::identity(2), a.clone(), &(&a * &a) - &IntMatrix::identity(2)];
    assert_eq!(mats[2], a);
    match verify_nimrep(&fuselab::su2_fusion_ring(2), &mats).unwrap_err() {
        Error::NotANimRep { identity, witness } => {
            assert_eq!(identity, "homomorphism");
            assert_eq!(&witness[..2], &[1, 2]);
        }
        e => panic!("unexpected {e}"),
    }
    assert!(su2_nimrep_from_graph(&tadpole(), 2).is_err());
}

#[test]
fn verify_rejects_bad_shapes_and_entries() {
    let r = fuselab::su2_fusion_ring(1);
    assert!(matches!(
        verify_nimrep(&r, &[IntMatrix::identity(2)]),
        Err(Error::ShapeMismatch(_))
    ));
    assert!(matches!(
        verify_nimrep(&r, &[IntMatrix::identity(2), IntMatrix::identity(3)]),
        Err(Error::ShapeMismatch(_))
    ));
    let neg = IntMatrix::from_rows(&[vec![0, -1], vec![-1, 0]]);
    assert!(matches!(
        verify_nimrep(&r, &[IntMatrix::identity(2), neg]),
        Err(Error::NotANimRep { identity: "non-negative", .. })
    ));
    let asym = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
    assert!(matches!(
        verify_nimrep(&r, &[IntMatrix::identity(2), asym]),
        Err(Error::NotANimRep { identity: "duality", .. })
    ));
    let one = FusionRing::new(vec!["1".into()], vec![0], &[vec![vec![1]]]).unwrap();
    verify_nimrep(&one, &[IntMatrix::identity(1)]).unwrap();
}

#[test]
fn regular_nimreps() {
    for id in catalog::standard_ids() {
        let md = catalog::lookup(&id).unwrap();
        let nr = NimRep::regular(md.ring());
        verify_nimrep(md.ring(), nr.mats()).unwrap();
        assert_eq!(multiplicity_profile(&nr, &md).unwrap(), vec![1; md.rank()], "{id}");
        assert_eq!(nr.character()[0], md.rank() as i64);
    }
    assert_eq!(NimRep::regular(md(2).ring()).character(), vec![3, 0, 1]);
    assert_eq!(NimRep::regular(md(0).ring()).character(), vec![1]);
}

#[test]
fn characters_and_profiles() {
    let nr = su2_nimrep_from_graph(&BoundaryGraph::a(2).unwrap(), 1).unwrap();
    assert_eq!(nr.character(), vec![2, 0]);
    assert_eq!(multiplicity_profile(&nr, &md(1)).unwrap(), vec![1, 1]);
    let nr = su2_nimrep_from_graph(&BoundaryGraph::d(4).unwrap(), 4).unwrap();
    assert_eq!(multiplicity_profile(&nr, &md(4)).unwrap(), vec![1, 0, 2, 0, 1]);
    let nr = su2_nimrep_from_graph(&BoundaryGraph::e(6).unwrap(), 10).unwrap();
    assert_eq!(
        multiplicity_profile(&nr, &md(10)).unwrap(),
        vec![1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1]
    );
}

#[test]
fn profiles_match_the_eigen_oracle_on_every_ade_graph() {
    for (fam, level) in ade_cases() {
        let g = BoundaryGraph::from_family(&fam).unwrap();
        let nr = su2_nimrep_from_graph(&g, level).unwrap();
        let m = multiplicity_profile(&nr, &md(level)).unwrap();
        let want: Vec<i64> = oracle::su2_multiplicities(g.adjacency(), level)
            .unwrap()
            .into_iter()
            .map(|c| c as i64)
            .collect();
        assert_eq!(m, want, "{fam}");
        assert_eq!(m.iter().sum::<i64>(), g.len() as i64);
        // I -> level - I is the sign flip of the spectrum, a symmetry for
        // bipartite graphs; every Dynkin diagram is bipartite
        let rev: Vec<i64> = m.iter().rev().copied().collect();
        assert_eq!(rev, m, "{fam}");
    }
}

#[test]
fn wrong_levels_are_rejected() {
    for (fam, level) in ade_cases() {
        let g = BoundaryGraph::from_family(&fam).unwrap();
        for wrong in [level.saturating_sub(1), level + 1] {
            if wrong == level || wrong > 28 {
                continue;
            }
            assert!(su2_nimrep_from_graph(&g, wrong).is_err(), "{fam} at {wrong}");
        }
    }
}

#[test]
fn d_eigenvectors() {
    let nr = su2_nimrep_from_graph(&BoundaryGraph::a(3).unwrap(), 2).unwrap();
    let v = d_eigenvector(&nr, &md(2)).unwrap();
    assert_eq!(v, vec![CycloNumber::one(), two_cos_pi(1, 4), CycloNumber::one()]);

    let nr = su2_nimrep_from_graph(&BoundaryGraph::a(2).unwrap(), 1).unwrap();
    assert_eq!(d_eigenvector(&nr, &md(1)).unwrap(), vec![CycloNumber::one(); 2]);

    let g = BoundaryGraph::from_spec("A:2+A:2").unwrap();
    let nr = su2_nimrep_from_graph(&g, 1).unwrap();
    assert_eq!(d_eigenvector(&nr, &md(1)).unwrap_err(), Error::MultiplicityNotOne(2));

    for (fam, level) in ade_cases() {
        let g = BoundaryGraph::from_family(&fam).unwrap();
        let nr = su2_nimrep_from_graph(&g, level).unwrap();
        let md = md(level);
        let v = d_eigenvector(&nr, &md).unwrap();
        assert!(v[0].is_one());
        for a in 0..md.rank() {
            let want: Vec<CycloNumber> = v.iter().map(|x| x * &md.d()[a]).collect();
            assert_eq!(apply(nr.mat(a), &v), want, "{fam} a = {a}");
        }
        // Perron-Frobenius: the embedding is positive
        assert!(v.iter().all(|x| x.to_c64().re > 0.0));
    }
}

#[test]
fn direct_sums_add_profiles() {
    let a = su2_nimrep_from_graph(&BoundaryGraph::a(5).unwrap(), 4).unwrap();
    let d = su2_nimrep_from_graph(&BoundaryGraph::d(4).unwrap(), 4).unwrap();
    let s = a.direct_sum(&d).unwrap();
    verify_nimrep(s.ring(), s.mats()).unwrap();
    let md = md(4);
    let pa = multiplicity_profile(&a, &md).unwrap();
    let pd = multiplicity_profile(&d, &md).unwrap();
    let ps = multiplicity_profile(&s, &md).unwrap();
    assert_eq!(ps, pa.iter().zip(&pd).map(|(x, y)| x + y).collect::<Vec<_>>());
    assert_eq!(s.components().len(), 2);
    let other = su2_nimrep_from_graph(&BoundaryGraph::a(2).unwrap(), 1).unwrap();
    assert!(a.direct_sum(&other).is_err());
}
