use artin3_core::cohomology::{
    enumerate_central_extensions, extension_from_cocycle, extension_kernel, h2_basis,
    h2_basis_with_budget, h2_dims_dense, has_complement, hom_dim_c3, schur_multiplier_3rank,
    sylow_multiplier_argument, Cocycle2, DENSE_ORDER_LIMIT, SAMPLED_TRIPLES,
};
use artin3_core::group::{
    build_named_group, c9_semidirect_c3, cyclic, elementary_c3xc3, heisenberg3, is_isomorphic,
    named_group_corpus, p1, p3, quaternion, quotient, sl2_f3, Group,
};
use artin3_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn times_c3(g: &Group) -> Group {
    Group::direct_product(g, &cyclic(3).unwrap())
}

#[test]
fn h2_examples() {
    assert_eq!(h2_basis(&cyclic(3).unwrap()).unwrap().h2_dim, 1);
    assert_eq!(h2_basis(&quaternion()).unwrap().h2_dim, 0);
    assert_eq!(h2_basis(&p1()).unwrap().h2_dim, 1);
}

#[test]
fn dense_system_agrees_on_small_groups() {
    for g in named_group_corpus()
        .into_iter()
        .filter(|g| g.order() <= DENSE_ORDER_LIMIT)
    {
        let b = h2_basis(&g).unwrap();
        assert_eq!(
            h2_dims_dense(&g).unwrap(),
            (b.z2_dim, b.b2_dim, b.h2_dim),
            "{}",
            g.label()
        );
    }
    assert!(h2_dims_dense(&p1()).is_ok());
    assert!(h2_dims_dense(&j_like()).is_err());
}

fn j_like() -> Group {
    build_named_group("J", &[]).unwrap()
}

#[test]
fn basis_invariants_hold() {
    for g in [
        cyclic(3).unwrap(),
        elementary_c3xc3(),
        heisenberg3(),
        sl2_f3(),
        p1(),
        c9_semidirect_c3(),
    ] {
        let b = h2_basis(&g).unwrap();
        assert_eq!(b.h2_dim, b.z2_dim - b.b2_dim);
        assert_eq!(b.b2_dim, g.order() - 1 - b.hom_dim);
        assert_eq!(b.hom_dim, hom_dim_c3(&g).unwrap());
        assert_eq!(b.representatives.len(), b.h2_dim);
        for (i, f) in b.representatives.iter().enumerate() {
            f.check_identity_exhaustive().unwrap();
            assert!(!b.is_coboundary(f).unwrap());
            let mut unit = vec![0u8; b.h2_dim];
            unit[i] = 1;
            assert_eq!(b.coordinates(f).unwrap(), unit);
            for h in &b.representatives[i + 1..] {
                let diff = f.add(&h.scale(2)).unwrap();
                assert!(!b.is_coboundary(&diff).unwrap());
            }
        }
    }
}

#[test]
fn zero_cocycle_gives_direct_product() {
    for g in [quaternion(), elementary_c3xc3(), p1()] {
        let gamma = extension_from_cocycle(&Cocycle2::zero(&g)).unwrap();
        assert!(is_isomorphic(&gamma, &times_c3(&g)));
        assert!(has_complement(&gamma));
    }
}

#[test]
fn nontrivial_class_on_c3_gives_c9() {
    let g = cyclic(3).unwrap();
    let b = h2_basis(&g).unwrap();
    let gamma = extension_from_cocycle(&b.representatives[0]).unwrap();
    assert_eq!(gamma.order(), 9);
    assert!(is_isomorphic(&gamma, &cyclic(9).unwrap()));
}

#[test]
fn extension_kernel_is_central_with_quotient_g() {
    let g = p1();
    let b = h2_basis(&g).unwrap();
    let gamma = extension_from_cocycle(&b.representatives[0]).unwrap();
    assert!(gamma.verify().is_ok());
    let k = extension_kernel(&gamma);
    assert_eq!(k.order(), 3);
    for &z in k.members() {
        assert!((0..gamma.order()).all(|x| gamma.mul(x, z) == gamma.mul(z, x)));
    }
    let (q, _) = quotient(&gamma, &k).unwrap();
    assert!(is_isomorphic(&q, &g));
}

#[test]
fn quaternion_has_one_split_class() {
    let e = enumerate_central_extensions(&quaternion()).unwrap();
    assert_eq!(e.extensions.len(), 1);
    assert!(e.extensions[0].split);
}

#[test]
fn p1_classes_and_split_detection() {
    let g = p1();
    let e = enumerate_central_extensions(&g).unwrap();
    assert!(e.non_split_count() >= 1);
    let j_type: Vec<_> = e
        .extensions
        .iter()
        .filter(|x| x.degree3_count == 8)
        .collect();
    assert_eq!(j_type.len(), 1);
    assert!(!j_type[0].split);
    assert_eq!(j_type[0].group.order(), 108);
    // Every class, split or not, built fresh from its coordinates.
    let direct = times_c3(&g);
    for ext in &e.extensions {
        for coords in &ext.classes {
            let gamma = extension_from_cocycle(&e.basis.combination(coords).unwrap()).unwrap();
            assert_eq!(is_isomorphic(&gamma, &direct), has_complement(&gamma));
            assert_eq!(ext.split, has_complement(&gamma));
        }
    }
}

#[test]
fn p3_extensions() {
    let g = p3();
    let e = enumerate_central_extensions(&g).unwrap();
    // One dimension from the multiplier, one from Ext(P3^ab = C3, C3).
    assert_eq!(e.basis.h2_dim, 2);
    assert_eq!(e.extensions.iter().filter(|x| x.split).count(), 1);
    for ext in e.non_split() {
        assert_eq!(ext.group.order(), 648);
    }
    // The stem covers (kernel inside the derived subgroup) carry the degree-3
    // counts; every pair of classes has a recorded separating invariant.
    let stem: Vec<_> = e.non_split().filter(|x| x.stem).collect();
    assert_eq!(stem.len(), 3);
    assert!(stem.iter().all(|x| x.degree3_count == 7));
    let k = e.extensions.len();
    assert_eq!(e.separations.len(), k * (k - 1) / 2);
}

#[test]
fn sampled_identity_on_order_648() {
    let g = p3();
    let b = h2_basis(&g).unwrap();
    let gamma = extension_from_cocycle(&b.representatives[0]).unwrap();
    assert_eq!(gamma.order(), 648);
    // Pull a cocycle of P3 back along Γ -> P3, (g, s) -> g.
    let f = &b.representatives[0];
    let n = gamma.order();
    let mut values = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            values[x * n + y] = f.value(x / 3, y / 3);
        }
    }
    let pulled = Cocycle2::new(&gamma, values).unwrap();
    pulled
        .check_identity_sampled(SAMPLED_TRIPLES, 0xC0C1)
        .unwrap();
}

#[test]
fn schur_ranks() {
    assert_eq!(schur_multiplier_3rank(&p1()).unwrap(), 1);
    assert_eq!(schur_multiplier_3rank(&p3()).unwrap(), 1);
    assert_eq!(schur_multiplier_3rank(&elementary_c3xc3()).unwrap(), 1);
    assert_eq!(schur_multiplier_3rank(&cyclic(9).unwrap()).unwrap(), 0);
}

#[test]
fn sylow_contributions() {
    let r = sylow_multiplier_argument(&p3()).unwrap();
    let by_q: Vec<(usize, usize, usize)> = r
        .iter()
        .map(|c| (c.q, c.sylow.order(), c.sylow_h2_3rank))
        .collect();
    // The extraspecial group 3^{1+2} of exponent 3 has multiplier C3 x C3.
    assert_eq!(by_q, vec![(2, 8, 0), (3, 27, 2)]);
    let r = sylow_multiplier_argument(&p1()).unwrap();
    let three = r.iter().find(|c| c.q == 3).unwrap();
    assert!(is_isomorphic(
        &three.sylow.to_group(None).0,
        &elementary_c3xc3()
    ));
    assert_eq!(three.sylow_h2_3rank, 1);
    for c in sylow_multiplier_argument(&cyclic(12).unwrap()).unwrap() {
        assert_eq!(c.sylow_h2_3rank, 0);
    }
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(
        h2_basis_with_budget(&p3(), 1024),
        Err(Error::Budget(_))
    ));
    let big = Group::direct_product(&p3(), &cyclic(4).unwrap());
    assert!(matches!(h2_basis(&big), Err(Error::Budget(_))));
}

#[test]
fn serialization_round_trip_and_integrity() {
    let g = sl2_f3();
    let f = h2_basis(&elementary_c3xc3()).unwrap().representatives[0].clone();
    let text = f.serialize();
    let back = Cocycle2::parse(f.group(), &text).unwrap();
    assert_eq!(back.values(), f.values());
    assert!(Cocycle2::parse(&g, &text).is_err());
    // Flip one value away from the normalized border.
    let n = f.group().order();
    let mut vals = f.values().to_vec();
    let k = 4 * n + 5;
    vals[k] = (vals[k] + 1) % 3;
    assert!(matches!(
        Cocycle2::new(f.group(), vals),
        Err(Error::CocycleIdentity { .. })
    ));
}

fn fixture(idx: usize) -> Group {
    let list = [
        cyclic(3).unwrap(),
        elementary_c3xc3(),
        heisenberg3(),
        p1(),
        sl2_f3(),
        c9_semidirect_c3(),
    ];
    list[idx % list.len()].clone()
}

fn shuffled(g: &Group, seed: u64) -> Group {
    use rand::seq::SliceRandom;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rest: Vec<usize> = (1..g.order()).collect();
    rest.shuffle(&mut rng);
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    g.relabeled(&perm).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn h2_dim_is_invariant_under_relabeling(idx in 0usize..6, seed in any::<u64>()) {
        let g = fixture(idx);
        let h = shuffled(&g, seed);
        let a = h2_basis(&g).unwrap();
        let b = h2_basis(&h).unwrap();
        prop_assert_eq!((a.z2_dim, a.b2_dim, a.h2_dim), (b.z2_dim, b.b2_dim, b.h2_dim));
    }

    #[test]
    fn cohomologous_cocycles_give_isomorphic_extensions(idx in 0usize..6, seed in any::<u64>(), which in any::<u8>()) {
        let g = fixture(idx);
        let basis = h2_basis(&g).unwrap();
        let f = if basis.h2_dim == 0 {
            Cocycle2::zero(&g)
        } else {
            basis.representatives[which as usize % basis.h2_dim].scale(1 + which % 2)
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut h: Vec<u8> = (0..g.order()).map(|_| rng.gen_range(0..3)).collect();
        h[0] = 0;
        let perturbed = f.add(&Cocycle2::coboundary(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(basis.coordinates(&f).unwrap(), basis.coordinates(&perturbed).unwrap());
        let a = extension_from_cocycle(&f).unwrap();
        let b = extension_from_cocycle(&perturbed).unwrap();
        prop_assert!(b.verify().is_ok());
        prop_assert!(is_isomorphic(&a, &b));
    }
}
