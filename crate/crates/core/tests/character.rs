use artin3_core::character::{
    character_table, count_irreducibles_of_degree, fixed_subspace_dim, is_primitive,
    mackey_double_coset_norm, mackey_irreducible, TableRepr,
};
use artin3_core::cohomology::enumerate_central_extensions;
use artin3_core::group::{
    center, cyclic, frobenius21, j_group, named_group_corpus, p1, sylow_subgroup, Group, GroupHom,
    Subgroup,
};
use artin3_core::verify::check_frobenius_reciprocity;
use artin3_core::{Character, Cyclotomic};
use num_rational::Rational64;
use proptest::prelude::*;

fn degrees(g: &Group) -> Vec<usize> {
    character_table(g).unwrap().degrees()
}

fn projections(a: &Group, b: &Group, ab: &Group) -> (GroupHom, GroupHom) {
    let na = a.order();
    let to_a = GroupHom::new(ab, a, (0..ab.order()).map(|x| x % na).collect()).unwrap();
    let to_b = GroupHom::new(ab, b, (0..ab.order()).map(|x| x / na).collect()).unwrap();
    (to_a, to_b)
}

#[test]
fn cyclic_three_degrees() {
    assert_eq!(degrees(&cyclic(3).unwrap()), vec![1, 1, 1]);
}

#[test]
fn j_has_eight_degree_three_irreducibles() {
    assert_eq!(count_irreducibles_of_degree(&j_group(), 3).unwrap(), 8);
}

#[test]
fn p1_has_no_degree_three_irreducibles() {
    assert_eq!(count_irreducibles_of_degree(&p1(), 3).unwrap(), 0);
}

#[test]
fn inducing_trivial_character_from_whole_group() {
    let g = j_group();
    let chi = Character::trivial(&g)
        .induce(&GroupHom::identity(&g))
        .unwrap();
    assert_eq!(chi, Character::trivial(&g));
}

fn c7_in_f21() -> (Group, Group, GroupHom) {
    let g = frobenius21();
    let h = sylow_subgroup(&g, 7);
    let (hg, inc) = h.to_group(None);
    (g, hg, inc)
}

/// `⟨χ, χ⟩` summed element by element, without using classes.
fn brute_norm(chi: &Character) -> Rational64 {
    let g = chi.group();
    let mut s = Cyclotomic::zero();
    for x in 0..g.order() {
        s = s.add(&chi.at(x).mul(&chi.at(x).conj()));
    }
    s.to_rational().unwrap() / Rational64::from_integer(g.order() as i64)
}

#[test]
fn nontrivial_linear_of_c7_induces_irreducibly() {
    let (_, hg, inc) = c7_in_f21();
    let t = character_table(&hg).unwrap();
    for lambda in &t.irreducibles()[1..] {
        let ind = lambda.induce(&inc).unwrap();
        assert_eq!(ind.degree(), 3);
        assert_eq!(brute_norm(&ind), Rational64::from_integer(1));
        let report = mackey_irreducible(lambda, &inc).unwrap();
        assert!(report.irreducible);
        assert_eq!(report.direct_norm, report.double_coset_norm);
    }
}

#[test]
fn conjugate_characters_induce_equally() {
    let g = j_group();
    let h = sylow_subgroup(&g, 3);
    let (hg, inc) = h.to_group(None);
    let t = character_table(&hg).unwrap();
    for s in [1, 27, 54, 81] {
        for lambda in t.irreducibles() {
            let conj = lambda.conjugate_by(&inc, s).unwrap();
            assert_eq!(conj.induce(&inc).unwrap(), lambda.induce(&inc).unwrap());
        }
    }
    // A non-normal subgroup and its conjugate.
    let c4 = sylow_subgroup(&g, 2);
    let s = (0..g.order()).find(|&s| c4.conjugate_by(s) != c4).unwrap();
    let c4s = c4.conjugate_by(s);
    let (a, inc_a) = c4.to_group(None);
    let (b, inc_b) = c4s.to_group(None);
    for lambda in character_table(&a).unwrap().irreducibles() {
        // λ^s on sHs^-1: y -> λ(s^-1 y s).
        let values: Vec<Cyclotomic> = b
            .classes()
            .representatives()
            .into_iter()
            .map(|y| {
                let z = g.conjugate(g.inv(s), inc_b.apply(y));
                let x = (0..a.order()).find(|&x| inc_a.apply(x) == z).unwrap();
                lambda.at(x).clone()
            })
            .collect();
        let moved = Character::new(&b, values).unwrap();
        assert_eq!(
            moved.induce(&inc_b).unwrap(),
            lambda.induce(&inc_a).unwrap()
        );
    }
}

#[test]
fn irreducibles_are_orthonormal() {
    let t = character_table(&j_group()).unwrap();
    for (i, a) in t.irreducibles().iter().enumerate() {
        for (j, b) in t.irreducibles().iter().enumerate() {
            let ip = a.inner_product(b).unwrap();
            assert_eq!(ip, Rational64::from_integer((i == j) as i64));
        }
    }
}

#[test]
fn tensor_products_on_a_product_extension() {
    let gp = p1();
    let ext = enumerate_central_extensions(&gp).unwrap();
    let cover = ext
        .extensions
        .iter()
        .find(|e| e.degree3_count == 8)
        .expect("cover with eight degree-3 irreducibles");
    let e = cover.group.clone();
    let c3 = cyclic(3).unwrap();
    let prod = Group::direct_product(&e, &c3);
    let (to_e, to_c3) = projections(&e, &c3, &prod);
    let te = character_table(&e).unwrap();
    let tc = character_table(&c3).unwrap();
    let mut seen: Vec<Character> = Vec::new();
    for psi in te.of_degree(3) {
        for chi in tc.irreducibles() {
            let t = psi
                .restrict(&to_e)
                .unwrap()
                .tensor(&chi.restrict(&to_c3).unwrap())
                .unwrap();
            assert_eq!(t.degree(), 3);
            assert!(t.is_irreducible());
            assert!(!seen.contains(&t));
            seen.push(t);
        }
    }
    assert_eq!(seen.len(), 24);
    assert_eq!(count_irreducibles_of_degree(&prod, 3).unwrap(), 24);
    // Distinct restrictions to the two factors tell the 24 apart.
    let e_in = GroupHom::new(&e, &prod, (0..e.order()).collect()).unwrap();
    let c3_in = GroupHom::new(&c3, &prod, (0..3).map(|x| x * e.order()).collect()).unwrap();
    let mut keys: Vec<(Character, Character)> = seen
        .iter()
        .map(|t| (t.restrict(&e_in).unwrap(), t.restrict(&c3_in).unwrap()))
        .collect();
    let before = keys.len();
    keys.dedup();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            assert_ne!(keys[i], keys[j]);
        }
    }
    assert_eq!(keys.len(), before);
}

#[test]
fn restriction_of_induced_matches_mackey_formula() {
    let (g, hg, inc) = c7_in_f21();
    let th = character_table(&hg).unwrap();
    let transversal = Subgroup::from_members(&g, inc.images())
        .unwrap()
        .left_transversal();
    for lambda in &th.irreducibles()[1..] {
        let res = lambda.induce(&inc).unwrap().restrict(&inc).unwrap();
        // H is normal, so the double cosets are the cosets and the formula is
        // the sum of the conjugates λ^s.
        let mut expected = Character::zero(&hg);
        let mut conjugates = Vec::new();
        for &s in &transversal {
            let c = lambda.conjugate_by(&inc, s).unwrap();
            expected = expected.add(&c).unwrap();
            conjugates.push(c);
        }
        assert_eq!(res, expected);
        for (i, a) in conjugates.iter().enumerate() {
            assert!(a.is_linear());
            for b in &conjugates[i + 1..] {
                assert_ne!(a, b);
            }
        }
        let mult = th.decompose(&res).unwrap();
        assert_eq!(
            mult.iter()
                .filter(|m| **m == Rational64::from_integer(1))
                .count(),
            3
        );
        let (norm, cosets) = mackey_double_coset_norm(lambda, &inc).unwrap();
        assert_eq!(cosets, 3);
        assert_eq!(norm, Rational64::from_integer(1));
    }
}

#[test]
fn mackey_on_trivial_character_of_proper_subgroup() {
    let (_, hg, inc) = c7_in_f21();
    let report = mackey_irreducible(&Character::trivial(&hg), &inc).unwrap();
    assert!(!report.irreducible);
}

#[test]
fn mackey_rejects_nonlinear_input() {
    let g = j_group();
    let t = character_table(&g).unwrap();
    let psi = t.of_degree(3)[0];
    assert!(mackey_irreducible(psi, &GroupHom::identity(&g)).is_err());
}

#[test]
fn fixed_dims_of_j_under_c4() {
    let g = j_group();
    let c4 = sylow_subgroup(&g, 2);
    assert_eq!(c4.order(), 4);
    let t = character_table(&g).unwrap();
    let mut dims: Vec<u64> = t
        .of_degree(3)
        .iter()
        .map(|c| fixed_subspace_dim(c, &c4).unwrap())
        .collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![0, 0, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn trivial_subgroup_fixes_everything() {
    let g = j_group();
    let one = Subgroup::trivial(&g);
    for chi in character_table(&g).unwrap().irreducibles() {
        assert_eq!(fixed_subspace_dim(chi, &one).unwrap() as i64, chi.degree());
    }
}

#[test]
fn central_elements_fix_nothing_in_faithful_irreducibles() {
    let g = j_group();
    let z = center(&g);
    assert!(!z.is_trivial());
    let t = character_table(&g).unwrap();
    let faithful: Vec<&Character> = t
        .irreducibles()
        .iter()
        .filter(|c| c.kernel().is_trivial())
        .collect();
    assert!(!faithful.is_empty());
    for chi in faithful {
        for &x in z.members().iter().filter(|&&x| x != 0) {
            let h = Subgroup::generated_by(&g, &[x]);
            assert_eq!(fixed_subspace_dim(chi, &h).unwrap(), 0);
        }
    }
}

#[test]
fn primitivity_examples() {
    let f = frobenius21();
    for chi in character_table(&f).unwrap().of_degree(3) {
        let r = is_primitive(chi).unwrap();
        assert!(!r.primitive);
        let (h, psi) = r.witness.unwrap();
        let (_, inc) = h.to_group(None);
        assert_eq!(psi.induce(&inc).unwrap(), *chi);
    }
    let g = j_group();
    let t = character_table(&g).unwrap();
    for chi in t.of_degree(3) {
        assert!(is_primitive(chi).unwrap().primitive);
    }
    let lin = is_primitive(&t.irreducibles()[1]).unwrap();
    assert!(lin.primitive);
    assert!(lin.note.is_some());
}

#[test]
fn degree_counts() {
    assert_eq!(
        count_irreducibles_of_degree(&cyclic(4).unwrap(), 1).unwrap(),
        4
    );
    for d in degrees(&p1()) {
        assert_eq!(4 % d, 0, "degree {d}");
    }
}

#[test]
fn tables_of_corpus_are_exact() {
    for g in named_group_corpus() {
        let t = character_table(&g).unwrap();
        t.verify().unwrap();
        let sum: usize = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, g.order(), "{}", g.label());
        assert_eq!(t.len(), g.classes().len());
        for chi in t.irreducibles() {
            let n = chi.norm().unwrap();
            assert_eq!(n, Rational64::from_integer(1));
            for x in 0..g.order() {
                assert_eq!(*chi.at(g.inv(x)), chi.at(x).conj());
            }
        }
    }
}

#[test]
fn abelian_tables_are_dual_groups() {
    for g in named_group_corpus().into_iter().filter(|g| g.is_abelian()) {
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), g.order());
        for chi in t.irreducibles() {
            assert_eq!(chi.degree(), 1);
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(*chi.at(g.mul(x, y)), chi.at(x).mul(chi.at(y)));
                }
            }
        }
    }
}

#[test]
fn table_serialization_is_stable() {
    let t = character_table(&j_group()).unwrap();
    let a = t.to_json().unwrap();
    let b = character_table(&j_group()).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    let repr: TableRepr = serde_json::from_str(&a).unwrap();
    assert_eq!(repr, t.to_repr());
    assert_eq!(serde_json::to_string_pretty(&repr).unwrap(), a);
}

fn small_fixture(idx: usize) -> Group {
    let corpus: Vec<Group> = named_group_corpus()
        .into_iter()
        .filter(|g| g.order() <= 108)
        .collect();
    corpus[idx % corpus.len()].clone()
}

fn cyclo_strategy() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-3i64..4, 12).prop_map(|c| Cyclotomic::from_exponent_counts(12, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn frobenius_reciprocity_on_random_subgroups(idx in 0usize..64, picks in prop::collection::vec(any::<u16>(), 1..3)) {
        let g = small_fixture(idx);
        let gens: Vec<usize> = picks.iter().map(|&x| x as usize % g.order()).collect();
        let h = Subgroup::generated_by(&g, &gens);
        prop_assert!(check_frobenius_reciprocity(&g, &h).unwrap() > 0);
        let (hg, inc) = h.to_group(None);
        for lambda in character_table(&hg).unwrap().irreducibles() {
            prop_assert_eq!(lambda.induce(&inc).unwrap().degree(), lambda.degree() * h.index() as i64);
        }
    }

    #[test]
    fn fixed_dim_bounded_by_degree(idx in 0usize..64, pick in any::<u16>()) {
        let g = small_fixture(idx);
        let h = Subgroup::generated_by(&g, &[pick as usize % g.order()]);
        for chi in character_table(&g).unwrap().irreducibles() {
            let d = fixed_subspace_dim(chi, &h).unwrap() as i64;
            prop_assert!(d <= chi.degree());
            prop_assert_eq!(d == chi.degree(), h.is_subgroup_of(&chi.kernel()));
        }
    }

    #[test]
    fn cyclotomic_field_laws(a in cyclo_strategy(), b in cyclo_strategy(), c in cyclo_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.is_real(), a == a.conj());
        prop_assert!(a.mul(&a.conj()).is_real());
        prop_assert_eq!(a.galois(5).mul(&b.galois(5)), a.mul(&b).galois(5));
    }
}
