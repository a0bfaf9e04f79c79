mod common;

use actorkit::extension::{induced_actions, ActionTarget};
use actorkit::{
    catalog, enumerate_split_extensions, extension_to_acting_morphism, external_weak_actor, nullspace_basis,
    poisson_acting_check, semidirect_product, usga, verify_bijection, ActingMorphism, ActorElement, Algebra, Element,
    Field, Matrix, Preset, Variety, DEFAULT_BUDGET,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adds a zero bracket, turning a commutative associative algebra into a Poisson algebra.
fn with_zero_bracket(a: &Algebra) -> Algebra {
    let n = a.dim();
    let field = a.field();
    Algebra::from_fn(a.name(), field, a.basis_names().to_vec(), &["mul", "bracket"], |p, i, j| {
        if p == 0 {
            a.basis_product(0, i, j).to_vec()
        } else {
            vec![field.zero(); n]
        }
    })
}

fn preserves(b: &Algebra, x: &Algebra, images: &[Element]) -> bool {
    (0..b.num_products()).all(|p| {
        (0..b.dim()).all(|i| {
            (0..b.dim()).all(|j| {
                let lhs = b
                    .basis_product(p, i, j)
                    .iter()
                    .zip(images)
                    .fold(x.zero_element(), |acc, (c, y)| add(&acc, &scale(c, y)));
                lhs == x.multiply(&images[i], &images[j], p).unwrap()
            })
        })
    })
}

/// Every algebra morphism `B → X` over a small prime field, by brute force.
fn all_morphisms(b: &Algebra, x: &Algebra) -> Vec<Matrix> {
    let field = x.field();
    let q = field.order().unwrap();
    let (m, n) = (b.dim(), x.dim());
    let total = q.pow((m * n) as u32);
    (0..total)
        .filter_map(|mut idx| {
            let images: Vec<Element> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let d = idx % q;
                            idx /= q;
                            field.from_i64(d as i64)
                        })
                        .collect()
                })
                .collect();
            preserves(b, x, &images).then(|| Matrix::from_columns(field, n, &images))
        })
        .collect()
}

struct Case {
    b: Algebra,
    x: Algebra,
    variety: Preset,
    morphisms: Vec<Matrix>,
}

fn cases(field: Field) -> Vec<Case> {
    let mut out = Vec::new();
    let small_b = [catalog::idempotent_line(field), catalog::nilpotent_line(field), catalog::ground_field(field)];
    let unital_x = [
        catalog::ground_field(field),
        catalog::split_product(field),
        catalog::dual_numbers(field),
        catalog::matrix_algebra(field),
        catalog::upper_triangular(field),
        catalog::quaternions(field),
    ];
    for b in &small_b {
        for x in &unital_x {
            let variety = if x.is_commutative(0) { Preset::CAssoc } else { Preset::Assoc };
            out.push(Case { b: b.clone(), x: x.clone(), variety, morphisms: all_morphisms(b, x) });
        }
    }
    for b in [
        catalog::split_product(field),
        catalog::dual_numbers(field),
        catalog::truncated_ideal(field),
        catalog::abelian(field, 2),
    ] {
        for x in [catalog::split_product(field), catalog::dual_numbers(field)] {
            out.push(Case { b: b.clone(), x: x.clone(), variety: Preset::CAssoc, morphisms: all_morphisms(&b, &x) });
        }
    }
    for x in [catalog::matrix_algebra(field), catalog::upper_triangular(field), catalog::quaternions(field)] {
        let id = Matrix::identity(field, x.dim());
        out.push(Case { b: x.clone(), x, variety: Preset::Assoc, morphisms: vec![id] });
    }
    // Conjugation by an invertible matrix is an automorphism of M2.
    let m2 = catalog::matrix_algebra(field);
    let g = Matrix::from_i64(field, &[&[1, 1], &[0, 1]]);
    let g_inv = Matrix::from_i64(field, &[&[1, -1], &[0, 1]]);
    let conj: Vec<Element> = (0..4)
        .map(|j| {
            let e =
                Matrix::from_rows(field, 2, vec![m2.basis_vector(j)[..2].to_vec(), m2.basis_vector(j)[2..].to_vec()])
                    .unwrap();
            (&(&g * &e) * &g_inv).entries().to_vec()
        })
        .collect();
    out.push(Case {
        b: m2.clone(),
        x: m2,
        variety: Preset::Assoc,
        morphisms: vec![Matrix::from_columns(field, 4, &conj)],
    });
    let (h, o) = (catalog::quaternions(field), catalog::octonions(field));
    let inclusion = Matrix::from_columns(field, 8, &(0..4).map(|j| o.basis_vector(j)).collect::<Vec<_>>());
    out.push(Case { b: h, x: o.clone(), variety: Preset::Alt, morphisms: vec![inclusion] });
    let unit = Matrix::from_columns(field, 8, &[o.find_unit().unwrap()]);
    out.push(Case {
        b: catalog::idempotent_line(field),
        x: o.clone(),
        variety: Preset::Alt,
        morphisms: vec![unit, Matrix::zeros(field, 8, 1)],
    });
    out.push(Case { b: o.clone(), x: o, variety: Preset::Alt, morphisms: vec![Matrix::identity(field, 8)] });
    let zb = catalog::zero_bracket_poisson(field);
    let pb = with_zero_bracket(&catalog::idempotent_line(field));
    let pn = with_zero_bracket(&catalog::nilpotent_line(field));
    for b in [pb, pn] {
        out.push(Case { morphisms: all_morphisms(&b, &zb), b, x: zb.clone(), variety: Preset::Pois });
    }
    out
}

fn round_trip(b: &Algebra, x: &Algebra, v: &Variety, phi: &ActingMorphism) -> ActingMorphism {
    let e = semidirect_product(b, x, phi, v).unwrap_or_else(|err| panic!("{} by {}: {err}", b.name(), x.name()));
    assert!(v.contains(e.a()).unwrap());
    assert_eq!(e.k().matrix().image(), nullspace_basis(e.alpha().matrix()));
    assert_eq!(e.alpha().matrix() * e.beta().matrix(), Matrix::identity(b.field(), b.dim()));
    if v.num_products() == 2 {
        extension_to_acting_morphism(&e, &usga(x).unwrap()).unwrap()
    } else {
        extension_to_acting_morphism(&e, &external_weak_actor(x, v).unwrap()).unwrap()
    }
}

#[test]
fn hundred_random_semidirect_round_trips() {
    let field = gf(5);
    let cases = cases(field);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonzero = 0;
    for _ in 0..100 {
        let case = &cases[rng.gen_range(0..cases.len())];
        let psi = &case.morphisms[rng.gen_range(0..case.morphisms.len())];
        let phi = ActingMorphism::inner(&case.b, &case.x, psi).unwrap();
        nonzero += usize::from(!psi.is_zero());
        let v = Variety::preset(case.variety);
        assert_eq!(round_trip(&case.b, &case.x, &v, &phi), phi, "{} by {}", case.b.name(), case.x.name());
    }
    assert!(nonzero > 50, "sample is dominated by zero maps");
}

#[test]
fn every_morphism_into_unital_x_is_acting() {
    for case in cases(gf(5)) {
        let v = Variety::preset(case.variety);
        for psi in &case.morphisms {
            let phi = ActingMorphism::inner(&case.b, &case.x, psi).unwrap();
            if v.num_products() == 1 {
                // Permutability is (a x) b = a (x b), which only associativity guarantees.
                let nonzero_pairs = psi.rank() > 0 && case.b.dim() > 0;
                if v.is_associative_type() || !nonzero_pairs {
                    assert!(phi.is_permutable());
                }
                assert!(phi.is_acting_for(&external_weak_actor(&case.x, &v).unwrap()));
            } else {
                assert!(poisson_acting_check(&phi));
                assert!(phi.is_acting_for(&usga(&case.x).unwrap()));
            }
        }
    }
}

#[test]
fn bijection_census_over_gf2() {
    let f = gf(2);
    let x = catalog::ground_field(f);
    for preset in [Preset::CAssoc, Preset::Assoc] {
        let v = Variety::preset(preset);
        for (b, expected) in [(catalog::idempotent_line(f), 2), (catalog::nilpotent_line(f), 1)] {
            let r = verify_bijection(&b, &x, &v, DEFAULT_BUDGET).unwrap();
            assert_eq!((r.split_extensions, r.acting_morphisms), (expected, expected), "{preset} {}", b.name());
            assert!(r.matches && r.witness.is_none());
        }
    }
}

#[test]
fn bijection_over_gf3_for_other_presets() {
    let f = gf(3);
    let x = catalog::ground_field(f);
    for preset in [Preset::Assoc, Preset::CAssoc, Preset::Alt] {
        let v = Variety::preset(preset);
        for b in [catalog::idempotent_line(f), catalog::nilpotent_line(f), catalog::abelian(f, 0)] {
            let r = verify_bijection(&b, &x, &v, DEFAULT_BUDGET).unwrap();
            assert!(r.matches, "{preset} {}: {r:?}", b.name());
        }
    }
    let r = verify_bijection(&catalog::split_product(f), &x, &Variety::preset(Preset::CAssoc), DEFAULT_BUDGET).unwrap();
    assert!(r.matches, "{r:?}");
    assert_eq!(r.split_extensions, 3);
    let xp = with_zero_bracket(&x);
    for b in [catalog::idempotent_line(f), catalog::nilpotent_line(f)] {
        let r = verify_bijection(&with_zero_bracket(&b), &xp, &Variety::preset(Preset::Pois), DEFAULT_BUDGET).unwrap();
        assert!(r.matches, "{r:?}");
    }
}

#[test]
fn zero_target_has_one_extension() {
    let f = gf(2);
    let zero = catalog::abelian(f, 0);
    for b in [catalog::split_product(f), catalog::idempotent_line(f)] {
        let r = verify_bijection(&b, &zero, &Variety::preset(Preset::Assoc), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.split_extensions, r.acting_morphisms, r.matches), (1, 1, true));
    }
}

#[test]
fn enumerated_extensions_are_extensions() {
    let f = gf(3);
    let v = Variety::preset(Preset::Assoc);
    let b = catalog::idempotent_line(f);
    let x = catalog::dual_numbers(f);
    let all = enumerate_split_extensions(&b, &x, &v, DEFAULT_BUDGET).unwrap();
    let expected = all_morphisms(&b, &x).len();
    assert_eq!(all.len(), expected);
    let s = external_weak_actor(&x, &v).unwrap();
    for e in &all {
        assert!(v.contains(e.a()).unwrap());
        assert!(extension_to_acting_morphism(e, &s).is_ok());
    }
}

#[test]
fn non_permutable_pair_into_abelian_poisson_actor() {
    let f = Q;
    let x = with_zero_bracket(&catalog::abelian(f, 2));
    let b = with_zero_bracket(&catalog::abelian(f, 2));
    let s = usga(&x).unwrap();
    assert_eq!(s.dim(), 12);
    let z = Matrix::zeros(f, 2, 2);
    let e12 = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
    let e21 = Matrix::from_i64(f, &[&[0, 0], &[1, 0]]);
    let phi = ActingMorphism::new(
        b.clone(),
        x.clone(),
        vec![ActorElement::new(e12, z.clone()), ActorElement::new(z.clone(), e21)],
        Some(vec![z.clone(), z]),
    )
    .unwrap();
    assert!(s.admits(&phi.actions()[0], phi.der().map(|d| &d[0])));
    assert!(!poisson_acting_check(&phi));
    assert!(poisson_acting_check(&ActingMorphism::zero(&b, &x)));
}

#[test]
fn octonion_inner_actions_are_not_permutable() {
    let o = catalog::octonions(Q);
    let f = ActorElement::inner(&o, &o.basis_vector(1));
    let g = ActorElement::inner(&o, &o.basis_vector(2));
    assert!(!actorkit::permutability_check(&f, &g));
}

#[test]
fn lie_semidirect_product_round_trip() {
    let x = catalog::nonabelian_lie2(Q);
    let v = Variety::preset(Preset::Lie);
    let s = external_weak_actor(&x, &v).unwrap();
    let b = catalog::nonabelian_lie2(Q);
    // ad: B → Der(X) is a Lie morphism.
    let actions: Vec<ActorElement> = (0..2)
        .map(|i| {
            let d = x.left_matrix(0, &x.basis_vector(i));
            ActorElement::new(d.clone(), -&d)
        })
        .collect();
    let phi = ActingMorphism::new(b.clone(), x.clone(), actions, None).unwrap();
    assert!(phi.is_acting_for(&s));
    let e = semidirect_product(&b, &x, &phi, &v).unwrap();
    assert_eq!(extension_to_acting_morphism(&e, &s).unwrap(), phi);
}

#[test]
fn identity_action_on_matrix_poisson_is_a_split_extension() {
    // A genuine Poisson extension whose action has a nonzero bracket part, so it
    // does not factor through the Lie center.
    let x = catalog::matrix_poisson(Q);
    let v = Variety::preset(Preset::Pois);
    let phi = ActingMorphism::inner(&x, &x, &Matrix::identity(Q, 4)).unwrap();
    let e = semidirect_product(&x, &x, &phi, &v).unwrap();
    let back = extension_to_acting_morphism(&e, &usga(&x).unwrap()).unwrap();
    assert_eq!(back, phi);
    assert!(back.der().unwrap().iter().any(|d| !d.is_zero()));
    assert_eq!(x.lie_center(1).unwrap().dim(), 1);
}

#[test]
fn induced_actions_of_product_extension_vanish() {
    let f = gf(5);
    let (b, x) = (catalog::split_product(f), catalog::matrix_algebra(f));
    let e = semidirect_product(&b, &x, &ActingMorphism::zero(&b, &x), &Variety::preset(Preset::Assoc)).unwrap();
    assert!(induced_actions(&e).unwrap().actions().iter().all(ActorElement::is_zero));
}
