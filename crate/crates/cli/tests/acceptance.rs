//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use actorkit::{
    alt_equations_space, bimultiplier_equations_space, catalog, evaluate_identity, extension_to_acting_morphism,
    external_weak_actor, inn_map, parse_identity, permutability_check, semidirect_product, usga, verify_bijection,
    z_center_actor_check, ActingMorphism, Algebra, Element, Field, Matrix, Preset, Scalar, Subspace, Variety,
    DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn unital_associative(field: Field) -> Vec<Algebra> {
    vec![
        catalog::ground_field(field),
        catalog::split_product(field),
        catalog::dual_numbers(field),
        catalog::matrix_algebra(field),
    ]
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for field in [Field::Rational, gf(5)] {
        for x in unital_associative(field) {
            let mut presets = vec![Preset::Assoc];
            if x.is_commutative(0) {
                presets.push(Preset::CAssoc);
            }
            for p in presets {
                let s = external_weak_actor(&x, &Variety::preset(p)).map_err(|e| e.to_string())?;
                let inn = inn_map(&x, &s).map_err(|e| e.to_string())?;
                ensure!(
                    s.dim() == x.dim(),
                    "{} over {field} in {p}: dim E(X) = {}, dim X = {}",
                    x.name(),
                    s.dim(),
                    x.dim()
                );
                ensure!(inn.bijective, "{} over {field} in {p}: Inn is not bijective", x.name());
                seen.push(format!("{}/{field}/{p}", x.name()));
            }
        }
    }
    Ok(format!("dim E(X) = dim X and Inn bijective on {} cases", seen.len()))
}

fn criterion_2() -> Outcome {
    let x = catalog::abelian(Field::Rational, 2);
    let s = external_weak_actor(&x, &Variety::preset(Preset::Assoc)).map_err(|e| e.to_string())?;
    ensure!(s.dim() == 8, "dim Bim = {}, expected 8", s.dim());
    ensure!(bimultiplier_equations_space(&x) == *s.subspace(), "E(X) differs from Bim(X)");
    let inn = inn_map(&x, &s).map_err(|e| e.to_string())?;
    ensure!(inn.rank == 0 && inn.kernel.len() == 2, "Inn has rank {}, expected the zero map", inn.rank);
    let basis = s.basis();
    let pair = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !permutability_check(&basis[i], &basis[j]));
    let (i, j) = pair.ok_or("every pair of bimultipliers is permutable")?;
    Ok(format!("dim Bim = 8, Inn = 0, permutability fails for basis pair (e{i}, e{j})"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let o = catalog::octonions(Field::Rational);
    ensure!(o.dim() == 8, "octonions have dim {}", o.dim());
    let witness = Variety::preset(Preset::Assoc).first_violation(&o).map_err(|e| e.to_string())?;
    let (_, t) = witness.ok_or("octonions passed the associativity check")?;
    let (a, b, c) = (o.basis_vector(t[0]), o.basis_vector(t[1]), o.basis_vector(t[2]));
    let lhs = o.multiply(&o.multiply(&a, &b, 0).unwrap(), &c, 0).unwrap();
    let rhs = o.multiply(&a, &o.multiply(&b, &c, 0).unwrap(), 0).unwrap();
    ensure!(lhs != rhs, "reported associator witness {t:?} vanishes");
    // Left and right alternative laws on every basis triple, unpolarized.
    let basis = o.basis_vectors();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let m = |u: &Element, v: &Element| o.multiply(u, v, 0).unwrap();
                let assoc = |u: &Element, v: &Element, w: &Element| sub(&m(&m(u, v), w), &m(u, &m(v, w)));
                ensure!(is_zero(&add(&assoc(x, y, z), &assoc(y, x, z))), "left alternative law fails");
                ensure!(is_zero(&add(&assoc(x, y, z), &assoc(x, z, y))), "right alternative law fails");
            }
        }
    }
    ensure!(Variety::preset(Preset::Alt).contains(&o).unwrap(), "octonions rejected by the alt preset");
    let s = external_weak_actor(&o, &Variety::preset(Preset::Alt)).map_err(|e| e.to_string())?;
    let inn = inn_map(&o, &s).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(s.dim() == 8, "dim E(O) = {}", s.dim());
    ensure!(inn.bijective, "Inn is not bijective");
    ensure!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    Ok(format!("associator witness {t:?}, dim E(O) = 8, Inn bijective, {:.2} s", elapsed.as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for field in [Field::Rational, gf(5)] {
        let assoc_family = [
            catalog::ground_field(field),
            catalog::split_product(field),
            catalog::dual_numbers(field),
            catalog::matrix_algebra(field),
            catalog::upper_triangular(field),
            catalog::abelian(field, 2),
            catalog::truncated_ideal(field),
            catalog::idempotent_line(field),
            catalog::nilpotent_line(field),
            catalog::quaternions(field),
        ];
        let assoc = Variety::preset(Preset::Assoc);
        let alt = Variety::preset(Preset::Alt);
        for x in &assoc_family {
            let s = external_weak_actor(x, &assoc).map_err(|e| e.to_string())?;
            ensure!(*s.subspace() == bimultiplier_equations_space(x), "Bim mismatch on {} over {field}", x.name());
            count += 1;
        }
        for x in assoc_family.iter().chain([catalog::octonions(field)].iter()) {
            let s = external_weak_actor(x, &alt).map_err(|e| e.to_string())?;
            ensure!(*s.subspace() == alt_equations_space(x), "Alt mismatch on {} over {field}", x.name());
            count += 1;
        }
    }
    Ok(format!("substituted identities agree with the hand-derived equations on {count} algebra/variety pairs"))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for x in [catalog::matrix_poisson(Field::Rational), catalog::zero_bracket_poisson(Field::Rational)] {
        let r = z_center_actor_check(&x).map_err(|e| e.to_string())?;
        let expected = if x.is_commutative(0) { x.dim() } else { 1 };
        let line = format!(
            "{}: dim [X] = {}, dim Z(X) = {} (expected {expected}), D-components vanish: {}, check: {}",
            x.name(),
            r.usga_dim,
            r.center_dim,
            r.der_components_vanish,
            r.pass
        );
        if !(r.pass && r.usga_dim == r.center_dim && r.center_dim == expected && r.der_components_vanish) {
            failures.push(line.clone());
        }
        lines.push(line);
    }
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let field = gf(2);
    let x = catalog::ground_field(field);
    let mut seen = Vec::new();
    for (b, expected) in [(catalog::idempotent_line(field), 2), (catalog::nilpotent_line(field), 1)] {
        for p in [Preset::CAssoc, Preset::Assoc] {
            let r = verify_bijection(&b, &x, &Variety::preset(p), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure!(
                r.split_extensions == expected && r.acting_morphisms == expected && r.matches,
                "{} in {p}: {} extensions, {} morphisms, expected {expected}",
                b.name(),
                r.split_extensions,
                r.acting_morphisms
            );
            seen.push(format!("{}/{p} = {expected}", b.name()));
        }
    }
    Ok(seen.join(", "))
}

fn add(u: &[Scalar], v: &[Scalar]) -> Element {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn sub(u: &[Scalar], v: &[Scalar]) -> Element {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

fn scale(c: &Scalar, v: &[Scalar]) -> Element {
    v.iter().map(|a| c * a).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn combine(coeffs: &[Scalar], vectors: &[Element], zero: Element) -> Element {
    coeffs.iter().zip(vectors).fold(zero, |acc, (c, v)| add(&acc, &scale(c, v)))
}

fn zero_bracket(a: &Algebra) -> Algebra {
    let (n, field) = (a.dim(), a.field());
    Algebra::from_fn(a.name(), field, a.basis_names().to_vec(), &["mul", "bracket"], |p, i, j| {
        if p == 0 {
            a.basis_product(0, i, j).to_vec()
        } else {
            vec![field.zero(); n]
        }
    })
}

/// Every linear map `B → X` that preserves all products, over a prime field.
fn morphisms(b: &Algebra, x: &Algebra) -> Vec<Matrix> {
    let field = x.field();
    let q = field.order().expect("finite field");
    let (m, n) = (b.dim(), x.dim());
    let mut out = Vec::new();
    for mut idx in 0..q.pow((m * n) as u32) {
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
        let ok = (0..b.num_products()).all(|p| {
            (0..m).all(|i| {
                (0..m).all(|j| {
                    combine(b.basis_product(p, i, j), &images, x.zero_element())
                        == x.multiply(&images[i], &images[j], p).unwrap()
                })
            })
        });
        if ok {
            out.push(Matrix::from_columns(field, n, &images));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let field = gf(5);
    let mut cases: Vec<(Algebra, Algebra, Preset, Vec<Matrix>)> = Vec::new();
    let small = [catalog::idempotent_line(field), catalog::nilpotent_line(field), catalog::ground_field(field)];
    let targets = [
        catalog::ground_field(field),
        catalog::split_product(field),
        catalog::dual_numbers(field),
        catalog::matrix_algebra(field),
        catalog::upper_triangular(field),
        catalog::quaternions(field),
    ];
    for b in &small {
        for x in &targets {
            let p = if x.is_commutative(0) { Preset::CAssoc } else { Preset::Assoc };
            cases.push((b.clone(), x.clone(), p, morphisms(b, x)));
        }
    }
    for b in [catalog::split_product(field), catalog::dual_numbers(field), catalog::abelian(field, 2)] {
        for x in [catalog::split_product(field), catalog::dual_numbers(field)] {
            let ms = morphisms(&b, &x);
            cases.push((b.clone(), x, Preset::CAssoc, ms));
        }
    }
    let o = catalog::octonions(field);
    for b in [catalog::idempotent_line(field), catalog::nilpotent_line(field)] {
        let ms = morphisms(&b, &o);
        cases.push((b, o.clone(), Preset::Alt, ms));
    }
    let zb = catalog::zero_bracket_poisson(field);
    for b in [zero_bracket(&catalog::idempotent_line(field)), zero_bracket(&catalog::nilpotent_line(field))] {
        let ms = morphisms(&b, &zb);
        cases.push((b, zb.clone(), Preset::Pois, ms));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for trial in 0..100 {
        let (b, x, p, ms) = &cases[rng.gen_range(0..cases.len())];
        ensure!(!ms.is_empty(), "no morphisms from {} to {}", b.name(), x.name());
        let psi = &ms[rng.gen_range(0..ms.len())];
        let v = Variety::preset(*p);
        let phi = ActingMorphism::inner(b, x, psi).map_err(|e| e.to_string())?;
        let e = semidirect_product(b, x, &phi, &v).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(v.contains(e.a()).unwrap(), "trial {trial}: {} fails the {p} identities", e.a().name());
        let back = if v.num_products() == 2 {
            extension_to_acting_morphism(&e, &usga(x).unwrap())
        } else {
            extension_to_acting_morphism(&e, &external_weak_actor(x, &v).unwrap())
        }
        .map_err(|err| format!("trial {trial}: {err}"))?;
        ensure!(back == phi, "trial {trial}: recovered actions differ for {} by {}", b.name(), x.name());
    }
    Ok(format!("100 random triples over GF5 from {} (B, X) pairs", cases.len()))
}

fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => {
            field.parse_scalar(&format!("{}/{}", rng.gen_range(-9i64..=9), rng.gen_range(1i64..=7))).unwrap()
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

fn random_vector(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Element {
    (0..n).map(|_| random_scalar(rng, field)).collect()
}

fn field_axioms(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for field in [Field::Rational, gf(2), gf(5), gf(4_294_967_291)] {
        for _ in 0..300 {
            let (a, b, c) = (random_scalar(rng, field), random_scalar(rng, field), random_scalar(rng, field));
            ensure!(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity fails in {field}");
            ensure!(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity fails in {field}");
            ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity fails in {field}");
            ensure!(&a + &b == &b + &a && &a * &b == &b * &a, "commutativity fails in {field}");
            ensure!(&a + &field.zero() == a && &a * &field.one() == a, "identities fail in {field}");
            ensure!((&a + &(-&a)).is_zero(), "additive inverse fails in {field}");
            if !a.is_zero() {
                ensure!((&a * &a.inv().unwrap()).is_one(), "multiplicative inverse fails in {field}");
            }
        }
    }
    Ok(())
}

fn rref_canonical(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for field in [Field::Rational, gf(5)] {
        for _ in 0..50 {
            let (n, k) = (rng.gen_range(1..7), rng.gen_range(0..5));
            let gens: Vec<Element> = (0..k).map(|_| random_vector(rng, field, n)).collect();
            let s = Subspace::span(field, n, gens.clone()).unwrap();
            // A different spanning set: random combinations plus the originals in reverse.
            let mut other: Vec<Element> =
                (0..k + 2).map(|_| combine(&random_vector(rng, field, k), &gens, vec![field.zero(); n])).collect();
            other.extend(gens.iter().rev().cloned());
            let t = Subspace::span(field, n, other).unwrap();
            ensure!(s == t, "two spanning sets of one subspace give different echelon forms over {field}");
            for row in s.basis() {
                let pivot = row.iter().position(|c| !c.is_zero()).ok_or("zero row in echelon basis")?;
                ensure!(row[pivot].is_one(), "pivot is not 1");
                let others = s.basis().iter().filter(|r| *r != row).all(|r| r[pivot].is_zero());
                ensure!(others, "pivot column not cleared");
            }
        }
    }
    Ok(())
}

fn multilinearity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let sources = [
        ("(x1*x2)*x3 - x1*(x2*x3)", catalog::octonions(gf(5))),
        ("(x1*x2)*x3 + (x2*x1)*x3 - x1*(x2*x3) - x2*(x1*x3)", catalog::matrix_algebra(Field::Rational)),
        ("[x1,x2*x3] - [x1,x2]*x3 - x2*[x1,x3]", catalog::matrix_poisson(gf(7))),
    ];
    for (src, a) in sources {
        let phi = parse_identity(src, a.num_products()).map_err(|e| e.to_string())?;
        let (field, n, d) = (a.field(), a.dim(), phi.degree());
        for _ in 0..20 {
            let args: Vec<Element> = (0..d).map(|_| random_vector(rng, field, n)).collect();
            let slot = rng.gen_range(0..d);
            let (u, c) = (random_vector(rng, field, n), random_scalar(rng, field));
            let mut mixed = args.clone();
            mixed[slot] = add(&scale(&c, &args[slot]), &u);
            let mut only_u = args.clone();
            only_u[slot] = u;
            let lhs = evaluate_identity(&phi, &a, &mixed).unwrap();
            let rhs = add(
                &scale(&c, &evaluate_identity(&phi, &a, &args).unwrap()),
                &evaluate_identity(&phi, &a, &only_u).unwrap(),
            );
            ensure!(lhs == rhs, "{src} is not linear in slot {slot} on {}", a.name());
        }
    }
    Ok(())
}

fn deterministic_cli() -> Result<usize, String> {
    let runs: [&[&str]; 6] = [
        &["actor", "compute", "--algebra", "oct", "--preset", "alt"],
        &["actor", "inn", "--algebra", "abelian2", "--preset", "assoc"],
        &["usga", "compute", "--algebra", "m2_poisson"],
        &["verify", "bijection", "--B", "idempotent_line", "--X", "field", "--preset", "cassoc", "--field", "GF2"],
        &["enumerate", "--B", "nilpotent_line", "--X", "split", "--preset", "cassoc", "--field", "GF3"],
        &["verify", "eq2", "--algebra", "abelian2"],
    ];
    for args in runs {
        let run = || -> Result<(Vec<u8>, Option<i32>), String> {
            let out = Command::new(env!("CARGO_BIN_EXE_actorkit"))
                .args(args)
                .args(["--format", "json"])
                .env_remove("ACTORKIT_BUDGET")
                .output()
                .map_err(|e| e.to_string())?;
            Ok((out.stdout, out.status.code()))
        };
        let (first, second) = (run()?, run()?);
        ensure!(first == second, "{args:?}: two runs differ");
        ensure!(serde_json::from_slice::<serde_json::Value>(&first.0).is_ok(), "{args:?}: output is not JSON");
    }
    Ok(runs.len())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    field_axioms(&mut rng)?;
    rref_canonical(&mut rng)?;
    multilinearity(&mut rng)?;
    let n = deterministic_cli()?;
    Ok(format!("field axioms, RREF canonical form, multilinearity, {n} CLI reports byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("unital associative actor is X", criterion_1),
        ("non-unital contrast", criterion_2),
        ("octonion actor", criterion_3),
        ("actor definitions agree", criterion_4),
        ("Poisson actor is Z(X)", criterion_5),
        ("bijection census over GF2", criterion_6),
        ("semidirect round trips", criterion_7),
        ("exactness and determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
