//! Bundled example algebras.

use crate::algebra::{Algebra, Element};
use crate::scalar::Field;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The ground field as a 1-dimensional algebra.
pub fn ground_field(field: Field) -> Algebra {
    Algebra::from_integer_table("F", field, &["1"], &[("mul", &[(0, 0, 0, 1)])])
}

/// `𝔽 × 𝔽` with orthogonal idempotents `e1, e2`.
pub fn split_product(field: Field) -> Algebra {
    Algebra::from_integer_table("FxF", field, &["e1", "e2"], &[("mul", &[(0, 0, 0, 1), (1, 1, 1, 1)])])
}

/// `𝔽[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
    let basis = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra::from_fn(format!("F[x]/(x^{n})"), field, basis, &["mul"], |_, i, j| {
        let mut v = vec![field.zero(); n];
        if i + j < n {
            v[i + j] = field.one();
        }
        v
    })
}

/// The dual numbers `𝔽[x]/(x²)`.
pub fn dual_numbers(field: Field) -> Algebra {
    truncated_polynomial(field, 2).with_name("F[x]/(x^2)")
}

/// The non-unital ideal `⟨x, x²⟩` of `𝔽[x]/(x³)`.
pub fn truncated_ideal(field: Field) -> Algebra {
    Algebra::from_integer_table("<x,x^2> in F[x]/(x^3)", field, &["x", "x^2"], &[("mul", &[(0, 0, 1, 1)])])
}

/// `n`-dimensional algebra with zero product.
pub fn abelian(field: Field, n: usize) -> Algebra {
    Algebra::from_fn(format!("abelian{n}"), field, names("a", n), &["mul"], |_, _, _| vec![field.zero(); n])
}

/// A line spanned by an idempotent `b² = b`.
pub fn idempotent_line(field: Field) -> Algebra {
    Algebra::from_integer_table("idempotent line", field, &["b"], &[("mul", &[(0, 0, 0, 1)])])
}

/// A line spanned by a square-zero element `b² = 0`.
pub fn nilpotent_line(field: Field) -> Algebra {
    abelian(field, 1).with_name("nilpotent line")
}

fn matrix_units(field: Field, p: usize, i: usize, j: usize, bracket: bool) -> Element {
    // Basis E11, E12, E21, E22 indexed as 2*row + col.
    let prod = |a: usize, b: usize| -> Option<usize> {
        let (ar, ac) = (a / 2, a % 2);
        let (br, bc) = (b / 2, b % 2);
        (ac == br).then_some(2 * ar + bc)
    };
    let mut v = vec![field.zero(); 4];
    if let Some(k) = prod(i, j) {
        v[k] = &v[k] + &field.one();
    }
    if bracket && p == 1 {
        if let Some(k) = prod(j, i) {
            v[k] = &v[k] - &field.one();
        }
    }
    v
}

/// The full matrix algebra `M₂(𝔽)`.
pub fn matrix_algebra(field: Field) -> Algebra {
    let basis = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
    Algebra::from_fn("M2", field, basis, &["mul"], |p, i, j| matrix_units(field, p, i, j, false))
}

/// Upper triangular `2×2` matrices, basis `E11, E12, E22`.
pub fn upper_triangular(field: Field) -> Algebra {
    Algebra::from_integer_table(
        "T2",
        field,
        &["E11", "E12", "E22"],
        &[("mul", &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)])],
    )
}

/// `M₂(𝔽)` with its associative product and the commutator bracket.
pub fn matrix_poisson(field: Field) -> Algebra {
    let basis = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
    Algebra::from_fn("M2 Poisson", field, basis, &["mul", "bracket"], |p, i, j| matrix_units(field, p, i, j, true))
}

/// `𝔽[x]/(x³)` with zero bracket: a unital commutative Poisson algebra.
pub fn zero_bracket_poisson(field: Field) -> Algebra {
    let base = truncated_polynomial(field, 3);
    let n = base.dim();
    Algebra::from_fn("F[x]/(x^3) zero bracket", field, base.basis_names().to_vec(), &["mul", "bracket"], |p, i, j| {
        if p == 0 {
            base.basis_product(0, i, j).to_vec()
        } else {
            vec![field.zero(); n]
        }
    })
}

/// The 2-dimensional non-abelian Lie algebra `[e1, e2] = e2`.
pub fn nonabelian_lie2(field: Field) -> Algebra {
    Algebra::from_integer_table("aff(1)", field, &["e1", "e2"], &[("bracket", &[(0, 1, 1, 1), (1, 0, 1, -1)])])
}

fn cd_conj(a: &[i64]) -> Vec<i64> {
    if a.len() == 1 {
        return a.to_vec();
    }
    let h = a.len() / 2;
    let mut out = cd_conj(&a[..h]);
    out.extend(a[h..].iter().map(|x| -x));
    out
}

/// Cayley–Dickson doubling `(p, q)(r, s) = (pr − s̄q, sp + qr̄)`.
fn cd_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.len() == 1 {
        return vec![a[0] * b[0]];
    }
    let h = a.len() / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let sub = |x: Vec<i64>, y: Vec<i64>| x.iter().zip(&y).map(|(u, v)| u - v).collect::<Vec<_>>();
    let add = |x: Vec<i64>, y: Vec<i64>| x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>();
    let mut out = sub(cd_mul(p, r), cd_mul(&cd_conj(s), q));
    out.extend(add(cd_mul(s, p), cd_mul(q, &cd_conj(r))));
    out
}

/// The Cayley–Dickson algebra of dimension `2^level` (reals, complexes,
/// quaternions, octonions, …) with integer structure constants.
pub fn cayley_dickson(field: Field, level: u32) -> Algebra {
    let n = 1usize << level;
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    Algebra::from_fn(format!("CD{n}"), field, names("e", n), &["mul"], |_, i, j| {
        cd_mul(&unit(i), &unit(j)).into_iter().map(|c| field.from_i64(c)).collect()
    })
}

/// The octonions, built by three Cayley–Dickson doublings.
pub fn octonions(field: Field) -> Algebra {
    cayley_dickson(field, 3).with_name("octonions")
}

/// The quaternions.
pub fn quaternions(field: Field) -> Algebra {
    cayley_dickson(field, 2).with_name("quaternions")
}

/// Every bundled example, keyed by a short file stem.
pub fn bundled(field: Field) -> Vec<(&'static str, Algebra)> {
    vec![
        ("field", ground_field(field)),
        ("split", split_product(field)),
        ("dual", dual_numbers(field)),
        ("m2", matrix_algebra(field)),
        ("t2", upper_triangular(field)),
        ("abelian2", abelian(field, 2)),
        ("ideal", truncated_ideal(field)),
        ("lie2", nonabelian_lie2(field)),
        ("oct", octonions(field)),
        ("m2_poisson", matrix_poisson(field)),
        ("zero_bracket_poisson", zero_bracket_poisson(field)),
        ("idempotent_line", idempotent_line(field)),
        ("nilpotent_line", nilpotent_line(field)),
    ]
}
