#![allow(dead_code)]

use actorkit::{catalog, Algebra, Element, Field, Matrix, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const Q: Field = Field::Rational;

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// Unital associative algebras used throughout the theorem checks.
pub fn unital_associative(field: Field) -> Vec<Algebra> {
    vec![
        catalog::ground_field(field),
        catalog::split_product(field),
        catalog::dual_numbers(field),
        catalog::matrix_algebra(field),
    ]
}

pub fn associative_family(field: Field) -> Vec<Algebra> {
    let mut v = unital_associative(field);
    v.extend([
        catalog::upper_triangular(field),
        catalog::truncated_polynomial(field, 3),
        catalog::abelian(field, 2),
        catalog::truncated_ideal(field),
        catalog::nilpotent_line(field),
        catalog::idempotent_line(field),
        catalog::quaternions(field),
    ]);
    v
}

pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field.order() {
        Some(q) => field.from_i64(rng.gen_range(0..q) as i64),
        None => Field::Rational.parse_scalar(&format!("{}/{}", rng.gen_range(-5..=5), rng.gen_range(1..=3))).unwrap(),
    }
}

pub fn random_element(a: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    (0..a.dim()).map(|_| random_scalar(a.field(), rng)).collect()
}

pub fn random_coords(field: Field, len: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..len).map(|_| random_scalar(field, rng)).collect()
}

pub fn add(u: &[Scalar], v: &[Scalar]) -> Element {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Scalar], v: &[Scalar]) -> Element {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Element {
    v.iter().map(|x| c * x).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn column_matrix(field: Field, rows: usize, cols: &[Element]) -> Matrix {
    Matrix::from_columns(field, rows, cols)
}
