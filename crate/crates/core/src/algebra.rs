//! Finite-dimensional algebras given by structure constants.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, solve_linear, Matrix, Subspace};
use crate::scalar::{Field, Scalar};

/// Coordinates of an algebra element relative to the basis.
pub type Element = Vec<Scalar>;

/// One bilinear product, stored densely: `table[(i * n + j) * n + k]` is the
/// coefficient of `b_k` in `b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    name: String,
    table: Vec<Scalar>,
}

impl Product {
    pub fn name(&self) -> &str {
        &self.name
    }
}

/// A vector space with one or more bilinear products.
///
/// By convention a two-product algebra carries its associative product at
/// index 0 and its bracket at index 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    field: Field,
    dim: usize,
    basis: Vec<String>,
    products: Vec<Product>,
}

/// Builder-style sparse description of one product: `(i, j, k, coefficient)`.
pub type SparseTable = Vec<(usize, usize, usize, Scalar)>;

impl Algebra {
    /// Builds an algebra from sparse structure constants. Missing entries are zero.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        products: Vec<(String, SparseTable)>,
    ) -> Result<Algebra> {
        let n = basis.len();
        let mut out = Vec::with_capacity(products.len());
        for (pname, entries) in products {
            let mut table = vec![field.zero(); n * n * n];
            let mut seen = vec![false; n * n * n];
            for (i, j, k, c) in entries {
                if i >= n || j >= n || k >= n {
                    return Err(Error::InvalidAlgebra(format!(
                        "entry ({i}, {j}, {k}) of product {pname:?} is out of range for dimension {n}"
                    )));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch { expected: field, found: c.field() });
                }
                let idx = (i * n + j) * n + k;
                if seen[idx] {
                    return Err(Error::InvalidAlgebra(format!("duplicate entry ({i}, {j}, {k}) in product {pname:?}")));
                }
                seen[idx] = true;
                table[idx] = c;
            }
            out.push(Product { name: pname, table });
        }
        if out.is_empty() {
            return Err(Error::InvalidAlgebra("an algebra needs at least one product".into()));
        }
        Ok(Algebra { name: name.into(), field, dim: n, basis, products: out })
    }

    /// Shorthand for test data and bundled examples with integer structure constants.
    pub fn from_integer_table(
        name: &str,
        field: Field,
        basis: &[&str],
        products: &[(&str, &[(usize, usize, usize, i64)])],
    ) -> Algebra {
        let products = products
            .iter()
            .map(|(pn, es)| {
                let t = es.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))).collect();
                (pn.to_string(), t)
            })
            .collect();
        Algebra::new(name, field, basis.iter().map(|s| s.to_string()).collect(), products)
            .expect("well-formed integer table")
    }

    /// Builds an algebra directly from dense product closures `b_i · b_j`.
    pub fn from_fn(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        product_names: &[&str],
        mut f: impl FnMut(usize, usize, usize) -> Element,
    ) -> Algebra {
        let n = basis.len();
        let products = product_names
            .iter()
            .enumerate()
            .map(|(p, pname)| {
                let mut table = Vec::with_capacity(n * n * n);
                for i in 0..n {
                    for j in 0..n {
                        let v = f(p, i, j);
                        assert_eq!(v.len(), n, "product value dimension");
                        table.extend(v);
                    }
                }
                Product { name: pname.to_string(), table }
            })
            .collect();
        Algebra { name: name.into(), field, dim: n, basis, products }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn num_products(&self) -> usize {
        self.products.len()
    }

    pub fn products(&self) -> &[Product] {
        &self.products
    }

    pub fn product_names(&self) -> Vec<&str> {
        self.products.iter().map(|p| p.name.as_str()).collect()
    }

    fn check_product(&self, p: usize) -> Result<()> {
        if p >= self.products.len() {
            return Err(Error::ProductIndex { index: p, count: self.products.len() });
        }
        Ok(())
    }

    /// `b_i · b_j` under product `p`.
    pub fn basis_product(&self, p: usize, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.products[p].table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn structure_constant(&self, p: usize, i: usize, j: usize, k: usize) -> &Scalar {
        &self.basis_product(p, i, j)[k]
    }

    pub fn zero_element(&self) -> Element {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = self.field.one();
        v
    }

    pub fn basis_vectors(&self) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis_vector(i)).collect()
    }

    fn check_element(&self, u: &[Scalar]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        if let Some(s) = u.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { expected: self.field, found: s.field() });
        }
        Ok(())
    }

    /// `u · v` under product `p`, validating shapes and fields.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar], p: usize) -> Result<Element> {
        self.check_product(p)?;
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(self.mul(p, u, v))
    }

    /// Unchecked `u · v`; shapes must already match.
    pub(crate) fn mul(&self, p: usize, u: &[Scalar], v: &[Scalar]) -> Element {
        let n = self.dim;
        let mut out = self.zero_element();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui * vj;
                for (k, c) in self.basis_product(p, i, j).iter().enumerate().take(n) {
                    if !c.is_zero() {
                        out[k] += &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x · y`.
    pub fn left_matrix(&self, p: usize, x: &[Scalar]) -> Matrix {
        let cols: Vec<Element> = (0..self.dim).map(|j| self.mul(p, x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y ↦ y · x`.
    pub fn right_matrix(&self, p: usize, x: &[Scalar]) -> Matrix {
        let cols: Vec<Element> = (0..self.dim).map(|j| self.mul(p, &self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Equal field, dimension and structure constants; names are ignored.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.products.len() == other.products.len()
            && self.products.iter().zip(&other.products).all(|(p, q)| p.table == q.table)
    }

    pub fn is_commutative(&self, p: usize) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(p, i, j) == self.basis_product(p, j, i)))
    }

    pub fn is_anticommutative(&self, p: usize) -> bool {
        (0..self.dim).all(|i| {
            self.basis_product(p, i, i).iter().all(Scalar::is_zero)
                && (0..self.dim).all(|j| {
                    self.basis_product(p, i, j).iter().zip(self.basis_product(p, j, i)).all(|(a, b)| (a + b).is_zero())
                })
        })
    }

    /// The unit of product 0, if there is one.
    ///
    /// Solves `e·b_i = b_i = b_i·e` for all `i` as a single linear system.
    pub fn find_unit(&self) -> Option<Element> {
        let n = self.dim;
        // Unknowns e_0..e_{n-1}; rows indexed by (side, i, k).
        let mut m = Matrix::zeros(self.field, 2 * n * n, n);
        let mut rhs = vec![self.field.zero(); 2 * n * n];
        for i in 0..n {
            for k in 0..n {
                let left_row = i * n + k;
                let right_row = n * n + i * n + k;
                for t in 0..n {
                    m.set(left_row, t, self.structure_constant(0, t, i, k).clone());
                    m.set(right_row, t, self.structure_constant(0, i, t, k).clone());
                }
                if i == k {
                    rhs[left_row] = self.field.one();
                    rhs[right_row] = self.field.one();
                }
            }
        }
        let e = solve_linear(&m, &rhs)?;
        debug_assert_eq!(nullspace_basis(&m).dim(), 0, "a two-sided unit is unique");
        Some(e)
    }

    /// `{z : z·x = x·z = 0}` for every product and every `x`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for p in 0..self.products.len() {
            for i in 0..n {
                for k in 0..n {
                    rows.push((0..n).map(|t| self.structure_constant(p, t, i, k).clone()).collect());
                    rows.push((0..n).map(|t| self.structure_constant(p, i, t, k).clone()).collect());
                }
            }
        }
        let m = Matrix::from_rows(self.field, n, rows).expect("square constraint rows");
        nullspace_basis(&m)
    }

    /// Span of all `b_i · b_j` under product `p`.
    pub fn product_subspace(&self, p: usize) -> Result<Subspace> {
        self.check_product(p)?;
        let n = self.dim;
        let vecs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        Subspace::span(self.field, n, vecs.map(|(i, j)| self.basis_product(p, i, j).to_vec()))
    }

    pub fn is_perfect(&self, p: usize) -> Result<bool> {
        Ok(self.product_subspace(p)?.dim() == self.dim)
    }

    /// The algebra `𝔽 ⊕ X` with `(α,x)(α',x') = (αα', xx' + αx' + α'x)` and unit `(1,0)`.
    ///
    /// Coordinate 0 is the adjoined unit. A second product (bracket) extends by
    /// `[(α,x),(α',x')] = (0, [x,x'])`.
    pub fn unitize(&self) -> Algebra {
        let n = self.dim;
        let f = self.field;
        let mut basis = Vec::with_capacity(n + 1);
        basis.push(unit_name(&self.basis));
        basis.extend(self.basis.iter().cloned());
        let names: Vec<&str> = self.product_names();
        Algebra::from_fn(format!("unitize({})", self.name), f, basis, &names, |p, i, j| {
            let mut v = vec![f.zero(); n + 1];
            match (p, i, j) {
                (0, 0, 0) => v[0] = f.one(),
                (0, 0, j) => v[j] = f.one(),
                (0, i, 0) => v[i] = f.one(),
                (_, 0, _) | (_, _, 0) => {}
                (p, i, j) => v[1..].clone_from_slice(self.basis_product(p, i - 1, j - 1)),
            }
            v
        })
    }

    /// Center `{z : [z, b_i] = 0 ∀i}` of an anticommutative product.
    pub fn lie_center(&self, bracket: usize) -> Result<Subspace> {
        self.check_product(bracket)?;
        if !self.is_anticommutative(bracket) {
            return Err(Error::Precondition(format!(
                "product {bracket} ({}) is not anticommutative",
                self.products[bracket].name
            )));
        }
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|t| self.structure_constant(bracket, t, i, k).clone()).collect());
            }
        }
        Ok(nullspace_basis(&Matrix::from_rows(self.field, n, rows)?))
    }

    /// Re-reads every structure constant in another field.
    pub fn with_field(&self, field: Field) -> Result<Algebra> {
        if field == self.field {
            return Ok(self.clone());
        }
        let products = self
            .products
            .iter()
            .map(|p| {
                let table = p.table.iter().map(|c| c.to_field(field)).collect::<Result<_>>()?;
                Ok(Product { name: p.name.clone(), table })
            })
            .collect::<Result<_>>()?;
        Ok(Algebra { field, products, ..self.clone() })
    }

    /// A copy keeping only the listed products (in that order).
    pub fn select_products(&self, indices: &[usize]) -> Result<Algebra> {
        let mut products = Vec::new();
        for &p in indices {
            self.check_product(p)?;
            products.push(self.products[p].clone());
        }
        Ok(Algebra { products, ..self.clone() })
    }

    pub fn from_json(src: &str) -> Result<Algebra> {
        let file: AlgebraFile = serde_json::from_str(src)?;
        file.into_algebra()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Algebra> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidAlgebra(format!("cannot read {}: {e}", path.display())))?;
        Algebra::from_json(&src)
    }

    pub fn to_file(&self) -> AlgebraFile {
        let n = self.dim;
        let products = self
            .products
            .iter()
            .map(|p| {
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let c = &p.table[(i * n + j) * n + k];
                            if !c.is_zero() {
                                entries.push((i, j, k, Coefficient::Text(c.to_string())));
                            }
                        }
                    }
                }
                ProductFile { name: p.name.clone(), entries }
            })
            .collect();
        AlgebraFile { name: self.name.clone(), field: self.field, dim: n, basis: self.basis.clone(), products }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra files always serialize")
    }
}

fn unit_name(basis: &[String]) -> String {
    let mut name = "1".to_string();
    while basis.contains(&name) {
        name.push('\'');
    }
    name
}

/// On-disk representation of an [`Algebra`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    pub products: Vec<ProductFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductFile {
    pub name: String,
    #[serde(default)]
    pub entries: Vec<(usize, usize, usize, Coefficient)>,
}

/// A structure constant as written in a file: normally a string, integers are tolerated.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Integer(i64),
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<Algebra> {
        let basis = if self.basis.is_empty() { (0..self.dim).map(|i| format!("b{i}")).collect() } else { self.basis };
        if basis.len() != self.dim {
            return Err(Error::InvalidAlgebra(format!("basis lists {} names but dim is {}", basis.len(), self.dim)));
        }
        let field = self.field;
        let products = self
            .products
            .into_iter()
            .map(|p| {
                let entries = p
                    .entries
                    .into_iter()
                    .map(|(i, j, k, c)| {
                        let s = match c {
                            Coefficient::Text(t) => field.parse_scalar(&t)?,
                            Coefficient::Integer(v) => field.from_i64(v),
                        };
                        Ok((i, j, k, s))
                    })
                    .collect::<Result<SparseTable>>()?;
                Ok((p.name, entries))
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.name, field, basis, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Q: Field = Field::Rational;

    fn e(a: &Algebra, v: &[i64]) -> Element {
        v.iter().map(|&x| a.field().from_i64(x)).collect()
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let a = catalog::dual_numbers(Q);
        let x = a.basis_vector(1);
        assert_eq!(a.multiply(&x, &x, 0).unwrap(), a.zero_element());
    }

    #[test]
    fn idempotents_of_split_product() {
        let a = catalog::split_product(Q);
        let e1 = a.basis_vector(0);
        assert_eq!(a.multiply(&e1, &e1, 0).unwrap(), e1);
    }

    #[test]
    fn unitization_product() {
        let x = catalog::abelian(Q, 1);
        let u = x.unitize();
        let got = u.multiply(&e(&u, &[1, 0]), &e(&u, &[0, 1]), 0).unwrap();
        assert_eq!(got, e(&u, &[0, 1]));
        assert_eq!(u.find_unit(), Some(e(&u, &[1, 0])));
        // Unitizing the 1-dim abelian algebra gives the dual numbers exactly.
        let dual = catalog::dual_numbers(Q);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(u.basis_product(0, i, j), dual.basis_product(0, i, j));
            }
        }
    }

    #[test]
    fn unitize_empty_is_ground_field() {
        let z = catalog::abelian(Q, 0);
        let u = z.unitize();
        assert_eq!(u.dim(), 1);
        assert_eq!(u.basis_product(0, 0, 0), &[Q.one()]);
    }

    #[test]
    fn multiply_rejects_mismatches() {
        let a = catalog::dual_numbers(Q);
        assert!(matches!(a.multiply(&e(&a, &[1]), &e(&a, &[1, 0]), 0), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.multiply(&e(&a, &[1, 0]), &e(&a, &[1, 0]), 3), Err(Error::ProductIndex { .. })));
        let g = vec![Field::Prime(3).one(), Field::Prime(3).zero()];
        assert!(matches!(a.multiply(&g, &g, 0), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn units() {
        assert_eq!(catalog::dual_numbers(Q).find_unit(), Some(e(&catalog::dual_numbers(Q), &[1, 0])));
        assert_eq!(catalog::abelian(Q, 1).find_unit(), None);
        let m2 = catalog::matrix_algebra(Q);
        assert_eq!(m2.find_unit(), Some(e(&m2, &[1, 0, 0, 1])));
        assert_eq!(catalog::abelian(Q, 0).find_unit(), Some(vec![]));
    }

    #[test]
    fn annihilators() {
        assert_eq!(catalog::matrix_algebra(Q).annihilator().dim(), 0);
        assert_eq!(catalog::abelian(Q, 3).annihilator(), Subspace::full(Q, 3));
        assert_eq!(catalog::abelian(Q, 1).annihilator().dim(), 1);
    }

    #[test]
    fn squares_and_perfectness() {
        let ab = catalog::abelian(Q, 2);
        assert_eq!(ab.product_subspace(0).unwrap().dim(), 0);
        assert!(!ab.is_perfect(0).unwrap());
        let m2 = catalog::matrix_algebra(Q);
        assert!(m2.is_perfect(0).unwrap());
        let t = catalog::truncated_ideal(Q);
        let sq = t.product_subspace(0).unwrap();
        assert_eq!(sq, Subspace::span(Q, 2, [e(&t, &[0, 1])]).unwrap());
        assert!(!t.is_perfect(0).unwrap());
    }

    #[test]
    fn lie_centers() {
        let zero_bracket = catalog::zero_bracket_poisson(Q);
        assert_eq!(zero_bracket.lie_center(1).unwrap(), Subspace::full(Q, zero_bracket.dim()));
        let pm2 = catalog::matrix_poisson(Q);
        let z = pm2.lie_center(1).unwrap();
        assert_eq!(z, Subspace::span(Q, 4, [e(&pm2, &[1, 0, 0, 1])]).unwrap());
        assert!(z.contains(&pm2.find_unit().unwrap()).unwrap());
        assert!(matches!(pm2.lie_center(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = catalog::octonions(Q);
        let back = Algebra::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
        let src = r#"{"name":"t","field":{"GF":3},"dim":1,"basis":["x"],
            "products":[{"name":"mul","entries":[[0,0,0,"2"]]}]}"#;
        let t = Algebra::from_json(src).unwrap();
        assert_eq!(t.structure_constant(0, 0, 0, 0).to_string(), "2");
        let bad = r#"{"name":"t","field":"Q","dim":1,"products":[{"name":"mul","entries":[[0,1,0,"1"]]}]}"#;
        assert!(matches!(Algebra::from_json(bad), Err(Error::InvalidAlgebra(_))));
        let dup = r#"{"name":"t","field":"Q","dim":1,"products":[{"name":"mul","entries":[[0,0,0,"1"],[0,0,0,"2"]]}]}"#;
        assert!(Algebra::from_json(dup).is_err());
    }

    #[test]
    fn change_of_field() {
        let a = catalog::octonions(Q).with_field(Field::Prime(3)).unwrap();
        assert_eq!(a.field(), Field::Prime(3));
        assert_eq!(a.structure_constant(0, 1, 1, 0).to_string(), "2");
    }
}
