//! Linear constraint assembly over operator unknowns.
//!
//! Unknown operators are stacked `n × n` blocks, flattened row-major: block
//! `b` occupies indices `b·n² .. (b+1)·n²`, and entry `(k, j)` of a block is
//! the coefficient of `b_k` in the image of `b_j`.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::linalg::{Matrix, RowEchelon, Subspace};
use crate::scalar::{Field, Scalar};

/// A sparse linear form in the unknowns.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct LinearForm(BTreeMap<usize, Scalar>);

impl LinearForm {
    fn add_scaled(&mut self, other: &LinearForm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&idx, v) in &other.0 {
            let term = c * v;
            match self.0.get_mut(&idx) {
                Some(slot) => {
                    *slot += &term;
                    if slot.is_zero() {
                        self.0.remove(&idx);
                    }
                }
                None => {
                    if !term.is_zero() {
                        self.0.insert(idx, term);
                    }
                }
            }
        }
    }

    fn dense(&self, field: Field, unknowns: usize) -> Vec<Scalar> {
        let mut row = vec![field.zero(); unknowns];
        for (&i, v) in &self.0 {
            row[i] = v.clone();
        }
        row
    }
}

/// A vector of `n` linear forms: an algebra element depending linearly on the unknowns.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SymVec(pub(crate) Vec<LinearForm>);

impl SymVec {
    pub(crate) fn zero(n: usize) -> SymVec {
        SymVec(vec![LinearForm::default(); n])
    }

    /// `B · y` for the unknown block `block`.
    pub(crate) fn operator(block: usize, n: usize, y: &[Scalar]) -> SymVec {
        let base = block * n * n;
        SymVec(
            (0..n)
                .map(|k| {
                    let mut form = LinearForm::default();
                    for (j, yj) in y.iter().enumerate() {
                        if !yj.is_zero() {
                            form.0.insert(base + k * n + j, yj.clone());
                        }
                    }
                    form
                })
                .collect(),
        )
    }

    pub(crate) fn add_scaled(&mut self, other: &SymVec, c: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_scaled(b, c);
        }
    }

    pub(crate) fn plus(mut self, other: &SymVec, field: Field) -> SymVec {
        self.add_scaled(other, &field.one());
        self
    }

    pub(crate) fn minus(mut self, other: &SymVec, field: Field) -> SymVec {
        self.add_scaled(other, &field.from_i64(-1));
        self
    }

    /// `self · y` under product `p`.
    pub(crate) fn times(&self, a: &Algebra, p: usize, y: &[Scalar]) -> SymVec {
        let n = a.dim();
        let mut out = SymVec::zero(n);
        for (i, si) in self.0.iter().enumerate() {
            if si.0.is_empty() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in a.basis_product(p, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.0[k].add_scaled(si, &(yj * c));
                    }
                }
            }
        }
        out
    }

    /// `x · self` under product `p`.
    pub(crate) fn left_times(&self, a: &Algebra, p: usize, x: &[Scalar]) -> SymVec {
        let n = a.dim();
        let mut out = SymVec::zero(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, sj) in self.0.iter().enumerate() {
                if sj.0.is_empty() {
                    continue;
                }
                for (k, c) in a.basis_product(p, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.0[k].add_scaled(sj, &(xi * c));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn rows(&self, field: Field, unknowns: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        self.0.iter().map(move |f| f.dense(field, unknowns))
    }
}

/// Accumulates homogeneous equations and returns their solution space.
pub(crate) struct ConstraintSystem {
    field: Field,
    unknowns: usize,
    echelon: RowEchelon,
}

impl ConstraintSystem {
    pub(crate) fn new(field: Field, unknowns: usize) -> ConstraintSystem {
        ConstraintSystem { field, unknowns, echelon: RowEchelon::new(field, unknowns) }
    }

    /// Every coordinate of `v` must vanish.
    pub(crate) fn require_zero(&mut self, v: &SymVec) {
        for form in &v.0 {
            if !form.0.is_empty() {
                self.echelon.insert(form.dense(self.field, self.unknowns));
            }
        }
    }

    pub(crate) fn require_rows(&mut self, m: &Matrix) {
        for r in 0..m.rows() {
            self.echelon.insert(m.row(r).to_vec());
        }
    }

    pub(crate) fn solutions(&self) -> Subspace {
        self.echelon.kernel()
    }
}

/// Flattens operator blocks into the unknown ordering.
pub(crate) fn flatten(blocks: &[&Matrix]) -> Vec<Scalar> {
    blocks.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// Splits a flat vector back into `count` square blocks of size `n`.
pub(crate) fn unflatten(field: Field, n: usize, count: usize, v: &[Scalar]) -> Vec<Matrix> {
    assert_eq!(v.len(), count * n * n, "flat operator length");
    (0..count)
        .map(|b| {
            let rows = (0..n).map(|r| v[b * n * n + r * n..b * n * n + (r + 1) * n].to_vec()).collect();
            Matrix::from_rows(field, n, rows).expect("square block")
        })
        .collect()
}
