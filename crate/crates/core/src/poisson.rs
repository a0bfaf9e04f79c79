//! The universal strict general actor of a Poisson algebra.
//!
//! A Poisson algebra here is a two-product [`Algebra`]: product 0 is the
//! associative multiplication and product 1 the bracket. Elements of `[X]`
//! are triples `(f∗−, −∗f, [f,−])`, flattened as three row-major blocks.

use serde::Serialize;

use crate::actor::ActorElement;
use crate::algebra::Algebra;
use crate::constraints::{flatten, unflatten, ConstraintSystem, SymVec};
use crate::error::{Error, Result};
use crate::extension::{permutability_check, ActingMorphism, ActionTarget};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};
use crate::variety::{Preset, Variety};

const LEFT: usize = 0;
const RIGHT: usize = 1;
const DER: usize = 2;
const MUL: usize = 0;
const BRACKET: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PoissonActorElement {
    pub left: Matrix,
    pub right: Matrix,
    pub der: Matrix,
}

impl PoissonActorElement {
    pub fn new(left: Matrix, right: Matrix, der: Matrix) -> PoissonActorElement {
        let shape = (left.rows(), left.cols());
        assert_eq!(shape.0, shape.1, "actions must be square");
        assert!(
            (right.rows(), right.cols()) == shape && (der.rows(), der.cols()) == shape,
            "actions must share a shape"
        );
        PoissonActorElement { left, right, der }
    }

    pub fn zero(field: Field, n: usize) -> PoissonActorElement {
        let z = Matrix::zeros(field, n, n);
        PoissonActorElement::new(z.clone(), z.clone(), z)
    }

    /// `(x·−, −·x, [x,−])`, which always lies in `[X]`.
    pub fn inner(a: &Algebra, x: &[Scalar]) -> PoissonActorElement {
        PoissonActorElement::new(a.left_matrix(MUL, x), a.right_matrix(MUL, x), a.left_matrix(BRACKET, x))
    }

    pub fn dim(&self) -> usize {
        self.left.rows()
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        flatten(&[&self.left, &self.right, &self.der])
    }

    pub fn from_flat(field: Field, n: usize, v: &[Scalar]) -> PoissonActorElement {
        let mut it = unflatten(field, n, 3, v).into_iter();
        let (l, r, d) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        PoissonActorElement::new(l, r, d)
    }

    /// The associative part `(f∗−, −∗f)`.
    pub fn bimultiplier(&self) -> ActorElement {
        ActorElement::new(self.left.clone(), self.right.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero() && self.der.is_zero()
    }
}

/// `[X]` as a subspace of `𝔽^{3n²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonActorSpace {
    algebra: Algebra,
    space: Subspace,
}

impl PoissonActorSpace {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<PoissonActorElement> {
        let (f, n) = (self.algebra.field(), self.algebra.dim());
        self.space.basis().iter().map(|v| PoissonActorElement::from_flat(f, n, v)).collect()
    }

    pub fn contains(&self, e: &PoissonActorElement) -> bool {
        e.dim() == self.algebra.dim()
            && e.field() == self.algebra.field()
            && self.space.contains(&e.flatten()).unwrap_or(false)
    }

    pub fn element(&self, coords: &[Scalar]) -> PoissonActorElement {
        PoissonActorElement::from_flat(self.algebra.field(), self.algebra.dim(), &self.space.combine(coords))
    }

    pub fn export(&self) -> PoissonActorExport {
        PoissonActorExport {
            algebra: self.algebra.name().to_string(),
            field: self.algebra.field(),
            algebra_dim: self.algebra.dim(),
            dim: self.dim(),
            basis: self.basis(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonActorExport {
    pub algebra: String,
    pub field: Field,
    pub algebra_dim: usize,
    pub dim: usize,
    pub basis: Vec<PoissonActorElement>,
}

/// Computes `[X]`: bimultipliers `(L, R)` and a derivation `D` of both
/// products such that `f∗[x,y] = [f∗x,y] − (Dy)x` and `[x,y]∗f = [x∗f,y] − x(Dy)`.
pub fn usga(a: &Algebra) -> Result<PoissonActorSpace> {
    Variety::preset(Preset::Pois).require(a)?;
    let (n, field) = (a.dim(), a.field());
    let basis = a.basis_vectors();
    let op = |block: usize, v: &[Scalar]| SymVec::operator(block, n, v);
    let mut sys = ConstraintSystem::new(field, 3 * n * n);
    for x in &basis {
        for y in &basis {
            let xy = a.mul(MUL, x, y);
            let br = a.mul(BRACKET, x, y);
            // Bimultiplier equations.
            sys.require_zero(&op(LEFT, &xy).minus(&op(LEFT, x).times(a, MUL, y), field));
            sys.require_zero(&op(RIGHT, &xy).minus(&op(RIGHT, y).left_times(a, MUL, x), field));
            sys.require_zero(&op(LEFT, y).left_times(a, MUL, x).minus(&op(RIGHT, x).times(a, MUL, y), field));
            // D derives both products.
            for (p, xy) in [(MUL, &xy), (BRACKET, &br)] {
                let eq =
                    op(DER, xy).minus(&op(DER, x).times(a, p, y), field).minus(&op(DER, y).left_times(a, p, x), field);
                sys.require_zero(&eq);
            }
            // Mixed identities.
            let eq =
                op(LEFT, &br).minus(&op(LEFT, x).times(a, BRACKET, y), field).plus(&op(DER, y).times(a, MUL, x), field);
            sys.require_zero(&eq);
            let eq = op(RIGHT, &br)
                .minus(&op(RIGHT, x).times(a, BRACKET, y), field)
                .plus(&op(DER, y).left_times(a, MUL, x), field);
            sys.require_zero(&eq);
        }
    }
    Ok(PoissonActorSpace { algebra: a.clone(), space: sys.solutions() })
}

/// `f·g = (L_f L_g, R_g R_f, x ↦ f∗[g,x] + [f,x]∗g)`.
pub fn raw_usga_multiply(f: &PoissonActorElement, g: &PoissonActorElement) -> PoissonActorElement {
    PoissonActorElement::new(&f.left * &g.left, &g.right * &f.right, &(&f.left * &g.der) + &(&g.right * &f.der))
}

/// `[f,g] = (L_f D_g − D_g L_f, R_f D_g − D_g R_f, D_f D_g − D_g D_f)`.
pub fn raw_usga_bracket(f: &PoissonActorElement, g: &PoissonActorElement) -> PoissonActorElement {
    let comm = |p: &Matrix, q: &Matrix| &(p * q) - &(q * p);
    PoissonActorElement::new(comm(&f.left, &g.der), comm(&f.right, &g.der), comm(&f.der, &g.der))
}

fn checked(
    s: &PoissonActorSpace,
    f: &PoissonActorElement,
    g: &PoissonActorElement,
    op: fn(&PoissonActorElement, &PoissonActorElement) -> PoissonActorElement,
) -> Result<Option<PoissonActorElement>> {
    if !s.contains(f) || !s.contains(g) {
        return Err(Error::NotInActor);
    }
    let h = op(f, g);
    Ok(s.contains(&h).then_some(h))
}

/// `f·g` in `[X]`, or `None` when the result leaves the space.
pub fn usga_multiply(
    s: &PoissonActorSpace,
    f: &PoissonActorElement,
    g: &PoissonActorElement,
) -> Result<Option<PoissonActorElement>> {
    checked(s, f, g, raw_usga_multiply)
}

/// `[f,g]` in `[X]`, or `None` when the result leaves the space.
pub fn usga_bracket(
    s: &PoissonActorSpace,
    f: &PoissonActorElement,
    g: &PoissonActorElement,
) -> Result<Option<PoissonActorElement>> {
    checked(s, f, g, raw_usga_bracket)
}

/// Comparison of `[X]` with the Lie center `Z(X)` of a unital Poisson algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub usga_dim: usize,
    pub unit_in_center: bool,
    pub center_closed: bool,
    pub center_bracket_trivial: bool,
    pub der_components_vanish: bool,
    pub bijective: bool,
    /// Whether `x ↦ (x·−, −·x, [x,−])` is a bijection `X → [X]`.
    pub inner_bijective: bool,
    pub pass: bool,
}

pub fn z_center_actor_check(a: &Algebra) -> Result<CenterReport> {
    Variety::preset(Preset::Pois).require(a)?;
    let e = a.find_unit().ok_or_else(|| Error::Precondition(format!("{} has no unit", a.name())))?;
    let (n, field) = (a.dim(), a.field());
    let z = a.lie_center(BRACKET)?;
    let s = usga(a)?;
    let zb = z.basis();
    let unit_in_center = z.contains(&e)?;
    let center_closed = zb.iter().all(|u| zb.iter().all(|v| z.contains(&a.mul(MUL, u, v)).unwrap_or(false)));
    let center_bracket_trivial = zb.iter().all(|u| zb.iter().all(|v| a.mul(BRACKET, u, v).iter().all(Scalar::is_zero)));
    let der_components_vanish = s.basis().iter().all(|f| f.der.is_zero());
    let images: Vec<Vec<Scalar>> = zb
        .iter()
        .map(|u| {
            PoissonActorElement::new(a.left_matrix(MUL, u), a.right_matrix(MUL, u), Matrix::zeros(field, n, n))
                .flatten()
        })
        .collect();
    let image = Subspace::span(field, 3 * n * n, images)?;
    let bijective = image.dim() == z.dim() && image == *s.subspace();
    let inner: Vec<Vec<Scalar>> =
        a.basis_vectors().iter().map(|x| PoissonActorElement::inner(a, x).flatten()).collect();
    let inner = Subspace::span(field, 3 * n * n, inner)?;
    let inner_bijective = inner.dim() == n && inner == *s.subspace();
    let pass = unit_in_center && center_closed && center_bracket_trivial && der_components_vanish && bijective;
    Ok(CenterReport {
        algebra_dim: n,
        center_dim: z.dim(),
        usga_dim: s.dim(),
        unit_in_center,
        center_closed,
        center_bracket_trivial,
        der_components_vanish,
        bijective,
        inner_bijective,
        pass,
    })
}

/// `(φ₁, φ₂, φ₃)` is in the image of `τ` iff `(φ₁, φ₂)` is permutable on all basis pairs.
pub fn poisson_acting_check(phi: &ActingMorphism) -> bool {
    phi.actions().iter().all(|f| phi.actions().iter().all(|g| permutability_check(f, g)))
}

impl ActionTarget for PoissonActorSpace {
    fn target_algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn admits(&self, action: &ActorElement, der: Option<&Matrix>) -> bool {
        der.is_some_and(|d| {
            self.contains(&PoissonActorElement::new(action.left.clone(), action.right.clone(), d.clone()))
        })
    }

    fn requires_permutability(&self) -> bool {
        true
    }

    fn is_multiplicative(&self, phi: &ActingMorphism) -> bool {
        phi.der().is_some() && phi.poisson_multiplicative()
    }
}
