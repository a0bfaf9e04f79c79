//! External weak actors, their partial products and the classical special cases.
//!
//! An element `f` of the actor is a pair of endomorphisms `(f∗−, −∗f)`,
//! stored as `left` and `right`. In flat form the unknowns are the row-major
//! entries of `left` followed by those of `right`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Coefficient, Element};
use crate::constraints::{flatten, unflatten, ConstraintSystem, SymVec};
use crate::error::{Error, Result};
use crate::identity::{Monomial, MultilinearIdentity};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};
use crate::variety::{Preset, Variety};

/// Sixteen scalars selecting the partial product on an external weak actor.
///
/// With `h = ⟨f, g⟩`, `x∗h = Σ λᵢ Tᵢ(x)` and `h∗x = Σ μᵢ Tᵢ(x)` where the
/// eight bracketings are, in order:
/// `(x∗f)∗g, (f∗x)∗g, g∗(x∗f), g∗(f∗x), (x∗g)∗f, (g∗x)∗f, f∗(x∗g), f∗(g∗x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaMuRules {
    pub lambda: [Scalar; 8],
    pub mu: [Scalar; 8],
}

impl LambdaMuRules {
    pub fn from_i64(lambda: [i64; 8], mu: [i64; 8]) -> LambdaMuRules {
        let q = Field::Rational;
        LambdaMuRules { lambda: lambda.map(|v| q.from_i64(v)), mu: mu.map(|v| q.from_i64(v)) }
    }

    /// `λ₁ = μ₈ = 1`, all others zero: composition of bimultipliers.
    pub fn standard() -> LambdaMuRules {
        LambdaMuRules::from_i64([1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1])
    }

    /// Commutator of derivations, `L_h = L_f L_g − L_g L_f` and `R_h = −L_h` on `(D, −D)` pairs.
    pub fn lie() -> LambdaMuRules {
        LambdaMuRules::from_i64([1, 0, 0, 0, -1, 0, 0, 0], [0, 0, 0, -1, 0, 0, 0, 1])
    }

    /// The alternative-algebra product written as a λ/μ vector.
    pub fn alternative() -> LambdaMuRules {
        LambdaMuRules::from_i64([1, 1, 0, 0, 0, 0, -1, 0], [0, -1, 0, 0, 0, 0, 1, 1])
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaMuRepr {
    lambda: Vec<Coefficient>,
    mu: Vec<Coefficient>,
}

impl Serialize for LambdaMuRules {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = |v: &[Scalar; 8]| v.iter().map(|c| Coefficient::Text(c.to_string())).collect();
        LambdaMuRepr { lambda: text(&self.lambda), mu: text(&self.mu) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaMuRules {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LambdaMuRepr::deserialize(d)?;
        let read = |v: Vec<Coefficient>| -> std::result::Result<[Scalar; 8], D::Error> {
            let parsed: Vec<Scalar> = v
                .into_iter()
                .map(|c| match c {
                    Coefficient::Text(t) => Field::Rational.parse_scalar(&t),
                    Coefficient::Integer(i) => Ok(Field::Rational.from_i64(i)),
                })
                .collect::<Result<_>>()
                .map_err(D::Error::custom)?;
            parsed.try_into().map_err(|v: Vec<Scalar>| D::Error::custom(format!("expected 8 scalars, got {}", v.len())))
        };
        Ok(LambdaMuRules { lambda: read(repr.lambda)?, mu: read(repr.mu)? })
    }
}

/// How `⟨f, g⟩` is computed on an actor space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProductRules {
    LambdaMu(LambdaMuRules),
    /// The three-term formulas for alternative algebras.
    Alternative,
}

/// A pair `(f∗−, −∗f)` of endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ActorElement {
    pub left: Matrix,
    pub right: Matrix,
}

impl ActorElement {
    pub fn new(left: Matrix, right: Matrix) -> ActorElement {
        assert_eq!(left.rows(), left.cols(), "left action must be square");
        assert_eq!((left.rows(), left.cols()), (right.rows(), right.cols()), "actions must share a shape");
        ActorElement { left, right }
    }

    pub fn zero(field: Field, n: usize) -> ActorElement {
        ActorElement::new(Matrix::zeros(field, n, n), Matrix::zeros(field, n, n))
    }

    /// The inner pair `(x·−, −·x)` for product 0.
    pub fn inner(a: &Algebra, x: &[Scalar]) -> ActorElement {
        ActorElement::new(a.left_matrix(0, x), a.right_matrix(0, x))
    }

    pub fn dim(&self) -> usize {
        self.left.rows()
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    /// Row-major `left` entries followed by row-major `right` entries.
    pub fn flatten(&self) -> Vec<Scalar> {
        flatten(&[&self.left, &self.right])
    }

    pub fn from_flat(field: Field, n: usize, v: &[Scalar]) -> ActorElement {
        let mut blocks = unflatten(field, n, 2, v).into_iter();
        let left = blocks.next().expect("left block");
        let right = blocks.next().expect("right block");
        ActorElement { left, right }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn add(&self, other: &ActorElement) -> ActorElement {
        ActorElement::new(&self.left + &other.left, &self.right + &other.right)
    }

    pub fn scale(&self, c: &Scalar) -> ActorElement {
        ActorElement::new(self.left.scale(c), self.right.scale(c))
    }
}

/// The external weak actor `E(X)` of an algebra in a variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActorSpace {
    algebra: Algebra,
    variety: Variety,
    space: Subspace,
}

impl ActorSpace {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    /// The solution space inside `𝔽^{2n²}`.
    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rules(&self) -> Option<&ProductRules> {
        self.variety.rules()
    }

    /// Canonical basis elements.
    pub fn basis(&self) -> Vec<ActorElement> {
        let (f, n) = (self.algebra.field(), self.algebra.dim());
        self.space.basis().iter().map(|v| ActorElement::from_flat(f, n, v)).collect()
    }

    pub fn contains(&self, e: &ActorElement) -> bool {
        e.dim() == self.algebra.dim()
            && e.field() == self.algebra.field()
            && self.space.contains(&e.flatten()).unwrap_or(false)
    }

    /// Coordinates of `e` against [`ActorSpace::basis`], if `e` is in the space.
    pub fn coordinates(&self, e: &ActorElement) -> Option<Vec<Scalar>> {
        if e.dim() != self.algebra.dim() {
            return None;
        }
        self.space.coordinates(&e.flatten()).ok().flatten()
    }

    pub fn element(&self, coords: &[Scalar]) -> ActorElement {
        ActorElement::from_flat(self.algebra.field(), self.algebra.dim(), &self.space.combine(coords))
    }

    /// `⟨f, g⟩` when it lands in the space, `None` outside the domain of definition.
    pub fn partial_product(&self, f: &ActorElement, g: &ActorElement) -> Result<Option<ActorElement>> {
        partial_product(self, f, g)
    }

    pub fn export(&self) -> ActorExport {
        ActorExport {
            algebra: self.algebra.name().to_string(),
            variety: self.variety.name().to_string(),
            field: self.algebra.field(),
            algebra_dim: self.algebra.dim(),
            dim: self.dim(),
            basis: self.basis(),
        }
    }
}

/// Serializable summary of an [`ActorSpace`].
#[derive(Clone, Debug, Serialize)]
pub struct ActorExport {
    pub algebra: String,
    pub variety: String,
    pub field: Field,
    pub algebra_dim: usize,
    pub dim: usize,
    pub basis: Vec<ActorElement>,
}

const LEFT: usize = 0;
const RIGHT: usize = 1;

enum Spliced {
    Known(Element),
    Linear(SymVec),
    Operator,
}

/// Evaluates a monomial with the operator `f` in variable `slot` and known
/// elements elsewhere. `f` to the left of a node contributes `L_f`, to the
/// right `R_f`.
fn splice(m: &Monomial, a: &Algebra, slot: usize, args: &[Element]) -> Spliced {
    match m {
        Monomial::Var(i) if *i == slot => Spliced::Operator,
        Monomial::Var(i) => Spliced::Known(args[*i - 1].clone()),
        Monomial::Product { product, left, right } => {
            let p = *product;
            let n = a.dim();
            match (splice(left, a, slot, args), splice(right, a, slot, args)) {
                (Spliced::Known(x), Spliced::Known(y)) => Spliced::Known(a.mul(p, &x, &y)),
                (Spliced::Operator, Spliced::Known(y)) => Spliced::Linear(SymVec::operator(LEFT, n, &y)),
                (Spliced::Known(x), Spliced::Operator) => Spliced::Linear(SymVec::operator(RIGHT, n, &x)),
                (Spliced::Linear(s), Spliced::Known(y)) => Spliced::Linear(s.times(a, p, &y)),
                (Spliced::Known(x), Spliced::Linear(s)) => Spliced::Linear(s.left_times(a, p, &x)),
                _ => unreachable!("multilinear monomials contain the operator once"),
            }
        }
    }
}

fn basis_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// The homogeneous system expressing `Φ(…, f at `position`, …) = 0` on all
/// basis tuples in the other slots, over the `2n²` unknowns of `(L_f, R_f)`.
///
/// `position` is 1-based.
pub fn operator_constraints(phi: &MultilinearIdentity, a: &Algebra, position: usize) -> Result<Matrix> {
    let k = phi.degree();
    if position == 0 || position > k {
        return Err(Error::Position { position, degree: k });
    }
    if phi.max_product().unwrap_or(0) > 0 {
        return Err(Error::Precondition("operator substitution needs a single-product identity".into()));
    }
    if k == 1 {
        return Err(Error::Precondition("a degree-1 identity leaves no product for the operator".into()));
    }
    let n = a.dim();
    let unknowns = 2 * n * n;
    let field = a.field();
    let basis = a.basis_vectors();
    let mut rows = Vec::new();
    for tuple in basis_tuples(n, k - 1) {
        let mut args: Vec<Element> = Vec::with_capacity(k);
        let mut it = tuple.iter();
        for slot in 1..=k {
            args.push(if slot == position { a.zero_element() } else { basis[*it.next().expect("tuple")].clone() });
        }
        let mut total = SymVec::zero(n);
        for term in phi.terms() {
            let c = field.from_i64(term.coeff);
            match splice(&term.monomial, a, position, &args) {
                Spliced::Linear(s) => total.add_scaled(&s, &c),
                _ => unreachable!("degree ≥ 2 terms place the operator under a product"),
            }
        }
        rows.extend(total.rows(field, unknowns));
    }
    Matrix::from_rows(field, unknowns, rows)
}

/// `E(X)`: all `(L_f, R_f)` satisfying every identity of `v` with `f` in every position.
pub fn external_weak_actor(a: &Algebra, v: &Variety) -> Result<ActorSpace> {
    if v.num_products() != 1 {
        return Err(Error::Precondition(format!(
            "{} has {} products; use the Poisson actor for two-product varieties",
            v.name(),
            v.num_products()
        )));
    }
    v.require(a)?;
    let a1 = if a.num_products() > 1 { a.select_products(&[0])? } else { a.clone() };
    let n = a1.dim();
    let jobs: Vec<(usize, usize)> =
        v.identities().iter().enumerate().flat_map(|(i, phi)| (1..=phi.degree()).map(move |j| (i, j))).collect();
    let blocks: Vec<Matrix> =
        jobs.par_iter().map(|&(i, j)| operator_constraints(&v.identities()[i], &a1, j)).collect::<Result<_>>()?;
    let mut system = ConstraintSystem::new(a1.field(), 2 * n * n);
    for m in &blocks {
        system.require_rows(m);
    }
    Ok(ActorSpace { algebra: a1, variety: v.clone(), space: system.solutions() })
}

/// Products `[R_g R_f, R_g L_f, L_g R_f, L_g L_f, R_f R_g, R_f L_g, L_f R_g, L_f L_g]`.
fn bracketings(f: &ActorElement, g: &ActorElement) -> [Matrix; 8] {
    let (lf, rf, lg, rg) = (&f.left, &f.right, &g.left, &g.right);
    [rg * rf, rg * lf, lg * rf, lg * lf, rf * rg, rf * lg, lf * rg, lf * lg]
}

/// Computes `h = ⟨f, g⟩` without checking where it lands.
pub fn raw_partial_product(rules: &ProductRules, f: &ActorElement, g: &ActorElement) -> ActorElement {
    let field = f.field();
    let n = f.dim();
    match rules {
        ProductRules::LambdaMu(r) => {
            let terms = bracketings(f, g);
            let mut right = Matrix::zeros(field, n, n);
            let mut left = Matrix::zeros(field, n, n);
            for (t, (l, m)) in terms.iter().zip(r.lambda.iter().zip(&r.mu)) {
                let l = l.to_field(field).expect("λ coefficient maps into the field");
                let m = m.to_field(field).expect("μ coefficient maps into the field");
                if !l.is_zero() {
                    right = &right + &t.scale(&l);
                }
                if !m.is_zero() {
                    left = &left + &t.scale(&m);
                }
            }
            ActorElement::new(left, right)
        }
        ProductRules::Alternative => {
            let (lf, rf, lg, rg) = (&f.left, &f.right, &g.left, &g.right);
            // h∗x = −(f∗x)∗g + f∗(g∗x) + f∗(x∗g)
            let left = &(&(lf * lg) + &(lf * rg)) - &(rg * lf);
            // x∗h = (x∗f)∗g + (f∗x)∗g − f∗(x∗g)
            let right = &(&(rg * rf) + &(rg * lf)) - &(lf * rg);
            ActorElement::new(left, right)
        }
    }
}

/// `⟨f, g⟩`, defined when the result lies in `s`.
pub fn partial_product(s: &ActorSpace, f: &ActorElement, g: &ActorElement) -> Result<Option<ActorElement>> {
    if !s.contains(f) || !s.contains(g) {
        return Err(Error::NotInActor);
    }
    let rules = s
        .rules()
        .ok_or_else(|| Error::Precondition(format!("{} carries no partial-product rules", s.variety.name())))?;
    let h = raw_partial_product(rules, f, g);
    Ok(s.contains(&h).then_some(h))
}

/// Solution space of the three bimultiplier equations
/// `f∗(xy) = (f∗x)y`, `(xy)∗f = x(y∗f)`, `x(f∗y) = (x∗f)y`.
pub fn bimultiplier_equations_space(a: &Algebra) -> Subspace {
    let (n, field) = (a.dim(), a.field());
    let basis = a.basis_vectors();
    let mut sys = ConstraintSystem::new(field, 2 * n * n);
    for x in &basis {
        for y in &basis {
            let xy = a.mul(0, x, y);
            let lhs = SymVec::operator(LEFT, n, &xy);
            sys.require_zero(&lhs.minus(&SymVec::operator(LEFT, n, x).times(a, 0, y), field));
            let lhs = SymVec::operator(RIGHT, n, &xy);
            sys.require_zero(&lhs.minus(&SymVec::operator(RIGHT, n, y).left_times(a, 0, x), field));
            let lhs = SymVec::operator(LEFT, n, y).left_times(a, 0, x);
            sys.require_zero(&lhs.minus(&SymVec::operator(RIGHT, n, x).times(a, 0, y), field));
        }
    }
    sys.solutions()
}

/// Solution space of the four alternative-actor equations:
///
/// ```text
/// f∗(xy) = (x∗f)y + (f∗x)y − x(f∗y)
/// (xy)∗f = x(f∗y) + x(y∗f) − (x∗f)y
/// x(y∗f) = (yx)∗f + (xy)∗f − y(x∗f)
/// (f∗x)y = f∗(yx) + f∗(xy) − (f∗y)x
/// ```
pub fn alt_equations_space(a: &Algebra) -> Subspace {
    let (n, field) = (a.dim(), a.field());
    let basis = a.basis_vectors();
    let l = |v: &[Scalar]| SymVec::operator(LEFT, n, v);
    let r = |v: &[Scalar]| SymVec::operator(RIGHT, n, v);
    let mut sys = ConstraintSystem::new(field, 2 * n * n);
    for x in &basis {
        for y in &basis {
            let xy = a.mul(0, x, y);
            let yx = a.mul(0, y, x);
            let eq1 = l(&xy)
                .minus(&r(x).times(a, 0, y), field)
                .minus(&l(x).times(a, 0, y), field)
                .plus(&l(y).left_times(a, 0, x), field);
            let eq2 = r(&xy)
                .minus(&l(y).left_times(a, 0, x), field)
                .minus(&r(y).left_times(a, 0, x), field)
                .plus(&r(x).times(a, 0, y), field);
            let eq3 = r(y)
                .left_times(a, 0, x)
                .minus(&r(&yx), field)
                .minus(&r(&xy), field)
                .plus(&r(x).left_times(a, 0, y), field);
            let eq4 = l(x).times(a, 0, y).minus(&l(&yx), field).minus(&l(&xy), field).plus(&l(y).times(a, 0, x), field);
            for eq in [eq1, eq2, eq3, eq4] {
                sys.require_zero(&eq);
            }
        }
    }
    sys.solutions()
}

/// Whether `e` satisfies the four alternative-actor equations on all basis pairs.
pub fn alt_actor_equations_check(e: &ActorElement, a: &Algebra) -> bool {
    if e.dim() != a.dim() {
        return false;
    }
    let basis = a.basis_vectors();
    let fl = |v: &[Scalar]| e.left.apply(v);
    let fr = |v: &[Scalar]| e.right.apply(v);
    let m = |u: &[Scalar], v: &[Scalar]| a.mul(0, u, v);
    let sum = |vs: [Element; 3]| -> Element {
        let [p, q, s] = vs;
        p.iter().zip(&q).zip(&s).map(|((p, q), s)| &(p + q) - s).collect()
    };
    basis.iter().all(|x| {
        basis.iter().all(|y| {
            let xy = m(x, y);
            let yx = m(y, x);
            fl(&xy) == sum([m(&fr(x), y), m(&fl(x), y), m(x, &fl(y))])
                && fr(&xy) == sum([m(x, &fl(y)), m(x, &fr(y)), m(&fr(x), y)])
                && m(x, &fr(y)) == sum([fr(&yx), fr(&xy), m(y, &fr(x))])
                && m(&fl(x), y) == sum([fl(&yx), fl(&xy), m(&fl(y), x)])
        })
    })
}

/// Derivations of product `p`: all `D` with `D(xy) = (Dx)y + x(Dy)`, as a
/// subspace of row-major `n × n` matrices.
pub fn derivations(a: &Algebra, p: usize) -> Result<Subspace> {
    if p >= a.num_products() {
        return Err(Error::ProductIndex { index: p, count: a.num_products() });
    }
    let (n, field) = (a.dim(), a.field());
    let basis = a.basis_vectors();
    let mut sys = ConstraintSystem::new(field, n * n);
    for x in &basis {
        for y in &basis {
            let lhs = SymVec::operator(0, n, &a.mul(p, x, y));
            let eq = lhs
                .minus(&SymVec::operator(0, n, x).times(a, p, y), field)
                .minus(&SymVec::operator(0, n, y).left_times(a, p, x), field);
            sys.require_zero(&eq);
        }
    }
    Ok(sys.solutions())
}

/// Multipliers of a commutative associative algebra: `f(xy) = f(x)y`.
pub fn multipliers(a: &Algebra) -> Result<Subspace> {
    if !Variety::preset(Preset::CAssoc).contains(a)? {
        return Err(Error::Precondition(format!("{} is not commutative associative", a.name())));
    }
    let (n, field) = (a.dim(), a.field());
    let basis = a.basis_vectors();
    let mut sys = ConstraintSystem::new(field, n * n);
    for x in &basis {
        for y in &basis {
            let eq = SymVec::operator(0, n, &a.mul(0, x, y)).minus(&SymVec::operator(0, n, x).times(a, 0, y), field);
            sys.require_zero(&eq);
        }
    }
    Ok(sys.solutions())
}

/// Reads a row-major flattened `n × n` matrix.
pub fn matrix_from_flat(field: Field, n: usize, v: &[Scalar]) -> Matrix {
    unflatten(field, n, 1, v).pop().expect("one block")
}
