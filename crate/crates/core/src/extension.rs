//! Split extensions, acting morphisms and semidirect products.
//!
//! Every split extension handled here is in normal form: `A = B ⊕ X` with
//! coordinates of `B` first, `k(x) = (0, x)`, `α(b, x) = b` and `β(b) = (b, 0)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::actor::{raw_partial_product, ActorElement, ActorSpace, ProductRules};
use crate::algebra::{Algebra, AlgebraFile, Element};
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, Matrix, Subspace};
use crate::poisson::{raw_usga_bracket, raw_usga_multiply, PoissonActorElement};
use crate::scalar::{Field, Scalar};
use crate::variety::{Preset, Variety};

/// Default cap on the number of candidate tables examined by the enumerator.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

/// A linear map preserving every product, stored as a `target_dim × source_dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<AlgebraMorphism> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch { expected: source.field(), found: target.field() });
        }
        if (matrix.rows(), matrix.cols()) != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        if source.num_products() != target.num_products() {
            return Err(Error::InvalidAlgebra(format!(
                "{} has {} products and {} has {}",
                source.name(),
                source.num_products(),
                target.name(),
                target.num_products()
            )));
        }
        let images: Vec<Element> = (0..source.dim()).map(|j| matrix.column(j)).collect();
        for p in 0..source.num_products() {
            for i in 0..source.dim() {
                for j in 0..source.dim() {
                    if matrix.apply(source.basis_product(p, i, j)) != target.mul(p, &images[i], &images[j]) {
                        return Err(Error::Inconsistent(format!(
                            "map {} -> {} does not preserve product {p} on ({}, {})",
                            source.name(),
                            target.name(),
                            source.basis_names()[i],
                            source.basis_names()[j]
                        )));
                    }
                }
            }
        }
        Ok(AlgebraMorphism { source, target, matrix })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Element {
        self.matrix.apply(v)
    }
}

/// `0 → X → A ⇄ B → 0` (maps `k`, `α`, `β`) with `α ∘ β = id` and `im k = ker α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtensionData {
    k: AlgebraMorphism,
    alpha: AlgebraMorphism,
    beta: AlgebraMorphism,
}

impl SplitExtensionData {
    pub fn new(k: AlgebraMorphism, alpha: AlgebraMorphism, beta: AlgebraMorphism) -> Result<SplitExtensionData> {
        let a = k.target();
        if !alpha.source().same_structure(a) || !beta.target().same_structure(a) {
            return Err(Error::Inconsistent("k, α and β must share the middle algebra".into()));
        }
        if !alpha.target().same_structure(beta.source()) {
            return Err(Error::Inconsistent("α and β must share the quotient algebra".into()));
        }
        let field = a.field();
        let b_dim = beta.source().dim();
        if alpha.matrix() * beta.matrix() != Matrix::identity(field, b_dim) {
            return Err(Error::Inconsistent("α ∘ β is not the identity".into()));
        }
        if k.matrix().rank() != k.source().dim() {
            return Err(Error::Inconsistent("k is not injective".into()));
        }
        if k.matrix().image() != crate::linalg::nullspace_basis(alpha.matrix()) {
            return Err(Error::Inconsistent("the image of k is not the kernel of α".into()));
        }
        Ok(SplitExtensionData { k, alpha, beta })
    }

    /// The extension `B ⊕ X` with canonical `k`, `α`, `β`, once the product on `A` is fixed.
    pub fn normal_form(b: &Algebra, x: &Algebra, a: Algebra) -> Result<SplitExtensionData> {
        let (m, n, field) = (b.dim(), x.dim(), a.field());
        let k = Matrix::from_columns(field, m + n, &(0..n).map(|j| a.basis_vector(m + j)).collect::<Vec<_>>());
        let beta = Matrix::from_columns(field, m + n, &(0..m).map(|j| a.basis_vector(j)).collect::<Vec<_>>());
        let alpha = beta.transpose();
        SplitExtensionData::new(
            AlgebraMorphism::new(x.clone(), a.clone(), k)?,
            AlgebraMorphism::new(a.clone(), b.clone(), alpha)?,
            AlgebraMorphism::new(b.clone(), a, beta)?,
        )
    }

    pub fn x(&self) -> &Algebra {
        self.k.source()
    }

    pub fn a(&self) -> &Algebra {
        self.k.target()
    }

    pub fn b(&self) -> &Algebra {
        self.beta.source()
    }

    pub fn k(&self) -> &AlgebraMorphism {
        &self.k
    }

    pub fn alpha(&self) -> &AlgebraMorphism {
        &self.alpha
    }

    pub fn beta(&self) -> &AlgebraMorphism {
        &self.beta
    }

    pub fn export(&self) -> ExtensionExport {
        ExtensionExport {
            algebra: self.a().to_file(),
            k: self.k.matrix.clone(),
            alpha: self.alpha.matrix.clone(),
            beta: self.beta.matrix.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionExport {
    pub algebra: AlgebraFile,
    pub k: Matrix,
    pub alpha: Matrix,
    pub beta: Matrix,
}

/// An assignment `b ↦ (b∗−, −∗b)` on the basis of `B`, with the bracket
/// action `[b, −]` when `X` carries a second product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActingMorphism {
    #[serde(skip)]
    b: Algebra,
    #[serde(skip)]
    x: Algebra,
    actions: Vec<ActorElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    der: Option<Vec<Matrix>>,
}

impl ActingMorphism {
    pub fn new(b: Algebra, x: Algebra, actions: Vec<ActorElement>, der: Option<Vec<Matrix>>) -> Result<ActingMorphism> {
        if b.field() != x.field() {
            return Err(Error::FieldMismatch { expected: b.field(), found: x.field() });
        }
        if actions.len() != b.dim() {
            return Err(Error::DimensionMismatch { expected: b.dim(), found: actions.len() });
        }
        if let Some(e) = actions.iter().find(|e| e.dim() != x.dim() || e.field() != x.field()) {
            return Err(Error::DimensionMismatch { expected: x.dim(), found: e.dim() });
        }
        match (&der, x.num_products()) {
            (None, 1) => {}
            (Some(d), 2) => {
                if d.len() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: b.dim(), found: d.len() });
                }
                if let Some(m) = d.iter().find(|m| (m.rows(), m.cols()) != (x.dim(), x.dim())) {
                    return Err(Error::DimensionMismatch { expected: x.dim(), found: m.rows() });
                }
            }
            (_, p) => {
                return Err(Error::Precondition(format!(
                    "bracket actions must be given exactly when X has two products (it has {p})"
                )))
            }
        }
        Ok(ActingMorphism { b, x, actions, der })
    }

    pub fn zero(b: &Algebra, x: &Algebra) -> ActingMorphism {
        let (f, n) = (x.field(), x.dim());
        let der = (x.num_products() == 2).then(|| vec![Matrix::zeros(f, n, n); b.dim()]);
        ActingMorphism::new(b.clone(), x.clone(), vec![ActorElement::zero(f, n); b.dim()], der)
            .expect("zero assignment is well shaped")
    }

    /// `b ↦ Inn(ψ(b))` for a linear map `ψ: B → X` given as a `dim X × dim B` matrix.
    ///
    /// With two products the bracket action is `ad ψ(b)`.
    pub fn inner(b: &Algebra, x: &Algebra, psi: &Matrix) -> Result<ActingMorphism> {
        if (psi.rows(), psi.cols()) != (x.dim(), b.dim()) {
            return Err(Error::DimensionMismatch { expected: x.dim() * b.dim(), found: psi.rows() * psi.cols() });
        }
        let images: Vec<Element> = (0..b.dim()).map(|j| psi.column(j)).collect();
        let actions = images.iter().map(|y| ActorElement::inner(x, y)).collect();
        let der = (x.num_products() == 2).then(|| images.iter().map(|y| x.left_matrix(1, y)).collect());
        ActingMorphism::new(b.clone(), x.clone(), actions, der)
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn x(&self) -> &Algebra {
        &self.x
    }

    pub fn actions(&self) -> &[ActorElement] {
        &self.actions
    }

    pub fn der(&self) -> Option<&[Matrix]> {
        self.der.as_deref()
    }

    pub fn poisson_image(&self, i: usize) -> Option<PoissonActorElement> {
        let d = self.der.as_ref()?;
        Some(PoissonActorElement::new(self.actions[i].left.clone(), self.actions[i].right.clone(), d[i].clone()))
    }

    /// The image of an arbitrary element of `B`.
    pub fn action(&self, v: &[Scalar]) -> ActorElement {
        let mut out = ActorElement::zero(self.x.field(), self.x.dim());
        for (c, e) in v.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = out.add(&e.scale(c));
            }
        }
        out
    }

    fn der_of(&self, v: &[Scalar]) -> Option<Matrix> {
        let d = self.der.as_ref()?;
        let (f, n) = (self.x.field(), self.x.dim());
        Some(v.iter().zip(d).fold(Matrix::zeros(f, n, n), |acc, (c, m)| &acc + &m.scale(c)))
    }

    /// Eq. (2) style permutability on every ordered basis pair of `B`.
    pub fn is_permutable(&self) -> bool {
        self.actions.iter().all(|f| self.actions.iter().all(|g| permutability_check(f, g)))
    }

    fn flat_key(&self) -> Vec<Scalar> {
        let mut key: Vec<Scalar> = self.actions.iter().flat_map(ActorElement::flatten).collect();
        if let Some(d) = &self.der {
            key.extend(d.iter().flat_map(|m| m.entries().iter().cloned()));
        }
        key
    }
}

/// An actor-like object that acting morphisms land in.
pub trait ActionTarget {
    fn target_algebra(&self) -> &Algebra;

    /// Whether the triple `(left, right, der)` is an element of the target.
    fn admits(&self, action: &ActorElement, der: Option<&Matrix>) -> bool;

    /// Whether acting morphisms must satisfy the permutability condition.
    fn requires_permutability(&self) -> bool;

    /// Whether `φ` is multiplicative for the target's operations on basis pairs of `B`.
    fn is_multiplicative(&self, phi: &ActingMorphism) -> bool;
}

impl ActionTarget for ActorSpace {
    fn target_algebra(&self) -> &Algebra {
        self.algebra()
    }

    fn admits(&self, action: &ActorElement, der: Option<&Matrix>) -> bool {
        der.is_none() && self.contains(action)
    }

    fn requires_permutability(&self) -> bool {
        self.variety().is_associative_type()
    }

    fn is_multiplicative(&self, phi: &ActingMorphism) -> bool {
        // Custom varieties carry default rules that need not describe their extensions.
        let Some(rules) = self.variety().preset_kind().and(self.rules()) else {
            return true;
        };
        let b = phi.b();
        (0..b.dim()).all(|i| {
            (0..b.dim()).all(|j| {
                phi.action(b.basis_product(0, i, j)) == raw_partial_product(rules, &phi.actions[i], &phi.actions[j])
            })
        })
    }
}

/// `R_g ∘ L_f = L_f ∘ R_g`, i.e. `(f∗x)∗g = f∗(x∗g)` for all `x`.
pub fn permutability_check(f: &ActorElement, g: &ActorElement) -> bool {
    f.dim() == g.dim() && &g.right * &f.left == &f.left * &g.right
}

fn pull_back(k: &AlgebraMorphism, v: &[Scalar]) -> Result<Element> {
    solve_linear(k.matrix(), v).ok_or_else(|| Error::Inconsistent("a product with X leaves the kernel".into()))
}

/// Reads the actions of `B` on `X` off an extension, without checking them against an actor.
pub fn induced_actions(e: &SplitExtensionData) -> Result<ActingMorphism> {
    let (a, x, b) = (e.a(), e.x(), e.b());
    let kx: Vec<Element> = (0..x.dim()).map(|j| e.k.matrix.column(j)).collect();
    let op = |p: usize, bi: &Element, left: bool| -> Result<Matrix> {
        let cols = kx
            .iter()
            .map(|y| pull_back(&e.k, &if left { a.mul(p, bi, y) } else { a.mul(p, y, bi) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(x.field(), x.dim(), &cols))
    };
    let mut actions = Vec::with_capacity(b.dim());
    let mut der = Vec::new();
    for i in 0..b.dim() {
        let bi = e.beta.apply(&b.basis_vector(i));
        actions.push(ActorElement::new(op(0, &bi, true)?, op(0, &bi, false)?));
        if x.num_products() == 2 {
            der.push(op(1, &bi, true)?);
        }
    }
    ActingMorphism::new(b.clone(), x.clone(), actions, (x.num_products() == 2).then_some(der))
}

/// `τ`: the acting morphism `b ↦ (β(b)·k(−), k(−)·β(b))` pulled back along `k`.
pub fn extension_to_acting_morphism<T: ActionTarget + ?Sized>(
    e: &SplitExtensionData,
    target: &T,
) -> Result<ActingMorphism> {
    if !e.x().same_structure(target.target_algebra()) {
        return Err(Error::Precondition("the extension's kernel is not the target's algebra".into()));
    }
    let phi = induced_actions(e)?;
    for i in 0..phi.b.dim() {
        let d = phi.der.as_ref().map(|d| &d[i]);
        if !target.admits(&phi.actions[i], d) {
            return Err(Error::Inconsistent(format!("the action of {} is not in the actor", phi.b.basis_names()[i])));
        }
    }
    if target.requires_permutability() && !phi.is_permutable() {
        return Err(Error::Inconsistent("induced actions violate permutability".into()));
    }
    if !target.is_multiplicative(&phi) {
        return Err(Error::Inconsistent("induced actions are not multiplicative".into()));
    }
    Ok(phi)
}

/// Kernel and image of `x ↦ (x·−, −·x)` into an actor space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnReport {
    pub algebra_dim: usize,
    pub actor_dim: usize,
    pub rank: usize,
    pub kernel: Vec<Vec<String>>,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
}

pub fn inn_map(a: &Algebra, s: &ActorSpace) -> Result<InnReport> {
    if !a.field().eq(&s.algebra().field()) || a.dim() != s.algebra().dim() {
        return Err(Error::Precondition("the actor space was computed for a different algebra".into()));
    }
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = a.basis_vectors().iter().map(|x| ActorElement::inner(a, x).flatten()).collect();
    let m = Matrix::from_columns(a.field(), 2 * n * n, &cols);
    let image = m.image();
    if !image.is_subspace_of(s.subspace())? {
        return Err(Error::Inconsistent("an inner pair falls outside the actor".into()));
    }
    let kernel = crate::linalg::nullspace_basis(&m);
    let rank = image.dim();
    let injective = kernel.dim() == 0;
    let surjective = rank == s.dim();
    Ok(InnReport {
        algebra_dim: n,
        actor_dim: s.dim(),
        rank,
        kernel: kernel.to_strings(),
        injective,
        surjective,
        bijective: injective && surjective,
    })
}

fn direct_sum_names(b: &Algebra, x: &Algebra) -> Vec<String> {
    let mut names: Vec<String> = b.basis_names().to_vec();
    for name in x.basis_names() {
        let mut name = name.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    names
}

/// Product tables on `B ⊕ X` from explicit cross terms.
///
/// `cross(p, i, j, left)` returns `b_i ·_p x_j` (`left`) or `x_j ·_p b_i`, in `X` coordinates.
fn glue(
    b: &Algebra,
    x: &Algebra,
    name: String,
    mut cross: impl FnMut(usize, usize, usize, bool) -> Element,
) -> Algebra {
    let (m, n, field) = (b.dim(), x.dim(), b.field());
    let pnames: Vec<String> = x.product_names().iter().map(|s| s.to_string()).collect();
    let pnames: Vec<&str> = pnames.iter().map(String::as_str).collect();
    Algebra::from_fn(name, field, direct_sum_names(b, x), &pnames, |p, i, j| {
        let mut v = vec![field.zero(); m + n];
        let tail: Element = match (i < m, j < m) {
            (true, true) => {
                v[..m].clone_from_slice(b.basis_product(p, i, j));
                return v;
            }
            (true, false) => cross(p, i, j - m, true),
            (false, true) => cross(p, j, i - m, false),
            (false, false) => x.basis_product(p, i - m, j - m).to_vec(),
        };
        v[m..].clone_from_slice(&tail);
        v
    })
}

/// `B ⋉_φ X` with `(b,x)(b',x') = (bb', xx' + φ(b)∗x' + x∗φ(b'))` and, for two
/// products, `[(b,x),(b',x')] = ([b,b'], [x,x'] + [φ(b),x'] − [φ(b'),x])`.
pub fn semidirect_product(b: &Algebra, x: &Algebra, phi: &ActingMorphism, v: &Variety) -> Result<SplitExtensionData> {
    if !phi.b.same_structure(b) || !phi.x.same_structure(x) {
        return Err(Error::Precondition("φ was built for different algebras".into()));
    }
    if b.num_products() != x.num_products() {
        return Err(Error::Precondition("B and X must carry the same number of products".into()));
    }
    let a = glue(b, x, format!("{} x| {}", b.name(), x.name()), |p, i, j, left| {
        let xj = x.basis_vector(j);
        match (p, left) {
            (0, true) => phi.actions[i].left.apply(&xj),
            (0, false) => phi.actions[i].right.apply(&xj),
            (_, true) => phi.der.as_ref().expect("two-product φ")[i].apply(&xj),
            (_, false) => phi.der.as_ref().expect("two-product φ")[i].apply(&xj).iter().map(|c| -c).collect(),
        }
    });
    v.require(&a)?;
    SplitExtensionData::normal_form(b, x, a)
}

fn candidate_count(field: Field, unknowns: usize, budget: u64) -> Result<u64> {
    let q = field.order().ok_or_else(|| Error::Precondition("enumeration needs a finite field".into()))?;
    let needed = u32::try_from(unknowns).ok().and_then(|u| (q as u128).checked_pow(u)).filter(|&c| c <= budget as u128);
    match needed {
        Some(c) => Ok(c as u64),
        None => Err(Error::BudgetExceeded { needed: format!("{q}^{unknowns}"), budget }),
    }
}

fn digits(field: Field, mut index: u64, len: usize) -> Vec<Scalar> {
    let q = field.order().expect("finite field");
    (0..len)
        .map(|_| {
            let d = index % q;
            index /= q;
            field.from_i64(d as i64)
        })
        .collect()
}

/// All split extensions of `B` by `X` in `v`, one per class, in lexicographic table order.
///
/// Candidates are every choice of cross terms `b·x`, `x·b` (and `[b,x]`,
/// `[x,b]` for two products) over the finite field.
pub fn enumerate_split_extensions(
    b: &Algebra,
    x: &Algebra,
    v: &Variety,
    budget: u64,
) -> Result<Vec<SplitExtensionData>> {
    if b.field() != x.field() {
        return Err(Error::FieldMismatch { expected: b.field(), found: x.field() });
    }
    if b.num_products() != v.num_products() || x.num_products() != v.num_products() {
        return Err(Error::Precondition(format!("{} needs {} products on B and X", v.name(), v.num_products())));
    }
    let field = x.field();
    v.check_characteristic(field)?;
    let (m, n, np) = (b.dim(), x.dim(), x.num_products());
    let block = m * n * n;
    let unknowns = 2 * block * np;
    let count = candidate_count(field, unknowns, budget)?;
    let survivors: Vec<Algebra> = (0..count)
        .into_par_iter()
        .filter_map(|index| {
            let t = digits(field, index, unknowns);
            // Entry (k, j) of the i-th operator, per (product, side).
            let a = glue(b, x, format!("{} x| {}", b.name(), x.name()), |p, i, j, left| {
                let base = (2 * p + usize::from(!left)) * block + i * n * n;
                (0..n).map(|k| t[base + k * n + j].clone()).collect()
            });
            match v.contains(&a) {
                Ok(true) => Some(a),
                _ => None,
            }
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in survivors {
        let e = SplitExtensionData::normal_form(b, x, a)?;
        let key: Vec<String> = induced_actions(&e)?.flat_key().iter().map(ToString::to_string).collect();
        if seen.insert(key) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Counts on both sides of `SplExt(B, X) ≅ Hom(B, Actor(X))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub split_extensions: usize,
    pub acting_morphisms: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub witness: Option<String>,
}

/// Elements the actor of a unital `X` is identified with: `X` itself, or `Z(X)` for Poisson varieties.
fn actor_carrier(x: &Algebra, v: &Variety) -> Result<Subspace> {
    match v.preset_kind() {
        Some(Preset::Assoc | Preset::CAssoc | Preset::Alt) => Ok(Subspace::full(x.field(), x.dim())),
        Some(Preset::Pois | Preset::CPois) => x.lie_center(1),
        _ => Err(Error::Precondition(format!(
            "no actor identification is available for {}; use assoc, cassoc, alt, pois or cpois",
            v.name()
        ))),
    }
}

/// Brute-force list of variety morphisms `B → X` with image in `carrier`.
fn morphisms_into(b: &Algebra, x: &Algebra, carrier: &Subspace, budget: u64) -> Result<Vec<Matrix>> {
    let (m, n, field) = (b.dim(), x.dim(), x.field());
    let d = carrier.dim();
    let count = candidate_count(field, m * d, budget)?;
    let found = (0..count)
        .into_par_iter()
        .filter_map(|index| {
            let t = digits(field, index, m * d);
            let cols: Vec<Element> = (0..m).map(|i| carrier.combine(&t[i * d..(i + 1) * d])).collect();
            let psi = Matrix::from_columns(field, n, &cols);
            AlgebraMorphism::new(b.clone(), x.clone(), psi.clone()).ok().map(|_| psi)
        })
        .collect();
    Ok(found)
}

/// Compares the enumerated split extensions with morphisms into the actor of a unital `X`.
pub fn verify_bijection(b: &Algebra, x: &Algebra, v: &Variety, budget: u64) -> Result<BijectionReport> {
    let carrier = actor_carrier(x, v)?;
    v.require(x)?;
    if x.find_unit().is_none() {
        return Err(Error::Precondition(format!("{} has no unit", x.name())));
    }
    let extensions = enumerate_split_extensions(b, x, v, budget)?;
    let morphisms = morphisms_into(b, x, &carrier, budget)?;
    let render = |key: &[Scalar]| key.iter().map(ToString::to_string).collect::<Vec<_>>();
    let ext_keys: BTreeSet<Vec<String>> =
        extensions.iter().map(|e| induced_actions(e).map(|phi| render(&phi.flat_key()))).collect::<Result<_>>()?;
    let mor_keys: BTreeSet<Vec<String>> = morphisms
        .iter()
        .map(|psi| ActingMorphism::inner(b, x, psi).map(|phi| render(&phi.flat_key())))
        .collect::<Result<_>>()?;
    let witness = ext_keys
        .difference(&mor_keys)
        .next()
        .map(|k| format!("extension with actions [{}] has no matching morphism", k.join(", ")))
        .or_else(|| {
            mor_keys
                .difference(&ext_keys)
                .next()
                .map(|k| format!("morphism with actions [{}] has no matching extension", k.join(", ")))
        });
    Ok(BijectionReport {
        split_extensions: extensions.len(),
        acting_morphisms: morphisms.len(),
        matches: witness.is_none() && extensions.len() == morphisms.len(),
        witness,
    })
}

impl ActingMorphism {
    /// Whether every basis image lies in `target` and, where the target demands it,
    /// the assignment is permutable and multiplicative.
    pub fn is_acting_for<T: ActionTarget + ?Sized>(&self, target: &T) -> bool {
        self.x.same_structure(target.target_algebra())
            && (0..self.b.dim()).all(|i| target.admits(&self.actions[i], self.der.as_ref().map(|d| &d[i])))
            && (!target.requires_permutability() || self.is_permutable())
            && target.is_multiplicative(self)
    }

    pub(crate) fn poisson_multiplicative(&self) -> bool {
        let b = &self.b;
        let image = |v: &[Scalar]| -> PoissonActorElement {
            let a = self.action(v);
            PoissonActorElement::new(a.left, a.right, self.der_of(v).expect("two-product φ"))
        };
        (0..b.dim()).all(|i| {
            (0..b.dim()).all(|j| {
                let (f, g) = (self.poisson_image(i).expect("der"), self.poisson_image(j).expect("der"));
                image(b.basis_product(0, i, j)) == raw_usga_multiply(&f, &g)
                    && image(b.basis_product(1, i, j)) == raw_usga_bracket(&f, &g)
            })
        })
    }
}

/// Whether `rules` reproduce the extension's own products on `B`. Used by tests
/// to confirm the chosen partial product is the one extensions induce.
pub fn rules_match_extension(rules: &ProductRules, e: &SplitExtensionData) -> Result<bool> {
    let phi = induced_actions(e)?;
    let b = e.b();
    Ok((0..b.dim()).all(|i| {
        (0..b.dim()).all(|j| {
            phi.action(b.basis_product(0, i, j)) == raw_partial_product(rules, &phi.actions[i], &phi.actions[j])
        })
    }))
}
