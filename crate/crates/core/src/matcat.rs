//! Matrix ⊗-categories and the abstract descent setting.
//!
//! Objects are dimensions, optionally with one acting matrix per group element;
//! morphisms are matrices of shape `dim(target) x dim(source)`. The tensor
//! product is the Kronecker product (index `i * dim(Y) + j`), strictly
//! associative; symmetry and duality carry explicit matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::numfield::FieldElement;
use crate::Mat;

/// An object of a matrix category, or a representation when `action` is non-empty.
#[derive(Clone, Debug, PartialEq)]
pub struct CatObject {
    pub dim: usize,
    /// One matrix per group element, in group-table order; empty for plain matrix categories.
    pub action: Vec<Mat>,
}

impl CatObject {
    pub fn plain(dim: usize) -> Self {
        CatObject { dim, action: Vec::new() }
    }

    pub fn rep(dim: usize, action: Vec<Mat>) -> Self {
        CatObject { dim, action }
    }

    pub fn zero_like(&self) -> Self {
        CatObject { dim: 0, action: self.action.iter().map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.dim)
    }

    /// `n` copies of the trivial one-dimensional object acting like `self`.
    pub fn trivial_like(&self, n: usize) -> Self {
        CatObject { dim: n, action: self.action.iter().map(|_| Mat::identity(n)).collect() }
    }

    /// Checks shapes and, for representations, the homomorphism law against `group`.
    pub fn validate(&self, group: Option<&GroupTable>) -> Result<()> {
        for a in &self.action {
            if a.shape() != (self.dim, self.dim) {
                return Err(Error::BadMorphism("action matrix has the wrong shape".into()));
            }
        }
        if let Some(g) = group {
            if self.action.len() != g.order() {
                return Err(Error::BadMorphism(format!(
                    "{} action matrices for a group of order {}",
                    self.action.len(),
                    g.order()
                )));
            }
            if !self.action[g.identity()].is_identity() {
                return Err(Error::BadMorphism("identity does not act trivially".into()));
            }
            for x in g.elements() {
                for y in g.elements() {
                    if &self.action[x] * &self.action[y] != self.action[g.mul(x, y)] {
                        return Err(Error::BadMorphism(format!(
                            "not a homomorphism at ({}, {})",
                            g.name(x),
                            g.name(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `m : self -> target` has the right shape and commutes with the action.
    pub fn is_morphism_to(&self, target: &CatObject, m: &Mat) -> bool {
        m.shape() == (target.dim, self.dim)
            && self.action.len() == target.action.len()
            && self.action.iter().zip(&target.action).all(|(a, b)| m * a == b * m)
    }
}

/// A morphism with its endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct CatMorphism {
    pub source: CatObject,
    pub target: CatObject,
    pub matrix: Mat,
}

impl CatMorphism {
    pub fn new(source: CatObject, target: CatObject, matrix: Mat) -> Result<Self> {
        if !source.is_morphism_to(&target, &matrix) {
            return Err(Error::BadMorphism(format!(
                "{}x{} matrix is not a morphism from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        Ok(CatMorphism { source, target, matrix })
    }

    pub fn identity(x: &CatObject) -> Self {
        CatMorphism { source: x.clone(), target: x.clone(), matrix: x.identity() }
    }

    pub fn compose(&self, before: &CatMorphism) -> Result<Self> {
        if before.target != self.source {
            return Err(Error::BadMorphism("composable endpoints differ".into()));
        }
        Ok(CatMorphism {
            source: before.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &before.matrix,
        })
    }
}

pub fn tensor_obj(x: &CatObject, y: &CatObject) -> CatObject {
    let action = x.action.iter().zip(&y.action).map(|(a, b)| a.kronecker(b)).collect();
    CatObject { dim: x.dim * y.dim, action }
}

pub fn sum_obj(x: &CatObject, y: &CatObject) -> CatObject {
    let action = x.action.iter().zip(&y.action).map(|(a, b)| a.direct_sum(b)).collect();
    CatObject { dim: x.dim + y.dim, action }
}

pub fn sum_all(objs: &[CatObject], zero: &CatObject) -> CatObject {
    objs.iter().fold(zero.clone(), |acc, o| sum_obj(&acc, o))
}

pub fn kronecker(phi: &CatMorphism, psi: &CatMorphism) -> Result<CatMorphism> {
    if phi.source.action.len() != psi.source.action.len() {
        return Err(Error::BadMorphism("tensor of morphisms from different settings".into()));
    }
    Ok(CatMorphism {
        source: tensor_obj(&phi.source, &psi.source),
        target: tensor_obj(&phi.target, &psi.target),
        matrix: phi.matrix.kronecker(&psi.matrix),
    })
}

pub fn direct_sum(phi: &CatMorphism, psi: &CatMorphism) -> Result<CatMorphism> {
    if phi.source.action.len() != psi.source.action.len() {
        return Err(Error::BadMorphism("sum of morphisms from different settings".into()));
    }
    Ok(CatMorphism {
        source: sum_obj(&phi.source, &psi.source),
        target: sum_obj(&phi.target, &psi.target),
        matrix: phi.matrix.direct_sum(&psi.matrix),
    })
}

/// Inclusion of summand `k` into `⊕ dims`.
pub fn inclusion(dims: &[usize], k: usize) -> Mat {
    let total: usize = dims.iter().sum();
    let off: usize = dims[..k].iter().sum();
    Mat::from_fn(total, dims[k], |i, j| if i == off + j { FieldElement::one() } else { FieldElement::zero() })
}

/// Projection of `⊕ dims` onto summand `k`.
pub fn projection(dims: &[usize], k: usize) -> Mat {
    inclusion(dims, k).transpose()
}

/// The symmetry `X ⊗ Y -> Y ⊗ X` for `dim X = m`, `dim Y = n`.
pub fn swap(m: usize, n: usize) -> Mat {
    Mat::from_fn(m * n, m * n, |r, c| {
        let (i, j) = (c / n, c % n);
        if r == j * m + i {
            FieldElement::one()
        } else {
            FieldElement::zero()
        }
    })
}

/// Dual object with evaluation `X* ⊗ X -> 1` and coevaluation `1 -> X ⊗ X*`.
pub fn dual_object(x: &CatObject) -> Result<(CatObject, Mat, Mat)> {
    let n = x.dim;
    let action = x.action.iter().map(|a| a.inverse().map(|i| i.transpose())).collect::<Result<Vec<_>>>()?;
    let ev = Mat::from_fn(1, n * n, |_, c| if c / n == c % n { FieldElement::one() } else { FieldElement::zero() });
    let coev = ev.transpose();
    Ok((CatObject { dim: n, action }, ev, coev))
}

/// The two zig-zag composites `X -> X` and `X* -> X*`; both are identities.
pub fn zigzags(x: &CatObject) -> Result<(Mat, Mat)> {
    let n = x.dim;
    let (_, ev, coev) = dual_object(x)?;
    let id = Mat::identity(n);
    let first = &id.kronecker(&ev) * &coev.kronecker(&id);
    let second = &ev.kronecker(&id) * &id.kronecker(&coev);
    Ok((first, second))
}

/// One of the two categories of a descent setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The base category `A`.
    Base,
    /// The upper category `A'`.
    Upper,
}

/// The data `(A, A', Γ, f*, f_*, η, ε, i_g, c_{g,h}, tr)` a descent computation runs against.
///
/// Hom spaces are vector spaces over a field `k` (the rationals for the
/// semilinear model, the coefficient field for representation categories);
/// [`DescentSetting::flatten`] gives coordinates over `k`.
pub trait DescentSetting: Send + Sync {
    fn name(&self) -> &str;

    fn gamma(&self) -> &GroupTable;

    fn unit(&self, side: Side) -> CatObject;

    fn validate_object(&self, side: Side, x: &CatObject) -> Result<()>;

    fn is_morphism(&self, side: Side, source: &CatObject, target: &CatObject, m: &Mat) -> bool;

    /// `f*` on objects.
    fn pull(&self, a: &CatObject) -> CatObject;

    /// `f*` on morphisms.
    fn pull_mor(&self, m: &Mat) -> Mat;

    /// `f_*` on objects.
    fn push(&self, c: &CatObject) -> CatObject;

    /// `f_*` on morphisms.
    fn push_mor(&self, m: &Mat) -> Mat;

    /// `η_A : A -> f_* f* A`.
    fn unit_map(&self, a: &CatObject) -> Mat;

    /// `ε_C : f* f_* C -> C`.
    fn counit_map(&self, c: &CatObject) -> Mat;

    /// `g*` on objects of `A'`.
    fn twist(&self, g: usize, c: &CatObject) -> CatObject;

    /// `g*` on morphisms of `A'`.
    fn twist_mor(&self, g: usize, m: &Mat) -> Mat;

    /// `i_g(A) : g* f* A -> f* A`.
    fn comparison(&self, g: usize, a: &CatObject) -> Mat;

    /// `c_{g,h}(C) : h* g* C -> (gh)* C`.
    fn cocycle(&self, g: usize, h: usize, c: &CatObject) -> Mat;

    /// `tr : f_* 1 -> 1`.
    fn weak_trace(&self) -> Mat;

    /// A `k`-basis of `Hom(x, y)` on the given side.
    fn hom_basis(&self, side: Side, x: &CatObject, y: &CatObject) -> Vec<Mat>;

    /// Coordinates of a morphism of the given side over `k`.
    fn flatten(&self, side: Side, m: &Mat) -> Vec<FieldElement>;

    /// Inverse of [`DescentSetting::flatten`] for a `rows x cols` morphism.
    fn unflatten(&self, side: Side, rows: usize, cols: usize, v: &[FieldElement]) -> Mat;

    /// Subobject of `x` cut out by a split idempotent `ι π`.
    fn subobject(&self, x: &CatObject, inclusion: &Mat, projection: &Mat) -> CatObject {
        CatObject { dim: inclusion.cols(), action: x.action.iter().map(|a| &(projection * a) * inclusion).collect() }
    }

    /// The forgetful functor `A' -> Vec_k` on morphisms. Morphisms of `A` are already `k`-matrices.
    fn forget_mor(&self, m: &Mat) -> Mat;

    /// A uniformly chosen small element of the upper scalar field.
    fn random_scalar(&self, rng: &mut rand_chacha::ChaCha8Rng) -> FieldElement;

    /// Objects of `A` used in validation sweeps.
    fn sample_objects(&self, max_dim: usize) -> Vec<CatObject>;

    /// Objects of `A'` used in validation sweeps.
    fn sample_objects_upper(&self, max_dim: usize) -> Vec<CatObject>;

    /// Degree of `k` over the rationals.
    fn k_degree(&self) -> usize;
}

/// Identity of `⊕_g` copies laid out as a column of identities.
pub fn diagonal(n: usize, copies: usize) -> Mat {
    Mat::vstack_all(&vec![Mat::identity(n); copies], n).expect("equal widths")
}

/// Row of identities `⊕_g C -> C`.
pub fn sum_map(n: usize, copies: usize) -> Mat {
    Mat::hstack_all(&vec![Mat::identity(n); copies], n).expect("equal heights")
}

/// Result of checking the setting axioms on a sweep of objects.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SettingValidation {
    pub objects_checked: usize,
    pub failures: Vec<String>,
}

impl SettingValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Triangle identities for `f* ⊣ f_*`, naturality of `i_g`, its compatibility with
/// `c_{g,h}`, and the associativity of `c`, on every sampled object of dimension at most `max_dim`.
pub fn validate_setting(s: &dyn DescentSetting, max_dim: usize) -> SettingValidation {
    let mut out = SettingValidation::default();
    let gamma = s.gamma();
    for a in s.sample_objects(max_dim) {
        out.objects_checked += 1;
        let fa = s.pull(&a);
        let tri = &s.counit_map(&fa) * &s.pull_mor(&s.unit_map(&a));
        if !tri.is_identity() {
            out.failures.push(format!("{}: ε_f*A ∘ f*η_A ≠ 1 for dim {}", s.name(), a.dim));
        }
        if !s.is_morphism(Side::Base, &a, &s.push(&fa), &s.unit_map(&a)) {
            out.failures.push(format!("{}: η_A is not a morphism for dim {}", s.name(), a.dim));
        }
        for g in gamma.elements() {
            let ig = s.comparison(g, &a);
            if !s.is_morphism(Side::Upper, &s.twist(g, &fa), &fa, &ig) || !ig.is_invertible() {
                out.failures.push(format!("{}: i_{} is not an isomorphism", s.name(), gamma.name(g)));
            }
            for h in gamma.elements() {
                let lhs = &s.comparison(gamma.mul(g, h), &a) * &s.cocycle(g, h, &fa);
                let rhs = &s.comparison(h, &a) * &s.twist_mor(h, &s.comparison(g, &a));
                if lhs != rhs {
                    out.failures.push(format!(
                        "{}: i and c incompatible at ({}, {})",
                        s.name(),
                        gamma.name(g),
                        gamma.name(h)
                    ));
                }
            }
        }
    }
    for c in s.sample_objects_upper(max_dim) {
        out.objects_checked += 1;
        let fc = s.push(&c);
        let tri = &s.push_mor(&s.counit_map(&c)) * &s.unit_map(&fc);
        if !tri.is_identity() {
            out.failures.push(format!("{}: f_*ε_C ∘ η_f_*C ≠ 1 for dim {}", s.name(), c.dim));
        }
        if !s.is_morphism(Side::Upper, &s.pull(&fc), &c, &s.counit_map(&c)) {
            out.failures.push(format!("{}: ε_C is not a morphism for dim {}", s.name(), c.dim));
        }
        for g in gamma.elements() {
            for h in gamma.elements() {
                let chg = s.cocycle(g, h, &c);
                let src = s.twist(h, &s.twist(g, &c));
                if !s.is_morphism(Side::Upper, &src, &s.twist(gamma.mul(g, h), &c), &chg) {
                    out.failures.push(format!("{}: c_{{{},{}}} is not a morphism", s.name(), g, h));
                }
                for k in gamma.elements() {
                    // k*h*g*C -> (ghk)*C both ways
                    let gh = gamma.mul(g, h);
                    let hk = gamma.mul(h, k);
                    let lhs = &s.cocycle(gh, k, &c) * &s.twist_mor(k, &chg);
                    let rhs = &s.cocycle(g, hk, &c) * &s.cocycle(h, k, &s.twist(g, &c));
                    if lhs != rhs {
                        out.failures.push(format!("{}: c is not associative at ({g}, {h}, {k})", s.name()));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisExtension;
    use crate::scalar::Field;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kronecker_and_sums() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).kronecker(&m(&[&[2]])), m(&[&[0, 2], &[2, 0]]));
        let phi = CatMorphism::identity(&CatObject::plain(2));
        let zero = CatMorphism::identity(&CatObject::plain(0));
        assert_eq!(direct_sum(&phi, &zero).unwrap(), phi);
        let two = CatObject::plain(2);
        let three = CatObject::plain(3);
        assert_eq!(sum_obj(&two, &three).dim, 5);
        let dims = [2, 3];
        for i in 0..2 {
            for j in 0..2 {
                let pij = &projection(&dims, i) * &inclusion(&dims, j);
                if i == j {
                    assert!(pij.is_identity());
                } else {
                    assert!(pij.is_zero());
                }
            }
        }
        let unit = CatMorphism::identity(&CatObject::plain(1));
        let psi = CatMorphism::new(CatObject::plain(2), CatObject::plain(2), m(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(kronecker(&unit, &psi).unwrap().matrix, psi.matrix);
    }

    #[test]
    fn swap_is_natural_and_involutive() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let b = m(&[&[0, 1, 1], &[2, 0, 0], &[1, 1, 1]]);
        assert_eq!(&swap(2, 3) * &a.kronecker(&b), &b.kronecker(&a) * &swap(2, 3));
        assert!((&swap(3, 2) * &swap(2, 3)).is_identity());
    }

    #[test]
    fn duals_satisfy_zigzags() {
        let (d, ev, coev) = dual_object(&CatObject::plain(1)).unwrap();
        assert_eq!(d.dim, 1);
        assert!(ev.is_identity() && coev.is_identity());
        let e = GaloisExtension::gaussian();
        let i = e.generator();
        let g = Mat::from_fn(3, 3, |r, c| {
            if r == c {
                FieldElement::one()
            } else if r < c {
                i.clone()
            } else {
                FieldElement::zero()
            }
        });
        let x = CatObject::rep(3, vec![Mat::identity(3), g]);
        let (dx, _, _) = dual_object(&x).unwrap();
        assert_eq!(dx.dim, 3);
        let (a, b) = zigzags(&x).unwrap();
        assert!(a.is_identity() && b.is_identity());
    }

    #[test]
    fn object_validation() {
        let z2 = GroupTable::cyclic(2);
        let sign = CatObject::rep(1, vec![m(&[&[1]]), m(&[&[-1]])]);
        assert!(sign.validate(Some(&z2)).is_ok());
        let bad = CatObject::rep(1, vec![m(&[&[1]]), m(&[&[2]])]);
        assert!(bad.validate(Some(&z2)).is_err());
        assert!(sign.is_morphism_to(&sign, &m(&[&[5]])));
        let triv = CatObject::rep(1, vec![m(&[&[1]]), m(&[&[1]])]);
        assert!(!sign.is_morphism_to(&triv, &m(&[&[5]])));
    }
}
