//! The descent calculus over an arbitrary [`DescentSetting`]: twisted morphisms, the
//! brackets `[g]`, the Cartesian comparison, traces, effective descent, descent of
//! morphisms, the retraction `ρ`, and Artin objects.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matcat::{diagonal, inclusion, sum_map, tensor_obj, CatObject, DescentSetting, Side};
use crate::numfield::FieldElement;
use crate::scalar::Field;
use crate::Mat;

/// An object `C` of `A'` with isomorphisms `b_g : g*C -> C`, indexed by the elements of `Γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescentDatum {
    pub object: CatObject,
    pub b: Vec<Mat>,
}

impl DescentDatum {
    pub fn new(s: &dyn DescentSetting, object: CatObject, b: Vec<Mat>) -> Result<Self> {
        let d = DescentDatum { object, b };
        d.validate(s)?;
        Ok(d)
    }

    /// A datum whose axioms have not been checked.
    pub fn unchecked(object: CatObject, b: Vec<Mat>) -> Self {
        DescentDatum { object, b }
    }

    /// `(f*A, i_g(A))`.
    pub fn canonical(s: &dyn DescentSetting, a: &CatObject) -> Self {
        let b = s.gamma().elements().map(|g| s.comparison(g, a)).collect();
        DescentDatum { object: s.pull(a), b }
    }

    pub fn dim(&self) -> usize {
        self.object.dim
    }

    /// Checks morphism shapes, the cocycle law `b_h h*(b_g) = b_{gh} c_{g,h}`, invertibility
    /// and `b_e = 1`, in that order.
    pub fn validate(&self, s: &dyn DescentSetting) -> Result<()> {
        let gamma = s.gamma();
        s.validate_object(Side::Upper, &self.object)?;
        if self.b.len() != gamma.order() {
            return Err(Error::InvalidDatum(format!("{} maps for a group of order {}", self.b.len(), gamma.order())));
        }
        for g in gamma.elements() {
            if !s.is_morphism(Side::Upper, &s.twist(g, &self.object), &self.object, &self.b[g]) {
                return Err(Error::InvalidDatum(format!("b_{} is not a morphism g*C -> C", gamma.name(g))));
            }
        }
        for g in gamma.elements() {
            for h in gamma.elements() {
                let lhs = &self.b[h] * &s.twist_mor(h, &self.b[g]);
                let rhs = &self.b[gamma.mul(g, h)] * &s.cocycle(g, h, &self.object);
                if lhs != rhs {
                    return Err(Error::CocycleViolation { g, h });
                }
            }
        }
        for g in gamma.elements() {
            if !self.b[g].is_invertible() {
                return Err(Error::InvalidDatum(format!("b_{} is not invertible", gamma.name(g))));
            }
        }
        if !self.b[gamma.identity()].is_identity() {
            return Err(Error::InvalidDatum("b at the identity is not the identity".into()));
        }
        Ok(())
    }
}

/// Output of [`descend`].
#[derive(Clone, Debug, PartialEq)]
pub struct DescentResult {
    /// The descended object `B` of `A`.
    pub object: CatObject,
    /// `ι~ : f*B -> C`, an isomorphism of descent data.
    pub iso: Mat,
    /// Its inverse `j : C -> f*B`.
    pub inverse: Mat,
    /// `e_Γ = (1/|Γ|) Σ_g [g]` on `f_*C`.
    pub idempotent: Mat,
    /// Splitting `e_Γ = ι π` with `π ι = 1`.
    pub inclusion: Mat,
    pub projection: Mat,
}

/// A representation of `Γ` on `Hom(1, f*A)`, carried by an `n x n` matrix per element.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinImage {
    pub lattice_dim: usize,
    pub action: Vec<Mat>,
}

/// `f*f_*C -> ⊕_g g*C`, its inverse, and the section `σ_C = u^-1 ∘ (inclusion at g = e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianIso {
    pub u: Mat,
    pub u_inverse: Mat,
    pub section: Mat,
}

fn inv_order(s: &dyn DescentSetting) -> FieldElement {
    FieldElement::from_i64(s.gamma().order() as i64).inv()
}

fn require_datum(d: &DescentDatum) -> Result<()> {
    if d.b.is_empty() {
        Err(Error::MissingDatum)
    } else {
        Ok(())
    }
}

/// `φ^g = b'_g ∘ g*φ ∘ b_g^-1` for `φ : C -> C'` between objects with data.
pub fn twist_hom(s: &dyn DescentSetting, g: usize, x: &DescentDatum, y: &DescentDatum, phi: &Mat) -> Result<Mat> {
    require_datum(x)?;
    require_datum(y)?;
    s.gamma().check(g)?;
    if phi.shape() != (y.dim(), x.dim()) {
        return Err(Error::Shape(format!(
            "{}x{} map between objects of dimensions {} and {}",
            phi.rows(),
            phi.cols(),
            x.dim(),
            y.dim()
        )));
    }
    Ok(&(&y.b[g] * &s.twist_mor(g, phi)) * &x.b[g].inverse()?)
}

/// The `g`-component `g*(ε_C) ∘ i_g(f_*C)^-1 : f*f_*C -> g*C` of the Cartesian comparison.
pub fn cartesian_component(s: &dyn DescentSetting, g: usize, c: &CatObject) -> Result<Mat> {
    let fc = s.push(c);
    Ok(&s.twist_mor(g, &s.counit_map(c)) * &s.comparison(g, &fc).inverse()?)
}

/// `ε^g_C = b_g ∘ g*(ε_C) ∘ i_g(f_*C)^-1 : f*f_*C -> C`.
pub fn twisted_counit(s: &dyn DescentSetting, g: usize, d: &DescentDatum) -> Result<Mat> {
    Ok(&d.b[g] * &cartesian_component(s, g, &d.object)?)
}

/// `[g] = f_*(ε^g_C) ∘ η_{f_*C}`, an automorphism of `f_*C`.
pub fn bracket(s: &dyn DescentSetting, g: usize, d: &DescentDatum) -> Result<Mat> {
    d.validate(s)?;
    bracket_unchecked(s, g, d)
}

fn bracket_unchecked(s: &dyn DescentSetting, g: usize, d: &DescentDatum) -> Result<Mat> {
    let fc = s.push(&d.object);
    Ok(&s.push_mor(&twisted_counit(s, g, d)?) * &s.unit_map(&fc))
}

pub fn cartesian_iso(s: &dyn DescentSetting, c: &CatObject) -> Result<CartesianIso> {
    let gamma = s.gamma();
    let parts = gamma.elements().map(|g| cartesian_component(s, g, c)).collect::<Result<Vec<_>>>()?;
    let u = Mat::vstack_all(&parts, s.push(c).dim)?;
    let u_inverse = u.inverse().map_err(|_| Error::NotCartesian)?;
    let dims = vec![c.dim; gamma.order()];
    let section = &u_inverse * &inclusion(&dims, gamma.identity());
    Ok(CartesianIso { u, u_inverse, section })
}

/// The comparison twisted by a datum: components `ε^g_C`, i.e. `(⊕ b_g) ∘ u`.
pub fn cartesian_iso_with_datum(s: &dyn DescentSetting, d: &DescentDatum) -> Result<Mat> {
    let parts = s.gamma().elements().map(|g| twisted_counit(s, g, d)).collect::<Result<Vec<_>>>()?;
    Mat::vstack_all(&parts, s.push(&d.object).dim)
}

/// `w_A = f_*(1 ⊗ ε_1) ∘ η_{A ⊗ f_*1} : A ⊗ f_*1 -> f_*f*A`.
pub fn weak_projection(s: &dyn DescentSetting, a: &CatObject) -> Result<Mat> {
    let r = s.push(&s.unit(Side::Upper));
    let a_r = tensor_obj(a, &r);
    let inner = s.pull(a).identity().kronecker(&s.counit_map(&s.unit(Side::Upper)));
    let w = &s.push_mor(&inner) * &s.unit_map(&a_r);
    if !w.is_invertible() {
        return Err(Error::WeakProjectionFails);
    }
    Ok(w)
}

/// `tr_A = (1_A ⊗ tr) ∘ w_A^-1 : f_*f*A -> A`.
pub fn trace_map(s: &dyn DescentSetting, a: &CatObject) -> Result<Mat> {
    let w = weak_projection(s, a)?;
    Ok(&a.identity().kronecker(&s.weak_trace()) * &w.inverse()?)
}

/// `(1/|Γ|) tr_B ∘ f_*φ ∘ η_A`, inverse to `ψ ↦ f*ψ` on invariant morphisms.
pub fn alpha_inverse(s: &dyn DescentSetting, a: &CatObject, b: &CatObject, phi: &Mat) -> Result<Mat> {
    let t = trace_map(s, b)?;
    Ok((&(&t * &s.push_mor(phi)) * &s.unit_map(a)).scale(&inv_order(s)))
}

/// Effective descent through the idempotent `e_Γ = (1/|Γ|) Σ_g [g]` on `f_*C`.
pub fn descend(s: &dyn DescentSetting, d: &DescentDatum) -> Result<DescentResult> {
    d.validate(s)?;
    let gamma = s.gamma();
    let c = &d.object;
    let fc = s.push(c);
    let mut sum = Mat::zeros(fc.dim, fc.dim);
    for g in gamma.elements() {
        sum = sum + bracket_unchecked(s, g, d)?;
    }
    let e = sum.scale(&inv_order(s));
    let split = e.split_idempotent()?;
    let object = s.subobject(&fc, &split.inclusion, &split.projection);
    let iso = &s.counit_map(c) * &s.pull_mor(&split.inclusion);
    let ub = cartesian_iso_with_datum(s, d)?;
    let ub_inv = ub.inverse().map_err(|_| Error::NotCartesian)?;
    let inverse = &(&s.pull_mor(&split.projection) * &ub_inv) * &diagonal(c.dim, gamma.order());
    if !(&inverse * &iso).is_identity() || !(&iso * &inverse).is_identity() {
        return Err(Error::InvalidDatum("descended map is not invertible".into()));
    }
    for g in gamma.elements() {
        if &iso * &s.comparison(g, &object) != &d.b[g] * &s.twist_mor(g, &iso) {
            return Err(Error::InvalidDatum(format!("descended map is not compatible with b_{}", gamma.name(g))));
        }
    }
    Ok(DescentResult { object, iso, inverse, idempotent: e, inclusion: split.inclusion, projection: split.projection })
}

/// A `k`-basis of `Hom(C_X, C_Y)^Γ` under `φ ↦ φ^g`.
pub fn invariant_homs(s: &dyn DescentSetting, x: &DescentDatum, y: &DescentDatum) -> Result<Vec<Mat>> {
    let basis = s.hom_basis(Side::Upper, &x.object, &y.object);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let gens = s.gamma().generators();
    if gens.is_empty() {
        return Ok(basis);
    }
    let coords = s.flatten(Side::Upper, &basis[0]).len();
    let mut blocks = Vec::with_capacity(gens.len());
    for &g in &gens {
        let mut cols = Vec::with_capacity(basis.len());
        for phi in &basis {
            let diff = twist_hom(s, g, x, y, phi)? - phi;
            cols.push(Mat::column(s.flatten(Side::Upper, &diff)));
        }
        blocks.push(Mat::hstack_all(&cols, coords)?);
    }
    let kernel = Mat::vstack_all(&blocks, basis.len())?.kernel();
    Ok((0..kernel.cols())
        .map(|k| {
            basis.iter().enumerate().fold(Mat::zeros(y.dim(), x.dim()), |acc, (i, phi)| {
                let c = kernel.get(i, k);
                if c.is_zero() {
                    acc
                } else {
                    acc + phi.scale(c)
                }
            })
        })
        .collect())
}

/// Outcome of comparing `A(A, B)` with `A'(f*A, f*B)^Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDescentReport {
    pub base_dim: usize,
    pub fixed_dim: usize,
    pub bijective: bool,
}

/// Checks that `α : ψ ↦ f*ψ` and [`alpha_inverse`] are mutually inverse bijections.
pub fn hom_descent(s: &dyn DescentSetting, a: &CatObject, b: &CatObject) -> Result<HomDescentReport> {
    let base = s.hom_basis(Side::Base, a, b);
    let fixed = invariant_homs(s, &DescentDatum::canonical(s, a), &DescentDatum::canonical(s, b))?;
    let mut ok = base.len() == fixed.len();
    for psi in &base {
        ok &= alpha_inverse(s, a, b, &s.pull_mor(psi))? == *psi;
    }
    for phi in &fixed {
        let down = alpha_inverse(s, a, b, phi)?;
        ok &= s.is_morphism(Side::Base, a, b, &down) && s.pull_mor(&down) == *phi;
    }
    Ok(HomDescentReport { base_dim: base.len(), fixed_dim: fixed.len(), bijective: ok })
}

/// The unique morphism `B1 -> B2` inducing `j_2 ∘ ι~_1`; an isomorphism for any two descents
/// of the same datum.
pub fn compare_descents(s: &dyn DescentSetting, first: &DescentResult, second: &DescentResult) -> Result<Mat> {
    let phi = &second.inverse * &first.iso;
    let down = alpha_inverse(s, &first.object, &second.object, &phi)?;
    if s.pull_mor(&down) != phi || !down.is_invertible() {
        return Err(Error::InvalidDatum("descents are not uniquely isomorphic".into()));
    }
    Ok(down)
}

/// `ρ(v)_C = b(ε_C) ∘ v_{f_*C} ∘ a(σ_C)` with `a`, `b` the forgetful functor of `A'`.
pub fn retraction_rho(s: &dyn DescentSetting, v_at_push: &Mat, c: &CatObject) -> Result<Mat> {
    let sigma = cartesian_iso(s, c)?.section;
    let left = s.forget_mor(&s.counit_map(c));
    let right = s.forget_mor(&sigma);
    if v_at_push.shape() != (left.cols(), right.rows()) {
        return Err(Error::Shape(format!("component has shape {:?}", v_at_push.shape())));
    }
    Ok(&(&left * v_at_push) * &right)
}

/// Whether the transformation `v` of the forgetful functor of `A` composed with `f*`
/// commutes with `ε_{f*1}`, the image criterion for `f_!`.
pub fn commutes_with_counit(s: &dyn DescentSetting, v: &dyn Fn(&CatObject) -> Mat) -> bool {
    let one = s.unit(Side::Base);
    let f1 = s.pull(&one);
    let eps = s.forget_mor(&s.counit_map(&f1));
    let ff1 = s.push(&f1);
    &eps * &v(&ff1) == &v(&one) * &eps
}

/// Naturality of the family `C ↦ ρ(v)_C` on the given objects of `A'`, and agreement of
/// `ρ(v)_{f*A}` with `v_A` on the given objects of `A`.
pub fn descends_by_brute_force(
    s: &dyn DescentSetting,
    v: &dyn Fn(&CatObject) -> Mat,
    base_objects: &[CatObject],
    upper_objects: &[CatObject],
) -> Result<bool> {
    let rho = |c: &CatObject| -> Result<Mat> { retraction_rho(s, &v(&s.push(c)), c) };
    for a in base_objects {
        if rho(&s.pull(a))? != v(a) {
            return Ok(false);
        }
    }
    for x in upper_objects {
        let rx = rho(x)?;
        for y in upper_objects {
            let ry = rho(y)?;
            for phi in s.hom_basis(Side::Upper, x, y) {
                let fphi = s.forget_mor(&phi);
                if &fphi * &rx != &ry * &fphi {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn split_unit(s: &dyn DescentSetting, n: usize) -> CatObject {
    s.unit(Side::Upper).trivial_like(n)
}

/// The `Γ`-representation on `n·1` transported along a witness `w : f*A -> n·1`:
/// `ρ(g) = b'_{g^-1}` with `b'_g = w ∘ i_g(A) ∘ (g*w)^-1`.
pub fn artin_functor(s: &dyn DescentSetting, a: &CatObject, witness: Option<&Mat>) -> Result<ArtinImage> {
    let n = a.dim;
    let fa = s.pull(a);
    let target = split_unit(s, n);
    let w = match witness {
        Some(w) => w.clone(),
        None if fa == target => Mat::identity(n),
        None => return Err(Error::NotArtin("f*A is not a sum of unit objects".into())),
    };
    if !s.is_morphism(Side::Upper, &fa, &target, &w) || !w.is_invertible() {
        return Err(Error::NotArtin("witness is not an isomorphism f*A -> n·1".into()));
    }
    let gamma = s.gamma();
    let b: Vec<Mat> = gamma
        .elements()
        .map(|g| Ok(&(&w * &s.comparison(g, a)) * &s.twist_mor(g, &w).inverse()?))
        .collect::<Result<_>>()?;
    let action: Vec<Mat> = gamma.elements().map(|g| b[gamma.inv(g)].clone()).collect();
    for g in gamma.elements() {
        for h in gamma.elements() {
            if &action[g] * &action[h] != action[gamma.mul(g, h)] {
                return Err(Error::NotArtin("transported action is not a representation".into()));
            }
        }
    }
    Ok(ArtinImage { lattice_dim: n, action })
}

/// Descends the datum `b_g = ρ(g^-1)` on `n·1`.
pub fn artin_inverse(s: &dyn DescentSetting, rep: &ArtinImage) -> Result<DescentResult> {
    let gamma = s.gamma();
    if rep.action.len() != gamma.order() {
        return Err(Error::InvalidDatum("representation has the wrong number of matrices".into()));
    }
    let b = gamma.elements().map(|g| rep.action[gamma.inv(g)].clone()).collect();
    let datum = DescentDatum::new(s, split_unit(s, rep.lattice_dim), b)?;
    descend(s, &datum)
}

/// Outcome of the trace axioms on one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    /// `tr_A ∘ η_A = |Γ|`.
    pub multiplication: bool,
    /// `f*tr_A` becomes the sum map under the Cartesian comparison.
    pub sum_map: bool,
    /// `ε_{f*A} ∘ f*w_A = 1 ⊗ ε_1`.
    pub projection_identity: bool,
}

pub fn trace_axioms(s: &dyn DescentSetting, a: &CatObject) -> Result<TraceReport> {
    let order = FieldElement::from_i64(s.gamma().order() as i64);
    let t = trace_map(s, a)?;
    let multiplication = &t * &s.unit_map(a) == a.identity().scale(&order);
    let canonical = DescentDatum::canonical(s, a);
    let ub = cartesian_iso_with_datum(s, &canonical)?;
    let sum_map = &s.pull_mor(&t) * &ub.inverse()? == sum_map(a.dim, s.gamma().order());
    let w = weak_projection(s, a)?;
    let fa = s.pull(a);
    let lhs = &s.counit_map(&fa) * &s.pull_mor(&w);
    let rhs = fa.identity().kronecker(&s.counit_map(&s.unit(Side::Upper)));
    Ok(TraceReport { multiplication, sum_map, projection_identity: lhs == rhs })
}

/// Violations of `f*tr_A ∘ σ_{f*A} = 1` and `tr_{f_*C} ∘ f_*σ_C = 1` on the sample sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeftAdjointReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

pub fn left_adjoint_check(s: &dyn DescentSetting, max_dim: usize) -> Result<LeftAdjointReport> {
    let mut report = LeftAdjointReport::default();
    for a in s.sample_objects(max_dim) {
        report.checked += 1;
        let fa = s.pull(&a);
        let sigma = cartesian_iso(s, &fa)?.section;
        if !(&s.pull_mor(&trace_map(s, &a)?) * &sigma).is_identity() {
            report.failures.push(format!("first identity fails on an object of dimension {}", a.dim));
        }
    }
    for c in s.sample_objects_upper(max_dim) {
        report.checked += 1;
        let sigma = cartesian_iso(s, &c)?.section;
        let t = trace_map(s, &s.push(&c))?;
        if !(&t * &s.push_mor(&sigma)).is_identity() {
            report.failures.push(format!("second identity fails on an object of dimension {}", c.dim));
        }
    }
    Ok(report)
}

/// A datum on the unit of `A'` with the given scalars as `b_g`; not validated.
pub fn scalar_datum(s: &dyn DescentSetting, values: &[FieldElement]) -> DescentDatum {
    let b = values.iter().map(|v| Mat::scalar(v.clone())).collect();
    DescentDatum::unchecked(s.unit(Side::Upper), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisExtension;
    use crate::settings::group_rep::GroupRepSetting;
    use crate::settings::semilinear::SemilinearSetting;
    use num_traits::One;

    fn gaussian() -> SemilinearSetting {
        SemilinearSetting::new(GaloisExtension::gaussian())
    }

    fn q(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    #[test]
    fn twist_of_a_scalar_conjugates() {
        let s = gaussian();
        let i = s.extension().generator();
        let one = DescentDatum::canonical(&s, &CatObject::plain(1));
        let phi = Mat::scalar(i.clone());
        assert_eq!(twist_hom(&s, 1, &one, &one, &phi).unwrap(), Mat::scalar(-i));
        assert_eq!(twist_hom(&s, 0, &one, &one, &phi).unwrap(), phi);
        let bare = DescentDatum::unchecked(CatObject::plain(1), vec![]);
        assert_eq!(twist_hom(&s, 1, &bare, &one, &phi), Err(Error::MissingDatum));
    }

    #[test]
    fn brackets_of_the_hilbert_datum() {
        let s = gaussian();
        let i = s.extension().generator();
        let d = scalar_datum(&s, &[q(1), i]);
        let sigma = bracket(&s, 1, &d).unwrap();
        assert_eq!(sigma, Mat::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap());
        assert!((&sigma * &sigma).is_identity());
        assert!(bracket(&s, 0, &d).unwrap().is_identity());
        for g in 0..2 {
            let lhs = twisted_counit(&s, g, &d).unwrap();
            assert_eq!(lhs, &s.counit_map(&d.object) * &s.pull_mor(&bracket(&s, g, &d).unwrap()));
        }
    }

    #[test]
    fn canonical_brackets_fix_the_unit() {
        let s = SemilinearSetting::new(GaloisExtension::cyclic_cubic());
        let a = CatObject::plain(2);
        let d = DescentDatum::canonical(&s, &a);
        for g in 0..3 {
            assert_eq!(&bracket(&s, g, &d).unwrap() * &s.unit_map(&a), s.unit_map(&a));
        }
    }

    #[test]
    fn cartesian_comparison_over_gaussian_numbers() {
        let s = gaussian();
        let i = s.extension().generator();
        let c = cartesian_iso(&s, &CatObject::plain(1)).unwrap();
        let expected = Mat::from_rows(vec![vec![q(1), i.clone()], vec![q(1), -i]]).unwrap();
        assert_eq!(c.u, expected);
        assert!((&s.counit_map(&CatObject::plain(1)) * &c.section).is_identity());
    }

    #[test]
    fn trivial_group_gives_identity_comparison() {
        let s = SemilinearSetting::new(GaloisExtension::trivial());
        let c = cartesian_iso(&s, &CatObject::plain(3)).unwrap();
        assert!(c.u.is_identity());
        assert!(trace_map(&s, &CatObject::plain(2)).unwrap().is_identity());
    }

    #[test]
    fn mackey_for_a_nontrivial_character() {
        let s = GroupRepSetting::s3_a3();
        let chi = &s.subgroup_irreducibles()[1].1;
        assert!(cartesian_iso(&s, chi).is_ok());
        let twisted = s.twist(1, chi);
        // the conjugate of χ1 is χ2
        assert_eq!(twisted, s.subgroup_irreducibles()[2].1);
    }

    #[test]
    fn trace_examples() {
        let s = gaussian();
        let one = CatObject::plain(1);
        let t = trace_map(&s, &one).unwrap();
        assert_eq!(&t * &s.unit_map(&one), Mat::scalar(q(2)));
        let g = GroupRepSetting::s3_a3();
        let triv = g.unit(Side::Base);
        let t = trace_map(&g, &triv).unwrap();
        assert_eq!(t, Mat::from_rows(vec![vec![q(1), q(1)]]).unwrap());
        assert_eq!(&t * &g.unit_map(&triv), Mat::scalar(q(2)));
    }

    #[test]
    fn weak_projection_examples() {
        let s = gaussian();
        assert!(weak_projection(&s, &CatObject::plain(1)).unwrap().is_identity());
        assert_eq!(weak_projection(&s, &CatObject::plain(2)).unwrap().shape(), (4, 4));
        let c = SemilinearSetting::new(GaloisExtension::cyclic_cubic());
        assert!(trace_axioms(&c, &CatObject::plain(2)).unwrap().projection_identity);
    }

    #[test]
    fn hilbert_ninety() {
        let s = gaussian();
        let i = s.extension().generator();
        let d = scalar_datum(&s, &[q(1), i.clone()]);
        let r = descend(&s, &d).unwrap();
        assert_eq!(r.object.dim, 1);
        assert_eq!(r.iso, Mat::scalar(q(1) + i));
        let triv = descend(&s, &scalar_datum(&s, &[q(1), q(1)])).unwrap();
        assert_eq!(triv.object, CatObject::plain(1));
        assert!(triv.iso.is_identity());
        let bad = scalar_datum(&s, &[q(1), q(2)]);
        assert_eq!(descend(&s, &bad).unwrap_err(), Error::CocycleViolation { g: 1, h: 1 });
    }

    #[test]
    fn descents_are_uniquely_isomorphic() {
        let s = SemilinearSetting::new(GaloisExtension::biquadratic());
        let d = DescentDatum::canonical(&s, &CatObject::plain(2));
        let r = descend(&s, &d).unwrap();
        assert_eq!(r.object.dim, 2);
        let other = DescentResult { iso: r.iso.scale(&q(3)), inverse: r.inverse.scale(&q(3).inv()), ..r.clone() };
        let cmp = compare_descents(&s, &r, &other).unwrap();
        assert_eq!(cmp, Mat::identity(2).scale(&q(3).inv()));
    }

    #[test]
    fn invariant_hom_examples() {
        let s = gaussian();
        let i = s.extension().generator();
        let one = DescentDatum::canonical(&s, &CatObject::plain(1));
        assert_eq!(invariant_homs(&s, &one, &one).unwrap(), vec![Mat::scalar(q(1))]);
        let x = scalar_datum(&s, &[q(1), i.clone()]);
        let y = scalar_datum(&s, &[q(1), -i.clone()]);
        // φ^σ = -σ(φ): the fixed line is spanned by i
        assert_eq!(invariant_homs(&s, &x, &y).unwrap(), vec![Mat::scalar(i)]);
    }

    #[test]
    fn hom_descent_in_group_representations() {
        let s = GroupRepSetting::s3_a3();
        for (_, v) in s.irreducibles() {
            for (_, w) in s.irreducibles() {
                let r = hom_descent(&s, v, w).unwrap();
                assert!(r.bijective);
                assert_eq!(r.base_dim, usize::from(v == w));
            }
        }
    }

    #[test]
    fn retraction_detects_the_subgroup() {
        let s = GroupRepSetting::s3_a3();
        let one = s.unit(Side::Upper);
        for x in s.pair().g.elements() {
            let v = |a: &CatObject| a.action[x].clone();
            let rho = retraction_rho(&s, &v(&s.push(&one)), &one).unwrap();
            let inside = s.pair().h_index(x).is_some();
            assert_eq!(rho, Mat::scalar(if inside { q(1) } else { q(0) }));
            assert_eq!(commutes_with_counit(&s, &v), inside);
            let chi = &s.subgroup_irreducibles()[1].1;
            let rho_chi = retraction_rho(&s, &v(&s.push(chi)), chi).unwrap();
            if inside {
                assert_eq!(rho_chi, s.act(chi, x));
            }
        }
        let id = retraction_rho(&s, &Mat::identity(2), &one).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn artin_examples() {
        let s = gaussian();
        let one = artin_functor(&s, &CatObject::plain(1), None).unwrap();
        assert!(one.action.iter().all(|m| m.is_identity()));
        let sign = ArtinImage { lattice_dim: 1, action: vec![Mat::scalar(q(1)), Mat::scalar(q(-1))] };
        let r = artin_inverse(&s, &sign).unwrap();
        assert_eq!(r.object.dim, 1);
        assert_eq!(r.iso, Mat::scalar(s.extension().generator()));
        let back = artin_functor(&s, &r.object, Some(&r.iso)).unwrap();
        assert_eq!(back, sign);
    }

    #[test]
    fn artin_image_of_the_direct_image_is_regular() {
        let s = SemilinearSetting::new(GaloisExtension::cyclic_cubic());
        let r = s.push(&CatObject::plain(1));
        let u = cartesian_iso(&s, &CatObject::plain(1)).unwrap().u;
        let rep = artin_functor(&s, &r, Some(&u)).unwrap();
        for (g, m) in rep.action.iter().enumerate() {
            let ones = m.entries().iter().filter(|x| x.is_one()).count();
            let zeros = m.entries().iter().filter(|x| x.is_zero()).count();
            assert_eq!((ones, zeros), (3, 6));
            let fixed = (0..3).filter(|&k| m.get(k, k).is_one()).count();
            assert_eq!(fixed, if g == 0 { 3 } else { 0 });
        }
    }

    #[test]
    fn left_adjoint_identities() {
        let s = gaussian();
        assert!(left_adjoint_check(&s, 3).unwrap().failures.is_empty());
        let g = GroupRepSetting::s3_a3();
        assert!(left_adjoint_check(&g, 3).unwrap().failures.is_empty());
    }
}
