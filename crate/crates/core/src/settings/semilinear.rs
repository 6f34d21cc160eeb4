//! Descent for vector spaces along a finite Galois extension `l/Q`.
//!
//! `A = Vec_Q`, `A' = Vec_l`; `f*` is base change and `f_*` restriction of scalars
//! in the basis `e_i θ^j`, index `i * d + j`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::galois::GaloisExtension;
use crate::group::GroupTable;
use crate::matcat::{CatObject, DescentSetting, Side};
use crate::numfield::FieldElement;
use crate::scalar::Rational;
use crate::Mat;

#[derive(Clone, Debug)]
pub struct SemilinearSetting {
    ext: GaloisExtension,
    name: String,
}

impl SemilinearSetting {
    pub fn new(ext: GaloisExtension) -> Self {
        let name = format!("semilinear(degree {})", ext.degree());
        SemilinearSetting { ext, name }
    }

    pub fn extension(&self) -> &GaloisExtension {
        &self.ext
    }

    fn d(&self) -> usize {
        self.ext.degree()
    }

    fn theta_power(&self, j: usize) -> FieldElement {
        let mut c = vec![Rational::zero(); self.d()];
        c[j] = Rational::one();
        self.ext.element(c).expect("coordinate vector of the right length")
    }

    /// Regular matrix of `a` as a `d x d` rational block.
    fn regular(&self, a: &FieldElement) -> Mat {
        let d = self.d();
        let r = self.ext.field().regular_matrix(&self.ext.coords(a));
        Mat::from_fn(d, d, |i, j| FieldElement::rational(r[i * d + j].clone()))
    }
}

impl DescentSetting for SemilinearSetting {
    fn name(&self) -> &str {
        &self.name
    }

    fn gamma(&self) -> &GroupTable {
        self.ext.group()
    }

    fn unit(&self, _side: Side) -> CatObject {
        CatObject::plain(1)
    }

    fn validate_object(&self, _side: Side, x: &CatObject) -> Result<()> {
        if !x.action.is_empty() {
            return Err(crate::Error::BadMorphism("vector spaces carry no action matrices".into()));
        }
        Ok(())
    }

    fn is_morphism(&self, side: Side, source: &CatObject, target: &CatObject, m: &Mat) -> bool {
        m.shape() == (target.dim, source.dim)
            && (side == Side::Upper || m.entries().iter().all(|x| x.as_rational().is_some()))
    }

    fn pull(&self, a: &CatObject) -> CatObject {
        CatObject::plain(a.dim)
    }

    fn pull_mor(&self, m: &Mat) -> Mat {
        m.clone()
    }

    fn push(&self, c: &CatObject) -> CatObject {
        CatObject::plain(c.dim * self.d())
    }

    fn push_mor(&self, m: &Mat) -> Mat {
        let d = self.d();
        let mut out = Mat::zeros(m.rows() * d, m.cols() * d);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m.get(i, j).is_zero() {
                    out.set_block(i * d, j * d, &self.regular(m.get(i, j)));
                }
            }
        }
        out
    }

    fn unit_map(&self, a: &CatObject) -> Mat {
        let d = self.d();
        Mat::from_fn(a.dim * d, a.dim, |r, c| if r == c * d { FieldElement::one() } else { FieldElement::zero() })
    }

    fn counit_map(&self, c: &CatObject) -> Mat {
        let d = self.d();
        let powers: Vec<FieldElement> = (0..d).map(|j| self.theta_power(j)).collect();
        Mat::from_fn(
            c.dim,
            c.dim * d,
            |r, col| if col / d == r { powers[col % d].clone() } else { FieldElement::zero() },
        )
    }

    fn twist(&self, _g: usize, c: &CatObject) -> CatObject {
        c.clone()
    }

    /// `g*` acts entrywise by `g^-1`, which turns `φ ↦ φ^g` into a right action.
    fn twist_mor(&self, g: usize, m: &Mat) -> Mat {
        self.ext.apply_matrix(self.gamma().inv(g), m).expect("entries lie in the extension field")
    }

    fn comparison(&self, _g: usize, a: &CatObject) -> Mat {
        a.identity()
    }

    fn cocycle(&self, _g: usize, _h: usize, c: &CatObject) -> Mat {
        c.identity()
    }

    fn weak_trace(&self) -> Mat {
        Mat::from_fn(1, self.d(), |_, j| FieldElement::rational(self.ext.trace_row()[j].clone()))
    }

    fn hom_basis(&self, side: Side, x: &CatObject, y: &CatObject) -> Vec<Mat> {
        let per_entry = match side {
            Side::Base => 1,
            Side::Upper => self.d(),
        };
        let mut out = Vec::with_capacity(x.dim * y.dim * per_entry);
        for i in 0..y.dim {
            for j in 0..x.dim {
                for t in 0..per_entry {
                    let mut m = Mat::zeros(y.dim, x.dim);
                    m.set(i, j, self.theta_power(t));
                    out.push(m);
                }
            }
        }
        out
    }

    fn flatten(&self, side: Side, m: &Mat) -> Vec<FieldElement> {
        match side {
            Side::Base => m.entries().to_vec(),
            Side::Upper => {
                m.entries().iter().flat_map(|x| self.ext.coords(x).into_iter().map(FieldElement::rational)).collect()
            }
        }
    }

    fn unflatten(&self, side: Side, rows: usize, cols: usize, v: &[FieldElement]) -> Mat {
        match side {
            Side::Base => Mat::new(rows, cols, v.to_vec()).expect("coordinate count"),
            Side::Upper => {
                let d = self.d();
                Mat::from_fn(rows, cols, |i, j| {
                    let k = (i * cols + j) * d;
                    let coords = v[k..k + d].iter().map(|x| x.as_rational().expect("rational coordinate")).collect();
                    self.ext.element(coords).expect("coordinate count")
                })
            }
        }
    }

    fn forget_mor(&self, m: &Mat) -> Mat {
        self.push_mor(m)
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng) -> FieldElement {
        let coords = (0..self.d()).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect();
        self.ext.element(coords).expect("coordinate count")
    }

    fn sample_objects(&self, max_dim: usize) -> Vec<CatObject> {
        (0..=max_dim).map(CatObject::plain).collect()
    }

    fn sample_objects_upper(&self, max_dim: usize) -> Vec<CatObject> {
        (0..=max_dim).map(CatObject::plain).collect()
    }

    fn k_degree(&self) -> usize {
        1
    }
}
