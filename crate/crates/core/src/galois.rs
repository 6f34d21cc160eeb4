//! Finite Galois extensions `l/Q` with an explicit automorphism group.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::numfield::{FieldElement, NumberField};
use crate::scalar::{Field, Rational};
use crate::{Mat, QMatrix};

/// `l = Q[x]/(m)` together with `Gal(l/Q)`.
///
/// Element 0 of the group is the identity; `table(g, h) = g ∘ h`.
#[derive(Clone, Debug)]
pub struct GaloisExtension {
    field: Arc<NumberField>,
    group: GroupTable,
    /// Image of the generator under each automorphism.
    images: Vec<FieldElement>,
    /// Automorphisms as rational matrices acting on power-basis coordinates.
    matrices: Vec<QMatrix>,
}

impl GaloisExtension {
    /// Verifies the given generator images and closes them under composition.
    ///
    /// `images` are coordinate vectors; names label them (the identity is added as
    /// `"e"` when absent, closure elements get composite names).
    pub fn new(minpoly: Vec<Rational>, images: Vec<Vec<Rational>>, names: Option<Vec<String>>) -> Result<Self> {
        let field = NumberField::new(minpoly)?;
        let d = field.degree();
        let mut elems: Vec<(Vec<Rational>, String)> = Vec::new();
        let mut id = vec![Rational::zero(); d];
        if d > 1 {
            id[1] = Rational::one();
        } else {
            id[0] = -field.minimal_polynomial()[0].clone();
        }
        for (k, img) in images.iter().enumerate() {
            let x = FieldElement::new(&field, img.clone())?;
            if !eval_minpoly(&field, &x).is_zero() {
                return Err(Error::NotAutomorphism { index: k });
            }
        }
        let name_of =
            |k: usize| -> String { names.as_ref().and_then(|n| n.get(k).cloned()).unwrap_or_else(|| format!("g{k}")) };
        let id_name = images.iter().position(|x| *x == id).map_or_else(|| "e".to_string(), name_of);
        elems.push((id.clone(), id_name));
        for (k, img) in images.iter().enumerate() {
            if !elems.iter().any(|(x, _)| x == img) {
                elems.push((img.clone(), name_of(k)));
            }
        }
        // Close under composition.
        let mut mats: Vec<QMatrix> = elems.iter().map(|(x, _)| aut_matrix(&field, x)).collect();
        let mut changed = true;
        while changed {
            changed = false;
            let n = elems.len();
            for a in 0..n {
                for b in 0..n {
                    let comp = apply_coords(&mats[a], &elems[b].0);
                    if !elems.iter().any(|(x, _)| *x == comp) {
                        if elems.len() >= d {
                            return Err(Error::NotGalois("composition produces more maps than the degree".into()));
                        }
                        let name = format!("{}{}", elems[a].1, elems[b].1);
                        mats.push(aut_matrix(&field, &comp));
                        elems.push((comp, name));
                        changed = true;
                    }
                }
            }
        }
        if elems.len() != d {
            return Err(Error::NotGalois(format!("group of order {} for degree {d}", elems.len())));
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let comp = apply_coords(&mats[a], &elems[b].0);
                        elems.iter().position(|(x, _)| *x == comp).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let group = GroupTable::new(table, elems.iter().map(|(_, s)| s.clone()).collect())?;
        let images = elems.iter().map(|(x, _)| FieldElement::new(&field, x.clone())).collect::<Result<Vec<_>>>()?;
        let ext = GaloisExtension { field, group, images, matrices: mats };
        if ext.fixed_dimension() != 1 {
            return Err(Error::NotGalois("fixed field is larger than the rationals".into()));
        }
        Ok(ext)
    }

    /// The trivial extension `Q/Q`.
    pub fn trivial() -> Self {
        GaloisExtension::new(vec![Rational::zero(), Rational::one()], vec![], Some(vec!["e".into()]))
            .expect("trivial extension")
    }

    /// `Q(i)`, with `σ(i) = -i`.
    pub fn gaussian() -> Self {
        GaloisExtension::new(ints(&[1, 0, 1]), vec![ints(&[0, 1]), ints(&[0, -1])], Some(names(&["e", "s"])))
            .expect("Q(i) is Galois")
    }

    /// The real subfield of the seventh cyclotomic field, `x^3 + x^2 - 2x - 1`.
    pub fn cyclic_cubic() -> Self {
        GaloisExtension::new(
            ints(&[-1, -2, 1, 1]),
            vec![ints(&[0, 1, 0]), ints(&[-2, 0, 1]), ints(&[1, -1, -1])],
            Some(names(&["e", "s", "s2"])),
        )
        .expect("cyclic cubic is Galois")
    }

    /// `Q(i, √2)` with primitive element `t = i + √2`, minimal polynomial `x^4 - 2x^2 + 9`.
    ///
    /// `a` conjugates `i`, `b` negates `√2`.
    pub fn biquadratic() -> Self {
        let third = |n: i64| Rational::new(n.into(), 3.into());
        GaloisExtension::new(
            ints(&[9, 0, -2, 0, 1]),
            vec![
                ints(&[0, 1, 0, 0]),
                vec![Rational::zero(), third(2), Rational::zero(), third(-1)],
                vec![Rational::zero(), third(-2), Rational::zero(), third(1)],
                ints(&[0, -1, 0, 0]),
            ],
            Some(names(&["e", "a", "b", "ab"])),
        )
        .expect("biquadratic field is Galois")
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn generator_images(&self) -> &[FieldElement] {
        &self.images
    }

    /// Matrix of `g` on power-basis coordinates.
    pub fn aut_matrix(&self, g: usize) -> &QMatrix {
        &self.matrices[g]
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::generator(&self.field)
    }

    /// Element with the given power-basis coordinates.
    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if self.degree() == 1 {
            return Ok(FieldElement::rational(coords.into_iter().next().unwrap_or_default()));
        }
        FieldElement::new(&self.field, coords)
    }

    pub fn coords(&self, x: &FieldElement) -> Vec<Rational> {
        x.coords_in(self.degree())
    }

    pub fn aut_apply(&self, g: usize, x: &FieldElement) -> Result<FieldElement> {
        self.group.check(g)?;
        if let Some(f) = x.field() {
            if **f != *self.field {
                return Err(Error::FieldMismatch);
            }
        }
        if x.as_rational().is_some() {
            return Ok(x.clone());
        }
        self.element(apply_coords(&self.matrices[g], &self.coords(x)))
    }

    /// Entrywise application to a matrix.
    pub fn apply_matrix(&self, g: usize, m: &Mat) -> Result<Mat> {
        self.group.check(g)?;
        let entries = m.entries().iter().map(|x| self.aut_apply(g, x)).collect::<Result<Vec<_>>>()?;
        Mat::new(m.rows(), m.cols(), entries)
    }

    /// `Σ_g g(x)`, a rational number.
    pub fn field_trace(&self, x: &FieldElement) -> Result<FieldElement> {
        let mut acc = FieldElement::zero();
        for g in self.group.elements() {
            acc = acc + self.aut_apply(g, x)?;
        }
        Ok(acc)
    }

    /// Dimension over the rationals of the common fixed space of all automorphisms.
    pub fn fixed_dimension(&self) -> usize {
        let d = self.degree();
        let blocks: Vec<QMatrix> =
            self.group.generators().iter().map(|&g| &self.matrices[g] - &QMatrix::identity(d)).collect();
        if blocks.is_empty() {
            return d;
        }
        QMatrix::vstack_all(&blocks, d).expect("square blocks").kernel().cols()
    }

    /// `Tr(t^j)` for the power basis.
    pub fn trace_row(&self) -> Vec<Rational> {
        self.field.power_traces().to_vec()
    }
}

fn ints(cs: &[i64]) -> Vec<Rational> {
    cs.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn eval_minpoly(field: &Arc<NumberField>, x: &FieldElement) -> FieldElement {
    field
        .minimal_polynomial()
        .iter()
        .rev()
        .fold(FieldElement::zero(), |acc, c| &(&acc * x) + &FieldElement::from_rational(c.clone()))
}

/// Column `j` holds the coordinates of `image^j`.
fn aut_matrix(field: &Arc<NumberField>, image: &[Rational]) -> QMatrix {
    let d = field.degree();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    let mut pow = vec![Rational::zero(); d];
    pow[0] = Rational::one();
    for _ in 0..d {
        cols.push(pow.clone());
        pow = if d > 1 { field.mul_coords(&pow, image) } else { vec![&pow[0] * &image[0]] };
    }
    QMatrix::from_fn(d, d, |i, j| cols[j][i].clone())
}

fn apply_coords(m: &QMatrix, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j) * &x[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn gaussian_conjugation() {
        let e = GaloisExtension::gaussian();
        assert_eq!(e.group().order(), 2);
        let z = e.element(vec![rat(3), rat(2)]).unwrap();
        assert_eq!(e.aut_apply(1, &z).unwrap(), e.element(vec![rat(3), rat(-2)]).unwrap());
        assert_eq!(e.aut_apply(0, &z).unwrap(), z);
        assert_eq!(e.field_trace(&z).unwrap(), FieldElement::from_i64(6));
        assert_eq!(e.field_trace(&e.generator()).unwrap(), FieldElement::zero());
        assert_eq!(e.field_trace(&FieldElement::one()).unwrap(), FieldElement::from_i64(2));
        assert!(matches!(e.aut_apply(2, &z), Err(Error::BadGroupElement(2))));
    }

    #[test]
    fn cubic_generator_orbit() {
        let e = GaloisExtension::cyclic_cubic();
        let t = e.generator();
        let s = e.group().index_of("s").unwrap();
        let st = e.aut_apply(s, &t).unwrap();
        assert_eq!(st, e.element(vec![rat(-2), rat(0), rat(1)]).unwrap());
        let s3 = e.aut_apply(s, &e.aut_apply(s, &st).unwrap()).unwrap();
        assert_eq!(s3, t);
        assert!(e.group().is_abelian());
        assert_eq!(e.field_trace(&FieldElement::one()).unwrap(), FieldElement::from_i64(3));
    }

    #[test]
    fn biquadratic_group_is_klein() {
        let e = GaloisExtension::biquadratic();
        let g = e.group();
        assert_eq!(g.order(), 4);
        assert!(g.elements().all(|x| g.element_order(x) <= 2));
        assert!(!e.field().irreducibility_asserted());
    }

    #[test]
    fn rejects_bad_input() {
        let r = GaloisExtension::new(ints(&[-2, 0, 1]), vec![ints(&[0, 1]), ints(&[0, 1])], None);
        assert!(matches!(r, Err(Error::NotGalois(_))));
        assert!(GaloisExtension::new(ints(&[-2, 0, 1]), vec![ints(&[0, 1]), ints(&[0, -1])], None).is_ok());
        let r = GaloisExtension::new(ints(&[1, 0, 1]), vec![ints(&[1, 1])], None);
        assert!(matches!(r, Err(Error::NotAutomorphism { index: 0 })));
    }

    #[test]
    fn fixed_field_is_rational() {
        for e in [GaloisExtension::gaussian(), GaloisExtension::cyclic_cubic(), GaloisExtension::biquadratic()] {
            assert_eq!(e.fixed_dimension(), 1);
        }
        assert_eq!(GaloisExtension::trivial().group().order(), 1);
    }

    fn elem(e: &GaloisExtension, cs: &[i64]) -> FieldElement {
        e.element(cs.iter().take(e.degree()).map(|&c| rat(c)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn action_respects_table_and_trace(cs in prop::collection::vec(-4i64..=4, 4), ds in prop::collection::vec(-4i64..=4, 4), which in 0usize..3) {
            let e = [GaloisExtension::gaussian(), GaloisExtension::cyclic_cubic(), GaloisExtension::biquadratic()][which].clone();
            let (x, y) = (elem(&e, &cs), elem(&e, &ds));
            let tr = e.field_trace(&x).unwrap();
            prop_assert!(tr.as_rational().is_some());
            prop_assert_eq!(tr.as_rational().unwrap(), x.trace());
            for g in e.group().elements() {
                prop_assert_eq!(e.field_trace(&e.aut_apply(g, &x).unwrap()).unwrap(), tr.clone());
                prop_assert_eq!(e.aut_apply(g, &(&x * &y)).unwrap(), &e.aut_apply(g, &x).unwrap() * &e.aut_apply(g, &y).unwrap());
                for h in e.group().elements() {
                    let gh = e.group().mul(g, h);
                    prop_assert_eq!(e.aut_apply(g, &e.aut_apply(h, &x).unwrap()).unwrap(), e.aut_apply(gh, &x).unwrap());
                }
            }
        }
    }
}
