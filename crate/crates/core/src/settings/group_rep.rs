//! Restriction and induction for a normal subgroup `H ⊴ G` with quotient `Γ = G/H`.
//!
//! `A = Rep_K(G)`, `A' = Rep_K(H)`. Induced modules are built over the transversal
//! `s_γ` of the [`NormalPair`]; block `γ` of `Ind W` is the summand `s_γ ⊗ W`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupTable, NormalPair};
use crate::matcat::{sum_obj, CatObject, DescentSetting, Side};
use crate::numfield::{FieldElement, NumberField};
use crate::poly::Poly;
use crate::scalar::{Field, Rational};
use crate::Mat;

#[derive(Clone, Debug)]
pub struct GroupRepSetting {
    name: String,
    pair: NormalPair,
    field: Option<Arc<NumberField>>,
    g_irreps: Vec<(String, CatObject)>,
    h_irreps: Vec<(String, CatObject)>,
    g_gens: Vec<usize>,
    h_gens: Vec<usize>,
}

/// A representation determined by the images of generators, closed up under products.
pub fn rep_from_generators(group: &GroupTable, dim: usize, gens: &[(usize, Mat)]) -> Result<CatObject> {
    let mut action: Vec<Option<Mat>> = vec![None; group.order()];
    action[group.identity()] = Some(Mat::identity(dim));
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for (g, m) in gens {
            let y = group.mul(x, *g);
            let my = action[x].as_ref().expect("visited") * m;
            match &action[y] {
                Some(existing) if *existing != my => {
                    return Err(Error::BadMorphism(format!(
                        "generator images violate a relation at {}",
                        group.name(y)
                    )));
                }
                Some(_) => {}
                None => {
                    action[y] = Some(my);
                    frontier.push(y);
                }
            }
        }
    }
    let action = action
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::BadMorphism("generators do not generate the group".into())))
        .collect::<Result<Vec<_>>>()?;
    let obj = CatObject::rep(dim, action);
    obj.validate(Some(group))?;
    Ok(obj)
}

/// The regular permutation representation, `x e_y = e_{xy}`.
pub fn regular_rep(group: &GroupTable) -> CatObject {
    let n = group.order();
    let action = group
        .elements()
        .map(|x| {
            Mat::from_fn(n, n, |r, c| if r == group.mul(x, c) { FieldElement::one() } else { FieldElement::zero() })
        })
        .collect();
    CatObject::rep(n, action)
}

/// A basis of the matrices `X : x -> y` with `X x(g) = y(g) X` for every `g` in `gens`.
pub fn equivariant_basis(x: &CatObject, y: &CatObject, gens: &[usize]) -> Vec<Mat> {
    let (m, n) = (y.dim, x.dim);
    if m * n == 0 {
        return Vec::new();
    }
    let blocks: Vec<Mat> = gens
        .iter()
        .map(|&g| {
            // vec(X V - W X) in row-major coordinates of X
            let (v, w) = (&x.action[g], &y.action[g]);
            let mut eq = Mat::zeros(m * n, m * n);
            for i in 0..m {
                for j in 0..n {
                    let row = i * n + j;
                    for k in 0..n {
                        let c = v.get(k, j);
                        if !c.is_zero() {
                            let col = i * n + k;
                            eq.set(row, col, eq.get(row, col).add_ref(c));
                        }
                    }
                    for k in 0..m {
                        let c = w.get(i, k);
                        if !c.is_zero() {
                            let col = k * n + j;
                            eq.set(row, col, eq.get(row, col).sub_ref(c));
                        }
                    }
                }
            }
            eq
        })
        .collect();
    let kernel = if blocks.is_empty() {
        Mat::identity(m * n)
    } else {
        Mat::vstack_all(&blocks, m * n).expect("equal widths").kernel()
    };
    (0..kernel.cols()).map(|c| Mat::new(m, n, kernel.col(c)).expect("m * n entries")).collect()
}

fn root_of_unity_field(minpoly: &[i64]) -> Arc<NumberField> {
    NumberField::new(minpoly.iter().map(|&c| Rational::from_integer(c.into())).collect::<Poly>())
        .expect("cyclotomic field")
}

fn mat(rows: &[&[FieldElement]]) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

impl GroupRepSetting {
    /// A setting without catalogued irreducibles; sweeps then use trivial and regular representations.
    pub fn new(pair: NormalPair, field: Option<Arc<NumberField>>) -> Self {
        let g_gens = pair.g.generators();
        let h_gens = pair.h_table.generators();
        let name = format!("group-rep(|G| = {}, |H| = {})", pair.g.order(), pair.h.len());
        GroupRepSetting { name, pair, field, g_irreps: Vec::new(), h_irreps: Vec::new(), g_gens, h_gens }
    }

    /// Attaches irreducible representations of `G` and `H`, after checking them: each has a
    /// one-dimensional endomorphism space, distinct ones are not isomorphic, and the squared
    /// dimensions add up to the group order.
    pub fn with_irreducibles(
        mut self,
        g_irreps: Vec<(String, CatObject)>,
        h_irreps: Vec<(String, CatObject)>,
    ) -> Result<Self> {
        for (irreps, table, gens) in
            [(&g_irreps, &self.pair.g, &self.g_gens), (&h_irreps, &self.pair.h_table, &self.h_gens)]
        {
            let mut total = 0;
            for (i, (name, x)) in irreps.iter().enumerate() {
                x.validate(Some(table))?;
                total += x.dim * x.dim;
                for (j, (_, y)) in irreps.iter().enumerate() {
                    let expected = usize::from(i == j);
                    if equivariant_basis(x, y, gens).len() != expected {
                        return Err(Error::BadMorphism(format!("{name} is not part of an irreducible catalogue")));
                    }
                }
            }
            if total != table.order() {
                return Err(Error::BadMorphism(format!(
                    "squared dimensions sum to {total}, group order is {}",
                    table.order()
                )));
            }
        }
        self.g_irreps = g_irreps;
        self.h_irreps = h_irreps;
        Ok(self)
    }

    /// `(S_3, A_3)` over `Q(ζ_3)`.
    pub fn s3_a3() -> Self {
        let pair = NormalPair::s3_a3();
        let k = root_of_unity_field(&[1, 1, 1]);
        let zeta = FieldElement::generator(&k);
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        let m1 = -FieldElement::one();
        let (r, s) = (1, 3);
        let g = &pair.g;
        let g_irreps = vec![
            (
                "trivial".to_string(),
                rep_from_generators(
                    g,
                    1,
                    &[(r, mat(&[std::slice::from_ref(&one)])), (s, mat(&[std::slice::from_ref(&one)]))],
                ),
            ),
            (
                "sign".to_string(),
                rep_from_generators(
                    g,
                    1,
                    &[(r, mat(&[std::slice::from_ref(&one)])), (s, mat(&[std::slice::from_ref(&m1)]))],
                ),
            ),
            (
                "standard".to_string(),
                rep_from_generators(
                    g,
                    2,
                    &[
                        (r, mat(&[&[zero.clone(), m1.clone()], &[one.clone(), m1.clone()]])),
                        (s, mat(&[&[zero.clone(), one.clone()], &[one.clone(), zero.clone()]])),
                    ],
                ),
            ),
        ];
        let h_irreps = (0..3)
            .map(|k| {
                let image = (0..k).fold(FieldElement::one(), |acc, _| acc * zeta.clone());
                (format!("chi{k}"), rep_from_generators(&pair.h_table, 1, &[(1, mat(&[&[image]]))]))
            })
            .collect::<Vec<_>>();
        GroupRepSetting::new(pair, Some(k))
            .with_irreducibles(unwrap_all(g_irreps), unwrap_all(h_irreps))
            .expect("S3/A3 catalogue")
    }

    /// `(D_4, C_4)` over `Q(i)`.
    pub fn d4_c4() -> Self {
        let pair = NormalPair::d4_c4();
        let k = root_of_unity_field(&[1, 0, 1]);
        let i = FieldElement::generator(&k);
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        let m1 = -FieldElement::one();
        let (r, s) = (1, 4);
        let g = &pair.g;
        let sign = |b: bool| if b { m1.clone() } else { one.clone() };
        let mut g_irreps = Vec::new();
        for (name, er, es) in
            [("trivial", false, false), ("sign_s", false, true), ("sign_r", true, false), ("sign_rs", true, true)]
        {
            g_irreps.push((
                name.to_string(),
                rep_from_generators(g, 1, &[(r, mat(&[&[sign(er)]])), (s, mat(&[&[sign(es)]]))]),
            ));
        }
        g_irreps.push((
            "standard".to_string(),
            rep_from_generators(
                g,
                2,
                &[
                    (r, mat(&[&[zero.clone(), m1.clone()], &[one.clone(), zero.clone()]])),
                    (s, mat(&[&[one.clone(), zero.clone()], &[zero.clone(), m1.clone()]])),
                ],
            ),
        ));
        let h_irreps = (0..4)
            .map(|k| {
                let image = (0..k).fold(FieldElement::one(), |acc, _| acc * i.clone());
                (format!("chi{k}"), rep_from_generators(&pair.h_table, 1, &[(1, mat(&[&[image]]))]))
            })
            .collect::<Vec<_>>();
        GroupRepSetting::new(pair, Some(k))
            .with_irreducibles(unwrap_all(g_irreps), unwrap_all(h_irreps))
            .expect("D4/C4 catalogue")
    }

    /// `(Z/4, Z/2)` over `Q(i)`.
    pub fn z4_z2() -> Self {
        let pair = NormalPair::z4_z2();
        let k = root_of_unity_field(&[1, 0, 1]);
        let i = FieldElement::generator(&k);
        let g_irreps = (0..4)
            .map(|e| {
                let image = (0..e).fold(FieldElement::one(), |acc, _| acc * i.clone());
                (format!("chi{e}"), rep_from_generators(&pair.g, 1, &[(1, mat(&[&[image]]))]))
            })
            .collect::<Vec<_>>();
        let h_irreps = vec![
            ("trivial".to_string(), rep_from_generators(&pair.h_table, 1, &[(1, mat(&[&[FieldElement::one()]]))])),
            ("sign".to_string(), rep_from_generators(&pair.h_table, 1, &[(1, mat(&[&[-FieldElement::one()]]))])),
        ];
        GroupRepSetting::new(pair, Some(k))
            .with_irreducibles(unwrap_all(g_irreps), unwrap_all(h_irreps))
            .expect("Z4/Z2 catalogue")
    }

    pub fn pair(&self) -> &NormalPair {
        &self.pair
    }

    pub fn coefficient_field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn irreducibles(&self) -> &[(String, CatObject)] {
        &self.g_irreps
    }

    pub fn subgroup_irreducibles(&self) -> &[(String, CatObject)] {
        &self.h_irreps
    }

    pub fn g_generators(&self) -> &[usize] {
        &self.g_gens
    }

    fn h_of(&self, x: usize) -> usize {
        self.pair.h_index(x).expect("element of H")
    }

    fn m(&self) -> usize {
        self.pair.gamma.order()
    }

    /// `W(x)` for `x ∈ H` given as an element of `G`.
    pub fn act(&self, w: &CatObject, x: usize) -> Mat {
        w.action[self.h_of(x)].clone()
    }

    /// Induced-character value at `x ∈ G` by the averaging formula
    /// `(1/|H|) Σ_{y : y^-1 x y ∈ H} χ_W(y^-1 x y)`.
    pub fn induced_character(&self, w: &CatObject, x: usize) -> FieldElement {
        let g = &self.pair.g;
        let mut acc = FieldElement::zero();
        for y in g.elements() {
            let c = g.mul(g.mul(g.inv(y), x), y);
            if let Some(k) = self.pair.h_index(c) {
                acc = acc + w.action[k].trace();
            }
        }
        acc / FieldElement::from_i64(self.pair.h.len() as i64)
    }

    fn small_sums(irreps: &[(String, CatObject)], max_dim: usize, limit: usize) -> Vec<CatObject> {
        // multisets of irreducibles, by total dimension, in lexicographic order
        let mut out = Vec::new();
        let mut stack: Vec<(usize, CatObject)> = Vec::new();
        if let Some((_, first)) = irreps.first() {
            stack.push((0, first.zero_like()));
        }
        while let Some((start, obj)) = stack.pop() {
            if out.len() >= limit {
                break;
            }
            out.push(obj.clone());
            for k in (start..irreps.len()).rev() {
                let next = sum_obj(&obj, &irreps[k].1);
                if next.dim <= max_dim {
                    stack.push((k, next));
                }
            }
        }
        out
    }
}

fn unwrap_all(v: Vec<(String, Result<CatObject>)>) -> Vec<(String, CatObject)> {
    v.into_iter().map(|(n, r)| (n, r.expect("catalogued representation"))).collect()
}

impl DescentSetting for GroupRepSetting {
    fn name(&self) -> &str {
        &self.name
    }

    fn gamma(&self) -> &GroupTable {
        &self.pair.gamma
    }

    fn unit(&self, side: Side) -> CatObject {
        let n = match side {
            Side::Base => self.pair.g.order(),
            Side::Upper => self.pair.h.len(),
        };
        CatObject::rep(1, vec![Mat::identity(1); n])
    }

    fn validate_object(&self, side: Side, x: &CatObject) -> Result<()> {
        match side {
            Side::Base => x.validate(Some(&self.pair.g)),
            Side::Upper => x.validate(Some(&self.pair.h_table)),
        }
    }

    fn is_morphism(&self, _side: Side, source: &CatObject, target: &CatObject, m: &Mat) -> bool {
        source.is_morphism_to(target, m)
    }

    fn pull(&self, a: &CatObject) -> CatObject {
        CatObject::rep(a.dim, self.pair.h.iter().map(|&x| a.action[x].clone()).collect())
    }

    fn pull_mor(&self, m: &Mat) -> Mat {
        m.clone()
    }

    fn push(&self, c: &CatObject) -> CatObject {
        let (m, n) = (self.m(), c.dim);
        let g = &self.pair.g;
        let t = &self.pair.transversal;
        let action = g
            .elements()
            .map(|x| {
                let mut out = Mat::zeros(m * n, m * n);
                for gamma in 0..m {
                    let y = g.mul(x, t[gamma]);
                    let target = self.pair.coset_of[y];
                    let h = g.mul(g.inv(t[target]), y);
                    out.set_block(target * n, gamma * n, &self.act(c, h));
                }
                out
            })
            .collect();
        CatObject::rep(m * n, action)
    }

    fn push_mor(&self, m: &Mat) -> Mat {
        Mat::block_diag(&vec![m.clone(); self.m()])
    }

    fn unit_map(&self, a: &CatObject) -> Mat {
        let g = &self.pair.g;
        let blocks: Vec<Mat> = self.pair.transversal.iter().map(|&s| a.action[g.inv(s)].clone()).collect();
        Mat::vstack_all(&blocks, a.dim).expect("square blocks")
    }

    fn counit_map(&self, c: &CatObject) -> Mat {
        crate::matcat::projection(&vec![c.dim; self.m()], 0)
    }

    fn twist(&self, gamma: usize, c: &CatObject) -> CatObject {
        let g = &self.pair.g;
        let s = self.pair.transversal[gamma];
        let action = self.pair.h.iter().map(|&h| self.act(c, g.mul(g.mul(s, h), g.inv(s)))).collect();
        CatObject::rep(c.dim, action)
    }

    fn twist_mor(&self, _g: usize, m: &Mat) -> Mat {
        m.clone()
    }

    fn comparison(&self, gamma: usize, a: &CatObject) -> Mat {
        let g = &self.pair.g;
        a.action[g.inv(self.pair.transversal[gamma])].clone()
    }

    fn cocycle(&self, a: usize, b: usize, c: &CatObject) -> Mat {
        let g = &self.pair.g;
        let t = &self.pair.transversal;
        let ab = self.pair.gamma.mul(a, b);
        // s_a s_b = s_ab d with d ∈ H; the comparison is W(t^-1) for t = s_ab d s_ab^-1
        let d = g.mul(g.inv(t[ab]), g.mul(t[a], t[b]));
        let conj = g.mul(g.mul(t[ab], d), g.inv(t[ab]));
        self.act(c, g.inv(conj))
    }

    fn weak_trace(&self) -> Mat {
        Mat::from_fn(1, self.m(), |_, _| FieldElement::one())
    }

    fn hom_basis(&self, side: Side, x: &CatObject, y: &CatObject) -> Vec<Mat> {
        match side {
            Side::Base => equivariant_basis(x, y, &self.g_gens),
            Side::Upper => equivariant_basis(x, y, &self.h_gens),
        }
    }

    fn flatten(&self, _side: Side, m: &Mat) -> Vec<FieldElement> {
        m.entries().to_vec()
    }

    fn unflatten(&self, _side: Side, rows: usize, cols: usize, v: &[FieldElement]) -> Mat {
        Mat::new(rows, cols, v.to_vec()).expect("coordinate count")
    }

    fn forget_mor(&self, m: &Mat) -> Mat {
        m.clone()
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng) -> FieldElement {
        let d = self.k_degree();
        let coords: Vec<Rational> = (0..d).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect();
        match &self.field {
            Some(k) if d > 1 => FieldElement::new(k, coords).expect("coordinate count"),
            _ => FieldElement::rational(coords[0].clone()),
        }
    }

    fn sample_objects(&self, max_dim: usize) -> Vec<CatObject> {
        if self.g_irreps.is_empty() {
            let mut out = vec![self.unit(Side::Base)];
            let reg = regular_rep(&self.pair.g);
            if reg.dim <= max_dim {
                out.push(reg);
            }
            return out;
        }
        GroupRepSetting::small_sums(&self.g_irreps, max_dim, 40)
    }

    fn sample_objects_upper(&self, max_dim: usize) -> Vec<CatObject> {
        if self.h_irreps.is_empty() {
            let mut out = vec![self.unit(Side::Upper)];
            let reg = regular_rep(&self.pair.h_table);
            if reg.dim <= max_dim {
                out.push(reg);
            }
            return out;
        }
        GroupRepSetting::small_sums(&self.h_irreps, max_dim, 40)
    }

    fn k_degree(&self) -> usize {
        self.field.as_ref().map_or(1, |k| k.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcat::validate_setting;

    #[test]
    fn catalogues_build_and_validate() {
        for s in [GroupRepSetting::s3_a3(), GroupRepSetting::d4_c4(), GroupRepSetting::z4_z2()] {
            assert_eq!(s.gamma().order(), 2);
            let report = validate_setting(&s, 4);
            assert!(report.passed(), "{:?}", report.failures);
            assert!(report.objects_checked > 10);
        }
    }

    #[test]
    fn induction_of_the_unit_has_index_dimension() {
        let s = GroupRepSetting::s3_a3();
        let ind = s.push(&s.unit(Side::Upper));
        assert_eq!(ind.dim, 2);
        s.validate_object(Side::Base, &ind).unwrap();
    }

    #[test]
    fn block_characters_match_the_averaging_formula() {
        for s in [GroupRepSetting::s3_a3(), GroupRepSetting::d4_c4()] {
            for (_, w) in s.subgroup_irreducibles() {
                let ind = s.push(w);
                for x in s.pair().g.elements() {
                    assert_eq!(ind.action[x].trace(), s.induced_character(w, x));
                }
            }
        }
    }

    #[test]
    fn cocycle_sees_the_transversal_defect() {
        // reflections square to e, so dihedral transversals have no defect
        let d4 = GroupRepSetting::d4_c4();
        assert!(d4.cocycle(1, 1, &d4.subgroup_irreducibles()[1].1).is_identity());
        let s = GroupRepSetting::z4_z2();
        let sign = &s.subgroup_irreducibles()[1].1;
        assert_eq!(s.cocycle(1, 1, sign), -Mat::identity(1));
        assert!(validate_setting(&s, 4).passed());
    }

    #[test]
    fn uncatalogued_setting_uses_regular_samples() {
        let s = GroupRepSetting::new(NormalPair::s3_a3(), None);
        assert_eq!(s.sample_objects(6).len(), 2);
        assert!(validate_setting(&s, 6).passed());
    }
}
