//! Concrete descent settings and test-data generators.

pub mod group_rep;
pub mod semilinear;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::DescentDatum;
use crate::matcat::{CatObject, DescentSetting, Side};
use crate::numfield::FieldElement;
use crate::scalar::Field;
use crate::Mat;

pub use group_rep::GroupRepSetting;
pub use semilinear::SemilinearSetting;

/// An invertible morphism `x -> y` on the given side, if one exists.
///
/// Tries each basis element, then seeded random combinations with small coefficients.
pub fn find_isomorphism(s: &dyn DescentSetting, side: Side, x: &CatObject, y: &CatObject) -> Option<Mat> {
    if x.dim != y.dim {
        return None;
    }
    if x.dim == 0 {
        return Some(Mat::zeros(0, 0));
    }
    let basis = s.hom_basis(side, x, y);
    if basis.is_empty() {
        return None;
    }
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..64 {
        let m = basis
            .iter()
            .fold(Mat::zeros(y.dim, x.dim), |acc, b| acc + b.scale(&FieldElement::from_i64(rng.gen_range(-3i64..=3))));
        if m.is_invertible() {
            return Some(m);
        }
    }
    None
}

/// A random invertible `n x n` matrix over the upper scalars.
pub fn random_invertible(s: &dyn DescentSetting, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_fn(n, n, |_, _| s.random_scalar(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A valid datum of dimension `dim`: a sampled `A` with `C = Q f*A Q^-1` and
/// `b_g = Q ∘ i_g(A) ∘ g*(Q)^-1`. Deterministic in `seed`.
pub fn random_descent_datum(s: &dyn DescentSetting, dim: usize, seed: u64) -> DescentDatum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<CatObject> = s.sample_objects(dim).into_iter().filter(|a| a.dim == dim).collect();
    let a = if candidates.is_empty() {
        s.unit(Side::Base).trivial_like(dim)
    } else {
        candidates[rng.gen_range(0..candidates.len())].clone()
    };
    let fa = s.pull(&a);
    let q = random_invertible(s, dim, &mut rng);
    let q_inv = q.inverse().expect("invertible by construction");
    let object = CatObject::rep(dim, fa.action.iter().map(|x| &(&q * x) * &q_inv).collect());
    let b = s
        .gamma()
        .elements()
        .map(|g| &(&q * &s.comparison(g, &a)) * &s.twist_mor(g, &q).inverse().expect("twist of an invertible map"))
        .collect();
    DescentDatum::unchecked(object, b)
}
