//! Seeded sweep of the property suite; the report is a pure function of `(seed, cases)`
//! apart from its timings.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::descent::{artin_functor, artin_inverse, cartesian_iso, descend, hom_descent, retraction_rho, trace_axioms};
use crate::error::Result;
use crate::galois::GaloisExtension;
use crate::matcat::{DescentSetting, Side};
use crate::monoid::{dual_zigzags, monoid_from_direct_image, tensor_structure_check};
use crate::report::{CheckItem, Report};
use crate::scalar::Field;
use crate::settings::{random_descent_datum, GroupRepSetting, SemilinearSetting};
use crate::tannaka::small_integer_representations;
use crate::{FieldElement, Mat};

fn outcome(name: String, r: Result<bool>) -> CheckItem {
    match r {
        Ok(ok) => CheckItem::from_bool(name, ok, || json!("property does not hold")),
        Err(e) => CheckItem::fail(name, json!({"error": e.to_string()})),
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Runs `cases` rounds; round `i` draws its choices from `seed + i`.
pub fn selftest(seed: u64, cases: usize) -> Report {
    let mut report = Report::new("selftest", Some(seed));
    if cases == 0 {
        return report;
    }
    let fields: Vec<(&str, SemilinearSetting)> = vec![
        ("gaussian", SemilinearSetting::new(GaloisExtension::gaussian())),
        ("cyclic_cubic", SemilinearSetting::new(GaloisExtension::cyclic_cubic())),
        ("biquadratic", SemilinearSetting::new(GaloisExtension::biquadratic())),
    ];
    let groups: Vec<(&str, GroupRepSetting)> =
        vec![("s3_a3", GroupRepSetting::s3_a3()), ("d4_c4", GroupRepSetting::d4_c4())];
    let mut settings: Vec<(&str, &dyn DescentSetting)> = Vec::new();
    for (n, s) in &fields {
        settings.push((n, s));
    }
    for (n, s) in &groups {
        settings.push((n, s));
    }
    let reps: Vec<_> = fields.iter().map(|(_, s)| small_integer_representations(s.gamma(), 2)).collect();
    let gaussian_r = monoid_from_direct_image(&fields[0].1).expect("Q(i) gives a monoid");

    let timed = |name: &str, f: &mut dyn FnMut() -> Vec<CheckItem>, report: &mut Report| {
        let start = Instant::now();
        let items = f();
        *report.timings_ms.entry(name.to_string()).or_insert(0) += start.elapsed().as_millis() as u64;
        report.extend(items);
    };

    for i in 0..cases {
        let case_seed = seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        let rng = &mut rng;

        timed(
            "descent round trip",
            &mut || {
                fields
                    .iter()
                    .map(|(name, s)| {
                        let dim = rng.gen_range(1..=4);
                        let d = random_descent_datum(s, dim, rng.gen());
                        let r = descend(s, &d).map(|r| r.idempotent.is_idempotent() && r.object.dim == dim);
                        outcome(format!("case {i}: descent round trip over {name}, dim {dim}"), r)
                    })
                    .collect()
            },
            &mut report,
        );

        timed(
            "hom descent",
            &mut || {
                let (name, s) = *pick(rng, &settings);
                let objs = s.sample_objects(2);
                let a = pick(rng, &objs).clone();
                let b = pick(rng, &objs).clone();
                let r = hom_descent(s, &a, &b).map(|h| h.bijective);
                vec![outcome(format!("case {i}: hom descent in {name} ({} -> {})", a.dim, b.dim), r)]
            },
            &mut report,
        );

        timed(
            "trace and cartesianity",
            &mut || {
                let (name, s) = *pick(rng, &settings);
                let a = pick(rng, &s.sample_objects(3)).clone();
                let t = trace_axioms(s, &a).map(|t| t.multiplication && t.sum_map && t.projection_identity);
                let uppers = s.sample_objects_upper(2);
                let c = pick(rng, &uppers).clone();
                let cart = cartesian_iso(s, &c)
                    .map(|u| (&u.u * &u.u_inverse).is_identity() && (&s.counit_map(&c) * &u.section).is_identity());
                vec![
                    outcome(format!("case {i}: trace axioms in {name}, dim {}", a.dim), t),
                    outcome(format!("case {i}: cartesian in {name}, dim {}", c.dim), cart),
                ]
            },
            &mut report,
        );

        timed(
            "modules",
            &mut || {
                let n = rng.gen_range(1..=2);
                let x = gaussian_r.free_module(n);
                let zig = dual_zigzags(&x).map(|(a, b)| a.is_identity() && b.is_identity());
                let y = gaussian_r.free_module(rng.gen_range(1..=2));
                let t = tensor_structure_check(&x, &y, &x).map(|r| r.unit && r.symmetry && r.associativity);
                vec![
                    outcome(format!("case {i}: dual zig-zags, free rank {n}"), zig),
                    outcome(format!("case {i}: tensor over R, free ranks {n} and {}", y.dim / 2), t),
                ]
            },
            &mut report,
        );

        timed(
            "artin",
            &mut || {
                let k = rng.gen_range(0..fields.len());
                let (name, s) = &fields[k];
                let rep = pick(rng, &reps[k]).clone();
                let r = artin_inverse(s, &rep).and_then(|r| Ok(artin_functor(s, &r.object, Some(&r.iso))? == rep));
                vec![outcome(format!("case {i}: artin round trip over {name}, dim {}", rep.lattice_dim), r)]
            },
            &mut report,
        );

        timed(
            "retraction",
            &mut || {
                let (name, g) = pick(rng, &groups);
                let x = rng.gen_range(0..g.pair().g.order());
                let one = g.unit(Side::Upper);
                let push = g.push(&one);
                let inside = g.pair().h_index(x).is_some();
                let expected = Mat::scalar(FieldElement::from_i64(i64::from(inside)));
                let r = retraction_rho(g, &push.action[x], &one).map(|m| m == expected);
                vec![outcome(format!("case {i}: retraction at {} in {name}", g.pair().g.name(x)), r)]
            },
            &mut report,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_cases_is_an_empty_pass() {
        let r = selftest(0, 0);
        assert!(r.passed() && r.checks.is_empty());
    }

    #[test]
    fn deterministic_apart_from_timings() {
        let a = selftest(7, 2);
        let b = selftest(7, 2);
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_json_without_timings(), b.to_json_without_timings());
    }
}
