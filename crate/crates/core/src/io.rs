//! JSON formats: rationals as `"p/q"`, field elements as coordinate arrays, matrices as
//! row-major nested arrays; extension, group and descent-problem files.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::descent::{ArtinImage, DescentDatum};
use crate::error::{Error, Result};
use crate::galois::GaloisExtension;
use crate::group::{GroupTable, NormalPair};
use crate::matcat::{CatObject, DescentSetting};
use crate::numfield::{FieldElement, NumberField};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::settings::group_rep::rep_from_generators;
use crate::settings::{GroupRepSetting, SemilinearSetting};
use crate::Mat;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| parse_err("expected an array of rationals"))?.iter().map(rational_from_json).collect()
}

/// A rational entry is written as a string, anything else as its coordinates.
pub fn element_to_json(x: &FieldElement) -> Value {
    match x.as_rational() {
        Some(q) => rational_to_json(&q),
        None => Value::Array(x.raw_coords().iter().map(rational_to_json).collect()),
    }
}

pub fn element_from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<FieldElement> {
    match v {
        Value::Array(_) => {
            let field = field.ok_or_else(|| parse_err("coordinate array without a number field"))?;
            let coords = rationals_from_json(v)?;
            if coords.len() != field.degree() {
                return Err(parse_err(format!("{} coordinates in a field of degree {}", coords.len(), field.degree())));
            }
            FieldElement::new(field, coords)
        }
        _ => Ok(FieldElement::rational(rational_from_json(v)?)),
    }
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(element_to_json).collect())).collect())
}

/// Reads a row-major matrix; `cols` fixes the width of an empty matrix.
pub fn matrix_from_json(v: &Value, field: Option<&Arc<NumberField>>, cols: Option<usize>) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| parse_err("a matrix is an array of rows"))?;
    let parsed: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("a matrix row is an array"))?
                .iter()
                .map(|x| element_from_json(x, field))
                .collect()
        })
        .collect::<Result<_>>()?;
    if parsed.is_empty() {
        return Ok(Mat::zeros(0, cols.unwrap_or(0)));
    }
    let m = Mat::from_rows(parsed).map_err(|e| parse_err(e.to_string()))?;
    if let Some(c) = cols {
        if m.cols() != c {
            return Err(parse_err(format!("expected {c} columns, found {}", m.cols())));
        }
    }
    Ok(m)
}

/// `{ "minpoly": [...], "generators": [[...], ...], "names": [...] }`, or a catalogue name.
pub fn extension_from_json(v: &Value) -> Result<GaloisExtension> {
    if let Some(name) = v.as_str() {
        return match name {
            "trivial" => Ok(GaloisExtension::trivial()),
            "gaussian" => Ok(GaloisExtension::gaussian()),
            "cyclic_cubic" => Ok(GaloisExtension::cyclic_cubic()),
            "biquadratic" => Ok(GaloisExtension::biquadratic()),
            other => Err(parse_err(format!("unknown extension {other:?}"))),
        };
    }
    let minpoly = rationals_from_json(v.get("minpoly").ok_or_else(|| parse_err("extension needs a minpoly"))?)?;
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("extension needs generator images"))?
        .iter()
        .map(rationals_from_json)
        .collect::<Result<Vec<_>>>()?;
    let names = match v.get("names") {
        None => None,
        Some(n) => Some(serde_json::from_value::<Vec<String>>(n.clone()).map_err(|e| parse_err(e.to_string()))?),
    };
    GaloisExtension::new(minpoly, gens, names)
}

pub fn extension_to_json(ext: &GaloisExtension) -> Value {
    let gens: Vec<Value> = ext
        .generator_images()
        .iter()
        .map(|x| Value::Array(ext.coords(x).iter().map(rational_to_json).collect()))
        .collect();
    json!({
        "minpoly": ext.field().minimal_polynomial().iter().map(rational_to_json).collect::<Vec<_>>(),
        "generators": gens,
        "names": ext.group().names(),
    })
}

/// `{ "order": n, "table": [[...]], "names": [...], "normal": [...] }` with optional
/// `"coefficient_field": {"minpoly": [...]}`, or a catalogue name.
pub fn groups_from_json(v: &Value) -> Result<GroupRepSetting> {
    if let Some(name) = v.as_str() {
        return match name {
            "s3_a3" => Ok(GroupRepSetting::s3_a3()),
            "d4_c4" => Ok(GroupRepSetting::d4_c4()),
            "z4_z2" => Ok(GroupRepSetting::z4_z2()),
            other => Err(parse_err(format!("unknown group pair {other:?}"))),
        };
    }
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| parse_err("group needs an order"))? as usize;
    let table: Vec<Vec<usize>> = serde_json::from_value(v.get("table").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("group table: {e}")))?;
    if table.len() != order {
        return Err(parse_err(format!("table has {} rows for order {order}", table.len())));
    }
    let names: Vec<String> = match v.get("names") {
        Some(n) => serde_json::from_value(n.clone()).map_err(|e| parse_err(e.to_string()))?,
        None => (0..order).map(|k| format!("g{k}")).collect(),
    };
    let normal: Vec<usize> = serde_json::from_value(v.get("normal").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("normal subgroup: {e}")))?;
    let g = GroupTable::new(table, names)?;
    let pair = NormalPair::new(g, &normal)?;
    let field = match v.get("coefficient_field") {
        None | Some(Value::Null) => None,
        Some(f) => Some(NumberField::new(rationals_from_json(
            f.get("minpoly").ok_or_else(|| parse_err("coefficient field needs a minpoly"))?,
        )?)?),
    };
    Ok(GroupRepSetting::new(pair, field))
}

pub fn groups_to_json(pair: &NormalPair) -> Value {
    json!({
        "order": pair.g.order(),
        "table": pair.g.table(),
        "names": pair.g.names(),
        "normal": pair.h,
    })
}

/// One of the two shipped settings.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum SettingSpec {
    Semilinear(SemilinearSetting),
    GroupRep(GroupRepSetting),
}

impl SettingSpec {
    pub fn as_dyn(&self) -> &dyn DescentSetting {
        match self {
            SettingSpec::Semilinear(s) => s,
            SettingSpec::GroupRep(s) => s,
        }
    }

    /// The field in which coordinate arrays are read.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            SettingSpec::Semilinear(s) => Some(s.extension().field()),
            SettingSpec::GroupRep(s) => s.coefficient_field(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SettingSpec::Semilinear(_) => "semilinear",
            SettingSpec::GroupRep(_) => "group-rep",
        }
    }

    /// The group whose representations are the objects on the upper side, if any.
    fn upper_group(&self) -> Option<&GroupTable> {
        match self {
            SettingSpec::Semilinear(_) => None,
            SettingSpec::GroupRep(s) => Some(&s.pair().h_table),
        }
    }

    fn base_group(&self) -> Option<&GroupTable> {
        match self {
            SettingSpec::Semilinear(_) => None,
            SettingSpec::GroupRep(s) => Some(&s.pair().g),
        }
    }
}

/// A parsed descent-problem file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub setting: SettingSpec,
    /// The upper object `C` carrying the datum.
    pub object: Option<CatObject>,
    /// `b_g` in the element order of `Γ`.
    pub b: Option<Vec<Mat>>,
    /// A representation of `Γ` for the Artin functor.
    pub representation: Option<ArtinImage>,
    /// A base object for the Artin functor.
    pub base_object: Option<CatObject>,
    pub checks: Option<Vec<String>>,
}

impl Problem {
    pub fn datum(&self) -> Result<DescentDatum> {
        match (&self.object, &self.b) {
            (Some(o), Some(b)) => Ok(DescentDatum::unchecked(o.clone(), b.clone())),
            _ => Err(parse_err("problem has no object with a datum")),
        }
    }
}

/// `{"dim": n}` or `{"dim": n, "action": {"<element>": matrix, ...}}`; a partial action
/// is closed up from the given elements.
fn object_from_json(v: &Value, group: Option<&GroupTable>, field: Option<&Arc<NumberField>>) -> Result<CatObject> {
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| parse_err("object needs a dim"))? as usize;
    match (group, v.get("action")) {
        (None, None) => Ok(CatObject::plain(dim)),
        (None, Some(_)) => Err(parse_err("objects of this setting carry no action")),
        (Some(g), action) => {
            let empty = Map::new();
            let action = match action {
                None => &empty,
                Some(a) => a.as_object().ok_or_else(|| parse_err("action is a map from element names to matrices"))?,
            };
            let gens = action
                .iter()
                .map(|(name, m)| {
                    let idx = g.index_of(name).ok_or_else(|| parse_err(format!("unknown group element {name:?}")))?;
                    Ok((idx, matrix_from_json(m, field, Some(dim))?))
                })
                .collect::<Result<Vec<_>>>()?;
            let obj = if gens.is_empty() {
                CatObject::rep(dim, g.elements().map(|_| Mat::identity(dim)).collect())
            } else {
                rep_from_generators(g, dim, &gens)?
            };
            obj.validate(Some(g))?;
            Ok(obj)
        }
    }
}

pub fn object_to_json(x: &CatObject, group: Option<&GroupTable>) -> Value {
    match group {
        None => json!({"dim": x.dim}),
        Some(g) => {
            let action: Map<String, Value> =
                g.elements().map(|k| (g.name(k).to_string(), matrix_to_json(&x.action[k]))).collect();
            json!({"dim": x.dim, "action": action})
        }
    }
}

pub fn problem_from_json(v: &Value) -> Result<Problem> {
    let kind = v.get("setting").and_then(Value::as_str).ok_or_else(|| parse_err("missing \"setting\""))?;
    let setting = match kind {
        "semilinear" => SettingSpec::Semilinear(SemilinearSetting::new(extension_from_json(
            v.get("extension").ok_or_else(|| parse_err("semilinear problem needs an extension"))?,
        )?)),
        "group-rep" => SettingSpec::GroupRep(groups_from_json(
            v.get("groups").ok_or_else(|| parse_err("group-rep problem needs groups"))?,
        )?),
        other => return Err(parse_err(format!("unknown setting {other:?}"))),
    };
    let field = setting.field().cloned();
    let gamma = setting.as_dyn().gamma().clone();
    let object = v.get("object").map(|o| object_from_json(o, setting.upper_group(), field.as_ref())).transpose()?;
    let b = match (v.get("b"), &object) {
        (None, _) => None,
        (Some(_), None) => return Err(parse_err("\"b\" given without an object")),
        (Some(b), Some(obj)) => {
            let map = b.as_object().ok_or_else(|| parse_err("\"b\" maps element names to matrices"))?;
            let mut out: Vec<Option<Mat>> = vec![None; gamma.order()];
            for (name, m) in map {
                let g = gamma.index_of(name).ok_or_else(|| parse_err(format!("unknown element of Γ: {name:?}")))?;
                out[g] = Some(matrix_from_json(m, field.as_ref(), Some(obj.dim))?);
            }
            // b at the identity may be left out
            let e = gamma.identity();
            if out[e].is_none() {
                out[e] = Some(Mat::identity(obj.dim));
            }
            let mut b = Vec::with_capacity(out.len());
            for (g, m) in out.into_iter().enumerate() {
                b.push(m.ok_or_else(|| parse_err(format!("missing b for {:?}", gamma.name(g))))?);
            }
            Some(b)
        }
    };
    let representation = match v.get("representation") {
        None => None,
        Some(r) => {
            let obj = object_from_json(r, Some(&gamma), field.as_ref())?;
            Some(ArtinImage { lattice_dim: obj.dim, action: obj.action })
        }
    };
    let base_object =
        v.get("base_object").map(|o| object_from_json(o, setting.base_group(), field.as_ref())).transpose()?;
    let checks = match v.get("checks") {
        None => None,
        Some(c) => Some(serde_json::from_value(c.clone()).map_err(|e| parse_err(format!("checks: {e}")))?),
    };
    Ok(Problem { setting, object, b, representation, base_object, checks })
}

pub fn problem_from_str(text: &str) -> Result<Problem> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    problem_from_json(&v)
}

/// Serializes an upper or base object of a problem's setting.
pub fn setting_object_to_json(setting: &SettingSpec, x: &CatObject, upper: bool) -> Value {
    let group = if upper { setting.upper_group() } else { setting.base_group() };
    object_to_json(x, group)
}

pub fn representation_to_json(gamma: &GroupTable, rep: &ArtinImage) -> Value {
    let action: BTreeMap<String, Value> =
        gamma.elements().map(|g| (gamma.name(g).to_string(), matrix_to_json(&rep.action[g]))).collect();
    json!({"dim": rep.lattice_dim, "action": action})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn rationals_and_elements() {
        let q = crate::scalar::ratio(-3, 4);
        assert_eq!(rational_to_json(&q), json!("-3/4"));
        assert_eq!(rational_from_json(&json!("-3/4")).unwrap(), q);
        assert_eq!(rational_to_json(&crate::scalar::rat(5)), json!("5"));
        assert!(rational_from_json(&json!("1/0")).is_err());
        let ext = GaloisExtension::gaussian();
        let x = ext.element(vec![crate::scalar::rat(1), crate::scalar::ratio(1, 2)]).unwrap();
        let v = element_to_json(&x);
        assert_eq!(v, json!(["1", "1/2"]));
        assert_eq!(element_from_json(&v, Some(ext.field())).unwrap(), x);
        assert!(element_from_json(&v, None).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let ext = GaloisExtension::cyclic_cubic();
        let m = Mat::from_rows(vec![vec![ext.generator(), FieldElement::from_i64(2)]]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v, Some(ext.field()), Some(2)).unwrap(), m);
        assert_eq!(matrix_from_json(&json!([]), None, Some(3)).unwrap().shape(), (0, 3));
    }

    #[test]
    fn extension_round_trip() {
        let ext = GaloisExtension::biquadratic();
        let back = extension_from_json(&extension_to_json(&ext)).unwrap();
        assert_eq!(back.group().order(), 4);
        assert_eq!(back.field().minimal_polynomial(), ext.field().minimal_polynomial());
    }

    #[test]
    fn hilbert_ninety_problem() {
        let text = r#"{"setting": "semilinear", "extension": "gaussian",
            "object": {"dim": 1}, "b": {"s": [[["0", "1"]]]}}"#;
        let p = problem_from_str(text).unwrap();
        let names = p.setting.as_dyn().gamma().names().to_vec();
        assert_eq!(names.len(), 2);
        let d = p.datum().unwrap();
        assert_eq!(d.b.len(), 2);
    }

    #[test]
    fn group_files() {
        let pair = NormalPair::s3_a3();
        let s = groups_from_json(&groups_to_json(&pair)).unwrap();
        assert_eq!(s.pair().gamma.order(), 2);
        let bad = json!({"order": 3, "table": [[0, 1], [1, 0]], "normal": [0]});
        assert!(groups_from_json(&bad).is_err());
        let non_normal = json!({"order": 6, "table": pair.g.table(), "names": pair.g.names(), "normal": [0, 3]});
        let err = groups_from_json(&non_normal).unwrap_err();
        assert!(matches!(err, Error::NonNormal(_) | Error::BadGroup(_)), "{err:?}");
    }

    #[test]
    fn parse_errors() {
        assert!(problem_from_str("{").is_err());
        assert!(problem_from_str(r#"{"setting": "other"}"#).is_err());
        let missing = r#"{"setting": "semilinear", "extension": "biquadratic", "object": {"dim": 1}, "b": {}}"#;
        assert!(matches!(problem_from_str(missing), Err(Error::Parse(_))));
    }
}
