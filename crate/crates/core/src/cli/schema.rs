//! JSON shapes accepted and produced by the command-line front end.
//!
//! Exact values travel as strings (`"3/4"`, `"-inf"`); bare JSON integers
//! are accepted on input wherever a rational is expected. Counts and
//! indices are plain JSON integers.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::expr::{parse_mpoly, parse_rational_function};
use super::CliError;
use crate::berkline::{BerkPoint, DirectionRep, Disk};
use crate::field::{
    parse_rat, HomForm, LogNorm, LogValue, MPoly, Poly, Prime, Radius, Rat, Scalar,
};
use crate::green::NullCertificate;
use crate::morspace::{CoeffPoint, CoordIndex, Dims, TailCertificate};
use crate::tree::{BasicTube, StdAffinoid};

fn schema(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn join_path(base: &str, field: &str) -> String {
    if base.is_empty() {
        field.to_string()
    } else if field.starts_with('[') {
        format!("{base}{field}")
    } else {
        format!("{base}.{field}")
    }
}

/// A rational from `"num/den"`, a decimal integer string, or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rat);

impl Exact {
    pub fn scalar(&self) -> Scalar {
        Scalar::new(self.0.clone())
    }
}

struct ExactVisitor;

impl<'de> Visitor<'de> for ExactVisitor {
    type Value = Exact;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational such as \"3/4\" or an integer")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Exact, E> {
        parse_rat(s.trim())
            .map(Exact)
            .ok_or_else(|| E::invalid_value(de::Unexpected::Str(s), &self))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
        Ok(Exact(Rat::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
        Ok(Exact(Rat::from_integer(v.into())))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ExactVisitor)
    }
}

/// A nonnegative count given as a JSON integer or a decimal string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Count(pub u64);

struct CountVisitor;

impl<'de> Visitor<'de> for CountVisitor {
    type Value = Count;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a nonnegative integer")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Count, E> {
        s.trim()
            .parse()
            .map(Count)
            .map_err(|_| E::invalid_value(de::Unexpected::Str(s), &self))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Count, E> {
        Ok(Count(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Count, E> {
        u64::try_from(v)
            .map(Count)
            .map_err(|_| E::invalid_value(de::Unexpected::Signed(v), &self))
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(CountVisitor)
    }
}

impl Count {
    pub fn usize(self) -> usize {
        self.0 as usize
    }
}

/// A signed integer given as a JSON integer or a decimal string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Int(pub i64);

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Int, E> {
        s.trim()
            .parse()
            .map(Int)
            .map_err(|_| E::invalid_value(de::Unexpected::Str(s), &self))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        i64::try_from(v)
            .map(Int)
            .map_err(|_| E::invalid_value(de::Unexpected::Unsigned(v), &self))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusJson {
    pub e: Option<Exact>,
    #[serde(default)]
    pub delta: Option<Int>,
    #[serde(default)]
    pub zero: bool,
}

impl RadiusJson {
    pub fn to_radius(&self, path: &str) -> Result<Radius, CliError> {
        if self.zero {
            return Ok(Radius::zero());
        }
        let e = self
            .e
            .as_ref()
            .ok_or_else(|| schema(&join_path(path, "e"), "missing field `e`"))?;
        Ok(Radius::new(e.0.clone(), self.delta.map_or(0, |d| d.0)))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskJson {
    pub a: Exact,
    pub r: RadiusJson,
}

impl DiskJson {
    pub fn to_disk(&self, p: Prime, path: &str) -> Result<Disk, CliError> {
        Ok(Disk::new(
            p,
            self.a.scalar(),
            self.r.to_radius(&join_path(path, "r"))?,
        ))
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
pub enum Kind {
    #[serde(rename = "I", alias = "rigid")]
    I,
    #[serde(rename = "ball", alias = "II", alias = "III")]
    Ball,
    #[serde(rename = "IV")]
    IV,
    #[serde(rename = "inf", alias = "infinity")]
    Inf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub kind: Kind,
    pub a: Option<Exact>,
    pub r: Option<RadiusJson>,
    pub prefix: Option<Vec<DiskJson>>,
}

impl PointJson {
    pub fn to_point(&self, p: Prime, path: &str) -> Result<BerkPoint, CliError> {
        let need_a = || {
            self.a
                .as_ref()
                .map(Exact::scalar)
                .ok_or_else(|| schema(&join_path(path, "a"), "missing field `a`"))
        };
        Ok(match self.kind {
            Kind::I => BerkPoint::rigid(need_a()?),
            Kind::Ball => {
                let rpath = join_path(path, "r");
                let r = self
                    .r
                    .as_ref()
                    .ok_or_else(|| schema(&rpath, "missing field `r`"))?;
                BerkPoint::ball(p, need_a()?, r.to_radius(&rpath)?)
            }
            Kind::IV => {
                let ppath = join_path(path, "prefix");
                let pre = self
                    .prefix
                    .as_ref()
                    .ok_or_else(|| schema(&ppath, "missing field `prefix`"))?;
                let balls = pre
                    .iter()
                    .enumerate()
                    .map(|(i, d)| Ok((d.a.scalar(), d.r.to_radius(&format!("{ppath}[{i}].r"))?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                BerkPoint::type_iv(p, balls)?
            }
            Kind::Inf => BerkPoint::Infinity,
        })
    }
}

pub fn points(p: Prime, xs: &[PointJson], path: &str) -> Result<Vec<BerkPoint>, CliError> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| x.to_point(p, &format!("{path}[{i}]")))
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeJson {
    #[serde(default)]
    pub outer: Option<DiskJson>,
    #[serde(default)]
    pub removed: Vec<DiskJson>,
}

impl TubeJson {
    fn parts(&self, p: Prime, path: &str) -> Result<(Option<Disk>, Vec<Disk>), CliError> {
        let outer = match &self.outer {
            Some(d) => Some(d.to_disk(p, &join_path(path, "outer"))?),
            None => None,
        };
        let removed = self
            .removed
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_disk(p, &format!("{}[{i}]", join_path(path, "removed"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((outer, removed))
    }

    pub fn to_tube(&self, p: Prime, path: &str) -> Result<BasicTube, CliError> {
        let (outer, removed) = self.parts(p, path)?;
        Ok(BasicTube::new(p, outer, removed)?)
    }

    pub fn to_affinoid(&self, p: Prime, path: &str) -> Result<StdAffinoid, CliError> {
        let (outer, removed) = self.parts(p, path)?;
        Ok(StdAffinoid::new(p, outer, removed)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: Exact,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsJson {
    pub forms: Vec<Vec<TermJson>>,
}

/// A map: `"z^2+2"` sugar for the line, or explicit homogeneous forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapJson {
    Sugar(String),
    Forms(Vec<Vec<TermJson>>),
    Object(FormsJson),
}

fn form_from_terms(
    terms: &[TermJson],
    nvars: usize,
    degree: usize,
    path: &str,
) -> Result<HomForm, CliError> {
    let mut poly = MPoly::zero(nvars);
    for (j, t) in terms.iter().enumerate() {
        if t.exps.len() != nvars {
            return Err(schema(
                &format!("{path}[{j}].exps"),
                format!("expected {nvars} exponents"),
            ));
        }
        poly = poly.with_term(t.exps.clone(), t.coeff.scalar());
    }
    HomForm::new(poly, degree)
        .map_err(|_| schema(path, format!("form is not homogeneous of degree {degree}")))
}

impl MapJson {
    pub fn forms(&self, path: &str) -> Result<Vec<HomForm>, CliError> {
        let raw = match self {
            MapJson::Sugar(s) => {
                let (num, den) = parse_rational_function(s).map_err(|m| schema(path, m))?;
                let d = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
                let hom = |q: &Poly| HomForm::homogenize(q, d).expect("degree fits");
                return Ok(vec![hom(&num), hom(&den)]);
            }
            MapJson::Forms(f) => f,
            MapJson::Object(o) => &o.forms,
        };
        let first = raw
            .iter()
            .flat_map(|f| f.first())
            .next()
            .ok_or_else(|| schema(path, "map has no terms"))?;
        let nvars = first.exps.len();
        let degree = first.exps.iter().map(|&k| k as usize).sum();
        raw.iter()
            .enumerate()
            .map(|(i, f)| form_from_terms(f, nvars, degree, &format!("{path}[{i}]")))
            .collect()
    }
}

/// A cofactor form: a list of terms, empty for zero.
pub type CofactorJson = Vec<TermJson>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NullCertJson {
    pub s: Count,
    pub lambdas: Vec<Vec<CofactorJson>>,
}

/// Either an explicit certificate or `"bezout"` to derive one.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CertChoice {
    Named(String),
    Explicit(NullCertJson),
}

impl NullCertJson {
    pub fn to_cert(
        &self,
        nvars: usize,
        degree: usize,
        path: &str,
    ) -> Result<NullCertificate, CliError> {
        let s = self.s.usize();
        let deg = s.checked_sub(degree).ok_or_else(|| {
            schema(
                &join_path(path, "s"),
                format!("s must be at least the degree {degree}"),
            )
        })?;
        let lambdas = self
            .lambdas
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, f)| {
                        form_from_terms(f, nvars, deg, &format!("{path}.lambdas[{i}][{j}]"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NullCertificate { s, lambdas })
    }
}

/// A one-variable polynomial: `"z^2-1"` or ascending coefficients.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolyJson {
    Sugar(String),
    Coeffs(Vec<Exact>),
}

impl PolyJson {
    pub fn to_poly(&self, path: &str) -> Result<Poly, CliError> {
        match self {
            PolyJson::Coeffs(cs) => Ok(Poly::new(cs.iter().map(Exact::scalar).collect())),
            PolyJson::Sugar(s) => {
                let (num, den) = parse_rational_function(s).map_err(|m| schema(path, m))?;
                if den.degree() != Some(0) {
                    return Err(schema(path, "expected a polynomial"));
                }
                Ok(num)
            }
        }
    }
}

pub fn mpoly(s: &str, nvars: usize, path: &str) -> Result<MPoly, CliError> {
    parse_mpoly(s, nvars).map_err(|m| schema(path, m))
}

/// A tangent direction: a rigid point it points toward, or `"inf"`.
#[derive(Debug, Clone)]
pub struct DirJson(pub DirectionRep);

struct DirVisitor;

impl<'de> Visitor<'de> for DirVisitor {
    type Value = DirJson;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational or \"inf\"")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<DirJson, E> {
        if s.trim() == "inf" {
            return Ok(DirJson(DirectionRep::TowardInfinity));
        }
        ExactVisitor
            .visit_str(s)
            .map(|e| DirJson(DirectionRep::Toward(e.scalar())))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<DirJson, E> {
        Ok(DirJson(DirectionRep::Toward(Scalar::from_int(v))))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<DirJson, E> {
        ExactVisitor
            .visit_u64(v)
            .map(|e| DirJson(DirectionRep::Toward(e.scalar())))
    }
}

impl<'de> Deserialize<'de> for DirJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(DirVisitor)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Cauchy,
    Equidistant,
    Nested,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailCertJson {
    pub kind: CertKind,
    pub rates: Option<Vec<Exact>>,
    pub limit: Option<Exact>,
    pub r: Option<RadiusJson>,
    pub radii: Option<Vec<RadiusJson>>,
}

impl TailCertJson {
    pub fn to_cert(&self, path: &str) -> Result<TailCertificate, CliError> {
        let missing = |f: &str| schema(&join_path(path, f), format!("missing field `{f}`"));
        Ok(match self.kind {
            CertKind::Cauchy => TailCertificate::Cauchy {
                rates: self
                    .rates
                    .as_ref()
                    .ok_or_else(|| missing("rates"))?
                    .iter()
                    .map(|e| e.0.clone())
                    .collect(),
                limit: self.limit.as_ref().map(Exact::scalar),
            },
            CertKind::Equidistant => {
                let rpath = join_path(path, "r");
                TailCertificate::Equidistant(
                    self.r
                        .as_ref()
                        .ok_or_else(|| missing("r"))?
                        .to_radius(&rpath)?,
                )
            }
            CertKind::Nested => TailCertificate::Nested(
                self.radii
                    .as_ref()
                    .ok_or_else(|| missing("radii"))?
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.to_radius(&format!("{}[{i}]", join_path(path, "radii"))))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffPointJson {
    pub r: Count,
    pub s: Count,
    pub delta: Count,
    #[serde(default)]
    pub coords: BTreeMap<String, PointJson>,
}

impl CoeffPointJson {
    pub fn dims(&self, path: &str) -> Result<Dims, CliError> {
        let delta = u32::try_from(self.delta.0)
            .map_err(|_| schema(&join_path(path, "delta"), "too large"))?;
        Ok(Dims {
            r: self.r.usize(),
            s: self.s.usize(),
            delta,
        })
    }

    pub fn to_point(&self, p: Prime, path: &str) -> Result<CoeffPoint, CliError> {
        let dims = self.dims(path)?;
        let mut coords = BTreeMap::new();
        for (key, x) in &self.coords {
            let kpath = format!("{}.{key}", join_path(path, "coords"));
            let idx = parse_coord_key(key, dims.r).map_err(|m| schema(&kpath, m))?;
            coords.insert(idx, x.to_point(p, &kpath)?);
        }
        Ok(CoeffPoint::new(p, dims, coords)?)
    }
}

/// `"l:i1,...,ir"` with `l` counted from 1.
pub fn parse_coord_key(key: &str, r: usize) -> Result<CoordIndex, String> {
    let (l, rest) = key
        .split_once(':')
        .ok_or("expected a key of the form \"l:i1,...,ir\"")?;
    let l: usize = l
        .trim()
        .parse()
        .map_err(|_| format!("bad component index {l:?}"))?;
    if l == 0 {
        return Err("component indices start at 1".into());
    }
    let exps: Vec<u32> = if rest.trim().is_empty() {
        vec![]
    } else {
        rest.split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad exponent {t:?}")))
            .collect::<Result<_, _>>()?
    };
    if exps.len() != r {
        return Err(format!("expected {r} exponents, got {}", exps.len()));
    }
    Ok((l - 1, exps))
}

pub fn coord_key(idx: &CoordIndex) -> String {
    let exps: Vec<String> = idx.1.iter().map(u32::to_string).collect();
    format!("{}:{}", idx.0 + 1, exps.join(","))
}

// ---- output ----

pub fn rat_str(q: &Rat) -> Value {
    Value::String(q.to_string())
}

pub fn scalar_str(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn lognorm_str(l: &LogNorm) -> Value {
    Value::String(l.to_string())
}

pub fn logvalue_str(l: &LogValue) -> Value {
    Value::String(l.to_string())
}

pub fn radius_json(r: &Radius) -> Value {
    if r.is_zero() {
        return json!({"zero": true});
    }
    let delta = r.delta();
    let delta = if delta.is_integer() {
        match i64::try_from(delta.to_integer()) {
            Ok(d) => json!(d),
            Err(_) => rat_str(&delta),
        }
    } else {
        rat_str(&delta)
    };
    json!({"e": rat_str(&r.exponent()), "delta": delta, "zero": false})
}

pub fn disk_json(d: &Disk) -> Value {
    json!({"a": scalar_str(d.center()), "r": radius_json(d.radius())})
}

pub fn point_json(x: &BerkPoint) -> Value {
    match x {
        BerkPoint::TypeI(a) => json!({"kind": "I", "a": scalar_str(a)}),
        BerkPoint::Ball(d) => {
            json!({"kind": "ball", "a": scalar_str(d.center()), "r": radius_json(d.radius())})
        }
        BerkPoint::TypeIV(ds) => {
            json!({"kind": "IV", "prefix": ds.iter().map(disk_json).collect::<Vec<_>>()})
        }
        BerkPoint::Infinity => json!({"kind": "inf"}),
    }
}

pub fn tube_json(outer: Option<&Disk>, removed: &[Disk]) -> Value {
    json!({
        "outer": outer.map_or(Value::Null, disk_json),
        "removed": removed.iter().map(disk_json).collect::<Vec<_>>(),
    })
}

pub fn form_json(f: &HomForm) -> Value {
    Value::Array(
        f.poly()
            .terms()
            .map(|(e, c)| json!({"coeff": scalar_str(c), "exps": e}))
            .collect(),
    )
}

pub fn coeff_point_json(alpha: &CoeffPoint) -> Value {
    let dims = alpha.dims();
    let coords: Map<String, Value> = alpha
        .coords()
        .iter()
        .map(|(k, x)| (coord_key(k), point_json(x)))
        .collect();
    json!({"r": dims.r, "s": dims.s, "delta": dims.delta, "coords": coords})
}
