use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::schema::{
    coeff_point_json, disk_json, form_json, lognorm_str, logvalue_str, mpoly, parse_coord_key,
    point_json, points, rat_str, scalar_str, tube_json, CertChoice, CoeffPointJson, Count, DirJson,
    DiskJson, Exact, Int, MapJson, PointJson, PolyJson, TailCertJson, TubeJson,
};
use super::{CliError, Format, Report};
use crate::berkline::{self, classify, seminorm_enclosure, seminorm_eval, TangentDirection};
use crate::dynamics::{self, equicontinuity_probe, normalize_lift, ProbeConfig, ProjMap};
use crate::error::Error;
use crate::field::{
    self, count_zeros_in_disk, count_zeros_in_open_disk, newton_polygon, NewtonPolygon, Prime,
    Scalar,
};
use crate::green::{self, bezout_certificate, make_context, GreenContext};
use crate::harmonic::{harm_approx, harm_eval, HarmonicDatum};
use crate::morspace::{self, alpha_of, ev_norm, ev_point_s1, is_rigid, PolyMap, RowVerdict};
use crate::tree::{self, exhaust, hull, retract, tube_from_tree};

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| CliError::Schema {
        path: e.path().to_string(),
        msg: e.into_inner().to_string(),
    })
}

fn missing(field: &str) -> CliError {
    CliError::Schema {
        path: field.into(),
        msg: format!("missing field `{field}`"),
    }
}

pub(super) fn dispatch(
    name: &str,
    p: Prime,
    input: Value,
    format: Format,
) -> Result<Report, CliError> {
    let v = match name {
        "classify" => classify_cmd(p, input)?,
        "eval" => eval_cmd(p, parse(input)?)?,
        "join" => join_cmd(p, parse(input)?)?,
        "hull" => return hull_cmd(p, parse(input)?, format),
        "retract" => retract_cmd(p, parse(input)?)?,
        "tube" => tube_cmd(p, parse(input)?)?,
        "exhaust" => exhaust_cmd(p, parse(input)?)?,
        "supinf" => supinf_cmd(p, parse(input)?)?,
        "push" => push_cmd(p, parse(input)?)?,
        "orbit" => orbit_cmd(p, parse(input)?)?,
        "reduce" => reduce_cmd(p, parse(input)?)?,
        "chordal" => chordal_cmd(p, parse(input)?)?,
        "green-eval" => green_eval_cmd(p, parse(input)?)?,
        "green-gaps" => green_gaps_cmd(p, parse(input)?)?,
        "probe-lift" => probe_lift_cmd(p, parse(input)?)?,
        "probe-equi" => probe_equi_cmd(p, parse(input)?)?,
        "harm-eval" => harm_eval_cmd(p, parse(input)?)?,
        "harm-approx" => harm_approx_cmd(p, parse(input)?)?,
        "alpha" => alpha_cmd(p, parse(input)?)?,
        "ev" => ev_cmd(p, parse(input)?)?,
        "limit-demo" => limit_demo_cmd(p, parse(input)?)?,
        other => return Err(CliError::Usage(format!("unknown subcommand {other}"))),
    };
    Ok(Report::Json(v))
}

fn classify_cmd(p: Prime, input: Value) -> Result<Value, CliError> {
    // Accept the point itself or `{"point": ...}`.
    let (v, path) = match input {
        Value::Object(mut o) if o.contains_key("point") && !o.contains_key("kind") => {
            (o.remove("point").unwrap(), "point")
        }
        v => (v, ""),
    };
    let pt: PointJson = parse(v).map_err(|e| match e {
        CliError::Schema { path: sub, msg } if !path.is_empty() => CliError::Schema {
            path: if sub == "." {
                path.into()
            } else {
                format!("{path}.{sub}")
            },
            msg,
        },
        e => e,
    })?;
    let x = pt.to_point(p, path)?;
    Ok(json!({"type": classify(&x).to_string()}))
}

fn newton_json(np: &NewtonPolygon) -> Value {
    json!({
        "zero_roots": np.zero_roots,
        "segments": np.segments.iter().map(|s| json!({"slope": rat_str(&s.slope), "multiplicity": s.multiplicity})).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalIn {
    scalar: Option<Exact>,
    poly: Option<PolyJson>,
    center: Option<Exact>,
    point: Option<PointJson>,
}

fn eval_cmd(p: Prime, inp: EvalIn) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    if let Some(s) = &inp.scalar {
        let x = s.scalar();
        out.insert("lognorm".into(), lognorm_str(&field::lognorm(p, &x)));
        out.insert(
            "valuation".into(),
            x.valuation(p).map_or(Value::Null, |v| json!(v)),
        );
    }
    if let Some(pj) = &inp.poly {
        let poly = pj.to_poly("poly")?;
        out.insert(
            "newton".into(),
            newton_polygon(p, &poly).map_or(Value::Null, |np| newton_json(&np)),
        );
        if let Some(c) = &inp.center {
            let shifted = field::taylor_shift(&poly, &c.scalar());
            out.insert(
                "taylor".into(),
                Value::Array(shifted.coeffs().iter().map(scalar_str).collect()),
            );
        }
        if let Some(xj) = &inp.point {
            let x = xj.to_point(p, "point")?;
            match seminorm_eval(p, &poly, &x) {
                Ok(v) => {
                    out.insert("seminorm".into(), lognorm_str(&v));
                }
                Err(Error::TypeFourUndetermined) => {
                    let (lo, hi) = seminorm_enclosure(p, &poly, &x)?;
                    let exact = if lo == hi {
                        lognorm_str(&lo)
                    } else {
                        Value::Null
                    };
                    out.insert("seminorm".into(), exact);
                    out.insert(
                        "enclosure".into(),
                        json!([lognorm_str(&lo), lognorm_str(&hi)]),
                    );
                }
                Err(e) => return Err(e.into()),
            }
        }
    } else if inp.center.is_some() || inp.point.is_some() {
        return Err(missing("poly"));
    }
    if out.is_empty() {
        return Err(CliError::Schema {
            path: ".".into(),
            msg: "expected `scalar` or `poly`".into(),
        });
    }
    Ok(Value::Object(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JoinIn {
    x: Option<PointJson>,
    y: Option<PointJson>,
    base: Option<PointJson>,
    d1: Option<DirJson>,
    d2: Option<DirJson>,
}

fn join_cmd(p: Prime, inp: JoinIn) -> Result<Value, CliError> {
    if let Some(bj) = &inp.base {
        let base = bj.to_point(p, "base")?;
        let d1 = TangentDirection::new(p, &base, inp.d1.ok_or_else(|| missing("d1"))?.0)?;
        let d2 = TangentDirection::new(p, &base, inp.d2.ok_or_else(|| missing("d2"))?.0)?;
        return Ok(json!({"same_direction": berkline::same_direction(p, &d1, &d2)?}));
    }
    let x = inp.x.ok_or_else(|| missing("x"))?.to_point(p, "x")?;
    let y = inp.y.ok_or_else(|| missing("y"))?.to_point(p, "y")?;
    Ok(json!({
        "join": point_json(&berkline::join(p, &x, &y)?),
        "x_leq_y": berkline::leq(p, &x, &y)?,
        "y_leq_x": berkline::leq(p, &y, &x)?,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsIn {
    points: Vec<PointJson>,
}

fn hull_cmd(p: Prime, inp: PointsIn, format: Format) -> Result<Report, CliError> {
    let t = hull(p, &points(p, &inp.points, "points")?)?;
    if format == Format::Dot {
        return Ok(Report::Text(t.to_dot(p)));
    }
    let vs = t.vertices();
    let index = |d: &berkline::Disk| vs.iter().position(|u| u == d).expect("tree vertex");
    let edges: Vec<Value> = vs
        .iter()
        .enumerate()
        .filter_map(|(i, v)| t.parent(p, v).map(|par| json!([i, index(par)])))
        .collect();
    let leaves: Vec<usize> = t.leaves(p).into_iter().map(index).collect();
    Ok(Report::Json(json!({
        "vertices": vs.iter().map(disk_json).collect::<Vec<_>>(),
        "edges": edges,
        "leaves": leaves,
    })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RetractIn {
    points: Vec<PointJson>,
    x: PointJson,
}

fn retract_cmd(p: Prime, inp: RetractIn) -> Result<Value, CliError> {
    let t = hull(p, &points(p, &inp.points, "points")?)?;
    let x = inp.x.to_point(p, "x")?;
    Ok(json!({"retraction": point_json(&retract(p, &t, &x)?)}))
}

fn tube_cmd(p: Prime, inp: PointsIn) -> Result<Value, CliError> {
    let t = hull(p, &points(p, &inp.points, "points")?)?;
    let u = tube_from_tree(p, &t)?;
    Ok(json!({"tube": tube_json(u.outer(), u.removed())}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExhaustIn {
    tube: TubeJson,
    m: Count,
}

fn exhaust_cmd(p: Prime, inp: ExhaustIn) -> Result<Value, CliError> {
    let u = inp.tube.to_tube(p, "tube")?;
    let m = u32::try_from(inp.m.0).map_err(|_| CliError::Schema {
        path: "m".into(),
        msg: "too large".into(),
    })?;
    let (w, x) = exhaust(p, &u, m)?;
    Ok(json!({"w": tube_json(w.outer(), w.removed()), "x": tube_json(x.outer(), x.removed())}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SupInfIn {
    poly: PolyJson,
    affinoid: Option<TubeJson>,
    disk: Option<DiskJson>,
}

fn supinf_cmd(p: Prime, inp: SupInfIn) -> Result<Value, CliError> {
    let poly = inp.poly.to_poly("poly")?;
    let mut out = serde_json::Map::new();
    out.insert("newton".into(), newton_json(&newton_polygon(p, &poly)?));
    if let Some(aj) = &inp.affinoid {
        let a = aj.to_affinoid(p, "affinoid")?;
        let s = tree::sup_norm(p, &poly, &a)?;
        out.insert(
            "sup".into(),
            json!({"value": lognorm_str(&s.value), "witness": point_json(&s.witness)}),
        );
        let i = tree::inf_norm(p, &poly, &a)?;
        out.insert(
            "inf".into(),
            json!({
                "value": lognorm_str(&i.value),
                "witness": i.witness.as_ref().map_or(Value::Null, point_json),
                "zeros": {"outer": i.zeros.outer, "removed": i.zeros.removed, "inside": i.zeros.inside()},
            }),
        );
    }
    if let Some(dj) = &inp.disk {
        let d = dj.to_disk(p, "disk")?;
        out.insert(
            "zeros_in_disk".into(),
            json!(count_zeros_in_disk(p, &poly, d.center(), d.radius())?),
        );
        out.insert(
            "zeros_in_open_disk".into(),
            json!(count_zeros_in_open_disk(p, &poly, d.center(), d.radius())?),
        );
    }
    Ok(Value::Object(out))
}

fn proj_map(p: Prime, m: &MapJson) -> Result<ProjMap, CliError> {
    Ok(normalize_lift(p, m.forms("map")?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PushIn {
    map: MapJson,
    point: PointJson,
}

fn push_cmd(p: Prime, inp: PushIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let x = inp.point.to_point(p, "point")?;
    Ok(json!({"image": point_json(&dynamics::pushforward(p, &f, &x)?)}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitIn {
    map: MapJson,
    point: PointJson,
    n: Count,
}

fn orbit_cmd(p: Prime, inp: OrbitIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let x = inp.point.to_point(p, "point")?;
    let orb = dynamics::orbit(p, &f, &x, inp.n.usize())?;
    Ok(json!({"orbit": orb.iter().map(point_json).collect::<Vec<_>>()}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapIn {
    map: MapJson,
}

fn reduce_cmd(p: Prime, inp: MapIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let mut out = serde_json::Map::new();
    out.insert(
        "forms".into(),
        Value::Array(f.forms().iter().map(form_json).collect()),
    );
    out.insert("degree".into(), json!(f.degree()));
    if f.dim() == 1 {
        let res = field::resultant(&f.forms()[0], &f.forms()[1])?;
        out.insert("resultant".into(), scalar_str(&res));
        let r = dynamics::reduce_map(p, &f)?;
        out.insert("resultant_log".into(), lognorm_str(&r.resultant_log));
        out.insert("reduction".into(), json!(r.residue.to_string()));
        out.insert("good_reduction".into(), json!(r.good_reduction));
        out.insert("degenerate".into(), json!(r.residue.degenerate));
        match dynamics::tangent_map_at_gauss(p, &f) {
            Ok(t) => {
                out.insert("tangent".into(), json!(t.to_string()));
                out.insert("gauss_fixed".into(), json!(true));
            }
            Err(Error::GaussNotFixed) => {
                out.insert("tangent".into(), Value::Null);
                out.insert("gauss_fixed".into(), json!(false));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Value::Object(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairIn {
    x: PointJson,
    y: PointJson,
}

fn chordal_cmd(p: Prime, inp: PairIn) -> Result<Value, CliError> {
    let x = inp.x.to_point(p, "x")?;
    let y = inp.y.to_point(p, "y")?;
    Ok(json!({"chordal": lognorm_str(&dynamics::chordal(p, &x, &y)?)}))
}

/// A lift vector; a single scalar `a` stands for `[a, 1]`.
#[derive(Deserialize)]
#[serde(untagged)]
enum VecJson {
    Many(Vec<Exact>),
    One(Exact),
}

impl VecJson {
    fn lift(&self) -> Vec<Scalar> {
        match self {
            VecJson::Many(xs) => xs.iter().map(Exact::scalar).collect(),
            VecJson::One(x) => vec![x.scalar(), Scalar::one()],
        }
    }
}

fn context(p: Prime, f: &ProjMap, cert: Option<&CertChoice>) -> Result<GreenContext, CliError> {
    let cert = match cert {
        None => None,
        Some(CertChoice::Named(n)) if n == "bezout" => Some(bezout_certificate(f)?),
        Some(CertChoice::Named(n)) => {
            return Err(CliError::Schema {
                path: "certificate".into(),
                msg: format!("unknown certificate {n:?}"),
            })
        }
        Some(CertChoice::Explicit(c)) => Some(c.to_cert(f.dim() + 1, f.degree(), "certificate")?),
    };
    Ok(make_context(p, f, cert)?)
}

fn check_len(z: &[Scalar], f: &ProjMap) -> Result<(), CliError> {
    if z.len() != f.dim() + 1 {
        return Err(CliError::Schema {
            path: "point".into(),
            msg: format!("expected {} coordinates", f.dim() + 1),
        });
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GreenEvalIn {
    map: MapJson,
    point: VecJson,
    eps: Exact,
    certificate: Option<CertChoice>,
}

fn green_eval_cmd(p: Prime, inp: GreenEvalIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let ctx = context(p, &f, inp.certificate.as_ref())?;
    let z = inp.point.lift();
    check_len(&z, &f)?;
    let g = green::green_eval(p, &ctx, &z, &inp.eps.0)?;
    Ok(json!({
        "value": rat_str(&g.value),
        "n_used": g.n_used,
        "C1": rat_str(ctx.c1()),
        "error_bound": rat_str(&g.error_bound),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GreenGapsIn {
    map: MapJson,
    point: VecJson,
    nmax: Count,
    certificate: Option<CertChoice>,
}

fn green_gaps_cmd(p: Prime, inp: GreenGapsIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let ctx = context(p, &f, inp.certificate.as_ref())?;
    let z = inp.point.lift();
    check_len(&z, &f)?;
    let gaps = green::green_cauchy_check(p, &ctx, &z, inp.nmax.usize())?;
    let rows: Vec<Value> = gaps
        .iter()
        .map(|g| json!({"n": g.n, "gap": rat_str(&g.gap), "bound": rat_str(&g.bound), "within_bound": g.within_bound()}))
        .collect();
    Ok(json!({"C1": rat_str(ctx.c1()), "gaps": rows}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeLiftIn {
    map: MapJson,
    affinoid: TubeJson,
    nmax: Count,
}

fn opt_rat(q: Option<field::Rat>) -> Value {
    q.as_ref().map_or(Value::Null, rat_str)
}

fn probe_lift_cmd(p: Prime, inp: ProbeLiftIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let ctx = context(p, &f, None)?;
    let a = inp.affinoid.to_affinoid(p, "affinoid")?;
    let rep = green::bounded_lift_probe(p, &ctx, &a, inp.nmax.usize())?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "sup": lognorm_str(&r.sup),
                "sup_witness": point_json(&r.sup_witness),
                "inf_lower": lognorm_str(&r.inf_lower),
                "inf_upper": lognorm_str(&r.inf_upper),
                "inf_witness": point_json(&r.inf_witness),
                "window_upper": opt_rat(r.window_upper()),
                "window_lower": opt_rat(r.window_lower()),
            })
        })
        .collect();
    Ok(json!({"C1": rat_str(&rep.c1), "rows": rows, "verdict": rep.verdict.to_string()}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeEquiIn {
    map: MapJson,
    x0: Exact,
    radii: Option<Vec<Int>>,
    nmax: Option<Count>,
    samples: Option<Count>,
    seed: Option<Count>,
}

fn probe_equi_cmd(p: Prime, inp: ProbeEquiIn) -> Result<Value, CliError> {
    let f = proj_map(p, &inp.map)?;
    let cfg = ProbeConfig {
        radii: inp
            .radii
            .map_or_else(|| vec![4, 8], |rs| rs.iter().map(|r| r.0).collect()),
        iterations: inp.nmax.map_or(8, Count::usize),
        samples: inp.samples.map_or(4, Count::usize),
        seed: inp.seed.map_or(0, |s| s.0),
    };
    let rep = equicontinuity_probe(p, &f, &inp.x0.scalar(), &cfg)?;
    Ok(json!({
        "expansion": rep.expansion.iter().map(lognorm_str).collect::<Vec<_>>(),
        "verdict": rep.verdict.to_string(),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    c: Exact,
    a: Exact,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumIn {
    c0: Exact,
    #[serde(default)]
    terms: Vec<TermIn>,
    tube: TubeJson,
    point: Option<PointJson>,
}

impl DatumIn {
    fn datum(&self, p: Prime) -> Result<HarmonicDatum, CliError> {
        let tube = self.tube.to_tube(p, "tube")?;
        let terms = self
            .terms
            .iter()
            .map(|t| (t.c.0.clone(), t.a.scalar()))
            .collect();
        Ok(HarmonicDatum::new(p, self.c0.0.clone(), terms, tube)?)
    }
}

fn harm_eval_cmd(p: Prime, inp: DatumIn) -> Result<Value, CliError> {
    let g = inp.datum(p)?;
    let x = inp
        .point
        .as_ref()
        .ok_or_else(|| missing("point"))?
        .to_point(p, "point")?;
    Ok(json!({"value": logvalue_str(&harm_eval(p, &g, &x)?)}))
}

fn harm_approx_cmd(p: Prime, inp: DatumIn) -> Result<Value, CliError> {
    let g = inp.datum(p)?;
    let h = harm_approx(p, &g)?;
    Ok(json!({
        "b": scalar_str(&h.b),
        "n": h.exponents.iter().map(|n| json!(n.to_string())).collect::<Vec<_>>(),
        "C": rat_str(&h.bound),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaIn {
    r: Option<Count>,
    delta: Option<Count>,
    components: Option<Vec<String>>,
    alpha: Option<CoeffPointJson>,
}

fn poly_map(r: usize, comps: &[String], path: &str) -> Result<PolyMap, CliError> {
    let cs = comps
        .iter()
        .enumerate()
        .map(|(i, c)| mpoly(c, r, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::new(r, cs)?)
}

fn delta_u32(c: Count, path: &str) -> Result<u32, CliError> {
    u32::try_from(c.0).map_err(|_| CliError::Schema {
        path: path.into(),
        msg: "too large".into(),
    })
}

fn alpha_cmd(p: Prime, inp: AlphaIn) -> Result<Value, CliError> {
    let alpha = match (&inp.alpha, &inp.components) {
        (Some(a), _) => a.to_point(p, "alpha")?,
        (None, Some(comps)) => {
            let r = inp.r.ok_or_else(|| missing("r"))?.usize();
            let delta = delta_u32(inp.delta.ok_or_else(|| missing("delta"))?, "delta")?;
            alpha_of(p, &poly_map(r, comps, "components")?, delta)?
        }
        (None, None) => return Err(missing("components")),
    };
    Ok(json!({"alpha": coeff_point_json(&alpha), "rigid": is_rigid(&alpha)}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvIn {
    alpha: CoeffPointJson,
    z: Vec<Exact>,
    g: Option<String>,
}

fn ev_cmd(p: Prime, inp: EvIn) -> Result<Value, CliError> {
    let alpha = inp.alpha.to_point(p, "alpha")?;
    let z: Vec<Scalar> = inp.z.iter().map(Exact::scalar).collect();
    let s = alpha.dims().s;
    let mut out = serde_json::Map::new();
    if let Some(g) = &inp.g {
        let g = mpoly(g, s, "g")?;
        out.insert("ev_norm".into(), lognorm_str(&ev_norm(p, &alpha, &z, &g)?));
    }
    if s == 1 {
        out.insert("ev_point".into(), point_json(&ev_point_s1(p, &alpha, &z)?));
    } else if inp.g.is_none() {
        return Err(missing("g"));
    }
    Ok(Value::Object(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PanelIn {
    g: String,
    z: Vec<Exact>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitIn {
    prefix: Option<Vec<Exact>>,
    certificate: Option<TailCertJson>,
    r: Option<Count>,
    delta: Option<Count>,
    family: Option<Vec<Vec<String>>>,
    #[serde(default)]
    certificates: BTreeMap<String, TailCertJson>,
    #[serde(default)]
    panel: Vec<PanelIn>,
}

fn verdict_json(v: &RowVerdict) -> Value {
    match v {
        RowVerdict::EventuallyEqual { from } => json!({"kind": "eventually-equal", "from": from}),
        RowVerdict::Approaching => json!({"kind": "approaching"}),
        RowVerdict::NotConverged => json!({"kind": "not-converged"}),
    }
}

fn limit_demo_cmd(p: Prime, inp: LimitIn) -> Result<Value, CliError> {
    if let Some(prefix) = &inp.prefix {
        let cert = inp
            .certificate
            .as_ref()
            .ok_or_else(|| missing("certificate"))?
            .to_cert("certificate")?;
        let seq: Vec<Scalar> = prefix.iter().map(Exact::scalar).collect();
        return Ok(
            json!({"limit": point_json(&morspace::limit_of_rigid_sequence(p, &seq, &cert)?)}),
        );
    }
    let family = inp.family.as_ref().ok_or_else(|| missing("family"))?;
    let r = inp.r.ok_or_else(|| missing("r"))?.usize();
    let delta = delta_u32(inp.delta.ok_or_else(|| missing("delta"))?, "delta")?;
    let members = family
        .iter()
        .enumerate()
        .map(|(i, comps)| {
            Ok(alpha_of(
                p,
                &poly_map(r, comps, &format!("family[{i}]"))?,
                delta,
            )?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let s = members.first().map_or(0, |a| a.dims().s);
    let mut certs = BTreeMap::new();
    for (k, c) in &inp.certificates {
        let path = format!("certificates.{k}");
        let idx = parse_coord_key(k, r).map_err(|msg| CliError::Schema {
            path: path.clone(),
            msg,
        })?;
        certs.insert(idx, c.to_cert(&path)?);
    }
    let panel = inp
        .panel
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Ok((
                mpoly(&row.g, s, &format!("panel[{i}].g"))?,
                row.z.iter().map(Exact::scalar).collect(),
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let (alpha, rows) = morspace::montel_limit_demo(p, &members, &certs, &panel)?;
    let rows: Vec<Value> = rows
        .iter()
        .zip(&inp.panel)
        .map(|(row, given)| {
            json!({
                "g": given.g,
                "z": row.z.iter().map(scalar_str).collect::<Vec<_>>(),
                "values": row.values.iter().map(lognorm_str).collect::<Vec<_>>(),
                "ev": lognorm_str(&row.ev),
                "verdict": verdict_json(&row.verdict),
            })
        })
        .collect();
    Ok(json!({"alpha": coeff_point_json(&alpha), "rows": rows}))
}
