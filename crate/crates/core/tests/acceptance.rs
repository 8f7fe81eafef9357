//! Acceptance suite: ten criteria, each with a time budget. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use berkdyn::berkline::{classify, join, leq, relate, seminorm_eval, BerkPoint, Disk};
use berkdyn::dynamics::{normalize_lift, pushforward, reduce_map, ProjMap};
use berkdyn::field::{
    count_zeros_in_disk, count_zeros_in_open_disk, rat, resultant, LogNorm, LogValue, MPoly, Poly,
    Prime, Radius, Rat, Scalar,
};
use berkdyn::green::{green_eval, green_iterates, make_context};
use berkdyn::harmonic::{harm_approx, harm_eval, HarmonicDatum};
use berkdyn::morspace::{
    alpha_of, ev_norm, montel_limit_demo, PolyMap, RowVerdict, TailCertificate,
};
use berkdyn::tree::{
    exhaust, hull, inf_norm, retract, sup_norm, tube_from_tree, BasicTube, StdAffinoid,
};
use common::*;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: berkdyn::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---------------------------------------------------------------------------

fn seminorm_multiplicativity() -> Check {
    let mut r = rng(101);
    let mut by_type = BTreeMap::new();
    for i in 0..500 {
        let p = prime([2, 3, 5][i % 3]);
        let (a, b) = (poly(&mut r, p, 4), poly(&mut r, p, 4));
        let x = point_123(&mut r, p);
        let lhs = ok(seminorm_eval(p, &(&a * &b), &x), "seminorm")?;
        let rhs =
            &ok(seminorm_eval(p, &a, &x), "seminorm")? + &ok(seminorm_eval(p, &b, &x), "seminorm")?;
        ensure!(lhs == rhs, "p={p} P={a} Q={b} x={x:?}: {lhs} != {rhs}");
        *by_type.entry(classify(&x).to_string()).or_insert(0) += 1;
    }
    Ok(format!("500 cases, points by type {by_type:?}"))
}

/// `log |H(A, B)|_x - k log |B|_x` for the homogenization `H` of `q`.
fn composed_seminorm(
    p: Prime,
    q: &Poly,
    a: &Poly,
    b: &Poly,
    x: &BerkPoint,
) -> Result<LogNorm, String> {
    let k = q.degree().unwrap_or(0);
    let mut h = Poly::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        h = &h + &(&a.pow(i) * &b.pow(k - i)).scale(c);
    }
    let top = ok(seminorm_eval(p, &h, x), "seminorm")?;
    let den = ok(seminorm_eval(p, b, x), "seminorm")?;
    Ok(match (top, den.finite()) {
        (LogNorm::Finite(t), Some(d)) => LogNorm::Finite(t - d.scale_int(k as i64)),
        (t, _) => t,
    })
}

fn pushforward_functoriality() -> Check {
    let mut r = rng(202);
    let (mut polys, mut rationals) = (0, 0);
    let mut done = 0;
    while done < 200 {
        let p = prime([2, 3, 5][done % 3]);
        let rational = done % 3 == 0;
        let (a, b) = if rational {
            (poly(&mut r, p, 3), poly(&mut r, p, 3))
        } else {
            let d = r.gen_range(2..=3);
            (poly_of_degree(&mut r, p, d), Poly::constant(Scalar::one()))
        };
        let Ok(f) = ProjMap::from_rational(p, &a, &b) else {
            continue;
        };
        let q = poly(&mut r, p, 3);
        let x = BerkPoint::Ball(disk(&mut r, p));
        let y = ok(pushforward(p, &f, &x), "pushforward")?;
        let lhs = ok(seminorm_eval(p, &q, &y), "seminorm")?;
        let rhs = if rational {
            composed_seminorm(p, &q, &a, &b, &x)?
        } else {
            ok(seminorm_eval(p, &q.compose(&a), &x), "seminorm")?
        };
        ensure!(
            lhs == rhs,
            "p={p} phi=({a})/({b}) Q={q} x={x:?} image={y:?}: {lhs} != {rhs}"
        );
        if rational {
            rationals += 1;
        } else {
            polys += 1;
        }
        done += 1;
    }
    Ok(format!(
        "200 cases ({polys} polynomial, {rationals} rational maps)"
    ))
}

fn lognorm_rat(p: Prime, x: &Scalar) -> Option<Rat> {
    x.lognorm(p).as_rat().cloned()
}

fn vector(r: &mut rand_chacha::ChaCha8Rng, p: Prime) -> Vec<Scalar> {
    loop {
        let v = vec![scalar(r, p), scalar(r, p)];
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn max_log(p: Prime, z: &[Scalar]) -> Rat {
    z.iter().filter_map(|x| lognorm_rat(p, x)).max().unwrap()
}

fn green_certification() -> Check {
    let p2 = prime(2);
    let two = Scalar::from_int(2);
    let sq2 = ok(
        normalize_lift(
            p2,
            vec![
                binary(&[1.into(), 0.into(), 0.into()]),
                binary(&[0.into(), 0.into(), two]),
            ],
        ),
        "lift",
    )?;
    let ctx = ok(make_context(p2, &sq2, None), "context")?;
    ensure!(*ctx.c1() == rat(2, 1), "C1 = {} for (X^2, 2Y^2)", ctx.c1());
    let mut r = rng(303);
    for _ in 0..50 {
        let z = vector(&mut r, p2);
        // closed form: G = max(log|x|, log|y| - 1)
        let g = [
            lognorm_rat(p2, &z[0]),
            lognorm_rat(p2, &z[1]).map(|l| l - rat(1, 1)),
        ]
        .into_iter()
        .flatten()
        .max()
        .unwrap();
        let gs = ok(green_iterates(p2, &ctx, &z, 11), "iterates")?;
        for n in 0..=10 {
            let bound = rat(2, 1) / Rat::from_integer(num_traits::pow(2.into(), n));
            ensure!(ctx.error_bound(n) == bound, "error bound at n={n}");
            ensure!(
                (&g - &gs[n]).abs() <= bound,
                "|G - G_{n}| at {z:?}: G={g}, G_n={}",
                gs[n]
            );
            ensure!(
                (&gs[n + 1] - &gs[n]).abs() <= bound,
                "gap at n={n}, z={z:?}"
            );
        }
    }
    let good = [
        ProjMap::polynomial(p2, &Poly::from_ints(&[0, 0, 1])),
        ProjMap::polynomial(p2, &Poly::from_ints(&[2, 0, 1])),
    ];
    for (i, f) in good.iter().enumerate() {
        let f = ok(f.clone(), "map")?;
        let ctx = ok(make_context(p2, &f, None), "context")?;
        ensure!(
            ctx.c1() == &rat(0, 1),
            "C1 = {} for good reduction map {i}",
            ctx.c1()
        );
        for _ in 0..50 {
            let z = vector(&mut r, p2);
            let g = ok(green_eval(p2, &ctx, &z, &rat(1, 1 << 20)), "green_eval")?;
            ensure!(
                g.value == max_log(p2, &z) && g.n_used == 0,
                "G at {z:?} = {}",
                g.value
            );
            let gs = ok(green_iterates(p2, &ctx, &z, 4), "iterates")?;
            ensure!(gs.iter().all(|v| *v == g.value), "iterates drift at {z:?}");
        }
    }
    // scaling: G_n(λz) = G_n(z) + log|λ| for every n, on a pool of maps
    let mut pool = vec![(p2, ctx.clone())];
    while pool.len() < 6 {
        let p = prime(*[2, 3].choose(&mut r).unwrap());
        let forms = vec![
            binary(&binary_coeffs(&mut r, p, 2)),
            binary(&binary_coeffs(&mut r, p, 2)),
        ];
        if let Ok(f) = normalize_lift(p, forms) {
            pool.push((p, ok(make_context(p, &f, None), "context")?));
        }
    }
    for i in 0..100 {
        let (p, ctx) = &pool[i % pool.len()];
        let z = vector(&mut r, *p);
        let lam = nonzero_scalar(&mut r, *p);
        let lz: Vec<Scalar> = z.iter().map(|x| x * &lam).collect();
        let a = ok(green_iterates(*p, ctx, &z, 8), "iterates")?;
        let b = ok(green_iterates(*p, ctx, &lz, 8), "iterates")?;
        let l = lognorm_rat(*p, &lam).unwrap();
        ensure!(
            a.iter().zip(&b).all(|(x, y)| y == &(x + &l)),
            "scaling fails at {z:?}, lambda={lam}"
        );
    }
    Ok("50 certified points, 100 good-reduction points, 100 scaling pairs".into())
}

fn newton_counts() -> Check {
    let mut r = rng(404);
    let mut hits = 0;
    for i in 0..100 {
        let p = prime([2, 3, 5][i % 3]);
        let (f, roots) = split_poly(&mut r, p, 6);
        let center = if r.gen_bool(0.5) {
            &roots.choose(&mut r).unwrap().clone() + &scalar(&mut r, p)
        } else {
            scalar(&mut r, p)
        };
        let rad = if r.gen_bool(0.7) {
            radius_ii(&mut r)
        } else {
            radius_iii(&mut r)
        };
        let dist = |z: &Scalar| (z - &center).lognorm(p);
        let closed = roots.iter().filter(|z| dist(z) <= *rad.log()).count();
        let open = roots.iter().filter(|z| dist(z) < *rad.log()).count();
        let got = ok(count_zeros_in_disk(p, &f, &center, &rad), "count")?;
        let got_open = ok(count_zeros_in_open_disk(p, &f, &center, &rad), "count")?;
        ensure!(
            got == closed,
            "closed D({center}, {rad}) for roots {roots:?}: {got} != {closed}"
        );
        ensure!(
            got_open == open,
            "open D({center}, {rad}) for roots {roots:?}: {got_open} != {open}"
        );
        hits += usize::from(closed > 0);
    }
    Ok(format!(
        "100 split polynomials, {hits} disks containing roots"
    ))
}

fn unit_poly(r: &mut rand_chacha::ChaCha8Rng, units: &[i64]) -> (MPoly, Vec<i64>) {
    let deg = r.gen_range(1..=3);
    let cs: Vec<i64> = (0..=deg).map(|_| *units.choose(r).unwrap()).collect();
    let mut g = MPoly::zero(1);
    for (k, &c) in cs.iter().enumerate() {
        g = g.with_term(vec![k as u32], Scalar::from_int(c));
    }
    (g, cs)
}

fn linear_family(coeffs: &[Scalar]) -> Vec<PolyMap> {
    coeffs
        .iter()
        .map(|c| PolyMap::new(1, vec![MPoly::var(1, 0).scale(c)]).unwrap())
        .collect()
}

fn montel_demo() -> Check {
    // equidistant: f_n(z) = u_n z with pairwise distinct residues mod 5
    let p5 = prime(5);
    let units: Vec<Scalar> = (1..=4).map(Scalar::from_int).collect();
    let family = linear_family(&units)
        .iter()
        .map(|f| alpha_of(p5, f, 1))
        .collect::<berkdyn::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let mut certs = BTreeMap::new();
    certs.insert(
        (0, vec![1]),
        TailCertificate::Equidistant(Radius::exp_int(0)),
    );
    let mut r = rng(505);
    let mut panel = Vec::new();
    let mut raw = Vec::new();
    for _ in 0..20 {
        let (g, cs) = unit_poly(&mut r, &[1, 2, 3, 4, 6, 7]);
        let z = Scalar::from_int(5 * r.gen_range(-10..=10));
        panel.push((g, vec![z.clone()]));
        raw.push((cs, z));
    }
    let (alpha, rows) = ok(montel_limit_demo(p5, &family, &certs, &panel), "demo")?;
    ensure!(
        alpha.get(0, &[1]) == Some(&BerkPoint::gauss()),
        "linear coordinate is {:?}",
        alpha.get(0, &[1])
    );
    for (row, (cs, z)) in rows.iter().zip(&raw) {
        let ev = ok(
            ev_norm(p5, &alpha, std::slice::from_ref(z), &row.g),
            "ev_norm",
        )?;
        ensure!(ev == row.ev, "ev mismatch");
        for u in &units {
            let w = u * z;
            let direct = Poly::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
                .eval(&w)
                .lognorm(p5);
            ensure!(direct == ev, "g={cs:?} z={z} u={u}: {direct} != {ev}");
        }
        ensure!(
            row.verdict == RowVerdict::EventuallyEqual { from: 0 },
            "verdict {:?}",
            row.verdict
        );
    }
    // Cauchy: coefficients 2^(n+1) - 1 tend to -1 in Q_2
    let p2 = prime(2);
    let coeffs: Vec<Scalar> = (1..=16)
        .map(|n| Scalar::from_int((1i64 << (n + 1)) - 1))
        .collect();
    let family = linear_family(&coeffs)
        .iter()
        .map(|f| alpha_of(p2, f, 1))
        .collect::<berkdyn::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let rates: Vec<Rat> = (0..16).map(|i| rat(-(i + 2), 1)).collect();
    let mut certs = BTreeMap::new();
    certs.insert(
        (0, vec![1]),
        TailCertificate::Cauchy {
            rates,
            limit: Some(Scalar::from_int(-1)),
        },
    );
    let mut panel = Vec::new();
    while panel.len() < 20 {
        let (g, cs) = unit_poly(&mut r, &[1, -1, 3, 5, -7]);
        let z = Scalar::from_int(r.gen_range(-6..=6));
        let at_limit = Poly::new(cs.iter().map(|&c| Scalar::from_int(c)).collect()).eval(&-&z);
        // keep rows whose limit value is reached inside the prefix, plus zeros
        match at_limit.lognorm(p2).as_rat() {
            Some(l) if *l < rat(-6, 1) => continue,
            _ => panel.push((g, vec![z])),
        }
    }
    let (alpha, rows) = ok(montel_limit_demo(p2, &family, &certs, &panel), "demo")?;
    ensure!(
        alpha.get(0, &[1]) == Some(&BerkPoint::rigid(Scalar::from_int(-1))),
        "limit coordinate {:?}",
        alpha.get(0, &[1])
    );
    let mut approaching = 0;
    for row in &rows {
        match row.verdict {
            RowVerdict::EventuallyEqual { from } => ensure!(from < coeffs.len(), "no agreement"),
            RowVerdict::Approaching if row.ev.is_neg_inf() => approaching += 1,
            ref v => return Err(format!("row {:?} at {:?}: {v:?}", row.values, row.z)),
        }
    }
    Ok(format!(
        "equidistant panel 20/20 exact; Cauchy panel 20 rows ({approaching} approach a zero)"
    ))
}

fn harmonic_annulus() -> Check {
    let p = prime(2);
    let tube = ok(
        BasicTube::new(
            p,
            Some(Disk::new(p, 0.into(), Radius::exp_int(0))),
            vec![Disk::new(p, 0.into(), Radius::exp_int(-2))],
        ),
        "tube",
    )?;
    let g = ok(
        HarmonicDatum::new(
            p,
            rat(0, 1),
            vec![(rat(1, 2), Scalar::zero())],
            tube.clone(),
        ),
        "datum",
    )?;
    let h = ok(harm_approx(p, &g), "approx")?;
    ensure!(h.bound == rat(1, 1), "C = {}", h.bound);
    let bound = LogValue::from_rat(h.bound.clone());
    let mut r = rng(606);
    let mut by_type: BTreeMap<String, usize> = BTreeMap::new();
    let mut sampled = 0;
    while sampled < 1000 {
        let kind = sampled % 4;
        let center = &Scalar::from_int(2) * &integral(&mut r, p);
        let x = match kind {
            0 => {
                let odd = Scalar::from_frac(
                    2 * r.gen_range(-50i64..=50) + 1,
                    2 * r.gen_range(0i64..=5) + 1,
                );
                BerkPoint::rigid(&Scalar::from_int(2) * &odd)
            }
            1 => BerkPoint::ball(p, center, Radius::exp(exponent(&mut r, -3, 0))),
            2 => BerkPoint::ball(
                p,
                center,
                Radius::new(exponent(&mut r, -3, 0), *[-1i64, 1].choose(&mut r).unwrap()),
            ),
            _ => {
                let mut c =
                    &Scalar::from_int(2) * &Scalar::from_int(2 * r.gen_range(-20i64..=20) + 1);
                let mut prefix = vec![(c.clone(), Radius::exp_int(-2))];
                for k in 3..r.gen_range(4..=7) {
                    c = &c + &Scalar::prime_power(p, k - 1) * &Scalar::from_int(r.gen_range(0..=1));
                    prefix.push((c.clone(), Radius::exp_int(-k)));
                }
                ok(BerkPoint::type_iv(p, prefix), "type IV")?
            }
        };
        if !tube.contains(p, &x) {
            continue;
        }
        let v = ok(harm_eval(p, &g, &x), "harm_eval")?;
        let lh = ok(h.log_h(p, &g, &x), "log_h")?;
        // independent oracle: g = (1/2) log|T|_x
        let t = match &x {
            BerkPoint::TypeI(a) => a.lognorm(p),
            BerkPoint::Ball(d) => d.center().lognorm(p).max(d.radius().log().clone()),
            BerkPoint::TypeIV(ds) => {
                let d = ds.last().unwrap();
                d.center().lognorm(p).max(d.radius().log().clone())
            }
            BerkPoint::Infinity => unreachable!(),
        };
        ensure!(
            LogNorm::Finite(v.clone())
                == t.finite()
                    .map(|t| LogNorm::Finite(t.scale(&rat(1, 2))))
                    .unwrap(),
            "value at {x:?}"
        );
        ensure!(
            (v.clone() - lh).abs() <= bound,
            "bound fails at {x:?}: g = {v}"
        );
        *by_type.entry(classify(&x).to_string()).or_insert(0) += 1;
        sampled += 1;
    }
    Ok(format!("C = 1, 1000 points by type {by_type:?}"))
}

fn random_tree(r: &mut rand_chacha::ChaCha8Rng, p: Prime) -> berkdyn::tree::FiniteTree {
    loop {
        let k = r.gen_range(2..=5);
        let pts: Vec<BerkPoint> = (0..k).map(|_| type_ii_int(r, p)).collect();
        if let Ok(t) = hull(p, &pts) {
            return t;
        }
    }
}

fn within_some(xs: &[Disk], ys: &[Disk], rel: impl Fn(&Disk, &Disk) -> bool) -> bool {
    xs.iter().all(|x| ys.iter().any(|y| rel(x, y)))
}

fn tree_suite() -> Check {
    let mut r = rng(707);
    for i in 0..200 {
        let p = prime([2, 3][i % 2]);
        let t = random_tree(&mut r, p);
        let top = BerkPoint::Ball(t.top().clone());
        let x = match r.gen_range(0..6) {
            0 => BerkPoint::Infinity,
            1 => BerkPoint::Ball(t.vertices().choose(&mut r).unwrap().clone()),
            2 => type_ii_int(&mut r, p),
            _ => point_123(&mut r, p),
        };
        let rx = ok(retract(p, &t, &x), "retract")?;
        ensure!(
            ok(retract(p, &t, &rx), "retract")? == rx,
            "not idempotent at {x:?}"
        );
        for v in t.vertices() {
            let vp = BerkPoint::Ball(v.clone());
            ensure!(
                ok(retract(p, &t, &vp), "retract")? == vp,
                "vertex {v:?} moved"
            );
        }
        let on_tree = t.vertices().iter().any(|v| {
            leq(p, &BerkPoint::Ball(v.clone()), &rx).unwrap_or(false)
                && leq(p, &rx, &top).unwrap_or(false)
        });
        ensure!(on_tree, "retraction {rx:?} is off the tree");
        if ok(leq(p, &x, &top), "leq")? {
            ensure!(
                ok(leq(p, &x, &rx), "leq")?,
                "x={x:?} is not below r(x)={rx:?}"
            );
            for v in t.vertices() {
                let j = ok(join(p, &x, &BerkPoint::Ball(v.clone())), "join")?;
                ensure!(
                    ok(leq(p, &rx, &j), "leq")?,
                    "r(x)={rx:?} above x v {v:?} = {j:?}"
                );
            }
        } else {
            ensure!(rx == top, "point outside the top vertex must retract to it");
        }
    }
    let (mut tubes, mut rejected) = (0, 0);
    while tubes < 20 {
        let p = prime([2, 3][tubes % 2]);
        let u = if r.gen_bool(0.5) {
            match tube_from_tree(p, &random_tree(&mut r, p)) {
                Ok(u) => u,
                Err(_) => continue,
            }
        } else {
            let e0 = rat(r.gen_range(0..=16), 8);
            let outer = r
                .gen_bool(0.8)
                .then(|| Disk::new(p, 0.into(), Radius::exp(e0.clone())));
            let removed = (0..r.gen_range(1..=3))
                .map(|_| {
                    Disk::new(
                        p,
                        integral(&mut r, p),
                        Radius::exp(&e0 - rat(r.gen_range(8..=32), 8)),
                    )
                })
                .collect();
            match BasicTube::new(p, outer, removed) {
                Ok(u) => u,
                Err(_) => continue,
            }
        };
        // the fixed schedule must either work for every m or be rejected at m = 1
        match exhaust(p, &u, 1) {
            Err(berkdyn::Error::DegenerateSchedule(1, _)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(format!("exhaust: {e}")),
            Ok(_) => {}
        }
        for m in 1..=10u32 {
            let (w, x) = ok(exhaust(p, &u, m), "exhaust")?;
            let (w1, _) = ok(exhaust(p, &u, m + 1), "exhaust")?;
            match (w.outer(), x.outer(), w1.outer(), u.outer()) {
                (Some(wo), Some(xo), Some(w1o), Some(uo)) => {
                    ensure!(
                        relate::closed_in_closed(p, wo, xo),
                        "closure of W_{m} leaves X_{m}"
                    );
                    ensure!(
                        relate::closed_in_open(p, xo, w1o),
                        "X_{m} leaves W_{}",
                        m + 1
                    );
                    ensure!(relate::open_in_open(p, w1o, uo), "W_{} leaves U", m + 1);
                }
                (None, None, None, None) => {}
                _ => return Err("outer disks appear inconsistently".into()),
            }
            ensure!(
                within_some(x.removed(), w.removed(), |a, b| relate::open_in_closed(
                    p, a, b
                )),
                "removed disks, m={m}"
            );
            ensure!(
                within_some(w1.removed(), x.removed(), |a, b| relate::closed_in_open(
                    p, a, b
                )),
                "removed disks, m={m}"
            );
            ensure!(
                within_some(u.removed(), w1.removed(), |a, b| relate::closed_in_closed(
                    p, a, b
                )),
                "removed disks, m={m}"
            );
        }
        tubes += 1;
    }
    Ok(format!("200 retraction cases, 20 exhaustion chains to m = 10 ({rejected} colliding tubes rejected)"))
}

fn random_affinoid(r: &mut rand_chacha::ChaCha8Rng, p: Prime) -> StdAffinoid {
    loop {
        let e0 = rat(r.gen_range(-8..=16), 8);
        let outer = Disk::new(p, 0.into(), Radius::exp(e0.clone()));
        let k = r.gen_range(0..=3);
        let removed: Vec<Disk> = (0..k)
            .map(|_| {
                let b = &integral(r, p) * &Scalar::prime_power(p, -1);
                let s = &e0 - rat(r.gen_range(1..=24), 8);
                Disk::new(p, b, Radius::exp(s))
            })
            .collect();
        if let Ok(a) = StdAffinoid::new(p, Some(outer), removed) {
            return a;
        }
    }
}

fn skeleton_grid(p: Prime, a: &StdAffinoid) -> Vec<BerkPoint> {
    let outer = a.outer().unwrap();
    let top = outer.radius().exponent();
    let mut pts = vec![BerkPoint::Ball(outer.clone())];
    for d in a.removed() {
        let mut e = d.radius().exponent();
        while e <= top {
            pts.push(BerkPoint::ball(
                p,
                d.center().clone(),
                Radius::exp(e.clone()),
            ));
            e += rat(1, 8);
        }
    }
    pts
}

fn affinoid_norms() -> Check {
    let mut r = rng(808);
    let mut with_zeros = 0;
    for i in 0..100 {
        let p = prime([2, 3][i % 2]);
        let a = random_affinoid(&mut r, p);
        let (mut f, mut roots) = split_poly(&mut r, p, 5);
        if r.gen_bool(0.5) {
            // plant a root inside a removed disk or near the outer boundary
            let c = a
                .removed()
                .first()
                .map_or(Scalar::zero(), |d| d.center().clone());
            f = &f * &Poly::linear(&c);
            roots.push(c);
        }
        let grid = skeleton_grid(p, &a);
        let vals = grid
            .iter()
            .map(|x| {
                ensure!(a.contains(p, x), "grid point {x:?} outside the affinoid");
                ok(seminorm_eval(p, &f, x), "seminorm")
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s = ok(sup_norm(p, &f, &a), "sup")?;
        ensure!(a.contains(p, &s.witness), "sup witness outside");
        ensure!(
            ok(seminorm_eval(p, &f, &s.witness), "seminorm")? == s.value,
            "sup witness value"
        );
        ensure!(
            vals.iter().max() == Some(&s.value),
            "sup {} vs grid max {:?}",
            s.value,
            vals.iter().max()
        );
        let inf = ok(inf_norm(p, &f, &a), "inf")?;
        let inside = roots
            .iter()
            .filter(|z| a.contains(p, &BerkPoint::rigid((*z).clone())))
            .count();
        ensure!(
            inf.zeros.inside() == inside,
            "zero count {} vs {inside}",
            inf.zeros.inside()
        );
        if inside > 0 {
            with_zeros += 1;
            ensure!(inf.value.is_neg_inf(), "inf should vanish");
        } else {
            let w = inf.witness.clone().ok_or("missing inf witness")?;
            ensure!(a.contains(p, &w), "inf witness outside");
            ensure!(
                ok(seminorm_eval(p, &f, &w), "seminorm")? == inf.value,
                "inf witness value"
            );
            ensure!(
                vals.iter().min() == Some(&inf.value),
                "inf {} vs grid min {:?}",
                inf.value,
                vals.iter().min()
            );
        }
        for _ in 0..10 {
            let x = point_123(&mut r, p);
            if a.contains(p, &x) {
                let v = ok(seminorm_eval(p, &f, &x), "seminorm")?;
                ensure!(inf.value <= v && v <= s.value, "bound fails at {x:?}");
            }
        }
    }
    Ok(format!("100 affinoids, {with_zeros} with zeros inside"))
}

fn reduction_dichotomy() -> Check {
    let mut r = rng(909);
    let (mut good, mut bad, mut done) = (0, 0, 0);
    while done < 100 {
        let p = prime([2, 3, 5][done % 3]);
        let d = 2 + done % 2;
        let forms = vec![
            binary(&binary_coeffs(&mut r, p, d)),
            binary(&binary_coeffs(&mut r, p, d)),
        ];
        let Ok(f) = normalize_lift(p, forms) else {
            continue;
        };
        let red = ok(reduce_map(p, &f), "reduce")?;
        let res = ok(resultant(&f.forms()[0], &f.forms()[1]), "resultant")?;
        let unit = res.lognorm(p) == LogNorm::zero();
        ensure!(
            red.good_reduction == unit,
            "verdict disagrees with the resultant for {f}"
        );
        ensure!(
            red.good_reduction != red.residue.degenerate,
            "verdict disagrees with the reduced Sylvester matrix for {f}"
        );
        if red.good_reduction {
            good += 1;
            let g = ok(pushforward(p, &f, &BerkPoint::gauss()), "pushforward")?;
            ensure!(
                g == BerkPoint::gauss(),
                "{f} moves the Gauss point to {g:?}"
            );
        } else {
            bad += 1;
        }
        done += 1;
    }
    ensure!(
        good > 0 && bad > 0,
        "sample lacks one side: {good} good, {bad} bad"
    );
    Ok(format!("100 maps: {good} good, {bad} bad reduction"))
}

/// No float type anywhere in the library sources.
fn float_audit() -> Result<usize, String> {
    fn walk(dir: &std::path::Path, files: &mut Vec<std::path::PathBuf>) {
        for e in std::fs::read_dir(dir).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                walk(&path, files);
            } else if path.extension().is_some_and(|x| x == "rs") {
                files.push(path);
            }
        }
    }
    let mut files = Vec::new();
    walk(
        &std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("src"),
        &mut files,
    );
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        for (i, line) in text.lines().enumerate() {
            let words = line.split(|c: char| !c.is_ascii_alphanumeric() && c != '_');
            if words.clone().any(|w| w == "f32" || w == "f64") {
                return Err(format!("{}:{}: float type", f.display(), i + 1));
            }
        }
    }
    Ok(files.len())
}

// ---------------------------------------------------------------------------

struct Outcome {
    passed: bool,
    line: String,
}

fn run(id: u32, name: &str, limit_secs: u64, check: fn() -> Check) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let passed = result.is_ok() && in_time;
    let detail = match &result {
        Ok(s) if in_time => s.clone(),
        Ok(_) => "over the time budget".to_string(),
        Err(e) => e.clone(),
    };
    let line = format!(
        "criterion {id:>2} {}  {name} ({} ms, budget {} s): {detail}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        limit_secs
    );
    Outcome { passed, line }
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 9] = [
        ("seminorm multiplicativity", 5, seminorm_multiplicativity),
        ("pushforward functoriality", 5, pushforward_functoriality),
        ("Green function certification", 10, green_certification),
        ("Newton polygon zero counts", 5, newton_counts),
        ("Montel demo at bounded degree", 5, montel_demo),
        ("harmonic approximation on the annulus", 5, harmonic_annulus),
        ("tree retraction and exhaustion", 5, tree_suite),
        ("affinoid sup and inf norms", 10, affinoid_norms),
        ("good reduction dichotomy", 5, reduction_dichotomy),
    ];
    let mut outcomes: Vec<Outcome> = criteria
        .iter()
        .enumerate()
        .map(|(i, (name, limit, f))| {
            let o = run(i as u32 + 1, name, *limit, *f);
            println!("{}", o.line);
            o
        })
        .collect();
    let total = start.elapsed();
    let audit = float_audit();
    let passed = total <= Duration::from_secs(60) && audit.is_ok();
    let line = format!(
        "criterion 10 {}  whole suite under 60 s with no floats ({} ms total): {}",
        if passed { "PASS" } else { "FAIL" },
        total.as_millis(),
        match &audit {
            Ok(n) => format!("{n} source files audited"),
            Err(e) => e.clone(),
        }
    );
    println!("{line}");
    outcomes.push(Outcome { passed, line });
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
