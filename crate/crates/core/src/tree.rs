//! Finite subtrees, basic tubes, standard affinoids and norms over them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::berkline::{classify, join, relate, BerkPoint, Disk, PointType};
use crate::error::{Error, Result};
use crate::field::{count_zeros_in_disk, count_zeros_in_open_disk, rat, LogNorm, Poly, Prime, Rat};

/// A join-closed finite set of type II points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    /// Sorted by decreasing radius, then center; the first entry is the top.
    vertices: Vec<Disk>,
}

impl FiniteTree {
    pub fn vertices(&self) -> &[Disk] {
        &self.vertices
    }

    pub fn top(&self) -> &Disk {
        &self.vertices[0]
    }

    pub fn contains(&self, d: &Disk) -> bool {
        self.vertices.contains(d)
    }

    /// Maximal vertices strictly below `v`.
    pub fn children(&self, p: Prime, v: &Disk) -> Vec<&Disk> {
        let below: Vec<&Disk> = self
            .vertices
            .iter()
            .filter(|u| *u != v && u.leq(p, v))
            .collect();
        below
            .iter()
            .filter(|u| !below.iter().any(|w| w != *u && u.leq(p, w)))
            .copied()
            .collect()
    }

    /// The smallest vertex strictly above `v`.
    pub fn parent(&self, p: Prime, v: &Disk) -> Option<&Disk> {
        self.vertices
            .iter()
            .filter(|u| *u != v && v.leq(p, u))
            .min_by(|a, b| a.radius().cmp(b.radius()))
    }

    pub fn leaves(&self, p: Prime) -> Vec<&Disk> {
        self.vertices
            .iter()
            .filter(|v| self.children(p, v).is_empty())
            .collect()
    }

    /// Graphviz rendering; edges point from a vertex to its parent.
    pub fn to_dot(&self, p: Prime) -> String {
        let mut out = String::from("digraph tree {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{},{}\"];", v.center(), v.radius());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(par) = self.parent(p, v) {
                let j = self.vertices.iter().position(|u| u == par).unwrap();
                let _ = writeln!(out, "  v{i} -> v{j};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn sort_vertices(vs: &mut [Disk]) {
    vs.sort_by(|a, b| {
        b.radius()
            .cmp(a.radius())
            .then_with(|| a.center().cmp(b.center()))
    });
}

/// Convex hull of finitely many type II points.
pub fn hull(p: Prime, points: &[BerkPoint]) -> Result<FiniteTree> {
    if points.is_empty() {
        return Err(Error::Empty("hull input"));
    }
    let mut inputs = Vec::with_capacity(points.len());
    for x in points {
        match (classify(x), x) {
            (PointType::II, BerkPoint::Ball(d)) => inputs.push(d.clone()),
            _ => return Err(Error::NotTypeTwo(format!("{x:?}"))),
        }
    }
    let mut set: BTreeSet<(Rat, Disk)> = BTreeSet::new();
    let key = |d: &Disk| (d.radius().exponent(), d.clone());
    for (i, a) in inputs.iter().enumerate() {
        set.insert(key(a));
        for b in &inputs[i + 1..] {
            set.insert(key(&a.join(p, b)));
        }
    }
    let mut vertices: Vec<Disk> = set.into_iter().map(|(_, d)| d).collect();
    sort_vertices(&mut vertices);
    Ok(FiniteTree { vertices })
}

/// The retraction onto the tree: the lowest point of `x ∨ v` over vertices,
/// clamped to the top vertex when `x` lies outside the tree's disk.
pub fn retract(p: Prime, tree: &FiniteTree, x: &BerkPoint) -> Result<BerkPoint> {
    let top = tree.top();
    let mut best: Option<Disk> = None;
    for v in tree.vertices() {
        let j = join(p, x, &BerkPoint::Ball(v.clone()))?;
        let Some(jd) = j.as_disk() else {
            return Ok(BerkPoint::Ball(top.clone()));
        };
        if best.as_ref().is_none_or(|b| jd.radius() < b.radius()) {
            best = Some(jd);
        }
    }
    let best = best.expect("nonempty tree");
    if best.leq(p, top) {
        Ok(BerkPoint::Ball(best))
    } else {
        Ok(BerkPoint::Ball(top.clone()))
    }
}

fn check_strict(d: &Disk, what: &str) -> Result<()> {
    if d.radius().is_zero() || !d.radius().in_value_group() {
        return Err(Error::InvalidDomain(format!(
            "{what} {d:?} must have a radius in p^Q"
        )));
    }
    Ok(())
}

/// An open disk (or the whole line when `outer` is `None`) with finitely
/// many disjoint closed disks removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicTube {
    outer: Option<Disk>,
    removed: Vec<Disk>,
}

impl BasicTube {
    pub fn new(p: Prime, outer: Option<Disk>, mut removed: Vec<Disk>) -> Result<Self> {
        if let Some(o) = &outer {
            check_strict(o, "outer disk")?;
        }
        for r in &removed {
            check_strict(r, "removed disk")?;
            if let Some(o) = &outer {
                if !relate::closed_in_open(p, r, o) {
                    return Err(Error::InvalidDomain(format!(
                        "removed {r:?} is not inside {o:?}"
                    )));
                }
            }
        }
        for (i, a) in removed.iter().enumerate() {
            for b in &removed[i + 1..] {
                if !relate::closed_disjoint_closed(p, a, b) {
                    return Err(Error::InvalidDomain(format!(
                        "removed disks {a:?} and {b:?} meet"
                    )));
                }
            }
        }
        removed.sort();
        Ok(BasicTube { outer, removed })
    }

    pub fn outer(&self) -> Option<&Disk> {
        self.outer.as_ref()
    }

    pub fn removed(&self) -> &[Disk] {
        &self.removed
    }

    pub fn is_whole_line(&self) -> bool {
        self.outer.is_none() && self.removed.is_empty()
    }

    /// Membership; infinity lies only in the unbounded variant. A type IV
    /// point counts as inside when its last prefix ball does, which is the
    /// only case a finite prefix can certify.
    pub fn contains(&self, p: Prime, x: &BerkPoint) -> bool {
        if let BerkPoint::TypeIV(ds) = x {
            let last = ds.last().expect("nonempty prefix");
            return self
                .outer
                .as_ref()
                .is_none_or(|o| relate::closed_in_open(p, last, o))
                && self
                    .removed
                    .iter()
                    .all(|r| relate::closed_disjoint_closed(p, last, r));
        }
        let Some(d) = x.as_disk() else {
            return matches!(x, BerkPoint::Infinity) && self.outer.is_none();
        };
        let inside = self
            .outer
            .as_ref()
            .is_none_or(|o| relate::point_in_open(p, &d, o));
        inside
            && !self
                .removed
                .iter()
                .any(|r| relate::point_in_closed(p, &d, r))
    }
}

/// A closed disk (or the whole line when `outer` is `None`) with finitely
/// many disjoint open disks removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdAffinoid {
    outer: Option<Disk>,
    removed: Vec<Disk>,
}

impl StdAffinoid {
    pub fn new(p: Prime, outer: Option<Disk>, mut removed: Vec<Disk>) -> Result<Self> {
        if outer.is_none() && removed.is_empty() {
            return Err(Error::InvalidDomain(
                "the whole line is not an affinoid".into(),
            ));
        }
        if let Some(o) = &outer {
            check_strict(o, "outer disk")?;
        }
        for r in &removed {
            check_strict(r, "removed disk")?;
            if let Some(o) = &outer {
                if !relate::open_in_closed(p, r, o) || r == o {
                    return Err(Error::InvalidDomain(format!(
                        "removed {r:?} is not inside {o:?}"
                    )));
                }
            }
        }
        for (i, a) in removed.iter().enumerate() {
            for b in &removed[i + 1..] {
                if !relate::open_disjoint_open(p, a, b) {
                    return Err(Error::InvalidDomain(format!(
                        "removed disks {a:?} and {b:?} meet"
                    )));
                }
            }
        }
        removed.sort();
        Ok(StdAffinoid { outer, removed })
    }

    pub fn outer(&self) -> Option<&Disk> {
        self.outer.as_ref()
    }

    pub fn removed(&self) -> &[Disk] {
        &self.removed
    }

    /// Membership, with the same convention for type IV points as
    /// [`BasicTube::contains`].
    pub fn contains(&self, p: Prime, x: &BerkPoint) -> bool {
        if let BerkPoint::TypeIV(ds) = x {
            let last = ds.last().expect("nonempty prefix");
            return self
                .outer
                .as_ref()
                .is_none_or(|o| relate::closed_in_closed(p, last, o))
                && self
                    .removed
                    .iter()
                    .all(|r| relate::open_disjoint_closed(p, r, last));
        }
        let Some(d) = x.as_disk() else {
            return matches!(x, BerkPoint::Infinity) && self.outer.is_none();
        };
        let inside = self
            .outer
            .as_ref()
            .is_none_or(|o| relate::point_in_closed(p, &d, o));
        inside && !self.removed.iter().any(|r| relate::point_in_open(p, &d, r))
    }

    /// Shilov boundary: the outer Gauss-type point and one per removed disk.
    pub fn shilov_boundary(&self) -> Vec<BerkPoint> {
        self.outer
            .iter()
            .chain(self.removed.iter())
            .map(|d| BerkPoint::Ball(d.clone()))
            .collect()
    }
}

/// The tube `r_Γ^{-1}(Γ minus its endpoints)`.
pub fn tube_from_tree(p: Prime, tree: &FiniteTree) -> Result<BasicTube> {
    if tree.vertices().len() < 2 {
        return Err(Error::SingleVertexTree);
    }
    let top = tree.top();
    let top_children = tree.children(p, top);
    let outer = if top_children.len() == 1 {
        Some(Disk::new(
            p,
            top_children[0].center().clone(),
            top.radius().clone(),
        ))
    } else {
        None
    };
    let removed = tree.leaves(p).into_iter().cloned().collect();
    BasicTube::new(p, outer, removed)
}

/// The `m`-th stage of the exhaustion of `U` by affinoids.
pub fn exhaust(p: Prime, tube: &BasicTube, m: u32) -> Result<(BasicTube, StdAffinoid)> {
    if m == 0 {
        return Err(Error::DegenerateSchedule(0, "m must be positive".into()));
    }
    if tube.is_whole_line() {
        return Err(Error::InvalidDomain("cannot exhaust the whole line".into()));
    }
    let (w, x) = stage(p, tube, m)?;
    let (w_next, _) = stage(p, tube, m + 1)?;
    // closure of W_m has the same radii as X_m; check X_m ⊂ W_{m+1} ⊂ U
    check_affinoid_in_tube(p, &x, &w_next, m)?;
    check_tube_in_tube(p, &w_next, tube, m)?;
    Ok((w, x))
}

fn stage(p: Prime, tube: &BasicTube, m: u32) -> Result<(BasicTube, StdAffinoid)> {
    let s = rat(1, i64::from(m) + 1);
    let outer = tube.outer().map(|o| o.grow(p, &-s.clone()));
    let removed: Vec<Disk> = tube.removed().iter().map(|r| r.grow(p, &s)).collect();
    let w = BasicTube::new(p, outer.clone(), removed.clone())
        .map_err(|e| Error::DegenerateSchedule(m as usize, e.to_string()))?;
    let x = StdAffinoid::new(p, outer, removed)
        .map_err(|e| Error::DegenerateSchedule(m as usize, e.to_string()))?;
    Ok((w, x))
}

fn check_affinoid_in_tube(p: Prime, x: &StdAffinoid, w: &BasicTube, m: u32) -> Result<()> {
    let ok_outer = match (x.outer(), w.outer()) {
        (Some(a), Some(b)) => relate::closed_in_open(p, a, b),
        (_, None) => true,
        (None, Some(_)) => false,
    };
    let ok_removed = w.removed().iter().all(|r| {
        x.removed()
            .iter()
            .any(|big| relate::closed_in_open(p, r, big))
    });
    if ok_outer && ok_removed {
        Ok(())
    } else {
        Err(Error::DegenerateSchedule(
            m as usize,
            "X_m is not inside W_{m+1}".into(),
        ))
    }
}

fn check_tube_in_tube(p: Prime, inner: &BasicTube, outer: &BasicTube, m: u32) -> Result<()> {
    let ok_outer = match (inner.outer(), outer.outer()) {
        (Some(a), Some(b)) => relate::open_in_open(p, a, b),
        (_, None) => true,
        (None, Some(_)) => false,
    };
    let ok_removed = outer.removed().iter().all(|r| {
        inner
            .removed()
            .iter()
            .any(|big| relate::closed_in_closed(p, r, big))
    });
    if ok_outer && ok_removed {
        Ok(())
    } else {
        Err(Error::DegenerateSchedule(
            m as usize,
            "W_{m+1} is not inside U".into(),
        ))
    }
}

/// Value of a norm together with a point attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnessed {
    pub value: LogNorm,
    pub witness: BerkPoint,
}

pub fn sup_norm(p: Prime, poly: &Poly, a: &StdAffinoid) -> Result<Witnessed> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.outer().is_none() && poly.degree() != Some(0) {
        return Err(Error::Unbounded(
            "nonconstant polynomial on a neighbourhood of infinity".into(),
        ));
    }
    let best = a
        .shilov_boundary()
        .into_iter()
        .map(|x| (x.as_disk().unwrap().seminorm(p, poly), x))
        .reduce(|best, cand| if cand.0 > best.0 { cand } else { best })
        .expect("affinoid has a boundary");
    Ok(Witnessed {
        value: best.0,
        witness: best.1,
    })
}

/// Root accounting behind an infimum of `-inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCount {
    /// Roots in the outer closed disk (all roots when unbounded).
    pub outer: usize,
    /// Roots in each removed open disk.
    pub removed: Vec<usize>,
}

impl ZeroCount {
    pub fn inside(&self) -> usize {
        self.outer - self.removed.iter().sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfNorm {
    pub value: LogNorm,
    /// Shilov point attaining the minimum, absent when a root lies in the domain.
    pub witness: Option<BerkPoint>,
    pub zeros: ZeroCount,
}

pub fn inf_norm(p: Prime, poly: &Poly, a: &StdAffinoid) -> Result<InfNorm> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let outer = match a.outer() {
        Some(o) => count_zeros_in_disk(p, poly, o.center(), o.radius())?,
        None => poly.degree().unwrap_or(0),
    };
    let removed = a
        .removed()
        .iter()
        .map(|r| count_zeros_in_open_disk(p, poly, r.center(), r.radius()))
        .collect::<Result<Vec<_>>>()?;
    let zeros = ZeroCount { outer, removed };
    if zeros.inside() > 0 {
        return Ok(InfNorm {
            value: LogNorm::NegInf,
            witness: None,
            zeros,
        });
    }
    let best = a
        .shilov_boundary()
        .into_iter()
        .map(|x| (x.as_disk().unwrap().seminorm(p, poly), x))
        .min_by(|u, v| u.0.cmp(&v.0))
        .expect("affinoid has a boundary");
    Ok(InfNorm {
        value: best.0,
        witness: Some(best.1),
        zeros,
    })
}

/// Exponents `t` where two of the lines `log|c_i| + i t` cross, i.e. where
/// the seminorm of `P` along `Ball(center, p^t)` can change slope.
pub fn breakpoints(p: Prime, poly: &Poly, center: &crate::field::Scalar) -> Vec<Rat> {
    let shifted = poly.taylor_shift(center);
    let lines: Vec<(usize, Rat)> = shifted
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.lognorm(p).as_rat().map(|v| (i, v.clone())))
        .collect();
    let mut out = BTreeSet::new();
    for (k, (i, a)) in lines.iter().enumerate() {
        for (j, b) in &lines[k + 1..] {
            // a + i t = b + j t
            let t = (a - b) / Rat::from_integer(((*j as i64) - (*i as i64)).into());
            out.insert(t);
        }
    }
    out.into_iter().collect()
}
