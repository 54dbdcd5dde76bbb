//! The 243-point geometry `S_θ` built from `Q(5,2)`, a regular spread and an
//! admissible `Z3`-valued map on the spread, with checks of its near-hexagon
//! and tensor-product structure.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::fgeom::{
    convex_closure, find_embedding, induced_subspace, is_line_preserving, is_regular_spread,
    verify_near_polygon, verify_partial_linear, GeometryJson, PartialLinearSpace, Spread,
};
use crate::gmodels::{bar_label, double_bar_label};
use crate::report::VerificationReport;
use crate::triples::{verify_admissible, AdmissibleTriple, TripleEquivalence, TripleError};

pub const LINE_TYPES: [&str; 9] = ["L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9"];

/// A point `(a, b, i)` of the fourth kind: `ab` is a spread line.
pub type P4Point = (usize, usize, u8);

#[derive(Debug, Clone)]
pub struct SThetaGeometry {
    pub space: PartialLinearSpace,
    pub duad: PartialLinearSpace,
    pub spread: Spread,
    pub triple: AdmissibleTriple,
    /// P4 point `k` has index `3 * |Q| + k`.
    pub p4: Vec<P4Point>,
    p4_lookup: HashMap<P4Point, usize>,
}

impl SThetaGeometry {
    pub fn q_points(&self) -> usize {
        self.duad.num_points()
    }

    pub fn bar(&self, x: usize) -> usize {
        self.q_points() + x
    }

    pub fn double_bar(&self, x: usize) -> usize {
        2 * self.q_points() + x
    }

    pub fn p4_offset(&self) -> usize {
        3 * self.q_points()
    }

    pub fn p4_index(&self, a: usize, b: usize, i: u8) -> Option<usize> {
        self.p4_lookup.get(&(a, b, i % 3)).copied()
    }

    pub fn p4_point(&self, p: usize) -> Option<P4Point> {
        p.checked_sub(self.p4_offset()).and_then(|k| self.p4.get(k).copied())
    }

    /// Number of lines of each type `L1..L9` through `p`.
    pub fn line_type_counts(&self, p: usize) -> [usize; 9] {
        let mut counts = [0; 9];
        for &l in self.space.lines_through(p) {
            if let Some(t) = self.space.line_tag(l).and_then(type_index) {
                counts[t] += 1;
            }
        }
        counts
    }

    pub fn census(&self) -> [usize; 9] {
        let mut counts = [0; 9];
        for l in 0..self.space.num_lines() {
            if let Some(t) = self.space.line_tag(l).and_then(type_index) {
                counts[t] += 1;
            }
        }
        counts
    }

    /// The points of the first three kinds with lines `L1..L4`.
    pub fn y_subgeometry(&self) -> PartialLinearSpace {
        let y = PointSet::from_iter(self.space.num_points(), 0..self.p4_offset());
        induced_subspace(&self.space, &y, "Y").0
    }

    pub fn to_json(&self) -> GeometryJson {
        let labels = self
            .p4
            .iter()
            .enumerate()
            .map(|(k, &(a, b, i))| {
                (
                    (self.p4_offset() + k).to_string(),
                    (self.duad.label(a).to_string(), self.duad.label(b).to_string(), i),
                )
            })
            .collect::<BTreeMap<_, _>>();
        GeometryJson {
            p4_labels: Some(labels),
            ..self.space.to_json()
        }
    }
}

fn type_index(tag: &str) -> Option<usize> {
    LINE_TYPES.iter().position(|&t| t == tag)
}

fn sorted(mut l: [usize; 3]) -> [usize; 3] {
    l.sort_unstable();
    l
}

struct LineSink {
    lines: Vec<[usize; 3]>,
    tags: Vec<String>,
    seen: HashSet<[usize; 3]>,
}

impl LineSink {
    fn push(&mut self, l: [usize; 3], tag: &str) {
        let l = sorted(l);
        if self.seen.insert(l) {
            self.lines.push(l);
            self.tags.push(tag.to_string());
        }
    }
}

pub fn build_stheta(
    duad: &PartialLinearSpace,
    spread: &Spread,
    triple: &AdmissibleTriple,
) -> Result<SThetaGeometry> {
    if triple.base.spread != *spread {
        return Err(TripleError::DifferentBase.into());
    }
    let adm = verify_admissible(triple);
    let failure = adm.failures().next().map(|c| format!("{} {}", c.name, c.detail));
    if let Some(msg) = failure {
        return Err(TripleError::NotAdmissible(msg).into());
    }
    let reg = is_regular_spread(duad, spread)?;
    if !reg.passed() {
        return Err(TripleError::NotRegular(spread_failure(&reg)).into());
    }

    let n = duad.num_points();
    let pos = spread.point_map(duad);
    let theta = |x: usize, y: usize| triple.get(pos[x], pos[y]);

    let mut labels: Vec<String> = duad.labels().to_vec();
    labels.extend(duad.labels().iter().map(|l| bar_label(l)));
    labels.extend(duad.labels().iter().map(|l| double_bar_label(l)));
    let mut p4 = Vec::new();
    for &sl in &spread.lines {
        let pts = sorted(duad.line(sl));
        for &a in &pts {
            for &b in pts.iter().filter(|&&b| b != a) {
                for i in 0..3u8 {
                    labels.push(format!("({},{},{i})", duad.label(a), duad.label(b)));
                    p4.push((a, b, i));
                }
            }
        }
    }
    let p4_lookup: HashMap<P4Point, usize> =
        p4.iter().enumerate().map(|(k, &t)| (t, 3 * n + k)).collect();
    let pt = |a: usize, b: usize, i: u8| p4_lookup[&(a, b, i % 3)];

    let mut sink = LineSink {
        lines: Vec::new(),
        tags: Vec::new(),
        seen: HashSet::new(),
    };
    for (c, tag) in ["L1", "L2", "L3"].into_iter().enumerate() {
        for l in duad.lines() {
            sink.push(l.map(|p| c * n + p), tag);
        }
    }
    for x in 0..n {
        sink.push([x, n + x, 2 * n + x], "L4");
    }
    let spread_triples: Vec<[usize; 3]> =
        spread.lines.iter().map(|&l| sorted(duad.line(l))).collect();
    let rotations = |[a, b, c]: [usize; 3]| [(a, b, c), (b, c, a), (c, a, b)];
    for tag in ["L5", "L6", "L7"] {
        for &l in &spread_triples {
            for (a, b, c) in rotations(l) {
                for i in 0..3 {
                    let line = match tag {
                        "L5" => [a, pt(a, b, i), pt(a, c, i)],
                        "L6" => [n + a, pt(b, a, i), pt(c, a, i)],
                        _ => [2 * n + a, pt(b, c, i), pt(c, b, i)],
                    };
                    sink.push(line, tag);
                }
            }
        }
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for &l in &spread_triples {
        for p in PERMS {
            let (a, b, c) = (l[p[0]], l[p[1]], l[p[2]]);
            for [i, j, k] in PERMS {
                sink.push([pt(a, b, i as u8), pt(b, c, j as u8), pt(c, a, k as u8)], "L8");
            }
        }
    }
    for (li, &l) in duad.lines().iter().enumerate() {
        if spread.contains(li) {
            continue;
        }
        for (a, b, c) in rotations(l) {
            let sa = duad.line(spread.lines[pos[a]]);
            for &u in sa.iter().filter(|&&u| u != a) {
                let (v, w) = partner_line(duad, spread, &pos, l, u, b, c)?;
                for i in 0..3u8 {
                    let j = (i + theta(a, b)) % 3;
                    let k = (i + theta(a, c)) % 3;
                    sink.push([pt(a, u, i), pt(b, v, j), pt(c, w, k)], "L9");
                }
            }
        }
    }

    let space = PartialLinearSpace::new("S_theta", labels, sink.lines).with_tags(sink.tags);
    Ok(SThetaGeometry {
        space,
        duad: duad.clone(),
        spread: spread.clone(),
        triple: triple.clone(),
        p4,
        p4_lookup,
    })
}

fn spread_failure(r: &VerificationReport) -> String {
    r.failures()
        .next()
        .map(|c| c.detail.clone())
        .unwrap_or_default()
}

/// The unique line `{u, v, w}` disjoint from `l` with `v` on the spread line
/// of `b` and `w` on that of `c`.
fn partner_line(
    duad: &PartialLinearSpace,
    spread: &Spread,
    pos: &[usize],
    l: [usize; 3],
    u: usize,
    b: usize,
    c: usize,
) -> Result<(usize, usize)> {
    let mut found = Vec::new();
    for &m in duad.lines_through(u) {
        if spread.contains(m) {
            continue;
        }
        let pts = duad.line(m);
        if pts.iter().any(|p| l.contains(p)) {
            continue;
        }
        let v = pts.iter().copied().find(|&p| p != u && pos[p] == pos[b]);
        let w = pts.iter().copied().find(|&p| p != u && pos[p] == pos[c]);
        if let (Some(v), Some(w)) = (v, w) {
            found.push((v, w));
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Construction(format!(
            "{} partner lines through point {u} for line {l:?}",
            found.len()
        ))),
    }
}

/// Quads found by closing every pair of points at distance 2.
#[derive(Debug, Clone)]
pub struct QuadCensus {
    /// Distinct quads, in order of first discovery.
    pub quads: Vec<PointSet>,
    pub pairs: u64,
    pub report: VerificationReport,
}

impl QuadCensus {
    pub fn of_size(&self, k: usize) -> impl Iterator<Item = &PointSet> {
        self.quads.iter().filter(move |q| q.len() == k)
    }
}

/// Every pair at distance 2 must span a quad that is a 3x3 grid or a
/// `GQ(2,4)`.
pub fn quad_census(space: &PartialLinearSpace) -> QuadCensus {
    let n = space.num_points();
    let dt = space.distances();
    let closures: Vec<Vec<(usize, usize, Vec<usize>)>> = (0..n)
        .into_par_iter()
        .map(|p| {
            (p + 1..n)
                .filter(|&q| dt.get(p, q) == 2)
                .map(|q| (p, q, convex_closure(space, &[p, q]).to_vec()))
                .collect()
        })
        .collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut quads = Vec::new();
    let mut pairs = 0u64;
    let mut bad_size = None;
    for (p, q, pts) in closures.into_iter().flatten() {
        pairs += 1;
        if !matches!(pts.len(), 9 | 27) && bad_size.is_none() {
            bad_size = Some(format!("pair ({p},{q}) spans {} points", pts.len()));
        }
        if !index.contains_key(&pts) {
            index.insert(pts.clone(), quads.len());
            quads.push(PointSet::from_iter(n, pts));
        }
    }
    let mut report = VerificationReport::new("quads");
    report.record_with("quad sizes are 9 or 27", pairs, bad_size);
    let bad_gq = quads.iter().find_map(|q| {
        let (sub, _) = induced_subspace(space, q, "quad");
        let want = if q.len() == 9 { (2, 1) } else { (2, 4) };
        let ok = verify_near_polygon(&sub).is_ok_and(|r| r.gq_order == Some(want));
        (!ok).then(|| format!("quad on {} points is not a GQ{want:?}", q.len()))
    });
    report.record_with("quads are grids or GQ(2,4)", quads.len() as u64, bad_gq);
    for k in [9, 27] {
        let c = quads.iter().filter(|q| q.len() == k).count();
        report.note(format!("quads of size {k}"), c.to_string());
    }
    QuadCensus {
        quads,
        pairs,
        report,
    }
}

/// All partitions of the points into members of `quads`.
pub fn quad_partitions(n: usize, quads: &[PointSet]) -> Vec<Vec<usize>> {
    fn search(
        n: usize,
        quads: &[PointSet],
        covered: &mut PointSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(p) = (0..n).find(|&p| !covered.contains(p)) else {
            out.push(chosen.clone());
            return;
        };
        for (qi, q) in quads.iter().enumerate() {
            if q.contains(p) && q.is_disjoint(covered) {
                covered.union_with(q);
                chosen.push(qi);
                search(n, quads, covered, chosen, out);
                chosen.pop();
                covered.difference_with(q);
            }
        }
    }
    let mut out = Vec::new();
    search(n, quads, &mut PointSet::new(n), &mut Vec::new(), &mut out);
    for p in out.iter_mut() {
        p.sort_unstable();
    }
    out
}

/// The tensor structure of `Q(5,2) (x) Q(5,2)`.
#[derive(Debug, Clone)]
pub struct HexagonStructure {
    pub report: VerificationReport,
    pub grid_quads: usize,
    pub q52_quads: usize,
    pub t1: Vec<PointSet>,
    pub t2: Vec<PointSet>,
    /// Line indices of the 81 intersections `Q ∩ R`, `Q ∈ T1`, `R ∈ T2`.
    pub s_tensor: Vec<usize>,
}

pub fn hexagon_structure(space: &PartialLinearSpace) -> Result<HexagonStructure> {
    let n = space.num_points();
    let mut report = VerificationReport::new(format!("hexagon structure of {}", space.name()));
    report.merge("", verify_partial_linear(space));
    let np = verify_near_polygon(space)?;
    report.merge("", np.to_report(space.name()));
    report.record_with(
        "diameter 3",
        1,
        (np.diameter != 3).then(|| format!("diameter {}", np.diameter)),
    );
    report.record_with(
        "9 lines per point",
        n as u64,
        (np.lines_per_point != Some(9)).then(|| format!("{:?}", np.lines_per_point)),
    );

    let census = quad_census(space);
    report.merge("", census.report.clone());
    let big: Vec<PointSet> = census.of_size(27).cloned().collect();
    let partitions = quad_partitions(n, &big);
    report.note("partitions into 27-point quads", partitions.len().to_string());
    let disjoint_pair = partitions.iter().enumerate().find_map(|(i, a)| {
        partitions[i + 1..]
            .iter()
            .find(|b| a.iter().all(|q| !b.contains(q)))
            .map(|b| (a.clone(), b.clone()))
    });
    report.record_with(
        "two disjoint partitions T1, T2",
        partitions.len() as u64,
        disjoint_pair.is_none().then(|| "not found".into()),
    );
    let (t1, t2): (Vec<PointSet>, Vec<PointSet>) = match disjoint_pair {
        Some((a, b)) => (
            a.iter().map(|&i| big[i].clone()).collect(),
            b.iter().map(|&i| big[i].clone()).collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };

    let mut s_tensor = Vec::new();
    let mut meet_fail = None;
    for q in &t1 {
        for r in &t2 {
            let mut m = q.clone();
            m.intersect_with(r);
            let pts = m.to_vec();
            match (pts.len(), pts.as_slice()) {
                (3, &[a, b, c]) if space.find_line([a, b, c]).is_some() => {
                    s_tensor.push(space.find_line([a, b, c]).expect("checked"));
                }
                _ if meet_fail.is_none() => {
                    meet_fail = Some(format!("intersection {pts:?} is not a line"));
                }
                _ => {}
            }
        }
    }
    report.record_with("T1 and T2 members meet in lines", (t1.len() * t2.len()) as u64, meet_fail);
    let tensor = Spread::new(s_tensor.clone());
    report.record_with(
        "intersections form a spread",
        s_tensor.len() as u64,
        tensor.validate(space).err().map(|e| e.to_string()),
    );

    let mut sym_fail = None;
    for (mine, other) in [(&t1, &t2), (&t2, &t1)] {
        for q in mine {
            let (sub, global) = induced_subspace(space, q, "quad");
            let mut local = vec![usize::MAX; n];
            for (i, &g) in global.iter().enumerate() {
                local[g] = i;
            }
            let lines: Vec<usize> = other
                .iter()
                .filter_map(|r| {
                    let mut m = q.clone();
                    m.intersect_with(r);
                    match m.to_vec().as_slice() {
                        &[a, b, c] => sub.find_line([local[a], local[b], local[c]]),
                        _ => None,
                    }
                })
                .collect();
            let ok = lines.len() == other.len()
                && is_regular_spread(&sub, &Spread::new(lines)).is_ok_and(|r| r.passed());
            if !ok && sym_fail.is_none() {
                sym_fail = Some(format!("quad containing point {}", global[0]));
            }
        }
    }
    report.record_with(
        "induced spreads are regular",
        (t1.len() + t2.len()) as u64,
        sym_fail,
    );

    let members: Vec<&PointSet> = t1.iter().chain(&t2).collect();
    let mut unique_fail = None;
    let mut checked = 0u64;
    for (li, l) in space.lines().iter().enumerate() {
        if s_tensor.contains(&li) {
            continue;
        }
        checked += 1;
        let c = members.iter().filter(|q| l.iter().all(|&p| q.contains(p))).count();
        if c != 1 && unique_fail.is_none() {
            unique_fail = Some(format!("line {li} lies in {c} quads"));
        }
    }
    report.record_with("other lines in a unique quad of T1 or T2", checked, unique_fail);

    Ok(HexagonStructure {
        report,
        grid_quads: census.of_size(9).count(),
        q52_quads: big.len(),
        t1,
        t2,
        s_tensor,
    })
}

pub fn verify_hexagon_structure(space: &PartialLinearSpace) -> Result<VerificationReport> {
    Ok(hexagon_structure(space)?.report)
}

/// The isomorphism `S_θ1 -> S_θ2` induced by an equivalence of the triples.
pub fn iso_from_equivalence(
    g1: &SThetaGeometry,
    g2: &SThetaGeometry,
    eq: &TripleEquivalence,
) -> Result<Vec<usize>> {
    if !eq.holds(&g1.triple, &g2.triple) {
        return Err(TripleError::InvalidEquivalence("identity fails on some pair".into()).into());
    }
    if g1.spread != g2.spread || g1.duad.lines() != g2.duad.lines() {
        return Err(TripleError::DifferentBase.into());
    }
    let q = &g1.duad;
    let n = q.num_points();
    let pos = g1.spread.point_map(q);
    let domains: Vec<PointSet> = (0..n)
        .map(|x| q.line_set(g1.spread.lines[eq.alpha[pos[x]]]))
        .collect();
    let phi = find_embedding(q, q, Some(&domains))
        .ok_or_else(|| Error::Construction("no automorphism lifts the equivalence".into()))?;

    let mut map = Vec::with_capacity(g1.space.num_points());
    for c in 0..3 {
        map.extend((0..n).map(|x| c * n + phi[x]));
    }
    for &(a, b, i) in &g1.p4 {
        let j = eq.beta * ((i + 3 - eq.f[pos[a]]) % 3) % 3;
        let img = g2
            .p4_index(phi[a], phi[b], j)
            .ok_or_else(|| Error::Construction("image of a P4 point is missing".into()))?;
        map.push(img);
    }
    if !is_line_preserving(&g1.space, &g2.space, &map) {
        return Err(Error::Construction("induced map is not line-preserving".into()));
    }
    Ok(map)
}
