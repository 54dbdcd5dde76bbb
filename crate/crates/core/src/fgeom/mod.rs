//! Incidence geometry of slim partial linear spaces.
//!
//! Points are identified by index; labels are presentation only. Lines are
//! stored as index triples. Everything derived (incidence, collinearity,
//! distances) is computed from those two lists.

mod closure;
mod search;
mod spread;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::PointSet;
use crate::report::VerificationReport;

pub use closure::{
    convex_closure, induced_subspace, project_to_line, quad_of, subspace_closure, Quad,
};
pub use search::{find_embedding, find_isomorphism, is_line_preserving};
pub use spread::{grid_through, is_regular_spread, spread_symmetry_witness, Grid, Spread};

pub const UNREACHABLE: u8 = u8::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("line {0} out of range")]
    LineOutOfRange(usize),
    #[error("point {point} is not on line {line}")]
    NotOnLine { point: usize, line: usize },
    #[error("expected two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("points {0} and {1} are unreachable from each other")]
    Unreachable(usize, usize),
    #[error("collinearity graph is disconnected")]
    Disconnected,
    #[error("points {p} and {q} are at distance {distance}, expected 2")]
    NotAtDistanceTwo { p: usize, q: usize, distance: usize },
    #[error("line {line} has no unique point nearest to {point}")]
    NonUniqueNearest { point: usize, line: usize },
    #[error("not a spread: {0}")]
    NotASpread(String),
    #[error("lines {0} and {1} do not span a 3x3 grid")]
    NotAGrid(usize, usize),
}

/// A point-line geometry with three points per line.
#[derive(Debug)]
pub struct PartialLinearSpace {
    name: String,
    points: Vec<String>,
    lines: Vec<[usize; 3]>,
    line_tags: Option<Vec<String>>,
    incidence: Vec<Vec<usize>>,
    neighbours: Vec<PointSet>,
    distances: OnceLock<DistanceTable>,
}

impl Clone for PartialLinearSpace {
    fn clone(&self) -> Self {
        PartialLinearSpace {
            name: self.name.clone(),
            points: self.points.clone(),
            lines: self.lines.clone(),
            line_tags: self.line_tags.clone(),
            incidence: self.incidence.clone(),
            neighbours: self.neighbours.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl PartialLinearSpace {
    /// Builds the space without validating it; out-of-range indices are
    /// ignored by the derived structures and reported by
    /// [`verify_partial_linear`].
    pub fn new(name: impl Into<String>, points: Vec<String>, lines: Vec<[usize; 3]>) -> Self {
        let n = points.len();
        let mut incidence = vec![Vec::new(); n];
        let mut neighbours = vec![PointSet::new(n); n];
        for (li, line) in lines.iter().enumerate() {
            for (k, &p) in line.iter().enumerate() {
                if p >= n {
                    continue;
                }
                if !incidence[p].contains(&li) {
                    incidence[p].push(li);
                }
                for (k2, &q) in line.iter().enumerate() {
                    if k2 != k && q < n && q != p {
                        neighbours[p].insert(q);
                    }
                }
            }
        }
        PartialLinearSpace {
            name: name.into(),
            points,
            lines,
            line_tags: None,
            incidence,
            neighbours,
            distances: OnceLock::new(),
        }
    }

    pub fn with_tags(mut self, tags: Vec<String>) -> Self {
        self.line_tags = Some(tags);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.points[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|l| l == label)
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> [usize; 3] {
        self.lines[i]
    }

    pub fn line_tags(&self) -> Option<&[String]> {
        self.line_tags.as_deref()
    }

    pub fn line_tag(&self, i: usize) -> Option<&str> {
        self.line_tags.as_ref().and_then(|t| t.get(i)).map(String::as_str)
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.incidence[p]
    }

    pub fn neighbours(&self, p: usize) -> &PointSet {
        &self.neighbours[p]
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        self.neighbours[p].contains(q)
    }

    /// The line joining two distinct collinear points.
    pub fn line_of(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return None;
        }
        self.incidence[p]
            .iter()
            .copied()
            .find(|&l| self.lines[l].contains(&q))
    }

    /// `p * q`: third point of the line through `p` and `q`.
    pub fn star(&self, p: usize, q: usize) -> Option<usize> {
        let l = self.line_of(p, q)?;
        self.lines[l].iter().copied().find(|&r| r != p && r != q)
    }

    /// Index of a line given as a point set, in any order.
    pub fn find_line(&self, pts: [usize; 3]) -> Option<usize> {
        let mut key = pts;
        key.sort_unstable();
        self.incidence.get(pts[0])?.iter().copied().find(|&l| {
            let mut s = self.lines[l];
            s.sort_unstable();
            s == key
        })
    }

    pub fn line_set(&self, l: usize) -> PointSet {
        PointSet::from_iter(self.num_points(), self.lines[l])
    }

    /// `p^perp`: `p` together with its collinear points.
    pub fn perp(&self, p: usize) -> PointSet {
        let mut s = self.neighbours[p].clone();
        s.insert(p);
        s
    }

    pub fn distances(&self) -> &DistanceTable {
        self.distances.get_or_init(|| DistanceTable::new(self))
    }

    pub fn to_json(&self) -> GeometryJson {
        GeometryJson {
            name: self.name.clone(),
            points: self.points.clone(),
            lines: self.lines.clone(),
            line_tags: self.line_tags.clone(),
            ..Default::default()
        }
    }

    pub fn from_json(json: &GeometryJson) -> Self {
        let s = PartialLinearSpace::new(json.name.clone(), json.points.clone(), json.lines.clone());
        match &json.line_tags {
            Some(t) => s.with_tags(t.clone()),
            None => s,
        }
    }
}

/// Serialized geometry. The optional trailing fields are present only for
/// the quadric model and the 243-point geometry respectively.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometryJson {
    pub name: String,
    pub points: Vec<String>,
    pub lines: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_tags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p4_labels: Option<BTreeMap<String, (String, String, u8)>>,
}

/// All-pairs BFS distances plus distance spheres for interval queries.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
    spheres: Vec<Vec<PointSet>>,
}

impl DistanceTable {
    pub fn new(space: &PartialLinearSpace) -> Self {
        let n = space.num_points();
        let mut dist = vec![UNREACHABLE; n * n];
        let mut spheres = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = row[x];
                for y in space.neighbours(x).iter() {
                    if row[y] == UNREACHABLE {
                        row[y] = dx + 1;
                        queue.push_back(y);
                    }
                }
            }
            let ecc = row.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0);
            let mut sph = vec![PointSet::new(n); ecc as usize + 1];
            for (y, &d) in row.iter().enumerate() {
                if d != UNREACHABLE {
                    sph[d as usize].insert(y);
                }
            }
            spheres.push(sph);
        }
        DistanceTable { n, dist, spheres }
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize) -> u8 {
        self.dist[p * self.n + q]
    }

    pub fn row(&self, p: usize) -> &[u8] {
        &self.dist[p * self.n..(p + 1) * self.n]
    }

    pub fn sphere(&self, p: usize, k: usize) -> Option<&PointSet> {
        self.spheres[p].get(k)
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }

    pub fn diameter(&self) -> Option<usize> {
        if self.is_connected() {
            Some(self.dist.iter().copied().max().unwrap_or(0) as usize)
        } else {
            None
        }
    }

    /// Points on some shortest path between `p` and `q` (inclusive).
    pub fn interval(&self, p: usize, q: usize) -> PointSet {
        let d = self.get(p, q);
        let mut out = PointSet::new(self.n);
        if d == UNREACHABLE {
            return out;
        }
        let d = d as usize;
        for k in 0..=d {
            if let (Some(a), Some(b)) = (self.sphere(p, k), self.sphere(q, d - k)) {
                let mut s = a.clone();
                s.intersect_with(b);
                out.union_with(&s);
            }
        }
        out
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|p| self.row(p).to_vec()).collect()
    }
}

pub fn verify_partial_linear(space: &PartialLinearSpace) -> VerificationReport {
    let n = space.num_points();
    let mut report = VerificationReport::new(format!("partial linear space {}", space.name()));

    let bad_line = space.lines().iter().enumerate().find(|(_, l)| {
        l.iter().any(|&p| p >= n) || l[0] == l[1] || l[1] == l[2] || l[0] == l[2]
    });
    report.record_with(
        "lines have three distinct points in range",
        space.num_lines() as u64,
        bad_line.map(|(i, l)| format!("line {i} = {l:?}")),
    );

    // Two points on at most one line: every pair is covered at most once.
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut clash = None;
    'outer: for (i, l) in space.lines().iter().enumerate() {
        for a in 0..3 {
            for b in a + 1..3 {
                let key = (l[a].min(l[b]), l[a].max(l[b]));
                if key.0 != key.1 && !seen.insert(key) {
                    clash = Some(format!(
                        "points {} and {} lie on line {i} and on an earlier line",
                        key.0, key.1
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record_with(
        "two points on at most one line",
        (n * n.saturating_sub(1) / 2) as u64,
        clash,
    );

    let mut labels = HashSet::new();
    let dup = space.labels().iter().find(|l| !labels.insert(l.as_str()));
    report.record_with(
        "point labels distinct",
        n as u64,
        dup.map(|l| format!("label {l:?} repeated")),
    );

    if let Some(tags) = space.line_tags() {
        report.record_with(
            "one tag per line",
            space.num_lines() as u64,
            (tags.len() != space.num_lines())
                .then(|| format!("{} tags for {} lines", tags.len(), space.num_lines())),
        );
    }
    report
}

pub fn third_point(
    space: &PartialLinearSpace,
    line: usize,
    p: usize,
    q: usize,
) -> Result<usize, GeometryError> {
    let l = *space
        .lines()
        .get(line)
        .ok_or(GeometryError::LineOutOfRange(line))?;
    if p == q {
        return Err(GeometryError::SamePoint(p));
    }
    for x in [p, q] {
        if !l.contains(&x) {
            return Err(GeometryError::NotOnLine { point: x, line });
        }
    }
    Ok(l.into_iter().find(|&r| r != p && r != q).expect("three distinct points"))
}

pub fn distance(space: &PartialLinearSpace, p: usize, q: usize) -> Result<usize, GeometryError> {
    let n = space.num_points();
    for x in [p, q] {
        if x >= n {
            return Err(GeometryError::PointOutOfRange(x));
        }
    }
    match space.distances().get(p, q) {
        UNREACHABLE => Err(GeometryError::Unreachable(p, q)),
        d => Ok(d as usize),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearPolygonReport {
    pub points: usize,
    pub lines: usize,
    pub diameter: usize,
    /// Every (point, line) pair has a unique nearest point on the line.
    pub near_polygon: bool,
    pub nearest_violations: usize,
    /// Every pair at distance 2 has at least two common neighbours.
    pub dense: bool,
    /// Number of lines through each point, when constant.
    pub lines_per_point: Option<usize>,
    /// `(s, t)` when the space is a generalized quadrangle.
    pub gq_order: Option<(usize, usize)>,
}

impl NearPolygonReport {
    pub fn is_gq(&self, s: usize, t: usize) -> bool {
        self.gq_order == Some((s, t))
    }

    pub fn to_report(&self, subject: &str) -> VerificationReport {
        let mut r = VerificationReport::new(subject);
        let pairs = (self.points * self.lines) as u64;
        r.record_with(
            "unique nearest point on every line",
            pairs,
            (!self.near_polygon).then(|| format!("{} violations", self.nearest_violations)),
        );
        r.record("dense", (self.points * self.points) as u64, self.dense);
        r.note("diameter", self.diameter.to_string());
        r.note(
            "lines per point",
            self.lines_per_point.map_or("irregular".into(), |t| t.to_string()),
        );
        if let Some((s, t)) = self.gq_order {
            r.note("generalized quadrangle order", format!("({s},{t})"));
        }
        r
    }
}

pub fn verify_near_polygon(space: &PartialLinearSpace) -> Result<NearPolygonReport, GeometryError> {
    let n = space.num_points();
    let dt = space.distances();
    let diameter = dt.diameter().ok_or(GeometryError::Disconnected)?;

    let mut violations = 0;
    for p in 0..n {
        let row = dt.row(p);
        for l in space.lines() {
            let ds = l.map(|x| row[x]);
            let min = *ds.iter().min().expect("three points");
            if ds.iter().filter(|&&d| d == min).count() != 1 {
                violations += 1;
            }
        }
    }

    let dense = (0..n).all(|p| {
        (p + 1..n).all(|q| {
            dt.get(p, q) != 2 || space.neighbours(p).intersection_len(space.neighbours(q)) >= 2
        })
    });

    let first = space.lines_through(0).len();
    let lines_per_point =
        (n > 0 && (0..n).all(|p| space.lines_through(p).len() == first)).then_some(first);

    let near_polygon = violations == 0;
    let gq_order = match lines_per_point {
        Some(t1) if near_polygon && diameter == 2 && t1 > 0 => Some((2, t1 - 1)),
        _ => None,
    };

    Ok(NearPolygonReport {
        points: n,
        lines: space.num_lines(),
        diameter,
        near_polygon,
        nearest_violations: violations,
        dense,
        lines_per_point,
        gq_order,
    })
}

/// Labelled test geometries shared by unit tests across the crate.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::PartialLinearSpace;

    /// The 3x3 grid on points `3r + c`: rows then columns.
    pub fn grid() -> PartialLinearSpace {
        let mut lines = Vec::new();
        for r in 0..3 {
            lines.push([3 * r, 3 * r + 1, 3 * r + 2]);
        }
        for c in 0..3 {
            lines.push([c, c + 3, c + 6]);
        }
        PartialLinearSpace::new("grid", (0..9).map(|i| format!("g{i}")).collect(), lines)
    }

    pub fn single_line() -> PartialLinearSpace {
        PartialLinearSpace::new("line", vec!["x".into(), "y".into(), "z".into()], vec![[0, 1, 2]])
    }
}
