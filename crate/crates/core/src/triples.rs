//! The linear space on the lines of a regular spread, its identification
//! with `AG(2,3)`, and `Z3`-valued difference maps on it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Result;
use crate::fgeom::{grid_through, PartialLinearSpace, Spread};
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("spread is not regular: {0}")]
    NotRegular(String),
    #[error("linear space admits no AG(2,3) coordinatization")]
    NoCoordinatization,
    #[error("table is not admissible: {0}")]
    NotAdmissible(String),
    #[error("triples are built on different spreads")]
    DifferentBase,
    #[error("invalid equivalence: {0}")]
    InvalidEquivalence(String),
    #[error("malformed triple: {0}")]
    Malformed(String),
}

/// Points are spread lines (by position in `spread.lines`); lines are the
/// triples of spread lines lying in a common grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadLinearSpace {
    pub spread: Spread,
    pub lines: Vec<[usize; 3]>,
    third: Vec<Vec<usize>>,
}

impl SpreadLinearSpace {
    pub fn new(spread: Spread, mut lines: Vec<[usize; 3]>) -> Self {
        let k = spread.len();
        for l in lines.iter_mut() {
            l.sort_unstable();
        }
        lines.sort_unstable();
        lines.dedup();
        let mut third = vec![vec![usize::MAX; k]; k];
        for l in &lines {
            for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                third[l[a]][l[b]] = l[c];
                third[l[b]][l[a]] = l[c];
            }
        }
        SpreadLinearSpace { spread, lines, third }
    }

    pub fn num_points(&self) -> usize {
        self.spread.len()
    }

    /// Third point of the line through distinct `p`, `q`, if any.
    pub fn third(&self, p: usize, q: usize) -> Option<usize> {
        match self.third[p][q] {
            usize::MAX => None,
            r => Some(r),
        }
    }

    /// Collinearity of three points; triples with a repeat count as collinear.
    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        a == b || b == c || a == c || self.third(a, b) == Some(c)
    }

    pub fn verify(&self) -> VerificationReport {
        let k = self.num_points();
        let mut r = VerificationReport::new("spread linear space");
        r.record_with(
            "9 points and 12 lines",
            1,
            (k != 9 || self.lines.len() != 12)
                .then(|| format!("{k} points, {} lines", self.lines.len())),
        );
        let bad = (0..k).find(|&p| self.lines.iter().filter(|l| l.contains(&p)).count() != 4);
        r.record_with("4 lines per point", k as u64, bad.map(|p| format!("point {p}")));
        let mut fail = None;
        for p in 0..k {
            for q in p + 1..k {
                let c = self.lines.iter().filter(|l| l.contains(&p) && l.contains(&q)).count();
                if c != 1 && fail.is_none() {
                    fail = Some(format!("points {p},{q} on {c} lines"));
                }
            }
        }
        r.record_with("two points on exactly one line", (k * (k.max(1) - 1) / 2) as u64, fail);
        r
    }
}

pub fn spread_linear_space(space: &PartialLinearSpace, spread: &Spread) -> Result<SpreadLinearSpace> {
    spread.validate(space)?;
    let k = spread.len();
    let mut lines = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let grid = grid_through(space, spread.lines[i], spread.lines[j])?;
            let t = spread.position(grid.third).ok_or_else(|| {
                TripleError::NotRegular(format!(
                    "grid through spread lines {i} and {j} has third line {} outside the spread",
                    grid.third
                ))
            })?;
            lines.push([i, j, t]);
        }
    }
    Ok(SpreadLinearSpace::new(spread.clone(), lines))
}

pub type Point2 = (u8, u8);

fn add3(a: Point2, b: Point2) -> Point2 {
    ((a.0 + b.0) % 3, (a.1 + b.1) % 3)
}

/// Three distinct points of `AG(2,3)` are collinear iff they sum to zero.
fn affine_collinear(a: Point2, b: Point2, c: Point2) -> bool {
    add3(add3(a, b), c) == (0, 0)
}

const AG23: [Point2; 9] = [
    (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2),
];

/// Backtracking search for a bijection to `Z3^2` sending `origin` to `(0,0)`
/// and lines to affine lines. Returns the first in lexicographic order.
pub fn coordinatize_ag23(
    ls: &SpreadLinearSpace,
    origin: usize,
) -> Result<Vec<Point2>, TripleError> {
    let k = ls.num_points();
    if k != 9 || ls.lines.len() != 12 || origin >= k {
        return Err(TripleError::NoCoordinatization);
    }
    let order: Vec<usize> = std::iter::once(origin).chain((0..k).filter(|&p| p != origin)).collect();
    let mut coords: Vec<Option<Point2>> = vec![None; k];
    let mut used = [false; 9];
    fn extend(
        ls: &SpreadLinearSpace,
        order: &[usize],
        depth: usize,
        coords: &mut Vec<Option<Point2>>,
        used: &mut [bool; 9],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let range = if depth == 0 { 0..1 } else { 1..9 };
        for ci in range {
            if used[ci] {
                continue;
            }
            let c = AG23[ci];
            let consistent = order[..depth].iter().all(|&q| {
                let r = ls.third(p, q).expect("linear space");
                match coords[r] {
                    Some(cr) => affine_collinear(c, coords[q].expect("placed"), cr),
                    None => true,
                }
            });
            if consistent {
                coords[p] = Some(c);
                used[ci] = true;
                if extend(ls, order, depth + 1, coords, used) {
                    return true;
                }
                coords[p] = None;
                used[ci] = false;
            }
        }
        false
    }
    if (0..k).any(|p| (0..k).any(|q| p != q && ls.third(p, q).is_none())) {
        return Err(TripleError::NoCoordinatization);
    }
    if extend(ls, &order, 0, &mut coords, &mut used) {
        Ok(coords.into_iter().map(|c| c.expect("complete")).collect())
    } else {
        Err(TripleError::NoCoordinatization)
    }
}

/// `Δ[(x1,y1),(x2,y2)] = x1·y2 − x2·y1` in `Z3`.
pub fn theta_delta(coords: &[Point2], l1: usize, l2: usize) -> u8 {
    let (x1, y1) = coords[l1];
    let (x2, y2) = coords[l2];
    (x1 * y2 + 2 * x2 * y1) % 3
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleTriple {
    pub base: SpreadLinearSpace,
    pub coords: Option<Vec<Point2>>,
    /// `theta[a][b]` in `Z3`, indexed by spread position.
    pub theta: Vec<Vec<u8>>,
}

impl AdmissibleTriple {
    pub fn from_coords(base: SpreadLinearSpace, coords: Vec<Point2>) -> Self {
        let k = base.num_points();
        let theta = (0..k)
            .map(|a| (0..k).map(|b| theta_delta(&coords, a, b)).collect())
            .collect();
        AdmissibleTriple {
            base,
            coords: Some(coords),
            theta,
        }
    }

    pub fn from_table(base: SpreadLinearSpace, theta: Vec<Vec<u8>>) -> Self {
        AdmissibleTriple {
            base,
            coords: None,
            theta,
        }
    }

    /// `θ'(x, y) = f(x) + θ(x, y) − f(y)`.
    pub fn shifted(&self, f: &[u8]) -> Self {
        let k = self.base.num_points();
        let theta = (0..k)
            .map(|a| (0..k).map(|b| (f[a] + self.theta[a][b] + 3 - f[b]) % 3).collect())
            .collect();
        AdmissibleTriple::from_table(self.base.clone(), theta)
    }

    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.theta[a][b]
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            spread_lines: self.base.spread.lines.clone(),
            coords: self.coords.as_ref().map(|c| c.iter().map(|&(x, y)| [x, y]).collect()),
            theta: self.theta.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub spread_lines: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[u8; 2]>>,
    pub theta: Vec<Vec<u8>>,
}

pub fn verify_admissible(triple: &AdmissibleTriple) -> VerificationReport {
    let ls = &triple.base;
    let k = ls.num_points();
    let t = &triple.theta;
    let mut r = VerificationReport::new("admissible triple");

    let shape_ok = t.len() == k && t.iter().all(|row| row.len() == k && row.iter().all(|&x| x < 3));
    r.record_with(
        "table is k x k over Z3",
        (k * k) as u64,
        (!shape_ok).then(|| "wrong shape or value".into()),
    );
    if !shape_ok {
        return r;
    }

    let diag = (0..k).find(|&a| t[a][a] != 0);
    r.record_with("zero diagonal", k as u64, diag.map(|a| format!("θ({a},{a}) = {}", t[a][a])));

    let anti = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .find(|&(a, b)| !(t[a][b] + t[b][a]).is_multiple_of(3));
    r.record_with(
        "antisymmetry",
        (k * k) as u64,
        anti.map(|(a, b)| format!("θ({a},{b}) + θ({b},{a}) != 0")),
    );

    let additive = |a: usize, b: usize, c: usize| (t[a][b] + t[b][c]) % 3 == t[a][c];
    let mut star_fail = None;
    let mut star_cases = 0;
    for l in &ls.lines {
        for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            star_cases += 1;
            if !additive(l[a], l[b], l[c]) && star_fail.is_none() {
                star_fail = Some(format!("grid triple ({},{},{})", l[a], l[b], l[c]));
            }
        }
    }
    r.record_with("additive on grid triples", star_cases, star_fail);

    let mut iff_fail = None;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if additive(a, b, c) != ls.collinear(a, b, c) && iff_fail.is_none() {
                    iff_fail = Some(format!(
                        "({a},{b},{c}): additive = {}, collinear = {}",
                        additive(a, b, c),
                        ls.collinear(a, b, c)
                    ));
                }
            }
        }
    }
    r.record_with("additive iff collinear", (k * k * k) as u64, iff_fail);
    r
}

/// Witness that `t2(α(x), α(y)) = β·(f(x) + t1(x, y) − f(y))` for all x, y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEquivalence {
    pub alpha: Vec<usize>,
    /// Automorphism of `Z3`: multiplication by 1 or 2.
    pub beta: u8,
    pub f: Vec<u8>,
}

impl TripleEquivalence {
    pub fn identity(k: usize) -> Self {
        TripleEquivalence {
            alpha: (0..k).collect(),
            beta: 1,
            f: vec![0; k],
        }
    }

    pub fn holds(&self, t1: &AdmissibleTriple, t2: &AdmissibleTriple) -> bool {
        let k = t1.base.num_points();
        if self.alpha.len() != k || self.f.len() != k || !matches!(self.beta, 1 | 2) {
            return false;
        }
        (0..k).all(|x| {
            (0..k).all(|y| {
                let rhs = self.beta * ((self.f[x] + t1.get(x, y) + 3 - self.f[y]) % 3) % 3;
                t2.get(self.alpha[x], self.alpha[y]) == rhs
            })
        })
    }
}

/// All line-preserving permutations of the linear space, identity first.
pub fn automorphisms(ls: &SpreadLinearSpace) -> Vec<Vec<usize>> {
    let k = ls.num_points();
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn extend(
        ls: &SpreadLinearSpace,
        p: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = ls.num_points();
        if p == k {
            out.push(img.clone());
            return;
        }
        for y in 0..k {
            if used[y] {
                continue;
            }
            let ok = (0..p).all(|q| match ls.third(p, q) {
                Some(r) if r < p => ls.third(y, img[q]) == Some(img[r]),
                _ => true,
            });
            if ok {
                img[p] = y;
                used[y] = true;
                extend(ls, p + 1, img, used, out);
                used[y] = false;
                img[p] = usize::MAX;
            }
        }
    }
    extend(ls, 0, &mut img, &mut used, &mut out);
    out
}

pub fn equivalence_search(
    t1: &AdmissibleTriple,
    t2: &AdmissibleTriple,
) -> Result<Option<TripleEquivalence>, TripleError> {
    for (name, t) in [("first", t1), ("second", t2)] {
        let r = verify_admissible(t);
        let failure = r.failures().next().map(|f| format!("{name}: {} {}", f.name, f.detail));
        if let Some(msg) = failure {
            return Err(TripleError::NotAdmissible(msg));
        }
    }
    if t1.base != t2.base {
        return Err(TripleError::DifferentBase);
    }
    let k = t1.base.num_points();
    let p0 = 0;
    for alpha in automorphisms(&t1.base) {
        for beta in [1u8, 2] {
            // β is its own inverse in Z3.
            let f: Vec<u8> = (0..k)
                .map(|x| (t1.get(p0, x) + 3 - beta * t2.get(alpha[p0], alpha[x]) % 3) % 3)
                .collect();
            let eq = TripleEquivalence {
                alpha: alpha.clone(),
                beta,
                f,
            };
            if eq.holds(t1, t2) {
                return Ok(Some(eq));
            }
        }
    }
    Ok(None)
}
