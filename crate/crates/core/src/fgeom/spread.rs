use serde::{Deserialize, Serialize};

use super::{
    find_embedding, subspace_closure, induced_subspace, verify_near_polygon, GeometryError,
    PartialLinearSpace,
};
use crate::bitset::PointSet;
use crate::report::VerificationReport;

/// A set of lines of a host space, meant to partition its points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spread {
    pub lines: Vec<usize>,
}

impl Spread {
    pub fn new(lines: Vec<usize>) -> Self {
        Spread { lines }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, line: usize) -> bool {
        self.lines.contains(&line)
    }

    pub fn position(&self, line: usize) -> Option<usize> {
        self.lines.iter().position(|&l| l == line)
    }

    pub fn validate(&self, space: &PartialLinearSpace) -> Result<(), GeometryError> {
        let n = space.num_points();
        let mut covered = PointSet::new(n);
        for &l in &self.lines {
            if l >= space.num_lines() {
                return Err(GeometryError::LineOutOfRange(l));
            }
            for p in space.line(l) {
                if !covered.insert(p) {
                    return Err(GeometryError::NotASpread(format!(
                        "point {p} lies on two chosen lines"
                    )));
                }
            }
        }
        if covered.len() != n {
            return Err(GeometryError::NotASpread(format!(
                "{} of {n} points covered",
                covered.len()
            )));
        }
        Ok(())
    }

    /// For each point, the position (within `lines`) of its spread line.
    /// Assumes the spread has been validated.
    pub fn point_map(&self, space: &PartialLinearSpace) -> Vec<usize> {
        let mut map = vec![usize::MAX; space.num_points()];
        for (i, &l) in self.lines.iter().enumerate() {
            for p in space.line(l) {
                map[p] = i;
            }
        }
        map
    }
}

/// The 3x3 grid spanned by two disjoint lines: the subspace they generate.
#[derive(Debug, Clone)]
pub struct Grid {
    pub points: PointSet,
    /// The six lines of the grid, as indices of the host space.
    pub lines: Vec<usize>,
    /// The grid line disjoint from both spanning lines.
    pub third: usize,
}

pub fn grid_through(
    space: &PartialLinearSpace,
    l1: usize,
    l2: usize,
) -> Result<Grid, GeometryError> {
    let [a, b, c] = space.line(l1);
    let [d, e, f] = space.line(l2);
    let points = subspace_closure(space, &[a, b, c, d, e, f]);
    if points.len() != 9 {
        return Err(GeometryError::NotAGrid(l1, l2));
    }
    let (sub, _) = induced_subspace(space, &points, "grid");
    let is_grid = verify_near_polygon(&sub).is_ok_and(|r| r.is_gq(2, 1));
    if !is_grid {
        return Err(GeometryError::NotAGrid(l1, l2));
    }
    let lines: Vec<usize> = (0..space.num_lines())
        .filter(|&l| space.line(l).iter().all(|&p| points.contains(p)))
        .collect();
    let s1 = space.line_set(l1);
    let s2 = space.line_set(l2);
    let third = lines
        .iter()
        .copied()
        .find(|&l| l != l1 && l != l2 && {
            let s = space.line_set(l);
            s.is_disjoint(&s1) && s.is_disjoint(&s2)
        })
        .ok_or(GeometryError::NotAGrid(l1, l2))?;
    Ok(Grid {
        points,
        lines,
        third,
    })
}

/// A spread is regular when the grid through any two of its lines has its
/// third parallel line in the spread as well. In `Q(5,2)` regular spreads
/// are exactly the spreads of symmetry.
pub fn is_regular_spread(
    space: &PartialLinearSpace,
    spread: &Spread,
) -> Result<VerificationReport, GeometryError> {
    spread.validate(space)?;
    let mut report = VerificationReport::new(format!("regular spread of {}", space.name()));
    let k = spread.len();
    let mut failure = None;
    for i in 0..k {
        for j in i + 1..k {
            let g = grid_through(space, spread.lines[i], spread.lines[j])?;
            if failure.is_none() && !spread.contains(g.third) {
                failure = Some(format!(
                    "grid through lines {} and {} has third line {} outside the spread",
                    spread.lines[i], spread.lines[j], g.third
                ));
            }
        }
    }
    report.record_with("grid third line in spread", (k * (k - 1) / 2) as u64, failure);
    report.note(
        "justification",
        "a regular spread of Q(5,2) is a spread of symmetry",
    );
    Ok(report)
}

/// An automorphism fixing every spread line setwise and mapping `x1` to
/// `x2`, if one exists.
pub fn spread_symmetry_witness(
    space: &PartialLinearSpace,
    spread: &Spread,
    line: usize,
    x1: usize,
    x2: usize,
) -> Result<Option<Vec<usize>>, GeometryError> {
    spread.validate(space)?;
    if !spread.contains(line) {
        return Err(GeometryError::NotASpread(format!("line {line} is not a spread line")));
    }
    for x in [x1, x2] {
        if !space.line(line).contains(&x) {
            return Err(GeometryError::NotOnLine { point: x, line });
        }
    }
    if x1 == x2 {
        return Ok(Some((0..space.num_points()).collect()));
    }
    let n = space.num_points();
    let mut domains: Vec<PointSet> = spread
        .point_map(space)
        .into_iter()
        .map(|i| space.line_set(spread.lines[i]))
        .collect();
    domains[x1] = PointSet::from_iter(n, [x2]);
    Ok(find_embedding(space, space, Some(&domains)))
}
