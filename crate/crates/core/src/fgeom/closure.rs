use std::collections::VecDeque;

use super::{verify_near_polygon, GeometryError, NearPolygonReport, PartialLinearSpace};
use crate::bitset::PointSet;

/// Smallest subspace containing `seed` that is closed under completing
/// lines and under adding every point of every geodesic between members.
pub fn convex_closure(space: &PartialLinearSpace, seed: &[usize]) -> PointSet {
    let n = space.num_points();
    let dt = space.distances();
    let mut set = PointSet::new(n);
    let mut queue = VecDeque::new();
    for &s in seed {
        if set.insert(s) {
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &l in space.lines_through(x) {
            let line = space.line(l);
            if line.iter().filter(|&&p| p != x && set.contains(p)).count() >= 1 {
                for p in line {
                    if set.insert(p) {
                        queue.push_back(p);
                    }
                }
            }
        }
        for y in set.to_vec() {
            let mut between = dt.interval(x, y);
            between.difference_with(&set);
            for z in between.iter() {
                set.insert(z);
                queue.push_back(z);
            }
        }
    }
    set
}

/// Smallest subspace containing `seed`: closed under completing lines
/// through two of its points.
pub fn subspace_closure(space: &PartialLinearSpace, seed: &[usize]) -> PointSet {
    let mut set = PointSet::from_iter(space.num_points(), seed.iter().copied());
    let mut queue: VecDeque<usize> = set.iter().collect();
    while let Some(x) = queue.pop_front() {
        for y in set.to_vec() {
            if let Some(z) = space.star(x, y) {
                if set.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    set
}

/// The geometry induced on a point subset: only lines lying entirely inside
/// survive. Returns the subspace together with the local-to-global map.
pub fn induced_subspace(
    space: &PartialLinearSpace,
    subset: &PointSet,
    name: impl Into<String>,
) -> (PartialLinearSpace, Vec<usize>) {
    let global: Vec<usize> = subset.to_vec();
    let mut local = vec![usize::MAX; space.num_points()];
    for (i, &g) in global.iter().enumerate() {
        local[g] = i;
    }
    let mut lines = Vec::new();
    let mut tags = Vec::new();
    for (li, l) in space.lines().iter().enumerate() {
        if l.iter().all(|&p| subset.contains(p)) {
            lines.push(l.map(|p| local[p]));
            tags.push(space.line_tag(li).unwrap_or_default().to_string());
        }
    }
    let labels = global.iter().map(|&g| space.label(g).to_string()).collect();
    let mut sub = PartialLinearSpace::new(name, labels, lines);
    if space.line_tags().is_some() {
        sub = sub.with_tags(tags);
    }
    (sub, global)
}

/// A convex subspace of diameter 2 with its induced geometry.
#[derive(Debug, Clone)]
pub struct Quad {
    pub points: PointSet,
    /// Global point index of each local point of `space`.
    pub global: Vec<usize>,
    pub space: PartialLinearSpace,
    pub report: NearPolygonReport,
}

impl Quad {
    pub fn len(&self) -> usize {
        self.global.len()
    }

    pub fn is_empty(&self) -> bool {
        self.global.is_empty()
    }
}

pub fn quad_of(space: &PartialLinearSpace, p: usize, q: usize) -> Result<Quad, GeometryError> {
    let d = super::distance(space, p, q)?;
    if d != 2 {
        return Err(GeometryError::NotAtDistanceTwo { p, q, distance: d });
    }
    let points = convex_closure(space, &[p, q]);
    let (sub, global) = induced_subspace(space, &points, format!("quad({p},{q})"));
    let report = verify_near_polygon(&sub)?;
    Ok(Quad {
        points,
        global,
        space: sub,
        report,
    })
}

pub fn project_to_line(
    space: &PartialLinearSpace,
    p: usize,
    line: usize,
) -> Result<usize, GeometryError> {
    let l = *space
        .lines()
        .get(line)
        .ok_or(GeometryError::LineOutOfRange(line))?;
    let row = space.distances().row(p);
    let min = l.iter().map(|&x| row[x]).min().expect("three points");
    let mut nearest = l.iter().copied().filter(|&x| row[x] == min);
    match (nearest.next(), nearest.next()) {
        (Some(x), None) => Ok(x),
        _ => Err(GeometryError::NonUniqueNearest { point: p, line }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn closure_of_line_is_line() {
        let g = grid();
        assert_eq!(convex_closure(&g, &[0, 1]).to_vec(), vec![0, 1, 2]);
        assert_eq!(convex_closure(&g, &[3]).to_vec(), vec![3]);
    }

    #[test]
    fn closure_of_antipodal_grid_pair_is_grid() {
        let g = grid();
        assert_eq!(convex_closure(&g, &[0, 8]).len(), 9);
    }

    #[test]
    fn quad_of_grid() {
        let g = grid();
        let q = quad_of(&g, 0, 4).unwrap();
        assert_eq!(q.len(), 9);
        assert!(q.report.is_gq(2, 1));
        assert!(matches!(
            quad_of(&g, 0, 1),
            Err(GeometryError::NotAtDistanceTwo { distance: 1, .. })
        ));
    }

    #[test]
    fn projection_in_grid() {
        let g = grid();
        // point on the line projects to itself
        assert_eq!(project_to_line(&g, 1, 0), Ok(1));
        // point 4 (centre) onto row 0: nearest is 1
        assert_eq!(project_to_line(&g, 4, 0), Ok(1));
        assert_eq!(project_to_line(&g, 8, 3), Ok(6));
    }

    #[test]
    fn projection_faults_when_not_unique() {
        // Pentagon of lines: vertex 2 is at distance 2 from both ends of
        // the opposite line {6,7,8}.
        let s = PartialLinearSpace::new(
            "pentagon",
            (0..10).map(|i| i.to_string()).collect(),
            vec![[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8], [8, 9, 0]],
        );
        assert_eq!(
            project_to_line(&s, 2, 3),
            Err(GeometryError::NonUniqueNearest { point: 2, line: 3 })
        );
    }
}
