//! Backtracking search for line-preserving point bijections.
//!
//! Points of the source are assigned in a static order that prefers points
//! with many already-ordered neighbours, so that most choices are forced by
//! collinearity constraints. Candidate images are filtered with neighbour
//! bitsets; the third point of any fully assigned line is checked directly.

use super::PartialLinearSpace;
use crate::bitset::PointSet;

/// Whether `map` sends every line of `a` onto a line of `b`.
pub fn is_line_preserving(a: &PartialLinearSpace, b: &PartialLinearSpace, map: &[usize]) -> bool {
    map.len() == a.num_points()
        && a.lines().iter().all(|l| {
            l.iter().all(|&p| map[p] < b.num_points()) && b.find_line(l.map(|p| map[p])).is_some()
        })
}

/// First collinearity-preserving bijection `a -> b` mapping lines to lines,
/// or `None`. Spaces with different point or line counts are never
/// isomorphic.
pub fn find_isomorphism(a: &PartialLinearSpace, b: &PartialLinearSpace) -> Option<Vec<usize>> {
    find_embedding(a, b, None)
}

/// Like [`find_isomorphism`], with each source point restricted to a set of
/// allowed images. With `a == b` this searches automorphisms.
pub fn find_embedding(
    a: &PartialLinearSpace,
    b: &PartialLinearSpace,
    domains: Option<&[PointSet]>,
) -> Option<Vec<usize>> {
    let n = a.num_points();
    if n != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let order = search_order(a, domains);
    let mut search = Search {
        a,
        b,
        domains,
        order: &order,
        image: vec![usize::MAX; n],
        used: PointSet::new(n),
    };
    search.extend(0).then_some(search.image)
}

fn search_order(a: &PartialLinearSpace, domains: Option<&[PointSet]>) -> Vec<usize> {
    let n = a.num_points();
    let dom_size = |p: usize| domains.map_or(n, |d| d[p].len());
    let mut placed = PointSet::new(n);
    let mut score = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&p| !placed.contains(p))
            .min_by_key(|&p| (std::cmp::Reverse(score[p]), dom_size(p), p))
            .expect("unplaced point remains");
        placed.insert(next);
        order.push(next);
        for q in a.neighbours(next).iter() {
            score[q] += 1;
        }
    }
    order
}

struct Search<'a> {
    a: &'a PartialLinearSpace,
    b: &'a PartialLinearSpace,
    domains: Option<&'a [PointSet]>,
    order: &'a [usize],
    image: Vec<usize>,
    used: PointSet,
}

impl Search<'_> {
    fn candidates(&self, depth: usize) -> PointSet {
        let x = self.order[depth];
        let mut cand = match self.domains {
            Some(d) => d[x].clone(),
            None => PointSet::full(self.b.num_points()),
        };
        cand.difference_with(&self.used);
        for &prev in &self.order[..depth] {
            let img = self.image[prev];
            if self.a.collinear(x, prev) {
                cand.intersect_with(self.b.neighbours(img));
            } else {
                cand.difference_with(self.b.neighbours(img));
            }
            if cand.is_empty() {
                break;
            }
        }
        // Lines through x whose two other points are already placed force
        // the image outright.
        for &l in self.a.lines_through(x) {
            let others: Vec<usize> = self.a.line(l).into_iter().filter(|&p| p != x).collect();
            let (i0, i1) = (self.image[others[0]], self.image[others[1]]);
            if i0 != usize::MAX && i1 != usize::MAX {
                match self.b.star(i0, i1) {
                    Some(forced) if cand.contains(forced) => {
                        cand = PointSet::from_iter(self.b.num_points(), [forced]);
                    }
                    _ => return PointSet::new(self.b.num_points()),
                }
            }
        }
        cand
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in self.candidates(depth).to_vec() {
            self.image[x] = y;
            self.used.insert(y);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.remove(y);
            self.image[x] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn identity_on_self() {
        let g = grid();
        let iso = find_isomorphism(&g, &g).unwrap();
        assert_eq!(iso, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn relabelled_grid_found() {
        let g = grid();
        // swap rows and columns (transpose), then relabel
        let perm = [4usize, 7, 1, 8, 0, 3, 2, 5, 6];
        let lines = g.lines().iter().map(|l| l.map(|p| perm[p])).collect();
        let h = PartialLinearSpace::new("h", (0..9).map(|i| i.to_string()).collect(), lines);
        let iso = find_isomorphism(&g, &h).unwrap();
        assert!(is_line_preserving(&g, &h, &iso));
    }

    #[test]
    fn size_mismatch_is_none() {
        assert!(find_isomorphism(&grid(), &single_line()).is_none());
    }

    #[test]
    fn non_isomorphic_same_counts() {
        // Two disjoint lines vs two lines sharing a point (plus isolated pt).
        let a = PartialLinearSpace::new(
            "a",
            (0..6).map(|i| i.to_string()).collect(),
            vec![[0, 1, 2], [3, 4, 5]],
        );
        let b = PartialLinearSpace::new(
            "b",
            (0..6).map(|i| i.to_string()).collect(),
            vec![[0, 1, 2], [2, 3, 4]],
        );
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn domain_restricted_automorphism() {
        let g = grid();
        // Fix every row setwise and send 0 -> 1.
        let rows: Vec<PointSet> = (0..9)
            .map(|p| PointSet::from_iter(9, (0..3).map(|c| 3 * (p / 3) + c)))
            .collect();
        let mut dom = rows.clone();
        dom[0] = PointSet::from_iter(9, [1]);
        let auto = find_embedding(&g, &g, Some(&dom)).unwrap();
        assert_eq!(auto[0], 1);
        assert!(is_line_preserving(&g, &g, &auto));
        for p in 0..9 {
            assert_eq!(auto[p] / 3, p / 3);
        }
    }
}
