use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use super::criteria::{same_distance_symmetry, SameDistance};
use super::{Config, ElekesError};
use crate::algebra::Scalar;
use crate::curves::{PlaneCurve, Point};
use crate::symmetry::{find_symmetries_with, SymmetryBudget, SymmetryList, Unrepresentable};

pub type Pair = (usize, usize);

/// One side of the partition: pairs of points of one set, classified with
/// the symmetries of the other curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePartition {
    /// Pairs `(i, j)` such that some symmetry of the host maps `p_i ↦ p_j`.
    pub gamma0: BTreeSet<Pair>,
    /// Nonempty color classes of the remaining pairs.
    pub classes: Vec<Vec<Pair>>,
    /// Edges of the conflict graph: equal distances plus a witnessing
    /// symmetry.
    pub conflicts: Vec<(Pair, Pair)>,
    /// `d⁴ + 1`.
    pub max_classes: BigUint,
}

impl SidePartition {
    pub fn within_bound(&self) -> bool {
        BigUint::from(self.classes.len()) <= self.max_classes
    }

    /// Class index of every pair outside `Γ₀`.
    pub fn class_of(&self) -> BTreeMap<Pair, usize> {
        self.classes.iter().enumerate().flat_map(|(c, ps)| ps.iter().map(move |p| (*p, c))).collect()
    }
}

/// `Γ₀, Γ₁, …` from pairs of `S₁` against `C₂`, and `P₀, P₁, …` from pairs
/// of `S₂` against `C₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub gamma: SidePartition,
    pub points: SidePartition,
}

pub fn partition(config: &Config) -> Result<Partition, ElekesError> {
    partition_with(config, &SymmetryBudget::default())
}

pub fn partition_with(config: &Config, budget: &SymmetryBudget) -> Result<Partition, ElekesError> {
    let d = config.degree();
    let s1: Vec<Point> = config.s1().coords().cloned().collect();
    let s2: Vec<Point> = config.s2().coords().cloned().collect();
    Ok(Partition { gamma: side(&s1, config.c2(), d, budget)?, points: side(&s2, config.c1(), d, budget)? })
}

fn side(points: &[Point], host: &PlaneCurve, d: u32, budget: &SymmetryBudget) -> Result<SidePartition, ElekesError> {
    let gamma0 = respected_pairs(points, host, budget)?;
    let m = points.len();
    let rest: Vec<Pair> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|p| !gamma0.contains(p)).collect();
    let mut edges = Vec::new();
    let mut adjacency = Vec::new();
    for (a, &(i, j)) in rest.iter().enumerate() {
        for (b, &(k, l)) in rest.iter().enumerate().skip(a + 1) {
            if points[i] == points[k] || points[i].dist2(&points[k]) != points[j].dist2(&points[l]) {
                continue;
            }
            if let SameDistance::SymmetryFound(_) = same_distance_symmetry(host, &points[i], &points[j], &points[k], &points[l])? {
                edges.push(((i, j), (k, l)));
                adjacency.push((a, b));
            }
        }
    }
    let colors = greedy_coloring(rest.len(), &adjacency);
    let ncolors = colors.iter().max().map_or(0, |c| c + 1);
    let mut classes = vec![Vec::new(); ncolors];
    for (v, c) in colors.into_iter().enumerate() {
        classes[c].push(rest[v]);
    }
    Ok(SidePartition { gamma0, classes, conflicts: edges, max_classes: BigUint::from(d).pow(4) + 1u32 })
}

/// Pairs `(i, j)` with `T(p_i) = p_j` for a symmetry `T` of `host`.
fn respected_pairs(points: &[Point], host: &PlaneCurve, budget: &SymmetryBudget) -> Result<BTreeSet<Pair>, ElekesError> {
    let m = points.len();
    let mut out = BTreeSet::new();
    // lines and circles: the symmetry group acts transitively on each level
    // set of the distance to the line or center
    let level: Option<Box<dyn Fn(&Point) -> Scalar>> = if let Some((a, b, c)) = host.line_coeffs() {
        Some(Box::new(move |p: &Point| {
            let v = &(&(&a * &p.x) + &(&b * &p.y)) + &c;
            &v * &v
        }))
    } else {
        host.circle().map(|(o, _)| Box::new(move |p: &Point| p.dist2(&o)) as Box<dyn Fn(&Point) -> Scalar>)
    };
    if let Some(level) = level {
        let ls: Vec<Scalar> = points.iter().map(|p| level(p)).collect();
        for i in 0..m {
            for j in 0..m {
                if ls[i] == ls[j] {
                    out.insert((i, j));
                }
            }
        }
        return Ok(out);
    }
    let index: BTreeMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    match find_symmetries_with(host, budget)? {
        SymmetryList::Finite { group, unrepresentable } => {
            for t in &group {
                for (i, p) in points.iter().enumerate() {
                    if let Some(&j) = index.get(&t.apply(p)) {
                        out.insert((i, j));
                    }
                }
            }
            for u in &unrepresentable {
                for (i, p) in points.iter().enumerate() {
                    for (j, q) in points.iter().enumerate() {
                        if box_image_contains(u, p, q) {
                            out.insert((i, j));
                        }
                    }
                }
            }
        }
        SymmetryList::InfiniteFamily { .. } => unreachable!("lines and circles handled above"),
    }
    Ok(out)
}

/// Conservative: `q` lies in the interval image of `p`.
fn box_image_contains(u: &Unrepresentable, p: &Point, q: &Point) -> bool {
    let (Some(px), Some(py), Some(qx), Some(qy)) = (p.x.as_rational(), p.y.as_rational(), q.x.as_rational(), q.y.as_rational())
    else {
        return true;
    };
    let sigma = num_rational::BigRational::from_integer(u.sigma.into());
    // A = [[c, -σ s], [s, σ c]]
    let ix = u.c.scale(px).sub(&u.s.scale(&(&sigma * py))).add(&u.translation[0]);
    let iy = u.s.scale(px).add(&u.c.scale(&(&sigma * py))).add(&u.translation[1]);
    ix.contains(qx) && iy.contains(qy)
}

/// Colors vertices `0..n` in index order with the smallest color unused by
/// an earlier neighbor.
pub fn greedy_coloring(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let used: BTreeSet<usize> = adj[v].iter().filter_map(|&w| color[w]).collect();
        color[v] = Some((0..).find(|c| !used.contains(c)).unwrap());
    }
    color.into_iter().map(|c| c.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::PointSet;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn path_needs_two_colors() {
        let c = greedy_coloring(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(c, vec![0, 1, 0, 1, 0]);
        assert_eq!(greedy_coloring(3, &[]), vec![0, 0, 0]);
    }

    #[test]
    fn cubic_gamma0() {
        let c1 = PlaneCurve::parse("y - x^2").unwrap();
        let c2 = PlaneCurve::parse("y - x^3").unwrap();
        // the half-turn of C2 sends (1,1) to (-1,-1), which is not in S1
        let s1 = PointSet::from_points(c1, pts(&[(0, 0), (1, 1), (-1, 1), (2, 4)])).unwrap();
        let s2 = PointSet::from_points(c2.clone(), pts(&[(1, 1), (2, 8), (-1, -1)])).unwrap();
        let cfg = Config::new(s1, s2);
        let p = partition(&cfg).unwrap();
        let m = cfg.m();
        // only the identity and the half-turn; the half-turn fixes (0,0)
        let expect: BTreeSet<Pair> = (0..m).map(|i| (i, i)).collect();
        assert_eq!(p.gamma.gamma0, expect);
        assert!(p.gamma.gamma0.len() <= 4 * 3 * m);
        assert!(p.gamma.conflicts.is_empty());
        assert_eq!(p.gamma.classes.len(), 1);
        assert_eq!(p.gamma.classes[0].len(), m * m - m);
        assert!(p.gamma.within_bound());
        // dual side: C1 = parabola, symmetric under x ↦ -x
        assert!(p.points.gamma0.contains(&(0, 0)));
    }

    #[test]
    fn dual_side_uses_reflection() {
        let c1 = PlaneCurve::parse("y - x^2").unwrap();
        let c2 = PlaneCurve::parse("y - x^3").unwrap();
        let s1 = PointSet::from_points(c1, pts(&[(0, 0), (3, 9)])).unwrap();
        let s2 = PointSet::from_points(c2, pts(&[(1, 1), (-1, -1), (2, 8)])).unwrap();
        let p = partition(&Config::new(s1, s2)).unwrap();
        // pairs of S2 against the parabola: only identity pairs
        let ids: BTreeSet<Pair> = (0..3).map(|i| (i, i)).collect();
        assert_eq!(p.points.gamma0, ids);
        // pairs of S1 against the cubic: the half-turn maps none of them
        assert_eq!(p.gamma.gamma0, [(0, 0), (1, 1)].into_iter().collect());
    }

    #[test]
    fn circle_host_levels() {
        let c1 = PlaneCurve::parse("y").unwrap();
        let c2 = PlaneCurve::parse("x^2 + y^2 - 1").unwrap();
        let s1 = PointSet::from_points(c1, pts(&[(2, 0), (-2, 0), (3, 0)])).unwrap();
        let s2 = PointSet::from_points(c2, pts(&[(1, 0), (0, 1)])).unwrap();
        let p = partition(&Config::new(s1, s2)).unwrap();
        assert!(p.gamma.gamma0.contains(&(0, 1)) && p.gamma.gamma0.contains(&(1, 0)));
        assert!(!p.gamma.gamma0.contains(&(0, 2)));
        assert!(p.gamma.conflicts.is_empty());
    }
}
