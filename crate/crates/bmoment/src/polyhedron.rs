//! Ordinary convex polyhedra `{x ∈ ℚ^d : a_i·x ≤ b_i}` with exact arithmetic.
//!
//! Two independent vertex enumerators are provided. [`Polyhedron::vertices_brute_force`]
//! solves every `d`-subset of constraints as equalities and keeps the feasible
//! solutions. [`Polyhedron::generators`] runs the double description method on
//! the homogenized cone and also yields recession rays and lineality.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, dot};
use crate::rational::{self, Rational};

/// `normal · x ≤ bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "rational::serde_rational_vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub bound: Rational,
}

impl Inequality {
    pub fn new(normal: Vec<Rational>, bound: Rational) -> Self {
        Self { normal, bound }
    }

    pub fn from_ints(normal: &[i64], bound: Rational) -> Self {
        Self::new(normal.iter().map(|&x| rational::int(x)).collect(), bound)
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.bound - dot(&self.normal, x)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// A vertex/ray/line description of a polyhedron.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Generators {
    /// Minimal points; genuine vertices only when `lines` is empty.
    pub points: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lines: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<Inequality>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Inequality>) -> Self {
        debug_assert!(constraints.iter().all(|c| c.normal.len() == dim));
        Self { dim, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Inequality] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// Number of constraints satisfied with equality at `x`.
    pub fn active_count(&self, x: &[Rational]) -> usize {
        self.constraints.iter().filter(|c| c.slack(x).is_zero()).count()
    }

    /// Vertices by exhaustive `d`-subset solving, sorted lexicographically.
    pub fn vertices_brute_force(&self) -> Vec<Vec<Rational>> {
        let d = self.dim;
        let mut found = BTreeSet::new();
        if d == 0 {
            if self.contains(&[]) {
                found.insert(Vec::new());
            }
            return found.into_iter().collect();
        }
        for subset in combinations(self.constraints.len(), d) {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| self.constraints[i].normal.clone()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| self.constraints[i].bound.clone()).collect();
            if let Some(x) = linalg::solve(&rows, &rhs) {
                if self.contains(&x) {
                    found.insert(x);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Vertices by the double description method, sorted lexicographically.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let g = self.generators();
        if g.lines.is_empty() {
            g.points
        } else {
            Vec::new()
        }
    }

    /// Full V-description from the double description method on the
    /// homogenized cone `{(x, t) : a·x − b·t ≤ 0, t ≥ 0}`.
    pub fn generators(&self) -> Generators {
        let n = self.dim + 1;
        let mut rows = Vec::with_capacity(self.constraints.len() + 1);
        let mut t_nonneg = vec![Rational::zero(); n];
        t_nonneg[self.dim] = rational::int(-1);
        rows.push(t_nonneg);
        for c in &self.constraints {
            let mut row = c.normal.clone();
            row.push(-c.bound.clone());
            rows.push(row);
        }
        let cone = double_description(n, &rows);
        let mut points = BTreeSet::new();
        let mut rays = BTreeSet::new();
        for r in cone.rays {
            let t = r[self.dim].clone();
            if t.is_positive() {
                points.insert(r[..self.dim].iter().map(|x| x / &t).collect::<Vec<_>>());
            } else {
                rays.insert(normalize(&r[..self.dim]));
            }
        }
        Generators {
            points: points.into_iter().collect(),
            rays: rays.into_iter().collect(),
            lines: cone.lines.into_iter().map(|l| l[..self.dim].to_vec()).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.generators().points.is_empty()
    }

    /// Extreme rays and lineality basis of `{y : a·y ≤ 0}`.
    pub fn recession_cone(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let rows: Vec<Vec<Rational>> = self.constraints.iter().map(|c| c.normal.clone()).collect();
        let cone = double_description(self.dim, &rows);
        let rays: BTreeSet<Vec<Rational>> = cone.rays.iter().map(|r| normalize(r)).collect();
        (rays.into_iter().collect(), cone.lines)
    }

    pub fn is_bounded(&self) -> bool {
        let (rays, lines) = self.recession_cone();
        rays.is_empty() && lines.is_empty()
    }

    pub fn with_constraint(&self, c: Inequality) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.push(c);
        Self::new(self.dim, constraints)
    }
}

/// Rays and lines of a polyhedral cone `{y : row·y ≤ 0}`.
pub(crate) struct Cone {
    pub rays: Vec<Vec<Rational>>,
    pub lines: Vec<Vec<Rational>>,
}

struct Ray {
    v: Vec<Rational>,
    tight: BTreeSet<usize>,
}

pub(crate) fn double_description(n: usize, rows: &[Vec<Rational>]) -> Cone {
    let mut lines: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = rational::int(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    for (ci, a) in rows.iter().enumerate() {
        if let Some(li) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut pivot = lines.remove(li);
            if dot(a, &pivot).is_positive() {
                pivot = pivot.iter().map(|x| -x).collect();
            }
            let ap = dot(a, &pivot);
            for l in lines.iter_mut() {
                let f = dot(a, l) / &ap;
                if !f.is_zero() {
                    sub_scaled(l, &f, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &ap;
                if !f.is_zero() {
                    sub_scaled(&mut r.v, &f, &pivot);
                }
                r.v = normalize(&r.v);
                r.tight.insert(ci);
            }
            rays.push(Ray {
                v: normalize(&pivot),
                tight: (0..ci).collect(),
            });
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        let min_common = n.saturating_sub(lines.len()).saturating_sub(2);
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> = rays[p].tight.intersection(&rays[q].tight).copied().collect();
                if common.len() < min_common {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                let sp = &values[p];
                let sq = -&values[q];
                let v: Vec<Rational> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| sp * x + &sq * y)
                    .collect();
                let mut tight = common;
                tight.insert(ci);
                next.push(Ray { v: normalize(&v), tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_positive() {
                continue;
            }
            if values[i].is_zero() {
                r.tight.insert(ci);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }
    Cone {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lines,
    }
}

fn sub_scaled(v: &mut [Rational], f: &Rational, w: &[Rational]) {
    for (x, y) in v.iter_mut().zip(w) {
        *x -= f * y;
    }
}

/// Positive rescaling to a primitive integer vector.
fn normalize(v: &[Rational]) -> Vec<Rational> {
    match linalg::primitive_direction(v) {
        Some(p) => p.into_iter().map(Rational::from_integer).collect(),
        None => v.to_vec(),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ineq(n: &[i64], b: i64) -> Inequality {
        Inequality::from_ints(n, int(b))
    }

    fn pt(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unit_square() {
        let p = Polyhedron::new(2, vec![ineq(&[1, 0], 1), ineq(&[-1, 0], 0), ineq(&[0, 1], 1), ineq(&[0, -1], 0)]);
        let expected = vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])];
        assert_eq!(p.vertices_brute_force(), expected);
        assert_eq!(p.vertices(), expected);
        assert!(p.is_bounded());
        assert!(!p.is_empty());
    }

    #[test]
    fn half_line_has_one_vertex_and_one_ray() {
        let p = Polyhedron::new(1, vec![ineq(&[-1], 0)]);
        let g = p.generators();
        assert_eq!(g.points, vec![pt(&[0])]);
        assert_eq!(g.rays, vec![pt(&[1])]);
        assert!(g.lines.is_empty());
        assert_eq!(p.recession_cone(), (vec![pt(&[1])], vec![]));
    }

    #[test]
    fn strip_has_lineality_and_no_vertices() {
        let p = Polyhedron::new(2, vec![ineq(&[1, 0], 1), ineq(&[-1, 0], 0)]);
        assert!(p.vertices().is_empty());
        assert!(p.vertices_brute_force().is_empty());
        let (rays, lines) = p.recession_cone();
        assert!(rays.is_empty());
        assert_eq!(lines.len(), 1);
        assert!(!p.is_empty());
    }

    #[test]
    fn infeasible_system_is_empty() {
        let p = Polyhedron::new(1, vec![ineq(&[1], -1), ineq(&[-1], 0)]);
        assert!(p.is_empty());
        assert!(p.vertices().is_empty());
    }

    #[test]
    fn redundant_constraints_do_not_duplicate_vertices() {
        let p = Polyhedron::new(
            2,
            vec![ineq(&[1, 0], 1), ineq(&[-1, 0], 0), ineq(&[0, 1], 1), ineq(&[0, -1], 0), ineq(&[1, 1], 2), ineq(&[1, 1], 5)],
        );
        assert_eq!(p.vertices(), p.vertices_brute_force());
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn triangle_with_rational_vertex() {
        let p = Polyhedron::new(2, vec![ineq(&[-1, 0], 0), ineq(&[0, -1], 0), ineq(&[2, 3], 1)]);
        let expected = vec![pt(&[0, 0]), vec![int(0), rat(1, 3)], vec![rat(1, 2), int(0)]];
        assert_eq!(p.vertices_brute_force(), expected);
        assert_eq!(p.vertices(), expected);
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut cs = Vec::new();
        for i in 0..3 {
            let mut e = [0i64; 3];
            e[i] = 1;
            cs.push(ineq(&e, 1));
            e[i] = -1;
            cs.push(ineq(&e, 1));
        }
        let p = Polyhedron::new(3, cs);
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.vertices(), p.vertices_brute_force());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
