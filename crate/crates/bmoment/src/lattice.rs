//! Exact linear algebra on the Lie algebra `t ≅ ℚ^k`, its integer lattice
//! `ℤ^k`, and the dual `t*`.
//!
//! Lattice vectors live in `t` and carry integer coordinates; covectors live in
//! `t*` and carry exact rational coordinates. Nothing in this module rounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero covector has no primitive complement")]
    NoComplement,
    #[error("lattice dimension must be at least 1")]
    EmptyDimension,
    #[error("integer overflow while reducing lattice coordinates")]
    Overflow,
}

/// An element of the integer lattice `ℤ^k ⊂ t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![0; dim] }
    }

    /// The `i`-th standard basis vector of `ℤ^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = 1;
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// `true` when the gcd of the coordinates is one.
    pub fn is_primitive(&self) -> bool {
        self.coords.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(|&x| rational::int(x)).collect()
    }

    pub(crate) fn scaled_add(&self, a: i64, other: &Self, b: i64) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An element of `t*` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector {
    #[serde(with = "rational::serde_rational_vec")]
    coords: Vec<Rational>,
}

impl Covector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.coords)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coords.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|x| -x).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }

    /// If `self = λ·other` for some rational `λ`, returns `λ`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.dim() != other.dim() || other.is_zero() {
            return None;
        }
        let pivot = other.coords.iter().position(|x| !x.is_zero())?;
        let lambda = &self.coords[pivot] / &other.coords[pivot];
        let matches = self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| *a == &lambda * b);
        matches.then_some(lambda)
    }

    /// The primitive integer covector that is a positive multiple of `self`.
    pub fn primitive_ray(&self) -> Option<Vec<i64>> {
        crate::linalg::primitive_direction(&self.coords)
            .map(|v| v.iter().map(|x| x.to_i64().expect("ray coordinate fits i64")).collect())
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A saturated sublattice `t_v ∩ ℤ^k` cut out by a single covector `v`.
///
/// The basis is kept in Hermite normal form (row echelon, positive pivots,
/// entries above each pivot reduced), so two kernel lattices are equal exactly
/// when their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelLattice {
    basis: Vec<LatticeVector>,
    ambient_dim: usize,
}

impl KernelLattice {
    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates `α` with `x = Σ α_j b_j`, if `x` lies in the rational span.
    /// For a lattice vector of the kernel the coordinates are integers.
    pub fn coordinates_of(&self, x: &LatticeVector) -> Option<Vec<Rational>> {
        if x.dim() != self.ambient_dim {
            return None;
        }
        if self.basis.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        // Echelon form: solve pivot by pivot, then confirm the remainder vanishes.
        let mut rest: Vec<Rational> = x.to_rationals();
        let mut alpha = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = b.coords.iter().position(|&c| c != 0).expect("nonzero basis vector");
            let a = &rest[p] / rational::int(b.coords[p]);
            for (r, &c) in rest.iter_mut().zip(&b.coords) {
                *r -= &a * rational::int(c);
            }
            alpha.push(a);
        }
        rational::is_zero_vec(&rest).then_some(alpha)
    }

    /// `true` when the lattice vector lies in the kernel.
    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.coordinates_of(x)
            .is_some_and(|a| a.iter().all(|c| c.is_integer()))
    }

    /// Restricts a covector to the kernel: `η_j = ⟨b_j, ξ⟩`.
    pub fn restrict(&self, xi: &Covector) -> Result<Covector, LatticeError> {
        let coords = self
            .basis
            .iter()
            .map(|b| pairing(b, xi))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Covector::new(coords))
    }
}

/// `⟨X, ξ⟩ = Σ X_i ξ_i`, exactly.
pub fn pairing(x: &LatticeVector, xi: &Covector) -> Result<Rational, LatticeError> {
    if x.dim() != xi.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: x.dim(),
            found: xi.dim(),
        });
    }
    Ok(x
        .coords
        .iter()
        .zip(&xi.coords)
        .filter(|(a, _)| **a != 0)
        .fold(Rational::zero(), |acc, (a, b)| acc + b * rational::int(*a)))
}

/// Scales a rational covector to a primitive integer vector (same direction).
fn primitive_integer_normal(v: &Covector) -> Result<Option<Vec<i64>>, LatticeError> {
    match crate::linalg::primitive_direction(v.coords()) {
        None => Ok(None),
        Some(big) => big
            .iter()
            .map(|x| x.to_i64().ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

/// Smith reduction of the `1 × k` integer matrix `a`: returns `(g, U)` with
/// `U` unimodular (columns stored as vectors) and `a·U = (g, 0, …, 0)`,
/// `g = gcd(a) ≥ 0`.
pub(crate) fn smith_row(a: &[i64]) -> Result<(i64, Vec<LatticeVector>), LatticeError> {
    let k = a.len();
    let mut cols: Vec<LatticeVector> = (0..k).map(|i| LatticeVector::unit(k, i)).collect();
    let mut head = a.first().copied().unwrap_or(0);
    for i in 1..k {
        let ai = a[i];
        if ai == 0 {
            continue;
        }
        let egcd = head.extended_gcd(&ai);
        let (g, x, y) = (egcd.gcd, egcd.x, egcd.y);
        let (p, q) = (ai / g, head / g);
        // [x, -p; y, q] has determinant x·q + y·p = 1.
        let new_head = cols[0].scaled_add(x, &cols[i], y);
        let new_i = cols[0].scaled_add(-p, &cols[i], q);
        if new_head.coords.iter().chain(&new_i.coords).any(|c| c.unsigned_abs() > (1 << 40)) {
            return Err(LatticeError::Overflow);
        }
        cols[0] = new_head;
        cols[i] = new_i;
        head = g;
    }
    if head < 0 {
        head = -head;
        cols[0] = LatticeVector::new(cols[0].coords.iter().map(|c| -c).collect());
    }
    Ok((head, cols))
}

/// Row-style Hermite normal form of a set of linearly independent lattice vectors.
pub(crate) fn hermite_normal_form(vectors: Vec<LatticeVector>) -> Vec<LatticeVector> {
    let Some(first) = vectors.first() else {
        return vectors;
    };
    let k = first.dim();
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.coords.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut r = 0;
    for col in 0..k {
        if r == rows.len() {
            break;
        }
        // Euclid on the column below r until a single nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let min = *nonzero
                .iter()
                .min_by_key(|&&i| rows[i][col].abs())
                .expect("nonempty");
            rows.swap(r, min);
            let mut done = true;
            for i in r + 1..rows.len() {
                if !rows[i][col].is_zero() {
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    for j in 0..k {
                        let d = &q * &rows[r][j];
                        rows[i][j] -= d;
                    }
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                for j in 0..k {
                    let d = &q * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    rows.into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| LatticeVector::new(row.iter().map(|x| x.to_i64().expect("HNF entry fits i64")).collect()))
        .collect()
}

/// Basis of `{X ∈ ℤ^k : ⟨X, v⟩ = 0}`; the full standard basis when `v = 0`.
pub fn kernel_lattice(v: &Covector) -> Result<KernelLattice, LatticeError> {
    let k = v.dim();
    if k == 0 {
        return Err(LatticeError::EmptyDimension);
    }
    let basis = match primitive_integer_normal(v)? {
        None => (0..k).map(|i| LatticeVector::unit(k, i)).collect(),
        Some(a) => {
            let (_, cols) = smith_row(&a)?;
            hermite_normal_form(cols[1..].to_vec())
        }
    };
    Ok(KernelLattice { basis, ambient_dim: k })
}

/// Primitive `X` with `⟨X, v⟩ > 0` completing any basis of `kernel_lattice(v)`
/// to a basis of `ℤ^k`.
///
/// Among all valid choices, returns the one with the smallest coordinate
/// `ℓ¹` norm, ties broken by lexicographic order.
pub fn primitive_complement(v: &Covector) -> Result<LatticeVector, LatticeError> {
    let a = primitive_integer_normal(v)?.ok_or(LatticeError::NoComplement)?;
    // Valid complements are exactly the integer solutions of ⟨X, a⟩ = 1.
    let (g, cols) = smith_row(&a)?;
    debug_assert_eq!(g, 1);
    let bound: i64 = cols[0].coords.iter().map(|c| c.abs()).sum();
    for norm in 1..=bound {
        let mut found = None;
        let mut buf = Vec::with_capacity(a.len());
        visit_sphere(a.len(), norm, &mut buf, &mut |x| {
            if found.is_none() && x.iter().zip(&a).map(|(p, q)| p * q).sum::<i64>() == 1 {
                found = Some(x.to_vec());
            }
            found.is_some()
        });
        if let Some(x) = found {
            return Ok(LatticeVector::new(x));
        }
    }
    Ok(cols[0].clone())
}

// Visits integer vectors of the given ℓ¹ norm in increasing lexicographic
// order; stops once `f` returns true.
fn visit_sphere(dim: usize, norm: i64, buf: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    if dim == 0 {
        return norm == 0 && f(buf);
    }
    if dim == 1 {
        let choices: &[i64] = if norm == 0 { &[0] } else { &[-norm, norm] };
        for &c in choices {
            buf.push(c);
            let stop = f(buf);
            buf.pop();
            if stop {
                return true;
            }
        }
        return false;
    }
    for x in -norm..=norm {
        buf.push(x);
        let stop = visit_sphere(dim - 1, norm - x.abs(), buf, f);
        buf.pop();
        if stop {
            return true;
        }
    }
    false
}

/// `true` when `basis ∪ {x}` is a `ℤ`-basis of `ℤ^k` (determinant `±1`).
pub fn is_unimodular_completion(basis: &[LatticeVector], x: &LatticeVector) -> bool {
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .chain(std::iter::once(x))
        .map(|v| v.coords.clone())
        .collect();
    if rows.len() != x.dim() {
        return false;
    }
    crate::linalg::det_integer(&rows).abs().is_one()
}

/// The unique `ξ` with `⟨b_j, ξ⟩ = η_j` and `⟨x, ξ⟩ = r`.
pub(crate) fn reconstruct(
    kernel: &KernelLattice,
    x: &LatticeVector,
    eta: &Covector,
    r: &Rational,
) -> Option<Covector> {
    let rows: Vec<Vec<Rational>> = kernel
        .basis
        .iter()
        .chain(std::iter::once(x))
        .map(LatticeVector::to_rationals)
        .collect();
    let mut rhs: Vec<Rational> = eta.coords().to_vec();
    rhs.push(r.clone());
    crate::linalg::solve(&rows, &rhs).map(Covector::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn cv(c: &[i64]) -> Covector {
        Covector::from_ints(c)
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&lv(&[1, 0]), &cv(&[3, 5])).unwrap(), int(3));
        assert_eq!(pairing(&lv(&[0, 0]), &cv(&[7, -2])).unwrap(), int(0));
        assert_eq!(pairing(&lv(&[2, 1]), &cv(&[1, -2])).unwrap(), int(0));
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        assert_eq!(
            pairing(&lv(&[1, 0, 0]), &cv(&[1, 2])),
            Err(LatticeError::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_lattice(&cv(&[1, 0])).unwrap().basis(), &[lv(&[0, 1])]);
        assert_eq!(kernel_lattice(&cv(&[2, 4])).unwrap().basis(), &[lv(&[2, -1])]);
        assert_eq!(kernel_lattice(&cv(&[0, 0])).unwrap().basis(), &[lv(&[1, 0]), lv(&[0, 1])]);
        assert_eq!(kernel_lattice(&cv(&[0, 5])).unwrap().basis(), &[lv(&[1, 0])]);
    }

    #[test]
    fn kernel_of_rational_covector() {
        let v = Covector::new(vec![rat(1, 2), rat(-1, 3)]);
        assert_eq!(kernel_lattice(&v).unwrap().basis(), &[lv(&[2, 3])]);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(primitive_complement(&cv(&[1, 0])).unwrap(), lv(&[1, 0]));
        assert_eq!(primitive_complement(&cv(&[0, 3])).unwrap(), lv(&[0, 1]));
        // ℓ¹-then-lex choice; (-1,1) is also a valid complement of (2,4).
        let x = primitive_complement(&cv(&[2, 4])).unwrap();
        assert_eq!(x, lv(&[1, 0]));
        let kernel = kernel_lattice(&cv(&[2, 4])).unwrap();
        for candidate in [lv(&[1, 0]), lv(&[-1, 1])] {
            assert_eq!(pairing(&candidate, &cv(&[2, 4])).unwrap(), int(2));
            assert!(is_unimodular_completion(kernel.basis(), &candidate));
        }
    }

    #[test]
    fn complement_of_zero_is_an_error() {
        assert_eq!(primitive_complement(&cv(&[0, 0])), Err(LatticeError::NoComplement));
    }

    #[test]
    fn complement_pairs_positively_with_negative_covector() {
        let x = primitive_complement(&cv(&[-3])).unwrap();
        assert_eq!(x, lv(&[-1]));
    }

    #[test]
    fn restriction_and_reconstruction() {
        let v = cv(&[2, 4]);
        let kernel = kernel_lattice(&v).unwrap();
        let x = lv(&[-1, 1]);
        let xi = cv(&[1, 1]);
        let eta = kernel.restrict(&xi).unwrap();
        assert_eq!(eta, cv(&[1]));
        let r = pairing(&x, &xi).unwrap();
        assert_eq!(r, int(0));
        assert_eq!(reconstruct(&kernel, &x, &eta, &r).unwrap(), xi);
    }

    #[test]
    fn kernel_membership() {
        let kernel = kernel_lattice(&cv(&[1, 1, 0])).unwrap();
        assert!(kernel.contains(&lv(&[3, -3, 7])));
        assert!(!kernel.contains(&lv(&[1, 0, 0])));
        assert_eq!(kernel.coordinates_of(&lv(&[3, -3, 7])).unwrap().len(), 2);
    }

    #[test]
    fn primitivity() {
        assert!(lv(&[2, -1]).is_primitive());
        assert!(!lv(&[2, 4]).is_primitive());
        assert!(!lv(&[0, 0]).is_primitive());
    }
}
