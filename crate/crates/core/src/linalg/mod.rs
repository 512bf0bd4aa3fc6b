//! Exact dense linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss) on integer rows; results are then
//! brought to reduced row echelon form so that a [`Subspace`] has exactly one
//! stored basis. Large ranks can be bounded from below with
//! [`modular::modular_rank`].

pub mod modular;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type Vector = Vec<Rational>;

/// A dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        echelon(self.rows_vec(), self.cols).pivots.len()
    }

    fn rows_vec(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as an iterator, row-major.
    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^n`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of arbitrary vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: v.len(),
                });
            }
        }
        let e = echelon(vectors, ambient);
        Ok(Subspace {
            ambient,
            basis: e.rref_rows(),
            pivots: e.pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // against a reduced basis the coefficients are read off the pivots
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &(-c), row);
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned().collect(),
        )
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch {
            left: a.ambient,
            right: b.ambient,
        });
    }
    Ok(())
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `y += a * x`
fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

/// `a ⊗ b` under the pairing `(i, j) -> i * b.len() + j`.
pub fn kron_vec(a: &[Rational], b: &[Rational]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if x.is_zero() || y.is_zero() {
                out.push(Rational::zero());
            } else {
                out.push(x * y);
            }
        }
    }
    out
}

struct Echelon {
    // integer row echelon form, rank rows
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Normalizes and back-substitutes to the reduced form.
    fn rref_rows(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = row[p].clone();
                row.iter()
                    .map(|x| {
                        if x.is_zero() {
                            Rational::zero()
                        } else {
                            Rational::new(x.clone(), lead.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        for k in (0..out.len()).rev() {
            let p = self.pivots[k];
            let (above, rest) = out.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let c = row[p].clone();
                if !c.is_zero() {
                    axpy(row, &(-c), pivot_row);
                }
            }
        }
        out
    }
}

/// Clears denominators of a rational row and removes the integer content.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    ints
}

/// Fraction-free (Bareiss) row echelon form.
fn echelon(rows: Vec<Vector>, ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let mut x = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    x -= &factor * &pivot_row[j];
                }
                if !prev.is_one() {
                    debug_assert!((&x % &prev).is_zero(), "Bareiss division must be exact");
                    x /= &prev;
                }
                row[j] = x;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    // keep the integers small before rational back-substitution
    for row in a.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() && !g.is_zero() {
            for x in row.iter_mut() {
                *x /= &g;
            }
        }
    }
    Echelon { rows: a, pivots }
}

/// Rank, kernel (in the domain) and image (in the codomain) of `m`.
pub fn rank_kernel_image(m: &RatMatrix) -> (usize, Subspace, Subspace) {
    let e = echelon(m.rows_vec(), m.cols);
    let rref = e.rref_rows();
    let rank = e.pivots.len();
    let mut kernel_vectors = Vec::with_capacity(m.cols - rank);
    let mut is_pivot = vec![false; m.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = unit_vector(m.cols, free);
        for (row, &p) in rref.iter().zip(&e.pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        kernel_vectors.push(v);
    }
    let kernel = Subspace::span(m.cols, kernel_vectors).expect("kernel vectors sized to domain");
    let image_vectors = e.pivots.iter().map(|&j| m.column(j)).collect();
    let image = Subspace::span(m.rows, image_vectors).expect("columns sized to codomain");
    debug_assert_eq!(image.dim(), rank);
    (rank, kernel, image)
}

/// Dimensions of `V + W` and `V ∩ W`, with an explicit intersection basis
/// (Zassenhaus).
pub fn lattice_dims(v: &Subspace, w: &Subspace) -> Result<(usize, usize, Subspace)> {
    check_ambient(v, w)?;
    let n = v.ambient;
    let zeros = vec![Rational::zero(); n];
    let rows: Vec<Vector> = v
        .basis
        .iter()
        .map(|b| b.iter().chain(b.iter()).cloned().collect())
        .chain(w.basis.iter().map(|b| b.iter().chain(zeros.iter()).cloned().collect()))
        .collect();
    let e = echelon(rows, 2 * n);
    let rref = e.rref_rows();
    let dim_sum = e.pivots.iter().filter(|&&p| p < n).count();
    let meet: Vec<Vector> = rref
        .into_iter()
        .zip(&e.pivots)
        .filter(|(_, &p)| p >= n)
        .map(|(row, _)| row[n..].to_vec())
        .collect();
    let intersection = Subspace::span(n, meet)?;
    let dim_int = v.dim() + w.dim() - dim_sum;
    if intersection.dim() != dim_int {
        return Err(Error::InternalMismatch(format!(
            "intersection basis has dimension {} but the dimension count gives {dim_int}",
            intersection.dim()
        )));
    }
    Ok((dim_sum, dim_int, intersection))
}

/// Incrementally built echelon set used for greedy extension.
pub(crate) struct GreedyBasis {
    rows: Vec<(Vector, usize)>,
}

impl GreedyBasis {
    pub(crate) fn new() -> Self {
        GreedyBasis { rows: Vec::new() }
    }

    /// Adds `v` if it is independent of what is already there.
    pub(crate) fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = v.to_vec();
        for (row, p) in &self.rows {
            let c = r[*p].clone();
            if !c.is_zero() {
                axpy(&mut r, &(-c), row);
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].recip();
                for x in r.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                self.rows.push((r, p));
                true
            }
        }
    }
}

/// A complement `C` of `inner` inside `outer`: `inner ⊕ C = outer`.
///
/// The choice is deterministic: `outer`'s stored basis vectors are tried in
/// order and kept whenever they raise the rank.
pub fn complement_basis(inner: &Subspace, outer: &Subspace) -> Result<Subspace> {
    check_ambient(inner, outer)?;
    if !outer.contains_subspace(inner) {
        return Err(Error::NotContained);
    }
    let mut greedy = GreedyBasis::new();
    for b in &inner.basis {
        greedy.insert(b);
    }
    let kept: Vec<Vector> = outer
        .basis
        .iter()
        .filter(|b| greedy.insert(b))
        .cloned()
        .collect();
    Subspace::span(outer.ambient, kept)
}

/// A solution `z` of `a z = b` with free variables set to zero, if any.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vector>> {
    if b.len() != a.rows {
        return Err(Error::LengthMismatch {
            expected: a.rows,
            got: b.len(),
        });
    }
    let rows: Vec<Vector> = (0..a.rows)
        .map(|i| a.row(i).iter().chain(std::iter::once(&b[i])).cloned().collect())
        .collect();
    let e = echelon(rows, a.cols + 1);
    if e.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut z = vec![Rational::zero(); a.cols];
    for (row, &p) in e.rref_rows().iter().zip(&e.pivots) {
        z[p] = row[a.cols].clone();
    }
    Ok(Some(z))
}

/// `(M1 ⊗ I + I ⊗ M2) v` without forming the Kronecker sum.
pub fn apply_kronecker_sum(m1: &RatMatrix, m2: &RatMatrix, v: &[Rational]) -> Vector {
    let (d1, d2) = (m1.rows, m2.rows);
    assert_eq!(v.len(), d1 * d2, "vector length must be d1 * d2");
    let mut out = vec![Rational::zero(); d1 * d2];
    for i in 0..d1 {
        for k in 0..d1 {
            let a = m1.get(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..d2 {
                let x = &v[k * d2 + j];
                if !x.is_zero() {
                    out[i * d2 + j] += a * x;
                }
            }
        }
    }
    for i in 0..d1 {
        let block = &v[i * d2..(i + 1) * d2];
        for (j, r) in m2.mul_vec(block).into_iter().enumerate() {
            if !r.is_zero() {
                out[i * d2 + j] += r;
            }
        }
    }
    out
}

/// `M1 ⊗ I + I ⊗ M2` under the row-major pairing `(i, j) -> i * d2 + j`.
pub fn kronecker_sum(m1: &RatMatrix, m2: &RatMatrix) -> Result<RatMatrix> {
    if !m1.is_square() || !m2.is_square() {
        return Err(Error::InvalidParameter("Kronecker sum needs square matrices".into()));
    }
    let (d1, d2) = (m1.rows, m2.rows);
    let n = d1 * d2;
    let mut out = RatMatrix::zeros(n, n);
    for i1 in 0..d1 {
        for j in 0..d2 {
            let row = i1 * d2 + j;
            for k1 in 0..d1 {
                let a = m1.get(i1, k1);
                if !a.is_zero() {
                    out.set(row, k1 * d2 + j, a.clone());
                }
            }
            for k2 in 0..d2 {
                let b = m2.get(j, k2);
                if !b.is_zero() {
                    let idx = row * n + i1 * d2 + k2;
                    out.data[idx] += b;
                }
            }
        }
    }
    Ok(out)
}

/// The image `M(D)` of a subspace of the domain.
pub fn image_of_restriction(m: &RatMatrix, d: &Subspace) -> Result<Subspace> {
    if d.ambient != m.cols {
        return Err(Error::AmbientMismatch {
            left: m.cols,
            right: d.ambient,
        });
    }
    Subspace::span(m.rows, d.basis.iter().map(|v| m.mul_vec(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn vecq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn nilpotent2() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 1], &[0, 0]])
    }

    #[test]
    fn zero_and_identity() {
        let (r, k, im) = rank_kernel_image(&RatMatrix::zeros(3, 3));
        assert_eq!((r, k.dim(), im.dim()), (0, 3, 0));
        assert_eq!(k, Subspace::full(3));
        let (r, k, im) = rank_kernel_image(&RatMatrix::identity(4));
        assert_eq!((r, k.dim(), im.dim()), (4, 0, 4));
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let (r, k, im) = rank_kernel_image(&m);
        assert_eq!(r, 2);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(im.contains(&vecq(&[1, 2, 0])));
        assert!(!im.contains(&vecq(&[1, 0, 0])));
    }

    #[test]
    fn canonical_storage() {
        let a = Subspace::span(3, vec![vecq(&[1, 1, 0]), vecq(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, vec![vecq(&[1, 2, 1]), vecq(&[2, 1, -1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn lattice() {
        let e1 = Subspace::span(2, vec![vecq(&[1, 0])]).unwrap();
        let e2 = Subspace::span(2, vec![vecq(&[0, 1])]).unwrap();
        let (s, i, meet) = lattice_dims(&e1, &e2).unwrap();
        assert_eq!((s, i, meet.dim()), (2, 0, 0));
        let (s, i, meet) = lattice_dims(&e1, &e1).unwrap();
        assert_eq!((s, i), (1, 1));
        assert_eq!(meet, e1);
        let v = Subspace::span(3, vec![vecq(&[1, 0, 0]), vecq(&[0, 1, 0])]).unwrap();
        let w = Subspace::span(3, vec![vecq(&[1, 1, 1]), vecq(&[0, 0, 1])]).unwrap();
        let (s, i, meet) = lattice_dims(&v, &w).unwrap();
        assert_eq!((s, i), (3, 1));
        assert_eq!(meet, Subspace::span(3, vec![vecq(&[1, 1, 0])]).unwrap());
        assert!(lattice_dims(&e1, &v).is_err());
    }

    #[test]
    fn complements() {
        let c = complement_basis(&Subspace::zero(3), &Subspace::full(3)).unwrap();
        assert_eq!(c, Subspace::full(3));
        let v = Subspace::span(3, vec![vecq(&[1, 1, 0])]).unwrap();
        assert!(complement_basis(&v, &v).unwrap().is_zero());
        let c = complement_basis(&v, &Subspace::full(3)).unwrap();
        assert_eq!(c, Subspace::span(3, vec![vecq(&[1, 0, 0]), vecq(&[0, 0, 1])]).unwrap());
        let e3 = Subspace::span(3, vec![vecq(&[0, 0, 1])]).unwrap();
        assert!(matches!(complement_basis(&e3, &v), Err(Error::NotContained)));
    }

    #[test]
    fn solving() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, 2], &[1, 2]]);
        assert_eq!(solve(&a, &vecq(&[1, 4, 5])).unwrap(), Some(vecq(&[1, 2])));
        assert_eq!(solve(&a, &vecq(&[1, 4, 4])).unwrap(), None);
        assert!(solve(&a, &vecq(&[1])).is_err());
    }

    #[test]
    fn kronecker_sum_action_matches_matrix() {
        let m1 = RatMatrix::from_i64(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let m2 = RatMatrix::from_i64(&[&[1, -1], &[2, 0]]);
        let f = kronecker_sum(&m1, &m2).unwrap();
        let v = vecq(&[1, -2, 3, 0, 5, 7]);
        assert_eq!(apply_kronecker_sum(&m1, &m2, &v), f.mul_vec(&v));
    }

    #[test]
    fn kronecker_sums() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(kronecker_sum(&z, &z).unwrap(), z);
        let m2 = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(kronecker_sum(&z, &m2).unwrap(), m2);

        // brute force: the 4x4 sum of two Jordan blocks J2
        let f = kronecker_sum(&nilpotent2(), &nilpotent2()).unwrap();
        let expected = RatMatrix::from_i64(&[
            &[0, 1, 1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(f, expected);
        let f2 = f.mul(&f);
        let f3 = f2.mul(&f);
        assert_eq!((f.rank(), f2.rank()), (2, 1));
        assert!(f3.is_zero());
        assert!(kronecker_sum(&RatMatrix::zeros(1, 2), &z).is_err());
    }

    #[test]
    fn restricted_images() {
        let n = nilpotent2();
        assert!(image_of_restriction(&n, &Subspace::zero(2)).unwrap().is_zero());
        let d = Subspace::span(2, vec![vecq(&[0, 1])]).unwrap();
        assert_eq!(image_of_restriction(&RatMatrix::identity(2), &d).unwrap(), d);
        let img = image_of_restriction(&n, &d).unwrap();
        assert_eq!(img, Subspace::span(2, vec![vecq(&[1, 0])]).unwrap());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |xs| {
                let rows = xs
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
                    .collect();
                RatMatrix::from_rows(rows).unwrap()
            })
        })
    }

    fn arb_nilpotent(max: usize) -> impl Strategy<Value = RatMatrix> {
        // strictly upper triangular in a random basis order is still nilpotent
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-2i64..3, n * n).prop_map(move |xs| {
                let mut m = RatMatrix::zeros(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        m.set(i, j, q(xs[i * n + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rank_nullity(m in arb_matrix(6)) {
            let (r, k, im) = rank_kernel_image(&m);
            prop_assert_eq!(r + k.dim(), m.cols());
            prop_assert_eq!(im.dim(), r);
            prop_assert_eq!(m.transpose().rank(), r);
        }

        #[test]
        fn complement_is_direct(a in arb_matrix(5), w in prop::collection::vec(-2i64..3, 25)) {
            let n = a.cols();
            let outer = Subspace::span(n, (0..a.rows()).map(|i| a.row(i).to_vec()).collect()).unwrap();
            // inner: random combinations of the outer basis
            let inner_vecs: Vec<Vector> = (0..outer.dim() / 2 + 1)
                .map(|k| {
                    let mut v = vec![Rational::zero(); n];
                    for (i, b) in outer.basis().iter().enumerate() {
                        axpy(&mut v, &q(w[(k * 5 + i) % 25]), b);
                    }
                    v
                })
                .collect();
            let inner = Subspace::span(n, inner_vecs).unwrap();
            let c = complement_basis(&inner, &outer).unwrap();
            prop_assert_eq!(c.dim() + inner.dim(), outer.dim());
            let (sum, meet, _) = lattice_dims(&c, &inner).unwrap();
            prop_assert_eq!(meet, 0);
            prop_assert_eq!(sum, outer.dim());
        }

        #[test]
        fn kronecker_sum_swaps_under_permutation(a in arb_matrix(3), b in arb_matrix(3)) {
            prop_assume!(a.is_square() && b.is_square());
            let (d1, d2) = (a.rows(), b.rows());
            let ab = kronecker_sum(&a, &b).unwrap();
            let ba = kronecker_sum(&b, &a).unwrap();
            let perm = |i: usize| (i % d2) * d1 + i / d2;
            for r in 0..d1 * d2 {
                for c in 0..d1 * d2 {
                    prop_assert_eq!(ab.get(r, c), ba.get(perm(r), perm(c)));
                }
            }
        }

        #[test]
        fn kronecker_sum_of_nilpotents_is_nilpotent(a in arb_nilpotent(6), b in arb_nilpotent(6)) {
            let f = kronecker_sum(&a, &b).unwrap();
            let mut power = f.clone();
            for _ in 1..(a.rows() + b.rows()) {
                power = power.mul(&f);
            }
            prop_assert!(power.is_zero());
        }
    }
}
