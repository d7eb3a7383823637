//! Dense exact linear algebra over the prime fields F_p.
//!
//! Everything downstream (homomorphism spaces, homology, endomorphism
//! algebras) bottoms out in row reduction over F_p, so the representation is
//! kept blunt: a matrix is a row-major `Vec<u64>` of canonical residues
//! together with its modulus.  The modulus is capped at 2^31 - 1 so a product
//! of two residues fits in a `u64` without any overflow tricks.
//!
//! Matrices of different characteristic must never meet; the characteristic
//! is fixed once per algebra and mixing is a programming error, so the
//! arithmetic here panics on a modulus mismatch instead of returning errors.

use std::fmt;

/// Largest admissible modulus.  Products of residues stay below 2^62.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Deterministic primality test by trial division; p is at most 2^31 - 1 so
/// the divisor loop is cheap and avoids any probabilistic machinery.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn fp_neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn fp_pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse via Fermat; `a` must be nonzero mod p.
pub fn fp_inv(p: u64, a: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    fp_pow(p, a, p - 2)
}

/// Row-major matrix over F_p.  Vectors are columns: `m.mul(&v)` applies the
/// map, and composition of maps is matrix product in the usual order.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of full row reduction.
pub struct Rref {
    pub rank: usize,
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Mat {
        assert!(p >= 2 && p <= MAX_PRIME, "modulus {p} out of range");
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Mat {
        let mut m = Mat::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mat::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = v % p;
            }
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Mat {
        let mut m = Mat::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn col_vec(p: u64, v: &[u64]) -> Mat {
        Mat::from_fn(p, v.len(), 1, |i, _| v[i])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.p, self.cols, self.rows, |i, j| self.at(j, i))
    }

    fn check_same_field(&self, other: &Mat) {
        assert_eq!(self.p, other.p, "characteristic mismatch: {} vs {}", self.p, other.p);
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in add");
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = fp_add(self.p, *a, b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in sub");
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = fp_sub(self.p, *a, b);
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = fp_neg(self.p, *a);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Mat {
        let c = c % self.p;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * c % self.p;
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Mat::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.at(k, j)) % self.p;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: usize) -> Mat {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut acc = Mat::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// [self | other] side by side.
    pub fn hstack(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        Mat::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j)
            } else {
                other.at(i, j - self.cols)
            }
        })
    }

    /// self on top of other.
    pub fn vstack(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        Mat::from_fn(self.p, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j)
            } else {
                other.at(i - self.rows, j)
            }
        })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        Mat::from_fn(self.p, self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j)
            } else if i >= self.rows && j >= self.cols {
                other.at(i - self.rows, j - self.cols)
            } else {
                0
            }
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.p, r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j))
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.at(r, j), m.at(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = fp_inv(p, m.at(r, c));
            for j in c..m.cols {
                let v = m.at(r, j) * inv % p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.at(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = fp_sub(p, m.at(i, j), f * m.at(r, j) % p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, returned as rows.  The row count is
    /// always cols - rank.
    pub fn kernel_basis(&self) -> Mat {
        let Rref { rank, reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(self.p, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, fp_neg(self.p, reduced.at(ri, fc)));
            }
        }
        debug_assert_eq!(out.rows, self.cols - rank);
        out
    }

    /// Basis of the row space: the nonzero rows of the rref.
    pub fn row_space_basis(&self) -> Mat {
        let Rref { rank, reduced, .. } = self.rref();
        reduced.submatrix(0, rank, 0, self.cols)
    }

    /// Basis of the column space, as rows of the result.
    pub fn column_space_basis(&self) -> Mat {
        self.transpose().row_space_basis()
    }

    /// Any solution x of self * x = rhs, or None if the system is
    /// inconsistent.  rhs may have several columns; shapes must agree.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        self.check_same_field(rhs);
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve: {} rows vs {} rows", self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots, rank } = aug.rref();
        // A pivot inside the rhs block means some equation reads 0 = 1.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.p, self.cols, rhs.cols);
        for (ri, &pc) in pivots.iter().take(rank).enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.at(ri, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let x = self.solve(&Mat::identity(self.p, self.rows))?;
        if self.mul(&x) == Mat::identity(self.p, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// self^k = 0 for some k <= rows.  A nilpotent n x n matrix is dead by
    /// its n-th power, so one `pow` decides it.
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols, "nilpotency of non-square matrix");
        self.pow(self.rows).is_zero()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A subspace of F_p^n held as a reduced row basis, supporting membership
/// tests and coordinate extraction against that basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning_rows(m: &Mat) -> Subspace {
        let Rref { rank, reduced, pivots } = m.rref();
        Subspace { basis: reduced.submatrix(0, rank, 0, m.cols()), pivots }
    }

    pub fn zero(p: u64, ambient: usize) -> Subspace {
        Subspace { basis: Mat::zero(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Coordinates of the row vector v against the reduced basis, or None if
    /// v lies outside the subspace.  Reduced rows make this a read-off: the
    /// candidate coordinates are the entries of v at the pivot columns.
    pub fn coords_row(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient());
        let p = self.basis.modulus();
        let coords: Vec<u64> = self.pivots.iter().map(|&c| v[c] % p).collect();
        for j in 0..self.ambient() {
            let mut acc = 0;
            for (i, &ci) in coords.iter().enumerate() {
                acc = fp_add(p, acc, ci * self.basis.at(i, j) % p);
            }
            if acc != v[j] % p {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains_row(&self, v: &[u64]) -> bool {
        self.coords_row(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_row(other.basis.row(i)))
    }
}

/// Grow a basis one vector at a time while remembering how dependent vectors
/// sit over the raw insertion order.  This is the workhorse behind spanning
/// closures (radical powers, invariant subspaces) and the characteristic
/// polynomial below.
pub struct IncrementalBasis {
    p: u64,
    ambient: usize,
    // Reduced rows together with, for each, its expression in the raw
    // vectors accepted so far.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u64>>,
    raw_count: usize,
}

impl IncrementalBasis {
    pub fn new(p: u64, ambient: usize) -> IncrementalBasis {
        IncrementalBasis { p, ambient, rows: Vec::new(), pivots: Vec::new(), transform: Vec::new(), raw_count: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn raw_count(&self) -> usize {
        self.raw_count
    }

    /// The reduced rows accumulated so far.
    pub fn basis_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let mut residue: Vec<u64> = v.iter().map(|&x| x % p).collect();
        let mut combo = vec![0u64; self.raw_count];
        for (i, &piv) in self.pivots.iter().enumerate() {
            let f = residue[piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.ambient {
                residue[j] = fp_sub(p, residue[j], f * self.rows[i][j] % p);
            }
            for j in 0..self.raw_count {
                combo[j] = fp_add(p, combo[j], f * self.transform[i][j] % p);
            }
        }
        (residue, combo)
    }

    /// Returns Some(coords over the raw vectors) when v is dependent, or
    /// None after accepting v as raw vector number raw_count().
    pub fn add(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let (mut residue, mut combo) = self.reduce(v);
        let Some(piv) = residue.iter().position(|&x| x != 0) else {
            return Some(combo);
        };
        // Normalize: new reduced row r with r = (v - sum) / lead, so v's raw
        // index enters the transform with the inverse leading coefficient.
        let inv = fp_inv(p, residue[piv]);
        for x in residue.iter_mut() {
            *x = *x * inv % p;
        }
        combo.push(0);
        for t in self.transform.iter_mut() {
            t.push(0);
        }
        let mut t_new = vec![0u64; self.raw_count + 1];
        t_new[self.raw_count] = inv;
        for j in 0..self.raw_count {
            t_new[j] = fp_neg(p, combo[j] * inv % p);
        }
        // Back-eliminate the new pivot from existing rows.
        for i in 0..self.rows.len() {
            let f = self.rows[i][piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.ambient {
                self.rows[i][j] = fp_sub(p, self.rows[i][j], f * residue[j] % p);
            }
            for j in 0..=self.raw_count {
                self.transform[i][j] = fp_sub(p, self.transform[i][j], f * t_new[j] % p);
            }
        }
        self.rows.push(residue);
        self.pivots.push(piv);
        self.transform.push(t_new);
        self.raw_count += 1;
        None
    }

    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (residue, combo) = self.reduce(v);
        if residue.iter().all(|&x| x == 0) {
            Some(combo)
        } else {
            None
        }
    }
}

/// Quotient Z/B of two nested row-space subspaces, with coordinates on a
/// chosen set of coset representatives.
pub struct Subquotient {
    p: u64,
    sub: Subspace,
    reps: Mat,
}

impl Subquotient {
    /// total must contain sub.
    pub fn new(total: &Subspace, sub: &Subspace) -> Subquotient {
        assert!(total.contains(sub), "subspace not contained in total space");
        let p = total.basis().modulus();
        let mut inc = IncrementalBasis::new(p, total.ambient());
        for i in 0..sub.dim() {
            inc.add(sub.basis().row(i));
        }
        let mut reps: Vec<Vec<u64>> = Vec::new();
        for i in 0..total.dim() {
            let row = total.basis().row(i);
            if inc.add(row).is_none() {
                reps.push(row.to_vec());
            }
        }
        // A zero quotient must still remember the ambient width.
        let reps = if reps.is_empty() {
            Mat::zero(p, 0, total.ambient())
        } else {
            Mat::from_rows(p, &reps)
        };
        Subquotient { p, sub: sub.clone(), reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn ambient(&self) -> usize {
        self.reps.cols()
    }

    /// Chosen coset representatives, as rows.
    pub fn reps(&self) -> &Mat {
        &self.reps
    }

    /// Coordinates of v's coset in the representative basis; v must lie in
    /// the total space.
    pub fn reduce_row(&self, v: &[u64]) -> Vec<u64> {
        let stacked = self.sub.basis().vstack(&self.reps);
        let sol = stacked
            .transpose()
            .solve(&Mat::col_vec(self.p, v))
            .expect("vector outside the total space of a subquotient");
        (0..self.reps.rows()).map(|i| sol.at(self.sub.dim() + i, 0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_one_over_f5() {
        // Hand reduction: second row is twice the first.
        let m = Mat::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced.row(0), &[1, 2]);
        assert_eq!(r.reduced.row(1), &[0, 0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Mat::from_rows(7, &[vec![3, 1, 4], vec![1, 5, 6], vec![2, 6, 5]]);
        let once = m.rref().reduced;
        let twice = once.rref().reduced;
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_of_multiplication_by_x_mod_x_cubed() {
        // F_2[X]/(X^3) with basis 1, x, x^2: multiplication by x kills only
        // the socle, so the kernel is spanned by x^2.
        let mx = Mat::from_rows(2, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        let k = mx.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[0, 0, 1]);
    }

    #[test]
    fn solve_by_back_substitution() {
        let a = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]);
        let b = Mat::col_vec(2, &[0, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert_eq!(x.col(0), vec![1, 1]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Mat::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        let b = Mat::col_vec(5, &[1, 3]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn rank_nullity_on_a_rectangular_example() {
        let m = Mat::from_rows(3, &[vec![1, 2, 0, 1], vec![2, 1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(m.rank() + k.rows(), m.cols());
        // Every kernel row really is annihilated.
        for i in 0..k.rows() {
            let v = Mat::col_vec(3, k.row(i));
            assert!(m.mul(&v).is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(5, 2));
        assert_eq!(inv.mul(&m), Mat::identity(5, 2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn incremental_basis_reports_dependencies() {
        let mut inc = IncrementalBasis::new(5, 3);
        assert!(inc.add(&[1, 0, 0]).is_none());
        assert!(inc.add(&[1, 1, 0]).is_none());
        // 2*(1,0,0) + 3*(1,1,0) = (0,3,0): coefficients come back in raw order.
        let dep = inc.add(&[0, 3, 0]).unwrap();
        assert_eq!(dep, vec![2, 3]);
        assert_eq!(inc.dim(), 2);
    }

    #[test]
    fn subquotient_picks_complement_of_the_sub() {
        // Z = <e1, e2>, B = <e1 + e2> in F_2^3: the quotient is a line.
        let z = Subspace::from_spanning_rows(&Mat::from_rows(2, &[vec![1, 0, 0], vec![0, 1, 0]]));
        let b = Subspace::from_spanning_rows(&Mat::from_rows(2, &[vec![1, 1, 0]]));
        let q = Subquotient::new(&z, &b);
        assert_eq!(q.dim(), 1);
        let c1 = q.reduce_row(&[1, 0, 0]);
        let c2 = q.reduce_row(&[0, 1, 0]);
        // e1 and e2 differ by an element of B, so they land on the same coset.
        assert_eq!(c1, c2);
        assert_ne!(c1, vec![0]);
        assert_eq!(q.reduce_row(&[1, 1, 0]), vec![0]);
    }

    #[test]
    fn nilpotency_check() {
        let n = Mat::from_rows(3, &[vec![0, 1], vec![0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!Mat::identity(3, 2).is_nilpotent());
    }
}
