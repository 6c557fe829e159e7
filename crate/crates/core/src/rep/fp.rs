//! Linear algebra over prime fields F_p with p < 2^32.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `>= start` in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime(n))
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn reduce(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Saturating `u128` version of [`gaussian_binomial`], for budget estimates.
pub fn gaussian_binomial_u128(n: usize, k: usize, q: u64) -> u128 {
    let g = gaussian_binomial(n, k, q);
    u128::try_from(g).unwrap_or(u128::MAX)
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).fold(0u64, |acc, (a, b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix, p: u64) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn rank(&self, p: u64) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        rank_of_rows(rows, self.cols, p)
    }

    /// Inverse, if the matrix is square and invertible.
    pub fn inverse(&self, p: u64) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                let mut row = self.data[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| (c == r) as u64));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            let inv = inv_mod(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..2 * n {
                        a[r][c] = (a[r][c] + (p - f) * a[col][c]) % p;
                    }
                }
            }
        }
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, a[r][n + c]);
            }
        }
        Some(out)
    }
}

/// Rank of a list of rows of length `cols`.
pub fn rank_of_rows(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in rank + 1..rows.len() {
            let f = rows[r][col];
            if f != 0 {
                for c in col..cols {
                    rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Row-echelon basis of a subspace of `F_p^d`, grown one vector at a time.
/// Rows are normalized at their pivot and zero at earlier rows' pivots, so a
/// vector is reduced by a single pass and backtracking is a truncation.
#[derive(Clone, Debug)]
pub struct Echelon {
    d: usize,
    p: u64,
    rows: Vec<u64>,
    pivots: Vec<usize>,
    scratch: Vec<u64>,
}

impl Echelon {
    pub fn new(d: usize, p: u64) -> Self {
        Echelon { d, p, rows: Vec::new(), pivots: Vec::new(), scratch: vec![0; d] }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    fn reduce_scratch(&mut self) {
        let (d, p) = (self.d, self.p);
        for (k, &pc) in self.pivots.iter().enumerate() {
            let f = self.scratch[pc];
            if f != 0 {
                let row = &self.rows[k * d..(k + 1) * d];
                let m = p - f;
                for c in 0..d {
                    self.scratch[c] = (self.scratch[c] + m * row[c]) % p;
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        self.scratch.copy_from_slice(v);
        self.reduce_scratch();
        let Some(pc) = self.scratch.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(self.scratch[pc], self.p);
        for x in self.scratch.iter_mut() {
            *x = *x * inv % self.p;
        }
        self.rows.extend_from_slice(&self.scratch);
        self.pivots.push(pc);
        true
    }

    pub fn contains(&mut self, v: &[u64]) -> bool {
        self.scratch.copy_from_slice(v);
        self.reduce_scratch();
        self.scratch.iter().all(|&x| x == 0)
    }

    pub fn truncate(&mut self, len: usize) {
        self.pivots.truncate(len);
        self.rows.truncate(len * self.d);
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.chunks(self.d.max(1)).take(self.pivots.len())
    }
}

/// All `k`-dimensional subspaces of `F_p^d`, each given by its reduced echelon basis.
pub fn subspaces(d: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    pivot_sets(d, k, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..d).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for idx in 0..total {
            let mut basis = vec![vec![0u64; d]; k];
            for (r, &pc) in piv.iter().enumerate() {
                basis[r][pc] = 1;
            }
            let mut x = idx;
            for &(r, c) in &free {
                basis[r][c] = (x % p as u128) as u64;
                x /= p as u128;
            }
            out.push(basis);
        }
    });
    out
}

fn pivot_sets(d: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in from..d {
        if d - c < k - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(d, k, c + 1, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for p in [2u64, 3, 5] {
            for d in 0..4 {
                for k in 0..=d {
                    let n = subspaces(d, k, p).len();
                    assert_eq!(BigInt::from(n), gaussian_binomial(d, k, p), "d={d} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn subspaces_distinct() {
        let subs = subspaces(3, 2, 3);
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                let mut e = Echelon::new(3, 3);
                for v in a {
                    e.insert(v);
                }
                let mut same = true;
                for v in b {
                    same &= e.contains(v);
                }
                assert!(!same);
            }
        }
    }

    #[test]
    fn echelon_and_rank() {
        let p = 7;
        let mut e = Echelon::new(3, p);
        assert!(e.insert(&[1, 2, 3]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 3, 4]));
        assert_eq!(e.len(), 2);
        e.truncate(1);
        assert_eq!(e.len(), 1);
        assert!(e.contains(&[2, 4, 6]));
        let m = Matrix { rows: 2, cols: 2, data: vec![1, 2, 2, 4] };
        assert_eq!(m.rank(p), 1);
        let m = Matrix { rows: 2, cols: 2, data: vec![1, 2, 3, 4] };
        let inv = m.inverse(p).unwrap();
        assert_eq!(m.mul(&inv, p), Matrix::identity(2));
    }

    #[test]
    fn primes() {
        let v: Vec<u64> = primes_from(5).take(5).collect();
        assert_eq!(v, vec![5, 7, 11, 13, 17]);
    }
}
