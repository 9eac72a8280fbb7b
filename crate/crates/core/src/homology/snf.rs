//! Smith normal form over ℤ.
//!
//! Dense arbitrary precision for the certified form and for small cores;
//! a sparse unit-pivot eliminator shrinks large boundary matrices first.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let v = v * f;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let v = v * f;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`snf`]: `u · m · v = d` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let invariants = diagonalize(&mut d, Some(&mut u), Some(&mut v));
    Snf { invariants, u, v, d }
}

/// Invariant factors only.
pub fn invariants_dense(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    diagonalize(&mut d, None, None)
}

/// Brings `d` to Smith form in place, mirroring row operations in `u` and
/// column operations in `v`.
fn diagonalize(
    d: &mut IntMatrix,
    mut u: Option<&mut IntMatrix>,
    mut v: Option<&mut IntMatrix>,
) -> Vec<BigInt> {
    let (rows, cols) = (d.rows, d.cols);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &d[(i, j)];
                if !x.is_zero()
                    && best.is_none_or(|(bi, bj)| x.magnitude() < d[(bi, bj)].magnitude())
                {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pi);
        }
        d.swap_cols(t, pj);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row(i, t, &q);
                }
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                if let Some(v) = v.as_deref_mut() {
                    v.add_col(j, t, &q);
                }
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        if let Some(u) = u.as_deref_mut() {
                            u.add_row(t, i, &one);
                        }
                    }
                }
            }
            // move a smaller remainder into the pivot slot
            let mut best = (t, t);
            for i in t..rows {
                let x = &d[(i, t)];
                if !x.is_zero() && x.magnitude() < d[best].magnitude() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                let x = &d[(t, j)];
                if !x.is_zero() && x.magnitude() < d[best].magnitude() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(t, best.0);
                }
            }
            if best.1 != t {
                d.swap_cols(t, best.1);
                if let Some(v) = v.as_deref_mut() {
                    v.swap_cols(t, best.1);
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(t);
            }
        }
        out.push(d[(t, t)].clone());
        t += 1;
    }
    out
}

/// Sparse vector: sorted `(index, coefficient)` pairs, no zeros.
pub type SparseVec = Vec<(usize, i64)>;

/// Drops zeros and merges repeated indices.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Invariant factors of the matrix whose columns are `cols`, each a
/// sparse vector in `ℤ^rows`.
pub fn invariants(rows: usize, cols: &[SparseVec]) -> Vec<BigInt> {
    let mut e = Eliminator::new(rows, cols);
    let units = e.run();
    let core = e.core();
    let mut inv = vec![BigInt::one(); units];
    inv.extend(invariants_dense(&core));
    inv
}

pub fn rank(rows: usize, cols: &[SparseVec]) -> usize {
    invariants(rows, cols).len()
}

/// Whether `v` lies in the ℤ-span of `gens` (vectors in `ℤ^dim`).
///
/// Compares the invariant factors with and without `v`: nested lattices of
/// equal rank and equal index in their saturation coincide.
pub fn lattice_contains(dim: usize, gens: &[SparseVec], v: &SparseVec) -> bool {
    if v.is_empty() {
        return true;
    }
    lattice_contains_all(dim, gens, std::slice::from_ref(v))
}

pub fn lattice_contains_all(dim: usize, gens: &[SparseVec], vs: &[SparseVec]) -> bool {
    let vs: Vec<SparseVec> = vs.iter().filter(|v| !v.is_empty()).cloned().collect();
    if vs.is_empty() {
        return true;
    }
    let a = invariants(dim, gens);
    let mut all = gens.to_vec();
    all.extend(vs);
    let b = invariants(dim, &all);
    a.len() == b.len() && product(&a) == product(&b)
}

fn product(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc * x)
}

/// Row-oriented sparse elimination on ±1 pivots.
struct Eliminator {
    cols: usize,
    rows: Vec<HashMap<usize, i64>>,
    col_rows: Vec<HashSet<usize>>,
    row_alive: Vec<bool>,
}

impl Eliminator {
    fn new(nrows: usize, cols: &[SparseVec]) -> Eliminator {
        let mut rows = vec![HashMap::new(); nrows];
        let mut col_rows = vec![HashSet::new(); cols.len()];
        for (j, col) in cols.iter().enumerate() {
            for &(i, c) in col {
                if c != 0 {
                    *rows[i].entry(j).or_insert(0) += c;
                }
            }
        }
        for (i, r) in rows.iter_mut().enumerate() {
            r.retain(|_, c| *c != 0);
            for &j in r.keys() {
                col_rows[j].insert(i);
            }
        }
        Eliminator {
            cols: cols.len(),
            row_alive: vec![true; nrows],
            rows,
            col_rows,
        }
    }

    /// Number of unit pivots eliminated.
    fn run(&mut self) -> usize {
        let mut units = 0;
        loop {
            let mut progress = false;
            let mut order: Vec<usize> = (0..self.cols).filter(|&j| !self.col_rows[j].is_empty()).collect();
            order.sort_by_key(|&j| self.col_rows[j].len());
            for j in order {
                let pivot = self.col_rows[j]
                    .iter()
                    .copied()
                    .filter(|&i| self.rows[i][&j].abs() == 1)
                    .min_by_key(|&i| (self.rows[i].len(), i));
                let Some(p) = pivot else { continue };
                if self.pivot(p, j) {
                    units += 1;
                    progress = true;
                } else {
                    return units;
                }
            }
            if !progress {
                return units;
            }
        }
    }

    /// Clears column `j` with row `p`; false on overflow, leaving the
    /// matrix unchanged.
    fn pivot(&mut self, p: usize, j: usize) -> bool {
        let pv = self.rows[p][&j];
        let prow: Vec<(usize, i64)> = self.rows[p].iter().map(|(&k, &c)| (k, c)).collect();
        let others: Vec<usize> = self.col_rows[j].iter().copied().filter(|&i| i != p).collect();
        let mut updates: Vec<(usize, Vec<(usize, i64)>)> = Vec::with_capacity(others.len());
        for &i in &others {
            let f = self.rows[i][&j] * pv;
            let mut upd = Vec::with_capacity(prow.len());
            for &(k, c) in &prow {
                let old = self.rows[i].get(&k).copied().unwrap_or(0);
                let Some(new) = f.checked_mul(c).and_then(|fc| old.checked_sub(fc)) else {
                    return false;
                };
                upd.push((k, new));
            }
            updates.push((i, upd));
        }
        for (i, upd) in updates {
            for (k, new) in upd {
                if new == 0 {
                    self.rows[i].remove(&k);
                    self.col_rows[k].remove(&i);
                } else {
                    self.rows[i].insert(k, new);
                    self.col_rows[k].insert(i);
                }
            }
        }
        for &(k, _) in &prow {
            self.col_rows[k].remove(&p);
        }
        self.rows[p].clear();
        self.row_alive[p] = false;
        true
    }

    /// The remaining nonzero block as a dense matrix.
    fn core(&self) -> IntMatrix {
        let live_rows: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.row_alive[i] && !self.rows[i].is_empty())
            .collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&j| !self.col_rows[j].is_empty()).collect();
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(a, &j)| (j, a)).collect();
        let mut m = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (a, &i) in live_rows.iter().enumerate() {
            for (&k, &c) in &self.rows[i] {
                m[(a, col_pos[&k])] = BigInt::from(c);
            }
        }
        m
    }
}

/// Integer row echelon basis of a lattice, kept in triangular form so
/// membership and coordinates can be read off by back substitution.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    /// `(pivot column, row)` with strictly increasing pivot columns.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> EchelonBasis {
        let mut pending: Vec<Vec<BigInt>> = gens.into_iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        let mut rows = Vec::new();
        for col in 0..dim {
            let (mut hit, rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|r| !r[col].is_zero());
            pending = rest;
            if hit.is_empty() {
                continue;
            }
            // Euclid on the column until a single row is left
            loop {
                let k = (0..hit.len()).min_by(|&a, &b| hit[a][col].magnitude().cmp(hit[b][col].magnitude())).unwrap();
                hit.swap(0, k);
                let (head, tail) = hit.split_at_mut(1);
                let p = &head[0];
                for r in tail.iter_mut() {
                    let q = r[col].div_floor(&p[col]);
                    for (x, y) in r.iter_mut().zip(p.iter()) {
                        if !y.is_zero() {
                            *x -= &q * y;
                        }
                    }
                }
                let first = hit.remove(0);
                let (zero, nonzero): (Vec<_>, Vec<_>) = hit.into_iter().partition(|r| r[col].is_zero());
                pending.extend(zero.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
                hit = nonzero;
                if hit.is_empty() {
                    rows.push((col, first));
                    break;
                }
                hit.push(first);
            }
        }
        EchelonBasis { dim, rows }
    }

    pub fn from_sparse(dim: usize, gens: &[SparseVec]) -> EchelonBasis {
        EchelonBasis::new(dim, gens.iter().map(|g| dense(dim, g)))
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.iter().map(|r| &r.1)
    }

    /// Coordinates of `v` in the basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = v.to_vec();
        let mut c = Vec::with_capacity(self.rows.len());
        for (col, row) in &self.rows {
            let (q, rem) = r[*col].div_rem(&row[*col]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
            c.push(q);
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

pub fn dense(dim: usize, v: &SparseVec) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for &(i, c) in v {
        out[i] += c;
    }
    out
}

/// Basis of the integer kernel of `m` (vectors `x` with `m · x = 0`).
pub fn kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = snf(m);
    let r = s.rank();
    (r..m.cols)
        .map(|j| (0..m.cols).map(|i| s.v[(i, j)].clone()).collect())
        .collect()
}
