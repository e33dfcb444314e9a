//! Exact sparse matrices over the rationals.
//!
//! Rank uses fraction-free elimination on integer rows with content
//! reduction; solving and null spaces use rational reduced row echelon form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, o: &SparseRationalMatrix) -> SparseRationalMatrix {
        assert_eq!(self.cols, o.rows, "product shape");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(k, j), v) in &o.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = Self::new(self.rows, o.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i] += v * &x[j];
        }
        out
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(rp[i], cp[j])`.
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> Self {
        let mut out = Self::new(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((rp[i], cp[j]), v.clone());
        }
        out
    }

    fn integer_rows(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let l = r.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                let mut out: BTreeMap<usize, BigInt> = r
                    .into_iter()
                    .map(|(j, v)| (j, (v * Rational::from_integer(l.clone())).to_integer()))
                    .collect();
                reduce_content(&mut out);
                out
            })
            .collect()
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.integer_rows();
        let mut rank = 0;
        while !rows.is_empty() {
            // Pivot: the row with the fewest entries, on its leading column.
            let (pi, _) = rows
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| (r.len(), *r.keys().next().unwrap()))
                .unwrap();
            let pivot = rows.swap_remove(pi);
            let (&pc, pv) = pivot.iter().next().unwrap();
            rank += 1;
            let mut next = Vec::with_capacity(rows.len());
            for mut row in rows {
                if let Some(rv) = row.get(&pc).cloned() {
                    let g = pv.gcd(&rv);
                    let a = pv / &g;
                    let b = &rv / &g;
                    for v in row.values_mut() {
                        *v *= &a;
                    }
                    for (&j, v) in &pivot {
                        let e = row.entry(j).or_insert_with(BigInt::zero);
                        *e -= &b * v;
                    }
                    row.retain(|_, v| !v.is_zero());
                    reduce_content(&mut row);
                }
                if !row.is_empty() {
                    next.push(row);
                }
            }
            rows = next;
        }
        rank
    }

    /// Reduced row echelon form of `[A | extra]` as sparse rational rows, with pivot columns.
    fn rref(&self, extra: Option<&[Rational]>) -> (Vec<BTreeMap<usize, Rational>>, Vec<usize>) {
        let width = self.cols + usize::from(extra.is_some());
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        if let Some(b) = extra {
            for (i, v) in b.iter().enumerate() {
                if !v.is_zero() {
                    rows[i].insert(self.cols, v.clone());
                }
            }
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut done: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let mut pending: Vec<BTreeMap<usize, Rational>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        for col in 0..width {
            let Some(pos) = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r.keys().next() == Some(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i)
            else {
                continue;
            };
            let mut prow = pending.swap_remove(pos);
            let inv = Rational::one() / prow[&col].clone();
            for v in prow.values_mut() {
                *v *= &inv;
            }
            for r in pending.iter_mut().chain(done.iter_mut()) {
                if let Some(f) = r.get(&col).cloned() {
                    for (&j, v) in &prow {
                        let e = r.entry(j).or_insert_with(Rational::zero);
                        *e -= &f * v;
                    }
                    r.retain(|_, v| !v.is_zero());
                }
            }
            pending.retain(|r| !r.is_empty());
            done.push(prow);
            pivots.push(col);
        }
        (done, pivots)
    }

    /// Some `x` with `A x = b`, or `None`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let (rows, pivots) = self.rref(Some(b));
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in rows.iter().zip(&pivots) {
            x[pc] = row.get(&self.cols).cloned().unwrap_or_else(Rational::zero);
        }
        Some(x)
    }

    /// Basis of the null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.rref(None);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &pc) in rows.iter().zip(&pivots) {
                    if let Some(v) = row.get(&f) {
                        x[pc] = -v.clone();
                    }
                }
                x
            })
            .collect()
    }
}

fn reduce_content(row: &mut BTreeMap<usize, BigInt>) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_neg = row.values().next().is_some_and(|v| v.is_negative());
    if lead_neg {
        g = -g;
    }
    for v in row.values_mut() {
        *v /= &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn m(rows: &[&[i64]]) -> SparseRationalMatrix {
        SparseRationalMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn ranks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).rank(), 3);
        assert_eq!(SparseRationalMatrix::new(3, 4).rank(), 0);
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[2, 1, 0], &[0, 3, 1]]);
        let b = vec![rat(1), rat(2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let n = a.nullspace();
        assert_eq!(n.len(), 1);
        assert!(a.mul_vec(&n[0]).iter().all(Zero::is_zero));
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[rat(0), rat(1)]).is_none());
        let h = SparseRationalMatrix::from_dense(&[vec![ratio(1, 2), ratio(1, 3)]]);
        assert_eq!(h.rank(), 1);
    }
}
