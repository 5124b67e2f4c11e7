//! Dense matrices over `F_p` and a sparse incremental echelon form.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<u64>,
}

/// Reduced row-echelon basis of a row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<Vec<u64>>,
    field: Field,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        DenseMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize, field: Field) -> Self {
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % field.p());
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], field: Field) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let conv: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(&conv, cols, field)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols, self.field);
        for (i, &src) in perm.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(src, j));
            }
        }
        m
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    /// Exact rank and reduced row-echelon basis by Gauss-Jordan elimination.
    pub fn rank_and_basis(&self) -> Echelon {
        let f = self.field;
        let mut a = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..c {
            if prow == r {
                break;
            }
            let Some(sel) = (prow..r).find(|&i| a[i * c + col] != 0) else {
                continue;
            };
            if sel != prow {
                for j in 0..c {
                    a.swap(sel * c + j, prow * c + j);
                }
            }
            let inv = f.inv(a[prow * c + col]);
            for j in col..c {
                a[prow * c + j] = f.mul(a[prow * c + j], inv);
            }
            for i in 0..r {
                if i == prow {
                    continue;
                }
                let factor = a[i * c + col];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in col..c {
                    let v = a[prow * c + j];
                    if v != 0 {
                        a[i * c + j] = (a[i * c + j] + nf * v) % f.p();
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        let basis = (0..prow).map(|i| a[i * c..(i + 1) * c].to_vec()).collect();
        Echelon {
            rank: prow,
            pivots,
            basis,
            field: f,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_and_basis().rank
    }
}

impl Echelon {
    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[u64]) -> bool {
        let f = self.field;
        let mut w: Vec<u64> = v.iter().map(|x| x % f.p()).collect();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (j, &r) in row.iter().enumerate().skip(pc) {
                if r != 0 {
                    w[j] = (w[j] + nc * r) % f.p();
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// A sparse vector: `(column, nonzero value)` pairs with increasing columns.
pub type SparseRow = Vec<(u32, u64)>;

const NONE: u32 = u32::MAX;

/// Incremental echelon form over sparse rows. Each stored row has its
/// leading (lowest) column as pivot with coefficient 1. Callers order columns
/// so that lower column index means lower degree; the pivot set then
/// describes the truncations of the row space degree by degree.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: Field,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseRow>,
    acc: Vec<u64>,
}

impl SparseEchelon {
    pub fn new(ncols: usize, field: Field) -> Self {
        SparseEchelon {
            field,
            ncols,
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
            acc: vec![0; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c] != NONE
    }

    /// Pivot columns in increasing order.
    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    fn load(&mut self, row: &[(u32, u64)]) -> (usize, usize) {
        let (mut lo, mut hi) = (usize::MAX, 0usize);
        for &(c, v) in row {
            let c = c as usize;
            self.acc[c] = self.field.add(self.acc[c], v % self.field.p());
            lo = lo.min(c);
            hi = hi.max(c);
        }
        (lo, hi)
    }

    #[inline]
    fn eliminate(&mut self, c: usize, hi: &mut usize) {
        let p = self.field.p();
        let r = self.pivot_row[c] as usize;
        let nf = p - self.acc[c];
        let row = &self.rows[r];
        for &(j, v) in row {
            let j = j as usize;
            self.acc[j] = (self.acc[j] + nf * v) % p;
        }
        if let Some(&(last, _)) = row.last() {
            *hi = (*hi).max(last as usize);
        }
    }

    /// Adds `row` to the spanning set; returns `true` when the rank grows.
    pub fn insert(&mut self, row: &[(u32, u64)]) -> bool {
        if row.is_empty() {
            return false;
        }
        let (lo, mut hi) = self.load(row);
        let mut c = lo;
        while c <= hi {
            if self.acc[c] == 0 {
                c += 1;
                continue;
            }
            if self.pivot_row[c] != NONE {
                self.eliminate(c, &mut hi);
                c += 1;
                continue;
            }
            let inv = self.field.inv(self.acc[c]);
            let mut out = Vec::new();
            for j in c..=hi {
                let v = self.acc[j];
                if v != 0 {
                    out.push((j as u32, self.field.mul(v, inv)));
                    self.acc[j] = 0;
                }
            }
            self.pivot_row[c] = self.rows.len() as u32;
            self.rows.push(out);
            return true;
        }
        false
    }

    /// Fully reduced representative of `row` modulo the span: only
    /// non-pivot columns remain.
    pub fn normal_form(&mut self, row: &[(u32, u64)]) -> SparseRow {
        if row.is_empty() {
            return Vec::new();
        }
        let (lo, mut hi) = self.load(row);
        let mut out = Vec::new();
        let mut c = lo;
        while c <= hi {
            if self.acc[c] == 0 {
                c += 1;
                continue;
            }
            if self.pivot_row[c] != NONE {
                self.eliminate(c, &mut hi);
            } else {
                out.push((c as u32, self.acc[c]));
                self.acc[c] = 0;
            }
            c += 1;
        }
        out
    }

    /// Whether `row` lies in the span.
    pub fn contains(&mut self, row: &[(u32, u64)]) -> bool {
        self.normal_form(row).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld() -> Field {
        Field::default()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(DenseMatrix::identity(3, fld()).rank(), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(DenseMatrix::zeros(4, 3, fld()).rank(), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = DenseMatrix::from_i64(&[vec![1, 2], vec![2, 4]], fld());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn membership() {
        let m = DenseMatrix::from_i64(&[vec![1, 0, 1], vec![0, 1, 1]], fld());
        let e = m.rank_and_basis();
        assert!(e.contains(&[2, 3, 5]));
        assert!(!e.contains(&[0, 0, 1]));
    }

    #[test]
    fn sparse_matches_dense() {
        let f = fld();
        let rows: Vec<Vec<i64>> = vec![
            vec![0, 1, 2, 0],
            vec![0, 2, 4, 0],
            vec![1, 0, 0, 3],
            vec![1, 1, 2, 3],
            vec![0, 0, 0, 5],
        ];
        let dense = DenseMatrix::from_i64(&rows, f);
        let mut sp = SparseEchelon::new(4, f);
        for r in &rows {
            let s: SparseRow = r
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j as u32, f.from_i64(v)))
                .collect();
            sp.insert(&s);
        }
        assert_eq!(sp.rank(), dense.rank());
        assert_eq!(sp.pivot_cols(), vec![0, 1, 3]);
        assert_eq!(sp.normal_form(&[(2, 1)]), vec![(2, 1)]);
        assert!(sp.contains(&[(1, 1), (2, 2)]));
    }
}
