//! Exact linear algebra over K on row-major dense matrices.

use super::field::{BaseField, FieldElem};

pub type Row = Vec<FieldElem>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns; pivots are 1 and columns above and below pivots are cleared.
pub fn rref(rows: &[Row], ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..ncols {
                if !pivot_row[k].is_zero() {
                    row[k] = &row[k] - &(&f * &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Row], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Basis of the right kernel `{v : M v = 0}` of an `m × ncols` matrix.
pub fn kernel(field: BaseField, rows: &[Row], ncols: usize) -> Vec<Row> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{w : w M = 0}`.
pub fn left_kernel(field: BaseField, rows: &[Row], ncols: usize) -> Vec<Row> {
    kernel(field, &transpose(rows, ncols), rows.len())
}

pub fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Some solution `x` of `M x = b`, if one exists.
pub fn solve(field: BaseField, rows: &[Row], ncols: usize, b: &[FieldElem]) -> Option<Row> {
    let aug: Vec<Row> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates(field: BaseField, basis: &[Row], v: &[FieldElem]) -> Option<Row> {
    let n = v.len();
    let cols = transpose(basis, n);
    solve(field, &cols, basis.len(), v)
}

/// Incremental row echelon form with pivots kept normalized to 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: Row) -> Row {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for k in pc..self.ncols {
                if !row[k].is_zero() {
                    v[k] = &v[k] - &(&f * &row[k]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Adds `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: Row) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let v = self.reduce(v);
        let Some(pc) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv().unwrap();
        let v: Row = v.iter().map(|c| c * &inv).collect();
        let at = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> BaseField {
        BaseField::prime(13).unwrap()
    }

    fn mat(v: &[Vec<i64>]) -> Vec<Row> {
        v.iter()
            .map(|r| r.iter().map(|&x| f().from_i64(x)).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop::collection::vec(prop::collection::vec(0i64..13, 5), 1..6)) {
            let rows = mat(&m);
            let r = rank(&rows, 5);
            let k = kernel(f(), &rows, 5);
            prop_assert_eq!(r + k.len(), 5);
            for v in &k {
                for row in &rows {
                    let dot = row.iter().zip(v).fold(f().zero(), |a, (x, y)| &a + &(x * y));
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn solve_consistent(m in prop::collection::vec(prop::collection::vec(0i64..13, 4), 1..5),
                            x in prop::collection::vec(0i64..13, 4)) {
            let rows = mat(&m);
            let x: Row = x.iter().map(|&v| f().from_i64(v)).collect();
            let b: Row = rows.iter().map(|r| r.iter().zip(&x).fold(f().zero(), |a, (p, q)| &a + &(p * q))).collect();
            let s = solve(f(), &rows, 4, &b).unwrap();
            for (r, bi) in rows.iter().zip(&b) {
                let dot = r.iter().zip(&s).fold(f().zero(), |a, (p, q)| &a + &(p * q));
                prop_assert_eq!(&dot, bi);
            }
        }
    }

    #[test]
    fn echelon_agrees_with_rref() {
        let rows = mat(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let mut e = Echelon::new(3);
        let added: Vec<bool> = rows.iter().map(|r| e.insert(r.clone())).collect();
        assert_eq!(added, vec![true, false, true]);
        assert_eq!(rref(&rows, 3).1.len(), 2);
    }
}
