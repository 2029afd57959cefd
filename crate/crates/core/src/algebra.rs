//! Prime-field arithmetic and sparse column reduction.
//!
//! Every rank computed by the rest of the crate goes through [`reduce`]:
//! the standard left-to-right persistence reduction that only adds earlier
//! columns to later ones and pivots on the lowest nonzero row.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Coefficient field `Z/p` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: 2 }
    }
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    /// Canonical representative of an integer.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A sparse column: `(row, coefficient)` pairs with strictly increasing rows
/// and no stored zeros.
pub type Column = Vec<(usize, u32)>;

/// `target += c * source`, merging two sorted sparse columns.
pub fn axpy(field: Field, target: &Column, c: u32, source: &Column) -> Column {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let next_t = target.get(i).map(|e| e.0);
        let next_s = source.get(j).map(|e| e.0);
        match (next_t, next_s) {
            (Some(rt), Some(rs)) if rt == rs => {
                let v = field.add(target[i].1, field.mul(c, source[j].1));
                if v != 0 {
                    out.push((rt, v));
                }
                i += 1;
                j += 1;
            }
            (Some(rt), Some(rs)) if rt < rs => {
                out.push(target[i]);
                i += 1;
            }
            (Some(_), None) => {
                out.push(target[i]);
                i += 1;
            }
            _ => {
                let v = field.mul(c, source[j].1);
                if v != 0 {
                    out.push((source[j].0, v));
                }
                j += 1;
            }
        }
    }
    out
}

/// Column-major sparse matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Column>,
}

impl SparseMatrix {
    /// Builds a matrix from explicit columns, checking the storage invariants.
    pub fn new(rows: usize, columns: Vec<Column>) -> Result<Self> {
        let m = SparseMatrix { rows, columns };
        m.check()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            columns: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// Accumulates `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::MalformedMatrix {
                    col: c,
                    detail: format!("entry ({r}, {c}) outside {rows}x{cols}"),
                });
            }
            let e = acc[c].entry(r).or_insert(0);
            *e = field.add(*e, field.from_i64(v));
        }
        let columns = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        Ok(SparseMatrix { rows, columns })
    }

    /// Converts a dense row-major matrix (entries already canonical).
    pub fn from_dense(field: Field, rows: usize, cols: usize, dense: &[Vec<u32>]) -> Self {
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter_map(|r| {
                        let v = dense[r][c] % field.characteristic();
                        (v != 0).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.columns[col]
            .binary_search_by_key(&row, |e| e.0)
            .map(|k| self.columns[col][k].1)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Column> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v));
            }
        }
        SparseMatrix {
            rows: self.cols(),
            columns: cols,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, field: Field, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| self.apply(field, col))
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            columns,
        })
    }

    /// `self * v` for a sparse vector indexed by columns of `self`.
    pub fn apply(&self, field: Field, v: &Column) -> Column {
        let mut out = Vec::new();
        for &(k, c) in v {
            out = axpy(field, &out, c, &self.columns[k]);
        }
        out
    }

    fn check(&self) -> Result<()> {
        for (j, col) in self.columns.iter().enumerate() {
            let mut prev: Option<usize> = None;
            for &(r, v) in col {
                if r >= self.rows {
                    return Err(Error::MalformedMatrix {
                        col: j,
                        detail: format!("row index {r} out of range (rows = {})", self.rows),
                    });
                }
                if prev.is_some_and(|p| p >= r) {
                    return Err(Error::MalformedMatrix {
                        col: j,
                        detail: format!("row indices not strictly increasing at {r}"),
                    });
                }
                if v == 0 {
                    return Err(Error::MalformedMatrix {
                        col: j,
                        detail: format!("stored zero at row {r}"),
                    });
                }
                prev = Some(r);
            }
        }
        Ok(())
    }

    fn check_field(&self, field: Field) -> Result<()> {
        self.check()?;
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(&(r, v)) = col.iter().find(|e| e.1 >= field.characteristic()) {
                return Err(Error::MalformedMatrix {
                    col: j,
                    detail: format!(
                        "coefficient {v} at row {r} is not canonical mod {}",
                        field.characteristic()
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Result of the lowest-pivot column reduction `R = M V`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub reduced: SparseMatrix,
    /// Nonzero column of `reduced` → its lowest nonzero row.
    pub pivots: BTreeMap<usize, usize>,
    /// Column operations performed, as the upper-triangular `V`; only kept
    /// by [`reduce_tracked`].
    pub basis: Option<SparseMatrix>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that reduced to zero.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.reduced.cols()).filter(|j| !self.pivots.contains_key(j))
    }
}

pub fn reduce(m: &SparseMatrix, field: Field) -> Result<Reduction> {
    reduce_impl(m, field, false)
}

/// Like [`reduce`], additionally recording `V`.
pub fn reduce_tracked(m: &SparseMatrix, field: Field) -> Result<Reduction> {
    reduce_impl(m, field, true)
}

pub fn rank(m: &SparseMatrix, field: Field) -> Result<usize> {
    Ok(reduce(m, field)?.rank())
}

fn reduce_impl(m: &SparseMatrix, field: Field, track: bool) -> Result<Reduction> {
    m.check_field(field)?;
    let mut cols = m.columns.clone();
    let mut v: Option<Vec<Column>> = track.then(|| (0..m.cols()).map(|j| vec![(j, 1)]).collect());
    // lowest row -> column owning it
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pivots = BTreeMap::new();
    for j in 0..cols.len() {
        while let Some(&(low, c)) = cols[j].last() {
            let Some(&i) = owner.get(&low) else { break };
            let ci = cols[i].last().expect("pivot column is nonzero").1;
            let factor = field.neg(field.div(c, ci));
            cols[j] = axpy(field, &cols[j], factor, &cols[i]);
            if let Some(v) = v.as_mut() {
                v[j] = axpy(field, &v[j], factor, &v[i]);
            }
        }
        if let Some(&(low, _)) = cols[j].last() {
            owner.insert(low, j);
            pivots.insert(j, low);
        }
    }
    Ok(Reduction {
        reduced: SparseMatrix {
            rows: m.rows,
            columns: cols,
        },
        pivots,
        basis: v.map(|columns| SparseMatrix {
            rows: m.cols(),
            columns,
        }),
    })
}

/// Expresses vectors in the column span of a fixed matrix.
///
/// Built from a tracked reduction: a vector `z` is reduced against the pivots
/// of `R`, and the accumulated multiples of `V` give `x` with `M x = z`.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    field: Field,
    reduction: Reduction,
    owner: BTreeMap<usize, usize>,
}

impl SpanSolver {
    pub fn new(m: &SparseMatrix, field: Field) -> Result<Self> {
        let reduction = reduce_tracked(m, field)?;
        let owner = reduction.pivots.iter().map(|(&c, &r)| (r, c)).collect();
        Ok(SpanSolver {
            field,
            reduction,
            owner,
        })
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Returns some `x` with `M x = z`, or `None` when `z` is outside the span.
    pub fn solve(&self, z: &Column) -> Option<Column> {
        let field = self.field;
        let r = &self.reduction.reduced;
        let v = self.reduction.basis.as_ref().expect("tracked reduction");
        let mut rest = z.clone();
        let mut x: Column = Vec::new();
        while let Some(&(low, c)) = rest.last() {
            let &j = self.owner.get(&low)?;
            let cj = r.column(j).last().expect("pivot").1;
            let factor = field.div(c, cj);
            rest = axpy(field, &rest, field.neg(factor), r.column(j));
            x = axpy(field, &x, factor, v.column(j));
        }
        Some(x)
    }
}
