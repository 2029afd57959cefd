//! Level persistence through the levelset zigzag.
//!
//! For vertex values `t_1 < … < t_m` and regular midpoints `s_k`, the zigzag
//!
//! ```text
//! I_1 ← L_1 → I_2 ← L_2 → … ← L_{m-1} → I_m
//! ```
//!
//! has `I_k = f^{-1}([s_{k-1}, s_k])` and `L_k = f^{-1}(s_k)`, with all maps
//! induced by inclusion. Its interval summands translate into the four bar
//! types: an interval starting at `I_k` is left-closed at `t_k`, one starting
//! at `L_k` is left-open at `t_k`; ending at `I_k` is right-closed at `t_k`,
//! ending at `L_k` is right-open at `t_{k+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::algebra::{Column, Field, SpanSolver, SparseMatrix};
use crate::bar::{Bar, Barcode};
use crate::error::{Error, Result};
use crate::plcomplex::{self, PlSpace, SimplicialComplex, SlicedSpace};

#[derive(Debug, Clone)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// `dim(target) × dim(source)`.
    pub matrix: SparseMatrix,
}

/// A representation of an `A_n` quiver with arbitrary arrow orientations.
#[derive(Debug, Clone)]
pub struct ZigzagModule {
    field: Field,
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl ZigzagModule {
    /// Arrow `k` must join nodes `k` and `k + 1`, in either direction.
    pub fn new(field: Field, dims: Vec<usize>, arrows: Vec<Arrow>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("zigzag has no nodes".into()));
        }
        if arrows.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} nodes need {} arrows, got {}",
                dims.len(),
                dims.len() - 1,
                arrows.len()
            )));
        }
        for (k, a) in arrows.iter().enumerate() {
            let joins =
                (a.source == k && a.target == k + 1) || (a.source == k + 1 && a.target == k);
            if !joins {
                return Err(Error::Shape(format!(
                    "arrow {k} joins {} → {}, expected nodes {k} and {}",
                    a.source,
                    a.target,
                    k + 1
                )));
            }
            if a.matrix.rows() != dims[a.target] || a.matrix.cols() != dims[a.source] {
                return Err(Error::Shape(format!(
                    "arrow {k} is {}x{}, nodes have dims {} → {}",
                    a.matrix.rows(),
                    a.matrix.cols(),
                    dims[a.source],
                    dims[a.target]
                )));
            }
        }
        Ok(ZigzagModule {
            field,
            dims,
            arrows,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_ranks(&self) -> Result<Vec<usize>> {
        self.arrows
            .iter()
            .map(|a| crate::algebra::rank(&a.matrix, self.field))
            .collect()
    }
}

/// An interval summand supported on nodes `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSummand {
    pub first: usize,
    pub last: usize,
    pub multiplicity: usize,
}

/// Node subcomplexes of the levelset zigzag on a common refinement.
#[derive(Debug, Clone)]
pub struct Layout {
    /// Values `t_1 < … < t_m` indexing the interlevel nodes.
    pub levels: Vec<f64>,
    pub sliced: SlicedSpace,
    /// Node `2(k-1)` is `I_k`, node `2k-1` is `L_k` (1-based `k`).
    pub nodes: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(s: &PlSpace, levels: &[f64]) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (i, w) in levels.windows(2).enumerate() {
            if w[0].total_cmp(&w[1]) != Ordering::Less {
                return Err(Error::UnsortedLevels(i + 1));
            }
        }
        let m = levels.len();
        let mut cuts = Vec::with_capacity(m + 1);
        cuts.push(levels[0] - 1.0);
        cuts.extend(levels.windows(2).map(|w| (w[0] + w[1]) / 2.0));
        cuts.push(levels[m - 1] + 1.0);

        let mut slicing: Vec<f64> = levels.iter().chain(&cuts).copied().collect();
        slicing.sort_by(f64::total_cmp);
        let sliced = plcomplex::slice(s, &slicing)?;

        let mut nodes = Vec::with_capacity(2 * m - 1);
        for k in 0..m {
            nodes.push(sliced.interlevel(cuts[k], cuts[k + 1])?);
            if k + 1 < m {
                nodes.push(sliced.interlevel(cuts[k + 1], cuts[k + 1])?);
            }
        }
        Ok(Layout {
            levels: levels.to_vec(),
            sliced,
            nodes,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.sliced.space().complex()
    }

    /// Zigzag arrows as `(source, target)` node pairs: every level node
    /// includes into both neighbouring interlevels.
    pub fn arrow_ends(&self) -> Vec<(usize, usize)> {
        (0..self.nodes.len() - 1)
            .map(|k| if k % 2 == 0 { (k + 1, k) } else { (k, k + 1) })
            .collect()
    }

    /// Translates a node interval into a bar in the given degree.
    pub fn bar(&self, degree: usize, first: usize, last: usize) -> Bar {
        let t = &self.levels;
        let (left, left_closed) = (t[first / 2], first.is_multiple_of(2));
        let (right, right_closed) = if last.is_multiple_of(2) {
            (t[last / 2], true)
        } else {
            (t[last / 2 + 1], false)
        };
        Bar::new(degree, left, right, left_closed, right_closed)
    }
}

/// Global index of each `r`-simplex among the `r`-simplices of a complex.
struct DegreeIndex {
    offset: Vec<usize>,
}

impl DegreeIndex {
    fn new(c: &SimplicialComplex) -> Self {
        let top = c.dim().map_or(0, |d| d + 1);
        let mut offset = vec![0; top + 2];
        for s in c.simplices() {
            offset[s.len()] += 1;
        }
        // offset[r] = first index of dimension r
        let mut acc = 0;
        let mut starts = vec![0; top + 2];
        for r in 0..top + 1 {
            starts[r] = acc;
            acc += offset[r + 1];
        }
        starts[top + 1] = acc;
        DegreeIndex { offset: starts }
    }

    fn count(&self, r: usize) -> usize {
        if r + 1 >= self.offset.len() {
            0
        } else {
            self.offset[r + 1] - self.offset[r]
        }
    }

    fn local(&self, global: usize, r: usize) -> usize {
        global - self.offset[r]
    }
}

/// Homology of a subcomplex in one degree, with a fixed basis of
/// representative cycles and a solver for class coordinates.
struct SubcomplexHomology {
    reps: Vec<Column>,
    solver: SpanSolver,
    /// Column of each representative in the solver's matrix `[B | Z]`.
    rep_cols: BTreeMap<usize, usize>,
}

impl SubcomplexHomology {
    fn new(
        c: &SimplicialComplex,
        idx: &DegreeIndex,
        sub: &[usize],
        r: usize,
        field: Field,
    ) -> Result<Self> {
        let dim_of = |i: usize| c.simplex(i).len() - 1;
        let cells: Vec<usize> = sub.iter().copied().filter(|&i| dim_of(i) == r).collect();
        let cofaces: Vec<usize> = sub
            .iter()
            .copied()
            .filter(|&i| dim_of(i) == r + 1)
            .collect();
        let boundary_columns =
            |cells: &[usize], rows: usize, rdim: usize| -> Result<SparseMatrix> {
                let triplets = cells.iter().enumerate().flat_map(|(j, &i)| {
                    c.boundary(i)
                        .into_iter()
                        .map(move |(f, sign)| (idx.local(f, rdim), j, sign))
                });
                SparseMatrix::from_triplets(field, rows, cells.len(), triplets)
            };

        let cycles: Vec<Column> = if r == 0 {
            cells.iter().map(|&i| vec![(idx.local(i, 0), 1)]).collect()
        } else {
            let d = boundary_columns(&cells, idx.count(r - 1), r - 1)?;
            let red = crate::algebra::reduce_tracked(&d, field)?;
            let v = red.basis.as_ref().expect("tracked");
            red.zero_columns()
                .map(|j| {
                    v.column(j)
                        .iter()
                        .map(|&(k, x)| (idx.local(cells[k], r), x))
                        .collect()
                })
                .collect()
        };
        let boundaries = boundary_columns(&cofaces, idx.count(r), r)?;
        let nb = boundaries.cols();
        let mut columns = boundaries.columns().to_vec();
        columns.extend(cycles.iter().cloned());
        let m = SparseMatrix::new(idx.count(r), columns)?;
        let solver = SpanSolver::new(&m, field)?;
        let mut reps = Vec::new();
        let mut rep_cols = BTreeMap::new();
        for (k, z) in cycles.into_iter().enumerate() {
            if solver.reduction().pivots.contains_key(&(nb + k)) {
                rep_cols.insert(nb + k, reps.len());
                reps.push(z);
            }
        }
        Ok(SubcomplexHomology {
            reps,
            solver,
            rep_cols,
        })
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of cycle `z` in the representative basis.
    fn coordinates(&self, z: &Column) -> Result<Column> {
        let x = self
            .solver
            .solve(z)
            .ok_or_else(|| Error::Shape("chain is not a cycle of the target subcomplex".into()))?;
        let mut out: Column = x
            .into_iter()
            .filter_map(|(col, v)| self.rep_cols.get(&col).map(|&k| (k, v)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

fn zigzag_from_layout(layout: &Layout, field: Field, degree: usize) -> Result<ZigzagModule> {
    let c = layout.complex();
    let idx = DegreeIndex::new(c);
    let homology = layout
        .nodes
        .iter()
        .map(|sub| SubcomplexHomology::new(c, &idx, sub, degree, field))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homology.iter().map(SubcomplexHomology::dim).collect();
    let arrows = layout
        .arrow_ends()
        .into_iter()
        .map(|(source, target)| {
            let columns = homology[source]
                .reps
                .iter()
                .map(|z| homology[target].coordinates(z))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arrow {
                source,
                target,
                matrix: SparseMatrix::new(dims[target], columns)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ZigzagModule::new(field, dims, arrows)
}

pub fn build_zigzag(s: &PlSpace, field: Field, degree: usize) -> Result<ZigzagModule> {
    let levels = plcomplex::level_values(s)?;
    build_zigzag_with_levels(s, &levels, field, degree)
}

/// As [`build_zigzag`] with an explicit sorted level set, which must contain
/// every vertex value.
pub fn build_zigzag_with_levels(
    s: &PlSpace,
    levels: &[f64],
    field: Field,
    degree: usize,
) -> Result<ZigzagModule> {
    zigzag_from_layout(&Layout::new(s, levels)?, field, degree)
}

/// Row-reduced set of dense vectors with pivots on the first nonzero entry.
/// Each stored vector carries the combination of inputs that produced it.
struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl Echelon {
    fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    /// Eliminates every stored pivot from `v`, updating `coeffs` alongside.
    fn reduce(&self, v: &mut [u32], coeffs: &mut [u32]) {
        let f = self.field;
        for (p, row, rc) in &self.rows {
            if v[*p] != 0 {
                let factor = f.div(v[*p], row[*p]);
                for (a, b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(factor, *b));
                }
                for (a, b) in coeffs.iter_mut().zip(rc) {
                    *a = f.sub(*a, f.mul(factor, *b));
                }
            }
        }
    }

    fn push(&mut self, v: Vec<u32>, coeffs: Vec<u32>) {
        let p = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let pos = self.rows.partition_point(|r| r.0 < p);
        self.rows.insert(pos, (p, v, coeffs));
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn mat_vec(field: Field, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect()
}

struct Alive {
    vector: Vec<u32>,
    birth: usize,
    /// Born through a forward arrow (or at node 0); otherwise through the
    /// kernel of a backward arrow.
    forward: bool,
}

/// Interval decomposition by left-to-right basis maintenance.
///
/// The alive basis at each node is ordered so that every vector may absorb
/// multiples of the vectors before it without leaving the class of interval
/// decompositions: kernel-born intervals first (youngest first), then the
/// rest (oldest first). A dependency among images then retires the latest
/// participant.
pub fn decompose(z: &ZigzagModule) -> Result<Vec<IntervalSummand>> {
    let f = z.field;
    let n = z.dims.len();
    let mut done: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut alive: Vec<Alive> = (0..z.dims[0])
        .map(|i| Alive {
            vector: unit(z.dims[0], i),
            birth: 0,
            forward: true,
        })
        .collect();

    for (j, arrow) in z.arrows.iter().enumerate() {
        alive.sort_by(|a, b| match (a.forward, b.forward) {
            (false, false) => b.birth.cmp(&a.birth),
            (true, true) => a.birth.cmp(&b.birth),
            (false, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
        });
        let m = arrow.matrix.to_dense();
        let (here, next) = (z.dims[j], z.dims[j + 1]);
        let mut survivors = Vec::with_capacity(next);

        if arrow.source == j {
            // forward: V_j → V_{j+1}
            let mut ech = Echelon::new(f);
            for a in alive {
                let image = mat_vec(f, &m, &a.vector);
                let mut reduced = image.clone();
                ech.reduce(&mut reduced, &mut []);
                if reduced.iter().all(|&x| x == 0) {
                    *done.entry((a.birth, j)).or_insert(0) += 1;
                } else {
                    ech.push(reduced, Vec::new());
                    survivors.push(Alive { vector: image, ..a });
                }
            }
            for k in 0..next {
                let mut e = unit(next, k);
                ech.reduce(&mut e, &mut []);
                if e.iter().any(|&x| x != 0) {
                    ech.push(e, Vec::new());
                    survivors.push(Alive {
                        vector: unit(next, k),
                        birth: j + 1,
                        forward: true,
                    });
                }
            }
        } else {
            // backward: V_{j+1} → V_j
            let cols = next;
            let mut image = Echelon::new(f);
            let mut kernel = Vec::new();
            for c in 0..cols {
                let mut col: Vec<u32> = (0..here).map(|r| m[r][c]).collect();
                let mut coeffs = unit(cols, c);
                image.reduce(&mut col, &mut coeffs);
                if col.iter().all(|&x| x == 0) {
                    kernel.push(coeffs);
                } else {
                    image.push(col, coeffs);
                }
            }
            let count = alive.len();
            let mut quotient = Echelon::new(f);
            for i in 0..count {
                let mut q = alive[i].vector.clone();
                image.reduce(&mut q, &mut vec![0; cols]);
                let mut coeffs = unit(count, i);
                quotient.reduce(&mut q, &mut coeffs);
                if q.iter().any(|&x| x != 0) {
                    quotient.push(q, coeffs);
                    *done.entry((alive[i].birth, j)).or_insert(0) += 1;
                    continue;
                }
                // the adjusted vector lies in the image; pull it back
                let mut w = vec![0; here];
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for (a, &b) in w.iter_mut().zip(&alive[k].vector) {
                            *a = f.add(*a, f.mul(c, b));
                        }
                    }
                }
                let mut pre = vec![0; cols];
                image.reduce(&mut w, &mut pre);
                debug_assert!(w.iter().all(|&x| x == 0));
                // w - Σ pre_k col_k = 0 in terms of the tracked combinations
                let preimage: Vec<u32> = pre.iter().map(|&x| f.neg(x)).collect();
                survivors.push(Alive {
                    vector: preimage,
                    birth: alive[i].birth,
                    forward: alive[i].forward,
                });
            }
            for k in kernel {
                survivors.push(Alive {
                    vector: k,
                    birth: j + 1,
                    forward: false,
                });
            }
        }
        debug_assert_eq!(survivors.len(), next);
        alive = survivors;
    }
    for a in alive {
        *done.entry((a.birth, n - 1)).or_insert(0) += 1;
    }
    Ok(done
        .into_iter()
        .map(|((first, last), multiplicity)| IntervalSummand {
            first,
            last,
            multiplicity,
        })
        .collect())
}

pub fn level_barcodes(s: &PlSpace, field: Field) -> Result<Barcode> {
    let levels = plcomplex::level_values(s)?;
    level_barcodes_with_levels(s, &levels, field)
}

/// Level barcodes computed over an explicit level set containing all vertex
/// values; extra regular values must not change the result.
pub fn level_barcodes_with_levels(s: &PlSpace, levels: &[f64], field: Field) -> Result<Barcode> {
    let layout = Layout::new(s, levels)?;
    let top = layout.complex().dim().unwrap_or(0);
    let mut code = Barcode::new();
    for degree in 0..=top {
        let z = zigzag_from_layout(&layout, field, degree)?;
        for iv in decompose(&z)? {
            code.insert(layout.bar(degree, iv.first, iv.last), iv.multiplicity);
        }
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::BarKind;
    use crate::fixtures;
    use crate::oracle;

    fn f2() -> Field {
        Field::default()
    }

    /// Dense mod-p helpers for the rank-invariant oracle below.
    mod dense {
        use crate::algebra::Field;

        pub fn rank(f: Field, mut a: Vec<Vec<u32>>) -> usize {
            let rows = a.len();
            let cols = a.first().map_or(0, Vec::len);
            let mut rk = 0;
            for c in 0..cols {
                let Some(p) = (rk..rows).find(|&r| a[r][c] != 0) else {
                    continue;
                };
                a.swap(rk, p);
                let inv = f.inv(a[rk][c]);
                for x in a[rk].iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for r in 0..rows {
                    if r != rk && a[r][c] != 0 {
                        let k = a[r][c];
                        for cc in 0..cols {
                            a[r][cc] = f.sub(a[r][cc], f.mul(k, a[rk][cc]));
                        }
                    }
                }
                rk += 1;
            }
            rk
        }

        /// Basis of the null space of `a` (`rows × cols`).
        pub fn null_space(f: Field, a: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
            let mut m: Vec<Vec<u32>> = a.to_vec();
            let rows = m.len();
            let mut pivots = Vec::new();
            let mut rk = 0;
            for c in 0..cols {
                let Some(p) = (rk..rows).find(|&r| m[r][c] != 0) else {
                    continue;
                };
                m.swap(rk, p);
                let inv = f.inv(m[rk][c]);
                for x in m[rk].iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for r in 0..rows {
                    if r != rk && m[r][c] != 0 {
                        let k = m[r][c];
                        for cc in 0..cols {
                            m[r][cc] = f.sub(m[r][cc], f.mul(k, m[rk][cc]));
                        }
                    }
                }
                pivots.push(c);
                rk += 1;
            }
            (0..cols)
                .filter(|c| !pivots.contains(c))
                .map(|free| {
                    let mut v = vec![0; cols];
                    v[free] = 1;
                    for (r, &pc) in pivots.iter().enumerate() {
                        v[pc] = f.neg(m[r][free]);
                    }
                    v
                })
                .collect()
        }
    }

    /// Rank of the limit-to-colimit map of the restriction to nodes `i..=j`,
    /// which counts the intervals containing `[i, j]`.
    fn rank_invariant(z: &ZigzagModule, i: usize, j: usize) -> usize {
        let f = z.field();
        let dims = z.dims();
        let offs: Vec<usize> = (i..=j + 1)
            .scan(0, |acc, k| {
                let o = *acc;
                if k <= j {
                    *acc += dims[k];
                }
                Some(o)
            })
            .collect();
        let total = offs[j + 1 - i];
        // limit: tuples with A v_src = v_tgt on every arrow inside the range
        let mut constraints: Vec<Vec<u32>> = Vec::new();
        for a in &z.arrows()[i..j] {
            let m = a.matrix.to_dense();
            for r in 0..dims[a.target] {
                let mut row = vec![0; total];
                for c in 0..dims[a.source] {
                    row[offs[a.source - i] + c] = m[r][c];
                }
                row[offs[a.target - i] + r] = f.sub(row[offs[a.target - i] + r], 1);
                constraints.push(row);
            }
        }
        let limit = dense::null_space(f, &constraints, total);
        // colimit relations: ι_tgt(A x) - ι_src(x)
        let mut relations: Vec<Vec<u32>> = Vec::new();
        for a in &z.arrows()[i..j] {
            let m = a.matrix.to_dense();
            for c in 0..dims[a.source] {
                let mut v = vec![0; total];
                for r in 0..dims[a.target] {
                    v[offs[a.target - i] + r] = m[r][c];
                }
                v[offs[a.source - i] + c] = f.sub(v[offs[a.source - i] + c], 1);
                relations.push(v);
            }
        }
        let images: Vec<Vec<u32>> = limit
            .iter()
            .map(|l| {
                let mut v = vec![0; total];
                v[..dims[i]].copy_from_slice(&l[..dims[i]]);
                v
            })
            .collect();
        let with: Vec<Vec<u32>> = relations.iter().chain(&images).cloned().collect();
        dense::rank(f, with) - dense::rank(f, relations)
    }

    /// Interval multiplicities by Möbius inversion of the rank invariant.
    fn oracle_intervals(z: &ZigzagModule) -> Vec<IntervalSummand> {
        let n = z.dims().len();
        let rk = |i: isize, j: usize| -> isize {
            if i < 0 || j >= n {
                0
            } else {
                rank_invariant(z, i as usize, j) as isize
            }
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let m = rk(i as isize, j) - rk(i as isize - 1, j) - rk(i as isize, j + 1)
                    + rk(i as isize - 1, j + 1);
                assert!(m >= 0);
                if m > 0 {
                    out.push(IntervalSummand {
                        first: i,
                        last: j,
                        multiplicity: m as usize,
                    });
                }
            }
        }
        out
    }

    fn check_contract(z: &ZigzagModule, ivs: &[IntervalSummand]) {
        for (k, &d) in z.dims().iter().enumerate() {
            let covered: usize = ivs
                .iter()
                .filter(|iv| iv.first <= k && k <= iv.last)
                .map(|iv| iv.multiplicity)
                .sum();
            assert_eq!(covered, d, "node {k}");
        }
        for (k, r) in z.arrow_ranks().unwrap().into_iter().enumerate() {
            let through: usize = ivs
                .iter()
                .filter(|iv| iv.first <= k && k < iv.last)
                .map(|iv| iv.multiplicity)
                .sum();
            assert_eq!(through, r, "arrow {k}");
        }
    }

    #[test]
    fn single_node() {
        let z = ZigzagModule::new(f2(), vec![1], vec![]).unwrap();
        assert_eq!(
            decompose(&z).unwrap(),
            vec![IntervalSummand {
                first: 0,
                last: 0,
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn zero_arrow_splits() {
        let arrow = Arrow {
            source: 1,
            target: 0,
            matrix: SparseMatrix::zeros(1, 1),
        };
        let z = ZigzagModule::new(f2(), vec![1, 1], vec![arrow]).unwrap();
        assert_eq!(
            decompose(&z).unwrap(),
            vec![
                IntervalSummand {
                    first: 0,
                    last: 0,
                    multiplicity: 1
                },
                IntervalSummand {
                    first: 1,
                    last: 1,
                    multiplicity: 1
                },
            ]
        );
    }

    #[test]
    fn inconsistent_shapes_rejected() {
        let arrow = Arrow {
            source: 0,
            target: 1,
            matrix: SparseMatrix::zeros(2, 1),
        };
        assert!(ZigzagModule::new(f2(), vec![1, 1], vec![arrow]).is_err());
        assert!(ZigzagModule::new(f2(), vec![1, 1], vec![]).is_err());
        let skip = Arrow {
            source: 0,
            target: 2,
            matrix: SparseMatrix::zeros(1, 1),
        };
        assert!(ZigzagModule::new(f2(), vec![1, 1, 1], vec![skip.clone(), skip]).is_err());
    }

    #[test]
    fn segment_zigzag() {
        let z = build_zigzag(&fixtures::seg(), f2(), 0).unwrap();
        assert_eq!(z.dims(), &[1, 1, 1]);
        assert_eq!(z.arrow_ranks().unwrap(), vec![1, 1]);
    }

    #[test]
    fn circle_zigzag() {
        let z = build_zigzag(&fixtures::circ(), f2(), 0).unwrap();
        assert_eq!(z.dims(), &[1, 2, 2, 2, 1]);
        // every arrow surjective
        let ranks = z.arrow_ranks().unwrap();
        for (a, r) in z.arrows().iter().zip(ranks) {
            assert_eq!(r, z.dims()[a.target]);
        }
        let ivs = decompose(&z).unwrap();
        assert_eq!(
            ivs,
            vec![
                IntervalSummand {
                    first: 0,
                    last: 4,
                    multiplicity: 1
                },
                IntervalSummand {
                    first: 1,
                    last: 3,
                    multiplicity: 1
                },
            ]
        );
        check_contract(&z, &ivs);

        let z1 = build_zigzag(&fixtures::circ(), f2(), 1).unwrap();
        assert!(z1.dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn fixture_barcodes() {
        let seg = level_barcodes(&fixtures::seg(), f2()).unwrap();
        assert_eq!(seg, Barcode::from_iter([Bar::closed(0, 0.0, 1.0)]));

        let v = level_barcodes(&fixtures::v(), f2()).unwrap();
        assert_eq!(
            v,
            Barcode::from_iter([Bar::closed(0, 0.0, 1.0), Bar::open_closed(0, 0.0, 1.0)])
        );

        let lam = level_barcodes(&fixtures::lambda(), f2()).unwrap();
        assert_eq!(
            lam,
            Barcode::from_iter([Bar::closed(0, -1.0, 0.0), Bar::closed_open(0, -1.0, 0.0)])
        );

        let circ = level_barcodes(&fixtures::circ(), f2()).unwrap();
        assert_eq!(
            circ,
            Barcode::from_iter([Bar::closed(0, 0.0, 2.0), Bar::open(0, 0.0, 2.0)])
        );
        assert_eq!(circ.in_degree(1), Barcode::new());
    }

    #[test]
    fn isolated_vertex_gives_degenerate_closed_bar() {
        let s = PlSpace::new(&[(0, 0.0), (1, 1.0), (2, 3.0)], &[vec![0, 1]], 3).unwrap();
        let code = level_barcodes(&s, f2()).unwrap();
        assert_eq!(code.multiplicity(&Bar::closed(0, 3.0, 3.0)), 1);
        assert_eq!(code.count(0, BarKind::Closed), 2);
    }

    #[test]
    fn decomposition_matches_rank_invariant_oracle() {
        for seed in 0..60 {
            let spec = oracle::RandomSpec::small(seed);
            let s = oracle::random_space(&spec);
            let field = Field::new([2, 3, 5][seed as usize % 3]).unwrap();
            for degree in 0..=s.dim() {
                let z = build_zigzag(&s, field, degree).unwrap();
                let ivs = decompose(&z).unwrap();
                check_contract(&z, &ivs);
                assert_eq!(ivs, oracle_intervals(&z), "seed {seed} degree {degree}");
            }
        }
    }

    #[test]
    fn synthetic_zigzags_match_oracle() {
        // random matrices on alternating and same-direction arrows
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let field = Field::new(p).unwrap();
            let n = rng.gen_range(1..6);
            let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let arrows = (0..n - 1)
                .map(|k| {
                    let (source, target) = if rng.gen_bool(0.5) {
                        (k, k + 1)
                    } else {
                        (k + 1, k)
                    };
                    let dense: Vec<Vec<u32>> = (0..dims[target])
                        .map(|_| {
                            (0..dims[source])
                                .map(|_| {
                                    if rng.gen_bool(0.5) {
                                        0
                                    } else {
                                        rng.gen_range(0..p)
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    Arrow {
                        source,
                        target,
                        matrix: SparseMatrix::from_dense(field, dims[target], dims[source], &dense),
                    }
                })
                .collect();
            let z = ZigzagModule::new(field, dims, arrows).unwrap();
            let ivs = decompose(&z).unwrap();
            check_contract(&z, &ivs);
            assert_eq!(ivs, oracle_intervals(&z), "{z:?}");
        }
    }
}
