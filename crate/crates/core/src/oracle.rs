//! Brute-force ground truth for tests: dense Gaussian elimination over `Z/p`
//! and seeded random inputs. Nothing here calls the sparse reduction.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, SparseMatrix};
use crate::error::{Error, Result};
use crate::io::{SpaceDocument, VertexEntry};
use crate::levelset::Layout;
use crate::morse::{ChainComplexData, Generator};
use crate::plcomplex::{self, PlSpace, SimplicialComplex};

type Dense = Vec<Vec<u32>>;

/// Row echelon form in place; returns the rank.
fn eliminate(f: Field, a: &mut Dense) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = f.inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let k = a[r][c];
                for j in 0..cols {
                    let v = f.mul(k, a[rank][j]);
                    a[r][j] = f.sub(a[r][j], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense_rank(f: Field, a: &Dense) -> usize {
    eliminate(f, &mut a.clone())
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns.
fn null_space(f: Field, a: &Dense, cols: usize) -> Vec<Vec<u32>> {
    let mut m = a.clone();
    let rank = eliminate(f, &mut m);
    let mut pivot_cols = Vec::new();
    for row in m.iter().take(rank) {
        pivot_cols.push(row.iter().position(|&x| x != 0).unwrap());
    }
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (row, &pc) in m.iter().zip(&pivot_cols) {
                x[pc] = f.neg(row[free]);
            }
            x
        })
        .collect()
}

/// Dense boundary `∂_r` between the `r`- and `(r-1)`-simplices of `subset`,
/// with the index lists used for rows and columns.
fn boundary_block(
    c: &SimplicialComplex,
    subset: &[usize],
    r: usize,
    f: Field,
) -> (Dense, Vec<usize>, Vec<usize>) {
    let of_dim = |d: usize| -> Vec<usize> {
        subset
            .iter()
            .copied()
            .filter(|&i| c.simplex(i).len() == d + 1)
            .collect()
    };
    let cols = of_dim(r);
    let rows = if r == 0 { Vec::new() } else { of_dim(r - 1) };
    let row_of: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut a = vec![vec![0; cols.len()]; rows.len()];
    if r > 0 {
        for (j, &s) in cols.iter().enumerate() {
            let simplex = c.simplex(s);
            for drop in 0..simplex.len() {
                let face: Vec<usize> = simplex
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let i = c.index_of(&face).expect("face exists");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                a[row_of[&i]][j] = f.from_i64(sign);
            }
        }
    }
    (a, rows, cols)
}

fn check_closed(c: &SimplicialComplex, subset: &[usize]) -> Result<()> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &i in &sorted {
        let s = c.simplex(i);
        if s.len() > 1 {
            for drop in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let fi = c.index_of(&face).expect("face exists");
                if sorted.binary_search(&fi).is_err() {
                    return Err(Error::InvalidComplex(format!(
                        "subset contains {s:?} but not its face {face:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Betti numbers of the subcomplex `subset`, one entry per degree up to the
/// dimension of `c`.
pub fn betti_of(c: &SimplicialComplex, subset: &[usize], f: Field) -> Result<Vec<usize>> {
    check_closed(c, subset)?;
    let Some(top) = c.dim() else {
        return Ok(Vec::new());
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|r| dense_rank(f, &boundary_block(c, subset, r, f).0))
        .collect();
    Ok((0..=top)
        .map(|r| {
            let n = subset
                .iter()
                .filter(|&&i| c.simplex(i).len() == r + 1)
                .count();
            n - ranks[r] - ranks[r + 1]
        })
        .collect())
}

pub fn betti(s: &PlSpace, f: Field) -> Result<Vec<usize>> {
    let all: Vec<usize> = (0..s.complex().len()).collect();
    betti_of(s.complex(), &all, f)
}

/// Betti numbers of the lower-star sublevel complex `f^{-1}((-∞, t])`.
pub fn sublevel_betti(s: &PlSpace, t: f64, f: Field) -> Result<Vec<usize>> {
    betti_of(s.complex(), &s.full_subcomplex(f64::NEG_INFINITY, t), f)
}

/// Dense chain-complex Betti numbers.
pub fn chain_complex_betti(c: &ChainComplexData) -> Vec<usize> {
    let f = c.field();
    let rank = |r: usize| c.boundary(r).map_or(0, |m| dense_rank(f, &m.to_dense()));
    (0..c.degrees())
        .map(|r| c.generators(r).len() - rank(r) - rank(r + 1))
        .collect()
}

/// Node homology dimensions and arrow ranks of the levelset zigzag in one
/// degree, computed node by node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagProfile {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
}

pub fn zigzag_profile(s: &PlSpace, f: Field, degree: usize) -> Result<ZigzagProfile> {
    let layout = Layout::new(s, &plcomplex::level_values(s)?)?;
    let c = layout.complex();
    let mut dims = Vec::new();
    for node in &layout.nodes {
        dims.push(betti_of(c, node, f)?.get(degree).copied().unwrap_or(0));
    }
    let mut ranks = Vec::new();
    for (source, target) in layout.arrow_ends() {
        let (small, big) = (&layout.nodes[source], &layout.nodes[target]);
        // cycles of the level, written in the chain space of the interlevel
        let (d_small, _, cols_small) = boundary_block(c, small, degree, f);
        let cycles = null_space(f, &d_small, cols_small.len());
        let (mut stacked, chains_big, _) = boundary_block(c, big, degree + 1, f);
        let position: BTreeMap<usize, usize> = chains_big
            .iter()
            .enumerate()
            .map(|(k, &i)| (i, k))
            .collect();
        let base_rank = dense_rank(f, &stacked);
        for z in &cycles {
            let mut col = vec![0; chains_big.len()];
            for (k, &i) in cols_small.iter().enumerate() {
                col[position[&i]] = z[k];
            }
            for (row, &x) in stacked.iter_mut().zip(&col) {
                row.push(x);
            }
        }
        ranks.push(dense_rank(f, &stacked) - base_rank);
    }
    Ok(ZigzagProfile { dims, ranks })
}

/// Parameters of a random PL space. Values are integers in `0..=max_value`
/// so ties are frequent and arithmetic is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub top_dim: usize,
    pub edge_density: f64,
    pub triangle_density: f64,
    pub max_value: u32,
}

impl RandomSpec {
    /// Up to 12 vertices, dimension at most 2, values `0..=4`.
    pub fn small(seed: u64) -> Self {
        RandomSpec {
            seed,
            min_vertices: 2,
            max_vertices: 12,
            top_dim: 2,
            edge_density: 0.35,
            triangle_density: 0.5,
            max_value: 4,
        }
    }
}

pub fn random_document(spec: &RandomSpec) -> SpaceDocument {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n =
        rng.gen_range(spec.min_vertices.max(1)..=spec.max_vertices.max(spec.min_vertices.max(1)));
    // shuffled ids so that id order and value order are unrelated
    let mut ids: Vec<u64> = (0..n as u64).collect();
    ids.shuffle(&mut rng);
    let vertices: Vec<VertexEntry> = ids
        .iter()
        .map(|&id| VertexEntry {
            id,
            value: rng.gen_range(0..=spec.max_value) as f64,
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n as u64 {
        for b in a + 1..n as u64 {
            if spec.top_dim >= 1 && rng.gen_bool(spec.edge_density) {
                edges.push([a, b]);
            }
        }
    }
    let mut simplices: Vec<Vec<u64>> = (0..n as u64).map(|v| vec![v]).collect();
    simplices.extend(edges.iter().map(|e| e.to_vec()));
    if spec.top_dim >= 2 {
        let has = |a: u64, b: u64| edges.binary_search(&[a.min(b), a.max(b)]).is_ok();
        for &[a, b] in &edges {
            for c in b + 1..n as u64 {
                if has(a, c) && has(b, c) && rng.gen_bool(spec.triangle_density) {
                    simplices.push(vec![a, b, c]);
                }
            }
        }
    }
    SpaceDocument {
        field: None,
        vertices,
        simplices,
    }
}

pub fn random_space(spec: &RandomSpec) -> PlSpace {
    plcomplex::load(&random_document(spec), spec.top_dim.max(1)).expect("random document is valid")
}

/// A random chain complex whose boundaries compose to zero and lower values.
/// Each `∂_{r+1}` is a random combination of a kernel basis of `∂_r`.
pub fn random_chain_complex(seed: u64, f: Field) -> ChainComplexData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..degrees).map(|_| rng.gen_range(0..=5)).collect();
    let p = f.characteristic();
    let mut generators = Vec::new();
    for (r, &n) in sizes.iter().enumerate() {
        for k in 0..n {
            generators.push(Generator {
                degree: r,
                value: r as f64 * 10.0 + rng.gen_range(0..8) as f64,
                name: format!("e{r}_{k}"),
            });
        }
    }
    let mut entries = BTreeMap::new();
    let mut previous: Dense = Vec::new();
    for r in 1..degrees {
        let (rows, cols) = (sizes[r - 1], sizes[r]);
        let kernel = if r == 1 {
            // ∂_0 = 0, so everything is a cycle
            (0..rows)
                .map(|i| (0..rows).map(|j| u32::from(i == j)).collect())
                .collect()
        } else {
            null_space(f, &previous, rows)
        };
        let mut d: Dense = vec![vec![0; cols]; rows];
        for j in 0..cols {
            for z in &kernel {
                let coeff = rng.gen_range(0..p);
                for i in 0..rows {
                    d[i][j] = f.add(d[i][j], f.mul(coeff, z[i]));
                }
            }
        }
        let list: Vec<(usize, usize, i64)> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .map(|(i, j)| (i, j, d[i][j] as i64))
            .collect();
        entries.insert(r, list);
        previous = d;
    }
    ChainComplexData::new(f, generators, &entries).expect("shapes agree")
}

/// Dense view for tests that want to cross-check sparse results.
pub fn rank_dense(m: &SparseMatrix, f: Field) -> usize {
    dense_rank(f, &m.to_dense())
}
