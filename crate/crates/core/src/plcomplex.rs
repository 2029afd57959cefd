//! Finite simplicial complexes carrying a piecewise-linear map, and the
//! subcomplexes (levels, interlevels, sublevels) cut out of them.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::io::SpaceDocument;

pub const DEFAULT_MAX_DIM: usize = 3;

/// A simplex as a sorted list of internal vertex indices.
pub type Simplex = Vec<usize>;

/// Replaces `-0.0` by `0.0` so that equal values compare and print equal.
pub fn canonical(x: f64) -> f64 {
    x + 0.0
}

/// A face-closed set of simplices, stored sorted by dimension then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds the face closure of the given simplices (each already sorted).
    pub fn closure(generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all = BTreeSet::new();
        for s in generators {
            add_faces(&mut all, &s);
        }
        Self::from_closed(all)
    }

    fn from_closed(all: BTreeSet<Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SimplicialComplex { simplices, index }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Signed codimension-one faces of simplex `i` as `(face index, ±1)`.
    pub fn boundary(&self, i: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[i];
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|k| {
                let mut face = s.clone();
                face.remove(k);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                (self.index[&face], sign)
            })
            .collect()
    }

    /// Whether every face of every listed simplex is listed too.
    pub fn is_face_closed(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        subset
            .iter()
            .all(|&i| self.boundary(i).iter().all(|(f, _)| set.contains(f)))
    }
}

fn add_faces(all: &mut BTreeSet<Simplex>, s: &[usize]) {
    let n = s.len();
    for mask in 1u32..(1 << n) {
        let face: Simplex = (0..n)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| s[k])
            .collect();
        all.insert(face);
    }
}

/// A finite simplicial complex with a real value per vertex, extended
/// linearly over each simplex.
///
/// Vertices are stored sorted by external id, so internal index order is id
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct PlSpace {
    ids: Vec<u64>,
    values: Vec<f64>,
    complex: SimplicialComplex,
}

impl PlSpace {
    pub fn new(vertices: &[(u64, f64)], simplices: &[Vec<u64>], max_dim: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| vertices[i].0);
        let mut ids = Vec::with_capacity(vertices.len());
        let mut values = Vec::with_capacity(vertices.len());
        let mut pos = HashMap::new();
        for &i in &order {
            let (id, value) = vertices[i];
            if pos.insert(id, ids.len()).is_some() {
                return Err(Error::validation(
                    format!("vertices[{i}].id"),
                    format!("duplicate vertex id {id}"),
                ));
            }
            if !value.is_finite() {
                return Err(Error::validation(
                    format!("vertices[{i}].value"),
                    format!("value of vertex {id} is not finite"),
                ));
            }
            ids.push(id);
            values.push(canonical(value));
        }
        let mut generators: Vec<Simplex> = (0..ids.len()).map(|i| vec![i]).collect();
        for (k, s) in simplices.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::validation(
                    format!("simplices[{k}]"),
                    "empty simplex",
                ));
            }
            let mut local = Vec::with_capacity(s.len());
            for id in s {
                let Some(&i) = pos.get(id) else {
                    return Err(Error::validation(
                        format!("simplices[{k}]"),
                        format!("unknown vertex {id}"),
                    ));
                };
                local.push(i);
            }
            local.sort_unstable();
            local.dedup();
            if local.len() != s.len() {
                return Err(Error::validation(
                    format!("simplices[{k}]"),
                    "repeated vertex",
                ));
            }
            if local.len() > max_dim + 1 {
                return Err(Error::validation(
                    format!("simplices[{k}]"),
                    format!("dimension {} exceeds maximum {max_dim}", local.len() - 1),
                ));
            }
            generators.push(local);
        }
        Ok(PlSpace {
            ids,
            values,
            complex: SimplicialComplex::closure(generators),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    /// Maximum vertex value on a simplex.
    pub fn simplex_max(&self, i: usize) -> f64 {
        self.complex.simplices[i]
            .iter()
            .map(|&v| self.values[v])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn simplex_min(&self, i: usize) -> f64 {
        self.complex.simplices[i]
            .iter()
            .map(|&v| self.values[v])
            .fold(f64::INFINITY, f64::min)
    }

    /// Simplices as lists of external ids.
    pub fn simplices_by_id(&self) -> Vec<Vec<u64>> {
        self.complex
            .simplices
            .iter()
            .map(|s| s.iter().map(|&v| self.ids[v]).collect())
            .collect()
    }

    /// The same complex with `x ↦ -x` applied to every vertex value.
    pub fn negate(&self) -> PlSpace {
        self.map_values(|x| -x)
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> PlSpace {
        PlSpace {
            ids: self.ids.clone(),
            values: self.values.iter().map(|&x| canonical(f(x))).collect(),
            complex: self.complex.clone(),
        }
    }

    /// Renames vertex ids; `rename` must be injective.
    pub fn relabel(&self, rename: impl Fn(u64) -> u64) -> Result<PlSpace> {
        let vertices: Vec<(u64, f64)> = self
            .ids
            .iter()
            .zip(&self.values)
            .map(|(&id, &x)| (rename(id), x))
            .collect();
        let simplices: Vec<Vec<u64>> = self
            .simplices_by_id()
            .into_iter()
            .map(|s| s.into_iter().map(&rename).collect())
            .collect();
        PlSpace::new(&vertices, &simplices, usize::MAX - 1)
    }

    /// Full subcomplex on the vertices whose value lies in `[lo, hi]`.
    pub fn full_subcomplex(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.complex.len())
            .filter(|&i| {
                self.complex.simplices[i]
                    .iter()
                    .all(|&v| self.values[v] >= lo && self.values[v] <= hi)
            })
            .collect()
    }
}

/// Validates a parsed input document into a [`PlSpace`].
pub fn load(doc: &SpaceDocument, max_dim: usize) -> Result<PlSpace> {
    if doc.simplices.is_empty() {
        return Err(Error::validation(
            "simplices",
            "document lists no simplices",
        ));
    }
    let vertices: Vec<(u64, f64)> = doc.vertices.iter().map(|v| (v.id, v.value)).collect();
    PlSpace::new(&vertices, &doc.simplices, max_dim)
}

/// Sorted distinct vertex values; a superset of the critical values.
pub fn level_values(s: &PlSpace) -> Result<Vec<f64>> {
    if s.vertex_count() == 0 {
        return Err(Error::EmptySpace);
    }
    let mut v = s.values.clone();
    v.sort_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

/// Provenance of a vertex created by slicing: the edge it subdivides
/// (internal indices of the refinement at split time) and the level index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitOrigin {
    pub edge: (usize, usize),
    pub level_index: usize,
}

/// A PL subdivision of a space in which every prescribed level is a
/// subcomplex preimage.
#[derive(Debug, Clone)]
pub struct SlicedSpace {
    space: PlSpace,
    levels: Vec<f64>,
    /// One entry per vertex; `None` for original vertices.
    origins: Vec<Option<SplitOrigin>>,
}

impl SlicedSpace {
    pub fn space(&self) -> &PlSpace {
        &self.space
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn origin(&self, v: usize) -> Option<SplitOrigin> {
        self.origins[v]
    }

    fn is_level(&self, x: f64) -> bool {
        x.is_infinite() || self.levels.contains(&x)
    }

    /// Full subcomplex `f^{-1}([a, b])`; `a == b` gives the level at `a`.
    /// Bounds must be sliced levels or infinite.
    pub fn interlevel(&self, a: f64, b: f64) -> Result<Vec<usize>> {
        for x in [a, b] {
            if !self.is_level(x) {
                return Err(Error::NotALevel(x));
            }
        }
        if a > b {
            return Err(Error::UnsortedLevels(1));
        }
        Ok(self.space.full_subcomplex(a, b))
    }
}

/// Subdivides `s` so that no simplex crosses any of `levels` in its interior.
///
/// Each crossing edge is split by a stellar subdivision at the point where
/// the linear map takes the level value. Levels are processed in order and
/// crossing edges in lexicographic order, which fixes the new vertex ids.
pub fn slice(s: &PlSpace, levels: &[f64]) -> Result<SlicedSpace> {
    for (i, w) in levels.windows(2).enumerate() {
        if w[0].total_cmp(&w[1]) != Ordering::Less {
            return Err(Error::UnsortedLevels(i + 1));
        }
    }
    let mut values = s.values.clone();
    let mut origins: Vec<Option<SplitOrigin>> = vec![None; values.len()];
    let mut all: BTreeSet<Simplex> = s.complex.simplices.iter().cloned().collect();
    for (li, &level) in levels.iter().enumerate() {
        let crossing: Vec<(usize, usize)> = all
            .iter()
            .filter(|e| e.len() == 2)
            .filter(|e| {
                let (x, y) = (values[e[0]], values[e[1]]);
                x.min(y) < level && level < x.max(y)
            })
            .map(|e| (e[0], e[1]))
            .collect();
        for (u, v) in crossing {
            let m = values.len();
            values.push(canonical(level));
            origins.push(Some(SplitOrigin {
                edge: (u, v),
                level_index: li,
            }));
            let (touched, kept): (Vec<Simplex>, Vec<Simplex>) = std::mem::take(&mut all)
                .into_iter()
                .partition(|t| t.contains(&u) && t.contains(&v));
            all = kept.into_iter().collect();
            for t in touched {
                for drop in [u, v] {
                    let mut half: Simplex = t.iter().copied().filter(|&x| x != drop).collect();
                    half.push(m);
                    half.sort_unstable();
                    add_faces(&mut all, &half);
                }
            }
        }
    }
    let next_id = s.ids.last().map_or(0, |&x| x + 1);
    let mut ids = s.ids.clone();
    ids.extend((0..values.len() - s.ids.len()).map(|k| next_id + k as u64));
    Ok(SlicedSpace {
        space: PlSpace {
            ids,
            values,
            complex: SimplicialComplex::from_closed(all),
        },
        levels: levels.iter().map(|&x| canonical(x)).collect(),
        origins,
    })
}

/// Lower-star order: by maximum vertex value, then dimension, then vertex
/// ids lexicographically. Every prefix is a subcomplex.
pub fn sublevel_order(s: &PlSpace) -> Vec<usize> {
    let mut order: Vec<usize> = (0..s.complex.len()).collect();
    order.sort_by(|&a, &b| {
        s.simplex_max(a)
            .total_cmp(&s.simplex_max(b))
            .then_with(|| {
                s.complex.simplices[a]
                    .len()
                    .cmp(&s.complex.simplices[b].len())
            })
            .then_with(|| s.complex.simplices[a].cmp(&s.complex.simplices[b]))
    });
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;

    #[test]
    fn load_segment() {
        let s = fixtures::seg();
        assert_eq!(s.complex().len(), 3);
        assert_eq!(level_values(&s).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn load_circle() {
        let s = fixtures::circ();
        assert_eq!(s.complex().len(), 8);
        assert_eq!(level_values(&s).unwrap(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn unknown_vertex_is_named() {
        let err = PlSpace::new(&[(0, 0.0), (1, 1.0)], &[vec![0, 2]], 3).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("unknown vertex 2"), "{msg}");
        assert!(msg.contains("simplices[0]"), "{msg}");
    }

    #[test]
    fn other_validation_errors() {
        assert!(PlSpace::new(&[(0, 0.0), (0, 1.0)], &[], 3).is_err());
        assert!(PlSpace::new(&[(0, f64::NAN)], &[], 3).is_err());
        assert!(PlSpace::new(&[(0, 0.0), (1, 0.0)], &[vec![0, 1]], 0).is_err());
        assert!(matches!(PlSpace::new(&[], &[], 3), Err(Error::EmptySpace)));
    }

    #[test]
    fn constant_map_has_one_level() {
        let s = PlSpace::new(&[(0, 5.0), (1, 5.0), (2, 5.0)], &[vec![0, 1, 2]], 3).unwrap();
        assert_eq!(level_values(&s).unwrap(), vec![5.0]);
    }

    #[test]
    fn slice_segment_at_midpoint() {
        let s = fixtures::seg();
        let sl = slice(&s, &[0.5]).unwrap();
        let sp = sl.space();
        assert_eq!(sp.vertex_count(), 3);
        assert_eq!(sp.value(2), 0.5);
        assert_eq!(sp.complex().len(), 5);
        assert!(sp.complex().index_of(&[0, 2]).is_some());
        assert!(sp.complex().index_of(&[1, 2]).is_some());
        assert!(sp.complex().index_of(&[0, 1]).is_none());
        assert_eq!(
            sl.origin(2),
            Some(SplitOrigin {
                edge: (0, 1),
                level_index: 0
            })
        );
    }

    #[test]
    fn slice_circle_at_two_levels() {
        let s = fixtures::circ();
        let sl = slice(&s, &[0.5, 1.5]).unwrap();
        // each of the 4 edges crosses exactly one level
        assert_eq!(sl.space().vertex_count(), 8);
        assert_eq!(sl.space().complex().len(), 16);
    }

    #[test]
    fn slice_outside_range_is_identity() {
        let s = fixtures::circ();
        let sl = slice(&s, &[-3.0, 7.0]).unwrap();
        assert_eq!(sl.space().complex(), s.complex());
    }

    #[test]
    fn slice_rejects_unsorted() {
        let s = fixtures::circ();
        assert!(matches!(
            slice(&s, &[1.5, 0.5]),
            Err(Error::UnsortedLevels(1))
        ));
        assert!(slice(&s, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn slice_is_idempotent() {
        let s = fixtures::circ();
        let once = slice(&s, &[0.5, 1.5]).unwrap();
        let twice = slice(once.space(), &[0.5, 1.5]).unwrap();
        assert_eq!(once.space().complex(), twice.space().complex());
    }

    #[test]
    fn circle_level_and_interlevel() {
        let s = fixtures::circ();
        let sl = slice(&s, &[1.0]).unwrap();
        let lvl = sl.interlevel(1.0, 1.0).unwrap();
        let simplices: Vec<_> = lvl
            .iter()
            .map(|&i| sl.space().complex().simplex(i).clone())
            .collect();
        assert_eq!(simplices, vec![vec![1], vec![3]]);

        let sl = slice(&s, &[0.5, 1.5]).unwrap();
        let band = sl.interlevel(0.5, 1.5).unwrap();
        let field = crate::algebra::Field::default();
        let betti = oracle::betti_of(sl.space().complex(), &band, field).unwrap();
        assert_eq!(betti[0], 2);
        assert_eq!(betti.get(1).copied().unwrap_or(0), 0);

        let whole = sl.interlevel(0.0, 2.0);
        assert!(whole.is_err(), "0 and 2 were not sliced");
        let sl = slice(&s, &[0.0, 0.5, 1.5, 2.0]).unwrap();
        assert_eq!(
            sl.interlevel(0.0, 2.0).unwrap().len(),
            sl.space().complex().len()
        );
        assert!(matches!(sl.interlevel(0.7, 2.0), Err(Error::NotALevel(_))));
    }

    #[test]
    fn sublevel_orders() {
        let s = fixtures::seg();
        let order = sublevel_order(&s);
        let listed: Vec<_> = order
            .iter()
            .map(|&i| s.complex().simplex(i).clone())
            .collect();
        assert_eq!(listed, vec![vec![0], vec![1], vec![0, 1]]);

        let v = fixtures::v();
        let listed: Vec<Vec<u64>> = sublevel_order(&v)
            .iter()
            .map(|&i| v.complex().simplex(i).iter().map(|&x| v.id(x)).collect())
            .collect();
        // ids: a = 0, b = 1, c = 2
        assert_eq!(listed[..3], [vec![2], vec![0], vec![1]]);
        assert_eq!(listed[3..].len(), 2);
    }

    #[test]
    fn random_spaces_properties() {
        let field = crate::algebra::Field::default();
        for seed in 0..100 {
            let s = oracle::random_space(&oracle::RandomSpec::small(seed));
            let n = s.complex().len();
            // every sublevel prefix is face-closed
            let order = sublevel_order(&s);
            for k in 0..=n {
                assert!(
                    s.complex().is_face_closed(&order[..k]),
                    "seed {seed} prefix {k}"
                );
            }
            // subdivision invariance of Betti numbers
            let levels = level_values(&s).unwrap();
            let mids: Vec<f64> = levels.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
            let sl = slice(&s, &mids).unwrap();
            let all: Vec<usize> = (0..n).collect();
            let all_sliced: Vec<usize> = (0..sl.space().complex().len()).collect();
            assert_eq!(
                oracle::betti_of(s.complex(), &all, field).unwrap(),
                oracle::betti_of(sl.space().complex(), &all_sliced, field).unwrap(),
                "seed {seed}"
            );
            // monotone interlevels
            if mids.len() >= 2 {
                let inner = sl.interlevel(mids[0], mids[1]).unwrap();
                let outer = sl.interlevel(f64::NEG_INFINITY, mids[1]).unwrap();
                assert!(inner.iter().all(|i| outer.contains(i)));
            }
        }
    }
}
