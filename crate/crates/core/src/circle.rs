//! Angle-valued maps through a truncated infinite cyclic cover.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;

use crate::algebra::Field;
use crate::bar::{Bar, BarKind, Barcode};
use crate::error::{Error, Result};
use crate::io::AngleDocument;
use crate::levelset;
use crate::plcomplex::{canonical, PlSpace};

/// Largest accepted edge winding in absolute value.
pub const MAX_WINDING: i64 = 64;

/// A simplicial complex with an angle in `[0, 2π)` per vertex and an integer
/// winding per edge. The lift of edge `(u, v)` rises by
/// `θ(v) - θ(u) + 2π·w(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSpace {
    base: PlSpace,
    /// Keyed by internal vertex indices `u < v`.
    winding: BTreeMap<(usize, usize), i64>,
}

impl AngleSpace {
    pub fn new(
        vertices: &[(u64, f64)],
        simplices: &[Vec<u64>],
        winding: &[([u64; 2], i64)],
        max_dim: usize,
    ) -> Result<Self> {
        for (k, &(_, angle)) in vertices.iter().enumerate() {
            if !(0.0..TAU).contains(&angle) {
                return Err(Error::validation(
                    format!("vertices[{k}].angle"),
                    format!("angle {angle} is not in [0, 2π)"),
                ));
            }
        }
        let base = PlSpace::new(vertices, simplices, max_dim)?;
        let index: HashMap<u64, usize> = base
            .ids()
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        let mut map = BTreeMap::new();
        for (k, &([a, b], w)) in winding.iter().enumerate() {
            let location = format!("winding[{k}]");
            let (Some(&u), Some(&v)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::validation(
                    location,
                    format!("unknown edge [{a}, {b}]"),
                ));
            };
            if base.complex().index_of(&[u.min(v), u.max(v)]).is_none() || u == v {
                return Err(Error::validation(
                    location,
                    format!("[{a}, {b}] is not an edge"),
                ));
            }
            if w.abs() > MAX_WINDING {
                return Err(Error::validation(
                    location,
                    format!("|w| = {} exceeds {MAX_WINDING}", w.abs()),
                ));
            }
            let (key, w) = if u < v { ((u, v), w) } else { ((v, u), -w) };
            if map.insert(key, w).is_some() {
                return Err(Error::validation(
                    location,
                    format!("edge [{a}, {b}] listed twice"),
                ));
            }
        }
        let space = AngleSpace { base, winding: map };
        for s in space
            .base
            .complex()
            .simplices()
            .iter()
            .filter(|s| s.len() == 3)
        {
            let (a, b, c) = (s[0], s[1], s[2]);
            if space.winding(a, b) + space.winding(b, c) != space.winding(a, c) {
                return Err(Error::Cocycle(
                    s.iter().map(|&v| space.base.id(v)).collect(),
                ));
            }
        }
        Ok(space)
    }

    pub fn from_document(doc: &AngleDocument, max_dim: usize) -> Result<Self> {
        if doc.simplices.is_empty() {
            return Err(Error::validation(
                "simplices",
                "document lists no simplices",
            ));
        }
        let vertices: Vec<(u64, f64)> = doc.vertices.iter().map(|v| (v.id, v.angle)).collect();
        let winding: Vec<([u64; 2], i64)> = doc.winding.iter().map(|e| (e.edge, e.w)).collect();
        AngleSpace::new(&vertices, &doc.simplices, &winding, max_dim)
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    /// The underlying complex with angles as values.
    pub fn base(&self) -> &PlSpace {
        &self.base
    }

    pub fn angle(&self, v: usize) -> f64 {
        self.base.value(v)
    }

    /// Winding of the oriented edge `u → v` (internal indices).
    pub fn winding(&self, u: usize, v: usize) -> i64 {
        if u <= v {
            self.winding.get(&(u, v)).copied().unwrap_or(0)
        } else {
            -self.winding(v, u)
        }
    }

    pub fn is_null_homotopic(&self) -> bool {
        self.winding.values().all(|&w| w == 0)
    }

    pub fn default_periods(&self) -> usize {
        let mut angles = self.base.values().to_vec();
        angles.sort_by(f64::total_cmp);
        angles.dedup();
        (angles.len() + 2).max(3)
    }
}

/// `N` consecutive sheets of the infinite cyclic cover. Cover vertex
/// `(v, k)` has id `k·n + v` and value `θ(v) + 2πk`.
#[derive(Debug, Clone)]
pub struct Cover {
    pub space: PlSpace,
    pub periods: usize,
    /// Sorted distinct angles.
    angles: Vec<f64>,
    /// Value bits to `(angle index, sheet)`.
    lookup: HashMap<u64, (usize, i64)>,
}

impl Cover {
    /// Splits a cover value into `(angle, sheet)`.
    pub fn locate(&self, x: f64) -> Option<(f64, i64)> {
        self.lookup
            .get(&x.to_bits())
            .map(|&(a, k)| (self.angles[a], k))
    }

    fn locate_index(&self, x: f64) -> (usize, i64) {
        self.lookup[&x.to_bits()]
    }
}

fn lifted(angle: f64, k: i64) -> f64 {
    canonical(angle + TAU * k as f64)
}

pub fn build_cover(a: &AngleSpace, periods: usize) -> Result<Cover> {
    if periods < 3 {
        return Err(Error::Window(format!("{periods} periods, need at least 3")));
    }
    let n = a.vertex_count();
    let mut angles = a.base.values().to_vec();
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    let mut lookup = HashMap::new();
    let mut vertices = Vec::with_capacity(n * periods);
    for k in 0..periods as i64 {
        for v in 0..n {
            let x = lifted(a.angle(v), k);
            let ai = angles
                .binary_search_by(|t| t.total_cmp(&a.angle(v)))
                .expect("angle is listed");
            if let Some(&prev) = lookup.get(&x.to_bits()) {
                if prev != (ai, k) {
                    return Err(Error::Window(format!(
                        "lifted value {x} is not distinguishable"
                    )));
                }
            }
            lookup.insert(x.to_bits(), (ai, k));
            vertices.push((k as u64 * n as u64 + v as u64, x));
        }
    }
    let mut simplices = Vec::new();
    for s in a.base.complex().simplices().iter().filter(|s| s.len() > 1) {
        let offsets: Vec<i64> = s.iter().map(|&v| a.winding(s[0], v)).collect();
        let spread = offsets.iter().max().unwrap() - offsets.iter().min().unwrap();
        if spread >= periods as i64 {
            let ids: Vec<u64> = s.iter().map(|&v| a.base.id(v)).collect();
            return Err(Error::Window(format!(
                "simplex {ids:?} spans {} sheets but only {periods} periods were requested",
                spread + 1
            )));
        }
        for k in 0..periods as i64 {
            if offsets
                .iter()
                .all(|&o| (0..periods as i64).contains(&(k + o)))
            {
                simplices.push(
                    s.iter()
                        .zip(&offsets)
                        .map(|(&v, &o)| (k + o) as u64 * n as u64 + v as u64)
                        .collect(),
                );
            }
        }
    }
    let space = PlSpace::new(&vertices, &simplices, a.base.dim())?;
    Ok(Cover {
        space,
        periods,
        angles,
        lookup,
    })
}

/// Bars of the cover modulo the deck shift, each represented with left
/// endpoint in `[0, 2π)`, and the per-degree count of bars crossing the
/// whole inner window.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuotientBarcode {
    pub bars: Barcode,
    pub unbounded: BTreeMap<usize, usize>,
}

impl QuotientBarcode {
    pub fn unbounded_in(&self, degree: usize) -> usize {
        self.unbounded.get(&degree).copied().unwrap_or(0)
    }
}

pub fn quotient_barcodes(a: &AngleSpace, field: Field) -> Result<QuotientBarcode> {
    quotient_barcodes_with_periods(a, field, a.default_periods())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct OrbitKey {
    degree: usize,
    left: usize,
    right: usize,
    span: i64,
    kind: BarKind,
}

pub fn quotient_barcodes_with_periods(
    a: &AngleSpace,
    field: Field,
    periods: usize,
) -> Result<QuotientBarcode> {
    let cover = build_cover(a, periods)?;
    let lifted_bars = levelset::level_barcodes(&cover.space, field)?;
    let last = periods as i64 - 1;
    // `(angle index, sheet)` lies at or below the window top `2π(N-1)`
    let below_top = |(ai, k): (usize, i64)| k < last || (k == last && cover.angles[ai] == 0.0);

    let mut orbits: BTreeMap<OrbitKey, BTreeMap<i64, usize>> = BTreeMap::new();
    let mut unbounded = BTreeMap::new();
    for (bar, m) in lifted_bars.iter() {
        let (l, r) = (cover.locate_index(bar.left), cover.locate_index(bar.right));
        if l.1 >= 1 && below_top(r) {
            let key = OrbitKey {
                degree: bar.degree,
                left: l.0,
                right: r.0,
                span: r.1 - l.1,
                kind: bar.kind(),
            };
            *orbits.entry(key).or_default().entry(l.1).or_insert(0) += m;
        } else if l.1 == 0 && !below_top(r) {
            *unbounded.entry(bar.degree).or_insert(0) += m;
        }
    }

    let mut bars = Barcode::new();
    for (key, per_sheet) in orbits {
        let fitting: Vec<i64> = (1..=last)
            .filter(|&k| below_top((key.right, k + key.span)))
            .collect();
        let counts: Vec<usize> = fitting
            .iter()
            .map(|k| per_sheet.get(k).copied().unwrap_or(0))
            .collect();
        if counts.windows(2).any(|w| w[0] != w[1]) {
            let left = cover.angles[key.left];
            return Err(Error::Stabilization(format!(
                "degree {} bars starting at angle {left} occur {counts:?} times on successive sheets",
                key.degree
            )));
        }
        let left = cover.angles[key.left];
        let right = lifted(cover.angles[key.right], key.span);
        bars.insert(Bar::with_kind(key.degree, left, right, key.kind), counts[0]);
    }
    Ok(QuotientBarcode { bars, unbounded })
}

/// `β_r = #closed_r + #open_{r-1}` of the quotient.
pub fn novikov_betti(q: &QuotientBarcode, degrees: usize) -> Vec<usize> {
    (0..degrees)
        .map(|r| {
            q.bars.count(r, BarKind::Closed)
                + if r > 0 {
                    q.bars.count(r - 1, BarKind::Open)
                } else {
                    0
                }
        })
        .collect()
}
