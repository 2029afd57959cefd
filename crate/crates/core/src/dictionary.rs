//! Translations between level barcodes, point configurations, sub-level
//! barcodes and the barcodes of `-f`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::bar::{Bar, BarKind, Barcode};
use crate::sublevel::SublevelBarcodes;

/// A point `x + iy` of the plane, ordered by `(x, y)` with `total_cmp`.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn on_diagonal(&self) -> bool {
        self.x == self.y
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Point {}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

/// Finitely supported multiplicity function on the plane.
pub type Configuration = BTreeMap<Point, usize>;

/// `δ_r` and `γ_r` for every degree with nonempty support.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Configurations {
    pub delta: BTreeMap<usize, Configuration>,
    pub gamma: BTreeMap<usize, Configuration>,
}

impl Configurations {
    pub fn delta(&self, r: usize) -> Configuration {
        self.delta.get(&r).cloned().unwrap_or_default()
    }

    pub fn gamma(&self, r: usize) -> Configuration {
        self.gamma.get(&r).cloned().unwrap_or_default()
    }

    /// Points of `δ` on the diagonal, which come from degenerate closed bars
    /// `[a, a]`.
    pub fn diagonal_delta(&self) -> Vec<(usize, Point, usize)> {
        self.delta
            .iter()
            .flat_map(|(&r, c)| {
                c.iter()
                    .filter(|(p, _)| p.on_diagonal())
                    .map(move |(p, &m)| (r, *p, m))
            })
            .collect()
    }
}

pub fn mass(c: &Configuration) -> usize {
    c.values().sum()
}

fn add(map: &mut BTreeMap<usize, Configuration>, r: usize, x: f64, y: f64, m: usize) {
    *map.entry(r).or_default().entry(Point { x, y }).or_insert(0) += m;
}

pub fn configurations(bars: &Barcode) -> Configurations {
    let mut out = Configurations::default();
    for (b, m) in bars.iter() {
        let r = b.degree;
        match b.kind() {
            BarKind::Closed => add(&mut out.delta, r, b.left, b.right, m),
            BarKind::Open => add(&mut out.delta, r + 1, b.right, b.left, m),
            BarKind::ClosedOpen => add(&mut out.gamma, r, b.left, b.right, m),
            BarKind::OpenClosed => add(&mut out.gamma, r, b.right, b.left, m),
        }
    }
    out
}

/// Sub-level bars predicted from level bars, with the open-closed bars that
/// have no sub-level counterpart kept aside.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Refinement {
    pub infinite: Barcode,
    pub finite: Barcode,
    pub invisible: Barcode,
}

impl Refinement {
    pub fn matches(&self, sb: &SublevelBarcodes) -> bool {
        self.infinite == sb.infinite && self.finite == sb.finite
    }
}

pub fn refine_to_sublevel(bars: &Barcode) -> Refinement {
    let mut out = Refinement::default();
    for (b, m) in bars.iter() {
        match b.kind() {
            BarKind::Closed => out.infinite.insert(Bar::infinite(b.degree, b.left), m),
            BarKind::Open => out.infinite.insert(Bar::infinite(b.degree + 1, b.right), m),
            BarKind::ClosedOpen => out.finite.insert(Bar::finite(b.degree, b.left, b.right), m),
            BarKind::OpenClosed => out.invisible.insert(*b, m),
        }
    }
    out
}

/// Level bars of `-f` predicted from those of `f`.
pub fn mirror(bars: &Barcode) -> Barcode {
    bars.map(|b| Bar::new(b.degree, -b.right, -b.left, b.right_closed, b.left_closed))
}

/// Ordered wrapper for a bar length.
#[derive(Debug, Clone, Copy)]
pub struct Length(pub f64);

impl PartialEq for Length {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl Eq for Length {}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Multiplicity of each bar length, per degree and bar type.
pub type LengthSpectrum = BTreeMap<(usize, BarKind), BTreeMap<Length, usize>>;

pub fn length_spectrum(bars: &Barcode) -> LengthSpectrum {
    let mut out = LengthSpectrum::new();
    for (b, m) in bars.iter() {
        *out.entry((b.degree, b.kind()))
            .or_default()
            .entry(Length(b.length() + 0.0))
            .or_insert(0) += m;
    }
    out
}
