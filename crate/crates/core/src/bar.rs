//! Bars and barcode multisets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::plcomplex::canonical;

/// The four level-persistence bar types, in canonical output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarKind {
    Closed,
    Open,
    ClosedOpen,
    OpenClosed,
}

impl BarKind {
    pub const ALL: [BarKind; 4] = [
        BarKind::Closed,
        BarKind::Open,
        BarKind::ClosedOpen,
        BarKind::OpenClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BarKind::Closed => "closed",
            BarKind::Open => "open",
            BarKind::ClosedOpen => "closed_open",
            BarKind::OpenClosed => "open_closed",
        }
    }
}

/// An interval in a given homological degree. Sub-level bars are open on
/// both ends; infinite bars have `right == +∞`.
#[derive(Debug, Clone, Copy)]
pub struct Bar {
    pub degree: usize,
    pub left: f64,
    pub right: f64,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl Bar {
    pub fn new(
        degree: usize,
        left: f64,
        right: f64,
        left_closed: bool,
        right_closed: bool,
    ) -> Self {
        debug_assert!(left <= right, "bar [{left}, {right}] is reversed");
        Bar {
            degree,
            left: canonical(left),
            right: canonical(right),
            left_closed,
            right_closed,
        }
    }

    pub fn closed(degree: usize, a: f64, b: f64) -> Self {
        Bar::new(degree, a, b, true, true)
    }

    pub fn open(degree: usize, a: f64, b: f64) -> Self {
        Bar::new(degree, a, b, false, false)
    }

    pub fn closed_open(degree: usize, a: f64, b: f64) -> Self {
        Bar::new(degree, a, b, true, false)
    }

    pub fn open_closed(degree: usize, a: f64, b: f64) -> Self {
        Bar::new(degree, a, b, false, true)
    }

    /// Sub-level infinite bar `(a, ∞)`.
    pub fn infinite(degree: usize, a: f64) -> Self {
        Bar::new(degree, a, f64::INFINITY, false, false)
    }

    /// Sub-level finite bar `(a, b)`.
    pub fn finite(degree: usize, a: f64, b: f64) -> Self {
        Bar::new(degree, a, b, false, false)
    }

    pub fn with_kind(degree: usize, a: f64, b: f64, kind: BarKind) -> Self {
        match kind {
            BarKind::Closed => Bar::closed(degree, a, b),
            BarKind::Open => Bar::open(degree, a, b),
            BarKind::ClosedOpen => Bar::closed_open(degree, a, b),
            BarKind::OpenClosed => Bar::open_closed(degree, a, b),
        }
    }

    pub fn kind(&self) -> BarKind {
        match (self.left_closed, self.right_closed) {
            (true, true) => BarKind::Closed,
            (false, false) => BarKind::Open,
            (true, false) => BarKind::ClosedOpen,
            (false, true) => BarKind::OpenClosed,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.right == f64::INFINITY
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    /// Shift both endpoints by `dx`.
    pub fn translate(&self, dx: f64) -> Bar {
        Bar::new(
            self.degree,
            self.left + dx,
            self.right + dx,
            self.left_closed,
            self.right_closed,
        )
    }
}

impl PartialEq for Bar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Bar {}

impl PartialOrd for Bar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.left.total_cmp(&other.left))
            .then_with(|| self.right.total_cmp(&other.right))
            .then_with(|| self.kind().cmp(&other.kind()))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.left_closed { '[' } else { '(' };
        let close = if self.right_closed { ']' } else { ')' };
        write!(
            f,
            "H{} {open}{}, {}{close}",
            self.degree, self.left, self.right
        )
    }
}

/// A finite multiset of bars with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Barcode {
    bars: BTreeMap<Bar, usize>,
}

impl Barcode {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, bar: Bar, multiplicity: usize) {
        if multiplicity > 0 {
            *self.bars.entry(bar).or_insert(0) += multiplicity;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bar, usize)> {
        self.bars.iter().map(|(b, &m)| (b, m))
    }

    pub fn multiplicity(&self, bar: &Bar) -> usize {
        self.bars.get(bar).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of distinct bars.
    pub fn distinct(&self) -> usize {
        self.bars.len()
    }

    /// Total count with multiplicity.
    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.bars.keys().map(|b| b.degree).max()
    }

    pub fn filter(&self, keep: impl Fn(&Bar) -> bool) -> Barcode {
        Barcode {
            bars: self
                .bars
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, &m)| (*b, m))
                .collect(),
        }
    }

    pub fn of(&self, degree: usize, kind: BarKind) -> Barcode {
        self.filter(|b| b.degree == degree && b.kind() == kind)
    }

    pub fn in_degree(&self, degree: usize) -> Barcode {
        self.filter(|b| b.degree == degree)
    }

    /// `#` of bars of the given degree and kind, with multiplicity.
    pub fn count(&self, degree: usize, kind: BarKind) -> usize {
        self.iter()
            .filter(|(b, _)| b.degree == degree && b.kind() == kind)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn map(&self, f: impl Fn(&Bar) -> Bar) -> Barcode {
        let mut out = Barcode::new();
        for (b, m) in self.iter() {
            out.insert(f(b), m);
        }
        out
    }

    pub fn extend(&mut self, other: &Barcode) {
        for (b, m) in other.iter() {
            self.insert(*b, m);
        }
    }
}

impl FromIterator<Bar> for Barcode {
    fn from_iter<I: IntoIterator<Item = Bar>>(iter: I) -> Self {
        let mut out = Barcode::new();
        for b in iter {
            out.insert(b, 1);
        }
        out
    }
}

impl FromIterator<(Bar, usize)> for Barcode {
    fn from_iter<I: IntoIterator<Item = (Bar, usize)>>(iter: I) -> Self {
        let mut out = Barcode::new();
        for (b, m) in iter {
            out.insert(b, m);
        }
        out
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (b, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
            if m > 1 {
                write!(f, " x{m}")?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_canonical() {
        assert_eq!(Bar::closed(0, -0.0, 1.0), Bar::closed(0, 0.0, 1.0));
        assert!(Bar::closed(0, -0.0, 1.0).left.is_sign_positive());
    }

    #[test]
    fn kinds_are_distinct_keys() {
        let code: Barcode = BarKind::ALL
            .iter()
            .map(|&k| Bar::with_kind(0, 0.0, 1.0, k))
            .collect();
        assert_eq!(code.distinct(), 4);
        assert_eq!(code.count(0, BarKind::OpenClosed), 1);
    }

    #[test]
    fn multiplicities_accumulate() {
        let mut code = Barcode::new();
        code.insert(Bar::open(1, 0.0, 2.0), 2);
        code.insert(Bar::open(1, 0.0, 2.0), 1);
        code.insert(Bar::open(1, 0.0, 3.0), 0);
        assert_eq!(code.total(), 3);
        assert_eq!(code.distinct(), 1);
        assert_eq!(code.to_string(), "{H1 (0, 2) x3}");
    }
}
