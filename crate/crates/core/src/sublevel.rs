//! Sub-level persistence of the lower-star filtration.

use crate::algebra::{self, Field, SparseMatrix};
use crate::bar::{Bar, Barcode};
use crate::error::Result;
use crate::plcomplex::{self, PlSpace};

/// A creator/destroyer pair, recorded by simplex index in the space's complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub degree: usize,
    pub creator: usize,
    pub destroyer: Option<usize>,
    pub birth: f64,
    pub death: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SublevelBarcodes {
    /// `(a, ∞)` bars.
    pub infinite: Barcode,
    /// `(a, b)` bars with `a < b`.
    pub finite: Barcode,
    /// Pairs with equal birth and death, dropped from `finite`.
    pub zero_length: usize,
    pub pairings: Vec<Pairing>,
}

impl SublevelBarcodes {
    /// Bars only; diagnostics are ignored.
    pub fn same_bars(&self, other: &SublevelBarcodes) -> bool {
        self.infinite == other.infinite && self.finite == other.finite
    }
}

pub fn sublevel_barcodes(s: &PlSpace, field: Field) -> Result<SublevelBarcodes> {
    let order = plcomplex::sublevel_order(s);
    let c = s.complex();
    let mut position = vec![0; c.len()];
    for (k, &i) in order.iter().enumerate() {
        position[i] = k;
    }
    let triplets = order.iter().enumerate().flat_map(|(col, &i)| {
        let position = &position;
        c.boundary(i)
            .into_iter()
            .map(move |(face, sign)| (position[face], col, sign))
    });
    let boundary = SparseMatrix::from_triplets(field, order.len(), order.len(), triplets)?;
    let red = algebra::reduce(&boundary, field)?;

    let mut out = SublevelBarcodes::default();
    let mut paired = vec![false; order.len()];
    for (&col, &row) in &red.pivots {
        paired[col] = true;
        paired[row] = true;
        let (creator, destroyer) = (order[row], order[col]);
        let degree = c.simplex(creator).len() - 1;
        let (birth, death) = (s.simplex_max(creator), s.simplex_max(destroyer));
        out.pairings.push(Pairing {
            degree,
            creator,
            destroyer: Some(destroyer),
            birth,
            death,
        });
        if birth < death {
            out.finite.insert(Bar::finite(degree, birth, death), 1);
        } else {
            out.zero_length += 1;
        }
    }
    for (k, &i) in order.iter().enumerate() {
        if !paired[k] {
            let degree = c.simplex(i).len() - 1;
            let birth = s.simplex_max(i);
            out.pairings.push(Pairing {
                degree,
                creator: i,
                destroyer: None,
                birth,
                death: f64::INFINITY,
            });
            out.infinite.insert(Bar::infinite(degree, birth), 1);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;

    fn f2() -> Field {
        Field::default()
    }

    #[test]
    fn segment() {
        let sb = sublevel_barcodes(&fixtures::seg(), f2()).unwrap();
        assert_eq!(sb.infinite, Barcode::from_iter([Bar::infinite(0, 0.0)]));
        assert!(sb.finite.is_empty());
    }

    #[test]
    fn circle() {
        let sb = sublevel_barcodes(&fixtures::circ(), f2()).unwrap();
        assert_eq!(
            sb.infinite,
            Barcode::from_iter([Bar::infinite(0, 0.0), Bar::infinite(1, 2.0)])
        );
        assert!(sb.finite.is_empty());
        assert_eq!(sb.zero_length, 3);
    }

    #[test]
    fn lambda() {
        let sb = sublevel_barcodes(&fixtures::lambda(), f2()).unwrap();
        assert_eq!(sb.infinite, Barcode::from_iter([Bar::infinite(0, -1.0)]));
        assert_eq!(sb.finite, Barcode::from_iter([Bar::finite(0, -1.0, 0.0)]));
        let destroyer = sb
            .pairings
            .iter()
            .find(|p| p.destroyer.is_some() && p.birth < p.death)
            .unwrap();
        assert_eq!(
            fixtures::lambda()
                .complex()
                .simplex(destroyer.destroyer.unwrap())
                .len(),
            2
        );
    }

    #[test]
    fn betti_of_prefixes_and_accounting() {
        for seed in 0..100 {
            let s = oracle::random_space(&oracle::RandomSpec::small(seed));
            let field = Field::new([2, 3, 5][seed as usize % 3]).unwrap();
            let sb = sublevel_barcodes(&s, field).unwrap();
            let values = plcomplex::level_values(&s).unwrap();
            // probe between and around vertex values
            let mut probes: Vec<f64> = values.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
            probes.push(values[values.len() - 1] + 1.0);
            for t in probes {
                let betti = oracle::sublevel_betti(&s, t, field).unwrap();
                for (r, &b) in betti.iter().enumerate() {
                    let alive = sb
                        .infinite
                        .iter()
                        .filter(|(bar, _)| bar.degree == r && bar.left < t)
                        .map(|(_, m)| m)
                        .sum::<usize>()
                        + sb.finite
                            .iter()
                            .filter(|(bar, _)| bar.degree == r && bar.left < t && t < bar.right)
                            .map(|(_, m)| m)
                            .sum::<usize>();
                    assert_eq!(alive, b, "seed {seed} t {t} degree {r}");
                }
            }
            // each simplex is a creator or destroyer exactly once
            let accounted = sb.infinite.total() + 2 * sb.finite.total() + 2 * sb.zero_length;
            assert_eq!(accounted, s.complex().len(), "seed {seed}");
        }
    }

    #[test]
    fn tie_break_invariance() {
        for seed in 0..50 {
            let s = oracle::random_space(&oracle::RandomSpec::small(seed));
            let n = s.vertex_count() as u64;
            let reversed = s.relabel(|id| n - id).unwrap();
            let a = sublevel_barcodes(&s, f2()).unwrap();
            let b = sublevel_barcodes(&reversed, f2()).unwrap();
            assert!(a.same_bars(&b), "seed {seed}");
        }
    }
}
