//! Small named inputs shared by tests, examples and the CLI.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::algebra::Field;
use crate::circle::AngleSpace;
use crate::io::{
    AngleDocument, AngleVertexEntry, ChainComplexDocument, GeneratorEntry, SpaceDocument,
    VertexEntry, WindingEntry,
};
use crate::morse::ChainComplexData;
use crate::plcomplex::{self, PlSpace, DEFAULT_MAX_DIM};

fn space_document(vertices: &[(u64, f64)], simplices: &[&[u64]]) -> SpaceDocument {
    SpaceDocument {
        field: None,
        vertices: vertices
            .iter()
            .map(|&(id, value)| VertexEntry { id, value })
            .collect(),
        simplices: simplices.iter().map(|s| s.to_vec()).collect(),
    }
}

fn load(doc: SpaceDocument) -> PlSpace {
    plcomplex::load(&doc, DEFAULT_MAX_DIM).expect("fixture is valid")
}

/// An edge from 0 to 1.
pub fn seg_document() -> SpaceDocument {
    space_document(&[(0, 0.0), (1, 1.0)], &[&[0, 1]])
}

/// Two edges meeting at a minimum: `a = b = 1`, `c = 0`.
pub fn v_document() -> SpaceDocument {
    space_document(&[(0, 1.0), (1, 1.0), (2, 0.0)], &[&[0, 2], &[2, 1]])
}

/// Two edges meeting at a maximum: `a = b = -1`, `c = 0`.
pub fn lambda_document() -> SpaceDocument {
    space_document(&[(0, -1.0), (1, -1.0), (2, 0.0)], &[&[0, 2], &[2, 1]])
}

/// A square with values 0, 1, 2, 1 around it.
pub fn circ_document() -> SpaceDocument {
    space_document(
        &[(0, 0.0), (1, 1.0), (2, 2.0), (3, 1.0)],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

pub fn seg() -> PlSpace {
    load(seg_document())
}

pub fn v() -> PlSpace {
    load(v_document())
}

pub fn lambda() -> PlSpace {
    load(lambda_document())
}

pub fn circ() -> PlSpace {
    load(circ_document())
}

/// The named real-valued fixtures in a fixed order.
pub fn real_fixtures() -> Vec<(&'static str, PlSpace)> {
    vec![
        ("seg", seg()),
        ("v", v()),
        ("lambda", lambda()),
        ("circ", circ()),
    ]
}

fn angle_document(
    vertices: &[(u64, f64)],
    simplices: &[&[u64]],
    winding: &[([u64; 2], i64)],
) -> AngleDocument {
    AngleDocument {
        field: None,
        vertices: vertices
            .iter()
            .map(|&(id, angle)| AngleVertexEntry { id, angle })
            .collect(),
        simplices: simplices.iter().map(|s| s.to_vec()).collect(),
        winding: winding
            .iter()
            .map(|&(edge, w)| WindingEntry { edge, w })
            .collect(),
    }
}

/// A triangle wrapping once around the circle: angles `0, 2π/3, 4π/3`.
pub fn s1map_document() -> AngleDocument {
    angle_document(
        &[(0, 0.0), (1, TAU / 3.0), (2, 2.0 * TAU / 3.0)],
        &[&[0, 1], &[1, 2], &[2, 0]],
        &[([2, 0], 1)],
    )
}

/// The wrapping triangle of [`s1map_document`] together with a disjoint
/// path dipping to a minimum at its inner vertex, angles `1.5, 0.5, 1.5`.
pub fn s1v_document() -> AngleDocument {
    angle_document(
        &[
            (0, 0.0),
            (1, TAU / 3.0),
            (2, 2.0 * TAU / 3.0),
            (3, 1.5),
            (4, 0.5),
            (5, 1.5),
        ],
        &[&[0, 1], &[1, 2], &[2, 0], &[3, 4], &[4, 5]],
        &[([2, 0], 1)],
    )
}

pub fn s1map() -> AngleSpace {
    AngleSpace::from_document(&s1map_document(), DEFAULT_MAX_DIM).expect("fixture is valid")
}

pub fn s1v() -> AngleSpace {
    AngleSpace::from_document(&s1v_document(), DEFAULT_MAX_DIM).expect("fixture is valid")
}

type Entries<'a> = &'a [(usize, usize, i64)];

fn chain_document(
    generators: &[(usize, f64, &str)],
    boundaries: &[(usize, Entries)],
) -> ChainComplexDocument {
    ChainComplexDocument {
        field: None,
        generators: generators
            .iter()
            .map(|&(degree, value, name)| GeneratorEntry {
                degree,
                value,
                name: name.to_string(),
            })
            .collect(),
        boundaries: boundaries
            .iter()
            .map(|&(r, e)| (r.to_string(), e.to_vec()))
            .collect::<BTreeMap<_, _>>(),
    }
}

/// A 2-sphere with one cell of each dimension below 2 and two 2-cells
/// sharing their boundary.
pub fn sphere2_document() -> ChainComplexDocument {
    chain_document(
        &[(0, 0.0, "m"), (1, 1.0, "s"), (2, 2.0, "A"), (2, 3.0, "B")],
        &[(1, &[]), (2, &[(0, 0, 1), (0, 1, -1)])],
    )
}

/// The circle as one minimum and one maximum.
pub fn circle_morse_document() -> ChainComplexDocument {
    chain_document(&[(0, 0.0, "min"), (1, 2.0, "max")], &[(1, &[])])
}

/// Two minima joined at a maximum.
pub fn lambda_morse_document() -> ChainComplexDocument {
    chain_document(
        &[(0, -1.0, "a"), (0, -1.0, "b"), (1, 0.0, "c")],
        &[(1, &[(0, 0, 1), (1, 0, -1)])],
    )
}

fn chain(doc: ChainComplexDocument, field: Field) -> ChainComplexData {
    ChainComplexData::from_document(&doc, field).expect("fixture is valid")
}

pub fn sphere2(field: Field) -> ChainComplexData {
    chain(sphere2_document(), field)
}

pub fn circle_morse(field: Field) -> ChainComplexData {
    chain(circle_morse_document(), field)
}

pub fn lambda_morse(field: Field) -> ChainComplexData {
    chain(lambda_morse_document(), field)
}
