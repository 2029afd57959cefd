//! Level and sub-level persistence of piecewise-linear maps on finite
//! simplicial complexes, over prime fields.
//!
//! Real-valued maps get four kinds of level bars from the levelset zigzag
//! ([`levelset`]) and finite/infinite sub-level bars from the lower-star
//! filtration ([`sublevel`]). [`dictionary`] translates between them,
//! [`circle`] handles angle-valued maps through a cyclic cover and [`morse`]
//! rebuilds a filtered chain complex from level bars.

// dense elimination reads best with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bar;
pub mod circle;
pub mod cli;
pub mod dictionary;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod levelset;
pub mod morse;
pub mod oracle;
pub mod plcomplex;
pub mod sublevel;
pub mod svg;

pub use algebra::Field;
pub use bar::{Bar, BarKind, Barcode};
pub use error::{Error, Result};
pub use plcomplex::PlSpace;
