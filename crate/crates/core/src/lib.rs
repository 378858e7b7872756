//! Five-coloring of planar graphs with a small fifth color class.
//!
//! [`color_planar`] returns a proper coloring with colors 1..=5 in which at
//! most `n / 6` vertices receive color 5. The input is a combinatorial
//! embedding given as rotation systems ([`EmbeddedGraph`]).
//!
//! ```
//! use fivecolor::{check_coloring, color_planar, instances::named};
//!
//! let g = named("icosahedron").unwrap();
//! let col = color_planar(&g).unwrap();
//! let report = check_coloring(&g, &col);
//! assert!(report.proper() && report.bound_ok());
//! ```

pub mod batch;
pub mod catalog;
pub mod coloring;
pub mod discharge;
pub mod embedding;
pub mod error;
pub mod instances;
pub mod kempe;
pub mod matcher;
pub mod par;
pub mod reducer;

pub use catalog::{builtin, ConfigurationSpec, Family, Scheme};
pub use coloring::{check_coloring, Coloring, ColoringReport};
pub use discharge::{audit, final_charges, transfers, AuditReport, ChargeLedger, Rational};
pub use embedding::{EmbeddedGraph, FaceWalk, Triangulation};
pub use error::{Error, Result};
pub use kempe::{chain, free_color, swap, ChainView, FreeColor};
pub use matcher::{find_occurrence, find_reducible, Occurrence};
pub use reducer::{color_planar, color_planar_with, ColorOptions, ColorRun, RunStats};
