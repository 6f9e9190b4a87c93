//! Command-line front end.
//!
//! ```text
//! straightedge verify POINTS [--trace [PATH]] [--svg PATH] [--partition S] [--seed N] [--max-retries N]
//! straightedge oracle POINTS
//! straightedge certificate (POINTS | --from-trace TRACE) [--relations FILE] [--partition S] [--seed N] [--max-retries N]
//! ```
//!
//! The first line on stdout is always `ON_CUBIC`, `NOT_ON_CUBIC` or
//! `DEGENERATE`. Exit status: 0 on cubic, 1 not on cubic, 2 degenerate,
//! 3 input or I/O error. `certificate` exits 0 when every relation holds and
//! 1 when one fails.
//!
//! `--partition` takes `s1=i,j,k,l,m;t1=i,j,k,l,m` with 1-based indices.
//! The trace written by `--trace` is the JSON document described in
//! [`straightedge::trace`]:
//!
//! ```json
//! {
//!   "verdict": "ON_CUBIC",
//!   "scheme": {"s1": [1,2,3,4,5], "s2": [...], "t1": [3,4,5,6,7], "t2": [...]},
//!   "conics": {"C1": {"equation": "...", "coefficients": ["..."; 6], "points": ["[a : b : c]", ...]}, "C2": ..., "D1": ..., "D2": ...},
//!   "points": {"P1": "[a : b : c]", "P2": ..., "P": ..., "Q": ..., "R": ..., "G": ..., "W": ..., "X": ..., "Y": ..., "Z": ..., "U": ..., "V": ...},
//!   "lines": {"L_P": "[a : b : c]", "L_Q": ..., "L_R": ...},
//!   "auxiliary": ["[a : b : c]", ...],
//!   "collinearity": "0",
//!   "retries": [{"scheme": "s1=...;t1=...", "reason": "..."}],
//!   "bits": {"max": 12, "total": 345}
//! }
//! ```

pub mod commands;
pub mod input;
pub mod svg;

pub use input::{parse_points, parse_points_str, points_document, InputError};
pub use svg::{emit_svg, render_svg, SvgError};
