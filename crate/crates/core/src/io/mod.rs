//! Text formats, reports and the command-line interface.

pub mod cli;
mod parse;
mod render;
pub mod report;

pub use parse::{parse_polynomial, parse_system, parse_system_with_field, ParseError, SystemFile};
pub use render::render_polynomial;
