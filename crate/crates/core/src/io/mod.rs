//! Text front end and output formats.

mod parse;
mod record;
mod render;

pub use parse::{parse, parse_poly};
pub use record::{parse_equation_record, parse_normal_record, SCHEMA_VERSION};
pub use render::{render, Format, Render};
