//! Line-oriented text formats.

mod algebra;
mod complex;

pub use algebra::{emit_structure_constants, parse_algebra, AlgebraSpec, SpecBody};
pub use complex::{emit_complex, parse_complex, parse_element, ComplexFile};
