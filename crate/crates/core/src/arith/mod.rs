//! Exact scalars and integer linear algebra.

mod group;
mod intmat;
mod radical;
mod snf;

pub use group::{cokernel_group, kernel_group, AbelianGroup};
pub use intmat::IntMatrix;
pub use radical::{is_squarefree, square_split, RadicalScalar};
pub use snf::{smith_normal_form, SmithDecomposition};
