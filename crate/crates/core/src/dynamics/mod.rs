//! Dynamics on the path space: sink paths and eventually periodic infinite
//! paths, the shift, eventual equality, basic open sets of the quotient and
//! periodic orbits.
//!
//! Only decidable points are represented (finite sink paths and lassos);
//! these contain every periodic point.

mod orbits;
mod point;
mod quotient;

pub use orbits::{ancestors_diagram, loop_witnesses, node_name, periodic_orbits, LoopWitness, PeriodicOrbit};
pub use point::{canonicalize, PathPoint, PointDisplay};
pub use quotient::{
    class_key, cycle_orbit, eventually_equal, in_basis_set, range_of_length, shift_inverse_class,
    shift_inverse_class_via, sink_points, ClassKey, QuotientClass,
};
