//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod lattice;
mod matrix;
mod ops;
mod poly;
mod snf;

pub use group::{Cokernel, CyclicSum, FgAbelianGroup};
pub use lattice::{
    columns_matrix, coset_representatives, cokernel_group, kernel_lattice, primitive, same_lattice,
    solve_integer,
};
pub use matrix::IntMatrix;
pub use ops::{adjugate, char_poly, char_poly_by_expansion, cofactor_matrix, determinant, minor_gcd};
pub use poly::IntPolynomial;
pub use snf::{smith_normal_form, SmithDecomposition};
