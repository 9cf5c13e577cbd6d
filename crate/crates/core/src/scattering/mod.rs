//! Direct scattering for compactly supported initial data.

pub mod data;
pub mod eigen;
pub mod residue;
pub mod table;
pub mod zeros;

pub use data::{DataSample, InitialData, Profile};
pub use eigen::{
    build_generator, map_k_grid, reflection_coefficients, s11, scattering_matrices, solve_eigenfunctions,
    Anchor, EigenfunctionSet, Equation, Frame, ScatteringMatrices,
};
pub use residue::{residue_constants, ResidueComparison, ResidueFit};
pub use table::{GaussianBump, ReflectionTable, SyntheticProfile};
pub use zeros::{locate_zeros, LocatedZero, SearchRect, ZeroSearchOptions};
