//! Long-time asymptotics in the sector `x/t > 1`.

pub mod formulas;
pub mod model;
pub mod modulation;
pub mod msol;

pub use formulas::{
    near_soliton, radiation_terms, sector2_leading, u_rad, u_sol, LeadingWave, NearSolitonPrediction, RadiationTerms,
    SechParameters, SolitonRoute,
};
pub use model::{model_rh_constants, ModelConstants};
pub use modulation::{ArcQuadrature, ModulationContext};
pub use msol::{msol_solve, symmetry_defects, MSolEvaluation, MSolSystem, ModulatedSpectrum, SymmetryDefects};
