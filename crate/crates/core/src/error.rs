use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("spectral parameter k = 0 is a pole of the kernels")]
    ZeroSpectralParameter,

    #[error("invalid phase index pair ({i}, {j}); need 1 <= j < i <= 3")]
    InvalidIndexPair { i: usize, j: usize },

    #[error("ray slope zeta = {zeta} is outside the sector (1, inf)")]
    OutOfSector { zeta: f64 },

    #[error("k = {re}{im:+}i lies within {radius} of a sixth root of unity; P(k) is singular there")]
    SingularVandermonde { re: f64, im: f64, radius: f64 },

    #[error("{what}: achieved accuracy {achieved:e} does not meet {target:e}")]
    Accuracy { what: String, achieved: f64, target: f64 },

    #[error("denominator |{what}| = {value:e} is below threshold (possible spectral singularity)")]
    NearZeroDenominator { what: String, value: f64 },

    #[error("cell around {re}{im:+}i winds {winding} times; zeros of s11 must be simple")]
    MultipleZero { re: f64, im: f64, winding: i64 },

    #[error("zero search failed: {0}")]
    Search(String),

    #[error("derivative of s11 at the zero is {value:e}; zero is degenerate")]
    DegenerateZero { value: f64 },

    #[error("residue constant is inconsistent across x (spread {spread:e} > {tolerance:e})")]
    DefinitionMismatch { spread: f64, tolerance: f64 },

    #[error("reflection table node at angle {angle} falls inside an excluded disk around a sixth root of unity")]
    NodePlacement { angle: f64 },

    #[error("invalid reflection table: {0}")]
    InvalidTable(String),

    #[error("delta requested at distance {distance:e} from the integration arc")]
    NearContour { distance: f64 },

    #[error("linear system is singular ({0})")]
    Singular(String),

    #[error("evaluation point lies within {distance:e} of a pole")]
    EvaluationPoint { distance: f64 },

    #[error("coincident poles in spectrum (separation {separation:e})")]
    DegenerateKernel { separation: f64 },

    #[error("spectrum failed validation: {0}")]
    InvalidSpectrum(String),

    #[error("Gamma function has a pole at {re}{im:+}i")]
    GammaPole { re: f64, im: f64 },

    #[error("r1(k1) or r2(k1) vanishes while nu = {nu} is nonzero")]
    InconsistentTable { nu: f64 },

    #[error("zeta0 = {zeta0} is not the velocity of any soliton in the spectrum")]
    NotSolitonDirection { zeta0: f64 },

    #[error("invalid initial data: {0}")]
    InvalidData(String),

    #[error("integrator exceeded its step budget at x = {x} (step {step:e})")]
    StepBudget { x: f64, step: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
