use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{var:?}^{power} does not divide every term")]
    NotDivisible { var: Var, power: u32 },
    #[error("chart degree {n} is below the polynomial degree {degree}")]
    DegreeTooLow { n: u32, degree: u32 },
    #[error("vector field has both components zero")]
    ZeroField,
    #[error("twist parameter must be nonzero")]
    ZeroAlpha,
    #[error("linear change of variables is singular")]
    SingularChange,
    #[error("the point is not an equilibrium")]
    NotEquilibrium,
    #[error("the Jacobian does not have exactly one zero eigenvalue")]
    NotSemiHyperbolic,
    #[error("blow-up chain exceeds the maximum depth of {0}")]
    ChainTooDeep(usize),
    #[error("no twist in the search order makes the vertical direction non-characteristic")]
    NoUsableTwist,
    #[error("parameters violate the reduction hypotheses: {0}")]
    HypothesesViolated(String),
    #[error("H is not a first integral: its Lie derivative is {0}")]
    NotConserved(String),
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
