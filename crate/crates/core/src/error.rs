use thiserror::Error;

use crate::params::Branch;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal-noise transfer undefined without external coupling (kappa_ex = 0)")]
    NoExternalCoupling,

    #[error("singular steady-state system on the {branch} branch: undamped mode")]
    SingularSystem { branch: Branch },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no feature in range")]
    NoFeature,

    #[error("feature extends past the grid edge; half maximum not reached")]
    UnresolvedWidth,

    #[error("no interior maximum in search range")]
    NoInteriorMaximum,

    #[error("no signal transduction at this bias")]
    NoSignal,
}

pub type Result<T> = std::result::Result<T, Error>;
