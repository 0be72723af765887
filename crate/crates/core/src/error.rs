use thiserror::Error;

/// Errors raised across the special-function, geometry, perturbation and
/// oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("quadrature grid {n_theta}x{n_phi} too coarse for a_max = {a_max} (need n_theta >= {need_theta}, n_phi >= {need_phi})")]
    GridTooCoarse {
        a_max: usize,
        n_theta: usize,
        n_phi: usize,
        need_theta: usize,
        need_phi: usize,
    },

    /// A Bessel denominator of angular order `p` vanishes (to 1e-8) at the
    /// unperturbed argument `rho`: level `(n, l)` collides with a level of
    /// order `p` and the closed-form correction is undefined.
    #[error("accidental degeneracy: denominator of order p = {p} is {value:.3e} at rho = {rho}")]
    AccidentalDegeneracy { p: usize, rho: f64, value: f64 },

    #[error("ill-conditioned collocation basis: {0}")]
    Conditioning(String),

    #[error("no eigenvalue found in k window [{k_min}, {k_max}]")]
    NotFound { k_min: f64, k_max: f64 },

    #[error("tabulated shape: {0}")]
    Tabulated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
