use gnr_core::curve::CurveError;
use gnr_core::grid::GridError;
use gnr_core::surface::SurfaceError;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("invalid config {}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("config invariant {name} violated: {detail}")]
    Invalid { name: &'static str, detail: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::Surface(e.into())
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        CliError::Surface(e.into())
    }
}

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const MATH_DOMAIN: u8 = 3;
}

impl CliError {
    /// Bad input maps to [`exit::CONFIG`], failures of the mathematics on valid
    /// input (no Frenet frame, leaving an expression's domain) to
    /// [`exit::MATH_DOMAIN`].
    pub fn exit_code(&self) -> u8 {
        let config = match self {
            CliError::Io { .. } | CliError::Write { .. } | CliError::Json { .. } | CliError::Invalid { .. } => true,
            CliError::Surface(e) => matches!(
                e,
                SurfaceError::Parse { .. }
                    | SurfaceError::RulingNotUnit { .. }
                    | SurfaceError::NotUnitSpeed { .. }
                    | SurfaceError::Grid(_)
                    | SurfaceError::Curve(
                        CurveError::Parse { .. }
                            | CurveError::InvalidFramePolicy(_)
                            | CurveError::TooFewSamples { .. }
                            | CurveError::NotUnitSpeed { .. }
                    )
            ),
        };
        if config {
            exit::CONFIG
        } else {
            exit::MATH_DOMAIN
        }
    }
}
