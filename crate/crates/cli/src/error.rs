use isometry_core::{PlanarError, SphereError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("instance does not match schema: {0}")]
    Schema(String),
    #[error("{message}")]
    Validation { code: &'static str, message: String },
    #[error("{message}")]
    Solver { code: &'static str, message: String },
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) | Self::Parse(_) | Self::Schema(_) => 2,
            Self::Validation { .. } => 3,
            Self::Solver { .. } => 4,
            Self::Internal(_) => 5,
        }
    }

    /// Short machine-readable name of the failure.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Io(_) => "IoError",
            Self::Parse(_) => "ParseError",
            Self::Schema(_) => "SchemaError",
            Self::Validation { code, .. } | Self::Solver { code, .. } => code,
            Self::Internal(_) => "InternalCheckFailure",
        }
    }

    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Self::Validation {
            code: "ValidationError",
            message: message.into(),
        }
    }
}

impl From<PlanarError> for CliError {
    fn from(e: PlanarError) -> Self {
        let message = e.to_string();
        let code = match e {
            PlanarError::LengthMismatch { .. } => {
                return Self::Validation {
                    code: "LengthMismatch",
                    message,
                }
            }
            PlanarError::DegenerateSegment => {
                return Self::Validation {
                    code: "DegenerateSegment",
                    message,
                }
            }
            PlanarError::ZeroDirection => {
                return Self::Validation {
                    code: "ZeroDirection",
                    message,
                }
            }
            PlanarError::ParallelBisectors => "ParallelBisectors",
            PlanarError::DegenerateBisector => "DegenerateBisector",
            PlanarError::ZeroAngle => "ZeroAngle",
            PlanarError::GlideReflection => "GlideReflection",
            PlanarError::Linalg(_) => "SingularMatrix",
        };
        Self::Solver { code, message }
    }
}

impl From<SphereError> for CliError {
    fn from(e: SphereError) -> Self {
        let message = e.to_string();
        let validation = |code| Self::Validation {
            code,
            message: message.clone(),
        };
        let code = match e {
            SphereError::NotUnit(_) => return validation("NotUnit"),
            SphereError::NotIsometric { .. } => return validation("LengthMismatch"),
            SphereError::CoincidentPoints => return validation("CoincidentPoints"),
            SphereError::AntipodalPoints => return validation("AntipodalPoints"),
            SphereError::DegenerateAxis => "DegenerateAxis",
            SphereError::PointOnAxis => "PointOnAxis",
            SphereError::IdenticalCircles => "IdenticalCircles",
            SphereError::IdentityCorrespondence => "IdentityCorrespondence",
            SphereError::NotARotation => "NotARotation",
            SphereError::Linalg(_) => "LinalgError",
        };
        Self::Solver { code, message }
    }
}
