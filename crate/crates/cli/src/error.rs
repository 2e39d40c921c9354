use std::fmt::Debug;

use hetcat_core::category::{CategoryError, FunctorError, IsoError};
use hetcat_core::freegroup::FreeGroupError;
use hetcat_core::het::{AdjunctionError, BimoduleError, BrainError, SemiAdjunctionError};
use hetcat_core::linalg::LinalgError;
use hetcat_core::poset::{GaloisError, MonotoneError, PosetError};
use hetcat_core::powerset::PowersetError;
use hetcat_core::CapExceeded;
use thiserror::Error;

use crate::report::Violation;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error in {file} at {field}: {message}")]
    Schema { file: String, field: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error("unsupported witness: {0}")]
    UnsupportedWitness(String),
    /// A verified law violation in the subject of a check.
    #[error("{} violation(s), first: {}: {}", .0.len(), .0[0].kind, .0[0].message)]
    Violations(Vec<Violation>),
}

impl CliError {
    /// Violations found in a referenced input make that input malformed.
    pub fn nested(self) -> Self {
        match self {
            CliError::Violations(v) => CliError::Input(format!(
                "referenced structure is invalid: {}: {}",
                v[0].kind, v[0].message
            )),
            e => e,
        }
    }
}

/// The variant name of an enum value, taken from its `Debug` form.
fn kind_of<T: Debug>(v: &T) -> String {
    let dbg = format!("{v:?}");
    let end = dbg.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(dbg.len());
    dbg[..end].to_string()
}

fn violations<T: Debug + ToString>(vs: &[T]) -> CliError {
    CliError::Violations(vs.iter().map(|v| Violation::new(kind_of(v), v.to_string())).collect())
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

impl From<CapExceeded> for CliError {
    fn from(e: CapExceeded) -> Self {
        input(e)
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<MonotoneError> for CliError {
    fn from(e: MonotoneError) -> Self {
        match e {
            MonotoneError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<GaloisError> for CliError {
    fn from(e: GaloisError) -> Self {
        match e {
            GaloisError::Violations(v) => CliError::Violations(
                v.iter().map(|x| Violation::new("Adjointness", x.to_string())).collect(),
            ),
            e => input(e),
        }
    }
}

impl From<CategoryError> for CliError {
    fn from(e: CategoryError) -> Self {
        match e {
            CategoryError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<FunctorError> for CliError {
    fn from(e: FunctorError) -> Self {
        match e {
            FunctorError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::IsoConstructionFailure { .. } => CliError::Violations(vec![Violation::new(kind_of(&e), e.to_string())]),
            e => input(e),
        }
    }
}

impl From<BimoduleError> for CliError {
    fn from(e: BimoduleError) -> Self {
        match e {
            BimoduleError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<SemiAdjunctionError> for CliError {
    fn from(e: SemiAdjunctionError) -> Self {
        match e {
            SemiAdjunctionError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<AdjunctionError> for CliError {
    fn from(e: AdjunctionError) -> Self {
        match e {
            AdjunctionError::BijectionFailure { .. } => CliError::Violations(vec![Violation::new(kind_of(&e), e.to_string())]),
            e => input(e),
        }
    }
}

impl From<BrainError> for CliError {
    fn from(e: BrainError) -> Self {
        match e {
            BrainError::Violations(v) => CliError::Violations(
                v.iter().map(|(half, x)| Violation::new(half.to_string(), x.to_string())).collect(),
            ),
            e => input(e),
        }
    }
}

impl From<PowersetError> for CliError {
    fn from(e: PowersetError) -> Self {
        match e {
            PowersetError::Poset(e) => e.into(),
            PowersetError::Monotone(e) => e.into(),
            PowersetError::Category(e) => e.into(),
            PowersetError::Functor(e) => e.into(),
            PowersetError::Bimodule(e) => e.into(),
            PowersetError::Galois(e) => e.into(),
            PowersetError::SemiAdjunction(e) => e.into(),
            PowersetError::Adjunction(e) => e.into(),
            PowersetError::Brain(e) => e.into(),
            PowersetError::AdjointMismatch(_) | PowersetError::UniversalMismatch { .. } => {
                CliError::Violations(vec![Violation::new(kind_of(&e), e.to_string())])
            }
            e => input(e),
        }
    }
}

impl From<FreeGroupError> for CliError {
    fn from(e: FreeGroupError) -> Self {
        match e {
            FreeGroupError::Violations(v) => violations(&v),
            e => input(e),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Category(e) => e.into(),
            LinalgError::Functor(e) => e.into(),
            LinalgError::Bimodule(e) => e.into(),
            LinalgError::Brain(e) => e.into(),
            LinalgError::BiproductLaw(_) => CliError::Violations(vec![Violation::new(kind_of(&e), e.to_string())]),
            e => input(e),
        }
    }
}
