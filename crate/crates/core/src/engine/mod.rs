//! Tower values of Siegel-parahoric Bessel functions: vanishing rules, Hecke
//! rows, derived constraints, truncated eigensystems and the main-tower series.

pub mod consequence;
pub mod families;
pub mod index;
pub mod rows;
pub mod series;
pub mod system;
pub mod table;

use bessel_scalar::{sym, Scalar, ScalarError, Symbol};
use thiserror::Error;

use crate::catalog::{eigenvalues, eigenvalues_twisted, CatalogError, EigenvalueData, RepType};

pub use families::{applicable, conditional, family_rows, FamilyId};
pub use index::{vanishes, Tag, TowerIndex, Window};
pub use rows::{t01_row, t10_row, LinearRow, Operator, Term};
pub use series::{check_two_step_recursion, kappa, main_tower_series};
pub use system::{assemble_eigensystem, solve_and_report, Components, EigenSystem, KernelReport};
pub use table::TowerTable;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("index {0} is outside the stated range of the row formula")]
    OutOfStatedRange(TowerIndex),
    #[error("no T01 row is available for {0}")]
    UnsupportedIndex(TowerIndex),
    #[error("the window contains no unknowns")]
    EmptyWindow,
    #[error("component {0} does not exist for this type")]
    NoSuchComponent(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A representation type with its Satake parameters and eigenvalue data.
#[derive(Clone, Debug)]
pub struct Model {
    pub t: RepType,
    pub alpha: Scalar,
    pub gamma: Scalar,
    pub eig: EigenvalueData,
}

impl Model {
    pub fn new(t: RepType, alpha: Scalar, gamma: Scalar) -> Result<Self, CatalogError> {
        let eig = eigenvalues(t, &alpha, &gamma)?;
        Ok(Model { t, alpha, gamma, eig })
    }

    /// The xi-twisted type (`gamma -> -gamma` in the eigenvalues).
    pub fn twisted(t: RepType, alpha: Scalar, gamma: Scalar) -> Result<Self, CatalogError> {
        let eig = eigenvalues_twisted(t, &alpha, &gamma)?;
        Ok(Model { t, alpha, gamma: -&gamma, eig })
    }

    /// Generic parameters `alpha`, `gamma`.
    pub fn symbolic(t: RepType) -> Self {
        Model::new(t, sym(Symbol::Alpha), sym(Symbol::Gamma)).expect("generic parameters satisfy the restrictions")
    }

    pub fn dim(&self) -> usize {
        self.eig.lambdas.len()
    }

    pub fn lambda(&self, comp: usize) -> &Scalar {
        &self.eig.lambdas[comp]
    }

    pub fn mu(&self, comp: usize) -> &Scalar {
        &self.eig.mus[comp]
    }
}
