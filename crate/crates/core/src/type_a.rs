//! Persistence of sheaf cohomology along a diagram of sheaves on one
//! complex: the pointwise engine (cohomology per step + rank formula) and
//! the graded engine (graded sheaf + graded reduction).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cochain_complex, induce_on_cohomology, morphism_cochain_map, CohomologyBasis};
use crate::error::{Error, Result};
use crate::graded::diagram_to_graded_sheaf;
use crate::persistence::{decompose_by_ranks, Barcode, PersistenceModule};
use crate::sheaf::SheafDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Pointwise,
    Graded,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Pointwise => "pointwise",
            Engine::Graded => "graded",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pointwise" => Ok(Engine::Pointwise),
            "graded" => Ok(Engine::Graded),
            _ => Err(Error::InvalidInput(format!("unknown engine {s}"))),
        }
    }
}

/// Cohomology bases of every sheaf in the diagram at degree `k`.
pub fn step_bases(diagram: &SheafDiagram, k: usize) -> Vec<CohomologyBasis> {
    diagram
        .sheaves()
        .iter()
        .map(|s| cochain_complex(s).cohomology_basis(k))
        .collect()
}

/// `H^k(X, F_0) -> H^k(X, F_1) -> ...` in fixed per-step bases.
pub fn persistence_module(diagram: &SheafDiagram, k: usize) -> Result<PersistenceModule> {
    let bases = step_bases(diagram, k);
    let maps = diagram
        .morphisms()
        .iter()
        .enumerate()
        .map(|(i, phi)| induce_on_cohomology(&morphism_cochain_map(phi, k), &bases[i], &bases[i + 1]))
        .collect::<Result<_>>()?;
    PersistenceModule::new(
        diagram.complex().field(),
        bases.iter().map(CohomologyBasis::dim).collect(),
        maps,
    )
}

pub fn pointwise_barcode(diagram: &SheafDiagram, k: usize) -> Result<Barcode> {
    Ok(decompose_by_ranks(&persistence_module(diagram, k)?, k))
}

/// Fails with [`Error::NotFree`] unless every stalk map is injective.
pub fn graded_barcode(diagram: &SheafDiagram, k: usize) -> Result<Barcode> {
    Ok(diagram_to_graded_sheaf(diagram)?.cochain_complex().barcode(k))
}

pub fn barcode(diagram: &SheafDiagram, k: usize, engine: Engine) -> Result<Barcode> {
    match engine {
        Engine::Pointwise => pointwise_barcode(diagram, k),
        Engine::Graded => graded_barcode(diagram, k),
    }
}
