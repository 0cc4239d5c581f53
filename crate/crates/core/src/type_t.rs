//! Copersistence of sheaf cohomology along a filtration: a fixed sheaf on
//! the last step restricted to every earlier step.

use std::sync::Arc;

use crate::cohomology::{cochain_complex, induce_on_cohomology, simplicial_cochain_map, CohomologyBasis};
use crate::complex::{FilteredComplex, SimplicialMap};
use crate::error::Result;
use crate::graded::{filtration_cosheaf, GradedCosheaf};
use crate::persistence::{decompose_copersistence, Barcode, CopersistenceModule};
use crate::sheaf::{unit_map, CellularSheaf, SheafDiagram, SheafMorphism};

/// A filtration (the sheaf's complex, with entries) and a sheaf on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTInput {
    sheaf: Arc<CellularSheaf>,
    steps: Vec<Arc<FilteredComplex>>,
}

impl TypeTInput {
    pub fn new(sheaf: Arc<CellularSheaf>) -> Self {
        let c = sheaf.complex();
        let steps = (0..c.steps()).map(|i| Arc::new(c.subcomplex_at(i))).collect();
        TypeTInput { sheaf, steps }
    }

    pub fn sheaf(&self) -> &Arc<CellularSheaf> {
        &self.sheaf
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        self.sheaf.complex()
    }

    /// Number of filtration steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The step-`i` subcomplex.
    pub fn step(&self, i: usize) -> &Arc<FilteredComplex> {
        &self.steps[i]
    }

    /// Inclusion `X_i -> X_j`.
    pub fn inclusion(&self, i: usize, j: usize) -> SimplicialMap {
        SimplicialMap::inclusion(self.steps[i].clone(), self.steps[j].clone())
            .expect("filtration steps are nested")
    }

    /// Inclusion `X_i -> X`.
    pub fn inclusion_into_full(&self, i: usize) -> SimplicialMap {
        SimplicialMap::inclusion(self.steps[i].clone(), self.complex().clone())
            .expect("filtration steps are subcomplexes")
    }
}

/// `F^i`: the sheaf restricted to every step.
pub fn pullback_chain(input: &TypeTInput) -> Vec<Arc<CellularSheaf>> {
    (0..input.len())
        .map(|i| {
            Arc::new(
                input
                    .sheaf()
                    .pullback(&input.inclusion_into_full(i))
                    .expect("inclusion into the sheaf's complex"),
            )
        })
        .collect()
}

/// `H^k(X_0, F^0) <- H^k(X_1, F^1) <- ...` with maps induced by the
/// inclusions, and its barcode.
pub fn type_t_direct(input: &TypeTInput, k: usize) -> Result<(CopersistenceModule, Barcode)> {
    let chain = pullback_chain(input);
    let bases: Vec<CohomologyBasis> = chain
        .iter()
        .map(|s| cochain_complex(s).cohomology_basis(k))
        .collect();
    let maps = (0..input.len().saturating_sub(1))
        .map(|i| {
            let iota = input.inclusion(i, i + 1);
            let cm = simplicial_cochain_map(&iota, &chain[i + 1], k);
            induce_on_cohomology(&cm, &bases[i + 1], &bases[i])
        })
        .collect::<Result<_>>()?;
    let module = CopersistenceModule::new(
        input.complex().field(),
        bases.iter().map(CohomologyBasis::dim).collect(),
        maps,
    )?;
    let bc = decompose_copersistence(&module, k);
    Ok((module, bc))
}

/// `G_i = (X_i -> X)_* F^i` with unit morphisms `G_{i+1} -> G_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GChain {
    pub sheaves: Vec<Arc<CellularSheaf>>,
    /// `maps[i]: G_{i+1} -> G_i`
    pub maps: Vec<SheafMorphism>,
}

impl GChain {
    /// The chain read backwards as a persistence diagram
    /// `G_{m-1} -> G_{m-2} -> ... -> G_0`.
    pub fn mirrored(&self) -> Result<SheafDiagram> {
        SheafDiagram::new(
            self.sheaves.iter().rev().cloned().collect(),
            self.maps.iter().rev().cloned().collect(),
        )
    }
}

pub fn g_chain(input: &TypeTInput) -> Result<GChain> {
    let chain = pullback_chain(input);
    let sheaves: Vec<Arc<CellularSheaf>> = chain
        .iter()
        .enumerate()
        .map(|(i, f)| f.extend_by_zero(&input.inclusion_into_full(i)).map(Arc::new))
        .collect::<Result<_>>()?;
    let maps = (0..input.len().saturating_sub(1))
        .map(|i| {
            let u = unit_map(&input.inclusion_into_full(i), &sheaves[i + 1])?;
            // same sheaf as G_i; share the allocation
            debug_assert_eq!(**u.target(), *sheaves[i]);
            SheafMorphism::new(sheaves[i + 1].clone(), sheaves[i].clone(), u.components().to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(GChain { sheaves, maps })
}

/// Graded cosheaf of the filtration: generator degrees are entries.
pub fn graded_cosheaf(input: &TypeTInput) -> GradedCosheaf {
    filtration_cosheaf(input.sheaf())
}

/// Barcode from graded reduction of the cosheaf chain complex.
pub fn type_t_graded(input: &TypeTInput, k: usize) -> Barcode {
    graded_cosheaf(input).chain_complex().barcode(k)
}
