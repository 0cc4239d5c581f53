//! Labeled filtrations: homology-valued sheaves on the simplex of labels,
//! their persistence, and the two-label unicolored-components pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::cohomology::{simplicial_chain_complex, simplicial_chain_map, CohomologyBasis};
use crate::complex::{FilteredComplex, Simplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::persistence::{Barcode, CopersistenceModule};
use crate::sheaf::{CellularSheaf, SheafDiagram, SheafMorphism};
use crate::type_a::pointwise_barcode;
use crate::type_t::{type_t_direct, TypeTInput};

const MAX_LABELS: usize = 16;

/// A filtration `K` with a label per vertex, and the induced simplicial
/// map onto the full simplex `L` spanned by the labels.
#[derive(Clone, Debug)]
pub struct LabeledFiltration {
    map: SimplicialMap,
    labels: Vec<String>,
}

impl LabeledFiltration {
    /// Labels are sorted; label `i` becomes vertex `i` of `L`, and simplices
    /// of `L` are named by their labels joined with `_`.
    pub fn new(complex: Arc<FilteredComplex>, vertex_labels: &BTreeMap<u32, String>) -> Result<Self> {
        let labels: Vec<String> = vertex_labels
            .values()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if labels.len() > MAX_LABELS {
            return Err(Error::InvalidInput(format!(
                "{} labels; at most {MAX_LABELS} are supported",
                labels.len()
            )));
        }
        let r = labels.len() as u32;
        let mut simplices = Vec::new();
        for mask in 1u32..(1 << r) {
            let verts: Vec<u32> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let id = verts
                .iter()
                .map(|&i| labels[i as usize].as_str())
                .collect::<Vec<_>>()
                .join("_");
            simplices.push(Simplex::with_id(id, verts, 0));
        }
        let l = Arc::new(FilteredComplex::new(complex.field(), 1, simplices)?);
        let vm = vertex_labels
            .iter()
            .map(|(&v, lab)| (v, labels.binary_search(lab).unwrap() as u32))
            .collect();
        let map = SimplicialMap::new(complex, l, vm)?;
        Ok(LabeledFiltration { map, labels })
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        self.map.source()
    }

    pub fn label_complex(&self) -> &Arc<FilteredComplex> {
        self.map.target()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn steps(&self) -> usize {
        self.complex().steps()
    }

    /// The labeling restricted to step `i`.
    pub fn step_map(&self, i: usize) -> SimplicialMap {
        let sub = Arc::new(self.complex().subcomplex_at(i));
        let vm = sub
            .vertex_labels()
            .into_iter()
            .map(|v| (v, self.map.map_vertex(v)))
            .collect();
        SimplicialMap::new(sub, self.label_complex().clone(), vm).expect("restriction of a simplicial map")
    }
}

/// `H_n(tau_f)` on every simplex `tau` of `L`, with the bases used.
#[derive(Clone, Debug)]
pub struct LabelSheaf {
    pub sheaf: CellularSheaf,
    pub preimages: Vec<Arc<FilteredComplex>>,
    pub bases: Vec<CohomologyBasis>,
}

/// Picks a homology basis for `H_n` of a subcomplex.
pub type BasisChoice<'a> = dyn FnMut(&Arc<FilteredComplex>, usize) -> CohomologyBasis + 'a;

fn default_basis(k: &Arc<FilteredComplex>, n: usize) -> CohomologyBasis {
    simplicial_chain_complex(k).homology_basis(n)
}

// Matrix of H_n(sub -> sup) in the given bases.
fn transport(
    sub: &Arc<FilteredComplex>,
    sup: &Arc<FilteredComplex>,
    n: usize,
    src: &CohomologyBasis,
    tgt: &CohomologyBasis,
) -> Result<Matrix> {
    let incl = SimplicialMap::inclusion(sub.clone(), sup.clone())?;
    let images = simplicial_chain_map(&incl, n).mul(src.representatives());
    let cols: Vec<Vec<u32>> = (0..images.cols())
        .map(|c| tgt.express(&images.column(c)))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(sub.field(), tgt.dim(), &cols))
}

pub fn label_sheaf(f: &SimplicialMap, n: usize) -> Result<LabelSheaf> {
    label_sheaf_with(f, n, &mut default_basis)
}

/// [`label_sheaf`] with caller-chosen homology bases.
pub fn label_sheaf_with(f: &SimplicialMap, n: usize, choose: &mut BasisChoice) -> Result<LabelSheaf> {
    let l = f.target().clone();
    let preimages: Vec<Arc<FilteredComplex>> =
        (0..l.len()).map(|t| Arc::new(f.preimage_subcomplex(t))).collect();
    let bases: Vec<CohomologyBasis> = preimages.iter().map(|p| choose(p, n)).collect();
    let mut maps = BTreeMap::new();
    for t in 0..l.len() {
        for &(s, _) in l.faces(t) {
            let m = transport(&preimages[s], &preimages[t], n, &bases[s], &bases[t])?;
            maps.insert((s, t), m);
        }
    }
    let stalks = bases.iter().map(CohomologyBasis::dim).collect();
    Ok(LabelSheaf {
        sheaf: CellularSheaf::new(l, stalks, maps)?,
        preimages,
        bases,
    })
}

/// `F^n_{K_0} -> F^n_{K_1} -> ...` on `L`.
pub fn label_diagram(lf: &LabeledFiltration, n: usize) -> Result<SheafDiagram> {
    label_diagram_with(lf, n, &mut default_basis)
}

pub fn label_diagram_with(lf: &LabeledFiltration, n: usize, choose: &mut BasisChoice) -> Result<SheafDiagram> {
    let steps: Vec<LabelSheaf> = (0..lf.steps())
        .map(|i| label_sheaf_with(&lf.step_map(i), n, choose))
        .collect::<Result<_>>()?;
    let sheaves: Vec<Arc<CellularSheaf>> = steps.iter().map(|s| Arc::new(s.sheaf.clone())).collect();
    let mut morphisms = Vec::new();
    for i in 0..steps.len().saturating_sub(1) {
        let (a, b) = (&steps[i], &steps[i + 1]);
        let comps = (0..lf.label_complex().len())
            .map(|t| transport(&a.preimages[t], &b.preimages[t], n, &a.bases[t], &b.bases[t]))
            .collect::<Result<_>>()?;
        morphisms.push(SheafMorphism::new(sheaves[i].clone(), sheaves[i + 1].clone(), comps)?);
    }
    if sheaves.is_empty() {
        return Err(Error::InvalidInput("filtration has no steps".into()));
    }
    SheafDiagram::new(sheaves, morphisms)
}

/// Persistent `H^k(L, F^n_{K_i})`, always through the pointwise engine.
pub fn mixed_feature_barcodes(lf: &LabeledFiltration, n: usize, k: usize) -> Result<Barcode> {
    pointwise_barcode(&label_diagram(lf, n)?, k)
}

/// Sheaf on `L` for at most two labels: `F` on each label, `F^2` on the
/// edge, with the two coordinate injections.
pub fn unicolored_sheaf(lf: &LabeledFiltration) -> Result<CellularSheaf> {
    let l = lf.label_complex().clone();
    let f = l.field();
    match lf.labels().len() {
        0 => Ok(CellularSheaf::zero(l)),
        1 => Ok(CellularSheaf::constant(l, 1)),
        2 => {
            let edge = l.index_of_vertices(&[0, 1]).unwrap();
            let mut maps = BTreeMap::new();
            maps.insert((l.index_of_vertices(&[0]).unwrap(), edge), Matrix::from_rows(f, 1, &[vec![1], vec![0]])?);
            maps.insert((l.index_of_vertices(&[1]).unwrap(), edge), Matrix::from_rows(f, 1, &[vec![0], vec![1]])?);
            let mut stalks = vec![1; l.len()];
            stalks[edge] = 2;
            CellularSheaf::new(l, stalks, maps)
        }
        r => Err(Error::TooManyLabels(r)),
    }
}

/// Type-T persistence of the unicolored sheaf pulled back to `K`.
pub fn unicolored_pipeline(lf: &LabeledFiltration, k: usize) -> Result<(CopersistenceModule, Barcode)> {
    let sheaf = unicolored_sheaf(lf)?.pullback(lf.map())?;
    type_t_direct(&TypeTInput::new(Arc::new(sheaf)), k)
}
