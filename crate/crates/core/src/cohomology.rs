//! Cochain complexes of cellular sheaves, chain complexes of cosheaves,
//! (co)homology bases and induced maps.

use crate::complex::{FilteredComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix, Solver};
use crate::sheaf::{CellularCosheaf, CellularSheaf, SheafMorphism};

/// Position of every simplex's first coordinate inside its degree's
/// cochain space, plus the per-degree totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
}

impl Layout {
    pub fn new(c: &FilteredComplex, stalks: &[usize]) -> Self {
        let mut offsets = vec![0; c.len()];
        let top = c.dim().map_or(0, |d| d + 1);
        let mut dims = vec![0; top];
        for (k, total) in dims.iter_mut().enumerate() {
            for &s in c.of_dim(k) {
                offsets[s] = *total;
                *total += stalks[s];
            }
        }
        Layout { offsets, dims }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }
}

/// Cochain complex `C^0 -> C^1 -> ...` with explicit coboundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    dims: Vec<usize>,
    // delta[k]: C^k -> C^{k+1}
    delta: Vec<Matrix>,
}

impl CochainComplex {
    /// From the dimensions of each `C^k` and the coboundaries between them
    /// (`delta[k]` of shape `dims[k+1] x dims[k]`).
    pub fn from_parts(field: Field, dims: Vec<usize>, delta: Vec<Matrix>) -> Result<Self> {
        if delta.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} cochain groups need {} coboundaries",
                dims.len(),
                dims.len().saturating_sub(1)
            )));
        }
        for (k, d) in delta.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::Shape(format!("coboundary {k} has the wrong shape")));
            }
        }
        Ok(CochainComplex { field, dims, delta })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of stored cochain groups.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `delta^k: C^k -> C^{k+1}`; zero maps outside the stored range.
    pub fn coboundary(&self, k: usize) -> Matrix {
        self.delta
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(k + 1), self.dim(k)))
    }

    /// `delta^{k-1}`, the zero `C^0`-valued map from the zero space at k = 0.
    pub fn incoming(&self, k: usize) -> Matrix {
        match k {
            0 => Matrix::zeros(self.field, self.dim(0), 0),
            _ => self.coboundary(k - 1),
        }
    }

    pub fn cohomology_basis(&self, k: usize) -> CohomologyBasis {
        CohomologyBasis::from_maps(k, &self.incoming(k), &self.coboundary(k))
    }

    pub fn betti(&self, k: usize) -> usize {
        let n = self.dim(k);
        n - self.coboundary(k).rank() - self.incoming(k).rank()
    }
}

/// Basis of `H^k` (or `H_k`): representative cycles completing a basis of
/// the kernel relative to the image of the incoming map.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    reps: Matrix,
    // solves against [reps | incoming image]
    solver: Solver,
}

impl CohomologyBasis {
    /// `incoming: C' -> C`, `outgoing: C -> C''` with `outgoing * incoming = 0`.
    pub fn from_maps(degree: usize, incoming: &Matrix, outgoing: &Matrix) -> Self {
        let f = outgoing.field();
        let n = outgoing.cols();
        debug_assert_eq!(incoming.rows(), n);
        let mut ech = Echelon::new(f, n);
        for c in 0..incoming.cols() {
            ech.insert(incoming.column(c));
        }
        let kernel = outgoing.kernel_basis();
        let reps: Vec<Vec<u32>> = (0..kernel.cols())
            .map(|c| kernel.column(c))
            .filter(|v| ech.insert(v.clone()))
            .collect();
        let reps = Matrix::from_columns(f, n, &reps);
        let solver = Solver::new(&reps.hstack(incoming));
        CohomologyBasis {
            degree,
            reps,
            solver,
        }
    }

    /// Basis with caller-chosen representatives, which must be cycles
    /// whose classes form a basis modulo the image of `incoming`.
    pub fn with_representatives(degree: usize, reps: Matrix, incoming: &Matrix) -> Self {
        let solver = Solver::new(&reps.hstack(incoming));
        CohomologyBasis {
            degree,
            reps,
            solver,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Representatives as columns.
    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    /// Coordinates of the class of cocycle `v` in this basis.
    pub fn express(&self, v: &[u32]) -> Result<Vec<u32>> {
        let x = self
            .solver
            .solve(v)
            .ok_or_else(|| Error::NotInSpan(format!("vector is not a cocycle in degree {}", self.degree)))?;
        Ok(x[..self.dim()].to_vec())
    }
}

/// Matrix of the map on cohomology induced by a cochain map between the
/// complexes the two bases belong to.
pub fn induce_on_cohomology(
    cochain_map: &Matrix,
    src: &CohomologyBasis,
    tgt: &CohomologyBasis,
) -> Result<Matrix> {
    let f = cochain_map.field();
    let images = cochain_map.mul(src.representatives());
    let cols: Vec<Vec<u32>> = (0..images.cols())
        .map(|c| tgt.express(&images.column(c)))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(f, tgt.dim(), &cols))
}

/// Cellular cochain complex of a sheaf; block `(tau, sigma)` of `delta^k`
/// is `[sigma : tau] * restriction(sigma, tau)`.
pub fn cochain_complex(f: &CellularSheaf) -> CochainComplex {
    let c = f.complex();
    let fld = f.field();
    let layout = Layout::new(c, f.stalks());
    let top = layout.dims.len();
    let mut delta = Vec::new();
    for k in 0..top.saturating_sub(1) {
        let mut d = Matrix::zeros(fld, layout.dim(k + 1), layout.dim(k));
        for &t in c.of_dim(k + 1) {
            for &(s, sign) in c.faces(t) {
                let block = f.restriction(s, t);
                let block = if sign < 0 { block.scale(fld.neg(1)) } else { block.clone() };
                d.set_block(layout.offsets[t], layout.offsets[s], &block);
            }
        }
        delta.push(d);
    }
    CochainComplex {
        field: fld,
        dims: layout.dims,
        delta,
    }
}

pub fn cohomology_basis(f: &CellularSheaf, k: usize) -> CohomologyBasis {
    cochain_complex(f).cohomology_basis(k)
}

/// `dim H^k(X, F)` for every `k` up to the complex dimension.
pub fn cohomology_dims(f: &CellularSheaf) -> Vec<usize> {
    let cc = cochain_complex(f);
    (0..cc.len()).map(|k| cc.betti(k)).collect()
}

/// Cochain map `C^k(F) -> C^k(G)` of a sheaf morphism.
pub fn morphism_cochain_map(phi: &SheafMorphism, k: usize) -> Matrix {
    let (src, tgt) = (phi.source(), phi.target());
    let c = src.complex();
    let ls = Layout::new(c, src.stalks());
    let lt = Layout::new(c, tgt.stalks());
    let mut m = Matrix::zeros(src.field(), lt.dim(k), ls.dim(k));
    for &s in c.of_dim(k) {
        m.set_block(lt.offsets[s], ls.offsets[s], phi.component(s));
    }
    m
}

pub fn induced_by_sheaf_morphism(phi: &SheafMorphism, k: usize) -> Result<Matrix> {
    let src = cohomology_basis(phi.source(), k);
    let tgt = cohomology_basis(phi.target(), k);
    induce_on_cohomology(&morphism_cochain_map(phi, k), &src, &tgt)
}

/// Cochain map `C^k(Y, F) -> C^k(X, f^*F)` of a simplicial map `f: X -> Y`.
///
/// The `(f(sigma), i)` coordinate goes to `(sigma, i)` for every
/// k-simplex not collapsed by `f`, with the sign of the vertex permutation.
pub fn simplicial_cochain_map(f: &SimplicialMap, sheaf: &CellularSheaf, k: usize) -> Matrix {
    let (x, y) = (f.source(), f.target());
    let fld = sheaf.field();
    let ly = Layout::new(y, sheaf.stalks());
    let pulled: Vec<usize> = (0..x.len()).map(|s| sheaf.stalk(f.image(s))).collect();
    let lx = Layout::new(x, &pulled);
    let mut m = Matrix::zeros(fld, lx.dim(k), ly.dim(k));
    for &s in x.of_dim(k) {
        let sign = f.orientation(s);
        if sign == 0 {
            continue;
        }
        let t = f.image(s);
        let block = Matrix::identity(fld, sheaf.stalk(t));
        let block = if sign < 0 { block.scale(fld.neg(1)) } else { block };
        m.set_block(lx.offsets[s], ly.offsets[t], &block);
    }
    m
}

/// `H^k(Y, F) -> H^k(X, f^*F)`.
pub fn induced_by_simplicial_map(f: &SimplicialMap, sheaf: &CellularSheaf, k: usize) -> Result<Matrix> {
    let pulled = sheaf.pullback(f)?;
    let src = cohomology_basis(sheaf, k);
    let tgt = cohomology_basis(&pulled, k);
    induce_on_cohomology(&simplicial_cochain_map(f, sheaf, k), &src, &tgt)
}

/// Chain complex `... -> C_1 -> C_0` with `boundary[k]: C_k -> C_{k-1}`
/// stored for `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    // boundary[k - 1] = d_k
    boundary: Vec<Matrix>,
}

impl ChainComplex {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d_k: C_k -> C_{k-1}`; the map to the zero space for `k = 0`.
    pub fn boundary(&self, k: usize) -> Matrix {
        if k == 0 {
            return Matrix::zeros(self.field, 0, self.dim(0));
        }
        self.boundary
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(k - 1), self.dim(k)))
    }

    pub fn homology_basis(&self, k: usize) -> CohomologyBasis {
        CohomologyBasis::from_maps(k, &self.boundary(k + 1), &self.boundary(k))
    }

    pub fn betti(&self, k: usize) -> usize {
        self.dim(k) - self.boundary(k).rank() - self.boundary(k + 1).rank()
    }
}

/// Chain complex of a cosheaf; block `(sigma, tau)` of `d_k` is
/// `[sigma : tau] * extension(tau, sigma)`.
pub fn chain_complex(l: &CellularCosheaf) -> ChainComplex {
    let c = l.complex();
    let fld = l.field();
    let layout = Layout::new(c, l.stalks());
    let top = layout.dims.len();
    let mut boundary = Vec::new();
    for k in 1..top {
        let mut d = Matrix::zeros(fld, layout.dim(k - 1), layout.dim(k));
        for &t in c.of_dim(k) {
            for &(s, sign) in c.faces(t) {
                let block = l.extension(t, s);
                let block = if sign < 0 { block.scale(fld.neg(1)) } else { block.clone() };
                d.set_block(layout.offsets[s], layout.offsets[t], &block);
            }
        }
        boundary.push(d);
    }
    ChainComplex {
        field: fld,
        dims: layout.dims,
        boundary,
    }
}

pub fn cosheaf_homology_basis(l: &CellularCosheaf, k: usize) -> CohomologyBasis {
    chain_complex(l).homology_basis(k)
}

/// Simplicial chain complex of `K` with `F_p` coefficients.
pub fn simplicial_chain_complex(k: &std::sync::Arc<FilteredComplex>) -> ChainComplex {
    chain_complex(&CellularSheaf::constant(k.clone(), 1).dualize())
}

/// `H_n(K; F_p)` with representative cycles over the simplices of
/// dimension `n` in canonical order.
pub fn simplicial_homology_basis(k: &std::sync::Arc<FilteredComplex>, n: usize) -> CohomologyBasis {
    simplicial_chain_complex(k).homology_basis(n)
}

/// Chain map `C_n(X) -> C_n(Y)` of a simplicial map (degenerate simplices
/// go to 0).
pub fn simplicial_chain_map(f: &SimplicialMap, n: usize) -> Matrix {
    let (x, y) = (f.source(), f.target());
    let fld = x.field();
    let pos = |c: &FilteredComplex, s: usize| c.of_dim(n).iter().position(|&t| t == s).unwrap();
    let mut m = Matrix::zeros(fld, y.of_dim(n).len(), x.of_dim(n).len());
    for (j, &s) in x.of_dim(n).iter().enumerate() {
        let sign = f.orientation(s);
        if sign != 0 {
            m.set(pos(y, f.image(s)), j, fld.signed(sign, 1));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn hollow_triangle(p: u32) -> Arc<FilteredComplex> {
        Arc::new(
            FilteredComplex::from_closure(
                Field::new(p).unwrap(),
                &[(vec![0, 1], 0), (vec![0, 2], 0), (vec![1, 2], 0)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn constant_sheaf_on_hollow_triangle() {
        for p in [2, 3, 7] {
            let f = CellularSheaf::constant(hollow_triangle(p), 1);
            assert_eq!(cohomology_dims(&f), vec![1, 1]);
            let cc = cochain_complex(&f);
            assert_eq!(
                cc.coboundary(0).to_rows(),
                vec![
                    vec![p - 1, 1, 0],
                    vec![p - 1, 0, 1],
                    vec![0, p - 1, 1],
                ]
            );
        }
    }

    #[test]
    fn zero_sheaf_has_no_cohomology() {
        let f = CellularSheaf::zero(hollow_triangle(2));
        assert_eq!(cohomology_dims(&f), vec![0, 0]);
        assert_eq!(cochain_complex(&f).coboundary(0).shape(), (0, 0));
    }

    // Edge x -> y with F(x) = F^2, F(e) = F^3, F(y) = F.
    #[test]
    fn two_stalk_edge_sheaf() {
        let c = Arc::new(FilteredComplex::from_closure(Field::f2(), &[(vec![0, 1], 0)]).unwrap());
        let f = CellularSheaf::from_ids(
            c,
            [("0", 2), ("1", 1), ("0_1", 3)],
            [
                ("0", "0_1", vec![vec![1, 0], vec![1, 0], vec![0, 1]]),
                ("1", "0_1", vec![vec![0], vec![0], vec![1]]),
            ],
        )
        .unwrap();
        assert_eq!(cochain_complex(&f).coboundary(0).rank(), 2);
        assert_eq!(cohomology_dims(&f), vec![1, 1]);
    }

    #[test]
    fn components_give_h0() {
        let c = Arc::new(
            FilteredComplex::from_closure(
                Field::f2(),
                &[(vec![0, 1], 0), (vec![2], 0), (vec![3, 4], 0), (vec![4, 5], 0)],
            )
            .unwrap(),
        );
        let basis = cohomology_basis(&CellularSheaf::constant(c, 1), 0);
        assert_eq!(basis.dim(), 3);
    }

    #[test]
    fn identity_and_zero_morphisms() {
        let f = Arc::new(CellularSheaf::constant(hollow_triangle(3), 2));
        let id = SheafMorphism::identity(f.clone());
        for k in 0..2 {
            assert!(induced_by_sheaf_morphism(&id, k).unwrap().is_identity());
            let z = SheafMorphism::zero(f.clone(), f.clone());
            assert!(induced_by_sheaf_morphism(&z, k).unwrap().is_zero());
        }
    }

    #[test]
    fn identity_simplicial_map() {
        let f = CellularSheaf::constant(hollow_triangle(5), 1);
        let id = SimplicialMap::identity(f.complex().clone());
        for k in 0..2 {
            assert!(induced_by_simplicial_map(&id, &f, k).unwrap().is_identity());
        }
    }

    #[test]
    fn cosheaf_homology_of_hollow_triangle() {
        let c = hollow_triangle(2);
        assert_eq!(simplicial_homology_basis(&c, 0).dim(), 1);
        assert_eq!(simplicial_homology_basis(&c, 1).dim(), 1);
        let z = CellularSheaf::zero(c).dualize();
        assert_eq!(cosheaf_homology_basis(&z, 0).dim(), 0);
    }

    #[test]
    fn point_homology() {
        let c = Arc::new(FilteredComplex::from_closure(Field::f2(), &[(vec![0], 0)]).unwrap());
        assert_eq!(simplicial_homology_basis(&c, 0).dim(), 1);
        assert_eq!(simplicial_homology_basis(&c, 1).dim(), 0);
        assert_eq!(simplicial_homology_basis(&c, 3).dim(), 0);
    }

    #[test]
    fn express_rejects_non_cocycles() {
        let f = CellularSheaf::constant(hollow_triangle(2), 1);
        let b = cohomology_basis(&f, 0);
        assert_eq!(b.express(&[1, 1, 1]).unwrap(), vec![1]);
        assert!(b.express(&[1, 0, 0]).is_err());
    }
}
