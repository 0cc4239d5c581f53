//! Random complexes, sheaves and diagrams.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use persheaf::{CellularSheaf, Field, FilteredComplex, Matrix, SheafDiagram, SheafMorphism, Simplex, Solver};

/// Random filtered complex of dimension at most 2 with at most
/// `max_simplices` simplices and entries in `0..steps`.
pub fn random_complex(rng: &mut impl Rng, field: Field, max_simplices: usize, steps: usize) -> FilteredComplex {
    let steps = steps.max(1);
    let n = rng.gen_range(1..=6u32);
    let mut entries: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for v in 0..n {
        if entries.len() < max_simplices {
            entries.insert(vec![v], rng.gen_range(0..steps));
        }
    }
    for _ in 0..3 * max_simplices {
        let k = rng.gen_range(2..=3usize.min(n as usize).max(2));
        if k > n as usize {
            break;
        }
        let mut verts: Vec<u32> = (0..n).collect();
        verts.shuffle(rng);
        verts.truncate(k);
        verts.sort_unstable();
        if entries.contains_key(&verts) {
            continue;
        }
        let faces: Vec<Vec<u32>> = (1u32..(1 << k) - 1)
            .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect())
            .collect();
        let missing: Vec<&Vec<u32>> = faces.iter().filter(|f| !entries.contains_key(*f)).collect();
        if entries.len() + missing.len() + 1 > max_simplices {
            continue;
        }
        let mut e = rng.gen_range(0..steps);
        for f in &faces {
            if let Some(&fe) = entries.get(f) {
                e = e.max(fe);
            }
        }
        // fill missing faces by size so their own faces exist first
        let mut missing: Vec<Vec<u32>> = missing.into_iter().cloned().collect();
        missing.sort_by_key(Vec::len);
        for f in missing {
            entries.insert(f, e);
        }
        entries.insert(verts, e);
    }
    let simplices = entries.into_iter().map(|(v, e)| Simplex::new(v, e)).collect();
    FilteredComplex::new(field, steps, simplices).expect("generated complex is valid")
}

fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let p = field.modulus();
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_range(0..p));
        }
    }
    m
}

// Rows spanning the annihilator of the column span of `w`.
fn annihilator(w: &Matrix) -> Matrix {
    w.transpose().kernel_basis().transpose()
}

fn solve_right(q_src: &Matrix, q_tgt: &Matrix) -> Matrix {
    // R q_src = q_tgt  <=>  q_src^T R^T = q_tgt^T
    let solver = Solver::new(&q_src.transpose());
    let cols: Vec<Vec<u32>> = (0..q_tgt.rows())
        .map(|r| solver.solve(q_tgt.row(r)).expect("kernel containment"))
        .collect();
    Matrix::from_columns(q_src.field(), q_src.rows(), &cols).transpose()
}

/// Random quotient of a constant sheaf `F^n` (`n <= max_stalk`): stalk at
/// `sigma` is `F^n / W_sigma` with `W` growing towards cofaces.
pub fn random_sheaf(rng: &mut impl Rng, complex: Arc<FilteredComplex>, max_stalk: usize) -> CellularSheaf {
    let field = complex.field();
    let n = rng.gen_range(1..=max_stalk.max(1));
    let mut w: Vec<Matrix> = Vec::with_capacity(complex.len());
    for s in 0..complex.len() {
        let extra = rng.gen_range(0..=n);
        let mut acc = random_matrix(rng, field, n, extra);
        if rng.gen_bool(0.4) {
            acc = Matrix::zeros(field, n, 0);
        }
        for &(f, _) in complex.faces(s) {
            acc = acc.hstack(&w[f]);
        }
        w.push(acc);
    }
    let q: Vec<Matrix> = w.iter().map(annihilator).collect();
    let stalks = q.iter().map(Matrix::rows).collect();
    let mut maps = BTreeMap::new();
    for t in 0..complex.len() {
        for &(s, _) in complex.faces(t) {
            maps.insert((s, t), solve_right(&q[s], &q[t]));
        }
    }
    CellularSheaf::new(complex, stalks, maps).expect("quotient sheaf is valid")
}

/// Random chain of subsheaves `F_0 <= F_1 <= ... <= F_{len-1}` of a random
/// quotient sheaf, with the inclusions as morphisms.
pub fn random_monomorphic_diagram(
    rng: &mut impl Rng,
    complex: Arc<FilteredComplex>,
    max_stalk: usize,
    len: usize,
) -> SheafDiagram {
    let field = complex.field();
    let ambient = random_sheaf(rng, complex.clone(), max_stalk);
    let len = len.max(1);
    // spans[i][s]: columns spanning the step-i subspace at s
    let mut spans: Vec<Vec<Matrix>> = Vec::with_capacity(len);
    for i in 0..len {
        let mut step: Vec<Matrix> = Vec::with_capacity(complex.len());
        for s in 0..complex.len() {
            let d = ambient.stalk(s);
            let mut acc = if i == 0 {
                Matrix::zeros(field, d, 0)
            } else {
                spans[i - 1][s].clone()
            };
            let extra = rng.gen_range(0..=1usize);
            acc = acc.hstack(&random_matrix(rng, field, d, extra));
            for &(f, _) in complex.faces(s) {
                acc = acc.hstack(&ambient.restriction(f, s).mul(&step[f]));
            }
            step.push(independent_columns(&acc));
        }
        spans.push(step);
    }
    let express_in = |basis: &Matrix, v: &Matrix| -> Matrix {
        let solver = Solver::new(basis);
        let cols: Vec<Vec<u32>> = (0..v.cols())
            .map(|c| solver.solve(&v.column(c)).expect("subspace containment"))
            .collect();
        Matrix::from_columns(field, basis.cols(), &cols)
    };
    let sheaves: Vec<Arc<CellularSheaf>> = spans
        .iter()
        .map(|step| {
            let stalks = step.iter().map(Matrix::cols).collect();
            let mut maps = BTreeMap::new();
            for t in 0..complex.len() {
                for &(s, _) in complex.faces(t) {
                    let img = ambient.restriction(s, t).mul(&step[s]);
                    maps.insert((s, t), express_in(&step[t], &img));
                }
            }
            Arc::new(CellularSheaf::new(complex.clone(), stalks, maps).expect("subsheaf is valid"))
        })
        .collect();
    let morphisms = (0..len - 1)
        .map(|i| {
            let comps = (0..complex.len())
                .map(|s| express_in(&spans[i + 1][s], &spans[i][s]))
                .collect();
            SheafMorphism::new(sheaves[i].clone(), sheaves[i + 1].clone(), comps).expect("inclusion is natural")
        })
        .collect();
    SheafDiagram::new(sheaves, morphisms).expect("chain of inclusions")
}

/// Keeps the columns that are independent of the ones before them.
pub fn independent_columns(m: &Matrix) -> Matrix {
    let mut keep: Vec<usize> = Vec::new();
    for c in 0..m.cols() {
        let mut trial = keep.clone();
        trial.push(c);
        let rows: Vec<usize> = (0..m.rows()).collect();
        if m.submatrix(&rows, &trial).rank() == trial.len() {
            keep = trial;
        }
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &keep)
}

/// Random vertex labels drawn from `labels`.
pub fn random_labels(rng: &mut impl Rng, complex: &FilteredComplex, labels: &[&str]) -> BTreeMap<u32, String> {
    complex
        .vertex_labels()
        .into_iter()
        .map(|v| (v, labels.choose(rng).expect("nonempty").to_string()))
        .collect()
}
