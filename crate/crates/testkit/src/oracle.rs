//! Independent reference computations. Linear algebra here is a separate
//! dense Gaussian elimination, not the library's.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;

use persheaf::{Bar, Barcode, CellularSheaf, Field, FilteredComplex, Matrix, PersistenceModule};

type Rows = Vec<Vec<u64>>;

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row echelon form in place; returns the pivot columns.
fn eliminate(rows: &mut Rows, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, pr);
        let s = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    eliminate(&mut m, p).len()
}

/// Kernel basis of a `rows x ncols` matrix, one vector per entry.
pub fn kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = eliminate(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f] % p) % p;
            }
            v
        })
        .collect()
}

fn vertex_sets(c: &FilteredComplex, k: usize, step: usize) -> Vec<Vec<u32>> {
    c.simplices()
        .iter()
        .filter(|s| s.vertices.len() == k + 1 && s.entry <= step)
        .map(|s| s.vertices.clone())
        .collect()
}

/// Boundary `C_k -> C_{k-1}` of the step-`step` subcomplex as dense rows,
/// with simplices in vertex-lexicographic order.
fn boundary(c: &FilteredComplex, k: usize, step: usize, p: u64) -> (Rows, usize) {
    let cols = vertex_sets(c, k, step);
    if k == 0 {
        return (Vec::new(), cols.len());
    }
    let rows = vertex_sets(c, k - 1, step);
    let index: BTreeMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut m = vec![vec![0u64; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            let sign = if drop % 2 == 0 { 1 } else { p - 1 };
            m[index[&face]][j] = sign % p;
        }
    }
    (m, cols.len())
}

fn last(c: &FilteredComplex) -> usize {
    c.steps().saturating_sub(1)
}

/// Betti numbers of the whole complex over `F_p`, degrees `0..=dim`.
pub fn simplicial_betti(c: &FilteredComplex) -> Vec<usize> {
    let p = u64::from(c.field().modulus());
    let top = c.simplices().iter().map(|s| s.vertices.len()).max().unwrap_or(0);
    let step = last(c).max(c.simplices().iter().map(|s| s.entry).max().unwrap_or(0));
    (0..top)
        .map(|k| {
            let (dk, nk) = boundary(c, k, step, p);
            let (dk1, _) = boundary(c, k + 1, step, p);
            nk - rank(&dk, p) - rank(&dk1, p)
        })
        .collect()
}

/// Rank of `H_k(K_a) -> H_k(K_b)`, computed as
/// `dim(Z_k(K_a) + B_k(K_b)) - dim B_k(K_b)`.
pub fn homology_rank(c: &FilteredComplex, k: usize, a: usize, b: usize) -> usize {
    let p = u64::from(c.field().modulus());
    let all = vertex_sets(c, k, b);
    let (da, na) = boundary(c, k, a, p);
    let za = if k == 0 {
        (0..na)
            .map(|i| {
                let mut v = vec![0; na];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        kernel(&da, na, p)
    };
    let sub = vertex_sets(c, k, a);
    let pos: BTreeMap<&Vec<u32>, usize> = all.iter().enumerate().map(|(i, v)| (v, i)).collect();
    // embed Z_a into C_k(K_b) and stack with B_b (as rows of a transposed matrix)
    let mut gens: Rows = za
        .iter()
        .map(|z| {
            let mut v = vec![0u64; all.len()];
            for (i, s) in sub.iter().enumerate() {
                v[pos[s]] = z[i];
            }
            v
        })
        .collect();
    let (db1, n1) = boundary(c, k + 1, b, p);
    let bb: Rows = (0..n1)
        .map(|j| db1.iter().map(|row| row[j]).collect())
        .collect();
    let rb = rank(&bb, p);
    gens.extend(bb);
    rank(&gens, p) - rb
}

/// Bars from a rank function `r(a, b)` on `0 <= a <= b < m` by
/// inclusion-exclusion; bars reaching `m - 1` are reported as infinite.
pub fn bars_from_ranks(degree: usize, m: usize, r: impl Fn(usize, usize) -> usize) -> Barcode {
    let rr = |a: isize, b: usize| -> isize {
        if a < 0 || b >= m || a as usize > b {
            0
        } else {
            r(a as usize, b) as isize
        }
    };
    let mut bars = Vec::new();
    for a in 0..m {
        for b in a..m {
            let ai = a as isize;
            let mult = rr(ai, b) - rr(ai - 1, b) - rr(ai, b + 1) + rr(ai - 1, b + 1);
            assert!(mult >= 0, "negative multiplicity at [{a}, {b}]");
            for _ in 0..mult {
                bars.push(if b + 1 == m { Bar::infinite(a) } else { Bar::finite(a, b) });
            }
        }
    }
    Barcode::new(degree, bars)
}

/// Persistent homology `H_k` of the filtration.
pub fn persistent_homology(c: &FilteredComplex, k: usize) -> Barcode {
    bars_from_ranks(k, c.steps(), |a, b| homology_rank(c, k, a, b))
}

/// Type-T barcode of the constant sheaf `F`: restriction in cohomology is
/// dual to inclusion in homology, so the ranks agree.
pub fn constant_type_t(c: &FilteredComplex, k: usize) -> Barcode {
    persistent_homology(c, k)
}

/// Connected components of the step-`step` subcomplex whose vertices all
/// carry the same label, each as its vertex set.
pub fn monochrome_components(c: &FilteredComplex, labels: &BTreeMap<u32, String>, step: usize) -> Vec<BTreeSet<u32>> {
    let verts: Vec<u32> = vertex_sets(c, 0, step).into_iter().map(|v| v[0]).collect();
    let idx: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for e in vertex_sets(c, 1, step) {
        uf.union(idx[&e[0]], idx[&e[1]]);
    }
    let mut comps: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        comps.entry(uf.find(i)).or_default().insert(v);
    }
    comps
        .into_values()
        .filter(|vs| vs.iter().map(|v| &labels[v]).collect::<BTreeSet<_>>().len() == 1)
        .collect()
}

/// Lifetimes of monochrome components: the rank from step `b` back to step
/// `a` counts components of `K_b` that are monochrome and meet `K_a`.
pub fn monochrome_component_bars(c: &FilteredComplex, labels: &BTreeMap<u32, String>) -> Barcode {
    bars_from_ranks(0, c.steps(), |a, b| {
        let present: BTreeSet<u32> = vertex_sets(c, 0, a).into_iter().map(|v| v[0]).collect();
        monochrome_components(c, labels, b)
            .iter()
            .filter(|comp| comp.iter().any(|v| present.contains(v)))
            .count()
    })
}

/// `dim H^0` as the kernel of a coboundary assembled here from the stalks
/// and restrictions.
pub fn global_sections(f: &CellularSheaf) -> usize {
    let c = f.complex();
    let p = u64::from(c.field().modulus());
    let verts: Vec<usize> = (0..c.len()).filter(|&i| c.simplex(i).vertices.len() == 1).collect();
    let edges: Vec<usize> = (0..c.len()).filter(|&i| c.simplex(i).vertices.len() == 2).collect();
    let mut off = BTreeMap::new();
    let mut n = 0;
    for &v in &verts {
        off.insert(v, n);
        n += f.stalk(v);
    }
    let mut rows: Rows = Vec::new();
    for &e in &edges {
        let ev = &c.simplex(e).vertices;
        for r in 0..f.stalk(e) {
            let mut row = vec![0u64; n];
            for &v in &verts {
                let vv = c.simplex(v).vertices[0];
                let sign = if vv == ev[1] { 1 } else if vv == ev[0] { p - 1 } else { continue };
                let m = f.restriction(v, e);
                for col in 0..f.stalk(v) {
                    row[off[&v] + col] = (row[off[&v] + col] + sign * u64::from(m.get(r, col))) % p;
                }
            }
            rows.push(row);
        }
    }
    n - rank(&rows, p)
}

/// Direct sum of interval modules on `0..m`, with identity maps inside each
/// bar. Infinite bars run to `m - 1`.
pub fn interval_module(field: Field, m: usize, bars: &[Bar]) -> PersistenceModule {
    let alive = |i: usize| -> Vec<usize> { (0..bars.len()).filter(|&b| bars[b].contains(i)).collect() };
    let dims = (0..m).map(|i| alive(i).len()).collect();
    let maps = (0..m.saturating_sub(1))
        .map(|i| {
            let (src, tgt) = (alive(i), alive(i + 1));
            let mut mat = Matrix::zeros(field, tgt.len(), src.len());
            for (c, b) in src.iter().enumerate() {
                if let Some(r) = tgt.iter().position(|x| x == b) {
                    mat.set(r, c, 1);
                }
            }
            mat
        })
        .collect();
    PersistenceModule::new(field, dims, maps).expect("interval maps have matching shapes")
}
