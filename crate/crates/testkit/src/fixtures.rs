//! Small worked examples shared by the test suites and the fixture files.

use std::collections::BTreeMap;
use std::sync::Arc;

use persheaf::{CellularSheaf, Field, FilteredComplex, SheafDiagram, Simplex};

pub type Rows = Vec<Vec<i64>>;

fn m(rows: &[&[i64]]) -> Rows {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn eye(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Hollow triangle on vertices 0, 1, 2.
pub fn triangle(field: Field) -> Arc<FilteredComplex> {
    Arc::new(
        FilteredComplex::from_closure(field, &[(vec![0, 1], 0), (vec![0, 2], 0), (vec![1, 2], 0)])
            .unwrap(),
    )
}

/// Edge `e` between vertices `x` (0) and `y` (1).
pub fn named_edge(field: Field) -> Arc<FilteredComplex> {
    Arc::new(
        FilteredComplex::new(
            field,
            1,
            vec![
                Simplex::with_id("x", vec![0], 0),
                Simplex::with_id("y", vec![1], 0),
                Simplex::with_id("e", vec![0, 1], 0),
            ],
        )
        .unwrap(),
    )
}

/// Sheaf with stalks `F^2`, `F^3`, `F` on `x`, `e`, `y`.
pub fn sheaf_f(field: Field) -> CellularSheaf {
    CellularSheaf::from_ids(
        named_edge(field),
        [("x", 2), ("e", 3), ("y", 1)],
        [
            ("x", "e", m(&[&[1, 0], &[1, 0], &[0, 1]])),
            ("y", "e", m(&[&[0], &[0], &[1]])),
        ],
    )
    .unwrap()
}

/// Sheaf with stalks `F^3`, `F^3`, `F^2` on `x`, `e`, `y`.
pub fn sheaf_g(field: Field) -> CellularSheaf {
    CellularSheaf::from_ids(
        named_edge(field),
        [("x", 3), ("e", 3), ("y", 2)],
        [
            ("x", "e", m(&[&[1, 0, 0], &[1, 0, 1], &[0, 1, 0]])),
            ("y", "e", m(&[&[0, 0], &[0, 1], &[1, 0]])),
        ],
    )
    .unwrap()
}

/// Morphism components `F -> G`.
pub fn morphism_f_to_g() -> Vec<(&'static str, Rows)> {
    vec![
        ("x", m(&[&[1, 0], &[0, 1], &[0, 0]])),
        ("e", eye(3)),
        ("y", m(&[&[1], &[0]])),
    ]
}

/// Full 2-simplex with stalks `F^2` except `F` on the triangle.
pub fn two_simplex_sheaf(field: Field) -> CellularSheaf {
    let c = Arc::new(FilteredComplex::from_closure(field, &[(vec![0, 1, 2], 0)]).unwrap());
    let sw = m(&[&[0, 1], &[1, 0]]);
    CellularSheaf::from_ids(
        c,
        [("0", 2), ("1", 2), ("2", 2), ("0_1", 2), ("0_2", 2), ("1_2", 2), ("0_1_2", 1)],
        [
            ("0", "0_1", eye(2)),
            ("0", "0_2", eye(2)),
            ("1", "0_1", sw.clone()),
            ("1", "1_2", eye(2)),
            ("2", "0_2", sw),
            ("2", "1_2", eye(2)),
            ("0_1", "0_1_2", m(&[&[1, 0]])),
            ("0_2", "0_1_2", m(&[&[1, 0]])),
            ("1_2", "0_1_2", m(&[&[0, 1]])),
        ],
    )
    .unwrap()
}

/// Edge `tau` between `sigma1` (vertex 0) and `sigma2` (vertex 1).
pub fn sigma_edge(field: Field) -> Arc<FilteredComplex> {
    Arc::new(
        FilteredComplex::new(
            field,
            1,
            vec![
                Simplex::with_id("sigma1", vec![0], 0),
                Simplex::with_id("sigma2", vec![1], 0),
                Simplex::with_id("tau", vec![0, 1], 0),
            ],
        )
        .unwrap(),
    )
}

/// Five sheaves on an edge with injective stalk maps; H^0 grows
/// 0, 1, 2, 2, 3.
pub fn staircase_diagram(field: Field) -> SheafDiagram {
    let c = sigma_edge(field);
    let pad = m(&[&[1, 0], &[0, 1], &[0, 0]]);
    // (sigma1, tau, sigma2) stalk dims and restrictions per step
    let snaps: Vec<([usize; 3], Rows, Rows)> = vec![
        ([1, 2, 1], m(&[&[1], &[0]]), m(&[&[0], &[1]])),
        ([2, 2, 1], eye(2), m(&[&[0], &[1]])),
        ([2, 2, 2], eye(2), m(&[&[0, 0], &[1, 0]])),
        ([2, 3, 2], pad.clone(), m(&[&[0, 0], &[1, 0], &[0, 0]])),
        ([2, 3, 3], pad.clone(), m(&[&[0, 0, 1], &[1, 0, 0], &[0, 0, 0]])),
    ];
    let sheaves = snaps
        .into_iter()
        .map(|(d, r1, r2)| {
            CellularSheaf::from_ids(
                c.clone(),
                [("sigma1", d[0]), ("tau", d[1]), ("sigma2", d[2])],
                [("sigma1", "tau", r1), ("sigma2", "tau", r2)],
            )
            .unwrap()
        })
        .collect();
    let steps = vec![
        vec![("sigma1", m(&[&[1], &[0]])), ("tau", eye(2)), ("sigma2", m(&[&[1]]))],
        vec![("sigma1", eye(2)), ("tau", eye(2)), ("sigma2", m(&[&[1], &[0]]))],
        vec![("sigma1", eye(2)), ("tau", pad.clone()), ("sigma2", eye(2))],
        vec![("sigma1", eye(2)), ("tau", eye(3)), ("sigma2", pad)],
    ];
    SheafDiagram::from_ids(sheaves, steps).unwrap()
}

/// Four vertices at 0; edges 01 at 1, 23 at 2, 12 and 03 at 3.
pub fn square_filtration(field: Field) -> Arc<FilteredComplex> {
    Arc::new(
        FilteredComplex::from_closure(
            field,
            &[
                (vec![0], 0),
                (vec![1], 0),
                (vec![2], 0),
                (vec![3], 0),
                (vec![0, 1], 1),
                (vec![2, 3], 2),
                (vec![1, 2], 3),
                (vec![0, 3], 3),
            ],
        )
        .unwrap(),
    )
}

/// Complex plus vertex labels.
pub type Labeled = (Arc<FilteredComplex>, BTreeMap<u32, String>);

fn labeled(field: Field, simplices: &[(Vec<u32>, usize)], labels: &[(u32, &str)]) -> Labeled {
    let c = FilteredComplex::from_closure(field, simplices).unwrap();
    (
        Arc::new(c),
        labels.iter().map(|&(v, l)| (v, l.to_string())).collect(),
    )
}

/// Two blue and two red points; blue and red pairs join at 1, a mixed
/// edge appears at 2.
pub fn two_color_merge(field: Field) -> Labeled {
    labeled(
        field,
        &[
            (vec![0], 0),
            (vec![1], 0),
            (vec![2], 0),
            (vec![3], 0),
            (vec![0, 1], 1),
            (vec![2, 3], 1),
            (vec![1, 2], 2),
        ],
        &[(0, "b"), (1, "b"), (2, "r"), (3, "r")],
    )
}

/// Seven-step labeled filtration on four blue (0-3) and four red (4-7)
/// points with blue, red and mixed cycles.
pub fn seven_step_labeled(field: Field) -> Labeled {
    let v = |s: &[u32], e: usize| (s.to_vec(), e);
    let mut simplices: Vec<(Vec<u32>, usize)> = (0..8).map(|i| (vec![i], 0)).collect();
    simplices.extend([
        v(&[0, 1], 1),
        v(&[4, 5], 1),
        v(&[1, 2], 2),
        v(&[2, 3], 2),
        v(&[5, 6], 2),
        v(&[6, 7], 2),
        v(&[0, 3], 3),
        v(&[4, 6], 3),
        v(&[3, 4], 3),
        v(&[0, 7], 3),
        v(&[0, 1, 2], 4),
        v(&[0, 2, 3], 4),
        v(&[4, 5, 6], 4),
        v(&[4, 7], 5),
        v(&[1, 5], 5),
        v(&[0, 3, 4], 6),
        v(&[0, 4, 7], 6),
        v(&[0, 1, 4], 6),
        v(&[1, 4, 5], 6),
        v(&[4, 6, 7], 6),
    ]);
    let labels: Vec<(u32, &str)> = (0..8).map(|i| (i, if i < 4 { "b" } else { "r" })).collect();
    labeled(field, &simplices, &labels)
}

/// Four single-step labeled complexes:
/// 1. a mixed square with no monochrome cycles;
/// 2. a blue and a red hollow triangle joined by an edge;
/// 3. the same two triangles bounding a mixed annulus;
/// 4. a blue hollow triangle coned off by a red vertex, plus a mixed cycle.
pub fn four_label_cases(field: Field) -> Vec<Labeled> {
    let at0 = |s: &[&[u32]]| s.iter().map(|x| (x.to_vec(), 0)).collect::<Vec<_>>();
    vec![
        labeled(
            field,
            &at0(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]),
            &[(0, "b"), (1, "b"), (2, "r"), (3, "r")],
        ),
        labeled(
            field,
            &at0(&[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5], &[2, 3]]),
            &[(0, "b"), (1, "b"), (2, "b"), (3, "r"), (4, "r"), (5, "r")],
        ),
        labeled(
            field,
            &at0(&[
                &[0, 1, 3],
                &[1, 3, 4],
                &[1, 2, 4],
                &[2, 4, 5],
                &[0, 2, 5],
                &[0, 3, 5],
            ]),
            &[(0, "b"), (1, "b"), (2, "b"), (3, "r"), (4, "r"), (5, "r")],
        ),
        labeled(
            field,
            &at0(&[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3], &[3, 4], &[1, 4]]),
            &[(0, "b"), (1, "b"), (2, "b"), (3, "r"), (4, "r")],
        ),
    ]
}
