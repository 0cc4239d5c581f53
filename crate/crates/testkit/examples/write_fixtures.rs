//! Regenerates the JSON files under `fixtures/` from the builders in
//! `persheaf_testkit::fixtures`. Usage: `cargo run -p persheaf-testkit
//! --example write_fixtures [DIR]`.

use std::path::PathBuf;
use std::sync::Arc;

use persheaf::io::{complex_to_json, labeled_to_json, ComplexFile, DiagramFile, SheafFile};
use persheaf::{CellularSheaf, Field, Matrix, SheafDiagram, SheafMorphism};
use persheaf_testkit::fixtures::*;

fn with_complex(mut f: SheafFile, s: &CellularSheaf) -> String {
    f.complex = Some(ComplexFile::from_complex(s.complex()));
    serde_json::to_string_pretty(&f).unwrap()
}

fn diagram(d: &SheafDiagram, embed: bool) -> String {
    let mut f = DiagramFile::from_diagram(d);
    if embed {
        f.complex = Some(ComplexFile::from_complex(d.complex()));
    }
    serde_json::to_string_pretty(&f).unwrap()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let f2 = Field::f2();
    let write = |name: &str, body: String| std::fs::write(dir.join(name), body + "\n").unwrap();

    write("triangle.json", complex_to_json(&triangle(f2)));
    write("constant1.json", r#"{ "constant": 1 }"#.to_string());
    write("square_filtration.json", complex_to_json(&square_filtration(f2)));

    let f = sheaf_f(f2);
    let g = sheaf_g(f2);
    write("edge_sheaf_f.json", with_complex(SheafFile::from_sheaf(&f), &f));
    write("edge_sheaf_g.json", with_complex(SheafFile::from_sheaf(&g), &g));
    let d = SheafDiagram::from_ids(vec![f, g], vec![morphism_f_to_g()]).unwrap();
    write("edge_morphism.json", diagram(&d, true));

    let t = two_simplex_sheaf(f2);
    write("two_simplex_sheaf.json", with_complex(SheafFile::from_sheaf(&t), &t));
    let mut broken = SheafFile::from_sheaf(&t);
    for r in broken.restrictions.iter_mut() {
        if r.face == "1_2" && r.coface == "0_1_2" {
            r.matrix = vec![vec![1, 1]];
        }
    }
    write("broken_diamond.json", with_complex(broken, &t));

    write("staircase_diagram.json", diagram(&staircase_diagram(f2), true));

    let sq = square_filtration(f2);
    let one = Arc::new(CellularSheaf::constant(sq.clone(), 1));
    let two = Arc::new(CellularSheaf::constant(sq.clone(), 2));
    let comps = (0..sq.len())
        .map(|_| Matrix::from_rows(f2, 1, &[vec![1], vec![0]]).unwrap())
        .collect();
    let phi = SheafMorphism::new(one.clone(), two.clone(), comps).unwrap();
    let d = SheafDiagram::new(vec![one, two], vec![phi]).unwrap();
    write("square_diagram.json", diagram(&d, false));

    let (c, l) = seven_step_labeled(f2);
    write("seven_step_labeled.json", labeled_to_json(&c, &l));
    let (c, l) = two_color_merge(f2);
    write("two_color_merge.json", labeled_to_json(&c, &l));
}
