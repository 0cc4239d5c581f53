use std::sync::Arc;

use persheaf::cohomology::{cohomology_dims, induced_by_sheaf_morphism};
use persheaf::graded::diagram_to_graded_sheaf;
use persheaf::labeled::{
    label_diagram, label_sheaf, mixed_feature_barcodes, unicolored_pipeline, LabeledFiltration,
};
use persheaf::persistence::reflect;
use persheaf::type_a::{graded_barcode, persistence_module, pointwise_barcode};
use persheaf::type_t::{g_chain, graded_cosheaf, type_t_direct, type_t_graded, TypeTInput};
use persheaf::{Bar, Barcode, CellularSheaf, Field, SheafMorphism};
use persheaf_testkit::fixtures::*;
use persheaf_testkit::oracle;

fn bars(b: &Barcode) -> Vec<(usize, Option<usize>)> {
    b.bars().iter().map(|x| (x.birth, x.death)).collect()
}

#[test]
fn triangle_constant_sheaf() {
    for p in [2, 3, 7] {
        let f = CellularSheaf::constant(triangle(Field::new(p).unwrap()), 1);
        assert_eq!(cohomology_dims(&f), vec![1, 1]);
    }
}

#[test]
fn edge_sheaves_and_morphism() {
    let f2 = Field::f2();
    let (f, g) = (Arc::new(sheaf_f(f2)), Arc::new(sheaf_g(f2)));
    assert!(f.validate().is_empty());
    assert!(g.validate().is_empty());
    assert_eq!(cohomology_dims(&f), vec![1, 1]);
    assert_eq!(cohomology_dims(&g), vec![2, 0]);
    let phi = SheafMorphism::from_ids(f, g, morphism_f_to_g()).unwrap();
    let h0 = induced_by_sheaf_morphism(&phi, 0).unwrap();
    assert_eq!(h0.shape(), (2, 1));
    assert_eq!(h0.rank(), 1);
}

#[test]
fn two_simplex_sheaf_is_valid_for_several_primes() {
    for p in [2, 3, 5, 7] {
        assert!(two_simplex_sheaf(Field::new(p).unwrap()).validate().is_empty());
    }
}

#[test]
fn staircase_graded_generators() {
    let d = staircase_diagram(Field::f2());
    let g = diagram_to_graded_sheaf(&d).unwrap();
    let c = d.complex().clone();
    let (s1, s2, t) = (
        c.index_of_id("sigma1").unwrap(),
        c.index_of_id("sigma2").unwrap(),
        c.index_of_id("tau").unwrap(),
    );
    assert_eq!(g.degrees(s1), &[0, 1]);
    assert_eq!(g.degrees(t), &[0, 0, 3]);
    assert_eq!(g.degrees(s2), &[0, 2, 4]);
    let a = g.map(s1, t);
    assert_eq!(a.scalar().to_rows(), vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
    assert_eq!(a.power(0, 0), Some(0));
    assert_eq!(a.power(1, 1), Some(1));
    let b = g.map(s2, t);
    assert_eq!(b.scalar().to_rows(), vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 0, 0]]);
    assert_eq!(b.power(0, 2), Some(4));
    assert_eq!(b.power(1, 0), Some(0));
}

#[test]
fn staircase_barcode_both_engines() {
    let d = staircase_diagram(Field::f2());
    let expected = vec![(1, None), (2, None), (4, None)];
    assert_eq!(bars(&graded_barcode(&d, 0).unwrap()), expected);
    assert_eq!(bars(&pointwise_barcode(&d, 0).unwrap()), expected);
    assert_eq!(persistence_module(&d, 0).unwrap().dims(), &[0, 1, 2, 2, 3]);
    // the third tau coordinate is never hit by a restriction
    assert_eq!(bars(&graded_barcode(&d, 1).unwrap()), vec![(3, None)]);
    assert_eq!(pointwise_barcode(&d, 1).unwrap(), graded_barcode(&d, 1).unwrap());
}

#[test]
fn square_filtration_type_t() {
    let c = square_filtration(Field::f2());
    let input = TypeTInput::new(Arc::new(CellularSheaf::constant(c.clone(), 1)));
    let gc = graded_cosheaf(&input);
    let id = |v: &[u32]| c.index_of_vertices(v).unwrap();
    for (e, deg) in [(&[0, 1][..], 1), (&[2, 3], 2), (&[1, 2], 3), (&[0, 3], 3)] {
        assert_eq!(gc.degrees(id(e)), &[deg]);
        for &v in e {
            assert_eq!(gc.degrees(id(&[v])), &[0]);
            assert_eq!(gc.extension(id(e), id(&[v])).power(0, 0), Some(deg));
        }
    }
    let (module, k0) = type_t_direct(&input, 0).unwrap();
    assert_eq!(module.dims(), &[4, 3, 2, 1]);
    assert_eq!(bars(&k0), vec![(0, Some(0)), (0, Some(1)), (0, Some(2)), (0, None)]);
    let (_, k1) = type_t_direct(&input, 1).unwrap();
    assert_eq!(bars(&k1), vec![(3, None)]);
    for k in 0..3 {
        let direct = type_t_direct(&input, k).unwrap().1;
        assert_eq!(type_t_graded(&input, k), direct);
        assert_eq!(oracle::constant_type_t(&c, k), direct);
    }
}

#[test]
fn square_filtration_g_chain_reflects() {
    let c = square_filtration(Field::f2());
    let input = TypeTInput::new(Arc::new(CellularSheaf::constant(c, 1)));
    let mirrored = g_chain(&input).unwrap().mirrored().unwrap();
    for k in 0..2 {
        let a = pointwise_barcode(&mirrored, k).unwrap();
        let t = type_t_direct(&input, k).unwrap().1;
        assert_eq!(a.closed(4), reflect(&t, 4).unwrap().closed(4), "k = {k}");
    }
}

fn labeled_filtration(l: Labeled) -> LabeledFiltration {
    LabeledFiltration::new(l.0, &l.1).unwrap()
}

#[test]
fn seven_step_components() {
    let lf = labeled_filtration(seven_step_labeled(Field::f2()));
    let d = label_diagram(&lf, 0).unwrap();
    assert_eq!(persistence_module(&d, 0).unwrap().dims(), &[0, 0, 0, 1, 1, 1, 1]);
    let bc = mixed_feature_barcodes(&lf, 0, 0).unwrap();
    assert_eq!(bars(&bc), vec![(3, None)]);
    assert_eq!(bars(&bc.closed(7)), vec![(3, Some(6))]);
    let l = lf.label_complex().clone();
    let edge = l.index_of_id("b_r").unwrap();
    let edge_dims: Vec<usize> = d.sheaves().iter().map(|s| s.stalk(edge)).collect();
    assert_eq!(edge_dims, vec![8, 6, 2, 1, 1, 1, 1]);
}

#[test]
fn seven_step_cycles() {
    let lf = labeled_filtration(seven_step_labeled(Field::f2()));
    let d = label_diagram(&lf, 1).unwrap();
    assert_eq!(persistence_module(&d, 1).unwrap().dims(), &[0, 0, 0, 1, 1, 2, 0]);
    assert!(persistence_module(&d, 0).unwrap().dims().iter().all(|&x| x == 0));
    let bc = mixed_feature_barcodes(&lf, 1, 1).unwrap();
    assert_eq!(bars(&bc), vec![(3, Some(5)), (5, Some(5))]);
    let l = lf.label_complex().clone();
    let stalks = |id: &str| -> Vec<usize> {
        let i = l.index_of_id(id).unwrap();
        d.sheaves().iter().map(|s| s.stalk(i)).collect()
    };
    assert_eq!(stalks("b"), vec![0, 0, 0, 1, 0, 0, 0]);
    assert_eq!(stalks("r"), vec![0, 0, 0, 1, 0, 1, 0]);
    assert_eq!(stalks("b_r"), vec![0, 0, 0, 3, 1, 3, 0]);
}

#[test]
fn four_single_step_cases() {
    let expected = [(0, 1), (0, 0), (1, 0), (1, 1)];
    let betti1 = [1, 2, 1, 1];
    for (i, l) in four_label_cases(Field::f2()).into_iter().enumerate() {
        let lf = labeled_filtration(l);
        let ls = label_sheaf(lf.map(), 1).unwrap();
        let dims = cohomology_dims(&ls.sheaf);
        assert_eq!((dims[0], dims[1]), expected[i], "case {}", i + 1);
        let edge = lf.label_complex().index_of_id("b_r").unwrap();
        assert_eq!(ls.sheaf.stalk(edge), betti1[i], "case {}", i + 1);
    }
}

#[test]
fn single_label_is_ordinary_persistent_homology() {
    let (c, labels) = seven_step_labeled(Field::f2());
    let mono = labels.keys().map(|&v| (v, "x".to_string())).collect();
    let lf = LabeledFiltration::new(c.clone(), &mono).unwrap();
    for n in 0..3 {
        let bc = mixed_feature_barcodes(&lf, n, 0).unwrap();
        assert_eq!(bc.bars(), oracle::persistent_homology(&c, n).bars(), "n = {n}");
    }
}

#[test]
fn unicolored_two_color_merge() {
    let (c, labels) = two_color_merge(Field::f2());
    let lf = LabeledFiltration::new(c.clone(), &labels).unwrap();
    let (module, bc) = unicolored_pipeline(&lf, 0).unwrap();
    assert_eq!(module.dims(), &[4, 2, 0]);
    assert_eq!(
        bc.bars(),
        &[Bar::finite(0, 0), Bar::finite(0, 0), Bar::finite(0, 1), Bar::finite(0, 1)]
    );
    assert_eq!(bc, oracle::monochrome_component_bars(&c, &labels));
}

#[test]
fn unicolored_single_color_is_component_persistence() {
    let c = square_filtration(Field::f2());
    let labels = c.vertex_labels().into_iter().map(|v| (v, "b".to_string())).collect();
    let lf = LabeledFiltration::new(c.clone(), &labels).unwrap();
    let (_, bc) = unicolored_pipeline(&lf, 0).unwrap();
    assert_eq!(bc, oracle::persistent_homology(&c, 0));
}

#[test]
fn unicolored_mixed_edge_has_no_sections() {
    let c = Arc::new(persheaf::FilteredComplex::from_closure(Field::f2(), &[(vec![0, 1], 0)]).unwrap());
    let labels = [(0, "b".to_string()), (1, "r".to_string())].into_iter().collect();
    let lf = LabeledFiltration::new(c, &labels).unwrap();
    let (module, bc) = unicolored_pipeline(&lf, 0).unwrap();
    assert_eq!(module.dims(), &[0]);
    assert!(bc.is_empty());
}

#[test]
fn unicolored_rejects_three_labels() {
    let c = Arc::new(persheaf::FilteredComplex::from_closure(Field::f2(), &[(vec![0, 1, 2], 0)]).unwrap());
    let labels = [(0, "a"), (1, "b"), (2, "c")]
        .into_iter()
        .map(|(v, l)| (v, l.to_string()))
        .collect();
    let lf = LabeledFiltration::new(c, &labels).unwrap();
    assert!(matches!(
        unicolored_pipeline(&lf, 0),
        Err(persheaf::Error::TooManyLabels(3))
    ));
}
