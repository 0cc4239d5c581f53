use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use persheaf::cohomology::{cochain_complex, cohomology_dims, simplicial_chain_complex, CohomologyBasis};
use persheaf::io::{
    complex_to_json, diagram_to_json, parse_complex_str, parse_diagram_str, parse_sheaf_str,
    sheaf_to_json, BarcodeReport,
};
use persheaf::labeled::{label_diagram, label_diagram_with, LabeledFiltration};
use persheaf::persistence::{decompose_by_ranks, reflect};
use persheaf::type_a::{graded_barcode, pointwise_barcode};
use persheaf::type_t::{type_t_direct, type_t_graded, TypeTInput};
use persheaf::{Bar, Barcode, CellularSheaf, Field, FilteredComplex, Matrix};
use persheaf_testkit::{gen, oracle};

fn field(rng: &mut impl Rng) -> Field {
    Field::new([2, 3, 5][rng.gen_range(0..3)]).unwrap()
}

fn complex(seed: u64) -> (ChaCha8Rng, Arc<FilteredComplex>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(&mut rng);
    let steps = rng.gen_range(1..=5);
    let c = gen::random_complex(&mut rng, f, 14, steps);
    (rng, Arc::new(c))
}

fn bar_strategy(m: usize) -> impl Strategy<Value = Bar> {
    (0..m, 0..=m).prop_map(move |(a, len)| {
        // a bar reaching the last index is reported as infinite
        if a + len + 1 >= m {
            Bar::infinite(a)
        } else {
            Bar::finite(a, a + len)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn interval_modules_decompose_to_their_bars(bars in prop::collection::vec(bar_strategy(5), 0..6)) {
        let module = oracle::interval_module(Field::f2(), 5, &bars);
        prop_assert_eq!(decompose_by_ranks(&module, 0), Barcode::new(0, bars));
    }

    #[test]
    fn reflection_is_an_involution_on_closed_bars(bars in prop::collection::vec(bar_strategy(6), 0..6)) {
        let bc = Barcode::new(0, bars);
        let twice = reflect(&reflect(&bc, 6).unwrap(), 6).unwrap();
        prop_assert_eq!(twice.closed(6), bc.closed(6));
    }

    #[test]
    fn constant_sheaf_matches_simplicial_betti(seed in any::<u64>()) {
        let (_, c) = complex(seed);
        let dims = cohomology_dims(&CellularSheaf::constant(c.clone(), 1));
        prop_assert_eq!(dims, oracle::simplicial_betti(&c));
    }

    #[test]
    fn random_sheaves_validate_and_square_to_zero(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        let f = gen::random_sheaf(&mut rng, c, 3);
        prop_assert!(f.validate().is_empty());
        let cc = cochain_complex(&f);
        for k in 0..cc.len().saturating_sub(1) {
            prop_assert!(cc.coboundary(k + 1).mul(&cc.coboundary(k)).is_zero());
        }
        prop_assert_eq!(cc.betti(0), oracle::global_sections(&f));
    }

    #[test]
    fn graded_engine_matches_pointwise(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        let len = rng.gen_range(1..=5);
        let d = gen::random_monomorphic_diagram(&mut rng, c, 3, len);
        for k in 0..3 {
            prop_assert_eq!(graded_barcode(&d, k).unwrap(), pointwise_barcode(&d, k).unwrap());
        }
    }

    #[test]
    fn type_t_engines_agree(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        let input = TypeTInput::new(Arc::new(gen::random_sheaf(&mut rng, c, 3)));
        for k in 0..3 {
            prop_assert_eq!(type_t_graded(&input, k), type_t_direct(&input, k).unwrap().1);
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        prop_assert_eq!(&parse_complex_str(&complex_to_json(&c), None).unwrap(), &*c);
        let f = gen::random_sheaf(&mut rng, c.clone(), 3);
        prop_assert_eq!(parse_sheaf_str(&sheaf_to_json(&f), Some(c.clone()), None).unwrap(), f);
        let d = gen::random_monomorphic_diagram(&mut rng, c.clone(), 2, 3);
        let back = parse_diagram_str(&diagram_to_json(&d), Some(c), None).unwrap();
        prop_assert_eq!(back.sheaves(), d.sheaves());
        prop_assert_eq!(back.morphisms(), d.morphisms());
        let bc = pointwise_barcode(&d, 0).unwrap();
        let report = BarcodeReport::new(&bc, "pointwise", d.complex().field(), d.len());
        let json = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<BarcodeReport>(&json).unwrap().barcode(), bc);
    }

    #[test]
    fn unicolored_bars_are_monochrome_components(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        let labels = gen::random_labels(&mut rng, &c, &["b", "r"]);
        let lf = LabeledFiltration::new(c.clone(), &labels).unwrap();
        let (_, bc) = persheaf::labeled::unicolored_pipeline(&lf, 0).unwrap();
        prop_assert_eq!(bc, oracle::monochrome_component_bars(&c, &labels));
    }

    #[test]
    fn label_diagram_does_not_depend_on_homology_bases(seed in any::<u64>()) {
        let (mut rng, c) = complex(seed);
        let labels = gen::random_labels(&mut rng, &c, &["a", "b", "c"]);
        let lf = LabeledFiltration::new(c, &labels).unwrap();
        for n in 0..2 {
            let plain = label_diagram(&lf, n).unwrap();
            let mut choose = |k: &Arc<FilteredComplex>, n: usize| shuffled_basis(&mut rng, k, n);
            let other = label_diagram_with(&lf, n, &mut choose).unwrap();
            for k in 0..2 {
                prop_assert_eq!(pointwise_barcode(&plain, k).unwrap(), pointwise_barcode(&other, k).unwrap());
            }
        }
    }
}

fn random_invertible(rng: &mut impl Rng, f: Field, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.gen_range(0..f.modulus()));
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

// Default representatives mixed by an invertible matrix and shifted by
// random boundaries.
fn shuffled_basis(rng: &mut impl Rng, k: &Arc<FilteredComplex>, n: usize) -> CohomologyBasis {
    let cc = simplicial_chain_complex(k);
    let base = cc.homology_basis(n);
    let f = k.field();
    let d = base.dim();
    let incoming = cc.boundary(n + 1);
    let mut shift = Matrix::zeros(f, incoming.cols(), d);
    for r in 0..shift.rows() {
        for c in 0..d {
            shift.set(r, c, rng.gen_range(0..f.modulus()));
        }
    }
    let reps = base
        .representatives()
        .mul(&random_invertible(rng, f, d))
        .add(&incoming.mul(&shift));
    CohomologyBasis::with_representatives(n, reps, &incoming)
}
