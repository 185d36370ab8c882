mod common;

use biphoton::interference::DEFAULT_WITNESS_MARGIN;
use biphoton::{
    beamsplitter_output, bell_state, coincidence_probability, entanglement_witness, make_grid, oam_ring, product_state,
    symmetry_decompose, BellKind, Biphoton, BsPhases, Error, Representation, Verdict,
};
use num_complex::Complex64;

#[test]
fn bell_and_product_coincidences() {
    let grid = make_grid(32, 8.0).unwrap();
    let pc = |kind| coincidence_probability(&bell_state(kind, 1, 1.0, grid).unwrap()).unwrap();
    assert!((pc(BellKind::PsiMinus) - 1.0).abs() < 1e-6);
    assert!(pc(BellKind::PhiPlus).abs() < 1e-6);
    let ring = oam_ring(1, 1.0, grid).unwrap();
    let same = coincidence_probability(&product_state(&ring, &ring).unwrap()).unwrap();
    assert!((same - 0.5).abs() < 1e-6);
}

#[test]
fn coincidence_equals_antisymmetric_weight() {
    let mut rng = common::rng(21);
    let grid = make_grid(12, 2.0).unwrap();
    for rank in 1..6 {
        let amp = common::random_amplitude(&mut rng, grid, Representation::Momentum, rank);
        let pc = coincidence_probability(&amp).unwrap();
        let (_, anti) = symmetry_decompose(&amp).unwrap();
        assert!((pc - anti).abs() <= 1e-12);
        assert!((-1e-9..=1.0 + 1e-9).contains(&pc));
    }
}

#[test]
fn output_matches_direct_evaluation_of_the_port_amplitudes() {
    let mut rng = common::rng(5);
    let grid = make_grid(8, 1.5).unwrap();
    for (rank, (t, r)) in [(1, (0.0, 0.0)), (2, (0.4, -1.2)), (3, (2.0, 0.3)), (4, (-0.7, 2.9))] {
        let amp = common::random_amplitude(&mut rng, grid, Representation::Momentum, rank);
        let out = beamsplitter_output(&amp, BsPhases::new(t, r)).unwrap();
        let oracle = common::dense_port_probabilities(&amp.to_dense().unwrap(), t, r);
        assert!(
            (out.p_both_port1 - oracle[0]).abs() < 1e-12,
            "{} vs {}",
            out.p_both_port1,
            oracle[0]
        );
        assert!((out.p_both_port2 - oracle[1]).abs() < 1e-12);
        assert!((out.p_coincidence - oracle[2]).abs() < 1e-12);
        assert!((out.total() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn antisymmetric_bell_state_passes_the_splitter() {
    let grid = make_grid(16, 6.0).unwrap();
    let amp = bell_state(BellKind::PsiMinus, 1, 1.0, grid).unwrap();
    let out = beamsplitter_output(&amp, BsPhases::new(0.3, 0.9)).unwrap();
    assert!(out.p_both_port1.abs() < 1e-12 && out.p_both_port2.abs() < 1e-12);
    assert!((out.p_coincidence - 1.0).abs() < 1e-12);
    let overlap = out.coincidence_amplitude.inner(&amp).unwrap();
    assert!((overlap - Complex64::from(1.0)).norm() < 1e-12);
}

#[test]
fn opposite_windings_bunch_evenly() {
    let grid = make_grid(16, 6.0).unwrap();
    let amp = product_state(&oam_ring(1, 1.0, grid).unwrap(), &oam_ring(-1, 1.0, grid).unwrap()).unwrap();
    let out = beamsplitter_output(&amp, BsPhases::default()).unwrap();
    assert!((out.p_both_port1 - 0.5).abs() < 1e-12);
    assert!((out.p_both_port2 - 0.5).abs() < 1e-12);
    assert!(out.p_coincidence.abs() < 1e-12);
    let oracle = common::dense_port_probabilities(&amp.to_dense().unwrap(), 0.0, 0.0);
    assert!((oracle[0] - 0.5).abs() < 1e-12 && (oracle[1] - 0.5).abs() < 1e-12 && oracle[2].abs() < 1e-12);
}

#[test]
fn witness_is_one_sided() {
    let grid = make_grid(16, 6.0).unwrap();
    let psi = bell_state(BellKind::PsiMinus, 1, 1.0, grid).unwrap();
    let phi = bell_state(BellKind::PhiPlus, 1, 1.0, grid).unwrap();
    assert_eq!(
        entanglement_witness(&psi, DEFAULT_WITNESS_MARGIN).unwrap(),
        Verdict::Entangled
    );
    assert_eq!(
        entanglement_witness(&phi, DEFAULT_WITNESS_MARGIN).unwrap(),
        Verdict::Inconclusive
    );
    assert!(matches!(
        entanglement_witness(&psi, -1e-3),
        Err(Error::InvalidParameter { .. })
    ));
}

#[test]
fn unnormalized_input_is_rejected() {
    let grid = make_grid(16, 6.0).unwrap();
    let amp = bell_state(BellKind::PsiMinus, 1, 1.0, grid)
        .unwrap()
        .scaled(Complex64::from(2.0));
    assert!(matches!(coincidence_probability(&amp), Err(Error::NotNormalized(_))));
    assert!(matches!(
        beamsplitter_output(&amp, BsPhases::default()),
        Err(Error::NotNormalized(_))
    ));
}
