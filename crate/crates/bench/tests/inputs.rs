use hn_bench::{fp_inputs, lattice_inputs};

#[test]
fn inputs_are_reproducible() {
    assert_eq!(fp_inputs(3, 4, 2, 5), fp_inputs(3, 4, 2, 5));
    assert_eq!(lattice_inputs(3, 5), lattice_inputs(3, 5));
    assert!(fp_inputs(2, 3, 2, 4).iter().all(|x| x.dim() == 3 && x.filtrations().len() == 2));
    assert!(lattice_inputs(4, 3).iter().all(|l| l.rank() == 4));
}
