use qudit_sorter::{controlled, fourier, pauli_x, pauli_z, tensor, UnitaryMatrix};

const TOL: f64 = 1e-12;

#[test]
fn fourier_diagonalizes_the_shift() {
    for d in 2..=32 {
        let f = fourier(d).unwrap();
        let lhs = f.adjoint().matmul(&pauli_z(d).unwrap()).matmul(&f);
        let err = lhs.max_abs_diff(&pauli_x(d).unwrap());
        assert!(err <= TOL, "d = {d}: {err:e}");
    }
}

#[test]
fn fourier_has_order_four_and_squares_to_reversal() {
    for d in 2..=32 {
        let f = fourier(d).unwrap();
        let f2 = f.matmul(&f);
        let perm = f2.as_permutation(TOL).unwrap_or_else(|| panic!("F^2 not a permutation for d = {d}"));
        for (k, &target) in perm.iter().enumerate() {
            assert_eq!(target, (d - k) % d);
        }
        assert!(f2.matmul(&f2).approx_eq(&UnitaryMatrix::identity(d), TOL), "d = {d}");
        assert!(f.adjoint().approx_eq(&f.pow(3), TOL), "d = {d}");
    }
}

#[test]
fn paulis_have_order_d() {
    for d in 2..=32 {
        let id = UnitaryMatrix::identity(d);
        assert!(pauli_x(d).unwrap().pow(d as u32).approx_eq(&id, TOL));
        assert!(pauli_z(d).unwrap().pow(d as u32).approx_eq(&id, TOL));
    }
}

#[test]
fn controlled_shift_is_a_permutation() {
    for d in 2..=12 {
        let perm = controlled(&pauli_x(d).unwrap()).as_permutation(0.0).expect("exact permutation");
        for s in 0..d {
            for k in 0..d {
                assert_eq!(perm[s * d + k], s * d + (k + s) % d);
            }
        }
    }
}

#[test]
fn controlled_clock_conjugates_to_controlled_shift() {
    for d in [2, 3, 5, 8] {
        let local = tensor(&UnitaryMatrix::identity(d), &fourier(d).unwrap());
        let lhs = local.adjoint().matmul(&controlled(&pauli_z(d).unwrap())).matmul(&local);
        assert!(lhs.approx_eq(&controlled(&pauli_x(d).unwrap()), TOL), "d = {d}");
    }
}

#[test]
fn global_phase_insensitive_comparison() {
    let d = 5;
    let f = fourier(d).unwrap();
    let phased = f.matmul(&UnitaryMatrix::diagonal_phases(&vec![0.7; d]));
    assert!(phased.max_abs_diff(&f) > 0.1);
    assert!(phased.max_abs_diff_up_to_phase(&f) < TOL);
}
