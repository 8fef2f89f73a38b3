use num_rational::Ratio;
use posmap_core::choi::{choi_closed_form, choi_of_family, is_completely_positive};
use posmap_core::matrix::{kron_vec, normalized};
use posmap_core::numerics::{herm_eigs, is_psd, kron, operator_norm, partial_transpose, singular_values, Subsystem};
use posmap_core::pmap::{apply_map, block_split, closed_form_2x2, Input2x2, MapParams};
use posmap_core::states::{horodecki_state, BipartiteState};
use posmap_core::witness::{detect, expectation, WitnessCandidate};
use posmap_core::{c64, ComplexMatrix, Tolerances};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = c64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| c64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), rows * cols).prop_map(move |data| ComplexMatrix::new(rows, cols, data).unwrap())
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, n).prop_map(|g| (&g + &g.adjoint()).scale(0.5))
}

fn sized_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=16).prop_flat_map(hermitian)
}

fn psd(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, n).prop_map(|g| &g * &g.adjoint())
}

fn unit_vector(n: usize) -> impl Strategy<Value = Vec<c64>> {
    proptest::collection::vec(entry(), n).prop_filter_map("zero vector", |v| normalized(&v))
}

fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    hermitian(n).prop_map(|h| herm_eigs(&h, 1e-10).unwrap().vectors)
}

fn input2x2() -> impl Strategy<Value = Input2x2> {
    (0.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, 0.0..3.0f64).prop_map(|(a, b, c, d)| Input2x2 { a, b, c, d })
}

fn state_2x4() -> impl Strategy<Value = BipartiteState> {
    psd(8).prop_filter_map("degenerate", |m| {
        let tr = m.trace().re;
        (tr > 1e-6)
            .then(|| BipartiteState::new(m.scale(1.0 / tr), 2, 4, "random", None, &Tolerances::default()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstruction(m in sized_hermitian()) {
        let e = herm_eigs(&m, 1e-10).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        prop_assert!(e.reconstruct_with(|x| x).max_abs_diff(&m) <= 1e-10 * scale);
        let n = m.rows();
        let gram = &e.vectors.adjoint() * &e.vectors;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn partial_transposes_share_spectrum(m in hermitian(8)) {
        let first = partial_transpose(&m, 2, 4, Subsystem::First).unwrap();
        let second = partial_transpose(&m, 2, 4, Subsystem::Second).unwrap();
        let a = herm_eigs(&first, 1e-10).unwrap().values;
        let b = herm_eigs(&second, 1e-10).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-10 * m.frobenius_norm().max(1.0));
        }
        prop_assert_eq!(partial_transpose(&first, 2, 4, Subsystem::First).unwrap(), m);
    }

    #[test]
    fn kron_laws(a in matrix(2, 2), b in matrix(2, 3), c in matrix(2, 2), d in matrix(3, 2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
        let mixed = &kron(&a, &b) * &kron(&c, &d);
        let direct = kron(&(&a * &c), &(&b * &d));
        prop_assert!(mixed.max_abs_diff(&direct) <= 1e-11);
    }

    #[test]
    fn gram_matrices_are_psd(m in psd(5)) {
        let tol = Tolerances::default();
        let v = is_psd(&m, &tol).unwrap();
        prop_assert!(v.is_psd);
        let shifted = &m - &ComplexMatrix::identity(5).scale(v.min_eigenvalue + 0.1);
        let w = is_psd(&shifted, &tol).unwrap();
        prop_assert!(!w.is_psd);
        prop_assert!(shifted.quadratic_form(&w.witness_vector).re < 0.0);
    }

    #[test]
    fn operator_norm_unitarily_invariant(m in matrix(4, 4), u in unitary(4), v in unitary(4)) {
        let base = operator_norm(&m).unwrap();
        let rotated = operator_norm(&(&(&u * &m) * &v)).unwrap();
        prop_assert!((base - rotated).abs() <= 1e-10 * base.max(1.0));
        let sv = singular_values(&m).unwrap();
        let fro: f64 = sv.iter().map(|s| s * s).sum::<f64>().sqrt();
        prop_assert!((fro - m.frobenius_norm()).abs() <= 1e-10 * fro.max(1.0));
    }

    #[test]
    fn closed_form_matches_definition(alpha in -3.0..3.0f64, beta in -3.0..3.0f64, inp in input2x2()) {
        let def = apply_map(&MapParams::qubit(alpha, beta).unwrap(), &inp.to_matrix()).unwrap();
        prop_assert_eq!(closed_form_2x2(alpha, beta, &inp), def);
    }

    #[test]
    fn psd_iff_contraction(
        a in 0.05..3.0f64,
        d in 0.05..3.0f64,
        b in -3.0..3.0f64,
        c in -3.0..3.0f64,
        alpha in 0.05..2.0f64,
        t in 0.0..1.0f64,
    ) {
        let tol = Tolerances::default();
        let beta = -4.0 * a.min(d) * alpha * 0.95 + t * 3.0;
        let out = closed_form_2x2(alpha, beta, &Input2x2 { a, b, c, d });
        let split = block_split(&out, &tol).unwrap();
        prop_assert_eq!(split.reassemble(), out.clone());
        let norm = operator_norm(&split.v_numeric.unwrap()).unwrap();
        let psd = is_psd(&out, &tol).unwrap().is_psd;
        // skip draws sitting on the boundary
        prop_assume!((norm - 1.0).abs() > 1e-7);
        prop_assert_eq!(psd, norm <= 1.0);
    }

    #[test]
    fn positivity_monotone_in_alpha(inp in input2x2(), gamma in 0.1..2.0f64, lo in 0.0..3.0f64, step in 0.0..3.0f64) {
        // a, d >= 0 and A + Aᵀ PSD keep the α-term PSD
        prop_assume!(inp.a * inp.d * 4.0 >= (inp.b + inp.c).powi(2));
        let tol = Tolerances::default();
        let at = |alpha: f64| is_psd(&closed_form_2x2(alpha, -gamma, &inp), &tol).unwrap().min_eigenvalue;
        prop_assert!(at(lo + step) >= at(lo) - 1e-9);
    }

    #[test]
    fn beta_zero_is_positive(a in psd(2), alpha in 0.0..3.0f64) {
        let out = apply_map(&MapParams::qubit(alpha, 0.0).unwrap(), &a).unwrap();
        prop_assert!(is_psd(&out, &Tolerances::default()).unwrap().is_psd);
    }

    #[test]
    fn choi_identity_and_trace(alpha in -2.0..2.0f64, beta in -2.0..2.0f64) {
        let c = choi_closed_form(alpha, beta).matrix;
        let def = choi_of_family(&MapParams::qubit(alpha, beta).unwrap()).unwrap();
        prop_assert!(c.max_abs_diff(&def) <= 1e-14);
        prop_assert!((c.trace().re - (8.0 * alpha + 2.0 * beta)).abs() <= 1e-12);
    }

    #[test]
    fn never_completely_positive(alpha in -2.0..2.0f64, beta in -2.0..2.0f64) {
        prop_assume!(alpha.abs() + beta.abs() > 1e-6);
        let v = is_completely_positive(alpha, beta, &Tolerances::default()).unwrap();
        prop_assert!(!v.completely_positive);
        let cert = v.certificate.unwrap();
        let c = choi_closed_form(alpha, beta).matrix;
        prop_assert!(c.quadratic_form(&cert.vector).re < 0.0);
    }

    #[test]
    fn horodecki_has_singular_minor(b in 0.0..=1.0f64) {
        // rows/cols {3, 5, 8} (1-based) of (1+7b)ρ_b repeat a 2x2 block pattern
        let m = horodecki_state(b).unwrap().matrix.scale(1.0 + 7.0 * b);
        let idx = [2usize, 4, 7];
        let e = |r: usize, c: usize| m[(idx[r], idx[c])].re;
        let det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        prop_assert!(det.abs() <= 1e-12);
    }

    #[test]
    fn detection_invariant_under_positive_scaling(rho in state_2x4(), s in 0.01..100.0f64, alpha in -2.0..2.0f64, beta in -2.0..2.0f64) {
        let tol = Tolerances::default();
        let w = WitnessCandidate::from_choi(choi_closed_form(alpha, beta));
        let scaled = WitnessCandidate::new(w.operator.scale(s), 2, 4, &tol).unwrap();
        let base = detect(&w, &rho, &tol).unwrap();
        let other = detect(&scaled, &rho, &tol).unwrap();
        prop_assume!(base.expectation.abs() > 1e-8 * w.norm(&tol).unwrap());
        prop_assert_eq!(base.detected, other.detected);
    }

    #[test]
    fn expectation_is_linear(rho in state_2x4(), a1 in -2.0..2.0f64, b1 in -2.0..2.0f64, a2 in -2.0..2.0f64, b2 in -2.0..2.0f64, s in -3.0..3.0f64) {
        let tol = Tolerances::default();
        let w1 = WitnessCandidate::from_choi(choi_closed_form(a1, b1));
        let w2 = WitnessCandidate::from_choi(choi_closed_form(a2, b2));
        let combo = &w1.operator + &w2.operator.scale(s);
        let w = WitnessCandidate::new(combo, 2, 4, &tol).unwrap();
        let lhs = expectation(&w, &rho, &tol).unwrap();
        let rhs = expectation(&w1, &rho, &tol).unwrap() + s * expectation(&w2, &rho, &tol).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn product_value_is_quadratic_form(alpha in -2.0..2.0f64, beta in -2.0..2.0f64, a in unit_vector(2), b in unit_vector(4)) {
        let w = WitnessCandidate::from_choi(choi_closed_form(alpha, beta));
        let direct = w.operator.quadratic_form(&kron_vec(&a, &b)).re;
        prop_assert!((w.product_value(&a, &b) - direct).abs() <= 1e-12);
    }
}

type Q = Ratio<i64>;

/// `(1+7b) Tr(C_{3/4,-2} ρ_b)` at rational `b`, summed exactly.
fn scaled_trace_exact(b: Q) -> Q {
    let h = Q::new(-1, 1);
    let d = Q::new(1, 2);
    let t = Q::new(3, 2);
    // contributions from entries shared by both supports; the √(1−b²) entries
    // meet zero Choi entries at (4,7) and (7,4)
    let diag = [d, t, Q::from(0), h, h, Q::from(0), t, d];
    let rho_diag = [b, b, b, b, (Q::from(1) + b) / 2, b, b, (Q::from(1) + b) / 2];
    let mut sum: Q = diag.iter().zip(rho_diag).map(|(c, r)| *c * r).sum();
    // off-diagonal pairs (0,5), (1,6), (2,7) of ρ_b meet C entries 0, h, 0
    sum += Q::from(2) * h * b;
    sum
}

#[test]
fn trace_formula_exact_at_rational_points() {
    let tol = Tolerances::default();
    let w = WitnessCandidate::from_choi(choi_closed_form(0.75, -2.0));
    for (n, den) in [(0i64, 1i64), (1, 4), (1, 2), (3, 4), (1, 1), (1, 8)] {
        let b = Q::new(n, den);
        let exact = scaled_trace_exact(b) / (Q::from(1) + Q::from(7) * b);
        let formula = (b - Q::from(1)) / (Q::from(4) * (Q::from(1) + Q::from(7) * b));
        assert_eq!(exact, formula, "b = {b}");
        let bf = n as f64 / den as f64;
        let numeric = expectation(&w, &horodecki_state(bf).unwrap(), &tol).unwrap();
        let want = *formula.numer() as f64 / *formula.denom() as f64;
        assert!((numeric - want).abs() <= 1e-12, "b = {b}: {numeric} vs {want}");
    }
}
