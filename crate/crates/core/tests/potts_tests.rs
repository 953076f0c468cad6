use nalgebra::DMatrix;
use num_complex::Complex64;
use onsager::chiralpotts::{
    build_chain, dg_check_numeric, dg_defect_numeric, fit_onsager_form, spectrum_sweep, Tolerances,
};

fn samples(n: usize) -> Vec<f64> {
    (0..n).map(|i| 2.0 * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn every_sample_keeps_all_trajectories() {
    let c = build_chain(3, 2).unwrap();
    let s = spectrum_sweep(&c, &samples(15));
    assert_eq!(s.trajectories.len(), c.dim());
    for (i, spec) in s.spectra.iter().enumerate() {
        let mut at: Vec<f64> = s.trajectories.iter().map(|t| t[i]).collect();
        at.sort_by(f64::total_cmp);
        assert_eq!(&at, spec);
    }
}

#[test]
fn ising_fit_is_all_spin_half() {
    for sites in 1..=3 {
        let c = build_chain(2, sites).unwrap();
        let f = fit_onsager_form(&spectrum_sweep(&c, &samples(21)), 2, 1e-8).unwrap();
        assert!(f.residual < 1e-8, "sites = {sites}: {}", f.residual);
        assert!(f.all_spin_half);
        assert_eq!(f.assignments.len(), c.dim());
    }
}

#[test]
fn generic_perturbation_breaks_dg() {
    let c = build_chain(3, 2).unwrap();
    let (a0, a1) = c.onsager_generators();
    assert!(dg_check_numeric(&c).relative < 1e-10);
    let n = a0.nrows();
    let bump = DMatrix::from_fn(n, n, |i, j| Complex64::new(((i * 7 + j * 3) % 5) as f64 * 0.1, 0.0));
    let bump = &bump + bump.adjoint();
    assert!(dg_defect_numeric(&(&a0 + bump), &a1).relative > 1e-3);
}

#[test]
fn precision_spec_overrides_defaults() {
    let d = Tolerances::default();
    assert_eq!(Tolerances::parse("1e-5").unwrap().fit, 1e-5);
    let t = Tolerances::parse("dg=1e-8").unwrap();
    assert_eq!((t.hermitian, t.dg, t.fit), (d.hermitian, 1e-8, d.fit));
    assert!(Tolerances::parse("fit=abc").is_err());
}
