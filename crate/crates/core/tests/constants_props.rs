use gensamp_core::bases::BasisFamily;
use gensamp_core::constants::*;
use gensamp_core::sections::SamplingScheme;

fn haar_half() -> (BasisFamily, SamplingScheme) {
    let f = BasisFamily::haar();
    (f, SamplingScheme::for_family(0.5, &f).unwrap())
}

#[test]
fn tail_constant_grows_with_m_and_stays_below_upper() {
    let (f, s) = haar_half();
    let a = Analyzer::new(f, s);
    let pts = a.k_lower_sweep(75, 350, &[100, 500, 1000, 2000, 6000]).unwrap();
    for w in pts.windows(2) {
        assert!(w[1].k >= w[0].k, "{pts:?}");
    }
    let upper = a.k_upper(75, 350).unwrap();
    assert!(pts.iter().all(|p| p.k <= upper + 1e-10));
}

#[test]
fn sandwich_on_several_configurations() {
    let (f, s) = haar_half();
    let leg = BasisFamily::legendre();
    let ls = SamplingScheme::for_family(0.5, &leg).unwrap();
    for (fam, sch, n, m) in [(f, s, 4, 8), (f, s, 8, 40), (f, s, 20, 98), (leg, ls, 4, 64), (leg, ls, 6, 144)] {
        let up = k_upper(&fam, &sch, n, m).unwrap();
        for big_m in [n + 1, 2 * n, 8 * n, 32 * n] {
            let lo = k_lower(&fam, &sch, n, m, big_m).unwrap();
            assert!(lo <= up + 1e-10, "n={n} m={m} M={big_m}: {lo} > {up}");
        }
    }
}

#[test]
fn residual_decreases_and_inverse_norm_converges() {
    let (f, s) = haar_half();
    let mut prev = f64::INFINITY;
    for m in [32, 48, 64, 100, 256, 1024, 4096] {
        let r = residual_norm(&f, &s, 32, m).unwrap();
        assert!(r <= prev, "m={m}");
        prev = r;
    }
    let inv = gram_inverse_norm(&f, &s, 32, 4096).unwrap();
    assert!((inv - 0.5).abs() <= 0.05 * 0.5, "{inv}");
    assert!(inv >= 0.5);
}

#[test]
fn residual_below_analytic_tail_bound() {
    let (f, s) = haar_half();
    for n in [4, 16, 64] {
        for m in [2 * n, 4 * n, 8 * n] {
            let r = residual_norm(&f, &s, n, m).unwrap();
            let b = residual_tail_bound(n, m, 0.5, 2.0, 1, 1.0);
            assert!(r <= b, "n={n} m={m}: {r} > {b}");
        }
    }
}

#[test]
fn stability_plateau() {
    let (f, s) = haar_half();
    let values: Vec<(usize, f64)> = (1..=180)
        .map(|k| 2 * k)
        .map(|n| (n, gram_inverse_norm(&f, &s, n, (49 * n + 9) / 10).unwrap() / 0.5))
        .collect();
    for &(n, v) in &values {
        assert!((1.0..=3.0).contains(&v), "n={n}: {v}");
    }
    let low = values.iter().filter(|p| p.0 < 180).map(|p| p.1).fold(0.0, f64::max);
    let high = values.iter().filter(|p| p.0 >= 180).map(|p| p.1).fold(0.0, f64::max);
    assert!(high < 1.1 * low, "{low} {high}");
}

#[test]
fn bracket_contains_threshold_search() {
    let (f, s) = haar_half();
    for n in [2, 4, 8] {
        let q = ThresholdQuery::new(n, 1.0, 0.5).unwrap();
        let (lo, hi) = phi_bracket(&f, &s, &q).unwrap();
        let psi = psi_tilde(&f, &s, &q).unwrap();
        assert!(n <= lo && lo <= hi && hi <= psi, "n={n}: {lo} {hi} {psi}");
        assert!((psi as f64) <= wavelet_phi_bound(&q, 2.0, 1, 1.0).unwrap());
    }
}
