use maeda_core::bounds::c_coeff_f64;
use maeda_core::plancherel_mc::{deviation_scaling, PlancherelSampler};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn sample_moments_within_four_sigma() {
    let n = 1_000_000;
    for p in [2u64, 5] {
        let s = PlancherelSampler::new(p, 7).unwrap();
        let draws = s.sample(n);
        for m in 1..=8u32 {
            let xs: Vec<f64> = draws.iter().map(|t| 2.0 * (m as f64 * t).cos()).collect();
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let band = 4.0 * (var / n as f64).sqrt();
            let c = c_coeff_f64(p, m).unwrap();
            assert!((mean - c).abs() <= band, "p={p} m={m}: {mean} vs {c} (band {band})");
        }
    }
}

#[test]
fn large_p_is_sato_tate() {
    let s = PlancherelSampler::new(1_000_000_007, 11).unwrap();
    let n = 200_000;
    let bins = 50;
    // Sato-Tate CDF (t - sin t cos t) / pi, inverted by bisection for bin edges.
    let st_cdf = |t: f64| (t - t.sin() * t.cos()) / std::f64::consts::PI;
    let edges: Vec<f64> = (0..=bins)
        .map(|i| {
            let target = i as f64 / bins as f64;
            let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if st_cdf(mid) < target {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    let mut counts = vec![0usize; bins];
    for t in s.sample(n) {
        let j = edges.partition_point(|&e| e <= t).clamp(1, bins) - 1;
        counts[j] += 1;
    }
    let expected = n as f64 / bins as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let pval = 1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(chi2);
    assert!(pval > 0.01, "chi2 = {chi2}, p-value = {pval}");
}

#[test]
fn square_root_scaling() {
    for m in [1u32, 2] {
        let r = deviation_scaling(2, &[100, 1000, 10000], 200, m, 2024).unwrap();
        assert!((0.45..=0.55).contains(&r.slope), "m={m}: slope {}", r.slope);
        assert!(r.stderr.unwrap() < 0.05);
    }
}

#[test]
fn odd_m_has_zero_center() {
    let r = deviation_scaling(3, &[50, 500, 5000], 100, 3, 1).unwrap();
    assert_eq!(r.c_m, 0.0);
    assert!((0.4..=0.6).contains(&r.slope));
}
