//! Synthetic angle ensembles drawn from the p-adic Plancherel measure
//! mu_p on [0, pi], and the scaling of moment-sum deviations with the
//! ensemble size.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::require_prime;
use crate::bounds::c_coeff_f64;
use crate::error::{Error, Result};

/// Number of nodes of the inverse-CDF table.
pub const TABLE_SIZE: usize = 1 << 14;

// 8-point Gauss-Legendre rule on [-1, 1].
const GL_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_W: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

fn gauss<F: Fn(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    GL_X.iter()
        .zip(GL_W)
        .map(|(&x, w)| w * (f(mid - half * x) + f(mid + half * x)))
        .sum::<f64>()
        * half
}

/// (2/pi) sin^2 t (p+1) / ((sqrt p + 1/sqrt p)^2 - 4 cos^2 t), not renormalized.
pub fn raw_density(p: u64, theta: f64) -> f64 {
    let pf = p as f64;
    let s = theta.sin();
    let c = theta.cos();
    let denom = pf + 2.0 + 1.0 / pf - 4.0 * c * c;
    2.0 / PI * s * s * (pf + 1.0) / denom
}

/// Sampler for mu_p with a precomputed monotone inverse-CDF table.
#[derive(Debug, Clone)]
pub struct PlancherelSampler {
    p: u64,
    seed: u64,
    mass: f64,
    /// Table nodes in theta, clustered at both ends of [0, pi].
    theta: Vec<f64>,
    /// Normalized CDF at the nodes.
    cdf: Vec<f64>,
    /// PCHIP slopes d theta / dF at the nodes.
    slope: Vec<f64>,
}

impl PlancherelSampler {
    pub fn new(p: u64, seed: u64) -> Result<Self> {
        require_prime(p)?;
        let n = TABLE_SIZE;
        let theta: Vec<f64> = (0..n)
            .map(|j| {
                let t = PI * j as f64 / (n - 1) as f64;
                0.5 * PI * (1.0 - t.cos())
            })
            .collect();
        let mut cdf = Vec::with_capacity(n);
        cdf.push(0.0);
        let mut acc = 0.0;
        for w in theta.windows(2) {
            acc += gauss(w[0], w[1], |t| raw_density(p, t));
            cdf.push(acc);
        }
        let mass = acc;
        for c in &mut cdf {
            *c /= mass;
        }
        *cdf.last_mut().expect("nonempty") = 1.0;
        let slope = pchip_slopes(&cdf, &theta);
        Ok(PlancherelSampler { p, seed, mass, theta, cdf, slope })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Integral of the raw density over [0, pi].
    pub fn raw_mass(&self) -> f64 {
        self.mass
    }

    /// Renormalized density.
    pub fn density(&self, theta: f64) -> f64 {
        raw_density(self.p, theta) / self.mass
    }

    /// Integral of 2 cos(m theta) against the renormalized density.
    pub fn moment(&self, m: u32) -> f64 {
        let f = |t: f64| 2.0 * (m as f64 * t).cos() * self.density(t);
        let panels = 256 + 16 * m as usize;
        (0..panels)
            .map(|i| gauss(PI * i as f64 / panels as f64, PI * (i + 1) as f64 / panels as f64, f))
            .sum()
    }

    /// Normalized CDF, interpolated linearly between nodes.
    pub fn cdf(&self, theta: f64) -> f64 {
        let t = theta.clamp(0.0, PI);
        let j = self.theta.partition_point(|&x| x <= t).clamp(1, TABLE_SIZE - 1);
        let (a, b) = (self.theta[j - 1], self.theta[j]);
        self.cdf[j - 1] + (self.cdf[j] - self.cdf[j - 1]) * (t - a) / (b - a)
    }

    /// theta with F(theta) = u, by monotone cubic interpolation of the table.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let j = self.cdf.partition_point(|&x| x <= u).clamp(1, TABLE_SIZE - 1);
        let (x0, x1) = (self.cdf[j - 1], self.cdf[j]);
        let (y0, y1) = (self.theta[j - 1], self.theta[j]);
        let h = x1 - x0;
        if h <= 0.0 {
            return y0;
        }
        let s = (u - x0) / h;
        let (s2, s3) = (s * s, s * s * s);
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * h * self.slope[j - 1]
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * h * self.slope[j];
        v.clamp(y0, y1)
    }

    /// `count` draws using the sampler's seed on stream 0.
    pub fn sample(&self, count: usize) -> Vec<f64> {
        self.sample_stream(0, count)
    }

    /// `count` draws from an independent stream of the sampler's seed.
    pub fn sample_stream(&self, stream: u64, count: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        (0..count).map(|_| self.inverse_cdf(rng.gen::<f64>())).collect()
    }
}

/// Fritsch-Carlson slopes for monotone data y(x).
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let delta: Vec<f64> = (0..n - 1)
        .map(|i| {
            let h = x[i + 1] - x[i];
            if h > 0.0 {
                (y[i + 1] - y[i]) / h
            } else {
                0.0
            }
        })
        .collect();
    let mut d = vec![0.0; n];
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for i in 1..n - 1 {
        let (a, b) = (delta[i - 1], delta[i]);
        if a > 0.0 && b > 0.0 {
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            let (w1, w2) = (2.0 * h1 + h0, h1 + 2.0 * h0);
            d[i] = (w1 + w2) / (w1 / a + w2 / b);
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimStat {
    pub dim: usize,
    pub rms: f64,
    pub mean_abs: f64,
    /// |sum 2cos(m theta_i) - c_m D| for each trial.
    #[serde(skip)]
    pub deviations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationScaling {
    pub p: u64,
    pub m: u32,
    pub c_m: f64,
    pub trials: usize,
    pub seed: u64,
    pub slope: f64,
    /// Standard error of the slope; absent with only two dims.
    pub stderr: Option<f64>,
    pub per_dim: Vec<DimStat>,
}

/// Fits log rms against log D for ensembles of i.i.d. draws from mu_p.
/// Trial t of the i-th dimension uses stream (i << 32) | t, so results do
/// not depend on evaluation order.
pub fn deviation_scaling(p: u64, dims: &[usize], trials: usize, m: u32, seed: u64) -> Result<DeviationScaling> {
    if dims.len() < 2 {
        return Err(Error::invalid("need at least two ensemble sizes"));
    }
    if dims.iter().any(|&d| d < 10) || dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("dims must be strictly increasing and at least 10"));
    }
    if trials < 100 {
        return Err(Error::invalid("need at least 100 trials"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    let sampler = PlancherelSampler::new(p, seed)?;
    let c_m = c_coeff_f64(p, m)?;
    let per_dim: Vec<DimStat> = dims
        .iter()
        .enumerate()
        .map(|(i, &dim)| {
            let deviations: Vec<f64> = (0..trials as u64)
                .map(|t| {
                    let sum: f64 = sampler
                        .sample_stream(((i as u64) << 32) | t, dim)
                        .iter()
                        .map(|th| 2.0 * (m as f64 * th).cos())
                        .sum();
                    (sum - c_m * dim as f64).abs()
                })
                .collect();
            let n = deviations.len() as f64;
            DimStat {
                dim,
                rms: (deviations.iter().map(|x| x * x).sum::<f64>() / n).sqrt(),
                mean_abs: deviations.iter().sum::<f64>() / n,
                deviations,
            }
        })
        .collect();
    let xs: Vec<f64> = per_dim.iter().map(|d| (d.dim as f64).ln()).collect();
    let ys: Vec<f64> = per_dim.iter().map(|d| d.rms.ln()).collect();
    let (slope, stderr) = least_squares_slope(&xs, &ys);
    Ok(DeviationScaling { p, m, c_m, trials, seed, slope, stderr, per_dim })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> (f64, Option<f64>) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let stderr = (xs.len() > 2).then(|| {
        let ssr: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
            .sum();
        (ssr / (n - 2.0) / sxx).sqrt()
    });
    (slope, stderr)
}
