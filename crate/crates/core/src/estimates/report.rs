use std::fmt;

/// Samples grouped by the decade of their dominant frequency magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct DecadeBin {
    /// `floor(log10 max|xi_j|)`
    pub decade: i32,
    pub count: usize,
    pub sup_ratio: f64,
}

/// Empirical supremum of a normalized ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub n_samples: usize,
    pub sup_ratio: f64,
    /// Supremum over the first tenth of the samples.
    pub sup_base: f64,
    /// `sup_ratio <= 2 sup_base`, i.e. ten times the samples at most doubled the supremum.
    pub saturated: bool,
    pub decades: Vec<DecadeBin>,
}

impl BoundReport {
    /// Builds a report from `(ratio, dominant frequency)` pairs in sample order.
    pub fn from_samples(name: impl Into<String>, samples: &[(f64, f64)]) -> Self {
        let n = samples.len();
        let sup = |s: &[(f64, f64)]| s.iter().map(|p| p.0).fold(0.0, f64::max);
        let sup_ratio = sup(samples);
        let sup_base = sup(&samples[..(n / 10).max(1).min(n)]);
        let finite = samples.iter().all(|p| p.0.is_finite());
        let saturated = finite && sup_ratio <= 2.0 * sup_base;
        let mut decades: Vec<DecadeBin> = Vec::new();
        for &(r, f) in samples {
            let decade = if f > 0.0 {
                f.log10().floor() as i32
            } else {
                i32::MIN
            };
            match decades.iter_mut().find(|b| b.decade == decade) {
                Some(b) => {
                    b.count += 1;
                    b.sup_ratio = b.sup_ratio.max(r);
                }
                None => decades.push(DecadeBin {
                    decade,
                    count: 1,
                    sup_ratio: r,
                }),
            }
        }
        decades.sort_by_key(|b| b.decade);
        Self {
            name: name.into(),
            n_samples: n,
            sup_ratio,
            sup_base,
            saturated,
            decades,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.sup_ratio.is_finite()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: n = {}, sup = {:.6e} (base {:.6e}), saturated = {}",
            self.name, self.n_samples, self.sup_ratio, self.sup_base, self.saturated
        )
    }
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of `ln y` from the line.
    pub residual: f64,
    pub points: usize,
}

/// Fits through the points with `x, y > 0`; `None` when fewer than 4 remain.
pub fn fit_loglog(x: &[f64], y: &[f64]) -> Option<LogLogFit> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 4 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Some(LogLogFit {
        slope,
        intercept,
        residual,
        points: pts.len(),
    })
}

/// A measured quantity against a swept parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub parameter: String,
    pub quantity: String,
    pub params: Vec<f64>,
    pub values: Vec<f64>,
    pub fit: Option<LogLogFit>,
}

impl SweepReport {
    pub fn new(
        parameter: impl Into<String>,
        quantity: impl Into<String>,
        params: Vec<f64>,
        values: Vec<f64>,
    ) -> Self {
        let fit = fit_loglog(&params, &values);
        Self {
            parameter: parameter.into(),
            quantity: quantity.into(),
            params,
            values,
            fit,
        }
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] < w[0])
    }
}
