//! Strang splitting carried out on the coefficient side.
//!
//! Free half-steps are exact phases `e^{-i (dt/2) |xi|^2}`. The nonlinear
//! substep solves `v' = -i |v|^2 v`:
//!
//! * without dealiasing, pointwise and exactly on the native lattice,
//!   `v -> e^{-i dt |v|^2} v`;
//! * with dealiasing, as the Galerkin system `v' = -i P(|v|^2 v)` on the
//!   retained lattice, products formed on the doubled grid. The spatial mean
//!   `rho = |v|^2` averaged over the box is conserved by this system, so the
//!   phase `e^{-i rho t}` is factored out and the remainder
//!   `w' = -i (P(|w|^2 w) - rho w)` is advanced with one classical RK4 step.
//!   Single-mode data give `w' = 0`, so plane waves remain exact.

use num_complex::Complex64;

use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::spectral::{norm_sqr, Field, Grid, Spectrum};

pub const DEFAULT_OVERFLOW_GUARD: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub grid: Grid,
    pub dt: f64,
    pub t_end: f64,
    pub record_stride: usize,
    pub dealias: bool,
    /// Abort once `sup |u|` exceeds this.
    pub overflow_guard: f64,
}

impl SolverConfig {
    pub fn new(grid: Grid, dt: f64, t_end: f64, record_stride: usize) -> Result<Self> {
        let cfg = Self {
            grid,
            dt,
            t_end,
            record_stride,
            dealias: true,
            overflow_guard: DEFAULT_OVERFLOW_GUARD,
        };
        cfg.steps()?;
        Ok(cfg)
    }

    pub fn with_dealias(mut self, dealias: bool) -> Self {
        self.dealias = dealias;
        self
    }

    pub fn with_overflow_guard(mut self, guard: f64) -> Self {
        self.overflow_guard = guard;
        self
    }

    /// Number of steps; `dt * steps` must reproduce `t_end`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "t_end must be nonnegative, got {}",
                self.t_end
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidConfig(
                "record_stride must be positive".into(),
            ));
        }
        if !(self.overflow_guard > 0.0) {
            return Err(Error::InvalidConfig(
                "overflow guard must be positive".into(),
            ));
        }
        let steps = (self.t_end / self.dt).round();
        if (steps * self.dt - self.t_end).abs() > 1e-12 * self.t_end.max(1.0) {
            return Err(Error::InvalidConfig(format!(
                "t_end = {} is not an integer multiple of dt = {}",
                self.t_end, self.dt
            )));
        }
        Ok(steps as usize)
    }
}

/// Precomputed phases and buffers for repeated steps of one size.
#[derive(Debug, Clone)]
pub struct StrangStepper {
    grid: Grid,
    dt: f64,
    dealias: bool,
    half_phase: Vec<Complex64>,
}

impl StrangStepper {
    pub fn new(grid: Grid, dt: f64, dealias: bool) -> Self {
        let half_phase = (0..grid.len())
            .map(|j| {
                let k = grid.wavevector(j);
                if dealias && !grid.is_retained(&k) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, -0.5 * dt * norm_sqr(&grid.frequency(j)))
                }
            })
            .collect();
        Self {
            grid,
            dt,
            dealias,
            half_phase,
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn free_half(&self, s: &mut Spectrum) {
        for (c, p) in s.coeffs_mut().iter_mut().zip(&self.half_phase) {
            *c *= p;
        }
    }

    fn nonlinear(&self, s: &Spectrum) -> Spectrum {
        if !self.dealias {
            let mut u = s.inverse_transform();
            for z in u.values_mut() {
                *z *= Complex64::from_polar(1.0, -self.dt * z.norm_sqr());
            }
            return u.transform();
        }
        let rho = s.l2_norm_sqr() / self.grid.volume();
        let rhs = |w: &Spectrum| -> Spectrum {
            let mut f = w.cubic_projected();
            for (fc, wc) in f.coeffs_mut().iter_mut().zip(w.coeffs()) {
                *fc = Complex64::new(0.0, -1.0) * (*fc - rho * wc);
            }
            f
        };
        let axpy = |base: &Spectrum, k: &Spectrum, h: f64| -> Spectrum {
            let mut out = base.clone();
            for (o, kc) in out.coeffs_mut().iter_mut().zip(k.coeffs()) {
                *o += kc * h;
            }
            out
        };
        let h = self.dt;
        let k1 = rhs(s);
        let k2 = rhs(&axpy(s, &k1, 0.5 * h));
        let k3 = rhs(&axpy(s, &k2, 0.5 * h));
        let k4 = rhs(&axpy(s, &k3, h));
        let phase = Complex64::from_polar(1.0, -rho * h);
        let mut out = s.clone();
        for (j, o) in out.coeffs_mut().iter_mut().enumerate() {
            let inc = k1.coeffs()[j] + 2.0 * k2.coeffs()[j] + 2.0 * k3.coeffs()[j] + k4.coeffs()[j];
            *o = (*o + inc * (h / 6.0)) * phase;
        }
        out
    }

    /// One step on the coefficient side.
    pub fn step_spectrum(&self, s: &Spectrum) -> Spectrum {
        let mut a = if self.dealias {
            s.project_retained()
        } else {
            s.clone()
        };
        self.free_half(&mut a);
        let mut b = self.nonlinear(&a);
        self.free_half(&mut b);
        b
    }

    pub fn step(&self, u: &Field) -> Field {
        self.step_spectrum(&u.transform()).inverse_transform()
    }
}

/// One Strang step of size `dt` (dealiased).
pub fn strang_step(field: &Field, dt: f64) -> Field {
    StrangStepper::new(*field.grid(), dt, true).step(field)
}

fn guard_check(s: &Spectrum, time: f64, guard: f64) -> Result<()> {
    let bound = s.sup_bound();
    if bound.is_nan() {
        return Err(Error::Overflow {
            time,
            sup: f64::NAN,
            guard,
        });
    }
    if bound > guard {
        let sup = s.inverse_transform().sup_norm();
        if !(sup <= guard) {
            return Err(Error::Overflow { time, sup, guard });
        }
    }
    Ok(())
}

/// Integrates from `t = 0`.
pub fn evolve(u0: &Field, cfg: &SolverConfig) -> Result<Trajectory> {
    evolve_from(u0, 0.0, cfg)
}

/// Integrates from `t0` over `cfg.t_end`, recording the initial state, every
/// `record_stride`-th step and the final state. With dealiasing the data are
/// first projected onto the retained lattice, and that projection is what
/// gets recorded at `t0`.
pub fn evolve_from(u0: &Field, t0: f64, cfg: &SolverConfig) -> Result<Trajectory> {
    let start = initial_state(u0, cfg);
    let mut traj = Trajectory::single(t0, start.clone());
    run_steps(&start, t0, 0, cfg, |t, u| {
        traj.push(t, u);
        Ok(())
    })?;
    Ok(traj)
}

pub(crate) fn initial_state(u0: &Field, cfg: &SolverConfig) -> Field {
    if cfg.dealias {
        u0.transform().project_retained().inverse_transform()
    } else {
        u0.clone()
    }
}

/// Steps `first_step + 1 ..= steps`, handing each recorded state to `record`.
pub(crate) fn run_steps(
    u_start: &Field,
    t0: f64,
    first_step: usize,
    cfg: &SolverConfig,
    mut record: impl FnMut(f64, Field) -> Result<()>,
) -> Result<()> {
    cfg.grid.ensure_same(u_start.grid())?;
    let steps = cfg.steps()?;
    let stepper = StrangStepper::new(cfg.grid, cfg.dt, cfg.dealias);
    let mut s = u_start.transform();
    for n in first_step + 1..=steps {
        s = stepper.step_spectrum(&s);
        let t = t0 + n as f64 * cfg.dt;
        guard_check(&s, t, cfg.overflow_guard)?;
        if n % cfg.record_stride == 0 || n == steps {
            let u = s.inverse_transform();
            let sup = u.sup_norm();
            if !(sup <= cfg.overflow_guard) {
                return Err(Error::Overflow {
                    time: t,
                    sup,
                    guard: cfg.overflow_guard,
                });
            }
            record(t, u)?;
        }
    }
    Ok(())
}
