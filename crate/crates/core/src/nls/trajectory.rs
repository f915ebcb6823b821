use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

/// Time-stamped fields on one grid, times strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<Field>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<Field>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Empty("trajectory".into()));
        }
        if times.len() != states.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTrajectory(
                "times must be finite and strictly increasing".into(),
            ));
        }
        let g = *states[0].grid();
        for s in &states[1..] {
            g.ensure_same(s.grid())?;
        }
        Ok(Self { times, states })
    }

    pub fn single(time: f64, state: Field) -> Self {
        Self {
            times: vec![time],
            states: vec![state],
        }
    }

    pub(crate) fn push(&mut self, time: f64, state: Field) {
        debug_assert!(time > *self.times.last().unwrap());
        self.times.push(time);
        self.states.push(state);
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Field] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn grid(&self) -> &Grid {
        self.states[0].grid()
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last(&self) -> (f64, &Field) {
        let n = self.times.len() - 1;
        (self.times[n], &self.states[n])
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Field)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    /// Applies `f` to every state, keeping the time stamps.
    pub fn map(&self, mut f: impl FnMut(f64, &Field) -> Result<Field>) -> Result<Trajectory> {
        let states = self
            .iter()
            .map(|(t, u)| f(t, u))
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(self.times.clone(), states)
    }
}
