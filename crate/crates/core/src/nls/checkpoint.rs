//! Trajectory files: a flat sequence of `(time as f64 LE, Field record)`.

use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

use super::solver::{initial_state, run_steps, SolverConfig};
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::spectral::Field;

pub fn write_checkpoint<W: Write>(w: &mut W, traj: &Trajectory) -> Result<()> {
    for (t, u) in traj.iter() {
        w.write_all(&t.to_le_bytes())?;
        u.write_binary(w)?;
    }
    Ok(())
}

/// Reads records until a clean end of input.
pub fn read_checkpoint<R: Read>(r: &mut R) -> Result<Trajectory> {
    let mut times = Vec::new();
    let mut states = Vec::new();
    loop {
        let mut b = [0u8; 8];
        match r.read_exact(&mut b) {
            Ok(()) => {}
            Err(e) if e.kind() == ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(e.into()),
        }
        times.push(f64::from_le_bytes(b));
        states.push(
            Field::read_binary(r)
                .map_err(|e| Error::Format(format!("record {}: {e}", times.len())))?,
        );
    }
    Trajectory::new(times, states)
}

/// Appends records to a file as they are produced.
pub struct CheckpointWriter {
    out: BufWriter<File>,
}

impl CheckpointWriter {
    pub fn append(path: &Path) -> Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self {
            out: BufWriter::new(file),
        })
    }

    pub fn record(&mut self, t: f64, u: &Field) -> Result<()> {
        self.out.write_all(&t.to_le_bytes())?;
        u.write_binary(&mut self.out)?;
        self.out.flush()?;
        Ok(())
    }
}

/// Like [`super::evolve`], streaming records to `path`. If `path` already holds
/// records of this run they are kept and integration resumes after the last one.
pub fn evolve_checkpointed(u0: &Field, cfg: &SolverConfig, path: &Path) -> Result<Trajectory> {
    let existing = match File::open(path) {
        Ok(f) => Some(read_checkpoint(&mut BufReader::new(f))?),
        Err(e) if e.kind() == ErrorKind::NotFound => None,
        Err(e) => return Err(e.into()),
    };
    let mut writer = CheckpointWriter::append(path)?;
    let mut traj = match existing {
        Some(t) => {
            t.grid().ensure_same(&cfg.grid)?;
            if t.first_time() != 0.0 {
                return Err(Error::TimeOrigin {
                    first: t.first_time(),
                    requested: 0.0,
                });
            }
            t
        }
        None => {
            let start = initial_state(u0, cfg);
            writer.record(0.0, &start)?;
            Trajectory::single(0.0, start)
        }
    };
    let (t_last, u_last) = traj.last();
    let done = (t_last / cfg.dt).round() as usize;
    let u_last = u_last.clone();
    run_steps(&u_last, 0.0, done, cfg, |t, u| {
        writer.record(t, &u)?;
        traj.push(t, u);
        Ok(())
    })?;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nls::evolve;
    use crate::spectral::data::gaussian;
    use crate::spectral::Grid;

    #[test]
    fn round_trip_in_memory() {
        let g = Grid::new(1, 16, 6.0).unwrap();
        let cfg = SolverConfig::new(g, 0.05, 0.5, 2).unwrap();
        let traj = evolve(&gaussian(g, 1.0, 1.0), &cfg).unwrap();
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &traj).unwrap();
        let back = read_checkpoint(&mut buf.as_slice()).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.traj");
        let g = Grid::new(1, 16, 6.0).unwrap();
        let u0 = gaussian(g, 1.0, 1.0);
        let full_cfg = SolverConfig::new(g, 0.05, 1.0, 4).unwrap();
        let full = evolve(&u0, &full_cfg).unwrap();

        let half_cfg = SolverConfig::new(g, 0.05, 0.4, 4).unwrap();
        evolve_checkpointed(&u0, &half_cfg, &path).unwrap();
        let resumed = evolve_checkpointed(&u0, &full_cfg, &path).unwrap();
        assert_eq!(resumed.times(), full.times());
        for (a, b) in resumed.states().iter().zip(full.states()) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-13);
        }
        let on_disk = read_checkpoint(&mut BufReader::new(File::open(&path).unwrap())).unwrap();
        assert_eq!(on_disk.times(), full.times());
    }
}
