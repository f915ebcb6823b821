use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

/// Unnormalized in-place transform of a row-major `m^dim` block along every axis.
pub(crate) fn fft_nd(data: &mut [Complex64], dim: usize, m: usize, direction: Direction) {
    debug_assert_eq!(data.len(), m.pow(dim as u32));
    PLANNER.with(|planner| {
        let mut planner = planner.borrow_mut();
        let fft = match direction {
            Direction::Forward => planner.plan_fft_forward(m),
            Direction::Inverse => planner.plan_fft_inverse(m),
        };
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        // last axis is contiguous
        for line in data.chunks_exact_mut(m) {
            fft.process_with_scratch(line, &mut scratch);
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for axis in 0..dim.saturating_sub(1) {
            let stride = m.pow((dim - 1 - axis) as u32);
            let block = stride * m;
            for outer in (0..data.len()).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    for (j, b) in buf.iter_mut().enumerate() {
                        *b = data[base + j * stride];
                    }
                    fft.process_with_scratch(&mut buf, &mut scratch);
                    for (j, b) in buf.iter().enumerate() {
                        data[base + j * stride] = *b;
                    }
                }
            }
        }
    });
}
