use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::tuple::FrequencyTuple;
use crate::error::{Error, Result};
use crate::spectral::{add, Freq};

type Evaluator = dyn Fn(&[Freq]) -> Complex64 + Send + Sync;

/// A `k`-linear Fourier symbol.
#[derive(Clone)]
pub struct SymbolK {
    arity: usize,
    name: String,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for SymbolK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolK")
            .field("arity", &self.arity)
            .field("name", &self.name)
            .finish()
    }
}

impl SymbolK {
    pub fn new(
        arity: usize,
        name: impl Into<String>,
        eval: impl Fn(&[Freq]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            arity,
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    /// A constant symbol.
    pub fn constant(arity: usize, value: Complex64) -> Self {
        Self::new(arity, format!("const({value})"), move |_| value)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluation without the hyperplane check, for lattice loops.
    #[inline]
    pub fn eval(&self, xi: &[Freq]) -> Complex64 {
        (self.eval)(xi)
    }

    pub fn evaluate(&self, tuple: &FrequencyTuple) -> Result<Complex64> {
        self.check_arity(tuple.k())?;
        Ok(self.eval(tuple.as_slice()))
    }

    pub(crate) fn check_arity(&self, k: usize) -> Result<()> {
        if k != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: k,
            });
        }
        Ok(())
    }

    /// `c * M`.
    pub fn scaled(&self, c: Complex64) -> SymbolK {
        let inner = self.clone();
        SymbolK::new(self.arity, format!("{c}*{}", self.name), move |xi| {
            c * inner.eval(xi)
        })
    }

    /// `M + other`.
    pub fn plus(&self, other: &SymbolK) -> Result<SymbolK> {
        other.check_arity(self.arity)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(SymbolK::new(
            self.arity,
            format!("{}+{}", self.name, other.name),
            move |xi| a.eval(xi) + b.eval(xi),
        ))
    }
}

/// `X(M)(xi_1, .., xi_{k+2}) = M(xi_1 + xi_2 + xi_3, xi_4, .., xi_{k+2})`.
pub fn extend(symbol: &SymbolK) -> SymbolK {
    let inner = symbol.clone();
    let k = symbol.arity;
    SymbolK::new(k + 2, format!("X({})", symbol.name), move |xi| {
        let mut buf = [[0.0; 3]; 8];
        buf[0] = add(&add(&xi[0], &xi[1]), &xi[2]);
        buf[1..k].copy_from_slice(&xi[3..k + 2]);
        inner.eval(&buf[..k])
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The slot maps of the group: permutations of the odd slots times
/// permutations of the even slots. Each entry lists, per slot, which
/// argument it reads.
fn slot_permutations(k: usize) -> Vec<Vec<usize>> {
    let half = k / 2;
    let mut out = Vec::new();
    for pa in permutations(half) {
        for pb in permutations(half) {
            let mut map = vec![0; k];
            for i in 0..half {
                map[2 * i] = 2 * pa[i];
                map[2 * i + 1] = 2 * pb[i] + 1;
            }
            out.push(map);
        }
    }
    out
}

/// `[M]_sym`: the average of `M` over the group generated by the odd-slot
/// permutations, the even-slot permutations and the involution
/// `h M(xi_1, xi_2, xi_3, xi_4, ..) = conj M(xi_2, xi_1, xi_4, xi_3, ..)`,
/// `2 ((k/2)!)^2` elements in all.
///
/// Since `Lambda(h M) = Lambda(M(-.))`, the average leaves `Lambda` unchanged
/// for even symbols but not for odd real ones.
pub fn symmetrize(symbol: &SymbolK) -> Result<SymbolK> {
    symmetrize_with(symbol, true)
}

/// As [`symmetrize`]; `with_involution = false` averages over the
/// permutations only.
pub fn symmetrize_with(symbol: &SymbolK, with_involution: bool) -> Result<SymbolK> {
    let k = symbol.arity;
    if k == 0 || !k.is_multiple_of(2) || k > 8 {
        return Err(Error::Arity {
            expected: 4,
            got: k,
        });
    }
    let maps = slot_permutations(k);
    let count = maps.len() * if with_involution { 2 } else { 1 };
    let inner = symbol.clone();
    Ok(SymbolK::new(
        k,
        format!("[{}]_sym", symbol.name),
        move |xi| {
            let mut buf = [[0.0; 3]; 8];
            let mut acc = Complex64::new(0.0, 0.0);
            for map in &maps {
                for (slot, &src) in map.iter().enumerate() {
                    buf[slot] = xi[src];
                }
                acc += inner.eval(&buf[..k]);
                if with_involution {
                    // h after the permutation: swap neighbouring slot pairs, conjugate.
                    for j in 0..k / 2 {
                        buf.swap(2 * j, 2 * j + 1);
                    }
                    acc += inner.eval(&buf[..k]).conj();
                }
            }
            acc / count as f64
        },
    ))
}
