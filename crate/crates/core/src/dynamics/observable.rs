use std::f64::consts::TAU;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::nilmanifold::Nilmanifold;
use crate::{Error, Result};

/// Default plateau margin for central characters.
pub const DEFAULT_DELTA: f64 = 0.1;

/// Complex observables on `M`, evaluated on reduced second-kind coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Observable {
    /// `e(m . t)` on the torus factor: `t` is the first `d1` coordinates.
    TorusCharacter { m: Vec<i64> },
    /// `e(m t_last)` times a smooth plateau in every other coordinate that
    /// vanishes within `delta` of the boundary of `[0, 1)`. Continuous on `M`
    /// and equivariant under the central flow along the last basis vector.
    CentralCharacter {
        m: i64,
        #[serde(default = "default_delta")]
        delta: f64,
    },
    /// The `index`-th reduced coordinate (real valued, discontinuous on `M`).
    Coordinate { index: usize },
    Constant {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

/// `e(x) = exp(2 pi i x)`, reducing `x` mod 1 first.
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * (x - x.round())).sin_cos();
    Complex64::new(c, s)
}

/// `exp(1 - 1/(1 - y^2))` with `y = (2t - 1)/(1 - 2 delta)`: equal to 1 at
/// the centre, smooth, and zero for `t` within `delta` of 0 or 1.
pub fn plateau(t: f64, delta: f64) -> f64 {
    let y = (2.0 * t - 1.0) / (1.0 - 2.0 * delta);
    if y.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - y * y)).exp()
    }
}

impl Observable {
    pub fn torus(m: Vec<i64>) -> Self {
        Observable::TorusCharacter { m }
    }

    pub fn central(m: i64) -> Self {
        Observable::CentralCharacter { m, delta: DEFAULT_DELTA }
    }

    pub fn constant(c: Complex64) -> Self {
        Observable::Constant { re: c.re, im: c.im }
    }

    pub fn check(&self, nm: &Nilmanifold) -> Result<()> {
        match self {
            Observable::TorusCharacter { m } if m.len() != nm.torus_dim() => {
                Err(Error::Dimension { expected: nm.torus_dim(), got: m.len() })
            }
            Observable::CentralCharacter { delta, .. } if !(*delta > 0.0 && *delta < 0.5) => {
                Err(Error::InvalidArgument(format!("plateau margin {delta} outside (0, 1/2)")))
            }
            Observable::Coordinate { index } if *index >= nm.dim() => {
                Err(Error::Index { index: *index, dim: nm.dim() })
            }
            _ => Ok(()),
        }
    }

    pub fn bound(&self) -> f64 {
        match self {
            Observable::Constant { re, im } => Complex64::new(*re, *im).norm(),
            _ => 1.0,
        }
    }

    /// Evaluates at reduced second-kind coordinates `t`.
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        match self {
            Observable::TorusCharacter { m } => {
                let phase: f64 = m.iter().zip(t).map(|(&k, &x)| k as f64 * x).sum();
                e(phase)
            }
            Observable::CentralCharacter { m, delta } => {
                let (last, rest) = t.split_last().expect("non-empty coordinates");
                let amp: f64 = rest.iter().map(|&x| plateau(x, *delta)).product();
                if amp == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    e(*m as f64 * last) * amp
                }
            }
            Observable::Coordinate { index } => Complex64::new(t[*index], 0.0),
            Observable::Constant { re, im } => Complex64::new(*re, *im),
        }
    }

    /// The `m` with `f(z x) = e(m c) f(x)` for every central
    /// `z = exp(c X_last)`, when `f` is equivariant at all.
    pub fn central_frequency(&self, nm: &Nilmanifold) -> Option<i64> {
        let last = nm.dim() - 1;
        match self {
            Observable::CentralCharacter { m, .. } => Some(*m),
            Observable::Constant { .. } => Some(0),
            Observable::TorusCharacter { m } => Some(if m.len() > last { m[last] } else { 0 }),
            Observable::Coordinate { index } => (*index != last).then_some(0),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Observable::TorusCharacter { m } => format!("torus_character{m:?}"),
            Observable::CentralCharacter { m, delta } => format!("central_character(m={m}, delta={delta})"),
            Observable::Coordinate { index } => format!("coordinate({index})"),
            Observable::Constant { re, im } => format!("constant({re}+{im}i)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_shape() {
        assert_eq!(plateau(0.5, 0.1), 1.0);
        assert_eq!(plateau(0.05, 0.1), 0.0);
        assert_eq!(plateau(0.95, 0.1), 0.0);
        assert!(plateau(0.3, 0.1) > 0.0 && plateau(0.3, 0.1) < 1.0);
        assert!((plateau(0.3, 0.1) - plateau(0.7, 0.1)).abs() < 1e-15);
    }

    #[test]
    fn characters_are_unimodular() {
        let f = Observable::torus(vec![3, -2]);
        for t in [[0.1, 0.7, 0.3], [0.99, 0.0, 0.5]] {
            assert!((f.eval(&t).norm() - 1.0).abs() < 1e-15);
        }
        assert!((Observable::torus(vec![0, 0]).eval(&[0.3, 0.4, 0.1]) - 1.0).norm() < 1e-15);
    }
}
