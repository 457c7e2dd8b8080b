use std::sync::Arc;

use super::AbelianGroup;
use crate::scalar::Scalar;
use crate::{Error, Result};

type Step<X> = Arc<dyn Fn(&X) -> X + Send + Sync>;

/// A map `T`, with its inverse when negative times are needed.
#[derive(Clone)]
pub struct Map<X> {
    forward: Step<X>,
    backward: Option<Step<X>>,
}

impl<X: Clone> Map<X> {
    pub fn new(forward: impl Fn(&X) -> X + Send + Sync + 'static) -> Self {
        Map { forward: Arc::new(forward), backward: None }
    }

    pub fn invertible(
        forward: impl Fn(&X) -> X + Send + Sync + 'static,
        backward: impl Fn(&X) -> X + Send + Sync + 'static,
    ) -> Self {
        Map { forward: Arc::new(forward), backward: Some(Arc::new(backward)) }
    }

    pub fn apply(&self, x: &X) -> X {
        (self.forward)(x)
    }

    pub fn apply_inverse(&self, x: &X) -> Result<X> {
        self.backward.as_ref().map(|b| b(x)).ok_or_else(|| Error::InvalidArgument("map has no inverse".into()))
    }

    /// `T^n x`.
    pub fn power(&self, x: &X, n: i64) -> Result<X> {
        let mut y = x.clone();
        for _ in 0..n.unsigned_abs() {
            y = if n >= 0 { self.apply(&y) } else { self.apply_inverse(&y)? };
        }
        Ok(y)
    }
}

/// `phi: X -> K` over a base map `T`.
#[derive(Clone)]
pub struct Cocycle<X, K> {
    base: Map<X>,
    phi: Arc<dyn Fn(&X) -> K + Send + Sync>,
    zero: K,
}

impl<X: Clone, K: AbelianGroup> Cocycle<X, K> {
    /// `zero` fixes the identity of `K` (its dimension, for tori).
    pub fn new(base: Map<X>, zero: K, phi: impl Fn(&X) -> K + Send + Sync + 'static) -> Self {
        Cocycle { base, phi: Arc::new(phi), zero }
    }

    pub fn base(&self) -> &Map<X> {
        &self.base
    }

    pub fn value(&self, x: &X) -> K {
        (self.phi)(x)
    }

    pub fn zero(&self) -> K {
        self.zero.clone()
    }
}

/// `phi^(n)(x)`: `phi(x) + ... + phi(T^{n-1} x)` for `n > 0`, `0` for
/// `n = 0`, and `-(phi(T^n x) + ... + phi(T^{-1} x))` for `n < 0`.
pub fn cocycle_sum<X: Clone, K: AbelianGroup>(c: &Cocycle<X, K>, x: &X, n: i64) -> Result<K> {
    let mut acc = c.zero();
    if n > 0 {
        let mut y = x.clone();
        for _ in 0..n {
            acc = acc.plus(&c.value(&y));
            y = c.base.apply(&y);
        }
    } else if n < 0 {
        let mut y = x.clone();
        for _ in 0..-n {
            y = c.base.apply_inverse(&y)?;
            acc = acc.plus(&c.value(&y));
        }
        acc = acc.negate();
    }
    Ok(acc)
}

/// `T_phi(x, k) = (T x, phi(x) + k)`.
pub fn extension_step<X: Clone, K: AbelianGroup>(c: &Cocycle<X, K>, (x, k): &(X, K)) -> (X, K) {
    (c.base.apply(x), c.value(x).plus(k))
}

/// `T_phi^n (x, k)` by repeated single steps.
pub fn extension_iterate<X: Clone, K: AbelianGroup>(c: &Cocycle<X, K>, p: &(X, K), n: u64) -> (X, K) {
    (0..n).fold(p.clone(), |acc, _| extension_step(c, &acc))
}

/// The suspension flow over `T`: `(y, s) -> (T^{floor(t + s)} y, {t + s})`
/// for `s` in `[0, 1)`.
pub fn suspension_flow_over_map<Y: Clone, S: Scalar>(map: &Map<Y>, t: &S, (y, s): &(Y, S)) -> Result<(Y, S)> {
    let sum = t.clone() + s.clone();
    let jumps = sum.floor();
    let n = jumps.as_f64();
    if n.abs() > i64::MAX as f64 / 2.0 {
        return Err(Error::InvalidArgument(format!("flow time {} too large", t.as_f64())));
    }
    Ok((map.power(y, n as i64)?, sum - jumps))
}

/// `phi~(t, (x, s)) = phi^(floor(t + s))(x)`, the cocycle of the suspension
/// flow lifted from `phi`.
pub fn lifted_cocycle<X: Clone, K: AbelianGroup, S: Scalar>(c: &Cocycle<X, K>, t: &S, (x, s): &(X, S)) -> Result<K> {
    let n = (t.clone() + s.clone()).floor().as_f64() as i64;
    cocycle_sum(c, x, n)
}
