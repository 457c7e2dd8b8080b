use crate::nilmanifold::{GroupPoint, SuspensionContext};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// The `k`-discrete suspension of a map `T`: on `Y x {0, ..., k-1}`,
/// `(y, j) -> (y, j + 1)` below the top level and `(y, k-1) -> (T y, 0)`.
#[derive(Debug, Clone)]
pub struct DiscreteSuspension<F> {
    map: F,
    k: u64,
}

pub fn discrete_suspension<Y, F: Fn(&Y) -> Y>(map: F, k: u64) -> Result<DiscreteSuspension<F>> {
    if k == 0 {
        return Err(Error::InvalidArgument("discrete suspension needs k >= 1".into()));
    }
    Ok(DiscreteSuspension { map, k })
}

impl<F> DiscreteSuspension<F> {
    pub fn levels(&self) -> u64 {
        self.k
    }

    pub fn step<Y: Clone>(&self, (y, j): &(Y, u64)) -> (Y, u64)
    where
        F: Fn(&Y) -> Y,
    {
        if j + 1 < self.k {
            (y.clone(), j + 1)
        } else {
            ((self.map)(y), 0)
        }
    }

    pub fn iterate<Y: Clone>(&self, p: &(Y, u64), n: u64) -> (Y, u64)
    where
        F: Fn(&Y) -> Y,
    {
        (0..n).fold(p.clone(), |acc, _| self.step(&acc))
    }
}

/// `u~^t x Gamma~` for the suspension of `phi = (exp v) A`. Here `v` is
/// `log u` in base first-kind coordinates and `x` a point of `G~`.
pub fn suspension_flow_sample<S: Scalar>(
    susp: &SuspensionContext,
    v: &[S],
    x: &GroupPoint<S>,
    t: &S,
) -> Result<GroupPoint<S>> {
    susp.base().algebra().check_len(v)?;
    susp.extended().check(x)?;
    Ok(susp.flow(&susp.generator(v), x, t))
}
