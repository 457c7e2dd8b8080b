use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// Supported `H < G` pairs. `G / H` is identified with `[0, 1)` for
/// `Z < R` and with `{0, ..., k-1}` for `kZ < Z`, where `H` is written as
/// `Z` through `k j -> j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupPair {
    IntegersInReals,
    Multiples { k: i64 },
}

impl GroupPair {
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Z<R" {
            return Ok(GroupPair::IntegersInReals);
        }
        if let Some(k) = t.strip_suffix("Z<Z").and_then(|k| k.parse::<i64>().ok()).filter(|&k| k >= 1) {
            return Ok(GroupPair::Multiples { k });
        }
        Err(Error::InvalidArgument(format!("unsupported group pair {s:?}; expected \"Z<R\" or \"kZ<Z\"")))
    }

    /// The selector `s(xH)`: the representative of the coset in the
    /// fundamental domain.
    pub fn section(&self, x: &Rational) -> Rational {
        match *self {
            GroupPair::IntegersInReals => Scalar::frac(x),
            GroupPair::Multiples { k } => x - (x / Rational::from_integer(k.into())).floor() * Rational::from_integer(k.into()),
        }
    }

    fn check(&self, g: &Rational, x: &Rational) -> Result<()> {
        match *self {
            GroupPair::IntegersInReals => {
                if *x < Rational::from_integer(0.into()) || *x >= Rational::from_integer(1.into()) {
                    return Err(Error::InvalidArgument(format!("coset representative {x} outside [0, 1)")));
                }
            }
            GroupPair::Multiples { k } => {
                if !g.is_integer() || !x.is_integer() || self.section(x) != *x {
                    return Err(Error::InvalidArgument(format!("need integer g and x in 0..{k}, got g = {g}, x = {x}")));
                }
            }
        }
        Ok(())
    }
}

/// `theta(g, xH) = s(g x H)^{-1} g s(xH)`, computed from the selector.
pub fn selector_theta_generic(pair: &GroupPair, g: &Rational, x: &Rational) -> Result<Rational> {
    pair.check(g, x)?;
    let sum = g + x;
    let diff = &sum - pair.section(&sum);
    Ok(match *pair {
        GroupPair::IntegersInReals => diff,
        GroupPair::Multiples { k } => diff / Rational::from_integer(k.into()),
    })
}

/// Closed forms: `floor(t + {r})` for `Z < R`, `floor((x + m) / k)` for `kZ < Z`.
pub fn selector_theta(pair: &GroupPair, g: &Rational, x: &Rational) -> Result<Rational> {
    pair.check(g, x)?;
    Ok(match *pair {
        GroupPair::IntegersInReals => (g + x).floor(),
        GroupPair::Multiples { k } => ((g + x) / Rational::from_integer(k.into())).floor(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    #[test]
    fn closed_form_values() {
        let real = GroupPair::IntegersInReals;
        assert_eq!(selector_theta(&real, &rational(17, 10), &rational(1, 2)).unwrap(), int(2));
        let three = GroupPair::parse("3Z<Z").unwrap();
        assert_eq!(selector_theta(&three, &int(1), &int(0)).unwrap(), int(0));
        assert_eq!(selector_theta(&three, &int(1), &int(1)).unwrap(), int(0));
        assert_eq!(selector_theta(&three, &int(1), &int(2)).unwrap(), int(1));
        assert!(GroupPair::parse("Q<R").is_err());
        assert!(selector_theta(&three, &int(1), &int(3)).is_err());
    }
}
