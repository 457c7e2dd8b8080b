//! Dynkin form of the Baker-Campbell-Hausdorff series.
//!
//! `log(exp X exp Y) = sum_w c(w) [w]`, where `w` runs over words in the
//! letters `X`, `Y`, `[w]` is the right-nested bracket
//! `[w_1, [w_2, ..., [w_{m-1}, w_m]...]]`, and
//!
//! ```text
//! c(w) = sum over factorizations w = X^{r_1} Y^{s_1} ... X^{r_n} Y^{s_n}, r_i + s_i >= 1, of
//!        (-1)^{n-1} / (n * |w| * prod r_i! s_i!)
//! ```
//!
//! In a nilpotent algebra of class `k` every bracket of more than `k` letters
//! vanishes, so truncating at word length `k` is exact.

use num::{One, Zero};

use crate::scalar::{Coeff, Coords, Rational, Scalar};

/// Largest word length the series is generated for.
pub const MAX_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// Every word of length `1..=depth` with a nonzero Dynkin coefficient.
pub fn dynkin_terms(depth: usize) -> Vec<(Vec<Letter>, Rational)> {
    assert!(depth <= MAX_DEPTH, "Dynkin series generated only up to depth {MAX_DEPTH}");
    let mut out = Vec::new();
    for len in 1..=depth {
        for bits in 0u32..(1 << len) {
            let word: Vec<Letter> =
                (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 0 { Letter::X } else { Letter::Y }).collect();
            let c = dynkin_coefficient(&word);
            if !c.is_zero() {
                out.push((word, c));
            }
        }
    }
    out
}

/// Coefficient of the right-nested bracket of `word` in the Dynkin series.
pub fn dynkin_coefficient(word: &[Letter]) -> Rational {
    let m = word.len();
    if m == 0 {
        return Rational::zero();
    }
    // by_blocks[n] = sum over factorizations into n blocks of 1 / prod r_i! s_i!
    let mut by_blocks = vec![Rational::zero(); m + 1];
    factorizations(word, 0, 0, Rational::one(), &mut by_blocks);
    let mut total = Rational::zero();
    for (n, weight) in by_blocks.iter().enumerate().skip(1) {
        if weight.is_zero() {
            continue;
        }
        let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
        total += sign * weight / Rational::from_integer(((n * m) as i64).into());
    }
    total
}

fn factorizations(word: &[Letter], pos: usize, blocks: usize, weight: Rational, acc: &mut [Rational]) {
    if pos == word.len() {
        acc[blocks] += weight;
        return;
    }
    let run_x = word[pos..].iter().take_while(|&&l| l == Letter::X).count();
    for r in 0..=run_x {
        let after_x = pos + r;
        let run_y = if r == run_x { word[after_x..].iter().take_while(|&&l| l == Letter::Y).count() } else { 0 };
        for s in 0..=run_y {
            if r + s == 0 {
                continue;
            }
            let w = &weight / Rational::from_integer((factorial(r) * factorial(s)).into());
            factorizations(word, after_x + s, blocks + 1, w, acc);
        }
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Evaluation plan for the truncated series: a suffix tree of right-nested
/// brackets, so each needed bracket is computed once per product.
#[derive(Debug, Clone)]
pub struct BchPlan {
    depth: usize,
    nodes: Vec<Node>,
}

#[derive(Debug, Clone)]
struct Node {
    letter: Letter,
    parent: Option<usize>,
    coeff: Option<Coeff>,
}

impl BchPlan {
    pub fn new(depth: usize) -> Self {
        let terms = dynkin_terms(depth);
        // A node is kept when some term has it as a suffix. Suffixes ending in
        // a repeated letter ([X, X]) vanish identically and are dropped.
        let mut suffixes: Vec<Vec<Letter>> = Vec::new();
        for (w, _) in &terms {
            for start in (0..w.len()).rev() {
                let s = w[start..].to_vec();
                if !suffixes.contains(&s) {
                    suffixes.push(s);
                }
            }
        }
        suffixes.retain(|s| !(s.len() >= 2 && s[s.len() - 1] == s[s.len() - 2]));
        suffixes.sort_by_key(|s| (s.len(), s.clone()));
        let nodes = suffixes
            .iter()
            .map(|s| Node {
                letter: s[0],
                parent: if s.len() == 1 { None } else { suffixes.iter().position(|p| p[..] == s[1..]) },
                coeff: terms.iter().find(|(w, _)| w == s).map(|(_, c)| Coeff::new(c.clone())),
            })
            .collect();
        BchPlan { depth, nodes }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `(letter, parent, coefficient)` per node, parents before children.
    pub(crate) fn nodes(&self) -> impl Iterator<Item = (Letter, Option<usize>, Option<&Coeff>)> {
        self.nodes.iter().map(|n| (n.letter, n.parent, n.coeff.as_ref()))
    }

    /// `log(exp a exp b)` given a bracket on coordinate vectors.
    pub fn eval<S, F>(&self, a: &[S], b: &[S], mut bracket: F) -> Coords<S>
    where
        S: Scalar,
        F: FnMut(&[S], &[S]) -> Coords<S>,
    {
        let n = a.len();
        let mut out: Coords<S> = a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
        let mut vals: smallvec::SmallVec<[Option<Coords<S>>; 24]> = smallvec::SmallVec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let letter_vec = match node.letter {
                Letter::X => a,
                Letter::Y => b,
            };
            let v = match node.parent {
                None => Some(letter_vec.iter().cloned().collect()),
                Some(p) => vals[p].as_ref().and_then(|inner: &Coords<S>| {
                    let v = bracket(letter_vec, inner);
                    (!v.iter().all(Zero::is_zero)).then_some(v)
                }),
            };
            if let (Some(v), Some(c), Some(_)) = (&v, &node.coeff, node.parent) {
                let c = S::from_coeff(c);
                for k in 0..n {
                    if !v[k].is_zero() {
                        out[k] = out[k].clone() + c.clone() * v[k].clone();
                    }
                }
            }
            vals.push(v);
        }
        out
    }
}
