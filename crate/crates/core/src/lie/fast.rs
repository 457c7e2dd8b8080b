//! Allocation-free `f64` group law on fixed-size arrays. Every routine
//! repeats the floating-point operations of its generic counterpart in the
//! same order, so both paths give identical results.

use super::bch::{Letter, MAX_DEPTH};
use super::LieAlgebra;

/// Largest dimension served by [`FloatLaw`].
pub const FAST_DIM: usize = 8;

/// Coordinates padded with zeros to `FAST_DIM`.
pub type FloatPoint = [f64; FAST_DIM];

#[derive(Debug, Clone, Copy)]
struct Node {
    right: bool,
    parent: Option<usize>,
    coeff: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct FloatLaw {
    dim: usize,
    class: usize,
    consts: Vec<(usize, usize, usize, f64)>,
    nodes: Vec<Node>,
    recips: [f64; MAX_DEPTH],
}

impl FloatLaw {
    /// `None` when the algebra is wider than `FAST_DIM`.
    pub fn new(alg: &LieAlgebra) -> Option<Self> {
        if alg.dim() > FAST_DIM {
            return None;
        }
        let consts = alg.structure_constants().iter().map(|s| (s.i, s.j, s.k, s.c.approx)).collect();
        let nodes = alg
            .plan()
            .nodes()
            .map(|(l, parent, c)| Node { right: l == Letter::Y, parent, coeff: c.map(|c| c.approx) })
            .collect();
        let mut recips = [0.0; MAX_DEPTH];
        for (j, r) in recips.iter_mut().enumerate() {
            *r = alg.recip(j + 1).approx;
        }
        Some(FloatLaw { dim: alg.dim(), class: alg.class(), consts, nodes, recips })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, t: &[f64]) -> FloatPoint {
        let mut p = [0.0; FAST_DIM];
        p[..self.dim].copy_from_slice(&t[..self.dim]);
        p
    }

    #[inline]
    fn is_zero(&self, v: &FloatPoint) -> bool {
        v[..self.dim].iter().all(|x| *x == 0.0)
    }

    #[inline]
    pub fn bracket(&self, x: &FloatPoint, y: &FloatPoint) -> FloatPoint {
        let mut out = [0.0; FAST_DIM];
        for &(i, j, k, c) in &self.consts {
            let w = x[i] * y[j] - x[j] * y[i];
            if w != 0.0 {
                out[k] += c * w;
            }
        }
        out
    }

    pub fn bch(&self, a: &FloatPoint, b: &FloatPoint) -> FloatPoint {
        if self.consts.is_empty() {
            let mut out = [0.0; FAST_DIM];
            for k in 0..self.dim {
                out[k] = a[k] + b[k];
            }
            return out;
        }
        match self.nodes.len() {
            0..=4 => self.bch_with::<4>(a, b),
            5..=10 => self.bch_with::<10>(a, b),
            _ => self.bch_with::<48>(a, b),
        }
    }

    #[inline]
    fn bch_with<const M: usize>(&self, a: &FloatPoint, b: &FloatPoint) -> FloatPoint {
        let n = self.dim;
        let mut out = [0.0; FAST_DIM];
        for k in 0..n {
            out[k] = a[k] + b[k];
        }
        let mut vals = [[0.0; FAST_DIM]; M];
        let mut live = [false; M];
        for (idx, node) in self.nodes.iter().enumerate() {
            let letter = if node.right { b } else { a };
            match node.parent {
                None => {
                    vals[idx] = *letter;
                    live[idx] = true;
                }
                Some(p) if live[p] => {
                    let v = self.bracket(letter, &vals[p]);
                    if self.is_zero(&v) {
                        continue;
                    }
                    if let Some(c) = node.coeff {
                        for k in 0..n {
                            if v[k] != 0.0 {
                                out[k] += c * v[k];
                            }
                        }
                    }
                    vals[idx] = v;
                    live[idx] = true;
                }
                Some(_) => {}
            }
        }
        out
    }

    pub fn second_to_first(&self, t: &FloatPoint) -> FloatPoint {
        if self.consts.is_empty() {
            return *t;
        }
        let mut a = [0.0; FAST_DIM];
        for i in 0..self.dim {
            if t[i] == 0.0 {
                continue;
            }
            let mut step = [0.0; FAST_DIM];
            step[i] = t[i];
            a = self.bch(&a, &step);
        }
        a
    }

    /// Reduced second-kind coordinates of `exp(a) Gamma`; see
    /// `Nilmanifold::reduced_second`.
    pub fn reduced_second(&self, a: &FloatPoint) -> FloatPoint {
        let n = self.dim;
        let mut t = [0.0; FAST_DIM];
        if self.consts.is_empty() {
            for i in 0..n {
                t[i] = frac_in_unit(a[i]).0;
            }
            return t;
        }
        let mut h = *a;
        for i in 0..n {
            let ti = h[i];
            let (r, m) = frac_in_unit(ti);
            t[i] = r;
            if i + 1 == n {
                break;
            }
            if ti != 0.0 {
                let mut peel = [0.0; FAST_DIM];
                peel[i] = -ti;
                h = self.bch(&peel, &h);
                h[i] = 0.0;
            }
            if m != 0.0 {
                h = self.conjugate_by_generator(i, m, &h);
            }
        }
        t
    }

    fn conjugate_by_generator(&self, i: usize, m: f64, h: &FloatPoint) -> FloatPoint {
        let mut x = [0.0; FAST_DIM];
        x[i] = m;
        let mut out = *h;
        let mut term = *h;
        for j in 1..self.class {
            term = self.bracket(&x, &term);
            if self.is_zero(&term) {
                break;
            }
            let inv = self.recips[j - 1];
            for k in 0..self.dim {
                term[k] *= inv;
                out[k] += term[k];
            }
        }
        out
    }
}

#[inline]
fn frac_in_unit(x: f64) -> (f64, f64) {
    let mut m = x.floor();
    let mut r = x - m;
    if r >= 1.0 {
        r -= 1.0;
        m += 1.0;
    }
    if r < 0.0 {
        r = 0.0;
    }
    (r, m)
}
