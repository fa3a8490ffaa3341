//! Gauss quadrature on the unit interval with an optional algebraic
//! endpoint weight `s^alpha`.
//!
//! With `alpha = 0` this is plain Gauss–Legendre. A nonzero `alpha` absorbs
//! an integrable endpoint singularity into the weight so the remaining
//! integrand stays smooth.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::ln_gamma_pos;

/// Nodes and weights approximating `∫_0^1 s^alpha g(s) ds ≈ Σ w_i g(s_i)`.
#[derive(Debug, Clone)]
pub struct GaussRule<T> {
    alpha: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> GaussRule<T> {
    /// Gauss–Legendre rule with `n` nodes on [0, 1].
    pub fn legendre(n: usize) -> Result<Self> {
        Self::jacobi(n, T::zero())
    }

    /// Gauss–Jacobi rule with `n` nodes for the weight `s^alpha` on [0, 1].
    pub fn jacobi(n: usize, alpha: T) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter {
                name: "nodes",
                value: n as f64,
                reason: "at least 4 quadrature nodes required",
            });
        }
        if !(alpha > -T::one()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha.as_f64(),
                reason: "weight s^alpha must be integrable (alpha > -1)",
            });
        }
        let (x, w) = jacobi_nodes(n, T::zero(), alpha);
        let two = T::lit(2.0);
        let scale = two.powf(alpha + T::one());
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        // jacobi_nodes returns x in decreasing order; emit s ascending.
        for i in (0..n).rev() {
            nodes.push((T::one() + x[i]) / two);
            weights.push(w[i] / scale);
        }
        // The ln-Gamma normalization is shared by every weight; pin it to the
        // exact zeroth moment.
        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        let fix = T::one() / ((alpha + T::one()) * total);
        for w in &mut weights {
            *w = *w * fix;
        }
        Ok(Self {
            alpha,
            nodes,
            weights,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `Σ w_i g(s_i)`, i.e. `∫_0^1 s^alpha g(s) ds`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut g: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&s, &w)| acc + w * g(s))
    }
}

// Newton iteration on the Jacobi polynomial P_n^(a,b) for the weight
// (1-x)^a (1+x)^b on [-1, 1], with the classical asymptotic initial guesses.
// 6.28 in the root guesses is an empirical fit constant, not tau.
#[allow(clippy::approx_constant)]
fn jacobi_nodes<T: Scalar>(n: usize, a: T, b: T) -> (Vec<T>, Vec<T>) {
    let lit = T::lit;
    let nf = T::of_usize(n);
    let one = T::one();
    let two = lit(2.0);
    let ab = a + b;
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let mut z = T::zero();
    let tol = T::epsilon() * lit(8.0);

    for i in 0..n {
        if i == 0 {
            let an = a / nf;
            let bn = b / nf;
            let r1 = (one + a) * (lit(2.78) / (lit(4.0) + nf * nf) + lit(0.768) * an / nf);
            let r2 = one + lit(1.48) * an + lit(0.96) * bn + lit(0.452) * an * an + lit(0.83) * an * bn;
            z = one - r1 / r2;
        } else if i == 1 {
            let r1 = (lit(4.1) + a) / ((one + a) * (one + lit(0.156) * a));
            let r2 = one + lit(0.06) * (nf - lit(8.0)) * (one + lit(0.12) * a) / nf;
            let r3 = one + lit(0.012) * b * (one + lit(0.25) * a.abs()) / nf;
            z = z - (one - z) * r1 * r2 * r3;
        } else if i == 2 {
            let r1 = (lit(1.67) + lit(0.28) * a) / (one + lit(0.37) * a);
            let r2 = one + lit(0.22) * (nf - lit(8.0)) / nf;
            let r3 = one + lit(8.0) * b / ((lit(6.28) + b) * nf * nf);
            z = z - (x[0] - z) * r1 * r2 * r3;
        } else if i == n - 2 {
            let r1 = (one + lit(0.235) * b) / (lit(0.766) + lit(0.119) * b);
            let r2 = one / (one + lit(0.639) * (nf - lit(4.0)) / (one + lit(0.71) * (nf - lit(4.0))));
            let r3 = one / (one + lit(20.0) * a / ((lit(7.5) + a) * nf * nf));
            z = z + (z - x[n - 4]) * r1 * r2 * r3;
        } else if i == n - 1 {
            let r1 = (one + lit(0.37) * b) / (lit(1.67) + lit(0.28) * b);
            let r2 = one / (one + lit(0.22) * (nf - lit(8.0)) / nf);
            let r3 = one / (one + lit(8.0) * a / ((lit(6.28) + a) * nf * nf));
            z = z + (z - x[n - 3]) * r1 * r2 * r3;
        } else {
            z = lit(3.0) * x[i - 1] - lit(3.0) * x[i - 2] + x[i - 3];
        }

        let mut p2 = T::zero();
        let mut pp = T::zero();
        let mut temp = T::zero();
        for _ in 0..100 {
            temp = two + ab;
            let mut p1 = (a - b + temp * z) / two;
            p2 = one;
            for j in 2..=n {
                let jf = T::of_usize(j);
                let p3 = p2;
                p2 = p1;
                temp = two * jf + ab;
                let aa = two * jf * (jf + ab) * (temp - two);
                let bb = (temp - one) * (a * a - b * b + temp * (temp - two) * z);
                let cc = two * (jf - one + a) * (jf - one + b) * temp;
                p1 = (bb * p2 - cc * p3) / aa;
            }
            pp = (nf * (a - b - temp * z) * p1 + two * (nf + a) * (nf + b) * p2)
                / (temp * (one - z * z));
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= tol {
                break;
            }
        }
        x[i] = z;
        let log_norm = ln_gamma_pos(a + nf) + ln_gamma_pos(b + nf)
            - ln_gamma_pos(nf + one)
            - ln_gamma_pos(nf + ab + one);
        w[i] = log_norm.exp() * temp * two.powf(ab) / (pp * p2);
    }
    (x, w)
}
