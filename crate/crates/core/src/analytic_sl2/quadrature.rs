//! Quadrature rules: Gauss–Legendre on intervals and a product rule for the
//! normalized Haar measure on SU(2).

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use super::su2::{euler, wigner, Mat2, C64};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes increasing.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n.max(1)).expect("positive");
    let mut pairs = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// A fixed Gauss–Legendre rule that can be mapped onto any interval.
#[derive(Clone, Debug)]
pub struct Rule {
    pairs: Vec<(f64, f64)>,
}

impl Rule {
    pub fn new(n: usize) -> Self {
        Rule { pairs: gauss_legendre(n) }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Nodes and weights on `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.pairs.iter().map(move |&(x, w)| (mid + half * x, half * w))
    }
}

/// `n` equispaced nodes on `[0, 2π)` with weight `1/n`. Exact for
/// trigonometric polynomials of degree below `n`.
pub fn periodic(n: usize) -> Vec<(f64, f64)> {
    let n = n.max(1);
    (0..n).map(|k| (2.0 * std::f64::consts::PI * k as f64 / n as f64, 1.0 / n as f64)).collect()
}

/// A quadrature node on SU(2) with its Euler angles.
#[derive(Clone, Copy, Debug)]
pub struct KNode {
    pub a: f64,
    pub beta: f64,
    pub c: f64,
    pub u: Mat2,
    pub w: f64,
}

/// Product rule for `k = torus(a)·tilt(β)·torus(c)` with Haar density
/// proportional to `sin β`; total mass 1.
#[derive(Clone, Debug)]
pub struct Su2Quadrature {
    pub nodes: Vec<KNode>,
    pub angle_order: usize,
    pub polar_order: usize,
}

impl Su2Quadrature {
    /// `angle` equispaced nodes in each of `a`, `c`; `polar` Gauss–Legendre
    /// nodes in `cos β`.
    pub fn new(angle: usize, polar: usize) -> Self {
        Self::build(angle, polar, false)
    }

    /// Rule for right-`M`-invariant integrands: `c` is pinned to 0.
    pub fn sphere(angle: usize, polar: usize) -> Self {
        Self::build(angle, polar, true)
    }

    fn build(angle: usize, polar: usize, pin_c: bool) -> Self {
        let ring = periodic(angle);
        let cs = if pin_c { vec![(0.0, 1.0)] } else { ring.clone() };
        let mut nodes = Vec::with_capacity(ring.len() * cs.len() * polar);
        for (u, wu) in gauss_legendre(polar) {
            let beta = u.clamp(-1.0, 1.0).acos();
            for &(a, wa) in &ring {
                for &(c, wc) in &cs {
                    nodes.push(KNode { a, beta, c, u: euler(a, beta, c), w: 0.5 * wu * wa * wc });
                }
            }
        }
        Su2Quadrature { nodes, angle_order: angle, polar_order: polar }
    }

    pub fn integrate<F: Fn(&KNode) -> C64>(&self, f: F) -> C64 {
        self.nodes.iter().map(|n| f(n) * n.w).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.nodes.iter().map(|n| n.w).sum()
    }
}

/// Largest deviation of `⟨D^j_{ab}, D^{j'}_{a'b'}⟩` from `δ/(2j+1)` over all
/// spins up to `max_two_j / 2`.
pub fn schur_residual(q: &Su2Quadrature, max_two_j: u32) -> f64 {
    let spins: Vec<u32> = (0..=max_two_j).collect();
    let tables: Vec<Vec<Vec<C64>>> = q
        .nodes
        .iter()
        .map(|n| spins.iter().map(|&s| wigner(s, &n.u)).collect())
        .collect();
    let mut worst: f64 = 0.0;
    for (i1, &s1) in spins.iter().enumerate() {
        let n1 = s1 as usize + 1;
        for (i2, &s2) in spins.iter().enumerate().skip(i1) {
            let n2 = s2 as usize + 1;
            for e1 in 0..n1 * n1 {
                for e2 in 0..n2 * n2 {
                    let ip: C64 = q
                        .nodes
                        .iter()
                        .zip(&tables)
                        .map(|(n, t)| t[i1][e1].conj() * t[i2][e2] * n.w)
                        .sum();
                    let want = if s1 == s2 && e1 == e2 { 1.0 / n1 as f64 } else { 0.0 };
                    worst = worst.max((ip - want).norm());
                }
            }
        }
    }
    worst
}
