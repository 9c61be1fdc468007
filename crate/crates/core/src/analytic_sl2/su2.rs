//! 2×2 complex matrices, SU(2) Euler angles, Wigner matrices and K-finite
//! functions on SU(2).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);

/// A 2×2 complex matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: C64::new(1.0, 0.0),
        b: C64::new(0.0, 0.0),
        c: C64::new(0.0, 0.0),
        d: C64::new(1.0, 0.0),
    };

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a unimodular matrix.
    pub fn inv_unimodular(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2 { a: self.a.conj(), b: self.c.conj(), c: self.b.conj(), d: self.d.conj() }
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2 { a: self.a - o.a, b: self.b - o.b, c: self.c - o.c, d: self.d - o.d }
    }

    pub fn frobenius(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// `self · m · self⁻¹` for unitary `self`.
    pub fn conjugate(&self, m: &Mat2) -> Mat2 {
        self.mul(m).mul(&self.adjoint())
    }
}

/// `diag(e^{iθ}, e^{-iθ})`, the torus `M`.
pub fn torus(theta: f64) -> Mat2 {
    let e = C64::from_polar(1.0, theta);
    Mat2::new(e, 0.0.into(), 0.0.into(), e.conj())
}

/// Rotation `[[cos β/2, -sin β/2], [sin β/2, cos β/2]]`.
pub fn tilt(beta: f64) -> Mat2 {
    let (s, c) = (beta / 2.0).sin_cos();
    Mat2::real(c, -s, s, c)
}

/// `torus(a) · tilt(β) · torus(c)`.
pub fn euler(a: f64, beta: f64, c: f64) -> Mat2 {
    torus(a).mul(&tilt(beta)).mul(&torus(c))
}

/// `exp(X)` for `X = diag(x, -x)`.
pub fn exp_a(x: f64) -> Mat2 {
    Mat2::real(x.exp(), 0.0, 0.0, (-x).exp())
}

/// `exp(Y)` for `Y = [[0, z], [0, 0]]`.
pub fn exp_n(z: C64) -> Mat2 {
    Mat2::new(1.0.into(), z, 0.0.into(), 1.0.into())
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

fn binomials(n: usize) -> Vec<Vec<f64>> {
    let mut b = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = 1.0;
        for k in 1..=i {
            b[i][k] = b[i - 1][k - 1] + if k < i { b[i - 1][k] } else { 0.0 };
        }
    }
    b
}

/// Wigner matrix of spin `two_j / 2` at `u ∈ SU(2)`, row-major with indices
/// `p = j + m` running over `0..=two_j`.
///
/// Realised on homogeneous polynomials of degree `2j` in `(x, y)` with
/// orthonormal basis `x^{j+m} y^{j-m} / sqrt((j+m)!(j-m)!)` and action
/// `p(v) ↦ p(uᵀ v)`.
pub fn wigner(two_j: u32, u: &Mat2) -> Vec<C64> {
    let n = two_j as usize;
    let fact = factorials(n);
    let binom = binomials(n);
    // uᵀ v = (a x + c y, b x + d y).
    let (a, b, c, d) = (u.a, u.c, u.b, u.d);
    let mut out = vec![C64::new(0.0, 0.0); (n + 1) * (n + 1)];
    let pow = |z: C64, k: usize| -> C64 { z.powu(k as u32) };
    for q in 0..=n {
        // (a x + b y)^q (c x + d y)^{n-q}; coefficient of x^p y^{n-p}.
        let r = n - q;
        let mut coeff = vec![C64::new(0.0, 0.0); n + 1];
        for i in 0..=q {
            let left = binom[q][i] * pow(a, i) * pow(b, q - i);
            for k in 0..=r {
                let right = binom[r][k] * pow(c, k) * pow(d, r - k);
                coeff[i + k] += left * right;
            }
        }
        let norm_q = (fact[q] * fact[n - q]).sqrt();
        for (p, cp) in coeff.iter().enumerate() {
            let norm_p = (fact[p] * fact[n - p]).sqrt();
            out[p * (n + 1) + q] = cp * norm_p / norm_q;
        }
    }
    out
}

/// One term `coeff · D^j_{m', m}` with spins stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DTerm {
    pub two_j: u32,
    pub two_row: i32,
    pub two_col: i32,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl DTerm {
    pub fn coeff(&self) -> C64 {
        C64::new(self.re, self.im)
    }

    fn row(&self) -> usize {
        ((self.two_row + self.two_j as i32) / 2) as usize
    }

    fn col(&self) -> usize {
        ((self.two_col + self.two_j as i32) / 2) as usize
    }

    fn valid(&self) -> bool {
        let j = self.two_j as i32;
        let ok = |m: i32| m.abs() <= j && (m + j) % 2 == 0;
        ok(self.two_row) && ok(self.two_col)
    }
}

/// A finite linear combination of Wigner matrix entries: a K-finite
/// function on SU(2).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KFinite {
    pub terms: Vec<DTerm>,
}

/// Wigner matrices at one point for every spin a [`KFinite`] needs.
pub struct WignerCache {
    mats: Vec<Option<Vec<C64>>>,
}

impl WignerCache {
    pub fn new(max_two_j: u32, spins: &[u32], u: &Mat2) -> Self {
        let mut mats = vec![None; max_two_j as usize + 1];
        for &s in spins {
            if mats[s as usize].is_none() {
                mats[s as usize] = Some(wigner(s, u));
            }
        }
        WignerCache { mats }
    }

    pub fn entry(&self, two_j: u32, p: usize, q: usize) -> C64 {
        let m = self.mats[two_j as usize].as_ref().expect("spin was requested");
        m[p * (two_j as usize + 1) + q]
    }
}

impl KFinite {
    pub fn zero() -> Self {
        KFinite { terms: Vec::new() }
    }

    pub fn single(two_j: u32, two_row: i32, two_col: i32, coeff: C64) -> Self {
        KFinite { terms: vec![DTerm { two_j, two_row, two_col, re: coeff.re, im: coeff.im }] }
    }

    pub fn plus(mut self, two_j: u32, two_row: i32, two_col: i32, coeff: C64) -> Self {
        self.terms.push(DTerm { two_j, two_row, two_col, re: coeff.re, im: coeff.im });
        self
    }

    pub fn scaled(&self, s: C64) -> Self {
        KFinite {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let c = t.coeff() * s;
                    DTerm { re: c.re, im: c.im, ..*t }
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff() == C64::new(0.0, 0.0))
    }

    pub fn validate(&self) -> Result<(), String> {
        match self.terms.iter().find(|t| !t.valid()) {
            Some(t) => Err(format!("invalid Wigner index {t:?}")),
            None => Ok(()),
        }
    }

    /// Distinct doubled spins, sorted.
    pub fn spins(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.terms.iter().map(|t| t.two_j).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn max_two_j(&self) -> u32 {
        self.terms.iter().map(|t| t.two_j).max().unwrap_or(0)
    }

    /// The common right `M`-weight `2m` of all terms, if there is one.
    pub fn isotype(&self) -> Option<i32> {
        let first = self.terms.first()?.two_col;
        self.terms.iter().all(|t| t.two_col == first).then_some(first)
    }

    pub fn eval(&self, u: &Mat2) -> C64 {
        let cache = WignerCache::new(self.max_two_j(), &self.spins(), u);
        self.eval_cached(&cache)
    }

    pub fn eval_cached(&self, cache: &WignerCache) -> C64 {
        self.terms.iter().map(|t| t.coeff() * cache.entry(t.two_j, t.row(), t.col())).sum()
    }

    /// Coefficient matrices `C_j` with `f = Σ_j Σ_{pq} C_j[p][q] D^j_{pq}`,
    /// indexed by doubled spin.
    pub fn coefficient_matrices(&self) -> Vec<(u32, Vec<C64>)> {
        self.spins()
            .into_iter()
            .map(|s| {
                let n = s as usize + 1;
                let mut m = vec![C64::new(0.0, 0.0); n * n];
                for t in self.terms.iter().filter(|t| t.two_j == s) {
                    m[t.row() * n + t.col()] += t.coeff();
                }
                (s, m)
            })
            .collect()
    }

    pub fn from_coefficient_matrices(mats: &[(u32, Vec<C64>)]) -> Self {
        let mut terms = Vec::new();
        for (s, m) in mats {
            let n = *s as usize + 1;
            for p in 0..n {
                for q in 0..n {
                    let c = m[p * n + q];
                    if c.norm() > 0.0 {
                        terms.push(DTerm {
                            two_j: *s,
                            two_row: 2 * p as i32 - *s as i32,
                            two_col: 2 * q as i32 - *s as i32,
                            re: c.re,
                            im: c.im,
                        });
                    }
                }
            }
        }
        KFinite { terms }
    }
}

/// `D^j(torus(θ))_{pp} = e^{2i m_p θ}` with `m_p = p - j`.
pub fn torus_phase(two_j: u32, p: usize, theta: f64) -> C64 {
    let two_m = 2 * p as i32 - two_j as i32;
    (I * (two_m as f64 * theta)).exp()
}
