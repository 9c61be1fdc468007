//! Iwasawa decomposition `g = κ(g)·exp(H(g))·n` in SL(2,ℂ).

use super::su2::{exp_a, exp_n, Mat2, C64};
use super::Sl2Error;

/// Factors of `g = kappa · diag(e^h, e^{-h}) · [[1, n], [0, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IwasawaFactors {
    pub kappa: Mat2,
    pub h: f64,
    pub n: C64,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> Mat2 {
        self.kappa.mul(&exp_a(self.h)).mul(&exp_n(self.n))
    }
}

/// Checked decomposition; rejects matrices with `|det g - 1| ≥ 1e-10`.
pub fn iwasawa(g: &Mat2) -> Result<IwasawaFactors, Sl2Error> {
    let det = g.det();
    if (det - 1.0).norm() >= 1e-10 {
        return Err(Sl2Error::NotUnimodular { det: det.norm() });
    }
    Ok(iwasawa_unchecked(g))
}

/// Gram–Schmidt on the first column: `H = ln ‖g e₁‖`.
#[inline]
pub fn iwasawa_unchecked(g: &Mat2) -> IwasawaFactors {
    let (p, r, q, s) = (g.a, g.c, g.b, g.d);
    let n2 = p.norm_sqr() + r.norm_sqr();
    let norm = n2.sqrt();
    let kappa = Mat2::new(p / norm, -r.conj() / norm, r / norm, p.conj() / norm);
    let n = (p.conj() * q + r.conj() * s) / n2;
    IwasawaFactors { kappa, h: 0.5 * n2.ln(), n }
}

/// `H` and `n` only, skipping `κ`.
#[inline]
pub fn iwasawa_an(g: &Mat2) -> (f64, C64) {
    let n2 = g.a.norm_sqr() + g.c.norm_sqr();
    (0.5 * n2.ln(), (g.a.conj() * g.b + g.c.conj() * g.d) / n2)
}
