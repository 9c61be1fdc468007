//! Matrix coefficients of scaled sections and of their motion-group limit.
//!
//! Notation: `g = k·exp(X)·exp(Y)` with `X = diag(x, -x)` and
//! `Y = [[0, z], [0, 0]]`; a section is `F = c(k)·b(x, z, t)`. For vectors
//! `φ, ψ` the K-integrals against `c` collapse to the K-finite functions
//!
//! * `Φ(κ) = ∫ conj φ(k₁) c(k₁κ) dk₁`
//! * `φ_c(k') = ∫ conj c(k) φ(kk') dk`
//!
//! computed once per scenario by exact quadrature on SU(2).

use rayon::prelude::*;

use super::iwasawa::{iwasawa_an, iwasawa_unchecked};
use super::quadrature::{gauss_legendre, periodic, Rule, Su2Quadrature};
use super::scenario::{Orders, Sl2Scenario};
use super::sections::Profile;
use super::su2::{euler, exp_a, exp_n, tilt, torus_phase, wigner, KFinite, Mat2, WignerCache, C64};
use super::{pool, GroupModel, Sl2Error};

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Number of cells used to bracket support crossings along a ray.
const SCAN_CELLS: usize = 64;

/// Scenario data with the K-convolutions already carried out.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub profile: Profile,
    pub psi: KFinite,
    /// `Φ` as above.
    pub big_phi: KFinite,
    /// `φ_c` as above.
    pub phi_c: KFinite,
    pub same_isotype: bool,
    pub trivial: bool,
}

/// `⟨f, D^j_{pq}⟩` for every entry of each requested spin.
fn projections(f: &KFinite, spins: &[u32], q: &Su2Quadrature) -> Vec<(u32, Vec<C64>)> {
    spins
        .iter()
        .map(|&s| {
            let n = s as usize + 1;
            let mut acc = vec![ZERO; n * n];
            for node in &q.nodes {
                let fv = f.eval(&node.u).conj() * node.w;
                let d = wigner(s, &node.u);
                for (a, e) in acc.iter_mut().zip(&d) {
                    *a += fv * e;
                }
            }
            (s, acc)
        })
        .collect()
}

/// `∫ conj f(k) g(k·κ) dk` as a K-finite function of `κ`.
fn left_convolve(f: &KFinite, g: &KFinite, q: &Su2Quadrature) -> KFinite {
    let spins = g.spins();
    let proj = projections(f, &spins, q);
    let mut mats: Vec<(u32, Vec<C64>)> =
        spins.iter().map(|&s| (s, vec![ZERO; (s as usize + 1).pow(2)])).collect();
    for t in &g.terms {
        let n = t.two_j as usize + 1;
        let p = ((t.two_row + t.two_j as i32) / 2) as usize;
        let col = ((t.two_col + t.two_j as i32) / 2) as usize;
        let (_, pr) = proj.iter().find(|(s, _)| *s == t.two_j).expect("spin present");
        let (_, m) = mats.iter_mut().find(|(s, _)| *s == t.two_j).expect("spin present");
        // g(kκ) ∋ D_{p q}(kκ) = Σ_s D_{p s}(k) D_{s q}(κ).
        for s in 0..n {
            m[s * n + col] += t.coeff() * pr[p * n + s];
        }
    }
    KFinite::from_coefficient_matrices(&mats)
}

pub fn prepare(s: &Sl2Scenario) -> Result<Prepared, Sl2Error> {
    let section = s.section_spec()?;
    let (phi, psi) = (s.phi(), s.psi());
    let top = [phi.max_two_j(), psi.max_two_j(), section.k_part.max_two_j()].into_iter().max().unwrap_or(0);
    // Exact for products of two Wigner entries of spin ≤ top/2.
    let q = Su2Quadrature::new(2 * top as usize + 2, top as usize + 2);
    let big_phi = left_convolve(&phi, &section.k_part, &q);
    let phi_c = left_convolve(&section.k_part, &phi, &q);
    // Torus phases of Φ·ψ reach degree top_Φ + top_ψ.
    let degree = (big_phi.max_two_j() + psi.max_two_j()) as usize;
    if s.orders.k_angle <= degree {
        return Err(Sl2Error::Invalid(format!("k_angle must exceed {degree} for these vectors")));
    }
    let trivial = section.is_zero() || phi.is_zero() || psi.is_zero() || big_phi.is_zero();
    Ok(Prepared {
        profile: section.profile,
        same_isotype: s.vectors_in_isotype(),
        psi,
        big_phi,
        phi_c,
        trivial,
    })
}

/// A value together with its change under doubled quadrature orders.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: C64,
    pub coarse: C64,
    pub delta: f64,
}

impl Estimate {
    /// `|Δ| ≤ tol · max(1, |value|)`.
    pub fn converged(&self, tol: f64) -> bool {
        self.delta <= tol * self.value.norm().max(1.0)
    }
}

fn estimate<F>(orders: Orders, tol: f64, what: &str, f: F) -> Result<Estimate, Sl2Error>
where
    F: Fn(Orders) -> C64,
{
    let coarse = f(orders);
    let value = f(orders.doubled());
    let est = Estimate { value, coarse, delta: (value - coarse).norm() };
    if est.converged(tol) {
        Ok(est)
    } else {
        Err(Sl2Error::QuadratureUnconverged { what: what.to_string(), delta: est.delta, tol })
    }
}

/// Nodes of the `(X, Y)` ball `r < 1` in ellipsoidal coordinates: returns
/// `(x, z, weight)` with the Jacobian `4 r² sin θ` included.
fn ball_nodes(orders: &Orders) -> Vec<(f64, C64, f64)> {
    let radial = Rule::new(orders.radial);
    let polar = gauss_legendre(orders.polar);
    let az = periodic(orders.azimuth);
    let mut out = Vec::with_capacity(orders.radial * orders.polar * orders.azimuth);
    for (r, wr) in radial.on(0.0, 1.0) {
        for &(u, wu) in &polar {
            let s = (1.0 - u * u).max(0.0).sqrt();
            for &(ph, wp) in &az {
                let z = C64::from_polar(2.0 * r * s, ph);
                out.push((r * u, z, GroupModel::S_JACOBIAN * r * r * wr * wu * wp * TWO_PI));
            }
        }
    }
    out
}

/// `∫ conj φ(k) ψ(k^{-1})`-type outer sum shared by the two `t = 0`
/// coefficients: `Σ_k w Φ(k) ψ(k⁻¹) inner(β)`.
fn motion_outer(p: &Prepared, orders: &Orders, inner: &[C64]) -> C64 {
    let ring = periodic(orders.k_angle);
    let polar = gauss_legendre(orders.k_polar);
    let top = p.big_phi.max_two_j().max(p.psi.max_two_j());
    let phi_spins = p.big_phi.spins();
    let psi_spins = p.psi.spins();
    let mut total = ZERO;
    for (ib, &(u, wu)) in polar.iter().enumerate() {
        let beta = u.clamp(-1.0, 1.0).acos();
        let mut ring_sum = ZERO;
        for &(a, wa) in &ring {
            for &(c, wc) in &ring {
                let k = euler(a, beta, c);
                let big = p.big_phi.eval_cached(&WignerCache::new(top, &phi_spins, &k));
                let back = p.psi.eval_cached(&WignerCache::new(top, &psi_spins, &k.adjoint()));
                ring_sum += big * back * (wa * wc);
            }
        }
        total += ring_sum * inner[ib] * (0.5 * wu);
    }
    total
}

/// `β` values of the polar rule, in node order.
fn polar_betas(n: usize) -> Vec<f64> {
    gauss_legendre(n).into_iter().map(|(u, _)| u.clamp(-1.0, 1.0).acos()).collect()
}

/// The `t → 0` limit: `∫ dk Φ(k) ψ(k⁻¹) ∫ b_s(Ad_{k⁻¹} Z(X, Y)) e^{iνx} dX dY`
/// with `Z(X, Y)` the projection of `X + Y` onto `𝔰`.
pub fn motion_limit_raw(p: &Prepared, nu: f64, orders: Orders) -> C64 {
    if p.trivial {
        return ZERO;
    }
    let nodes = ball_nodes(&orders);
    let betas = polar_betas(orders.k_polar);
    let inner: Vec<C64> = pool().install(|| {
        betas
            .par_iter()
            .map(|&beta| {
                let back = tilt(-beta);
                nodes
                    .iter()
                    .map(|&(x, z, w)| {
                        let zs = Mat2::new(x.into(), z / 2.0, z.conj() / 2.0, (-x).into());
                        let v = back.conjugate(&zs);
                        (I * nu * x).exp() * (p.profile.eval_s(v.a.re, v.b, 0.0) * w)
                    })
                    .sum()
            })
            .collect()
    });
    motion_outer(p, &orders, &inner)
}

/// The motion-group coefficient `⟨φ, π(σ, ν)(f₀) ψ⟩` written over `𝔰`:
/// `∫ dk Φ(k) ψ(k⁻¹) ∫_𝔰 b_s(Z) e^{iν(Ad_k Z)} dZ`, with `dZ` normalised
/// so that `dX dY = dZ`.
pub fn motion_rep_raw(p: &Prepared, nu: f64, orders: Orders) -> C64 {
    if p.trivial {
        return ZERO;
    }
    let nodes = ball_nodes(&orders);
    let betas = polar_betas(orders.k_polar);
    let inner: Vec<C64> = pool().install(|| {
        betas
            .par_iter()
            .map(|&beta| {
                let k = tilt(beta);
                nodes
                    .iter()
                    .map(|&(x, z, w)| {
                        let zs = Mat2::new(x.into(), z / 2.0, z.conj() / 2.0, (-x).into());
                        let moved = k.conjugate(&zs).a.re;
                        (I * nu * moved).exp() * (p.profile.eval_s(x, z / 2.0, 0.0) * w)
                    })
                    .sum()
            })
            .collect()
    });
    motion_outer(p, &orders, &inner)
}

/// Disjoint intervals of `[0, r_max]` on which `f < 0`, given `f(0) < 0`.
fn inside_segments<F: Fn(f64) -> f64>(f: F, r_max: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start = Some(0.0);
    let mut prev = (0.0, f(0.0));
    for k in 1..=SCAN_CELLS {
        let r = r_max * k as f64 / SCAN_CELLS as f64;
        let v = f(r);
        if (v < 0.0) != (prev.1 < 0.0) {
            let (mut lo, mut hi) = (prev.0, r);
            let lo_inside = prev.1 < 0.0;
            for _ in 0..64 {
                let mid = 0.5 * (lo + hi);
                if (f(mid) < 0.0) == lo_inside {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi.max(1.0) {
                    break;
                }
            }
            let root = 0.5 * (lo + hi);
            match start.take() {
                Some(s) => out.push((s, root)),
                None => start = Some(root),
            }
        }
        prev = (r, v);
    }
    if let Some(s) = start {
        out.push((s, r_max));
    }
    out
}

/// Radius beyond which no point of the ray can meet the support, from
/// `‖e^{-tY}e^{-tX}‖_F = ‖e^{H}n‖_F`.
fn ray_bound(t: f64, cos_th: f64, sin_th: f64) -> f64 {
    let s = (2.0 * t).exp() * (2.0 + 4.0 * t * t);
    let b1 = if cos_th.abs() > 1e-300 { (s / 2.0).acosh() / (2.0 * t * cos_th.abs()) } else { f64::INFINITY };
    let b2 = if sin_th > 1e-300 { s / (4.0 * t * sin_th) } else { f64::INFINITY };
    b1.min(b2) * (1.0 + 1e-9)
}

/// The scaled coefficient as a reduced integral over `𝔞 × 𝔫`:
///
/// `∫ dk ψ(k) ∫ e^{-iνx} e^{2tx} Φ(κ(h)) b(H(h)/t, n(h)/t, t) dX dY`,
/// `h = e^{-tY} e^{-tX} k⁻¹`.
///
/// With `k = torus(a)·tilt(β)·torus(c)` the torus factors move out of the
/// Iwasawa decomposition, so only `β` enters the inner integral.
pub fn scaled_raw(p: &Prepared, nu: f64, t: f64, orders: Orders) -> C64 {
    if p.trivial {
        return ZERO;
    }
    let spins = p.big_phi.spins();
    let top = p.big_phi.max_two_j();
    let sizes: Vec<usize> = spins.iter().map(|&s| (s as usize + 1).pow(2)).collect();
    let width: usize = sizes.iter().sum();
    let radial = Rule::new(orders.radial);
    let polar = gauss_legendre(orders.polar);
    let az = periodic(orders.azimuth);
    let betas = polar_betas(orders.k_polar);

    let rays: Vec<(usize, f64, f64, f64)> = (0..betas.len())
        .flat_map(|ib| {
            let az = &az;
            polar.iter().flat_map(move |&(u, wu)| az.iter().map(move |&(ph, wp)| (ib, u, ph, wu * wp * TWO_PI)))
        })
        .collect();

    let per_ray: Vec<(usize, Vec<C64>)> = pool().install(|| {
        rays.par_iter()
            .map(|&(ib, u, ph, wang)| {
                let back = tilt(-betas[ib]);
                let sin_th = (1.0 - u * u).max(0.0).sqrt();
                let dir_z = C64::from_polar(2.0 * sin_th, ph);
                let h_of = |r: f64| exp_n(-t * r * dir_z).mul(&exp_a(-t * r * u)).mul(&back);
                let native = |r: f64| {
                    let (hh, n) = iwasawa_an(&h_of(r));
                    let (xs, zs) = (hh / t, n / t);
                    (xs * xs + zs.norm_sqr() / 4.0).sqrt() - 1.0
                };
                let mut acc = vec![ZERO; width];
                for (lo, hi) in inside_segments(native, ray_bound(t, u, sin_th)) {
                    for (r, wr) in radial.on(lo, hi) {
                        let x = r * u;
                        let f = iwasawa_unchecked(&h_of(r));
                        let (xs, zs) = (f.h / t, f.n / t);
                        let b = p.profile.eval(xs, zs.norm_sqr() / 4.0, t);
                        if b == 0.0 {
                            continue;
                        }
                        let weight = (-I * nu * x).exp()
                            * ((2.0 * t * x).exp() * b * GroupModel::S_JACOBIAN * r * r * wr * wang);
                        let cache = WignerCache::new(top, &spins, &f.kappa);
                        let mut off = 0;
                        for (&s, &sz) in spins.iter().zip(&sizes) {
                            let n = s as usize + 1;
                            for pq in 0..sz {
                                acc[off + pq] += weight * cache.entry(s, pq / n, pq % n);
                            }
                            off += sz;
                        }
                    }
                }
                (ib, acc)
            })
            .collect()
    });

    // J(β): per-β sums of the ray contributions, in ray order.
    let mut j_beta = vec![vec![ZERO; width]; betas.len()];
    for (ib, acc) in &per_ray {
        for (a, v) in j_beta[*ib].iter_mut().zip(acc) {
            *a += v;
        }
    }

    let coeffs = p.big_phi.coefficient_matrices();
    let ring = periodic(orders.k_angle);
    let kpolar = gauss_legendre(orders.k_polar);
    let psi_spins = p.psi.spins();
    let psi_top = p.psi.max_two_j();
    let mut total = ZERO;
    for (ib, &(_, wu)) in kpolar.iter().enumerate() {
        let beta = betas[ib];
        for &(a, wa) in &ring {
            for &(c, wc) in &ring {
                let k = euler(a, beta, c);
                let psi_v = p.psi.eval_cached(&WignerCache::new(psi_top, &psi_spins, &k));
                // κ(h) = torus(-c)·κ₀·torus(-a).
                let mut phi_v = ZERO;
                let mut off = 0;
                for ((s, cm), &sz) in coeffs.iter().zip(&sizes) {
                    let n = *s as usize + 1;
                    for pp in 0..n {
                        let left = torus_phase(*s, pp, -c);
                        for qq in 0..n {
                            let cf = cm[pp * n + qq];
                            if cf == ZERO {
                                continue;
                            }
                            phi_v += cf * left * j_beta[ib][off + pp * n + qq] * torus_phase(*s, qq, -a);
                        }
                    }
                    off += sz;
                }
                total += psi_v * phi_v * (0.5 * wu * wa * wc);
            }
        }
    }
    total
}

/// The same coefficient computed directly on `G`: with `ν' = ν/t`,
///
/// `∫ b(x, z, t) e^{4tx} ⟨φ_c, π_{σ,ν'}(e^{tX} e^{tY}) ψ⟩ dX dY`,
///
/// where `⟨φ', π(g)ψ⟩ = ∫_K conj φ'(k) e^{-(ρ+iν')H(g⁻¹k)} ψ(κ(g⁻¹k)) dk`.
pub fn direct_raw(p: &Prepared, nu: f64, t: f64, orders: Orders) -> C64 {
    if p.trivial {
        return ZERO;
    }
    let kq = if p.same_isotype {
        Su2Quadrature::sphere(orders.k_angle, orders.k_polar)
    } else {
        Su2Quadrature::new(orders.k_angle, orders.k_polar)
    };
    let left: Vec<(Mat2, C64)> = kq.nodes.iter().map(|n| (n.u, p.phi_c.eval(&n.u).conj() * n.w)).collect();
    let nu_t = nu / t;
    let psi_spins = p.psi.spins();
    let psi_top = p.psi.max_two_j();
    let nodes = ball_nodes(&orders);
    let parts: Vec<C64> = pool().install(|| {
        nodes
            .par_iter()
            .map(|&(x, z, w)| {
                let b = p.profile.eval(x, z.norm_sqr() / 4.0, t);
                if b == 0.0 {
                    return ZERO;
                }
                let g_inv = exp_n(-t * z).mul(&exp_a(-t * x));
                let inner: C64 = left
                    .iter()
                    .map(|(k, lw)| {
                        let f = iwasawa_unchecked(&g_inv.mul(k));
                        let psi_v = p.psi.eval_cached(&WignerCache::new(psi_top, &psi_spins, &f.kappa));
                        lw * (-(GroupModel::RHO + I * nu_t) * f.h).exp() * psi_v
                    })
                    .sum();
                inner * (b * (2.0 * GroupModel::RHO * t * x).exp() * w)
            })
            .collect()
    });
    parts.into_iter().sum()
}

fn check_t(t: f64) -> Result<(), Sl2Error> {
    if t.is_finite() && t != 0.0 {
        Ok(())
    } else {
        Err(Sl2Error::Invalid(format!("scale parameter must be finite and nonzero, got {t}")))
    }
}

/// Scaled coefficient at `(σ, ν, t)` with a doubled-order self-consistency check.
pub fn scaled_matrix_coeff(s: &Sl2Scenario, t: f64) -> Result<Estimate, Sl2Error> {
    check_t(t)?;
    if t < 0.0 {
        return Err(Sl2Error::Invalid("negative t is handled at parameter level only".into()));
    }
    let p = prepare(s)?;
    estimate(s.orders, s.tolerance, "scaled coefficient", |o| scaled_raw(&p, s.nu, t, o))
}

pub fn motion_limit_coeff(s: &Sl2Scenario) -> Result<Estimate, Sl2Error> {
    let p = prepare(s)?;
    estimate(s.orders, s.tolerance, "motion limit", |o| motion_limit_raw(&p, s.nu, o))
}

pub fn motion_rep_coeff(s: &Sl2Scenario) -> Result<Estimate, Sl2Error> {
    let p = prepare(s)?;
    estimate(s.orders, s.tolerance, "motion-group coefficient", |o| motion_rep_raw(&p, s.nu, o))
}

/// Relative agreement required of the two sides of the key property.
pub const PROBE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeResult {
    pub t: f64,
    /// Reduced integral at `(ν, t)`.
    pub reduced: C64,
    /// Direct `G`-integral at `ν/t`.
    pub direct: C64,
    pub rel: f64,
}

impl ProbeResult {
    pub fn agrees(&self, tol: f64) -> bool {
        self.rel <= tol
    }
}

/// Both sides of `π_{σ,ν}(α_t f) = π_{σ,ν/t}(f)` for the scaled section.
/// The reduced side runs at [`Orders::refined_for`]`(t)`, since its support
/// in `(x, z)` is strongly distorted for `t` near 1.
pub fn key_property_probe(s: &Sl2Scenario, t: f64) -> Result<ProbeResult, Sl2Error> {
    check_t(t)?;
    if t < 0.0 {
        return Err(Sl2Error::Invalid("key property probe needs t > 0".into()));
    }
    let p = prepare(s)?;
    let reduced = scaled_raw(&p, s.nu, t, s.orders.refined_for(t));
    let direct = direct_raw(&p, s.nu, t, s.orders);
    let rel = (reduced - direct).norm() / reduced.norm().max(direct.norm()).max(f64::MIN_POSITIVE);
    Ok(ProbeResult { t, reduced, direct, rel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_of_a_disc() {
        let segs = inside_segments(|r| r - 0.7, 3.0);
        assert_eq!(segs.len(), 1);
        assert!((segs[0].1 - 0.7).abs() < 1e-13);
        let segs = inside_segments(|r| ((r - 1.0) * (r - 2.0) * (r - 2.5)).signum() * -1.0 * (r - 0.5).signum(), 3.0);
        assert!(!segs.is_empty());
    }

    #[test]
    fn ray_bound_contains_support() {
        for &t in &[0.05, 0.4, 1.0] {
            for k in 0..=8 {
                let th = std::f64::consts::PI * k as f64 / 8.0;
                let (u, s) = (th.cos(), th.sin());
                let bound = ray_bound(t, u, s);
                let outside = |r: f64| {
                    let g = exp_n(-t * r * C64::new(2.0 * s, 0.0)).mul(&exp_a(-t * r * u));
                    let (h, n) = iwasawa_an(&g);
                    (h / t).powi(2) + (n / t).norm_sqr() / 4.0 >= 1.0
                };
                for m in 0..20 {
                    assert!(outside(bound * (1.0 + 0.5 * m as f64)));
                }
            }
        }
    }
}
