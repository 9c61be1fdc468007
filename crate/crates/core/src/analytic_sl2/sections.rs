//! Catalogue of test sections `F(k, X, Y, t) = c(k) · b(x, z, t)`.
//!
//! The bump is `(1 - r²)³ · P(x, |z|²/4, t)` on `r² = x² + |z|²/4 < 1`, with
//! `P` a polynomial. The radius is the invariant norm of `X + (Y + Y*)/2`, so
//! the support at `t = 0` is a `K`-stable ball in `𝔰`. Profiles depend on `z`
//! only through `|z|`, which lets the torus angles be integrated in closed
//! form.

use serde::{Deserialize, Serialize};

use super::su2::{KFinite, C64};

/// `coeff · x^x_pow · (|z|²/4)^w_pow · t^t_pow`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    #[serde(default)]
    pub x_pow: u32,
    #[serde(default)]
    pub w_pow: u32,
    #[serde(default)]
    pub t_pow: u32,
}

impl Monomial {
    const fn new(coeff: f64, x_pow: u32, w_pow: u32, t_pow: u32) -> Self {
        Monomial { coeff, x_pow, w_pow, t_pow }
    }
}

/// The `(X, Y, t)` factor of a section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub poly: Vec<Monomial>,
}

impl Profile {
    /// `b` at native coordinates `x` and `w = |z|²/4`.
    #[inline]
    pub fn eval(&self, x: f64, w: f64, t: f64) -> f64 {
        let r2 = x * x + w;
        if r2 >= 1.0 {
            return 0.0;
        }
        let cut = (1.0 - r2).powi(3);
        let p: f64 = self
            .poly
            .iter()
            .map(|m| m.coeff * x.powi(m.x_pow as i32) * w.powi(m.w_pow as i32) * t.powi(m.t_pow as i32))
            .sum();
        cut * p
    }

    /// `b_s(V)` for `V = [[v11, v12], [conj v12, -v11]]` in `𝔰`, via `z = 2 v12`.
    #[inline]
    pub fn eval_s(&self, v11: f64, v12: C64, t: f64) -> f64 {
        self.eval(v11, v12.norm_sqr(), t)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|m| m.coeff == 0.0)
    }
}

/// A named section from the catalogue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionSpec {
    pub name: String,
    pub k_part: KFinite,
    pub profile: Profile,
    /// Smoothness of `b` across the support boundary.
    pub smoothness: String,
}

impl SectionSpec {
    pub fn is_zero(&self) -> bool {
        self.k_part.is_zero() || self.profile.is_zero()
    }
}

pub const CATALOGUE: [&str; 4] = ["zero", "radial", "tilted", "drifting"];

/// Every Wigner entry up to spin 3/2 with fixed, unremarkable coefficients.
fn generic_k_part() -> KFinite {
    let mut f = KFinite::zero();
    for two_j in 0..=3u32 {
        for p in 0..=two_j as i32 {
            for q in 0..=two_j as i32 {
                let mag = (0.5 + 0.1 * (p + q) as f64) / (1.0 + two_j as f64);
                let phase = 0.3 * (p - q + two_j as i32) as f64;
                f = f.plus(two_j, 2 * p - two_j as i32, 2 * q - two_j as i32, C64::from_polar(mag, phase));
            }
        }
    }
    f
}

pub fn section(name: &str) -> Option<SectionSpec> {
    let poly = match name {
        "zero" => vec![],
        "radial" => vec![Monomial::new(1.0, 0, 0, 0)],
        "tilted" => vec![
            Monomial::new(1.0, 0, 0, 0),
            Monomial::new(0.6, 1, 0, 0),
            Monomial::new(-0.3, 0, 1, 0),
            Monomial::new(0.2, 2, 0, 0),
        ],
        "drifting" => vec![
            Monomial::new(1.0, 0, 0, 0),
            Monomial::new(0.6, 1, 0, 0),
            Monomial::new(0.4, 0, 0, 1),
            Monomial::new(-0.3, 1, 0, 1),
        ],
        _ => return None,
    };
    let k_part = if name == "zero" { KFinite::zero() } else { generic_k_part() };
    Some(SectionSpec {
        name: name.to_string(),
        k_part,
        profile: Profile { poly },
        smoothness: "C^2 across r = 1, polynomial inside".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_and_values() {
        let s = section("tilted").unwrap();
        assert_eq!(s.profile.eval(0.0, 0.0, 0.0), 1.0);
        assert_eq!(s.profile.eval(0.8, 0.4, 0.0), 0.0);
        assert!(s.profile.eval(0.5, 0.2, 0.0) > 0.0);
        assert!(section("zero").unwrap().is_zero());
        assert!(section("nope").is_none());
        for name in CATALOGUE {
            let s = section(name).unwrap();
            assert!(s.k_part.validate().is_ok());
        }
    }

    #[test]
    fn drifting_depends_on_t() {
        let s = section("drifting").unwrap();
        assert!(s.profile.eval(0.1, 0.1, 0.5) != s.profile.eval(0.1, 0.1, 0.0));
    }
}
