//! Scenario files for the SL(2,ℂ) experiments.

use serde::{Deserialize, Serialize};

use super::sections::{section, SectionSpec};
use super::su2::{KFinite, C64};
use super::Sl2Error;

/// Quadrature resolution. `k_angle`/`k_polar` drive the SU(2) rules; the
/// remaining three drive the `(X, Y)` integral in ellipsoidal coordinates
/// `x = r cos θ`, `z = 2 r sin θ e^{iφ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    pub k_angle: usize,
    pub k_polar: usize,
    pub radial: usize,
    pub polar: usize,
    pub azimuth: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { k_angle: 10, k_polar: 20, radial: 16, polar: 24, azimuth: 40 }
    }
}

impl Orders {
    pub fn doubled(&self) -> Self {
        self.scaled(2)
    }

    pub fn scaled(&self, k: usize) -> Self {
        Orders {
            k_angle: self.k_angle * k,
            k_polar: self.k_polar * k,
            radial: self.radial * k,
            polar: self.polar * k,
            azimuth: self.azimuth * k,
        }
    }

    /// Orders for the reduced integral at scale `t`: angular resolution
    /// grows with `t`.
    pub fn refined_for(&self, t: f64) -> Self {
        let at_least = |n: usize, k: f64| n.max((k * t.abs()).ceil() as usize);
        Orders {
            k_polar: at_least(self.k_polar, 40.0),
            polar: at_least(self.polar, 64.0),
            azimuth: at_least(self.azimuth, 96.0),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<(), Sl2Error> {
        let all = [self.k_angle, self.k_polar, self.radial, self.polar, self.azimuth];
        if all.iter().any(|&n| n < 2) {
            return Err(Sl2Error::Invalid("quadrature orders must be at least 2".into()));
        }
        Ok(())
    }
}

fn default_tolerance() -> f64 {
    1e-8
}

fn default_nu_samples() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 2.0]
}

/// On-disk scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Scenario {
    #[serde(default)]
    pub name: String,
    pub sigma: i32,
    pub nu: f64,
    pub section: String,
    #[serde(default)]
    pub orders: Orders,
    pub t_schedule: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<KFinite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<KFinite>,
    /// Extra spectral parameters at which `e(t)` is also reported.
    #[serde(default = "default_nu_samples")]
    pub nu_samples: Vec<f64>,
    /// Self-consistency bound for the reduced and `t = 0` integrals.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

/// Default vectors in `L²(K)^σ`: entries `D^j_{m', -σ/2}` for the two
/// lowest admissible spins.
pub fn default_vectors(sigma: i32) -> (KFinite, KFinite) {
    let col = -sigma;
    let j0 = sigma.unsigned_abs();
    let j1 = j0 + 2;
    let phi = KFinite::single(j0, j0 as i32, col, C64::new(1.0, 0.0))
        .plus(j1, 2 - j1 as i32, col, C64::new(0.5, 0.2));
    let psi = KFinite::single(j0, -(j0 as i32), col, C64::new(0.8, 0.0))
        .plus(j1, j1 as i32, col, C64::new(-0.3, 0.6));
    (phi, psi)
}

impl Sl2Scenario {
    pub fn new(sigma: i32, nu: f64, section: &str, t_schedule: Vec<f64>) -> Self {
        Sl2Scenario {
            name: String::new(),
            sigma,
            nu,
            section: section.to_string(),
            orders: Orders::default(),
            t_schedule,
            phi: None,
            psi: None,
            nu_samples: default_nu_samples(),
            tolerance: default_tolerance(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Sl2Error> {
        let s: Sl2Scenario = serde_json::from_str(text).map_err(|e| Sl2Error::Invalid(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), Sl2Error> {
        self.orders.validate()?;
        self.section_spec()?;
        if !(self.tolerance > 0.0) {
            return Err(Sl2Error::Invalid("tolerance must be positive".into()));
        }
        for f in [&self.phi, &self.psi].into_iter().flatten() {
            f.validate().map_err(Sl2Error::Invalid)?;
        }
        if self.t_schedule.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Sl2Error::Invalid("t_schedule entries must be positive".into()));
        }
        if self.t_schedule.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Sl2Error::Invalid("t_schedule must be strictly decreasing".into()));
        }
        Ok(())
    }

    pub fn section_spec(&self) -> Result<SectionSpec, Sl2Error> {
        section(&self.section).ok_or_else(|| Sl2Error::UnknownSection(self.section.clone()))
    }

    pub fn phi(&self) -> KFinite {
        self.phi.clone().unwrap_or_else(|| default_vectors(self.sigma).0)
    }

    pub fn psi(&self) -> KFinite {
        self.psi.clone().unwrap_or_else(|| default_vectors(self.sigma).1)
    }

    pub fn with_nu(&self, nu: f64) -> Self {
        Sl2Scenario { nu, ..self.clone() }
    }

    pub fn with_orders(&self, orders: Orders) -> Self {
        Sl2Scenario { orders, ..self.clone() }
    }

    /// True when both vectors lie in the `σ` isotype.
    pub fn vectors_in_isotype(&self) -> bool {
        [self.phi(), self.psi()].iter().all(|f| f.is_zero() || f.isotype() == Some(-self.sigma))
    }
}

const SHIPPED: [&str; 4] = [
    include_str!("../../scenarios/sigma0_nu0.json"),
    include_str!("../../scenarios/sigma0_nu1.json"),
    include_str!("../../scenarios/sigma1_nu0.json"),
    include_str!("../../scenarios/sigma1_nu1.json"),
];

/// The scenarios under `scenarios/`, covering `σ ∈ {0, 1}` and `ν ∈ {0, 1}`.
pub fn shipped_scenarios() -> Vec<Sl2Scenario> {
    SHIPPED.iter().map(|text| Sl2Scenario::from_json(text).expect("shipped scenario parses")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_lie_in_isotype() {
        for sigma in [-2, -1, 0, 1, 3] {
            let (phi, psi) = default_vectors(sigma);
            assert!(phi.validate().is_ok() && psi.validate().is_ok());
            assert_eq!(phi.isotype(), Some(-sigma));
            assert_eq!(psi.isotype(), Some(-sigma));
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"sigma": 1, "nu": 0.5, "section": "tilted", "t_schedule": [0.4, 0.2]}"#;
        let s = Sl2Scenario::from_json(text).unwrap();
        assert_eq!(s.orders, Orders::default());
        let back = Sl2Scenario::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(Sl2Scenario::from_json(r#"{"sigma":0,"nu":0,"section":"x","t_schedule":[]}"#).is_err());
        assert!(Sl2Scenario::from_json(r#"{"sigma":0,"nu":0,"section":"radial","t_schedule":[0.1,0.2]}"#).is_err());
    }

    #[test]
    fn shipped_cover_the_grid() {
        let grid: Vec<(i32, f64)> = shipped_scenarios().iter().map(|s| (s.sigma, s.nu)).collect();
        assert_eq!(grid, vec![(0, 0.0), (0, 1.0), (1, 0.0), (1, 1.0)]);
    }
}
