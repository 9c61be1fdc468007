//! Canonical parameters for the tempered dual and the motion-group dual.
//!
//! Both duals are indexed by pairs `(σ, ν)` modulo the Weyl group. A pair is
//! canonical when `ν` is dominant and `σ` is dominant for the stabilizer of
//! `ν`; every orbit has exactly one such point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::root_datum::{RootDatum, RootDatumError, Subsystem};
use crate::weight::{NuVector, Rational, WeightVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualsError {
    #[error("parameters belong to different root data")]
    DatumMismatch,
    #[error("scaling parameter must be nonzero")]
    ZeroScale,
    #[error(transparent)]
    Datum(#[from] RootDatumError),
}

/// Wire form shared by both parameter kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamJson {
    pub sigma: WeightVec,
    pub nu: NuVector,
}

/// Canonical `(σ, ν)` on a datum.
fn canonical(datum: &RootDatum, sigma: &WeightVec, nu: &NuVector) -> (WeightVec, NuVector) {
    let (nu_plus, w) = datum.dominant_rep(nu);
    let sub = datum.stabilizer(&nu_plus);
    let sigma_plus = sub.dominate(&w.apply(sigma));
    (sigma_plus, nu_plus)
}

fn check(datum: &RootDatum, sigma: &WeightVec, nu: &NuVector) -> Result<(), DualsError> {
    datum.check_dim(sigma)?;
    datum.check_dim(nu)?;
    Ok(())
}

/// The class `ι(σ, ν)` of a unitary principal series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemperedParam {
    datum: RootDatum,
    sigma: WeightVec,
    nu: NuVector,
}

/// The class `π(σ, ν)` of an irreducible of the motion group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionParam {
    datum: RootDatum,
    sigma_orbit_rep: WeightVec,
    nu: NuVector,
}

pub fn normalize_tempered(
    datum: &RootDatum,
    sigma: &WeightVec,
    nu: &NuVector,
) -> Result<TemperedParam, DualsError> {
    check(datum, sigma, nu)?;
    let (sigma, nu) = canonical(datum, sigma, nu);
    Ok(TemperedParam { datum: datum.clone(), sigma, nu })
}

pub fn normalize_motion(
    datum: &RootDatum,
    sigma: &WeightVec,
    nu: &NuVector,
) -> Result<MotionParam, DualsError> {
    check(datum, sigma, nu)?;
    let (sigma_orbit_rep, nu) = canonical(datum, sigma, nu);
    Ok(MotionParam { datum: datum.clone(), sigma_orbit_rep, nu })
}

impl TemperedParam {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn sigma(&self) -> &WeightVec {
        &self.sigma
    }

    pub fn nu(&self) -> &NuVector {
        &self.nu
    }

    /// Stabilizer of `ν`; standard since `ν` is dominant.
    pub fn stabilizer(&self) -> Subsystem {
        self.datum.stabilizer(&self.nu)
    }

    pub fn equivalent(&self, other: &TemperedParam) -> Result<bool, DualsError> {
        if self.datum != other.datum {
            return Err(DualsError::DatumMismatch);
        }
        Ok(self.sigma == other.sigma && self.nu == other.nu)
    }

    pub fn to_json(&self) -> ParamJson {
        ParamJson { sigma: self.sigma.clone(), nu: self.nu.clone() }
    }

    /// Reads and canonicalizes a wire-form parameter.
    pub fn from_json(datum: &RootDatum, json: &ParamJson) -> Result<Self, DualsError> {
        normalize_tempered(datum, &json.sigma, &json.nu)
    }
}

impl MotionParam {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn sigma_orbit_rep(&self) -> &WeightVec {
        &self.sigma_orbit_rep
    }

    pub fn nu(&self) -> &NuVector {
        &self.nu
    }

    pub fn stabilizer(&self) -> Subsystem {
        self.datum.stabilizer(&self.nu)
    }

    /// The `W_ν`-orbit of `σ`, sorted.
    pub fn sigma_orbit(&self) -> Result<Vec<WeightVec>, DualsError> {
        let mut pts = self.stabilizer().orbit(&self.sigma_orbit_rep)?;
        pts.sort();
        Ok(pts)
    }

    pub fn equivalent(&self, other: &MotionParam) -> Result<bool, DualsError> {
        if self.datum != other.datum {
            return Err(DualsError::DatumMismatch);
        }
        Ok(self.sigma_orbit_rep == other.sigma_orbit_rep && self.nu == other.nu)
    }

    pub fn to_json(&self) -> ParamJson {
        ParamJson { sigma: self.sigma_orbit_rep.clone(), nu: self.nu.clone() }
    }

    pub fn from_json(datum: &RootDatum, json: &ParamJson) -> Result<Self, DualsError> {
        normalize_motion(datum, &json.sigma, &json.nu)
    }
}

/// The action of `α_t` on parameters: `(σ, ν) ↦ (σ, ν / t)`, re-canonicalized.
pub fn scaling_action(t: Rational, p: &TemperedParam) -> Result<TemperedParam, DualsError> {
    if t == Rational::from_integer(0) {
        return Err(DualsError::ZeroScale);
    }
    let inv = t.recip();
    normalize_tempered(&p.datum, &p.sigma, &p.nu.scale(&inv))
}

/// Decides equivalence by searching the whole Weyl group. Used as an oracle.
pub fn equivalent_by_search(
    datum: &RootDatum,
    a: (&WeightVec, &NuVector),
    b: (&WeightVec, &NuVector),
) -> Result<bool, DualsError> {
    for w in datum.weyl_elements()? {
        if w.apply(a.0) == *b.0 && w.apply(a.1) == *b.1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(c: &[i64]) -> WeightVec {
        WeightVec::new(c.to_vec())
    }

    #[test]
    fn a1_examples() {
        let a1 = RootDatum::named("A1").unwrap();
        let p = normalize_tempered(&a1, &wv(&[-3]), &NuVector::from_ints(&[-2])).unwrap();
        assert_eq!((p.sigma(), p.nu()), (&wv(&[3]), &NuVector::from_ints(&[2])));
        let z = normalize_tempered(&a1, &wv(&[0]), &NuVector::from_ints(&[0])).unwrap();
        assert_eq!(z.sigma(), &wv(&[0]));
        let m = normalize_motion(&a1, &wv(&[-2]), &NuVector::from_ints(&[0])).unwrap();
        assert_eq!(m.sigma_orbit_rep(), &wv(&[2]));
        assert_eq!(m.sigma_orbit().unwrap(), vec![wv(&[-2]), wv(&[2])]);
    }

    #[test]
    fn a1_equivalence() {
        let a1 = RootDatum::named("A1").unwrap();
        let p = normalize_tempered(&a1, &wv(&[3]), &NuVector::from_ints(&[2])).unwrap();
        let q = normalize_tempered(&a1, &wv(&[-3]), &NuVector::from_ints(&[-2])).unwrap();
        let r = normalize_tempered(&a1, &wv(&[3]), &NuVector::from_ints(&[-2])).unwrap();
        assert!(p.equivalent(&q).unwrap());
        assert!(!p.equivalent(&r).unwrap());
        assert!(p.equivalent(&p).unwrap());
    }

    #[test]
    fn datum_mismatch() {
        let a1 = RootDatum::named("A1").unwrap();
        let a1t = RootDatum::named("A1+T1").unwrap();
        let p = normalize_tempered(&a1, &wv(&[1]), &NuVector::from_ints(&[0])).unwrap();
        let q = normalize_tempered(&a1t, &wv(&[1, 0]), &NuVector::from_ints(&[0, 0])).unwrap();
        assert_eq!(p.equivalent(&q), Err(DualsError::DatumMismatch));
    }

    #[test]
    fn a2_wall() {
        let a2 = RootDatum::named("A2").unwrap();
        let p = normalize_tempered(&a2, &wv(&[1, -1]), &NuVector::from_ints(&[0, 0])).unwrap();
        assert_eq!(p.sigma(), &wv(&[0, 1]));
        let m = normalize_motion(&a2, &wv(&[0, 1]), &NuVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(m.sigma_orbit_rep(), &wv(&[0, 1]));
        let m = normalize_motion(&a2, &wv(&[1, -1]), &NuVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(m.sigma_orbit_rep(), &wv(&[0, 1]));
    }

    #[test]
    fn scaling() {
        let a1 = RootDatum::named("A1").unwrap();
        let p = normalize_tempered(&a1, &wv(&[3]), &NuVector::from_ints(&[2])).unwrap();
        assert_eq!(scaling_action(Rational::from_integer(1), &p).unwrap(), p);
        let half = scaling_action(Rational::new(1, 2), &p).unwrap();
        assert_eq!(half.nu(), &NuVector::from_ints(&[4]));
        assert_eq!(half.sigma(), &wv(&[3]));
        // ι(3,-2) is conjugate to ι(-3,2).
        let neg = scaling_action(Rational::from_integer(-1), &p).unwrap();
        assert_eq!((neg.sigma(), neg.nu()), (&wv(&[-3]), &NuVector::from_ints(&[2])));
        assert_eq!(scaling_action(Rational::from_integer(0), &p), Err(DualsError::ZeroScale));
    }

    #[test]
    fn json_shape() {
        let a1 = RootDatum::named("A1").unwrap();
        let p = normalize_tempered(&a1, &wv(&[3]), &NuVector::new(vec![Rational::new(1, 2)])).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(text, r#"{"sigma":[3],"nu":["1/2"]}"#);
        let back: ParamJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TemperedParam::from_json(&a1, &back).unwrap(), p);
    }
}
