//! The Mackey bijection and the restriction of principal series along the
//! contraction to the motion group.
//!
//! Restricting `ι(σ, ν)` along the embedding gives `⊕_θ m(σ, θ) π(θ, ν)`,
//! where `m(σ, θ)` is the multiplicity of `σ` as a weight of the irreducible of
//! `K_ν` with highest weight `[θ]`. Every `θ` that occurs sits above `σ` in the
//! hull order, and `θ = σ⁺` occurs exactly once, which pins the bijection
//! down. [`uniqueness_search`] checks that claim exhaustively on finite,
//! downward-closed truncations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::duals::{normalize_motion, normalize_tempered, DualsError, MotionParam, TemperedParam};
use crate::multiplicity::{hull_leq_in, weight_multiplicity, Method};
use crate::root_datum::{RootDatum, RootDatumError, Subsystem};
use crate::weight::{NuVector, WeightVec};

pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MackeyError {
    #[error("radius {radius} is below the sup-norm {needed} of the dominated weight")]
    RadiusTooSmall { radius: i64, needed: i64 },
    #[error("truncation is not downward closed: {below} <= {above} but {below} is missing")]
    NotDownwardClosed { below: String, above: String },
    #[error("search exceeded {cap} nodes")]
    SearchCapExceeded { cap: u64 },
    #[error(transparent)]
    Duals(#[from] DualsError),
    #[error(transparent)]
    Datum(#[from] RootDatumError),
}

/// `μ(ι(σ, ν)) = π(σ, ν)`.
pub fn mackey_mu(p: &TemperedParam) -> MotionParam {
    normalize_motion(p.datum(), p.sigma(), p.nu()).expect("canonical input has datum rank")
}

pub fn mackey_mu_inverse(q: &MotionParam) -> TemperedParam {
    normalize_tempered(q.datum(), q.sigma_orbit_rep(), q.nu()).expect("canonical input has datum rank")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub theta: WeightVec,
    pub m: u64,
}

/// Finite part of `⊕_θ m(σ, θ) π(θ, ν)`, expressed in the frame where `ν`
/// is dominant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub sigma: WeightVec,
    pub nu: NuVector,
    pub radius: i64,
    pub terms: Vec<DecompositionTerm>,
}

impl DecompositionTable {
    pub fn multiplicity_of(&self, theta: &WeightVec) -> u64 {
        self.terms.iter().find(|t| &t.theta == theta).map_or(0, |t| t.m)
    }

    /// One line per term, aligned.
    pub fn to_text(&self) -> String {
        let width = self.terms.iter().map(|t| t.theta.to_string().len()).max().unwrap_or(0);
        let mut out = format!("sigma={} nu={} radius={}\n", self.sigma, self.nu, self.radius);
        for t in &self.terms {
            out.push_str(&format!("  {:<width$}  m={}\n", t.theta.to_string(), t.m));
        }
        out
    }
}

/// Moves `(σ, ν)` to the frame where `ν` is dominant. Returns `σ` in that
/// frame, `ν⁺`, and the (standard) stabilizer.
fn canonical_frame(datum: &RootDatum, sigma: &WeightVec, nu: &NuVector) -> (WeightVec, NuVector, Subsystem) {
    let (nu_plus, w) = datum.dominant_rep(nu);
    let sub = datum.stabilizer(&nu_plus);
    (w.apply(sigma), nu_plus, sub)
}

/// Every integer vector with `‖v‖∞ ≤ radius` in `dim` coordinates.
fn box_points(dim: usize, radius: i64) -> Vec<WeightVec> {
    let mut out = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(WeightVec::new).collect()
}

/// Dominant representatives for `sub` in the sup-norm box, sorted.
fn dominant_box(sub: &Subsystem, radius: i64) -> Vec<WeightVec> {
    let dim = sub.datum().dim();
    box_points(dim, radius).into_iter().filter(|v| sub.is_dominant(v)).collect()
}

pub fn decompose_pi_alpha(
    datum: &RootDatum,
    sigma: &WeightVec,
    nu: &NuVector,
    radius: i64,
) -> Result<DecompositionTable, MackeyError> {
    datum.check_dim(sigma)?;
    datum.check_dim(nu)?;
    let (s, nu_plus, sub) = canonical_frame(datum, sigma, nu);
    let s_plus = sub.dominate(&s);
    let needed = s_plus.sup_norm();
    if radius < needed {
        return Err(MackeyError::RadiusTooSmall { radius, needed });
    }
    let mut terms = Vec::new();
    for theta in dominant_box(&sub, radius) {
        let m = weight_multiplicity(&sub, &theta, &s, Method::Freudenthal)
            .expect("box points are filtered to dominant");
        if m > 0 {
            terms.push(DecompositionTerm { theta, m });
        }
    }
    Ok(DecompositionTable { sigma: s_plus, nu: nu_plus, radius, terms })
}

/// `m(σ, σ⁺) = 1`.
pub fn multiplicity_one_check(datum: &RootDatum, sigma: &WeightVec, nu: &NuVector) -> bool {
    let sub = datum.stabilizer(nu);
    let plus = sub.dominate(sigma);
    weight_multiplicity(&sub, &plus, sigma, Method::Freudenthal).is_ok_and(|m| m == 1)
}

/// Outcome of an exhaustive search for bijections `f` of a truncated dual
/// with `f(x) ≥ x` in hull order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionCertificate {
    pub nu: NuVector,
    pub radius: i64,
    pub classes: Vec<WeightVec>,
    pub candidates_checked: u64,
    /// Each survivor lists `f(x)` for `x` in `classes` order.
    pub survivors: Vec<Vec<WeightVec>>,
}

impl BijectionCertificate {
    pub fn identity_only(&self) -> bool {
        self.survivors.len() == 1 && self.survivors[0] == self.classes
    }
}

/// Points of the hull-order down-set of `x` (standard frame), including `x`.
fn down_set(sub: &Subsystem, x: &WeightVec) -> Result<Vec<WeightVec>, RootDatumError> {
    let reach = sub.orbit(x)?.iter().map(|v| v.sup_norm()).max().unwrap_or(0);
    Ok(dominant_box(sub, reach).into_iter().filter(|y| hull_leq_in(sub, y, x)).collect())
}

/// The largest downward-closed subset of the radius box: classes whose whole
/// down-set stays inside the box.
pub fn closed_truncation(datum: &RootDatum, nu: &NuVector, radius: i64) -> Result<Vec<WeightVec>, MackeyError> {
    let (_, _, sub) = canonical_frame(datum, &WeightVec::zero(datum.dim()), nu);
    let mut out = Vec::new();
    for x in dominant_box(&sub, radius) {
        if down_set(&sub, &x)?.iter().all(|y| y.sup_norm() <= radius) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Runs the search on the full radius box, which must be downward closed.
pub fn uniqueness_search(
    datum: &RootDatum,
    nu: &NuVector,
    radius: i64,
    cap: u64,
) -> Result<BijectionCertificate, MackeyError> {
    datum.check_dim(nu)?;
    let (_, _, sub) = canonical_frame(datum, &WeightVec::zero(datum.dim()), nu);
    let classes = dominant_box(&sub, radius);
    uniqueness_search_on(datum, nu, radius, classes, cap)
}

/// Runs the search on an explicit set of dominant classes (frame where `ν`
/// is dominant).
pub fn uniqueness_search_on(
    datum: &RootDatum,
    nu: &NuVector,
    radius: i64,
    mut classes: Vec<WeightVec>,
    cap: u64,
) -> Result<BijectionCertificate, MackeyError> {
    datum.check_dim(nu)?;
    let (_, nu_plus, sub) = canonical_frame(datum, &WeightVec::zero(datum.dim()), nu);
    classes.sort();
    classes.dedup();
    let members: BTreeSet<&WeightVec> = classes.iter().collect();
    let mut down_sizes = Vec::with_capacity(classes.len());
    for x in &classes {
        let below = down_set(&sub, x)?;
        if let Some(y) = below.iter().find(|y| !members.contains(y)) {
            return Err(MackeyError::NotDownwardClosed { below: y.to_string(), above: x.to_string() });
        }
        down_sizes.push(below.len());
    }

    let n = classes.len();
    // up[i]: indices j with classes[i] ≤ classes[j].
    let up: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| hull_leq_in(&sub, &classes[i], &classes[j])).collect())
        .collect();
    // Smallest first along a linear extension: down-set size, then lexicographic.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (down_sizes[i], i));

    let mut search = Search { up: &up, order: &order, used: vec![false; n], image: vec![usize::MAX; n], nodes: 0, cap, found: Vec::new() };
    search.run(0)?;

    let survivors = search
        .found
        .into_iter()
        .map(|img| img.into_iter().map(|j| classes[j].clone()).collect())
        .collect();
    Ok(BijectionCertificate { nu: nu_plus, radius, classes, candidates_checked: search.nodes, survivors })
}

struct Search<'a> {
    up: &'a [Vec<usize>],
    order: &'a [usize],
    used: Vec<bool>,
    image: Vec<usize>,
    nodes: u64,
    cap: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<(), MackeyError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(MackeyError::SearchCapExceeded { cap: self.cap });
        }
        if depth == self.order.len() {
            self.found.push(self.image.clone());
            return Ok(());
        }
        if !self.remaining_feasible(depth) {
            return Ok(());
        }
        let x = self.order[depth];
        for k in 0..self.up[x].len() {
            let y = self.up[x][k];
            if self.used[y] {
                continue;
            }
            self.used[y] = true;
            self.image[x] = y;
            self.run(depth + 1)?;
            self.used[y] = false;
            self.image[x] = usize::MAX;
        }
        Ok(())
    }

    /// Every unassigned class still has a free target above it.
    fn remaining_feasible(&self, depth: usize) -> bool {
        self.order[depth..].iter().all(|&x| self.up[x].iter().any(|&y| !self.used[y]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(c: &[i64]) -> WeightVec {
        WeightVec::new(c.to_vec())
    }

    fn terms(t: &DecompositionTable) -> Vec<(Vec<i64>, u64)> {
        t.terms.iter().map(|x| (x.theta.coords().to_vec(), x.m)).collect()
    }

    #[test]
    fn a1_table() {
        let a1 = RootDatum::named("A1").unwrap();
        let t = decompose_pi_alpha(&a1, &wv(&[1]), &NuVector::from_ints(&[0]), 5).unwrap();
        assert_eq!(terms(&t), vec![(vec![1], 1), (vec![3], 1), (vec![5], 1)]);
        let t = decompose_pi_alpha(&a1, &wv(&[1]), &NuVector::from_ints(&[2]), 5).unwrap();
        assert_eq!(terms(&t), vec![(vec![1], 1)]);
        let err = decompose_pi_alpha(&a1, &wv(&[-4]), &NuVector::from_ints(&[0]), 3);
        assert_eq!(err, Err(MackeyError::RadiusTooSmall { radius: 3, needed: 4 }));
    }

    #[test]
    fn a2_adjoint_term() {
        let a2 = RootDatum::named("A2").unwrap();
        let t = decompose_pi_alpha(&a2, &wv(&[0, 0]), &NuVector::from_ints(&[0, 0]), 1).unwrap();
        assert_eq!(t.multiplicity_of(&wv(&[0, 0])), 1);
        assert_eq!(t.multiplicity_of(&wv(&[1, 1])), 2);
    }

    #[test]
    fn mu_round_trip() {
        let a2 = RootDatum::named("A2").unwrap();
        let p = normalize_tempered(&a2, &wv(&[1, 0]), &NuVector::from_ints(&[0, 1])).unwrap();
        let q = mackey_mu(&p);
        assert_eq!(q.nu(), p.nu());
        assert_eq!(mackey_mu_inverse(&q), p);
    }

    #[test]
    fn multiplicity_one_examples() {
        let a1 = RootDatum::named("A1").unwrap();
        assert!(multiplicity_one_check(&a1, &wv(&[1]), &NuVector::from_ints(&[0])));
        let a2 = RootDatum::named("A2").unwrap();
        assert!(multiplicity_one_check(&a2, &wv(&[1, 1]), &NuVector::from_ints(&[0, 0])));
        assert!(multiplicity_one_check(&a2, &wv(&[0, 0]), &NuVector::from_ints(&[1, 0])));
    }

    #[test]
    fn a1_uniqueness() {
        let a1 = RootDatum::named("A1").unwrap();
        let cert = uniqueness_search(&a1, &NuVector::from_ints(&[0]), 7, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(cert.classes.len(), 8);
        assert!(cert.identity_only());
    }

    #[test]
    fn singleton_uniqueness() {
        let a1 = RootDatum::named("A1").unwrap();
        let cert = uniqueness_search(&a1, &NuVector::from_ints(&[0]), 0, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(cert.classes, vec![wv(&[0])]);
        assert!(cert.identity_only());
    }

    #[test]
    fn a2_box_not_closed() {
        let a2 = RootDatum::named("A2").unwrap();
        let err = uniqueness_search(&a2, &NuVector::from_ints(&[0, 0]), 2, DEFAULT_SEARCH_CAP);
        assert!(matches!(err, Err(MackeyError::NotDownwardClosed { .. })));
    }

    #[test]
    fn search_cap() {
        let a1 = RootDatum::named("A1").unwrap();
        let err = uniqueness_search(&a1, &NuVector::from_ints(&[0]), 7, 3);
        assert_eq!(err, Err(MackeyError::SearchCapExceeded { cap: 3 }));
    }
}
