//! Weight multiplicities for irreducibles of a (parabolic) subsystem.
//!
//! Two independent routes compute the multiplicity of a weight `σ` in the
//! irreducible with highest weight `θ`: Freudenthal's recursion over dominant
//! weights, and Kostant's alternating sum of partition-function values over
//! the subsystem's Weyl group. The hull order on orbit classes lives here too.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::root_datum::{RootDatum, RootDatumError, Subsystem};
use crate::weight::{NuVector, Rational, Weight, WeightVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiplicityError {
    #[error("highest weight {theta} is not dominant for the subsystem")]
    NotDominant { theta: String },
    #[error(transparent)]
    Datum(#[from] RootDatumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Freudenthal,
    Kostant,
}

/// One `(σ, θ, m)` row of a multiplicity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRecord {
    pub sigma: WeightVec,
    pub theta: WeightVec,
    pub m: u64,
}

/// Number of ways to write `beta` as a nonnegative integer combination of
/// positive roots.
pub fn kostant_partition(datum: &RootDatum, beta: &WeightVec) -> u64 {
    let Some(c) = datum.simple_root_coords(beta) else {
        return 0;
    };
    let Some(target) = integral_nonneg(&c) else {
        return 0;
    };
    let roots: Vec<Vec<i64>> =
        datum.positive_roots().iter().map(|r| r.simple_coords.clone()).collect();
    PartitionCounter::new(roots).count(&target)
}

fn integral_nonneg(c: &[Rational]) -> Option<Vec<i64>> {
    c.iter()
        .map(|x| (x.is_integer() && !x.is_negative()).then(|| x.to_integer()))
        .collect()
}

/// Memoised partition counts over a fixed list of root vectors.
struct PartitionCounter {
    roots: Vec<Vec<i64>>,
    memo: HashMap<(usize, Vec<i64>), u64>,
}

impl PartitionCounter {
    fn new(mut roots: Vec<Vec<i64>>) -> Self {
        // Larger roots first keeps the recursion shallow.
        roots.sort_by_key(|r| std::cmp::Reverse(r.iter().sum::<i64>()));
        PartitionCounter { roots, memo: HashMap::new() }
    }

    fn count(&mut self, target: &[i64]) -> u64 {
        if target.iter().any(|&x| x < 0) {
            return 0;
        }
        self.count_from(0, target.to_vec())
    }

    fn count_from(&mut self, idx: usize, target: Vec<i64>) -> u64 {
        if target.iter().all(|&x| x == 0) {
            return 1;
        }
        if idx == self.roots.len() {
            return 0;
        }
        let key = (idx, target);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let root = self.roots[idx].clone();
        let mut total = 0u64;
        let mut rest = key.1.clone();
        loop {
            total += self.count_from(idx + 1, rest.clone());
            for (x, r) in rest.iter_mut().zip(&root) {
                *x -= r;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// Multiplicity computations inside one subsystem for one highest weight.
///
/// All weights are handled in the subsystem's standard frame internally.
pub struct Irreducible<'a> {
    sub: &'a Subsystem,
    /// Highest weight, standard frame.
    lambda: WeightVec,
    memo: HashMap<WeightVec, u64>,
}

impl<'a> Irreducible<'a> {
    /// `theta` is given in the original frame and must be dominant for `sub`.
    pub fn new(sub: &'a Subsystem, theta: &WeightVec) -> Result<Self, MultiplicityError> {
        sub.datum().check_dim(theta)?;
        if !sub.is_dominant(theta) {
            return Err(MultiplicityError::NotDominant { theta: theta.to_string() });
        }
        Ok(Irreducible { sub, lambda: sub.to_standard(theta), memo: HashMap::new() })
    }

    pub fn highest_weight(&self) -> WeightVec {
        self.sub.from_standard(&self.lambda)
    }

    fn datum(&self) -> &RootDatum {
        self.sub.datum()
    }

    /// Integer simple-root coordinates of `λ - μ` over the subsystem, when
    /// they exist.
    fn depth(&self, mu: &WeightVec) -> Option<Vec<i64>> {
        let c = self.sub.span_coords(&self.lambda.sub(mu))?;
        c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// A standard-frame weight `μ` occurs iff its dominant conjugate lies
    /// below `λ` in the root cone.
    fn occurs(&self, mu: &WeightVec) -> bool {
        let plus = self.sub.dominate_standard(mu);
        self.depth(&plus).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// `(x, β)` for `β = Σ c_j α_j` over the subsystem generators.
    fn form(&self, x: &WeightVec, c: &[i64]) -> Rational {
        let d = self.datum().symmetrizer();
        self.sub
            .generators()
            .iter()
            .zip(c)
            .map(|(&j, &cj)| Rational::from_integer(cj * x.coords()[j]) * d[j])
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `(λ+ρ, λ+ρ) - (μ+ρ, μ+ρ)` for `μ = λ - β`.
    fn norm_gap(&self, mu: &WeightVec, c: &[i64]) -> Rational {
        let rho_shifted: WeightVec = Weight::new(
            self.lambda
                .coords()
                .iter()
                .enumerate()
                .map(|(k, &x)| if self.sub.generators().contains(&k) { x + 1 } else { x })
                .collect(),
        );
        let beta = self.lambda.sub(mu);
        Rational::from_integer(2) * self.form(&rho_shifted, c) - self.form(&beta, c)
    }

    /// Freudenthal multiplicity of a standard-frame weight.
    fn freudenthal_std(&mut self, mu: &WeightVec) -> u64 {
        let plus = self.sub.dominate_standard(mu);
        if plus == self.lambda {
            return 1;
        }
        let Some(c) = self.depth(&plus) else {
            return 0;
        };
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        if let Some(&m) = self.memo.get(&plus) {
            return m;
        }
        let roots: Vec<(WeightVec, Vec<i64>)> = self
            .sub
            .positive_roots()
            .into_iter()
            .map(|r| {
                let coeffs = self.sub.generators().iter().map(|&j| r.simple_coords[j]).collect();
                (r.weight.clone(), coeffs)
            })
            .collect();
        let mut numerator = Rational::zero();
        for (alpha, alpha_c) in &roots {
            let mut k = 1;
            loop {
                let shifted = plus.add(&alpha.scale(&k));
                if !self.occurs(&shifted) {
                    break;
                }
                let m = self.freudenthal_std(&shifted);
                numerator += Rational::from_integer(m as i64) * self.form(&shifted, alpha_c);
                k += 1;
            }
        }
        numerator *= Rational::from_integer(2);
        let gap = self.norm_gap(&plus, &c);
        assert!(gap.is_positive(), "Freudenthal denominator must be positive below λ");
        let m = numerator / gap;
        assert!(m.is_integer() && !m.is_negative(), "Freudenthal produced {m}");
        let m = m.to_integer() as u64;
        self.memo.insert(plus, m);
        m
    }

    /// Kostant's alternating sum over the subsystem's Weyl group.
    fn kostant_std(&self, mu: &WeightVec) -> Result<u64, MultiplicityError> {
        let gens = self.sub.generators();
        let shift = |v: &WeightVec| -> WeightVec {
            Weight::new(
                v.coords()
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| if gens.contains(&k) { x + 1 } else { x })
                    .collect(),
            )
        };
        let lambda_rho = shift(&self.lambda);
        let mu_rho = shift(mu);
        // Transverse components never cancel: bail out early.
        if self.sub.span_coords(&self.lambda.sub(mu)).is_none() {
            return Ok(0);
        }
        let roots: Vec<Vec<i64>> = self
            .sub
            .positive_roots()
            .into_iter()
            .map(|r| gens.iter().map(|&j| r.simple_coords[j]).collect())
            .collect();
        let mut counter = PartitionCounter::new(roots);
        let mut total: i64 = 0;
        // Standard-frame group elements.
        let elements = self.datum().elements_under(gens)?;
        for w in &elements {
            let arg = w.apply(&lambda_rho).sub(&mu_rho);
            let Some(c) = self.sub.span_coords(&arg) else { continue };
            let Some(c) = c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            total += w.sign() * counter.count(&c) as i64;
        }
        assert!(total >= 0, "Kostant sum must be nonnegative, got {total}");
        Ok(total as u64)
    }

    /// Multiplicity of `sigma` (original frame).
    pub fn multiplicity(&mut self, sigma: &WeightVec, method: Method) -> Result<u64, MultiplicityError> {
        self.datum().check_dim(sigma)?;
        let mu = self.sub.to_standard(sigma);
        match method {
            Method::Freudenthal => Ok(self.freudenthal_std(&mu)),
            Method::Kostant => self.kostant_std(&mu),
        }
    }

    /// All weights with their multiplicities, in the original frame, sorted.
    pub fn weights(&mut self) -> Vec<(WeightVec, u64)> {
        let mut seen: HashMap<WeightVec, u64> = HashMap::new();
        let mut stack = vec![self.lambda.clone()];
        seen.insert(self.lambda.clone(), 1);
        let simple: Vec<WeightVec> = self
            .sub
            .generators()
            .iter()
            .map(|&j| self.datum().simple_roots()[j].clone())
            .collect();
        while let Some(mu) = stack.pop() {
            for a in &simple {
                let next = mu.sub(a);
                if !seen.contains_key(&next) && self.occurs(&next) {
                    let m = self.freudenthal_std(&next);
                    seen.insert(next.clone(), m);
                    stack.push(next);
                }
            }
        }
        let mut out: Vec<(WeightVec, u64)> =
            seen.into_iter().map(|(w, m)| (self.sub.from_standard(&w), m)).collect();
        out.sort();
        out
    }

    /// Weyl's dimension formula, evaluated exactly.
    pub fn weyl_dimension(&self) -> u64 {
        let rho_only: WeightVec = Weight::new(
            (0..self.lambda.len())
                .map(|k| i64::from(self.sub.generators().contains(&k)))
                .collect(),
        );
        let lambda_rho = self.lambda.add(&rho_only);
        let mut dim = Rational::from_integer(1);
        for r in self.sub.positive_roots() {
            let c: Vec<i64> = self.sub.generators().iter().map(|&j| r.simple_coords[j]).collect();
            dim *= self.form(&lambda_rho, &c) / self.form(&rho_only, &c);
        }
        assert!(dim.is_integer());
        dim.to_integer() as u64
    }
}

/// Multiplicity of `sigma` in the subsystem irreducible with highest weight `theta`.
pub fn weight_multiplicity(
    sub: &Subsystem,
    theta: &WeightVec,
    sigma: &WeightVec,
    method: Method,
) -> Result<u64, MultiplicityError> {
    Irreducible::new(sub, theta)?.multiplicity(sigma, method)
}

/// `m(σ, θ)`: multiplicity of the weight `σ` in the irreducible of the
/// stabilizer of `ν` whose highest-weight orbit contains `θ`.
pub fn m_sigma_theta(datum: &RootDatum, nu: &NuVector, sigma: &WeightVec, theta: &WeightVec) -> u64 {
    let sub = datum.stabilizer(nu);
    let theta_plus = sub.dominate(theta);
    weight_multiplicity(&sub, &theta_plus, sigma, Method::Freudenthal)
        .expect("dominated highest weight")
}

/// `[σ] ≤ [θ]`: `σ` lies in the convex hull of the stabilizer orbit of `θ`.
pub fn hull_leq(datum: &RootDatum, nu: &NuVector, sigma: &WeightVec, theta: &WeightVec) -> bool {
    let sub = datum.stabilizer(nu);
    hull_leq_in(&sub, sigma, theta)
}

/// Hull order inside a given subsystem.
pub fn hull_leq_in(sub: &Subsystem, sigma: &WeightVec, theta: &WeightVec) -> bool {
    let s = sub.dominate_standard(&sub.to_standard(sigma));
    let t = sub.dominate_standard(&sub.to_standard(theta));
    match sub.span_coords(&t.sub(&s)) {
        Some(c) => c.iter().all(|x| !x.is_negative()),
        None => false,
    }
}

/// The same relation decided by exact linear feasibility over the orbit
/// vertices of `θ`.
pub fn hull_leq_by_feasibility(sub: &Subsystem, sigma: &WeightVec, theta: &WeightVec) -> Result<bool, RootDatumError> {
    let vertices: Vec<Vec<Rational>> = sub
        .orbit(theta)?
        .into_iter()
        .map(|v| v.coords().iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let target: Vec<Rational> = sigma.coords().iter().map(|&x| Rational::from_integer(x)).collect();
    Ok(crate::convex::hull_contains(&vertices, &target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(c: &[i64]) -> WeightVec {
        WeightVec::new(c.to_vec())
    }

    #[test]
    fn partition_examples() {
        let a2 = RootDatum::named("A2").unwrap();
        assert_eq!(kostant_partition(&a2, &wv(&[0, 0])), 1);
        // α1 + α2 = (1, 1): as a sum of simples or the single root.
        assert_eq!(kostant_partition(&a2, &wv(&[1, 1])), 2);
        let a1 = RootDatum::named("A1").unwrap();
        assert_eq!(kostant_partition(&a1, &wv(&[-2])), 0);
        assert_eq!(kostant_partition(&a1, &wv(&[1])), 0);
        assert_eq!(kostant_partition(&a1, &wv(&[6])), 1);
    }

    #[test]
    fn a1_string() {
        let a1 = RootDatum::named("A1").unwrap();
        let full = a1.full_subsystem();
        for s in [-3, -1, 1, 3] {
            assert_eq!(weight_multiplicity(&full, &wv(&[3]), &wv(&[s]), Method::Freudenthal).unwrap(), 1);
            assert_eq!(weight_multiplicity(&full, &wv(&[3]), &wv(&[s]), Method::Kostant).unwrap(), 1);
        }
        for s in [-5, -2, 0, 2, 5] {
            assert_eq!(weight_multiplicity(&full, &wv(&[3]), &wv(&[s]), Method::Freudenthal).unwrap(), 0);
            assert_eq!(weight_multiplicity(&full, &wv(&[3]), &wv(&[s]), Method::Kostant).unwrap(), 0);
        }
    }

    #[test]
    fn adjoint_zero_weight() {
        let a2 = RootDatum::named("A2").unwrap();
        let full = a2.full_subsystem();
        for method in [Method::Freudenthal, Method::Kostant] {
            assert_eq!(weight_multiplicity(&full, &wv(&[1, 1]), &wv(&[0, 0]), method).unwrap(), 2);
            assert_eq!(weight_multiplicity(&full, &wv(&[1, 1]), &wv(&[1, 1]), method).unwrap(), 1);
        }
    }

    #[test]
    fn not_dominant_rejected() {
        let a1 = RootDatum::named("A1").unwrap();
        let err = weight_multiplicity(&a1.full_subsystem(), &wv(&[-1]), &wv(&[1]), Method::Kostant);
        assert!(matches!(err, Err(MultiplicityError::NotDominant { .. })));
    }

    #[test]
    fn m_sigma_theta_examples() {
        let a1 = RootDatum::named("A1").unwrap();
        let zero = NuVector::from_ints(&[0]);
        assert_eq!(m_sigma_theta(&a1, &zero, &wv(&[1]), &wv(&[5])), 1);
        let two = NuVector::from_ints(&[2]);
        assert_eq!(m_sigma_theta(&a1, &two, &wv(&[3]), &wv(&[3])), 1);
        assert_eq!(m_sigma_theta(&a1, &two, &wv(&[1]), &wv(&[3])), 0);
        let a2 = RootDatum::named("A2").unwrap();
        let nu = NuVector::from_ints(&[1, 0]);
        assert_eq!(m_sigma_theta(&a2, &nu, &wv(&[0, 1]), &wv(&[0, 1])), 1);
        // θ given off-chamber is dominated first: s2(0,1) = (1,-1).
        assert_eq!(m_sigma_theta(&a2, &nu, &wv(&[0, 1]), &wv(&[1, -1])), 1);
    }

    #[test]
    fn hull_examples() {
        let a1 = RootDatum::named("A1").unwrap();
        let zero = NuVector::from_ints(&[0]);
        assert!(hull_leq(&a1, &zero, &wv(&[2]), &wv(&[3])));
        assert!(hull_leq(&a1, &zero, &wv(&[3]), &wv(&[3])));
        assert!(!hull_leq(&a1, &zero, &wv(&[4]), &wv(&[3])));
        let two = NuVector::from_ints(&[2]);
        assert!(!hull_leq(&a1, &two, &wv(&[1]), &wv(&[3])));
    }

    #[test]
    fn weyl_dimension_values() {
        let a2 = RootDatum::named("A2").unwrap();
        let full = a2.full_subsystem();
        assert_eq!(Irreducible::new(&full, &wv(&[1, 1])).unwrap().weyl_dimension(), 8);
        assert_eq!(Irreducible::new(&full, &wv(&[2, 0])).unwrap().weyl_dimension(), 6);
        let g2 = RootDatum::named("G2").unwrap();
        let full = g2.full_subsystem();
        let dims: Vec<u64> = [[1, 0], [0, 1]]
            .iter()
            .map(|t| Irreducible::new(&full, &wv(t)).unwrap().weyl_dimension())
            .collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, vec![7, 14]);
    }
}
