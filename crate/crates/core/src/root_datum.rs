//! Root data, Weyl groups and the exact combinatorics built on them.
//!
//! Everything is expressed in fundamental-weight coordinates. The `i`-th
//! simple root is the `i`-th row of the Cartan matrix, and the pairing of a
//! vector with the `i`-th simple coroot is simply its `i`-th coordinate.
//! Central torus directions are extra trailing coordinates on which the Weyl
//! group acts trivially.
//!
//! Simple indices are zero-based in the API. Reflection words are listed in
//! the order they are applied: `[i, j]` means `s_j(s_i(v))`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::{NuVector, Rational, Scalar, Weight, WeightVec};

/// Default guard on Weyl group enumeration.
pub const DEFAULT_WEYL_ORDER_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDatumError {
    #[error("not a Cartan matrix: {0}")]
    NotCartan(String),
    #[error("Weyl group order exceeds the enumeration cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector has {got} coordinates but the datum has dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// JSON form of a root datum: `{"cartan": [[...]], "rank_central": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSpec {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub rank_central: usize,
}

/// A positive root, in both simple-root and weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    /// Coefficients in the basis of simple roots (nonnegative).
    pub simple_coords: Vec<i64>,
    /// Fundamental-weight coordinates (length = datum dimension).
    pub weight: WeightVec,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Debug)]
struct DatumInner {
    cartan: Vec<Vec<i64>>,
    rank_central: usize,
    simple_roots: Vec<WeightVec>,
    positive_roots: Vec<Root>,
    rho: WeightVec,
    symmetrizer: Vec<Rational>,
    weyl_order: usize,
    weyl_order_cap: usize,
}

/// A validated semisimple root datum, optionally extended by central
/// coordinates. Cheap to clone.
#[derive(Clone, Debug)]
pub struct RootDatum {
    inner: Arc<DatumInner>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.cartan == other.inner.cartan
                && self.inner.rank_central == other.inner.rank_central)
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates a Cartan matrix and builds the datum with the default cap.
    pub fn new(cartan: Vec<Vec<i64>>, rank_central: usize) -> Result<Self, RootDatumError> {
        Self::with_cap(cartan, rank_central, DEFAULT_WEYL_ORDER_CAP)
    }

    pub fn from_spec(spec: &RootDatumSpec, cap: usize) -> Result<Self, RootDatumError> {
        Self::with_cap(spec.cartan.clone(), spec.rank_central, cap)
    }

    /// Validates the Cartan axioms, enumerates the Weyl group order (failing
    /// past `cap`) and generates the positive roots by root strings.
    pub fn with_cap(
        cartan: Vec<Vec<i64>>,
        rank_central: usize,
        cap: usize,
    ) -> Result<Self, RootDatumError> {
        check_cartan_axioms(&cartan)?;
        let rank = cartan.len();
        let dim = rank + rank_central;
        let symmetrizer = symmetrizer(&cartan)?;
        let simple_roots: Vec<WeightVec> = cartan
            .iter()
            .map(|row| {
                let mut c = row.clone();
                c.resize(dim, 0);
                Weight::new(c)
            })
            .collect();
        let mut rho = vec![1; rank];
        rho.resize(dim, 0);
        let rho = Weight::new(rho);

        let weyl_order = orbit_size_capped(&cartan, dim, &rho, cap)?;
        let positive_roots = positive_roots(&cartan, dim, cap)?;

        Ok(RootDatum {
            inner: Arc::new(DatumInner {
                cartan,
                rank_central,
                simple_roots,
                positive_roots,
                rho,
                symmetrizer,
                weyl_order,
                weyl_order_cap: cap,
            }),
        })
    }

    /// Standard Cartan matrices by name: `A1`..`A4`, `B2`, `B3`, `C2`, `C3`,
    /// `D4`, `G2`, `A1xA1`. A `+Tn` suffix adds `n` central coordinates.
    pub fn named(name: &str) -> Result<Self, RootDatumError> {
        let (base, central) = match name.split_once("+T") {
            Some((b, n)) => (
                b,
                n.parse::<usize>()
                    .map_err(|_| RootDatumError::NotCartan(format!("bad central suffix in {name}")))?,
            ),
            None => (name, 0),
        };
        let cartan = match base {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "A4" => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ],
            "A1xA1" => vec![vec![2, 0], vec![0, 2]],
            "B2" => vec![vec![2, -2], vec![-1, 2]],
            "C2" => vec![vec![2, -1], vec![-2, 2]],
            "B3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            "C3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            "D4" => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(RootDatumError::NotCartan(format!("unknown datum name {name}"))),
        };
        Self::new(cartan, central)
    }

    pub fn spec(&self) -> RootDatumSpec {
        RootDatumSpec { cartan: self.inner.cartan.clone(), rank_central: self.inner.rank_central }
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.inner.cartan.len()
    }

    pub fn rank_central(&self) -> usize {
        self.inner.rank_central
    }

    /// Length of every coordinate vector: semisimple rank plus central rank.
    pub fn dim(&self) -> usize {
        self.rank() + self.inner.rank_central
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.inner.cartan
    }

    pub fn simple_roots(&self) -> &[WeightVec] {
        &self.inner.simple_roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.inner.positive_roots
    }

    pub fn rho(&self) -> &WeightVec {
        &self.inner.rho
    }

    /// Positive rationals `d_i` with `cartan[i][j] * d_j = cartan[j][i] * d_i`;
    /// `(α_i, α_i) = 2 d_i` for the invariant form.
    pub fn symmetrizer(&self) -> &[Rational] {
        &self.inner.symmetrizer
    }

    pub fn weyl_order(&self) -> usize {
        self.inner.weyl_order
    }

    pub fn weyl_order_cap(&self) -> usize {
        self.inner.weyl_order_cap
    }

    pub fn check_dim<T>(&self, v: &Weight<T>) -> Result<(), RootDatumError>
    where
        T: Scalar,
    {
        if v.len() != self.dim() {
            return Err(RootDatumError::DimensionMismatch { got: v.len(), expected: self.dim() });
        }
        Ok(())
    }

    /// Pairing `⟨v, α_i^∨⟩`.
    pub fn pairing<T: Scalar>(&self, v: &Weight<T>, i: usize) -> T {
        v.coords()[i].clone()
    }

    /// `s_i(v) = v - ⟨v, α_i^∨⟩ α_i`.
    pub fn reflect<T: Scalar>(&self, i: usize, v: &Weight<T>) -> Result<Weight<T>, RootDatumError> {
        if i >= self.rank() {
            return Err(RootDatumError::IndexOutOfRange { index: i, rank: self.rank() });
        }
        self.check_dim(v)?;
        Ok(self.reflect_unchecked(i, v))
    }

    pub(crate) fn reflect_unchecked<T: Scalar>(&self, i: usize, v: &Weight<T>) -> Weight<T> {
        let p = v.coords()[i].clone();
        if p.is_zero() {
            return v.clone();
        }
        let row = &self.inner.cartan[i];
        let coords = v
            .coords()
            .iter()
            .enumerate()
            .map(|(k, a)| match row.get(k) {
                Some(&c) if c != 0 => a.clone() - p.clone() * T::from(c),
                _ => a.clone(),
            })
            .collect();
        Weight::new(coords)
    }

    pub fn is_dominant<T: Scalar>(&self, v: &Weight<T>) -> bool {
        (0..self.rank()).all(|i| !v.coords()[i].is_negative())
    }

    /// The simple reflection `s_i` as a Weyl group element.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement::identity(self.dim()).then(self, i)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.dim())
    }

    /// The Weyl orbit of `v`, each point paired with an element carrying `v` to it.
    pub fn weyl_orbit<T: Scalar>(
        &self,
        v: &Weight<T>,
    ) -> Result<Vec<(Weight<T>, WeylElement)>, RootDatumError> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.orbit_under(&all, v)
    }

    pub(crate) fn orbit_under<T: Scalar>(
        &self,
        generators: &[usize],
        v: &Weight<T>,
    ) -> Result<Vec<(Weight<T>, WeylElement)>, RootDatumError> {
        self.check_dim(v)?;
        let cap = self.inner.weyl_order_cap;
        let mut seen: HashMap<Weight<T>, usize> = HashMap::new();
        let mut out = vec![(v.clone(), self.identity())];
        seen.insert(v.clone(), 0);
        let mut next = 0;
        while next < out.len() {
            let (p, w) = out[next].clone();
            for &i in generators {
                let q = self.reflect_unchecked(i, &p);
                if !seen.contains_key(&q) {
                    if out.len() >= cap {
                        return Err(RootDatumError::OrderCapExceeded { cap });
                    }
                    seen.insert(q.clone(), out.len());
                    out.push((q, w.then(self, i)));
                }
            }
            next += 1;
        }
        Ok(out)
    }

    /// Moves `v` into the dominant chamber. The returned element is the
    /// shortest one doing so, written with the lexicographically earliest
    /// reduced word (greedy on the smallest negative coordinate).
    pub fn dominant_rep<T: Scalar>(&self, v: &Weight<T>) -> (Weight<T>, WeylElement) {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.dominate_under(&all, v)
    }

    pub(crate) fn dominate_under<T: Scalar>(
        &self,
        generators: &[usize],
        v: &Weight<T>,
    ) -> (Weight<T>, WeylElement) {
        let mut cur = v.clone();
        let mut w = self.identity();
        while let Some(&i) = generators.iter().find(|&&i| cur.coords()[i].is_negative()) {
            cur = self.reflect_unchecked(i, &cur);
            w = w.then(self, i);
        }
        (cur, w)
    }

    /// The stabilizer of `v` as a standard parabolic subsystem conjugated by
    /// the element that makes `v` dominant.
    pub fn stabilizer<T: Scalar>(&self, v: &Weight<T>) -> Subsystem {
        let (plus, w) = self.dominant_rep(v);
        let generators = (0..self.rank()).filter(|&i| plus.coords()[i].is_zero()).collect();
        Subsystem { datum: self.clone(), generators, conjugator: w }
    }

    pub fn full_subsystem(&self) -> Subsystem {
        Subsystem {
            datum: self.clone(),
            generators: (0..self.rank()).collect(),
            conjugator: self.identity(),
        }
    }

    /// Every Weyl group element, breadth-first by length.
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>, RootDatumError> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.elements_under(&all)
    }

    pub(crate) fn elements_under(
        &self,
        generators: &[usize],
    ) -> Result<Vec<WeylElement>, RootDatumError> {
        let cap = self.inner.weyl_order_cap;
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].matrix.clone());
        let mut next = 0;
        while next < out.len() {
            let w = out[next].clone();
            for &i in generators {
                let u = w.then(self, i);
                if seen.insert(u.matrix.clone()) {
                    if out.len() >= cap {
                        return Err(RootDatumError::OrderCapExceeded { cap });
                    }
                    out.push(u);
                }
            }
            next += 1;
        }
        Ok(out)
    }

    /// Solves `v = Σ c_i α_i` over the rationals. `None` if `v` has a
    /// component outside the span of the simple roots.
    pub fn simple_root_coords<T: Scalar>(&self, v: &Weight<T>) -> Option<Vec<Rational>>
    where
        Rational: From<T>,
    {
        let all: Vec<usize> = (0..self.rank()).collect();
        solve_in_span(self, &all, v)
    }

    /// Invariant form `(v, β)` for `β = Σ c_i α_i` given in simple-root coordinates.
    pub fn form_with_root(&self, v: &NuVector, simple_coords: &[Rational]) -> Rational {
        self.form_on(&(0..self.rank()).collect::<Vec<_>>(), v, simple_coords)
    }

    pub(crate) fn form_on(&self, support: &[usize], v: &NuVector, c: &[Rational]) -> Rational {
        support
            .iter()
            .zip(c)
            .map(|(&j, cj)| cj * self.inner.symmetrizer[j] * v.coords()[j])
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Exact solve of `v = Σ_{j ∈ support} c_j α_j`, checking the remaining
/// coordinates for consistency.
pub(crate) fn solve_in_span<T: Scalar>(
    datum: &RootDatum,
    support: &[usize],
    v: &Weight<T>,
) -> Option<Vec<Rational>>
where
    Rational: From<T>,
{
    let n = support.len();
    let target: Vec<Rational> = v.coords().iter().map(|a| Rational::from(a.clone())).collect();
    if n == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    // (Σ c_j α_j)_k = Σ_j c_j A[j][k]; restrict to k ∈ support.
    let a = datum.cartan();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let k = support[r];
            let mut row: Vec<Rational> =
                support.iter().map(|&j| Rational::from_integer(a[j][k])).collect();
            row.push(target[k]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for k in 0..=n {
                    let delta = f * m[col][k];
                    m[r][k] -= delta;
                }
            }
        }
    }
    let c: Vec<Rational> = m.iter().map(|row| row[n]).collect();
    for (k, t) in target.iter().enumerate() {
        let got = support
            .iter()
            .zip(&c)
            .map(|(&j, cj)| cj * Rational::from_integer(*a[j].get(k).unwrap_or(&0)))
            .fold(Rational::zero(), |x, y| x + y);
        if got != *t {
            return None;
        }
    }
    Some(c)
}

/// An element of the Weyl group: a word in simple reflections together with
/// its integer matrix on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim).map(|r| (0..dim).map(|c| i64::from(r == c)).collect()).collect();
        WeylElement { word: Vec::new(), matrix }
    }

    /// Applied first to last.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &x)| x == i64::from(r == c))
        })
    }

    /// `(-1)^{length}`; well defined on the group.
    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Builds an element from a word, applied first to last.
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Result<Self, RootDatumError> {
        let mut w = datum.identity();
        for &i in word {
            if i >= datum.rank() {
                return Err(RootDatumError::IndexOutOfRange { index: i, rank: datum.rank() });
            }
            w = w.then(datum, i);
        }
        Ok(w)
    }

    /// `s_i ∘ self`: apply `self`, then `s_i`.
    pub fn then(&self, datum: &RootDatum, i: usize) -> Self {
        let row = &datum.cartan()[i];
        let mut matrix = self.matrix.clone();
        // New row k: M[k] - A[i][k] * M[i].
        let mi = self.matrix[i].clone();
        for (k, r) in matrix.iter_mut().enumerate() {
            if let Some(&c) = row.get(k) {
                if c != 0 {
                    for (x, y) in r.iter_mut().zip(&mi) {
                        *x -= c * y;
                    }
                }
            }
        }
        let mut word = self.word.clone();
        word.push(i);
        WeylElement { word, matrix }
    }

    /// `other ∘ self`.
    pub fn then_element(&self, datum: &RootDatum, other: &WeylElement) -> Self {
        other.word.iter().fold(self.clone(), |w, &i| w.then(datum, i))
    }

    pub fn inverse(&self, datum: &RootDatum) -> Self {
        let mut w = datum.identity();
        for &i in self.word.iter().rev() {
            w = w.then(datum, i);
        }
        w
    }

    pub fn apply<T: Scalar>(&self, v: &Weight<T>) -> Weight<T> {
        let coords = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.coords())
                    .filter(|(&m, _)| m != 0)
                    .fold(T::zero(), |acc, (&m, a)| acc + T::from(m) * a.clone())
            })
            .collect();
        Weight::new(coords)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A standard parabolic subsystem `Φ_J`, conjugated into place.
///
/// Vectors passed to the methods are in the original frame; the conjugator
/// carries them to the frame where the subsystem is generated by the simple
/// reflections listed in `generators`.
#[derive(Clone, Debug)]
pub struct Subsystem {
    datum: RootDatum,
    generators: Vec<usize>,
    conjugator: WeylElement,
}

impl Subsystem {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn conjugator(&self) -> &WeylElement {
        &self.conjugator
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_full(&self) -> bool {
        self.generators.len() == self.datum.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_standard<T: Scalar>(&self, v: &Weight<T>) -> Weight<T> {
        self.conjugator.apply(v)
    }

    pub fn from_standard<T: Scalar>(&self, v: &Weight<T>) -> Weight<T> {
        self.conjugator.inverse(&self.datum).apply(v)
    }

    /// The subsystem's own Cartan matrix as a standalone datum.
    pub fn as_root_datum(&self) -> Result<RootDatum, RootDatumError> {
        let a = self.datum.cartan();
        let cartan = self
            .generators
            .iter()
            .map(|&i| self.generators.iter().map(|&j| a[i][j]).collect())
            .collect();
        RootDatum::with_cap(cartan, 0, self.datum.weyl_order_cap())
    }

    /// Positive roots of the subsystem in the standard frame.
    pub fn positive_roots(&self) -> Vec<&Root> {
        let inside: HashSet<usize> = self.generators.iter().copied().collect();
        self.datum
            .positive_roots()
            .iter()
            .filter(|r| {
                r.simple_coords.iter().enumerate().all(|(k, &c)| c == 0 || inside.contains(&k))
            })
            .collect()
    }

    pub fn is_dominant<T: Scalar>(&self, v: &Weight<T>) -> bool {
        let s = self.to_standard(v);
        self.generators.iter().all(|&j| !s.coords()[j].is_negative())
    }

    /// Dominant representative of the subsystem orbit, in the original frame.
    pub fn dominate<T: Scalar>(&self, v: &Weight<T>) -> Weight<T> {
        let s = self.to_standard(v);
        let (plus, _) = self.datum.dominate_under(&self.generators, &s);
        self.from_standard(&plus)
    }

    /// Standard-frame dominant representative.
    pub(crate) fn dominate_standard<T: Scalar>(&self, s: &Weight<T>) -> Weight<T> {
        self.datum.dominate_under(&self.generators, s).0
    }

    pub fn orbit<T: Scalar>(&self, v: &Weight<T>) -> Result<Vec<Weight<T>>, RootDatumError> {
        let s = self.to_standard(v);
        let pts = self.datum.orbit_under(&self.generators, &s)?;
        Ok(pts.into_iter().map(|(p, _)| self.from_standard(&p)).collect())
    }

    /// Elements of the subsystem's Weyl group acting in the original frame
    /// (each is `c^{-1} w c` for the conjugator `c`).
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>, RootDatumError> {
        let c = &self.conjugator;
        let c_inv = c.inverse(&self.datum);
        Ok(self
            .datum
            .elements_under(&self.generators)?
            .into_iter()
            .map(|w| c.then_element(&self.datum, &w).then_element(&self.datum, &c_inv))
            .collect())
    }

    pub fn weyl_order(&self) -> Result<usize, RootDatumError> {
        Ok(self.datum.elements_under(&self.generators)?.len())
    }

    /// Coordinates of a standard-frame vector in the span of the subsystem's
    /// simple roots, or `None` if it has a transverse component.
    pub(crate) fn span_coords<T: Scalar>(&self, s: &Weight<T>) -> Option<Vec<Rational>>
    where
        Rational: From<T>,
    {
        solve_in_span(&self.datum, &self.generators, s)
    }
}

fn check_cartan_axioms(cartan: &[Vec<i64>]) -> Result<(), RootDatumError> {
    let n = cartan.len();
    if n == 0 {
        return Err(RootDatumError::NotCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != n {
            return Err(RootDatumError::NotCartan(format!("row {i} has length {}", row.len())));
        }
        if row[i] != 2 {
            return Err(RootDatumError::NotCartan(format!("diagonal entry {i} is {}", row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if row[j] > 0 {
                return Err(RootDatumError::NotCartan(format!("entry ({i},{j}) is positive")));
            }
            if (row[j] == 0) != (cartan[j][i] == 0) {
                return Err(RootDatumError::NotCartan(format!(
                    "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                )));
            }
        }
    }
    Ok(())
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational>, RootDatumError> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].expect("visited");
            for j in 0..n {
                if j == i || cartan[i][j] == 0 {
                    continue;
                }
                // A[i][j] d_j = A[j][i] d_i
                let dj = di * Rational::new(cartan[j][i], cartan[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(RootDatumError::NotCartan("matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.expect("all visited")).collect())
}

fn orbit_size_capped(
    cartan: &[Vec<i64>],
    dim: usize,
    start: &WeightVec,
    cap: usize,
) -> Result<usize, RootDatumError> {
    let rank = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.coords().to_vec());
    queue.push_back(start.coords().to_vec());
    while let Some(v) = queue.pop_front() {
        for (i, row) in cartan.iter().enumerate().take(rank) {
            let p = v[i];
            let mut w = v.clone();
            for k in 0..dim.min(row.len()) {
                w[k] -= p * row[k];
            }
            if seen.insert(w.clone()) {
                if seen.len() > cap {
                    return Err(RootDatumError::OrderCapExceeded { cap });
                }
                queue.push_back(w);
            }
        }
    }
    Ok(seen.len())
}

/// Positive roots by the root-string algorithm: for a root `β` and simple
/// `α_i`, `β + α_i` is a root iff `q - ⟨β, α_i^∨⟩ > 0` where `q` is the
/// largest `k` with `β - kα_i` a root.
fn positive_roots(cartan: &[Vec<i64>], dim: usize, cap: usize) -> Result<Vec<Root>, RootDatumError> {
    let n = cartan.len();
    let pair = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| c[j] * cartan[j][i]).sum() };
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut all = Vec::new();
    for c in &layer {
        known.insert(c.clone());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        if all.len() > cap {
            return Err(RootDatumError::OrderCapExceeded { cap });
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                if q - pair(beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        known.insert(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    Ok(all
        .into_iter()
        .map(|c| {
            let mut w: Vec<i64> = (0..n).map(|k| pair(&c, k)).collect();
            w.resize(dim, 0);
            Root { simple_coords: c, weight: Weight::new(w) }
        })
        .collect())
}

impl From<&WeightVec> for NuVector {
    fn from(w: &WeightVec) -> Self {
        w.to_rational()
    }
}
