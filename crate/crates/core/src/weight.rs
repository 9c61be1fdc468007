//! Exact coordinate vectors in the fundamental-weight basis.
//!
//! Both the character lattice of the torus and the spectral parameter space
//! live in the same coordinates, so one generic vector type covers both: an
//! integer [`WeightVec`] and a rational [`NuVector`].

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar used for spectral parameters.
pub type Rational = Ratio<i64>;

/// Scalars that weight coordinates may take.
pub trait Scalar:
    Clone + Ord + Hash + fmt::Debug + fmt::Display + Signed + From<i64> + Send + Sync + 'static
{
}

impl Scalar for i64 {}
impl Scalar for Rational {}

/// A vector in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight<T>(Vec<T>);

/// Integer weight: a character of the maximal torus.
pub type WeightVec = Weight<i64>;
/// Rational covector: a spectral parameter.
pub type NuVector = Weight<Rational>;

impl<T: Scalar> Weight<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![T::zero(); dim])
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, k: &T) -> Self {
        Weight(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    /// Largest absolute coordinate.
    pub fn sup_norm(&self) -> T {
        self.0.iter().map(|a| a.abs()).max().unwrap_or_else(T::zero)
    }
}

impl WeightVec {
    pub fn to_rational(&self) -> NuVector {
        Weight(self.0.iter().map(|&a| Rational::from_integer(a)).collect())
    }
}

impl NuVector {
    /// Returns the integer vector when every coordinate is integral.
    pub fn to_integer(&self) -> Option<WeightVec> {
        self.0
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&a| Rational::from_integer(a)).collect())
    }
}

impl<T> From<Vec<T>> for Weight<T> {
    fn from(v: Vec<T>) -> Self {
        Weight(v)
    }
}

impl<T: fmt::Display> fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for WeightVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(Weight)
    }
}

/// Rationals travel as `"p/q"` strings (or `"p"` when integral).
impl Serialize for NuVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NuVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Text(String),
            Int(i64),
        }
        let raw = Vec::<Entry>::deserialize(d)?;
        raw.into_iter()
            .map(|e| match e {
                Entry::Int(n) => Ok(Rational::from_integer(n)),
                Entry::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = i64::from_str(num).map_err(|e| format!("bad rational {text:?}: {e}"))?;
    let d = i64::from_str(den).map_err(|e| format!("bad rational {text:?}: {e}"))?;
    if d == 0 {
        return Err(format!("bad rational {text:?}: zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Parses a comma-separated list such as `"1,-2"` or `"1/2, 0"`.
pub fn parse_nu_list(text: &str) -> Result<NuVector, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map(Weight)
}

/// Parses a comma-separated list of integers.
pub fn parse_weight_list(text: &str) -> Result<WeightVec, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| i64::from_str(s.trim()).map_err(|e| format!("bad integer {s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Weight)
}
