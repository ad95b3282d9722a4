//! Root systems of types B, C, D realized in the ε-basis of 𝔥*.
//!
//! Weights are stored by their coordinates on ε₁, …, εₙ with the form
//! (εᵢ, εⱼ) = δᵢⱼ. Simple roots follow the standard realization:
//! αᵢ = εᵢ − εᵢ₊₁ for i < n, and αₙ = εₙ (B), 2εₙ (C), εₙ₋₁ + εₙ (D).
//!
//! Simple-root indices are 0-based throughout the API; reports print them
//! 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A classical type `Bₙ`, `Cₙ` or `Dₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::B | Family::C => 1,
            Family::D => 2,
        };
        if rank < min {
            return Err(Error::RankOutOfRange { family, rank });
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension `m` of the natural module E.
    pub fn natural_dim(&self) -> usize {
        match self.family {
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A weight `λ₁ε₁ + ⋯ + λₙεₙ` with exact rational coordinates.
///
/// The derived ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![Rational::zero(); n])
    }

    /// The basis vector εᵢ (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = Rational::one();
        w
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
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

    pub fn dot(&self, other: &Weight) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(scalar::to_i64).collect()
    }

    /// Sum of absolute values of the coordinates.
    pub fn abs_sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    /// Parses `"1,0,-1"` (integers only; rationals as `p/q` are accepted too).
    pub fn parse(s: &str) -> Result<Weight> {
        let coords = s
            .split(',')
            .map(scalar::parse_pq)
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(&scalar::to_short(c))?;
        }
        f.write_str(")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Root datum of a classical type together with the data derived from it.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    simple_roots: Vec<Weight>,
    coroots: Vec<Weight>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
    rho: Weight,
    // Row k holds the simple-root coordinates of ε_k.
    eps_to_simple: Vec<Vec<Rational>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let n = lie_type.rank();
        let family = lie_type.family();

        let mut simple_roots = Vec::with_capacity(n);
        for i in 0..n.saturating_sub(1) {
            simple_roots.push(&Weight::unit(n, i) - &Weight::unit(n, i + 1));
        }
        let last = match family {
            Family::B => Weight::unit(n, n - 1),
            Family::C => Weight::unit(n, n - 1).scale(&scalar::int(2)),
            Family::D => &Weight::unit(n, n - 2) + &Weight::unit(n, n - 1),
        };
        simple_roots.push(last);

        let coroots: Vec<Weight> = simple_roots
            .iter()
            .map(|a| a.scale(&(scalar::int(2) / a.dot(a))))
            .collect();

        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = scalar::int(2) * simple_roots[i].dot(&simple_roots[j])
                            / simple_roots[i].dot(&simple_roots[i]);
                        scalar::to_i64(&a).expect("Cartan entries are integers")
                    })
                    .collect()
            })
            .collect();

        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (ei, ej) = (Weight::unit(n, i), Weight::unit(n, j));
                positive_roots.push(&ei - &ej);
                positive_roots.push(&ei + &ej);
            }
            match family {
                Family::B => positive_roots.push(Weight::unit(n, i)),
                Family::C => positive_roots.push(Weight::unit(n, i).scale(&scalar::int(2))),
                Family::D => {}
            }
        }
        positive_roots.sort();
        positive_roots.reverse();

        let rho = positive_roots
            .iter()
            .fold(Weight::zero(n), |acc, a| &acc + a)
            .scale(&scalar::frac(1, 2));

        let basis: Vec<Vec<Rational>> = simple_roots.iter().map(|a| a.0.clone()).collect();
        let eps_to_simple = invert(&basis);

        RootSystem {
            lie_type,
            simple_roots,
            coroots,
            cartan,
            positive_roots,
            rho,
            eps_to_simple,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn family(&self) -> Family {
        self.lie_type.family()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> Result<&Weight> {
        self.simple_roots.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            rank: self.rank(),
        })
    }

    /// α_i^∨ = 2αᵢ/(αᵢ, αᵢ), identified with a vector in the ε-basis.
    pub fn coroot(&self, i: usize) -> Result<&Weight> {
        self.coroots.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            rank: self.rank(),
        })
    }

    pub fn coroots(&self) -> &[Weight] {
        &self.coroots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Fundamental weights in the explicit ε-coordinates of the classical
    /// realization.
    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let n = self.rank();
        let partial = |k: usize| (0..k).fold(Weight::zero(n), |acc, i| &acc + &Weight::unit(n, i));
        let half = scalar::frac(1, 2);
        (0..n)
            .map(|i| match self.family() {
                Family::C => partial(i + 1),
                Family::B if i == n - 1 => partial(n).scale(&half),
                Family::B => partial(i + 1),
                Family::D if i == n - 1 => partial(n).scale(&half),
                Family::D if i == n - 2 => {
                    let mut w = partial(n).scale(&half);
                    w.0[n - 1] = -&half;
                    w
                }
                Family::D => partial(i + 1),
            })
            .collect()
    }

    /// The pairing (w, αᵢ^∨).
    pub fn pairing(&self, w: &Weight, i: usize) -> Rational {
        w.dot(&self.coroots[i])
    }

    /// Membership in the integral weight lattice X: all pairings with simple
    /// coroots are integers.
    pub fn in_weight_lattice(&self, w: &Weight) -> bool {
        w.len() == self.rank() && (0..self.rank()).all(|i| self.pairing(w, i).is_integer())
    }

    /// Dominant integral: every pairing (w, αᵢ^∨) is a nonnegative integer.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.len() == self.rank()
            && (0..self.rank()).all(|i| {
                let p = self.pairing(w, i);
                p.is_integer() && !p.is_negative()
            })
    }

    /// Coefficients cᵢ with w = Σ cᵢ αᵢ.
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n).fold(Rational::zero(), |acc, k| {
                    acc + &w.0[k] * &self.eps_to_simple[k][i]
                })
            })
            .collect()
    }

    /// μ ≤ λ in the dominance order: λ − μ ∈ ℕα₁ + ⋯ + ℕαₙ.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        self.simple_root_coords(&(lam - mu))
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// sᵢ(w) = w − (w, αᵢ^∨) αᵢ.
    pub fn simple_reflect(&self, i: usize, w: &Weight) -> Weight {
        w - &self.simple_roots[i].scale(&self.pairing(w, i))
    }

    /// The orbit W·w, sorted in descending lexicographic order.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([w.clone()]);
        seen.insert(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.simple_reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().rev().collect()
    }

    /// A reduced word for the longest element w₀.
    ///
    /// Starting from the antidominant −ρ, repeatedly apply the
    /// lowest-indexed simple reflection sᵢ with (μ, αᵢ^∨) < 0 until μ is
    /// dominant. If the steps were i₁, …, i_k then w₀ = s_{i₁} ⋯ s_{i_k}.
    pub fn longest_element(&self) -> LongestElement {
        let mut mu = -&self.rho;
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.pairing(&mu, i).is_negative()) {
            mu = self.simple_reflect(i, &mu);
            word.push(i);
        }
        debug_assert_eq!(mu, self.rho);
        LongestElement {
            lie_type: self.lie_type,
            word,
        }
    }
}

/// The longest Weyl group element with a fixed reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestElement {
    lie_type: LieType,
    word: Vec<usize>,
}

impl LongestElement {
    /// 0-based simple-root indices `i₁, …, i_m` with w₀ = s_{i₁} ⋯ s_{i_m}.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The same word with 1-based indices, as printed in reports.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    /// Closed-form action: w ↦ −w, except in type Dₙ with n odd where the
    /// last coordinate is kept.
    pub fn apply(&self, w: &Weight) -> Weight {
        let mut out = -w;
        if self.lie_type.family() == Family::D && self.lie_type.rank() % 2 == 1 {
            let n = self.lie_type.rank();
            out.0[n - 1] = w.0[n - 1].clone();
        }
        out
    }

    /// Action obtained by composing simple reflections along the word.
    pub fn apply_word(&self, rs: &RootSystem, w: &Weight) -> Weight {
        self.word
            .iter()
            .rev()
            .fold(w.clone(), |acc, &i| rs.simple_reflect(i, &acc))
    }

    /// Whether w₀ acts as −1 (false exactly for Dₙ, n odd).
    pub fn is_minus_identity(&self) -> bool {
        !(self.lie_type.family() == Family::D && self.lie_type.rank() % 2 == 1)
    }
}

/// Gauss-Jordan inverse of a small invertible rational matrix.
fn invert(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("simple roots are linearly independent");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &factor * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}
