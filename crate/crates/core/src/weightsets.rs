//! Signed compositions and the weight sets `Π`, `π` of tensor powers of the
//! natural module.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::scalar;

/// A finite set of weights kept in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    label: String,
    elements: Vec<Weight>,
}

impl WeightSet {
    pub fn new(label: impl Into<String>, elements: impl IntoIterator<Item = Weight>) -> Self {
        let set: BTreeSet<Weight> = elements.into_iter().collect();
        WeightSet {
            label: label.into(),
            elements: set.into_iter().rev().collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[Weight] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.binary_search_by(|x| w.cmp(x)).is_ok()
    }

    pub fn is_subset(&self, other: &WeightSet) -> bool {
        self.iter().all(|w| other.contains(w))
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &WeightSet, label: impl Into<String>) -> WeightSet {
        WeightSet::new(label, self.iter().filter(|w| !other.contains(w)).cloned())
    }

    pub fn union(&self, other: &WeightSet, label: impl Into<String>) -> WeightSet {
        WeightSet::new(label, self.iter().chain(other.iter()).cloned())
    }

    /// Same elements with every element removed that equals `w`.
    pub fn without(&self, w: &Weight) -> WeightSet {
        WeightSet::new(
            format!("{}\\{}", self.label, w),
            self.iter().filter(|x| *x != w).cloned(),
        )
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn to_int_vectors(&self) -> Option<Vec<Vec<i64>>> {
        self.iter().map(Weight::to_ints).collect()
    }
}

impl<'a> IntoIterator for &'a WeightSet {
    type Item = &'a Weight;
    type IntoIter = std::slice::Iter<'a, Weight>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{", self.label)?;
        for (k, w) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("WeightSet", 2)?;
        st.serialize_field("label", &self.label)?;
        match self.to_int_vectors() {
            Some(v) => st.serialize_field("elements", &v)?,
            None => {
                let v: Vec<Vec<String>> = self
                    .iter()
                    .map(|w| w.coords().iter().map(scalar::to_short).collect())
                    .collect();
                st.serialize_field("elements", &v)?
            }
        }
        st.end()
    }
}

fn compositions_into(n: usize, r: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if prefix.len() == n - 1 {
        let last = r;
        prefix.push(last);
        out.push(Weight::from_ints(prefix));
        prefix.pop();
        if last != 0 {
            prefix.push(-last);
            out.push(Weight::from_ints(prefix));
            prefix.pop();
        }
        return;
    }
    for a in 0..=r {
        for s in if a == 0 { vec![0] } else { vec![a, -a] } {
            prefix.push(s);
            compositions_into(n, r - a, prefix, out);
            prefix.pop();
        }
    }
}

/// Λ̄(n, r): integer vectors with Σ|λᵢ| = r.
pub fn signed_compositions(n: usize, r: usize) -> WeightSet {
    let mut out = Vec::new();
    compositions_into(n, r as i64, &mut Vec::with_capacity(n), &mut out);
    WeightSet::new(format!("SignedComp({n},{r})"), out)
}

fn partitions_into(n: usize, r: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if prefix.len() == n {
        if r == 0 {
            out.push(Weight::from_ints(prefix));
        }
        return;
    }
    for a in (0..=max.min(r)).rev() {
        prefix.push(a);
        partitions_into(n, r - a, a, prefix, out);
        prefix.pop();
    }
}

/// Λ⁺(n, r): weakly decreasing nonnegative vectors summing to r.
pub fn lambda_plus(n: usize, r: usize) -> WeightSet {
    let mut out = Vec::new();
    partitions_into(n, r as i64, r as i64, &mut Vec::with_capacity(n), &mut out);
    WeightSet::new(format!("Lambda+({n},{r})"), out)
}

fn negate_last(w: &Weight) -> Weight {
    let mut c = w.coords().to_vec();
    if let Some(x) = c.last_mut() {
        *x = -x.clone();
    }
    Weight::new(c)
}

/// Λ⁻(n, r): Λ⁺(n, r) with the last coordinate negated.
pub fn lambda_minus(n: usize, r: usize) -> WeightSet {
    WeightSet::new(
        format!("Lambda-({n},{r})"),
        lambda_plus(n, r).iter().map(negate_last),
    )
}

/// Λ±(n, r) = Λ⁺(n, r) ∪ Λ⁻(n, r).
pub fn lambda_pm(n: usize, r: usize) -> WeightSet {
    lambda_plus(n, r).union(&lambda_minus(n, r), format!("Lambda+-({n},{r})"))
}

/// Degrees s for which the weights of E^⊗s contribute a top layer to Π(E^⊗r).
fn layer_degrees(family: Family, r: usize) -> Vec<usize> {
    match family {
        Family::B => (0..=r).rev().collect(),
        Family::C | Family::D => (0..=r / 2).map(|j| r - 2 * j).collect(),
    }
}

/// Π(E^⊗r): all weights of the r-th tensor power of the natural module.
pub fn tensor_weights(ty: LieType, r: usize) -> WeightSet {
    let n = ty.rank();
    let mut all = Vec::new();
    for s in layer_degrees(ty.family(), r) {
        all.extend(signed_compositions(n, s).elements);
    }
    WeightSet::new(format!("Pi({},{},{})", ty.family(), n, r), all)
}

/// π(E^⊗r): the dominant weights of the r-th tensor power.
pub fn tensor_dominant(ty: LieType, r: usize) -> WeightSet {
    let n = ty.rank();
    let mut all = Vec::new();
    for s in layer_degrees(ty.family(), r) {
        let layer = match ty.family() {
            Family::B | Family::C => lambda_plus(n, s),
            Family::D => lambda_pm(n, s),
        };
        all.extend(layer.elements);
    }
    WeightSet::new(format!("pi({},{},{})", ty.family(), n, r), all)
}

/// Whether `ws` is saturated: every dominant μ ≤ λ with λ ∈ ws lies in ws.
///
/// Candidates μ range over λ + ℤⁿ with 0 ≤ μᵢ ≤ max_j λ_j + r, where r is
/// the largest coordinate sum in `ws` (|μₙ| bounded likewise in type D).
pub fn is_saturated(rs: &RootSystem, ws: &WeightSet) -> Result<bool> {
    let n = rs.rank();
    for w in ws {
        if w.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "weight {w} has {} coordinates, rank is {n}",
                w.len()
            )));
        }
        if !rs.is_dominant(w) {
            return Err(Error::NonDominantMember(w.to_string()));
        }
    }
    let degree = ws
        .iter()
        .map(|w| w.abs_sum().ceil().to_integer())
        .max()
        .unwrap_or_default();
    for lam in ws {
        let max = lam
            .coords()
            .iter()
            .map(|c| scalar::abs(c).ceil().to_integer())
            .max()
            .unwrap_or_default();
        let bound: i64 = num_traits::ToPrimitive::to_i64(&(max + &degree)).unwrap_or(i64::MAX);
        let lows: Vec<i64> = (0..n)
            .map(|i| {
                if rs.family() == Family::D && i == n - 1 {
                    -bound
                } else {
                    0
                }
            })
            .collect();
        // μ ∈ λ + ℤⁿ, so enumerate integer offsets δ with μ = frac(λ) + δ.
        let base: Vec<scalar::Rational> = lam.coords().iter().map(|c| c - c.floor()).collect();
        let mut found_missing = false;
        let mut delta = lows.clone();
        'outer: loop {
            let mu = Weight::new(
                base.iter()
                    .zip(&delta)
                    .map(|(b, &d)| b + scalar::int(d))
                    .collect(),
            );
            if rs.is_dominant(&mu) && rs.dominance_leq(&mu, lam) && !ws.contains(&mu) {
                found_missing = true;
                break;
            }
            let mut k = 0;
            loop {
                if k == n {
                    break 'outer;
                }
                delta[k] += 1;
                if delta[k] <= bound {
                    break;
                }
                delta[k] = lows[k];
                k += 1;
            }
        }
        if found_missing {
            return Ok(false);
        }
    }
    Ok(true)
}
