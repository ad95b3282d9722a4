//! Highest weights of composition factors of E^{⊗r}.
//!
//! Two independent routes: the closed-form exponent rules for types B, C, D,
//! and peeling irreducible characters (computed by Freudenthal's recursion)
//! off the character of E^{⊗r}.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::replinalg::natural_weights;
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::scalar::{self, Rational};
use crate::weightsets::{lambda_plus, lambda_pm, tensor_dominant, WeightSet};

/// A finitely supported weight multiplicity function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalCharacter {
    terms: BTreeMap<Weight, u64>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Weight) -> Self {
        FormalCharacter {
            terms: BTreeMap::from([(w, 1)]),
        }
    }

    pub fn from_weights<'a>(ws: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut out = Self::new();
        for w in ws {
            *out.terms.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn dimension(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &FormalCharacter, c: u64) {
        for (w, m) in &other.terms {
            *self.terms.entry(w.clone()).or_insert(0) += c * m;
        }
    }

    /// The product of characters (weights add).
    pub fn convolve(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = FormalCharacter::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *out.terms.entry(a + b).or_insert(0) += ma * mb;
            }
        }
        out
    }

    /// Subtracts c·other, failing if any multiplicity would go negative.
    pub fn subtract_scaled(&mut self, other: &FormalCharacter, c: u64) -> Result<()> {
        for (w, m) in &other.terms {
            let have = self.terms.get(w).copied().unwrap_or(0);
            let need = c * m;
            if need > have {
                return Err(Error::NegativeMultiplicity(w.to_string()));
            }
            if have == need {
                self.terms.remove(w);
            } else {
                self.terms.insert(w.clone(), have - need);
            }
        }
        Ok(())
    }

    /// Whether multiplicities are constant on Weyl orbits.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.terms
            .iter()
            .all(|(w, m)| (0..rs.rank()).all(|i| self.multiplicity(&rs.simple_reflect(i, w)) == *m))
    }
}

/// The character of E^{⊗s}.
pub fn tensor_character(ty: LieType, s: usize) -> FormalCharacter {
    let e = FormalCharacter::from_weights(&natural_weights(ty));
    let mut out = FormalCharacter::singleton(Weight::zero(ty.rank()));
    for _ in 0..s {
        out = out.convolve(&e);
    }
    out
}

/// Weight multiplicities of L(λ) by Freudenthal's recursion.
///
/// Weights are generated level by level in λ − ℕα₁ − ⋯ − ℕαₙ, each new
/// candidate obtained by lowering a weight of the previous level by one
/// simple root.
pub fn freudenthal_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<FormalCharacter> {
    if !rs.is_dominant(lam) {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let n = rs.rank();
    let rho = rs.rho();
    let lr = lam + rho;
    let norm_top = lr.dot(&lr);
    // Positive roots with their simple-root coordinates.
    let roots: Vec<(Weight, Vec<i64>)> = rs
        .positive_roots()
        .iter()
        .map(|a| {
            let c = rs
                .simple_root_coords(a)
                .iter()
                .map(|x| scalar::to_i64(x).expect("roots are integral in simple coordinates"))
                .collect();
            (a.clone(), c)
        })
        .collect();

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut weight_of: HashMap<Vec<i64>, Weight> = HashMap::new();
    let depth0 = vec![0i64; n];
    mult.insert(depth0.clone(), 1);
    weight_of.insert(depth0.clone(), lam.clone());
    let mut level = vec![depth0];
    while !level.is_empty() {
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for c in &level {
            for i in 0..n {
                let mut d = c.clone();
                d[i] += 1;
                candidates.push(d);
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for c in candidates {
            let mu = (0..n).fold(lam.clone(), |acc, i| {
                &acc - &rs.simple_roots()[i].scale(&scalar::int(c[i]))
            });
            let mut num = Rational::zero();
            for (alpha, ac) in &roots {
                let mut k = 1i64;
                loop {
                    let d: Vec<i64> = c.iter().zip(ac).map(|(x, y)| x - k * y).collect();
                    if d.iter().any(|x| *x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&d) {
                        let up = &mu + &alpha.scale(&scalar::int(k));
                        num += up.dot(alpha) * scalar::int(m as i64);
                    }
                    k += 1;
                }
            }
            num *= scalar::int(2);
            let mr = &mu + rho;
            let den = &norm_top - mr.dot(&mr);
            let m = if den.is_zero() {
                if !num.is_zero() {
                    return Err(Error::NonIntegralMultiplicity(mu.to_string()));
                }
                Rational::zero()
            } else {
                num / den
            };
            if !m.is_integer() || m.is_negative() {
                return Err(Error::NonIntegralMultiplicity(mu.to_string()));
            }
            let m = scalar::to_i64(&m).expect("fits") as u64;
            if m > 0 {
                mult.insert(c.clone(), m);
                weight_of.insert(c.clone(), mu);
                next.push(c);
            }
        }
        level = next;
    }
    let mut out = FormalCharacter::new();
    for (c, m) in mult {
        out.terms.insert(weight_of.remove(&c).expect("recorded"), m);
    }
    Ok(out)
}

type CacheMap = HashMap<(LieType, Weight), Arc<FormalCharacter>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized irreducible character; readers share the cache concurrently.
pub fn irreducible_character(rs: &RootSystem, lam: &Weight) -> Result<Arc<FormalCharacter>> {
    let key = (rs.lie_type(), lam.clone());
    if let Some(c) = cache().read().expect("cache lock").get(&key) {
        return Ok(Arc::clone(c));
    }
    let ch = Arc::new(freudenthal_multiplicities(rs, lam)?);
    let mut w = cache().write().expect("cache lock");
    Ok(Arc::clone(w.entry(key).or_insert(ch)))
}

/// ∏_{α>0} (λ+ρ, α)/(ρ, α).
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    if !rs.is_dominant(lam) {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let lr = lam + rs.rho();
    let q = rs
        .positive_roots()
        .iter()
        .fold(scalar::one(), |acc, a| acc * lr.dot(a) / rs.rho().dot(a));
    Ok(scalar::to_i64(&q).expect("Weyl dimension is an integer") as u64)
}

/// π₀ from the exponent rules: highest weights (f₁ ≥ ⋯ ≥ fₙ ≥ 0) with
/// Σf = r − 2k (types B, C, D), plus in type B those with Σf = r − 2k′ − 1
/// and f_{n−k′} ≠ 0 (no condition once k′ ≥ n), and in type D the partner
/// (f₁, …, −fₙ) whenever fₙ > 0.
pub fn pi0_weyl_rules(ty: LieType, r: usize) -> WeightSet {
    let n = ty.rank();
    let mut out = Vec::new();
    for s in 0..=r {
        let gap = r - s;
        match ty.family() {
            Family::C if gap.is_multiple_of(2) => out.extend(lambda_plus(n, s).elements().to_vec()),
            Family::D if gap.is_multiple_of(2) => out.extend(lambda_pm(n, s).elements().to_vec()),
            Family::B if gap.is_multiple_of(2) => out.extend(lambda_plus(n, s).elements().to_vec()),
            Family::B => {
                let k = (gap - 1) / 2;
                for f in lambda_plus(n, s).iter() {
                    if k >= n || !f.coords()[n - k - 1].is_zero() {
                        out.push(f.clone());
                    }
                }
            }
            _ => {}
        }
    }
    WeightSet::new(format!("pi0({},{},{})", ty.family(), n, r), out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub weight: Vec<i64>,
    pub multiplicity: u64,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    pub pi: WeightSet,
    pub pi0: WeightSet,
    /// Irreducible factors of E^{⊗r} found by the character oracle.
    pub factors: Vec<Factor>,
    pub equal: bool,
    pub pi_minus_pi0: WeightSet,
}

impl DecompositionResult {
    pub fn multiplicity(&self, w: &[i64]) -> u64 {
        self.factors
            .iter()
            .find(|f| f.weight == w)
            .map_or(0, |f| f.multiplicity)
    }
}

fn assemble(ty: LieType, r: usize, pi0: WeightSet, factors: Vec<Factor>) -> DecompositionResult {
    let pi = tensor_dominant(ty, r);
    let pi_minus_pi0 = pi.difference(&pi0, "pi\\pi0");
    DecompositionResult {
        family: ty.family(),
        rank: ty.rank(),
        r,
        equal: pi.elements() == pi0.elements(),
        pi,
        pi0,
        factors,
        pi_minus_pi0,
    }
}

/// Decomposes char(E)^r by repeatedly removing the character of L(μ) for the
/// lexicographically largest dominant weight μ still present.
pub fn decompose_tensor_character(ty: LieType, r: usize) -> Result<DecompositionResult> {
    let rs = RootSystem::new(ty);
    let mut ch = tensor_character(ty, r);
    let mut factors = Vec::new();
    while let Some((mu, c)) = ch
        .terms
        .iter()
        .rev()
        .find(|(w, _)| rs.is_dominant(w))
        .map(|(w, c)| (w.clone(), *c))
    {
        let irr = irreducible_character(&rs, &mu)?;
        ch.subtract_scaled(&irr, c)?;
        factors.push(Factor {
            weight: mu.to_ints().expect("integral"),
            multiplicity: c,
            dimension: irr.dimension(),
        });
    }
    if !ch.is_zero() {
        let w = ch.terms.keys().next_back().expect("nonempty");
        return Err(Error::NegativeMultiplicity(format!(
            "{w} left without a dominant weight"
        )));
    }
    let pi0 = WeightSet::new(
        format!("pi0({},{},{})", ty.family(), ty.rank(), r),
        factors.iter().map(|f| Weight::from_ints(&f.weight)),
    );
    Ok(assemble(ty, r, pi0, factors))
}

/// Compares π₀ (exponent rules) with π, after checking the rules against the
/// character oracle.
pub fn compare_pi0_pi(ty: LieType, r: usize) -> Result<DecompositionResult> {
    let rules = pi0_weyl_rules(ty, r);
    let oracle = decompose_tensor_character(ty, r)?;
    if rules.elements() != oracle.pi0.elements() {
        let only_rules = rules.difference(&oracle.pi0, "rules-only");
        let only_oracle = oracle.pi0.difference(&rules, "oracle-only");
        return Err(Error::Pi0Disagreement {
            lie_type: ty.to_string(),
            r,
            detail: format!("{only_rules}; {only_oracle}"),
        });
    }
    Ok(assemble(ty, r, rules, oracle.factors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub equal: bool,
    pub pi_len: usize,
    pub pi0_len: usize,
    pub dim_s_pi: u64,
    pub dim_schur: u64,
}

pub fn classification_row(ty: LieType, r: usize) -> Result<ClassificationRow> {
    let res = compare_pi0_pi(ty, r)?;
    let (dim_s_pi, dim_schur) = schur_dimensions(ty, r)?;
    Ok(ClassificationRow {
        family: ty.family(),
        n: ty.rank(),
        r,
        equal: res.equal,
        pi_len: res.pi.len(),
        pi0_len: res.pi0.len(),
        dim_s_pi,
        dim_schur,
    })
}

/// Whether π₀ = π in type B over 1 ≤ n ≤ n_max, 1 ≤ r ≤ r_max.
pub fn classify_type_b(n_max: usize, r_max: usize) -> Result<Vec<ClassificationRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let ty = LieType::new(Family::B, n)?;
        for r in 1..=r_max {
            rows.push(classification_row(ty, r)?);
        }
    }
    Ok(rows)
}

/// (Σ_{λ∈π} dim L(λ)², Σ_{λ∈π₀} dim L(λ)²).
pub fn schur_dimensions(ty: LieType, r: usize) -> Result<(u64, u64)> {
    let rs = RootSystem::new(ty);
    let sq = |ws: &WeightSet| -> Result<u64> {
        ws.iter()
            .map(|w| weyl_dimension(&rs, w).map(|d| d * d))
            .sum()
    };
    Ok((sq(&tensor_dominant(ty, r))?, sq(&pi0_weyl_rules(ty, r))?))
}
