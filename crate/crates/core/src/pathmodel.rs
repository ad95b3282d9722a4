//! Littelmann paths, root operators, crystals and string parametrizations.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::decomposition::{schur_dimensions, weyl_dimension, FormalCharacter};
use crate::error::{Error, Result};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::scalar::{self, Rational};
use crate::weightsets::tensor_dominant;

/// Default cap on the number of crystal elements.
pub const DEFAULT_CRYSTAL_CAP: usize = 10_000;

/// A piecewise-linear path from the origin, stored by its breakpoints
/// `(t, x(t))` with 0 = t₀ < t₁ < ⋯ < t_k = 1. Consecutive segments never
/// share a velocity, so equal paths have equal breakpoint lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    points: Vec<(Rational, Weight)>,
}

impl Path {
    /// t ↦ tλ.
    pub fn straight(rs: &RootSystem, lam: &Weight) -> Result<Path> {
        if !rs.is_dominant(lam) {
            return Err(Error::NotDominant(lam.to_string()));
        }
        Ok(Self::from_points(vec![
            (scalar::zero(), Weight::zero(lam.len())),
            (scalar::one(), lam.clone()),
        ]))
    }

    fn from_points(points: Vec<(Rational, Weight)>) -> Path {
        let mut p = Path { points };
        p.normalize();
        p
    }

    pub fn points(&self) -> &[(Rational, Weight)] {
        &self.points
    }

    pub fn endpoint(&self) -> &Weight {
        &self.points.last().expect("paths are nonempty").1
    }

    fn normalize(&mut self) {
        let velocity = |a: &(Rational, Weight), b: &(Rational, Weight)| {
            (&b.1 - &a.1).scale(&(scalar::one() / (&b.0 - &a.0)))
        };
        let mut out: Vec<(Rational, Weight)> = Vec::with_capacity(self.points.len());
        for p in self.points.drain(..) {
            if let Some(last) = out.last() {
                if last.0 == p.0 {
                    continue;
                }
            }
            if out.len() >= 2 {
                let k = out.len();
                if velocity(&out[k - 2], &out[k - 1]) == velocity(&out[k - 1], &p) {
                    out.pop();
                }
            }
            out.push(p);
        }
        self.points = out;
    }

    fn heights(&self, coroot: &Weight) -> Vec<Rational> {
        self.points.iter().map(|(_, x)| x.dot(coroot)).collect()
    }

    /// Inserts the point where segment (k, k+1) reaches height `level`;
    /// returns its index.
    fn split_at_level(&mut self, k: usize, hs: &mut Vec<Rational>, level: &Rational) -> usize {
        if &hs[k] == level {
            return k;
        }
        if &hs[k + 1] == level {
            return k + 1;
        }
        let (ta, pa) = &self.points[k];
        let (tb, pb) = &self.points[k + 1];
        let s = (level - &hs[k]) / (&hs[k + 1] - &hs[k]);
        let t = ta + &s * (tb - ta);
        let p = pa + &(pb - pa).scale(&s);
        self.points.insert(k + 1, (t, p));
        hs.insert(k + 1, level.clone());
        k + 1
    }

    /// The root operator f̃ for simple root `i`; `None` when it annihilates.
    pub fn f_op(&self, rs: &RootSystem, i: usize) -> Option<Path> {
        let alpha = &rs.simple_roots()[i];
        let coroot = &rs.coroots()[i];
        let mut p = self.clone();
        let mut hs = p.heights(coroot);
        let q = hs.iter().min().expect("nonempty").clone();
        let one = scalar::one();
        if hs.last().expect("nonempty") - &q < one {
            return None;
        }
        let i0 = hs.iter().rposition(|h| h == &q).expect("minimum attained");
        let level = &q + &one;
        let j = (i0 + 1..hs.len())
            .find(|&j| hs[j] >= level)
            .expect("endpoint is at least min + 1");
        let i1 = p.split_at_level(j - 1, &mut hs, &level);
        let points = p
            .points
            .iter()
            .zip(&hs)
            .enumerate()
            .map(|(k, ((t, x), h))| {
                let y = if k <= i0 {
                    x.clone()
                } else if k <= i1 {
                    x - &alpha.scale(&(h - &q))
                } else {
                    x - alpha
                };
                (t.clone(), y)
            })
            .collect();
        Some(Path::from_points(points))
    }

    /// The root operator ẽ for simple root `i`; `None` when it annihilates.
    pub fn e_op(&self, rs: &RootSystem, i: usize) -> Option<Path> {
        let alpha = &rs.simple_roots()[i];
        let coroot = &rs.coroots()[i];
        let mut p = self.clone();
        let mut hs = p.heights(coroot);
        let q = hs.iter().min().expect("nonempty").clone();
        let one = scalar::one();
        if q > -one.clone() {
            return None;
        }
        let i1 = hs.iter().position(|h| h == &q).expect("minimum attained");
        let level = &q + &one;
        let j = (0..i1)
            .rev()
            .find(|&j| hs[j] >= level)
            .expect("origin is at height 0 > min");
        let i0 = p.split_at_level(j, &mut hs, &level);
        let i1 = i1 + (p.points.len() - self.points.len());
        let points = p
            .points
            .iter()
            .zip(&hs)
            .enumerate()
            .map(|(k, ((t, x), h))| {
                let y = if k < i0 {
                    x.clone()
                } else if k <= i1 {
                    x - &alpha.scale(&(h - &level))
                } else {
                    x + alpha
                };
                (t.clone(), y)
            })
            .collect();
        Some(Path::from_points(points))
    }
}

#[derive(Serialize)]
struct PathWire {
    breakpoints: Vec<(String, Vec<String>)>,
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathWire {
            breakpoints: self
                .points
                .iter()
                .map(|(t, x)| {
                    (
                        scalar::to_pq(t),
                        x.coords().iter().map(scalar::to_pq).collect(),
                    )
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// The closure of the straight path P_λ under all f̃_i.
#[derive(Clone, Debug)]
pub struct Crystal {
    ty: LieType,
    highest: Weight,
    elements: Vec<Path>,
    index: HashMap<Path, usize>,
    /// (source, root index) → target, for every defined f̃ step.
    edges: BTreeMap<(usize, usize), usize>,
}

impl Crystal {
    pub fn generate(rs: &RootSystem, lam: &Weight, cap: usize) -> Result<Crystal> {
        let start = Path::straight(rs, lam)?;
        let mut elements = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut edges = BTreeMap::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for i in 0..rs.rank() {
                if let Some(q) = elements[k].f_op(rs, i) {
                    let target = match index.get(&q) {
                        Some(&t) => t,
                        None => {
                            if elements.len() >= cap {
                                return Err(Error::CrystalTooLarge(cap));
                            }
                            let t = elements.len();
                            index.insert(q.clone(), t);
                            elements.push(q);
                            queue.push_back(t);
                            t
                        }
                    };
                    edges.insert((k, i), target);
                }
            }
        }
        Ok(Crystal {
            ty: rs.lie_type(),
            highest: lam.clone(),
            elements,
            index,
            edges,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Path] {
        &self.elements
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edges
    }

    /// Endpoint multiset.
    pub fn character(&self) -> FormalCharacter {
        let ends: Vec<Weight> = self.elements.iter().map(|p| p.endpoint().clone()).collect();
        FormalCharacter::from_weights(&ends)
    }
}

#[derive(Serialize)]
struct CrystalWire<'a> {
    highest: Vec<String>,
    elements: &'a [Path],
    /// (from, root (1-based), to).
    edges: Vec<(usize, usize, usize)>,
}

impl Serialize for Crystal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CrystalWire {
            highest: self.highest.coords().iter().map(scalar::to_short).collect(),
            elements: &self.elements,
            edges: self
                .edges
                .iter()
                .map(|(&(a, i), &b)| (a, i + 1, b))
                .collect(),
        }
        .serialize(s)
    }
}

/// Exponents (n₁, …, n_m) along a fixed reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StringTuple(pub Vec<u64>);

impl StringTuple {
    pub fn reversed(&self) -> StringTuple {
        StringTuple(self.0.iter().rev().copied().collect())
    }
}

/// For every crystal element (in crystal order), strip ẽ_{i₁} as often as
/// possible, then ẽ_{i₂}, and so on along `word`, recording the counts.
pub fn string_tuples(
    rs: &RootSystem,
    crystal: &Crystal,
    word: &[usize],
) -> Result<Vec<StringTuple>> {
    let top = Path::straight(rs, crystal.highest())?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(crystal.len());
    for p in crystal.elements() {
        let mut cur = p.clone();
        let mut counts = Vec::with_capacity(word.len());
        for &i in word {
            let mut c = 0;
            while let Some(next) = cur.e_op(rs, i) {
                cur = next;
                c += 1;
            }
            counts.push(c);
        }
        if cur != top {
            return Err(Error::StringExtraction(format!(
                "path ending at {} did not return to the highest path",
                p.endpoint()
            )));
        }
        let t = StringTuple(counts);
        if !seen.insert(t.clone()) {
            return Err(Error::StringExtraction(format!(
                "duplicate string {:?}",
                t.0
            )));
        }
        out.push(t);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub weight: Vec<i64>,
    pub dual_weight: Vec<i64>,
    pub strings: usize,
    pub dual_strings_opp: usize,
    pub product: u64,
    pub weyl_dim_squared: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    pub reduced_word: Vec<usize>,
    pub entries: Vec<CensusEntry>,
    pub total: u64,
    pub expected_total: u64,
    pub ok: bool,
}

/// Counts |S_λ|·|S^opp_{−w₀λ}| over λ ∈ π and compares with dim L(λ)² and
/// with Σ_{λ∈π} dim L(λ)².
pub fn basis_census(ty: LieType, r: usize, cap: usize) -> Result<CensusReport> {
    let rs = RootSystem::new(ty);
    let w0 = rs.longest_element();
    let word = w0.word().to_vec();
    let count = |lam: &Weight| -> Result<Vec<StringTuple>> {
        let c = Crystal::generate(&rs, lam, cap)?;
        string_tuples(&rs, &c, &word)
    };
    let mut entries = Vec::new();
    for lam in tensor_dominant(ty, r).iter() {
        let dual = -&w0.apply(lam);
        let s = count(lam)?;
        let opp: HashSet<StringTuple> = count(&dual)?.iter().map(StringTuple::reversed).collect();
        let d = weyl_dimension(&rs, lam)?;
        let product = (s.len() * opp.len()) as u64;
        entries.push(CensusEntry {
            weight: lam.to_ints().expect("integral"),
            dual_weight: dual.to_ints().expect("integral"),
            strings: s.len(),
            dual_strings_opp: opp.len(),
            product,
            weyl_dim_squared: d * d,
            ok: product == d * d,
        });
    }
    let total = entries.iter().map(|e| e.product).sum();
    let expected_total = schur_dimensions(ty, r)?.0;
    Ok(CensusReport {
        family: ty.family(),
        rank: ty.rank(),
        r,
        reduced_word: w0.word_one_based(),
        ok: entries.iter().all(|e| e.ok) && total == expected_total,
        entries,
        total,
        expected_total,
    })
}

/// Whether h(t) = (x(t), α_i^∨) attains an integer minimum for every i
/// (a property of every path in the crystal of a dominant integral λ).
pub fn has_integral_minima(rs: &RootSystem, p: &Path) -> bool {
    (0..rs.rank()).all(|i| {
        let hs = p.heights(&rs.coroots()[i]);
        hs.iter().min().is_some_and(|m| m.is_integer())
    }) && !p.points.is_empty()
        && p.points[0].0.is_zero()
}
