//! Fiber graphs of the A-grading and minimal binomial generators.
//!
//! Degree-D monomials in the moment variables are grouped by A-degree. Two
//! monomials in a fiber are adjacent when a binomial move of lower degree,
//! multiplied by a monomial, connects them. Each fiber then needs
//! (components - 1) new generators in degree D, and these counts are the
//! minimal generator numbers of the toric ideal.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::binomial::{binomial_in_ideal, GradedBinomial};
use crate::error::{Error, Result};
use crate::moments::{binomial, AMatrix, MomentIndex, Scope, VarietySpec};

pub const DEFAULT_FIBER_CAP: u128 = 10_000_000;

/// Minimal generators found degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub variety: String,
    pub max_degree: usize,
    pub counts: BTreeMap<usize, usize>,
    pub generators: Vec<GradedBinomial>,
}

impl GeneratorReport {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn of_degree(&self, degree: usize) -> impl Iterator<Item = &GradedBinomial> {
        self.generators.iter().filter(move |g| g.degree() == degree)
    }
}

type Monomial = Vec<u32>;

/// The variables of a variety together with their A-columns.
struct Grading {
    vars: Vec<MomentIndex>,
    position: HashMap<MomentIndex, u32>,
    support: Vec<Vec<u16>>,
    rows: usize,
}

impl Grading {
    fn new(spec: &VarietySpec) -> Result<Self> {
        let a = AMatrix::new(spec)?;
        let support = a
            .columns
            .iter()
            .map(|c| a.column_support(c).into_iter().map(|r| r as u16).collect())
            .collect();
        let position = a
            .columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        Ok(Grading {
            rows: a.row_count(),
            vars: a.columns,
            position,
            support,
        })
    }

    fn key(&self, monomial: &[u32]) -> Vec<u8> {
        let mut key = vec![0u8; self.rows];
        for &v in monomial {
            for &r in &self.support[v as usize] {
                key[r as usize] += 1;
            }
        }
        key
    }

    fn encode(&self, monomial: &[MomentIndex]) -> Option<Monomial> {
        let mut out: Monomial = monomial
            .iter()
            .map(|m| self.position.get(m).copied())
            .collect::<Option<_>>()?;
        out.sort_unstable();
        Some(out)
    }

    fn decode(&self, monomial: &[u32]) -> Vec<MomentIndex> {
        monomial.iter().map(|&v| self.vars[v as usize].clone()).collect()
    }

    fn monomial_count(&self, degree: usize) -> u128 {
        binomial((self.vars.len() + degree - 1) as u64, degree as u64)
    }

    /// All fibers of the given degree with at least two monomials, members in
    /// lexicographic order, fibers ordered by their smallest member.
    fn fibers(&self, degree: usize) -> Vec<Vec<Monomial>> {
        let mut groups: HashMap<Vec<u8>, Vec<Monomial>> = HashMap::new();
        let n = self.vars.len() as u32;
        for mono in (0..n).combinations_with_replacement(degree) {
            groups.entry(self.key(&mono)).or_default().push(mono);
        }
        let mut fibers: Vec<Vec<Monomial>> = groups.into_values().filter(|f| f.len() > 1).collect();
        fibers.sort_unstable_by(|a, b| a[0].cmp(&b[0]));
        fibers
    }
}

/// Binomial moves indexed by the monomial they can be applied to.
#[derive(Default)]
struct MoveSet {
    by_side: HashMap<Monomial, Vec<Monomial>>,
    degrees: Vec<usize>,
}

impl MoveSet {
    fn add(&mut self, plus: &Monomial, minus: &Monomial) {
        self.by_side.entry(plus.clone()).or_default().push(minus.clone());
        self.by_side.entry(minus.clone()).or_default().push(plus.clone());
        if !self.degrees.contains(&plus.len()) {
            self.degrees.push(plus.len());
        }
    }

    /// Neighbours of `u` reachable by one move of degree at most `max_degree`.
    fn neighbours(&self, u: &Monomial, max_degree: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for &k in &self.degrees {
            if k > max_degree || k > u.len() {
                continue;
            }
            let mut seen: Vec<Monomial> = Vec::new();
            for pos in (0..u.len()).combinations(k) {
                let sub: Monomial = pos.iter().map(|&p| u[p]).collect();
                if seen.contains(&sub) {
                    continue;
                }
                let Some(partners) = self.by_side.get(&sub) else {
                    seen.push(sub);
                    continue;
                };
                let rest = multiset_difference(u, &sub);
                for partner in partners {
                    let mut v = rest.clone();
                    v.extend_from_slice(partner);
                    v.sort_unstable();
                    out.push(v);
                }
                seen.push(sub);
            }
        }
        out
    }
}

fn multiset_difference(u: &[u32], sub: &[u32]) -> Monomial {
    let mut out = Vec::with_capacity(u.len() - sub.len());
    let mut j = 0;
    for &x in u {
        if j < sub.len() && sub[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives so that roots are the
    /// lexicographically smallest members.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Components of a fiber under the moves of degree at most `max_degree`.
fn fiber_components(fiber: &[Monomial], moves: &MoveSet, max_degree: usize) -> UnionFind {
    let local: HashMap<&Monomial, usize> = fiber.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut uf = UnionFind::new(fiber.len());
    for (i, u) in fiber.iter().enumerate() {
        for v in moves.neighbours(u, max_degree) {
            let j = local[&v];
            uf.union(i, j);
        }
    }
    uf
}

/// Degree bound used when none is given: 3 for strata, whose ideals are
/// generated in degree at most 3. Full moment varieties need an explicit bound.
pub fn default_max_degree(spec: &VarietySpec) -> Option<usize> {
    match spec.scope {
        Scope::Stratum(_) => Some(3),
        Scope::Full(_) => None,
    }
}

/// Minimal binomial generators of the toric ideal in degrees 2..=max_degree.
pub fn ideal_generators_up_to(spec: &VarietySpec, max_degree: usize) -> Result<GeneratorReport> {
    ideal_generators_with_cap(spec, max_degree, DEFAULT_FIBER_CAP)
}

pub fn ideal_generators_with_cap(
    spec: &VarietySpec,
    max_degree: usize,
    cap: u128,
) -> Result<GeneratorReport> {
    if spec.r != 1 {
        return Err(Error::PreconditionFailed(
            "generators are computed for toric varieties (r = 1)".into(),
        ));
    }
    let grading = Grading::new(spec)?;
    let mut moves = MoveSet::default();
    let mut counts = BTreeMap::new();
    let mut generators = Vec::new();
    for degree in 2..=max_degree {
        let count = grading.monomial_count(degree);
        if count > cap {
            return Err(Error::FiberCapExceeded { degree, count, cap });
        }
        let fibers = grading.fibers(degree);
        let found: Vec<(Monomial, Monomial)> = fibers
            .par_iter()
            .flat_map_iter(|fiber| {
                let mut uf = fiber_components(fiber, &moves, degree - 1);
                let mut out = Vec::new();
                // fiber[0] is the global minimum and roots are component minima
                for i in 1..fiber.len() {
                    if uf.find(i) == i {
                        out.push((fiber[0].clone(), fiber[i].clone()));
                    }
                }
                out
            })
            .collect();
        counts.insert(degree, found.len());
        for (plus, minus) in &found {
            moves.add(plus, minus);
            generators.push(GradedBinomial {
                plus: grading.decode(plus),
                minus: grading.decode(minus),
            });
        }
    }
    Ok(GeneratorReport {
        variety: spec.label(),
        max_degree,
        counts,
        generators,
    })
}

fn encode_all(grading: &Grading, moves: &[GradedBinomial]) -> Result<Vec<(Monomial, Monomial)>> {
    moves
        .iter()
        .map(|b| {
            let p = grading.encode(&b.plus);
            let m = grading.encode(&b.minus);
            match (p, m) {
                (Some(p), Some(m)) => Ok((p, m)),
                _ => Err(Error::IndexOutOfStratum(
                    b.plus.iter().chain(&b.minus).next().cloned().expect("nonempty"),
                )),
            }
        })
        .collect()
}

/// True when the given moves connect every fiber of the given degree, i.e.
/// they generate the degree-`degree` part of the toric ideal.
pub fn moves_connect_fibers(
    spec: &VarietySpec,
    moves: &[GradedBinomial],
    degree: usize,
) -> Result<bool> {
    let grading = Grading::new(spec)?;
    let mut set = MoveSet::default();
    for (p, m) in encode_all(&grading, moves)? {
        set.add(&p, &m);
    }
    let fibers = grading.fibers(degree);
    Ok(fibers.par_iter().all(|fiber| {
        let mut uf = fiber_components(fiber, &set, degree);
        (1..fiber.len()).all(|i| uf.find(i) == 0)
    }))
}

/// Extracts a minimal generating subset from binomials that generate the
/// toric ideal up to their largest degree: degree by degree, a binomial is
/// kept only when it joins two components of its fiber not already joined by
/// lower-degree moves or previously kept binomials.
pub fn minimal_subset(spec: &VarietySpec, binomials: &[GradedBinomial]) -> Result<Vec<GradedBinomial>> {
    let grading = Grading::new(spec)?;
    let encoded = encode_all(&grading, binomials)?;
    let max_degree = encoded.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
    let mut kept = Vec::new();
    let mut moves = MoveSet::default();
    for degree in 2..=max_degree {
        let mut candidates: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        for (i, (p, _)) in encoded.iter().enumerate() {
            if p.len() == degree {
                candidates.entry(grading.key(p)).or_default().push(i);
            }
        }
        let mut kept_here = Vec::new();
        for fiber in grading.fibers(degree) {
            let Some(cands) = candidates.get(&grading.key(&fiber[0])) else {
                continue;
            };
            let mut uf = fiber_components(&fiber, &moves, degree - 1);
            let local: HashMap<&Monomial, usize> =
                fiber.iter().enumerate().map(|(i, m)| (m, i)).collect();
            for &c in cands {
                let (p, m) = &encoded[c];
                if uf.union(local[p], local[m]) {
                    kept_here.push(c);
                }
            }
        }
        kept_here.sort_unstable();
        for c in kept_here {
            moves.add(&encoded[c].0, &encoded[c].1);
            kept.push(binomials[c].clone());
        }
    }
    Ok(kept)
}

/// Checks every listed generator against the A-degree criterion.
pub fn all_in_ideal(spec: &VarietySpec, gens: &[GradedBinomial]) -> bool {
    gens.iter().all(|g| binomial_in_ideal(spec, g))
}
