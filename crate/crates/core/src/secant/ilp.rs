//! The integer program bounding dim σ_r(M_{n,d}): maximize Σ c_i - 1 subject
//! to 0 ≤ c_i ≤ nr and Σ_{i∈S} c_i ≤ Σ_{λ∩S≠∅} |N_λ| for every S ⊆ [d].
//!
//! Subsets of [d] are bitmasks; bit i - 1 stands for the part size i.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{moment_count, partitions_fitting};

pub const MAX_ILP_DEGREE: usize = 20;

/// min{rnd - rn + n - 1, binom(n+d-1, d) - 1}.
pub fn bound_expected(n: usize, d: usize, r: usize) -> i128 {
    let (n, d, r) = (n as i128, d as i128, r as i128);
    let cone = r * n * d - r * n + n - 1;
    cone.min(moment_count(n as usize, d as usize) as i128 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IlpInstance {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    /// rhs[S] = Σ |N_λ| over λ ⊢ d of length ≤ n having a part in S.
    pub rhs: Vec<i128>,
}

impl IlpInstance {
    pub fn new(n: usize, d: usize, r: usize) -> Result<Self> {
        if d > MAX_ILP_DEGREE {
            return Err(Error::TooManySubsets(d));
        }
        if n == 0 || d == 0 {
            return Err(Error::PreconditionFailed("n and d must be positive".into()));
        }
        let full = 1usize << d;
        // inside[T] = Σ |N_λ| over λ whose parts all lie in T
        let mut inside = vec![0i128; full];
        let mut total = 0i128;
        for lam in partitions_fitting(d as u32, n) {
            let mask = lam
                .distinct_parts()
                .iter()
                .fold(0usize, |m, &p| m | 1 << (p - 1));
            let w = lam.stratum_size(n)? as i128;
            inside[mask] += w;
            total += w;
        }
        for bit in 0..d {
            for t in 0..full {
                if t & (1 << bit) != 0 {
                    inside[t] += inside[t ^ (1 << bit)];
                }
            }
        }
        let rhs = (0..full).map(|s| total - inside[(full - 1) ^ s]).collect();
        Ok(IlpInstance { n, d, r, rhs })
    }

    pub fn cap(&self) -> i128 {
        (self.n * self.r) as i128
    }

    fn subset_sums(&self, c: &[i128]) -> Vec<i128> {
        let mut sums = vec![0i128; self.rhs.len()];
        for s in 1..sums.len() {
            let low = s.trailing_zeros() as usize;
            sums[s] = sums[s & (s - 1)] + c[low];
        }
        sums
    }

    /// First violated constraint, if any.
    pub fn violation(&self, c: &[i128]) -> Option<String> {
        if c.len() != self.d {
            return Some(format!("expected {} coordinates, got {}", self.d, c.len()));
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci < 0 || ci > self.cap() {
                return Some(format!("c_{} = {ci} outside [0, {}]", i + 1, self.cap()));
            }
        }
        let sums = self.subset_sums(c);
        (1..self.rhs.len())
            .find(|&s| sums[s] > self.rhs[s])
            .map(|s| format!("sum over {:?} is {} > {}", mask_elements(s), sums[s], self.rhs[s]))
    }

    pub fn is_feasible(&self, c: &[i128]) -> bool {
        self.violation(c).is_none()
    }
}

/// Elements of a subset mask as part sizes 1..=d.
pub fn mask_elements(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|&b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IlpSolution {
    pub c: Vec<i128>,
    pub value: i128,
}

/// Exact optimum by depth-first branch and bound. Coordinates are fixed from
/// c_d down to c_1, values tried in decreasing order. A node is pruned when
/// the relaxation c(A) + min_M [rhs(M) - c(M ∩ A) + nr |U \ M|] cannot beat
/// the incumbent, where A is the fixed and U the free coordinates.
pub fn bound_ilp_exhaustive(n: usize, d: usize, r: usize) -> Result<IlpSolution> {
    let inst = IlpInstance::new(n, d, r)?;
    Ok(solve_exhaustive(&inst))
}

pub fn solve_exhaustive(inst: &IlpInstance) -> IlpSolution {
    struct Search<'a> {
        inst: &'a IlpInstance,
        c: Vec<i128>,
        best: i128,
        best_c: Vec<i128>,
    }

    impl Search<'_> {
        /// Largest feasible value for coordinate i given the fixed ones.
        fn max_value(&self, i: usize, fixed: usize) -> i128 {
            let mut hi = self.inst.cap();
            // every S = T ∪ {i} with T a subset of the fixed coordinates
            let mut rest = fixed;
            loop {
                let s = rest | 1 << i;
                let others: i128 = mask_elements(rest).iter().map(|&p| self.c[p - 1]).sum();
                hi = hi.min(self.inst.rhs[s] - others);
                if rest == 0 {
                    break;
                }
                rest = (rest - 1) & fixed;
            }
            hi
        }

        fn relaxation(&self, fixed: usize) -> i128 {
            let full = self.inst.rhs.len() - 1;
            let free = full ^ fixed;
            let assigned: i128 = mask_elements(fixed).iter().map(|&p| self.c[p - 1]).sum();
            let mut best = i128::MAX;
            for m in 0..=full {
                let inside: i128 = mask_elements(m & fixed).iter().map(|&p| self.c[p - 1]).sum();
                let outside_free = (free & !m).count_ones() as i128;
                let v = self.inst.rhs[m] - inside + self.inst.cap() * outside_free;
                best = best.min(v);
            }
            assigned + best
        }

        fn run(&mut self, depth: usize, fixed: usize) {
            let d = self.inst.d;
            if depth == d {
                let total: i128 = self.c.iter().sum();
                if total - 1 > self.best {
                    self.best = total - 1;
                    self.best_c = self.c.clone();
                }
                return;
            }
            if self.relaxation(fixed) - 1 <= self.best {
                return;
            }
            let i = d - 1 - depth;
            let hi = self.max_value(i, fixed);
            for v in (0..=hi.max(0)).rev() {
                self.c[i] = v;
                self.run(depth + 1, fixed | 1 << i);
            }
            self.c[i] = 0;
        }
    }

    let mut search = Search {
        inst,
        c: vec![0; inst.d],
        best: -1,
        best_c: vec![0; inst.d],
    };
    search.run(0, 0);
    IlpSolution {
        value: search.best,
        c: search.best_c,
    }
}

/// The greedy solution: r rounds, each raising c_d, c_{d-1}, ..., c_1 in
/// turn by as much as possible, up to n.
pub fn greedy_ilp(n: usize, d: usize, r: usize) -> Result<IlpSolution> {
    let inst = IlpInstance::new(n, d, r)?;
    Ok(solve_greedy(&inst))
}

pub fn solve_greedy(inst: &IlpInstance) -> IlpSolution {
    let d = inst.d;
    let step = inst.n as i128;
    let mut c = vec![0i128; d];
    let mut sums = vec![0i128; inst.rhs.len()];
    for _ in 0..inst.r {
        for i in (0..d).rev() {
            let bit = 1 << i;
            let slack = (1..inst.rhs.len())
                .filter(|s| s & bit != 0)
                .map(|s| inst.rhs[s] - sums[s])
                .min()
                .unwrap_or(0);
            let delta = step.min(slack).max(0);
            if delta > 0 {
                c[i] += delta;
                for (s, v) in sums.iter_mut().enumerate() {
                    if s & bit != 0 {
                        *v += delta;
                    }
                }
            }
        }
    }
    let value = c.iter().sum::<i128>() - 1;
    IlpSolution { c, value }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualEntry {
    pub set: Vec<usize>,
    pub value: u8,
}

/// Dual point (y, z) matching the primal objective of an optimal c.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCertificate {
    pub y: Vec<DualEntry>,
    pub z: Vec<u8>,
    pub saturated_set: Vec<usize>,
    pub primal_objective: i128,
    pub dual_objective: i128,
}

/// Builds y = indicator of the maximal saturated set and z = indicator of
/// coordinates lying in no saturated set, then checks dual feasibility and
/// equality of the two objectives.
pub fn certify_greedy(inst: &IlpInstance, c: &[i128]) -> Result<DualCertificate> {
    if let Some(v) = inst.violation(c) {
        return Err(Error::CertificateFailure(format!("primal infeasible: {v}")));
    }
    let sums = inst.subset_sums(c);
    let union = (1..inst.rhs.len())
        .filter(|&s| sums[s] == inst.rhs[s])
        .fold(0usize, |u, s| u | s);
    if union != 0 && sums[union] != inst.rhs[union] {
        return Err(Error::CertificateFailure(format!(
            "union {:?} of saturated sets is not saturated",
            mask_elements(union)
        )));
    }
    let z: Vec<u8> = (0..inst.d).map(|i| u8::from(union & (1 << i) == 0)).collect();
    let y = if union == 0 {
        Vec::new()
    } else {
        vec![DualEntry {
            set: mask_elements(union),
            value: 1,
        }]
    };
    for i in 0..inst.d {
        let cover = z[i] as u32 + u32::from(union & (1 << i) != 0);
        if cover < 1 {
            return Err(Error::CertificateFailure(format!("dual constraint {} violated", i + 1)));
        }
    }
    let primal = c.iter().sum::<i128>() - 1;
    let z_total: i128 = z.iter().map(|&v| v as i128).sum();
    let y_total = if union == 0 { 0 } else { inst.rhs[union] };
    let dual = inst.cap() * z_total + y_total - 1;
    if dual != primal {
        return Err(Error::CertificateFailure(format!(
            "objective gap: primal {primal}, dual {dual}"
        )));
    }
    Ok(DualCertificate {
        y,
        z,
        saturated_set: mask_elements(union),
        primal_objective: primal,
        dual_objective: dual,
    })
}
