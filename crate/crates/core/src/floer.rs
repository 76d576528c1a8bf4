//! Combinatorial stand-in for the reduced monopole Floer homology of
//! Brieskorn spheres: tau sequences from lattice-point counts, graded
//! roots, the reflection involution, ranks, and the anti-invariant Euler
//! characteristic.

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

/// The partial-sum sequence driving a graded root. `values[0] = 0`;
/// from `stabilization_index` on, consecutive differences are strictly
/// positive (the sequence has left its branching region).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSequence {
    values: Vec<i64>,
    stabilization_index: usize,
}

impl TauSequence {
    pub fn new(values: Vec<i64>, stabilization_index: usize) -> Result<Self> {
        if values.first() != Some(&0) {
            return Err(Error::domain("a tau sequence must start at 0"));
        }
        if stabilization_index >= values.len() {
            return Err(Error::NotStabilized);
        }
        for n in stabilization_index..values.len() - 1 {
            if values[n + 1] <= values[n] {
                return Err(Error::NotStabilized);
            }
        }
        Ok(TauSequence { values, stabilization_index })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn stabilization_index(&self) -> usize {
        self.stabilization_index
    }
}

/// Canonical Seifert invariants of Σ(a1,a2,a3): central weight `b0` and
/// one cone point (a_i, w_i) per singular fiber, normalized so that
/// e·b0 + Σ w_i·(e/a_i) = -1 with w_i in [0, a_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub e: i64,
    pub b0: i64,
    pub fibers: Vec<(i64, i64)>,
}

fn mod_inverse(x: i64, modulus: i64) -> i64 {
    let g = x.extended_gcd(&modulus);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(modulus)
}

pub fn seifert_data(p: i64, q: i64, r: i64) -> Result<SeifertData> {
    let triple = [p, q, r];
    for &a in &triple {
        if a < 1 {
            return Err(Error::domain(format!(
                "Brieskorn parameters must be positive, got ({p}, {q}, {r})"
            )));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if triple[i].gcd(&triple[j]) != 1 {
                return Err(Error::NotCoprime { a: triple[i], b: triple[j] });
            }
        }
    }
    let e = p
        .checked_mul(q)
        .and_then(|pq| pq.checked_mul(r))
        .ok_or_else(|| Error::domain("Brieskorn parameters too large"))?;

    let mut fibers = Vec::with_capacity(3);
    let mut weight_sum = 0i64;
    for &a in &triple {
        let w = if a == 1 {
            0
        } else {
            // (e/a) * w = -1 (mod a), w in [1, a)
            (-mod_inverse((e / a).rem_euclid(a), a)).rem_euclid(a)
        };
        fibers.push((a, w));
        weight_sum += w * (e / a);
    }
    let b0 = -(1 + weight_sum) / e;
    debug_assert_eq!(e * b0 + weight_sum, -1);
    Ok(SeifertData { e, b0, fibers })
}

/// The n-th difference of the tau sequence: the orbifold lattice-point
/// count 1 - b0·n - Σ ceil(n·w_i / a_i).
fn tau_increment(d: &SeifertData, n: i64) -> i64 {
    let mut delta = 1 - d.b0 * n;
    for &(a, w) in &d.fibers {
        delta -= num_integer::Integer::div_ceil(&(n * w), &a);
    }
    delta
}

/// The CRT-canonical semigroup representative of n: the least element of
/// the semigroup generated by {e/a_i} that is congruent to n modulo each
/// a_i in the forced way. `(n - m0(n)) / e` is an integer.
pub fn semigroup_representative(d: &SeifertData, n: i64) -> i64 {
    let mut m0 = 0;
    for &(a, _) in &d.fibers {
        if a == 1 {
            continue;
        }
        let m = d.e / a;
        // rho in [0, a): rho * (e/a) = n (mod a)
        let rho = (n.rem_euclid(a) * mod_inverse(m.rem_euclid(a), a)).rem_euclid(a);
        m0 += rho * m;
    }
    m0
}

/// Tau sequence of the Brieskorn sphere Σ(p,q,r), generated through the
/// default stabilization window of p·q·r consecutive positive increments.
pub fn tau_sequence_brieskorn(p: i64, q: i64, r: i64) -> Result<TauSequence> {
    let window = (p.checked_mul(q).and_then(|pq| pq.checked_mul(r)))
        .ok_or_else(|| Error::domain("Brieskorn parameters too large"))?;
    tau_sequence_brieskorn_with_window(p, q, r, window as usize)
}

/// Same, with an explicit stabilization window (number of consecutive
/// strictly positive increments demanded before cutting the sequence).
pub fn tau_sequence_brieskorn_with_window(
    p: i64,
    q: i64,
    r: i64,
    window: usize,
) -> Result<TauSequence> {
    if window == 0 {
        return Err(Error::domain("stabilization window must be positive"));
    }
    let data = seifert_data(p, q, r)?;
    let mut values = vec![0i64];
    let mut run = 0usize;
    let mut n = 0i64;
    // Increments are 1 + s(n) with s(n) >= 0 once n clears 3e, so any
    // window <= e terminates well before this bound.
    let hard_stop = 4 * data.e + window as i64 + 1;
    while run < window {
        let delta = tau_increment(&data, n);
        values.push(values[n as usize] + delta);
        run = if delta >= 1 { run + 1 } else { 0 };
        n += 1;
        if n > hard_stop {
            return Err(Error::NotStabilized);
        }
    }
    let stabilization_index = values.len() - 1 - window;
    TauSequence::new(values, stabilization_index)
}

/// One vertex of a graded root. Vertices are indexed level-major from the
/// minimum grading upward, left to right within a level; `parent` is the
/// containing vertex one level up (`None` exactly for the root).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootVertex {
    pub level: i64,
    pub parent: Option<usize>,
    pub involution_image: usize,
}

/// A graded root: the merge tree of the sublevel sets of a tau sequence,
/// cut one level above the last branching, together with the reflection
/// involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRoot {
    min_level: i64,
    root_level: i64,
    level_counts: Vec<usize>,
    vertices: Vec<RootVertex>,
}

impl GradedRoot {
    pub fn min_level(&self) -> i64 {
        self.min_level
    }

    pub fn root_level(&self) -> i64 {
        self.root_level
    }

    /// Vertex count at each level from `min_level` to `root_level`.
    pub fn level_counts(&self) -> &[usize] {
        &self.level_counts
    }

    pub fn vertices(&self) -> &[RootVertex] {
        &self.vertices
    }

    /// Index of the root vertex (the unique vertex at `root_level`).
    pub fn root(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Vertices with no children.
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.vertices.len()];
        for v in &self.vertices {
            if let Some(p) = v.parent {
                has_child[p] = true;
            }
        }
        (0..self.vertices.len()).filter(|&i| !has_child[i]).collect()
    }

    /// Rank of the reduced homology the root models: one generator per
    /// extra branch per level.
    pub fn reduced_rank(&self) -> i64 {
        self.level_counts.iter().map(|&c| c as i64 - 1).sum()
    }

    /// Total number of 2-cycles of the involution across all levels: the
    /// dimension of the (-1)-eigenspace of the reflection on the reduced
    /// homology.
    pub fn involution_two_cycles(&self) -> i64 {
        self.level_counts.iter().map(|&c| (c / 2) as i64).sum()
    }
}

/// Build the graded root of a stabilized tau sequence. Sublevel-set
/// components become vertices, merges happen one level up, and the tree is
/// cut one level above the last branching. The involution is the
/// reflection n -> N-n of the branching region, acting on each level by
/// reversing the component order; if that reversal is not a tree
/// automorphism the sequence has no reflection symmetry and the
/// construction reports it.
pub fn graded_root(t: &TauSequence) -> Result<GradedRoot> {
    let vals = t.values();
    let min_level = *vals.iter().min().unwrap();
    let max_level = *vals.iter().max().unwrap();

    // Components of {n : tau(n) <= j} per level, as interval start points.
    let components_at = |j: i64| -> Vec<usize> {
        let mut starts = Vec::new();
        let mut inside = false;
        for (n, &v) in vals.iter().enumerate() {
            if v <= j {
                if !inside {
                    starts.push(n);
                }
                inside = true;
            } else {
                inside = false;
            }
        }
        starts
    };

    let mut root_level = min_level;
    for j in min_level..=max_level {
        if components_at(j).len() >= 2 {
            root_level = j + 1;
        }
    }

    let mut level_counts = Vec::new();
    let mut vertices: Vec<RootVertex> = Vec::new();
    let mut previous: Vec<(usize, usize)> = Vec::new(); // (start, vertex id) one level down
    for j in min_level..=root_level {
        let starts = components_at(j);
        level_counts.push(starts.len());
        let base = vertices.len();
        for &start in &starts {
            vertices.push(RootVertex { level: j, parent: None, involution_image: 0 });
            let _ = start;
        }
        // Parent of a level-(j-1) component: the level-j component whose
        // interval contains it. Intervals at level j are separated by
        // indices with tau > j, so containment is determined by starts.
        for &(child_start, child_id) in &previous {
            let mut parent_idx = 0;
            for (k, &s) in starts.iter().enumerate() {
                if s <= child_start {
                    parent_idx = k;
                }
            }
            vertices[child_id].parent = Some(base + parent_idx);
        }
        previous = starts
            .iter()
            .enumerate()
            .map(|(k, &s)| (s, base + k))
            .collect();
        // Reflection: reverse the component order within the level.
        let count = starts.len();
        for k in 0..count {
            vertices[base + k].involution_image = base + (count - 1 - k);
        }
    }

    let root = GradedRoot { min_level, root_level, level_counts, vertices };

    // The reversal must be a tree automorphism.
    for (id, v) in root.vertices.iter().enumerate() {
        let image = &root.vertices[v.involution_image];
        debug_assert_eq!(image.level, v.level);
        debug_assert_eq!(image.involution_image, id);
        let parents_match = match (v.parent, image.parent) {
            (Some(pv), Some(pi)) => root.vertices[pv].involution_image == pi,
            (None, None) => true,
            _ => false,
        };
        if !parents_match {
            return Err(Error::AsymmetricRoot);
        }
    }
    Ok(root)
}

/// Reduced-homology summary read off a graded root: total rank, the Z/2
/// grading of the part the rank lives in, and the Euler characteristic of
/// the anti-invariant part of the reflection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloerSummary {
    pub total_rank: i64,
    pub z2_grading: u8,
    pub anti_invariant_euler: i64,
}

pub fn floer_summary(g: &GradedRoot) -> FloerSummary {
    let total_rank = g.reduced_rank();
    let z2_grading = (total_rank.rem_euclid(2)) as u8;
    let sign = if z2_grading == 0 { 1 } else { -1 };
    let anti_invariant_euler = sign * g.involution_two_cycles();
    FloerSummary { total_rank, z2_grading, anti_invariant_euler }
}

/// Whether the reflection-involution bookkeeping is backed by closed-form
/// data for this triple: the Σ(2,3,r) family, gcd(r,6) = 1. Reports for
/// other triples should carry an "uncalibrated involution" warning.
pub fn involution_calibrated(p: i64, q: i64, r: i64) -> bool {
    let mut t = [p, q, r];
    t.sort_unstable();
    if t[0] == 1 {
        // A multiplicity-1 fiber makes the space S^3: trivially known.
        return true;
    }
    t[0] == 2 && t[1] == 3 && t[2].gcd(&6) == 1
}

/// Convenience: tau sequence, graded root, and summary for Σ(p,q,r).
pub fn brieskorn_summary(p: i64, q: i64, r: i64) -> Result<(GradedRoot, FloerSummary)> {
    let tau = tau_sequence_brieskorn(p, q, r)?;
    let root = graded_root(&tau)?;
    let summary = floer_summary(&root);
    Ok((root, summary))
}
