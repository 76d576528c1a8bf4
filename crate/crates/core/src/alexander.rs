//! Finitely presented groups with abelianization weights, their Alexander
//! matrices, and first elementary ideals.
//!
//! The ideal machinery accepts arbitrary weights (the torus-knot
//! presentation has weights `q`, `p`), but the spin constructions insist on
//! Wirtinger-type presentations (all weights 1, generator 1 a meridian):
//! the commutator-row formula and the inclusion criterion are only valid
//! there.

use std::fmt;

use crate::fox::{abelianize, fox_derivative_word, FreeWord};
use crate::laurent::{gcd, vanishes_at_mth_roots, IntLaurent, RatLaurent};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    names: Vec<String>,
    weights: Vec<i64>,
    relators: Vec<FreeWord>,
    longitude: Option<FreeWord>,
}

impl GroupPresentation {
    pub fn new(
        names: Vec<String>,
        weights: Vec<i64>,
        relators: Vec<FreeWord>,
        longitude: Option<FreeWord>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::domain("a presentation needs at least one generator"));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate generator name '{n}'")));
            }
        }
        if weights.len() != names.len() {
            return Err(Error::domain(format!(
                "{} generators but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let p = GroupPresentation { names, weights, relators, longitude };
        for (idx, r) in p.relators.iter().enumerate() {
            p.check_letters(r)?;
            let w = r.weight(&p.weights)?;
            if w != 0 {
                return Err(Error::RelatorWeightNonzero { index: idx + 1, weight: w });
            }
        }
        if let Some(l) = &p.longitude {
            p.check_letters(l)?;
            let w = l.weight(&p.weights)?;
            if w != 0 {
                return Err(Error::LongitudeWeightNonzero { weight: w });
            }
        }
        Ok(p)
    }

    fn check_letters(&self, w: &FreeWord) -> Result<()> {
        let max = w.max_generator();
        if max > self.names.len() {
            return Err(Error::MissingWeight { index: max });
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn longitude(&self) -> Option<&FreeWord> {
        self.longitude.as_ref()
    }

    pub fn is_wirtinger_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    fn require_wirtinger(&self) -> Result<()> {
        if self.is_wirtinger_weighted() {
            Ok(())
        } else {
            Err(Error::NonWirtinger)
        }
    }

    fn require_longitude(&self) -> Result<&FreeWord> {
        self.longitude.as_ref().ok_or(Error::NoLongitude)
    }

    pub fn word_text(&self, w: &FreeWord) -> String {
        let mut out = String::new();
        let mut flush = |letter: i32, count: i64| {
            if !out.is_empty() {
                out.push(' ');
            }
            let name = &self.names[(letter.unsigned_abs() as usize) - 1];
            let exp = if letter > 0 { count } else { -count };
            if exp == 1 {
                out.push_str(name);
            } else if exp == -1 {
                out.push_str(&name.to_uppercase());
            } else {
                out.push_str(&format!("{name}^{exp}"));
            }
        };
        let mut run: Option<(i32, i64)> = None;
        for &l in w.letters() {
            match run {
                Some((prev, count)) if prev == l => run = Some((prev, count + 1)),
                Some((prev, count)) => {
                    flush(prev, count);
                    run = Some((l, 1));
                }
                None => run = Some((l, 1)),
            }
        }
        if let Some((l, count)) = run {
            flush(l, count);
        }
        out
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(" "))?;
        let weights: Vec<String> = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| format!("{n}={w}"))
            .collect();
        writeln!(f, "weights: {}", weights.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.word_text(r))?;
        }
        if let Some(l) = &self.longitude {
            writeln!(f, "longitude: {}", self.word_text(l))?;
        }
        Ok(())
    }
}

/// Matrix of abelianized Fox derivatives, one row per relator, one column
/// per generator. Every row satisfies `sum_i entry_i * (T^w_i - 1) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlexanderMatrix {
    rows: Vec<Vec<IntLaurent>>,
    cols: usize,
}

impl AlexanderMatrix {
    pub fn rows(&self) -> &[Vec<IntLaurent>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// Normalized generator of the first elementary ideal over the rational
    /// Laurent ring: the gcd of all minors of codimension one in the
    /// generators, read off the Smith invariant factors. A presentation
    /// with one generator has unit ideal; a matrix of too-small rank gives
    /// zero.
    pub fn first_elementary_ideal(&self) -> RatLaurent {
        let need = self.cols - 1;
        let rational: Vec<Vec<RatLaurent>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(IntLaurent::to_rational).collect())
            .collect();
        let factors = smith_invariant_factors(rational);
        if factors.len() < need {
            return RatLaurent::zero();
        }
        let mut product = RatLaurent::one();
        for f in &factors[..need] {
            product = &product * f;
        }
        product.normalized()
    }
}

/// Jacobian Alexander matrix of a presentation.
pub fn alexander_matrix(p: &GroupPresentation) -> Result<AlexanderMatrix> {
    let m = p.generator_count();
    let mut rows = Vec::with_capacity(p.relators().len());
    for r in p.relators() {
        let mut row = Vec::with_capacity(m);
        for i in 1..=m {
            row.push(abelianize(&fox_derivative_word(i, r), p.weights())?);
        }
        debug_assert!(row_identity_holds(&row, p.weights()));
        rows.push(row);
    }
    Ok(AlexanderMatrix { rows, cols: m })
}

/// The defining linear relation among the columns: abelianizing the
/// fundamental identity of the free calculus against a weight-zero relator
/// gives `sum_i entry_i * (T^w_i - 1) = 0`.
pub fn row_identity_holds(row: &[IntLaurent], weights: &[i64]) -> bool {
    let mut acc = IntLaurent::zero();
    for (entry, &w) in row.iter().zip(weights) {
        let factor = &IntLaurent::t_power(w) - &IntLaurent::one();
        acc = &acc + &(entry * &factor);
    }
    acc.is_zero()
}

/// Normalized generator of the Alexander ideal of the presentation itself.
pub fn alexander_ideal(p: &GroupPresentation) -> Result<RatLaurent> {
    Ok(alexander_matrix(p)?.first_elementary_ideal())
}

fn spin_word(p: &GroupPresentation, m: i64, n: i64) -> Result<FreeWord> {
    let lambda = p.require_longitude()?;
    Ok(FreeWord::generator(1).power(m).mul(&lambda.power(n)))
}

/// Presentation obtained by forcing `x_1^m * lambda^n` to be central:
/// the base relators plus the commutators `[x_1^m lambda^n, x_j]` for
/// every generator `x_j`. Identity relators (as for the unknot) are kept.
pub fn twist_roll_spin_presentation(
    p: &GroupPresentation,
    m: i64,
    n: i64,
) -> Result<GroupPresentation> {
    p.require_wirtinger()?;
    let w = spin_word(p, m, n)?;
    let mut relators = p.relators().to_vec();
    for j in 1..=p.generator_count() {
        relators.push(FreeWord::commutator(&w, &FreeWord::generator(j)));
    }
    GroupPresentation::new(p.names().to_vec(), p.weights().to_vec(), relators, None)
}

/// Alexander matrix of the spun presentation, assembled directly from the
/// closed form of the commutator rows: with `f(T) = T^m (1 - T)`, row `j`
/// has entry `(d_ij - d_i1)(T^m - 1) + n f(T) [d_i lambda]` in column `i`.
/// Negative `m` is folded to `|m|` (the rows differ by units only);
/// `m = 0` is rejected in favor of the roll-spin obstruction.
pub fn twist_roll_spin_matrix(p: &GroupPresentation, m: i64, n: i64) -> Result<AlexanderMatrix> {
    p.require_wirtinger()?;
    if m == 0 {
        return Err(Error::ZeroTwist);
    }
    let lambda = p.require_longitude()?.clone();
    let m_abs = m.abs();
    let mm = p.generator_count();

    let base = alexander_matrix(p)?;
    let mut rows = base.rows;

    let tm_minus_1 = &IntLaurent::t_power(m_abs) - &IntLaurent::one();
    let f = &IntLaurent::t_power(m_abs) - &IntLaurent::t_power(m_abs + 1);
    let lambda_derivs: Vec<IntLaurent> = (1..=mm)
        .map(|i| abelianize(&fox_derivative_word(i, &lambda), p.weights()))
        .collect::<Result<_>>()?;

    for j in 1..=mm {
        let mut row = Vec::with_capacity(mm);
        for i in 1..=mm {
            let mut entry = &f * &lambda_derivs[i - 1];
            entry = entry.scaled(&n.into());
            if i == j {
                entry = &entry + &tm_minus_1;
            }
            if i == 1 {
                entry = &entry - &tm_minus_1;
            }
            row.push(entry);
        }
        debug_assert!(row_identity_holds(&row, p.weights()));
        rows.push(row);
    }
    Ok(AlexanderMatrix { rows, cols: mm })
}

/// Does the ideal of the base knot modulo `T^m - 1` divide the spun ideal?
/// This is the containment the spun Alexander ideal is guaranteed to
/// satisfy; equality is not assumed anywhere.
pub fn check_ideal_inclusion(p: &GroupPresentation, m: i64, n: i64) -> Result<bool> {
    let delta = alexander_ideal(p)?;
    let modulus = &RatLaurent::t_power(m.abs()) - &RatLaurent::one();
    let g1 = gcd(&delta, &modulus);
    let g2 = twist_roll_spin_matrix(p, m, n)?.first_elementary_ideal();
    Ok(g1.divides(&g2))
}

/// Criterion for the punctured fiber of an m-twist n-roll spin to be a
/// rational homology ball: the base Alexander polynomial must have no zero
/// at any m-th root of unity. Independent of n.
pub fn bounds_rational_homology_ball(delta: &RatLaurent, m: i64) -> Result<bool> {
    Ok(!vanishes_at_mth_roots(delta, m)?)
}

/// For pure roll spins (m = 0) the fiber is a rational homology ball for
/// no n at all unless the Alexander ideal is trivial; returns true when
/// the obstruction applies.
pub fn obstruct_roll_spin(p: &GroupPresentation) -> Result<bool> {
    Ok(!alexander_ideal(p)?.is_monomial())
}

/// Smith invariant factors (the nonzero diagonal, in divisibility order)
/// of a matrix over the rational Laurent ring, by Euclidean elimination on
/// the exponent span.
// The elimination loops read one row while rewriting another, so index
// loops are used throughout.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariant_factors(mut m: Vec<Vec<RatLaurent>>) -> Vec<RatLaurent> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut t = 0;

    while t < rows && t < cols {
        // Pivot: a nonzero entry of minimal span in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if m[r][c].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pr, pc)| m[r][c].span() < m[pr][pc].span()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }

        'reduce: loop {
            // Clear the pivot column.
            for r in t + 1..rows {
                if m[r][t].is_zero() {
                    continue;
                }
                let (q, rem) = m[r][t].divmod(&m[t][t]);
                for c in t..cols {
                    let delta = &q * &m[t][c];
                    m[r][c] = &m[r][c] - &delta;
                }
                if !rem.is_zero() {
                    m.swap(t, r);
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for c in t + 1..cols {
                if m[t][c].is_zero() {
                    continue;
                }
                let (q, rem) = m[t][c].divmod(&m[t][t]);
                for r in t..rows {
                    let delta = &q * &m[r][t];
                    m[r][c] = &m[r][c] - &delta;
                }
                if !rem.is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, c);
                    }
                    continue 'reduce;
                }
            }
            // Divisibility repair: the pivot must divide everything left.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !m[r][c].is_zero() && !m[t][t].divides(&m[r][c]) {
                        for cc in t..cols {
                            let extra = m[r][cc].clone();
                            m[t][cc] = &m[t][cc] + &extra;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        factors.push(m[t][t].normalized());
        t += 1;
    }
    factors
}
