//! Free words, the integral group ring of a free group, and free
//! differential calculus.
//!
//! Generators are numbered from 1; a letter is a nonzero `i32` whose sign
//! marks inversion. Words are kept freely reduced at all times, so equality
//! is plain structural equality.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::laurent::IntLaurent;
use crate::{Error, ParseError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

fn push_reduced(letters: &mut Vec<i32>, l: i32) {
    debug_assert!(l != 0);
    if letters.last() == Some(&-l) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// The generator `x_i`, `i >= 1`.
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        FreeWord { letters: vec![i as i32] }
    }

    pub fn from_letters(letters: &[i32]) -> Self {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "letters are nonzero signed generator indices");
            push_reduced(&mut out, l);
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        FreeWord { letters }
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Largest generator index appearing; 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, i: usize) -> i64 {
        let mut sum = 0i64;
        for &l in &self.letters {
            if l == i as i32 {
                sum += 1;
            } else if l == -(i as i32) {
                sum -= 1;
            }
        }
        sum
    }

    /// Total abelianization weight of the word under per-generator weights.
    pub fn weight(&self, weights: &[i64]) -> Result<i64> {
        let mut sum = 0i64;
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let w = *weights
                .get(i - 1)
                .ok_or(Error::MissingWeight { index: i })?;
            sum += if l > 0 { w } else { -w };
        }
        Ok(sum)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut run: Option<(i32, i64)> = None;
        let mut flush = |f: &mut fmt::Formatter<'_>, run: Option<(i32, i64)>| -> fmt::Result {
            if let Some((l, count)) = run {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                let exp = if l > 0 { count } else { -count };
                if exp == 1 {
                    write!(f, "x{}", l.abs())?;
                } else {
                    write!(f, "x{}^{}", l.abs(), exp)?;
                }
            }
            Ok(())
        };
        for &l in &self.letters {
            match run {
                Some((prev, count)) if prev == l => run = Some((prev, count + 1)),
                other => {
                    flush(f, other)?;
                    run = Some((l, 1));
                }
            }
        }
        flush(f, run)
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse a word over named generators. Tokens are whitespace-separated:
/// a generator name (`a`), its case-flipped inverse (`A`), or the indexed
/// form `x3`; any token may carry an integer exponent (`a^-2`, `x1^3`).
/// An empty input is the identity.
pub fn parse_word(input: &str, names: &[String]) -> Result<FreeWord> {
    parse_word_at_line(input, names, 1, 0)
}

/// Same as [`parse_word`], reporting errors at the given source position.
pub fn parse_word_at_line(
    input: &str,
    names: &[String],
    line: usize,
    col_offset: usize,
) -> Result<FreeWord> {
    let mut letters = Vec::new();
    let mut col = col_offset;
    for chunk in input.split_inclusive(char::is_whitespace) {
        let token = chunk.trim_end_matches(char::is_whitespace);
        let token_col = col + 1;
        col += chunk.len();
        if token.is_empty() {
            continue;
        }
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let exp: i64 = e.parse().map_err(|_| {
                    ParseError::new(line, token_col + b.len() + 1, format!("bad exponent '{e}'"))
                })?;
                (b, exp)
            }
            None => (token, 1),
        };
        let letter = resolve_generator(base, names)
            .ok_or_else(|| ParseError::new(line, token_col, format!("unknown generator '{base}'")))?;
        let unit = FreeWord { letters: vec![letter] };
        let powered = unit.power(exp);
        for &l in &powered.letters {
            push_reduced(&mut letters, l);
        }
    }
    Ok(FreeWord { letters })
}

fn resolve_generator(base: &str, names: &[String]) -> Option<i32> {
    if let Some(i) = names.iter().position(|n| n == base) {
        return Some(i as i32 + 1);
    }
    let lowered = base.to_lowercase();
    if lowered != base {
        if let Some(i) = names.iter().position(|n| *n == lowered) {
            return Some(-(i as i32 + 1));
        }
    }
    if let Some(rest) = base.strip_prefix('x') {
        if let Ok(i) = rest.parse::<usize>() {
            if i >= 1 && i <= names.len() {
                return Some(i as i32);
            }
        }
    }
    None
}

/// An element of the group ring `Z[F]`, a finite formal integer combination
/// of freely reduced words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRing {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRing {
    pub fn zero() -> Self {
        GroupRing::default()
    }

    pub fn one() -> Self {
        GroupRing::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        GroupRing { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRing {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupRing::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a.clone() * b.clone());
            }
        }
        out
    }

    /// Left-multiply by a single word.
    pub fn mul_word_left(&self, w: &FreeWord) -> Self {
        let mut out = GroupRing::zero();
        for (u, a) in &self.terms {
            out.add_term(w.mul(u), a.clone());
        }
        out
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return GroupRing::zero();
        }
        GroupRing {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k.clone() * c)).collect(),
        }
    }
}

impl fmt::Display for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

thread_local! {
    static FOX_MEMO: RefCell<HashMap<(usize, FreeWord), GroupRing>> = RefCell::new(HashMap::new());
}

/// Fox derivative of a single word with respect to generator `i`.
///
/// On a reduced word the derivative collapses to a prefix scan: each
/// occurrence of `x_i` contributes the prefix before it, each `x_i^-1` the
/// negated prefix through it. Results are memoized per thread because spin
/// constructions differentiate the same longitude word over and over.
pub fn fox_derivative_word(i: usize, w: &FreeWord) -> GroupRing {
    assert!(i >= 1, "generator indices start at 1");
    let key = (i, w.clone());
    if let Some(hit) = FOX_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let gen = i as i32;
    let mut out = GroupRing::zero();
    let mut prefix: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l == gen {
            out.add_term(FreeWord { letters: prefix.clone() }, BigInt::one());
        }
        prefix.push(l);
        if l == -gen {
            out.add_term(FreeWord { letters: prefix.clone() }, -BigInt::one());
        }
    }
    FOX_MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

/// Fox derivative extended linearly to the group ring.
pub fn fox_derivative(i: usize, g: &GroupRing) -> GroupRing {
    let mut out = GroupRing::zero();
    for (w, c) in g.iter() {
        out = out.add(&fox_derivative_word(i, w).scaled(c));
    }
    out
}

/// Abelianization `Z[F] -> Z[T, T^-1]` sending generator `x_i` to
/// `T^weights[i-1]`.
pub fn abelianize(g: &GroupRing, weights: &[i64]) -> Result<IntLaurent> {
    let mut out = IntLaurent::zero();
    for (w, c) in g.iter() {
        out.add_term(w.weight(weights)?, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> FreeWord {
        FreeWord::from_letters(letters)
    }

    #[test]
    fn reduction_and_ops() {
        assert_eq!(w(&[1, -1]), FreeWord::identity());
        assert_eq!(w(&[1, 2, -2, -1]), FreeWord::identity());
        assert_eq!(w(&[1, 2]).mul(&w(&[-2, 3])), w(&[1, 3]));
        assert_eq!(w(&[1, 2]).inverse(), w(&[-2, -1]));
        assert_eq!(w(&[1]).power(-3), w(&[-1, -1, -1]));
        assert_eq!(w(&[1]).power(0), FreeWord::identity());
        assert_eq!(
            FreeWord::commutator(&w(&[1]), &w(&[2])),
            w(&[1, 2, -1, -2])
        );
        assert!(FreeWord::commutator(&w(&[1]), &w(&[1, 1])).is_identity());
    }

    #[test]
    fn fox_basic_values() {
        // d/dx1 (x1 x2) = 1
        assert_eq!(fox_derivative_word(1, &w(&[1, 2])), GroupRing::one());
        // d/dx2 (x1 x2 x1^-1) = x1
        assert_eq!(
            fox_derivative_word(2, &w(&[1, 2, -1])),
            GroupRing::from_word(w(&[1]))
        );
        // d/dx1 (x1^-1) = -x1^-1
        assert_eq!(
            fox_derivative_word(1, &w(&[-1])),
            GroupRing::from_word(w(&[-1])).neg()
        );
        assert!(fox_derivative_word(3, &w(&[1, 2, -1])).is_zero());
    }

    fn fundamental_identity_holds(word: &FreeWord) -> bool {
        let gens = word.max_generator();
        let mut lhs = GroupRing::zero();
        for i in 1..=gens {
            let xi_minus_1 =
                GroupRing::from_word(FreeWord::generator(i)).sub(&GroupRing::one());
            lhs = lhs.add(&fox_derivative_word(i, word).mul(&xi_minus_1));
        }
        let rhs = GroupRing::from_word(word.clone()).sub(&GroupRing::one());
        lhs == rhs
    }

    #[test]
    fn fundamental_identity_examples() {
        for letters in [
            vec![1],
            vec![-2],
            vec![1, 2, -1, -2],
            vec![1, 1, 1, -2, 3, -2, 2, 1],
            vec![3, -1, 2, 2, -3, 1, 1, -2],
        ] {
            assert!(fundamental_identity_holds(&w(&letters)), "{:?}", letters);
        }
    }

    #[test]
    fn commutator_derivative_identity() {
        // d_i [w, x_j] = (1 - w x_j w^-1) d_i w + delta_ij (w - [w, x_j])
        let words = [w(&[1, 2, -1]), w(&[2, 2, -3, 1]), w(&[-1, 3, 2, -3])];
        for word in &words {
            for i in 1..=3usize {
                for j in 1..=3usize {
                    let xj = FreeWord::generator(j);
                    let comm = FreeWord::commutator(word, &xj);
                    let lhs = fox_derivative_word(i, &comm);
                    let conj = word.mul(&xj).mul(&word.inverse());
                    let mut rhs = GroupRing::one()
                        .sub(&GroupRing::from_word(conj))
                        .mul(&fox_derivative_word(i, word));
                    if i == j {
                        rhs = rhs.add(
                            &GroupRing::from_word(word.clone())
                                .sub(&GroupRing::from_word(comm)),
                        );
                    }
                    assert_eq!(lhs, rhs, "word {word}, i={i}, j={j}");
                }
            }
        }
    }

    #[test]
    fn abelianize_examples() {
        // All weights 1: x1 x2 x1^-1 x2^-1 abelianizes to 0 exponent.
        let g = GroupRing::from_word(w(&[1, 2, -1, -2]));
        assert_eq!(abelianize(&g, &[1, 1]).unwrap(), IntLaurent::one());
        // Weighted: x1 -> T^2, x2 -> T^3.
        let g = GroupRing::from_word(w(&[1, 2]));
        assert_eq!(abelianize(&g, &[2, 3]).unwrap(), IntLaurent::t_power(5));
        // Cancellation in the image: x1 - x2 with equal weights is 0.
        let g = GroupRing::from_word(w(&[1])).sub(&GroupRing::from_word(w(&[2])));
        assert!(abelianize(&g, &[1, 1]).unwrap().is_zero());
        assert!(matches!(
            abelianize(&GroupRing::from_word(w(&[3])), &[1, 1]),
            Err(Error::MissingWeight { index: 3 })
        ));
    }

    #[test]
    fn ring_axioms_spot_checks() {
        let a = GroupRing::from_word(w(&[1])).add(&GroupRing::from_word(w(&[2])).scaled(&2.into()));
        let b = GroupRing::from_word(w(&[-1])).sub(&GroupRing::one());
        let c = GroupRing::from_word(w(&[2, 1]));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.sub(&a), GroupRing::zero());
        assert_eq!(GroupRing::one().mul(&a), a);
    }

    #[test]
    fn word_parsing() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_word("a b A", &names).unwrap(), w(&[1, 2, -1]));
        assert_eq!(parse_word("x1 x2^-1", &names).unwrap(), w(&[1, -2]));
        assert_eq!(parse_word("a^3 B", &names).unwrap(), w(&[1, 1, 1, -2]));
        assert_eq!(parse_word("  ", &names).unwrap(), FreeWord::identity());
        assert_eq!(parse_word("a A", &names).unwrap(), FreeWord::identity());
        assert!(parse_word("d", &names).is_err());
        assert!(parse_word("a^x", &names).is_err());
        assert!(parse_word("x9", &names).is_err());
        let err = parse_word("a zz", &names).unwrap_err();
        assert!(err.to_string().contains("column 3"), "{err}");
    }
}
