//! Exact Laurent polynomials in one variable `T`.
//!
//! Coefficients are arbitrary-precision integers (`IntLaurent`) or rationals
//! (`RatLaurent`); exponents may be negative. The two rings have different
//! unit groups (`±T^k` over Z, `c·T^k` over Q), so normalization keeps the
//! integer content over Z and rescales to a primitive integer polynomial
//! over Q. Promotion between the rings is always explicit.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, ParseError, Result};

pub trait CoeffRing: Clone + Eq + Hash + Signed + fmt::Display {}
impl CoeffRing for BigInt {}
impl CoeffRing for BigRational {}

/// Sparse Laurent polynomial; the map never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C: CoeffRing> {
    terms: BTreeMap<i64, C>,
}

pub type IntLaurent = LaurentPoly<BigInt>;
pub type RatLaurent = LaurentPoly<BigRational>;

impl<C: CoeffRing> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: CoeffRing> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// The variable `T`.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `T^exp`.
    pub fn t_power(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Nonzero monomials are exactly the units of the rational Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exponent span; 0 for monomials and the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the highest-exponent term.
    pub fn lead_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `T^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_at_one(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc = acc + c.clone();
        }
        acc
    }

    pub fn eval_at_minus_one(&self) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            if e.rem_euclid(2) == 0 {
                acc = acc + c.clone();
            } else {
                acc = acc - c.clone();
            }
        }
        acc
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl IntLaurent {
    /// Canonical associate under the integer units `±T^k`: lowest exponent
    /// zero, positive leading coefficient, content untouched.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let shifted = self.shifted(-self.min_exp().unwrap());
        if shifted.lead_coeff().unwrap().is_negative() {
            -&shifted
        } else {
            shifted
        }
    }

    pub fn to_rational(&self) -> RatLaurent {
        RatLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(c.clone())))
                .collect(),
        }
    }

    /// True if `self` and `other` differ by a unit `±T^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn parse(input: &str) -> Result<Self> {
        let rat = RatLaurent::parse(input)?;
        rat.to_integer().ok_or_else(|| {
            ParseError::new(1, 1, "fractional coefficient in an integer polynomial").into()
        })
    }
}

impl RatLaurent {
    /// Canonical associate under the rational units `c·T^k`: a primitive
    /// integer polynomial with lowest exponent zero and positive leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let unit = BigRational::new(denom_lcm, numer_gcd);
        let scaled = self.scaled(&unit.abs());
        let shifted = scaled.shifted(-scaled.min_exp().unwrap());
        if shifted.lead_coeff().unwrap().is_negative() {
            -&shifted
        } else {
            shifted
        }
    }

    /// True if `self` and `other` differ by a unit `c·T^k`, `c` rational.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn to_integer(&self) -> Option<IntLaurent> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            terms.insert(*e, c.to_integer());
        }
        Some(IntLaurent { terms })
    }

    /// Long division after clearing the `T^k` units: `self = q·d + r` with
    /// `r` of smaller polynomial degree than `d`. Panics on zero divisor.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let amin = self.min_exp().unwrap();
        let dmin = d.min_exp().unwrap();
        let adeg = self.span() as usize;
        let ddeg = d.span() as usize;
        if adeg < ddeg {
            return (Self::zero(), self.clone());
        }

        let mut rem: Vec<BigRational> = vec![BigRational::zero(); adeg + 1];
        for (e, c) in &self.terms {
            rem[(e - amin) as usize] = c.clone();
        }
        let mut div: Vec<BigRational> = vec![BigRational::zero(); ddeg + 1];
        for (e, c) in &d.terms {
            div[(e - dmin) as usize] = c.clone();
        }
        let lead = div[ddeg].clone();

        let mut quot: Vec<BigRational> = vec![BigRational::zero(); adeg - ddeg + 1];
        for i in (ddeg..=adeg).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for (j, dc) in div.iter().enumerate() {
                let delta = &q * dc;
                rem[i - ddeg + j] = &rem[i - ddeg + j] - delta;
            }
            quot[i - ddeg] = q;
        }

        let q = Self::from_terms(
            quot.into_iter().enumerate().map(|(i, c)| (i as i64 + amin - dmin, c)),
        );
        let r = Self::from_terms(rem.into_iter().enumerate().map(|(i, c)| (i as i64 + amin, c)));
        (q, r)
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divmod(d);
        r.is_zero().then_some(q)
    }

    /// Does `self` divide `other` in the rational Laurent ring?
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).1.is_zero()
    }
}

/// Euclidean gcd over `Q[T, T^-1]`, returned in normalized form.
/// `gcd(p, 0)` is `p` normalized; `gcd(0, 0)` is zero.
pub fn gcd(a: &RatLaurent, b: &RatLaurent) -> RatLaurent {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divmod(&y);
        x = y;
        y = r;
    }
    x.normalized()
}

/// Does `p` vanish at some m-th root of unity? Decided by
/// `gcd(p, T^m - 1)`: the gcd is a non-unit exactly when a common zero
/// exists, and every zero of `T^m - 1` is an m-th root of unity.
pub fn vanishes_at_mth_roots(p: &RatLaurent, m: i64) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroTwist);
    }
    let modulus = &RatLaurent::t_power(m.unsigned_abs() as i64) - &RatLaurent::one();
    Ok(!gcd(p, &modulus).is_monomial())
}

/// The n-th cyclotomic polynomial, by the exact division
/// `Phi_n = (T^n - 1) / prod_{d|n, d<n} Phi_d`.
pub fn cyclotomic(n: u64) -> IntLaurent {
    assert!(n >= 1);
    let mut table: BTreeMap<u64, RatLaurent> = BTreeMap::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut poly = &RatLaurent::t_power(d as i64) - &RatLaurent::one();
        for (dd, phi) in &table {
            if d % dd == 0 {
                poly = poly.div_exact(phi).expect("cyclotomic division is exact");
            }
        }
        table.insert(d, poly);
    }
    table
        .remove(&n)
        .unwrap()
        .to_integer()
        .expect("cyclotomic polynomials have integer coefficients")
}

impl<C: CoeffRing> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.add_ref(rhs)
    }
}

impl<C: CoeffRing> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.sub_ref(rhs)
    }
}

impl<C: CoeffRing> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.mul_ref(rhs)
    }
}

impl<C: CoeffRing> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<C: CoeffRing> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        &self + &rhs
    }
}

impl<C: CoeffRing> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: CoeffRing> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: CoeffRing> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

// Text form: terms in ascending exponent order joined by " + " / " - ",
// e.g. "3*T^-2 + 1 - T^5". Printing and parsing round-trip bit-exactly.
impl<C: CoeffRing> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
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
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if *e == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: CoeffRing> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl RatLaurent {
    pub fn parse(input: &str) -> Result<Self> {
        Parser { bytes: input.as_bytes(), pos: 0 }.parse_poly()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        ParseError::new(1, self.pos + 1, msg).into()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn parse_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let mag = self.parse_uint()?;
        let v: i64 = mag
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    // term := coeff [ '*'? T-part ] | T-part, with coeff := uint [ '/' uint ]
    fn parse_term(&mut self) -> Result<(BigRational, i64)> {
        let mut coeff = BigRational::one();
        let mut saw_coeff = false;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let numer = self.parse_uint()?;
            let denom = if self.eat(b'/') {
                let d = self.parse_uint()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(numer, denom);
            saw_coeff = true;
            self.eat(b'*');
            self.skip_ws();
        }
        if self.eat(b'T') {
            let exp = if self.eat(b'^') { self.parse_int()? } else { 1 };
            Ok((coeff, exp))
        } else if saw_coeff {
            Ok((coeff, 0))
        } else {
            Err(self.error("expected a coefficient or T"))
        }
    }

    fn parse_poly(&mut self) -> Result<RatLaurent> {
        let mut poly = RatLaurent::zero();
        self.skip_ws();
        let mut negate = self.eat(b'-');
        if negate {
            self.skip_ws();
        }
        loop {
            let (coeff, exp) = self.parse_term()?;
            poly.add_term(exp, if negate { -coeff } else { coeff });
            self.skip_ws();
            match self.peek() {
                None => return Ok(poly),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(b) => return Err(self.error(format!("unexpected character '{}'", b as char))),
            }
            self.pos += 1;
            self.skip_ws();
        }
    }
}
