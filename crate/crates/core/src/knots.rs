//! Input constructors: presentation files, braid closures with synthesized
//! longitudes, and torus knots with their closed-form Alexander polynomial.

use num_integer::Integer;

use crate::alexander::GroupPresentation;
use crate::fox::{parse_word_at_line, FreeWord};
use crate::laurent::RatLaurent;
use crate::{Error, ParseError, Result};

/// A word in the braid group B_k: signed generator indices, `+i` for the
/// positive crossing of strands i and i+1, `-i` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::domain("a braid needs at least 2 strands"));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::domain(format!(
                    "braid letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse the text form `B3: s1 s2^-1 s1 s2^-1`.
    pub fn parse(input: &str) -> Result<Self> {
        let line = input.trim_end();
        let Some((head, rest)) = line.split_once(':') else {
            return Err(ParseError::new(1, 1, "expected 'B<strands>:' prefix").into());
        };
        let head = head.trim();
        let strands: usize = head
            .strip_prefix('B')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ParseError::new(1, 1, format!("bad strand count '{head}'")))?;
        if strands < 2 {
            return Err(ParseError::new(1, 1, "a braid needs at least 2 strands").into());
        }

        let mut letters = Vec::new();
        let mut col = input.len() - rest.len();
        for chunk in rest.split_inclusive(char::is_whitespace) {
            let token = chunk.trim_end_matches(char::is_whitespace);
            let token_col = col + 1;
            col += chunk.len();
            if token.is_empty() {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let exp: i64 = e.parse().map_err(|_| {
                        ParseError::new(1, token_col + b.len() + 1, format!("bad exponent '{e}'"))
                    })?;
                    (b, exp)
                }
                None => (token, 1),
            };
            let index: usize = base
                .strip_prefix('s')
                .and_then(|s| s.parse().ok())
                .filter(|&i| i >= 1 && i < strands)
                .ok_or_else(|| {
                    ParseError::new(
                        1,
                        token_col,
                        format!("expected a braid generator s1..s{}", strands - 1),
                    )
                })?;
            let signed = if exp >= 0 { index as i32 } else { -(index as i32) };
            for _ in 0..exp.unsigned_abs() {
                letters.push(signed);
            }
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Number of components of the closure (cycles of the strand
    /// permutation).
    pub fn closure_components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                s = perm[s];
            }
        }
        cycles
    }
}

fn generator_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=count).map(|i| format!("x{i}")).collect()
    }
}

/// Wirtinger presentation of the braid closure, with one meridional
/// generator per strand, the closure relators, and a longitude for the
/// knot based at the top of strand 1.
///
/// Strand words evolve by the usual conjugation action of each crossing;
/// the longitude is the product of the over-strand words met while
/// traversing the closure, accumulated right-to-left, corrected by
/// `x1^(-writhe)` so its total weight is zero.
pub fn braid_to_presentation(b: &BraidWord) -> Result<GroupPresentation> {
    let components = b.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let k = b.strands;

    // states[t] = the strand words before crossing t; positions are
    // 0-based here, crossing `i` acts on positions i-1 and i.
    let mut states: Vec<Vec<FreeWord>> = Vec::with_capacity(b.letters.len() + 1);
    states.push((1..=k).map(FreeWord::generator).collect());
    for &l in &b.letters {
        let mut w = states.last().unwrap().clone();
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            let conj = w[i].mul(&w[i + 1]).mul(&w[i].inverse());
            w[i + 1] = w[i].clone();
            w[i] = conj;
        } else {
            let conj = w[i + 1].inverse().mul(&w[i]).mul(&w[i + 1]);
            w[i] = w[i + 1].clone();
            w[i + 1] = conj;
        }
        states.push(w);
    }

    let final_state = states.last().unwrap();
    let relators: Vec<FreeWord> = (0..k)
        .map(|s| final_state[s].mul(&FreeWord::generator(s + 1).inverse()))
        .collect();

    // Walk the closure from the top of strand 1, collecting the over-strand
    // word at each under-crossing; k passes through the braid visit every
    // crossing once as an under-strand.
    let mut overs: Vec<FreeWord> = Vec::with_capacity(b.letters.len());
    let mut pos = 0usize;
    for _ in 0..k {
        for (t, &l) in b.letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                if pos == i {
                    pos = i + 1;
                } else if pos == i + 1 {
                    overs.push(states[t][i].clone());
                    pos = i;
                }
            } else if pos == i + 1 {
                pos = i;
            } else if pos == i {
                overs.push(states[t][i + 1].inverse());
                pos = i + 1;
            }
        }
    }
    debug_assert_eq!(pos, 0);
    debug_assert_eq!(overs.len(), b.letters.len());

    let mut longitude = FreeWord::identity();
    for o in overs.iter().rev() {
        longitude = longitude.mul(o);
    }
    longitude = longitude.mul(&FreeWord::generator(1).power(-b.writhe()));

    GroupPresentation::new(generator_names(k), vec![1; k], relators, Some(longitude))
}

/// Parse the line-oriented presentation file format:
///
/// ```text
/// # comment
/// gens: a b c
/// weights: a=1 b=1 c=1
/// rel: a b A C
/// rel: b c B A
/// longitude: b a c a^-3
/// ```
///
/// `gens:` must come first; `weights:` must give every generator exactly
/// one weight; `rel:` lines must be nonempty; `longitude:` is optional
/// (an empty word is allowed and means the identity).
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut names: Option<Vec<String>> = None;
    let mut weights: Option<Vec<i64>> = None;
    let mut weights_line = 0usize;
    let mut relators: Vec<FreeWord> = Vec::new();
    let mut longitude: Option<FreeWord> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((directive, rest)) = line.split_once(':') else {
            return Err(ParseError::new(line_no, 1, "expected '<directive>: ...'").into());
        };
        let body_col = directive.len() + 1;
        match directive.trim() {
            "gens" => {
                if names.is_some() {
                    return Err(ParseError::new(line_no, 1, "duplicate gens: line").into());
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if list.is_empty() {
                    return Err(ParseError::new(line_no, body_col, "no generators listed").into());
                }
                for (i, n) in list.iter().enumerate() {
                    if list[..i].contains(n) {
                        return Err(ParseError::new(
                            line_no,
                            body_col,
                            format!("duplicate generator name '{n}'"),
                        )
                        .into());
                    }
                }
                names = Some(list);
            }
            "weights" => {
                let names = names.as_ref().ok_or_else(|| {
                    ParseError::new(line_no, 1, "weights: before gens:")
                })?;
                if weights.is_some() {
                    return Err(ParseError::new(line_no, 1, "duplicate weights: line").into());
                }
                let mut w: Vec<Option<i64>> = vec![None; names.len()];
                for entry in rest.split_whitespace() {
                    let Some((name, value)) = entry.split_once('=') else {
                        return Err(ParseError::new(
                            line_no,
                            body_col,
                            format!("expected name=value, got '{entry}'"),
                        )
                        .into());
                    };
                    let Some(i) = names.iter().position(|n| n == name) else {
                        return Err(ParseError::new(
                            line_no,
                            body_col,
                            format!("unknown generator '{name}'"),
                        )
                        .into());
                    };
                    let value: i64 = value.parse().map_err(|_| {
                        ParseError::new(line_no, body_col, format!("bad weight '{value}'"))
                    })?;
                    if w[i].replace(value).is_some() {
                        return Err(ParseError::new(
                            line_no,
                            body_col,
                            format!("duplicate weight for '{name}'"),
                        )
                        .into());
                    }
                }
                for (i, slot) in w.iter().enumerate() {
                    if slot.is_none() {
                        return Err(ParseError::new(
                            line_no,
                            body_col,
                            format!("missing weight for '{}'", names[i]),
                        )
                        .into());
                    }
                }
                weights = Some(w.into_iter().map(Option::unwrap).collect());
                weights_line = line_no;
            }
            "rel" => {
                let names = names.as_ref().ok_or_else(|| {
                    ParseError::new(line_no, 1, "rel: before gens:")
                })?;
                let word = parse_word_at_line(rest, names, line_no, body_col)?;
                if word.is_identity() && rest.split_whitespace().next().is_none() {
                    return Err(ParseError::new(line_no, body_col, "empty rel: line").into());
                }
                relators.push(word);
            }
            "longitude" => {
                let names = names.as_ref().ok_or_else(|| {
                    ParseError::new(line_no, 1, "longitude: before gens:")
                })?;
                if longitude.is_some() {
                    return Err(ParseError::new(line_no, 1, "duplicate longitude: line").into());
                }
                longitude = Some(parse_word_at_line(rest, names, line_no, body_col)?);
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("unknown directive '{other}'"),
                )
                .into());
            }
        }
    }

    let names = names.ok_or_else(|| ParseError::new(1, 1, "missing gens: line"))?;
    let weights = weights.ok_or_else(|| ParseError::new(1, 1, "missing weights: line"))?;
    let _ = weights_line;
    GroupPresentation::new(names, weights, relators, longitude)
}

/// The (p,q) torus knot as `<u, v | u^p v^-q>` with weights `u -> T^q`,
/// `v -> T^p`, a longitude `u^p mu^-pq` (mu the weight-one word
/// `u^a v^b`, `qa + pb = 1`), and the closed-form Alexander polynomial
/// `(T^pq - 1)(T - 1) / ((T^p - 1)(T^q - 1))`.
pub fn torus_knot(p: i64, q: i64) -> Result<(GroupPresentation, RatLaurent)> {
    if p < 2 || q < 2 {
        return Err(Error::domain(format!(
            "torus knot parameters must be at least 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { a: p, b: q });
    }

    let u = FreeWord::generator(1);
    let v = FreeWord::generator(2);
    let relator = u.power(p).mul(&v.power(-q));

    // Extended gcd: qa + pb = 1, so mu = u^a v^b has weight 1.
    let egcd = q.extended_gcd(&p);
    let (a, bb) = (egcd.x, egcd.y);
    let mu = u.power(a).mul(&v.power(bb));
    let longitude = u.power(p).mul(&mu.power(-p * q));

    let presentation = GroupPresentation::new(
        vec!["u".to_string(), "v".to_string()],
        vec![q, p],
        vec![relator],
        Some(longitude),
    )?;

    let one = RatLaurent::one();
    let numerator = &(&RatLaurent::t_power(p * q) - &one) * &(&RatLaurent::t_power(1) - &one);
    let d1 = &RatLaurent::t_power(p) - &one;
    let d2 = &RatLaurent::t_power(q) - &one;
    let delta = numerator
        .div_exact(&d1)
        .and_then(|f| f.div_exact(&d2))
        .expect("the torus-knot closed form divides exactly");
    Ok((presentation, delta.normalized()))
}

/// The braid whose closure is the (p,q) torus knot:
/// `(s1 s2 ... s(p-1))^q` in B_p.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord> {
    if p < 2 || q < 2 {
        return Err(Error::domain(format!(
            "torus braid parameters must be at least 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { a: p, b: q });
    }
    let mut letters = Vec::with_capacity(((p - 1) * q) as usize);
    for _ in 0..q {
        for i in 1..p {
            letters.push(i as i32);
        }
    }
    BraidWord::new(p as usize, letters)
}
