//! Cartan's symbol/word calculus for `K(Z/n, 2)`.
//!
//! A word is read left to right but its degree is defined from the right:
//! `deg(∅) = 0`, `deg(σα) = 1 + deg(α)`, `deg(γ_p α) = p·deg(α)`,
//! `deg(φ_p α) = 2 + p·deg(α)` and `deg(ψ_{p^f}) = 2`. The height counts the
//! letters σ, φ_p and ψ_{p^f}.
//!
//! An admissible p-word is a non-empty word in σ, γ_p, φ_p whose first and
//! last letters are σ or φ_p, such that every γ_p or φ_p has an even number
//! of σ letters strictly to its right. The auxiliary words `σ^{h-1}ψ_{p^f}`
//! complete the generator list.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{is_prime, prime_power_root};
use crate::{Error, Result};

/// One Cartan letter. The variant order is the enumeration order
/// `σ < γ < φ < ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Sigma,
    Gamma(u64),
    Phi(u64),
    /// `ψ_{p^f}` with `prime = p` and `exponent = f`.
    Psi { prime: u64, exponent: u32 },
}

impl Symbol {
    pub fn prime(&self) -> Option<u64> {
        match *self {
            Symbol::Sigma => None,
            Symbol::Gamma(p) | Symbol::Phi(p) => Some(p),
            Symbol::Psi { prime, .. } => Some(prime),
        }
    }

    /// Counts toward height.
    pub fn is_height_letter(&self) -> bool {
        !matches!(self, Symbol::Gamma(_))
    }

    fn render(&self, ascii: bool) -> String {
        match (*self, ascii) {
            (Symbol::Sigma, false) => "σ".into(),
            (Symbol::Sigma, true) => "s".into(),
            (Symbol::Gamma(p), false) => format!("γ_{p}"),
            (Symbol::Gamma(p), true) => format!("g_{p}"),
            (Symbol::Phi(p), false) => format!("φ_{p}"),
            (Symbol::Phi(p), true) => format!("f_{p}"),
            (Symbol::Psi { prime, exponent }, a) => {
                let q = prime.pow(exponent);
                if a {
                    format!("y_{q}")
                } else {
                    format!("ψ_{q}")
                }
            }
        }
    }
}

/// A word in Cartan's symbols over a single prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Validates that ψ, if present, is last and that all non-σ letters share
    /// one prime.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let mut prime = None;
        for (i, s) in symbols.iter().enumerate() {
            if let Some(q) = s.prime() {
                if !is_prime(q) {
                    return Err(Error::NotPrime(q));
                }
                match prime {
                    None => prime = Some(q),
                    Some(p) if p != q => {
                        return Err(Error::InvalidWord(format!(
                            "mixes the primes {p} and {q}"
                        )))
                    }
                    _ => {}
                }
            }
            if let Symbol::Psi { exponent, .. } = s {
                if *exponent == 0 {
                    return Err(Error::InvalidWord("ψ_{p^f} needs f ≥ 1".into()));
                }
                if i + 1 != symbols.len() {
                    return Err(Error::InvalidWord("ψ must be the last symbol".into()));
                }
            }
        }
        Ok(Word { symbols })
    }

    /// The auxiliary word `σ^{h-1}ψ_{p^f}`.
    pub fn auxiliary(p: u64, f: u32, height: usize) -> Result<Self> {
        if height == 0 {
            return Err(Error::InvalidArgument("auxiliary words have height ≥ 1".into()));
        }
        let mut symbols = vec![Symbol::Sigma; height - 1];
        symbols.push(Symbol::Psi { prime: p, exponent: f });
        Word::new(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The prime shared by the γ, φ and ψ letters, if any occur.
    pub fn prime(&self) -> Option<u64> {
        self.symbols.iter().find_map(Symbol::prime)
    }

    pub fn has_psi(&self) -> bool {
        matches!(self.symbols.last(), Some(Symbol::Psi { .. }))
    }

    pub fn degree(&self) -> u64 {
        degree(self)
    }

    pub fn height(&self) -> usize {
        height(self)
    }

    pub fn to_ascii(&self) -> String {
        self.render(true)
    }

    fn render(&self, ascii: bool) -> String {
        if self.symbols.is_empty() {
            return if ascii { "()".into() } else { "∅".into() };
        }
        self.symbols.iter().map(|s| s.render(ascii)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols.cmp(&other.symbols)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parses the rendered forms, unicode (`σγ_2φ_2`, `ψ_4`) or ascii
/// (`sg_2f_2`, `y_4`). `∅`, `()` and the empty string give the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "()" {
            return Ok(Word::empty());
        }
        let mut chars = s.chars().peekable();
        let mut symbols = Vec::new();
        while let Some(c) = chars.next() {
            let letter = match c {
                'σ' | 's' => {
                    symbols.push(Symbol::Sigma);
                    continue;
                }
                'γ' | 'g' => 'g',
                'φ' | 'f' => 'f',
                'ψ' | 'y' => 'y',
                other => return Err(Error::InvalidWord(format!("unknown letter {other:?}"))),
            };
            if chars.next() != Some('_') {
                return Err(Error::InvalidWord(format!("letter {c} needs a subscript")));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let index: u64 = digits
                .parse()
                .map_err(|_| Error::InvalidWord(format!("bad subscript after {c}")))?;
            symbols.push(match letter {
                'g' => Symbol::Gamma(index),
                'f' => Symbol::Phi(index),
                _ => {
                    let (prime, exponent) = prime_power_root(index).ok_or_else(|| {
                        Error::InvalidWord(format!("ψ_{index}: {index} is not a prime power"))
                    })?;
                    Symbol::Psi { prime, exponent }
                }
            });
        }
        Word::new(symbols)
    }
}

pub fn degree(w: &Word) -> u64 {
    w.symbols.iter().rev().fold(0u64, |deg, s| match *s {
        Symbol::Sigma => deg.saturating_add(1),
        Symbol::Gamma(p) => deg.saturating_mul(p),
        Symbol::Phi(p) => deg.saturating_mul(p).saturating_add(2),
        Symbol::Psi { .. } => 2,
    })
}

pub fn height(w: &Word) -> usize {
    w.symbols.iter().filter(|s| s.is_height_letter()).count()
}

/// Admissibility of `w` as a p-word. Words containing ψ are rejected with
/// [`Error::AuxiliaryWord`]; words over another prime with
/// [`Error::PrimeMismatch`].
pub fn is_admissible(w: &Word, p: u64) -> Result<bool> {
    if w.has_psi() {
        return Err(Error::AuxiliaryWord);
    }
    if let Some(found) = w.prime() {
        if found != p {
            return Err(Error::PrimeMismatch { expected: p, found });
        }
    }
    let (Some(first), Some(last)) = (w.symbols.first(), w.symbols.last()) else {
        return Ok(false);
    };
    let ends_ok = |s: &Symbol| matches!(s, Symbol::Sigma | Symbol::Phi(_));
    if !ends_ok(first) || !ends_ok(last) {
        return Ok(false);
    }
    let mut sigmas_right = 0usize;
    for s in w.symbols.iter().rev() {
        match s {
            Symbol::Sigma => sigmas_right += 1,
            _ if sigmas_right % 2 == 1 => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedWord {
    #[serde(serialize_with = "serialize_display")]
    pub word: Word,
    pub degree: u64,
    pub height: usize,
    pub auxiliary: bool,
}

fn serialize_display<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// All admissible p-words of degree `≤ max_degree` together with the
/// auxiliary words `σ^{h-1}ψ_{p^r}` of degree `h + 1 ≤ max_degree`, sorted by
/// (degree, height, symbols).
pub fn enumerate_words(p: u64, r: u32, max_degree: u64) -> Result<Vec<EnumeratedWord>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("ψ_{p^r} needs r ≥ 1".into()));
    }
    let mut out = Vec::new();

    // Grow admissible words leftwards from their last letter. Every suffix
    // has positive degree, so each prepended letter strictly raises it.
    // Stack entries: reversed symbols, degree, σ count.
    let mut stack: Vec<(Vec<Symbol>, u64, usize)> = Vec::new();
    for (last, deg, sig) in [(Symbol::Sigma, 1, 1), (Symbol::Phi(p), 2, 0)] {
        if deg <= max_degree {
            stack.push((vec![last], deg, sig));
        }
    }
    while let Some((rev, deg, sigmas)) = stack.pop() {
        if matches!(rev.last(), Some(Symbol::Sigma | Symbol::Phi(_))) {
            let symbols: Vec<Symbol> = rev.iter().rev().copied().collect();
            let word = Word { symbols };
            let height = word.height();
            out.push(EnumeratedWord { word, degree: deg, height, auxiliary: false });
        }
        let mut extend = |s: Symbol, next_deg: Option<u64>, next_sig: usize| {
            if let Some(d) = next_deg.filter(|&d| d <= max_degree) {
                let mut next = rev.clone();
                next.push(s);
                stack.push((next, d, next_sig));
            }
        };
        extend(Symbol::Sigma, deg.checked_add(1), sigmas + 1);
        if sigmas % 2 == 0 {
            extend(Symbol::Gamma(p), deg.checked_mul(p), sigmas);
            extend(
                Symbol::Phi(p),
                deg.checked_mul(p).and_then(|d| d.checked_add(2)),
                sigmas,
            );
        }
    }

    for h in 1..max_degree as usize {
        let word = Word::auxiliary(p, r, h)?;
        out.push(EnumeratedWord { degree: word.degree(), height: h, word, auxiliary: true });
    }

    out.sort_by(|a, b| {
        (a.degree, a.height)
            .cmp(&(b.degree, b.height))
            .then_with(|| a.word.cmp(&b.word))
    });
    Ok(out)
}
