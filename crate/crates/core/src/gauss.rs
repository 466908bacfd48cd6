//! Signed double-occurrence words (Gauss words) and their ribbon graphs.
//!
//! A word of rank `k` lists the crossings of a generic closed curve in the
//! order they are visited; each crossing label occurs exactly twice. Labels
//! are kept in first-occurrence order, and the sign string is indexed by
//! label (equivalently, by order of first occurrence).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::map::{CombinatorialMap, RibbonGraph};

/// Handedness of a crossing: which way the second-visit strand runs
/// through the rotation at its vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("missing `/` separator between labels and signs")]
    MissingSeparator,
    #[error("label {label} occurs {count} times, expected exactly twice")]
    Multiplicity { label: usize, count: usize },
    #[error("expected {expected} signs, found {found}")]
    SignCount { expected: usize, found: usize },
    #[error("labels are not in first-occurrence order")]
    NotCanonical,
}

/// A validated signed Gauss word in first-occurrence labeling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussWord {
    word: Vec<u8>,
    signs: Vec<Sign>,
}

impl GaussWord {
    /// The empty word of the simple curve.
    pub fn empty() -> Self {
        GaussWord {
            word: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// Builds a word that is already in first-occurrence labeling.
    pub fn new(word: Vec<u8>, signs: Vec<Sign>) -> Result<Self, GaussError> {
        check_multiplicities(&word)?;
        let k = word.len() / 2;
        if signs.len() != k {
            return Err(GaussError::SignCount {
                expected: k,
                found: signs.len(),
            });
        }
        if relabel_first_occurrence(&word) != word {
            return Err(GaussError::NotCanonical);
        }
        Ok(GaussWord { word, signs })
    }

    /// Builds a word from arbitrary positive labels, renumbering them in
    /// order of first occurrence. Signs stay positional: the i-th sign
    /// belongs to the i-th distinct label encountered.
    pub fn from_raw(labels: &[usize], signs: Vec<Sign>) -> Result<Self, GaussError> {
        let mut order: Vec<usize> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut word = Vec::with_capacity(labels.len());
        for &l in labels {
            let idx = match order.iter().position(|&x| x == l) {
                Some(i) => i,
                None => {
                    order.push(l);
                    counts.push(0);
                    order.len() - 1
                }
            };
            counts[idx] += 1;
            word.push(idx);
        }
        if let Some((i, &c)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(GaussError::Multiplicity {
                label: order[i],
                count: c,
            });
        }
        if order.len() > u8::MAX as usize {
            return Err(GaussError::MalformedToken(format!(
                "{} crossings exceed the supported maximum",
                order.len()
            )));
        }
        if signs.len() != order.len() {
            return Err(GaussError::SignCount {
                expected: order.len(),
                found: signs.len(),
            });
        }
        Ok(GaussWord {
            word: word.into_iter().map(|i| (i + 1) as u8).collect(),
            signs,
        })
    }

    /// Number of crossings.
    pub fn rank(&self) -> usize {
        self.signs.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.word
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Ribbon graph of the curve; the annulus for the empty word.
    pub fn to_ribbon_graph(&self) -> RibbonGraph {
        if self.rank() == 0 {
            RibbonGraph::Annulus
        } else {
            RibbonGraph::Map(word_to_map(self))
        }
    }
}

fn check_multiplicities(word: &[u8]) -> Result<(), GaussError> {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max + 1];
    for &l in word {
        if l == 0 {
            return Err(GaussError::MalformedToken("0".into()));
        }
        counts[l as usize] += 1;
    }
    for (label, &count) in counts.iter().enumerate().skip(1) {
        if count != 2 {
            return Err(GaussError::Multiplicity { label, count });
        }
    }
    Ok(())
}

/// Renumbers labels of a double-occurrence word by first occurrence.
pub(crate) fn relabel_first_occurrence(word: &[u8]) -> Vec<u8> {
    let mut map = [0u8; 256];
    let mut next = 1u8;
    word.iter()
        .map(|&l| {
            if map[l as usize] == 0 {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("@");
        }
        for l in &self.word {
            write!(f, "{l} ")?;
        }
        f.write_str("/ ")?;
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for GaussWord {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_word(s)
    }
}

/// Parses `1 2 1 2 / +-` (or `@` for the empty word).
pub fn parse_gauss_word(text: &str) -> Result<GaussWord, GaussError> {
    let text = text.trim();
    if text == "@" {
        return Ok(GaussWord::empty());
    }
    let (labels, signs) = text.split_once('/').ok_or(GaussError::MissingSeparator)?;
    let labels = labels
        .split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(GaussError::MalformedToken(t.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let signs = signs.trim();
    if signs.contains(char::is_whitespace) {
        return Err(GaussError::MalformedToken(signs.to_string()));
    }
    let signs = signs
        .chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            other => Err(GaussError::MalformedToken(other.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if labels.is_empty() {
        return Err(GaussError::MalformedToken(text.to_string()));
    }
    GaussWord::from_raw(&labels, signs)
}

/// Lexicographic stream of the unsigned double-occurrence words of rank `k`
/// in first-occurrence labeling.
#[derive(Debug, Clone)]
pub struct BaseWords {
    k: usize,
    word: Vec<u8>,
    started: bool,
    done: bool,
}

impl BaseWords {
    pub fn new(k: usize) -> Self {
        BaseWords {
            k,
            word: Vec::new(),
            started: false,
            done: false,
        }
    }

    // Completes `word` (a valid prefix) greedily with the smallest labels.
    fn fill(&mut self) {
        let mut counts = vec![0u8; self.k + 2];
        let mut next = 1u8;
        for &l in &self.word {
            counts[l as usize] += 1;
            next = next.max(l + 1);
        }
        while self.word.len() < 2 * self.k {
            let open = (1..next).find(|&l| counts[l as usize] == 1);
            let l = match open {
                Some(l) => l,
                None => {
                    next += 1;
                    next - 1
                }
            };
            counts[l as usize] += 1;
            self.word.push(l);
        }
    }

    // Moves to the lexicographic successor; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.word.pop() {
            let mut counts = vec![0u8; self.k + 2];
            let mut next = 1u8;
            for &l in &self.word {
                counts[l as usize] += 1;
                next = next.max(l + 1);
            }
            let candidate = ((last + 1)..=next.min(self.k as u8))
                .find(|&l| (l < next && counts[l as usize] == 1) || l == next);
            if let Some(l) = candidate {
                self.word.push(l);
                self.fill();
                return true;
            }
        }
        false
    }
}

impl Iterator for BaseWords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else if self.k == 0 || !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.word.clone())
    }
}

/// All signings of a base word, in lexicographic order of the sign vector
/// (`+` before `-`).
pub fn signings(base: &[u8]) -> impl Iterator<Item = GaussWord> + '_ {
    let k = base.len() / 2;
    (0u64..(1u64 << k)).map(move |mask| {
        let signs = (0..k)
            .map(|i| {
                if mask >> (k - 1 - i) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        GaussWord {
            word: base.to_vec(),
            signs,
        }
    })
}

/// Every signed Gauss word of rank `k`, lexicographic in (word, signs).
pub fn enumerate_gauss_words(k: usize) -> impl Iterator<Item = GaussWord> {
    BaseWords::new(k).flat_map(|base| signings(&base).collect::<Vec<_>>())
}

/// True when `base` is the least word among all its cyclic rotations and
/// reversals (after first-occurrence relabeling). Every curve has a reading
/// of this form, so the signings of such words reach every ribbon graph.
pub fn is_traversal_representative(base: &[u8]) -> bool {
    let len = base.len();
    let mut buf = Vec::with_capacity(len);
    for reversed in [false, true] {
        for shift in 0..len {
            if shift == 0 && !reversed {
                continue;
            }
            buf.clear();
            if reversed {
                buf.extend((0..len).map(|i| base[(shift + len - i) % len]));
            } else {
                buf.extend((0..len).map(|i| base[(shift + i) % len]));
            }
            if relabel_first_occurrence(&buf).as_slice() < base {
                return false;
            }
        }
    }
    true
}

/// Builds the 4-valent combinatorial map of a word of rank `k >= 1`.
///
/// Dart `4 * v + s` is rotation slot `s` at the vertex of crossing `v + 1`.
/// The first visit enters at slot 0 and leaves at slot 2; the second visit
/// enters at 1 and leaves at 3 for `+`, enters at 3 and leaves at 1 for `-`.
///
/// # Panics
///
/// Panics on the empty word; use [`GaussWord::to_ribbon_graph`] for it.
pub fn word_to_map(w: &GaussWord) -> CombinatorialMap {
    let k = w.rank();
    assert!(k >= 1, "the empty word has no combinatorial map");
    let n = 4 * k;
    let mut seen = vec![false; k];
    let mut enter = Vec::with_capacity(2 * k);
    let mut leave = Vec::with_capacity(2 * k);
    for &l in &w.word {
        let v = (l - 1) as usize;
        let (i, o) = if !seen[v] {
            seen[v] = true;
            (0, 2)
        } else {
            match w.signs[v] {
                Sign::Plus => (1, 3),
                Sign::Minus => (3, 1),
            }
        };
        enter.push((4 * v + i) as u32);
        leave.push((4 * v + o) as u32);
    }
    let sigma = (0..n as u32).map(|d| 4 * (d / 4) + (d + 1) % 4).collect();
    let mut alpha = vec![0u32; n];
    let len = w.word.len();
    for i in 0..len {
        let a = leave[i];
        let b = enter[(i + 1) % len];
        alpha[a as usize] = b;
        alpha[b as usize] = a;
    }
    CombinatorialMap::from_parts_unchecked(sigma, alpha)
}
