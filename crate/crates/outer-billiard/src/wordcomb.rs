//! Finite words, factor languages and their special factors.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("length {n} is beyond the language depth {n_max}")]
    OutOfRange { n: usize, n_max: usize },
    #[error("word of length {len} needs depth {needed}, language has {n_max}")]
    InsufficientDepth { len: usize, needed: usize, n_max: usize },
    #[error("word {0} is not in the language")]
    NotInLanguage(String),
    #[error("difference at position {position} is {value}, outside 1..={j}")]
    InvalidDifference { position: usize, value: usize, j: usize },
    #[error("word too short: {0} letters")]
    TooShort(usize),
    #[error("cannot parse word {0:?}")]
    Parse(String),
}

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter().map(|&l| char::from_digit(l as u32, 36).unwrap_or('?')).collect()
}

pub fn parse_word(s: &str) -> Result<Word, WordError> {
    if s == "ε" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.chars().map(|c| c.to_digit(36).map(|d| d as Letter).ok_or_else(|| WordError::Parse(s.to_string()))).collect()
}

/// Where the words of a language came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Periodic(Vec<Word>),
    Sampled { words: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BispecialKind {
    Strong,
    Weak,
    Neutral,
    Ordinary,
}

impl std::fmt::Display for BispecialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BispecialKind::Strong => "strong",
            BispecialKind::Weak => "weak",
            BispecialKind::Neutral => "neutral",
            BispecialKind::Ordinary => "ordinary",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BispecialReport {
    pub word: Word,
    pub m_l: usize,
    pub m_r: usize,
    pub m_b: usize,
    pub index: i64,
    pub kind: BispecialKind,
}

impl BispecialReport {
    pub fn is_bispecial(&self) -> bool {
        self.m_l > 1 && self.m_r > 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CassaigneRow {
    pub n: usize,
    pub s_diff: i64,
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CassaigneReport {
    pub rows: Vec<CassaigneRow>,
}

impl CassaigneReport {
    pub fn failures(&self) -> Vec<&CassaigneRow> {
        self.rows.iter().filter(|r| r.s_diff != r.b).collect()
    }

    pub fn holds(&self) -> bool {
        self.failures().is_empty()
    }
}

/// One row of a complexity table; `s` and `b` are absent near the depth limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityRow {
    pub n: usize,
    pub p: usize,
    pub s: Option<i64>,
    pub b: Option<i64>,
}

/// The factors of length at most `n_max` of some set of words, stored per length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    alphabet: BTreeSet<Letter>,
    levels: Vec<BTreeSet<Word>>,
    provenance: Provenance,
}

/// Factors of z^ω for every generator z.
pub fn language_from_periodic(generators: &[Word], n_max: usize) -> Language {
    let mut top = BTreeSet::new();
    for z in generators.iter().filter(|z| !z.is_empty()) {
        let reps = n_max / z.len() + 2;
        let long: Word = z.iter().copied().cycle().take(reps * z.len()).collect();
        for i in 0..z.len() {
            top.insert(long[i..i + n_max].to_vec());
        }
    }
    let mut levels = vec![BTreeSet::new(); n_max + 1];
    for w in &top {
        for (n, level) in levels.iter_mut().enumerate() {
            level.insert(w[..n].to_vec());
        }
    }
    if generators.iter().all(|z| z.is_empty()) {
        levels.truncate(1);
        levels[0].insert(Vec::new());
        levels.resize(n_max + 1, BTreeSet::new());
    }
    let alphabet = levels.get(1).map(|l| l.iter().map(|w| w[0]).collect()).unwrap_or_default();
    Language { alphabet, levels, provenance: Provenance::Periodic(generators.to_vec()) }
}

/// All factors of a set of finite words, up to length `n_max`.
pub fn language_from_words<'a>(words: impl IntoIterator<Item = &'a Word>, n_max: usize) -> Language {
    let mut levels = vec![BTreeSet::new(); n_max + 1];
    levels[0].insert(Vec::new());
    let mut count = 0;
    for w in words {
        count += 1;
        for n in 1..=n_max.min(w.len()) {
            for f in w.windows(n) {
                levels[n].insert(f.to_vec());
            }
        }
    }
    let alphabet = levels.get(1).map(|l| l.iter().map(|w: &Word| w[0]).collect()).unwrap_or_default();
    Language { alphabet, levels, provenance: Provenance::Sampled { words: count } }
}

impl Language {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn level(&self, n: usize) -> Result<&BTreeSet<Word>, WordError> {
        self.levels.get(n).ok_or(WordError::OutOfRange { n, n_max: self.n_max() })
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.levels.get(w.len()).is_some_and(|l| l.contains(w))
    }

    pub fn complexity(&self, n: usize) -> Result<usize, WordError> {
        Ok(self.level(n)?.len())
    }

    /// s(n) = p(n+1) - p(n).
    pub fn s(&self, n: usize) -> Result<i64, WordError> {
        Ok(self.complexity(n + 1)? as i64 - self.complexity(n)? as i64)
    }

    fn check_depth(&self, len: usize) -> Result<(), WordError> {
        if len + 2 > self.n_max() {
            return Err(WordError::InsufficientDepth { len, needed: len + 2, n_max: self.n_max() });
        }
        Ok(())
    }

    pub fn bispecial_report(&self, v: &[Letter]) -> Result<BispecialReport, WordError> {
        self.check_depth(v.len())?;
        if !self.contains(v) {
            return Err(WordError::NotInLanguage(word_to_string(v)));
        }
        let next = &self.levels[v.len() + 1];
        let next2 = &self.levels[v.len() + 2];
        let mut probe = Vec::with_capacity(v.len() + 2);
        let mut m_l = 0;
        let mut m_r = 0;
        let mut m_b = 0;
        for &a in &self.alphabet {
            probe.clear();
            probe.push(a);
            probe.extend_from_slice(v);
            if next.contains(&probe) {
                m_l += 1;
            }
            probe.clear();
            probe.extend_from_slice(v);
            probe.push(a);
            if next.contains(&probe) {
                m_r += 1;
            }
            for &b in &self.alphabet {
                probe.clear();
                probe.push(a);
                probe.extend_from_slice(v);
                probe.push(b);
                if next2.contains(&probe) {
                    m_b += 1;
                }
            }
        }
        let index = m_b as i64 - m_r as i64 - m_l as i64 + 1;
        let bispecial = m_l > 1 && m_r > 1;
        let kind = match (bispecial, index.signum()) {
            (_, -1) => BispecialKind::Weak,
            (true, 1) => BispecialKind::Strong,
            (true, _) => BispecialKind::Neutral,
            (false, _) => BispecialKind::Ordinary,
        };
        Ok(BispecialReport { word: v.to_vec(), m_l, m_r, m_b, index, kind })
    }

    /// Reports for all bispecial words of length n.
    pub fn bispecials(&self, n: usize) -> Result<Vec<BispecialReport>, WordError> {
        self.check_depth(n)?;
        let mut out = Vec::new();
        for v in &self.levels[n] {
            let r = self.bispecial_report(v)?;
            if r.is_bispecial() {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// b(n), the sum of the indices of bispecial words of length n.
    pub fn b(&self, n: usize) -> Result<i64, WordError> {
        Ok(self.bispecials(n)?.iter().map(|r| r.index).sum())
    }

    /// Checks s(n+1) - s(n) = b(n) for every n in the range.
    pub fn check_cassaigne(&self, range: std::ops::RangeInclusive<usize>) -> Result<CassaigneReport, WordError> {
        let mut rows = Vec::new();
        for n in range {
            let s_diff = self.s(n + 1)? - self.s(n)?;
            rows.push(CassaigneRow { n, s_diff, b: self.b(n)? });
        }
        Ok(CassaigneReport { rows })
    }

    /// Rows for n = 0..=n_max.
    pub fn table(&self) -> Vec<ComplexityRow> {
        (0..=self.n_max())
            .map(|n| ComplexityRow { n, p: self.levels[n].len(), s: self.s(n).ok(), b: self.b(n).ok() })
            .collect()
    }

    /// Every length-n factor of a word in L_{n+1} lies in L_n.
    pub fn is_factor_closed(&self) -> bool {
        (1..=self.n_max()).all(|n| self.levels[n].iter().all(|w| self.levels[n - 1].contains(&w[1..]) && self.levels[n - 1].contains(&w[..n - 1])))
    }

    /// Every word below n_max - 1 extends on both sides.
    pub fn is_extendable(&self) -> bool {
        let n_max = self.n_max();
        (0..n_max.saturating_sub(1)).all(|n| {
            self.levels[n].iter().all(|v| {
                let left = self.alphabet.iter().any(|&a| {
                    let mut w = vec![a];
                    w.extend_from_slice(v);
                    self.levels[n + 1].contains(&w)
                });
                let right = self.alphabet.iter().any(|&a| {
                    let mut w = v.clone();
                    w.push(a);
                    self.levels[n + 1].contains(&w)
                });
                left && right
            })
        })
    }

    /// Words per length, one line each: `n<TAB>word word ...`.
    pub fn export_words(&self) -> String {
        let mut out = String::new();
        for (n, level) in self.levels.iter().enumerate() {
            let words: Vec<String> = level.iter().map(|w| word_to_string(w)).collect();
            let _ = writeln!(out, "{n}\t{}", words.join(" "));
        }
        out
    }

    /// The (n, p, s, b) table as tab-separated text.
    pub fn export_table(&self) -> String {
        let mut out = String::from("n\tp\ts\tb\n");
        for row in self.table() {
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{}\t{}\t{}\t{}", row.n, row.p, opt(row.s), opt(row.b));
        }
        out
    }
}

/// v_i = u_{i+1} - u_i mod k, which must land in 1..=floor((k+1)/2).
pub fn difference_word(u: &[Letter], k: usize) -> Result<Word, WordError> {
    if u.len() < 2 {
        return Err(WordError::TooShort(u.len()));
    }
    let j = k.div_ceil(2);
    u.windows(2)
        .enumerate()
        .map(|(position, p)| {
            let value = (p[1] as usize + k - p[0] as usize % k) % k;
            if (1..=j).contains(&value) {
                Ok(value as Letter)
            } else {
                Err(WordError::InvalidDifference { position, value, j })
            }
        })
        .collect()
}
