//! Substitutions on the free group, the named catalog, generator sets of the
//! folded languages and the families of bispecial words of the pentagon.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::wordcomb::{language_from_periodic, word_to_string, Language, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution {name} has no image for letter {letter}")]
    UnknownLetter { name: String, letter: Letter },
    #[error("unknown substitution {0:?}")]
    UnknownSubstitution(String),
    #[error("{0} has inverse letters after reduction")]
    NotPositive(String),
    #[error("unsupported polygon with {0} sides")]
    UnsupportedPolygon(usize),
    #[error("language at depth {n_max} changed when longer generators were added (first difference at length {length})")]
    NotStabilized { n_max: usize, length: usize },
}

/// A reduced word of the free group: letters with exponent +1 or -1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<(Letter, i8)>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn from_word(w: &[Letter]) -> Self {
        FreeWord(w.iter().map(|&l| (l, 1)).collect())
    }

    pub fn inverse_letter(l: Letter) -> Self {
        FreeWord(vec![(l, -1)])
    }

    /// Builds a reduced word from signed letters.
    pub fn from_signed(parts: &[(Letter, i8)]) -> Self {
        let mut w = FreeWord::empty();
        for &p in parts {
            w.push(p);
        }
        w
    }

    /// Parses digits with `^-1` marking an inverse letter, e.g. `2^-13`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut w = FreeWord::empty();
        let mut rest = s;
        while let Some(c) = rest.chars().next() {
            let l = c.to_digit(10)? as Letter;
            rest = &rest[1..];
            if let Some(r) = rest.strip_prefix("^-1") {
                w.push((l, -1));
                rest = r;
            } else {
                w.push((l, 1));
            }
        }
        Some(w)
    }

    pub fn push(&mut self, (l, e): (Letter, i8)) {
        if self.0.last() == Some(&(l, -e)) {
            self.0.pop();
        } else {
            self.0.push((l, e));
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &p in &other.0 {
            w.push(p);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&(l, e)| (l, -e)).collect())
    }

    pub fn letters(&self) -> &[(Letter, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn to_word(&self) -> Option<Word> {
        self.is_positive().then(|| self.0.iter().map(|&(l, _)| l).collect())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &(l, e) in &self.0 {
            write!(f, "{l}")?;
            if e < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub name: String,
    pub images: BTreeMap<Letter, FreeWord>,
}

impl Substitution {
    pub fn new(name: &str, images: &[(Letter, &str)]) -> Self {
        let images = images.iter().map(|&(l, s)| (l, FreeWord::parse(s).expect("catalog image"))).collect();
        Substitution { name: name.to_string(), images }
    }

    fn image(&self, l: Letter) -> Result<&FreeWord, SubstError> {
        self.images.get(&l).ok_or_else(|| SubstError::UnknownLetter { name: self.name.clone(), letter: l })
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord, SubstError> {
        let mut out = FreeWord::empty();
        for &(l, e) in w.letters() {
            let img = self.image(l)?;
            let img = if e > 0 { img.clone() } else { img.inverse() };
            for &p in img.letters() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Image of a positive word, which must reduce to a positive word.
    pub fn apply_word(&self, w: &[Letter]) -> Result<Word, SubstError> {
        let image = self.apply(&FreeWord::from_word(w))?;
        image.to_word().ok_or_else(|| SubstError::NotPositive(format!("{}({})", self.name, word_to_string(w))))
    }

    pub fn iterate_word(&self, w: &[Letter], times: usize) -> Result<Word, SubstError> {
        let mut cur = w.to_vec();
        for _ in 0..times {
            cur = self.apply_word(&cur)?;
        }
        Ok(cur)
    }

    /// Composition `self o inner`.
    pub fn after(&self, inner: &Substitution) -> Result<Substitution, SubstError> {
        let images = inner.images.iter().map(|(&l, w)| Ok((l, self.apply(w)?))).collect::<Result<_, SubstError>>()?;
        Ok(Substitution { name: format!("{}∘{}", self.name, inner.name), images })
    }
}

pub const CATALOG_NAMES: [&str; 15] = [
    "sigma",
    "psi",
    "xi",
    "psi2",
    "xi2",
    "Phi",
    "psi_tilde",
    "xi_tilde",
    "beta_tilde",
    "chi_tilde",
    "alpha_car",
    "alpha_hex",
    "alpha_tria",
    "f",
    "theta",
];

pub fn catalog(name: &str) -> Result<Substitution, SubstError> {
    let images: &[(Letter, &str)] = match name {
        "sigma" => &[(1, "1121211"), (2, "111"), (3, "3")],
        "psi" => &[(1, "2232232"), (2, "232"), (3, "2^-1")],
        "xi" => &[(1, "23222"), (2, "2"), (3, "3")],
        "psi2" => &[(1, "2322322"), (2, "322"), (3, "2^-1")],
        "xi2" => &[(1, "32222"), (2, "2"), (3, "2^-132")],
        "Phi" => &[(1, "1"), (2, "2"), (3, "23")],
        "psi_tilde" => &[(1, "23232"), (2, "32"), (3, "3")],
        "xi_tilde" => &[(1, "3222"), (2, "2")],
        "beta_tilde" => &[(1, "23232"), (2, "32")],
        "chi_tilde" => &[(2, "32"), (3, "3")],
        "alpha_car" => &[(1, "12"), (2, "2")],
        "alpha_hex" => &[(1, "1"), (2, "23"), (3, "3")],
        "alpha_tria" => &[(1, "121"), (2, "1^-1")],
        "f" => &[(1, "2111"), (2, "211"), (3, "21")],
        "theta" => &[(1, "322222"), (2, "32222"), (3, "3222"), (4, "322"), (5, "32")],
        _ => return Err(SubstError::UnknownSubstitution(name.to_string())),
    };
    Ok(Substitution::new(name, images))
}

fn cat(name: &str) -> Substitution {
    catalog(name).expect("catalog entry")
}

/// A substitution followed by a fixed prefix and suffix: w -> prefix s(w) suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatMap {
    pub base: Substitution,
    pub prefix: Word,
    pub suffix: Word,
}

impl HatMap {
    pub fn apply(&self, w: &[Letter]) -> Result<Word, SubstError> {
        let mut out = self.prefix.clone();
        out.extend(self.base.apply_word(w)?);
        out.extend_from_slice(&self.suffix);
        Ok(out)
    }

    pub fn iterate(&self, w: &[Letter], times: usize) -> Result<Word, SubstError> {
        let mut cur = w.to_vec();
        for _ in 0..times {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

pub fn sigma_hat() -> HatMap {
    HatMap { base: cat("sigma"), prefix: vec![1, 1], suffix: vec![1, 1] }
}

pub fn phi_hat() -> HatMap {
    HatMap { base: cat("Phi"), prefix: vec![], suffix: vec![2] }
}

pub fn chi_hat() -> HatMap {
    HatMap { base: cat("chi_tilde"), prefix: vec![], suffix: vec![3] }
}

pub fn xi_hat() -> HatMap {
    HatMap { base: cat("xi_tilde"), prefix: vec![2, 2, 2], suffix: vec![] }
}

pub fn beta_hat() -> HatMap {
    HatMap { base: cat("beta_tilde"), prefix: vec![2, 3, 2, 3, 2], suffix: vec![] }
}

/// Prefix of the fixed point of sigma starting with 1.
pub fn sigma_fixed_prefix(length: usize) -> Word {
    let sigma = cat("sigma");
    let mut w = vec![1];
    while w.len() < length {
        w = sigma.apply_word(&w).expect("sigma is positive");
    }
    w.truncate(length);
    w
}

fn repeat_block(block: &[Letter], n: usize) -> Word {
    block.iter().copied().cycle().take(block.len() * n).collect()
}

/// Parameterized generator words z with length at most `max_len`, or with
/// parameters at most `depth` when `max_len` is `None`.
fn generators(k: usize, depth: usize, max_len: Option<usize>) -> Result<Vec<Word>, SubstError> {
    let fits = |w: &Word| max_len.is_none_or(|m| w.len() <= m);
    let bound = if max_len.is_some() { usize::MAX } else { depth };
    let mut out: BTreeSet<Word> = BTreeSet::new();
    match k {
        3 => {
            for n in 0..=bound {
                let a: Word = [vec![1], repeat_block(&[2, 1], n)].concat();
                let b: Word = [a.clone(), vec![1], repeat_block(&[2, 1], n + 1)].concat();
                if !fits(&a) {
                    break;
                }
                out.insert(a);
                if fits(&b) {
                    out.insert(b);
                }
            }
        }
        4 => {
            for n in 0..=bound {
                let a: Word = [vec![1], vec![2; n]].concat();
                if !fits(&a) {
                    break;
                }
                out.insert(a);
            }
        }
        6 => {
            out.insert(vec![1]);
            for n in 0..=bound {
                let a: Word = [vec![2], vec![3; n]].concat();
                let b: Word = [a.clone(), vec![2], vec![3; n + 1]].concat();
                if !fits(&a) {
                    break;
                }
                out.insert(a);
                if fits(&b) {
                    out.insert(b);
                }
            }
        }
        5 => pentagon_generators(depth, max_len, &mut out)?,
        10 => {
            for w in pentagon_generators_vec(depth, max_len.map(|m| m * 6))? {
                if let Some(d) = theta_parse_cyclic(&w) {
                    if fits(&d) {
                        out.insert(d);
                    }
                }
            }
        }
        _ => return Err(SubstError::UnsupportedPolygon(k)),
    }
    Ok(out.into_iter().collect())
}

fn pentagon_generators_vec(depth: usize, max_len: Option<usize>) -> Result<Vec<Word>, SubstError> {
    let mut out = BTreeSet::new();
    pentagon_generators(depth, max_len, &mut out)?;
    Ok(out.into_iter().collect())
}

fn pentagon_generators(depth: usize, max_len: Option<usize>, out: &mut BTreeSet<Word>) -> Result<(), SubstError> {
    let sigma = cat("sigma");
    let psi = cat("psi");
    let xi = cat("xi");
    let fits = |w: &Word| max_len.is_none_or(|m| w.len() <= m);
    let bound = if max_len.is_some() { usize::MAX } else { depth };
    let psi_orbit = |seed: Word, out: &mut BTreeSet<Word>| -> Result<(), SubstError> {
        let mut w = seed;
        for _ in 0..=bound {
            if !fits(&w) {
                break;
            }
            let next = psi.apply_word(&w)?;
            out.insert(w);
            w = next;
        }
        Ok(())
    };
    psi_orbit(vec![2], out)?;
    psi_orbit(vec![2, 2, 2, 3], out)?;
    for seed in [vec![1], vec![1, 2]] {
        let mut s = seed;
        for _ in 0..=bound {
            if !fits(&s) {
                break;
            }
            psi_orbit(s.clone(), out)?;
            psi_orbit(xi.apply_word(&s)?, out)?;
            s = sigma.apply_word(&s)?;
        }
    }
    Ok(())
}

/// Reads a pentagon period as a decagon period: rotate to start with 3 and
/// cut into blocks 3 2^m, m = 1..=5, block 3 2^m giving letter 6 - m.
pub fn theta_parse_cyclic(w: &[Letter]) -> Option<Word> {
    let start = w.iter().position(|&l| l == 3)?;
    let rotated: Word = w[start..].iter().chain(&w[..start]).copied().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < rotated.len() {
        if rotated[i] != 3 {
            return None;
        }
        let m = rotated[i + 1..].iter().take_while(|&&l| l == 2).count();
        if !(1..=5).contains(&m) {
            return None;
        }
        out.push((6 - m) as Letter);
        i += 1 + m;
    }
    Some(out)
}

/// The generator family truncated at parameter `depth`.
pub fn generator_set(k: usize, depth: usize) -> Result<Vec<Word>, SubstError> {
    generators(k, depth, None)
}

/// All generators with period at most `max_len`.
pub fn generators_up_to_length(k: usize, max_len: usize) -> Result<Vec<Word>, SubstError> {
    generators(k, 0, Some(max_len))
}

/// The folded language of the k-gon up to `n_max`, from every generator of
/// period at most 3 n_max, checked against the generators of period at most 4 n_max.
pub fn folded_language(k: usize, n_max: usize) -> Result<Language, SubstError> {
    let base = language_from_periodic(&generators_up_to_length(k, 3 * n_max.max(1))?, n_max);
    let wider = language_from_periodic(&generators_up_to_length(k, 4 * n_max.max(1))?, n_max);
    if let Some(length) = (0..=n_max).find(|&n| base.level(n).ok() != wider.level(n).ok()) {
        return Err(SubstError::NotStabilized { n_max, length });
    }
    Ok(base)
}

// ---------------------------------------------------------------------------
// Bispecial families of the pentagon

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Strong,
    Weak,
    Neutral,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Strong => "strong",
            FamilyKind::Weak => "weak",
            FamilyKind::Neutral => "neutral",
        })
    }
}

/// Words over {1, 2} iterated by the hatted sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaSeed {
    X,
    Y,
    Z,
    T,
}

impl SigmaSeed {
    pub fn seed(self) -> Word {
        match self {
            SigmaSeed::X => vec![1],
            SigmaSeed::Y => vec![1; 4],
            SigmaSeed::Z => vec![1, 2, 1, 2, 1],
            SigmaSeed::T => vec![1; 7],
        }
    }

    pub fn name(self) -> char {
        match self {
            SigmaSeed::X => 'x',
            SigmaSeed::Y => 'y',
            SigmaSeed::Z => 'z',
            SigmaSeed::T => 't',
        }
    }

    /// The n-th hatted-sigma iterate of the seed.
    pub fn word(self, n: usize) -> Word {
        sigma_hat().iterate(&self.seed(), n).expect("sigma is positive")
    }
}

/// How a family member is built from its parameters (k, n).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyShape {
    /// A single word.
    Single(Word),
    /// Phi-hat of chi-hat^k of a fixed word.
    Lifted(Word),
    /// Phi-hat of chi-hat^k of xi-hat of a sigma family.
    LiftedXi(SigmaSeed),
    /// Phi-hat of chi-hat^k of beta-hat of a sigma family.
    LiftedBeta(SigmaSeed),
    /// The sigma family itself.
    Sigma(SigmaSeed),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub id: usize,
    pub name: String,
    pub kind: FamilyKind,
    pub shape: FamilyShape,
}

impl FamilyDescriptor {
    pub fn uses_k(&self) -> bool {
        matches!(self.shape, FamilyShape::Lifted(_) | FamilyShape::LiftedXi(_) | FamilyShape::LiftedBeta(_))
    }

    pub fn uses_n(&self) -> bool {
        matches!(self.shape, FamilyShape::LiftedXi(_) | FamilyShape::LiftedBeta(_) | FamilyShape::Sigma(_))
    }

    pub fn word(&self, k: usize, n: usize) -> Word {
        let lift = |w: Word| -> Word {
            let lifted = chi_hat().iterate(&w, k).expect("chi is positive");
            phi_hat().apply(&lifted).expect("Phi is positive")
        };
        match &self.shape {
            FamilyShape::Single(w) => w.clone(),
            FamilyShape::Lifted(w) => lift(w.clone()),
            FamilyShape::LiftedXi(s) => lift(xi_hat().apply(&s.word(n)).expect("xi is positive")),
            FamilyShape::LiftedBeta(s) => lift(beta_hat().apply(&s.word(n)).expect("beta is positive")),
            FamilyShape::Sigma(s) => s.word(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: usize,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub word: Word,
}

/// The 24 families plus the empty word and the word 2, in a fixed order.
pub fn family_descriptors() -> Vec<FamilyDescriptor> {
    use FamilyKind::*;
    use FamilyShape::*;
    use SigmaSeed::*;
    let w = |s: &str| crate::wordcomb::parse_word(s).expect("literal word");
    let mut shapes: Vec<(String, FamilyKind, FamilyShape)> = vec![
        ("empty".into(), Strong, Single(vec![])),
        ("2".into(), Neutral, Single(vec![2])),
    ];
    for seed in ["2222", "22322", "232232", "2323232"] {
        shapes.push((format!("lift({seed})"), Weak, Lifted(w(seed))));
    }
    for (name, shape) in [
        ("lift(xi(z))", LiftedXi(Z)),
        ("lift(xi(t))", LiftedXi(T)),
        ("lift(beta(z))", LiftedBeta(Z)),
        ("lift(beta(t))", LiftedBeta(T)),
        ("z", Sigma(Z)),
        ("t", Sigma(T)),
    ] {
        shapes.push((name.into(), Weak, shape));
    }
    for seed in ["2", "22", "222", "232", "23232", "3"] {
        shapes.push((format!("lift({seed})"), Strong, Lifted(w(seed))));
    }
    for (name, shape) in [
        ("lift(xi(x))", LiftedXi(X)),
        ("lift(xi(y))", LiftedXi(Y)),
        ("lift(beta(x))", LiftedBeta(X)),
        ("lift(beta(y))", LiftedBeta(Y)),
        ("x", Sigma(X)),
        ("y", Sigma(Y)),
    ] {
        shapes.push((name.into(), Strong, shape));
    }
    shapes.into_iter().enumerate().map(|(id, (name, kind, shape))| FamilyDescriptor { id, name, kind, shape }).collect()
}

/// Every family member of length at most `max_len`, ordered by (length, family id, k, n).
pub fn bispecial_families(kind: Option<FamilyKind>, max_len: usize) -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    for fam in family_descriptors().into_iter().filter(|f| kind.is_none_or(|k| f.kind == k)) {
        let n_range = if fam.uses_n() { 0..usize::MAX } else { 0..1 };
        for n in n_range {
            let first = fam.word(0, n);
            if first.len() > max_len {
                break;
            }
            let k_range = if fam.uses_k() { 0..usize::MAX } else { 0..1 };
            for k in k_range {
                let word = if k == 0 { first.clone() } else { fam.word(k, n) };
                if word.len() > max_len {
                    break;
                }
                out.push(FamilyInstance {
                    family: fam.id,
                    k: fam.uses_k().then_some(k),
                    n: fam.uses_n().then_some(n),
                    word,
                });
            }
        }
    }
    out.sort_by_key(|a| (a.word.len(), a.family, a.k, a.n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordcomb::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn catalog_images() {
        assert_eq!(cat("sigma").apply_word(&[1]).unwrap(), w("1121211"));
        assert_eq!(cat("psi").apply_word(&[2]).unwrap(), w("232"));
        assert_eq!(cat("psi").apply_word(&w("23")).unwrap(), w("23"));
        assert_eq!(cat("alpha_car").apply_word(&[1]).unwrap(), w("12"));
        assert_eq!(cat("f").apply_word(&w("123")).unwrap(), w("211121121"));
        assert!(matches!(catalog("tau"), Err(SubstError::UnknownSubstitution(_))));
        for name in CATALOG_NAMES {
            assert!(catalog(name).is_ok());
        }
    }

    #[test]
    fn free_reduction() {
        let a = FreeWord::parse("232").unwrap();
        let b = FreeWord::parse("2^-1").unwrap();
        assert_eq!(a.concat(&b).to_string(), "23");
        assert!(a.concat(&a.inverse()).is_empty());
        assert_eq!(cat("alpha_tria").apply_word(&w("12")).unwrap(), w("12"));
    }

    #[test]
    fn unknown_letter() {
        assert!(matches!(cat("xi_tilde").apply_word(&[3]), Err(SubstError::UnknownLetter { letter: 3, .. })));
    }

    #[test]
    fn fixed_point_prefixes() {
        assert_eq!(sigma_fixed_prefix(1), w("1"));
        assert_eq!(sigma_fixed_prefix(7), w("1121211"));
        let s = cat("sigma");
        let s2 = s.iterate_word(&[1], 2).unwrap();
        assert_eq!(sigma_fixed_prefix(21), s2[..21].to_vec());
        let p = sigma_fixed_prefix(60);
        assert_eq!(&s.apply_word(&p).unwrap()[..60], &p[..]);
    }

    #[test]
    fn small_generator_sets() {
        assert_eq!(generator_set(4, 2).unwrap(), vec![w("1"), w("12"), w("122")]);
        let tri = generator_set(3, 1).unwrap();
        for z in ["1", "1121", "121", "12112121"] {
            assert!(tri.contains(&w(z)), "{z}");
        }
        let penta = generator_set(5, 0).unwrap();
        for z in ["1", "12", "2", "2223", "23222", "232222"] {
            assert!(penta.contains(&w(z)), "{z}");
        }
        assert!(matches!(generator_set(7, 1), Err(SubstError::UnsupportedPolygon(7))));
    }

    #[test]
    fn hatted_maps() {
        assert_eq!(family_descriptors()[12].word(0, 0), w("22"));
        assert_eq!(SigmaSeed::Z.word(0), w("12121"));
        assert_eq!(SigmaSeed::X.word(1), w("11112121111"));
    }

    #[test]
    fn twenty_four_families() {
        let fams = family_descriptors();
        assert_eq!(fams.len(), 24);
        assert_eq!(fams.iter().filter(|f| f.kind == FamilyKind::Weak).count(), 10);
        assert_eq!(fams.iter().filter(|f| f.kind == FamilyKind::Strong).count(), 13);
    }

    #[test]
    fn theta_blocks() {
        assert_eq!(theta_parse_cyclic(&w("23")), Some(w("5")));
        assert_eq!(theta_parse_cyclic(&w("2232")), Some(w("3")));
        assert_eq!(theta_parse_cyclic(&w("3222")), Some(w("3")));
        assert_eq!(theta_parse_cyclic(&w("2222")), None);
        assert_eq!(theta_parse_cyclic(&w("33")), None);
    }
}
