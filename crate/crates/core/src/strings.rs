//! Words over small alphabets, Hamming distance, bad columns, coverage, and
//! the four string-selection instance types.
//!
//! Binary words are stored bit-packed so that distance is an xor/popcount
//! over 64-bit limbs. Larger alphabets store one byte per symbol.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet; symbols render as `0-9` then `a-z`.
pub const MAX_ALPHABET: usize = 36;

const LIMB: usize = 64;

fn limbs(len: usize) -> usize {
    len.div_ceil(LIMB)
}

/// Alphabet `{0, .., size-1}` with `2 <= size <= 36`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(size: usize) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&size) {
            return Err(Error::Input(format!(
                "alphabet size {size} outside [2, {MAX_ALPHABET}]"
            )));
        }
        Ok(Alphabet(size as u8))
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    pub fn render(self, symbol: u8) -> char {
        debug_assert!(symbol < self.0);
        char::from_digit(symbol as u32, 36).expect("symbol below 36")
    }

    /// Inverse of [`Alphabet::render`]; `None` if the character is not a
    /// symbol of this alphabet.
    pub fn symbol_of(self, ch: char) -> Option<u8> {
        if ch.is_ascii_uppercase() {
            return None;
        }
        ch.to_digit(36).map(|v| v as u8).filter(|&v| v < self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Packed(Vec<u64>),
    Wide(Vec<u8>),
}

/// Fixed-length string over an [`Alphabet`].
///
/// Ordering is lexicographic over the symbol sequence (the alphabet is
/// compared first, then the length, so words of one instance compare purely
/// by content).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    len: usize,
    repr: Repr,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Input("words must have length at least 1".into()));
        }
        if let Some((i, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= alphabet.size())
        {
            return Err(Error::SymbolOutOfRange {
                position: i + 1,
                symbol: s.to_string(),
                size: alphabet.size(),
            });
        }
        let mut word = Word::zeros(alphabet, symbols.len())?;
        for (i, &s) in symbols.iter().enumerate() {
            word.set(i, s);
        }
        Ok(word)
    }

    /// All-zero word of length `len`.
    pub fn zeros(alphabet: Alphabet, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Input("words must have length at least 1".into()));
        }
        let repr = if alphabet.is_binary() {
            Repr::Packed(vec![0; limbs(len)])
        } else {
            Repr::Wide(vec![0; len])
        };
        Ok(Word {
            alphabet,
            len,
            repr,
        })
    }

    /// Parses one character per symbol using the `0-9a-z` rendering.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .enumerate()
            .map(|(i, ch)| {
                alphabet
                    .symbol_of(ch)
                    .ok_or_else(|| Error::SymbolOutOfRange {
                        position: i + 1,
                        symbol: ch.to_string(),
                        size: alphabet.size(),
                    })
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(alphabet, &symbols)
    }

    /// Shorthand for `Word::parse(Alphabet::BINARY, text)`.
    pub fn binary(text: &str) -> Result<Self> {
        Word::parse(Alphabet::BINARY, text)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, pos: usize) -> u8 {
        assert!(pos < self.len, "position {pos} out of range {}", self.len);
        match &self.repr {
            Repr::Packed(bits) => ((bits[pos / LIMB] >> (pos % LIMB)) & 1) as u8,
            Repr::Wide(syms) => syms[pos],
        }
    }

    pub(crate) fn set(&mut self, pos: usize, symbol: u8) {
        debug_assert!(pos < self.len && (symbol as usize) < self.alphabet.size());
        match &mut self.repr {
            Repr::Packed(bits) => {
                let mask = 1u64 << (pos % LIMB);
                if symbol == 1 {
                    bits[pos / LIMB] |= mask;
                } else {
                    bits[pos / LIMB] &= !mask;
                }
            }
            Repr::Wide(syms) => syms[pos] = symbol,
        }
    }

    /// Copy of this word with position `pos` replaced by `symbol`.
    pub fn with_symbol(&self, pos: usize, symbol: u8) -> Result<Word> {
        if pos >= self.len {
            return Err(Error::Input(format!(
                "position {} outside word of length {}",
                pos + 1,
                self.len
            )));
        }
        if symbol as usize >= self.alphabet.size() {
            return Err(Error::SymbolOutOfRange {
                position: pos + 1,
                symbol: symbol.to_string(),
                size: self.alphabet.size(),
            });
        }
        let mut w = self.clone();
        w.set(pos, symbol);
        Ok(w)
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_symbols(&self) -> Vec<u8> {
        self.symbols().collect()
    }

    /// Number of non-zero symbols.
    pub fn weight(&self) -> usize {
        match &self.repr {
            Repr::Packed(bits) => bits.iter().map(|b| b.count_ones() as usize).sum(),
            Repr::Wide(syms) => syms.iter().filter(|&&s| s != 0).count(),
        }
    }

    /// Binary word as an integer with position `j` at bit `j`; `None` for
    /// non-binary words or words longer than 64.
    pub fn to_bits(&self) -> Option<u64> {
        match &self.repr {
            Repr::Packed(bits) if self.len <= LIMB => Some(bits[0]),
            _ => None,
        }
    }

    /// Binary word of length `len` whose position `j` is bit `j` of `bits`.
    pub fn from_bits(bits: u64, len: usize) -> Result<Word> {
        if len == 0 || len > LIMB {
            return Err(Error::Input(format!(
                "bit word length {len} outside [1, 64]"
            )));
        }
        let masked = if len == LIMB {
            bits
        } else {
            bits & ((1u64 << len) - 1)
        };
        Ok(Word {
            alphabet: Alphabet::BINARY,
            len,
            repr: Repr::Packed(vec![masked]),
        })
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.size(),
                found: other.alphabet.size(),
            });
        }
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// Hamming distance without compatibility checks; callers must have
    /// validated alphabet and length.
    pub(crate) fn distance(&self, other: &Word) -> usize {
        match (&self.repr, &other.repr) {
            (Repr::Packed(a), Repr::Packed(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x ^ y).count_ones() as usize)
                .sum(),
            (Repr::Wide(a), Repr::Wide(b)) => a.iter().zip(b).filter(|(x, y)| x != y).count(),
            _ => unreachable!("distance between words of different alphabets"),
        }
    }

    /// Columns where `self` and `other` differ.
    pub(crate) fn mismatches(&self, other: &Word) -> ColumnSet {
        match (&self.repr, &other.repr) {
            (Repr::Packed(a), Repr::Packed(b)) => ColumnSet {
                len: self.len,
                bits: a.iter().zip(b).map(|(x, y)| x ^ y).collect(),
            },
            (Repr::Wide(a), Repr::Wide(b)) => {
                let mut set = ColumnSet::empty(self.len);
                for (j, (x, y)) in a.iter().zip(b).enumerate() {
                    if x != y {
                        set.insert(j);
                    }
                }
                set
            }
            _ => unreachable!("mismatches between words of different alphabets"),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then(self.len.cmp(&other.len))
            .then_with(|| self.symbols().cmp(other.symbols()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{}", self.alphabet.render(s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Set of column indices of a fixed-length word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColumnSet {
    len: usize,
    bits: Vec<u64>,
}

impl ColumnSet {
    pub fn empty(len: usize) -> Self {
        ColumnSet {
            len,
            bits: vec![0; limbs(len)],
        }
    }

    pub fn insert(&mut self, col: usize) {
        assert!(col < self.len);
        self.bits[col / LIMB] |= 1 << (col % LIMB);
    }

    pub fn contains(&self, col: usize) -> bool {
        col < self.len && (self.bits[col / LIMB] >> (col % LIMB)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &ColumnSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &ColumnSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// 0-based column indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&c| self.contains(c))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Hamming distance: the number of positions where `a` and `b` differ.
pub fn hamming(a: &Word, b: &Word) -> Result<usize> {
    a.check_compatible(b)?;
    Ok(a.distance(b))
}

/// Columns on which the given words are not all equal.
pub fn bad_columns<'a, I>(words: I) -> Result<ColumnSet>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut iter = words.into_iter();
    let first = iter.next().ok_or(Error::EmptySubset)?;
    let mut bad = ColumnSet::empty(first.len());
    for w in iter {
        first.check_compatible(w)?;
        bad.union_with(&first.mismatches(w));
    }
    Ok(bad)
}

/// Symbol-wise complement of a binary word.
pub fn complement(word: &Word) -> Result<Word> {
    match &word.repr {
        Repr::Packed(bits) => {
            let mut flipped: Vec<u64> = bits.iter().map(|b| !b).collect();
            let tail = word.len % LIMB;
            if tail != 0 {
                *flipped.last_mut().expect("non-empty") &= (1u64 << tail) - 1;
            }
            Ok(Word {
                alphabet: word.alphabet,
                len: word.len,
                repr: Repr::Packed(flipped),
            })
        }
        Repr::Wide(_) => Err(Error::NotBinary(word.alphabet.size())),
    }
}

/// Non-empty list of equal-length words over one alphabet. Duplicates are
/// kept and counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSet {
    alphabet: Alphabet,
    word_len: usize,
    words: Vec<Word>,
}

impl StringSet {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::Input("string set must contain at least one word".into()))?;
        let (alphabet, word_len) = (first.alphabet(), first.len());
        for w in &words {
            first.check_compatible(w)?;
        }
        Ok(StringSet {
            alphabet,
            word_len,
            words,
        })
    }

    pub fn parse(alphabet: Alphabet, texts: &[&str]) -> Result<Self> {
        let words = texts
            .iter()
            .map(|t| Word::parse(alphabet, t))
            .collect::<Result<Vec<_>>>()?;
        StringSet::new(words)
    }

    /// Binary string set from `0`/`1` texts.
    pub fn binary(texts: &[&str]) -> Result<Self> {
        StringSet::parse(Alphabet::BINARY, texts)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Common word length.
    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// Ensures `word` could be a center for this set.
    pub fn check_word(&self, word: &Word) -> Result<()> {
        self.words[0].check_compatible(word)
    }

    /// Words at the given indices; errors on an out-of-range index.
    pub fn select(&self, indices: &[usize]) -> Result<Vec<&Word>> {
        indices
            .iter()
            .map(|&i| {
                self.words.get(i).ok_or_else(|| {
                    Error::Input(format!(
                        "string index {} outside [1, {}]",
                        i + 1,
                        self.len()
                    ))
                })
            })
            .collect()
    }

    /// Distances from `center` to every word, in input order.
    pub fn distances(&self, center: &Word) -> Result<Vec<usize>> {
        self.check_word(center)?;
        Ok(self.words.iter().map(|w| w.distance(center)).collect())
    }
}

macro_rules! distance_instance {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            set: StringSet,
            d: usize,
        }

        impl $name {
            pub fn new(set: StringSet, d: usize) -> Result<Self> {
                if d > set.word_len() {
                    return Err(Error::Input(format!(
                        "distance bound {d} exceeds word length {}",
                        set.word_len()
                    )));
                }
                Ok($name { set, d })
            }

            pub fn set(&self) -> &StringSet {
                &self.set
            }

            pub fn d(&self) -> usize {
                self.d
            }
        }
    };
}

distance_instance!(
    /// Close to Most Strings: maximize the number of words within distance `d`.
    CmsInstance
);
distance_instance!(
    /// Far from Most Strings: maximize the number of words at distance at least `d`.
    FfmsInstance
);

/// Closest to k Strings: minimize the radius of a center over its best `k` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CksInstance {
    set: StringSet,
    k: usize,
}

impl CksInstance {
    pub fn new(set: StringSet, k: usize) -> Result<Self> {
        if k == 0 || k > set.len() {
            return Err(Error::Input(format!(
                "k = {k} outside [1, {}] (number of strings)",
                set.len()
            )));
        }
        Ok(CksInstance { set, k })
    }

    pub fn set(&self) -> &StringSet {
        &self.set
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Most Strings with Few Bad Columns: largest subset with at most `k` bad
/// columns. Here `k` bounds columns, so it ranges over `[0, word_len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsfbcInstance {
    set: StringSet,
    k: usize,
}

impl MsfbcInstance {
    pub fn new(set: StringSet, k: usize) -> Result<Self> {
        if k > set.word_len() {
            return Err(Error::Input(format!(
                "k = {k} outside [0, {}] (word length)",
                set.word_len()
            )));
        }
        Ok(MsfbcInstance { set, k })
    }

    pub fn set(&self) -> &StringSet {
        &self.set
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of bad columns of the subset with the given indices.
    pub fn bad_column_count(&self, indices: &[usize]) -> Result<usize> {
        Ok(bad_columns(self.set.select(indices)?)?.count())
    }
}

/// Number of words within distance `d` of `center`.
pub fn coverage(center: &Word, inst: &CmsInstance) -> Result<usize> {
    let d = inst.d();
    Ok(inst
        .set()
        .distances(center)?
        .into_iter()
        .filter(|&x| x <= d)
        .count())
}

/// Number of words at distance at least `d` from `center`.
pub fn anticoverage(center: &Word, inst: &FfmsInstance) -> Result<usize> {
    let d = inst.d();
    Ok(inst
        .set()
        .distances(center)?
        .into_iter()
        .filter(|&x| x >= d)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::binary(s).unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&w("0011"), &w("0011")).unwrap(), 0);
        assert_eq!(hamming(&w("00"), &w("11")).unwrap(), 2);
        assert_eq!(hamming(&w("0110"), &w("1110")).unwrap(), 1);
    }

    #[test]
    fn hamming_rejects_mismatch() {
        assert_eq!(
            hamming(&w("001"), &w("0011")),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 4
            })
        );
        let ternary = Word::parse(Alphabet::new(3).unwrap(), "012").unwrap();
        assert!(matches!(
            hamming(&w("001"), &ternary),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn wide_words_roundtrip_and_distance() {
        let sigma = Alphabet::new(4).unwrap();
        let a = Word::parse(sigma, "0123").unwrap();
        let b = Word::parse(sigma, "0321").unwrap();
        assert_eq!(a.to_string(), "0123");
        assert_eq!(hamming(&a, &b).unwrap(), 2);
        assert!(Word::parse(sigma, "0124").is_err());
        assert!(matches!(complement(&a), Err(Error::NotBinary(4))));
    }

    #[test]
    fn long_binary_words_span_limbs() {
        let a = Word::zeros(Alphabet::BINARY, 130).unwrap();
        let b = a.with_symbol(0, 1).unwrap().with_symbol(129, 1).unwrap();
        assert_eq!(hamming(&a, &b).unwrap(), 2);
        let ca = complement(&a).unwrap();
        assert_eq!(ca.weight(), 130);
        assert_eq!(hamming(&ca, &b).unwrap(), 128);
    }

    #[test]
    fn symbol_rendering() {
        let sigma = Alphabet::new(36).unwrap();
        assert_eq!(sigma.render(35), 'z');
        assert_eq!(sigma.symbol_of('a'), Some(10));
        assert_eq!(sigma.symbol_of('A'), None);
        assert!(Alphabet::new(37).is_err());
        assert!(Alphabet::new(1).is_err());
    }

    #[test]
    fn bad_column_examples() {
        assert_eq!(
            bad_columns([&w("110"), &w("000")]).unwrap().to_vec(),
            vec![0, 1]
        );
        assert!(bad_columns([&w("101")]).unwrap().is_empty());
        assert_eq!(bad_columns(std::iter::empty()), Err(Error::EmptySubset));
    }

    #[test]
    fn bad_columns_against_column_scan() {
        let words = ["110", "101", "011", "000"].map(w);
        let scan: Vec<usize> = (0..3)
            .filter(|&j| words.iter().any(|u| u.get(j) != words[0].get(j)))
            .collect();
        assert_eq!(scan, vec![0, 1, 2]);
        assert_eq!(bad_columns(&words).unwrap().to_vec(), scan);
    }

    #[test]
    fn coverage_examples() {
        let inst = CmsInstance::new(StringSet::binary(&["00", "01", "11"]).unwrap(), 1).unwrap();
        // per-string check: d("01","00")=1, d("01","01")=0, d("01","11")=1
        assert_eq!(coverage(&w("01"), &inst).unwrap(), 3);
        let inst = CmsInstance::new(StringSet::binary(&["11"]).unwrap(), 0).unwrap();
        assert_eq!(coverage(&w("00"), &inst).unwrap(), 0);
        let inst = CmsInstance::new(StringSet::binary(&["00", "00"]).unwrap(), 0).unwrap();
        assert_eq!(coverage(&w("00"), &inst).unwrap(), 2);
        assert!(coverage(&w("000"), &inst).is_err());
    }

    #[test]
    fn anticoverage_examples() {
        let inst = FfmsInstance::new(StringSet::binary(&["00", "01"]).unwrap(), 1).unwrap();
        assert_eq!(anticoverage(&w("11"), &inst).unwrap(), 2);
        let inst = FfmsInstance::new(StringSet::binary(&["00"]).unwrap(), 1).unwrap();
        assert_eq!(anticoverage(&w("00"), &inst).unwrap(), 0);
        let inst = FfmsInstance::new(StringSet::binary(&["1", "0"]).unwrap(), 0).unwrap();
        assert_eq!(anticoverage(&w("0"), &inst).unwrap(), 2);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&w("0101")).unwrap(), w("1010"));
    }

    #[test]
    fn complement_identity_exhaustive() {
        for len in 1..=8usize {
            for a in 0..(1u64 << len) {
                let s = Word::from_bits(a, len).unwrap();
                let cs = complement(&s).unwrap();
                assert_eq!(complement(&cs).unwrap(), s);
                for b in 0..(1u64 << len) {
                    let t = Word::from_bits(b, len).unwrap();
                    assert_eq!(hamming(&cs, &t).unwrap() + hamming(&s, &t).unwrap(), len);
                }
            }
        }
    }

    #[test]
    fn instance_parameter_ranges() {
        let set = StringSet::binary(&["00", "01"]).unwrap();
        assert!(CmsInstance::new(set.clone(), 3).is_err());
        assert!(CksInstance::new(set.clone(), 0).is_err());
        assert!(CksInstance::new(set.clone(), 3).is_err());
        assert!(MsfbcInstance::new(set.clone(), 0).is_ok());
        assert!(MsfbcInstance::new(set, 3).is_err());
        assert!(StringSet::new(vec![]).is_err());
        assert!(StringSet::binary(&["00", "0"]).is_err());
    }

    #[test]
    fn word_ordering_is_lexicographic() {
        let mut v = vec![w("10"), w("01"), w("11"), w("00")];
        v.sort();
        assert_eq!(v, vec![w("00"), w("01"), w("10"), w("11")]);
    }

    fn word_strategy(sigma: usize, len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0..sigma as u8, len)
            .prop_map(move |v| Word::new(Alphabet::new(sigma).unwrap(), &v).unwrap())
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric(
            (a, b, c) in (2usize..5, 1usize..70).prop_flat_map(|(s, l)| {
                (word_strategy(s, l), word_strategy(s, l), word_strategy(s, l))
            })
        ) {
            let ab = hamming(&a, &b).unwrap();
            prop_assert_eq!(ab, hamming(&b, &a).unwrap());
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(hamming(&a, &c).unwrap() <= ab + hamming(&b, &c).unwrap());
            let scan = a.symbols().zip(b.symbols()).filter(|(x, y)| x != y).count();
            prop_assert_eq!(ab, scan);
        }

        #[test]
        fn complement_distance_identity(
            (s, t) in (1usize..200).prop_flat_map(|l| (word_strategy(2, l), word_strategy(2, l)))
        ) {
            let l = s.len();
            prop_assert_eq!(
                hamming(&complement(&s).unwrap(), &t).unwrap() + hamming(&s, &t).unwrap(),
                l
            );
        }

        #[test]
        fn coverage_matches_complement_anticoverage(
            (words, s, d) in (1usize..12, 1usize..8).prop_flat_map(|(l, n)| {
                (proptest::collection::vec(word_strategy(2, l), n), word_strategy(2, l), 0..=l)
            })
        ) {
            let l = s.len();
            let set = StringSet::new(words).unwrap();
            let cms = CmsInstance::new(set.clone(), d).unwrap();
            let ffms = FfmsInstance::new(set, l - d).unwrap();
            prop_assert_eq!(
                coverage(&s, &cms).unwrap(),
                anticoverage(&complement(&s).unwrap(), &ffms).unwrap()
            );
        }

        #[test]
        fn bad_columns_monotone(
            (words, cut) in (1usize..10, 2usize..8).prop_flat_map(|(l, n)| {
                (proptest::collection::vec(word_strategy(3, l), n), 1..n)
            })
        ) {
            let small = bad_columns(&words[..cut]).unwrap();
            let large = bad_columns(&words).unwrap();
            prop_assert!(small.is_subset(&large));
        }
    }
}
