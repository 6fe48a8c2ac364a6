//! Permutations in one-line notation, sets of permutations, inversion sets,
//! translation equivalence and time reversal.
//!
//! Everything here is 1-based: a permutation on `{1..n}` is stored as its
//! image tuple `(pi(1), ..., pi(n))`, and sets are kept sorted in
//! lexicographic order of those tuples. The lexicographically least element
//! of `S_n` is the identity, so a sorted set containing the identity always
//! has it first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image {0:?} is not a bijection on 1..={1}")]
    NotABijection(Vec<u8>, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("empty permutation")]
    Empty,
    #[error("pair ({j},{k}) out of range for n={n} (need 1 <= j < k <= n)")]
    BadPair { j: usize, k: usize, n: usize },
    #[error("set members must share one size, got {0} and {1}")]
    RaggedSet(usize, usize),
    #[error("duplicate member {0} in permutation set")]
    DuplicateMember(String),
    #[error("empty permutation set")]
    EmptySet,
    #[error("parse error at byte {at}: {what}")]
    Parse { at: usize, what: String },
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn from_one_line(image: Vec<u8>) -> Result<Self, PermError> {
        let n = image.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PermError::NotABijection(image.clone(), n));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n as u8).collect(),
        }
    }

    /// The order-reversing permutation `(n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            image: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `pi(i)` with `i` 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&v| self.image[v as usize - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { image }
    }

    /// All pairs `(j, k)` with `j < k` whose order this permutation reverses,
    /// i.e. `pi(k) < pi(j)` read on positions: pairs of positions `(i, j)`
    /// with `i < j` and `pi(j) < pi(i)`.
    pub fn inversion_set(&self) -> BTreeSet<PairIndex> {
        let n = self.n();
        let mut set = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.apply(j) < self.apply(i) {
                    set.insert(PairIndex { j: i, k: j });
                }
            }
        }
        set
    }

    /// Conjugation by the reversal: `pi_r . self . pi_r`.
    pub fn time_reverse(&self) -> Permutation {
        let n = self.n();
        let image = (1..=n)
            .map(|i| (n + 1 - self.apply(n + 1 - i)) as u8)
            .collect();
        Permutation { image }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, rest) = parse_permutation_at(s, 0)?;
        let tail = s[rest..].trim();
        if !tail.is_empty() {
            return Err(PermError::Parse {
                at: rest,
                what: format!("trailing input {tail:?}"),
            });
        }
        Ok(p)
    }
}

/// An ordered pair of event indices `1 <= j < k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex {
    pub j: usize,
    pub k: usize,
}

impl PairIndex {
    pub fn new(j: usize, k: usize, n: usize) -> Result<Self, PermError> {
        if j >= 1 && j < k && k <= n {
            Ok(PairIndex { j, k })
        } else {
            Err(PermError::BadPair { j, k, n })
        }
    }

    /// Every pair of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<PairIndex> {
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..=n {
            for k in (j + 1)..=n {
                out.push(PairIndex { j, k });
            }
        }
        out
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.k)
    }
}

/// A set of distinct permutations of equal size, kept sorted lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermSet {
    members: Vec<Permutation>,
    n: usize,
}

impl PermSet {
    pub fn new(mut members: Vec<Permutation>) -> Result<Self, PermError> {
        let n = members.first().ok_or(PermError::EmptySet)?.n();
        for m in &members {
            if m.n() != n {
                return Err(PermError::RaggedSet(n, m.n()));
            }
        }
        members.sort();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(PermError::DuplicateMember(w[0].to_string()));
            }
        }
        Ok(PermSet { members, n })
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains_identity(&self) -> bool {
        self.members[0].is_identity()
    }

    /// `pi_r Q pi_r`, re-sorted.
    pub fn time_reverse_set(&self) -> PermSet {
        let mut members: Vec<_> = self.members.iter().map(Permutation::time_reverse).collect();
        members.sort();
        PermSet { members, n: self.n }
    }

    /// Member-wise inverses, re-sorted.
    pub fn inverse_set(&self) -> PermSet {
        let mut members: Vec<_> = self.members.iter().map(Permutation::inverse).collect();
        members.sort();
        PermSet { members, n: self.n }
    }

    /// The list `[Q pi^{-1} : pi in Q]`, each sorted; duplicates retained.
    /// Every entry contains the identity.
    pub fn translations(&self) -> Vec<PermSet> {
        self.members
            .iter()
            .map(|pi| {
                let inv = pi.inverse();
                let mut members: Vec<_> = self
                    .members
                    .iter()
                    .map(|m| m.compose(&inv).expect("equal sizes"))
                    .collect();
                members.sort();
                PermSet { members, n: self.n }
            })
            .collect()
    }

    /// The event relabelings `[pi^{-1} Q : pi in Q]`, each sorted and
    /// identity-containing. A witness for any of these converts to a
    /// witness for the set itself by renaming events.
    pub fn relabelings(&self) -> Vec<PermSet> {
        self.members
            .iter()
            .map(|pi| {
                let inv = pi.inverse();
                let mut members: Vec<_> = self
                    .members
                    .iter()
                    .map(|m| inv.compose(m).expect("equal sizes"))
                    .collect();
                members.sort();
                PermSet { members, n: self.n }
            })
            .collect()
    }

    /// The lexicographically least translation; contains the identity.
    pub fn canonicalize(&self) -> PermSet {
        self.translations().into_iter().min().expect("nonempty set")
    }

    /// The lexicographically least relabeling; contains the identity.
    /// Constant exactly on relabeling orbits, the equivalence that
    /// preserves realizability.
    pub fn canonicalize_relabeling(&self) -> PermSet {
        self.relabelings().into_iter().min().expect("nonempty set")
    }

    /// True iff the set contains the identity and is closed under composition.
    pub fn is_cyclic_group(&self) -> bool {
        if !self.contains_identity() {
            return false;
        }
        let set: BTreeSet<_> = self.members.iter().collect();
        for a in &self.members {
            for b in &self.members {
                if !set.contains(&a.compose(b).expect("equal sizes")) {
                    return false;
                }
            }
        }
        true
    }

    /// Necessary condition for realizability on a line: some relabeling of
    /// the set admits an ordering of its members with nested inversion sets.
    /// Brute force over all relabelings and member orderings.
    pub fn chain_orderable(&self) -> bool {
        self.relabelings().iter().any(|t| {
            let rho: Vec<BTreeSet<PairIndex>> =
                t.members.iter().map(Permutation::inversion_set).collect();
            let mut order: Vec<usize> = (0..rho.len()).collect();
            permutations_visit(&mut order, 0, &mut |ord| {
                ord.windows(2).all(|w| rho[w[0]].is_subset(&rho[w[1]]))
            })
        })
    }
}

/// Visits every permutation of `items[at..]`, returning true as soon as
/// `accept` does.
fn permutations_visit<F: FnMut(&[usize]) -> bool>(
    items: &mut Vec<usize>,
    at: usize,
    accept: &mut F,
) -> bool {
    if at == items.len() {
        return accept(items);
    }
    for i in at..items.len() {
        items.swap(at, i);
        if permutations_visit(items, at + 1, accept) {
            return true;
        }
        items.swap(at, i);
    }
    false
}

impl fmt::Debug for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for PermSet {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (set, rest) = parse_permset_at(s, 0)?;
        let tail = s[rest..].trim();
        if !tail.is_empty() {
            return Err(PermError::Parse {
                at: rest,
                what: format!("trailing input {tail:?}"),
            });
        }
        Ok(set)
    }
}

fn skip_ws(s: &str, mut at: usize) -> usize {
    let b = s.as_bytes();
    while at < b.len() && (b[at] as char).is_whitespace() {
        at += 1;
    }
    at
}

fn expect_byte(s: &str, at: usize, c: u8) -> Result<usize, PermError> {
    if s.as_bytes().get(at) == Some(&c) {
        Ok(at + 1)
    } else {
        Err(PermError::Parse {
            at,
            what: format!("expected {:?}", c as char),
        })
    }
}

/// Parses `(1,2,3)` starting at byte `at`; returns the permutation and the
/// position just past it.
pub fn parse_permutation_at(s: &str, at: usize) -> Result<(Permutation, usize), PermError> {
    let mut at = skip_ws(s, at);
    at = expect_byte(s, at, b'(')?;
    let mut image = Vec::new();
    loop {
        at = skip_ws(s, at);
        let start = at;
        let b = s.as_bytes();
        while at < b.len() && b[at].is_ascii_digit() {
            at += 1;
        }
        if at == start {
            return Err(PermError::Parse {
                at,
                what: "expected a number".into(),
            });
        }
        let v: u16 = s[start..at].parse().map_err(|_| PermError::Parse {
            at: start,
            what: "number out of range".into(),
        })?;
        if v == 0 || v > 255 {
            return Err(PermError::Parse {
                at: start,
                what: format!("image value {v} out of range"),
            });
        }
        image.push(v as u8);
        at = skip_ws(s, at);
        match s.as_bytes().get(at) {
            Some(b',') => at += 1,
            Some(b')') => {
                at += 1;
                let p = Permutation::from_one_line(image).map_err(|e| PermError::Parse {
                    at: start,
                    what: e.to_string(),
                })?;
                return Ok((p, at));
            }
            _ => {
                return Err(PermError::Parse {
                    at,
                    what: "expected ',' or ')'".into(),
                })
            }
        }
    }
}

/// Parses `{(..),(..)}`; a bare member list without braces is also accepted.
pub fn parse_permset_at(s: &str, at: usize) -> Result<(PermSet, usize), PermError> {
    let mut at = skip_ws(s, at);
    let braced = s.as_bytes().get(at) == Some(&b'{');
    if braced {
        at += 1;
    }
    let mut members = Vec::new();
    loop {
        let (p, next) = parse_permutation_at(s, at)?;
        members.push(p);
        at = skip_ws(s, next);
        match s.as_bytes().get(at) {
            Some(b',') | Some(b';') => at += 1,
            Some(b'}') if braced => {
                at += 1;
                break;
            }
            _ if !braced => break,
            _ => {
                return Err(PermError::Parse {
                    at,
                    what: "expected ',' or '}'".into(),
                })
            }
        }
    }
    let set = PermSet::new(members).map_err(|e| match e {
        PermError::Parse { .. } => e,
        other => PermError::Parse {
            at,
            what: other.to_string(),
        },
    })?;
    Ok((set, at))
}

/// Convenience constructor used throughout the tests.
pub fn perm(image: &[u8]) -> Permutation {
    Permutation::from_one_line(image.to_vec()).expect("valid permutation literal")
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut image: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation { image: image.clone() });
        if !next_lex(&mut image) {
            break;
        }
    }
    out
}

fn next_lex(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        assert_eq!(perm(&[2, 1, 3]).compose(&id).unwrap(), perm(&[2, 1, 3]));
        assert_eq!(
            perm(&[2, 3, 1]).compose(&perm(&[2, 3, 1])).unwrap(),
            perm(&[3, 1, 2])
        );
        assert_eq!(
            perm(&[3, 2, 1]).compose(&perm(&[3, 2, 1])).unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(
            perm(&[2, 1]).compose(&perm(&[1, 2, 3])),
            Err(PermError::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(perm(&[2, 3, 1]).inverse(), perm(&[3, 1, 2]));
        assert_eq!(perm(&[3, 2, 1]).inverse(), perm(&[3, 2, 1]));
        for p in all_permutations(4) {
            assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(4));
        }
    }

    #[test]
    fn inversion_set_examples() {
        assert!(Permutation::identity(5).inversion_set().is_empty());
        let all: BTreeSet<_> = PairIndex::all(3).into_iter().collect();
        assert_eq!(perm(&[3, 2, 1]).inversion_set(), all);
        let expect: BTreeSet<_> = [PairIndex { j: 1, k: 3 }, PairIndex { j: 2, k: 3 }]
            .into_iter()
            .collect();
        assert_eq!(perm(&[2, 3, 1]).inversion_set(), expect);
    }

    #[test]
    fn inversion_set_characterizes_extremes() {
        for n in 1..=5 {
            for p in all_permutations(n) {
                let inv = p.inversion_set();
                assert_eq!(inv.is_empty(), p.is_identity());
                assert_eq!(inv.len() == n * (n - 1) / 2, p == Permutation::reversal(n));
            }
        }
    }

    #[test]
    fn reversal_composition_complements_inversions() {
        for n in 2..=5 {
            let all: BTreeSet<_> = PairIndex::all(n).into_iter().collect();
            let rev = Permutation::reversal(n);
            for p in all_permutations(n) {
                let c = rev.compose(&p).unwrap().inversion_set();
                let complement: BTreeSet<_> =
                    all.difference(&p.inversion_set()).copied().collect();
                assert_eq!(c, complement);
            }
        }
    }

    fn q0() -> PermSet {
        "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
            .parse()
            .unwrap()
    }

    #[test]
    fn time_reverse_set_examples() {
        assert_eq!(q0().time_reverse_set(), q0());
        let single = PermSet::new(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(single.time_reverse_set(), single);
        let involution: PermSet = "{(1,2,3),(2,1,3)}".parse().unwrap();
        assert_eq!(involution.time_reverse_set().time_reverse_set(), involution);
    }

    #[test]
    fn translations_examples() {
        let single = PermSet::new(vec![Permutation::identity(3)]).unwrap();
        assert_eq!(single.translations(), vec![single.clone()]);

        let q0 = q0();
        for t in q0.translations() {
            assert_eq!(t, q0);
        }

        let nongroup: PermSet =
            "{(1,2,3,4,5),(2,1,3,4,5),(1,3,2,4,5),(1,2,4,3,5),(1,2,3,5,4)}"
                .parse()
                .unwrap();
        let ts = nongroup.translations();
        assert_eq!(ts.len(), 5);
        let distinct: BTreeSet<_> = ts.iter().collect();
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn canonicalize_examples() {
        let two: PermSet = "{(1,2),(2,1)}".parse().unwrap();
        assert_eq!(two.canonicalize(), two);
        let shifted: PermSet =
            "{(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4),(1,2,3,4,5)}"
                .parse()
                .unwrap();
        assert_eq!(shifted.canonicalize(), q0());
        // idempotent and orbit-constant
        let nongroup: PermSet =
            "{(1,2,3,4,5),(2,1,3,4,5),(1,3,2,4,5),(1,2,4,3,5),(1,2,3,5,4)}"
                .parse()
                .unwrap();
        let canon = nongroup.canonicalize();
        assert_eq!(canon.canonicalize(), canon);
        for t in nongroup.translations() {
            assert_eq!(t.canonicalize(), canon);
        }
    }

    #[test]
    fn relabelings_contain_identity_and_cover_orbit() {
        let q: PermSet = "{(2,1,3,4,5),(2,3,1,4,5),(1,3,2,5,4)}".parse().unwrap();
        let rs = q.relabelings();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(PermSet::contains_identity));
        let canon = q.canonicalize_relabeling();
        for r in &rs {
            assert_eq!(r.canonicalize_relabeling(), canon);
        }
        // left and right orbits differ in general
        let group = q0();
        assert_eq!(group.relabelings(), group.translations());
    }

    #[test]
    fn cyclic_group_examples() {
        assert!(q0().is_cyclic_group());
        assert!(PermSet::new(vec![Permutation::identity(2)]).unwrap().is_cyclic_group());
        let nongroup: PermSet =
            "{(1,2,3,4,5),(2,1,3,4,5),(1,3,2,4,5),(1,2,4,3,5),(1,2,3,5,4)}"
                .parse()
                .unwrap();
        assert!(!nongroup.is_cyclic_group());
        assert!(q0().translations().iter().all(|t| *t == q0()));
    }

    #[test]
    fn chain_orderable_examples() {
        for sigma in all_permutations(4) {
            let set = PermSet::new(vec![Permutation::identity(4), sigma.clone()]);
            match set {
                Ok(s) => assert!(s.chain_orderable()),
                Err(_) => assert!(sigma.is_identity()),
            }
        }
        let cyclic3: PermSet = "{(1,2,3),(2,3,1),(3,1,2)}".parse().unwrap();
        assert!(!cyclic3.chain_orderable());
        let six: PermSet = "{(1,2,3,4,5,6),(2,1,3,4,6,5),(1,2,4,3,6,5)}".parse().unwrap();
        assert!(!six.chain_orderable());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("(1,1,2)".parse::<Permutation>().is_err());
        assert!("{(1,2),(1,2,3)}".parse::<PermSet>().is_err());
        assert!("{(1,2),(1,2)}".parse::<PermSet>().is_err());
        let err = "{(1,2,3),(2,3,1)".parse::<PermSet>().unwrap_err();
        assert!(matches!(err, PermError::Parse { .. }));
    }

    #[test]
    fn display_roundtrip() {
        let s = "{(1,2,3,4,5,6),(1,4,6,5,3,2),(2,6,1,5,4,3),(4,3,2,6,1,5),(5,4,2,1,3,6)}";
        let set: PermSet = s.parse().unwrap();
        assert_eq!(set.to_string(), s);
        let again: PermSet = set.to_string().parse().unwrap();
        assert_eq!(set, again);
    }
}
