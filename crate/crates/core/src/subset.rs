use std::cmp::Ordering;
use std::fmt;

/// A subset of the ground set `{0, .., N-1}` stored as a bitmask (N ≤ 32).
///
/// Displayed and serialized 1-based, matching the usual `{1..N}` labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(pub u32);

pub const MAX_GROUND: usize = 32;

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut bits = 0u32;
        for e in elems {
            assert!(e < MAX_GROUND, "element {e} out of range");
            bits |= 1 << e;
        }
        ElemSet(bits)
    }

    /// From 1-based labels, as they appear in input files.
    pub fn from_labels(labels: &[usize]) -> Option<Self> {
        if labels.iter().any(|&l| l == 0 || l > MAX_GROUND) {
            return None;
        }
        Some(Self::from_elems(labels.iter().map(|&l| l - 1)))
    }

    pub fn full(n: usize) -> Self {
        if n == 32 {
            ElemSet(u32::MAX)
        } else {
            ElemSet((1u32 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(self, e: usize) -> Self {
        ElemSet(self.0 | 1 << e)
    }

    pub fn remove(self, e: usize) -> Self {
        ElemSet(self.0 & !(1 << e))
    }

    pub fn union(self, o: Self) -> Self {
        ElemSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ElemSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Elements in increasing order (0-based).
    pub fn elems(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(e)
        })
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.elems().map(|e| e + 1).collect()
    }

    /// All subsets of `self`, in the canonical order (see [`canonical_cmp`]).
    pub fn subsets(self) -> Vec<ElemSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(ElemSet(s));
            if s == self.0 {
                break;
            }
            s = (s.wrapping_sub(self.0)) & self.0;
        }
        out.sort_by(|a, b| a.canonical_cmp(*b));
        out
    }

    /// Order by cardinality, then lexicographically on sorted element lists.
    pub fn canonical_cmp(self, other: Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elems().cmp(other.elems()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(*other)
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}
