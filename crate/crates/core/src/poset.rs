//! Independence posets `Ind(E, Δ, G)`: elements `(S, g)` with `S ∈ Δ` and
//! `g ∈ G(S)`, where `(S ∪ {a}, g)` covers `(S, π_{S,a}(g))`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::abelian::GroupElem;
use crate::error::{Error, Result};
use crate::gstruct::{validate_structure, GroupStructure};
use crate::matroid::{f_polynomial_from_vector, h_vector_from_f};
use crate::poly::IntPolynomial;
use crate::subset::ElemSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetElem {
    pub set: ElemSet,
    pub coords: GroupElem,
}

impl PosetElem {
    pub fn rho(&self) -> usize {
        self.set.len()
    }
}

/// A finite poset given by its cover relations, graded by `|S|`.
#[derive(Clone, Debug)]
pub struct IndPoset {
    elems: Vec<PosetElem>,
    labels: Vec<String>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    // transitive closures as bitsets, each including the element itself
    below: Vec<BitSet>,
    above: Vec<BitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, o: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }
    fn intersects(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            })
        })
    }
}

impl IndPoset {
    /// Builds a poset from elements and `(upper, lower)` cover pairs. Each
    /// cover must drop `|S|` by exactly one. Elements are kept in the given
    /// order.
    pub fn from_parts(elems: Vec<PosetElem>, labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = elems.len();
        if labels.len() != n {
            return Err(Error::MalformedPoset("one label per element required".into()));
        }
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for &(hi, lo) in covers {
            if hi >= n || lo >= n {
                return Err(Error::MalformedPoset(format!("cover ({hi}, {lo}) out of range")));
            }
            if elems[hi].rho() != elems[lo].rho() + 1 {
                return Err(Error::MalformedPoset(format!(
                    "{} cannot cover {}: ranks {} and {}",
                    labels[hi],
                    labels[lo],
                    elems[hi].rho(),
                    elems[lo].rho()
                )));
            }
            down[hi].push(lo);
            up[lo].push(hi);
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        // closures, processing by increasing (resp. decreasing) rank
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| elems[i].rho());
        let mut below = vec![BitSet::new(n); n];
        for &i in &order {
            below[i].insert(i);
            for &j in &down[i].clone() {
                let b = below[j].clone();
                below[i].union_with(&b);
            }
        }
        let mut above = vec![BitSet::new(n); n];
        for &i in order.iter().rev() {
            above[i].insert(i);
            for &j in &up[i].clone() {
                let a = above[j].clone();
                above[i].union_with(&a);
            }
        }
        Ok(IndPoset {
            elems,
            labels,
            down,
            up,
            below,
            above,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[PosetElem] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &PosetElem {
        &self.elems[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of(&self, e: &PosetElem) -> Option<usize> {
        self.elems.iter().position(|x| x == e)
    }

    pub fn rho(&self, i: usize) -> usize {
        self.elems[i].rho()
    }

    /// Elements covered by `i`.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Elements covering `i`.
    pub fn covered_by(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn edge_count(&self) -> usize {
        self.down.iter().map(Vec::len).sum()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// Maximum of `rho`.
    pub fn rank(&self) -> usize {
        self.elems.iter().map(PosetElem::rho).max().unwrap_or(0)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    /// Replaces the labels; `f` receives each element and its index.
    pub fn relabel(&mut self, mut f: impl FnMut(usize, &PosetElem) -> String) {
        self.labels = self.elems.iter().enumerate().map(|(i, e)| f(i, e)).collect();
    }

    pub fn has_common_upper_bound(&self, a: usize, b: usize) -> bool {
        self.above[a].intersects(&self.above[b])
    }

    /// Minimal elements among the common upper bounds (possibly empty).
    pub fn minimal_upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let common = self.above[a].and(&self.above[b]);
        common
            .iter()
            .filter(|&c| self.below[c].and(&common).iter().all(|d| d == c))
            .collect()
    }

    /// Greatest common lower bound; exists whenever `a` and `b` have an upper
    /// bound in a simplicial poset.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        if !self.has_common_upper_bound(a, b) {
            return Err(Error::NoUpperBound);
        }
        let common = self.below[a].and(&self.below[b]);
        let maximal: Vec<usize> = common
            .iter()
            .filter(|&c| self.above[c].and(&common).iter().all(|d| d == c))
            .collect();
        match maximal.as_slice() {
            [m] => Ok(*m),
            _ => Err(Error::NonUniqueMeet),
        }
    }

    /// `(f_0, .., f_r)`: number of elements of each rank.
    pub fn f_vector(&self) -> Vec<BigInt> {
        let mut f = vec![BigInt::from(0); self.rank() + 1];
        for e in &self.elems {
            f[e.rho()] += 1;
        }
        f
    }

    pub fn h_vector(&self) -> Vec<BigInt> {
        h_vector_from_f(&self.f_vector())
    }

    /// `f(t) = Σ f_i t^(r-i)`.
    pub fn f_polynomial(&self) -> IntPolynomial {
        f_polynomial_from_vector(&self.f_vector())
    }

    /// `h(t) = f(t - 1)`.
    pub fn h_polynomial(&self) -> IntPolynomial {
        self.f_polynomial().shift(-1)
    }

    /// Connected components of the Hasse diagram, each as a poset in its own
    /// right (elements keep their relative order and labels).
    pub fn components(&self) -> Vec<IndPoset> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for &j in &self.down[i] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let k = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(i);
        }
        groups.into_iter().map(|g| self.induced(&g)).collect()
    }

    /// Sub-poset on the given (sorted) indices, keeping covers among them.
    fn induced(&self, idx: &[usize]) -> IndPoset {
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut covers = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            for j in &self.down[i] {
                if let Some(&kj) = pos.get(j) {
                    covers.push((k, kj));
                }
            }
        }
        IndPoset::from_parts(
            idx.iter().map(|&i| self.elems[i].clone()).collect(),
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
            &covers,
        )
        .expect("induced sub-poset of a valid poset")
    }

    /// Whether removing element `v` disconnects the (undirected) Hasse diagram.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        let n = self.len();
        let count = |skip: Option<usize>| {
            let mut seen = vec![false; n];
            let mut comps = 0;
            for s in 0..n {
                if seen[s] || Some(s) == skip {
                    continue;
                }
                comps += 1;
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(x) = stack.pop() {
                    for &y in self.down[x].iter().chain(&self.up[x]) {
                        if !seen[y] && Some(y) != skip {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            comps
        };
        count(Some(v)) > count(None)
    }

    /// Whether every lower interval `[0̂, y]` is a boolean algebra. The poset
    /// must have a unique minimal element.
    ///
    /// Each `z ≤ y` is sent to the set of atoms below it; the interval is
    /// boolean iff this map is an order isomorphism onto the power set of the
    /// atoms below `y`.
    pub fn verify_simplicial(&self) -> Result<bool> {
        let mins = self.minimal_elements();
        let [zero] = mins.as_slice() else {
            return Err(Error::NoUniqueMin);
        };
        let atom_set: HashSet<usize> = self.up[*zero].iter().copied().collect();
        for y in 0..self.len() {
            let interval: Vec<usize> = self.below[y].iter().collect();
            let atoms: Vec<usize> = interval.iter().copied().filter(|a| atom_set.contains(a)).collect();
            let k = atoms.len();
            if k >= 32 || interval.len() != 1 << k || self.rho(y) - self.rho(*zero) != k {
                return Ok(false);
            }
            let mask = |z: usize| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.le(a, z))
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            };
            let masks: Vec<u32> = interval.iter().map(|&z| mask(z)).collect();
            if masks.iter().collect::<HashSet<_>>().len() != interval.len() {
                return Ok(false);
            }
            for (i, &z) in interval.iter().enumerate() {
                for (j, &w) in interval.iter().enumerate() {
                    let sub = masks[i] & !masks[j] == 0;
                    if sub != self.le(z, w) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Hasse diagram in DOT format, edges pointing from covered to covering
    /// element.
    pub fn export_dot(&self) -> String {
        let mut s = String::from("digraph {\n  rankdir=BT;\n");
        for l in &self.labels {
            writeln!(s, "  \"{l}\";").unwrap();
        }
        for lo in 0..self.len() {
            for &hi in &self.up[lo] {
                writeln!(s, "  \"{}\" -> \"{}\";", self.labels[lo], self.labels[hi]).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

fn letter(e: usize) -> String {
    if e < 26 {
        ((b'a' + e as u8) as char).to_string()
    } else {
        format!("e{}_", e + 1)
    }
}

fn coord_suffix(g: &GroupElem) -> String {
    g.coords().iter().map(u64::to_string).collect::<Vec<_>>().join("_")
}

/// Default element names: `y0` for the empty set, `a0`, `b1`, .. for
/// singletons (letter of the element, then the group coordinates), and `C`
/// followed by the coordinates for larger sets (with the element letters
/// inserted when several faces share a cardinality).
pub fn default_labels(elems: &[PosetElem]) -> Vec<String> {
    let mut faces_per_size: HashMap<usize, HashSet<ElemSet>> = HashMap::new();
    for e in elems {
        faces_per_size.entry(e.set.len()).or_default().insert(e.set);
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|e| {
            let c = coord_suffix(&e.coords);
            match e.set.len() {
                0 if c.is_empty() => "y0".to_string(),
                0 => format!("y0_{c}"),
                1 => format!("{}{c}", letter(e.set.elems().next().unwrap())),
                k => {
                    let letters = if faces_per_size[&k].len() > 1 {
                        e.set.elems().map(letter).collect::<String>()
                    } else {
                        String::new()
                    };
                    let sep = if !letters.is_empty() && !c.is_empty() { "_" } else { "" };
                    format!("C{letters}{sep}{c}")
                }
            }
        })
        .collect();
    if labels.iter().collect::<HashSet<_>>().len() == labels.len() {
        labels
    } else {
        elems.iter().map(|e| format!("{}:{}", e.set, e.coords)).collect()
    }
}

/// The independence poset of a valid structure.
pub fn build_poset(g: &GroupStructure) -> Result<IndPoset> {
    let report = validate_structure(g);
    if let Some(d) = report.diagnostics.first() {
        return Err(Error::InvalidStructure(d.to_string()));
    }
    let mut elems = Vec::new();
    let mut offset = HashMap::new();
    for &s in g.faces() {
        offset.insert(s, elems.len());
        for c in g.group(s).elements() {
            elems.push(PosetElem { set: s, coords: c });
        }
    }
    let mut covers = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        for a in e.set.elems() {
            let lower = e.set.remove(a);
            let h = g.projection(e.set, a).apply(&e.coords);
            covers.push((i, offset[&lower] + g.group(lower).index_of(&h)));
        }
    }
    let labels = default_labels(&elems);
    IndPoset::from_parts(elems, labels, &covers)
}
