//! Stanley–Reisner ideals of simplicial posets and their Hilbert functions.
//!
//! The Hilbert function is computed directly from the generators: after
//! setting `y0 = 1`, the degree-`d` piece of the quotient is the span of the
//! degree-`d` monomials modulo the monomial part `J` of the ideal and the
//! multiples of the remaining generators. Ranks are exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{render_terms, IntPolynomial};
use crate::poset::IndPoset;

type SparseRow = Vec<(usize, BigInt)>;
type SparseTerms = Vec<(Vec<usize>, BigInt)>;

/// A polynomial in the poset variables. A monomial is the sorted multiset of
/// its variable indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPolynomial {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl FormalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, mut mono: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of each term under `deg(y) = ρ(y)`; `None` if the terms
    /// disagree.
    pub fn homogeneous_degree(&self, poset: &IndPoset) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.iter().map(|&v| poset.rho(v)).sum::<usize>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Text with variables named by `labels`. Variables of degree zero are
    /// dropped from monomials that have other factors (they equal 1 in the
    /// ring).
    pub fn render(&self, poset: &IndPoset) -> String {
        let visible = |m: &[usize]| -> Vec<usize> {
            let pos: Vec<usize> = m.iter().copied().filter(|&v| poset.rho(v) > 0).collect();
            if pos.is_empty() { m.to_vec() } else { pos }
        };
        let mut terms: Vec<(Vec<usize>, &BigInt)> = self.terms.iter().map(|(m, c)| (visible(m), c)).collect();
        terms.sort_by_key(|(m, _)| (std::cmp::Reverse(m.len()), m.iter().max().copied(), m.clone()));
        let rendered: Vec<(BigInt, String)> = terms
            .into_iter()
            .map(|(m, c)| {
                let mono = m.iter().map(|&v| poset.label(v)).collect::<Vec<_>>().join("*");
                (c.clone(), mono)
            })
            .collect();
        render_terms(&rendered)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// `y_i y_j` for elements without a common upper bound.
    S1,
    /// `y_i y_j - (y_i ∧ y_j) Σ z` over minimal upper bounds `z`.
    S2,
    /// `y0 - 1`.
    S3,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::S1 => "S1",
            GeneratorKind::S2 => "S2",
            GeneratorKind::S3 => "S3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// The pair `(i, j)`, `i < j`, for S1 and S2 generators.
    pub pair: Option<(usize, usize)>,
    pub poly: FormalPolynomial,
}

#[derive(Clone, Debug)]
pub struct SRIdeal<'a> {
    poset: &'a IndPoset,
    zero: usize,
    generators: Vec<Generator>,
}

/// The Stanley–Reisner ideal of a simplicial poset. Pairs of comparable
/// elements give the zero relation and are skipped.
pub fn sr_ideal(poset: &IndPoset) -> Result<SRIdeal<'_>> {
    match poset.verify_simplicial() {
        Ok(true) => {}
        Ok(false) | Err(Error::NoUniqueMin) => return Err(Error::NotSimplicial),
        Err(e) => return Err(e),
    }
    let zero = poset.minimal_elements()[0];
    let one = BigInt::one();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    let n = poset.len();
    for i in 0..n {
        if i == zero {
            continue;
        }
        for j in i + 1..n {
            if j == zero || poset.le(i, j) || poset.le(j, i) {
                continue;
            }
            let mut p = FormalPolynomial::zero();
            p.add_term(vec![i, j], one.clone());
            if !poset.has_common_upper_bound(i, j) {
                s1.push(Generator { kind: GeneratorKind::S1, pair: Some((i, j)), poly: p });
                continue;
            }
            let meet = poset.meet(i, j)?;
            for z in poset.minimal_upper_bounds(i, j) {
                p.add_term(vec![meet, z], -one.clone());
            }
            s2.push(Generator { kind: GeneratorKind::S2, pair: Some((i, j)), poly: p });
        }
    }
    let mut s3 = FormalPolynomial::zero();
    s3.add_term(vec![zero], one.clone());
    s3.add_term(vec![], -one);
    let mut generators = s1;
    generators.extend(s2);
    generators.push(Generator { kind: GeneratorKind::S3, pair: None, poly: s3 });
    Ok(SRIdeal { poset, zero, generators })
}

impl<'a> SRIdeal<'a> {
    pub fn poset(&self) -> &'a IndPoset {
        self.poset
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// One generator per line.
    pub fn render(&self) -> String {
        self.generators.iter().map(|g| g.poly.render(self.poset) + "\n").collect()
    }

    /// Whether every generator is homogeneous for `deg = ρ`.
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.poly.homogeneous_degree(self.poset).is_some())
    }
}

/// Dimension of the degree-`d` piece of the quotient ring over ℚ.
pub fn hilbert_oracle(ideal: &SRIdeal, d: usize) -> usize {
    Oracle::new(ideal).dimension(d)
}

/// `hilbert_oracle(ideal, d)` for `d = 0..=max`.
pub fn hilbert_function(ideal: &SRIdeal, max: usize) -> Vec<usize> {
    let o = Oracle::new(ideal);
    (0..=max).map(|d| o.dimension(d)).collect()
}

struct Oracle {
    // positive-degree variables and their degrees
    vars: Vec<usize>,
    deg: Vec<usize>,
    // compat[a] has bit b iff variables a and b (positions in `vars`) do not
    // multiply into the monomial ideal
    compat: Vec<Vec<u64>>,
    // for each pair of positions, the dehomogenized non-monomial generator
    // with that leading pair
    binomials: HashMap<(usize, usize), SparseTerms>,
}

impl Oracle {
    fn new(ideal: &SRIdeal) -> Self {
        let poset = ideal.poset;
        let vars: Vec<usize> = (0..poset.len()).filter(|&v| v != ideal.zero).collect();
        let pos: HashMap<usize, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let deg: Vec<usize> = vars.iter().map(|&v| poset.rho(v)).collect();
        let n = vars.len();
        let words = n.div_ceil(64).max(1);
        let mut compat = vec![vec![u64::MAX; words]; n];
        let mut binomials = HashMap::new();
        // y0 = 1: drop the degree-zero variable from every monomial
        let dehomogenize = |m: &[usize]| -> Vec<usize> {
            let mut v: Vec<usize> = m.iter().filter(|&&x| x != ideal.zero).map(|x| pos[x]).collect();
            v.sort_unstable();
            v
        };
        for g in &ideal.generators {
            let Some((i, j)) = g.pair else { continue };
            let (a, b) = (pos[&i], pos[&j]);
            match g.kind {
                GeneratorKind::S1 => {
                    compat[a][b / 64] &= !(1 << (b % 64));
                    compat[b][a / 64] &= !(1 << (a % 64));
                }
                _ => {
                    let terms = g.poly.terms().map(|(m, c)| (dehomogenize(m), c.clone())).collect();
                    binomials.insert((a.min(b), a.max(b)), terms);
                }
            }
        }
        Oracle { vars, deg, compat, binomials }
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        self.compat[a][b / 64] >> (b % 64) & 1 == 1
    }

    fn outside_ideal(&self, m: &[usize]) -> bool {
        m.iter()
            .enumerate()
            .all(|(k, &a)| m[k + 1..].iter().all(|&b| self.compatible(a, b)))
    }

    /// Degree-`d` monomials outside the monomial ideal, as sorted position
    /// lists.
    fn monomials(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let all = vec![u64::MAX; self.compat.first().map_or(1, Vec::len)];
        self.extend(0, d, &all, &mut cur, &mut out);
        out
    }

    fn extend(&self, start: usize, left: usize, allowed: &[u64], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..self.vars.len() {
            if self.deg[v] > left || allowed[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            let next: Vec<u64> = allowed.iter().zip(&self.compat[v]).map(|(a, b)| a & b).collect();
            cur.push(v);
            self.extend(v, left - self.deg[v], &next, cur, out);
            cur.pop();
        }
    }

    fn dimension(&self, d: usize) -> usize {
        let monos = self.monomials(d);
        let index: HashMap<&[usize], usize> = monos.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        for mono in &monos {
            let mut distinct = mono.clone();
            distinct.dedup();
            for (x, &a) in distinct.iter().enumerate() {
                for &b in &distinct[x + 1..] {
                    let Some(terms) = self.binomials.get(&(a, b)) else { continue };
                    let mut rest = mono.clone();
                    rest.remove(rest.iter().position(|&v| v == a).unwrap());
                    rest.remove(rest.iter().position(|&v| v == b).unwrap());
                    let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
                    for (m, c) in terms {
                        let mut full = rest.clone();
                        full.extend_from_slice(m);
                        full.sort_unstable();
                        if !self.outside_ideal(&full) {
                            continue;
                        }
                        *row.entry(index[full.as_slice()]).or_default() += c;
                    }
                    let row: SparseRow = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        monos.len() - block_rank(monos.len(), rows)
    }
}

/// Rank of a sparse integer matrix, split into blocks of columns connected
/// through shared rows.
fn block_rank(ncols: usize, rows: Vec<SparseRow>) -> usize {
    let mut parent: Vec<usize> = (0..ncols).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for r in &rows {
        let a = find(&mut parent, r[0].0);
        for (c, _) in &r[1..] {
            let b = find(&mut parent, *c);
            if a != b {
                parent[b] = a;
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<SparseRow>> = HashMap::new();
    for r in rows {
        let k = find(&mut parent, r[0].0);
        blocks.entry(k).or_default().push(r);
    }
    blocks.into_values().map(sparse_rank).sum()
}

/// Fraction-free elimination on sparse rows with sorted column indices.
pub(crate) fn sparse_rank(rows: Vec<SparseRow>) -> usize {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut r in rows {
        while let Some((lead, lc)) = r.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, r);
                break;
            };
            let pc = &p[0].1;
            let g = lc.gcd(pc);
            let (fr, fp) = (pc / &g, &lc / &g);
            r = combine(&r, &fr, p, &fp);
            primitive(&mut r);
        }
    }
    pivots.len()
}

/// `a * fa - b * fb`, dropping zeros.
fn combine(a: &[(usize, BigInt)], fa: &BigInt, b: &[(usize, BigInt)], fb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, &a[i - 1].1 * fa)
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, -(&b[j - 1].1 * fb))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, &a[i - 1].1 * fa - &b[j - 1].1 * fb)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn primitive(r: &mut [(usize, BigInt)]) {
    let g = r.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in r.iter_mut() {
            *c /= &g;
        }
    }
}

/// `hilb(t) = (h_0 + h_1 t + .. + h_r t^r) / (1 - t)^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// `(h_0, .., h_r)`.
    pub h_vector: Vec<BigInt>,
    pub rank: usize,
}

impl HilbertSeries {
    /// The numerator `Σ h_i t^i`.
    pub fn numerator(&self) -> IntPolynomial {
        IntPolynomial::from_ascending(&self.h_vector)
    }

    /// The h-polynomial `h(t) = Σ h_i t^(r-i)`.
    pub fn h_polynomial(&self) -> IntPolynomial {
        self.numerator().reverse(self.rank as u32)
    }

    /// Series coefficients for degrees `0..=max`.
    pub fn coefficients(&self, max: usize) -> Vec<BigInt> {
        self.numerator().series_over_pole(self.rank as u32, max as u32)
    }

    /// The series divided by `c`; fails if some `h_i` is not a multiple.
    pub fn divided_by(&self, c: u64) -> Result<HilbertSeries> {
        let c_big = BigInt::from(c);
        let mut h = Vec::with_capacity(self.h_vector.len());
        for x in &self.h_vector {
            let (q, r) = x.div_rem(&c_big);
            if !r.is_zero() {
                return Err(Error::NotDivisible(c));
            }
            h.push(q);
        }
        Ok(HilbertSeries { h_vector: h, rank: self.rank })
    }
}

/// The closed form predicted from the f-vector of the poset.
pub fn hilbert_closed(poset: &IndPoset) -> HilbertSeries {
    HilbertSeries { h_vector: poset.h_vector(), rank: poset.rank() }
}

/// Oracle dimensions next to the predicted series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertComparison {
    pub oracle: Vec<usize>,
    pub expected: Vec<BigInt>,
}

impl HilbertComparison {
    pub fn matches(&self) -> bool {
        self.oracle.len() == self.expected.len()
            && self.oracle.iter().zip(&self.expected).all(|(a, b)| BigInt::from(*a) == *b)
    }

    /// First degree where the two disagree.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.oracle.len()).find(|&d| BigInt::from(self.oracle[d]) != self.expected[d])
    }
}

pub fn compare_hilbert(poset: &IndPoset, expected: &HilbertSeries, max: usize) -> Result<HilbertComparison> {
    let ideal = sr_ideal(poset)?;
    Ok(HilbertComparison {
        oracle: hilbert_function(&ideal, max),
        expected: expected.coefficients(max),
    })
}

/// Oracle against the closed form of the poset itself, degrees `0..=max`.
pub fn verify_hilbert(poset: &IndPoset, max: usize) -> Result<bool> {
    Ok(compare_hilbert(poset, &hilbert_closed(poset), max)?.matches())
}

/// Oracle on a reduced poset against `(1/c) h(t)/(1-t)^r` built from the full
/// poset. A non-divisible numerator counts as a failure.
pub fn verify_hilbert_scaled(reduced: &IndPoset, full: &IndPoset, c: u64, max: usize) -> Result<bool> {
    let Ok(expected) = hilbert_closed(full).divided_by(c) else {
        return Ok(false);
    };
    Ok(compare_hilbert(reduced, &expected, max)?.matches())
}

/// `r + 3`.
pub fn default_max_degree(poset: &IndPoset) -> usize {
    poset.rank() + 3
}

impl fmt::Display for HilbertComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  oracle  series")?;
        for (d, (a, b)) in self.oracle.iter().zip(&self.expected).enumerate() {
            writeln!(f, "{d:>6}  {a:>6}  {b:>6}")?;
        }
        write!(f, "{}", if self.matches() { "MATCH" } else { "MISMATCH" })
    }
}
