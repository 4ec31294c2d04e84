//! Matroids given by their independent sets, Tutte polynomials, and the
//! f- and h-polynomials of simplicial complexes.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_linalg::{integer_rank, IntMatrix};
use crate::poly::{IntPolynomial, IntPolynomial2};
use crate::subset::{ElemSet, MAX_GROUND};

/// A finite simplicial complex on `{0, .., ground_size - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground_size: usize,
    faces: Vec<ElemSet>,
}

impl SimplicialComplex {
    /// Faces are deduplicated and sorted canonically. Downward closure is
    /// checked.
    pub fn new(ground_size: usize, faces: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        let mut faces: Vec<ElemSet> = faces.into_iter().collect::<HashSet<_>>().into_iter().collect();
        faces.sort();
        let set: HashSet<ElemSet> = faces.iter().copied().collect();
        for f in &faces {
            if !f.is_subset(ElemSet::full(ground_size)) {
                return Err(Error::InvalidMatroid(format!("face {f} is outside the ground set")));
            }
            for e in f.elems() {
                if !set.contains(&f.remove(e)) {
                    return Err(Error::InvalidMatroid(format!(
                        "not downward closed: {f} is a face but {} is not",
                        f.remove(e)
                    )));
                }
            }
        }
        Ok(SimplicialComplex { ground_size, faces })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn faces(&self) -> &[ElemSet] {
        &self.faces
    }

    pub fn contains(&self, s: ElemSet) -> bool {
        self.faces.binary_search(&s).is_ok()
    }

    /// Size of the largest face.
    pub fn rank(&self) -> usize {
        self.faces.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// `(f_0, .., f_r)`, where `f_i` counts faces of size `i`.
    pub fn f_vector(&self) -> Vec<BigInt> {
        let mut f = vec![BigInt::from(0); self.rank() + 1];
        for s in &self.faces {
            f[s.len()] += 1;
        }
        f
    }

    /// `f(t) = Σ f_i t^(r-i)`.
    pub fn f_polynomial(&self) -> Result<IntPolynomial> {
        if self.faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(f_polynomial_from_vector(&self.f_vector()))
    }

    /// `h(t) = f(t - 1)`.
    pub fn h_polynomial(&self) -> Result<IntPolynomial> {
        Ok(self.f_polynomial()?.shift(-1))
    }
}

pub fn f_polynomial_from_vector(f: &[BigInt]) -> IntPolynomial {
    let r = f.len().saturating_sub(1) as u32;
    let mut p = IntPolynomial::zero();
    for (i, c) in f.iter().enumerate() {
        p.add_term(r - i as u32, c.clone());
    }
    p
}

/// h-vector `(h_0, .., h_r)` from the f-vector, via `h(t) = f(t - 1)`.
pub fn h_vector_from_f(f: &[BigInt]) -> Vec<BigInt> {
    let r = f.len().saturating_sub(1) as u32;
    let h = f_polynomial_from_vector(f).shift(-1);
    (0..=r).map(|i| h.coeff(r - i)).collect()
}

/// A matroid on `{0, .., N-1}`, stored as its independence complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    complex: SimplicialComplex,
    independent: HashSet<ElemSet>,
}

impl Matroid {
    /// Validates the matroid axioms exhaustively.
    pub fn from_independent_sets(ground_size: usize, sets: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        if ground_size > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set larger than {MAX_GROUND}")));
        }
        let complex = SimplicialComplex::new(ground_size, sets)?;
        if !complex.contains(ElemSet::EMPTY) {
            return Err(Error::InvalidMatroid("the empty set must be independent".into()));
        }
        let m = Self::from_complex_unchecked(complex);
        if let Some((a1, a2)) = m.exchange_violation() {
            return Err(Error::InvalidMatroid(format!("exchange axiom fails for {a1} and {a2}")));
        }
        Ok(m)
    }

    fn from_complex_unchecked(complex: SimplicialComplex) -> Self {
        let independent = complex.faces().iter().copied().collect();
        Matroid { complex, independent }
    }

    /// Column matroid of an integer matrix: independent sets are the column
    /// subsets that are linearly independent over the rationals.
    pub fn from_columns(x: &IntMatrix) -> Self {
        let n = x.cols();
        assert!(n <= MAX_GROUND, "too many columns");
        // grow independent sets one element at a time; dependent sets have no
        // independent supersets
        let mut faces = vec![ElemSet::EMPTY];
        let mut layer = vec![ElemSet::EMPTY];
        while !layer.is_empty() {
            let mut next = HashSet::new();
            for s in &layer {
                let top = s.elems().last().map_or(0, |e| e + 1);
                for e in top..n {
                    let t = s.insert(e);
                    let cols: Vec<usize> = t.elems().collect();
                    if integer_rank(&x.select_cols(&cols)) == t.len() {
                        next.insert(t);
                    }
                }
            }
            layer = next.into_iter().collect();
            faces.extend(layer.iter().copied());
        }
        let complex = SimplicialComplex::new(n, faces).expect("independent sets are downward closed");
        Self::from_complex_unchecked(complex)
    }

    pub fn ground_size(&self) -> usize {
        self.complex.ground_size()
    }

    pub fn ground_set(&self) -> ElemSet {
        ElemSet::full(self.ground_size())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Independent sets in canonical order.
    pub fn independent_sets(&self) -> &[ElemSet] {
        self.complex.faces()
    }

    pub fn is_independent(&self, s: ElemSet) -> bool {
        self.independent.contains(&s)
    }

    /// Size of a largest independent subset of `a`, by greedy extension.
    pub fn rank_of(&self, a: ElemSet) -> usize {
        let mut basis = ElemSet::EMPTY;
        for e in a.elems() {
            let t = basis.insert(e);
            if self.is_independent(t) {
                basis = t;
            }
        }
        basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.ground_set())
    }

    pub fn is_loop(&self, e: usize) -> bool {
        !self.is_independent(ElemSet::EMPTY.insert(e))
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground_set().remove(e)) < self.rank()
    }

    /// First pair `(A1, A2)` violating the exchange axiom, if any.
    pub fn exchange_violation(&self) -> Option<(ElemSet, ElemSet)> {
        let sets = self.independent_sets();
        for &a1 in sets {
            for &a2 in sets {
                if a2.len() <= a1.len() {
                    continue;
                }
                if !a2.difference(a1).elems().any(|e| self.is_independent(a1.insert(e))) {
                    return Some((a1, a2));
                }
            }
        }
        None
    }

    /// Deletion `M \ e`; the ground set keeps its size and `e` becomes a loop.
    pub fn delete(&self, e: usize) -> Matroid {
        let faces = self.independent_sets().iter().copied().filter(|s| !s.contains(e));
        Self::from_complex_unchecked(SimplicialComplex::new(self.ground_size(), faces).unwrap())
    }

    /// Contraction `M / e` for a non-loop `e`; `e` becomes a loop.
    pub fn contract(&self, e: usize) -> Matroid {
        assert!(!self.is_loop(e), "contracting a loop");
        let faces = self
            .independent_sets()
            .iter()
            .copied()
            .filter(|s| s.contains(e))
            .map(|s| s.remove(e));
        Self::from_complex_unchecked(SimplicialComplex::new(self.ground_size(), faces).unwrap())
    }

    /// `T(x, y) = Σ_{A ⊆ E} (x-1)^(r - rk A) (y-1)^(|A| - rk A)`.
    pub fn tutte(&self) -> IntPolynomial2 {
        let r = self.rank();
        let mut t = IntPolynomial2::zero();
        let one = BigInt::from(1);
        for a in self.ground_set().subsets() {
            let rk = self.rank_of(a);
            t.add_shifted_monomial((r - rk) as u32, (a.len() - rk) as u32, &one);
        }
        t
    }
}
