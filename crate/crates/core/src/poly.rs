//! Univariate and bivariate integer polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial2 {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients of `(x + c)^n`, indexed by exponent.
fn shifted_power(n: u32, c: i64) -> Vec<BigInt> {
    (0..=n)
        .map(|k| binomial(n, k) * BigInt::from(c).pow(n - k))
        .collect()
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial<C: Into<BigInt>>(exp: u32, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// From coefficients in ascending order of degree.
    pub fn from_ascending<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, c.clone().into());
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficients `[c_0, .., c_len-1]`, padded with zeros.
    pub fn to_ascending(&self, len: usize) -> Vec<BigInt> {
        (0..len as u32).map(|i| self.coeff(i)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.coeffs {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.coeffs {
            p.add_term(*e, c * k);
        }
        p
    }

    /// Exact division of every coefficient by `k`, or `None` if some
    /// coefficient is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut p = Self::zero();
        for (e, c) in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            p.add_term(*e, q);
        }
        Some(p)
    }

    /// The polynomial `p(t + c)`.
    pub fn shift(&self, c: i64) -> Self {
        let mut p = Self::zero();
        for (e, coef) in &self.coeffs {
            for (k, b) in shifted_power(*e, c).into_iter().enumerate() {
                p.add_term(k as u32, coef * b);
            }
        }
        p
    }

    /// `t^deg * p(1/t)` for the given `deg` (which must be ≥ the degree).
    pub fn reverse(&self, deg: u32) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.coeffs {
            assert!(*e <= deg);
            p.add_term(deg - e, c.clone());
        }
        p
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().map(|(e, c)| c * t.pow(*e)).sum()
    }

    /// Power-series coefficients of `self / (1 - t)^r` up to degree `max`.
    pub fn series_over_pole(&self, r: u32, max: u32) -> Vec<BigInt> {
        (0..=max)
            .map(|d| {
                self.coeffs
                    .iter()
                    .filter(|(e, _)| **e <= d)
                    .map(|(e, c)| {
                        // [t^k] (1 - t)^{-r} = C(k + r - 1, r - 1)
                        let k = d - e;
                        let w = if r == 0 {
                            if k == 0 { BigInt::one() } else { BigInt::zero() }
                        } else {
                            binomial(k + r - 1, r - 1)
                        };
                        c * w
                    })
                    .sum()
            })
            .collect()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let terms: Vec<(BigInt, String)> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (c.clone(), mono)
            })
            .collect();
        render_terms(&terms)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

/// Joins `(coefficient, monomial)` pairs with explicit signs, `*` between a
/// coefficient and its monomial.
pub(crate) fn render_terms(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if mono.is_empty() {
            write!(s, "{a}").unwrap();
        } else if a.is_one() {
            s.push_str(mono);
        } else {
            write!(s, "{a}*{mono}").unwrap();
        }
    }
    s
}

impl IntPolynomial2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, ex: u32, ey: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((ex, ey)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(ex, ey));
        }
    }

    /// Adds `c * (x - 1)^a * (y - 1)^b`.
    pub fn add_shifted_monomial(&mut self, a: u32, b: u32, c: &BigInt) {
        let xs = shifted_power(a, -1);
        let ys = shifted_power(b, -1);
        for (i, cx) in xs.iter().enumerate() {
            for (j, cy) in ys.iter().enumerate() {
                self.add_term(i as u32, j as u32, c * cx * cy);
            }
        }
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> BigInt {
        self.coeffs.get(&(ex, ey)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// The univariate polynomial `p(t, y0)`.
    pub fn specialize_y(&self, y0: i64) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        let y = BigInt::from(y0);
        for ((ex, ey), c) in &self.coeffs {
            p.add_term(*ex, c * y.pow(*ey));
        }
        p
    }

    /// The univariate polynomial `p(x0, t)`.
    pub fn specialize_x(&self, x0: i64) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        let x = BigInt::from(x0);
        for ((ex, ey), c) in &self.coeffs {
            p.add_term(*ey, c * x.pow(*ex));
        }
        p
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs.iter().map(|((ex, ey), c)| c * x.pow(*ex) * y.pow(*ey)).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for ((ex, ey), c) in &o.coeffs {
            p.add_term(*ex, *ey, c.clone());
        }
        p
    }
}

impl fmt::Display for IntPolynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().copied().collect();
        // descending total degree, then descending power of x
        keys.sort_by_key(|&(x, y)| std::cmp::Reverse((x + y, x)));
        let terms: Vec<(BigInt, String)> = keys
            .into_iter()
            .map(|(ex, ey)| {
                let mut parts = Vec::new();
                match ex {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{ex}")),
                }
                match ey {
                    0 => {}
                    1 => parts.push("y".to_string()),
                    _ => parts.push(format!("y^{ey}")),
                }
                (self.coeffs[&(ex, ey)].clone(), parts.join("*"))
            })
            .collect();
        f.write_str(&render_terms(&terms))
    }
}
