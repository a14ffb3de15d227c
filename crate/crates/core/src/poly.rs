//! Sparse polynomials in four variables over F_{q^2}.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{Elem, FieldSpec};

/// Exponent vector of `x0^e0 x1^e1 x2^e2 x3^e3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub [u8; 4]);

impl Mono {
    pub const ONE: Mono = Mono([0; 4]);

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0; 4];
        e[i] = 1;
        Mono(e)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// `other / self`; caller checks divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| other.0[i] - self.0[i]))
    }
}

impl Ord for Mono {
    /// Graded lexicographic with x0 > x1 > x2 > x3.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-`d` monomials in decreasing monomial order (`x0^d` first).
pub fn monomials(d: u32) -> Vec<Mono> {
    let d = d as u8;
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            for e2 in (0..=d - e0 - e1).rev() {
                out.push(Mono([e0, e1, e2, d - e0 - e1 - e2]));
            }
        }
    }
    out
}

/// `C(d + 3, 3)`.
pub fn num_monomials(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Position of `m` in [`monomials`] of its degree.
pub fn monomial_index(basis: &[Mono], m: &Mono) -> Option<usize> {
    basis.binary_search_by(|x| m.0.cmp(&x.0)).ok()
}

/// Nonzero terms keyed by monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Elem) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn linear(c: &[Elem; 4]) -> Poly {
        let mut p = Poly::zero();
        for (i, &x) in c.iter().enumerate() {
            if !x.is_zero() {
                p.terms.insert(Mono::var(i), x);
            }
        }
        p
    }

    pub fn from_terms(f: &FieldSpec, terms: impl IntoIterator<Item = (Mono, Elem)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(f, m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Option<(Mono, Elem)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, f: &FieldSpec, m: Mono, c: Elem) {
        if c.is_zero() {
            return;
        }
        let sum = f.add(self.coeff(&m), c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, *m, *c);
        }
        out
    }

    pub fn sub(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, *m, f.neg(*c));
        }
        out
    }

    pub fn scale(&self, f: &FieldSpec, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, f.mul(*x, c))).collect() }
    }

    pub fn mul_term(&self, f: &FieldSpec, m: &Mono, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(x, y)| (x.mul(m), f.mul(*y, c))).collect() }
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(f, m1.mul(m2), f.mul(*c1, *c2));
            }
        }
        out
    }

    pub fn pow(&self, f: &FieldSpec, e: u32) -> Poly {
        let mut acc = Poly::constant(Elem::ONE);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Division by a single nonzero polynomial: returns `(quotient,
    /// remainder)` with no remainder term divisible by the divisor's leading
    /// monomial. The remainder vanishes iff the divisor divides `self`.
    pub fn div_rem(&self, f: &FieldSpec, divisor: &Poly) -> (Poly, Poly) {
        let (lm, lc) = divisor.leading().expect("nonzero divisor");
        let lc_inv = f.inv(lc).expect("nonzero");
        let mut p = self.clone();
        let mut quot = Poly::zero();
        let mut rem = Poly::zero();
        while let Some((m, c)) = p.leading() {
            if lm.divides(&m) {
                let tm = lm.quotient_of(&m);
                let tc = f.mul(c, lc_inv);
                quot.add_term(f, tm, tc);
                p = p.sub(f, &divisor.mul_term(f, &tm, tc));
            } else {
                rem.add_term(f, m, c);
                p.terms.remove(&m);
            }
        }
        (quot, rem)
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn exact_div(&self, f: &FieldSpec, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(f, divisor);
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, f: &FieldSpec, x: &[Elem; 4]) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, (m, c)| {
            let v = (0..4).fold(*c, |v, i| f.mul(v, f.pow(x[i], m.0[i] as u64)));
            f.add(acc, v)
        })
    }

    /// Substitutes `x = sum_j y_j basis[j]`, giving a polynomial in the first
    /// `basis.len()` variables.
    pub fn restrict(&self, f: &FieldSpec, basis: &[[Elem; 4]]) -> Poly {
        let k = basis.len();
        assert!(k <= 4);
        let linear: Vec<Poly> = (0..4)
            .map(|i| {
                let mut c = [Elem::ZERO; 4];
                for j in 0..k {
                    c[j] = basis[j][i];
                }
                Poly::linear(&c)
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::constant(Elem::ONE)]; 4];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(*c);
            for i in 0..4 {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(f, &linear[i]);
                    powers[i].push(next);
                }
                prod = prod.mul(f, &powers[i][e]);
            }
            out = out.add(f, &prod);
        }
        out
    }
}
