//! Table-driven arithmetic in F_{q^2}, q = p^k.
//!
//! Elements are encoded by an integer index in `[0, q^2)`. The index is the
//! base-p integer whose digits are the coefficients of the element viewed as a
//! polynomial in the generator `x` of `F_p[x]/(m(x))`, constant term as the
//! least significant digit:
//!
//! ```text
//! c_0 + c_1 x + ... + c_{2k-1} x^{2k-1}   <->   c_0 + c_1 p + ... + c_{2k-1} p^{2k-1}
//! ```
//!
//! So index 0 is zero, index 1 is one and the prime subfield occupies indices
//! `0..p`. Multiplication goes through log/antilog tables keyed by the
//! smallest primitive element; addition works on the digit vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order q^2.
pub const MAX_ORDER: u32 = 1024;

/// Raw element index. Only meaningful together with the [`FieldSpec`] that
/// produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element tagged with the order of its field, for the checked API.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub order: u16,
    pub index: Elem,
}

/// Serialized form of a field: `(p, k, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u16,
    pub k: u32,
    /// Modulus coefficients from the constant term up; the last entry is the
    /// leading 1.
    pub modulus: Vec<u16>,
}

/// The field F_{q^2} together with its subfield F_q.
#[derive(Clone)]
pub struct FieldSpec {
    p: u16,
    k: u32,
    q: u16,
    order: u16,
    digits: usize,
    modulus: Vec<u16>,
    primitive: Elem,
    // exp has 2(order-1) entries so exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
    conj: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, coefficients from the constant term up.
mod fp_poly {
    pub fn trim(a: &mut Vec<u16>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u16], m: &[u16], p: u16) -> Vec<u16> {
        let p = p as u32;
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm] as u32, p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = (*r.last().unwrap() as u32 * lead_inv) % p;
            for (i, &c) in m.iter().enumerate() {
                let v = r[shift + i] as u32 + p * p - factor * c as u32;
                r[shift + i] = (v % p) as u16;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u16], b: &[u16], m: &[u16], p: u16) -> Vec<u16> {
        let pp = p as u32;
        let mut out = vec![0u16; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u32 + x as u32 * y as u32) % pp) as u16;
            }
        }
        rem(&out, m, p)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        (1..p).find(|x| a * x % p == 1).expect("unit mod p")
    }

    /// Trial division by every monic polynomial of degree `1..=max_deg`.
    pub fn is_irreducible(f: &[u16], p: u16) -> bool {
        let n = f.len() - 1;
        let max_deg = n / 2;
        for deg in 1..=max_deg {
            let count = (p as u64).pow(deg as u32);
            for code in 0..count {
                let mut g = vec![0u16; deg + 1];
                let mut c = code;
                for slot in g.iter_mut().take(deg) {
                    *slot = (c % p as u64) as u16;
                    c /= p as u64;
                }
                g[deg] = 1;
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds F_{q^2} for a prime power `q` with `q^2 <= 1024`.
    ///
    /// The modulus is the lexicographically smallest monic irreducible
    /// polynomial of degree `2k` over F_p, coefficients compared from the
    /// constant term up. The primitive element is the smallest index whose
    /// multiplicative order is `q^2 - 1`.
    pub fn new(q: u32) -> Result<FieldSpec> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let order = q as u64 * q as u64;
        if order > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { order });
        }
        let n = 2 * k as usize;
        let p16 = p as u16;

        let total = (p as u64).pow(n as u32);
        let modulus = (0..total)
            .map(|code| {
                let mut c = code;
                let mut f = vec![0u16; n + 1];
                for i in (0..n).rev() {
                    f[i] = (c % p as u64) as u16;
                    c /= p as u64;
                }
                f[n] = 1;
                f
            })
            .find(|f| f[0] != 0 && fp_poly::is_irreducible(f, p16))
            .expect("an irreducible polynomial of every degree exists");

        Self::with_modulus(p16, k, modulus)
    }

    fn with_modulus(p: u16, k: u32, modulus: Vec<u16>) -> Result<FieldSpec> {
        let n = 2 * k as usize;
        let q = (p as u32).pow(k);
        let order = (q * q) as usize;
        let to_vec = |idx: usize| -> Vec<u16> {
            let mut v = vec![0u16; n];
            let mut c = idx;
            for slot in v.iter_mut() {
                *slot = (c % p as usize) as u16;
                c /= p as usize;
            }
            v
        };
        let to_idx = |v: &[u16]| -> usize {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };

        let group = (order - 1) as u32;
        let factors = prime_factors(group);
        let pow_poly = |base: &[u16], mut e: u32| -> Vec<u16> {
            let mut acc = vec![1u16];
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = fp_poly::mul_mod(&acc, &b, &modulus, p);
                }
                b = fp_poly::mul_mod(&b, &b, &modulus, p);
                e >>= 1;
            }
            acc
        };
        let is_one = |v: &[u16]| v.first() == Some(&1) && v.iter().skip(1).all(|&c| c == 0);

        let primitive = (2..order)
            .find(|&g| {
                let gv = to_vec(g);
                factors.iter().all(|&r| !is_one(&pow_poly(&gv, group / r)))
            })
            .or(if order == 2 { Some(1) } else { None })
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u16; 2 * (order - 1)];
        let mut log = vec![0u16; order];
        let gv = to_vec(primitive);
        let mut cur = vec![1u16];
        for i in 0..order - 1 {
            let mut padded = cur.clone();
            padded.resize(n, 0);
            let idx = to_idx(&padded);
            exp[i] = idx as u16;
            exp[i + order - 1] = idx as u16;
            log[idx] = i as u16;
            cur = fp_poly::mul_mod(&cur, &gv, &modulus, p);
        }

        let neg = (0..order)
            .map(|i| {
                let v: Vec<u16> = to_vec(i).iter().map(|&c| (p - c) % p).collect();
                to_idx(&v) as u16
            })
            .collect();

        let add = (p != 2 && order <= 256).then(|| {
            let mut t = vec![0u16; order * order];
            for a in 0..order {
                let va = to_vec(a);
                for b in 0..order {
                    let vb = to_vec(b);
                    let s: Vec<u16> = va.iter().zip(&vb).map(|(&x, &y)| (x + y) % p).collect();
                    t[a * order + b] = to_idx(&s) as u16;
                }
            }
            t
        });

        let mut spec = FieldSpec {
            p,
            k,
            q: q as u16,
            order: order as u16,
            digits: n,
            modulus,
            primitive: Elem(primitive as u16),
            exp,
            log,
            add,
            neg,
            conj: Vec::new(),
        };
        spec.conj = (0..order).map(|i| spec.pow(Elem(i as u16), q as u64).0).collect();
        Ok(spec)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    /// Rebuilds a field from its descriptor. Only the canonical modulus for the
    /// given `(p, k)` is accepted, so indices keep their meaning.
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<FieldSpec> {
        let q = (desc.p as u32)
            .checked_pow(desc.k)
            .ok_or(Error::NotPrimePower(u32::MAX))?;
        let spec = FieldSpec::new(q)?;
        if spec.p != desc.p || spec.modulus != desc.modulus {
            return Err(Error::DescriptorMismatch { q: q as u16 });
        }
        Ok(spec)
    }

    #[inline]
    pub fn p(&self) -> u16 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u16 {
        self.q
    }

    /// Number of elements, q^2.
    #[inline]
    pub fn order(&self) -> u16 {
        self.order
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order).map(Elem)
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.order as u32 {
            Ok(Elem(index as u16))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.order })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u16)
    }

    /// F_p-coordinates of `a`, constant term first.
    pub fn to_vector(&self, a: Elem) -> Vec<u16> {
        let mut v = vec![0u16; self.digits];
        let mut c = a.0 as usize;
        for slot in v.iter_mut() {
            *slot = (c % self.p as usize) as u16;
            c /= self.p as usize;
        }
        v
    }

    pub fn from_vector(&self, v: &[u16]) -> Result<Elem> {
        if v.len() != self.digits || v.iter().any(|&c| c >= self.p) {
            return Err(Error::ElementOutOfRange { index: u32::MAX, order: self.order });
        }
        let idx = v.iter().rev().fold(0u32, |acc, &c| acc * self.p as u32 + c as u32);
        self.elem(idx)
    }

    /// `primitive^e`.
    #[inline]
    pub fn exp(&self, e: u64) -> Elem {
        Elem(self.exp[(e % (self.order as u64 - 1)) as usize])
    }

    /// Discrete log to the primitive base; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u16> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &self.add {
            return Elem(t[a.index() * self.order as usize + b.index()]);
        }
        let p = self.p as u32;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(self.exp[self.log[a.index()] as usize + self.log[b.index()] as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order as usize - 1;
        Ok(Elem(self.exp[(n - self.log[a.index()] as usize) % n]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^q`, the involution of F_{q^2} fixing F_q.
    #[inline]
    pub fn conj(&self, a: Elem) -> Elem {
        Elem(self.conj[a.index()])
    }

    /// `a^{q+1}`, lands in F_q.
    #[inline]
    pub fn norm(&self, a: Elem) -> Elem {
        self.mul(a, self.conj(a))
    }

    /// `a + a^q`, lands in F_q.
    #[inline]
    pub fn trace(&self, a: Elem) -> Elem {
        self.add(a, self.conj(a))
    }

    #[inline]
    pub fn in_subfield(&self, a: Elem) -> bool {
        self.conj(a) == a
    }

    /// The q elements fixed by conjugation, ascending index.
    pub fn subfield_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.in_subfield(a)).collect()
    }

    /// Some `b` with `b^{q+1} = a` for `a` in F_q; `None` otherwise.
    pub fn norm_preimage(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.norm(b) == a)
    }

    /// Sum of products, the workhorse of every evaluation.
    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn tag(&self, a: Elem) -> FieldElement {
        FieldElement { order: self.order, index: a }
    }

    fn untag(&self, a: FieldElement) -> Result<Elem> {
        if a.order != self.order {
            return Err(Error::MixedFields { left: self.order, right: a.order });
        }
        if a.index.0 >= self.order {
            return Err(Error::ElementOutOfRange { index: a.index.0 as u32, order: self.order });
        }
        Ok(a.index)
    }

    fn untag2(&self, a: FieldElement, b: FieldElement) -> Result<(Elem, Elem)> {
        if a.order != b.order {
            return Err(Error::MixedFields { left: a.order, right: b.order });
        }
        Ok((self.untag(a)?, self.untag(b)?))
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (x, y) = self.untag2(a, b)?;
        Ok(self.tag(self.add(x, y)))
    }

    pub fn checked_sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (x, y) = self.untag2(a, b)?;
        Ok(self.tag(self.sub(x, y)))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (x, y) = self.untag2(a, b)?;
        Ok(self.tag(self.mul(x, y)))
    }

    pub fn checked_div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (x, y) = self.untag2(a, b)?;
        Ok(self.tag(self.div(x, y)?))
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement> {
        let x = self.untag(a)?;
        Ok(self.tag(self.inv(x)?))
    }

    pub fn checked_pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        let x = self.untag(a)?;
        Ok(self.tag(self.pow(x, e)))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let desc = FieldDescriptor::deserialize(deserializer)?;
        FieldSpec::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}
