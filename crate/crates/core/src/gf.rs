//! Small finite fields `GF(t^a)` with log/exp tables.
//!
//! An element is stored as the integer `c_0 + c_1 t + ... + c_{a-1} t^{a-1}`
//! whose base-`t` digits are its coefficients over the defining polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct Field {
    t: u32,
    a: u32,
    q: u32,
    /// Monic defining polynomial, low degree first (`a + 1` entries).
    poly: Vec<u32>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("t", &self.t)
            .field("a", &self.a)
            .field("poly", &self.poly)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.a == other.a && self.poly == other.poly
    }
}

impl Eq for Field {}

// Remainder of `num` modulo monic `den`, coefficients mod `t`.
fn poly_rem(num: &[u32], den: &[u32], t: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + t * t - lead * c % t) % t;
            }
        }
        r.pop();
    }
    r
}

fn int_to_digits(mut n: u32, t: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(n % t);
        n /= t;
    }
    d
}

fn is_irreducible(poly: &[u32], t: u32) -> bool {
    let a = poly.len() - 1;
    for deg in 1..=a / 2 {
        for low in 0..t.pow(deg as u32) {
            let mut div = int_to_digits(low, t, deg);
            div.push(1);
            if poly_rem(poly, &div, t).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `GF(t^a)` with the least irreducible monic polynomial, ordering
    /// candidates by the integer encoding of their lower coefficients.
    pub fn new(t: u64, a: u32) -> Result<Field> {
        if !is_prime(t) || a == 0 || a > 16 {
            return Err(Error::UnsupportedField { t, a });
        }
        let q = t
            .checked_pow(a)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::UnsupportedField { t, a })?;
        let (t32, q32) = (t as u32, q as u32);
        let poly = (0..q32)
            .map(|low| {
                let mut p = int_to_digits(low, t32, a as usize);
                p.push(1);
                p
            })
            .find(|p| is_irreducible(p, t32))
            .expect("an irreducible polynomial of every degree exists");

        let mut field = Field {
            t: t32,
            a,
            q: q32,
            poly,
            generator: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let group_order = (q - 1) as u64;
        let cofactors: Vec<u64> = factorize(group_order.max(1))?
            .into_iter()
            .map(|(p, _)| group_order / p)
            .collect();
        let generator = (1..q32)
            .map(FieldElement)
            .find(|&g| {
                cofactors
                    .iter()
                    .all(|&e| field.slow_pow(g, e) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        field.generator = generator;

        let mut exp = Vec::with_capacity(group_order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElement::ONE;
        for k in 0..group_order as u32 {
            exp.push(x.0);
            log[x.0 as usize] = k;
            x = field.slow_mul(x, generator);
        }
        debug_assert_eq!(x, FieldElement::ONE);
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn slow_mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let a = self.a as usize;
        let xd = int_to_digits(x.0, self.t, a);
        let yd = int_to_digits(y.0, self.t, a);
        let mut prod = vec![0u32; 2 * a - 1];
        for (i, &u) in xd.iter().enumerate() {
            for (j, &v) in yd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.t;
            }
        }
        self.from_coeffs(&poly_rem(&prod, &self.poly, self.t))
    }

    fn slow_pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.t
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn defining_polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Image of an integer under `Z -> GF(t)`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let mut v = 0u32;
        for &c in coeffs.iter().take(self.a as usize).rev() {
            v = v * self.t + c % self.t;
        }
        FieldElement(v)
    }

    /// Coefficient vector, length `a`, low degree first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        int_to_digits(x.0, self.t, self.a as usize)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.t == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let (mut u, mut v, mut place, mut out) = (x.0, y.0, 1u32, 0u32);
        while u > 0 || v > 0 {
            out += ((u % self.t + v % self.t) % self.t) * place;
            u /= self.t;
            v /= self.t;
            place *= self.t;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.t == 2 {
            return x;
        }
        let (mut u, mut place, mut out) = (x.0, 1u32, 0u32);
        while u > 0 {
            out += ((self.t - u % self.t) % self.t) * place;
            u /= self.t;
            place *= self.t;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let k = self.log[x.0 as usize] + self.log[y.0 as usize];
        FieldElement(self.exp[(if k >= n { k - n } else { k }) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let k = self.log[x.0 as usize];
        Some(FieldElement(self.exp[((n - k) % n) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Option<FieldElement> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    /// `x^e` for any integer exponent; `0^0 = 1`, negative powers of zero are `None`.
    pub fn pow(&self, x: FieldElement, e: i64) -> Option<FieldElement> {
        if x.0 == 0 {
            return match e {
                0 => Some(FieldElement::ONE),
                e if e > 0 => Some(FieldElement::ZERO),
                _ => None,
            };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[x.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Some(FieldElement(self.exp[k as usize]))
    }

    /// The Frobenius power `x -> x^(t^k)`.
    pub fn frobenius(&self, x: FieldElement, k: u32) -> FieldElement {
        let e = (self.t as u64).pow(k % self.a) as i64;
        self.pow(x, e).expect("non-negative exponent")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::InvalidArgument(
                "zero has no multiplicative order".into(),
            ));
        }
        let n = (self.q - 1) as u64;
        let k = self.log[x.0 as usize] as u64;
        Ok(n / crate::numtheory::gcd(n, k))
    }
}
