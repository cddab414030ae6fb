//! Exact finite-field arithmetic GF(p^m) with the quadratic character.
//!
//! A [`Field`] owns its characteristic, degree, and a fixed monic irreducible
//! modulus; elements are coefficient vectors over the prime subfield. The
//! element enumeration (index `k` has coefficients equal to the base-p digits
//! of `k`, constant term first) is fixed once and defines row/column indexing
//! in every construction downstream, so outputs are byte-reproducible.

use crate::error::{Error, Result};

/// Trial-division primality test; adequate at the orders this crate targets.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `n` into `(p, m)` with `p` prime and `n = p^m`, if `n` is a prime power.
pub fn factor_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut rest = n;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    // n itself is prime.
    Some((n, 1))
}

/// An element of a [`Field`]: coefficient vector over the prime subfield,
/// constant term first, every coefficient reduced mod the characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The finite field GF(p^m), carrying its reduction modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    characteristic: u64,
    degree: u32,
    /// Monic modulus, coefficients low degree first, length `degree + 1`.
    modulus: Vec<u64>,
    order: u64,
}

/// Builds GF(p^m) using the lexicographically smallest monic irreducible
/// modulus of degree `m` (coefficients compared low degree first). For
/// `m = 1` this is the polynomial `x`.
pub fn build_field(p: u64, m: u32) -> Result<Field> {
    if m < 1 {
        return Err(Error::DegreeZero);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    let modulus = smallest_irreducible(p, m);
    let order = p.checked_pow(m).expect("field order overflows u64");
    Ok(Field {
        characteristic: p,
        degree: m,
        modulus,
        order,
    })
}

/// Builds the field of a given prime-power order.
pub fn field_of_order(n: u64) -> Result<Field> {
    let (p, m) = factor_prime_power(n).ok_or(Error::NotPrimePower(n))?;
    build_field(p, m)
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, low degree first (monic, length `degree + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element_from_index(1)
    }

    /// Element with the given coefficients (constant term first); values are
    /// reduced mod the characteristic, missing high coefficients are zero.
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.degree as usize, "too many coefficients");
        let mut c = vec![0; self.degree as usize];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = src % self.characteristic;
        }
        FieldElement { coeffs: c }
    }

    /// The `idx`-th element of the fixed enumeration: coefficients are the
    /// base-p digits of `idx`, constant term first. Indices `0..p` are the
    /// prime subfield in natural order.
    pub fn element_from_index(&self, idx: u64) -> FieldElement {
        assert!(idx < self.order, "element index {idx} out of range");
        let mut coeffs = vec![0; self.degree as usize];
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = rest % self.characteristic;
            rest /= self.characteristic;
        }
        FieldElement { coeffs }
    }

    /// Position of `e` in the fixed enumeration.
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        let mut idx = 0;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.characteristic + c;
        }
        idx
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element_from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + p - y) % p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        let coeffs = a.coeffs.iter().map(|&x| (p - x) % p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        let m = self.degree as usize;
        // Convolve, then reduce modulo the modulus.
        let mut prod = vec![0u64; 2 * m.max(1) - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, p);
        let mut coeffs = vec![0; m];
        coeffs[..rem.len()].copy_from_slice(&rem);
        FieldElement { coeffs }
    }

    /// `a^e` by square-and-multiply; `a^0 = 1` including for `a = 0`.
    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as `a^(order-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { order: self.order });
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Quadratic character: 0 for zero, +1 for nonzero squares, -1 otherwise.
    /// Computed as `x^((order-1)/2)`.
    pub fn quadratic_character(&self, x: &FieldElement) -> Result<i64> {
        if self.order % 2 == 0 {
            return Err(Error::EvenCharacteristic(self.order));
        }
        if x.is_zero() {
            return Ok(0);
        }
        let v = self.pow(x, (self.order - 1) / 2);
        if v == self.one() {
            Ok(1)
        } else {
            debug_assert_eq!(v, self.neg(&self.one()));
            Ok(-1)
        }
    }
}

/// Remainder of `a` modulo monic `b` over GF(p); result has degree < deg(b).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * bc) % p;
            }
        }
        r.pop();
    }
    while r.len() < db {
        r.push(0);
    }
    r
}

/// Advances a coefficient tuple to its successor (last position fastest, so
/// the sequence is ascending lexicographic with the constant term as the
/// most significant key). Returns false on wraparound.
fn next_tuple(low: &mut [u64], p: u64) -> bool {
    for c in low.iter_mut().rev() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

/// True iff the monic polynomial (low degree first) has no monic divisor of
/// degree 1..=deg/2 over GF(p).
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let mut low = vec![0u64; d];
        loop {
            let mut div = low.clone();
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
            if !next_tuple(&mut low, p) {
                break;
            }
        }
    }
    true
}

/// First monic irreducible of degree `m` over GF(p) in the candidate order
/// of [`next_tuple`].
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let mut low = vec![0u64; m as usize];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        assert!(
            next_tuple(&mut low, p),
            "no monic irreducible of degree {m} over GF({p})"
        );
    }
}
