//! Finite fields `F_q` with `q = p^e`.
//!
//! Prime fields are plain modular arithmetic. Extension fields are stored in
//! the fixed power basis of a monic irreducible modulus over `F_p`; when no
//! modulus is supplied the lexicographically least irreducible one is chosen,
//! so identical parameters always yield identical fields.
//!
//! Elements are identified by their canonical index: the base-`p` encoding of
//! the coordinate vector. Two elements of different fields never compare
//! equal and mixing them in arithmetic is an error ([`Field::checked_add`]
//! and friends) or a panic (the operator impls); elements are never coerced
//! across isomorphic fields.

use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Deterministic primality test for word-sized integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Arithmetic on F_p[u] represented as little-endian coefficient vectors.
// ---------------------------------------------------------------------------

fn pp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo monic `m`.
fn pp_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert!(m.last() == Some(&1), "modulus must be monic");
    let mut r = a.to_vec();
    pp_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + (p - mk % p) % p * lead) % p;
            }
        }
        r.pop();
        pp_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

/// Exhaustive irreducibility test over `F_p` for a monic polynomial.
fn pp_is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            // monic candidate of degree d with lower coefficients from idx
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push(k % p);
                k /= p;
            }
            g.push(1);
            if pp_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct FieldInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus of degree `e`, little-endian; empty for prime fields.
    modulus: Vec<u64>,
    /// Coordinates of `u^k mod modulus` for `k = e ..= 2e-2`.
    reduction: Vec<Vec<u64>>,
}

/// A finite field descriptor. Cheap to clone; equality is structural
/// (same `p`, `e` and modulus).
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl Field {
    /// Build `F_{p^e}`, searching for the lexicographically least monic
    /// irreducible modulus when `e > 1`.
    pub fn new(p: u64, e: u32, budget: &Budget) -> Result<Field> {
        Self::build(p, e, None, budget)
    }

    /// Build `F_{p^e}` with an explicit monic irreducible modulus
    /// (little-endian coefficients, length `e + 1`).
    pub fn with_modulus(p: u64, e: u32, modulus: Vec<u64>, budget: &Budget) -> Result<Field> {
        Self::build(p, e, Some(modulus), budget)
    }

    fn build(p: u64, e: u32, modulus: Option<Vec<u64>>, budget: &Budget) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        if e < 1 {
            return Err(Error::precondition("extension degree must be at least 1"));
        }
        let q = Budget::checked_pow(p, e, budget.max_field_size, "field size")?;
        let modulus = match (e, modulus) {
            (1, None) => Vec::new(),
            (1, Some(_)) => {
                return Err(Error::precondition(
                    "a prime field takes no modulus",
                ))
            }
            (_, Some(mut m)) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                pp_trim(&mut m);
                if m.len() != e as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::precondition(format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                if !pp_is_irreducible(p, &m) {
                    return Err(Error::precondition("modulus is reducible over F_p"));
                }
                m
            }
            (_, None) => {
                let mut found = None;
                for idx in 0..q {
                    let mut m = Vec::with_capacity(e as usize + 1);
                    let mut k = idx;
                    for _ in 0..e {
                        m.push(k % p);
                        k /= p;
                    }
                    m.push(1);
                    if pp_is_irreducible(p, &m) {
                        found = Some(m);
                        break;
                    }
                }
                found.ok_or_else(|| {
                    Error::consistency(format!("no irreducible of degree {e} over F_{p}"))
                })?
            }
        };
        // Precompute u^k mod modulus for k = e ..= 2e-2.
        let mut reduction = Vec::new();
        if e > 1 {
            for k in e..=2 * e - 2 {
                let mut uk = vec![0u64; k as usize + 1];
                uk[k as usize] = 1;
                let mut r = pp_rem(p, &uk, &modulus);
                r.resize(e as usize, 0);
                reduction.push(r);
            }
        }
        Ok(Field(Arc::new(FieldInner { p, e, q, modulus, reduction })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.e
    }

    /// Field cardinality `q = p^e`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// The modulus, little-endian, for extension fields; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.e == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), idx: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), idx: 1 }
    }

    /// Element with the given canonical index in `0..q`.
    pub fn element(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.0.q {
            return Err(Error::precondition(format!(
                "index {idx} out of range for a field of order {}",
                self.0.q
            )));
        }
        Ok(FieldElement { field: self.clone(), idx })
    }

    /// Element from a coordinate vector over `F_p` (entries are reduced mod `p`;
    /// at most `e` coordinates).
    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.0.e as usize {
            return Err(Error::precondition(format!(
                "coordinate vector of length {} in a degree-{} extension",
                coords.len(),
                self.0.e
            )));
        }
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.0.p + c % self.0.p;
        }
        Ok(FieldElement { field: self.clone(), idx })
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |idx| FieldElement { field: self.clone(), idx })
    }

    // -- index-level arithmetic -------------------------------------------

    pub(crate) fn idx_decode(&self, idx: u64) -> Vec<u64> {
        let mut coords = Vec::with_capacity(self.0.e as usize);
        let mut k = idx;
        for _ in 0..self.0.e {
            coords.push(k % self.0.p);
            k /= self.0.p;
        }
        coords
    }

    pub(crate) fn idx_encode(&self, coords: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.0.p + c;
        }
        idx
    }

    pub(crate) fn idx_add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return (a + b) % p;
        }
        let (ca, cb) = (self.idx_decode(a), self.idx_decode(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
        self.idx_encode(&sum)
    }

    pub(crate) fn idx_neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return (p - a) % p;
        }
        let ca = self.idx_decode(a);
        let neg: Vec<u64> = ca.iter().map(|x| (p - x) % p).collect();
        self.idx_encode(&neg)
    }

    pub(crate) fn idx_sub(&self, a: u64, b: u64) -> u64 {
        self.idx_add(a, self.idx_neg(b))
    }

    pub(crate) fn idx_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return a * b % p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.0.e as usize;
        let (ca, cb) = (self.idx_decode(a), self.idx_decode(b));
        let mut conv = vec![0u64; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % p;
            }
        }
        let mut out = vec![0u64; e];
        out.copy_from_slice(&conv[..e]);
        for k in e..2 * e - 1 {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            for (i, &r) in self.0.reduction[k - e].iter().enumerate() {
                out[i] = (out[i] + c * r) % p;
            }
        }
        self.idx_encode(&out)
    }

    pub(crate) fn idx_pow(&self, a: u64, mut exp: u128) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.idx_mul(acc, base);
            }
            base = self.idx_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn idx_inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::precondition("inversion of zero"));
        }
        Ok(self.idx_pow(a, self.0.q as u128 - 2))
    }

    // -- checked element arithmetic ---------------------------------------

    fn check_same(&self, x: &FieldElement) -> Result<()> {
        if &x.field != self {
            return Err(Error::precondition(
                "field descriptor mismatch between operands",
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        Ok(FieldElement { field: self.clone(), idx: self.idx_add(a.idx, b.idx) })
    }

    pub fn checked_mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        Ok(FieldElement { field: self.clone(), idx: self.idx_mul(a.idx, b.idx) })
    }

    pub fn checked_inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        Ok(FieldElement { field: self.clone(), idx: self.idx_inv(a.idx)? })
    }

    pub fn checked_pow(&self, a: &FieldElement, exp: u128) -> Result<FieldElement> {
        self.check_same(a)?;
        Ok(FieldElement { field: self.clone(), idx: self.idx_pow(a.idx, exp) })
    }

    /// Degree-`r` extension together with the embedding of `self` into it.
    ///
    /// The extension is `F_{p^{e·r}}` with its canonical modulus; the
    /// embedding sends the power-basis generator of `self` to its least-index
    /// root in the extension, which makes the construction deterministic.
    pub fn extend(&self, r: u32, budget: &Budget) -> Result<(Field, Embedding)> {
        if r < 1 {
            return Err(Error::precondition("extension degree must be at least 1"));
        }
        if r == 1 {
            let gen_image = if self.0.e == 1 {
                self.one()
            } else {
                // the generator u itself
                FieldElement { field: self.clone(), idx: self.0.p }
            };
            return Ok((
                self.clone(),
                Embedding { src: self.clone(), dst: self.clone(), gen_image },
            ));
        }
        let big = Field::new(self.0.p, self.0.e * r, budget)?;
        let gen_image = if self.0.e == 1 {
            big.one()
        } else {
            // least-index root of our modulus in the extension
            let mut root = None;
            'search: for idx in 0..big.q() {
                let mut acc = 0u64;
                for &c in self.0.modulus.iter().rev() {
                    acc = big.idx_add(big.idx_mul(acc, idx), c);
                }
                if acc == 0 {
                    root = Some(idx);
                    break 'search;
                }
            }
            let idx = root.ok_or_else(|| {
                Error::consistency("modulus has no root in the extension field")
            })?;
            FieldElement { field: big.clone(), idx }
        };
        let emb = Embedding { src: self.clone(), dst: big.clone(), gen_image };
        // sanity: the map must preserve 1 and the generator relation
        debug_assert!(emb.map(&self.one()).is_one());
        Ok((big, emb))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.e)
        }
    }
}

/// An element of a finite field, stored as its canonical index.
///
/// Elements of distinct fields are never equal; use [`FieldElement::checked_eq`]
/// when the descriptors are not known to agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    idx: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical index in `0..q`: the base-`p` encoding of the coordinates.
    pub fn index(&self) -> u64 {
        self.idx
    }

    /// Coordinate vector of length `e` over `F_p`.
    pub fn coords(&self) -> Vec<u64> {
        self.field.idx_decode(self.idx)
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    pub fn is_one(&self) -> bool {
        self.idx == 1
    }

    /// Equality that refuses to compare across fields instead of coercing.
    pub fn checked_eq(&self, other: &FieldElement) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::precondition(
                "equality between elements of different fields is undefined",
            ));
        }
        Ok(self.idx == other.idx)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field.checked_inv(self)
    }

    pub fn pow(&self, exp: u128) -> FieldElement {
        FieldElement { field: self.field.clone(), idx: self.field.idx_pow(self.idx, exp) }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈{}", self, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.extension_degree() == 1 {
            return write!(f, "{}", self.idx);
        }
        let coords = self.coords();
        let mut first = true;
        for (k, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "u")?;
                }
                _ => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "u^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $idx_op:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    self.field == rhs.field,
                    "field descriptor mismatch between operands"
                );
                FieldElement {
                    field: self.field.clone(),
                    idx: self.field.$idx_op(self.idx, rhs.idx),
                }
            }
        }
    };
}

field_binop!(Add, add, idx_add);
field_binop!(Sub, sub, idx_sub);
field_binop!(Mul, mul, idx_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), idx: self.field.idx_neg(self.idx) }
    }
}

/// An injective ring map `F -> E` between finite fields, determined by the
/// image of the power-basis generator of `F`.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    gen_image: FieldElement,
}

impl Embedding {
    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        assert!(a.field == self.src, "embedding applied to a foreign element");
        if self.src == self.dst {
            return a.clone();
        }
        // Horner over the destination field on the source coordinates.
        let coords = a.coords();
        let mut acc = 0u64;
        for &c in coords.iter().rev() {
            acc = self
                .dst
                .idx_add(self.dst.idx_mul(acc, self.gen_image.idx), c);
        }
        FieldElement { field: self.dst.clone(), idx: acc }
    }

    pub(crate) fn map_idx(&self, idx: u64) -> u64 {
        if self.src == self.dst {
            return idx;
        }
        let coords = self.src.idx_decode(idx);
        let mut acc = 0u64;
        for &c in coords.iter().rev() {
            acc = self
                .dst
                .idx_add(self.dst.idx_mul(acc, self.gen_image.idx), c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn prime_field_construction() {
        let f2 = Field::new(2, 1, &budget()).unwrap();
        assert_eq!(f2.q(), 2);
        assert!(f2.modulus().is_none());
    }

    #[test]
    fn f4_has_unique_modulus() {
        // exhaustive search over degree-2 monics leaves only u^2+u+1
        let f4 = Field::new(2, 2, &budget()).unwrap();
        assert_eq!(f4.modulus(), Some(&[1u64, 1, 1][..]));
    }

    #[test]
    fn non_prime_p_rejected() {
        assert!(matches!(
            Field::new(4, 1, &budget()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // u^2+1 = (u+1)^2 over F_2
        assert!(matches!(
            Field::with_modulus(2, 2, vec![1, 0, 1], &budget()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_extension_degree_rejected() {
        assert!(Field::new(2, 0, &budget()).is_err());
    }

    #[test]
    fn f4_multiplication_table() {
        // u * (u+1) = u^2+u = 1 mod u^2+u+1
        let f4 = Field::new(2, 2, &budget()).unwrap();
        let u = f4.element(2).unwrap();
        let u1 = f4.element(3).unwrap();
        assert!((&u * &u1).is_one());
        // inv(u) = u+1 follows
        assert_eq!(u.inv().unwrap(), u1);
    }

    #[test]
    fn multiplicative_identity() {
        let f9 = Field::new(3, 2, &budget()).unwrap();
        for a in f9.elements() {
            assert_eq!(&a * &f9.one(), a);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        // associativity, distributivity and inverses for q <= 16
        for (p, e) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
            let f = Field::new(p, e, &budget()).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(&(a + b), &(b + a));
                    assert_eq!(&(a * b), &(b * a));
                    for c in &elems {
                        assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
                        assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
                        assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
                    }
                }
                if !a.is_zero() {
                    assert!((&a.inv().unwrap() * a).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_subfield() {
        for (p, e) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2)] {
            let f = Field::new(p, e, &budget()).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!((a + b).pow(p as u128), &a.pow(p as u128) + &b.pow(p as u128));
                }
                let fixed = a.pow(p as u128) == *a;
                let in_prime_subfield = a.index() < p;
                assert_eq!(fixed, in_prime_subfield, "q={} a={}", f.q(), a);
            }
        }
    }

    #[test]
    fn extension_embedding_is_ring_hom() {
        // exhaustive over F for q <= 9
        for (p, e, r) in [(2u64, 1u32, 2u32), (3, 1, 2), (2, 2, 2), (3, 2, 2), (5, 1, 2), (7, 1, 2)] {
            let f = Field::new(p, e, &budget()).unwrap();
            let (_big, emb) = f.extend(r, &budget()).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert!(emb.map(&f.one()).is_one());
            for a in &elems {
                for b in &elems {
                    assert_eq!(emb.map(&(a + b)), &emb.map(a) + &emb.map(b));
                    assert_eq!(emb.map(&(a * b)), &emb.map(a) * &emb.map(b));
                }
            }
            // injectivity on a finite set follows from being a nonzero ring hom;
            // spot-check distinct images anyway
            let images: std::collections::HashSet<u64> =
                elems.iter().map(|a| emb.map(a).index()).collect();
            assert_eq!(images.len(), elems.len());
        }
    }

    #[test]
    fn extend_by_one_is_identity() {
        let f4 = Field::new(2, 2, &budget()).unwrap();
        let (same, emb) = f4.extend(1, &budget()).unwrap();
        assert_eq!(same, f4);
        for a in f4.elements() {
            assert_eq!(emb.map(&a), a);
        }
    }

    #[test]
    fn extend_f3_preserves_arithmetic() {
        let f3 = Field::new(3, 1, &budget()).unwrap();
        let (_f9, emb) = f3.extend(2, &budget()).unwrap();
        let two = f3.element(2).unwrap();
        // 2 * 2 = 1 in F_3 must be preserved through the map
        assert!((&emb.map(&two) * &emb.map(&two)).is_one());
    }

    #[test]
    fn cross_field_operations_error() {
        let f2 = Field::new(2, 1, &budget()).unwrap();
        let f3 = Field::new(3, 1, &budget()).unwrap();
        let a = f2.one();
        let b = f3.one();
        assert!(f2.checked_add(&a, &b).is_err());
        assert!(a.checked_eq(&b).is_err());
    }

    #[test]
    fn inversion_of_zero_errors() {
        let f5 = Field::new(5, 1, &budget()).unwrap();
        assert!(f5.zero().inv().is_err());
    }

    #[test]
    fn field_size_budget_enforced() {
        let tight = Budget { max_field_size: 1 << 10, ..Budget::default() };
        assert!(matches!(Field::new(2, 11, &tight), Err(Error::Budget(_))));
    }

    #[test]
    fn element_display_grammar() {
        let f4 = Field::new(2, 2, &budget()).unwrap();
        let strs: Vec<String> = f4.elements().map(|a| a.to_string()).collect();
        assert_eq!(strs, ["0", "1", "u", "u+1"]);
        let f9 = Field::new(3, 2, &budget()).unwrap();
        assert_eq!(f9.element(5).unwrap().to_string(), "u+2");
        assert_eq!(f9.element(6).unwrap().to_string(), "2*u");
    }
}
