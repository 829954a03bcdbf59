//! The ring `F_q[t]`: arithmetic, degrees and norms, gcds, irreducibility,
//! prime enumeration and prime-number-theorem bookkeeping.
//!
//! Elements are dense little-endian coefficient vectors of canonical field
//! indices, with no trailing zeros; zero is the empty vector. The degree of
//! zero is the distinguished value [`Degree::NegInf`], which compares below
//! every integer, matching the strict inequality in the definition of
//! `F_q[t]_{<k}` (so the zero tuple has height below every bound).

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};

/// Degree of a polynomial; `NegInf` is the degree of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    /// Sum of degrees, with `NegInf` absorbing (used for products).
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Self {
        Degree::Finite(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A univariate polynomial in `F_q[t]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    field: Field,
    /// Little-endian canonical coefficient indices, highest nonzero last.
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn zero(field: &Field) -> RingElement {
        RingElement { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> RingElement {
        RingElement { field: field.clone(), coeffs: vec![1] }
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> RingElement {
        RingElement { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn constant(c: &FieldElement) -> RingElement {
        let mut r = RingElement { field: c.field().clone(), coeffs: vec![c.index()] };
        r.trim();
        r
    }

    /// `c * t^k`.
    pub fn monomial(field: &Field, c: &FieldElement, k: usize) -> RingElement {
        if c.is_zero() {
            return RingElement::zero(field);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.index();
        RingElement { field: field.clone(), coeffs }
    }

    /// Build from canonical coefficient indices, little-endian.
    pub fn from_indices(field: &Field, coeffs: Vec<u64>) -> Result<RingElement> {
        for &c in &coeffs {
            if c >= field.q() {
                return Err(Error::precondition(format!(
                    "coefficient index {c} not in a field of order {}",
                    field.q()
                )));
            }
        }
        let mut r = RingElement { field: field.clone(), coeffs };
        r.trim();
        Ok(r)
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> RingElement {
        let mut r = RingElement {
            field: field.clone(),
            coeffs: coeffs
                .iter()
                .map(|c| {
                    assert!(c.field() == field, "coefficient from a foreign field");
                    c.index()
                })
                .collect(),
        };
        r.trim();
        r
    }

    /// The element with the given enumeration index: base-`q` digits of
    /// `idx` become the coefficients, so index order sorts by degree first.
    pub fn from_enum_index(field: &Field, mut idx: u64) -> RingElement {
        let q = field.q();
        let mut coeffs = Vec::new();
        while idx > 0 {
            coeffs.push(idx % q);
            idx /= q;
        }
        RingElement { field: field.clone(), coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    /// `|α| = q^deg α`, with `|0| = 0`.
    pub fn norm(&self) -> BigUint {
        match self.degree() {
            Degree::NegInf => BigUint::zero(),
            Degree::Finite(d) => BigUint::from(self.field.q()).pow(d as u32),
        }
    }

    /// Degree and norm in one call.
    pub fn norm_and_degree(&self) -> (Degree, BigUint) {
        (self.degree(), self.norm())
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        let idx = self.coeffs.get(k).copied().unwrap_or(0);
        self.field.element(idx).expect("stored coefficient is canonical")
    }

    pub(crate) fn coeff_idx(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs
            .last()
            .map(|&c| self.field.element(c).expect("canonical"))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Enumeration index: the inverse of [`RingElement::from_enum_index`].
    pub fn enum_index(&self) -> u64 {
        let q = self.field.q();
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev() {
            idx = idx * q + c;
        }
        idx
    }

    fn assert_same_field(&self, other: &RingElement) {
        assert!(self.field == other.field, "ring elements over different fields");
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.field.idx_add(self.coeff_idx(k), other.coeff_idx(k)));
        }
        let mut r = RingElement { field: self.field.clone(), coeffs };
        r.trim();
        r
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.field.idx_sub(self.coeff_idx(k), other.coeff_idx(k)));
        }
        let mut r = RingElement { field: self.field.clone(), coeffs };
        r.trim();
        r
    }

    pub fn neg(&self) -> RingElement {
        let coeffs = self.coeffs.iter().map(|&c| self.field.idx_neg(c)).collect();
        RingElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return RingElement::zero(&self.field);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                coeffs[i + j] = self.field.idx_add(coeffs[i + j], self.field.idx_mul(a, b));
            }
        }
        RingElement { field: self.field.clone(), coeffs }
    }

    /// Multiply by a field scalar.
    pub fn scale(&self, c: &FieldElement) -> RingElement {
        assert!(c.field() == &self.field, "scalar from a foreign field");
        if c.is_zero() {
            return RingElement::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| self.field.idx_mul(a, c.index()))
            .collect();
        RingElement { field: self.field.clone(), coeffs }
    }

    /// `t^k * self`.
    pub fn shift_up(&self, k: usize) -> RingElement {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        RingElement { field: self.field.clone(), coeffs }
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &RingElement) -> Result<(RingElement, RingElement)> {
        self.assert_same_field(div);
        if div.is_zero() {
            return Err(Error::precondition("division by zero"));
        }
        let dd = div.coeffs.len() - 1;
        let lead_inv = self.field.idx_inv(*div.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd || (dd == 0 && !rem.is_empty()) {
            let shift = rem.len() - 1 - dd;
            let factor = self.field.idx_mul(*rem.last().unwrap(), lead_inv);
            quo[shift] = factor;
            for (k, &c) in div.coeffs.iter().enumerate() {
                let sub = self.field.idx_mul(factor, c);
                rem[shift + k] = self.field.idx_sub(rem[shift + k], sub);
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        let mut q = RingElement { field: self.field.clone(), coeffs: quo };
        q.trim();
        let mut r = RingElement { field: self.field.clone(), coeffs: rem };
        r.trim();
        Ok((q, r))
    }

    pub fn rem(&self, div: &RingElement) -> Result<RingElement> {
        Ok(self.divrem(div)?.1)
    }

    /// Does `self` divide `other` exactly?
    pub fn divides(&self, other: &RingElement) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn make_monic(&self) -> RingElement {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &RingElement) -> Result<RingElement> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::precondition("gcd(0, 0) is undefined"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Evaluate at a point of the same field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field, "evaluation point from a foreign field");
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.idx_add(f.idx_mul(acc, x.index()), c);
        }
        f.element(acc).expect("canonical")
    }

    /// Evaluate with the coefficients pushed through an embedding first
    /// (used to evaluate at points of an extension or residue field).
    pub fn eval_embedded(&self, emb: &Embedding, x: &FieldElement) -> FieldElement {
        assert!(emb.src() == &self.field, "embedding source mismatch");
        let dst = emb.dst().clone();
        assert!(x.field() == &dst, "evaluation point not in the target field");
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = dst.idx_add(dst.idx_mul(acc, x.index()), emb.map_idx(c));
        }
        dst.element(acc).expect("canonical")
    }

    /// Deterministic exact irreducibility test; `true` iff monic irreducible.
    ///
    /// Trial division by every monic polynomial of degree up to `deg/2`,
    /// which is exhaustive and exact at desk scale.
    pub fn is_prime(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::precondition("is_prime of zero"));
        }
        if !self.is_monic() {
            return Ok(false);
        }
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let q = self.field.q();
        for k in 1..=d / 2 {
            // monic candidates of degree k, by enumeration index
            let count = q.pow(k as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(k + 1);
                let mut v = idx;
                for _ in 0..k {
                    coeffs.push(v % q);
                    v /= q;
                }
                coeffs.push(1);
                let g = RingElement { field: self.field.clone(), coeffs };
                if g.divides(self) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// p-adic valuation: the exact number of times `p` divides `self`.
    /// `None` means `self` is zero (infinite valuation).
    pub fn valuation(&self, p: &PrimeElement) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0u32;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p.as_ring()).expect("prime is nonzero");
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            cur = q;
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    /// Canonical text form, e.g. `t^3+t+1` or `(u+1)*t^2+u` over `F_4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = self.field.element(c).expect("canonical");
            let cs = coeff.to_string();
            if k == 0 {
                if cs.contains('+') {
                    write!(f, "({cs})")?;
                } else {
                    write!(f, "{cs}")?;
                }
                continue;
            }
            if !coeff.is_one() {
                if cs.contains('+') {
                    write!(f, "({cs})*")?;
                } else {
                    write!(f, "{cs}*")?;
                }
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

/// A monic irreducible polynomial in `F_q[t]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeElement(RingElement);

impl PrimeElement {
    /// Validates monicity and irreducibility.
    pub fn new(r: RingElement) -> Result<PrimeElement> {
        if !r.is_prime()? {
            return Err(Error::precondition(format!("{r} is not monic irreducible")));
        }
        Ok(PrimeElement(r))
    }

    pub(crate) fn new_unchecked(r: RingElement) -> PrimeElement {
        debug_assert!(r.is_prime().unwrap_or(false));
        PrimeElement(r)
    }

    pub fn as_ring(&self) -> &RingElement {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.degree().finite().expect("primes are nonzero")
    }
}

impl fmt::Display for PrimeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Iterator over `F_q[t]_{<k}`: exactly the `q^k` elements of degree `< k`,
/// in enumeration-index order (degree first, then coefficients).
pub fn elements_below(
    field: &Field,
    k: u32,
    budget: &Budget,
) -> Result<impl Iterator<Item = RingElement>> {
    let total = Budget::checked_pow(field.q(), k, budget.max_enum_tuples, "elements_below")?;
    let field = field.clone();
    Ok((0..total).map(move |idx| RingElement::from_enum_index(&field, idx)))
}

/// Incrementally built table of all primes by degree.
///
/// Enumeration is exhaustive trial division against the already-known primes
/// of smaller degree; results are memoized per table.
pub struct PrimeTable {
    field: Field,
    by_degree: Vec<Vec<PrimeElement>>,
}

impl PrimeTable {
    pub fn new(field: &Field) -> PrimeTable {
        PrimeTable { field: field.clone(), by_degree: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// All monic irreducibles of degree exactly `n`, lexicographic
    /// (enumeration-index) order.
    pub fn primes_of_degree(&mut self, n: u32, budget: &Budget) -> Result<&[PrimeElement]> {
        if n < 1 {
            return Err(Error::precondition("prime degree must be at least 1"));
        }
        if n > budget.max_prime_degree {
            return Err(Error::budget(format!(
                "prime degree {n} exceeds the configured cap {}",
                budget.max_prime_degree
            )));
        }
        while (self.by_degree.len() as u32) < n {
            let d = self.by_degree.len() as u32 + 1;
            let q = self.field.q();
            let count = Budget::checked_pow(q, d, budget.max_enum_tuples, "prime enumeration")?;
            let mut primes = Vec::new();
            'next: for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d as usize + 1);
                let mut v = idx;
                for _ in 0..d {
                    coeffs.push(v % q);
                    v /= q;
                }
                coeffs.push(1);
                let cand = RingElement::from_indices(&self.field, coeffs)?;
                for smaller in &self.by_degree {
                    for p in smaller {
                        if 2 * p.degree() > d as i64 {
                            break;
                        }
                        if p.as_ring().divides(&cand) {
                            continue 'next;
                        }
                    }
                }
                primes.push(PrimeElement::new_unchecked(cand));
            }
            self.by_degree.push(primes);
        }
        Ok(&self.by_degree[n as usize - 1])
    }
}

/// All monic irreducibles of degree `n`, lexicographic order.
pub fn primes_of_degree(field: &Field, n: u32, budget: &Budget) -> Result<Vec<PrimeElement>> {
    let mut table = PrimeTable::new(field);
    Ok(table.primes_of_degree(n, budget)?.to_vec())
}

/// Möbius function on positive integers.
fn mobius(n: u32) -> i64 {
    let mut n = n as u64;
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// The Möbius-sum count of monic irreducibles of degree `n`:
/// `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn mobius_prime_count(q: u64, n: u32) -> u64 {
    let mut sum: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            sum += mobius(d) as i128 * (q as i128).pow(n / d);
        }
    }
    debug_assert!(sum > 0 && sum % n as i128 == 0);
    (sum / n as i128) as u64
}

/// Exact prime count with its PNT main term.
#[derive(Debug, Clone)]
pub struct PrimeCount {
    /// Count by exhaustive enumeration, cross-checked against the Möbius sum.
    pub exact: u64,
    /// `q^n / n` as an exact rational.
    pub main_term: BigRational,
}

/// Count the primes of degree `n` two independent ways (enumeration and the
/// Möbius-sum oracle); a disagreement is a consistency failure.
pub fn prime_count(field: &Field, n: u32, budget: &Budget) -> Result<PrimeCount> {
    let enumerated = primes_of_degree(field, n, budget)?.len() as u64;
    let oracle = mobius_prime_count(field.q(), n);
    if enumerated != oracle {
        return Err(Error::consistency(format!(
            "prime count mismatch at degree {n}: enumeration {enumerated}, Möbius sum {oracle}"
        )));
    }
    let main_term = BigRational::new(
        BigUint::from(field.q()).pow(n).into(),
        BigUint::from(u64::from(n)).into(),
    );
    Ok(PrimeCount { exact: enumerated, main_term })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1, &Budget::default()).unwrap()
    }

    fn f3() -> Field {
        Field::new(3, 1, &Budget::default()).unwrap()
    }

    /// Parse little helper: coefficients low to high.
    fn poly(field: &Field, coeffs: &[u64]) -> RingElement {
        RingElement::from_indices(field, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn norm_and_degree_examples() {
        let f = f2();
        let a = poly(&f, &[1, 0, 1]); // t^2+1
        assert_eq!(a.degree(), Degree::Finite(2));
        assert_eq!(a.norm(), BigUint::from(4u32));
        let one = RingElement::one(&f);
        assert_eq!(one.degree(), Degree::Finite(0));
        assert_eq!(one.norm(), BigUint::from(1u32));
        let zero = RingElement::zero(&f);
        assert_eq!(zero.degree(), Degree::NegInf);
        assert_eq!(zero.norm(), BigUint::from(0u32));
        assert!(Degree::NegInf < Degree::Finite(-100));
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let a = poly(&f, &[0, 1, 1]); // t^2+t
        let t = RingElement::t(&f);
        assert_eq!(a.gcd(&t).unwrap(), t);
        // gcd(α, 1) = 1
        assert!(a.gcd(&RingElement::one(&f)).unwrap().is_one());
        // gcd(α, 0) = monic-scaled α
        let f3 = f3();
        let b = poly(&f3, &[0, 2]); // 2t
        assert_eq!(b.gcd(&RingElement::zero(&f3)).unwrap(), RingElement::t(&f3));
        // gcd(0, 0) errors
        assert!(RingElement::zero(&f).gcd(&RingElement::zero(&f)).is_err());
    }

    #[test]
    fn is_prime_examples() {
        let f = f2();
        assert!(poly(&f, &[1, 1, 1]).is_prime().unwrap()); // t^2+t+1
        assert!(!poly(&f, &[1, 0, 1]).is_prime().unwrap()); // t^2+1 = (t+1)^2
        assert!(RingElement::t(&f).is_prime().unwrap());
        assert!(RingElement::zero(&f).is_prime().is_err());
        // non-monic irreducible is not a prime element
        let g3 = f3();
        let nonmonic = poly(&g3, &[1, 2]); // 2t+1
        assert!(!nonmonic.is_prime().unwrap());
    }

    #[test]
    fn primes_of_degree_examples() {
        let f = f2();
        let b = Budget::default();
        let to_strings = |ps: Vec<PrimeElement>| {
            ps.into_iter().map(|p| p.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(to_strings(primes_of_degree(&f, 1, &b).unwrap()), ["t", "t+1"]);
        assert_eq!(to_strings(primes_of_degree(&f, 2, &b).unwrap()), ["t^2+t+1"]);
        assert_eq!(
            to_strings(primes_of_degree(&f, 3, &b).unwrap()),
            ["t^3+t+1", "t^3+t^2+1"]
        );
    }

    #[test]
    fn prime_count_examples() {
        let b = Budget::default();
        let c = prime_count(&f2(), 2, &b).unwrap();
        assert_eq!(c.exact, 1);
        assert_eq!(c.main_term, BigRational::new(4.into(), 2.into()));
        let c = prime_count(&f3(), 2, &b).unwrap();
        assert_eq!(c.exact, 3);
        assert_eq!(c.main_term, BigRational::new(9.into(), 2.into()));
        let c = prime_count(&f2(), 1, &b).unwrap();
        assert_eq!(c.exact, 2);
        assert_eq!(c.main_term, BigRational::new(2.into(), 1.into()));
    }

    #[test]
    fn elements_below_examples() {
        let f = f2();
        let b = Budget::default();
        let set: Vec<String> = elements_below(&f, 1, &b).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(set, ["0", "1"]);
        let set: Vec<String> = elements_below(&f, 2, &b).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(set, ["0", "1", "t", "t+1"]);
        // k = 0 yields exactly {0}: deg 0 = -inf < 0
        let set: Vec<RingElement> = elements_below(&f, 0, &b).unwrap().collect();
        assert_eq!(set.len(), 1);
        assert!(set[0].is_zero());
    }

    #[test]
    fn divrem_roundtrip() {
        let f = f3();
        let a = poly(&f, &[2, 0, 1, 1]); // t^3+t^2+2
        let d = poly(&f, &[1, 2]); // 2t+1
        let (q, r) = a.divrem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn norm_multiplicativity_and_ultrametric() {
        let f = f3();
        let b = Budget::default();
        let elems: Vec<RingElement> = elements_below(&f, 3, &b).unwrap().collect();
        for a in elems.iter().step_by(3) {
            for c in elems.iter().step_by(4) {
                assert_eq!(a.mul(c).norm(), a.norm() * c.norm());
                let s = a.add(c);
                assert!(s.degree() <= a.degree().max(c.degree()));
                if a.degree() != c.degree() {
                    assert_eq!(s.degree(), a.degree().max(c.degree()));
                }
            }
        }
    }

    #[test]
    fn valuation_counts_divisions() {
        let f = f2();
        let t = PrimeElement::new(RingElement::t(&f)).unwrap();
        let a = poly(&f, &[0, 0, 1, 1]); // t^2(t+1)
        assert_eq!(a.valuation(&t), Some(2));
        assert_eq!(RingElement::one(&f).valuation(&t), Some(0));
        assert_eq!(RingElement::zero(&f).valuation(&t), None);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn display_with_extension_coefficients() {
        let f4 = Field::new(2, 2, &Budget::default()).unwrap();
        let u = f4.element(2).unwrap();
        let u1 = f4.element(3).unwrap();
        let p = RingElement::from_elements(&f4, &[u, u1]); // (u+1)t + u
        assert_eq!(p.to_string(), "(u+1)*t+u");
    }
}
