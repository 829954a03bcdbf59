//! Multivariate polynomials with `F_q[t]` coefficients ([`MultiPoly`]) and,
//! after reduction modulo a prime, with finite-field coefficients
//! ([`ResiduePoly`]).
//!
//! The monomial order is graded lexicographic with `x0 > x1 > ...`; it is the
//! single global tie-break used everywhere (printing, leading terms,
//! division). Irreducibility over `F_q(t)` and absolute irreducibility over
//! finite fields are decided by exhaustive, budget-guarded factor searches;
//! overruns are hard errors, never probabilistic fallbacks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::ring::{PrimeElement, RingElement};

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// An exponent vector. The derived ordering below is graded lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise quotient; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials of total degree exactly `d` in `nvars` variables,
    /// in descending graded-lex order (leading monomial first).
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = rem;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=rem).rev() {
                cur[pos] = e;
                rec(out, cur, pos + 1, rem - e);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        let mut cur = vec![0u32; nvars];
        rec(&mut out, &mut cur, 0, d);
        out
    }

    /// All monomials of total degree at most `d`, ascending by degree and
    /// descending graded-lex within each degree.
    pub fn all_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::all_of_degree(nvars, k)).collect()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Coefficient abstraction
// ---------------------------------------------------------------------------

/// Coefficient ring of a multivariate polynomial: `F_q[t]` or a finite field.
/// The context [`Field`] is the base field in the first case and the
/// coefficient field itself in the second.
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn zero_in(ctx: &Field) -> Self;
    fn one_in(ctx: &Field) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for RingElement {
    fn zero_in(ctx: &Field) -> Self {
        RingElement::zero(ctx)
    }
    fn one_in(ctx: &Field) -> Self {
        RingElement::one(ctx)
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RingElement::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        RingElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RingElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RingElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        RingElement::neg(self)
    }
}

impl Coeff for FieldElement {
    fn zero_in(ctx: &Field) -> Self {
        ctx.zero()
    }
    fn one_in(ctx: &Field) -> Self {
        ctx.one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

// ---------------------------------------------------------------------------
// The polynomial type
// ---------------------------------------------------------------------------

/// A multivariate polynomial over the coefficient ring `C`.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<C: Coeff> {
    nvars: usize,
    ctx: Field,
    terms: BTreeMap<Monomial, C>,
}

/// Multivariate polynomial with `F_q[t]` coefficients.
pub type MultiPoly = MPoly<RingElement>;
/// Multivariate polynomial with finite-field coefficients (a reduction mod p).
pub type ResiduePoly = MPoly<FieldElement>;

impl<C: Coeff> MPoly<C> {
    pub fn zero(ctx: &Field, nvars: usize) -> Self {
        MPoly { nvars, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Field, nvars: usize, c: C) -> Self {
        let mut p = Self::zero(ctx, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// A single variable `x_i`.
    pub fn var(ctx: &Field, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(ctx, nvars);
        p.terms.insert(Monomial::var(nvars, i), C::one_in(ctx));
        p
    }

    pub fn from_terms(
        ctx: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ctx, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::precondition(format!(
                    "exponent vector of length {} in {} variables",
                    exps.len(),
                    nvars
                )));
            }
            p.insert_add(Monomial::new(exps), c);
        }
        Ok(p)
    }

    fn insert_add(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The coefficient context: the base field for `F_q[t]` coefficients,
    /// the coefficient field itself for residue polynomials.
    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(self.nvars == other.nvars, "variable count mismatch");
        assert!(self.ctx == other.ctx, "coefficient context mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m, a) in &self.terms {
            out.insert_add(m.clone(), a.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.nvars, C::one_in(&self.ctx));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a point with entries in the coefficient ring.
    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::precondition(format!(
                "evaluation point of dimension {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = C::zero_in(&self.ctx);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitute each variable by a polynomial (in any common variable count).
    pub fn compose(&self, images: &[MPoly<C>]) -> Result<MPoly<C>> {
        if images.len() != self.nvars {
            return Err(Error::precondition("one image per variable is required"));
        }
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        for img in images {
            if img.nvars != out_vars || img.ctx != self.ctx {
                return Err(Error::precondition("substitution images are inconsistent"));
            }
        }
        // lazily built power tables per variable
        let one = MPoly::constant(&self.ctx, out_vars, C::one_in(&self.ctx));
        let mut powers: Vec<Vec<MPoly<C>>> = images.iter().map(|_| vec![one.clone()]).collect();
        let mut acc = MPoly::zero(&self.ctx, out_vars);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(&self.ctx, out_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Map the coefficients into another ring, e.g. through a field embedding.
    pub fn map_coeffs<D: Coeff>(&self, new_ctx: &Field, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(new_ctx, self.nvars);
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), f(c));
        }
        out
    }

    /// Sum of the total-degree-`i` monomials of `self`.
    pub fn graded_part(&self, i: u32) -> Result<MPoly<C>> {
        let deg = self
            .total_degree()
            .ok_or_else(|| Error::precondition("graded part of the zero polynomial"))?;
        if i > deg {
            return Err(Error::precondition(format!(
                "graded part {i} out of range for degree {deg}"
            )));
        }
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m, c) in &self.terms {
            if m.total_degree() == i {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Homogenize with a new variable inserted at index 0.
    pub fn homogenize(&self) -> MPoly<C> {
        let d = self.total_degree().unwrap_or(0);
        let mut out = MPoly::zero(&self.ctx, self.nvars + 1);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.push(d - m.total_degree());
            exps.extend_from_slice(m.exponents());
            out.terms.insert(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Substitute `x_var := 1` and drop the variable; requires homogeneous input.
    pub fn dehomogenize(&self, var: usize) -> Result<MPoly<C>> {
        if !self.is_homogeneous() {
            return Err(Error::precondition(
                "dehomogenize of a non-homogeneous polynomial",
            ));
        }
        if var >= self.nvars {
            return Err(Error::precondition("variable index out of range"));
        }
        let mut out = MPoly::zero(&self.ctx, self.nvars - 1);
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            exps.remove(var);
            out.insert_add(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Divisibility over the coefficient *fraction* field, by pseudo-division:
    /// each step scales the remainder by the divisor's leading coefficient, so
    /// no coefficient division is ever needed. For a single divisor this is an
    /// exact test: the reduction reaches zero iff `div` divides `self`.
    pub fn is_divisible_by(&self, div: &Self) -> Result<bool> {
        self.assert_compatible(div);
        let (dm, dc) = match div.leading() {
            None => return Err(Error::precondition("division by the zero polynomial")),
            Some(x) => x,
        };
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        loop {
            let (rm, rc) = match r.leading() {
                None => return Ok(true),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            if !dm.divides(&rm) {
                return Ok(false);
            }
            // r := dc*r - rc * x^(rm-dm) * div, cancelling the leading term
            let shift = rm.div(&dm);
            let mut subtract = MPoly::zero(&self.ctx, self.nvars);
            for (m, c) in &div.terms {
                subtract.insert_add(m.mul(&shift), c.mul(&rc));
            }
            r = r.mul_coeff(&dc).sub(&subtract);
            debug_assert!(r.leading().map(|(m, _)| m < &rm).unwrap_or(true));
        }
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = m.total_degree() == 0;
            if c.is_one() && !is_const {
                write!(f, "{m}")?;
                continue;
            }
            let cs = c.to_string();
            if cs.contains('+') {
                write!(f, "({cs})")?;
            } else {
                write!(f, "{cs}")?;
            }
            if !is_const {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Operations specific to F_q[t] coefficients
// ---------------------------------------------------------------------------

impl MultiPoly {
    /// `||f||`: the maximum norm of the coefficients.
    pub fn max_norm(&self) -> Result<BigUint> {
        let d = self.max_coeff_degree()?;
        Ok(BigUint::from(self.ctx.q()).pow(d as u32))
    }

    /// `log_q ||f||`: the maximum coefficient degree.
    pub fn max_coeff_degree(&self) -> Result<i64> {
        self.terms
            .values()
            .filter_map(|c| c.degree().finite())
            .max()
            .ok_or_else(|| Error::precondition("norm of the zero polynomial"))
    }

    /// Monic content together with the primitive part.
    pub fn content_primitive(&self) -> Result<(RingElement, MultiPoly)> {
        let mut coeffs = self.terms.values();
        let first = coeffs
            .next()
            .ok_or_else(|| Error::precondition("content of the zero polynomial"))?;
        let mut content = first.make_monic();
        for c in coeffs {
            if content.is_one() {
                break;
            }
            content = content.gcd(c)?;
        }
        let mut prim = MultiPoly::zero(&self.ctx, self.nvars);
        for (m, c) in &self.terms {
            let (q, r) = c.divrem(&content)?;
            debug_assert!(r.is_zero());
            prim.terms.insert(m.clone(), q);
        }
        Ok((content, prim))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content_primitive()?.0.is_one())
    }

    /// The coefficient of `x_0^d` (after normalization this is the paper's
    /// distinguished large coefficient).
    pub fn leading_x0_coeff(&self) -> RingElement {
        let d = self.total_degree().unwrap_or(0);
        let mut exps = vec![0u32; self.nvars];
        if self.nvars > 0 {
            exps[0] = d;
        }
        self.coeff_of(&Monomial::new(exps))
    }

    /// Homogeneous coordinate shift `x_i -> x_i + alpha_i * x_0` for `i >= 1`.
    pub fn shift_homogeneous(&self, alpha: &[RingElement]) -> Result<MultiPoly> {
        if !self.is_homogeneous() {
            return Err(Error::precondition(
                "homogeneous shift of a non-homogeneous polynomial",
            ));
        }
        if alpha.len() + 1 != self.nvars {
            return Err(Error::precondition("shift vector has the wrong dimension"));
        }
        let mut images = Vec::with_capacity(self.nvars);
        images.push(MultiPoly::var(&self.ctx, self.nvars, 0));
        for (i, a) in alpha.iter().enumerate() {
            let xi = MultiPoly::var(&self.ctx, self.nvars, i + 1);
            let x0a = MultiPoly::var(&self.ctx, self.nvars, 0).mul_coeff(a);
            images.push(xi.add(&x0a));
        }
        self.compose(&images)
    }

    /// Affine translation `x_i -> x_i + alpha_i`.
    pub fn shift_affine(&self, alpha: &[RingElement]) -> Result<MultiPoly> {
        if alpha.len() != self.nvars {
            return Err(Error::precondition("shift vector has the wrong dimension"));
        }
        let mut images = Vec::with_capacity(self.nvars);
        for (i, a) in alpha.iter().enumerate() {
            let xi = MultiPoly::var(&self.ctx, self.nvars, i);
            let ca = MultiPoly::constant(&self.ctx, self.nvars, a.clone());
            images.push(xi.add(&ca));
        }
        self.compose(&images)
    }

    /// The twisted form `F_H(x_0, ..., x_n) = Σ_i H^i f_i x_0^{d-i}` for a
    /// monic `H`; `F_1` is the plain homogenization and the exact identity
    /// `F_H(H, x) = H^d f(x)` holds.
    pub fn twist_f_h(&self, h: &RingElement) -> Result<MultiPoly> {
        if self.is_zero() {
            return Err(Error::precondition("twist of the zero polynomial"));
        }
        if !h.is_monic() {
            return Err(Error::precondition("twist requires a monic H"));
        }
        let d = self.total_degree().unwrap();
        let mut hp = Vec::with_capacity(d as usize + 1);
        hp.push(RingElement::one(&self.ctx));
        for _ in 0..d {
            hp.push(hp.last().unwrap().mul(h));
        }
        let mut out = MultiPoly::zero(&self.ctx, self.nvars + 1);
        for (m, c) in &self.terms {
            let i = m.total_degree();
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.push(d - i);
            exps.extend_from_slice(m.exponents());
            out.insert_add(Monomial::new(exps), c.mul(&hp[i as usize]));
        }
        Ok(out)
    }

    /// Coefficient-wise reduction modulo a prime of `F_q[t]`.
    pub fn reduce_mod(&self, map: &ResidueMap) -> ResiduePoly {
        self.map_coeffs(map.residue_field(), |c| map.reduce(c))
    }
}

/// Reduction map `F_q[t] -> F_q[t]/(p) ≅ F_{q^{deg p}}`.
///
/// The residue field is the canonical degree-`deg p` extension of the base
/// field; `t` maps to the least-index root of `p` in it, so the construction
/// is deterministic.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    prime: PrimeElement,
    embed: Embedding,
    t_image: FieldElement,
}

impl ResidueMap {
    pub fn new(prime: &PrimeElement, budget: &Budget) -> Result<ResidueMap> {
        let base = prime.as_ring().field().clone();
        let r = prime.degree() as u32;
        let (ext, embed) = base.extend(r, budget)?;
        let mut t_image = None;
        for idx in 0..ext.q() {
            let x = ext.element(idx)?;
            if prime.as_ring().eval_embedded(&embed, &x).is_zero() {
                t_image = Some(x);
                break;
            }
        }
        let t_image = t_image
            .ok_or_else(|| Error::consistency("prime has no root in its residue field"))?;
        Ok(ResidueMap { prime: prime.clone(), embed, t_image })
    }

    pub fn prime(&self) -> &PrimeElement {
        &self.prime
    }

    pub fn residue_field(&self) -> &Field {
        self.embed.dst()
    }

    /// Image of a ring element in the residue field.
    pub fn reduce(&self, a: &RingElement) -> FieldElement {
        a.eval_embedded(&self.embed, &self.t_image)
    }
}

/// Convenience wrapper constructing the residue map on the fly.
pub fn reduce_mod_prime(f: &MultiPoly, p: &PrimeElement, budget: &Budget) -> Result<ResiduePoly> {
    Ok(f.reduce_mod(&ResidueMap::new(p, budget)?))
}

// ---------------------------------------------------------------------------
// Factor searches
// ---------------------------------------------------------------------------

/// A complete factorization over a finite field: `unit · Π factor^mult`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(ResiduePoly, u32)>,
}

impl Factorization {
    /// Recompose the product exactly.
    pub fn product(&self) -> ResiduePoly {
        let ctx = self.unit.field().clone();
        let nvars = self.factors.first().map(|(f, _)| f.nvars()).unwrap_or(0);
        let mut acc = ResiduePoly::constant(&ctx, nvars, self.unit.clone());
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

impl ResiduePoly {
    /// Evaluate at the point with `x_{i1} = v1`, `x_{i2} = v2` and all other
    /// coordinates zero, on canonical indices.
    fn eval_two_coords(&self, i1: usize, v1: u64, i2: usize, v2: u64) -> u64 {
        let f = &self.ctx;
        let mut acc = 0u64;
        'term: for (m, c) in &self.terms {
            let mut val = c.index();
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if k == i1 {
                    val = f.idx_mul(val, f.idx_pow(v1, e as u128));
                } else if k == i2 {
                    val = f.idx_mul(val, f.idx_pow(v2, e as u128));
                } else {
                    continue 'term;
                }
            }
            acc = f.idx_add(acc, val);
        }
        acc
    }

    /// Exact division over the coefficient field; `None` when not divisible.
    pub fn divide_exact(&self, div: &ResiduePoly) -> Option<ResiduePoly> {
        let (dm, dc) = div.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let dc_inv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = ResiduePoly::zero(&self.ctx, self.nvars);
        loop {
            let (rm, rc) = match r.leading() {
                None => return Some(q),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            if !dm.divides(&rm) {
                return None;
            }
            let shift = rm.div(&dm);
            let factor = &rc * &dc_inv;
            q.insert_add(shift.clone(), factor.clone());
            let mut subtract = ResiduePoly::zero(&self.ctx, self.nvars);
            for (m, c) in &div.terms {
                subtract.insert_add(m.mul(&shift), c * &factor);
            }
            r = r.sub(&subtract);
        }
    }

    /// Smallest nontrivial divisor found by exhaustive search, or `None`.
    ///
    /// Candidates are enumerated by total degree, then by leading monomial,
    /// then by coefficient index; exactly one representative per scalar
    /// class is visited (the one with leading coefficient 1). For
    /// homogeneous inputs only homogeneous candidates are tried.
    pub fn find_factor(&self, budget: &Budget) -> Result<Option<ResiduePoly>> {
        let d = match self.total_degree() {
            None => return Err(Error::precondition("factor search on the zero polynomial")),
            Some(d) => d,
        };
        let q = self.ctx.q();
        let homogeneous = self.is_homogeneous();
        for k in 1..=d / 2 {
            // monomials in descending graded-lex order, degree-k block first
            let monos: Vec<Monomial> = if homogeneous {
                Monomial::all_of_degree(self.nvars, k)
            } else {
                (0..=k).rev().flat_map(|j| Monomial::all_of_degree(self.nvars, j)).collect()
            };
            let m = monos.len();
            let lead_count = Monomial::all_of_degree(self.nvars, k).len();
            // budget: sum over leading positions of q^(free coefficients)
            let mut space_total: u128 = 0;
            for lead in 0..lead_count {
                space_total += (q as u128).pow((m - 1 - lead) as u32);
            }
            if space_total > budget.max_candidate_polys as u128 {
                return Err(Error::budget(format!(
                    "factor search at degree {k}: {space_total} candidates exceed the cap {}",
                    budget.max_candidate_polys
                )));
            }
            if k == 1 && homogeneous {
                // A linear factor x_lead + Σ c_j x_j puts the point
                // (x_j = 1, x_lead = -c_j, rest 0) on V(self), so each c_j
                // lies in a root set computable with Q evaluations. Only the
                // cartesian product of those sets needs exact division.
                for lead in 0..lead_count {
                    let mut root_sets: Vec<Vec<u64>> = Vec::with_capacity(m - 1 - lead);
                    for j in lead + 1..m {
                        let mut roots = Vec::new();
                        for c in 0..q {
                            if self.eval_two_coords(lead, self.ctx.idx_neg(c), j, 1) == 0 {
                                roots.push(c);
                            }
                        }
                        root_sets.push(roots);
                    }
                    if root_sets.iter().any(|r| r.is_empty()) {
                        continue;
                    }
                    let mut odometer = vec![0usize; root_sets.len()];
                    loop {
                        let mut cand = ResiduePoly::zero(&self.ctx, self.nvars);
                        cand.terms.insert(monos[lead].clone(), self.ctx.one());
                        for (pos, &digit) in odometer.iter().enumerate() {
                            let c = root_sets[pos][digit];
                            if c != 0 {
                                cand.terms
                                    .insert(monos[lead + 1 + pos].clone(), self.ctx.element(c)?);
                            }
                        }
                        if self.divide_exact(&cand).is_some() {
                            return Ok(Some(cand));
                        }
                        // advance the odometer
                        let mut pos = 0;
                        loop {
                            if pos >= odometer.len() {
                                break;
                            }
                            odometer[pos] += 1;
                            if odometer[pos] < root_sets[pos].len() {
                                break;
                            }
                            odometer[pos] = 0;
                            pos += 1;
                        }
                        if pos >= odometer.len() {
                            break;
                        }
                    }
                }
                continue;
            }
            for lead in 0..lead_count {
                let free = m - 1 - lead;
                let space = (q as u64).pow(free as u32);
                for idx in 0..space {
                    let mut cand = ResiduePoly::zero(&self.ctx, self.nvars);
                    cand.terms.insert(monos[lead].clone(), self.ctx.one());
                    let mut v = idx;
                    for mono in monos.iter().skip(lead + 1) {
                        let c = v % q;
                        v /= q;
                        if c != 0 {
                            cand.terms.insert(mono.clone(), self.ctx.element(c)?);
                        }
                    }
                    if self.divide_exact(&cand).is_some() {
                        return Ok(Some(cand));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Complete factorization by exhaustive divisor search. Divisors are
    /// found in increasing degree, so each one is irreducible when found.
    pub fn factor_bruteforce(&self, budget: &Budget) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::precondition("factorization of the zero polynomial"));
        }
        let mut rest = self.clone();
        let mut factors: Vec<(ResiduePoly, u32)> = Vec::new();
        while rest.total_degree().unwrap_or(0) >= 1 {
            match rest.find_factor(budget)? {
                Some(f) => {
                    rest = rest.divide_exact(&f).expect("found divisor divides");
                    match factors.iter_mut().find(|(g, _)| g == &f) {
                        Some((_, m)) => *m += 1,
                        None => factors.push((f, 1)),
                    }
                }
                None => {
                    // rest is irreducible; normalize it to leading coeff 1
                    let lc = rest.leading().unwrap().1.clone();
                    let monic = rest.mul_coeff(&lc.inv().expect("nonzero"));
                    rest = ResiduePoly::constant(&self.ctx, self.nvars, lc);
                    match factors.iter_mut().find(|(g, _)| g == &monic) {
                        Some((_, m)) => *m += 1,
                        None => factors.push((monic, 1)),
                    }
                }
            }
        }
        let unit = rest
            .leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ctx.one());
        Ok(Factorization { unit, factors })
    }

    /// Lift the coefficients through a field embedding.
    pub fn lift(&self, emb: &Embedding) -> ResiduePoly {
        self.map_coeffs(emb.dst(), |c| emb.map(c))
    }

    /// Absolute irreducibility over the algebraic closure, decided by
    /// irreducibility over the base field together with irreducibility over
    /// `F_{Q^r}` for every `r` dividing the total degree (the conjugate
    /// factors of an irreducible would be defined over such an extension).
    /// Repeated factors are classified as not absolutely irreducible.
    pub fn is_absolutely_irreducible(&self, budget: &Budget) -> Result<bool> {
        let d = match self.total_degree() {
            None => return Err(Error::precondition("absolute irreducibility of zero")),
            Some(d) => d,
        };
        if d == 0 {
            return Ok(false);
        }
        if self.find_factor(budget)?.is_some() {
            return Ok(false);
        }
        for r in 2..=d {
            if d % r != 0 {
                continue;
            }
            let (_, emb) = self.ctx.extend(r, budget)?;
            if self.lift(&emb).find_factor(budget)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl MultiPoly {
    /// Exhaustive search for a homogeneous factor over `F_q[t]`, using the
    /// Gauss-norm bound: any factor of a primitive `f` has coefficient
    /// degrees at most `log_q ||f||`. Returns the first divisor found, or
    /// `None` when `f` is irreducible over `F_q(t)`.
    pub fn find_homogeneous_factor(&self, budget: &Budget) -> Result<Option<MultiPoly>> {
        if !self.is_homogeneous() {
            return Err(Error::precondition(
                "factor search requires a homogeneous polynomial",
            ));
        }
        let d = match self.total_degree() {
            None => return Err(Error::precondition("factor search on the zero polynomial")),
            Some(d) => d,
        };
        let coeff_bound = self.max_coeff_degree()? as u32;
        let q = self.ctx.q();
        // free coefficient values range over F_q[t] of degree <= coeff_bound;
        // the leading coefficient over the monic ones only (unit classes)
        let per_coeff = Budget::checked_pow(
            q,
            coeff_bound + 1,
            budget.max_candidate_polys,
            "factor coefficient space",
        )?;
        let mut monic_coeffs = Vec::new();
        for delta in 0..=coeff_bound {
            for idx in 0..q.pow(delta) {
                let mut coeffs: Vec<u64> = Vec::with_capacity(delta as usize + 1);
                let mut v = idx;
                for _ in 0..delta {
                    coeffs.push(v % q);
                    v /= q;
                }
                coeffs.push(1);
                monic_coeffs.push(RingElement::from_indices(&self.ctx, coeffs)?);
            }
        }
        for k in 1..=d / 2 {
            let monos = Monomial::all_of_degree(self.nvars, k);
            let m = monos.len();
            let mut space_total: u128 = 0;
            for lead in 0..m {
                space_total +=
                    monic_coeffs.len() as u128 * (per_coeff as u128).pow((m - 1 - lead) as u32);
            }
            if space_total > budget.max_candidate_polys as u128 {
                return Err(Error::budget(format!(
                    "factor search at degree {k}: {space_total} candidates exceed the cap {}",
                    budget.max_candidate_polys
                )));
            }
            for lead in 0..m {
                let free = m - 1 - lead;
                let space = (per_coeff as u64).pow(free as u32);
                for mc in &monic_coeffs {
                    for idx in 0..space {
                        let mut cand = MultiPoly::zero(&self.ctx, self.nvars);
                        cand.terms.insert(monos[lead].clone(), mc.clone());
                        let mut v = idx;
                        for mono in monos.iter().skip(lead + 1) {
                            let c = RingElement::from_enum_index(&self.ctx, v % per_coeff);
                            v /= per_coeff;
                            if !RingElement::is_zero(&c) {
                                cand.terms.insert(mono.clone(), c);
                            }
                        }
                        if self.is_divisible_by(&cand)? {
                            return Ok(Some(cand));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Irreducibility of the primitive part over `F_q(t)`. Non-homogeneous
    /// input is homogenized first (an affine polynomial is irreducible iff
    /// its minimal homogenization is).
    pub fn is_irreducible(&self, budget: &Budget) -> Result<bool> {
        if self.total_degree().unwrap_or(0) == 0 {
            return Ok(false);
        }
        let (_, prim) = self.content_primitive()?;
        let h = if prim.is_homogeneous() { prim } else { prim.homogenize() };
        Ok(h.find_homogeneous_factor(budget)?.is_none())
    }

    /// The coordinate normalization of the determinant method: exhaustive
    /// search in the box `|alpha_i| <= d` for a shift making the `x_0^d`
    /// coefficient as large as the norm. Existence is guaranteed by the
    /// Vandermonde argument, so an exhausted search is a consistency failure.
    pub fn leading_transform(&self, budget: &Budget) -> Result<(Vec<RingElement>, MultiPoly)> {
        if self.is_zero() {
            return Err(Error::precondition("leading transform of the zero polynomial"));
        }
        if !self.is_homogeneous() {
            return Err(Error::precondition(
                "leading transform requires a homogeneous polynomial",
            ));
        }
        let d = self.total_degree().unwrap();
        let norm_deg = self.max_coeff_degree()?;
        let q = self.ctx.q();
        // |alpha| <= d  <=>  deg alpha <= floor(log_q d)
        let mut kappa = 0u32;
        while d >= 1 && q.checked_pow(kappa + 1).map_or(false, |v| v <= d as u64) {
            kappa += 1;
        }
        let nshift = self.nvars - 1;
        let per_var = Budget::checked_pow(q, kappa + 1, budget.max_enum_tuples, "shift box")?;
        let mut total: u64 = 1;
        for _ in 0..nshift {
            total = total
                .checked_mul(per_var)
                .filter(|&t| t <= budget.max_enum_tuples)
                .ok_or_else(|| {
                    Error::budget("leading-transform search space exceeds the enumeration cap")
                })?;
        }
        for idx in 0..total {
            let mut alpha = Vec::with_capacity(nshift);
            let mut v = idx;
            for _ in 0..nshift {
                alpha.push(RingElement::from_enum_index(&self.ctx, v % per_var));
                v /= per_var;
            }
            let mut point = Vec::with_capacity(self.nvars);
            point.push(RingElement::one(&self.ctx));
            point.extend(alpha.iter().cloned());
            let value = self.evaluate(&point)?;
            if value.degree().finite().map_or(false, |dv| dv >= norm_deg) {
                let shifted = self.shift_homogeneous(&alpha)?;
                debug_assert_eq!(shifted.leading_x0_coeff(), value);
                return Ok((alpha, shifted));
            }
        }
        Err(Error::consistency(
            "leading-transform search exhausted: contradicts the Vandermonde existence lemma",
        ))
    }
}

/// Search for a prime of degree at most `cap` modulo which `f` stays
/// absolutely irreducible. Such a witness certifies that `f` itself is
/// absolutely irreducible over the closure of `F_q(t)` (a nontrivial
/// factorization would reduce modulo every prime). Returns the first witness
/// in degree order.
pub fn certify_absolutely_irreducible(
    f: &MultiPoly,
    cap: u32,
    budget: &Budget,
) -> Result<Option<PrimeElement>> {
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Error::precondition(
            "absolute-irreducibility certification requires a nonzero homogeneous polynomial",
        ));
    }
    let mut table = crate::ring::PrimeTable::new(f.ctx());
    for deg in 1..=cap {
        let primes = table.primes_of_degree(deg, budget)?.to_vec();
        for p in primes {
            let map = ResidueMap::new(&p, budget)?;
            let reduced = f.reduce_mod(&map);
            if reduced.is_zero() {
                continue;
            }
            if reduced.is_absolutely_irreducible(budget)? {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
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

    fn ring(field: &Field, coeffs: &[u64]) -> RingElement {
        RingElement::from_indices(field, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn max_norm_examples() {
        let f = f2();
        // t^2*x1 + 1 has norm 4
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![1, 0], ring(&f, &[0, 0, 1])),
                (vec![0, 0], RingElement::one(&f)),
            ],
        )
        .unwrap();
        assert_eq!(p.max_norm().unwrap(), BigUint::from(4u32));
        // all coefficients in F_q^* -> norm 1
        let units = MultiPoly::from_terms(&f, 2, vec![(vec![1, 1], RingElement::one(&f))]).unwrap();
        assert_eq!(units.max_norm().unwrap(), BigUint::from(1u32));
        // (t+1)x1^2 + t^3 -> 8
        let p = MultiPoly::from_terms(
            &f,
            1,
            vec![(vec![2], ring(&f, &[1, 1])), (vec![0], ring(&f, &[0, 0, 0, 1]))],
        )
        .unwrap();
        assert_eq!(p.max_norm().unwrap(), BigUint::from(8u32));
        assert!(MultiPoly::zero(&f, 1).max_norm().is_err());
    }

    #[test]
    fn content_primitive_examples() {
        let f = f2();
        let t = RingElement::t(&f);
        // t*x1 + t^2 -> (t, x1 + t)
        let p = MultiPoly::from_terms(&f, 1, vec![(vec![1], t.clone()), (vec![0], t.mul(&t))])
            .unwrap();
        let (content, prim) = p.content_primitive().unwrap();
        assert_eq!(content, t);
        assert_eq!(prim.to_string(), "x0 + t");
        assert_eq!(prim.mul_coeff(&content), p);
        // primitive input returns itself
        let (c, pr) = prim.content_primitive().unwrap();
        assert!(c.is_one());
        assert_eq!(pr, prim);
        // (t^2+t)*x1*x2
        let p = MultiPoly::from_terms(&f, 2, vec![(vec![1, 1], ring(&f, &[0, 1, 1]))]).unwrap();
        let (c, pr) = p.content_primitive().unwrap();
        assert_eq!(c.to_string(), "t^2+t");
        assert_eq!(pr.to_string(), "x0*x1");
    }

    #[test]
    fn graded_parts_sum_to_whole() {
        let f = f3();
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![1, 1], RingElement::one(&f)),
                (vec![0, 0], RingElement::one(&f)),
                (vec![2, 0], RingElement::t(&f)),
            ],
        )
        .unwrap();
        let d = p.total_degree().unwrap();
        let mut acc = MultiPoly::zero(&f, 2);
        for i in 0..=d {
            acc = acc.add(&p.graded_part(i).unwrap());
        }
        assert_eq!(acc, p);
        assert_eq!(p.graded_part(2).unwrap().num_terms(), 2);
        assert!(p.graded_part(3).is_err());
    }

    #[test]
    fn homogenize_round_trip() {
        let f = f2();
        // x1^2 + t -> t*x0^2 + x1^2 and back
        let p = MultiPoly::from_terms(
            &f,
            1,
            vec![(vec![2], RingElement::one(&f)), (vec![0], RingElement::t(&f))],
        )
        .unwrap();
        let h = p.homogenize();
        assert!(h.is_homogeneous());
        assert_eq!(h.to_string(), "t*x0^2 + x1^2");
        assert_eq!(h.dehomogenize(0).unwrap(), p);
        // constants
        let c = MultiPoly::constant(&f, 1, RingElement::t(&f));
        assert_eq!(c.homogenize().dehomogenize(0).unwrap(), c);
        // x1*x2 + 1 -> x0^2 + x1*x2
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![1, 1], RingElement::one(&f)),
                (vec![0, 0], RingElement::one(&f)),
            ],
        )
        .unwrap();
        assert_eq!(p.homogenize().to_string(), "x0^2 + x1*x2");
        assert!(p.dehomogenize(0).is_err());
    }

    #[test]
    fn shift_homogeneous_char2_square() {
        let f = f2();
        // f = x1^2 (homogeneous in x0, x1), alpha = (t): (x1 + t x0)^2 = x1^2 + t^2 x0^2
        let p = MultiPoly::from_terms(&f, 2, vec![(vec![0, 2], RingElement::one(&f))]).unwrap();
        let shifted = p.shift_homogeneous(&[RingElement::t(&f)]).unwrap();
        assert_eq!(shifted.to_string(), "t^2*x0^2 + x1^2");
        // shift by 0 is the identity; shift then unshift restores
        let zero_shift = p.shift_homogeneous(&[RingElement::zero(&f)]).unwrap();
        assert_eq!(zero_shift, p);
        let back = shifted.shift_homogeneous(&[RingElement::t(&f).neg()]).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn evaluate_examples() {
        let f = f2();
        // x1*x2 - 1 at (t, t) = t^2 - 1 = t^2+1 over F_2
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![1, 1], RingElement::one(&f)),
                (vec![0, 0], RingElement::one(&f).neg()),
            ],
        )
        .unwrap();
        let t = RingElement::t(&f);
        let v = p.evaluate(&[t.clone(), t.clone()]).unwrap();
        assert_eq!(v.to_string(), "t^2+1");
        // evaluation at the zero vector gives the constant term
        let v = p
            .evaluate(&[RingElement::zero(&f), RingElement::zero(&f)])
            .unwrap();
        assert_eq!(v, RingElement::one(&f));
        assert!(p.evaluate(&[t]).is_err());
    }

    #[test]
    fn homogeneity_under_scaling() {
        let f = f3();
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![(vec![2, 0], RingElement::one(&f)), (vec![0, 2], RingElement::t(&f))],
        )
        .unwrap();
        let lam = ring(&f, &[1, 1]);
        let x = [RingElement::t(&f), ring(&f, &[2, 1])];
        let scaled: Vec<RingElement> = x.iter().map(|c| c.mul(&lam)).collect();
        let d = p.total_degree().unwrap();
        let mut lam_d = RingElement::one(&f);
        for _ in 0..d {
            lam_d = lam_d.mul(&lam);
        }
        assert_eq!(p.evaluate(&scaled).unwrap(), p.evaluate(&x).unwrap().mul(&lam_d));
    }

    #[test]
    fn reduce_mod_prime_examples() {
        let f = f2();
        let b = Budget::default();
        // x^2 + t*x + 1 mod t -> x^2 + 1 over F_2
        let p = MultiPoly::from_terms(
            &f,
            1,
            vec![
                (vec![2], RingElement::one(&f)),
                (vec![1], RingElement::t(&f)),
                (vec![0], RingElement::one(&f)),
            ],
        )
        .unwrap();
        let t = PrimeElement::new(RingElement::t(&f)).unwrap();
        let r = reduce_mod_prime(&p, &t, &b).unwrap();
        assert_eq!(r.to_string(), "x0^2 + 1");
        // reduction is a ring hom on products
        let map = ResidueMap::new(&t, &b).unwrap();
        let q = MultiPoly::from_terms(
            &f,
            1,
            vec![(vec![1], ring(&f, &[1, 1])), (vec![0], RingElement::t(&f))],
        )
        .unwrap();
        assert_eq!(
            p.mul(&q).reduce_mod(&map),
            p.reduce_mod(&map).mul(&q.reduce_mod(&map))
        );
        // degree-2 prime: residue field F_4, and the prime itself reduces to 0
        let p2 = PrimeElement::new(ring(&f, &[1, 1, 1])).unwrap();
        let map2 = ResidueMap::new(&p2, &b).unwrap();
        assert_eq!(map2.residue_field().q(), 4);
        assert!(map2.reduce(p2.as_ring()).is_zero());
    }

    #[test]
    fn factor_bruteforce_examples() {
        let b = Budget::default();
        let f2f = f2();
        // x^2 + 1 = (x+1)^2 over F_2
        let p = ResiduePoly::from_terms(&f2f, 1, vec![(vec![2], f2f.one()), (vec![0], f2f.one())])
            .unwrap();
        let fac = p.factor_bruteforce(&b).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.factors[0].0.to_string(), "x0 + 1");
        assert_eq!(fac.product(), p);
        // x^2 + y^2 + 1 over F_3 is irreducible (no linear factors)
        let f3f = f3();
        let p = ResiduePoly::from_terms(
            &f3f,
            2,
            vec![
                (vec![2, 0], f3f.one()),
                (vec![0, 2], f3f.one()),
                (vec![0, 0], f3f.one()),
            ],
        )
        .unwrap();
        let fac = p.factor_bruteforce(&b).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        // xy over F_2 factors as x * y
        let p = ResiduePoly::from_terms(&f2f, 2, vec![(vec![1, 1], f2f.one())]).unwrap();
        let fac = p.factor_bruteforce(&b).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), p);
    }

    #[test]
    fn absolute_irreducibility_examples() {
        let b = Budget::default();
        let f3f = f3();
        // x^2 + y^2 splits over F_9 into conjugate lines
        let p = ResiduePoly::from_terms(
            &f3f,
            2,
            vec![(vec![2, 0], f3f.one()), (vec![0, 2], f3f.one())],
        )
        .unwrap();
        assert!(!p.is_absolutely_irreducible(&b).unwrap());
        // the rank-3 quadric x^2 + y^2 + z^2 stays irreducible
        let p = ResiduePoly::from_terms(
            &f3f,
            3,
            vec![
                (vec![2, 0, 0], f3f.one()),
                (vec![0, 2, 0], f3f.one()),
                (vec![0, 0, 2], f3f.one()),
            ],
        )
        .unwrap();
        assert!(p.is_absolutely_irreducible(&b).unwrap());
        // a square is never absolutely irreducible
        let f2f = f2();
        let p = ResiduePoly::from_terms(&f2f, 1, vec![(vec![2], f2f.one())]).unwrap();
        assert!(!p.is_absolutely_irreducible(&b).unwrap());
    }

    #[test]
    fn leading_transform_examples() {
        let b = Budget::default();
        let f = f2();
        // x0^d is already normalized: alpha = 0
        let p = MultiPoly::from_terms(&f, 2, vec![(vec![3, 0], RingElement::one(&f))]).unwrap();
        let (alpha, shifted) = p.leading_transform(&b).unwrap();
        assert!(alpha.iter().all(|a| a.is_zero()));
        assert_eq!(shifted, p);
        // t x0^2 + t x0 x1 + t x1^2: alpha = 0 works, |f(1,0)| = |t| = ||f||
        let t = RingElement::t(&f);
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![2, 0], t.clone()),
                (vec![1, 1], t.clone()),
                (vec![0, 2], t.clone()),
            ],
        )
        .unwrap();
        let (alpha, shifted) = p.leading_transform(&b).unwrap();
        assert!(alpha.iter().all(|a| a.is_zero()));
        assert_eq!(shifted.leading_x0_coeff(), t);
        // a case with no x0^d term at all: f = t*x1^2 needs a real shift
        let p = MultiPoly::from_terms(&f, 2, vec![(vec![0, 2], t.clone())]).unwrap();
        let (_, shifted) = p.leading_transform(&b).unwrap();
        assert!(shifted.leading_x0_coeff().degree() >= t.degree());
    }

    #[test]
    fn twist_f_h_examples() {
        let f = f2();
        let t = RingElement::t(&f);
        // f = x1*x2 + 1, H = t: F_H = t^2*x1*x2 + x0^2
        let p = MultiPoly::from_terms(
            &f,
            2,
            vec![
                (vec![1, 1], RingElement::one(&f)),
                (vec![0, 0], RingElement::one(&f)),
            ],
        )
        .unwrap();
        let fh = p.twist_f_h(&t).unwrap();
        assert_eq!(fh.to_string(), "x0^2 + t^2*x1*x2");
        assert!(fh.is_homogeneous());
        // H = 1 gives the homogenization
        assert_eq!(p.twist_f_h(&RingElement::one(&f)).unwrap(), p.homogenize());
        // identity F_H(H, x) = H^d f(x) on all points with entries of degree < 2
        let d = p.total_degree().unwrap();
        let mut hd = RingElement::one(&f);
        for _ in 0..d {
            hd = hd.mul(&t);
        }
        for xi in 0..4u64 {
            for yi in 0..4u64 {
                let x = RingElement::from_enum_index(&f, xi);
                let y = RingElement::from_enum_index(&f, yi);
                let lhs = fh.evaluate(&[t.clone(), x.clone(), y.clone()]).unwrap();
                let rhs = p.evaluate(&[x, y]).unwrap().mul(&hd);
                assert_eq!(lhs, rhs);
            }
        }
        // non-monic H is rejected
        assert!(p.twist_f_h(&RingElement::zero(&f)).is_err());
    }

    #[test]
    fn fqt_irreducibility() {
        let b = Budget::default();
        let f = f2();
        // the conic x0*x2 - x1^2 is irreducible
        let conic = MultiPoly::from_terms(
            &f,
            3,
            vec![
                (vec![1, 0, 1], RingElement::one(&f)),
                (vec![0, 2, 0], RingElement::one(&f).neg()),
            ],
        )
        .unwrap();
        assert!(conic.is_irreducible(&b).unwrap());
        // a product of two lines is not
        let l1 = MultiPoly::from_terms(
            &f,
            3,
            vec![
                (vec![1, 0, 0], RingElement::one(&f)),
                (vec![0, 1, 0], RingElement::t(&f)),
            ],
        )
        .unwrap();
        let l2 = MultiPoly::from_terms(
            &f,
            3,
            vec![
                (vec![0, 1, 0], RingElement::one(&f)),
                (vec![0, 0, 1], RingElement::one(&f)),
            ],
        )
        .unwrap();
        let prod = l1.mul(&l2);
        assert!(!prod.is_irreducible(&b).unwrap());
        let witness = prod.find_homogeneous_factor(&b).unwrap().unwrap();
        assert!(prod.is_divisible_by(&witness).unwrap());
    }

    #[test]
    fn certify_absolute_irreducibility_by_specialization() {
        let b = Budget::default();
        let f3f = f3();
        // x0^2 + x1^2 + t*x2^2 over F_3: mod t the rank drops and it splits,
        // but mod t+1 it is a rank-3 quadric, which certifies the generic fiber
        let p = MultiPoly::from_terms(
            &f3f,
            3,
            vec![
                (vec![2, 0, 0], RingElement::one(&f3f)),
                (vec![0, 2, 0], RingElement::one(&f3f)),
                (vec![0, 0, 2], RingElement::t(&f3f)),
            ],
        )
        .unwrap();
        let witness = certify_absolutely_irreducible(&p, 1, &b).unwrap();
        assert_eq!(witness.unwrap().to_string(), "t+1");
    }

    #[test]
    fn display_matches_grammar() {
        let f = f2();
        let p = MultiPoly::from_terms(
            &f,
            3,
            vec![
                (vec![3, 0, 0], ring(&f, &[1, 0, 1])),
                (vec![0, 1, 2], RingElement::t(&f)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "(t^2+1)*x0^3 + t*x1*x2^2");
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        let c = Monomial::new(vec![0, 0, 1]);
        assert!(a > b);
        assert!(b > c);
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        // descending order, leading first
        for w in all.windows(2) {
            assert!(w[0] > w[1]);
        }
    }
}
