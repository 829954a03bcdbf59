//! Heights, canonical projective representatives, and exhaustive
//! enumeration of rational points of bounded height.
//!
//! All counting uses the strict inequality `h(x) < ℓ`. Projective
//! enumeration iterates canonical representatives directly (first nonzero
//! coordinate monic, coprimality enforced by a gcd filter), so no point set
//! is ever materialized unless requested. Enumeration order is by pivot
//! position, then degree, then coefficients, and is identical across runs.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpoly::MultiPoly;
use crate::ring::{Degree, RingElement};

/// A tuple of ring elements; the zero point has height `NegInf`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePoint(Vec<RingElement>);

impl AffinePoint {
    pub fn new(coords: Vec<RingElement>) -> Result<AffinePoint> {
        if coords.is_empty() {
            return Err(Error::precondition("a point needs at least one coordinate"));
        }
        Ok(AffinePoint(coords))
    }

    pub fn coords(&self) -> &[RingElement] {
        &self.0
    }

    /// `h(x) = max_i deg x_i`.
    pub fn height(&self) -> Degree {
        self.0.iter().map(|c| c.degree()).max().unwrap_or(Degree::NegInf)
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A projective point in canonical form: coordinates coprime and the first
/// nonzero one monic. Construction goes through [`ProjectivePoint::canonicalize`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<RingElement>,
}

impl ProjectivePoint {
    /// Divide by the gcd of the entries and scale the first nonzero entry
    /// monic. Idempotent; two raw tuples represent the same point iff their
    /// canonical forms are equal.
    pub fn canonicalize(raw: &[RingElement]) -> Result<ProjectivePoint> {
        if raw.is_empty() {
            return Err(Error::precondition("a point needs at least one coordinate"));
        }
        let mut gcd: Option<RingElement> = None;
        for c in raw {
            if c.is_zero() {
                continue;
            }
            gcd = Some(match gcd {
                None => c.make_monic(),
                Some(g) => g.gcd(c)?,
            });
        }
        let gcd = gcd.ok_or_else(|| Error::precondition("the zero vector is not projective"))?;
        let mut coords: Vec<RingElement> = raw
            .iter()
            .map(|c| {
                let (q, r) = c.divrem(&gcd)?;
                debug_assert!(r.is_zero());
                Ok(q)
            })
            .collect::<Result<_>>()?;
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.leading_coeff())
            .expect("some coordinate is nonzero");
        if !lead.is_one() {
            let inv = lead.inv()?;
            for c in coords.iter_mut() {
                *c = c.scale(&inv);
            }
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[RingElement] {
        &self.coords
    }

    pub fn height(&self) -> Degree {
        self.coords.iter().map(|c| c.degree()).max().unwrap_or(Degree::NegInf)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An affine line `a + v·F_q(t)` with a primitive direction. The direction
/// is normalized on construction (gcd divided out, first nonzero monic).
#[derive(Clone, Debug)]
pub struct AffineLine {
    base: AffinePoint,
    dir: Vec<RingElement>,
}

impl AffineLine {
    pub fn new(base: AffinePoint, dir: Vec<RingElement>) -> Result<AffineLine> {
        if dir.len() != base.coords().len() {
            return Err(Error::precondition("direction dimension mismatch"));
        }
        let canonical = ProjectivePoint::canonicalize(&dir)?;
        Ok(AffineLine { base, dir: canonical.coords().to_vec() })
    }

    pub fn base(&self) -> &AffinePoint {
        &self.base
    }

    pub fn direction(&self) -> &[RingElement] {
        &self.dir
    }

    pub fn direction_height(&self) -> Degree {
        self.dir.iter().map(|c| c.degree()).max().unwrap_or(Degree::NegInf)
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Whether an enumeration should also collect the points it visits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CollectMode {
    CountOnly,
    WithPoints,
}

#[derive(Clone, Debug)]
pub struct AffineCount {
    pub count: u64,
    pub points: Option<Vec<AffinePoint>>,
}

#[derive(Clone, Debug)]
pub struct ProjectiveCount {
    pub count: u64,
    pub points: Option<Vec<ProjectivePoint>>,
}

/// Iterator over all tuples of `F_q[t]_{<ell}^n`, in enumeration-index order.
pub struct AffineTupleIter {
    field: Field,
    nvars: usize,
    per_coord: u64,
    idx: u64,
    total: u64,
}

impl Iterator for AffineTupleIter {
    type Item = Vec<RingElement>;

    fn next(&mut self) -> Option<Vec<RingElement>> {
        if self.idx >= self.total {
            return None;
        }
        let mut v = self.idx;
        self.idx += 1;
        let mut coords = Vec::with_capacity(self.nvars);
        for _ in 0..self.nvars {
            coords.push(RingElement::from_enum_index(&self.field, v % self.per_coord));
            v /= self.per_coord;
        }
        Some(coords)
    }
}

/// All tuples in `F_q[t]_{<ell}^nvars`, budget-guarded.
pub fn affine_tuples(
    field: &Field,
    nvars: usize,
    ell: u32,
    budget: &Budget,
) -> Result<AffineTupleIter> {
    if nvars == 0 {
        return Err(Error::precondition("enumeration needs at least one variable"));
    }
    let per_coord = Budget::checked_pow(field.q(), ell, budget.max_enum_tuples, "height box")?;
    let mut total: u64 = 1;
    for _ in 0..nvars {
        total = total
            .checked_mul(per_coord)
            .filter(|&t| t <= budget.max_enum_tuples)
            .ok_or_else(|| {
                Error::budget(format!(
                    "affine enumeration: {per_coord}^{nvars} tuples exceed the cap {}",
                    budget.max_enum_tuples
                ))
            })?;
    }
    Ok(AffineTupleIter { field: field.clone(), nvars, per_coord, idx: 0, total })
}

/// Exact `N_aff(f; ell)` by exhaustive evaluation over `F_q[t]_{<ell}^n`.
pub fn enumerate_affine(
    f: &MultiPoly,
    ell: u32,
    budget: &Budget,
    mode: CollectMode,
) -> Result<AffineCount> {
    if ell < 1 {
        return Err(Error::precondition("the height bound must be at least 1"));
    }
    let mut count = 0u64;
    let mut points = if mode == CollectMode::WithPoints { Some(Vec::new()) } else { None };
    for coords in affine_tuples(f.ctx(), f.nvars(), ell, budget)? {
        if f.evaluate(&coords)?.is_zero() {
            count += 1;
            if let Some(ps) = points.as_mut() {
                ps.push(AffinePoint(coords));
            }
        }
    }
    Ok(AffineCount { count, points })
}

/// Iterator over the canonical representatives of all projective points of
/// height `< ell`: first nonzero coordinate monic, all coordinates of degree
/// `< ell`, coprime (enforced by a gcd filter).
pub struct ProjectiveRepIter {
    field: Field,
    nvars: usize,
    monics: Vec<RingElement>,
    per_coord: u64,
    pivot: usize,
    monic_i: usize,
    rest_i: u64,
    rest_total: u64,
}

impl ProjectiveRepIter {
    fn rest_total_for(&self, pivot: usize) -> u64 {
        let free = (self.nvars - 1 - pivot) as u32;
        let mut total = 1u64;
        for _ in 0..free {
            total *= self.per_coord;
        }
        total
    }
}

impl Iterator for ProjectiveRepIter {
    type Item = Result<ProjectivePoint>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.pivot >= self.nvars {
                return None;
            }
            if self.monic_i >= self.monics.len() {
                self.pivot += 1;
                if self.pivot >= self.nvars {
                    return None;
                }
                self.monic_i = 0;
                self.rest_i = 0;
                self.rest_total = self.rest_total_for(self.pivot);
                continue;
            }
            if self.rest_i >= self.rest_total {
                self.monic_i += 1;
                self.rest_i = 0;
                continue;
            }
            let mut coords = Vec::with_capacity(self.nvars);
            for _ in 0..self.pivot {
                coords.push(RingElement::zero(&self.field));
            }
            coords.push(self.monics[self.monic_i].clone());
            let mut v = self.rest_i;
            self.rest_i += 1;
            for _ in self.pivot + 1..self.nvars {
                coords.push(RingElement::from_enum_index(&self.field, v % self.per_coord));
                v /= self.per_coord;
            }
            // keep only coprime tuples: those are exactly the canonical reps
            let mut gcd = coords[self.pivot].clone();
            for c in coords.iter().skip(self.pivot + 1) {
                if gcd.is_one() {
                    break;
                }
                if !c.is_zero() {
                    gcd = match gcd.gcd(c) {
                        Ok(g) => g,
                        Err(e) => return Some(Err(e)),
                    };
                }
            }
            if !gcd.is_one() {
                continue;
            }
            return Some(Ok(ProjectivePoint { coords }));
        }
    }
}

/// Canonical representatives of `P^{nvars-1}(F_q(t))` of height `< ell`.
pub fn projective_reps(
    field: &Field,
    nvars: usize,
    ell: u32,
    budget: &Budget,
) -> Result<ProjectiveRepIter> {
    if nvars < 2 {
        return Err(Error::precondition("projective space needs at least two coordinates"));
    }
    if ell < 1 {
        return Err(Error::precondition("the height bound must be at least 1"));
    }
    let q = field.q();
    let per_coord = Budget::checked_pow(q, ell, budget.max_enum_tuples, "height box")?;
    // monic polynomials of degree < ell, in degree-then-index order
    let mut monics = Vec::new();
    for d in 0..ell {
        let lower = q.pow(d);
        for idx in 0..lower {
            let mut coeffs: Vec<u64> = Vec::with_capacity(d as usize + 1);
            let mut v = idx;
            for _ in 0..d {
                coeffs.push(v % q);
                v /= q;
            }
            coeffs.push(1);
            monics.push(RingElement::from_indices(field, coeffs)?);
        }
    }
    // total candidate budget: sum over pivots of |monics| * per_coord^(free)
    let mut total: u128 = 0;
    for pivot in 0..nvars {
        let mut t = monics.len() as u128;
        for _ in pivot + 1..nvars {
            t = t.saturating_mul(per_coord as u128);
        }
        total += t;
    }
    if total > budget.max_enum_tuples as u128 {
        return Err(Error::budget(format!(
            "projective enumeration: {total} candidates exceed the cap {}",
            budget.max_enum_tuples
        )));
    }
    let mut it = ProjectiveRepIter {
        field: field.clone(),
        nvars,
        monics,
        per_coord,
        pivot: 0,
        monic_i: 0,
        rest_i: 0,
        rest_total: 0,
    };
    it.rest_total = it.rest_total_for(0);
    Ok(it)
}

/// Exact `N(f; ell)` over canonical representatives with `h < ell`.
pub fn enumerate_projective(
    f: &MultiPoly,
    ell: u32,
    budget: &Budget,
    mode: CollectMode,
) -> Result<ProjectiveCount> {
    if !f.is_homogeneous() {
        return Err(Error::precondition(
            "projective counting requires a homogeneous polynomial",
        ));
    }
    let mut count = 0u64;
    let mut points = if mode == CollectMode::WithPoints { Some(Vec::new()) } else { None };
    for rep in projective_reps(f.ctx(), f.nvars(), ell, budget)? {
        let rep = rep?;
        if f.evaluate(rep.coords())?.is_zero() {
            count += 1;
            if let Some(ps) = points.as_mut() {
                ps.push(rep);
            }
        }
    }
    Ok(ProjectiveCount { count, points })
}

/// Exact count of `λ` with `h(a + λv) < ell`, by enumeration over
/// `λ ∈ F_q[t]_{<ell}` (larger `λ` always overshoot the bound).
/// For `a = 0` and `h(v) < ell` this equals `q^{ell - h(v)}`.
pub fn line_count(line: &AffineLine, ell: u32, budget: &Budget) -> Result<u64> {
    let bound = Degree::Finite(ell as i64);
    if line.base.height() >= bound {
        return Err(Error::precondition("the base point must have height below the bound"));
    }
    let field = line.base.coords()[0].field().clone();
    let total = Budget::checked_pow(field.q(), ell, budget.max_enum_tuples, "line parameter box")?;
    let mut count = 0u64;
    for idx in 0..total {
        let lambda = RingElement::from_enum_index(&field, idx);
        let h = line
            .base
            .coords()
            .iter()
            .zip(&line.dir)
            .map(|(a, v)| a.add(&lambda.mul(v)).degree())
            .max()
            .unwrap_or(Degree::NegInf);
        if h < bound {
            count += 1;
        }
    }
    Ok(count)
}

/// Outcome of the `count ≤ d·q^{ℓm}` check.
#[derive(Clone, Debug)]
pub struct TrivialBoundReport {
    pub holds: bool,
    pub bound: BigUint,
    /// `bound - count`.
    pub margin: BigInt,
}

/// The dimension-degree bound: a reduced variety of dimension `m` and degree
/// `d` has at most `d·q^{ℓm}` points of height `< ℓ`.
pub fn trivial_bound_check(count: u64, d: u32, m: u32, ell: u32, q: u64) -> TrivialBoundReport {
    let bound = BigUint::from(d) * BigUint::from(q).pow(ell * m);
    let margin = BigInt::from(bound.clone()) - BigInt::from(count);
    TrivialBoundReport { holds: BigUint::from(count) <= bound, bound, margin }
}

/// For each `α ∈ F_q[t]_{<alpha_range}`, the exact number of points of
/// height `< ell` on the slice `{f = 0, Σ a_i x_i = α}`, in enumeration
/// order of `α`. With `alpha_range ≥ ell + max_i deg a_i` the counts sum to
/// the direct count of `f`.
pub fn slice_counts(
    f: &MultiPoly,
    a: &[RingElement],
    ell: u32,
    alpha_range: u32,
    budget: &Budget,
) -> Result<Vec<(RingElement, u64)>> {
    if a.len() != f.nvars() {
        return Err(Error::precondition("hyperplane vector dimension mismatch"));
    }
    if a.iter().all(|c| c.is_zero()) {
        return Err(Error::precondition("the hyperplane vector must be nonzero"));
    }
    let field = f.ctx().clone();
    let slots = Budget::checked_pow(field.q(), alpha_range, budget.max_enum_tuples, "slice range")?;
    let mut counts = vec![0u64; slots as usize];
    for coords in affine_tuples(&field, f.nvars(), ell, budget)? {
        if !f.evaluate(&coords)?.is_zero() {
            continue;
        }
        let mut sigma = RingElement::zero(&field);
        for (ai, xi) in a.iter().zip(&coords) {
            sigma = sigma.add(&ai.mul(xi));
        }
        if sigma.degree() < Degree::Finite(alpha_range as i64) {
            counts[sigma.enum_index() as usize] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(idx, c)| (RingElement::from_enum_index(&field, idx as u64), c))
        .collect())
}
