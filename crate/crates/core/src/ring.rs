//! Finite commutative rings `(Z/m)[t]/(f)` with an involution and a central
//! unit `lambda` satisfying `lambda * conj(lambda) = 1`.
//!
//! Elements are stored as canonical coefficient vectors, so equality of
//! [`RingElem`] values is structural. Everything that needs to look at the
//! whole ring (form parameters, ideals) goes through [`Ring::elements`] and
//! respects the enumeration budget.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree of the defining polynomial.
pub const MAX_DEGREE: usize = 4;

/// Default cap on `|R|` for anything that enumerates the ring.
pub const DEFAULT_BUDGET: usize = 1 << 16;

/// Canonical residue: coefficients of `1, t, ..., t^(d-1)`, each reduced mod `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElem(pub(crate) [u32; MAX_DEGREE]);

impl RingElem {
    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..=last])
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    Trivial,
    /// `t -> -t`
    Neg,
    /// `t -> c - t`
    CMinus,
}

/// Serializable description of a ring with involution and its `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub m: u64,
    /// Monic defining polynomial, coefficients from the constant term up.
    pub f: Option<Vec<i64>>,
    pub involution: InvolutionKind,
    /// Constant for the `c_minus` involution.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub c: i64,
    pub lambda: Vec<i64>,
}

fn is_zero(c: &i64) -> bool {
    *c == 0
}

impl RingSpec {
    /// `Z/m` with the identity involution.
    pub fn integers_mod(m: u64, lambda: i64) -> Self {
        RingSpec { m, f: None, involution: InvolutionKind::Trivial, c: 0, lambda: vec![lambda] }
    }

    /// `(Z/m)[t]/(t^2+1)` with `t -> -t`.
    pub fn gaussian(m: u64, lambda: i64) -> Self {
        RingSpec { m, f: Some(vec![1, 0, 1]), involution: InvolutionKind::Neg, c: 0, lambda: vec![lambda] }
    }
}

#[derive(Clone, Debug)]
pub struct Ring {
    spec: RingSpec,
    m: u64,
    deg: usize,
    /// Non-leading coefficients of the monic modulus.
    f: [u64; MAX_DEGREE],
    /// Images of `t^k` under the involution; `None` for the identity.
    inv_images: Option<[RingElem; MAX_DEGREE]>,
    lambda: RingElem,
    lambda_bar: RingElem,
    size: Option<usize>,
    budget: usize,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        if spec.m < 2 || spec.m > (1 << 30) {
            return Err(Error::InvalidSpec(format!("modulus {} out of range", spec.m)));
        }
        let m = spec.m;
        let reduce = |c: i64| c.rem_euclid(m as i64) as u64;
        let (deg, f) = match &spec.f {
            None => (1, [0; MAX_DEGREE]),
            Some(poly) => {
                let deg = poly.len().saturating_sub(1);
                if deg == 0 || deg > MAX_DEGREE {
                    return Err(Error::InvalidSpec(format!("extension degree must be in 1..={MAX_DEGREE}")));
                }
                if reduce(poly[deg]) != 1 {
                    return Err(Error::InvalidSpec("extension polynomial is not monic".into()));
                }
                let mut f = [0; MAX_DEGREE];
                for (i, c) in poly[..deg].iter().enumerate() {
                    f[i] = reduce(*c);
                }
                (deg, f)
            }
        };
        let size = (0..deg).try_fold(1usize, |acc, _| acc.checked_mul(m as usize));
        let mut ring = Ring {
            spec: spec.clone(),
            m,
            deg,
            f,
            inv_images: None,
            lambda: RingElem::default(),
            lambda_bar: RingElem::default(),
            size,
            budget: DEFAULT_BUDGET,
        };
        if spec.involution != InvolutionKind::Trivial {
            if spec.f.is_none() {
                return Err(Error::InvalidInvolution("a nontrivial involution needs a polynomial extension".into()));
            }
            let t = ring.t();
            let image_of_t = match spec.involution {
                InvolutionKind::Neg => ring.neg(t),
                InvolutionKind::CMinus => ring.sub(ring.from_int(spec.c), t),
                InvolutionKind::Trivial => unreachable!(),
            };
            let mut images = [RingElem::default(); MAX_DEGREE];
            let mut power = ring.one();
            for img in images.iter_mut().take(deg) {
                *img = power;
                power = ring.mul(power, image_of_t);
            }
            // f(image of t) must vanish, otherwise the substitution is not well defined.
            let mut f_at = power;
            let mut pw = ring.one();
            for i in 0..deg {
                f_at = ring.add(f_at, ring.scale(pw, f[i]));
                pw = ring.mul(pw, image_of_t);
            }
            if !ring.is_zero(f_at) {
                return Err(Error::InvalidInvolution("substitution does not respect the defining polynomial".into()));
            }
            ring.inv_images = Some(images);
        }
        ring.lambda = ring.from_coeffs(&spec.lambda);
        ring.lambda_bar = ring.involute(ring.lambda);
        ring.check_involution()?;
        if ring.mul(ring.lambda, ring.lambda_bar) != ring.one() {
            return Err(Error::InvalidLambda);
        }
        Ok(ring)
    }

    fn check_involution(&self) -> Result<()> {
        let basis = self.basis();
        if self.involute(self.one()) != self.one() {
            return Err(Error::InvalidInvolution("conj(1) != 1".into()));
        }
        for &a in &basis {
            if self.involute(self.involute(a)) != a {
                return Err(Error::InvalidInvolution(format!("conj(conj({a:?})) != {a:?}")));
            }
            for &b in &basis {
                if self.involute(self.mul(a, b)) != self.mul(self.involute(a), self.involute(b)) {
                    return Err(Error::InvalidInvolution(format!("not multiplicative on {a:?}, {b:?}")));
                }
            }
        }
        // The basis checks already prove the axioms; the sweep below is a
        // second, independent look on rings small enough to afford it.
        if self.size.is_some_and(|s| s <= 10_000) {
            let elems: Vec<_> = self.elements_unchecked().collect();
            let partners: Vec<_> = if elems.len() <= 100 { elems.clone() } else { basis.clone() };
            for &a in &elems {
                if self.involute(self.involute(a)) != a {
                    return Err(Error::InvalidInvolution("not involutive".into()));
                }
                for &b in &partners {
                    if self.involute(self.add(a, b)) != self.add(self.involute(a), self.involute(b))
                        || self.involute(self.mul(a, b)) != self.mul(self.involute(a), self.involute(b))
                    {
                        return Err(Error::InvalidInvolution("enumeration found a violation".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `|R|`, or `None` if it does not fit in a `usize`.
    pub fn size(&self) -> Option<usize> {
        self.size
    }

    pub fn involution_is_trivial(&self) -> bool {
        self.inv_images.is_none()
    }

    pub fn lambda(&self) -> RingElem {
        self.lambda
    }

    pub fn lambda_bar(&self) -> RingElem {
        self.lambda_bar
    }

    /// `lambda^e` for `e` in `{-1, 0, 1}`; `lambda^-1` is `conj(lambda)`.
    pub fn lambda_pow(&self, e: i32) -> RingElem {
        match e {
            0 => self.one(),
            1 => self.lambda,
            -1 => self.lambda_bar,
            _ => {
                let base = if e > 0 { self.lambda } else { self.lambda_bar };
                (0..e.unsigned_abs()).fold(self.one(), |acc, _| self.mul(acc, base))
            }
        }
    }

    /// `lambda^((eps(j) - eps(i)) / 2)` for hyperbolic indices `i, j`.
    pub fn lambda_power(&self, i: i32, j: i32) -> RingElem {
        self.lambda_pow((sign(j) - sign(i)) / 2)
    }

    pub fn zero(&self) -> RingElem {
        RingElem::default()
    }

    pub fn one(&self) -> RingElem {
        let mut e = RingElem::default();
        e.0[0] = 1;
        e
    }

    pub fn t(&self) -> RingElem {
        let mut e = RingElem::default();
        if self.deg > 1 {
            e.0[1] = 1;
        } else {
            // t is a root of the linear modulus t + f0
            e.0[0] = ((self.m - self.f[0]) % self.m) as u32;
        }
        e
    }

    pub fn from_int(&self, x: i64) -> RingElem {
        let mut e = RingElem::default();
        e.0[0] = x.rem_euclid(self.m as i64) as u32;
        e
    }

    /// Reduces an arbitrary coefficient list (constant term first) into the ring.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> RingElem {
        let mut acc = self.zero();
        let mut pw = self.one();
        let t = self.t();
        for &c in coeffs {
            acc = self.add(acc, self.mul(self.from_int(c), pw));
            pw = self.mul(pw, t);
        }
        acc
    }

    pub fn to_coeffs(&self, a: RingElem) -> Vec<i64> {
        a.0[..self.deg].iter().map(|&c| c as i64).collect()
    }

    pub fn is_zero(&self, a: RingElem) -> bool {
        a == RingElem::default()
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        let mut out = RingElem::default();
        for k in 0..self.deg {
            let s = a.0[k] as u64 + b.0[k] as u64;
            out.0[k] = if s >= self.m { (s - self.m) as u32 } else { s as u32 };
        }
        out
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let mut out = RingElem::default();
        for k in 0..self.deg {
            out.0[k] = if a.0[k] == 0 { 0 } else { (self.m - a.0[k] as u64) as u32 };
        }
        out
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    fn scale(&self, a: RingElem, c: u64) -> RingElem {
        let mut out = RingElem::default();
        for k in 0..self.deg {
            out.0[k] = ((a.0[k] as u64 * c) % self.m) as u32;
        }
        out
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        let m = self.m;
        if self.deg == 1 {
            let mut out = RingElem::default();
            out.0[0] = ((a.0[0] as u64 * b.0[0] as u64) % m) as u32;
            return out;
        }
        let d = self.deg;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % m;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let sub = (c * self.f[i]) % m;
                prod[k - d + i] = (prod[k - d + i] + m - sub) % m;
            }
        }
        let mut out = RingElem::default();
        for i in 0..d {
            out.0[i] = prod[i] as u32;
        }
        out
    }

    pub fn mul3(&self, a: RingElem, b: RingElem, c: RingElem) -> RingElem {
        self.mul(self.mul(a, b), c)
    }

    pub fn involute(&self, a: RingElem) -> RingElem {
        match &self.inv_images {
            None => a,
            Some(images) => {
                let mut acc = self.zero();
                for k in 0..self.deg {
                    if a.0[k] != 0 {
                        acc = self.add(acc, self.scale(images[k], a.0[k] as u64));
                    }
                }
                acc
            }
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn invert(&self, a: RingElem) -> Option<RingElem> {
        if self.deg == 1 {
            let (g, x, _) = ext_gcd(a.0[0] as i64, self.m as i64);
            return (g == 1).then(|| self.from_int(x));
        }
        // Units have finite multiplicative order; walk the powers of `a`.
        let one = self.one();
        let limit = self.size.unwrap_or(usize::MAX).min(1 << 24);
        let mut prev = one;
        let mut cur = a;
        for _ in 0..limit {
            if cur == one {
                return Some(prev);
            }
            if self.is_zero(cur) {
                return None;
            }
            prev = cur;
            cur = self.mul(cur, a);
        }
        None
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.invert(a).is_some()
    }

    /// `Z/m`-module basis `1, t, ..., t^(d-1)`.
    pub fn basis(&self) -> Vec<RingElem> {
        (0..self.deg)
            .map(|k| {
                let mut e = RingElem::default();
                e.0[k] = 1;
                e
            })
            .collect()
    }

    pub fn index_of(&self, a: RingElem) -> usize {
        let mut idx = 0usize;
        for k in (0..self.deg).rev() {
            idx = idx * self.m as usize + a.0[k] as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> RingElem {
        let mut e = RingElem::default();
        for k in 0..self.deg {
            e.0[k] = (idx % self.m as usize) as u32;
            idx /= self.m as usize;
        }
        e
    }

    /// Size of the ring, checked against the enumeration budget.
    pub fn enumerable_size(&self) -> Result<usize> {
        match self.size {
            Some(s) if s <= self.budget => Ok(s),
            Some(s) => Err(Error::BudgetExceeded { needed: s, budget: self.budget }),
            None => Err(Error::BudgetExceeded { needed: usize::MAX, budget: self.budget }),
        }
    }

    pub fn elements(&self) -> Result<impl Iterator<Item = RingElem> + '_> {
        let size = self.enumerable_size()?;
        Ok((0..size).map(move |i| self.element(i)))
    }

    fn elements_unchecked(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.size.unwrap_or(0)).map(move |i| self.element(i))
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> RingElem {
        let mut e = RingElem::default();
        for k in 0..self.deg {
            e.0[k] = rng.gen_range(0..self.m) as u32;
        }
        e
    }
}

pub(crate) fn sign(i: i32) -> i32 {
    if i > 0 {
        1
    } else {
        -1
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a / b) * y)
    }
}

/// An additive subgroup of a finite ring, realized as a membership table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemSet {
    bits: Vec<bool>,
    count: usize,
}

impl ElemSet {
    pub fn empty(ring: &Ring) -> Result<Self> {
        let size = ring.enumerable_size()?;
        Ok(ElemSet { bits: vec![false; size], count: 0 })
    }

    /// Additive closure of `gens` (always contains 0).
    pub fn span(ring: &Ring, gens: &[RingElem]) -> Result<Self> {
        let mut set = ElemSet::empty(ring)?;
        set.insert(ring, ring.zero());
        let mut queue = VecDeque::from([ring.zero()]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = ring.add(a, g);
                if set.insert(ring, b) {
                    queue.push_back(b);
                }
            }
        }
        Ok(set)
    }

    pub fn from_predicate(ring: &Ring, pred: impl Fn(RingElem) -> bool) -> Result<Self> {
        let mut set = ElemSet::empty(ring)?;
        for a in ring.elements()? {
            if pred(a) {
                set.insert(ring, a);
            }
        }
        Ok(set)
    }

    fn insert(&mut self, ring: &Ring, a: RingElem) -> bool {
        let idx = ring.index_of(a);
        if self.bits[idx] {
            false
        } else {
            self.bits[idx] = true;
            self.count += 1;
            true
        }
    }

    pub fn contains(&self, ring: &Ring, a: RingElem) -> bool {
        self.bits[ring.index_of(a)]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn members<'a>(&'a self, ring: &'a Ring) -> impl Iterator<Item = RingElem> + 'a {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| ring.element(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "generators")]
pub enum FormParamKind {
    Min,
    Max,
    Span(Vec<Vec<i64>>),
}

/// A form parameter `Lambda_min <= Lambda <= Lambda_max` closed under `x * . * conj(x)`.
#[derive(Clone, Debug)]
pub struct FormParam {
    kind: FormParamKind,
    set: ElemSet,
    gens: Vec<RingElem>,
}

/// Additive generators of `{x - lambda conj(x)}`.
pub fn lambda_min_generators(ring: &Ring) -> Vec<RingElem> {
    ring.basis().into_iter().map(|b| ring.sub(b, ring.mul(ring.lambda(), ring.involute(b)))).collect()
}

pub fn in_lambda_max(ring: &Ring, x: RingElem) -> bool {
    ring.is_zero(ring.add(x, ring.mul(ring.lambda(), ring.involute(x))))
}

/// Closes a generator list under `g -> x g conj(x)` for every `x` in the ring.
pub(crate) fn close_under_norms(ring: &Ring, mut gens: Vec<RingElem>) -> Result<(ElemSet, Vec<RingElem>)> {
    let all: Vec<RingElem> = ring.elements()?.collect();
    loop {
        let set = ElemSet::span(ring, &gens)?;
        let mut grew = false;
        let snapshot = gens.clone();
        let mut current = set.clone();
        for g in snapshot {
            for &x in &all {
                let y = ring.mul3(x, g, ring.involute(x));
                if !current.contains(ring, y) {
                    gens.push(y);
                    current = ElemSet::span(ring, &gens)?;
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok((set, gens));
        }
    }
}

impl FormParam {
    pub fn new(ring: &Ring, kind: FormParamKind) -> Result<Self> {
        match &kind {
            FormParamKind::Min => {
                let gens = lambda_min_generators(ring);
                let set = ElemSet::span(ring, &gens)?;
                Ok(FormParam { kind, set, gens })
            }
            FormParamKind::Max => {
                let set = ElemSet::from_predicate(ring, |x| in_lambda_max(ring, x))?;
                let gens = set.members(ring).collect();
                Ok(FormParam { kind, set, gens })
            }
            FormParamKind::Span(list) => {
                let mut gens = lambda_min_generators(ring);
                gens.extend(list.iter().map(|c| ring.from_coeffs(c)));
                let (set, gens) = close_under_norms(ring, gens)?;
                if !gens.iter().all(|&g| in_lambda_max(ring, g)) {
                    return Err(Error::InvalidFormParam);
                }
                Ok(FormParam { kind, set, gens })
            }
        }
    }

    pub fn min(ring: &Ring) -> Result<Self> {
        Self::new(ring, FormParamKind::Min)
    }

    pub fn max(ring: &Ring) -> Result<Self> {
        Self::new(ring, FormParamKind::Max)
    }

    pub fn kind(&self) -> &FormParamKind {
        &self.kind
    }

    pub fn contains(&self, ring: &Ring, x: RingElem) -> bool {
        self.set.contains(ring, x)
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    /// Additive generators of the realized subgroup.
    pub fn generators(&self) -> &[RingElem] {
        &self.gens
    }
}

/// Membership of `x` in the realized form parameter of the given kind.
pub fn form_param_membership(ring: &Ring, kind: &FormParamKind, x: RingElem) -> Result<bool> {
    Ok(FormParam::new(ring, kind.clone())?.contains(ring, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, lambda: i64) -> Ring {
        Ring::new(RingSpec::integers_mod(m, lambda)).unwrap()
    }

    #[test]
    fn builds_basic_rings() {
        let r = z(5, 1);
        assert_eq!(r.size(), Some(5));
        let g = Ring::new(RingSpec::gaussian(5, 1)).unwrap();
        assert_eq!(g.size(), Some(25));
        for a in g.elements().unwrap() {
            let [x, y, ..] = a.0;
            let norm = g.mul(a, g.involute(a));
            assert_eq!(norm, g.from_int((x * x + y * y) as i64));
        }
        // 3 * 3 = 9 = 1 mod 4
        assert!(Ring::new(RingSpec::integers_mod(4, 3)).is_ok());
    }

    #[test]
    fn rejects_bad_lambda_and_involution() {
        assert_eq!(Ring::new(RingSpec::integers_mod(5, 2)).unwrap_err(), Error::InvalidLambda);
        let mut spec = RingSpec::integers_mod(5, 1);
        spec.involution = InvolutionKind::Neg;
        assert!(matches!(Ring::new(spec), Err(Error::InvalidInvolution(_))));
        // t -> -t is not well defined modulo t^2 + t + 1
        let spec = RingSpec { m: 5, f: Some(vec![1, 1, 1]), involution: InvolutionKind::Neg, c: 0, lambda: vec![1] };
        assert!(matches!(Ring::new(spec), Err(Error::InvalidInvolution(_))));
        // but t -> -1 - t is
        let spec =
            RingSpec { m: 5, f: Some(vec![1, 1, 1]), involution: InvolutionKind::CMinus, c: -1, lambda: vec![1] };
        assert!(Ring::new(spec).is_ok());
        let spec = RingSpec { m: 5, f: Some(vec![1, 0, 2]), ..RingSpec::gaussian(5, 1) };
        assert!(matches!(Ring::new(spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn lambda_powers() {
        let g = Ring::new(RingSpec { lambda: vec![0, 1], ..RingSpec::gaussian(5, 1) }).unwrap();
        assert_eq!(g.lambda_power(2, 3), g.one());
        assert_eq!(g.lambda_power(-2, 3), g.lambda());
        assert_eq!(g.lambda_power(2, -3), g.lambda_bar());
        assert_eq!(g.mul(g.lambda(), g.lambda_bar()), g.one());
    }

    #[test]
    fn form_parameters_on_z4() {
        let r = z(4, 1);
        let min = FormParam::min(&r).unwrap();
        let max = FormParam::max(&r).unwrap();
        assert!(!min.contains(&r, r.from_int(2)));
        assert_eq!(min.set().len(), 1);
        assert!(max.contains(&r, r.from_int(2)));
        assert_eq!(max.set().len(), 2);
        let r = z(4, -1);
        assert!(FormParam::min(&r).unwrap().contains(&r, r.from_int(2)));
        assert_eq!(FormParam::max(&r).unwrap().set().len(), 4);
    }

    #[test]
    fn span_kind_closes_and_validates() {
        let r = z(4, -1);
        let fp = FormParam::new(&r, FormParamKind::Span(vec![vec![1]])).unwrap();
        assert_eq!(fp.set().len(), 4);
        let r = z(4, 1);
        assert_eq!(FormParam::new(&r, FormParamKind::Span(vec![vec![1]])).unwrap_err(), Error::InvalidFormParam);
        let fp = FormParam::new(&r, FormParamKind::Span(vec![vec![2]])).unwrap();
        assert_eq!(fp.set().len(), 2);
    }

    #[test]
    fn unit_detection_matches_enumeration() {
        for ring in [z(12, 1), Ring::new(RingSpec::gaussian(9, 1)).unwrap()] {
            let elems: Vec<_> = ring.elements().unwrap().collect();
            for &a in &elems {
                let brute = elems.iter().find(|&&b| ring.mul(a, b) == ring.one()).copied();
                assert_eq!(ring.invert(a), brute, "{a:?}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::new(RingSpec::gaussian(7, 1)).unwrap().with_budget(10);
        assert!(matches!(FormParam::max(&r), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn spec_json_shape() {
        let spec = RingSpec::gaussian(5, 1);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"m":5,"f":[1,0,1],"involution":"neg","lambda":[1]}"#);
        let back: RingSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
