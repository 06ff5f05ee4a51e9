//! Symbolic words: elementary words (products of transvections) and
//! products of elementary sigma-conjugates `eps sigma^(+-1) eps^-1`.
//!
//! A [`ConjWord`] carries the matrix it claims to evaluate to. Every
//! combinator updates that claim with plain matrix algebra, and
//! [`ConjWord::verify`] evaluates the factors independently.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, MatJson};
use crate::monomial::MonomialGroup;
use crate::ring::{sign, FormParam, Ring, RingElem};

/// One elementary generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transvection {
    /// `t_ij(x) = e + x e^ij`, indices `1..=n`.
    Gl { i: i32, j: i32, x: RingElem },
    /// Unitary short root `T_ij(x)`, `i != +-j`.
    Short { i: i32, j: i32, x: RingElem },
    /// Unitary long root `T_{i,-i}(x)`.
    Long { i: i32, x: RingElem },
}

impl Transvection {
    pub fn param(&self) -> RingElem {
        match *self {
            Transvection::Gl { x, .. } | Transvection::Short { x, .. } | Transvection::Long { x, .. } => x,
        }
    }

    pub fn indices(&self) -> (i32, i32) {
        match *self {
            Transvection::Gl { i, j, .. } | Transvection::Short { i, j, .. } => (i, j),
            Transvection::Long { i, .. } => (i, -i),
        }
    }

    fn with_param(&self, x: RingElem) -> Self {
        match *self {
            Transvection::Gl { i, j, .. } => Transvection::Gl { i, j, x },
            Transvection::Short { i, j, .. } => Transvection::Short { i, j, x },
            Transvection::Long { i, .. } => Transvection::Long { i, x },
        }
    }

    pub fn inverse(&self, ring: &Ring) -> Self {
        self.with_param(ring.neg(self.param()))
    }

    fn family(&self) -> &'static str {
        match self {
            Transvection::Gl { .. } => "GL_short",
            Transvection::Short { .. } => "U_short",
            Transvection::Long { .. } => "U_long",
        }
    }
}

/// A finite product of transvections, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElemWord(pub Vec<Transvection>);

impl ElemWord {
    pub fn new() -> Self {
        ElemWord(Vec::new())
    }

    pub fn single(t: Transvection) -> Self {
        ElemWord(vec![t])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self, ring: &Ring) -> Self {
        ElemWord(self.0.iter().rev().map(|t| t.inverse(ring)).collect())
    }

    pub fn then(&self, other: &ElemWord) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        ElemWord(v)
    }

    /// `[a, b] = a b a^-1 b^-1` as a word.
    pub fn commutator(ring: &Ring, a: &ElemWord, b: &ElemWord) -> Self {
        a.then(b).then(&a.inverse(ring)).then(&b.inverse(ring))
    }

    pub fn to_json(&self, ring: &Ring) -> Vec<TransvectionJson> {
        self.0
            .iter()
            .map(|t| {
                let (i, j) = t.indices();
                TransvectionJson { family: t.family().into(), i, j, x: ring.to_coeffs(t.param()) }
            })
            .collect()
    }
}

impl FromIterator<Transvection> for ElemWord {
    fn from_iter<I: IntoIterator<Item = Transvection>>(iter: I) -> Self {
        ElemWord(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransvectionJson {
    pub family: String,
    pub i: i32,
    pub j: i32,
    pub x: Vec<i64>,
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    /// `GL_n(R)`, generators `t_ij(x)`.
    Linear,
    /// `U_2n(R, Lambda)`; `O_2n(R)` is the case of trivial involution, `lambda = 1`, `Lambda = 0`.
    Unitary { form: FormParam },
}

/// The ambient group: ring, rank `n`, and which generators exist.
#[derive(Debug)]
pub struct Group {
    ring: Arc<Ring>,
    n: usize,
    kind: GroupKind,
    strict_guards: bool,
    form_members: Vec<RingElem>,
    monomials: OnceLock<Result<MonomialGroup>>,
}

impl Group {
    pub fn linear(ring: Arc<Ring>, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadIndex(format!("rank {n} < 3")));
        }
        Ok(Group {
            ring,
            n,
            kind: GroupKind::Linear,
            strict_guards: true,
            form_members: Vec::new(),
            monomials: OnceLock::new(),
        })
    }

    pub fn unitary(ring: Arc<Ring>, n: usize, form: FormParam) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadIndex(format!("rank {n} < 3")));
        }
        let form_members = form.set().members(&ring).collect();
        Ok(Group {
            ring,
            n,
            kind: GroupKind::Unitary { form },
            strict_guards: true,
            form_members,
            monomials: OnceLock::new(),
        })
    }

    /// Guards stay on in builds with debug assertions regardless of this flag.
    pub fn with_strict_guards(mut self, on: bool) -> Self {
        self.strict_guards = on;
        self
    }

    pub fn guards_enabled(&self) -> bool {
        self.strict_guards || cfg!(debug_assertions)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.kind, GroupKind::Linear)
    }

    pub fn form(&self) -> Option<&FormParam> {
        match &self.kind {
            GroupKind::Unitary { form } => Some(form),
            GroupKind::Linear => None,
        }
    }

    /// Orthogonal specialization: trivial involution, `lambda = 1`, `Lambda = {0}`.
    pub fn is_orthogonal(&self) -> bool {
        match &self.kind {
            GroupKind::Unitary { form } => {
                self.ring.involution_is_trivial() && self.ring.lambda() == self.ring.one() && form.set().len() == 1
            }
            GroupKind::Linear => false,
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            GroupKind::Linear => self.n,
            GroupKind::Unitary { .. } => 2 * self.n,
        }
    }

    /// Index labels in basis order: `1..n` or `1..n, -n..-1`.
    pub fn indices(&self) -> Vec<i32> {
        let n = self.n as i32;
        match self.kind {
            GroupKind::Linear => (1..=n).collect(),
            GroupKind::Unitary { .. } => (1..=n).chain(-n..=-1).collect(),
        }
    }

    pub fn valid_index(&self, i: i32) -> bool {
        let n = self.n as i32;
        match self.kind {
            GroupKind::Linear => (1..=n).contains(&i),
            GroupKind::Unitary { .. } => i != 0 && i.abs() <= n,
        }
    }

    /// Matrix position of an index label.
    #[inline]
    pub fn pos(&self, i: i32) -> usize {
        if i > 0 {
            (i - 1) as usize
        } else {
            (2 * self.n as i32 + i) as usize
        }
    }

    pub fn label(&self, pos: usize) -> i32 {
        if pos < self.n {
            pos as i32 + 1
        } else {
            pos as i32 - 2 * self.n as i32
        }
    }

    /// `sigma_ij` in index labels.
    #[inline]
    pub fn entry(&self, m: &Mat, i: i32, j: i32) -> RingElem {
        m.get(self.pos(i), self.pos(j))
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(&self.ring, self.dim())
    }

    /// Elementary generator at `(i, j)`: `t_ij` for GL, short or long root for U.
    pub fn gen(&self, i: i32, j: i32, x: RingElem) -> Result<Transvection> {
        if !self.valid_index(i) || !self.valid_index(j) {
            return Err(Error::BadIndex(format!("({i},{j})")));
        }
        match &self.kind {
            GroupKind::Linear => {
                if i == j {
                    return Err(Error::BadIndex(format!("({i},{j})")));
                }
                Ok(Transvection::Gl { i, j, x })
            }
            GroupKind::Unitary { form } => {
                if i == j {
                    Err(Error::BadIndex(format!("({i},{j})")))
                } else if i == -j {
                    // x must lie in lambda^(-(eps(i)+1)/2) Lambda
                    let twisted = self.ring.mul(self.ring.lambda_pow((sign(i) + 1) / 2), x);
                    if form.contains(&self.ring, twisted) {
                        Ok(Transvection::Long { i, x })
                    } else {
                        Err(Error::FormParamViolation)
                    }
                } else {
                    Ok(Transvection::Short { i, j, x })
                }
            }
        }
    }

    /// Convenience for integer parameters; panics on invalid input.
    pub fn t(&self, i: i32, j: i32, x: RingElem) -> Transvection {
        self.gen(i, j, x).expect("valid generator")
    }

    /// Off-diagonal entries `(row, col, value)` of a generator.
    #[inline]
    fn offdiag(&self, t: &Transvection) -> ([(usize, usize, RingElem); 2], usize) {
        let r = &self.ring;
        let zero = (0, 0, r.zero());
        match *t {
            Transvection::Gl { i, j, x } => ([(self.pos(i), self.pos(j), x), zero], 1),
            Transvection::Long { i, x } => ([(self.pos(i), self.pos(-i), x), zero], 1),
            Transvection::Short { i, j, x } => {
                let c = r.neg(r.mul(r.lambda_power(i, j), r.involute(x)));
                ([(self.pos(i), self.pos(j), x), (self.pos(-j), self.pos(-i), c)], 2)
            }
        }
    }

    pub fn matrix(&self, t: &Transvection) -> Mat {
        let mut m = self.identity();
        let (entries, k) = self.offdiag(t);
        for &(a, b, v) in &entries[..k] {
            m.set(a, b, self.ring.add(m.get(a, b), v));
        }
        m
    }

    /// `m <- t m`
    #[inline]
    pub fn apply_left(&self, t: &Transvection, m: &mut Mat) {
        let (entries, k) = self.offdiag(t);
        for &(a, b, v) in &entries[..k] {
            m.add_row_multiple(&self.ring, a, b, v);
        }
    }

    /// `m <- m t`
    #[inline]
    pub fn apply_right(&self, m: &mut Mat, t: &Transvection) {
        let (entries, k) = self.offdiag(t);
        for &(a, b, v) in &entries[..k] {
            m.add_col_multiple(&self.ring, b, a, v);
        }
    }

    pub fn eval(&self, w: &ElemWord) -> Mat {
        let mut m = self.identity();
        for t in &w.0 {
            self.apply_right(&mut m, t);
        }
        m
    }

    /// `w m w^-1`
    pub fn conj_mat(&self, w: &ElemWord, m: &Mat) -> Mat {
        let mut out = m.clone();
        for t in w.0.iter().rev() {
            self.apply_left(t, &mut out);
        }
        for t in w.0.iter().rev() {
            self.apply_right(&mut out, &t.inverse(&self.ring));
        }
        out
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        linalg::mul(&self.ring, a, b).expect("matrices of the group dimension")
    }

    pub fn inverse(&self, a: &Mat) -> Result<Mat> {
        linalg::inverse(&self.ring, a)
    }

    pub fn commutator(&self, a: &Mat, b: &Mat) -> Result<Mat> {
        linalg::commutator(&self.ring, a, b)
    }

    /// Fails with `GuardFailed` when guards are on and `check` is false.
    pub fn guard(&self, what: &str, check: impl FnOnce() -> bool) -> Result<()> {
        if self.guards_enabled() && !check() {
            Err(Error::GuardFailed(what.to_string()))
        } else {
            Ok(())
        }
    }

    /// Elements of `Lambda` (empty for GL).
    pub fn form_members(&self) -> &[RingElem] {
        &self.form_members
    }

    pub fn monomials(&self) -> Result<&MonomialGroup> {
        self.monomials.get_or_init(|| MonomialGroup::generate(self)).as_ref().map_err(Clone::clone)
    }

    /// Random elementary generator.
    pub fn random_generator<R: Rng + ?Sized>(&self, rng: &mut R) -> Transvection {
        let idx = self.indices();
        loop {
            let i = idx[rng.gen_range(0..idx.len())];
            let j = idx[rng.gen_range(0..idx.len())];
            if i == j {
                continue;
            }
            match self.kind {
                GroupKind::Linear => return Transvection::Gl { i, j, x: self.ring.random(rng) },
                GroupKind::Unitary { .. } if i == -j => {
                    let y = self.form_members[rng.gen_range(0..self.form_members.len())];
                    let x = self.ring.mul(self.ring.lambda_pow(-(sign(i) + 1) / 2), y);
                    return Transvection::Long { i, x };
                }
                GroupKind::Unitary { .. } => return Transvection::Short { i, j, x: self.ring.random(rng) },
            }
        }
    }

    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> ElemWord {
        (0..len).map(|_| self.random_generator(rng)).collect()
    }
}

/// The matrix all factors of a [`ConjWord`] are conjugates of.
#[derive(Debug)]
pub struct Base {
    group: Arc<Group>,
    sigma: Mat,
    sigma_inv: Mat,
}

impl Base {
    pub fn new(group: &Arc<Group>, sigma: Mat) -> Result<Arc<Self>> {
        if sigma.dim() != group.dim() {
            return Err(Error::DimMismatch(group.dim(), sigma.dim()));
        }
        let sigma_inv = group.inverse(&sigma)?;
        Ok(Arc::new(Base { group: group.clone(), sigma, sigma_inv }))
    }

    /// Base for `w sigma w^-1`.
    pub fn conjugated(self: &Arc<Self>, w: &ElemWord) -> Arc<Self> {
        Arc::new(Base {
            group: self.group.clone(),
            sigma: self.group.conj_mat(w, &self.sigma),
            sigma_inv: self.group.conj_mat(w, &self.sigma_inv),
        })
    }

    /// Base for `sigma^-1`.
    pub fn inverted(self: &Arc<Self>) -> Arc<Self> {
        Arc::new(Base { group: self.group.clone(), sigma: self.sigma_inv.clone(), sigma_inv: self.sigma.clone() })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn sigma(&self) -> &Mat {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &Mat {
        &self.sigma_inv
    }

    /// `sigma_ij`
    pub fn at(&self, i: i32, j: i32) -> RingElem {
        self.group.entry(&self.sigma, i, j)
    }

    /// `sigma'_ij`, the entry of the inverse.
    pub fn inv_at(&self, i: i32, j: i32) -> RingElem {
        self.group.entry(&self.sigma_inv, i, j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub conjugator: ElemWord,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// Metadata carried into traces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMeta {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub buckets: Vec<BucketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketJson {
    pub tag: String,
    pub coefficient: Vec<i64>,
}

/// A product of elementary sigma-conjugates together with its claimed value.
#[derive(Clone, Debug)]
pub struct ConjWord {
    base: Arc<Base>,
    factors: Vec<Factor>,
    target: Mat,
    target_inv: Mat,
    pub meta: TraceMeta,
}

impl ConjWord {
    pub fn empty(base: &Arc<Base>) -> Self {
        let e = base.group.identity();
        ConjWord {
            base: base.clone(),
            factors: Vec::new(),
            target: e.clone(),
            target_inv: e,
            meta: TraceMeta::default(),
        }
    }

    /// The one-factor word `sigma^sign`.
    pub fn sigma(base: &Arc<Base>, sign: i8) -> Self {
        let (target, target_inv) = if sign > 0 {
            (base.sigma.clone(), base.sigma_inv.clone())
        } else {
            (base.sigma_inv.clone(), base.sigma.clone())
        };
        ConjWord {
            base: base.clone(),
            factors: vec![Factor { conjugator: ElemWord::new(), sign: if sign > 0 { 1 } else { -1 } }],
            target,
            target_inv,
            meta: TraceMeta::default(),
        }
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.base.group
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn count(&self) -> usize {
        self.factors.len()
    }

    pub fn target(&self) -> &Mat {
        &self.target
    }

    fn same_base(&self, other: &ConjWord) -> Result<()> {
        if Arc::ptr_eq(&self.base, &other.base) || self.base.sigma == other.base.sigma {
            Ok(())
        } else {
            Err(Error::GuardFailed("words over different sigma".into()))
        }
    }

    /// `self * other`
    pub fn concat(mut self, other: ConjWord) -> Result<Self> {
        self.same_base(&other)?;
        let g = self.base.group.clone();
        self.target = g.mul(&self.target, &other.target);
        self.target_inv = g.mul(&other.target_inv, &self.target_inv);
        self.factors.extend(other.factors);
        self.meta.buckets.extend(other.meta.buckets);
        self.meta.flags.extend(other.meta.flags);
        Ok(self)
    }

    pub fn concat_all(base: &Arc<Base>, words: impl IntoIterator<Item = ConjWord>) -> Result<Self> {
        words.into_iter().try_fold(ConjWord::empty(base), |acc, w| acc.concat(w))
    }

    /// The inverse word; same count.
    pub fn invert(&self) -> Self {
        ConjWord {
            base: self.base.clone(),
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor { conjugator: f.conjugator.clone(), sign: -f.sign })
                .collect(),
            target: self.target_inv.clone(),
            target_inv: self.target.clone(),
            meta: self.meta.clone(),
        }
    }

    /// `e' w e'^-1`: every conjugator gets `e'` prepended; count preserved.
    pub fn conj_by(&self, e: &ElemWord) -> Self {
        let g = &self.base.group;
        ConjWord {
            base: self.base.clone(),
            factors: self.factors.iter().map(|f| Factor { conjugator: e.then(&f.conjugator), sign: f.sign }).collect(),
            target: g.conj_mat(e, &self.target),
            target_inv: g.conj_mat(e, &self.target_inv),
            meta: self.meta.clone(),
        }
    }

    /// `[e', w] = (e' w e'^-1) w^-1`; count doubles.
    pub fn commutator_with(&self, e: &ElemWord) -> Self {
        self.conj_by(e).concat(self.invert()).expect("same base")
    }

    /// Moves a word over `mu sigma mu^-1` to a word over `sigma` by
    /// appending `mu` to every conjugator. Count preserved.
    pub fn rebase(self, mu: &ElemWord, base: &Arc<Base>) -> Result<Self> {
        let g = &base.group;
        g.guard("rebase: base is not the stated conjugate", || g.conj_mat(mu, &base.sigma) == self.base.sigma)?;
        Ok(ConjWord {
            base: base.clone(),
            factors: self
                .factors
                .into_iter()
                .map(|f| Factor { conjugator: f.conjugator.then(mu), sign: f.sign })
                .collect(),
            target: self.target,
            target_inv: self.target_inv,
            meta: self.meta,
        })
    }

    /// Moves a word over `sigma^-1` to a word over `sigma` by flipping signs.
    pub fn rebase_inverse(self, base: &Arc<Base>) -> Result<Self> {
        base.group.guard("rebase_inverse: base is not sigma^-1", || self.base.sigma == base.sigma_inv)?;
        Ok(ConjWord {
            base: base.clone(),
            factors: self.factors.into_iter().map(|f| Factor { conjugator: f.conjugator, sign: -f.sign }).collect(),
            target: self.target,
            target_inv: self.target_inv,
            meta: self.meta,
        })
    }

    /// `self` is a word over `zeta`, and `inner` is a word over `sigma` with
    /// value `zeta`. Substitutes `inner` into every factor; the count
    /// multiplies by `inner.count()`.
    pub fn substitute(&self, inner: &ConjWord) -> Result<Self> {
        let g = &inner.base.group;
        g.guard("substitute: inner word does not evaluate to the outer base", || inner.target == self.base.sigma)?;
        let inv = inner.invert();
        let mut out = ConjWord::empty(&inner.base);
        for f in &self.factors {
            let piece = if f.sign > 0 { inner } else { &inv };
            out = out.concat(piece.conj_by(&f.conjugator))?;
        }
        out.meta = self.meta.clone();
        Ok(out)
    }

    /// Evaluates the factors and compares with the claimed target.
    pub fn evaluate(&self) -> Mat {
        let g = &self.base.group;
        let mut acc = g.identity();
        for f in &self.factors {
            let m = if f.sign > 0 { &self.base.sigma } else { &self.base.sigma_inv };
            acc = g.mul(&acc, &g.conj_mat(&f.conjugator, m));
        }
        acc
    }

    pub fn verify(&self) -> bool {
        self.evaluate() == self.target
    }

    /// Drops zero-parameter transvections from conjugators and cancels
    /// adjacent mutually inverse factors. Target unchanged.
    pub fn prune(&self) -> Self {
        let ring = self.base.group.ring();
        if self.base.sigma.is_identity(ring) {
            let mut out = ConjWord::empty(&self.base);
            out.meta = self.meta.clone();
            return out;
        }
        let mut stack: Vec<Factor> = Vec::new();
        for f in &self.factors {
            let conj = simplify(ring, &f.conjugator);
            if let Some(top) = stack.last() {
                if top.sign == -f.sign && top.conjugator == conj {
                    stack.pop();
                    continue;
                }
            }
            stack.push(Factor { conjugator: conj, sign: f.sign });
        }
        ConjWord {
            base: self.base.clone(),
            factors: stack,
            target: self.target.clone(),
            target_inv: self.target_inv.clone(),
            meta: self.meta.clone(),
        }
    }

    pub fn to_trace(&self, verified: bool) -> TraceJson {
        let ring = self.base.group.ring();
        TraceJson {
            sigma: self.base.sigma.to_json(ring),
            factors: self
                .factors
                .iter()
                .map(|f| FactorJson { conjugator: f.conjugator.to_json(ring), sign: f.sign })
                .collect(),
            claimed_target: self.target.to_json(ring),
            count: self.count(),
            verified,
            meta: self.meta.clone(),
        }
    }
}

fn simplify(ring: &Ring, w: &ElemWord) -> ElemWord {
    let mut out: Vec<Transvection> = Vec::with_capacity(w.len());
    for t in &w.0 {
        if ring.is_zero(t.param()) {
            continue;
        }
        if let Some(last) = out.last() {
            if std::mem::discriminant(last) == std::mem::discriminant(t) && last.indices() == t.indices() {
                let merged = last.with_param(ring.add(last.param(), t.param()));
                out.pop();
                if !ring.is_zero(merged.param()) {
                    out.push(merged);
                }
                continue;
            }
        }
        out.push(*t);
    }
    ElemWord(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub conjugator: Vec<TransvectionJson>,
    pub sign: i8,
}

/// One decomposition trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub sigma: MatJson,
    pub factors: Vec<FactorJson>,
    pub claimed_target: MatJson,
    pub count: usize,
    pub verified: bool,
    #[serde(flatten)]
    pub meta: TraceMeta,
}

/// Result of [`shuffle`]: the word for `^{b^-1}[a, bc]` plus the two
/// matrices of the split `[b^-1, a] [a, c]`.
#[derive(Clone, Debug)]
pub struct Shuffled {
    pub word: ConjWord,
    /// `[b^-1, a]`, elementary.
    pub elementary_part: Mat,
    /// `[a, c]`
    pub conjugate_part: Mat,
}

/// Given `bc` as a sigma-conjugate word, builds `^{b^-1}[a, bc]` with
/// `2 * count(bc)` factors and checks `^{b^-1}[a, bc] = [b^-1, a][a, c]`.
pub fn shuffle(a: &ElemWord, b: &ElemWord, bc: &ConjWord) -> Result<Shuffled> {
    let g = bc.group().clone();
    let ring = g.ring();
    let b_inv = b.inverse(ring);
    let word = bc.commutator_with(a).conj_by(&b_inv);
    let a_m = g.eval(a);
    let c = g.mul(&g.eval(&b_inv), bc.target());
    let elementary_part = g.commutator(&g.eval(&b_inv), &a_m)?;
    let conjugate_part = g.commutator(&a_m, &c)?;
    g.guard("shuffle identity ^{b^-1}[a,bc] = [b^-1,a][a,c]", || {
        g.mul(&elementary_part, &conjugate_part) == *word.target()
    })?;
    Ok(Shuffled { word, elementary_part, conjugate_part })
}

/// Pass/fail tallies from a relation check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relations: Vec<RelationResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResult {
    pub name: String,
    pub checked: usize,
    /// Index tuples outside the relation's domain.
    pub skipped: usize,
    pub failures: usize,
}

impl RelationReport {
    pub fn record(&mut self, name: &str, ok: bool) {
        let r = self.slot(name);
        r.checked += 1;
        if !ok {
            r.failures += 1;
        }
    }

    pub fn skip(&mut self, name: &str) {
        self.slot(name).skipped += 1;
    }

    fn slot(&mut self, name: &str) -> &mut RelationResult {
        if let Some(k) = self.relations.iter().position(|r| r.name == name) {
            &mut self.relations[k]
        } else {
            self.relations.push(RelationResult { name: name.into(), checked: 0, skipped: 0, failures: 0 });
            self.relations.last_mut().unwrap()
        }
    }

    pub fn get(&self, name: &str) -> Option<&RelationResult> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.failures == 0 && r.checked > 0)
    }
}

/// Ring elements to test relations on: every element when `|R|^2 <= samples`,
/// otherwise `samples` random pairs.
pub(crate) fn sample_pairs<R: Rng + ?Sized>(ring: &Ring, samples: usize, rng: &mut R) -> Vec<(RingElem, RingElem)> {
    match ring.size() {
        Some(s) if s.saturating_mul(s) <= samples => {
            let all: Vec<RingElem> = (0..s).map(|k| ring.element(k)).collect();
            all.iter().flat_map(|&x| all.iter().map(move |&y| (x, y))).collect()
        }
        _ => (0..samples).map(|_| (ring.random(rng), ring.random(rng))).collect(),
    }
}

/// True when `m - e` is supported in column `col` off the diagonal.
pub(crate) fn is_column_shape(ring: &Ring, m: &Mat, col: usize) -> bool {
    let d = m.dim();
    (0..d).all(|r| {
        (0..d).all(|c| {
            let v = m.get(r, c);
            if r == c {
                v == ring.one()
            } else if c == col {
                true
            } else {
                ring.is_zero(v)
            }
        })
    })
}
