//! Ideals and form ideals realized as element sets, congruence subgroup
//! membership, and a desk check of the sandwich inclusions
//! `E(level) <= H <= C(level)` for the normal closure `H` of a matrix.
//!
//! The lower inclusion is checked constructively: every element `x` of the
//! level ideal gets an explicit word for `T_12(x)` in conjugates of `sigma`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gln::GlContext;
use crate::hyperbolic::{epsilon, FormRingContext};
use crate::linalg::Mat;
use crate::ortho_decomp::{o_antidiag_word, o_diag_diff_word, o_entry_word, o_opposite_diag_word};
use crate::ring::{close_under_norms, ElemSet, FormParam, Ring, RingElem};
use crate::solve::solve_additive;
use crate::unitary_decomp::{
    mirror, route_with_factor, u_scaled_antidiag_word, u_scaled_diag_diff_word, u_scaled_entry_word,
    u_scaled_opposite_diag_word, u_value_word,
};
use crate::words::{Base, ConjWord, ElemWord, Group};

/// An ideal `I(X)` of a finite ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    gens: Vec<RingElem>,
    set: ElemSet,
}

impl Ideal {
    pub fn generated(ring: &Ring, gens: &[RingElem]) -> Result<Self> {
        let additive: Vec<RingElem> =
            gens.iter().flat_map(|&g| ring.basis().into_iter().map(move |b| ring.mul(b, g))).collect();
        Ok(Ideal { gens: gens.to_vec(), set: ElemSet::span(ring, &additive)? })
    }

    pub fn zero(ring: &Ring) -> Result<Self> {
        Self::generated(ring, &[])
    }

    pub fn generators(&self) -> &[RingElem] {
        &self.gens
    }

    /// Additive generators `t^k g`.
    pub fn additive_generators(&self, ring: &Ring) -> Vec<RingElem> {
        self.gens.iter().flat_map(|&g| ring.basis().into_iter().map(move |b| ring.mul(b, g))).collect()
    }

    pub fn contains(&self, ring: &Ring, a: RingElem) -> bool {
        self.set.contains(ring, a)
    }

    pub fn members(&self, ring: &Ring) -> Vec<RingElem> {
        self.set.members(ring).collect()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    /// Closure under addition and multiplication, by brute force.
    pub fn is_closed(&self, ring: &Ring) -> Result<bool> {
        let members = self.members(ring);
        let all: Vec<RingElem> = ring.elements()?.collect();
        Ok(members.iter().all(|&a| {
            members.iter().all(|&b| self.contains(ring, ring.add(a, b)))
                && all.iter().all(|&x| self.contains(ring, ring.mul(x, a)))
        }))
    }

    pub fn is_involution_stable(&self, ring: &Ring) -> bool {
        self.set.members(ring).all(|a| self.contains(ring, ring.involute(a)))
    }
}

/// Additive generators of `Gamma_min(I) = {x - lambda conj x} + <x y conj x>`.
pub fn gamma_min_generators(ring: &Ring, form: &FormParam, ideal: &Ideal) -> Vec<RingElem> {
    let add = ideal.additive_generators(ring);
    let mut gens: Vec<RingElem> = add.iter().map(|&a| ring.sub(a, ring.mul(ring.lambda(), ring.involute(a)))).collect();
    for &x in &add {
        for &y in form.generators() {
            gens.push(ring.mul3(x, y, ring.involute(x)));
        }
    }
    gens
}

/// A form ideal `(I, Gamma)`.
#[derive(Clone, Debug)]
pub struct FormIdeal {
    ideal: Ideal,
    gamma: ElemSet,
    gamma_gens: Vec<RingElem>,
}

impl FormIdeal {
    /// `Gamma` is generated by `Gamma_min(I)`, `extra`, and closed under
    /// `g -> x g conj(x)`; it must land inside `I` and `Lambda`.
    pub fn new(ring: &Ring, form: &FormParam, ideal: Ideal, extra: &[RingElem]) -> Result<Self> {
        let mut gens = gamma_min_generators(ring, form, &ideal);
        gens.extend_from_slice(extra);
        let (gamma, gamma_gens) = close_under_norms(ring, gens)?;
        Self::from_parts(ring, form, ideal, gamma, gamma_gens)
    }

    fn from_parts(
        ring: &Ring,
        form: &FormParam,
        ideal: Ideal,
        gamma: ElemSet,
        gamma_gens: Vec<RingElem>,
    ) -> Result<Self> {
        if !ideal.is_involution_stable(ring) {
            return Err(Error::InvalidFormParam);
        }
        if !gamma.members(ring).all(|y| ideal.contains(ring, y) && form.contains(ring, y)) {
            return Err(Error::InvalidFormParam);
        }
        Ok(FormIdeal { ideal, gamma, gamma_gens })
    }

    pub fn minimal(ring: &Ring, form: &FormParam, ideal: Ideal) -> Result<Self> {
        Self::new(ring, form, ideal, &[])
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gamma(&self) -> &ElemSet {
        &self.gamma
    }

    pub fn gamma_generators(&self) -> &[RingElem] {
        &self.gamma_gens
    }

    pub fn contains_gamma(&self, ring: &Ring, y: RingElem) -> bool {
        self.gamma.contains(ring, y)
    }
}

/// Entry data generating the level ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelSource {
    Entry(i32, i32),
    /// `sigma_i,-i`
    Antidiag(i32),
    /// `sigma_ii - sigma_jj`, `i != +-j`
    DiagDiff(i32, i32),
    /// `sigma_ii - sigma_-i,-i`
    OppositeDiag(i32),
}

impl LevelSource {
    pub fn value(self, base: &Base) -> RingElem {
        let r = base.group().ring();
        match self {
            LevelSource::Entry(i, j) => base.at(i, j),
            LevelSource::Antidiag(i) => base.at(i, -i),
            LevelSource::DiagDiff(i, j) => r.sub(base.at(i, i), base.at(j, j)),
            LevelSource::OppositeDiag(i) => r.sub(base.at(i, i), base.at(-i, -i)),
        }
    }
}

/// Off-diagonal entries and differences against the first diagonal entry.
pub fn level_sources(g: &Group) -> Vec<LevelSource> {
    let idx = g.indices();
    let mut out = Vec::new();
    for &i in &idx {
        for &j in &idx {
            if i == j {
                continue;
            }
            out.push(if i == -j { LevelSource::Antidiag(i) } else { LevelSource::Entry(i, j) });
        }
    }
    for &i in idx.iter().filter(|&&i| i != 1 && i != -1) {
        out.push(LevelSource::DiagDiff(i, 1));
    }
    if !g.is_linear() {
        out.push(LevelSource::OppositeDiag(1));
    }
    out
}

fn check_member(g: &Arc<Group>, sigma: &Mat) -> Result<()> {
    if sigma.dim() != g.dim() {
        return Err(Error::DimMismatch(g.dim(), sigma.dim()));
    }
    let ok = if g.is_linear() {
        g.inverse(sigma).is_ok()
    } else {
        FormRingContext::from_group(g.clone())?.is_unitary_member(sigma)?
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotMember)
    }
}

/// The ideal generated by all off-diagonal entries and diagonal differences.
pub fn level_of(g: &Arc<Group>, sigma: &Mat) -> Result<Ideal> {
    check_member(g, sigma)?;
    let base = Base::new(g, sigma.clone())?;
    let r = g.ring();
    let mut vals: Vec<RingElem> = level_sources(g).into_iter().map(|s| s.value(&base)).collect();
    vals.retain(|&v| !r.is_zero(v));
    vals.sort();
    vals.dedup();
    Ideal::generated(r, &vals)
}

/// `sigma = e mod I`.
pub fn is_in_principal(g: &Arc<Group>, sigma: &Mat, ideal: &Ideal) -> Result<bool> {
    check_member(g, sigma)?;
    let r = g.ring();
    let e = g.identity();
    Ok((0..g.dim()).all(|a| (0..g.dim()).all(|b| ideal.contains(r, r.sub(sigma.get(a, b), e.get(a, b))))))
}

/// Off-diagonal entries and diagonal differences lie in `I`.
pub fn is_in_full_congruence(g: &Arc<Group>, sigma: &Mat, ideal: &Ideal) -> Result<bool> {
    check_member(g, sigma)?;
    let base = Base::new(g, sigma.clone())?;
    let r = g.ring();
    let d = g.dim();
    let off = (0..d).all(|a| (0..d).all(|b| a == b || ideal.contains(r, sigma.get(a, b))));
    let diag = (0..d).all(|a| ideal.contains(r, r.sub(sigma.get(a, a), base.sigma().get(0, 0))));
    Ok(off && diag)
}

/// `sigma = e mod I` and every column value `|sigma_*j|` lies in `Gamma`.
pub fn is_in_unitary_principal(g: &Arc<Group>, sigma: &Mat, fi: &FormIdeal) -> Result<bool> {
    if g.is_linear() {
        return Err(Error::WrongGroup("expected a unitary group".into()));
    }
    if !is_in_principal(g, sigma, fi.ideal())? {
        return Ok(false);
    }
    let ctx = FormRingContext::from_group(g.clone())?;
    Ok(g.indices().into_iter().all(|j| fi.contains_gamma(g.ring(), ctx.column_value(sigma, j))))
}

/// `[sigma, T]` lies in the principal congruence subgroup for every
/// elementary generator `T`. Checking generators suffices because the
/// principal congruence subgroup is normal.
pub fn is_in_unitary_full(g: &Arc<Group>, sigma: &Mat, fi: &FormIdeal) -> Result<bool> {
    if !is_in_unitary_principal(g, &g.identity(), fi)? {
        return Ok(false);
    }
    check_member(g, sigma)?;
    let r = g.ring();
    let idx = g.indices();
    let elems: Vec<RingElem> = r.elements()?.collect();
    let longs: usize = g.form_members().len() * idx.len();
    let needed = idx.len() * (idx.len() - 2) * elems.len() + longs;
    if needed > r.budget() {
        return Err(Error::BudgetExceeded { needed, budget: r.budget() });
    }
    let check = |t: Mat| -> Result<bool> {
        let c = g.commutator(sigma, &t)?;
        is_in_unitary_principal(g, &c, fi)
    };
    for &i in &idx {
        for &j in &idx {
            if i == j || i == -j {
                continue;
            }
            for &x in &elems {
                if !check(g.matrix(&g.gen(i, j, x)?))? {
                    return Ok(false);
                }
            }
        }
        let twist = r.lambda_pow(-(epsilon(i) + 1) / 2);
        for &y in g.form_members() {
            if !check(g.matrix(&g.gen(i, -i, r.mul(twist, y))?))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Where an additive generator of `Gamma` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GammaSource {
    /// `a - lambda conj(a)`, `a` in `I`
    Antisym(RingElem),
    /// `x y conj(x)`, `x` in `I`, `y` in `Lambda`
    Norm(RingElem, RingElem),
    /// `|sigma_*j|`
    Column(i32),
    /// `z g conj(z)` for an earlier generator `g`
    Conj(RingElem, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SctReport {
    pub level_generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_generators: Option<Vec<Vec<i64>>>,
    pub upper_inclusion: bool,
    pub lower_inclusion_verified_elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_verified_generators: Option<usize>,
    pub failures: Vec<String>,
}

impl SctReport {
    pub fn all_pass(&self) -> bool {
        self.upper_inclusion && self.failures.is_empty()
    }
}

/// A level term: a source, possibly involuted.
#[derive(Clone, Copy, Debug)]
struct Term {
    src: LevelSource,
    conj: bool,
}

struct Desk<'a> {
    g: &'a Arc<Group>,
    base: Arc<Base>,
    terms: Vec<(Term, RingElem)>,
}

impl Desk<'_> {
    fn ring(&self) -> &Ring {
        self.g.ring()
    }

    fn tw(&self, i: i32, j: i32, x: RingElem) -> Result<ElemWord> {
        Ok(ElemWord::single(self.g.gen(i, j, x)?))
    }

    /// `T_kl(c v)` for the value `v` of one source.
    fn source_word(&self, src: LevelSource, c: RingElem, k: i32, l: i32) -> Result<ConjWord> {
        let g = self.g;
        let base = &self.base;
        if g.is_linear() {
            let ctx = GlContext::from_group(g.clone())?;
            let m = (1..=g.n() as i32).find(|&m| m != k && m != l).expect("n >= 3");
            return match src {
                LevelSource::Entry(i, j) => ctx.multiple_entry_word(base, c, i, j, k, l),
                LevelSource::DiagDiff(i, j) => {
                    Ok(ctx.diag_diff_word(base, i, j, m, l)?.commutator_with(&self.tw(k, m, c)?))
                }
                _ => Err(Error::WrongGroup("antidiagonal source in GL".into())),
            };
        }
        if g.is_orthogonal() {
            let m = (1..=g.n() as i32).find(|&m| m != k.abs() && m != l.abs()).expect("n >= 3");
            let inner = match src {
                LevelSource::Entry(i, j) => o_entry_word(base, i, j, m, l)?,
                LevelSource::Antidiag(i) => o_antidiag_word(base, i, m, l)?,
                LevelSource::DiagDiff(i, j) => o_diag_diff_word(base, i, j, m, l)?,
                LevelSource::OppositeDiag(i) => o_opposite_diag_word(base, i, m, l)?,
            };
            return Ok(inner.commutator_with(&self.tw(k, m, c)?));
        }
        match src {
            LevelSource::Entry(i, j) => u_scaled_entry_word(base, c, i, j, k, l),
            LevelSource::Antidiag(i) => u_scaled_antidiag_word(base, c, i, k, l),
            LevelSource::DiagDiff(i, j) => u_scaled_diag_diff_word(base, c, i, j, k, l),
            LevelSource::OppositeDiag(i) => u_scaled_opposite_diag_word(base, c, i, k, l),
        }
    }

    fn term_word(&self, t: Term, c: RingElem, k: i32, l: i32) -> Result<ConjWord> {
        if t.conj {
            let (a, b, z) = mirror(self.ring(), k, l, c);
            self.source_word(t.src, z, a, b)
        } else {
            self.source_word(t.src, c, k, l)
        }
    }

    /// `T_kl(x)` for `x` in the level ideal.
    fn ideal_word(&self, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
        let r = self.ring();
        let vals: Vec<RingElem> = self.terms.iter().map(|t| t.1).collect();
        let cs = solve_additive(r, &vals, |a| a, x)?
            .ok_or_else(|| Error::GuardFailed("element outside the level ideal".into()))?;
        let words = self
            .terms
            .iter()
            .zip(cs)
            .filter(|(_, c)| !r.is_zero(*c))
            .map(|(&(t, _), c)| self.term_word(t, c, k, l))
            .collect::<Result<Vec<_>>>()?;
        ConjWord::concat_all(&self.base, words)
    }

    /// `T_-1,1(y)` for one `Gamma` generator.
    fn gamma_word(&self, src: GammaSource, done: &[ConjWord], values: &[RingElem]) -> Result<ConjWord> {
        let g = self.g;
        let r = self.ring();
        let lb = r.lambda_bar();
        match src {
            GammaSource::Antisym(a) => {
                // [T_-1,2(c), T_21(v)] = T_-1,1(w - lambda conj w), w = c v
                let vals: Vec<RingElem> = self.terms.iter().map(|t| t.1).collect();
                let cs = solve_additive(r, &vals, |a| a, a)?
                    .ok_or_else(|| Error::GuardFailed("element outside the level ideal".into()))?;
                let mut words = Vec::new();
                for (&(t, _), c) in self.terms.iter().zip(cs) {
                    if !r.is_zero(c) {
                        words.push(self.term_word(t, r.one(), 2, 1)?.commutator_with(&self.tw(-1, 2, c)?));
                    }
                }
                ConjWord::concat_all(&self.base, words)
            }
            GammaSource::Norm(x, y) => {
                // [T_2,-2(a), T_-2,1(x)] = T_21(a x) T_-1,1(-lambda conj(x) a x), a = -conj(lambda) y
                let a = r.neg(r.mul(lb, y));
                let comm = self.ideal_word(x, -2, 1)?.commutator_with(&self.tw(2, -2, a)?);
                Ok(self.ideal_word(r.neg(r.mul(a, x)), 2, 1)?.concat(comm)?)
            }
            GammaSource::Column(j) => u_value_word(&self.base, j, -1),
            GammaSource::Conj(z, of) => {
                // move T_-1,1(g) to T_2,-2(a), a = -conj(lambda) g, then as for Norm
                let a = r.neg(r.mul(lb, values[of]));
                let nu = route_with_factor(g, (-1, 1), (2, -2), r.neg(lb))?;
                let long = done[of].conj_by(&nu);
                let comm = long.commutator_with(&self.tw(-2, 1, z)?).invert();
                Ok(self.ideal_word(r.neg(r.mul(a, z)), 2, 1)?.concat(comm)?)
            }
        }
    }
}

fn coeffs(r: &Ring, xs: &[RingElem]) -> Vec<Vec<i64>> {
    xs.iter().map(|&x| r.to_coeffs(x)).collect()
}

/// Computes the level of `sigma`, checks `sigma` against the full congruence
/// subgroup of that level, and builds verified words for `T_12(x)` for
/// every `x` in the level ideal (and `T_-1,1(y)` for the generators of
/// `Gamma` in the unitary case).
pub fn sct_desk_check(g: &Arc<Group>, sigma: &Mat) -> Result<SctReport> {
    check_member(g, sigma)?;
    let r = g.ring();
    let base = Base::new(g, sigma.clone())?;
    let mut terms: Vec<(Term, RingElem)> = Vec::new();
    for src in level_sources(g) {
        let v = src.value(&base);
        if !r.is_zero(v) && !terms.iter().any(|t| t.1 == v) {
            terms.push((Term { src, conj: false }, v));
        }
    }
    let mut report = SctReport::default();
    let mut vals: Vec<RingElem> = terms.iter().map(|t| t.1).collect();
    let mut ideal = Ideal::generated(r, &vals)?;
    if !g.is_linear() && !ideal.is_involution_stable(r) {
        report.failures.push("level ideal is not involution-stable; extended by conjugates".into());
        let extra: Vec<(Term, RingElem)> =
            terms.iter().map(|&(t, v)| (Term { src: t.src, conj: true }, r.involute(v))).collect();
        terms.extend(extra);
        vals = terms.iter().map(|t| t.1).collect();
        ideal = Ideal::generated(r, &vals)?;
    }
    report.level_generators = coeffs(r, ideal.generators());
    let desk = Desk { g, base: base.clone(), terms };

    let mut verified = 0;
    for x in ideal.members(r) {
        match desk.ideal_word(x, 1, 2) {
            Ok(w) if w.verify() && w.evaluate() == g.matrix(&g.gen(1, 2, x)?) => verified += 1,
            Ok(_) => report.failures.push(format!("word for T_12({:?}) does not verify", r.to_coeffs(x))),
            Err(e) => report.failures.push(format!("T_12({:?}): {e}", r.to_coeffs(x))),
        }
    }
    report.lower_inclusion_verified_elements = verified;

    if g.is_linear() || g.is_orthogonal() {
        report.upper_inclusion = is_in_full_congruence(g, sigma, &ideal)?;
        return Ok(report);
    }

    let form = g.form().expect("unitary").clone();
    let ctx = FormRingContext::from_group(g.clone())?;
    let mut sources: Vec<GammaSource> = Vec::new();
    for a in ideal.additive_generators(r) {
        sources.push(GammaSource::Antisym(a));
        for &y in form.generators() {
            sources.push(GammaSource::Norm(a, y));
        }
    }
    sources.extend(g.indices().into_iter().map(GammaSource::Column));
    let value = |s: GammaSource, values: &[RingElem]| match s {
        GammaSource::Antisym(a) => r.sub(a, r.mul(r.lambda(), r.involute(a))),
        GammaSource::Norm(x, y) => r.mul3(x, y, r.involute(x)),
        GammaSource::Column(j) => ctx.column_value(sigma, j),
        GammaSource::Conj(z, of) => r.mul3(z, values[of], r.involute(z)),
    };
    // keep only generators that enlarge the span, then close under norms
    let mut kept: Vec<GammaSource> = Vec::new();
    let mut values: Vec<RingElem> = Vec::new();
    let mut span = ElemSet::span(r, &[])?;
    for s in sources {
        let v = value(s, &values);
        if !span.contains(r, v) {
            kept.push(s);
            values.push(v);
            span = ElemSet::span(r, &values)?;
        }
    }
    let all: Vec<RingElem> = r.elements()?.collect();
    let mut i = 0;
    while i < kept.len() {
        for &z in &all {
            let v = r.mul3(z, values[i], r.involute(z));
            if !span.contains(r, v) {
                kept.push(GammaSource::Conj(z, i));
                values.push(v);
                span = ElemSet::span(r, &values)?;
            }
        }
        i += 1;
    }
    let fi = match FormIdeal::from_parts(r, &form, ideal, span, values.clone()) {
        Ok(fi) => fi,
        Err(e) => {
            report.failures.push(format!("extracted (I, Gamma) is not a form ideal: {e}"));
            return Ok(report);
        }
    };
    report.gamma_generators = Some(coeffs(r, &values));
    report.upper_inclusion = is_in_unitary_full(g, sigma, &fi)?;

    let mut done: Vec<ConjWord> = Vec::new();
    let mut ok = 0;
    for (n, &s) in kept.iter().enumerate() {
        let w = desk.gamma_word(s, &done, &values)?;
        let t = g.matrix(&g.gen(-1, 1, values[n])?);
        if *w.target() == t && w.verify() {
            ok += 1;
        } else {
            report.failures.push(format!("word for T_-1,1({:?}) does not verify", r.to_coeffs(values[n])));
        }
        done.push(w);
    }
    report.gamma_verified_generators = Some(ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn zm(m: u64) -> Arc<Ring> {
        Arc::new(Ring::new(RingSpec::integers_mod(m, 1)).unwrap())
    }

    #[test]
    fn level_of_transvection_in_z6() {
        let r = zm(6);
        let g = Arc::new(Group::linear(r.clone(), 3).unwrap());
        let s = g.matrix(&g.t(1, 2, r.from_int(3)));
        let lv = level_of(&g, &s).unwrap();
        assert_eq!(lv.members(&r), vec![r.zero(), r.from_int(3)]);
        assert!(lv.is_closed(&r).unwrap());
        assert!(is_in_principal(&g, &s, &lv).unwrap());
        let t1 = g.matrix(&g.t(1, 2, r.one()));
        assert!(!is_in_full_congruence(&g, &t1, &lv).unwrap());
    }

    #[test]
    fn scalar_matrices_have_zero_level() {
        let r = zm(6);
        let g = Arc::new(Group::linear(r.clone(), 3).unwrap());
        let s = Mat::from_ints(&r, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]]).unwrap();
        assert_eq!(level_of(&g, &s).unwrap().len(), 1);
    }

    #[test]
    fn gl_desk_check_t12_2_over_z4() {
        let r = zm(4);
        let g = Arc::new(Group::linear(r.clone(), 3).unwrap());
        let rep = sct_desk_check(&g, &g.matrix(&g.t(1, 2, r.from_int(2)))).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.lower_inclusion_verified_elements, 2);
    }

    #[test]
    fn unitary_principal_membership() {
        let r = zm(5);
        let ctx = FormRingContext::orthogonal(r.clone(), 3).unwrap();
        let g = ctx.group().clone();
        let form = g.form().unwrap().clone();
        let ideal = Ideal::generated(&r, &[r.one()]).unwrap();
        let fi = FormIdeal::minimal(&r, &form, ideal).unwrap();
        assert!(is_in_unitary_principal(&g, &ctx.T(1, 2, r.from_int(3)).unwrap(), &fi).unwrap());
        let zero = FormIdeal::minimal(&r, &form, Ideal::zero(&r).unwrap()).unwrap();
        assert!(!is_in_unitary_full(&g, &ctx.T(1, 3, r.one()).unwrap(), &zero).unwrap());
        assert!(is_in_unitary_full(&g, &g.identity(), &zero).unwrap());
    }

    #[test]
    fn orthogonal_desk_check_random() {
        use rand::SeedableRng;
        let r = zm(4);
        let ctx = FormRingContext::orthogonal(r.clone(), 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let s = ctx.random_member(&mut rng, 12, false).unwrap();
            let rep = sct_desk_check(ctx.group(), &s).unwrap();
            assert!(rep.all_pass(), "{rep:?}");
            assert_eq!(rep.lower_inclusion_verified_elements, level_of(ctx.group(), &s).unwrap().len());
        }
    }

    #[test]
    fn symplectic_desk_check() {
        use crate::ring::RingSpec;
        use rand::SeedableRng;
        let r = Arc::new(Ring::new(RingSpec::integers_mod(4, -1)).unwrap());
        let form = FormParam::max(&r).unwrap();
        let ctx = FormRingContext::new(r.clone(), 3, form).unwrap();
        let s = ctx.T(1, 2, r.from_int(2)).unwrap();
        let rep = sct_desk_check(ctx.group(), &s).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.lower_inclusion_verified_elements, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let s = ctx.random_member(&mut rng, 10, false).unwrap();
        let rep = sct_desk_check(ctx.group(), &s).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.gamma_verified_generators, rep.gamma_generators.as_ref().map(|g| g.len()));
    }
}
