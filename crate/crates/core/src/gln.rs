//! `GL_n(R)`: generators, relations, and short decompositions of
//! `t_kl(sigma_ij)` and `t_kl(sigma_ii - sigma_jj)`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::monomial::Route;
use crate::ring::{Ring, RingElem};
use crate::words::{is_column_shape, sample_pairs, shuffle, Base, ConjWord, ElemWord, Group, RelationReport};

#[derive(Clone, Debug)]
pub struct GlContext {
    group: Arc<Group>,
}

impl GlContext {
    pub fn new(ring: Arc<Ring>, n: usize) -> Result<Self> {
        Ok(GlContext { group: Arc::new(Group::linear(ring, n)?) })
    }

    pub fn from_group(group: Arc<Group>) -> Result<Self> {
        if !group.is_linear() {
            return Err(Error::WrongGroup("expected GL_n".into()));
        }
        Ok(GlContext { group })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn ring(&self) -> &Ring {
        self.group.ring()
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn base(&self, sigma: Mat) -> Result<Arc<Base>> {
        Base::new(&self.group, sigma)
    }

    fn tw(&self, i: i32, j: i32, x: RingElem) -> ElemWord {
        ElemWord::single(self.group.t(i, j, x))
    }

    /// `t_ij(x)`
    pub fn t(&self, i: i32, j: i32, x: RingElem) -> Result<Mat> {
        Ok(self.group.matrix(&self.group.gen(i, j, x)?))
    }

    /// `p_ij = t_ij(1) t_ji(-1) t_ij(1)` as a word.
    pub fn p_word(&self, i: i32, j: i32) -> Result<ElemWord> {
        let r = self.ring();
        Ok(ElemWord(vec![
            self.group.gen(i, j, r.one())?,
            self.group.gen(j, i, r.neg(r.one()))?,
            self.group.gen(i, j, r.one())?,
        ]))
    }

    pub fn p(&self, i: i32, j: i32) -> Result<Mat> {
        Ok(self.group.eval(&self.p_word(i, j)?))
    }

    /// Checks additivity, commuting, the commutator formula and the
    /// monomial conjugation rules for every admissible index tuple.
    pub fn check_relations<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> RelationReport {
        let g = &self.group;
        let r = g.ring();
        let n = g.n() as i32;
        let pairs = sample_pairs(r, samples, rng);
        let mut report = RelationReport::default();
        let t = |i, j, x| g.matrix(&g.t(i, j, x));
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                for &(x, y) in &pairs {
                    report.record("R1", g.mul(&t(i, j, x), &t(i, j, y)) == t(i, j, r.add(x, y)));
                }
                for h in 1..=n {
                    for k in (1..=n).filter(|&k| k != h) {
                        if i == k || j == h {
                            report.skip("R2");
                            continue;
                        }
                        for &(x, y) in &pairs {
                            let c = g.commutator(&t(i, j, x), &t(h, k, y)).unwrap();
                            report.record("R2", c.is_identity(r));
                        }
                    }
                }
                for k in 1..=n {
                    if k == j {
                        continue;
                    }
                    if k == i {
                        report.skip("R3");
                        continue;
                    }
                    for &(x, y) in &pairs {
                        let c = g.commutator(&t(i, j, x), &t(j, k, y)).unwrap();
                        report.record("R3", c == t(i, k, r.mul(x, y)));
                    }
                    // i, j, k pairwise distinct
                    let pki = self.p_word(k, i).unwrap();
                    let pkj = self.p_word(k, j).unwrap();
                    for &(x, _) in pairs.iter().take(r.size().unwrap_or(samples).min(samples)) {
                        report.record("p_conj_row", g.conj_mat(&pki, &t(i, j, x)) == t(k, j, x));
                        report.record("p_conj_col", g.conj_mat(&pkj, &t(i, j, x)) == t(i, k, x));
                    }
                }
                let pij = self.p(i, j).unwrap();
                report.record("p_inverse", g.inverse(&pij).ok() == Some(self.p(j, i).unwrap()));
            }
        }
        report
    }

    /// Word with 8 factors and target `t_32(sigma_23)`.
    pub fn entry_word_23(&self, base: &Arc<Base>) -> Result<ConjWord> {
        let g = &self.group;
        let r = g.ring();
        let s23 = base.at(2, 3);
        let s22 = base.at(2, 2);
        let tau = ElemWord(vec![g.t(2, 1, r.neg(s23)), g.t(3, 1, s22)]);
        let tau_inv = tau.inverse(r);
        let sigma = base.sigma();
        let st = g.mul(sigma, &g.eval(&tau_inv));
        g.guard("row 2 of sigma tau^-1 equals row 2 of sigma", || st.row(1) == sigma.row(1))?;
        let xi = g.mul(&st, base.sigma_inv());
        g.guard("row 2 of xi is trivial", || {
            (0..g.dim()).all(|c| xi.get(1, c) == if c == 1 { r.one() } else { r.zero() })
        })?;
        let tau_sigma = ConjWord::sigma(base, 1).commutator_with(&tau);
        let split = shuffle(&self.tw(3, 2, r.one()), &tau, &tau_sigma)?;
        g.guard("[tau^-1, t_32(1)] = t_31(-sigma_23)", || split.elementary_part == g.matrix(&g.t(3, 1, r.neg(s23))))?;
        g.guard("[t_32(1), xi] is supported in column 2", || is_column_shape(r, &split.conjugate_part, 1))?;
        let w = split.word.commutator_with(&self.tw(1, 2, r.one()));
        g.guard("entry word evaluates to t_32(sigma_23)", || *w.target() == g.matrix(&g.t(3, 2, s23)))?;
        Ok(w)
    }

    /// Word with 8 factors and target `t_kl(sigma_ij)`.
    pub fn entry_word(&self, base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
        let g = &self.group;
        let r = g.ring();
        self.check_pair(i, j)?;
        self.check_pair(k, l)?;
        let (mu, nu) = route_pair(g, (i, j), (2, 3), (3, 2), (k, l), |c, d| r.mul(c, d) == r.one())?;
        let inner = self.entry_word_23(&base.conjugated(&mu.word))?;
        let w = inner.rebase(&mu.word, base)?.conj_by(&nu.word);
        g.guard("routed entry word target", || *w.target() == g.matrix(&g.t(k, l, base.at(i, j))))?;
        Ok(w)
    }

    /// Word with 24 factors and target `t_kl(sigma_ii - sigma_jj)`.
    pub fn diag_diff_word(&self, base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
        let g = &self.group;
        let r = g.ring();
        self.check_pair(i, j)?;
        let shift = self.tw(j, i, r.one());
        let shifted = self.entry_word(&base.conjugated(&shift), j, i, k, l)?.rebase(&shift, base)?;
        let w =
            shifted.concat(self.entry_word(base, i, j, k, l)?)?.concat(self.entry_word(base, j, i, k, l)?.invert())?;
        let d = r.sub(base.at(i, i), base.at(j, j));
        g.guard("diagonal difference target", || *w.target() == g.matrix(&g.t(k, l, d)))?;
        Ok(w)
    }

    /// Word with 16 factors and target `t_kl(x sigma_ij)`.
    pub fn multiple_entry_word(
        &self,
        base: &Arc<Base>,
        x: RingElem,
        i: i32,
        j: i32,
        k: i32,
        l: i32,
    ) -> Result<ConjWord> {
        let g = &self.group;
        let r = g.ring();
        self.check_pair(k, l)?;
        let m = (1..=g.n() as i32).find(|&m| m != k && m != l).expect("n >= 3");
        let w = self.entry_word(base, i, j, m, l)?.commutator_with(&self.tw(k, m, x));
        g.guard("multiple entry target", || *w.target() == g.matrix(&g.t(k, l, r.mul(x, base.at(i, j)))))?;
        Ok(w)
    }

    fn check_pair(&self, i: i32, j: i32) -> Result<()> {
        if i == j || !self.group.valid_index(i) || !self.group.valid_index(j) {
            Err(Error::BadIndex(format!("({i},{j})")))
        } else {
            Ok(())
        }
    }
}

/// Picks monomials `mu` moving `from` to `via` and `nu` moving `back` to
/// `to`, with coefficients `c = c_i/c_j` and `d` satisfying `accept(c, d)`.
/// Routes with `c = 1` are preferred, then shorter words.
pub(crate) fn route_pair(
    g: &Group,
    from: (i32, i32),
    via: (i32, i32),
    back: (i32, i32),
    to: (i32, i32),
    accept: impl Fn(RingElem, RingElem) -> bool,
) -> Result<(Route, Route)> {
    let r = g.ring();
    let mg = g.monomials()?;
    let factor = |rt: &Route| r.mul(rt.ci, r.invert(rt.cj).expect("monomial coefficients are units"));
    let mus = mg.routes(g, from, via);
    let nus = mg.routes(g, back, to);
    let mut best: Option<(bool, usize, &Route, &Route)> = None;
    for mu in &mus {
        let c = factor(mu);
        for nu in &nus {
            if !accept(c, factor(nu)) {
                continue;
            }
            let key = (c != r.one(), mu.word.len() + nu.word.len());
            if best.is_none_or(|b| key < (b.0, b.1)) {
                best = Some((key.0, key.1, mu, nu));
            }
        }
    }
    best.map(|(_, _, mu, nu)| (mu.clone(), nu.clone()))
        .ok_or_else(|| Error::GuardFailed(format!("no monomial route {from:?} -> {to:?}")))
}
