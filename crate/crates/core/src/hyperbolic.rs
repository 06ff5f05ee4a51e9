//! Hyperbolic unitary groups `U_2n(R, Lambda)` and their orthogonal
//! specialization: forms, membership, generators and relations.
//!
//! Basis order is `e_1, .., e_n, e_-n, .., e_-1`; see [`Group::pos`].

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ring::{sign, FormParam, Ring, RingElem};
use crate::words::{sample_pairs, Base, ElemWord, Group, RelationReport};

/// `epsilon(i)`
pub fn epsilon(i: i32) -> i32 {
    sign(i)
}

/// Matrix position of an index of `Omega` for rank `n`.
pub fn omega_pos(n: usize, i: i32) -> usize {
    if i > 0 {
        (i - 1) as usize
    } else {
        (2 * n as i32 + i) as usize
    }
}

#[derive(Clone, Debug)]
pub struct FormRingContext {
    group: Arc<Group>,
}

impl FormRingContext {
    pub fn new(ring: Arc<Ring>, n: usize, form: FormParam) -> Result<Self> {
        Ok(FormRingContext { group: Arc::new(Group::unitary(ring, n, form)?) })
    }

    /// `O_2n(R)`: trivial involution, `lambda = 1`, `Lambda = 0`.
    pub fn orthogonal(ring: Arc<Ring>, n: usize) -> Result<Self> {
        if !ring.involution_is_trivial() || ring.lambda() != ring.one() {
            return Err(Error::WrongGroup("orthogonal groups need trivial involution and lambda = 1".into()));
        }
        let form = FormParam::min(&ring)?;
        Self::new(ring, n, form)
    }

    pub fn from_group(group: Arc<Group>) -> Result<Self> {
        if group.is_linear() {
            return Err(Error::WrongGroup("expected a unitary group".into()));
        }
        Ok(FormRingContext { group })
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

    pub fn form(&self) -> &FormParam {
        self.group.form().expect("unitary group")
    }

    pub fn base(&self, sigma: Mat) -> Result<Arc<Base>> {
        Base::new(&self.group, sigma)
    }

    fn check_len(&self, v: &[RingElem]) -> Result<()> {
        if v.len() != self.group.dim() {
            Err(Error::DimMismatch(self.group.dim(), v.len()))
        } else {
            Ok(())
        }
    }

    fn at(&self, v: &[RingElem], i: i32) -> RingElem {
        v[self.group.pos(i)]
    }

    /// `f(v, w) = sum_{i>0} conj(v_i) w_-i`
    pub fn form_f(&self, v: &[RingElem], w: &[RingElem]) -> Result<RingElem> {
        self.check_len(v)?;
        self.check_len(w)?;
        let r = self.ring();
        Ok((1..=self.n() as i32).fold(r.zero(), |acc, i| r.add(acc, r.mul(r.involute(self.at(v, i)), self.at(w, -i)))))
    }

    /// `h(v, w) = f(v, w) + lambda sum_{i>0} conj(v_-i) w_i`
    pub fn form_h(&self, v: &[RingElem], w: &[RingElem]) -> Result<RingElem> {
        let r = self.ring();
        let back =
            (1..=self.n() as i32).fold(r.zero(), |acc, i| r.add(acc, r.mul(r.involute(self.at(v, -i)), self.at(w, i))));
        Ok(r.add(self.form_f(v, w)?, r.mul(r.lambda(), back)))
    }

    /// `|v| = f(v, v)`
    pub fn value(&self, v: &[RingElem]) -> Result<RingElem> {
        self.form_f(v, v)
    }

    /// `q(v) = q(w)`, i.e. `|v| - |w|` lies in `Lambda`.
    pub fn same_q(&self, v: &[RingElem], w: &[RingElem]) -> Result<bool> {
        let d = self.ring().sub(self.value(v)?, self.value(w)?);
        Ok(self.form().contains(self.ring(), d))
    }

    /// Row vector with `h(u, v) = polarity(u) v`.
    pub fn polarity(&self, v: &[RingElem]) -> Result<Vec<RingElem>> {
        self.check_len(v)?;
        let r = self.ring();
        Ok(self
            .group
            .indices()
            .into_iter()
            .map(|k| {
                let x = r.involute(self.at(v, -k));
                if k > 0 {
                    r.mul(r.lambda(), x)
                } else {
                    x
                }
            })
            .collect())
    }

    pub fn column(&self, m: &Mat, j: i32) -> Vec<RingElem> {
        m.col(self.group.pos(j))
    }

    /// `|sigma_*j|`
    pub fn column_value(&self, m: &Mat, j: i32) -> RingElem {
        self.value(&self.column(m, j)).expect("column of group dimension")
    }

    /// Membership via the inverse-entry identity and column values in `Lambda`.
    pub fn is_unitary_member(&self, sigma: &Mat) -> Result<bool> {
        let g = &self.group;
        let r = self.ring();
        if sigma.dim() != g.dim() {
            return Err(Error::DimMismatch(g.dim(), sigma.dim()));
        }
        let inv = g.inverse(sigma)?;
        let idx = g.indices();
        for &i in &idx {
            for &j in &idx {
                let want = r.mul(r.lambda_power(i, j), r.involute(g.entry(sigma, -j, -i)));
                if g.entry(&inv, i, j) != want {
                    return Ok(false);
                }
            }
        }
        Ok(idx.iter().all(|&j| self.form().contains(r, self.column_value(sigma, j))))
    }

    /// `T_ij(x)`; long root when `j = -i`.
    #[allow(non_snake_case)]
    pub fn T(&self, i: i32, j: i32, x: RingElem) -> Result<Mat> {
        Ok(self.group.matrix(&self.group.gen(i, j, x)?))
    }

    /// `P_ij = T_ij(1) T_ji(-1) T_ij(1)` as a word.
    pub fn p_word(&self, i: i32, j: i32) -> Result<ElemWord> {
        if i == -j {
            return Err(Error::BadIndex(format!("P_{i},{j}")));
        }
        let r = self.ring();
        Ok(ElemWord(vec![
            self.group.gen(i, j, r.one())?,
            self.group.gen(j, i, r.neg(r.one()))?,
            self.group.gen(i, j, r.one())?,
        ]))
    }

    #[allow(non_snake_case)]
    pub fn P(&self, i: i32, j: i32) -> Result<Mat> {
        Ok(self.group.eval(&self.p_word(i, j)?))
    }

    /// Checks the six unitary relations and the monomial conjugation rules.
    pub fn check_unitary_relations<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> RelationReport {
        let g = &self.group;
        let r = self.ring();
        let idx = g.indices();
        let pairs = sample_pairs(r, samples, rng);
        let lam = self.form_members_twisted();
        let mut rep = RelationReport::default();
        let t = |i: i32, j: i32, x| g.matrix(&g.t(i, j, x));
        let short = |i: i32, j: i32| i != j && i != -j;
        for &i in &idx {
            for &j in idx.iter().filter(|&&j| short(i, j)) {
                for &(x, y) in &pairs {
                    let mirrored = r.neg(r.mul(r.lambda_power(i, j), r.involute(x)));
                    rep.record("R1", t(i, j, x) == t(-j, -i, mirrored));
                    rep.record("R2", g.mul(&t(i, j, x), &t(i, j, y)) == t(i, j, r.add(x, y)));
                    // (R5)
                    let c = g.commutator(&t(i, j, x), &t(j, -i, y)).unwrap();
                    let z = r.sub(r.mul(x, y), r.mul3(r.lambda_pow(-epsilon(i)), r.involute(y), r.involute(x)));
                    rep.record("R5", g.gen(i, -i, z).map(|tz| g.matrix(&tz) == c).unwrap_or(false));
                }
                for &h in &idx {
                    for &k in idx.iter().filter(|&&k| short(h, k)) {
                        if h == j || h == -i || k == i || k == -j {
                            rep.skip("R3");
                            continue;
                        }
                        for &(x, y) in &pairs {
                            rep.record("R3", g.commutator(&t(i, j, x), &t(h, k, y)).unwrap().is_identity(r));
                        }
                    }
                }
                for &k in &idx {
                    if k == j || k == -j {
                        continue;
                    }
                    if !short(i, k) {
                        rep.skip("R4");
                        continue;
                    }
                    for &(x, y) in &pairs {
                        let c = g.commutator(&t(i, j, x), &t(j, k, y)).unwrap();
                        rep.record("R4", c == t(i, k, r.mul(x, y)));
                    }
                    let pki = self.p_word(k, i).unwrap();
                    let pkj = self.p_word(k, j).unwrap();
                    for &(x, _) in pairs.iter().take(samples.min(64)) {
                        rep.record("P_conj_row", g.conj_mat(&pki, &t(i, j, x)) == t(k, j, x));
                        rep.record("P_conj_col", g.conj_mat(&pkj, &t(i, j, x)) == t(i, k, x));
                    }
                    let pl = self.p_word(-k, -i).unwrap();
                    for &y in &lam[&i] {
                        let want = r.mul(r.lambda_pow((epsilon(i) - epsilon(k)) / 2), y);
                        rep.record("P_conj_long", g.conj_mat(&pl, &t(i, -i, y)) == t(k, -k, want));
                    }
                }
                // (R6)
                for &x in &lam[&i] {
                    for &(y, _) in pairs.iter().take(samples.min(64)) {
                        let c = g.commutator(&t(i, -i, x), &t(-i, j, y)).unwrap();
                        let e = (epsilon(j) - epsilon(-i)) / 2;
                        let z = r.neg(r.mul(r.lambda_pow(e), r.mul3(r.involute(y), x, y)));
                        let rhs = g.gen(-j, j, z).map(|tz| g.mul(&t(i, j, r.mul(x, y)), &g.matrix(&tz)));
                        rep.record("R6", rhs.map(|m| m == c).unwrap_or(false));
                    }
                }
                let pij = self.P(i, j).unwrap();
                rep.record("P_inverse", g.inverse(&pij).ok() == Some(self.P(j, i).unwrap()));
                rep.record("member", self.is_unitary_member(&pij).unwrap_or(false));
            }
            for &y in &lam[&i] {
                rep.record("member", self.is_unitary_member(&t(i, -i, y)).unwrap_or(false));
            }
        }
        rep
    }

    /// For each index `i`, the admissible long-root parameters `lambda^(-(eps(i)+1)/2) Lambda`.
    fn form_members_twisted(&self) -> std::collections::HashMap<i32, Vec<RingElem>> {
        let r = self.ring();
        self.group
            .indices()
            .into_iter()
            .map(|i| {
                let tw = r.lambda_pow(-(epsilon(i) + 1) / 2);
                (i, self.group.form_members().iter().map(|&y| r.mul(tw, y)).collect())
            })
            .collect()
    }

    /// `T_*,-1(v) = e + v e_-1^t - e_1 conj(lambda) polarity(v)` and its
    /// factorization into one long and `2n - 2` short root transvections.
    /// `v` must satisfy `q(v) = 0` and `v_-1 = 0`.
    pub fn eichler(&self, v: &[RingElem]) -> Result<(Mat, ElemWord)> {
        self.check_len(v)?;
        let g = &self.group;
        let r = self.ring();
        if !r.is_zero(self.at(v, -1)) {
            return Err(Error::BadVector);
        }
        let val = self.value(v)?;
        if !self.form().contains(r, val) {
            return Err(Error::NotIsotropic);
        }
        let lb = r.lambda_bar();
        let pol = self.polarity(v)?;
        let mut m = g.identity();
        let last = g.pos(-1);
        for (row, &vi) in v.iter().enumerate() {
            m.set(row, last, r.add(m.get(row, last), vi));
        }
        for (col, &pc) in pol.iter().enumerate() {
            m.set(0, col, r.sub(m.get(0, col), r.mul(lb, pc)));
        }
        let v1 = self.at(v, 1);
        let y = r.add(r.mul(lb, val), r.sub(v1, r.mul(lb, r.involute(v1))));
        let mut word = vec![g.gen(1, -1, y)?];
        for i in g.indices().into_iter().filter(|&i| i != 1 && i != -1) {
            word.push(g.gen(i, -1, self.at(v, i))?);
        }
        let word = ElemWord(word);
        g.guard("Eichler matrix equals its factorization", || g.eval(&word) == m)?;
        Ok((m, word))
    }

    /// Both sides of the conjugation formula
    /// `^sigma T_*,-1(v) = e + sigma v polarity(sigma_*1) - sigma_*1 conj(lambda) polarity(sigma v)`.
    pub fn eichler_conjugate_sides(&self, sigma: &Mat, v: &[RingElem]) -> Result<(Mat, Mat)> {
        let g = &self.group;
        let r = self.ring();
        let (t, _) = self.eichler(v)?;
        let lhs = crate::linalg::conj(r, &t, sigma)?;
        let sv = mat_vec(r, sigma, v);
        let s1 = self.column(sigma, 1);
        let p1 = self.polarity(&s1)?;
        let psv = self.polarity(&sv)?;
        let lb = r.lambda_bar();
        let mut rhs = g.identity();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let d = r.sub(r.mul(sv[a], p1[b]), r.mul3(s1[a], lb, psv[b]));
                rhs.set(a, b, r.add(rhs.get(a, b), d));
            }
        }
        Ok((lhs, rhs))
    }

    /// `|hat sigma_*i|` for `hat sigma = ^{P_ij} sigma`, by the case formula,
    /// checked against direct evaluation.
    pub fn hat_value_formula(&self, sigma: &Mat, i: i32, j: i32) -> Result<RingElem> {
        let g = &self.group;
        let r = self.ring();
        if i == j || i == -j || !g.valid_index(i) || !g.valid_index(j) {
            return Err(Error::BadIndex(format!("({i},{j})")));
        }
        let s = |a, b| g.entry(sigma, a, b);
        let base = self.column_value(sigma, j);
        // a - lambda conj(a)
        let twist = |a: RingElem| r.sub(a, r.mul(r.lambda(), r.involute(a)));
        let formula = match (epsilon(i), epsilon(j)) {
            (a, b) if a == b => base,
            (1, _) => {
                let a1 = r.mul(r.involute(s(i, j)), s(-i, j));
                let a2 = r.mul(r.involute(s(-j, j)), s(j, j));
                r.sub(r.sub(base, twist(a1)), twist(a2))
            }
            _ => {
                let a1 = r.mul(r.involute(s(-i, j)), s(i, j));
                let a2 = r.mul(r.involute(s(j, j)), s(-j, j));
                r.sub(r.sub(base, twist(a1)), twist(a2))
            }
        };
        let hat = g.conj_mat(&self.p_word(i, j)?, sigma);
        let direct = self.column_value(&hat, i);
        if formula != direct {
            return Err(Error::GuardFailed(format!("column value formula for P_{i},{j}")));
        }
        Ok(formula)
    }

    /// If column `k` of `sigma` is `e_k x`, row `-k` must be `conj(x^-1) e_-k^t`,
    /// and dually for rows. Vacuous cases count as holding.
    pub fn dual_row_column_check(&self, sigma: &Mat, k: i32, x: RingElem) -> bool {
        let g = &self.group;
        let r = self.ring();
        let Some(xi) = r.invert(x) else { return true };
        let y = r.involute(xi);
        let unit_vec = |idx: i32, v: RingElem| -> Vec<RingElem> {
            (0..g.dim()).map(|p| if p == g.pos(idx) { v } else { r.zero() }).collect()
        };
        let col_ok = sigma.col(g.pos(k)) != unit_vec(k, x) || sigma.row(g.pos(-k)) == unit_vec(-k, y);
        let row_ok = sigma.row(g.pos(k)) != unit_vec(k, x) || sigma.col(g.pos(-k)) == unit_vec(-k, y);
        col_ok && row_ok
    }

    /// `diag(u at 1, conj(u)^-1 at -1, 1 elsewhere)`.
    pub fn hyperbolic_unit(&self, u: RingElem) -> Result<Mat> {
        let r = self.ring();
        let ui = r.invert(u).ok_or(Error::NotInvertible)?;
        let mut m = self.group.identity();
        m.set(self.group.pos(1), self.group.pos(1), u);
        m.set(self.group.pos(-1), self.group.pos(-1), r.involute(ui));
        Ok(m)
    }

    /// Random element: a random elementary word, optionally followed by a
    /// random hyperbolic unit diagonal.
    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R, len: usize, with_unit: bool) -> Result<Mat> {
        let g = &self.group;
        let r = self.ring();
        let mut m = g.eval(&g.random_word(rng, len));
        if with_unit {
            let u = loop {
                let u = r.random(rng);
                if r.is_unit(u) {
                    break u;
                }
            };
            m = g.mul(&m, &self.hyperbolic_unit(u)?);
        }
        g.guard("random element is a member", || self.is_unitary_member(&m).unwrap_or(false))?;
        Ok(m)
    }
}

/// Reads `m = prod_{i != +-c} T_ic(x_i) T_-c,c(y)` (short roots in basis
/// order, then the long root) off column `c`; returns the factor word when
/// it reproduces `m` exactly.
pub(crate) fn column_factorization(g: &Group, m: &Mat, c: i32) -> Option<ElemWord> {
    let r = g.ring();
    let mut word: ElemWord =
        g.indices().into_iter().filter(|&i| i != c && i != -c).map(|i| g.t(i, c, g.entry(m, i, c))).collect();
    let rest = g.mul(&g.eval(&word.inverse(r)), m);
    let y = g.entry(&rest, -c, c);
    if !r.is_zero(y) {
        word.0.push(g.gen(-c, c, y).ok()?);
    }
    (g.eval(&word) == *m).then_some(word)
}

/// Parameters `x_p` with `m = prod_p T_{i_p j_p}(x_p)`, read off the
/// entries or by peeling factors from the left; checked by evaluation.
pub(crate) fn read_pattern(g: &Group, m: &Mat, pattern: &[(i32, i32)]) -> Option<Vec<RingElem>> {
    let r = g.ring();
    let build = |xs: &[RingElem]| -> Option<ElemWord> {
        pattern.iter().zip(xs).map(|(&(i, j), &x)| g.gen(i, j, x).ok()).collect()
    };
    let direct: Vec<RingElem> = pattern.iter().map(|&(i, j)| g.entry(m, i, j)).collect();
    if build(&direct).is_some_and(|w| g.eval(&w) == *m) {
        return Some(direct);
    }
    let mut cur = m.clone();
    let mut xs = Vec::with_capacity(pattern.len());
    for &(i, j) in pattern {
        let x = g.entry(&cur, i, j);
        let t = g.gen(i, j, x).ok()?;
        g.apply_left(&t.inverse(r), &mut cur);
        xs.push(x);
    }
    cur.is_identity(r).then_some(xs)
}

/// True when row `k` of `m` is `e_k^t` (`row = true`) or column `k` is `e_k`.
pub(crate) fn is_trivial_line(g: &Group, m: &Mat, k: i32, row: bool) -> bool {
    let r = g.ring();
    let p = g.pos(k);
    (0..g.dim()).all(|q| {
        let v = if row { m.get(p, q) } else { m.get(q, p) };
        v == if q == p { r.one() } else { r.zero() }
    })
}

pub(crate) fn mat_vec(r: &Ring, m: &Mat, v: &[RingElem]) -> Vec<RingElem> {
    (0..m.dim()).map(|a| (0..m.dim()).fold(r.zero(), |acc, b| r.add(acc, r.mul(m.get(a, b), v[b])))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FormParamKind, RingSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gaussian(m: u64, n: usize) -> FormRingContext {
        let ring = Arc::new(Ring::new(RingSpec::gaussian(m, 1)).unwrap());
        let form = FormParam::max(&ring).unwrap();
        FormRingContext::new(ring, n, form).unwrap()
    }

    fn symplectic(m: u64, kind: FormParamKind) -> FormRingContext {
        let ring = Arc::new(Ring::new(RingSpec::integers_mod(m, -1)).unwrap());
        let form = FormParam::new(&ring, kind).unwrap();
        FormRingContext::new(ring, 3, form).unwrap()
    }

    fn unit(c: &FormRingContext, i: i32) -> Vec<RingElem> {
        let mut v = vec![c.ring().zero(); c.group().dim()];
        v[c.group().pos(i)] = c.ring().one();
        v
    }

    #[test]
    fn forms_on_basis_vectors() {
        let c = gaussian(5, 3);
        let r = c.ring();
        assert_eq!(c.value(&unit(&c, 1)).unwrap(), r.zero());
        assert_eq!(c.form_h(&unit(&c, 1), &unit(&c, -1)).unwrap(), r.one());
        assert_eq!(c.polarity(&unit(&c, 1)).unwrap(), unit(&c, -1));
    }

    #[test]
    fn polarity_represents_h() {
        let c = gaussian(3, 3);
        let r = c.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let u: Vec<_> = (0..6).map(|_| r.random(&mut rng)).collect();
            let v: Vec<_> = (0..6).map(|_| r.random(&mut rng)).collect();
            let pu = c.polarity(&u).unwrap();
            let dot = pu.iter().zip(&v).fold(r.zero(), |a, (&p, &q)| r.add(a, r.mul(p, q)));
            assert_eq!(dot, c.form_h(&u, &v).unwrap());
        }
    }

    #[test]
    fn relations_exhaustive_symplectic_z3() {
        let c = symplectic(3, FormParamKind::Max);
        let rep = c.check_unitary_relations(81, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn relations_gaussian_sampled() {
        let c = gaussian(3, 3);
        let rep = c.check_unitary_relations(20, &mut ChaCha8Rng::seed_from_u64(4));
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn long_root_outside_form_parameter_is_rejected() {
        let c = symplectic(4, FormParamKind::Min);
        let r = c.ring();
        assert_eq!(c.T(1, -1, r.one()), Err(Error::FormParamViolation));
        assert!(c.T(1, -1, r.from_int(2)).is_ok());
    }

    #[test]
    fn embedded_gl_transvection_is_not_a_member() {
        let c = gaussian(5, 3);
        let r = c.ring();
        let mut m = c.group().identity();
        m.set(0, 1, r.one());
        assert!(!c.is_unitary_member(&m).unwrap());
        assert!(c.is_unitary_member(&c.T(1, 2, r.one()).unwrap()).unwrap());
    }

    #[test]
    fn eichler_single_short_root() {
        let c = gaussian(5, 3);
        let r = c.ring();
        let x = r.from_coeffs(&[2, 1]);
        let mut v = vec![r.zero(); 6];
        v[c.group().pos(2)] = x;
        let (m, w) = c.eichler(&v).unwrap();
        assert_eq!(m, c.T(2, -1, x).unwrap());
        assert_eq!(w.len(), 5);
        let (z, _) = c.eichler(&[r.zero(); 6]).unwrap();
        assert!(z.is_identity(r));
        assert_eq!(c.eichler(&unit(&c, -1)), Err(Error::BadVector));
    }

    #[test]
    fn hat_value_identity_is_zero() {
        let c = symplectic(4, FormParamKind::Min);
        let e = c.group().identity();
        for (i, j) in [(1, 2), (1, -2), (-3, 1), (-1, -2)] {
            assert_eq!(c.hat_value_formula(&e, i, j).unwrap(), c.ring().zero());
        }
    }

    #[test]
    fn dual_row_column_on_hyperbolic_unit() {
        let c = gaussian(5, 3);
        let r = c.ring();
        let u = r.from_coeffs(&[1, 1]);
        let d = c.hyperbolic_unit(u).unwrap();
        assert!(c.is_unitary_member(&d).unwrap());
        assert!(c.dual_row_column_check(&d, 1, u));
        let row = d.row(c.group().pos(-1));
        assert_eq!(row[c.group().pos(-1)], r.involute(r.invert(u).unwrap()));
    }

    #[test]
    fn orthogonal_transvection_shape() {
        let ring = Arc::new(Ring::new(RingSpec::integers_mod(5, 1)).unwrap());
        let c = FormRingContext::orthogonal(ring, 3).unwrap();
        let r = c.ring();
        let x = r.from_int(3);
        let mut want = c.group().identity();
        want.set(c.group().pos(1), c.group().pos(-2), x);
        want.set(c.group().pos(2), c.group().pos(-1), r.neg(x));
        assert_eq!(c.T(1, -2, x).unwrap(), want);
    }

    fn random_isotropic(c: &FormRingContext, rng: &mut ChaCha8Rng) -> Vec<RingElem> {
        let r = c.ring();
        loop {
            let mut v: Vec<_> = (0..c.group().dim()).map(|_| r.random(rng)).collect();
            v[c.group().pos(-1)] = r.zero();
            if c.form().contains(r, c.value(&v).unwrap()) {
                return v;
            }
        }
    }

    #[test]
    fn eichler_conjugation_formula_random() {
        let c = gaussian(5, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let sigma = c.random_member(&mut rng, 10, true).unwrap();
            let v = random_isotropic(&c, &mut rng);
            let (l, rr) = c.eichler_conjugate_sides(&sigma, &v).unwrap();
            assert_eq!(l, rr);
            let (t, _) = c.eichler(&v).unwrap();
            let neg: Vec<_> = v.iter().map(|&x| c.ring().neg(x)).collect();
            assert_eq!(c.group().inverse(&t).unwrap(), c.eichler(&neg).unwrap().0);
        }
    }

    #[test]
    fn hat_value_formula_random() {
        for c in [gaussian(3, 3), symplectic(4, FormParamKind::Min)] {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..10 {
                let sigma = c.random_member(&mut rng, 12, false).unwrap();
                for &i in &c.group().indices() {
                    for &j in &c.group().indices() {
                        if i != j && i != -j {
                            c.hat_value_formula(&sigma, i, j).unwrap();
                        }
                    }
                }
            }
        }
    }
}
