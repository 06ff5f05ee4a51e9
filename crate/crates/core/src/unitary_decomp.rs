//! Decompositions for `U_2n(R, Lambda)`: `T_kl(x G)` for the three step
//! generators, `T_kl(sigma_ij)` (160 factors), the antidiagonal and diagonal
//! variants (320, 480, 960), and long root transvections carrying column
//! values `|sigma_*j|`.
//!
//! Every builder takes a scale `x`; the targets are linear in `x`, which is
//! what lets monomial routing absorb coefficients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hyperbolic::{column_factorization, epsilon, is_trivial_line, mat_vec, read_pattern, FormRingContext};
use crate::linalg::Mat;
use crate::ring::{Ring, RingElem};
use crate::solve::solve_additive;
use crate::words::{shuffle, Base, BucketJson, ConjWord, ElemWord, Group};

pub const ENTRY_COUNT: usize = 160;

fn unitary_group(base: &Arc<Base>) -> Result<&Arc<Group>> {
    let g = base.group();
    if g.is_linear() {
        return Err(Error::WrongGroup("expected a unitary group".into()));
    }
    Ok(g)
}

fn short_pair(g: &Group, i: i32, j: i32) -> Result<()> {
    if i == j || i == -j || !g.valid_index(i) || !g.valid_index(j) {
        Err(Error::BadIndex(format!("({i},{j})")))
    } else {
        Ok(())
    }
}

fn tw(g: &Group, i: i32, j: i32, x: RingElem) -> Result<ElemWord> {
    Ok(ElemWord::single(g.gen(i, j, x)?))
}

fn target(g: &Group, k: i32, l: i32, x: RingElem) -> Result<Mat> {
    Ok(g.matrix(&g.gen(k, l, x)?))
}

/// Shortest monomial word sending `(a,b)` to `(k,l)` and its coefficient
/// `c_a c_b^-1`, so that `^nu T_ab(y) = T_kl(c y)`.
fn route(g: &Group, from: (i32, i32), to: (i32, i32)) -> Result<(ElemWord, RingElem)> {
    if from == to {
        return Ok((ElemWord::new(), g.ring().one()));
    }
    let r = g.ring();
    g.monomials()?
        .routes(g, from, to)
        .into_iter()
        .min_by_key(|rt| rt.word.len())
        .map(|rt| (rt.word, r.mul(rt.ci, r.invert(rt.cj).expect("monomial coefficients are units"))))
        .ok_or_else(|| Error::GuardFailed(format!("no monomial route {from:?} -> {to:?}")))
}

/// Builds a word at its native position `native` with the scale adjusted so
/// that the routed word has target `T_kl(x G)`.
fn routed(
    g: &Group,
    native: (i32, i32),
    x: RingElem,
    k: i32,
    l: i32,
    build: impl FnOnce(RingElem) -> Result<ConjWord>,
) -> Result<ConjWord> {
    short_pair(g, k, l)?;
    let r = g.ring();
    let (nu, c) = route(g, native, (k, l))?;
    let inner = r.mul(x, r.invert(c).expect("unit"));
    Ok(build(inner)?.conj_by(&nu))
}

/// `T_kl(y) = T_-l,-k(-lambda^((eps(l) - eps(k))/2) conj(y))`
pub(crate) fn mirror(r: &Ring, k: i32, l: i32, y: RingElem) -> (i32, i32, RingElem) {
    (-l, -k, r.neg(r.mul(r.lambda_power(k, l), r.involute(y))))
}

fn tau_guards(g: &Group, base: &Base, tau: &ElemWord) -> Result<()> {
    let r = g.ring();
    let sigma = base.sigma();
    let st = g.mul(sigma, &g.eval(&tau.inverse(r)));
    g.guard("row 2 of sigma tau^-1 equals row 2 of sigma", || st.row(g.pos(2)) == sigma.row(g.pos(2)))?;
    let xi = g.mul(&st, base.sigma_inv());
    g.guard("row 2 of xi is trivial", || is_trivial_line(g, &xi, 2, true))?;
    g.guard("column -2 of xi is trivial", || is_trivial_line(g, &xi, -2, false))
}

fn step1_native(base: &Arc<Base>, x: RingElem) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    let s = |i, j| base.at(i, j);
    let c = |a| r.involute(a);
    let s23b = c(s(2, 3));
    let tau = ElemWord(vec![
        g.gen(2, 1, r.mul(s23b, s(2, 3)))?,
        g.gen(3, 1, r.neg(r.mul(s23b, s(2, 2))))?,
        g.gen(3, -2, r.mul(s23b, s(2, -1)))?,
        g.gen(3, -3, r.add(r.neg(r.mul(c(s(2, 2)), s(2, -1))), r.mul3(r.lambda_bar(), c(s(2, -1)), s(2, 2))))?,
    ]);
    tau_guards(g, base, &tau)?;
    let bc = ConjWord::sigma(base, 1).commutator_with(&tau);
    let split = shuffle(&tw(g, -1, 2, r.one())?, &tau, &bc)?;
    let want = r.mul3(r.lambda(), s23b, s(2, -1));
    g.guard("[tau^-1, T_-1,2(1)] = T_31(.) T_-1,1(z)", || {
        read_pattern(g, &split.elementary_part, &[(3, 1), (-1, 1)]).is_some_and(|xs| xs[0] == want)
    })?;
    g.guard("[T_-1,2(1), xi] is a product of T_i2", || column_factorization(g, &split.conjugate_part, 2).is_some())?;
    let w = split.word.commutator_with(&tw(g, 1, 2, r.one())?).commutator_with(&tw(
        g,
        -1,
        3,
        r.neg(r.mul(x, r.lambda_bar())),
    )?);
    let t = target(g, -1, 2, r.mul3(x, s23b, s(2, -1)))?;
    g.guard("step 1 target", || *w.target() == t)?;
    Ok(w)
}

fn step2_native(base: &Arc<Base>, x: RingElem) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    let s = |i, j| base.at(i, j);
    let c = |a| r.involute(a);
    let s23b = c(s(2, 3));
    let tau = ElemWord(vec![
        g.gen(1, -2, r.mul(s23b, s(2, 3)))?,
        g.gen(3, -2, r.neg(r.mul(s23b, s(2, 1))))?,
        g.gen(3, -1, r.mul3(r.lambda_bar(), s23b, s(2, 2)))?,
        g.gen(3, -3, r.sub(r.mul(c(s(2, 2)), s(2, 1)), r.mul3(r.lambda_bar(), c(s(2, 1)), s(2, 2))))?,
    ]);
    tau_guards(g, base, &tau)?;
    let bc = ConjWord::sigma(base, 1).commutator_with(&tau);
    let split = shuffle(&tw(g, -2, -1, r.one())?, &tau, &bc)?;
    let want = r.mul(s23b, s(2, 1));
    g.guard("[tau^-1, T_-2,-1(1)] = T_3,-1(.) T_1,-1(z)", || {
        read_pattern(g, &split.elementary_part, &[(3, -1), (1, -1)]).is_some_and(|xs| xs[0] == want)
    })?;
    g.guard("[T_-2,-1(1), xi] is a product of T_i2", || column_factorization(g, &split.conjugate_part, 2).is_some())?;
    let w = split.word.commutator_with(&tw(g, -2, 3, r.one())?).commutator_with(&tw(g, -1, 3, r.neg(x))?);
    let t = target(g, -2, 3, r.mul(x, want))?;
    g.guard("step 2 target", || *w.target() == t)?;
    Ok(w)
}

fn step3_native(base: &Arc<Base>, x: RingElem) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    let s = |i, j| base.at(i, j);
    let c = |a| r.involute(a);
    let (s22b, s23b) = (c(s(2, 2)), c(s(2, 3)));
    let tau = ElemWord(vec![
        g.gen(2, 1, r.neg(r.mul(s22b, s(2, 3))))?,
        g.gen(3, 1, r.mul(s22b, s(2, 2)))?,
        g.gen(2, -3, r.mul(s22b, s(2, -1)))?,
        g.gen(2, -2, r.sub(r.mul3(r.lambda_bar(), c(s(2, -1)), s(2, 3)), r.mul(s23b, s(2, -1))))?,
    ]);
    tau_guards(g, base, &tau)?;
    let bc = ConjWord::sigma(base, 1).commutator_with(&tau);
    let t32 = tw(g, 3, 2, r.one())?;
    let zeta = shuffle(&t32, &tau, &bc)?;
    let psi = ElemWord::commutator(r, &tau.inverse(r), &t32);
    g.guard("psi = T_31(.) T_3,-3(y) T_3,-2(z)", || {
        read_pattern(g, &g.eval(&psi), &[(3, 1), (3, -3), (3, -2)])
            .is_some_and(|xs| xs[0] == r.neg(r.mul(s22b, s(2, 3))))
    })?;
    g.guard("theta is a product of T_i2", || column_factorization(g, &zeta.conjugate_part, 2).is_some())?;
    let chi = shuffle(&tw(g, 1, 2, r.one())?, &psi, &zeta.word)?;
    g.guard("[psi^-1, T_12(1)] = T_32(.) T_3,-3(a) T_3,-1(b)", || {
        read_pattern(g, &chi.elementary_part, &[(3, 2), (3, -3), (3, -1)])
            .is_some_and(|xs| xs[0] == r.mul(s22b, s(2, 3)))
    })?;
    g.guard("[T_12(1), theta] = T_-2,2(d)", || read_pattern(g, &chi.conjugate_part, &[(-2, 2)]).is_some())?;
    let w = chi.word.commutator_with(&tw(g, 2, -1, r.one())?).commutator_with(&tw(g, -2, 3, c(x))?);
    let t = target(g, 1, 2, r.mul3(x, s23b, s(2, 2)))?;
    g.guard("step 3 target", || *w.target() == t)?;
    Ok(w)
}

/// 16 factors, target `T_kl(x conj(sigma_23) sigma_2,-1)`.
pub fn u_step1_word(base: &Arc<Base>, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
    routed(unitary_group(base)?, (-1, 2), x, k, l, |y| step1_native(base, y))
}

/// 16 factors, target `T_kl(x conj(sigma_23) sigma_21)`.
pub fn u_step2_word(base: &Arc<Base>, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
    routed(unitary_group(base)?, (-2, 3), x, k, l, |y| step2_native(base, y))
}

/// 32 factors, target `T_kl(x conj(sigma_23) sigma_22)`.
pub fn u_step3_word(base: &Arc<Base>, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
    routed(unitary_group(base)?, (1, 2), x, k, l, |y| step3_native(base, y))
}

/// A step word for the involuted generator, through index mirroring.
fn conj_bucket(
    base: &Arc<Base>,
    step: fn(&Arc<Base>, RingElem, i32, i32) -> Result<ConjWord>,
    y: RingElem,
    k: i32,
    l: i32,
) -> Result<ConjWord> {
    let (a, b, z) = mirror(base.group().ring(), k, l, y);
    step(base, z, a, b)
}

/// 160 factors, target `T_kl(x sigma_23)`.
fn entry_23(base: &Arc<Base>, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    short_pair(g, k, l)?;
    let s = |i, j| base.at(i, j);
    let c = |a| r.involute(a);
    let s23 = s(2, 3);
    let e12 = tw(g, 1, 2, r.neg(c(s23)))?;
    let tau4 = ConjWord::sigma(base, -1).concat(ConjWord::sigma(base, 1).conj_by(&e12))?;
    let mu = FormRingContext::from_group(g.clone())?;
    let mu = mu.p_word(1, 3)?.then(&mu.p_word(2, 1)?);
    let zeta = tau4.conj_by(&mu);
    let zbase = Base::new(g, zeta.target().clone())?;
    let main = u_step3_word(&zbase, x, k, l)?.substitute(&zeta)?;

    let (g1, g2, g3) = (r.mul(c(s23), s(2, -1)), r.mul(c(s23), s(2, 1)), r.mul(c(s23), s(2, 2)));
    let t11 = zbase.at(2, 2);
    let l1 = r.lambda();
    let coef = [
        ("G2", r.mul(s23, c(s(-1, -1)))),
        ("G1conj", r.neg(r.mul3(r.lambda_bar(), s23, s(-1, 1)))),
        ("G2conj", r.mul3(t11, s(-1, -1), s23)),
        ("G1", r.neg(r.mul3(t11, l1, r.add(r.mul(c(s(-1, 1)), s23), c(s(-1, 2)))))),
        ("G3conj", r.mul(t11, s(-1, -1))),
    ];
    let gens = [g2, c(g1), c(g2), g1, c(g3)];
    let diff = r.sub(s23, r.mul(c(zbase.at(2, 3)), zbase.at(2, 2)));
    let sum = coef.iter().zip(gens).fold(r.zero(), |acc, ((_, a), gn)| r.add(acc, r.mul(*a, gn)));
    if sum != diff {
        return Err(Error::ExpansionMismatch(format!(
            "sigma_23 - conj(zeta_23) zeta_22 = {:?}, buckets give {:?}",
            r.to_coeffs(diff),
            r.to_coeffs(sum)
        )));
    }
    let sc = |i: usize| r.mul(x, coef[i].1);
    let words = [
        u_step2_word(base, sc(0), k, l)?,
        conj_bucket(base, u_step1_word, sc(1), k, l)?,
        conj_bucket(base, u_step2_word, sc(2), k, l)?,
        u_step1_word(base, sc(3), k, l)?,
        conj_bucket(base, u_step3_word, sc(4), k, l)?,
    ];
    let mut w = ConjWord::concat_all(base, std::iter::once(main).chain(words))?;
    w.meta.buckets =
        coef.iter().map(|(tag, a)| BucketJson { tag: tag.to_string(), coefficient: r.to_coeffs(*a) }).collect();
    let t = target(g, k, l, r.mul(x, s23))?;
    g.guard("entry target", || *w.target() == t)?;
    Ok(w)
}

/// 160 factors, target `T_32(sigma_23)`.
pub fn u_entry_word_32(base: &Arc<Base>) -> Result<ConjWord> {
    entry_23(base, unitary_group(base)?.ring().one(), 3, 2)
}

/// 160 factors, target `T_kl(x sigma_ij)`.
pub fn u_scaled_entry_word(base: &Arc<Base>, x: RingElem, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    short_pair(g, i, j)?;
    let (mu, c) = route(g, (i, j), (2, 3))?;
    let y = r.mul(x, r.invert(c).expect("unit"));
    let w = entry_23(&base.conjugated(&mu), y, k, l)?.rebase(&mu, base)?;
    let t = target(g, k, l, r.mul(x, base.at(i, j)))?;
    g.guard("routed entry target", || *w.target() == t)?;
    Ok(w)
}

/// 160 factors, target `T_kl(sigma_ij)`.
pub fn u_entry_word(base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    u_scaled_entry_word(base, base.group().ring().one(), i, j, k, l)
}

/// 320 factors, target `T_kl(x sigma_i,-i)`.
pub fn u_scaled_antidiag_word(base: &Arc<Base>, x: RingElem, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    if !g.valid_index(i) {
        return Err(Error::BadIndex(format!("{i}")));
    }
    let j = crate::ortho_decomp::auxiliary(i);
    let shift = tw(g, j, i, r.one())?;
    let w = u_scaled_entry_word(&base.conjugated(&shift), x, j, -i, k, l)?
        .rebase(&shift, base)?
        .concat(u_scaled_entry_word(base, x, j, -i, k, l)?.invert())?;
    let t = target(g, k, l, r.mul(x, base.at(i, -i)))?;
    g.guard("antidiagonal target", || *w.target() == t)?;
    Ok(w)
}

/// 320 factors, target `T_kl(sigma_i,-i)`.
pub fn u_antidiag_word(base: &Arc<Base>, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    u_scaled_antidiag_word(base, base.group().ring().one(), i, k, l)
}

/// 480 factors, target `T_kl(x (sigma_ii - sigma_jj))`.
pub fn u_scaled_diag_diff_word(base: &Arc<Base>, x: RingElem, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    short_pair(g, i, j)?;
    let shift = tw(g, j, i, r.one())?;
    let w = u_scaled_entry_word(&base.conjugated(&shift), x, j, i, k, l)?
        .rebase(&shift, base)?
        .concat(u_scaled_entry_word(base, x, i, j, k, l)?)?
        .concat(u_scaled_entry_word(base, x, j, i, k, l)?.invert())?;
    let t = target(g, k, l, r.mul(x, r.sub(base.at(i, i), base.at(j, j))))?;
    g.guard("diagonal difference target", || *w.target() == t)?;
    Ok(w)
}

/// 480 factors, target `T_kl(sigma_ii - sigma_jj)`.
pub fn u_diag_diff_word(base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    u_scaled_diag_diff_word(base, base.group().ring().one(), i, j, k, l)
}

/// 960 factors, target `T_kl(x (sigma_ii - sigma_-i,-i))`.
pub fn u_scaled_opposite_diag_word(base: &Arc<Base>, x: RingElem, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    if !g.valid_index(i) {
        return Err(Error::BadIndex(format!("{i}")));
    }
    let j = crate::ortho_decomp::auxiliary(i);
    let w = u_scaled_diag_diff_word(base, x, i, j, k, l)?.concat(u_scaled_diag_diff_word(base, x, j, -i, k, l)?)?;
    let t = target(g, k, l, r.mul(x, r.sub(base.at(i, i), base.at(-i, -i))))?;
    g.guard("opposite diagonal target", || *w.target() == t)?;
    Ok(w)
}

/// 960 factors, target `T_kl(sigma_ii - sigma_-i,-i)`.
pub fn u_opposite_diag_word(base: &Arc<Base>, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    u_scaled_opposite_diag_word(base, base.group().ring().one(), i, k, l)
}

/// Where a ring element comes from, and how to build `T_kl(x * value)`.
#[derive(Clone, Copy, Debug)]
enum Src {
    Entry(i32, i32),
    /// entry of `sigma^-1`
    InvEntry(i32, i32),
    /// `sigma_i,-i`
    Antidiag(i32),
    /// `sigma'_i,-i`
    InvAntidiag(i32),
    /// entry `(i,j)` of `^{T_ab(1)} sigma`
    Shifted {
        a: i32,
        b: i32,
        i: i32,
        j: i32,
    },
    /// `sigma_ii - sigma_jj`
    DiagDiff(i32, i32),
}

impl Src {
    fn value(self, base: &Arc<Base>) -> Result<RingElem> {
        let r = base.group().ring();
        Ok(match self {
            Src::Entry(i, j) => base.at(i, j),
            Src::InvEntry(i, j) => base.inv_at(i, j),
            Src::Antidiag(i) => base.at(i, -i),
            Src::InvAntidiag(i) => base.inv_at(i, -i),
            Src::Shifted { a, b, i, j } => base.conjugated(&tw(base.group(), a, b, r.one())?).at(i, j),
            Src::DiagDiff(i, j) => r.sub(base.at(i, i), base.at(j, j)),
        })
    }

    fn word(self, base: &Arc<Base>, x: RingElem, k: i32, l: i32) -> Result<ConjWord> {
        match self {
            Src::Entry(i, j) => u_scaled_entry_word(base, x, i, j, k, l),
            Src::InvEntry(i, j) => u_scaled_entry_word(&base.inverted(), x, i, j, k, l)?.rebase_inverse(base),
            Src::Antidiag(i) => u_scaled_antidiag_word(base, x, i, k, l),
            Src::InvAntidiag(i) => u_scaled_antidiag_word(&base.inverted(), x, i, k, l)?.rebase_inverse(base),
            Src::Shifted { a, b, i, j } => {
                let shift = tw(base.group(), a, b, base.group().ring().one())?;
                u_scaled_entry_word(&base.conjugated(&shift), x, i, j, k, l)?.rebase(&shift, base)
            }
            Src::DiagDiff(i, j) => u_scaled_diag_diff_word(base, x, i, j, k, l),
        }
    }
}

/// `T_kl(want)` as a product of scaled source words, after checking
/// `want = sum x_s value_s`.
fn combo(base: &Arc<Base>, terms: &[(Src, RingElem)], k: i32, l: i32, want: RingElem) -> Result<ConjWord> {
    let r = base.group().ring();
    let mut sum = r.zero();
    for &(src, x) in terms {
        sum = r.add(sum, r.mul(x, src.value(base)?));
    }
    if sum != want {
        return Err(Error::ExpansionMismatch(format!(
            "T_{k},{l}: expected {:?}, sources give {:?}",
            r.to_coeffs(want),
            r.to_coeffs(sum)
        )));
    }
    let words = terms.iter().map(|&(src, x)| src.word(base, x, k, l)).collect::<Result<Vec<_>>>()?;
    ConjWord::concat_all(base, words)
}

/// `[T_ij(x), T_j,-i(value)] = T_i,-i(w - lambda^-eps(i) conj(w))` with `w = x value`.
fn r5_word(base: &Arc<Base>, i: i32, src: Src, x: RingElem) -> Result<ConjWord> {
    let g = base.group();
    let j = crate::ortho_decomp::auxiliary(i);
    Ok(src.word(base, g.ring().one(), j, -i)?.commutator_with(&tw(g, i, j, x)?))
}

fn r5_image(r: &Ring, i: i32, w: RingElem) -> RingElem {
    r.sub(w, r.mul(r.lambda_pow(-epsilon(i)), r.involute(w)))
}

/// `lambda^(-(eps(k) + 1)/2)`
fn value_twist(r: &Ring, k: i32) -> RingElem {
    r.lambda_pow(-(epsilon(k) + 1) / 2)
}

fn value_index(g: &Group, k: i32) -> Result<()> {
    if g.valid_index(k) {
        Ok(())
    } else {
        Err(Error::BadIndex(format!("{k}")))
    }
}

/// Monomial word sending `T_ab(y)` to `T_kl(c y)` for a prescribed `c`.
pub(crate) fn route_with_factor(g: &Group, from: (i32, i32), to: (i32, i32), c: RingElem) -> Result<ElemWord> {
    if from == to && c == g.ring().one() {
        return Ok(ElemWord::new());
    }
    let r = g.ring();
    g.monomials()?
        .routes(g, from, to)
        .into_iter()
        .filter(|rt| r.mul(rt.ci, r.invert(rt.cj).expect("unit")) == c)
        .min_by_key(|rt| rt.word.len())
        .map(|rt| rt.word)
        .ok_or_else(|| {
            Error::GuardFailed(format!("no monomial route {from:?} -> {to:?} with the required coefficient"))
        })
}

/// Bound on [`u_value_square_word`] for rank `n`.
pub fn value_square_bound(n: usize) -> usize {
    (2 * n + 17) * ENTRY_COUNT + 4
}

/// Bound on [`u_value_word`] for rank `n`.
pub fn value_bound(n: usize) -> usize {
    1600 * n + 4004
}

/// Count bound established for the first column, `1600n + 3044`.
pub fn value_bound_first_column(n: usize) -> usize {
    (10 * n + 19) * ENTRY_COUNT + 4
}

/// Target `T_k,-k(lambda^(-(eps(k)+1)/2) conj(x sigma_11) |sigma_*1| sigma_11 x)`,
/// at most `(2n+17) 160 + 4` factors.
pub fn u_value_square_word(base: &Arc<Base>, x: RingElem, k: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    value_index(g, k)?;
    let ctx = FormRingContext::from_group(g.clone())?;
    let s = |i, j| base.at(i, j);
    let c = |a| r.involute(a);
    let lb = r.lambda_bar();

    let mut vp = vec![r.zero(); g.dim()];
    vp[g.pos(-2)] = base.inv_at(-1, -1);
    vp[g.pos(-1)] = r.neg(base.inv_at(-1, -2));
    g.guard("v' = (0, .., 0, conj sigma_11, -conj sigma_21)", || {
        vp[g.pos(-2)] == c(s(1, 1)) && vp[g.pos(-1)] == r.neg(c(s(2, 1)))
    })?;
    let v = mat_vec(r, base.sigma_inv(), &vp);
    let (_, ev) = ctx.eichler(&v)?;
    let vb = |i: i32| c(v[g.pos(i)]);

    let xi = g.mul(&g.mul(base.sigma(), &g.eval(&ev.inverse(r))), base.sigma_inv());
    let alpha = r.sub(r.mul(s(-2, 1), s(1, 1)), r.mul3(r.lambda(), c(s(1, 1)), c(s(-2, 1))));
    let beta = r.add(r.mul(s(-1, 1), s(1, 1)), r.mul3(r.lambda(), c(s(2, 1)), c(s(-2, 1))));
    g.guard("column 2 of xi", || {
        g.indices().into_iter().filter(|&p| p != -2 && p != -1).all(|p| {
            let d = if p == 2 { r.one() } else { r.zero() };
            g.entry(&xi, p, 2) == r.add(d, r.mul(s(p, 1), s(1, 1)))
        }) && g.entry(&xi, -3, 1) == r.neg(r.mul(s(-3, 1), s(2, 1)))
            && g.entry(&xi, -2, 2) == alpha
            && g.entry(&xi, -1, 2) == beta
    })?;

    let tau = combo(base, &[(Src::Entry(-3, 1), s(2, 1))], -3, 1, r.mul(s(-3, 1), s(2, 1)))?.concat(combo(
        base,
        &[(Src::Entry(-3, 1), r.neg(s(1, 1)))],
        -3,
        2,
        r.neg(r.mul(s(-3, 1), s(1, 1))),
    )?)?;
    let xt = g.mul(&xi, tau.target());
    let corr = r.mul3(c(s(3, 1)), s(-3, 1), s(1, 1));
    let gamma = r.add(alpha, r.mul(c(s(1, 1)), corr));
    let delta = r.sub(beta, r.mul(c(s(2, 1)), corr));
    g.guard("row -3 of xi tau is trivial, gamma and delta in column 2", || {
        is_trivial_line(g, &xt, -3, true)
            && g.entry(&xt, -2, 2) == gamma
            && g.entry(&xt, -1, 2) == delta
            && r.is_zero(g.entry(&xt, -2, 3))
            && r.is_zero(g.entry(&xt, -1, 3))
    })?;

    let bc = ConjWord::sigma(base, 1).commutator_with(&ev).concat(tau)?;
    let split = shuffle(&tw(g, 2, -3, r.neg(x))?, &ev, &bc)?;
    let minor = r.sub(r.mul(s(1, 1), s(2, 2)), r.mul(s(1, 2), s(2, 1)));
    let e_part = read_pattern(g, &split.elementary_part, &[(1, -1), (1, -2), (1, -3)])
        .filter(|xs| {
            xs[1] == r.mul3(lb, c(x), vb(-3)) && xs[2] == r.neg(r.mul(x, vb(-2))) && xs[2] == r.neg(r.mul(x, minor))
        })
        .ok_or_else(|| Error::GuardFailed("shape of [T_*,-1(-v), T_2,-3(-x)]".into()))?;
    let (z, p1, q) = (e_part[0], e_part[1], e_part[2]);

    let rows: Vec<i32> = g.indices().into_iter().take_while(|&p| p != -3).filter(|&p| p != 3).collect();
    let mut pattern: Vec<(i32, i32)> = rows.iter().map(|&p| (p, -3)).collect();
    pattern.extend([(-2, -3), (-1, -3), (3, -3)]);
    let cp = read_pattern(g, &split.conjugate_part, &pattern)
        .filter(|xs| {
            rows.iter().zip(xs).all(|(&p, &a)| a == r.mul3(x, s(p, 1), s(1, 1)))
                && xs[rows.len()] == r.mul(x, gamma)
                && xs[rows.len() + 1] == r.mul(x, delta)
        })
        .ok_or_else(|| Error::GuardFailed("shape of [T_2,-3(-x), xi tau]".into()))?;
    let y = cp[cp.len() - 1];

    // T_3,-3(y) = (everything before it in zeta)^-1 zeta
    let gamma_terms = |x: RingElem| {
        vec![
            (Src::Entry(-2, 1), r.mul(x, s(1, 1))),
            (Src::InvEntry(-1, 2), r.neg(r.mul(x, c(s(1, 1))))),
            (Src::Entry(-3, 1), r.mul3(x, c(s(1, 1)), r.mul(c(s(3, 1)), s(1, 1)))),
        ]
    };
    let delta_terms = |x: RingElem| {
        vec![
            (Src::Shifted { a: -3, b: -1, i: -3, j: 1 }, r.mul(x, s(1, 1))),
            (Src::InvEntry(-1, 2), r.mul(x, c(s(2, 1)))),
            (Src::Entry(-3, 1), r.neg(r.add(r.mul(x, corr_21(r, base)), r.mul(x, s(1, 1))))),
        ]
    };
    let nx = r.neg(x);
    let mut pieces = vec![
        combo(base, &delta_terms(nx), -1, -3, r.mul(nx, delta))?,
        combo(base, &gamma_terms(nx), -2, -3, r.mul(nx, gamma))?,
    ];
    for &p in rows.iter().rev().filter(|&&p| p != 1) {
        pieces.push(combo(base, &[(Src::Entry(p, 1), r.mul(nx, s(1, 1)))], p, -3, r.mul3(nx, s(p, 1), s(1, 1)))?);
    }
    let f3 = r.add(q, r.mul3(x, s(1, 1), s(1, 1)));
    pieces.push(combo(
        base,
        &[(Src::DiagDiff(2, 1), r.mul(x, s(1, 1))), (Src::Entry(2, 1), r.neg(r.mul(x, s(1, 2))))],
        1,
        -3,
        r.neg(f3),
    )?);
    pieces.push(long_short_pair(base, x, z, p1)?);
    pieces.push(split.word);
    let word_y = ConjWord::concat_all(base, pieces)?;
    let ty = target(g, 3, -3, y)?;
    g.guard("T_3,-3(y) assembled", || *word_y.target() == ty)?;

    let col = ctx.column_value(base.sigma(), 1);
    let nval = r.mul(r.mul3(c(x), c(s(1, 1)), col), r.mul(s(1, 1), x));
    let want = r.mul(lb, nval);
    let gap = r.sub(want, y);
    let gens = [s(3, 1), s(-2, 1)];
    let xs = solve_additive(r, &gens, |w| r5_image(r, 3, w), gap)?.ok_or_else(|| {
        Error::GuardFailed("long root correction outside the (R5) image of I(sigma_31) + I(sigma_-2,1)".into())
    })?;
    let w3 = word_y.concat(r5_word(base, 3, Src::Entry(3, 1), xs[0])?)?.concat(r5_word(
        base,
        3,
        Src::Entry(-2, 1),
        xs[1],
    )?)?;
    let t3 = target(g, 3, -3, want)?;
    g.guard("T_3,-3(conj(lambda) N)", || *w3.target() == t3)?;

    let tw_k = value_twist(r, k);
    let nu = route_with_factor(g, (3, -3), (k, -k), r.mul(tw_k, r.lambda()))?;
    let mut w = w3.conj_by(&nu);
    let t = target(g, k, -k, r.mul(tw_k, nval))?;
    g.guard("value square target", || *w.target() == t)?;
    w.meta.bound = Some(value_square_bound(g.n()));
    w.meta.empirical_count = Some(w.count());
    Ok(w)
}

/// `conj(sigma_21) conj(sigma_31) sigma_11`
fn corr_21(r: &Ring, base: &Base) -> RingElem {
    r.mul3(r.involute(base.at(2, 1)), r.involute(base.at(3, 1)), base.at(1, 1))
}

/// `(T_1,-1(z) T_1,-2(p))^-1` as `^{T_-2,-1(u)} T_1,-2(-p)`.
fn long_short_pair(base: &Arc<Base>, x: RingElem, z: RingElem, p: RingElem) -> Result<ConjWord> {
    let g = base.group();
    let r = g.ring();
    let c = |a| r.involute(a);
    let s = |i, j| base.at(i, j);
    let lb = r.lambda_bar();
    let short = combo(
        base,
        &[(Src::Entry(2, 3), r.neg(r.mul3(lb, c(x), s(1, 1)))), (Src::Entry(1, 3), r.mul3(lb, c(x), s(2, 1)))],
        1,
        -2,
        r.neg(p),
    )?;
    let want = g.eval(&ElemWord(vec![g.gen(1, -2, r.neg(p))?, g.gen(1, -1, r.neg(z))?]));
    let tp = short.target().clone();
    let long_part = |u: RingElem| -> Result<RingElem> { Ok(g.entry(&g.conj_mat(&tw(g, -2, -1, u)?, &tp), 1, -1)) };
    let u = match solve_additive(r, &[r.one()], |u| long_part(u).unwrap_or_default(), r.neg(z))? {
        Some(us) => us[0],
        None => return Err(Error::GuardFailed("T_1,-1 factor not reachable by conjugating T_1,-2".into())),
    };
    let w = short.conj_by(&tw(g, -2, -1, u)?);
    g.guard("long/short pair", || *w.target() == want)?;
    Ok(w)
}

/// `T_k,-k(lambda^(-(eps(k)+1)/2) |sigma_*1|)`.
fn value_first_column(base: &Arc<Base>, k: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    let ctx = FormRingContext::from_group(g.clone())?;
    let c = |a| r.involute(a);
    let col = ctx.column_value(base.sigma(), 1);
    let tw_k = value_twist(r, k);
    let idx = g.indices();
    let a = |q: i32| r.mul(base.at(q, 1), base.inv_at(1, q));
    let src = |q: i32| {
        if q == -1 {
            Src::Antidiag(-1)
        } else {
            Src::Entry(q, 1)
        }
    };

    let mut pieces = vec![u_value_square_word(base, base.inv_at(1, 1), k)?];
    let i = crate::ortho_decomp::auxiliary(k);
    let xl = r.neg(r.mul(value_twist(r, i), col));
    for &q in idx.iter().filter(|&&q| q != 1) {
        let y = base.inv_at(1, q);
        let comm = src(q).word(base, y, -i, -k)?.commutator_with(&tw(g, i, -i, xl)?);
        let fix = src(q).word(base, r.neg(r.mul(xl, y)), i, -k)?;
        let piece = fix.concat(comm)?;
        let t = target(g, k, -k, r.mul(tw_k, r.mul3(c(a(q)), col, a(q))))?;
        g.guard("(R6) diagonal term", || *piece.target() == t)?;
        pieces.push(piece);
    }
    let mut cc = r.zero();
    for (n1, &q) in idx.iter().enumerate() {
        for &p in &idx[n1 + 1..] {
            cc = r.add(cc, r.mul(c(a(q)), a(p)));
        }
    }
    for i in 1..=g.n() as i32 {
        let s = if i == 1 { Src::Antidiag(-1) } else { Src::Entry(-i, 1) };
        pieces.push(r5_word(base, k, s, r.mul3(tw_k, cc, c(base.at(i, 1))))?);
    }
    let w = ConjWord::concat_all(base, pieces)?;
    let t = target(g, k, -k, r.mul(tw_k, col))?;
    g.guard("first column value target", || *w.target() == t)?;
    Ok(w)
}

/// `T_k,-k(lambda^(-(eps(k)+1)/2) |sigma_*j|)`, at most `1600n + 4004` factors.
pub fn u_value_word(base: &Arc<Base>, j: i32, k: i32) -> Result<ConjWord> {
    let g = unitary_group(base)?;
    let r = g.ring();
    value_index(g, j)?;
    value_index(g, k)?;
    let ctx = FormRingContext::from_group(g.clone())?;
    let mut w = if j == 1 {
        value_first_column(base, k)?
    } else {
        let (mu, cross) = match j {
            -1 => (ctx.p_word(1, 2)?.then(&ctx.p_word(2, -1)?), Some(2)),
            j if j > 0 => (ctx.p_word(1, j)?, None),
            j => (ctx.p_word(1, j)?, Some(1)),
        };
        let mut w = value_first_column(&base.conjugated(&mu), k)?.rebase(&mu, base)?;
        if let Some(i) = cross {
            // |sigma_*j| = |sigma^_*i| + (A1 - lambda conj A1) + (A2 - lambda conj A2)
            let tw_k = value_twist(r, k);
            let x1 = r.mul(tw_k, r.involute(base.at(i, j)));
            let x2 = r.mul3(tw_k, base.at(j, j), r.lambda_pow(-epsilon(j)));
            w = w.concat(r5_word(base, k, Src::Entry(-i, j), x1)?)?.concat(r5_word(
                base,
                k,
                Src::InvAntidiag(-j),
                x2,
            )?)?;
        }
        w
    };
    let col = ctx.column_value(base.sigma(), j);
    let t = target(g, k, -k, r.mul(value_twist(r, k), col))?;
    if *w.target() != t {
        return Err(Error::ExpansionMismatch(format!("value word for column {j} misses its target")));
    }
    w.meta.bound = Some(value_bound(g.n()));
    w.meta.empirical_count = Some(w.count());
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FormParam, RingSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn gaussian(m: u64, n: usize) -> FormRingContext {
        let ring = Arc::new(Ring::new(RingSpec::gaussian(m, 1)).unwrap());
        let form = FormParam::max(&ring).unwrap();
        FormRingContext::new(ring, n, form).unwrap()
    }

    pub fn symplectic(m: u64, n: usize) -> FormRingContext {
        let ring = Arc::new(Ring::new(RingSpec::integers_mod(m, -1)).unwrap());
        let form = FormParam::max(&ring).unwrap();
        FormRingContext::new(ring, n, form).unwrap()
    }

    #[test]
    fn steps_on_random_members() {
        for c in [gaussian(3, 3), symplectic(4, 3)] {
            let r = c.ring();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..4 {
                let base = c.base(c.random_member(&mut rng, 16, false).unwrap()).unwrap();
                let x = r.random(&mut rng);
                let (s23b, g) = (r.involute(base.at(2, 3)), |i, j| base.at(i, j));
                let w = u_step1_word(&base, x, 2, -3).unwrap();
                assert_eq!((w.count(), w.evaluate()), (16, c.T(2, -3, r.mul3(x, s23b, g(2, -1))).unwrap()));
                let w = u_step2_word(&base, x, -1, 3).unwrap();
                assert_eq!((w.count(), w.evaluate()), (16, c.T(-1, 3, r.mul3(x, s23b, g(2, 1))).unwrap()));
                let w = u_step3_word(&base, x, 3, 1).unwrap();
                assert_eq!((w.count(), w.evaluate()), (32, c.T(3, 1, r.mul3(x, s23b, g(2, 2))).unwrap()));
            }
        }
    }

    #[test]
    fn entry_word_on_random_members() {
        for c in [gaussian(3, 3), symplectic(4, 3)] {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            for _ in 0..3 {
                let base = c.base(c.random_member(&mut rng, 16, false).unwrap()).unwrap();
                let w = u_entry_word_32(&base).unwrap();
                assert_eq!((w.count(), w.evaluate()), (160, c.T(3, 2, base.at(2, 3)).unwrap()));
                let w = u_entry_word(&base, 1, -3, -2, 1).unwrap();
                assert_eq!((w.count(), w.evaluate()), (160, c.T(-2, 1, base.at(1, -3)).unwrap()));
            }
        }
    }

    #[test]
    fn value_square_on_random_members() {
        for c in [symplectic(3, 3), gaussian(3, 3)] {
            let r = c.ring();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for k in [3, -2] {
                let base = c.base(c.random_member(&mut rng, 16, false).unwrap()).unwrap();
                let x = r.random(&mut rng);
                let w = u_value_square_word(&base, x, k).unwrap();
                let (s11, col) = (base.at(1, 1), c.column_value(base.sigma(), 1));
                let n = r.mul(r.mul3(r.involute(x), r.involute(s11), col), r.mul(s11, x));
                assert_eq!(w.evaluate(), c.T(k, -k, r.mul(value_twist(r, k), n)).unwrap());
                assert!(w.count() <= value_square_bound(3), "{}", w.count());
            }
        }
    }

    #[test]
    fn value_word_all_columns() {
        let c = symplectic(3, 3);
        let r = c.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let base = c.base(c.random_member(&mut rng, 16, false).unwrap()).unwrap();
        for (j, k) in [(1, 2), (2, -1), (-2, 3), (-1, 1)] {
            let w = u_value_word(&base, j, k).unwrap();
            let col = c.column_value(base.sigma(), j);
            assert_eq!(w.evaluate(), c.T(k, -k, r.mul(value_twist(r, k), col)).unwrap());
            assert!(w.count() <= value_bound(3), "{}", w.count());
        }
    }
}
