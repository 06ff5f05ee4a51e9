//! Decompositions for `O_2n(R)`: `T_kl(sigma_ij)` (8 factors),
//! `T_kl(sigma_i,-i)` (16), `T_kl(sigma_ii - sigma_jj)` (24) and
//! `T_kl(sigma_ii - sigma_-i,-i)` (48).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gln::route_pair;
use crate::hyperbolic::{column_factorization, is_trivial_line};
use crate::linalg::Mat;
use crate::ring::RingElem;
use crate::words::{shuffle, Base, ConjWord, ElemWord, Group};

fn orthogonal_group(base: &Arc<Base>) -> Result<&Arc<Group>> {
    let g = base.group();
    if !g.is_orthogonal() {
        return Err(Error::WrongGroup("expected O_2n".into()));
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

fn tw(g: &Group, i: i32, j: i32, x: RingElem) -> ElemWord {
    ElemWord::single(g.t(i, j, x))
}

fn target(g: &Group, k: i32, l: i32, x: RingElem) -> Mat {
    g.matrix(&g.t(k, l, x))
}

/// Smallest positive index different from `+-i`.
pub(crate) fn auxiliary(i: i32) -> i32 {
    (1..).find(|&j| j != i.abs()).unwrap()
}

/// 8 factors, target `T_32(sigma_23)`.
pub fn o_entry_word_23(base: &Arc<Base>) -> Result<ConjWord> {
    let g = orthogonal_group(base)?;
    let r = g.ring();
    let tau = ElemWord(vec![g.t(2, 1, r.neg(base.at(2, 3))), g.t(3, 1, base.at(2, 2)), g.t(2, -3, base.at(2, -1))]);
    let sigma = base.sigma();
    let st = g.mul(sigma, &g.eval(&tau.inverse(r)));
    g.guard("row 2 of sigma tau^-1 equals row 2 of sigma", || st.row(g.pos(2)) == sigma.row(g.pos(2)))?;
    let xi = g.mul(&st, base.sigma_inv());
    g.guard("row 2 of xi is trivial", || is_trivial_line(g, &xi, 2, true))?;
    g.guard("column -2 of xi is trivial", || is_trivial_line(g, &xi, -2, false))?;
    let tau_sigma = ConjWord::sigma(base, 1).commutator_with(&tau);
    let split = shuffle(&tw(g, 3, 2, r.one()), &tau, &tau_sigma)?;
    g.guard("[tau^-1, T_32(1)] = T_31(-sigma_23)", || split.elementary_part == target(g, 3, 1, r.neg(base.at(2, 3))))?;
    g.guard("[T_32(1), xi] is a product of T_i2", || column_factorization(g, &split.conjugate_part, 2).is_some())?;
    let w = split.word.commutator_with(&tw(g, 1, 2, r.one()));
    g.guard("entry word evaluates to T_32(sigma_23)", || *w.target() == target(g, 3, 2, base.at(2, 3)))?;
    Ok(w)
}

/// 8 factors, target `T_kl(sigma_ij)`.
pub fn o_entry_word(base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = orthogonal_group(base)?;
    let r = g.ring();
    short_pair(g, i, j)?;
    short_pair(g, k, l)?;
    let (mu, nu) = route_pair(g, (i, j), (2, 3), (3, 2), (k, l), |c, d| r.mul(c, d) == r.one())?;
    let w = o_entry_word_23(&base.conjugated(&mu.word))?.rebase(&mu.word, base)?.conj_by(&nu.word);
    g.guard("routed entry word target", || *w.target() == target(g, k, l, base.at(i, j)))?;
    Ok(w)
}

/// 16 factors, target `T_kl(sigma_i,-i)`.
pub fn o_antidiag_word(base: &Arc<Base>, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = orthogonal_group(base)?;
    let r = g.ring();
    if !g.valid_index(i) {
        return Err(Error::BadIndex(format!("{i}")));
    }
    let j = auxiliary(i);
    let shift = tw(g, j, i, r.one());
    let shifted = o_entry_word(&base.conjugated(&shift), j, -i, k, l)?.rebase(&shift, base)?;
    // the correction factor is T_kl(-sigma_j,-i)
    let mut w = shifted.concat(o_entry_word(base, j, -i, k, l)?.invert())?;
    w.meta.flags.push(format!("correction factor read as T_{k},{l}(-sigma_{j},{})", -i));
    g.guard("antidiagonal target", || *w.target() == target(g, k, l, base.at(i, -i)))?;
    Ok(w)
}

/// 24 factors, target `T_kl(sigma_ii - sigma_jj)`.
pub fn o_diag_diff_word(base: &Arc<Base>, i: i32, j: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = orthogonal_group(base)?;
    let r = g.ring();
    short_pair(g, i, j)?;
    let shift = tw(g, j, i, r.one());
    let w = o_entry_word(&base.conjugated(&shift), j, i, k, l)?
        .rebase(&shift, base)?
        .concat(o_entry_word(base, i, j, k, l)?)?
        .concat(o_entry_word(base, j, i, k, l)?.invert())?;
    let d = r.sub(base.at(i, i), base.at(j, j));
    g.guard("diagonal difference target", || *w.target() == target(g, k, l, d))?;
    Ok(w)
}

/// 48 factors, target `T_kl(sigma_ii - sigma_-i,-i)`.
pub fn o_opposite_diag_word(base: &Arc<Base>, i: i32, k: i32, l: i32) -> Result<ConjWord> {
    let g = orthogonal_group(base)?;
    let r = g.ring();
    let j = auxiliary(i);
    let w = o_diag_diff_word(base, i, j, k, l)?.concat(o_diag_diff_word(base, j, -i, k, l)?)?;
    let d = r.sub(base.at(i, i), base.at(-i, -i));
    g.guard("opposite diagonal target", || *w.target() == target(g, k, l, d))?;
    Ok(w)
}
