//! The group generated by the monomial matrices `p_ab` (or `P_ab`), used
//! to move an entry of `sigma` to a prescribed position.
//!
//! A monomial `mu` acts by `mu e_b = c_b e_{pi(b)}`, so
//! `(mu sigma mu^-1)_{pi(i), pi(j)} = c_i sigma_ij c_j^-1`.

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::words::{ElemWord, Group};

#[derive(Clone, Debug)]
pub struct Route {
    /// Product of monomial generators, as transvections.
    pub word: ElemWord,
    pub ci: RingElem,
    pub cj: RingElem,
}

#[derive(Debug)]
struct Generator {
    word: ElemWord,
    perm: Vec<usize>,
    coef: Vec<RingElem>,
}

type Table = HashMap<(usize, usize), Vec<Route>>;

#[derive(Debug)]
pub struct MonomialGroup {
    gens: Vec<Generator>,
    tables: Mutex<HashMap<(usize, usize), std::sync::Arc<Table>>>,
}

impl MonomialGroup {
    pub(crate) fn generate(group: &Group) -> Result<Self> {
        let ring = group.ring();
        let one = ring.one();
        let idx = group.indices();
        let mut gens = Vec::new();
        for &a in &idx {
            for &b in &idx {
                if a == b || (!group.is_linear() && a == -b) {
                    continue;
                }
                let word =
                    ElemWord(vec![group.gen(a, b, one)?, group.gen(b, a, ring.neg(one))?, group.gen(a, b, one)?]);
                let m = group.eval(&word);
                let dim = group.dim();
                let mut perm = vec![0; dim];
                let mut coef = vec![ring.zero(); dim];
                for col in 0..dim {
                    let nz: Vec<usize> = (0..dim).filter(|&r| !ring.is_zero(m.get(r, col))).collect();
                    if nz.len() != 1 || !ring.is_unit(m.get(nz[0], col)) {
                        return Err(Error::GuardFailed(format!("P_{a},{b} is not monomial")));
                    }
                    perm[col] = nz[0];
                    coef[col] = m.get(nz[0], col);
                }
                gens.push(Generator { word, perm, coef });
            }
        }
        Ok(MonomialGroup { gens, tables: Mutex::new(HashMap::new()) })
    }

    fn table(&self, group: &Group, i: usize, j: usize) -> std::sync::Arc<Table> {
        if let Some(t) = self.tables.lock().unwrap().get(&(i, j)) {
            return t.clone();
        }
        let ring = group.ring();
        // breadth-first over (image of i, image of j, c_i, c_j)
        let start = (i, j, ring.one(), ring.one());
        let mut seen: HashMap<(usize, usize, RingElem, RingElem), ElemWord> = HashMap::new();
        seen.insert(start, ElemWord::new());
        let mut queue = VecDeque::from([start]);
        let mut table: Table = HashMap::new();
        while let Some(state) = queue.pop_front() {
            let word = seen[&state].clone();
            let (a, b, ca, cb) = state;
            table.entry((a, b)).or_default().push(Route { word: word.clone(), ci: ca, cj: cb });
            for g in &self.gens {
                let next = (g.perm[a], g.perm[b], ring.mul(g.coef[a], ca), ring.mul(g.coef[b], cb));
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next) {
                    e.insert(g.word.then(&word));
                    queue.push_back(next);
                }
            }
        }
        let table = std::sync::Arc::new(table);
        self.tables.lock().unwrap().insert((i, j), table.clone());
        table
    }

    /// All recorded monomials sending `e_i, e_j` to multiples of `e_k, e_l`,
    /// shortest first for each coefficient pair.
    pub fn routes(&self, group: &Group, from: (i32, i32), to: (i32, i32)) -> Vec<Route> {
        let t = self.table(group, group.pos(from.0), group.pos(from.1));
        t.get(&(group.pos(to.0), group.pos(to.1))).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FormParam, Ring, RingSpec};
    use std::sync::Arc;

    #[test]
    fn routes_conjugate_entries_as_claimed() {
        let ring = Arc::new(Ring::new(RingSpec::gaussian(5, 1)).unwrap());
        let form = FormParam::min(&ring).unwrap();
        let g = Group::unitary(ring.clone(), 3, form).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let sigma = g.eval(&g.random_word(&mut rng, 12));
        let mg = g.monomials().unwrap();
        for (from, to) in [((1, 2), (2, 3)), ((-1, 3), (2, 3)), ((2, -2), (3, -3)), ((-3, 1), (1, -2))] {
            let rs = mg.routes(&g, from, to);
            assert!(!rs.is_empty(), "{from:?} -> {to:?}");
            for r in rs {
                let c = g.conj_mat(&r.word, &sigma);
                let want = ring.mul(ring.mul(r.ci, g.entry(&sigma, from.0, from.1)), ring.invert(r.cj).unwrap());
                assert_eq!(g.entry(&c, to.0, to.1), want);
            }
        }
    }

    #[test]
    fn linear_routes_reach_every_pair() {
        let ring = Arc::new(Ring::new(RingSpec::integers_mod(7, 1)).unwrap());
        let g = Group::linear(ring, 4).unwrap();
        let mg = g.monomials().unwrap();
        for k in 1..=4 {
            for l in 1..=4 {
                if k != l {
                    assert!(!mg.routes(&g, (2, 3), (k, l)).is_empty());
                }
            }
        }
    }
}
