//! Preimages under additive maps restricted to principal ideals.
//!
//! Given generators `g_1..g_m` and an additive map `f`, find multipliers
//! `X_1..X_m` with `sum_k f(X_k g_k) = target`. The ideal `I(g)` is the
//! additive span of `b g` over the additive basis `b` of `R`, so a
//! breadth-first search over the image subgroup suffices.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

pub(crate) fn solve_additive(
    ring: &Ring,
    gens: &[RingElem],
    f: impl Fn(RingElem) -> RingElem,
    target: RingElem,
) -> Result<Option<Vec<RingElem>>> {
    let mut steps = Vec::new();
    for (k, &g) in gens.iter().enumerate() {
        for b in ring.basis() {
            let img = f(ring.mul(b, g));
            if !ring.is_zero(img) {
                steps.push((k, b, img));
            }
        }
    }
    let budget = ring.budget();
    let mut parent: HashMap<RingElem, (RingElem, usize)> = HashMap::new();
    let zero = ring.zero();
    parent.insert(zero, (zero, usize::MAX));
    let mut queue = VecDeque::from([zero]);
    let mut found = target == zero;
    while let Some(cur) = queue.pop_front() {
        if found {
            break;
        }
        for (s, &(_, _, img)) in steps.iter().enumerate() {
            let next = ring.add(cur, img);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return Err(Error::BudgetExceeded { needed: parent.len() + 1, budget });
            }
            parent.insert(next, (cur, s));
            if next == target {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }
    if !found {
        return Ok(None);
    }
    let mut xs = vec![ring.zero(); gens.len()];
    let mut cur = target;
    while cur != zero {
        let (prev, s) = parent[&cur];
        let (k, b, _) = steps[s];
        xs[k] = ring.add(xs[k], b);
        cur = prev;
    }
    Ok(Some(xs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn ideal_membership_in_z12() {
        let r = Ring::new(RingSpec::integers_mod(12, 1)).unwrap();
        let xs = solve_additive(&r, &[r.from_int(4), r.from_int(6)], |a| a, r.from_int(2)).unwrap().unwrap();
        assert_eq!(r.add(r.mul(xs[0], r.from_int(4)), r.mul(xs[1], r.from_int(6))), r.from_int(2));
        assert!(solve_additive(&r, &[r.from_int(4)], |a| a, r.from_int(2)).unwrap().is_none());
    }

    #[test]
    fn antisymmetric_image_over_gaussian() {
        let r = Ring::new(RingSpec::gaussian(3, 1)).unwrap();
        let f = |a: RingElem| r.sub(a, r.involute(a));
        let g = r.add(r.one(), r.t());
        for target in r.elements().unwrap() {
            if let Some(xs) = solve_additive(&r, &[g], f, target).unwrap() {
                assert_eq!(f(r.mul(xs[0], g)), target);
            }
        }
    }
}
