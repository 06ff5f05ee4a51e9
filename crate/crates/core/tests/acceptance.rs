//! Acceptance gate: one pass/fail line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use sandwich::campaign::{par_map, random_elementary, run_campaign, trial_rng, Target, TrialRecord};
use sandwich::congruence::{level_of, sct_desk_check};
use sandwich::gln::GlContext;
use sandwich::hyperbolic::FormRingContext;
use sandwich::unitary_decomp::{u_step1_word, u_step2_word, u_step3_word, value_bound, value_bound_first_column};
use sandwich::{Error, FormParam, Group, InvolutionKind, Mat, Ring, RingSpec};

static GUARD_FAILURES: AtomicUsize = AtomicUsize::new(0);

fn note_error(e: &Error) {
    if matches!(e, Error::GuardFailed(_)) {
        GUARD_FAILURES.fetch_add(1, Ordering::Relaxed);
    }
}

fn note_records(recs: &[TrialRecord]) {
    GUARD_FAILURES.fetch_add(recs.iter().filter(|r| r.guard_failed()).count(), Ordering::Relaxed);
}

fn ring(spec: RingSpec) -> Arc<Ring> {
    Arc::new(Ring::new(spec).unwrap())
}

fn zm(m: u64, lambda: i64) -> Arc<Ring> {
    ring(RingSpec::integers_mod(m, lambda))
}

fn gl(r: Arc<Ring>, n: usize) -> Arc<Group> {
    Arc::new(Group::linear(r, n).unwrap().with_strict_guards(true))
}

fn ortho(r: Arc<Ring>, n: usize) -> Arc<Group> {
    let form = FormParam::min(&r).unwrap();
    Arc::new(Group::unitary(r, n, form).unwrap().with_strict_guards(true))
}

fn unitary_max(r: Arc<Ring>, n: usize) -> Arc<Group> {
    let form = FormParam::max(&r).unwrap();
    Arc::new(Group::unitary(r, n, form).unwrap().with_strict_guards(true))
}

fn gaussian_trivial(m: u64) -> Arc<Ring> {
    ring(RingSpec { m, f: Some(vec![1, 0, 1]), involution: InvolutionKind::Trivial, c: 0, lambda: vec![1] })
}

fn report(n: usize, name: &str, ok: bool, detail: String, t0: Instant) -> bool {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {name}: {detail} ({:.1}s)", t0.elapsed().as_secs_f64());
    ok
}

fn summarize(recs: &[TrialRecord]) -> (usize, usize) {
    (recs.iter().filter(|r| r.passed()).count(), recs.len())
}

fn relations() -> bool {
    let t0 = Instant::now();
    let mut ok = true;
    let mut rng = trial_rng(1, 0);
    let rings = [zm(2, 1), zm(3, 1), zm(4, 1), gaussian_trivial(3)];
    for r in &rings {
        let rep = GlContext::from_group(gl(r.clone(), 3)).unwrap().check_relations(10_000, &mut rng);
        ok &= rep.all_pass();
        let rep = FormRingContext::from_group(ortho(r.clone(), 3)).unwrap().check_unitary_relations(10_000, &mut rng);
        ok &= rep.all_pass();
    }
    let unitary = [zm(2, -1), zm(3, -1), zm(4, -1), ring(RingSpec::gaussian(3, 1)), ring(RingSpec::gaussian(3, -1))];
    for r in &unitary {
        let rep =
            FormRingContext::from_group(unitary_max(r.clone(), 3)).unwrap().check_unitary_relations(10_000, &mut rng);
        ok &= rep.all_pass();
    }
    let detail = "GL and O over Z/2, Z/3, Z/4, Z[i]/3; U over 5 form rings; exhaustive, n=3".to_string();
    ok &= t0.elapsed().as_secs() < 60;
    report(1, "relation suites", ok, detail, t0)
}

fn gl_campaigns() -> bool {
    let t0 = Instant::now();
    let mut pass = 0;
    let mut total = 0;
    for (n, m) in [(3, 4), (3, 5), (4, 6), (5, 9)] {
        let g = gl(zm(m, 1), n);
        for t in [Target::GlEntry, Target::GlDiagdiff] {
            let recs = run_campaign(&g, t, 100 + m, 200, 24);
            note_records(&recs);
            let (p, c) = summarize(&recs);
            pass += p;
            total += c;
        }
    }
    let ok = pass == total && t0.elapsed().as_secs() < 120;
    report(2, "GL decompositions (counts 8/24)", ok, format!("{pass}/{total} verified with exact counts"), t0)
}

fn o_campaigns() -> bool {
    let t0 = Instant::now();
    let mut pass = 0;
    let mut total = 0;
    for (n, m) in [(3, 4), (3, 5), (4, 5)] {
        let g = ortho(zm(m, 1), n);
        for t in [Target::OEntry, Target::OAntidiag, Target::ODiagdiff, Target::OOppdiag] {
            let recs = run_campaign(&g, t, 200 + m, 200, 24);
            note_records(&recs);
            let (p, c) = summarize(&recs);
            pass += p;
            total += c;
        }
    }
    let ok = pass == total && t0.elapsed().as_secs() < 180;
    report(3, "O decompositions (counts 8/16/24/48)", ok, format!("{pass}/{total} verified with exact counts"), t0)
}

fn unitary_configs() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("symplectic Z/3", unitary_max(zm(3, -1), 3)),
        ("symplectic Z/4", unitary_max(zm(4, -1), 3)),
        ("orthogonal Z/5", ortho(zm(5, 1), 3)),
        ("Gaussian mod 5", unitary_max(ring(RingSpec::gaussian(5, 1)), 3)),
    ]
}

/// Steps 1-3 on one random instance.
fn step_trial(g: &Arc<Group>, seed: u64, t: u64) -> bool {
    let mut rng = trial_rng(seed, t);
    let sigma = random_elementary(g, &mut rng, 24);
    let ctx = FormRingContext::from_group(g.clone()).unwrap();
    let base = ctx.base(sigma).unwrap();
    let r = g.ring();
    let x = r.random(&mut rng);
    let idx = g.indices();
    let (k, l) = loop {
        let (k, l) = (idx[rng.gen_range(0..idx.len())], idx[rng.gen_range(0..idx.len())]);
        if k != l && k != -l {
            break (k, l);
        }
    };
    let steps: [(fn(&_, _, _, _) -> _, usize); 3] = [(u_step1_word, 16), (u_step2_word, 16), (u_step3_word, 32)];
    steps.iter().all(|&(f, want)| match f(&base, x, k, l) {
        Ok(w) => w.count() == want && w.verify(),
        Err(e) => {
            note_error(&e);
            false
        }
    })
}

fn u_campaigns() -> bool {
    let t0 = Instant::now();
    let trials = 100;
    let mut ok = true;
    let mut parts = Vec::new();
    let mut max_value = 0;
    let mut max_first = 0;
    for (name, g) in unitary_configs() {
        let ids: Vec<u64> = (0..trials).collect();
        let steps = par_map(&ids, |&t| step_trial(&g, 300, t)).into_iter().filter(|&b| b).count();
        ok &= steps == trials as usize;
        let mut line = format!("{name}: steps {steps}/{trials}");
        for t in [Target::UEntry, Target::UAntidiag, Target::UDiagdiff, Target::UOppdiag, Target::UValue] {
            let recs = run_campaign(&g, t, 400, trials, 24);
            note_records(&recs);
            let (p, c) = summarize(&recs);
            ok &= p == c;
            if t == Target::UValue {
                for rec in recs.iter().filter_map(|r| r.trace.as_ref().map(|tr| (r.indices[0], tr.count))) {
                    max_value = max_value.max(rec.1);
                    if rec.0 == 1 {
                        max_first = max_first.max(rec.1);
                        ok &= rec.1 <= value_bound_first_column(3);
                    }
                }
            }
            line += &format!(", {} {p}/{c}", t.name());
        }
        parts.push(line);
    }
    ok &= max_value <= value_bound(3) && max_first <= value_bound_first_column(3);
    ok &= t0.elapsed().as_secs() < 15 * 60;
    let detail = format!(
        "{}; value words at most {max_value} (bound {}), first column at most {max_first} (bound {})",
        parts.join("; "),
        value_bound(3),
        value_bound_first_column(3)
    );
    report(4, "U decompositions (16/16/32, 160/320/480/960, value bounds)", ok, detail, t0)
}

fn vec_times_mat(r: &Ring, v: &[sandwich::RingElem], m: &Mat) -> Vec<sandwich::RingElem> {
    (0..m.dim())
        .map(|c| v.iter().enumerate().fold(r.zero(), |acc, (a, &x)| r.add(acc, r.mul(x, m.get(a, c)))))
        .collect()
}

fn mat_times_vec(r: &Ring, m: &Mat, v: &[sandwich::RingElem]) -> Vec<sandwich::RingElem> {
    (0..m.dim())
        .map(|a| v.iter().enumerate().fold(r.zero(), |acc, (c, &x)| r.add(acc, r.mul(m.get(a, c), x))))
        .collect()
}

fn identities() -> bool {
    let t0 = Instant::now();
    let mut counts = [0usize; 4];
    let mut ok = true;
    for (cfg, (_, g)) in unitary_configs().into_iter().enumerate() {
        let ctx = FormRingContext::from_group(g.clone()).unwrap();
        let r = g.ring();
        let mut rng = trial_rng(500, cfg as u64);
        let mut done = [0usize; 4];
        while done.iter().any(|&d| d < 25) {
            let sigma = random_elementary(&g, &mut rng, 24);
            let v: Vec<_> =
                g.indices().into_iter().map(|i| if i == -1 { r.zero() } else { r.random(&mut rng) }).collect();
            // Eichler conjugation
            if done[0] < 25 {
                if let Ok((lhs, rhs)) = ctx.eichler_conjugate_sides(&sigma, &v) {
                    ok &= lhs == rhs;
                    done[0] += 1;
                }
            }
            // polarity: h(u, v) = u~ v and (sigma v)~ = v~ sigma^-1
            if done[1] < 25 {
                let u: Vec<_> = (0..g.dim()).map(|_| r.random(&mut rng)).collect();
                let pu = ctx.polarity(&u).unwrap();
                let dot = pu.iter().zip(&v).fold(r.zero(), |acc, (&a, &b)| r.add(acc, r.mul(a, b)));
                let inv = g.inverse(&sigma).unwrap();
                let lhs = ctx.polarity(&mat_times_vec(r, &sigma, &u)).unwrap();
                ok &= ctx.form_h(&u, &v).unwrap() == dot && lhs == vec_times_mat(r, &pu, &inv);
                done[1] += 1;
            }
            // row-column duality on sigma with column 1 equal to e_1 u
            if done[2] < 25 {
                let unit = loop {
                    let u = r.random(&mut rng);
                    if r.is_unit(u) {
                        break u;
                    }
                };
                let mut m = g.identity();
                for _ in 0..12 {
                    let t = g.random_generator(&mut rng);
                    let (i, j) = t.indices();
                    if j != 1 && i != -1 {
                        m = g.mul(&m, &g.matrix(&t));
                    }
                }
                let s = g.mul(&m, &ctx.hyperbolic_unit(unit).unwrap());
                let row = s.row(g.pos(-1));
                let want: Vec<_> = (0..g.dim())
                    .map(|p| if p == g.pos(-1) { r.involute(r.invert(unit).unwrap()) } else { r.zero() })
                    .collect();
                ok &= ctx.is_unitary_member(&s).unwrap() && ctx.dual_row_column_check(&s, 1, unit) && row == want;
                done[2] += 1;
            }
            // value formula after P_ij
            if done[3] < 25 {
                let idx = g.indices();
                let (i, j) = (idx[rng.gen_range(0..idx.len())], idx[rng.gen_range(0..idx.len())]);
                if i != j && i != -j {
                    match ctx.hat_value_formula(&sigma, i, j) {
                        Ok(_) => {}
                        Err(e) => {
                            note_error(&e);
                            ok = false;
                        }
                    }
                    done[3] += 1;
                }
            }
        }
        for k in 0..4 {
            counts[k] += done[k];
        }
    }
    let detail = format!(
        "Eichler {}, polarity {}, row-column duality {}, value formula {} instances",
        counts[0], counts[1], counts[2], counts[3]
    );
    report(5, "identity cross-checks", ok, detail, t0)
}

fn sct() -> bool {
    let t0 = Instant::now();
    let mut ok = true;
    let mut verified_elements = 0;
    let mut reports = 0;
    let mut levels = std::collections::BTreeSet::new();
    let mut configs: Vec<(Arc<Group>, u64)> = Vec::new();
    for m in [4, 6] {
        configs.push((gl(zm(m, 1), 3), 50));
        configs.push((ortho(zm(m, 1), 3), 50));
    }
    configs.push((unitary_max(zm(4, -1), 3), 20));
    for (c, (g, trials)) in configs.iter().enumerate() {
        let ids: Vec<u64> = (0..*trials).collect();
        let out = par_map(&ids, |&t| {
            let mut rng = trial_rng(600 + c as u64, t);
            // half generic, half conjugates of a transvection with a random parameter
            let sigma = if t % 2 == 0 {
                random_elementary(g, &mut rng, 16)
            } else {
                let x = g.ring().random(&mut rng);
                let conj = g.random_word(&mut rng, 8);
                g.conj_mat(&conj, &g.matrix(&g.t(1, 2, x)))
            };
            let level = level_of(g, &sigma).map(|l| l.len());
            (sct_desk_check(g, &sigma), level)
        });
        for (rep, level) in out {
            reports += 1;
            match (rep, level) {
                (Ok(rep), Ok(len)) => {
                    ok &= rep.all_pass() && rep.lower_inclusion_verified_elements == len;
                    verified_elements += rep.lower_inclusion_verified_elements;
                    levels.insert(len);
                }
                (Err(e), _) | (_, Err(e)) => {
                    note_error(&e);
                    ok = false;
                }
            }
        }
    }
    ok &= t0.elapsed().as_secs() < 600;
    let detail = format!(
        "{reports} reports, {verified_elements} level elements with verified words, level sizes seen {levels:?}"
    );
    report(6, "SCT desk check", ok, detail, t0)
}

fn main() -> ExitCode {
    let results = [relations(), gl_campaigns(), o_campaigns(), u_campaigns(), identities(), sct()];
    let guards = GUARD_FAILURES.load(Ordering::Relaxed);
    let g = report(
        7,
        "guard regime",
        guards == 0,
        format!("{guards} guard failures with strict guards on"),
        Instant::now(),
    );
    if results.iter().all(|&b| b) && g {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
