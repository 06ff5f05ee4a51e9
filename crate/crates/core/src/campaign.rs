//! Seeded decomposition campaigns. Trials are independent; with the
//! `parallel` feature they run on the rayon pool, and results always come
//! back in trial order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gln::GlContext;
use crate::linalg::Mat;
use crate::ortho_decomp::{o_antidiag_word, o_diag_diff_word, o_entry_word, o_opposite_diag_word};
use crate::unitary_decomp::{
    u_antidiag_word, u_diag_diff_word, u_entry_word, u_opposite_diag_word, u_value_word, value_bound,
};
use crate::words::{Base, ConjWord, Group, TraceJson};

/// Order-preserving map, parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    seq_map(items, f)
}

pub fn seq_map<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Independent stream per trial, so a trial can be replayed alone.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    GlEntry,
    GlDiagdiff,
    OEntry,
    OAntidiag,
    ODiagdiff,
    OOppdiag,
    UEntry,
    UAntidiag,
    UDiagdiff,
    UOppdiag,
    UValue,
}

impl Target {
    pub const ALL: [Target; 11] = [
        Target::GlEntry,
        Target::GlDiagdiff,
        Target::OEntry,
        Target::OAntidiag,
        Target::ODiagdiff,
        Target::OOppdiag,
        Target::UEntry,
        Target::UAntidiag,
        Target::UDiagdiff,
        Target::UOppdiag,
        Target::UValue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::GlEntry => "gl-entry",
            Target::GlDiagdiff => "gl-diagdiff",
            Target::OEntry => "o-entry",
            Target::OAntidiag => "o-antidiag",
            Target::ODiagdiff => "o-diagdiff",
            Target::OOppdiag => "o-oppdiag",
            Target::UEntry => "u-entry",
            Target::UAntidiag => "u-antidiag",
            Target::UDiagdiff => "u-diagdiff",
            Target::UOppdiag => "u-oppdiag",
            Target::UValue => "u-value",
        }
    }

    /// `"gl"`, `"o"` or `"u"`.
    pub fn group(self) -> &'static str {
        self.name().split('-').next().unwrap()
    }

    /// Resolves `entry` against a group prefix, or takes a full name.
    pub fn resolve(group: &str, target: &str) -> Result<Self> {
        target.parse().or_else(|_| format!("{group}-{target}").parse())
    }

    /// Exact count for fixed-length words, `None` for bounded ones.
    pub fn expected_count(self) -> Option<usize> {
        match self {
            Target::GlEntry | Target::OEntry => Some(8),
            Target::OAntidiag => Some(16),
            Target::GlDiagdiff | Target::ODiagdiff => Some(24),
            Target::OOppdiag => Some(48),
            Target::UEntry => Some(160),
            Target::UAntidiag => Some(320),
            Target::UDiagdiff => Some(480),
            Target::UOppdiag => Some(960),
            Target::UValue => None,
        }
    }

    fn check_group(self, g: &Group) -> Result<()> {
        let ok = match self.group() {
            "gl" => g.is_linear(),
            "o" => g.is_orthogonal(),
            _ => !g.is_linear(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongGroup(format!("{} needs a different group", self.name())))
        }
    }

    /// Random admissible index tuple for this target.
    pub fn random_indices<R: Rng + ?Sized>(self, g: &Group, rng: &mut R) -> Vec<i32> {
        let idx = g.indices();
        let pick = |rng: &mut R| idx[rng.gen_range(0..idx.len())];
        let short = |rng: &mut R| loop {
            let (i, j) = (pick(rng), pick(rng));
            if i != j && i != -j {
                return (i, j);
            }
        };
        match self {
            Target::GlEntry
            | Target::GlDiagdiff
            | Target::OEntry
            | Target::ODiagdiff
            | Target::UEntry
            | Target::UDiagdiff => {
                let (i, j) = short(rng);
                let (k, l) = short(rng);
                vec![i, j, k, l]
            }
            Target::OAntidiag | Target::OOppdiag | Target::UAntidiag | Target::UOppdiag => {
                let i = pick(rng);
                let (k, l) = short(rng);
                vec![i, k, l]
            }
            Target::UValue => {
                let j = pick(rng);
                let k = pick(rng);
                vec![j, k]
            }
        }
    }

    pub fn decompose(self, base: &Arc<Base>, ix: &[i32]) -> Result<ConjWord> {
        let g = base.group();
        self.check_group(g)?;
        let want = match self {
            Target::OAntidiag | Target::OOppdiag | Target::UAntidiag | Target::UOppdiag => 3,
            Target::UValue => 2,
            _ => 4,
        };
        if ix.len() != want {
            return Err(Error::BadIndex(format!("{} expects {want} indices", self.name())));
        }
        match self {
            Target::GlEntry => GlContext::from_group(g.clone())?.entry_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::GlDiagdiff => GlContext::from_group(g.clone())?.diag_diff_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::OEntry => o_entry_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::OAntidiag => o_antidiag_word(base, ix[0], ix[1], ix[2]),
            Target::ODiagdiff => o_diag_diff_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::OOppdiag => o_opposite_diag_word(base, ix[0], ix[1], ix[2]),
            Target::UEntry => u_entry_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::UAntidiag => u_antidiag_word(base, ix[0], ix[1], ix[2]),
            Target::UDiagdiff => u_diag_diff_word(base, ix[0], ix[1], ix[2], ix[3]),
            Target::UOppdiag => u_opposite_diag_word(base, ix[0], ix[1], ix[2]),
            Target::UValue => u_value_word(base, ix[0], ix[1]),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown target {s:?}")))
    }
}

/// Product of `len` random elementary generators.
pub fn random_elementary<R: Rng + ?Sized>(g: &Group, rng: &mut R, len: usize) -> Mat {
    g.eval(&g.random_word(rng, len))
}

/// One line of campaign output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub trial: u64,
    pub target: Target,
    pub indices: Vec<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none", flatten)]
    pub trace: Option<TraceJson>,
}

impl TrialRecord {
    /// Verified, and with the expected count or within the bound.
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.trace.as_ref().is_some_and(|t| t.verified) && self.count_ok == Some(true)
    }

    pub fn guard_failed(&self) -> bool {
        self.error.as_deref().is_some_and(|e| e.starts_with("guard failed"))
    }
}

pub fn run_trial(g: &Arc<Group>, target: Target, seed: u64, trial: u64, len: usize) -> TrialRecord {
    let mut rng = trial_rng(seed, trial);
    let sigma = random_elementary(g, &mut rng, len);
    let indices = target.random_indices(g, &mut rng);
    let mut rec = TrialRecord { seed, trial, target, indices, error: None, count_ok: None, trace: None };
    let word = Base::new(g, sigma).and_then(|b| target.decompose(&b, &rec.indices));
    match word {
        Ok(w) => {
            let count_ok = match target.expected_count() {
                Some(c) => w.count() == c,
                None => w.count() <= value_bound(g.n()),
            };
            rec.count_ok = Some(count_ok);
            rec.trace = Some(w.to_trace(w.verify()));
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

pub fn run_campaign(g: &Arc<Group>, target: Target, seed: u64, trials: u64, len: usize) -> Vec<TrialRecord> {
    let ids: Vec<u64> = (0..trials).collect();
    par_map(&ids, |&t| run_trial(g, target, seed, t, len))
}

pub fn run_campaign_sequential(g: &Arc<Group>, target: Target, seed: u64, trials: u64, len: usize) -> Vec<TrialRecord> {
    let ids: Vec<u64> = (0..trials).collect();
    seq_map(&ids, |&t| run_trial(g, target, seed, t, len))
}
