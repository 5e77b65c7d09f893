//! Explicit levels of hereditary sets, one representative per class.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::hset::{hset_mult, lesssim_star, HSet};
use crate::downset::enumerate_downsets_capped;
use crate::error::{Error, Result};
use crate::monoid::MonoidalQO;
use crate::qo::{ElemSet, FiniteQO};

pub const DEFAULT_MAX_ALPHA: usize = 3;
pub const DEFAULT_MAX_MEMBERS: usize = 20_000;
pub const MAX_MEMBERS_ENV: &str = "IDEALFORGE_MAX_MEMBERS";

/// Which sets are admitted at each new level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    /// Every nonempty set of earlier members.
    Vstar,
    /// Directed sets of earlier members.
    Istar,
    /// Directed downward-closed sets of the previous level.
    Ihat,
}

impl fmt::Display for LevelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelKind::Vstar => "vstar",
            LevelKind::Istar => "istar",
            LevelKind::Ihat => "ihat",
        })
    }
}

impl FromStr for LevelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vstar" => Ok(LevelKind::Vstar),
            "istar" => Ok(LevelKind::Istar),
            "ihat" => Ok(LevelKind::Ihat),
            other => Err(format!("unknown level kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelLimits {
    pub max_alpha: usize,
    pub max_members: usize,
}

impl Default for LevelLimits {
    fn default() -> Self {
        LevelLimits { max_alpha: DEFAULT_MAX_ALPHA, max_members: DEFAULT_MAX_MEMBERS }
    }
}

impl LevelLimits {
    /// Defaults, with the member bound taken from the environment if set.
    pub fn from_env() -> Self {
        let mut l = Self::default();
        if let Some(n) = std::env::var(MAX_MEMBERS_ENV).ok().and_then(|v| v.parse().ok()) {
            l.max_members = n;
        }
        l
    }

    pub(crate) fn check_alpha(&self, alpha: usize) -> Result<()> {
        if alpha > self.max_alpha {
            return Err(Error::LevelCapExceeded { requested: alpha, cap: self.max_alpha });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierLevel {
    pub alpha: usize,
    pub kind: LevelKind,
    members: Vec<HSet>,
    leq: Vec<bool>,
    index: HashMap<HSet, usize>,
}

impl HierLevel {
    pub fn members(&self) -> &[HSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn index_of(&self, x: &HSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Member whose class contains `x`, compared with `lesssim_star`.
    pub fn find_equivalent(&self, x: &HSet, q: &FiniteQO) -> Option<usize> {
        self.members.iter().position(|y| lesssim_star(x, y, q) && lesssim_star(y, x, q))
    }

    /// The level as a quasi-order labelled by the printed members.
    pub fn as_qo(&self, base: &FiniteQO) -> FiniteQO {
        let labels = self.members.iter().map(|x| x.show(base)).collect();
        FiniteQO::from_table_unchecked(labels, self.leq.clone())
    }

    fn from_parts(alpha: usize, kind: LevelKind, members: Vec<HSet>, leq: Vec<bool>) -> Self {
        let index = members.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        HierLevel { alpha, kind, members, leq, index }
    }
}

/// Levels `0..=alpha` of the given kind over `q`.
///
/// Level 0 has one urelement per equivalence class. Each later level keeps
/// the previous members and adds the admitted sets of previous members,
/// keeping a set only when it is not equivalent to anything already present.
/// Among new equivalent candidates the least one in the structural order
/// becomes the representative.
pub fn build_levels(
    q: &FiniteQO,
    alpha: usize,
    kind: LevelKind,
    limits: &LevelLimits,
) -> Result<Vec<HierLevel>> {
    limits.check_alpha(alpha)?;
    if q.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let quot = q.quotient();
    let members: Vec<HSet> = (0..quot.len()).map(|c| HSet::Ur(quot.representative(c))).collect();
    let k = members.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = quot.classes.leq(i, j);
        }
    }
    let mut levels = vec![HierLevel::from_parts(0, kind, members, leq)];
    for a in 1..=alpha {
        let next = next_level(levels.last().expect("level 0"), a, kind, limits)?;
        levels.push(next);
    }
    Ok(levels)
}

pub fn build_level(q: &FiniteQO, alpha: usize, kind: LevelKind, limits: &LevelLimits) -> Result<HierLevel> {
    Ok(build_levels(q, alpha, kind, limits)?.pop().expect("nonempty"))
}

fn next_level(prev: &HierLevel, alpha: usize, kind: LevelKind, limits: &LevelLimits) -> Result<HierLevel> {
    let n = prev.len();
    let bound = limits.max_members;
    let blowup = |what: String| Error::CombinatorialBlowup { bound, what };

    // A member's support: itself for a urelement, its children otherwise.
    let support_of = |x: &HSet| -> Result<Vec<usize>> {
        match x {
            HSet::Ur(_) => Ok(vec![prev.index_of(x).expect("member")]),
            HSet::Set(c) => c
                .iter()
                .map(|y| prev.index_of(y).ok_or_else(|| Error::Internal("child not a member".into())))
                .collect(),
        }
    };
    let mut members: Vec<HSet> = prev.members.clone();
    let mut supports: Vec<Vec<usize>> = members.iter().map(support_of).collect::<Result<_>>()?;

    let mut fresh: Vec<ElemSet> = match kind {
        LevelKind::Vstar | LevelKind::Ihat => {
            let qo = prev.as_qo_indexed();
            let downs = enumerate_downsets_capped(&qo, bound)
                .map_err(|_| blowup(format!("downsets of level {}", alpha - 1)))?;
            downs
                .into_iter()
                .map(|d| d.members().clone())
                .filter(|d| kind == LevelKind::Vstar || prev.is_directed(d))
                .collect()
        }
        LevelKind::Istar => {
            if n >= usize::BITS as usize - 1 || (1usize << n) > bound.saturating_mul(64) {
                return Err(blowup(format!("subsets of a {n}-member level")));
            }
            (1usize..(1 << n))
                .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<ElemSet>())
                .filter(|s| prev.is_directed(s))
                .collect()
        }
    };
    let mut candidates: Vec<(HSet, Vec<usize>)> = fresh
        .drain(..)
        .map(|s| {
            let set = HSet::set(s.iter().map(|&i| prev.members[i].clone())).expect("nonempty");
            (set, s.into_iter().collect())
        })
        .collect();
    candidates.sort();

    let below = |s: &[usize], t: &[usize]| s.iter().all(|&i| t.iter().any(|&j| prev.leq(i, j)));
    for (set, supp) in candidates {
        let known = supports.iter().any(|t| below(&supp, t) && below(t, &supp));
        if !known {
            if members.len() >= bound {
                return Err(blowup(format!("members of level {alpha}")));
            }
            members.push(set);
            supports.push(supp);
        }
    }
    let k = members.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = below(&supports[i], &supports[j]);
        }
    }
    Ok(HierLevel::from_parts(alpha, kind, members, leq))
}

impl HierLevel {
    fn as_qo_indexed(&self) -> FiniteQO {
        let labels = (0..self.len()).map(|i| i.to_string()).collect();
        FiniteQO::from_table_unchecked(labels, self.leq.clone())
    }

    fn is_directed(&self, s: &ElemSet) -> bool {
        s.iter().all(|&y| s.iter().all(|&z| s.iter().any(|&w| self.leq(y, w) && self.leq(z, w))))
    }
}

/// The product, replaced by its representative at the least level holding
/// an equivalent member; `None` when no level does.
pub fn hat_mult(
    x: &HSet,
    y: &HSet,
    levels: &[HierLevel],
    m: &MonoidalQO,
) -> Option<(usize, HSet)> {
    let z = hset_mult(x, y, m);
    levels.iter().find_map(|lvl| {
        lvl.find_equivalent(&z, m.order()).map(|i| (lvl.alpha, lvl.members[i].clone()))
    })
}
