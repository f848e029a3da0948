//! Uniform random regular signed k-SAT formulas.
//!
//! Every literal slot is filled independently: a relation (`<=` or `>=`,
//! probability 1/2 each), a right-hand side `a` uniform on `V \ {1}`, and a
//! variable. `<=` slots get the condition `x <= a`, `>=` slots `x >= 1 - a`,
//! which excludes the innocuous literals. Variables are uniform over `1..=n`,
//! optionally conditioned on being distinct within each clause.

use std::collections::HashSet;

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::Error;
use crate::formula::{Clause, Formula, Literal, OccurrenceProfile, Relation, TruthValueSpec};
use crate::rng::{rng_from_seed, Rng};
use crate::threshold::Threshold;

/// Bits of precision of a continuous right-hand side.
pub const CONTINUOUS_BITS: u32 = 53;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub k: usize,
    pub n: u32,
    pub m: usize,
    pub vspec: TruthValueSpec,
    /// `true` samples the model with distinct variables per clause, `false`
    /// allows repeats.
    pub distinct_vars_per_clause: bool,
    pub seed: u64,
    /// Resample continuous right-hand sides until no two literals share a
    /// side `a` and no side equals `1 - a'` of another. Only valid for
    /// [`TruthValueSpec::Continuous`].
    pub distinct_thresholds: bool,
}

impl GenConfig {
    pub fn new(k: usize, n: u32, m: usize, vspec: TruthValueSpec, distinct: bool, seed: u64) -> Self {
        GenConfig {
            k,
            n,
            m,
            vspec,
            distinct_vars_per_clause: distinct,
            seed,
            distinct_thresholds: false,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!("k must be at least 2, got {}", self.k)));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        if self.distinct_vars_per_clause && self.k > self.n as usize {
            return Err(Error::InvalidConfig(format!(
                "cannot pick {} distinct variables out of {}",
                self.k, self.n
            )));
        }
        if self.distinct_thresholds && self.vspec != TruthValueSpec::Continuous {
            return Err(Error::InvalidConfig(
                "distinct thresholds require the continuous truth-value set".into(),
            ));
        }
        self.vspec
            .validate()
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }
}

/// Draws a right-hand side uniformly from `V \ {1}`.
pub fn sample_side(rng: &mut Rng, vspec: TruthValueSpec) -> Threshold {
    match vspec {
        TruthValueSpec::Finite(v) => {
            let den = v as u64 - 1;
            Threshold::new(rng.gen_range(0..den), den).unwrap()
        }
        TruthValueSpec::Dyadic(l) => Threshold::dyadic(rng.gen_range(0..1u64 << l), l).unwrap(),
        TruthValueSpec::Continuous => {
            Threshold::dyadic(rng.gen::<u64>() >> (64 - CONTINUOUS_BITS), CONTINUOUS_BITS).unwrap()
        }
    }
}

pub fn sample_relation(rng: &mut Rng) -> Relation {
    if rng.gen::<bool>() {
        Relation::Le
    } else {
        Relation::Ge
    }
}

/// Draws the constraint part of a literal on `var`.
pub fn sample_literal(rng: &mut Rng, var: u32, vspec: TruthValueSpec) -> Literal {
    let relation = sample_relation(rng);
    let side = sample_side(rng, vspec);
    Literal::from_encoded(var, relation, side).expect("encoded sides are never innocuous")
}

struct SideSampler {
    vspec: TruthValueSpec,
    seen: Option<HashSet<Threshold>>,
}

impl SideSampler {
    fn new(vspec: TruthValueSpec, distinct: bool) -> Self {
        SideSampler {
            vspec,
            seen: distinct.then(HashSet::new),
        }
    }

    fn literal(&mut self, rng: &mut Rng, var: u32) -> Literal {
        let relation = sample_relation(rng);
        let side = loop {
            let side = sample_side(rng, self.vspec);
            match &mut self.seen {
                None => break side,
                Some(seen) => {
                    if seen.contains(&side) || seen.contains(&side.complement()) || side == side.complement() {
                        continue;
                    }
                    seen.insert(side);
                    break side;
                }
            }
        };
        Literal::from_encoded(var, relation, side).expect("encoded sides are never innocuous")
    }
}

/// A uniform random formula, fully determined by `cfg` (including its seed).
pub fn sample_formula(cfg: &GenConfig) -> Result<Formula, Error> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let mut sides = SideSampler::new(cfg.vspec, cfg.distinct_thresholds);
    let mut clauses = Vec::with_capacity(cfg.m);
    let mut vars = Vec::with_capacity(cfg.k);
    for _ in 0..cfg.m {
        vars.clear();
        if cfg.distinct_vars_per_clause {
            // partial Fisher-Yates style selection without replacement
            vars.extend(
                index::sample(&mut rng, cfg.n as usize, cfg.k)
                    .into_iter()
                    .map(|i| i as u32 + 1),
            );
        } else {
            vars.extend((0..cfg.k).map(|_| rng.gen_range(1..=cfg.n)));
        }
        let lits = vars.iter().map(|&v| sides.literal(&mut rng, v)).collect();
        clauses.push(Clause::new(lits));
    }
    Formula::new(cfg.k, cfg.n, cfg.vspec, cfg.distinct_vars_per_clause, clauses)
}

/// A random formula conditioned on its occurrence profile.
///
/// Variable `j` contributes `r[j-1]` distinguishable copies; the `k*m` copies
/// are matched to the `k*m` slots by a uniform random permutation. Constraint
/// parts are drawn as in [`sample_formula`]. Clauses may repeat a variable.
pub fn sample_formula_given_profile(
    cfg: &GenConfig,
    r: &OccurrenceProfile,
    seed: u64,
) -> Result<Formula, Error> {
    if cfg.distinct_vars_per_clause {
        return Err(Error::InvalidConfig(
            "the occurrence-profile model allows repeated variables in a clause".into(),
        ));
    }
    cfg.validate()?;
    if r.counts.len() != cfg.n as usize {
        return Err(Error::InvalidConfig(format!(
            "profile has {} entries for n = {}",
            r.counts.len(),
            cfg.n
        )));
    }
    let expected = (cfg.k * cfg.m) as u64;
    if r.total() != expected {
        return Err(Error::ProfileMismatch {
            expected,
            got: r.total(),
        });
    }
    let mut rng = rng_from_seed(seed);
    let mut copies: Vec<u32> = r
        .counts
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat(j as u32 + 1).take(c as usize))
        .collect();
    copies.shuffle(&mut rng);
    let mut sides = SideSampler::new(cfg.vspec, cfg.distinct_thresholds);
    let clauses = copies
        .chunks(cfg.k)
        .map(|vars| Clause::new(vars.iter().map(|&v| sides.literal(&mut rng, v)).collect()))
        .collect();
    Formula::new(cfg.k, cfg.n, cfg.vspec, false, clauses)
}

/// Two formulas with the same variables, relations and clause structure that
/// differ only in their right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledPair {
    pub low: Formula,
    pub high: Formula,
}

fn finite_v(f: &Formula) -> Result<u64, Error> {
    match f.vspec() {
        TruthValueSpec::Finite(v) => Ok(v as u64),
        other => Err(Error::WrongVspec(format!("expected a finite truth-value set, got {other}"))),
    }
}

/// Couples a formula over `Finite(v)` with one over `Finite(v+1)`.
///
/// Each encoded side `u/(v-1)` is rescaled to `u/v` and then bumped to
/// `(u+1)/v` independently with probability `(u+1)/v`. If the low formula is
/// uniform, so is the high one. Bumps weaken literals relative to the
/// rescaled side; for `v >= 3` the rescaling itself is not
/// satisfiability-preserving for `>=` literals, so `SAT(low)` does not always
/// imply `SAT(high)` (see [`couple_refine`] for a coupling where it does).
pub fn couple_increase_v(f: &Formula, seed: u64) -> Result<CoupledPair, Error> {
    let v = finite_v(f)?;
    let mut rng = rng_from_seed(seed);
    let high = f.map_literals(TruthValueSpec::Finite(v as u32 + 1), |lit| {
        let side = lit.encoded_side();
        // side = u/(v-1), so u = side * (v-1) exactly
        let u = side.numer() * ((v - 1) / side.denom());
        let bumped = rng.gen_range(0..v) < u + 1;
        let new_u = if bumped { u + 1 } else { u };
        Literal::from_encoded(lit.var(), lit.relation(), Threshold::new(new_u, v)?)
    })?;
    Ok(CoupledPair { low: f.clone(), high })
}

/// Couples a formula over `Finite(v)` with one over `Finite((v-1)*factor + 1)`,
/// whose truth-value set contains the low one.
///
/// Encoded side `u/(v-1)` becomes `(u*factor + J)/((v-1)*factor)` with `J`
/// uniform on `0..factor`: uniform marginals, and every side only grows, so
/// every literal is weakened in place and `SAT(low)` implies `SAT(high)`.
pub fn couple_refine(f: &Formula, factor: u32, seed: u64) -> Result<CoupledPair, Error> {
    let v = finite_v(f)?;
    if factor == 0 {
        return Err(Error::InvalidConfig("refinement factor must be positive".into()));
    }
    let factor = factor as u64;
    let den = (v - 1) * factor;
    let new_v = u32::try_from(den + 1)
        .map_err(|_| Error::InvalidConfig("refined truth-value set too large".into()))?;
    let mut rng = rng_from_seed(seed);
    let high = f.map_literals(TruthValueSpec::Finite(new_v), |lit| {
        let side = lit.encoded_side();
        let u = side.numer() * ((v - 1) / side.denom());
        let j = rng.gen_range(0..factor);
        Literal::from_encoded(lit.var(), lit.relation(), Threshold::new(u * factor + j, den)?)
    })?;
    Ok(CoupledPair { low: f.clone(), high })
}

/// Couples a formula over `Dyadic(lambda)` with one over `target` (a finer
/// dyadic set or the continuum) by drawing the remaining binary digits of
/// every encoded side. Sides only grow, so `SAT(low)` implies `SAT(high)`.
pub fn extend_dyadic(f: &Formula, target: TruthValueSpec, seed: u64) -> Result<CoupledPair, Error> {
    let TruthValueSpec::Dyadic(lambda) = f.vspec() else {
        return Err(Error::WrongVspec(format!("expected a dyadic truth-value set, got {}", f.vspec())));
    };
    let target_bits = match target {
        TruthValueSpec::Dyadic(l) if l >= lambda => l,
        TruthValueSpec::Continuous => CONTINUOUS_BITS.max(lambda),
        other => {
            return Err(Error::WrongVspec(format!("cannot extend dyadic:{lambda} to {other}")));
        }
    };
    let extra = target_bits - lambda;
    let mut rng = rng_from_seed(seed);
    let high = f.map_literals(target, |lit| {
        let side = lit.encoded_side();
        let bits = side.numer() * ((1u64 << lambda) / side.denom());
        let low_bits = if extra == 0 { 0 } else { rng.gen_range(0..1u64 << extra) };
        let side = Threshold::dyadic((bits << extra) | low_bits, target_bits)?;
        Literal::from_encoded(lit.var(), lit.relation(), side)
    })?;
    Ok(CoupledPair { low: f.clone(), high })
}

/// Replaces every encoded side by its first `lambda` binary digits. The result
/// lives over `Dyadic(lambda)`; sides only shrink, so every literal is
/// strengthened in place.
pub fn truncate_thresholds(f: &Formula, lambda: u32) -> Result<Formula, Error> {
    let spec = TruthValueSpec::Dyadic(lambda);
    spec.validate()?;
    f.map_literals(spec, |lit| {
        Literal::from_encoded(lit.var(), lit.relation(), lit.encoded_side().truncate_bits(lambda))
    })
}

/// Smallest truncation precision that is guaranteed to preserve
/// satisfiability: one more than the longest common binary prefix among
/// (a) all pairs of encoded sides and (b) every `<=` bound paired with every
/// `>=` bound.
///
/// Pairs (a) keep the relative order of all sides. Pairs (b) are needed as
/// well: whether `x <= a` and `x >= b` can hold together is the comparison
/// `b <= a`, and truncation moves `a` down and `b` up. A grid point at depth
/// `prefix + 1` always separates two values that first differ there, so the
/// comparison survives. Returns 0 when there is no pair to separate.
pub fn min_safe_lambda(f: &Formula) -> Result<u32, Error> {
    let mut sides: Vec<Threshold> = f.literals().map(|l| l.encoded_side()).collect();
    sides.sort();
    let mut best: Option<u32> = None;
    for w in sides.windows(2) {
        let p = w[0]
            .common_binary_prefix(&w[1])
            .ok_or_else(|| Error::DuplicateThresholds(w[0].to_string()))?;
        best = Some(best.map_or(p, |b| b.max(p)));
    }

    // (value, is_le) merged and sorted; only adjacent pairs of opposite
    // relation matter
    let mut bounds: Vec<(Threshold, bool)> = f
        .literals()
        .map(|l| (l.bound(), l.relation() == Relation::Le))
        .collect();
    bounds.sort();
    for w in bounds.windows(2) {
        if w[0].1 == w[1].1 {
            continue;
        }
        let p = w[0]
            .0
            .common_binary_prefix(&w[1].0)
            .ok_or_else(|| Error::DuplicateThresholds(w[0].0.to_string()))?;
        best = Some(best.map_or(p, |b| b.max(p)));
    }
    Ok(best.map_or(0, |p| p + 1))
}
