//! Bicycles and snakes in 2-rSAT formulas.
//!
//! A bicycle is a chain of clauses linked through disjoint literal pairs on
//! distinct variables whose two ends re-enter the chain. Every unsatisfiable
//! 2-rSAT formula contains one, so an exhausted search that finds none proves
//! satisfiability.
//!
//! A snake is two such chains closing up on one middle variable; it forces
//! a literal on that variable to be neither true nor false, so a snake proves
//! unsatisfiability.
//!
//! The checkers only use literal semantics and clause lookup, never a solver.

use crate::error::Error;
use crate::formula::{signs_disjoint, Formula, Literal};
use std::collections::HashSet;

/// Result of a budgeted certificate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    NotFound,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// An `ell`-bicycle: literals `w^f_0, w^t_1, w^f_1, ..., w^t_ell, w^f_ell,
/// w^t_{ell+1}` where clause `i` is `w^f_i or w^t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicycle {
    pub ell: usize,
    pub i0: usize,
    pub i1: usize,
    /// `2 * ell + 2` literals in chain order.
    pub literals: Vec<Literal>,
    /// `ell + 1` zero-based clause indices.
    pub clause_indices: Vec<usize>,
}

impl Bicycle {
    /// `w^f_i`, for `i` in `0..=ell`.
    pub fn wf(&self, i: usize) -> &Literal {
        &self.literals[2 * i]
    }

    /// `w^t_i`, for `i` in `1..=ell + 1`.
    pub fn wt(&self, i: usize) -> &Literal {
        &self.literals[2 * i - 1]
    }
}

/// An `ell`-snake: clauses `L_i or L'_{i+1}` for `i = 0..=ell`, where `L_i`
/// is on `x_{b_i}` and `L'_{i+1}` on `x_{b_{i+1}}`, with
/// `b_0 = b_{ell/2} = b_{ell+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Snake {
    pub ell: usize,
    /// `b_1, ..., b_ell`.
    pub b: Vec<u32>,
    /// `ell + 1` zero-based clause indices.
    pub clause_indices: Vec<usize>,
    /// `(L_i, L'_{i+1})` for `i = 0..=ell`.
    pub pairs: Vec<(Literal, Literal)>,
}

impl Snake {
    /// Builds a snake from its clause chain, reading `b` off the literals.
    pub fn from_chain(ell: usize, clause_indices: Vec<usize>, pairs: Vec<(Literal, Literal)>) -> Self {
        let b = pairs.iter().skip(1).take(ell).map(|(l, _)| l.var()).collect();
        Snake {
            ell,
            b,
            clause_indices,
            pairs,
        }
    }

    /// `L_i`, for `i` in `0..=ell`.
    pub fn l(&self, i: usize) -> &Literal {
        &self.pairs[i].0
    }

    /// `L'_i`, for `i` in `1..=ell + 1`.
    pub fn l_prime(&self, i: usize) -> &Literal {
        &self.pairs[i - 1].1
    }
}

fn require_k2(f: &Formula) -> Result<(), Error> {
    if f.k() != 2 {
        return Err(Error::WrongArity(f.k()));
    }
    Ok(())
}

/// Does clause `ci` consist of exactly `a` and `b`, in either order?
fn clause_is(f: &Formula, ci: usize, a: &Literal, b: &Literal) -> Result<bool, Error> {
    let clause = f.clauses().get(ci).ok_or_else(|| {
        Error::IndexOutOfRange(format!("clause index {ci} with m = {}", f.m()))
    })?;
    let lits = clause.literals();
    Ok((lits[0] == *a && lits[1] == *b) || (lits[0] == *b && lits[1] == *a))
}

fn all_distinct(vars: impl IntoIterator<Item = u32>) -> bool {
    let mut seen = HashSet::new();
    vars.into_iter().all(|v| seen.insert(v))
}

/// Checks conditions bc1 to bc5 of `c` against `f`.
pub fn verify_bicycle(f: &Formula, c: &Bicycle) -> Result<bool, Error> {
    require_k2(f)?;
    let ell = c.ell;
    if c.literals.len() != 2 * ell + 2 || c.clause_indices.len() != ell + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "bicycle of length {ell} needs {} literals and {} clauses, got {} and {}",
            2 * ell + 2,
            ell + 1,
            c.literals.len(),
            c.clause_indices.len()
        )));
    }
    // bc4 first, so bad clause indices are reported rather than masked
    let mut ok = true;
    for (i, &ci) in c.clause_indices.iter().enumerate() {
        ok &= clause_is(f, ci, c.wf(i), c.wt(i + 1))?;
    }
    if ell < 2 || !(2..=ell).contains(&c.i0) || !(1..ell).contains(&c.i1) {
        return Ok(false);
    }
    let bc1 = all_distinct((1..=ell).map(|i| c.wt(i).var()));
    let bc2 = (1..=ell).all(|i| c.wt(i).var() == c.wf(i).var());
    let bc3 = c.wf(0).var() == c.wt(c.i0).var() && c.wt(ell + 1).var() == c.wt(c.i1).var();
    let bc5 = (1..=ell).all(|i| signs_disjoint(c.wt(i), c.wf(i)));
    Ok(ok && bc1 && bc2 && bc3 && bc5)
}

/// Checks the variable conventions, sk1 to sk3 and clause membership.
pub fn verify_snake(f: &Formula, s: &Snake) -> Result<bool, Error> {
    require_k2(f)?;
    let ell = s.ell;
    if ell % 2 == 1 || ell < 6 {
        return Err(Error::OddLength(ell));
    }
    if s.b.len() != ell || s.clause_indices.len() != ell + 1 || s.pairs.len() != ell + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "snake of length {ell} needs {ell} variables and {} clauses",
            ell + 1
        )));
    }
    let mut ok = true;
    for (i, &ci) in s.clause_indices.iter().enumerate() {
        let (l, lp) = &s.pairs[i];
        ok &= clause_is(f, ci, l, lp)?;
    }
    let half = ell / 2;
    // b_0 = b_{ell/2} = b_{ell+1}
    let b = |i: usize| -> u32 {
        if i == 0 || i == ell + 1 {
            s.b[half - 1]
        } else {
            s.b[i - 1]
        }
    };
    let vars_match = all_distinct(s.b.iter().copied())
        && (0..=ell).all(|i| s.l(i).var() == b(i) && s.l_prime(i + 1).var() == b(i + 1));
    let sk1 = (1..=ell).all(|i| signs_disjoint(s.l_prime(i), s.l(i)));
    let sk2 = signs_disjoint(s.l_prime(ell + 1), s.l(0));
    let sk3 = signs_disjoint(s.l_prime(half), s.l_prime(ell + 1)) && signs_disjoint(s.l(half), s.l(0));
    Ok(ok && vars_match && sk1 && sk2 && sk3)
}

/// `(clause index, side)` of every literal on each variable.
fn occurrences(f: &Formula) -> Vec<Vec<(usize, usize)>> {
    let mut occ = vec![Vec::new(); f.n() as usize + 1];
    for (ci, clause) in f.clauses().iter().enumerate() {
        for (side, lit) in clause.literals().iter().enumerate() {
            occ[lit.var() as usize].push((ci, side));
        }
    }
    occ
}

struct BicycleSearch<'a> {
    f: &'a Formula,
    occ: Vec<Vec<(usize, usize)>>,
    budget: u64,
    spent: u64,
    wf0: Literal,
    /// `(clause i-1, w^t_i, w^f_i)` for each level `i`.
    path: Vec<(usize, Literal, Literal)>,
    on_path: Vec<bool>,
}

impl BicycleSearch<'_> {
    fn literal(&self, ci: usize, side: usize) -> Literal {
        self.f.clauses()[ci].literals()[side]
    }

    fn position(&self, var: u32) -> Option<usize> {
        self.path.iter().position(|(_, wt, _)| wt.var() == var).map(|p| p + 1)
    }

    /// Extends from `w^t_i` (the last on the path); `None` means out of budget.
    fn extend(&mut self, wt: Literal) -> Option<Option<Bicycle>> {
        let i = self.path.len();
        for oi in 0..self.occ[wt.var() as usize].len() {
            self.spent += 1;
            if self.spent > self.budget {
                return None;
            }
            let (ci, side) = self.occ[wt.var() as usize][oi];
            let wf = self.literal(ci, side);
            if !signs_disjoint(&wt, &wf) {
                continue;
            }
            let next = self.literal(ci, 1 - side);
            if i >= 2 {
                let i1 = self.position(next.var()).filter(|&p| p < i);
                let i0 = self.position(self.wf0.var()).filter(|&p| p >= 2);
                if let (Some(i0), Some(i1)) = (i0, i1) {
                    return Some(Some(self.assemble(wf, next, ci, i0, i1)));
                }
            }
            if !self.on_path[next.var() as usize] {
                self.path.last_mut().unwrap().2 = wf;
                self.path.push((ci, next, next));
                self.on_path[next.var() as usize] = true;
                let r = self.extend(next);
                self.on_path[next.var() as usize] = false;
                self.path.pop();
                if !matches!(r, Some(None)) {
                    return r;
                }
            }
        }
        Some(None)
    }

    fn assemble(&self, wf_last: Literal, wt_end: Literal, ci_last: usize, i0: usize, i1: usize) -> Bicycle {
        let ell = self.path.len();
        let mut literals = vec![self.wf0];
        let mut clause_indices = Vec::with_capacity(ell + 1);
        for (k, (ci, wt, wf)) in self.path.iter().enumerate() {
            clause_indices.push(*ci);
            literals.push(*wt);
            literals.push(if k + 1 == ell { wf_last } else { *wf });
        }
        clause_indices.push(ci_last);
        literals.push(wt_end);
        Bicycle {
            ell,
            i0,
            i1,
            literals,
            clause_indices,
        }
    }
}

/// Exhaustive depth-first search for a bicycle.
///
/// Starts from every oriented clause `w^f_0 or w^t_1` and grows simple
/// chains of distinct variables, testing at each depth whether the chain can
/// be closed. `budget` bounds the number of clause occurrences inspected.
pub fn find_bicycle(f: &Formula, budget: u64) -> Result<SearchOutcome<Bicycle>, Error> {
    require_k2(f)?;
    let Some(first) = f.clauses().first() else {
        return Ok(SearchOutcome::NotFound);
    };
    let mut search = BicycleSearch {
        f,
        occ: occurrences(f),
        budget,
        spent: 0,
        wf0: first.literals()[0],
        path: Vec::new(),
        on_path: vec![false; f.n() as usize + 1],
    };
    for ci in 0..f.m() {
        for side in 0..2 {
            search.wf0 = search.literal(ci, side);
            let wt1 = search.literal(ci, 1 - side);
            search.path.push((ci, wt1, wt1));
            search.on_path[wt1.var() as usize] = true;
            let r = search.extend(wt1);
            search.on_path[wt1.var() as usize] = false;
            search.path.clear();
            match r {
                None => return Ok(SearchOutcome::BudgetExhausted),
                Some(Some(bicycle)) => {
                    debug_assert_eq!(verify_bicycle(f, &bicycle), Ok(true));
                    return Ok(SearchOutcome::Found(bicycle));
                }
                Some(None) => {}
            }
        }
    }
    Ok(SearchOutcome::NotFound)
}

/// A closed chain from the middle variable back to itself.
struct Loop {
    /// Oriented clauses `(index, L, L')`.
    chain: Vec<(usize, Literal, Literal)>,
    vars: Vec<u32>,
}

impl Loop {
    fn start(&self) -> &Literal {
        &self.chain[0].1
    }

    fn end(&self) -> &Literal {
        &self.chain.last().unwrap().2
    }
}

struct LoopSearch<'a> {
    f: &'a Formula,
    occ: &'a [Vec<(usize, usize)>],
    middle: u32,
    max_len: usize,
    budget: u64,
    spent: u64,
    chain: Vec<(usize, Literal, Literal)>,
    on_path: Vec<bool>,
    loops: Vec<Loop>,
}

impl LoopSearch<'_> {
    /// Continues from `arriving` (an `L'`); `false` when out of budget.
    fn extend(&mut self, arriving: Literal) -> bool {
        let v = arriving.var() as usize;
        for oi in 0..self.occ[v].len() {
            self.spent += 1;
            if self.spent > self.budget {
                return false;
            }
            let (ci, side) = self.occ[v][oi];
            let lits = self.f.clauses()[ci].literals();
            let (l, next) = (lits[side], lits[1 - side]);
            if !signs_disjoint(&arriving, &l) || next.var() as usize == v {
                continue;
            }
            self.chain.push((ci, l, next));
            if next.var() == self.middle {
                if self.chain.len() >= 3 {
                    self.loops.push(Loop {
                        chain: self.chain.clone(),
                        vars: self.chain[1..].iter().map(|(_, l, _)| l.var()).collect(),
                    });
                }
            } else if !self.on_path[next.var() as usize] && self.chain.len() < self.max_len {
                self.on_path[next.var() as usize] = true;
                let ok = self.extend(next);
                self.on_path[next.var() as usize] = false;
                if !ok {
                    return false;
                }
            }
            self.chain.pop();
        }
        true
    }
}

/// Longest half-loop [`find_snake`] explores.
pub const MAX_SNAKE_LOOP: usize = 16;

/// Best-effort search for a snake.
///
/// For each middle variable, enumerates closed chains through it of up to
/// [`MAX_SNAKE_LOOP`] clauses, then pairs a chain of `t` clauses with one of
/// `t + 1` clauses on disjoint variables whose four end literals are mutually
/// disjoint as required. A `NotFound` result does not imply satisfiability.
pub fn find_snake(f: &Formula, budget: u64) -> Result<SearchOutcome<Snake>, Error> {
    require_k2(f)?;
    if f.m() < 7 {
        return Ok(SearchOutcome::NotFound);
    }
    let occ = occurrences(f);
    let mut spent = 0u64;
    let mut on_path = vec![false; f.n() as usize + 1];
    for middle in 1..=f.n() {
        let mut search = LoopSearch {
            f,
            occ: &occ,
            middle,
            max_len: MAX_SNAKE_LOOP,
            budget,
            spent,
            chain: Vec::new(),
            on_path: std::mem::take(&mut on_path),
            loops: Vec::new(),
        };
        let mut exhausted = false;
        for &(ci, side) in &occ[middle as usize] {
            let lits = f.clauses()[ci].literals();
            let (l0, next) = (lits[side], lits[1 - side]);
            if next.var() == middle {
                continue;
            }
            search.chain.push((ci, l0, next));
            search.on_path[next.var() as usize] = true;
            let ok = search.extend(next);
            search.on_path[next.var() as usize] = false;
            search.chain.clear();
            if !ok {
                exhausted = true;
                break;
            }
        }
        spent = search.spent;
        on_path = std::mem::take(&mut search.on_path);
        for a in &search.loops {
            for bl in &search.loops {
                spent += 1;
                if spent > budget {
                    return Ok(SearchOutcome::BudgetExhausted);
                }
                if bl.chain.len() != a.chain.len() + 1 {
                    continue;
                }
                let ends_ok = signs_disjoint(a.end(), bl.start())
                    && signs_disjoint(bl.end(), a.start())
                    && signs_disjoint(a.end(), bl.end())
                    && signs_disjoint(bl.start(), a.start());
                if ends_ok && a.vars.iter().all(|v| !bl.vars.contains(v)) {
                    let ell = 2 * a.chain.len();
                    let chain: Vec<_> = a.chain.iter().chain(&bl.chain).collect();
                    let snake = Snake::from_chain(
                        ell,
                        chain.iter().map(|c| c.0).collect(),
                        chain.iter().map(|c| (c.1, c.2)).collect(),
                    );
                    debug_assert_eq!(verify_snake(f, &snake), Ok(true));
                    return Ok(SearchOutcome::Found(snake));
                }
            }
        }
        if exhausted {
            return Ok(SearchOutcome::BudgetExhausted);
        }
    }
    Ok(SearchOutcome::NotFound)
}
