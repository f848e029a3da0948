//! Satisfiability deciders.
//!
//! A formula is satisfiable iff it has a satisfying *tight* interpretation,
//! one in which every variable takes the bound of one of its own literals.
//! Both deciders therefore work over [`CandidateDomain`]s.
//!
//! * [`solve_complete`] backtracks over interval domains with unit
//!   propagation, for any `k`.
//! * [`solve_2rsat_scc`] decides `k = 2` in near-linear time through an
//!   implication digraph on the order encoding `[x <= d]` of every candidate
//!   value, analysed with Tarjan's strongly connected components.

use crate::error::Error;
use crate::formula::{eval_formula, Formula, Interpretation, Literal, Relation};
use crate::threshold::Threshold;

/// Default node-expansion budget of [`solve_complete`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Per-variable sorted candidate values: the distinct bounds of the literals
/// on that variable, or `{0}` for a variable that does not occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateDomain {
    values: Vec<Vec<Threshold>>,
}

impl CandidateDomain {
    pub fn of(f: &Formula) -> Self {
        let mut values = vec![Vec::new(); f.n() as usize];
        for lit in f.literals() {
            values[lit.var() as usize - 1].push(lit.bound());
        }
        for dom in &mut values {
            if dom.is_empty() {
                dom.push(Threshold::ZERO);
            } else {
                dom.sort_unstable();
                dom.dedup();
            }
        }
        CandidateDomain { values }
    }

    /// Sorted candidates of variable `var` (1-based).
    pub fn of_var(&self, var: u32) -> &[Threshold] {
        &self.values[var as usize - 1]
    }

    pub fn n(&self) -> u32 {
        self.values.len() as u32
    }

    /// Number of tight interpretations, saturating.
    pub fn product_size(&self) -> u64 {
        self.values
            .iter()
            .fold(1u64, |acc, d| acc.saturating_mul(d.len() as u64))
    }

    fn index_of(&self, lit: &Literal) -> usize {
        self.of_var(lit.var())
            .binary_search(&lit.bound())
            .expect("literal bound is a candidate value")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Interpretation),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn witness(&self) -> Option<&Interpretation> {
        match self {
            SolveResult::Sat(w) => Some(w),
            SolveResult::Unsat => None,
        }
    }
}

/// Which decider to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Decider {
    /// SCC for `k = 2`, complete search otherwise.
    #[default]
    Auto,
    Complete,
    Scc,
}

impl std::str::FromStr for Decider {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Decider::Auto),
            "complete" => Ok(Decider::Complete),
            "scc" => Ok(Decider::Scc),
            _ => Err(Error::InvalidConfig(format!("unknown decider {s:?}"))),
        }
    }
}

impl std::fmt::Display for Decider {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decider::Auto => "auto",
            Decider::Complete => "complete",
            Decider::Scc => "scc",
        })
    }
}

/// Runs the chosen decider; `budget` bounds the complete search.
pub fn decide(f: &Formula, decider: Decider, budget: u64) -> Result<SolveResult, Error> {
    match decider {
        Decider::Auto if f.k() == 2 => solve_2rsat_scc(f),
        Decider::Auto | Decider::Complete => solve_complete_with_budget(f, budget),
        Decider::Scc => solve_2rsat_scc(f),
    }
}

// ---------------------------------------------------------------------------
// complete search

#[derive(Clone, Copy)]
struct CompiledLit {
    var: usize,
    le: bool,
    idx: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    True,
    False,
    Unknown,
}

struct Search<'a> {
    clauses: Vec<Vec<CompiledLit>>,
    occurs: Vec<Vec<usize>>,
    lo: Vec<usize>,
    hi: Vec<usize>,
    trail: Vec<(usize, usize, usize)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    domains: &'a CandidateDomain,
}

struct Frame {
    lit: CompiledLit,
    trail_len: usize,
    flipped: bool,
}

impl<'a> Search<'a> {
    fn new(f: &Formula, domains: &'a CandidateDomain) -> Self {
        let n = f.n() as usize;
        let mut occurs = vec![Vec::new(); n];
        let clauses: Vec<Vec<CompiledLit>> = f
            .clauses()
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                c.literals()
                    .iter()
                    .map(|lit| {
                        let var = lit.var() as usize - 1;
                        if occurs[var].last() != Some(&ci) {
                            occurs[var].push(ci);
                        }
                        CompiledLit {
                            var,
                            le: lit.relation() == Relation::Le,
                            idx: domains.index_of(lit),
                        }
                    })
                    .collect()
            })
            .collect();
        let hi = (0..n).map(|j| domains.values[j].len() - 1).collect();
        Search {
            clauses,
            occurs,
            lo: vec![0; n],
            hi,
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; n],
            domains,
        }
    }

    fn status(&self, l: CompiledLit) -> Status {
        let (lo, hi) = (self.lo[l.var], self.hi[l.var]);
        if l.le {
            if hi <= l.idx {
                Status::True
            } else if lo > l.idx {
                Status::False
            } else {
                Status::Unknown
            }
        } else if lo >= l.idx {
            Status::True
        } else if hi < l.idx {
            Status::False
        } else {
            Status::Unknown
        }
    }

    /// Narrows the interval of `l.var` so that `l` holds (or fails when
    /// `negate`). Returns `false` on an empty interval.
    fn enforce(&mut self, l: CompiledLit, negate: bool) -> bool {
        let (lo, hi) = (self.lo[l.var], self.hi[l.var]);
        let (new_lo, new_hi) = match (l.le, negate) {
            (true, false) => (lo, hi.min(l.idx)),
            (true, true) => (lo.max(l.idx + 1), hi),
            (false, false) => (lo.max(l.idx), hi),
            (false, true) => (lo, hi.min(l.idx.wrapping_sub(1))),
        };
        if l.idx == 0 && !l.le && negate {
            // x >= smallest candidate cannot fail
            return false;
        }
        if new_lo > new_hi {
            return false;
        }
        if (new_lo, new_hi) != (lo, hi) {
            self.trail.push((l.var, lo, hi));
            self.lo[l.var] = new_lo;
            self.hi[l.var] = new_hi;
            if !self.queued[l.var] {
                self.queued[l.var] = true;
                self.queue.push(l.var);
            }
        }
        true
    }

    fn clear_queue(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v] = false;
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(var) = self.queue.pop() {
            self.queued[var] = false;
            for oi in 0..self.occurs[var].len() {
                let ci = self.occurs[var][oi];
                let mut unknown = None;
                let mut n_unknown = 0;
                let mut satisfied = false;
                for &l in &self.clauses[ci] {
                    match self.status(l) {
                        Status::True => {
                            satisfied = true;
                            break;
                        }
                        Status::Unknown => {
                            n_unknown += 1;
                            unknown = Some(l);
                        }
                        Status::False => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match n_unknown {
                    0 => {
                        self.clear_queue();
                        return false;
                    }
                    1 => {
                        if !self.enforce(unknown.unwrap(), false) {
                            self.clear_queue();
                            return false;
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let (v, lo, hi) = self.trail.pop().unwrap();
            self.lo[v] = lo;
            self.hi[v] = hi;
        }
    }

    /// Unknown literal of the unresolved clause with the fewest unknowns.
    fn pick_branch(&self) -> Option<CompiledLit> {
        let mut best: Option<(usize, CompiledLit)> = None;
        for clause in &self.clauses {
            let mut n_unknown = 0;
            let mut first = None;
            let mut satisfied = false;
            for &l in clause {
                match self.status(l) {
                    Status::True => {
                        satisfied = true;
                        break;
                    }
                    Status::Unknown => {
                        n_unknown += 1;
                        first.get_or_insert(l);
                    }
                    Status::False => {}
                }
            }
            if satisfied || n_unknown == 0 {
                continue;
            }
            if best.map_or(true, |(b, _)| n_unknown < b) {
                best = Some((n_unknown, first.unwrap()));
                if n_unknown <= 2 {
                    break;
                }
            }
        }
        best.map(|(_, l)| l)
    }

    fn witness(&self) -> Interpretation {
        Interpretation::from_values(
            (0..self.lo.len())
                .map(|j| self.domains.values[j][self.lo[j]])
                .collect(),
        )
    }

    fn run(&mut self, budget: u64) -> Result<SolveResult, Error> {
        for v in 0..self.lo.len() {
            self.queued[v] = true;
            self.queue.push(v);
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut expansions = 0u64;
        let mut ok = self.propagate();
        loop {
            if !ok {
                loop {
                    let Some(frame) = stack.pop() else {
                        return Ok(SolveResult::Unsat);
                    };
                    self.undo_to(frame.trail_len);
                    if !frame.flipped {
                        stack.push(Frame {
                            flipped: true,
                            ..frame
                        });
                        ok = self.enforce(frame.lit, true) && self.propagate();
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }
            let Some(lit) = self.pick_branch() else {
                return Ok(SolveResult::Sat(self.witness()));
            };
            expansions += 1;
            if expansions > budget {
                return Err(Error::ResourceLimit(budget));
            }
            stack.push(Frame {
                lit,
                trail_len: self.trail.len(),
                flipped: false,
            });
            ok = self.enforce(lit, false) && self.propagate();
        }
    }
}

/// Exact satisfiability by backtracking over candidate domains, with the
/// default budget.
pub fn solve_complete(f: &Formula) -> Result<SolveResult, Error> {
    solve_complete_with_budget(f, DEFAULT_BUDGET)
}

/// Exact satisfiability by backtracking over candidate domains.
///
/// Each variable keeps an interval of candidate indices; literals are
/// true/false/unknown relative to it. Unit clauses narrow intervals, and
/// branching splits on a literal of the unresolved clause with the fewest
/// unknown literals. More than `budget` branchings yields
/// [`Error::ResourceLimit`]. A SAT witness assigns each variable the smallest
/// candidate of its final interval, so it is tight.
pub fn solve_complete_with_budget(f: &Formula, budget: u64) -> Result<SolveResult, Error> {
    let domains = CandidateDomain::of(f);
    let result = Search::new(f, &domains).run(budget)?;
    if let SolveResult::Sat(w) = &result {
        debug_assert!(eval_formula(f, w).unwrap());
    }
    Ok(result)
}

/// Number of tight interpretations (over [`CandidateDomain`]) satisfying `f`.
pub fn count_tight_satisfying(f: &Formula, budget: u64) -> Result<u64, Error> {
    let domains = CandidateDomain::of(f);
    let total = domains.product_size();
    if total > budget {
        return Err(Error::ResourceLimit(budget));
    }
    let n = f.n() as usize;
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        let interp = Interpretation::from_values(
            (0..n).map(|j| domains.values[j][idx[j]]).collect(),
        );
        if eval_formula(f, &interp)? {
            count += 1;
        }
        // odometer
        let mut j = 0;
        loop {
            if j == n {
                return Ok(count);
            }
            idx[j] += 1;
            if idx[j] < domains.values[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// implication digraph

/// Why an edge of the [`ImplicationDigraph`] exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Contrapositive of the clause with this index.
    Clause(usize),
    /// A literal implies a weaker one on the same variable.
    Entailment,
}

/// Implication digraph of a 2-rSAT formula.
///
/// For every variable with sorted candidates `d_0 < ... < d_r`, node pairs
/// `(x <= d_i, x >= d_{i+1})` for `i < r` are each other's negation over the
/// candidate set. `x <= d_r` and `x >= d_0` hold for every candidate and get
/// no node; a clause containing one is satisfied and adds no edges.
#[derive(Clone, Debug)]
pub struct ImplicationDigraph {
    domains: CandidateDomain,
    base: Vec<usize>,
    nodes: Vec<Literal>,
    adj: Vec<Vec<(usize, EdgeKind)>>,
}

impl ImplicationDigraph {
    pub fn build(f: &Formula) -> Result<Self, Error> {
        if f.k() != 2 {
            return Err(Error::WrongArity(f.k()));
        }
        let domains = CandidateDomain::of(f);
        let mut base = Vec::with_capacity(f.n() as usize + 1);
        let mut nodes = Vec::new();
        for j in 1..=f.n() {
            base.push(nodes.len() / 2);
            let dom = domains.of_var(j);
            for w in dom.windows(2) {
                nodes.push(Literal::le(j, w[0])?);
                nodes.push(Literal::ge(j, w[1])?);
            }
        }
        base.push(nodes.len() / 2);
        let mut g = ImplicationDigraph {
            domains,
            base,
            adj: vec![Vec::new(); nodes.len()],
            nodes,
        };
        for j in 0..f.n() as usize {
            for b in g.base[j]..g.base[j + 1].saturating_sub(1) {
                // x <= d_i  ->  x <= d_{i+1}, and its contrapositive
                g.adj[2 * b].push((2 * b + 2, EdgeKind::Entailment));
                g.adj[2 * b + 3].push((2 * b + 1, EdgeKind::Entailment));
            }
        }
        for (ci, clause) in f.clauses().iter().enumerate() {
            let [u, w] = clause.literals() else {
                unreachable!("k = 2");
            };
            let (Some(u), Some(w)) = (g.node_of(u), g.node_of(w)) else {
                continue;
            };
            g.adj[u ^ 1].push((w, EdgeKind::Clause(ci)));
            g.adj[w ^ 1].push((u, EdgeKind::Clause(ci)));
        }
        Ok(g)
    }

    /// Node index of `lit`, or `None` if it holds on every candidate.
    pub fn node_of(&self, lit: &Literal) -> Option<usize> {
        let j = lit.var() as usize - 1;
        let i = self.domains.index_of(lit);
        let len = self.domains.values[j].len();
        match lit.relation() {
            Relation::Le if i + 1 == len => None,
            Relation::Le => Some(2 * (self.base[j] + i)),
            Relation::Ge if i == 0 => None,
            Relation::Ge => Some(2 * (self.base[j] + i - 1) + 1),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn literal(&self, node: usize) -> &Literal {
        &self.nodes[node]
    }

    /// The node holding the negation of `node`.
    pub fn negation(node: usize) -> usize {
        node ^ 1
    }

    pub fn domains(&self) -> &CandidateDomain {
        &self.domains
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = (usize, EdgeKind)> + '_ {
        self.adj[node].iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&(w, k)| (u, w, k)))
    }

    /// Tarjan's algorithm, iterative. Component ids are assigned in reverse
    /// topological order (sink components first).
    pub fn strongly_connected_components(&self) -> Vec<usize> {
        tarjan_scc(&self.adj)
    }
}

fn tarjan_scc(adj: &[Vec<(usize, EdgeKind)>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&(w, _)) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Decides a 2-rSAT formula through its [`ImplicationDigraph`].
///
/// UNSAT iff some strongly connected component contains a node and its
/// negation, i.e. two disjoint literals on one variable. Otherwise each
/// `[x <= d_i]` is set true iff its component precedes its negation's in
/// reverse topological order, and `x` takes the smallest candidate `d_i` with
/// `[x <= d_i]` true (the largest candidate if there is none).
pub fn solve_2rsat_scc(f: &Formula) -> Result<SolveResult, Error> {
    let g = ImplicationDigraph::build(f)?;
    let comp = g.strongly_connected_components();
    if (0..g.node_count() / 2).any(|b| comp[2 * b] == comp[2 * b + 1]) {
        return Ok(SolveResult::Unsat);
    }
    let values = (0..f.n() as usize)
        .map(|j| {
            let dom = &g.domains.values[j];
            (g.base[j]..g.base[j + 1])
                .position(|b| comp[2 * b] < comp[2 * b + 1])
                .map_or(*dom.last().unwrap(), |i| dom[i])
        })
        .collect();
    let witness = Interpretation::from_values(values);
    debug_assert!(eval_formula(f, &witness).unwrap());
    Ok(SolveResult::Sat(witness))
}
