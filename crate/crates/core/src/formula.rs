//! Regular signed CNF formulas and their semantics.
//!
//! A literal is a closed half-line condition `x <= a` or `x >= a` on one
//! variable. A clause is satisfied when at least one of its literals is, and a
//! formula when all of its clauses are.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::threshold::Threshold;

/// The ordered truth-value set `V` a formula is interpreted over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValueSpec {
    /// `V = {u/(v-1) : u = 0..v-1}`.
    Finite(u32),
    /// `V = {b/2^lambda : b = 0..2^lambda}`, which has `2^lambda + 1` elements.
    Dyadic(u32),
    /// `V = [0, 1]`.
    Continuous,
}

/// Largest dyadic precision whose values still fit a `u64` denominator.
pub const MAX_DYADIC_LAMBDA: u32 = 62;

impl TruthValueSpec {
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            TruthValueSpec::Finite(v) if v < 2 => Err(Error::InvalidVspec(format!(
                "finite truth-value set needs v >= 2, got {v}"
            ))),
            TruthValueSpec::Dyadic(l) if l > MAX_DYADIC_LAMBDA => Err(Error::InvalidVspec(
                format!("dyadic precision {l} exceeds {MAX_DYADIC_LAMBDA}"),
            )),
            _ => Ok(()),
        }
    }

    /// Whether `t` is an element of `V`.
    pub fn contains(&self, t: Threshold) -> bool {
        match *self {
            TruthValueSpec::Finite(v) => (v as u64 - 1) % t.denom() == 0,
            TruthValueSpec::Dyadic(l) => t.denom().is_power_of_two() && t.denom() <= 1u64 << l,
            TruthValueSpec::Continuous => true,
        }
    }

    /// `|V|`, or `None` for the continuum.
    pub fn cardinality(&self) -> Option<u64> {
        match *self {
            TruthValueSpec::Finite(v) => Some(v as u64),
            TruthValueSpec::Dyadic(l) => Some((1u64 << l) + 1),
            TruthValueSpec::Continuous => None,
        }
    }

    /// All elements of `V` in increasing order; `None` for the continuum.
    pub fn values(&self) -> Option<Vec<Threshold>> {
        match *self {
            TruthValueSpec::Finite(v) => Some(
                (0..v as u64)
                    .map(|u| Threshold::new(u, v as u64 - 1).unwrap())
                    .collect(),
            ),
            TruthValueSpec::Dyadic(l) => Some(
                (0..=1u64 << l)
                    .map(|b| Threshold::dyadic(b, l).unwrap())
                    .collect(),
            ),
            TruthValueSpec::Continuous => None,
        }
    }
}

impl fmt::Display for TruthValueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValueSpec::Finite(v) => write!(f, "finite:{v}"),
            TruthValueSpec::Dyadic(l) => write!(f, "dyadic:{l}"),
            TruthValueSpec::Continuous => f.write_str("continuous"),
        }
    }
}

impl FromStr for TruthValueSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidVspec(format!("{s:?}: expected finite:<v>, dyadic:<lambda> or continuous"));
        let spec = match s.split_once(':') {
            None if s == "continuous" => TruthValueSpec::Continuous,
            Some(("finite", v)) => TruthValueSpec::Finite(parse_plain_u32(v).ok_or_else(bad)?),
            Some(("dyadic", l)) => TruthValueSpec::Dyadic(parse_plain_u32(l).ok_or_else(bad)?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_plain_u32(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `x <= bound`
    Le,
    /// `x >= bound`
    Ge,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Le => "le",
            Relation::Ge => "ge",
        }
    }

    pub fn flip(&self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
        }
    }
}

/// A signed literal `x_var <= bound` or `x_var >= bound`. Variables are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    var: u32,
    relation: Relation,
    bound: Threshold,
}

impl Literal {
    /// Rejects variable 0 and the innocuous literals `x <= 1`, `x >= 0`.
    pub fn new(var: u32, relation: Relation, bound: Threshold) -> Result<Self, Error> {
        if var == 0 {
            return Err(Error::InvalidFormula("variables are 1-based".into()));
        }
        let innocuous = match relation {
            Relation::Le => bound.is_one(),
            Relation::Ge => bound.is_zero(),
        };
        if innocuous {
            return Err(Error::InnocuousLiteral {
                var,
                relation: relation.as_str(),
                bound: bound.to_string(),
            });
        }
        Ok(Literal {
            var,
            relation,
            bound,
        })
    }

    pub fn le(var: u32, bound: Threshold) -> Result<Self, Error> {
        Self::new(var, Relation::Le, bound)
    }

    pub fn ge(var: u32, bound: Threshold) -> Result<Self, Error> {
        Self::new(var, Relation::Ge, bound)
    }

    /// Builds a literal from the sampling encoding `(relation, a)` with
    /// `a in V \ {1}`: `Le` means `x <= a` and `Ge` means `x >= 1 - a`.
    pub fn from_encoded(var: u32, relation: Relation, side: Threshold) -> Result<Self, Error> {
        let bound = match relation {
            Relation::Le => side,
            Relation::Ge => side.complement(),
        };
        Self::new(var, relation, bound)
    }

    pub fn var(&self) -> u32 {
        self.var
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn bound(&self) -> Threshold {
        self.bound
    }

    /// The right-hand side in the sampling encoding: `a` for `x <= a`, `1 - b`
    /// for `x >= b`. Always in `[0, 1)`.
    pub fn encoded_side(&self) -> Threshold {
        match self.relation {
            Relation::Le => self.bound,
            Relation::Ge => self.bound.complement(),
        }
    }

    /// Same relation and variable, different bound.
    pub fn with_bound(&self, bound: Threshold) -> Result<Self, Error> {
        Self::new(self.var, self.relation, bound)
    }

    pub fn with_var(&self, var: u32) -> Result<Self, Error> {
        Self::new(var, self.relation, self.bound)
    }

    pub fn is_satisfied_by(&self, value: Threshold) -> bool {
        eval_literal(self, value)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.var, self.relation.as_str(), self.bound)
    }
}

impl FromStr for Literal {
    type Err = Error;

    /// Parses `<var>:<le|ge>:<num>/<den>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.splitn(3, ':');
        let (Some(var), Some(rel), Some(bound)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::InvalidFormula(format!("{s:?}: expected <var>:<le|ge>:<num>/<den>")));
        };
        let var = parse_plain_u32(var)
            .ok_or_else(|| Error::InvalidFormula(format!("{s:?}: bad variable index")))?;
        let relation = match rel {
            "le" => Relation::Le,
            "ge" => Relation::Ge,
            _ => return Err(Error::InvalidFormula(format!("{s:?}: relation must be le or ge"))),
        };
        Literal::new(var, relation, bound.parse()?)
    }
}

/// True iff `value` satisfies the closed inequality of `lit`.
pub fn eval_literal(lit: &Literal, value: Threshold) -> bool {
    match lit.relation {
        Relation::Le => value <= lit.bound,
        Relation::Ge => value >= lit.bound,
    }
}

/// True iff no truth value satisfies both constraint parts. Variables are not
/// compared.
///
/// Both literals are closed half-lines of a set containing 0 and 1, so they
/// are disjoint exactly when one is `<= a`, the other `>= b`, and `b > a`.
pub fn signs_disjoint(l1: &Literal, l2: &Literal) -> bool {
    match (l1.relation, l2.relation) {
        (Relation::Le, Relation::Ge) => l2.bound > l1.bound,
        (Relation::Ge, Relation::Le) => l1.bound > l2.bound,
        _ => false,
    }
}

/// The weakest literal over `domain` that is disjoint from `lit`, i.e. its
/// negation restricted to `domain`. `None` when every domain value satisfies
/// `lit`.
///
/// `domain` must be sorted increasingly.
pub fn complement_literal(lit: &Literal, domain: &[Threshold]) -> Result<Option<Literal>, Error> {
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
    let out = match lit.relation {
        Relation::Le => {
            let idx = domain.partition_point(|d| *d <= lit.bound);
            domain.get(idx).map(|&d| Literal::ge(lit.var, d))
        }
        Relation::Ge => {
            let idx = domain.partition_point(|d| *d < lit.bound);
            idx.checked_sub(1).map(|i| Literal::le(lit.var, domain[i]))
        }
    };
    out.transpose()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn has_repeated_variable(&self) -> bool {
        self.literals
            .iter()
            .enumerate()
            .any(|(i, a)| self.literals[i + 1..].iter().any(|b| a.var == b.var))
    }

    pub fn is_satisfied_by(&self, interp: &Interpretation) -> Result<bool, Error> {
        for lit in &self.literals {
            let value = interp
                .get(lit.var)
                .ok_or(Error::MissingAssignment(lit.var))?;
            if eval_literal(lit, value) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl From<Vec<Literal>> for Clause {
    fn from(literals: Vec<Literal>) -> Self {
        Clause::new(literals)
    }
}

/// A regular signed k-CNF formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    k: usize,
    n: u32,
    clauses: Vec<Clause>,
    vspec: TruthValueSpec,
    distinct_vars_per_clause: bool,
}

impl Formula {
    /// Validates arity, variable range, bounds against `vspec`, innocuous
    /// literals (already excluded by [`Literal`]) and the distinct-variable flag.
    pub fn new(
        k: usize,
        n: u32,
        vspec: TruthValueSpec,
        distinct_vars_per_clause: bool,
        clauses: Vec<Clause>,
    ) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::InvalidFormula(format!("k must be at least 2, got {k}")));
        }
        vspec.validate()?;
        for (i, clause) in clauses.iter().enumerate() {
            if clause.len() != k {
                return Err(Error::InvalidFormula(format!(
                    "clause {i} has {} literals, expected {k}",
                    clause.len()
                )));
            }
            for lit in clause.literals() {
                if lit.var > n {
                    return Err(Error::InvalidFormula(format!(
                        "clause {i}: variable x{} out of range 1..{n}",
                        lit.var
                    )));
                }
                if !vspec.contains(lit.bound) {
                    return Err(Error::BoundNotInDomain {
                        bound: lit.bound.to_string(),
                        vspec: vspec.to_string(),
                    });
                }
            }
            if distinct_vars_per_clause && clause.has_repeated_variable() {
                return Err(Error::InvalidFormula(format!(
                    "clause {i} repeats a variable but the formula requires distinct variables"
                )));
            }
        }
        Ok(Formula {
            k,
            n,
            clauses,
            vspec,
            distinct_vars_per_clause,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn vspec(&self) -> TruthValueSpec {
        self.vspec
    }

    pub fn distinct_vars_per_clause(&self) -> bool {
        self.distinct_vars_per_clause
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.clauses.iter().flat_map(|c| c.literals.iter())
    }

    /// Rebuilds the formula with every literal mapped through `f`, keeping
    /// the clause structure, over a new truth-value set.
    pub fn map_literals<F>(&self, vspec: TruthValueSpec, mut f: F) -> Result<Formula, Error>
    where
        F: FnMut(&Literal) -> Result<Literal, Error>,
    {
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.literals.iter().map(&mut f).collect::<Result<Vec<_>, _>>().map(Clause::new))
            .collect::<Result<Vec<_>, _>>()?;
        Formula::new(self.k, self.n, vspec, self.distinct_vars_per_clause, clauses)
    }

    pub fn is_satisfied_by(&self, interp: &Interpretation) -> Result<bool, Error> {
        eval_formula(self, interp)
    }
}

/// An assignment of truth values to variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interpretation {
    values: Vec<Option<Threshold>>,
}

impl Interpretation {
    /// All `n` variables unassigned.
    pub fn unassigned(n: u32) -> Self {
        Interpretation {
            values: vec![None; n as usize],
        }
    }

    /// `values[i]` is the value of variable `i + 1`.
    pub fn from_values(values: Vec<Threshold>) -> Self {
        Interpretation {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn get(&self, var: u32) -> Option<Threshold> {
        var.checked_sub(1)
            .and_then(|i| self.values.get(i as usize).copied().flatten())
    }

    pub fn set(&mut self, var: u32, value: Threshold) {
        assert!(var >= 1 && var <= self.n(), "variable x{var} out of range");
        self.values[var as usize - 1] = Some(value);
    }

    /// `(var, value)` pairs of the assigned variables.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Threshold)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i as u32 + 1, v)))
    }

    /// Every assigned value lies in `vspec`'s truth-value set.
    pub fn within(&self, vspec: TruthValueSpec) -> bool {
        self.iter().all(|(_, v)| vspec.contains(v))
    }
}

/// True iff every clause of `f` has a literal satisfied by `interp`.
pub fn eval_formula(f: &Formula, interp: &Interpretation) -> Result<bool, Error> {
    let mut all = true;
    for clause in &f.clauses {
        // keep scanning so that a missing value is always reported
        if !clause.is_satisfied_by(interp)? {
            all = false;
        }
    }
    Ok(all)
}

/// Per-variable counts of literal slots, `counts[j - 1] = R_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OccurrenceProfile {
    pub counts: Vec<u64>,
}

impl OccurrenceProfile {
    pub fn new(counts: Vec<u64>) -> Self {
        OccurrenceProfile { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn occurrence_profile(f: &Formula) -> OccurrenceProfile {
    let mut counts = vec![0u64; f.n as usize];
    for lit in f.literals() {
        counts[lit.var as usize - 1] += 1;
    }
    OccurrenceProfile { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(n: u64, d: u64) -> Threshold {
        Threshold::new(n, d).unwrap()
    }

    fn le(v: u32, n: u64, d: u64) -> Literal {
        Literal::le(v, t(n, d)).unwrap()
    }

    fn ge(v: u32, n: u64, d: u64) -> Literal {
        Literal::ge(v, t(n, d)).unwrap()
    }

    #[test]
    fn literal_evaluation() {
        assert!(eval_literal(&le(1, 3, 10), t(3, 10)));
        assert!(!eval_literal(&ge(1, 7, 10), t(1, 2)));
        assert!(eval_literal(&le(1, 1, 2), Threshold::ZERO));
    }

    #[test]
    fn innocuous_literals_rejected() {
        assert!(matches!(
            Literal::le(1, Threshold::ONE),
            Err(Error::InnocuousLiteral { .. })
        ));
        assert!(Literal::ge(1, Threshold::ZERO).is_err());
        assert!(Literal::le(0, Threshold::ZERO).is_err());
    }

    #[test]
    fn formula_evaluation() {
        let f = Formula::new(
            2,
            1,
            TruthValueSpec::Continuous,
            false,
            vec![Clause::new(vec![le(1, 3, 10), ge(1, 7, 10)])],
        )
        .unwrap();
        assert!(eval_formula(&f, &Interpretation::from_values(vec![Threshold::ZERO])).unwrap());

        // two unit clauses (k = 2 with a repeated literal) with disjoint signs
        let g = Formula::new(
            2,
            1,
            TruthValueSpec::Continuous,
            false,
            vec![
                Clause::new(vec![le(1, 3, 10), le(1, 3, 10)]),
                Clause::new(vec![ge(1, 7, 10), ge(1, 7, 10)]),
            ],
        )
        .unwrap();
        for x in 0..=100 {
            let i = Interpretation::from_values(vec![t(x, 100)]);
            assert!(!eval_formula(&g, &i).unwrap());
        }
    }

    #[test]
    fn classical_embedding() {
        let f = Formula::new(
            2,
            2,
            TruthValueSpec::Finite(2),
            true,
            vec![Clause::new(vec![ge(1, 1, 1), le(2, 0, 1)])],
        )
        .unwrap();
        let i = Interpretation::from_values(vec![Threshold::ZERO, Threshold::ZERO]);
        assert!(eval_formula(&f, &i).unwrap());
    }

    #[test]
    fn missing_assignment() {
        let f = Formula::new(
            2,
            2,
            TruthValueSpec::Continuous,
            true,
            vec![Clause::new(vec![le(1, 1, 2), le(2, 1, 2)])],
        )
        .unwrap();
        let mut i = Interpretation::unassigned(2);
        i.set(1, Threshold::ONE);
        assert_eq!(eval_formula(&f, &i), Err(Error::MissingAssignment(2)));
    }

    #[test]
    fn disjointness() {
        assert!(signs_disjoint(&le(1, 3, 10), &ge(1, 7, 10)));
        assert!(signs_disjoint(&ge(1, 7, 10), &le(1, 3, 10)));
        assert!(!signs_disjoint(&le(1, 3, 10), &le(1, 9, 10)));
        assert!(!signs_disjoint(&le(1, 1, 2), &ge(1, 1, 2)));
    }

    #[test]
    fn complements() {
        let dom = [Threshold::ZERO, t(3, 10), t(7, 10), Threshold::ONE];
        assert_eq!(complement_literal(&le(1, 3, 10), &dom).unwrap(), Some(ge(1, 7, 10)));
        assert_eq!(complement_literal(&ge(1, 3, 10), &[t(3, 10)]).unwrap(), None);
        let half = [Threshold::ZERO, t(1, 2), Threshold::ONE];
        assert_eq!(complement_literal(&le(1, 1, 2), &half).unwrap(), Some(ge(1, 1, 1)));
        assert_eq!(complement_literal(&le(1, 1, 2), &[]), Err(Error::EmptyDomain));
    }

    #[test]
    fn profiles() {
        let empty = Formula::new(2, 3, TruthValueSpec::Continuous, true, vec![]).unwrap();
        assert_eq!(occurrence_profile(&empty).counts, vec![0, 0, 0]);
        let f = Formula::new(
            2,
            3,
            TruthValueSpec::Continuous,
            true,
            vec![
                Clause::new(vec![le(1, 1, 2), le(2, 1, 2)]),
                Clause::new(vec![le(1, 1, 4), ge(3, 1, 2)]),
            ],
        )
        .unwrap();
        let r = occurrence_profile(&f);
        assert_eq!(r.counts, vec![2, 1, 1]);
        assert_eq!(r.total(), 4);
    }

    #[test]
    fn formula_validation() {
        let bad_arity = Formula::new(
            2,
            2,
            TruthValueSpec::Continuous,
            false,
            vec![Clause::new(vec![le(1, 1, 2)])],
        );
        assert!(bad_arity.is_err());
        let out_of_range = Formula::new(
            2,
            1,
            TruthValueSpec::Continuous,
            false,
            vec![Clause::new(vec![le(1, 1, 2), le(2, 1, 2)])],
        );
        assert!(out_of_range.is_err());
        let not_in_v = Formula::new(
            2,
            2,
            TruthValueSpec::Finite(3),
            false,
            vec![Clause::new(vec![le(1, 1, 3), le(2, 1, 2)])],
        );
        assert!(matches!(not_in_v, Err(Error::BoundNotInDomain { .. })));
        let repeated = Formula::new(
            2,
            2,
            TruthValueSpec::Continuous,
            true,
            vec![Clause::new(vec![le(1, 1, 2), ge(1, 1, 2)])],
        );
        assert!(repeated.is_err());
    }

    #[test]
    fn vspec_membership_and_text() {
        let f5 = TruthValueSpec::Finite(5);
        assert!(f5.contains(t(3, 4)));
        assert!(f5.contains(t(1, 2)));
        assert!(!f5.contains(t(1, 3)));
        let d2 = TruthValueSpec::Dyadic(2);
        assert_eq!(d2.values().unwrap().len(), 5);
        assert!(d2.contains(t(3, 4)));
        assert!(!d2.contains(t(1, 8)));
        assert_eq!(TruthValueSpec::Dyadic(0).values().unwrap(), vec![Threshold::ZERO, Threshold::ONE]);
        for s in ["finite:7", "dyadic:3", "continuous"] {
            assert_eq!(s.parse::<TruthValueSpec>().unwrap().to_string(), s);
        }
        assert!("finite:1".parse::<TruthValueSpec>().is_err());
        assert!("finite:x".parse::<TruthValueSpec>().is_err());
        assert!("dyadic:63".parse::<TruthValueSpec>().is_err());
    }

    fn arb_literal(v: u32) -> impl Strategy<Value = Literal> {
        let den = (v - 1) as u64;
        (any::<bool>(), 0..den).prop_map(move |(is_le, u)| {
            if is_le {
                Literal::le(1, Threshold::new(u, den).unwrap()).unwrap()
            } else {
                Literal::ge(1, Threshold::new(u + 1, den).unwrap()).unwrap()
            }
        })
    }

    proptest! {
        // disjointness agrees with exhaustive search over the whole finite V
        #[test]
        fn disjoint_iff_no_common_value(
            (v, a, b) in (2u32..=64).prop_flat_map(|v| (Just(v), arb_literal(v), arb_literal(v)))
        ) {
            let values = TruthValueSpec::Finite(v).values().unwrap();
            let common = values.iter().any(|&x| eval_literal(&a, x) && eval_literal(&b, x));
            prop_assert_eq!(signs_disjoint(&a, &b), !common);
        }

        #[test]
        fn complement_is_exact_negation_on_domain(
            raw in proptest::collection::btree_set(0u64..=16, 1..8),
            pick in 0usize..8,
            is_le in any::<bool>(),
        ) {
            let domain: Vec<Threshold> = raw.iter().map(|&b| t(b, 16)).collect();
            let bound = domain[pick % domain.len()];
            let lit = if is_le { Literal::le(1, bound) } else { Literal::ge(1, bound) };
            prop_assume!(lit.is_ok());
            let lit = lit.unwrap();
            match complement_literal(&lit, &domain).unwrap() {
                None => prop_assert!(domain.iter().all(|&x| eval_literal(&lit, x))),
                Some(c) => {
                    prop_assert!(signs_disjoint(&lit, &c));
                    for &x in &domain {
                        prop_assert_ne!(eval_literal(&lit, x), eval_literal(&c, x));
                    }
                }
            }
        }
    }
}
