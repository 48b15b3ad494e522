//! Linear quotients: verifying and searching for admissible orders.
//!
//! An order `u_1, ..., u_m` of `G(I)` is admissible when every colon ideal
//! `(u_1, ..., u_{i-1}) : u_i` is generated by variables. The verifier
//! computes each colon ideal explicitly and minimalizes it. The search uses a
//! different route: it caches, for every ordered pair `(u_k, u_c)`, the
//! support of `u_k : u_c` and whether it is a single variable, and accepts a
//! placement when every earlier quotient is divisible by one of the
//! single-variable quotients.
//!
//! The colon at a step depends only on the *set* of earlier generators, so a
//! set of placed generators that cannot be completed can be remembered and
//! skipped regardless of how it was reached.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A permutation of `G(I)`, a candidate admissible order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrder {
    ideal: MonomialIdeal,
    order: Vec<Monomial>,
}

impl GeneratorOrder {
    pub fn new(ideal: MonomialIdeal, order: Vec<Monomial>) -> Result<Self> {
        if order.len() != ideal.len() {
            return Err(Error::InvalidOrder(format!(
                "{} monomials listed for {} generators",
                order.len(),
                ideal.len()
            )));
        }
        let mut seen = HashSet::with_capacity(order.len());
        for m in &order {
            m.check_arity(ideal.nvars())?;
            if !ideal.is_generator(m) {
                return Err(Error::InvalidOrder(format!("{m} is not a minimal generator")));
            }
            if !seen.insert(m) {
                return Err(Error::InvalidOrder(format!("{m} is listed twice")));
            }
        }
        Ok(GeneratorOrder { ideal, order })
    }

    /// `G(I)` in canonical order.
    pub fn canonical(ideal: MonomialIdeal) -> Self {
        let order = ideal.gens().to_vec();
        GeneratorOrder { ideal, order }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn order(&self) -> &[Monomial] {
        &self.order
    }
}

/// For each step, the variables (zero-based) generating its colon ideal.
/// The first step of an order from scratch has no colon and records `[]`.
pub type ColonTrace = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFailure {
    /// Zero-based position of the offending monomial in the checked sequence.
    pub position: usize,
    /// The colon ideal at that position.
    pub colon: MonomialIdeal,
}

/// `(prefix) : u`, minimalized. The prefix must be nonempty.
pub fn prefix_colon(prefix: &[Monomial], u: &Monomial) -> Result<MonomialIdeal> {
    let nvars = u.nvars();
    let ideal = MonomialIdeal::minimalize(nvars, prefix.iter().cloned())?;
    ideal.colon(u)
}

/// The variables generating `(prefix) : u` if that colon is generated by
/// variables.
pub fn linear_colon_variables(prefix: &[Monomial], u: &Monomial) -> Result<Option<Vec<usize>>> {
    let colon = prefix_colon(prefix, u)?;
    if colon.gens().iter().all(|g| g.degree() == 1) {
        let vars = colon
            .gens()
            .iter()
            .map(|g| g.exponents().iter().position(|&e| e == 1).expect("degree one"))
            .sorted()
            .collect();
        Ok(Some(vars))
    } else {
        Ok(None)
    }
}

/// Check that `appended` extends `start` by linear quotients: each colon
/// `(start, v_1, ..., v_k) : v_{k+1}` is generated by variables. With an
/// empty `start` this is the admissibility test for the order `appended`.
pub fn check_extension(
    start: &[Monomial],
    appended: &[Monomial],
) -> Result<ColonTrace, OrderFailure> {
    let mut prefix: Vec<Monomial> = start.to_vec();
    let mut trace = Vec::with_capacity(appended.len());
    for (position, v) in appended.iter().enumerate() {
        if prefix.is_empty() {
            trace.push(Vec::new());
        } else {
            let colon = prefix_colon(&prefix, v).map_err(|_| OrderFailure {
                position,
                colon: MonomialIdeal::zero(v.nvars()),
            })?;
            if colon.gens().iter().any(|g| g.degree() != 1) {
                return Err(OrderFailure { position, colon });
            }
            trace.push(
                colon
                    .gens()
                    .iter()
                    .map(|g| g.exponents().iter().position(|&e| e == 1).expect("degree one"))
                    .sorted()
                    .collect(),
            );
        }
        prefix.push(v.clone());
    }
    Ok(trace)
}

pub fn is_admissible_order(order: &GeneratorOrder) -> Result<ColonTrace, OrderFailure> {
    check_extension(&[], order.order())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// The found sequence: a full order for [`find_admissible_order`], the
    /// appended generators for [`extends_by_linear_quotients`].
    pub sequence: Option<Vec<Monomial>>,
    /// Attempted placements.
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

struct Searcher<'a> {
    /// Pool of generators to place.
    pool: &'a [Monomial],
    /// `support[k][c]`: variables dividing `pool[k] : pool[c]`.
    support: Vec<Vec<u64>>,
    /// `single[k][c]`: bit of the variable if `pool[k] : pool[c]` is one.
    single: Vec<Vec<u64>>,
    /// `start_masks[c]`: supports of `g : pool[c]` for each fixed start generator `g`.
    start_masks: Vec<Vec<u64>>,
    /// Union of the single-variable bits among `start_masks[c]`.
    start_single: Vec<u64>,
    budget: u64,
    nodes: u64,
    dead: HashSet<FixedBitSet>,
    placed: FixedBitSet,
    sequence: Vec<usize>,
}

fn mask_of(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (k, _)| acc | (1 << k))
}

fn single_of(m: &Monomial) -> u64 {
    if m.degree() == 1 {
        mask_of(m)
    } else {
        0
    }
}

impl<'a> Searcher<'a> {
    fn new(start: &[Monomial], pool: &'a [Monomial], budget: u64) -> Self {
        let n = pool.len();
        let mut support = vec![vec![0u64; n]; n];
        let mut single = vec![vec![0u64; n]; n];
        for (k, a) in pool.iter().enumerate() {
            for (c, b) in pool.iter().enumerate() {
                if k != c {
                    let q = a.colon(b);
                    support[k][c] = mask_of(&q);
                    single[k][c] = single_of(&q);
                }
            }
        }
        let mut start_masks = Vec::with_capacity(n);
        let mut start_single = Vec::with_capacity(n);
        for b in pool {
            let quotients: Vec<Monomial> = start.iter().map(|a| a.colon(b)).collect();
            start_single.push(quotients.iter().fold(0, |acc, q| acc | single_of(q)));
            start_masks.push(quotients.iter().map(mask_of).collect());
        }
        Searcher {
            pool,
            support,
            single,
            start_masks,
            start_single,
            budget,
            nodes: 0,
            dead: HashSet::new(),
            placed: FixedBitSet::with_capacity(n),
            sequence: Vec::with_capacity(n),
        }
    }

    /// Whether `c` may follow the start set and the placed generators: every
    /// earlier quotient must be divisible by some single-variable quotient.
    fn fits(&self, c: usize) -> bool {
        let mut vars = self.start_single[c];
        for k in self.placed.ones() {
            vars |= self.single[k][c];
        }
        self.start_masks[c].iter().all(|m| m & vars != 0)
            && self.placed.ones().all(|k| self.support[k][c] & vars != 0)
    }

    fn run(&mut self) -> Step {
        if self.sequence.len() == self.pool.len() {
            return Step::Found;
        }
        for c in 0..self.pool.len() {
            if self.placed.contains(c) {
                continue;
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            if !self.fits(c) {
                continue;
            }
            self.placed.insert(c);
            if self.dead.contains(&self.placed) {
                self.placed.set(c, false);
                continue;
            }
            self.sequence.push(c);
            match self.run() {
                Step::Found => return Step::Found,
                Step::OutOfBudget => return Step::OutOfBudget,
                Step::Dead => {
                    self.dead.insert(self.placed.clone());
                    self.sequence.pop();
                    self.placed.set(c, false);
                }
            }
        }
        Step::Dead
    }
}

fn search(start: &[Monomial], pool: &[Monomial], budget: u64) -> SearchOutcome {
    let mut s = Searcher::new(start, pool, budget);
    match s.run() {
        Step::Found => SearchOutcome {
            status: SearchStatus::Found,
            sequence: Some(s.sequence.iter().map(|&k| pool[k].clone()).collect()),
            nodes: s.nodes,
        },
        Step::Dead => SearchOutcome {
            status: SearchStatus::Exhausted,
            sequence: None,
            nodes: s.nodes,
        },
        Step::OutOfBudget => SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            sequence: None,
            nodes: s.nodes,
        },
    }
}

/// Backtracking search for an admissible order of `G(I)`. Candidates are
/// tried in canonical generator order.
pub fn find_admissible_order(ideal: &MonomialIdeal, budget: u64) -> Result<SearchOutcome> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.nvars() > 64 {
        return Err(Error::TooManyVariables(ideal.nvars()));
    }
    Ok(search(&[], ideal.gens(), budget))
}

/// Search for an order of `G(J) \ G(I)` extending `G(I)` by linear
/// quotients. Requires `G(I) ⊆ G(J)`.
pub fn extends_by_linear_quotients(
    start: &MonomialIdeal,
    end: &MonomialIdeal,
    budget: u64,
) -> Result<SearchOutcome> {
    if start.nvars() != end.nvars() {
        return Err(Error::ArityMismatch {
            expected: end.nvars(),
            found: start.nvars(),
        });
    }
    if end.nvars() > 64 {
        return Err(Error::TooManyVariables(end.nvars()));
    }
    if let Some(g) = start.gens().iter().find(|g| !end.is_generator(g)) {
        return Err(Error::NotNested(g.clone()));
    }
    let pool: Vec<Monomial> = end
        .gens()
        .iter()
        .filter(|g| !start.is_generator(g))
        .cloned()
        .collect();
    Ok(search(start.gens(), &pool, budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

/// Whether every graded component in `[mindeg, maxdeg]` has linear
/// quotients. `Unknown` when no component is refuted but some search ran out
/// of budget.
pub fn has_componentwise_linear_quotients(ideal: &MonomialIdeal, budget: u64) -> Result<Decision> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut decision = Decision::Yes;
    for (_, component) in ideal.components()? {
        match find_admissible_order(&component, budget)?.status {
            SearchStatus::Found => {}
            SearchStatus::Exhausted => return Ok(Decision::No),
            SearchStatus::BudgetExceeded => decision = Decision::Unknown,
        }
    }
    Ok(decision)
}

/// Try every permutation of `gens`. Factorial time; meant for small
/// generating sets as an independent check on the search.
pub fn admissible_by_permutations(gens: &[Monomial]) -> Option<Vec<Monomial>> {
    if gens.is_empty() {
        return Some(Vec::new());
    }
    // memoize per (prefix set, next) since the colon only depends on the set
    let mut cache: HashMap<(Vec<usize>, usize), bool> = HashMap::new();
    let idx: Vec<usize> = (0..gens.len()).collect();
    'perm: for perm in idx.iter().copied().permutations(gens.len()) {
        for pos in 1..perm.len() {
            let mut key_set: Vec<usize> = perm[..pos].to_vec();
            key_set.sort_unstable();
            let key = (key_set, perm[pos]);
            let ok = *cache.entry(key).or_insert_with(|| {
                let prefix: Vec<Monomial> = perm[..pos].iter().map(|&k| gens[k].clone()).collect();
                matches!(linear_colon_variables(&prefix, &gens[perm[pos]]), Ok(Some(_)))
            });
            if !ok {
                continue 'perm;
            }
        }
        return Some(perm.into_iter().map(|k| gens[k].clone()).collect());
    }
    None
}
