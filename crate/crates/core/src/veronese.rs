//! Veronese-type ideals, the strong exchange factorization, and explicit
//! extension chains.
//!
//! A polymatroidal ideal with the strong exchange property factors as
//! `u * I_(d; a)` with `u` the gcd of its generators. The chains built here
//! extend one ideal to a larger one by linear quotients:
//!
//! * [`chain_var_step`]: `x_i I_(d; a)` to `I_(d+1; a + e_i)`, new generators in
//!   lex order with `x_i` greatest;
//! * [`chain_var`]: `x^c I_(d; a)` to `I_(d + |c|; a + c)` by repeated steps;
//! * [`chain_caps`]: `I_(d; a)` to `I_(d; b)` for `a <= b`, one cap at a time,
//!   new generators in plain lex order;
//! * [`chain_maximal`]: `m I_(d; a)` to `I_(d+1; a + 1)`.
//!
//! [`sep_admissible_order`] glues these degree by degree into an admissible
//! order of any componentwise polymatroidal ideal with the strong exchange
//! property, verifying every chain on the way.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::{is_componentwise_sep, satisfies_strong_exchange, ComponentwiseVerdict, Verdict};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::quotients::{
    check_extension, extends_by_linear_quotients, find_admissible_order, is_admissible_order,
    ColonTrace, GeneratorOrder, DEFAULT_BUDGET,
};

/// `I_(d; a_1, ..., a_n)`. Caps are clamped to `d`, so equal ideals have
/// equal specs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VeroneseSpec {
    degree: u32,
    caps: Vec<u32>,
}

impl VeroneseSpec {
    pub fn new(degree: u32, caps: Vec<u32>) -> Result<Self> {
        if caps.is_empty() {
            return Err(Error::NoVariables);
        }
        let caps: Vec<u32> = caps.into_iter().map(|a| a.min(degree)).collect();
        let total: u64 = caps.iter().map(|&a| u64::from(a)).sum();
        if total < u64::from(degree) {
            return Err(Error::InvalidVeronese(format!(
                "caps {caps:?} cannot reach degree {degree}"
            )));
        }
        Ok(VeroneseSpec { degree, caps })
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::veronese(self.nvars(), self.degree, &self.caps).expect("valid spec")
    }

    /// `(d + 1; a + e_i)`.
    fn raised(&self, i: usize) -> VeroneseSpec {
        let mut caps = self.caps.clone();
        caps[i] += 1;
        VeroneseSpec::new(self.degree + 1, caps).expect("raising keeps the spec valid")
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i >= self.nvars() {
            return Err(Error::VariableIndex {
                index: i,
                nvars: self.nvars(),
            });
        }
        Ok(())
    }
}

/// `I = shift * I_(spec)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepFactorization {
    pub shift: Monomial,
    pub spec: VeroneseSpec,
}

impl SepFactorization {
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        self.spec.ideal().translate(&self.shift)
    }
}

/// Factor an equigenerated ideal as `gcd * I_(d; a)` with `a_i` the largest
/// exponent of `x_i` after dividing by the gcd, and check the product
/// reproduces the ideal.
fn factor_equigenerated(ideal: &MonomialIdeal) -> Result<SepFactorization> {
    let shift = ideal.gcd().ok_or(Error::ZeroIdeal)?;
    let core = ideal.divide(&shift).expect("gcd divides every generator");
    let degree = core.min_degree().expect("nonzero");
    let caps = (0..ideal.nvars())
        .map(|k| core.gens().iter().map(|g| g.exp(k)).max().unwrap_or(0))
        .collect();
    let spec = VeroneseSpec::new(degree, caps)?;
    let f = SepFactorization { shift, spec };
    if &f.ideal()? != ideal {
        return Err(Error::Verification(format!(
            "{} is not {} times a Veronese-type ideal",
            ideal, f.shift
        )));
    }
    Ok(f)
}

/// Factor a polymatroidal ideal with the strong exchange property as
/// `u * I_(d; a)`.
pub fn sep_factorization(ideal: &MonomialIdeal) -> Result<SepFactorization> {
    match satisfies_strong_exchange(ideal)? {
        Verdict::Holds => factor_equigenerated(ideal),
        Verdict::Fails(w) => Err(Error::Precondition(w.to_string())),
    }
}

/// An ordering of `G(end) \ G(start)` meant to extend `start` by linear
/// quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionChain {
    pub start: MonomialIdeal,
    pub end: MonomialIdeal,
    pub appended: Vec<Monomial>,
}

/// Audit form of a verified chain: every appended generator with the
/// variables generating its colon against everything before it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainAudit {
    pub start: Vec<Monomial>,
    pub appended: Vec<Monomial>,
    pub colon_variables: Vec<Vec<usize>>,
}

impl ExtensionChain {
    pub fn empty(ideal: MonomialIdeal) -> Self {
        ExtensionChain {
            start: ideal.clone(),
            end: ideal,
            appended: Vec::new(),
        }
    }

    /// Check `G(start) ⊆ G(end)`, that `appended` lists `G(end) \ G(start)`
    /// exactly once each, and that each step's colon is generated by
    /// variables.
    pub fn verify(&self) -> Result<ColonTrace> {
        if let Some(g) = self.start.gens().iter().find(|g| !self.end.is_generator(g)) {
            return Err(Error::NotNested(g.clone()));
        }
        let expected: HashSet<&Monomial> = self
            .end
            .gens()
            .iter()
            .filter(|g| !self.start.is_generator(g))
            .collect();
        let listed: HashSet<&Monomial> = self.appended.iter().collect();
        if listed.len() != self.appended.len() || listed != expected {
            return Err(Error::Verification(
                "appended generators are not exactly G(end) \\ G(start)".to_string(),
            ));
        }
        check_extension(self.start.gens(), &self.appended).map_err(|f| {
            Error::Verification(format!(
                "chain fails at {} (position {}) with colon {}",
                self.appended[f.position], f.position, f.colon
            ))
        })
    }

    pub fn audit(&self) -> Result<ChainAudit> {
        let colon_variables = self.verify()?;
        Ok(ChainAudit {
            start: self.start.gens().to_vec(),
            appended: self.appended.clone(),
            colon_variables,
        })
    }

    /// `u * start` extended to `u * end` in the same order.
    pub fn translate(&self, u: &Monomial) -> Result<Self> {
        Ok(ExtensionChain {
            start: self.start.translate(u)?,
            end: self.end.translate(u)?,
            appended: self.appended.iter().map(|m| m.mul(u)).collect::<Result<_>>()?,
        })
    }

    /// Concatenate with a chain starting where this one ends.
    pub fn then(mut self, next: ExtensionChain) -> Result<Self> {
        if self.end != next.start {
            return Err(Error::Precondition(format!(
                "chain ends at {} but the next starts at {}",
                self.end, next.start
            )));
        }
        self.appended.extend(next.appended);
        self.end = next.end;
        Ok(self)
    }
}

fn x_power(nvars: usize, c: &[u32]) -> Result<Monomial> {
    debug_assert_eq!(c.len(), nvars);
    Monomial::new(c.to_vec())
}

/// Extend `x_i I_(d; a)` to `I_(d+1; a + e_i)`: the generators of the target
/// not divisible by `x_i` are appended in lex order with `x_i` greatest.
pub fn chain_var_step(spec: &VeroneseSpec, i: usize) -> Result<ExtensionChain> {
    spec.check_var(i)?;
    let xi = Monomial::variable(spec.nvars(), i)?;
    let start = spec.ideal().translate(&xi)?;
    let end = spec.raised(i).ideal();
    let mut appended: Vec<Monomial> = end.gens().iter().filter(|g| g.exp(i) == 0).cloned().collect();
    appended.sort_by(|u, v| v.lex_cmp_leading(u, i));
    Ok(ExtensionChain { start, end, appended })
}

/// Extend `x^c I_(d; a)` to `I_(d + sum c; a + c)` by `c_1` steps in `x_1`,
/// then `c_2` steps in `x_2`, and so on, each step translated by the part of
/// `x^c` not yet absorbed.
pub fn chain_var(spec: &VeroneseSpec, c: &[u32]) -> Result<ExtensionChain> {
    let n = spec.nvars();
    if c.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: c.len(),
        });
    }
    let start = spec.ideal().translate(&x_power(n, c)?)?;
    let mut chain = ExtensionChain::empty(start);
    let mut remaining = c.to_vec();
    let mut current = spec.clone();
    for k in 0..n {
        for _ in 0..c[k] {
            remaining[k] -= 1;
            let step = chain_var_step(&current, k)?.translate(&x_power(n, &remaining)?)?;
            chain = chain.then(step)?;
            current = current.raised(k);
        }
    }
    Ok(chain)
}

/// Extend `I_(d; a)` to `I_(d; b)`, raising caps one unit at a time in
/// variable order. At each raise of `a_s` the new generators (those with
/// `deg_{x_s} = a_s + 1`) follow in decreasing lex order.
pub fn chain_caps(from: &VeroneseSpec, to: &VeroneseSpec) -> Result<ExtensionChain> {
    if from.nvars() != to.nvars() {
        return Err(Error::ArityMismatch {
            expected: from.nvars(),
            found: to.nvars(),
        });
    }
    if from.degree != to.degree {
        return Err(Error::InvalidVeronese(format!(
            "degrees differ: {} and {}",
            from.degree, to.degree
        )));
    }
    if from.caps.iter().zip(&to.caps).any(|(a, b)| a > b) {
        return Err(Error::InvalidVeronese(format!(
            "caps {:?} are not dominated by {:?}",
            from.caps, to.caps
        )));
    }
    let mut caps = from.caps.clone();
    let mut appended = Vec::new();
    for s in 0..from.nvars() {
        while caps[s] < to.caps[s] {
            caps[s] += 1;
            let mut fresh: Vec<Monomial> =
                Monomial::bounded_of_degree(from.nvars(), from.degree, &caps)
                    .into_iter()
                    .filter(|g| g.exp(s) == caps[s])
                    .collect();
            fresh.sort_by(|u, v| v.lex_cmp(u));
            appended.extend(fresh);
        }
    }
    Ok(ExtensionChain {
        start: from.ideal(),
        end: to.ideal(),
        appended,
    })
}

/// How [`chain_maximal`] produced its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalChainMethod {
    /// Nothing to append.
    Trivial,
    /// The order inherited from `chain_var_step` in `x_1` followed by
    /// `chain_caps`, restricted to the generators not in `m I_(d; a)`.
    Composed,
    /// New generators in decreasing lex order.
    Lex,
    /// Backtracking search.
    Search,
}

/// Extend `m I_(d; a)` to `I_(d+1; a_1 + 1, ..., a_n + 1)`.
///
/// Two explicit orders are tried before falling back to search; the
/// returned chain is always verified.
pub fn chain_maximal(spec: &VeroneseSpec) -> Result<(ExtensionChain, MaximalChainMethod)> {
    let n = spec.nvars();
    let start = MonomialIdeal::maximal(n).product(&spec.ideal())?;
    let target = VeroneseSpec::new(spec.degree + 1, spec.caps.iter().map(|a| a + 1).collect())?;
    let end = target.ideal();
    let mut fresh: Vec<Monomial> = end.gens().iter().filter(|g| !start.is_generator(g)).cloned().collect();
    if fresh.is_empty() {
        let chain = ExtensionChain { start, end, appended: fresh };
        chain.verify()?;
        return Ok((chain, MaximalChainMethod::Trivial));
    }

    let full = chain_var_step(spec, 0)?.then(chain_caps(&spec.raised(0), &target)?)?;
    let composed = ExtensionChain {
        start: start.clone(),
        end: end.clone(),
        appended: full
            .appended
            .into_iter()
            .filter(|g| !start.is_generator(g))
            .collect(),
    };
    if composed.verify().is_ok() {
        return Ok((composed, MaximalChainMethod::Composed));
    }

    fresh.sort_by(|u, v| v.lex_cmp(u));
    let lex = ExtensionChain {
        start: start.clone(),
        end: end.clone(),
        appended: fresh,
    };
    if lex.verify().is_ok() {
        return Ok((lex, MaximalChainMethod::Lex));
    }

    let outcome = extends_by_linear_quotients(&start, &end, DEFAULT_BUDGET)?;
    let appended = outcome.sequence.ok_or_else(|| {
        Error::Verification(format!(
            "no extension of m*I_({}; {:?}) found ({:?})",
            spec.degree, spec.caps, outcome.status
        ))
    })?;
    let searched = ExtensionChain { start, end, appended };
    searched.verify()?;
    Ok((searched, MaximalChainMethod::Search))
}

/// The chains carrying `m I_<j>` to `I_<j+1>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStep {
    pub degree: u32,
    /// `I_<j> = u I_(d; a)`.
    pub lower: SepFactorization,
    /// `I_<j+1> = v I_(l; b)`.
    pub upper: SepFactorization,
    /// `u m I_(d; a)` to `u I_(d+1; a+1)`.
    pub maximal: ExtensionChain,
    pub maximal_method: MaximalChainMethod,
    /// `u I_(d+1; a+1)` to `v I_(l; a+1+c)` with `c = u - v`.
    pub var: ExtensionChain,
    /// `v I_(l; a+1+c)` to `v I_(l; b)`.
    pub caps: ExtensionChain,
}

impl DegreeStep {
    pub fn composite(&self) -> Result<ExtensionChain> {
        self.maximal.clone().then(self.var.clone())?.then(self.caps.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepOrder {
    pub order: GeneratorOrder,
    pub steps: Vec<DegreeStep>,
}

/// Build a verified admissible order for a componentwise polymatroidal
/// ideal with the strong exchange property.
///
/// Generators of the lowest degree come first in decreasing lex order. For
/// each later degree `j + 1`, the minimal generators of that degree follow
/// in the order they appear in the chain extending `m I_<j>` to `I_<j+1>`.
pub fn sep_admissible_order(ideal: &MonomialIdeal) -> Result<SepOrder> {
    if let ComponentwiseVerdict::Fails { degree, witness } = is_componentwise_sep(ideal)? {
        return Err(Error::Precondition(format!(
            "component of degree {degree} lacks the strong exchange property: {witness}"
        )));
    }
    let n = ideal.nvars();
    let components = ideal.components()?;
    let (_, first) = &components[0];
    let mut order: Vec<Monomial> = first.gens().to_vec();
    order.sort_by(|u, v| v.lex_cmp(u));
    if check_extension(&[], &order).is_err() {
        order = find_admissible_order(first, DEFAULT_BUDGET)?
            .sequence
            .ok_or_else(|| Error::Verification(format!("no admissible order for {first}")))?;
    }

    let mut steps = Vec::with_capacity(components.len().saturating_sub(1));
    for pair in components.windows(2) {
        let (j, lower_ideal) = (&pair[0].0, &pair[0].1);
        let upper_ideal = &pair[1].1;
        let lower = factor_equigenerated(lower_ideal)?;
        let upper = factor_equigenerated(upper_ideal)?;
        let (u, v) = (&lower.shift, &upper.shift);
        let c: Vec<u32> = (0..n)
            .map(|k| u.exp(k).checked_sub(v.exp(k)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Verification(format!("gcd {v} does not divide gcd {u}")))?;
        let c_total: u32 = c.iter().sum();
        if lower.spec.degree + c_total + 1 != upper.spec.degree {
            return Err(Error::Verification(format!(
                "degree bookkeeping failed: {} + {} + 1 != {}",
                lower.spec.degree, c_total, upper.spec.degree
            )));
        }

        let (maximal, maximal_method) = chain_maximal(&lower.spec)?;
        let maximal = maximal.translate(u)?;
        let bumped = VeroneseSpec::new(
            lower.spec.degree + 1,
            lower.spec.caps.iter().map(|a| a + 1).collect(),
        )?;
        let var = chain_var(&bumped, &c)?.translate(v)?;
        let reached_caps: Vec<u32> = bumped.caps.iter().zip(&c).map(|(a, ck)| a + ck).collect();
        let reached = VeroneseSpec::new(upper.spec.degree, reached_caps)?;
        let caps = chain_caps(&reached, &upper.spec)?.translate(v)?;

        for chain in [&maximal, &var, &caps] {
            chain.verify()?;
        }
        let step = DegreeStep {
            degree: *j,
            lower,
            upper,
            maximal,
            maximal_method,
            var,
            caps,
        };
        let composite = step.composite()?;
        if &composite.end != upper_ideal {
            return Err(Error::Verification(format!(
                "chain for degree {} ends at {} instead of {}",
                j + 1,
                composite.end,
                upper_ideal
            )));
        }
        composite.verify()?;
        order.extend(
            composite
                .appended
                .iter()
                .filter(|g| g.degree() == j + 1 && ideal.is_generator(g))
                .cloned(),
        );
        steps.push(step);
    }

    let order = GeneratorOrder::new(ideal.clone(), order)?;
    if let Err(f) = is_admissible_order(&order) {
        return Err(Error::Verification(format!(
            "assembled order fails at position {} with colon {}",
            f.position, f.colon
        )));
    }
    Ok(SepOrder { order, steps })
}
