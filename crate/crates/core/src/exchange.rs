//! Exchange properties of monomial generating sets.
//!
//! Four exchange axioms are implemented over `G(I)`, each returning a
//! replayable [`ExchangeWitness`] on failure:
//!
//! * [`ExchangeKind::Polymatroidal`]: for `u, v` with `deg_{x_i}(u) > deg_{x_i}(v)`
//!   some `j` with `deg_{x_j}(u) < deg_{x_j}(v)` has `x_j u / x_i` in `I`.
//! * [`ExchangeKind::NonPure`]: for `deg(u) <= deg(v)` and `deg_{x_i}(v) > deg_{x_i}(u)`
//!   some `j` with `deg_{x_j}(v) < deg_{x_j}(u)` has `x_j v / x_i` in `I`.
//! * [`ExchangeKind::NonPureDual`]: for `deg(u) <= deg(v)` and `deg_{x_i}(v) < deg_{x_i}(u)`
//!   some `j` with `deg_{x_j}(v) > deg_{x_j}(u)` has `x_i v / x_j` in `I`.
//! * [`ExchangeKind::Strong`]: as polymatroidal, but for *every* such `j`.
//!
//! Loops run over `u`, then `v`, then `i` in canonical generator order and
//! stop at the first failure, so witnesses are deterministic.
//!
//! Componentwise checks only inspect degrees in `[mindeg, maxdeg]` of `G(I)`.
//! Above `maxdeg` every component is `m` times the previous one, and a
//! product of polymatroidal ideals is polymatroidal, so nothing new can fail
//! there.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeKind {
    Polymatroidal,
    NonPure,
    NonPureDual,
    Strong,
}

impl ExchangeKind {
    /// Whether the ordered pair `(u, v)` is quantified over at all.
    fn applies_to(self, u: &Monomial, v: &Monomial) -> bool {
        if u == v {
            return false;
        }
        match self {
            ExchangeKind::Polymatroidal | ExchangeKind::Strong => true,
            ExchangeKind::NonPure | ExchangeKind::NonPureDual => u.degree() <= v.degree(),
        }
    }

    /// Whether index `i` is quantified over for the pair `(u, v)`.
    fn index_applies(self, u: &Monomial, v: &Monomial, i: usize) -> bool {
        match self {
            ExchangeKind::Polymatroidal | ExchangeKind::Strong => u.exp(i) > v.exp(i),
            ExchangeKind::NonPure => v.exp(i) > u.exp(i),
            ExchangeKind::NonPureDual => v.exp(i) < u.exp(i),
        }
    }

    /// The exchanged monomials for `(u, v, i)`, paired with their `j`.
    fn candidates(self, u: &Monomial, v: &Monomial, i: usize) -> Vec<(usize, Monomial)> {
        (0..u.nvars())
            .filter_map(|j| {
                let m = match self {
                    ExchangeKind::Polymatroidal | ExchangeKind::Strong => {
                        (u.exp(j) < v.exp(j)).then(|| u.exchange(i, j))?
                    }
                    ExchangeKind::NonPure => (v.exp(j) < u.exp(j)).then(|| v.exchange(i, j))?,
                    ExchangeKind::NonPureDual => (v.exp(j) > u.exp(j)).then(|| v.exchange(j, i))?,
                };
                m.map(|m| (j, m))
            })
            .collect()
    }
}

impl fmt::Display for ExchangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExchangeKind::Polymatroidal => "exchange",
            ExchangeKind::NonPure => "non-pure exchange",
            ExchangeKind::NonPureDual => "non-pure dual exchange",
            ExchangeKind::Strong => "strong exchange",
        };
        f.write_str(s)
    }
}

/// A failing instance `(u, v, i)` of an exchange axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeWitness {
    pub kind: ExchangeKind,
    pub u: Monomial,
    pub v: Monomial,
    /// Zero-based variable index.
    pub i: usize,
    /// For the strong property: the partner index whose exchange failed.
    pub j: Option<usize>,
    /// Exchanged monomials that were tried; none of them lies in the ideal.
    pub missing: Vec<Monomial>,
}

impl ExchangeWitness {
    /// Re-derive the failure from scratch: both monomials are generators,
    /// the pair and index are quantified over, and every candidate exchange
    /// is absent from `ideal`.
    pub fn replay(&self, ideal: &MonomialIdeal) -> bool {
        if !ideal.is_generator(&self.u) || !ideal.is_generator(&self.v) {
            return false;
        }
        if self.i >= ideal.nvars()
            || !self.kind.applies_to(&self.u, &self.v)
            || !self.kind.index_applies(&self.u, &self.v, self.i)
        {
            return false;
        }
        let candidates = self.kind.candidates(&self.u, &self.v, self.i);
        let checked: Vec<Monomial> = match (self.kind, self.j) {
            (ExchangeKind::Strong, Some(j)) => {
                match candidates.into_iter().find(|(jj, _)| *jj == j) {
                    Some((_, m)) => vec![m],
                    None => return false,
                }
            }
            (ExchangeKind::Strong, None) => return false,
            (_, _) => candidates.into_iter().map(|(_, m)| m).collect(),
        };
        checked == self.missing && checked.iter().all(|m| !ideal.contains_unchecked(m))
    }
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for u={}, v={}, i=x{}", self.kind, self.u, self.v, self.i + 1)?;
        if let Some(j) = self.j {
            write!(f, ", j=x{}", j + 1)?;
        }
        if !self.missing.is_empty() {
            let missing: Vec<String> = self.missing.iter().map(ToString::to_string).collect();
            write!(f, " (not in I: {})", missing.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(ExchangeWitness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&ExchangeWitness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Outcome of a per-degree check over `[mindeg, maxdeg]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentwiseVerdict {
    Holds,
    Fails { degree: u32, witness: ExchangeWitness },
}

impl ComponentwiseVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ComponentwiseVerdict::Holds)
    }

    pub fn failure(&self) -> Option<(u32, &ExchangeWitness)> {
        match self {
            ComponentwiseVerdict::Holds => None,
            ComponentwiseVerdict::Fails { degree, witness } => Some((*degree, witness)),
        }
    }
}

/// Evaluate one `(u, v, i)` instance. Returns the witness if it fails, and
/// `None` if it holds or is not quantified over.
pub fn check_instance(
    ideal: &MonomialIdeal,
    kind: ExchangeKind,
    u: &Monomial,
    v: &Monomial,
    i: usize,
) -> Option<ExchangeWitness> {
    if !kind.applies_to(u, v) || !kind.index_applies(u, v, i) {
        return None;
    }
    let candidates = kind.candidates(u, v, i);
    let witness = |j: Option<usize>, missing: Vec<Monomial>| ExchangeWitness {
        kind,
        u: u.clone(),
        v: v.clone(),
        i,
        j,
        missing,
    };
    if kind == ExchangeKind::Strong {
        candidates
            .into_iter()
            .find(|(_, m)| !member(ideal, m))
            .map(|(j, m)| witness(Some(j), vec![m]))
    } else if candidates.iter().any(|(_, m)| member(ideal, m)) {
        None
    } else {
        Some(witness(None, candidates.into_iter().map(|(_, m)| m).collect()))
    }
}

fn member(ideal: &MonomialIdeal, m: &Monomial) -> bool {
    if ideal.is_equigenerated() && ideal.min_degree() == Some(m.degree()) {
        ideal.is_generator(m)
    } else {
        ideal.contains_unchecked(m)
    }
}

fn scan(ideal: &MonomialIdeal, kind: ExchangeKind) -> Verdict {
    let gens = ideal.gens();
    for u in gens {
        for v in gens {
            if !kind.applies_to(u, v) {
                continue;
            }
            for i in 0..ideal.nvars() {
                if let Some(w) = check_instance(ideal, kind, u, v, i) {
                    return Verdict::Fails(w);
                }
            }
        }
    }
    Verdict::Holds
}

fn require_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        Err(Error::ZeroIdeal)
    } else {
        Ok(())
    }
}

/// The exchange property on an equigenerated ideal.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> Result<Verdict> {
    require_nonzero(ideal)?;
    if !ideal.is_equigenerated() {
        return Err(Error::NotEquigenerated);
    }
    Ok(scan(ideal, ExchangeKind::Polymatroidal))
}

pub fn satisfies_nonpure_exchange(ideal: &MonomialIdeal) -> Result<Verdict> {
    require_nonzero(ideal)?;
    Ok(scan(ideal, ExchangeKind::NonPure))
}

pub fn satisfies_nonpure_dual_exchange(ideal: &MonomialIdeal) -> Result<Verdict> {
    require_nonzero(ideal)?;
    Ok(scan(ideal, ExchangeKind::NonPureDual))
}

/// The strong exchange property. Defined only for polymatroidal ideals:
/// a non-polymatroidal input is an error carrying the exchange witness.
pub fn satisfies_strong_exchange(ideal: &MonomialIdeal) -> Result<Verdict> {
    if let Verdict::Fails(w) = is_polymatroidal(ideal)? {
        return Err(Error::NotPolymatroidal(Box::new(w)));
    }
    Ok(scan(ideal, ExchangeKind::Strong))
}

pub fn is_componentwise_polymatroidal(ideal: &MonomialIdeal) -> Result<ComponentwiseVerdict> {
    require_nonzero(ideal)?;
    for (degree, component) in ideal.components()? {
        if let Verdict::Fails(witness) = is_polymatroidal(&component)? {
            return Ok(ComponentwiseVerdict::Fails { degree, witness });
        }
    }
    Ok(ComponentwiseVerdict::Holds)
}

/// Every graded component in `[mindeg, maxdeg]` is polymatroidal with the
/// strong exchange property. The witness kind tells which of the two failed.
pub fn is_componentwise_sep(ideal: &MonomialIdeal) -> Result<ComponentwiseVerdict> {
    require_nonzero(ideal)?;
    for (degree, component) in ideal.components()? {
        let verdict = match satisfies_strong_exchange(&component) {
            Ok(v) => v,
            Err(Error::NotPolymatroidal(w)) => Verdict::Fails(*w),
            Err(e) => return Err(e),
        };
        if let Verdict::Fails(witness) = verdict {
            return Ok(ComponentwiseVerdict::Fails { degree, witness });
        }
    }
    Ok(ComponentwiseVerdict::Holds)
}

/// `1/2 * sum |a_q - b_q|`; an integer for monomials of equal degree.
pub fn distance(u: &Monomial, v: &Monomial) -> u32 {
    let total: u32 = u
        .exponents()
        .iter()
        .zip(v.exponents())
        .map(|(a, b)| a.abs_diff(*b))
        .sum();
    total / 2
}

/// Walk from `u` toward `v` inside `G(I)` while keeping the `x_i` exponent
/// fixed, one dual exchange at a time. Returns the visited generators,
/// starting with `u`; the last one `w` has `deg_{x_i}(w) = deg_{x_i}(u)` and
/// `deg_{x_j}(w) >= deg_{x_j}(v)` for every `j != i`.
///
/// Requires an equigenerated ideal with the non-pure dual exchange property
/// and `deg_{x_i}(u) <= deg_{x_i}(v)`. A stalled walk means the dual
/// exchange property does not hold and is reported as
/// [`Error::WalkStalled`].
pub fn exchange_walk_path(
    ideal: &MonomialIdeal,
    u: &Monomial,
    v: &Monomial,
    i: usize,
) -> Result<Vec<Monomial>> {
    require_nonzero(ideal)?;
    if !ideal.is_equigenerated() {
        return Err(Error::NotEquigenerated);
    }
    if i >= ideal.nvars() {
        return Err(Error::VariableIndex {
            index: i,
            nvars: ideal.nvars(),
        });
    }
    for m in [u, v] {
        if !ideal.is_generator(m) {
            return Err(Error::Precondition(format!("{m} is not a minimal generator")));
        }
    }
    if u.exp(i) > v.exp(i) {
        return Err(Error::Precondition(format!(
            "deg_x{}(u) must not exceed deg_x{}(v)",
            i + 1,
            i + 1
        )));
    }
    let n = ideal.nvars();
    let mut path = vec![u.clone()];
    let mut w = u.clone();
    while let Some(k) = (0..n).find(|&k| k != i && w.exp(k) < v.exp(k)) {
        let next = (0..n)
            .filter(|&l| w.exp(l) > v.exp(l))
            .filter_map(|l| w.exchange(l, k))
            .find(|cand| ideal.is_generator(cand))
            .ok_or_else(|| Error::WalkStalled(w.clone()))?;
        let (before, after) = (distance(&w, v), distance(&next, v));
        assert!(after < before, "exchange walk distance did not decrease");
        w = next;
        path.push(w.clone());
    }
    Ok(path)
}

pub fn exchange_walk(
    ideal: &MonomialIdeal,
    u: &Monomial,
    v: &Monomial,
    i: usize,
) -> Result<Monomial> {
    Ok(exchange_walk_path(ideal, u, v, i)?.pop().expect("path starts at u"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal;
    use crate::monomial::mono;

    fn nonpure_example() -> MonomialIdeal {
        ideal(
            6,
            &[
                &[1, 0, 1, 1, 0, 0],
                &[1, 0, 0, 1, 1, 0],
                &[1, 1, 0, 1, 0, 0],
                &[1, 2, 0, 0, 0, 1],
                &[0, 0, 1, 2, 2, 0],
            ],
        )
    }

    fn dual_example() -> MonomialIdeal {
        ideal(4, &[&[1, 1, 0, 0], &[1, 0, 0, 2], &[0, 1, 0, 2], &[0, 0, 1, 2]])
    }

    #[test]
    fn powers_of_the_maximal_ideal_are_polymatroidal() {
        for d in 1..6 {
            let i = MonomialIdeal::veronese(2, d, &[d, d]).unwrap();
            assert!(is_polymatroidal(&i).unwrap().holds());
        }
    }

    #[test]
    fn polymatroidal_preconditions() {
        assert_eq!(is_polymatroidal(&MonomialIdeal::zero(2)), Err(Error::ZeroIdeal));
        assert_eq!(
            is_polymatroidal(&ideal(2, &[&[1, 0], &[0, 2]])),
            Err(Error::NotEquigenerated)
        );
    }

    #[test]
    fn nonpure_but_not_dual() {
        let i = nonpure_example();
        assert!(satisfies_nonpure_exchange(&i).unwrap().holds());
        let v = satisfies_nonpure_dual_exchange(&i).unwrap();
        let w = v.witness().unwrap();
        assert!(w.replay(&i));
        // the pair exhibited by hand fails at x6
        let u = mono(&[1, 2, 0, 0, 0, 1]);
        let v = mono(&[0, 0, 1, 2, 2, 0]);
        let at_x6 = check_instance(&i, ExchangeKind::NonPureDual, &u, &v, 5).unwrap();
        assert!(at_x6.replay(&i));
        assert_eq!(at_x6.missing.len(), 3);
    }

    #[test]
    fn dual_but_not_nonpure() {
        let i = dual_example();
        assert!(satisfies_nonpure_dual_exchange(&i).unwrap().holds());
        let v = satisfies_nonpure_exchange(&i).unwrap();
        assert!(v.witness().unwrap().replay(&i));
        let c = is_componentwise_polymatroidal(&i).unwrap();
        let (degree, w) = c.failure().unwrap();
        assert_eq!(degree, 3);
        assert!(w.replay(&i.graded_component(3).unwrap()));
    }

    #[test]
    fn single_generator_is_vacuous() {
        let i = ideal(3, &[&[1, 2, 3]]);
        assert!(satisfies_nonpure_exchange(&i).unwrap().holds());
        assert!(satisfies_nonpure_dual_exchange(&i).unwrap().holds());
        assert!(is_polymatroidal(&i).unwrap().holds());
        assert!(satisfies_strong_exchange(&i).unwrap().holds());
    }

    #[test]
    fn strong_exchange_examples() {
        let v = MonomialIdeal::veronese(4, 6, &[3, 2, 1, 4]).unwrap();
        assert!(satisfies_strong_exchange(&v).unwrap().holds());

        let mv = MonomialIdeal::maximal(4).product(&v).unwrap();
        let verdict = satisfies_strong_exchange(&mv).unwrap();
        assert!(verdict.witness().unwrap().replay(&mv));
        let quoted = check_instance(
            &mv,
            ExchangeKind::Strong,
            &mono(&[4, 2, 1, 0]),
            &mono(&[0, 3, 0, 4]),
            2,
        )
        .unwrap();
        assert_eq!(quoted.missing, vec![mono(&[4, 3, 0, 0])]);

        let shifted = MonomialIdeal::veronese(3, 4, &[1, 3, 3])
            .unwrap()
            .translate(&mono(&[2, 1, 0]))
            .unwrap();
        assert!(satisfies_strong_exchange(&shifted).unwrap().holds());
    }

    #[test]
    fn strong_exchange_rejects_non_polymatroidal_input() {
        let c = dual_example().graded_component(3).unwrap();
        assert!(matches!(satisfies_strong_exchange(&c), Err(Error::NotPolymatroidal(_))));
        let mixed = ideal(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(satisfies_strong_exchange(&mixed), Err(Error::NotEquigenerated));
    }

    #[test]
    fn componentwise_examples() {
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 1], &[1, 1, 1], &[1, 2, 0], &[1, 0, 3], &[0, 1, 3]]);
        assert!(is_componentwise_polymatroidal(&i).unwrap().holds());
        assert!(is_componentwise_sep(&i).unwrap().holds());
        let d = dual_example();
        let sep = is_componentwise_sep(&d).unwrap();
        assert_eq!(sep.failure().unwrap().1.kind, ExchangeKind::Polymatroidal);
        let v = MonomialIdeal::veronese(3, 4, &[2, 2, 3]).unwrap();
        assert!(is_componentwise_sep(&v).unwrap().holds());
    }

    #[test]
    fn walk_degenerate_cases() {
        let i = MonomialIdeal::veronese(3, 3, &[3, 3, 3]).unwrap();
        let u = mono(&[1, 1, 1]);
        assert_eq!(exchange_walk(&i, &u, &u, 0).unwrap(), u);
        let v = mono(&[1, 2, 0]);
        let path = exchange_walk_path(&i, &u, &v, 0).unwrap();
        assert_eq!(path.len(), 2);
        let w = path.last().unwrap();
        let changed = (0..3).filter(|&k| w.exp(k) != u.exp(k)).count();
        assert_eq!(changed, 2);
    }

    #[test]
    fn walk_stalls_without_dual_exchange() {
        // (x1^2, x2^2) in degree 2 has no dual exchange between its generators
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0]]);
        let r = exchange_walk(&i, &mono(&[2, 0, 0]), &mono(&[0, 2, 0]), 2);
        assert!(matches!(r, Err(Error::WalkStalled(_))));
    }

    #[test]
    fn distance_is_half_l1() {
        assert_eq!(distance(&mono(&[2, 0, 1]), &mono(&[0, 2, 1])), 2);
    }
}
