//! Monomial ideals in canonical form.
//!
//! A [`MonomialIdeal`] stores its unique minimal generating set `G(I)` as a
//! divisibility antichain sorted in canonical order (see the `Ord` impl on
//! [`Monomial`]). Values are immutable once built; every operation returns a
//! fresh ideal.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Default ceiling on the degree passed to [`MonomialIdeal::graded_component`].
/// The number of degree-`j` monomials grows like `j^(n-1)`, so larger degrees
/// must be requested explicitly through
/// [`MonomialIdeal::graded_component_with_guard`].
pub const DEFAULT_DEGREE_GUARD: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Reduce `raw` to its minimal generators.
    pub fn minimalize<I>(nvars: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        let mut sorted = BTreeSet::new();
        for m in raw {
            m.check_arity(nvars)?;
            sorted.insert(m);
        }
        // canonical order is degree-ascending, so a divisor always precedes
        // its multiples
        let mut gens: Vec<Monomial> = Vec::with_capacity(sorted.len());
        for m in sorted {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        Ok(MonomialIdeal { nvars, gens })
    }

    /// Build from monomials already known to form an antichain; used for
    /// equal-degree sets, which are antichains automatically.
    pub(crate) fn from_antichain(nvars: usize, gens: BTreeSet<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        MonomialIdeal {
            nvars,
            gens: gens.into_iter().collect(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// The graded maximal ideal `m = (x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        let gens = (0..nvars)
            .map(|i| Monomial::variable(nvars, i).expect("index in range"))
            .collect();
        MonomialIdeal { nvars, gens }
    }

    pub fn principal(u: Monomial) -> Self {
        MonomialIdeal {
            nvars: u.nvars(),
            gens: vec![u],
        }
    }

    /// The Veronese-type ideal `I_(d; caps)`: all degree-`d` monomials with
    /// `deg_{x_i} <= caps[i]`. Zero when the caps cannot reach degree `d`.
    pub fn veronese(nvars: usize, degree: u32, caps: &[u32]) -> Result<Self> {
        if caps.len() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: caps.len(),
            });
        }
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        let gens = Monomial::bounded_of_degree(nvars, degree, caps)
            .into_iter()
            .collect::<BTreeSet<_>>();
        Ok(Self::from_antichain(nvars, gens))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `G(I)` in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.first().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.last().map(Monomial::degree)
    }

    /// True when every generator has the same degree. The zero ideal counts
    /// as equigenerated.
    pub fn is_equigenerated(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Whether `g` is a minimal generator.
    pub fn is_generator(&self, g: &Monomial) -> bool {
        self.gens.binary_search(g).is_ok()
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        u.check_arity(self.nvars)?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &Monomial) -> bool {
        self.gens
            .iter()
            .take_while(|g| g.degree() <= u.degree())
            .any(|g| g.divides(u))
    }

    /// The colon ideal `(I : u)`, generated by `g / gcd(g, u)` for `g` in `G(I)`.
    pub fn colon(&self, u: &Monomial) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        u.check_arity(self.nvars)?;
        Self::minimalize(self.nvars, self.gens.iter().map(|g| g.colon(u)))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g.mul(h)?);
            }
        }
        Self::minimalize(self.nvars, raw)
    }

    /// `u * I`.
    pub fn translate(&self, u: &Monomial) -> Result<Self> {
        u.check_arity(self.nvars)?;
        // a common shift preserves divisibility and the canonical order
        let gens = self.gens.iter().map(|g| g.mul(u)).collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { nvars: self.nvars, gens })
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Self::minimalize(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    /// Exact quotient `I / u`; `None` unless `u` divides every generator.
    pub fn divide(&self, u: &Monomial) -> Option<Self> {
        let gens = self.gens.iter().map(|g| g.div(u)).collect::<Option<Vec<_>>>()?;
        Some(MonomialIdeal { nvars: self.nvars, gens })
    }

    /// Greatest common divisor of the minimal generators.
    pub fn gcd(&self) -> Option<Monomial> {
        let (first, rest) = self.gens.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, g| acc.gcd(g)))
    }

    /// The `j`-th graded component `I_<j>`, with the default degree guard.
    pub fn graded_component(&self, j: u32) -> Result<Self> {
        self.graded_component_with_guard(j, DEFAULT_DEGREE_GUARD)
    }

    /// The ideal generated by every degree-`j` monomial of `I`. Each
    /// generator of degree `<= j` is expanded by all monomials of the
    /// complementary degree and the results are deduplicated.
    pub fn graded_component_with_guard(&self, j: u32, guard: u32) -> Result<Self> {
        if j > guard {
            return Err(Error::DegreeGuard {
                requested: j,
                limit: guard,
            });
        }
        let mut out = BTreeSet::new();
        for g in self.gens.iter().take_while(|g| g.degree() <= j) {
            for t in Monomial::all_of_degree(self.nvars, j - g.degree()) {
                out.insert(g.mul(&t)?);
            }
        }
        Ok(Self::from_antichain(self.nvars, out))
    }

    /// Graded components `I_<j>` for `j` in `[mindeg, maxdeg]`, built
    /// incrementally as `I_<j+1> = m I_<j> + (generators of degree j+1)`.
    pub fn components(&self) -> Result<Vec<(u32, MonomialIdeal)>> {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return Err(Error::ZeroIdeal);
        };
        if hi > DEFAULT_DEGREE_GUARD {
            return Err(Error::DegreeGuard {
                requested: hi,
                limit: DEFAULT_DEGREE_GUARD,
            });
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut current: BTreeSet<Monomial> =
            self.gens.iter().filter(|g| g.degree() == lo).cloned().collect();
        out.push((lo, Self::from_antichain(self.nvars, current.clone())));
        for j in lo + 1..=hi {
            let mut next = BTreeSet::new();
            for g in &current {
                for i in 0..self.nvars {
                    next.insert(g.mul_var(i)?);
                }
            }
            next.extend(self.gens.iter().filter(|g| g.degree() == j).cloned());
            current = next;
            out.push((j, Self::from_antichain(self.nvars, current.clone())));
        }
        Ok(out)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal(n={}, {:?})", self.nvars, self.gens)
    }
}

/// Shorthand for tests and examples: the minimalized ideal of `rows`.
pub fn ideal(nvars: usize, rows: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::minimalize(nvars, rows.iter().map(|r| crate::monomial::mono(r)))
        .expect("well-formed rows")
}
