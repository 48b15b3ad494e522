//! Monomials as exponent vectors.
//!
//! A [`Monomial`] is `x_1^{a_1} ... x_n^{a_n}` stored as the vector
//! `(a_1, ..., a_n)` together with its total degree. All arithmetic is
//! checked: exponents and degrees live in `u32` and any overflow is reported
//! as [`Error::Overflow`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(Error::Overflow)?;
        Ok(Monomial { exps, degree })
    }

    /// The constant monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn variable(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VariableIndex { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Ok(Monomial { exps, degree: 1 })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub(crate) fn check_arity(&self, nvars: usize) -> Result<()> {
        if self.nvars() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: self.nvars(),
            });
        }
        Ok(())
    }

    /// Componentwise `self <= other`. Arities must agree.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        other.check_arity(self.nvars())?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(exps)
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() || !other.divides(self) {
            return None;
        }
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        // max of two valid exponent vectors is bounded by their sum, which may
        // overflow only if one of them already has a huge degree.
        Monomial::new(exps).expect("lcm degree overflow")
    }

    /// `self / gcd(self, other)`: the generator of the colon ideal `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn mul_var(&self, index: usize) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        let e = exps
            .get_mut(index)
            .ok_or(Error::VariableIndex { index, nvars: self.nvars() })?;
        *e = e.checked_add(1).ok_or(Error::Overflow)?;
        let degree = self.degree.checked_add(1).ok_or(Error::Overflow)?;
        Ok(Monomial { exps, degree })
    }

    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if *self.exps.get(index)? == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some(Monomial {
            exps,
            degree: self.degree - 1,
        })
    }

    /// `x_into * self / x_out`, or `None` when `x_out` does not divide `self`.
    pub fn exchange(&self, out: usize, into: usize) -> Option<Monomial> {
        let mut m = self.div_var(out)?;
        m.exps[into] = m.exps[into].checked_add(1)?;
        m.degree += 1;
        Some(m)
    }

    /// Pure lexicographic comparison with `x_1 > x_2 > ... > x_n`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// Lexicographic comparison with `x_lead` promoted to the greatest
    /// variable and the rest keeping their index order.
    pub fn lex_cmp_leading(&self, other: &Monomial, lead: usize) -> Ordering {
        self.exps[lead]
            .cmp(&other.exps[lead])
            .then_with(|| {
                let a = self.exps.iter().enumerate().filter(|(k, _)| *k != lead).map(|(_, e)| e);
                let b = other.exps.iter().enumerate().filter(|(k, _)| *k != lead).map(|(_, e)| e);
                a.cmp(b)
            })
    }

    /// Every monomial of degree `degree` in `nvars` variables, in
    /// lexicographically decreasing order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        Self::bounded_of_degree(nvars, degree, &vec![degree; nvars])
    }

    /// Monomials of degree `degree` with `deg_{x_i} <= caps[i]`, in
    /// lexicographically decreasing order.
    pub fn bounded_of_degree(nvars: usize, degree: u32, caps: &[u32]) -> Vec<Monomial> {
        assert_eq!(caps.len(), nvars);
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        // suffix_cap[k] = sum of caps[k..], bounding what later slots can absorb
        let mut suffix_cap = vec![0u64; nvars + 1];
        for k in (0..nvars).rev() {
            suffix_cap[k] = suffix_cap[k + 1] + u64::from(caps[k]);
        }
        let mut exps = vec![0u32; nvars];
        fill(0, degree, caps, &suffix_cap, &mut exps, &mut out);
        out
    }
}

fn fill(
    slot: usize,
    remaining: u32,
    caps: &[u32],
    suffix_cap: &[u64],
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    let n = exps.len();
    if slot == n - 1 {
        if remaining <= caps[slot] {
            exps[slot] = remaining;
            let degree = exps.iter().sum();
            out.push(Monomial {
                exps: exps.clone(),
                degree,
            });
        }
        return;
    }
    let hi = remaining.min(caps[slot]);
    for e in (0..=hi).rev() {
        if u64::from(remaining - e) > suffix_cap[slot + 1] {
            break;
        }
        exps[slot] = e;
        fill(slot + 1, remaining - e, caps, suffix_cap, exps, out);
    }
    exps[slot] = 0;
}

/// Canonical storage order: lower degree first, then lexicographically
/// larger first (`x_1 > ... > x_n`). Arity is compared last so that the
/// order stays total on mixed inputs.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let exps = Vec::<u32>::deserialize(d)?;
        Monomial::new(exps).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the tests: `mono(&[2, 0, 1])`.
pub fn mono(exps: &[u32]) -> Monomial {
    Monomial::new(exps.to_vec()).expect("degree overflow")
}
