//! Brute-force oracles over plain exponent vectors, written from the
//! definitions without going through the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use polyquot::{Monomial, MonomialIdeal};

pub type Exps = Vec<u32>;

pub fn exps(ideal: &MonomialIdeal) -> Vec<Exps> {
    ideal.gens().iter().map(|g| g.exponents().to_vec()).collect()
}

pub fn to_ideal(nvars: usize, rows: &[Exps]) -> MonomialIdeal {
    MonomialIdeal::minimalize(nvars, rows.iter().map(|r| Monomial::new(r.clone()).unwrap())).unwrap()
}

pub fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn all_of_degree(n: usize, d: u32) -> Vec<Exps> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in all_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Quadratic minimalization: keep rows not strictly divisible by another
/// row, one copy each.
pub fn minimalize(rows: &[Exps]) -> BTreeSet<Exps> {
    let set: BTreeSet<Exps> = rows.iter().cloned().collect();
    set.iter()
        .filter(|r| !set.iter().any(|s| s != *r && divides(s, r)))
        .cloned()
        .collect()
}

pub fn set_of(ideal: &MonomialIdeal) -> BTreeSet<Exps> {
    exps(ideal).into_iter().collect()
}

pub fn member(gens: &[Exps], u: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, u))
}

pub fn mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn product(a: &[Exps], b: &[Exps]) -> BTreeSet<Exps> {
    let rows: Vec<Exps> = a.iter().flat_map(|u| b.iter().map(move |v| mul(u, v))).collect();
    minimalize(&rows)
}

/// Minimal generators of the degree-`j` component: every degree-`j`
/// monomial of the ideal (already pairwise incomparable).
pub fn component(n: usize, gens: &[Exps], j: u32) -> BTreeSet<Exps> {
    all_of_degree(n, j).into_iter().filter(|u| member(gens, u)).collect()
}

pub fn veronese(n: usize, d: u32, caps: &[u32]) -> BTreeSet<Exps> {
    all_of_degree(n, d)
        .into_iter()
        .filter(|u| u.iter().zip(caps).all(|(e, c)| e <= c))
        .collect()
}

fn swap(u: &[u32], out: usize, into: usize) -> Exps {
    let mut w = u.to_vec();
    w[out] -= 1;
    w[into] += 1;
    w
}

/// Equigenerated exchange: for `u, v` and `u_i > v_i`, some `j` with
/// `u_j < v_j` has `x_j u / x_i` in the ideal.
pub fn polymatroidal(gens: &[Exps]) -> bool {
    let n = gens[0].len();
    gens.iter().all(|u| {
        gens.iter().all(|v| {
            (0..n).filter(|&i| u[i] > v[i]).all(|i| {
                (0..n).filter(|&j| u[j] < v[j]).any(|j| member(gens, &swap(u, i, j)))
            })
        })
    })
}

pub fn nonpure(gens: &[Exps]) -> bool {
    let n = gens[0].len();
    gens.iter().all(|u| {
        gens.iter().filter(|v| deg(u) <= deg(v)).all(|v| {
            (0..n).filter(|&i| v[i] > u[i]).all(|i| {
                (0..n).filter(|&j| v[j] < u[j]).any(|j| member(gens, &swap(v, i, j)))
            })
        })
    })
}

pub fn nonpure_dual(gens: &[Exps]) -> bool {
    let n = gens[0].len();
    gens.iter().all(|u| {
        gens.iter().filter(|v| deg(u) <= deg(v)).all(|v| {
            (0..n).filter(|&i| v[i] < u[i]).all(|i| {
                (0..n).filter(|&j| v[j] > u[j]).any(|j| member(gens, &swap(v, j, i)))
            })
        })
    })
}

pub fn strong(gens: &[Exps]) -> bool {
    let n = gens[0].len();
    gens.iter().all(|u| {
        gens.iter().all(|v| {
            (0..n).filter(|&i| u[i] > v[i]).all(|i| {
                (0..n).filter(|&j| u[j] < v[j]).all(|j| member(gens, &swap(u, i, j)))
            })
        })
    })
}

pub fn componentwise(n: usize, gens: &[Exps], pred: impl Fn(&[Exps]) -> bool) -> bool {
    let lo = gens.iter().map(|g| deg(g)).min().unwrap();
    let hi = gens.iter().map(|g| deg(g)).max().unwrap();
    (lo..=hi).all(|j| pred(&component(n, gens, j).into_iter().collect::<Vec<_>>()))
}

/// Whether `(prefix) : u` is generated by variables: for each earlier
/// generator, `w / gcd(w, u)` must be divisible by some variable `x_l` for
/// which `x_l u` lies in the ideal generated by the prefix.
pub fn linear_colon(prefix: &[Exps], u: &[u32]) -> bool {
    let n = u.len();
    let vars: Vec<usize> = (0..n)
        .filter(|&l| {
            let mut w = u.to_vec();
            w[l] += 1;
            member(prefix, &w)
        })
        .collect();
    prefix.iter().all(|w| {
        let q: Exps = w.iter().zip(u).map(|(a, b)| a.saturating_sub(*b)).collect();
        vars.iter().any(|&l| q[l] > 0)
    })
}

pub fn admissible(order: &[Exps]) -> bool {
    (1..order.len()).all(|k| linear_colon(&order[..k], &order[k]))
}

/// Try every permutation; `None` when no order is admissible.
pub fn admissible_permutation(gens: &[Exps]) -> Option<Vec<Exps>> {
    fn go(rest: &mut Vec<Exps>, placed: &mut Vec<Exps>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for k in 0..rest.len() {
            let u = rest.remove(k);
            if placed.is_empty() || linear_colon(placed, &u) {
                placed.push(u);
                if go(rest, placed) {
                    return true;
                }
                let u = placed.pop().unwrap();
                rest.insert(k, u);
            } else {
                rest.insert(k, u);
            }
        }
        false
    }
    let mut rest = gens.to_vec();
    let mut placed = Vec::new();
    go(&mut rest, &mut placed).then_some(placed)
}

/// Every bivariate antichain with exponents at most `max_exp` and at most
/// `max_gens` generators, excluding the unit ideal: strictly decreasing
/// x-exponents paired with strictly increasing y-exponents.
pub fn bivariate_antichains(max_exp: u32, max_gens: usize) -> Vec<Vec<Exps>> {
    fn subsets(max: u32, k: usize) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in subsets(max, k - 1) {
            let start = s.last().map_or(0, |&l| l + 1);
            for x in start..=max {
                let mut t = s.clone();
                t.push(x);
                out.push(t);
            }
        }
        out
    }
    let mut out = Vec::new();
    for k in 1..=max_gens {
        let sets = subsets(max_exp, k);
        for a in &sets {
            for b in &sets {
                let gens: Vec<Exps> = (0..k).map(|i| vec![a[k - 1 - i], b[i]]).collect();
                if gens.iter().any(|g| deg(g) == 0) {
                    continue;
                }
                out.push(gens);
            }
        }
    }
    out
}

/// Generators of an x-tight ideal in `[0, m]`: `x^{m-i} y^{b_i}` with
/// `0 = b_0 < b_1 < ... < b_m`.
pub fn x_tight(b: &[u32]) -> Vec<Exps> {
    let m = b.len() as u32 - 1;
    b.iter().enumerate().map(|(i, &bi)| vec![m - i as u32, bi]).collect()
}

/// Generators of a y-tight ideal in `[0, m]`: `x^{a_i} y^i` with
/// `a_0 > a_1 > ... > a_m = 0`.
pub fn y_tight(a: &[u32]) -> Vec<Exps> {
    a.iter().enumerate().map(|(i, &ai)| vec![ai, i as u32]).collect()
}

/// A strict yx-tight ideal joined at `u_t = x^{m-t} y^t`: y-tight head with
/// x-exponents `head` (ending at `m - t`), x-tight tail with y-exponents
/// `tail` (starting at `t`).
pub fn yx_tight(head: &[u32], tail: &[u32]) -> Vec<Exps> {
    let t = head.len() - 1;
    assert_eq!(tail[0], t as u32);
    let mut gens = y_tight(head);
    let m_minus_t = head[t];
    for (k, &b) in tail.iter().enumerate().skip(1) {
        gens.push(vec![m_minus_t - k as u32, b]);
    }
    gens
}
