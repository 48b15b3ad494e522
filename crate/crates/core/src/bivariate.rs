//! Componentwise polymatroidal ideals in `K[x, y]`.
//!
//! Generators are arranged as `u_0, ..., u_m` with `u_i = x^{a_i} y^{b_i}`,
//! `a_0 > ... > a_m` and `b_0 < ... < b_m` (the star order). An m-primary
//! ideal (`a_m = b_0 = 0`) is
//!
//! * x-tight when `a_k = m - k` for every `k`,
//! * y-tight when `b_k = k` for every `k`,
//! * yx-tight when some join index `j` has `b_k = k` for `k <= j` and
//!   `a_k = m - k` for `k >= j`.
//!
//! An ideal is componentwise polymatroidal exactly when dividing out
//! `x^{a_m} y^{b_0}` leaves a yx-tight ideal, and then the order
//! `u_j, ..., u_m, u_{j-1}, ..., u_0` is admissible for any join index `j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::quotients::{is_admissible_order, GeneratorOrder};

fn require_bivariate(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.nvars() != 2 {
        return Err(Error::NotBivariate(ideal.nvars()));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(())
}

/// `G(I)` in star order: strictly decreasing `x`-exponents, strictly
/// increasing `y`-exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarOrdered {
    gens: Vec<Monomial>,
}

impl StarOrdered {
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// The index of the last generator.
    pub fn m(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn a(&self, k: usize) -> u32 {
        self.gens[k].exp(0)
    }

    pub fn b(&self, k: usize) -> u32 {
        self.gens[k].exp(1)
    }

    pub fn d(&self, k: usize) -> u32 {
        self.gens[k].degree()
    }
}

pub fn star_order(ideal: &MonomialIdeal) -> Result<StarOrdered> {
    require_bivariate(ideal)?;
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|u, v| v.exp(0).cmp(&u.exp(0)));
    for w in gens.windows(2) {
        assert!(
            w[0].exp(0) > w[1].exp(0) && w[0].exp(1) < w[1].exp(1),
            "minimal generators in two variables form strict chains"
        );
    }
    Ok(StarOrdered { gens })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightKind {
    XTight,
    YTight,
    /// Both x-tight and y-tight: a power of `(x, y)`, including the unit ideal.
    XAndYTight,
    StrictYxTight,
    NotTight,
}

impl TightKind {
    pub fn is_yx_tight(self) -> bool {
        self != TightKind::NotTight
    }
}

impl fmt::Display for TightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TightKind::XTight => "x-tight",
            TightKind::YTight => "y-tight",
            TightKind::XAndYTight => "x-tight and y-tight",
            TightKind::StrictYxTight => "strict yx-tight",
            TightKind::NotTight => "not tight",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightClass {
    pub kind: TightKind,
    /// Every index where the y-tight head meets the x-tight tail.
    pub join_indices: Vec<usize>,
    /// The tightness interval is `[0, m]`.
    pub m: usize,
}

/// Classify an m-primary bivariate ideal in normalized form.
pub fn classify_tight(ideal: &MonomialIdeal) -> Result<TightClass> {
    let star = star_order(ideal)?;
    let m = star.m();
    if star.a(m) != 0 || star.b(0) != 0 {
        return Err(Error::NotNormalized {
            a_last: star.a(m),
            b_first: star.b(0),
        });
    }
    // head[j]: b_k = k for all k <= j; tail[j]: a_k = m - k for all k >= j
    let mut head = vec![false; m + 1];
    let mut ok = true;
    for (k, slot) in head.iter_mut().enumerate() {
        ok &= star.b(k) as usize == k;
        *slot = ok;
    }
    let mut tail = vec![false; m + 1];
    ok = true;
    for k in (0..=m).rev() {
        ok &= star.a(k) as usize == m - k;
        tail[k] = ok;
    }
    let join_indices: Vec<usize> = (0..=m).filter(|&j| head[j] && tail[j]).collect();
    let x_tight = tail[0];
    let y_tight = head[m];
    let kind = match (x_tight, y_tight) {
        (true, true) => TightKind::XAndYTight,
        (true, false) => TightKind::XTight,
        (false, true) => TightKind::YTight,
        (false, false) if !join_indices.is_empty() => TightKind::StrictYxTight,
        _ => TightKind::NotTight,
    };
    Ok(TightClass { kind, join_indices, m })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightFactorization {
    /// `a_m`, the exponent of `x` common to all generators.
    pub x_shift: u32,
    /// `b_0`, the exponent of `y` common to all generators.
    pub y_shift: u32,
    /// `I / (x^{a_m} y^{b_0})`, m-primary in normalized form.
    pub core: MonomialIdeal,
    pub class: TightClass,
}

impl TightFactorization {
    pub fn shift(&self) -> Monomial {
        Monomial::new(vec![self.x_shift, self.y_shift]).expect("two small exponents")
    }
}

/// Write `I = x^{a_m} y^{b_0} J` and classify `J`. `I` is componentwise
/// polymatroidal exactly when `J` is yx-tight.
pub fn tight_factorization(ideal: &MonomialIdeal) -> Result<TightFactorization> {
    let star = star_order(ideal)?;
    let (x_shift, y_shift) = (star.a(star.m()), star.b(0));
    let shift = Monomial::new(vec![x_shift, y_shift])?;
    let core = ideal.divide(&shift).expect("gcd divides every generator");
    let class = classify_tight(&core)?;
    Ok(TightFactorization {
        x_shift,
        y_shift,
        core,
        class,
    })
}

/// Check the step conditions on consecutive star-ordered generators and the
/// valley shape of the degree sequence. Returns the smallest valley index
/// `j`, with `d_0 >= ... >= d_j <= ... <= d_m`, or `None` if a condition
/// fails.
///
/// The valley prefix is taken as the full chain `d_0 >= d_1 >= ... >= d_j`.
pub fn cwp_structural(ideal: &MonomialIdeal) -> Result<Option<usize>> {
    let star = star_order(ideal)?;
    let m = star.m();
    for i in 0..m {
        let (a0, a1, b0, b1) = (star.a(i), star.a(i + 1), star.b(i), star.b(i + 1));
        let ok = match star.d(i).cmp(&star.d(i + 1)) {
            std::cmp::Ordering::Greater => b1 == b0 + 1 && a0 - 1 > a1,
            std::cmp::Ordering::Less => a1 == a0 - 1 && b0 + 1 < b1,
            std::cmp::Ordering::Equal => b1 == b0 + 1 && a1 == a0 - 1,
        };
        if !ok {
            return Ok(None);
        }
    }
    // smallest j from which the degrees never decrease
    let mut j = m;
    while j > 0 && star.d(j - 1) <= star.d(j) {
        j -= 1;
    }
    let prefix_ok = (0..j).all(|k| star.d(k) >= star.d(k + 1));
    Ok(prefix_ok.then_some(j))
}

/// The order `u_j, ..., u_m, u_{j-1}, ..., u_0` for the given join index,
/// checked with the admissibility verifier.
pub fn order_hash_at(ideal: &MonomialIdeal, join: usize) -> Result<GeneratorOrder> {
    let star = star_order(ideal)?;
    let m = star.m();
    if join > m {
        return Err(Error::Precondition(format!("join index {join} exceeds m = {m}")));
    }
    let gens = star.gens();
    let order: Vec<Monomial> = gens[join..]
        .iter()
        .chain(gens[..join].iter().rev())
        .cloned()
        .collect();
    let order = GeneratorOrder::new(ideal.clone(), order)?;
    if let Err(f) = is_admissible_order(&order) {
        return Err(Error::Verification(format!(
            "order with join index {join} fails at position {} with colon {}",
            f.position, f.colon
        )));
    }
    Ok(order)
}

/// Admissible order for a componentwise polymatroidal ideal in two
/// variables, using the smallest valley index.
pub fn order_hash(ideal: &MonomialIdeal) -> Result<GeneratorOrder> {
    let join = cwp_structural(ideal)?.ok_or_else(|| {
        Error::Precondition("ideal is not componentwise polymatroidal".to_string())
    })?;
    order_hash_at(ideal, join)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::is_componentwise_polymatroidal;
    use crate::ideal::ideal;
    use crate::monomial::mono;

    pub(crate) fn i1() -> MonomialIdeal {
        ideal(
            2,
            &[&[7, 0], &[6, 5], &[5, 8], &[4, 10], &[3, 13], &[2, 17], &[1, 20], &[0, 25]],
        )
    }

    pub(crate) fn i2() -> MonomialIdeal {
        ideal(
            2,
            &[&[17, 0], &[14, 1], &[11, 2], &[8, 3], &[7, 4], &[5, 5], &[4, 6], &[2, 7], &[0, 8]],
        )
    }

    pub(crate) fn i3() -> MonomialIdeal {
        ideal(
            2,
            &[
                &[20, 0],
                &[14, 1],
                &[11, 2],
                &[8, 3],
                &[6, 4],
                &[5, 9],
                &[4, 13],
                &[3, 14],
                &[2, 16],
                &[1, 17],
                &[0, 21],
            ],
        )
    }

    #[test]
    fn star_order_of_i3() {
        let s = star_order(&i3()).unwrap();
        assert_eq!(s.gens()[0], mono(&[20, 0]));
        assert_eq!(s.gens()[4], mono(&[6, 4]));
        assert_eq!(s.gens()[10], mono(&[0, 21]));
        assert_eq!(star_order(&ideal(2, &[&[3, 1]])).unwrap().gens().len(), 1);
        assert_eq!(star_order(&ideal(3, &[&[1, 0, 0]])), Err(Error::NotBivariate(3)));
    }

    #[test]
    fn classify_worked_examples() {
        let c1 = classify_tight(&i1()).unwrap();
        assert_eq!((c1.kind, c1.m), (TightKind::XTight, 7));
        let c2 = classify_tight(&i2()).unwrap();
        assert_eq!((c2.kind, c2.m), (TightKind::YTight, 8));
        let c3 = classify_tight(&i3()).unwrap();
        assert_eq!(c3.kind, TightKind::StrictYxTight);
        assert_eq!(c3.join_indices, vec![4]);
    }

    #[test]
    fn classify_requires_normalized_form() {
        let shifted = i1().translate(&mono(&[1, 0])).unwrap();
        assert!(matches!(classify_tight(&shifted), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn factorization_examples() {
        let f = tight_factorization(&i1().translate(&mono(&[3, 2])).unwrap()).unwrap();
        assert_eq!((f.x_shift, f.y_shift), (3, 2));
        assert_eq!(f.core, i1());
        assert_eq!(f.class.kind, TightKind::XTight);

        let p = tight_factorization(&ideal(2, &[&[5, 7]])).unwrap();
        assert_eq!((p.x_shift, p.y_shift), (5, 7));
        assert!(p.core.is_unit());
        assert_eq!(p.class.kind, TightKind::XAndYTight);
        assert_eq!(p.class.join_indices, vec![0]);

        let gap = ideal(2, &[&[3, 0], &[0, 3]]);
        assert_eq!(tight_factorization(&gap).unwrap().class.kind, TightKind::NotTight);
        assert!(!is_componentwise_polymatroidal(&gap).unwrap().holds());
    }

    #[test]
    fn structural_examples() {
        assert_eq!(cwp_structural(&i3()).unwrap(), Some(4));
        assert_eq!(cwp_structural(&ideal(2, &[&[3, 0], &[0, 3]])).unwrap(), None);
        let equi = MonomialIdeal::veronese(2, 4, &[4, 4]).unwrap().translate(&mono(&[1, 2])).unwrap();
        assert_eq!(cwp_structural(&equi).unwrap(), Some(0));
    }

    #[test]
    fn printed_hash_order() {
        let i = ideal(
            2,
            &[&[14, 2], &[13, 3], &[10, 4], &[9, 5], &[5, 6], &[4, 12], &[3, 13]],
        );
        let o = order_hash(&i).unwrap();
        let expected: Vec<Monomial> = [[5, 6], [4, 12], [3, 13], [9, 5], [10, 4], [13, 3], [14, 2]]
            .iter()
            .map(|r| mono(r))
            .collect();
        assert_eq!(o.order(), expected.as_slice());
    }

    #[test]
    fn hash_order_degenerates_at_the_ends() {
        // x-tight: j = 0, order is the star order
        let o = order_hash(&i1()).unwrap();
        assert_eq!(o.order(), star_order(&i1()).unwrap().gens());
        // y-tight: j = m, order is the star order reversed
        let o = order_hash(&i2()).unwrap();
        let mut rev = star_order(&i2()).unwrap().gens().to_vec();
        rev.reverse();
        assert_eq!(o.order(), rev.as_slice());
    }

    #[test]
    fn order_hash_rejects_non_cwp() {
        assert!(matches!(
            order_hash(&ideal(2, &[&[3, 0], &[0, 3]])),
            Err(Error::Precondition(_))
        ));
    }
}
