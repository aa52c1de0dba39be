//! Truncated formal series in four variables: a degree-grading variable `q`
//! (one power per curve degree), the variable dual to a line condition, the
//! variable dual to a point condition, and a base-class bookkeeping variable
//! `u`. All arithmetic truncates silently at fixed bounds.
//!
//! The quantum part of the genus-zero potential, after collapsing each mixed
//! deformation variable onto `u^i` times the corresponding fiber variable,
//! has third derivatives that read directly off the planar table. A single
//! derivative in a variable dual to `a^i H^j` (with `j >= 1`; the quantum
//! part has no variables dual to pure base classes) produces
//!
//! ```text
//! sum over d, r, s, theta of
//!   d^(#j=1) N_d(r, s, theta)
//!     q^d  t2^(r - #j=2) / (r - #j=2)!  t3^(s - #j=3) / (s - #j=3)!  u^(theta - i)
//! ```
//!
//! where the counts run over all three derivative slots. In the split
//! (quadratic) terms of the WDVV identity the pairing contraction couples a
//! family of such derivatives whose base exponents sum to a constant; there
//! the factors are assembled unshifted and the whole product is shifted down
//! once by that constant, so each pair of table keys enters exactly once.
//! Extracting one coefficient of the resulting identity reproduces the
//! recursion that fills the table, making the series an independent
//! consistency route for every entry.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::traits::One;

use crate::gw::{n_planar, GwKey, MemoTable};
use crate::quantum::phi3_classical;
use crate::rational::Rational;
use crate::ring::{basis_pairs, reduce, PairingTensor};
use crate::Error;

/// Exponent bounds; arithmetic drops anything beyond them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SeriesBounds {
    pub q: u32,
    pub p: u32,
    pub s: u32,
    pub u: u32,
}

impl SeriesBounds {
    pub fn contains(&self, m: &SeriesMonomial) -> bool {
        m.q <= self.q && m.p <= self.p && m.s <= self.s && m.u <= self.u
    }
}

/// One monomial `q^q t2^p t3^s u^u`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SeriesMonomial {
    pub q: u32,
    pub p: u32,
    pub s: u32,
    pub u: u32,
}

/// A truncated series with exact rational coefficients, stored plain
/// (any divided-power normalization happens at extraction time).
#[derive(Clone, PartialEq, Debug)]
pub struct NovikovSeries {
    bounds: SeriesBounds,
    terms: BTreeMap<SeriesMonomial, Rational>,
}

impl NovikovSeries {
    pub fn zero(bounds: SeriesBounds) -> Self {
        NovikovSeries {
            bounds,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(bounds: SeriesBounds, value: Rational) -> Self {
        let mut s = NovikovSeries::zero(bounds);
        s.add_term(
            SeriesMonomial {
                q: 0,
                p: 0,
                s: 0,
                u: 0,
            },
            value,
        );
        s
    }

    pub fn bounds(&self) -> SeriesBounds {
        self.bounds
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` to the monomial, silently dropping out-of-bounds terms
    /// and keeping the map free of explicit zeros.
    pub fn add_term(&mut self, monomial: SeriesMonomial, coeff: Rational) {
        if coeff.is_zero() || !self.bounds.contains(&monomial) {
            return;
        }
        let slot = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn coefficient(&self, monomial: &SeriesMonomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SeriesMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &NovikovSeries) -> NovikovSeries {
        assert_eq!(self.bounds, other.bounds, "incompatible bounds");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NovikovSeries) -> NovikovSeries {
        self.add(&other.scaled(&Rational::from_int(-1)))
    }

    pub fn scaled(&self, c: &Rational) -> NovikovSeries {
        let mut out = NovikovSeries::zero(self.bounds);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(*m, x * c);
        }
        out
    }

    /// Truncating product.
    pub fn mul(&self, other: &NovikovSeries) -> NovikovSeries {
        assert_eq!(self.bounds, other.bounds, "incompatible bounds");
        let mut out = NovikovSeries::zero(self.bounds);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = SeriesMonomial {
                    q: m1.q + m2.q,
                    p: m1.p + m2.p,
                    s: m1.s + m2.s,
                    u: m1.u + m2.u,
                };
                if !self.bounds.contains(&m) {
                    continue;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Divides by `u^shift`: monomials with a smaller `u`-exponent are
    /// dropped, the rest move down. The result lives at the given bounds.
    pub fn shifted_u_down(&self, shift: u32, bounds: SeriesBounds) -> NovikovSeries {
        let mut out = NovikovSeries::zero(bounds);
        for (m, c) in &self.terms {
            if m.u < shift {
                continue;
            }
            out.add_term(
                SeriesMonomial {
                    q: m.q,
                    p: m.p,
                    s: m.s,
                    u: m.u - shift,
                },
                c.clone(),
            );
        }
        out
    }

    /// Whether the two series agree on every monomial inside `window`.
    pub fn agrees_within(&self, other: &NovikovSeries, window: SeriesBounds) -> bool {
        let covered = |a: &NovikovSeries, b: &NovikovSeries| {
            a.terms
                .iter()
                .all(|(m, c)| !window.contains(m) || b.coefficient(m) == *c)
        };
        covered(self, other) && covered(other, self)
    }
}

/// A deformation variable `t_(a,h)`, dual to the class `a^a H^h`. The fiber
/// exponent `h` runs over 0..=3, with `h = 3` only at `a = 0` (the point
/// condition variable).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DerivVar {
    pub a: u32,
    pub h: u32,
}

impl DerivVar {
    pub fn new(a: u32, h: u32) -> Self {
        assert!(a <= 3 && h <= 3, "variable exponents out of range");
        assert!(h != 3 || a == 0, "the only cubic fiber variable is t_(0,3)");
        DerivVar { a, h }
    }
}

/// The divisor variable dual to `H`.
pub const T01: DerivVar = DerivVar { a: 0, h: 1 };
/// The line-condition variable dual to `H^2`.
pub const T02: DerivVar = DerivVar { a: 0, h: 2 };
/// The point-condition variable dual to `H^3`.
pub const T03: DerivVar = DerivVar { a: 0, h: 3 };

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

/// Core table-to-series builder: every balanced key `(d, r, s, theta)` with
/// `d <= bounds.q` lands on the monomial
/// `(d, r - line_derivs, s - point_derivs, theta - twist_shift)` with
/// coefficient `d^divisor_power N / ((r - line_derivs)! (s - point_derivs)!)`,
/// keys that would need a negative exponent dropped.
fn table_series(
    divisor_power: u32,
    line_derivs: u32,
    point_derivs: u32,
    twist_shift: u32,
    bounds: SeriesBounds,
    memo: &MemoTable,
) -> NovikovSeries {
    let mut out = NovikovSeries::zero(bounds);
    for d in 1..=bounds.q {
        let divisor_factor = Rational::from_bigint(BigInt::from(d).pow(divisor_power));
        for s in 0..=3u32 {
            for theta in 0..=3u32 {
                let used = 2 * s + theta;
                if used > 3 * d + 2 {
                    continue;
                }
                let r = 3 * d + 2 - used;
                if r < line_derivs || s < point_derivs || theta < twist_shift {
                    continue;
                }
                let monomial = SeriesMonomial {
                    q: d,
                    p: r - line_derivs,
                    s: s - point_derivs,
                    u: theta - twist_shift,
                };
                if !bounds.contains(&monomial) {
                    continue;
                }
                let value = n_planar(GwKey::raw(d, r, s, theta), memo);
                if value.is_zero() {
                    continue;
                }
                let norm = factorial(monomial.p) * factorial(monomial.s);
                out.add_term(
                    monomial,
                    &divisor_factor * value / Rational::from_bigint(norm),
                );
            }
        }
    }
    out
}

/// Third derivative of the quantum part of the potential in the collapsed
/// variables, per the rule in the module docs. Zero whenever some slot has
/// fiber exponent 0.
pub fn quantum_three_derivative(
    slots: [DerivVar; 3],
    bounds: SeriesBounds,
    memo: &MemoTable,
) -> NovikovSeries {
    if slots.iter().any(|v| v.h == 0) {
        return NovikovSeries::zero(bounds);
    }
    let divisor_power = slots.iter().filter(|v| v.h == 1).count() as u32;
    let line_derivs = slots.iter().filter(|v| v.h == 2).count() as u32;
    let point_derivs = slots.iter().filter(|v| v.h == 3).count() as u32;
    let twist_shift: u32 = slots.iter().map(|v| v.a).sum();
    table_series(
        divisor_power,
        line_derivs,
        point_derivs,
        twist_shift,
        bounds,
        memo,
    )
}

/// Third derivative of the classical (degree-zero) part: a plain triple
/// integral of the classes the three variables are dual to.
pub fn classical_three_derivative(slots: [DerivVar; 3]) -> Rational {
    let classes: Vec<_> = slots
        .iter()
        .map(|v| reduce(&[(v.a, v.h, Rational::one())]))
        .collect();
    phi3_classical(&classes[0], &classes[1], &classes[2])
}

/// How one derivative pattern with a free third slot of fiber exponent `h`
/// enters a split factor: the two fixed slots plus the family slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrossPattern {
    /// `[t1, t1, free]`
    DivisorDivisor,
    /// `[t1, t2, free]`
    DivisorLine,
    /// `[t2, t2, free]`
    LineLine,
}

impl CrossPattern {
    fn fixed_slots(self) -> (u32, u32) {
        // (divisor derivatives, line derivatives) among the two fixed slots
        match self {
            CrossPattern::DivisorDivisor => (2, 0),
            CrossPattern::DivisorLine => (1, 1),
            CrossPattern::LineLine => (0, 2),
        }
    }

    /// The factor series for this pattern with an aggregated (unshifted)
    /// family slot of fiber exponent `h`.
    fn aggregated_factor(self, h: usize, bounds: SeriesBounds, memo: &MemoTable) -> NovikovSeries {
        let (divisors, lines) = self.fixed_slots();
        table_series(
            divisors + u32::from(h == 1),
            lines + u32::from(h == 2),
            u32::from(h == 3),
            0,
            bounds,
            memo,
        )
    }
}

/// One surviving split family: the pairing couples derivatives whose free
/// slots have fiber exponents `(left_fiber, right_fiber)` and whose base
/// exponents sum to `shift`, with a common weight.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadFamily {
    pub left_fiber: usize,
    pub right_fiber: usize,
    pub shift: u32,
    pub weight: Rational,
    pub members: usize,
}

/// Everything the diagonal tensor decides about the specialized WDVV
/// identity: the constant term, the surviving single-derivative terms
/// (classical factor against a quantum derivative), and the surviving split
/// families (quantum against quantum), for each side.
#[derive(Clone, Debug)]
pub struct WdvvShape {
    pub lhs_constant: Rational,
    pub rhs_constant: Rational,
    pub lhs_cross: Vec<(CrossPattern, DerivVar, Rational)>,
    pub rhs_cross: Vec<(CrossPattern, DerivVar, Rational)>,
    pub lhs_quad: Vec<QuadFamily>,
    pub rhs_quad: Vec<QuadFamily>,
}

fn cross_weights(
    pairing: &PairingTensor,
    classical_slots: [DerivVar; 2],
    quantum_pattern: CrossPattern,
    transpose: bool,
) -> Vec<(CrossPattern, DerivVar, Rational)> {
    let mut out = Vec::new();
    for v in basis_pairs() {
        if v.1 == 0 {
            continue; // quantum side dead
        }
        let mut weight = Rational::zero();
        for u in basis_pairs() {
            let scalar = classical_three_derivative([
                classical_slots[0],
                classical_slots[1],
                DerivVar::new(u.0 as u32, u.1 as u32),
            ]);
            if scalar.is_zero() {
                continue;
            }
            let g = if transpose {
                pairing.ginv(v, u)
            } else {
                pairing.ginv(u, v)
            };
            weight += &(&scalar * g);
        }
        if !weight.is_zero() {
            out.push((
                quantum_pattern,
                DerivVar::new(v.0 as u32, v.1 as u32),
                weight,
            ));
        }
    }
    out
}

fn quad_families(pairing: &PairingTensor) -> Vec<(usize, usize, u32, Rational, usize)> {
    // group surviving (u, v) pairs by (fiber_left, fiber_right, shift, weight)
    let mut groups: BTreeMap<(usize, usize, u32, String), (Rational, usize)> = BTreeMap::new();
    for u in basis_pairs() {
        if u.1 == 0 {
            continue;
        }
        for v in basis_pairs() {
            if v.1 == 0 {
                continue;
            }
            let w = pairing.ginv(u, v);
            if w.is_zero() {
                continue;
            }
            let key = (u.1, v.1, (u.0 + v.0) as u32, w.to_string());
            let entry = groups.entry(key).or_insert_with(|| (w.clone(), 0));
            entry.1 += 1;
        }
    }
    groups
        .into_iter()
        .map(|((j, l, shift, _), (weight, members))| (j, l, shift, weight, members))
        .collect()
}

/// Derives the shape of the specialized WDVV identity from the pairing:
/// nothing about which terms survive is hard-coded here.
pub fn derive_wdvv_shape(pairing: &PairingTensor) -> WdvvShape {
    // constant (classical x classical) contractions
    let constant = |left: [DerivVar; 2], right: [DerivVar; 2]| {
        let mut acc = Rational::zero();
        for u in basis_pairs() {
            let cu = classical_three_derivative([
                left[0],
                left[1],
                DerivVar::new(u.0 as u32, u.1 as u32),
            ]);
            if cu.is_zero() {
                continue;
            }
            for v in basis_pairs() {
                let cv = classical_three_derivative([
                    right[0],
                    right[1],
                    DerivVar::new(v.0 as u32, v.1 as u32),
                ]);
                if cv.is_zero() {
                    continue;
                }
                acc += &(&cu * &(&cv * pairing.ginv(u, v)));
            }
        }
        acc
    };

    let lhs_constant = constant([T01, T01], [T02, T02]);
    let rhs_constant = constant([T01, T02], [T01, T02]);

    // classical x quantum cross terms
    let mut lhs_cross = cross_weights(pairing, [T01, T01], CrossPattern::LineLine, false);
    lhs_cross.extend(cross_weights(
        pairing,
        [T02, T02],
        CrossPattern::DivisorDivisor,
        true,
    ));
    let mut rhs_cross = cross_weights(pairing, [T01, T02], CrossPattern::DivisorLine, false);
    rhs_cross.extend(cross_weights(
        pairing,
        [T01, T02],
        CrossPattern::DivisorLine,
        true,
    ));

    // quantum x quantum split families; the pairing decides which fiber
    // pairs live, their common base-exponent sum, and their weight
    let families: Vec<QuadFamily> = quad_families(pairing)
        .into_iter()
        .map(|(j, l, shift, weight, members)| QuadFamily {
            left_fiber: j,
            right_fiber: l,
            shift,
            weight,
            members,
        })
        .collect();
    let lhs_quad = families.clone();
    let rhs_quad = families;

    WdvvShape {
        lhs_constant,
        rhs_constant,
        lhs_cross,
        rhs_cross,
        lhs_quad,
        rhs_quad,
    }
}

fn widen_u(bounds: SeriesBounds, extra: u32) -> SeriesBounds {
    SeriesBounds {
        u: bounds.u + extra,
        ..bounds
    }
}

fn assemble_quad(
    families: &[QuadFamily],
    left: CrossPattern,
    right: CrossPattern,
    bounds: SeriesBounds,
    memo: &MemoTable,
) -> NovikovSeries {
    let mut out = NovikovSeries::zero(bounds);
    for family in families {
        // factors are built unshifted, so the product needs headroom in u
        // before the family shift pulls it back down
        let wide = widen_u(bounds, family.shift);
        let f1 = left.aggregated_factor(family.left_fiber, wide, memo);
        let f2 = right.aggregated_factor(family.right_fiber, wide, memo);
        let product = f1.mul(&f2).shifted_u_down(family.shift, bounds);
        out = out.add(&product.scaled(&family.weight));
    }
    out
}

/// Assembles both sides of the identity from a derived shape.
pub fn wdvv_sides_from_shape(
    shape: &WdvvShape,
    bounds: SeriesBounds,
    memo: &MemoTable,
) -> (NovikovSeries, NovikovSeries) {
    let assemble_side = |constant: &Rational,
                         cross: &[(CrossPattern, DerivVar, Rational)],
                         quads: &[QuadFamily],
                         left: CrossPattern,
                         right: CrossPattern| {
        let mut side = NovikovSeries::constant(bounds, constant.clone());
        for (pattern, var, weight) in cross {
            let (div, line) = pattern.fixed_slots();
            let slots = match (div, line) {
                (2, 0) => [T01, T01, *var],
                (1, 1) => [T01, T02, *var],
                (0, 2) => [T02, T02, *var],
                _ => unreachable!(),
            };
            side = side.add(&quantum_three_derivative(slots, bounds, memo).scaled(weight));
        }
        side.add(&assemble_quad(quads, left, right, bounds, memo))
    };

    let lhs = assemble_side(
        &shape.lhs_constant,
        &shape.lhs_cross,
        &shape.lhs_quad,
        CrossPattern::DivisorDivisor,
        CrossPattern::LineLine,
    );
    let rhs = assemble_side(
        &shape.rhs_constant,
        &shape.rhs_cross,
        &shape.rhs_quad,
        CrossPattern::DivisorLine,
        CrossPattern::DivisorLine,
    );
    (lhs, rhs)
}

/// Both sides of the specialized WDVV identity assembled from its four
/// explicit pieces:
///
/// ```text
/// lhs = d^3Phi/dt2^3
///     + u^-3 [ (divisor-divisor split factor) (line-line split factor) ]
/// rhs = 2 (d^3Phi/dt1 dt2 dt_(1,2) - d^3Phi/dt1 dt2 dt_(2,1))
///     + u^-3 [ (divisor-line split factor)^2 ]
/// ```
///
/// Split factors aggregate the free slot over base exponents; the shift by
/// `u^-3` implements the constraint that the coupled base exponents sum
/// to 3, each pair of table keys entering once.
pub fn wdvv1_sides(bounds: SeriesBounds, memo: &MemoTable) -> (NovikovSeries, NovikovSeries) {
    let qtd = |slots| quantum_three_derivative(slots, bounds, memo);
    let wide = widen_u(bounds, 3);

    let line_triple = qtd([T02, T02, T02]);
    let split_lhs = CrossPattern::DivisorDivisor
        .aggregated_factor(1, wide, memo)
        .mul(&CrossPattern::LineLine.aggregated_factor(1, wide, memo))
        .shifted_u_down(3, bounds);
    let lhs = line_triple.add(&split_lhs);

    let linear = qtd([T01, T02, DerivVar::new(1, 2)]).sub(&qtd([T01, T02, DerivVar::new(2, 1)]));
    let mixed = CrossPattern::DivisorLine.aggregated_factor(1, wide, memo);
    let split_rhs = mixed.mul(&mixed).shifted_u_down(3, bounds);
    let rhs = linear.scaled(&Rational::from_int(2)).add(&split_rhs);

    (lhs, rhs)
}

/// Outcome of extracting one coefficient of the WDVV identity.
#[derive(Clone, Debug)]
pub struct WdvvReport {
    pub key: GwKey,
    pub ok: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Checks one table entry against the series form of the identity.
///
/// The expansion pieces are assembled as truncated series from the table,
/// the coefficient of `q^d t2^(r-3) t3^s u^theta` is extracted, and the
/// divided-power normalization `(r-3)! s!` is applied. The reported left
/// side is the table entry as the pure line-derivative series sees it; the
/// right side collects every other piece, i.e. the recursion. Requires a
/// balanced key with `r >= 3`.
pub fn wdvv1_coefficient_identity(key: GwKey, memo: &MemoTable) -> Result<WdvvReport, Error> {
    if !key.is_balanced() || key.r() < 3 {
        return Err(Error::UnbalancedKey(key.to_string()));
    }
    let bounds = SeriesBounds {
        q: key.d(),
        p: key.r() - 3,
        s: key.s(),
        u: key.theta(),
    };
    let target = SeriesMonomial {
        q: key.d(),
        p: key.r() - 3,
        s: key.s(),
        u: key.theta(),
    };
    let norm = Rational::from_bigint(factorial(target.p) * factorial(target.s));

    let (lhs_series, rhs_series) = wdvv1_sides(bounds, memo);
    let line_triple = quantum_three_derivative([T02, T02, T02], bounds, memo).coefficient(&target);
    let split_lhs = lhs_series.coefficient(&target) - &line_triple;

    let lhs = line_triple * &norm;
    let rhs = (rhs_series.coefficient(&target) - split_lhs) * &norm;
    Ok(WdvvReport {
        key,
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}
