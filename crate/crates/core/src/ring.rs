//! Exact arithmetic in the cohomology ring of the universal plane.
//!
//! The universal plane `E` fibers over the space of hyperplanes in projective
//! 3-space (a dual projective 3-space), and its rational cohomology is the
//! quotient ring
//!
//! ```text
//!     Q[a, H] / (a^4,  H^3 - a H^2 + a^2 H - a^3)
//! ```
//!
//! where `a` is the hyperplane class of the base and `H` the pullback of the
//! hyperplane class of the ambient projective 3-space. The monomials
//! `a^i H^j` with `0 <= i <= 3`, `0 <= j <= 2` form a basis, written `T_ij`.
//! Every class is stored as a dense 4x3 coefficient grid in that normal form.
//!
//! The normal form rewrites `H^3 -> a H^2 - a^2 H + a^3` until every
//! H-exponent is at most 2, then truncates `a^i` for `i >= 4`. The two
//! relations have disjoint leading terms, so the rewriting is confluent and
//! equality is coefficient comparison.
//!
//! On top of the ring sit the integration map (coefficient of the point class
//! `a^3 H^2`), the Poincare pairing with its exact inverse, the dual basis in
//! closed form, and the diagonal class of `E x E`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

use crate::rational::Rational;
use crate::Error;

/// Number of admissible `a`-exponents (0 through 3).
pub const A_DEG: usize = 4;
/// Number of admissible `H`-exponents (0 through 2).
pub const H_DEG: usize = 3;
/// Dimension of the cohomology as a vector space.
pub const BASIS_DIM: usize = A_DEG * H_DEG;

/// Flat position of the basis monomial `a^i H^j`, lexicographic in `(i, j)`.
/// This ordering is fixed: it is what the serialized matrices use.
pub fn flat_index(i: usize, j: usize) -> usize {
    debug_assert!(i < A_DEG && j < H_DEG);
    H_DEG * i + j
}

/// Inverse of [`flat_index`].
pub fn basis_pair(flat: usize) -> (usize, usize) {
    debug_assert!(flat < BASIS_DIM);
    (flat / H_DEG, flat % H_DEG)
}

/// All 12 basis exponent pairs `(i, j)` in flat order.
pub fn basis_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..BASIS_DIM).map(basis_pair)
}

type Grid = [[Rational; H_DEG]; A_DEG];

fn zero_grid() -> Grid {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

/// A cohomology class of the universal plane in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    coeff: Grid,
}

impl CohClass {
    pub fn zero() -> Self {
        CohClass { coeff: zero_grid() }
    }

    /// The basis monomial `T_ij = a^i H^j`. Panics outside the grid.
    pub fn basis(i: usize, j: usize) -> Self {
        assert!(i < A_DEG && j < H_DEG, "basis exponents out of range");
        let mut c = CohClass::zero();
        c.coeff[i][j] = Rational::one();
        c
    }

    /// The multiplicative unit `T_00`.
    pub fn unit() -> Self {
        CohClass::basis(0, 0)
    }

    /// The class of a point of the ambient projective 3-space, `H^3` in
    /// normal form: `T_12 - T_21 + T_30`.
    pub fn point_class() -> Self {
        reduce(&[(0, 3, Rational::one())])
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeff[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().flatten().all(Rational::is_zero)
    }

    /// Nonzero coefficients as `(i, j, c)`.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.coeff.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    /// The common cohomological degree `2(i + j)`, when the class is
    /// homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for (i, j, _) in self.iter_nonzero() {
            match deg {
                None => deg = Some(2 * (i + j)),
                Some(d) if d == 2 * (i + j) => {}
                Some(_) => return None,
            }
        }
        deg
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (i, j, c) in other.iter_nonzero() {
            out.coeff[i][j] += c;
        }
        out
    }

    pub fn sub(&self, other: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (i, j, c) in other.iter_nonzero() {
            out.coeff[i][j] -= c;
        }
        out
    }

    pub fn neg(&self) -> CohClass {
        self.scaled(&Rational::from_int(-1))
    }

    pub fn scaled(&self, c: &Rational) -> CohClass {
        let mut out = CohClass::zero();
        if c.is_zero() {
            return out;
        }
        for (i, j, x) in self.iter_nonzero() {
            out.coeff[i][j] = x * c;
        }
        out
    }

    pub fn add_assign(&mut self, other: &CohClass) {
        for (i, j, c) in other.iter_nonzero() {
            self.coeff[i][j] += c;
        }
    }

    pub fn add_scaled_assign(&mut self, other: &CohClass, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, j, x) in other.iter_nonzero() {
            self.coeff[i][j] += &(x * c);
        }
    }

    /// Cup product: distribute over basis monomials, add exponents, reduce.
    /// Associative and commutative with unit `T_00`.
    pub fn mul(&self, other: &CohClass) -> CohClass {
        let mut raw = Vec::new();
        for (i1, j1, c1) in self.iter_nonzero() {
            for (i2, j2, c2) in other.iter_nonzero() {
                raw.push(((i1 + i2) as u32, (j1 + j2) as u32, c1 * c2));
            }
        }
        reduce(&raw)
    }

    /// Integration over the universal plane: the coefficient of the point
    /// class `a^3 H^2`. Vanishes on every class of degree other than 10.
    pub fn integrate(&self) -> Rational {
        self.coeff[A_DEG - 1][H_DEG - 1].clone()
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.iter_nonzero() {
            if first {
                if c.is_one() {
                    write!(f, "T{i}{j}")?;
                } else {
                    write!(f, "{c} T{i}{j}")?;
                }
                first = false;
            } else if c.is_one() {
                write!(f, " + T{i}{j}")?;
            } else if c == &Rational::from_int(-1) {
                write!(f, " - T{i}{j}")?;
            } else {
                write!(f, " + {c} T{i}{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CohClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let grid: Vec<Vec<String>> = self
            .coeff
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        let mut st = serializer.serialize_struct("CohClass", 1)?;
        st.serialize_field("coeff", &grid)?;
        st.end()
    }
}

/// Normal form of a linear combination of monomials `a^p H^q` with arbitrary
/// nonnegative exponents. Linear over the coefficients; total on all inputs.
pub fn reduce(terms: &[(u32, u32, Rational)]) -> CohClass {
    let mut out = CohClass::zero();
    let mut work: Vec<(u32, u32, Rational)> = terms
        .iter()
        .filter(|(_, _, c)| !c.is_zero())
        .cloned()
        .collect();
    while let Some((p, q, c)) = work.pop() {
        if p as usize >= A_DEG {
            continue;
        }
        if (q as usize) < H_DEG {
            out.coeff[p as usize][q as usize] += c;
        } else {
            // a^p H^q = a^(p+1) H^(q-1) - a^(p+2) H^(q-2) + a^(p+3) H^(q-3)
            work.push((p + 1, q - 1, c.clone()));
            work.push((p + 2, q - 2, -&c));
            work.push((p + 3, q - 3, c));
        }
    }
    out
}

type Matrix = [[Rational; BASIS_DIM]; BASIS_DIM];

fn zero_matrix() -> Matrix {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

fn identity_matrix() -> Matrix {
    let mut m = zero_matrix();
    for (d, row) in m.iter_mut().enumerate() {
        row[d] = Rational::one();
    }
    m
}

/// Exact Gauss-Jordan inverse. `None` when singular.
fn invert(m: &Matrix) -> Option<Matrix> {
    let mut a = m.clone();
    let mut inv = identity_matrix();
    for col in 0..BASIS_DIM {
        let pivot = (col..BASIS_DIM).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = Rational::one() / &a[col][col];
        for k in 0..BASIS_DIM {
            a[col][k] *= &scale;
            inv[col][k] *= &scale;
        }
        for row in 0..BASIS_DIM {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for k in 0..BASIS_DIM {
                let t = &a[col][k] * &factor;
                a[row][k] -= &t;
                let t = &inv[col][k] * &factor;
                inv[row][k] -= &t;
            }
        }
    }
    Some(inv)
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect()
}

/// The Poincare pairing `g[u][v] = integral of T_u T_v` together with its
/// exact inverse. Rows and columns are in flat basis order.
pub struct PairingTensor {
    g: Matrix,
    ginv: Matrix,
}

impl PairingTensor {
    pub fn g(&self, u: (usize, usize), v: (usize, usize)) -> &Rational {
        &self.g[flat_index(u.0, u.1)][flat_index(v.0, v.1)]
    }

    pub fn ginv(&self, u: (usize, usize), v: (usize, usize)) -> &Rational {
        &self.ginv[flat_index(u.0, u.1)][flat_index(v.0, v.1)]
    }

    pub fn g_flat(&self, u: usize, v: usize) -> &Rational {
        &self.g[u][v]
    }

    pub fn ginv_flat(&self, u: usize, v: usize) -> &Rational {
        &self.ginv[u][v]
    }

    /// Raise an index: contract a coefficient vector (flat basis order)
    /// with the inverse pairing, producing the class `sum_e,f x_e g^{ef} T_f`.
    pub fn raise(&self, covector: &[Rational; BASIS_DIM]) -> CohClass {
        let mut out = CohClass::zero();
        for (e, x) in covector.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for f in 0..BASIS_DIM {
                let w = &self.ginv[e][f];
                if w.is_zero() {
                    continue;
                }
                let (i, j) = basis_pair(f);
                out.coeff[i][j] += &(x * w);
            }
        }
        out
    }
}

impl Serialize for PairingTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PairingTensor", 2)?;
        st.serialize_field("g", &matrix_to_strings(&self.g))?;
        st.serialize_field("ginv", &matrix_to_strings(&self.ginv))?;
        st.end()
    }
}

/// Builds the pairing and its inverse. Fails when the pairing is singular,
/// which would mean the ring kernel itself is broken.
pub fn pairing_tensor() -> Result<PairingTensor, Error> {
    let basis: Vec<CohClass> = basis_pairs().map(|(i, j)| CohClass::basis(i, j)).collect();
    let mut g = zero_matrix();
    for u in 0..BASIS_DIM {
        for v in 0..BASIS_DIM {
            g[u][v] = basis[u].mul(&basis[v]).integrate();
        }
    }
    let ginv = invert(&g).ok_or(Error::SingularPairing)?;
    Ok(PairingTensor { g, ginv })
}

/// Signed grid lookup: `T_ij` when `(i, j)` lies in the grid, zero otherwise.
fn grid_term(i: i64, j: i64) -> CohClass {
    if (0..A_DEG as i64).contains(&i) && (0..H_DEG as i64).contains(&j) {
        CohClass::basis(i as usize, j as usize)
    } else {
        CohClass::zero()
    }
}

/// The dual basis in closed form,
/// `T^ij = T_(3-i)(2-j) - T_(4-i)(1-j) + T_(5-i)(-j)`,
/// with out-of-grid terms read as zero. Returned in flat order, so that
/// `integrate(T_uv * dual[flat(u,v)]) = 1` and all cross pairings vanish.
pub fn dual_basis() -> Vec<CohClass> {
    basis_pairs()
        .map(|(i, j)| {
            let (i, j) = (i as i64, j as i64);
            grid_term(3 - i, 2 - j)
                .sub(&grid_term(4 - i, 1 - j))
                .add(&grid_term(5 - i, -j))
        })
        .collect()
}

/// The diagonal class of `E x E` as a 12x12 tensor on `T_ij (x) T_kl`.
pub struct DiagonalTensor {
    delta: Matrix,
}

impl DiagonalTensor {
    pub fn entry(&self, u: (usize, usize), v: (usize, usize)) -> &Rational {
        &self.delta[flat_index(u.0, u.1)][flat_index(v.0, v.1)]
    }

    pub fn entry_flat(&self, u: usize, v: usize) -> &Rational {
        &self.delta[u][v]
    }
}

impl Serialize for DiagonalTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DiagonalTensor", 1)?;
        st.serialize_field("delta", &matrix_to_strings(&self.delta))?;
        st.end()
    }
}

/// The diagonal class in closed form:
///
/// ```text
/// sum_{i<=3, j<=2} T_ij (x) T_(3-i)(2-j)
///   - sum_{1<=i<=3, j<=1} T_ij (x) T_(4-i)(1-j)
///   + T_20 (x) T_30 + T_30 (x) T_20
/// ```
///
/// The tensor must coincide entrywise with the inverse pairing; any mismatch
/// is reported as a hard error.
pub fn diagonal(pairing: &PairingTensor) -> Result<DiagonalTensor, Error> {
    let mut delta = zero_matrix();
    for i in 0..=3usize {
        for j in 0..=2usize {
            delta[flat_index(i, j)][flat_index(3 - i, 2 - j)] += &Rational::one();
        }
    }
    for i in 1..=3usize {
        for j in 0..=1usize {
            delta[flat_index(i, j)][flat_index(4 - i, 1 - j)] -= &Rational::one();
        }
    }
    delta[flat_index(2, 0)][flat_index(3, 0)] += &Rational::one();
    delta[flat_index(3, 0)][flat_index(2, 0)] += &Rational::one();

    for (u, row) in delta.iter().enumerate() {
        for (v, entry) in row.iter().enumerate() {
            if entry != pairing.ginv_flat(u, v) {
                let (i0, j0) = basis_pair(u);
                let (i1, j1) = basis_pair(v);
                return Err(Error::DiagonalMismatch { i0, j0, i1, j1 });
            }
        }
    }
    Ok(DiagonalTensor { delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent integration oracle. The universal plane is the incidence
    /// divisor of bidegree (1,1) in the product of projective 3-space with
    /// its dual, so for restricted classes
    ///
    ///   integral_E a^p H^q = [a^3 H^3] (a^p H^q (a + H))   in Q[a,H]/(a^4, H^4),
    ///
    /// which is 1 exactly for (p, q) = (3, 2) or (2, 3) and 0 otherwise.
    /// No rewriting involved, so this is independent of `reduce`.
    fn integrate_oracle(p: u32, q: u32) -> Rational {
        if (p, q) == (3, 2) || (p, q) == (2, 3) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn basis_class(i: usize, j: usize) -> CohClass {
        CohClass::basis(i, j)
    }

    #[test]
    fn point_class_normal_form() {
        // H^3 = T_12 - T_21 + T_30
        let p = CohClass::point_class();
        assert_eq!(p.coeff(1, 2), &Rational::one());
        assert_eq!(p.coeff(2, 1), &Rational::from_int(-1));
        assert_eq!(p.coeff(3, 0), &Rational::one());
        assert_eq!(p.iter_nonzero().count(), 3);
    }

    #[test]
    fn nilpotence() {
        assert!(reduce(&[(4, 0, Rational::one())]).is_zero());
        assert!(reduce(&[(0, 4, Rational::one())]).is_zero());
        assert!(reduce(&[(0, 5, Rational::one())]).is_zero());
    }

    #[test]
    fn mul_takes_h_cubed_down() {
        let h = basis_class(0, 1);
        let h2 = basis_class(0, 2);
        assert_eq!(h.mul(&h2), CohClass::point_class());
        let x = basis_class(2, 2);
        assert_eq!(CohClass::unit().mul(&x), x);
    }

    #[test]
    fn evaluation_orders_agree_on_a3_h3() {
        let a3 = basis_class(3, 0);
        let lhs = a3.mul(&CohClass::point_class());
        let rhs = reduce(&[(3, 3, Rational::one())]);
        assert_eq!(lhs, rhs);
        assert!(lhs.is_zero());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(basis_class(3, 2).integrate(), Rational::one());
        assert_eq!(basis_class(2, 2).integrate(), Rational::zero());
        assert_eq!(
            reduce(&[(0, 5, Rational::one())]).integrate(),
            Rational::zero()
        );
    }

    #[test]
    fn integrate_matches_incidence_oracle_on_all_small_monomials() {
        for p in 0..8u32 {
            for q in 0..8u32 {
                let got = reduce(&[(p, q, Rational::one())]).integrate();
                assert_eq!(got, integrate_oracle(p, q), "monomial a^{p} H^{q}");
            }
        }
    }

    #[test]
    fn pairing_matches_oracle_and_is_symmetric() {
        let t = pairing_tensor().unwrap();
        for (i, j) in basis_pairs() {
            for (k, l) in basis_pairs() {
                let expected = integrate_oracle((i + k) as u32, (j + l) as u32);
                assert_eq!(t.g((i, j), (k, l)), &expected);
                assert_eq!(t.g((i, j), (k, l)), t.g((k, l), (i, j)));
                if (i + j) + (k + l) != 5 {
                    assert!(t.g((i, j), (k, l)).is_zero());
                }
            }
        }
        assert_eq!(t.g((0, 1), (3, 1)), &Rational::one());
        assert!(t.g((0, 0), (0, 0)).is_zero());
    }

    #[test]
    fn inverse_pairing_is_exact() {
        let t = pairing_tensor().unwrap();
        for u in 0..BASIS_DIM {
            for v in 0..BASIS_DIM {
                let dot: Rational = (0..BASIS_DIM)
                    .map(|e| t.ginv_flat(u, e) * t.g_flat(e, v))
                    .sum();
                let expected = if u == v {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(dot, expected);
            }
        }
    }

    #[test]
    fn dual_basis_closed_form_values() {
        let duals = dual_basis();
        assert_eq!(duals[flat_index(0, 0)], basis_class(3, 2));
        let t30 = &duals[flat_index(3, 0)];
        let expected = basis_class(0, 2)
            .sub(&basis_class(1, 1))
            .add(&basis_class(2, 0));
        assert_eq!(t30, &expected);
    }

    #[test]
    fn dual_basis_is_dual() {
        let duals = dual_basis();
        for (u, (i, j)) in basis_pairs().enumerate() {
            for (v, _) in basis_pairs().enumerate() {
                let pairing = basis_class(i, j).mul(&duals[v]).integrate();
                let expected = if u == v {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(pairing, expected, "T_{i}{j} against dual #{v}");
            }
        }
    }

    #[test]
    fn dual_basis_rows_equal_inverse_pairing_rows() {
        let t = pairing_tensor().unwrap();
        for (u, dual) in dual_basis().iter().enumerate() {
            for (v, (i, j)) in basis_pairs().enumerate() {
                assert_eq!(dual.coeff(i, j), t.ginv_flat(u, v));
            }
        }
    }

    #[test]
    fn diagonal_matches_inverse_pairing() {
        let t = pairing_tensor().unwrap();
        let d = diagonal(&t).unwrap();
        assert_eq!(d.entry((0, 0), (3, 2)), &Rational::one());
        // the corner corrections on top of the two alternating sums
        assert_eq!(d.entry((2, 0), (3, 0)), &Rational::one());
        assert_eq!(d.entry((3, 0), (2, 0)), &Rational::one());
        assert_eq!(d.entry((2, 0), (2, 1)), &Rational::from_int(-1));
    }

    #[test]
    fn classes_serialize_as_string_grids() {
        let mut class = CohClass::point_class();
        class.add_scaled_assign(&CohClass::unit(), &Rational::ratio(1, 2));
        let json = serde_json::to_value(&class).unwrap();
        assert_eq!(json["coeff"][0][0], "1/2");
        assert_eq!(json["coeff"][1][2], "1");
        assert_eq!(json["coeff"][2][1], "-1");
        assert_eq!(json["coeff"][0][1], "0");
    }

    #[test]
    fn diagonal_convolution_is_identity() {
        // contracting one tensor slot with the pairing must reproduce each
        // basis class: sum_{u,v} delta[u][v] g(T_v, x) T_u = x
        let t = pairing_tensor().unwrap();
        let d = diagonal(&t).unwrap();
        for (k, l) in basis_pairs() {
            let x = basis_class(k, l);
            let mut out = CohClass::zero();
            for (u, (i, j)) in basis_pairs().enumerate() {
                for (v, (p, q)) in basis_pairs().enumerate() {
                    let w = d.entry_flat(u, v);
                    if w.is_zero() {
                        continue;
                    }
                    let paired = basis_class(p, q).mul(&x).integrate();
                    if paired.is_zero() {
                        continue;
                    }
                    out.add_scaled_assign(&basis_class(i, j), &(w * &paired));
                }
            }
            assert_eq!(out, x);
        }
    }

    #[test]
    fn classical_triple_derivative_block() {
        let h = basis_class(0, 1);
        let h2 = basis_class(0, 2);
        for (i, j) in basis_pairs() {
            let t = basis_class(i, j);
            let hh = h.mul(&h).mul(&t).integrate();
            let expected = if (i, j) == (3, 0) || (i, j) == (2, 1) {
                Rational::one()
            } else {
                Rational::zero()
            };
            assert_eq!(hh, expected, "H.H.T_{i}{j}");
            assert_eq!(hh, integrate_oracle(i as u32, j as u32 + 2));

            let hh2 = h.mul(&h2).mul(&t).integrate();
            let expected = if (i, j) == (2, 0) {
                Rational::one()
            } else {
                Rational::zero()
            };
            assert_eq!(hh2, expected, "H.H^2.T_{i}{j}");
            assert_eq!(hh2, integrate_oracle(i as u32, j as u32 + 3));

            let h2h2 = h2.mul(&h2).mul(&t).integrate();
            assert!(h2h2.is_zero(), "H^2.H^2.T_{i}{j}");
        }
    }

    fn monomial_strategy() -> impl Strategy<Value = (u32, u32, i64)> {
        (0u32..6, 0u32..6, -4i64..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rewriting_is_confluent(xs in prop::collection::vec(monomial_strategy(), 1..4),
                                  ys in prop::collection::vec(monomial_strategy(), 1..4)) {
            let lift = |ts: &[(u32, u32, i64)]| -> Vec<(u32, u32, Rational)> {
                ts.iter().map(|&(p, q, c)| (p, q, Rational::from_int(c))).collect()
            };
            let x = reduce(&lift(&xs));
            let y = reduce(&lift(&ys));
            // product of the raw monomial lists, reduced in one pass
            let mut raw = Vec::new();
            for &(p1, q1, c1) in &xs {
                for &(p2, q2, c2) in &ys {
                    raw.push((p1 + p2, q1 + q2, Rational::from_int(c1 * c2)));
                }
            }
            prop_assert_eq!(x.mul(&y), reduce(&raw));
        }

        #[test]
        fn products_integrate_like_the_oracle(p1 in 0u32..5, q1 in 0u32..5, p2 in 0u32..5, q2 in 0u32..5) {
            let x = reduce(&[(p1, q1, Rational::one())]);
            let y = reduce(&[(p2, q2, Rational::one())]);
            prop_assert_eq!(x.mul(&y).integrate(), integrate_oracle(p1 + p2, q1 + q2));
        }
    }
}
