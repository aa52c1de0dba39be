//! The small quantum product on the cohomology of the universal plane.
//!
//! Structure constants are three-point numbers: at degree zero they are
//! classical triple integrals in the ring, and at positive degree they reduce
//! through the divisor rule to entries of the planar table. The product of
//! two classes is the contraction of those numbers with the inverse pairing,
//! graded by a formal variable `q` tracking the curve degree and truncated at
//! a chosen maximum.
//!
//! Associativity of this product is equivalent to the WDVV identity on
//! three-point numbers; both forms are exposed for verification.

use crate::gw::{gw_invariant, MemoTable};
use crate::rational::Rational;
use crate::ring::{basis_pair, basis_pairs, pairing_tensor, CohClass, PairingTensor, BASIS_DIM};
use crate::Error;

/// The degree-zero three-point number: a triple integral in the ring.
pub fn phi3_classical(x: &CohClass, y: &CohClass, z: &CohClass) -> Rational {
    x.mul(y).mul(z).integrate()
}

/// The degree-`d >= 1` three-point number on basis classes `a^i H^j`.
///
/// A class with `j = 0` is pulled back from the base, and any such insertion
/// kills the invariant against a nonzero curve class. Otherwise the base
/// powers sum into the twist and the fiber powers become the insertion list.
pub fn phi3_quantum(
    u: (usize, usize),
    v: (usize, usize),
    w: (usize, usize),
    d: u32,
    memo: &MemoTable,
) -> Rational {
    assert!(d >= 1, "classical part is phi3_classical");
    if u.1 == 0 || v.1 == 0 || w.1 == 0 {
        return Rational::zero();
    }
    let theta = (u.0 + v.0 + w.0) as u32;
    let insertions = [u.1 as u32, v.1 as u32, w.1 as u32];
    gw_invariant(d, theta, &insertions, memo).expect("basis insertions are valid")
}

/// A cohomology class with coefficients in the truncated degree grading:
/// one ring class per power of `q`, up to a fixed bound.
#[derive(Clone, PartialEq, Debug)]
pub struct QuantumElement {
    components: Vec<CohClass>,
}

impl QuantumElement {
    pub fn zero(q_max: u32) -> Self {
        QuantumElement {
            components: vec![CohClass::zero(); q_max as usize + 1],
        }
    }

    /// A plain ring class, concentrated in degree zero.
    pub fn from_class(class: CohClass, q_max: u32) -> Self {
        let mut e = QuantumElement::zero(q_max);
        e.components[0] = class;
        e
    }

    pub fn q_max(&self) -> u32 {
        self.components.len() as u32 - 1
    }

    pub fn component(&self, q: u32) -> &CohClass {
        &self.components[q as usize]
    }

    pub fn add(&self, other: &QuantumElement) -> QuantumElement {
        assert_eq!(self.q_max(), other.q_max());
        QuantumElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &QuantumElement) -> QuantumElement {
        assert_eq!(self.q_max(), other.q_max());
        QuantumElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> QuantumElement {
        QuantumElement {
            components: self.components.iter().map(|x| x.scaled(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(CohClass::is_zero)
    }
}

/// Precomputed three-point numbers and basis products up to a degree bound.
pub struct QuantumAlgebra {
    q_max: u32,
    pairing: PairingTensor,
    /// `phi[delta][(u * 12 + v) * 12 + w]`
    phi: Vec<Vec<Rational>>,
    /// `products[delta][u * 12 + v] = T_u *_delta T_v`
    products: Vec<Vec<CohClass>>,
}

impl QuantumAlgebra {
    pub fn new(q_max: u32, memo: &MemoTable) -> Result<Self, Error> {
        let pairing = pairing_tensor()?;
        let basis: Vec<CohClass> = basis_pairs().map(|(i, j)| CohClass::basis(i, j)).collect();

        let mut phi = Vec::with_capacity(q_max as usize + 1);
        for delta in 0..=q_max {
            let mut layer = Vec::with_capacity(BASIS_DIM * BASIS_DIM * BASIS_DIM);
            for u in 0..BASIS_DIM {
                for v in 0..BASIS_DIM {
                    for w in 0..BASIS_DIM {
                        let value = if delta == 0 {
                            phi3_classical(&basis[u], &basis[v], &basis[w])
                        } else {
                            phi3_quantum(basis_pair(u), basis_pair(v), basis_pair(w), delta, memo)
                        };
                        layer.push(value);
                    }
                }
            }
            phi.push(layer);
        }

        let mut products = Vec::with_capacity(q_max as usize + 1);
        for layer in &phi {
            let mut table = Vec::with_capacity(BASIS_DIM * BASIS_DIM);
            for u in 0..BASIS_DIM {
                for v in 0..BASIS_DIM {
                    let mut covector: [Rational; BASIS_DIM] =
                        std::array::from_fn(|_| Rational::zero());
                    for (e, slot) in covector.iter_mut().enumerate() {
                        *slot = layer[(u * BASIS_DIM + v) * BASIS_DIM + e].clone();
                    }
                    table.push(pairing.raise(&covector));
                }
            }
            products.push(table);
        }

        Ok(QuantumAlgebra {
            q_max,
            pairing,
            phi,
            products,
        })
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }

    pub fn pairing(&self) -> &PairingTensor {
        &self.pairing
    }

    /// Three-point number at degree `delta`, flat basis indices.
    pub fn phi3(&self, delta: u32, u: usize, v: usize, w: usize) -> &Rational {
        &self.phi[delta as usize][(u * BASIS_DIM + v) * BASIS_DIM + w]
    }

    pub fn unit(&self) -> QuantumElement {
        QuantumElement::from_class(CohClass::unit(), self.q_max)
    }

    pub fn basis_element(&self, u: (usize, usize)) -> QuantumElement {
        QuantumElement::from_class(CohClass::basis(u.0, u.1), self.q_max)
    }

    /// `T_u * T_v` as a quantum element.
    pub fn basis_product(&self, u: (usize, usize), v: (usize, usize)) -> QuantumElement {
        let (uf, vf) = (
            crate::ring::flat_index(u.0, u.1),
            crate::ring::flat_index(v.0, v.1),
        );
        let mut out = QuantumElement::zero(self.q_max);
        for delta in 0..=self.q_max as usize {
            out.components[delta] = self.products[delta][uf * BASIS_DIM + vf].clone();
        }
        out
    }

    /// Bilinear product of two quantum elements, truncated at the bound.
    pub fn product(&self, x: &QuantumElement, y: &QuantumElement) -> QuantumElement {
        assert_eq!(x.q_max(), self.q_max);
        assert_eq!(y.q_max(), self.q_max);
        let mut out = QuantumElement::zero(self.q_max);
        for d1 in 0..=self.q_max {
            if x.components[d1 as usize].is_zero() {
                continue;
            }
            for d2 in 0..=self.q_max - d1 {
                if y.components[d2 as usize].is_zero() {
                    continue;
                }
                for delta in 0..=self.q_max - d1 - d2 {
                    let target = (d1 + d2 + delta) as usize;
                    for (i1, j1, c1) in x.components[d1 as usize].iter_nonzero() {
                        let uf = crate::ring::flat_index(i1, j1);
                        for (i2, j2, c2) in y.components[d2 as usize].iter_nonzero() {
                            let vf = crate::ring::flat_index(i2, j2);
                            let cell = &self.products[delta as usize][uf * BASIS_DIM + vf];
                            if cell.is_zero() {
                                continue;
                            }
                            let weight = c1 * c2;
                            out.components[target].add_scaled_assign(cell, &weight);
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether `(T_u * T_v) * T_w = T_u * (T_v * T_w)` at every degree up to
    /// the bound.
    pub fn associator_vanishes(
        &self,
        u: (usize, usize),
        v: (usize, usize),
        w: (usize, usize),
    ) -> bool {
        let left = self.product(&self.basis_product(u, v), &self.basis_element(w));
        let right = self.product(&self.basis_element(u), &self.basis_product(v, w));
        left == right
    }

    /// The pairing form of the WDVV identity on three-point numbers:
    ///
    /// ```text
    /// sum_{e,f} phi(i,j,e) g^{ef} phi(f,k,l) = sum_{e,f} phi(i,k,e) g^{ef} phi(f,j,l)
    /// ```
    ///
    /// compared degree by degree up to the bound.
    pub fn wdvv_pairing_check(
        &self,
        i: (usize, usize),
        j: (usize, usize),
        k: (usize, usize),
        l: (usize, usize),
    ) -> bool {
        let fi = crate::ring::flat_index(i.0, i.1);
        let fj = crate::ring::flat_index(j.0, j.1);
        let fk = crate::ring::flat_index(k.0, k.1);
        let fl = crate::ring::flat_index(l.0, l.1);
        for total in 0..=self.q_max {
            let lhs = self.paired_side(fi, fj, fk, fl, total);
            let rhs = self.paired_side(fi, fk, fj, fl, total);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// `sum_{d1+d2=total} sum_f coeff_f(T_a *_d1 T_b) phi_d2(f, c, e)`.
    fn paired_side(&self, a: usize, b: usize, c: usize, e: usize, total: u32) -> Rational {
        let mut acc = Rational::zero();
        for d1 in 0..=total {
            let d2 = (total - d1) as usize;
            let cell = &self.products[d1 as usize][a * BASIS_DIM + b];
            for (i, j, coeff) in cell.iter_nonzero() {
                let f = crate::ring::flat_index(i, j);
                let phi = &self.phi[d2][(f * BASIS_DIM + c) * BASIS_DIM + e];
                if phi.is_zero() {
                    continue;
                }
                acc += &(coeff * phi);
            }
        }
        acc
    }
}
