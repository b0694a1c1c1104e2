//! Two-term complexes `V₁ → V₀`, chain maps, and the strict Lie 2-algebra
//! `End(𝒱)`.
//!
//! Degree-0 endomorphisms are pairs `(A₀, A₁)` with `A₀∘d = d∘A₁`. Their basis
//! is computed as the kernel of that linear condition, so the coordinates of
//! `End⁰` depend only on `d` and are reproducible.

use crate::error::Result;
use crate::lie2::Lie2Algebra;
use crate::linalg::{self, Matrix};
use crate::scalar::{Rational, Vector};
use crate::tensor::{MultiMap, Space};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub v0: Space,
    pub v1: Space,
    /// `V₁ → V₀`
    pub d: MultiMap,
}

impl TwoTermComplex {
    pub fn new(v0: Space, v1: Space, d: MultiMap) -> Result<Self> {
        crate::prelie::lie::check_shape("d", &d, &[&v1], &v0)?;
        Ok(TwoTermComplex { v0, v1, d })
    }

    pub fn zero_differential(v0: Space, v1: Space) -> Self {
        let d = MultiMap::zeros(vec![v1.clone()], v0.clone());
        TwoTermComplex { v0, v1, d }
    }

    /// `d` as an `n₀ × n₁` matrix.
    pub fn d_matrix(&self) -> Matrix {
        self.d.to_rows()
    }

    /// Dual complex `V₀* → V₁*` with differential `dᵀ`.
    pub fn dual(&self) -> TwoTermComplex {
        TwoTermComplex {
            v0: self.v1.dual(),
            v1: self.v0.dual(),
            d: self.d.transpose(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub f0: MultiMap,
    pub f1: MultiMap,
}

/// Whether `f₀∘d = d'∘f₁`.
pub fn is_chain_map(f: &ChainMap, v: &TwoTermComplex, w: &TwoTermComplex) -> Result<bool> {
    crate::prelie::lie::check_shape("f0", &f.f0, &[&v.v0], &w.v0)?;
    crate::prelie::lie::check_shape("f1", &f.f1, &[&v.v1], &w.v1)?;
    let lhs = MultiMap::compose_linear(&f.f0, &v.d)?;
    let rhs = MultiMap::compose_linear(&w.d, &f.f1)?;
    Ok(lhs.coeffs() == rhs.coeffs())
}

/// A degree-0 endomorphism, as a pair of matrices in `rows[out][in]` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndPair {
    pub a0: Matrix,
    pub a1: Matrix,
}

/// `End(𝒱)` together with the data needed to read its coordinates back as
/// matrices.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub complex: TwoTermComplex,
    pub lie2: Lie2Algebra,
    /// Basis of `End⁰`, in nullspace order.
    pub basis0: Vec<EndPair>,
}

impl EndAlgebra {
    fn dims(&self) -> (usize, usize) {
        (self.complex.v0.dim, self.complex.v1.dim)
    }

    /// The pair with the given `End⁰` coordinates.
    pub fn pair(&self, coords: &[Rational]) -> EndPair {
        let (n0, n1) = self.dims();
        let mut a0 = linalg::mat_zero(n0, n0);
        let mut a1 = linalg::mat_zero(n1, n1);
        for (c, b) in coords.iter().zip(&self.basis0) {
            a0 = linalg::mat_add(&a0, &scale_mat(c, &b.a0));
            a1 = linalg::mat_add(&a1, &scale_mat(c, &b.a1));
        }
        EndPair { a0, a1 }
    }

    /// `End⁰` coordinates of a pair, or `None` when it does not commute with `d`.
    pub fn coords0(&self, p: &EndPair) -> Option<Vector> {
        let basis: Vec<Vector> = self.basis0.iter().map(flatten_pair).collect();
        linalg::coordinates(&basis, &flatten_pair(p))
    }

    /// `End¹ = Hom(V₀, V₁)` coordinates are the row-major entries of the matrix.
    pub fn coords1(&self, phi: &[Vector]) -> Vector {
        linalg::flatten(phi)
    }

    pub fn hom1(&self, coords: &[Rational]) -> Matrix {
        let (n0, n1) = self.dims();
        linalg::unflatten(coords, n1, n0)
    }
}

fn scale_mat(c: &Rational, m: &[Vector]) -> Matrix {
    m.iter().map(|r| crate::scalar::scale(c, r)).collect()
}

fn flatten_pair(p: &EndPair) -> Vector {
    let mut v = linalg::flatten(&p.a0);
    v.extend(linalg::flatten(&p.a1));
    v
}

fn commutator(a: &[Vector], b: &[Vector], n: usize) -> Matrix {
    linalg::mat_sub(&linalg::mat_mul(a, b, n), &linalg::mat_mul(b, a, n))
}

/// Builds the strict Lie 2-algebra `End(𝒱)`.
pub fn end_algebra(v: &TwoTermComplex) -> EndAlgebra {
    let (n0, n1) = (v.v0.dim, v.v1.dim);
    let d = v.d_matrix();
    let nvars = n0 * n0 + n1 * n1;
    let split = |x: &[Rational]| {
        (
            linalg::unflatten(&x[..n0 * n0], n0, n0),
            linalg::unflatten(&x[n0 * n0..], n1, n1),
        )
    };
    let kernel = linalg::solve_linear_family(nvars, |x| {
        let (a0, a1) = split(x);
        linalg::flatten(&linalg::mat_sub(&linalg::mat_mul(&a0, &d, n1), &linalg::mat_mul(&d, &a1, n1)))
    });
    let basis0: Vec<EndPair> = kernel
        .iter()
        .map(|k| {
            let (a0, a1) = split(k);
            EndPair { a0, a1 }
        })
        .collect();

    let g0 = Space::new(format!("End0({}->{})", v.v1.label, v.v0.label), basis0.len());
    let g1 = Space::new(format!("Hom({},{})", v.v0.label, v.v1.label), n0 * n1);
    let mut out = EndAlgebra {
        complex: v.clone(),
        lie2: Lie2Algebra::zero(g0.clone(), g1.clone()),
        basis0,
    };
    let coords0 = |e: &EndAlgebra, p: &EndPair| e.coords0(p).expect("End0 is closed under the operation");

    let dk = MultiMap::from_basis_images(vec![g1.clone()], g0.clone(), |i| {
        let phi = out.hom1(&g1.basis(i[0]));
        let p = EndPair {
            a0: linalg::mat_mul(&d, &phi, n0),
            a1: linalg::mat_mul(&phi, &d, n1),
        };
        coords0(&out, &p)
    });
    let l2_00 = MultiMap::from_basis_images(vec![g0.clone(), g0.clone()], g0.clone(), |i| {
        let (a, b) = (&out.basis0[i[0]], &out.basis0[i[1]]);
        let p = EndPair {
            a0: commutator(&a.a0, &b.a0, n0),
            a1: commutator(&a.a1, &b.a1, n1),
        };
        coords0(&out, &p)
    });
    let l2_01 = MultiMap::from_basis_images(vec![g0.clone(), g1.clone()], g1.clone(), |i| {
        let a = &out.basis0[i[0]];
        let phi = out.hom1(&g1.basis(i[1]));
        // [A, φ] = A₁∘φ − φ∘A₀
        let m = linalg::mat_sub(&linalg::mat_mul(&a.a1, &phi, n0), &linalg::mat_mul(&phi, &a.a0, n0));
        out.coords1(&m)
    });
    out.lie2.d = dk;
    out.lie2.l2_00 = l2_00;
    out.lie2.l2_01 = l2_01;
    out
}

/// Matrix of the operator `V_in → V_out` obtained by fixing the first slot
/// of a bilinear map `X ⊗ V_in → V_out` at `x`.
pub fn operator(m: &MultiMap, x: &[Rational]) -> Matrix {
    let vin = &m.inputs()[1];
    let cols: Vec<Vector> = (0..vin.dim).map(|j| m.eval2(x, &vin.basis(j))).collect();
    (0..m.output().dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// As [`operator`] for a trilinear map with the first two slots fixed.
pub fn operator2(m: &MultiMap, x: &[Rational], y: &[Rational]) -> Matrix {
    let vin = &m.inputs()[2];
    let cols: Vec<Vector> = (0..vin.dim).map(|j| m.eval3(x, y, &vin.basis(j))).collect();
    (0..m.output().dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}
