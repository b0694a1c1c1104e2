//! Pre-Lie algebras, their representations, cohomology and invariant forms.

pub mod cohomology;
pub mod forms;
pub mod lie;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{MultiMap, Space};

pub use cohomology::{coboundary, Cochain};
pub use forms::{cocycle_from_form, invariant_forms, skeletal_from_form, InvariantForm};
pub use lie::{LieAlgebra, LieRep};

use lie::check_shape;

/// A vector space with a product whose associator is symmetric in its first
/// two arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieAlgebra {
    pub space: Space,
    /// `A ⊗ A → A`
    pub mul: MultiMap,
}

impl PreLieAlgebra {
    pub fn new(space: Space, mul: MultiMap) -> Result<Self> {
        check_shape("mul", &mul, &[&space, &space], &space)?;
        Ok(PreLieAlgebra { space, mul })
    }

    pub fn abelian(space: Space) -> Self {
        let mul = MultiMap::zeros(vec![space.clone(), space.clone()], space.clone());
        PreLieAlgebra { space, mul }
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn m(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.mul.eval2(x, y)
    }

    /// `[x, y] = x·y − y·x`
    pub fn commutator(&self, x: &[Rational], y: &[Rational]) -> Vector {
        scalar::sub(&self.m(x, y), &self.m(y, x))
    }

    /// Associator `(x,y,z) = (x·y)·z − x·(y·z)`.
    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        scalar::sub(&self.m(&self.m(x, y), z), &self.m(x, &self.m(y, z)))
    }

    /// Reports every basis triple where `(x,y,z) ≠ (y,x,z)`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.space.basis(i), self.space.basis(j), self.space.basis(k));
                    let d = scalar::sub(&self.associator(&x, &y, &z), &self.associator(&y, &x, &z));
                    rep.check("pre-Lie", &[i, j, k], d);
                }
            }
        }
        rep
    }

    /// The sub-adjacent Lie algebra `g(A)`.
    pub fn sub_adjacent(&self) -> Result<LieAlgebra> {
        let r = self.validate();
        if !r.ok() {
            return Err(Error::invalid("pre-Lie algebra", r));
        }
        Ok(self.commutator_algebra())
    }

    /// Commutator bracket without validating the input first.
    pub fn commutator_algebra(&self) -> LieAlgebra {
        let bracket = MultiMap::from_basis_images(
            vec![self.space.clone(), self.space.clone()],
            self.space.clone(),
            |idx| scalar::sub(self.mul.image(&[idx[0], idx[1]]), self.mul.image(&[idx[1], idx[0]])),
        );
        LieAlgebra {
            space: self.space.clone(),
            bracket,
        }
    }

    /// Left and dual representations `(A; L, R)` and `(A*; L* − R*, −R*)`.
    pub fn standard_reps(&self) -> Result<StandardReps> {
        let r = self.validate();
        if !r.ok() {
            return Err(Error::invalid("pre-Lie algebra", r));
        }
        Ok(StandardReps {
            left: self.left_rep(),
            dual: self.dual_rep(),
        })
    }

    /// `(A; L, R)` with `L_x y = x·y`, `R_x y = y·x`.
    pub fn left_rep(&self) -> PreLieRep {
        let s = &self.space;
        PreLieRep {
            space: s.clone(),
            rho: self.mul.clone(),
            mu: self.mul.permute_inputs(&[1, 0]),
        }
    }

    /// `(A*; ad* = L* − R*, −R*)` with `⟨L*_x ξ, y⟩ = −⟨ξ, L_x y⟩` and likewise for `R*`.
    pub fn dual_rep(&self) -> PreLieRep {
        let n = self.dim();
        let sd = self.space.dual();
        // matrix entry ⟨ξ_a, L_x e_b⟩ = coefficient of e_a in x·e_b
        let lstar = |x: usize, a: usize| -> Vector { (0..n).map(|b| -self.mul.get(&[x, b], a).clone()).collect() };
        let rstar = |x: usize, a: usize| -> Vector { (0..n).map(|b| -self.mul.get(&[b, x], a).clone()).collect() };
        let rho = MultiMap::from_basis_images(vec![self.space.clone(), sd.clone()], sd.clone(), |idx| {
            scalar::sub(&lstar(idx[0], idx[1]), &rstar(idx[0], idx[1]))
        });
        let mu = MultiMap::from_basis_images(vec![self.space.clone(), sd.clone()], sd.clone(), |idx| {
            scalar::neg(&rstar(idx[0], idx[1]))
        });
        PreLieRep { space: sd, rho, mu }
    }

    /// `L : g(A) → gl(A)` as a Lie-algebra representation.
    pub fn left_lie_rep(&self) -> LieRep {
        LieRep {
            space: self.space.clone(),
            rho: self.mul.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardReps {
    pub left: PreLieRep,
    pub dual: PreLieRep,
}

/// A representation `(V; ρ, μ)` of a pre-Lie algebra; `ρ(x)v = rho(x, v)` and
/// `μ(x)v = mu(x, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieRep {
    pub space: Space,
    pub rho: MultiMap,
    pub mu: MultiMap,
}

impl PreLieRep {
    pub fn new(a: &PreLieAlgebra, space: Space, rho: MultiMap, mu: MultiMap) -> Result<Self> {
        check_shape("rho", &rho, &[&a.space, &space], &space)?;
        check_shape("mu", &mu, &[&a.space, &space], &space)?;
        Ok(PreLieRep { space, rho, mu })
    }

    pub fn zero(a: &PreLieAlgebra, space: Space) -> Self {
        let z = MultiMap::zeros(vec![a.space.clone(), space.clone()], space.clone());
        PreLieRep {
            space,
            rho: z.clone(),
            mu: z,
        }
    }

    pub fn rho_at(&self, x: &[Rational], v: &[Rational]) -> Vector {
        self.rho.eval2(x, v)
    }

    pub fn mu_at(&self, x: &[Rational], v: &[Rational]) -> Vector {
        self.mu.eval2(x, v)
    }

    /// `ρ` represents `g(A)`, and
    /// `ρ(x)μ(y)u − μ(y)ρ(x)u = μ(x·y)u − μ(y)μ(x)u`.
    pub fn validate(&self, a: &PreLieAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..self.space.dim {
                    let (x, y, u) = (a.space.basis(i), a.space.basis(j), self.space.basis(k));
                    let lhs = self.rho_at(&a.commutator(&x, &y), &u);
                    let xy = self.rho_at(&x, &self.rho_at(&y, &u));
                    let yx = self.rho_at(&y, &self.rho_at(&x, &u));
                    rep.check("rho representation", &[i, j, k], scalar::sub(&lhs, &scalar::sub(&xy, &yx)));

                    let l = scalar::sub(&self.rho_at(&x, &self.mu_at(&y, &u)), &self.mu_at(&y, &self.rho_at(&x, &u)));
                    let r = scalar::sub(&self.mu_at(&a.m(&x, &y), &u), &self.mu_at(&y, &self.mu_at(&x, &u)));
                    rep.check("representation condition", &[i, j, k], scalar::sub(&l, &r));
                }
            }
        }
        rep.sorted()
    }

    /// `A ⋉ V` with `(x,u)·(y,v) = (x·y, ρ(x)v + μ(y)u)`; pre-Lie exactly when
    /// `(V; ρ, μ)` is a representation.
    pub fn semidirect(&self, a: &PreLieAlgebra) -> PreLieAlgebra {
        let n = a.dim();
        let s = a.space.direct_sum(&self.space);
        let mul = MultiMap::from_basis_images(vec![s.clone(), s.clone()], s.clone(), |i| {
            let (x, y) = (i[0], i[1]);
            let mut out = s.zero_vec();
            match (x < n, y < n) {
                (true, true) => out[..n].clone_from_slice(a.mul.image(&[x, y])),
                (true, false) => out[n..].clone_from_slice(self.rho.image(&[x, y - n])),
                (false, true) => out[n..].clone_from_slice(self.mu.image(&[y, x - n])),
                (false, false) => {}
            }
            out
        });
        PreLieAlgebra { space: s, mul }
    }

    /// `ρ − μ`, a representation of the sub-adjacent Lie algebra.
    pub fn difference(&self) -> LieRep {
        LieRep {
            space: self.space.clone(),
            rho: self.rho.sub(&self.mu),
        }
    }
}
