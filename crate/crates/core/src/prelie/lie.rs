//! Ordinary Lie algebras, their representations, semidirect products and
//! O-operators.

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::{self, Vector};
use crate::tensor::{MultiMap, Space};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub space: Space,
    /// `g ⊗ g → g`
    pub bracket: MultiMap,
}

impl LieAlgebra {
    pub fn new(space: Space, bracket: MultiMap) -> Result<Self> {
        check_shape("bracket", &bracket, &[&space, &space], &space)?;
        Ok(LieAlgebra { space, bracket })
    }

    pub fn abelian(space: Space) -> Self {
        let bracket = MultiMap::zeros(vec![space.clone(), space.clone()], space.clone());
        LieAlgebra { space, bracket }
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn br(&self, x: &[crate::Rational], y: &[crate::Rational]) -> Vector {
        self.bracket.eval2(x, y)
    }

    /// Antisymmetry and the Jacobi identity on all basis pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut rep = ValidationReport::new();
        for i in 0..n {
            for j in i..n {
                let s = scalar::add(self.bracket.image(&[i, j]), self.bracket.image(&[j, i]));
                rep.check("antisymmetry", &[i, j], s);
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.space.basis(i), self.space.basis(j), self.space.basis(k));
                    let a = self.br(&x, &self.br(&y, &z));
                    let b = self.br(&y, &self.br(&z, &x));
                    let c = self.br(&z, &self.br(&x, &y));
                    rep.check("Jacobi", &[i, j, k], scalar::signed_sum(n, &[(1, &a), (1, &b), (1, &c)]));
                }
            }
        }
        rep.sorted()
    }

    /// Checks that a linear map `self → other` preserves brackets.
    pub fn validate_hom(&self, other: &LieAlgebra, f: &MultiMap) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = f.eval1(self.bracket.image(&[i, j]));
                let rhs = other.br(f.image(&[i]), f.image(&[j]));
                rep.check("Lie homomorphism", &[i, j], scalar::sub(&lhs, &rhs));
            }
        }
        rep
    }
}

/// A representation `ρ : g → gl(V)` stored as the bilinear map `g ⊗ V → V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRep {
    pub space: Space,
    pub rho: MultiMap,
}

impl LieRep {
    pub fn new(g: &LieAlgebra, space: Space, rho: MultiMap) -> Result<Self> {
        check_shape("rho", &rho, &[&g.space, &space], &space)?;
        Ok(LieRep { space, rho })
    }

    pub fn zero(g: &LieAlgebra, space: Space) -> Self {
        let rho = MultiMap::zeros(vec![g.space.clone(), space.clone()], space.clone());
        LieRep { space, rho }
    }

    /// Adjoint representation.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        LieRep {
            space: g.space.clone(),
            rho: g.bracket.clone(),
        }
    }

    pub fn act(&self, x: &[crate::Rational], v: &[crate::Rational]) -> Vector {
        self.rho.eval2(x, v)
    }

    /// `ρ([x,y]) = [ρ(x), ρ(y)]` on all basis elements.
    pub fn validate(&self, g: &LieAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..self.space.dim {
                    let (x, y, v) = (g.space.basis(i), g.space.basis(j), self.space.basis(k));
                    let lhs = self.act(&g.br(&x, &y), &v);
                    let xy = self.act(&x, &self.act(&y, &v));
                    let yx = self.act(&y, &self.act(&x, &v));
                    rep.check("representation", &[i, j, k], scalar::sub(&lhs, &scalar::sub(&xy, &yx)));
                }
            }
        }
        rep
    }

    /// Dual representation on `V*`: `ρ*(x) = −ρ(x)ᵀ`.
    pub fn dual(&self, g: &LieAlgebra) -> LieRep {
        let vd = self.space.dual();
        let n = self.space.dim;
        let rho = MultiMap::from_basis_images(vec![g.space.clone(), vd.clone()], vd.clone(), |idx| {
            let (x, a) = (idx[0], idx[1]);
            // ⟨ρ*(x) ξ_a, e_b⟩ = −⟨ξ_a, ρ(x) e_b⟩
            (0..n).map(|b| -self.rho.get(&[x, b], a).clone()).collect()
        });
        LieRep { space: vd, rho }
    }
}

/// Semidirect product `g ⋉_ρ V` with bracket `[x+u, y+v] = [x,y] + ρ(x)v − ρ(y)u`.
pub fn semidirect(g: &LieAlgebra, rep: &LieRep) -> LieAlgebra {
    let (n, m) = (g.dim(), rep.space.dim);
    let space = g.space.direct_sum(&rep.space);
    let split = |v: &[crate::Rational]| (v[..n].to_vec(), v[n..].to_vec());
    let bracket = MultiMap::from_basis_images(vec![space.clone(), space.clone()], space.clone(), |idx| {
        let (x, u) = split(&space.basis(idx[0]));
        let (y, v) = split(&space.basis(idx[1]));
        let top = g.br(&x, &y);
        let bottom = scalar::sub(&rep.act(&x, &v), &rep.act(&y, &u));
        debug_assert_eq!(bottom.len(), m);
        scalar::concat(&top, &bottom)
    });
    LieAlgebra { space, bracket }
}

/// Checks `[T u, T v] = T(ρ(T u) v − ρ(T v) u)` for a linear map `T : V → g`.
pub fn validate_o_operator(g: &LieAlgebra, rep: &LieRep, t: &MultiMap) -> ValidationReport {
    let mut out = ValidationReport::new();
    for i in 0..rep.space.dim {
        for j in 0..rep.space.dim {
            let (tu, tv) = (t.image(&[i]), t.image(&[j]));
            let lhs = g.br(tu, tv);
            let inner = scalar::sub(&rep.act(tu, &rep.space.basis(j)), &rep.act(tv, &rep.space.basis(i)));
            out.check("O-operator", &[i, j], scalar::sub(&lhs, &t.eval1(&inner)));
        }
    }
    out
}

pub(crate) fn check_shape(name: &str, m: &MultiMap, inputs: &[&Space], output: &Space) -> Result<()> {
    if m.arity() != inputs.len() {
        return Err(Error::ArityMismatch {
            context: name.to_string(),
            expected: inputs.len(),
            found: m.arity(),
        });
    }
    for (slot, (a, b)) in m.inputs().iter().zip(inputs).enumerate() {
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch {
                context: name.to_string(),
                slot,
                expected: b.dim,
                found: a.dim,
            });
        }
    }
    if m.output().dim != output.dim {
        return Err(Error::DimensionMismatch {
            context: format!("{name} (output)"),
            slot: inputs.len(),
            expected: output.dim,
            found: m.output().dim,
        });
    }
    Ok(())
}
