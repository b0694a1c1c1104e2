//! Crossed modules of pre-Lie algebras and of Lie algebras, and the
//! bijection between pre-Lie crossed modules and strict pre-Lie 2-algebras.

use crate::error::{Error, Result};
use crate::lie2::Lie2Algebra;
use crate::prelie::lie::check_shape;
use crate::prelie::{LieAlgebra, LieRep, PreLieAlgebra, PreLieRep};
use crate::prelie2::PreLie2Algebra;
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap, Space};

/// `((A₀,·₀), (A₁,·₁), d, (ρ, μ))`, with `μ(u)m = mu(u, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieCrossedModule {
    pub a0: PreLieAlgebra,
    pub a1: PreLieAlgebra,
    pub d: MultiMap,
    pub rho: MultiMap,
    pub mu: MultiMap,
}

impl PreLieCrossedModule {
    pub fn new(a0: PreLieAlgebra, a1: PreLieAlgebra, d: MultiMap, rho: MultiMap, mu: MultiMap) -> Result<Self> {
        check_shape("d", &d, &[&a1.space], &a0.space)?;
        check_shape("rho", &rho, &[&a0.space, &a1.space], &a1.space)?;
        check_shape("mu", &mu, &[&a0.space, &a1.space], &a1.space)?;
        Ok(PreLieCrossedModule { a0, a1, d, rho, mu })
    }

    pub fn zero(a0: Space, a1: Space) -> Self {
        let z = MultiMap::zeros(vec![a0.clone(), a1.clone()], a1.clone());
        PreLieCrossedModule {
            d: MultiMap::zeros(vec![a1.clone()], a0.clone()),
            rho: z.clone(),
            mu: z,
            a0: PreLieAlgebra::abelian(a0),
            a1: PreLieAlgebra::abelian(a1),
        }
    }

    pub fn action(&self) -> PreLieRep {
        PreLieRep {
            space: self.a1.space.clone(),
            rho: self.rho.clone(),
            mu: self.mu.clone(),
        }
    }

    fn r(&self, u: &[Rational], m: &[Rational]) -> Vector {
        self.rho.eval2(u, m)
    }

    fn m(&self, u: &[Rational], m: &[Rational]) -> Vector {
        self.mu.eval2(u, m)
    }

    fn dm(&self, m: &[Rational]) -> Vector {
        self.d.eval1(m)
    }

    /// All axioms, plus the two derived identities reported under their own tags.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.a0.validate().prefixed("A0");
        rep.extend(self.a1.validate().prefixed("A1"));
        rep.extend(self.action().validate(&self.a0).prefixed("action"));
        let (n0, n1) = (self.a0.dim(), self.a1.dim());
        let e0 = |i| self.a0.space.basis(i);
        let e1 = |i| self.a1.space.basis(i);
        for idx in multi_indices(&[n1, n1]) {
            let (m, n) = (e1(idx[0]), e1(idx[1]));
            let lhs = self.dm(&self.a1.m(&m, &n));
            rep.check("d homomorphism", &idx, scalar::sub(&lhs, &self.a0.m(&self.dm(&m), &self.dm(&n))));
            let prod = self.a1.m(&m, &n);
            rep.check("(C2) rho", &idx, scalar::sub(&self.r(&self.dm(&m), &n), &prod));
            rep.check("(C2) mu", &idx, scalar::sub(&self.m(&self.dm(&n), &m), &prod));
        }
        for idx in multi_indices(&[n0, n1]) {
            let (u, m) = (e0(idx[0]), e1(idx[1]));
            let c1r = scalar::sub(&self.dm(&self.r(&u, &m)), &self.a0.m(&u, &self.dm(&m)));
            rep.check("(C1) rho", &idx, c1r);
            let c1m = scalar::sub(&self.dm(&self.m(&u, &m)), &self.a0.m(&self.dm(&m), &u));
            rep.check("(C1) mu", &idx, c1m);
        }
        for idx in multi_indices(&[n0, n1, n1]) {
            let (u, m, n) = (e0(idx[0]), e1(idx[1]), e1(idx[2]));
            let p = |x: &[Rational], y: &[Rational]| self.a1.m(x, y);
            let lhs = self.r(&u, &p(&m, &n));
            let rhs = scalar::signed_sum(
                n1,
                &[(1, &p(&self.r(&u, &m), &n)), (1, &p(&m, &self.r(&u, &n))), (-1, &p(&self.m(&u, &m), &n))],
            );
            rep.check("derived identity (rho on products)", &idx, scalar::sub(&lhs, &rhs));
            let lhs = self.m(&u, &p(&m, &n));
            let rhs = scalar::signed_sum(
                n1,
                &[(1, &self.m(&u, &p(&n, &m))), (1, &p(&m, &self.m(&u, &n))), (-1, &p(&n, &self.m(&u, &m)))],
            );
            rep.check("derived identity (mu on products)", &idx, scalar::sub(&lhs, &rhs));
        }
        rep.sorted()
    }
}

/// The strict pre-Lie 2-algebra with `u·m = ρ(u)m`, `m·u = μ(u)m`, `l₃ = 0`.
pub fn to_strict(cm: &PreLieCrossedModule) -> Result<PreLie2Algebra> {
    let r = cm.validate();
    if !r.ok() {
        return Err(Error::invalid("crossed module", r));
    }
    let (a0, a1) = (cm.a0.space.clone(), cm.a1.space.clone());
    let mut s = PreLie2Algebra::zero(a0, a1);
    s.d = cm.d.clone();
    s.mul00 = cm.a0.mul.clone();
    s.mul01 = cm.rho.clone();
    s.mul10 = cm.mu.permute_inputs(&[1, 0]);
    Ok(s)
}

/// The crossed module with `m·₁n = (dm)·n`, `ρ(u)m = u·m`, `μ(u)m = m·u`.
pub fn from_strict(a: &PreLie2Algebra) -> Result<PreLieCrossedModule> {
    if !a.is_strict() {
        return Err(Error::NotStrict("l3 is nonzero".into()));
    }
    let r = a.validate();
    if !r.ok() {
        return Err(Error::invalid("pre-Lie 2-algebra", r));
    }
    let mul1 = MultiMap::from_basis_images(vec![a.a1.clone(), a.a1.clone()], a.a1.clone(), |i| {
        a.mul01.eval2(a.d.image(&[i[0]]), &a.a1.basis(i[1]))
    });
    Ok(PreLieCrossedModule {
        a0: a.degree0(),
        a1: PreLieAlgebra {
            space: a.a1.clone(),
            mul: mul1,
        },
        d: a.d.clone(),
        rho: a.mul01.clone(),
        mu: a.mul10.permute_inputs(&[1, 0]),
    })
}

/// `(u+m)·(v+n) = u·₀v + ρ(u)n + μ(v)m + m·₁n` on `A₀ ⊕ A₁`.
pub fn direct_sum_prelie(cm: &PreLieCrossedModule) -> Result<PreLieAlgebra> {
    let r = cm.validate();
    if !r.ok() {
        return Err(Error::invalid("crossed module", r));
    }
    let n0 = cm.a0.dim();
    let space = cm.a0.space.direct_sum(&cm.a1.space);
    let split = |x: &[Rational]| (x[..n0].to_vec(), x[n0..].to_vec());
    let mul = MultiMap::from_basis_images(vec![space.clone(), space.clone()], space.clone(), |i| {
        let (u, m) = split(&space.basis(i[0]));
        let (v, n) = split(&space.basis(i[1]));
        let mut low = cm.r(&u, &n);
        scalar::add_assign(&mut low, &cm.m(&v, &m));
        scalar::add_assign(&mut low, &cm.a1.m(&m, &n));
        scalar::concat(&cm.a0.m(&u, &v), &low)
    });
    Ok(PreLieAlgebra { space, mul })
}

/// The crossed module of pre-Lie algebras `(A, B, inclusion, (L, R))` for an
/// ideal `B` spanned by the listed basis vectors of `A`.
pub fn ideal_crossed_module(a: &PreLieAlgebra, ideal: &[usize], labels: (&str, &str)) -> Result<PreLieCrossedModule> {
    let n = a.dim();
    let k = ideal.len();
    let a0 = a.space.clone().relabel(labels.0);
    let b = Space::new(labels.1, k);
    let restrict = |v: &[Rational]| -> Option<Vector> {
        let outside = (0..n).any(|j| !ideal.contains(&j) && v[j] != Rational::default());
        (!outside).then(|| ideal.iter().map(|&j| v[j].clone()).collect())
    };
    let embed = |i: usize| a.space.basis(ideal[i]);
    let mut bad = ValidationReport::new();
    let mut act = |x: Vector, tag: &str, idx: &[usize]| match restrict(&x) {
        Some(v) => v,
        None => {
            bad.fail(tag, idx);
            scalar::zero_vec(k)
        }
    };
    let mut rho = MultiMap::zeros(vec![a0.clone(), b.clone()], b.clone());
    let mut mu = rho.clone();
    let mut mul1 = MultiMap::zeros(vec![b.clone(), b.clone()], b.clone());
    for u in 0..n {
        for m in 0..k {
            let r = act(a.m(&a.space.basis(u), &embed(m)), "ideal (left)", &[u, m]);
            rho.image_mut(&[u, m]).clone_from_slice(&r);
            let r = act(a.m(&embed(m), &a.space.basis(u)), "ideal (right)", &[m, u]);
            mu.image_mut(&[u, m]).clone_from_slice(&r);
        }
    }
    for m in 0..k {
        for p in 0..k {
            let r = act(a.m(&embed(m), &embed(p)), "ideal (left)", &[m, p]);
            mul1.image_mut(&[m, p]).clone_from_slice(&r);
        }
    }
    if !bad.ok() {
        return Err(Error::invalid("ideal", bad));
    }
    let d = MultiMap::from_basis_images(vec![b.clone()], a0.clone(), |i| embed(i[0]));
    Ok(PreLieCrossedModule {
        a0: PreLieAlgebra {
            space: a0.clone(),
            mul: a.mul.clone().relabeled(vec![a0.clone(), a0.clone()], a0.clone()),
        },
        a1: PreLieAlgebra { space: b, mul: mul1 },
        d,
        rho,
        mu,
    })
}

/// `(h₀, h₁, dt, φ)` with `φ : h₀ ⊗ h₁ → h₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCrossedModule {
    pub h0: LieAlgebra,
    pub h1: LieAlgebra,
    pub dt: MultiMap,
    pub phi: MultiMap,
}

impl LieCrossedModule {
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.h0.validate().prefixed("h0");
        rep.extend(self.h1.validate().prefixed("h1"));
        rep.extend(self.h1.validate_hom(&self.h0, &self.dt).prefixed("dt"));
        let action = LieRep {
            space: self.h1.space.clone(),
            rho: self.phi.clone(),
        };
        rep.extend(action.validate(&self.h0).prefixed("action"));
        let (n0, n1) = (self.h0.dim(), self.h1.dim());
        let phi = |x: &[Rational], a: &[Rational]| self.phi.eval2(x, a);
        for idx in multi_indices(&[n0, n1, n1]) {
            let (x, a, b) = (self.h0.space.basis(idx[0]), self.h1.space.basis(idx[1]), self.h1.space.basis(idx[2]));
            let lhs = phi(&x, &self.h1.br(&a, &b));
            let rhs = scalar::add(&self.h1.br(&phi(&x, &a), &b), &self.h1.br(&a, &phi(&x, &b)));
            rep.check("derivation", &idx, scalar::sub(&lhs, &rhs));
        }
        for idx in multi_indices(&[n0, n1]) {
            let (x, a) = (self.h0.space.basis(idx[0]), self.h1.space.basis(idx[1]));
            let lhs = self.dt.eval1(&phi(&x, &a));
            rep.check("equivariance", &idx, scalar::sub(&lhs, &self.h0.br(&x, &self.dt.eval1(&a))));
        }
        for idx in multi_indices(&[n1, n1]) {
            let (a, b) = (self.h1.space.basis(idx[0]), self.h1.space.basis(idx[1]));
            let lhs = phi(&self.dt.eval1(&a), &b);
            rep.check("Peiffer", &idx, scalar::sub(&lhs, &self.h1.br(&a, &b)));
        }
        rep.sorted()
    }

    /// The strict Lie 2-algebra `(h₀, h₁, dt, [·,·], φ, 0)`.
    pub fn to_strict_lie2(&self) -> Lie2Algebra {
        let mut g = Lie2Algebra::zero(self.h0.space.clone(), self.h1.space.clone());
        g.d = self.dt.clone();
        g.l2_00 = self.h0.bracket.clone();
        g.l2_01 = self.phi.clone();
        g
    }
}

/// `(g(A₀), g(A₁), d, ρ − μ)`.
pub fn sub_adjacent_crossed(cm: &PreLieCrossedModule) -> Result<LieCrossedModule> {
    let r = cm.validate();
    if !r.ok() {
        return Err(Error::invalid("crossed module", r));
    }
    Ok(LieCrossedModule {
        h0: cm.a0.commutator_algebra(),
        h1: cm.a1.commutator_algebra(),
        dt: cm.d.clone(),
        phi: cm.rho.sub(&cm.mu),
    })
}
