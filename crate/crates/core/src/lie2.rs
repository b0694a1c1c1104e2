//! Lie 2-algebras (2-term L∞-algebras), their homomorphisms and
//! representations, semidirect products, and the Lie 2-algebra of a pre-Lie
//! 2-algebra.

use crate::error::{Error, Result};
use crate::graded::{self, end_algebra, EndPair, TwoTermComplex};
use crate::linalg;
use crate::prelie::lie::{check_shape, LieAlgebra};
use crate::prelie2::{PreLie2Algebra, PreLie2Hom};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{MultiMap, Space};

/// `(g₀, g₁, 𝔡, 𝔩₂, 𝔩₃)`. Only `𝔩₂(x, m)` with `x ∈ g₀` is stored; the other
/// order is `𝔩₂(m, x) = −𝔩₂(x, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lie2Algebra {
    pub g0: Space,
    pub g1: Space,
    /// `g₁ → g₀`
    pub d: MultiMap,
    /// `g₀ ⊗ g₀ → g₀`
    pub l2_00: MultiMap,
    /// `g₀ ⊗ g₁ → g₁`
    pub l2_01: MultiMap,
    /// `g₀ ⊗ g₀ ⊗ g₀ → g₁`
    pub l3: MultiMap,
}

impl Lie2Algebra {
    pub fn new(g0: Space, g1: Space, d: MultiMap, l2_00: MultiMap, l2_01: MultiMap, l3: MultiMap) -> Result<Self> {
        check_shape("d", &d, &[&g1], &g0)?;
        check_shape("l2_00", &l2_00, &[&g0, &g0], &g0)?;
        check_shape("l2_01", &l2_01, &[&g0, &g1], &g1)?;
        check_shape("l3", &l3, &[&g0, &g0, &g0], &g1)?;
        Ok(Lie2Algebra { g0, g1, d, l2_00, l2_01, l3 })
    }

    pub fn zero(g0: Space, g1: Space) -> Self {
        Lie2Algebra {
            d: MultiMap::zeros(vec![g1.clone()], g0.clone()),
            l2_00: MultiMap::zeros(vec![g0.clone(), g0.clone()], g0.clone()),
            l2_01: MultiMap::zeros(vec![g0.clone(), g1.clone()], g1.clone()),
            l3: MultiMap::zeros(vec![g0.clone(), g0.clone(), g0.clone()], g1.clone()),
            g0,
            g1,
        }
    }

    /// A Lie algebra viewed as a Lie 2-algebra with `g₁ = 0`.
    pub fn from_lie(g: &LieAlgebra) -> Self {
        let mut out = Lie2Algebra::zero(g.space.clone(), Space::new("0", 0));
        out.l2_00 = g.bracket.clone();
        out
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero()
    }

    fn b00(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.l2_00.eval2(x, y)
    }

    fn b01(&self, x: &[Rational], m: &[Rational]) -> Vector {
        self.l2_01.eval2(x, m)
    }

    fn b10(&self, m: &[Rational], x: &[Rational]) -> Vector {
        scalar::neg(&self.l2_01.eval2(x, m))
    }

    fn dk(&self, m: &[Rational]) -> Vector {
        self.d.eval1(m)
    }

    /// Skewness of `𝔩₂`, `𝔩₃` and conditions (i)–(iv) on all basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let (n0, n1) = (self.g0.dim, self.g1.dim);
        let e0 = |i: usize| self.g0.basis(i);
        let e1 = |i: usize| self.g1.basis(i);
        if let Ok(Some((idx, diff))) = self.l2_00.skew_witness(0, 1) {
            rep.check("l2 skew", &idx, diff);
        }
        for (a, b) in [(0, 1), (1, 2)] {
            if let Ok(Some((idx, diff))) = self.l3.skew_witness(a, b) {
                rep.check("l3 skew", &idx, diff);
            }
        }
        for x in 0..n0 {
            for m in 0..n1 {
                let d = scalar::sub(&self.dk(&self.b01(&e0(x), &e1(m))), &self.b00(&e0(x), &self.dk(&e1(m))));
                rep.check("(i)", &[x, m], d);
            }
        }
        for m in 0..n1 {
            for n in 0..n1 {
                let d = scalar::sub(&self.b01(&self.dk(&e1(m)), &e1(n)), &self.b10(&e1(m), &self.dk(&e1(n))));
                rep.check("(i)", &[n0 + m, n0 + n], d);
            }
        }
        for x in 0..n0 {
            for y in 0..n0 {
                for z in 0..n0 {
                    let (a, b, c) = (e0(x), e0(y), e0(z));
                    let jac = scalar::signed_sum(
                        n0,
                        &[
                            (1, &self.b00(&a, &self.b00(&b, &c))),
                            (1, &self.b00(&b, &self.b00(&c, &a))),
                            (1, &self.b00(&c, &self.b00(&a, &b))),
                        ],
                    );
                    rep.check("(ii)", &[x, y, z], scalar::sub(&self.dk(&self.l3.eval3(&a, &b, &c)), &jac));
                }
            }
        }
        for x in 0..n0 {
            for y in 0..n0 {
                for m in 0..n1 {
                    let (a, b, k) = (e0(x), e0(y), e1(m));
                    let rhs = scalar::signed_sum(
                        n1,
                        &[
                            (1, &self.b01(&a, &self.b01(&b, &k))),
                            (1, &self.b01(&b, &self.b10(&k, &a))),
                            (1, &self.b10(&k, &self.b00(&a, &b))),
                        ],
                    );
                    let lhs = self.l3.eval3(&a, &b, &self.dk(&k));
                    rep.check("(iii)", &[x, y, n0 + m], scalar::sub(&lhs, &rhs));
                }
            }
        }
        if !self.is_strict() {
            for idx in crate::tensor::multi_indices(&[n0, n0, n0, n0]) {
                let xs: Vec<Vector> = idx.iter().map(|&i| e0(i)).collect();
                rep.check("(iv)", &idx, self.jacobiator_identity(&xs));
            }
        }
        rep.sorted()
    }

    /// Left side of the Jacobiator identity on four degree-0 arguments.
    fn jacobiator_identity(&self, x: &[Vector]) -> Vector {
        let mut acc = self.g1.zero_vec();
        for i in 0..4 {
            let rest: Vec<&Vector> = (0..4).filter(|&k| k != i).map(|k| &x[k]).collect();
            let t = self.b01(&x[i], &self.l3.eval3(rest[0], rest[1], rest[2]));
            if i % 2 == 0 {
                scalar::add_assign(&mut acc, &t);
            } else {
                scalar::sub_assign(&mut acc, &t);
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let rest: Vec<&Vector> = (0..4).filter(|&k| k != i && k != j).map(|k| &x[k]).collect();
                let t = self.l3.eval3(&self.b00(&x[i], &x[j]), rest[0], rest[1]);
                if (i + j) % 2 == 0 {
                    scalar::add_assign(&mut acc, &t);
                } else {
                    scalar::sub_assign(&mut acc, &t);
                }
            }
        }
        acc
    }

    /// The Lie algebra `(g₀ ⊕ g₁, [·,·]ₛ)` of a strict Lie 2-algebra.
    pub fn semidirect_lie_algebra(&self) -> Result<LieAlgebra> {
        if !self.is_strict() {
            return Err(Error::NotStrict("l3 is nonzero".into()));
        }
        Ok(self.flattened())
    }

    /// `[x+m, y+n]ₛ = 𝔩₂(x,y) + 𝔩₂(x,n) + 𝔩₂(m,y)`, without the strictness check.
    pub fn flattened(&self) -> LieAlgebra {
        let n0 = self.g0.dim;
        let space = self.g0.direct_sum(&self.g1);
        let bracket = MultiMap::from_basis_images(vec![space.clone(), space.clone()], space.clone(), |idx| {
            let b = space.basis(idx[0]);
            let c = space.basis(idx[1]);
            let (x, m) = b.split_at(n0);
            let (y, n) = c.split_at(n0);
            let top = self.b00(x, y);
            let bottom = scalar::add(&self.b01(x, n), &self.b10(m, y));
            scalar::concat(&top, &bottom)
        });
        LieAlgebra { space, bracket }
    }

    /// `𝔡` extended by zero to an endomorphism of `g₀ ⊕ g₁`, as rows.
    pub fn flat_differential(&self) -> linalg::Matrix {
        let (n0, n1) = (self.g0.dim, self.g1.dim);
        let mut m = linalg::mat_zero(n0 + n1, n0 + n1);
        for j in 0..n1 {
            for (i, c) in self.d.image(&[j]).iter().enumerate() {
                m[i][n0 + j] = c.clone();
            }
        }
        m
    }
}

/// `(F₀, F₁, F₂)` with `F₂` skew.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lie2Hom {
    pub f0: MultiMap,
    pub f1: MultiMap,
    pub f2: MultiMap,
}

impl Lie2Hom {
    pub fn identity(g: &Lie2Algebra) -> Self {
        Lie2Hom {
            f0: MultiMap::identity(&g.g0),
            f1: MultiMap::identity(&g.g1),
            f2: MultiMap::zeros(vec![g.g0.clone(), g.g0.clone()], g.g1.clone()),
        }
    }

    pub fn check_shapes(&self, src: &Lie2Algebra, dst: &Lie2Algebra) -> Result<()> {
        check_shape("F0", &self.f0, &[&src.g0], &dst.g0)?;
        check_shape("F1", &self.f1, &[&src.g1], &dst.g1)?;
        check_shape("F2", &self.f2, &[&src.g0, &src.g0], &dst.g1)
    }
}

/// Conditions (i)–(iv) for a Lie 2-algebra homomorphism.
pub fn validate_hom(f: &Lie2Hom, src: &Lie2Algebra, dst: &Lie2Algebra) -> Result<ValidationReport> {
    f.check_shapes(src, dst)?;
    let mut rep = ValidationReport::new();
    let (n0, n1) = (src.g0.dim, src.g1.dim);
    let e0 = |i: usize| src.g0.basis(i);
    let f0 = |x: &[Rational]| f.f0.eval1(x);
    let f1 = |m: &[Rational]| f.f1.eval1(m);
    let f2 = |x: &[Rational], y: &[Rational]| f.f2.eval2(x, y);
    if let Ok(Some((idx, diff))) = f.f2.skew_witness(0, 1) {
        rep.check("F2 skew", &idx, diff);
    }
    for m in 0..n1 {
        let k = src.g1.basis(m);
        rep.check("(i)", &[m], scalar::sub(&f0(&src.dk(&k)), &dst.dk(&f1(&k))));
    }
    for x in 0..n0 {
        for y in 0..n0 {
            let (a, b) = (e0(x), e0(y));
            let lhs = scalar::sub(&f0(&src.b00(&a, &b)), &dst.b00(&f0(&a), &f0(&b)));
            rep.check("(ii)", &[x, y], scalar::sub(&lhs, &dst.dk(&f2(&a, &b))));
        }
        for m in 0..n1 {
            let (a, k) = (e0(x), src.g1.basis(m));
            let lhs = scalar::sub(&f1(&src.b01(&a, &k)), &dst.b01(&f0(&a), &f1(&k)));
            rep.check("(iii)", &[x, m], scalar::sub(&lhs, &f2(&a, &src.dk(&k))));
        }
    }
    for idx in crate::tensor::multi_indices(&[n0, n0, n0]) {
        let (x, y, z) = (e0(idx[0]), e0(idx[1]), e0(idx[2]));
        let mut lhs = f1(&src.l3.eval3(&x, &y, &z));
        let mut rhs = dst.l3.eval3(&f0(&x), &f0(&y), &f0(&z));
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            scalar::add_assign(&mut lhs, &f2(&src.b00(a, b), c));
            scalar::add_assign(&mut rhs, &dst.b01(&f0(a), &f2(b, c)));
        }
        rep.check("(iv)", &idx, scalar::sub(&lhs, &rhs));
    }
    Ok(rep.sorted())
}

/// A representation of a Lie 2-algebra on a complex `𝒱`, stored as operators
/// on `V`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lie2Rep {
    pub complex: TwoTermComplex,
    /// `ρ₀` on `V₀`: `g₀ ⊗ V₀ → V₀`
    pub rho0_v0: MultiMap,
    /// `ρ₀` on `V₁`: `g₀ ⊗ V₁ → V₁`
    pub rho0_v1: MultiMap,
    /// `g₁ ⊗ V₀ → V₁`
    pub rho1: MultiMap,
    /// `g₀ ⊗ g₀ ⊗ V₀ → V₁`
    pub rho2: MultiMap,
}

impl Lie2Rep {
    pub fn zero(g: &Lie2Algebra, complex: TwoTermComplex) -> Self {
        let (v0, v1) = (complex.v0.clone(), complex.v1.clone());
        Lie2Rep {
            rho0_v0: MultiMap::zeros(vec![g.g0.clone(), v0.clone()], v0.clone()),
            rho0_v1: MultiMap::zeros(vec![g.g0.clone(), v1.clone()], v1.clone()),
            rho1: MultiMap::zeros(vec![g.g1.clone(), v0.clone()], v1.clone()),
            rho2: MultiMap::zeros(vec![g.g0.clone(), g.g0.clone(), v0], v1),
            complex,
        }
    }

    pub fn check_shapes(&self, g: &Lie2Algebra) -> Result<()> {
        let (v0, v1) = (&self.complex.v0, &self.complex.v1);
        check_shape("rho0 (V0)", &self.rho0_v0, &[&g.g0, v0], v0)?;
        check_shape("rho0 (V1)", &self.rho0_v1, &[&g.g0, v1], v1)?;
        check_shape("rho1", &self.rho1, &[&g.g1, v0], v1)?;
        check_shape("rho2", &self.rho2, &[&g.g0, &g.g0, v0], v1)
    }

    pub fn is_strict(&self) -> bool {
        self.rho2.is_zero()
    }

    /// `ρ₀(x)` as a pair of matrices.
    pub fn rho0_pair(&self, x: &[Rational]) -> EndPair {
        EndPair {
            a0: graded::operator(&self.rho0_v0, x),
            a1: graded::operator(&self.rho0_v1, x),
        }
    }

    /// Validates the representation as a homomorphism into `End(𝒱)`.
    pub fn validate(&self, g: &Lie2Algebra) -> Result<ValidationReport> {
        self.check_shapes(g)?;
        match rep_as_hom(self, g) {
            Some((end, hom)) => Ok(validate_hom(&hom, g, &end.lie2)?.prefixed("rep")),
            None => {
                let end = end_algebra(&self.complex);
                let mut rep = ValidationReport::new();
                for x in 0..g.g0.dim {
                    if end.coords0(&self.rho0_pair(&g.g0.basis(x))).is_none() {
                        rep.fail("rep rho0 commutes with d", &[x]);
                    }
                }
                Ok(rep)
            }
        }
    }

    /// Dual of a strict representation on `𝒱* : V₀* → V₁*`, with
    /// `ρ₀*(x) = −ρ₀(x)ᵀ` on each piece and `ρ₁*(a) = −ρ₁(a)ᵀ : V₁* → V₀*`.
    pub fn dual(&self, g: &Lie2Algebra) -> Result<Lie2Rep> {
        if !self.is_strict() {
            return Err(Error::NotStrict("rho2 is nonzero".into()));
        }
        let dual = self.complex.dual();
        let neg_t = |m: &MultiMap, xs: &Space, src: &Space, dst: &Space| {
            // m : X ⊗ A → B, result X ⊗ B* → A*
            MultiMap::from_basis_images(vec![xs.clone(), dst.clone()], src.clone(), |idx| {
                (0..src.dim).map(|b| -m.get(&[idx[0], b], idx[1]).clone()).collect()
            })
        };
        Ok(Lie2Rep {
            rho0_v0: neg_t(&self.rho0_v1, &g.g0, &dual.v0, &dual.v0),
            rho0_v1: neg_t(&self.rho0_v0, &g.g0, &dual.v1, &dual.v1),
            rho1: neg_t(&self.rho1, &g.g1, &dual.v1, &dual.v0),
            rho2: MultiMap::zeros(vec![g.g0.clone(), g.g0.clone(), dual.v0.clone()], dual.v1.clone()),
            complex: dual,
        })
    }

    /// `ρ₀ ⊕ ρ₁` as a representation of the flattened Lie algebra on `V₀ ⊕ V₁`.
    pub fn flattened(&self, g: &Lie2Algebra) -> crate::prelie::LieRep {
        let (n0, v0, v1) = (g.g0.dim, self.complex.v0.dim, self.complex.v1.dim);
        let gs = g.g0.direct_sum(&g.g1);
        let vs = self.complex.v0.direct_sum(&self.complex.v1);
        let rho = MultiMap::from_basis_images(vec![gs.clone(), vs.clone()], vs.clone(), |idx| {
            let (xa, um) = (gs.basis(idx[0]), vs.basis(idx[1]));
            let (x, a) = xa.split_at(n0);
            let (u, m) = um.split_at(v0);
            let top = self.rho0_v0.eval2(x, u);
            let bottom = scalar::add(&self.rho0_v1.eval2(x, m), &self.rho1.eval2(a, u));
            debug_assert_eq!(bottom.len(), v1);
            scalar::concat(&top, &bottom)
        });
        crate::prelie::LieRep { space: vs, rho }
    }
}

/// The Lie 2-algebra `𝒢(𝒜)` and the representation `(L₀, L₁, L₂)`.
pub fn from_prelie2(a: &PreLie2Algebra) -> Result<(Lie2Algebra, Lie2Rep)> {
    let r = a.validate();
    if !r.ok() {
        return Err(Error::invalid("pre-Lie 2-algebra", r));
    }
    Ok(from_prelie2_unchecked(a))
}

pub fn from_prelie2_unchecked(a: &PreLie2Algebra) -> (Lie2Algebra, Lie2Rep) {
    let (a0, a1) = (&a.a0, &a.a1);
    let l2_00 = MultiMap::from_basis_images(vec![a0.clone(), a0.clone()], a0.clone(), |i| {
        scalar::sub(a.mul00.image(&[i[0], i[1]]), a.mul00.image(&[i[1], i[0]]))
    });
    let l2_01 = MultiMap::from_basis_images(vec![a0.clone(), a1.clone()], a1.clone(), |i| {
        scalar::sub(a.mul01.image(&[i[0], i[1]]), a.mul10.image(&[i[1], i[0]]))
    });
    let l3 = MultiMap::from_basis_images(vec![a0.clone(), a0.clone(), a0.clone()], a1.clone(), |i| {
        let (u, v, w) = (i[0], i[1], i[2]);
        scalar::signed_sum(
            a1.dim,
            &[(1, a.l3.image(&[u, v, w])), (1, a.l3.image(&[v, w, u])), (1, a.l3.image(&[w, u, v]))],
        )
    });
    let g = Lie2Algebra {
        g0: a0.clone(),
        g1: a1.clone(),
        d: a.d.clone(),
        l2_00,
        l2_01,
        l3,
    };
    let rep = Lie2Rep {
        complex: a.complex(),
        rho0_v0: a.mul00.clone(),
        rho0_v1: a.mul01.clone(),
        rho1: a.mul10.clone(),
        rho2: a.l3.scaled(&Rational::from_integer((-1).into())),
    };
    (g, rep)
}

/// `(F₀, F₁, F₂(u,v) − F₂(v,u))`.
pub fn hom_from_prelie2hom(f: &PreLie2Hom) -> Lie2Hom {
    Lie2Hom {
        f0: f.f0.clone(),
        f1: f.f1.clone(),
        f2: f.f2.sub(&f.f2.permute_inputs(&[1, 0])),
    }
}

/// Semidirect product `𝒢 ⋉ 𝒱` of a strict Lie 2-algebra with a strict
/// representation.
pub fn semidirect_strict(g: &Lie2Algebra, rep: &Lie2Rep) -> Result<Lie2Algebra> {
    if !g.is_strict() {
        return Err(Error::NotStrict("l3 is nonzero".into()));
    }
    if !rep.is_strict() {
        return Err(Error::NotStrict("rho2 is nonzero".into()));
    }
    rep.check_shapes(g)?;
    let v = &rep.complex;
    let (n0, m0) = (g.g0.dim, g.g1.dim);
    let s0 = g.g0.direct_sum(&v.v0);
    let s1 = g.g1.direct_sum(&v.v1);
    let d = MultiMap::from_basis_images(vec![s1.clone()], s0.clone(), |i| {
        let e = s1.basis(i[0]);
        let (a, m) = e.split_at(m0);
        scalar::concat(&g.dk(a), &v.d.eval1(m))
    });
    let l2_00 = MultiMap::from_basis_images(vec![s0.clone(), s0.clone()], s0.clone(), |i| {
        let (p, q) = (s0.basis(i[0]), s0.basis(i[1]));
        let (x, u) = p.split_at(n0);
        let (y, w) = q.split_at(n0);
        let bottom = scalar::sub(&rep.rho0_v0.eval2(x, w), &rep.rho0_v0.eval2(y, u));
        scalar::concat(&g.b00(x, y), &bottom)
    });
    let l2_01 = MultiMap::from_basis_images(vec![s0.clone(), s1.clone()], s1.clone(), |i| {
        let (p, q) = (s0.basis(i[0]), s1.basis(i[1]));
        let (x, u) = p.split_at(n0);
        let (a, m) = q.split_at(m0);
        let bottom = scalar::sub(&rep.rho0_v1.eval2(x, m), &rep.rho1.eval2(a, u));
        scalar::concat(&g.b01(x, a), &bottom)
    });
    let l3 = MultiMap::zeros(vec![s0.clone(), s0.clone(), s0.clone()], s1.clone());
    Ok(Lie2Algebra { g0: s0, g1: s1, d, l2_00, l2_01, l3 })
}

/// The representation as an explicit homomorphism into `End(𝒱)`, or `None`
/// when some `ρ₀(x)` does not commute with `d`.
pub fn rep_as_hom(rep: &Lie2Rep, g: &Lie2Algebra) -> Option<(graded::EndAlgebra, Lie2Hom)> {
    let end = end_algebra(&rep.complex);
    let mut imgs = Vec::new();
    for x in 0..g.g0.dim {
        imgs.push(end.coords0(&rep.rho0_pair(&g.g0.basis(x)))?);
    }
    let f0 = MultiMap::linear(&g.g0, &end.lie2.g0, &imgs);
    let f1 = MultiMap::from_basis_images(vec![g.g1.clone()], end.lie2.g1.clone(), |i| {
        end.coords1(&graded::operator(&rep.rho1, &g.g1.basis(i[0])))
    });
    let f2 = MultiMap::from_basis_images(vec![g.g0.clone(), g.g0.clone()], end.lie2.g1.clone(), |i| {
        end.coords1(&graded::operator2(&rep.rho2, &g.g0.basis(i[0]), &g.g0.basis(i[1])))
    });
    Some((end, Lie2Hom { f0, f1, f2 }))
}
