//! 2-term pre-Lie∞-algebras (pre-Lie 2-algebras), their homomorphisms, and
//! the skeletal correspondence with (pre-Lie algebra, representation,
//! 3-cocycle) triples.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::TwoTermComplex;
use crate::prelie::lie::check_shape;
use crate::prelie::{coboundary, Cochain, PreLieAlgebra, PreLieRep};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap, Space};

/// `(A₀, A₁, d, ·, l₃)`. `mul10(m, u)` is `m·u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLie2Algebra {
    pub a0: Space,
    pub a1: Space,
    /// `A₁ → A₀`
    pub d: MultiMap,
    /// `A₀ ⊗ A₀ → A₀`
    pub mul00: MultiMap,
    /// `A₀ ⊗ A₁ → A₁`
    pub mul01: MultiMap,
    /// `A₁ ⊗ A₀ → A₁`
    pub mul10: MultiMap,
    /// `A₀ ⊗ A₀ ⊗ A₀ → A₁`, skew in the first two slots
    pub l3: MultiMap,
}

type Family = fn(&PreLie2Algebra) -> ValidationReport;

impl PreLie2Algebra {
    pub fn new(
        a0: Space,
        a1: Space,
        d: MultiMap,
        mul00: MultiMap,
        mul01: MultiMap,
        mul10: MultiMap,
        l3: MultiMap,
    ) -> Result<Self> {
        check_shape("d", &d, &[&a1], &a0)?;
        check_shape("mul00", &mul00, &[&a0, &a0], &a0)?;
        check_shape("mul01", &mul01, &[&a0, &a1], &a1)?;
        check_shape("mul10", &mul10, &[&a1, &a0], &a1)?;
        check_shape("l3", &l3, &[&a0, &a0, &a0], &a1)?;
        Ok(PreLie2Algebra { a0, a1, d, mul00, mul01, mul10, l3 })
    }

    pub fn zero(a0: Space, a1: Space) -> Self {
        PreLie2Algebra {
            d: MultiMap::zeros(vec![a1.clone()], a0.clone()),
            mul00: MultiMap::zeros(vec![a0.clone(), a0.clone()], a0.clone()),
            mul01: MultiMap::zeros(vec![a0.clone(), a1.clone()], a1.clone()),
            mul10: MultiMap::zeros(vec![a1.clone(), a0.clone()], a1.clone()),
            l3: MultiMap::zeros(vec![a0.clone(), a0.clone(), a0.clone()], a1.clone()),
            a0,
            a1,
        }
    }

    pub fn complex(&self) -> TwoTermComplex {
        TwoTermComplex {
            v0: self.a0.clone(),
            v1: self.a1.clone(),
            d: self.d.clone(),
        }
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero()
    }

    /// The degree-0 pre-Lie algebra part `(A₀, ·)`; a pre-Lie algebra only when `d l₃` vanishes.
    pub fn degree0(&self) -> PreLieAlgebra {
        PreLieAlgebra {
            space: self.a0.clone(),
            mul: self.mul00.clone(),
        }
    }

    /// All structure tensors with their names, in canonical order.
    pub fn tensors(&self) -> [(&'static str, &MultiMap); 5] {
        [
            ("d", &self.d),
            ("mul00", &self.mul00),
            ("mul01", &self.mul01),
            ("mul10", &self.mul10),
            ("l3", &self.l3),
        ]
    }

    pub fn tensors_mut(&mut self) -> [(&'static str, &mut MultiMap); 5] {
        [
            ("d", &mut self.d),
            ("mul00", &mut self.mul00),
            ("mul01", &mut self.mul01),
            ("mul10", &mut self.mul10),
            ("l3", &mut self.l3),
        ]
    }

    fn uv(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.mul00.eval2(u, v)
    }

    fn um(&self, u: &[Rational], m: &[Rational]) -> Vector {
        self.mul01.eval2(u, m)
    }

    fn mu(&self, m: &[Rational], u: &[Rational]) -> Vector {
        self.mul10.eval2(m, u)
    }

    fn dm(&self, m: &[Rational]) -> Vector {
        self.d.eval1(m)
    }

    fn l(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vector {
        self.l3.eval3(u, v, w)
    }

    fn e0(&self, i: usize) -> Vector {
        self.a0.basis(i)
    }

    fn e1(&self, i: usize) -> Vector {
        self.a1.basis(i)
    }

    fn check_a(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for v in 0..self.a0.dim {
            for m in 0..self.a1.dim {
                let (x, k) = (self.e0(v), self.e1(m));
                rep.check("(a1)", &[v, m], scalar::sub(&self.dm(&self.um(&x, &k)), &self.uv(&x, &self.dm(&k))));
                rep.check("(a2)", &[m, v], scalar::sub(&self.dm(&self.mu(&k, &x)), &self.uv(&self.dm(&k), &x)));
            }
        }
        for m in 0..self.a1.dim {
            for n in 0..self.a1.dim {
                let (k, l) = (self.e1(m), self.e1(n));
                rep.check("(a3)", &[m, n], scalar::sub(&self.um(&self.dm(&k), &l), &self.mu(&k, &self.dm(&l))));
            }
        }
        rep
    }

    fn check_b1(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.a0.dim;
        for idx in multi_indices(&[n, n, n]) {
            let (v0, v1, v2) = (self.e0(idx[0]), self.e0(idx[1]), self.e0(idx[2]));
            let lhs = scalar::signed_sum(
                n,
                &[
                    (1, &self.uv(&v0, &self.uv(&v1, &v2))),
                    (-1, &self.uv(&self.uv(&v0, &v1), &v2)),
                    (-1, &self.uv(&v1, &self.uv(&v0, &v2))),
                    (1, &self.uv(&self.uv(&v1, &v0), &v2)),
                ],
            );
            rep.check("(b1)", &idx, scalar::sub(&lhs, &self.dm(&self.l(&v0, &v1, &v2))));
        }
        rep
    }

    fn check_b2(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let (n, k) = (self.a0.dim, self.a1.dim);
        for idx in multi_indices(&[n, n, k]) {
            let (v0, v1, m) = (self.e0(idx[0]), self.e0(idx[1]), self.e1(idx[2]));
            let lhs = scalar::signed_sum(
                k,
                &[
                    (1, &self.um(&v0, &self.um(&v1, &m))),
                    (-1, &self.um(&self.uv(&v0, &v1), &m)),
                    (-1, &self.um(&v1, &self.um(&v0, &m))),
                    (1, &self.um(&self.uv(&v1, &v0), &m)),
                ],
            );
            rep.check("(b2)", &idx, scalar::sub(&lhs, &self.l(&v0, &v1, &self.dm(&m))));
        }
        rep
    }

    fn check_b3(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let (n, k) = (self.a0.dim, self.a1.dim);
        for idx in multi_indices(&[k, n, n]) {
            let (m, v1, v2) = (self.e1(idx[0]), self.e0(idx[1]), self.e0(idx[2]));
            let lhs = scalar::signed_sum(
                k,
                &[
                    (1, &self.mu(&m, &self.uv(&v1, &v2))),
                    (-1, &self.mu(&self.mu(&m, &v1), &v2)),
                    (-1, &self.um(&v1, &self.mu(&m, &v2))),
                    (1, &self.mu(&self.um(&v1, &m), &v2)),
                ],
            );
            rep.check("(b3)", &idx, scalar::sub(&lhs, &self.l(&self.dm(&m), &v1, &v2)));
        }
        rep
    }

    fn check_c(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if self.is_strict() {
            return rep;
        }
        let n = self.a0.dim;
        let k = self.a1.dim;
        for idx in multi_indices(&[n, n, n, n]) {
            let v: Vec<Vector> = idx.iter().map(|&i| self.e0(i)).collect();
            let br = |i: usize, j: usize| scalar::sub(&self.uv(&v[i], &v[j]), &self.uv(&v[j], &v[i]));
            let terms = [
                (1, self.um(&v[0], &self.l(&v[1], &v[2], &v[3]))),
                (-1, self.um(&v[1], &self.l(&v[0], &v[2], &v[3]))),
                (1, self.um(&v[2], &self.l(&v[0], &v[1], &v[3]))),
                (1, self.mu(&self.l(&v[1], &v[2], &v[0]), &v[3])),
                (-1, self.mu(&self.l(&v[0], &v[2], &v[1]), &v[3])),
                (1, self.mu(&self.l(&v[0], &v[1], &v[2]), &v[3])),
                (-1, self.l(&v[1], &v[2], &self.uv(&v[0], &v[3]))),
                (1, self.l(&v[0], &v[2], &self.uv(&v[1], &v[3]))),
                (-1, self.l(&v[0], &v[1], &self.uv(&v[2], &v[3]))),
                (-1, self.l(&br(0, 1), &v[2], &v[3])),
                (1, self.l(&br(0, 2), &v[1], &v[3])),
                (-1, self.l(&br(1, 2), &v[0], &v[3])),
            ];
            let refs: Vec<(i32, &[Rational])> = terms.iter().map(|(s, t)| (*s, t.as_slice())).collect();
            rep.check("(c)", &idx, scalar::signed_sum(k, &refs));
        }
        rep
    }

    fn check_l3_skew(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if let Ok(Some((idx, diff))) = self.l3.skew_witness(0, 1) {
            rep.check("l3 skew", &idx, diff);
        }
        rep
    }

    /// Evaluates every condition family on all basis tuples. Families run in
    /// parallel; the merged report is sorted by `(condition, indices)`.
    pub fn validate(&self) -> ValidationReport {
        let families: [Family; 6] = [
            Self::check_a,
            Self::check_b1,
            Self::check_b2,
            Self::check_b3,
            Self::check_c,
            Self::check_l3_skew,
        ];
        let parts: Vec<ValidationReport> = families.par_iter().map(|f| f(self)).collect();
        let mut rep = ValidationReport::new();
        for p in parts {
            rep.extend(p);
        }
        rep.sorted()
    }

    /// Identity homomorphism `(id, id, 0)`.
    pub fn identity_hom(&self) -> PreLie2Hom {
        PreLie2Hom {
            f0: MultiMap::identity(&self.a0),
            f1: MultiMap::identity(&self.a1),
            f2: MultiMap::zeros(vec![self.a0.clone(), self.a0.clone()], self.a1.clone()),
        }
    }
}

/// `(F₀, F₁, F₂)` between pre-Lie 2-algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLie2Hom {
    pub f0: MultiMap,
    pub f1: MultiMap,
    pub f2: MultiMap,
}

impl PreLie2Hom {
    pub fn check_shapes(&self, src: &PreLie2Algebra, dst: &PreLie2Algebra) -> Result<()> {
        check_shape("F0", &self.f0, &[&src.a0], &dst.a0)?;
        check_shape("F1", &self.f1, &[&src.a1], &dst.a1)?;
        check_shape("F2", &self.f2, &[&src.a0, &src.a0], &dst.a1)
    }

    pub fn zero(src: &PreLie2Algebra, dst: &PreLie2Algebra) -> Self {
        PreLie2Hom {
            f0: MultiMap::zeros(vec![src.a0.clone()], dst.a0.clone()),
            f1: MultiMap::zeros(vec![src.a1.clone()], dst.a1.clone()),
            f2: MultiMap::zeros(vec![src.a0.clone(), src.a0.clone()], dst.a1.clone()),
        }
    }
}

type Term = (&'static str, Vec<usize>, Vector);

/// Every hom condition on every basis tuple, including the satisfied ones.
fn hom_terms(f: &PreLie2Hom, src: &PreLie2Algebra, dst: &PreLie2Algebra) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    let (n, k) = (src.a0.dim, src.a1.dim);
    let f0 = |x: &[Rational]| f.f0.eval1(x);
    let f1 = |x: &[Rational]| f.f1.eval1(x);
    let f2 = |x: &[Rational], y: &[Rational]| f.f2.eval2(x, y);
    for m in 0..k {
        let e = src.e1(m);
        out.push(("(i)", vec![m], scalar::sub(&f0(&src.dm(&e)), &dst.dm(&f1(&e)))));
    }
    for u in 0..n {
        for v in 0..n {
            let (x, y) = (src.e0(u), src.e0(v));
            let lhs = scalar::sub(&f0(&src.uv(&x, &y)), &dst.uv(&f0(&x), &f0(&y)));
            out.push(("(ii)", vec![u, v], scalar::sub(&lhs, &dst.dm(&f2(&x, &y)))));
        }
        for m in 0..k {
            let (x, e) = (src.e0(u), src.e1(m));
            let l1 = scalar::sub(&f1(&src.um(&x, &e)), &dst.um(&f0(&x), &f1(&e)));
            out.push(("(iii)", vec![u, m], scalar::sub(&l1, &f2(&x, &src.dm(&e)))));
            // second family indexed past the first: (n + m, u)
            let l2 = scalar::sub(&f1(&src.mu(&e, &x)), &dst.mu(&f1(&e), &f0(&x)));
            out.push(("(iii)", vec![n + m, u], scalar::sub(&l2, &f2(&src.dm(&e), &x))));
        }
    }
    for idx in multi_indices(&[n, n, n]) {
        let (u, v, w) = (src.e0(idx[0]), src.e0(idx[1]), src.e0(idx[2]));
        let terms = [
            (1, dst.um(&f0(&u), &f2(&v, &w))),
            (-1, dst.um(&f0(&v), &f2(&u, &w))),
            (1, dst.mu(&f2(&v, &u), &f0(&w))),
            (-1, dst.mu(&f2(&u, &v), &f0(&w))),
            (-1, f2(&v, &src.uv(&u, &w))),
            (1, f2(&u, &src.uv(&v, &w))),
            (-1, f2(&src.uv(&u, &v), &w)),
            (1, f2(&src.uv(&v, &u), &w)),
            (1, dst.l(&f0(&u), &f0(&v), &f0(&w))),
            (-1, f1(&src.l(&u, &v, &w))),
        ];
        let refs: Vec<(i32, &[Rational])> = terms.iter().map(|(s, t)| (*s, t.as_slice())).collect();
        out.push(("(iv)", idx, scalar::signed_sum(dst.a1.dim, &refs)));
    }
    out
}

/// Conditions (i)–(iv) for a homomorphism `src → dst`.
pub fn validate_hom(f: &PreLie2Hom, src: &PreLie2Algebra, dst: &PreLie2Algebra) -> Result<ValidationReport> {
    f.check_shapes(src, dst)?;
    let mut rep = ValidationReport::new();
    for (tag, idx, diff) in hom_terms(f, src, dst) {
        rep.check(tag, &idx, diff);
    }
    Ok(rep.sorted())
}

/// All `F₂` completing the chain data `(F₀, F₁)` to a homomorphism, as a
/// particular solution plus a basis of the homogeneous solutions. The
/// conditions are affine in `F₂`.
pub fn complete_hom(
    f0: &MultiMap,
    f1: &MultiMap,
    src: &PreLie2Algebra,
    dst: &PreLie2Algebra,
) -> Result<Option<(PreLie2Hom, Vec<MultiMap>)>> {
    let mut f = PreLie2Hom::zero(src, dst);
    f.f0 = f0.clone();
    f.f1 = f1.clone();
    f.check_shapes(src, dst)?;
    let inputs = vec![src.a0.clone(), src.a0.clone()];
    let to_f2 = |x: &[Rational]| MultiMap::from_coeffs(inputs.clone(), dst.a1.clone(), x.to_vec()).expect("sized");
    let nvars = f.f2.coeffs().len();
    let sol = crate::linalg::solve_affine_family(nvars, |x| {
        let g = PreLie2Hom {
            f0: f0.clone(),
            f1: f1.clone(),
            f2: to_f2(x),
        };
        hom_terms(&g, src, dst).into_iter().flat_map(|t| t.2).collect()
    });
    Ok(sol.map(|(p, ker)| {
        f.f2 = to_f2(&p);
        (f, ker.iter().map(|k| to_f2(k)).collect())
    }))
}

/// `G∘F` with `(GF)₂(u,v) = G₂(F₀u, F₀v) + G₁(F₂(u,v))`.
pub fn compose_hom(g: &PreLie2Hom, f: &PreLie2Hom) -> Result<PreLie2Hom> {
    let f0 = MultiMap::compose_linear(&g.f0, &f.f0)?;
    let f1 = MultiMap::compose_linear(&g.f1, &f.f1)?;
    if g.f2.inputs()[0].dim != f.f0.output().dim {
        return Err(Error::DimensionMismatch {
            context: "compose_hom".into(),
            slot: 0,
            expected: g.f2.inputs()[0].dim,
            found: f.f0.output().dim,
        });
    }
    let src = f.f0.inputs()[0].clone();
    let f2 = MultiMap::from_basis_images(vec![src.clone(), src.clone()], g.f2.output().clone(), |i| {
        let a = g.f2.eval2(f.f0.image(&[i[0]]), f.f0.image(&[i[1]]));
        scalar::add(&a, &g.f1.eval1(f.f2.image(&[i[0], i[1]])))
    });
    Ok(PreLie2Hom { f0, f1, f2 })
}

/// The skeletal pre-Lie 2-algebra of a triple `(A, (V; ρ, μ), l₃)`.
pub fn build_skeletal(a: &PreLieAlgebra, rep: &PreLieRep, l3: &Cochain) -> Result<PreLie2Algebra> {
    let r = a.validate();
    if !r.ok() {
        return Err(Error::invalid("pre-Lie algebra", r));
    }
    let r = rep.validate(a);
    if !r.ok() {
        return Err(Error::invalid("representation", r));
    }
    if l3.n != 3 {
        return Err(Error::ArityMismatch {
            context: "l3 cochain".into(),
            expected: 3,
            found: l3.n,
        });
    }
    check_shape("l3", &l3.map, &[&a.space, &a.space, &a.space], &rep.space)?;
    let r = l3.validate_skew();
    if !r.ok() {
        return Err(Error::invalid("3-cochain", r));
    }
    let dl = coboundary(l3, a, rep)?;
    let mut r = ValidationReport::new();
    for idx in multi_indices(&dl.map.input_dims()) {
        r.check("cocycle", &idx, dl.map.image(&idx).to_vec());
    }
    if !r.ok() {
        return Err(Error::invalid("3-cocycle", r));
    }
    Ok(PreLie2Algebra {
        a0: a.space.clone(),
        a1: rep.space.clone(),
        d: MultiMap::zeros(vec![rep.space.clone()], a.space.clone()),
        mul00: a.mul.clone(),
        mul01: rep.rho.clone(),
        mul10: rep.mu.permute_inputs(&[1, 0]),
        l3: l3.map.clone(),
    })
}

/// Inverse of [`build_skeletal`].
pub fn classify_skeletal(s: &PreLie2Algebra) -> Result<(PreLieAlgebra, PreLieRep, Cochain)> {
    if !s.is_skeletal() {
        return Err(Error::NotSkeletal("d is nonzero".into()));
    }
    let r = s.validate();
    if !r.ok() {
        return Err(Error::invalid("pre-Lie 2-algebra", r));
    }
    let a = s.degree0();
    let rep = PreLieRep {
        space: s.a1.clone(),
        rho: s.mul01.clone(),
        mu: s.mul10.permute_inputs(&[1, 0]),
    };
    Ok((a, rep, Cochain::new(s.l3.clone())))
}

/// The pre-Lie 2-algebra `(A, 0, 0, ·, 0)` with a zero degree-1 part.
pub fn lift(a: &PreLieAlgebra) -> PreLie2Algebra {
    let mut out = PreLie2Algebra::zero(a.space.clone(), Space::new("0", 0));
    out.mul00 = a.mul.clone();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::int;

    #[test]
    fn zero_structure_is_valid() {
        let z = PreLie2Algebra::zero(Space::new("A0", 2), Space::new("A1", 2));
        assert!(z.validate().ok());
        assert!(z.is_skeletal() && z.is_strict());
    }

    #[test]
    fn fix_b_is_strict_not_skeletal() {
        let b = fixtures::fix_b();
        assert!(b.validate().ok());
        assert!(b.is_strict());
        assert!(!b.is_skeletal());
    }

    #[test]
    fn fix_omega_is_skeletal_not_strict() {
        let o = fixtures::fix_omega();
        assert!(o.validate().ok());
        assert!(o.is_skeletal());
        assert!(!o.is_strict());
    }

    #[test]
    fn fix_b_exhaustive_oracle() {
        // Independent expansion: A₀ = span{e₁,e₂}, A₁ = span{f}, d f = e₂,
        // e₁·e₁ = e₁, e₁·e₂ = e₂, e₁·f = f, f·e₁ = 0. With l₃ = 0 every
        // condition is an exact identity among these few products.
        let b = fixtures::fix_b();
        let e = |i| b.a0.basis(i);
        let f = b.a1.basis(0);
        assert_eq!(b.d.eval1(&f), e(1));
        assert_eq!(b.mul01.eval2(&e(0), &f), f);
        assert!(scalar::is_zero_vec(&b.mul01.eval2(&e(1), &f)));
        assert!(b.mul10.is_zero());
        // (a3): (d f)·f = e₂·f = 0 = f·(d f) = f·e₂ = 0
        assert!(scalar::is_zero_vec(&b.mul01.eval2(&b.d.eval1(&f), &f)));
    }

    #[test]
    fn scaled_differential_still_valid() {
        // Every condition is homogeneous in d when l₃ = 0.
        let mut b = fixtures::fix_b();
        b.d = b.d.scaled(&int(2));
        assert!(b.validate().ok());
    }

    #[test]
    fn misdirected_differential_is_caught() {
        let mut b = fixtures::fix_b();
        b.d.image_mut(&[0]).clone_from_slice(&[int(1), int(0)]);
        let r = b.validate();
        assert!(!r.ok());
        assert!(r.mentions("(a2)"));
    }

    #[test]
    fn identity_and_zero_homs() {
        let b = fixtures::fix_b();
        assert!(validate_hom(&b.identity_hom(), &b, &b).unwrap().ok());
        let z = PreLie2Algebra::zero(Space::new("A0", 2), Space::new("A1", 1));
        assert!(validate_hom(&PreLie2Hom::zero(&z, &z), &z, &z).unwrap().ok());
    }

    #[test]
    fn doubling_breaks_ii() {
        let b = fixtures::fix_b();
        let f = PreLie2Hom {
            f0: MultiMap::identity(&b.a0).scaled(&int(2)),
            f1: MultiMap::identity(&b.a1).scaled(&int(2)),
            f2: MultiMap::zeros(vec![b.a0.clone(), b.a0.clone()], b.a1.clone()),
        };
        let r = validate_hom(&f, &b, &b).unwrap();
        assert!(r.mentions("(ii)"));
    }

    #[test]
    fn identity_is_a_unit() {
        let b = fixtures::fix_b();
        for f in fixtures::fix_b_endomorphisms(3, 7) {
            assert_eq!(compose_hom(&b.identity_hom(), &f).unwrap(), f);
            assert_eq!(compose_hom(&f, &b.identity_hom()).unwrap(), f);
        }
    }

    #[test]
    fn composition_is_associative_on_omega() {
        let o = fixtures::fix_omega();
        let hs = fixtures::fix_omega_endomorphisms(3, 11);
        for h in &hs {
            assert!(validate_hom(h, &o, &o).unwrap().ok());
        }
        let lhs = compose_hom(&compose_hom(&hs[2], &hs[1]).unwrap(), &hs[0]).unwrap();
        let rhs = compose_hom(&hs[2], &compose_hom(&hs[1], &hs[0]).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(validate_hom(&lhs, &o, &o).unwrap().ok());
    }

    #[test]
    fn skeletal_round_trip() {
        let a = fixtures::fix_a();
        let z = Cochain::new(MultiMap::zeros(vec![a.space.clone(); 3], a.space.clone()));
        let s = build_skeletal(&a, &a.left_rep(), &z).unwrap();
        assert!(s.validate().ok());
        let (a2, rep2, l3) = classify_skeletal(&s).unwrap();
        assert_eq!(a2, a);
        assert_eq!(rep2, a.left_rep());
        assert_eq!(l3, z);
        assert_eq!(build_skeletal(&a2, &rep2, &l3).unwrap(), s);
    }

    #[test]
    fn abelian_any_skew_l3() {
        let a = PreLieAlgebra::abelian(Space::new("A", 2));
        let v = Space::new("V", 1);
        let l3 = MultiMap::from_basis_images(vec![a.space.clone(); 3], v.clone(), |i| {
            vec![int(i[0] as i64 - i[1] as i64) * int(1 + i[2] as i64)]
        });
        let s = build_skeletal(&a, &PreLieRep::zero(&a, v), &Cochain::new(l3)).unwrap();
        assert!(s.validate().ok());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        // Λ³ of a 2-dimensional space vanishes, so every 3-cochain there is a
        // cocycle. Use x·y = x₁y in dimension 3 and l₃(e₂,e₃,e₁) = 1; then
        // dl₃(e₁,e₂,e₃,e₁) = −3.
        let s = Space::new("A", 3);
        let mul = MultiMap::from_basis_images(vec![s.clone(), s.clone()], s.clone(), |i| {
            if i[0] == 0 {
                s.basis(i[1])
            } else {
                s.zero_vec()
            }
        });
        let a = PreLieAlgebra::new(s.clone(), mul).unwrap();
        let v = Space::new("V", 1);
        let l3 = MultiMap::from_basis_images(vec![s.clone(); 3], v.clone(), |i| match i {
            [1, 2, 0] => vec![int(1)],
            [2, 1, 0] => vec![int(-1)],
            _ => vec![int(0)],
        });
        let rep = PreLieRep::zero(&a, v);
        let dl = coboundary(&Cochain::new(l3.clone()), &a, &rep).unwrap();
        assert_eq!(dl.map.image(&[0, 1, 2, 0]), &[int(-3)]);
        let err = build_skeletal(&a, &rep, &Cochain::new(l3)).unwrap_err();
        assert!(matches!(err, Error::Invalid { .. }));
    }

    #[test]
    fn classify_rejects_non_skeletal() {
        assert!(matches!(classify_skeletal(&fixtures::fix_b()), Err(Error::NotSkeletal(_))));
    }

    #[test]
    fn condition_c_is_the_cocycle_condition() {
        let o = fixtures::fix_omega();
        let (a, rep, l3) = classify_skeletal(&o).unwrap();
        let dl = coboundary(&l3, &a, &rep).unwrap();
        assert!(dl.map.is_zero());
        // a non-cocycle l₃ fails (c) and coboundary in the same places
        let mut bad = o.clone();
        bad.l3.image_mut(&[0, 1, 1])[0] += int(1);
        bad.l3.image_mut(&[1, 0, 1])[0] -= int(1);
        let r = bad.validate();
        let dbad = coboundary(&Cochain::new(bad.l3.clone()), &a, &rep).unwrap();
        for v in r.violations.iter().filter(|v| v.condition == "(c)") {
            assert_eq!(dbad.map.image(&v.indices), v.difference.as_slice());
        }
        assert_eq!(r.mentions("(c)"), !dbad.map.is_zero());
    }
}
