//! The categorified side: 2-vector spaces with a bilinear functor `⋆` and a
//! Jacobiator `J`, the functors `T` and `S`, and the natural isomorphism
//! `α : T∘S ⇒ id`.
//!
//! A 2-vector space is stored by its structure maps on a morphism space
//! `C₁`: source `s`, target `t`, identities `1 : C₀ → C₁` and an injection
//! `K : V₁ → C₁` onto `ker s`. In split form `C₁ = C₀ ⊕ V₁`,
//! `s(u+m) = u`, `t(u+m) = u + dm`, `1_u = u` and `K m = m`. Any other
//! basis of `C₁` is reached with [`CatPreLie2::rebase`].
//!
//! Composition of composable morphisms (`s f = t g`) is
//! `f ∘ g = f + g − 1_{t g}`. Morphisms are never inverted explicitly; every
//! morphism of a 2-vector space is invertible.

use crate::error::{Error, Result};
use crate::linalg;
use crate::prelie::lie::check_shape;
use crate::prelie2::{validate_hom, PreLie2Algebra, PreLie2Hom};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap, Space};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVectorSpace {
    /// objects `C₀`
    pub v0: Space,
    /// the kernel of `s`, abstractly
    pub v1: Space,
    /// morphisms `C₁`
    pub mor: Space,
    pub s: MultiMap,
    pub t: MultiMap,
    pub unit: MultiMap,
    pub kernel: MultiMap,
}

impl TwoVectorSpace {
    /// Split form of the complex `d : V₁ → V₀`.
    pub fn split(v0: &Space, v1: &Space, d: &MultiMap) -> Self {
        let mor = v0.direct_sum(v1);
        let (n0, n1) = (v0.dim, v1.dim);
        let s = MultiMap::from_basis_images(vec![mor.clone()], v0.clone(), |i| {
            if i[0] < n0 {
                v0.basis(i[0])
            } else {
                v0.zero_vec()
            }
        });
        let t = MultiMap::from_basis_images(vec![mor.clone()], v0.clone(), |i| {
            if i[0] < n0 {
                v0.basis(i[0])
            } else {
                d.image(&[i[0] - n0]).to_vec()
            }
        });
        let unit = MultiMap::from_basis_images(vec![v0.clone()], mor.clone(), |i| mor.basis(i[0]));
        let kernel = MultiMap::from_basis_images(vec![v1.clone()], mor.clone(), |i| mor.basis(n0 + i[0]));
        debug_assert_eq!(mor.dim, n0 + n1);
        TwoVectorSpace {
            v0: v0.clone(),
            v1: v1.clone(),
            mor,
            s,
            t,
            unit,
            kernel,
        }
    }

    /// `d = t∘K`.
    pub fn differential(&self) -> MultiMap {
        MultiMap::compose_linear(&self.t, &self.kernel).expect("shapes fixed at construction")
    }

    pub fn source(&self, f: &[Rational]) -> Vector {
        self.s.eval1(f)
    }

    pub fn target(&self, f: &[Rational]) -> Vector {
        self.t.eval1(f)
    }

    pub fn identity(&self, u: &[Rational]) -> Vector {
        self.unit.eval1(u)
    }

    /// `f ∘ g`, defined when `s f = t g`.
    pub fn compose(&self, f: &[Rational], g: &[Rational]) -> Result<Vector> {
        let tg = self.target(g);
        if self.source(f) != tg {
            return Err(Error::NotComposable("source of f differs from target of g".into()));
        }
        Ok(self.compose_unchecked(f, g))
    }

    fn compose_unchecked(&self, f: &[Rational], g: &[Rational]) -> Vector {
        scalar::sub(&scalar::add(f, g), &self.identity(&self.target(g)))
    }

    /// Coordinates of `f − 1_{s f}` along `K`.
    pub fn kernel_part(&self, f: &[Rational]) -> Result<Vector> {
        let k = scalar::sub(f, &self.identity(&self.source(f)));
        let cols: Vec<Vector> = (0..self.v1.dim).map(|i| self.kernel.image(&[i]).to_vec()).collect();
        linalg::coordinates(&cols, &k).ok_or_else(|| Error::NotInSpan("kernel of the source map".into()))
    }

    /// `s∘1 = t∘1 = id`, `s∘K = 0`, and `C₁ = 1(C₀) ⊕ K(V₁)`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for i in 0..self.v0.dim {
            let e = self.v0.basis(i);
            let one = self.identity(&e);
            rep.check("source of identity", &[i], scalar::sub(&self.source(&one), &e));
            rep.check("target of identity", &[i], scalar::sub(&self.target(&one), &e));
        }
        for m in 0..self.v1.dim {
            rep.check("kernel in ker s", &[m], self.source(self.kernel.image(&[m])));
        }
        let mut cols: Vec<Vector> = (0..self.v0.dim).map(|i| self.unit.image(&[i]).to_vec()).collect();
        cols.extend((0..self.v1.dim).map(|i| self.kernel.image(&[i]).to_vec()));
        let rows: Vec<Vector> = (0..self.mor.dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        if self.mor.dim != self.v0.dim + self.v1.dim || linalg::rank(&rows, cols.len()) != self.mor.dim {
            rep.fail("splitting", &[]);
        }
        rep
    }

    /// Basis of the space of composable pairs `(f, g)`, as vectors in `C₁ ⊕ C₁`.
    fn composable_pairs(&self) -> Vec<(Vector, Vector)> {
        let n = self.mor.dim;
        linalg::solve_linear_family(2 * n, |x| scalar::sub(&self.source(&x[..n]), &self.target(&x[n..])))
            .into_iter()
            .map(|x| (x[..n].to_vec(), x[n..].to_vec()))
            .collect()
    }
}

/// A pre-Lie 2-algebra in categorical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatPreLie2 {
    pub space: TwoVectorSpace,
    /// `⋆` on objects
    pub star_obj: MultiMap,
    /// `⋆` on morphisms
    pub star_mor: MultiMap,
    /// `J_{u,v,w}` as a morphism `C₀⊗C₀⊗C₀ → C₁`
    pub jacobiator: MultiMap,
}

impl CatPreLie2 {
    fn so(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.star_obj.eval2(u, v)
    }

    fn sm(&self, f: &[Rational], g: &[Rational]) -> Vector {
        self.star_mor.eval2(f, g)
    }

    fn j(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vector {
        self.jacobiator.eval3(u, v, w)
    }

    /// `(u⋆v)⋆w − u⋆(v⋆w)`
    pub fn jacobiator_source(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vector {
        scalar::sub(&self.so(&self.so(u, v), w), &self.so(u, &self.so(v, w)))
    }

    /// `(v⋆u)⋆w − v⋆(u⋆w)`
    pub fn jacobiator_target(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vector {
        self.jacobiator_source(v, u, w)
    }

    /// Same rule on morphisms; a morphism from the source to the target expression.
    fn assoc_mor(&self, f: &[Rational], g: &[Rational], h: &[Rational]) -> Vector {
        scalar::sub(&self.sm(&self.sm(f, g), h), &self.sm(f, &self.sm(g, h)))
    }

    fn check_shapes(&self) -> Result<()> {
        let sp = &self.space;
        check_shape("s", &sp.s, &[&sp.mor], &sp.v0)?;
        check_shape("t", &sp.t, &[&sp.mor], &sp.v0)?;
        check_shape("unit", &sp.unit, &[&sp.v0], &sp.mor)?;
        check_shape("kernel", &sp.kernel, &[&sp.v1], &sp.mor)?;
        check_shape("star_obj", &self.star_obj, &[&sp.v0, &sp.v0], &sp.v0)?;
        check_shape("star_mor", &self.star_mor, &[&sp.mor, &sp.mor], &sp.mor)?;
        check_shape("J", &self.jacobiator, &[&sp.v0, &sp.v0, &sp.v0], &sp.mor)
    }

    /// Functor laws for `⋆`, the interchange law, and source, target and
    /// naturality of `J`. Coherence is not part of this report; see
    /// [`CatPreLie2::validate`].
    pub fn validate_structure(&self) -> Result<ValidationReport> {
        self.check_shapes()?;
        let sp = &self.space;
        let mut rep = sp.validate().prefixed("2-vector space");
        let (n0, n1, nm) = (sp.v0.dim, sp.v1.dim, sp.mor.dim);
        for idx in multi_indices(&[n0, n0]) {
            let (u, v) = (sp.v0.basis(idx[0]), sp.v0.basis(idx[1]));
            let lhs = self.sm(&sp.identity(&u), &sp.identity(&v));
            rep.check("star identities", &idx, scalar::sub(&lhs, &sp.identity(&self.so(&u, &v))));
        }
        for idx in multi_indices(&[nm, nm]) {
            let (f, g) = (sp.mor.basis(idx[0]), sp.mor.basis(idx[1]));
            let fg = self.sm(&f, &g);
            let src = scalar::sub(&sp.source(&fg), &self.so(&sp.source(&f), &sp.source(&g)));
            rep.check("star source", &idx, src);
            let tgt = scalar::sub(&sp.target(&fg), &self.so(&sp.target(&f), &sp.target(&g)));
            rep.check("star target", &idx, tgt);
        }
        for idx in multi_indices(&[n1, n1]) {
            let (m, n) = (sp.kernel.image(&[idx[0]]), sp.kernel.image(&[idx[1]]));
            let dm = sp.target(m);
            rep.check("kernel interchange", &idx, scalar::sub(&self.sm(m, n), &self.sm(&sp.identity(&dm), n)));
        }
        let pairs = sp.composable_pairs();
        for (a, (f1, g1)) in pairs.iter().enumerate() {
            for (b, (f2, g2)) in pairs.iter().enumerate() {
                let lhs = self.sm(&sp.compose_unchecked(f1, g1), &sp.compose_unchecked(f2, g2));
                let rhs = sp.compose_unchecked(&self.sm(f1, f2), &self.sm(g1, g2));
                rep.check("interchange", &[a, b], scalar::sub(&lhs, &rhs));
            }
        }
        for idx in multi_indices(&[n0, n0, n0]) {
            let (u, v, w) = (sp.v0.basis(idx[0]), sp.v0.basis(idx[1]), sp.v0.basis(idx[2]));
            let j = self.j(&u, &v, &w);
            rep.check("J source", &idx, scalar::sub(&sp.source(&j), &self.jacobiator_source(&u, &v, &w)));
            rep.check("J target", &idx, scalar::sub(&sp.target(&j), &self.jacobiator_target(&u, &v, &w)));
        }
        for idx in multi_indices(&[nm, nm, nm]) {
            let (f, g, h) = (sp.mor.basis(idx[0]), sp.mor.basis(idx[1]), sp.mor.basis(idx[2]));
            let (sf, sg, sh) = (sp.source(&f), sp.source(&g), sp.source(&h));
            let (tf, tg, th) = (sp.target(&f), sp.target(&g), sp.target(&h));
            // J_t ∘ X = Y ∘ J_s
            let x = self.assoc_mor(&f, &g, &h);
            let y = self.assoc_mor(&g, &f, &h);
            let lhs = sp.compose_unchecked(&self.j(&tf, &tg, &th), &x);
            let rhs = sp.compose_unchecked(&y, &self.j(&sf, &sg, &sh));
            rep.check("J naturality", &idx, scalar::sub(&lhs, &rhs));
        }
        Ok(rep.sorted())
    }

    /// Structure checks plus coherence, certified by validating `S(C)`.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut rep = self.validate_structure()?;
        if rep.ok() {
            rep.extend(functor_s_unchecked(self)?.validate().prefixed("coherence"));
        }
        Ok(rep)
    }

    /// Transports the structure along an invertible change of basis `P` of
    /// the morphism space: new coordinates are `P f`.
    pub fn rebase(&self, p: &MultiMap) -> Result<CatPreLie2> {
        let sp = &self.space;
        check_shape("P", p, &[&sp.mor], &sp.mor)?;
        let pinv_rows = linalg::inverse(&p.to_rows()).ok_or_else(|| Error::NotInSpan("P is not invertible".into()))?;
        let pinv = MultiMap::from_rows(&sp.mor, &sp.mor, &pinv_rows);
        let c = |f: &MultiMap, g: &MultiMap| MultiMap::compose_linear(f, g).expect("square");
        let star_mor = MultiMap::from_basis_images(vec![sp.mor.clone(), sp.mor.clone()], sp.mor.clone(), |i| {
            p.eval1(&self.sm(pinv.image(&[i[0]]), pinv.image(&[i[1]])))
        });
        Ok(CatPreLie2 {
            space: TwoVectorSpace {
                v0: sp.v0.clone(),
                v1: sp.v1.clone(),
                mor: sp.mor.clone(),
                s: c(&sp.s, &pinv),
                t: c(&sp.t, &pinv),
                unit: c(p, &sp.unit),
                kernel: c(p, &sp.kernel),
            },
            star_obj: self.star_obj.clone(),
            star_mor,
            jacobiator: self.jacobiator.then(p),
        })
    }
}

/// `T(A)`: `(u+m)⋆(v+n) = u·v + u·n + m·v + (dm)·n` and
/// `J_{u,v,w} = ((u·v)·w − u·(v·w)) + l₃(u,v,w)`.
pub fn functor_t(a: &PreLie2Algebra) -> Result<CatPreLie2> {
    let r = a.validate();
    if !r.ok() {
        return Err(Error::invalid("pre-Lie 2-algebra", r));
    }
    Ok(functor_t_unchecked(a))
}

pub fn functor_t_unchecked(a: &PreLie2Algebra) -> CatPreLie2 {
    let space = TwoVectorSpace::split(&a.a0, &a.a1, &a.d);
    let (n0, n1) = (a.a0.dim, a.a1.dim);
    let split = |x: &[Rational]| (x[..n0].to_vec(), x[n0..].to_vec());
    let star_mor = MultiMap::from_basis_images(vec![space.mor.clone(), space.mor.clone()], space.mor.clone(), |i| {
        let (u, m) = split(&space.mor.basis(i[0]));
        let (v, n) = split(&space.mor.basis(i[1]));
        let obj = a.mul00.eval2(&u, &v);
        let mut ker = a.mul01.eval2(&u, &n);
        scalar::add_assign(&mut ker, &a.mul10.eval2(&m, &v));
        scalar::add_assign(&mut ker, &a.mul01.eval2(&a.d.eval1(&m), &n));
        debug_assert_eq!(ker.len(), n1);
        scalar::concat(&obj, &ker)
    });
    let c = CatPreLie2 {
        star_obj: a.mul00.clone(),
        star_mor,
        jacobiator: MultiMap::zeros(vec![a.a0.clone(); 3], space.mor.clone()),
        space,
    };
    let jacobiator = MultiMap::from_basis_images(vec![a.a0.clone(); 3], c.space.mor.clone(), |i| {
        let (u, v, w) = (a.a0.basis(i[0]), a.a0.basis(i[1]), a.a0.basis(i[2]));
        scalar::concat(&c.jacobiator_source(&u, &v, &w), a.l3.image(i))
    });
    CatPreLie2 { jacobiator, ..c }
}

/// `S(C)`: degree 0 the objects, degree 1 the kernel of `s`, `d = t∘K`,
/// `u·m = 1_u ⋆ m`, `m·u = m ⋆ 1_u` and `l₃ = J − 1_{s J}`.
pub fn functor_s(c: &CatPreLie2) -> Result<PreLie2Algebra> {
    let r = c.validate_structure()?;
    if !r.ok() {
        return Err(Error::invalid("categorical pre-Lie 2-algebra", r));
    }
    functor_s_unchecked(c)
}

fn functor_s_unchecked(c: &CatPreLie2) -> Result<PreLie2Algebra> {
    let sp = &c.space;
    let (v0, v1) = (&sp.v0, &sp.v1);
    let kp = |f: &[Rational]| sp.kernel_part(f);
    let mul01 = try_basis_images(vec![v0.clone(), v1.clone()], v1.clone(), |i| {
        kp(&c.sm(&sp.identity(&v0.basis(i[0])), sp.kernel.image(&[i[1]])))
    })?;
    let mul10 = try_basis_images(vec![v1.clone(), v0.clone()], v1.clone(), |i| {
        kp(&c.sm(sp.kernel.image(&[i[0]]), &sp.identity(&v0.basis(i[1]))))
    })?;
    let l3 = try_basis_images(vec![v0.clone(); 3], v1.clone(), |i| kp(c.jacobiator.image(i)))?;
    PreLie2Algebra::new(v0.clone(), v1.clone(), sp.differential(), c.star_obj.clone(), mul01, mul10, l3)
}

fn try_basis_images(
    inputs: Vec<Space>,
    output: Space,
    mut f: impl FnMut(&[usize]) -> Result<Vector>,
) -> Result<MultiMap> {
    let mut err = None;
    let m = MultiMap::from_basis_images(inputs, output.clone(), |i| match f(i) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            output.zero_vec()
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// A homomorphism of categorical pre-Lie 2-algebras: a linear functor
/// `(Φ₀, Φ₁)` and `Φ₂(u,v) : Φ₀u ⋆' Φ₀v → Φ₀(u⋆v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatHom {
    pub phi0: MultiMap,
    pub phi1: MultiMap,
    pub phi2: MultiMap,
}

impl CatHom {
    fn check_shapes(&self, src: &CatPreLie2, dst: &CatPreLie2) -> Result<()> {
        let (a, b) = (&src.space, &dst.space);
        check_shape("Phi0", &self.phi0, &[&a.v0], &b.v0)?;
        check_shape("Phi1", &self.phi1, &[&a.mor], &b.mor)?;
        check_shape("Phi2", &self.phi2, &[&a.v0, &a.v0], &b.mor)
    }

    pub fn identity(c: &CatPreLie2) -> CatHom {
        let sp = &c.space;
        CatHom {
            phi0: MultiMap::identity(&sp.v0),
            phi1: MultiMap::identity(&sp.mor),
            phi2: MultiMap::from_basis_images(vec![sp.v0.clone(), sp.v0.clone()], sp.mor.clone(), |i| {
                sp.identity(c.star_obj.image(i))
            }),
        }
    }

    /// Whether `Φ₀` and `Φ₁` are bijective.
    pub fn is_isomorphism(&self) -> bool {
        let inv = |m: &MultiMap| m.inputs()[0].dim == m.output().dim && linalg::inverse(&m.to_rows()).is_some();
        inv(&self.phi0) && inv(&self.phi1)
    }
}

/// Functoriality of `(Φ₀, Φ₁)`, source, target and naturality of `Φ₂`, and
/// coherence through `S(Φ)`.
pub fn validate_cat_hom(f: &CatHom, src: &CatPreLie2, dst: &CatPreLie2) -> Result<ValidationReport> {
    f.check_shapes(src, dst)?;
    let (a, b) = (&src.space, &dst.space);
    let mut rep = ValidationReport::new();
    let p0 = |x: &[Rational]| f.phi0.eval1(x);
    let p1 = |x: &[Rational]| f.phi1.eval1(x);
    let p2 = |x: &[Rational], y: &[Rational]| f.phi2.eval2(x, y);
    for i in 0..a.mor.dim {
        let g = a.mor.basis(i);
        rep.check("Phi1 source", &[i], scalar::sub(&b.source(&p1(&g)), &p0(&a.source(&g))));
        rep.check("Phi1 target", &[i], scalar::sub(&b.target(&p1(&g)), &p0(&a.target(&g))));
    }
    for i in 0..a.v0.dim {
        let u = a.v0.basis(i);
        rep.check("Phi1 identities", &[i], scalar::sub(&p1(&a.identity(&u)), &b.identity(&p0(&u))));
    }
    for idx in multi_indices(&[a.v0.dim, a.v0.dim]) {
        let (u, v) = (a.v0.basis(idx[0]), a.v0.basis(idx[1]));
        let m = p2(&u, &v);
        rep.check("Phi2 source", &idx, scalar::sub(&b.source(&m), &dst.so(&p0(&u), &p0(&v))));
        rep.check("Phi2 target", &idx, scalar::sub(&b.target(&m), &p0(&src.so(&u, &v))));
    }
    for idx in multi_indices(&[a.mor.dim, a.mor.dim]) {
        let (g, h) = (a.mor.basis(idx[0]), a.mor.basis(idx[1]));
        let (sg, sh, tg, th) = (a.source(&g), a.source(&h), a.target(&g), a.target(&h));
        // Φ₂(t) ∘ (Φ₁g ⋆' Φ₁h) = Φ₁(g⋆h) ∘ Φ₂(s)
        let lhs = b.compose_unchecked(&p2(&tg, &th), &dst.sm(&p1(&g), &p1(&h)));
        let rhs = b.compose_unchecked(&p1(&src.sm(&g, &h)), &p2(&sg, &sh));
        rep.check("Phi2 naturality", &idx, scalar::sub(&lhs, &rhs));
    }
    if rep.ok() {
        let s_src = functor_s_unchecked(src)?;
        let s_dst = functor_s_unchecked(dst)?;
        rep.extend(validate_hom(&hom_s_unchecked(f, src, dst)?, &s_src, &s_dst)?.prefixed("coherence"));
    }
    Ok(rep.sorted())
}

/// `T(F)`: `Φ₀ = F₀`, `Φ₁ = F₀ ⊕ F₁`, `Φ₂(u,v) = F₀u·'F₀v + F₂(u,v)`.
pub fn hom_t(f: &PreLie2Hom, src: &PreLie2Algebra, dst: &PreLie2Algebra) -> Result<CatHom> {
    f.check_shapes(src, dst)?;
    let (n0, m0) = (src.a0.dim, dst.a0.dim);
    let mor_src = src.a0.direct_sum(&src.a1);
    let mor_dst = dst.a0.direct_sum(&dst.a1);
    let phi1 = MultiMap::from_basis_images(vec![mor_src.clone()], mor_dst.clone(), |i| {
        if i[0] < n0 {
            scalar::concat(f.f0.image(&[i[0]]), &dst.a1.zero_vec())
        } else {
            scalar::concat(&scalar::zero_vec(m0), f.f1.image(&[i[0] - n0]))
        }
    });
    let phi2 = MultiMap::from_basis_images(vec![src.a0.clone(), src.a0.clone()], mor_dst, |i| {
        let obj = dst.mul00.eval2(f.f0.image(&[i[0]]), f.f0.image(&[i[1]]));
        scalar::concat(&obj, f.f2.image(i))
    });
    Ok(CatHom {
        phi0: f.f0.clone(),
        phi1,
        phi2,
    })
}

/// `S(Φ)`: `F₀ = Φ₀`, `F₁ = Φ₁` on the kernel, `F₂ = Φ₂ − 1_{sΦ₂}`.
pub fn hom_s(f: &CatHom, src: &CatPreLie2, dst: &CatPreLie2) -> Result<PreLie2Hom> {
    let r = validate_cat_hom(f, src, dst)?;
    if !r.ok() {
        return Err(Error::invalid("categorical homomorphism", r));
    }
    hom_s_unchecked(f, src, dst)
}

fn hom_s_unchecked(f: &CatHom, src: &CatPreLie2, dst: &CatPreLie2) -> Result<PreLie2Hom> {
    let (a, b) = (&src.space, &dst.space);
    let f1 = try_basis_images(vec![a.v1.clone()], b.v1.clone(), |i| {
        b.kernel_part(&f.phi1.eval1(a.kernel.image(&[i[0]])))
    })?;
    let f2 = try_basis_images(vec![a.v0.clone(), a.v0.clone()], b.v1.clone(), |i| b.kernel_part(f.phi2.image(i)))?;
    Ok(PreLie2Hom {
        f0: f.phi0.clone(),
        f1,
        f2,
    })
}

/// `Ψ∘Φ` with `(ΨΦ)₂(u,v) = Ψ₁Φ₂(u,v) ∘ Ψ₂(Φ₀u, Φ₀v)`.
pub fn compose_cat_hom(psi: &CatHom, phi: &CatHom, mid: &CatPreLie2, dst: &CatPreLie2) -> Result<CatHom> {
    let phi0 = MultiMap::compose_linear(&psi.phi0, &phi.phi0)?;
    let phi1 = MultiMap::compose_linear(&psi.phi1, &phi.phi1)?;
    let src0 = phi.phi0.inputs()[0].clone();
    let b = &dst.space;
    let phi2 = MultiMap::from_basis_images(vec![src0.clone(), src0], b.mor.clone(), |i| {
        let (x, y) = (phi.phi0.image(&[i[0]]), phi.phi0.image(&[i[1]]));
        let first = psi.phi2.eval2(x, y);
        let second = psi.phi1.eval1(phi.phi2.image(i));
        debug_assert_eq!(b.target(&first), psi.phi0.eval1(&mid.so(x, y)));
        b.compose_unchecked(&second, &first)
    });
    Ok(CatHom { phi0, phi1, phi2 })
}

/// `α : T(S(C)) → C` with `α₀ = id`, `α₁(u+m) = 1_u + K m` and
/// `α₂(u,v) = 1_{u⋆v}`.
pub fn alpha(c: &CatPreLie2) -> Result<(CatPreLie2, CatHom)> {
    let tsc = functor_t(&functor_s(c)?)?;
    let sp = &c.space;
    let n0 = sp.v0.dim;
    let phi1 = MultiMap::from_basis_images(vec![tsc.space.mor.clone()], sp.mor.clone(), |i| {
        if i[0] < n0 {
            sp.unit.image(&[i[0]]).to_vec()
        } else {
            sp.kernel.image(&[i[0] - n0]).to_vec()
        }
    });
    let phi2 = MultiMap::from_basis_images(vec![sp.v0.clone(), sp.v0.clone()], sp.mor.clone(), |i| {
        sp.identity(c.star_obj.image(i))
    });
    let a = CatHom {
        phi0: MultiMap::identity(&sp.v0),
        phi1,
        phi2,
    };
    Ok((tsc, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::prelie2::compose_hom;
    use crate::scalar::int;

    fn permutation(space: &Space, perm: &[usize]) -> MultiMap {
        MultiMap::from_basis_images(vec![space.clone()], space.clone(), |i| space.basis(perm[i[0]]))
    }

    #[test]
    fn zero_structure() {
        let z = PreLie2Algebra::zero(Space::new("A0", 2), Space::new("A1", 1));
        let c = functor_t(&z).unwrap();
        assert!(c.star_mor.is_zero());
        assert!(c.jacobiator.is_zero());
        assert!(c.validate().unwrap().ok());
        assert_eq!(functor_s(&c).unwrap(), z);
    }

    #[test]
    fn fix_b_star_expansion() {
        // C₁ = span{e₁, e₂, f}; (u+m)⋆(v+n) = u·v + u·n + m·v + (dm)·n
        let b = fixtures::fix_b();
        let c = functor_t(&b).unwrap();
        let img = |i: usize, j: usize| c.star_mor.image(&[i, j]).to_vec();
        assert_eq!(img(0, 0), vec![int(1), int(0), int(0)]);
        assert_eq!(img(0, 1), vec![int(0), int(1), int(0)]);
        assert_eq!(img(0, 2), vec![int(0), int(0), int(1)]);
        // f ⋆ f = (d f)·f = e₂·f = 0; f ⋆ e₁ = f·e₁ = 0
        assert_eq!(img(2, 2), vec![int(0); 3]);
        assert_eq!(img(2, 0), vec![int(0); 3]);
        assert_eq!(img(1, 2), vec![int(0); 3]);
        assert!(c.validate().unwrap().ok());
    }

    #[test]
    fn fix_omega_jacobiator_carries_phi() {
        let o = fixtures::fix_omega();
        let c = functor_t(&o).unwrap();
        assert!(c.validate().unwrap().ok());
        let mut nonzero = false;
        for i in multi_indices(&[2, 2, 2]) {
            let j = c.jacobiator.image(&i);
            assert_eq!(&j[2..], o.l3.image(&i));
            nonzero |= j[2] != int(0);
        }
        assert!(nonzero);
    }

    #[test]
    fn s_after_t_is_identity() {
        for (name, a) in fixtures::all_prelie2() {
            let c = functor_t(&a).unwrap();
            assert_eq!(functor_s(&c).unwrap(), a, "{name}");
        }
    }

    #[test]
    fn hom_round_trips() {
        let b = fixtures::fix_b();
        let tb = functor_t(&b).unwrap();
        let mut homs = fixtures::fix_b_endomorphisms(3, 4);
        homs.push(b.identity_hom());
        for f in homs {
            let phi = hom_t(&f, &b, &b).unwrap();
            assert!(validate_cat_hom(&phi, &tb, &tb).unwrap().ok());
            assert_eq!(hom_s(&phi, &tb, &tb).unwrap(), f);
        }
        let o = fixtures::fix_omega();
        let to = functor_t(&o).unwrap();
        for f in fixtures::fix_omega_endomorphisms(3, 2) {
            let phi = hom_t(&f, &o, &o).unwrap();
            assert!(validate_cat_hom(&phi, &to, &to).unwrap().ok());
            assert_eq!(hom_s(&phi, &to, &to).unwrap(), f);
        }
    }

    #[test]
    fn t_is_a_functor_on_homs() {
        let o = fixtures::fix_omega();
        let to = functor_t(&o).unwrap();
        let hs = fixtures::fix_omega_endomorphisms(2, 8);
        let gf = compose_hom(&hs[1], &hs[0]).unwrap();
        let lhs = hom_t(&gf, &o, &o).unwrap();
        let rhs = compose_cat_hom(&hom_t(&hs[1], &o, &o).unwrap(), &hom_t(&hs[0], &o, &o).unwrap(), &to, &to).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(hom_t(&o.identity_hom(), &o, &o).unwrap(), CatHom::identity(&to));
    }

    #[test]
    fn alpha_on_split_form_is_identity() {
        let c = functor_t(&fixtures::fix_b()).unwrap();
        let (tsc, a) = alpha(&c).unwrap();
        assert_eq!(tsc, c);
        assert_eq!(a, CatHom::identity(&c));
    }

    #[test]
    fn alpha_on_rebased_structure() {
        for (name, s) in fixtures::all_prelie2() {
            let c = functor_t(&s).unwrap();
            let n = c.space.mor.dim;
            let perm: Vec<usize> = (0..n).rev().collect();
            let mut p = permutation(&c.space.mor, &perm);
            // add a shear so the change of basis is not a permutation
            if n > 1 {
                p.image_mut(&[0])[0] += int(2);
            }
            let r = c.rebase(&p).unwrap();
            assert_ne!(r, c);
            assert!(r.validate().unwrap().ok(), "{name}");
            assert_eq!(functor_s(&r).unwrap(), s, "{name}");
            let (tsc, a) = alpha(&r).unwrap();
            assert!(a.is_isomorphism());
            assert_ne!(a.phi1, MultiMap::identity(&r.space.mor));
            let rep = validate_cat_hom(&a, &tsc, &r).unwrap();
            assert!(rep.ok(), "{name}: {rep}");
        }
    }

    #[test]
    fn broken_star_is_reported() {
        let mut c = functor_t(&fixtures::fix_b()).unwrap();
        c.star_mor.image_mut(&[2, 2])[2] += int(1);
        let r = c.validate().unwrap();
        assert!(!r.ok());
        assert!(matches!(functor_s(&c), Err(Error::Invalid { .. })));
    }

    #[test]
    fn broken_jacobiator_changes_its_target() {
        let mut c = functor_t(&fixtures::fix_b()).unwrap();
        c.jacobiator.image_mut(&[0, 1, 1])[2] += int(1);
        c.jacobiator.image_mut(&[1, 0, 1])[2] -= int(1);
        let r = c.validate().unwrap();
        assert!(r.mentions("J target"));
    }

    #[test]
    fn composition_requires_matching_ends() {
        let c = functor_t(&fixtures::fix_b()).unwrap();
        let sp = &c.space;
        let f = sp.mor.basis(2);
        assert!(sp.compose(&f, &f).is_err());
        let e2 = sp.identity(&sp.v0.basis(1));
        // f : 0 → e₂, so 1_{e₂} ∘ f = f
        assert_eq!(sp.compose(&e2, &f).unwrap(), f);
    }
}
