//! Named example structures used by tests, benches and the CLI corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crossed::{ideal_crossed_module, PreLieCrossedModule};
use crate::prelie::{invariant_forms, skeletal_from_form, Cochain, InvariantForm, PreLieAlgebra};
use crate::prelie2::{build_skeletal, complete_hom, PreLie2Algebra, PreLie2Hom};
use crate::scalar::{frac, int, Rational, Vector};
use crate::tensor::{MultiMap, Space};

pub use crate::prelie2::lift;

fn table(space: &Space, entries: &[((usize, usize), Vector)]) -> MultiMap {
    MultiMap::from_basis_images(vec![space.clone(), space.clone()], space.clone(), |i| {
        entries
            .iter()
            .find(|(k, _)| *k == (i[0], i[1]))
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| space.zero_vec())
    })
}

/// `e₁·e₁ = e₁`, `e₁·e₂ = e₂`, all other products zero.
pub fn fix_a() -> PreLieAlgebra {
    let s = Space::new("A", 2);
    let mul = table(&s, &[((0, 0), s.basis(0)), ((0, 1), s.basis(1))]);
    PreLieAlgebra { space: s, mul }
}

/// `e₁·e₁ = −e₁`, `e₂·e₁ = −e₂`, all other products zero. Carries a nonzero
/// skew invariant form.
pub fn fix_omega_algebra() -> PreLieAlgebra {
    let s = Space::new("A", 2);
    let mul = table(&s, &[((0, 0), vec![int(-1), int(0)]), ((1, 0), vec![int(0), int(-1)])]);
    PreLieAlgebra { space: s, mul }
}

/// The invariant form of [`fix_omega_algebra`], as found by the linear solve.
pub fn fix_omega_form() -> InvariantForm {
    invariant_forms(&fix_omega_algebra())
        .into_iter()
        .next()
        .expect("the invariant form space is one-dimensional")
}

/// Skeletal pre-Lie 2-algebra with `A₁ = k`, zero mixed products and
/// `l₃(u,v,w) = ω(u·v − v·u, w)`.
pub fn fix_omega() -> PreLie2Algebra {
    skeletal_from_form(&fix_omega_algebra(), &fix_omega_form()).expect("invariant form")
}

/// Strict pre-Lie 2-algebra over [`fix_a`] with `A₁ = span{f}`, `d f = e₂`,
/// `e₁·f = f` and all other mixed products zero.
pub fn fix_b() -> PreLie2Algebra {
    let a = fix_a();
    let a1 = Space::new("A1", 1);
    let mut b = PreLie2Algebra::zero(a.space.clone().relabel("A0"), a1.clone());
    b.mul00 = a.mul.relabeled(vec![b.a0.clone(), b.a0.clone()], b.a0.clone());
    b.d = MultiMap::linear(&a1, &b.a0, &[vec![int(0), int(1)]]);
    b.mul01.image_mut(&[0, 0])[0] = int(1);
    b
}

/// The crossed module of the ideal `span{e₂}` of [`fix_a`].
pub fn ideal_cm() -> PreLieCrossedModule {
    ideal_crossed_module(&fix_a(), &[1], ("A0", "A1")).expect("span{e2} is an ideal")
}

/// Further valid pre-Lie 2-algebras built from the base fixtures.
pub fn derived_prelie2() -> Vec<(&'static str, PreLie2Algebra)> {
    let a = fix_a();
    let o = fix_omega_algebra();
    let zero3 = |x: &PreLieAlgebra, v: &Space| Cochain::new(MultiMap::zeros(vec![x.space.clone(); 3], v.clone()));
    let left = a.left_rep();
    let dual = o.dual_rep();
    vec![
        ("lift-A", lift(&a)),
        ("skeletal-A-left", build_skeletal(&a, &left, &zero3(&a, &left.space)).expect("valid")),
        ("skeletal-omega-dual", build_skeletal(&o, &dual, &zero3(&o, &dual.space)).expect("valid")),
        ("identity-A", identity_strict(&a)),
    ]
}

/// Strict structure `A --id--> A` with both mixed products equal to the
/// product of `A`.
pub fn identity_strict(a: &PreLieAlgebra) -> PreLie2Algebra {
    let a0 = a.space.clone().relabel("A0");
    let a1 = a.space.clone().relabel("A1");
    let mut s = PreLie2Algebra::zero(a0.clone(), a1.clone());
    s.d = MultiMap::identity(&a1).relabeled(vec![a1.clone()], a0.clone());
    s.mul00 = a.mul.clone().relabeled(vec![a0.clone(), a0.clone()], a0.clone());
    s.mul01 = a.mul.clone().relabeled(vec![a0.clone(), a1.clone()], a1.clone());
    s.mul10 = a.mul.clone().relabeled(vec![a1.clone(), a0.clone()], a1);
    s
}

/// Every valid pre-Lie 2-algebra fixture, by name.
pub fn all_prelie2() -> Vec<(&'static str, PreLie2Algebra)> {
    let mut out = vec![("FIX-B", fix_b()), ("FIX-Omega", fix_omega())];
    out.extend(derived_prelie2());
    out
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = small(rng);
        if x != int(0) {
            return x;
        }
    }
}

/// `e₁ ↦ e₁ + a e₂`, `e₂ ↦ b e₂` is an endomorphism of both 2-dimensional
/// base algebras.
fn triangular(space: &Space, a: &Rational, b: &Rational) -> MultiMap {
    MultiMap::linear(space, space, &[vec![int(1), a.clone()], vec![int(0), b.clone()]])
}

/// Seeded random endomorphisms of [`fix_b`].
pub fn fix_b_endomorphisms(count: usize, seed: u64) -> Vec<PreLie2Hom> {
    let b = fix_b();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (x, y) = (small(&mut rng), nonzero(&mut rng));
            let f0 = triangular(&b.a0, &x, &y);
            let f1 = MultiMap::linear(&b.a1, &b.a1, &[vec![y]]);
            complete_hom(&f0, &f1, &b, &b).expect("shapes").expect("completion exists").0
        })
        .collect()
}

/// Seeded random endomorphisms of [`fix_omega`]; `F₁` scales by the
/// determinant of `F₀` and `F₂` is a random completion.
pub fn fix_omega_endomorphisms(count: usize, seed: u64) -> Vec<PreLie2Hom> {
    let o = fix_omega();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (x, y) = (small(&mut rng), nonzero(&mut rng));
            let f0 = triangular(&o.a0, &x, &y);
            let f1 = MultiMap::linear(&o.a1, &o.a1, &[vec![y]]);
            let (mut f, ker) = complete_hom(&f0, &f1, &o, &o).expect("shapes").expect("completion exists");
            for k in &ker {
                f.f2 = f.f2.add(&k.scaled(&small(&mut rng)));
            }
            f
        })
        .collect()
}
