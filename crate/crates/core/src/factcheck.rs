//! Connectivity criteria: absolute density of a functor via its
//! factorization categories, cofibering and fibering of Reedy functors,
//! Grothendieck fibrations, and the comma Reedy structure on `p ↓ p`.

use std::sync::Arc;

use crate::fincat::{comma_category, labelled_over, Arr, CommaCategory, FinCat, FinFunctor, Obj};
use crate::reedy::ReedyStructure;
use crate::report::CheckReport;

/// The category of `F`-factorizations of an arrow `f: b → b'` of the target:
/// objects `(a, u: b → F a, v: F a → b')` with `v∘u = f`, morphisms the
/// arrows `h: a → a'` with `F h∘u = u'` and `v'∘F h = v`.
#[derive(Debug, Clone)]
pub struct FactorizationCategory {
    pub arrow: Arr,
    pub category: Arc<FinCat>,
    /// `(a, u, v)` per object.
    pub objects: Vec<(Obj, Arr, Arr)>,
    /// The underlying source arrow per morphism.
    pub morphisms: Vec<Arr>,
}

/// `Fact_{C+}(α, σ)` for a functor `G: C → D`, `α ∈ D`, `β ∈ C` and
/// `σ: α → G β` in `D_+`: objects `(γ, μ: α → G γ, ν: γ → β)` with `ν` a
/// non-identity arrow of `C_+` and `G ν∘μ = σ`; morphisms `τ: γ → γ'` with
/// `ν'∘τ = ν` and `G τ∘μ = μ'`.
#[derive(Debug, Clone)]
pub struct FactPlusCategory {
    pub alpha: Obj,
    pub beta: Obj,
    pub sigma: Arr,
    pub category: Arc<FinCat>,
    /// `(γ, μ, ν)` per object.
    pub objects: Vec<(Obj, Arr, Arr)>,
    pub morphisms: Vec<Arr>,
}

pub fn factorization_category(functor: &FinFunctor, arrow: Arr) -> FactorizationCategory {
    let (a, b) = (&*functor.source, &*functor.target);
    let (src, tgt) = (b.dom(arrow), b.cod(arrow));
    let mut objects = Vec::new();
    for x in 0..a.n_objects() {
        let fx = functor.obj[x];
        for &u in b.hom(src, fx) {
            for &v in b.hom(fx, tgt) {
                if b.comp(v, u) == arrow {
                    objects.push((x, u, v));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    for (i, &(x, u, v)) in objects.iter().enumerate() {
        for (j, &(y, u2, v2)) in objects.iter().enumerate() {
            for &h in a.hom(x, y) {
                let fh = functor.arr[h];
                if b.comp(fh, u) == u2 && b.comp(v2, fh) == v {
                    morphisms.push((i, j, h));
                }
            }
        }
    }
    let names = objects
        .iter()
        .map(|&(x, u, v)| format!("({},{},{})", a.object_id(x), b.arrow_id(u), b.arrow_id(v)))
        .collect();
    let category = Arc::new(labelled_over(names, a, &morphisms));
    FactorizationCategory { arrow, category, objects, morphisms: morphisms.iter().map(|m| m.2).collect() }
}

pub fn fact_plus_category(g: &FinFunctor, sc: &ReedyStructure, alpha: Obj, beta: Obj, sigma: Arr) -> FactPlusCategory {
    let (c, d) = (&*g.source, &*g.target);
    let mut objects = Vec::new();
    for gamma in 0..c.n_objects() {
        for &nu in c.hom(gamma, beta) {
            if !sc.plus[nu] || c.is_identity(nu) {
                continue;
            }
            for &mu in d.hom(alpha, g.obj[gamma]) {
                if d.comp(g.arr[nu], mu) == sigma {
                    objects.push((gamma, mu, nu));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    for (i, &(x, mu, nu)) in objects.iter().enumerate() {
        for (j, &(y, mu2, nu2)) in objects.iter().enumerate() {
            for &tau in c.hom(x, y) {
                if c.comp(nu2, tau) == nu && d.comp(g.arr[tau], mu) == mu2 {
                    morphisms.push((i, j, tau));
                }
            }
        }
    }
    let names = objects
        .iter()
        .map(|&(x, mu, nu)| format!("({},{},{})", c.object_id(x), d.arrow_id(mu), c.arrow_id(nu)))
        .collect();
    let category = Arc::new(labelled_over(names, c, &morphisms));
    FactPlusCategory { alpha, beta, sigma, category, objects, morphisms: morphisms.iter().map(|m| m.2).collect() }
}

/// A failing instance: the offending category and its components by object id.
#[derive(Debug, Clone)]
pub struct ConnectivityWitness {
    pub label: String,
    pub category: Arc<FinCat>,
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ConnectivityReport {
    pub report: CheckReport,
    pub witnesses: Vec<ConnectivityWitness>,
}

impl ConnectivityReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn components_by_name(c: &FinCat) -> Vec<Vec<String>> {
    c.components().into_iter().map(|comp| comp.into_iter().map(|o| c.object_id(o).to_string()).collect()).collect()
}

fn witness(label: String, category: &Arc<FinCat>) -> ConnectivityWitness {
    ConnectivityWitness { label, category: category.clone(), components: components_by_name(category) }
}

/// `F` is absolutely dense iff every factorization category is non-empty
/// and connected.
pub fn check_absolutely_dense(functor: &FinFunctor) -> ConnectivityReport {
    let mut report = CheckReport::new("absolutely-dense");
    let mut witnesses = Vec::new();
    let b = &*functor.target;
    for f in 0..b.n_arrows() {
        let fc = factorization_category(functor, f);
        let n = fc.category.components().len();
        if n != 1 {
            let label = format!("`{}`", b.arrow_id(f));
            let rule = if n == 0 { "factorization-empty" } else { "factorization-disconnected" };
            report.fail(rule, format!("{label}: {n} components"));
            witnesses.push(witness(label, &fc.category));
        }
    }
    ConnectivityReport { report, witnesses }
}

/// Every `Fact_{C+}(α, σ)` is empty or connected.
pub fn check_cofibering(g: &FinFunctor, sc: &ReedyStructure, sd: &ReedyStructure) -> ConnectivityReport {
    let mut report = CheckReport::new("cofibering");
    let mut witnesses = Vec::new();
    let (c, d) = (&*g.source, &*g.target);
    for alpha in 0..d.n_objects() {
        for beta in 0..c.n_objects() {
            for &sigma in d.hom(alpha, g.obj[beta]) {
                if !sd.plus[sigma] {
                    continue;
                }
                let fp = fact_plus_category(g, sc, alpha, beta, sigma);
                let n = fp.category.components().len();
                if n > 1 {
                    let label = format!("alpha `{}`, beta `{}`, sigma `{}`", d.object_id(alpha), c.object_id(beta), d.arrow_id(sigma));
                    report.fail("fact-disconnected", format!("{label}: {n} components"));
                    witnesses.push(witness(label, &fp.category));
                }
            }
        }
    }
    ConnectivityReport { report, witnesses }
}

/// `G` is fibering when `G^op` is cofibering.
pub fn check_fibering(g: &FinFunctor, sc: &ReedyStructure, sd: &ReedyStructure) -> ConnectivityReport {
    let mut r = check_cofibering(&g.opposite(), &sc.opposite(), &sd.opposite());
    r.report.check = "fibering".into();
    r
}

/// Is `phi: e' → e` cartesian for `G`: every `psi: e'' → e` with
/// `G psi = G phi∘g` factors uniquely as `phi∘chi` with `G chi = g`.
pub fn is_cartesian(g: &FinFunctor, phi: Arr) -> bool {
    let (e, b) = (&*g.source, &*g.target);
    let (e1, e0) = (e.dom(phi), e.cod(phi));
    let gphi = g.arr[phi];
    for &psi in e.arrows_into(e0) {
        let e2 = e.dom(psi);
        for &gg in b.hom(g.obj[e2], g.obj[e1]) {
            if b.comp(gphi, gg) != g.arr[psi] {
                continue;
            }
            let n = e.hom(e2, e1).iter().filter(|&&chi| g.arr[chi] == gg && e.comp(phi, chi) == psi).count();
            if n != 1 {
                return false;
            }
        }
    }
    true
}

/// Every `f: d → G e` has a cartesian lift with codomain `e`.
pub fn check_grothendieck_fibration(g: &FinFunctor) -> CheckReport {
    let mut report = CheckReport::new("grothendieck-fibration");
    let (e, b) = (&*g.source, &*g.target);
    for e0 in 0..e.n_objects() {
        for &f in b.arrows_into(g.obj[e0]) {
            let lifted = e.arrows_into(e0).iter().any(|&phi| g.arr[phi] == f && is_cartesian(g, phi));
            if !lifted {
                report.fail("no-cartesian-lift", format!("`{}` into `{}`", b.arrow_id(f), e.object_id(e0)));
            }
        }
    }
    report
}

/// `Reedy functor` check: plus arrows go to plus arrows, minus to minus.
pub fn check_preserves_classes(g: &FinFunctor, sc: &ReedyStructure, sd: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::new("preserves-classes");
    let c = &*g.source;
    for f in 0..c.n_arrows() {
        if sc.plus[f] && !sd.plus[g.arr[f]] {
            report.fail("plus-preserved", format!("`{}`", c.arrow_id(f)));
        }
        if sc.minus[f] && !sd.minus[g.arr[f]] {
            report.fail("minus-preserved", format!("`{}`", c.arrow_id(f)));
        }
    }
    report
}

/// The comma Reedy structure: degree `deg a + deg c`, classes componentwise.
pub fn comma_reedy(comma: &CommaCategory, s0: &ReedyStructure, s1: &ReedyStructure) -> ReedyStructure {
    let degree = comma.objects.iter().map(|&(a, c, _)| s0.degree[a] + s1.degree[c]).collect();
    let plus = comma.arrows.iter().map(|&(h, k)| s0.plus[h] && s1.plus[k]).collect();
    let minus = comma.arrows.iter().map(|&(h, k)| s0.minus[h] && s1.minus[k]).collect();
    ReedyStructure { base: comma.category.clone(), degree, plus, minus }
}

/// `p ↓ p` with its projections and comma Reedy structure.
pub fn self_comma(p: &FinFunctor, s: &ReedyStructure) -> (CommaCategory, ReedyStructure) {
    let comma = comma_category(p, p);
    let st = comma_reedy(&comma, s, s);
    (comma, st)
}

/// The fiber `P_α` of `π_1` over `α`: the objects `(Z, α, t)` of `p ↓ p`
/// and the arrows `(h, id_α)` between them.
pub fn p_fiber(comma: &CommaCategory, alpha: Obj) -> Vec<Obj> {
    (0..comma.objects.len()).filter(|&i| comma.objects[i].1 == alpha).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reedy::induce_dr_structure;
    use crate::unroll::{build_dr, HOM_BOUND};
    use crate::zoo::{self, GroupTable};

    #[test]
    fn identity_is_dense() {
        for c in [zoo::walking_iso(), zoo::poset_chain(3), FinCat::terminal()] {
            assert!(check_absolutely_dense(&FinFunctor::identity(Arc::new(c))).passed());
        }
    }

    #[test]
    fn p_is_dense_for_groups() {
        for g in [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::symmetric3()] {
            let ex = zoo::group_category(&g).unwrap();
            let u = build_dr(&ex.presentation, HOM_BOUND).unwrap();
            assert!(check_absolutely_dense(&u.projection).passed());
        }
    }

    #[test]
    fn discrete_inclusion_is_not_dense() {
        let fx = zoo::discrete_into_walking_iso();
        let r = check_absolutely_dense(fx.inclusion());
        assert!(!r.passed());
        let w = r.witnesses.iter().find(|w| w.label == "`f`").expect("iso arrow fails");
        assert_eq!(w.components.len(), 2);
        assert_eq!(w.components, vec![vec!["(a,id_a,f)".to_string()], vec!["(b,f,id_b)".to_string()]]);
    }

    #[test]
    fn identity_is_cofibering() {
        let ex = zoo::group_category(&GroupTable::cyclic(2)).unwrap();
        let id = FinFunctor::identity(ex.reedy.base.clone());
        assert!(check_cofibering(&id, &ex.reedy, &ex.reedy).passed());
        let cube = zoo::cube_category(&zoo::CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        let id = FinFunctor::identity(cube.category.clone());
        assert!(check_cofibering(&id, &cube.reedy, &cube.reedy).passed());
        assert!(check_fibering(&id, &cube.reedy, &cube.reedy).passed());
    }

    #[test]
    fn counterexample_is_not_cofibering() {
        let fx = zoo::non_cofibering_fixture();
        let r = check_cofibering(&fx.functor, &fx.source_reedy, &fx.target_reedy);
        assert_eq!(r.report.violation_count, 1);
        assert_eq!(r.witnesses[0].components.len(), 2);
        assert_eq!(r.witnesses[0].category.n_arrows(), 2);
    }

    #[test]
    fn pi0_over_z2() {
        let ex = zoo::group_category(&GroupTable::cyclic(2)).unwrap();
        let u = build_dr(&ex.presentation, HOM_BOUND).unwrap();
        let s = induce_dr_structure(&u, &ex.reedy, &ex.sub_reedy).unwrap();
        let (comma, st) = self_comma(&u.projection, &s);
        assert!(check_grothendieck_fibration(&comma.proj0).passed());
        assert!(check_preserves_classes(&comma.proj0, &st, &s).passed());
        // identity σ at the target of a twisted pair: the two lifts (ε, ε, e)
        // and (ε, ε, g) are not connected
        let r = check_cofibering(&comma.proj0, &st, &s);
        assert_eq!(r.report.violation_count, 4);
        for w in &r.witnesses {
            assert_eq!(w.components.len(), 2);
            assert!(w.label.contains("|id<*>|id<*>`"), "{}", w.label);
        }
    }

    #[test]
    fn inclusion_is_not_a_fibration() {
        let fx = zoo::discrete_into_walking_iso();
        let r = check_grothendieck_fibration(fx.inclusion());
        assert!(r.has_rule("no-cartesian-lift"));
    }
}
