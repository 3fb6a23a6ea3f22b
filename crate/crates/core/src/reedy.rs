//! Reedy structures on finite categories: axiom checkers for the
//! generalized, strict and generalized-direct variants, the lifting
//! condition for an inclusion `c: R_0 → R`, and the structure induced on
//! the unrolled category together with its constructive factorization.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Arr, FinCat, Obj};
use crate::freecat::{AmalgamPresentation, NFWord};
use crate::report::CheckReport;
use crate::unroll::UnrolledCategory;

/// Degree function plus the two distinguished wide subcategories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReedyStructure {
    pub base: Arc<FinCat>,
    pub degree: Vec<usize>,
    pub plus: Vec<bool>,
    pub minus: Vec<bool>,
}

/// A factorization `f = p ∘ m` through `z`, with `m` in minus and `p` in plus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    pub middle: Obj,
    pub minus: Arr,
    pub plus: Arr,
}

impl ReedyStructure {
    pub fn new(base: Arc<FinCat>, degree: Vec<usize>, plus: Vec<bool>, minus: Vec<bool>) -> Result<Self> {
        if degree.len() != base.n_objects() || plus.len() != base.n_arrows() || minus.len() != base.n_arrows() {
            return Err(Error::StructureViolation("annotation sizes do not match the category".into()));
        }
        Ok(ReedyStructure { base, degree, plus, minus })
    }

    /// Structure with the given degrees where every arrow is in plus and only
    /// isomorphisms are in minus.
    pub fn all_plus(base: Arc<FinCat>, degree: Vec<usize>) -> Self {
        let plus = vec![true; base.n_arrows()];
        let minus = (0..base.n_arrows()).map(|f| base.is_iso(f)).collect();
        ReedyStructure { base, degree, plus, minus }
    }

    /// The structure on the opposite category: plus and minus trade places.
    pub fn opposite(&self) -> ReedyStructure {
        ReedyStructure {
            base: Arc::new(self.base.opposite()),
            degree: self.degree.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    fn deg_of(&self, f: Arr) -> (usize, usize) {
        (self.degree[self.base.dom(f)], self.degree[self.base.cod(f)])
    }

    /// Every way of writing `f` as a minus arrow followed by a plus arrow.
    pub fn factorizations(&self, f: Arr) -> Vec<Factorization> {
        let c = &*self.base;
        let (a, b) = (c.dom(f), c.cod(f));
        let mut out = Vec::new();
        for z in 0..c.n_objects() {
            for &m in c.hom(a, z) {
                if !self.minus[m] {
                    continue;
                }
                for &p in c.hom(z, b) {
                    if self.plus[p] && c.comp(p, m) == f {
                        out.push(Factorization { middle: z, minus: m, plus: p });
                    }
                }
            }
        }
        out
    }

    /// Every way of writing `f` as a plus arrow followed by a minus arrow.
    pub fn reverse_factorizations(&self, f: Arr) -> Vec<Factorization> {
        let c = &*self.base;
        let (a, b) = (c.dom(f), c.cod(f));
        let mut out = Vec::new();
        for z in 0..c.n_objects() {
            for &p in c.hom(a, z) {
                if !self.plus[p] {
                    continue;
                }
                for &m in c.hom(z, b) {
                    if self.minus[m] && c.comp(m, p) == f {
                        out.push(Factorization { middle: z, minus: m, plus: p });
                    }
                }
            }
        }
        out
    }
}

fn id(c: &FinCat, f: Arr) -> &str {
    c.arrow_id(f)
}

/// Exhaustive check of the generalized Reedy axioms.
pub fn check_generalized_reedy(s: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::new("generalized-reedy");
    let c = &*s.base;
    for o in 0..c.n_objects() {
        let i = c.id(o);
        if !s.plus[i] || !s.minus[i] {
            report.fail("identities", format!("identity of `{}` missing from plus or minus", c.object_id(o)));
        }
    }
    for f in 0..c.n_arrows() {
        for &g in c.arrows_from(c.cod(f)) {
            let gf = c.comp(g, f);
            if s.plus[f] && s.plus[g] && !s.plus[gf] {
                report.fail("plus-closed", format!("`{}` after `{}`", id(c, g), id(c, f)));
            }
            if s.minus[f] && s.minus[g] && !s.minus[gf] {
                report.fail("minus-closed", format!("`{}` after `{}`", id(c, g), id(c, f)));
            }
        }
    }
    for f in 0..c.n_arrows() {
        let iso = c.is_iso(f);
        if (s.plus[f] && s.minus[f]) != iso {
            report.fail("plus-minus-isos", format!("`{}` (iso: {iso})", id(c, f)));
        }
        let (da, db) = s.deg_of(f);
        if iso {
            if da != db {
                report.fail("iso-degree", format!("`{}`: {da} -> {db}", id(c, f)));
            }
        } else {
            if s.plus[f] && db <= da {
                report.fail("plus-degree", format!("`{}`: {da} -> {db}", id(c, f)));
            }
            if s.minus[f] && db >= da {
                report.fail("minus-degree", format!("`{}`: {da} -> {db}", id(c, f)));
            }
        }
    }
    for f in 0..c.n_arrows() {
        let facts = s.factorizations(f);
        if facts.is_empty() {
            report.fail("factorization-exists", format!("`{}`", id(c, f)));
            continue;
        }
        let first = facts[0];
        for other in &facts[1..] {
            let related = c.hom(first.middle, other.middle).iter().any(|&theta| {
                c.is_iso(theta) && c.comp(theta, first.minus) == other.minus && c.comp(other.plus, theta) == first.plus
            });
            if !related {
                report.fail(
                    "factorization-unique-up-to-iso",
                    format!("`{}` through `{}` and `{}`", id(c, f), c.object_id(first.middle), c.object_id(other.middle)),
                );
            }
        }
    }
    for m in 0..c.n_arrows() {
        if !s.minus[m] {
            continue;
        }
        for &theta in c.hom(c.cod(m), c.cod(m)) {
            if c.is_iso(theta) && !c.is_identity(theta) && c.comp(theta, m) == m {
                report.fail("iso-fixes-minus", format!("`{}` fixes `{}`", id(c, theta), id(c, m)));
            }
        }
    }
    report
}

/// Generalized Reedy, only identity isomorphisms, strictly unique factorizations.
pub fn check_strict(s: &ReedyStructure) -> CheckReport {
    let mut report = check_generalized_reedy(s);
    report.check = "strict-reedy".into();
    let c = &*s.base;
    for f in 0..c.n_arrows() {
        if c.is_iso(f) && !c.is_identity(f) {
            report.fail("only-identity-isos", format!("`{}`", id(c, f)));
        }
    }
    report.absorb(check_unique_factorization(s));
    report
}

/// Generalized Reedy where the minus class holds only isomorphisms.
pub fn check_generalized_direct(s: &ReedyStructure) -> CheckReport {
    let mut report = check_generalized_reedy(s);
    report.check = "generalized-direct".into();
    let c = &*s.base;
    for f in 0..c.n_arrows() {
        if s.minus[f] && !c.is_iso(f) {
            report.fail("minus-only-isos", format!("`{}`", id(c, f)));
        }
    }
    report
}

/// Every arrow has exactly one minus-then-plus factorization.
pub fn check_unique_factorization(s: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::new("unique-factorization");
    let c = &*s.base;
    for f in 0..c.n_arrows() {
        let n = s.factorizations(f).len();
        if n != 1 {
            report.fail("factorization-strictly-unique", format!("`{}` has {n} factorizations", id(c, f)));
        }
    }
    report
}

/// Every arrow `f: a → b` of `R` admits isos `w: a ≅ c(x)`, `w': b ≅ c(y)`
/// and `k: x → y` in `R_0` with `w'∘f = c(k)∘w`.
pub fn check_lifting_condition(pres: &AmalgamPresentation, s0: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::new("lifting-condition");
    let strict = check_strict(s0);
    if !strict.passed() {
        report.fail("sub-strict", format!("R_0 is not strict Reedy ({} violations)", strict.violation_count));
    }
    let r = &*pres.r;
    let mut in_image = vec![false; r.n_objects()];
    for &o in &pres.c.obj {
        in_image[o] = true;
    }
    let isos_from = |a: Obj| -> Vec<Arr> {
        r.arrows_from(a).iter().copied().filter(|&w| r.is_iso(w) && in_image[r.cod(w)]).collect()
    };
    for f in 0..r.n_arrows() {
        let (a, b) = (r.dom(f), r.cod(f));
        let lifts = isos_from(a).into_iter().any(|w| {
            let w_inv = r.inverse(w).expect("iso");
            isos_from(b).into_iter().any(|w2| pres.is_c_letter(r.comp(w2, r.comp(f, w_inv))))
        });
        if !lifts {
            report.fail("unliftable", format!("`{}`", r.arrow_id(f)));
        }
    }
    report
}

/// The shape of a component word: an optional `c`-letter (its `R_0`
/// preimage) followed by an optional free letter, in application order.
fn split_component(pres: &AmalgamPresentation, w: &NFWord) -> Option<(Option<Arr>, Option<Arr>)> {
    match w.letters.as_slice() {
        [] => Some((None, None)),
        [l] => Some(match pres.preimage(*l) {
            Some(k) => (Some(k), None),
            None => (None, Some(*l)),
        }),
        [l1, l2] => match (pres.preimage(*l1), pres.preimage(*l2)) {
            (Some(k), None) => Some((Some(k), Some(*l2))),
            _ => None,
        },
        _ => None,
    }
}

fn is_plus_component(pres: &AmalgamPresentation, s0: &ReedyStructure, w: &NFWord) -> bool {
    match split_component(pres, w) {
        Some((k, free)) => k.is_none_or(|k| s0.plus[k]) && free.is_none_or(|l| pres.r.is_iso(l)),
        None => false,
    }
}

fn is_minus_component(pres: &AmalgamPresentation, s0: &ReedyStructure, w: &NFWord) -> bool {
    match split_component(pres, w) {
        Some((k, None)) => k.is_none_or(|k| s0.minus[k]),
        _ => false,
    }
}

/// The strict Reedy structure on `D_R`: degrees `deg(y) − deg(x) + k`,
/// plus = both components of the form (iso letter)∘(letter from `R_{0,+}`),
/// minus = both components empty or a single letter from `R_{0,−}`.
pub fn induce_dr_structure(u: &UnrolledCategory, s: &ReedyStructure, s0: &ReedyStructure) -> Result<ReedyStructure> {
    let pres = &u.presentation;
    let degree = (0..u.category.n_objects()).map(|x| u.degree(x, s)).collect::<Result<Vec<_>>>()?;
    let mut plus = Vec::with_capacity(u.category.n_arrows());
    let mut minus = Vec::with_capacity(u.category.n_arrows());
    for m in &u.morphisms {
        plus.push(is_plus_component(pres, s0, &m.f) && is_plus_component(pres, s0, &m.f2));
        minus.push(is_minus_component(pres, s0, &m.f) && is_minus_component(pres, s0, &m.f2));
    }
    let st = ReedyStructure { base: u.category.clone(), degree, plus, minus };
    let c = &*st.base;
    for f in 0..c.n_arrows() {
        if c.is_identity(f) {
            continue;
        }
        let (da, db) = st.deg_of(f);
        if (st.plus[f] && db <= da) || (st.minus[f] && db >= da) {
            return Err(Error::StructureViolation(format!("`{}` does not move degree the right way ({da} -> {db})", c.arrow_id(f))));
        }
    }
    Ok(st)
}

/// Builds the minus-then-plus factorization of a `D_R` morphism from the
/// factorizations of its components in `R_0`. Returns `(minus, plus)`.
pub fn reedy_factor_dr(u: &UnrolledCategory, s0: &ReedyStructure, morphism: Arr) -> Result<(Arr, Arr)> {
    let pres = &u.presentation;
    let r0 = &*pres.r0;
    let m = &u.morphisms[morphism];
    let x = &u.objects[m.from];
    let bad = |what: &str| Error::StructureViolation(format!("{what} in `{}`", u.category.arrow_id(morphism)));
    let (fk, fw) = split_component(pres, &m.f).ok_or_else(|| bad("component f is not of the form w∘f_s"))?;
    let (gk, gw) = split_component(pres, &m.f2).ok_or_else(|| bad("component f' is not of the form w'∘f'_s"))?;
    let word = |k: Option<Arr>, w: Option<Arr>, src: Obj| -> Result<NFWord> {
        let mut letters = Vec::new();
        if let Some(k) = k {
            letters.push(pres.c.arr[k]);
        }
        if let Some(w) = w {
            letters.push(w);
        }
        pres.normalize(src, &letters)
    };
    // f2 = (w' ∘ p) ∘ m with m ∈ R_{0,-}, p ∈ R_{0,+}
    let (g_minus, g_plus) = match gk {
        None => (None, None),
        Some(k) => {
            let fact = *s0.factorizations(k).first().ok_or_else(|| bad("no R_0 factorization of f'_s"))?;
            (Some(fact.minus), Some(fact.plus))
        }
    };
    // f = m ∘ (w ∘ q): the outer part must be minus, the inner part plus
    let (f_minus, f_plus) = match (fk, fw) {
        (None, _) => (None, None),
        (Some(k), Some(_)) => {
            if !s0.plus[k] {
                return Err(bad("free isomorphism after a non-plus R_0 arrow in f"));
            }
            (None, Some(k))
        }
        (Some(k), None) => {
            let fact = *s0.reverse_factorizations(k).first().ok_or_else(|| bad("no plus-then-minus R_0 factorization of f_s"))?;
            (Some(fact.minus), Some(fact.plus))
        }
    };
    let y = &u.objects[m.to];
    let drop_id = |k: Option<Arr>| k.filter(|&k| !r0.is_identity(k));
    let f2_minus = word(drop_id(g_minus), None, x.target)?;
    let f_minus_w = match drop_id(f_minus) {
        Some(k) => word(Some(k), None, pres.c.obj[r0.dom(k)])?,
        None => NFWord::empty(x.source),
    };
    let z_word = pres.nf_compose(&f2_minus, &pres.nf_compose(&x.word, &f_minus_w)?)?;
    let z = u.object_of(&z_word).ok_or_else(|| bad("middle object is not in D_R"))?;
    let zo = &u.objects[z];
    let f2_plus = word(drop_id(g_plus), gw, zo.target)?;
    let f_plus_w = word(drop_id(f_plus), fw, y.source)?;
    let minus_arrow = u.morphism_of(m.from, z, &f_minus_w, &f2_minus).ok_or_else(|| bad("minus half not a morphism"))?;
    let plus_arrow = u.morphism_of(z, m.to, &f_plus_w, &f2_plus).ok_or_else(|| bad("plus half not a morphism"))?;
    if u.category.comp(plus_arrow, minus_arrow) != morphism {
        return Err(bad("factors do not compose back"));
    }
    Ok((minus_arrow, plus_arrow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, CubeSpec, GroupTable};

    #[test]
    fn groups_are_generalized_direct_not_strict() {
        for g in [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::symmetric3()] {
            let ex = zoo::group_category(&g).unwrap();
            assert!(check_generalized_reedy(&ex.reedy).passed());
            assert!(check_generalized_direct(&ex.reedy).passed());
            let strict = check_strict(&ex.reedy);
            assert!(!strict.passed());
            assert!(strict.has_rule("only-identity-isos"));
        }
    }

    #[test]
    fn cubes_pass_their_axioms() {
        let sym = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        assert!(check_generalized_reedy(&sym.reedy).passed());
        assert!(check_generalized_direct(&sym.reedy).passed());
        let mono = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: false, degeneracies: false });
        assert!(check_strict(&mono.reedy).passed());
        let degen = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: false, degeneracies: true });
        let r = check_strict(&degen.reedy);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(!check_generalized_direct(&degen.reedy).passed());
    }

    #[test]
    fn removing_a_face_breaks_factorization() {
        let sym = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        let mut broken = sym.reedy.clone();
        let c = &*broken.base;
        let face = (0..c.n_arrows()).find(|&f| c.dom(f) == 0 && c.cod(f) == 1).unwrap();
        broken.plus[face] = false;
        let r = check_generalized_reedy(&broken);
        assert!(r.has_rule("factorization-exists"));
    }

    #[test]
    fn degree_preserving_non_iso_fails_direct() {
        // walking arrow with both objects in degree 0
        let c = Arc::new(zoo::poset_chain(2));
        let s = ReedyStructure::all_plus(c, vec![0, 0]);
        let r = check_generalized_direct(&s);
        assert!(r.has_rule("plus-degree"));
    }

    #[test]
    fn lifting_condition_examples() {
        for g in [GroupTable::cyclic(2), GroupTable::symmetric3()] {
            let ex = zoo::group_category(&g).unwrap();
            assert!(check_lifting_condition(&ex.presentation, &ex.sub_reedy).passed());
        }
        let sym = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        assert!(check_lifting_condition(sym.presentation.as_ref().unwrap(), sym.sub_reedy.as_ref().unwrap()).passed());

        // the iso lifts to an identity by conjugating with itself
        let fx = zoo::discrete_into_walking_iso();
        assert!(check_lifting_condition(&fx.presentation, &fx.sub_reedy).passed());

        let d = Arc::new(FinCat::discrete(&["0", "1"]));
        let arrow = Arc::new(zoo::poset_chain(2));
        let c = crate::fincat::FinFunctor::new(d.clone(), arrow.clone(), vec![0, 1], vec![0, 2]).unwrap();
        let pres = AmalgamPresentation::new(arrow, d.clone(), c).unwrap();
        let r = check_lifting_condition(&pres, &ReedyStructure::all_plus(d, vec![0, 0]));
        assert!(r.has_rule("unliftable"));
        assert_eq!(r.violation_count, 1);
    }

    #[test]
    fn extra_plus_arrow_gives_non_uniqueness_witness() {
        let ex = zoo::group_category(&GroupTable::cyclic(2)).unwrap();
        let u = crate::unroll::build_dr(&ex.presentation, 2).unwrap();
        let mut st = induce_dr_structure(&u, &ex.reedy, &ex.sub_reedy).unwrap();
        assert!(check_unique_factorization(&st).passed());
        // also declare every arrow a minus arrow: each non-identity now factors twice
        st.minus = vec![true; st.minus.len()];
        let r = check_unique_factorization(&st);
        assert!(r.has_rule("factorization-strictly-unique"));
    }
}
