use std::sync::Arc;

use proptest::prelude::*;
use unrolling::cattribe::{factorize_cat, is_anodyne_cat, is_isofibration, shape_degrees};
use unrolling::fincat::{comma_category, product, FinCat, FinFunctor, FunctorSearch};
use unrolling::format::{Document, Writer};
use unrolling::freecat::AmalgamPresentation;
use unrolling::unroll::{build_dr, HOM_BOUND};
use unrolling::zoo;

fn pool() -> Vec<Arc<FinCat>> {
    let mut v: Vec<Arc<FinCat>> = zoo::gaunt_catalog().into_iter().map(|(_, c, _)| Arc::new(c)).collect();
    v.retain(|c| c.n_arrows() <= 6);
    v
}

fn functor(a: usize, b: usize, pick: usize) -> FinFunctor {
    let pool = pool();
    let (a, b) = (pool[a % pool.len()].clone(), pool[b % pool.len()].clone());
    let all = FunctorSearch::new(a, b).collect_all().expect("uncapped");
    all[pick % all.len()].clone()
}

fn presentations() -> Vec<AmalgamPresentation> {
    zoo::presentations().into_iter().map(|(_, p, _, _)| p).collect()
}

/// A composable letter sequence picked by `choices`.
fn word(pres: &AmalgamPresentation, start: usize, choices: &[usize]) -> (usize, Vec<usize>) {
    let r = &*pres.r;
    let src = start % r.n_objects();
    let mut at = src;
    let mut letters = Vec::new();
    for &c in choices {
        let out = r.arrows_from(at);
        let l = out[c % out.len()];
        letters.push(l);
        at = r.cod(l);
    }
    (src, letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_idempotent_and_functorial(p in 0usize..5, start in 0usize..8, choices in prop::collection::vec(0usize..32, 0..10)) {
        let pres = &presentations()[p];
        let (src, letters) = word(pres, start, &choices);
        let nf = pres.normalize(src, &letters).unwrap();
        prop_assert!(pres.is_normal(&nf));
        prop_assert_eq!(&pres.normalize(src, &nf.letters).unwrap(), &nf);
        let composite = letters.iter().fold(pres.r.id(src), |acc, &l| pres.r.comp(l, acc));
        prop_assert_eq!(pres.p0_apply(&nf), composite);
    }

    #[test]
    fn nf_compose_is_associative(p in 0usize..5, start in 0usize..8, choices in prop::collection::vec(0usize..32, 0..9), i in 0usize..10, j in 0usize..10) {
        let pres = &presentations()[p];
        let (src, letters) = word(pres, start, &choices);
        let (i, j) = { let (a, b) = (i % (letters.len() + 1), j % (letters.len() + 1)); (a.min(b), a.max(b)) };
        let a = pres.normalize(src, &letters[..i]).unwrap();
        let b = pres.normalize(a.target, &letters[i..j]).unwrap();
        let c = pres.normalize(b.target, &letters[j..]).unwrap();
        let left = pres.nf_compose(&c, &pres.nf_compose(&b, &a).unwrap()).unwrap();
        let right = pres.nf_compose(&pres.nf_compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn factorize_cat_has_the_advertised_classes(a in 0usize..16, b in 0usize..16, pick in 0usize..1000) {
        let f = functor(a, b, pick);
        let fx = factorize_cat(&f);
        prop_assert!(is_anodyne_cat(&fx.j));
        prop_assert!(is_isofibration(&fx.q));
        prop_assert_eq!(fx.q.after(&fx.j).obj, f.obj);
        fx.middle.check_laws().unwrap();
    }

    #[test]
    fn isomorphisms_are_isofibrations_and_anodyne(a in 0usize..16) {
        let c = pool()[a % pool().len()].clone();
        let id = FinFunctor::identity(c.clone());
        prop_assert!(is_isofibration(&id) && is_anodyne_cat(&id));
        prop_assert!(is_isofibration(&FinFunctor::to_terminal(c)));
    }

    #[test]
    fn products_and_commas_satisfy_the_laws(a in 0usize..16, b in 0usize..16, pick in 0usize..1000) {
        let f = functor(a, b, pick);
        let p = product(&[f.source.clone(), f.target.clone()]);
        p.apex.check_laws().unwrap();
        prop_assert_eq!(p.apex.n_objects(), f.source.n_objects() * f.target.n_objects());
        let comma = comma_category(&f, &FinFunctor::identity(f.target.clone()));
        comma.category.check_laws().unwrap();
        comma.proj0.check().unwrap();
        prop_assert_eq!(&comma.category.opposite().opposite(), &*comma.category);
    }

    #[test]
    fn category_files_round_trip(a in 0usize..16, b in 0usize..16, pick in 0usize..1000) {
        let f = functor(a, b, pick);
        let mut w = Writer::new();
        w.category("s", &f.source).category("t", &f.target).functor("f", &f, "s", "t");
        let text = w.finish();
        let doc = Document::parse(&text).unwrap();
        prop_assert_eq!(doc.functor("f").unwrap(), &FinFunctor::new(doc.category("s").unwrap(), doc.category("t").unwrap(), f.obj.clone(), f.arr.clone()).unwrap());
        let mut w2 = Writer::new();
        w2.category("s", &doc.category("s").unwrap()).category("t", &doc.category("t").unwrap()).functor("f", doc.functor("f").unwrap(), "s", "t");
        prop_assert_eq!(w2.finish(), text);
    }
}

#[test]
fn unrolled_categories_are_direct() {
    for pres in presentations() {
        let u = build_dr(&pres, HOM_BOUND).unwrap();
        let deg = shape_degrees(&u.category).unwrap();
        for f in 0..u.category.n_arrows() {
            if !u.category.is_identity(f) {
                assert!(deg[u.category.dom(f)] < deg[u.category.cod(f)]);
            }
        }
        u.projection.check().unwrap();
    }
}

#[test]
fn zoo_output_is_deterministic() {
    let render = || {
        let mut w = Writer::new();
        for (name, pres, s, s0) in zoo::presentations() {
            w.presentation_bundle(&name, &pres);
            w.reedy(&format!("{name}.reedy"), &format!("{name}.r"), &s);
            w.reedy(&format!("{name}.reedy0"), &format!("{name}.r0"), &s0);
        }
        w.finish()
    };
    assert_eq!(render(), render());
}
