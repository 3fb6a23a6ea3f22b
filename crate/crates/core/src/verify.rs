//! The acceptance suite: each criterion is a function returning a
//! [`Criterion`] verdict with human-readable details.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cattribe::{
    factorize_cat, find_lift, is_anodyne_cat, is_isofibration, is_p_fibrant, matching_object, restrict_along_p,
    tribe_factorize, unit, Diagram, DiagramMap, LIFT_CAP,
};
use crate::error::{Error, Result};
use crate::factcheck::{check_absolutely_dense, check_cofibering, check_grothendieck_fibration, p_fiber, self_comma};
use crate::fincat::{product, pullback, FinCat, FinFunctor, FunctorSearch};
use crate::freecat::AmalgamPresentation;
use crate::reedy::{check_strict, check_unique_factorization, induce_dr_structure, reedy_factor_dr, Factorization};
use crate::unroll::{build_dr, UnrolledCategory, HOM_BOUND};
use crate::zoo::{self, GroupTable};

pub const CRITERIA: usize = 11;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub number: usize,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Criterion {
    fn new(number: usize, title: &str) -> Self {
        Criterion { number, title: title.to_string(), passed: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, detail: impl Into<String>) {
        let d = detail.into();
        if ok {
            self.details.push(d);
        } else {
            self.passed = false;
            self.details.push(format!("FAILED: {d}"));
        }
    }

    fn error(&mut self, e: Error) {
        self.passed = false;
        self.details.push(format!("FAILED: {e}"));
    }

    /// `criterion N: PASS|FAIL  title`
    pub fn line(&self) -> String {
        format!("criterion {:>2}: {}  {}", self.number, if self.passed { "PASS" } else { "FAIL" }, self.title)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub hom_bound: usize,
    pub lift_cap: usize,
    pub seed: u64,
    pub words_per_presentation: usize,
    pub random_instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { hom_bound: HOM_BOUND, lift_cap: LIFT_CAP, seed: 0x5eed, words_per_presentation: 1000, random_instances: 50 }
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<Criterion> {
    (1..=CRITERIA).map(|n| run(n, cfg)).collect()
}

pub fn run(n: usize, cfg: &VerifyConfig) -> Criterion {
    let (title, body): (&str, fn(&VerifyConfig, &mut Criterion) -> Result<()>) = match n {
        1 => ("D_{Z/2} has two objects and two parallel arrows", c1),
        2 => ("two arrows from the identity object for Z/3 and S_3", c2),
        3 => ("induced Reedy structure on D_R is strict with unique factorizations", c3),
        4 => ("p is absolutely dense; the discrete inclusion is not", c4),
        5 => ("pi_0 is a Grothendieck fibration and cofibering; fiber degree bound", c5),
        6 => ("matching object at [g] is x * x with map <id, g>", c6),
        7 => ("(C, id) is p-fibrant iff C is gaunt", c7),
        8 => ("p_* p^* X is isomorphic to X", c8),
        9 => ("factorizations into pointwise anodyne and p-fibration", c9),
        10 => ("tribe axioms in the tribe of categories", c10),
        11 => ("normal forms are order independent; HOM_BOUND is adequate", c11),
        _ => ("unknown criterion", |_, c| Err(Error::Precondition(format!("there is no criterion {}", c.number)))),
    };
    let mut c = Criterion::new(n, title);
    if let Err(e) = body(cfg, &mut c) {
        c.error(e);
    }
    c
}

fn group(name: &str) -> Result<zoo::GroupExample> {
    zoo::group_category(&GroupTable::by_name(name).ok_or_else(|| Error::Precondition(format!("unknown group {name}")))?)
}

fn eps_and_rest(u: &UnrolledCategory) -> (usize, Vec<usize>) {
    let eps = u.identity_object(0);
    (eps, (0..u.category.n_objects()).filter(|&o| o != eps).collect())
}

fn c1(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let u = build_dr(&group("Z2")?.presentation, cfg.hom_bound)?;
    let d = &*u.category;
    c.require(d.n_objects() == 2, format!("{} objects", d.n_objects()));
    let (eps, rest) = eps_and_rest(&u);
    let g = rest[0];
    c.require(d.hom(eps, g).len() == 2, format!("{} arrows from the identity object to [g]", d.hom(eps, g).len()));
    c.require(d.hom(g, eps).is_empty(), format!("{} arrows from [g] to the identity object", d.hom(g, eps).len()));
    c.require(d.hom(g, g) == [d.id(g)], format!("Hom([g],[g]) has {} arrows", d.hom(g, g).len()));
    c.require(d.hom(eps, eps) == [d.id(eps)], format!("Hom(e,e) has {} arrows", d.hom(eps, eps).len()));
    Ok(())
}

fn c2(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    for name in ["Z3", "S3"] {
        let u = build_dr(&group(name)?.presentation, cfg.hom_bound)?;
        let d = &*u.category;
        let (eps, rest) = eps_and_rest(&u);
        let from_eps: BTreeSet<usize> = rest.iter().map(|&o| d.hom(eps, o).len()).collect();
        let between = rest.iter().flat_map(|&a| rest.iter().map(move |&b| (a, b))).filter(|(a, b)| a != b);
        let cross: usize = between.map(|(a, b)| d.hom(a, b).len()).sum();
        c.require(
            from_eps == BTreeSet::from([2]) && cross == 0,
            format!("{name}: {} non-identity objects, arrows from the identity object {from_eps:?}, {cross} between distinct others", rest.len()),
        );
    }
    Ok(())
}

fn c3(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    for (name, pres, s, s0) in zoo::presentations() {
        let u = build_dr(&pres, cfg.hom_bound)?;
        let st = induce_dr_structure(&u, &s, &s0)?;
        let strict = check_strict(&st);
        let unique = check_unique_factorization(&st);
        let mut agree = 0;
        let mut disagree = Vec::new();
        for f in 0..u.category.n_arrows() {
            let (minus, plus) = reedy_factor_dr(&u, &s0, f)?;
            let expected = Factorization { middle: u.category.cod(minus), minus, plus };
            if st.factorizations(f) == [expected] {
                agree += 1;
            } else {
                disagree.push(u.category.arrow_id(f).to_string());
            }
        }
        c.require(
            strict.passed() && unique.passed() && disagree.is_empty(),
            format!(
                "{name}: {} objects, {} arrows; strict {} violations, unique factorization {} violations, constructive factorization agrees on {agree}{}",
                u.category.n_objects(),
                u.category.n_arrows(),
                strict.violation_count,
                unique.violation_count,
                if disagree.is_empty() { String::new() } else { format!(", disagrees on {disagree:?}") }
            ),
        );
    }
    Ok(())
}

fn c4(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    for (name, pres, _, _) in zoo::presentations() {
        let u = build_dr(&pres, cfg.hom_bound)?;
        let r = check_absolutely_dense(&u.projection);
        c.require(r.passed(), format!("{name}: factorization categories of {} arrows of R, {} violations", u.presentation.r.n_arrows(), r.report.violation_count));
    }
    let fx = zoo::discrete_into_walking_iso();
    let r = check_absolutely_dense(fx.inclusion());
    let two = r.witnesses.iter().find(|w| w.components.len() == 2);
    c.require(
        !r.passed() && two.is_some(),
        match two {
            Some(w) => format!("discrete 2 into the walking iso fails at {} with components {:?}", w.label, w.components),
            None => "discrete 2 into the walking iso: no two-component witness".to_string(),
        },
    );
    Ok(())
}

fn c5(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    for name in ["Z2", "Z3"] {
        let ex = group(name)?;
        let u = build_dr(&ex.presentation, cfg.hom_bound)?;
        let s = induce_dr_structure(&u, &ex.reedy, &ex.sub_reedy)?;
        let (comma, st) = self_comma(&u.projection, &s);
        let fib = check_grothendieck_fibration(&comma.proj0);
        c.require(fib.passed(), format!("{name}: pi_0 Grothendieck fibration, {} violations", fib.violation_count));
        let cof = check_cofibering(&comma.proj0, &st, &s);
        let witness = cof
            .witnesses
            .first()
            .map(|w| format!("; e.g. {} splits into {:?}", w.label, w.components))
            .unwrap_or_default();
        c.require(cof.passed(), format!("{name}: pi_0 cofibering, {} violations{witness}", cof.report.violation_count));
        let mut worst = None;
        for alpha in 0..u.category.n_objects() {
            let bound = ex.reedy.degree[u.projection.obj[alpha]] + 1;
            let fiber = p_fiber(&comma, alpha);
            let over = fiber.iter().map(|&i| s.degree[comma.objects[i].0]).filter(|&d| d > bound).count();
            if over > 0 {
                worst = Some(u.category.object_id(alpha).to_string());
            }
        }
        c.require(
            worst.is_none(),
            format!("{name}: every P_alpha fiber is finite with degrees at most deg(p(alpha)) + 1{}", worst.map(|w| format!(" except over {w}")).unwrap_or_default()),
        );
    }
    Ok(())
}

/// Diagrams over a group with a single value and an action.
fn involutions(r: &Arc<FinCat>) -> Result<Vec<(&'static str, Diagram)>> {
    let d = Arc::new(FinCat::discrete(&["x", "y"]));
    let swap_pts = FinFunctor::new(d.clone(), d.clone(), vec![1, 0], vec![1, 0])?;
    let w = Arc::new(zoo::walking_iso());
    let swap_iso = FinFunctor::new(w.clone(), w.clone(), vec![1, 0], vec![1, 0, 3, 2])?;
    let chain = Arc::new(zoo::poset_chain(3));
    Ok(vec![
        ("swapped points", Diagram::one_object(r.clone(), d.clone(), vec![FinFunctor::identity(d), swap_pts])?),
        ("swapped walking iso", Diagram::one_object(r.clone(), w.clone(), vec![FinFunctor::identity(w), swap_iso])?),
        ("chain 3, trivial action", Diagram::constant(r.clone(), chain)),
    ])
}

fn c6(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let ex = group("Z2")?;
    let u = build_dr(&ex.presentation, cfg.hom_bound)?;
    let p = &u.projection;
    let (_, rest) = eps_and_rest(&u);
    let g = rest[0];
    for (name, x) in involutions(&p.target)? {
        let px = restrict_along_p(p, &x)?;
        let m = matching_object(&px, g)?;
        // order the two arrows into [g] by their image under p: id first
        let mut idx: Vec<usize> = (0..m.arrows.len()).collect();
        idx.sort_by_key(|&i| !p.target.is_identity(p.arr[m.arrows[i]]));
        let xv = x.values[0].clone();
        let prod = product(&[xv.clone(), xv.clone()]);
        let legs: Vec<FinFunctor> = idx.iter().map(|&i| m.limit.legs[i].clone()).collect();
        let iso = prod.factor_from(m.limit.apex.clone(), &legs)?;
        let expected = prod.factor_from(xv.clone(), &[FinFunctor::identity(xv.clone()), x.action[1].clone()])?;
        let got = iso.after(&m.map);
        c.require(
            m.arrows.len() == 2 && iso.is_isomorphism() && got.obj == expected.obj && got.arr == expected.arr,
            format!(
                "{name}: matching object has {} objects and {} arrows, comparison to x * x is an isomorphism: {}, map is <id, g>: {}",
                m.limit.apex.n_objects(),
                m.limit.apex.n_arrows(),
                iso.is_isomorphism(),
                got.obj == expected.obj && got.arr == expected.arr
            ),
        );
    }
    Ok(())
}

fn c7(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let u = build_dr(&group("Z2")?.presentation, cfg.hom_bound)?;
    let p = &u.projection;
    let catalog = zoo::gaunt_catalog();
    c.require(catalog.len() >= 10, format!("{} categories in the catalog", catalog.len()));
    for (name, cat, gaunt) in catalog {
        c.require(cat.is_gaunt() == gaunt, format!("{name}: gaunt {gaunt}"));
        let fibrant = is_p_fibrant(p, &Diagram::constant(p.target.clone(), Arc::new(cat)))?;
        c.require(fibrant == gaunt, format!("{name}: p-fibrant {fibrant}"));
    }
    Ok(())
}

fn c8(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let mut samples = 0;
    for name in ["Z2", "Z3"] {
        let ex = group(name)?;
        let u = build_dr(&ex.presentation, cfg.hom_bound)?;
        let p = &u.projection;
        let r = p.target.clone();
        let mut diagrams: Vec<(String, Diagram)> = vec![
            ("terminal".into(), Diagram::terminal(r.clone())),
            ("walking iso, trivial action".into(), Diagram::constant(r.clone(), Arc::new(zoo::walking_iso()))),
            ("parallel pair, trivial action".into(), Diagram::constant(r.clone(), Arc::new(zoo::parallel_pair()))),
        ];
        if name == "Z2" {
            diagrams.extend(involutions(&r)?.into_iter().map(|(n, d)| (n.to_string(), d)));
        } else {
            let d = Arc::new(FinCat::discrete(&["x", "y", "z"]));
            let rot = |k: usize| FinFunctor::new(d.clone(), d.clone(), (0..3).map(|i| (i + k) % 3).collect(), (0..3).map(|i| (i + k) % 3).collect());
            diagrams.push(("rotated points".into(), Diagram::one_object(r.clone(), d.clone(), vec![rot(0)?, rot(1)?, rot(2)?])?));
        }
        for (dn, x) in diagrams {
            let eta = unit(p, &x)?;
            let inv = eta.inverse();
            let ok = inv.as_ref().is_some_and(|inv| {
                inv.after(&eta).same_components(&DiagramMap::identity(&x))
                    && eta.after(inv).same_components(&DiagramMap::identity(&eta.target))
            });
            c.require(ok, format!("{name}, {dn}: unit X -> p_* p^* X has an explicit two-sided inverse"));
            samples += 1;
        }
    }
    c.require(samples >= 5, format!("{samples} sample diagrams"));
    Ok(())
}

fn c9(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let u = build_dr(&group("Z2")?.presentation, cfg.hom_bound)?;
    let p = &u.projection;
    let r = p.target.clone();
    let c2 = Diagram::constant(r.clone(), Arc::new(zoo::poset_chain(2)));
    let c3 = Diagram::constant(r.clone(), Arc::new(zoo::poset_chain(3)));
    let incl = FinFunctor::new(c2.values[0].clone(), c3.values[0].clone(), vec![0, 2], vec![0, 2, 5])?;
    let swapped = involutions(&r)?.swap_remove(0).1;
    let maps = vec![
        ("identity on chain 2", DiagramMap::identity(&c2)),
        ("chain 2 to the terminal", DiagramMap::to_terminal(&c2)),
        ("swapped points to the terminal", DiagramMap::to_terminal(&swapped)),
        ("endpoints of chain 2 into chain 3", DiagramMap::new(c2.clone(), c3.clone(), vec![incl])?),
    ];
    for (name, m) in maps {
        let ends = is_p_fibrant(p, &m.source)? && is_p_fibrant(p, &m.target)?;
        let fx = tribe_factorize(p, &m)?;
        let composite = fx.second.after(&fx.first).same_components(&m);
        c.require(
            ends && fx.passed() && composite,
            format!(
                "{name}: first pointwise anodyne {}, second p-fibration {}, middle p-fibrant {}, composite equals the map {composite}",
                fx.first_classes.pointwise_anodyne, fx.second_is_p_fibration, fx.middle_is_p_fibrant
            ),
        );
    }
    Ok(())
}

fn pool() -> Vec<Arc<FinCat>> {
    vec![
        Arc::new(FinCat::terminal()),
        Arc::new(FinCat::discrete(&["x", "y"])),
        Arc::new(zoo::poset_chain(2)),
        Arc::new(zoo::poset_chain(3)),
        Arc::new(zoo::walking_iso()),
        Arc::new(zoo::parallel_pair()),
        Arc::new(zoo::chaotic(2)),
        Arc::new(zoo::group_category(&GroupTable::cyclic(2)).expect("Z2").category().clone()),
        Arc::new(zoo::poset(&["a", "b", "c"], &[(0, 2), (1, 2)])),
    ]
}

fn random_functor_between(rng: &mut ChaCha8Rng, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<FinFunctor> {
    let all = FunctorSearch::new(a.clone(), b.clone()).cap(50_000).collect_all().ok()?;
    all.choose(rng).cloned()
}

fn random_functor(rng: &mut ChaCha8Rng, pool: &[Arc<FinCat>]) -> FinFunctor {
    loop {
        let a = pool.choose(rng).expect("pool").clone();
        let b = pool.choose(rng).expect("pool").clone();
        if let Some(f) = random_functor_between(rng, &a, &b) {
            return f;
        }
    }
}

fn random_into(rng: &mut ChaCha8Rng, pool: &[Arc<FinCat>], b: &Arc<FinCat>) -> FinFunctor {
    loop {
        let a = pool.choose(rng).expect("pool").clone();
        if let Some(f) = random_functor_between(rng, &a, b) {
            return f;
        }
    }
}

fn random_from(rng: &mut ChaCha8Rng, a: &Arc<FinCat>, pool: &[Arc<FinCat>]) -> FinFunctor {
    loop {
        let b = pool.choose(rng).expect("pool").clone();
        if let Some(f) = random_functor_between(rng, a, &b) {
            return f;
        }
    }
}

fn c10(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = pool();
    let n = cfg.random_instances;

    let mut bad = 0;
    for _ in 0..n {
        let f = random_functor(&mut rng, &pool);
        let fx = factorize_cat(&f);
        let back = fx.q.after(&fx.j);
        if !(is_anodyne_cat(&fx.j) && is_isofibration(&fx.q) && back.obj == f.obj && back.arr == f.arr) {
            bad += 1;
        }
    }
    c.require(bad == 0, format!("factorize_cat: {n} random functors, {bad} with wrong classes or composite"));

    let (mut comp_bad, mut pb_bad, mut anod_bad) = (0, 0, 0);
    for _ in 0..n {
        // composable isofibrations E1 → E2 → C
        let q2 = factorize_cat(&random_functor(&mut rng, &pool)).q;
        let q1 = factorize_cat(&random_into(&mut rng, &pool, &q2.source)).q;
        if !is_isofibration(&q2.after(&q1)) {
            comp_bad += 1;
        }
        // pullback of an isofibration along a random functor
        let q = factorize_cat(&random_functor(&mut rng, &pool)).q;
        let f = random_into(&mut rng, &pool, &q.target);
        let pb = pullback(&f, &q)?;
        if !is_isofibration(&pb.legs[0]) {
            pb_bad += 1;
        }
        // pullback of an anodyne map along an isofibration
        let j = factorize_cat(&random_functor(&mut rng, &pool)).j;
        let q = factorize_cat(&random_into(&mut rng, &pool, &j.target)).q;
        let pb = pullback(&j, &q)?;
        if !is_anodyne_cat(&pb.legs[1]) {
            anod_bad += 1;
        }
    }
    c.require(comp_bad == 0, format!("composition: {n} random pairs of isofibrations, {comp_bad} composites fail"));
    c.require(pb_bad == 0, format!("pullback: {n} random isofibrations, {pb_bad} pullbacks fail"));
    c.require(anod_bad == 0, format!("anodyne pullback along isofibrations: {n} random instances, {anod_bad} fail"));

    let (mut solved, mut over_cap, mut no_lift, mut attempts) = (0, 0, 0, 0);
    while solved + over_cap + no_lift < n && attempts < 20 * n {
        attempts += 1;
        let i = factorize_cat(&random_functor(&mut rng, &pool)).j;
        let q = factorize_cat(&random_functor(&mut rng, &pool)).q;
        let top = random_from(&mut rng, &i.source, std::slice::from_ref(&q.source));
        // bottom: B → Y agreeing with q∘top on the image of i
        let mut required = vec![None; i.target.n_arrows()];
        for a in 0..i.source.n_arrows() {
            required[i.arr[a]] = Some(q.arr[top.arr[a]]);
        }
        let mut search = FunctorSearch::new(i.target.clone(), q.target.clone()).cap(50_000);
        for a in 0..i.source.n_objects() {
            search = search.restrict_object(i.obj[a], vec![q.obj[top.obj[a]]]);
        }
        let Ok(bottoms) = search.arrow_filter(|s, t| required[s].is_none_or(|r| r == t)).collect_all() else {
            continue;
        };
        let Some(bottom) = bottoms.choose(&mut rng) else {
            continue;
        };
        match find_lift(&i, &q, &top, bottom, cfg.lift_cap) {
            Ok(_) => solved += 1,
            Err(Error::SizeCapExceeded(_)) => over_cap += 1,
            Err(_) => no_lift += 1,
        }
    }
    c.require(
        no_lift == 0 && solved > 0,
        format!("find_lift: {solved} squares solved, {over_cap} beyond the cap, {no_lift} without a lift"),
    );
    Ok(())
}

/// Rewrites to normal form by applying the two rules at random positions:
/// delete the image of an `R_0` identity, merge two adjacent `c`-letters.
fn random_order_normalize(pres: &AmalgamPresentation, letters: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let r0 = &*pres.r0;
    let mut w = letters.to_vec();
    loop {
        let mut redexes = Vec::new();
        for i in 0..w.len() {
            if pres.preimage(w[i]).is_some_and(|k| r0.is_identity(k)) {
                redexes.push((i, false));
            }
            if i + 1 < w.len() && pres.preimage(w[i]).is_some() && pres.preimage(w[i + 1]).is_some() {
                redexes.push((i, true));
            }
        }
        let Some(&(i, merge)) = redexes.choose(rng) else {
            return w;
        };
        if merge {
            let (k1, k2) = (pres.preimage(w[i]).expect("c-letter"), pres.preimage(w[i + 1]).expect("c-letter"));
            w.splice(i..i + 2, [pres.c.arr[r0.comp(k2, k1)]]);
        } else {
            w.remove(i);
        }
    }
}

fn random_word(pres: &AmalgamPresentation, rng: &mut ChaCha8Rng, max_len: usize) -> (usize, Vec<usize>) {
    let r = &*pres.r;
    let src = rng.gen_range(0..r.n_objects());
    let len = rng.gen_range(0..=max_len);
    let mut at = src;
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let l = *r.arrows_from(at).choose(rng).expect("identity at least");
        letters.push(l);
        at = r.cod(l);
    }
    (src, letters)
}

fn c11(cfg: &VerifyConfig, c: &mut Criterion) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xface);
    for (name, pres, _, _) in zoo::presentations() {
        let mut mismatches = 0;
        for _ in 0..cfg.words_per_presentation {
            let (src, letters) = random_word(&pres, &mut rng, 8);
            let nf = pres.normalize(src, &letters)?;
            let oracle = random_order_normalize(&pres, &letters, &mut rng);
            // composing the normal forms of a random split agrees too
            let cut = rng.gen_range(0..=letters.len());
            let left = pres.normalize(src, &letters[..cut])?;
            let right = pres.normalize(left.target, &letters[cut..])?;
            let joined = pres.nf_compose(&right, &left)?;
            let composite = letters.iter().fold(pres.r.id(src), |acc, &l| pres.r.comp(l, acc));
            if nf.letters != oracle || joined != nf || !pres.is_normal(&nf) || pres.p0_apply(&nf) != composite {
                mismatches += 1;
            }
        }
        c.require(mismatches == 0, format!("{name}: {} random words, {mismatches} disagree with the random-order rewriting", cfg.words_per_presentation));
        let a = build_dr(&pres, cfg.hom_bound)?;
        let b = build_dr(&pres, cfg.hom_bound + 2)?;
        let ids = |u: &UnrolledCategory| u.category.arrows().iter().map(|x| x.id.clone()).collect::<BTreeSet<_>>();
        let (ia, ib) = (ids(&a), ids(&b));
        c.require(
            a.category.objects() == b.category.objects() && ia == ib,
            format!("{name}: {} morphisms at bound {}, {} at bound {}", ia.len(), cfg.hom_bound, ib.len(), cfg.hom_bound + 2),
        );
    }
    Ok(())
}
