//! The tribe of finite categories (fibrations are isofibrations, anodyne
//! maps are injective-on-objects equivalences), diagrams of categories over
//! finite shapes, Reedy fibrancy, restriction and right Kan extension along
//! `p`, and the factorization pipeline for `p`-fibrations.

mod diagram;
mod kan;
mod matching;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, FunctorSearch, Obj, SearchOutcome};

pub use diagram::{Diagram, DiagramMap};
pub use kan::{
    is_p_fibrant, is_p_fibration, ran_along_p, ran_map_along_p, restrict_along_p, restrict_map_along_p, tribe_factorize,
    unit, PFactorization,
};
pub use matching::{
    is_reedy_fibrant, is_reedy_fibration, matching_object, reedy_factorize, reedy_fibration_failures, relative_matching,
    shape_degrees, MatchingObject, ReedyFactorization, RelativeMatching,
};

/// Default node cap for [`find_lift`].
pub const LIFT_CAP: usize = 200_000;

/// Every isomorphism `φ: F a ≅ b` lifts to an isomorphism `ψ: a ≅ a'` with `F ψ = φ`.
pub fn is_isofibration(f: &FinFunctor) -> bool {
    isofibration_failure(f).is_none()
}

/// An object and an iso out of its image with no lift.
pub fn isofibration_failure(f: &FinFunctor) -> Option<(Obj, Arr)> {
    let (a, b) = (&*f.source, &*f.target);
    for x in 0..a.n_objects() {
        for &phi in b.arrows_from(f.obj[x]) {
            if b.is_iso(phi) && !a.arrows_from(x).iter().any(|&psi| f.arr[psi] == phi && a.is_iso(psi)) {
                return Some((x, phi));
            }
        }
    }
    None
}

pub fn is_anodyne_cat(f: &FinFunctor) -> bool {
    f.is_injective_on_objects() && f.is_equivalence()
}

/// The mapping path factorization `A → E → B` of a functor.
#[derive(Debug, Clone)]
pub struct CatFactorization {
    pub middle: Arc<FinCat>,
    pub j: FinFunctor,
    pub q: FinFunctor,
    /// `(a, φ: F a ≅ b)` per object of the middle category.
    pub objects: Vec<(Obj, Arr)>,
}

/// `E` has objects `(a, φ: F a ≅ b)` and, from `(a, φ)` to `(a', φ')`, one
/// arrow per arrow `h: a → a'`; `q` sends it to `φ'∘F h∘φ⁻¹`.
pub fn factorize_cat(f: &FinFunctor) -> CatFactorization {
    let (a, b) = (&*f.source, &*f.target);
    let mut objects = Vec::new();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); a.n_objects()];
    for x in 0..a.n_objects() {
        for &phi in b.arrows_from(f.obj[x]) {
            if b.is_iso(phi) {
                by_source[x].push(objects.len());
                objects.push((x, phi));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut data: Vec<(usize, usize, Arr)> = Vec::new();
    for (i, &(x, _)) in objects.iter().enumerate() {
        for &h in a.arrows_from(x) {
            for &j in &by_source[a.cod(h)] {
                let id = format!("{}@{i}->{j}", a.arrow_id(h));
                arrows.push(Arrow { name: id.clone(), id, dom: i, cod: j });
                data.push((i, j, h));
            }
        }
    }
    let index: HashMap<(usize, usize, Arr), Arr> = data.iter().enumerate().map(|(n, &d)| (d, n)).collect();
    let names = objects
        .iter()
        .map(|&(x, phi)| format!("({},{})", a.object_id(x), b.arrow_id(phi)))
        .collect();
    let identity = objects.iter().enumerate().map(|(i, &(x, _))| index[&(i, i, a.id(x))]).collect();
    let middle = Arc::new(FinCat::from_table(names, arrows, identity, |g, h| {
        let (i, _, h1) = data[h];
        let (_, k, h2) = data[g];
        index[&(i, k, a.comp(h2, h1))]
    }));
    let j_obj = (0..a.n_objects())
        .map(|x| by_source[x].iter().copied().find(|&i| b.is_identity(objects[i].1)).expect("identity is an iso"))
        .collect::<Vec<_>>();
    let j_arr = (0..a.n_arrows()).map(|h| index[&(j_obj[a.dom(h)], j_obj[a.cod(h)], h)]).collect();
    let j = FinFunctor::new_unchecked(f.source.clone(), middle.clone(), j_obj, j_arr);
    let q_obj = objects.iter().map(|&(_, phi)| b.cod(phi)).collect();
    let q_arr = data
        .iter()
        .map(|&(i, k, h)| {
            let phi_inv = b.inverse(objects[i].1).expect("iso");
            b.comp(objects[k].1, b.comp(f.arr[h], phi_inv))
        })
        .collect();
    let q = FinFunctor::new_unchecked(middle.clone(), f.target.clone(), q_obj, q_arr);
    CatFactorization { middle, j, q, objects }
}

/// A diagonal filler `B → X` for the square `top: A → X`, `bottom: B → Y`
/// with `q∘top = bottom∘i`, found by exhaustive search.
pub fn find_lift(
    i: &FinFunctor,
    q: &FinFunctor,
    top: &FinFunctor,
    bottom: &FinFunctor,
    cap: usize,
) -> Result<FinFunctor> {
    let lhs = q.after(top);
    let rhs = bottom.after(i);
    if lhs.obj != rhs.obj || lhs.arr != rhs.arr {
        return Err(Error::Precondition("lifting square does not commute".into()));
    }
    let (b, x) = (i.target.clone(), q.source.clone());
    let mut forced_obj: Vec<Option<Obj>> = vec![None; b.n_objects()];
    for (a, &bo) in i.obj.iter().enumerate() {
        forced_obj[bo] = Some(top.obj[a]);
    }
    let mut forced_arr: Vec<Option<Arr>> = vec![None; b.n_arrows()];
    for (a, &ba) in i.arr.iter().enumerate() {
        match forced_arr[ba] {
            Some(prev) if prev != top.arr[a] => return Err(Error::NoLift("top map is not constant on fibers of i".into())),
            _ => forced_arr[ba] = Some(top.arr[a]),
        }
    }
    let mut search = FunctorSearch::new(b.clone(), x.clone()).cap(cap);
    for o in 0..b.n_objects() {
        let cands = match forced_obj[o] {
            Some(xo) => vec![xo],
            None => (0..x.n_objects()).filter(|&xo| q.obj[xo] == bottom.obj[o]).collect(),
        };
        search = search.restrict_object(o, cands);
    }
    let search = search.arrow_filter(|ba, xa| match forced_arr[ba] {
        Some(f) => f == xa,
        None => q.arr[xa] == bottom.arr[ba],
    });
    let mut found = None;
    let outcome = search.for_each(|l| {
        found = Some(l.clone());
        false
    });
    match (found, outcome) {
        (Some(l), _) => Ok(l),
        (None, SearchOutcome::CapExceeded) => Err(Error::SizeCapExceeded(cap)),
        (None, SearchOutcome::Complete) => Err(Error::NoLift(format!(
            "no functor `{}`-shaped filler exists",
            b.objects().join(",")
        ))),
    }
}

/// Per-component tribe classes of a diagram map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClasses {
    pub object: String,
    pub isofibration: bool,
    pub equivalence: bool,
    pub injective_on_objects: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TribeClassReport {
    pub components: Vec<ComponentClasses>,
    pub pointwise_fibration: bool,
    pub pointwise_anodyne: bool,
}

impl TribeClassReport {
    pub fn of(m: &DiagramMap) -> Self {
        let shape = &*m.source.shape;
        let components: Vec<ComponentClasses> = m
            .components
            .iter()
            .enumerate()
            .map(|(o, c)| ComponentClasses {
                object: shape.object_id(o).to_string(),
                isofibration: is_isofibration(c),
                equivalence: c.is_equivalence(),
                injective_on_objects: c.is_injective_on_objects(),
            })
            .collect();
        let pointwise_fibration = components.iter().all(|c| c.isofibration);
        let pointwise_anodyne = components.iter().all(|c| c.equivalence && c.injective_on_objects);
        TribeClassReport { components, pointwise_fibration, pointwise_anodyne }
    }
}
