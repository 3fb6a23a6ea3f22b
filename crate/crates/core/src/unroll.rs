//! The unrolled category `D_R`: the full subcategory of the twisted arrow
//! category of the amalgamated free category on objects of the shape
//! (free iso)∘(letter from `R_0`), with its projection `p` to `R`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, Obj};
use crate::freecat::{AmalgamPresentation, NFWord};
use crate::reedy::ReedyStructure;

/// Default length bound for each component of a `D_R` morphism.
pub const HOM_BOUND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decomposition {
    /// The `R_0`-arrow the leading letter comes from.
    pub k: Option<Arr>,
    /// The trailing free isomorphism of `R`.
    pub w: Option<Arr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRObject {
    pub word: NFWord,
    pub decomposition: Decomposition,
    pub source: Obj,
    pub target: Obj,
}

/// A morphism `X → Y` of the twisted arrow category: `f: src Y → src X`
/// and `f2: tgt X → tgt Y` with `Y = f2 ∘ X ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRMorphism {
    pub from: Obj,
    pub to: Obj,
    pub f: NFWord,
    pub f2: NFWord,
}

#[derive(Debug, Clone)]
pub struct UnrolledCategory {
    pub presentation: AmalgamPresentation,
    pub category: Arc<FinCat>,
    pub objects: Vec<DRObject>,
    pub morphisms: Vec<DRMorphism>,
    pub projection: FinFunctor,
    pub hom_bound: usize,
    object_lookup: HashMap<NFWord, Obj>,
    morphism_lookup: HashMap<(Obj, Obj, NFWord, NFWord), Arr>,
}

fn decomposition(pres: &AmalgamPresentation, w: &NFWord) -> Option<Decomposition> {
    let iso = |l: Arr| pres.r.is_iso(l);
    match w.letters.as_slice() {
        [] => Some(Decomposition { k: None, w: None }),
        [l] => match pres.preimage(*l) {
            Some(k) => Some(Decomposition { k: Some(k), w: None }),
            None if iso(*l) => Some(Decomposition { k: None, w: Some(*l) }),
            None => None,
        },
        [l1, l2] => match (pres.preimage(*l1), pres.preimage(*l2)) {
            (Some(k), None) if iso(*l2) => Some(Decomposition { k: Some(k), w: Some(*l2) }),
            _ => None,
        },
        _ => None,
    }
}

/// Enumerates the objects of `D_R` and every morphism whose components have
/// length at most `hom_bound`, then materializes the category.
pub fn build_dr(pres: &AmalgamPresentation, hom_bound: usize) -> Result<UnrolledCategory> {
    let r = &*pres.r;
    let r0 = &*pres.r0;
    let mut words: Vec<NFWord> = Vec::new();
    let mut object_lookup: HashMap<NFWord, Obj> = HashMap::new();
    let mut admit = |w: NFWord, words: &mut Vec<NFWord>| {
        if !object_lookup.contains_key(&w) {
            object_lookup.insert(w.clone(), words.len());
            words.push(w);
        }
    };
    for y in 0..r.n_objects() {
        admit(NFWord::empty(y), &mut words);
    }
    for k in 0..r0.n_arrows() {
        let ck = pres.c.arr[k];
        admit(pres.normalize(r.dom(ck), &[ck])?, &mut words);
    }
    for w in 0..r.n_arrows() {
        if !r.is_iso(w) {
            continue;
        }
        admit(pres.normalize(r.dom(w), &[w])?, &mut words);
        for &ck in r.arrows_into(r.dom(w)) {
            if pres.is_c_letter(ck) {
                admit(pres.normalize(r.dom(ck), &[ck, w])?, &mut words);
            }
        }
    }
    let objects = words
        .iter()
        .map(|w| {
            let decomposition = decomposition(pres, w).ok_or_else(|| {
                Error::PresentationInvalid(format!("object word `{}` is not of D_R shape", pres.render(w)))
            })?;
            Ok(DRObject { word: w.clone(), decomposition, source: w.source, target: w.target })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut homs: HashMap<(Obj, Obj), Vec<NFWord>> = HashMap::new();
    let mut hom = |a: Obj, b: Obj| -> Vec<NFWord> {
        homs.entry((a, b)).or_insert_with(|| pres.nf_hom_enum(a, b, hom_bound)).clone()
    };
    let mut morphisms = Vec::new();
    for (xi, x) in objects.iter().enumerate() {
        for (yi, y) in objects.iter().enumerate() {
            let fs = hom(y.source, x.source);
            let f2s = hom(x.target, y.target);
            for f in &fs {
                let xf = pres.nf_compose(&x.word, f)?;
                for f2 in &f2s {
                    if pres.nf_compose(f2, &xf)? == y.word {
                        morphisms.push(DRMorphism { from: xi, to: yi, f: f.clone(), f2: f2.clone() });
                    }
                }
            }
        }
    }
    let morphism_lookup: HashMap<(Obj, Obj, NFWord, NFWord), Arr> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.from, m.to, m.f.clone(), m.f2.clone()), i))
        .collect();

    let object_ids: Vec<String> = objects.iter().map(|o| object_name(pres, &o.word)).collect();
    let arrows: Vec<Arrow> = morphisms
        .iter()
        .map(|m| {
            let id = format!(
                "{}=>{}|{}|{}",
                object_ids[m.from],
                object_ids[m.to],
                pres.render(&m.f),
                pres.render(&m.f2)
            );
            Arrow { name: id.clone(), id, dom: m.from, cod: m.to }
        })
        .collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, o)| morphism_lookup[&(i, i, NFWord::empty(o.source), NFWord::empty(o.target))])
        .collect();

    // composite of second after first: (f1 ∘ f2_, g2 ∘ g1)
    let mut out_of: Vec<Vec<Arr>> = vec![Vec::new(); objects.len()];
    for (i, m) in morphisms.iter().enumerate() {
        out_of[m.from].push(i);
    }
    let mut table: HashMap<(Arr, Arr), Arr> = HashMap::new();
    for (a, first) in morphisms.iter().enumerate() {
        for &b in &out_of[first.to] {
            let second = &morphisms[b];
            let f = pres.nf_compose(&first.f, &second.f)?;
            let f2 = pres.nf_compose(&second.f2, &first.f2)?;
            let key = (first.from, second.to, f, f2);
            let composite = morphism_lookup.get(&key).copied().ok_or_else(|| {
                Error::Precondition(format!(
                    "hom bound {hom_bound} too small: composite of `{}` after `{}` was not enumerated",
                    arrows[b].id, arrows[a].id
                ))
            })?;
            table.insert((b, a), composite);
        }
    }
    let category = Arc::new(FinCat::from_table(object_ids, arrows, identity, |g, f| table[&(g, f)]));
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        pres.r.clone(),
        objects.iter().map(|o| o.target).collect(),
        morphisms.iter().map(|m| pres.p0_apply(&m.f2)).collect(),
    );
    Ok(UnrolledCategory {
        presentation: pres.clone(),
        category,
        objects,
        morphisms,
        projection,
        hom_bound,
        object_lookup,
        morphism_lookup,
    })
}

fn object_name(pres: &AmalgamPresentation, w: &NFWord) -> String {
    format!("<{}>", pres.render(w))
}

impl UnrolledCategory {
    pub fn projection_p(&self) -> &FinFunctor {
        &self.projection
    }

    pub fn object_of(&self, word: &NFWord) -> Option<Obj> {
        self.object_lookup.get(word).copied()
    }

    pub fn morphism_of(&self, from: Obj, to: Obj, f: &NFWord, f2: &NFWord) -> Option<Arr> {
        self.morphism_lookup.get(&(from, to, f.clone(), f2.clone())).copied()
    }

    /// The object given by the empty word at `y`.
    pub fn identity_object(&self, y: Obj) -> Obj {
        self.object_lookup[&NFWord::empty(y)]
    }

    /// `deg(target) − deg(source) + k`, with `k = 1` iff a free isomorphism
    /// letter is present.
    pub fn degree(&self, x: Obj, s: &ReedyStructure) -> Result<usize> {
        let o = &self.objects[x];
        let k = i64::from(o.decomposition.w.is_some());
        let d = s.degree[o.target] as i64 - s.degree[o.source] as i64 + k;
        if d < 0 {
            return Err(Error::NegativeDegree { object: self.category.object_id(x).to_string(), degree: d });
        }
        Ok(d as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, CubeSpec, GroupTable};

    fn dr_of(g: GroupTable) -> UnrolledCategory {
        build_dr(&zoo::group_category(&g).unwrap().presentation, HOM_BOUND).unwrap()
    }

    #[test]
    fn z2_shape() {
        let u = dr_of(GroupTable::cyclic(2));
        let c = &*u.category;
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.hom(0, 1).len(), 2);
        assert_eq!(c.hom(1, 0).len(), 0);
        assert_eq!(c.hom(1, 1).len(), 1);
        c.check_laws().unwrap();
        u.projection.check().unwrap();
        let p: Vec<&str> = c.hom(0, 1).iter().map(|&a| u.presentation.r.arrow_id(u.projection.arr[a])).collect();
        let mut p = p;
        p.sort();
        assert_eq!(p, vec!["e", "g1"]);
    }

    #[test]
    fn z3_non_identity_objects_are_unrelated() {
        let u = dr_of(GroupTable::cyclic(3));
        assert_eq!(u.category.n_objects(), 3);
        assert!(u.category.hom(1, 2).is_empty());
        assert!(u.category.hom(2, 1).is_empty());
    }

    #[test]
    fn degrees() {
        let ex = zoo::group_category(&GroupTable::cyclic(2)).unwrap();
        let u = build_dr(&ex.presentation, HOM_BOUND).unwrap();
        assert_eq!(u.degree(0, &ex.reedy).unwrap(), 0);
        assert_eq!(u.degree(1, &ex.reedy).unwrap(), 1);

        let cube = zoo::cube_category(&CubeSpec { max_dim: 1, symmetries: true, degeneracies: false });
        let pres = cube.presentation.unwrap();
        let u = build_dr(&pres, HOM_BOUND).unwrap();
        for y in 0..pres.r.n_objects() {
            let o = u.identity_object(y);
            assert_eq!(u.degree(o, &cube.reedy).unwrap(), 0);
            assert_eq!(u.projection.obj[o], y);
        }
    }

    #[test]
    fn symmetric_face_object_has_degree_two() {
        // objects over [2] ending in the coordinate swap after a face [1] → [2]
        let cube = zoo::cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        let pres = cube.presentation.unwrap();
        let u = build_dr(&pres, HOM_BOUND).unwrap();
        let found = (0..u.objects.len()).find(|&x| {
            let d = u.objects[x].decomposition;
            d.w.is_some() && d.k.is_some() && pres.r.object_id(u.objects[x].source) == "1"
        });
        let x = found.expect("a [w]·[c(k)] object with k: [1] → [2]");
        assert_eq!(u.degree(x, &cube.reedy).unwrap(), 2);
    }

    #[test]
    fn degeneracies_give_negative_degree() {
        let cube = zoo::cube_category(&CubeSpec { max_dim: 1, symmetries: true, degeneracies: true });
        let pres = cube.presentation.unwrap();
        let u = build_dr(&pres, HOM_BOUND).unwrap();
        let neg = (0..u.objects.len()).any(|x| matches!(u.degree(x, &cube.reedy), Err(Error::NegativeDegree { .. })));
        assert!(neg);
    }
}
