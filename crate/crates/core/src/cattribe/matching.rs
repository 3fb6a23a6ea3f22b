use std::sync::Arc;

use super::{factorize_cat, is_isofibration, Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{finite_limit, labelled_over, pullback, Arr, CatDiagram, FinCat, FinDiagramShape, FinFunctor, Limit, Obj};

/// Degree of each object of a direct shape: the length of the longest chain
/// of non-identity arrows ending there.
pub fn shape_degrees(shape: &FinCat) -> Result<Vec<usize>> {
    let n = shape.n_objects();
    for f in 0..shape.n_arrows() {
        if !shape.is_identity(f) && shape.dom(f) == shape.cod(f) {
            return Err(Error::Precondition(format!("shape is not direct: `{}` is a non-identity endomorphism", shape.arrow_id(f))));
        }
    }
    let mut degree = vec![0usize; n];
    // relaxation; a cycle would keep raising some degree past n
    for round in 0..=n {
        let mut changed = false;
        for f in 0..shape.n_arrows() {
            if shape.is_identity(f) {
                continue;
            }
            let (a, b) = (shape.dom(f), shape.cod(f));
            if degree[b] < degree[a] + 1 {
                degree[b] = degree[a] + 1;
                changed = true;
            }
        }
        if !changed {
            return Ok(degree);
        }
        if round == n {
            break;
        }
    }
    Err(Error::Precondition("shape is not direct: it has a cycle of non-identity arrows".into()))
}

/// The category of non-identity arrows into `z` (morphisms are commuting
/// triangles) and the arrows themselves, one per object.
fn matching_category(shape: &FinCat, z: Obj) -> (Arc<FinCat>, Vec<Arr>, Vec<Arr>) {
    let us: Vec<Arr> = shape.arrows_into(z).iter().copied().filter(|&u| !shape.is_identity(u)).collect();
    let mut morphisms = Vec::new();
    for (i, &u) in us.iter().enumerate() {
        for (j, &u2) in us.iter().enumerate() {
            for &v in shape.hom(shape.dom(u), shape.dom(u2)) {
                if shape.comp(u2, v) == u {
                    morphisms.push((i, j, v));
                }
            }
        }
    }
    let names = us.iter().map(|&u| shape.arrow_id(u).to_string()).collect();
    let over = morphisms.iter().map(|m| m.2).collect();
    (Arc::new(labelled_over(names, shape, &morphisms)), us, over)
}

/// Limit over the matching category of `z`, given the values and actions on
/// the sources of the arrows into `z`.
fn matching_limit(
    shape: &FinCat,
    z: Obj,
    value: &dyn Fn(Obj) -> Arc<FinCat>,
    action: &dyn Fn(Arr) -> FinFunctor,
) -> Result<(Arc<FinCat>, Vec<Arr>, Limit)> {
    let (cat, us, over) = matching_category(shape, z);
    let values = us.iter().map(|&u| value(shape.dom(u))).collect();
    let maps = over.iter().map(|&v| action(v)).collect();
    let limit = finite_limit(&CatDiagram { shape: FinDiagramShape::opposite(cat.clone()), values, maps })?;
    Ok((cat, us, limit))
}

/// `M_z X` with the matching map `X(z) → M_z X`.
#[derive(Debug, Clone)]
pub struct MatchingObject {
    pub z: Obj,
    pub category: Arc<FinCat>,
    /// The arrow into `z` per object of the matching category.
    pub arrows: Vec<Arr>,
    pub limit: Limit,
    pub map: FinFunctor,
}

pub fn matching_object(x: &Diagram, z: Obj) -> Result<MatchingObject> {
    let shape = &*x.shape;
    shape_degrees(shape)?;
    let (category, arrows, limit) =
        matching_limit(shape, z, &|o| x.values[o].clone(), &|v| x.action[v].clone())?;
    let legs: Vec<FinFunctor> = arrows.iter().map(|&u| x.action[u].clone()).collect();
    let map = limit.factor_from(x.values[z].clone(), &legs)?;
    Ok(MatchingObject { z, category, arrows, limit, map })
}

/// The functor `M_z X → M_z Y` induced by a map of diagrams.
fn induced(m: &DiagramMap, mx: &MatchingObject, my: &MatchingObject) -> Result<FinFunctor> {
    let shape = &*m.source.shape;
    let legs: Vec<FinFunctor> = mx
        .arrows
        .iter()
        .enumerate()
        .map(|(i, &u)| m.components[shape.dom(u)].after(&mx.limit.legs[i]))
        .collect();
    my.limit.factor_from(mx.limit.apex.clone(), &legs)
}

/// `X(z) → M_z X ×_{M_z Y} Y(z)` for a map `m: X → Y`.
#[derive(Debug, Clone)]
pub struct RelativeMatching {
    pub source: MatchingObject,
    pub target: MatchingObject,
    pub induced: FinFunctor,
    /// Legs `[M_z X, Y(z), M_z Y]`.
    pub pullback: Limit,
    pub comparison: FinFunctor,
}

pub fn relative_matching(m: &DiagramMap, z: Obj) -> Result<RelativeMatching> {
    let source = matching_object(&m.source, z)?;
    let target = matching_object(&m.target, z)?;
    let ind = induced(m, &source, &target)?;
    let pb = pullback(&ind, &target.map)?;
    let mz = &m.components[z];
    let comparison = pb.factor_from(m.source.values[z].clone(), &[source.map.clone(), mz.clone(), target.map.after(mz)])?;
    Ok(RelativeMatching { source, target, induced: ind, pullback: pb, comparison })
}

/// Objects at which the relative matching map is not an isofibration.
pub fn reedy_fibration_failures(m: &DiagramMap) -> Result<Vec<Obj>> {
    let mut out = Vec::new();
    for z in 0..m.source.shape.n_objects() {
        if !is_isofibration(&relative_matching(m, z)?.comparison) {
            out.push(z);
        }
    }
    Ok(out)
}

pub fn is_reedy_fibration(m: &DiagramMap) -> Result<bool> {
    Ok(reedy_fibration_failures(m)?.is_empty())
}

pub fn is_reedy_fibrant(x: &Diagram) -> Result<bool> {
    is_reedy_fibration(&DiagramMap::to_terminal(x))
}

#[derive(Debug, Clone)]
pub struct ReedyFactorization {
    pub middle: Diagram,
    pub j: DiagramMap,
    pub q: DiagramMap,
}

/// Factors `m` as a pointwise anodyne map followed by a Reedy fibration,
/// by induction on degree: at each `z` the comparison
/// `X(z) → M_z W ×_{M_z Y} Y(z)` is factored in the tribe of categories.
pub fn reedy_factorize(m: &DiagramMap) -> Result<ReedyFactorization> {
    let shape = m.source.shape.clone();
    let degree = shape_degrees(&shape)?;
    let mut order: Vec<Obj> = (0..shape.n_objects()).collect();
    order.sort_by_key(|&o| (degree[o], o));
    let (x, y) = (&m.source, &m.target);
    let n = shape.n_objects();
    let mut values: Vec<Option<Arc<FinCat>>> = vec![None; n];
    let mut action: Vec<Option<FinFunctor>> = vec![None; shape.n_arrows()];
    let mut j: Vec<Option<FinFunctor>> = vec![None; n];
    let mut q: Vec<Option<FinFunctor>> = vec![None; n];
    for &z in &order {
        let (_, us, mw) = matching_limit(
            &shape,
            z,
            &|o| values[o].clone().expect("lower degree"),
            &|v| action[v].clone().expect("lower degree"),
        )?;
        let my = matching_object(y, z)?;
        let q_legs: Vec<FinFunctor> = us
            .iter()
            .enumerate()
            .map(|(i, &u)| q[shape.dom(u)].as_ref().expect("lower degree").after(&mw.legs[i]))
            .collect();
        let mq = my.limit.factor_from(mw.apex.clone(), &q_legs)?;
        let pb = pullback(&mq, &my.map)?;
        let to_mw: Vec<FinFunctor> =
            us.iter().map(|&u| j[shape.dom(u)].as_ref().expect("lower degree").after(&x.action[u])).collect();
        let to_mw = mw.factor_from(x.values[z].clone(), &to_mw)?;
        let mz = &m.components[z];
        let comparison = pb.factor_from(x.values[z].clone(), &[to_mw, mz.clone(), my.map.after(mz)])?;
        let fx = factorize_cat(&comparison);
        let to_p = fx.q.clone();
        for (i, &u) in us.iter().enumerate() {
            action[u] = Some(mw.legs[i].after(&pb.legs[0].after(&to_p)));
        }
        action[shape.id(z)] = Some(FinFunctor::identity(fx.middle.clone()));
        q[z] = Some(pb.legs[1].after(&to_p));
        j[z] = Some(fx.j);
        values[z] = Some(fx.middle);
    }
    let middle = Diagram::new(
        shape.clone(),
        values.into_iter().map(|v| v.expect("all objects visited")).collect(),
        action.into_iter().map(|a| a.expect("all arrows visited")).collect(),
    )?;
    let j = DiagramMap::new(x.clone(), middle.clone(), j.into_iter().map(|c| c.expect("visited")).collect())?;
    let q = DiagramMap::new(middle.clone(), y.clone(), q.into_iter().map(|c| c.expect("visited")).collect())?;
    if !q.after(&j).same_components(m) {
        return Err(Error::Precondition("factors do not compose back to the map".into()));
    }
    Ok(ReedyFactorization { middle, j, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cattribe::{is_anodyne_cat, TribeClassReport};
    use crate::fincat::product;
    use crate::zoo;

    /// `0 → 1` with a diagram `X(1) → X(0)`.
    fn arrow_diagram(top: Arc<FinCat>, bottom: Arc<FinCat>, f: FinFunctor) -> Diagram {
        let shape = Arc::new(zoo::poset_chain(2));
        Diagram::new(shape, vec![bottom.clone(), top.clone()], vec![FinFunctor::identity(bottom), f, FinFunctor::identity(top)])
            .unwrap()
    }

    #[test]
    fn degrees_of_shapes() {
        assert_eq!(shape_degrees(&zoo::poset_chain(3)).unwrap(), vec![0, 1, 2]);
        assert!(shape_degrees(&zoo::walking_iso()).is_err());
    }

    #[test]
    fn degree_zero_matching_is_terminal() {
        let c = Arc::new(zoo::walking_iso());
        let d = arrow_diagram(c.clone(), c.clone(), FinFunctor::identity(c));
        let m = matching_object(&d, 0).unwrap();
        assert_eq!((m.limit.apex.n_objects(), m.limit.apex.n_arrows()), (1, 1));
    }

    #[test]
    fn single_arrow_matching_is_the_action() {
        let c = Arc::new(zoo::poset_chain(2));
        let w = Arc::new(zoo::walking_iso());
        let f = FinFunctor::to_terminal(w.clone());
        let d = arrow_diagram(w.clone(), Arc::new(FinCat::terminal()), f);
        let m = matching_object(&d, 1).unwrap();
        assert_eq!(m.limit.apex.n_objects(), 1);
        assert!(is_reedy_fibrant(&d).unwrap());
        let d2 = arrow_diagram(c.clone(), c.clone(), FinFunctor::identity(c.clone()));
        let m2 = matching_object(&d2, 1).unwrap();
        assert!(m2.map.is_isomorphism());
    }

    #[test]
    fn reedy_factorization_over_arrow() {
        let w = Arc::new(zoo::walking_iso());
        let p = product(&[w.clone(), w.clone()]);
        let diag = p.factor(&[FinFunctor::identity(w.clone()), FinFunctor::identity(w.clone())]).unwrap();
        // X(1) = w acting on X(0) = w² by the diagonal
        let x = arrow_diagram(w.clone(), p.apex.clone(), diag);
        assert!(!is_reedy_fibrant(&x).unwrap());
        let t = DiagramMap::to_terminal(&x);
        let rf = reedy_factorize(&t).unwrap();
        assert!(TribeClassReport::of(&rf.j).pointwise_anodyne);
        assert!(is_reedy_fibration(&rf.q).unwrap());
        let id = reedy_factorize(&DiagramMap::identity(&x)).unwrap();
        assert!(id.j.components.iter().all(is_anodyne_cat));
    }
}
