use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{Arr, Arrow, FinCat, FinFunctor, FunctorSearch, Obj};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    /// Arrows of the shape act backwards: `u: s → t` gives a functor `D(t) → D(s)`.
    Opposite,
}

/// A finite shape category together with the direction its arrows act in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDiagramShape {
    pub cat: Arc<FinCat>,
    pub variance: Variance,
}

impl FinDiagramShape {
    pub fn covariant(cat: Arc<FinCat>) -> Self {
        FinDiagramShape { cat, variance: Variance::Covariant }
    }

    pub fn opposite(cat: Arc<FinCat>) -> Self {
        FinDiagramShape { cat, variance: Variance::Opposite }
    }

    /// `(from, to)` components linked by the functor of arrow `u`.
    pub fn endpoints(&self, u: Arr) -> (Obj, Obj) {
        let (d, c) = (self.cat.dom(u), self.cat.cod(u));
        match self.variance {
            Variance::Covariant => (d, c),
            Variance::Opposite => (c, d),
        }
    }
}

/// A diagram of finite categories: one category per shape object and one
/// functor per shape arrow, pointing the way the shape's variance says.
#[derive(Debug, Clone)]
pub struct CatDiagram {
    pub shape: FinDiagramShape,
    pub values: Vec<Arc<FinCat>>,
    pub maps: Vec<FinFunctor>,
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CatDiagram {
    pub fn check(&self) -> Result<()> {
        let shape = &*self.shape.cat;
        if self.values.len() != shape.n_objects() || self.maps.len() != shape.n_arrows() {
            return Err(Error::NonFunctorialDiagram("sizes do not match the shape".into()));
        }
        for u in 0..shape.n_arrows() {
            let (from, to) = self.shape.endpoints(u);
            let m = &self.maps[u];
            if !same(&m.source, &self.values[from]) || !same(&m.target, &self.values[to]) {
                return Err(Error::NonFunctorialDiagram(format!("map of `{}` has the wrong ends", shape.arrow_id(u))));
            }
        }
        for o in 0..shape.n_objects() {
            let m = &self.maps[shape.id(o)];
            let id = FinFunctor::identity(self.values[o].clone());
            if m.obj != id.obj || m.arr != id.arr {
                return Err(Error::NonFunctorialDiagram(format!("identity of `{}` not sent to an identity", shape.object_id(o))));
            }
        }
        for f in 0..shape.n_arrows() {
            for &g in shape.arrows_from(shape.cod(f)) {
                let gf = shape.comp(g, f);
                let expected = match self.shape.variance {
                    Variance::Covariant => self.maps[g].after(&self.maps[f]),
                    Variance::Opposite => self.maps[f].after(&self.maps[g]),
                };
                if expected.obj != self.maps[gf].obj || expected.arr != self.maps[gf].arr {
                    return Err(Error::NonFunctorialDiagram(format!(
                        "composite `{}` after `{}` not preserved",
                        shape.arrow_id(g),
                        shape.arrow_id(f)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A chosen limit: compatible families of objects and arrows, ordered
/// lexicographically along the shape's object order.
#[derive(Debug, Clone)]
pub struct Limit {
    pub apex: Arc<FinCat>,
    pub legs: Vec<FinFunctor>,
    pub object_families: Vec<Vec<Obj>>,
    pub arrow_families: Vec<Vec<Arr>>,
    object_lookup: HashMap<Vec<Obj>, Obj>,
    arrow_lookup: HashMap<Vec<Arr>, Arr>,
}

struct Constraint {
    from: usize,
    to: usize,
    map: usize,
}

/// Lexicographic enumeration of families `x` with `apply(map, x[from]) == x[to]`
/// for every constraint.
fn families(
    sizes: &[usize],
    constraints: &[Constraint],
    apply: &dyn Fn(usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    let n = sizes.len();
    let mut by_last: Vec<Vec<&Constraint>> = (0..n).map(|_| Vec::new()).collect();
    for c in constraints {
        by_last[c.from.max(c.to)].push(c);
    }
    let forcing: Vec<Option<&Constraint>> = (0..n)
        .map(|k| by_last[k].iter().copied().find(|c| c.to == k && c.from < k))
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0usize; n];
    fn go(
        k: usize,
        x: &mut Vec<usize>,
        sizes: &[usize],
        by_last: &[Vec<&Constraint>],
        forcing: &[Option<&Constraint>],
        apply: &dyn Fn(usize, usize) -> usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == x.len() {
            out.push(x.clone());
            return;
        }
        let ok = |x: &Vec<usize>| by_last[k].iter().all(|c| apply(c.map, x[c.from]) == x[c.to]);
        if let Some(c) = forcing[k] {
            x[k] = apply(c.map, x[c.from]);
            if ok(x) {
                go(k + 1, x, sizes, by_last, forcing, apply, out);
            }
        } else {
            for v in 0..sizes[k] {
                x[k] = v;
                if ok(x) {
                    go(k + 1, x, sizes, by_last, forcing, apply, out);
                }
            }
        }
    }
    go(0, &mut x, sizes, &by_last, &forcing, apply, &mut out);
    out
}

fn family_name(parts: impl Iterator<Item = String>) -> String {
    let v: Vec<String> = parts.collect();
    format!("({})", v.join(","))
}

/// Componentwise limit of a diagram of finite categories.
pub fn finite_limit(diagram: &CatDiagram) -> Result<Limit> {
    diagram.check()?;
    let shape = &*diagram.shape.cat;
    let constraints: Vec<Constraint> = (0..shape.n_arrows())
        .filter(|&u| !shape.is_identity(u))
        .map(|u| {
            let (from, to) = diagram.shape.endpoints(u);
            Constraint { from, to, map: u }
        })
        .collect();
    let obj_sizes: Vec<usize> = diagram.values.iter().map(|c| c.n_objects()).collect();
    let arr_sizes: Vec<usize> = diagram.values.iter().map(|c| c.n_arrows()).collect();
    let object_families = families(&obj_sizes, &constraints, &|m, x| diagram.maps[m].obj[x]);
    let arrow_families = families(&arr_sizes, &constraints, &|m, x| diagram.maps[m].arr[x]);
    let object_lookup: HashMap<Vec<Obj>, Obj> =
        object_families.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let arrow_lookup: HashMap<Vec<Arr>, Arr> =
        arrow_families.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let n = diagram.values.len();
    let objects = unique_names(
        object_families
            .iter()
            .map(|fam| family_name((0..n).map(|s| diagram.values[s].object_id(fam[s]).to_string())))
            .collect(),
    );
    let arrow_ids = unique_names(
        arrow_families
            .iter()
            .map(|fam| family_name((0..n).map(|s| diagram.values[s].arrow_id(fam[s]).to_string())))
            .collect(),
    );
    let arrows: Vec<Arrow> = arrow_families
        .iter()
        .zip(arrow_ids)
        .map(|(fam, id)| {
            let dom: Vec<Obj> = (0..n).map(|s| diagram.values[s].dom(fam[s])).collect();
            let cod: Vec<Obj> = (0..n).map(|s| diagram.values[s].cod(fam[s])).collect();
            Arrow { name: id.clone(), id, dom: object_lookup[&dom], cod: object_lookup[&cod] }
        })
        .collect();
    let identity: Vec<Arr> = object_families
        .iter()
        .map(|fam| {
            let ids: Vec<Arr> = (0..n).map(|s| diagram.values[s].id(fam[s])).collect();
            arrow_lookup[&ids]
        })
        .collect();
    let apex = Arc::new(FinCat::from_table(objects, arrows, identity, |g, f| {
        let gf: Vec<Arr> = (0..n)
            .map(|s| diagram.values[s].comp(arrow_families[g][s], arrow_families[f][s]))
            .collect();
        arrow_lookup[&gf]
    }));
    let legs = (0..n)
        .map(|s| {
            FinFunctor::new_unchecked(
                apex.clone(),
                diagram.values[s].clone(),
                object_families.iter().map(|f| f[s]).collect(),
                arrow_families.iter().map(|f| f[s]).collect(),
            )
        })
        .collect();
    Ok(Limit { apex, legs, object_families, arrow_families, object_lookup, arrow_lookup })
}

fn unique_names(names: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .into_iter()
        .enumerate()
        .map(|(i, n)| if seen.insert(n.clone()) { n } else { format!("{n}#{i}") })
        .collect()
}

impl Limit {
    /// The mediating functor from the apex of a cone into the limit.
    pub fn factor(&self, cone: &[FinFunctor]) -> Result<FinFunctor> {
        if cone.len() != self.legs.len() {
            return Err(Error::NotACone("wrong number of legs".into()));
        }
        let apex = match cone.first() {
            Some(leg) => leg.source.clone(),
            None => return Err(Error::NotACone("a cone over the empty diagram needs an explicit apex".into())),
        };
        self.factor_from(apex, cone)
    }

    /// As [`Limit::factor`], with the apex given explicitly (needed for empty shapes).
    pub fn factor_from(&self, apex: Arc<FinCat>, cone: &[FinFunctor]) -> Result<FinFunctor> {
        let mut obj = Vec::with_capacity(apex.n_objects());
        for k in 0..apex.n_objects() {
            let fam: Vec<Obj> = cone.iter().map(|l| l.obj[k]).collect();
            obj.push(*self.object_lookup.get(&fam).ok_or_else(|| {
                Error::NotACone(format!("object `{}` gives an incompatible family", apex.object_id(k)))
            })?);
        }
        let mut arr = Vec::with_capacity(apex.n_arrows());
        for k in 0..apex.n_arrows() {
            let fam: Vec<Arr> = cone.iter().map(|l| l.arr[k]).collect();
            arr.push(*self.arrow_lookup.get(&fam).ok_or_else(|| {
                Error::NotACone(format!("arrow `{}` gives an incompatible family", apex.arrow_id(k)))
            })?);
        }
        Ok(FinFunctor::new_unchecked(apex, self.apex.clone(), obj, arr))
    }

    pub fn object_of(&self, family: &[Obj]) -> Option<Obj> {
        self.object_lookup.get(family).copied()
    }

    pub fn arrow_of(&self, family: &[Arr]) -> Option<Arr> {
        self.arrow_lookup.get(family).copied()
    }

    /// Bounded universal-property oracle: enumerates every cone over
    /// `diagram` with apex `apex` (up to `cap` search nodes per leg) and
    /// checks that each factors through the limit with matching legs.
    /// Returns the number of cones checked.
    pub fn check_universal(&self, diagram: &CatDiagram, apex: Arc<FinCat>, cap: usize) -> Result<usize> {
        let n = diagram.values.len();
        let mut per_leg = Vec::with_capacity(n);
        for s in 0..n {
            let all = FunctorSearch::new(apex.clone(), diagram.values[s].clone())
                .cap(cap)
                .collect_all()
                .map_err(Error::SizeCapExceeded)?;
            per_leg.push(all);
        }
        let shape = &*diagram.shape.cat;
        let mut count = 0;
        let mut choice = vec![0usize; n];
        let mut failure = None;
        enumerate_cones(0, &mut choice, &per_leg, &mut |choice| {
            let legs: Vec<&FinFunctor> = (0..n).map(|s| &per_leg[s][choice[s]]).collect();
            let is_cone = (0..shape.n_arrows()).all(|u| {
                let (from, to) = diagram.shape.endpoints(u);
                let composed = diagram.maps[u].after(legs[from]);
                composed.obj == legs[to].obj && composed.arr == legs[to].arr
            });
            if !is_cone {
                return true;
            }
            count += 1;
            let cone: Vec<FinFunctor> = legs.iter().map(|l| (*l).clone()).collect();
            match self.factor_from(apex.clone(), &cone) {
                Ok(m) => {
                    let ok = (0..n).all(|s| {
                        let back = self.legs[s].after(&m);
                        back.obj == cone[s].obj && back.arr == cone[s].arr
                    });
                    if !ok {
                        failure = Some(Error::NotACone("mediating functor does not restore the legs".into()));
                    }
                }
                Err(e) => failure = Some(e),
            }
            failure.is_none()
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(count),
        }
    }
}

fn enumerate_cones(k: usize, choice: &mut Vec<usize>, per_leg: &[Vec<FinFunctor>], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == choice.len() {
        return visit(choice);
    }
    for i in 0..per_leg[k].len() {
        choice[k] = i;
        if !enumerate_cones(k + 1, choice, per_leg, visit) {
            return false;
        }
    }
    true
}

/// A shape with the given non-identity arrows and no non-trivial composites.
pub(crate) fn graph_shape(objects: &[&str], edges: &[(&str, usize, usize)]) -> FinCat {
    let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let mut arrows: Vec<Arrow> = objs
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow { id: format!("id_{o}"), name: format!("id_{o}"), dom: i, cod: i })
        .collect();
    for (name, d, c) in edges {
        arrows.push(Arrow { id: name.to_string(), name: name.to_string(), dom: *d, cod: *c });
    }
    let n = objs.len();
    FinCat::from_table(objs, arrows, (0..n).collect(), |g, f| if g < n { f } else { g })
}

/// Product of a list of categories, legs in the given order.
pub fn product(factors: &[Arc<FinCat>]) -> Limit {
    let names: Vec<String> = (0..factors.len()).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let shape = Arc::new(graph_shape(&refs, &[]));
    let maps = factors.iter().map(|c| FinFunctor::identity(c.clone())).collect();
    finite_limit(&CatDiagram { shape: FinDiagramShape::covariant(shape), values: factors.to_vec(), maps })
        .expect("discrete diagrams are functorial")
}

/// Pullback of the cospan `f: A → C ← B: g`; legs are `[A, B, C]`.
pub fn pullback(f: &FinFunctor, g: &FinFunctor) -> Result<Limit> {
    let shape = Arc::new(graph_shape(&["a", "b", "c"], &[("f", 0, 2), ("g", 1, 2)]));
    let c = f.target.clone();
    let values = vec![f.source.clone(), g.source.clone(), c.clone()];
    let maps = vec![
        FinFunctor::identity(values[0].clone()),
        FinFunctor::identity(values[1].clone()),
        FinFunctor::identity(c),
        f.clone(),
        g.clone(),
    ];
    finite_limit(&CatDiagram { shape: FinDiagramShape::covariant(shape), values, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn empty_limit_is_terminal() {
        let shape = Arc::new(graph_shape(&[], &[]));
        let lim = finite_limit(&CatDiagram { shape: FinDiagramShape::covariant(shape), values: vec![], maps: vec![] })
            .unwrap();
        assert_eq!((lim.apex.n_objects(), lim.apex.n_arrows()), (1, 1));
    }

    #[test]
    fn binary_product_cardinality() {
        let c = Arc::new(zoo::poset_chain(2));
        let p = product(&[c.clone(), c]);
        assert_eq!(p.apex.n_objects(), 4);
        assert_eq!(p.apex.n_arrows(), 9);
        p.apex.check_laws().unwrap();
    }

    #[test]
    fn product_satisfies_bounded_universal_property() {
        let c = Arc::new(zoo::walking_iso());
        let shape = Arc::new(graph_shape(&["l", "r"], &[]));
        let diagram = CatDiagram {
            shape: FinDiagramShape::covariant(shape),
            values: vec![c.clone(), c.clone()],
            maps: vec![FinFunctor::identity(c.clone()), FinFunctor::identity(c.clone())],
        };
        let lim = finite_limit(&diagram).unwrap();
        let n = lim.check_universal(&diagram, c, 10_000).unwrap();
        // functors walking iso → walking iso: 4, so 16 cones
        assert_eq!(n, 16);
    }

    #[test]
    fn pullback_along_identity_is_source() {
        let c = Arc::new(zoo::poset_chain(3));
        let id = FinFunctor::identity(c.clone());
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.apex.n_objects(), c.n_objects());
        assert_eq!(pb.apex.n_arrows(), c.n_arrows());
    }

    #[test]
    fn non_functorial_diagram_rejected() {
        let c = Arc::new(zoo::walking_iso());
        let shape = Arc::new(graph_shape(&["x"], &[]));
        // identity of the shape object is sent to the swap, which is not an identity
        let swap = FinFunctor::new_unchecked(c.clone(), c.clone(), vec![1, 0], vec![1, 0, 3, 2]);
        let diagram = CatDiagram { shape: FinDiagramShape::covariant(shape), values: vec![c], maps: vec![swap] };
        assert!(matches!(finite_limit(&diagram), Err(Error::NonFunctorialDiagram(_))));
    }
}
