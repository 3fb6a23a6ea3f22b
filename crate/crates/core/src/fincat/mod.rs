//! Finite categories given by total composition tables, together with
//! functors, finite limits, comma categories and the exhaustive predicates
//! used by the rest of the crate.

mod comma;
mod functor;
mod limit;
mod search;

pub use comma::{comma_category, CommaCategory};
pub use functor::FinFunctor;
pub use limit::{finite_limit, product, pullback, CatDiagram, FinDiagramShape, Limit, Variance};
pub use search::{FunctorSearch, SearchOutcome};

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Index of an object inside a [`FinCat`].
pub type Obj = usize;
/// Index of an arrow inside a [`FinCat`].
pub type Arr = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A category description as it comes from a file or a generator, before
/// any of the laws have been checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, name, dom, cod)`
    pub arrows: Vec<(String, String, String, String)>,
    /// `(object, identity arrow)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub compose: Vec<(String, String, String)>,
}

/// A finite category with a total composition table.
///
/// Objects and arrows carry opaque string identifiers; all structure is
/// stored by index. Composition of `g` after `f` is stored per `f`, indexed
/// by the position of `g` among the arrows leaving `cod(f)`, so the table
/// holds exactly one entry per composable pair.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<Arr>,
    out: Vec<Vec<Arr>>,
    into: Vec<Vec<Arr>>,
    homs: Vec<Vec<Arr>>,
    out_pos: Vec<usize>,
    comp: Vec<Vec<Arr>>,
    obj_index: HashMap<String, Obj>,
    arr_index: HashMap<String, Arr>,
    inverses: OnceLock<Vec<Option<Arr>>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects.len())
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

impl FinCat {
    /// Builds a category from already-consistent parts. `compose(g, f)` is
    /// called once for every composable pair and must return `g∘f`.
    ///
    /// Nothing is checked here beyond index bounds; use [`FinCat::check_laws`]
    /// when the input is not trusted.
    pub fn from_table(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<Arr>,
        mut compose: impl FnMut(Arr, Arr) -> Arr,
    ) -> FinCat {
        let n = objects.len();
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        let mut homs = vec![Vec::new(); n * n];
        let mut out_pos = vec![0; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_pos[i] = out[a.dom].len();
            out[a.dom].push(i);
            into[a.cod].push(i);
            homs[a.dom * n + a.cod].push(i);
        }
        let comp = arrows
            .iter()
            .enumerate()
            .map(|(f, a)| out[a.cod].iter().map(|&g| compose(g, f)).collect())
            .collect();
        let obj_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let arr_index = arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        FinCat {
            objects,
            arrows,
            identity,
            out,
            into,
            homs,
            out_pos,
            comp,
            obj_index,
            arr_index,
            inverses: OnceLock::new(),
        }
    }

    /// Validates a raw description: identifiers, identities, totality of the
    /// composition table, identity laws and associativity.
    pub fn validate(raw: &RawCategory) -> Result<FinCat> {
        let mut obj_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::Duplicate(o.clone()));
            }
        }
        let obj = |o: &str| obj_index.get(o).copied().ok_or_else(|| Error::UnknownObject(o.to_string()));
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        let mut arr_index = HashMap::new();
        for (id, name, dom, cod) in &raw.arrows {
            if arr_index.insert(id.clone(), arrows.len()).is_some() {
                return Err(Error::Duplicate(id.clone()));
            }
            arrows.push(Arrow { id: id.clone(), name: name.clone(), dom: obj(dom)?, cod: obj(cod)? });
        }
        let arr = |a: &str| arr_index.get(a).copied().ok_or_else(|| Error::UnknownArrow(a.to_string()));
        let mut identity = vec![usize::MAX; raw.objects.len()];
        for (o, a) in &raw.identities {
            let (oi, ai) = (obj(o)?, arr(a)?);
            if arrows[ai].dom != oi || arrows[ai].cod != oi {
                return Err(Error::BadIdentity { object: o.clone(), arrow: a.clone() });
            }
            if identity[oi] != usize::MAX {
                return Err(Error::Duplicate(format!("identity of {o}")));
            }
            identity[oi] = ai;
        }
        if let Some(i) = identity.iter().position(|&a| a == usize::MAX) {
            return Err(Error::MissingIdentity(raw.objects[i].clone()));
        }
        let mut table: HashMap<(Arr, Arr), Arr> = HashMap::new();
        for (g, f, gf) in &raw.compose {
            let (gi, fi, gfi) = (arr(g)?, arr(f)?, arr(gf)?);
            if arrows[fi].cod != arrows[gi].dom {
                return Err(Error::NotComposable { g: g.clone(), f: f.clone() });
            }
            if arrows[gfi].dom != arrows[fi].dom || arrows[gfi].cod != arrows[gi].cod {
                return Err(Error::CompositeShape { g: g.clone(), f: f.clone(), gf: gf.clone() });
            }
            if let Some(prev) = table.insert((gi, fi), gfi) {
                if prev != gfi {
                    return Err(Error::Duplicate(format!("composite {g} after {f}")));
                }
            }
        }
        for (fi, fa) in arrows.iter().enumerate() {
            for (gi, ga) in arrows.iter().enumerate() {
                if ga.dom == fa.cod && !table.contains_key(&(gi, fi)) {
                    return Err(Error::MissingComposite { g: ga.id.clone(), f: fa.id.clone() });
                }
            }
        }
        let cat = FinCat::from_table(raw.objects.clone(), arrows, identity, |g, f| table[&(g, f)]);
        cat.check_laws()?;
        Ok(cat)
    }

    /// Re-derives the identity laws and associativity from the table.
    pub fn check_laws(&self) -> Result<()> {
        for f in 0..self.arrows.len() {
            let (a, b) = (self.dom(f), self.cod(f));
            if self.comp(self.identity[b], f) != f || self.comp(f, self.identity[a]) != f {
                return Err(Error::IdentityLawViolation(self.arrows[f].id.clone()));
            }
        }
        for f in 0..self.arrows.len() {
            for &g in &self.out[self.cod(f)] {
                let gf = self.comp(g, f);
                for &h in &self.out[self.cod(g)] {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        return Err(Error::NonAssociative {
                            h: self.arrows[h].id.clone(),
                            g: self.arrows[g].id.clone(),
                            f: self.arrows[f].id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exports the table back into a raw description, composites ordered by
    /// `(f, g)` index.
    pub fn to_raw(&self) -> RawCategory {
        let objects = self.objects.clone();
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.id.clone(), a.name.clone(), self.objects[a.dom].clone(), self.objects[a.cod].clone()))
            .collect();
        let identities = (0..self.objects.len())
            .map(|o| (self.objects[o].clone(), self.arrows[self.identity[o]].id.clone()))
            .collect();
        let mut compose = Vec::new();
        for f in 0..self.arrows.len() {
            for &g in &self.out[self.cod(f)] {
                compose.push((
                    self.arrows[g].id.clone(),
                    self.arrows[f].id.clone(),
                    self.arrows[self.comp(g, f)].id.clone(),
                ));
            }
        }
        RawCategory { objects, arrows, identities, compose }
    }

    pub fn terminal() -> FinCat {
        FinCat::discrete(&["*"])
    }

    pub fn discrete(names: &[&str]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow { id: format!("id_{o}"), name: format!("id_{o}"), dom: i, cod: i })
            .collect();
        let identity = (0..objects.len()).collect();
        FinCat::from_table(objects, arrows, identity, |g, _| g)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_id(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn arrow(&self, f: Arr) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_id(&self, f: Arr) -> &str {
        &self.arrows[f].id
    }

    pub fn object_index(&self, id: &str) -> Option<Obj> {
        self.obj_index.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<Arr> {
        self.arr_index.get(id).copied()
    }

    pub fn dom(&self, f: Arr) -> Obj {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: Arr) -> Obj {
        self.arrows[f].cod
    }

    pub fn id(&self, o: Obj) -> Arr {
        self.identity[o]
    }

    pub fn is_identity(&self, f: Arr) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// `g∘f`, or `None` when `cod(f) != dom(g)`.
    pub fn compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        (self.cod(f) == self.dom(g)).then(|| self.comp[f][self.out_pos[g]])
    }

    /// `g∘f` for a pair known to be composable.
    pub fn comp(&self, g: Arr, f: Arr) -> Arr {
        debug_assert_eq!(self.cod(f), self.dom(g));
        self.comp[f][self.out_pos[g]]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Arr] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn arrows_from(&self, a: Obj) -> &[Arr] {
        &self.out[a]
    }

    pub fn arrows_into(&self, b: Obj) -> &[Arr] {
        &self.into[b]
    }

    /// Two-sided inverse of `f`, found by exhaustive search over `hom(cod f, dom f)`.
    pub fn inverse(&self, f: Arr) -> Option<Arr> {
        self.inverses.get_or_init(|| {
            (0..self.arrows.len())
                .map(|f| {
                    let (a, b) = (self.dom(f), self.cod(f));
                    self.hom(b, a)
                        .iter()
                        .copied()
                        .find(|&g| self.comp(g, f) == self.identity[a] && self.comp(f, g) == self.identity[b])
                })
                .collect()
        })[f]
    }

    pub fn is_iso(&self, f: Arr) -> bool {
        self.inverse(f).is_some()
    }

    /// Every isomorphism is an identity.
    pub fn is_gaunt(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.is_identity(f) || !self.is_iso(f))
    }

    /// Non-empty, and the undirected graph induced by the arrows is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components of the underlying undirected graph, each as a
    /// sorted list of objects; components ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Obj>> {
        let mut uf = UnionFind::new(self.objects.len());
        for a in &self.arrows {
            uf.union(a.dom, a.cod);
        }
        uf.classes()
    }

    pub fn opposite(&self) -> FinCat {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), name: a.name.clone(), dom: a.cod, cod: a.dom })
            .collect();
        FinCat::from_table(self.objects.clone(), arrows, self.identity.clone(), |g, f| self.comp(f, g))
    }

    /// Same table with identifiers replaced by `o0, o1, ...` and `a0, a1, ...`.
    pub fn canonical_rename(&self) -> FinCat {
        let objects = (0..self.objects.len()).map(|i| format!("o{i}")).collect();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Arrow { id: format!("a{i}"), name: format!("a{i}"), dom: a.dom, cod: a.cod })
            .collect();
        FinCat::from_table(objects, arrows, self.identity.clone(), |g, f| self.comp(g, f))
    }

    /// Are `a` and `b` isomorphic objects?
    pub fn isomorphic(&self, a: Obj, b: Obj) -> bool {
        self.hom(a, b).iter().any(|&f| self.is_iso(f))
    }
}

/// Materializes a category whose arrows are arrows of `base` between
/// labelled objects, composing in `base`.
pub(crate) fn labelled_over(names: Vec<String>, base: &FinCat, morphisms: &[(Obj, Obj, Arr)]) -> FinCat {
    let index: HashMap<(Obj, Obj, Arr), Arr> = morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let arrows = morphisms
        .iter()
        .map(|&(i, j, h)| {
            let id = format!("{}:{i}->{j}", base.arrow_id(h));
            Arrow { name: id.clone(), id, dom: i, cod: j }
        })
        .collect();
    let identity = (0..names.len())
        .map(|i| {
            let h = morphisms.iter().find(|m| m.0 == i && m.1 == i && base.is_identity(m.2)).expect("identity").2;
            index[&(i, i, h)]
        })
        .collect();
    FinCat::from_table(names, arrows, identity, |g, f| {
        let (i, _, h1) = morphisms[f];
        let (_, k, h2) = morphisms[g];
        index[&(i, k, base.comp(h2, h1))]
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.parent.len()];
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walking_iso_raw() -> RawCategory {
        RawCategory {
            objects: vec!["a".into(), "b".into()],
            arrows: vec![
                ("1a".into(), "1a".into(), "a".into(), "a".into()),
                ("1b".into(), "1b".into(), "b".into(), "b".into()),
                ("f".into(), "f".into(), "a".into(), "b".into()),
                ("g".into(), "g".into(), "b".into(), "a".into()),
            ],
            identities: vec![("a".into(), "1a".into()), ("b".into(), "1b".into())],
            compose: vec![
                ("1a".into(), "1a".into(), "1a".into()),
                ("1b".into(), "1b".into(), "1b".into()),
                ("f".into(), "1a".into(), "f".into()),
                ("1b".into(), "f".into(), "f".into()),
                ("g".into(), "1b".into(), "g".into()),
                ("1a".into(), "g".into(), "g".into()),
                ("g".into(), "f".into(), "1a".into()),
                ("f".into(), "g".into(), "1b".into()),
            ],
        }
    }

    #[test]
    fn terminal_and_discrete_validate() {
        let t = FinCat::validate(&FinCat::terminal().to_raw()).unwrap();
        assert_eq!((t.n_objects(), t.n_arrows()), (1, 1));
        let d = FinCat::validate(&FinCat::discrete(&["x", "y"]).to_raw()).unwrap();
        assert_eq!((d.n_objects(), d.n_arrows()), (2, 2));
        assert!(!d.is_connected());
        assert!(t.is_connected());
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = walking_iso_raw();
        raw.compose.retain(|(g, f, _)| !(g == "g" && f == "f"));
        assert_eq!(
            FinCat::validate(&raw).unwrap_err(),
            Error::MissingComposite { g: "g".into(), f: "f".into() }
        );
    }

    #[test]
    fn identity_law_violation_is_reported() {
        // x∘e = e breaks the right identity law at x
        let raw = RawCategory {
            objects: vec!["*".into()],
            arrows: vec![
                ("e".into(), "e".into(), "*".into(), "*".into()),
                ("x".into(), "x".into(), "*".into(), "*".into()),
            ],
            identities: vec![("*".into(), "e".into())],
            compose: vec![
                ("e".into(), "e".into(), "e".into()),
                ("e".into(), "x".into(), "e".into()),
                ("x".into(), "e".into(), "x".into()),
                ("x".into(), "x".into(), "x".into()),
            ],
        };
        assert_eq!(FinCat::validate(&raw).unwrap_err(), Error::IdentityLawViolation("x".into()));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // monoid {e, x, y} with xy = x, yx = y... then (x y) x = x x, x (y x) = x y: pick table
        // where x x = y, and everything else collapses to x: x(xx) = xy = x, (xx)x = yx = x,
        // y(xx)= yy=x vs (yx)x = xx = y -> fails.
        let names = ["e", "x", "y"];
        let mul = |a: &str, b: &str| -> &'static str {
            match (a, b) {
                ("e", b) => match b {
                    "x" => "x",
                    "y" => "y",
                    _ => "e",
                },
                (a, "e") => {
                    if a == "x" {
                        "x"
                    } else {
                        "y"
                    }
                }
                ("x", "x") => "y",
                _ => "x",
            }
        };
        let mut compose = Vec::new();
        for g in names {
            for f in names {
                compose.push((g.to_string(), f.to_string(), mul(g, f).to_string()));
            }
        }
        let raw = RawCategory {
            objects: vec!["*".into()],
            arrows: names.iter().map(|n| (n.to_string(), n.to_string(), "*".into(), "*".into())).collect(),
            identities: vec![("*".into(), "e".into())],
            compose,
        };
        assert!(matches!(FinCat::validate(&raw), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn walking_iso_predicates() {
        let c = FinCat::validate(&walking_iso_raw()).unwrap();
        assert!(!c.is_gaunt());
        assert!(c.is_iso(c.arrow_index("f").unwrap()));
        assert!(c.is_connected());
        assert_eq!(c.opposite().opposite(), c);
    }

    #[test]
    fn opposite_of_terminal_is_terminal() {
        assert_eq!(FinCat::terminal().opposite(), FinCat::terminal());
    }
}
