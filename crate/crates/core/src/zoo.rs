//! Deterministic example inputs: finite groups as one-object categories,
//! truncated cube categories, small posets and monoids, and the fixtures
//! that exercise failure paths of the checkers.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, Obj};
use crate::freecat::AmalgamPresentation;
use crate::reedy::ReedyStructure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub elements: Vec<String>,
    /// `mult[a][b] = a·b`
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

impl GroupTable {
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { elements, mult, unit: 0 }
    }

    /// Permutations of three points in lexicographic order, composed as functions.
    pub fn symmetric3() -> Self {
        let mut perms: Vec<[usize; 3]> = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        perms.push([a, b, c]);
                    }
                }
            }
        }
        let index: HashMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mult = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&[p[q[0]], p[q[1]], p[q[2]]]]).collect())
            .collect();
        let elements = perms
            .iter()
            .map(|p| if *p == [0, 1, 2] { "e".to_string() } else { format!("s{}{}{}", p[0], p[1], p[2]) })
            .collect();
        GroupTable { elements, mult, unit: 0 }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "Z2" => Some(GroupTable::cyclic(2)),
            "Z3" => Some(GroupTable::cyclic(3)),
            "S3" => Some(GroupTable::symmetric3()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 || self.unit >= n {
            return Err(Error::NotAGroup("no unit element".into()));
        }
        if self.mult.len() != n || self.mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("multiplication table is not total".into()));
        }
        let m = &self.mult;
        let name = |i: usize| self.elements[i].clone();
        for a in 0..n {
            if m[self.unit][a] != a || m[a][self.unit] != a {
                return Err(Error::NotAGroup(format!("unit law fails at `{}`", name(a))));
            }
            if !(0..n).any(|b| m[a][b] == self.unit && m[b][a] == self.unit) {
                return Err(Error::NotAGroup(format!("`{}` has no inverse", name(a))));
            }
            for b in 0..n {
                for c in 0..n {
                    if m[m[a][b]][c] != m[a][m[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A one-object category from a multiplication table; `table[g][f] = g∘f`.
pub fn monoid(object: &str, elements: &[&str], unit: usize, table: &[Vec<usize>]) -> FinCat {
    let arrows = elements
        .iter()
        .map(|e| Arrow { id: e.to_string(), name: e.to_string(), dom: 0, cod: 0 })
        .collect();
    FinCat::from_table(vec![object.to_string()], arrows, vec![unit], |g, f| table[g][f])
}

#[derive(Debug, Clone)]
pub struct GroupExample {
    pub table: GroupTable,
    pub presentation: AmalgamPresentation,
    pub reedy: ReedyStructure,
    pub sub_reedy: ReedyStructure,
}

impl GroupExample {
    pub fn category(&self) -> &FinCat {
        &self.presentation.r
    }
}

/// The group as a one-object category, included into by the terminal category.
pub fn group_category(t: &GroupTable) -> Result<GroupExample> {
    t.validate()?;
    let names: Vec<&str> = t.elements.iter().map(String::as_str).collect();
    let g = Arc::new(monoid("*", &names, t.unit, &t.mult));
    let one = Arc::new(FinCat::terminal());
    let c = FinFunctor::new(one.clone(), g.clone(), vec![0], vec![t.unit])?;
    let presentation = AmalgamPresentation::new(g.clone(), one.clone(), c)?;
    let reedy = ReedyStructure::all_plus(g, vec![0]);
    let sub_reedy = ReedyStructure::all_plus(one, vec![0]);
    Ok(GroupExample { table: t.clone(), presentation, reedy, sub_reedy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeSpec {
    pub max_dim: usize,
    pub symmetries: bool,
    pub degeneracies: bool,
}

/// One output coordinate of a cube map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Const(u8),
    Input(usize),
}

#[derive(Debug, Clone)]
pub struct CubeExample {
    pub spec: CubeSpec,
    pub category: Arc<FinCat>,
    pub reedy: ReedyStructure,
    /// `(m, n, assignment)` per arrow.
    pub maps: Vec<(usize, usize, Vec<Coord>)>,
    pub presentation: Option<AmalgamPresentation>,
    pub sub_reedy: Option<ReedyStructure>,
}

fn cube_code(a: &[Coord]) -> String {
    a.iter()
        .map(|c| match c {
            Coord::Const(b) => char::from(b'0' + b),
            Coord::Input(i) => char::from(b'a' + *i as u8),
        })
        .collect()
}

fn cube_maps(m: usize, n: usize, spec: &CubeSpec) -> Vec<Vec<Coord>> {
    fn go(m: usize, n: usize, spec: &CubeSpec, cur: &mut Vec<Coord>, used: &mut Vec<bool>, out: &mut Vec<Vec<Coord>>) {
        if cur.len() == n {
            if spec.degeneracies || used.iter().all(|&u| u) {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..2 {
            cur.push(Coord::Const(b));
            go(m, n, spec, cur, used, out);
            cur.pop();
        }
        let last = cur.iter().rev().find_map(|c| match c {
            Coord::Input(i) => Some(*i),
            Coord::Const(_) => None,
        });
        for i in 0..m {
            if used[i] || (!spec.symmetries && last.is_some_and(|l| i < l)) {
                continue;
            }
            used[i] = true;
            cur.push(Coord::Input(i));
            go(m, n, spec, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    go(m, n, spec, &mut Vec::new(), &mut vec![false; m], &mut out);
    out.sort();
    out
}

fn substitute(g: &[Coord], f: &[Coord]) -> Vec<Coord> {
    g.iter()
        .map(|c| match c {
            Coord::Const(b) => Coord::Const(*b),
            Coord::Input(i) => f[*i],
        })
        .collect()
}

/// Cube category on dimensions `0..=max_dim`. A map `[m] → [n]` assigns to
/// each output coordinate a constant or a distinct input coordinate; all
/// inputs are used unless degeneracies are on, and used inputs appear in
/// increasing order unless symmetries are on.
pub fn cube_category(spec: &CubeSpec) -> CubeExample {
    let (category, maps) = cube_raw(spec);
    let degree = (0..=spec.max_dim).collect();
    let plus = maps.iter().map(|(m, _, a)| (0..*m).all(|i| a.contains(&Coord::Input(i)))).collect();
    let minus = maps.iter().map(|(_, _, a)| a.iter().all(|c| matches!(c, Coord::Input(_)))).collect();
    let reedy = ReedyStructure { base: category.clone(), degree, plus, minus };
    let (presentation, sub_reedy) = if spec.symmetries {
        let mono = cube_category(&CubeSpec { symmetries: false, ..*spec });
        let obj = (0..=spec.max_dim).collect();
        let arr = (0..mono.category.n_arrows())
            .map(|k| category.arrow_index(mono.category.arrow_id(k)).expect("monotone maps are maps"))
            .collect();
        let c = FinFunctor::new_unchecked(mono.category.clone(), category.clone(), obj, arr);
        let pres = AmalgamPresentation::new(category.clone(), mono.category.clone(), c).expect("inclusion is faithful");
        (Some(pres), Some(mono.reedy))
    } else {
        (None, None)
    };
    CubeExample { spec: *spec, category, reedy, maps, presentation, sub_reedy }
}

type CubeMaps = Vec<(usize, usize, Vec<Coord>)>;

fn cube_raw(spec: &CubeSpec) -> (Arc<FinCat>, CubeMaps) {
    let mut maps = Vec::new();
    for m in 0..=spec.max_dim {
        for n in 0..=spec.max_dim {
            for a in cube_maps(m, n, spec) {
                maps.push((m, n, a));
            }
        }
    }
    let index: HashMap<(usize, Vec<Coord>), Arr> =
        maps.iter().enumerate().map(|(i, (m, _, a))| ((*m, a.clone()), i)).collect();
    let objects = (0..=spec.max_dim).map(|d| d.to_string()).collect();
    let arrows = maps
        .iter()
        .map(|(m, n, a)| {
            let id = format!("c{m}_{n}:{}", cube_code(a));
            Arrow { name: id.clone(), id, dom: *m, cod: *n }
        })
        .collect();
    let identity = (0..=spec.max_dim)
        .map(|d| index[&(d, (0..d).map(Coord::Input).collect::<Vec<_>>())])
        .collect();
    let category = FinCat::from_table(objects, arrows, identity, |g, f| {
        let composite = substitute(&maps[g].2, &maps[f].2);
        index[&(maps[f].0, composite)]
    });
    (Arc::new(category), maps)
}

pub fn walking_iso() -> FinCat {
    let raw_arrows = [("id_a", 0, 0), ("id_b", 1, 1), ("f", 0, 1), ("g", 1, 0)];
    let arrows = raw_arrows
        .iter()
        .map(|(id, d, c)| Arrow { id: id.to_string(), name: id.to_string(), dom: *d, cod: *c })
        .collect();
    // g∘f = id_a, f∘g = id_b
    FinCat::from_table(vec!["a".into(), "b".into()], arrows, vec![0, 1], |g, f| match (g, f) {
        (g, 0) | (g, 1) => g,
        (0, f) | (1, f) => f,
        (3, 2) => 0,
        (2, 3) => 1,
        _ => unreachable!("not composable"),
    })
}

/// A finite poset given by its objects and a relation whose reflexive
/// transitive closure is taken. Arrow ids are `i<=j` and `id_i`.
pub fn poset(names: &[&str], relation: &[(usize, usize)]) -> FinCat {
    let n = names.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in relation {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            assert!(i == j || !(leq[i][j] && leq[j][i]), "relation is not antisymmetric");
        }
    }
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                let id = if i == j { format!("id_{}", names[i]) } else { format!("{}<={}", names[i], names[j]) };
                index.insert((i, j), arrows.len());
                arrows.push(Arrow { name: id.clone(), id, dom: i, cod: j });
            }
        }
    }
    let identity = (0..n).map(|i| index[&(i, i)]).collect();
    let ends: Vec<(Obj, Obj)> = arrows.iter().map(|a| (a.dom, a.cod)).collect();
    FinCat::from_table(names.iter().map(|s| s.to_string()).collect(), arrows, identity, |g, f| {
        index[&(ends[f].0, ends[g].1)]
    })
}

/// `0 → 1 → … → n-1`
pub fn poset_chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    poset(&refs, &rel)
}

/// The chaotic (indiscrete) category on `n` objects: one arrow between any two.
pub fn chaotic(n: usize) -> FinCat {
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { format!("id_{i}") } else { format!("{i}~{j}") };
            arrows.push(Arrow { name: id.clone(), id, dom: i, cod: j });
        }
    }
    let identity = (0..n).map(|i| i * n + i).collect();
    FinCat::from_table((0..n).map(|i| i.to_string()).collect(), arrows, identity, |g, f| (f / n) * n + g % n)
}

/// Two parallel arrows `s, t: 0 → 1`.
pub fn parallel_pair() -> FinCat {
    let arrows = [("id_0", 0, 0), ("id_1", 1, 1), ("s", 0, 1), ("t", 0, 1)]
        .iter()
        .map(|(id, d, c)| Arrow { id: id.to_string(), name: id.to_string(), dom: *d, cod: *c })
        .collect();
    FinCat::from_table(vec!["0".into(), "1".into()], arrows, vec![0, 1], |g, f| if g < 2 { f } else { g })
}

/// Small categories tagged with whether they are gaunt, by construction.
pub fn gaunt_catalog() -> Vec<(&'static str, FinCat, bool)> {
    vec![
        ("terminal", FinCat::terminal(), true),
        ("discrete2", FinCat::discrete(&["x", "y"]), true),
        ("chain2", poset_chain(2), true),
        ("chain3", poset_chain(3), true),
        ("span", poset(&["l", "m", "r"], &[(1, 0), (1, 2)]), true),
        ("square", poset(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)]), true),
        ("parallel-pair", parallel_pair(), true),
        ("idempotent", monoid("*", &["e", "x"], 0, &[vec![0, 1], vec![1, 1]]), true),
        ("walking-iso", walking_iso(), false),
        ("chaotic3", chaotic(3), false),
        ("z2", monoid("*", &["e", "g"], 0, &[vec![0, 1], vec![1, 0]]), false),
        ("iso-plus-point", walking_iso_plus_point(), false),
    ]
}

/// The walking isomorphism together with a disjoint terminal object.
fn walking_iso_plus_point() -> FinCat {
    let w = walking_iso();
    let mut arrows: Vec<Arrow> = w.arrows().to_vec();
    arrows.push(Arrow { id: "id_p".into(), name: "id_p".into(), dom: 2, cod: 2 });
    FinCat::from_table(vec!["a".into(), "b".into(), "p".into()], arrows, vec![0, 1, 4], |g, f| {
        if f == 4 {
            4
        } else {
            w.comp(g, f)
        }
    })
}

/// The inclusion of the discrete category on `a, b` into the walking
/// isomorphism: a presentation whose lifting condition fails, and a functor
/// that is not absolutely dense.
#[derive(Debug, Clone)]
pub struct DiscreteIsoFixture {
    pub presentation: AmalgamPresentation,
    pub sub_reedy: ReedyStructure,
    pub reedy: ReedyStructure,
}

impl DiscreteIsoFixture {
    pub fn inclusion(&self) -> &FinFunctor {
        &self.presentation.c
    }
}

pub fn discrete_into_walking_iso() -> DiscreteIsoFixture {
    let d = Arc::new(FinCat::discrete(&["a", "b"]));
    let w = Arc::new(walking_iso());
    let c = FinFunctor::new(d.clone(), w.clone(), vec![0, 1], vec![0, 1]).expect("inclusion is a functor");
    let presentation = AmalgamPresentation::new(w.clone(), d.clone(), c).expect("inclusion is faithful");
    DiscreteIsoFixture {
        presentation,
        sub_reedy: ReedyStructure::all_plus(d, vec![0, 0]),
        reedy: ReedyStructure::all_plus(w, vec![0, 0]),
    }
}

/// A Reedy functor from the cospan `a → c ← b` onto the walking arrow whose
/// factorization category for the arrow of the target, through `c`, has two
/// components.
#[derive(Debug, Clone)]
pub struct CofiberingFixture {
    pub functor: FinFunctor,
    pub source_reedy: ReedyStructure,
    pub target_reedy: ReedyStructure,
}

pub fn non_cofibering_fixture() -> CofiberingFixture {
    let cospan = Arc::new(poset(&["a", "b", "c"], &[(0, 2), (1, 2)]));
    let arrow = Arc::new(poset_chain(2));
    let obj = vec![0, 0, 1];
    let arr = (0..cospan.n_arrows())
        .map(|f| {
            let (a, b) = (obj[cospan.dom(f)], obj[cospan.cod(f)]);
            arrow.hom(a, b)[0]
        })
        .collect();
    let functor = FinFunctor::new(cospan.clone(), arrow.clone(), obj, arr).expect("collapse is a functor");
    CofiberingFixture {
        functor,
        source_reedy: ReedyStructure::all_plus(cospan, vec![0, 0, 1]),
        target_reedy: ReedyStructure::all_plus(arrow, vec![0, 1]),
    }
}

/// Every presentation of the zoo that is meant to satisfy the lifting
/// condition, with the Reedy structures on `R` and `R_0`.
pub fn presentations() -> Vec<(String, AmalgamPresentation, ReedyStructure, ReedyStructure)> {
    let mut out = Vec::new();
    for name in ["Z2", "Z3", "S3"] {
        let ex = group_category(&GroupTable::by_name(name).expect("known group")).expect("valid group");
        out.push((name.to_string(), ex.presentation, ex.reedy, ex.sub_reedy));
    }
    for dim in 1..=2 {
        let cube = cube_category(&CubeSpec { max_dim: dim, symmetries: true, degeneracies: false });
        out.push((
            format!("cube{dim}-sym"),
            cube.presentation.expect("symmetric cube"),
            cube.reedy,
            cube.sub_reedy.expect("symmetric cube"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reedy::{check_generalized_direct, check_lifting_condition, check_strict};

    #[test]
    fn groups() {
        for (g, n) in [(GroupTable::cyclic(2), 2), (GroupTable::cyclic(3), 3), (GroupTable::symmetric3(), 6)] {
            let ex = group_category(&g).unwrap();
            let c = ex.category();
            assert_eq!((c.n_objects(), c.n_arrows()), (1, n));
            c.check_laws().unwrap();
            assert!((0..n).all(|a| c.is_iso(a)));
        }
        assert!(check_generalized_direct(&group_category(&GroupTable::symmetric3()).unwrap().reedy).passed());
    }

    #[test]
    fn s3_is_not_abelian() {
        let t = GroupTable::symmetric3();
        assert!((0..6).any(|a| (0..6).any(|b| t.mult[a][b] != t.mult[b][a])));
    }

    #[test]
    fn non_group_is_rejected() {
        let mut t = GroupTable::cyclic(3);
        t.mult[1][1] = 1;
        assert!(matches!(t.validate(), Err(Error::NotAGroup(_))));
        assert!(matches!(group_category(&t), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn cube_hom_counts() {
        let c = cube_category(&CubeSpec { max_dim: 1, symmetries: false, degeneracies: false });
        assert_eq!(c.category.hom(0, 1).len(), 2);
        c.category.check_laws().unwrap();
        let s = cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        s.category.check_laws().unwrap();
        assert_eq!(s.category.hom(2, 2).len(), 2);
        let d = cube_category(&CubeSpec { max_dim: 2, symmetries: true, degeneracies: true });
        d.category.check_laws().unwrap();
        // [1] → [0]: the unique degeneracy
        assert_eq!(d.category.hom(1, 0).len(), 1);
    }

    #[test]
    fn cube_generation_is_deterministic() {
        let spec = CubeSpec { max_dim: 3, symmetries: true, degeneracies: true };
        assert_eq!(*cube_category(&spec).category, *cube_category(&spec).category);
    }

    #[test]
    fn catalog_tags_are_correct() {
        let cat = gaunt_catalog();
        assert!(cat.len() >= 10);
        for (name, c, gaunt) in &cat {
            c.check_laws().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(c.is_gaunt(), *gaunt, "{name}");
        }
    }

    #[test]
    fn zoo_presentations_lift() {
        for (name, pres, _, s0) in presentations() {
            assert!(check_strict(&s0).passed(), "{name}");
            assert!(check_lifting_condition(&pres, &s0).passed(), "{name}");
        }
    }
}
