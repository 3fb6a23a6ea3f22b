//! Quivers, bounded free categories, and the normal-form rewriting engine
//! for the category obtained from the free category on `R` by collapsing
//! composites of letters coming from `R_0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, Obj};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub nodes: Vec<String>,
    /// `(id, src, dst)`
    pub edges: Vec<(String, usize, usize)>,
}

impl Quiver {
    pub fn new(nodes: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        for (id, s, d) in &edges {
            if *s >= nodes.len() || *d >= nodes.len() {
                return Err(Error::UnknownObject(format!("endpoint of edge `{id}`")));
            }
        }
        Ok(Quiver { nodes, edges })
    }
}

/// Paths of length at most `bound` in a quiver. Composition is partial:
/// composites that would exceed the bound are reported, not stored.
#[derive(Debug, Clone)]
pub struct TruncatedFreeCategory {
    pub quiver: Quiver,
    pub bound: usize,
    /// `(src, dst, edge indices in application order)`
    pub paths: Vec<(usize, usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

pub fn free_category(q: &Quiver, max_len: usize) -> TruncatedFreeCategory {
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..q.nodes.len()).map(|n| (n, n, Vec::new())).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &p in &frontier {
            let (s, t) = (paths[p].0, paths[p].1);
            for (e, (_, es, ed)) in q.edges.iter().enumerate() {
                if *es == t {
                    let mut word = paths[p].2.clone();
                    word.push(e);
                    next.push(paths.len());
                    paths.push((s, *ed, word));
                }
            }
        }
        frontier = next;
    }
    let index = paths.iter().enumerate().map(|(i, (s, _, w))| ((*s, w.clone()), i)).collect();
    TruncatedFreeCategory { quiver: q.clone(), bound: max_len, paths, index }
}

impl TruncatedFreeCategory {
    pub fn n_arrows(&self) -> usize {
        self.paths.len()
    }

    fn path_name(&self, p: usize) -> String {
        let (s, _, w) = &self.paths[p];
        if w.is_empty() {
            format!("id_{}", self.quiver.nodes[*s])
        } else {
            w.iter().map(|&e| self.quiver.edges[e].0.as_str()).collect::<Vec<_>>().join(";")
        }
    }

    /// `g∘f` when it stays within the bound.
    pub fn compose(&self, g: usize, f: usize) -> Result<usize> {
        let (fs, ft, fw) = &self.paths[f];
        let (gs, _, gw) = &self.paths[g];
        if ft != gs {
            return Err(Error::NotComposable { g: self.path_name(g), f: self.path_name(f) });
        }
        let mut w = fw.clone();
        w.extend(gw);
        self.index.get(&(*fs, w)).copied().ok_or_else(|| Error::BoundExceeded {
            g: self.path_name(g),
            f: self.path_name(f),
            bound: self.bound,
        })
    }

    /// The materialized category, when every composite stays within the bound.
    pub fn into_fincat(&self) -> Result<FinCat> {
        let objects = self.quiver.nodes.clone();
        let arrows: Vec<Arrow> = (0..self.paths.len())
            .map(|p| Arrow { id: self.path_name(p), name: self.path_name(p), dom: self.paths[p].0, cod: self.paths[p].1 })
            .collect();
        for f in 0..self.paths.len() {
            for g in 0..self.paths.len() {
                if self.paths[f].1 == self.paths[g].0 {
                    self.compose(g, f)?;
                }
            }
        }
        let identity = (0..objects.len()).collect();
        Ok(FinCat::from_table(objects, arrows, identity, |g, f| self.compose(g, f).expect("checked above")))
    }
}

/// The pushout data: a strict Reedy category `R_0` included into `R` by `c`.
#[derive(Debug, Clone)]
pub struct AmalgamPresentation {
    pub r: Arc<FinCat>,
    pub r0: Arc<FinCat>,
    pub c: FinFunctor,
    preimage: Vec<Option<Arr>>,
}

/// A morphism of the amalgamated free category, as a normal-form word of
/// `R`-arrows in application order (first applied first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NFWord {
    pub source: Obj,
    pub target: Obj,
    pub letters: Vec<Arr>,
}

impl NFWord {
    pub fn empty(at: Obj) -> Self {
        NFWord { source: at, target: at, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

pub fn nf_equal(a: &NFWord, b: &NFWord) -> bool {
    a == b
}

impl AmalgamPresentation {
    /// Checks that `c` is a functor `R_0 → R`, injective on objects and on arrows.
    pub fn new(r: Arc<FinCat>, r0: Arc<FinCat>, c: FinFunctor) -> Result<Self> {
        if *c.source != *r0 || *c.target != *r {
            return Err(Error::PresentationInvalid("inclusion does not go from R_0 to R".into()));
        }
        c.check().map_err(|e| Error::PresentationInvalid(e.to_string()))?;
        if !c.is_injective_on_objects() {
            return Err(Error::PresentationInvalid("inclusion is not injective on objects".into()));
        }
        if !c.is_injective_on_arrows() {
            return Err(Error::PresentationInvalid("inclusion is not injective on arrows".into()));
        }
        let mut preimage = vec![None; r.n_arrows()];
        for (k, &a) in c.arr.iter().enumerate() {
            preimage[a] = Some(k);
        }
        Ok(AmalgamPresentation { r, r0, c, preimage })
    }

    /// The `R_0`-arrow a letter comes from, if any.
    pub fn preimage(&self, letter: Arr) -> Option<Arr> {
        self.preimage[letter]
    }

    pub fn is_c_letter(&self, letter: Arr) -> bool {
        self.preimage[letter].is_some()
    }

    /// A letter that is the image of an identity of `R_0`.
    pub fn is_unit_letter(&self, letter: Arr) -> bool {
        self.preimage[letter].is_some_and(|k| self.r0.is_identity(k))
    }

    /// Rewrites a composable sequence of `R`-arrows starting at `source` into
    /// its normal form: images of `R_0`-identities are deleted and adjacent
    /// images of `R_0`-arrows are composed in `R_0`.
    pub fn normalize(&self, source: Obj, letters: &[Arr]) -> Result<NFWord> {
        let r = &*self.r;
        let mut at = source;
        let mut stack: Vec<Arr> = Vec::with_capacity(letters.len());
        for &l in letters {
            if r.dom(l) != at {
                let f = stack.last().map_or_else(|| format!("id_{}", r.object_id(at)), |&x| r.arrow_id(x).to_string());
                return Err(Error::NotComposable { g: r.arrow_id(l).to_string(), f });
            }
            at = r.cod(l);
            self.push_letter(&mut stack, l);
        }
        Ok(NFWord { source, target: at, letters: stack })
    }

    fn push_letter(&self, stack: &mut Vec<Arr>, l: Arr) {
        let Some(k) = self.preimage[l] else {
            stack.push(l);
            return;
        };
        if self.r0.is_identity(k) {
            return;
        }
        match stack.last().and_then(|&t| self.preimage[t]) {
            Some(kt) => {
                stack.pop();
                let m = self.r0.comp(k, kt);
                if !self.r0.is_identity(m) {
                    stack.push(self.c.arr[m]);
                }
            }
            None => stack.push(l),
        }
    }

    /// Normal-form wellformedness: composable, no unit letters, no two
    /// adjacent `c`-letters.
    pub fn is_normal(&self, w: &NFWord) -> bool {
        let r = &*self.r;
        let mut at = w.source;
        for (i, &l) in w.letters.iter().enumerate() {
            if r.dom(l) != at || self.is_unit_letter(l) {
                return false;
            }
            if i > 0 && self.is_c_letter(l) && self.is_c_letter(w.letters[i - 1]) {
                return false;
            }
            at = r.cod(l);
        }
        at == w.target
    }

    /// `a` after `b`.
    pub fn nf_compose(&self, a: &NFWord, b: &NFWord) -> Result<NFWord> {
        if b.target != a.source {
            return Err(Error::NotComposable { g: self.render(a), f: self.render(b) });
        }
        let mut stack = b.letters.clone();
        for &l in &a.letters {
            self.push_letter(&mut stack, l);
        }
        Ok(NFWord { source: b.source, target: a.target, letters: stack })
    }

    /// All normal words `src → tgt` of length at most `max_len`, ordered by
    /// length and then lexicographically by letter index.
    pub fn nf_hom_enum(&self, src: Obj, tgt: Obj, max_len: usize) -> Vec<NFWord> {
        let r = &*self.r;
        let mut out = Vec::new();
        let mut layer = vec![NFWord::empty(src)];
        for len in 0..=max_len {
            out.extend(layer.iter().filter(|w| w.target == tgt).cloned());
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                let last_is_c = w.letters.last().is_some_and(|&l| self.is_c_letter(l));
                for &l in r.arrows_from(w.target) {
                    if self.is_unit_letter(l) || (last_is_c && self.is_c_letter(l)) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(NFWord { source: w.source, target: r.cod(l), letters });
                }
            }
            next.sort();
            layer = next;
        }
        out
    }

    /// Composes the letters in `R`.
    pub fn p0_apply(&self, w: &NFWord) -> Arr {
        w.letters.iter().fold(self.r.id(w.source), |acc, &l| self.r.comp(l, acc))
    }

    /// Diagrammatic rendering `f;g;h`, or `id<y>` for the empty word at `y`.
    pub fn render(&self, w: &NFWord) -> String {
        if w.letters.is_empty() {
            format!("id<{}>", self.r.object_id(w.source))
        } else {
            w.letters.iter().map(|&l| self.r.arrow_id(l)).collect::<Vec<_>>().join(";")
        }
    }
}

impl fmt::Display for NFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, GroupTable};

    fn quiver(nodes: &[&str], edges: &[(&str, usize, usize)]) -> Quiver {
        Quiver::new(
            nodes.iter().map(|s| s.to_string()).collect(),
            edges.iter().map(|(n, s, d)| (n.to_string(), *s, *d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn free_category_examples() {
        let q = quiver(&["*"], &[]);
        let c = free_category(&q, 7).into_fincat().unwrap();
        assert_eq!((c.n_objects(), c.n_arrows()), (1, 1));

        let q = quiver(&["*"], &[("l", 0, 0)]);
        let t = free_category(&q, 3);
        assert_eq!(t.n_arrows(), 4);
        let (l2, l2b) = (2, 2);
        assert!(matches!(t.compose(l2, l2b), Err(Error::BoundExceeded { .. })));
        assert!(matches!(t.into_fincat(), Err(Error::BoundExceeded { .. })));

        let q = quiver(&["a", "b"], &[("f", 0, 1)]);
        let c = free_category(&q, 5).into_fincat().unwrap();
        assert_eq!(c.n_arrows(), 3);
        c.check_laws().unwrap();
    }

    fn z(n: usize) -> AmalgamPresentation {
        zoo::group_category(&GroupTable::cyclic(n)).unwrap().presentation
    }

    #[test]
    fn unit_letter_collapses() {
        let p = z(2);
        let e = p.c.arr[0];
        assert_eq!(p.normalize(0, &[e]).unwrap(), NFWord::empty(0));
    }

    #[test]
    fn free_letters_do_not_compose() {
        let p = z(3);
        let g = p.r.arrow_index("g1").unwrap();
        let w = p.normalize(0, &[g, g]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(p.r.arrow_id(p.p0_apply(&w)), "g2");
    }

    #[test]
    fn hom_enumeration_counts() {
        let p = z(2);
        assert_eq!(p.nf_hom_enum(0, 0, 3).len(), 4);
        assert_eq!(p.nf_hom_enum(0, 0, 0), vec![NFWord::empty(0)]);
        let p3 = z(3);
        let one = p3.nf_hom_enum(0, 0, 1);
        assert_eq!(one.len(), 3);
        assert!(!nf_equal(&one[1], &one[2]));
    }

    #[test]
    fn c_letters_merge_in_cube_presentation() {
        let cube = zoo::cube_category(&zoo::CubeSpec { max_dim: 2, symmetries: true, degeneracies: false });
        let pres = cube.presentation.expect("symmetric cubes come with a presentation");
        let r0 = &*pres.r0;
        let mut checked = 0;
        for k1 in 0..r0.n_arrows() {
            for &k2 in r0.arrows_from(r0.cod(k1)) {
                let word = pres.normalize(pres.c.obj[r0.dom(k1)], &[pres.c.arr[k1], pres.c.arr[k2]]).unwrap();
                let direct = pres.normalize(pres.c.obj[r0.dom(k1)], &[pres.c.arr[r0.comp(k2, k1)]]).unwrap();
                assert_eq!(word, direct);
                assert!(word.len() <= 1);
                checked += 1;
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn not_composable_is_reported() {
        let cube = zoo::cube_category(&zoo::CubeSpec { max_dim: 1, symmetries: true, degeneracies: false });
        let pres = cube.presentation.unwrap();
        let face = (0..pres.r.n_arrows()).find(|&a| pres.r.dom(a) == 0 && pres.r.cod(a) == 1).unwrap();
        assert!(matches!(pres.normalize(0, &[face, face]), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn compose_is_unital() {
        let p = z(3);
        let g = p.r.arrow_index("g1").unwrap();
        let w = p.normalize(0, &[g]).unwrap();
        let e = NFWord::empty(0);
        assert_eq!(p.nf_compose(&w, &e).unwrap(), w);
        assert_eq!(p.nf_compose(&e, &w).unwrap(), w);
    }
}
