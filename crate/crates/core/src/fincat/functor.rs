use std::sync::Arc;

use super::{Arr, FinCat, Obj};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj: Vec<Obj>,
    pub arr: Vec<Arr>,
}

impl FinFunctor {
    /// Checks dom/cod, identities and composition exhaustively.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<Obj>, arr: Vec<Arr>) -> Result<Self> {
        let f = FinFunctor::new_unchecked(source, target, obj, arr);
        f.check()?;
        Ok(f)
    }

    pub fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<Obj>, arr: Vec<Arr>) -> Self {
        FinFunctor { source, target, obj, arr }
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj.len() != s.n_objects() || self.arr.len() != s.n_arrows() {
            return Err(Error::NotAFunctor("map sizes do not match the source".into()));
        }
        if self.obj.iter().any(|&o| o >= t.n_objects()) || self.arr.iter().any(|&a| a >= t.n_arrows()) {
            return Err(Error::NotAFunctor("image out of range".into()));
        }
        for f in 0..s.n_arrows() {
            let ff = self.arr[f];
            if t.dom(ff) != self.obj[s.dom(f)] || t.cod(ff) != self.obj[s.cod(f)] {
                return Err(Error::NotAFunctor(format!("arrow `{}` is sent to a wrongly typed arrow", s.arrow_id(f))));
            }
        }
        for o in 0..s.n_objects() {
            if self.arr[s.id(o)] != t.id(self.obj[o]) {
                return Err(Error::NotAFunctor(format!("identity of `{}` not preserved", s.object_id(o))));
            }
        }
        for f in 0..s.n_arrows() {
            for &g in s.arrows_from(s.cod(f)) {
                if self.arr[s.comp(g, f)] != t.comp(self.arr[g], self.arr[f]) {
                    return Err(Error::NotAFunctor(format!(
                        "composite `{}` after `{}` not preserved",
                        s.arrow_id(g),
                        s.arrow_id(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj = (0..c.n_objects()).collect();
        let arr = (0..c.n_arrows()).collect();
        FinFunctor { source: c.clone(), target: c, obj, arr }
    }

    /// The unique functor into the terminal category.
    pub fn to_terminal(c: Arc<FinCat>) -> Self {
        let obj = vec![0; c.n_objects()];
        let arr = vec![0; c.n_arrows()];
        FinFunctor { source: c, target: Arc::new(FinCat::terminal()), obj, arr }
    }

    /// The functor from the terminal category picking out `o`.
    pub fn point(c: Arc<FinCat>, o: Obj) -> Self {
        let arr = vec![c.id(o)];
        FinFunctor { source: Arc::new(FinCat::terminal()), target: c, obj: vec![o], arr }
    }

    /// `self` after `first`. Panics if the categories do not line up.
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        assert!(
            Arc::ptr_eq(&first.target, &self.source) || *first.target == *self.source,
            "functor composition: categories do not match"
        );
        FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj: first.obj.iter().map(|&o| self.obj[o]).collect(),
            arr: first.arr.iter().map(|&a| self.arr[a]).collect(),
        }
    }

    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            obj: self.obj.clone(),
            arr: self.arr.clone(),
        }
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.n_objects()];
        self.obj.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_injective_on_arrows(&self) -> bool {
        let mut seen = vec![false; self.target.n_arrows()];
        self.arr.iter().all(|&a| !std::mem::replace(&mut seen[a], true))
    }

    /// Every hom-set map `hom(a, a') → hom(Fa, Fa')` is a bijection.
    pub fn is_fully_faithful(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        for a in 0..s.n_objects() {
            for b in 0..s.n_objects() {
                let target_hom = t.hom(self.obj[a], self.obj[b]);
                let source_hom = s.hom(a, b);
                if source_hom.len() != target_hom.len() {
                    return false;
                }
                let mut hit = vec![false; t.n_arrows()];
                for &f in source_hom {
                    if std::mem::replace(&mut hit[self.arr[f]], true) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every object of the target is isomorphic to some `F(a)`.
    pub fn is_essentially_surjective(&self) -> bool {
        let t = &*self.target;
        (0..t.n_objects()).all(|b| self.obj.iter().any(|&fa| t.isomorphic(fa, b)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    /// Bijective on objects and on arrows.
    pub fn is_isomorphism(&self) -> bool {
        self.obj.len() == self.target.n_objects()
            && self.arr.len() == self.target.n_arrows()
            && self.is_injective_on_objects()
            && self.is_injective_on_arrows()
    }

    /// Inverse of an isomorphism of categories.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj = vec![0; self.obj.len()];
        for (a, &b) in self.obj.iter().enumerate() {
            obj[b] = a;
        }
        let mut arr = vec![0; self.arr.len()];
        for (a, &b) in self.arr.iter().enumerate() {
            arr[b] = a;
        }
        Some(FinFunctor { source: self.target.clone(), target: self.source.clone(), obj, arr })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn identity_functor_is_equivalence() {
        let c = Arc::new(zoo::walking_iso());
        let id = FinFunctor::identity(c);
        assert!(id.check().is_ok());
        assert!(id.is_equivalence());
        assert!(id.is_isomorphism());
    }

    #[test]
    fn walking_iso_to_terminal_is_equivalence() {
        let f = FinFunctor::to_terminal(Arc::new(zoo::walking_iso()));
        assert!(f.check().is_ok());
        assert!(f.is_equivalence());
        assert!(f.opposite().is_equivalence());
    }

    #[test]
    fn discrete_two_to_terminal_is_not_fully_faithful() {
        let f = FinFunctor::to_terminal(Arc::new(FinCat::discrete(&["a", "b"])));
        assert!(!f.is_fully_faithful());
        assert!(!f.is_equivalence());
    }

    #[test]
    fn non_functor_rejected() {
        let c = Arc::new(zoo::walking_iso());
        let t = Arc::new(FinCat::discrete(&["x", "y"]));
        // a ↦ x, b ↦ y cannot send f: a → b anywhere
        let f = c.arrow_index("f").unwrap();
        let mut arr = vec![0; c.n_arrows()];
        arr[f] = 0;
        let r = FinFunctor::new(c, t, vec![0, 1], arr);
        assert!(matches!(r, Err(Error::NotAFunctor(_))));
    }
}
