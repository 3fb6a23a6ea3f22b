use std::sync::Arc;

use super::{Arr, FinCat, FinFunctor, Obj};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The whole space was explored (or the visitor stopped early).
    Complete,
    /// The node cap was hit before the space was exhausted.
    CapExceeded,
}

type ArrowFilter<'a> = Box<dyn Fn(Arr, Arr) -> bool + 'a>;

/// Backtracking enumeration of functors between two finite categories,
/// optionally constrained per object and per arrow.
pub struct FunctorSearch<'a> {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_candidates: Vec<Vec<Obj>>,
    arrow_filter: Option<ArrowFilter<'a>>,
    cap: usize,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>) -> Self {
        let all: Vec<Obj> = (0..target.n_objects()).collect();
        let obj_candidates = vec![all; source.n_objects()];
        FunctorSearch { source, target, obj_candidates, arrow_filter: None, cap: usize::MAX }
    }

    pub fn restrict_object(mut self, o: Obj, candidates: Vec<Obj>) -> Self {
        self.obj_candidates[o] = candidates;
        self
    }

    /// Only allow arrow `f` of the source to be sent to `ff` when `filter(f, ff)`.
    pub fn arrow_filter(mut self, filter: impl Fn(Arr, Arr) -> bool + 'a) -> Self {
        self.arrow_filter = Some(Box::new(filter));
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Calls `visit` on every functor; `visit` returns `false` to stop.
    pub fn for_each(&self, mut visit: impl FnMut(&FinFunctor) -> bool) -> SearchOutcome {
        let s = &*self.source;
        let t = &*self.target;
        let mut nodes = 0usize;
        let mut obj = vec![usize::MAX; s.n_objects()];

        // arrow order: identities are forced, the rest in index order
        let order: Vec<Arr> = (0..s.n_arrows()).filter(|&f| !s.is_identity(f)).collect();
        let mut pos = vec![usize::MAX; s.n_arrows()];
        for (i, &f) in order.iter().enumerate() {
            pos[f] = i;
        }
        // composable pairs (g, f) of non-identities, checked once all three are set
        let mut checks: Vec<Vec<(Arr, Arr, Arr)>> = vec![Vec::new(); order.len()];
        for &f in &order {
            for &g in s.arrows_from(s.cod(f)) {
                if s.is_identity(g) {
                    continue;
                }
                let gf = s.comp(g, f);
                let last = if s.is_identity(gf) { pos[g].max(pos[f]) } else { pos[g].max(pos[f]).max(pos[gf]) };
                checks[last].push((g, f, gf));
            }
        }

        let mut capped = false;
        self.assign_objects(
            0,
            &mut obj,
            &mut nodes,
            &mut |obj: &[Obj], nodes: &mut usize| -> bool {
                let mut arr = vec![usize::MAX; s.n_arrows()];
                for o in 0..s.n_objects() {
                    let id = s.id(o);
                    let tid = t.id(obj[o]);
                    if let Some(filter) = &self.arrow_filter {
                        if !filter(id, tid) {
                            return true;
                        }
                    }
                    arr[id] = tid;
                }
                let step = self.assign_arrows(0, &order, &checks, obj, &mut arr, nodes, &mut |arr: &[Arr]| {
                    let f = FinFunctor::new_unchecked(
                        self.source.clone(),
                        self.target.clone(),
                        obj.to_vec(),
                        arr.to_vec(),
                    );
                    visit(&f)
                });
                match step {
                    Step::Continue => true,
                    Step::Stop => false,
                    Step::Cap => {
                        capped = true;
                        false
                    }
                }
            },
        );
        if capped || nodes > self.cap {
            SearchOutcome::CapExceeded
        } else {
            SearchOutcome::Complete
        }
    }

    fn assign_objects(
        &self,
        k: usize,
        obj: &mut Vec<Obj>,
        nodes: &mut usize,
        leaf: &mut dyn FnMut(&[Obj], &mut usize) -> bool,
    ) -> bool {
        if k == obj.len() {
            return leaf(obj, nodes);
        }
        for &c in &self.obj_candidates[k] {
            *nodes += 1;
            if *nodes > self.cap {
                return false;
            }
            obj[k] = c;
            if !self.assign_objects(k + 1, obj, nodes, leaf) {
                return false;
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_arrows(
        &self,
        k: usize,
        order: &[Arr],
        checks: &[Vec<(Arr, Arr, Arr)>],
        obj: &[Obj],
        arr: &mut Vec<Arr>,
        nodes: &mut usize,
        leaf: &mut dyn FnMut(&[Arr]) -> bool,
    ) -> Step {
        if k == order.len() {
            return if leaf(arr) { Step::Continue } else { Step::Stop };
        }
        let s = &*self.source;
        let t = &*self.target;
        let f = order[k];
        for &ff in t.hom(obj[s.dom(f)], obj[s.cod(f)]) {
            *nodes += 1;
            if *nodes > self.cap {
                return Step::Cap;
            }
            if let Some(filter) = &self.arrow_filter {
                if !filter(f, ff) {
                    continue;
                }
            }
            arr[f] = ff;
            if checks[k].iter().all(|&(g, f1, gf)| arr[gf] == t.comp(arr[g], arr[f1])) {
                match self.assign_arrows(k + 1, order, checks, obj, arr, nodes, leaf) {
                    Step::Continue => {}
                    other => return other,
                }
            }
        }
        arr[f] = usize::MAX;
        Step::Continue
    }

    /// First functor found, or `None`; `Err` when the cap was hit first.
    pub fn find_first(&self) -> Result<Option<FinFunctor>, usize> {
        let mut found = None;
        let outcome = self.for_each(|f| {
            found = Some(f.clone());
            false
        });
        match (found, outcome) {
            (Some(f), _) => Ok(Some(f)),
            (None, SearchOutcome::Complete) => Ok(None),
            (None, SearchOutcome::CapExceeded) => Err(self.cap),
        }
    }

    /// All functors, or `Err(cap)` when the cap was hit.
    pub fn collect_all(&self) -> Result<Vec<FinFunctor>, usize> {
        let mut all = Vec::new();
        match self.for_each(|f| {
            all.push(f.clone());
            true
        }) {
            SearchOutcome::Complete => Ok(all),
            SearchOutcome::CapExceeded => Err(self.cap),
        }
    }
}

enum Step {
    Continue,
    Stop,
    Cap,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn counts_functors_between_small_categories() {
        // functors from the walking arrow into the walking arrow: 3 (two constants, identity)
        let arrow = Arc::new(zoo::poset_chain(2));
        let all = FunctorSearch::new(arrow.clone(), arrow).collect_all().unwrap();
        assert_eq!(all.len(), 3);
        for f in &all {
            assert!(f.check().is_ok());
        }
        // endofunctors of Z/3 as a one-object category are group endomorphisms: 3
        let z3 = Arc::new(zoo::group_category(&zoo::GroupTable::cyclic(3)).unwrap().category().clone());
        assert_eq!(FunctorSearch::new(z3.clone(), z3).collect_all().unwrap().len(), 3);
    }

    #[test]
    fn cap_is_reported() {
        let c = Arc::new(zoo::poset_chain(3));
        let search = FunctorSearch::new(c.clone(), c).cap(2);
        assert_eq!(search.collect_all(), Err(2));
    }
}
