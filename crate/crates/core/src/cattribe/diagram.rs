use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatDiagram, FinCat, FinDiagramShape, FinFunctor, Obj};

/// A contravariant diagram of finite categories: `u: a → b` acts as
/// `action[u]: values[b] → values[a]`.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub shape: Arc<FinCat>,
    pub values: Vec<Arc<FinCat>>,
    pub action: Vec<FinFunctor>,
}

/// A natural transformation between diagrams on the same shape.
#[derive(Debug, Clone)]
pub struct DiagramMap {
    pub source: Diagram,
    pub target: Diagram,
    pub components: Vec<FinFunctor>,
}

fn same_functor(a: &FinFunctor, b: &FinFunctor) -> bool {
    a.obj == b.obj && a.arr == b.arr
}

impl Diagram {
    pub fn new(shape: Arc<FinCat>, values: Vec<Arc<FinCat>>, action: Vec<FinFunctor>) -> Result<Self> {
        let d = Diagram { shape, values, action };
        d.check()?;
        Ok(d)
    }

    pub fn as_cat_diagram(&self) -> CatDiagram {
        CatDiagram {
            shape: FinDiagramShape::opposite(self.shape.clone()),
            values: self.values.clone(),
            maps: self.action.clone(),
        }
    }

    /// Identities to identities, `action[g∘f] = action[f]∘action[g]`.
    pub fn check(&self) -> Result<()> {
        self.as_cat_diagram().check()?;
        for (u, m) in self.action.iter().enumerate() {
            m.check().map_err(|e| Error::NonFunctorialDiagram(format!("`{}`: {e}", self.shape.arrow_id(u))))?;
        }
        Ok(())
    }

    /// Every value the same category, every action the identity.
    pub fn constant(shape: Arc<FinCat>, c: Arc<FinCat>) -> Diagram {
        let values = vec![c.clone(); shape.n_objects()];
        let action = vec![FinFunctor::identity(c); shape.n_arrows()];
        Diagram { shape, values, action }
    }

    pub fn terminal(shape: Arc<FinCat>) -> Diagram {
        Diagram::constant(shape, Arc::new(FinCat::terminal()))
    }

    /// Value `c` at the single object of a monoid shape, arrows acting by
    /// the given endofunctors.
    pub fn one_object(shape: Arc<FinCat>, c: Arc<FinCat>, action: Vec<FinFunctor>) -> Result<Diagram> {
        if shape.n_objects() != 1 {
            return Err(Error::Precondition("shape has more than one object".into()));
        }
        Diagram::new(shape, vec![c], action)
    }

    pub fn value(&self, o: Obj) -> &Arc<FinCat> {
        &self.values[o]
    }
}

impl DiagramMap {
    pub fn new(source: Diagram, target: Diagram, components: Vec<FinFunctor>) -> Result<Self> {
        let m = DiagramMap { source, target, components };
        m.check()?;
        Ok(m)
    }

    /// Components are functors between the right values and every
    /// naturality square `m_a∘X(u) = Y(u)∘m_b` commutes.
    pub fn check(&self) -> Result<()> {
        let shape = &*self.source.shape;
        if *self.target.shape != *shape || self.components.len() != shape.n_objects() {
            return Err(Error::NonFunctorialDiagram("map between diagrams on different shapes".into()));
        }
        for (o, c) in self.components.iter().enumerate() {
            if *c.source != *self.source.values[o] || *c.target != *self.target.values[o] {
                return Err(Error::NonFunctorialDiagram(format!("component at `{}` has the wrong ends", shape.object_id(o))));
            }
            c.check()?;
        }
        for u in 0..shape.n_arrows() {
            let (a, b) = (shape.dom(u), shape.cod(u));
            let lhs = self.components[a].after(&self.source.action[u]);
            let rhs = self.target.action[u].after(&self.components[b]);
            if !same_functor(&lhs, &rhs) {
                return Err(Error::NonFunctorialDiagram(format!("naturality fails at `{}`", shape.arrow_id(u))));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Diagram) -> DiagramMap {
        let components = x.values.iter().map(|c| FinFunctor::identity(c.clone())).collect();
        DiagramMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn to_terminal(x: &Diagram) -> DiagramMap {
        let t = Diagram::terminal(x.shape.clone());
        let components = x
            .values
            .iter()
            .zip(&t.values)
            .map(|(c, tv)| FinFunctor::new_unchecked(c.clone(), tv.clone(), vec![0; c.n_objects()], vec![0; c.n_arrows()]))
            .collect();
        DiagramMap { source: x.clone(), target: t, components }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &DiagramMap) -> DiagramMap {
        let components = self.components.iter().zip(&first.components).map(|(g, f)| g.after(f)).collect();
        DiagramMap { source: first.source.clone(), target: self.target.clone(), components }
    }

    pub fn is_pointwise_iso(&self) -> bool {
        self.components.iter().all(FinFunctor::is_isomorphism)
    }

    pub fn inverse(&self) -> Option<DiagramMap> {
        let components = self.components.iter().map(FinFunctor::inverse).collect::<Option<Vec<_>>>()?;
        Some(DiagramMap { source: self.target.clone(), target: self.source.clone(), components })
    }

    /// Same components as `other`, compared index-wise.
    pub fn same_components(&self, other: &DiagramMap) -> bool {
        self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| same_functor(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn involution_diagram() {
        let z2 = Arc::new(zoo::group_category(&zoo::GroupTable::cyclic(2)).unwrap().category().clone());
        let w = Arc::new(zoo::walking_iso());
        let swap = FinFunctor::new(w.clone(), w.clone(), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
        let d = Diagram::one_object(z2.clone(), w.clone(), vec![FinFunctor::identity(w.clone()), swap.clone()]).unwrap();
        let id = DiagramMap::identity(&d);
        id.check().unwrap();
        assert!(id.is_pointwise_iso());
        DiagramMap::to_terminal(&d).check().unwrap();

        // an involution must square to the identity
        let collapse = FinFunctor::new(w.clone(), w.clone(), vec![0, 0], vec![0, 0, 0, 0]).unwrap();
        assert!(Diagram::one_object(z2, w.clone(), vec![FinFunctor::identity(w), collapse]).is_err());
    }
}
