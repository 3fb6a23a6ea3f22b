use std::collections::HashMap;
use std::sync::Arc;

use super::{Arr, Arrow, FinCat, FinFunctor, Obj};

/// The comma category `F ↓ G` with its two projections.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub category: Arc<FinCat>,
    /// Projection to the source of `F`.
    pub proj0: FinFunctor,
    /// Projection to the source of `G`.
    pub proj1: FinFunctor,
    /// `(a, c, t: F a → G c)` per object.
    pub objects: Vec<(Obj, Obj, Arr)>,
    /// `(h, k)` per arrow.
    pub arrows: Vec<(Arr, Arr)>,
}

/// Objects `(a, c, t: F(a) → G(c))`, arrows `(h, k)` with `G(k)∘t = t'∘F(h)`.
pub fn comma_category(f: &FinFunctor, g: &FinFunctor) -> CommaCategory {
    assert!(*f.target == *g.target, "comma category: functors must share a codomain");
    let (a, c, b) = (&*f.source, &*g.source, &*f.target);
    let mut objects = Vec::new();
    for x in 0..a.n_objects() {
        for y in 0..c.n_objects() {
            for &t in b.hom(f.obj[x], g.obj[y]) {
                objects.push((x, y, t));
            }
        }
    }
    // objects grouped by (a, c) so a pair of arrows only meets candidate endpoints
    let mut by_pair: HashMap<(Obj, Obj), Vec<Obj>> = HashMap::new();
    for (i, &(x, y, _)) in objects.iter().enumerate() {
        by_pair.entry((x, y)).or_default().push(i);
    }
    let mut arrows = Vec::new();
    let mut arrow_data = Vec::new();
    let empty = Vec::new();
    for (i, &(x, y, t)) in objects.iter().enumerate() {
        for &h in a.arrows_from(x) {
            for &k in c.arrows_from(y) {
                let (x2, y2) = (a.cod(h), c.cod(k));
                let lhs = b.comp(g.arr[k], t);
                for &j in by_pair.get(&(x2, y2)).unwrap_or(&empty) {
                    let t2 = objects[j].2;
                    if lhs == b.comp(t2, f.arr[h]) {
                        let id = format!("({},{}):{}->{}", a.arrow_id(h), c.arrow_id(k), i, j);
                        arrows.push(Arrow { name: id.clone(), id, dom: i, cod: j });
                        arrow_data.push((h, k));
                    }
                }
            }
        }
    }
    let arrow_index: HashMap<(Obj, Obj, Arr, Arr), Arr> = arrows
        .iter()
        .zip(&arrow_data)
        .enumerate()
        .map(|(n, (ar, &(h, k)))| ((ar.dom, ar.cod, h, k), n))
        .collect();
    let identity: Vec<Arr> = objects
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| arrow_index[&(i, i, a.id(x), c.id(y))])
        .collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(x, y, t)| format!("({},{},{})", a.object_id(x), c.object_id(y), b.arrow_id(t)))
        .collect();
    let dom_cod: Vec<(Obj, Obj)> = arrows.iter().map(|ar| (ar.dom, ar.cod)).collect();
    let category = Arc::new(FinCat::from_table(names, arrows, identity, |q, p| {
        let (h1, k1) = arrow_data[p];
        let (h2, k2) = arrow_data[q];
        arrow_index[&(dom_cod[p].0, dom_cod[q].1, a.comp(h2, h1), c.comp(k2, k1))]
    }));
    let proj0 = FinFunctor::new_unchecked(
        category.clone(),
        f.source.clone(),
        objects.iter().map(|o| o.0).collect(),
        arrow_data.iter().map(|d| d.0).collect(),
    );
    let proj1 = FinFunctor::new_unchecked(
        category.clone(),
        g.source.clone(),
        objects.iter().map(|o| o.1).collect(),
        arrow_data.iter().map(|d| d.1).collect(),
    );
    CommaCategory { category, proj0, proj1, objects, arrows: arrow_data }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comma_of_terminal_identities_is_terminal() {
        let t = Arc::new(FinCat::terminal());
        let id = FinFunctor::identity(t);
        let c = comma_category(&id, &id);
        assert_eq!((c.category.n_objects(), c.category.n_arrows()), (1, 1));
        c.category.check_laws().unwrap();
        c.proj0.check().unwrap();
        c.proj1.check().unwrap();
    }
}
