use super::{is_reedy_fibrant, is_reedy_fibration, reedy_factorize, Diagram, DiagramMap, ReedyFactorization, TribeClassReport};
use crate::error::{Error, Result};
use crate::fincat::{comma_category, finite_limit, CatDiagram, CommaCategory, FinDiagramShape, FinFunctor, Limit};

/// `p^*X = X∘p` for `X` over the target of `p`.
pub fn restrict_along_p(p: &FinFunctor, x: &Diagram) -> Result<Diagram> {
    if *x.shape != *p.target {
        return Err(Error::Precondition("diagram is not over the target of p".into()));
    }
    let values = p.obj.iter().map(|&r| x.values[r].clone()).collect();
    let action = p.arr.iter().map(|&u| x.action[u].clone()).collect();
    Ok(Diagram { shape: p.source.clone(), values, action })
}

pub fn restrict_map_along_p(p: &FinFunctor, m: &DiagramMap) -> Result<DiagramMap> {
    let source = restrict_along_p(p, &m.source)?;
    let target = restrict_along_p(p, &m.target)?;
    let components = p.obj.iter().map(|&r| m.components[r].clone()).collect();
    Ok(DiagramMap { source, target, components })
}

/// `p_*S` together with the comma category and limit cone at each object.
struct Ran {
    diagram: Diagram,
    commas: Vec<CommaCategory>,
    limits: Vec<Limit>,
}

fn ran(p: &FinFunctor, s: &Diagram) -> Result<Ran> {
    if *s.shape != *p.source {
        return Err(Error::Precondition("diagram is not over the source of p".into()));
    }
    let r_cat = p.target.clone();
    let mut commas = Vec::new();
    let mut limits = Vec::new();
    for r in 0..r_cat.n_objects() {
        let comma = comma_category(p, &FinFunctor::point(r_cat.clone(), r));
        let values = comma.objects.iter().map(|&(z, _, _)| s.values[z].clone()).collect();
        let maps = comma.arrows.iter().map(|&(h, _)| s.action[h].clone()).collect();
        let d = CatDiagram { shape: FinDiagramShape::opposite(comma.category.clone()), values, maps };
        limits.push(finite_limit(&d)?);
        commas.push(comma);
    }
    let values: Vec<_> = limits.iter().map(|l| l.apex.clone()).collect();
    let mut action = Vec::with_capacity(r_cat.n_arrows());
    for rho in 0..r_cat.n_arrows() {
        // ρ: r' → r; the leg at (Z, ψ: pZ → r') is the leg at (Z, ρ∘ψ) upstairs
        let (r2, r) = (r_cat.dom(rho), r_cat.cod(rho));
        let legs = commas[r2]
            .objects
            .iter()
            .map(|&(z, _, psi)| limits[r].legs[comma_index(&commas[r], z, r_cat.comp(rho, psi))].clone())
            .collect::<Vec<_>>();
        action.push(limits[r2].factor_from(values[r].clone(), &legs)?);
    }
    let diagram = Diagram::new(r_cat, values, action)?;
    Ok(Ran { diagram, commas, limits })
}

fn comma_index(comma: &CommaCategory, z: usize, phi: usize) -> usize {
    comma.objects.iter().position(|&(z2, _, phi2)| z2 == z && phi2 == phi).expect("object of the comma category")
}

/// Right Kan extension along `p`, computed pointwise as limits over `p ↓ r`.
pub fn ran_along_p(p: &FinFunctor, s: &Diagram) -> Result<Diagram> {
    Ok(ran(p, s)?.diagram)
}

fn ran_map(p: &FinFunctor, m: &DiagramMap, src: &Ran, tgt: &Ran) -> Result<DiagramMap> {
    let components = (0..p.target.n_objects())
        .map(|r| {
            let legs: Vec<FinFunctor> = src.commas[r]
                .objects
                .iter()
                .enumerate()
                .map(|(i, &(z, _, _))| m.components[z].after(&src.limits[r].legs[i]))
                .collect();
            tgt.limits[r].factor_from(src.diagram.values[r].clone(), &legs)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramMap::new(src.diagram.clone(), tgt.diagram.clone(), components)
}

pub fn ran_map_along_p(p: &FinFunctor, m: &DiagramMap) -> Result<DiagramMap> {
    ran_map(p, m, &ran(p, &m.source)?, &ran(p, &m.target)?)
}

fn unit_from(x: &Diagram, ran_px: &Ran) -> Result<DiagramMap> {
    let components = (0..x.shape.n_objects())
        .map(|r| {
            let legs: Vec<FinFunctor> = ran_px.commas[r].objects.iter().map(|&(_, _, phi)| x.action[phi].clone()).collect();
            ran_px.limits[r].factor_from(x.values[r].clone(), &legs)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramMap::new(x.clone(), ran_px.diagram.clone(), components)
}

/// `η: X → p_*p^*X`, with legs `X(φ)` at `(Z, φ: pZ → r)`.
pub fn unit(p: &FinFunctor, x: &Diagram) -> Result<DiagramMap> {
    unit_from(x, &ran(p, &restrict_along_p(p, x)?)?)
}

pub fn is_p_fibration(p: &FinFunctor, m: &DiagramMap) -> Result<bool> {
    is_reedy_fibration(&restrict_map_along_p(p, m)?)
}

pub fn is_p_fibrant(p: &FinFunctor, x: &Diagram) -> Result<bool> {
    is_reedy_fibrant(&restrict_along_p(p, x)?)
}

/// `m = second∘first` with `first` pointwise anodyne and `second` a
/// `p`-fibration, obtained from a Reedy factorization of `p^*m`.
#[derive(Debug, Clone)]
pub struct PFactorization {
    pub middle: Diagram,
    pub first: DiagramMap,
    pub second: DiagramMap,
    pub reedy: ReedyFactorization,
    pub first_classes: TribeClassReport,
    pub second_is_p_fibration: bool,
    pub middle_is_p_fibrant: bool,
}

impl PFactorization {
    pub fn passed(&self) -> bool {
        self.first_classes.pointwise_anodyne && self.second_is_p_fibration && self.middle_is_p_fibrant
    }
}

/// `first = p_*(j)∘η_X`, `second = η_Y⁻¹∘p_*(q)` where `p^*m = q∘j`.
pub fn tribe_factorize(p: &FinFunctor, m: &DiagramMap) -> Result<PFactorization> {
    let (x, y) = (&m.source, &m.target);
    let pm = restrict_map_along_p(p, m)?;
    let reedy = reedy_factorize(&pm)?;
    let ran_px = ran(p, &pm.source)?;
    let ran_py = ran(p, &pm.target)?;
    let ran_w = ran(p, &reedy.middle)?;
    let eta_x = unit_from(x, &ran_px)?;
    let eta_y = unit_from(y, &ran_py)?;
    let eta_y_inv = eta_y
        .inverse()
        .ok_or_else(|| Error::Precondition("unit at the target is not an isomorphism".into()))?;
    let first = ran_map(p, &reedy.j, &ran_px, &ran_w)?.after(&eta_x);
    let second = eta_y_inv.after(&ran_map(p, &reedy.q, &ran_w, &ran_py)?);
    if !second.after(&first).same_components(m) {
        return Err(Error::Precondition("factors do not compose back to the map".into()));
    }
    let middle = ran_w.diagram;
    let first_classes = TribeClassReport::of(&first);
    let second_is_p_fibration = is_p_fibration(p, &second)?;
    let middle_is_p_fibrant = is_p_fibrant(p, &middle)?;
    Ok(PFactorization { middle, first, second, reedy, first_classes, second_is_p_fibration, middle_is_p_fibrant })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cattribe::{matching_object, DiagramMap};
    use crate::fincat::{product, FinCat};
    use crate::unroll::{build_dr, UnrolledCategory, HOM_BOUND};
    use crate::zoo;

    fn unrolled(n: usize) -> UnrolledCategory {
        let g = zoo::group_category(&zoo::GroupTable::cyclic(n)).unwrap();
        build_dr(&g.presentation, HOM_BOUND).unwrap()
    }

    fn trivial(p: &FinFunctor, c: FinCat) -> Diagram {
        Diagram::constant(p.target.clone(), Arc::new(c))
    }

    /// Discrete `{x, y}` with the generator swapping the points.
    fn swapped_points(p: &FinFunctor) -> Diagram {
        let d = Arc::new(FinCat::discrete(&["x", "y"]));
        let swap = FinFunctor::new(d.clone(), d.clone(), vec![1, 0], vec![1, 0]).unwrap();
        Diagram::one_object(p.target.clone(), d.clone(), vec![FinFunctor::identity(d), swap]).unwrap()
    }

    #[test]
    fn restriction_is_constant_on_values() {
        let dr = unrolled(2);
        let p = dr.projection_p();
        let x = swapped_points(p);
        let px = restrict_along_p(p, &x).unwrap();
        px.check().unwrap();
        assert!(px.values.iter().all(|v| **v == *x.values[0]));
        let t = restrict_along_p(p, &Diagram::terminal(p.target.clone())).unwrap();
        assert!(t.values.iter().all(|v| v.n_arrows() == 1));
    }

    #[test]
    fn matching_map_is_id_and_generator() {
        let dr = unrolled(2);
        let p = dr.projection_p();
        let x = swapped_points(p);
        let px = restrict_along_p(p, &x).unwrap();
        let eps = dr.identity_object(0);
        let g = (0..dr.category.n_objects()).find(|&o| o != eps).unwrap();
        let m = matching_object(&px, g).unwrap();
        assert_eq!(m.arrows.len(), 2);
        let mut got: Vec<Vec<usize>> = m.limit.legs.iter().map(|l| l.after(&m.map).obj).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn gaunt_criterion() {
        for n in [2, 3] {
            let dr = unrolled(n);
            let p = dr.projection_p();
            for (name, c, gaunt) in zoo::gaunt_catalog() {
                assert_eq!(is_p_fibrant(p, &trivial(p, c)).unwrap(), gaunt, "{name} over Z{n}");
            }
        }
    }

    #[test]
    fn pointwise_isofibration_that_is_not_reedy() {
        let dr = unrolled(2);
        let p = dr.projection_p();
        let x = trivial(p, zoo::walking_iso());
        let m = restrict_map_along_p(p, &DiagramMap::to_terminal(&x)).unwrap();
        assert!(TribeClassReport::of(&m).pointwise_fibration);
        assert!(!is_reedy_fibration(&m).unwrap());
        assert!(!is_p_fibration(p, &DiagramMap::to_terminal(&x)).unwrap());
    }

    #[test]
    fn unit_is_pointwise_iso() {
        for n in [2, 3] {
            let dr = unrolled(n);
            let p = dr.projection_p();
            for x in [trivial(p, zoo::poset_chain(3)), trivial(p, zoo::walking_iso()), Diagram::terminal(p.target.clone())] {
                assert!(unit(p, &x).unwrap().is_pointwise_iso());
            }
            if n == 2 {
                assert!(unit(p, &swapped_points(p)).unwrap().is_pointwise_iso());
            }
        }
    }

    #[test]
    fn ran_of_terminal_is_terminal() {
        let dr = unrolled(2);
        let p = dr.projection_p();
        let t = ran_along_p(p, &Diagram::terminal(dr.category.clone())).unwrap();
        assert!(t.values.iter().all(|v| v.n_objects() == 1 && v.n_arrows() == 1));
    }

    #[test]
    fn factorizations_over_z2() {
        let dr = unrolled(2);
        let p = dr.projection_p();
        let chain = trivial(p, zoo::poset_chain(2));
        let maps = [
            DiagramMap::identity(&chain),
            DiagramMap::to_terminal(&chain),
            DiagramMap::to_terminal(&swapped_points(p)),
        ];
        for m in &maps {
            let fx = tribe_factorize(p, m).unwrap();
            assert!(fx.passed(), "{:?}", fx.first_classes);
            assert!(fx.second.after(&fx.first).same_components(m));
        }
    }

    /// `X(ε) = w`, `X([g]) = w × w` acting by the projections is Reedy
    /// fibrant over `D_{Z/2}`, but its restriction along `π_0: p↓p → D_R` is not.
    #[test]
    fn pi0_does_not_preserve_fibrancy() {
        let dr = unrolled(2);
        let w = Arc::new(zoo::walking_iso());
        let prod = product(&[w.clone(), w.clone()]);
        let d = &*dr.category;
        let eps = dr.identity_object(0);
        let g = (0..d.n_objects()).find(|&o| o != eps).unwrap();
        let mut values = vec![w.clone(); d.n_objects()];
        values[g] = prod.apex.clone();
        let arrows: Vec<_> = d.hom(eps, g).to_vec();
        assert_eq!(arrows.len(), 2);
        let action = (0..d.n_arrows())
            .map(|u| match arrows.iter().position(|&a| a == u) {
                Some(i) => prod.legs[i].clone(),
                None => FinFunctor::identity(values[d.dom(u)].clone()),
            })
            .collect();
        let x = Diagram::new(dr.category.clone(), values, action).unwrap();
        assert!(is_reedy_fibrant(&x).unwrap());
        let comma = comma_category(dr.projection_p(), dr.projection_p());
        let pulled = restrict_along_p(&comma.proj0, &x).unwrap();
        assert!(!is_reedy_fibrant(&pulled).unwrap());
    }
}
