//! The dual (-)* = Hom(-, A), carrying left modules to left modules over the
//! opposite algebra, together with the natural map into the double dual.
//!
//! The vertex component of M* at v is Hom(M, P_v); the arrow actions come
//! from right multiplication P_t -> P_s. Applying the construction twice
//! lands over (A^op)^op, which is built from identical data as A, so double
//! duals are retagged onto the original algebra handle.

use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{EngineError, Result};
use crate::fp::FpMatrix;
use crate::rep::{coords_in_basis, hom_space, ModuleMap, Representation};

/// Right multiplication by an arrow a: s -> t, as a module map P_t -> P_s.
pub fn right_mult_arrow(alg: &AlgebraRef, ai: usize) -> ModuleMap {
    let a = &alg.arrows()[ai];
    let (s, t) = (a.from, a.to);
    let pt = Representation::projective(alg, t);
    let ps = Representation::projective(alg, s);
    let abi = alg.arrow_basis_index(ai);
    let blocks = (0..alg.vertices())
        .map(|w| {
            let from_paths = alg.paths_from_to(t, w);
            let to_paths = alg.paths_from_to(s, w);
            let mut m = FpMatrix::zeros(alg.p, to_paths.len(), from_paths.len());
            for (col, &q) in from_paths.iter().enumerate() {
                // q . a = "q after a", a path from s
                for &(k, c) in alg.mul_basis(q, abi) {
                    let row = to_paths
                        .iter()
                        .position(|&x| x == k)
                        .expect("q*a starts at the source of a");
                    m.set(row, col, c);
                }
            }
            m
        })
        .collect();
    let map = ModuleMap { source: pt, target: ps, blocks };
    debug_assert!(map.validate().is_ok());
    map
}

/// Reduce an arbitrary path word through the multiplication table.
fn reduce_word(alg: &AlgebraRef, start: usize, word: &[usize]) -> Vec<(usize, u64)> {
    let mut acc: Vec<(usize, u64)> = vec![(alg.idempotent_index(start), 1)];
    for &a in word {
        let abi = alg.arrow_basis_index(a);
        let mut next: std::collections::HashMap<usize, u64> = std::collections::HashMap::new();
        for &(b, c) in &acc {
            for &(k, ck) in alg.mul_basis(abi, b) {
                let e = next.entry(k).or_insert(0);
                *e = (*e + c * ck) % alg.p;
            }
        }
        let mut v: Vec<(usize, u64)> = next.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable_by_key(|&(k, _)| k);
        acc = v;
    }
    acc
}

/// Hom bases underlying a dual module, kept so maps can be dualized in the
/// same coordinates.
pub struct DualData {
    pub op: AlgebraRef,
    pub dual: Representation,
    pub bases: Vec<Vec<ModuleMap>>,
}

pub fn dual_data(m: &Representation) -> Result<DualData> {
    let alg = m.algebra.clone();
    let op = alg.opposite()?;
    let projectives: Vec<Representation> = (0..alg.vertices())
        .map(|v| Representation::projective(&alg, v))
        .collect();
    let bases: Vec<Vec<ModuleMap>> = projectives
        .iter()
        .map(|pv| hom_space(m, pv))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let arrows = op
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, op_a)| {
            // op arrow ai runs t -> s where the original runs s -> t
            let (t, s) = (op_a.from, op_a.to);
            let r = right_mult_arrow(&alg, ai);
            let mut mat = FpMatrix::zeros(alg.p, dims[s], dims[t]);
            for (col, f) in bases[t].iter().enumerate() {
                let g = r.compose(f);
                let coords = coords_in_basis(&g, &bases[s])
                    .expect("composite lies in the hom space");
                for (row, &c) in coords.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        })
        .collect();
    let dual = Representation { algebra: op.clone(), dims, arrows };
    dual.validate()?;
    Ok(DualData { op, dual, bases })
}

/// M* = Hom(M, A) as a module over the opposite algebra.
pub fn dual_star(m: &Representation) -> Result<Representation> {
    Ok(dual_data(m)?.dual)
}

/// Dual of a map f: M -> N, as f*: N* -> M* over the opposite algebra.
pub fn dual_map(f: &ModuleMap) -> Result<ModuleMap> {
    let src_data = dual_data(&f.source)?;
    let tgt_data = dual_data(&f.target)?;
    let alg = f.source.algebra.clone();
    let blocks = (0..alg.vertices())
        .map(|v| {
            let mut mat = FpMatrix::zeros(alg.p, src_data.dual.dims[v], tgt_data.dual.dims[v]);
            for (col, g) in tgt_data.bases[v].iter().enumerate() {
                let pre = g.compose(f);
                let coords = coords_in_basis(&pre, &src_data.bases[v])
                    .expect("precomposition lies in the hom space");
                for (row, &c) in coords.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        })
        .collect();
    let map = ModuleMap { source: tgt_data.dual, target: src_data.dual, blocks };
    map.validate()?;
    Ok(map)
}

/// Reinterpret a representation over a structurally identical algebra.
pub fn retag(m: &Representation, algebra: &AlgebraRef) -> Result<Representation> {
    if m.algebra.content_id() != algebra.content_id() {
        return Err(EngineError::AlgebraMismatch);
    }
    let rep = Representation {
        algebra: algebra.clone(),
        dims: m.dims.clone(),
        arrows: m.arrows.clone(),
    };
    rep.validate()?;
    Ok(rep)
}

/// The double dual of M over the original algebra, with the evaluation map
/// M -> M**.
pub fn double_dual_with_unit(m: &Representation) -> Result<(Representation, ModuleMap)> {
    let alg = m.algebra.clone();
    let data = dual_data(m)?;
    let ddata = dual_data(&data.dual)?;
    // (A^op)^op is built from the same presentation as A
    if ddata.op.content_id() != alg.content_id() {
        return Err(EngineError::AlgebraMismatch);
    }
    let ddual = retag(&ddata.dual, &alg)?;
    // evaluation: m |-> (f |-> f(m)); at vertex v the image of a basis
    // vector of M_v is a map M* -> P_v over the opposite algebra
    let op_projectives: Vec<Representation> = (0..alg.vertices())
        .map(|v| Representation::projective(&data.op, v))
        .collect();
    let blocks = (0..alg.vertices())
        .map(|v| {
            let mut mat = FpMatrix::zeros(alg.p, ddual.dims[v], m.dims[v]);
            for col in 0..m.dims[v] {
                // evaluation at the col-th basis vector of M_v
                let ev_blocks: Vec<FpMatrix> = (0..alg.vertices())
                    .map(|w| {
                        // rows: basis paths of P_v^{op} at vertex w, i.e. op
                        // paths v -> w; entries from f_j(e_col) in (P_w)_v
                        let op_rows = data.op.paths_from_to(v, w);
                        let mut evb = FpMatrix::zeros(
                            alg.p,
                            op_rows.len(),
                            data.dual.dims[w],
                        );
                        let pw_paths = alg.paths_from_to(w, v);
                        for (j, f) in data.bases[w].iter().enumerate() {
                            let val = f.blocks[v].column(col);
                            for (pos, &k) in pw_paths.iter().enumerate() {
                                if val[pos] == 0 {
                                    continue;
                                }
                                // reverse the path w -> v into an op path v -> w
                                let path = alg.basis_path(k);
                                let rev: Vec<usize> =
                                    path.word.iter().rev().copied().collect();
                                for (opk, oc) in reduce_word(&data.op, v, &rev) {
                                    let row = op_rows
                                        .iter()
                                        .position(|&x| x == opk)
                                        .expect("reversed path runs v -> w in the opposite");
                                    let cur = evb.at(row, j);
                                    evb.set(row, j, (cur + val[pos] * oc) % alg.p);
                                }
                            }
                        }
                        evb
                    })
                    .collect();
                let ev = ModuleMap {
                    source: data.dual.clone(),
                    target: op_projectives[v].clone(),
                    blocks: ev_blocks,
                };
                debug_assert!(ev.validate().is_ok(), "evaluation is a module map");
                let coords = coords_in_basis(&ev, &ddata.bases[v])
                    .expect("evaluation lies in the double-dual hom space");
                for (row, &c) in coords.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        })
        .collect();
    let unit = ModuleMap { source: m.clone(), target: ddual.clone(), blocks };
    unit.validate()?;
    Ok((ddual, unit))
}

/// Checks the reflexivity of M and returns the unit when it is invertible.
pub fn reflexivity_unit(m: &Representation) -> Result<(ModuleMap, bool)> {
    let (_, unit) = double_dual_with_unit(m)?;
    let iso = unit.is_isomorphism();
    Ok((unit, iso))
}

pub fn check_same(a: &AlgebraRef, b: &AlgebraRef) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(EngineError::AlgebraMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rep::{hom_dim, is_isomorphic};

    #[test]
    fn dual_of_projective_is_opposite_projective() {
        let alg = a2();
        let op = alg.opposite().unwrap();
        for v in 0..2 {
            let pv = Representation::projective(&alg, v);
            let dual = dual_star(&pv).unwrap();
            // (P_v)* is the opposite projective at v: e_v A
            let op_pv = Representation::projective(&op, v);
            assert_eq!(dual.dims, op_pv.dims);
            assert!(is_isomorphic(&dual, &op_pv).unwrap().is_some());
        }
    }

    #[test]
    fn dual_of_point_over_dual_numbers() {
        // Hom(k, A) is the socle, one dimensional, and k* = k again
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let dual = dual_star(&k).unwrap();
        assert_eq!(dual.total_dim(), 1);
        assert!(dual.arrows[0].is_zero());
    }

    #[test]
    fn dual_of_simple_over_arrow_loop() {
        // Hom(S_1, P_0 + P_1) is two dimensional
        let alg = arrow_loop();
        let s1 = Representation::simple(alg.clone(), 1);
        let dual = dual_star(&s1).unwrap();
        assert_eq!(dual.total_dim(), 2);
    }

    #[test]
    fn projectives_are_reflexive() {
        for alg in [dual_numbers(), a2(), arrow_loop(), exterior2()] {
            for v in 0..alg.vertices() {
                let pv = Representation::projective(&alg, v);
                let (unit, iso) = reflexivity_unit(&pv).unwrap();
                assert!(iso, "projective at vertex {v} must be reflexive");
                assert!(unit.validate().is_ok());
            }
        }
    }

    #[test]
    fn point_module_is_reflexive_over_self_injective() {
        // over F_2[x]/(x^2) the simple is its own dual, hence reflexive
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let (_, iso) = reflexivity_unit(&k).unwrap();
        assert!(iso);
    }

    #[test]
    fn simple_not_reflexive_over_a2() {
        // S_0 over A2 has zero dual, so the unit cannot be injective
        let alg = a2();
        let s0 = Representation::simple(alg.clone(), 0);
        assert_eq!(dual_star(&s0).unwrap().total_dim(), 0);
        let (_, iso) = reflexivity_unit(&s0).unwrap();
        assert!(!iso);
    }

    #[test]
    fn dual_map_contravariant() {
        let alg = dual_numbers();
        let reg = Representation::regular(&alg);
        let act = reg.act_word(0, &[0]);
        let f = ModuleMap::new(reg.clone(), reg.clone(), vec![act]).unwrap();
        let fd = dual_map(&f).unwrap();
        assert_eq!(fd.source.total_dim(), 2);
        assert_eq!(fd.target.total_dim(), 2);
        // (f compose f)* = f* compose f*, both zero here since a^2 = 0
        let ff = f.compose(&f);
        let ffd = dual_map(&ff).unwrap();
        assert!(ffd.is_zero());
        assert!(fd.compose(&fd).is_zero());
    }

    #[test]
    fn hom_dims_match_dual_dims() {
        let alg = arrow_loop();
        let s1 = Representation::simple(alg.clone(), 1);
        let d = dual_data(&s1).unwrap();
        for v in 0..2 {
            let pv = Representation::projective(&alg, v);
            assert_eq!(d.dual.dims[v], hom_dim(&s1, &pv).unwrap());
        }
    }
}
