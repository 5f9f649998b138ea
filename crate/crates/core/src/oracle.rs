//! Anti-bug oracle for Ext: resolutions built from free covers on every
//! basis element instead of projective covers on tops. The resolutions are
//! deliberately non-minimal, so agreement with the minimal route exercises
//! the cover, syzygy and induced-map machinery end to end.

use crate::error::Result;
use crate::fp::FpMatrix;
use crate::rep::{kernel, ModuleMap, Representation};
use crate::resolution::ProjResolution;

/// Surjection (+)_v P_v^{dim M_v} -> M sending the generator of each copy
/// to the corresponding basis vector of M.
pub fn free_cover(m: &Representation) -> (ModuleMap, Vec<usize>) {
    let alg = m.algebra.clone();
    let p = alg.p;
    let mut gens: Vec<usize> = Vec::new();
    let mut columns: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in 0..alg.vertices() {
        for i in 0..m.dims[v] {
            gens.push(v);
            let mut e = vec![0u64; m.dims[v]];
            e[i] = 1;
            columns.push((v, e));
        }
    }
    let projectives: Vec<Representation> = gens
        .iter()
        .map(|&v| Representation::projective(&alg, v))
        .collect();
    let source = if projectives.is_empty() {
        Representation::zero(alg.clone())
    } else {
        let refs: Vec<&Representation> = projectives.iter().collect();
        Representation::direct_sum_rep(&refs)
    };
    let mut blocks: Vec<FpMatrix> = (0..alg.vertices())
        .map(|w| FpMatrix::zeros(p, m.dims[w], source.dims[w]))
        .collect();
    let mut col_offsets = vec![0usize; alg.vertices()];
    for (v, x) in &columns {
        let xv = FpMatrix::col_vec(p, x);
        for w in 0..alg.vertices() {
            for &q in &alg.paths_from_to(*v, w) {
                let path = alg.basis_path(q);
                let action = m.act_word(path.start, &path.word);
                let col = action.mul(&xv);
                for i in 0..m.dims[w] {
                    blocks[w].set(i, col_offsets[w], col.at(i, 0));
                }
                col_offsets[w] += 1;
            }
        }
    }
    let cover = ModuleMap { source, target: m.clone(), blocks };
    debug_assert!(cover.validate().is_ok());
    debug_assert!(cover.is_surjective());
    (cover, gens)
}

/// Free (maximally non-minimal) resolution through the given depth.
pub fn free_resolution(m: &Representation, depth: usize) -> ProjResolution {
    let (aug, gens0) = free_cover(m);
    let mut terms = vec![aug.source.clone()];
    let mut diffs = Vec::new();
    let mut gens = vec![gens0];
    let (mut last_kernel, mut incl) = kernel(&aug);
    for _ in 0..depth {
        let (cover, g) = free_cover(&last_kernel);
        diffs.push(incl.compose(&cover));
        terms.push(cover.source.clone());
        gens.push(g);
        let (k, k_incl) = kernel(&cover);
        last_kernel = k;
        incl = k_incl;
    }
    ProjResolution { target: m.clone(), terms, diffs, aug, gens: Some(gens) }
}

/// Ext dimensions through the free resolution.
pub fn ext_dims_via_free(
    m: &Representation,
    n: &Representation,
    max_degree: usize,
) -> Result<Vec<usize>> {
    let res = free_resolution(m, max_degree + 1);
    Ok(crate::ext::ext_range_on(&res, n, max_degree)?
        .into_iter()
        .map(|w| w.dim)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::ext_range;
    use crate::fixtures::*;

    #[test]
    fn free_cover_is_not_minimal_on_projectives_with_radical() {
        let alg = dual_numbers();
        let reg = Representation::regular(&alg);
        let (cover, _) = free_cover(&reg);
        // minimal cover would be the identity; the free one doubles up
        assert_eq!(cover.source.total_dim(), 4);
    }

    #[test]
    fn free_and_minimal_ext_agree_on_fixtures() {
        let cases = [
            (dual_numbers(), 0usize),
            (a2(), 0),
            (arrow_loop(), 1),
        ];
        for (alg, v) in cases {
            let s = Representation::simple(alg.clone(), v);
            let reg = Representation::regular(&alg);
            let free = ext_dims_via_free(&s, &reg, 4).unwrap();
            let minimal: Vec<usize> =
                ext_range(&s, &reg, 4).unwrap().into_iter().map(|w| w.dim).collect();
            assert_eq!(free, minimal);
        }
    }
}
