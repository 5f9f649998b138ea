//! Projective resolutions: minimal resolutions of modules via iterated
//! projective covers, the horseshoe construction for short exact sequences,
//! and DG-projective resolutions of bounded complexes by totalizing a
//! column-finite double complex built on boundaries, cycles and homology.

use crate::algebra::AlgebraRef;
use crate::complex::{ChainComplex, ChainMap, ExtInt};
use crate::error::{EngineError, Result};
use crate::fp::FpMatrix;
use crate::rep::{
    image, kernel, lift_through, solve_module_map, top_and_cover, is_projective, MapConstraint,
    ModuleMap, Representation, SumData,
};

/// An augmented complex of projectives over a module: terms in degrees
/// 0..=depth with differentials and an augmentation onto the target.
#[derive(Debug, Clone)]
pub struct ProjResolution {
    pub target: Representation,
    pub terms: Vec<Representation>,
    /// diffs[i]: terms[i+1] -> terms[i]
    pub diffs: Vec<ModuleMap>,
    pub aug: ModuleMap,
    /// Per term, the vertex of each projective summand in direct-sum order;
    /// None when the summand layout is not tracked.
    pub gens: Option<Vec<Vec<usize>>>,
}

impl ProjResolution {
    pub fn depth(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> Representation {
        self.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| Representation::zero(self.target.algebra.clone()))
    }

    pub fn diff(&self, i: usize) -> ModuleMap {
        // differential out of degree i, for i >= 1
        if i >= 1 && i - 1 < self.diffs.len() {
            self.diffs[i - 1].clone()
        } else {
            ModuleMap::zero(self.term(i), self.term(i.saturating_sub(1)))
        }
    }

    pub fn as_complex(&self, lo: i64) -> ChainComplex {
        ChainComplex {
            algebra: self.target.algebra.clone(),
            lo,
            terms: self.terms.clone(),
            diffs: self.diffs.clone(),
        }
    }

    /// The augmented complex ... -> P_1 -> P_0 -> M -> 0 is exact through the
    /// materialized window (the top kernel is the next syzygy).
    pub fn verify_exactness(&self) -> bool {
        let aug_ok = self.aug.is_surjective();
        let c = self.as_complex(0);
        let k0 = kernel(&self.aug).0;
        let im1 = image(&self.diff(1)).0;
        let mut ok = aug_ok && k0.dims == im1.dims;
        for i in 1..self.terms.len().saturating_sub(1) {
            ok = ok && c.homology(i as i64).is_zero();
        }
        ok
    }
}

/// Minimal projective resolution through the given depth, by iterated
/// projective covers; the chain of kernels is kept so the tail can extend.
#[derive(Debug, Clone)]
pub struct ResolutionTail {
    pub resolution: ProjResolution,
    pub minimal: bool,
    kernels: Vec<(Representation, ModuleMap)>,
}

impl ResolutionTail {
    pub fn augmentation_chain_map(&self) -> ChainMap {
        let c = self.resolution.as_complex(0);
        let stalk = ChainComplex::stalk(self.resolution.target.clone(), 0);
        ChainMap {
            source: c,
            target: stalk,
            lo: 0,
            maps: vec![self.resolution.aug.clone()],
        }
    }

    /// Extend to a strictly larger depth, reusing the materialized data.
    pub fn extend(&mut self, depth: usize) {
        while self.resolution.depth() < depth {
            let (last_kernel, incl) = self.kernels.last().expect("tail keeps its kernels").clone();
            let data = top_and_cover(&last_kernel);
            let next_diff = incl.compose(&data.cover);
            let (k, k_incl) = kernel(&data.cover);
            self.kernels.push((k, k_incl));
            self.resolution.terms.push(data.cover.source.clone());
            self.resolution.diffs.push(next_diff);
            if let Some(g) = self.resolution.gens.as_mut() {
                g.push(data.source_gens);
            }
        }
    }

    pub fn syzygy_at(&self, i: usize) -> Representation {
        if i == 0 {
            self.resolution.target.clone()
        } else {
            self.kernels[i - 1].0.clone()
        }
    }
}

pub fn minimal_projective_resolution(m: &Representation, depth: usize) -> ResolutionTail {
    let data = top_and_cover(m);
    let (k0, incl0) = kernel(&data.cover);
    let mut tail = ResolutionTail {
        resolution: ProjResolution {
            target: m.clone(),
            terms: vec![data.cover.source.clone()],
            diffs: Vec::new(),
            aug: data.cover,
            gens: Some(vec![data.source_gens]),
        },
        minimal: true,
        kernels: vec![(k0, incl0)],
    };
    tail.extend(depth);
    tail
}

/// Horseshoe: a projective resolution of the middle of a short exact
/// sequence 0 -> A -> B -> C -> 0, assembled from resolutions of the ends.
/// Returns the resolution of B along with the per-degree sum structure
/// (component 0 is the A side, component 1 the C side).
pub fn horseshoe(
    a_incl: &ModuleMap,
    c_proj: &ModuleMap,
    ra: &ProjResolution,
    rc: &ProjResolution,
) -> Result<(ProjResolution, Vec<SumData>)> {
    let b = a_incl.target.clone();
    debug_assert!(c_proj.source == b);
    let depth = ra.depth().min(rc.depth());
    let mut sums = Vec::new();
    for i in 0..=depth {
        sums.push(Representation::direct_sum(&[&ra.term(i), &rc.term(i)]));
    }
    // generator-image lifting wherever the summand layout is known; the
    // generic solver is the fallback
    let lift = |f: &ModuleMap,
                g: &ModuleMap,
                gens: Option<&Vec<usize>>|
     -> Result<Option<ModuleMap>> {
        match gens {
            Some(gs) => crate::rep::lift_from_projective(gs, &g.source, f, g),
            None => lift_through(f, g),
        }
    };
    let rc_gens = |i: usize| rc.gens.as_ref().and_then(|g| g.get(i));
    // lift the C augmentation through the surjection B -> C
    let lambda = lift(c_proj, &rc.aug, rc_gens(0))?
        .ok_or(EngineError::ExtensionObstructed { degree: 0 })?;
    let aug = crate::complex::assemble_block_map(
        &sums[0],
        &Representation::direct_sum(&[&b]),
        |_, j| match j {
            0 => Some(a_incl.compose(&ra.aug)),
            1 => Some(lambda.clone()),
            _ => None,
        },
    );
    // rebase the target of aug from the 1-fold sum onto b itself
    let aug = ModuleMap { source: sums[0].sum.clone(), target: b.clone(), blocks: aug.blocks };
    debug_assert!(aug.validate().is_ok());
    debug_assert!(aug.is_surjective());

    // thetas[i]: RC_{i+1} -> RA_i correcting the block differential
    let mut thetas: Vec<ModuleMap> = Vec::new();
    if depth >= 1 {
        // alpha theta_1 = -mu where iota mu = lambda d^C_1
        let nu = lambda.compose(&rc.diff(1));
        let mu = lift(a_incl, &nu, rc_gens(1))?
            .ok_or(EngineError::ExtensionObstructed { degree: 1 })?;
        let theta1 = lift(&ra.aug, &mu.neg(), rc_gens(1))?
            .ok_or(EngineError::ExtensionObstructed { degree: 1 })?;
        thetas.push(theta1);
    }
    for i in 1..depth {
        // d^A_i theta_{i+1} = -theta_i d^C_{i+1}
        let rhs = thetas[i - 1].compose(&rc.diff(i + 1)).neg();
        let di = ra.diff(i);
        let theta = match rc_gens(i + 1) {
            Some(gs) => crate::rep::lift_from_projective(gs, &rc.term(i + 1), &di, &rhs)?,
            None => solve_module_map(
                &rc.term(i + 1),
                &ra.term(i),
                &[MapConstraint { left: Some(&di), right: None, rhs: &rhs }],
            )?,
        }
        .ok_or(EngineError::ExtensionObstructed { degree: i as i64 + 1 })?;
        thetas.push(theta);
    }
    let mut diffs = Vec::new();
    for i in 0..depth {
        let da = ra.diff(i + 1);
        let dc = rc.diff(i + 1);
        let th = thetas[i].clone();
        let d = crate::complex::assemble_block_map(&sums[i + 1], &sums[i], |r, c| match (r, c) {
            (0, 0) => Some(da.clone()),
            (0, 1) => Some(th.clone()),
            (1, 1) => Some(dc.clone()),
            _ => None,
        });
        diffs.push(d);
    }
    let terms = sums.iter().map(|s| s.sum.clone()).collect();
    let gens = match (&ra.gens, &rc.gens) {
        (Some(ga), Some(gc)) => Some(
            (0..=depth)
                .map(|i| {
                    let mut g = ga.get(i).cloned().unwrap_or_default();
                    g.extend(gc.get(i).cloned().unwrap_or_default());
                    g
                })
                .collect(),
        ),
        _ => None,
    };
    let res = ProjResolution { target: b, terms, diffs, aug, gens };
    Ok((res, sums))
}

/// A DG-projective resolution of a bounded complex: a bounded-below complex
/// of projectives with a quasi-isomorphism onto the input.
#[derive(Debug, Clone)]
pub struct DgResolution {
    pub complex: ChainComplex,
    pub augmentation: ChainMap,
    /// True when the input was already a bounded complex of projectives and
    /// was returned unchanged.
    pub reused_input: bool,
}

impl DgResolution {
    pub fn cokernel_at(&self, n: i64) -> Representation {
        self.complex.cokernel_at(n).0
    }
}

/// Resolve a bounded complex through total degree `depth`.
pub fn dg_projective_resolution(x: &ChainComplex, depth: i64) -> Result<DgResolution> {
    let alg: AlgebraRef = x.algebra.clone();
    let profile = x.homology_profile();
    if matches!(profile.hsup, ExtInt::NegInf) {
        let zero = ChainComplex::zero(alg);
        let aug = ChainMap::zero(zero.clone(), x.clone());
        return Ok(DgResolution { complex: zero, augmentation: aug, reused_input: true });
    }
    let trimmed = x.trim();
    if (trimmed.lo..=trimmed.hi()).all(|n| is_projective(&trimmed.term(n))) {
        let aug = ChainMap::identity(&trimmed);
        let aug = ChainMap { source: trimmed.clone(), target: x.clone(), ..aug };
        return Ok(DgResolution { complex: trimmed, augmentation: aug, reused_input: true });
    }
    let h = match profile.hinf {
        ExtInt::Fin(h) => h,
        _ => unreachable!("non-exact bounded complex has finite homological inf"),
    };
    // homological truncation W = (... -> X_{h+1} -> Z_h -> 0), quasi-isomorphic
    // to X via the inclusion
    let (z_h, z_incl) = kernel(&x.diff(h));
    let hi = x.hi().max(h);
    let mut w_terms = vec![z_h.clone()];
    let mut w_diffs = Vec::new();
    let mut w_incl_maps = vec![z_incl.clone()];
    for n in (h + 1)..=hi {
        w_terms.push(x.term(n));
        w_incl_maps.push(ModuleMap::identity(&x.term(n)));
        if n == h + 1 {
            // corestrict d_{h+1} into Z_h
            let d = x.diff(h + 1);
            let blocks: Vec<FpMatrix> = (0..alg.vertices())
                .map(|v| {
                    z_incl.blocks[v]
                        .solve_matrix(&d.blocks[v])
                        .expect("dims agree")
                        .expect("boundaries are cycles below the homological inf")
                })
                .collect();
            w_diffs.push(ModuleMap { source: x.term(n), target: z_h.clone(), blocks });
        } else {
            w_diffs.push(x.diff(n));
        }
    }
    let w = ChainComplex { algebra: alg.clone(), lo: h, terms: w_terms, diffs: w_diffs };
    debug_assert!(w.validate().is_ok());
    let w_into_x = ChainMap { source: w.clone(), target: x.clone(), lo: h, maps: w_incl_maps };
    debug_assert!(w_into_x.validate().is_ok());

    // per-column data: boundaries, cycles, homology and their resolutions
    let col_depth = |n: i64| -> usize { (depth - n).max(0) as usize + 1 };
    let zero_res = |target: &Representation, d: usize| -> ProjResolution {
        let zero = Representation::zero(alg.clone());
        let terms = vec![zero.clone(); d + 1];
        let diffs = vec![ModuleMap::zero(zero.clone(), zero.clone()); d];
        ProjResolution {
            target: target.clone(),
            terms,
            diffs,
            aug: ModuleMap::zero(zero, target.clone()),
            gens: Some(vec![Vec::new(); d + 1]),
        }
    };
    // boundaries[n]: (B_n, inclusion into W_n, corestriction W_{n+1} -> B_n)
    let mut boundaries = std::collections::HashMap::new();
    for n in (h - 1)..=hi {
        let d = w.diff(n + 1);
        let (b, incl, cores) = image(&d);
        boundaries.insert(n, (b, incl, cores));
    }
    struct Column {
        rz_sums: Vec<SumData>,
        rx: ProjResolution,
        rx_sums: Vec<SumData>,
    }
    let mut res_b: std::collections::HashMap<i64, ProjResolution> = std::collections::HashMap::new();
    for n in (h - 1)..=hi {
        let (b, _, _) = &boundaries[&n];
        let d = col_depth(n);
        let rb = if b.is_zero() {
            zero_res(b, d)
        } else {
            // depth enough for use in columns n and n+1
            minimal_projective_resolution(b, d).resolution
        };
        res_b.insert(n, rb);
    }
    let mut columns: std::collections::HashMap<i64, Column> = std::collections::HashMap::new();
    for n in h..=hi {
        let (z, z_in) = kernel(&w.diff(n));
        // B_n sits inside Z_n
        let (b, b_in, _) = &boundaries[&n];
        let g_blocks: Vec<FpMatrix> = (0..alg.vertices())
            .map(|v| {
                z_in.blocks[v]
                    .solve_matrix(&b_in.blocks[v])
                    .expect("dims agree")
                    .expect("boundaries are cycles")
            })
            .collect();
        let g = ModuleMap { source: b.clone(), target: z.clone(), blocks: g_blocks };
        let (hn, h_proj) = crate::rep::cokernel(&g);
        let rh = if hn.is_zero() {
            zero_res(&hn, col_depth(n))
        } else {
            minimal_projective_resolution(&hn, col_depth(n)).resolution
        };
        let (rz, rz_sums) = horseshoe(&g, &h_proj, &res_b[&n], &rh)?;
        // SES 0 -> Z_n -> W_n -> B_{n-1} -> 0
        let (_, _, cores) = &boundaries[&(n - 1)];
        let (rx, rx_sums) = horseshoe(&z_in, cores, &rz, &res_b[&(n - 1)])?;
        columns.insert(n, Column { rz_sums, rx, rx_sums });
    }
    // totalize with D = d^v + (-1)^row d^h
    let tot_hi = depth.max(h);
    let mut level_sums: Vec<SumData> = Vec::new();
    let parts_at = |m: i64| -> Vec<(i64, usize)> {
        // (column, row) pairs contributing to total degree m
        (h..=hi.min(m))
            .filter_map(|n| {
                let row = (m - n) as usize;
                let col = columns.get(&n)?;
                (row < col.rx.terms.len()).then_some((n, row))
            })
            .collect()
    };
    for m in h..=tot_hi {
        let parts = parts_at(m);
        let reps: Vec<Representation> = parts
            .iter()
            .map(|&(n, row)| columns[&n].rx.term(row))
            .collect();
        let refs: Vec<&Representation> = reps.iter().collect();
        if refs.is_empty() {
            level_sums.push(Representation::direct_sum(&[&Representation::zero(alg.clone())]));
        } else {
            level_sums.push(Representation::direct_sum(&refs));
        }
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for m in h..=tot_hi {
        let idx = (m - h) as usize;
        terms.push(level_sums[idx].sum.clone());
        if m > h {
            let src_parts = parts_at(m);
            let tgt_parts = parts_at(m - 1);
            let d = crate::complex::assemble_block_map(
                &level_sums[idx],
                &level_sums[idx - 1],
                |ti, si| {
                    if si >= src_parts.len() || ti >= tgt_parts.len() {
                        return None;
                    }
                    let (ns, rows) = src_parts[si];
                    let (nt, rowt) = tgt_parts[ti];
                    let col_s = &columns[&ns];
                    if nt == ns && rowt == rows - 1 {
                        // vertical differential
                        Some(col_s.rx.diff(rows))
                    } else if nt == ns - 1 && rowt == rows {
                        // horizontal: project to the B_{n-1} summand, include
                        // into the B-part of the Z side of column n-1
                        let col_t = &columns[&nt];
                        let to_b = col_s.rx_sums[rows].projections[1].clone();
                        let z_inj = col_t.rx_sums[rowt].injections[0].clone();
                        let b_inj = col_t.rz_sums[rowt].injections[0].clone();
                        let mut map = z_inj.compose(&b_inj).compose(&to_b);
                        if rows % 2 == 1 {
                            map = map.neg();
                        }
                        Some(map)
                    } else {
                        None
                    }
                },
            );
            diffs.push(d);
        }
    }
    let total = ChainComplex { algebra: alg.clone(), lo: h, terms, diffs };
    total.validate()?;
    // augmentation: row-0 piece of level n maps onto W_n, then into X_n
    let mut aug_maps = Vec::new();
    for m in h..=tot_hi {
        let idx = (m - h) as usize;
        let src_parts = parts_at(m);
        let mut acc = ModuleMap::zero(total.term(m), x.term(m));
        for (si, &(n, row)) in src_parts.iter().enumerate() {
            if row == 0 && n == m {
                let into_w = columns[&n].rx.aug.clone();
                let into_x = w_into_x.map_at(n);
                let piece = into_x
                    .compose(&into_w)
                    .compose(&level_sums[idx].projections[si]);
                acc = acc.add(&piece);
            }
        }
        aug_maps.push(acc);
    }
    let augmentation = ChainMap { source: total.clone(), target: x.clone(), lo: h, maps: aug_maps };
    augmentation.validate()?;
    Ok(DgResolution { complex: total, augmentation, reused_input: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rep::{hom_dim, is_isomorphic};

    #[test]
    fn minimal_resolution_of_projective_stops() {
        let alg = a2();
        let p0 = Representation::projective(&alg, 0);
        let tail = minimal_projective_resolution(&p0, 4);
        assert_eq!(tail.resolution.term(0).dims, p0.dims);
        for i in 1..=4 {
            assert!(tail.resolution.term(i).is_zero());
        }
    }

    #[test]
    fn minimal_resolution_of_point_is_periodic() {
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let tail = minimal_projective_resolution(&k, 4);
        for i in 0..=4 {
            assert_eq!(tail.resolution.term(i).total_dim(), 2);
        }
        // every differential is multiplication by the loop: rank one
        for i in 1..=4 {
            assert_eq!(tail.resolution.diff(i).blocks[0].rank(), 1);
        }
        assert!(tail.resolution.verify_exactness());
    }

    #[test]
    fn resolution_of_s0_over_a2_terminates_at_one() {
        let alg = a2();
        let s0 = Representation::simple(alg.clone(), 0);
        let tail = minimal_projective_resolution(&s0, 3);
        assert_eq!(tail.resolution.term(0).dims, vec![1, 1]); // P_0
        assert_eq!(tail.resolution.term(1).dims, vec![0, 1]); // P_1
        assert!(tail.resolution.term(2).is_zero());
    }

    #[test]
    fn extension_reuses_data() {
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let mut tail = minimal_projective_resolution(&k, 2);
        let d2 = tail.resolution.diff(2);
        tail.extend(6);
        assert_eq!(tail.resolution.diff(2).blocks, d2.blocks);
        assert_eq!(tail.resolution.depth(), 6);
        assert!(tail.resolution.verify_exactness());
    }

    #[test]
    fn syzygies_along_the_tail() {
        let alg = arrow_loop();
        let s1 = Representation::simple(alg.clone(), 1);
        let tail = minimal_projective_resolution(&s1, 3);
        for i in 1..=3 {
            let om = tail.syzygy_at(i);
            assert!(is_isomorphic(&om, &s1).unwrap().is_some());
        }
    }

    #[test]
    fn horseshoe_on_split_sequence() {
        let alg = a2();
        let s0 = Representation::simple(alg.clone(), 0);
        let p1 = Representation::projective(&alg, 1);
        let sum = Representation::direct_sum(&[&p1, &s0]);
        let ra = minimal_projective_resolution(&p1, 3).resolution;
        let rc = minimal_projective_resolution(&s0, 3).resolution;
        let (rb, _) = horseshoe(&sum.injections[0], &sum.projections[1], &ra, &rc).unwrap();
        assert!(rb.verify_exactness());
        for i in 0..=2 {
            assert_eq!(
                rb.term(i).total_dim(),
                ra.term(i).total_dim() + rc.term(i).total_dim()
            );
        }
    }

    #[test]
    fn horseshoe_on_radical_sequence() {
        // 0 -> P_1 -> P_0 -> S_0 -> 0 over A2
        let alg = a2();
        let p0 = Representation::projective(&alg, 0);
        let p1 = Representation::projective(&alg, 1);
        let s0 = Representation::simple(alg.clone(), 0);
        let incl = ModuleMap::new(
            p1.clone(),
            p0.clone(),
            vec![FpMatrix::zeros(2, 1, 0), FpMatrix::identity(2, 1)],
        )
        .unwrap();
        let proj = ModuleMap::new(
            p0.clone(),
            s0.clone(),
            vec![FpMatrix::identity(2, 1), FpMatrix::zeros(2, 0, 1)],
        )
        .unwrap();
        let ra = minimal_projective_resolution(&p1, 3).resolution;
        let rc = minimal_projective_resolution(&s0, 3).resolution;
        let (rb, _) = horseshoe(&incl, &proj, &ra, &rc).unwrap();
        assert!(rb.verify_exactness());
    }

    #[test]
    fn dg_resolution_of_stalk_matches_minimal() {
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let x = ChainComplex::stalk(k.clone(), 0);
        let res = dg_projective_resolution(&x, 5).unwrap();
        assert!(!res.reused_input);
        let tail = minimal_projective_resolution(&k, 5);
        for i in 0..=5 {
            assert_eq!(
                res.complex.term(i).total_dim(),
                tail.resolution.term(i as usize).total_dim()
            );
        }
        assert!(res.augmentation.is_quasi_iso_in(0, 4));
    }

    #[test]
    fn dg_resolution_reuses_projective_complexes() {
        let x = crate::fixtures::rad_inclusion_complex();
        let res = dg_projective_resolution(&x, 6).unwrap();
        assert!(res.reused_input);
        assert_eq!(res.complex.lo, 0);
        assert_eq!(res.complex.hi(), 1);
    }

    #[test]
    fn dg_resolution_of_exact_complex_is_zero() {
        let alg = a2();
        let p1 = Representation::projective(&alg, 1);
        let two = ChainComplex::new(
            alg.clone(),
            0,
            vec![p1.clone(), p1.clone()],
            vec![ModuleMap::identity(&p1)],
        )
        .unwrap();
        // identity complex is exact but already projective: force the CE
        // route by summing with a non-projective stalk and shifting? keep it
        // simple: exactness is detected first
        let res = dg_projective_resolution(&two, 4).unwrap();
        assert!(res.complex.is_empty());
    }

    #[test]
    fn dg_resolution_general_complex() {
        // two-term complex with homology in two degrees over the dual numbers
        let alg = dual_numbers();
        let reg = Representation::regular(&alg);
        let act = reg.act_word(0, &[0]);
        let d = ModuleMap::new(reg.clone(), reg.clone(), vec![act]).unwrap();
        let k = Representation::simple(alg.clone(), 0);
        let x = ChainComplex::new(
            alg.clone(),
            0,
            vec![reg.clone(), reg.clone(), k.clone()],
            vec![d.clone(), ModuleMap::zero(k.clone(), reg.clone())],
        )
        .unwrap();
        let res = dg_projective_resolution(&x, 6).unwrap();
        assert!(res.augmentation.is_quasi_iso_in(0, 5));
        for n in res.complex.lo..=res.complex.hi() {
            assert!(is_projective(&res.complex.term(n)), "term {n} projective");
        }
        assert_eq!(res.complex.lo, 0);
        // lowest degree equals the homological inf
        assert!(!res.complex.term(0).is_zero());
    }

    #[test]
    fn dg_resolution_prunes_below_homological_inf() {
        // exact in low degrees: cone-like tail below a stalk
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let reg = Representation::regular(&alg);
        let id = ModuleMap::identity(&reg);
        let exact_part = ChainComplex::new(
            alg.clone(),
            -3,
            vec![reg.clone(), reg.clone()],
            vec![id],
        )
        .unwrap();
        let x = ChainComplex::direct_sum(&[&exact_part, &ChainComplex::stalk(k.clone(), 2)]);
        let res = dg_projective_resolution(&x, 6).unwrap();
        assert_eq!(res.complex.lo, 2);
        assert!(res.augmentation.is_quasi_iso_in(-4, 5));
        let _ = hom_dim(&k, &reg).unwrap();
    }
}
