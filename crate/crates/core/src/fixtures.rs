//! Shipped example algebras, modules and complexes, plus seeded random
//! generators used by the property suite. Every generator takes an explicit
//! Rng so runs reproduce exactly.

use crate::algebra::{Algebra, AlgebraRef, Arrow, Quiver, Relation, RelationTerm};
use crate::complex::ChainComplex;
use crate::fp::FpMatrix;
use crate::rep::{cokernel, coords_in_basis, hom_space, ModuleMap, Representation};
use crate::rng::Rng;
use std::sync::OnceLock;

fn loop_algebra(ids: &[&str], relations: Vec<Vec<(u64, Vec<usize>)>>, p: u64) -> AlgebraRef {
    let quiver = Quiver {
        vertices: 1,
        arrows: ids
            .iter()
            .map(|id| Arrow { id: (*id).into(), from: 0, to: 0 })
            .collect(),
    };
    let relations = relations
        .into_iter()
        .map(|terms| Relation {
            terms: terms
                .into_iter()
                .map(|(coeff, word)| RelationTerm { coeff, word })
                .collect(),
        })
        .collect();
    Algebra::build(quiver, relations, p, 16).expect("fixture algebra builds")
}

/// F_2[x] / (x^2), the dual numbers: one vertex, one loop, self-injective.
pub fn dual_numbers() -> AlgebraRef {
    static CACHE: OnceLock<AlgebraRef> = OnceLock::new();
    CACHE
        .get_or_init(|| loop_algebra(&["a"], vec![vec![(1, vec![0, 0])]], 2))
        .clone()
}

/// The path algebra of the A2 quiver over F_2: hereditary, dimension 3.
pub fn a2() -> AlgebraRef {
    static CACHE: OnceLock<AlgebraRef> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let quiver = Quiver {
                vertices: 2,
                arrows: vec![Arrow { id: "a".into(), from: 0, to: 1 }],
            };
            Algebra::build(quiver, Vec::new(), 2, 16).expect("fixture algebra builds")
        })
        .clone()
}

/// Vertices 0, 1 with a: 0 -> 1 and a loop b at 1, bound by ba = 0 and
/// b^2 = 0 (words in traversal order). Dimension 4.
pub fn arrow_loop() -> AlgebraRef {
    static CACHE: OnceLock<AlgebraRef> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let quiver = Quiver {
                vertices: 2,
                arrows: vec![
                    Arrow { id: "a".into(), from: 0, to: 1 },
                    Arrow { id: "b".into(), from: 1, to: 1 },
                ],
            };
            let relations = vec![
                Relation { terms: vec![RelationTerm { coeff: 1, word: vec![0, 1] }] },
                Relation { terms: vec![RelationTerm { coeff: 1, word: vec![1, 1] }] },
            ];
            Algebra::build(quiver, relations, 2, 16).expect("fixture algebra builds")
        })
        .clone()
}

/// F_2[x, y] / (x^2, y^2, xy - yx): commutative, self-injective, dim 4.
pub fn exterior2() -> AlgebraRef {
    static CACHE: OnceLock<AlgebraRef> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            loop_algebra(
                &["x", "y"],
                vec![
                    vec![(1, vec![0, 0])],
                    vec![(1, vec![1, 1])],
                    vec![(1, vec![0, 1]), (1, vec![1, 0])],
                ],
                2,
            )
        })
        .clone()
}

/// F_2[x, y] / (x, y)^2: radical square zero, dim 3. Syzygies of the simple
/// double in dimension forever, so windowed detection stays undetermined.
pub fn fat_point() -> AlgebraRef {
    static CACHE: OnceLock<AlgebraRef> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            loop_algebra(
                &["x", "y"],
                vec![
                    vec![(1, vec![0, 0])],
                    vec![(1, vec![1, 1])],
                    vec![(1, vec![0, 1])],
                    vec![(1, vec![1, 0])],
                ],
                2,
            )
        })
        .clone()
}

/// All shipped algebras with their names.
pub fn all_algebras() -> Vec<(&'static str, AlgebraRef)> {
    vec![
        ("dual_numbers", dual_numbers()),
        ("a2", a2()),
        ("arrow_loop", arrow_loop()),
        ("exterior2", exterior2()),
        ("fat_point", fat_point()),
    ]
}

/// 0 -> P_1 -> P_0 -> 0 over A2 in degrees 1, 0: the radical inclusion.
pub fn rad_inclusion_complex() -> ChainComplex {
    let alg = a2();
    let p0 = Representation::projective(&alg, 0);
    let p1 = Representation::projective(&alg, 1);
    let incl = ModuleMap::new(
        p1.clone(),
        p0.clone(),
        vec![FpMatrix::zeros(2, 1, 0), FpMatrix::identity(2, 1)],
    )
    .expect("radical inclusion is a module map");
    ChainComplex::new(alg, 0, vec![p0, p1], vec![incl]).expect("two-term complex")
}

/// Random direct sum of indecomposable projectives (possibly zero).
pub fn rand_projective(alg: &AlgebraRef, rng: &mut Rng, max_mult: u64) -> Representation {
    let mut parts = Vec::new();
    for v in 0..alg.vertices() {
        for _ in 0..rng.below(max_mult + 1) {
            parts.push(Representation::projective(alg, v));
        }
    }
    if parts.is_empty() {
        Representation::zero(alg.clone())
    } else {
        let refs: Vec<&Representation> = parts.iter().collect();
        Representation::direct_sum_rep(&refs)
    }
}

/// Random element of Hom(M, N) in the computed basis.
pub fn rand_hom(m: &Representation, n: &Representation, rng: &mut Rng) -> ModuleMap {
    let basis = hom_space(m, n).expect("same algebra");
    let mut acc = ModuleMap::zero(m.clone(), n.clone());
    for h in &basis {
        let c = rng.below(m.p());
        if c != 0 {
            acc = acc.add(&h.scale(c));
        }
    }
    acc
}

/// Random finitely generated module as the cokernel of a map between
/// projective sums; every module arises this way.
pub fn rand_module(alg: &AlgebraRef, rng: &mut Rng, max_mult: u64) -> Representation {
    let p = rand_projective(alg, rng, max_mult);
    let q = rand_projective(alg, rng, max_mult);
    if q.is_zero() {
        return q;
    }
    let f = rand_hom(&p, &q, rng);
    cokernel(&f).0
}

/// Random bounded complex of projectives with square-zero differentials,
/// built degree by degree inside the kernel of postcomposition.
pub fn rand_projective_complex(
    alg: &AlgebraRef,
    rng: &mut Rng,
    lo: i64,
    len: usize,
    max_mult: u64,
) -> ChainComplex {
    let terms: Vec<Representation> = (0..len)
        .map(|_| rand_projective(alg, rng, max_mult))
        .collect();
    if terms.iter().all(|t| t.is_zero()) {
        return ChainComplex::zero(alg.clone());
    }
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for i in 1..len {
        let src = &terms[i];
        let tgt = &terms[i - 1];
        let basis = hom_space(src, tgt).expect("same algebra");
        let choice = if i == 1 {
            // unconstrained
            let mut acc = ModuleMap::zero(src.clone(), tgt.clone());
            for h in &basis {
                let c = rng.below(alg.p);
                if c != 0 {
                    acc = acc.add(&h.scale(c));
                }
            }
            acc
        } else {
            // coefficients in the kernel of postcomposition with the
            // previous differential
            let prev = &diffs[i - 2];
            let lower = hom_space(src, &prev.target).expect("same algebra");
            let p = alg.p;
            let mut mat = FpMatrix::zeros(p, lower.len(), basis.len());
            for (col, h) in basis.iter().enumerate() {
                let comp = prev.compose(h);
                let coords = coords_in_basis(&comp, &lower).expect("hom space is closed");
                for (row, &c) in coords.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            let kernel = mat.kernel();
            let mut acc = ModuleMap::zero(src.clone(), tgt.clone());
            for kcol in 0..kernel.cols {
                let c = rng.below(p);
                if c == 0 {
                    continue;
                }
                for (bi, h) in basis.iter().enumerate() {
                    let coeff = kernel.at(bi, kcol) * c % p;
                    if coeff != 0 {
                        acc = acc.add(&h.scale(coeff));
                    }
                }
            }
            acc
        };
        diffs.push(choice);
    }
    ChainComplex::new(alg.clone(), lo, terms, diffs).expect("constructed square-zero complex")
}

/// Random bounded complex: a projective complex summed with shifted module
/// stalks.
pub fn rand_bounded_complex(alg: &AlgebraRef, rng: &mut Rng, max_mult: u64) -> ChainComplex {
    let len = 2 + rng.below(3) as usize;
    let lo = rng.below(4) as i64 - 2;
    let base = rand_projective_complex(alg, rng, lo, len, max_mult);
    if rng.below(2) == 0 {
        let m = rand_module(alg, rng, max_mult);
        let n = lo + rng.below(len as u64 + 1) as i64;
        ChainComplex::direct_sum(&[&base, &ChainComplex::stalk(m, n)])
    } else {
        base
    }
}

/// A degreewise split extension of Z by X: Y = X (+) Z with a random twist
/// h_n: Z_n -> X_{n-1} satisfying d h + h d = 0, so that
/// 0 -> X -> Y -> Z -> 0 is exact and split in every degree.
pub struct SplitExtension {
    pub total: ChainComplex,
    pub incl: crate::complex::ChainMap,
    pub proj: crate::complex::ChainMap,
}

pub fn rand_split_extension(
    x: &ChainComplex,
    z: &ChainComplex,
    rng: &mut Rng,
) -> SplitExtension {
    let alg = x.algebra.clone();
    let p = alg.p;
    let lo = x.lo.min(z.lo);
    let hi = x.hi().max(z.hi());
    // bases for each h_n and the coupled condition
    // d^X_{n-1} h_n + h_{n-1} d^Z_n = 0 on coordinates
    let degrees: Vec<i64> = (lo..=hi + 1).collect();
    let mut bases: Vec<Vec<ModuleMap>> = Vec::new();
    let mut offsets = vec![0usize];
    for &n in &degrees {
        let b = hom_space(&z.term(n), &x.term(n - 1)).expect("same algebra");
        offsets.push(offsets.last().unwrap() + b.len());
        bases.push(b);
    }
    let unknowns = *offsets.last().unwrap();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (i, &n) in degrees.iter().enumerate() {
        // condition in degree n (maps Z_n -> X_{n-2})
        let cond_basis = hom_space(&z.term(n), &x.term(n - 2)).expect("same algebra");
        if cond_basis.is_empty() {
            continue;
        }
        let mut row_block = vec![vec![0u64; unknowns]; cond_basis.len()];
        let dx = x.diff(n - 1);
        for (j, h) in bases[i].iter().enumerate() {
            let comp = dx.compose(h);
            let coords = coords_in_basis(&comp, &cond_basis).expect("closed");
            for (r, &c) in coords.iter().enumerate() {
                row_block[r][offsets[i] + j] = c;
            }
        }
        if i > 0 {
            let dz = z.diff(n);
            for (j, h) in bases[i - 1].iter().enumerate() {
                let comp = h.compose(&dz);
                let coords = coords_in_basis(&comp, &cond_basis).expect("closed");
                for (r, &c) in coords.iter().enumerate() {
                    let idx = offsets[i - 1] + j;
                    row_block[r][idx] = (row_block[r][idx] + c) % p;
                }
            }
        }
        rows.extend(row_block);
    }
    let mat = if rows.is_empty() {
        FpMatrix::zeros(p, 0, unknowns)
    } else {
        FpMatrix::from_rows(p, &rows)
    };
    let kernel = mat.kernel();
    let mut coeffs = vec![0u64; unknowns];
    for c in 0..kernel.cols {
        let s = rng.below(p);
        if s == 0 {
            continue;
        }
        for r in 0..unknowns {
            coeffs[r] = (coeffs[r] + s * kernel.at(r, c)) % p;
        }
    }
    let twist = |n: i64| -> ModuleMap {
        let i = (n - lo) as usize;
        if n < lo || n > hi + 1 {
            return ModuleMap::zero(z.term(n), x.term(n - 1));
        }
        let mut acc = ModuleMap::zero(z.term(n), x.term(n - 1));
        for (j, h) in bases[i].iter().enumerate() {
            let c = coeffs[offsets[i] + j];
            if c != 0 {
                acc = acc.add(&h.scale(c));
            }
        }
        acc
    };
    let mut sums = Vec::new();
    for n in lo..=hi {
        let (xt, zt) = (x.term(n), z.term(n));
        sums.push(Representation::direct_sum(&[&xt, &zt]));
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let idx = (n - lo) as usize;
        terms.push(sums[idx].sum.clone());
        if n > lo {
            let dx = x.diff(n);
            let dz = z.diff(n);
            let h = twist(n);
            let d = crate::complex::assemble_block_map(&sums[idx], &sums[idx - 1], |r, c| {
                match (r, c) {
                    (0, 0) => Some(dx.clone()),
                    (0, 1) => Some(h.clone()),
                    (1, 1) => Some(dz.clone()),
                    _ => None,
                }
            });
            diffs.push(d);
        }
    }
    let total = ChainComplex::new(alg, lo, terms, diffs).expect("twisted sum is a complex");
    let incl_maps: Vec<ModuleMap> = (lo..=hi)
        .map(|n| sums[(n - lo) as usize].injections[0].clone())
        .collect();
    let proj_maps: Vec<ModuleMap> = (lo..=hi)
        .map(|n| sums[(n - lo) as usize].projections[1].clone())
        .collect();
    let incl = crate::complex::ChainMap {
        source: x.clone(),
        target: total.clone(),
        lo,
        maps: incl_maps,
    };
    let proj = crate::complex::ChainMap {
        source: total.clone(),
        target: z.clone(),
        lo,
        maps: proj_maps,
    };
    debug_assert!(incl.validate().is_ok());
    debug_assert!(proj.validate().is_ok());
    SplitExtension { total, incl, proj }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(dual_numbers().dim(), 2);
        assert_eq!(a2().dim(), 3);
        assert_eq!(arrow_loop().dim(), 4);
        assert_eq!(exterior2().dim(), 4);
        assert_eq!(fat_point().dim(), 3);
    }

    #[test]
    fn random_modules_are_valid() {
        let mut rng = Rng::new(5);
        for (_, alg) in all_algebras() {
            for _ in 0..5 {
                let m = rand_module(&alg, &mut rng, 2);
                assert!(m.validate().is_ok());
            }
        }
    }

    #[test]
    fn random_projective_complexes_are_complexes() {
        let mut rng = Rng::new(9);
        for (_, alg) in all_algebras() {
            for _ in 0..5 {
                let c = rand_projective_complex(&alg, &mut rng, -1, 4, 2);
                assert!(c.validate().is_ok());
            }
        }
    }

    #[test]
    fn split_extension_is_exact_sequence() {
        let mut rng = Rng::new(11);
        let alg = dual_numbers();
        for _ in 0..5 {
            let x = rand_projective_complex(&alg, &mut rng, 0, 3, 1);
            let z = rand_projective_complex(&alg, &mut rng, 0, 3, 1);
            let ext = rand_split_extension(&x, &z, &mut rng);
            assert!(ext.total.validate().is_ok());
            // exactness degreewise: dims add, inclusion then projection is zero
            for n in ext.total.lo..=ext.total.hi() {
                assert_eq!(
                    ext.total.term(n).total_dim(),
                    x.term(n).total_dim() + z.term(n).total_dim()
                );
            }
            assert!(ext.proj.compose(&ext.incl).is_zero());
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let alg = exterior2();
        let a = rand_module(&alg, &mut Rng::new(committed_seed()), 2);
        let b = rand_module(&alg, &mut Rng::new(committed_seed()), 2);
        assert_eq!(a, b);
    }

    fn committed_seed() -> u64 {
        314159
    }
}
