//! Bound quiver algebras over F_p.
//!
//! An algebra is presented by a finite quiver and admissible relations
//! (F_p-combinations of parallel paths of length >= 2). The basis of the
//! quotient is computed degree by degree: paths are enumerated by length,
//! relation multiples anchored at each length are row-reduced against the
//! live paths, and dead paths acquire rewrite rules expressing them in terms
//! of surviving ones. The construction terminates at the first length N with
//! no surviving paths, which also witnesses admissibility: J^N lies in the
//! relation ideal. Paths are written in traversal order, so the word [a, b]
//! is the path "first a, then b" (the composite b∘a).

use crate::error::{EngineError, Result};
use crate::fp::check_prime;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

const PATH_GUARD: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(EngineError::BadQuiver("quiver needs at least one vertex".into()));
        }
        for a in &self.arrows {
            if a.from >= self.vertices || a.to >= self.vertices {
                return Err(EngineError::BadQuiver(format!(
                    "arrow {} has endpoint outside 0..{}",
                    a.id, self.vertices
                )));
            }
        }
        let mut ids: Vec<&str> = self.arrows.iter().map(|a| a.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.arrows.len() {
            return Err(EngineError::BadQuiver("duplicate arrow id".into()));
        }
        Ok(())
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }
}

/// One term of a relation: coeff times a path given as arrow indices in
/// traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u64,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

/// A path of the quiver: starting vertex plus arrows in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub word: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn target(&self, quiver: &Quiver) -> usize {
        self.word.last().map_or(self.start, |&a| quiver.arrows[a].to)
    }
}

type SparseElem = Vec<(usize, u64)>;

/// A finite-dimensional bound quiver algebra with its computed path basis
/// and multiplication table.
pub struct Algebra {
    pub p: u64,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub length_cap: usize,
    basis: Vec<Path>,
    basis_target: Vec<usize>,
    basis_index: HashMap<Path, usize>,
    /// Least N with J^N inside the relation ideal; basis paths are shorter.
    nilpotency: usize,
    /// mult[i][j] = basis[i] * basis[j] (i after j) expanded over the basis.
    mult: Vec<Vec<SparseElem>>,
    content_id: u64,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.p)
            .field("vertices", &self.quiver.vertices)
            .field("dim", &self.basis.len())
            .field("nilpotency", &self.nilpotency)
            .finish()
    }
}

pub type AlgebraRef = Arc<Algebra>;

/// Two handles denote the same algebra if they are the same allocation or
/// have identical presentation and basis data.
pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || a.content_id == b.content_id
}

struct Builder<'q> {
    quiver: &'q Quiver,
    p: u64,
    paths: Vec<Path>,
    targets: Vec<usize>,
    index: HashMap<Path, usize>,
    live: Vec<bool>,
    /// Normal form of a dead path over live paths (kept fully reduced).
    rule: Vec<Option<SparseElem>>,
    children: Vec<Vec<usize>>,
    by_len: Vec<Vec<usize>>,
}

impl<'q> Builder<'q> {
    fn new(quiver: &'q Quiver, p: u64) -> Self {
        let mut b = Builder {
            quiver,
            p,
            paths: Vec::new(),
            targets: Vec::new(),
            index: HashMap::new(),
            live: Vec::new(),
            rule: Vec::new(),
            children: Vec::new(),
            by_len: vec![Vec::new()],
        };
        for v in 0..quiver.vertices {
            b.push_path(Path { start: v, word: Vec::new() });
        }
        b
    }

    fn push_path(&mut self, path: Path) -> usize {
        let idx = self.paths.len();
        let len = path.len();
        self.targets.push(path.target(self.quiver));
        self.index.insert(path.clone(), idx);
        self.paths.push(path);
        self.live.push(true);
        self.rule.push(None);
        self.children.push(Vec::new());
        while self.by_len.len() <= len {
            self.by_len.push(Vec::new());
        }
        self.by_len[len].push(idx);
        idx
    }

    /// Term order used to pick pivots: longer paths reduce to shorter ones,
    /// ties broken lexicographically so runs are reproducible.
    fn cmp_paths(&self, a: usize, b: usize) -> std::cmp::Ordering {
        let (pa, pb) = (&self.paths[a], &self.paths[b]);
        (pa.len(), &pa.word, pa.start).cmp(&(pb.len(), &pb.word, pb.start))
    }

    fn reduce_row(&self, row: &mut HashMap<usize, u64>) {
        let dead: Vec<usize> = row.keys().copied().filter(|&i| !self.live[i]).collect();
        for d in dead {
            let c = row.remove(&d).unwrap_or(0) % self.p;
            if c == 0 {
                continue;
            }
            if let Some(rhs) = &self.rule[d] {
                for &(b, cb) in rhs {
                    let e = row.entry(b).or_insert(0);
                    *e = (*e + c * cb) % self.p;
                }
            }
        }
        row.retain(|_, c| *c % self.p != 0);
    }

    /// Insert an ideal element. If it kills a live path, record the rewrite,
    /// back-substitute into existing rules, and cascade to the enumerated
    /// extensions of the killed path (they are ideal members too). Returns
    /// true if any path died.
    fn insert_row(&mut self, row: HashMap<usize, u64>) -> bool {
        let mut killed = false;
        let mut queue = vec![row];
        while let Some(mut row) = queue.pop() {
            self.reduce_row(&mut row);
            if row.is_empty() {
                continue;
            }
            killed = true;
            let pivot = row
                .keys()
                .copied()
                .max_by(|&a, &b| self.cmp_paths(a, b))
                .expect("nonempty row");
            let inv = crate::fp::inv_mod(row[&pivot], self.p);
            let mut rhs: SparseElem = row
                .iter()
                .filter(|(&k, _)| k != pivot)
                .map(|(&k, &c)| (k, (self.p - c * inv % self.p) % self.p))
                .filter(|&(_, c)| c != 0)
                .collect();
            rhs.sort_unstable_by_key(|&(k, _)| k);
            self.live[pivot] = false;
            self.rule[pivot] = Some(rhs.clone());
            // keep all rules expressed over live paths only
            for i in 0..self.rule.len() {
                if i == pivot {
                    continue;
                }
                let needs = self.rule[i]
                    .as_ref()
                    .is_some_and(|r| r.iter().any(|&(k, _)| k == pivot));
                if needs {
                    let mut row_i: HashMap<usize, u64> = self.rule[i]
                        .as_ref()
                        .unwrap()
                        .iter()
                        .copied()
                        .collect();
                    let c = row_i.remove(&pivot).unwrap();
                    for &(b, cb) in &rhs {
                        let e = row_i.entry(b).or_insert(0);
                        *e = (*e + c * cb) % self.p;
                    }
                    let mut new_rhs: SparseElem =
                        row_i.into_iter().filter(|&(_, c)| c % self.p != 0).collect();
                    new_rhs.sort_unstable_by_key(|&(k, _)| k);
                    self.rule[i] = Some(new_rhs);
                }
            }
            // cascade: pivot.word + [a] is ideal as well for each enumerated child
            for &child in &self.children[pivot].clone() {
                let arrow = *self.paths[child].word.last().expect("child extends parent");
                let mut row_c: HashMap<usize, u64> = HashMap::new();
                row_c.insert(child, 1);
                for &(b, cb) in &rhs {
                    let mut w = self.paths[b].word.clone();
                    w.push(arrow);
                    let ext = Path { start: self.paths[b].start, word: w };
                    let ext_idx = *self
                        .index
                        .get(&ext)
                        .expect("extension of a live path is enumerated");
                    let e = row_c.entry(ext_idx).or_insert(0);
                    *e = (*e + (self.p - cb)) % self.p;
                }
                queue.push(row_c);
            }
        }
        killed
    }

    /// Normal form of an arbitrary word (may pass through unenumerated
    /// paths whose prefixes died early).
    fn nf_word(&self, start: usize, word: &[usize]) -> SparseElem {
        let key = Path { start, word: word.to_vec() };
        if let Some(&idx) = self.index.get(&key) {
            if self.live[idx] {
                return vec![(idx, 1)];
            }
            return self.rule[idx].clone().unwrap_or_default();
        }
        // longest enumerated prefix; it must be dead, else its extension
        // would have been enumerated
        for k in (0..word.len()).rev() {
            let prefix = Path { start, word: word[..k].to_vec() };
            if let Some(&idx) = self.index.get(&prefix) {
                debug_assert!(!self.live[idx]);
                let mut acc: HashMap<usize, u64> = HashMap::new();
                if let Some(rhs) = &self.rule[idx] {
                    for &(b, cb) in rhs {
                        let mut w = self.paths[b].word.clone();
                        w.extend_from_slice(&word[k..]);
                        for (t, ct) in self.nf_word(self.paths[b].start, &w) {
                            let e = acc.entry(t).or_insert(0);
                            *e = (*e + cb * ct) % self.p;
                        }
                    }
                }
                let mut out: SparseElem =
                    acc.into_iter().filter(|&(_, c)| c != 0).collect();
                out.sort_unstable_by_key(|&(k, _)| k);
                return out;
            }
        }
        unreachable!("the empty path is always enumerated");
    }

    fn live_of_len(&self, len: usize) -> Vec<usize> {
        self.by_len
            .get(len)
            .map(|v| v.iter().copied().filter(|&i| self.live[i]).collect())
            .unwrap_or_default()
    }

    /// Least m <= frontier such that every word of length m reduces to zero,
    /// which certifies J^m inside the relation ideal. Words are explored as
    /// extensions of shorter words with nonzero normal form.
    fn nilpotency_witness(&self, frontier: usize) -> Option<usize> {
        let mut surviving: Vec<Path> = (0..self.quiver.vertices)
            .map(|v| Path { start: v, word: Vec::new() })
            .collect();
        for m in 1..=frontier {
            let mut next = Vec::new();
            for w in &surviving {
                let tgt = w.target(self.quiver);
                for (ai, arrow) in self.quiver.arrows.iter().enumerate() {
                    if arrow.from != tgt {
                        continue;
                    }
                    let mut word = w.word.clone();
                    word.push(ai);
                    if !self.nf_word(w.start, &word).is_empty() {
                        next.push(Path { start: w.start, word });
                    }
                }
            }
            if next.is_empty() {
                return Some(m);
            }
            surviving = next;
        }
        None
    }

    /// Insert every relation multiple u*r*v whose shortest term has length
    /// below `bound`, with u, v live. Repeats until the row space stabilizes.
    fn completion(&mut self, relations: &[Relation], bound: usize) {
        loop {
            let mut changed = false;
            for rel in relations {
                let lmin = rel.terms.iter().map(|t| t.word.len()).min().unwrap();
                if lmin >= bound {
                    continue;
                }
                let first = rel.terms[0].word[0];
                let last = *rel.terms[0].word.last().unwrap();
                let (rel_src, rel_tgt) = (self.quiver.arrows[first].from, self.quiver.arrows[last].to);
                for total in 0..=(bound - 1 - lmin) {
                    for ly in 0..=total {
                        let lx = total - ly;
                        let ys: Vec<usize> = self
                            .live_of_len(ly)
                            .into_iter()
                            .filter(|&i| self.targets[i] == rel_src)
                            .collect();
                        let xs: Vec<usize> = self
                            .live_of_len(lx)
                            .into_iter()
                            .filter(|&i| self.paths[i].start == rel_tgt)
                            .collect();
                        for &y in &ys {
                            for &x in &xs {
                                let mut row: HashMap<usize, u64> = HashMap::new();
                                for term in &rel.terms {
                                    let mut word = self.paths[y].word.clone();
                                    word.extend_from_slice(&term.word);
                                    word.extend_from_slice(&self.paths[x].word);
                                    for (t, ct) in self.nf_word(self.paths[y].start, &word) {
                                        let e = row.entry(t).or_insert(0);
                                        *e = (*e + term.coeff * ct) % self.p;
                                    }
                                }
                                if self.insert_row(row) {
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn validate_relations(quiver: &Quiver, relations: &[Relation], p: u64) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (ri, rel) in relations.iter().enumerate() {
        let mut terms = Vec::new();
        let mut endpoints: Option<(usize, usize)> = None;
        for term in &rel.terms {
            let coeff = term.coeff % p;
            if term.word.len() < 2 {
                return Err(EngineError::NotAdmissible(format!(
                    "relation {ri} contains a path of length {} (< 2)",
                    term.word.len()
                )));
            }
            for win in term.word.windows(2) {
                let (a, b) = (win[0], win[1]);
                if a >= quiver.arrows.len() || b >= quiver.arrows.len() {
                    return Err(EngineError::BadQuiver(format!(
                        "relation {ri} uses an unknown arrow"
                    )));
                }
                if quiver.arrows[a].to != quiver.arrows[b].from {
                    return Err(EngineError::NotAdmissible(format!(
                        "relation {ri} contains a non-composable word"
                    )));
                }
            }
            let first = term.word[0];
            let last = *term.word.last().unwrap();
            let ep = (quiver.arrows[first].from, quiver.arrows[last].to);
            match endpoints {
                None => endpoints = Some(ep),
                Some(e) if e == ep => {}
                Some(_) => {
                    return Err(EngineError::NotAdmissible(format!(
                        "relation {ri} mixes non-parallel paths"
                    )))
                }
            }
            if coeff != 0 {
                terms.push(RelationTerm { coeff, word: term.word.clone() });
            }
        }
        if !terms.is_empty() {
            out.push(Relation { terms });
        }
    }
    Ok(out)
}

impl Algebra {
    pub fn build(
        quiver: Quiver,
        relations: Vec<Relation>,
        p: u64,
        length_cap: usize,
    ) -> Result<AlgebraRef> {
        check_prime(p)?;
        quiver.validate()?;
        let relations = validate_relations(&quiver, &relations, p)?;
        let mut b = Builder::new(&quiver, p);
        let mut witness = None;
        for d in 1..=length_cap {
            // enumerate candidates of length d from live paths of length d-1
            let parents = b.live_of_len(d - 1);
            for &par in &parents {
                let tgt = b.targets[par];
                for (ai, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.from != tgt {
                        continue;
                    }
                    let mut word = b.paths[par].word.clone();
                    word.push(ai);
                    let child = b.push_path(Path { start: b.paths[par].start, word });
                    b.children[par].push(child);
                    if b.paths.len() > PATH_GUARD {
                        return Err(EngineError::TooLarge(format!(
                            "more than {PATH_GUARD} paths enumerated"
                        )));
                    }
                }
            }
            // relation multiples whose longest term sits in degree d
            for rel in &relations {
                let lmax = rel.terms.iter().map(|t| t.word.len()).max().unwrap();
                if lmax > d {
                    continue;
                }
                let first = rel.terms[0].word[0];
                let last = *rel.terms[0].word.last().unwrap();
                let (rel_src, rel_tgt) = (quiver.arrows[first].from, quiver.arrows[last].to);
                for ly in 0..=(d - lmax) {
                    let lx = d - lmax - ly;
                    let ys: Vec<usize> = b
                        .live_of_len(ly)
                        .into_iter()
                        .filter(|&i| b.targets[i] == rel_src)
                        .collect();
                    let xs: Vec<usize> = b
                        .live_of_len(lx)
                        .into_iter()
                        .filter(|&i| b.paths[i].start == rel_tgt)
                        .collect();
                    for &y in &ys {
                        for &x in &xs {
                            let mut row: HashMap<usize, u64> = HashMap::new();
                            for term in &rel.terms {
                                let mut word = b.paths[y].word.clone();
                                word.extend_from_slice(&term.word);
                                word.extend_from_slice(&b.paths[x].word);
                                for (t, ct) in b.nf_word(b.paths[y].start, &word) {
                                    let e = row.entry(t).or_insert(0);
                                    *e = (*e + term.coeff * ct) % p;
                                }
                            }
                            b.insert_row(row);
                        }
                    }
                }
            }
            if let Some(m) = b.nilpotency_witness(d) {
                witness = Some(m);
                break;
            }
        }
        let Some(bound) = witness else {
            return Err(EngineError::NotFiniteDimensional { length_cap });
        };
        // sweep up relation multiples with short leading terms but long tails
        b.completion(&relations, bound);
        let nilpotency = b
            .nilpotency_witness(bound)
            .expect("completion only kills paths, the witness cannot grow");
        // collect surviving basis in enumeration order
        let mut basis = Vec::new();
        let mut basis_target = Vec::new();
        let mut old_to_new = vec![usize::MAX; b.paths.len()];
        for (i, path) in b.paths.iter().enumerate() {
            if b.live[i] {
                old_to_new[i] = basis.len();
                basis_target.push(b.targets[i]);
                basis.push(path.clone());
            }
        }
        let dim = basis.len();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                // basis[i] after basis[j]
                if basis[j].target(&quiver) != basis[i].start {
                    continue;
                }
                let mut word = basis[j].word.clone();
                word.extend_from_slice(&basis[i].word);
                let nf = b.nf_word(basis[j].start, &word);
                mult[i][j] = nf.into_iter().map(|(k, c)| (old_to_new[k], c)).collect();
            }
        }
        let mut basis_index = HashMap::new();
        for (i, path) in basis.iter().enumerate() {
            basis_index.insert(path.clone(), i);
        }
        let content_id = {
            let mut h = Fnv::new();
            h.write_u64(p);
            h.write_u64(quiver.vertices as u64);
            for a in &quiver.arrows {
                h.write_bytes(a.id.as_bytes());
                h.write_u64(a.from as u64);
                h.write_u64(a.to as u64);
            }
            for path in &basis {
                h.write_u64(path.start as u64);
                for &w in &path.word {
                    h.write_u64(w as u64);
                }
                h.write_u64(u64::MAX);
            }
            for row in &mult {
                for cell in row {
                    for &(k, c) in cell {
                        h.write_u64(k as u64);
                        h.write_u64(c);
                    }
                    h.write_u64(u64::MAX - 1);
                }
            }
            h.finish()
        };
        let alg = Algebra {
            p,
            quiver,
            relations,
            length_cap,
            basis,
            basis_target,
            basis_index,
            nilpotency,
            mult,
            content_id,
        };
        alg.check_associative()?;
        Ok(Arc::new(alg))
    }

    fn check_associative(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let ij_k = self.mul_sparse(&self.mult[i][j], k);
                    let jk = &self.mult[j][k];
                    let mut i_jk: HashMap<usize, u64> = HashMap::new();
                    for &(m, c) in jk {
                        for &(t, ct) in &self.mult[i][m] {
                            let e = i_jk.entry(t).or_insert(0);
                            *e = (*e + c * ct) % self.p;
                        }
                    }
                    let mut lhs: Vec<(usize, u64)> =
                        ij_k.into_iter().filter(|&(_, c)| c != 0).collect();
                    lhs.sort_unstable_by_key(|&(k, _)| k);
                    let mut rhs: Vec<(usize, u64)> =
                        i_jk.into_iter().filter(|&(_, c)| c != 0).collect();
                    rhs.sort_unstable_by_key(|&(k, _)| k);
                    if lhs != rhs {
                        return Err(EngineError::NotAdmissible(format!(
                            "multiplication not associative on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_sparse(&self, x: &SparseElem, j: usize) -> HashMap<usize, u64> {
        let mut out: HashMap<usize, u64> = HashMap::new();
        for &(m, c) in x {
            for &(t, ct) in &self.mult[m][j] {
                let e = out.entry(t).or_insert(0);
                *e = (*e + c * ct) % self.p;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertices(&self) -> usize {
        self.quiver.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn content_id(&self) -> u64 {
        self.content_id
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn basis_target(&self, i: usize) -> usize {
        self.basis_target[i]
    }

    pub fn basis_start(&self, i: usize) -> usize {
        self.basis[i].start
    }

    pub fn basis_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index_of(&self, path: &Path) -> Option<usize> {
        self.basis_index.get(path).copied()
    }

    /// basis[i] * basis[j], meaning "i after j".
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.mult[i][j]
    }

    /// Indices of basis paths from v to w, in basis order.
    pub fn paths_from_to(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].start == v && self.basis_target[i] == w)
            .collect()
    }

    /// Indices of basis paths starting at v, in basis order.
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].start == v).collect()
    }

    pub fn idempotent_index(&self, v: usize) -> usize {
        // trivial paths are enumerated first, one per vertex
        v
    }

    pub fn arrow_basis_index(&self, arrow: usize) -> usize {
        let a = &self.quiver.arrows[arrow];
        self.basis_index[&Path { start: a.from, word: vec![arrow] }]
    }

    /// Single vertex and commuting basis products.
    pub fn is_commutative(&self) -> bool {
        if self.quiver.vertices != 1 {
            return false;
        }
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let mut a = self.mult[i][j].clone();
                let mut b = self.mult[j][i].clone();
                a.sort_unstable_by_key(|&(k, _)| k);
                b.sort_unstable_by_key(|&(k, _)| k);
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// The opposite algebra: arrows reversed, relation words reversed.
    pub fn opposite(&self) -> Result<AlgebraRef> {
        let quiver = Quiver {
            vertices: self.quiver.vertices,
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), from: a.to, to: a.from })
                .collect(),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|t| RelationTerm {
                        coeff: t.coeff,
                        word: t.word.iter().rev().copied().collect(),
                    })
                    .collect(),
            })
            .collect();
        Algebra::build(quiver, relations, self.p, self.length_cap)
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf29ce484222325)
    }
    fn write_u64(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
    fn write_bytes(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
        self.write_u64(bytes.len() as u64);
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures::*;
    use super::*;

    #[test]
    fn dual_numbers_has_dim_two() {
        let a = dual_numbers();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency(), 2);
        // basis: e, a with a*a = 0
        let ai = a.arrow_basis_index(0);
        assert!(a.mul_basis(ai, ai).is_empty());
        assert_eq!(a.mul_basis(0, ai), &[(ai, 1)]);
    }

    #[test]
    fn a2_has_dim_three() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.paths_from(0).len(), 2); // e_0 and the arrow
        assert_eq!(a.paths_from(1).len(), 1);
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let quiver = Quiver {
            vertices: 1,
            arrows: vec![Arrow { id: "a".into(), from: 0, to: 0 }],
        };
        let err = Algebra::build(quiver, Vec::new(), 2, 16).unwrap_err();
        assert!(matches!(err, EngineError::NotFiniteDimensional { .. }));
    }

    #[test]
    fn arrow_loop_has_dim_four() {
        let a = arrow_loop();
        assert_eq!(a.dim(), 4);
        // P_0 spans {e_0, a}, P_1 spans {e_1, b}
        assert_eq!(a.paths_from(0).len(), 2);
        assert_eq!(a.paths_from(1).len(), 2);
    }

    #[test]
    fn exterior2_is_commutative_dim_four() {
        let a = exterior2();
        assert_eq!(a.dim(), 4);
        assert!(a.is_commutative());
    }

    #[test]
    fn fat_point_kills_all_quadratics() {
        let a = fat_point();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency(), 2);
    }

    #[test]
    fn short_relation_rejected() {
        let quiver = Quiver {
            vertices: 1,
            arrows: vec![Arrow { id: "a".into(), from: 0, to: 0 }],
        };
        let rel = Relation { terms: vec![RelationTerm { coeff: 1, word: vec![0] }] };
        assert!(matches!(
            Algebra::build(quiver, vec![rel], 2, 16),
            Err(EngineError::NotAdmissible(_))
        ));
    }

    #[test]
    fn opposite_of_commutative_is_same_basis() {
        let a = dual_numbers();
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), a.dim());
        assert_eq!(op.content_id(), a.content_id());
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = a2();
        let op = a.opposite().unwrap();
        assert_eq!(op.arrows()[0].from, 1);
        assert_eq!(op.arrows()[0].to, 0);
        assert_eq!(op.dim(), 3);
        // double opposite is the original algebra, structurally
        let opop = op.opposite().unwrap();
        assert_eq!(opop.content_id(), a.content_id());
    }

    #[test]
    fn arrow_loop_opposite_relations() {
        // b.a = 0 reverses to a.b = 0 (in traversal order: [a,b] -> [b,a])
        let a = arrow_loop();
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), 4);
        assert_eq!(op.relations[0].terms[0].word, vec![1, 0]);
        assert_eq!(op.opposite().unwrap().content_id(), a.content_id());
    }

    #[test]
    fn nonhomogeneous_admissible_relation() {
        // one loop with a^2 = a^3; not admissible: a^2 never leaves the ideal
        // incrementally, so the cap is hit
        let quiver = Quiver {
            vertices: 1,
            arrows: vec![Arrow { id: "a".into(), from: 0, to: 0 }],
        };
        let rel = Relation {
            terms: vec![
                RelationTerm { coeff: 1, word: vec![0, 0] },
                RelationTerm { coeff: 1, word: vec![0, 0, 0] },
            ],
        };
        let err = Algebra::build(quiver, vec![rel], 2, 12).unwrap_err();
        assert!(matches!(err, EngineError::NotFiniteDimensional { .. }));
    }

    #[test]
    fn nonhomogeneous_with_nilpotent_tail() {
        // a^2 = a^3 together with a^4 = 0 is admissible: a^2 = a^3 = a^4 = 0
        let quiver = Quiver {
            vertices: 1,
            arrows: vec![Arrow { id: "a".into(), from: 0, to: 0 }],
        };
        let rels = vec![
            Relation {
                terms: vec![
                    RelationTerm { coeff: 1, word: vec![0, 0] },
                    RelationTerm { coeff: 1, word: vec![0, 0, 0] },
                ],
            },
            Relation { terms: vec![RelationTerm { coeff: 1, word: vec![0, 0, 0, 0] }] },
        ];
        let a = Algebra::build(quiver, rels, 2, 12).unwrap();
        assert_eq!(a.dim(), 2);
    }
}
