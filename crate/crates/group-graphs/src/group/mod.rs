//! Representation-independent finite-group primitives.
//!
//! A [`FiniteGroup`] owns one of three concrete representations
//! (multiplication table, permutation group, matrix semidirect product) and
//! exposes exact element arithmetic over dense element ids `0..order`. The
//! identity is always element 0. Everything here is immutable after
//! construction, so all queries are safe to run concurrently.

mod series;

use std::collections::HashMap;

use thiserror::Error;

use crate::gf::GfMatrix;

/// Index of a group element, valid for the lifetime of its group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub u32);

impl std::fmt::Debug for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group would exceed the supported size ({0} elements)")]
    TooLarge(u64),
    #[error("operation requires a non-trivial group")]
    TrivialGroup,
    #[error("parameter out of supported range: {0}")]
    OutOfRange(String),
}

const MAX_ORDER: u64 = 1 << 31;
const MAX_TABLE_ORDER: usize = 4096;
pub(crate) const MAX_SEMIDIRECT_DIM: usize = 12;

pub(crate) enum Repr {
    Table {
        table: Vec<u32>,
        inv: Vec<u32>,
    },
    Permutation {
        degree: usize,
        /// All permutations, flattened, lexicographically sorted so that the
        /// identity is element 0.
        perms: Vec<u8>,
        index: HashMap<u64, u32>,
    },
    Semidirect(SemidirectRepr),
}

pub(crate) struct SemidirectRepr {
    pub p: u64,
    pub dim: usize,
    pub h_count: u32,
    pub n_count: u32,
    pub h_mats: Vec<GfMatrix>,
    /// Flattened matrix entries for the hot multiplication path.
    pub h_flat: Vec<u32>,
    pub h_mul: Vec<u32>,
    pub h_inv: Vec<u32>,
}

/// Which concrete representation backs a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReprKind {
    MultiplicationTable,
    Permutation,
    MatrixSemidirect,
}

/// A concrete finite group with exact element arithmetic.
pub struct FiniteGroup {
    order: usize,
    repr: Repr,
    generators: Vec<ElementId>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, {:?})",
            self.order,
            self.representation()
        )
    }
}

impl FiniteGroup {
    /// Builds a group from an explicit multiplication table.
    ///
    /// `table[i][j]` is the product `i * j`. Element 0 must be the identity.
    /// The table is validated: shape, identity row/column, Latin-square
    /// property, inverses, and associativity (exhaustive up to order 200,
    /// sampled deterministically above).
    pub fn from_multiplication_table(table: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(n as u64));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has length {} in an order-{n} table",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(GroupError::InvalidTable(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
                flat.push(v);
            }
        }
        for j in 0..n {
            if flat[j] != j as u32 {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not a left identity at column {j}"
                )));
            }
            if flat[j * n] != j as u32 {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not a right identity at row {j}"
                )));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = flat[i * n + j] as usize;
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!(
                        "row {i} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = flat[j * n + i] as usize;
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!(
                        "column {i} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .expect("Latin square has a right inverse");
            if flat[b * n + a] != 0 {
                return Err(GroupError::InvalidTable(format!(
                    "element {a}: left and right inverses differ"
                )));
            }
            inv[a] = b as u32;
        }
        // Associativity.
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b] as usize;
                    for c in 0..n {
                        let bc = flat[b * n + c] as usize;
                        if flat[ab * n + c] != flat[a * n + bc] {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic sample of triples.
            let mut s = 0x9e3779b97f4a7c15u64;
            for _ in 0..200_000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 33) as usize % n;
                let b = (s >> 17) as usize % n;
                let c = s as usize % n;
                let ab = flat[a * n + b] as usize;
                let bc = flat[b * n + c] as usize;
                if flat[ab * n + c] != flat[a * n + bc] {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let mut g = FiniteGroup {
            order: n,
            repr: Repr::Table { table: flat, inv },
            generators: Vec::new(),
        };
        g.generators = g.compute_generating_set();
        Ok(g)
    }

    /// Builds the permutation group generated by `gens` on `0..degree`.
    ///
    /// Elements are all products of the generators, indexed in lexicographic
    /// order of their one-line notation (which places the identity first).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        if degree == 0 || degree > 16 {
            return Err(GroupError::OutOfRange(format!(
                "permutation degree {degree} (supported: 1..=16)"
            )));
        }
        let mut gen_perms = Vec::new();
        for g in gens {
            if g.len() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "length {} does not match degree {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "{g:?} is not a permutation of 0..{degree}"
                    )));
                }
                seen[v] = true;
            }
            gen_perms.push(g.iter().map(|&v| v as u8).collect::<Vec<u8>>());
        }
        let ident: Vec<u8> = (0..degree as u8).collect();
        let mut all: Vec<Vec<u8>> = vec![ident.clone()];
        let mut seen: HashMap<u64, ()> = HashMap::new();
        seen.insert(pack_perm(&ident), ());
        let mut head = 0;
        while head < all.len() {
            let cur = all[head].clone();
            head += 1;
            for g in &gen_perms {
                let prod: Vec<u8> = (0..degree).map(|i| g[cur[i] as usize]).collect();
                let key = pack_perm(&prod);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(());
                    all.push(prod);
                }
            }
            if all.len() as u64 > MAX_ORDER {
                return Err(GroupError::TooLarge(all.len() as u64));
            }
        }
        all.sort();
        let mut index = HashMap::with_capacity(all.len());
        let mut perms = Vec::with_capacity(all.len() * degree);
        for (i, p) in all.iter().enumerate() {
            index.insert(pack_perm(p), i as u32);
            perms.extend_from_slice(p);
        }
        let generators = gen_perms
            .iter()
            .map(|g| ElementId(index[&pack_perm(g)]))
            .collect();
        Ok(FiniteGroup {
            order: all.len(),
            repr: Repr::Permutation {
                degree,
                perms,
                index,
            },
            generators,
        })
    }

    pub(crate) fn from_semidirect(repr: SemidirectRepr, generators: Vec<ElementId>) -> Self {
        let order = repr.n_count as usize * repr.h_count as usize;
        FiniteGroup {
            order,
            repr: Repr::Semidirect(repr),
            generators,
        }
    }

    pub(crate) fn from_table_unchecked(table: Vec<u32>, n: usize, gens: Vec<ElementId>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group table") as u32;
        }
        FiniteGroup {
            order: n,
            repr: Repr::Table { table, inv },
            generators: gens,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The identity element. Always id 0, in every representation.
    #[inline]
    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    pub fn representation(&self) -> ReprKind {
        match &self.repr {
            Repr::Table { .. } => ReprKind::MultiplicationTable,
            Repr::Permutation { .. } => ReprKind::Permutation,
            Repr::Semidirect(_) => ReprKind::MatrixSemidirect,
        }
    }

    /// The stored generating set (used for orbit and normality computations).
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order as u32).map(ElementId)
    }

    #[inline]
    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mul_raw(a.0, b.0))
    }

    #[inline]
    pub fn invert(&self, a: ElementId) -> ElementId {
        ElementId(self.inv_raw(a.0))
    }

    /// `g^h = h^{-1} g h`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, h: ElementId) -> ElementId {
        ElementId(self.conj_raw(g.0, h.0))
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    #[inline]
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        let ai = self.inv_raw(a.0);
        let bi = self.inv_raw(b.0);
        ElementId(self.mul_raw(self.mul_raw(ai, bi), self.mul_raw(a.0, b.0)))
    }

    pub fn power(&self, g: ElementId, e: u64) -> ElementId {
        let mut acc = 0u32;
        let mut base = g.0;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        ElementId(acc)
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        debug_assert!((a as usize) < self.order && (b as usize) < self.order);
        match &self.repr {
            Repr::Table { table, .. } => table[a as usize * self.order + b as usize],
            Repr::Permutation {
                degree,
                perms,
                index,
            } => {
                let pa = &perms[a as usize * degree..(a as usize + 1) * degree];
                let pb = &perms[b as usize * degree..(b as usize + 1) * degree];
                let mut key = 0u64;
                for i in 0..*degree {
                    key |= (pb[pa[i] as usize] as u64) << (4 * i);
                }
                index[&key]
            }
            Repr::Semidirect(r) => sd_mul(r, a, b),
        }
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        match &self.repr {
            Repr::Table { inv, .. } => inv[a as usize],
            Repr::Permutation {
                degree,
                perms,
                index,
            } => {
                let pa = &perms[a as usize * degree..(a as usize + 1) * degree];
                let mut key = 0u64;
                for (i, &v) in pa.iter().enumerate() {
                    key |= (i as u64) << (4 * v);
                }
                index[&key]
            }
            Repr::Semidirect(r) => sd_inv(r, a),
        }
    }

    #[inline]
    pub(crate) fn conj_raw(&self, g: u32, h: u32) -> u32 {
        self.mul_raw(self.mul_raw(self.inv_raw(h), g), h)
    }

    /// Least `m >= 1` with `g^m = 1`.
    pub fn element_order(&self, g: ElementId) -> usize {
        let mut o = 1;
        let mut cur = g.0;
        while cur != 0 {
            cur = self.mul_raw(cur, g.0);
            o += 1;
        }
        o
    }

    /// `{g^0, ..., g^(o(g)-1)}` as a subgroup.
    pub fn cyclic_subgroup(&self, g: ElementId) -> SubgroupSet {
        let mut elems = vec![0u32];
        let mut cur = g.0;
        while cur != 0 {
            elems.push(cur);
            cur = self.mul_raw(cur, g.0);
        }
        elems.sort_unstable();
        SubgroupSet::from_sorted(self, elems)
    }

    /// The smallest subgroup containing all of `gens`. An empty list yields
    /// the trivial subgroup.
    pub fn closure(&self, gens: &[ElementId]) -> SubgroupSet {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let e = out[head];
            head += 1;
            for g in gens {
                let q = self.mul_raw(e, g.0);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
        }
        out.sort_unstable();
        SubgroupSet::from_sorted(self, out)
    }

    /// True iff `h^g` stays in `H` for every `h` in `H` and every `g` in the
    /// group (checked over the stored generating set, which suffices).
    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        h.raw_elements().iter().all(|&e| {
            self.generators
                .iter()
                .all(|g| h.contains_raw(self.conj_raw(e, g.0)))
        })
    }

    /// True iff `a` normalises the cyclic subgroup `B = <b_gen>`, i.e.
    /// `b_gen^a` lies in `B`. Conjugation preserves order, so this is
    /// equivalent to `B^a = B`.
    pub fn normalises_cyclic(&self, a: ElementId, b_gen: ElementId, b: &SubgroupSet) -> bool {
        b.contains_raw(self.conj_raw(b_gen.0, a.0))
    }

    /// Elements commuting with every element of `s`.
    pub fn centralizer(&self, s: &SubgroupSet) -> SubgroupSet {
        let elems: Vec<u32> = (0..self.order as u32)
            .filter(|&e| {
                s.raw_elements()
                    .iter()
                    .all(|&t| self.mul_raw(e, t) == self.mul_raw(t, e))
            })
            .collect();
        SubgroupSet::from_sorted(self, elems)
    }

    pub fn centralizer_of_element(&self, x: ElementId) -> SubgroupSet {
        let elems: Vec<u32> = (0..self.order as u32)
            .filter(|&e| self.mul_raw(e, x.0) == self.mul_raw(x.0, e))
            .collect();
        SubgroupSet::from_sorted(self, elems)
    }

    /// The smallest normal subgroup containing `g`: the closure of all
    /// iterated conjugates of `g`.
    pub fn normal_closure(&self, g: ElementId) -> SubgroupSet {
        let mut sub_gens = vec![g];
        loop {
            let s = self.closure(&sub_gens);
            let mut grew = false;
            for i in 0..sub_gens.len() {
                for gg in &self.generators {
                    let c = ElementId(self.conj_raw(sub_gens[i].0, gg.0));
                    if !s.contains(c) && !sub_gens.contains(&c) {
                        sub_gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// A small generating set for `sub`, grown greedily in element order.
    pub fn generating_set(&self, sub: &SubgroupSet) -> Vec<ElementId> {
        let mut gens: Vec<ElementId> = Vec::new();
        let mut have = SubgroupSet::trivial(self);
        for &e in sub.raw_elements() {
            if !have.contains_raw(e) {
                gens.push(ElementId(e));
                have = self.closure(&gens);
                if have.order() == sub.order() {
                    break;
                }
            }
        }
        gens
    }

    /// The whole group as a subgroup set.
    pub fn full_subgroup(&self) -> SubgroupSet {
        SubgroupSet::from_sorted(self, (0..self.order as u32).collect())
    }

    /// Greedy generating set for the whole group (used when a representation
    /// has no natural generators, e.g. explicit tables).
    fn compute_generating_set(&self) -> Vec<ElementId> {
        let full = self.full_subgroup();
        self.generating_set(&full)
    }

    pub(crate) fn semidirect_repr(&self) -> Option<&SemidirectRepr> {
        match &self.repr {
            Repr::Semidirect(r) => Some(r),
            _ => None,
        }
    }

    /// One-line notation of a permutation element, when the representation is
    /// a permutation group.
    pub fn permutation_of(&self, e: ElementId) -> Option<Vec<usize>> {
        match &self.repr {
            Repr::Permutation { degree, perms, .. } => Some(
                perms[e.index() * degree..(e.index() + 1) * degree]
                    .iter()
                    .map(|&v| v as usize)
                    .collect(),
            ),
            _ => None,
        }
    }
}

fn pack_perm(p: &[u8]) -> u64 {
    debug_assert!(p.len() <= 16);
    p.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &v)| acc | (v as u64) << (4 * i))
}

#[inline]
fn sd_mul(r: &SemidirectRepr, a: u32, b: u32) -> u32 {
    let hc = r.h_count;
    let (va, ha) = (a / hc, a % hc);
    let (vb, hb) = (b / hc, b % hc);
    let p = r.p;
    let dim = r.dim;
    let mut v1 = [0u64; MAX_SEMIDIRECT_DIM];
    let mut t = va as u64;
    for d in v1.iter_mut().take(dim) {
        *d = t % p;
        t /= p;
    }
    let m = &r.h_flat[hb as usize * dim * dim..(hb as usize + 1) * dim * dim];
    let mut out = [0u64; MAX_SEMIDIRECT_DIM];
    for k in 0..dim {
        let c = v1[k];
        if c != 0 {
            for j in 0..dim {
                out[j] += c * m[k * dim + j] as u64;
            }
        }
    }
    let mut t = vb as u64;
    for o in out.iter_mut().take(dim) {
        *o += t % p;
        t /= p;
    }
    let mut vi = 0u64;
    for j in (0..dim).rev() {
        vi = vi * p + out[j] % p;
    }
    vi as u32 * hc + r.h_mul[(ha * hc + hb) as usize]
}

#[inline]
fn sd_inv(r: &SemidirectRepr, a: u32) -> u32 {
    let hc = r.h_count;
    let (va, ha) = (a / hc, a % hc);
    let hi = r.h_inv[ha as usize];
    let p = r.p;
    let dim = r.dim;
    let mut v = [0u64; MAX_SEMIDIRECT_DIM];
    let mut t = va as u64;
    for d in v.iter_mut().take(dim) {
        *d = t % p;
        t /= p;
    }
    // (v, h)^{-1} = (-v * M(h^{-1}), h^{-1})
    let m = &r.h_flat[hi as usize * dim * dim..(hi as usize + 1) * dim * dim];
    let mut out = [0u64; MAX_SEMIDIRECT_DIM];
    for k in 0..dim {
        let c = v[k];
        if c != 0 {
            for j in 0..dim {
                out[j] += c * m[k * dim + j] as u64;
            }
        }
    }
    let mut vi = 0u64;
    for j in (0..dim).rev() {
        vi = vi * p + (p - out[j] % p) % p;
    }
    vi as u32 * hc + hi
}

/// An explicit subgroup: a sorted element list plus an O(1) membership
/// bitset. Equality is element-list equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    elems: Vec<u32>,
    bits: Vec<u64>,
}

impl std::fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubgroupSet(order {})", self.elems.len())
    }
}

impl SubgroupSet {
    pub(crate) fn from_sorted(group: &FiniteGroup, elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let mut bits = vec![0u64; group.order().div_ceil(64)];
        for &e in &elems {
            bits[e as usize / 64] |= 1 << (e % 64);
        }
        SubgroupSet { elems, bits }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        SubgroupSet::from_sorted(group, vec![0])
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    #[inline]
    pub fn contains(&self, e: ElementId) -> bool {
        self.contains_raw(e.0)
    }

    #[inline]
    pub(crate) fn contains_raw(&self, e: u32) -> bool {
        self.bits[e as usize / 64] & (1 << (e % 64)) != 0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.elems.iter().map(|&e| ElementId(e))
    }

    /// Non-identity elements.
    pub fn nontrivial_elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.elems
            .iter()
            .filter(|&&e| e != 0)
            .map(|&e| ElementId(e))
    }

    pub(crate) fn raw_elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.elems.iter().all(|&e| other.contains_raw(e))
    }

    /// Conjugate subgroup `S^g`.
    pub fn conjugate_by(&self, group: &FiniteGroup, g: ElementId) -> SubgroupSet {
        let mut elems: Vec<u32> = self.elems.iter().map(|&e| group.conj_raw(e, g.0)).collect();
        elems.sort_unstable();
        SubgroupSet::from_sorted(group, elems)
    }
}
