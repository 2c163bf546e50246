//! Concrete group constructors: cyclic, dihedral, symmetric, direct products,
//! permutation groups from generators, and semidirect products N x| H with N
//! an elementary abelian p-group and H a matrix group over GF(p).

use std::collections::HashMap;

use thiserror::Error;

use crate::gf::{GfError, GfMatrix};
use crate::group::{ElementId, FiniteGroup, GroupError, SemidirectRepr, SubgroupSet};
use crate::group::MAX_SEMIDIRECT_DIM;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("parameter out of supported range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Matrix(#[from] GfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("matrix group does not match p={p}, dim={dim}")]
    InconsistentMatrix { p: u64, dim: usize },
    #[error("group of order {0} exceeds the supported size")]
    TooLarge(u64),
}

const MAX_SEMIDIRECT_ORDER: u64 = 1 << 31;
const MAX_H_ORDER: usize = 1 << 16;
const MAX_DIRECT_ORDER: usize = 4096;

/// Cyclic group of order `n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 || n > MAX_DIRECT_ORDER {
        return Err(BuildError::OutOfRange(format!("cyclic order {n}")));
    }
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u32;
        }
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![ElementId(1)]
    };
    Ok(FiniteGroup::from_table_unchecked(table, n, gens))
}

/// Dihedral group of order `2n`, elements `r^i s^j` encoded as `i + n*j`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 || 2 * n > MAX_DIRECT_ORDER {
        return Err(BuildError::OutOfRange(format!("dihedral parameter {n}")));
    }
    let m = 2 * n;
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        let (i1, j1) = (a % n, a / n);
        for b in 0..m {
            let (i2, j2) = (b % n, b / n);
            // s r = r^{-1} s
            let i = (if j1 == 0 { i1 + i2 } else { i1 + n - i2 }) % n;
            table[a * m + b] = (i + n * ((j1 + j2) % 2)) as u32;
        }
    }
    let gens = if n == 1 {
        vec![ElementId(1)]
    } else {
        vec![ElementId(1), ElementId(n as u32)]
    };
    Ok(FiniteGroup::from_table_unchecked(table, m, gens))
}

/// Symmetric group on `n` points as a permutation group. Limited to `n <= 5`;
/// S5 exists only as a non-soluble test fixture.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 || n > 5 {
        return Err(BuildError::OutOfRange(format!(
            "symmetric degree {n} (supported: 1..=5)"
        )));
    }
    if n == 1 {
        return make_cyclic(1);
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Ok(FiniteGroup::from_permutations(n, &[transposition, cycle])?)
}

/// Direct product, as a multiplication table over pairs `(g, h)` encoded as
/// `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, BuildError> {
    let n = g.order() * h.order();
    if n > MAX_DIRECT_ORDER {
        return Err(BuildError::TooLarge(n as u64));
    }
    let nh = h.order();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let (a1, a2) = (a / nh, a % nh);
        for b in 0..n {
            let (b1, b2) = (b / nh, b % nh);
            let p1 = g.multiply(ElementId(a1 as u32), ElementId(b1 as u32)).0 as usize;
            let p2 = h.multiply(ElementId(a2 as u32), ElementId(b2 as u32)).0 as usize;
            table[a * n + b] = (p1 * nh + p2) as u32;
        }
    }
    let mut gens: Vec<ElementId> = g
        .generators()
        .iter()
        .map(|e| ElementId(e.0 * nh as u32))
        .collect();
    gens.extend(h.generators().iter().map(|e| ElementId(e.0)));
    Ok(FiniteGroup::from_table_unchecked(table, n, gens))
}

/// Converts 1-based cycles to one-line notation on `0..degree`.
pub fn permutation_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, BuildError> {
    let mut arr: Vec<usize> = (0..degree).collect();
    for c in cycles {
        for (k, &pt) in c.iter().enumerate() {
            if pt == 0 || pt > degree {
                return Err(BuildError::OutOfRange(format!(
                    "cycle point {pt} outside 1..={degree}"
                )));
            }
            let next = c[(k + 1) % c.len()];
            arr[pt - 1] = next - 1;
        }
    }
    // cycles must be disjoint enough to still give a bijection
    let mut seen = vec![false; degree];
    for &v in &arr {
        if seen[v] {
            return Err(BuildError::OutOfRange("cycles do not define a permutation".into()));
        }
        seen[v] = true;
    }
    Ok(arr)
}

/// The semidirect product `N x| H` where `N = GF(p)^dim` (row vectors) and
/// `H` is the closure of the given invertible matrices.
///
/// Elements are pairs `(v, h)` encoded as `index(v) * |H| + index(h)`, with
/// the vector index little-endian base p and `H` sorted entry-lexicographic,
/// identity first, so ids are reproducible across runs. Multiplication is
/// `(v1, h1) (v2, h2) = (v1 M(h2) + v2, h1 h2)`: the matrix of the second
/// factor twists the first vector.
pub fn semidirect_product(
    p: u64,
    dim: usize,
    h_matrices: &[GfMatrix],
) -> Result<FiniteGroup, BuildError> {
    if dim == 0 || dim > MAX_SEMIDIRECT_DIM {
        return Err(BuildError::OutOfRange(format!(
            "dimension {dim} (supported: 1..={MAX_SEMIDIRECT_DIM})"
        )));
    }
    if p >= 1 << 20 {
        return Err(BuildError::OutOfRange(format!("modulus {p} too large")));
    }
    let identity = GfMatrix::identity(p, dim);
    for m in h_matrices {
        if m.modulus() != p || m.dim() != dim {
            return Err(BuildError::InconsistentMatrix { p, dim });
        }
        if m.inverse().is_none() {
            return Err(BuildError::Matrix(GfError::Singular(p)));
        }
    }
    // Close under multiplication (finite subgroup of GL, so products reach
    // inverses too).
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    let mut all = vec![identity.clone()];
    seen.insert(identity.entries().to_vec(), ());
    let mut head = 0;
    while head < all.len() {
        let cur = all[head].clone();
        head += 1;
        for g in h_matrices {
            let prod = cur.mul(g)?;
            if !seen.contains_key(prod.entries()) {
                seen.insert(prod.entries().to_vec(), ());
                all.push(prod);
            }
        }
        if all.len() > MAX_H_ORDER {
            return Err(BuildError::TooLarge(all.len() as u64));
        }
    }
    all.sort();
    let pos = all.iter().position(|m| m.is_identity()).expect("identity in closure");
    all.remove(pos);
    all.insert(0, identity);

    let h_count = all.len() as u32;
    let mut n_count: u64 = 1;
    for _ in 0..dim {
        n_count = n_count.saturating_mul(p);
        if n_count.saturating_mul(h_count as u64) > MAX_SEMIDIRECT_ORDER {
            return Err(BuildError::TooLarge(n_count.saturating_mul(h_count as u64)));
        }
    }

    let index: HashMap<Vec<u64>, u32> = all
        .iter()
        .enumerate()
        .map(|(i, m)| (m.entries().to_vec(), i as u32))
        .collect();
    let mut h_mul = vec![0u32; all.len() * all.len()];
    let mut h_inv = vec![0u32; all.len()];
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let prod = a.mul(b)?;
            h_mul[i * all.len() + j] = index[prod.entries()];
        }
        h_inv[i] = index[a.inverse().expect("closed under inversion").entries()];
    }
    let mut h_flat = Vec::with_capacity(all.len() * dim * dim);
    for m in &all {
        h_flat.extend(m.entries().iter().map(|&e| e as u32));
    }

    // Generators: the standard basis of N, then one element per input matrix.
    let mut gens: Vec<ElementId> = Vec::new();
    let mut pw = 1u64;
    for _ in 0..dim {
        gens.push(ElementId((pw * h_count as u64) as u32));
        pw *= p;
    }
    for m in h_matrices {
        let id = ElementId(index[m.entries()]);
        if !gens.contains(&id) {
            gens.push(id);
        }
    }

    let repr = SemidirectRepr {
        p,
        dim,
        h_count,
        n_count: n_count as u32,
        h_mats: all,
        h_flat,
        h_mul,
        h_inv,
    };
    Ok(FiniteGroup::from_semidirect(repr, gens))
}

/// Structured access to a semidirect-product group: encode and decode
/// elements as (vector, matrix) pairs, and cut out the embedded copies of N
/// and H as subgroups.
pub struct SemidirectView<'g> {
    group: &'g FiniteGroup,
}

impl<'g> SemidirectView<'g> {
    pub fn new(group: &'g FiniteGroup) -> Option<Self> {
        group.semidirect_repr().map(|_| SemidirectView { group })
    }

    pub fn p(&self) -> u64 {
        self.repr().p
    }

    pub fn dim(&self) -> usize {
        self.repr().dim
    }

    pub fn h_order(&self) -> usize {
        self.repr().h_count as usize
    }

    pub fn h_matrix(&self, idx: usize) -> &GfMatrix {
        &self.repr().h_mats[idx]
    }

    pub fn h_index_of(&self, m: &GfMatrix) -> Option<usize> {
        self.repr().h_mats.iter().position(|x| x == m)
    }

    /// Element id of the pair `(v, h)`.
    pub fn element(&self, v: &[u64], h_idx: usize) -> ElementId {
        let r = self.repr();
        debug_assert_eq!(v.len(), r.dim);
        debug_assert!(h_idx < r.h_count as usize);
        let mut vi = 0u64;
        for &c in v.iter().rev() {
            debug_assert!(c < r.p);
            vi = vi * r.p + c;
        }
        ElementId((vi * r.h_count as u64 + h_idx as u64) as u32)
    }

    /// Decomposes an element id into its `(vector, matrix index)` pair.
    pub fn decompose(&self, e: ElementId) -> (Vec<u64>, usize) {
        let r = self.repr();
        let (vi, hi) = (e.0 / r.h_count, e.0 % r.h_count);
        let mut v = Vec::with_capacity(r.dim);
        let mut t = vi as u64;
        for _ in 0..r.dim {
            v.push(t % r.p);
            t /= r.p;
        }
        (v, hi as usize)
    }

    /// The embedded normal subgroup `N = {(v, 1)}`.
    pub fn n_subgroup(&self) -> SubgroupSet {
        let r = self.repr();
        let elems: Vec<u32> = (0..r.n_count).map(|v| v * r.h_count).collect();
        SubgroupSet::from_sorted(self.group, elems)
    }

    /// The embedded point stabiliser `{(0, h)}`.
    pub fn h_subgroup(&self) -> SubgroupSet {
        let r = self.repr();
        let elems: Vec<u32> = (0..r.h_count).collect();
        SubgroupSet::from_sorted(self.group, elems)
    }

    fn repr(&self) -> &SemidirectRepr {
        self.group.semidirect_repr().expect("checked at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_props() {
        let triv = make_cyclic(1).unwrap();
        assert_eq!(triv.order(), 1);
        let c6 = make_cyclic(6).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.element_order(ElementId(1)), 6);
    }

    #[test]
    fn dihedral_is_symmetric_for_n_3() {
        let d3 = make_dihedral(3).unwrap();
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(d3.order(), s3.order());
        let mut stats_d: Vec<usize> = d3.elements().map(|e| d3.element_order(e)).collect();
        let mut stats_s: Vec<usize> = s3.elements().map(|e| s3.element_order(e)).collect();
        stats_d.sort_unstable();
        stats_s.sort_unstable();
        assert_eq!(stats_d, stats_s);
    }

    #[test]
    fn direct_product_c2_c2() {
        let c2 = make_cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2).unwrap();
        assert_eq!(v4.order(), 4);
        for e in v4.elements() {
            assert!(v4.element_order(e) <= 2, "exponent 2");
        }
    }

    #[test]
    fn symmetric_orders() {
        for (n, expect) in [(2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(make_symmetric(n).unwrap().order(), expect);
        }
        assert!(make_symmetric(6).is_err());
        assert!(make_symmetric(0).is_err());
    }

    #[test]
    fn cycles_to_one_line() {
        // (1 2 3) on 4 points
        assert_eq!(
            permutation_from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
            vec![1, 2, 0, 3]
        );
        // (1 2)(3 4)
        assert_eq!(
            permutation_from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
            vec![1, 0, 3, 2]
        );
        assert!(permutation_from_cycles(3, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn trivial_action_semidirect_is_elementary_abelian() {
        let g = semidirect_product(3, 2, &[]).unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.elements().all(|e| g.element_order(e) <= 3));
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.multiply(a, b), g.multiply(b, a));
            }
        }
    }

    #[test]
    fn frobenius_group_of_order_21() {
        // C7 x| C3, scalar action by 2 (2^3 = 1 mod 7)
        let m = GfMatrix::from_rows(7, &[vec![2]]).unwrap();
        let g = semidirect_product(7, 1, &[m]).unwrap();
        assert_eq!(g.order(), 21);
        // brute-force Frobenius property: the copy of C3 meets its distinct
        // conjugates trivially
        let view = SemidirectView::new(&g).unwrap();
        let c = view.h_subgroup();
        assert_eq!(c.order(), 3);
        for e in g.elements() {
            let cc = c.conjugate_by(&g, e);
            if cc != c {
                let common = cc.elements().filter(|&x| c.contains(x)).count();
                assert_eq!(common, 1, "distinct conjugates share only the identity");
            }
        }
    }

    #[test]
    fn embedded_n_is_normal_and_action_consistent() {
        let m = GfMatrix::from_rows(5, &[vec![2, 0], vec![0, 3]]).unwrap();
        let g = semidirect_product(5, 2, std::slice::from_ref(&m)).unwrap();
        let view = SemidirectView::new(&g).unwrap();
        let n = view.n_subgroup();
        assert_eq!(n.order(), 25);
        assert!(g.is_normal(&n));
        assert!(g.is_abelian_subgroup(&n));
        // conjugating (v, 1) by (0, h) applies the matrix: (v M(h), 1)
        let h_idx = view.h_index_of(&m).unwrap();
        let h_elem = view.element(&[0, 0], h_idx);
        for v0 in 0..5u64 {
            for v1 in 0..5u64 {
                let v = [v0, v1];
                let e = view.element(&v, 0);
                let conj = g.conjugate(e, h_elem);
                let expect = view.element(&m.apply_row(&v), 0);
                assert_eq!(conj, expect);
            }
        }
    }

    #[test]
    fn matrix_order_matches_element_order() {
        let m = GfMatrix::from_rows(7, &[vec![0, 6], vec![1, 6]]).unwrap();
        let g = semidirect_product(7, 2, std::slice::from_ref(&m)).unwrap();
        let view = SemidirectView::new(&g).unwrap();
        let h_idx = view.h_index_of(&m).unwrap();
        let e = view.element(&[0, 0], h_idx);
        assert_eq!(m.order().unwrap() as usize, g.element_order(e));
    }

    #[test]
    fn semidirect_rejects_bad_input() {
        let singular = GfMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(
            semidirect_product(5, 2, &[singular]),
            Err(BuildError::Matrix(GfError::Singular(5)))
        ));
        let wrong_dim = GfMatrix::from_rows(5, &[vec![1]]).unwrap();
        assert!(matches!(
            semidirect_product(5, 2, &[wrong_dim]),
            Err(BuildError::InconsistentMatrix { .. })
        ));
    }

    #[test]
    fn semidirect_associativity_sampled() {
        let m = GfMatrix::from_rows(7, &[vec![2]]).unwrap();
        let g = semidirect_product(7, 1, &[m]).unwrap();
        // exhaustive for this size
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(
                        g.multiply(g.multiply(a, b), c),
                        g.multiply(a, g.multiply(b, c))
                    );
                }
            }
        }
    }
}
