//! Enumeration of the non-trivial cyclic subgroups of a group, with canonical
//! ids, membership lookup, and the conjugation action with its orbits.
//!
//! Every graph in this crate has adjacency depending only on the pair of
//! cyclic subgroups the two elements generate, so the element-level graph
//! collapses exactly onto these ids. Conjugation permutes the ids and is a
//! graph automorphism, which makes eccentricities constant on orbits; both
//! facts are verified exhaustively in the test suites.

use thiserror::Error;

use crate::arith::{euler_phi, gcd};
use crate::group::{ElementId, FiniteGroup};

/// Index of a non-trivial cyclic subgroup in a [`CyclicSubgroupTable`].
pub type CyclicId = u32;

#[derive(Debug, Error)]
pub enum CollapseError {
    #[error("the trivial group has no non-trivial cyclic subgroups")]
    TrivialGroup,
}

/// The non-trivial cyclic subgroups of a group.
///
/// Ids are assigned in increasing order of canonical generator (the minimal
/// element id generating the subgroup), so they are deterministic for a given
/// group construction.
pub struct CyclicSubgroupTable {
    count: usize,
    canonical: Vec<u32>,
    order: Vec<u32>,
    /// For each element, the id of the cyclic subgroup it generates
    /// (`u32::MAX` for the identity).
    member: Vec<u32>,
    set_off: Vec<u32>,
    set_elems: Vec<u32>,
    gen_off: Vec<u32>,
    gen_elems: Vec<u32>,
}

const NO_VERTEX: u32 = u32::MAX;

impl CyclicSubgroupTable {
    pub fn build(g: &FiniteGroup) -> Result<Self, CollapseError> {
        let n = g.order();
        if n < 2 {
            return Err(CollapseError::TrivialGroup);
        }
        let mut member = vec![NO_VERTEX; n];
        let mut canonical = Vec::new();
        let mut order = Vec::new();
        let mut sets: Vec<Vec<u32>> = Vec::new();
        let mut powers = Vec::new();
        for e in 1..n as u32 {
            if member[e as usize] != NO_VERTEX {
                continue;
            }
            // powers e^1 .. e^o, ending at the identity
            powers.clear();
            let mut cur = e;
            while cur != 0 {
                powers.push(cur);
                cur = g.mul_raw(cur, e);
            }
            powers.push(0);
            let o = powers.len() as u64;
            let id = canonical.len() as u32;
            for (k, &p) in powers.iter().enumerate() {
                if gcd(k as u64 + 1, o) == 1 {
                    debug_assert!(member[p as usize] == NO_VERTEX);
                    member[p as usize] = id;
                }
            }
            canonical.push(e);
            order.push(o as u32);
            let mut set = powers.clone();
            set.sort_unstable();
            sets.push(set);
        }
        let count = canonical.len();
        let mut set_off = Vec::with_capacity(count + 1);
        let mut set_elems = Vec::new();
        set_off.push(0);
        for s in &sets {
            set_elems.extend_from_slice(s);
            set_off.push(set_elems.len() as u32);
        }
        // generator lists, grouped by id
        let mut gen_off = vec![0u32; count + 1];
        for &id in &member {
            if id != NO_VERTEX {
                gen_off[id as usize + 1] += 1;
            }
        }
        for i in 0..count {
            gen_off[i + 1] += gen_off[i];
        }
        let mut cursor = gen_off.clone();
        let mut gen_elems = vec![0u32; n - 1];
        for (e, &id) in member.iter().enumerate() {
            if id != NO_VERTEX {
                gen_elems[cursor[id as usize] as usize] = e as u32;
                cursor[id as usize] += 1;
            }
        }
        let table = CyclicSubgroupTable {
            count,
            canonical,
            order,
            member,
            set_off,
            set_elems,
            gen_off,
            gen_elems,
        };
        debug_assert!(table.check_invariants());
        Ok(table)
    }

    fn check_invariants(&self) -> bool {
        let total: usize = (0..self.count).map(|i| self.generators(i as u32).len()).sum();
        total == self.member.len() - 1
            && (0..self.count).all(|i| {
                self.generators(i as u32).len() as u64 == euler_phi(self.order[i] as u64)
            })
    }

    /// Number of non-trivial cyclic subgroups.
    pub fn count(&self) -> usize {
        self.count
    }

    /// The minimal element generating subgroup `id`.
    pub fn canonical_generator(&self, id: CyclicId) -> ElementId {
        ElementId(self.canonical[id as usize])
    }

    pub fn subgroup_order(&self, id: CyclicId) -> usize {
        self.order[id as usize] as usize
    }

    /// Sorted elements of subgroup `id` (including the identity).
    pub fn members(&self, id: CyclicId) -> &[u32] {
        &self.set_elems[self.set_off[id as usize] as usize..self.set_off[id as usize + 1] as usize]
    }

    /// All elements generating subgroup `id`.
    pub fn generators(&self, id: CyclicId) -> &[u32] {
        &self.gen_elems[self.gen_off[id as usize] as usize..self.gen_off[id as usize + 1] as usize]
    }

    /// The id of the cyclic subgroup generated by `e`, or `None` for the
    /// identity element.
    pub fn vertex_of(&self, e: ElementId) -> Option<CyclicId> {
        let id = self.member[e.index()];
        (id != NO_VERTEX).then_some(id)
    }

    /// Membership test by binary search on the sorted member list.
    #[inline]
    pub fn subgroup_contains(&self, id: CyclicId, e: u32) -> bool {
        self.members(id).binary_search(&e).is_ok()
    }

    /// Id of the conjugate subgroup `<c>^g` where `c` is the canonical
    /// generator of `id`.
    #[inline]
    pub fn conjugate_id(&self, g: &FiniteGroup, id: CyclicId, by: ElementId) -> CyclicId {
        self.member[g.conj_raw(self.canonical[id as usize], by.0) as usize]
    }
}

/// Orbits of the cyclic-subgroup ids under conjugation.
pub struct OrbitDecomposition {
    orbit_of: Vec<u32>,
    representatives: Vec<CyclicId>,
}

impl OrbitDecomposition {
    /// Computes orbits under conjugation by the group's stored generating
    /// set, which induces the same orbits as the whole group.
    pub fn compute(g: &FiniteGroup, table: &CyclicSubgroupTable) -> Self {
        let v = table.count();
        let mut orbit_of = vec![u32::MAX; v];
        let mut representatives = Vec::new();
        let mut queue = Vec::new();
        for start in 0..v as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let label = representatives.len() as u32;
            representatives.push(start);
            orbit_of[start as usize] = label;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &gen in g.generators() {
                    let w = table.conjugate_id(g, u, gen);
                    if orbit_of[w as usize] == u32::MAX {
                        orbit_of[w as usize] = label;
                        queue.push(w);
                    }
                }
            }
        }
        OrbitDecomposition {
            orbit_of,
            representatives,
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn orbit_of(&self, id: CyclicId) -> u32 {
        self.orbit_of[id as usize]
    }

    /// One id per orbit, each the minimal id in its orbit.
    pub fn representatives(&self) -> &[CyclicId] {
        &self.representatives
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn c6_has_three_nontrivial_cyclic_subgroups() {
        let g = construct::make_cyclic(6).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        assert_eq!(t.count(), 3);
        let mut orders: Vec<usize> = (0..3).map(|i| t.subgroup_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3, 6]);
    }

    #[test]
    fn s3_table() {
        let g = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        assert_eq!(t.count(), 4);
        let mut orders: Vec<usize> = (0..4).map(|i| t.subgroup_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 2, 2, 3]);
    }

    #[test]
    fn a4_table() {
        let g = FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        assert_eq!(t.count(), 7);
        let mut orders: Vec<usize> = (0..7).map(|i| t.subgroup_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn generator_counts_are_euler_phi() {
        for g in [
            construct::make_symmetric(4).unwrap(),
            construct::make_dihedral(12).unwrap(),
            construct::make_cyclic(36).unwrap(),
        ] {
            let t = CyclicSubgroupTable::build(&g).unwrap();
            let mut total = 0;
            for id in 0..t.count() as u32 {
                assert_eq!(
                    t.generators(id).len() as u64,
                    euler_phi(t.subgroup_order(id) as u64)
                );
                for &e in t.generators(id) {
                    assert_eq!(t.vertex_of(ElementId(e)), Some(id));
                }
                total += t.generators(id).len();
            }
            assert_eq!(total, g.order() - 1);
        }
    }

    #[test]
    fn canonical_generators_ascend() {
        let g = construct::make_symmetric(4).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        for id in 1..t.count() as u32 {
            assert!(t.canonical_generator(id - 1).0 < t.canonical_generator(id).0);
        }
    }

    #[test]
    fn conjugate_id_examples() {
        let g = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let find = |p: &[usize]| {
            g.elements()
                .find(|&e| g.permutation_of(e).unwrap() == p)
                .unwrap()
        };
        let r = find(&[1, 2, 0]);
        let t12 = find(&[1, 0, 2]);
        let t13 = find(&[2, 1, 0]);
        let t23 = find(&[0, 2, 1]);
        let a3 = t.vertex_of(r).unwrap();
        // the normal subgroup is fixed by conjugation
        assert_eq!(t.conjugate_id(&g, a3, t12), a3);
        // identity acts trivially everywhere
        for id in 0..t.count() as u32 {
            assert_eq!(t.conjugate_id(&g, id, g.identity()), id);
        }
        // <(12)>^(123) = <(23)>: conjugation is order-preserving and moves
        // transposition subgroups around
        let id12 = t.vertex_of(t12).unwrap();
        let id23 = t.vertex_of(t23).unwrap();
        assert_eq!(t.conjugate_id(&g, id12, r), id23);
        assert_ne!(t.conjugate_id(&g, id12, r), t.vertex_of(t13).unwrap());
        // action compatibility on sampled pairs
        for id in 0..t.count() as u32 {
            for a in g.elements() {
                for b in g.elements() {
                    let ab = g.multiply(a, b);
                    let step = t.conjugate_id(&g, t.conjugate_id(&g, id, a), b);
                    assert_eq!(t.conjugate_id(&g, id, ab), step);
                }
            }
        }
    }

    #[test]
    fn orbits_examples() {
        let c12 = construct::make_cyclic(12).unwrap();
        let t = CyclicSubgroupTable::build(&c12).unwrap();
        let o = OrbitDecomposition::compute(&c12, &t);
        assert_eq!(o.orbit_count(), t.count(), "abelian: all orbits singletons");

        let s3 = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&s3).unwrap();
        let o = OrbitDecomposition::compute(&s3, &t);
        assert_eq!(o.orbit_count(), 2);

        let a4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let t = CyclicSubgroupTable::build(&a4).unwrap();
        let o = OrbitDecomposition::compute(&a4, &t);
        assert_eq!(o.orbit_count(), 2, "three C2s conjugate, four C3s conjugate");
        // representatives hit every orbit exactly once
        let mut seen = vec![false; o.orbit_count()];
        for &r in o.representatives() {
            let l = o.orbit_of(r) as usize;
            assert!(!seen[l]);
            seen[l] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn trivial_group_is_rejected() {
        let g = construct::make_cyclic(1).unwrap();
        assert!(CyclicSubgroupTable::build(&g).is_err());
    }
}
