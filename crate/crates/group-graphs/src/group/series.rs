//! Characteristic series and the subgroups built from them: derived and
//! lower central series, solubility and nilpotency tests, subgroup
//! commutators, the largest normal p-subgroups, the Fitting subgroup, and
//! minimal normal subgroups.

use super::{ElementId, FiniteGroup, GroupError, SubgroupSet};
use crate::arith::{is_prime, prime_divisors};

/// Above this many element pairs, subgroup commutators switch from the
/// all-pairs generator set to commutators of generating sets closed up under
/// conjugation. Both routes are checked equal on the test corpus.
const COMMUTATOR_PAIR_LIMIT: usize = 1 << 22;

impl FiniteGroup {
    /// `[A, B]`: the subgroup generated by all commutators `[a, b]` with
    /// `a` in `A`, `b` in `B`.
    pub fn subgroup_commutator(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        if a.order().saturating_mul(b.order()) <= COMMUTATOR_PAIR_LIMIT {
            let mut gens = Vec::new();
            let mut seen = vec![false; self.order()];
            for &x in a.raw_elements() {
                for &y in b.raw_elements() {
                    let c = self.commutator(ElementId(x), ElementId(y)).0;
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        gens.push(ElementId(c));
                    }
                }
            }
            self.closure(&gens)
        } else {
            // [A, B] is the closure of generator commutators under
            // conjugation by <A, B>.
            let ga = self.generating_set(a);
            let gb = self.generating_set(b);
            let mut conj_gens = ga.clone();
            conj_gens.extend_from_slice(&gb);
            let mut sub_gens: Vec<ElementId> = Vec::new();
            for &x in &ga {
                for &y in &gb {
                    let c = self.commutator(x, y);
                    if !sub_gens.contains(&c) {
                        sub_gens.push(c);
                    }
                }
            }
            loop {
                let s = self.closure(&sub_gens);
                let mut grew = false;
                for i in 0..sub_gens.len() {
                    for &g in &conj_gens {
                        let c = ElementId(self.conj_raw(sub_gens[i].0, g.0));
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
    }

    /// Successive derived subgroups of `sub`, starting at `sub` itself,
    /// until the series stabilises.
    pub fn derived_series(&self, sub: &SubgroupSet) -> Vec<SubgroupSet> {
        let mut series = vec![sub.clone()];
        loop {
            let cur = series.last().unwrap();
            let next = self.subgroup_commutator(cur, cur);
            if next.order() == cur.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_soluble_subgroup(&self, sub: &SubgroupSet) -> bool {
        self.derived_series(sub).last().unwrap().is_trivial()
    }

    pub fn is_soluble(&self) -> bool {
        self.is_soluble_subgroup(&self.full_subgroup())
    }

    /// Lower central series of `sub`: gamma_1 = sub, gamma_{i+1} =
    /// [gamma_i, sub], until stabilisation.
    pub fn lower_central_series(&self, sub: &SubgroupSet) -> Vec<SubgroupSet> {
        let mut series = vec![sub.clone()];
        loop {
            let cur = series.last().unwrap();
            let next = self.subgroup_commutator(cur, sub);
            if next.order() == cur.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent_subgroup(&self, sub: &SubgroupSet) -> bool {
        self.lower_central_series(sub).last().unwrap().is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subgroup(&self.full_subgroup())
    }

    pub fn is_abelian_subgroup(&self, sub: &SubgroupSet) -> bool {
        let gens = self.generating_set(sub);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.multiply(a, b) == self.multiply(b, a)))
    }

    /// The largest normal p-subgroup O_p. An element of p-power order
    /// contributes exactly when its normal closure is a p-group; the union of
    /// those closures generates O_p.
    ///
    /// Elements are skipped once they lie in the accumulated subgroup, and a
    /// rejected element rules out its whole conjugacy class and the other
    /// generators of its cyclic subgroup, which keeps this usable at order
    /// ten thousand and beyond.
    pub fn largest_normal_p_subgroup(&self, p: u64) -> Result<SubgroupSet, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::OutOfRange(format!("{p} is not prime")));
        }
        let mut acc = SubgroupSet::trivial(self);
        let mut ruled_out = vec![false; self.order()];
        for e in 1..self.order() as u32 {
            if acc.contains_raw(e) || ruled_out[e as usize] {
                continue;
            }
            if !is_p_power(self.element_order(ElementId(e)) as u64, p) {
                continue;
            }
            let nc = self.normal_closure(ElementId(e));
            if is_p_power(nc.order() as u64, p) {
                let mut gens: Vec<ElementId> = acc.elements().collect();
                gens.extend(nc.elements());
                acc = self.closure(&gens);
            } else {
                let o = self.element_order(ElementId(e)) as u64;
                self.mark_class_and_cogenerators(e, o, &mut ruled_out);
            }
        }
        Ok(acc)
    }

    /// Marks the conjugacy class of `e` and, for every class member, the
    /// other generators of its cyclic subgroup. All marked elements share the
    /// normal closure of `e` up to conjugacy, so one representative suffices
    /// when scanning for normal closures.
    fn mark_class_and_cogenerators(&self, e: u32, o: u64, marked: &mut [bool]) {
        let mut orbit = vec![e];
        marked[e as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in self.generators() {
                let c = self.conj_raw(x, g.0);
                if !marked[c as usize] {
                    marked[c as usize] = true;
                    orbit.push(c);
                }
            }
        }
        for x in orbit {
            let mut pw = x;
            for k in 2..o {
                pw = self.mul_raw(pw, x);
                if crate::arith::gcd(k, o) == 1 {
                    marked[pw as usize] = true;
                }
            }
        }
    }

    /// The Fitting subgroup: the product of O_p over the primes dividing the
    /// group order. Normal and nilpotent; contains every normal nilpotent
    /// subgroup.
    pub fn fitting_subgroup(&self) -> SubgroupSet {
        let mut gens: Vec<ElementId> = Vec::new();
        for p in prime_divisors(self.order() as u64) {
            let op = self
                .largest_normal_p_subgroup(p)
                .expect("prime divisor is prime");
            gens.extend(op.elements());
        }
        self.closure(&gens)
    }

    /// All minimal normal subgroups, found as the inclusion-minimal normal
    /// closures of prime-order elements. Every minimal normal subgroup of a
    /// finite group is the normal closure of any of its prime-order elements,
    /// so this search is complete.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<SubgroupSet>, GroupError> {
        if self.order() == 1 {
            return Err(GroupError::TrivialGroup);
        }
        // One normal closure per conjugacy class of prime-order cyclic
        // subgroups: conjugate elements and co-generators of the same cyclic
        // subgroup have the same normal closure.
        let mut closures: Vec<SubgroupSet> = Vec::new();
        let mut represented = vec![false; self.order()];
        for e in 1..self.order() as u32 {
            if represented[e as usize] {
                continue;
            }
            let o = self.element_order(ElementId(e)) as u64;
            if !is_prime(o) {
                continue;
            }
            let nc = self.normal_closure(ElementId(e));
            self.mark_class_and_cogenerators(e, o, &mut represented);
            if !closures.contains(&nc) {
                closures.push(nc);
            }
        }
        let minimal: Vec<SubgroupSet> = closures
            .iter()
            .filter(|n| {
                !closures
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subset_of(n))
            })
            .cloned()
            .collect();
        Ok(minimal)
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn a4() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    fn find_perm(g: &FiniteGroup, p: &[usize]) -> ElementId {
        g.elements()
            .find(|&e| g.permutation_of(e).unwrap() == p)
            .unwrap()
    }

    #[test]
    fn derived_series_s3() {
        let g = construct::make_symmetric(3).unwrap();
        let series = g.derived_series(&g.full_subgroup());
        let orders: Vec<usize> = series.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![6, 3, 1]);
        assert!(g.is_soluble());
    }

    #[test]
    fn abelian_groups_are_soluble_in_one_step() {
        let g = construct::make_cyclic(12).unwrap();
        let series = g.derived_series(&g.full_subgroup());
        assert_eq!(series.len(), 2);
        assert!(series.last().unwrap().is_trivial());
        assert!(g.is_soluble());
    }

    #[test]
    fn s5_is_not_soluble() {
        let g = construct::make_symmetric(5).unwrap();
        let series = g.derived_series(&g.full_subgroup());
        // S5 > A5 = A5: stabilises at the order-60 simple group
        assert_eq!(series.last().unwrap().order(), 60);
        assert!(!g.is_soluble());
    }

    #[test]
    fn nilpotency() {
        let s3 = construct::make_symmetric(3).unwrap();
        assert!(!s3.is_nilpotent());
        let lcs = s3.lower_central_series(&s3.full_subgroup());
        assert_eq!(lcs.last().unwrap().order(), 3); // stabilises at A3

        let d4 = construct::make_dihedral(4).unwrap();
        assert!(d4.is_nilpotent());

        let a4 = a4();
        let v4 = a4.normal_closure(find_perm(&a4, &[1, 0, 3, 2]));
        assert!(a4.is_nilpotent_subgroup(&v4));
        assert!(!a4.is_nilpotent());
    }

    #[test]
    fn subgroup_commutator_examples() {
        let g = construct::make_symmetric(3).unwrap();
        let full = g.full_subgroup();
        let triv = SubgroupSet::trivial(&g);
        assert!(g.subgroup_commutator(&full, &triv).is_trivial());

        let r = find_perm(&g, &[1, 2, 0]);
        let t = find_perm(&g, &[1, 0, 2]);
        let a3 = g.cyclic_subgroup(r);
        let c2 = g.cyclic_subgroup(t);
        assert_eq!(g.subgroup_commutator(&a3, &c2), a3);
        assert!(g.subgroup_commutator(&a3, &a3).is_trivial());
    }

    #[test]
    fn commutator_routes_agree() {
        // all-pairs route vs generator route, on subgroup pairs of S4
        let g = construct::make_symmetric(4).unwrap();
        let subs = [
            g.full_subgroup(),
            g.normal_closure(find_perm(&g, &[1, 0, 3, 2])),
            g.cyclic_subgroup(find_perm(&g, &[1, 2, 3, 0])),
        ];
        for a in &subs {
            for b in &subs {
                let pairs = g.subgroup_commutator(a, b);
                // generator route, forced by constructing through it
                let ga = g.generating_set(a);
                let gb = g.generating_set(b);
                let mut sub_gens = Vec::new();
                for &x in &ga {
                    for &y in &gb {
                        sub_gens.push(g.commutator(x, y));
                    }
                }
                let mut conj = ga.clone();
                conj.extend_from_slice(&gb);
                let mut s = g.closure(&sub_gens);
                loop {
                    let mut grew = false;
                    for i in 0..sub_gens.len() {
                        for &c in &conj {
                            let e = g.conjugate(sub_gens[i], c);
                            if !s.contains(e) && !sub_gens.contains(&e) {
                                sub_gens.push(e);
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                    s = g.closure(&sub_gens);
                }
                assert_eq!(pairs, s, "commutator routes disagree");
            }
        }
    }

    #[test]
    fn largest_normal_p_subgroups() {
        let a4 = a4();
        assert_eq!(a4.largest_normal_p_subgroup(2).unwrap().order(), 4);
        assert_eq!(a4.largest_normal_p_subgroup(3).unwrap().order(), 1);
        // p not dividing the order
        assert_eq!(a4.largest_normal_p_subgroup(7).unwrap().order(), 1);
        assert!(a4.largest_normal_p_subgroup(6).is_err());

        let s3 = construct::make_symmetric(3).unwrap();
        assert_eq!(s3.largest_normal_p_subgroup(3).unwrap().order(), 3);
        assert_eq!(s3.largest_normal_p_subgroup(2).unwrap().order(), 1);
    }

    #[test]
    fn fitting_subgroups() {
        let s3 = construct::make_symmetric(3).unwrap();
        let f = s3.fitting_subgroup();
        assert_eq!(f.order(), 3);
        assert!(s3.is_normal(&f));
        assert!(s3.is_nilpotent_subgroup(&f));

        let a4 = a4();
        assert_eq!(a4.fitting_subgroup().order(), 4);

        let c12 = construct::make_cyclic(12).unwrap();
        assert_eq!(c12.fitting_subgroup().order(), 12);
    }

    #[test]
    fn minimal_normal_subgroups_examples() {
        let s3 = construct::make_symmetric(3).unwrap();
        let mins = s3.minimal_normal_subgroups().unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 3);

        let a4 = a4();
        let mins = a4.minimal_normal_subgroups().unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);

        let c6 = construct::make_cyclic(6).unwrap();
        let mut orders: Vec<usize> = c6
            .minimal_normal_subgroups()
            .unwrap()
            .iter()
            .map(|s| s.order())
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);

        let triv = construct::make_cyclic(1).unwrap();
        assert!(triv.minimal_normal_subgroups().is_err());
    }

    #[test]
    fn minimal_normals_are_elementary_abelian_in_soluble_groups() {
        for g in [
            construct::make_symmetric(4).unwrap(),
            construct::make_dihedral(6).unwrap(),
            a4(),
        ] {
            assert!(g.is_soluble());
            for n in g.minimal_normal_subgroups().unwrap() {
                assert!(g.is_abelian_subgroup(&n));
                let orders: Vec<usize> = n
                    .nontrivial_elements()
                    .map(|e| g.element_order(e))
                    .collect();
                let p = orders[0];
                assert!(is_prime(p as u64));
                assert!(orders.iter().all(|&o| o == p));
            }
        }
    }

    #[test]
    fn minimal_normals_match_brute_force_on_small_groups() {
        // oracle: a normal subgroup is minimal iff it properly contains no
        // non-trivial normal subgroup; enumerate normal closures of all
        // elements as candidate normal subgroups (every normal subgroup is a
        // union of such closures, and a minimal one is a single closure).
        for g in [
            construct::make_symmetric(4).unwrap(),
            construct::make_dihedral(10).unwrap(),
            construct::make_cyclic(30).unwrap(),
        ] {
            let mut normals: Vec<SubgroupSet> = Vec::new();
            for e in g.elements().skip(1) {
                let nc = g.normal_closure(e);
                if !normals.contains(&nc) {
                    normals.push(nc);
                }
            }
            let mut expected: Vec<usize> = normals
                .iter()
                .filter(|n| {
                    !normals
                        .iter()
                        .any(|m| m.order() > 1 && m.order() < n.order() && m.is_subset_of(n))
                })
                .map(|n| n.order())
                .collect();
            expected.sort_unstable();
            let mut got: Vec<usize> = g
                .minimal_normal_subgroups()
                .unwrap()
                .iter()
                .map(|n| n.order())
                .collect();
            got.sort_unstable();
            assert_eq!(got, expected);
        }
    }
}
