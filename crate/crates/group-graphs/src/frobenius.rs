//! Frobenius-structure detection, the disconnection criterion for the
//! normalising graph, and predicted component structure.
//!
//! Detection is kernel-first: a group is Frobenius with kernel K exactly when
//! K = F(G) is proper and non-trivial and every non-identity element of K has
//! its centralizer inside K. This avoids any complement search for the
//! criterion, since the complement primes are the primes of `|G| / |K|`. An
//! explicit complement is only materialised for component prediction, by a
//! bounded search over subgroups generated by at most two elements outside
//! the kernel.

use thiserror::Error;

use crate::arith::prime_divisors;
use crate::group::{ElementId, FiniteGroup, SubgroupSet};

#[derive(Debug, Error)]
pub enum FrobeniusError {
    #[error("operation requires a non-trivial group")]
    TrivialGroup,
    #[error("group is not Frobenius")]
    NotFrobenius,
    #[error("no Frobenius complement found within the search budget")]
    ComplementSearchExhausted,
}

/// Detected kernel/complement data for a Frobenius group.
#[derive(Debug)]
pub struct FrobeniusStructure {
    pub is_frobenius: bool,
    /// The kernel, when detected: always the Fitting subgroup.
    pub kernel: Option<SubgroupSet>,
    /// Primes dividing the kernel order.
    pub kernel_primes: Vec<u64>,
    /// Primes dividing `|G| / |kernel|`; no explicit complement is needed to
    /// know them.
    pub complement_primes: Vec<u64>,
    /// An explicit complement, when one has been searched for and found.
    pub complement: Option<SubgroupSet>,
}

/// Kernel-first Frobenius detection.
///
/// For Frobenius groups the kernel equals the Fitting subgroup, so it
/// suffices to test the centralizer condition on F(G). Centralizers are
/// conjugation-equivariant, so one representative per conjugacy class of
/// kernel elements is tested.
pub fn detect_frobenius(g: &FiniteGroup) -> Result<FrobeniusStructure, FrobeniusError> {
    if g.order() < 2 {
        return Err(FrobeniusError::TrivialGroup);
    }
    let kernel = g.fitting_subgroup();
    let proper = kernel.order() > 1 && kernel.order() < g.order();
    let mut is_frobenius = proper;
    if proper {
        let mut tested = vec![false; g.order()];
        'outer: for e in kernel.nontrivial_elements() {
            if tested[e.index()] {
                continue;
            }
            // mark the conjugacy class of e; class representatives suffice
            let mut orbit = vec![e.0];
            tested[e.index()] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &gen in g.generators() {
                    let c = g.conjugate(ElementId(x), gen).0;
                    if !tested[c as usize] {
                        tested[c as usize] = true;
                        orbit.push(c);
                    }
                }
            }
            for cand in g.elements() {
                if !kernel.contains(cand)
                    && g.multiply(cand, e) == g.multiply(e, cand)
                {
                    is_frobenius = false;
                    break 'outer;
                }
            }
        }
    }
    if !is_frobenius {
        return Ok(FrobeniusStructure {
            is_frobenius: false,
            kernel: None,
            kernel_primes: Vec::new(),
            complement_primes: Vec::new(),
            complement: None,
        });
    }
    let kernel_primes = prime_divisors(kernel.order() as u64);
    let complement_primes = prime_divisors((g.order() / kernel.order()) as u64);
    Ok(FrobeniusStructure {
        is_frobenius: true,
        kernel: Some(kernel),
        kernel_primes,
        complement_primes,
        complement: None,
    })
}

/// The disconnection criterion: the normalising graph of a Frobenius group
/// is disconnected exactly when no complement prime divides `r - 1` for any
/// kernel prime `r`.
pub fn disconnection_criterion(fs: &FrobeniusStructure) -> Result<bool, FrobeniusError> {
    if !fs.is_frobenius {
        return Err(FrobeniusError::NotFrobenius);
    }
    Ok(fs
        .complement_primes
        .iter()
        .all(|&p| fs.kernel_primes.iter().all(|&r| (r - 1) % p != 0)))
}

/// Finds an explicit complement by bounded search over subgroups generated by
/// one or two elements outside the kernel, in ascending element order. The
/// budget caps the number of closures computed; exhausting it is an error,
/// never a wrong answer.
pub fn find_complement(
    g: &FiniteGroup,
    fs: &FrobeniusStructure,
    budget: usize,
) -> Result<SubgroupSet, FrobeniusError> {
    let kernel = fs.kernel.as_ref().ok_or(FrobeniusError::NotFrobenius)?;
    let m = g.order() / kernel.order();
    let mut closures = 0usize;
    let outside: Vec<ElementId> = g
        .elements()
        .filter(|&e| !kernel.contains(e) && m.is_multiple_of(g.element_order(e)))
        .collect();
    for (i, &a) in outside.iter().enumerate() {
        closures += 1;
        if closures > budget {
            return Err(FrobeniusError::ComplementSearchExhausted);
        }
        let c = g.cyclic_subgroup(a);
        if c.order() == m && is_complement(g, kernel, &c) {
            return Ok(c);
        }
        if c.order() == m {
            continue;
        }
        for &b in outside.iter().skip(i + 1) {
            closures += 1;
            if closures > budget {
                return Err(FrobeniusError::ComplementSearchExhausted);
            }
            let cand = g.closure(&[a, b]);
            if cand.order() == m && is_complement(g, kernel, &cand) {
                return Ok(cand);
            }
        }
    }
    Err(FrobeniusError::ComplementSearchExhausted)
}

fn is_complement(g: &FiniteGroup, kernel: &SubgroupSet, c: &SubgroupSet) -> bool {
    // right order, meets the kernel trivially
    c.order() * kernel.order() == g.order()
        && c.nontrivial_elements().all(|e| !kernel.contains(e))
}

/// The predicted partition of the non-identity elements when the graph is
/// disconnected: the kernel's non-identity elements, plus one class per
/// kernel-conjugate of the complement.
pub fn predicted_components(
    g: &FiniteGroup,
    fs: &FrobeniusStructure,
) -> Result<Vec<Vec<ElementId>>, FrobeniusError> {
    if !disconnection_criterion(fs)? {
        return Err(FrobeniusError::NotFrobenius);
    }
    let kernel = fs.kernel.as_ref().ok_or(FrobeniusError::NotFrobenius)?;
    let complement = fs
        .complement
        .as_ref()
        .ok_or(FrobeniusError::ComplementSearchExhausted)?;
    let mut parts: Vec<Vec<ElementId>> =
        vec![kernel.nontrivial_elements().collect()];
    let mut seen: Vec<SubgroupSet> = Vec::new();
    for k in kernel.elements() {
        let conj = complement.conjugate_by(g, k);
        if !seen.contains(&conj) {
            parts.push(conj.nontrivial_elements().collect());
            seen.push(conj);
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::gf::GfMatrix;

    fn a4() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    #[test]
    fn s3_is_frobenius() {
        let g = construct::make_symmetric(3).unwrap();
        let fs = detect_frobenius(&g).unwrap();
        assert!(fs.is_frobenius);
        assert_eq!(fs.kernel.as_ref().unwrap().order(), 3);
        assert_eq!(fs.kernel_primes, vec![3]);
        assert_eq!(fs.complement_primes, vec![2]);
        // 2 divides 3 - 1: connected
        assert!(!disconnection_criterion(&fs).unwrap());
    }

    #[test]
    fn a4_is_frobenius_and_disconnected() {
        let g = a4();
        let fs = detect_frobenius(&g).unwrap();
        assert!(fs.is_frobenius);
        assert_eq!(fs.kernel.as_ref().unwrap().order(), 4);
        assert_eq!(fs.complement_primes, vec![3]);
        // 3 does not divide 2 - 1 = 1: disconnected
        assert!(disconnection_criterion(&fs).unwrap());
    }

    #[test]
    fn order_21_group() {
        let m = GfMatrix::from_rows(7, &[vec![2]]).unwrap();
        let g = construct::semidirect_product(7, 1, &[m]).unwrap();
        let fs = detect_frobenius(&g).unwrap();
        assert!(fs.is_frobenius);
        assert_eq!(fs.kernel_primes, vec![7]);
        assert_eq!(fs.complement_primes, vec![3]);
        // 3 divides 7 - 1 = 6: connected
        assert!(!disconnection_criterion(&fs).unwrap());
    }

    #[test]
    fn non_frobenius_groups() {
        for g in [
            construct::make_cyclic(12).unwrap(),
            construct::make_dihedral(4).unwrap(),
            construct::make_symmetric(4).unwrap(),
            construct::direct_product(
                &construct::make_dihedral(3).unwrap(),
                &construct::make_cyclic(2).unwrap(),
            )
            .unwrap(),
        ] {
            let fs = detect_frobenius(&g).unwrap();
            assert!(!fs.is_frobenius, "order {}", g.order());
            assert!(disconnection_criterion(&fs).is_err());
        }
        assert!(detect_frobenius(&construct::make_cyclic(1).unwrap()).is_err());
    }

    #[test]
    fn complement_search() {
        let g = construct::make_symmetric(3).unwrap();
        let mut fs = detect_frobenius(&g).unwrap();
        let c = find_complement(&g, &fs, 10_000).unwrap();
        assert_eq!(c.order(), 2);
        fs.complement = Some(c);

        let a4 = a4();
        let fs4 = detect_frobenius(&a4).unwrap();
        let c4 = find_complement(&a4, &fs4, 10_000).unwrap();
        assert_eq!(c4.order(), 3);
    }

    #[test]
    fn predicted_components_a4() {
        let g = a4();
        let mut fs = detect_frobenius(&g).unwrap();
        fs.complement = Some(find_complement(&g, &fs, 10_000).unwrap());
        let parts = predicted_components(&g, &fs).unwrap();
        // 1 kernel class + 4 complement conjugates
        assert_eq!(parts.len(), 5);
        assert_eq!(parts[0].len(), 3);
        for p in &parts[1..] {
            assert_eq!(p.len(), 2);
        }
        // pairwise disjoint, covering all non-identity elements
        let mut seen = vec![false; g.order()];
        let mut count = 0;
        for part in &parts {
            for &e in part {
                assert!(!seen[e.index()]);
                seen[e.index()] = true;
                count += 1;
            }
        }
        assert_eq!(count, g.order() - 1);
    }

    #[test]
    fn predicted_components_guard() {
        // S3 fails the criterion, so prediction is refused
        let g = construct::make_symmetric(3).unwrap();
        let mut fs = detect_frobenius(&g).unwrap();
        fs.complement = Some(find_complement(&g, &fs, 10_000).unwrap());
        assert!(predicted_components(&g, &fs).is_err());
    }
}
