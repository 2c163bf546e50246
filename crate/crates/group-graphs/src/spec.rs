//! Group description files.
//!
//! A group spec is a TOML document with a top-level `kind` field and
//! kind-specific parameters:
//!
//! ```toml
//! kind = "matrix-semidirect"
//! p = 5
//! dim = 2
//! matrices = [[[2, 0], [0, 3]]]
//! ```
//!
//! Supported kinds: `cyclic` and `dihedral` (`n`), `symmetric` (`n`, at most
//! 5), `permutation` (`degree` and `generators`, each generator a list of
//! 1-based cycles), `matrix-semidirect` (`p`, `dim`, `matrices` as rows of
//! decimal integers, reduced mod p on load), and `direct-product`
//! (`factors`, a list of specs). Identical text always yields an identical
//! group with identical element indexing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{self, BuildError};
use crate::gf::GfMatrix;
use crate::group::FiniteGroup;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("spec parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("spec build error: {0}")]
    Build(#[from] BuildError),
    #[error("direct-product needs at least one factor")]
    EmptyProduct,
}

/// A parsed group description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Permutation {
        degree: usize,
        /// Each generator is a list of cycles; each cycle lists 1-based
        /// points.
        generators: Vec<Vec<Vec<usize>>>,
    },
    MatrixSemidirect {
        p: u64,
        dim: usize,
        /// Each matrix is `dim` rows of `dim` integers.
        matrices: Vec<Vec<Vec<i64>>>,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
}

/// Parses a spec document.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    Ok(toml::from_str(text)?)
}

impl GroupSpec {
    /// Builds the described group. Construction is deterministic.
    pub fn build(&self) -> Result<FiniteGroup, SpecError> {
        match self {
            GroupSpec::Cyclic { n } => Ok(construct::make_cyclic(*n)?),
            GroupSpec::Dihedral { n } => Ok(construct::make_dihedral(*n)?),
            GroupSpec::Symmetric { n } => Ok(construct::make_symmetric(*n)?),
            GroupSpec::Permutation { degree, generators } => {
                let mut one_line = Vec::new();
                for cycles in generators {
                    one_line.push(construct::permutation_from_cycles(*degree, cycles)?);
                }
                Ok(FiniteGroup::from_permutations(*degree, &one_line)
                    .map_err(BuildError::from)?)
            }
            GroupSpec::MatrixSemidirect { p, dim, matrices } => {
                let mut mats = Vec::new();
                for rows in matrices {
                    mats.push(GfMatrix::from_rows(*p, rows).map_err(BuildError::from)?);
                }
                Ok(construct::semidirect_product(*p, *dim, &mats)?)
            }
            GroupSpec::DirectProduct { factors } => {
                let mut built: Option<FiniteGroup> = None;
                if factors.is_empty() {
                    return Err(SpecError::EmptyProduct);
                }
                for f in factors {
                    let g = f.build()?;
                    built = Some(match built {
                        None => g,
                        Some(acc) => construct::direct_product(&acc, &g)?,
                    });
                }
                Ok(built.expect("nonempty"))
            }
        }
    }

    /// A short structural description, used in reports.
    pub fn describe(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("cyclic({n})"),
            GroupSpec::Dihedral { n } => format!("dihedral({n})"),
            GroupSpec::Symmetric { n } => format!("symmetric({n})"),
            GroupSpec::Permutation { degree, generators } => {
                format!("permutation(degree {degree}, {} generators)", generators.len())
            }
            GroupSpec::MatrixSemidirect { p, dim, matrices } => {
                format!("matrix-semidirect(p={p}, dim={dim}, {} matrices)", matrices.len())
            }
            GroupSpec::DirectProduct { factors } => {
                let inner: Vec<String> = factors.iter().map(|f| f.describe()).collect();
                format!("product({})", inner.join(" x "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_spec() {
        let spec = parse_group_spec("kind = \"cyclic\"\nn = 6\n").unwrap();
        assert_eq!(spec, GroupSpec::Cyclic { n: 6 });
        assert_eq!(spec.build().unwrap().order(), 6);
    }

    #[test]
    fn permutation_spec_builds_a4() {
        let text = r#"
kind = "permutation"
degree = 4
generators = [[[1, 2, 3]], [[1, 2], [3, 4]]]
"#;
        let spec = parse_group_spec(text).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn matrix_semidirect_spec_reduces_mod_p() {
        let text = r#"
kind = "matrix-semidirect"
p = 7
dim = 1
matrices = [[[-5]]]
"#;
        // -5 = 2 mod 7, a scalar of order 3: the order-21 group
        let g = parse_group_spec(text).unwrap().build().unwrap();
        assert_eq!(g.order(), 21);
    }

    #[test]
    fn direct_product_spec() {
        let text = r#"
kind = "direct-product"

[[factors]]
kind = "dihedral"
n = 3

[[factors]]
kind = "cyclic"
n = 2
"#;
        let g = parse_group_spec(text).unwrap().build().unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(parse_group_spec("kind = \"nosuch\"").is_err());
        assert!(parse_group_spec("n = 6").is_err());
        assert!(parse_group_spec("kind = \"cyclic\"").is_err());
        // singular matrix is a build error, not a parse error
        let text = r#"
kind = "matrix-semidirect"
p = 5
dim = 2
matrices = [[[1, 2], [2, 4]]]
"#;
        let spec = parse_group_spec(text).unwrap();
        assert!(matches!(spec.build(), Err(SpecError::Build(_))));
    }

    #[test]
    fn identical_text_identical_indexing() {
        let text = r#"
kind = "permutation"
degree = 5
generators = [[[1, 2, 3, 4, 5]], [[1, 2]]]
"#;
        let a = parse_group_spec(text).unwrap().build().unwrap();
        let b = parse_group_spec(text).unwrap().build().unwrap();
        assert_eq!(a.order(), b.order());
        for (x, y) in a.elements().zip(b.elements()) {
            assert_eq!(a.permutation_of(x), b.permutation_of(y));
        }
    }
}
