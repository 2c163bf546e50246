//! Executable theorem suites over a corpus of groups, producing
//! machine-readable pass/fail reports with witnesses.
//!
//! Every suite asserts both directions of every equivalence it covers, so a
//! defect anywhere in the stack surfaces as a failing claim with a concrete
//! witness rather than silent agreement. The element-level [`oracle`] module
//! recomputes adjacency from first principles, independent of the
//! cyclic-subgroup collapse, and anchors the equivalence suites.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use crate::frobenius::{self, FrobeniusStructure};
use crate::graph::{
    self, adjacent, bfs_multi, build_collapsed_graph, component_diameter, connected_components,
    eccentricity, CollapsedGraph, Diameter, Distance, Eccentricity, GraphBuildOptions, GraphKind,
};
use crate::group::{ElementId, FiniteGroup, SubgroupSet};
use crate::spec::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

/// One checked statement. Failing claims always carry a witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// The theorem-level statement this claim instantiates.
    pub anchor: String,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<serde_json::Value>,
}

impl Claim {
    fn pass(id: &str, anchor: &str) -> Self {
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            status: ClaimStatus::Pass,
            witness: None,
            values: None,
        }
    }

    fn pass_with(id: &str, anchor: &str, values: serde_json::Value) -> Self {
        Claim {
            values: Some(values),
            ..Claim::pass(id, anchor)
        }
    }

    fn fail(id: &str, anchor: &str, witness: String, values: Option<serde_json::Value>) -> Self {
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            status: ClaimStatus::Fail,
            witness: Some(witness),
            values,
        }
    }

    fn check(id: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Claim::pass(id, anchor)
        } else {
            Claim::fail(id, anchor, witness(), None)
        }
    }

    fn skip(id: &str, anchor: &str, reason: &str) -> Self {
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            status: ClaimStatus::Skipped,
            witness: None,
            values: Some(json!({ "reason": reason })),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub group: String,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }
}

/// The verification suites exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hierarchy,
    Theorem1,
    FrobeniusBound,
    NormDistance,
    Corollary,
    FrobeniusLemmas,
    CollapseEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Hierarchy,
        Suite::Theorem1,
        Suite::FrobeniusBound,
        Suite::NormDistance,
        Suite::Corollary,
        Suite::FrobeniusLemmas,
        Suite::CollapseEquivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hierarchy => "hierarchy",
            Suite::Theorem1 => "theorem1",
            Suite::FrobeniusBound => "frobenius-bound",
            Suite::NormDistance => "norm-distance",
            Suite::Corollary => "corollary",
            Suite::FrobeniusLemmas => "frobenius-lemmas",
            Suite::CollapseEquivalence => "collapse-equivalence",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Size bounds controlling which checks run exhaustively.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Largest group order for element-level exhaustive oracles.
    pub element_level_max: usize,
    /// Largest group order verified on collapsed graphs at all.
    pub collapsed_max: usize,
    /// Largest group order for the exhaustive Frobenius complement-search
    /// oracle.
    pub frobenius_oracle_max: usize,
    /// Closure budget for explicit complement searches.
    pub complement_budget: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            element_level_max: 100,
            collapsed_max: 20_000,
            frobenius_oracle_max: 500,
            complement_budget: 500_000,
        }
    }
}

/// Corpus tags describing expected structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Soluble,
    FrobeniusExpected,
    DisconnectedExpected,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    #[serde(default)]
    pub tags: Vec<Tag>,
}

#[derive(Debug, Deserialize)]
struct CorpusFile {
    group: Vec<CorpusEntry>,
}

/// Parses a corpus file: a TOML document with repeated `[[group]]` tables,
/// each carrying `name`, `tags`, and an inline `spec`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, toml::de::Error> {
    Ok(toml::from_str::<CorpusFile>(text)?.group)
}

/// The shipped corpus: soluble groups small enough for exhaustive checking,
/// plus the order-12005 disconnected witness.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, spec: GroupSpec, tags: Vec<Tag>| {
        out.push(CorpusEntry { name, spec, tags });
    };
    for n in 2..=50 {
        push(format!("c{n}"), GroupSpec::Cyclic { n }, vec![Tag::Soluble]);
    }
    for n in 2..=25 {
        let mut tags = vec![Tag::Soluble];
        if n >= 3 && n % 2 == 1 {
            tags.push(Tag::FrobeniusExpected);
        }
        push(format!("d{n}"), GroupSpec::Dihedral { n }, tags);
    }
    push(
        "a4-perm".into(),
        GroupSpec::Permutation {
            degree: 4,
            generators: vec![vec![vec![1, 2, 3]], vec![vec![1, 2], vec![3, 4]]],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected, Tag::DisconnectedExpected],
    );
    push("s4".into(), GroupSpec::Symmetric { n: 4 }, vec![Tag::Soluble]);
    push(
        "s3xc2".into(),
        GroupSpec::DirectProduct {
            factors: vec![GroupSpec::Dihedral { n: 3 }, GroupSpec::Cyclic { n: 2 }],
        },
        vec![Tag::Soluble],
    );
    push(
        "c7-rtimes-c3".into(),
        GroupSpec::MatrixSemidirect {
            p: 7,
            dim: 1,
            matrices: vec![vec![vec![2]]],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected],
    );
    push(
        "c5-rtimes-c4".into(),
        GroupSpec::MatrixSemidirect {
            p: 5,
            dim: 1,
            matrices: vec![vec![vec![2]]],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected],
    );
    // two more actions of C3 on C2^2: the faithful one (another copy of the
    // alternating group, through the matrix route) and the trivial one
    push(
        "v4-rtimes-c3".into(),
        GroupSpec::MatrixSemidirect {
            p: 2,
            dim: 2,
            matrices: vec![vec![vec![0, 1], vec![1, 1]]],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected, Tag::DisconnectedExpected],
    );
    push(
        "v4xc3".into(),
        GroupSpec::DirectProduct {
            factors: vec![
                GroupSpec::Cyclic { n: 2 },
                GroupSpec::Cyclic { n: 2 },
                GroupSpec::Cyclic { n: 3 },
            ],
        },
        vec![Tag::Soluble],
    );
    // Frobenius group with generalised quaternion complement
    push(
        "c3sq-rtimes-q8".into(),
        GroupSpec::MatrixSemidirect {
            p: 3,
            dim: 2,
            matrices: vec![
                vec![vec![0, 2], vec![1, 0]],
                vec![vec![1, 1], vec![1, 2]],
            ],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected],
    );
    // order 12005 = 7^4 * 5: a fixed-point-free order-5 matrix on GF(7)^4,
    // kernel prime 7, complement prime 5, and 5 does not divide 6
    push(
        "c7pow4-rtimes-c5".into(),
        GroupSpec::MatrixSemidirect {
            p: 7,
            dim: 4,
            matrices: vec![vec![
                vec![0, 0, 0, -1],
                vec![1, 0, 0, -1],
                vec![0, 1, 0, -1],
                vec![0, 0, 1, -1],
            ]],
        },
        vec![Tag::Soluble, Tag::FrobeniusExpected, Tag::DisconnectedExpected],
    );
    out
}

/// A corpus group with everything the suites share: collapse table, orbits,
/// the normalising and permuting graphs, their diameters, and the Frobenius
/// analysis.
pub struct GroupUnderTest {
    pub name: String,
    pub group: FiniteGroup,
    pub table: CyclicSubgroupTable,
    pub orbits: OrbitDecomposition,
    pub gamma: CollapsedGraph,
    pub psi: CollapsedGraph,
    pub gamma_diameter: Diameter,
    pub psi_diameter: Diameter,
    pub soluble: bool,
    pub frobenius: FrobeniusStructure,
}

impl GroupUnderTest {
    pub fn prepare(name: &str, spec: &GroupSpec) -> Result<Self, String> {
        let group = spec.build().map_err(|e| e.to_string())?;
        Self::from_group(name, group)
    }

    pub fn from_group(name: &str, group: FiniteGroup) -> Result<Self, String> {
        let table = CyclicSubgroupTable::build(&group).map_err(|e| e.to_string())?;
        let orbits = OrbitDecomposition::compute(&group, &table);
        let opts = GraphBuildOptions::default();
        let gamma = build_collapsed_graph(GraphKind::Normalising, &group, &table, &orbits, &opts)
            .map_err(|e| e.to_string())?;
        let psi = build_collapsed_graph(GraphKind::Permuting, &group, &table, &orbits, &opts)
            .map_err(|e| e.to_string())?;
        let gamma_diameter = graph::diameter(&gamma, &orbits);
        let psi_diameter = graph::diameter(&psi, &orbits);
        let soluble = group.is_soluble();
        let frobenius = frobenius::detect_frobenius(&group).map_err(|e| e.to_string())?;
        Ok(GroupUnderTest {
            name: name.to_string(),
            group,
            table,
            orbits,
            gamma,
            psi,
            gamma_diameter,
            psi_diameter,
            soluble,
            frobenius,
        })
    }

    fn report(&self, suite: Suite, claims: Vec<Claim>) -> VerificationReport {
        VerificationReport {
            suite: suite.name().into(),
            group: self.name.clone(),
            claims,
        }
    }

    fn gen_pair(&self, a: u32, b: u32) -> String {
        format!(
            "vertices ({a}, {b}) = cyclic subgroups of elements ({}, {})",
            self.table.canonical_generator(a).0,
            self.table.canonical_generator(b).0
        )
    }
}

/// Edge containments: commuting within normalising within permuting within
/// soluble, and normalising within Engel.
pub fn verify_hierarchy(ctx: &GroupUnderTest) -> VerificationReport {
    const ANCHOR: &str = "graph-hierarchy: K within Gamma within Psi within Sigma, Gamma within E";
    let g = &ctx.group;
    let mut claims = Vec::new();
    let commuting = build_collapsed_graph(
        GraphKind::Commuting,
        g,
        &ctx.table,
        &ctx.orbits,
        &GraphBuildOptions::default(),
    )
    .expect("commuting graph fits the default budget");

    let contained = |small: &CollapsedGraph, big: &CollapsedGraph| -> Option<(u32, u32)> {
        for i in 0..small.vertex_count() as u32 {
            for &j in small.neighbors(i) {
                if i < j && !big.has_edge(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    };
    claims.push(match contained(&commuting, &ctx.gamma) {
        None => Claim::pass_with(
            "commuting-in-normalising",
            ANCHOR,
            json!({"commuting_edges": commuting.edge_count(), "normalising_edges": ctx.gamma.edge_count()}),
        ),
        Some((i, j)) => Claim::fail("commuting-in-normalising", ANCHOR, ctx.gen_pair(i, j), None),
    });
    claims.push(match contained(&ctx.gamma, &ctx.psi) {
        None => Claim::pass_with(
            "normalising-in-permuting",
            ANCHOR,
            json!({"normalising_edges": ctx.gamma.edge_count(), "permuting_edges": ctx.psi.edge_count()}),
        ),
        Some((i, j)) => Claim::fail("normalising-in-permuting", ANCHOR, ctx.gen_pair(i, j), None),
    });
    // the larger relations are checked edge-by-edge against their oracles
    let mut bad_sigma = None;
    let mut bad_engel = None;
    'outer: for i in 0..ctx.psi.vertex_count() as u32 {
        for &j in ctx.psi.neighbors(i) {
            if i < j && !adjacent(GraphKind::Soluble, g, &ctx.table, i, j) {
                bad_sigma = Some((i, j));
                break 'outer;
            }
        }
    }
    'outer: for i in 0..ctx.gamma.vertex_count() as u32 {
        for &j in ctx.gamma.neighbors(i) {
            if i < j && !adjacent(GraphKind::Engel, g, &ctx.table, i, j) {
                bad_engel = Some((i, j));
                break 'outer;
            }
        }
    }
    claims.push(match bad_sigma {
        None => Claim::pass_with(
            "permuting-in-soluble",
            "ito: a permuting pair generates a metacyclic, hence soluble, subgroup",
            json!({"permuting_edges": ctx.psi.edge_count()}),
        ),
        Some((i, j)) => Claim::fail(
            "permuting-in-soluble",
            "ito: a permuting pair generates a metacyclic, hence soluble, subgroup",
            ctx.gen_pair(i, j),
            None,
        ),
    });
    claims.push(match bad_engel {
        None => Claim::pass("normalising-in-engel", ANCHOR),
        Some((i, j)) => Claim::fail("normalising-in-engel", ANCHOR, ctx.gen_pair(i, j), None),
    });
    // strictness is informational: find a permuting edge outside the
    // normalising graph, or establish there is none
    let mut strict_witness = None;
    'outer: for i in 0..ctx.psi.vertex_count() as u32 {
        for &j in ctx.psi.neighbors(i) {
            if i < j && !ctx.gamma.has_edge(i, j) {
                strict_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    claims.push(Claim::pass_with(
        "normalising-permuting-strictness",
        ANCHOR,
        match strict_witness {
            Some((i, j)) => json!({"strict": true, "witness": ctx.gen_pair(i, j)}),
            None => json!({"strict": false}),
        },
    ));
    ctx.report(Suite::Hierarchy, claims)
}

/// Disconnection classification and the diameter bound: a soluble group's
/// normalising graph is disconnected exactly when the group is Frobenius and
/// no complement prime divides `r - 1` for a kernel prime `r`; disconnected
/// components have diameter at most 2 and match the predicted partition;
/// connected graphs have diameter at most 6.
pub fn verify_theorem1(ctx: &GroupUnderTest, bounds: &Bounds) -> VerificationReport {
    const ANCHOR_I: &str = "normalising-disconnection-classification";
    const ANCHOR_II: &str = "normalising-diameter-at-most-6";
    let mut claims = Vec::new();
    if !ctx.soluble {
        claims.push(Claim::skip("soluble-guard", ANCHOR_I, "group is not soluble"));
        return ctx.report(Suite::Theorem1, claims);
    }
    let fs = &ctx.frobenius;
    let criterion = fs
        .is_frobenius
        .then(|| frobenius::disconnection_criterion(fs).expect("frobenius"));
    match ctx.gamma_diameter {
        Diameter::Finite(d) => {
            claims.push(Claim::check(
                "connected-diameter-at-most-6",
                ANCHOR_II,
                d <= 6,
                || format!("diameter {d} exceeds 6"),
            ));
            claims.last_mut().unwrap().values = Some(json!({ "diameter": d }));
            // converse of (i): connected implies not (Frobenius with criterion)
            claims.push(Claim::check(
                "connected-implies-criterion-fails",
                ANCHOR_I,
                criterion != Some(true),
                || "graph is connected but the disconnection criterion holds".into(),
            ));
        }
        Diameter::Disconnected { components } => {
            claims.push(Claim::check(
                "disconnected-implies-frobenius",
                ANCHOR_I,
                fs.is_frobenius,
                || "graph is disconnected but no Frobenius structure was detected".into(),
            ));
            if fs.is_frobenius {
                claims.push(Claim::check(
                    "disconnected-implies-criterion",
                    ANCHOR_I,
                    criterion == Some(true),
                    || {
                        format!(
                            "kernel primes {:?}, complement primes {:?}: some p divides r - 1",
                            fs.kernel_primes, fs.complement_primes
                        )
                    },
                ));
                let kernel_order = fs.kernel.as_ref().map(|k| k.order()).unwrap_or(0);
                claims.push(Claim::check(
                    "component-count-is-1-plus-kernel",
                    ANCHOR_I,
                    components == 1 + kernel_order,
                    || format!("{components} components, kernel order {kernel_order}"),
                ));
                claims.push(match predicted_partition_matches(ctx, bounds) {
                    Ok(()) => Claim::pass("components-match-prediction", ANCHOR_I),
                    Err(w) => Claim::fail("components-match-prediction", ANCHOR_I, w, None),
                });
            }
            let comps = connected_components(&ctx.gamma);
            let max: u32 = comps
                .iter()
                .map(|c| component_diameter(&ctx.gamma, c))
                .max()
                .unwrap_or(0);
            claims.push(Claim::check(
                "component-diameter-at-most-2",
                ANCHOR_I,
                max <= 2,
                || format!("a component has diameter {max}"),
            ));
            claims.last_mut().unwrap().values =
                Some(json!({"components": components, "max_component_diameter": max}));
        }
    }
    ctx.report(Suite::Theorem1, claims)
}

fn predicted_partition_matches(ctx: &GroupUnderTest, bounds: &Bounds) -> Result<(), String> {
    let mut fs_with_complement = FrobeniusStructure {
        is_frobenius: ctx.frobenius.is_frobenius,
        kernel: ctx.frobenius.kernel.clone(),
        kernel_primes: ctx.frobenius.kernel_primes.clone(),
        complement_primes: ctx.frobenius.complement_primes.clone(),
        complement: None,
    };
    let complement =
        frobenius::find_complement(&ctx.group, &fs_with_complement, bounds.complement_budget)
            .map_err(|e| e.to_string())?;
    fs_with_complement.complement = Some(complement);
    let predicted = frobenius::predicted_components(&ctx.group, &fs_with_complement)
        .map_err(|e| e.to_string())?;
    // map each predicted element class onto collapsed vertex sets
    let mut predicted_ids: Vec<Vec<u32>> = predicted
        .iter()
        .map(|part| {
            let mut ids: Vec<u32> = part
                .iter()
                .map(|&e| ctx.table.vertex_of(e).expect("non-identity"))
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    predicted_ids.sort();
    let mut comps = connected_components(&ctx.gamma);
    comps.sort();
    if predicted_ids == comps {
        Ok(())
    } else {
        Err(format!(
            "predicted {} classes, graph has {} components or their contents differ",
            predicted_ids.len(),
            comps.len()
        ))
    }
}

/// For Frobenius groups with connected normalising graph, the diameter is at
/// most 4.
pub fn verify_frobenius_bound(ctx: &GroupUnderTest) -> VerificationReport {
    const ANCHOR: &str = "frobenius-connected-diameter-at-most-4";
    let mut claims = Vec::new();
    if !ctx.frobenius.is_frobenius {
        claims.push(Claim::skip("frobenius-guard", ANCHOR, "group is not Frobenius"));
    } else {
        match ctx.gamma_diameter {
            Diameter::Finite(d) => claims.push({
                let mut c = Claim::check("diameter-at-most-4", ANCHOR, d <= 4, || {
                    format!("diameter {d} exceeds 4")
                });
                c.values = Some(json!({ "diameter": d }));
                c
            }),
            Diameter::Disconnected { .. } => {
                claims.push(Claim::skip("diameter-at-most-4", ANCHOR, "graph is disconnected"));
            }
        }
    }
    ctx.report(Suite::FrobeniusBound, claims)
}

/// In a soluble non-Frobenius group, every non-identity element is within
/// distance 3 of every minimal normal subgroup.
pub fn verify_norm_distance(ctx: &GroupUnderTest, bounds: &Bounds) -> VerificationReport {
    const ANCHOR: &str = "minimal-normal-distance-at-most-3";
    let mut claims = Vec::new();
    if !ctx.soluble {
        claims.push(Claim::skip("soluble-guard", ANCHOR, "group is not soluble"));
        return ctx.report(Suite::NormDistance, claims);
    }
    if ctx.frobenius.is_frobenius {
        claims.push(Claim::skip("frobenius-guard", ANCHOR, "group is Frobenius"));
        return ctx.report(Suite::NormDistance, claims);
    }
    if ctx.group.order() > bounds.collapsed_max {
        claims.push(Claim::skip("size-guard", ANCHOR, "order above corpus bound"));
        return ctx.report(Suite::NormDistance, claims);
    }
    let minimals = ctx
        .group
        .minimal_normal_subgroups()
        .expect("non-trivial group");
    for (idx, n) in minimals.iter().enumerate() {
        let sources: Vec<u32> = n
            .nontrivial_elements()
            .map(|e| ctx.table.vertex_of(e).expect("non-identity"))
            .collect();
        let mut source_set = vec![false; ctx.gamma.vertex_count()];
        let mut dedup = sources.clone();
        dedup.sort_unstable();
        dedup.dedup();
        for &s in &dedup {
            source_set[s as usize] = true;
        }
        let dist = bfs_multi(&ctx.gamma, dedup.iter().copied());
        let mut worst = 0u32;
        let mut witness: Option<String> = None;
        for x in ctx.group.elements().skip(1) {
            if n.contains(x) {
                continue;
            }
            let v = ctx.table.vertex_of(x).expect("non-identity");
            let d = if source_set[v as usize] {
                1
            } else {
                dist.distance(v)
            };
            if d > worst {
                worst = d;
                if d > 3 {
                    witness = Some(format!(
                        "element {} is at distance {} from the minimal normal subgroup of order {}",
                        x.0,
                        if d == graph::UNREACHABLE { u32::MAX } else { d },
                        n.order()
                    ));
                }
            }
        }
        // spot-check the aggregated distances against the public query
        for x in ctx.group.elements().skip(1).step_by(7) {
            let expect = graph::distance_to_subset(&ctx.gamma, &ctx.table, x, n).unwrap();
            let v = ctx.table.vertex_of(x).expect("non-identity");
            let got = if n.contains(x) {
                Distance::Finite(0)
            } else if source_set[v as usize] {
                Distance::Finite(1)
            } else if dist.distance(v) == graph::UNREACHABLE {
                Distance::Unreachable
            } else {
                Distance::Finite(dist.distance(v))
            };
            assert_eq!(expect, got, "distance routes disagree");
        }
        let id = format!("distance-to-minimal-normal-{idx}");
        claims.push(match witness {
            None => Claim::pass_with(
                &id,
                ANCHOR,
                json!({"minimal_normal_order": n.order(), "max_distance": worst}),
            ),
            Some(w) => Claim::fail(&id, ANCHOR, w, None),
        });
    }
    ctx.report(Suite::NormDistance, claims)
}

/// The permuting graph is connected exactly when the normalising graph is,
/// and a connected permuting graph has diameter at most 6 (and at most the
/// normalising diameter, having a superset of its edges).
pub fn verify_corollary(ctx: &GroupUnderTest) -> VerificationReport {
    const ANCHOR: &str = "permuting-connectivity-equivalence";
    let mut claims = Vec::new();
    if !ctx.soluble {
        claims.push(Claim::skip("soluble-guard", ANCHOR, "group is not soluble"));
        return ctx.report(Suite::Corollary, claims);
    }
    let g_conn = matches!(ctx.gamma_diameter, Diameter::Finite(_));
    let p_conn = matches!(ctx.psi_diameter, Diameter::Finite(_));
    claims.push(Claim::check(
        "connectivity-agrees",
        ANCHOR,
        g_conn == p_conn,
        || format!("normalising connected: {g_conn}, permuting connected: {p_conn}"),
    ));
    if let (Diameter::Finite(dg), Diameter::Finite(dp)) = (ctx.gamma_diameter, ctx.psi_diameter) {
        claims.push({
            let mut c = Claim::check(
                "permuting-diameter-at-most-6",
                "permuting-diameter-at-most-6",
                dp <= 6,
                || format!("permuting diameter {dp} exceeds 6"),
            );
            c.values = Some(json!({"permuting_diameter": dp, "normalising_diameter": dg}));
            c
        });
        claims.push(Claim::check(
            "permuting-diameter-at-most-normalising",
            "edge supersets cannot increase distances",
            dp <= dg,
            || format!("permuting diameter {dp} exceeds normalising diameter {dg}"),
        ));
    }
    ctx.report(Suite::Corollary, claims)
}

/// Classical structure of Frobenius groups, checked concretely: regular
/// action, complement order dividing kernel order minus one, nilpotent
/// kernel (abelian for even complements), cyclic or generalised quaternion
/// Sylows, cyclic order-pq subgroups, and the normal prime-order subgroup
/// (odd case) or unique central involution (even case). Also cross-checks
/// kernel-first detection against the exhaustive complement-search oracle.
pub fn verify_frobenius_lemmas(ctx: &GroupUnderTest, bounds: &Bounds) -> VerificationReport {
    const ANCHOR: &str = "frobenius-complement-structure";
    let g = &ctx.group;
    let mut claims = Vec::new();
    if g.order() <= bounds.frobenius_oracle_max {
        let oracle = oracle::exhaustive_frobenius_search(g);
        let agree = match (&oracle, ctx.frobenius.is_frobenius) {
            (Some((_, okernel)), true) => {
                Some(okernel) == ctx.frobenius.kernel.as_ref()
            }
            (None, false) => true,
            _ => false,
        };
        claims.push(Claim::check(
            "detection-matches-oracle",
            "frobenius-detection-oracle-equivalence",
            agree,
            || {
                format!(
                    "kernel-first detection says {}, exhaustive search says {}",
                    ctx.frobenius.is_frobenius,
                    oracle.is_some()
                )
            },
        ));
    } else {
        claims.push(Claim::skip(
            "detection-matches-oracle",
            "frobenius-detection-oracle-equivalence",
            "order above oracle bound",
        ));
    }
    if !ctx.frobenius.is_frobenius {
        claims.push(Claim::skip("frobenius-guard", ANCHOR, "group is not Frobenius"));
        return ctx.report(Suite::FrobeniusLemmas, claims);
    }
    let kernel = ctx.frobenius.kernel.as_ref().expect("frobenius");
    let complement = match frobenius::find_complement(g, &ctx.frobenius, bounds.complement_budget)
    {
        Ok(c) => c,
        Err(e) => {
            claims.push(Claim::fail(
                "complement-search",
                ANCHOR,
                format!("no complement found: {e}"),
                None,
            ));
            return ctx.report(Suite::FrobeniusLemmas, claims);
        }
    };

    // (i) the complement acts regularly: no non-identity complement element
    // centralises a non-identity kernel element
    let mut regular_witness = None;
    'outer: for c in complement.nontrivial_elements() {
        for k in kernel.nontrivial_elements() {
            if g.multiply(c, k) == g.multiply(k, c) {
                regular_witness = Some(format!("[{}, {}] = 1", c.0, k.0));
                break 'outer;
            }
        }
    }
    claims.push(match regular_witness {
        None => Claim::pass("complement-acts-regularly", ANCHOR),
        Some(w) => Claim::fail("complement-acts-regularly", ANCHOR, w, None),
    });

    // (ii)
    claims.push(Claim::check(
        "complement-order-divides-kernel-minus-1",
        ANCHOR,
        (kernel.order() - 1).is_multiple_of(complement.order()),
        || format!("|C| = {} does not divide |K| - 1 = {}", complement.order(), kernel.order() - 1),
    ));

    // (iii)
    claims.push(Claim::check(
        "kernel-nilpotent",
        ANCHOR,
        g.is_nilpotent_subgroup(kernel),
        || "kernel is not nilpotent".into(),
    ));
    if complement.order() % 2 == 0 {
        claims.push(Claim::check(
            "kernel-abelian-for-even-complement",
            ANCHOR,
            g.is_abelian_subgroup(kernel),
            || "even complement but non-abelian kernel".into(),
        ));
    }

    // (iv)
    for p in crate::arith::prime_divisors(complement.order() as u64) {
        match sylow_subgroup(g, &complement, p) {
            Some(sylow) => {
                let cyclic = is_cyclic_subgroup(g, &sylow);
                let ok = if p == 2 {
                    cyclic || is_generalised_quaternion(g, &sylow)
                } else {
                    cyclic
                };
                claims.push(Claim::check(
                    &format!("complement-sylow-{p}-structure"),
                    ANCHOR,
                    ok,
                    || format!("Sylow {p}-subgroup of order {} is neither cyclic nor allowed", sylow.order()),
                ));
            }
            None => claims.push(Claim::fail(
                &format!("complement-sylow-{p}-structure"),
                ANCHOR,
                "Sylow construction failed".into(),
                None,
            )),
        }
    }

    // (v): subgroups of order pq are cyclic, by bounded two-generator search
    if complement.order() <= 200 {
        let mut witness = None;
        let celems: Vec<ElementId> = complement.elements().collect();
        'outer: for (i, &a) in celems.iter().enumerate() {
            for &b in celems.iter().skip(i) {
                let sub = g.closure(&[a, b]);
                let o = sub.order() as u64;
                let f = crate::arith::factorise(o);
                let is_pq = matches!(f.as_slice(), [(_, 1), (_, 1)]) || matches!(f.as_slice(), [(_, 2)]);
                if is_pq && !is_cyclic_subgroup(g, &sub) {
                    witness = Some(format!("subgroup <{}, {}> of order {o} is not cyclic", a.0, b.0));
                    break 'outer;
                }
            }
        }
        claims.push(match witness {
            None => Claim::pass("complement-pq-subgroups-cyclic", ANCHOR),
            Some(w) => Claim::fail("complement-pq-subgroups-cyclic", ANCHOR, w, None),
        });
    }

    // (vi) and the odd-order refinement
    if complement.order() % 2 == 1 {
        let mut witness = None;
        'outer: for s in complement.nontrivial_elements() {
            if !crate::arith::is_prime(g.element_order(s) as u64) {
                continue;
            }
            let sub = g.cyclic_subgroup(s);
            for c in complement.elements() {
                if !sub.contains(g.conjugate(s, c)) {
                    witness = Some(format!("<{}> is not normal in the complement", s.0));
                    break 'outer;
                }
            }
        }
        claims.push(match witness {
            None => Claim::pass("odd-complement-prime-order-subgroups-normal", ANCHOR),
            Some(w) => Claim::fail("odd-complement-prime-order-subgroups-normal", ANCHOR, w, None),
        });
    } else {
        let involutions: Vec<ElementId> = complement
            .nontrivial_elements()
            .filter(|&e| g.element_order(e) == 2)
            .collect();
        let unique = involutions.len() == 1;
        let central = unique
            && complement.elements().all(|c| {
                g.multiply(c, involutions[0]) == g.multiply(involutions[0], c)
            });
        claims.push(Claim::check(
            "even-complement-unique-central-involution",
            ANCHOR,
            unique && central,
            || format!("{} involutions, central: {central}", involutions.len()),
        ));
    }
    ctx.report(Suite::FrobeniusLemmas, claims)
}

/// Collapsed-graph distances agree with element-level BFS for every kind, and
/// eccentricity is constant on conjugation orbits.
pub fn verify_collapse_equivalence(ctx: &GroupUnderTest, bounds: &Bounds) -> VerificationReport {
    const ANCHOR: &str = "collapse-exactness";
    let g = &ctx.group;
    let mut claims = Vec::new();
    if g.order() > bounds.element_level_max {
        claims.push(Claim::skip("size-guard", ANCHOR, "order above element-level bound"));
        return ctx.report(Suite::CollapseEquivalence, claims);
    }
    for kind in GraphKind::ALL {
        let collapsed =
            build_collapsed_graph(kind, g, &ctx.table, &ctx.orbits, &GraphBuildOptions::default())
                .expect("small graph");
        let direct =
            graph::build_collapsed_graph_direct(kind, g, &ctx.table, &GraphBuildOptions::default())
                .expect("small graph");
        let builders_agree = (0..collapsed.vertex_count() as u32)
            .all(|v| collapsed.neighbors(v) == direct.neighbors(v));
        let mut dists: Vec<crate::graph::DistanceResult> = Vec::new();
        for v in 0..collapsed.vertex_count() as u32 {
            dists.push(graph::bfs(&collapsed, v));
        }
        let elems = oracle::element_distance_matrix(kind, g);
        let mut witness = None;
        'outer: for x in 1..g.order() as u32 {
            let vx = ctx.table.vertex_of(ElementId(x)).unwrap();
            for y in 1..g.order() as u32 {
                if x == y {
                    continue;
                }
                let vy = ctx.table.vertex_of(ElementId(y)).unwrap();
                let de = elems[x as usize - 1][y as usize - 1];
                let expected = if vx == vy { 1 } else { dists[vx as usize].distance(vy) };
                if de != expected {
                    witness = Some(format!(
                        "elements ({x}, {y}): element-level {de}, collapsed rule {expected}"
                    ));
                    break 'outer;
                }
            }
        }
        let id = format!("collapse-distances-{}", kind.name());
        claims.push(match (&witness, builders_agree) {
            (None, true) => Claim::pass(&id, ANCHOR),
            (Some(w), _) => Claim::fail(&id, ANCHOR, w.clone(), None),
            (None, false) => Claim::fail(&id, ANCHOR, "builders disagree".into(), None),
        });
        // orbit-eccentricity constancy on this kind
        let mut ecc_witness = None;
        let mut per_orbit: Vec<Option<Eccentricity>> = vec![None; ctx.orbits.orbit_count()];
        for v in 0..collapsed.vertex_count() as u32 {
            let e = eccentricity(&collapsed, v);
            let o = ctx.orbits.orbit_of(v) as usize;
            match per_orbit[o] {
                None => per_orbit[o] = Some(e),
                Some(prev) => {
                    if prev != e {
                        ecc_witness =
                            Some(format!("orbit {o}: eccentricities {prev:?} and {e:?} differ"));
                    }
                }
            }
        }
        let id = format!("orbit-eccentricity-constant-{}", kind.name());
        claims.push(match ecc_witness {
            None => Claim::pass(&id, "conjugation-is-a-graph-automorphism"),
            Some(w) => Claim::fail(&id, "conjugation-is-a-graph-automorphism", w, None),
        });
    }
    ctx.report(Suite::CollapseEquivalence, claims)
}

/// Validates the corpus tags themselves.
pub fn verify_tags(ctx: &GroupUnderTest, tags: &[Tag]) -> VerificationReport {
    let mut claims = Vec::new();
    for tag in tags {
        match tag {
            Tag::Soluble => claims.push(Claim::check(
                "tagged-soluble",
                "corpus-tag",
                ctx.soluble,
                || {
                    let series = ctx.group.derived_series(&ctx.group.full_subgroup());
                    format!(
                        "derived series stabilises at order {}",
                        series.last().unwrap().order()
                    )
                },
            )),
            Tag::FrobeniusExpected => claims.push(Claim::check(
                "tagged-frobenius",
                "corpus-tag",
                ctx.frobenius.is_frobenius,
                || "no Frobenius structure detected".into(),
            )),
            Tag::DisconnectedExpected => {
                let crit = ctx.frobenius.is_frobenius
                    && frobenius::disconnection_criterion(&ctx.frobenius).unwrap_or(false);
                let disconnected = matches!(ctx.gamma_diameter, Diameter::Disconnected { .. });
                claims.push(Claim::check(
                    "tagged-disconnected",
                    "corpus-tag",
                    crit && disconnected,
                    || format!("criterion {crit}, disconnected {disconnected}"),
                ));
            }
        }
    }
    ctx.report_named("corpus-tags", claims)
}

impl GroupUnderTest {
    fn report_named(&self, suite: &str, claims: Vec<Claim>) -> VerificationReport {
        VerificationReport {
            suite: suite.into(),
            group: self.name.clone(),
            claims,
        }
    }
}

pub fn run_suite(ctx: &GroupUnderTest, suite: Suite, bounds: &Bounds) -> VerificationReport {
    match suite {
        Suite::Hierarchy => verify_hierarchy(ctx),
        Suite::Theorem1 => verify_theorem1(ctx, bounds),
        Suite::FrobeniusBound => verify_frobenius_bound(ctx),
        Suite::NormDistance => verify_norm_distance(ctx, bounds),
        Suite::Corollary => verify_corollary(ctx),
        Suite::FrobeniusLemmas => verify_frobenius_lemmas(ctx, bounds),
        Suite::CollapseEquivalence => verify_collapse_equivalence(ctx, bounds),
    }
}

pub struct CorpusRun {
    pub reports: Vec<VerificationReport>,
    pub all_pass: bool,
}

/// Runs the suites over every corpus entry. Build failures are recorded as
/// failing reports; the remaining groups still run. Output order is the
/// corpus order and is deterministic regardless of thread count.
pub fn run_corpus(entries: &[CorpusEntry], suites: &[Suite], bounds: &Bounds) -> CorpusRun {
    let per_group: Vec<Vec<VerificationReport>> = entries
        .par_iter()
        .map(|entry| {
            match GroupUnderTest::prepare(&entry.name, &entry.spec) {
                Err(e) => vec![VerificationReport {
                    suite: "build".into(),
                    group: entry.name.clone(),
                    claims: vec![Claim::fail(
                        "group-builds",
                        "corpus-entry-builds",
                        e,
                        None,
                    )],
                }],
                Ok(ctx) => {
                    let mut reports = vec![verify_tags(&ctx, &entry.tags)];
                    for &s in suites {
                        reports.push(run_suite(&ctx, s, bounds));
                    }
                    reports
                }
            }
        })
        .collect();
    let reports: Vec<VerificationReport> = per_group.into_iter().flatten().collect();
    let all_pass = reports.iter().all(|r| r.all_pass());
    CorpusRun { reports, all_pass }
}

fn sylow_subgroup(g: &FiniteGroup, c: &SubgroupSet, p: u64) -> Option<SubgroupSet> {
    let target = crate::arith::p_part(c.order() as u64, p) as usize;
    if target == 1 {
        return Some(SubgroupSet::trivial(g));
    }
    let p_elems: Vec<ElementId> = c
        .nontrivial_elements()
        .filter(|&e| {
            let mut o = g.element_order(e) as u64;
            while o.is_multiple_of(p) {
                o /= p;
            }
            o == 1
        })
        .collect();
    let mut sylow = g.cyclic_subgroup(*p_elems.first()?);
    while sylow.order() < target {
        // a p-subgroup below the Sylow has a p-element in its normaliser
        // outside itself
        let next = p_elems.iter().find(|&&e| {
            !sylow.contains(e) && sylow.conjugate_by(g, e) == sylow
        })?;
        let mut gens = g.generating_set(&sylow);
        gens.push(*next);
        sylow = g.closure(&gens);
    }
    Some(sylow)
}

fn is_cyclic_subgroup(g: &FiniteGroup, s: &SubgroupSet) -> bool {
    s.elements().any(|e| g.element_order(e) == s.order())
}

/// Non-cyclic 2-groups of order at least 8 with a unique involution are
/// exactly the generalised quaternion groups.
fn is_generalised_quaternion(g: &FiniteGroup, s: &SubgroupSet) -> bool {
    s.order() >= 8
        && !is_cyclic_subgroup(g, s)
        && s.nontrivial_elements()
            .filter(|&e| g.element_order(e) == 2)
            .count()
            == 1
}

/// Element-level reference computations, independent of the cyclic-subgroup
/// collapse: adjacency is evaluated from scratch on element pairs, and the
/// Frobenius oracle searches complements exhaustively.
pub mod oracle {
    use super::*;

    fn cyclic_elems(g: &FiniteGroup, x: ElementId) -> Vec<u32> {
        let mut out = vec![0u32];
        let mut cur = x.0;
        while cur != 0 {
            out.push(cur);
            cur = g.mul_raw(cur, x.0);
        }
        out.sort_unstable();
        out
    }

    /// Adjacency of two distinct non-identity elements, from the definitions.
    pub fn elements_adjacent(kind: GraphKind, g: &FiniteGroup, x: ElementId, y: ElementId) -> bool {
        let a = cyclic_elems(g, x);
        let b = cyclic_elems(g, y);
        match kind {
            GraphKind::Commuting => g.multiply(x, y) == g.multiply(y, x),
            GraphKind::Normalising => {
                b.binary_search(&g.conjugate(y, x).0).is_ok()
                    || a.binary_search(&g.conjugate(x, y).0).is_ok()
            }
            GraphKind::Permuting => {
                let mut ab = Vec::with_capacity(a.len() * b.len());
                let mut ba = Vec::with_capacity(a.len() * b.len());
                for &u in &a {
                    for &v in &b {
                        ab.push(g.mul_raw(u, v));
                        ba.push(g.mul_raw(v, u));
                    }
                }
                ab.sort_unstable();
                ab.dedup();
                ba.sort_unstable();
                ba.dedup();
                ab == ba
            }
            GraphKind::Engel => {
                let sa = SubgroupSet::from_sorted(g, a);
                let sb = SubgroupSet::from_sorted(g, b);
                engel_chain_trivialises(g, &sa, &sb) || engel_chain_trivialises(g, &sb, &sa)
            }
            GraphKind::Soluble => g.is_soluble_subgroup(&g.closure(&[x, y])),
        }
    }

    fn engel_chain_trivialises(g: &FiniteGroup, a: &SubgroupSet, b: &SubgroupSet) -> bool {
        let mut x = b.clone();
        let mut seen: Vec<Vec<u32>> = Vec::new();
        loop {
            if x.is_trivial() {
                return true;
            }
            let key: Vec<u32> = x.elements().map(|e| e.0).collect();
            if seen.contains(&key) {
                return false;
            }
            seen.push(key);
            x = g.subgroup_commutator(&x, a);
        }
    }

    /// All-pairs shortest paths on the element-level graph; vertex `i`
    /// corresponds to element id `i + 1`.
    pub fn element_distance_matrix(kind: GraphKind, g: &FiniteGroup) -> Vec<Vec<u32>> {
        let n = g.order() - 1;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n as u32 {
            for y in (x + 1)..n as u32 {
                if elements_adjacent(kind, g, ElementId(x + 1), ElementId(y + 1)) {
                    adj[x as usize].push(y);
                    adj[y as usize].push(x);
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for s in 0..n as u32 {
            let mut dist = vec![u32::MAX; n];
            dist[s as usize] = 0;
            let mut queue = vec![s];
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in &adj[u as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u as usize] + 1;
                        queue.push(w);
                    }
                }
            }
            out.push(dist);
        }
        out
    }

    /// Exhaustive Frobenius oracle: search all subgroups generated by at most
    /// two elements for a complement `C` with `C meet C^g = 1` off `C`, and
    /// reconstruct the kernel as the elements outside every conjugate of `C`.
    /// Returns the complement and kernel when the group is Frobenius.
    pub fn exhaustive_frobenius_search(
        g: &FiniteGroup,
    ) -> Option<(SubgroupSet, SubgroupSet)> {
        let n = g.order();
        let mut candidates: Vec<SubgroupSet> = Vec::new();
        for a in g.elements().skip(1) {
            let c = g.cyclic_subgroup(a);
            if c.order() > 1 && c.order() < n && !candidates.contains(&c) {
                candidates.push(c);
            }
        }
        let elems: Vec<ElementId> = g.elements().skip(1).collect();
        for (i, &a) in elems.iter().enumerate() {
            for &b in elems.iter().skip(i + 1) {
                let c = g.closure(&[a, b]);
                if c.order() > 1 && c.order() < n && !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
        for c in &candidates {
            let malnormal = g.elements().all(|w| {
                if c.contains(w) {
                    return true;
                }
                let conj = c.conjugate_by(g, w);
                let disjoint = conj.nontrivial_elements().all(|e| !c.contains(e));
                disjoint
            });
            if !malnormal {
                continue;
            }
            // kernel: everything missed by every conjugate of C
            let mut in_conj = vec![false; n];
            for w in g.elements() {
                for e in c.conjugate_by(g, w).nontrivial_elements() {
                    in_conj[e.index()] = true;
                }
            }
            let kernel_elems: Vec<ElementId> = g
                .elements()
                .filter(|e| !in_conj[e.index()])
                .collect();
            if kernel_elems.len() * c.order() != n {
                continue;
            }
            let kernel = g.closure(&kernel_elems);
            if kernel.order() == kernel_elems.len() {
                return Some((c.clone(), kernel));
            }
        }
        None
    }
}
