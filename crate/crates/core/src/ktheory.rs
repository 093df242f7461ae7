//! K-theory of `C*(E)`: directly from `Δ_E` by Smith normal form, and
//! independently from a truncated presentation of `ι_* - H_*` on `K_0` of the
//! core.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{cokernel_group, smith_normal_form, AbelianGroup, IntMatrix};
use crate::graph::{Graph, VertexId};
use crate::dynamics::range_of_length;
use crate::{Error, Result};

/// Printed with every K-theory report: which of kernel and cokernel is which.
pub const DIRECTION_NOTE: &str = "K0 = coker(Delta_E) and K1 = ker(Delta_E), obtained by composing \
K0 = coker(iota_* - H_*), K1 = ker(iota_* - H_*) with the generator-level isomorphisms \
ker(iota_* - H_*) = ker(Delta_E), coker(iota_* - H_*) = coker(Delta_E). The reverse assignment \
contradicts the one-vertex n-loop graphs (Cuntz algebras), whose K0 is Z/(n-1).";

/// `Δ_E : Z(E^0 ∖ sinks) → Z E^0`, `v ↦ v - Σ_{s(e)=v} r(e)`. Rows are all
/// vertices, columns the non-sinks, both in vertex order.
pub fn delta_matrix(g: &Graph) -> IntMatrix {
    let cols: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !g.is_sink(v)).collect();
    let mut m = IntMatrix::zeros(g.vertex_count(), cols.len());
    for (j, &v) in cols.iter().enumerate() {
        m.add_to(v, j, &BigInt::from(1));
        for &e in g.out_edges(v) {
            m.add_to(g.dst(e), j, &BigInt::from(-1));
        }
    }
    let names = |vs: &mut dyn Iterator<Item = VertexId>| vs.map(|v| g.vertex_name(v).to_string()).collect();
    let rows = names(&mut (0..g.vertex_count()));
    let cols = names(&mut cols.into_iter());
    m.with_labels(rows, cols)
}

/// `(K_0, K_1) = (coker Δ_E, ker Δ_E)`.
pub fn k_groups(g: &Graph) -> (AbelianGroup, AbelianGroup) {
    let d = delta_matrix(g);
    let rank = smith_normal_form(&d).rank();
    (cokernel_group(&d), AbelianGroup::free(d.cols() - rank))
}

/// Generators `v^(k)`, `v ∈ r(E^k)`, `k ≤ N`, with the relations
/// `v^(k) - Σ_{s(e)=v} r(e)^(k+1)` for non-sink `v` and `k < N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Presentation {
    pub level: usize,
    /// `(v, k)` for `v^(k)`, ordered by level, then vertex.
    pub generators: Vec<(VertexId, usize)>,
    /// One row per relation, one column per generator.
    pub relations: IntMatrix,
    /// Generator names, `v^(k)`.
    pub names: Vec<String>,
}

impl K0Presentation {
    pub fn generator_index(&self, v: VertexId, k: usize) -> Option<usize> {
        self.generators.iter().position(|&x| x == (v, k))
    }

    /// Whether `v^(k)` lies in the `K_0(V(F_E))` part: all generators except
    /// the level-0 sinks.
    fn in_domain(&self, g: &Graph, (v, k): (VertexId, usize)) -> bool {
        k > 0 || !g.is_sink(v)
    }

    /// Rank of the presented group, `K_0(F_N)`: generators minus relations
    /// (the relations are unitriangular, so the quotient is free).
    pub fn rank(&self) -> usize {
        self.generators.len() - self.relations.rows()
    }

    /// `#{v ∈ r(E^N) non-sink} + Σ_{k ≤ N} #{sinks in r(E^k)}`.
    pub fn level_rank_by_count(&self, g: &Graph) -> usize {
        self.generators
            .iter()
            .filter(|&&(v, k)| g.is_sink(v) || k == self.level)
            .count()
    }

    /// Relations written as `v^(k) = r(e)^(k+1) + …`.
    pub fn relation_strings(&self) -> Vec<String> {
        (0..self.relations.rows())
            .map(|i| {
                let row = self.relations.row(i);
                let lhs = row.iter().position(|x| *x == BigInt::from(1)).expect("leading generator");
                let rhs: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|&(j, x)| j != lhs && *x != BigInt::from(0))
                    .map(|(j, x)| {
                        let c = -x.clone();
                        if c == BigInt::from(1) {
                            self.names[j].clone()
                        } else {
                            format!("{c}*{}", self.names[j])
                        }
                    })
                    .collect();
                format!("{} = {}", self.names[lhs], rhs.join(" + "))
            })
            .collect()
    }
}

pub fn k0_core_presentation(g: &Graph, level: usize) -> Result<K0Presentation> {
    if level == 0 {
        return Err(Error::Precondition("truncation level must be at least 1".into()));
    }
    let mut generators = Vec::new();
    for k in 0..=level {
        let present = range_of_length(g, k);
        generators.extend((0..g.vertex_count()).filter(|&v| present[v]).map(|v| (v, k)));
    }
    let idx = |v: VertexId, k: usize| generators.iter().position(|&x| x == (v, k)).expect("generator");
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &(v, k) in &generators {
        if k == level || g.is_sink(v) {
            continue;
        }
        let mut row = vec![0i64; generators.len()];
        row[idx(v, k)] += 1;
        for &e in g.out_edges(v) {
            row[idx(g.dst(e), k + 1)] -= 1;
        }
        rows.push(row);
    }
    let names: Vec<String> = generators
        .iter()
        .map(|&(v, k)| format!("{}^({k})", g.vertex_name(v)))
        .collect();
    let relations = IntMatrix::from_rows(&rows, generators.len());
    Ok(K0Presentation {
        level,
        generators,
        relations,
        names,
    })
}

/// `H_*` from the `K_0(V(F_E))` generators (columns) to all generators
/// (rows): `v^(k+1) ↦ v^(k)` and, for non-sink `v`, `v^(0) ↦ Σ_{s(e)=v} r(e)^(0)`.
pub fn hstar_action(g: &Graph, pres: &K0Presentation) -> IntMatrix {
    let domain: Vec<(VertexId, usize)> = pres
        .generators
        .iter()
        .copied()
        .filter(|&x| pres.in_domain(g, x))
        .collect();
    let mut m = IntMatrix::zeros(pres.generators.len(), domain.len());
    let one = BigInt::from(1);
    for (j, &(v, k)) in domain.iter().enumerate() {
        if k > 0 {
            let i = pres.generator_index(v, k - 1).expect("v ∈ r(E^k) ⊂ r(E^(k-1))");
            m.add_to(i, j, &one);
        } else {
            for &e in g.out_edges(v) {
                let i = pres.generator_index(g.dst(e), 0).expect("level 0 holds every vertex");
                m.add_to(i, j, &one);
            }
        }
    }
    let col_names = domain
        .iter()
        .map(|&x| pres.names[pres.generator_index(x.0, x.1).expect("generator")].clone())
        .collect();
    m.with_labels(pres.names.clone(), col_names)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PvResult {
    pub level: usize,
    #[serde(rename = "K0")]
    pub k0: AbelianGroup,
    #[serde(rename = "K1")]
    pub k1: AbelianGroup,
    pub stabilized: bool,
}

/// `(coker, ker)` of `ι_* - H_*` on the presentation truncated at level `N`.
fn pv_groups(g: &Graph, level: usize) -> Result<(AbelianGroup, AbelianGroup)> {
    let pres = k0_core_presentation(g, level)?;
    let h = hstar_action(g, &pres);
    let domain: Vec<usize> = (0..pres.generators.len())
        .filter(|&i| pres.in_domain(g, pres.generators[i]))
        .collect();
    // Columns: the relations, then (ι - H_*) of each domain generator.
    let rows = pres.generators.len();
    let mut columns: Vec<Vec<BigInt>> = (0..pres.relations.rows()).map(|i| pres.relations.row(i).to_vec()).collect();
    for (j, &gi) in domain.iter().enumerate() {
        let mut col: Vec<BigInt> = (0..rows).map(|i| -h.get(i, j).clone()).collect();
        col[gi] += 1;
        columns.push(col);
    }
    let stacked = IntMatrix::from_columns(rows, &columns);
    let coker = cokernel_group(&stacked);
    // The domain modulo its relations is free of rank |D| - #relations and
    // the image has rank (rank stacked - #relations), so the kernel of the
    // induced map is free of rank |D| - rank stacked.
    let rank = smith_normal_form(&stacked).rank();
    let ker = AbelianGroup::free(domain.len() - rank);
    Ok((coker, ker))
}

/// The K-groups from the truncated presentation at level `N ≥ 2`, and whether
/// level `N - 1` gives the same groups.
pub fn pv_truncated_oracle(g: &Graph, level: usize) -> Result<PvResult> {
    if level < 2 {
        return Err(Error::Precondition("truncation level must be at least 2".into()));
    }
    let (k0, k1) = pv_groups(g, level)?;
    let prev = pv_groups(g, level - 1)?;
    Ok(PvResult {
        level,
        stabilized: prev == (k0.clone(), k1.clone()),
        k0,
        k1,
    })
}

/// The truncation level at which the oracle is compared, `|E^0| + 2`.
pub fn pv_oracle_level(g: &Graph) -> usize {
    g.vertex_count() + 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTheoryReport {
    #[serde(rename = "K0")]
    pub k0: AbelianGroup,
    #[serde(rename = "K1")]
    pub k1: AbelianGroup,
    pub delta_matrix: Vec<Vec<i64>>,
    pub delta_rows: Vec<String>,
    pub delta_cols: Vec<String>,
    pub pv_oracle: PvResult,
    pub pv_oracle_agrees: bool,
    pub direction_note: &'static str,
}

pub fn ktheory_report(g: &Graph) -> Result<KTheoryReport> {
    let d = delta_matrix(g);
    let (k0, k1) = k_groups(g);
    let pv = pv_truncated_oracle(g, pv_oracle_level(g))?;
    let agrees = pv.stabilized && pv.k0 == k0 && pv.k1 == k1;
    Ok(KTheoryReport {
        delta_matrix: d
            .to_i64_rows()
            .ok_or_else(|| Error::Domain("entries of Delta_E exceed i64".into()))?,
        delta_rows: d.row_labels().to_vec(),
        delta_cols: d.col_labels().to_vec(),
        k0,
        k1,
        pv_oracle: pv,
        pv_oracle_agrees: agrees,
        direction_note: DIRECTION_NOTE,
    })
}
