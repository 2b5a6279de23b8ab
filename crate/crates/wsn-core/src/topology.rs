//! Seeded generation of node positions, cluster membership, and the
//! coordinator position.
//!
//! Cluster membership is by node-id block: cluster 0 owns the first
//! `nodes_per_cluster[0]` ids, and so on. Under the uniform mode a
//! cluster's members are therefore scattered over the whole field; the
//! gaussian mode instead draws each cluster around its own grid cell, so
//! membership and spatial locality coincide.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::config::{CnPlacement, ConfigError, TopologyMode};
use crate::math;
use crate::model::{ClusterId, NodeId, Position};

/// The slice of the configuration that topology generation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologySpec {
    pub mode: TopologyMode,
    pub field_width: f64,
    pub field_height: f64,
    pub cluster_count: usize,
    pub nodes_per_cluster: Vec<usize>,
    pub cn_position: CnPlacement,
}

/// A generated network layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    /// One position per node, indexed by `NodeId::index()`.
    pub positions: Vec<Position>,
    /// Cluster of each node, same indexing.
    pub cluster_of: Vec<ClusterId>,
    /// Member ids per cluster.
    pub clusters: Vec<BTreeSet<NodeId>>,
    /// Coordinator position.
    pub cn: Position,
}

/// One standard normal pair via the polar Box-Muller transform.
fn standard_normal_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let u = 2.0 * rng.gen::<f64>() - 1.0;
        let v = 2.0 * rng.gen::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let f = math::sqrt(-2.0 * math::ln(s) / s);
            return (u * f, v * f);
        }
    }
}

/// Draw every node position and place the coordinator.
pub fn generate_topology<R: Rng>(
    spec: &TopologySpec,
    rng: &mut R,
) -> Result<Topology, ConfigError> {
    if !(spec.field_width > 0.0 && spec.field_width.is_finite())
        || !(spec.field_height > 0.0 && spec.field_height.is_finite())
    {
        return Err(ConfigError::InvalidField);
    }
    if spec.cluster_count == 0 {
        return Err(ConfigError::NoClusters);
    }
    if spec.nodes_per_cluster.len() != spec.cluster_count {
        return Err(ConfigError::ClusterSizeMismatch {
            clusters: spec.cluster_count,
            entries: spec.nodes_per_cluster.len(),
        });
    }
    if spec.nodes_per_cluster.iter().any(|&n| n == 0) {
        return Err(ConfigError::EmptyCluster);
    }

    let total: usize = spec.nodes_per_cluster.iter().sum();
    let (w, h) = (spec.field_width, spec.field_height);

    // Cluster membership is the same in both modes: consecutive id blocks.
    let mut cluster_of = Vec::with_capacity(total);
    let mut clusters: Vec<BTreeSet<NodeId>> = Vec::with_capacity(spec.cluster_count);
    let mut next_id = 0u32;
    for (c, &n) in spec.nodes_per_cluster.iter().enumerate() {
        let mut members = BTreeSet::new();
        for _ in 0..n {
            cluster_of.push(c);
            members.insert(NodeId(next_id));
            next_id += 1;
        }
        clusters.push(members);
    }

    let positions = match spec.mode {
        TopologyMode::Uniform => (0..total)
            .map(|_| Position::new(rng.gen::<f64>() * w, rng.gen::<f64>() * h))
            .collect(),
        TopologyMode::GaussianClustered => {
            // Cluster centres on a near-square grid of field cells.
            let cols = {
                let mut c = 1usize;
                while c * c < spec.cluster_count {
                    c += 1;
                }
                c
            };
            let rows = spec.cluster_count.div_ceil(cols);
            let cell_w = w / cols as f64;
            let cell_h = h / rows as f64;
            let sigma = 0.12 * cell_w.min(cell_h);
            let mut positions = Vec::with_capacity(total);
            for (c, &n) in spec.nodes_per_cluster.iter().enumerate() {
                let cx = (c % cols) as f64 * cell_w + cell_w / 2.0;
                let cy = (c / cols) as f64 * cell_h + cell_h / 2.0;
                for _ in 0..n {
                    let mut placed = None;
                    // Resample draws that land outside the field; give up
                    // after a bounded number of tries and clamp instead so
                    // generation always terminates.
                    for _ in 0..64 {
                        let (dx, dy) = standard_normal_pair(rng);
                        let p = Position::new(cx + sigma * dx, cy + sigma * dy);
                        if p.x >= 0.0 && p.x <= w && p.y >= 0.0 && p.y <= h {
                            placed = Some(p);
                            break;
                        }
                    }
                    positions.push(placed.unwrap_or(Position::new(
                        cx.clamp(0.0, w),
                        cy.clamp(0.0, h),
                    )));
                }
            }
            positions
        }
    };

    let cn = match spec.cn_position {
        CnPlacement::Custom { x, y } => {
            if !x.is_finite() || !y.is_finite() {
                return Err(ConfigError::InvalidField);
            }
            Position::new(x, y)
        }
        CnPlacement::Centroid => {
            let (mut sx, mut sy) = (0.0, 0.0);
            for p in &positions {
                sx += p.x;
                sy += p.y;
            }
            Position::new(sx / total as f64, sy / total as f64)
        }
    };

    Ok(Topology { positions, cluster_of, clusters, cn })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(mode: TopologyMode, sizes: Vec<usize>) -> TopologySpec {
        TopologySpec {
            mode,
            field_width: 100.0,
            field_height: 100.0,
            cluster_count: sizes.len(),
            nodes_per_cluster: sizes,
            cn_position: CnPlacement::Centroid,
        }
    }

    #[test]
    fn both_modes_stay_inside_the_field() {
        for mode in [TopologyMode::Uniform, TopologyMode::GaussianClustered] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let topo = generate_topology(&spec(mode, vec![10, 10, 10]), &mut rng).unwrap();
            assert_eq!(topo.positions.len(), 30);
            for p in &topo.positions {
                assert!((0.0..=100.0).contains(&p.x) && (0.0..=100.0).contains(&p.y));
            }
        }
    }

    #[test]
    fn membership_is_by_id_block() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let topo = generate_topology(&spec(TopologyMode::Uniform, vec![3, 2]), &mut rng).unwrap();
        assert_eq!(topo.cluster_of, vec![0, 0, 0, 1, 1]);
        let c0: Vec<u32> = topo.clusters[0].iter().map(|n| n.0).collect();
        let c1: Vec<u32> = topo.clusters[1].iter().map(|n| n.0).collect();
        assert_eq!(c0, vec![0, 1, 2]);
        assert_eq!(c1, vec![3, 4]);
    }

    #[test]
    fn same_seed_reproduces_the_layout() {
        let s = spec(TopologyMode::GaussianClustered, vec![8, 8, 8, 8]);
        let a = generate_topology(&s, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = generate_topology(&s, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        let c = generate_topology(&s, &mut ChaCha8Rng::seed_from_u64(10)).unwrap();
        assert_ne!(a.positions, c.positions);
    }

    #[test]
    fn gaussian_clusters_are_spatially_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let topo =
            generate_topology(&spec(TopologyMode::GaussianClustered, vec![12, 12, 12]), &mut rng)
                .unwrap();
        let mut intra = (0.0, 0u32);
        let mut inter = (0.0, 0u32);
        for i in 0..topo.positions.len() {
            for j in (i + 1)..topo.positions.len() {
                let d = topo.positions[i].distance(&topo.positions[j]);
                if topo.cluster_of[i] == topo.cluster_of[j] {
                    intra = (intra.0 + d, intra.1 + 1);
                } else {
                    inter = (inter.0 + d, inter.1 + 1);
                }
            }
        }
        let intra_mean = intra.0 / intra.1 as f64;
        let inter_mean = inter.0 / inter.1 as f64;
        assert!(
            intra_mean < inter_mean / 2.0,
            "expected tight blobs: intra {intra_mean}, inter {inter_mean}"
        );
    }

    #[test]
    fn centroid_cn_is_the_mean_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let topo = generate_topology(&spec(TopologyMode::Uniform, vec![7]), &mut rng).unwrap();
        let sx: f64 = topo.positions.iter().map(|p| p.x).sum();
        let sy: f64 = topo.positions.iter().map(|p| p.y).sum();
        assert!((topo.cn.x - sx / 7.0).abs() < 1e-12);
        assert!((topo.cn.y - sy / 7.0).abs() < 1e-12);
    }

    #[test]
    fn custom_cn_is_honoured() {
        let mut s = spec(TopologyMode::Uniform, vec![4]);
        s.cn_position = CnPlacement::Custom { x: -10.0, y: 50.0 };
        let topo = generate_topology(&s, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(topo.cn, Position::new(-10.0, 50.0));
    }

    #[test]
    fn size_list_must_match_cluster_count() {
        let mut s = spec(TopologyMode::Uniform, vec![4, 4]);
        s.cluster_count = 3;
        let err = generate_topology(&s, &mut ChaCha8Rng::seed_from_u64(2)).unwrap_err();
        assert_eq!(err, ConfigError::ClusterSizeMismatch { clusters: 3, entries: 2 });
    }
}
