//! Node movement between rounds.
//!
//! Movement is advanced once per round for every node, alive or dead, and
//! depends only on the mobility stream of the seeded RNG — never on
//! protocol state — so two schemes run from the same seed see identical
//! position trajectories round for round.

use alloc::vec::Vec;

use rand::Rng;

use crate::config::MobilitySpec;
use crate::model::Position;

/// Random-waypoint state of one node.
#[derive(Debug, Clone)]
struct NodeWaypoint {
    target: Position,
    speed: f64,
    pause_left: u32,
}

/// Per-node movement state for the whole network.
#[derive(Debug, Clone)]
pub struct MobilityModel {
    spec: MobilitySpec,
    field_width: f64,
    field_height: f64,
    per_node: Vec<NodeWaypoint>,
}

fn draw_waypoint<R: Rng>(rng: &mut R, w: f64, h: f64, v_max: f64) -> (Position, f64) {
    let x = rng.gen::<f64>() * w;
    let y = rng.gen::<f64>() * h;
    // gen() is in [0, 1), so the speed lands in (0, v_max].
    let speed = (1.0 - rng.gen::<f64>()) * v_max;
    (Position::new(x, y), speed)
}

impl MobilityModel {
    /// Build the movement state, drawing each node's first waypoint in id
    /// order when the network is mobile.
    pub fn new<R: Rng>(
        spec: MobilitySpec,
        field_width: f64,
        field_height: f64,
        node_count: usize,
        rng: &mut R,
    ) -> Self {
        let per_node = match spec {
            MobilitySpec::Static => Vec::new(),
            MobilitySpec::RandomWaypoint { v_max, .. } => (0..node_count)
                .map(|_| {
                    let (target, speed) = draw_waypoint(rng, field_width, field_height, v_max);
                    NodeWaypoint { target, speed, pause_left: 0 }
                })
                .collect(),
        };
        MobilityModel { spec, field_width, field_height, per_node }
    }

    /// Advance every node by one round. Paused nodes sit still; moving
    /// nodes step `speed` metres toward their target; a node that reaches
    /// its target snaps onto it, starts its pause, and immediately draws
    /// the next waypoint so the draw count per arrival is constant.
    pub fn step<R: Rng>(&mut self, positions: &mut [Position], rng: &mut R) {
        let (v_max, pause) = match self.spec {
            MobilitySpec::Static => return,
            MobilitySpec::RandomWaypoint { v_max, pause } => (v_max, pause),
        };
        assert_eq!(positions.len(), self.per_node.len(), "node count changed");
        for (pos, state) in positions.iter_mut().zip(self.per_node.iter_mut()) {
            if state.pause_left > 0 {
                state.pause_left -= 1;
                continue;
            }
            let d = pos.distance(&state.target);
            if d <= state.speed {
                *pos = state.target;
                state.pause_left = pause;
                let (target, speed) =
                    draw_waypoint(rng, self.field_width, self.field_height, v_max);
                state.target = target;
                state.speed = speed;
            } else {
                let f = state.speed / d;
                *pos = Position::new(
                    pos.x + (state.target.x - pos.x) * f,
                    pos.y + (state.target.y - pos.y) * f,
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn static_network_never_moves_and_never_draws() {
        let mut r = rng(1);
        let mut model = MobilityModel::new(MobilitySpec::Static, 100.0, 100.0, 3, &mut r);
        let before = r.clone();
        let mut positions = vec![
            Position::new(1.0, 2.0),
            Position::new(3.0, 4.0),
            Position::new(5.0, 6.0),
        ];
        let snapshot = positions.clone();
        model.step(&mut positions, &mut r);
        assert_eq!(positions, snapshot);
        assert_eq!(r, before, "static movement must not consume the stream");
    }

    #[test]
    fn waypoint_motion_stays_inside_the_field() {
        let spec = MobilitySpec::RandomWaypoint { v_max: 5.0, pause: 1 };
        let mut r = rng(7);
        let mut model = MobilityModel::new(spec, 50.0, 30.0, 4, &mut r);
        let mut positions = vec![
            Position::new(10.0, 10.0),
            Position::new(40.0, 20.0),
            Position::new(25.0, 15.0),
            Position::new(5.0, 25.0),
        ];
        for _ in 0..500 {
            model.step(&mut positions, &mut r);
            for p in &positions {
                assert!((0.0..=50.0).contains(&p.x) && (0.0..=30.0).contains(&p.y), "{p:?}");
            }
        }
    }

    #[test]
    fn per_round_displacement_never_exceeds_v_max() {
        let spec = MobilitySpec::RandomWaypoint { v_max: 2.5, pause: 0 };
        let mut r = rng(11);
        let mut model = MobilityModel::new(spec, 100.0, 100.0, 2, &mut r);
        let mut positions = vec![Position::new(50.0, 50.0), Position::new(10.0, 90.0)];
        for _ in 0..300 {
            let before = positions.clone();
            model.step(&mut positions, &mut r);
            for (a, b) in before.iter().zip(&positions) {
                assert!(a.distance(b) <= 2.5 + 1e-9);
            }
        }
    }

    #[test]
    fn same_seed_gives_identical_trajectories() {
        let spec = MobilitySpec::RandomWaypoint { v_max: 3.0, pause: 2 };
        let run = |seed| {
            let mut r = rng(seed);
            let mut model = MobilityModel::new(spec, 80.0, 80.0, 3, &mut r);
            let mut positions =
                vec![Position::new(1.0, 1.0), Position::new(40.0, 40.0), Position::new(79.0, 2.0)];
            let mut trace = Vec::new();
            for _ in 0..50 {
                model.step(&mut positions, &mut r);
                trace.push(positions.clone());
            }
            trace
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    #[test]
    fn arrival_snaps_to_target_then_pauses() {
        let mut model = MobilityModel {
            spec: MobilitySpec::RandomWaypoint { v_max: 1.0, pause: 3 },
            field_width: 100.0,
            field_height: 100.0,
            per_node: vec![NodeWaypoint {
                target: Position::new(0.5, 0.0),
                speed: 1.0,
                pause_left: 0,
            }],
        };
        let mut positions = vec![Position::new(0.0, 0.0)];
        let mut r = rng(3);
        model.step(&mut positions, &mut r);
        assert_eq!(positions[0], Position::new(0.5, 0.0));
        for _ in 0..3 {
            let before = positions[0];
            model.step(&mut positions, &mut r);
            assert_eq!(positions[0], before, "node must sit out its pause");
        }
        let before = positions[0];
        model.step(&mut positions, &mut r);
        assert_ne!(positions[0], before, "pause over, node must move again");
    }
}
