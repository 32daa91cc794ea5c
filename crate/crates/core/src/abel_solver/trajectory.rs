use std::fmt::Write as _;

/// Sampled solution `x(t)` on `[−a, a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    nodes: Vec<f64>,
    values: Vec<f64>,
    /// Polynomial order used by [`Trajectory::value_at`].
    pub interpolation_order: usize,
}

impl Trajectory {
    /// Panics unless there are at least two strictly increasing nodes.
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Self {
        assert!(nodes.len() >= 2, "a trajectory needs at least two nodes");
        assert_eq!(nodes.len(), values.len());
        assert!(nodes.windows(2).all(|w| w[1] > w[0]), "nodes must be strictly increasing");
        Trajectory { nodes, values, interpolation_order: 3 }
    }

    /// `intervals + 1` equally spaced nodes over `[−a, a]`; the end points are exact.
    pub fn uniform_nodes(half_width: f64, intervals: usize) -> Vec<f64> {
        (0..=intervals)
            .map(
                |i| {
                    if i == intervals {
                        half_width
                    } else {
                        -half_width + 2.0 * half_width * i as f64 / intervals as f64
                    }
                },
            )
            .collect()
    }

    pub fn from_fn(half_width: f64, intervals: usize, f: impl Fn(f64) -> f64) -> Self {
        let nodes = Self::uniform_nodes(half_width, intervals);
        let values = nodes.iter().map(|&t| f(t)).collect();
        Self::new(nodes, values)
    }

    pub fn constant(half_width: f64, intervals: usize, c: f64) -> Self {
        Self::from_fn(half_width, intervals, |_| c)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max node-wise difference; both trajectories must share their grid.
    pub fn sup_distance(&self, other: &Trajectory) -> f64 {
        assert_eq!(self.nodes.len(), other.nodes.len(), "trajectories live on different grids");
        self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Spacing if the grid is uniform (to 1e−9 relative), `None` otherwise.
    pub fn uniform_step(&self) -> Option<f64> {
        let n = self.nodes.len() - 1;
        let h = (self.end() - self.start()) / n as f64;
        let ok =
            self.nodes.iter().enumerate().all(|(i, &t)| (t - (self.start() + h * i as f64)).abs() <= 1e-9 * h.max(1.0));
        ok.then_some(h)
    }

    /// Lagrange interpolation through the `interpolation_order + 1` nearest nodes.
    pub fn value_at(&self, t: f64) -> f64 {
        let n = self.nodes.len();
        let width = (self.interpolation_order + 1).min(n);
        let idx = self.nodes.partition_point(|&x| x < t);
        let lo = idx.saturating_sub(width / 2).min(n - width);
        let pts = lo..lo + width;
        let mut acc = 0.0;
        for i in pts.clone() {
            let mut w = 1.0;
            for j in pts.clone() {
                if i != j {
                    w *= (t - self.nodes[j]) / (self.nodes[i] - self.nodes[j]);
                }
            }
            acc += w * self.values[i];
        }
        acc
    }

    /// CSV with header `t,x` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x\n");
        for (t, x) in self.nodes.iter().zip(&self.values) {
            let _ = writeln!(out, "{t:.16e},{x:.16e}");
        }
        out
    }
}
