//! Dense solvers behind the quadrature engine.
//!
//! Three pieces, all deterministic and allocation-light:
//!
//! * [`solve_nnls`] — Lawson–Hanson active-set nonnegative least squares
//!   on the normal equations, with an incrementally grown Cholesky
//!   factor of the passive-set Gram block.
//! * [`solve_box_ridge`] — Tikhonov-regularized least squares under box
//!   constraints, primal active set on the bounds.
//! * [`solve_miqp_bnb`] — best-first branch and bound for the
//!   mixed-integer step subproblem, using the box-ridge solver for node
//!   relaxations and most-fractional branching.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::{dot, norm_sq, Cholesky, Mat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptimError {
    /// Active-set cycling guard tripped; the input is ill-posed.
    IterationLimit,
}

impl core::fmt::Display for OptimError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OptimError::IterationLimit => write!(f, "active-set iteration limit exceeded"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OptimError {}

#[derive(Debug, Clone)]
pub struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual_sq: f64,
    pub iterations: usize,
}

/// Min ‖Ax − b‖₂ subject to x ≥ 0.
///
/// At the optimum the KKT conditions hold: components of `Aᵀ(Ax − b)`
/// vanish on the passive set and are nonnegative where `x_j = 0`.
pub fn solve_nnls(a: &Mat, b: &[f64]) -> Result<NnlsSolution, OptimError> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m);
    let gram = a.gram();
    let atb = a.t_matvec(b);
    let scale = atb.iter().fold(1.0f64, |s, &v| s.max(fmath::abs(v)));
    let tol = 1e-11 * scale;

    let mut x = vec![0.0; n];
    let mut passive: Vec<usize> = Vec::new();
    let mut in_passive = vec![false; n];
    let mut chol = GrowingCholesky::new(n);
    let mut iterations = 0usize;
    let max_outer = 10 * n + 10;

    'outer: loop {
        iterations += 1;
        if iterations > max_outer {
            return Err(OptimError::IterationLimit);
        }

        // Dual vector w = Aᵀ(b − Ax), using the sparse passive support.
        let mut w = atb.clone();
        for &j in &passive {
            let xj = x[j];
            if xj != 0.0 {
                for (wi, gi) in w.iter_mut().zip(gram.row(j)) {
                    *wi -= xj * gi;
                }
            }
        }

        // Most positive dual among candidates; numerically dependent
        // columns get masked and the next best is taken.
        let mut masked = vec![false; n];
        let j = loop {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..n {
                if !in_passive[j] && !masked[j] && w[j] > tol {
                    if best.map_or(true, |(_, bw)| w[j] > bw) {
                        best = Some((j, w[j]));
                    }
                }
            }
            match best {
                None => break 'outer,
                Some((j, _)) => {
                    if chol.try_append(&gram, &passive, j) {
                        break j;
                    }
                    masked[j] = true;
                }
            }
        };
        passive.push(j);
        in_passive[j] = true;

        // Inner feasibility loop.
        loop {
            let rhs: Vec<f64> = passive.iter().map(|&p| atb[p]).collect();
            let z = chol.solve(&rhs);
            if z.iter().all(|&v| v > 0.0) {
                for (idx, &p) in passive.iter().enumerate() {
                    x[p] = z[idx];
                }
                break;
            }
            // Step toward z until the first coordinate hits zero.
            let mut alpha = 1.0f64;
            for (idx, &p) in passive.iter().enumerate() {
                if z[idx] <= 0.0 {
                    let t = x[p] / (x[p] - z[idx]);
                    alpha = alpha.min(t);
                }
            }
            for (idx, &p) in passive.iter().enumerate() {
                x[p] += alpha * (z[idx] - x[p]);
            }
            // Drop everything pinned at (or numerically through) zero.
            let mut removed = false;
            let mut keep = Vec::with_capacity(passive.len());
            for (idx, &p) in passive.iter().enumerate() {
                if z[idx] <= 0.0 && x[p] <= 1e-14 * scale {
                    x[p] = 0.0;
                    in_passive[p] = false;
                    removed = true;
                } else {
                    keep.push(p);
                }
            }
            if !removed {
                // Round-off left nothing at zero; pin the smallest.
                let (&pmin, _) = passive
                    .iter()
                    .zip(&z)
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .expect("nonempty passive set");
                x[pmin] = 0.0;
                in_passive[pmin] = false;
                keep.retain(|&p| p != pmin);
                let kept = keep.clone();
                passive = kept;
            } else {
                passive = keep;
            }
            chol.refactor(&gram, &passive);
            iterations += 1;
            if iterations > max_outer {
                return Err(OptimError::IterationLimit);
            }
        }
    }

    // Residual evaluated in the original space for accuracy.
    let ax = a.matvec(&x);
    let residual_sq = ax
        .iter()
        .zip(b)
        .map(|(axi, bi)| (axi - bi) * (axi - bi))
        .sum();
    Ok(NnlsSolution { x, residual_sq, iterations })
}

/// Cholesky factor of a Gram submatrix that grows one index at a time.
struct GrowingCholesky {
    cap: usize,
    k: usize,
    l: Vec<f64>,
}

impl GrowingCholesky {
    fn new(cap: usize) -> Self {
        GrowingCholesky { cap, k: 0, l: vec![0.0; cap * cap] }
    }

    /// Appends column `j` of `gram` (restricted to `passive ∪ {j}`).
    /// Returns false if the extended block is not numerically positive
    /// definite.
    fn try_append(&mut self, gram: &Mat, passive: &[usize], j: usize) -> bool {
        let k = self.k;
        debug_assert_eq!(k, passive.len());
        let g_jj = gram[(j, j)];
        // Forward-substitute L y = g_{P,j}.
        let mut y = vec![0.0; k];
        for i in 0..k {
            let mut s = gram[(passive[i], j)];
            for t in 0..i {
                s -= self.l[i * self.cap + t] * y[t];
            }
            y[i] = s / self.l[i * self.cap + i];
        }
        let d = g_jj - norm_sq(&y);
        if d <= 1e-12 * g_jj.max(1e-300) {
            return false;
        }
        for (t, &yt) in y.iter().enumerate() {
            self.l[k * self.cap + t] = yt;
        }
        self.l[k * self.cap + k] = fmath::sqrt(d);
        self.k = k + 1;
        true
    }

    fn refactor(&mut self, gram: &Mat, passive: &[usize]) {
        self.k = 0;
        for i in 0..passive.len() {
            let ok = self.try_append(gram, &passive[..i], passive[i]);
            debug_assert!(ok, "refactor of a previously PD block failed");
        }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let k = self.k;
        debug_assert_eq!(rhs.len(), k);
        let mut y = rhs.to_vec();
        for i in 0..k {
            for t in 0..i {
                y[i] -= self.l[i * self.cap + t] * y[t];
            }
            y[i] /= self.l[i * self.cap + i];
        }
        for i in (0..k).rev() {
            for t in i + 1..k {
                y[i] -= self.l[t * self.cap + i] * y[t];
            }
            y[i] /= self.l[i * self.cap + i];
        }
        y
    }
}

/// Min ‖JΔ + r‖₂² + λ‖Δ‖₂² subject to lower ≤ Δ ≤ upper.
///
/// Primal active set on the box: repeatedly solve the free subsystem of
/// the normal equations `(JᵀJ + λI)Δ = −Jᵀr`, walk to the first blocking
/// bound, and release bounds whose multiplier has the wrong sign. With
/// λ = 0 and a singular `JᵀJ` the solve falls back to the small-ridge
/// limit of the pseudo-inverse.
pub fn solve_box_ridge(
    jac: &Mat,
    r: &[f64],
    lambda: f64,
    lower: &[f64],
    upper: &[f64],
) -> Vec<f64> {
    let d = jac.cols();
    assert_eq!(jac.rows(), r.len());
    assert_eq!(lower.len(), d);
    assert_eq!(upper.len(), d);
    debug_assert!(lower.iter().zip(upper).all(|(&l, &u)| l <= 0.0 && u >= 0.0));

    let mut h = jac.gram();
    for i in 0..d {
        h[(i, i)] += lambda;
    }
    let g0 = jac.t_matvec(r);
    let h_scale = (0..d).map(|i| h[(i, i)]).fold(0.0f64, f64::max).max(1e-300);
    let mul_tol = 1e-12 * h_scale.max(g0.iter().fold(0.0f64, |s, &v| s.max(fmath::abs(v))));

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Free,
        AtLower,
        AtUpper,
    }
    let mut state = vec![State::Free; d];
    let mut delta = vec![0.0; d];

    for _ in 0..(8 * (d + 1)) {
        let free: Vec<usize> = (0..d).filter(|&i| state[i] == State::Free).collect();
        let mut cand = delta.clone();
        if !free.is_empty() {
            // rhs_F = −(g0_F + H_FA Δ_A)
            let mut rhs = vec![0.0; free.len()];
            for (fi, &i) in free.iter().enumerate() {
                let mut s = -g0[i];
                for j in 0..d {
                    if state[j] != State::Free {
                        s -= h[(i, j)] * delta[j];
                    }
                }
                rhs[fi] = s;
            }
            let mut hff = Mat::zeros(free.len(), free.len());
            for (fi, &i) in free.iter().enumerate() {
                for (fj, &j) in free.iter().enumerate() {
                    hff[(fi, fj)] = h[(i, j)];
                }
            }
            let sol = match Cholesky::factor(&hff) {
                Some(c) => c.solve(&rhs),
                None => {
                    // Singular with λ = 0: tiny-Tikhonov limit of the
                    // pseudo-inverse direction.
                    let jitter = 1e-12 * h_scale;
                    for fi in 0..free.len() {
                        hff[(fi, fi)] += jitter;
                    }
                    Cholesky::factor(&hff)
                        .expect("jittered normal matrix is PD")
                        .solve(&rhs)
                }
            };
            for (fi, &i) in free.iter().enumerate() {
                cand[i] = sol[fi];
            }
        }

        // Walk from delta toward cand, stopping at the first bound.
        let mut theta = 1.0f64;
        let mut blocker: Option<(usize, State)> = None;
        for &i in &free {
            let dir = cand[i] - delta[i];
            if dir < 0.0 && cand[i] < lower[i] {
                let t = (lower[i] - delta[i]) / dir;
                if t < theta {
                    theta = t;
                    blocker = Some((i, State::AtLower));
                }
            } else if dir > 0.0 && cand[i] > upper[i] {
                let t = (upper[i] - delta[i]) / dir;
                if t < theta {
                    theta = t;
                    blocker = Some((i, State::AtUpper));
                }
            }
        }

        if let Some((bi, bstate)) = blocker {
            for &i in &free {
                delta[i] += theta * (cand[i] - delta[i]);
            }
            delta[bi] = match bstate {
                State::AtLower => lower[bi],
                State::AtUpper => upper[bi],
                State::Free => unreachable!(),
            };
            state[bi] = bstate;
            continue;
        }
        delta = cand;

        // Multiplier check: gradient/2 = HΔ + g0.
        let mut grad = g0.clone();
        for i in 0..d {
            grad[i] += dot(h.row(i), &delta);
        }
        let mut worst: Option<(usize, f64)> = None;
        for i in 0..d {
            let violation = match state[i] {
                State::AtLower => -grad[i], // needs grad ≥ 0
                State::AtUpper => grad[i],  // needs grad ≤ 0
                State::Free => continue,
            };
            if violation > mul_tol && worst.map_or(true, |(_, wv)| violation > wv) {
                worst = Some((i, violation));
            }
        }
        match worst {
            Some((i, _)) => state[i] = State::Free,
            None => return delta,
        }
    }
    delta
}

/// One Gauss–Newton step subproblem: minimize
/// `‖J Δ + r‖² + λ‖Δ‖²` over the box with integrality on the listed
/// dimensions.
#[derive(Debug, Clone)]
pub struct MiqpSubproblem {
    pub jac: Mat,
    pub residual: Vec<f64>,
    pub lambda: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub integer_dims: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiqpStatus {
    Optimal,
    NodeLimit,
}

#[derive(Debug, Clone)]
pub struct MiqpSolution {
    pub delta: Vec<f64>,
    pub objective: f64,
    pub node_count: usize,
    pub status: MiqpStatus,
}

impl MiqpSubproblem {
    pub fn objective(&self, delta: &[f64]) -> f64 {
        let mut fit = 0.0;
        for (row, &ri) in (0..self.jac.rows()).map(|i| self.jac.row(i)).zip(&self.residual) {
            let v = dot(row, delta) + ri;
            fit += v * v;
        }
        fit + self.lambda * norm_sq(delta)
    }
}

const INT_TOL: f64 = 1e-9;

/// Best-first branch and bound. Node relaxations come from
/// [`solve_box_ridge`]; branching splits the most fractional integer
/// coordinate into floor/ceil child boxes; nodes are pruned against the
/// incumbent. With status [`MiqpStatus::Optimal`] the returned solution
/// is globally optimal.
pub fn solve_miqp_bnb(sub: &MiqpSubproblem, node_limit: usize) -> MiqpSolution {
    let d = sub.jac.cols();
    assert!(sub.integer_dims.len() <= 16, "too many integer dimensions");
    debug_assert!(sub
        .integer_dims
        .iter()
        .all(|&i| fmath::fract(sub.lower[i]) == 0.0 && fmath::fract(sub.upper[i]) == 0.0));

    let relax_root = solve_box_ridge(&sub.jac, &sub.residual, sub.lambda, &sub.lower, &sub.upper);
    let root_bound = sub.objective(&relax_root);

    // Zero step is always feasible; the rounded relaxation usually beats it.
    let mut best_delta = vec![0.0; d];
    let mut best_obj = sub.objective(&best_delta);
    if let Some((delta, obj)) = round_and_polish(sub, &relax_root) {
        if obj < best_obj {
            best_delta = delta;
            best_obj = obj;
        }
    }

    struct Node {
        bound: f64,
        seq: u64,
        lower: Vec<f64>,
        upper: Vec<f64>,
        relax: Vec<f64>,
    }
    impl PartialEq for Node {
        fn eq(&self, other: &Self) -> bool {
            self.bound == other.bound && self.seq == other.seq
        }
    }
    impl Eq for Node {}
    impl PartialOrd for Node {
        fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Node {
        fn cmp(&self, other: &Self) -> core::cmp::Ordering {
            // Min-heap by bound (ties by insertion order) via reversal.
            other
                .bound
                .total_cmp(&self.bound)
                .then_with(|| other.seq.cmp(&self.seq))
        }
    }

    let mut heap = alloc::collections::BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Node {
        bound: root_bound,
        seq,
        lower: sub.lower.clone(),
        upper: sub.upper.clone(),
        relax: relax_root,
    });

    let mut node_count = 1usize;
    let mut status = MiqpStatus::Optimal;

    while let Some(node) = heap.pop() {
        if node.bound >= best_obj - 1e-12 {
            break; // best-first: nothing left can improve
        }
        let frac_dim = most_fractional(&node.relax, &sub.integer_dims);
        match frac_dim {
            None => {
                // Integral relaxation: feasible and equal to its bound.
                if let Some((delta, obj)) = round_and_polish(sub, &node.relax) {
                    if obj < best_obj {
                        best_obj = obj;
                        best_delta = delta;
                    }
                }
            }
            Some(j) => {
                let split = fmath::floor(node.relax[j]);
                for (child_lo, child_hi) in [
                    (node.lower[j], split),
                    (split + 1.0, node.upper[j]),
                ] {
                    if child_lo > child_hi {
                        continue;
                    }
                    if node_count >= node_limit {
                        status = MiqpStatus::NodeLimit;
                        continue;
                    }
                    let mut lower = node.lower.clone();
                    let mut upper = node.upper.clone();
                    lower[j] = child_lo;
                    upper[j] = child_hi;
                    let relax = solve_box_ridge_general(sub, &lower, &upper);
                    let bound = sub.objective(&relax);
                    node_count += 1;
                    if bound < best_obj - 1e-12 {
                        seq += 1;
                        heap.push(Node { bound, seq, lower, upper, relax });
                    }
                }
                if status == MiqpStatus::NodeLimit {
                    break;
                }
            }
        }
    }

    let objective = sub.objective(&best_delta);
    MiqpSolution { delta: best_delta, objective, node_count, status }
}

/// Index of the integer coordinate farthest from its nearest integer,
/// or `None` if all are integral within tolerance.
fn most_fractional(delta: &[f64], integer_dims: &[usize]) -> Option<usize> {
    let mut worst: Option<(usize, f64)> = None;
    for &j in integer_dims {
        let frac = fmath::abs(delta[j] - fmath::round(delta[j]));
        if frac > INT_TOL && worst.map_or(true, |(_, wf)| frac > wf) {
            worst = Some((j, frac));
        }
    }
    worst.map(|(j, _)| j)
}

/// Snaps integer coordinates of a relaxation to the nearest in-box
/// integers and re-optimizes the continuous coordinates with the
/// integers fixed.
fn round_and_polish(sub: &MiqpSubproblem, relax: &[f64]) -> Option<(Vec<f64>, f64)> {
    let mut lower = sub.lower.clone();
    let mut upper = sub.upper.clone();
    for &j in &sub.integer_dims {
        let v = fmath::round(relax[j]).clamp(sub.lower[j], sub.upper[j]);
        lower[j] = v;
        upper[j] = v;
    }
    let delta = solve_box_ridge_general(sub, &lower, &upper);
    let mut out = delta;
    for &j in &sub.integer_dims {
        out[j] = lower[j]; // exact integers, not solver output
    }
    let obj = sub.objective(&out);
    Some((out, obj))
}

/// Box-ridge solve on boxes that may not contain zero (child nodes after
/// branching): shift coordinates so the box origin is feasible, which
/// reduces to the standard solver on the residual at the shift.
fn solve_box_ridge_general(sub: &MiqpSubproblem, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    let d = sub.jac.cols();
    // Feasible anchor: clamp 0 into the box.
    let anchor: Vec<f64> = (0..d).map(|i| 0.0f64.clamp(lower[i], upper[i])).collect();
    if anchor.iter().all(|&a| a == 0.0) {
        return solve_box_ridge(&sub.jac, &sub.residual, sub.lambda, lower, upper);
    }
    // Δ = anchor + s: ‖J(anchor+s) + r‖² + λ‖anchor+s‖² is a ridge
    // problem in s with modified residual and a linear λ-term folded in
    // by augmenting J with √λ·I rows.
    let (m, lam) = (sub.jac.rows(), sub.lambda);
    let sq = fmath::sqrt(lam);
    let mut rows = Vec::with_capacity(m + d);
    let mut res = Vec::with_capacity(m + d);
    for i in 0..m {
        rows.push(sub.jac.row(i).to_vec());
        res.push(sub.residual[i] + dot(sub.jac.row(i), &anchor));
    }
    if lam > 0.0 {
        for i in 0..d {
            let mut row = vec![0.0; d];
            row[i] = sq;
            rows.push(row);
            res.push(sq * anchor[i]);
        }
    }
    let jac = Mat::from_rows(&rows);
    let lo: Vec<f64> = lower.iter().zip(&anchor).map(|(&l, &a)| l - a).collect();
    let hi: Vec<f64> = upper.iter().zip(&anchor).map(|(&u, &a)| u - a).collect();
    let s = solve_box_ridge(&jac, &res, 0.0, &lo, &hi);
    s.iter().zip(&anchor).map(|(&si, &ai)| si + ai).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha12Rng;
    use rand_core::{RngCore, SeedableRng};

    fn uniform(rng: &mut ChaCha12Rng) -> f64 {
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn random_mat(rng: &mut ChaCha12Rng, m: usize, n: usize) -> Mat {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| 2.0 * uniform(rng) - 1.0).collect())
            .collect();
        Mat::from_rows(&rows)
    }

    #[test]
    fn nnls_clamps_and_passes_through() {
        let a = Mat::eye(2);
        let s = solve_nnls(&a, &[1.0, -1.0]).unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-14);
        assert_eq!(s.x[1], 0.0);
        assert!((s.residual_sq - 1.0).abs() < 1e-14);

        let s = solve_nnls(&a, &[0.3, 0.7]).unwrap();
        assert!((s.x[0] - 0.3).abs() < 1e-14);
        assert!((s.x[1] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn nnls_beats_projected_gradient_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let a = random_mat(&mut rng, 20, 8);
        let b: Vec<f64> = (0..20).map(|_| 2.0 * uniform(&mut rng) - 1.0).collect();
        let s = solve_nnls(&a, &b).unwrap();

        // Projected gradient with a conservative step, 1e5 iterations.
        let gram = a.gram();
        let atb = a.t_matvec(&b);
        let lip: f64 = (0..8).map(|i| gram.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
        let step = 1.0 / lip;
        let mut x = vec![0.0; 8];
        for _ in 0..100_000 {
            let mut g = atb.clone();
            for i in 0..8 {
                g[i] -= dot(gram.row(i), &x);
            }
            for i in 0..8 {
                x[i] = (x[i] + step * g[i]).max(0.0);
            }
        }
        let obj = |x: &[f64]| {
            a.matvec(x)
                .iter()
                .zip(&b)
                .map(|(axi, bi)| (axi - bi) * (axi - bi))
                .sum::<f64>()
        };
        assert!(s.residual_sq <= obj(&x) + 1e-8, "{} vs {}", s.residual_sq, obj(&x));
    }

    #[test]
    fn nnls_kkt_conditions() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..25 {
            let a = random_mat(&mut rng, 15, 6);
            let b: Vec<f64> = (0..15).map(|_| 2.0 * uniform(&mut rng) - 1.0).collect();
            let s = solve_nnls(&a, &b).unwrap();
            let ax = a.matvec(&s.x);
            let resid: Vec<f64> = ax.iter().zip(&b).map(|(axi, bi)| axi - bi).collect();
            let grad = a.t_matvec(&resid); // Aᵀ(Ax − b)
            for (j, &g) in grad.iter().enumerate() {
                if s.x[j] > 0.0 {
                    assert!(g.abs() <= 1e-8, "passive grad {g} at {j}");
                } else {
                    assert!(g >= -1e-8, "active grad {g} at {j}");
                }
            }
        }
    }

    #[test]
    fn box_ridge_zero_residual_and_clamping() {
        let j = Mat::eye(3);
        let d = solve_box_ridge(&j, &[0.0; 3], 0.5, &[-1.0; 3], &[1.0; 3]);
        assert!(d.iter().all(|&x| x == 0.0));

        let j = Mat::eye(1);
        let d = solve_box_ridge(&j, &[-5.0], 0.0, &[-1.0], &[1.0]);
        assert!((d[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn box_ridge_matches_normal_equations_on_wide_box() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let j = random_mat(&mut rng, 30, 4);
        let r: Vec<f64> = (0..30).map(|_| 2.0 * uniform(&mut rng) - 1.0).collect();
        let lambda = 0.1;
        let d = solve_box_ridge(&j, &r, lambda, &[-1e6; 4], &[1e6; 4]);

        let mut h = j.gram();
        for i in 0..4 {
            h[(i, i)] += lambda;
        }
        let rhs: Vec<f64> = j.t_matvec(&r).iter().map(|&v| -v).collect();
        let direct = Cholesky::factor(&h).unwrap().solve(&rhs);
        for i in 0..4 {
            assert!((d[i] - direct[i]).abs() < 1e-9, "{} vs {}", d[i], direct[i]);
        }
    }

    #[test]
    fn box_ridge_monotone_in_box_width() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let j = random_mat(&mut rng, 12, 3);
        let r: Vec<f64> = (0..12).map(|_| 2.0 * uniform(&mut rng) - 1.0).collect();
        let sub = MiqpSubproblem {
            jac: j.clone(),
            residual: r.clone(),
            lambda: 1e-3,
            lower: vec![0.0; 3],
            upper: vec![0.0; 3],
            integer_dims: vec![],
        };
        let mut last = f64::INFINITY;
        for &w in &[0.1, 0.5, 1.0, 2.0, 8.0] {
            let d = solve_box_ridge(&j, &r, 1e-3, &[-w; 3], &[w; 3]);
            let obj = sub.objective(&d);
            assert!(obj <= last + 1e-12, "objective grew with wider box");
            last = obj;
        }
    }

    fn enumerate_oracle(sub: &MiqpSubproblem) -> f64 {
        // Exhaustive search over the integer lattice, continuous dims
        // re-solved for each assignment.
        let ints = &sub.integer_dims;
        let mut best = f64::INFINITY;
        let mut assignment: Vec<i64> = ints.iter().map(|&j| sub.lower[j] as i64).collect();
        loop {
            let mut lower = sub.lower.clone();
            let mut upper = sub.upper.clone();
            for (k, &j) in ints.iter().enumerate() {
                lower[j] = assignment[k] as f64;
                upper[j] = assignment[k] as f64;
            }
            let delta = solve_box_ridge_general(sub, &lower, &upper);
            best = best.min(sub.objective(&delta));
            // Increment the mixed-radix counter.
            let mut pos = 0;
            loop {
                if pos == ints.len() {
                    return best;
                }
                assignment[pos] += 1;
                if assignment[pos] as f64 <= sub.upper[ints[pos]] {
                    break;
                }
                assignment[pos] = sub.lower[ints[pos]] as i64;
                pos += 1;
            }
        }
    }

    fn random_subproblem(rng: &mut ChaCha12Rng, d: usize, n_int: usize, width: f64) -> MiqpSubproblem {
        let m = d + 3;
        let jac = random_mat(rng, m, d);
        let residual: Vec<f64> = (0..m).map(|_| 4.0 * uniform(rng) - 2.0).collect();
        let lo_int = -(fmath::floor(uniform(rng) * width) as f64);
        let hi_int = fmath::floor(uniform(rng) * width) as f64;
        let mut lower = vec![0.0; d];
        let mut upper = vec![0.0; d];
        for i in 0..d {
            lower[i] = -(0.5 + 4.0 * uniform(rng));
            upper[i] = 0.5 + 4.0 * uniform(rng);
        }
        let mut integer_dims: Vec<usize> = (0..d).collect();
        // Deterministic shuffle by draws.
        for i in (1..d).rev() {
            let j = (uniform(rng) * (i + 1) as f64) as usize;
            integer_dims.swap(i, j.min(i));
        }
        integer_dims.truncate(n_int);
        integer_dims.sort_unstable();
        for &j in &integer_dims {
            lower[j] = lo_int;
            upper[j] = hi_int;
        }
        MiqpSubproblem {
            jac,
            residual,
            lambda: 1e-6,
            lower,
            upper,
            integer_dims,
        }
    }

    #[test]
    fn bnb_without_integers_equals_box_ridge() {
        let mut rng = ChaCha12Rng::seed_from_u64(81);
        let sub = random_subproblem(&mut rng, 3, 0, 0.0);
        let sol = solve_miqp_bnb(&sub, 1000);
        let direct = solve_box_ridge(&sub.jac, &sub.residual, sub.lambda, &sub.lower, &sub.upper);
        assert_eq!(sol.status, MiqpStatus::Optimal);
        assert!((sol.objective - sub.objective(&direct)).abs() < 1e-10);
    }

    #[test]
    fn bnb_one_integer_matches_seven_point_enumeration() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        let mut sub = random_subproblem(&mut rng, 2, 1, 0.0);
        let j = sub.integer_dims[0];
        sub.lower[j] = -3.0;
        sub.upper[j] = 3.0;
        let sol = solve_miqp_bnb(&sub, 10_000);
        let oracle = enumerate_oracle(&sub);
        assert_eq!(sol.status, MiqpStatus::Optimal);
        assert!((sol.objective - oracle).abs() <= 1e-9, "{} vs {oracle}", sol.objective);
        assert!(sub.integer_dims.iter().all(|&j| sol.delta[j].fract() == 0.0));
    }

    #[test]
    fn bnb_matches_enumeration_on_random_instances() {
        let mut rng = ChaCha12Rng::seed_from_u64(2024);
        for trial in 0..40 {
            let sub = random_subproblem(&mut rng, 3, 2, 5.0);
            let sol = solve_miqp_bnb(&sub, 100_000);
            let oracle = enumerate_oracle(&sub);
            assert_eq!(sol.status, MiqpStatus::Optimal, "trial {trial}");
            assert!(
                (sol.objective - oracle).abs() <= 1e-9,
                "trial {trial}: {} vs {oracle}",
                sol.objective
            );
        }
    }

    #[test]
    fn bnb_objective_consistent_and_deterministic() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let sub = random_subproblem(&mut rng, 3, 2, 4.0);
        let a = solve_miqp_bnb(&sub, 100_000);
        let b = solve_miqp_bnb(&sub, 100_000);
        assert_eq!(a.delta, b.delta);
        assert_eq!(a.node_count, b.node_count);
        assert!((a.objective - sub.objective(&a.delta)).abs() < 1e-10);
        // Not worse than the rounding heuristic.
        let relax = solve_box_ridge(&sub.jac, &sub.residual, sub.lambda, &sub.lower, &sub.upper);
        let (_, heur) = round_and_polish(&sub, &relax).unwrap();
        assert!(a.objective <= heur + 1e-12);
    }
}
