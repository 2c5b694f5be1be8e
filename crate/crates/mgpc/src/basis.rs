//! Orthonormal polynomial bases.
//!
//! For each input distribution a family of univariate orthonormal
//! polynomials is generated by the Stieltjes procedure: the monic
//! three-term recurrence
//!
//! ```text
//! π_{i+1}(x) = (x − a_i) π_i(x) − b_i π_{i−1}(x),    π_{-1} = 0, π_0 = 1
//! a_i = E[x π_i²] / E[π_i²],    b_{i+1} = E[π_{i+1}²] / E[π_i²],   b_0 = 1
//! ```
//!
//! with expectations taken under the measure (exact lattice sums for
//! discrete families, panel Gauss–Legendre quadrature for continuous
//! ones), followed by normalization `φ_i = π_i / √(b_0 ⋯ b_i)`.
//!
//! Multivariate basis functions are tensor products over a total-degree
//! index set: `Ψ_α(ξ) = Π_i φ_{α_i}(ξ_i)`, ordered graded-lexicographic
//! with the constant function first, so `E[Ψ_k] = δ_{1k}`.
//!
//! Polynomials of discrete measures evaluate at arbitrary real
//! arguments; that natural extension is what makes the quadrature
//! engine's linearized steps well defined on integer dimensions.

use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{Distribution, ProblemSpec};
use crate::fmath;
use crate::linalg::{sym_tridiag_eigen, Mat};

#[derive(Debug, Clone, PartialEq)]
pub enum BasisError {
    /// A computed recurrence coefficient fell below 1e-14: the measure
    /// cannot support that many orthogonal polynomials.
    DegenerateMeasure { degree: usize },
    /// Requested degree is not below the number of support points of a
    /// discrete measure.
    DegreeTooHigh { degree: usize, support: u64 },
}

impl core::fmt::Display for BasisError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BasisError::DegenerateMeasure { degree } => {
                write!(f, "measure degenerate at degree {degree}")
            }
            BasisError::DegreeTooHigh { degree, support } => write!(
                f,
                "degree {degree} needs more than the {support} support points available"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BasisError {}

/// Three-term recurrence coefficients and normalization constants of one
/// univariate orthonormal family.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    /// `a_0 ..= a_n`.
    alpha: Vec<f64>,
    /// `b_0 ..= b_n` with `b_0 = 1`.
    beta: Vec<f64>,
    /// `√(b_0 ⋯ b_i)` for `i = 0 ..= n`.
    norm: Vec<f64>,
}

impl RecurrenceTable {
    /// Stieltjes construction up to `max_degree` under `dist`.
    pub fn build(dist: &Distribution, max_degree: usize) -> Result<Self, BasisError> {
        if let Some(size) = dist.lattice_size() {
            if max_degree as u64 >= size {
                return Err(BasisError::DegreeTooHigh {
                    degree: max_degree,
                    support: size,
                });
            }
        }
        let (x, w) = dist.integration_grid(max_degree);
        let m = x.len();

        let mut alpha = Vec::with_capacity(max_degree + 1);
        let mut beta = Vec::with_capacity(max_degree + 1);
        let mut p_prev = vec![0.0; m];
        let mut p_cur = vec![1.0; m];
        let mut s_cur: f64 = w.iter().sum();

        let weighted = |f: &dyn Fn(usize) -> f64| -> f64 {
            let mut acc = 0.0;
            for q in 0..m {
                acc += w[q] * f(q);
            }
            acc
        };

        alpha.push(weighted(&|q| x[q] * p_cur[q] * p_cur[q]) / s_cur);
        beta.push(1.0);

        for i in 0..max_degree {
            let mut p_next = vec![0.0; m];
            for q in 0..m {
                p_next[q] = (x[q] - alpha[i]) * p_cur[q] - beta[i] * p_prev[q];
            }
            let s_next = weighted(&|q| p_next[q] * p_next[q]);
            let b = s_next / s_cur;
            if !(b > 1e-14) {
                return Err(BasisError::DegenerateMeasure { degree: i + 1 });
            }
            beta.push(b);
            alpha.push(weighted(&|q| x[q] * p_next[q] * p_next[q]) / s_next);
            p_prev = p_cur;
            p_cur = p_next;
            s_cur = s_next;
        }

        let mut norm = Vec::with_capacity(max_degree + 1);
        let mut prod = 1.0;
        for &b in &beta {
            prod *= b;
            norm.push(fmath::sqrt(prod));
        }
        Ok(RecurrenceTable { alpha, beta, norm })
    }

    pub fn max_degree(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Rebuild a table from stored coefficient arrays (deserialization).
    pub fn from_coefficients(alpha: Vec<f64>, beta: Vec<f64>) -> Self {
        assert_eq!(alpha.len(), beta.len());
        assert!(!alpha.is_empty());
        let mut norm = Vec::with_capacity(beta.len());
        let mut prod = 1.0;
        for &b in &beta {
            prod *= b;
            norm.push(fmath::sqrt(prod));
        }
        RecurrenceTable { alpha, beta, norm }
    }

    /// Orthonormal values `φ_0(x) ..= φ_m(x)` and derivatives, via the
    /// monic recurrence and its derivative
    /// `π'_{i+1} = π_i + (x − a_i) π'_i − b_i π'_{i−1}`.
    pub fn eval_with_deriv(&self, x: f64, up_to: usize) -> (Vec<f64>, Vec<f64>) {
        assert!(up_to <= self.max_degree(), "degree beyond table");
        let mut values = Vec::with_capacity(up_to + 1);
        let mut derivs = Vec::with_capacity(up_to + 1);
        let (mut p_prev, mut p_cur) = (0.0f64, 1.0f64);
        let (mut d_prev, mut d_cur) = (0.0f64, 0.0f64);
        values.push(1.0);
        derivs.push(0.0);
        for i in 0..up_to {
            let p_next = (x - self.alpha[i]) * p_cur - self.beta[i] * p_prev;
            let d_next = p_cur + (x - self.alpha[i]) * d_cur - self.beta[i] * d_prev;
            p_prev = p_cur;
            p_cur = p_next;
            d_prev = d_cur;
            d_cur = d_next;
            values.push(p_cur / self.norm[i + 1]);
            derivs.push(d_cur / self.norm[i + 1]);
        }
        (values, derivs)
    }

    /// Orthonormal values only.
    pub fn eval(&self, x: f64, up_to: usize) -> Vec<f64> {
        self.eval_with_deriv(x, up_to).0
    }

    /// Classical `m`-point Gauss rule of the underlying measure, from
    /// the eigen-decomposition of the Jacobi matrix: nodes are the
    /// eigenvalues, weights the squared first eigenvector components.
    pub fn gauss_rule(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        assert!(m >= 1 && m <= self.max_degree(), "rule size beyond table");
        let diag = self.alpha[..m].to_vec();
        let off: Vec<f64> = self.beta[1..m].iter().map(|&b| fmath::sqrt(b)).collect();
        let (nodes, firsts) = sym_tridiag_eigen(&diag, &off);
        let weights = firsts.iter().map(|f| f * f).collect();
        (nodes, weights)
    }

    /// Max absolute deviation of the Gram matrix `E[φ_a φ_b]` from the
    /// identity, for degrees up to `order`, with the expectation taken
    /// under `dist`.
    pub fn gram_defect(&self, dist: &Distribution, order: usize) -> f64 {
        let (x, w) = dist.integration_grid(order);
        let cols: Vec<Vec<f64>> = x.iter().map(|&xi| self.eval(xi, order)).collect();
        let mut defect = 0.0f64;
        for a in 0..=order {
            for b in a..=order {
                let mut e = 0.0;
                for (q, wq) in w.iter().enumerate() {
                    e += wq * cols[q][a] * cols[q][b];
                }
                let target = if a == b { 1.0 } else { 0.0 };
                defect = defect.max(fmath::abs(e - target));
            }
        }
        defect
    }
}

/// Total-degree multi-index set `{α ∈ ℕ^d : |α| ≤ p}` in graded
/// lexicographic order; the first index is zero so `Ψ_1 ≡ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexSet {
    d: usize,
    p: usize,
    indices: Vec<Vec<u32>>,
    /// `counts[q]` = number of indices with `|α| ≤ q`.
    counts: Vec<usize>,
}

impl MultiIndexSet {
    pub fn new(d: usize, p: usize) -> Self {
        assert!(d >= 1);
        let mut indices = Vec::new();
        let mut counts = Vec::with_capacity(p + 1);
        let mut scratch = vec![0u32; d];
        for degree in 0..=p {
            compositions(degree as u32, 0, &mut scratch, &mut indices);
            counts.push(indices.len());
        }
        MultiIndexSet { d, p, indices, counts }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn indices(&self) -> &[Vec<u32>] {
        &self.indices
    }

    /// Number of indices of total degree at most `order`
    /// (= `C(d + order, order)`).
    pub fn len_up_to(&self, order: usize) -> usize {
        assert!(order <= self.p);
        self.counts[order]
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Appends all d-part compositions of `remaining`, lexicographically
/// ascending in the leading coordinate.
fn compositions(remaining: u32, pos: usize, scratch: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if pos == scratch.len() - 1 {
        scratch[pos] = remaining;
        out.push(scratch.to_vec());
        return;
    }
    for v in 0..=remaining {
        scratch[pos] = v;
        compositions(remaining - v, pos + 1, scratch, out);
    }
}

/// Convenience wrapper mirroring the index-set constructor.
pub fn enumerate_indices(d: usize, p: usize) -> MultiIndexSet {
    MultiIndexSet::new(d, p)
}

/// Per-dimension recurrence tables plus the total-degree index set of a
/// problem, able to evaluate basis vectors, gradients, and the
/// quadrature condition matrix at surrogate order `p` or matching order
/// `2p`.
#[derive(Debug, Clone)]
pub struct BasisSet {
    tables: Vec<RecurrenceTable>,
    index_set: MultiIndexSet,
    p: usize,
    problem: ProblemSpec,
}

impl BasisSet {
    /// Builds tables to degree `2p` per dimension and the order-`2p`
    /// index set.
    pub fn new(problem: &ProblemSpec, p: usize) -> Result<Self, BasisError> {
        assert!(p >= 1, "surrogate order must be at least 1");
        let tables = problem
            .params
            .iter()
            .map(|param| RecurrenceTable::build(&param.dist, 2 * p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BasisSet {
            tables,
            index_set: MultiIndexSet::new(problem.dim(), 2 * p),
            p,
            problem: problem.clone(),
        })
    }

    /// Reassembles a basis from stored tables (deserialization path).
    pub fn from_parts(
        problem: ProblemSpec,
        tables: Vec<RecurrenceTable>,
        p: usize,
    ) -> Self {
        assert_eq!(tables.len(), problem.dim());
        assert!(tables.iter().all(|t| t.max_degree() >= 2 * p));
        BasisSet {
            index_set: MultiIndexSet::new(problem.dim(), 2 * p),
            tables,
            p,
            problem,
        }
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.problem.dim()
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn tables(&self) -> &[RecurrenceTable] {
        &self.tables
    }

    pub fn index_set(&self) -> &MultiIndexSet {
        &self.index_set
    }

    /// `N_order`: number of basis functions of total degree ≤ `order`.
    pub fn n_basis(&self, order: usize) -> usize {
        self.index_set.len_up_to(order)
    }

    /// `Ψ_k(ξ)` for all `k` with `|α_k| ≤ order`.
    pub fn eval_point(&self, xi: &[f64], order: usize) -> Vec<f64> {
        assert_eq!(xi.len(), self.dim());
        let cols: Vec<Vec<f64>> = self
            .tables
            .iter()
            .zip(xi)
            .map(|(t, &x)| t.eval(x, order.min(t.max_degree())))
            .collect();
        self.index_set.indices()[..self.n_basis(order)]
            .iter()
            .map(|alpha| {
                alpha
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| cols[i][a as usize])
                    .product()
            })
            .collect()
    }

    /// Basis values and the gradient matrix `[∂Ψ_k/∂ξ_l]` (`N × d`).
    pub fn eval_point_with_grad(&self, xi: &[f64], order: usize) -> (Vec<f64>, Mat) {
        assert_eq!(xi.len(), self.dim());
        let d = self.dim();
        let per_dim: Vec<(Vec<f64>, Vec<f64>)> = self
            .tables
            .iter()
            .zip(xi)
            .map(|(t, &x)| t.eval_with_deriv(x, order.min(t.max_degree())))
            .collect();
        let n = self.n_basis(order);
        let mut values = Vec::with_capacity(n);
        let mut grad = Mat::zeros(n, d);
        for (k, alpha) in self.index_set.indices()[..n].iter().enumerate() {
            let mut v = 1.0;
            for (i, &a) in alpha.iter().enumerate() {
                v *= per_dim[i].0[a as usize];
            }
            values.push(v);
            for l in 0..d {
                let mut g = per_dim[l].1[alpha[l] as usize];
                if g != 0.0 {
                    for (i, &a) in alpha.iter().enumerate() {
                        if i != l {
                            g *= per_dim[i].0[a as usize];
                        }
                    }
                }
                grad[(k, l)] = g;
            }
        }
        (values, grad)
    }

    /// Condition matrix `Φ` with entries `[Φ]_{ki} = Ψ_k(ξ_i)`
    /// (`N_order × M`).
    pub fn eval_matrix(&self, points: &[Vec<f64>], order: usize) -> Mat {
        let n = self.n_basis(order);
        let mut phi = Mat::zeros(n, points.len());
        for (i, pt) in points.iter().enumerate() {
            let col = self.eval_point(pt, order);
            for (k, &v) in col.iter().enumerate() {
                phi[(k, i)] = v;
            }
        }
        phi
    }

    /// Max deviation of `E[Ψ_α Ψ_β]` from `δ_{αβ}` over indices of total
    /// degree ≤ `order`. The expectation factorizes across dimensions
    /// (independent inputs), so this reduces to per-dimension Gram
    /// matrices computed by exact sums or quadrature.
    pub fn orthonormality_defect(&self, order: usize) -> f64 {
        let grams: Vec<Mat> = self
            .tables
            .iter()
            .zip(&self.problem.params)
            .map(|(t, param)| {
                let deg = order.min(t.max_degree());
                let (x, w) = param.dist.integration_grid(deg);
                let cols: Vec<Vec<f64>> = x.iter().map(|&xi| t.eval(xi, deg)).collect();
                let mut g = Mat::zeros(deg + 1, deg + 1);
                for a in 0..=deg {
                    for b in 0..=deg {
                        let mut e = 0.0;
                        for (q, wq) in w.iter().enumerate() {
                            e += wq * cols[q][a] * cols[q][b];
                        }
                        g[(a, b)] = e;
                    }
                }
                g
            })
            .collect();

        let n = self.n_basis(order);
        let idx = &self.index_set.indices()[..n];
        let mut defect = 0.0f64;
        for k in 0..n {
            for l in k..n {
                let mut e = 1.0;
                for i in 0..self.dim() {
                    e *= grams[i][(idx[k][i] as usize, idx[l][i] as usize)];
                }
                let target = if k == l { 1.0 } else { 0.0 };
                defect = defect.max(fmath::abs(e - target));
            }
        }
        defect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{Distribution, ParameterSpec};
    use alloc::string::ToString;

    fn standard_gaussian() -> Distribution {
        Distribution::truncated_gaussian(0.0, 1.0, f64::NEG_INFINITY, f64::INFINITY).unwrap()
    }

    #[test]
    fn hermite_recurrence_from_stieltjes() {
        // Untruncated standard Gaussian: a_i = 0, b_k = k (probabilists'
        // Hermite), the classical closed form as oracle.
        let t = RecurrenceTable::build(&standard_gaussian(), 4).unwrap();
        for (i, &a) in t.alpha().iter().enumerate() {
            assert!(a.abs() < 1e-10, "alpha[{i}]={a}");
        }
        for k in 1..=4 {
            assert!(
                (t.beta()[k] - k as f64).abs() < 1e-9,
                "beta[{k}]={}",
                t.beta()[k]
            );
        }
    }

    #[test]
    fn krawtchouk_closed_form_oracle() {
        // Binomial(n̂, p) monic recurrence: a_k = p(n̂−k) + k(1−p),
        // b_k = k(1−p)p(n̂−k+1).
        for &(nn, p) in &[(10u64, 0.2), (20, 0.7432), (60, 0.6), (80, 0.7)] {
            let d = Distribution::binomial(nn, p).unwrap();
            let deg = 8.min(nn as usize - 1);
            let t = RecurrenceTable::build(&d, deg).unwrap();
            for k in 0..=deg {
                let a_exact = p * (nn as f64 - k as f64) + k as f64 * (1.0 - p);
                assert!(
                    (t.alpha()[k] - a_exact).abs() <= 1e-10 * a_exact.abs().max(1.0),
                    "n={nn} alpha[{k}]: {} vs {a_exact}",
                    t.alpha()[k]
                );
                if k >= 1 {
                    let b_exact = k as f64 * (1.0 - p) * p * (nn as f64 - k as f64 + 1.0);
                    assert!(
                        (t.beta()[k] - b_exact).abs() <= 1e-10 * b_exact,
                        "n={nn} beta[{k}]: {} vs {b_exact}",
                        t.beta()[k]
                    );
                }
            }
        }
    }

    #[test]
    fn gram_identity_for_all_families() {
        let dists = [
            standard_gaussian(),
            Distribution::truncated_gaussian(0.0, 1.0, -2.0, 2.0).unwrap(),
            Distribution::truncated_gaussian(5.6569, 1.1314, 0.0, f64::INFINITY).unwrap(),
            Distribution::binomial(10, 0.2).unwrap(),
            Distribution::binomial(80, 0.7).unwrap(),
            Distribution::uniform(-1.0, 3.0).unwrap(),
            Distribution::discrete_uniform(0, 12).unwrap(),
        ];
        for d in &dists {
            let n = 8.min(d.lattice_size().map_or(8, |s| s as usize - 1));
            let t = RecurrenceTable::build(d, n).unwrap();
            let defect = t.gram_defect(d, n);
            assert!(defect <= 1e-8, "defect {defect} for {d:?}");
        }
    }

    #[test]
    fn degenerate_and_too_high_degrees_are_rejected() {
        let d = Distribution::discrete_uniform(0, 3).unwrap();
        assert!(matches!(
            RecurrenceTable::build(&d, 4),
            Err(BasisError::DegreeTooHigh { .. })
        ));
        assert!(RecurrenceTable::build(&d, 3).is_ok());
    }

    #[test]
    fn eval_basics() {
        let t = RecurrenceTable::build(&standard_gaussian(), 4).unwrap();
        let (v, _) = t.eval_with_deriv(1.7, 4);
        assert_eq!(v[0], 1.0);
        let (v0, _) = t.eval_with_deriv(0.0, 1);
        assert!(v0[1].abs() < 1e-12); // α_0 = 0 ⇒ φ_1(0) = 0
    }

    #[test]
    fn derivatives_match_central_differences() {
        let dists = [
            Distribution::truncated_gaussian(0.0, 1.0, -2.0, 2.0).unwrap(),
            Distribution::binomial(10, 0.2).unwrap(),
            Distribution::uniform(-1.0, 3.0).unwrap(),
        ];
        for d in &dists {
            let t = RecurrenceTable::build(d, 6).unwrap();
            let (lo, hi) = d.clip_bounds();
            for j in 0..7 {
                let x = lo + (hi - lo) * (0.08 + 0.13 * j as f64);
                let h = 1e-5 * (1.0 + x.abs());
                let (_, derivs) = t.eval_with_deriv(x, 6);
                let up = t.eval(x + h, 6);
                let dn = t.eval(x - h, 6);
                for k in 1..=6 {
                    let fd = (up[k] - dn[k]) / (2.0 * h);
                    let scale = derivs[k].abs().max(1e-6);
                    assert!(
                        (derivs[k] - fd).abs() / scale <= 1e-6,
                        "{d:?} degree {k} at x={x}: {} vs fd {fd}",
                        derivs[k]
                    );
                }
            }
        }
    }

    #[test]
    fn index_set_cardinalities() {
        fn binom(n: usize, k: usize) -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        let s = MultiIndexSet::new(2, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s.indices()[0], vec![0, 0]);
        assert_eq!(MultiIndexSet::new(2, 4).len(), 15);
        assert_eq!(MultiIndexSet::new(6, 2).len(), 28);
        assert_eq!(MultiIndexSet::new(6, 4).len(), 210);
        for d in 1..=8 {
            for p in 0..=6 {
                assert_eq!(MultiIndexSet::new(d, p).len(), binom(d + p, p), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn index_set_is_graded_and_stable() {
        let s = MultiIndexSet::new(3, 3);
        let mut last_degree = 0u32;
        for alpha in s.indices() {
            let deg: u32 = alpha.iter().sum();
            assert!(deg >= last_degree, "ordering not graded");
            last_degree = deg;
        }
        assert_eq!(s.len_up_to(1), 4);
        assert_eq!(MultiIndexSet::new(3, 3), MultiIndexSet::new(3, 3));
    }

    fn toy_basis(p: usize) -> BasisSet {
        let spec = ProblemSpec::new(
            vec![
                ParameterSpec::new("k", Distribution::binomial(10, 0.2).unwrap()),
                ParameterSpec::new(
                    "x",
                    Distribution::truncated_gaussian(0.0, 1.0, -2.0, 2.0).unwrap(),
                ),
            ],
            vec!["y".to_string()],
        )
        .unwrap();
        BasisSet::new(&spec, p).unwrap()
    }

    #[test]
    fn basis_matrix_first_row_is_ones_and_products_factor() {
        let b = toy_basis(2);
        let pts = vec![vec![3.0, 0.4], vec![7.0, -1.2], vec![0.0, 1.9]];
        let phi = b.eval_matrix(&pts, 4);
        assert_eq!(phi.rows(), 15);
        assert_eq!(phi.cols(), 3);
        for i in 0..3 {
            assert_eq!(phi[(0, i)], 1.0);
        }
        // Ψ_(1,1)(ξ) = φ_1^{(1)}(ξ_1)·φ_1^{(2)}(ξ_2), direct product oracle.
        let k11 = b
            .index_set()
            .indices()
            .iter()
            .position(|a| a == &vec![1, 1])
            .unwrap();
        let f1 = b.tables()[0].eval(3.0, 1)[1];
        let f2 = b.tables()[1].eval(0.4, 1)[1];
        assert!((phi[(k11, 0)] - f1 * f2).abs() < 1e-12);
    }

    #[test]
    fn one_dimensional_matrix_equals_columns() {
        let spec = ProblemSpec::new(
            vec![ParameterSpec::new(
                "x",
                Distribution::uniform(0.0, 1.0).unwrap(),
            )],
            vec!["y".to_string()],
        )
        .unwrap();
        let b = BasisSet::new(&spec, 2).unwrap();
        let phi = b.eval_matrix(&[vec![0.3]], 4);
        let col = b.tables()[0].eval(0.3, 4);
        for k in 0..=4 {
            assert!((phi[(k, 0)] - col[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let b = toy_basis(2);
        let xi = vec![4.3, 0.7]; // off-lattice on purpose
        let (vals, grad) = b.eval_point_with_grad(&xi, 4);
        let n = vals.len();
        for l in 0..2 {
            let h = 1e-6 * (1.0 + xi[l].abs());
            let mut up = xi.clone();
            let mut dn = xi.clone();
            up[l] += h;
            dn[l] -= h;
            let vu = b.eval_point(&up, 4);
            let vd = b.eval_point(&dn, 4);
            for k in 0..n {
                let fd = (vu[k] - vd[k]) / (2.0 * h);
                assert!(
                    (grad[(k, l)] - fd).abs() <= 1e-5 * (1.0 + fd.abs()),
                    "k={k} l={l}: {} vs {fd}",
                    grad[(k, l)]
                );
            }
        }
    }

    #[test]
    fn multivariate_orthonormality_defect() {
        let b = toy_basis(2);
        let defect = b.orthonormality_defect(2);
        assert!(defect <= 1e-8, "defect={defect}");
        let defect4 = b.orthonormality_defect(4);
        assert!(defect4 <= 1e-8, "defect4={defect4}");
    }

    #[test]
    fn gauss_rule_reproduces_moments() {
        for d in [
            Distribution::binomial(10, 0.2).unwrap(),
            Distribution::truncated_gaussian(0.0, 1.0, -2.0, 2.0).unwrap(),
            Distribution::uniform(-1.0, 3.0).unwrap(),
        ] {
            let t = RecurrenceTable::build(&d, 5).unwrap();
            let (nodes, weights) = t.gauss_rule(3);
            assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            // 3-point Gauss is exact through degree 5.
            for k in 0..=5usize {
                let q: f64 = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(&x, &w)| w * x.powi(k as i32))
                    .sum();
                let exact = d.raw_moment(k);
                assert!(
                    (q - exact).abs() <= 1e-9 * exact.abs().max(1.0),
                    "{d:?} moment {k}: {q} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn basis_row_means_vanish_under_joint_sampling() {
        let b = toy_basis(2);
        let rows = b.problem().sample_joint(100_000, 60_601);
        let n = b.n_basis(2);
        let mut means = vec![0.0; n];
        for r in &rows {
            for (k, v) in b.eval_point(r, 2).iter().enumerate() {
                means[k] += v;
            }
        }
        for m in &mut means {
            *m /= rows.len() as f64;
        }
        assert!((means[0] - 1.0).abs() < 1e-12);
        // E[Ψ_k] = 0 for k ≥ 2, sample std of Ψ_k is 1: 3σ/√n ≈ 0.0095.
        for (k, m) in means.iter().enumerate().skip(1) {
            assert!(m.abs() < 0.01, "row {k} mean {m}");
        }
    }
}
