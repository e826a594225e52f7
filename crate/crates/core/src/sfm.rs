//! Submodular set-function minimization over lattice families
//! `{B : X ⊆ B ⊆ Y}`.
//!
//! Two engines share one contract. [`minimize_bruteforce`] enumerates the
//! family exactly. [`minimize_mnp`] runs the Fujishige–Wolfe minimum-norm
//! point algorithm on the base polytope of the contraction
//! `f'(A) = f(X ∪ A) − f(X)`, `A ⊆ Y \ X`, in floating point, then
//! re-evaluates candidate sets with the exact oracle. The float answer is
//! trusted only when the duality residual between the best exact candidate
//! and the lower bound `Σ min(x_i, 0)` is below a quarter of the value grid
//! spacing; otherwise the solver falls back to brute force.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::Subset;

/// Set function over the index set `{0, .., ground_size-1}`.
pub trait SetFunction {
    fn ground_size(&self) -> usize;
    fn eval(&self, set: Subset) -> Rational;
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, set: Subset) -> Rational {
        (**self).eval(set)
    }
}

/// Wraps a closure as a [`SetFunction`].
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(Subset) -> Rational> FnOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnOracle { n, f }
    }
}

impl<F: Fn(Subset) -> Rational> SetFunction for FnOracle<F> {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn eval(&self, set: Subset) -> Rational {
        (self.f)(set)
    }
}

/// The family `{B : lower ⊆ B ⊆ upper}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeFamily {
    lower: Subset,
    upper: Subset,
}

impl LatticeFamily {
    pub fn new(lower: Subset, upper: Subset) -> Result<Self> {
        if !lower.is_subset_of(upper) {
            return Err(Error::InvalidFamily);
        }
        Ok(LatticeFamily { lower, upper })
    }

    /// Every subset of `{0, .., n-1}`.
    pub fn power_set(n: usize) -> Self {
        LatticeFamily {
            lower: Subset::EMPTY,
            upper: Subset::full(n),
        }
    }

    pub fn lower(&self) -> Subset {
        self.lower
    }

    pub fn upper(&self) -> Subset {
        self.upper
    }

    /// Elements free to vary, `upper \ lower`.
    pub fn free(&self) -> Subset {
        self.upper.difference(self.lower)
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.lower.is_subset_of(set) && set.is_subset_of(self.upper)
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.free().submasks().map(move |a| a.union(self.lower))
    }
}

/// `A ↦ f(lower ∪ lift(A)) − f(lower)` over the free elements of a family,
/// re-indexed as `0..free.len()`.
pub struct Contraction<'a, F: ?Sized> {
    f: &'a F,
    lower: Subset,
    free: Vec<usize>,
    base: Rational,
}

impl<'a, F: SetFunction + ?Sized> Contraction<'a, F> {
    pub fn new(f: &'a F, family: &LatticeFamily) -> Self {
        Contraction {
            f,
            lower: family.lower,
            free: family.free().iter().collect(),
            base: f.eval(family.lower),
        }
    }

    /// Maps a local subset back to the original ground set, including `lower`.
    pub fn lift(&self, local: Subset) -> Subset {
        local
            .iter()
            .fold(self.lower, |acc, k| acc.with(self.free[k]))
    }

    pub fn offset(&self) -> &Rational {
        &self.base
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Contraction<'_, F> {
    fn ground_size(&self) -> usize {
        self.free.len()
    }
    fn eval(&self, set: Subset) -> Rational {
        self.f.eval(self.lift(set)) - &self.base
    }
}

/// Vertex of the base polytope of `f − f(∅)` produced by the greedy order
/// `order`: `v[order[k]] = f(A_k) − f(A_{k-1})` with `A_k` the first `k+1`
/// elements of the order.
pub fn greedy_vertex<F: SetFunction + ?Sized>(f: &F, order: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); f.ground_size()];
    let mut prefix = Subset::EMPTY;
    let mut prev = f.eval(prefix);
    for &i in order {
        prefix = prefix.with(i);
        let cur = f.eval(prefix);
        v[i] = &cur - &prev;
        prev = cur;
    }
    v
}

/// Largest number of free elements [`minimize_bruteforce`] accepts by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceMin {
    pub value: Rational,
    /// First minimizer in mask order.
    pub minimizer: Subset,
    /// All minimizers in mask order.
    pub minimizers: Vec<Subset>,
}

pub fn minimize_bruteforce<F: SetFunction + ?Sized>(
    f: &F,
    family: &LatticeFamily,
) -> Result<BruteForceMin> {
    minimize_bruteforce_with_cap(f, family, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn minimize_bruteforce_with_cap<F: SetFunction + ?Sized>(
    f: &F,
    family: &LatticeFamily,
    cap: usize,
) -> Result<BruteForceMin> {
    let size = family.free().len();
    if size > cap {
        return Err(Error::MinimizationLimit { size, cap });
    }
    let mut best: Option<Rational> = None;
    let mut minimizers = Vec::new();
    for b in family.members() {
        let v = f.eval(b);
        match &best {
            Some(cur) if &v > cur => {}
            Some(cur) if &v == cur => minimizers.push(b),
            _ => {
                best = Some(v);
                minimizers.clear();
                minimizers.push(b);
            }
        }
    }
    minimizers.sort();
    Ok(BruteForceMin {
        value: best.expect("a lattice family is never empty"),
        minimizer: minimizers[0],
        minimizers,
    })
}

/// How a min-norm-point answer was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MnpStatus {
    /// Duality residual below a quarter of the rounding unit.
    Verified,
    /// Residual too large; the answer comes from brute force.
    FellBack,
    /// Residual too large and the family is beyond the brute-force cap.
    Unverified,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Diagnostic {
    /// The lower bound `Σ min(x_i,0)` exceeded an exact function value, which
    /// cannot happen for a submodular function.
    NonSubmodular {
        lower_bound: f64,
        value: f64,
    },
    /// Swapping two adjacent elements of the final greedy order broke the
    /// exchange inequality `f(P+i) + f(P+j) ≥ f(P+i+j) + f(P)`.
    ExchangeViolation {
        position: usize,
    },
    IterationCap(usize),
    /// The normal equations of an affine projection were singular and the
    /// SVD least-squares route was used instead.
    AffineFallback,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MnpMin {
    pub value: Rational,
    pub minimizer: Subset,
    pub status: MnpStatus,
    /// Best exact candidate minus the float lower bound.
    pub residual: f64,
    pub iterations: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl Diagnostic {
    pub fn is_non_submodular(&self) -> bool {
        matches!(
            self,
            Diagnostic::NonSubmodular { .. } | Diagnostic::ExchangeViolation { .. }
        )
    }
}

impl MnpMin {
    pub fn fell_back(&self) -> bool {
        self.status == MnpStatus::FellBack
    }
}

const TERMINATION_TOL: f64 = 1e-10;
const WEIGHT_TOL: f64 = 1e-12;

/// Minimum of `f` over `family` via the minimum-norm point of the contracted
/// base polytope. Every value of `f` must be a multiple of `rounding_unit`.
pub fn minimize_mnp<F: SetFunction + ?Sized>(
    f: &F,
    family: &LatticeFamily,
    rounding_unit: &Rational,
) -> Result<MnpMin> {
    if !rounding_unit.is_positive() {
        return Err(Error::InvalidRoundingUnit(rounding_unit.clone()));
    }
    let g = Contraction::new(f, family);
    let m = g.ground_size();
    if m == 0 {
        return Ok(MnpMin {
            value: f.eval(family.lower),
            minimizer: family.lower,
            status: MnpStatus::Verified,
            residual: 0.0,
            iterations: 0,
            diagnostics: Vec::new(),
        });
    }

    let mut diagnostics = Vec::new();
    let (x, iterations) = wolfe(&g, &mut diagnostics);

    // Exact candidates: prefix sets of the ascending order of x.
    let order = ascending_order(&x);
    let mut prefix = Subset::EMPTY;
    let mut prefix_val = Rational::zero();
    let mut best_set = prefix;
    let mut best_val = Rational::zero();
    for (t, &i) in order.iter().enumerate() {
        if let Some(&j) = order.get(t + 1) {
            let lhs = g.eval(prefix.with(i)) + g.eval(prefix.with(j));
            let rhs = g.eval(prefix.with(i).with(j)) + &prefix_val;
            if lhs < rhs {
                diagnostics.push(Diagnostic::ExchangeViolation { position: t });
            }
        }
        prefix = prefix.with(i);
        prefix_val = g.eval(prefix);
        if prefix_val < best_val {
            best_val = prefix_val.clone();
            best_set = prefix;
        }
    }
    let lower_bound: f64 = x.iter().map(|&xi| xi.min(0.0)).sum();
    let upper = best_val.to_f64();
    let residual = upper - lower_bound;
    if lower_bound > upper + 1e-9 * (1.0 + upper.abs()) {
        diagnostics.push(Diagnostic::NonSubmodular {
            lower_bound,
            value: upper,
        });
    }

    let trusted = residual < rounding_unit.to_f64() / 4.0
        && !diagnostics.iter().any(Diagnostic::is_non_submodular);
    if trusted {
        return Ok(MnpMin {
            value: best_val + g.offset(),
            minimizer: g.lift(best_set),
            status: MnpStatus::Verified,
            residual,
            iterations,
            diagnostics,
        });
    }
    match minimize_bruteforce(f, family) {
        Ok(bf) => Ok(MnpMin {
            value: bf.value,
            minimizer: bf.minimizer,
            status: MnpStatus::FellBack,
            residual,
            iterations,
            diagnostics,
        }),
        Err(Error::MinimizationLimit { .. }) => Ok(MnpMin {
            value: best_val + g.offset(),
            minimizer: g.lift(best_set),
            status: MnpStatus::Unverified,
            residual,
            iterations,
            diagnostics,
        }),
        Err(e) => Err(e),
    }
}

fn ascending_order(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    order
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn float_vertex<F: SetFunction + ?Sized>(f: &F, order: &[usize]) -> Vec<f64> {
    greedy_vertex(f, order)
        .iter()
        .map(Rational::to_f64)
        .collect()
}

fn combine(points: &[Vec<f64>], weights: &[f64], m: usize) -> Vec<f64> {
    let mut x = vec![0.0; m];
    for (p, &w) in points.iter().zip(weights) {
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi += w * pi;
        }
    }
    x
}

/// Wolfe's algorithm; returns the (approximate) minimum-norm point and the
/// number of major cycles.
fn wolfe<F: SetFunction + ?Sized>(f: &F, diagnostics: &mut Vec<Diagnostic>) -> (Vec<f64>, usize) {
    let m = f.ground_size();
    let cap = 10usize.saturating_mul(1usize.checked_shl(m as u32).unwrap_or(usize::MAX));
    let identity: Vec<usize> = (0..m).collect();
    let mut points = vec![float_vertex(f, &identity)];
    let mut weights = vec![1.0];
    let mut x = points[0].clone();
    let mut iterations = 0;

    loop {
        if iterations >= cap {
            diagnostics.push(Diagnostic::IterationCap(cap));
            break;
        }
        iterations += 1;

        let q = float_vertex(f, &ascending_order(&x));
        let xx = dot(&x, &x);
        if xx - dot(&x, &q) <= TERMINATION_TOL * dot(&q, &q).max(1.0) {
            break;
        }
        if points
            .iter()
            .any(|p| p.iter().zip(&q).all(|(a, b)| (a - b).abs() <= 1e-12))
        {
            break;
        }
        points.push(q);
        weights.push(0.0);

        // Minor cycles.
        loop {
            let alpha = affine_minimizer(&points, diagnostics);
            if alpha.iter().all(|&a| a > WEIGHT_TOL) {
                weights = alpha;
                break;
            }
            let (mut theta, mut drop) = (f64::INFINITY, 0);
            for (k, (&l, &a)) in weights.iter().zip(&alpha).enumerate() {
                if a <= WEIGHT_TOL {
                    let t = if l - a > 0.0 { l / (l - a) } else { 0.0 };
                    if t < theta {
                        theta = t;
                        drop = k;
                    }
                }
            }
            let theta = theta.clamp(0.0, 1.0);
            for (l, a) in weights.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            weights[drop] = 0.0;
            let mut k = 0;
            points.retain(|_| {
                let keep = weights[k] > WEIGHT_TOL;
                k += 1;
                keep
            });
            weights.retain(|&w| w > WEIGHT_TOL);
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            if points.len() == 1 {
                weights = vec![1.0];
                break;
            }
        }
        let next = combine(&points, &weights, m);
        if dot(&next, &next) > xx * (1.0 + 1e-14) + 1e-300 {
            // Numerical stall: the norm must decrease strictly.
            x = next;
            break;
        }
        x = next;
    }
    (x, iterations)
}

/// Coefficients (summing to one) of the minimum-norm point in the affine
/// hull of `points`.
fn affine_minimizer(points: &[Vec<f64>], diagnostics: &mut Vec<Diagnostic>) -> Vec<f64> {
    let k = points.len();
    if k == 1 {
        return vec![1.0];
    }
    // Normal equations [[G, 1], [1ᵀ, 0]] [α; μ] = [0; 1].
    let mut a = DMatrix::<f64>::zeros(k + 1, k + 1);
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] = dot(&points[i], &points[j]);
        }
        a[(i, k)] = 1.0;
        a[(k, i)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    if let Some(sol) = a.clone().lu().solve(&rhs) {
        let alpha: Vec<f64> = sol.iter().take(k).copied().collect();
        let sum: f64 = alpha.iter().sum();
        let resid = (&a * &sol - &rhs).amax();
        if alpha.iter().all(|v| v.is_finite()) && (sum - 1.0).abs() < 1e-9 && resid < 1e-9 {
            return alpha;
        }
    }
    diagnostics.push(Diagnostic::AffineFallback);

    // Least squares on differences: min ‖p_0 + D β‖ with D = [p_i − p_0].
    let m = points[0].len();
    let d = DMatrix::<f64>::from_fn(m, k - 1, |r, c| points[c + 1][r] - points[0][r]);
    let p0 = DVector::<f64>::from_column_slice(&points[0]);
    let svd = d.svd(true, true);
    let beta = svd
        .solve(&(-p0), 1e-12)
        .unwrap_or_else(|_| DVector::zeros(k - 1));
    let mut alpha = Vec::with_capacity(k);
    alpha.push(1.0 - beta.iter().sum::<f64>());
    alpha.extend(beta.iter().copied());
    alpha
}

/// Selects the minimization engine used by the structural analyses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SfmEngine {
    BruteForce,
    #[default]
    MinNormPoint,
}

/// Engine-independent answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfmOutcome {
    pub value: Rational,
    pub minimizer: Subset,
    pub fell_back: bool,
}

impl SfmEngine {
    pub fn minimize<F: SetFunction + ?Sized>(
        self,
        f: &F,
        family: &LatticeFamily,
        rounding_unit: &Rational,
    ) -> Result<SfmOutcome> {
        match self {
            SfmEngine::BruteForce => {
                let bf = minimize_bruteforce(f, family)?;
                Ok(SfmOutcome {
                    value: bf.value,
                    minimizer: bf.minimizer,
                    fell_back: false,
                })
            }
            SfmEngine::MinNormPoint => {
                let r = minimize_mnp(f, family, rounding_unit)?;
                if r.status == MnpStatus::Unverified {
                    return Err(Error::Internal(format!(
                        "min-norm point residual {} not below rounding unit/4 and family too large for brute force",
                        r.residual
                    )));
                }
                Ok(SfmOutcome {
                    fell_back: r.fell_back(),
                    value: r.value,
                    minimizer: r.minimizer,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn modular() -> FnOracle<impl Fn(Subset) -> Rational> {
        let w = [-1i64, 2, -3];
        FnOracle::new(3, move |s: Subset| s.iter().map(|i| r(w[i])).sum())
    }

    /// Number of path edges 0–1–2 with exactly one endpoint in the set.
    fn path_cut() -> FnOracle<impl Fn(Subset) -> Rational> {
        FnOracle::new(3, |s: Subset| {
            let cut = [(0, 1), (1, 2)]
                .iter()
                .filter(|&&(a, b)| s.contains(a) != s.contains(b))
                .count();
            r(cut as i64)
        })
    }

    #[test]
    fn bruteforce_modular() {
        let f = modular();
        let res = minimize_bruteforce(&f, &LatticeFamily::power_set(3)).unwrap();
        assert_eq!(res.value, r(-4));
        assert_eq!(res.minimizer, Subset::from_indices([0, 2]));
        assert_eq!(res.minimizers, vec![Subset::from_indices([0, 2])]);
    }

    #[test]
    fn bruteforce_single_member_family() {
        let f = modular();
        let x = Subset::from_indices([1]);
        let res = minimize_bruteforce(&f, &LatticeFamily::new(x, x).unwrap()).unwrap();
        assert_eq!(res.value, r(2));
        assert_eq!(res.minimizer, x);
    }

    #[test]
    fn bruteforce_cap() {
        let f = modular();
        assert_eq!(
            minimize_bruteforce_with_cap(&f, &LatticeFamily::power_set(3), 2),
            Err(Error::MinimizationLimit { size: 3, cap: 2 })
        );
    }

    #[test]
    fn family_rejects_inverted_bounds() {
        assert_eq!(
            LatticeFamily::new(Subset::singleton(0), Subset::singleton(1)),
            Err(Error::InvalidFamily)
        );
    }

    #[test]
    fn mnp_modular() {
        let f = modular();
        let res = minimize_mnp(&f, &LatticeFamily::power_set(3), &r(1)).unwrap();
        assert_eq!(res.value, r(-4));
        assert_eq!(res.minimizer, Subset::from_indices([0, 2]));
        assert_eq!(res.status, MnpStatus::Verified);
    }

    #[test]
    fn mnp_path_cut() {
        let f = path_cut();
        let family = LatticeFamily::power_set(3);
        let bf = minimize_bruteforce(&f, &family).unwrap();
        assert_eq!(bf.value, r(0));
        assert_eq!(bf.minimizers, vec![Subset::EMPTY, Subset::full(3)]);
        let res = minimize_mnp(&f, &family, &r(1)).unwrap();
        assert_eq!(res.value, r(0));
        assert!(bf.minimizers.contains(&res.minimizer));
    }

    #[test]
    fn mnp_respects_lower_bound() {
        let f = path_cut();
        let family = LatticeFamily::new(Subset::singleton(0), Subset::full(3)).unwrap();
        let res = minimize_mnp(&f, &family, &r(1)).unwrap();
        assert_eq!(res.value, r(0));
        assert_eq!(res.minimizer, Subset::full(3));
    }

    #[test]
    fn mnp_rejects_bad_unit() {
        let f = modular();
        assert!(matches!(
            minimize_mnp(&f, &LatticeFamily::power_set(3), &Rational::zero()),
            Err(Error::InvalidRoundingUnit(_))
        ));
    }

    #[test]
    fn mnp_flags_non_submodular_input() {
        // Convex in |A|, hence supermodular.
        let f = FnOracle::new(4, |s: Subset| {
            let k = s.len() as i64;
            r(k * k - 3 * k)
        });
        let family = LatticeFamily::power_set(4);
        let res = minimize_mnp(&f, &family, &r(1)).unwrap();
        let bf = minimize_bruteforce(&f, &family).unwrap();
        assert_eq!(res.value, bf.value);
        assert!(res.fell_back(), "{res:?}");
        assert!(res.diagnostics.iter().any(Diagnostic::is_non_submodular));
    }

    #[test]
    fn greedy_vertex_prefix_identity() {
        let f = path_cut();
        let order = [2, 0, 1];
        let v = greedy_vertex(&f, &order);
        let mut prefix = Subset::EMPTY;
        for &i in &order {
            prefix = prefix.with(i);
            let sum: Rational = prefix.iter().map(|j| v[j].clone()).sum();
            assert_eq!(sum, f.eval(prefix));
        }
    }

    #[test]
    fn contraction_identity() {
        let f = modular();
        let family = LatticeFamily::new(Subset::singleton(1), Subset::full(3)).unwrap();
        let g = Contraction::new(&f, &family);
        assert_eq!(g.ground_size(), 2);
        let local = minimize_bruteforce(&g, &LatticeFamily::power_set(2)).unwrap();
        let direct = minimize_bruteforce(&f, &family).unwrap();
        assert_eq!(g.lift(local.minimizer), direct.minimizer);
        assert_eq!(local.value + g.offset(), direct.value);
    }
}
