//! The perturbed Markov chain of a game and stability of its equilibria.
//!
//! States are profiles in odometer order. Every lazy improvement edge moves
//! with probability `p`; from an equilibrium, every single-node change that
//! keeps the outcome moves with probability `ε`; the rest stays put.

use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{improvement_graph, Dynamics, Relation};
use crate::error::{Error, Result};
use crate::game::{Game, PlayerId, Profile};
use crate::graph::StateGraph;
use crate::scalar::{big, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    Improvement,
    Perturbation,
}

/// Which transitions exist, before any probability is attached.
#[derive(Clone, Debug)]
pub struct ChainShape {
    pub degrees: Vec<usize>,
    pub leaves: usize,
    pub ne: Vec<bool>,
    pub edges: Vec<Vec<(usize, Transition)>>,
}

#[derive(Clone, Debug)]
pub struct PerturbedChain<T> {
    pub shape: ChainShape,
    /// Off-diagonal masses, parallel to `shape.edges`.
    pub mass: Vec<Vec<T>>,
    pub stay: Vec<T>,
}

pub type ExactChain = PerturbedChain<BigRational>;
pub type FloatChain = PerturbedChain<f64>;

pub fn chain_shape(g: &Game) -> Result<ChainShape> {
    let graph = improvement_graph(g, Relation::Lazy)?;
    let degrees = g.degrees();
    let mut edges: Vec<Vec<(usize, Transition)>> = (0..graph.n_states() as u32)
        .map(|u| {
            let mut out: Vec<usize> = graph.successors(u).iter().map(|&(v, _)| v as usize).collect();
            out.sort_unstable();
            out.dedup();
            out.retain(|&v| v != u as usize);
            out.into_iter().map(|v| (v, Transition::Improvement)).collect()
        })
        .collect();
    let ne: Vec<bool> = edges.iter().map(Vec::is_empty).collect();
    for (u, out) in edges.iter_mut().enumerate() {
        if !ne[u] {
            continue;
        }
        let s = Profile::unrank(u as u64, &degrees);
        let here = g.outcome(&s);
        for (k, &d) in degrees.iter().enumerate() {
            for c in 0..d as u16 {
                if c == s.choice(k) {
                    continue;
                }
                let mut t = s.clone();
                t.set(k, c);
                if g.outcome(&t) == here {
                    out.push((t.rank(&degrees) as usize, Transition::Perturbation));
                }
            }
        }
    }
    Ok(ChainShape { degrees, leaves: g.tree.n_leaves(), ne, edges })
}

impl ChainShape {
    pub fn n_states(&self) -> usize {
        self.edges.len()
    }

    pub fn profile(&self, state: usize) -> Profile {
        Profile::unrank(state as u64, &self.degrees)
    }

    pub fn state(&self, s: &Profile) -> usize {
        s.rank(&self.degrees) as usize
    }

    /// Attaches masses edge by edge; rows whose outgoing mass exceeds one are rejected.
    pub fn weigh<T: Scalar>(&self, mut mass: impl FnMut(usize, usize, Transition) -> T) -> Result<PerturbedChain<T>> {
        let mut masses = Vec::with_capacity(self.edges.len());
        let mut stay = Vec::with_capacity(self.edges.len());
        for (u, out) in self.edges.iter().enumerate() {
            let row: Vec<T> = out.iter().map(|&(v, kind)| mass(u, v, kind)).collect();
            let rest = row.iter().fold(T::one(), |acc, m| acc - m.clone());
            if rest < T::zero() {
                return Err(Error::RowOverflow { state: u });
            }
            masses.push(row);
            stay.push(rest);
        }
        Ok(PerturbedChain { shape: self.clone(), mass: masses, stay })
    }

    /// The support graph, self-loops left out.
    pub fn graph(&self) -> StateGraph {
        let adj = self
            .edges
            .iter()
            .map(|out| out.iter().map(|&(v, _)| (v as u32, PlayerId(0))).collect())
            .collect();
        StateGraph::new(self.degrees.clone(), adj)
    }

    fn check_range(&self, name: &str, x: &Rational64) -> Result<()> {
        let bound = Rational64::new(1, 2 * self.leaves as i64);
        if *x <= Rational64::zero() || *x >= bound {
            return Err(Error::ParameterOutOfRange(format!("{name} = {x} not in (0, {bound})")));
        }
        Ok(())
    }
}

/// The chain with uniform masses `p` and `eps`, both in `(0, 1/(2l))`.
pub fn build_chain<T: Scalar>(g: &Game, p: Rational64, eps: Rational64) -> Result<PerturbedChain<T>> {
    let shape = chain_shape(g)?;
    shape.check_range("p", &p)?;
    shape.check_range("eps", &eps)?;
    shape.weigh(|_, _, kind| match kind {
        Transition::Improvement => T::from_rational64(&p),
        Transition::Perturbation => T::from_rational64(&eps),
    })
}

impl<T: Scalar> PerturbedChain<T> {
    pub fn n_states(&self) -> usize {
        self.stay.len()
    }

    pub fn dense(&self) -> Vec<Vec<T>> {
        let n = self.n_states();
        let mut m = vec![vec![T::zero(); n]; n];
        for (u, out) in self.shape.edges.iter().enumerate() {
            for (&(v, _), x) in out.iter().zip(&self.mass[u]) {
                m[u][v] = m[u][v].clone() + x.clone();
            }
            m[u][u] = m[u][u].clone() + self.stay[u].clone();
        }
        m
    }

    pub fn row_sum(&self, u: usize) -> T {
        self.mass[u].iter().fold(self.stay[u].clone(), |acc, x| acc + x.clone())
    }

    /// `v·M`.
    pub fn left_multiply(&self, v: &[T]) -> Vec<T> {
        let mut out: Vec<T> = v.iter().zip(&self.stay).map(|(x, s)| x.clone() * s.clone()).collect();
        for (u, row) in self.shape.edges.iter().enumerate() {
            for (&(w, _), m) in row.iter().zip(&self.mass[u]) {
                out[w] = out[w].clone() + v[u].clone() * m.clone();
            }
        }
        out
    }

    pub fn is_fixed_point(&self, v: &[T]) -> bool {
        self.left_multiply(v) == v
    }

    /// Row-major text, one row per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in self.dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_f64(&self) -> FloatChain {
        PerturbedChain {
            shape: self.shape.clone(),
            mass: self.mass.iter().map(|r| r.iter().map(|x| x.to_float()).collect()).collect(),
            stay: self.stay.iter().map(|x| x.to_float()).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stationary {
    pub pi: Vec<f64>,
    /// `‖πM − π‖₁`.
    pub residual: f64,
    pub reducible: bool,
    pub recurrent_classes: usize,
    /// Matrix products performed.
    pub iterations: usize,
}

/// Dense chains up to this size are solved by repeated squaring.
const DENSE_LIMIT: usize = 512;

/// The limit of `uniform·Mᵏ`. Small chains square the matrix, so
/// `max_iters` products cover `2^max_iters` steps; large ones step once per product.
pub fn stationary_distribution<T: Scalar>(chain: &PerturbedChain<T>, tol: f64, max_iters: usize) -> Result<Stationary> {
    let fc = chain.to_f64();
    let n = fc.n_states();
    let uniform = vec![1.0 / n as f64; n];
    let (pi, iterations) = if n <= DENSE_LIMIT {
        let mut m = fc.dense();
        let mut k = 0;
        loop {
            if k == max_iters {
                return Err(Error::NoConvergence(k));
            }
            let sq = square(&m);
            k += 1;
            let delta = m
                .iter()
                .zip(&sq)
                .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
                .fold(0.0, f64::max);
            m = sq;
            if delta < tol {
                break;
            }
        }
        let pi = (0..n).map(|j| (0..n).map(|i| uniform[i] * m[i][j]).sum()).collect();
        (pi, k)
    } else {
        let mut x = uniform.clone();
        let mut k = 0;
        loop {
            if k == max_iters {
                return Err(Error::NoConvergence(k));
            }
            let y = fc.left_multiply(&x);
            k += 1;
            let delta: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
            x = y;
            if delta < tol {
                break;
            }
        }
        (x, k)
    };
    let residual = fc.left_multiply(&pi).iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
    let graph = chain.shape.graph();
    let ids = graph.scc_ids();
    let n_classes = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut leaves_class = vec![false; n_classes];
    for (u, v, _) in graph.edges() {
        if ids[u as usize] != ids[v as usize] {
            leaves_class[ids[u as usize]] = true;
        }
    }
    Ok(Stationary {
        pi,
        residual,
        reducible: n_classes > 1,
        recurrent_classes: leaves_class.iter().filter(|&&l| !l).count(),
        iterations,
    })
}

fn square(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    m.par_iter()
        .map(|row| {
            let mut out = vec![0.0; n];
            for (k, &x) in row.iter().enumerate() {
                if x != 0.0 {
                    for (o, &y) in out.iter_mut().zip(&m[k]) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct StabilityParams {
    pub p: Rational64,
    pub eps0: Rational64,
    pub levels: usize,
    pub threshold: f64,
    pub tol: f64,
    pub max_iters: usize,
}

impl StabilityParams {
    /// `eps0 = p/10`, 12 levels, threshold `1e-3`, tolerance `1e-10`.
    pub fn new(p: Rational64) -> Self {
        StabilityParams { p, eps0: p / 10, levels: 12, threshold: 1e-3, tol: 1e-10, max_iters: 200 }
    }

    pub fn ladder(&self) -> Vec<Rational64> {
        (0..self.levels).map(|k| self.eps0 / (1i64 << k)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct StateStability {
    pub state: usize,
    pub profile: Profile,
    pub is_ne: bool,
    /// Weight at each rung of the ladder.
    pub weights: Vec<f64>,
    pub limit: f64,
    /// Gap between the last two extrapolated estimates.
    pub gap: f64,
    pub stable: bool,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub ladder: Vec<Rational64>,
    pub states: Vec<StateStability>,
    pub residuals: Vec<f64>,
    pub reducible: bool,
    /// Total weight off the equilibria, per rung.
    pub non_ne_weight: Vec<f64>,
}

impl StabilityReport {
    pub fn stable(&self) -> Vec<usize> {
        self.states.iter().filter(|s| s.stable).map(|s| s.state).collect()
    }

    pub fn limit(&self, state: usize) -> f64 {
        self.states[state].limit
    }
}

/// Orders of Richardson extrapolation applied to the ladder.
const RICHARDSON_ORDERS: usize = 4;

/// Richardson table for a sequence sampled at `ε·2^-k`; returns the last two
/// estimates of the highest usable order.
fn extrapolate(w: &[f64]) -> (f64, f64) {
    let mut col = w.to_vec();
    let orders = RICHARDSON_ORDERS.min(w.len().saturating_sub(2));
    for j in 1..=orders {
        let f = (1u64 << j) as f64 - 1.0;
        col = col.windows(2).map(|p| p[1] + (p[1] - p[0]) / f).collect();
    }
    match col.as_slice() {
        [] => (f64::NAN, f64::NAN),
        [x] => (*x, f64::INFINITY),
        [.., a, b] => (*b, (b - a).abs()),
    }
}

pub fn stable_profiles(g: &Game, params: &StabilityParams) -> Result<StabilityReport> {
    let shape = chain_shape(g)?;
    stable_on(&shape, params, |_, _, _| Rational64::one())
}

/// The ladder with each edge scaled by a fixed factor.
fn stable_on(
    shape: &ChainShape,
    params: &StabilityParams,
    factor: impl Fn(usize, usize, Transition) -> Rational64 + Sync,
) -> Result<StabilityReport> {
    if params.levels == 0 {
        return Err(Error::ParameterOutOfRange("levels must be positive".into()));
    }
    let ladder = params.ladder();
    shape.check_range("p", &(params.p * max_factor(shape, &factor, Transition::Improvement)))?;
    shape.check_range("eps", &(params.eps0 * max_factor(shape, &factor, Transition::Perturbation)))?;
    let runs: Vec<Stationary> = ladder
        .par_iter()
        .map(|eps| {
            let chain: ExactChain = shape.weigh(|u, v, kind| {
                let base = match kind {
                    Transition::Improvement => params.p,
                    Transition::Perturbation => *eps,
                };
                big(&(base * factor(u, v, kind)))
            })?;
            stationary_distribution(&chain, params.tol, params.max_iters)
        })
        .collect::<Result<_>>()?;
    let states = (0..shape.n_states())
        .map(|u| {
            let weights: Vec<f64> = runs.iter().map(|r| r.pi[u]).collect();
            let (limit, gap) = extrapolate(&weights);
            // Tolerance scaled to the error the iteration itself leaves behind.
            let converged = gap < params.tol.max(1e-9);
            StateStability {
                state: u,
                profile: shape.profile(u),
                is_ne: shape.ne[u],
                stable: converged && limit > params.threshold,
                weights,
                limit,
                gap,
            }
        })
        .collect();
    let non_ne_weight = runs
        .iter()
        .map(|r| (0..shape.n_states()).filter(|&u| !shape.ne[u]).map(|u| r.pi[u]).sum())
        .collect();
    Ok(StabilityReport {
        ladder,
        states,
        residuals: runs.iter().map(|r| r.residual).collect(),
        reducible: runs[0].reducible,
        non_ne_weight,
    })
}

fn max_factor(shape: &ChainShape, factor: &impl Fn(usize, usize, Transition) -> Rational64, kind: Transition) -> Rational64 {
    let mut best = Rational64::one();
    for (u, out) in shape.edges.iter().enumerate() {
        for &(v, k) in out {
            if k == kind {
                best = best.max(factor(u, v, k));
            }
        }
    }
    best
}

/// Redraws every edge mass in `[x, αx]` and checks that the stable set stays.
pub fn robustness_check(g: &Game, params: &StabilityParams, alpha: Rational64, seed: u64) -> Result<bool> {
    if alpha < Rational64::one() {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha} below 1")));
    }
    let shape = chain_shape(g)?;
    shape.check_range("(1+alpha)p", &(params.p * (alpha + 1)))?;
    shape.check_range("(1+alpha)eps", &(params.eps0 * (alpha + 1)))?;
    let base = stable_on(&shape, params, |_, _, _| Rational64::one())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const STEPS: i64 = 1000;
    let factors: Vec<Vec<Rational64>> = shape
        .edges
        .iter()
        .map(|out| {
            out.iter()
                .map(|_| Rational64::one() + (alpha - 1) * Rational64::new(rng.gen_range(0..=STEPS), STEPS))
                .collect()
        })
        .collect();
    let lookup = |u: usize, v: usize, kind: Transition| {
        let j = shape.edges[u].iter().position(|&e| e == (v, kind)).expect("edge");
        factors[u][j]
    };
    let shaken = stable_on(&shape, params, lookup)?;
    Ok(base.stable() == shaken.stable())
}
