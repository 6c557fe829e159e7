//! Subrepresentation counting over F_p and Euler characteristics of quiver
//! Grassmannians by interpolating the counting polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::fp::{self, Echelon};
use super::{ModuleFamily, Representation};
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// Which primes are sampled, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSchedule {
    /// Every prime `>= start`.
    From(u64),
    /// Every other prime `>= start`, beginning with the one at position `phase` (0 or 1).
    Alternate { start: u64, phase: usize },
}

impl PrimeSchedule {
    pub fn primes(&self) -> alloc::boxed::Box<dyn Iterator<Item = u64>> {
        match *self {
            PrimeSchedule::From(s) => alloc::boxed::Box::new(fp::primes_from(s)),
            PrimeSchedule::Alternate { start, phase } => {
                alloc::boxed::Box::new(fp::primes_from(start).skip(phase).step_by(2))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountConfig {
    /// Upper bound on enumerated echelon candidates per request.
    pub budget: u128,
    /// Parameter value substituted into parametric families.
    pub lambda: i64,
    /// Parameter values that must be avoided modulo every sampled prime.
    pub excluded: Vec<i64>,
    pub schedule: PrimeSchedule,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { budget: 10_000_000, lambda: 2, excluded: vec![0, 1], schedule: PrimeSchedule::From(5) }
    }
}

impl CountConfig {
    fn admissible(&self, p: u64) -> bool {
        let l = fp::reduce(self.lambda, p);
        self.excluded.iter().all(|&x| fp::reduce(x, p) != l)
    }
}

type Histogram = BTreeMap<Vec<usize>, u64>;

struct Level {
    vertex: usize,
    subspaces: Vec<Vec<Vec<u64>>>,
    /// images[s][k] = images of subspace `s`'s basis under the `k`-th outgoing arrow.
    images: Vec<Vec<Vec<Vec<u64>>>>,
    targets: Vec<usize>,
}

/// Counts subrepresentations of a fixed representation, caching the
/// enumeration over non-sink vertices.
///
/// Non-sink vertices are enumerated in topological order; a sink `t` only
/// needs the dimension `w_t` of the image of its incoming maps, after which the
/// number of admissible subspaces is a Gaussian binomial.
pub struct Counter {
    rep: Representation,
    order: Vec<usize>,
    sinks: Vec<usize>,
    nullity: Vec<usize>,
    cache: BTreeMap<Vec<usize>, Histogram>,
}

impl Counter {
    pub fn new(rep: Representation) -> Self {
        let q = rep.quiver().clone();
        let order: Vec<usize> = q.topological_order().unwrap().into_iter().filter(|&v| !q.is_sink(v)).collect();
        let sinks: Vec<usize> = (0..q.n()).filter(|&v| q.is_sink(v)).collect();
        let p = rep.field_char();
        let nullity = rep.mats().iter().map(|m| m.cols - m.rank(p)).collect();
        Counter { rep, order, sinks, nullity, cache: BTreeMap::new() }
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    fn check_range(&self, e: &[usize]) -> Result<()> {
        let dims = self.rep.dims();
        if e.len() != dims.len() || e.iter().zip(dims).any(|(a, b)| a > b) {
            return Err(Error::OutOfRange {
                e: e.iter().map(|&x| x as i64).collect(),
                dims: dims.iter().map(|&x| x as i64).collect(),
            });
        }
        Ok(())
    }

    /// Necessary condition `e_t >= e_s - dim ker M_a` along every arrow.
    pub fn feasible(&self, e: &[usize]) -> bool {
        self.rep
            .quiver()
            .arrows()
            .iter()
            .zip(&self.nullity)
            .all(|(&(s, t), &k)| e[t] + k >= e[s])
    }

    fn key(&self, e: &[usize]) -> Vec<usize> {
        self.order.iter().map(|&v| e[v]).collect()
    }

    /// Number of candidates the enumeration for `e` visits (0 if cached).
    pub fn cost(&self, e: &[usize]) -> u128 {
        if self.cache.contains_key(&self.key(e)) {
            return 0;
        }
        let p = self.rep.field_char();
        let dims = self.rep.dims();
        self.order
            .iter()
            .fold(1u128, |acc, &v| acc.saturating_mul(fp::gaussian_binomial_u128(dims[v], e[v], p)))
    }

    /// Number of subrepresentations with dimension vector `e`.
    pub fn count(&mut self, e: &[usize], budget: u128) -> Result<BigInt> {
        self.check_range(e)?;
        if !self.feasible(e) {
            return Ok(BigInt::zero());
        }
        let cost = self.cost(e);
        if cost > budget {
            return Err(Error::BudgetExceeded { needed: cost, budget });
        }
        let key = self.key(e);
        if !self.cache.contains_key(&key) {
            let h = self.enumerate(e);
            self.cache.insert(key.clone(), h);
        }
        let p = self.rep.field_char();
        let dims = self.rep.dims();
        let mut total = BigInt::zero();
        for (w, &n) in &self.cache[&key] {
            let mut term = BigInt::from(n);
            for (k, &t) in self.sinks.iter().enumerate() {
                if e[t] < w[k] {
                    term = BigInt::zero();
                    break;
                }
                term *= fp::gaussian_binomial(dims[t] - w[k], e[t] - w[k], p);
            }
            total += term;
        }
        Ok(total)
    }

    fn enumerate(&self, e: &[usize]) -> Histogram {
        let p = self.rep.field_char();
        let q = self.rep.quiver();
        let dims = self.rep.dims();
        let levels: Vec<Level> = self
            .order
            .iter()
            .map(|&v| {
                let outs: Vec<usize> = (0..q.arrows().len()).filter(|&a| q.arrows()[a].0 == v).collect();
                let subspaces = fp::subspaces(dims[v], e[v], p);
                let images = subspaces
                    .iter()
                    .map(|basis| {
                        outs.iter()
                            .map(|&a| basis.iter().map(|b| self.rep.mats()[a].mul_vec(b, p)).collect())
                            .collect()
                    })
                    .collect();
                Level { vertex: v, subspaces, images, targets: outs.iter().map(|&a| q.arrows()[a].1).collect() }
            })
            .collect();
        let mut ech: Vec<Echelon> = dims.iter().map(|&d| Echelon::new(d, p)).collect();
        let mut hist = Histogram::new();
        self.dfs(&levels, 0, &mut ech, &mut hist);
        hist
    }

    fn dfs(&self, levels: &[Level], depth: usize, ech: &mut Vec<Echelon>, hist: &mut Histogram) {
        if depth == levels.len() {
            let w: Vec<usize> = self.sinks.iter().map(|&t| ech[t].len()).collect();
            *hist.entry(w).or_insert(0) += 1;
            return;
        }
        let level = &levels[depth];
        let v = level.vertex;
        let p = self.rep.field_char();
        let required: Vec<Vec<u64>> = ech[v].basis().map(|r| r.to_vec()).collect();
        let saved: Vec<usize> = level.targets.iter().map(|&t| ech[t].len()).collect();
        for (s, basis) in level.subspaces.iter().enumerate() {
            if !required.is_empty() {
                let mut u = Echelon::new(self.rep.dims()[v], p);
                for b in basis {
                    u.insert(b);
                }
                if !required.iter().all(|w| u.contains(w)) {
                    continue;
                }
            }
            for (k, &t) in level.targets.iter().enumerate() {
                for img in &level.images[s][k] {
                    ech[t].insert(img);
                }
            }
            self.dfs(levels, depth + 1, ech, hist);
            for (k, &t) in level.targets.iter().enumerate() {
                ech[t].truncate(saved[k]);
            }
        }
    }
}

/// Euler characteristic of a quiver Grassmannian with its counting polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerChar {
    pub chi: BigInt,
    /// Coefficients of the counting polynomial in `q`, constant term first.
    pub poly: Vec<BigInt>,
    pub primes: Vec<u64>,
}

/// Shares per-prime counters across many dimension vectors of one module.
pub struct GrassmannianEngine<'f> {
    family: &'f ModuleFamily,
    config: CountConfig,
    primes: alloc::boxed::Box<dyn Iterator<Item = u64>>,
    counters: Vec<Counter>,
    spent: u128,
}

impl<'f> GrassmannianEngine<'f> {
    pub fn new(family: &'f ModuleFamily, config: CountConfig) -> Result<Self> {
        if family.fixed_prime().is_some() {
            return Err(Error::InvalidParameter(
                "Euler characteristics need a module given over every prime".into(),
            ));
        }
        let primes = config.schedule.primes();
        Ok(GrassmannianEngine { family, config, primes, counters: Vec::new(), spent: 0 })
    }

    fn counter(&mut self, idx: usize) -> Result<&mut Counter> {
        while self.counters.len() <= idx {
            let p = loop {
                let p = self.primes.next().expect("prime iterator is infinite");
                if !self.family.is_parametric() || self.config.admissible(p) {
                    break p;
                }
            };
            let rep = self.family.instantiate(p, self.config.lambda)?;
            self.counters.push(Counter::new(rep));
        }
        Ok(&mut self.counters[idx])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.family.dims()
    }

    /// Number of sampled primes needed for `e`.
    pub fn primes_needed(&self, e: &[usize]) -> usize {
        let d = self.family.dims();
        2 + e.iter().zip(&d).map(|(a, b)| a * (b - a)).sum::<usize>()
    }

    /// Enumeration cost of the not yet cached work for all of `es`.
    pub fn estimate(&mut self, es: &[Vec<usize>]) -> Result<u128> {
        let mut needed: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let first = self.counter(0)?;
        let order = first.order.clone();
        for e in es {
            if !self.counters[0].feasible(e) {
                continue;
            }
            let key: Vec<usize> = order.iter().map(|&v| e[v]).collect();
            let k = self.primes_needed(e);
            let slot = needed.entry(key).or_insert(0);
            *slot = (*slot).max(k);
        }
        let mut total = 0u128;
        for (key, k) in needed {
            let mut e = vec![0; self.family.dims().len()];
            for (i, &v) in order.iter().enumerate() {
                e[v] = key[i];
            }
            for idx in 0..k {
                total = total.saturating_add(self.counter(idx)?.cost(&e));
            }
        }
        Ok(total)
    }

    pub fn euler_char(&mut self, e: &[usize]) -> Result<EulerChar> {
        let dims = self.family.dims();
        if e.len() != dims.len() || e.iter().zip(&dims).any(|(a, b)| a > b) {
            return Err(Error::OutOfRange {
                e: e.iter().map(|&x| x as i64).collect(),
                dims: dims.iter().map(|&x| x as i64).collect(),
            });
        }
        let k = self.primes_needed(e);
        if !self.counter(0)?.feasible(e) {
            return Ok(EulerChar { chi: BigInt::zero(), poly: vec![], primes: vec![] });
        }
        let mut cost = 0u128;
        for idx in 0..k {
            cost = cost.saturating_add(self.counter(idx)?.cost(e));
        }
        if self.spent.saturating_add(cost) > self.config.budget {
            return Err(Error::BudgetExceeded { needed: self.spent.saturating_add(cost), budget: self.config.budget });
        }
        self.spent += cost;
        let mut points = Vec::with_capacity(k);
        for idx in 0..k {
            let c = self.counter(idx)?;
            let p = c.representation().field_char();
            let n = c.count(e, u128::MAX)?;
            points.push((p, n));
        }
        let poly = interpolate(&points[..k - 1]);
        let (px, py) = &points[k - 1];
        let bad = || Error::NonPolynomialCount(e.iter().map(|&x| x as i64).collect());
        if evaluate(&poly, &BigRational::from_integer(BigInt::from(*px))) != BigRational::from_integer(py.clone()) {
            return Err(bad());
        }
        if poly.iter().any(|c| !c.is_integer()) {
            return Err(bad());
        }
        let poly: Vec<BigInt> = poly.into_iter().map(|c| c.to_integer()).collect();
        let chi = poly.iter().fold(BigInt::zero(), |a, b| a + b);
        Ok(EulerChar { chi, poly, primes: points.iter().map(|x| x.0).collect() })
    }

    /// Point count at the `idx`-th sampled prime.
    pub fn count_at(&mut self, idx: usize, e: &[usize]) -> Result<(u64, BigInt)> {
        let budget = self.config.budget;
        let c = self.counter(idx)?;
        let p = c.representation().field_char();
        Ok((p, c.count(e, budget)?))
    }
}

/// Coefficients (constant first) of the polynomial through `points`.
fn interpolate(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from_integer(BigInt::from(*x))).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    let n = dd.len();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // coeffs = coeffs * (q - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n.max(1)];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] = &next[d + 1] + c;
            }
            next[d] = &next[d] - c * &xs[i];
        }
        next[0] = &next[0] + &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

fn evaluate(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Euler characteristic of `Gr_e` for one dimension vector.
pub fn euler_char(family: &ModuleFamily, e: &[usize], config: &CountConfig) -> Result<EulerChar> {
    GrassmannianEngine::new(family, config.clone())?.euler_char(e)
}

/// Exponent `eR + (d - e)R^t - d` of the term contributed by `Gr_e(M)`.
pub fn cc_exponent(q: &Quiver, d: &[i64], e: &[i64]) -> DimVector {
    let mut v: DimVector = d.iter().map(|&x| -x).collect();
    for &(s, t) in q.arrows() {
        v[t] += e[s];
        v[s] += d[t] - e[t];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::quiver::Preset;
    use crate::rep::{build_homogeneous, simple};

    #[test]
    fn interpolation_recovers_polynomial() {
        // q^2 + 3q + 1
        let pts: Vec<(u64, BigInt)> = [5u64, 7, 11].iter().map(|&x| (x, BigInt::from(x * x + 3 * x + 1))).collect();
        let c = interpolate(&pts);
        let ints: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
        assert_eq!(ints, vec![BigInt::from(1), BigInt::from(3), BigInt::from(1)]);
    }

    #[test]
    fn kronecker_regular_counts() {
        let f = build_homogeneous(Preset::Kronecker, 1).unwrap();
        let cfg = CountConfig::default();
        let mut eng = GrassmannianEngine::new(&f, cfg).unwrap();
        for idx in 0..3 {
            assert_eq!(eng.count_at(idx, &[1, 0]).unwrap().1, BigInt::zero());
            assert_eq!(eng.count_at(idx, &[0, 0]).unwrap().1, BigInt::one());
            assert_eq!(eng.count_at(idx, &[1, 1]).unwrap().1, BigInt::one());
        }
        assert_eq!(eng.euler_char(&[0, 1]).unwrap().chi, BigInt::one());
        assert_eq!(eng.euler_char(&[1, 1]).unwrap().chi, BigInt::one());
    }

    #[test]
    fn projective_line_has_chi_two() {
        // Gr_1 of a 2-dimensional space at a sink: P^1.
        let q = Quiver::new(1, vec![]).unwrap();
        let f = ModuleFamily::matrices(q, vec![2], vec![]).unwrap();
        let ec = euler_char(&f, &[1], &CountConfig::default()).unwrap();
        assert_eq!(ec.chi, BigInt::from(2));
        assert_eq!(ec.poly, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn budget_guard() {
        let f = build_homogeneous(Preset::Kronecker, 3).unwrap();
        let cfg = CountConfig { budget: 10, ..CountConfig::default() };
        let err = euler_char(&f, &[1, 1], &cfg).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn out_of_range() {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        let s = simple(&q, 0).unwrap();
        assert!(matches!(euler_char(&s, &[2, 0], &CountConfig::default()), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn exponent_rule() {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        // S_2: e = 0 gives x2^-1 * x1^2, e = d gives x2^-1.
        assert_eq!(cc_exponent(&q, &[0, 1], &[0, 0]), vec![2, -1]);
        assert_eq!(cc_exponent(&q, &[0, 1], &[0, 1]), vec![0, -1]);
    }
}
