//! A Z-basis of the cluster algebra restricted to a box of dimension vectors,
//! and triangular expansion in it.
//!
//! Every element is `X` of an object of the cluster category: a rigid object
//! (cluster monomial), or `T + R` with `T` a non-rigid indecomposable of a tube
//! and `R` rigid with `Ext(T, R) = 0`. Elements are indexed by their (extended)
//! dimension vector, which is also the denominator vector of the value.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frieze::{FriezeTable, ZQCoord};
use crate::laurent::LaurentPoly;
use crate::quiver::{self, DimVector, Preset, Quiver};
use crate::rep::{regular_simple_dims, CountConfig};
use crate::tube::{wrap, TubeContext};

/// Largest number of lattice points a table box may have.
pub const MAX_BOX_POINTS: u128 = 1_000_000;

/// Cap on elimination steps in [`expand`].
pub const ELIMINATION_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBox {
    pub lower: DimVector,
    pub upper: DimVector,
}

impl DimBox {
    pub fn new(lower: DimVector, upper: DimVector) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::RankMismatch { expected: lower.len(), found: upper.len() });
        }
        if lower.iter().zip(&upper).any(|(a, b)| a > b) {
            return Err(Error::InvalidParameter(format!("empty box {lower:?}..{upper:?}")));
        }
        Ok(DimBox { lower, upper })
    }

    /// `[lo, hi]` in every coordinate.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn contains(&self, d: &[i64]) -> bool {
        d.len() == self.lower.len() && d.iter().zip(self.lower.iter().zip(&self.upper)).all(|(x, (a, b))| a <= x && x <= b)
    }

    pub fn points(&self) -> u128 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| (b - a + 1) as u128).product()
    }

    /// All lattice points, lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = DimVector> + '_ {
        let total = self.points() as usize;
        (0..total).map(move |mut k| {
            let mut d = vec![0; self.lower.len()];
            for c in (0..d.len()).rev() {
                let w = (self.upper[c] - self.lower[c] + 1) as usize;
                d[c] = self.lower[c] + (k % w) as i64;
                k /= w;
            }
            d
        })
    }

    /// The box with every lower bound moved down by `by`.
    pub fn extended_down(&self, by: i64) -> DimBox {
        DimBox { lower: self.lower.iter().map(|a| a - by).collect(), upper: self.upper.clone() }
    }
}

impl fmt::Display for DimBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lower.iter().zip(&self.upper).map(|(a, b)| format!("{a}:{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// An indecomposable object of the cluster category, named in the object-spec grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    /// `TP_i`, zero-based vertex.
    Shift(usize),
    /// A knitted transjective module.
    Transjective(ZQCoord),
    /// `E_{tube,socle}[len]` in a non-homogeneous tube.
    Regular { tube: usize, socle: usize, len: usize },
    /// `M(lambda)[len]` in a homogeneous tube.
    Homogeneous(usize),
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Shift(i) => write!(f, "TP:{}", i + 1),
            Summand::Transjective(c) => write!(f, "frieze:{},{}", c.slice, c.vertex + 1),
            Summand::Regular { tube, socle, len } => write!(f, "E:{tube},{socle},{len}"),
            Summand::Homogeneous(n) => write!(f, "delta:n={n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    /// Rigid, all summands transjective (including shifted projectives).
    TransjectiveMonomial,
    /// Rigid, all summands regular.
    RegularExceptionalSum,
    /// `E[m r]` (or `M[m]`) alone, at a multiple of `delta`.
    DeltaLevel,
    /// Rigid with both kinds of summands, or a non-rigid regular plus rigid part.
    Mixed,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::TransjectiveMonomial => "transjective-monomial",
            BasisKind::RegularExceptionalSum => "regular-exceptional-sum",
            BasisKind::DeltaLevel => "delta-level",
            BasisKind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub dim: DimVector,
    pub kind: BasisKind,
    pub value: LaurentPoly,
    pub summands: Vec<(Summand, u32)>,
}

impl BasisElement {
    /// `spec + spec^k + ...`, or `0` for the zero object.
    pub fn description(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(s, k)| if *k == 1 { format!("{s}") } else { format!("{s}^{k}") })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Place {
    Shift(usize),
    Preprojective { tau: Option<DimVector> },
    Preinjective { tau: DimVector },
    /// Tube 0 is the homogeneous tube.
    Regular { tube: usize, rank: usize, socle: usize, len: usize, tau: DimVector },
}

#[derive(Clone, Debug)]
struct Indec {
    summand: Summand,
    dim: DimVector,
    value: LaurentPoly,
    place: Place,
}

impl Indec {
    fn is_transjective(&self) -> bool {
        !matches!(self.place, Place::Regular { .. })
    }
}

/// `dim Hom(E_j[b], E_i[a])` in a standard tube of rank `r`.
pub fn tube_hom(r: usize, j: usize, b: usize, i: usize, a: usize) -> usize {
    let target = (j + b) as i64 - i as i64;
    (1..=a.min(b)).filter(|&t| (t as i64 - target).rem_euclid(r as i64) == 0).count()
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// `dim Ext^1(x, y)` for transjective modules, as `dim Hom(y, tau x)`.
fn ext_transjective(q: &Quiver, x: &Indec, y: &Indec) -> i64 {
    let (tau, tau_preproj) = match &x.place {
        Place::Preprojective { tau: None } => return 0,
        Place::Preprojective { tau: Some(t) } => (t, true),
        Place::Preinjective { tau } => (tau, false),
        _ => unreachable!(),
    };
    let y_preproj = matches!(y.place, Place::Preprojective { .. });
    let hom = q.euler_form(&y.dim, tau).expect("ranks agree");
    // no maps from preinjectives to preprojectives
    if !y_preproj && tau_preproj {
        0
    } else {
        pos(hom)
    }
}

/// Dimension of `Ext^1` in the cluster category between two indecomposables.
fn ext_cluster(q: &Quiver, a: &Indec, b: &Indec) -> i64 {
    use Place::*;
    match (&a.place, &b.place) {
        (Shift(_), Shift(_)) => 0,
        (Shift(i), _) => b.dim[*i],
        (_, Shift(i)) => a.dim[*i],
        (Regular { tube: t1, rank, socle: i, len: la, .. }, Regular { tube: t2, socle: j, len: lb, .. }) => {
            if t1 != t2 {
                return 0;
            }
            if *t1 == 0 {
                return (*la).min(*lb) as i64;
            }
            let r = *rank;
            let im1 = wrap(*i as i64 - 1, r);
            let jm1 = wrap(*j as i64 - 1, r);
            (tube_hom(r, *j, *lb, im1, *la) + tube_hom(r, *i, *la, jm1, *lb)) as i64
        }
        (Regular { tau, .. }, Preprojective { .. }) => q.euler_form(&b.dim, tau).unwrap(),
        (Preprojective { .. }, Regular { tau, .. }) => q.euler_form(&a.dim, tau).unwrap(),
        (Regular { .. }, Preinjective { tau }) => q.euler_form(&a.dim, tau).unwrap(),
        (Preinjective { tau }, Regular { .. }) => q.euler_form(&b.dim, tau).unwrap(),
        _ => ext_transjective(q, a, b) + ext_transjective(q, b, a),
    }
}

/// Basis elements for every dimension vector of a box that the generated
/// families reach.
#[derive(Clone, Debug)]
pub struct BasisTable {
    preset: Preset,
    quiver: Quiver,
    bounds: DimBox,
    elements: BTreeMap<DimVector, BasisElement>,
    shadowed: Vec<BasisElement>,
    indecs: Vec<Indec>,
    ext: Vec<Vec<i64>>,
}

struct Builder<'a> {
    bounds: &'a DimBox,
    indecs: Vec<Indec>,
    compat: Vec<Vec<bool>>,
    rigid: Vec<(DimVector, Vec<(usize, u32)>, LaurentPoly)>,
}

impl Builder<'_> {
    fn fits(&self, d: &[i64]) -> bool {
        self.bounds.contains(d)
    }

    fn dfs(&mut self, start: usize, chosen: &mut Vec<(usize, u32)>, dim: &mut DimVector, value: &LaurentPoly) {
        self.rigid.push((dim.clone(), chosen.clone(), value.clone()));
        for j in start..self.indecs.len() {
            if !self.compat[j][j] || !chosen.iter().all(|&(c, _)| self.compat[c][j]) {
                continue;
            }
            let step = self.indecs[j].dim.clone();
            let mut k = 0u32;
            let mut v = value.clone();
            loop {
                for (a, b) in dim.iter_mut().zip(&step) {
                    *a += b;
                }
                k += 1;
                if !self.fits(dim) {
                    for (a, b) in dim.iter_mut().zip(&step) {
                        *a -= b * k as i64;
                    }
                    break;
                }
                v = &v * &self.indecs[j].value;
                chosen.push((j, k));
                self.dfs(j + 1, chosen, dim, &v);
                chosen.pop();
            }
        }
    }
}

impl BasisTable {
    /// Builds the table on `bounds`. Raises `DuplicateDimVector` if two rigid
    /// objects, or a rigid object and a `T + R`, share a dimension vector.
    pub fn build(preset: Preset, bounds: DimBox, config: &CountConfig) -> Result<Self> {
        let q = Quiver::from_preset(preset)?;
        let n = q.n();
        if bounds.lower.len() != n {
            return Err(Error::RankMismatch { expected: n, found: bounds.lower.len() });
        }
        if bounds.points() > MAX_BOX_POINTS {
            return Err(Error::BudgetExceeded { needed: bounds.points(), budget: MAX_BOX_POINTS });
        }
        let up = &bounds.upper;
        let fits_up = |d: &[i64]| d.iter().zip(up).all(|(x, u)| x <= u);
        let mut indecs = Vec::new();

        for i in 0..n {
            if bounds.lower[i] < 0 {
                indecs.push(Indec {
                    summand: Summand::Shift(i),
                    dim: quiver::scale(&quiver::unit(n, i), -1),
                    value: LaurentPoly::var(n, i),
                    place: Place::Shift(i),
                });
            }
        }

        let frieze = knit_window(&q, up)?;
        for (c, e) in frieze.entries() {
            if c.slice == 0 || !fits_up(&e.dim) {
                continue;
            }
            let tau = frieze.get(ZQCoord { slice: c.slice - 1, vertex: c.vertex });
            let place = if c.slice > 0 {
                Place::Preprojective { tau: if c.slice == 1 { None } else { Some(tau.expect("knitted").dim.clone()) } }
            } else {
                match tau {
                    Some(t) => Place::Preinjective { tau: t.dim.clone() },
                    None => continue,
                }
            };
            indecs.push(Indec { summand: Summand::Transjective(*c), dim: e.dim.clone(), value: e.value.clone(), place });
        }

        let ranks = preset.tube_ranks();
        for (k, &r) in ranks.iter().enumerate() {
            let tube = k + 1;
            let simples: Vec<DimVector> =
                (1..=r).map(|s| regular_simple_dims(preset, tube, s)).collect::<Result<_>>()?;
            let dim_of = |socle: usize, len: usize| {
                let mut d = vec![0; n];
                for t in 0..len {
                    d = quiver::add(&d, &simples[wrap((socle + t) as i64, r) - 1]);
                }
                d
            };
            let mut cap = 1;
            while (1..=r).any(|s| fits_up(&dim_of(s, cap + 1))) {
                cap += 1;
            }
            let ctx = TubeContext::from_preset(preset, tube, cap, config)?;
            for socle in 1..=r {
                for len in 1..=cap {
                    let d = dim_of(socle, len);
                    if !fits_up(&d) {
                        continue;
                    }
                    indecs.push(Indec {
                        summand: Summand::Regular { tube, socle, len },
                        dim: d,
                        value: ctx.tube_variable(socle, len)?.clone(),
                        place: Place::Regular { tube, rank: r, socle, len, tau: dim_of(wrap(socle as i64 - 1, r), len) },
                    });
                }
            }
        }
        if ranks.is_empty() {
            let delta = q.delta()?;
            let mut cap = 0;
            while fits_up(&quiver::scale(&delta, cap as i64 + 1)) {
                cap += 1;
            }
            if cap > 0 {
                let ctx = TubeContext::homogeneous(preset, cap, config)?;
                for m in 1..=cap {
                    let d = quiver::scale(&delta, m as i64);
                    indecs.push(Indec {
                        summand: Summand::Homogeneous(m),
                        dim: d.clone(),
                        value: ctx.tube_variable(1, m)?.clone(),
                        place: Place::Regular { tube: 0, rank: 1, socle: 1, len: m, tau: d },
                    });
                }
            }
        }

        let ext: Vec<Vec<i64>> = indecs.iter().map(|a| indecs.iter().map(|b| ext_cluster(&q, a, b)).collect()).collect();
        let compat: Vec<Vec<bool>> = ext.iter().map(|row| row.iter().map(|&x| x == 0).collect()).collect();
        let mut b = Builder { bounds: &bounds, indecs, compat, rigid: Vec::new() };
        let mut dim = vec![0; n];
        b.dfs(0, &mut Vec::new(), &mut dim, &LaurentPoly::one(n));

        let mut elements: BTreeMap<DimVector, BasisElement> = BTreeMap::new();
        let indecs = &b.indecs;
        let summands_of = |chosen: &[(usize, u32)]| -> Vec<(Summand, u32)> {
            chosen.iter().map(|&(i, k)| (indecs[i].summand, k)).collect()
        };
        for (d, chosen, value) in &b.rigid {
            let trans = chosen.iter().filter(|(i, _)| indecs[*i].is_transjective()).count();
            let kind = if trans == chosen.len() {
                BasisKind::TransjectiveMonomial
            } else if trans == 0 {
                BasisKind::RegularExceptionalSum
            } else {
                BasisKind::Mixed
            };
            let el = BasisElement { dim: d.clone(), kind, value: value.clone(), summands: summands_of(chosen) };
            if elements.insert(d.clone(), el).is_some() {
                return Err(Error::DuplicateDimVector(d.clone()));
            }
        }
        let rigid_dims: BTreeSet<DimVector> = elements.keys().cloned().collect();

        let non_rigid: Vec<usize> = (0..indecs.len()).filter(|&i| !b.compat[i][i]).collect();
        // delta-levels first, so that m*delta holds E_{1,1}[m r_1] (or M[m])
        let mut order: Vec<usize> = non_rigid
            .iter()
            .copied()
            .filter(|&i| match indecs[i].summand {
                Summand::Regular { tube: 1, socle: 1, len } => len % ranks[0] == 0,
                Summand::Homogeneous(_) => true,
                _ => false,
            })
            .collect();
        let rest: Vec<usize> = non_rigid.iter().copied().filter(|i| !order.contains(i)).collect();
        order.extend(rest);
        let mut shadowed = Vec::new();
        for &t in &order {
            let tdim = &indecs[t].dim;
            for (rd, chosen, rvalue) in &b.rigid {
                if !chosen.iter().all(|&(c, _)| b.compat[t][c]) {
                    continue;
                }
                let d = quiver::add(tdim, rd);
                if !bounds.contains(&d) {
                    continue;
                }
                let mut summands = vec![(indecs[t].summand, 1)];
                summands.extend(summands_of(chosen));
                let delta_level = chosen.is_empty()
                    && match indecs[t].summand {
                        Summand::Regular { len, tube, .. } => len % ranks[tube - 1] == 0,
                        _ => true,
                    };
                let kind = if delta_level { BasisKind::DeltaLevel } else { BasisKind::Mixed };
                let el = BasisElement { dim: d.clone(), kind, value: &indecs[t].value * rvalue, summands };
                if rigid_dims.contains(&d) {
                    return Err(Error::DuplicateDimVector(d));
                }
                if elements.contains_key(&d) {
                    shadowed.push(el);
                } else {
                    elements.insert(d, el);
                }
            }
        }
        let indecs = b.indecs;
        Ok(BasisTable { preset, quiver: q, bounds, elements, shadowed, indecs, ext })
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn bounds(&self) -> &DimBox {
        &self.bounds
    }

    pub fn get(&self, d: &[i64]) -> Option<&BasisElement> {
        self.elements.get(d)
    }

    pub fn elements(&self) -> impl Iterator<Item = &BasisElement> {
        self.elements.values()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `T + R` objects that lost their dimension vector to an earlier one.
    pub fn shadowed(&self) -> &[BasisElement] {
        &self.shadowed
    }

    /// Indecomposables the table was generated from, with dimension vectors.
    pub fn indecomposables(&self) -> impl Iterator<Item = (Summand, &DimVector)> {
        self.indecs.iter().map(|x| (x.summand, &x.dim))
    }

    /// `dim Ext^1` in the cluster category between two of [`Self::indecomposables`].
    pub fn cluster_ext(&self, a: usize, b: usize) -> i64 {
        self.ext[a][b]
    }

    /// Box vectors with no element.
    pub fn missing(&self) -> Vec<DimVector> {
        self.bounds.iter().filter(|d| !self.elements.contains_key(d)).collect()
    }

    /// One line per element: `dim kind description :: value`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in self.elements.values() {
            let dims: Vec<String> = e.dim.iter().map(|x| format!("{x}")).collect();
            s.push_str(&format!("({}) {} {} :: {}\n", dims.join(","), e.kind, e.description(), e.value));
        }
        s
    }
}

/// Knits until a whole slice in each direction has left the region below `upper`,
/// plus one slice backward for translates.
fn knit_window(q: &Quiver, upper: &[i64]) -> Result<FriezeTable> {
    const MAX_SLICES: usize = 64;
    let fits = |d: &[i64]| d.iter().zip(upper).all(|(x, u)| x <= u);
    let mut t = crate::frieze::knit(q, 0, 0)?;
    let slice_fits = |t: &FriezeTable, s: i64| (0..q.n()).any(|v| t.get(ZQCoord { slice: s, vertex: v }).is_some_and(|e| fits(&e.dim)));
    loop {
        t.knit_forward()?;
        if !slice_fits(&t, t.forward() as i64) || t.forward() >= MAX_SLICES {
            break;
        }
    }
    loop {
        t.knit_backward()?;
        if !slice_fits(&t, -(t.backward() as i64)) || t.backward() >= MAX_SLICES {
            break;
        }
    }
    t.knit_backward()?;
    Ok(t)
}

/// Coefficients with their basis indices, in elimination order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    pub terms: Vec<(BigInt, DimVector)>,
}

impl Expansion {
    pub fn coefficient(&self, d: &[i64]) -> BigInt {
        self.terms.iter().find(|(_, e)| e == d).map(|(c, _)| c.clone()).unwrap_or_default()
    }

    /// The first (greatest) term.
    pub fn leading(&self) -> Option<&(BigInt, DimVector)> {
        self.terms.first()
    }

    /// `sum c_d table[d]`.
    pub fn reconstruct(&self, t: &BasisTable) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(t.quiver.n());
        for (c, d) in &self.terms {
            let e = t.get(d).ok_or_else(|| Error::MissingBasisElement(d.clone()))?;
            out = &out + &e.value.scale(c);
        }
        Ok(out)
    }

    /// True if every term other than `top` is indexed strictly below `top`.
    pub fn strictly_below(&self, top: &[i64]) -> bool {
        self.terms.iter().all(|(_, d)| d.as_slice() != top && quiver::lt(d, top).unwrap_or(false))
    }
}

/// Triangular elimination against an arbitrary unitriangular family: the
/// element at `d` must have denominator vector `d` and numerator constant term 1.
pub fn expand_with<F>(p: &LaurentPoly, mut lookup: F) -> Result<Expansion>
where
    F: FnMut(&[i64]) -> Result<LaurentPoly>,
{
    let mut rest = p.clone();
    let mut out = Expansion::default();
    for _ in 0..ELIMINATION_CAP {
        let Some(d) = rest
            .terms()
            .map(|(e, _)| e.iter().map(|&x| -(x as i64)).collect::<DimVector>())
            .max_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)))
        else {
            return Ok(out);
        };
        let exp: Vec<i32> = d.iter().map(|&x| -x as i32).collect();
        let c = rest.coeff(&exp);
        let b = lookup(&d)?;
        rest = &rest - &b.scale(&c);
        out.terms.push((c, d));
    }
    Err(Error::NonTerminating(ELIMINATION_CAP))
}

pub fn expand(p: &LaurentPoly, t: &BasisTable) -> Result<Expansion> {
    expand_with(p, |d| t.get(d).map(|e| e.value.clone()).ok_or_else(|| Error::MissingBasisElement(d.to_vec())))
}

/// `prod_i X_{S_i}^{d_i^+} x_i^{d_i^-}`.
pub fn monomial(t: &BasisTable, d: &[i64]) -> Result<LaurentPoly> {
    let n = t.quiver.n();
    if d.len() != n {
        return Err(Error::RankMismatch { expected: n, found: d.len() });
    }
    let mut out = LaurentPoly::one(n);
    for (i, &di) in d.iter().enumerate() {
        if di > 0 {
            let e = quiver::unit(n, i);
            let s = t.get(&e).ok_or(Error::MissingBasisElement(e))?;
            out = &out * &s.value.pow(di as u32);
        } else if di < 0 {
            out = &out * &LaurentPoly::var(n, i).pow((-di) as u32);
        }
    }
    Ok(out)
}

/// Expansion in the monomials `prod X_{S_i}^{d_i^+} x_i^{d_i^-}`, which writes
/// `p` as an integer polynomial in the `X_{S_i}` and `x_i`.
pub fn expand_in_monomials(p: &LaurentPoly, t: &BasisTable) -> Result<Expansion> {
    expand_with(p, |d| monomial(t, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialReport {
    pub d: DimVector,
    pub expansion: Expansion,
    pub leading_is_one: bool,
    pub lower_terms_below: bool,
}

impl MonomialReport {
    pub fn ok(&self) -> bool {
        self.leading_is_one && self.lower_terms_below
    }
}

/// Expands the monomial at `d` and checks it is `table[d]` plus terms indexed below `d`.
pub fn verify_monomial_triangularity(t: &BasisTable, d: &[i64]) -> Result<MonomialReport> {
    let expansion = expand(&monomial(t, d)?, t)?;
    let leading_is_one = expansion.coefficient(d).is_one();
    let lower = Expansion { terms: expansion.terms.iter().filter(|(_, e)| e.as_slice() != d).cloned().collect() };
    let lower_terms_below = lower.strictly_below(d) && !expansion.terms.iter().any(|(c, _)| c.is_zero());
    Ok(MonomialReport { d: d.to_vec(), expansion, leading_is_one, lower_terms_below })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccmap::cc_variable;
    use crate::rep::simple;

    fn kronecker(lo: i64, hi: i64) -> BasisTable {
        BasisTable::build(Preset::Kronecker, DimBox::cube(2, lo, hi).unwrap(), &CountConfig::default()).unwrap()
    }

    #[test]
    fn hammock() {
        // rank 2: Hom(E_1[2], E_1[2]) = 1, Hom(E_2, E_1[2]) = 0, Hom(E_1[2], E_2) = 1
        assert_eq!(tube_hom(2, 1, 2, 1, 2), 1);
        assert_eq!(tube_hom(2, 2, 1, 1, 2), 0);
        assert_eq!(tube_hom(2, 1, 2, 2, 1), 1);
        assert_eq!(tube_hom(1, 1, 3, 1, 2), 2);
    }

    #[test]
    fn kronecker_box_is_covered() {
        let t = kronecker(-2, 2);
        assert!(t.missing().is_empty(), "{:?}", t.missing());
        assert_eq!(t.get(&[-1, 0]).unwrap().value, LaurentPoly::var(2, 0));
        assert_eq!(t.get(&[-2, -1]).unwrap().value, LaurentPoly::parse("x1^2*x2", 2).unwrap());
        let s2 = cc_variable(&simple(t.quiver(), 1).unwrap(), &CountConfig::default()).unwrap();
        assert_eq!(t.get(&[0, 1]).unwrap().value, s2);
        for m in 1..=2 {
            let e = t.get(&[m, m]).unwrap();
            assert_eq!(e.kind, BasisKind::DeltaLevel);
            assert_eq!(e.summands, vec![(Summand::Homogeneous(m as usize), 1)]);
        }
        for e in t.elements() {
            assert_eq!(e.value.denominator_vector().unwrap(), e.dim, "{}", e.description());
            assert!(e.value.numerator_constant_term().unwrap().is_one());
        }
    }

    #[test]
    fn expansions() {
        let t = kronecker(-3, 3);
        let v = &t.get(&[0, 1]).unwrap().value;
        assert_eq!(expand(v, &t).unwrap().terms, vec![(BigInt::one(), vec![0, 1])]);
        let d = &t.get(&[1, 1]).unwrap().value;
        let e = expand(&(d * d), &t).unwrap();
        assert_eq!(e.leading().unwrap(), &(BigInt::one(), vec![2, 2]));
        assert!(e.terms[1..].iter().all(|(_, x)| quiver::lt(x, &[2, 2]).unwrap()));
        assert_eq!(e.reconstruct(&t).unwrap(), d * d);
        let p = v * d;
        let e = expand(&p, &t).unwrap();
        assert_eq!(e.leading().unwrap(), &(BigInt::one(), vec![1, 2]));
        assert_eq!(e.reconstruct(&t).unwrap(), p);
    }

    #[test]
    fn monomials() {
        let t = kronecker(-3, 3);
        for d in [[1, 0], [0, 1], [-1, 0], [1, 1], [2, -1], [-2, 2]] {
            let r = verify_monomial_triangularity(&t, &d).unwrap();
            assert!(r.ok(), "{d:?}: {:?}", r.expansion);
        }
        assert_eq!(verify_monomial_triangularity(&t, &[-1, 0]).unwrap().expansion.terms, vec![(BigInt::one(), vec![-1, 0])]);
    }

    #[test]
    fn missing_and_cap() {
        let t = kronecker(-1, 1);
        let p = LaurentPoly::x_pow(2, &[3, 0]);
        assert_eq!(expand(&p, &t), Err(Error::MissingBasisElement(vec![-3, 0])));
        assert!(DimBox::cube(2, 1, 0).is_err());
    }
}
