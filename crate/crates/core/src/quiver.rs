//! Quivers, presets, the Euler form and the minimal imaginary root.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer vector indexed by vertices; negative entries count shifted projectives.
pub type DimVector = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    Kronecker,
    /// Alternating orientation of the cycle with `2n` vertices.
    ATilde(usize),
    /// Four-subspace orientation: arrows 2→1, 3→1, 4→1, 5→1.
    DTilde4,
}

impl Preset {
    /// Ranks of the non-homogeneous tubes.
    pub fn tube_ranks(&self) -> Vec<usize> {
        match self {
            Preset::Kronecker => vec![],
            Preset::ATilde(n) => vec![*n, *n],
            Preset::DTilde4 => vec![2, 2, 2],
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Kronecker => f.write_str("kronecker"),
            Preset::ATilde(n) => write!(f, "ann:{n}"),
            Preset::DTilde4 => f.write_str("d4"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kronecker" => Ok(Preset::Kronecker),
            "d4" => Ok(Preset::DTilde4),
            _ => {
                let n = s
                    .strip_prefix("ann:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidParameter(alloc::format!("unknown preset {s:?}")))?;
                if n < 2 {
                    return Err(Error::InvalidParameter("ann:<n> needs n >= 2".to_string()));
                }
                Ok(Preset::ATilde(n))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    preset: Option<Preset>,
}

impl Quiver {
    /// Builds a quiver from zero-based arrows; rejects oriented cycles.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::IndexOutOfRange(alloc::format!("arrow {s}->{t} with {n} vertices")));
            }
        }
        let q = Quiver { n, arrows, preset: None };
        q.topological_order()?;
        Ok(q)
    }

    pub fn from_preset(p: Preset) -> Result<Self> {
        let arrows = match p {
            Preset::Kronecker => vec![(0, 1), (0, 1)],
            Preset::DTilde4 => vec![(1, 0), (2, 0), (3, 0), (4, 0)],
            Preset::ATilde(n) => {
                if n < 2 {
                    return Err(Error::InvalidParameter("ann:<n> needs n >= 2".to_string()));
                }
                let m = 2 * n;
                let mut a = Vec::new();
                for k in 0..n {
                    let s = 2 * k;
                    a.push((s, s + 1));
                    a.push((s, (s + m - 1) % m));
                }
                a
            }
        };
        let n = match p {
            Preset::Kronecker => 2,
            Preset::DTilde4 => 5,
            Preset::ATilde(n) => 2 * n,
        };
        let mut q = Quiver::new(n, arrows)?;
        q.preset = Some(p);
        if p != Preset::Kronecker && !q.is_bipartite() {
            return Err(Error::InvalidParameter("preset orientation is not alternating".into()));
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn preset(&self) -> Option<Preset> {
        self.preset
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    pub fn is_bipartite(&self) -> bool {
        (0..self.n).all(|v| self.is_sink(v) || self.is_source(v))
    }

    /// Vertices ordered so that every arrow points forward (sources first).
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut out = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            out.push(v);
            let mut next = Vec::new();
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 && !next.contains(&t) {
                        next.push(t);
                    }
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            ready.extend(next);
        }
        if out.len() != self.n {
            return Err(Error::NotAcyclic);
        }
        Ok(out)
    }

    /// `r_ij` = number of arrows `i -> j`.
    pub fn ext_matrix(&self) -> Vec<Vec<i64>> {
        let mut r = vec![vec![0i64; self.n]; self.n];
        for &(s, t) in &self.arrows {
            r[s][t] += 1;
        }
        r
    }

    /// Skew-symmetric exchange matrix `b_ij = #(i->j) - #(j->i)`.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.ext_matrix();
        (0..self.n).map(|i| (0..self.n).map(|j| r[i][j] - r[j][i]).collect()).collect()
    }

    fn check(&self, d: &[i64]) -> Result<()> {
        if d.len() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: d.len() });
        }
        Ok(())
    }

    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check(d)?;
        self.check(e)?;
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        Ok(diag - off)
    }

    /// Minimal positive generator of the radical of the symmetrized Euler form.
    pub fn delta(&self) -> Result<DimVector> {
        let n = self.n;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut ei = vec![0; n];
                        let mut ej = vec![0; n];
                        ei[i] = 1;
                        ej[j] = 1;
                        let v = self.euler_form(&ei, &ej).unwrap() + self.euler_form(&ej, &ei).unwrap();
                        BigRational::from_integer(BigInt::from(v))
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for c in 0..n {
                m[row][c] = &m[row][c] * &inv;
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..n {
                        let sub = &f * &m[row][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        if free.len() != 1 {
            return Err(Error::NotAffine);
        }
        let f = free[0];
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        let mut l = BigInt::one();
        for x in &v {
            l = l.lcm(x.denom());
        }
        let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        for x in ints.iter_mut() {
            *x /= &g;
        }
        if ints.iter().any(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        if ints.iter().any(|x| !x.is_positive()) {
            return Err(Error::NotAffine);
        }
        Ok(ints.iter().map(|x| x.to_i64().unwrap()).collect())
    }

    /// `<delta, d>`: negative on preprojectives, positive on preinjectives.
    pub fn defect(&self, d: &[i64]) -> Result<i64> {
        let delta = self.delta()?;
        self.euler_form(&delta, d)
    }

    /// Serialization label for the preset, if any.
    pub fn preset_name(&self) -> Option<String> {
        self.preset.map(|p| p.to_string())
    }
}

/// Componentwise `d <= e`.
pub fn leq(d: &[i64], e: &[i64]) -> Result<bool> {
    if d.len() != e.len() {
        return Err(Error::RankMismatch { expected: d.len(), found: e.len() });
    }
    Ok(d.iter().zip(e).all(|(a, b)| a <= b))
}

/// Componentwise `d <= e` with `d != e`.
pub fn lt(d: &[i64], e: &[i64]) -> Result<bool> {
    Ok(leq(d, e)? && d != e)
}

pub fn unit(n: usize, i: usize) -> DimVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn add(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> DimVector {
    a.iter().map(|x| x * k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let k = Quiver::from_preset(Preset::Kronecker).unwrap();
        assert_eq!(k.arrows(), &[(0, 1), (0, 1)]);
        let d = Quiver::from_preset(Preset::DTilde4).unwrap();
        assert_eq!(d.arrows().iter().filter(|a| a.1 == 0).count(), 4);
        let a = Quiver::from_preset(Preset::ATilde(2)).unwrap();
        assert_eq!(a.n(), 4);
        assert_eq!((0..4).filter(|&v| a.is_source(v)).count(), 2);
        assert_eq!((0..4).filter(|&v| a.is_sink(v)).count(), 2);
        assert!(Quiver::from_preset(Preset::ATilde(1)).is_err());
        assert!("ann:1".parse::<Preset>().is_err());
        assert_eq!("ann:3".parse::<Preset>().unwrap(), Preset::ATilde(3));
    }

    #[test]
    fn euler_form_values() {
        let k = Quiver::from_preset(Preset::Kronecker).unwrap();
        assert_eq!(k.euler_form(&[1, 0], &[0, 1]).unwrap(), -2);
        let d = Quiver::from_preset(Preset::DTilde4).unwrap();
        for i in 0..5 {
            assert_eq!(d.euler_form(&unit(5, i), &unit(5, i)).unwrap(), 1);
        }
        assert_eq!(d.euler_form(&[2, 1, 1, 1, 1], &[2, 1, 1, 1, 1]).unwrap(), 0);
    }

    #[test]
    fn deltas_and_defect() {
        let k = Quiver::from_preset(Preset::Kronecker).unwrap();
        assert_eq!(k.delta().unwrap(), vec![1, 1]);
        assert_eq!(k.defect(&[0, 1]).unwrap(), -1);
        assert_eq!(k.defect(&[1, 0]).unwrap(), 1);
        assert_eq!(k.defect(&[1, 1]).unwrap(), 0);
        let d = Quiver::from_preset(Preset::DTilde4).unwrap();
        assert_eq!(d.delta().unwrap(), vec![2, 1, 1, 1, 1]);
        let a = Quiver::from_preset(Preset::ATilde(3)).unwrap();
        assert_eq!(a.delta().unwrap(), vec![1; 6]);
        let a2 = Quiver::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(a2.delta(), Err(Error::NotAffine));
    }

    #[test]
    fn cycles_rejected() {
        assert_eq!(Quiver::new(2, vec![(0, 1), (1, 0)]), Err(Error::NotAcyclic));
    }

    #[test]
    fn order() {
        assert!(leq(&[1, 0], &[1, 1]).unwrap() && lt(&[1, 0], &[1, 1]).unwrap());
        assert!(!leq(&[1, 0], &[0, 1]).unwrap() && !leq(&[0, 1], &[1, 0]).unwrap());
        assert!(lt(&[1, 1, 1, 1, 1], &[2, 1, 1, 1, 1]).unwrap());
    }
}
