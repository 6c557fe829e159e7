//! Knitting the transjective component on ZQ.
//!
//! Slice 0 holds the shifted projectives `TP_i` with value `x_i`, slice 1 the
//! projectives, positive slices the preprojectives and negative slices the
//! preinjectives. The mesh ending at `(m, i)` starts at `tau(m, i) = (m-1, i)`
//! and has middle terms `(m, j)` for each arrow `i -> j` and `(m-1, j)` for
//! each arrow `j -> i`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::{DimVector, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZQCoord {
    pub slice: i64,
    /// Zero-based vertex.
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriezeEntry {
    pub dim: DimVector,
    pub value: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct FriezeTable {
    quiver: Quiver,
    entries: BTreeMap<ZQCoord, FriezeEntry>,
    forward: usize,
    backward: usize,
}

impl FriezeTable {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn forward(&self) -> usize {
        self.forward
    }

    pub fn backward(&self) -> usize {
        self.backward
    }

    pub fn get(&self, c: ZQCoord) -> Option<&FriezeEntry> {
        self.entries.get(&c)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ZQCoord, &FriezeEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Middle terms of the mesh ending at `c`, with multiplicity.
    pub fn middle(&self, c: ZQCoord) -> Vec<ZQCoord> {
        let mut out = Vec::new();
        for &(s, t) in self.quiver.arrows() {
            if s == c.vertex {
                out.push(ZQCoord { slice: c.slice, vertex: t });
            }
            if t == c.vertex {
                out.push(ZQCoord { slice: c.slice - 1, vertex: s });
            }
        }
        out
    }

    pub fn variable_by_dimvec(&self, d: &[i64]) -> Result<&LaurentPoly> {
        self.entries
            .values()
            .find(|e| e.dim == d)
            .map(|e| &e.value)
            .ok_or_else(|| Error::NotKnitted(d.to_vec()))
    }

    /// Extends the window forward by one slice.
    pub fn knit_forward(&mut self) -> Result<()> {
        let m = self.forward as i64 + 1;
        let mut order = self.quiver.topological_order()?;
        order.reverse();
        for v in order {
            let c = ZQCoord { slice: m, vertex: v };
            let e = self.solve(c, ZQCoord { slice: m - 1, vertex: v })?;
            self.entries.insert(c, e);
        }
        self.forward += 1;
        Ok(())
    }

    /// Extends the window backward by one slice.
    pub fn knit_backward(&mut self) -> Result<()> {
        let m = -(self.backward as i64) - 1;
        for v in self.quiver.topological_order()? {
            let c = ZQCoord { slice: m + 1, vertex: v };
            let e = self.solve(c, c)?;
            self.entries.insert(ZQCoord { slice: m, vertex: v }, e);
        }
        self.backward += 1;
        Ok(())
    }

    /// Solves the mesh ending at `end` for its unknown corner, given the
    /// other corner `known` (either `end` or `tau(end)`).
    fn solve(&self, end: ZQCoord, known: ZQCoord) -> Result<FriezeEntry> {
        let n = self.quiver.n();
        let mut prod = LaurentPoly::one(n);
        let mut dsum = vec![0i64; n];
        for mc in self.middle(end) {
            let e = self.entries.get(&mc).ok_or_else(|| Error::NotKnitted(vec![mc.slice, mc.vertex as i64 + 1]))?;
            prod = &prod * &e.value;
            for (a, b) in dsum.iter_mut().zip(&e.dim) {
                *a += b;
            }
        }
        let other = &self.entries[&known];
        let value = (&prod + &LaurentPoly::one(n)).div_exact(&other.value)?;
        let dim = dsum.iter().zip(&other.dim).map(|(s, o)| (*s).max(0) - o).collect();
        Ok(FriezeEntry { dim, value })
    }

    /// Verifies the mesh relation at every mesh inside the window.
    pub fn check_meshes(&self) -> bool {
        self.entries.keys().all(|&c| {
            let tau = ZQCoord { slice: c.slice - 1, vertex: c.vertex };
            let Some(t) = self.entries.get(&tau) else { return true };
            let mids = self.middle(c);
            if mids.iter().any(|m| !self.entries.contains_key(m)) {
                return true;
            }
            let n = self.quiver.n();
            let prod = mids.iter().fold(LaurentPoly::one(n), |acc, m| &acc * &self.entries[m].value);
            &self.entries[&c].value * &t.value == &prod + &LaurentPoly::one(n)
        })
    }

    /// One line per coordinate: `slice vertex dimvec :: laurent`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (c, e) in &self.entries {
            let dims: Vec<String> = e.dim.iter().map(|x| alloc::format!("{x}")).collect();
            s.push_str(&alloc::format!("{} {} ({}) :: {}\n", c.slice, c.vertex + 1, dims.join(","), e.value));
        }
        s
    }
}

/// Knits slices `-backward..=forward`.
pub fn knit(q: &Quiver, forward: usize, backward: usize) -> Result<FriezeTable> {
    let n = q.n();
    let mut entries = BTreeMap::new();
    for i in 0..n {
        let mut d = vec![0; n];
        d[i] = -1;
        entries.insert(ZQCoord { slice: 0, vertex: i }, FriezeEntry { dim: d, value: LaurentPoly::var(n, i) });
    }
    let mut t = FriezeTable { quiver: q.clone(), entries, forward: 0, backward: 0 };
    for _ in 0..forward {
        t.knit_forward()?;
    }
    for _ in 0..backward {
        t.knit_backward()?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Preset;

    #[test]
    fn kronecker_first_slices() {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        let t = knit(&q, 2, 2).unwrap();
        let p2 = t.get(ZQCoord { slice: 1, vertex: 1 }).unwrap();
        assert_eq!(p2.dim, vec![0, 1]);
        assert_eq!(p2.value, LaurentPoly::parse("x1^2*x2^-1 + x2^-1", 2).unwrap());
        let p1 = t.get(ZQCoord { slice: 1, vertex: 0 }).unwrap();
        assert_eq!(p1.dim, vec![1, 2]);
        assert_eq!(p1.value.denominator_vector().unwrap(), vec![1, 2]);
        assert_eq!(t.get(ZQCoord { slice: -1, vertex: 0 }).unwrap().dim, vec![1, 0]);
        assert_eq!(t.get(ZQCoord { slice: -1, vertex: 1 }).unwrap().dim, vec![2, 1]);
        assert_eq!(t.variable_by_dimvec(&[-1, 0]).unwrap(), &LaurentPoly::var(2, 0));
        assert!(matches!(t.variable_by_dimvec(&[9, 9]), Err(Error::NotKnitted(_))));
        assert!(t.check_meshes());
    }

    #[test]
    fn dims_are_denominators() {
        for p in [Preset::Kronecker, Preset::DTilde4, Preset::ATilde(2)] {
            let q = Quiver::from_preset(p).unwrap();
            let t = knit(&q, 3, 3).unwrap();
            for (_, e) in t.entries() {
                assert_eq!(e.value.denominator_vector().unwrap(), e.dim);
            }
        }
    }
}
