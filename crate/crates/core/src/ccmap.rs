//! The Caldero-Chapoton map on objects of the cluster category.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::DimVector;
use crate::rep::{cc_exponent, CountConfig, GrassmannianEngine, ModuleFamily};

/// A module together with multiplicities of shifted projectives `TP_i`.
#[derive(Clone, Debug)]
pub struct DecoratedObject {
    n: usize,
    module: Option<ModuleFamily>,
    shifts: Vec<u32>,
}

impl DecoratedObject {
    /// Rejects objects with `Hom(P_i, M) = M_i != 0` while `TP_i` is present.
    pub fn new(n: usize, module: Option<ModuleFamily>, shifts: Vec<u32>) -> Result<Self> {
        if shifts.len() != n {
            return Err(Error::RankMismatch { expected: n, found: shifts.len() });
        }
        if let Some(m) = &module {
            let d = m.dims();
            if d.len() != n {
                return Err(Error::RankMismatch { expected: n, found: d.len() });
            }
            if let Some(i) = (0..n).find(|&i| shifts[i] > 0 && d[i] > 0) {
                return Err(Error::IllFormedObject(format!(
                    "TP_{} together with a module supported at vertex {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(DecoratedObject { n, module, shifts })
    }

    pub fn shift(n: usize, i: usize) -> Self {
        let mut s = vec![0; n];
        s[i] = 1;
        DecoratedObject { n, module: None, shifts: s }
    }

    pub fn zero(n: usize) -> Self {
        DecoratedObject { n, module: None, shifts: vec![0; n] }
    }

    pub fn module(m: ModuleFamily) -> Self {
        let n = m.dims().len();
        DecoratedObject { n, module: Some(m), shifts: vec![0; n] }
    }

    /// `dim(module) - (s_1, ..., s_n)`.
    pub fn extended_dim(&self) -> DimVector {
        let mut d: DimVector = match &self.module {
            Some(m) => m.dim_vector(),
            None => vec![0; self.n],
        };
        for (x, &s) in d.iter_mut().zip(&self.shifts) {
            *x -= s as i64;
        }
        d
    }
}

/// `X_M = sum_e chi(Gr_e M) x^{eR + (d-e)R^t - d}`.
pub fn cc_variable(m: &ModuleFamily, config: &CountConfig) -> Result<LaurentPoly> {
    let q = m.quiver().clone();
    let dims = m.dims();
    let d: DimVector = dims.iter().map(|&x| x as i64).collect();
    let mut es: Vec<Vec<usize>> = vec![vec![]];
    for &di in &dims {
        es = es
            .into_iter()
            .flat_map(|e| (0..=di).map(move |k| {
                let mut e2 = e.clone();
                e2.push(k);
                e2
            }))
            .collect();
    }
    let mut engine = GrassmannianEngine::new(m, config.clone())?;
    let cost = engine.estimate(&es)?;
    if cost > config.budget {
        return Err(Error::BudgetExceeded { needed: cost, budget: config.budget });
    }
    let mut out = LaurentPoly::zero(q.n());
    for e in &es {
        let chi = engine.euler_char(e)?.chi;
        if chi.is_zero() {
            continue;
        }
        let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        let exp = cc_exponent(&q, &d, &ei);
        out = &out + &LaurentPoly::x_pow(q.n(), &exp).scale(&chi);
    }
    Ok(out)
}

/// `X_M * prod_i x_i^{s_i}`.
pub fn cc_object(o: &DecoratedObject, config: &CountConfig) -> Result<LaurentPoly> {
    let base = match &o.module {
        Some(m) => cc_variable(m, config)?,
        None => LaurentPoly::one(o.n),
    };
    let s: Vec<i64> = o.shifts.iter().map(|&x| x as i64).collect();
    Ok(&base * &LaurentPoly::x_pow(o.n, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Preset, Quiver};
    use crate::rep::{build_homogeneous, simple};

    fn lp(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn kronecker_values() {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        let cfg = CountConfig::default();
        let s2 = cc_variable(&simple(&q, 1).unwrap(), &cfg).unwrap();
        assert_eq!(s2, lp("x1^2*x2^-1 + x2^-1", 2));
        let m = cc_variable(&build_homogeneous(Preset::Kronecker, 1).unwrap(), &cfg).unwrap();
        assert_eq!(m, lp("x1*x2^-1 + x1^-1*x2 + x1^-1*x2^-1", 2));
        assert_eq!(&m + &m, lp("2*x1*x2^-1 + 2*x1^-1*x2 + 2*x1^-1*x2^-1", 2));
    }

    #[test]
    fn objects() {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        let cfg = CountConfig::default();
        assert_eq!(cc_object(&DecoratedObject::shift(2, 0), &cfg).unwrap(), lp("x1", 2));
        assert!(cc_object(&DecoratedObject::zero(2), &cfg).unwrap().is_one());
        let o = DecoratedObject::new(2, Some(simple(&q, 1).unwrap()), vec![1, 0]).unwrap();
        assert_eq!(o.extended_dim(), vec![-1, 1]);
        assert_eq!(cc_object(&o, &cfg).unwrap(), lp("x1^3*x2^-1 + x1*x2^-1", 2));
        assert!(DecoratedObject::new(2, Some(simple(&q, 1).unwrap()), vec![0, 1]).is_err());
    }
}
