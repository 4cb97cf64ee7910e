use crate::error::{Error, Result};
use crate::geometry::{CylinderTable, IfsSystem};
use crate::scalar::{log_sum_exp, Real};
use crate::symbolic::Word;

/// Root `s >= 0` of `sum_w D(w)^s = 1`, given `log D(w)` for each cover element.
///
/// `s -> log sum exp(s log D)` is strictly decreasing when all `D < 1`, so
/// bisection on `[0, s_hi]` always brackets the root.
pub fn moran_root<T: Real>(log_diameters: &[T], tol: T) -> Result<T> {
    if log_diameters.is_empty() {
        return Err(Error::NoCylinders);
    }
    let max_log = log_diameters
        .iter()
        .copied()
        .fold(T::neg_infinity(), T::max);
    if !(max_log < T::zero()) {
        return Err(Error::NotContracting {
            depth: 0,
            max_diameter: max_log.exp().as_f64(),
        });
    }
    if log_diameters.len() == 1 {
        return Ok(T::zero());
    }
    let mut scaled = vec![T::zero(); log_diameters.len()];
    let mut pressure = |s: T| {
        for (dst, &ld) in scaled.iter_mut().zip(log_diameters) {
            *dst = s * ld;
        }
        log_sum_exp(&scaled)
    };
    let mut lo = T::zero();
    let mut hi = T::one();
    while pressure(hi) > T::zero() {
        lo = hi;
        hi *= T::lit(2.0);
        if hi > T::lit(1e12) {
            return Err(Error::NoConvergence {
                iterations: 0,
                residual: hi.as_f64(),
            });
        }
    }
    while hi - lo > tol {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let p = pressure(mid);
        if p > T::zero() {
            lo = mid;
        } else if p < T::zero() {
            hi = mid;
        } else {
            return Ok(mid);
        }
    }
    Ok(lo + (hi - lo) / T::lit(2.0))
}

/// Moran root over the depth-`n` cylinders passing `filter` (all words when
/// `None`). Without a filter this is the attractor estimate.
pub fn moran_dimension<T: Real>(
    sys: &IfsSystem<T>,
    depth: usize,
    filter: Option<&dyn Fn(&Word) -> bool>,
    tol: T,
    cap: usize,
) -> Result<T> {
    let table = CylinderTable::build(sys, None, depth, cap)?;
    let logs: Vec<T> = match filter {
        None => table.log_diameters().to_vec(),
        Some(keep) => (0..table.len())
            .filter(|&i| keep(&table.word(i)))
            .map(|i| table.log_diameters()[i])
            .collect(),
    };
    moran_root(&logs, tol).map_err(|e| with_depth(e, depth))
}

pub(crate) fn with_depth(e: Error, depth: usize) -> Error {
    match e {
        Error::NotContracting { max_diameter, .. } => Error::NotContracting {
            depth,
            max_diameter,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::similarity_dimension;

    #[test]
    fn tiling_system_has_dimension_one() {
        let sys = IfsSystem::<f64>::linear(&[0.5, 0.5]).unwrap();
        for n in [1, 3, 7, 10] {
            let s = moran_dimension(&sys, n, None, 1e-10, 1 << 12).unwrap();
            assert!((s - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn half_third_matches_similarity_dimension() {
        let sys = IfsSystem::<f64>::linear(&[0.5, 1.0 / 3.0]).unwrap();
        let reference = similarity_dimension(&[0.5, 1.0 / 3.0]);
        for n in [1, 4, 8] {
            let s = moran_dimension(&sys, n, None, 1e-10, 1 << 12).unwrap();
            assert!((s - reference).abs() < 1e-9, "n={n}: {s} vs {reference}");
        }
    }

    #[test]
    fn two_constant_words_give_one_over_n() {
        let sys = IfsSystem::<f64>::linear(&[0.5, 0.5]).unwrap();
        for n in [2usize, 5, 9] {
            let keep = |w: &Word| w.symbols().iter().all(|&s| s == w.first());
            let s = moran_dimension(&sys, n, Some(&keep), 1e-12, 1 << 12).unwrap();
            assert!((s - 1.0 / n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn empty_and_single_covers() {
        assert_eq!(moran_root::<f64>(&[], 1e-10), Err(Error::NoCylinders));
        assert_eq!(moran_root(&[-3.0f64], 1e-10).unwrap(), 0.0);
        assert!(matches!(
            moran_root(&[0.0f64, -1.0], 1e-10),
            Err(Error::NotContracting { .. })
        ));
    }
}
