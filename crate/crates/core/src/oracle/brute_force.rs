use crate::error::{Error, Result};
use crate::geometry::{IfsSystem, Potential, ProjectedPotential};
use crate::scalar::Real;
use crate::symbolic::birkhoff_sum;

const MAX_WORDS: usize = 8;
const MIN_STEP: f64 = 0.01;
const MAX_GRID_POINTS: u128 = 50_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Grid search of `max H(nu) / L(nu)` over exactly feasible measures on the
/// words of length `n`.
///
/// All but two coordinates run over the simplex grid with spacing `step`; the
/// remaining pair (an argmax and an argmin of `phi`) is then fixed by total
/// mass and `sum nu phi = n alpha`. Every candidate is feasible, so the result
/// never exceeds the true optimum.
pub fn brute_force_ratio<T: Real>(
    sys: &IfsSystem<T>,
    potential: &Potential<T>,
    alpha: T,
    n: usize,
    grid_step: T,
) -> Result<T> {
    let alphabet = sys.alphabet();
    let count = alphabet.checked_word_count(n, MAX_WORDS).map_err(|_| {
        Error::OracleTooLarge(format!("{}^{n} words exceeds {MAX_WORDS}", alphabet.size()))
    })?;
    if !(grid_step >= T::lit(MIN_STEP)) || grid_step > T::one() {
        return Err(Error::OracleTooLarge(format!(
            "grid step {grid_step} must lie in [{MIN_STEP}, 1]"
        )));
    }
    let steps = (T::one() / grid_step)
        .round()
        .to_usize()
        .unwrap_or(0)
        .max(1);
    // Free coordinates plus one slack part for the pivot pair.
    let points = binomial((steps + count - 2) as u128, (count - 2) as u128);
    if points > MAX_GRID_POINTS {
        return Err(Error::OracleTooLarge(format!("{points} grid points")));
    }

    let f = ProjectedPotential::new(sys, potential);
    let mut neg_log_d = Vec::with_capacity(count);
    let mut phi = Vec::with_capacity(count);
    for w in alphabet.words(n, MAX_WORDS)? {
        neg_log_d.push(-sys.cylinder(w.symbols()).1.ln());
        phi.push(birkhoff_sum(&f, w.symbols()));
    }
    let target = T::from_usize_lossy(n) * alpha;
    let k = T::from_usize_lossy(steps);
    let hi = (0..count)
        .max_by(|&a, &b| phi[a].partial_cmp(&phi[b]).unwrap())
        .unwrap();
    let lo = (0..count)
        .min_by(|&a, &b| phi[a].partial_cmp(&phi[b]).unwrap())
        .unwrap();
    let spread = phi[hi] - phi[lo];
    let scale = T::one().max(phi[hi].abs()).max(phi[lo].abs());
    let free: Vec<usize> = (0..count).filter(|&i| i != hi && i != lo).collect();

    let mut best: Option<T> = None;
    let mut parts = vec![0usize; free.len() + 1];
    let mut p = vec![T::zero(); count];
    let mut visit = |parts: &[usize]| {
        let mut mass = T::zero();
        let mut constraint = T::zero();
        for (slot, &i) in free.iter().enumerate() {
            p[i] = T::from_usize_lossy(parts[slot]) / k;
            mass += p[i];
            constraint += p[i] * phi[i];
        }
        let rest = T::one() - mass;
        let need = target - constraint;
        if spread > T::tol(1e-14) * scale {
            let p_hi = (need - rest * phi[lo]) / spread;
            if p_hi < -T::tol(1e-12) || p_hi > rest + T::tol(1e-12) {
                return;
            }
            let p_hi = p_hi.max(T::zero()).min(rest);
            p[hi] = p_hi;
            p[lo] = rest - p_hi;
        } else {
            if (need - rest * phi[hi]).abs() > T::tol(1e-12) * scale {
                return;
            }
            p[hi] = rest;
        }
        let mut lyap = T::zero();
        let mut h = T::zero();
        for i in 0..count {
            if p[i] > T::zero() {
                lyap += p[i] * neg_log_d[i];
                h -= p[i] * p[i].ln();
            }
        }
        if lyap > T::zero() {
            let r = h / lyap;
            best = Some(best.map_or(r, |b: T| b.max(r)));
        }
    };
    if free.is_empty() {
        visit(&[]);
    } else {
        compositions(steps, 0, &mut parts, &mut visit);
    }

    best.ok_or(Error::Infeasible {
        alpha: alpha.as_f64(),
        depth: n,
        lo: (phi[lo] / T::from_usize_lossy(n)).as_f64(),
        hi: (phi[hi] / T::from_usize_lossy(n)).as_f64(),
    })
}

/// Visits every way of writing `remaining` as an ordered sum over `parts[at..]`.
fn compositions(
    remaining: usize,
    at: usize,
    parts: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if at + 1 == parts.len() {
        parts[at] = remaining;
        visit(parts);
        return;
    }
    for c in 0..=remaining {
        parts[at] = c;
        compositions(remaining - c, at + 1, parts, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> (IfsSystem<f64>, Potential<f64>) {
        (
            IfsSystem::linear(&[0.5, 0.5]).unwrap(),
            Potential::FirstSymbol(vec![1.0, 0.0]),
        )
    }

    #[test]
    fn one_block_symmetric_point() {
        let (sys, pot) = coin();
        let v = brute_force_ratio(&sys, &pot, 0.5, 1, 0.01).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_blocks_approach_closed_form_from_below() {
        let (sys, pot) = coin();
        let v = brute_force_ratio(&sys, &pot, 0.3, 2, 0.01).unwrap();
        assert!(v <= 0.881291 + 1e-9 && v > 0.87, "{v}");
    }

    #[test]
    fn dirac_corner() {
        let (sys, pot) = coin();
        assert_eq!(brute_force_ratio(&sys, &pot, 1.0, 2, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn refuses_large_instances() {
        let (sys, pot) = coin();
        assert!(matches!(
            brute_force_ratio(&sys, &pot, 0.5, 4, 0.01),
            Err(Error::OracleTooLarge(_))
        ));
        assert!(brute_force_ratio(&sys, &pot, 0.5, 3, 0.05).is_ok());
        assert!(matches!(
            brute_force_ratio(&sys, &pot, 0.5, 1, 0.001),
            Err(Error::OracleTooLarge(_))
        ));
    }
}
