//! Derivative-free minimization of the five-list cover polynomial.
//!
//! A coarse grid scan over the feasible simplex seeds a Nelder-Mead
//! refinement; constraints are handled by rejection (infinite objective
//! outside the domain). Everything is deterministic for fixed parameters,
//! and the reported minimum is re-evaluated exactly at a nearby rational
//! point.

use crate::error::{Error, Result};
use crate::formulas::{
    theorem2_reduced_value, theorem2_value, theorem2_reduced_value_f64, theorem2_value_f64,
    AlphaVector,
};
use num::{BigInt, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizeMode {
    /// Minimize over all five fractions (a5 eliminated via the sum).
    Full,
    /// Minimize the two-variable polynomial in (a4, a5).
    Reduced,
}

impl std::str::FromStr for OptimizeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(OptimizeMode::Full),
            "reduced" => Ok(OptimizeMode::Reduced),
            other => Err(Error::InvalidParams(format!("unknown optimize mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub mode: OptimizeMode,
    pub value: f64,
    pub alpha: [f64; 5],
    /// Exact value of the polynomial at `exact_alpha`, a rational point
    /// snapped to the float argmin.
    pub exact_value: BigRational,
    pub exact_alpha: [BigRational; 5],
    pub grid_evaluations: u64,
}

fn reduced_feasible(x: &[f64]) -> bool {
    let (s, t) = (x[0], x[1]);
    s >= 0.0 && t >= 0.0 && 4.0 * s <= 1.0 && s + t <= 1.0
}

fn full_feasible(x: &[f64]) -> bool {
    let a5 = 1.0 - x.iter().sum::<f64>();
    x.iter().all(|&v| v >= 0.0) && a5 >= -1e-12 && 4.0 * x[3] <= 1.0
}

fn reduced_objective(x: &[f64]) -> f64 {
    if reduced_feasible(x) {
        theorem2_reduced_value_f64(x[0], x[1])
    } else {
        f64::INFINITY
    }
}

fn full_objective(x: &[f64]) -> f64 {
    if full_feasible(x) {
        let a5 = (1.0 - x.iter().sum::<f64>()).max(0.0);
        theorem2_value_f64([x[0], x[1], x[2], x[3], a5])
    } else {
        f64::INFINITY
    }
}

/// Grid scan plus Nelder-Mead refinement; `grid_step` controls the scan
/// and `tol` the refinement stopping width.
pub fn optimize_theorem2(mode: OptimizeMode, grid_step: f64, tol: f64) -> Result<OptimizeResult> {
    let positive = |x: f64| x.is_finite() && x > 0.0;
    if !positive(grid_step) || !positive(tol) {
        return Err(Error::InvalidParams("grid step and tolerance must be positive".into()));
    }
    let mut evals: u64 = 0;
    let (seed, dim): (Vec<f64>, usize) = match mode {
        OptimizeMode::Reduced => {
            let mut best = (f64::INFINITY, vec![0.0, 0.0]);
            let steps4 = (0.25 / grid_step).floor() as usize;
            for i in 0..=steps4 {
                let s = i as f64 * grid_step;
                let steps5 = ((1.0 - s) / grid_step).floor() as usize;
                for j in 0..=steps5 {
                    let t = j as f64 * grid_step;
                    evals += 1;
                    let v = reduced_objective(&[s, t]);
                    if v < best.0 {
                        best = (v, vec![s, t]);
                    }
                }
            }
            (best.1, 2)
        }
        OptimizeMode::Full => {
            let mut best = (f64::INFINITY, vec![0.25, 0.25, 0.25, 0.0]);
            let n = (1.0 / grid_step).floor() as usize;
            for i1 in 0..=n {
                for i2 in 0..=n - i1 {
                    for i3 in 0..=n - i1 - i2 {
                        for i4 in 0..=n - i1 - i2 - i3 {
                            let x = [
                                i1 as f64 * grid_step,
                                i2 as f64 * grid_step,
                                i3 as f64 * grid_step,
                                i4 as f64 * grid_step,
                            ];
                            evals += 1;
                            let v = full_objective(&x);
                            if v < best.0 {
                                best = (v, x.to_vec());
                            }
                        }
                    }
                }
            }
            (best.1, 4)
        }
    };

    let objective: fn(&[f64]) -> f64 = match mode {
        OptimizeMode::Reduced => reduced_objective,
        OptimizeMode::Full => full_objective,
    };
    let (value, argmin) = nelder_mead(objective, &seed, grid_step.max(1e-4), tol, 20_000);

    let alpha: [f64; 5] = match mode {
        OptimizeMode::Reduced => {
            let b = (1.0 - argmin[0] - argmin[1]) / 3.0;
            [b, b, b, argmin[0], argmin[1]]
        }
        OptimizeMode::Full => {
            let a5 = (1.0 - argmin.iter().sum::<f64>()).max(0.0);
            [argmin[0], argmin[1], argmin[2], argmin[3], a5]
        }
    };
    debug_assert_eq!(argmin.len(), dim);

    let (exact_alpha, exact_value) = exact_reevaluation(mode, &argmin)?;
    Ok(OptimizeResult { mode, value, alpha, exact_value, exact_alpha, grid_evaluations: evals })
}

/// Snaps the float argmin to denominator 10^9 and evaluates exactly.
fn exact_reevaluation(
    mode: OptimizeMode,
    argmin: &[f64],
) -> Result<([BigRational; 5], BigRational)> {
    const DEN: i64 = 1_000_000_000;
    let snap = |x: f64| -> BigInt { BigInt::from((x * DEN as f64).round().max(0.0) as i64) };
    let den = BigInt::from(DEN);
    match mode {
        OptimizeMode::Reduced => {
            let mut p4 = snap(argmin[0]);
            let p5 = snap(argmin[1]);
            if p4.clone() * 4 > den {
                p4 = den.clone() / 4;
            }
            let a4 = BigRational::new(p4, den.clone());
            let a5 = BigRational::new(p5, den.clone());
            let value = theorem2_reduced_value(&a4, &a5)?;
            let b = (BigRational::from_integer(BigInt::from(1)) - a4.clone() - a5.clone())
                / BigRational::from_integer(BigInt::from(3));
            Ok(([b.clone(), b.clone(), b, a4, a5], value))
        }
        OptimizeMode::Full => {
            let mut ps: Vec<BigInt> = argmin.iter().map(|&x| snap(x)).collect();
            if ps[3].clone() * 4 > den {
                ps[3] = den.clone() / 4;
            }
            let sum: BigInt = ps.iter().cloned().sum();
            let p5 = if sum <= den { den.clone() - sum } else { BigInt::from(0) };
            ps.push(p5);
            let mut total: BigInt = ps.iter().cloned().sum();
            // rounding may land the sum one step off; absorb in a1
            if total != den {
                ps[0] = ps[0].clone() + (den.clone() - total.clone());
                total = den.clone();
            }
            debug_assert_eq!(total, den);
            let alpha: Vec<BigRational> = ps
                .into_iter()
                .map(|p| BigRational::new(p, den.clone()))
                .collect();
            let alpha: [BigRational; 5] = alpha.try_into().expect("five components");
            let av = AlphaVector::new(alpha.clone())?;
            Ok((alpha, theorem2_value(&av)))
        }
    }
}

/// Plain Nelder-Mead with reflection 1, expansion 2, contraction 1/2 and
/// shrink 1/2; rejection handles constraints (the objective returns
/// infinity outside the domain).
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    scale: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, Vec<f64>) {
    let dim = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..dim {
        let mut p = x0.to_vec();
        // step inward when the outward point is infeasible
        p[i] += scale;
        if !f(&p).is_finite() {
            p[i] -= 2.0 * scale;
        }
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..max_iter {
        // sort ascending by value
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[dim] - values[0];
        let diameter = simplex[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if spread.abs() < tol && diameter < 1e-6 {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|p| p[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst)
            .map(|(c, w)| c + (c - w))
            .collect();
        let fr = f(&reflect);

        if fr < values[0] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + 2.0 * (c - w))
                .collect();
            let fe = f(&expand);
            if fe < fr {
                simplex[dim] = expand;
                values[dim] = fe;
            } else {
                simplex[dim] = reflect;
                values[dim] = fr;
            }
        } else if fr < values[dim - 1] {
            simplex[dim] = reflect;
            values[dim] = fr;
        } else {
            let contract: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + 0.5 * (w - c))
                .collect();
            let fc = f(&contract);
            if fc < values[dim] {
                simplex[dim] = contract;
                values[dim] = fc;
            } else {
                for i in 1..=dim {
                    let shrunk: Vec<f64> = simplex[i]
                        .iter()
                        .zip(&simplex[0])
                        .map(|(p, b)| b + 0.5 * (p - b))
                        .collect();
                    values[i] = f(&shrunk);
                    simplex[i] = shrunk;
                }
            }
        }
    }

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0);
    (values[best], simplex[best].clone())
}
