//! Projecting `P = S₂ × S₂ ⊂ ℝ⁴` and the curves `C_ij` to a plane.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Config, ElekesError, FourCurve};
use crate::algebra::linalg::inverse;
use crate::algebra::resultant::resultant_at;
use crate::algebra::{poly_gcd, vars_of, MPoly, Scalar, Vars};
use crate::curves::{xy, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionBudget {
    /// Largest total-degree bound accepted for a resultant.
    pub max_degree: u32,
    pub max_attempts: usize,
}

impl Default for ProjectionBudget {
    fn default() -> Self {
        ProjectionBudget { max_degree: 64, max_attempts: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    /// `z = M·w`; the plane coordinates are `(z₁, z₂)`.
    pub matrix: [[i64; 4]; 4],
    /// 1-based attempt that succeeded.
    pub attempt: usize,
    /// `((s, t), π(q_s, q_t))`.
    pub points: Vec<((usize, usize), Point)>,
    /// `((i, j), plane equation in x, y)`.
    pub curves: Vec<((usize, usize), MPoly)>,
    /// Incident `(curve, point)` index pairs, identical before and after.
    pub incidences: BTreeSet<(usize, usize)>,
}

fn z_vars() -> &'static Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| vars_of(&["z1", "z2", "z3", "z4"]))
}

/// Eliminates variable `var`: polynomials free of it pass through, the
/// others are replaced by the resultants of the first with each of the rest.
/// A lone polynomial involving `var` is dropped.
pub fn eliminate(system: &[MPoly], var: usize, max_degree: u32) -> Result<Vec<MPoly>, ElekesError> {
    let (with, mut out): (Vec<&MPoly>, Vec<MPoly>) = {
        let (w, wo): (Vec<&MPoly>, Vec<&MPoly>) = system.iter().partition(|p| p.involves(var));
        (w, wo.into_iter().cloned().collect())
    };
    if let Some((first, rest)) = with.split_first() {
        for g in rest {
            let bound = first.total_degree() * g.total_degree();
            if bound > max_degree {
                return Err(ElekesError::Budget { what: "resultant degree bound", limit: max_degree as usize, actual: bound as usize });
            }
            let r = resultant_at(first, g, var);
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Projection with a random invertible integer matrix, retried until the
/// points stay distinct and incidences are exactly preserved.
pub fn generic_projection(
    config: &Config,
    subset: &[(usize, usize)],
    seed: u64,
    budget: &ProjectionBudget,
) -> Result<Projection, ElekesError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=budget.max_attempts {
        let m = loop {
            let m: [[i64; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
            if invert(&m)?.is_some() {
                break m;
            }
        };
        match project_with(config, subset, &m, budget) {
            Ok(Some(mut p)) => {
                p.attempt = attempt;
                return Ok(p);
            }
            Ok(None) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ElekesError::RetriesExhausted(budget.max_attempts))
}

fn invert(m: &[[i64; 4]; 4]) -> Result<Option<Vec<Vec<Scalar>>>, ElekesError> {
    let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
    Ok(inverse(&rows)?)
}

/// Projection with a fixed matrix; `None` when it is not generic for this
/// data (a collision of points or a changed incidence).
pub fn project_with(
    config: &Config,
    subset: &[(usize, usize)],
    m: &[[i64; 4]; 4],
    budget: &ProjectionBudget,
) -> Result<Option<Projection>, ElekesError> {
    let inv = invert(m)?.ok_or_else(|| ElekesError::Precondition("projection matrix is singular".into()))?;
    let qs: Vec<&Point> = config.s2().coords().collect();
    let mut points = Vec::new();
    let mut seen = BTreeSet::new();
    for (s, q) in qs.iter().enumerate() {
        for (t, qp) in qs.iter().enumerate() {
            let w = [&q.x, &q.y, &qp.x, &qp.y];
            let z: Vec<Scalar> = (0..2)
                .map(|r| (0..4).fold(Scalar::zero(), |acc, c| &acc + &(&Scalar::from_int(m[r][c]) * w[c])))
                .collect();
            let p = Point::new(z[0].clone(), z[1].clone());
            if !seen.insert(p.clone()) {
                return Ok(None);
            }
            points.push(((s, t), p));
        }
    }
    // w = M⁻¹ z
    let zs: Vec<MPoly> = (0..4)
        .map(|r| {
            (0..4).fold(MPoly::zero_in(z_vars()), |acc, c| acc.add(&MPoly::var_in(z_vars(), c).scale(&inv[r][c])))
        })
        .collect();
    let mut curves = Vec::new();
    let mut incidences = BTreeSet::new();
    for (ci, &(i, j)) in subset.iter().enumerate() {
        let c = FourCurve::new(i, j, config.p(i)?, config.p(j)?, config.c2())?;
        let system: Vec<MPoly> = [&c.f, &c.f_primed, &c.big_f].iter().map(|p| p.compose(&zs)).collect();
        let s3 = eliminate(&system, 3, budget.max_degree)?;
        let s2 = eliminate(&s3, 2, budget.max_degree)?;
        let mut g: Option<MPoly> = None;
        for p in s2.iter().filter(|p| !p.involves(2) && !p.involves(3)) {
            g = Some(match g {
                None => p.clone(),
                Some(h) => poly_gcd(&h, p)?,
            });
        }
        let Some(g) = g.filter(|g| !g.is_constant()) else {
            return Ok(None);
        };
        let plane = g.compose(&[MPoly::var_in(xy(), 0), MPoly::var_in(xy(), 1), MPoly::zero_in(xy()), MPoly::zero_in(xy())]).normalized();
        for (pi, ((s, t), z)) in points.iter().enumerate() {
            let before = c.contains(qs[*s], qs[*t]);
            let after = plane.eval(&[z.x.clone(), z.y.clone()]).is_zero();
            if before != after {
                return Ok(None);
            }
            if before {
                incidences.insert((ci, pi));
            }
        }
        curves.push(((i, j), plane));
    }
    Ok(Some(Projection { matrix: *m, attempt: 1, points, curves, incidences }))
}
