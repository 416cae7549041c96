//! Newton polygons of relation generators and their scaling in `n`.

use num_integer::Integer;
use serde::Serialize;

use super::relation::relation_gen;
use super::{CharLabError, LatticeSubgroup};
use crate::field::Polynomial;

/// Vertices of `Newton(P)` and the largest `e` with all vertex differences
/// in `e·Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonData {
    pub hull: Vec<Vec<i64>>,
    pub e: u64,
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Extreme points of a finite set in dimension one or two. Planar hulls are
/// counterclockwise from the lexicographically smallest point, without
/// collinear points.
pub fn convex_hull(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 1 {
        return pts;
    }
    if pts[0].len() == 1 {
        return vec![pts[0].clone(), pts[pts.len() - 1].clone()];
    }
    assert_eq!(pts[0].len(), 2, "hulls are computed in dimension one or two");
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn newton_data(p: &Polynomial) -> NewtonData {
    let points: Vec<Vec<i64>> = p.terms().map(|(m, _)| m.exps().iter().map(|&e| e as i64).collect()).collect();
    let hull = convex_hull(&points);
    let e = match hull.first() {
        Some(v0) => hull
            .iter()
            .flat_map(|v| v.iter().zip(v0).map(|(a, b)| (a - b).unsigned_abs()))
            .fold(0u64, |g, c| g.gcd(&c)),
        None => 0,
    };
    NewtonData { hull, e }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonReport {
    pub n: u32,
    pub rank: usize,
    pub p1: String,
    pub pn: String,
    pub newton1: NewtonData,
    pub newton_n: NewtonData,
    /// The divisor `f_n` of `e(P₁)` with `f_n·Newton(P_n) = n^{r−1}·Newton(P₁)`.
    pub f_n: Option<u64>,
}

impl NewtonReport {
    pub fn holds(&self) -> bool {
        self.f_n.is_some()
    }
}

fn scaled(hull: &[Vec<i64>], k: i64) -> Vec<Vec<i64>> {
    hull.iter().map(|v| v.iter().map(|c| c * k).collect()).collect()
}

/// Computes `P₁` and `P_n` and looks for `f_n | e(P₁)` with
/// `Newton(P_n) = (n^{r−1}/f_n)·Newton(P₁)`.
pub fn newton_scaling_check(lambda: &LatticeSubgroup, n: u32) -> Result<NewtonReport, CharLabError> {
    let p1 = relation_gen(lambda, 1)?;
    let pn = relation_gen(lambda, n)?;
    let r = lambda.generators().len();
    let newton1 = newton_data(&p1.poly);
    let newton_n = newton_data(&pn.poly);
    let big = (n as i64).pow(r as u32 - 1);
    let target = scaled(&newton1.hull, big);
    let f_n = (1..=newton1.e.max(1))
        .filter(|f| newton1.e.max(1).is_multiple_of(*f))
        .find(|&f| scaled(&newton_n.hull, f as i64) == target);
    let report = NewtonReport { n, rank: r, p1: p1.to_string(), pn: pn.to_string(), newton1, newton_n, f_n };
    if report.holds() {
        Ok(report)
    } else {
        Err(CharLabError::ScalingViolated(format!(
            "Newton(P_{n}) = {:?}, Newton(P_1) = {:?}",
            report.newton_n.hull, report.newton1.hull
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn pts(v: &[[i64; 2]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn hulls() {
        let square = pts(&[[0, 0], [1, 0], [2, 0], [2, 2], [0, 2], [1, 1], [0, 1]]);
        assert_eq!(convex_hull(&square), pts(&[[0, 0], [2, 0], [2, 2], [0, 2]]));
        assert_eq!(convex_hull(&pts(&[[0, 0], [1, 1], [2, 2]])), pts(&[[0, 0], [2, 2]]));
        assert_eq!(convex_hull(&[vec![3], vec![0], vec![1]]), vec![vec![0], vec![3]]);
    }

    #[test]
    fn e_invariant() {
        let r = crate::field::Ring::new(FieldSpec::Rationals, &["x1", "x2"]);
        let p = crate::field::text::parse_polynomial(&r, "1 + x1^2 + x2^4 + x1*x2^2").unwrap();
        let d = newton_data(&p);
        assert_eq!(d.hull, pts(&[[0, 0], [2, 0], [0, 4]]));
        assert_eq!(d.e, 2);
    }

    #[test]
    fn scaling_for_t_and_t_plus_one() {
        let lam = LatticeSubgroup::parse(&FieldSpec::qt(), &["t", "t + 1"]).unwrap();
        let r = newton_scaling_check(&lam, 2).unwrap();
        assert_eq!(r.newton_n.hull, pts(&[[0, 0], [2, 0], [0, 2]]));
        assert_eq!(r.newton1.e, 1);
        assert_eq!(r.f_n, Some(1));
        let r1 = newton_scaling_check(&lam, 1).unwrap();
        assert_eq!(r1.f_n, Some(1));
        let lam2 = LatticeSubgroup::parse(&FieldSpec::Rationals, &["2"]).unwrap();
        assert_eq!(newton_scaling_check(&lam2, 3).unwrap().f_n, Some(1));
    }
}
