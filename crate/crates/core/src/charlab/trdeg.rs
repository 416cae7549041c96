//! Transcendence degree of the field generated by `Λ`, read off as the
//! generic rank of the Jacobian `∂λᵢ/∂tⱼ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lattice::fraction;
use super::linalg::rational_rank;
use super::{CharLabError, LatticeSubgroup};
use crate::field::{Polynomial, Scalar};

/// Sample points tried before giving up on finding one off all poles.
pub const TRDEG_ATTEMPTS: usize = 5;
const SAMPLE_RANGE: i64 = 97;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrdegReport {
    pub trdeg: usize,
    /// Each usable sample point with the Jacobian rank there.
    pub samples: Vec<(Vec<BigRational>, usize)>,
    /// Independent point checked after the maximum was taken.
    pub confirmation: Option<(Vec<BigRational>, usize)>,
}

struct Jacobian {
    // per generator: numerator, denominator, and their partials
    entries: Vec<(Polynomial, Polynomial, Vec<Polynomial>, Vec<Polynomial>)>,
    m: usize,
}

impl Jacobian {
    fn new(lambda: &LatticeSubgroup) -> Jacobian {
        let ring = lambda.poly_ring();
        let m = ring.nvars();
        let entries = lambda
            .generators()
            .iter()
            .map(|g| {
                let (n, d) = fraction(&ring, g);
                let dn = (0..m).map(|j| n.derivative(j)).collect();
                let dd = (0..m).map(|j| d.derivative(j)).collect();
                (n, d, dn, dd)
            })
            .collect();
        Jacobian { entries, m }
    }

    /// Rank at `point`, or `None` if a denominator vanishes there.
    fn rank_at(&self, point: &[BigRational]) -> Option<usize> {
        let pt: Vec<Scalar> = point.iter().map(|c| Scalar::Rational(c.clone())).collect();
        let val = |p: &Polynomial| p.eval(&pt).as_rational().cloned().expect("rational value");
        let mut rows = Vec::with_capacity(self.entries.len());
        for (n, d, dn, dd) in &self.entries {
            let dv = val(d);
            if dv == BigRational::from_integer(0.into()) {
                return None;
            }
            let nv = val(n);
            let d2 = &dv * &dv;
            rows.push((0..self.m).map(|j| (&(&val(&dn[j]) * &dv) - &(&nv * &val(&dd[j]))) / &d2).collect::<Vec<_>>());
        }
        Some(rational_rank(&rows))
    }
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    (0..m).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))).collect()
}

pub fn trdeg_report(lambda: &LatticeSubgroup, seed: u64) -> Result<TrdegReport, CharLabError> {
    let jac = Jacobian::new(lambda);
    if jac.m == 0 || jac.entries.is_empty() {
        return Ok(TrdegReport { trdeg: 0, samples: Vec::new(), confirmation: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    for _ in 0..TRDEG_ATTEMPTS {
        let p = random_point(&mut rng, jac.m);
        if let Some(r) = jac.rank_at(&p) {
            samples.push((p, r));
        }
    }
    if samples.is_empty() {
        return Err(CharLabError::SamplingFailed(TRDEG_ATTEMPTS));
    }
    let mut trdeg = samples.iter().map(|s| s.1).max().unwrap_or(0);
    let mut confirmation = None;
    for _ in 0..TRDEG_ATTEMPTS {
        let p = random_point(&mut rng, jac.m);
        if let Some(r) = jac.rank_at(&p) {
            trdeg = trdeg.max(r);
            confirmation = Some((p, r));
            break;
        }
    }
    Ok(TrdegReport { trdeg, samples, confirmation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn trdeg(field: &FieldSpec, gens: &[&str]) -> usize {
        trdeg_report(&LatticeSubgroup::parse(field, gens).unwrap(), 1).unwrap().trdeg
    }

    #[test]
    fn examples() {
        let qt = FieldSpec::qt();
        assert_eq!(trdeg(&FieldSpec::Rationals, &["2"]), 0);
        assert_eq!(trdeg(&qt, &["2", "-1"]), 0);
        assert_eq!(trdeg(&qt, &["t", "t + 1"]), 1);
        assert_eq!(trdeg(&qt, &["(t^2 + 1)/(t - 3)"]), 1);
        let q2 = FieldSpec::rational_functions(FieldSpec::Rationals, &["t1", "t2"]).unwrap();
        assert_eq!(trdeg(&q2, &["t1", "t2"]), 2);
        assert_eq!(trdeg(&q2, &["t1*t2", "t1^2*t2^2 + 1"]), 1);
    }

    #[test]
    fn report_records_points() {
        let lam = LatticeSubgroup::parse(&FieldSpec::qt(), &["1/t"]).unwrap();
        let r = trdeg_report(&lam, 9).unwrap();
        assert!(!r.samples.is_empty());
        assert_eq!(r.confirmation.as_ref().map(|c| c.1), Some(1));
    }
}
