//! Regularity and Hilbert-onset bounds, exact polynomial fitting of Hilbert
//! functions, and the stable-degree probe.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{OiError, Result};
use crate::functors::shift_presentation;
use crate::homology::{t0, t1};
use crate::module::{hilbert, Presentation};

/// Largest `d` for which `C_d` and `2^{2^d}` are materialized. The numbers
/// double in length with every step of `d`.
pub const MAX_BOUND_DEGREE: usize = 24;

fn c_memo() -> &'static Mutex<HashMap<(usize, BigInt), BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, BigInt), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C_0(r) = r`, `C_d(r) = C_{d-1}(C_{d-1}(r - 1) + 3) + r`.
pub fn c_bound(d: usize, r: &BigInt) -> Result<BigInt> {
    if d > MAX_BOUND_DEGREE {
        return Err(OiError::TooLarge(format!("C_{d} exceeds the supported depth {MAX_BOUND_DEGREE}")));
    }
    Ok(c_bound_inner(d, r))
}

fn c_bound_inner(d: usize, r: &BigInt) -> BigInt {
    if d == 0 {
        return r.clone();
    }
    let key = (d, r.clone());
    if let Some(v) = c_memo().lock().expect("memo poisoned").get(&key) {
        return v.clone();
    }
    let inner = c_bound_inner(d - 1, &(r - 1)) + 3;
    let value = c_bound_inner(d - 1, &inner) + r;
    // Values are deterministic, so whichever thread writes first wins.
    c_memo()
        .lock()
        .expect("memo poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

/// `2^{2^d} · r`.
pub fn closed_form_bound(d: usize, r: &BigInt) -> Result<BigInt> {
    if d > MAX_BOUND_DEGREE {
        return Err(OiError::TooLarge(format!("2^(2^{d}) exceeds the supported depth")));
    }
    Ok(BigInt::from(2u32).pow(1usize << d) * r)
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Bounds derived from `t_0` and `prd`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub t0: i64,
    pub t1: i64,
    pub prd: i64,
    /// `C_{t0}(prd)`; the sharper of the two regularity bounds.
    #[serde(serialize_with = "as_decimal")]
    pub c_bound: BigInt,
    /// `2^{2^{t0}} · prd`.
    #[serde(serialize_with = "as_decimal")]
    pub reg_bound: BigInt,
    /// Degree from which `dim V_n` is polynomial.
    #[serde(serialize_with = "as_decimal")]
    pub onset_bound: BigInt,
    /// `2^{t0 + 1} - 1`.
    #[serde(serialize_with = "as_decimal")]
    pub filtration_size_bound: BigInt,
    pub degenerate: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn filtration_size_bound(t0: usize) -> BigInt {
    (BigInt::one() << (t0 + 1)) - 1
}

/// Regularity report. The zero module has regularity -1 and yields a
/// degenerate report with every field -1.
pub fn reg_bound(p: &Presentation) -> Result<BoundReport> {
    let t0 = t0(p)?;
    let t1 = t1(p)?;
    let prd = t0.max(t1);
    if t0 < 0 {
        let minus_one = BigInt::from(-1);
        return Ok(BoundReport {
            t0,
            t1,
            prd,
            c_bound: minus_one.clone(),
            reg_bound: minus_one.clone(),
            onset_bound: minus_one.clone(),
            filtration_size_bound: minus_one,
            degenerate: true,
        });
    }
    let d = t0 as usize;
    let prd_big = BigInt::from(prd);
    let closed = closed_form_bound(d, &prd_big)?;
    Ok(BoundReport {
        t0,
        t1,
        prd,
        c_bound: c_bound(d, &prd_big)?,
        reg_bound: closed.clone(),
        onset_bound: closed,
        filtration_size_bound: filtration_size_bound(d),
        degenerate: false,
    })
}

/// A polynomial with rational coefficients, lowest power first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    fn trimmed(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    /// Degree, -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(n.into());
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    fn mul_linear(&self, shift: i64) -> Polynomial {
        // (n - shift) * self
        let mut out = vec![BigRational::zero(); self.0.len() + 1];
        let s = BigRational::from_integer(shift.into());
        for (i, c) in self.0.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * &s;
        }
        Polynomial::trimmed(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}n", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}n^{i}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Exact polynomial fit of the Hilbert function over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFit {
    pub window: (usize, usize),
    pub values: Vec<usize>,
    pub polynomial: Polynomial,
    /// First degree of the longest tail of the window that the polynomial
    /// matches.
    pub empirical_onset: usize,
    /// `t_0`; the fitted degree never exceeds it.
    pub degree_bound: i64,
}

#[derive(Serialize)]
struct HilbertFitRecord<'a> {
    window: [usize; 2],
    values: &'a [usize],
    coefficients: Vec<String>,
    polynomial: String,
    empirical_onset: usize,
    degree_bound: i64,
}

impl HilbertFit {
    pub fn to_json(&self) -> String {
        let record = HilbertFitRecord {
            window: [self.window.0, self.window.1],
            values: &self.values,
            coefficients: self
                .polynomial
                .0
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
            polynomial: self.polynomial.to_string(),
            empirical_onset: self.empirical_onset,
            degree_bound: self.degree_bound,
        };
        serde_json::to_string(&record).expect("fit serializes")
    }
}

/// `k`-th forward differences.
fn differences(values: &[BigInt], k: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![values.to_vec()];
    for _ in 0..k {
        let last = rows.last().expect("nonempty");
        let next = last.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    rows
}

/// Finds the longest tail of `[n0, n1]` on which the `(t_0 + 1)`-th
/// difference vanishes and interpolates it by Newton's forward formula.
pub fn hilbert_poly_fit(p: &Presentation, n0: usize, n1: usize) -> Result<HilbertFit> {
    let t0 = t0(p)?;
    let order = (t0 + 1) as usize;
    let needed = order + 1;
    if n1 < n0 || n1 - n0 < needed {
        return Err(OiError::WindowTooSmall { n0, n1, needed });
    }
    let values = hilbert(p, n0, n1)?;
    let ints: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
    let diffs = differences(&ints, order);
    let top = &diffs[order];
    let Some(start) = (0..top.len()).rev().take_while(|&i| top[i].is_zero()).last() else {
        return Err(OiError::NoPolynomialTail {
            degree: t0,
            n0,
            n1,
        });
    };

    let x0 = (n0 + start) as i64;
    let mut poly = Polynomial(Vec::new());
    let mut basis = Polynomial(vec![BigRational::one()]); // C(n - x0, i)
    for (i, row) in diffs.iter().take(order).enumerate() {
        let coeff = BigRational::from_integer(row[start].clone());
        let term: Vec<BigRational> = basis.0.iter().map(|c| c * &coeff).collect();
        let len = poly.0.len().max(term.len());
        let mut sum = vec![BigRational::zero(); len];
        for (k, c) in poly.0.iter().enumerate() {
            sum[k] += c;
        }
        for (k, c) in term.iter().enumerate() {
            sum[k] += c;
        }
        poly = Polynomial::trimmed(sum);
        let scale = BigRational::new(BigInt::one(), BigInt::from(i + 1));
        basis = basis.mul_linear(x0 + i as i64);
        basis = Polynomial(basis.0.iter().map(|c| c * &scale).collect());
    }

    Ok(HilbertFit {
        window: (n0, n1),
        values,
        polynomial: poly,
        empirical_onset: n0 + start,
        degree_bound: t0,
    })
}

/// `t_0(Σ^n V)` for `n = 0..=max_shift`, and the smallest value seen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableDegreeProbe {
    pub t0_by_shift: Vec<i64>,
    pub minimum: i64,
}

/// Windowed probe of the stable degree. Carries no certificate that the
/// minimum over all shifts has been reached.
pub fn std_empirical(p: &Presentation, max_shift: usize) -> Result<StableDegreeProbe> {
    let t0_by_shift = (0..=max_shift)
        .map(|n| t0(&shift_presentation(p, n)?.0))
        .collect::<Result<Vec<_>>>()?;
    let minimum = *t0_by_shift.iter().min().expect("at least one shift");
    Ok(StableDegreeProbe {
        t0_by_shift,
        minimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::IncreasingMap;
    use crate::field::FieldSpec;
    use crate::module::{Element, FreeModule, Term};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    fn ramos() -> Presentation {
        let free = FreeModule::new(vec![1]);
        let rel = Element::new(
            &free,
            2,
            vec![Term {
                gen: 0,
                map: IncreasingMap::new(vec![1], 2).unwrap(),
                coeff: Q.one(),
            }],
        )
        .unwrap();
        Presentation::new(Q, free, vec![rel]).unwrap()
    }

    #[test]
    fn c_bound_values() {
        assert_eq!(c_bound(0, &big(7)).unwrap(), big(7));
        assert_eq!(c_bound(1, &big(5)).unwrap(), big(12));
        assert_eq!(c_bound(2, &big(3)).unwrap(), big(23));
        for r in 3..20 {
            assert_eq!(c_bound(3, &big(r)).unwrap(), big(26 * r + 38));
        }
        assert_eq!(c_bound(1, &big(-4)).unwrap(), big(-6));
        assert!(c_bound(MAX_BOUND_DEGREE + 1, &big(1)).is_err());
    }

    #[test]
    fn ramos_report() {
        let report = reg_bound(&ramos()).unwrap();
        assert_eq!((report.t0, report.t1, report.prd), (1, 2, 2));
        assert_eq!(report.reg_bound, big(8));
        assert_eq!(report.c_bound, big(6));
        assert_eq!(report.filtration_size_bound, big(3));
        assert_eq!(
            report.to_json(),
            r#"{"t0":1,"t1":2,"prd":2,"c_bound":"6","reg_bound":"8","onset_bound":"8","filtration_size_bound":"3","degenerate":false}"#
        );
        let m2 = reg_bound(&Presentation::free_module(Q, vec![2])).unwrap();
        assert_eq!(m2.reg_bound, big(32));
        let zero = reg_bound(&Presentation::zero(Q)).unwrap();
        assert!(zero.degenerate);
        assert_eq!(zero.reg_bound, big(-1));
    }

    #[test]
    fn fits() {
        let fit = hilbert_poly_fit(&ramos(), 0, 12).unwrap();
        assert_eq!(fit.polynomial, Polynomial(vec![ratio(1, 1)]));
        assert_eq!(fit.empirical_onset, 1);
        let m2 = hilbert_poly_fit(&Presentation::free_module(Q, vec![2]), 0, 10).unwrap();
        assert_eq!(m2.polynomial, Polynomial(vec![ratio(0, 1), ratio(-1, 2), ratio(1, 2)]));
        assert_eq!(m2.empirical_onset, 0);
        assert_eq!(m2.polynomial.to_string(), "1/2 n^2 - 1/2 n");
        let ex = hilbert_poly_fit(&Presentation::free_module(Q, vec![1, 0]), 0, 8).unwrap();
        assert_eq!(ex.polynomial, Polynomial(vec![ratio(1, 1), ratio(1, 1)]));
        assert_eq!(ex.empirical_onset, 0);
        assert_eq!(ex.polynomial.to_string(), "n + 1");
        assert!(matches!(
            hilbert_poly_fit(&ramos(), 0, 2),
            Err(OiError::WindowTooSmall { .. })
        ));
        // Offset windows fit too.
        let shifted = hilbert_poly_fit(&Presentation::free_module(Q, vec![2]), 4, 9).unwrap();
        assert_eq!(shifted.polynomial, m2.polynomial);
        assert_eq!(shifted.empirical_onset, 4);
    }

    #[test]
    fn zero_module_fit() {
        let fit = hilbert_poly_fit(&Presentation::zero(Q), 0, 3).unwrap();
        assert_eq!(fit.polynomial.degree(), -1);
        assert_eq!(fit.empirical_onset, 0);
    }

    #[test]
    fn stable_degree_examples() {
        let probe = std_empirical(&Presentation::free_module(Q, vec![2]), 3).unwrap();
        assert_eq!(probe.t0_by_shift, vec![2, 2, 2, 2]);
        let probe = std_empirical(&ramos(), 4).unwrap();
        assert_eq!(probe.t0_by_shift, vec![1; 5]);
        assert_eq!(probe.minimum, 1);
    }
}
