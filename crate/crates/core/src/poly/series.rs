use std::fmt;

use crate::scalar::Scalar;

/// A power series in `u = t - center`, kept modulo `u^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    center: Scalar,
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// Panics if `coeffs` is empty: order zero has no meaning here.
    pub fn new(center: Scalar, coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        TruncatedSeries { center, coeffs }
    }

    pub fn zero(center: Scalar, order: usize) -> Self {
        TruncatedSeries::new(center, vec![Scalar::zero(); order])
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_compatible(&self, o: &TruncatedSeries) {
        assert!(
            self.center == o.center && self.order() == o.order(),
            "series with different centers or orders"
        );
    }

    pub fn add(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { center: self.center.clone(), coeffs }
    }

    pub fn sub(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { center: self.center.clone(), coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries { center: self.center.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated at `u^order`.
    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(o);
        let n = self.order();
        let mut coeffs = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        TruncatedSeries { center: self.center.clone(), coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(u^{})", self.order())
        } else {
            write!(f, "{} + O(u^{})", terms.join(" + "), self.order())
        }
    }
}
