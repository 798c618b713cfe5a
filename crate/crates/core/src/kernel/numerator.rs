/// `N(r) = n0 + n2 r² + n4 r⁴ + m2 r² log r`.
///
/// Every basis numerator lives in this family; dividing by `D r` lands in the
/// bi-harmonic span `{1/r, r, r log r, r³}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPoly {
    pub n0: f64,
    pub n2: f64,
    pub n4: f64,
    pub m2: f64,
}

impl LogPoly {
    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        let r2 = r * r;
        self.n0 + self.n2 * r2 + self.n4 * r2 * r2 + self.m2 * r2 * r.ln()
    }

    #[inline]
    pub fn first(&self, r: f64) -> f64 {
        let r2 = r * r;
        2.0 * self.n2 * r + 4.0 * self.n4 * r2 * r + self.m2 * r * (2.0 * r.ln() + 1.0)
    }

    #[inline]
    pub fn second(&self, r: f64) -> f64 {
        2.0 * self.n2 + 12.0 * self.n4 * r * r + self.m2 * (2.0 * r.ln() + 3.0)
    }

    /// Value, first and second derivative of `N(r) / (denom · r)`.
    #[inline]
    pub fn quotient_jet(&self, denom: f64, r: f64) -> [f64; 3] {
        let n = self.value(r);
        let n1 = self.first(r);
        let n2 = self.second(r);
        let dr = denom * r;
        [
            n / dr,
            (r * n1 - n) / (dr * r),
            (r * r * n2 - 2.0 * r * n1 + 2.0 * n) / (dr * r * r),
        ]
    }

    /// `r N' - N` expanded about a radius where it vanishes. Same value as the
    /// direct form, but it keeps full relative accuracy next to that root.
    #[inline]
    pub fn slope_numerator_from_root(&self, r: f64, root: f64) -> f64 {
        let e = (r - root) * (r + root);
        let log_ratio = ((r - root) / root).ln_1p();
        self.n2 * e
            + 3.0 * self.n4 * e * (r * r + root * root)
            + self.m2 * (e * r.ln() + root * root * log_ratio + e)
    }

    /// Coefficients `(d, a, b, c)` of `N(r) / (denom · r)` in the basis
    /// `{1/r, r, r log r, r³}`.
    pub fn profile(&self, denom: f64) -> [f64; 4] {
        [self.n0 / denom, self.n2 / denom, self.m2 / denom, self.n4 / denom]
    }
}
