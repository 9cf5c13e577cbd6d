//! Natural cubic spline with exact derivative and running integral.

#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
    /// Integral from `xs[0]` to each knot.
    cumulative: Vec<f64>,
}

impl CubicSpline {
    /// Requires at least two strictly increasing knots.
    pub fn new(xs: &[f64], ys: &[f64]) -> Option<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n || xs.windows(2).any(|w| !(w[1] > w[0])) {
            return None;
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // Tridiagonal solve for interior second derivatives.
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            let mut upper = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
                if i > 1 {
                    let f = h0 / diag[i - 1];
                    diag[i] -= f * upper[i - 1];
                    rhs[i] -= f * rhs[i - 1];
                }
            }
            for i in (1..n - 1).rev() {
                m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
            }
        }
        let mut s = Self { xs: xs.to_vec(), ys: ys.to_vec(), m, cumulative: vec![0.0; n] };
        for i in 1..n {
            s.cumulative[i] = s.cumulative[i - 1] + s.segment_integral(i - 1, xs[i]);
        }
        Some(s)
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Value and first derivative; zero outside the knot range.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let (lo, hi) = self.x_range();
        if x < lo || x > hi {
            return (0.0, 0.0);
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        let v = a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0;
        let d = (self.ys[i + 1] - self.ys[i]) / h
            + (-(3.0 * a * a - 1.0) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * h / 6.0;
        (v, d)
    }

    fn segment_integral(&self, i: usize, x: f64) -> f64 {
        let h = self.xs[i + 1] - self.xs[i];
        let b = (x - self.xs[i]) / h;
        let a = 1.0 - b;
        // Antiderivative in the local coordinate, evaluated from b = 0.
        let prim = |a: f64, b: f64| {
            h * (-a * a / 2.0 * self.ys[i] + b * b / 2.0 * self.ys[i + 1])
                + h * h * h / 6.0
                    * (-(a.powi(4) / 4.0 - a * a / 2.0) * self.m[i] + (b.powi(4) / 4.0 - b * b / 2.0) * self.m[i + 1])
        };
        prim(a, b) - prim(1.0, 0.0)
    }

    /// Integral of the spline from the first knot to `x` (clamped to the range).
    pub fn integral_to(&self, x: f64) -> f64 {
        let (lo, hi) = self.x_range();
        if x <= lo {
            return 0.0;
        }
        let x = x.min(hi);
        let i = self.segment(x);
        self.cumulative[i] + self.segment_integral(i, x)
    }
}
