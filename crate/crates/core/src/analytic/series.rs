//! Compensated summation and tail bounds for positive series.

use num_complex::Complex64;
use serde::Serialize;

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    sum: Complex64,
    comp: Complex64,
}

fn two_sum(s: f64, x: f64) -> (f64, f64) {
    let t = s + x;
    let c = if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
    (t, c)
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(cre, cim);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// A truncated series value with an upper bound on the omitted part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub re: f64,
    pub im: f64,
    pub tail: f64,
    pub terms: usize,
}

impl Evaluation {
    pub fn new(value: Complex64, tail: f64, terms: usize) -> Evaluation {
        Evaluation { re: value.re, im: value.im, tail, terms }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Upper bound for `Σ_{n >= start} f(n)`, for positive `f` whose ratio `f(n+1)/f(n)` is non-increasing
/// and eventually below one. Returns infinity if the ratio never drops below one.
pub fn series_tail(f: impl Fn(usize) -> f64, start: usize) -> f64 {
    let mut s = 0.0;
    let mut n = start;
    let mut a = f(n);
    for _ in 0..1_000_000 {
        if a == 0.0 {
            return s;
        }
        let b = f(n + 1);
        s += a;
        let r = b / a;
        if r < 1.0 && b / (1.0 - r) <= 1e-3 * s.max(1e-300) {
            return s + b / (1.0 - r);
        }
        if r < 1.0 && b < 1e-300 {
            return s + b / (1.0 - r);
        }
        n += 1;
        a = b;
    }
    f64::INFINITY
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_tail() {
        let t = series_tail(|n| 0.5f64.powi(n as i32), 1);
        assert!(t >= 1.0 && t < 1.0 + 1e-3);
    }

    #[test]
    fn compensation() {
        let mut acc = Accumulator::new();
        acc.add(Complex64::new(1e16, 0.0));
        for _ in 0..10 {
            acc.add(Complex64::new(1.0, 0.0));
        }
        acc.add(Complex64::new(-1e16, 0.0));
        assert_eq!(acc.value().re, 10.0);
    }
}
