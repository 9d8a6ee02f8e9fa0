//! Double-word (error-free transform) arithmetic for the cancellation-prone
//! hypergeometric series. Only the handful of operations the term recurrences
//! need: f64 multiply/divide of a two-float value and two-float accumulation.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoFloat {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl TwoFloat {
    #[inline]
    pub fn new(x: f64) -> Self {
        TwoFloat { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: TwoFloat) -> TwoFloat {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> TwoFloat {
        let (p, e) = two_prod(self.hi, x);
        let e = self.lo.mul_add(x, e);
        let (hi, lo) = two_sum(p, e);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> TwoFloat {
        let q1 = self.hi / x;
        let (p, pe) = two_prod(q1, x);
        let (d, de) = two_sum(self.hi, -p);
        let q2 = (d + (de + self.lo - pe)) / x;
        let (hi, lo) = two_sum(q1, q2);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.value().abs()
    }
}
