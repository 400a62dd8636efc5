//! Analytic one-dimensional profiles with two derivatives.

use std::fmt::Debug;

/// How `½(g(x+z) + g(x-z))` behaves for `z` beyond a radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FarField {
    /// Equal to the value for every `z` beyond the radius, up to rounding.
    Exact(f64),
    /// Oscillates around the value with decaying weight.
    Mean(f64),
    Unknown,
}

pub trait Profile: Debug + Send + Sync {
    fn value(&self, x: f64) -> f64;

    fn d1(&self, x: f64) -> f64;

    fn d2(&self, x: f64) -> f64;

    /// Points where the second derivative is not smooth.
    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }

    fn far_field(&self, _x: f64, _radius: f64) -> FarField {
        FarField::Unknown
    }

    fn sup_norm(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    pub value: f64,
}

impl Profile for Constant {
    fn value(&self, _x: f64) -> f64 {
        self.value
    }

    fn d1(&self, _x: f64) -> f64 {
        0.0
    }

    fn d2(&self, _x: f64) -> f64 {
        0.0
    }

    fn far_field(&self, _x: f64, _radius: f64) -> FarField {
        FarField::Exact(self.value)
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub slope: f64,
    pub intercept: f64,
}

impl Profile for Affine {
    fn value(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    fn d1(&self, _x: f64) -> f64 {
        self.slope
    }

    fn d2(&self, _x: f64) -> f64 {
        0.0
    }

    fn far_field(&self, x: f64, _radius: f64) -> FarField {
        FarField::Exact(self.value(x))
    }
}

/// `height · exp(1 - 1/(1 - t²))` with `t = (x - center)/radius`, zero for `|t| ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub radius: f64,
    pub height: f64,
}

impl Bump {
    fn parts(&self, x: f64) -> Option<(f64, f64, f64)> {
        let t = (x - self.center) / self.radius;
        let q = 1.0 - t * t;
        if q <= 0.0 {
            return None;
        }
        Some((t, q, (1.0 - 1.0 / q).exp()))
    }
}

impl Profile for Bump {
    fn value(&self, x: f64) -> f64 {
        self.parts(x).map_or(0.0, |(_, _, e)| self.height * e)
    }

    fn d1(&self, x: f64) -> f64 {
        self.parts(x).map_or(0.0, |(t, q, e)| {
            self.height * e * (-2.0 * t / (q * q)) / self.radius
        })
    }

    fn d2(&self, x: f64) -> f64 {
        self.parts(x).map_or(0.0, |(t, q, e)| {
            let q2 = q * q;
            let inner = 4.0 * t * t / (q2 * q2) - 2.0 / q2 - 8.0 * t * t / (q2 * q);
            self.height * e * inner / (self.radius * self.radius)
        })
    }

    fn kinks(&self) -> Vec<f64> {
        vec![self.center - self.radius, self.center + self.radius]
    }

    fn far_field(&self, x: f64, radius: f64) -> FarField {
        if radius >= (x - self.center).abs() + self.radius {
            FarField::Exact(0.0)
        } else {
            FarField::Unknown
        }
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.height.abs())
    }
}

/// `height · exp(-((x - center)/width)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub center: f64,
    pub width: f64,
    pub height: f64,
}

impl Profile for Gaussian {
    fn value(&self, x: f64) -> f64 {
        let t = (x - self.center) / self.width;
        self.height * (-t * t).exp()
    }

    fn d1(&self, x: f64) -> f64 {
        let t = (x - self.center) / self.width;
        self.height * (-t * t).exp() * (-2.0 * t) / self.width
    }

    fn d2(&self, x: f64) -> f64 {
        let t = (x - self.center) / self.width;
        self.height * (-t * t).exp() * (4.0 * t * t - 2.0) / (self.width * self.width)
    }

    fn far_field(&self, x: f64, radius: f64) -> FarField {
        // exp(-1600) underflows
        if (radius - (x - self.center).abs()) / self.width.abs() > 40.0 {
            FarField::Exact(0.0)
        } else {
            FarField::Mean(0.0)
        }
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.height.abs())
    }
}

/// `amplitude · cos(freq · x + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosine {
    pub freq: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl Profile for Cosine {
    fn value(&self, x: f64) -> f64 {
        self.amplitude * (self.freq * x + self.phase).cos()
    }

    fn d1(&self, x: f64) -> f64 {
        -self.amplitude * self.freq * (self.freq * x + self.phase).sin()
    }

    fn d2(&self, x: f64) -> f64 {
        -self.freq * self.freq * self.value(x)
    }

    fn far_field(&self, _x: f64, _radius: f64) -> FarField {
        FarField::Mean(0.0)
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.amplitude.abs())
    }
}

/// `scale · |x - center|^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsPower {
    pub center: f64,
    pub exponent: f64,
    pub scale: f64,
}

impl Profile for AbsPower {
    fn value(&self, x: f64) -> f64 {
        self.scale * (x - self.center).abs().powf(self.exponent)
    }

    fn d1(&self, x: f64) -> f64 {
        let t = x - self.center;
        if t == 0.0 {
            return 0.0;
        }
        self.scale * self.exponent * t.signum() * t.abs().powf(self.exponent - 1.0)
    }

    fn d2(&self, x: f64) -> f64 {
        let t = (x - self.center).abs();
        if t == 0.0 {
            return 0.0;
        }
        self.scale * self.exponent * (self.exponent - 1.0) * t.powf(self.exponent - 2.0)
    }

    fn kinks(&self) -> Vec<f64> {
        vec![self.center]
    }
}
