//! Population size as a function of the time budget and the mean local
//! search duration: `m_opt(tau, t) = a tau^b / t^c`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationSizer {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub min: usize,
    pub max: usize,
}

impl Default for PopulationSizer {
    fn default() -> Self {
        PopulationSizer { a: 0.08, b: 0.35, c: 0.85, min: 2, max: 4096 }
    }
}

impl PopulationSizer {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        PopulationSizer { a, b, c, ..Default::default() }
    }

    /// The unclamped formula.
    pub fn raw(&self, tau: f64, t: f64) -> f64 {
        self.a * tau.powf(self.b) / t.max(f64::MIN_POSITIVE).powf(self.c)
    }

    /// Rounded and clamped to `[min, max]`.
    pub fn m_opt(&self, tau: f64, t: f64) -> usize {
        let m = self.raw(tau, t).round();
        if m.is_nan() {
            return self.min;
        }
        (m.min(self.max as f64) as usize).clamp(self.min, self.max)
    }
}
