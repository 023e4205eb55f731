//! Time budgets measured either on the wall clock or in weight evaluations.

use std::time::{Duration, Instant};

use map_core::weight_evaluations;

/// Weight evaluations counted as one virtual second by default.
pub const DEFAULT_EVALS_PER_SEC: f64 = 50e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Clock {
    Wall,
    /// Virtual seconds = weight evaluations on this thread / rate. Runs
    /// become reproducible across machines and loads.
    Work { evals_per_sec: f64 },
}

impl Clock {
    pub fn work() -> Self {
        Clock::Work { evals_per_sec: DEFAULT_EVALS_PER_SEC }
    }
}

/// A started budget of `tau` seconds on some clock.
#[derive(Debug, Clone)]
pub struct Timer {
    clock: Clock,
    tau: f64,
    wall: Instant,
    evals: u64,
}

impl Timer {
    pub fn start(clock: Clock, tau: f64) -> Self {
        Timer { clock, tau, wall: Instant::now(), evals: weight_evaluations() }
    }

    pub fn unlimited(clock: Clock) -> Self {
        Timer::start(clock, f64::INFINITY)
    }

    pub fn clock(&self) -> Clock {
        self.clock
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Seconds spent so far on this timer's clock.
    pub fn elapsed(&self) -> f64 {
        match self.clock {
            Clock::Wall => self.wall.elapsed().as_secs_f64(),
            Clock::Work { evals_per_sec } => (weight_evaluations() - self.evals) as f64 / evals_per_sec,
        }
    }

    pub fn elapsed_duration(&self) -> Duration {
        Duration::from_secs_f64(self.elapsed())
    }

    pub fn expired(&self) -> bool {
        self.elapsed() >= self.tau
    }
}
