//! Hierarchical rotation of standby ports over a `2^w × 2^w` port grid.
//!
//! At every tick exactly `3^w` ports are active: the zero cells of the rule-3
//! pattern, shifted so that at each depth `d` the excluded quadrant is
//! `QUADRANT_CYCLE[φ_d]`. The phase digits `φ_0 … φ_(w-1)` are the base-4
//! digits of the tick, most significant first, so depth `d` turns four times
//! faster than depth `d - 1`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest port-grid width accepted by [`build_schedule`].
pub const MAX_SCHEDULE_WIDTH: u32 = 8;

/// Widest grid [`efficiency`] can account for without overflowing `u64`.
pub const MAX_EFFICIENCY_WIDTH: u32 = 31;

/// One quadrant of a block: the bit of `x` and the bit of `y` at some depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Quadrant {
    pub x: u8,
    pub y: u8,
}

impl Quadrant {
    pub const fn new(x: u8, y: u8) -> Self {
        Quadrant { x, y }
    }
}

/// Order in which the standby role visits the quadrants.
pub const QUADRANT_CYCLE: [Quadrant; 4] = [
    Quadrant::new(0, 0),
    Quadrant::new(0, 1),
    Quadrant::new(1, 1),
    Quadrant::new(1, 0),
];

fn cycle_position(q: Quadrant) -> usize {
    QUADRANT_CYCLE.iter().position(|&c| c == q).unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RotationSchedule {
    width: u32,
    quadrant_cycle: [Quadrant; 4],
    period: u64,
    base_speed: f64,
}

impl RotationSchedule {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn quadrant_cycle(&self) -> &[Quadrant; 4] {
        &self.quadrant_cycle
    }

    /// Ticks before the standby pattern repeats, `4^width`.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn base_speed(&self) -> f64 {
        self.base_speed
    }

    /// Side length of the port grid.
    pub fn order(&self) -> usize {
        1 << self.width
    }

    pub fn port_count(&self) -> u64 {
        self.period
    }

    /// Ports on standby at any single tick, `4^w - 3^w`.
    pub fn standby_per_tick(&self) -> u64 {
        self.period - 3u64.pow(self.width)
    }

    /// Phase digit of every depth at `tick`, shallowest first.
    pub fn phases(&self, tick: u64) -> Vec<u8> {
        let t = tick % self.period;
        (0..self.width)
            .map(|d| ((t >> (2 * (self.width - 1 - d))) & 3) as u8)
            .collect()
    }

    /// Words whose bit `w-1-d` holds the excluded quadrant's x / y bit at depth `d`.
    fn excluded_words(&self, tick: u64) -> (u64, u64) {
        self.phases(tick).iter().fold((0, 0), |(xs, ys), &phase| {
            let q = self.quadrant_cycle[phase as usize];
            ((xs << 1) | u64::from(q.x), (ys << 1) | u64::from(q.y))
        })
    }

    pub fn is_standby(&self, tick: u64, x: u64, y: u64) -> bool {
        let (xs, ys) = self.excluded_words(tick);
        let mask = (1u64 << self.width) - 1;
        !(x ^ xs) & !(y ^ ys) & mask != 0
    }

    /// Quadrant of `(x, y)` at every depth, shallowest first.
    pub fn quadrant_path(&self, x: u64, y: u64) -> Vec<Quadrant> {
        (0..self.width)
            .rev()
            .map(|bit| Quadrant::new(((x >> bit) & 1) as u8, ((y >> bit) & 1) as u8))
            .collect()
    }
}

pub fn build_schedule(width: u32, base_speed: f64) -> Result<RotationSchedule> {
    if !(1..=MAX_SCHEDULE_WIDTH).contains(&width) {
        return Err(Error::invalid(format!(
            "schedule width {width} is outside 1..={MAX_SCHEDULE_WIDTH}"
        )));
    }
    Ok(RotationSchedule {
        width,
        quadrant_cycle: QUADRANT_CYCLE,
        period: 4u64.pow(width),
        base_speed,
    })
}

/// Rotation speed of the pattern at `depth`: `4^depth · x`.
pub fn depth_speed(schedule: &RotationSchedule, depth: u32) -> Result<f64> {
    if depth >= schedule.width {
        return Err(Error::invalid(format!(
            "depth {depth} is outside 0..{}",
            schedule.width
        )));
    }
    Ok(4f64.powi(depth as i32) * schedule.base_speed)
}

/// Standby and active ports at one tick, both as `(x, y)` in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PortAssignment {
    pub tick: u64,
    pub standby: Vec<(u64, u64)>,
    pub active: Vec<(u64, u64)>,
}

pub fn standby_set(schedule: &RotationSchedule, tick: u64) -> PortAssignment {
    let n = schedule.order() as u64;
    let mut standby = Vec::with_capacity(schedule.standby_per_tick() as usize);
    let mut active = Vec::with_capacity((schedule.period - schedule.standby_per_tick()) as usize);
    let (xs, ys) = schedule.excluded_words(tick);
    let mask = n - 1;
    for y in 0..n {
        for x in 0..n {
            if !(x ^ xs) & !(y ^ ys) & mask != 0 {
                standby.push((x, y));
            } else {
                active.push((x, y));
            }
        }
    }
    PortAssignment {
        tick,
        standby,
        active,
    }
}

/// Port accounting for a `2^w × 2^w` grid with `3^w` ports active.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub width: u32,
    pub total_ports: u64,
    pub active_ports: u64,
    pub standby_ports: u64,
    pub saving_percent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl EfficiencyReport {
    /// Saving as the exact fraction `standby / total`.
    pub fn saving_fraction(&self) -> (u64, u64) {
        (self.standby_ports, self.total_ports)
    }
}

const WIDTH4_NOTE: &str =
    "a widely reproduced figure of 172/256 (67.18%) for the 16x16 grid is a misprint; 4^4 - 3^4 = 175";

pub fn efficiency(width: u32) -> Result<EfficiencyReport> {
    if !(1..=MAX_EFFICIENCY_WIDTH).contains(&width) {
        return Err(Error::invalid(format!(
            "efficiency width {width} is outside 1..={MAX_EFFICIENCY_WIDTH}"
        )));
    }
    let total = 4u64.pow(width);
    let active = 3u64.pow(width);
    let standby = total - active;
    // total is a power of two, so the quotient is exact in binary floating point
    // for every supported width
    let saving_percent = standby as f64 * 100.0 / total as f64;
    Ok(EfficiencyReport {
        width,
        total_ports: total,
        active_ports: active,
        standby_ports: standby,
        saving_percent,
        note: (width == 4).then_some(WIDTH4_NOTE),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FairnessReport {
    pub width: u32,
    pub ticks_run: u64,
    /// Indexed `[y][x]`.
    pub per_cell_standby_counts: Vec<Vec<u64>>,
    pub min_standby_fraction: f64,
    pub max_standby_fraction: f64,
}

/// Number of ticks in `0..bound` (`bound <= period`) during which the cell
/// with the given quadrant path is active, i.e. no phase digit selects the
/// cell's quadrant at its depth.
fn active_ticks_below(path: &[usize], bound: u64) -> u64 {
    let width = path.len();
    let mut count = 0;
    for (d, &blocked) in path.iter().enumerate() {
        let shift = 2 * (width - 1 - d);
        let digit = ((bound >> shift) & 3) as usize;
        let free_below = (0..digit).filter(|&p| p != blocked).count() as u64;
        count += free_below * 3u64.pow((width - 1 - d) as u32);
        if digit == blocked {
            return count;
        }
    }
    count
}

/// Per-port standby counts over ticks `0..ticks`.
///
/// Counts come from a base-4 digit count per port rather than replaying
/// every tick; the result equals accumulating [`standby_set`] tick by tick.
pub fn simulate(schedule: &RotationSchedule, ticks: u64) -> Result<FairnessReport> {
    if ticks == 0 {
        return Err(Error::invalid("simulation needs at least one tick"));
    }
    let n = schedule.order();
    let full_periods = ticks / schedule.period;
    let rem = ticks % schedule.period;
    let per_period = schedule.standby_per_tick();

    let mut counts = vec![vec![0u64; n]; n];
    for (y, row) in counts.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let path: Vec<usize> = schedule
                .quadrant_path(x as u64, y as u64)
                .into_iter()
                .map(cycle_position)
                .collect();
            *slot = full_periods * per_period + rem - active_ticks_below(&path, rem);
        }
    }

    let (min, max) = counts
        .iter()
        .flatten()
        .fold((u64::MAX, 0), |(lo, hi), &c| (lo.min(c), hi.max(c)));
    Ok(FairnessReport {
        width: schedule.width,
        ticks_run: ticks,
        per_cell_standby_counts: counts,
        min_standby_fraction: min as f64 / ticks as f64,
        max_standby_fraction: max as f64 / ticks as f64,
    })
}
