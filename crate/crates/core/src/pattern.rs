//! Level-indexed LSCVT grids, their zero-cell masks, and text renderers.
//!
//! Cells are stored row-major: `cells[y * order + x] = lscvt(x, y, level)`,
//! with row 0 emitted first by every renderer.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::boolcore::{level_width, lscvt, BooleanRule};
use crate::error::{Error, Result};

/// Largest grid side length accepted by [`generate_grid`].
pub const MAX_ORDER: u64 = 4096;

/// Side length at which a level's pattern appears once at full resolution.
pub fn natural_order(level: u64) -> u64 {
    // widths above 63 would overflow; such grids are far past MAX_ORDER anyway
    1u64.checked_shl(level_width(level)).unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGrid {
    level: u64,
    width: u32,
    order: usize,
    rule: BooleanRule,
    cells: Vec<u64>,
}

impl PatternGrid {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rule(&self) -> BooleanRule {
        self.rule
    }

    pub fn rule_number(&self) -> u8 {
        self.rule.number()
    }

    /// Value at column `x`, row `y`.
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.cells[y * self.order + x]
    }

    pub fn row(&self, y: usize) -> &[u64] {
        &self.cells[y * self.order..(y + 1) * self.order]
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn zero_count(&self) -> usize {
        self.cells.iter().filter(|&&v| v == 0).count()
    }
}

/// Fills an `order × order` grid with `lscvt(x, y, level)`.
pub fn generate_grid(level: u64, order: u64, rule: &BooleanRule) -> Result<PatternGrid> {
    if order == 0 {
        return Err(Error::invalid("grid order must be at least 1"));
    }
    if order > MAX_ORDER {
        return Err(Error::ResourceLimit {
            what: "grid order",
            requested: order,
            limit: MAX_ORDER,
        });
    }
    let n = order as usize;
    let mut cells = Vec::with_capacity(n * n);
    for y in 0..order {
        cells.extend((0..order).map(|x| lscvt(x, y, level, rule).value));
    }
    Ok(PatternGrid {
        level,
        width: level_width(level),
        order: n,
        rule: *rule,
        cells,
    })
}

/// Boolean image of a grid: `true` where the cell value is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroMask {
    order: usize,
    bits: Vec<bool>,
}

impl ZeroMask {
    /// Builds a mask from row-major bits.
    pub fn from_bits(order: usize, bits: Vec<bool>) -> Result<Self> {
        if order == 0 || bits.len() != order * order {
            return Err(Error::invalid(format!(
                "mask of order {order} needs {} bits, got {}",
                order * order,
                bits.len()
            )));
        }
        Ok(ZeroMask { order, bits })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut bits = Vec::with_capacity(order * order);
        for y in 0..order {
            for x in 0..order {
                bits.push(f(x, y));
            }
        }
        ZeroMask::from_bits(order, bits)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.order + x]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn true_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// The `size × size` block whose top-left corner is `(x0, y0)`.
    pub fn sub_mask(&self, x0: usize, y0: usize, size: usize) -> Result<ZeroMask> {
        if size == 0 || x0 + size > self.order || y0 + size > self.order {
            return Err(Error::invalid("sub-mask falls outside the mask"));
        }
        ZeroMask::from_fn(size, |x, y| self.get(x0 + x, y0 + y))
    }

    pub fn transpose(&self) -> ZeroMask {
        ZeroMask {
            order: self.order,
            bits: (0..self.order * self.order)
                .map(|i| self.get(i / self.order, i % self.order))
                .collect(),
        }
    }

    pub fn complement(&self) -> ZeroMask {
        ZeroMask {
            order: self.order,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

pub fn zero_mask(grid: &PatternGrid) -> ZeroMask {
    ZeroMask {
        order: grid.order,
        bits: grid.cells.iter().map(|&v| v == 0).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskFormat {
    Ascii,
    Pbm,
}

impl FromStr for MaskFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(MaskFormat::Ascii),
            "pbm" => Ok(MaskFormat::Pbm),
            other => Err(Error::invalid(format!("unknown mask format `{other}`"))),
        }
    }
}

pub fn render(mask: &ZeroMask, format: MaskFormat) -> Vec<u8> {
    match format {
        MaskFormat::Ascii => render_ascii(mask),
        MaskFormat::Pbm => render_pbm(mask),
    }
}

fn render_ascii(mask: &ZeroMask) -> Vec<u8> {
    let mut out = Vec::with_capacity(mask.order * (mask.order + 1));
    for row in mask.bits.chunks(mask.order) {
        out.extend(row.iter().map(|&b| if b { b'#' } else { b'.' }));
        out.push(b'\n');
    }
    out
}

/// Plain PBM (`P1`); `1` marks a zero cell.
fn render_pbm(mask: &ZeroMask) -> Vec<u8> {
    let n = mask.order;
    let mut out = format!("P1\n{n} {n}\n").into_bytes();
    out.reserve(n * 2 * n);
    for row in mask.bits.chunks(n) {
        for (i, &b) in row.iter().enumerate() {
            if i > 0 {
                out.push(b' ');
            }
            out.push(if b { b'1' } else { b'0' });
        }
        out.push(b'\n');
    }
    out
}

/// Decimal cell values, space separated, one row per line.
pub fn render_values(grid: &PatternGrid) -> Vec<u8> {
    let mut out = String::new();
    for y in 0..grid.order {
        for (i, v) in grid.row(y).iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Plain PGM (`P2`) wrapper around [`render_values`], max value `2^width - 1`.
pub fn render_pgm(grid: &PatternGrid) -> Vec<u8> {
    let n = grid.order;
    let max = crate::boolcore::width_mask(grid.width);
    let mut out = format!("P2\n{n} {n}\n{max}\n").into_bytes();
    out.extend(render_values(grid));
    out
}
