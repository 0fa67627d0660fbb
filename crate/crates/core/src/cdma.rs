//! Code-division channel arithmetic over Walsh codes.
//!
//! Each station `i` sends `data[i] · codes[i]`; the channel carries the
//! elementwise sum. A receiver recovers station `i` by correlating the
//! channel with `codes[i]` and dividing by the code length.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_WALSH_EXPONENT: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshCodeBook {
    order: usize,
    codes: Vec<Vec<i8>>,
}

impl WalshCodeBook {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn codes(&self) -> &[Vec<i8>] {
        &self.codes
    }

    pub fn code(&self, station: usize) -> Option<&[i8]> {
        self.codes.get(station).map(Vec::as_slice)
    }
}

/// Sylvester construction: `H_{2m} = [[H_m, H_m], [H_m, -H_m]]`, `2^k` codes.
pub fn walsh_codes(k: u32) -> Result<WalshCodeBook> {
    if k > MAX_WALSH_EXPONENT {
        return Err(Error::invalid(format!(
            "walsh exponent {k} is outside 0..={MAX_WALSH_EXPONENT}"
        )));
    }
    let mut codes = vec![vec![1i8]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(codes.len() * 2);
        for code in &codes {
            next.push(code.iter().chain(code).copied().collect());
        }
        for code in &codes {
            next.push(
                code.iter()
                    .copied()
                    .chain(code.iter().map(|c| -c))
                    .collect(),
            );
        }
        codes = next;
    }
    Ok(WalshCodeBook {
        order: codes.len(),
        codes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChannelFrame {
    pub samples: Vec<i64>,
}

pub fn inner_product(a: &[i64], code: &[i8]) -> Option<i64> {
    a.iter().zip(code).try_fold(0i64, |acc, (&s, &c)| {
        acc.checked_add(s.checked_mul(i64::from(c))?)
    })
}

/// Superposes `data[i] · codes[i]` for every station that has data.
pub fn channel_encode(data: &[i64], book: &WalshCodeBook) -> Result<ChannelFrame> {
    if data.len() > book.order {
        return Err(Error::invalid(format!(
            "{} stations but only {} codes",
            data.len(),
            book.order
        )));
    }
    let mut samples = vec![0i64; book.order];
    for (&d, code) in data.iter().zip(&book.codes) {
        for (s, &c) in samples.iter_mut().zip(code) {
            *s = d
                .checked_mul(i64::from(c))
                .and_then(|term| s.checked_add(term))
                .ok_or(Error::Overflow("channel_encode"))?;
        }
    }
    Ok(ChannelFrame { samples })
}

pub fn channel_decode(frame: &ChannelFrame, book: &WalshCodeBook, station: usize) -> Result<i64> {
    let code = book
        .code(station)
        .ok_or_else(|| Error::invalid(format!("station {station} is outside 0..{}", book.order)))?;
    if frame.samples.len() != book.order {
        return Err(Error::invalid(format!(
            "frame has {} samples, codebook order is {}",
            frame.samples.len(),
            book.order
        )));
    }
    let dot = inner_product(&frame.samples, code).ok_or(Error::Overflow("channel_decode"))?;
    Ok(dot / book.order as i64)
}

/// Decodes the first `stations` stations of a frame.
pub fn channel_decode_all(
    frame: &ChannelFrame,
    book: &WalshCodeBook,
    stations: usize,
) -> Result<Vec<i64>> {
    (0..stations)
        .map(|i| channel_decode(frame, book, i))
        .collect()
}
