//! Grayscale Netpbm (PGM) images, ASCII `P2` and binary `P5`, maxval <= 255.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PgmError {
    #[error("unsupported format {magic} (only P2 and P5 grayscale are read)")]
    UnsupportedFormat { magic: String },
    #[error("not a PGM file: bad magic number at byte 0")]
    BadMagic,
    #[error("expected {what} at byte {offset}, found end of data")]
    UnexpectedEof { what: &'static str, offset: usize },
    #[error("invalid {what} {token:?} at byte {offset}")]
    BadNumber {
        what: &'static str,
        token: String,
        offset: usize,
    },
    #[error("maxval {maxval} at byte {offset} is outside 1..=255")]
    BadMaxval { maxval: u32, offset: usize },
    #[error("sample {value} at byte {offset} exceeds maxval {maxval}")]
    SampleOutOfRange { value: u32, maxval: u32, offset: usize },
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },
    #[error("truncated pixel data at byte {offset}: need {expected} bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
}

/// A grayscale image indexed by `(column, row)`, `(0, 0)` at the top left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    maxval: u8,
    data: Vec<u8>,
}

impl GrayImage {
    /// `data` is row-major, top row first.
    pub fn new(width: usize, height: usize, maxval: u8, data: Vec<u8>) -> Result<Self, PgmError> {
        if width == 0 || height == 0 {
            return Err(PgmError::EmptyImage { width, height });
        }
        if maxval == 0 {
            return Err(PgmError::BadMaxval { maxval: 0, offset: 0 });
        }
        if data.len() != width * height {
            return Err(PgmError::Truncated {
                offset: 0,
                expected: width * height,
                found: data.len(),
            });
        }
        if let Some((i, &v)) = data.iter().enumerate().find(|(_, &v)| v > maxval) {
            return Err(PgmError::SampleOutOfRange {
                value: v.into(),
                maxval: maxval.into(),
                offset: i,
            });
        }
        Ok(GrayImage {
            width,
            height,
            maxval,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self, PgmError> {
        let data = (0..height)
            .flat_map(|row| (0..width).map(move |col| (col, row)))
            .map(|(c, r)| f(c, r))
            .collect();
        GrayImage::new(width, height, 255, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u8 {
        self.maxval
    }

    pub fn get(&self, col: usize, row: usize) -> u8 {
        self.data[row * self.width + col]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments.
    fn skip_blank(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b'\n' | b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u32, PgmError> {
        self.skip_blank();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PgmError::UnexpectedEof { what, offset: start });
        }
        let token = &self.bytes[start..self.pos];
        std::str::from_utf8(token)
            .ok()
            .filter(|t| t.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| PgmError::BadNumber {
                what,
                token: String::from_utf8_lossy(token).into_owned(),
                offset: start,
            })
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let magic = bytes.get(..2).ok_or(PgmError::BadMagic)?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        [b'P', b'1'..=b'7'] => {
            return Err(PgmError::UnsupportedFormat {
                magic: String::from_utf8_lossy(magic).into_owned(),
            })
        }
        _ => return Err(PgmError::BadMagic),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval_offset = {
        cur.skip_blank();
        cur.pos
    };
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(PgmError::BadMaxval {
            maxval,
            offset: maxval_offset,
        });
    }
    if width == 0 || height == 0 {
        return Err(PgmError::EmptyImage { width, height });
    }
    let count = width * height;
    let data = if binary {
        // exactly one whitespace byte separates the header from the samples
        let start = cur.pos + 1;
        let available = bytes.len().saturating_sub(start);
        if cur.pos >= bytes.len() || available < count {
            return Err(PgmError::Truncated {
                offset: start.min(bytes.len()),
                expected: count,
                found: available,
            });
        }
        let data = bytes[start..start + count].to_vec();
        if let Some((i, &v)) = data.iter().enumerate().find(|(_, &v)| u32::from(v) > maxval) {
            return Err(PgmError::SampleOutOfRange {
                value: v.into(),
                maxval,
                offset: start + i,
            });
        }
        data
    } else {
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            cur.skip_blank();
            let offset = cur.pos;
            let v = cur.number("sample")?;
            if v > maxval {
                return Err(PgmError::SampleOutOfRange { value: v, maxval, offset });
            }
            data.push(v as u8);
        }
        data
    };
    GrayImage::new(width, height, maxval as u8, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    Ascii,
    Binary,
}

pub fn write_pgm(img: &GrayImage, format: PgmFormat) -> Vec<u8> {
    let magic = match format {
        PgmFormat::Ascii => "P2",
        PgmFormat::Binary => "P5",
    };
    let mut out = format!("{magic}\n{} {}\n{}\n", img.width, img.height, img.maxval).into_bytes();
    match format {
        PgmFormat::Binary => out.extend_from_slice(&img.data),
        PgmFormat::Ascii => {
            for row in img.data.chunks(img.width) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}
