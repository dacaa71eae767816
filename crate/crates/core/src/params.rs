use crate::error::{Error, Result};
use serde::Serialize;

/// The ambient triple `(r, t, k)`: uniformity, intersection order and
/// configuration edge count.
///
/// An `ell`-configuration is `ell` edges spanning at most
/// `ell*(r-t) + t` vertices; the minus variant lowers the bound by one.
/// Most of the structural machinery assumes `t >= 2`; `t = 1` is accepted
/// because the closed-form bound calculator covers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    r: usize,
    t: usize,
    k: usize,
}

impl Params {
    pub fn new(r: usize, t: usize, k: usize) -> Result<Params> {
        if t < 1 || r <= t {
            return Err(Error::BadArgs(format!("need r > t >= 1, got r={r}, t={t}")));
        }
        if k < 2 {
            return Err(Error::BadArgs(format!("need k >= 2, got k={k}")));
        }
        Ok(Params { r, t, k })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Span ceiling of an `ell`-configuration: `ell*(r-t) + t`, minus one
    /// for the strict variant.
    pub fn config_bound(&self, ell: usize, minus: bool) -> usize {
        let s = ell * (self.r - self.t) + self.t;
        if minus {
            s - 1
        } else {
            s
        }
    }
}
