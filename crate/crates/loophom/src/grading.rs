//! Degreewise dimension vectors for connected graded vector spaces.
//!
//! A [`GradedDims`] records `dim_F2 V_n` for `0 <= n <= cap`. Comparisons
//! between two vectors only ever range over the smaller cap, and every
//! mismatch reports the first offending degree — the engine's standard
//! failure currency.

use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradedDims {
    dims: Vec<u64>,
}

impl GradedDims {
    /// Wraps a dimension vector; index = degree, so `dims[0]` is degree 0.
    pub fn new(dims: Vec<u64>) -> Self {
        assert!(!dims.is_empty(), "a graded dimension vector needs degree 0");
        GradedDims { dims }
    }

    pub fn zeros(cap: usize) -> Self {
        GradedDims {
            dims: vec![0; cap + 1],
        }
    }

    /// The series of the unit object: 1 in degree 0, nothing above.
    pub fn unit(cap: usize) -> Self {
        let mut dims = vec![0; cap + 1];
        dims[0] = 1;
        GradedDims { dims }
    }

    pub fn cap(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn get(&self, n: usize) -> u64 {
        self.dims[n]
    }

    pub fn set(&mut self, n: usize, value: u64) {
        self.dims[n] = value;
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.dims
    }

    /// First degree `<= min(cap, other.cap)` where the two vectors differ.
    pub fn first_mismatch(&self, other: &GradedDims) -> Option<usize> {
        let through = self.cap().min(other.cap());
        (0..=through).find(|&n| self.dims[n] != other.dims[n])
    }

    pub fn agrees_with(&self, other: &GradedDims) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// True when the vector is `(1, 0, 0, ...)` — the collapsed page shape.
    pub fn is_unit(&self) -> bool {
        self.dims[0] == 1 && self.dims[1..].iter().all(|&d| d == 0)
    }

    /// Cauchy product truncated at `cap`: the series of a tensor product.
    pub fn convolve(&self, other: &GradedDims, cap: usize) -> GradedDims {
        let mut dims = vec![0u64; cap + 1];
        for i in 0..=self.cap().min(cap) {
            if self.dims[i] == 0 {
                continue;
            }
            for j in 0..=other.cap().min(cap - i) {
                let term = self.dims[i]
                    .checked_mul(other.dims[j])
                    .expect("graded dimension overflow");
                dims[i + j] = dims[i + j].checked_add(term).expect("graded dimension overflow");
            }
        }
        GradedDims { dims }
    }

    /// Series of one generator of degree `deg`: free (`height = None`) gives
    /// `1 + t^d + t^2d + ...`; height `h` truncates at `t^{(h-1)d}`.
    pub fn single_generator(deg: usize, height: Option<u64>, cap: usize) -> GradedDims {
        assert!(deg >= 1, "generators must have positive degree");
        let mut dims = vec![0u64; cap + 1];
        let mut n = 0usize;
        let mut e = 0u64;
        while n <= cap && height.is_none_or(|h| e < h) {
            dims[n] = 1;
            n += deg;
            e += 1;
        }
        GradedDims { dims }
    }
}

impl std::fmt::Display for GradedDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (n, d) in self.dims.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
