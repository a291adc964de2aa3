//! Instrumentation hooks for counting arithmetic in the vertex-domain kernels.
//!
//! Kernels are generic over [`OpCounter`]; the [`NoCount`] instance compiles
//! to nothing.

pub trait OpCounter {
    /// `n` fused multiply-add steps inside a sparse matvec.
    fn multiply_adds(&mut self, n: usize);
    /// `n` scaled accumulations `y += g · t` of an intermediate vector.
    fn accumulations(&mut self, n: usize);
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NoCount;

impl OpCounter for NoCount {
    #[inline(always)]
    fn multiply_adds(&mut self, _: usize) {}
    #[inline(always)]
    fn accumulations(&mut self, _: usize) {}
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct WorkCounter {
    pub multiply_adds: usize,
    pub accumulations: usize,
}

impl WorkCounter {
    pub fn total(&self) -> usize {
        self.multiply_adds + self.accumulations
    }
}

impl OpCounter for WorkCounter {
    #[inline]
    fn multiply_adds(&mut self, n: usize) {
        self.multiply_adds += n;
    }
    #[inline]
    fn accumulations(&mut self, n: usize) {
        self.accumulations += n;
    }
}
