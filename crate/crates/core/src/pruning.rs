//! Transform pruning simulation: a seeded synthetic block corpus, a raw
//! grayscale frame reader and per-class prune statistics.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::eval::{block_transform_costs, prune, BlockCosts, CostModel, PruneMask, UCost};
use crate::matrix::DenseMatrix;

/// Default thresholds for the two pruning rules.
pub const TAU1: f64 = 0.34;
pub const TAU2: f64 = 0.33;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockClass {
    SmoothGradient,
    PiecewiseConstant,
    Ar1Noise,
    Frame,
}

impl BlockClass {
    pub const SYNTHETIC: [BlockClass; 3] = [BlockClass::SmoothGradient, BlockClass::PiecewiseConstant, BlockClass::Ar1Noise];

    pub fn label(self) -> &'static str {
        match self {
            BlockClass::SmoothGradient => "smooth",
            BlockClass::PiecewiseConstant => "piecewise",
            BlockClass::Ar1Noise => "ar1",
            BlockClass::Frame => "frame",
        }
    }
}

impl fmt::Display for BlockClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct Block {
    pub class: BlockClass,
    pub data: DenseMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub blocks_per_class: usize,
    /// `(height, width)` choices, drawn uniformly per block.
    pub sizes: Vec<(usize, usize)>,
    /// AR(1) correlation along both axes.
    pub rho: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            blocks_per_class: 200,
            sizes: vec![(4, 4), (8, 8), (16, 16), (32, 32), (4, 8), (8, 4), (8, 16), (16, 8)],
            rho: 0.95,
        }
    }
}

fn normal(sigma: f64) -> Normal<f64> {
    Normal::new(0.0, sigma).expect("positive sigma")
}

fn smooth_block(rng: &mut ChaCha8Rng, h: usize, w: usize) -> DenseMatrix<f64> {
    let base = normal(20.0).sample(rng);
    let gy = normal(4.0).sample(rng);
    let gx = normal(4.0).sample(rng);
    let noise = normal(1.0);
    let mut m = DenseMatrix::zeros(h, w);
    for r in 0..h {
        for c in 0..w {
            m[(r, c)] = base + gy * r as f64 + gx * c as f64 + noise.sample(rng);
        }
    }
    m
}

fn piecewise_block(rng: &mut ChaCha8Rng, h: usize, w: usize) -> DenseMatrix<f64> {
    let level = normal(30.0);
    let (a, b) = (level.sample(rng), level.sample(rng));
    let noise = normal(1.0);
    let orientation = rng.random_range(0..3u8);
    let split_r = rng.random_range(1..h);
    let split_c = rng.random_range(1..w);
    let mut m = DenseMatrix::zeros(h, w);
    for r in 0..h {
        for c in 0..w {
            let side = match orientation {
                0 => c >= split_c,
                1 => r >= split_r,
                _ => r * w + c * h >= split_r * w + split_c * h,
            };
            m[(r, c)] = if side { b } else { a } + noise.sample(rng);
        }
    }
    m
}

fn ar1_block(rng: &mut ChaCha8Rng, h: usize, w: usize, rho: f64) -> DenseMatrix<f64> {
    let e = normal(10.0);
    let s = (1.0 - rho * rho).sqrt();
    let mut m = DenseMatrix::zeros(h, w);
    for c in 0..w {
        for r in 0..h {
            let v = e.sample(rng);
            m[(r, c)] = if r == 0 { v } else { rho * m[(r - 1, c)] + s * v };
        }
    }
    for r in 0..h {
        for c in 1..w {
            m[(r, c)] = rho * m[(r, c - 1)] + s * m[(r, c)];
        }
    }
    m
}

/// Blocks in class order, `blocks_per_class` of each synthetic class.
pub fn synthetic_corpus(config: &CorpusConfig) -> Result<Vec<Block>> {
    if config.sizes.is_empty() {
        return Err(Error::InvalidArgument("corpus needs at least one block size".into()));
    }
    if config.sizes.iter().any(|&(h, w)| h < 2 || w < 2) {
        return Err(Error::InvalidSize("block sides must be at least 2".into()));
    }
    if !(config.rho.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!("AR(1) correlation must lie in (-1, 1), got {}", config.rho)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(3 * config.blocks_per_class);
    for class in BlockClass::SYNTHETIC {
        for _ in 0..config.blocks_per_class {
            let (h, w) = config.sizes[rng.random_range(0..config.sizes.len())];
            let data = match class {
                BlockClass::SmoothGradient => smooth_block(&mut rng, h, w),
                BlockClass::PiecewiseConstant => piecewise_block(&mut rng, h, w),
                _ => ar1_block(&mut rng, h, w, config.rho),
            };
            out.push(Block { class, data });
        }
    }
    Ok(out)
}

/// 8-bit grayscale frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

fn bad_frame(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl Frame {
    /// Parses `width height 255`, one whitespace byte, then `width·height`
    /// row-major pixel bytes.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let mut fields = [0usize; 3];
        for (i, field) in fields.iter_mut().enumerate() {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad_frame(format!("frame header field {} is missing or not an integer", i + 1)));
            }
            let text = std::str::from_utf8(&bytes[start..pos]).map_err(|e| bad_frame(e.to_string()))?;
            *field = text.parse().map_err(|_| bad_frame(format!("frame header field {} out of range", i + 1)))?;
        }
        let [width, height, maxval] = fields;
        if maxval != 255 {
            return Err(bad_frame(format!("frame max value must be 255, got {maxval}")));
        }
        if width == 0 || height == 0 {
            return Err(bad_frame("frame dimensions must be positive"));
        }
        if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
            return Err(bad_frame("frame header must end with a whitespace byte"));
        }
        pos += 1;
        let expected = width.checked_mul(height).ok_or_else(|| bad_frame("frame dimensions overflow"))?;
        let data = &bytes[pos..];
        if data.len() != expected {
            return Err(bad_frame(format!("expected {expected} pixel bytes, found {}", data.len())));
        }
        Ok(Self { width, height, pixels: data.to_vec() })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = format!("{} {} 255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    /// Non-overlapping `size × size` tiles with their mean removed. Partial
    /// tiles at the right and bottom edges are dropped.
    pub fn blocks(&self, size: usize) -> Result<Vec<Block>> {
        if size < 2 {
            return Err(Error::InvalidSize(format!("tile size {size} is too small")));
        }
        let mut out = Vec::new();
        for br in 0..self.height / size {
            for bc in 0..self.width / size {
                let mut m = DenseMatrix::zeros(size, size);
                for r in 0..size {
                    for c in 0..size {
                        m[(r, c)] = self.pixels[(br * size + r) * self.width + bc * size + c] as f64;
                    }
                }
                let mean = m.as_slice().iter().sum::<f64>() / (size * size) as f64;
                m.as_mut_slice().iter_mut().for_each(|v| *v -= mean);
                out.push(Block { class: BlockClass::Frame, data: m });
            }
        }
        Ok(out)
    }
}

/// Per-block outcome under proxy and exact `U` costs.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockRecord {
    pub class: BlockClass,
    pub rows: usize,
    pub cols: usize,
    pub proxy: BlockCosts<f64>,
    pub exact: BlockCosts<f64>,
    pub proxy_mask: PruneMask,
    pub exact_mask: PruneMask,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassStats {
    pub blocks: usize,
    /// fraction of the 16 combinations pruned, proxy costs
    pub prune_rate: f64,
    pub prune_rate_exact: f64,
    pub mean_kept: f64,
    /// proxy and exact costs pick the same cheapest combination
    pub best_agreement: f64,
    /// fraction of combination pairs ordered the same way
    pub pair_agreement: f64,
    /// proxy and exact masks identical
    pub mask_agreement: f64,
}

#[derive(Debug, Clone)]
pub struct SimReport {
    pub tau1: f64,
    pub tau2: f64,
    pub records: Vec<BlockRecord>,
    pub classes: Vec<(BlockClass, ClassStats)>,
    pub overall: ClassStats,
}

fn argmin(costs: &[f64; 16]) -> usize {
    let mut best = 0;
    for i in 1..16 {
        if costs[i] < costs[best] {
            best = i;
        }
    }
    best
}

fn flat(c: &BlockCosts<f64>) -> [f64; 16] {
    let mut out = [0.0; 16];
    for (i, v) in c.combined().iter().flatten().enumerate() {
        out[i] = *v;
    }
    out
}

fn pair_concordance(a: &[f64; 16], b: &[f64; 16]) -> f64 {
    let mut same = 0;
    let mut total = 0;
    for i in 0..16 {
        for j in i + 1..16 {
            total += 1;
            if (a[i] - a[j]).signum() == (b[i] - b[j]).signum() {
                same += 1;
            }
        }
    }
    same as f64 / total as f64
}

fn stats(records: &[&BlockRecord]) -> ClassStats {
    let n = records.len();
    if n == 0 {
        return ClassStats {
            blocks: 0,
            prune_rate: 0.0,
            prune_rate_exact: 0.0,
            mean_kept: 0.0,
            best_agreement: 0.0,
            pair_agreement: 0.0,
            mask_agreement: 0.0,
        };
    }
    let nf = n as f64;
    let mean = |f: &dyn Fn(&BlockRecord) -> f64| records.iter().map(|r| f(r)).sum::<f64>() / nf;
    ClassStats {
        blocks: n,
        prune_rate: mean(&|r| (16 - r.proxy_mask.kept()) as f64 / 16.0),
        prune_rate_exact: mean(&|r| (16 - r.exact_mask.kept()) as f64 / 16.0),
        mean_kept: mean(&|r| r.proxy_mask.kept() as f64),
        best_agreement: mean(&|r| (argmin(&flat(&r.proxy)) == argmin(&flat(&r.exact))) as u8 as f64),
        pair_agreement: mean(&|r| pair_concordance(&flat(&r.proxy), &flat(&r.exact))),
        mask_agreement: mean(&|r| (r.proxy_mask == r.exact_mask) as u8 as f64),
    }
}

pub fn evaluate_block(model: &CostModel<f64>, block: &Block, tau1: f64, tau2: f64) -> Result<BlockRecord> {
    let proxy = block_transform_costs(model, &block.data, UCost::Proxy)?;
    let exact = block_transform_costs(model, &block.data, UCost::Exact)?;
    Ok(BlockRecord {
        class: block.class,
        rows: block.data.rows(),
        cols: block.data.cols(),
        proxy,
        exact,
        proxy_mask: prune(&proxy, tau1, tau2),
        exact_mask: prune(&exact, tau1, tau2),
    })
}

pub fn simulate(model: &CostModel<f64>, blocks: &[Block], tau1: f64, tau2: f64) -> Result<SimReport> {
    if tau1.is_nan() || tau2.is_nan() {
        return Err(Error::InvalidArgument("thresholds must not be NaN".into()));
    }
    let records = blocks.iter().map(|b| evaluate_block(model, b, tau1, tau2)).collect::<Result<Vec<_>>>()?;
    let mut present: Vec<BlockClass> = records.iter().map(|r| r.class).collect();
    present.sort();
    present.dedup();
    let classes = present
        .into_iter()
        .map(|c| (c, stats(&records.iter().filter(|r| r.class == c).collect::<Vec<_>>())))
        .collect();
    let overall = stats(&records.iter().collect::<Vec<_>>());
    Ok(SimReport { tau1, tau2, records, classes, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Transform1d;

    fn small() -> CorpusConfig {
        CorpusConfig { blocks_per_class: 12, ..CorpusConfig::default() }
    }

    #[test]
    fn corpus_is_seeded() {
        let a = synthetic_corpus(&small()).unwrap();
        let b = synthetic_corpus(&small()).unwrap();
        assert_eq!(a.len(), 36);
        assert!(a.iter().zip(&b).all(|(x, y)| x.data == y.data && x.class == y.class));
        let c = synthetic_corpus(&CorpusConfig { seed: 2, ..small() }).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.data != y.data));
    }

    #[test]
    fn infinite_thresholds_keep_everything() {
        let model = CostModel::new().unwrap();
        let blocks = synthetic_corpus(&small()).unwrap();
        let rep = simulate(&model, &blocks, f64::INFINITY, f64::INFINITY).unwrap();
        assert!(rep.records.iter().all(|r| r.proxy_mask.kept() == 16 && r.exact_mask.kept() == 16));
        assert_eq!(rep.overall.prune_rate, 0.0);
    }

    #[test]
    fn dc_blocks_keep_dct_pair() {
        let model = CostModel::new().unwrap();
        for (h, w, level) in [(4, 4, 3.0), (8, 16, -40.0), (32, 8, 0.5)] {
            let block = Block { class: BlockClass::Frame, data: DenseMatrix::from_fn(h, w, |_, _| level) };
            let rec = evaluate_block(&model, &block, TAU1, TAU2).unwrap();
            assert!(rec.proxy_mask.is_kept(Transform1d::U, Transform1d::U));
            assert!(rec.exact_mask.is_kept(Transform1d::U, Transform1d::U));
        }
    }

    #[test]
    fn frame_round_trip_and_tiles() {
        let f = Frame { width: 9, height: 8, pixels: (0..72).map(|i| (i * 3) as u8).collect() };
        let g = Frame::parse(&f.to_bytes()).unwrap();
        assert_eq!(f, g);
        let tiles = g.blocks(4).unwrap();
        assert_eq!(tiles.len(), 4);
        assert!(tiles[0].data.as_slice().iter().sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn malformed_frames() {
        for bad in [&b""[..], b"4 4", b"4 4 255", b"4 4 256\n0000000000000000", b"4 x 255\n", b"4 4 255\n000", b"0 4 255\n"] {
            assert!(matches!(Frame::parse(bad), Err(Error::InvalidInput(_))), "{:?}", String::from_utf8_lossy(bad));
        }
        let mut ok = b"2 2 255\n".to_vec();
        ok.extend([1, 2, 3, 4]);
        assert!(Frame::parse(&ok).is_ok());
        ok.push(5);
        assert!(Frame::parse(&ok).is_err());
    }
}
