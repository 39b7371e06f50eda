//! Binary PBM (P4) and PGM (P5) writers.

use std::io::Write;

use crate::error::Result;
use crate::matrices::StateMatrix;

/// Writes `m` as P4 when it is a 0-1 matrix (state 1 is black), otherwise as
/// P5 with state `k` mapped to gray `floor(255 k / (s - 1))`.
pub fn export_pbm<W: Write>(m: &StateMatrix, sink: &mut W) -> Result<()> {
    if let Some(raster) = m.pbm_raster() {
        write!(sink, "P4\n{} {}\n", m.cols(), m.rows())?;
        sink.write_all(&raster)?;
    } else {
        let top = m.states() - 1;
        write!(sink, "P5\n{} {}\n255\n", m.cols(), m.rows())?;
        let raster: Vec<u8> = m
            .entries()
            .iter()
            .map(|&k| (255 * u32::from(k) / top) as u8)
            .collect();
        sink.write_all(&raster)?;
    }
    sink.flush()?;
    Ok(())
}
