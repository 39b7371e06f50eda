//! Communication complexity of cellular automata: iterated rule tables,
//! the matrices `M_c^n` and `M_p^n`, the measure `d_n`, and detectors for
//! rules whose `d_n` stays bounded.

pub mod bits;
pub mod complexity;
pub mod detectors;
pub mod error;
pub mod evolve;
pub mod exec;
pub mod matrices;
pub mod oracles;
pub mod pnm;
pub mod rules;

pub use complexity::{
    classify, d_n, d_sequence, one_way_cc, r_n_scan, ClassLabel, ClassifierParams,
    ComplexitySequence, RnScan,
};
pub use detectors::{
    detect_additivity, essential_positions, nilpotency_probe, sensibility_report,
    AdditivityWitness, NilpotencyReport, SensibilityReport,
};
pub use error::{Error, Result};
pub use evolve::{
    eval, spacetime, step, tabulate, IteratedTable, SpacetimeDiagram, TabulateOptions, Word,
};
pub use exec::Exec;
pub use matrices::{
    build_center_matrix, build_partition_matrix, profile, rank_gf2, RowColProfile, StateMatrix,
};
pub use pnm::export_pbm;
pub use rules::{
    eca_from_wolfram, orbit, representatives, space_mirror, state_complement, wolfram_code,
    EcaCode, RuleTable, SymmetryOrbit,
};
