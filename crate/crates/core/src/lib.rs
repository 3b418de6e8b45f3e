//! Exact and numerical verification of the analytic torsion and arithmetic
//! height of Hirzebruch surfaces `S_n = ℙ(O(1) ⊕ O(n+1))` over `ℙ¹`.

pub mod chow;
pub mod cli;
pub mod constants;
pub mod forms;
pub mod radial;
pub mod report;
pub mod torsion;
