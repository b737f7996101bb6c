//! Arrangement files shipped with the binary.

use fanoball::namba::{BranchArrangement, NambaError};

pub const P2_QUADRILATERAL: &str = include_str!("../data/p2-quadrilateral.arr");
pub const DP5_TEN_CURVES: &str = include_str!("../data/dp5-ten-curves.arr");

/// The plane with the six lines through four general points, weight 3.
pub fn p2_quadrilateral() -> Result<BranchArrangement, NambaError> {
    P2_QUADRILATERAL.parse()
}

/// The degree-5 del Pezzo surface with its ten (−1)-curves, weight 3.
pub fn dp5_ten_curves() -> Result<BranchArrangement, NambaError> {
    DP5_TEN_CURVES.parse()
}

/// A bundled file by name, with or without the `.arr` suffix.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name.trim_end_matches(".arr") {
        "p2-quadrilateral" => Some(P2_QUADRILATERAL),
        "dp5-ten-curves" => Some(DP5_TEN_CURVES),
        _ => None,
    }
}
