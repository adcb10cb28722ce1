//! Multisegments on labeled integer lines, the Mœglin–Waldspurger involution,
//! ρ-derivatives via matchings, and randomized exact checks of the geometric
//! conditions GLS, LC and IG.
//!
//! ```
//! use multiseg::{check_gls, check_lc, parse_mseg, RankConfig};
//!
//! let m = parse_mseg("[1,2]+[-1,1]+[0,0]+[-2,-1]").unwrap();
//! let cfg = RankConfig::default();
//! assert!(!check_gls(&m, &cfg).holds);
//! assert!(check_lc(&m, &m, &cfg).holds);
//! ```

pub mod error;
pub mod geom;
pub mod harness;
pub mod linalg;
pub mod matching;
pub mod multisegment;
pub mod mw;
pub mod notation;
pub mod pairs;
pub mod segment;

pub use error::{Error, Result};
pub use geom::{
    check_gls, check_ig, check_lc, gls_matrix, lc_matrix, li_for_good, verify_gls_witness, verify_lc_witness,
    CoeffVector, LiRoute, Verdict, Witness,
};
pub use linalg::{is_prime, rank_exact, rank_mod_p, sample_coeffs, IntMatrix, RankConfig, DEFAULT_PRIME, DEFAULT_TRIALS};
pub use matching::{
    best_matching, derivative, enumerate_maximal_matchings, has_crossing, is_maximal_matching, rho_frontier, rho_sets,
    soc_cuspidal, DerivativeResult, Matching,
};
pub use multisegment::{sli_sufficient, supp_dual, Multisegment, SegFilter, SuppMultiset};
pub use mw::{leading_indices, mw_dual, mw_frontier, mw_reduce, mw_step, Frontier};
pub use notation::{parse_mseg, parse_point};
pub use pairs::{pairset_x, pairset_x_cross, pairset_y, pairset_y_cross, Pair, PairSet};
pub use segment::{CuspidalPoint, Line, Segment, Surgery};
