//! Distinguished elements of M*(2) used throughout the transitivity and
//! additivity arguments. Diagonal entries are the determinant-one completions.

use crate::gf::Gf;
use crate::zorn::Octonion;

/// The canonical involution `[111, 111]`.
pub const X0: &str = "0;(1,1,1);(1,1,1);0";
pub const X1: &str = "0;(1,0,0);(1,0,0);0";
pub const U0: &str = "1;(0,0,0);(1,1,0);1";
pub const U1: &str = "0;(0,0,1);(0,0,1);0";
pub const U2: &str = "1;(1,0,0);(0,1,0);1";
pub const U3: &str = "0;(0,0,1);(1,1,1);0";
pub const U4: &str = "1;(1,1,0);(1,1,0);1";
pub const U5: &str = "0;(0,1,1);(1,0,1);0";
pub const V1: &str = "0;(0,1,0);(1,1,0);1";
pub const V2: &str = "0;(0,0,1);(1,0,1);1";
/// The order-3 element carrying `x1` to `x0` by conjugation.
pub const Y: &str = "1;(0,0,1);(1,0,1);0";
/// Shift witness for the pair `(x0, u1)`.
pub const A_SHIFT1: &str = "1;(0,1,1);(0,1,0);0";
/// Shift witness for the pair `(x0, u2)`.
pub const A_SHIFT2: &str = "1;(1,1,0);(1,0,0);0";

/// An involution of M*(2) with `<x0, w> ~ S3`.
pub const S3_PARTNER_OF_X0: &str = "0;(1,1,0);(1,0,0);0";

/// Every named element with its label.
pub const ALL: [(&str, &str); 13] = [
    ("x0", X0),
    ("x1", X1),
    ("u0", U0),
    ("u1", U1),
    ("u2", U2),
    ("u3", U3),
    ("u4", U4),
    ("u5", U5),
    ("v1", V1),
    ("v2", V2),
    ("y", Y),
    ("a_shift1", A_SHIFT1),
    ("a_shift2", A_SHIFT2),
];

pub fn named(text: &str) -> Octonion<Gf<2>> {
    text.parse().expect("named elements are well formed")
}
