//! Published values that `verify` compares against.

/// `(level, count, qhat)` for the roots of the maximal class.
pub const ROOT_LEVELS: [(i64, usize, u8); 4] = [(0, 56, 2), (1, 112, 0), (2, 56, 2), (3, 16, 0)];

/// `(level, count, qhat)` for `B^2` of the maximal class.
pub const B2_LEVELS: [(i64, usize, u8); 7] = [
    (3, 8, 0),
    (4, 28, 2),
    (5, 56, 0),
    (6, 56, 2),
    (7, 56, 0),
    (8, 28, 2),
    (9, 8, 0),
];

/// `(level, type, count, qhat)` for `B^4` of the maximal class.
pub const B4_LEVELS: [(i64, &str, usize, u8); 15] = [
    (1, "h-l", 8, 2),
    (2, "2h-l-l-l-l", 70, 0),
    (3, "3h-2l-l-l-l-l-l", 168, 2),
    (4, "4h-2l-2l-2l-l-l-l-l", 280, 0),
    (4, "4h-3l-l-l-l-l-l-l-l", 8, 0),
    (5, "5h-2l-2l-2l-2l-2l-2l-l", 56, 2),
    (5, "5h-3l-2l-2l-2l-l-l-l-l", 280, 2),
    (6, "6h-3l-3l-2l-2l-2l-2l-l-l", 420, 0),
    (7, "7h-3l-3l-3l-3l-2l-2l-2l-l", 280, 2),
    (7, "7h-4l-3l-2l-2l-2l-2l-2l-2l", 56, 2),
    (8, "8h-3l-3l-3l-3l-3l-3l-3l-l", 8, 0),
    (8, "8h-4l-3l-3l-3l-3l-2l-2l-2l", 280, 0),
    (9, "9h-4l-4l-3l-3l-3l-3l-3l-2l", 168, 2),
    (10, "10h-4l-4l-4l-4l-3l-3l-3l-3l", 70, 0),
    (11, "11h-4l-4l-4l-4l-4l-4l-4l-3l", 8, 2),
];

/// `(bi-level, type, count, qhat)` for `B^4` of the `E7` class, in the
/// published row order. Types list real coefficients, then `l7`, `l8`.
pub const E7_BILEVELS: [(&str, &str, usize, u8); 25] = [
    ("1,1", "h-l", 6, 2),
    ("0,4", "2h-l-l-l-l", 15, 0),
    ("0,2", "2h-l-l-l7-l8", 15, 2),
    ("1,5", "3h-2l-l-l-l-l-l", 6, 2),
    ("1,3", "3h-2l-l-l-l-l7-l8", 60, 0),
    ("0,2", "4h-2l-2l-2l-l-l-l7-l8", 60, 2),
    ("0,4", "4h-2l-l-l-l-l-2l7-2l8", 30, 0),
    ("0,6", "4h-3l-l-l-l-l-l-l7-l8", 6, 2),
    ("1,1", "5h-2l-2l-2l-2l-l-2l7-2l8", 30, 2),
    ("1,3", "5h-3l-2l-2l-2l-l-l-l7-l8", 60, 0),
    ("1,5", "5h-3l-2l-l-l-l-l-2l7-2l8", 30, 2),
    ("0,2", "6h-3l-3l-2l-2l-2l-2l-l7-l8", 15, 2),
    ("0,4", "6h-3l-3l-2l-2l-l-l-2l7-2l8", 90, 0),
    ("0,2", "6h-2l-2l-2l-2l-l-l-3l7-3l8", 15, 2),
    ("1,5", "7h-3l-3l-3l-3l-2l-l-2l7-2l8", 30, 2),
    ("1,3", "7h-3l-3l-2l-2l-2l-l-3l7-3l8", 60, 0),
    ("1,1", "7h-4l-3l-2l-2l-2l-2l-2l7-2l8", 30, 2),
    ("0,6", "8h-3l-3l-3l-3l-3l-l-3l7-3l8", 6, 2),
    ("0,4", "8h-4l-3l-3l-3l-3l-2l-2l7-2l8", 30, 0),
    ("0,2", "8h-4l-3l-3l-2l-2l-2l-3l7-3l8", 60, 2),
    ("1,3", "9h-4l-4l-3l-3l-3l-2l-3l7-3l8", 60, 0),
    ("1,5", "9h-3l-3l-3l-3l-3l-2l-4l7-4l8", 6, 2),
    ("0,2", "10h-4l-4l-4l-4l-3l-3l-3l7-3l8", 15, 2),
    ("0,4", "10h-4l-4l-3l-3l-3l-3l-4l7-4l8", 15, 0),
    ("1,1", "11h-4l-4l-4l-4l-4l-3l-4l7-4l8", 6, 2),
];

/// Summary grid rows `C2+, C2-, C4+, C4-, C0+, C0-` over the columns
/// `M, M-1, M-2, M-3, M-4, (M-2)_I`.
pub const SUMMARY_GRID: [(&str, [i64; 6]); 6] = [
    ("C2+", [-128, -84, -48, -20, 0, 0]),
    ("C2-", [0, 12, 16, 12, 0, 0]),
    ("C4+", [112, 84, 60, 40, 24, 24]),
    ("C4-", [0, 0, 4, 12, 24, 24]),
    ("C0+", [46, 30, 18, 10, 6, 6]),
    ("C0-", [30, 18, 10, 6, 6, 6]),
];

/// Total of every class's signed count.
pub const FULL_COUNT: i64 = 30;
/// Total over each Bertini pair with doubled `B^4` weight.
pub const PAIRED_COUNT: i64 = 96;
/// `2(r + r') - 4`.
pub const WEIGHTED_BALANCE: i64 = 12;

/// Published `B^4` sums.
pub const B4_SUMS: [(crate::real_forms::ClassId, i64); 6] = {
    use crate::real_forms::ClassId::*;
    [
        (MConnected, 112),
        (M1Connected, 84),
        (M2Connected, 60),
        (M3Connected, 40),
        (M2IA, 24),
        (M2IB, 24),
    ]
};
