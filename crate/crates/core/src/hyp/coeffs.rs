// @generated by `hypineq::series::render_rust_constants`; do not edit.
// Exact Maclaurin coefficients as (power of x, numerator, denominator).

pub(crate) const LN_SINHC: [(u32, i128, i128); 10] = [
    (2, 1, 6),
    (4, -1, 180),
    (6, 1, 2835),
    (8, -1, 37800),
    (10, 1, 467775),
    (12, -691, 3831077250),
    (14, 2, 127702575),
    (16, -3617, 2605132530000),
    (18, 43867, 350813659321125),
    (20, -174611, 15313294652906250),
];

pub(crate) const LN_COSH: [(u32, i128, i128); 10] = [
    (2, 1, 2),
    (4, -1, 12),
    (6, 1, 45),
    (8, -17, 2520),
    (10, 31, 14175),
    (12, -691, 935550),
    (14, 10922, 42567525),
    (16, -929569, 10216206000),
    (18, 3202291, 97692469875),
    (20, -221930581, 18561569276250),
];

pub(crate) const A_SERIES: [(u32, i128, i128); 8] = [
    (6, 1, 9),
    (8, 7, 90),
    (10, 667, 37800),
    (12, 1447, 680400),
    (14, 68347, 419126400),
    (16, 476429, 54486432000),
    (18, 2047489, 5884534656000),
    (20, 2142601, 200074178304000),
];

pub(crate) const B_SERIES: [(u32, i128, i128); 8] = [
    (6, 1, 3),
    (8, 13, 90),
    (10, 41, 1512),
    (12, 671, 226800),
    (14, 73, 342144),
    (16, 597871, 54486432000),
    (18, 7913, 18681062400),
    (20, 28009, 2198617344000),
];

pub(crate) const C_SERIES: [(u32, i128, i128); 8] = [
    (6, 8, 45),
    (8, 4, 105),
    (10, 19, 4725),
    (12, 37, 133650),
    (14, 283, 20638800),
    (16, 3503, 6810804000),
    (18, 189169, 12504636144000),
    (20, 18917, 52797352608000),
];
