//! Diagonal-norm SBP first-derivative tables for unit spacing.
//!
//! Each operator of interior order `2p` carries `r` closure rows (`r = 2p`,
//! except `r = 1` for the second-order operator). Row `i` lists the
//! coefficients of `(D u)_i` on `u_0 .. u_{r+p-1}`; the right boundary uses
//! the antisymmetric reflection `D[N-i][N-j] = -D[i][j]`.
//!
//! The tables were computed offline in exact rational arithmetic from the
//! conditions `HD + (HD)^T = diag(-1, 0, .., 0, 1)` and exactness of the
//! closure rows on `1, x, .., x^p`. The norm weights coincide with the
//! classical Kreiss-Scherer / Strand diagonal norms. The (4,2) closure is
//! unique; the (6,3) and (8,4) families have one and three free parameters,
//! fixed here at rounded values that minimise the spectral radius of
//! `H^-1 D^T H D` (s45 = 0.7032 for (6,3); s56 = 0.7899, s57 = -0.1530,
//! s67 = 0.7663 for (8,4), where `sij` is the entry `(HD)[i][j]`). The
//! resulting `dx^2 · ρ(H^-1 D^T H D)` is 2.0, 3.749, 4.443 and 4.967 for
//! orders 2, 4, 6 and 8.
//!
//! `sbp::tests` re-checks the SBP identity and every exactness condition.

#![allow(clippy::excessive_precision)]
#![allow(clippy::unreadable_literal)]

pub(super) const SBP_2_1_WEIGHTS: [f64; 1] = [
    1.0 / 2.0,
];

pub(super) const SBP_2_1_CLOSURE: [[f64; 2]; 1] = [
    [-1.0, 1.0],
];

pub(super) const SBP_2_1_INTERIOR: [f64; 1] = [1.0 / 2.0];

pub(super) const SBP_4_2_WEIGHTS: [f64; 4] = [
    17.0 / 48.0,
    59.0 / 48.0,
    43.0 / 48.0,
    49.0 / 48.0,
];

pub(super) const SBP_4_2_CLOSURE: [[f64; 6]; 4] = [
    [-1.411764705882353, 1.7352941176470589, -0.23529411764705882, -0.08823529411764706, 0.0, 0.0],
    [-0.5, 0.0, 0.5, 0.0, 0.0, 0.0],
    [0.09302325581395349, -0.686046511627907, 0.0, 0.686046511627907, -0.09302325581395349, 0.0],
    [0.030612244897959183, 0.0, -0.6020408163265306, 0.0, 0.6530612244897959, -0.08163265306122448],
];

pub(super) const SBP_4_2_INTERIOR: [f64; 2] = [2.0 / 3.0, -1.0 / 12.0];

pub(super) const SBP_6_3_WEIGHTS: [f64; 6] = [
    13649.0 / 43200.0,
    12013.0 / 8640.0,
    2711.0 / 4320.0,
    5359.0 / 4320.0,
    7877.0 / 8640.0,
    43801.0 / 43200.0,
];

pub(super) const SBP_6_3_CLOSURE: [[f64; 9]; 6] = [
    [-1.5825335189391163, 2.0394832344249885, -0.16593108164212275, -0.413770972232398, 0.08006984638679268, 0.04268249200185606, 0.0, 0.0, 0.0],
    [-0.4634463775354477, 0.0, 0.30113044202114375, 0.2310724492910458, -0.04830433696828436, -0.020452176808457505, 0.0, 0.0, 0.0],
    [0.08354088282306651, -0.6671855403909996, 0.0, 0.6677044141153325, -0.08437108078199926, 0.00031132423459977865, 0.0, 0.0, 0.0],
    [0.10538458667661878, -0.2589917273123095, -0.3377769484356534, 0.0, 0.535810163587734, -0.05786141693101947, 0.013435342414629596, 0.0, 0.0],
    [-0.027748465998053404, 0.07366763996445347, 0.05807540941982989, -0.7290609792222081, 0.0, 0.7713149676272693, -0.1645296432652025, 0.01828107147391139, 0.0],
    [-0.0133004573715973, 0.02804639163489418, -0.00019268966461952924, 0.07079275206806541, -0.6935512887833611, 0.0, 0.7397091390607521, -0.1479418278121504, 0.016437980868016712],
];

pub(super) const SBP_6_3_INTERIOR: [f64; 3] = [3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];

pub(super) const SBP_8_4_WEIGHTS: [f64; 8] = [
    1498139.0 / 5080320.0,
    1107307.0 / 725760.0,
    20761.0 / 80640.0,
    1304999.0 / 725760.0,
    299527.0 / 725760.0,
    103097.0 / 80640.0,
    670091.0 / 725760.0,
    5127739.0 / 5080320.0,
];

pub(super) const SBP_8_4_CLOSURE: [[f64; 12]; 8] = [
    [-1.6955436044318986, 2.267062921397814, -0.1131375459820484, -0.6795632692738569, 0.019062930742741496, 0.25203815533805607, -0.010896593262262937, -0.03902299452854508, 0.0, 0.0, 0.0, 0.0],
    [-0.4381770209810184, 0.0, 0.13544405300427073, 0.40897546931429135, 0.012519993702439041, -0.1441358864343854, 0.004828796350063713, 0.020544595044339017, 0.0, 0.0, 0.0, 0.0],
    [0.1295895692702205, -0.8026703273766518, 0.0, 1.0877533195253921, -0.6665749883595845, 0.29187900390154614, -0.02615134145754058, -0.013825235503382029, 0.0, 0.0, 0.0, 0.0],
    [0.11144838717081301, -0.3470204958011462, -0.15574388945891912, 0.0, 0.2638219263003267, 0.13086442211833113, 0.027509088768139543, -0.030879439097545012, 0.0, 0.0, 0.0, 0.0],
    [-0.01362096143014057, -0.04628456421847335, 0.41581850717965324, -1.1494367786543451, 0.0, 1.2273978973514907, -0.571740744573945, 0.14652028825766084, -0.008653643911901097, 0.0, 0.0, 0.0],
    [-0.0581342166438726, 0.17200918229111095, -0.05877668603354123, -0.18405314089320413, -0.3962167344022296, 0.0, 0.617840829510073, -0.11967292937718847, 0.029797181295285025, -0.002793485746432971, 0.0, 0.0],
    [0.003480254671877899, -0.007979453536907674, 0.007292072270781133, -0.05357381808341454, 0.2555649755033272, -0.8555223454724806, 0.0, 0.8299617335555917, -0.21661535522787204, 0.04126006766245181, -0.003868131343354858, 0.0],
    [0.01140110095307113, -0.031055445164688243, 0.003526431434985283, 0.05501127494983656, -0.05991090355157832, 0.15158512552998504, -0.7592136058407029, 0.0, 0.7926019635554774, -0.19815049088886935, 0.03774295064549892, -0.003538401623015524],
];

pub(super) const SBP_8_4_INTERIOR: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
