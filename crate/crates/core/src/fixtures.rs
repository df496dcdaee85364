//! Published reference values used as regression fixtures.
//!
//! These tables are data, not inputs to any algorithm: the solvers never read
//! them. Tests and the acceptance suite compare solver output against them.

/// Nontrivial solutions `(g, a, b)` of `a^4 - g*b^4 = ±1` with `1 < g < 10^7`
/// and `max(a, b) < 10^500`, ascending in `g`.
pub const THUE_SMALL_SOLUTIONS: &[(u64, u64, u64)] = &[
    (2, 1, 1),
    (5, 3, 2),
    (15, 2, 1),
    (17, 2, 1),
    (39, 5, 2),
    (80, 3, 1),
    (82, 3, 1),
    (150, 7, 2),
    (255, 4, 1),
    (257, 4, 1),
    (410, 9, 2),
    (624, 5, 1),
    (626, 5, 1),
    (915, 11, 2),
    (1295, 6, 1),
    (1297, 6, 1),
    (1785, 13, 2),
    (2400, 7, 1),
    (2402, 7, 1),
    (3164, 15, 2),
    (4095, 8, 1),
    (4097, 8, 1),
    (5220, 17, 2),
    (6560, 9, 1),
    (6562, 9, 1),
    (7140, 239, 26),
    (8145, 19, 2),
    (9999, 10, 1),
    (10001, 10, 1),
    (12155, 21, 2),
    (14640, 11, 1),
    (14642, 11, 1),
    (17490, 23, 2),
    (20735, 12, 1),
    (20737, 12, 1),
    (24414, 25, 2),
    (28560, 13, 1),
    (28562, 13, 1),
    (33215, 27, 2),
    (38415, 14, 1),
    (38417, 14, 1),
    (44205, 29, 2),
    (50624, 15, 1),
    (50626, 15, 1),
    (57720, 31, 2),
    (61535, 63, 4),
    (65535, 16, 1),
    (65537, 16, 1),
    (69729, 65, 4),
    (74120, 33, 2),
    (83520, 17, 1),
    (83522, 17, 1),
    (93789, 35, 2),
    (104975, 18, 1),
    (104977, 18, 1),
    (114240, 239, 13),
    (117135, 37, 2),
    (130320, 19, 1),
    (130322, 19, 1),
    (144590, 39, 2),
    (159999, 20, 1),
    (160001, 20, 1),
    (176610, 41, 2),
    (194480, 21, 1),
    (194482, 21, 1),
    (213675, 43, 2),
    (234255, 22, 1),
    (234257, 22, 1),
    (256289, 45, 2),
    (279840, 23, 1),
    (279842, 23, 1),
    (304980, 47, 2),
    (331775, 24, 1),
    (331777, 24, 1),
    (360300, 49, 2),
    (390624, 25, 1),
    (390626, 25, 1),
    (422825, 51, 2),
    (456975, 26, 1),
    (456977, 26, 1),
    (493155, 53, 2),
    (505679, 80, 3),
    (518440, 161, 6),
    (531440, 27, 1),
    (531442, 27, 1),
    (544685, 163, 6),
    (558175, 82, 3),
    (571914, 55, 2),
    (614655, 28, 1),
    (614657, 28, 1),
    (659750, 57, 2),
    (707280, 29, 1),
    (707282, 29, 1),
    (757335, 59, 2),
    (809999, 30, 1),
    (810001, 30, 1),
    (865365, 61, 2),
    (923520, 31, 1),
    (923522, 31, 1),
    (984560, 63, 2),
    (1016190, 127, 4),
    (1048575, 32, 1),
    (1048577, 32, 1),
    (1081730, 129, 4),
    (1115664, 65, 2),
    (1185920, 33, 1),
    (1185922, 33, 1),
    (1259445, 67, 2),
    (1336335, 34, 1),
    (1336337, 34, 1),
    (1416695, 69, 2),
    (1500624, 35, 1),
    (1500626, 35, 1),
    (1588230, 71, 2),
    (1679615, 36, 1),
    (1679617, 36, 1),
    (1755519, 182, 5),
    (1774890, 73, 2),
    (1874160, 37, 1),
    (1874162, 37, 1),
    (1977539, 75, 2),
    (2085135, 38, 1),
    (2085137, 38, 1),
    (2197065, 77, 2),
    (2313440, 39, 1),
    (2313442, 39, 1),
    (2434380, 79, 2),
    (2559999, 40, 1),
    (2560001, 40, 1),
    (2690420, 81, 2),
    (2825760, 41, 1),
    (2825762, 41, 1),
    (2966145, 83, 2),
    (3111695, 42, 1),
    (3111697, 42, 1),
    (3262539, 85, 2),
    (3418800, 43, 1),
    (3418802, 43, 1),
    (3580610, 87, 2),
    (3748095, 44, 1),
    (3748097, 44, 1),
    (3851367, 443, 10),
    (3921390, 89, 2),
    (4100624, 45, 1),
    (4100626, 45, 1),
    (4285935, 91, 2),
    (4477455, 46, 1),
    (4477457, 46, 1),
    (4675325, 93, 2),
    (4879680, 47, 1),
    (4879682, 47, 1),
    (5090664, 95, 2),
    (5198685, 191, 4),
    (5308415, 48, 1),
    (5308417, 48, 1),
    (5419875, 193, 4),
    (5533080, 97, 2),
    (5764800, 49, 1),
    (5764802, 49, 1),
    (6003725, 99, 2),
    (6249999, 50, 1),
    (6250001, 50, 1),
    (6503775, 101, 2),
    (6765200, 51, 1),
    (6765202, 51, 1),
    (7034430, 103, 2),
    (7311615, 52, 1),
    (7311617, 52, 1),
    (7596914, 105, 2),
    (7890480, 53, 1),
    (7890482, 53, 1),
    (8192475, 107, 2),
    (8295040, 161, 3),
    (8398565, 323, 6),
    (8503055, 54, 1),
    (8503057, 54, 1),
    (8608519, 325, 6),
    (8714960, 163, 3),
    (8822385, 109, 2),
    (9150624, 55, 1),
    (9150626, 55, 1),
    (9487940, 111, 2),
    (9834495, 56, 1),
    (9834497, 56, 1),
];

/// Nontrivial power integral basis generators `(m, x, |y|, z)` of
/// `Q(m^(1/4))` for admissible `1 < m < 10^7` with coordinates below
/// `10^1000`. Each row stands for the two classes `(x, ±y, z)`.
pub const PIB_GENERATORS: &[(u64, u64, u64, u64)] = &[
    (2, 1, 1, 1),
    (15, 4, 2, 1),
    (39, 25, 10, 4),
    (82, 9, 3, 1),
    (255, 16, 4, 1),
    (410, 81, 18, 4),
    (626, 25, 5, 1),
    (915, 121, 22, 4),
    (1295, 36, 6, 1),
    (2402, 49, 7, 1),
    (6562, 81, 9, 1),
    (12155, 441, 42, 4),
    (14642, 121, 11, 1),
    (17490, 529, 46, 4),
    (20735, 144, 12, 1),
    (24414, 625, 50, 4),
    (28562, 169, 13, 1),
    (33215, 729, 54, 4),
    (38415, 196, 14, 1),
    (50626, 225, 15, 1),
    (61535, 3969, 252, 16),
    (65535, 256, 16, 1),
    (83522, 289, 17, 1),
    (130322, 361, 19, 1),
    (144590, 1521, 78, 4),
    (159999, 400, 20, 1),
    (194482, 441, 21, 1),
    (234255, 484, 22, 1),
    (279842, 529, 23, 1),
    (390626, 625, 25, 1),
    (505679, 6400, 240, 9),
    (531442, 729, 27, 1),
    (707282, 841, 29, 1),
    (757335, 3481, 118, 4),
    (809999, 900, 30, 1),
    (923522, 961, 31, 1),
    (1081730, 16641, 516, 16),
    (1185922, 1089, 33, 1),
    (1336335, 1156, 34, 1),
    (1416695, 4761, 138, 4),
    (1500626, 1225, 35, 1),
    (1679615, 1296, 36, 1),
    (1755519, 33124, 910, 25),
    (1874162, 1369, 37, 1),
    (1977539, 5625, 150, 4),
    (2313442, 1521, 39, 1),
    (2559999, 1600, 40, 1),
    (2825762, 1681, 41, 1),
    (3111695, 1764, 42, 1),
    (3262539, 7225, 170, 4),
    (3418802, 1849, 43, 1),
    (3580610, 7569, 174, 4),
    (3851367, 196249, 4430, 100),
    (4100626, 2025, 45, 1),
    (4879682, 2209, 47, 1),
    (5764802, 2401, 49, 1),
    (6765202, 2601, 51, 1),
    (7034430, 10609, 206, 4),
    (7311615, 2704, 52, 1),
    (7596914, 11025, 210, 4),
    (7890482, 2809, 53, 1),
    (8503055, 2916, 54, 1),
    (8608519, 105625, 1950, 36),
    (9150626, 3025, 55, 1),
    (9834495, 3136, 56, 1),
];

/// Complete list of positive solutions with `ab > 1` for `1 < g <= 400`,
/// including the corrected entry `g = 82`.
pub const SOLUTIONS_UP_TO_400: &[(u64, u64, u64)] = &[
    (5, 3, 2),
    (15, 2, 1),
    (17, 2, 1),
    (39, 5, 2),
    (80, 3, 1),
    (82, 3, 1),
    (150, 7, 2),
    (255, 4, 1),
    (257, 4, 1),
];

/// Complete list of positive solutions with `ab > 1` for odd `400 < g <= 2000`,
/// including the corrected entries `g = 915` and `g = 1295`.
pub const ODD_SOLUTIONS_400_TO_2000: &[(u64, u64, u64)] =
    &[(915, 11, 2), (1295, 6, 1), (1297, 6, 1), (1785, 13, 2)];

/// Nontrivial generator classes `(m, x, |y|, z)` for admissible `1 < m < 2000`
/// (odd when `m > 400`).
pub const GENERATORS_BELOW_2000: &[(u64, u64, u64, u64)] = &[
    (2, 1, 1, 1),
    (15, 4, 2, 1),
    (39, 25, 10, 4),
    (82, 9, 3, 1),
    (255, 16, 4, 1),
    (915, 121, 22, 4),
    (1295, 36, 6, 1),
];

/// Nontrivial generator classes for admissible `m` composed of at most two
/// primes `p, q <= 29`. The published statement omits `m = 2`, whose class
/// `(1, ±1, 1)` does exist (`1 - 2 = -1`); it is listed here.
pub const GENERATORS_TWO_SMALL_PRIMES: &[(u64, u64, u64, u64)] =
    &[(2, 1, 1, 1), (15, 4, 2, 1), (39, 25, 10, 4)];

/// Quartic `(f, a)` pairs of the two-small-primes classification with
/// `f*a^4 - g*b^4 = ±1`, besides `a = b = 1`.
pub const TWO_SMALL_PRIMES_QUARTIC: &[(u64, u64)] = &[(1, 2), (1, 3), (1, 5), (3, 2)];
