"""Reference rows of the score-maxima tables, as printed to two decimals.

Each entry maps n to (named-tree column, maximum, attaining rows); a row is
(kind, K2, k1, n1, L, mean path length, D_min, D_max).  Decimal columns are
kept as strings so the comparison happens at the printed precision.
"""

DELTA_TABLE = {
    3: ('1', '1', [
        ('linear star b-bistar', 6, 2, 2, 2, '1.33', 2, 3),
    ]),
    4: ('4', '4', [
        ('linear quasi b-bistar', 10, 2, 2, 3, '1.67', 3, 7),
    ]),
    5: ('7', '7', [
        ('linear', 14, 2, 2, 4, '2', 4, 11),
        ('quasi b-bistar', 16, 3, 3, 3, '1.8', 5, 12),
    ]),
    6: ('12', '12', [
        ('linear', 18, 2, 2, 5, '2.33', 5, 17),
        ('cat', 20, 3, 3, 4, '2.07', 6, 18),
        ('b-bistar', 22, 3, 4, 3, '1.93', 7, 19),
    ]),
    7: ('18', '18', [
        ('cat', 24, 3, 3, 5, '2.48', 7, 25),
        ('cat', 24, 3, 3, 5, '2.38', 7, 25),
        ('cat', 26, 3, 4, 4, '2.19', 8, 26),
        ('cat', 28, 4, 4, 4, '2.1', 8, 26),
        ('b-bistar', 30, 4, 5, 3, '2', 9, 27),
    ]),
    8: ('26', '26', [
        ('cat', 30, 3, 4, 5, '2.43', 9, 35),
        ('cat', 30, 3, 4, 5, '2.64', 9, 35),
        ('cat', 30, 3, 4, 5, '2.5', 9, 35),
        ('cat', 34, 4, 5, 4, '2.21', 10, 36),
        ('b-bistar', 38, 4, 6, 3, '2.07', 11, 37),
    ]),
    9: ('34', '35', [
        ('cat', 38, 4, 5, 5, '2.5', 11, 46),
        ('cat', 38, 4, 5, 5, '2.56', 11, 46),
        ('cat', 38, 4, 5, 5, '2.44', 11, 46),
        ('cat', 38, 4, 5, 5, '2.72', 11, 46),
        ('cat', 42, 4, 6, 4, '2.28', 12, 47),
    ]),
    10: ('44', '46', [
        ('cat', 46, 4, 6, 5, '2.47', 13, 59),
        ('cat', 46, 4, 6, 5, '2.82', 13, 59),
        ('cat', 46, 4, 6, 5, '2.56', 13, 59),
    ]),
    11: ('55', '57', [
        ('cat', 50, 4, 6, 6, '2.73', 14, 71),
        ('cat', 50, 4, 6, 6, '2.87', 14, 71),
        ('cat', 50, 4, 6, 6, '3.02', 14, 71),
        ('cat', 52, 4, 7, 5, '2.58', 15, 72),
        ('cat', 52, 4, 7, 5, '2.73', 15, 72),
        ('cat', 52, 4, 7, 5, '2.84', 15, 72),
        ('cat', 52, 4, 7, 5, '2.62', 15, 72),
        ('cat', 56, 5, 7, 5, '2.55', 16, 73),
        ('cat', 56, 5, 7, 5, '2.58', 16, 73),
        ('cat', 56, 5, 7, 5, '2.87', 16, 73),
        ('cat', 56, 5, 7, 5, '2.47', 16, 73),
    ]),
}

GAMMA_TABLE = {
    3: ('1.5', '1.5', [
        ('linear star b-bistar', 6, 2, 2, 2, '1.33', 2, 3),
    ]),
    4: ('2.33', '2.33', [
        ('linear quasi b-bistar', 10, 2, 2, 3, '1.67', 3, 7),
    ]),
    5: ('2.75', '2.75', [
        ('linear', 14, 2, 2, 4, '2', 4, 11),
    ]),
    6: ('3.4', '3.4', [
        ('linear', 18, 2, 2, 5, '2.33', 5, 17),
    ]),
    7: ('3.83', '3.83', [
        ('linear', 22, 2, 2, 6, '2.67', 6, 23),
    ]),
    8: ('4.43', '4.43', [
        ('linear', 26, 2, 2, 7, '3', 7, 31),
    ]),
    9: ('4.88', '4.88', [
        ('linear', 30, 2, 2, 8, '3.33', 8, 39),
    ]),
    10: ('5.44', '5.44', [
        ('linear', 34, 2, 2, 9, '3.67', 9, 49),
    ]),
    11: ('5.9', '5.9', [
        ('linear', 38, 2, 2, 10, '4', 10, 59),
    ]),
}

Z_TABLE = {
    3: ('0.71', '0.71', [
        ('linear star b-bistar', 6, 2, 2, 2, '1.33', 2, 3),
    ]),
    4: ('2', '2', [
        ('linear quasi b-bistar', 10, 2, 2, 3, '1.67', 3, 7),
    ]),
    5: ('2.45', '2.45', [
        ('quasi b-bistar', 16, 3, 3, 3, '1.8', 5, 12),
    ]),
    6: ('3.1', '3.1', [
        ('b-bistar', 22, 3, 4, 3, '1.93', 7, 19),
    ]),
    7: ('3.41', '3.41', [
        ('b-bistar', 30, 4, 5, 3, '2', 9, 27),
    ]),
    8: ('3.84', '3.84', [
        ('b-bistar', 38, 4, 6, 3, '2.07', 11, 37),
    ]),
    9: ('4.06', '4.06', [
        ('b-bistar', 48, 5, 7, 3, '2.11', 14, 48),
    ]),
    10: ('4.37', '4.37', [
        ('b-bistar', 58, 5, 8, 3, '2.16', 17, 61),
    ]),
    11: ('4.54', '4.56', [
        ('cat', 62, 5, 8, 4, '2.33', 18, 74),
    ]),
}

TABLES = {"delta": DELTA_TABLE, "gamma": GAMMA_TABLE, "z": Z_TABLE}
