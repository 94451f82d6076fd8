"""Stored expected values for the gl_4 counterexample replay.

Matrix entries over Q[s] are coefficient tuples (c0, c1, c2, ...) meaning
c0 + c1 s + c2 s^2 + ...; ``None`` marks an entry that is not pinned down.
The sl_2 sits in the lower-right 2x2 block with e = E34, h = E33 - E44,
f = E43.
"""

# the covector, written as a matrix through the trace form
GAMMA = [
    [1, 0, 0, 1],
    [0, 0, 1, 0],
    [1, 0, 1, 0],
    [0, 1, 0, -1],
]

# gamma_f + s gamma_m
PHI_GAMMA = [
    [(0, 1), (0,), (0,), (0, 1)],
    [(0,), (0,), (0, 1), (0,)],
    [(0, 1), (0,), (1,), (0,)],
    [(0,), (0, 1), (0,), (-1,)],
]

# (gamma_f + s gamma_m)^2
PHI_GAMMA_SQUARED = [
    [(0, 0, 1), (0, 0, 1), (0,), (0, -1, 1)],
    [(0, 0, 1), (0,), (0, 1), (0,)],
    [(0, 1, 1), (0,), (1,), (0, 0, 1)],
    [(0,), (0, -1), (0, 0, 1), (1,)],
]

# (gamma_f + s gamma_m)^3: only the lower-right block is pinned down
PHI_GAMMA_CUBED = [
    [None, None, None, None],
    [None, None, None, None],
    [None, None, (1,), (0, 0, 0, 1)],
    [None, None, (0,), (-1,)],
]

# f-projections, as coefficient tuples on (e, h, f)
GAMMA_F = ((0,), (1,), (0,))  # h
SQUARED_F = ((0, 0, 1), (0,), (0, 0, 1))  # s^2 (e + f)
CUBED_F = ((0, 0, 0, 1), (1,), (0,))  # s^3 e + h

# parameters used to print a concrete nonzero value of the criterion
WITNESS_S = (2, 3)
