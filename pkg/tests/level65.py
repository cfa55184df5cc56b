"""Reference Hecke matrices on the level-65 character group at 5 (row action),
and the stacked cyclic matrices v S_n, v S'_n for v = e_1, n in (1, 2, 3, 5, 11)."""

GENERATORS = (1, 2, 3, 5, 11)

S = {
    1: [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
    2: [[-1, -1, 1, 0, 0], [-1, -1, 0, 1, 0], [2, -1, 0, 0, -1], [-1, 2, 0, 0, -1], [0, 0, 0, 0, -1]],
    3: [[0, -1, 0, 1, -1], [-1, 0, 1, 0, -1], [-1, 2, 1, 0, -2], [2, -1, 0, 1, -2], [0, 0, 0, 0, -2]],
    5: [[0, 1, 0, 0, -1], [1, 0, 0, 0, -1], [0, 0, 0, 1, -1], [0, 0, 1, 0, -1], [0, 0, 0, 0, -1]],
    11: [[0, 3, 0, -1, 0], [3, 0, -1, 0, 0], [1, -2, -1, 2, 1], [-2, 1, 2, -1, 1], [0, 0, 0, 0, 2]],
}

A = [
    [1, 0, 0, 0, 0],
    [-1, -1, 1, 0, 0],
    [0, -1, 0, 1, -1],
    [0, 1, 0, 0, -1],
    [0, 3, 0, -1, 0],
]

A_PRIME = [
    [1, 0, 0, 0, 0],
    [0, 2, 0, -1, -1],
    [-1, 0, 1, 0, -1],
    [0, -1, 0, 0, 0],
    [1, -2, -1, 0, 2],
]
