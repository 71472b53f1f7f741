"""Fixture data and small helpers shared by the test modules."""

import numpy as np

# a1=(0,0), a2=(1,0), a3=(0,1)
TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
# unit-square corners a1=(0,0), a2=(1,0), a3=(0,1), a4=(1,1)
SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def random_instance(rng, m_range=(5, 50), n_range=(1, 5)):
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    return rng.standard_normal((m, n))


def distinct_rows(rng, count, n, scale=1.0):
    while True:
        x = scale * rng.standard_normal((count, n))
        if np.unique(x, axis=0).shape[0] == count:
            return x


def as_set(rows):
    return {tuple(float(v) for v in np.ravel(r)) for r in rows}


def systems_as_set(systems):
    return {tuple(tuple(float(v) for v in row) for row in np.asarray(s)) for s in systems}
