import random
from itertools import permutations

import pytest

from mdsconv.convcode import ConvCode, derived_params
from mdsconv.galois import Field
from mdsconv.linalg import Matrix


@pytest.fixture(scope="session")
def gf3():
    return Field(3)


@pytest.fixture(scope="session")
def gf7():
    return Field(7)


@pytest.fixture(scope="session")
def example_code(gf3):
    """The rate 2/3, degree 1 code over GF(3) with G_0 = [[1,1],[1,2],[0,1]]
    and G_1 = [[1,0],[1,0],[2,0]]."""
    return ConvCode(
        gf3,
        3,
        2,
        1,
        [Matrix(gf3, [[1, 1], [1, 2], [0, 1]]), Matrix(gf3, [[1, 0], [1, 0], [2, 0]])],
    )


def det_cofactor(m: Matrix):
    """Permanent-style cofactor determinant, usable as an oracle up to 4x4."""
    field = m.field
    s = m.nrows
    assert s == m.ncols <= 4
    rows = m.index_rows()
    total = 0
    for perm in permutations(range(s)):
        inversions = sum(
            1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j]
        )
        prod = 1
        for i in range(s):
            prod = field.mul(prod, rows[i][perm[i]])
            if prod == 0:
                break
        if prod:
            if inversions % 2:
                prod = field.neg(prod)
            total = field.add(total, prod)
    return total


def random_column_reduced_code(field, n, k, delta, rng: random.Random) -> ConvCode:
    """Random ConvCode with the fixed column-degree convention."""
    t, nu, mu = derived_params(k, delta)
    q = field.q
    while True:
        coeffs = []
        for i in range(mu + 1):
            rows = []
            for _ in range(n):
                row = []
                for j in range(k):
                    dj = nu if j < t else nu - 1
                    row.append(rng.randrange(q) if i <= dj else 0)
                rows.append(row)
            coeffs.append(Matrix.from_indices(field, rows))
        try:
            return ConvCode(field, n, k, delta, coeffs)
        except Exception:
            continue
