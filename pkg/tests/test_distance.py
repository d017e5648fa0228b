import random

import pytest

from conftest import random_column_reduced_code
from mdsconv import kernels
from mdsconv.constructions import construct, construct_high, construct_low
from mdsconv.convcode import ConvCode
from mdsconv.distance import (
    BruteForceResult,
    MdsResult,
    TrellisConfig,
    free_distance_bruteforce,
    free_distance_trellis,
    is_mds,
    singleton_bound,
    trellis_step,
)
from mdsconv.errors import BudgetExceeded, ParamDomain
from mdsconv.galois import Field
from mdsconv.linalg import Matrix


# ---------------------------------------------------------------------------
# the generalized Singleton bound

def test_singleton_bound_values():
    assert singleton_bound(3, 2, 1) == 3
    assert singleton_bound(3, 1, 1) == 6
    assert singleton_bound(7, 1, 2) == 21
    assert singleton_bound(2, 1, 1) == 4
    for n in range(1, 8):
        for k in range(1, n + 1):
            assert singleton_bound(n, k, 0) == n - k + 1


def test_singleton_bound_domain():
    with pytest.raises(ParamDomain):
        singleton_bound(2, 3, 0)
    with pytest.raises(ParamDomain):
        singleton_bound(3, 2, -1)


# ---------------------------------------------------------------------------
# trellis search

def test_trellis_example_code(example_code):
    assert free_distance_trellis(example_code) == 3


def test_trellis_identity_code():
    f = Field(5)
    eye = ConvCode(f, 3, 3, 0, [Matrix(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])])
    assert free_distance_trellis(eye) == 1


def test_trellis_3_1_1_cauchy():
    code = construct_high("cauchy", 3, 1, 1).code
    assert free_distance_trellis(code) == 6


def test_trellis_budget_states():
    code = construct_high("cauchy", 3, 1, 1).code  # 19 states
    with pytest.raises(BudgetExceeded):
        free_distance_trellis(code, TrellisConfig(max_states=10))


def test_trellis_budget_transitions():
    code = construct_high("exponential", 2, 1, 1).code  # GF(2^16)
    with pytest.raises(BudgetExceeded):
        free_distance_trellis(code)


def test_trellis_delta_zero_block_code():
    code = construct_low("cauchy", 2, 1, 0).code
    assert free_distance_trellis(code) == 2
    with pytest.raises(BudgetExceeded):
        free_distance_trellis(code, TrellisConfig(max_transitions=3))


# ---------------------------------------------------------------------------
# state graph structure

def test_zero_state_zero_input_self_loop(example_code):
    ns, w = trellis_step(example_code, 0, 0)
    assert ns == 0 and w == 0


def test_flush_returns_to_zero_state(example_code):
    rng = random.Random(17)
    q = example_code.field.q
    maxdeg = max(example_code.column_degree(j) for j in range(example_code.k))
    nstates = q**example_code.delta
    for _ in range(50):
        s = rng.randrange(nstates)
        for _ in range(maxdeg):
            s, _ = trellis_step(example_code, s, 0)
        assert s == 0


def test_every_state_has_qk_transitions(example_code):
    q = example_code.field.q
    qk = q**example_code.k
    for s in range(q**example_code.delta):
        targets = [trellis_step(example_code, s, a)[0] for a in range(qk)]
        assert len(targets) == qk


def test_trellis_matches_stepwise_costs(example_code):
    # one explicit codeword: u = (1, 0) constant gives weight 5
    s, w = trellis_step(example_code, 0, 1)  # input block (1, 0)
    total = w
    while s != 0:
        s, w = trellis_step(example_code, s, 0)
        total += w
    assert total == 5


# ---------------------------------------------------------------------------
# brute force

def test_bruteforce_example_code(example_code):
    res = free_distance_bruteforce(example_code, 3)
    assert res == BruteForceResult(value=3, input_degree=3, status="upper_bound")


def test_bruteforce_decreasing_in_degree(example_code):
    values = [free_distance_bruteforce(example_code, L).value for L in range(4)]
    assert values == sorted(values, reverse=True)
    assert values[-1] == 3


def test_bruteforce_budget():
    code = construct_high("cauchy", 7, 1, 2).code
    with pytest.raises(BudgetExceeded):
        free_distance_bruteforce(code, 5, budget=10**6)


def test_bruteforce_agrees_with_trellis_on_small_codes(example_code):
    codes = [
        example_code,
        construct_low("cauchy", 3, 2, 1).code,
        construct_high("cauchy", 3, 1, 1).code,
    ]
    for code in codes:
        exact = free_distance_trellis(code)
        found = None
        for L in range(code.delta + 4):
            found = free_distance_bruteforce(code, L).value
            if found == exact:
                break
        assert found == exact


def test_bruteforce_is_upper_bound_random():
    rng = random.Random(1234)
    f = Field(3)
    for _ in range(30):
        code = random_column_reduced_code(f, rng.randrange(2, 4), 1, 1, rng)
        exact = free_distance_trellis(code)
        assert free_distance_bruteforce(code, 2).value >= exact


# ---------------------------------------------------------------------------
# verdicts

def test_is_mds_example(example_code):
    assert is_mds(example_code) == MdsResult("yes", 3)


def test_is_mds_constructed():
    res = is_mds(construct_low("cauchy", 3, 2, 1).code)
    assert res.verdict == "yes" and res.distance == 3


def test_is_mds_unknown_on_budget():
    res = is_mds(construct_high("exponential", 2, 1, 1).code)
    assert res.verdict == "unknown" and res.distance is None


def test_is_mds_no_for_suboptimal_code():
    # repetition-style code with an obviously light codeword
    f = Field(3)
    code = ConvCode(f, 2, 1, 1, [Matrix(f, [[1], [0]]), Matrix(f, [[1], [1]])])
    res = is_mds(code)
    assert res.verdict == "no" and res.distance < singleton_bound(2, 1, 1)


# ---------------------------------------------------------------------------
# properties

def test_singleton_bound_is_universal_upper_bound():
    rng = random.Random(0xBEEF)
    fields = [Field(3), Field(5), Field(7)]
    for _ in range(150):
        field = rng.choice(fields)
        n = rng.randrange(1, 6)
        k = rng.randrange(1, min(n, 3) + 1)
        delta = rng.randrange(0, 3)
        code = random_column_reduced_code(field, n, k, delta, rng)
        assert free_distance_trellis(code) <= singleton_bound(n, k, delta)


def test_distance_invariant_under_column_scaling():
    rng = random.Random(0xCAFE)
    f = Field(5)
    for _ in range(20):
        n = rng.randrange(2, 5)
        k = rng.randrange(1, n + 1)
        delta = rng.randrange(0, 3)
        code = random_column_reduced_code(f, n, k, delta, rng)
        base = free_distance_trellis(code)
        scales = [rng.randrange(1, 5) for _ in range(k)]
        scaled = ConvCode(
            f,
            n,
            k,
            delta,
            [
                Matrix.from_indices(
                    f,
                    [
                        [f.mul(v, scales[j]) for j, v in enumerate(row)]
                        for row in g.index_rows()
                    ],
                )
                for g in code.coeffs
            ],
        )
        assert free_distance_trellis(scaled) == base


def test_catastrophic_encoder_with_zero_cost_cycle():
    # G(z) = (1+z, 1+z) over GF(2): state 1 has a cost-0 self-loop, yet the
    # free distance is 4 and the search must terminate with it
    f = Field(2)
    code = ConvCode(f, 2, 1, 1, [Matrix(f, [[1], [1]]), Matrix(f, [[1], [1]])])
    ns, w = trellis_step(code, 1, 1)
    assert (ns, w) == (1, 0)  # the zero-cost cycle is really there
    assert free_distance_trellis(code) == 4
    assert free_distance_bruteforce(code, 3).value == 4
    # a catastrophic encoder can still generate an MDS code: 4 meets the bound
    assert is_mds(code) == MdsResult("yes", 4)


def test_bruteforce_untabulated_products_path(monkeypatch, example_code):
    import mdsconv.distance as distance_mod

    tabulated = free_distance_bruteforce(example_code, 2).value
    monkeypatch.setattr(distance_mod, "_PRODUCT_TABLE_LIMIT", 0)
    assert free_distance_bruteforce(example_code, 2).value == tabulated == 3


def test_pure_trellis_on_the_fly_input_path(monkeypatch, example_code):
    # disable the per-input table so the fallback branch computes each block
    from mdsconv.distance import _coeff_columns

    degrees = tuple(example_code.column_degree(j) for j in range(example_code.k))
    cols = _coeff_columns(example_code)
    f = example_code.field
    tab = f.tables()
    monkeypatch.setattr(kernels, "_A_TABLE_LIMIT", 0)
    assert kernels._pure_trellis(3, 2, 3, degrees, cols, tab) == 3


def test_trellis_backends_agree():
    rng = random.Random(0xD1CE)
    for field in (Field(3), Field(2, 2), Field(3, 2)):
        for _ in range(15):
            n = rng.randrange(2, 4)
            k = rng.randrange(1, n + 1)
            delta = rng.randrange(1, 3)
            code = random_column_reduced_code(field, n, k, delta, rng)
            degrees = tuple(code.column_degree(j) for j in range(k))
            from mdsconv.distance import _coeff_columns

            cols = _coeff_columns(code)
            tab = field.tables()
            pure = kernels._pure_trellis(n, k, field.q, degrees, cols, tab)
            generic = kernels._generic_trellis(n, k, field.q, degrees, cols, field)
            assert pure == generic
            if kernels.BACKEND == "compiled":
                assert (
                    kernels.trellis_min_weight(n, k, field.q, degrees, cols, field)
                    == pure
                )
