"""Free distance: the generalized Singleton bound, an exact trellis search,
and an independent brute-force enumeration bound.

The trellis search runs on the direct-form encoder state graph (one shift
register of length nu_j per generator column, state dimension delta, q^delta
states) and finds the least-cost path that leaves the zero state with a
nonzero input block and first returns to it. Edge costs are output-block
weights, so a Dijkstra search is exact even in the presence of zero-cost
cycles; nothing assumes the encoder is non-catastrophic.

Budgets fail loudly: an infeasible search raises BudgetExceeded instead of
truncating, and callers are expected to fall back to the hypothesis
certificate from mdsconv.constructions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .convcode import ConvCode, derived_params
from .errors import BudgetExceeded, ParamDomain

DEFAULT_MAX_STATES = 10**5
DEFAULT_MAX_TRANSITIONS = 10**8
DEFAULT_ENUM_BUDGET = 10**8
_PRODUCT_TABLE_LIMIT = 1 << 22  # tabulate per-input block products below this


@dataclass(frozen=True)
class TrellisConfig:
    max_states: int = DEFAULT_MAX_STATES
    max_transitions: int = DEFAULT_MAX_TRANSITIONS

    def __post_init__(self):
        if self.max_states < 1 or self.max_transitions < 1:
            raise ParamDomain("budgets must be positive")


def singleton_bound(n: int, k: int, delta: int) -> int:
    """(n-k)(floor(delta/k)+1) + delta + 1, the universal distance bound."""
    if not 1 <= k <= n:
        raise ParamDomain(f"need 1 <= k <= n, got k={k}, n={n}")
    if delta < 0:
        raise ParamDomain(f"degree must be >= 0, got {delta}")
    value = (n - k) * (delta // k + 1) + delta + 1
    t, nu, _ = derived_params(k, delta)
    alt = n * nu - (k - t) + 1
    assert value == alt, "the two closed forms of the bound must agree"
    return value


def _coeff_columns(code: ConvCode):
    """cols[j][i] = index vector of the lag-i coefficient of column j."""
    idx = [g.index_rows() for g in code.coeffs]
    cols = []
    for j in range(code.k):
        dj = code.column_degree(j)
        cols.append(
            [[idx[i][r][j] for r in range(code.n)] for i in range(dj + 1)]
        )
    return cols


def _block_code_min_weight(code: ConvCode, budget: int) -> int:
    """Minimum nonzero-codeword weight of the delta = 0 block code."""
    field = code.field
    q = field.q
    total = q**code.k
    if total > budget:
        raise BudgetExceeded(total, budget, "block-code enumeration refused")
    colvecs = _coeff_columns(code)
    best = code.n + 1
    for a in range(1, total):
        v = a
        out = [0] * code.n
        for j in range(code.k):
            v, d = divmod(v, q)
            if d:
                vec = colvecs[j][0]
                for r in range(code.n):
                    x = field.mul(vec[r], d)
                    if x:
                        out[r] = field.add(out[r], x)
        w = sum(1 for x in out if x)
        if w < best:
            best = w
    return best


def trellis_step(code: ConvCode, state: int, input_index: int):
    """(next_state, output_weight) for one transition of the state graph.

    States pack the per-column registers of the last nu_j inputs in mixed
    radix q, most recent lag first, columns in order; input blocks pack the
    k input symbols the same way.
    """
    field = code.field
    q = field.q
    degrees = [code.column_degree(j) for j in range(code.k)]
    delta = sum(degrees)
    cols = _coeff_columns(code)
    digits = []
    v = state
    for _ in range(delta):
        v, d = divmod(v, q)
        digits.append(d)
    adig = []
    v = input_index
    for _ in range(code.k):
        v, d = divmod(v, q)
        adig.append(d)
    out = [0] * code.n
    new_digits = [0] * delta
    pos = 0
    for j in range(code.k):
        dj = degrees[j]
        lags = [adig[j]] + digits[pos : pos + dj]
        for i in range(dj + 1):
            d = lags[i]
            if d:
                vec = cols[j][i]
                for r in range(code.n):
                    x = field.mul(vec[r], d)
                    if x:
                        out[r] = field.add(out[r], x)
        if dj:
            new_digits[pos : pos + dj] = lags[:dj]
        pos += dj
    enc = 0
    for d in reversed(new_digits):
        enc = enc * q + d
    return enc, sum(1 for x in out if x)


def free_distance_trellis(code: ConvCode, cfg: TrellisConfig | None = None) -> int:
    """Exact free distance by shortest-path search; raises BudgetExceeded
    when the state space or transition count is out of budget."""
    cfg = cfg or TrellisConfig()
    q = code.field.q
    if code.delta == 0:
        return _block_code_min_weight(code, cfg.max_transitions)
    nstates = q**code.delta
    if nstates > cfg.max_states:
        raise BudgetExceeded(
            nstates, cfg.max_states, "state space too large; use the certificate"
        )
    transitions = nstates * q**code.k
    if transitions > cfg.max_transitions:
        raise BudgetExceeded(
            transitions,
            cfg.max_transitions,
            "transition count too large; use the certificate",
        )
    degrees = tuple(code.column_degree(j) for j in range(code.k))
    cols = _coeff_columns(code)
    return kernels.trellis_min_weight(
        code.n, code.k, q, degrees, cols, code.field
    )


@dataclass(frozen=True)
class BruteForceResult:
    """Minimum codeword weight over inputs of bounded degree.

    This is an upper bound on the free distance; it equals the free distance
    whenever the trellis value is reproduced, but the enumeration alone
    proves only the bound, hence the explicit status field.
    """

    value: int
    input_degree: int
    status: str = "upper_bound"


def free_distance_bruteforce(
    code: ConvCode, max_input_degree: int, budget: int = DEFAULT_ENUM_BUDGET
) -> BruteForceResult:
    """Minimum of wt(G(z) u(z)) over nonzero u with deg u <= L and u_0 != 0.

    The enumeration is organized as a depth-first search over input blocks
    with monotone weight pruning; the result is exactly the stated minimum.
    """
    L = max_input_degree
    if L < 0:
        raise ParamDomain("max_input_degree must be >= 0")
    field = code.field
    q = field.q
    qk = q**code.k
    total = qk ** (L + 1)
    if total > budget:
        raise BudgetExceeded(total, budget, "brute-force enumeration refused")

    idx = [g.index_rows() for g in code.coeffs]
    mu = code.mu
    add = field.add
    n = code.n

    def product(m, a):
        rows = idx[m]
        v = a
        out = [0] * n
        for j in range(code.k):
            v, d = divmod(v, q)
            if d:
                for r in range(n):
                    x = field.mul(rows[r][j], d)
                    if x:
                        out[r] = add(out[r], x)
        return out

    # block products prod[m][a] = G_m * block(a), tabulated when affordable
    prods = None
    if (mu + 1) * qk * n <= _PRODUCT_TABLE_LIMIT:
        prods = [[product(m, a) for a in range(qk)] for m in range(mu + 1)]

    best = code.n * (L + 1 + mu) + 1

    def block_weight(recent):
        # recent[0] = current input block, recent[m] = block m steps back
        first = recent[0]
        out = prods[0][first][:] if prods else product(0, first)
        for m in range(1, min(len(recent), mu + 1)):
            a = recent[m]
            if a:
                pm = prods[m][a] if prods else product(m, a)
                for r in range(n):
                    if pm[r]:
                        out[r] = add(out[r], pm[r])
        return sum(1 for x in out if x)

    def flush_weight(recent, partial):
        # outputs after the last input block until the registers drain
        w = partial
        hist = list(recent)
        for _ in range(mu):
            hist = [0] + hist[: mu]
            w += block_weight(hist)
            if w >= best:
                return w
        return w

    def dfs(depth, recent, partial):
        nonlocal best
        if depth > L:
            w = flush_weight(recent, partial)
            if w < best:
                best = w
            return
        for a in range(qk):
            if depth == 0 and a == 0:
                continue
            hist = [a] + recent[:mu]
            w = partial + block_weight(hist)
            if w < best:
                dfs(depth + 1, hist, w)

    dfs(0, [], 0)
    return BruteForceResult(value=best, input_degree=L)


@dataclass(frozen=True)
class MdsResult:
    verdict: str  # "yes", "no" or "unknown"
    distance: int | None


def is_mds(code: ConvCode, cfg: TrellisConfig | None = None) -> MdsResult:
    """Exact verdict when the trellis fits the budget, unknown otherwise."""
    try:
        d = free_distance_trellis(code, cfg)
    except BudgetExceeded:
        return MdsResult("unknown", None)
    bound = singleton_bound(code.n, code.k, code.delta)
    return MdsResult("yes" if d == bound else "no", d)
