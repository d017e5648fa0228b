"""Superregular matrix families, code constructions, and the MDS certificate.

Two families supply the coefficient layouts:

* Cauchy circulant matrices over an odd-order field: the square matrix of
  side (q-1)/2 with entries 1/(1 - b*alpha^(j-i)), alpha of order (q-1)/2
  and b a nonsquare. Superregular for every odd prime power q.
* Exponent grids over GF(p^N): entries alpha^(2^(i+j)) for a primitive
  alpha, superregular once N exceeds every exponent a minor can produce.

Each branch (delta < k, delta >= k) has one construction per family, with
the field sizes that make the guarantee unconditional:

    delta < k,  cauchy:       q >= 2*max(k+delta, n) + 1
    delta < k,  exponential:  N >= 2^(n+k+delta-1)
    delta >= k, cauchy:       q >= 2*n*(nu+1) + 1
    delta >= k, exponential:  N >= 2^(nu*n+k-1)

Field overrides below these bounds are accepted; the certificate then rests
entirely on the direct exhaustive checks, which run for every construction
regardless (their cost depends on n, k, delta only, never on q).
"""

from __future__ import annotations

from dataclasses import dataclass

from .convcode import (
    ConvCode,
    code_degree,
    code_from_layout,
    derived_params,
    is_column_reduced,
    layout_from_code,
    stacked,
)
from .errors import EvenQ, FieldTooSmall, NBoundViolated, ParamDomain
from .galois import (
    Field,
    FieldElement,
    element_order,
    find_element_of_order,
    find_nonsquare,
    find_primitive,
    is_square,
    prime_power,
)
from .linalg import (
    DEFAULT_MINOR_BUDGET,
    Matrix,
    Witness,
    fullsize_minors_nonzero,
    is_superregular,
)

EXPONENT_READING = "grid-column"


# ---------------------------------------------------------------------------
# matrix families

def _cauchy_field(q: int) -> Field:
    if q % 2 == 0:
        raise EvenQ(f"Cauchy family needs odd field order, got q={q}")
    pp = prime_power(q)
    if pp is None or q < 3:
        raise ParamDomain(f"q={q} is not a prime power >= 3")
    p, e = pp
    return Field(p, e)


def cauchy_params(field: Field) -> tuple[FieldElement, FieldElement]:
    """Deterministic (alpha, b): alpha of order (q-1)/2, b a nonsquare."""
    alpha = find_element_of_order(field, (field.q - 1) // 2)
    b = find_nonsquare(field)
    return alpha, b


def cauchy_matrix(q, alpha: FieldElement | None = None, b: FieldElement | None = None) -> Matrix:
    """The (q-1)/2-square circulant with entries 1/(1 - b*alpha^(j-i))."""
    field = q if isinstance(q, Field) else _cauchy_field(q)
    if field.q % 2 == 0:
        raise EvenQ(f"Cauchy family needs odd field order, got q={field.q}")
    size = (field.q - 1) // 2
    if alpha is None or b is None:
        d_alpha, d_b = cauchy_params(field)
        alpha = alpha if alpha is not None else d_alpha
        b = b if b is not None else d_b
    if element_order(alpha) != size:
        raise ParamDomain(f"alpha must have order (q-1)/2 = {size}")
    if is_square(b):
        raise ParamDomain("b must be a nonsquare element")
    # first row: 1/(1 - b*alpha^s) for shift s; row i is row 0 shifted by i
    first = []
    a_pow = 1
    for _ in range(size):
        val = field.inv(field.sub(1, field.mul(b.val, a_pow)))
        first.append(val)
        a_pow = field.mul(a_pow, alpha.val)
    rows = [[first[(j - i) % size] for j in range(size)] for i in range(size)]
    return Matrix.from_indices(field, rows)


def exponential_matrix(
    field: Field,
    rows: int,
    cols: int,
    row_offset: int = 0,
    col_offset: int = 0,
    alpha: FieldElement | None = None,
) -> Matrix:
    """Grid with entry (i, j) = alpha^(2^(i + row_offset + j + col_offset)).

    Exponents are exact big integers, reduced modulo q - 1 inside pow.
    """
    if alpha is None:
        alpha = find_primitive(field)
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            e = 1 << (i + row_offset + j + col_offset)
            row.append(field.pow(alpha.val, e))
        out.append(row)
    return Matrix.from_indices(field, out)


def exponent_grid(rows: int, cols: int, row_offset: int = 0, col_offset: int = 0):
    """The beta exponents 2^(i+j+offsets) of the grid, field-independent."""
    return [
        [1 << (i + row_offset + j + col_offset) for j in range(cols)]
        for i in range(rows)
    ]


# ---------------------------------------------------------------------------
# field-size calculators

def _check_params(n: int, k: int, delta: int):
    if not 1 <= k <= n:
        raise ParamDomain(f"need 1 <= k <= n, got k={k}, n={n}")
    if delta < 0:
        raise ParamDomain(f"degree must be >= 0, got delta={delta}")


def n_bound(k: int, delta: int) -> int:
    """Smallest admissible n for the applicable branch."""
    if delta < k:
        return k + delta - 1
    nu = delta // k + 1
    return k + 2 * delta - nu


def _check_n_bound(n: int, k: int, delta: int):
    need = n_bound(k, delta)
    if n < need:
        if delta < k:
            raise NBoundViolated(f"n >= k+delta-1 = {need} required, got n={n}")
        raise NBoundViolated(f"n >= 2*delta+k-nu = {need} required, got n={n}")


def cauchy_q_bound(n: int, k: int, delta: int) -> int:
    if delta < k:
        return 2 * max(k + delta, n) + 1
    nu = delta // k + 1
    return 2 * n * (nu + 1) + 1


def exponential_n_bound(n: int, k: int, delta: int) -> int:
    if delta < k:
        return 1 << (n + k + delta - 1)
    nu = delta // k + 1
    return 1 << (nu * n + k - 1)


def smallest_odd_prime_power(at_least: int) -> int:
    m = at_least if at_least % 2 else at_least + 1
    if m < 3:
        m = 3
    while prime_power(m) is None:
        m += 2
    return m


def min_field_size(family: str, n: int, k: int, delta: int) -> int:
    """Minimal admissible field parameter: q for cauchy, N (with p = 2)
    for exponential."""
    _check_params(n, k, delta)
    _check_n_bound(n, k, delta)
    if family == "cauchy":
        return smallest_odd_prime_power(cauchy_q_bound(n, k, delta))
    if family == "exponential":
        return exponential_n_bound(n, k, delta)
    raise ParamDomain(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# the hypothesis certificate

_CHECK_ORDER = (
    "n_bound",
    "layout_superregular",
    "stack_fullsize_nonzero",
    "column_reduced",
    "degree_matches",
)


@dataclass(frozen=True)
class MdsCertificate:
    """Outcome of the sufficiency checks for one code.

    verdict == "MDS-guaranteed" means every hypothesis of the applicable
    branch theorem was verified exhaustively. "not-guaranteed" never claims
    the code is not MDS; codes can reach the bound without a superregular
    layout.
    """

    branch: str  # "delta_lt_k" or "delta_ge_k"
    checks: dict
    verdict: str
    failing: str | None = None
    layout_witness: Witness | None = None
    stack_witness: Witness | None = None

    def guaranteed(self) -> bool:
        return self.verdict == "MDS-guaranteed"

    def to_json_dict(self) -> dict:
        def wit(w):
            return None if w is None else {"rows": list(w.rows), "cols": list(w.cols)}

        return {
            "branch": self.branch,
            "checks": {name: self.checks[name] for name in _CHECK_ORDER},
            "verdict": self.verdict,
            "failing": self.failing,
            "layout_witness": wit(self.layout_witness),
            "stack_witness": wit(self.stack_witness),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MdsCertificate":
        def wit(w):
            return None if w is None else Witness(tuple(w["rows"]), tuple(w["cols"]))

        return cls(
            branch=doc["branch"],
            checks=dict(doc["checks"]),
            verdict=doc["verdict"],
            failing=doc.get("failing"),
            layout_witness=wit(doc.get("layout_witness")),
            stack_witness=wit(doc.get("stack_witness")),
        )


def _stack_fullsize_checks(code: ConvCode, budget: int):
    """Full-size minor conditions on the coefficient stacks (delta >= k).

    For k | delta this is literally the stack (G_0; ..; G_mu). Otherwise that
    stack ends in G_nu, whose last k-t columns are structurally zero, so its
    full-size minors vanish identically; what the weight estimates rely on is
    the (G_0; ..; G_{nu-1}) stack, the stack restricted to its last k-t
    columns, and the n x t block of nonzero G_nu columns. Those three are
    checked instead.
    """
    g2 = stacked(code, "G2")
    ok, wit = fullsize_minors_nonzero(g2, budget)
    if not ok or code.t == 0:
        return ok, wit
    tail = g2.submatrix(range(g2.nrows), range(code.t, code.k))
    ok, wit = fullsize_minors_nonzero(tail, budget)
    if not ok:
        return ok, wit
    top = code.coeffs[code.nu].submatrix(range(code.n), range(code.t))
    return fullsize_minors_nonzero(top, budget)


def verify_mds_hypotheses(code: ConvCode, budget: int = DEFAULT_MINOR_BUDGET) -> MdsCertificate:
    """Run every hypothesis of the applicable branch theorem, exhaustively.

    delta < k: the coefficient layout must be superregular and n >= k+delta-1.
    delta >= k: additionally the full-size minor conditions on the coefficient
    stacks must hold (see _stack_fullsize_checks), and n >= 2*delta+k-nu.
    Column reducedness and degree = delta are implied but re-verified.
    """
    low = code.delta < code.k
    branch = "delta_lt_k" if low else "delta_ge_k"
    n_ok = code.n >= n_bound(code.k, code.delta)

    layout = layout_from_code(code)
    sr_ok, sr_wit = is_superregular(layout.matrix, budget)

    fs_ok: bool | None = None
    fs_wit = None
    if not low:
        fs_ok, fs_wit = _stack_fullsize_checks(code, budget)

    pm = code.poly_matrix()
    cr_ok = is_column_reduced(pm)
    deg_ok = code_degree(pm) == code.delta

    checks = {
        "n_bound": n_ok,
        "layout_superregular": sr_ok,
        "stack_fullsize_nonzero": fs_ok,
        "column_reduced": cr_ok,
        "degree_matches": deg_ok,
    }
    failing = next(
        (name for name in _CHECK_ORDER if checks[name] is False), None
    )
    verdict = "MDS-guaranteed" if failing is None else "not-guaranteed"
    return MdsCertificate(
        branch=branch,
        checks=checks,
        verdict=verdict,
        failing=failing,
        layout_witness=sr_wit,
        stack_witness=fs_wit,
    )


# ---------------------------------------------------------------------------
# the four constructions

@dataclass(frozen=True)
class Construction:
    """A constructed code with its certificate and reproducibility metadata."""

    code: ConvCode
    certificate: MdsCertificate
    params: dict

    def guaranteed(self) -> bool:
        return self.certificate.guaranteed()


def _validated_cauchy_overrides(field, alpha, b):
    size = (field.q - 1) // 2
    if alpha is not None:
        alpha = field.element(alpha)
        if element_order(alpha) != size:
            raise ParamDomain(f"alpha override must have order (q-1)/2 = {size}")
    if b is not None:
        b = field.element(b)
        if is_square(b):
            raise ParamDomain("b override must be a nonsquare")
    d_alpha, d_b = cauchy_params(field)
    return alpha or d_alpha, b or d_b


def _cauchy_layout_low(field, n, k, delta, alpha, b) -> Matrix:
    C = cauchy_matrix(field, alpha, b)
    size = (field.q - 1) // 2
    width = k + delta
    if size < max(width, n):
        raise FieldTooSmall(
            f"Cauchy matrix side (q-1)/2 = {size} cannot host an {n}x{width} block"
        )
    return C.submatrix(range(n), range(width))


def _cauchy_layout_high(field, n, k, delta, alpha, b) -> Matrix:
    t, nu, mu = derived_params(k, delta)
    C = cauchy_matrix(field, alpha, b)
    size = (field.q - 1) // 2
    if size < (mu + 1) * n or size < k:
        raise FieldTooSmall(
            f"Cauchy matrix side (q-1)/2 = {size} cannot host {(mu + 1) * n} "
            f"stacked rows over {k} columns"
        )
    crows = C.index_rows()
    cols = []
    for r in range(1, k + 1):
        dr = nu if r <= t else nu - 1
        for j in range(dr + 1):
            cols.append([crows[j * n + i][r - 1] for i in range(n)])
    rows = [[col[i] for col in cols] for i in range(n)]
    return Matrix.from_indices(field, rows)


def _exponential_layout_low(field, n, k, delta, alpha) -> Matrix:
    return exponential_matrix(field, n, k + delta, alpha=alpha)


def _exponential_layout_high(field, n, k, delta, alpha) -> Matrix:
    t, nu, _ = derived_params(k, delta)
    if alpha is None:
        alpha = find_primitive(field)
    cols = []
    for r in range(1, k + 1):
        starts = [r - 1 + n * j for j in range(nu)]
        if r <= t:
            starts.append(n * r - 1)
        for start in starts:
            col = exponential_matrix(field, n, 1, col_offset=start, alpha=alpha)
            cols.append([col.index_rows()[i][0] for i in range(n)])
    rows = [[col[i] for col in cols] for i in range(n)]
    return Matrix.from_indices(field, rows)


def _construct(family, n, k, delta, low, q=None, p=2, N=None, alpha=None, b=None,
               q_minus_1_factors=None, budget=DEFAULT_MINOR_BUDGET) -> Construction:
    _check_params(n, k, delta)
    if low and delta >= k:
        raise ParamDomain(f"this construction needs delta < k, got delta={delta}, k={k}")
    if not low and delta < k:
        raise ParamDomain(f"this construction needs delta >= k, got delta={delta}, k={k}")
    _check_n_bound(n, k, delta)

    if family == "cauchy":
        bound = cauchy_q_bound(n, k, delta)
        if q is None:
            q = smallest_odd_prime_power(bound)
        field = _cauchy_field(q)
        alpha, b = _validated_cauchy_overrides(field, alpha, b)
        layout = (_cauchy_layout_low if low else _cauchy_layout_high)(
            field, n, k, delta, alpha, b
        )
        params = {
            "family": "cauchy",
            "q": q,
            "alpha": alpha.repr_json(),
            "b": b.repr_json(),
            "field_bound_met": q >= bound,
        }
    elif family == "exponential":
        bound = exponential_n_bound(n, k, delta)
        if N is None:
            N = bound
        field = Field(p, N, q_minus_1_factors=q_minus_1_factors)
        if alpha is not None:
            alpha = field.element(alpha)
            if element_order(alpha) != field.q - 1:
                raise ParamDomain("alpha override must be a primitive element")
        else:
            alpha = find_primitive(field)
        layout = (_exponential_layout_low if low else _exponential_layout_high)(
            field, n, k, delta, alpha
        )
        params = {
            "family": "exponential",
            "p": p,
            "N": N,
            "alpha": alpha.repr_json(),
            "exponent_reading": EXPONENT_READING,
            "field_bound_met": N >= bound,
        }
    else:
        raise ParamDomain(f"unknown family {family!r}")

    code = code_from_layout(layout, n, k, delta)
    certificate = verify_mds_hypotheses(code, budget)
    return Construction(code=code, certificate=certificate, params=params)


def construct_low(family: str, n: int, k: int, delta: int, **kwargs) -> Construction:
    """Construction for delta < k: the layout is the top-left n x (k+delta)
    block of the family matrix."""
    return _construct(family, n, k, delta, low=True, **kwargs)


def construct_high(family: str, n: int, k: int, delta: int, **kwargs) -> Construction:
    """Construction for delta >= k: coefficient blocks are column segments
    of the family matrix (cauchy: rows j*n..(j+1)*n-1 of column r-1;
    exponential: grid columns r-1+n*j, plus n*r-1 for the top blocks)."""
    return _construct(family, n, k, delta, low=False, **kwargs)


def construct(family: str, n: int, k: int, delta: int, **kwargs) -> Construction:
    """Dispatch on the delta < k / delta >= k branch."""
    _check_params(n, k, delta)
    if delta < k:
        return construct_low(family, n, k, delta, **kwargs)
    return construct_high(family, n, k, delta, **kwargs)
