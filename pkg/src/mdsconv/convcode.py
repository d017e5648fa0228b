"""Polynomial generator matrices and convolutional code parameters.

A rate k/n code of degree delta is carried by an n x k polynomial matrix
G(z) = G_0 + G_1 z + ... + G_mu z^mu with the fixed column-degree
convention: writing nu = floor(delta/k) + 1 and t = delta - k*floor(delta/k),
columns 1..t have degree nu and columns t+1..k have degree nu - 1. The
coefficient layout operation flattens G(z) into the n x (k*nu + t) matrix
whose columns are, per generator column r, the coefficient vectors of z^0 up
to the column degree, in that order.

Polynomials are tuples of canonical field indices, lowest degree first,
trailing zeros trimmed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotColumnReduced,
    ParamDomain,
    RankDeficient,
    ShapeError,
    ZeroColumn,
)
from .galois import Field, FieldElement
from .linalg import Matrix, rank, vstack, zero_matrix

# ---------------------------------------------------------------------------
# polynomial helpers on index tuples


def ptrim(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pdeg(c) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(c) - 1


def padd(field: Field, a, b) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = field.add(out[i], v)
    return ptrim(out)


def psub(field: Field, a, b) -> tuple[int, ...]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = field.sub(out[i], v)
    return ptrim(out)


def pmul(field: Field, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = field.add(out[i + j], field.mul(x, y))
    return ptrim(out)


def pscale(field: Field, a, c: int) -> tuple[int, ...]:
    if c == 0:
        return ()
    return ptrim([field.mul(x, c) for x in a])


def pshift(a, r: int) -> tuple[int, ...]:
    """Multiply by z^r."""
    if not a:
        return ()
    return (0,) * r + tuple(a)


def peval(field: Field, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def pdivexact(field: Field, a, b) -> tuple[int, ...]:
    """Quotient a / b when the division is exact (used by Bareiss elimination)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        if ptrim(a):
            raise ArithmeticError("inexact polynomial division")
        return ()
    quot = [0] * (len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    for pos in range(len(a) - len(b), -1, -1):
        c = field.mul(a[pos + len(b) - 1], inv_lead)
        quot[pos] = c
        if c:
            for i, v in enumerate(b):
                a[pos + i] = field.sub(a[pos + i], field.mul(c, v))
    if ptrim(a):
        raise ArithmeticError("inexact polynomial division")
    return ptrim(quot)


# ---------------------------------------------------------------------------
# polynomial vectors and matrices


class PolyVector:
    """A column vector of polynomials over one field."""

    __slots__ = ("field", "polys")

    def __init__(self, field: Field, polys):
        self.field = field
        packed = []
        for poly in polys:
            packed.append(ptrim(field.element(c).val for c in poly))
        self.polys = tuple(packed)

    @classmethod
    def from_index_polys(cls, field: Field, polys) -> "PolyVector":
        v = object.__new__(cls)
        v.field = field
        v.polys = tuple(ptrim(p) for p in polys)
        return v

    def __len__(self):
        return len(self.polys)

    def entry(self, i: int) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.polys[i])

    def shifted(self, r: int) -> "PolyVector":
        return PolyVector.from_index_polys(self.field, [pshift(p, r) for p in self.polys])

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if self.field != other.field or len(self) != len(other):
            raise DimensionMismatch("vector mismatch")
        return PolyVector.from_index_polys(
            self.field,
            [padd(self.field, a, b) for a, b in zip(self.polys, other.polys)],
        )

    def is_zero(self) -> bool:
        return all(not p for p in self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, PolyVector)
            and self.field == other.field
            and self.polys == other.polys
        )

    def __hash__(self):
        return hash((self.field, self.polys))

    def to_json(self) -> list:
        return [[self.field.repr_of(c) for c in p] for p in self.polys]

    def __repr__(self):
        return f"PolyVector({self.field!r}, {self.to_json()})"


def weight(v: PolyVector) -> int:
    """Number of nonzero field coefficients across all entries and degrees."""
    return sum(1 for p in v.polys for c in p if c)


class PolyMatrix:
    """An n x k matrix of polynomials, stored as index tuples."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: Field, entries):
        self.field = field
        packed = []
        width = None
        for row in entries:
            prow = tuple(ptrim(field.element(c).val for c in poly) for poly in row)
            if width is None:
                width = len(prow)
            elif len(prow) != width:
                raise DimensionMismatch("ragged rows")
            packed.append(prow)
        if not packed or not width:
            raise DimensionMismatch("empty polynomial matrix")
        self.entries = tuple(packed)
        self.nrows = len(packed)
        self.ncols = width

    @classmethod
    def from_coeff_matrices(cls, mats) -> "PolyMatrix":
        field = mats[0].field
        n, k = mats[0].nrows, mats[0].ncols
        pm = object.__new__(cls)
        pm.field = field
        pm.nrows, pm.ncols = n, k
        rows = []
        for i in range(n):
            row = []
            for j in range(k):
                row.append(ptrim(m.index_rows()[i][j] for m in mats))
            rows.append(tuple(row))
        pm.entries = tuple(rows)
        return pm

    def entry_poly(self, i: int, j: int) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.entries[i][j])

    def column_degrees(self) -> tuple[int, ...]:
        degs = []
        for j in range(self.ncols):
            d = max(pdeg(self.entries[i][j]) for i in range(self.nrows))
            if d < 0:
                raise ZeroColumn(f"column {j} of the generator matrix is zero")
            degs.append(d)
        return tuple(degs)

    def degree(self) -> int:
        return max(
            pdeg(self.entries[i][j])
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    def coeff_matrices(self) -> list[Matrix]:
        """G_0 .. G_mu with mu = deg G."""
        mu = self.degree()
        out = []
        for d in range(mu + 1):
            rows = [
                [
                    self.entries[i][j][d] if d < len(self.entries[i][j]) else 0
                    for j in range(self.ncols)
                ]
                for i in range(self.nrows)
            ]
            out.append(Matrix.from_indices(self.field, rows))
        return out

    def eval_at(self, x: int) -> Matrix:
        return Matrix.from_indices(
            self.field,
            [
                [peval(self.field, self.entries[i][j], x) for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))


def hcm(pm: PolyMatrix) -> Matrix:
    """Highest column degree coefficient matrix: entry (i, j) is the
    coefficient of z^(deg of column j) in g_ij."""
    degs = pm.column_degrees()
    rows = []
    for i in range(pm.nrows):
        row = []
        for j in range(pm.ncols):
            poly = pm.entries[i][j]
            row.append(poly[degs[j]] if degs[j] < len(poly) else 0)
        rows.append(row)
    return Matrix.from_indices(pm.field, rows)


def is_column_reduced(pm: PolyMatrix) -> bool:
    return rank(hcm(pm)) == pm.ncols


def _poly_det_bareiss(field: Field, m) -> tuple[int, ...]:
    """Fraction-free determinant of a square matrix of polynomials."""
    s = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = (1,)
    for p in range(s - 1):
        if not m[p][p]:
            swap = next((r for r in range(p + 1, s) if m[r][p]), None)
            if swap is None:
                # entire lower column zero: determinant collapses to zero
                if all(not m[r][p] for r in range(p, s)):
                    return ()
            else:
                m[p], m[swap] = m[swap], m[p]
                sign = -sign
        for i in range(p + 1, s):
            for j in range(p + 1, s):
                num = psub(
                    field,
                    pmul(field, m[i][j], m[p][p]),
                    pmul(field, m[i][p], m[p][j]),
                )
                m[i][j] = pdivexact(field, num, prev) if num else ()
            m[i][p] = ()
        prev = m[p][p]
        if not prev:
            return ()
    det = m[s - 1][s - 1]
    if sign < 0:
        det = pscale(field, det, field.neg(1))
    return det


def _interp_degree(field: Field, xs, ys) -> int:
    """Degree of the unique polynomial through (xs, ys); -1 if identically zero."""
    npts = len(xs)
    coeffs = [0] * npts
    for m in range(npts):
        if ys[m] == 0:
            continue
        # Lagrange basis polynomial for node m
        num = [1]
        denom = 1
        for i in range(npts):
            if i == m:
                continue
            # num *= (z - xs[i])
            new = [0] * (len(num) + 1)
            for d, c in enumerate(num):
                if c:
                    new[d + 1] = field.add(new[d + 1], c)
                    new[d] = field.add(new[d], field.mul(c, field.neg(xs[i])))
            num = new
            denom = field.mul(denom, field.sub(xs[m], xs[i]))
        scale = field.mul(ys[m], field.inv(denom))
        for d, c in enumerate(num):
            if c:
                coeffs[d] = field.add(coeffs[d], field.mul(c, scale))
    deg = -1
    for d, c in enumerate(coeffs):
        if c:
            deg = d
    return deg


def code_degree(pm: PolyMatrix) -> int:
    """Maximum degree over all full-size minors of the polynomial matrix.

    Uses evaluation and interpolation when the field has enough points for
    the internal degree bound, otherwise exact fraction-free elimination.
    """
    field = pm.field
    n, k = pm.nrows, pm.ncols
    if n < k:
        raise ShapeError(f"matrix is {n}x{k}, need rows >= cols")
    try:
        degs = pm.column_degrees()
    except ZeroColumn as exc:
        raise RankDeficient(str(exc)) from exc
    bound = sum(degs)
    best = -1
    if field.q >= bound + 1:
        xs = []
        for idx in field.enumerate_indices():
            xs.append(idx)
            if len(xs) == bound + 1:
                break
        evals = [pm.eval_at(x) for x in xs]
        from .kernels import _det_field

        for rows in combinations(range(n), k):
            ys = []
            for ev in evals:
                mrows = ev.index_rows()
                work = [mrows[i][j] for i in rows for j in range(k)]
                ys.append(_det_field(work, k, field))
            best = max(best, _interp_degree(field, xs, ys))
    else:
        for rows in combinations(range(n), k):
            sub = [[pm.entries[i][j] for j in range(k)] for i in rows]
            det = _poly_det_bareiss(field, sub)
            best = max(best, pdeg(det))
    if best < 0:
        raise RankDeficient("all full-size minors vanish identically")
    return best


# ---------------------------------------------------------------------------
# convolutional codes


def derived_params(k: int, delta: int) -> tuple[int, int, int]:
    """(t, nu, mu) for the fixed column-degree convention."""
    nu = delta // k + 1
    t = delta - k * (delta // k)
    mu = nu if t else nu - 1
    return t, nu, max(mu, 0)


class ConvCode:
    """An (n, k, delta) code given by coefficient matrices G_0 .. G_mu."""

    __slots__ = ("field", "n", "k", "delta", "coeffs", "t", "nu", "mu")

    def __init__(self, field: Field, n: int, k: int, delta: int, coeffs):
        if not 1 <= k <= n:
            raise ParamDomain(f"need 1 <= k <= n, got k={k}, n={n}")
        if delta < 0:
            raise ParamDomain(f"degree must be >= 0, got {delta}")
        self.field = field
        self.n, self.k, self.delta = n, k, delta
        self.t, self.nu, self.mu = derived_params(k, delta)
        coeffs = tuple(coeffs)
        if len(coeffs) != self.mu + 1:
            raise ParamDomain(
                f"expected {self.mu + 1} coefficient matrices, got {len(coeffs)}"
            )
        for g in coeffs:
            if g.field != field:
                raise FieldMismatch("coefficient matrix over the wrong field")
            if (g.nrows, g.ncols) != (n, k):
                raise DimensionMismatch(
                    f"coefficient matrices must be {n}x{k}, got {g.nrows}x{g.ncols}"
                )
        self.coeffs = coeffs
        self._validate()

    def column_degree(self, j: int) -> int:
        """Prescribed degree of 0-based column j."""
        return self.nu if j < self.t else self.nu - 1

    def _validate(self):
        if self.coeffs[-1].is_zero():
            raise ParamDomain("top coefficient matrix G_mu is zero")
        idx = [g.index_rows() for g in self.coeffs]
        for j in range(self.k):
            dj = self.column_degree(j)
            for i in range(dj + 1, self.mu + 1):
                if any(idx[i][r][j] for r in range(self.n)):
                    raise ParamDomain(
                        f"column {j} has entries above its prescribed degree {dj}"
                    )
        h = self.hcm()
        if rank(h) != self.k:
            raise NotColumnReduced(
                "highest column degree coefficient matrix is rank deficient"
            )

    def hcm(self) -> Matrix:
        rows = []
        idx = [g.index_rows() for g in self.coeffs]
        for r in range(self.n):
            rows.append(
                [idx[self.column_degree(j)][r][j] for j in range(self.k)]
            )
        return Matrix.from_indices(self.field, rows)

    def poly_matrix(self) -> PolyMatrix:
        return PolyMatrix.from_coeff_matrices(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ConvCode)
            and self.field == other.field
            and (self.n, self.k, self.delta) == (other.n, other.k, other.delta)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.n, self.k, self.delta, self.coeffs))

    def __repr__(self):
        return f"ConvCode({self.field!r}, n={self.n}, k={self.k}, delta={self.delta})"

    def to_json_dict(self) -> dict:
        return {
            "field": self.field.to_json_dict(),
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "coeffs": [g.to_json() for g in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ConvCode":
        field = Field.from_json_dict(doc["field"])
        coeffs = [Matrix(field, g) for g in doc["coeffs"]]
        return cls(field, int(doc["n"]), int(doc["k"]), int(doc["delta"]), coeffs)


@dataclass(frozen=True)
class CoefficientLayout:
    """The flattened coefficient matrix plus its (degree, column) labels."""

    matrix: Matrix
    labels: tuple[tuple[int, int], ...]


def layout_from_code(code: ConvCode) -> CoefficientLayout:
    """Flatten G_0..G_mu into the n x (k*nu + t) coefficient matrix.

    Column block for generator column r (0-based): coefficient vectors of
    z^0 .. z^(column degree), in ascending degree order.
    """
    cols = []
    labels = []
    idx = [g.index_rows() for g in code.coeffs]
    for r in range(code.k):
        dr = code.column_degree(r)
        for i in range(dr + 1):
            cols.append([idx[i][row][r] for row in range(code.n)])
            labels.append((i, r))
    rows = [[col[row] for col in cols] for row in range(code.n)]
    return CoefficientLayout(
        Matrix.from_indices(code.field, rows), tuple(labels)
    )


def code_from_layout(layout: Matrix, n: int, k: int, delta: int) -> ConvCode:
    """Inverse of layout_from_code; validates the resulting code."""
    t, nu, mu = derived_params(k, delta)
    if (layout.nrows, layout.ncols) != (n, k * nu + t):
        raise ShapeError(
            f"layout must be {n}x{k * nu + t}, got {layout.nrows}x{layout.ncols}"
        )
    idx = layout.index_rows()
    coeff_rows = [[[0] * k for _ in range(n)] for _ in range(mu + 1)]
    col = 0
    for r in range(k):
        dr = nu if r < t else nu - 1
        for i in range(dr + 1):
            for row in range(n):
                coeff_rows[i][row][r] = idx[row][col]
            col += 1
    coeffs = [Matrix.from_indices(layout.field, rows) for rows in coeff_rows]
    return ConvCode(layout.field, n, k, delta, coeffs)


def stacked(code: ConvCode, which: str) -> Matrix:
    """Vertical stacks of the coefficient matrices.

    G1 = (G_0; ..; G_nu), G2 = (G_0; ..; G_{nu-1}), GBAR = (G_0; ..; G_mu).
    When G_nu is not stored (k divides delta) the G1 stack is padded with a
    zero block.
    """
    key = which.upper()
    if key == "GBAR":
        return vstack(code.coeffs)
    if key == "G2":
        return vstack(code.coeffs[: code.nu])
    if key == "G1":
        mats = list(code.coeffs[: code.nu + 1])
        while len(mats) < code.nu + 1:
            mats.append(zero_matrix(code.field, code.n, code.k))
        return vstack(mats)
    raise ParamDomain(f"unknown stack {which!r}; use G1, G2 or GBAR")


def encode(code: ConvCode, u: PolyVector) -> PolyVector:
    """The codeword G(z) u(z), by coefficient convolution."""
    if u.field != code.field:
        raise FieldMismatch("message vector over the wrong field")
    if len(u) != code.k:
        raise DimensionMismatch(f"message must have {code.k} entries, got {len(u)}")
    field = code.field
    pm = code.poly_matrix()
    out = []
    for i in range(code.n):
        acc: tuple[int, ...] = ()
        for j in range(code.k):
            term = pmul(field, pm.entries[i][j], u.polys[j])
            if term:
                acc = padd(field, acc, term)
        out.append(acc)
    return PolyVector.from_index_polys(field, out)
