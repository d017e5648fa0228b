"""Dense matrices over a finite field: minors, rank, superregularity.

A matrix is superregular when every minor of every size is nonzero. The
exhaustive check is exponential in the matrix size, so it is guarded by an
explicit work budget and fails loudly instead of truncating: a positive
answer is a proof, never a sample.
"""

from __future__ import annotations

from math import comb
from typing import NamedTuple

from . import kernels
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    NonSquareSelection,
    ShapeError,
)
from .galois import Field, FieldElement

DEFAULT_MINOR_BUDGET = 10**7


class Witness(NamedTuple):
    """Row and column indices of a vanishing minor."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]


class Matrix:
    """Immutable matrix of field elements, stored as canonical indices."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, rows):
        self.field = field
        packed = []
        width = None
        for row in rows:
            idx_row = tuple(field.element(v).val for v in row)
            if width is None:
                width = len(idx_row)
            elif len(idx_row) != width:
                raise DimensionMismatch("ragged rows")
            packed.append(idx_row)
        if not packed or width == 0:
            raise DimensionMismatch("matrix must have at least one row and column")
        self._rows = tuple(packed)
        self.nrows = len(packed)
        self.ncols = width

    @classmethod
    def from_indices(cls, field: Field, rows) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m._rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m._rows)
        m.ncols = len(m._rows[0])
        return m

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self._rows[i][j])

    def index_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def flat(self) -> list[int]:
        return [v for row in self._rows for v in row]

    def column(self, j: int) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, row[j]) for row in self._rows)

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix.from_indices(
            self.field, [[self._rows[i][j] for j in cols] for i in rows]
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self._rows for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.field, self._rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(self.field.repr_of(v)) for v in row) for row in self._rows
        )
        return f"Matrix({self.field!r}, [{body}])"

    def to_json(self) -> list:
        return [[self.field.repr_of(v) for v in row] for row in self._rows]


def vstack(matrices) -> Matrix:
    mats = list(matrices)
    field = mats[0].field
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.field != field or m.ncols != ncols:
            raise DimensionMismatch("stacked matrices must share field and width")
        rows.extend(m.index_rows())
    return Matrix.from_indices(field, rows)


def zero_matrix(field: Field, nrows: int, ncols: int) -> Matrix:
    return Matrix.from_indices(field, [[0] * ncols for _ in range(nrows)])


def _check_selection(idx, bound, what):
    sel = tuple(idx)
    if any(i < 0 or i >= bound for i in sel):
        raise IndexOutOfRange(f"{what} selection {sel} out of range [0, {bound})")
    if any(a >= b for a, b in zip(sel, sel[1:])):
        raise IndexOutOfRange(f"{what} selection {sel} must be strictly increasing")
    return sel


def minor(m: Matrix, rows, cols) -> FieldElement:
    """Determinant of the selected square submatrix, exact over the field."""
    rsel = _check_selection(rows, m.nrows, "row")
    csel = _check_selection(cols, m.ncols, "column")
    if len(rsel) != len(csel) or not rsel:
        raise NonSquareSelection(f"need equal nonempty selections, got {rsel}/{csel}")
    s = len(rsel)
    mrows = m.index_rows()
    work = [mrows[i][j] for i in rsel for j in csel]
    return FieldElement(m.field, kernels._det_field(work, s, m.field))


def rank(m: Matrix) -> int:
    """Rank over the field, by Gaussian elimination."""
    field = m.field
    rows = [list(r) for r in m.index_rows()]
    nr, nc = m.nrows, m.ncols
    rk = 0
    for col in range(nc):
        piv = next((r for r in range(rk, nr) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        ipv = field.inv(rows[rk][col])
        for r in range(rk + 1, nr):
            f = rows[r][col]
            if f:
                f = field.mul(f, ipv)
                rows[r] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[r], rows[rk])
                ]
        rk += 1
        if rk == nr:
            break
    return rk


def combine_columns(m: Matrix, coeffs) -> tuple[FieldElement, ...]:
    """M times the coefficient vector, as a length-nrows vector."""
    field = m.field
    idx = [field.element(c).val for c in coeffs]
    if len(idx) != m.ncols:
        raise DimensionMismatch(f"need {m.ncols} coefficients, got {len(idx)}")
    out = []
    for row in m.index_rows():
        acc = 0
        for v, c in zip(row, idx):
            if v and c:
                acc = field.add(acc, field.mul(v, c))
        out.append(FieldElement(field, acc))
    return tuple(out)


def minor_count(nrows: int, ncols: int) -> int:
    """Number of minors of all sizes: sum_s C(r,s)*C(c,s) = C(r+c,r) - 1."""
    return comb(nrows + ncols, nrows) - 1


def is_superregular(m: Matrix, budget: int = DEFAULT_MINOR_BUDGET):
    """(True, None) iff every minor of every size is nonzero.

    On failure returns (False, witness) where witness is the first vanishing
    minor in the fixed enumeration order (sizes ascending, then lexicographic
    on row and column selections), so the smallest witness is reported first.
    """
    count = minor_count(m.nrows, m.ncols)
    if count > budget:
        raise BudgetExceeded(count, budget, "superregularity scan refused")
    hit = kernels.scan_minors(m.flat(), m.nrows, m.ncols, m.field)
    if hit is None:
        return True, None
    return False, Witness(tuple(hit[0]), tuple(hit[1]))


def fullsize_minors_nonzero(m: Matrix, budget: int = DEFAULT_MINOR_BUDGET):
    """(True, None) iff all C(r, c) maximal minors of a tall matrix are nonzero."""
    if m.nrows < m.ncols:
        raise ShapeError(f"matrix is {m.nrows}x{m.ncols}, need rows >= cols")
    count = comb(m.nrows, m.ncols)
    if count > budget:
        raise BudgetExceeded(count, budget, "full-size minor scan refused")
    hit = kernels.scan_fullsize(m.flat(), m.nrows, m.ncols, m.field)
    if hit is None:
        return True, None
    return False, Witness(tuple(hit), tuple(range(m.ncols)))
