"""Exact dense linear algebra over the rationals and prime fields.

Everything here is plain Gaussian elimination with exact scalars. Only
ranks and bases are contractual; row echelon form is an implementation
detail. Vectors are lists of field scalars, subspaces are lists of
spanning vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import InputValidationError
from .fields import RATIONALS, FieldSpec


@dataclass(frozen=True)
class ExactMatrix:
    """A rows x cols matrix of exact scalars in a chosen field."""

    field_spec: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Tuple[object, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise InputValidationError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise InputValidationError("column count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field_spec: FieldSpec = None) -> "ExactMatrix":
        field_spec = field_spec or FieldSpec()
        rows = tuple(tuple(r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        return cls(field_spec, len(rows), ncols, rows)

    @classmethod
    def from_int_rows(cls, rows: Sequence[Sequence[int]], field_spec: FieldSpec = None) -> "ExactMatrix":
        field_spec = field_spec or FieldSpec()
        f = field_spec.field()
        conv = tuple(tuple(f.from_int(x) for x in r) for r in rows)
        ncols = len(conv[0]) if conv else 0
        return cls(field_spec, len(conv), ncols, conv)


def rref_rows(rows, field, pivot_log: Optional[list] = None):
    """Reduced row echelon form. Returns (pivot_columns, nonzero_rows).

    pivot_log, when given, collects every pivot value that was divided by;
    this supports the F_p versus rationals consistency check.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pivot_log is not None:
            pivot_log.append(pv)
        inv = field.inv(pv)
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(m[i][c]):
                fac = m[i][c]
                mr = m[r]
                m[i] = [field.sub(x, field.mul(fac, y)) for x, y in zip(m[i], mr)]
        pivots.append(c)
        r += 1
    return pivots, m[:r]


def rank_rows(rows, field) -> int:
    pivots, _ = rref_rows(rows, field)
    return len(pivots)


def rank(M: ExactMatrix) -> int:
    """Rank of M over its field; always <= min(rows, cols)."""
    return rank_rows(M.entries, M.field_spec.field())


def kernel_rows(rows, field, ncols: int):
    """Basis of the right kernel {v : M v = 0} as a list of vectors."""
    pivots, red = rref_rows(rows, field)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def kernel_basis(M: ExactMatrix):
    """Basis of ker(M); size equals cols - rank(M) and M v = 0 for each v."""
    return kernel_rows(M.entries, M.field_spec.field(), M.cols)


def matvec(rows, v, field):
    out = []
    for row in rows:
        acc = field.zero
        for a, b in zip(row, v):
            if not field.is_zero(a) and not field.is_zero(b):
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def matmul(a_rows, b_rows, field):
    if not a_rows:
        return []
    ncols = len(b_rows[0]) if b_rows else 0
    bt = list(zip(*b_rows)) if b_rows else []
    out = []
    for row in a_rows:
        new = []
        for c in range(ncols):
            acc = field.zero
            col = bt[c]
            for x, y in zip(row, col):
                if not field.is_zero(x) and not field.is_zero(y):
                    acc = field.add(acc, field.mul(x, y))
            new.append(acc)
        out.append(new)
    return out


def is_zero_rows(rows, field) -> bool:
    return all(field.is_zero(x) for row in rows for x in row)


def row_space_basis(vectors, field):
    """Canonical (RREF) basis of the span of the given vectors."""
    if not vectors:
        return []
    _, red = rref_rows(vectors, field)
    return red


def _reduce_against(v, pivots, red, field):
    """Reduce v against an RREF basis; returns the remainder."""
    v = list(v)
    for r, pc in enumerate(pivots):
        if not field.is_zero(v[pc]):
            fac = v[pc]
            row = red[r]
            v = [field.sub(x, field.mul(fac, y)) for x, y in zip(v, row)]
    return v


def in_span(v, vectors, field) -> bool:
    pivots, red = rref_rows(vectors, field)
    return all(field.is_zero(x) for x in _reduce_against(v, pivots, red, field))


def subspace_sum(U, W, field):
    """Basis of span(U) + span(W)."""
    return row_space_basis(list(U) + list(W), field)


def subspace_meet(U, W, field=RATIONALS):
    """Basis of span(U) ∩ span(W) via the Zassenhaus block trick.

    U and W are spanning sets of vectors of equal ambient dimension.
    """
    U = [list(u) for u in U]
    W = [list(w) for w in W]
    dims = {len(v) for v in U + W}
    if len(dims) > 1:
        raise InputValidationError(f"ambient dimension mismatch: {sorted(dims)}")
    if not U or not W:
        return []
    n = dims.pop()
    block = [u + u for u in U] + [w + [field.zero] * n for w in W]
    _, red = rref_rows(block, field)
    meet = []
    for row in red:
        if all(field.is_zero(x) for x in row[:n]):
            right = row[n:]
            if not all(field.is_zero(x) for x in right):
                meet.append(right)
    return row_space_basis(meet, field)


def quotient_dim(U, W, field=RATIONALS) -> int:
    """dim(span(U)/span(W)); requires span(W) ⊆ span(U)."""
    U = [list(u) for u in U]
    W = [list(w) for w in W]
    dims = {len(v) for v in U + W}
    if len(dims) > 1:
        raise InputValidationError(f"ambient dimension mismatch: {sorted(dims)}")
    pivots, red = rref_rows(U, field) if U else ([], [])
    for w in W:
        rem = _reduce_against(w, pivots, red, field)
        if not all(field.is_zero(x) for x in rem):
            raise InputValidationError("W is not contained in U")
    w_dim = len(row_space_basis(W, field)) if W else 0
    return len(red) - w_dim
