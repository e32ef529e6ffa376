"""Sparse exact Gauss-Jordan elimination over Q(params)."""

from __future__ import annotations

from typing import Hashable, Iterable

from .scalars import Field, Scalar


class InconsistentSystem(ValueError):
    pass


class UnderdeterminedSystem(ValueError):
    def __init__(self, free: list[Hashable]) -> None:
        super().__init__(f"{len(free)} unknown(s) not determined")
        self.free = free


def _cost(c: Scalar) -> int:
    return len(c.num) + len(c.den) + (0 if c.is_constant() else 4)


def solve_sparse(
    rows: Iterable[tuple[dict[Hashable, Scalar], Scalar]],
    unknowns: Iterable[Hashable],
    field: Field,
) -> dict[Hashable, Scalar]:
    """Solve ``sum(row[v] * x[v]) == rhs`` for every row; the solution must be unique.

    Rows are folded in one at a time against pivot rows kept in reduced
    row-echelon form, so each incoming row needs only one elimination pass.
    """
    pivots: dict[Hashable, tuple[dict[Hashable, Scalar], Scalar]] = {}
    # occurrences[v] = pivot variables whose row mentions v as a non-pivot entry
    occurrences: dict[Hashable, set[Hashable]] = {}
    for coeffs, rhs in rows:
        row = {v: c for v, c in coeffs.items() if not c.is_zero()}
        for v in [v for v in row if v in pivots]:
            c = row.pop(v, None)
            if c is None:
                continue
            prow, prhs = pivots[v]
            for w, d in prow.items():
                value = row.get(w, field.zero) - c * d
                if value.is_zero():
                    row.pop(w, None)
                else:
                    row[w] = value
            rhs = rhs - c * prhs
        if not row:
            if not rhs.is_zero():
                raise InconsistentSystem("inconsistent linear system")
            continue
        pivot = min(row, key=lambda v: (_cost(row[v]), repr(v)))
        scale = row.pop(pivot).inv()
        row = {w: d * scale for w, d in row.items()}
        rhs = rhs * scale
        # eliminate the new pivot from existing pivot rows
        for other in occurrences.pop(pivot, set()):
            orow, orhs = pivots[other]
            c = orow.pop(pivot)
            for w, d in row.items():
                value = orow.get(w, field.zero) - c * d
                if value.is_zero():
                    orow.pop(w, None)
                    occurrences.get(w, set()).discard(other)
                else:
                    if w not in orow:
                        occurrences.setdefault(w, set()).add(other)
                    orow[w] = value
            pivots[other] = (orow, orhs - c * rhs)
        pivots[pivot] = (row, rhs)
        for w in row:
            occurrences.setdefault(w, set()).add(pivot)
    wanted = list(unknowns)
    free = [v for v in wanted if v not in pivots]
    if free:
        raise UnderdeterminedSystem(free)
    solution: dict[Hashable, Scalar] = {}
    for v in wanted:
        row, rhs = pivots[v]
        if row:
            raise UnderdeterminedSystem(list(row))
        solution[v] = rhs
    return solution
