"""Ranks of sparse integer boundary matrices.

``exact_rank`` is the rational rank, computed by column reduction with
fraction-free integer updates on Python integers (no overflow). ``rank_mod_p``
is the same reduction over F_p. Ranks mod p never exceed rational ranks, so
Betti numbers derived from them can be too large and certify nothing over Q.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, Iterable, List, Optional, Set, Tuple

from scipy import sparse
from tqdm import tqdm


Column = Dict[int, int]


def _columns(matrix: sparse.spmatrix) -> List[Column]:
    csc = sparse.csc_matrix(matrix)
    csc.eliminate_zeros()
    out: List[Column] = []
    for j in range(csc.shape[1]):
        start, stop = csc.indptr[j], csc.indptr[j + 1]
        out.append(
            {int(i): int(x) for i, x in zip(csc.indices[start:stop], csc.data[start:stop])}
        )
    return out


def _normalize(col: Column) -> Column:
    divisor = 0
    for value in col.values():
        divisor = gcd(divisor, value)
        if divisor == 1:
            return col
    if divisor > 1:
        return {i: v // divisor for i, v in col.items()}
    return col


def _reduce(
    columns: List[Column],
    combine,
    skip: Iterable[int],
    progress: bool,
    desc: str,
) -> Tuple[int, Set[int]]:
    skipped = set(skip)
    pivots: Dict[int, Column] = {}
    for j, col in enumerate(tqdm(columns, desc=desc, unit="col", disable=not progress)):
        if j in skipped or not col:
            continue
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            col = combine(col, other, low)
    return len(pivots), set(pivots)


def _combine_exact(col: Column, other: Column, low: int) -> Column:
    a, b = col[low], other[low]
    g = gcd(a, b)
    sa, sb = b // g, a // g
    out = {i: sa * v for i, v in col.items()}
    for i, v in other.items():
        value = out.get(i, 0) - sb * v
        if value:
            out[i] = value
        else:
            out.pop(i, None)
    return _normalize(out)


def exact_rank(
    matrix: sparse.spmatrix,
    skip: Iterable[int] = (),
    progress: bool = False,
) -> Tuple[int, Set[int]]:
    """Rank over Q and the set of pivot rows.

    Columns listed in ``skip`` are assumed to reduce to zero; pass the pivot
    rows of the next boundary matrix here.
    """
    return _reduce(_columns(matrix), _combine_exact, skip, progress, "Exact rank")


def rank_mod_p(
    matrix: sparse.spmatrix,
    p: int,
    skip: Iterable[int] = (),
    progress: bool = False,
) -> Tuple[int, Set[int]]:
    """Rank over F_p (preview only)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    columns = [
        {i: v % p for i, v in col.items() if v % p} for col in _columns(matrix)
    ]

    def combine(col: Column, other: Column, low: int) -> Column:
        factor = col[low] * pow(other[low], -1, p) % p
        out = dict(col)
        for i, v in other.items():
            value = (out.get(i, 0) - factor * v) % p
            if value:
                out[i] = value
            else:
                out.pop(i, None)
        return out

    return _reduce(columns, combine, skip, progress, f"Rank mod {p}")


def matrix_rank(matrix: Optional[sparse.spmatrix], prime: Optional[int] = None, **kwargs) -> Tuple[int, Set[int]]:
    if matrix is None or matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0, set()
    if prime is None:
        return exact_rank(matrix, **kwargs)
    return rank_mod_p(matrix, prime, **kwargs)
