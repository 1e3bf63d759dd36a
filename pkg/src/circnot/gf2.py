"""Bit-packed GF(2) linear algebra on int bitsets.

Rows are Python ints; bit ``i`` is column ``i``. Pivoting always scans
columns in ascending order so results are reproducible.
"""

from __future__ import annotations

from .errors import Inconsistent, Underdetermined


def rank(rows: list[int], n_cols: int) -> int:
    """Rank over GF(2) via Gaussian elimination."""
    work = [r for r in rows if r]
    rk = 0
    for col in range(n_cols):
        bit = 1 << col
        pivot = None
        for i in range(rk, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for i in range(len(work)):
            if i != rk and (work[i] & bit):
                work[i] ^= work[rk]
        rk += 1
        if rk == len(work):
            break
    return rk


def solve_tagged(rows: list[int], n_vars: int, tag_width: int) -> list[int]:
    """Solve a system whose right-hand side rides in the high bits.

    Each row packs ``coeffs | rhs << n_vars`` where coeffs span the first
    ``n_vars`` columns and rhs is a GF(2) vector of width ``tag_width``
    (symbolic right-hand side: bit j stands for input j; width 1 gives a
    plain constant column). Returns, per variable, its rhs expression.

    Raises Underdetermined when a variable has no pivot and Inconsistent
    when a zero coefficient row carries a nonzero rhs.
    """
    work = list(rows)
    coeff_mask = (1 << n_vars) - 1
    pivot_row_of: list[int | None] = [None] * n_vars
    done = 0
    for col in range(n_vars):
        bit = 1 << col
        pivot = None
        for i in range(done, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[done], work[pivot] = work[pivot], work[done]
        row = work[done]
        for i in range(len(work)):
            if i != done and (work[i] & bit):
                work[i] ^= row
        pivot_row_of[col] = done
        done += 1
    for i in range(done, len(work)):
        if work[i] >> n_vars:
            raise Inconsistent("contradictory parity constraints")
    free = [c for c in range(n_vars) if pivot_row_of[c] is None]
    if free:
        raise Underdetermined(free=free)
    out = [0] * n_vars
    for col in range(n_vars):
        row = work[pivot_row_of[col]]
        # Gauss-Jordan leaves exactly the pivot bit in the coeff part.
        assert row & coeff_mask == (1 << col)
        out[col] = row >> n_vars
    return out


def solution_space(rows: list[int], n_vars: int) -> tuple[int | None, list[int]]:
    """Particular solution and nullspace basis of an affine system.

    Rows carry an optional constant in bit ``n_vars``. Returns
    ``(None, [])`` when inconsistent.
    """
    work = list(rows)
    pivots: dict[int, int] = {}
    done = 0
    for col in range(n_vars):
        bit = 1 << col
        pivot = None
        for i in range(done, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[done], work[pivot] = work[pivot], work[done]
        row = work[done]
        for i in range(len(work)):
            if i != done and (work[i] & bit):
                work[i] ^= row
        pivots[col] = done
        done += 1
    const_bit = 1 << n_vars
    for i in range(done, len(work)):
        if work[i]:
            return None, []
    particular = 0
    for col, r in pivots.items():
        if work[r] & const_bit:
            particular |= 1 << col
    basis = []
    for col in range(n_vars):
        if col in pivots:
            continue
        vec = 1 << col
        for pcol, r in pivots.items():
            if work[r] & (1 << col):
                vec |= 1 << pcol
        basis.append(vec)
    return particular, basis


def enumerate_solutions(rows: list[int], n_vars: int):
    """Yield every satisfying assignment as a bitmask (small systems only)."""
    particular, basis = solution_space(rows, n_vars)
    if particular is None:
        return
    for combo in range(1 << len(basis)):
        v = particular
        c = combo
        for b in basis:
            if c & 1:
                v ^= b
            c >>= 1
        yield v


def invert(rows: list[int], n: int) -> list[int]:
    """Invert an n x n GF(2) matrix given as row bitmasks."""
    work = [rows[i] | (1 << (n + i)) for i in range(n)]
    done = 0
    for col in range(n):
        bit = 1 << col
        pivot = None
        for i in range(done, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            raise Inconsistent("matrix is singular")
        work[done], work[pivot] = work[pivot], work[done]
        row = work[done]
        for i in range(len(work)):
            if i != done and (work[i] & bit):
                work[i] ^= row
        done += 1
    mask = (1 << n) - 1
    out = [0] * n
    for r in work:
        col = (r & mask).bit_length() - 1
        out[col] = r >> n
    return out
