"""Pure-Python GF(3) row-reduction kernel.

Rows are dense bytearrays with one residue (0/1/2) per byte.  Row
operations go through Python big-integer addition: residues stay <= 2, so
adding two rows never carries across byte boundaries, and a single
``bytes.translate`` reduces every byte mod 3.  That keeps the inner loop
at C speed without any third-party dependency.
"""

from __future__ import annotations

_MOD3 = bytes(b % 3 for b in range(256))
_DOUBLE = bytes((2 * b) % 3 for b in range(256))


def _add_rows(dst: bytearray, src: bytes) -> bytearray:
    """dst + src entrywise mod 3 (no aliasing requirements)."""
    n = len(dst)
    total = int.from_bytes(dst, "little") + int.from_bytes(src, "little")
    return bytearray(total.to_bytes(n, "little").translate(_MOD3))


def scale_row(row: bytearray, c: int) -> bytearray:
    if c % 3 == 1:
        return bytearray(row)
    if c % 3 == 2:
        return bytearray(bytes(row).translate(_DOUBLE))
    return bytearray(len(row))


def addmul_row(dst: bytearray, src: bytearray, c: int) -> bytearray:
    """dst + c*src mod 3."""
    c %= 3
    if c == 0:
        return dst
    s = bytes(src) if c == 1 else bytes(src).translate(_DOUBLE)
    return _add_rows(dst, s)


def rref(rows: list[bytearray], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Returns the pivot columns in ascending order.  Pivot choice is the
    first row with a nonzero entry in the leftmost unfinished column, so
    the output is deterministic.
    """
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot = -1
        for i in range(r, nrows):
            if rows[i][col]:
                pivot = i
                break
        if pivot < 0:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        if rows[r][col] == 2:
            rows[r] = scale_row(rows[r], 2)
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][col]:
                rows[i] = addmul_row(rows[i], prow, 3 - rows[i][col])
        pivots.append(col)
        r += 1
    return pivots
