# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(3) row-reduction kernel (same contract as _kernel_py)."""


def rref(list rows, Py_ssize_t ncols):
    """Reduce a list of bytearray rows in place to RREF; return pivot columns."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, col, i, j, pivot
    cdef unsigned char c, m
    cdef unsigned char[::1] prow, irow
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        pivot = -1
        for i in range(r, nrows):
            irow = rows[i]
            if irow[col] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        if prow[col] == 2:
            for j in range(ncols):
                c = prow[j]
                if c != 0:
                    prow[j] = 3 - c
        for i in range(nrows):
            if i == r:
                continue
            irow = rows[i]
            c = irow[col]
            if c == 0:
                continue
            m = 3 - c
            if m == 1:
                for j in range(col, ncols):
                    c = prow[j]
                    if c != 0:
                        irow[j] = (irow[j] + c) % 3
            else:
                for j in range(col, ncols):
                    c = prow[j]
                    if c != 0:
                        irow[j] = (irow[j] + 2 * c) % 3
        pivots.append(col)
        r += 1
    return pivots
