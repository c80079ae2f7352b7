# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; semantics identical to proxima._scan_py.

Both kernels reduce over unordered index combinations with a distinctness
mask, returning (checked, best_ratio, best_combo, first_geq1_combo,
degenerate_combo).  See the pure-Python twin for the full contract.
"""


def scan_pairs(double[:, ::1] lhs, double[:, ::1] rhs,
               unsigned char[:, ::1] distinct, double eps):
    cdef Py_ssize_t k = lhs.shape[0]
    cdef Py_ssize_t i, j
    cdef long checked = 0
    cdef double best = -1.0
    cdef double num, den, ratio
    cdef Py_ssize_t bi = -1, bj = -1
    cdef Py_ssize_t fi = -1, fj = -1
    cdef Py_ssize_t di = -1, dj = -1
    for i in range(k):
        for j in range(i + 1, k):
            if not distinct[i, j]:
                continue
            checked += 1
            num = lhs[i, j]
            den = rhs[i, j]
            if den > eps:
                ratio = num / den
                if ratio > best:
                    best = ratio
                    bi = i
                    bj = j
                if ratio >= 1.0 and fi < 0:
                    fi = i
                    fj = j
            elif num > eps and di < 0:
                di = i
                dj = j
    return (
        checked,
        best,
        (bi, bj) if bi >= 0 else None,
        (fi, fj) if fi >= 0 else None,
        (di, dj) if di >= 0 else None,
    )


def scan_triples(double[:, ::1] lhs, double[:, ::1] rhs,
                 unsigned char[:, ::1] distinct, double eps):
    cdef Py_ssize_t k = lhs.shape[0]
    cdef Py_ssize_t i, j, l
    cdef long checked = 0
    cdef double best = -1.0
    cdef double num, den, ratio, lhs_ij, rhs_ij
    cdef Py_ssize_t bi = -1, bj = -1, bl = -1
    cdef Py_ssize_t fi = -1, fj = -1, fl = -1
    cdef Py_ssize_t di = -1, dj = -1, dl = -1
    for i in range(k):
        for j in range(i + 1, k):
            if not distinct[i, j]:
                continue
            lhs_ij = lhs[i, j]
            rhs_ij = rhs[i, j]
            for l in range(j + 1, k):
                if not (distinct[j, l] and distinct[i, l]):
                    continue
                checked += 1
                num = lhs_ij + lhs[j, l] + lhs[i, l]
                den = rhs_ij + rhs[j, l] + rhs[i, l]
                if den > eps:
                    ratio = num / den
                    if ratio > best:
                        best = ratio
                        bi = i
                        bj = j
                        bl = l
                    if ratio >= 1.0 and fi < 0:
                        fi = i
                        fj = j
                        fl = l
                elif num > eps and di < 0:
                    di = i
                    dj = j
                    dl = l
    return (
        checked,
        best,
        (bi, bj, bl) if bi >= 0 else None,
        (fi, fj, fl) if fi >= 0 else None,
        (di, dj, dl) if di >= 0 else None,
    )
