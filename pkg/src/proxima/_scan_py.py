"""Pure-Python enumeration kernels.

These walk every unordered pair (or triple) of rows, restricted by a
distinctness mask, and reduce to the worst ratio lhs/rhs together with the
witnesses a verifier needs.  The compiled module ``proxima._scan`` is a
drop-in twin; ``proxima.kernels`` picks whichever is available.

Conventions shared by both backends:

* ``lhs`` / ``rhs`` are dense k-by-k float matrices; only entries above the
  diagonal are read.
* ``distinct`` is a k-by-k mask; a pair or triple is admitted only when every
  involved index pair is marked distinct.
* Pairs (or triples) whose rhs aggregate is <= eps while lhs exceeds eps are
  *degenerate*: no finite ratio certifies them.  The first such combination
  in lexicographic order is reported.
* Returns ``(checked, best_ratio, best_combo, first_geq1_combo,
  degenerate_combo)``: the number of admitted combinations, the maximal
  finite ratio (-1.0 when none was formed), the lexicographically first
  combination attaining it, the first combination with ratio >= 1 (a
  counterexample certificate), and the first degenerate combination.  Absent
  combinations are ``None``.
"""

from __future__ import annotations


def _rows(m):
    # ndarray.tolist() yields plain floats, much faster to loop over than
    # np.float64 scalars; plain nested sequences pass through unchanged.
    return m.tolist() if hasattr(m, "tolist") else [list(row) for row in m]


def scan_pairs(lhs, rhs, distinct, eps):
    """Worst lhs[i,j]/rhs[i,j] over admitted unordered pairs i < j."""
    llhs = _rows(lhs)
    lrhs = _rows(rhs)
    mask = _rows(distinct)
    k = len(llhs)
    checked = 0
    best = -1.0
    bi = bj = -1
    fi = fj = -1
    di = dj = -1
    for i in range(k):
        for j in range(i + 1, k):
            if not mask[i][j]:
                continue
            checked += 1
            num = llhs[i][j]
            den = lrhs[i][j]
            if den > eps:
                ratio = num / den
                if ratio > best:
                    best = ratio
                    bi, bj = i, j
                if ratio >= 1.0 and fi < 0:
                    fi, fj = i, j
            elif num > eps and di < 0:
                di, dj = i, j
    return (
        checked,
        best,
        (bi, bj) if bi >= 0 else None,
        (fi, fj) if fi >= 0 else None,
        (di, dj) if di >= 0 else None,
    )


def scan_triples(lhs, rhs, distinct, eps):
    """Worst perimeter ratio over admitted unordered triples i < j < l.

    The aggregate for a triple is the sum of its three pair entries on each
    side; a triple is admitted only when all three pairs are distinct.
    """
    llhs = _rows(lhs)
    lrhs = _rows(rhs)
    mask = _rows(distinct)
    k = len(llhs)
    checked = 0
    best = -1.0
    bi = bj = bl = -1
    fi = fj = fl = -1
    di = dj = dl = -1
    for i in range(k):
        lhs_i = llhs[i]
        rhs_i = lrhs[i]
        mask_i = mask[i]
        for j in range(i + 1, k):
            if not mask_i[j]:
                continue
            lhs_j = llhs[j]
            rhs_j = lrhs[j]
            mask_j = mask[j]
            lhs_ij = lhs_i[j]
            rhs_ij = rhs_i[j]
            for l in range(j + 1, k):
                if not (mask_j[l] and mask_i[l]):
                    continue
                checked += 1
                num = lhs_ij + lhs_j[l] + lhs_i[l]
                den = rhs_ij + rhs_j[l] + rhs_i[l]
                if den > eps:
                    ratio = num / den
                    if ratio > best:
                        best = ratio
                        bi, bj, bl = i, j, l
                    if ratio >= 1.0 and fi < 0:
                        fi, fj, fl = i, j, l
                elif num > eps and di < 0:
                    di, dj, dl = i, j, l
    return (
        checked,
        best,
        (bi, bj, bl) if bi >= 0 else None,
        (fi, fj, fl) if fi >= 0 else None,
        (di, dj, dl) if di >= 0 else None,
    )
