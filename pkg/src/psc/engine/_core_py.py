"""Numpy tableau kernels (fallback for the compiled core).

Rows are Pauli generators in xz-form ``i**e X**x Z**z`` with the x and z
planes packed into ``uint64`` words, qubit ``j`` at word ``j >> 6`` bit
``j & 63``.  Phases live in a ``uint8`` vector and are kept mod 4.
"""

import numpy as np

BACKEND = "python"


def _parity(a):
    return (np.bitwise_count(a).sum(axis=-1) & 1).astype(np.uint8)


def anticommuting(X, Z, qx, qz):
    """Boolean mask of rows anticommuting with ``(qx, qz)``."""
    return _parity((X & qz) ^ (Z & qx)).astype(bool)


def left_multiply(X, Z, E, mask, qx, qz, qe):
    """Replace each masked row ``P`` by ``Q P`` where ``Q = i**qe X**qx Z**qz``."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return
    x = X[idx]
    E[idx] = (E[idx].astype(np.int64) + qe + 2 * _parity(x & qz)) % 4
    X[idx] = x ^ qx
    Z[idx] ^= qz


def right_multiply(X, Z, E, dst, src):
    """Row ``dst`` becomes ``row_dst * row_src`` for every index in ``dst``."""
    dst = np.asarray(dst)
    if dst.size == 0:
        return
    xs, zs, es = X[src], Z[src], int(E[src])
    E[dst] = (E[dst].astype(np.int64) + es + 2 * _parity(Z[dst] & xs)) % 4
    X[dst] ^= xs
    Z[dst] ^= zs


def rref(X, Z, E, n):
    """Reduce rows in place to fully reduced echelon form.

    Columns run over the x plane then the z plane.  Returns an int64 array
    holding each row's pivot column, or -1 for rows that became trivial.
    """
    if X.shape[1] == 1:
        return _rref_small(X, Z, E, n)
    rows = X.shape[0]
    piv = np.full(rows, -1, dtype=np.int64)
    r = 0
    for col in range(2 * n):
        if r == rows:
            break
        plane = X if col < n else Z
        q = col if col < n else col - n
        w, b = q >> 6, np.uint64(1) << np.uint64(q & 63)
        has = (plane[r:, w] & b) != 0
        hit = np.flatnonzero(has)
        if hit.size == 0:
            continue
        p = r + int(hit[0])
        if p != r:
            X[[r, p]] = X[[p, r]]
            Z[[r, p]] = Z[[p, r]]
            E[[r, p]] = E[[p, r]]
        others = np.flatnonzero((plane[:, w] & b) != 0)
        others = others[others != r]
        right_multiply(X, Z, E, others, r)
        piv[r] = col
        r += 1
    return piv


def reduce(X, Z, E, piv, n, qx, qz):
    """Express ``(qx, qz)`` through a reduced tableau.

    Returns ``(found, e)``: whether the letters lie in the row span, and the
    xz-phase of the product of the rows used.
    """
    if X.shape[1] == 1:
        return _reduce_small(X[:, 0].tolist(), Z[:, 0].tolist(), E.tolist(), piv.tolist(), n, int(qx[0]), int(qz[0]))
    live = np.flatnonzero(piv >= 0)
    cols = piv[live]
    isx = cols < n
    q = np.where(isx, cols, cols - n).astype(np.uint64)
    words = (q >> np.uint64(6)).astype(np.int64)
    vals = np.where(isx, qx[words], qz[words])
    use = live[((vals >> (q & np.uint64(63))) & np.uint64(1)).astype(bool)]
    if use.size == 0:
        return (not qx.any() and not qz.any()), 0
    xs, zs = X[use], Z[use]
    zacc = np.bitwise_xor.accumulate(zs, axis=0)
    cross = _parity(zacc[:-1] & xs[1:]).sum() if len(use) > 1 else 0
    e = (int(E[use].astype(np.int64).sum()) + 2 * int(cross)) % 4
    xt = np.bitwise_xor.reduce(xs, axis=0)
    zt = zacc[-1]
    return bool(np.array_equal(xt, qx) and np.array_equal(zt, qz)), e


def _rref_small(X, Z, E, n):
    xs, zs, es = X[:, 0].tolist(), Z[:, 0].tolist(), E.tolist()
    rows = len(xs)
    piv = [-1] * rows
    r = 0
    for col in range(2 * n):
        if r == rows:
            break
        plane = xs if col < n else zs
        b = 1 << (col if col < n else col - n)
        p = next((k for k in range(r, rows) if plane[k] & b), None)
        if p is None:
            continue
        if p != r:
            xs[r], xs[p] = xs[p], xs[r]
            zs[r], zs[p] = zs[p], zs[r]
            es[r], es[p] = es[p], es[r]
        xr, zr, er = xs[r], zs[r], es[r]
        for k in range(rows):
            if k != r and plane[k] & b:
                es[k] = (es[k] + er + 2 * (bin(zs[k] & xr).count("1") & 1)) % 4
                xs[k] ^= xr
                zs[k] ^= zr
        piv[r] = col
        r += 1
    X[:, 0] = xs
    Z[:, 0] = zs
    E[:] = es
    return np.array(piv, dtype=np.int64)


def _reduce_small(xs, zs, es, piv, n, qx, qz):
    # one word per row: plain ints beat numpy call overhead
    xa = za = e = 0
    for r, col in enumerate(piv):
        if col < 0:
            continue
        bit = (qx >> col) & 1 if col < n else (qz >> (col - n)) & 1
        if bit:
            xr = xs[r]
            e += es[r] + 2 * (bin(za & xr).count("1") & 1)
            xa ^= xr
            za ^= zs[r]
    return xa == qx and za == qz, e % 4
