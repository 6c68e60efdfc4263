"""Hot numeric kernels, each in a numba and a pure numpy/Python flavour.

* ``tree_poly_batch``   independence polynomials of many rooted trees given
  as parent arrays (exact int64; see the overflow note below).
* ``aberth_batch``      simultaneous Aberth-Ehrlich iteration on many
  polynomials of equal degree.
* ``canonical_code``    maximal adjacency code over colour-refined,
  twin-reduced labelings of a small graph.

The public names dispatch on :data:`indroot._accel.USE_NUMBA`; the
``*_numpy`` and ``*_numba`` variants stay importable for benchmarks and
cross-checks.

Overflow note: every intermediate in the tree recursion is the polynomial of
some subforest, so each coefficient is at most C(64, 32) < 2**63 for trees on
at most 64 vertices.
"""
from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, optional_njit

MAX_ITER = 200
STEP_TOL = 1e-14
EPS = np.finfo(np.float64).eps
ANGLE_OFFSET = 0.4
CANON_KERNEL_MAX = 11  # 55 code bits fit an int64


# --- tree polynomials -----------------------------------------------------

def _tree_poly_loop(parents, out):
    m, n = parents.shape
    width = out.shape[1]
    ex = np.zeros((n, width), dtype=np.int64)
    inc = np.zeros((n, width), dtype=np.int64)
    tmp = np.zeros(width, dtype=np.int64)
    for t in range(m):
        ex[:, :] = 0
        inc[:, :] = 0
        for v in range(n):
            ex[v, 0] = 1
            inc[v, 1] = 1
        for i in range(n - 1, 0, -1):
            p = parents[t, i]
            # ex[p] *= ex[i] + inc[i]
            tmp[:] = 0
            for a in range(width):
                ca = ex[p, a]
                if ca == 0:
                    continue
                for b in range(width - a):
                    tmp[a + b] += ca * (ex[i, b] + inc[i, b])
            ex[p, :] = tmp
            # inc[p] *= ex[i]
            tmp[:] = 0
            for a in range(width):
                ca = inc[p, a]
                if ca == 0:
                    continue
                for b in range(width - a):
                    tmp[a + b] += ca * ex[i, b]
            inc[p, :] = tmp
        for k in range(width):
            out[t, k] = ex[0, k] + inc[0, k]


_tree_poly_jit = optional_njit(cache=True)(_tree_poly_loop)


def _as_parents(parents) -> np.ndarray:
    arr = np.ascontiguousarray(parents, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("parents must be a 2-D array (trees x vertices)")
    if arr.shape[1] > 64:
        raise ValueError("tree kernels support at most 64 vertices")
    idx = np.arange(arr.shape[1])
    if arr.shape[1] > 1 and np.any(arr[:, 1:] >= idx[1:]):
        raise ValueError("parent arrays must be in preorder (parent[i] < i)")
    return arr


def tree_poly_batch_numba(parents) -> np.ndarray:
    arr = _as_parents(parents)
    m, n = arr.shape
    out = np.zeros((m, n + 1), dtype=np.int64)
    if m:
        _tree_poly_jit(arr, out)
    return out


def tree_poly_batch_numpy(parents) -> np.ndarray:
    arr = _as_parents(parents)
    m, n = arr.shape
    width = n + 1
    ex = np.zeros((m, n, width), dtype=np.int64)
    inc = np.zeros((m, n, width), dtype=np.int64)
    ex[:, :, 0] = 1
    inc[:, :, 1] = 1
    rows = np.arange(m)

    def mul(a, b):
        out = np.zeros_like(a)
        for j in range(width):
            out[:, j:] += a[:, j:j + 1] * b[:, :width - j]
        return out

    for i in range(n - 1, 0, -1):
        p = arr[:, i]
        child_ex = ex[:, i]
        total = child_ex + inc[:, i]
        ex[rows, p] = mul(ex[rows, p], total)
        inc[rows, p] = mul(inc[rows, p], child_ex)
    return ex[:, 0] + inc[:, 0]


# --- Aberth-Ehrlich -------------------------------------------------------

def initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    """Aberth's perturbed circle of radius |a0/ad|^(1/d).

    The angular offset keeps the start off any conjugation-symmetric
    configuration, which would pin conjugate pairs together forever.
    """
    m, width = coeffs.shape
    d = width - 1
    radius = (np.abs(coeffs[:, 0]) / np.abs(coeffs[:, d])) ** (1.0 / d)
    angles = 2 * np.pi * np.arange(d) / d + ANGLE_OFFSET
    return radius[:, None] * np.exp(1j * angles)[None, :]


def _aberth_loop(coeffs, z, converged, iters, max_iter, step_tol, eps):
    m, width = coeffs.shape
    d = width - 1
    absa = np.abs(coeffs)
    done = np.zeros(d, dtype=np.bool_)
    step = np.zeros(d, dtype=np.complex128)
    for t in range(m):
        a = coeffs[t]
        zt = z[t]
        done[:] = False
        it = 0
        while it < max_iter:
            it += 1
            for k in range(d):
                if done[k]:
                    step[k] = 0
                    continue
                zk = zt[k]
                p = a[d] + 0j
                dp = 0j
                bound = absa[t, d]
                r = abs(zk)
                for j in range(d - 1, -1, -1):
                    dp = dp * zk + p
                    p = p * zk + a[j]
                    bound = bound * r + absa[t, j]
                if abs(p) <= 4.0 * width * eps * bound:
                    done[k] = True
                    step[k] = 0
                    continue
                s = 0j
                for j in range(d):
                    if j != k:
                        s += 1.0 / (zk - zt[j])
                w = p / dp
                step[k] = w / (1.0 - w * s)
            alldone = True
            for k in range(d):
                if not done[k]:
                    zt[k] -= step[k]
                    if abs(step[k]) <= step_tol * (1.0 + abs(zt[k])):
                        done[k] = True
                    else:
                        alldone = False
            if alldone:
                break
        iters[t] = it
        converged[t] = True
        for k in range(d):
            if not done[k]:
                converged[t] = False


_aberth_jit = optional_njit(cache=True)(_aberth_loop)


def _prepare(coeffs):
    a = np.ascontiguousarray(coeffs, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] < 2:
        raise ValueError("coefficient batch must be 2-D with degree >= 1")
    if np.any(a[:, -1] == 0) or np.any(a[:, 0] == 0):
        raise ValueError("leading and constant coefficients must be non-zero")
    scale = np.abs(a).max(axis=1, keepdims=True)
    return a / scale


def aberth_batch_numba(coeffs, max_iter: int = MAX_ITER):
    """Roots of every row (constant term first).  Returns (roots, converged, iters)."""
    a = _prepare(coeffs)
    z = initial_guesses(a)
    m = a.shape[0]
    converged = np.zeros(m, dtype=np.bool_)
    iters = np.zeros(m, dtype=np.int64)
    if m:
        _aberth_jit(a, z, converged, iters, max_iter, STEP_TOL, EPS)
    return z, converged, iters


def aberth_batch_numpy(coeffs, max_iter: int = MAX_ITER):
    a = _prepare(coeffs)
    z = initial_guesses(a)
    m, width = a.shape
    d = width - 1
    absa = np.abs(a)
    done = np.zeros((m, d), dtype=bool)
    iters = np.zeros(m, dtype=np.int64)
    off_diag = ~np.eye(d, dtype=bool)
    for it in range(1, max_iter + 1):
        live = ~done.all(axis=1)
        if not live.any():
            break
        iters[live] = it
        zl = z[live]
        al = a[live]
        p = np.repeat(al[:, d:d + 1].astype(np.complex128), d, axis=1)
        dp = np.zeros_like(p)
        bound = np.repeat(absa[live, d:d + 1], d, axis=1)
        r = np.abs(zl)
        for j in range(d - 1, -1, -1):
            dp = dp * zl + p
            p = p * zl + al[:, j:j + 1]
            bound = bound * r + absa[live, j:j + 1]
        dl = done[live] | (np.abs(p) <= 4.0 * width * EPS * bound)
        diff = zl[:, :, None] - zl[:, None, :]
        diff[:, ~off_diag] = 1.0
        inv = np.where(off_diag, 1.0 / diff, 0.0)
        s = inv.sum(axis=2)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            step = w / (1.0 - w * s)
        step = np.where(dl, 0.0, step)
        zl = zl - step
        dl |= np.abs(step) <= STEP_TOL * (1.0 + np.abs(zl))
        z[live] = zl
        done[live] = dl
    return z, done.all(axis=1), iters


# --- canonical labeling ---------------------------------------------------

def _refine_loop(rows, colors):
    k = rows.shape[0]
    for v in range(k):
        deg = 0
        x = rows[v]
        while x:
            x &= x - 1
            deg += 1
        colors[v] = deg
    ncol = -1
    keys = np.zeros(k, dtype=np.int64)
    while True:
        # distinct colours in the current partition
        srt = np.sort(colors)
        cur = 1
        for i in range(1, k):
            if srt[i] != srt[i - 1]:
                cur += 1
        if cur == ncol:
            break
        ncol = cur
        for v in range(k):
            acc = 0
            x = rows[v]
            u = 0
            while x:
                if x & 1:
                    c = colors[u]
                    acc += (c + 1) * (c + 1) * 1000003 + c * 7919
                x >>= 1
                u += 1
            keys[v] = colors[v] * (1 << 40) + acc
        uniq = np.unique(keys)
        for v in range(k):
            colors[v] = np.searchsorted(uniq, keys[v])


_refine_jit = optional_njit(cache=True)(_refine_loop)


def _canon_loop(rows):
    k = rows.shape[0]
    if k <= 1:
        return 0
    colors = np.zeros(k, dtype=np.int64)
    _refine_jit(rows, colors)
    order = np.argsort(colors, kind="mergesort")
    cell = colors[order]
    twin = np.arange(k)
    for v in range(k):
        for u in range(v):
            if colors[u] != colors[v]:
                continue
            if rows[u] == rows[v] or (rows[u] | (1 << u)) == (rows[v] | (1 << v)):
                twin[v] = twin[u]
                break
    total = k * (k - 1) // 2
    best = -1
    perm = np.zeros(k, dtype=np.int64)
    prefix = np.zeros(k + 1, dtype=np.int64)
    cand = np.zeros(k, dtype=np.int64)  # next candidate index per depth
    used = 0
    depth = 0
    cand[0] = 0
    while depth >= 0:
        if depth == k:
            if prefix[k] > best:
                best = prefix[k]
            depth -= 1
            used &= ~(1 << perm[depth])
            continue
        placed = False
        c = cand[depth]
        while c < k:
            v = c
            c += 1
            if (used >> v) & 1 or colors[v] != cell[depth]:
                continue
            skip = False
            for w in range(v):
                if twin[w] == twin[v] and not (used >> w) & 1:
                    skip = True
                    break
            if skip:
                continue
            code = prefix[depth]
            for i in range(depth):
                code = (code << 1) | ((rows[perm[i]] >> v) & 1)
            nbits = depth * (depth + 1) // 2
            if best >= 0 and code < (best >> (total - nbits)):
                continue
            cand[depth] = c
            perm[depth] = v
            prefix[depth + 1] = code
            used |= 1 << v
            depth += 1
            if depth < k:
                cand[depth] = 0
            placed = True
            break
        if not placed:
            depth -= 1
            if depth >= 0:
                used &= ~(1 << perm[depth])
    return best


_canon_jit = optional_njit(cache=True)(_canon_loop)


def canonical_code_numba(rows) -> int:
    arr = np.ascontiguousarray(rows, dtype=np.int64)
    if arr.shape[0] > CANON_KERNEL_MAX:
        raise ValueError(f"compiled canonical kernel supports at most {CANON_KERNEL_MAX} vertices")
    return int(_canon_jit(arr))


def canonical_code_python(rows) -> int:
    """Same search as the compiled kernel on Python ints (no size limit)."""
    rows = [int(r) for r in rows]
    k = len(rows)
    if k <= 1:
        return 0
    colors = [bin(r).count("1") for r in rows]
    ncol = len(set(colors))
    while True:
        keys = []
        for v in range(k):
            acc = 0
            x, u = rows[v], 0
            while x:
                if x & 1:
                    c = colors[u]
                    acc += (c + 1) * (c + 1) * 1000003 + c * 7919
                x >>= 1
                u += 1
            keys.append(colors[v] * (1 << 40) + acc)
        rank = {key: i for i, key in enumerate(sorted(set(keys)))}
        colors = [rank[key] for key in keys]
        if len(rank) == ncol:
            break
        ncol = len(rank)
    cell = sorted(colors)
    twin = list(range(k))
    for v in range(k):
        for u in range(v):
            if colors[u] == colors[v] and (
                rows[u] == rows[v] or rows[u] | 1 << u == rows[v] | 1 << v
            ):
                twin[v] = twin[u]
                break
    total = k * (k - 1) // 2
    best = -1
    perm = [0] * k

    def search(depth: int, used: int, code: int):
        nonlocal best
        if depth == k:
            if code > best:
                best = code
            return
        nbits = depth * (depth + 1) // 2
        for v in range(k):
            if used >> v & 1 or colors[v] != cell[depth]:
                continue
            if any(twin[w] == twin[v] and not used >> w & 1 for w in range(v)):
                continue
            nxt = code
            for i in range(depth):
                nxt = nxt << 1 | (rows[perm[i]] >> v & 1)
            if best >= 0 and nxt < best >> (total - nbits):
                continue
            perm[depth] = v
            search(depth + 1, used | 1 << v, nxt)

    search(0, 0, 0)
    return best


if USE_NUMBA:
    tree_poly_batch = tree_poly_batch_numba
    aberth_batch = aberth_batch_numba

    def canonical_code(rows) -> int:
        if len(rows) <= CANON_KERNEL_MAX:
            return canonical_code_numba(rows)
        return canonical_code_python(rows)
else:
    tree_poly_batch = tree_poly_batch_numpy
    aberth_batch = aberth_batch_numpy
    canonical_code = canonical_code_python
