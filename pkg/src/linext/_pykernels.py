"""Pure-Python versions of the counting kernels in ``_ckernels.pyx``.

Same signatures and results; arbitrary precision and no size caps beyond
what the caller enforces.
"""

import math

MAX_N = 64
MAX_M = 10**9


def linext_count(n, pred):
    """Number of linear extensions; ``pred[i]`` is a bitmask of elements below ``i``."""
    layer = {0: 1}
    for _ in range(n):
        nxt = {}
        for s, c in layer.items():
            for i in range(n):
                bit = 1 << i
                if not s & bit and pred[i] & s == pred[i]:
                    t = s | bit
                    nxt[t] = nxt.get(t, 0) + c
        layer = nxt
    return sum(layer.values())


def scan_orientations(n, eu, ev, with_counts=False, top_bits=0, top_value=0):
    """Acyclic edge-direction masks in increasing order, optionally with e(P).

    Bit ``k`` of a mask is 0 when edge ``k`` is directed ``eu[k] -> ev[k]``.
    ``top_bits``/``top_value`` pin the highest edges to a fixed prefix (a shard).
    """
    m = len(eu)
    if not 0 <= top_bits <= m:
        raise ValueError("top_bits out of range")
    masks = []
    counts = [] if with_counts else None

    def leaf(mask):
        masks.append(mask)
        if with_counts:
            pred = [0] * n
            for k in range(m):
                if mask >> k & 1:
                    pred[eu[k]] |= 1 << ev[k]
                else:
                    pred[ev[k]] |= 1 << eu[k]
            counts.append(linext_count(n, pred))

    def dfs(depth, mask, reach):
        if depth == m:
            leaf(mask)
            return
        k = m - 1 - depth
        for bit in (0, 1):
            if depth < top_bits and (top_value >> (top_bits - 1 - depth)) & 1 != bit:
                continue
            a, b = (eu[k], ev[k]) if bit == 0 else (ev[k], eu[k])
            rb = reach[b]
            if rb >> a & 1:
                continue
            nxt = [r | rb if r >> a & 1 else r for r in reach]
            dfs(depth + 1, mask | (bit << k), nxt)

    dfs(0, 0, [1 << x for x in range(n)])
    return masks, counts


def acyclic_count(n, adj):
    """Acyclic orientations by inclusion-exclusion over the set of sources."""
    size = 1 << n
    indep = bytearray(size)
    indep[0] = 1
    for s in range(1, size):
        low = s & -s
        i = low.bit_length() - 1
        indep[s] = indep[s ^ low] and not adj[i] & s
    cnt = [0] * size
    cnt[0] = 1
    for s in range(1, size):
        total = 0
        sub = s
        while sub:
            if indep[sub]:
                if bin(sub).count("1") & 1:
                    total += cnt[s ^ sub]
                else:
                    total -= cnt[s ^ sub]
            sub = (sub - 1) & s
        cnt[s] = total
    return cnt[size - 1]


def frank_wolfe_entropy(S, tol, max_iter):
    import numpy as np

    S = np.asarray(S, dtype=float)
    n = S.shape[1]
    a = np.full(n, 1.0 / n)
    ln2n = math.log(2) * n
    gap = math.inf
    t = 0
    for t in range(1, max_iter + 1):
        w = 1.0 / np.maximum(a, 1e-12)
        s = S[int(np.argmax(S @ w))]
        gap = float(w @ (s - a)) / ln2n
        if gap <= tol:
            break
        a += (2.0 / (t + 2)) * (s - a)
    return a.tolist(), gap, t
