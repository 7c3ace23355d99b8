# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels.

Vertex sets are machine-word bitmasks, so every routine here is limited to
``n <= MAX_N`` vertices and orientation scans to ``m <= MAX_M`` edges.
Linear-extension counts are bounded by ``n!`` which fits in 64 bits for
``n <= 20``.
"""
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

MAX_N = 20
MAX_M = 63

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil


cdef uint64_t _linext(int n, const uint32_t* pred, uint64_t* dp) noexcept nogil:
    cdef uint32_t full = (1u << n) - 1
    cdef uint32_t s, bit
    cdef uint64_t here
    cdef int i
    memset(dp, 0, sizeof(uint64_t) * (<size_t>1 << n))
    dp[0] = 1
    s = 0
    while s < full:
        here = dp[s]
        if here:
            for i in range(n):
                bit = 1u << i
                if not (s & bit) and (pred[i] & s) == pred[i]:
                    dp[s | bit] += here
        s += 1
    return dp[full]


def linext_count(int n, pred):
    """Number of linear extensions; ``pred[i]`` is a bitmask of elements below ``i``."""
    if n < 0 or n > MAX_N:
        raise ValueError(f"kernel supports 0 <= n <= {MAX_N}, got {n}")
    cdef uint32_t p[32]
    cdef int i
    for i in range(n):
        p[i] = <uint32_t>pred[i]
    cdef uint64_t* dp = <uint64_t*>malloc(sizeof(uint64_t) * (<size_t>1 << n))
    if dp == NULL:
        raise MemoryError()
    cdef uint64_t out
    try:
        with nogil:
            out = _linext(n, p, dp)
    finally:
        free(dp)
    return int(out)


cdef class _Scan:
    cdef int n, m
    cdef uint32_t eu[64]
    cdef uint32_t ev[64]
    cdef uint32_t* reach      # (m + 1) * n reachability rows, one block per depth
    cdef uint64_t* dp
    cdef bint with_counts
    cdef list masks
    cdef list counts

    def __cinit__(self, int n, eu, ev, bint with_counts):
        cdef int k
        self.n = n
        self.m = len(eu)
        for k in range(self.m):
            self.eu[k] = eu[k]
            self.ev[k] = ev[k]
        self.reach = <uint32_t*>malloc(sizeof(uint32_t) * (self.m + 1) * (n if n > 0 else 1))
        self.dp = NULL
        if with_counts:
            self.dp = <uint64_t*>malloc(sizeof(uint64_t) * (<size_t>1 << n))
        if self.reach == NULL or (with_counts and self.dp == NULL):
            raise MemoryError()
        self.with_counts = with_counts
        self.masks = []
        self.counts = []

    def __dealloc__(self):
        free(self.reach)
        free(self.dp)

    cdef void _leaf(self, uint64_t mask):
        cdef uint32_t pred[32]
        cdef int k
        self.masks.append(mask)
        if not self.with_counts:
            return
        memset(pred, 0, sizeof(pred))
        for k in range(self.m):
            if (mask >> k) & 1:
                pred[self.eu[k]] |= 1u << self.ev[k]
            else:
                pred[self.ev[k]] |= 1u << self.eu[k]
        self.counts.append(int(_linext(self.n, pred, self.dp)))

    cdef bint _push(self, int depth, uint32_t a, uint32_t b):
        """Copy level ``depth`` to ``depth + 1`` adding arc a->b; False on a cycle."""
        cdef uint32_t* cur = self.reach + depth * self.n
        cdef uint32_t* nxt = cur + self.n
        cdef uint32_t abit = 1u << a
        cdef uint32_t rb = cur[b]
        cdef int x
        if rb & abit:
            return False
        for x in range(self.n):
            if cur[x] & abit:
                nxt[x] = cur[x] | rb
            else:
                nxt[x] = cur[x]
        return True

    cdef void _dfs(self, int depth, uint64_t mask, int top_bits, uint64_t top_value):
        # depth counts assigned edges; edge index decreases from m - 1
        cdef int k, bit
        if depth == self.m:
            self._leaf(mask)
            return
        k = self.m - 1 - depth
        for bit in range(2):
            if depth < top_bits and ((top_value >> (top_bits - 1 - depth)) & 1) != bit:
                continue
            if bit == 0:
                if self._push(depth, self.eu[k], self.ev[k]):
                    self._dfs(depth + 1, mask, top_bits, top_value)
            else:
                if self._push(depth, self.ev[k], self.eu[k]):
                    self._dfs(depth + 1, mask | ((<uint64_t>1) << k), top_bits, top_value)

    def run(self, int top_bits, uint64_t top_value):
        cdef int x
        for x in range(self.n):
            self.reach[x] = 1u << x
        self._dfs(0, 0, top_bits, top_value)
        return self.masks, (self.counts if self.with_counts else None)


def scan_orientations(int n, eu, ev, bint with_counts=False, int top_bits=0, top_value=0):
    """Acyclic edge-direction masks in increasing order, optionally with e(P).

    Bit ``k`` of a mask is 0 when edge ``k`` is directed ``eu[k] -> ev[k]``.
    ``top_bits``/``top_value`` pin the highest edges to a fixed prefix (a shard).
    """
    if n < 0 or n > MAX_N:
        raise ValueError(f"kernel supports 0 <= n <= {MAX_N}, got {n}")
    if len(eu) > MAX_M:
        raise ValueError(f"kernel supports at most {MAX_M} edges")
    if top_bits < 0 or top_bits > len(eu):
        raise ValueError("top_bits out of range")
    return _Scan(n, eu, ev, with_counts).run(top_bits, top_value)


def acyclic_count(int n, adj):
    """Acyclic orientations by inclusion-exclusion over the set of sources."""
    if n < 0 or n > 16:
        raise ValueError("acyclic_count kernel supports n <= 16")
    cdef uint32_t a[32]
    cdef int i
    for i in range(n):
        a[i] = <uint32_t>adj[i]
    cdef size_t size = <size_t>1 << n
    cdef int64_t* cnt = <int64_t*>malloc(sizeof(int64_t) * size)
    cdef char* indep = <char*>malloc(size)
    if cnt == NULL or indep == NULL:
        free(cnt)
        free(indep)
        raise MemoryError()
    cdef uint32_t s, sub, low
    cdef int64_t total
    with nogil:
        indep[0] = 1
        for s in range(1, size):
            low = s & (~s + 1)
            i = __builtin_ctz(s)
            indep[s] = indep[s ^ low] and not (a[i] & s)
        cnt[0] = 1
        for s in range(1, size):
            total = 0
            sub = s
            while sub:
                if indep[sub]:
                    if __builtin_popcount(sub) & 1:
                        total += cnt[s ^ sub]
                    else:
                        total -= cnt[s ^ sub]
                sub = (sub - 1) & s
            cnt[s] = total
    out = int(cnt[size - 1])
    free(cnt)
    free(indep)
    return out


def frank_wolfe_entropy(const unsigned char[:, ::1] S, double tol, long max_iter):
    """Frank-Wolfe on ``-(1/n) Σ log2 a_i`` over the hull of the rows of ``S``.

    Returns ``(a, gap, iterations)``; see ``linext.entropy.graph_entropy``.
    """
    cdef Py_ssize_t k = S.shape[0], n = S.shape[1]
    cdef Py_ssize_t i, r, best
    cdef long t = 0
    cdef double gap = 1e308, score, top, step, ln2n
    cdef double* a = <double*>malloc(sizeof(double) * n)
    cdef double* w = <double*>malloc(sizeof(double) * n)
    if a == NULL or w == NULL:
        free(a)
        free(w)
        raise MemoryError()
    try:
        ln2n = 0.6931471805599453 * n
        for i in range(n):
            a[i] = 1.0 / n
        with nogil:
            t = 1
            while t <= max_iter:
                for i in range(n):
                    w[i] = 1.0 / (a[i] if a[i] > 1e-12 else 1e-12)
                best = 0
                top = -1.0
                for r in range(k):
                    score = 0.0
                    for i in range(n):
                        if S[r, i]:
                            score += w[i]
                    if score > top:
                        top = score
                        best = r
                score = 0.0
                for i in range(n):
                    score += w[i] * (S[best, i] - a[i])
                gap = score / ln2n
                if gap <= tol:
                    break
                step = 2.0 / (t + 2)
                for i in range(n):
                    a[i] += step * (S[best, i] - a[i])
                t += 1
            if t > max_iter:
                t = max_iter
        return [a[i] for i in range(n)], gap, t
    finally:
        free(a)
        free(w)
