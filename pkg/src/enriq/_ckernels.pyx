# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (64-bit integer arithmetic).

Same call signatures and results as ``_pykernels``; the caller in
``enriq.kernels`` is responsible for keeping every intermediate below 2**62.
"""

from libc.math cimport sqrt

ctypedef long long i64

cdef enum:
    MAXDIM = 32

BACKEND = "cython"


cdef inline i64 isqrt64(i64 x) nogil:
    if x <= 0:
        return 0
    cdef i64 r = <i64>sqrt(<double>x)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


cdef inline i64 fdiv(i64 a, i64 b) nogil:
    # floor division, b > 0
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef inline i64 pmod2(i64 x) nogil:
    return x & 1


cdef struct FPState:
    int k
    int exact
    int has_outer
    i64 outer_lo
    i64 outer_hi
    i64 limit
    i64 count
    i64 w[MAXDIM]
    i64 B[MAXDIM * MAXDIM]
    int par[MAXDIM]
    i64 v[MAXDIM]


cdef int _emit(FPState* st, list out) except -1:
    out.append(tuple([st.v[j] for j in range(st.k)]))
    st.count += 1
    if st.limit > 0 and st.count >= st.limit:
        return 1
    return 0


cdef int _fp_rec(FPState* st, int i, i64 R, list out) except -1:
    cdef int k = st.k
    cdef i64 d = st.B[i * k + i]
    cdef i64 c = 0
    cdef int j
    for j in range(i + 1, k):
        c += st.B[i * k + j] * st.v[j]
    cdef int clamp = (i == k - 1) and st.has_outer
    cdef i64 q, y, num, x, s, lo, hi, step, yy, rest
    cdef int t
    if i == 0 and st.exact:
        if R % st.w[0] != 0:
            return 0
        q = R / st.w[0]
        y = isqrt64(q)
        if y * y != q:
            return 0
        for t in range(2):
            if t == 0:
                yy = -y
            else:
                if y == 0:
                    break
                yy = y
            num = yy - c
            if num % d != 0:
                continue
            x = num / d
            if st.par[0] >= 0 and pmod2(x - st.par[0]) != 0:
                continue
            if clamp and (x < st.outer_lo or x > st.outer_hi):
                continue
            st.v[0] = x
            if _emit(st, out):
                return 1
        st.v[0] = 0
        return 0
    s = isqrt64(R / st.w[i])
    lo = -fdiv(s + c, d)
    hi = fdiv(s - c, d)
    if clamp:
        if st.outer_lo > lo:
            lo = st.outer_lo
        if st.outer_hi < hi:
            hi = st.outer_hi
    step = 1
    if st.par[i] >= 0:
        if pmod2(lo - st.par[i]) != 0:
            lo += 1
        step = 2
    x = lo
    while x <= hi:
        y = d * x + c
        rest = R - st.w[i] * y * y
        st.v[i] = x
        if i == 0:
            if (not st.exact) or rest == 0:
                if _emit(st, out):
                    return 1
        elif _fp_rec(st, i - 1, rest, out):
            return 1
        x += step
    st.v[i] = 0
    return 0


def fp_enumerate(w, B, budget, exact, parity=None, outer=None, limit=0):
    cdef FPState st
    cdef int k = len(w)
    cdef int i, j
    if k > MAXDIM:
        raise ValueError("dimension too large for compiled kernel")
    out = []
    if k == 0:
        if budget == 0 or not exact:
            out.append(())
        return out
    st.k = k
    st.exact = 1 if exact else 0
    st.limit = limit
    st.count = 0
    st.has_outer = 0 if outer is None else 1
    if outer is not None:
        st.outer_lo = outer[0]
        st.outer_hi = outer[1]
    for i in range(k):
        st.w[i] = w[i]
        st.par[i] = -1 if parity is None else parity[i]
        st.v[i] = 0
        for j in range(k):
            st.B[i * k + j] = B[i][j]
    _fp_rec(&st, k - 1, budget, out)
    return out


cdef struct BoxState:
    int k
    i64 target
    i64 limit
    i64 count
    i64 G[MAXDIM * MAXDIM]
    i64 bounds[MAXDIM]
    int par[MAXDIM]
    i64 L[MAXDIM]
    i64 v[MAXDIM]


cdef int _box_rec(BoxState* st, int i, i64 q, list out) except -1:
    cdef int k = st.k
    cdef i64 b = st.bounds[i]
    cdef i64 lo = -b
    cdef i64 step = 1
    cdef i64 x, q2
    cdef int j
    cdef i64 gii = st.G[i * k + i]
    cdef i64 li = st.L[i]
    if st.par[i] >= 0:
        if pmod2(lo - st.par[i]) != 0:
            lo += 1
        step = 2
    x = lo
    if i == k - 1:
        while x <= b:
            q2 = q + gii * x * x + 2 * x * li
            if q2 == st.target:
                st.v[i] = x
                out.append(tuple([st.v[j] for j in range(k)]))
                st.count += 1
                if st.limit > 0 and st.count >= st.limit:
                    return 1
            x += step
        st.v[i] = 0
        return 0
    while x <= b:
        q2 = q + gii * x * x + 2 * x * li
        st.v[i] = x
        for j in range(i + 1, k):
            st.L[j] += st.G[j * k + i] * x
        if _box_rec(st, i + 1, q2, out):
            return 1
        for j in range(i + 1, k):
            st.L[j] -= st.G[j * k + i] * x
        x += step
    st.v[i] = 0
    return 0


def box_enumerate(G, target, bounds, parity=None, limit=0):
    cdef BoxState st
    cdef int k = len(G)
    cdef int i, j
    if k > MAXDIM:
        raise ValueError("dimension too large for compiled kernel")
    if k == 0:
        return [()] if target == 0 else []
    out = []
    st.k = k
    st.target = target
    st.limit = limit
    st.count = 0
    for i in range(k):
        st.bounds[i] = bounds[i]
        st.par[i] = -1 if parity is None else parity[i]
        st.L[i] = 0
        st.v[i] = 0
        for j in range(k):
            st.G[i * k + j] = G[i][j]
    _box_rec(&st, 0, 0, out)
    return out


cdef struct ScanState:
    int n
    i64 bound
    i64 cap
    i64 checked
    i64 bad_nonempty
    i64 few_zero_empty_bad
    i64 n_claim_i
    i64 n_claim_ii
    i64 n_witness_fail
    i64 a[MAXDIM]


cdef int _scan_leaf(ScanState* st, i64 sq, i64 mx, int nnz, list ci, list cii, list wf) except -1:
    cdef int zeros = st.n - nnz
    cdef int t
    cdef int bad_ii = 0
    st.checked += 1
    if 4 * mx < sq:
        if zeros < 3:
            st.few_zero_empty_bad += 1
        return 0
    st.bad_nonempty += 1
    if nnz > 5:
        st.n_claim_i += 1
        if len(ci) < st.cap:
            ci.append(tuple([st.a[t] for t in range(st.n)]))
    for t in range(st.n):
        if 4 * st.a[t] >= sq and st.a[t] < 1:
            bad_ii = 1
    if bad_ii:
        st.n_claim_ii += 1
        if len(cii) < st.cap:
            cii.append(tuple([st.a[t] for t in range(st.n)]))
    if zeros < 3:
        st.n_witness_fail += 1
        if len(wf) < st.cap:
            wf.append(tuple([st.a[t] for t in range(st.n)]))
    return 0


cdef int _scan_rec(ScanState* st, int i, i64 psum, i64 sq, i64 mx, int nnz,
                   list ci, list cii, list wf) except -1:
    cdef i64 x, p, sq2, mx2
    cdef int left
    if i == st.n - 1:
        x = -psum
        if x >= -st.bound and x <= st.bound:
            st.a[i] = x
            sq2 = sq + x * x
            if sq2 != 0:
                mx2 = mx if mx > x else x
                _scan_leaf(st, sq2, mx2, nnz + (1 if x != 0 else 0), ci, cii, wf)
        return 0
    left = st.n - 1 - i
    x = -st.bound
    while x <= st.bound:
        p = psum + x
        if p <= st.bound * left and p >= -st.bound * left:
            st.a[i] = x
            mx2 = mx if mx > x else x
            _scan_rec(st, i + 1, p, sq + x * x, mx2, nnz + (1 if x != 0 else 0), ci, cii, wf)
        x += 1
    st.a[i] = 0
    return 0


def zero_sum_scan(n, bound, first_values=None, cap=100):
    cdef ScanState st
    cdef i64 x
    if n > MAXDIM:
        raise ValueError("dimension too large for compiled kernel")
    st.n = n
    st.bound = bound
    st.cap = cap
    st.checked = 0
    st.bad_nonempty = 0
    st.few_zero_empty_bad = 0
    st.n_claim_i = 0
    st.n_claim_ii = 0
    st.n_witness_fail = 0
    ci, cii, wf = [], [], []
    firsts = list(first_values) if first_values is not None else list(range(-bound, bound + 1))
    if n > 1:
        for x in firsts:
            st.a[0] = x
            _scan_rec(&st, 1, x, x * x, x, 1 if x != 0 else 0, ci, cii, wf)
    return {
        "checked": st.checked,
        "bad_nonempty": st.bad_nonempty,
        "few_zero_empty_bad": st.few_zero_empty_bad,
        "claim_i": ci,
        "claim_ii": cii,
        "witness_fail": wf,
        "n_claim_i": st.n_claim_i,
        "n_claim_ii": st.n_claim_ii,
        "n_witness_fail": st.n_witness_fail,
    }
