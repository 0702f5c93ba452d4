"""Pure-Python implementations of the enumeration kernels.

These mirror ``_ckernels.pyx`` call for call and are used when the compiled
module is unavailable, when ``ENRIQ_PURE_PYTHON`` is set, or when inputs are
too large for 64-bit arithmetic.
"""

from math import isqrt

BACKEND = "python"


def _start(lo, p):
    # smallest x >= lo with x = p (mod 2)
    return lo if (lo - p) % 2 == 0 else lo + 1


def fp_enumerate(w, B, budget, exact, parity=None, outer=None, limit=0):
    """Enumerate integer v with sum_i y_i^2 * w_i (= or <=) budget.

    Here y_i = sum_{j>=i} B[i][j] v_j with B upper triangular and positive
    diagonal; coordinates are fixed from the last index down to the first.
    ``parity[i]`` (0/1, or -1 for free) restricts v_i modulo 2, ``outer``
    clamps the range of the last coordinate and ``limit`` stops early.
    """
    k = len(w)
    out = []
    v = [0] * k
    par = parity if parity is not None else [-1] * k

    def emit():
        out.append(tuple(v))
        return bool(limit) and len(out) >= limit

    def rec(i, R):
        d = B[i][i]
        row = B[i]
        c = 0
        for j in range(i + 1, k):
            c += row[j] * v[j]
        lo_c = hi_c = None
        if i == k - 1 and outer is not None:
            lo_c, hi_c = outer
        if i == 0 and exact:
            q, r = divmod(R, w[0])
            if r:
                return False
            y = isqrt(q)
            if y * y != q:
                return False
            for yy in sorted({-y, y}):
                num = yy - c
                if num % d:
                    continue
                x = num // d
                if par[0] >= 0 and (x - par[0]) % 2:
                    continue
                if lo_c is not None and not lo_c <= x <= hi_c:
                    continue
                v[0] = x
                if emit():
                    return True
            v[0] = 0
            return False
        s = isqrt(R // w[i])
        lo = -((s + c) // d)
        hi = (s - c) // d
        if lo_c is not None:
            lo = max(lo, lo_c)
            hi = min(hi, hi_c)
        step = 1
        if par[i] >= 0:
            lo = _start(lo, par[i])
            step = 2
        wi = w[i]
        for x in range(lo, hi + 1, step):
            y = d * x + c
            rest = R - wi * y * y
            v[i] = x
            if i == 0:
                if not exact or rest == 0:
                    if emit():
                        return True
            elif rec(i - 1, rest):
                return True
        v[i] = 0
        return False

    if k:
        rec(k - 1, budget)
    elif budget == 0 or not exact:
        out.append(())
    return out


def box_enumerate(G, target, bounds, parity=None, limit=0):
    """All v with |v_i| <= bounds[i] and v^T G v == target (G any symmetric)."""
    k = len(G)
    out = []
    if k == 0:
        return [()] if target == 0 else []
    v = [0] * k
    L = [0] * k
    par = parity if parity is not None else [-1] * k

    def rec(i, q):
        b = bounds[i]
        lo, step = -b, 1
        if par[i] >= 0:
            lo, step = _start(-b, par[i]), 2
        gii = G[i][i]
        li = L[i]
        last = i == k - 1
        gcol = [G[j][i] for j in range(k)]
        for x in range(lo, b + 1, step):
            q2 = q + gii * x * x + 2 * x * li
            v[i] = x
            if last:
                if q2 == target:
                    out.append(tuple(v))
                    if limit and len(out) >= limit:
                        return True
                continue
            for j in range(i + 1, k):
                L[j] += gcol[j] * x
            stop = rec(i + 1, q2)
            for j in range(i + 1, k):
                L[j] -= gcol[j] * x
            if stop:
                return True
        v[i] = 0
        return False

    rec(0, 0)
    return out


def zero_sum_scan(n, bound, first_values=None, cap=100):
    """Scan nonzero a in [-bound, bound]^n with sum(a) == 0.

    Returns a dict of counters plus capped lists of offending vectors; see
    :func:`enriq.stability.stability_scan` for the meaning of each entry.
    """
    stats = {
        "checked": 0,
        "bad_nonempty": 0,
        "few_zero_empty_bad": 0,
        "claim_i": [],
        "claim_ii": [],
        "witness_fail": [],
        "n_claim_i": 0,
        "n_claim_ii": 0,
        "n_witness_fail": 0,
    }
    a = [0] * n
    vals = range(-bound, bound + 1)
    firsts = list(first_values) if first_values is not None else list(vals)

    def leaf(sq, mx, nnz):
        stats["checked"] += 1
        zeros = n - nnz
        if 4 * mx < sq:
            if zeros < 3:
                stats["few_zero_empty_bad"] += 1
            return
        stats["bad_nonempty"] += 1
        vec = tuple(a)
        if nnz > 5:
            stats["n_claim_i"] += 1
            if len(stats["claim_i"]) < cap:
                stats["claim_i"].append(vec)
        if any(4 * x >= sq and x < 1 for x in a):
            stats["n_claim_ii"] += 1
            if len(stats["claim_ii"]) < cap:
                stats["claim_ii"].append(vec)
        if zeros < 3:
            stats["n_witness_fail"] += 1
            if len(stats["witness_fail"]) < cap:
                stats["witness_fail"].append(vec)

    def rec(i, psum, sq, mx, nnz):
        if i == n - 1:
            x = -psum
            if -bound <= x <= bound:
                a[i] = x
                sq2 = sq + x * x
                if sq2:
                    leaf(sq2, max(mx, x), nnz + (x != 0))
            return
        left = n - 1 - i
        for x in vals:
            p = psum + x
            if abs(p) > bound * left:
                continue
            a[i] = x
            rec(i + 1, p, sq + x * x, max(mx, x), nnz + (x != 0))
        a[i] = 0

    for x in firsts:
        if n == 1:
            break
        a[0] = x
        rec(1, x, x * x, x, int(x != 0))
    return stats
