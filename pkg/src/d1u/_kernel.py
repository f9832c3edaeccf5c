"""Resumable depth-first kernel for the d1u backtracking search.

Group elements are integer codes; ``sub[u, v]`` is the code of u - v and
``neg[u]`` that of -u. Every pair y < x contributes f(x) - f(y) to D_{x-y}
and f(y) - f(x) to D_{d-(x-y)}; both are recorded in the occupancy row of the
smaller shift (as the value or its negative), so every nonzero shift is
covered by rows 1..d//2. For a = d/2 both values land in the same row.

All state lives in the arrays passed in, so the kernel can stop after
``max_nodes`` candidate placements and resume on the next call.
"""

from __future__ import annotations

FOUND, EXHAUSTED, LIMIT = 1, 0, 2


def _search(d, sub, neg, cand, ncand, start, f, nxt, base, stack_a, stack_b, occ, state, max_nodes):
    # state = [depth, stack top, nodes]
    x = state[0]
    top = state[1]
    nodes = 0
    while True:
        if x == d:
            state[0] = x
            state[1] = top
            state[2] += nodes
            return FOUND
        if x < start:
            state[0] = x
            state[1] = top
            state[2] += nodes
            return EXHAUSTED
        if nodes >= max_nodes:
            state[0] = x
            state[1] = top
            state[2] += nodes
            return LIMIT
        if nxt[x] >= ncand[x]:
            x -= 1
            if x >= start:
                while top > base[x]:
                    top -= 1
                    occ[stack_a[top], stack_b[top]] = False
            continue
        v = cand[x, nxt[x]]
        nxt[x] += 1
        nodes += 1
        base[x] = top
        ok = True
        for y in range(x):
            a = x - y
            b = sub[v, f[y]]
            if a > d - a:
                a = d - a
                b = neg[b]
            if occ[a, b]:
                ok = False
                break
            occ[a, b] = True
            stack_a[top] = a
            stack_b[top] = b
            top += 1
            if 2 * a == d:
                b = neg[b]
                if occ[a, b]:
                    ok = False
                    break
                occ[a, b] = True
                stack_a[top] = a
                stack_b[top] = b
                top += 1
        if ok:
            f[x] = v
            x += 1
            if x < d:
                nxt[x] = 0
        else:
            while top > base[x]:
                top -= 1
                occ[stack_a[top], stack_b[top]] = False


try:
    import numba

    search_kernel = numba.njit(cache=True, nogil=True)(_search)
    JIT = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    search_kernel = _search
    JIT = False
