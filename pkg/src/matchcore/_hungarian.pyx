# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: maximum-weight bipartite matching with duals.

Mirror of `_hungarian_py.solve_max_weight_bipartite` in 64-bit C
arithmetic; scan orders and tie handling are identical, so both kernels
return the same result on the same input. Callers must keep weights
below 2**58 so slack arithmetic cannot overflow (the dispatcher in
`bipartite` enforces this).
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


def solve_max_weight_bipartite(int nl, int nr, heads, rights, weights):
    """CSR-form solve; same contract as the pure-Python kernel."""
    cdef Py_ssize_t m = len(rights)
    cdef long long *c_heads = <long long *> malloc((nl + 1) * sizeof(long long))
    cdef long long *c_rights = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef long long *c_weights = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef long long *u = <long long *> malloc(max(nl, 1) * sizeof(long long))
    cdef long long *v = <long long *> malloc(max(nr, 1) * sizeof(long long))
    cdef long long *match_l = <long long *> malloc(max(nl, 1) * sizeof(long long))
    cdef long long *match_r = <long long *> malloc(max(nr, 1) * sizeof(long long))
    cdef long long *slack = <long long *> malloc(max(nr, 1) * sizeof(long long))
    cdef long long *way = <long long *> malloc(max(nr, 1) * sizeof(long long))
    cdef char *in_tree_r = <char *> malloc(max(nr, 1))
    cdef long long *tree_left = <long long *> malloc(max(nl, 1) * sizeof(long long))
    cdef long long *tq = <long long *> malloc(max(nr, 1) * sizeof(long long))

    if (c_heads is NULL or c_rights is NULL or c_weights is NULL or u is NULL
            or v is NULL or match_l is NULL or match_r is NULL or slack is NULL
            or way is NULL or in_tree_r is NULL or tree_left is NULL or tq is NULL):
        free(c_heads); free(c_rights); free(c_weights); free(u); free(v)
        free(match_l); free(match_r); free(slack); free(way)
        free(in_tree_r); free(tree_left); free(tq)
        raise MemoryError()

    cdef Py_ssize_t idx
    cdef long long infinity, maxw, mx, r, us, ui2, delta, sj
    cdef long long i, j, s, i2, j2, t, pj, tqh, tqn, ntree
    cdef long long null_min, null_arg, end_right, drop_left

    try:
        for idx in range(nl + 1):
            c_heads[idx] = heads[idx]
        maxw = 0
        for idx in range(m):
            c_rights[idx] = rights[idx]
            c_weights[idx] = weights[idx]
            if c_weights[idx] > maxw:
                maxw = c_weights[idx]

        for i in range(nl):
            mx = 0
            for t in range(c_heads[i], c_heads[i + 1]):
                if c_weights[t] > mx:
                    mx = c_weights[t]
            u[i] = mx
            match_l[i] = -1
        for j in range(nr):
            v[j] = 0
            match_r[j] = -1
        infinity = 4 * maxw + 1

        if m > 0:
            for s in range(nl):
                if u[s] == 0:
                    continue
                for j in range(nr):
                    slack[j] = infinity
                    way[j] = -1
                memset(in_tree_r, 0, nr)
                tree_left[0] = s
                ntree = 1
                null_min = u[s]
                null_arg = s
                tqh = 0
                tqn = 0
                us = u[s]
                for t in range(c_heads[s], c_heads[s + 1]):
                    j = c_rights[t]
                    r = us + v[j] - c_weights[t]
                    if r < slack[j]:
                        slack[j] = r
                        way[j] = s
                        if r == 0:
                            tq[tqn] = j
                            tqn += 1

                end_right = -1
                drop_left = -1
                while True:
                    while tqh < tqn:
                        j = tq[tqh]
                        tqh += 1
                        if in_tree_r[j] or slack[j] != 0:
                            continue
                        if match_r[j] == -1:
                            end_right = j
                            break
                        in_tree_r[j] = 1
                        i2 = match_r[j]
                        tree_left[ntree] = i2
                        ntree += 1
                        ui2 = u[i2]
                        if ui2 < null_min:
                            null_min = ui2
                            null_arg = i2
                        for t in range(c_heads[i2], c_heads[i2 + 1]):
                            j2 = c_rights[t]
                            if not in_tree_r[j2]:
                                r = ui2 + v[j2] - c_weights[t]
                                if r < slack[j2]:
                                    slack[j2] = r
                                    way[j2] = i2
                                    if r == 0:
                                        tq[tqn] = j2
                                        tqn += 1
                    if end_right >= 0:
                        break
                    delta = null_min
                    for j in range(nr):
                        if not in_tree_r[j] and slack[j] < delta:
                            delta = slack[j]
                    if delta > 0:
                        for t in range(ntree):
                            u[tree_left[t]] -= delta
                        null_min -= delta
                        for j in range(nr):
                            if in_tree_r[j]:
                                v[j] += delta
                            else:
                                sj = slack[j] - delta
                                slack[j] = sj
                                if sj == 0 and way[j] >= 0:
                                    tq[tqn] = j
                                    tqn += 1
                    if null_min == 0 and tqh == tqn:
                        drop_left = null_arg
                        break

                if end_right >= 0:
                    j = end_right
                elif drop_left != s:
                    j = match_l[drop_left]
                    match_l[drop_left] = -1
                else:
                    continue
                while True:
                    i = way[j]
                    pj = match_l[i]
                    match_l[i] = j
                    match_r[j] = i
                    if i == s:
                        break
                    j = pj

        out_match_l = [match_l[i] for i in range(nl)]
        out_match_r = [match_r[j] for j in range(nr)]
        out_u = [u[i] for i in range(nl)]
        out_v = [v[j] for j in range(nr)]
        return out_match_l, out_match_r, out_u, out_v
    finally:
        free(c_heads)
        free(c_rights)
        free(c_weights)
        free(u)
        free(v)
        free(match_l)
        free(match_r)
        free(slack)
        free(way)
        free(in_tree_r)
        free(tree_left)
        free(tq)
