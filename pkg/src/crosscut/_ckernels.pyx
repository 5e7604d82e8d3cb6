# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels.  Interface-identical to ``_pykernels``."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


def meet_labels(rows, Py_ssize_t size):
    """Common refinement of several label rows, normalized to first occurrence."""
    if not rows:
        return [0] * size
    cdef dict seen = {}
    out = [0] * size
    cdef Py_ssize_t u
    for u in range(size):
        key = tuple([row[u] for row in rows])
        lab = seen.get(key)
        if lab is None:
            lab = len(seen)
            seen[key] = lab
        out[u] = lab
    return out


def normalize(row):
    cdef dict seen = {}
    return [seen.setdefault(x, len(seen)) for x in row]


def backtrack(s_rows, t_rows, order, cand_start, cand_flat, Py_ssize_t size):
    """Depth-first search for a relation-preserving bijection; see ``_pykernels``."""
    if size == 0:
        return []
    cdef Py_ssize_t nrel = len(s_rows)
    cdef Py_ssize_t ncand = len(cand_flat)
    cdef int *s = <int *> PyMem_Malloc(max(1, nrel * size) * sizeof(int))
    cdef int *t = <int *> PyMem_Malloc(max(1, nrel * size) * sizeof(int))
    cdef int *ordr = <int *> PyMem_Malloc(size * sizeof(int))
    cdef int *cst = <int *> PyMem_Malloc((size + 1) * sizeof(int))
    cdef int *cfl = <int *> PyMem_Malloc(max(1, ncand) * sizeof(int))
    cdef int *mapping = <int *> PyMem_Malloc(size * sizeof(int))
    cdef char *used = <char *> PyMem_Malloc(size * sizeof(char))
    cdef int *cursor = <int *> PyMem_Malloc((size + 1) * sizeof(int))
    cdef Py_ssize_t r, i, q, pos, end
    cdef int u, v, u2, v2, ok, placed, found = 0
    try:
        for r in range(nrel):
            sr = s_rows[r]
            tr = t_rows[r]
            for i in range(size):
                s[r * size + i] = sr[i]
                t[r * size + i] = tr[i]
        for i in range(size):
            ordr[i] = order[i]
            mapping[i] = -1
            used[i] = 0
        for i in range(size + 1):
            cst[i] = cand_start[i]
        for i in range(ncand):
            cfl[i] = cand_flat[i]

        pos = 0
        cursor[0] = cst[0]
        while pos >= 0:
            u = ordr[pos]
            if mapping[u] >= 0:
                used[mapping[u]] = 0
                mapping[u] = -1
            end = cst[pos + 1]
            placed = 0
            while cursor[pos] < end:
                v = cfl[cursor[pos]]
                cursor[pos] += 1
                if used[v]:
                    continue
                ok = 1
                for q in range(pos):
                    u2 = ordr[q]
                    v2 = mapping[u2]
                    for r in range(nrel):
                        if (s[r * size + u] == s[r * size + u2]) != (t[r * size + v] == t[r * size + v2]):
                            ok = 0
                            break
                    if not ok:
                        break
                if ok:
                    mapping[u] = v
                    used[v] = 1
                    placed = 1
                    break
            if placed:
                pos += 1
                if pos == size:
                    found = 1
                    break
                cursor[pos] = cst[pos]
            else:
                pos -= 1
        if not found:
            return None
        return [mapping[i] for i in range(size)]
    finally:
        PyMem_Free(s)
        PyMem_Free(t)
        PyMem_Free(ordr)
        PyMem_Free(cst)
        PyMem_Free(cfl)
        PyMem_Free(mapping)
        PyMem_Free(used)
        PyMem_Free(cursor)
