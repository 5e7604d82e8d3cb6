"""Pure-Python hot kernels.  Interface-identical to the compiled ``_ckernels``."""


def meet_labels(rows, size):
    """Common refinement of several label rows, normalized to first occurrence."""
    if not rows:
        return [0] * size
    seen = {}
    out = [0] * size
    for u in range(size):
        key = tuple(row[u] for row in rows)
        lab = seen.get(key)
        if lab is None:
            lab = seen[key] = len(seen)
        out[u] = lab
    return out


def normalize(row):
    seen = {}
    return [seen.setdefault(x, len(seen)) for x in row]


def backtrack(s_rows, t_rows, order, cand_start, cand_flat, size):
    """Depth-first search for a relation-preserving bijection.

    ``order`` lists the source elements in assignment order; the candidates of
    ``order[p]`` are ``cand_flat[cand_start[p]:cand_start[p + 1]]``.  Returns
    ``mapping`` with ``mapping[u] = v`` for the first witness found, or None.
    """
    nrel = len(s_rows)
    mapping = [-1] * size
    used = [False] * size
    cursor = [0] * (size + 1)
    pos = 0
    if size == 0:
        return []
    cursor[0] = cand_start[0]
    while pos >= 0:
        u = order[pos]
        if mapping[u] >= 0:
            used[mapping[u]] = False
            mapping[u] = -1
        end = cand_start[pos + 1]
        placed = False
        while cursor[pos] < end:
            v = cand_flat[cursor[pos]]
            cursor[pos] += 1
            if used[v]:
                continue
            ok = True
            for q in range(pos):
                u2 = order[q]
                v2 = mapping[u2]
                for r in range(nrel):
                    sr = s_rows[r]
                    tr = t_rows[r]
                    if (sr[u] == sr[u2]) != (tr[v] == tr[v2]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                mapping[u] = v
                used[v] = True
                placed = True
                break
        if placed:
            pos += 1
            if pos == size:
                return mapping
            cursor[pos] = cand_start[pos]
        else:
            pos -= 1
    return None
