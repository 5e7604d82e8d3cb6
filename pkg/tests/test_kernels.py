import random

import pytest

from crosscut import _pykernels, kernels


def test_fallback_always_available():
    assert "python" in kernels.BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled kernels not built")
def test_backends_agree():
    c = kernels.BACKENDS["cython"]
    rng = random.Random(3)
    for _ in range(300):
        size = rng.randint(0, 7)
        nrel = rng.randint(0, 3)
        s_rows = [[rng.randint(0, 2) for _ in range(size)] for _ in range(nrel)]
        t_rows = [[rng.randint(0, 2) for _ in range(size)] for _ in range(nrel)]
        assert c.meet_labels(s_rows, size) == _pykernels.meet_labels(s_rows, size)
        for row in s_rows:
            assert c.normalize(row) == _pykernels.normalize(row)
        order = list(range(size))
        rng.shuffle(order)
        cand_start, cand_flat = [0], []
        for _u in order:
            cands = sorted(rng.sample(range(size), rng.randint(0, size)))
            cand_flat.extend(cands)
            cand_start.append(len(cand_flat))
        args = (s_rows, t_rows, order, cand_start, cand_flat, size)
        assert c.backtrack(*args) == _pykernels.backtrack(*args)


def test_backtrack_finds_swap():
    s = [[0, 0, 1]]
    t = [[0, 1, 1]]
    m = _pykernels.backtrack(s, t, [0, 1, 2], [0, 3, 6, 9], [0, 1, 2] * 3, 3)
    assert m == [1, 2, 0]


def test_backtrack_empty():
    assert _pykernels.backtrack([], [], [], [0], [], 0) == []
