import os
import random
import subprocess
import sys

import pytest

from oracles import enumerate_max_sdr
from sdrkit import search
from sdrkit._search_py import max_rainbow as py_kernel

KERNELS = search.kernels()


def _random_problem(rng, nv, nb, per_block, p_edge):
    adj = [set() for _ in range(nv)]
    for u in range(nv):
        for v in range(u + 1, nv):
            if rng.random() < p_edge:
                adj[u].add(v)
                adj[v].add(u)
    blocks = []
    for _ in range(nb):
        pool = list(range(nv))
        rng.shuffle(pool)
        block = []
        for v in pool:
            if len(block) == per_block:
                break
            if not any(v in adj[u] for u in block):
                block.append(v)
        blocks.append(block)
    return blocks, [sorted(a) for a in adj]


def test_compiled_kernel_is_built():
    assert "cython" in KERNELS, "extension missing; run pip install -e . --no-build-isolation"


@pytest.mark.skipif("cython" not in KERNELS, reason="compiled kernel not built")
def test_kernels_agree_exactly():
    rng = random.Random(99)
    for _ in range(300):
        blocks, adj = _random_problem(rng, rng.randint(4, 14), rng.randint(1, 7),
                                      rng.randint(1, 4), rng.random() * 0.6)
        target = rng.choice([len(blocks), rng.randint(0, len(blocks))])
        assert KERNELS["cython"](blocks, adj, target, 10 ** 7) == py_kernel(blocks, adj, target, 10 ** 7)


@pytest.mark.parametrize("name", sorted(KERNELS))
def test_maximum_matches_enumerator(name):
    kernel = KERNELS[name]
    rng = random.Random(7)
    for _ in range(200):
        blocks, adj = _random_problem(rng, rng.randint(3, 12), rng.randint(1, 6),
                                      rng.randint(1, 3), rng.random() * 0.7)
        size, choice, _, exceeded = kernel(blocks, adj, len(blocks), 10 ** 7)
        assert not exceeded
        assert size == enumerate_max_sdr(blocks, lambda a, b: b in adj[a])
        picked = [(b, v) for b, v in enumerate(choice) if v >= 0]
        assert len(picked) == size
        vs = [v for _, v in picked]
        assert len(set(vs)) == len(vs)
        assert all(v in blocks[b] for b, v in picked)
        assert all(u not in adj[v] for u in vs for v in vs)


@pytest.mark.parametrize("name", sorted(KERNELS))
def test_budget_flag(name):
    blocks = [[0, 1, 2], [0, 1, 2], [0, 1, 2], [0, 1, 2]]
    adj = [[], [], []]
    size, choice, nodes, exceeded = KERNELS[name](blocks, adj, 4, 2)
    assert exceeded


@pytest.mark.parametrize("name", sorted(KERNELS))
def test_trivial_targets(name):
    assert KERNELS[name]([[0]], [[]], 0, 10) == (0, [-1], 0, False)
    assert KERNELS[name]([], [], 3, 10)[0] == 0


def test_pure_python_switch():
    env = dict(os.environ, SDR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from sdrkit import search; print(search.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
