"""Seeded random graph models: G(n, m), Barabasi-Albert, Watts-Strogatz, SBM.

All randomness comes from NumPy's ``Generator`` driven by the PCG64 bit
generator, seeded with the caller's integer seed. Equal arguments therefore
give identical graphs on every platform for a given NumPy release.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, from_arrays

MODELS = ("er", "ba", "ws", "sbm")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


class _Uniforms:
    """Buffered stream of U[0, 1) draws (one ``random`` call per block)."""

    def __init__(self, rng: np.random.Generator, block: int = 8192):
        self._rng = rng
        self._block = block
        self._buf = rng.random(block)
        self._i = 0

    def __call__(self) -> float:
        if self._i == self._block:
            self._buf = self._rng.random(self._block)
            self._i = 0
        x = self._buf[self._i]
        self._i += 1
        return float(x)


@dataclass(frozen=True)
class GenSpec:
    """A fully specified generator call.

    ``params`` keys: ER ``m``; BA ``k``; WS ``k``, ``p``; SBM ``groups``,
    ``p_in``, ``p_out``.
    """

    model: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0


def gen_er(n: int, m: int, seed: int) -> Graph:
    """Uniform G(n, m): ``m`` distinct edges drawn by rejection sampling of
    random node pairs."""
    n, m = int(n), int(m)
    if n < 2:
        raise ValueError(f"ER needs n >= 2, got {n}")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise ValueError(f"ER edge count m={m} outside [0, {max_m}] for n={n}")
    rng = _rng(seed)
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        batch = max(64, 2 * (m - len(keys)))
        u = rng.integers(0, n, size=batch)
        v = rng.integers(0, n, size=batch)
        ok = u != v
        lo = np.minimum(u[ok], v[ok])
        hi = np.maximum(u[ok], v[ok])
        keys = np.concatenate([keys, lo * n + hi])
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
    keys = keys[:m]
    return from_arrays(n, keys // n, keys % n)


def gen_ba(n: int, k: int, seed: int) -> Graph:
    """Preferential attachment grown from a ``k``-node path.

    Every later node links to ``k`` distinct existing nodes, drawn from an urn
    holding each node once per incident edge. The result has
    ``(k - 1) + k (n - k)`` edges.
    """
    n, k = int(n), int(k)
    if n < 2 or not 1 <= k < n:
        raise ValueError(f"BA needs 1 <= k < n, got n={n}, k={k}")
    rand = _Uniforms(_rng(seed))
    src = list(range(k - 1))
    dst = list(range(1, k))
    urn: list[int] = []
    for a, b in zip(src, dst):
        urn += (a, b)
    for t in range(k, n):
        if not urn:
            chosen = list(range(k))
        else:
            chosen = []
            seen = set()
            while len(chosen) < k:
                x = urn[int(rand() * len(urn))]
                if x not in seen:
                    seen.add(x)
                    chosen.append(x)
        for x in chosen:
            src.append(t)
            dst.append(x)
            urn += (t, x)
    return from_arrays(n, src, dst)


def gen_ws(n: int, k: int, p: float, seed: int) -> Graph:
    """Watts-Strogatz small world.

    Starts from a ring where each node links to ``k/2`` neighbors on each
    side. Lattice edges ``(u, u+j)`` are visited for ``j = 1..k/2`` and
    ``u = 0..n-1``; with probability ``p`` the far endpoint is replaced by a
    uniform node that is neither ``u`` nor already adjacent to it.
    """
    n, k, p = int(n), int(k), float(p)
    if k % 2 or not 0 <= k < n:
        raise ValueError(f"WS needs an even k with 0 <= k < n, got n={n}, k={k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"WS rewiring probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    rand = _Uniforms(rng)
    adj = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rand() >= p or v not in adj[u] or len(adj[u]) >= n - 1:
                continue
            while True:
                w = int(rand() * n)
                if w != u and w not in adj[u]:
                    break
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    src = [u for u in range(n) for v in adj[u] if u < v]
    dst = [v for u in range(n) for v in adj[u] if u < v]
    return from_arrays(n, src, dst)


def sbm_groups(n: int, groups: int) -> np.ndarray:
    """Group label per node; sizes differ by at most one, larger groups first."""
    sizes = np.full(groups, n // groups)
    sizes[: n % groups] += 1
    return np.repeat(np.arange(groups), sizes)


def _triu_pairs(idx: np.ndarray, s: int) -> tuple[np.ndarray, np.ndarray]:
    # decode linear indices of the strict upper triangle of an s x s matrix
    row_start = np.arange(s) * s - np.arange(s) * (np.arange(s) + 1) // 2
    i = np.searchsorted(row_start, idx, side="right") - 1
    j = idx - row_start[i] + i + 1
    return i, j


def gen_sbm(n: int, groups: int, p_in: float, p_out: float, seed: int):
    """Stochastic block model.

    Returns ``(graph, labels)``. Each same-group pair is an edge with
    probability ``p_in`` and each cross-group pair with ``p_out``. Per block,
    the edge count is drawn from the binomial distribution and that many
    distinct pairs are chosen uniformly, which is the same distribution as
    independent coin flips.
    """
    n, groups = int(n), int(groups)
    if n < 2 or not 1 <= groups <= n:
        raise ValueError(f"SBM needs n >= 2 and 1 <= groups <= n, got n={n}, groups={groups}")
    for name, prob in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= prob <= 1.0:
            raise ValueError(f"SBM {name} must be in [0, 1], got {prob}")
    rng = _rng(seed)
    labels = sbm_groups(n, groups)
    sizes = np.bincount(labels, minlength=groups)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    src, dst = [], []
    for a in range(groups):
        for b in range(a, groups):
            sa, sb = int(sizes[a]), int(sizes[b])
            pairs = sa * (sa - 1) // 2 if a == b else sa * sb
            prob = p_in if a == b else p_out
            if pairs == 0 or prob == 0.0:
                continue
            c = int(rng.binomial(pairs, prob))
            idx = rng.choice(pairs, size=c, replace=False) if c < pairs else np.arange(pairs)
            if a == b:
                i, j = _triu_pairs(idx, sa)
            else:
                i, j = idx // sb, idx % sb
            src.append(starts[a] + i)
            dst.append(starts[b] + j)
    if src:
        g = from_arrays(n, np.concatenate(src), np.concatenate(dst))
    else:
        g = from_arrays(n, [], [])
    return g, labels


def generate(spec: GenSpec) -> Graph:
    """Dispatch a :class:`GenSpec` to its generator."""
    model, n, p, seed = spec.model.lower(), spec.n, spec.params, spec.seed
    if model == "er":
        return gen_er(n, p["m"], seed)
    if model == "ba":
        return gen_ba(n, p["k"], seed)
    if model == "ws":
        return gen_ws(n, p["k"], p.get("p", 0.1), seed)
    if model == "sbm":
        return gen_sbm(n, p.get("groups", 4), p["p_in"], p["p_out"], seed)[0]
    raise ValueError(f"unknown model {spec.model!r}; expected one of {', '.join(MODELS)}")


# Defaults used when a model is parametrised by target average degree.
WS_REWIRE = 0.1
SBM_GROUPS = 10
SBM_RATIO = 10.0  # p_in / p_out


def spec_for_degree(model: str, n: int, avg_degree: float, seed: int = 0) -> GenSpec:
    """Parameters giving roughly ``avg_degree`` for ``model`` on ``n`` nodes.

    BA and WS can only realise even degrees (``2k`` and ``k`` resp.), so the
    target is rounded, with a floor of BA ``k=1`` and WS ``k=2``.
    """
    model = model.lower()
    d = float(avg_degree)
    if model == "er":
        m = min(int(round(n * d / 2)), n * (n - 1) // 2)
        return GenSpec("er", n, {"m": m}, seed)
    if model == "ba":
        k = min(max(1, int(round(d / 2))), n - 1)
        return GenSpec("ba", n, {"k": k}, seed)
    if model == "ws":
        k = max(2, 2 * int(round(d / 2)))
        k = min(k, n - 1 - (n - 1) % 2)
        return GenSpec("ws", n, {"k": k, "p": WS_REWIRE}, seed)
    if model == "sbm":
        g = min(SBM_GROUPS, n)
        s = n / g
        p_out = d / (SBM_RATIO * (s - 1) + (n - s))
        p_in = min(1.0, SBM_RATIO * p_out)
        return GenSpec("sbm", n, {"groups": g, "p_in": p_in, "p_out": min(1.0, p_out)}, seed)
    raise ValueError(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")
