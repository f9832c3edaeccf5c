"""Backtracking search for d1u functions Z/dZ -> B into small abelian groups.

Values f(0), f(1), ... are assigned in order and every pair difference is
checked against per-shift occupancy as soon as both endpoints are known, so
wrap-around differences are pruned early instead of at the last level.

Symmetry reduction:

* f(0) = 0 (adding a constant preserves d1u);
* each component of f(1) is restricted to a divisor of its cyclic factor
  (scaling a factor by a unit is an automorphism and moves any residue r to
  gcd(r, n)).

Orbits under the full automorphism group of B are not pruned.
"""

from __future__ import annotations

import concurrent.futures as cf
import enum
import logging
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .diffcalc import GroupFunction, is_d1u_bruteforce
from .errors import DomainError
from .groups import AbelianGroup, enumerate_abelian_groups

log = logging.getLogger(__name__)

CHUNK_NODES = 250_000


class Status(str, enum.Enum):
    FOUND = "FOUND"
    EXHAUSTED = "EXHAUSTED"
    TIMEOUT = "TIMEOUT"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SearchConfig:
    time_budget: float | None = 60.0  # seconds; None means no limit
    order_range: tuple[int, int] | None = None
    normalize: bool = True
    seed: int = 0
    workers: int = 1


@dataclass
class GroupResult:
    order: int
    group: AbelianGroup
    status: Status
    function: GroupFunction | None = None
    nodes: int = 0
    elapsed: float = 0.0
    pigeonhole: bool = False

    def to_json(self) -> dict:
        from .io import function_to_json

        return {
            "order": self.order,
            "group": self.group.to_json(),
            "status": self.status.value,
            "function": function_to_json(self.function) if self.function else None,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
            "pigeonhole": self.pigeonhole,
        }


@dataclass
class SearchOutcome:
    d: int
    results: list[GroupResult] = field(default_factory=list)
    order_status: dict[int, Status] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def nodes_explored(self) -> int:
        return sum(r.nodes for r in self.results)

    @property
    def min_order(self) -> int | None:
        found = [o for o, s in self.order_status.items() if s is Status.FOUND]
        return min(found) if found else None

    @property
    def found(self) -> GroupResult | None:
        return next((r for r in self.results if r.status is Status.FOUND), None)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "min_order": self.min_order,
            "order_status": {str(o): s.value for o, s in self.order_status.items()},
            "results": [r.to_json() for r in self.results],
            "nodes_explored": self.nodes_explored,
            "elapsed": self.elapsed,
        }


def _tables(g: AbelianGroup) -> tuple[np.ndarray, np.ndarray]:
    n = g.order
    arr = np.array([g.element(c) for c in range(n)], dtype=np.int64).reshape(n, g.rank)
    mod = np.array(g.factors, dtype=np.int64)
    radix = np.cumprod(np.concatenate(([1], mod[::-1])))[-2::-1].astype(np.int64)
    diff = (arr[:, None, :] - arr[None, :, :]) % mod
    sub = (diff @ radix).astype(np.int32)
    return sub, sub[0].copy()


def canonical_first_values(g: AbelianGroup) -> list[int]:
    """Codes of elements whose every residue divides its factor (0 included)."""
    out = []
    for code in range(g.order):
        u = g.element(code)
        if all(r == 0 or n % r == 0 for r, n in zip(u, g.factors)):
            out.append(code)
    return out


def _candidates(d: int, g: AbelianGroup, cfg: SearchConfig) -> tuple[np.ndarray, np.ndarray, int]:
    n = g.order
    rng = np.random.default_rng(cfg.seed) if cfg.seed else None
    cand = np.zeros((d, n), dtype=np.int32)
    ncand = np.zeros(d, dtype=np.int32)
    start = 1 if cfg.normalize else 0
    for x in range(d):
        if x == 0 and cfg.normalize:
            vals = [0]
        elif x == 1 and cfg.normalize:
            vals = canonical_first_values(g)
        else:
            vals = list(range(n))
        if rng is not None:
            vals = list(rng.permutation(vals))
        cand[x, : len(vals)] = vals
        ncand[x] = len(vals)
    return cand, ncand, start


def _run(d, g, cand, ncand, start, deadline, cancel=None):
    """Drive the kernel until it finishes, the deadline passes or ``cancel`` is set."""
    sub, neg = _tables(g)
    n = g.order
    f = np.zeros(d, dtype=np.int32)
    for x in range(start):
        f[x] = cand[x, 0]
    nxt = np.zeros(d + 1, dtype=np.int32)
    base = np.zeros(d + 1, dtype=np.int32)
    stack_a = np.zeros(d * d + 2, dtype=np.int32)
    stack_b = np.zeros(d * d + 2, dtype=np.int32)
    occ = np.zeros((d // 2 + 1, n), dtype=np.bool_)
    state = np.array([start, 0, 0], dtype=np.int64)
    while True:
        code = _kernel.search_kernel(d, sub, neg, cand, ncand, start, f, nxt, base, stack_a, stack_b, occ, state, CHUNK_NODES)
        if code != _kernel.LIMIT:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
        if cancel is not None and cancel.is_set():
            break
    values = [int(v) for v in f] if code == _kernel.FOUND else None
    return code, values, int(state[2])


def _branch_worker(args):
    d, factors, cand, ncand, start, budget, cancel = args
    deadline = None if budget is None else time.monotonic() + budget
    code, values, nodes = _run(d, AbelianGroup(factors), cand, ncand, start, deadline, cancel)
    if code == _kernel.FOUND and cancel is not None:
        cancel.set()
    return code, values, nodes


def search_group(d: int, g: AbelianGroup, cfg: SearchConfig = SearchConfig()) -> GroupResult:
    """Search for a d1u function Z/dZ -> g within ``cfg.time_budget`` seconds."""
    if d < 2:
        raise DomainError(f"search needs d >= 2, got {d}")
    t0 = time.monotonic()
    if g.order < d:
        return GroupResult(g.order, g, Status.EXHAUSTED, pigeonhole=True)

    cand, ncand, start = _candidates(d, g, cfg)
    budget = cfg.time_budget
    workers = max(1, min(cfg.workers, int(ncand[start])))
    if workers == 1:
        deadline = None if budget is None else t0 + budget
        code, values, nodes = _run(d, g, cand, ncand, start, deadline)
        codes = [code]
    else:
        # split the first free level round-robin; branches are disjoint
        jobs = []
        manager = multiprocessing.Manager()
        cancel = manager.Event()
        for w in range(workers):
            part = cand[start, : ncand[start]][w::workers]
            c = cand.copy()
            nc = ncand.copy()
            c[start, : len(part)] = part
            nc[start] = len(part)
            jobs.append((d, g.factors, c, nc, start, budget, cancel))
        with cf.ProcessPoolExecutor(workers, mp_context=multiprocessing.get_context("spawn")) as pool:
            results = list(pool.map(_branch_worker, jobs))
        manager.shutdown()
        codes = [r[0] for r in results]
        nodes = sum(r[2] for r in results)
        values = next((r[1] for r in results if r[0] == _kernel.FOUND), None)

    elapsed = time.monotonic() - t0
    if values is not None:
        fn = GroupFunction(d, g, tuple(g.element(v) for v in values))
        if not is_d1u_bruteforce(fn):
            raise AssertionError(f"search returned a non-d1u function {fn.values}")
        return GroupResult(g.order, g, Status.FOUND, fn, nodes, elapsed)
    if all(c == _kernel.EXHAUSTED for c in codes):
        return GroupResult(g.order, g, Status.EXHAUSTED, None, nodes, elapsed)
    return GroupResult(g.order, g, Status.TIMEOUT, None, nodes, elapsed)


def search_min_order(d: int, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Scan codomain orders upward until some group admits a d1u function.

    An order is EXHAUSTED only when every group of that order was searched to
    completion; a timeout anywhere makes it INCONCLUSIVE.
    """
    if d < 2:
        raise DomainError(f"search needs d >= 2, got {d}")
    lo, hi = cfg.order_range or (d, 4 * d)
    if lo > hi:
        raise DomainError(f"empty order range [{lo}, {hi}]")
    if lo < d or hi > 4 * d:
        raise DomainError(f"order range [{lo}, {hi}] must lie within [{d}, {4 * d}]")

    pairs = [(n, g) for n in range(lo, hi + 1) for g in enumerate_abelian_groups(n)]
    per_pair = None if cfg.time_budget is None else cfg.time_budget / len(pairs)
    sub_cfg = SearchConfig(per_pair, (lo, hi), cfg.normalize, cfg.seed, cfg.workers)

    out = SearchOutcome(d)
    t0 = time.monotonic()
    for n in range(lo, hi + 1):
        statuses = []
        for g in enumerate_abelian_groups(n):
            res = search_group(d, g, sub_cfg)
            log.info("d=%d group %s: %s (%d nodes, %.2fs)", d, g, res.status.value, res.nodes, res.elapsed)
            out.results.append(res)
            statuses.append(res.status)
            if res.status is Status.FOUND:
                break
        if Status.FOUND in statuses:
            out.order_status[n] = Status.FOUND
            break
        out.order_status[n] = Status.EXHAUSTED if all(s is Status.EXHAUSTED for s in statuses) else Status.INCONCLUSIVE
    out.elapsed = time.monotonic() - t0
    return out


def search_space_size(d: int, g: AbelianGroup, normalize: bool = True) -> int:
    """Number of value tables the search covers before symmetry pruning."""
    return g.order ** (d - 1 if normalize else d)
