"""Shared fixtures: the built-in family list and random spec generators."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from circfoliation.model import BaseGraph, FoliationSpec, is_connected, parse_family

BUILTIN_FAMILIES = [
    "circulant:1",
    "circulant:1,2",
    "circulant:1,3",
    "circulant:2,3",
    "gp:1",
    "gp:2",
    "gp:3",
    "igraph:2,3",
    "sandwich:[[1],[2],[1]]",
    "ygraph:[[1],[1],[1]]",
    "hgraph:[[1],[1],[1],[1]]",
    "torus:3",
    "torus:4",
    "torus:5",
]


def builtin_specs() -> list[tuple[str, FoliationSpec]]:
    return [(name, parse_family(name)) for name in BUILTIN_FAMILIES]


def gcd_one_builtins() -> list[tuple[str, FoliationSpec]]:
    return [(name, spec) for name, spec in builtin_specs() if spec.jump_gcd == 1]


def random_spec(rng: random.Random, max_m: int = 5, max_mult: int = 2, max_jump: int = 4,
                allow_empty: bool = False) -> FoliationSpec:
    """Connected base on at most max_m vertices with random fibers."""
    while True:
        m = rng.randint(1, max_m)
        edges = []
        for i in range(m):
            for j in range(i + 1, m):
                if rng.random() < 0.5:
                    edges.append((i, j, rng.randint(1, max_mult)))
        base = BaseGraph.from_edges(m, edges)
        if not is_connected(base.as_multigraph()):
            continue
        lo = 0 if allow_empty else 1
        fibers = [sorted(rng.sample(range(1, max_jump + 1), rng.randint(lo, 2))) for _ in range(m)]
        if not any(fibers):
            continue
        return FoliationSpec.build(base, fibers)


@st.composite
def specs(draw, max_m: int = 4, max_jump: int = 4, allow_empty: bool = False):
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_spec(random.Random(seed), max_m=max_m, max_jump=max_jump, allow_empty=allow_empty)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
