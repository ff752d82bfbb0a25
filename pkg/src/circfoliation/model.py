"""Circulant foliations over a base multigraph and their Z_n covers.

A :class:`FoliationSpec` describes a whole family {H_n}: a base multigraph H
on m vertices plus one list of circulant jumps per base vertex.  Jumps are
family constants; they are reduced mod n only when a concrete cover is built.

Cover vertex (k, v_i) gets index ``i * n + k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DegenerateJump, InvalidSpec, TheoremDomain

MAX_BASE_VERTICES = 64

FAMILIES = ("circulant", "igraph", "gp", "sandwich", "ygraph", "hgraph", "torus", "product")


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidSpec("a graph needs at least one vertex")
        for u, v, mult in self.edges:
            if u == v:
                raise InvalidSpec(f"loop at vertex {u}")
            if mult < 1:
                raise InvalidSpec(f"edge ({u}, {v}) has multiplicity {mult}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidSpec(f"edge ({u}, {v}) out of range")

    @property
    def edge_count(self) -> int:
        return sum(mult for _, _, mult in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, mult in self.edges:
            deg[u] += mult
            deg[v] += mult
        return deg

    def relabel(self, perm: Sequence[int]) -> Multigraph:
        return Multigraph(self.vertex_count, tuple((perm[u], perm[v], m) for u, v, m in self.edges))


def is_connected(g: Multigraph) -> bool:
    parent = list(range(g.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = g.vertex_count
    for u, v, _ in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            components -= 1
    return components == 1


@dataclass(frozen=True)
class BaseGraph:
    """Loopless multigraph H given by its symmetric multiplicity matrix."""

    m: int
    a: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 1:
            raise InvalidSpec("base graph needs at least one vertex")
        if self.m > MAX_BASE_VERTICES:
            raise InvalidSpec(f"base graph limited to {MAX_BASE_VERTICES} vertices")
        if len(self.a) != self.m or any(len(row) != self.m for row in self.a):
            raise InvalidSpec("multiplicity matrix must be m x m")
        for i in range(self.m):
            if self.a[i][i] != 0:
                raise InvalidSpec(f"loop at base vertex {i}")
            for j in range(self.m):
                if self.a[i][j] < 0:
                    raise InvalidSpec("negative edge multiplicity")
                if self.a[i][j] != self.a[j][i]:
                    raise InvalidSpec("multiplicity matrix must be symmetric")

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]]) -> BaseGraph:
        a = [[0] * m for _ in range(m)]
        for edge in edges:
            i, j = edge[0], edge[1]
            mult = edge[2] if len(edge) > 2 else 1
            if not (0 <= i < m and 0 <= j < m):
                raise InvalidSpec(f"base edge ({i}, {j}) out of range")
            if i == j:
                raise InvalidSpec(f"loop at base vertex {i}")
            a[i][j] += mult
            a[j][i] += mult
        return cls(m, tuple(tuple(row) for row in a))

    @property
    def degrees(self) -> list[int]:
        return [sum(row) for row in self.a]

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, self.a[i][j]) for i in range(self.m) for j in range(i + 1, self.m) if self.a[i][j]]

    def as_multigraph(self) -> Multigraph:
        return Multigraph(self.m, tuple(self.edges()))


@dataclass(frozen=True)
class FiberSpec:
    """Jump list of one circulant fiber C_n(s_1, ..., s_k); empty means C_n(empty)."""

    jumps: tuple[int, ...] = ()

    def __post_init__(self):
        for s in self.jumps:
            if not isinstance(s, int) or s < 1:
                raise InvalidSpec(f"jumps must be positive integers, got {s!r}")
        if any(b <= a for a, b in zip(self.jumps, self.jumps[1:])):
            raise InvalidSpec(f"jumps must be strictly increasing: {list(self.jumps)}")

    @property
    def k(self) -> int:
        return len(self.jumps)

    @property
    def top(self) -> int:
        """Largest jump, 0 for an empty fiber."""
        return self.jumps[-1] if self.jumps else 0


@dataclass(frozen=True)
class FoliationSpec:
    base: BaseGraph
    fibers: tuple[FiberSpec, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.fibers) != self.base.m:
            raise InvalidSpec(f"expected {self.base.m} fibers, got {len(self.fibers)}")
        if self.labels is not None and len(self.labels) != self.base.m:
            raise InvalidSpec("labels must name every base vertex")

    @classmethod
    def build(cls, base: BaseGraph, fibers: Iterable[Iterable[int]], labels=None) -> FoliationSpec:
        return cls(
            base,
            tuple(FiberSpec(tuple(f)) for f in fibers),
            tuple(labels) if labels is not None else None,
        )

    @property
    def m(self) -> int:
        return self.base.m

    def all_jumps(self) -> list[int]:
        return [s for f in self.fibers for s in f.jumps]

    @property
    def jump_gcd(self) -> int:
        g = 0
        for s in self.all_jumps():
            g = gcd(g, s)
        return g

    @property
    def degree_s(self) -> int:
        """s = sum of the largest jump of each fiber (0 for empty fibers)."""
        return sum(f.top for f in self.fibers)

    # -- JSON ----------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "base": {"m": self.m, "edges": [list(e) for e in self.base.edges()]},
            "fibers": [list(f.jumps) for f in self.fibers],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> FoliationSpec:
        try:
            base = data["base"]
            m = int(base["m"])
            graph = BaseGraph.from_edges(m, base.get("edges", []))
            fibers = data["fibers"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed spec: {exc}") from exc
        return cls.build(graph, fibers, data.get("labels"))

    @classmethod
    def from_json(cls, text: str) -> FoliationSpec:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"spec is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ValidationReport:
    base_connected: bool
    jump_gcd: int
    gcd_hypothesis: bool
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.base_connected


def validate(spec: FoliationSpec) -> ValidationReport:
    problems = []
    connected = is_connected(spec.base.as_multigraph())
    if not connected:
        problems.append("base graph is disconnected")
    g = spec.jump_gcd
    hypothesis = g == 1
    if g == 0:
        problems.append("no jumps at all")
    elif g != 1:
        problems.append(f"jump gcd is {g}, asymptotic hypothesis fails")
    return ValidationReport(connected, g, hypothesis, tuple(problems))


def require_valid(spec: FoliationSpec) -> None:
    report = validate(spec)
    if not report.base_connected:
        raise InvalidSpec("base graph is disconnected")


# -- named families -----------------------------------------------------


def _path(m: int) -> BaseGraph:
    return BaseGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def _cycle(m: int) -> BaseGraph:
    if m == 2:
        return BaseGraph.from_edges(2, [(0, 1, 2)])
    return BaseGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def _as_jump_list(x, name: str) -> list[int]:
    if isinstance(x, int):
        return [x]
    if isinstance(x, (list, tuple)) and all(isinstance(s, int) for s in x):
        return sorted(x)
    raise InvalidSpec(f"{name}: expected a jump list, got {x!r}")


def _arity(name: str, params: Sequence, count: int) -> None:
    if len(params) != count:
        raise InvalidSpec(f"{name} takes {count} parameter(s), got {len(params)}")


def make_family(name: str, params) -> FoliationSpec:
    """Build one of the named families.

    ``params`` by family:
      circulant  [s_1, ..., s_k]            single vertex, fiber C_n(s_1..s_k)
      igraph     [k, l]                      I(n, k, l)
      gp         [k]                         GP(n, k) = I(n, k, 1)
      sandwich   [jumps_1, ..., jumps_m]     path base
      ygraph     [jumps_1, jumps_2, jumps_3] star base, empty fourth fiber
      hgraph     [jumps_1, ..., jumps_4]     H-shaped base, empty fifth and sixth fibers
      torus      [m]                         C_n x C_m
      product    [BaseGraph] or [m, edges]   C_n x H for a regular H
    """
    params = list(params)
    if name == "circulant":
        jumps = _as_jump_list(params, name)
        return FoliationSpec.build(BaseGraph.from_edges(1, []), [jumps])
    if name == "igraph":
        _arity(name, params, 2)
        k, l = params
        return FoliationSpec.build(_path(2), [[k], [l]])
    if name == "gp":
        _arity(name, params, 1)
        return make_family("igraph", [params[0], 1])
    if name == "sandwich":
        if not params:
            raise InvalidSpec("sandwich needs at least one fiber")
        fibers = [_as_jump_list(f, name) for f in params]
        return FoliationSpec.build(_path(len(fibers)), fibers)
    if name == "ygraph":
        _arity(name, params, 3)
        fibers = [_as_jump_list(f, name) for f in params] + [[]]
        base = BaseGraph.from_edges(4, [(0, 3), (1, 3), (2, 3)])
        return FoliationSpec.build(base, fibers)
    if name == "hgraph":
        _arity(name, params, 4)
        fibers = [_as_jump_list(f, name) for f in params] + [[], []]
        # v1v5, v5v3, v2v6, v6v4, v5v6
        base = BaseGraph.from_edges(6, [(0, 4), (4, 2), (1, 5), (5, 3), (4, 5)])
        return FoliationSpec.build(base, fibers)
    if name == "torus":
        _arity(name, params, 1)
        m = params[0]
        if not isinstance(m, int) or m < 2:
            raise InvalidSpec("torus needs m >= 2")
        return FoliationSpec.build(_cycle(m), [[1]] * m)
    if name == "product":
        if len(params) == 1 and isinstance(params[0], BaseGraph):
            base = params[0]
        elif len(params) == 2:
            base = BaseGraph.from_edges(params[0], params[1])
        else:
            raise InvalidSpec("product takes a BaseGraph or (m, edges)")
        if len(set(base.degrees)) != 1:
            raise InvalidSpec("product requires a regular base graph")
        return FoliationSpec.build(base, [[1]] * base.m)
    raise InvalidSpec(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def parse_family(text: str) -> FoliationSpec:
    """Parse ``"gp:2"``, ``"circulant:1,2"``, ``"torus:4"`` or ``"ygraph:[[1],[1],[1]]"``."""
    name, _, rest = text.partition(":")
    name = name.strip()
    rest = rest.strip()
    if rest.startswith("["):
        try:
            params = json.loads(rest)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"bad family parameters {rest!r}") from exc
    elif rest:
        try:
            params = [int(tok) for tok in rest.split(",")]
        except ValueError as exc:
            raise InvalidSpec(f"bad family parameters {rest!r}") from exc
    else:
        params = []
    return make_family(name, params)


# -- covers -------------------------------------------------------------


def expand_cover(spec: FoliationSpec, n: int) -> Multigraph:
    """Explicit graph H_n on m*n vertices."""
    if n < 3:
        raise ValueError("n must be at least 3")
    require_valid(spec)
    mult: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, c: int = 1) -> None:
        key = (u, v) if u < v else (v, u)
        mult[key] = mult.get(key, 0) + c

    for i, j, a_ij in spec.base.edges():
        for k in range(n):
            add(i * n + k, j * n + k, a_ij)
    for i, fiber in enumerate(spec.fibers):
        for s in fiber.jumps:
            r = s % n
            if r == 0:
                raise DegenerateJump(f"jump {s} of fiber {i} is 0 mod {n}")
            for k in range(n):
                add(i * n + k, i * n + (k + r) % n)
    edges = tuple((u, v, c) for (u, v), c in sorted(mult.items()))
    return Multigraph(spec.m * n, edges)


def is_cover_connected(spec: FoliationSpec, n: int) -> bool:
    g = n
    for s in spec.all_jumps():
        g = gcd(g, s)
    return g == 1


def reduced_jumps(fiber: FiberSpec, n: int) -> list[int]:
    """Jumps mapped into 0..floor(n/2) (s and -s give the same fiber edges)."""
    return [min(s % n, n - s % n) for s in fiber.jumps]


def theorem_domain_issue(spec: FoliationSpec, n: int) -> str | None:
    """Describe why (spec, n) is outside the closed-formula domain, or None.

    Only a jump that vanishes mod n is excluded: the cover would carry a
    loop.  Jumps that collide mod n (s = +-s' or s = n/2) stack edge
    multiplicities in the cover and in the circulant blocks alike, so the
    formula still applies to them.
    """
    for i, fiber in enumerate(spec.fibers):
        for s in fiber.jumps:
            if s % n == 0:
                return f"fiber {i}: jump {s} is 0 mod {n}"
    return None


def jumps_collide(spec: FoliationSpec, n: int) -> bool:
    """True when two jumps of one fiber give the same edge class mod n."""
    for fiber in spec.fibers:
        reduced = reduced_jumps(fiber, n)
        if len(set(reduced)) != len(reduced):
            return True
    return False


def check_theorem_domain(spec: FoliationSpec, n: int) -> None:
    issue = theorem_domain_issue(spec, n)
    if issue is not None:
        raise TheoremDomain(issue)


def multiply_jumps(spec: FoliationSpec, r: int, n: int) -> FoliationSpec:
    """Spec whose jumps are r*s mod n, renormalized into 1..floor(n/2).

    For r a unit mod n the covers at this n are isomorphic.  Jumps that
    collide mod n cannot be renormalized and raise InvalidSpec.
    """
    if gcd(r, n) != 1:
        raise ValueError(f"{r} is not a unit mod {n}")
    fibers = []
    for fiber in spec.fibers:
        fibers.append(sorted(min(r * s % n, n - r * s % n) for s in fiber.jumps))
    return FoliationSpec.build(spec.base, fibers, spec.labels)
