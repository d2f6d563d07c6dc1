"""Graph level combinatorics of object configurations.

Covers shift normalization along edges (Serre duality style degree
balancing), parity sign assignments for symmetric power lifts, and
Koszul signed symmetric and exterior powers of Poincare polynomials
realizing the equivariant Kunneth formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InputValidationError
from .fields import FieldSpec


@dataclass(frozen=True)
class EdgeData:
    u: object
    v: object
    a_uv: Optional[int] = None  # hom degree read u -> v
    a_vu: Optional[int] = None  # hom degree read v -> u
    d: Optional[int] = None  # plain hom degree label for sign lifting


@dataclass(frozen=True)
class ConfigGraph:
    """Simple graph: at most one edge per vertex pair, no self loops."""

    vertices: Tuple[object, ...]
    edges: Tuple[EdgeData, ...]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise InputValidationError("duplicate vertices")
        pairs = set()
        for e in self.edges:
            if e.u not in seen or e.v not in seen:
                raise InputValidationError(f"edge ({e.u},{e.v}) uses unknown vertex")
            if e.u == e.v:
                raise InputValidationError(f"self loop at {e.u}")
            key = frozenset((e.u, e.v))
            if key in pairs:
                raise InputValidationError(f"duplicate edge ({e.u},{e.v})")
            pairs.add(key)

    @classmethod
    def make(cls, vertices: Sequence, edges: Sequence) -> "ConfigGraph":
        out_edges = []
        for e in edges:
            if isinstance(e, EdgeData):
                out_edges.append(e)
            elif isinstance(e, Mapping):
                out_edges.append(
                    EdgeData(
                        e["u"],
                        e["v"],
                        e.get("a_uv"),
                        e.get("a_vu"),
                        e.get("d"),
                    )
                )
            else:
                u, v = e
                out_edges.append(EdgeData(u, v))
        return cls(tuple(vertices), tuple(out_edges))

    def adjacency(self) -> Dict[object, List[Tuple[object, EdgeData]]]:
        adj: Dict[object, List[Tuple[object, EdgeData]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e))
            adj[e.v].append((e.u, e))
        return adj

    def has_cycles(self) -> bool:
        comps = 0
        seen = set()
        adj = self.adjacency()
        for root in self.vertices:
            if root in seen:
                continue
            comps += 1
            stack = [root]
            seen.add(root)
            while stack:
                x = stack.pop()
                for y, _ in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(self.edges) > len(self.vertices) - comps

    def to_json_dict(self) -> dict:
        edges = []
        for e in self.edges:
            entry = {"u": e.u, "v": e.v}
            if e.a_uv is not None:
                entry["a_uv"] = e.a_uv
            if e.a_vu is not None:
                entry["a_vu"] = e.a_vu
            if e.d is not None:
                entry["d"] = e.d
            edges.append(entry)
        return {"vertices": list(self.vertices), "edges": edges}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConfigGraph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise InputValidationError("graph JSON needs 'vertices' and 'edges'")
        return cls.make(data["vertices"], data["edges"])


@dataclass(frozen=True)
class PoincarePolynomial:
    """Finite support degree -> dimension table."""

    coeffs: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, dims: Mapping[int, int]) -> "PoincarePolynomial":
        items = []
        for d in sorted(dims):
            n = int(dims[d])
            if n < 0:
                raise InputValidationError("negative dimension")
            if n:
                items.append((int(d), n))
        return cls(tuple(items))

    @classmethod
    def line(cls, m: int) -> "PoincarePolynomial":
        """The Poincare polynomial of k[-m]: one dimension in degree m."""
        return cls.make({m: 1})

    @classmethod
    def zero(cls) -> "PoincarePolynomial":
        return cls(())

    def dims(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def dim(self, d: int) -> int:
        return dict(self.coeffs).get(d, 0)

    def degrees(self) -> List[int]:
        return [d for d, _ in self.coeffs]

    def total_dim(self) -> int:
        return sum(n for _, n in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_support(self):
        return self.degrees()

    def to_json_dict(self) -> dict:
        return {"components": [{"degree": d, "dim": n} for d, n in self.coeffs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PoincarePolynomial":
        if not isinstance(data, dict) or "components" not in data:
            raise InputValidationError("poincare JSON needs 'components'")
        dims: Dict[int, int] = {}
        for c in data["components"]:
            dims[int(c["degree"])] = dims.get(int(c["degree"]), 0) + int(c["dim"])
        return cls.make(dims)


# -- shift normalization --------------------------------------------------


@dataclass(frozen=True)
class ShiftNormalization:
    feasible: bool
    h: int
    shifts: Optional[Dict[object, int]] = None
    witness_cycle: Optional[List[object]] = None
    uses_cycle_extension: bool = False


def _tree_path(parents: Dict[object, Tuple[object, EdgeData]], x, y) -> List[object]:
    """Path x .. root .. y inside the BFS forest, trimmed at the meeting point."""

    def chain(z):
        out = [z]
        while z in parents:
            z = parents[z][0]
            out.append(z)
        return out

    cx, cy = chain(x), chain(y)
    set_cx = {v: i for i, v in enumerate(cx)}
    meet = next(v for v in cy if v in set_cx)
    up = cx[: set_cx[meet] + 1]
    down = cy[: cy.index(meet)]
    return up + list(reversed(down))


def normalize_shifts(graph: ConfigGraph, nk: int) -> ShiftNormalization:
    """Choose per vertex shifts making every edge degree equal to nk/2.

    Every edge must carry both directed degrees with a_uv + a_vu = nk
    (violations are errors, not witnesses). On trees this always succeeds
    with root shift 0; with cycles it succeeds exactly when the signed sum
    of (a_uv - h) around every cycle vanishes, and otherwise the violating
    cycle is returned.
    """
    if nk % 2 != 0:
        raise InputValidationError(f"total degree nk = {nk} must be even")
    h = nk // 2
    for e in graph.edges:
        if e.a_uv is None or e.a_vu is None:
            raise InputValidationError(f"edge ({e.u},{e.v}) is missing a directed degree")
        if e.a_uv + e.a_vu != nk:
            raise InputValidationError(
                f"edge ({e.u},{e.v}) violates duality: {e.a_uv} + {e.a_vu} != {nk}"
            )

    adj = graph.adjacency()
    shifts: Dict[object, int] = {}
    parents: Dict[object, Tuple[object, EdgeData]] = {}
    for root in graph.vertices:
        if root in shifts:
            continue
        shifts[root] = 0
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y, e in adj[x]:
                a_xy = e.a_uv if e.u == x else e.a_vu
                want = shifts[x] + a_xy - h
                if y not in shifts:
                    shifts[y] = want
                    parents[y] = (x, e)
                    queue.append(y)
                elif shifts[y] != want:
                    cycle = _tree_path(parents, y, x)
                    return ShiftNormalization(
                        False,
                        h,
                        witness_cycle=cycle + [cycle[0]],
                        uses_cycle_extension=True,
                    )
    return ShiftNormalization(
        True, h, shifts=shifts, uses_cycle_extension=graph.has_cycles()
    )


def normalized_edge_degrees(graph: ConfigGraph, shifts: Mapping[object, int]) -> Dict[Tuple[object, object], int]:
    out = {}
    for e in graph.edges:
        out[(e.u, e.v)] = e.a_uv + shifts[e.u] - shifts[e.v]
        out[(e.v, e.u)] = e.a_vu + shifts[e.v] - shifts[e.u]
    return out


# -- sign assignment -------------------------------------------------------


@dataclass(frozen=True)
class SignAssignment:
    feasible: bool
    signs: Optional[Dict[object, int]] = None
    witness_cycle: Optional[List[object]] = None
    uses_cycle_extension: bool = False


def sign_assignment(graph: ConfigGraph) -> SignAssignment:
    """Assign eps in {+1, -1} per vertex with eps_i eps_j = (-1)^(d_ij).

    Exists exactly when every cycle has even total degree parity. Trees
    always succeed; an infeasible instance returns the witness cycle.
    """
    for e in graph.edges:
        if e.d is None:
            raise InputValidationError(f"edge ({e.u},{e.v}) is missing the degree label d")
    adj = graph.adjacency()
    signs: Dict[object, int] = {}
    parents: Dict[object, Tuple[object, EdgeData]] = {}
    for root in graph.vertices:
        if root in signs:
            continue
        signs[root] = 1
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y, e in adj[x]:
                want = signs[x] * (-1) ** (e.d % 2)
                if y not in signs:
                    signs[y] = want
                    parents[y] = (x, e)
                    queue.append(y)
                elif signs[y] != want:
                    cycle = _tree_path(parents, y, x)
                    return SignAssignment(
                        False,
                        witness_cycle=cycle + [cycle[0]],
                        uses_cycle_extension=True,
                    )
    return SignAssignment(True, signs=signs, uses_cycle_extension=graph.has_cycles())


# -- Koszul signed powers ---------------------------------------------------


def _zpoly_mul(a: List[Dict[int, int]], b: List[Dict[int, int]], n: int) -> List[Dict[int, int]]:
    """Multiply polynomials in z (listed by z degree, truncated at n) whose
    coefficients are degree -> dimension tables."""
    out: List[Dict[int, int]] = [dict() for _ in range(n + 1)]
    for i, ca in enumerate(a):
        if i > n or not ca:
            continue
        for j, cb in enumerate(b):
            if i + j > n or not cb:
                continue
            target = out[i + j]
            for da, va in ca.items():
                for db, vb in cb.items():
                    target[da + db] = target.get(da + db, 0) + va * vb
    return out


def graded_power(
    P: PoincarePolynomial,
    n: int,
    kind: str = "symmetric",
    field_spec: Optional[FieldSpec] = None,
) -> PoincarePolynomial:
    """Koszul rule graded power S^n or Lambda^n of a Poincare polynomial.

    Under the symmetric power, even degree generators multiply freely and
    odd degree generators square to zero; the exterior power swaps the two
    behaviours. Computed by extracting the z^n coefficient of the product
    of per generator series. S^0 and Lambda^0 are one dimension in degree
    zero.
    """
    if n < 0:
        raise InputValidationError("power index must be >= 0")
    if kind not in ("symmetric", "exterior"):
        raise InputValidationError(f"unknown power kind {kind!r}")
    if field_spec is not None and field_spec.kind == "fp" and field_spec.p <= n:
        raise InputValidationError(
            f"graded powers need characteristic 0 or p > n (got p = {field_spec.p}, n = {n})"
        )
    acc: List[Dict[int, int]] = [dict() for _ in range(n + 1)]
    acc[0] = {0: 1}
    for m, mult in P.dims().items():
        free = (m % 2 == 0) if kind == "symmetric" else (m % 2 == 1)
        if free:
            single = [{m * j: 1} for j in range(n + 1)]
        else:
            single = [{0: 1}, {m: 1}] + [dict() for _ in range(n - 1)]
        for _ in range(mult):
            acc = _zpoly_mul(acc, single, n)
    return PoincarePolynomial.make(acc[n])


def kunneth_hom(
    P: PoincarePolynomial,
    n: int,
    same_linearization: bool,
    field_spec: Optional[FieldSpec] = None,
) -> PoincarePolynomial:
    """Graded hom table of n-fold lifted objects: S^n(P) when the two
    linearizations agree and Lambda^n(P) when they differ."""
    kind = "symmetric" if same_linearization else "exterior"
    return graded_power(P, n, kind, field_spec)
