"""Finite dimensional graded algebras given by labeled structure constants.

An algebra is a labeled homogeneous basis together with an exact
multiplication table, a unit, and (optionally) a list of orthogonal
idempotent basis labels spanning the degree zero part. Values are
immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .configurations import ConfigGraph
from .errors import InputValidationError, ZeroGradedObjectError
from .fields import FieldSpec, RATIONALS_SPEC

Combo = Dict[str, object]  # label -> scalar, absent means zero


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite support degree -> labeled basis table."""

    components: Tuple[Tuple[int, Tuple[str, ...]], ...]

    @classmethod
    def from_labels(cls, by_degree: Mapping[int, Sequence[str]]) -> "GradedVectorSpace":
        comps = []
        for d in sorted(by_degree):
            labels = tuple(by_degree[d])
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise InputValidationError(f"duplicate labels in degree {d}")
            comps.append((d, labels))
        return cls(tuple(comps))

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], prefix: str = "b") -> "GradedVectorSpace":
        return cls.from_labels(
            {d: [f"{prefix}[{d}].{i}" for i in range(n)] for d, n in dims.items() if n}
        )

    def dims(self) -> Dict[int, int]:
        return {d: len(labels) for d, labels in self.components}

    def dim(self, degree: int) -> int:
        for d, labels in self.components:
            if d == degree:
                return len(labels)
        return 0

    def degrees(self) -> List[int]:
        return [d for d, _ in self.components]

    def total_dim(self) -> int:
        return sum(len(labels) for _, labels in self.components)

    def is_zero(self) -> bool:
        return not self.components


def _degree_support(x) -> List[int]:
    if isinstance(x, GradedVectorSpace):
        return x.degrees()
    if isinstance(x, GradedAlgebra):
        return sorted({d for _, d in x.basis})
    if isinstance(x, GradedBimodule):
        return sorted({d for _, d in x.space})
    if isinstance(x, Mapping):
        return sorted(d for d, n in x.items() if n)
    if hasattr(x, "degree_support"):
        return sorted(x.degree_support())
    raise InputValidationError(f"no graded support for {type(x).__name__}")


def maxdeg(x) -> int:
    """Largest degree carrying a nonzero homogeneous element."""
    support = _degree_support(x)
    if not support:
        raise ZeroGradedObjectError("maxdeg of the zero object")
    return max(support)


def mindeg(x) -> int:
    """Smallest degree carrying a nonzero homogeneous element."""
    support = _degree_support(x)
    if not support:
        raise ZeroGradedObjectError("mindeg of the zero object")
    return min(support)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: Tuple[str, ...]

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class GradedAlgebra:
    """Graded algebra by structure constants over an exact field.

    mult maps (left label, right label) to a combo dict; missing pairs
    multiply to zero. idempotents, when present, must be mutually
    orthogonal basis labels that sum to the unit and span degree zero.
    """

    field_spec: FieldSpec
    basis: Tuple[Tuple[str, int], ...]
    mult: Mapping[Tuple[str, str], Combo]
    unit: Combo
    idempotents: Optional[Tuple[str, ...]] = None

    # -- basic accessors ------------------------------------------------

    def labels(self) -> List[str]:
        return [lab for lab, _ in self.basis]

    def degree_of(self, label: str) -> int:
        for lab, d in self.basis:
            if lab == label:
                return d
        raise InputValidationError(f"unknown basis label {label!r}")

    def degree_map(self) -> Dict[str, int]:
        return {lab: d for lab, d in self.basis}

    def dim(self) -> int:
        return len(self.basis)

    def poincare(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return out

    def positive_part(self) -> GradedVectorSpace:
        by_deg: Dict[int, List[str]] = {}
        for lab, d in self.basis:
            if d > 0:
                by_deg.setdefault(d, []).append(lab)
        return GradedVectorSpace.from_labels(by_deg)

    def space(self) -> GradedVectorSpace:
        by_deg: Dict[int, List[str]] = {}
        for lab, d in self.basis:
            by_deg.setdefault(d, []).append(lab)
        return GradedVectorSpace.from_labels(by_deg)

    # -- arithmetic on combos -------------------------------------------

    def product_labels(self, x: str, y: str) -> Combo:
        return dict(self.mult.get((x, y), {}))

    def combo_add(self, c1: Combo, c2: Combo) -> Combo:
        f = self.field_spec.field()
        out = dict(c1)
        for lab, v in c2.items():
            s = f.add(out.get(lab, f.zero), v)
            if f.is_zero(s):
                out.pop(lab, None)
            else:
                out[lab] = s
        return out

    def combo_scale(self, c: Combo, s) -> Combo:
        f = self.field_spec.field()
        if f.is_zero(s):
            return {}
        return {lab: f.mul(s, v) for lab, v in c.items()}

    def combo_mul(self, c1: Combo, c2: Combo) -> Combo:
        f = self.field_spec.field()
        out: Combo = {}
        for x, vx in c1.items():
            for y, vy in c2.items():
                coeff = f.mul(vx, vy)
                if f.is_zero(coeff):
                    continue
                for lab, v in self.product_labels(x, y).items():
                    s = f.add(out.get(lab, f.zero), f.mul(coeff, v))
                    if f.is_zero(s):
                        out.pop(lab, None)
                    else:
                        out[lab] = s
        return out

    def combo_eq(self, c1: Combo, c2: Combo) -> bool:
        f = self.field_spec.field()
        labels = set(c1) | set(c2)
        return all(f.is_zero(f.sub(c1.get(l, f.zero), c2.get(l, f.zero))) for l in labels)

    def is_nonneg_graded(self) -> bool:
        return all(d >= 0 for _, d in self.basis)


def validate(A: GradedAlgebra) -> ValidationReport:
    """Check grading, associativity, unit laws and idempotent structure.

    Failures are collected into the report rather than raised, one entry
    per violated pair or triple.
    """
    violations: List[str] = []
    labels = A.labels()
    if len(set(labels)) != len(labels):
        violations.append("duplicate basis labels")
        return ValidationReport(False, tuple(violations))
    degs = A.degree_map()

    for (x, y), combo in A.mult.items():
        if x not in degs or y not in degs:
            violations.append(f"mult table uses unknown labels ({x},{y})")
            continue
        want = degs[x] + degs[y]
        for lab, coeff in combo.items():
            if lab not in degs:
                violations.append(f"mult({x},{y}) hits unknown label {lab}")
            elif degs[lab] != want and not A.field_spec.field().is_zero(coeff):
                violations.append(
                    f"grading: mult({x},{y}) has degree {degs[lab]} term {lab}, expected {want}"
                )

    for lab in A.unit:
        if lab not in degs:
            violations.append(f"unit uses unknown label {lab}")
        elif degs[lab] != 0:
            violations.append(f"unit has a degree {degs[lab]} term {lab}")

    for b in labels:
        e = {b: A.field_spec.field().one}
        if not A.combo_eq(A.combo_mul(A.unit, e), e):
            violations.append(f"unit law fails on the left of {b}")
        if not A.combo_eq(A.combo_mul(e, A.unit), e):
            violations.append(f"unit law fails on the right of {b}")

    one = A.field_spec.field().one
    for x in labels:
        cx = {x: one}
        for y in labels:
            cy = {y: one}
            xy = A.combo_mul(cx, cy)
            for z in labels:
                cz = {z: one}
                left = A.combo_mul(xy, cz)
                right = A.combo_mul(cx, A.combo_mul(cy, cz))
                if not A.combo_eq(left, right):
                    violations.append(f"associativity fails on ({x},{y},{z})")

    if A.idempotents is not None:
        f = A.field_spec.field()
        idem = list(A.idempotents)
        for e in idem:
            if e not in degs:
                violations.append(f"idempotent {e} is not a basis label")
                continue
            if degs[e] != 0:
                violations.append(f"idempotent {e} has degree {degs[e]}")
        known = [e for e in idem if e in degs]
        for e in known:
            ce = {e: one}
            if not A.combo_eq(A.combo_mul(ce, ce), ce):
                violations.append(f"{e} is not idempotent")
        for e1 in known:
            for e2 in known:
                if e1 != e2:
                    prod = A.combo_mul({e1: one}, {e2: one})
                    if prod:
                        violations.append(f"idempotents {e1},{e2} not orthogonal")
        total: Combo = {}
        for e in known:
            total = A.combo_add(total, {e: one})
        if not A.combo_eq(total, A.unit):
            violations.append("idempotents do not sum to the unit")
        deg0 = {lab for lab, d in A.basis if d == 0}
        if set(known) != deg0:
            violations.append("idempotents do not span degree zero")

    return ValidationReport(not violations, tuple(violations))


def detect_idempotents(A: GradedAlgebra) -> Optional[Tuple[str, ...]]:
    """Return the degree zero labels if they form an orthogonal idempotent
    decomposition of the unit, else None."""
    candidate = tuple(lab for lab, d in A.basis if d == 0)
    if not candidate:
        return None
    probe = GradedAlgebra(A.field_spec, A.basis, A.mult, A.unit, candidate)
    report = validate(probe)
    bad = [v for v in report.violations if "idempotent" in v or "orthogonal" in v]
    if bad:
        return None
    return candidate


def block_structure(A: GradedAlgebra) -> Dict[str, Tuple[int, int]]:
    """Map each basis label to its (source, target) idempotent indices.

    Label b is in block (i, j) when e_j * b = b and b * e_i = b. Requires
    idempotents; raises when the basis is not block pure.
    """
    if A.idempotents is None:
        raise InputValidationError("algebra has no idempotent decomposition")
    f = A.field_spec.field()
    one = f.one
    out: Dict[str, Tuple[int, int]] = {}
    for lab, _ in A.basis:
        cb = {lab: one}
        tgt = None
        src = None
        for i, e in enumerate(A.idempotents):
            if A.combo_eq(A.combo_mul({e: one}, cb), cb):
                if tgt is not None:
                    raise InputValidationError(f"label {lab} has two targets")
                tgt = i
            if A.combo_eq(A.combo_mul(cb, {e: one}), cb):
                if src is not None:
                    raise InputValidationError(f"label {lab} has two sources")
                src = i
        if src is None or tgt is None:
            raise InputValidationError(f"label {lab} is not block pure")
        out[lab] = (src, tgt)
    return out


def truncated_poly(n: int, k: int, field_spec: FieldSpec = RATIONALS_SPEC) -> GradedAlgebra:
    """k[t]/t^(n+1) with deg(t) = k: basis 1, t, ..., t^n, maxdeg n*k."""
    if n < 1 or k < 1:
        raise InputValidationError("truncated_poly needs n >= 1 and k >= 1")
    f = field_spec.field()

    def lab(j: int) -> str:
        return "1" if j == 0 else ("t" if j == 1 else f"t^{j}")

    basis = tuple((lab(j), j * k) for j in range(n + 1))
    mult: Dict[Tuple[str, str], Combo] = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j <= n:
                mult[(lab(i), lab(j))] = {lab(i + j): f.one}
    return GradedAlgebra(field_spec, basis, mult, {lab(0): f.one}, (lab(0),))


def _config_labels(m: int):
    def e(i):
        return f"e{i + 1}"

    def t(i, l):
        return f"t{i + 1}" if l == 1 else f"t{i + 1}^{l}"

    def a(i, j):
        if m <= 9:
            return f"a{i + 1}{j + 1}"
        return f"a{i + 1}_{j + 1}"

    return e, t, a


def build_configuration_algebra(
    graph: ConfigGraph,
    n: int,
    k: int,
    h: int,
    preset="orthogonal",
    field_spec: FieldSpec = RATIONALS_SPEC,
) -> GradedAlgebra:
    """Endomorphism style algebra of a graph configuration.

    Basis: idempotents e_i, loop generators t_i, ..., t_i^n of degree k
    per power, and arrows a_ij of degree h for both directions of every
    edge. Arrow times loop products vanish in both presets. The preset
    fixes arrow compositions; 'orthogonal' kills them all, 'zigzag' sets
    a_ji a_ij = t_i^(2h/k) and kills paths through distinct vertices. An
    explicit mapping {(x_label, y_label): combo} may be given instead.
    The result is machine validated before it is returned.
    """
    if n < 1 or k < 1 or h < 1:
        raise InputValidationError("configuration algebra needs n, k, h >= 1")
    m = len(graph.vertices)
    vidx = {v: i for i, v in enumerate(graph.vertices)}
    e, t, a = _config_labels(m)
    f = field_spec.field()
    one = f.one

    adjacency = set()
    for edge in graph.edges:
        i, j = vidx[edge.u], vidx[edge.v]
        adjacency.add((i, j))
        adjacency.add((j, i))

    basis: List[Tuple[str, int]] = [(e(i), 0) for i in range(m)]
    for i in range(m):
        for l in range(1, n + 1):
            basis.append((t(i, l), l * k))
    arrow_pairs = sorted(adjacency)
    for (i, j) in arrow_pairs:
        basis.append((a(i, j), h))

    mult: Dict[Tuple[str, str], Combo] = {}

    def put(x, y, combo):
        if combo:
            mult[(x, y)] = combo

    for i in range(m):
        put(e(i), e(i), {e(i): one})
        for l in range(1, n + 1):
            put(e(i), t(i, l), {t(i, l): one})
            put(t(i, l), e(i), {t(i, l): one})
        for l1 in range(1, n + 1):
            for l2 in range(1, n + 1):
                if l1 + l2 <= n:
                    put(t(i, l1), t(i, l2), {t(i, l1 + l2): one})
    for (i, j) in arrow_pairs:
        # a_ij acts P_i -> P_j, so e_j a_ij = a_ij = a_ij e_i
        put(e(j), a(i, j), {a(i, j): one})
        put(a(i, j), e(i), {a(i, j): one})
        # loop compositions with arrows vanish in both presets

    if preset == "zigzag":
        if (2 * h) % k != 0 or (2 * h) // k > n or (2 * h) // k < 1:
            raise InputValidationError(
                f"zigzag preset infeasible: need k | 2h and 1 <= 2h/k <= n (k={k}, h={h}, n={n})"
            )
        power = (2 * h) // k
        for (i, j) in arrow_pairs:
            # a_ji a_ij : P_i -> P_j -> P_i closes the zigzag on vertex i
            put(a(j, i), a(i, j), {t(i, power): one})
    elif preset == "orthogonal":
        pass
    elif isinstance(preset, Mapping):
        degmap = {lab: d for lab, d in basis}
        for (x, y), combo in preset.items():
            if x not in degmap or y not in degmap:
                raise InputValidationError(f"explicit table uses unknown labels ({x},{y})")
            put(x, y, dict(combo))
    else:
        raise InputValidationError(f"unknown preset {preset!r}")

    unit = {e(i): one for i in range(m)}
    A = GradedAlgebra(field_spec, tuple(basis), mult, unit, tuple(e(i) for i in range(m)))
    report = validate(A)
    if not report.ok:
        raise InputValidationError(
            "configuration algebra failed validation: " + "; ".join(report.violations[:8])
        )
    return A


# -- bimodules ----------------------------------------------------------


@dataclass(frozen=True)
class GradedBimodule:
    """Graded bimodule over a GradedAlgebra, by labeled action tables."""

    algebra: GradedAlgebra
    space: Tuple[Tuple[str, int], ...]
    left: Mapping[Tuple[str, str], Combo]  # (algebra label, module label) -> combo
    right: Mapping[Tuple[str, str], Combo]  # (module label, algebra label) -> combo

    def labels(self) -> List[str]:
        return [lab for lab, _ in self.space]

    def degree_map(self) -> Dict[str, int]:
        return {lab: d for lab, d in self.space}

    def left_act(self, alabel: str, mlabel: str) -> Combo:
        return dict(self.left.get((alabel, mlabel), {}))

    def right_act(self, mlabel: str, alabel: str) -> Combo:
        return dict(self.right.get((mlabel, alabel), {}))

    def combo_left(self, acombo: Combo, mcombo: Combo) -> Combo:
        f = self.algebra.field_spec.field()
        out: Combo = {}
        for x, vx in acombo.items():
            for mm, vm in mcombo.items():
                c = f.mul(vx, vm)
                if f.is_zero(c):
                    continue
                for lab, v in self.left_act(x, mm).items():
                    s = f.add(out.get(lab, f.zero), f.mul(c, v))
                    if f.is_zero(s):
                        out.pop(lab, None)
                    else:
                        out[lab] = s
        return out

    def combo_right(self, mcombo: Combo, acombo: Combo) -> Combo:
        f = self.algebra.field_spec.field()
        out: Combo = {}
        for mm, vm in mcombo.items():
            for x, vx in acombo.items():
                c = f.mul(vm, vx)
                if f.is_zero(c):
                    continue
                for lab, v in self.right_act(mm, x).items():
                    s = f.add(out.get(lab, f.zero), f.mul(c, v))
                    if f.is_zero(s):
                        out.pop(lab, None)
                    else:
                        out[lab] = s
        return out


def diagonal_bimodule(A: GradedAlgebra) -> GradedBimodule:
    """A as a bimodule over itself."""
    return GradedBimodule(A, tuple(A.basis), A.mult, A.mult)


def shift_bimodule(M: GradedBimodule, i: int) -> GradedBimodule:
    """Degree shift M<i> with M<i>^q = M^(q+i); maxdeg drops by i."""
    shifted = tuple((lab, d - i) for lab, d in M.space)
    return GradedBimodule(M.algebra, shifted, M.left, M.right)


def validate_bimodule(M: GradedBimodule) -> ValidationReport:
    """Check degree zero homogeneity, unitality, associativity, and the
    bimodule compatibility (a m) b = a (m b) on all basis triples."""
    A = M.algebra
    f = A.field_spec.field()
    one = f.one
    violations: List[str] = []
    adeg = A.degree_map()
    mdeg = M.degree_map()
    for (x, mm), combo in M.left.items():
        want = adeg[x] + mdeg[mm]
        for lab, coeff in combo.items():
            if mdeg[lab] != want and not f.is_zero(coeff):
                violations.append(f"left action not degree 0 on ({x},{mm})")
    for (mm, x), combo in M.right.items():
        want = mdeg[mm] + adeg[x]
        for lab, coeff in combo.items():
            if mdeg[lab] != want and not f.is_zero(coeff):
                violations.append(f"right action not degree 0 on ({mm},{x})")
    for mm in M.labels():
        cm = {mm: one}
        if not A.combo_eq(M.combo_left(A.unit, cm), cm):
            violations.append(f"unit does not act as identity on the left of {mm}")
        if not A.combo_eq(M.combo_right(cm, A.unit), cm):
            violations.append(f"unit does not act as identity on the right of {mm}")
    for x in A.labels():
        cx = {x: one}
        for y in A.labels():
            cy = {y: one}
            xy = A.combo_mul(cx, cy)
            for mm in M.labels():
                cm = {mm: one}
                if not A.combo_eq(M.combo_left(xy, cm), M.combo_left(cx, M.combo_left(cy, cm))):
                    violations.append(f"left associativity fails on ({x},{y},{mm})")
                if not A.combo_eq(M.combo_right(cm, xy), M.combo_right(M.combo_right(cm, cx), cy)):
                    violations.append(f"right associativity fails on ({mm},{x},{y})")
                if not A.combo_eq(
                    M.combo_right(M.combo_left(cx, cm), cy),
                    M.combo_left(cx, M.combo_right(cm, cy)),
                ):
                    violations.append(f"bimodule axiom fails on ({x},{mm},{y})")
    return ValidationReport(not violations, tuple(violations))


# -- JSON ----------------------------------------------------------------


def algebra_to_json_dict(A: GradedAlgebra) -> dict:
    f = A.field_spec.field()
    mult_entries = []
    for (x, y) in sorted(A.mult):
        combo = A.mult[(x, y)]
        if not combo:
            continue
        mult_entries.append(
            {
                "left": x,
                "right": y,
                "result": [{"label": lab, "coeff": f.to_str(combo[lab])} for lab in sorted(combo)],
            }
        )
    out = {
        "field": A.field_spec.tag(),
        "basis": [{"label": lab, "degree": d} for lab, d in A.basis],
        "mult": mult_entries,
        "unit": [{"label": lab, "coeff": f.to_str(A.unit[lab])} for lab in sorted(A.unit)],
    }
    if A.idempotents is not None:
        out["idempotents"] = list(A.idempotents)
    return out


def algebra_from_json_dict(data: dict) -> GradedAlgebra:
    if not isinstance(data, dict):
        raise InputValidationError("algebra JSON must be an object")
    for key in ("field", "basis", "mult"):
        if key not in data:
            raise InputValidationError(f"algebra JSON missing key {key!r}")
    field_spec = FieldSpec.parse(data["field"])
    f = field_spec.field()
    try:
        basis = tuple((str(b["label"]), int(b["degree"])) for b in data["basis"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputValidationError(f"bad basis entry: {exc}") from None
    labels = {lab for lab, _ in basis}
    mult: Dict[Tuple[str, str], Combo] = {}
    for entry in data["mult"]:
        try:
            x, y = str(entry["left"]), str(entry["right"])
            combo = {str(tm["label"]): f.parse(str(tm["coeff"])) for tm in entry["result"]}
        except (KeyError, TypeError) as exc:
            raise InputValidationError(f"bad mult entry: {exc}") from None
        if x not in labels or y not in labels:
            raise InputValidationError(f"mult entry uses unknown labels ({x},{y})")
        mult[(x, y)] = combo
    if "unit" in data:
        unit = {str(tm["label"]): f.parse(str(tm["coeff"])) for tm in data["unit"]}
    else:
        idem = data.get("idempotents")
        if not idem:
            raise InputValidationError("algebra JSON needs a unit or idempotents")
        unit = {str(lab): f.one for lab in idem}
    idempotents = tuple(str(x) for x in data["idempotents"]) if "idempotents" in data else None
    A = GradedAlgebra(field_spec, basis, mult, unit, idempotents)
    report = validate(A)
    if not report.ok:
        raise InputValidationError("algebra failed validation: " + "; ".join(report.violations[:8]))
    return A
