"""Bigraded Hochschild cohomology of graded algebras.

Two independent engines are provided. The default computes HH^{p,q}(A,M)
from the base-relative normalized bar complex: cochains are block pure
maps on tensor words in the positive part of A, and only words whose
internal degree can hit a nonzero component of M are ever materialized.
The absolute bar complex over the ground field is retained as a slow
reference engine, and explicitly supplied periodic resolutions give a
third route for cross validation.

Sign convention: the classical alternating sum, (-1)^i on the i-th
multiplication and (-1)^(p+1) on the outer right action. The convention
is validated rather than trusted: d compose d is asserted to vanish on
every assembled slice in the test suite, and dimensions are convention
independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import (
    InputValidationError,
    NonExactResolutionError,
    ResourceCapError,
)
from .graded import (
    GradedAlgebra,
    GradedBimodule,
    block_structure,
    detect_idempotents,
    diagonal_bimodule,
    validate,
)
from .linalg import (
    _reduce_against,
    is_zero_rows,
    kernel_rows,
    matmul,
    rank_rows,
    row_space_basis,
    rref_rows,
)

DEFAULT_MAX_WORDS = 2_000_000

MODES = ("relative_normalized", "absolute")


@dataclass(frozen=True, eq=False)
class _Tables:
    """Integer indexed view of an algebra and a bimodule over it."""

    field: object
    n_alg: int
    alg_degs: Tuple[int, ...]
    alg_src: Tuple[int, ...]
    alg_tgt: Tuple[int, ...]
    mult: Dict[Tuple[int, int], Dict[int, object]]
    n_mod: int
    mod_degs: Tuple[int, ...]
    mod_src: Tuple[int, ...]
    mod_tgt: Tuple[int, ...]
    left: Dict[Tuple[int, int], Dict[int, object]]
    right: Dict[Tuple[int, int], Dict[int, object]]
    alg_labels: Tuple[str, ...]
    mod_labels: Tuple[str, ...]
    positive: Tuple[int, ...]


def _require_valid(A: GradedAlgebra):
    report = validate(A)
    if not report.ok:
        raise InputValidationError(
            "algebra failed validation: " + "; ".join(report.violations[:6])
        )


def _module_blocks(A: GradedAlgebra, M: GradedBimodule):
    """(src, tgt) of each module basis label via the idempotent actions."""
    f = A.field_spec.field()
    one = f.one
    src = {}
    tgt = {}
    for lab, _ in M.space:
        cm = {lab: one}
        s = t = None
        for i, e in enumerate(A.idempotents):
            if A.combo_eq(M.combo_left({e: one}, cm), cm):
                t = i
            if A.combo_eq(M.combo_right(cm, {e: one}), cm):
                s = i
        if s is None or t is None:
            raise InputValidationError(f"module label {lab} is not block pure")
        src[lab] = s
        tgt[lab] = t
    return src, tgt


def _build_tables(A: GradedAlgebra, M: GradedBimodule, need_blocks: bool) -> _Tables:
    f = A.field_spec.field()
    alg_labels = tuple(A.labels())
    aidx = {lab: i for i, lab in enumerate(alg_labels)}
    alg_degs = tuple(d for _, d in A.basis)
    mod_labels = tuple(M.labels())
    midx = {lab: i for i, lab in enumerate(mod_labels)}
    mod_degs = tuple(d for _, d in M.space)

    if need_blocks:
        blocks = block_structure(A)
        alg_src = tuple(blocks[lab][0] for lab in alg_labels)
        alg_tgt = tuple(blocks[lab][1] for lab in alg_labels)
        msrc, mtgt = _module_blocks(A, M)
        mod_src = tuple(msrc[lab] for lab in mod_labels)
        mod_tgt = tuple(mtgt[lab] for lab in mod_labels)
    else:
        alg_src = tuple(0 for _ in alg_labels)
        alg_tgt = tuple(0 for _ in alg_labels)
        mod_src = tuple(0 for _ in mod_labels)
        mod_tgt = tuple(0 for _ in mod_labels)

    mult = {}
    for (x, y), combo in A.mult.items():
        mult[(aidx[x], aidx[y])] = {aidx[lab]: v for lab, v in combo.items()}
    left = {}
    for (x, mm), combo in M.left.items():
        left[(aidx[x], midx[mm])] = {midx[lab]: v for lab, v in combo.items()}
    right = {}
    for (mm, x), combo in M.right.items():
        right[(midx[mm], aidx[x])] = {midx[lab]: v for lab, v in combo.items()}

    positive = tuple(i for i, d in enumerate(alg_degs) if d > 0)
    return _Tables(
        f,
        len(alg_labels),
        alg_degs,
        alg_src,
        alg_tgt,
        mult,
        len(mod_labels),
        mod_degs,
        mod_src,
        mod_tgt,
        left,
        right,
        alg_labels,
        mod_labels,
        positive,
    )


def _letters(tb: _Tables, mode: str) -> Tuple[int, ...]:
    return tb.positive if mode == "relative_normalized" else tuple(range(tb.n_alg))


def _enumerate_words(tb: _Tables, p: int, targets, mode: str, max_words: int):
    """Composable letter tuples of length p with total degree in targets.

    Depth first and deterministic; partial words are pruned as soon as no
    target degree stays reachable. Raises when the cap is exceeded."""
    if p == 0:
        return [()]
    letters = _letters(tb, mode)
    if not letters or not targets:
        return []
    relative = mode == "relative_normalized"
    degs = tb.alg_degs
    min_d = min(degs[i] for i in letters)
    max_d = max(degs[i] for i in letters)
    tmin, tmax = min(targets), max(targets)
    out: List[Tuple[int, ...]] = []

    def extend(word, total):
        if len(out) > max_words:
            raise ResourceCapError(
                f"slice exceeds the word cap ({max_words}); raise max_words"
            )
        rem = p - len(word)
        if rem == 0:
            if total in targets:
                out.append(word)
            return
        if total + rem * min_d > tmax or total + rem * max_d < tmin:
            return
        last = word[-1]
        for i in letters:
            if relative and tb.alg_src[last] != tb.alg_tgt[i]:
                continue
            extend(word + (i,), total + degs[i])

    for i in letters:
        extend((i,), degs[i])
    return out


def _word_degree_states(tb: _Tables, p: int, mode: str) -> Dict[Tuple[int, int, int], int]:
    """Count length p words per (degree, src of word, tgt of word) by
    transfer-style dynamic programming; used only to locate feasible
    internal degrees cheaply."""
    letters = _letters(tb, mode)
    relative = mode == "relative_normalized"
    states: Dict[Tuple[int, int, int], int] = {}
    for i in letters:
        key = (tb.alg_degs[i], tb.alg_src[i], tb.alg_tgt[i])
        states[key] = states.get(key, 0) + 1
    for _ in range(p - 1):
        nxt: Dict[Tuple[int, int, int], int] = {}
        for (d, src_last, tgt_first), cnt in states.items():
            for i in letters:
                if relative and src_last != tb.alg_tgt[i]:
                    continue
                key = (d + tb.alg_degs[i], tb.alg_src[i], tgt_first)
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return states


def _module_slots(tb: _Tables, mode: str):
    slots: Dict[Tuple[int, int, int], List[int]] = {}
    for i in range(tb.n_mod):
        if mode == "relative_normalized":
            key = (tb.mod_degs[i], tb.mod_src[i], tb.mod_tgt[i])
        else:
            key = (tb.mod_degs[i], 0, 0)
        slots.setdefault(key, []).append(i)
    return slots


def _word_block(tb: _Tables, word) -> Tuple[int, int]:
    return (tb.alg_src[word[-1]], tb.alg_tgt[word[0]])


def _cochain_basis(tb: _Tables, p: int, q: int, mode: str, max_words: int):
    """Basis of degree q cochains on length p words, grouped by word key.

    Word keys are letter tuples; for p = 0 the keys are the diagonal
    vertex markers ('v', i) in relative mode and () in absolute mode.
    Returns (groups, total size) with groups values [(column, module idx)].
    """
    slots = _module_slots(tb, mode)
    groups: Dict[object, List[Tuple[int, int]]] = {}
    col = 0
    if p == 0:
        if mode == "relative_normalized":
            for i in range(tb.n_mod):
                if tb.mod_degs[i] == q and tb.mod_src[i] == tb.mod_tgt[i]:
                    groups.setdefault(("v", tb.mod_src[i]), []).append((col, i))
                    col += 1
        else:
            for i in range(tb.n_mod):
                if tb.mod_degs[i] == q:
                    groups.setdefault((), []).append((col, i))
                    col += 1
        return groups, col
    targets = {d - q for d in set(tb.mod_degs)}
    words = _enumerate_words(tb, p, targets, mode, max_words)
    for w in words:
        total = sum(tb.alg_degs[i] for i in w)
        if mode == "relative_normalized":
            src, tgt = _word_block(tb, w)
            ms = slots.get((total + q, src, tgt), [])
        else:
            ms = slots.get((total + q, 0, 0), [])
        for m in ms:
            groups.setdefault(w, []).append((col, m))
            col += 1
    return groups, col


def _delta_matrix(tb: _Tables, p: int, groups_p, ncols: int, groups_p1, mode: str):
    """Matrix of the Hochschild cochain differential C^p -> C^(p+1)."""
    f = tb.field
    nrows = sum(len(v) for v in groups_p1.values())
    if nrows == 0 or ncols == 0:
        return [], nrows, ncols
    row_of: Dict[Tuple[object, int], int] = {}
    r = 0
    for w, pairs in groups_p1.items():
        for _, m in pairs:
            row_of[(w, m)] = r
            r += 1
    rows = [[f.zero] * ncols for _ in range(nrows)]
    relative = mode == "relative_normalized"
    sign_last = f.one if (p + 1) % 2 == 0 else f.neg(f.one)

    for w1 in groups_p1:
        first = w1[0]
        last = w1[-1]
        # left action term: a_1 . f(a_2 ... a_(p+1))
        tail = w1[1:] if p >= 1 else (("v", tb.alg_src[first]) if relative else ())
        for c0, m0 in groups_p.get(tail, ()):
            for m1, v in tb.left.get((first, m0), {}).items():
                rr = row_of.get((w1, m1))
                if rr is not None:
                    rows[rr][c0] = f.add(rows[rr][c0], v)
        # contraction terms: (-1)^i f(... a_i a_(i+1) ...)
        for i in range(1, p + 1):
            prod = tb.mult.get((w1[i - 1], w1[i]))
            if not prod:
                continue
            sgn = f.one if i % 2 == 0 else f.neg(f.one)
            for z, cz in prod.items():
                contracted = w1[: i - 1] + (z,) + w1[i + 1 :]
                coeff = f.mul(sgn, cz)
                for c0, m0 in groups_p.get(contracted, ()):
                    rr = row_of.get((w1, m0))
                    if rr is not None:
                        rows[rr][c0] = f.add(rows[rr][c0], coeff)
        # right action term: (-1)^(p+1) f(a_1 ... a_p) . a_(p+1)
        head = w1[:-1] if p >= 1 else (("v", tb.alg_tgt[last]) if relative else ())
        for c0, m0 in groups_p.get(head, ()):
            for m1, v in tb.right.get((m0, last), {}).items():
                rr = row_of.get((w1, m1))
                if rr is not None:
                    rows[rr][c0] = f.add(rows[rr][c0], f.mul(sign_last, v))
    return rows, nrows, ncols


@dataclass(frozen=True)
class HHResult:
    p: int
    q: int
    dim: int
    mode: str
    slice_dims: Tuple[int, int, int]  # dims of C^(p-1), C^p, C^(p+1)
    cocycles: Optional[tuple] = None


def _prepare(A: GradedAlgebra, M: Optional[GradedBimodule], mode: str):
    if mode not in MODES:
        raise InputValidationError(f"unknown mode {mode!r}")
    _require_valid(A)
    if M is None:
        M = diagonal_bimodule(A)
    if mode == "relative_normalized":
        if A.idempotents is None:
            detected = detect_idempotents(A)
            if detected is None:
                raise InputValidationError(
                    "relative mode needs an idempotent decomposition of degree zero"
                )
            A = GradedAlgebra(A.field_spec, A.basis, A.mult, A.unit, detected)
            M = GradedBimodule(A, M.space, M.left, M.right)
        if not A.is_nonneg_graded():
            raise InputValidationError("relative mode needs a non-negatively graded algebra")
    return A, M


def hh_bar(
    A: GradedAlgebra,
    M: Optional[GradedBimodule] = None,
    p: int = 0,
    q: int = 0,
    mode: str = "relative_normalized",
    want_cocycles: bool = False,
    max_words: int = DEFAULT_MAX_WORDS,
) -> HHResult:
    """dim HH^{p,q}(A, M) from the bar complex, with representatives on
    request. M defaults to the diagonal bimodule. The two modes agree;
    the relative one is the fast default."""
    if p < 0:
        raise InputValidationError("p must be >= 0")
    A, M = _prepare(A, M, mode)
    tb = _build_tables(A, M, need_blocks=(mode == "relative_normalized"))
    g_prev, n_prev = (_cochain_basis(tb, p - 1, q, mode, max_words) if p >= 1 else ({}, 0))
    g_here, n_here = _cochain_basis(tb, p, q, mode, max_words)
    g_next, n_next = _cochain_basis(tb, p + 1, q, mode, max_words)

    if n_here == 0:
        return HHResult(p, q, 0, mode, (n_prev, 0, n_next))

    f = tb.field
    d_here, _, _ = _delta_matrix(tb, p, g_here, n_here, g_next, mode)
    d_prev = []
    if p >= 1 and n_prev:
        d_prev, _, _ = _delta_matrix(tb, p - 1, g_prev, n_prev, g_here, mode)

    if d_here:
        ker = kernel_rows(d_here, f, n_here)
    else:
        ker = [[f.one if i == j else f.zero for j in range(n_here)] for i in range(n_here)]
    if d_prev:
        im_basis = row_space_basis([list(col) for col in zip(*d_prev)], f)
    else:
        im_basis = []
    dim = len(ker) - len(im_basis)

    cocycles = None
    if want_cocycles:
        pivots, red = rref_rows(im_basis, f) if im_basis else ([], [])
        reps = []
        rows_acc = [list(r) for r in red]
        piv_acc = list(pivots)
        for v in ker:
            rem = _reduce_against(v, piv_acc, rows_acc, f)
            if any(not f.is_zero(x) for x in rem):
                reps.append(list(v))
                piv_acc, rows_acc = rref_rows(rows_acc + [rem], f)
        flat = []
        for w, pairs in g_here.items():
            for c0, m in pairs:
                flat.append((w, c0, m))
        flat.sort(key=lambda t: t[1])
        out = []
        for rep in reps:
            terms = []
            for w, c0, m in flat:
                if not f.is_zero(rep[c0]):
                    if isinstance(w, tuple) and w and isinstance(w[0], int):
                        word_labels = tuple(tb.alg_labels[i] for i in w)
                    else:
                        word_labels = ()
                    terms.append((word_labels, tb.mod_labels[m], f.to_str(rep[c0])))
            out.append(tuple(terms))
        cocycles = tuple(out)

    return HHResult(p, q, dim, mode, (n_prev, n_here, n_next), cocycles)


def cochain_dim(
    A: GradedAlgebra,
    M: Optional[GradedBimodule],
    p: int,
    q: int,
    mode: str = "relative_normalized",
    max_words: int = DEFAULT_MAX_WORDS,
) -> int:
    A, M = _prepare(A, M, mode)
    tb = _build_tables(A, M, need_blocks=(mode == "relative_normalized"))
    _, n = _cochain_basis(tb, p, q, mode, max_words)
    return n


def nonempty_internal_degrees(
    A: GradedAlgebra,
    M: Optional[GradedBimodule] = None,
    p: int = 0,
    mode: str = "relative_normalized",
) -> List[int]:
    """Internal degrees q with a nonzero (p, q) cochain slice."""
    A, M = _prepare(A, M, mode)
    tb = _build_tables(A, M, need_blocks=(mode == "relative_normalized"))
    slots = _module_slots(tb, mode)
    if p == 0:
        out = set()
        for (d, s, t), ms in slots.items():
            if mode != "relative_normalized" or s == t:
                if ms:
                    out.add(d)
        return sorted(out)
    states = _word_degree_states(tb, p, mode)
    out = set()
    for (wd, src, tgt), cnt in states.items():
        if not cnt:
            continue
        for (md, ms, mt), mlist in slots.items():
            if not mlist:
                continue
            if mode == "relative_normalized" and (ms, mt) != (src, tgt):
                continue
            out.add(md - wd)
    return sorted(out)


def kadeishvili_scan(
    A: GradedAlgebra,
    q_max: int,
    mode: str = "relative_normalized",
    max_words: int = DEFAULT_MAX_WORDS,
) -> Dict[int, int]:
    """Table q -> dim HH^{q, 2-q}(A, A) for 3 <= q <= q_max.

    An all zero table is the finite slice of the vanishing asked for by
    the Kadeishvili criterion; all-q statements come from certificates.
    """
    out: Dict[int, int] = {}
    for q in range(3, q_max + 1):
        out[q] = hh_bar(A, None, q, 2 - q, mode=mode, max_words=max_words).dim
    return out


# -- reduced bar chain slices (the Tor side of the same words) ---------------


def bar_chain_slice(A: GradedAlgebra, p: int, q: int, max_words: int = DEFAULT_MAX_WORDS):
    """Degree q slice of the reduced chain complex of tensor words.

    Returns (words_p, words_(p-1), matrix): the alternating sum of the
    interior contractions maps length p words of internal degree q to
    length p-1 words of the same degree. The words listed for length p
    are exactly a basis of the degree q part of the p-fold tensor power
    of the positive part over the base.
    """
    A, M = _prepare(A, None, "relative_normalized")
    tb = _build_tables(A, M, need_blocks=True)
    f = tb.field
    words_p = _enumerate_words(tb, p, {q}, "relative_normalized", max_words)
    words_prev = (
        _enumerate_words(tb, p - 1, {q}, "relative_normalized", max_words) if p >= 1 else []
    )
    if p == 1:
        words_prev = []  # degree q > 0 part of the base is zero
    idx_prev = {w: i for i, w in enumerate(words_prev)}
    rows = [[f.zero] * len(words_p) for _ in range(len(words_prev))]
    for c, w in enumerate(words_p):
        for i in range(1, p):
            prod = tb.mult.get((w[i - 1], w[i]))
            if not prod:
                continue
            sgn = f.one if i % 2 == 0 else f.neg(f.one)
            for z, cz in prod.items():
                contracted = w[: i - 1] + (z,) + w[i + 1 :]
                r = idx_prev.get(contracted)
                if r is not None:
                    rows[r][c] = f.add(rows[r][c], f.mul(sgn, cz))
    labels_p = [tuple(tb.alg_labels[i] for i in w) for w in words_p]
    labels_prev = [tuple(tb.alg_labels[i] for i in w) for w in words_prev]
    return labels_p, labels_prev, rows


# -- periodic resolutions -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class PeriodicResolutionSpec:
    """Free resolution data: term shifts s_0..s_L and multipliers mu_1..mu_L.

    Term j is the free rank one module over the enveloping algebra shifted
    by s_j; the differential into term j-1 is right multiplication by
    mu_j, a combination of (left label, right label, coeff) pairs.
    """

    shifts: Tuple[int, ...]
    multipliers: Tuple[Tuple[Tuple[str, str, object], ...], ...]

    def __post_init__(self):
        if len(self.multipliers) != len(self.shifts) - 1:
            raise InputValidationError("need one multiplier per consecutive shift pair")

    def length(self) -> int:
        return len(self.multipliers)


def periodic_spec_truncated_poly(n: int, k: int, length: int) -> PeriodicResolutionSpec:
    """The 2-periodic resolution of k[t]/t^(n+1) with deg t = k: shifts
    -i(n+1)k and -(i(n+1)+1)k, multipliers t x 1 - 1 x t and
    sum_j t^(n-j) x t^j, alternating."""

    def lab(j):
        return "1" if j == 0 else ("t" if j == 1 else f"t^{j}")

    shifts = []
    for qq in range(length + 1):
        i = qq // 2
        shifts.append(-(i * (n + 1)) * k if qq % 2 == 0 else -(i * (n + 1) + 1) * k)
    one = Fraction(1)
    u = (("t", "1", one), ("1", "t", -one))
    v = tuple((lab(n - j), lab(j), one) for j in range(n + 1))
    multipliers = tuple(u if step % 2 == 1 else v for step in range(1, length + 1))
    return PeriodicResolutionSpec(tuple(shifts), multipliers)


def _env_mul(A: GradedAlgebra, m1, m2):
    """Product in the enveloping algebra: (x, y)(x', y') = (x x', y' y)."""
    f = A.field_spec.field()
    out: Dict[Tuple[str, str], object] = {}
    for (x, y, c1) in m1:
        for (x2, y2, c2) in m2:
            lefts = A.product_labels(x, x2)
            if not lefts:
                continue
            rights = A.product_labels(y2, y)
            if not rights:
                continue
            for lx, cx in lefts.items():
                for ly, cy in rights.items():
                    c = f.mul(f.mul(c1, c2), f.mul(cx, cy))
                    if f.is_zero(c):
                        continue
                    key = (lx, ly)
                    s = f.add(out.get(key, f.zero), c)
                    if f.is_zero(s):
                        out.pop(key, None)
                    else:
                        out[key] = s
    return out


def _multiplier_degree(A: GradedAlgebra, mu) -> int:
    f = A.field_spec.field()
    degs = A.degree_map()
    found = {degs[x] + degs[y] for (x, y, c) in mu if not f.is_zero(c)}
    if len(found) != 1:
        raise InputValidationError("multiplier is not homogeneous")
    return found.pop()


def validate_periodic_spec(
    A: GradedAlgebra, spec: PeriodicResolutionSpec, degree_bound: Optional[int] = None
):
    """Check homogeneity, zero composites, and degreewise exactness.

    Exactness is verified at the augmentation, at term 0, and at every
    interior term (the last supplied term has no successor to check
    against), for each internal degree up to the bound. Failures raise
    NonExactResolutionError naming the degree and position.
    """
    _require_valid(A)
    f = A.field_spec.field()
    degs = A.degree_map()
    for j, mu in enumerate(spec.multipliers, start=1):
        want = spec.shifts[j - 1] - spec.shifts[j]
        if want < 0:
            raise InputValidationError("shifts must be weakly decreasing")
        got = _multiplier_degree(A, mu)
        if got != want:
            raise InputValidationError(f"multiplier {j} has degree {got}, shifts demand {want}")
    for j in range(1, spec.length()):
        if _env_mul(A, spec.multipliers[j], spec.multipliers[j - 1]):
            raise InputValidationError(f"composite of multipliers {j + 1} and {j} is nonzero")

    labels = A.labels()
    amax = max(d for _, d in A.basis)
    if degree_bound is None:
        degree_bound = 2 * amax + max(-s for s in spec.shifts)
    pairs = [(x, y) for x in labels for y in labels]
    pair_deg = {(x, y): degs[x] + degs[y] for (x, y) in pairs}

    def env_basis(d):
        return [pr for pr in pairs if pair_deg[pr] == d]

    for d in range(0, degree_bound + 1):
        dims = [len(env_basis(d + s)) for s in spec.shifts]
        # augmentation piece in internal degree d
        dom0 = env_basis(d + spec.shifts[0])
        a_labs = sorted(lab for lab in labels if degs[lab] == d)
        aidx = {lab: i for i, lab in enumerate(a_labs)}
        aug_rows = [[f.zero] * len(dom0) for _ in range(len(a_labs))]
        for c, (x, y) in enumerate(dom0):
            for lab, v in A.product_labels(x, y).items():
                aug_rows[aidx[lab]][c] = f.add(aug_rows[aidx[lab]][c], v)
        rank_aug = rank_rows(aug_rows, f) if aug_rows else 0
        if rank_aug != len(a_labs):
            raise NonExactResolutionError(
                f"augmentation not surjective in internal degree {d}", degree=d, position=0
            )

        matrices = [aug_rows]
        ranks = [rank_aug]
        for j in range(1, spec.length() + 1):
            dom = env_basis(d + spec.shifts[j])
            cod = env_basis(d + spec.shifts[j - 1])
            cidx = {pr: i for i, pr in enumerate(cod)}
            rows = [[f.zero] * len(dom) for _ in range(len(cod))]
            for c, (a, b) in enumerate(dom):
                for (lx, ly), v in _env_mul(A, ((a, b, f.one),), spec.multipliers[j - 1]).items():
                    rr = cidx.get((lx, ly))
                    if rr is not None:
                        rows[rr][c] = f.add(rows[rr][c], v)
            matrices.append(rows)
            ranks.append(rank_rows(rows, f) if rows else 0)

        # exactness at term j needs im(d_(j+1)) inside ker(d_j) with equal
        # dimensions; d_0 is the augmentation
        for j in range(0, spec.length()):
            prev, cur = matrices[j], matrices[j + 1]
            if prev and cur and cur[0]:
                composite = matmul(prev, cur, f)
                if not is_zero_rows(composite, f):
                    raise NonExactResolutionError(
                        f"resolution not exact at position {j} in internal degree {d}",
                        degree=d,
                        position=j,
                    )
            ker_j = dims[j] - ranks[j]
            if ker_j != ranks[j + 1]:
                raise NonExactResolutionError(
                    f"resolution not exact at position {j} in internal degree {d}",
                    degree=d,
                    position=j,
                )


def hh_resolution(
    A: GradedAlgebra,
    spec: PeriodicResolutionSpec,
    M: Optional[GradedBimodule] = None,
    p: int = 0,
    q: int = 0,
    check: bool = True,
    degree_bound: Optional[int] = None,
) -> int:
    """dim HH^{p,q}(A, M) from a supplied free resolution.

    Degree zero homs out of the shifted free term j form the degree
    q - s_j part of M, and the induced differential is the multiplier
    action m -> sum x m y. Needs p + 1 <= resolution length.
    """
    if p < 0:
        raise InputValidationError("p must be >= 0")
    _require_valid(A)
    if M is None:
        M = diagonal_bimodule(A)
    if p + 1 > spec.length():
        raise InputValidationError(
            f"resolution of length {spec.length()} is too short for p = {p}"
        )
    if check:
        validate_periodic_spec(A, spec, degree_bound)
    f = A.field_spec.field()
    mdeg = M.degree_map()
    mlabels = M.labels()

    def cochain_labels(j):
        want = q - spec.shifts[j]
        return [lab for lab in mlabels if mdeg[lab] == want]

    def delta(j):
        dom = cochain_labels(j)
        cod = cochain_labels(j + 1)
        cidx = {lab: i for i, lab in enumerate(cod)}
        mu = spec.multipliers[j]
        rows = [[f.zero] * len(dom) for _ in range(len(cod))]
        for c, mm in enumerate(dom):
            acc: Dict[str, object] = {}
            for (x, y, coeff) in mu:
                part = M.combo_right(M.combo_left({x: coeff}, {mm: f.one}), {y: f.one})
                for lab, v in part.items():
                    s = f.add(acc.get(lab, f.zero), v)
                    if f.is_zero(s):
                        acc.pop(lab, None)
                    else:
                        acc[lab] = s
            for lab, v in acc.items():
                rr = cidx.get(lab)
                if rr is not None:
                    rows[rr][c] = v
        return rows, len(dom)

    d_here, n_here = delta(p)
    if n_here == 0:
        return 0
    rank_here = rank_rows(d_here, f) if d_here else 0
    ker = n_here - rank_here
    if p == 0:
        return ker
    d_prev, _ = delta(p - 1)
    rank_prev = rank_rows(d_prev, f) if d_prev else 0
    return ker - rank_prev
