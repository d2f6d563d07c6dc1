"""Truncated tensor algebras over a split separable base and the
Butler-King description of Tor in terms of ideal arithmetic.

A presentation is a quiver-like datum: m base idempotents, degree
labeled generators with source and target, homogeneous relations, and a
truncation bound D. All ideal arithmetic is exact and degreewise, and
the tool refuses (rather than silently truncates) whenever an answer
could receive contributions above D.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .configurations import ConfigGraph
from .errors import InputValidationError, TruncationError
from .fields import FieldSpec, RATIONALS_SPEC
from .graded import GradedVectorSpace
from .linalg import in_span, row_space_basis, subspace_meet

Word = Tuple[str, ...]


@dataclass(frozen=True)
class Generator:
    label: str
    src: int  # 1 based vertex index
    tgt: int
    deg: int


@dataclass(frozen=True)
class TensorPresentation:
    """T(V)/I data: generators on a quiver, relations, truncation bound.

    Words are tuples of generator labels in composition order: (x, y)
    stands for x after y, so src(x) must equal tgt(y). Relations are
    linear combinations of composable words, homogeneous in degree and
    block pure, with degree at least twice the minimal generator degree.
    """

    num_vertices: int
    generators: Tuple[Generator, ...]
    relations: Tuple[Tuple[Tuple[Word, object], ...], ...]
    truncation: int
    field_spec: FieldSpec = RATIONALS_SPEC

    def __post_init__(self):
        if self.num_vertices < 1:
            raise InputValidationError("need at least one vertex")
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            raise InputValidationError("duplicate generator labels")
        for g in self.generators:
            if g.deg < 1:
                raise InputValidationError(f"generator {g.label} must have positive degree")
            if not (1 <= g.src <= self.num_vertices and 1 <= g.tgt <= self.num_vertices):
                raise InputValidationError(f"generator {g.label} has out of range vertices")
        if self.truncation < 0:
            raise InputValidationError("truncation must be >= 0")
        gen = {g.label: g for g in self.generators}
        min_deg = min((g.deg for g in self.generators), default=1)
        for rel in self.relations:
            if not rel:
                raise InputValidationError("empty relation")
            sigs = set()
            for word, _ in rel:
                if not word:
                    raise InputValidationError("relations may not contain the empty word")
                for lab in word:
                    if lab not in gen:
                        raise InputValidationError(f"relation uses unknown generator {lab}")
                for a, b in zip(word, word[1:]):
                    if gen[a].src != gen[b].tgt:
                        raise InputValidationError(f"relation word {word} is not composable")
                deg = sum(gen[lab].deg for lab in word)
                sigs.add((deg, gen[word[-1]].src, gen[word[0]].tgt))
            if len(sigs) != 1:
                raise InputValidationError(
                    "relation terms must share degree and (source, target) block"
                )
            deg = next(iter(sigs))[0]
            if deg < 2 * min_deg:
                raise InputValidationError(
                    f"relation of degree {deg} below twice the minimal generator degree"
                )
            if deg > self.truncation:
                raise InputValidationError(
                    f"relation of degree {deg} exceeds the truncation {self.truncation}"
                )

    def generator_map(self) -> Dict[str, Generator]:
        return {g.label: g for g in self.generators}

    def max_generator_degree(self) -> int:
        return max(g.deg for g in self.generators)

    def min_generator_degree(self) -> int:
        return min(g.deg for g in self.generators)

    def word_degree(self, word: Word) -> int:
        gen = self.generator_map()
        return sum(gen[lab].deg for lab in word)

    def word_block(self, word: Word) -> Tuple[int, int]:
        gen = self.generator_map()
        return (gen[word[-1]].src, gen[word[0]].tgt)


class _WordContext:
    """Cached composable word bases per degree and block."""

    def __init__(self, pres: TensorPresentation):
        self.pres = pres
        self.gen = pres.generator_map()
        self._by_degree: Dict[int, List[Word]] = {}
        self._block_words: Dict[Tuple[int, int, int], List[Word]] = {}
        self._block_index: Dict[Tuple[int, int, int], Dict[Word, int]] = {}

    def words(self, d: int) -> List[Word]:
        if d < 0:
            raise InputValidationError("negative degree")
        if d == 0:
            return []
        if d not in self._by_degree:
            out: List[Word] = []
            for g in self.pres.generators:
                if g.deg == d:
                    out.append((g.label,))
                elif g.deg < d:
                    for w in self.words(d - g.deg):
                        if self.gen[w[0]].tgt == g.src:
                            out.append((g.label,) + w)
            self._by_degree[d] = out
        return self._by_degree[d]

    def block(self, d: int, src: int, tgt: int) -> List[Word]:
        key = (d, src, tgt)
        if key not in self._block_words:
            sel = [
                w
                for w in self.words(d)
                if self.gen[w[-1]].src == src and self.gen[w[0]].tgt == tgt
            ]
            self._block_words[key] = sel
            self._block_index[key] = {w: i for i, w in enumerate(sel)}
        return self._block_words[key]

    def block_index(self, d: int, src: int, tgt: int) -> Dict[Word, int]:
        self.block(d, src, tgt)
        return self._block_index[(d, src, tgt)]

    def blocks_in_degree(self, d: int) -> List[Tuple[int, int]]:
        out = []
        for src in range(1, self.pres.num_vertices + 1):
            for tgt in range(1, self.pres.num_vertices + 1):
                if self.block(d, src, tgt):
                    out.append((src, tgt))
        return out

    def word_dim(self, d: int) -> int:
        return len(self.words(d))


@functools.lru_cache(maxsize=64)
def _context(pres: TensorPresentation) -> _WordContext:
    return _WordContext(pres)


def word_basis(pres: TensorPresentation, d: int):
    """Composable generator words of total degree d; degree 0 gives the
    base idempotent labels."""
    if d < 0:
        raise InputValidationError("degree must be >= 0")
    if d > pres.truncation:
        raise TruncationError(f"degree {d} exceeds the truncation {pres.truncation}")
    if d == 0:
        return [f"e{i}" for i in range(1, pres.num_vertices + 1)]
    return list(_context(pres).words(d))


BlockKey = Tuple[int, int, int]  # (degree, src, tgt)


@dataclass(frozen=True)
class HomogeneousIdeal:
    """Degreewise, blockwise exact subspaces of the truncated word spaces.

    Vectors are stored in reduced row echelon form over each block's word
    basis. Instances are immutable; all operations return new ideals.
    """

    pres: TensorPresentation
    blocks: Tuple[Tuple[BlockKey, Tuple[Tuple[object, ...], ...]], ...]

    @classmethod
    def from_block_dict(cls, pres, block_dict: Mapping[BlockKey, Sequence[Sequence]]):
        f = pres.field_spec.field()
        items = []
        for key in sorted(block_dict):
            vecs = [list(v) for v in block_dict[key]]
            basis = row_space_basis(vecs, f) if vecs else []
            if basis:
                items.append((key, tuple(tuple(r) for r in basis)))
        return cls(pres, tuple(items))

    def block_dict(self) -> Dict[BlockKey, Tuple[Tuple[object, ...], ...]]:
        return dict(self.blocks)

    def block_basis(self, d: int, src: int, tgt: int):
        return dict(self.blocks).get((d, src, tgt), ())

    def dim_in_degree(self, d: int) -> int:
        return sum(len(vecs) for (deg, _, _), vecs in self.blocks if deg == d)

    def dims_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (d, _, _), vecs in self.blocks:
            out[d] = out.get(d, 0) + len(vecs)
        return out

    def is_zero(self) -> bool:
        return not self.blocks

    def degree_support(self) -> List[int]:
        return sorted({d for (d, _, _), _ in self.blocks})

    def contains(self, other: "HomogeneousIdeal") -> bool:
        f = self.pres.field_spec.field()
        mine = self.block_dict()
        for key, vecs in other.blocks:
            basis = [list(v) for v in mine.get(key, ())]
            for v in vecs:
                if not basis:
                    return False
                if not in_span(list(v), basis, f):
                    return False
        return True


def zero_ideal(pres: TensorPresentation) -> HomogeneousIdeal:
    return HomogeneousIdeal(pres, ())


def augmentation_ideal(pres: TensorPresentation, up_to: Optional[int] = None) -> HomogeneousIdeal:
    """J = T(V)+: the full word space in every positive degree."""
    ctx = _context(pres)
    cap = pres.truncation if up_to is None else min(up_to, pres.truncation)
    f = pres.field_spec.field()
    blocks: Dict[BlockKey, List[List[object]]] = {}
    for d in range(1, cap + 1):
        for (src, tgt) in ctx.blocks_in_degree(d):
            nwords = len(ctx.block(d, src, tgt))
            ident = []
            for i in range(nwords):
                row = [f.zero] * nwords
                row[i] = f.one
                ident.append(row)
            blocks[(d, src, tgt)] = ident
    return HomogeneousIdeal.from_block_dict(pres, blocks)


def generator_span(pres: TensorPresentation) -> HomogeneousIdeal:
    """The span V of the length one words (not an ideal, same container)."""
    ctx = _context(pres)
    f = pres.field_spec.field()
    blocks: Dict[BlockKey, List[List[object]]] = {}
    for g in pres.generators:
        key = (g.deg, g.src, g.tgt)
        idx = ctx.block_index(g.deg, g.src, g.tgt)
        row = [f.zero] * len(idx)
        row[idx[(g.label,)]] = f.one
        blocks.setdefault(key, []).append(row)
    return HomogeneousIdeal.from_block_dict(pres, blocks)


def _relation_vectors(pres: TensorPresentation, ctx: _WordContext):
    f = pres.field_spec.field()
    out: Dict[BlockKey, List[List[object]]] = {}
    for rel in pres.relations:
        word0 = rel[0][0]
        d = pres.word_degree(word0)
        src, tgt = pres.word_block(word0)
        idx = ctx.block_index(d, src, tgt)
        row = [f.zero] * len(idx)
        for word, coeff in rel:
            row[idx[word]] = f.add(row[idx[word]], coeff)
        out.setdefault((d, src, tgt), []).append(row)
    return out


def ideal_from_relations(pres: TensorPresentation, up_to: Optional[int] = None) -> HomogeneousIdeal:
    """Two sided ideal generated by the relations, degree by degree.

    Uses the one step closure I_d = rel_d + sum_g (g I_(d-|g|) + I_(d-|g|) g),
    which peels one generator at a time off any word u r w.
    """
    ctx = _context(pres)
    cap = pres.truncation if up_to is None else min(up_to, pres.truncation)
    f = pres.field_spec.field()
    rel_vecs = _relation_vectors(pres, ctx)
    blocks: Dict[BlockKey, List[List[object]]] = {}

    def reduced(key, rows):
        basis = row_space_basis(rows, f) if rows else []
        if basis:
            blocks[key] = basis

    for d in range(1, cap + 1):
        fresh: Dict[BlockKey, List[List[object]]] = {}
        for key, rows in rel_vecs.items():
            if key[0] == d:
                fresh.setdefault(key, []).extend(rows)
        for g in pres.generators:
            d0 = d - g.deg
            if d0 < 1:
                continue
            for (dd, src, tgt), rows in list(blocks.items()):
                if dd != d0:
                    continue
                words0 = ctx.block(d0, src, tgt)
                # left multiply by g: needs src(g) matching the block target
                if g.src == tgt:
                    key = (d, src, g.tgt)
                    idx = ctx.block_index(d, src, g.tgt)
                    for row in rows:
                        new = [f.zero] * len(idx)
                        for i, c in enumerate(row):
                            if not f.is_zero(c):
                                new[idx[(g.label,) + words0[i]]] = c
                        fresh.setdefault(key, []).append(new)
                # right multiply by g: needs tgt(g) matching the block source
                if g.tgt == src:
                    key = (d, g.src, tgt)
                    idx = ctx.block_index(d, g.src, tgt)
                    for row in rows:
                        new = [f.zero] * len(idx)
                        for i, c in enumerate(row):
                            if not f.is_zero(c):
                                new[idx[words0[i] + (g.label,)]] = c
                        fresh.setdefault(key, []).append(new)
        for key, rows in fresh.items():
            reduced(key, rows + [list(v) for v in blocks.get(key, [])])
    return HomogeneousIdeal.from_block_dict(pres, blocks)


def ideal_sum(I1: HomogeneousIdeal, I2: HomogeneousIdeal) -> HomogeneousIdeal:
    if I1.pres is not I2.pres and I1.pres != I2.pres:
        raise InputValidationError("ideal operands come from different presentations")
    merged: Dict[BlockKey, List[List[object]]] = {}
    for key, vecs in list(I1.blocks) + list(I2.blocks):
        merged.setdefault(key, []).extend([list(v) for v in vecs])
    return HomogeneousIdeal.from_block_dict(I1.pres, merged)


def ideal_meet(I1: HomogeneousIdeal, I2: HomogeneousIdeal) -> HomogeneousIdeal:
    if I1.pres is not I2.pres and I1.pres != I2.pres:
        raise InputValidationError("ideal operands come from different presentations")
    f = I1.pres.field_spec.field()
    d1 = I1.block_dict()
    d2 = I2.block_dict()
    out: Dict[BlockKey, List[List[object]]] = {}
    for key in set(d1) & set(d2):
        meet = subspace_meet([list(v) for v in d1[key]], [list(v) for v in d2[key]], f)
        if meet:
            out[key] = meet
    return HomogeneousIdeal.from_block_dict(I1.pres, out)


def ideal_product(
    I1: HomogeneousIdeal, I2: HomogeneousIdeal, up_to: Optional[int] = None
) -> HomogeneousIdeal:
    """Degreewise span of pairwise products, truncated at up_to."""
    if I1.pres is not I2.pres and I1.pres != I2.pres:
        raise InputValidationError("ideal operands come from different presentations")
    pres = I1.pres
    ctx = _context(pres)
    cap = pres.truncation if up_to is None else min(up_to, pres.truncation)
    f = pres.field_spec.field()
    out: Dict[BlockKey, List[List[object]]] = {}
    for (da, sa, ta), vecs_a in I1.blocks:
        for (db, sb, tb), vecs_b in I2.blocks:
            d = da + db
            if d > cap:
                continue
            # x in block (sa -> ta), y in block (sb -> tb); x y needs sa == tb
            if sa != tb:
                continue
            key = (d, sb, ta)
            words_a = ctx.block(da, sa, ta)
            words_b = ctx.block(db, sb, tb)
            idx = ctx.block_index(d, sb, ta)
            rows = out.setdefault(key, [])
            for va in vecs_a:
                for vb in vecs_b:
                    new = [f.zero] * len(idx)
                    for i, ca in enumerate(va):
                        if f.is_zero(ca):
                            continue
                        wa = words_a[i]
                        for j, cb in enumerate(vb):
                            if f.is_zero(cb):
                                continue
                            pos = idx[wa + words_b[j]]
                            new[pos] = f.add(new[pos], f.mul(ca, cb))
                    rows.append(new)
    return HomogeneousIdeal.from_block_dict(pres, out)


def is_closed_under_generators(pres: TensorPresentation, I: HomogeneousIdeal) -> bool:
    """Two sided closure check within the truncation."""
    ctx = _context(pres)
    f = pres.field_spec.field()
    blocks = I.block_dict()
    for (d, src, tgt), vecs in I.blocks:
        words0 = ctx.block(d, src, tgt)
        for g in pres.generators:
            nd = d + g.deg
            if nd > pres.truncation:
                continue
            for side in ("left", "right"):
                if side == "left" and g.src != tgt:
                    continue
                if side == "right" and g.tgt != src:
                    continue
                key = (nd, src, g.tgt) if side == "left" else (nd, g.src, tgt)
                idx = ctx.block_index(*key)
                target = [list(v) for v in blocks.get(key, ())]
                for row in vecs:
                    new = [f.zero] * len(idx)
                    for i, c in enumerate(row):
                        if not f.is_zero(c):
                            w = (g.label,) + words0[i] if side == "left" else words0[i] + (g.label,)
                            new[idx[w]] = c
                    if any(not f.is_zero(x) for x in new):
                        if not target or not in_span(new, target, f):
                            return False
    return True


# -- quotient algebra statistics -----------------------------------------


def algebra_dims(pres: TensorPresentation, I: Optional[HomogeneousIdeal] = None) -> Dict[int, int]:
    """Graded dimensions of T(V)/I up to the truncation (degree 0 gives m)."""
    ctx = _context(pres)
    if I is None:
        I = ideal_from_relations(pres)
    dims = {0: pres.num_vertices}
    for d in range(1, pres.truncation + 1):
        total = ctx.word_dim(d)
        dims[d] = total - I.dim_in_degree(d)
    return dims


def certified_maxdeg(pres: TensorPresentation, I: Optional[HomogeneousIdeal] = None) -> int:
    """Exact maxdeg of T(V)/I, certified by a zero window of width equal to
    the maximal generator degree (after such a window the quotient stays
    zero, since every longer word has a prefix inside the window)."""
    dims = algebra_dims(pres, I)
    width = pres.max_generator_degree()
    D = pres.truncation
    for start in range(1, D - width + 2):
        if all(dims.get(start + j, 0) == 0 for j in range(width)):
            nonzero = [d for d in range(0, start) if dims.get(d, 0) > 0]
            return max(nonzero)
    raise TruncationError(
        "cannot certify finite dimensionality within the truncation; "
        "increase truncation (no nilpotence window found)"
    )


# -- Tor terms -------------------------------------------------------------


def _quotient_dims(pres, num: HomogeneousIdeal, den: HomogeneousIdeal, d_cap: int) -> Dict[int, int]:
    f = pres.field_spec.field()
    nblocks = num.block_dict()
    dblocks = den.block_dict()
    out: Dict[int, int] = {}
    for key, vecs in nblocks.items():
        d = key[0]
        if d > d_cap:
            continue
        dvecs = [list(v) for v in dblocks.get(key, ())]
        for v in dvecs:
            if not in_span(v, [list(x) for x in vecs], f):
                raise InputValidationError("denominator is not inside the numerator")
        diff = len(vecs) - len(row_space_basis(dvecs, f) if dvecs else [])
        if diff:
            out[d] = out.get(d, 0) + diff
    for key, vecs in dblocks.items():
        if key[0] <= d_cap and key not in nblocks and vecs:
            raise InputValidationError("denominator is not inside the numerator")
    return out


def tor_term(pres: TensorPresentation, q: int) -> GradedVectorSpace:
    """Graded dimensions of Tor_q over the presented algebra, with the
    internal grading induced by the tensor algebra.

    q = 0 gives the base, q = 1 the minimal generator space V/(V meet I),
    and q >= 2 the Butler-King quotients
        Tor_(2p)   = (I^p meet J I^(p-1) J) / (J I^p + I^p J)
        Tor_(2p+1) = (J I^p meet I^p J) / (I^(p+1) + J I^p J).
    Refuses when contributions could exceed the truncation.
    """
    if q < 0:
        raise InputValidationError("q must be >= 0")
    if q == 0:
        return GradedVectorSpace.from_labels(
            {0: [f"tor0.e{i}" for i in range(1, pres.num_vertices + 1)]}
        )
    I = ideal_from_relations(pres)
    if q == 1:
        V = generator_span(pres)
        meet = ideal_meet(V, I)
        dims = {}
        vdims = V.dims_by_degree()
        mdims = meet.dims_by_degree()
        for d, n in vdims.items():
            rem = n - mdims.get(d, 0)
            if rem:
                dims[d] = rem
        return GradedVectorSpace.from_dims(dims, prefix="tor1")

    a_max = certified_maxdeg(pres, I)
    d_need = q * a_max
    if d_need > pres.truncation:
        raise TruncationError(
            f"Tor_{q} may receive contributions up to degree {d_need}; "
            f"increase truncation (currently {pres.truncation})"
        )
    J = augmentation_ideal(pres, up_to=d_need)
    p = q // 2
    powers = {1: I}
    top = p + 1 if q % 2 == 1 else p
    for j in range(2, top + 1):
        powers[j] = ideal_product(powers[j - 1], I, up_to=d_need)
    if q % 2 == 0:
        if p == 1:
            mid = ideal_product(J, J, up_to=d_need)
        else:
            mid = ideal_product(ideal_product(J, powers[p - 1], up_to=d_need), J, up_to=d_need)
        num = ideal_meet(powers[p], mid)
        den = ideal_sum(
            ideal_product(J, powers[p], up_to=d_need),
            ideal_product(powers[p], J, up_to=d_need),
        )
    else:
        ji = ideal_product(J, powers[p], up_to=d_need)
        ij = ideal_product(powers[p], J, up_to=d_need)
        num = ideal_meet(ji, ij)
        den = ideal_sum(powers[p + 1], ideal_product(ji, J, up_to=d_need))
    dims = _quotient_dims(pres, num, den, d_need)
    return GradedVectorSpace.from_dims(dims, prefix=f"tor{q}")


# -- symbolic mindeg calculus ----------------------------------------------


@dataclass(frozen=True)
class AffineInP:
    """Exact affine expression slope * p + intercept."""

    slope: int
    intercept: int

    def at(self, p: int) -> int:
        return self.slope * p + self.intercept


def _check_mindeg_inputs(mu: int, nu: int):
    if not (mu >= 2 * nu >= 2):
        raise InputValidationError(
            f"mindeg data must satisfy mindeg(I) >= 2 mindeg(J) >= 2, got mu={mu}, nu={nu}"
        )


def tor_mindeg_branches(mu: int, nu: int, parity: str) -> Tuple[AffineInP, ...]:
    """Affine-in-p branches of the Tor mindeg lower bound; the bound is
    the pointwise max. Even: max(p mu, 2 nu + (p-1) mu). Odd: p mu + nu."""
    _check_mindeg_inputs(mu, nu)
    if parity == "even":
        return (AffineInP(mu, 0), AffineInP(mu, 2 * nu - mu))
    if parity == "odd":
        return (AffineInP(mu, nu),)
    raise InputValidationError(f"parity must be 'even' or 'odd', got {parity!r}")


def tor_mindeg_affine(mu: int, nu: int, parity: str) -> AffineInP:
    """Dominant affine branch (exact under the mu >= 2 nu precondition)."""
    branches = tor_mindeg_branches(mu, nu, parity)
    # with mu >= 2 nu the first even branch dominates for all p >= 1
    return branches[0]


def mindeg_bound(mu: int, nu: int, q: int) -> int:
    """Lower bound for mindeg Tor_q from mindeg(I) = mu, mindeg(J) = nu."""
    if q < 0:
        raise InputValidationError("q must be >= 0")
    p = q // 2
    branches = tor_mindeg_branches(mu, nu, "even" if q % 2 == 0 else "odd")
    return max(b.at(p) for b in branches)


# -- convenience constructors ----------------------------------------------


def single_generator_presentation(
    n: int, k: int, truncation: int, field_spec: FieldSpec = RATIONALS_SPEC
) -> TensorPresentation:
    """k<t>/(t^(n+1)) with deg t = k, truncated."""
    f = field_spec.field()
    rel = (((("t",) * (n + 1)), f.one),)
    return TensorPresentation(
        1, (Generator("t", 1, 1, k),), (rel,), truncation, field_spec
    )


def configuration_presentation(
    graph: ConfigGraph,
    n: int,
    k: int,
    h: int,
    preset: str = "orthogonal",
    truncation: int = 0,
    field_spec: FieldSpec = RATIONALS_SPEC,
) -> TensorPresentation:
    """Tensor presentation matching build_configuration_algebra: loop
    generators t_i of degree k, arrows a_ij of degree h, relations
    t_i^(n+1), arrow times loop words, and the preset's arrow compositions."""
    f = field_spec.field()
    m = len(graph.vertices)
    vidx = {v: i + 1 for i, v in enumerate(graph.vertices)}

    def t(i):
        return f"t{i}"

    def a(i, j):
        return f"a{i}{j}" if m <= 9 else f"a{i}_{j}"

    gens: List[Generator] = [Generator(t(i), i, i, k) for i in range(1, m + 1)]
    arrows = set()
    for e in graph.edges:
        i, j = vidx[e.u], vidx[e.v]
        arrows.add((i, j))
        arrows.add((j, i))
    for (i, j) in sorted(arrows):
        gens.append(Generator(a(i, j), i, j, h))

    one = f.one
    minus = f.neg(one)
    rels: List[Tuple[Tuple[Word, object], ...]] = []
    for i in range(1, m + 1):
        rels.append((((t(i),) * (n + 1), one),))
    for (i, j) in sorted(arrows):
        # a_ij t_i and t_j a_ij vanish (arrow times loop convention)
        rels.append((((a(i, j), t(i)), one),))
        rels.append((((t(j), a(i, j)), one),))
    pairs = set()
    for (i, j) in sorted(arrows):
        for (j2, l) in sorted(arrows):
            if j2 != j:
                continue
            word = (a(j, l), a(i, j))  # composite P_i -> P_j -> P_l
            if word in pairs:
                continue
            pairs.add(word)
            if preset == "zigzag" and l == i:
                if (2 * h) % k != 0 or not (1 <= (2 * h) // k <= n):
                    raise InputValidationError("zigzag preset infeasible for (n, k, h)")
                power = (2 * h) // k
                rels.append(((word, one), ((t(i),) * power, minus)))
            else:
                rels.append(((word, one),))
    return TensorPresentation(m, tuple(gens), tuple(rels), truncation, field_spec)


# -- JSON -------------------------------------------------------------------


def presentation_to_json_dict(pres: TensorPresentation) -> dict:
    f = pres.field_spec.field()
    return {
        "field": pres.field_spec.tag(),
        "vertices": pres.num_vertices,
        "generators": [
            {"label": g.label, "src": g.src, "tgt": g.tgt, "deg": g.deg}
            for g in pres.generators
        ],
        "relations": [
            [{"word": list(word), "coeff": f.to_str(c)} for word, c in rel]
            for rel in pres.relations
        ],
        "truncation": pres.truncation,
    }


def presentation_from_json_dict(data: dict) -> TensorPresentation:
    if not isinstance(data, dict):
        raise InputValidationError("presentation JSON must be an object")
    for key in ("vertices", "generators", "relations", "truncation"):
        if key not in data:
            raise InputValidationError(f"presentation JSON missing key {key!r}")
    field_spec = FieldSpec.parse(data.get("field", "rationals"))
    f = field_spec.field()
    try:
        gens = tuple(
            Generator(str(g["label"]), int(g["src"]), int(g["tgt"]), int(g["deg"]))
            for g in data["generators"]
        )
        rels = tuple(
            tuple((tuple(str(x) for x in term["word"]), f.parse(str(term["coeff"]))) for term in rel)
            for rel in data["relations"]
        )
        return TensorPresentation(
            int(data["vertices"]), gens, rels, int(data["truncation"]), field_spec
        )
    except (KeyError, TypeError) as exc:
        raise InputValidationError(f"bad presentation JSON: {exc}") from None
