"""Twisted free modules, homogeneous maps, presented modules, and strands.

Twist convention, fixed globally: R(a)_d = R_{a+d}, so the generator of
R(-t) sits in internal degree t.  A map F -> G of internal degree t with
F = (+)R(a_j) and G = (+)R(b_i) must have entry (i, j) zero or homogeneous of
degree t + b_i - a_j; this is enforced at construction, and it is exactly what
makes every strand matrix well typed.

Modules are always presented (a free module is the cokernel of the empty
presentation) so that strand computation has a single code path.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import NonHomogeneousError
from .exact import ExactMatrix, StrandSpace, induced_map, kernel_basis
from .rings import GradedRing, Poly, monomial_basis, mult_matrix

__all__ = [
    "FreeModule",
    "GradedMap",
    "PresentedModule",
    "HilbertTable",
    "TableEntry",
    "strand",
    "mult_operator",
    "annihilator_strand",
    "hilbert_row",
]


class FreeModule:
    """F = (+)_j R(a_j); ``twists`` lists the a_j in generator order."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring: GradedRing, twists: Iterable[int]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "twists", tuple(int(t) for t in twists))

    def __setattr__(self, name, value):
        raise AttributeError("FreeModule is immutable")

    @property
    def rank(self) -> int:
        return len(self.twists)

    def strand_dim(self, d: int) -> int:
        return sum(len(monomial_basis(self.ring, d + a)) for a in self.twists)

    def strand_block_dims(self, d: int):
        return [len(monomial_basis(self.ring, d + a)) for a in self.twists]

    def twisted(self, n: int) -> "FreeModule":
        return FreeModule(self.ring, tuple(a + n for a in self.twists))

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return f"FreeModule{self.twists}"


def free_module_sum(modules: Iterable[FreeModule]) -> FreeModule:
    modules = list(modules)
    ring = modules[0].ring
    twists: list[int] = []
    for m in modules:
        if m.ring != ring:
            raise ValueError("summands over different rings")
        twists.extend(m.twists)
    return FreeModule(ring, twists)


class GradedMap:
    """Homogeneous matrix of polynomials between twisted free modules."""

    __slots__ = ("source", "target", "entries", "internal_degree", "_strand_cache")

    def __init__(self, source: FreeModule, target: FreeModule, entries, internal_degree: int = 0):
        if source.ring != target.ring:
            raise ValueError("source and target over different rings")
        ring = source.ring
        rows = tuple(tuple(e for e in row) for row in entries)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise ValueError(
                f"entry matrix must be {target.rank}x{source.rank}, "
                f"got {len(rows)}x{len(rows[0]) if rows else 0}"
            )
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if e.ring != ring:
                    raise ValueError("entry over the wrong ring")
                if e.is_zero():
                    continue
                deg = e.degree()
                want = internal_degree + target.twists[i] - source.twists[j]
                if deg != want:
                    raise NonHomogeneousError(
                        f"entry ({i},{j}) has degree {deg}, expected {want}"
                    )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "internal_degree", int(internal_degree))
        object.__setattr__(self, "_strand_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("GradedMap is immutable")

    @property
    def ring(self) -> GradedRing:
        return self.source.ring

    @classmethod
    def identity(cls, module: FreeModule) -> "GradedMap":
        ring = module.ring
        one = ring.one()
        zero = ring.zero()
        entries = [
            [one if i == j else zero for j in range(module.rank)] for i in range(module.rank)
        ]
        return cls(module, module, entries)

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule, internal_degree: int = 0) -> "GradedMap":
        zero = source.ring.zero()
        entries = [[zero] * source.rank for _ in range(target.rank)]
        return cls(source, target, entries, internal_degree)

    def is_zero_map(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.source == other.source
            and self.target == other.target
            and self.internal_degree == other.internal_degree
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.source, self.target, self.internal_degree))

    def __repr__(self):
        return (
            f"GradedMap({self.target.rank}x{self.source.rank}, "
            f"deg {self.internal_degree})"
        )

    # -- algebra ---------------------------------------------------------------
    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other (matrix product self * other)."""
        if other.target != self.source:
            raise ValueError("composition endpoint mismatch")
        ring = self.ring
        zero = ring.zero()
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = zero
                for k in range(self.source.rank):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMap(
            other.source, self.target, rows, self.internal_degree + other.internal_degree
        )

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (
            self.source != other.source
            or self.target != other.target
            or self.internal_degree != other.internal_degree
        ):
            raise ValueError("sum endpoint mismatch")
        rows = [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)
        ]
        return GradedMap(self.source, self.target, rows, self.internal_degree)

    def scale(self, c) -> "GradedMap":
        rows = [[e.scale(c) for e in row] for row in self.entries]
        return GradedMap(self.source, self.target, rows, self.internal_degree)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1 if self.ring.field.is_rational else self.ring.field.characteristic - 1)

    def twisted(self, n: int) -> "GradedMap":
        return GradedMap(
            self.source.twisted(n), self.target.twisted(n), self.entries, self.internal_degree
        )

    def tensor(self, other: "GradedMap") -> "GradedMap":
        """Kronecker product; generator (p, q) of F (x) G is at index p*rank(G)+q."""
        if self.ring != other.ring:
            raise ValueError("tensor over different rings")
        src = _tensor_module(self.source, other.source)
        tgt = _tensor_module(self.target, other.target)
        rows = []
        for p in range(self.target.rank):
            for q in range(other.target.rank):
                row = []
                for p2 in range(self.source.rank):
                    for q2 in range(other.source.rank):
                        row.append(self.entries[p][p2] * other.entries[q][q2])
                rows.append(row)
        return GradedMap(src, tgt, rows, self.internal_degree + other.internal_degree)

    def transpose_dual(self) -> "GradedMap":
        """Entrywise transpose Hom(-, R): source/target twists negate."""
        src = FreeModule(self.ring, tuple(-b for b in self.target.twists))
        tgt = FreeModule(self.ring, tuple(-a for a in self.source.twists))
        rows = [
            [self.entries[i][j] for i in range(self.target.rank)]
            for j in range(self.source.rank)
        ]
        return GradedMap(src, tgt, rows, self.internal_degree)

    # -- strands -----------------------------------------------------------------
    def strand_matrix(self, d: int) -> ExactMatrix:
        """Matrix of F_d -> G_{d+internal_degree} on monomial strand bases."""
        cached = self._strand_cache.get(d)
        if cached is not None:
            return cached
        ring = self.ring
        src_dims = self.source.strand_block_dims(d)
        tgt_dims = self.target.strand_block_dims(d + self.internal_degree)
        grid = []
        for i in range(self.target.rank):
            row = []
            for j in range(self.source.rank):
                e = self.entries[i][j]
                if e.is_zero():
                    row.append(None)
                else:
                    row.append(mult_matrix(e, d + self.source.twists[j]))
            grid.append(row)
        result = ExactMatrix.assemble(ring.field, grid, tgt_dims, src_dims)
        self._strand_cache[d] = result
        return result


def _tensor_module(a: FreeModule, b: FreeModule) -> FreeModule:
    return FreeModule(a.ring, tuple(x + y for x in a.twists for y in b.twists))


def graded_map_from_blocks(
    source_blocks: list[FreeModule],
    target_blocks: list[FreeModule],
    blocks: dict,
    internal_degree: int = 0,
) -> GradedMap:
    """Assemble a map from a sparse dict (target_block, source_block) -> GradedMap."""
    if not source_blocks and not target_blocks:
        raise ValueError("graded_map_from_blocks needs at least one block module")
    ring = (source_blocks[0] if source_blocks else target_blocks[0]).ring
    source = free_module_sum(source_blocks) if source_blocks else FreeModule(ring, ())
    target = free_module_sum(target_blocks) if target_blocks else FreeModule(ring, ())
    zero = ring.zero()
    rows = [[zero] * source.rank for _ in range(target.rank)]
    tgt_off = [0]
    for m in target_blocks:
        tgt_off.append(tgt_off[-1] + m.rank)
    src_off = [0]
    for m in source_blocks:
        src_off.append(src_off[-1] + m.rank)
    for (bi, bj), blk in blocks.items():
        if blk is None:
            continue
        if blk.source != source_blocks[bj] or blk.target != target_blocks[bi]:
            raise ValueError("block endpoints do not match the block decomposition")
        for i in range(blk.target.rank):
            for j in range(blk.source.rank):
                rows[tgt_off[bi] + i][src_off[bj] + j] = blk.entries[i][j]
    return GradedMap(source, target, rows, internal_degree)


class PresentedModule:
    """M = coker(presentation: F1 -> F0), with strands cached per degree."""

    __slots__ = ("presentation", "_strand_cache")

    def __init__(self, presentation: GradedMap):
        if presentation.internal_degree != 0:
            raise ValueError("presentations must have internal degree 0")
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "_strand_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("PresentedModule is immutable")

    @classmethod
    def free(cls, module: FreeModule) -> "PresentedModule":
        empty = FreeModule(module.ring, ())
        return cls(GradedMap.zero(empty, module))

    @classmethod
    def quotient(cls, target: FreeModule, relation_columns) -> "PresentedModule":
        """Quotient of a free module by homogeneous relation columns.

        Each relation is a list of Polys (one per target generator); source
        twists are inferred from the entry degrees.
        """
        ring = target.ring
        columns = [list(col) for col in relation_columns]
        src_twists = []
        for col in columns:
            if len(col) != target.rank:
                raise ValueError("relation length must equal the number of generators")
            twist = None
            for i, e in enumerate(col):
                if e.is_zero():
                    continue
                t = target.twists[i] - e.degree()
                if twist is None:
                    twist = t
                elif twist != t:
                    raise NonHomogeneousError(
                        "relation column mixes degrees; source twist is ambiguous"
                    )
            src_twists.append(0 if twist is None else twist)
        source = FreeModule(ring, src_twists)
        entries = [
            [columns[j][i] for j in range(len(columns))] for i in range(target.rank)
        ]
        return cls(GradedMap(source, target, entries))

    @property
    def ring(self) -> GradedRing:
        return self.presentation.ring

    @property
    def generators(self) -> FreeModule:
        return self.presentation.target

    @property
    def relations(self) -> FreeModule:
        return self.presentation.source

    def twisted(self, n: int) -> "PresentedModule":
        return PresentedModule(self.presentation.twisted(n))

    def is_free_presentation(self) -> bool:
        return self.presentation.source.rank == 0

    def __eq__(self, other):
        return isinstance(other, PresentedModule) and self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return (
            f"PresentedModule(gens {self.generators.twists}, "
            f"rels {self.relations.twists})"
        )


def module_sum_twisted(module: PresentedModule, twists) -> PresentedModule:
    """(+)_p M(t_p) as a presented module (block-diagonal presentation)."""
    twists = list(twists)
    ring = module.ring
    src_blocks = [module.relations.twisted(t) for t in twists]
    tgt_blocks = [module.generators.twisted(t) for t in twists]
    blocks = {(p, p): module.presentation.twisted(t) for p, t in enumerate(twists)}
    if not twists:
        empty = FreeModule(ring, ())
        return PresentedModule(GradedMap.zero(empty, empty))
    return PresentedModule(graded_map_from_blocks(src_blocks, tgt_blocks, blocks))


def strand(module: PresentedModule, d: int) -> StrandSpace:
    """M_d = (F0)_d / im((F1)_d) with the deterministic coset basis."""
    cached = module._strand_cache.get(d)
    if cached is not None:
        return cached
    pres = module.presentation
    if pres.source.rank == 0:
        space = StrandSpace(
            ExactMatrix.zeros(module.ring.field, pres.target.strand_dim(d), 0)
        )
    else:
        space = StrandSpace(pres.strand_matrix(d))
    module._strand_cache[d] = space
    return space


def mult_operator(module: PresentedModule, f: Poly, d: int) -> ExactMatrix:
    """Matrix of multiplication by homogeneous f from M_d to M_{d+deg f}."""
    deg = f.degree()
    if deg is None:
        deg = 0
    ambient = _ambient_mult(module, f, deg).strand_matrix(d)
    return induced_map(strand(module, d), strand(module, d + deg), ambient)


def _ambient_mult(module: PresentedModule, f: Poly, deg: int) -> GradedMap:
    gens = module.generators
    ring = module.ring
    zero = ring.zero()
    entries = [
        [f if i == j else zero for j in range(gens.rank)] for i in range(gens.rank)
    ]
    return GradedMap(gens, gens, entries, deg)


def annihilator_strand(module: PresentedModule, f: Poly, d: int) -> StrandSpace:
    """(0 :_M f)_d as a strand space inside M_d."""
    op = mult_operator(module, f, d)
    ker = kernel_basis(op)
    base = strand(module, d)
    lifted = base.coset_reps @ ker
    sub = base.sub_basis
    if sub.cols:
        super_basis = ExactMatrix.hstack([base.sub_column_basis(), lifted])
    else:
        super_basis = lifted
    return StrandSpace(sub, super_basis)


class TableEntry(NamedTuple):
    dim: int
    stabilized: bool
    k_used: int


class HilbertTable:
    """Map (homological index i, internal degree d) -> (dim, stabilized, k_used)."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        object.__setattr__(self, "entries", dict(entries or {}))
        for key, val in self.entries.items():
            if val.dim < 0:
                raise ValueError(f"negative dimension at {key}")

    def __setattr__(self, name, value):
        raise AttributeError("HilbertTable is immutable; build a new one")

    def set(self, i: int, d: int, entry: TableEntry) -> None:
        # only used during construction by the table builders
        self.entries[(i, d)] = entry

    def get(self, i: int, d: int) -> TableEntry:
        return self.entries[(i, d)]

    def dim(self, i: int, d: int) -> int:
        return self.entries[(i, d)].dim

    def __contains__(self, key):
        return key in self.entries

    def items(self):
        return sorted(self.entries.items())

    def dims(self) -> dict:
        return {key: entry.dim for key, entry in self.entries.items()}

    def nonzero(self):
        return {key: e for key, e in self.items() if e.dim != 0}

    def __eq__(self, other):
        return isinstance(other, HilbertTable) and self.entries == other.entries

    def same_dims(self, other: "HilbertTable") -> bool:
        return self.dims() == other.dims()

    def to_records(self):
        return [
            {
                "i": i,
                "d": d,
                "dim": e.dim,
                "stabilized": e.stabilized,
                "k_used": e.k_used,
            }
            for (i, d), e in self.items()
        ]

    def __repr__(self):
        nz = {k: e.dim for k, e in self.items() if e.dim}
        return f"HilbertTable({nz})"


def degree_window(window) -> range:
    lo, hi = int(window[0]), int(window[1])
    return range(lo, hi + 1)


def hilbert_row(module: PresentedModule, window) -> HilbertTable:
    table = HilbertTable()
    for d in degree_window(window):
        table.set(0, d, TableEntry(strand(module, d).dim, True, 0))
    return table
