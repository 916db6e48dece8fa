"""Bounded complexes of twisted free modules and their functorial calculus.

Sign conventions, fixed once for the whole engine (only homology dimensions
are contractual, but every constructor checks d(d(x)) = 0 as a polynomial
identity, so the conventions must be coherent):

* shift:   (S^n X)_i = X_{i-n}, differential multiplied by (-1)^n;
* cone:    Cone(f)_i = X_{i-1} (+) Y_i, differential [[-dX, 0], [f, dY]];
* tensor:  d(x (x) y) = dx (x) y + (-1)^s x (x) dy for x in X_s;
* Hom:     (df)(x) = d(f(x)) - (-1)^{|f|} f(dx), Hom(R(a), R(b)) = R(b-a).

Complexes of presented modules (cokernels termwise) share the free-complex
machinery: a differential is carried by a polynomial matrix between the
generator modules, and all strandwise homology runs through
:class:`StrandContext`.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InternalInvariantError
from .exact import ExactMatrix, StrandSpace, induced_map, kernel_basis, rank
from .modules import (
    FreeModule,
    GradedMap,
    HilbertTable,
    PresentedModule,
    TableEntry,
    degree_window,
    free_module_sum,
    graded_map_from_blocks,
    module_sum_twisted,
    strand,
)
from .rings import GradedRing

__all__ = [
    "FreeComplex",
    "ChainMap",
    "ModuleComplex",
    "ModuleChainMap",
    "shift",
    "cone",
    "tensor",
    "hom_complex",
    "direct_sum",
    "tensor_chain_maps",
    "tensor_with_module",
    "hom_into_module",
    "tensor_map_with_module",
    "StrandContext",
    "homology_strand",
    "homology_table",
    "homology_induced_matrix",
    "quasi_iso_check",
]


def _sign_of(ring: GradedRing, n: int):
    return 1 if n % 2 == 0 else (-1 if ring.field.is_rational else ring.field.characteristic - 1)


class FreeComplex:
    """Finitely supported complex {terms[i]} with differentials term i -> term i-1."""

    __slots__ = ("ring", "terms", "differentials")

    def __init__(self, ring: GradedRing, terms: dict, differentials: dict):
        clean_terms = {int(i): m for i, m in terms.items() if m.rank > 0}
        for i, m in clean_terms.items():
            if m.ring != ring:
                raise ValueError("term over the wrong ring")
        clean_diffs = {}
        for i, f in differentials.items():
            i = int(i)
            if f is None or f.source.rank == 0 or f.target.rank == 0:
                continue
            if f.internal_degree != 0:
                raise ValueError("differentials must have internal degree 0")
            if clean_terms.get(i) != f.source or clean_terms.get(i - 1) != f.target:
                raise ValueError(f"differential at {i} does not match adjacent terms")
            clean_diffs[i] = f
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean_terms)
        object.__setattr__(self, "differentials", clean_diffs)
        for i, f in clean_diffs.items():
            g = clean_diffs.get(i + 1)
            if g is not None and not f.compose(g).is_zero_map():
                raise InternalInvariantError(f"d o d != 0 at homological degree {i + 1}")

    def __setattr__(self, name, value):
        raise AttributeError("FreeComplex is immutable")

    @property
    def support(self):
        return tuple(sorted(self.terms))

    def term(self, i: int) -> FreeModule:
        return self.terms.get(i, FreeModule(self.ring, ()))

    def differential(self, i: int) -> GradedMap:
        f = self.differentials.get(i)
        if f is None:
            return GradedMap.zero(self.term(i), self.term(i - 1))
        return f

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and self.ring == other.ring
            and self.terms == other.terms
            and self.differentials == other.differentials
        )

    def __repr__(self):
        ranks = {i: m.rank for i, m in sorted(self.terms.items())}
        return f"FreeComplex(ranks {ranks})"

    @classmethod
    def stalk(cls, module: FreeModule, degree: int = 0) -> "FreeComplex":
        return cls(module.ring, {degree: module}, {})

    @classmethod
    def zero(cls, ring: GradedRing) -> "FreeComplex":
        return cls(ring, {}, {})

    @classmethod
    def two_term(cls, entry_map: GradedMap, top_degree: int = 1) -> "FreeComplex":
        """[source -> target] with the source in homological degree top_degree."""
        return cls(
            entry_map.ring,
            {top_degree: entry_map.source, top_degree - 1: entry_map.target},
            {top_degree: entry_map},
        )


class ChainMap:
    """Degree-0 morphism of free complexes; commutes with differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: FreeComplex, target: FreeComplex, components: dict):
        comps = {}
        for i, f in components.items():
            i = int(i)
            if f is None or (f.source.rank == 0 and f.target.rank == 0):
                continue
            if f.source != source.term(i) or f.target != target.term(i):
                raise ValueError(f"component at {i} does not match the complexes")
            if f.internal_degree != 0:
                raise ValueError("chain map components must have internal degree 0")
            comps[i] = f
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)
        for i in source.support:
            left = self.component(i - 1).compose(source.differential(i))
            right = target.differential(i).compose(self.component(i))
            if left.entries != right.entries:
                raise InternalInvariantError(f"chain map fails to commute at degree {i}")

    def __setattr__(self, name, value):
        raise AttributeError("ChainMap is immutable")

    def component(self, i: int) -> GradedMap:
        f = self.components.get(i)
        if f is None:
            return GradedMap.zero(self.source.term(i), self.target.term(i))
        return f

    @classmethod
    def identity(cls, x: FreeComplex) -> "ChainMap":
        return cls(x, x, {i: GradedMap.identity(x.term(i)) for i in x.support})

    def compose(self, other: "ChainMap") -> "ChainMap":
        if other.target != self.source:
            raise ValueError("chain map composition endpoint mismatch")
        degrees = set(self.components) | set(other.components)
        return ChainMap(
            other.source,
            self.target,
            {i: self.component(i).compose(other.component(i)) for i in degrees},
        )

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degrees = set(self.components) | set(other.components)
        return all(self.component(i) == other.component(i) for i in degrees)


# -- constructors ------------------------------------------------------------

def shift(x: FreeComplex, n: int) -> FreeComplex:
    """(S^n X)_i = X_{i-n} with differential scaled by (-1)^n."""
    sign = _sign_of(x.ring, n)
    terms = {i + n: m for i, m in x.terms.items()}
    diffs = {i + n: (f if sign == 1 else f.scale(sign)) for i, f in x.differentials.items()}
    return FreeComplex(x.ring, terms, diffs)


def cone(f: ChainMap) -> FreeComplex:
    """Mapping cone: Cone(f)_i = X_{i-1} (+) Y_i, d = [[-dX, 0], [f, dY]]."""
    x, y = f.source, f.target
    ring = x.ring
    neg = _sign_of(ring, 1)
    degrees = sorted(set(i + 1 for i in x.terms) | set(y.terms))
    terms = {}
    blocks_by_degree = {}
    for i in degrees:
        xpart = x.term(i - 1)
        ypart = y.term(i)
        terms[i] = free_module_sum([xpart, ypart])
        blocks_by_degree[i] = (xpart, ypart)
    diffs = {}
    for i in degrees:
        src = blocks_by_degree[i]
        tgt = (x.term(i - 2), y.term(i - 1))
        blocks = {}
        dx = x.differential(i - 1)
        if dx.source.rank and dx.target.rank:
            blocks[(0, 0)] = dx.scale(neg)
        comp = f.component(i - 1)
        if comp.source.rank and comp.target.rank:
            blocks[(1, 0)] = comp
        dy = y.differential(i)
        if dy.source.rank and dy.target.rank:
            blocks[(1, 1)] = dy
        if blocks:
            diffs[i] = graded_map_from_blocks(list(src), list(tgt), blocks)
    return FreeComplex(ring, terms, diffs)


def tensor_summands(x: FreeComplex, y: FreeComplex, i: int):
    """Ordered (s, t) pairs with s+t=i contributing to (X (x) Y)_i."""
    return [(s, i - s) for s in x.support if (i - s) in y.terms]


def tensor(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    """X (x) Y with the Koszul sign (-1)^s on the second differential."""
    if x.ring != y.ring:
        raise ValueError("tensor over different rings")
    ring = x.ring
    degrees = sorted({s + t for s in x.terms for t in y.terms})
    terms = {}
    for i in degrees:
        mods = [_tensor_module_pair(x.term(s), y.term(t)) for s, t in tensor_summands(x, y, i)]
        if mods:
            terms[i] = free_module_sum(mods)
    diffs = {}
    for i in degrees:
        src_pairs = tensor_summands(x, y, i)
        tgt_pairs = tensor_summands(x, y, i - 1)
        if not src_pairs or not tgt_pairs:
            continue
        src_blocks = [_tensor_module_pair(x.term(s), y.term(t)) for s, t in src_pairs]
        tgt_blocks = [_tensor_module_pair(x.term(s), y.term(t)) for s, t in tgt_pairs]
        tgt_index = {pair: b for b, pair in enumerate(tgt_pairs)}
        blocks = {}
        for bj, (s, t) in enumerate(src_pairs):
            bi = tgt_index.get((s - 1, t))
            if bi is not None:
                dx = x.differential(s)
                blk = dx.tensor(GradedMap.identity(y.term(t)))
                if not blk.is_zero_map():
                    blocks[(bi, bj)] = blk
            bi = tgt_index.get((s, t - 1))
            if bi is not None:
                dy = y.differential(t)
                blk = GradedMap.identity(x.term(s)).tensor(dy)
                sign = _sign_of(ring, s)
                if sign != 1:
                    blk = blk.scale(sign)
                if not blk.is_zero_map():
                    blocks[(bi, bj)] = blk
        if blocks:
            diffs[i] = graded_map_from_blocks(src_blocks, tgt_blocks, blocks)
    return FreeComplex(ring, terms, diffs)


def _tensor_module_pair(a: FreeModule, b: FreeModule) -> FreeModule:
    return FreeModule(a.ring, tuple(p + q for p in a.twists for q in b.twists))


def _hom_module_pair(a: FreeModule, b: FreeModule) -> FreeModule:
    """Hom(A, B) with generator (q, p) at index q*rank(B)+p and twist b_p - a_q."""
    return FreeModule(a.ring, tuple(bp - aq for aq in a.twists for bp in b.twists))


def hom_summands(x: FreeComplex, t: FreeComplex, i: int):
    """Ordered s with Hom(X_s, T_{s+i}) contributing to Hom(X, T)_i."""
    return [s for s in x.support if (s + i) in t.terms]


def hom_complex(x: FreeComplex, t):
    """Hom(X, T)_i = (+)_s Hom(X_s, T_{s+i}) with (df)(v) = d(f(v)) - (-1)^i f(dv).

    T may be a free complex (result: free complex) or a presented module
    (result: complex of presented modules, strands via the module machinery).
    """
    if isinstance(t, PresentedModule):
        return hom_into_module(x, t)
    if x.ring != t.ring:
        raise ValueError("hom over different rings")
    ring = x.ring
    degrees = sorted({u - s for s in x.terms for u in t.terms})
    terms = {}
    for i in degrees:
        mods = [_hom_module_pair(x.term(s), t.term(s + i)) for s in hom_summands(x, t, i)]
        if mods:
            terms[i] = free_module_sum(mods)
    diffs = {}
    for i in degrees:
        src_list = hom_summands(x, t, i)
        tgt_list = hom_summands(x, t, i - 1)
        if not src_list or not tgt_list:
            continue
        src_blocks = [_hom_module_pair(x.term(s), t.term(s + i)) for s in src_list]
        tgt_blocks = [_hom_module_pair(x.term(s), t.term(s + i - 1)) for s in tgt_list]
        tgt_index = {s: b for b, s in enumerate(tgt_list)}
        sign = _sign_of(ring, i + 1)  # -(-1)^i
        blocks = {}
        for bj, s in enumerate(src_list):
            bi = tgt_index.get(s)
            if bi is not None:
                dt = t.differential(s + i)
                if dt.source.rank and dt.target.rank:
                    blk = _post_compose_block(x.term(s), dt)
                    if not blk.is_zero_map():
                        blocks[(bi, bj)] = blk
            bi = tgt_index.get(s + 1)
            if bi is not None:
                dx = x.differential(s + 1)
                if dx.source.rank and dx.target.rank:
                    blk = _pre_compose_block(dx, t.term(s + i))
                    if sign != 1:
                        blk = blk.scale(sign)
                    if not blk.is_zero_map():
                        blocks[(bi, bj)] = blk
        if blocks:
            diffs[i] = graded_map_from_blocks(src_blocks, tgt_blocks, blocks)
    return FreeComplex(ring, terms, diffs)


def _post_compose_block(x_s: FreeModule, dt: GradedMap) -> GradedMap:
    """Hom(X_s, dt): the map E_{qp} -> sum_r dt[r,p] E_{qr} in q-major layout."""
    left = FreeModule(x_s.ring, tuple(-a for a in x_s.twists))
    return GradedMap.identity(left).tensor(dt)


def _pre_compose_block(dx: GradedMap, values: FreeModule) -> GradedMap:
    """Hom(dx, values): f -> f o dx, from Hom(dx.target, V) to Hom(dx.source, V)."""
    src = _hom_module_pair(dx.target, values)
    tgt = _hom_module_pair(dx.source, values)
    ring = dx.ring
    zero = ring.zero()
    rows = [[zero] * src.rank for _ in range(tgt.rank)]
    rv = values.rank
    for q in range(dx.source.rank):
        for q2 in range(dx.target.rank):
            e = dx.entries[q2][q]
            if e.is_zero():
                continue
            for p in range(rv):
                rows[q * rv + p][q2 * rv + p] = e
    return GradedMap(src, tgt, rows)


def direct_sum(complexes: Iterable[FreeComplex]) -> FreeComplex:
    complexes = list(complexes)
    if not complexes:
        raise ValueError("direct sum of nothing")
    ring = complexes[0].ring
    degrees = sorted({i for c in complexes for i in c.terms})
    terms = {}
    diffs = {}
    for i in degrees:
        parts = [c.term(i) for c in complexes]
        terms[i] = free_module_sum(parts)
        tgt_parts = [c.term(i - 1) for c in complexes]
        blocks = {}
        for b, c in enumerate(complexes):
            f = c.differentials.get(i)
            if f is not None:
                blocks[(b, b)] = f
        if blocks:
            diffs[i] = graded_map_from_blocks(parts, tgt_parts, blocks)
    return FreeComplex(ring, terms, diffs)


def tensor_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f (x) g : X (x) Y -> X' (x) Y' for degree-0 chain maps (no signs needed)."""
    sx, sy = f.source, g.source
    tx, ty = f.target, g.target
    source = tensor(sx, sy)
    target = tensor(tx, ty)
    comps = {}
    for i in source.support:
        src_pairs = tensor_summands(sx, sy, i)
        tgt_pairs = tensor_summands(tx, ty, i)
        if not tgt_pairs:
            continue
        src_blocks = [_tensor_module_pair(sx.term(s), sy.term(t)) for s, t in src_pairs]
        tgt_blocks = [_tensor_module_pair(tx.term(s), ty.term(t)) for s, t in tgt_pairs]
        tgt_index = {pair: b for b, pair in enumerate(tgt_pairs)}
        blocks = {}
        for bj, (s, t) in enumerate(src_pairs):
            bi = tgt_index.get((s, t))
            if bi is None:
                continue
            blk = f.component(s).tensor(g.component(t))
            if not blk.is_zero_map():
                blocks[(bi, bj)] = blk
        comps[i] = graded_map_from_blocks(src_blocks, tgt_blocks, blocks)
    return ChainMap(source, target, comps)


# -- complexes of presented modules -------------------------------------------

class ModuleComplex:
    """Complex whose terms are presented modules; differentials act on generators."""

    __slots__ = ("ring", "terms", "differentials")

    def __init__(self, ring: GradedRing, terms: dict, differentials: dict):
        clean_terms = {int(i): m for i, m in terms.items() if m.generators.rank > 0}
        clean_diffs = {}
        for i, f in differentials.items():
            i = int(i)
            if f is None or f.source.rank == 0 or f.target.rank == 0:
                continue
            src = clean_terms.get(i)
            tgt = clean_terms.get(i - 1)
            if src is None or tgt is None:
                if f.is_zero_map():
                    continue
                raise ValueError(f"differential at {i} touches a missing term")
            if f.source != src.generators or f.target != tgt.generators:
                raise ValueError(f"differential at {i} does not match generator modules")
            clean_diffs[i] = f
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean_terms)
        object.__setattr__(self, "differentials", clean_diffs)
        for i, f in clean_diffs.items():
            g = clean_diffs.get(i + 1)
            if g is not None and not f.compose(g).is_zero_map():
                raise InternalInvariantError(f"d o d != 0 at homological degree {i + 1}")

    def __setattr__(self, name, value):
        raise AttributeError("ModuleComplex is immutable")

    @property
    def support(self):
        return tuple(sorted(self.terms))

    def term(self, i: int) -> PresentedModule:
        m = self.terms.get(i)
        if m is None:
            return PresentedModule.free(FreeModule(self.ring, ()))
        return m

    def differential(self, i: int) -> GradedMap:
        f = self.differentials.get(i)
        if f is None:
            return GradedMap.zero(self.term(i).generators, self.term(i - 1).generators)
        return f

    @classmethod
    def from_free(cls, x: FreeComplex) -> "ModuleComplex":
        terms = {i: PresentedModule.free(m) for i, m in x.terms.items()}
        return cls(x.ring, terms, dict(x.differentials))

    @classmethod
    def stalk(cls, module: PresentedModule, degree: int = 0) -> "ModuleComplex":
        return cls(module.ring, {degree: module}, {})


def tensor_with_module(x: FreeComplex, module: PresentedModule) -> ModuleComplex:
    """X (x)_R M termwise: term i is (+)_p M(a_p) over the generators of X_i."""
    terms = {}
    diffs = {}
    gen_rank = module.generators.rank
    for i, m in x.terms.items():
        terms[i] = module_sum_twisted(module, m.twists)
    for i, f in x.differentials.items():
        blk = f.tensor(GradedMap.identity(module.generators)) if gen_rank else None
        diffs[i] = blk
    return ModuleComplex(x.ring, terms, diffs)


def tensor_map_with_module(f: ChainMap, module: PresentedModule) -> "ModuleChainMap":
    source = tensor_with_module(f.source, module)
    target = tensor_with_module(f.target, module)
    comps = {}
    ident = GradedMap.identity(module.generators)
    for i in f.source.support:
        comp = f.component(i)
        if comp.source.rank and comp.target.rank and module.generators.rank:
            comps[i] = comp.tensor(ident)
    return ModuleChainMap(source, target, comps)


def hom_into_module(x: FreeComplex, module: PresentedModule) -> ModuleComplex:
    """Hom(X, M) termwise: Hom(X, M)_i = Hom(X_{-i}, M) = (+)_q M(-a_q)."""
    ring = x.ring
    terms = {}
    for s, m in x.terms.items():
        terms[-s] = module_sum_twisted(module, tuple(-a for a in m.twists))
    diffs = {}
    gen_rank = module.generators.rank
    if gen_rank:
        for s, dx in x.differentials.items():
            # source term at i = -(s-1), target at i-1 = -s; block -(-1)^i f o dx
            i = -(s - 1)
            blk = _pre_compose_block(dx, module.generators)
            sign = _sign_of(ring, i + 1)
            if sign != 1:
                blk = blk.scale(sign)
            diffs[i] = blk
    return ModuleComplex(ring, terms, diffs)


class ModuleChainMap:
    """Morphism of module complexes carried by generator-level matrices."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ModuleComplex, target: ModuleComplex, components: dict):
        comps = {}
        for i, f in components.items():
            i = int(i)
            if f is None or (f.source.rank == 0 and f.target.rank == 0):
                continue
            if (
                f.source != source.term(i).generators
                or f.target != target.term(i).generators
            ):
                raise ValueError(f"component at {i} does not match the complexes")
            comps[i] = f
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)
        for i in source.support:
            left = self.component(i - 1).compose(source.differential(i))
            right = target.differential(i).compose(self.component(i))
            if left.entries != right.entries:
                raise InternalInvariantError(f"module chain map fails to commute at {i}")

    def __setattr__(self, name, value):
        raise AttributeError("ModuleChainMap is immutable")

    def component(self, i: int) -> GradedMap:
        f = self.components.get(i)
        if f is None:
            return GradedMap.zero(
                self.source.term(i).generators, self.target.term(i).generators
            )
        return f

    @classmethod
    def from_chain_map(cls, f: ChainMap) -> "ModuleChainMap":
        return cls(
            ModuleComplex.from_free(f.source),
            ModuleComplex.from_free(f.target),
            dict(f.components),
        )


def _as_module_complex(c) -> ModuleComplex:
    if isinstance(c, ModuleComplex):
        return c
    if isinstance(c, FreeComplex):
        return ModuleComplex.from_free(c)
    raise TypeError(f"expected a complex, got {type(c).__name__}")


# -- strandwise homology -------------------------------------------------------

class StrandContext:
    """Caches coset spaces and coset-level differentials of a complex at one degree."""

    __slots__ = ("complex", "d", "_spaces", "_ops", "_homology")

    def __init__(self, c, d: int):
        object.__setattr__(self, "complex", _as_module_complex(c))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "_spaces", {})
        object.__setattr__(self, "_ops", {})
        object.__setattr__(self, "_homology", {})

    def __setattr__(self, name, value):
        raise AttributeError("StrandContext is immutable")

    def space(self, i: int) -> StrandSpace:
        sp = self._spaces.get(i)
        if sp is None:
            sp = strand(self.complex.term(i), self.d)
            self._spaces[i] = sp
        return sp

    def op(self, i: int) -> ExactMatrix:
        """Coset-level differential V_i -> V_{i-1}."""
        m = self._ops.get(i)
        if m is None:
            src = self.space(i)
            dst = self.space(i - 1)
            if src.dim == 0 or dst.dim == 0:
                m = ExactMatrix.zeros(self.complex.ring.field, dst.dim, src.dim)
            else:
                ambient = self.complex.differential(i).strand_matrix(self.d)
                m = induced_map(src, dst, ambient)
            self._ops[i] = m
        return m

    def homology(self, i: int) -> StrandSpace:
        h = self._homology.get(i)
        if h is None:
            v = self.space(i)
            field = self.complex.ring.field
            if v.dim == 0:
                h = StrandSpace(ExactMatrix.zeros(field, 0, 0))
            else:
                image = self.op(i + 1)
                ker = kernel_basis(self.op(i))
                h = StrandSpace(image, ker)
            self._homology[i] = h
        return h

    def homology_dim(self, i: int) -> int:
        return self.homology(i).dim


def homology_strand(c, i: int, d: int) -> StrandSpace:
    """ker(d_i)_d / im(d_{i+1})_d as a strand space in coset coordinates."""
    return StrandContext(c, d).homology(i)


def homology_table(c, i_range, window, *, stabilized: bool = True, k_used: int = 0) -> HilbertTable:
    cc = _as_module_complex(c)
    table = HilbertTable()
    i_lo, i_hi = int(i_range[0]), int(i_range[1])
    for d in degree_window(window):
        ctx = StrandContext(cc, d)
        for i in range(i_lo, i_hi + 1):
            table.set(i, d, TableEntry(ctx.homology_dim(i), stabilized, k_used))
    return table


def _component_strand(f, i: int, d: int) -> ExactMatrix:
    return f.component(i).strand_matrix(d)


def coset_level_map(f, ctx_src: StrandContext, ctx_dst: StrandContext, i: int) -> ExactMatrix:
    src = ctx_src.space(i)
    dst = ctx_dst.space(i)
    if src.dim == 0 or dst.dim == 0:
        return ExactMatrix.zeros(ctx_src.complex.ring.field, dst.dim, src.dim)
    return induced_map(src, dst, _component_strand(f, i, ctx_src.d))


def homology_induced_matrix(f, ctx_src: StrandContext, ctx_dst: StrandContext, i: int) -> ExactMatrix:
    """Matrix induced on homology strands by a (module) chain map."""
    hsrc = ctx_src.homology(i)
    hdst = ctx_dst.homology(i)
    if hsrc.dim == 0 or hdst.dim == 0:
        return ExactMatrix.zeros(ctx_src.complex.ring.field, hdst.dim, hsrc.dim)
    return induced_map(hsrc, hdst, coset_level_map(f, ctx_src, ctx_dst, i))


class QuasiIsoReport:
    __slots__ = ("passed", "failures", "window_i", "window_d")

    def __init__(self, passed, failures, window_i, window_d):
        self.passed = passed
        self.failures = tuple(failures)
        self.window_i = tuple(window_i)
        self.window_d = tuple(window_d)

    def __bool__(self):
        return self.passed

    def __repr__(self):
        status = "pass" if self.passed else f"fail at {list(self.failures)}"
        return f"QuasiIsoReport({status})"


def quasi_iso_check(f, i_range, window) -> QuasiIsoReport:
    """True iff the induced maps on homology strands are isomorphisms on the window."""
    if isinstance(f, ChainMap):
        f = ModuleChainMap.from_chain_map(f)
    failures = []
    i_lo, i_hi = int(i_range[0]), int(i_range[1])
    for d in degree_window(window):
        ctx_src = StrandContext(f.source, d)
        ctx_dst = StrandContext(f.target, d)
        for i in range(i_lo, i_hi + 1):
            hs = ctx_src.homology(i)
            ht = ctx_dst.homology(i)
            if hs.dim != ht.dim:
                failures.append((i, d))
                continue
            if hs.dim == 0:
                continue
            mat = homology_induced_matrix(f, ctx_src, ctx_dst, i)
            if rank(mat) != hs.dim:
                failures.append((i, d))
    return QuasiIsoReport(not failures, failures, i_range, window)
