"""Degreewise local cohomology and local homology via Koszul towers.

Local cohomology H^i of a module or bounded free complex is the truncated
colimit of the directed system {H_{n-i}(a^k (x) -)}_k with phi-induced
transitions; local homology H_i is read off the inverse psi-towers through
the short exact sequence 0 -> lim1 H_{i+1} -> H_i -> lim H_i -> 0.  Every
table entry carries a stabilization flag; for ideals that are not primary to
the irrelevant maximal ideal some strands never stabilize, and the honest
answer is the last computed dimension with stabilized=False.
"""

from __future__ import annotations

from .complexes import (
    ChainMap,
    FreeComplex,
    ModuleChainMap,
    ModuleComplex,
    StrandContext,
    hom_complex,
    hom_into_module,
    homology_induced_matrix,
    homology_table,
    tensor,
    tensor_chain_maps,
    tensor_map_with_module,
    tensor_with_module,
)
from .errors import EmptyGeneratorsError, NonHomogeneousError
from .koszul import DIRECT, INVERSE, KoszulSpec, koszul_complex, stable_cech_truncated, transition
from .modules import (
    HilbertTable,
    PresentedModule,
    TableEntry,
    degree_window,
)
from .towers import StrandTower, colim_truncated, lim_lim1_truncated

__all__ = [
    "KoszulTowerSystem",
    "local_cohomology_table",
    "local_homology_table",
    "hom_stable_cech_table",
    "generator_independence_check",
    "GeneratorIndependenceReport",
]


def _validate_gens(gens, ring=None):
    gens = tuple(gens)
    if not gens:
        raise EmptyGeneratorsError("the ideal needs at least one generator")
    if ring is None:
        ring = gens[0].ring
    for g in gens:
        if g.is_zero() or not g.is_homogeneous() or g.degree() <= 0:
            raise NonHomogeneousError(
                f"ideal generators must be homogeneous of positive degree, got {g}"
            )
    return gens, ring


class KoszulTowerSystem:
    """Stages K(a^k) (x) X for k = 1..k_max with their transition chain maps.

    direction 'directed' stores maps C_k -> C_{k+1} (phi (x) X, direct
    convention); 'inverse' stores maps C_{k+1} -> C_k (psi (x) X).
    """

    __slots__ = ("gens", "convention", "k_max", "complexes", "maps", "n")

    def __init__(self, gens, x, k_max: int, convention: str):
        if k_max < 1:
            raise ValueError("k_max must be >= 1")
        gens, ring = _validate_gens(gens)
        specs = [KoszulSpec(ring, gens, k, convention) for k in range(1, k_max + 1)]
        koszuls = [koszul_complex(s) for s in specs]
        if isinstance(x, PresentedModule):
            complexes = [tensor_with_module(kc, x) for kc in koszuls]

            def make_map(spec_src, spec_tgt):
                return tensor_map_with_module(transition(spec_src, spec_tgt), x)

        elif isinstance(x, FreeComplex):
            complexes = [ModuleComplex.from_free(tensor(kc, x)) for kc in koszuls]
            ident = ChainMap.identity(x)

            def make_map(spec_src, spec_tgt):
                return ModuleChainMap.from_chain_map(
                    tensor_chain_maps(transition(spec_src, spec_tgt), ident)
                )

        else:
            raise TypeError("coefficients must be a PresentedModule or FreeComplex")
        maps = []
        for k in range(k_max - 1):
            if convention == DIRECT:
                maps.append(make_map(specs[k], specs[k + 1]))
            else:
                maps.append(make_map(specs[k + 1], specs[k]))
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "convention", convention)
        object.__setattr__(self, "k_max", k_max)
        object.__setattr__(self, "complexes", tuple(complexes))
        object.__setattr__(self, "maps", tuple(maps))
        object.__setattr__(self, "n", len(gens))

    def __setattr__(self, name, value):
        raise AttributeError("KoszulTowerSystem is immutable")

    def homological_support(self):
        lo = min((min(c.support) for c in self.complexes if c.support), default=0)
        hi = max((max(c.support) for c in self.complexes if c.support), default=0)
        return lo, hi

    def contexts(self, d: int):
        return [StrandContext(c, d) for c in self.complexes]

    def homology_tower(self, contexts, h: int) -> StrandTower:
        """Tower of H_h strands across the stages, with induced transitions."""
        stages = [ctx.homology(h) for ctx in contexts]
        transitions = []
        for j, f in enumerate(self.maps):
            if self.convention == DIRECT:
                transitions.append(
                    homology_induced_matrix(f, contexts[j], contexts[j + 1], h)
                )
            else:
                transitions.append(
                    homology_induced_matrix(f, contexts[j + 1], contexts[j], h)
                )
        direction = "directed" if self.convention == DIRECT else "inverse"
        return StrandTower(stages, transitions, direction)


def local_cohomology_table(
    gens, x, i_range, window, k_max: int = 8, s: int = 2
) -> HilbertTable:
    """H^i at each internal degree of the window, as a truncated colimit.

    Entry (i, d) is colim_truncated over the directed tower of
    H_{n-i}(a^k; x)_d; unstabilized entries keep the last computed dimension
    and say so in the flag.
    """
    system = KoszulTowerSystem(gens, x, k_max, DIRECT)
    n = system.n
    lo, hi = system.homological_support()
    i_lo, i_hi = int(i_range[0]), int(i_range[1])
    zero_entry = _zero_tower_entry(k_max, s)
    table = HilbertTable()
    for d in degree_window(window):
        contexts = None
        for i in range(i_lo, i_hi + 1):
            h = n - i
            if h < lo or h > hi:
                table.set(i, d, zero_entry)
                continue
            if contexts is None:
                contexts = system.contexts(d)
            tower = system.homology_tower(contexts, h)
            res = colim_truncated(tower, s)
            table.set(i, d, TableEntry(res.dim, res.stabilized, res.k_used))
    return table


def _zero_tower_entry(k_max: int, s: int) -> TableEntry:
    # what colim_truncated reports on an all-zero tower of length k_max
    if k_max - 1 >= s:
        return TableEntry(0, True, 1)
    return TableEntry(0, False, k_max)


def local_homology_table(
    gens,
    module: PresentedModule,
    i_range,
    window,
    k_max: int = 8,
    s: int = 2,
    collector: list | None = None,
) -> HilbertTable:
    """H_i at each internal degree, via lim/lim1 on the inverse psi-towers.

    Entry (i, d) is lim of the H_i tower plus lim1 of the H_{i+1} tower
    (the latter vanishes on towers of finite-dimensional strands; pass a
    ``collector`` list to record every LimLim1Result for inspection).
    """
    system = KoszulTowerSystem(gens, module, k_max, INVERSE)
    lo, hi = system.homological_support()
    i_lo, i_hi = int(i_range[0]), int(i_range[1])
    table = HilbertTable()
    for d in degree_window(window):
        contexts = None
        results = {}

        def tower_result(h):
            nonlocal contexts
            if h in results:
                return results[h]
            if h < lo or h > hi:
                res = None
            else:
                if contexts is None:
                    contexts = system.contexts(d)
                tower = system.homology_tower(contexts, h)
                res = lim_lim1_truncated(tower, s)
                if collector is not None:
                    collector.append(((h, d), res))
            results[h] = res
            return res

        for i in range(i_lo, i_hi + 1):
            res_i = tower_result(i)
            res_up = tower_result(i + 1)
            dim = (res_i.lim_dim if res_i else 0) + (res_up.lim1_dim if res_up else 0)
            stable = (res_i.stabilized if res_i else True) and (
                res_up.stabilized if res_up else True
            )
            k_used = max(res_i.k_used if res_i else 1, res_up.k_used if res_up else 1)
            table.set(i, d, TableEntry(dim, stable, k_used))
    return table


def hom_stable_cech_table(gens, y, k_max: int, i_range, window) -> HilbertTable:
    """Homology table of Hom(truncated stable Cech complex, y).

    At truncation K this equals the stage-K Koszul cohomology data; entries
    are exact for the truncated complex, so they are flagged stabilized with
    k_used = K.
    """
    gens, ring = _validate_gens(gens)
    a = stable_cech_truncated(gens, k_max, ring)
    if isinstance(y, PresentedModule):
        cx = hom_into_module(a, y)
    elif isinstance(y, FreeComplex):
        cx = hom_complex(a, y)
    else:
        raise TypeError("coefficients must be a PresentedModule or FreeComplex")
    return homology_table(cx, i_range, window, stabilized=True, k_used=k_max)


class GeneratorIndependenceReport:
    __slots__ = ("passed", "mismatches", "excluded", "compared")

    def __init__(self, passed, mismatches, excluded, compared):
        self.passed = passed
        self.mismatches = tuple(mismatches)
        self.excluded = tuple(excluded)
        self.compared = compared

    def __bool__(self):
        return self.passed

    def __repr__(self):
        status = "pass" if self.passed else f"fail {list(self.mismatches)}"
        return f"GeneratorIndependenceReport({status}, compared={self.compared})"


def generator_independence_check(
    gens_a, gens_b, x, i_range, window, k_max: int = 8, s: int = 2
) -> GeneratorIndependenceReport:
    """Stabilized local cohomology entries must agree for two generating sets.

    The caller is responsible for the two lists generating the same ideal;
    that claim is recorded, not verified.  Unstabilized entries are excluded
    and listed.
    """
    table_a = local_cohomology_table(gens_a, x, i_range, window, k_max, s)
    table_b = local_cohomology_table(gens_b, x, i_range, window, k_max, s)
    mismatches = []
    excluded = []
    compared = 0
    for (i, d), ea in table_a.items():
        eb = table_b.get(i, d)
        if not (ea.stabilized and eb.stabilized):
            excluded.append((i, d))
            continue
        compared += 1
        if ea.dim != eb.dim:
            mismatches.append((i, d, ea.dim, eb.dim))
    return GeneratorIndependenceReport(not mismatches, mismatches, excluded, compared)
