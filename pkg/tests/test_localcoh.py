"""Local cohomology and local homology tables against closed forms."""

import pytest

from lochom.complexes import FreeComplex, homology_table, hom_complex, shift
from lochom.errors import EmptyGeneratorsError, NonHomogeneousError
from lochom.exact import FieldSpec
from lochom.koszul import KoszulSpec, koszul_complex
from lochom.localcoh import (
    generator_independence_check,
    hom_stable_cech_table,
    local_cohomology_table,
    local_homology_table,
)
from lochom.modules import FreeModule, PresentedModule, hilbert_row
from lochom.rings import GradedRing, parse_poly

FP = FieldSpec(32003)


def ring(n):
    return GradedRing(FP, ["x", "y", "z"][:n], [1] * n)


def free(r, twist=0):
    return PresentedModule.free(FreeModule(r, [twist]))


def quotient(r, *texts):
    return PresentedModule.quotient(
        FreeModule(r, [0]), [[parse_poly(r, t)] for t in texts]
    )


def test_principal_ideal_on_polynomial_line():
    r = ring(1)
    x = r.variable(0)
    t = local_cohomology_table((x,), free(r), (0, 1), (-6, 2), k_max=8)
    for d in range(-6, 3):
        assert t.dim(1, d) == (1 if d <= -1 else 0)
        assert t.dim(0, d) == 0
        assert t.get(1, d).stabilized


def test_maximal_ideal_plane_top_cohomology():
    r = ring(2)
    x, y = r.variables()
    t = local_cohomology_table((x, y), free(r), (0, 2), (-6, 2), k_max=8)
    for d in range(-6, 3):
        assert t.dim(2, d) == max(-d - 1, 0)
        assert t.dim(1, d) == 0 and t.dim(0, d) == 0
        assert all(t.get(i, d).stabilized for i in (0, 1, 2))


def test_torsion_submodule_detected():
    r = ring(2)
    x, y = r.variables()
    m = quotient(r, "x^2", "x*y")
    t = local_cohomology_table((x, y), m, (0, 2), (-3, 4), k_max=8)
    expected = {1: 1}
    for d in range(-3, 5):
        assert t.dim(0, d) == expected.get(d, 0)


def test_outside_support_is_zero():
    r = ring(2)
    x, y = r.variables()
    t = local_cohomology_table((x, y), free(r), (-2, 5), (-4, 1), k_max=6)
    for (i, d), e in t.items():
        if i < 0 or i > 2:
            assert e.dim == 0


def test_non_primary_ideal_unstabilized_entries_are_flagged():
    # H^1_(x)(k[x,y]) strands are infinite-dimensional: truncation must say so
    r = ring(2)
    x, _ = r.variables()
    t = local_cohomology_table((x,), free(r), (1, 1), (-3, 0), k_max=6)
    for d in range(-3, 1):
        assert not t.get(1, d).stabilized


def test_complex_coefficients_match_module_route():
    r = ring(2)
    x, y = r.variables()
    stalk = FreeComplex.stalk(FreeModule(r, [0]))
    via_complex = local_cohomology_table((x, y), stalk, (0, 2), (-5, 1), k_max=8)
    via_module = local_cohomology_table((x, y), free(r), (0, 2), (-5, 1), k_max=8)
    assert via_complex.same_dims(via_module)


def test_local_cohomology_of_shifted_complex():
    # H^i of S^1 X at d equals H^{i+1} of X at d
    r = ring(2)
    x, y = r.variables()
    stalk = FreeComplex.stalk(FreeModule(r, [0]))
    shifted = shift(stalk, 1)
    t_stalk = local_cohomology_table((x, y), stalk, (0, 2), (-5, 0), k_max=8)
    t_shift = local_cohomology_table((x, y), shifted, (-1, 1), (-5, 0), k_max=8)
    for d in range(-5, 1):
        for i in (0, 1, 2):
            assert t_shift.dim(i - 1, d) == t_stalk.dim(i, d)


def test_empty_generators_rejected():
    r = ring(1)
    with pytest.raises(EmptyGeneratorsError):
        local_cohomology_table((), free(r), (0, 1), (0, 1))
    with pytest.raises(NonHomogeneousError):
        local_cohomology_table((r.one(),), free(r), (0, 1), (0, 1))


def test_local_homology_finitely_generated():
    r = ring(2)
    x, y = r.variables()
    for module in (free(r), quotient(r, "x^2"), quotient(r, "x^2", "x*y")):
        collector = []
        lh = local_homology_table(
            (x, y), module, (0, 2), (-2, 6), k_max=10, collector=collector
        )
        hr = hilbert_row(module, (-2, 6))
        for d in range(-2, 7):
            assert lh.dim(0, d) == hr.dim(0, d)
            assert lh.get(0, d).stabilized
            assert lh.dim(1, d) == 0 and lh.dim(2, d) == 0
        assert all(res.lim1_dim == 0 for _, res in collector)


def test_local_homology_zero_module():
    r = ring(2)
    x, y = r.variables()
    zero = PresentedModule.quotient(FreeModule(r, [0]), [[r.one()]])
    lh = local_homology_table((x, y), zero, (0, 2), (-2, 3))
    assert all(e.dim == 0 for _, e in lh.items())


def test_hom_stable_cech_agrees_with_local_homology():
    r = ring(2)
    x, y = r.variables()
    module = free(r)
    lh = local_homology_table((x, y), module, (0, 2), (-2, 6), k_max=10)
    hsc = hom_stable_cech_table((x, y), module, 6, (0, 2), (-2, 6))
    compared = 0
    for (i, d), e in lh.items():
        if e.stabilized and e.k_used <= 6:
            compared += 1
            assert hsc.dim(i, d) == e.dim
    assert compared > 0


def test_hom_stable_cech_single_stage_reduces_to_koszul():
    r = ring(2)
    x, y = r.variables()
    got = hom_stable_cech_table(
        (x, y), FreeComplex.stalk(FreeModule(r, [0])), 1, (-1, 2), (-4, 4)
    )
    from lochom.koszul import DIRECT

    stage = shift(koszul_complex(KoszulSpec(r, (x, y), 1, DIRECT)), -2)
    want = homology_table(
        hom_complex(stage, FreeComplex.stalk(FreeModule(r, [0]))), (-1, 2), (-4, 4)
    )
    assert got.same_dims(want)


def test_hom_stable_cech_zero_coefficients():
    r = ring(2)
    x, y = r.variables()
    zero = PresentedModule.quotient(FreeModule(r, [0]), [[r.one()]])
    t = hom_stable_cech_table((x, y), zero, 4, (0, 2), (-3, 3))
    assert all(e.dim == 0 for _, e in t.items())


def test_h0_equals_colimit_of_annihilators():
    # dim Gamma_a(M)_d = colim dim (0 :_M (a^k))_d on stabilized entries
    from lochom.exact import ExactMatrix, kernel_basis
    from lochom.modules import mult_operator

    r = ring(2)
    x, y = r.variables()
    m = quotient(r, "x^3", "x*y")
    t = local_cohomology_table((x, y), m, (0, 0), (-1, 5), k_max=8)
    for d in range(-1, 6):
        entry = t.get(0, d)
        assert entry.stabilized
        stacked = ExactMatrix.vstack(
            [mult_operator(m, x**8, d), mult_operator(m, y**8, d)]
        )
        assert entry.dim == kernel_basis(stacked).cols


def test_generator_independence_same_ideal():
    r = ring(2)
    x, y = r.variables()
    rep = generator_independence_check(
        (x, y), (x, y, x + y), free(r), (0, 3), (-5, 2), k_max=8
    )
    assert rep.passed and rep.compared > 0


def test_generator_independence_identical_lists():
    r = ring(2)
    x, y = r.variables()
    rep = generator_independence_check((x, y), (x, y), free(r), (0, 2), (-3, 1), k_max=6)
    assert rep.passed and not rep.mismatches


def test_generator_independence_same_radical_powers():
    r = ring(1)
    x = r.variable(0)
    rep = generator_independence_check(
        (x,), (x * x,), free(r), (0, 1), (-6, 2), k_max=8
    )
    assert rep.passed and rep.compared > 0
