"""Free modules, graded maps, presented modules, strand functor."""

import pytest

from lochom.errors import NonHomogeneousError
from lochom.exact import FieldSpec, rank
from lochom.modules import (
    FreeModule,
    GradedMap,
    PresentedModule,
    annihilator_strand,
    hilbert_row,
    mult_operator,
    strand,
)
from lochom.rings import GradedRing, parse_poly

FP = FieldSpec(32003)


def ring2():
    return GradedRing(FP, ["x", "y"], [1, 1])


def quotient(r, *texts):
    return PresentedModule.quotient(FreeModule(r, [0]), [[parse_poly(r, t)] for t in texts])


def test_twist_convention():
    # R(a)_d = R_{a+d}: the generator of R(-t) lives in degree t
    r = ring2()
    f = FreeModule(r, [-3])
    assert f.strand_dim(3) == 1
    assert f.strand_dim(2) == 0
    assert f.strand_dim(4) == 2


def test_graded_map_homogeneity_enforced():
    r = ring2()
    x = r.variable(0)
    src = FreeModule(r, [-1])
    tgt = FreeModule(r, [0])
    GradedMap(src, tgt, [[x]])  # degree 1 entry matches twists
    with pytest.raises(NonHomogeneousError):
        GradedMap(src, tgt, [[x * x]])
    with pytest.raises(NonHomogeneousError):
        GradedMap(src, tgt, [[parse_poly(r, "x + x^2")]])


def test_strand_of_free_module():
    r = ring2()
    free = PresentedModule.free(FreeModule(r, [0]))
    assert strand(free, 2).dim == 3


def test_strand_of_quotient():
    r = ring2()
    m = quotient(r, "x^2", "x*y")
    dims = [strand(m, d).dim for d in (0, 1, 2, 3, 5)]
    assert dims == [1, 2, 1, 1, 1]


def test_strand_of_zero_presentation_identity():
    r = ring2()
    f = FreeModule(r, [0])
    m = PresentedModule(GradedMap.identity(f))
    assert all(strand(m, d).dim == 0 for d in range(-2, 5))


def test_strand_dim_formula():
    r = ring2()
    m = quotient(r, "x^2 - y^2", "x*y^2")
    for d in range(0, 7):
        pres = m.presentation.strand_matrix(d)
        assert strand(m, d).dim == m.generators.strand_dim(d) - rank(pres)


def test_mult_operator_cases():
    r1 = GradedRing(FP, ["x"], [1])
    m = PresentedModule.quotient(
        FreeModule(r1, [0]), [[parse_poly(r1, "x^2")]]
    )
    x = r1.variable(0)
    assert mult_operator(m, r1.one(), 0).entries == ((1,),)
    assert mult_operator(m, x, 0).entries == ((1,),)
    op = mult_operator(m, x, 1)
    assert op.rows == 0 and op.cols == 1  # M_2 = 0


def test_mult_operator_free_reduces_to_ring():
    from lochom.rings import mult_matrix

    r = ring2()
    x = r.variable(0)
    free = PresentedModule.free(FreeModule(r, [0]))
    assert mult_operator(free, x, 1) == mult_matrix(x, 1)


def test_mult_operator_functorial():
    r = ring2()
    x, y = r.variables()
    m = quotient(r, "x^2", "x*y^2")
    for d in range(0, 4):
        lhs = mult_operator(m, x * y, d)
        rhs = mult_operator(m, y, d + 1) @ mult_operator(m, x, d)
        assert lhs == rhs


def test_annihilator_strand_cases():
    r1 = GradedRing(FP, ["x"], [1])
    x = r1.variable(0)
    m = PresentedModule.quotient(FreeModule(r1, [0]), [[parse_poly(r1, "x^2")]])
    # x^2 kills everything
    assert annihilator_strand(m, x * x, 0).dim == 1
    assert annihilator_strand(m, x * x, 1).dim == 1
    # free module: no torsion
    r = ring2()
    free = PresentedModule.free(FreeModule(r, [0]))
    assert all(annihilator_strand(free, r.variable(0), d).dim == 0 for d in range(0, 4))


def test_annihilator_strand_socle_of_monomial_quotient():
    # M = k[x,y]/(x^2, xy): x kills both x and y in degree 1, so the kernel of
    # multiplication by x on M_1 is all of M_1 (two-dimensional)
    r = ring2()
    m = quotient(r, "x^2", "x*y")
    x = r.variable(0)
    assert annihilator_strand(m, x, 1).dim == 2
    assert annihilator_strand(m, x, 0).dim == 0
    y = r.variable(1)
    # y kills x but not y
    assert annihilator_strand(m, y, 1).dim == 1


def test_annihilator_rank_identity():
    r = ring2()
    x, y = r.variables()
    m = quotient(r, "x^3", "x*y^2")
    for f in (x, y, x * y):
        for d in range(0, 5):
            total = strand(m, d).dim
            assert annihilator_strand(m, f, d).dim + rank(mult_operator(m, f, d)) == total


def test_hilbert_row_cases():
    r = ring2()
    free = PresentedModule.free(FreeModule(r, [0]))
    row = hilbert_row(free, (-1, 3))
    assert [row.dim(0, d) for d in range(-1, 4)] == [0, 1, 2, 3, 4]
    m = quotient(r, "x^2")
    row2 = hilbert_row(m, (0, 3))
    assert [row2.dim(0, d) for d in range(0, 4)] == [1, 2, 2, 2]
    zero = PresentedModule.quotient(FreeModule(r, [0]), [[r.one()]])
    assert all(e.dim == 0 for _, e in hilbert_row(zero, (0, 3)).items())


def test_quotient_infers_source_twists():
    r = ring2()
    m = PresentedModule.quotient(
        FreeModule(r, [0]), [[parse_poly(r, "x^2")], [parse_poly(r, "x*y")]]
    )
    assert m.relations.twists == (-2, -2)


def test_quotient_rejects_mixed_degree_column():
    r = ring2()
    with pytest.raises(NonHomogeneousError):
        PresentedModule.quotient(
            FreeModule(r, [0, -1]),
            [[parse_poly(r, "x^2"), parse_poly(r, "x^2")]],
        )
