import pytest

from soergelkit.coinvariant import coinvariant_ring
from soergelkit.gradedmod import (
    GradedModule,
    ModuleMap,
    graded_hom_poly,
    hom_graded,
    hom_ungraded_dim,
    kernel_module,
    trivial_module,
)
from soergelkit.laurent import LaurentPoly
from soergelkit.linalg import QMatrix
from soergelkit.multipoly import MultiPoly
from soergelkit.soergel import soergel_category


def regular_module(n):
    """The coinvariant ring as a module over itself, unshifted."""
    ring = coinvariant_ring(n)
    dims = {d: len(ring.degree_basis_indices(d)) for d in ring.degrees()}
    actions = {}
    for i in range(1, n + 1):
        for d in ring.degrees():
            m = ring.multiply_by_variable_matrix(i, d)
            if m.rows and m.cols:
                actions[(i, d)] = m
    return GradedModule(ring, dims, actions)


def test_trivial_module():
    ring = coinvariant_ring(2)
    q = trivial_module(ring)
    assert q.dims == {0: 1}
    for i in (1, 2):
        assert q.action(i, 0).is_zero()
    assert len(hom_graded(q, q, 0)) == 1
    assert q.character() == LaurentPoly.one()


@pytest.mark.parametrize("n", [2, 3])
def test_regular_module_validates(n):
    m = regular_module(n)
    m.validate()
    assert m.total_dim() == coinvariant_ring(n).dim


def test_character_of_regular_s3():
    assert regular_module(3).character() == LaurentPoly({0: 1, 2: 2, 4: 2, 6: 1})
    assert regular_module(3).shift(3).character() == LaurentPoly({-3: 1, -1: 2, 1: 2, 3: 1})


def test_validate_catches_bad_actions():
    ring = coinvariant_ring(2)
    # x_1 acting by identity on a 1-dim module violates e_1 = 0
    with pytest.raises(AssertionError):
        GradedModule(ring, {0: 1, 2: 1}, {(1, 0): QMatrix.from_rows([[1]])})


def test_end_of_regular_is_regular_character():
    # End over the ring of the regular module is the ring itself
    m = regular_module(2)
    assert graded_hom_poly(m, m) == LaurentPoly({0: 1, 2: 1})


def test_hom_trivial_to_regular_socle():
    # maps from the trivial module hit the socle, the top degree line
    for n in (2, 3):
        q = trivial_module(coinvariant_ring(n))
        m = regular_module(n)
        top = max(m.degrees())
        poly = graded_hom_poly(q, m)
        assert poly == LaurentPoly.v(top)


def test_hom_regular_to_trivial():
    m = regular_module(2)
    q = trivial_module(coinvariant_ring(2))
    assert graded_hom_poly(m, q) == LaurentPoly.one()


def test_ungraded_matches_graded_sum():
    m = regular_module(2)
    q = trivial_module(coinvariant_ring(2))
    for a, b in [(m, m), (m, q), (q, m), (q, q)]:
        assert hom_ungraded_dim(a, b) == graded_hom_poly(a, b).at_one()


def test_module_map_compose_and_total():
    m = regular_module(2)
    ident = ModuleMap.identity(m)
    assert ident.compose(ident) == ident
    assert ident.to_total() == QMatrix.identity(2)
    ident.check_commutes()


def test_hom_bases_are_module_maps():
    cat = soergel_category(3)
    m = cat.bott_samelson((1, 2))
    n = cat.bott_samelson((2, 1, 2))
    for d in range(-4, 5):
        for f in hom_graded(m, n, d):
            f.check_commutes()


def test_direct_sum_and_kernel():
    ring = coinvariant_ring(2)
    q = trivial_module(ring)
    s = q.direct_sum(q.shift(2))
    assert s.dims == {0: 1, -2: 1}
    # projection onto the first summand
    e = ModuleMap(s, s, 0, {0: QMatrix.from_rows([[1]])})
    k, inc = kernel_module(e)
    assert k.dims == {-2: 1}
    inc.check_commutes()


def test_poly_action_well_defined():
    # two lifts of the same ring element act identically
    m = regular_module(3)
    e1 = MultiPoly.elementary(1, 3)
    zero_action = m.poly_action(e1)
    assert all(block.is_zero() for block in zero_action.values())
    x1 = MultiPoly.variable(1, 3)
    x1_shifted = x1 + e1  # same class in the quotient
    a1 = m.poly_action(x1)
    a2 = m.poly_action(x1_shifted)
    assert all(a1[d] == a2[d] for d in a1)


def test_bott_samelson_induct_dims_s2():
    cat = soergel_category(2)
    q = cat.trivial()
    d_s = cat.induct(1, q)
    assert d_s.dims == {-1: 1, 1: 1}
    again = cat.induct(1, d_s)
    assert again.dims == {-2: 1, 0: 2, 2: 1}


def test_induct_doubles_dimension_s3():
    cat = soergel_category(3)
    m = cat.trivial()
    for i in (1, 2, 1):
        m2 = cat.induct(i, m)
        assert m2.total_dim() == 2 * m.total_dim()
        m = m2
    assert m.dims == {-3: 1, -1: 3, 1: 3, 3: 1}
