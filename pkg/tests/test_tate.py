import random

from soergelkit.linalg import QMatrix
from soergelkit.tate import (
    Complex,
    GradedComplex,
    check_t_axioms,
    check_w_axioms,
    hom_homotopy,
    iota_collapse,
    random_complex,
    random_graded_complex,
    simple,
    simple_ungraded,
    t_truncate_leq,
    t_truncate_geq,
    w_truncate_leq,
    w_truncate_geq,
    weight_of,
)


def test_simple_placement():
    x = simple(0, 0)
    assert x.components() == {(0, 0): 1}
    y = simple(-2, -1)
    assert y.components() == {(-2, -1): 1}


def test_weight_of():
    assert weight_of(0, 0) == 0
    # the p-th twist shifted by [2p] sits at (-2p, -p) and has weight 0
    for p in (-2, -1, 1, 3):
        assert weight_of(-2 * p, -p) == 0
    # the single twist of the unit sits at (0, -1) with weight 2
    assert weight_of(0, -1) == 2


def test_iota_collapse_witnesses():
    # twisted-shifted unit at (-2, -1) collapses to the unit at 0
    assert iota_collapse(simple(-2, -1)) == simple_ungraded(0)
    assert iota_collapse(simple(0, 0)) == simple_ungraded(0)
    # the p-th twist alone lands in position 2p
    for p in (1, 2):
        assert iota_collapse(simple(0, -p)) == simple_ungraded(2 * p)


def test_iota_functorial_sum_and_shift():
    rng = random.Random(3)
    for _ in range(10):
        x = random_graded_complex(rng)
        y = random_graded_complex(rng)
        lhs = iota_collapse(x.direct_sum(y))
        rhs = iota_collapse(x).direct_sum(iota_collapse(y))
        assert lhs.dims == rhs.dims
        assert iota_collapse(x.shift(1)).dims == iota_collapse(x).shift(1).dims


def test_minimize_contractible():
    x = Complex({0: 1, 1: 1}, {0: QMatrix.identity(1)})
    assert x.minimize() == Complex({})


def test_minimize_zero_diff_fixed():
    x = Complex({0: 2, 3: 1})
    assert x.minimize() == x


def test_minimize_rank_one():
    x = Complex({0: 2, 1: 1}, {0: QMatrix.from_rows([[1, 0]])})
    assert x.minimize() == Complex({0: 1})


def test_minimize_idempotent_random():
    rng = random.Random(5)
    for _ in range(20):
        x = random_complex(rng)
        m = x.minimize()
        assert m.minimize() == m


def test_truncate_zero_complex():
    z = Complex({})
    assert t_truncate_leq(z, 0) == z
    assert w_truncate_leq(z, 0) == z
    gz = GradedComplex({})
    assert t_truncate_leq(gz, 0) == gz


def test_truncate_split_sum():
    x = simple_ungraded(0).direct_sum(simple_ungraded(1))
    assert t_truncate_leq(x, 0) == simple_ungraded(0)
    assert t_truncate_geq(x, 1) == simple_ungraded(1)


def test_weight_truncation_on_weight_zero_objects():
    x = simple(-2, -1).direct_sum(simple(0, 0))
    assert w_truncate_leq(x, -1).total_dim() == 0
    assert w_truncate_leq(x, 0) == x
    assert w_truncate_geq(x, 0) == x


def test_collapse_weight_exactness():
    # weights of all simples <= 0 iff collapsed positions <= 0, same for >= 0
    rng = random.Random(11)
    for _ in range(40):
        x = random_graded_complex(rng).minimize()
        weights = [weight_of(c, g) for (c, g), m in x.components().items()]
        collapsed = iota_collapse(x)
        positions = list(collapsed.minimize().dims)
        if weights:
            assert (max(weights) <= 0) == (max(positions) <= 0)
            assert (min(weights) >= 0) == (min(positions) >= 0)


def test_collapse_not_t_exact_witness():
    # the twisted-shifted unit lives in t-degree -2 but collapses to degree 0
    x = simple(-2, -1)
    assert t_truncate_leq(x, -2) == x
    assert t_truncate_geq(x, -2) == x
    collapsed = iota_collapse(x)
    assert t_truncate_leq(collapsed, -1).total_dim() == 0
    assert t_truncate_geq(collapsed, 0) == collapsed


def test_t_and_w_coincide_ungraded():
    rng = random.Random(7)
    for _ in range(50):
        x = random_complex(rng).minimize()
        for m in (-2, -1, 0, 1, 2):
            assert t_truncate_leq(x, m) == w_truncate_leq(x, m)
            assert t_truncate_geq(x, m) == w_truncate_geq(x, m)


def test_hom_homotopy_point():
    assert hom_homotopy(simple_ungraded(0), simple_ungraded(0), 0) == 1
    assert hom_homotopy(simple_ungraded(0), simple_ungraded(0), 1) == 0


def test_hom_homotopy_graded_internal_degrees_block():
    # no maps between different internal degrees, at any shift
    x = simple(0, 0)
    y = simple(0, -1)
    for k in range(-3, 4):
        assert hom_homotopy(x, y, k) == 0
    # but after collapse they interact
    assert hom_homotopy(iota_collapse(x), iota_collapse(simple(-2, -1)), 0) == 1


def test_hom_homotopy_minimized_formula():
    rng = random.Random(13)
    for _ in range(15):
        x = random_graded_complex(rng).minimize()
        y = random_graded_complex(rng).minimize()
        for k in (-1, 0, 2):
            expected = 0
            for g in set(x.internal_degrees()) | set(y.internal_degrees()):
                lx, ly = x.layer(g), y.layer(g)
                expected += sum(lx.dim_at(c) * ly.dim_at(c + k) for c in lx.positions())
            assert hom_homotopy(x, y, k) == expected


def test_minimize_preserves_hom_homotopy():
    rng = random.Random(17)
    for _ in range(12):
        x = random_complex(rng, max_pos=2)
        y = random_complex(rng, max_pos=2)
        for k in range(-3, 4):
            assert hom_homotopy(x, y, k) == hom_homotopy(x.minimize(), y.minimize(), k)


def test_degrading_pointwise():
    # Hom after collapse equals the sum over twist-shifts before collapse
    rng = random.Random(19)
    for _ in range(10):
        x = random_graded_complex(rng, max_g=1, max_pos=2).minimize()
        y = random_graded_complex(rng, max_g=1, max_pos=2).minimize()
        lhs = hom_homotopy(iota_collapse(x), iota_collapse(y), 0)
        rhs = sum(hom_homotopy(x, y.twist_shift(i), 0) for i in range(-6, 7))
        assert lhs == rhs


def test_axiom_checkers_pass():
    rng = random.Random(23)
    graded_sample = [random_graded_complex(rng, max_g=1, max_pos=2) for _ in range(6)]
    ungraded_sample = [random_complex(rng, max_pos=2) for _ in range(6)]
    for sample in (graded_sample, ungraded_sample):
        t_report = check_t_axioms(sample)
        w_report = check_w_axioms(sample)
        assert t_report["all_pass"], t_report
        assert w_report["all_pass"], w_report


def test_axiom_checker_single_simple():
    report = check_t_axioms([simple(0, 0)])
    assert report["all_pass"] and report["cases"] == 1


def test_random_complexes_square_to_zero():
    rng = random.Random(29)
    for _ in range(30):
        x = random_complex(rng)
        x.validate()
        g = random_graded_complex(rng)
        for layer in g.layers.values():
            layer.validate()
