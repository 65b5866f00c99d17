import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lambdavar import (GridFunction, IndexSet, hardy_index_variation, lambda_harmonic, lambda_paper,
                       partial_variation, sharp_variation, star_variation_2d, total_variation, v_sharp)
from lambdavar.grid import FunctionSource
from lambdavar.variation import (continuity_profile, interval_weight_sharp, local_box_sharp_variation,
                                 local_sharp_variation, rectangle_packings, sharp_variation_axis,
                                 v_sharp_profile)
from lambdavar.variation.kernel import VariationError

H = lambda_harmonic()
LAMS = [lambda_harmonic(), lambda_paper(2), lambda_paper(3)]


def grid(values):
    return GridFunction.from_values(np.asarray(values, float))


def small_grids(max_side=4):
    return st.tuples(st.integers(2, max_side), st.integers(2, max_side), st.integers(0, 2 ** 32 - 1)).map(
        lambda t: grid(np.random.default_rng(t[2]).uniform(-1, 1, (t[0], t[1]))))


# -- sharp weights ----------------------------------------------------------

def test_sharp_weight_xy(xy_half):
    assert interval_weight_sharp(xy_half, 0, (0, 1)) == 0.5
    assert interval_weight_sharp(xy_half, 0, (0, 2)) == 1.0


def test_sharp_weight_one_dimensional():
    v = np.array([0.0, 2.0, -1.0])
    f = grid(v)
    for a in range(3):
        for b in range(a + 1, 3):
            assert interval_weight_sharp(f, 0, (a, b)) == abs(v[b] - v[a])


def test_sharp_weight_ignores_flat_axis():
    f = grid(np.tile(np.arange(4.0), (3, 1)))
    assert interval_weight_sharp(f, 0, (0, 2)) == 0.0


# -- sharp and partial ------------------------------------------------------

def test_constant_grid_is_zero():
    f = grid(np.full((3, 4), 2.5))
    for functional in (sharp_variation, partial_variation):
        _, tot = functional(f, H)
        assert (tot.lower, tot.upper, tot.exact) == (0.0, 0.0, True)
    assert star_variation_2d(f, H).value == 0.0
    assert total_variation(f, H)[1].value == 0.0


def test_xy_sharp_value(xy_half):
    axes, tot = sharp_variation(xy_half, H)
    assert [a.value for a in axes] == [1.0, 1.0]
    assert tot.value == 2.0


def test_one_variable_function():
    g = np.array([0.0, 1.0, 0.0, 1.0, 0.0])
    f = grid(np.tile(g[:, None], (1, 3)))
    sharp_axes, sharp = sharp_variation(f, H)
    part_axes, part = partial_variation(f, H)
    assert sharp_axes[1].value == 0.0
    assert sharp.value == pytest.approx(25 / 12, rel=1e-15)
    assert part.value == sharp.value == pytest.approx(oracles.variation_1d(g, H), rel=1e-12)


def test_symmetric_function_has_equal_axes():
    v = np.random.default_rng(2).normal(size=(5, 5))
    f = grid(v + v.T)
    axes, _ = sharp_variation(f, lambda_paper(2))
    assert axes[0].value == pytest.approx(axes[1].value, rel=1e-14)


def test_sharp_literal_slice_choice():
    rng = np.random.default_rng(11)
    for _ in range(5):
        v = rng.uniform(-1, 1, (4, 2))
        for s in (0, 1):
            assert sharp_variation_axis(grid(v), lambda_paper(3), s).value == pytest.approx(
                oracles.sharp_axis_literal(v, s, lambda_paper(3)), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(small_grids(5), st.sampled_from(LAMS))
def test_sharp_and_partial_match_oracles(f, lam):
    sa, _ = sharp_variation(f, lam)
    pa, _ = partial_variation(f, lam)
    for s in range(2):
        assert sa[s].exact and pa[s].exact
        assert sa[s].value == pytest.approx(oracles.sharp_axis(f.values, s, lam), rel=1e-12, abs=1e-14)
        assert pa[s].value == pytest.approx(oracles.partial_axis(f.values, s, lam), rel=1e-12, abs=1e-14)
        assert pa[s].value <= sa[s].value * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(small_grids(4), st.floats(-3, 3).filter(lambda c: abs(c) > 1e-3))
def test_homogeneity(f, c):
    for functional in (sharp_variation, partial_variation):
        a = functional(f, H)[1].value
        b = functional(f.scaled(c), H)[1].value
        assert b == pytest.approx(abs(c) * a, rel=1e-12, abs=1e-14)
    assert star_variation_2d(f.scaled(c), H).value == pytest.approx(
        abs(c) * star_variation_2d(f, H).value, rel=1e-12, abs=1e-14)


def test_monotone_in_lambda_termwise_larger():
    from lambdavar import lambda_constant
    rng = np.random.default_rng(4)
    for _ in range(20):
        f = grid(rng.uniform(-1, 1, (4, 5)))
        big = sharp_variation(f, lambda_constant(2.0))[1].value
        small = sharp_variation(f, lambda_constant(1.0))[1].value
        assert big <= small
        assert sharp_variation(f, lambda_paper(2))[1].value <= small


# -- index-set variation ----------------------------------------------------

def test_single_cell_index_variation():
    ax = np.array([0.0, 1.0])
    f = GridFunction((ax, ax), np.outer(ax, ax))
    br = hardy_index_variation(f, IndexSet((0, 1), 2), H)
    assert br.exact and br.value == 1.0


def test_xy_index_variation_exact_and_heuristic(xy_half):
    alpha = IndexSet((0, 1), 2)
    truth = oracles.index_variation_2axes(xy_half.values, (0, 1), [H, H])
    ex = hardy_index_variation(xy_half, alpha, H, method="exact")
    he = hardy_index_variation(xy_half, alpha, H, method="heuristic")
    assert ex.exact and ex.value == pytest.approx(truth, rel=1e-12)
    assert he.lower == pytest.approx(truth, rel=1e-12)
    assert truth == 1.0


def test_index_variation_flat_axis_is_zero():
    f = grid(np.tile(np.arange(4.0)[:, None], (1, 3)))
    assert hardy_index_variation(f, IndexSet((0, 1), 2), H).value == 0.0


@settings(max_examples=25, deadline=None)
@given(small_grids(4), st.sampled_from(LAMS))
def test_index_variation_matches_oracle(f, lam):
    br = hardy_index_variation(f, IndexSet((0, 1), 2), lam)
    truth = oracles.index_variation_2axes(f.values, (0, 1), [lam, lam])
    assert br.exact
    assert br.value == pytest.approx(truth, rel=1e-12, abs=1e-14)
    heur = hardy_index_variation(f, IndexSet((0, 1), 2), lam, method="heuristic")
    assert heur.lower <= truth * (1 + 1e-12) + 1e-14


def test_index_variation_3d_with_fixed_axis():
    rng = np.random.default_rng(6)
    v = rng.uniform(-1, 1, (3, 2, 3))
    f = grid(v)
    br = hardy_index_variation(f, IndexSet((0, 2), 3), [H, lambda_paper(2)])
    assert br.value == pytest.approx(oracles.index_variation_2axes(v, (0, 2), [H, lambda_paper(2)]),
                                     rel=1e-12)


def test_mixed_lambda_list_per_axis():
    rng = np.random.default_rng(9)
    f = grid(rng.uniform(-1, 1, (3, 4)))
    lams = [lambda_paper(3), H]
    assert hardy_index_variation(f, IndexSet((0, 1), 2), lams).value == pytest.approx(
        oracles.index_variation_2axes(f.values, (0, 1), lams), rel=1e-12)


def test_total_variation_xy(xy_half):
    parts, tot = total_variation(xy_half, H)
    expect = (oracles.partial_axis(xy_half.values, 0, H) + oracles.partial_axis(xy_half.values, 1, H)
              + oracles.index_variation_2axes(xy_half.values, (0, 1), [H, H]))
    assert tot.exact and tot.value == pytest.approx(expect, rel=1e-12)
    assert tot.value == 3.0
    assert set(parts) == {(0,), (1,), (0, 1)}


def test_total_variation_one_dimensional():
    v = np.array([0.0, 1.0, 0.0, 1.0, 0.0])
    assert total_variation(grid(v), H)[1].value == pytest.approx(25 / 12, rel=1e-15)


def test_empty_index_set_rejected(xy_half):
    with pytest.raises(VariationError):
        hardy_index_variation(xy_half, IndexSet((), 2), H)


# -- star variation ---------------------------------------------------------

def test_star_two_by_two():
    v = np.array([[0.0, 1.0], [2.0, 5.0]])
    assert star_variation_2d(grid(v), lambda_paper(2)).value == pytest.approx(2.0 / lambda_paper(2)(1))


def test_star_xy(xy_half):
    val = star_variation_2d(xy_half, H).value
    assert val >= 1.0
    assert val == pytest.approx(oracles.star_2d(xy_half.values, H), rel=1e-12)


@pytest.mark.parametrize("shape", [(2, 2), (2, 4), (3, 3), (3, 4), (4, 4)])
def test_packing_enumeration_matches_oracle(shape):
    ours = sum(f.shape[0] for f in rectangle_packings(*shape).values())
    assert ours == len(oracles.rectangle_families(*shape))


@settings(max_examples=20, deadline=None)
@given(small_grids(4), st.sampled_from(LAMS))
def test_star_matches_oracle(f, lam):
    br = star_variation_2d(f, lam)
    assert br.exact
    assert br.value == pytest.approx(oracles.star_2d(f.values, lam), rel=1e-12, abs=1e-14)


def test_star_large_grid_is_lower_bound():
    f = grid(np.random.default_rng(0).uniform(-1, 1, (6, 6)))
    br = star_variation_2d(f, H)
    assert not br.exact and br.upper == np.inf and br.lower > 0


# -- v_sharp and continuity profile -----------------------------------------

def test_v_sharp_values():
    mono = grid(np.linspace(0, 1, 6))
    assert [v_sharp(mono, 0, n) for n in range(1, 6)] == pytest.approx([1.0] * 5)
    zig = grid([0.0, 1.0, 0.0, 1.0, 0.0])
    assert v_sharp(zig, 0, 2) == 2.0


@settings(max_examples=30, deadline=None)
@given(small_grids(5))
def test_v_sharp_matches_oracle_and_linear_bound(f):
    for s in range(2):
        prof = v_sharp_profile(f, s)
        for n, val in enumerate(prof, start=1):
            assert val == pytest.approx(oracles.v_sharp_brute(f.values, s, n), abs=1e-13)
            assert val <= n * prof[0] + 1e-13


def test_continuity_profile(xy_half):
    alpha = IndexSet((0, 1), 2)
    prof = continuity_profile(xy_half, H, alpha, 0, 5)
    assert prof[0].value == hardy_index_variation(xy_half, alpha, H).value
    vals = [b.value for b in prof]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))
    flat = continuity_profile(grid(np.ones((3, 3))), H, alpha, 1, 4)
    assert all(b.value == 0.0 for b in flat)


# -- local variation --------------------------------------------------------

def test_local_variation_smooth_decays():
    src = FunctionSource(lambda x, y: np.sin(x + 2 * y) + np.cos(x), 2)
    lam = lambda_paper(2)
    vals = [local_box_sharp_variation(src, lam, (1.0, 2.0), 2.0 ** -j).lower for j in range(7)]
    assert all(b <= a * 1.05 for a, b in zip(vals, vals[1:]))
    assert vals[-1] < vals[0] / 30


def test_local_variation_constant_is_zero():
    src = FunctionSource(lambda x, y: np.full(np.shape(x), 4.0), 2)
    for eps in (1.0, 0.1):
        assert local_box_sharp_variation(src, H, (0.0, 0.0), eps).value == 0.0


def test_local_variation_inside_quadrant_of_jump():
    src = FunctionSource(lambda x, y: np.sign(x) * np.cos(y), 2, periodic=False)
    lam = lambda_paper(2)
    for delta in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
        vals = [local_sharp_variation(src, lam, (0.0, 0.0), 2.0 ** -j, delta).lower for j in range(7)]
        assert vals[-1] < vals[0] / 30
        assert all(b <= a * 1.05 + 1e-15 for a, b in zip(vals, vals[1:]))
    # the closed box straddles the jump and does not decay
    assert local_box_sharp_variation(src, lam, (0.0, 0.0), 2.0 ** -6).lower > 1.0
