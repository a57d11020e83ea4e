"""Loop-level monodromy behavior beyond the headline checks.

The permutation induced by a loop depends only on its homotopy class in
the punctured parameter plane, which these tests probe from several
directions: running a loop twice, mirroring it, moving the corridor to
the other side of the critical line.
"""

import pytest

from mono.equation import critical_point
from mono.paths import keyhole_loop, loop_around
from mono.permutation import Permutation, compose, extract_permutation, is_transposition
from mono.rootwindow import find_roots
from mono.tracking import TrackConfig, track_bundle

from conftest import W5


def _perm(bundle, path):
    end, _ = track_bundle(bundle, path, TrackConfig())
    return extract_permutation(bundle, end)


def _local_perm(path):
    # local loops are based at their own start, not at the origin
    bundle = find_roots(path.start, W5)
    return bundle, _perm(bundle, path)


def test_left_corridor_gives_star_transpositions(bundle5):
    # all four keyholes share the base root: label 1 appears in every swap
    got = {n: _perm(bundle5, keyhole_loop(n, 0.5)).cycle_string()
           for n in (-1, 0, 1, 2)}
    assert got == {-1: "(1 2)", 0: "(1 3)", 1: "(1 4)", 2: "(1 5)"}


def test_right_corridor_conjugates(bundle5):
    # crossing to re = 0 passes the corridor through the other sheet
    # pattern: a_n with n >= 1 now swaps neighbors instead of the base
    got = {n: _perm(bundle5, keyhole_loop(n, 0.5, corridor_re=0.5)).cycle_string()
           for n in (-1, 0, 1, 2)}
    assert got == {-1: "(1 2)", 0: "(1 3)", 1: "(3 4)", 2: "(4 5)"}


def test_double_loop_is_identity():
    # transpositions are involutions; winding twice undoes the swap
    _, p = _local_perm(loop_around(1, 0.4, turns=2))
    assert p.is_identity()


def test_clockwise_loop_same_transposition():
    _, p_ccw = _local_perm(loop_around(1, 0.4, turns=1))
    _, p_cw = _local_perm(loop_around(1, 0.4, turns=-1))
    assert p_ccw == p_cw
    assert is_transposition(p_ccw)[0]


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_local_loop_swaps_merging_pair_only(n):
    # the small circle never leaves the neighborhood of a_n, so exactly
    # the two sheets that collide at z_n exchange, and no others
    bundle, p = _local_perm(loop_around(n, 0.4))
    ok, pair = is_transposition(p)
    assert ok
    zc = critical_point(n).z
    by_distance = sorted(bundle.labels(), key=lambda l: abs(bundle.position(l) - zc))
    assert set(pair) == set(by_distance[:2])
    for lab in pair:
        assert abs(bundle.position(lab) - zc) < 1.3  # ~ sqrt(2 rho)


def test_keyhole_radius_does_not_change_class(bundle5):
    a = _perm(bundle5, keyhole_loop(1, 0.5))
    b = _perm(bundle5, keyhole_loop(1, 0.25))
    assert a == b


def test_composed_word_tracks_as_product(bundle5):
    from mono.paths import concat

    g0 = keyhole_loop(0, 0.5)
    g1 = keyhole_loop(1, 0.5)
    word = concat(g0, g1)
    direct = _perm(bundle5, word)
    expected = compose(_perm(bundle5, g0), _perm(bundle5, g1))
    assert direct == expected
    # (1 3) then (1 4): 1 -> 3, 3 -> 1 -> 4, 4 -> 1
    assert direct.cycle_string() == "(1 3 4)"
