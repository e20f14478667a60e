import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from shapely.ops import unary_union

import floatgeo as fg
from sofabound._backend import Q
from sofabound.bnb import (
    D_AREA,
    LARGEST_COMPONENT,
    LONGEST_DIM,
    TOTAL_AREA,
    BoundCertificate,
    BoxE,
    Engine,
    EngineConfig,
    ProblemSpec,
    QueueEntry,
    g_eval,
    gamma_eval,
    initial_box,
    iter_run,
    pi_eval,
    run,
    split_box,
    splitting_index,
)
from sofabound.kernel import RIGHT_ANGLE, PythagoreanAngle, angle_from_triple
from sofabound.oracle import closed_form_single_angle
from sofabound.region import area, clip
from sofabound.scene import FIRST, SECOND, Interval, make_butterfly, make_hat_L, make_split_diff, make_strips
from strategies import TRIPLES, angles, increasing_angles

T345 = PythagoreanAngle(3, 4, 5)
K1 = ProblemSpec((T345,))


def box_of(*pairs):
    return BoxE(tuple(Interval.of(a, b) for a, b in pairs))


# -- problem specs ---------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        ProblemSpec(())
    with pytest.raises(ValueError):
        ProblemSpec((PythagoreanAngle(4, 3, 5), T345))
    with pytest.raises(ValueError):
        ProblemSpec((T345,), T345, T345)  # beta1 equal to the last corridor angle
    with pytest.raises(ValueError):
        ProblemSpec((T345,), RIGHT_ANGLE, PythagoreanAngle(4, 3, 5))
    with pytest.raises(ValueError):
        ProblemSpec((RIGHT_ANGLE,))
    assert K1.ell0() == Q(11, 5)
    assert ProblemSpec((T345,), PythagoreanAngle(4, 3, 5), PythagoreanAngle(4, 3, 5)).ell0() == 0


def test_engine_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(priority_mode="median")
    with pytest.raises(ValueError):
        EngineConfig(split_rule="random")
    assert not EngineConfig().has_stop
    assert EngineConfig(gap="1/100").gap == Q(1, 100)
    with pytest.raises(ValueError):
        list(iter_run(K1, EngineConfig()))


# -- initial box -----------------------------------------------------------------


def test_initial_box_right_final():
    b = initial_box(K1)
    assert b.intervals == (Interval.of(0), Interval.of(Q(-7, 4), Q(5, 4)))


def test_initial_box_slanted_final():
    beta = PythagoreanAngle(4, 3, 5)
    b = initial_box(ProblemSpec((T345,), beta, beta))
    assert b.intervals == (Interval.of(Q(-31, 15), Q(29, 15)), Interval.of(-2, Q(8, 5)))


def test_initial_box_contains_the_best_translations():
    """Translations outside the initial slice never beat the closed form."""
    target = closed_form_single_angle(T345)
    b = initial_box(K1)
    best_inside = max(g_eval(K1, [(0, b.intervals[1].lo + b.intervals[1].width * Q(i, 40))]) for i in range(41))
    for v in [Q(i, 4) for i in range(-20, 21)]:
        for u in [Q(-3), Q(-1), Q(1, 2), Q(2)]:
            assert g_eval(K1, [(u, v)]) <= target
    assert best_inside <= target
    assert best_inside > Q(28, 10)


@settings(max_examples=15, deadline=None)
@given(angles, angles)
def test_slanted_box_contains_grid_maximiser(alpha, beta):
    assume(alpha < beta and not beta.is_right)
    spec = ProblemSpec((alpha,), beta, beta)
    b = initial_box(spec)
    I, J = b.intervals
    inside = []
    outside = []
    for i in range(-2, 11):
        for j in range(-2, 11):
            u = I.lo + I.width * Q(i, 8)
            v = J.lo + J.width * Q(j, 8)
            val = g_eval(spec, [(u, v)])
            (inside if 0 <= i <= 8 and 0 <= j <= 8 else outside).append(val)
    # an outside translation only repeats a scene from inside, so the box bound covers it
    assert max(outside) <= gamma_eval(spec, b)
    assert max(inside) <= gamma_eval(spec, b)


# -- the objective and box bounds --------------------------------------------------


def test_g_empty_example():
    assert g_eval(K1, [(0, -3)]) == 0


def test_g_at_midpoint_matches_float_oracle():
    m = initial_box(K1).midpoint()
    exact = g_eval(K1, m)
    ref = fg.largest_area(fg.scene([fg.deg(T345)], [(float(m[0].x), float(m[0].y))]))
    assert float(exact) == pytest.approx(ref, abs=1e-9)
    assert exact == Q(35, 24)


@settings(max_examples=20, deadline=None)
@given(increasing_angles(2), st.lists(st.fractions(min_value=-2, max_value=1, max_denominator=8), min_size=4, max_size=4), st.fractions(min_value=-2, max_value=2, max_denominator=8))
def test_g_horizontal_shift_invariance(alphas, coords, a):
    spec = ProblemSpec(alphas)
    u = [(coords[0], coords[1]), (coords[2], coords[3])]
    shifted = [(x + a * al.cos, y - a * al.sin) for (x, y), al in zip(u, alphas)]
    assert g_eval(spec, u) == g_eval(spec, shifted)


@settings(max_examples=20, deadline=None)
@given(increasing_angles(2), st.lists(st.fractions(min_value=-2, max_value=1, max_denominator=8), min_size=4, max_size=4))
def test_g_matches_float_oracle_two_corridors(alphas, coords):
    spec = ProblemSpec(alphas)
    u = [(coords[0], coords[1]), (coords[2], coords[3])]
    ref = fg.scene([fg.deg(a) for a in alphas], [(float(x), float(y)) for x, y in u])
    assert float(g_eval(spec, u)) == pytest.approx(fg.largest_area(ref), abs=1e-9)
    assert float(pi_eval(spec, BoxE.at(u), TOTAL_AREA)) == pytest.approx(ref.area, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([t for t in TRIPLES if t[0] < t[1]]), st.fractions(min_value=-2, max_value=1, max_denominator=8), st.fractions(min_value=-2, max_value=1, max_denominator=8))
def test_g_matches_float_oracle_with_butterfly(t, u, v):
    alpha = angle_from_triple(*t)
    b1, b2 = alpha.complement(), PythagoreanAngle(24, 7, 25)
    if b2 < b1:
        b1, b2 = b2, b1
    assume(alpha < b1)
    spec = ProblemSpec((alpha,), b1, b2)
    ref = fg.scene([fg.deg(alpha)], [(float(u), float(v))], fg.deg(b1), fg.deg(b2))
    assert float(g_eval(spec, [(u, v)])) == pytest.approx(fg.largest_area(ref), abs=1e-9)


def test_gamma_initial_matches_float_oracle():
    b = initial_box(K1)
    I, J = b.intervals
    # corner translates of sub-boxes no wider than 1 sweep out the whole thickened hallway
    vs = [float(J.lo + J.width * Q(i, 4)) for i in range(5)]
    hat = unary_union([fg.hallway(fg.deg(T345), (0.0, v)) for v in vs])
    ref = fg.strip_h().intersection(hat)
    assert float(gamma_eval(K1, b)) == pytest.approx(fg.largest_area(ref), abs=1e-9)
    assert float(pi_eval(K1, b)) == pytest.approx(ref.area, abs=1e-9)


def random_box(rng, spec, shrink=4):
    b = initial_box(spec)
    ivs = []
    for iv in b.intervals:
        if iv.degenerate:
            ivs.append(iv)
            continue
        lo = iv.lo + iv.width * Q(rng.randint(0, 8), 8)
        w = iv.width * Q(rng.randint(0, 8), 8 * shrink)
        ivs.append(Interval(lo, lo + w))
    return BoxE(tuple(ivs))


SPECS = [
    K1,
    ProblemSpec((PythagoreanAngle(5, 12, 13), PythagoreanAngle(12, 5, 13))),
    ProblemSpec((PythagoreanAngle(3, 4, 5),), PythagoreanAngle(12, 5, 13), PythagoreanAngle(24, 7, 25)),
    ProblemSpec((PythagoreanAngle(7, 24, 25), PythagoreanAngle(3, 4, 5)), PythagoreanAngle(4, 3, 5), PythagoreanAngle(4, 3, 5)),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"k{s.k}-b{s.beta2}")
def test_pi_gamma_g_ordering(spec):
    rng = random.Random(7)
    for _ in range(12):
        b = random_box(rng, spec)
        p_total = pi_eval(spec, b, TOTAL_AREA)
        p_comp = pi_eval(spec, b, LARGEST_COMPONENT)
        gam = gamma_eval(spec, b)
        assert p_comp == gam
        assert p_total >= gam
        for _ in range(4):
            u = [(iv_u.lo + iv_u.width * Q(rng.randint(0, 6), 6), iv_v.lo + iv_v.width * Q(rng.randint(0, 6), 6))
                 for iv_u, iv_v in (b.corridor(j) for j in range(spec.k))]
            assert gam >= g_eval(spec, u)
        for i in range(1, b.dim + 1):
            if b.intervals[i - 1].degenerate:
                continue
            for child in split_box(b, i):
                assert pi_eval(spec, child, TOTAL_AREA) <= p_total
                assert gamma_eval(spec, child) <= gam


def test_degenerate_box_gamma_is_g():
    u = [(Q(0), Q(-1, 3))]
    assert gamma_eval(K1, BoxE.at(u)) == g_eval(K1, u)


def test_empty_scene_modes():
    b = BoxE.at([(0, -3)])
    assert pi_eval(K1, b, TOTAL_AREA) == pi_eval(K1, b, LARGEST_COMPONENT) == 0


def test_connected_scene_modes_agree():
    b = initial_box(K1)
    assert pi_eval(K1, b, TOTAL_AREA) == pi_eval(K1, b, LARGEST_COMPONENT)


# -- splitting -------------------------------------------------------------------


def test_split_box():
    b = box_of((0, 1), (2, 3))
    left, right = split_box(b, 1)
    assert left.intervals[0] == Interval.of(0, Q(1, 2)) and right.intervals[0] == Interval.of(Q(1, 2), 1)
    assert left.intervals[1] == right.intervals[1] == b.intervals[1]
    assert left.volume() + right.volume() == b.volume()
    with pytest.raises(ValueError):
        split_box(box_of((0, 0), (0, 1)), 1)
    with pytest.raises(ValueError):
        split_box(b, 3)


def test_longest_dim_rule():
    spec = ProblemSpec((PythagoreanAngle(5, 12, 13), PythagoreanAngle(12, 5, 13)))
    b = box_of((0, 1), (0, 3), (0, 2), (0, 2))
    assert splitting_index(spec, b, LONGEST_DIM) == 2


def test_single_free_coordinate():
    b = initial_box(K1)
    assert splitting_index(K1, b, LONGEST_DIM) == 2
    assert splitting_index(K1, b, D_AREA) == 2
    with pytest.raises(ValueError):
        splitting_index(K1, BoxE.at([(0, 0)]), D_AREA)


def d_areas_by_region_algebra(spec, box):
    """Areas of each split-difference set within the scene, built as Regions."""
    H = make_strips()[0]
    S = H
    for j, alpha in enumerate(spec.angles):
        S = S & make_hat_L(alpha, *box.corridor(j))
    if not spec.beta2.is_right:
        S = S & make_butterfly(spec.beta1, spec.beta2)
    out = []
    for i, iv in enumerate(box.intervals):
        j = i // 2
        D = make_split_diff(spec.angles[j], *box.corridor(j), FIRST if i % 2 == 0 else SECOND)
        out.append(area(clip(D & S, (-40, 40, -1, 2))))
    return out


def test_d_area_rule_matches_region_algebra():
    spec = ProblemSpec((PythagoreanAngle(5, 12, 13), PythagoreanAngle(12, 5, 13)))
    ivs = initial_box(spec).intervals
    b = BoxE((ivs[0], Interval(ivs[1].lo, ivs[1].mid), ivs[2], Interval(ivs[3].mid, ivs[3].hi)))
    ref = d_areas_by_region_algebra(spec, b)
    best = max(range(4), key=lambda i: (ref[i], -i))
    assert splitting_index(spec, b, D_AREA) == best + 1


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"k{s.k}-b{s.beta2}")
def test_engine_d_areas_match_region_algebra(spec):
    from sofabound.bnb import SceneEvaluator

    rng = random.Random(3)
    ev = SceneEvaluator(spec)
    for _ in range(3):
        b = random_box(rng, spec, shrink=2)
        ref = d_areas_by_region_algebra(spec, b)
        got = ev.d_areas(b, [ev.cells(b, skip=j) for j in range(spec.k)])
        for r, g, iv in zip(ref, got, b.intervals):
            assert g == (None if iv.degenerate else r)


# -- the main loop -----------------------------------------------------------------


def test_queue_ties_are_fifo():
    a = QueueEntry(None, Q(1), 0)
    b = QueueEntry(None, Q(1), 1)
    c = QueueEntry(None, Q(2), 2)
    assert sorted([b, c, a]) == [c, a, b]


def test_certificate_checks_bracket():
    with pytest.raises(ValueError):
        BoundCertificate(K1, Q(1), Q(2), 0, EngineConfig(), False)


def test_k1_bracket_holds_at_every_report():
    target = closed_form_single_angle(T345)
    cfg = EngineConfig(priority_mode=LARGEST_COMPONENT, gap=Q(1, 100), max_iterations=2000)
    uppers, lowers = [], []
    for item in iter_run(K1, cfg):
        if isinstance(item, BoundCertificate):
            cert = item
        else:
            assert item.lower <= target <= item.upper
            uppers.append(item.upper)
            lowers.append(item.lower)
    assert cert.lower <= target <= cert.upper and cert.upper - cert.lower <= Q(1, 100)
    assert uppers == sorted(uppers, reverse=True) and lowers == sorted(lowers)


@pytest.mark.parametrize("rule", [D_AREA, LONGEST_DIM])
def test_largest_component_mode_converges(rule):
    cfg = EngineConfig(priority_mode=LARGEST_COMPONENT, split_rule=rule, gap=Q(1, 20), max_iterations=20000)
    cert = run(K1, cfg)
    assert cert.stop_reason == "gap"
    assert cert.upper - cert.lower <= Q(1, 20)


def free_volume(box, free):
    v = Fraction(1)
    for i in free:
        v *= Fraction(box.intervals[i].width)
    return v


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"k{s.k}-b{s.beta2}")
def test_queue_and_discarded_cover_initial_box(spec):
    engine = Engine(spec, EngineConfig(max_iterations=60), keep_discarded=True)
    free = [i for i, iv in enumerate(engine.initial.intervals) if not iv.degenerate]
    total = free_volume(engine.initial, free)
    for _ in range(60):
        if engine.exhausted:
            break
        engine.step()
        left = sum(free_volume(e.box, free) for e in engine.queue) + sum(free_volume(b, free) for b in engine.discarded)
        assert left == total


@pytest.mark.parametrize("spec", SPECS[:2], ids=lambda s: f"k{s.k}")
def test_streams_are_monotone_and_deterministic(spec):
    cfg = EngineConfig(max_iterations=80)

    def stream():
        return [(r.iteration, r.upper, r.lower) for r in iter_run(spec, cfg) if not isinstance(r, BoundCertificate)]

    a, b = stream(), stream()
    assert a == b
    ups = [u for _, u, _ in a]
    los = [lo for _, _, lo in a]
    assert ups == sorted(ups, reverse=True) and los == sorted(los)
    assert all(lo <= up for _, up, lo in a)


def test_exhausted_queue_certifies_best_lower():
    engine = Engine(K1, EngineConfig(max_iterations=10))
    engine.best_lower = Q(5)  # pretend a huge lower bound is known
    while not engine.exhausted:
        engine.step()
    cert = engine.certificate("exhausted")
    assert cert.exhausted and cert.upper == cert.lower == Q(5)


def test_lower_starts_at_ell0():
    cfg = EngineConfig(max_iterations=1)
    first = next(iter_run(K1, cfg))
    assert first.lower >= Q(11, 5)
    beta = PythagoreanAngle(4, 3, 5)
    spec = ProblemSpec((T345,), beta, beta)
    first = next(iter_run(spec, cfg))
    b = initial_box(spec)
    assert first.lower == max(Q(0), g_eval(spec, b.midpoint()))
