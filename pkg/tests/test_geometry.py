import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from apollonian.descartes import ApWord, apply_word
from apollonian.geometry import (
    Scene, SceneCircle, max_epsilon, packing_circles, render_depth_circles, render_epsilon_circles, render_packing,
)
from conftest import reduced_words

PACKINGS = [(-7, 12, 17, 20), (-1, 2, 2, 3), (-2, 3, 6, 7), (-3, 5, 8, 8), (-6, 11, 14, 15), (-11, 21, 24, 28)]


def test_depth_circles_level0():
    s = render_depth_circles(0)
    assert sorted(ln.y for ln in s.lines) == [0, 1]
    assert {(c.x, c.y, c.r) for c in s.circles} == {(0, Fraction(1, 2), Fraction(1, 2)), (-1, Fraction(1, 2), Fraction(1, 2))}


def test_depth_circles_level1_and_2():
    s1 = render_depth_circles(1)
    assert len(s1.circles) == 2 + 4
    assert (Fraction(-1, 2), Fraction(7, 8), Fraction(1, 8)) in {(c.x, c.y, c.r) for c in s1.circles}
    s2 = render_depth_circles(2)
    assert len(s2.circles) + len(s2.lines) == 4 + 4 + 12
    assert {c.label for c in s1.circles} <= {c.label for c in s2.circles}
    with pytest.raises(ValueError):
        render_depth_circles(-1)


def test_packing_outer_circle_encloses_all():
    circles = packing_circles((-7, 12, 17, 20), 100)
    k0, x0, y0 = circles[0]
    assert k0 == -7 and (x0, y0) == (0, 0)
    R = Fraction(1, 7)
    for k, x, y in circles[1:]:
        assert x * x + y * y <= (R - Fraction(1, k)) ** 2


def test_packing_small_bound():
    # the circle of curvature 7 is its own Vieta partner, so two 7-circles appear
    ks = [k for k, *_ in packing_circles((-2, 3, 6, 7), 7)]
    assert ks == [-2, 3, 6, 7, 7]
    assert len(packing_circles((-2, 3, 6, 7), 6)) == 3


def test_packing_rejects_unbounded():
    for q in ((0, 0, 1, 1), (1, 0, 0, 1), (0, 1, 1, 4)):
        with pytest.raises(ValueError):
            render_packing(q, 10)
    with pytest.raises(ValueError):
        render_packing((1, 1, 1, 1), 10)


@pytest.mark.parametrize("q", PACKINGS)
def test_packing_disjoint_up_to_200(q):
    circles = packing_circles(q, 200)
    (k0, *_), rest = circles[0], circles[1:]
    R = Fraction(1, -k0)
    for i, (k, x, y) in enumerate(rest):
        r = Fraction(1, k)
        assert x * x + y * y <= (R - r) ** 2
        for k2, x2, y2 in rest[i + 1 :]:
            assert (x - x2) ** 2 + (y - y2) ** 2 >= (r + Fraction(1, k2)) ** 2


@pytest.mark.parametrize("q", PACKINGS)
def test_packing_tangencies_exact(q):
    # each generated circle is tangent to its three parents; spot check: every
    # inner circle touches at least three others (or the outer circle)
    circles = packing_circles(q, 150)
    (k0, *_), rest = circles[0], circles[1:]
    R = Fraction(1, -k0)
    small = [c for c in rest if c[0] <= 60]
    for k, x, y in small:
        r = Fraction(1, k)
        touching = sum(1 for k2, x2, y2 in rest if (k2, x2, y2) != (k, x, y)
                       and (x - x2) ** 2 + (y - y2) ** 2 == (r + Fraction(1, k2)) ** 2)
        touching += x * x + y * y == (R - r) ** 2
        assert touching >= 3


@given(st.sampled_from(PACKINGS), reduced_words(6))
def test_curvatures_independent_of_seed(q, word):
    q2 = apply_word(q, ApWord(word))
    a = Counter(k for k, *_ in packing_circles(q, 120))
    b = Counter(k for k, *_ in packing_circles(q2, 120))
    assert a == b


def test_epsilon_scene():
    c = (7, 4, -2, 4)
    s = render_epsilon_circles(c, [max_epsilon(c)])
    d, e = s.circles[0], s.circles[1]
    assert (d.x, d.y, d.r) == (Fraction(-1, 2), Fraction(7, 8), Fraction(1, 8))
    assert (e.x, e.y, e.r) == pytest.approx((-0.5, 0.875, 0.125))
    s0 = render_epsilon_circles(c, [0])
    assert (s0.circles[1].x, s0.circles[1].y, s0.circles[1].r) == pytest.approx((-0.5, math.sqrt(48) / 8, 0))
    with pytest.raises(ValueError):
        render_epsilon_circles(c, [1.0])


def test_csv_serialises_rationals():
    text = render_depth_circles(1).to_csv()
    lines = text.splitlines()
    assert lines[0] == "kind,x,y,r,label"
    assert "circle,-1/2,7/8,1/8,S1" in lines
    assert "line,,1,,Id2" in lines


def test_svg_is_deterministic_and_wellformed():
    import xml.etree.ElementTree as ET

    a = render_packing((-7, 12, 17, 20), 100).to_svg()
    b = render_packing((-7, 12, 17, 20), 100).to_svg()
    assert a == b
    root = ET.fromstring(a.split("\n", 1)[1])
    assert root.get("version") == "1.1"
    assert len(root.findall("{http://www.w3.org/2000/svg}circle")) == len(packing_circles((-7, 12, 17, 20), 100))
    assert "<text" in a and ">-7<" in a


def test_svg_labels_respect_threshold():
    s = Scene(circles=[SceneCircle(Fraction(0), Fraction(0), Fraction(1), "circle", "big"),
                       SceneCircle(Fraction(3), Fraction(0), Fraction(1, 1000), "circle", "tiny")])
    svg = s.to_svg(size=400, label_px=5)
    assert ">big<" in svg and ">tiny<" not in svg


def test_viewport_contains_geometry():
    s = render_depth_circles(2)
    xmin, ymin, xmax, ymax = s.bounds()
    for c in s.circles:
        assert xmin <= c.x - c.r and c.x + c.r <= xmax and ymin <= c.y - c.r and c.y + c.r <= ymax
