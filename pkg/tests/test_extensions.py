import random

import pytest

from cayleyac.dehn import is_d_reduced
from cayleyac.explorer import build_ball
from cayleyac.extensions import (CentralExtension, MissingCentralGenerator,
                                 central_witness_path)


def test_central_alphabet_and_flag(genus2_ext):
    # charge 1 lifts to the +-1 letter; short loops cannot certify more at
    # this scale, and the budgeted enumeration reports truncation honestly
    assert genus2_ext.central.names == {"c1": (1,)}
    assert genus2_ext.central.truncated


def test_identity_law(genus2_ext):
    g = genus2_ext.evaluate(("a1", "b1", "c1"))
    assert genus2_ext.element_equal(genus2_ext.multiply(genus2_ext.identity, g), g)


def test_half_relator_product_collects_charge(genus2_ext, surface2):
    rel = surface2.relator
    first = genus2_ext.evaluate(rel[:4])
    second = genus2_ext.evaluate(rel[4:])
    product = genus2_ext.multiply(first, second)
    assert product.avec == (1,)
    assert product.base.word == ()


def test_inverse_law_random(genus2_ext):
    rng = random.Random(20)
    names = genus2_ext.alphabet.names
    for _ in range(10 ** 3):
        w = tuple(rng.choice(names) for _ in range(rng.randrange(0, 9)))
        g = genus2_ext.evaluate(w)
        assert genus2_ext.element_equal(
            genus2_ext.multiply(g, genus2_ext.invert(g)), genus2_ext.identity
        )


def test_associativity_random(genus2_ext):
    rng = random.Random(21)
    names = genus2_ext.alphabet.names
    pool = [genus2_ext.evaluate(tuple(rng.choice(names) for _ in range(rng.randrange(7))))
            for _ in range(40)]
    for _ in range(300):
        u, v, w = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        left = genus2_ext.multiply(genus2_ext.multiply(u, v), w)
        right = genus2_ext.multiply(u, genus2_ext.multiply(v, w))
        assert genus2_ext.element_equal(left, right)


def test_centrality_exhaustive(genus2_ext):
    c = genus2_ext.generator_images["c1"]
    for name in genus2_ext.alphabet.names:
        g = genus2_ext.generator_images[name]
        assert genus2_ext.element_equal(
            genus2_ext.multiply(c, g), genus2_ext.multiply(g, c)
        )


def test_dreduced_shape_examples(genus2_ext, surface2):
    rel = surface2.relator
    # a full relator spelled in zero-offset lifts becomes one central letter
    shaped = genus2_ext.to_dreduced_shape(rel)
    assert shaped == ("c1",)
    assert genus2_ext.element_equal(genus2_ext.evaluate(shaped),
                                    genus2_ext.evaluate(rel))
    # already-shaped words are unchanged
    assert genus2_ext.to_dreduced_shape(("c1", "a1", "b2")) == ("c1", "a1", "b2")


def test_dreduced_shape_random(genus2_ext):
    rng = random.Random(22)
    names = genus2_ext.alphabet.names
    for _ in range(200):
        w = tuple(rng.choice(names) for _ in range(12))
        shaped = genus2_ext.to_dreduced_shape(w)
        assert len(shaped) <= len(w)
        assert genus2_ext.element_equal(genus2_ext.evaluate(shaped),
                                        genus2_ext.evaluate(w))
        _, base_part = genus2_ext.split_central(shaped)
        assert is_d_reduced(base_part, genus2_ext.dehn)


def test_central_geodesic_and_missing(genus2_ext):
    assert genus2_ext.central_geodesic((0,)) == ()
    assert genus2_ext.central_geodesic((3,)) == ("c1", "c1", "c1")
    assert genus2_ext.central_length((-2,)) == 2
    starved = CentralExtension(
        genus2_ext.base, {genus2_ext.base.relator: (2,)}, rank=1,
        quasi=None, extra_central=[(2,)],
    )
    with pytest.raises(MissingCentralGenerator):
        starved.central_geodesic((1,))


def test_geodesics_admit_dreduced_projection(genus2_ext):
    ball = build_ball(genus2_ext, 4)
    for idx in range(len(ball)):
        w = ball.geodesic_witness(idx)
        shaped = genus2_ext.to_dreduced_shape(w)
        assert len(shaped) == len(w)
        _, base_part = genus2_ext.split_central(shaped)
        assert is_d_reduced(base_part, genus2_ext.dehn)


def test_central_isometry_small(genus2_ext):
    ball = build_ball(genus2_ext, 4)
    for idx in range(len(ball)):
        elem = ball.elements[idx]
        if not elem.base.word:
            assert genus2_ext.central_length(elem.avec) == ball.lengths[idx]


def test_witness_path_identical_endpoints(genus2_ext, surface_ball5):
    from cayleyac.extensions import central_witness_path as cwp

    ball = build_ball(genus2_ext, 3)
    g = ball.elements[next(iter(ball.sphere(2)))]
    assert cwp(genus2_ext, ball, surface_ball5, g, g, (), 2) == ()


def test_witness_path_small_spheres(genus2_ext, surface_ball5):
    from cayleyac.convexity import compare_witness

    ball = build_ball(genus2_ext, 4)
    for n in (1, 2, 3):
        report = compare_witness(
            ball, n, 2,
            lambda i, j, q: central_witness_path(
                genus2_ext, ball, surface_ball5,
                ball.elements[i], ball.elements[j], q, n,
            ),
        )
        assert report["pairs"] > 0


def test_direct_product_central_values(surface2):
    # trivial charges: short loops realize nothing, the charge letters come
    # from the explicitly supplied basis
    trivial = CentralExtension(surface2, {surface2.relator: (0,)}, rank=1,
                               quasi=None, extra_central=[(1,)])
    assert trivial.central.names == {"c1": (1,)}
    g = trivial.evaluate(surface2.relator)
    assert g.avec == (0,)
