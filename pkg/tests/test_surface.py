import itertools
import random

from cayleyac.explorer import build_ball
from cayleyac.words import free_reduce, word_inverse


def test_relator_maps_to_identity_in_quotients(surface2):
    fp = surface2._fp_of_word(surface2.relator)
    assert fp == surface2.identity.fp


def test_equal_elements_same_key(surface2):
    rel = surface2.relator
    u = surface2.evaluate(rel[:4])
    v = surface2.evaluate(word_inverse(rel[4:], surface2.alphabet))
    assert surface2.element_equal(u, v)
    assert surface2.canonical_key(u) == surface2.canonical_key(v)


def test_distinct_elements_distinct_keys(surface_ball5):
    assert len(set(surface_ball5.keys)) == len(surface_ball5)


def test_sphere_counts(surface_ball5):
    # free numbers minus the half-relator identifications at radius 4
    assert surface_ball5.sphere_sizes()[:5] == [1, 8, 56, 392, 2736]


def test_ball_matches_word_enumeration(surface2):
    # independent count at radius 3: no relations visible below length 4,
    # so elements are exactly the freely reduced words
    ball = build_ball(surface2, 3)
    names = surface2.alphabet.names
    words = set()
    for k in range(4):
        for word in itertools.product(names, repeat=k):
            if free_reduce(word, surface2.alphabet) == word:
                words.add(word)
    assert len(words) == len(ball)


def test_word_problem_random_insertions(surface2):
    rng = random.Random(13)
    names = surface2.alphabet.names
    for _ in range(150):
        u = tuple(rng.choice(names) for _ in range(rng.randrange(0, 8)))
        v = tuple(rng.choice(names) for _ in range(rng.randrange(0, 8)))
        rel = rng.choice(surface2.dehn.relators)
        with_rel = surface2.evaluate(u + rel + v)
        without = surface2.evaluate(u + v)
        assert surface2.element_equal(with_rel, without)
        assert surface2.canonical_key(with_rel) == surface2.canonical_key(without)


def test_inverse_and_associativity(surface2):
    rng = random.Random(14)
    names = surface2.alphabet.names
    pool = [surface2.evaluate(tuple(rng.choice(names) for _ in range(rng.randrange(6))))
            for _ in range(30)]
    for _ in range(100):
        u, v, w = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        left = surface2.multiply(surface2.multiply(u, v), w)
        right = surface2.multiply(u, surface2.multiply(v, w))
        assert surface2.element_equal(left, right)
        assert surface2.element_equal(surface2.multiply(u, surface2.invert(u)),
                                      surface2.identity)
