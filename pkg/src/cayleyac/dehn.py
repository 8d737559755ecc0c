"""Dehn's-algorithm machinery: relator systems closed under inversion and
cyclic permutation, greedy more-than-half reduction, and empirical
measurement of quasigeodesic and fellow-traveler constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .words import Alphabet, Word, free_reduce, word_inverse


class EmptyRelator(ValueError):
    pass


def _rotations(word: Word):
    for i in range(len(word)):
        yield word[i:] + word[:i]


class DehnSystem:
    """A relator set closed under inversion and cyclic permutation, with a
    prefix trie for leftmost-longest more-than-half matching."""

    def __init__(self, alphabet: Alphabet, relators: Sequence[Word]):
        self.alphabet = alphabet
        self.relators: tuple[Word, ...] = tuple(sorted(set(relators)))
        for r in self.relators:
            if not r:
                raise EmptyRelator("empty relator")
        self._trie = self._build_trie()
        self.max_relator_len = max((len(r) for r in self.relators), default=0)

    def _build_trie(self):
        # node: dict letter -> node, with "" slot holding the best
        # (replacement, consumed, relator rank) at this depth
        root: dict = {}
        for rank, rel in enumerate(self.relators):
            half = len(rel) // 2
            node = root
            for depth, letter in enumerate(rel, start=1):
                node = node.setdefault(letter, {})
                if depth > half:
                    replacement = word_inverse(rel[depth:], self.alphabet)
                    best = node.get("")
                    if best is None or rank < best[2]:
                        node[""] = (replacement, depth, rank)
        return root

    def longest_match(self, word: Sequence[str], start: int):
        """Deepest more-than-half relator prefix matching word[start:]."""
        node = self._trie
        best = None
        for pos in range(start, len(word)):
            node = node.get(word[pos])
            if node is None:
                break
            hit = node.get("")
            if hit is not None:
                best = hit
        return best

    def scan(self, word: Sequence[str]):
        """Leftmost-longest match over the whole word: (position, replacement,
        consumed) or None."""
        best = None
        for start in range(len(word)):
            hit = self.longest_match(word, start)
            if hit is not None and (best is None or hit[1] > best[2]):
                best = (start, hit[0], hit[1])
        return best


def close_dehn(relators: Sequence[Word], alphabet: Alphabet) -> DehnSystem:
    """Closure under inversion and all cyclic rotations (idempotent)."""
    closed: set[Word] = set()
    for rel in relators:
        rel = free_reduce(rel, alphabet)
        if not rel:
            raise EmptyRelator("relator freely reduces to the empty word")
        for rot in _rotations(rel):
            closed.add(rot)
            closed.add(word_inverse(rot, alphabet))
    return DehnSystem(alphabet, sorted(closed))


def close_dehn_with_charges(base: Mapping[Word, tuple[int, ...]],
                            alphabet: Alphabet):
    """Close a charged relator family: rotations carry the same central
    charge, inverses the negated one."""
    system = close_dehn(list(base), alphabet)
    charges: dict[Word, tuple[int, ...]] = {}
    for rel, charge in base.items():
        rel = free_reduce(rel, alphabet)
        neg = tuple(-c for c in charge)
        for rot in _rotations(rel):
            charges[rot] = charge
            charges[word_inverse(rot, alphabet)] = neg
    for rel in system.relators:
        if rel not in charges:
            raise ValueError(f"no charge derivable for relator {rel}")
    return system, charges


def d_reduce(word: Sequence[str], system: DehnSystem) -> Word:
    """Freely reduce and replace more-than-half relator subwords by the
    inverse of the remainder until neither applies.  Never longer than the
    input; evaluation unchanged."""
    current = free_reduce(word, system.alphabet)
    while True:
        hit = system.scan(current)
        if hit is None:
            return current
        start, replacement, consumed = hit
        current = free_reduce(
            current[:start] + replacement + current[start + consumed:], system.alphabet
        )


def d_reduce_with_charges(word: Sequence[str], system: DehnSystem,
                          charges: Mapping[Word, tuple[int, ...]],
                          rank: int) -> tuple[Word, tuple[int, ...]]:
    """Charged variant: every replacement consumes one relator instance and
    its central charge is accumulated."""
    total = [0] * rank
    current = free_reduce(word, system.alphabet)
    while True:
        hit = system.scan(current)
        if hit is None:
            return current, tuple(total)
        start, replacement, consumed = hit
        # identify the relator: consumed prefix + inverse of replacement
        relator = current[start : start + consumed] + word_inverse(replacement, system.alphabet)
        for k, c in enumerate(charges[relator]):
            total[k] += c
        current = free_reduce(
            current[:start] + replacement + current[start + consumed:], system.alphabet
        )


def is_d_reduced(word: Sequence[str], system: DehnSystem) -> bool:
    if tuple(word) != free_reduce(word, system.alphabet):
        return False
    return system.scan(word) is None


# ---------------------------------------------------------------------------
# Built-in presentations.


def surface_relator(genus: int) -> Word:
    """Product of commutators [a1,b1]...[ag,bg]."""
    rel: list[str] = []
    for i in range(1, genus + 1):
        a, b = f"a{i}", f"b{i}"
        rel += [a, b, a + "-", b + "-"]
    return tuple(rel)


def surface_alphabet(genus: int) -> Alphabet:
    names = []
    for i in range(1, genus + 1):
        names += [f"a{i}", f"b{i}"]
    return Alphabet(names)


def triangle_relators(p: int, q: int, r: int) -> tuple[list[Word], Alphabet]:
    """Rotation presentation <u, v | u^p, v^q, (uv)^r>.  An order-two
    generator is declared self-inverse, which absorbs its power relator into
    free reduction."""
    self_inv = [n for n, k in (("u", p), ("v", q)) if k == 2]
    alphabet = Alphabet(["u", "v"], self_inverse=self_inv)
    rels = [("u",) * p, ("v",) * q, ("u", "v") * r]
    rels = [rel for rel in rels if free_reduce(rel, alphabet)]
    return rels, alphabet


# ---------------------------------------------------------------------------
# Empirical constants.


@dataclass
class QuasiConstants:
    lam: Fraction
    eps: Fraction
    k_of_m: dict[int, int]
    delta: int
    radius: int
    samples: int
    details: dict = field(default_factory=dict)


_LAMBDA_GRID = [Fraction(1), Fraction(9, 8), Fraction(5, 4), Fraction(3, 2),
                Fraction(7, 4), Fraction(2), Fraction(5, 2), Fraction(3), Fraction(4)]


def _random_d_reduced(system: DehnSystem, length: int, rng: random.Random) -> Word:
    """Grow a random word letter by letter, keeping it D-reduced."""
    names = system.alphabet.names
    word: tuple[str, ...] = ()
    for _ in range(length):
        options = list(names)
        rng.shuffle(options)
        for letter in options:
            cand = word + (letter,)
            if free_reduce(cand, system.alphabet) == cand and is_d_reduced(cand, system):
                word = cand
                break
        else:
            break
    return word


def measure_quasi_constants(group, system: DehnSystem, ball, radius: int,
                            samples: int = 400, seed: int = 0,
                            ms: Sequence[int] = (1, 2)) -> QuasiConstants:
    """Empirical (lambda, epsilon), fellow-traveler constants k(m) and a
    thin-triangle delta, measured over sampled D-reduced words of length up
    to ``radius`` with exact lengths from the ball."""
    rng = random.Random(seed)
    words: list[Word] = []
    # exhaustive short words, then random longer ones
    def all_d_reduced(prefix: Word, remaining: int):
        yield prefix
        if remaining == 0:
            return
        for letter in system.alphabet.names:
            cand = prefix + (letter,)
            if free_reduce(cand, system.alphabet) == cand and is_d_reduced(cand, system):
                yield from all_d_reduced(cand, remaining - 1)

    words.extend(w for w in all_d_reduced((), min(3, radius)) if w)
    while len(words) < samples:
        w = _random_d_reduced(system, radius, rng)
        if w:
            words.append(w)

    # quasigeodesic data: (word length, element length) for all subwords
    data: list[tuple[int, int]] = []
    for w in words:
        prefix_elems = [group.identity]
        for letter in w:
            prefix_elems.append(group.multiply(prefix_elems[-1], group.generator_images[letter]))
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                diff = group.multiply(group.invert(prefix_elems[i]), prefix_elems[j])
                data.append((j - i, ball.length_of(diff)))

    lam, eps = _fit_quasi(data)

    # fellow traveling: pair each sampled word with a geodesic witness of a
    # nearby endpoint, then take the worst two-sided prefix-grid distance
    k_of_m: dict[int, int] = {}
    names = system.alphabet.names
    for m in ms:
        worst = 0
        for w in words[: min(len(words), 120)]:
            end = group.evaluate(w)
            for count in range(1, m + 1):
                connector = tuple(rng.choice(names) for _ in range(count))
                target = group.multiply(end, group.evaluate(connector))
                try:
                    v = ball.geodesic_witness(target)
                except KeyError:
                    continue
                worst = max(worst, _hausdorff(group, ball, w, v))
        k_of_m[m] = worst

    delta = _measure_delta(group, ball, words[: min(len(words), 60)], rng)
    return QuasiConstants(lam=lam, eps=eps, k_of_m=k_of_m, delta=delta,
                          radius=radius, samples=len(words),
                          details={"data_points": len(data)})


def _fit_quasi(data) -> tuple[Fraction, Fraction]:
    """Smallest grid lambda admitting a finite epsilon <= 12, then the
    smallest such epsilon."""
    for lam in _LAMBDA_GRID:
        eps = Fraction(0)
        ok = True
        for wlen, elen in data:
            need = Fraction(wlen) - lam * elen
            if need > eps:
                eps = need
            if eps > 12:
                ok = False
                break
        if ok:
            return lam, eps
    return _LAMBDA_GRID[-1], eps


def _path_points(group, word):
    pts = [group.identity]
    for letter in word:
        pts.append(group.multiply(pts[-1], group.generator_images[letter]))
    return pts


def _hausdorff(group, ball, u: Word, v: Word) -> int:
    """Two-sided Hausdorff distance between the paths labelled u and v,
    through exact ball lengths (distances beyond the ball radius are clamped
    to radius+1)."""
    pu = _path_points(group, u)
    pv = _path_points(group, v)
    grid = [[_dist(group, ball, a, b) for b in pv] for a in pu]
    one = max(min(row) for row in grid)
    two = max(min(grid[i][j] for i in range(len(pu))) for j in range(len(pv)))
    return max(one, two)


def _dist(group, ball, a, b) -> int:
    diff = group.multiply(group.invert(a), b)
    try:
        return ball.length_of(diff)
    except KeyError:
        return ball.radius + 1


def _measure_delta(group, ball, words, rng) -> int:
    """Worst thin-triangle constant over sampled geodesic triangles."""
    worst = 0
    pool = [w for w in words if w]
    for _ in range(min(30, len(pool))):
        wx = rng.choice(pool)
        wy = rng.choice(pool)
        x = group.evaluate(wx)
        y = group.evaluate(wy)
        try:
            side_a = ball.geodesic_witness(x)
            side_c = ball.geodesic_witness(y)
            side_b = ball.geodesic_witness(group.multiply(group.invert(x), y))
        except KeyError:
            continue
        pa = _path_points(group, side_a)
        pb = [group.multiply(x, p) for p in _path_points(group, side_b)]
        pc = _path_points(group, side_c)
        for p in pa:
            worst = max(worst, min(min(_dist(group, ball, p, q) for q in pb),
                                   min(_dist(group, ball, p, q) for q in pc)))
    return worst
