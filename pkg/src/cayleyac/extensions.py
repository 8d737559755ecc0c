"""Central extensions of Dehn-presented hyperbolic groups.

The cocycle is never materialized: an element is a pair (central vector,
D-reduced base word) and multiplication concatenates base words, reducing
with the relator system while every more-than-half replacement deposits the
relator's central charge.  The generating set consists of the base letters
(with optional central offsets), the zero-offset lifts, and a central
alphabet assembled from the lifted relator charges, a budgeted short-word
enumeration, and a certified relator-power completion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .dehn import QuasiConstants, close_dehn_with_charges, d_reduce_with_charges
from .groups import GroupInterface, encode_word, pack_ints, unpack_ints
from .words import Word, word_inverse


class MissingCentralGenerator(KeyError):
    """A combined charge fell outside the central alphabet: the central
    generating set was built too small for this operation."""


class ExtElement:
    __slots__ = ("avec", "base")

    def __init__(self, avec: tuple[int, ...], base):
        self.avec = avec
        self.base = base

    def __repr__(self):
        return f"ExtElement({self.avec}, {' '.join(self.base.word) or 'e'})"


@dataclass
class CentralAlphabet:
    """Central letters: nonzero vectors closed under negation, named c1, c2,
    ... along the sorted positive representatives."""

    values: tuple[tuple[int, ...], ...]
    truncated: bool = False
    names: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        reps = sorted({max(v, tuple(-c for c in v)) for v in self.values if any(v)})
        self.names = {f"c{i}": v for i, v in enumerate(reps, start=1)}

    def letter_pairs(self):
        return list(self.names.items())


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_neg(u):
    return tuple(-a for a in u)


class CentralExtension(GroupInterface):
    """G = Z^rank x_rho H for a Dehn-presented base group H."""

    def __init__(self, base, relator_charges: Mapping[Word, tuple[int, ...]],
                 rank: int = 1, quasi: Optional[QuasiConstants] = None,
                 base_offsets: Optional[Mapping[str, tuple[int, ...]]] = None,
                 budget: int = 10 ** 6, extra_central: Sequence[tuple[int, ...]] = ()):
        self.base = base
        self.rank = rank
        self.quasi = quasi
        self._zero = (0,) * rank
        base_rels = {tuple(rel): tuple(charge) for rel, charge in relator_charges.items()}
        for charge in base_rels.values():
            if len(charge) != rank:
                raise ValueError("charge rank mismatch")
        self.dehn, self.charges = close_dehn_with_charges(base_rels, base.alphabet)

        self.offsets = {name: self._zero for name in base.alphabet.names}
        for name, off in (base_offsets or {}).items():
            self.offsets[name] = tuple(off)
            self.offsets[base.alphabet.inverse(name)] = _vec_neg(tuple(off))

        self._identity = ExtElement(self._zero, base.identity)
        self._images: dict[str, ExtElement] = {
            name: ExtElement(self.offsets[name], base.evaluate((name,)))
            for name in base.alphabet.names
        }
        self.central = self._build_central_alphabet(budget, extra_central)

        from .words import Alphabet

        positive = [n for n in base.alphabet.names if not n.endswith("-")]
        central_names = [name for name, _ in self.central.letter_pairs()]
        self.alphabet = Alphabet(positive + central_names)
        for name, vec in self.central.letter_pairs():
            self._images[name] = ExtElement(vec, base.identity)
            self._images[self.alphabet.inverse(name)] = ExtElement(_vec_neg(vec), base.identity)
        self._central_geo: dict[tuple[int, ...], Word] = {self._zero: ()}

    # -- construction of the central alphabet --------------------------------

    def _lifted_prefix_charges(self) -> set[tuple[int, ...]]:
        """Prefix sums over offset/zero spellings of each relator, shifted by
        the relator's lifted charge.  With zero offsets this is the charge
        set itself."""
        out: set[tuple[int, ...]] = set()
        for rel in self.dehn.relators:
            dtilde = self.charges[rel]
            prefixes = {self._zero}
            acc = {self._zero}
            for letter in rel:
                off = self.offsets[letter]
                choices = {off, self._zero}
                acc = {_vec_add(a, c) for a in acc for c in choices}
                prefixes |= acc
                if len(prefixes) > 4096:
                    break
            for prefix in prefixes:
                out.add(_vec_add(prefix, dtilde))
        return out

    def _build_central_alphabet(self, budget: int, extra) -> CentralAlphabet:
        values: set[tuple[int, ...]] = {v for v in self._lifted_prefix_charges() if any(v)}
        for v in extra:
            if any(v):
                values.add(tuple(v))
        truncated = False

        if self.quasi is not None:
            k = self.quasi.k_of_m.get(2, 0)
            length_bound = int(self.quasi.lam * (2 * k + 3) + self.quasi.eps + 2 * k + 3)

            # certified completion: concatenated relator instances realize the
            # summed charge at the summed spelled length
            base_costs = sorted({(len(rel), self.charges[rel]) for rel in self.dehn.relators})
            seen = {self._zero: 0}
            frontier = [(self._zero, 0)]
            while frontier:
                nxt = []
                for vec, cost in frontier:
                    for clen, charge in base_costs:
                        nv = _vec_add(vec, charge)
                        nc = cost + clen
                        if nc <= length_bound and seen.get(nv, nc + 1) > nc:
                            seen[nv] = nc
                            nxt.append((nv, nc))
                frontier = nxt
            values |= {v for v in seen if any(v)}

            # budgeted breadth-first enumeration over base-letter words,
            # flagged partial on overflow
            visited = 0
            frontier_elems = [self._identity]
            keys = {(self._identity.avec, self._identity.base.word)}
            depth = 0
            while frontier_elems and depth < length_bound and not truncated:
                depth += 1
                nxt_elems = []
                for elem in frontier_elems:
                    for name in self.base.alphabet.names:
                        child = self.multiply(elem, self._images[name])
                        visited += 1
                        rk = (child.avec, child.base.word)
                        if rk in keys:
                            continue
                        keys.add(rk)
                        nxt_elems.append(child)
                        if not child.base.word and any(child.avec):
                            values.add(child.avec)
                    if visited > budget:
                        truncated = True
                        break
                frontier_elems = nxt_elems
        return CentralAlphabet(values=tuple(sorted(values)), truncated=truncated)

    # -- group interface ------------------------------------------------------

    @property
    def identity(self) -> ExtElement:
        return self._identity

    def multiply(self, u: ExtElement, v: ExtElement) -> ExtElement:
        word, consumed = d_reduce_with_charges(
            u.base.word + v.base.word, self.dehn, self.charges, self.rank
        )
        base_elem = self.base.compose_element(word, u.base, v.base)
        return ExtElement(_vec_add(_vec_add(u.avec, v.avec), consumed), base_elem)

    def invert(self, u: ExtElement) -> ExtElement:
        # u.word followed by its formal inverse cancels freely, so no charge
        return ExtElement(_vec_neg(u.avec), self.base.invert(u.base))

    @property
    def generator_images(self):
        return self._images

    def element_equal(self, u: ExtElement, v: ExtElement) -> bool:
        diff = self.multiply(u, self.invert(v))
        return not any(diff.avec) and self.base.element_equal(diff.base, self.base.identity)

    def resolve(self, elem: ExtElement) -> ExtElement:
        rep = self.base.resolve(elem.base)
        if rep.word == elem.base.word:
            return elem
        # transport the central part onto the representative word; the
        # reduction of word * rep^-1 to the empty word collects the charge
        _, consumed = d_reduce_with_charges(
            elem.base.word + word_inverse(rep.word, self.base.alphabet),
            self.dehn, self.charges, self.rank,
        )
        return ExtElement(_vec_add(elem.avec, consumed), rep)

    def dedup_key(self, elem: ExtElement):
        return pack_ints(elem.avec) + encode_word(elem.base.word, self.base.alphabet)

    def canonical_key(self, elem: ExtElement) -> bytes:
        resolved = self.resolve(elem)
        return pack_ints(resolved.avec) + encode_word(resolved.base.word, self.base.alphabet)

    def presort_key(self, elem: ExtElement) -> bytes:
        return pack_ints(elem.avec) + encode_word(elem.base.word, self.base.alphabet)

    def decode_key(self, key: bytes) -> ExtElement:
        avec = unpack_ints(key[: 8 * self.rank])
        base_elem = self.base.decode_key(key[8 * self.rank:])
        return ExtElement(avec, base_elem)

    def fingerprint(self) -> str:
        charge_desc = sorted((" ".join(r), list(c)) for r, c in self.charges.items())[:2]
        return self.word_fingerprint(
            f"central_ext rank={self.rank} base={self.base.fingerprint()} {charge_desc}"
            f" central={[v for _, v in self.central.letter_pairs()]}"
        )

    def assembled_generating_set(self) -> dict[str, list[str]]:
        """The generating set by role: the supplied base letters, the
        zero-offset lifts (identical to them when no offsets are configured),
        and the central letters."""
        base_letters = [n for n in self.base.alphabet.names]
        zero_offset = [n for n in base_letters if not any(self.offsets[n])]
        central = [name for name, _ in self.central.letter_pairs()]
        central += [self.alphabet.inverse(name) for name, _ in self.central.letter_pairs()]
        return {"base": base_letters, "zero_offset": zero_offset, "central": central}

    # -- central geodesics ------------------------------------------------------

    def central_geodesic(self, vec: tuple[int, ...]) -> Word:
        """Shortest word over the central letters evaluating to (vec, 1)."""
        vec = tuple(vec)
        if vec in self._central_geo:
            return self._central_geo[vec]
        steps = []
        for name, value in self.central.letter_pairs():
            steps.append((name, value))
            steps.append((self.alphabet.inverse(name), _vec_neg(value)))
        frontier = {self._zero: ()}
        seen = dict(frontier)
        limit = 4 * sum(abs(c) for c in vec) + 4
        for _ in range(limit):
            if vec in seen:
                break
            nxt = {}
            for v, word in sorted(frontier.items()):
                for name, value in steps:
                    nv = _vec_add(v, value)
                    if nv not in seen and nv not in nxt:
                        nxt[nv] = word + (name,)
            seen.update(nxt)
            frontier = nxt
            if not frontier:
                break
        if vec not in seen:
            raise MissingCentralGenerator(f"{vec} not reachable over {self.central.names}")
        self._central_geo[vec] = seen[vec]
        return seen[vec]

    def central_length(self, vec) -> int:
        return len(self.central_geodesic(tuple(vec)))

    # -- normal-shape rewriting ----------------------------------------------------

    def split_central(self, word: Word) -> tuple[tuple[int, ...], Word]:
        """Total value of the central letters and the base-letter subword."""
        vec = self._zero
        base_letters = []
        for letter in word:
            if letter in self.base.alphabet:
                base_letters.append(letter)
            else:
                img = self._images[letter]
                if img.base.word:
                    raise ValueError(f"letter {letter} is neither central nor base")
                vec = _vec_add(vec, img.avec)
        return vec, tuple(base_letters)

    def to_dreduced_shape(self, word: Word) -> Word:
        """Equal evaluation, length never larger: central letters migrate to
        the front and the base projection becomes D-reduced, each replacement
        consuming a relator charge realized by central letters."""
        vec, base_word = self.split_central(word)
        for letter in base_word:
            vec = _vec_add(vec, self.offsets[letter])
        reduced, consumed = d_reduce_with_charges(base_word, self.dehn, self.charges, self.rank)
        vec = _vec_add(vec, consumed)
        for letter in reduced:
            vec = _vec_add(vec, _vec_neg(self.offsets[letter]))
        return self.central_geodesic(vec) + reduced


class PreconditionViolated(ValueError):
    pass


def central_witness_path(group: CentralExtension, ball, base_ball,
                         g: ExtElement, g_prime: ExtElement, q: Word, n: int) -> Word:
    """A word from g to g' through the radius-n ball, for sphere-n elements
    with g' = g * eval(q), l(q) <= 2.

    Shape: back up along the non-central tail (at most k+1 letters), cross to
    the other geodesic with a short base path, correct with a central
    geodesic, then run forward.  When both elements are central the central
    letters alone connect them (the central subgroup embeds isometrically).
    """
    if len(q) > 2:
        raise PreconditionViolated("connector longer than 2")
    if ball.length_of(g) != n or ball.length_of(g_prime) != n:
        raise PreconditionViolated("endpoints must lie on the sphere of radius n")
    if not group.element_equal(group.multiply(g, group.evaluate(q)), g_prime):
        raise PreconditionViolated("g' != g * eval(q)")
    if group.element_equal(g, g_prime):
        return ()
    k = group.quasi.k_of_m.get(2, 1) if group.quasi else 1

    w = group.to_dreduced_shape(ball.geodesic_witness(g))
    w_prime = group.to_dreduced_shape(ball.geodesic_witness(g_prime))
    vec_u, v = group.split_central(w)
    vec_u2, v_prime = group.split_central(w_prime)

    if not v and not v_prime:
        # both central: travel inside the central subgroup
        diff = group.multiply(group.invert(g), g_prime)
        return group.central_geodesic(diff.avec)
    if len(v) < len(v_prime):
        reverse = central_witness_path(group, ball, base_ball, g_prime, g,
                                       word_inverse(q, group.alphabet), n)
        return word_inverse(reverse, group.alphabet)

    back = min(k + 1, len(v))
    x, y = v[:len(v) - back], v[len(v) - back:]
    base = group.base
    bx = base.evaluate(x)

    # crossing: shortest base path from eval(x) to a point on the other
    # projection, scanning prefixes of v' for the nearest
    best = None
    for cut in range(len(v_prime) + 1):
        bx2 = base.evaluate(v_prime[:cut])
        diff = base.multiply(base.invert(bx), bx2)
        try:
            dist = base_ball.length_of(diff)
        except KeyError:
            continue
        if best is None or dist < best[0]:
            best = (dist, cut, diff)
    if best is None or best[0] > max(k, 1):
        raise PreconditionViolated("no crossing within the fellow-traveler bound")
    _, cut, diff = best
    z = base_ball.geodesic_witness(diff)

    # central correction: land exactly on the prefix point of the other word
    target = group.evaluate(group.central_geodesic(vec_u2) + v_prime[:cut])
    here = group.multiply(g, group.evaluate(word_inverse(y, group.alphabet) + z))
    hop = group.multiply(group.invert(here), target)
    if not group.base.element_equal(hop.base, group.base.identity):
        raise AssertionError("crossing bookkeeping failed")
    correction = group.central_geodesic(hop.avec)
    return word_inverse(y, group.alphabet) + z + correction + v_prime[cut:]
