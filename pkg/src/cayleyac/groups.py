"""Abstract group interface shared by every concrete family, plus two
elementary reference groups (integer lattices and free groups) used as
oracles in tests and profiles."""

from __future__ import annotations

import abc
import hashlib
import struct
from typing import Any, Mapping, Sequence

from .words import Alphabet, Word, UnknownSymbol, free_reduce, word_inverse


def pack_ints(values: Sequence[int]) -> bytes:
    """Fixed-width serialization of signed integers whose byte order agrees
    with numeric order (offset encoding, big endian)."""
    out = bytearray()
    for v in values:
        if not -(1 << 62) <= v < (1 << 62):
            raise OverflowError(f"coordinate out of key range: {v}")
        out += struct.pack(">Q", v + (1 << 62))
    return bytes(out)


def unpack_ints(key: bytes) -> tuple[int, ...]:
    n = len(key) // 8
    return tuple(struct.unpack(">Q", key[8 * i : 8 * i + 8])[0] - (1 << 62) for i in range(n))


class GroupInterface(abc.ABC):
    """Contract every concrete group implements: pure, immutable elements
    with an injective canonical key for deduplication."""

    alphabet: Alphabet

    @property
    @abc.abstractmethod
    def identity(self) -> Any: ...

    @abc.abstractmethod
    def multiply(self, u: Any, v: Any) -> Any: ...

    @abc.abstractmethod
    def invert(self, u: Any) -> Any: ...

    @property
    @abc.abstractmethod
    def generator_images(self) -> Mapping[str, Any]: ...

    @abc.abstractmethod
    def canonical_key(self, elem: Any) -> bytes: ...

    def decode_key(self, key: bytes) -> Any:
        raise NotImplementedError(f"{type(self).__name__} cannot decode keys")

    def evaluate(self, word: Sequence[str]) -> Any:
        """Fold of ``multiply`` over generator images; empty word -> identity."""
        images = self.generator_images
        elem = self.identity
        for letter in word:
            try:
                img = images[letter]
            except KeyError:
                raise UnknownSymbol(letter) from None
            elem = self.multiply(elem, img)
        return elem

    def resolve(self, elem: Any) -> Any:
        """Normalize an element to its canonical representative.  Groups with
        unique coordinates return the element unchanged; word-based groups
        override this with their clustering memo."""
        return elem

    def dedup_key(self, elem: Any):
        """Hashable identity key used by exploration.  Defaults to the element
        itself when elements are hashable values."""
        return elem

    def presort_key(self, elem: Any) -> bytes:
        """Deterministic sort key available before resolution."""
        return self.canonical_key(elem)

    def generator_weight(self, name: str) -> int:
        """Witness-preference weight of a generator (breadth-first tie-break)."""
        return 0

    @abc.abstractmethod
    def fingerprint(self) -> str: ...

    def gens_fingerprint(self) -> str:
        return hashlib.sha256(" ".join(self.alphabet.names).encode()).hexdigest()[:16]

    def element_equal(self, u: Any, v: Any) -> bool:
        return self.canonical_key(u) == self.canonical_key(v)

    def word_fingerprint(self, data: str) -> str:
        return hashlib.sha256(data.encode()).hexdigest()[:16]


class IntegerLattice(GroupInterface):
    """Z^rank with the standard generating set; a counting oracle."""

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        names = ["x", "y", "w"][:rank] if rank <= 3 else [f"g{i}" for i in range(rank)]
        self.alphabet = Alphabet(names)
        self._names = names

    @property
    def identity(self):
        return (0,) * self.rank

    def multiply(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def invert(self, u):
        return tuple(-a for a in u)

    @property
    def generator_images(self):
        images = {}
        for i, name in enumerate(self._names):
            vec = [0] * self.rank
            vec[i] = 1
            images[name] = tuple(vec)
            images[self.alphabet.inverse(name)] = tuple(-x for x in vec)
        return images

    def canonical_key(self, elem):
        return pack_ints(elem)

    def decode_key(self, key):
        return unpack_ints(key)

    def fingerprint(self):
        return self.word_fingerprint(f"lattice rank={self.rank}")


class FreeGroup(GroupInterface):
    """Free group on ``rank`` letters; elements are reduced words."""

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        names = ["a", "b", "c", "d"][:rank] if rank <= 4 else [f"a{i}" for i in range(rank)]
        self.alphabet = Alphabet(names)

    @property
    def identity(self) -> Word:
        return ()

    def multiply(self, u: Word, v: Word) -> Word:
        return free_reduce(u + v, self.alphabet)

    def invert(self, u: Word) -> Word:
        return word_inverse(u, self.alphabet)

    @property
    def generator_images(self):
        return {name: (name,) for name in self.alphabet.names}

    def canonical_key(self, elem: Word) -> bytes:
        return encode_word(elem, self.alphabet)

    def decode_key(self, key: bytes) -> Word:
        return decode_word(key, self.alphabet)

    def fingerprint(self):
        return self.word_fingerprint(f"free rank={self.rank}")


def encode_word(word: Sequence[str], alphabet: Alphabet) -> bytes:
    return bytes(alphabet.index(letter) for letter in word)


def decode_word(key: bytes, alphabet: Alphabet) -> Word:
    return tuple(alphabet.names[i] for i in key)


def check_group_axioms(group: GroupInterface, elements, trials: int = 100, rng=None) -> None:
    """Randomized two-sided identity / inverse / associativity check used by
    the test suites.  Raises AssertionError on the first violation."""
    import random

    rng = rng or random.Random(0)
    pool = list(elements)
    e = group.identity
    for _ in range(trials):
        u = rng.choice(pool)
        v = rng.choice(pool)
        w = rng.choice(pool)
        ku = group.canonical_key
        assert ku(group.multiply(u, e)) == ku(u)
        assert ku(group.multiply(e, u)) == ku(u)
        assert ku(group.multiply(u, group.invert(u))) == ku(e)
        assert ku(group.multiply(group.invert(u), u)) == ku(e)
        left = group.multiply(group.multiply(u, v), w)
        right = group.multiply(u, group.multiply(v, w))
        assert ku(group.resolve(left)) == ku(group.resolve(right))
