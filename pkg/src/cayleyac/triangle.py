"""Hyperbolic (p,q,r) rotation groups through the exact reflection
representation.

The three reflections act on the span of the side normals; in that basis
their matrices have entries in Q(2cos(pi/N)) where N = lcm of the orders
that contribute an irrational cosine.  Field arithmetic is exact (tuples of
Fractions modulo the minimal polynomial), so element equality and canonical
keys are exact matrix comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .groups import GroupInterface
from .words import Alphabet


# -- integer polynomial helpers (dense coefficient lists, low degree first) --


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_divmod(a, b):
    a = list(a)
    out = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coeff = Fraction(a[-1], b[-1])
        out[shift] = coeff
        for i, cb in enumerate(b):
            a[shift + i] -= coeff * cb
        a.pop()
    return out, a


def cyclotomic_polynomial(m: int) -> list[int]:
    """Coefficients of the m-th cyclotomic polynomial."""
    if m == 1:
        return [-1, 1]
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            q, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not any(rem)
            poly = [int(c) for c in q]
    return poly


def real_minimal_polynomial(m: int) -> list[int]:
    """Minimal polynomial of 2cos(2*pi/m) over Q, for m >= 3: fold the
    palindromic cyclotomic polynomial through z + 1/z."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    assert d % 2 == 0
    half = d // 2
    # z^(half-k) * (z^2+1)^k expanded, subtracted greedily from the top
    from math import comb

    work = list(phi)
    out = [0] * (half + 1)
    for k in range(half, -1, -1):
        c = work[half + k]
        out[k] = c
        if c:
            # subtract c * z^(half-k) * (z^2+1)^k
            binom = [0] * (2 * k + 1)
            for i in range(k + 1):
                binom[2 * i] = comb(k, i)
            term = ([0] * (half - k)) + binom
            for i, cc in enumerate(term):
                work[i] -= c * cc
    assert not any(work)
    return out


class CosField:
    """Q(2cos(pi/n)) with exact arithmetic; elements are coefficient tuples."""

    def __init__(self, n: int):
        self.n = n
        coeffs = real_minimal_polynomial(2 * n)
        lead = coeffs[-1]
        assert lead in (1, -1)
        if lead == -1:
            coeffs = [-c for c in coeffs]
        self.minpoly = [Fraction(c) for c in coeffs]
        self.degree = len(coeffs) - 1
        # reduction of x^degree
        self._top = tuple(-c for c in self.minpoly[:-1])

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return self.rational(Fraction(1))

    def rational(self, q) -> tuple:
        out = [Fraction(0)] * self.degree
        out[0] = Fraction(q)
        return tuple(out)

    def generator(self) -> tuple:
        """The element 2cos(pi/n)."""
        if self.degree == 1:
            # x - c: generator equals the rational root
            return self.rational(-self.minpoly[0])
        out = [Fraction(0)] * self.degree
        out[1] = Fraction(1)
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        deg = self.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        for k in range(2 * deg - 2, deg - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i, t in enumerate(self._top):
                    prod[k - deg + i] += c * t
        return tuple(prod[:deg])

    def scale(self, a, q):
        return tuple(x * q for x in a)

    def two_cos_pi_over(self, k: int) -> tuple:
        """2cos(pi/k) as a field element, via the Dickson recurrence
        D_j(2cos t) = 2cos(j t) with t = pi/n and j = n/k."""
        if self.n % k:
            raise ValueError(f"{k} does not divide the field order {self.n}")
        j = self.n // k
        d_prev = self.rational(2)
        d_cur = self.generator()
        for _ in range(j - 1):
            d_prev, d_cur = d_cur, self.sub(self.mul(self.generator(), d_cur), d_prev)
        return d_cur


def _mat_mul(field: CosField, A, B):
    out = []
    for i in range(3):
        for j in range(3):
            acc = field.zero()
            for k in range(3):
                acc = field.add(acc, field.mul(A[3 * i + k], B[3 * k + j]))
            out.append(acc)
    return tuple(out)


def _mat_identity(field: CosField):
    one, zero = field.one(), field.zero()
    return tuple(one if i % 4 == 0 else zero for i in range(9))


def _mat_det(field: CosField, M):
    def m(i, j):
        return M[3 * i + j]

    f = field
    term = lambda a, b, c: f.mul(m(0, a), f.sub(f.mul(m(1, b), m(2, c)), f.mul(m(1, c), m(2, b))))
    return f.add(f.sub(term(0, 1, 2), term(1, 0, 2)), term(2, 0, 1))


def _mat_inverse(field: CosField, M):
    """Adjugate divided by the determinant (determinant is +-1 here)."""
    f = field
    det = _mat_det(field, M)
    if det == f.one():
        inv_det = 1
    elif det == f.rational(-1):
        inv_det = -1
    else:
        raise ValueError("matrix determinant is not a unit")

    def m(i, j):
        return M[3 * i + j]

    cof = []
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = f.sub(f.mul(m(r[0], c[0]), m(r[1], c[1])),
                          f.mul(m(r[0], c[1]), m(r[1], c[0])))
            sign = 1 if (i + j) % 2 == 0 else -1
            cof.append(f.scale(minor, sign * inv_det))
    # adjugate = transpose of cofactors
    return tuple(cof[3 * j + i] for i in range(3) for j in range(3))


class TriangleGroup(GroupInterface):
    """Rotation subgroup of the hyperbolic (p,q,r) reflection group with
    generators u = R1 R2 (order p) and v = R2 R3 (order q); u v has order r.
    Elements are exact 3x3 matrices."""

    def __init__(self, p: int, q: int, r: int):
        if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
            raise ValueError("(p,q,r) is not hyperbolic")
        self.orders = (p, q, r)
        nontrivial = [k for k in (p, q, r) if k > 3]
        self.field = CosField(lcm(*nontrivial) if nontrivial else 3)
        f = self.field

        def cos_term(k: int):
            if k == 2:
                return f.zero()
            if k == 3:
                return f.rational(Fraction(1, 2))
            return f.scale(f.two_cos_pi_over(k), Fraction(1, 2))

        # Gram matrix of the side normals: angle pi/p between sides 1,2;
        # pi/q between sides 2,3; pi/r between sides 1,3.
        c12, c23, c13 = cos_term(p), cos_term(q), cos_term(r)
        one = f.one()
        gram = [
            [one, f.neg(c12), f.neg(c13)],
            [f.neg(c12), one, f.neg(c23)],
            [f.neg(c13), f.neg(c23), one],
        ]
        reflections = []
        for i in range(3):
            mat = []
            for row in range(3):
                for col in range(3):
                    entry = f.one() if row == col else f.zero()
                    if row == i:
                        entry = f.sub(entry, f.scale(gram[i][col], 2))
                    mat.append(entry)
            reflections.append(tuple(mat))
        r1, r2, r3 = reflections
        u = _mat_mul(f, r1, r2)
        v = _mat_mul(f, r2, r3)

        self_inv = [name for name, k in (("u", p), ("v", q)) if k == 2]
        self.alphabet = Alphabet(["u", "v"], self_inverse=self_inv)
        self._images = {"u": u, "v": v}
        self._images[self.alphabet.inverse("u")] = _mat_mul(f, r2, r1)
        self._images[self.alphabet.inverse("v")] = _mat_mul(f, r3, r2)
        self._identity = _mat_identity(f)
        self._check_orders()

    def _check_orders(self):
        p, q, r = self.orders
        for elem, order in ((self._images["u"], p), (self._images["v"], q),
                            (self.multiply(self._images["u"], self._images["v"]), r)):
            power = elem
            for _ in range(order - 1):
                power = self.multiply(power, elem)
            assert power == self._identity, "rotation order failed; bad representation"
            if order > 1:
                shy = elem
                for _ in range(order - 2):
                    shy = self.multiply(shy, elem)
                assert shy != self._identity

    @property
    def identity(self):
        return self._identity

    def multiply(self, u, v):
        return _mat_mul(self.field, u, v)

    def invert(self, u):
        return _mat_inverse(self.field, u)

    @property
    def generator_images(self):
        return self._images

    def canonical_key(self, elem) -> bytes:
        return ";".join(
            ",".join(f"{c.numerator}/{c.denominator}" for c in entry) for entry in elem
        ).encode()

    def decode_key(self, key: bytes):
        entries = []
        for part in key.decode().split(";"):
            entries.append(tuple(Fraction(x) for x in part.split(",")))
        return tuple(entries)

    def fingerprint(self) -> str:
        p, q, r = self.orders
        return self.word_fingerprint(f"triangle {p},{q},{r}")

    def identity_words(self, scale: int):
        """All cyclically reduced nontrivial words of length <= scale that
        evaluate to the identity, by exact enumeration (pruned with a ball
        of radius scale // 2 + 1: a prefix must stay returnable)."""
        from .explorer import build_ball

        alphabet = self.alphabet
        images = self.generator_images
        prune_radius = scale // 2 + 1
        ball = build_ball(self, prune_radius)
        out = []

        def extend(word, elem):
            if word and elem == self._identity:
                first, last = word[0], word[-1]
                if alphabet.inverse(last) != first:
                    out.append(tuple(word))
            if len(word) == scale:
                return
            remaining = scale - len(word)
            if remaining <= prune_radius:
                try:
                    if ball.length_of(elem) > remaining:
                        return
                except KeyError:
                    return
            for name in alphabet.names:
                if word and alphabet.inverse(word[-1]) == name:
                    continue
                word.append(name)
                extend(word, self.multiply(elem, images[name]))
                word.pop()

        extend([], self._identity)
        return out

    def dehn_system(self, scale: int | None = None):
        """Relator system seeded with every short identity word (scale
        defaults to relator length + 1) and closed under inversion and
        rotation.  Short power relators of self-inverse generators live in
        free reduction instead."""
        from .dehn import close_dehn

        p, q, r = self.orders
        if scale is None:
            scale = 2 * r + 1
        if getattr(self, "_dehn_cache", None) and self._dehn_cache[0] == scale:
            return self._dehn_cache[1]
        seeds = [w for w in self.identity_words(scale)]
        if not seeds:
            raise ValueError("no identity words found at this scale")
        system = close_dehn(seeds, self.alphabet)
        self._dehn_cache = (scale, system)
        return system
