"""Exact breadth-first enumeration of Cayley-graph balls.

Expansion is level-synchronous; within a level, elements are inserted in
canonical-key order and parent edges are chosen by the tie-break
(witness weight, parent key, generator index), which makes balls and all
their witnesses reproducible bit for bit across runs and across worker
counts.  Parallel workers only ever run the pure multiplication; candidate
resolution and insertion happen in a sequential canonical merge.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional

from .groups import GroupInterface
from .words import Word


class BudgetExceeded(RuntimeError):
    """The exploration budget was hit; the partial ball is unusable for
    convexity checks and is flagged as such."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class RadiusUnavailable(ValueError):
    pass


class ElementAbsent(KeyError):
    pass


_MAGIC = b"CAYB"
_VERSION = 2


class Ball:
    """All elements of length <= radius, with lengths, parent edges and
    minimal witness weights."""

    def __init__(self, group: GroupInterface, radius: int):
        self.group = group
        self.radius = radius
        self.gen_names: tuple[str, ...] = tuple(group.alphabet.names)
        self.elements: list = []
        self.keys: list[bytes] = []
        self.lengths: list[int] = []
        self.parents: list[tuple[int, int]] = []  # (parent index, generator index)
        self.weights: list[int] = []
        self.index: dict = {}
        self.sphere_offsets: list[int] = [0]
        self.complete = True
        self._adjacency: Optional[list[list[tuple[int, int]]]] = None

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def sphere(self, n: int) -> range:
        if n < 0 or n > self.radius:
            raise RadiusUnavailable(f"sphere {n} of a radius-{self.radius} ball")
        lo = self.sphere_offsets[n]
        hi = self.sphere_offsets[n + 1] if n + 1 < len(self.sphere_offsets) else len(self.elements)
        return range(lo, hi)

    def _recompute_offsets(self) -> None:
        offsets = [0] * (self.radius + 2)
        for L in self.lengths:
            offsets[L + 1] += 1
        for n in range(1, self.radius + 2):
            offsets[n] += offsets[n - 1]
        self.sphere_offsets = offsets

    def sphere_sizes(self) -> list[int]:
        return [len(self.sphere(n)) for n in range(self.radius + 1)]

    def find(self, elem) -> int:
        """Index of an element, resolving through the group's normal form."""
        dk = self.group.dedup_key(self.group.resolve(elem))
        try:
            return self.index[dk]
        except KeyError:
            raise ElementAbsent(repr(elem)) from None

    def __contains__(self, elem) -> bool:
        try:
            self.find(elem)
            return True
        except ElementAbsent:
            return False

    def length_of(self, elem) -> int:
        return self.lengths[self.find(elem)]

    def geodesic_witness(self, elem_or_index) -> Word:
        """Word of length l(g) evaluating to g, read off the parent edges."""
        idx = elem_or_index if isinstance(elem_or_index, int) else self.find(elem_or_index)
        letters: list[str] = []
        while idx is not None:
            parent, gen = self.parents[idx]
            if parent < 0:
                break
            letters.append(self.gen_names[gen])
            idx = parent
        return tuple(reversed(letters))

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """adj[i] = [(generator index, target index)] restricted to the ball."""
        if self._adjacency is None:
            group = self.group
            images = [group.generator_images[name] for name in self.gen_names]
            adj: list[list[tuple[int, int]]] = []
            for elem in self.elements:
                row = []
                for gi, img in enumerate(images):
                    child = group.multiply(elem, img)
                    dk = group.dedup_key(group.resolve(child))
                    j = self.index.get(dk)
                    if j is not None:
                        row.append((gi, j))
                adj.append(row)
            self._adjacency = adj
        return self._adjacency

    # -- serialization --------------------------------------------------------

    def to_bytes(self) -> bytes:
        out = bytearray()
        out += _MAGIC
        out += struct.pack(">HIIHB", _VERSION, self.radius, len(self.elements),
                           len(self.gen_names), 1 if self.complete else 0)
        for key, length, (parent, gen), weight in zip(
            self.keys, self.lengths, self.parents, self.weights
        ):
            out += struct.pack(">H", len(key))
            out += key
            out += struct.pack(">IiiI", length, parent, gen, weight)
        return bytes(out)

    def write(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(self.to_bytes())
        os.replace(tmp, path)

    @classmethod
    def from_bytes(cls, data: bytes, group: GroupInterface) -> "Ball":
        if data[:4] != _MAGIC:
            raise ValueError("not a ball cache file")
        version, radius, count, genc, complete = struct.unpack(">HIIHB", data[4:17])
        if version != _VERSION:
            raise ValueError(f"cache version {version} unsupported")
        ball = cls(group, radius)
        ball.complete = bool(complete)
        pos = 17
        for _ in range(count):
            (klen,) = struct.unpack(">H", data[pos : pos + 2])
            pos += 2
            key = data[pos : pos + klen]
            pos += klen
            length, parent, gen, weight = struct.unpack(">IiiI", data[pos : pos + 16])
            pos += 16
            elem = group.decode_key(key)
            idx = len(ball.elements)
            ball.elements.append(elem)
            ball.keys.append(key)
            ball.lengths.append(length)
            ball.parents.append((parent, gen))
            ball.weights.append(weight)
            ball.index[group.dedup_key(elem)] = idx
        ball._recompute_offsets()
        return ball

    @classmethod
    def read(cls, path: str, group: GroupInterface) -> "Ball":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read(), group)


def build_ball(group: GroupInterface, radius: int, jobs: int = 1,
               max_elements: Optional[int] = None) -> Ball:
    """Complete deduplicated ball of the given radius."""
    ball = Ball(group, radius)
    gen_names = ball.gen_names
    images = [group.generator_images[name] for name in gen_names]
    gweights = [group.generator_weight(name) for name in gen_names]

    ident = group.resolve(group.identity)
    ball.elements.append(ident)
    ball.keys.append(group.canonical_key(ident))
    ball.lengths.append(0)
    ball.parents.append((-1, -1))
    ball.weights.append(0)
    ball.index[group.dedup_key(ident)] = 0

    level = [0]
    fast_dedup = type(group).resolve is GroupInterface.resolve

    for depth in range(1, radius + 1):
        raw: list[tuple] = []

        def expand(chunk):
            local = []
            index = ball.index
            elements = ball.elements
            weights = ball.weights
            keys = ball.keys
            mul = group.multiply
            for pi in chunk:
                parent = elements[pi]
                pw = weights[pi]
                pkey = keys[pi]
                for gi, img in enumerate(images):
                    child = mul(parent, img)
                    if fast_dedup and child in index:
                        continue
                    local.append((child, pw + gweights[gi], pkey, gi, pi))
            return local

        if jobs > 1 and len(level) > 1:
            chunksize = (len(level) + jobs - 1) // jobs
            chunks = [level[i : i + chunksize] for i in range(0, len(level), chunksize)]
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(expand, chunks):
                    raw.extend(part)
        else:
            raw = expand(level)

        # canonical merge: resolve in presort order, keep the best parent edge
        raw.sort(key=lambda item: (group.presort_key(item[0]), item[1], item[2], item[3]))
        cands: dict = {}
        for child, w, pkey, gi, pi in raw:
            resolved = group.resolve(child)
            dk = group.dedup_key(resolved)
            if dk in ball.index:
                continue
            prev = cands.get(dk)
            if prev is None or (w, pkey, gi) < (prev[1], prev[2], prev[3]):
                cands[dk] = (resolved, w, pkey, gi, pi)
        newbies = sorted(cands.items(), key=lambda kv: group.canonical_key(kv[1][0]))

        level = []
        for dk, (elem, w, pkey, gi, pi) in newbies:
            idx = len(ball.elements)
            if max_elements is not None and idx >= max_elements:
                ball.complete = False
                raise BudgetExceeded(
                    f"ball exceeded {max_elements} elements at radius {depth}", partial=ball
                )
            ball.elements.append(elem)
            ball.keys.append(group.canonical_key(elem))
            ball.lengths.append(depth)
            ball.parents.append((pi, gi))
            ball.weights.append(w)
            ball.index[dk] = idx
            level.append(idx)
    ball._recompute_offsets()
    return ball


def cached_ball(group: GroupInterface, radius: int, cache_dir: Optional[str] = None,
                jobs: int = 1) -> Ball:
    """Build a ball, reusing and refreshing the disk cache when a directory
    is configured."""
    if cache_dir is None:
        return build_ball(group, radius, jobs=jobs)
    os.makedirs(cache_dir, exist_ok=True)
    name = f"{group.fingerprint()}__{group.gens_fingerprint()}__r{radius}.ball"
    path = os.path.join(cache_dir, name)
    if os.path.exists(path):
        return Ball.read(path, group)
    ball = build_ball(group, radius, jobs=jobs)
    ball.write(path)
    return ball


def sphere_pairs(ball: Ball, n: int, m: int) -> Iterator[tuple[int, int, Word]]:
    """Unordered pairs of sphere-n elements at distance <= m, each exactly
    once, with the canonical shortest connector word."""
    if n > ball.radius:
        raise RadiusUnavailable(f"sphere {n} of a radius-{ball.radius} ball")
    group = ball.group
    images = [group.generator_images[name] for name in ball.gen_names]
    names = ball.gen_names
    seen: set[tuple[int, int]] = set()
    for i in ball.sphere(n):
        start = ball.elements[i]
        # breadth-first over connector words of length 1..m in generator order
        frontier = [(start, ())]
        for _ in range(m):
            nxt = []
            for elem, word in frontier:
                for gi, img in enumerate(images):
                    child = group.multiply(elem, img)
                    cword = word + (names[gi],)
                    nxt.append((child, cword))
                    dk = group.dedup_key(group.resolve(child))
                    j = ball.index.get(dk)
                    if j is None or j == i or ball.lengths[j] != n:
                        continue
                    a, b = (i, j) if i < j else (j, i)
                    if (a, b) in seen:
                        continue
                    seen.add((a, b))
                    yield (i, j, cword)
            frontier = nxt


def inside_path(ball: Ball, i: int, j: int, n: int,
                cap: Optional[int] = None) -> Optional[Word]:
    """Shortest word labelling a path from element i to element j all of
    whose vertices satisfy l <= n; None when no such path exists within the
    cap (default 4n + 64).  Bidirectional level-synchronous search with
    deterministic readback."""
    if n > ball.radius:
        raise RadiusUnavailable(f"ball radius {ball.radius} < {n}")
    if cap is None:
        cap = 4 * n + 64
    if i == j:
        return ()
    adj = ball.adjacency()
    lengths = ball.lengths
    names = ball.gen_names
    alphabet = ball.group.alphabet
    inv_gen = [alphabet.index(alphabet.inverse(name)) for name in names]

    fwd = {i: (None, None, 0)}  # node -> (prev node, edge generator, depth)
    bwd = {j: (None, None, 0)}
    f_frontier, b_frontier = [i], [j]
    df = db = 0
    capped = False
    best: Optional[tuple[int, int]] = None  # (total length, meet node)

    def expand(frontier, visited, other):
        nonlocal best
        new = []
        for u in frontier:
            du = visited[u][2]
            for gi, v in adj[u]:
                if lengths[v] > n or v in visited:
                    continue
                visited[v] = (u, gi, du + 1)
                new.append(v)
                hit = other.get(v)
                if hit is not None:
                    cand = (du + 1 + hit[2], v)
                    if best is None or cand < best:
                        best = cand
        return new

    while f_frontier or b_frontier:
        if best is not None and best[0] <= df + db:
            break
        if df + db >= cap:
            capped = True
            break
        if (len(f_frontier) <= len(b_frontier) and f_frontier) or not b_frontier:
            f_frontier = expand(f_frontier, fwd, bwd)
            df += 1
        else:
            b_frontier = expand(b_frontier, bwd, fwd)
            db += 1

    if best is None or best[0] > cap:
        if not capped and best is None:
            # both searches exhausted their components: the induced subgraph
            # on the ball would have to be disconnected, which cannot happen
            # (parent chains connect everything to the identity)
            raise RuntimeError(f"ball subgraph disconnected between {i} and {j}")
        return None
    meet = best[1]
    left: list[str] = []
    u = meet
    while fwd[u][0] is not None:
        prev, gi, _ = fwd[u]
        left.append(names[gi])
        u = prev
    left.reverse()
    right: list[str] = []
    u = meet
    while bwd[u][0] is not None:
        prev, gi, _ = bwd[u]
        right.append(names[inv_gen[gi]])
        u = prev
    return tuple(left) + tuple(right)
