"""Permutation arithmetic and permutation-group construction.

Permutations are bijections of {0, ..., degree-1} stored as image tuples.
Groups carry a stabilizer chain (base and strong generating set) used for
order and membership; full element lists are materialized only when the
order stays under the enumeration cap.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .config import Caps, effective_caps
from .errors import CapExceeded, DegreeMismatch, InvalidInput, ParseError

RawPerm = tuple[int, ...]


def _compose(a: RawPerm, b: RawPerm) -> RawPerm:
    """Image tuple of a∘b: apply b first, then a."""
    return tuple(map(a.__getitem__, b))


def _inverse(a: RawPerm) -> RawPerm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _conjugate(g: RawPerm, x: RawPerm) -> RawPerm:
    """g ∘ x ∘ g⁻¹ without forming the inverse."""
    out = [0] * len(g)
    for p, xp in enumerate(x):
        out[g[p]] = g[xp]
    return tuple(out)


def _identity(degree: int) -> RawPerm:
    return tuple(range(degree))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """A bijection of {0, …, degree−1} given by its image tuple."""

    images: RawPerm

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise InvalidInput(f"images {self.images!r} are not a bijection of 0..{n - 1}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(_identity(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(x) = self(other(x))."""
        if len(self.images) != len(other.images):
            raise DegreeMismatch("cannot compose permutations of different degrees")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_inverse(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * len(self.images)
        out: list[tuple[int, ...]] = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    def __str__(self) -> str:
        return format_cycles(self.images)

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return cls(parse_cycles(text, degree))


def format_cycles(raw: RawPerm) -> str:
    """1-based cycle notation; the identity is written ``()``."""
    parts = Permutation(raw).cycles() if not isinstance(raw, Permutation) else raw.cycles()
    if not parts:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in parts)


def parse_cycles(text: str, degree: int) -> RawPerm:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)``; whitespace-insensitive."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty permutation text")
    leftover = _CYCLE_RE.sub("", stripped)
    if leftover.strip():
        raise ParseError(f"malformed cycle text {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    bodies = _CYCLE_RE.findall(stripped)
    if not bodies:
        raise ParseError(f"malformed cycle text {text!r}")
    for body in bodies:
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if not tokens:
            continue  # "()" — identity cycle
        try:
            points = [int(t) - 1 for t in tokens]
        except ValueError as exc:
            raise ParseError(f"non-integer point in cycle {body!r}") from exc
        for p in points:
            if not 0 <= p < degree:
                raise ParseError(f"point {p + 1} outside 1..{degree} in {text!r}")
            if p in used:
                raise ParseError(f"point {p + 1} repeated in {text!r}")
            used.add(p)
        for i, p in enumerate(points):
            images[p] = points[(i + 1) % len(points)]
    return tuple(images)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int, ident: RawPerm):
        self.point = point
        self.gens: list[RawPerm] = []
        self.transversal: dict[int, RawPerm] = {point: ident}


class StabChain:
    """Base and strong generating set, maintained by deterministic Schreier-Sims.

    Level i holds the strong generators fixing the first i base points, the
    orbit of base point i under them, and a transversal u with u(point) = x
    for each orbit point x.
    """

    def __init__(self, degree: int, gens: Iterable[RawPerm] = (), base_hint: Sequence[int] = ()):
        self.degree = degree
        self._ident = _identity(degree)
        self.levels: list[_Level] = [_Level(p, self._ident) for p in base_hint]
        for g in gens:
            self.extend(g)

    # -- queries ---------------------------------------------------------

    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def strip(self, g: RawPerm, start: int = 0) -> tuple[RawPerm, int]:
        """Sift g through levels ≥ start; return (residue, dropout level)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            u = lv.transversal.get(g[lv.point])
            if u is None:
                return g, i
            g = _compose(_inverse(u), g)
        return g, len(self.levels)

    def contains(self, g: RawPerm) -> bool:
        if len(g) != self.degree:
            return False
        h, i = self.strip(g)
        return i == len(self.levels) and h == self._ident

    def iter_elements(self) -> Iterator[RawPerm]:
        """All elements, deterministically, as products of transversal members."""
        if not self.levels:
            yield self._ident
            return

        def rec(i: int, acc: RawPerm) -> Iterator[RawPerm]:
            if i == len(self.levels):
                yield acc
                return
            lv = self.levels[i]
            for x in sorted(lv.transversal):
                yield from rec(i + 1, _compose(acc, lv.transversal[x]))

        yield from rec(0, self._ident)

    def copy(self) -> "StabChain":
        other = StabChain(self.degree)
        for lv in self.levels:
            nlv = _Level(lv.point, self._ident)
            nlv.gens = list(lv.gens)
            nlv.transversal = dict(lv.transversal)
            other.levels.append(nlv)
        return other

    # -- construction ----------------------------------------------------

    def extend(self, g: RawPerm) -> bool:
        """Add one generator; returns True if the group grew."""
        if len(g) != self.degree:
            raise DegreeMismatch("generator degree differs from chain degree")
        h, j = self.strip(g)
        if h == self._ident:
            return False
        self._place(h, 0, j)
        self._schreier_sims()
        return True

    def _pick_point(self, h: RawPerm) -> int:
        for p, x in enumerate(h):
            if x != p:
                return p
        raise InvalidInput("identity residue has no moved point")

    def _place(self, h: RawPerm, lo: int, j: int) -> None:
        """Insert the residue h (fixing base points < j) at levels lo..j."""
        if j == len(self.levels):
            self.levels.append(_Level(self._pick_point(h), self._ident))
        for m in range(lo, j + 1):
            self.levels[m].gens.append(h)

    def _recompute_orbit(self, i: int) -> None:
        lv = self.levels[i]
        trans = {lv.point: self._ident}
        queue = [lv.point]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            ux = trans[x]
            for s in lv.gens:
                y = s[x]
                if y not in trans:
                    trans[y] = _compose(s, ux)
                    queue.append(y)
        lv.transversal = trans

    def _first_failure(self, i: int) -> tuple[RawPerm, int] | None:
        """First Schreier generator of level i that does not sift to identity."""
        lv = self.levels[i]
        ident = self._ident
        for t in sorted(lv.transversal):
            ut = lv.transversal[t]
            for s in lv.gens:
                u_st = lv.transversal[s[t]]
                sg = _compose(_inverse(u_st), _compose(s, ut))
                if sg == ident:
                    continue
                h, j = self.strip(sg, i + 1)
                if h != ident:
                    return h, j
        return None

    def _schreier_sims(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            self._recompute_orbit(i)
            failure = self._first_failure(i)
            if failure is None:
                i -= 1
            else:
                h, j = failure
                self._place(h, i + 1, j)
                i = j


class PermGroup:
    """A finitely generated permutation group on {0, …, degree−1}."""

    def __init__(self, degree: int, generators: Iterable = (), name: str | None = None,
                 base_hint: Sequence[int] = ()):
        self.degree = degree
        gens: list[Permutation] = []
        seen: set[RawPerm] = set()
        for g in generators:
            p = self._coerce(g)
            if p.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {p.degree} differs from group degree {degree}")
            if p.is_identity() or p.images in seen:
                continue
            seen.add(p.images)
            gens.append(p)
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._base_hint = tuple(base_hint)
        self._chain: StabChain | None = None
        self._cache: dict = {}

    def _coerce(self, g) -> Permutation:
        if isinstance(g, Permutation):
            return g
        if isinstance(g, tuple):
            return Permutation(g)
        if isinstance(g, list):
            return Permutation(tuple(g))
        if isinstance(g, str):
            return Permutation.from_cycles(g, self.degree)
        raise InvalidInput(f"cannot interpret {g!r} as a permutation")

    # -- basics ----------------------------------------------------------

    def raw_gens(self) -> list[RawPerm]:
        return [g.images for g in self.generators]

    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.raw_gens(), base_hint=self._base_hint)
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, p) -> bool:
        q = self._coerce(p)
        if q.degree != self.degree:
            raise DegreeMismatch("membership test across different degrees")
        return self.chain().contains(q.images)

    def contains_raw(self, raw: RawPerm) -> bool:
        return self.chain().contains(raw)

    def raw_elements(self, caps: Caps | None = None) -> tuple[RawPerm, ...]:
        cached = self._cache.get("raw_elements")
        if cached is None:
            cap = effective_caps(caps).enum_cap
            n = self.order()
            if n > cap:
                raise CapExceeded(f"order {n} exceeds enumeration cap {cap}")
            cached = tuple(self.chain().iter_elements())
            self._cache["raw_elements"] = cached
        return cached

    def elements(self, caps: Caps | None = None) -> tuple[Permutation, ...]:
        return tuple(Permutation(r) for r in self.raw_elements(caps))

    def element_set(self, caps: Caps | None = None) -> frozenset[RawPerm]:
        cached = self._cache.get("element_set")
        if cached is None:
            cached = frozenset(self.raw_elements(caps))
            self._cache["element_set"] = cached
        return cached

    # -- subgroup relations ---------------------------------------------

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.degree != other.degree:
            return False
        return all(other.contains_raw(g) for g in self.raw_gens())

    def same_group(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def extended(self, extra_gens: Iterable) -> "PermGroup":
        """The group generated by this group together with extra generators.

        Reuses a copy of the existing stabilizer chain, which makes repeated
        joins during subgroup closure much cheaper.
        """
        extras = [self._coerce(g) for g in extra_gens]
        chain = self.chain().copy()
        grew = False
        for p in extras:
            if chain.extend(p.images):
                grew = True
        if not grew:
            return self
        out = PermGroup(self.degree, list(self.generators) + extras)
        out._chain = chain
        return out

    def gen_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __repr__(self) -> str:
        chain = self._chain
        shown = str(chain.order()) if chain is not None else "?"
        label = f" {self.name!r}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} order={shown} gens={len(self.generators)}>"


def generate(gens: Iterable, degree: int, name: str | None = None) -> PermGroup:
    """The group generated by the given permutations (cycles strings accepted)."""
    return PermGroup(degree, gens, name=name)


def group_from_elements(degree: int, raws: Iterable[RawPerm]) -> PermGroup:
    """A group equal to the given element set, with a small generating set."""
    chain = StabChain(degree)
    gens: list[RawPerm] = []
    for raw in sorted(raws):
        if not chain.contains(raw):
            chain.extend(raw)
            gens.append(raw)
    group = PermGroup(degree, gens)
    group._chain = chain
    return group


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    """The stabilizer of a point, from a chain based at that point."""
    if not 0 <= point < G.degree:
        raise InvalidInput(f"point {point} outside 0..{G.degree - 1}")
    chain = StabChain(G.degree, G.raw_gens(), base_hint=[point])
    gens = chain.levels[1].gens if len(chain.levels) > 1 else []
    return PermGroup(G.degree, gens)


# ---------------------------------------------------------------------------
# Homomorphisms


class GroupHom:
    """A homomorphism between permutation groups, defined on the source generators.

    An optional pointwise callable computes images directly; otherwise images
    are resolved through a breadth-first multiplication table over the source
    (which therefore must be enumerable).
    """

    def __init__(self, source: PermGroup, target: PermGroup,
                 gen_images: Sequence[Permutation],
                 map_fn: Callable[[RawPerm], RawPerm] | None = None,
                 kernel: PermGroup | None = None):
        if len(gen_images) != len(source.generators):
            raise InvalidInput("one image per source generator is required")
        for img in gen_images:
            if img.degree != target.degree:
                raise DegreeMismatch("generator image degree differs from target degree")
        self.source = source
        self.target = target
        self.gen_images: tuple[Permutation, ...] = tuple(gen_images)
        self._map_fn = map_fn
        self._kernel = kernel
        self._image: PermGroup | None = None
        self._table: dict[RawPerm, RawPerm] | None = None

    def apply_raw(self, raw: RawPerm, caps: Caps | None = None) -> RawPerm:
        if self._map_fn is not None:
            return self._map_fn(raw)
        table = self._word_table(caps)
        try:
            return table[raw]
        except KeyError:
            raise InvalidInput("element is not in the homomorphism's source") from None

    def apply(self, p: Permutation, caps: Caps | None = None) -> Permutation:
        return Permutation(self.apply_raw(p.images, caps))

    def _word_table(self, caps: Caps | None = None) -> dict[RawPerm, RawPerm]:
        if self._table is None:
            table = induced_map(self.source.raw_gens(),
                                [g.images for g in self.gen_images],
                                self.source.degree, self.target.degree,
                                effective_caps(caps).enum_cap)
            if table is None:
                raise InvalidInput("generator images do not define a homomorphism")
            self._table = table
        return self._table

    def image(self) -> PermGroup:
        if self._image is None:
            self._image = PermGroup(self.target.degree, self.gen_images)
        return self._image

    def kernel(self, caps: Caps | None = None) -> PermGroup:
        if self._kernel is None:
            ident = _identity(self.target.degree)
            members = [raw for raw in self.source.raw_elements(caps)
                       if self.apply_raw(raw, caps) == ident]
            self._kernel = group_from_elements(self.source.degree, members)
        return self._kernel

    def is_multiplicative(self, caps: Caps | None = None) -> bool:
        """Full pairwise check f(xy) = f(x)f(y) over the source."""
        elems = self.source.raw_elements(caps)
        images = {raw: self.apply_raw(raw, caps) for raw in elems}
        for x in elems:
            fx = images[x]
            for y in elems:
                if images[_compose(x, y)] != _compose(fx, images[y]):
                    return False
        return True


def identity_hom(G: PermGroup) -> GroupHom:
    return GroupHom(G, G, G.generators, map_fn=lambda raw: raw, kernel=trivial_group(G.degree))


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [])


def induced_map(src_gens: list[RawPerm], img_gens: list[RawPerm],
                src_degree: int, img_degree: int,
                limit: int) -> dict[RawPerm, RawPerm] | None:
    """The map ⟨src_gens⟩ → images extending gen ↦ image, or None if inconsistent.

    Walks the Cayley graph of the source; every edge is checked, so a returned
    table is guaranteed multiplicative.
    """
    table: dict[RawPerm, RawPerm] = {_identity(src_degree): _identity(img_degree)}
    queue: list[RawPerm] = [_identity(src_degree)]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        fx = table[x]
        for g, fg in zip(src_gens, img_gens):
            y = _compose(g, x)
            fy = _compose(fg, fx)
            prev = table.get(y)
            if prev is None:
                if len(table) >= limit:
                    raise CapExceeded(f"homomorphism table exceeds limit {limit}")
                table[y] = fy
                queue.append(y)
            elif prev != fy:
                return None
    return table


# ---------------------------------------------------------------------------
# Constructions


def direct_power(G0: PermGroup, n: int) -> PermGroup:
    """G0^n acting on n disjoint copies of G0's points, coordinate 0 first.

    Coordinate embeddings are recorded on the result as `coordinate_embeddings`.
    """
    if n < 1:
        raise InvalidInput("direct power requires n >= 1")
    d = G0.degree
    degree = n * d

    def shifted(raw: RawPerm, i: int) -> Permutation:
        images = list(range(degree))
        for p, x in enumerate(raw):
            images[i * d + p] = i * d + x
        return Permutation(tuple(images))

    gens: list[Permutation] = []
    per_coord: list[list[Permutation]] = []
    for i in range(n):
        coord_gens = [shifted(g, i) for g in G0.raw_gens()]
        per_coord.append(coord_gens)
        gens.extend(coord_gens)
    P = PermGroup(degree, gens)

    embeddings = []
    for i in range(n):
        def mk_map(i=i):
            def fn(raw: RawPerm) -> RawPerm:
                return shifted(raw, i).images
            return fn
        embeddings.append(GroupHom(G0, P, per_coord[i], map_fn=mk_map()))
    P.coordinate_embeddings = embeddings
    return P


def coset_transversal(G: PermGroup, S: PermGroup, caps: Caps | None = None) -> list[RawPerm]:
    """Left-coset representatives of S in G, breadth-first from the identity.

    The identity coset (S itself) always comes first.
    """
    if not S.is_subgroup_of(G):
        raise InvalidInput("coset transversal requires S <= G")
    index = G.order() // S.order()
    reps: list[RawPerm] = [_identity(G.degree)]
    use_keys = S.order() <= effective_caps(caps).enum_cap
    key_of: Callable[[RawPerm], object]
    if use_keys:
        s_elems = S.raw_elements(caps)

        def key_of(raw: RawPerm) -> object:
            return min(_compose(raw, s) for s in s_elems)
    else:
        def key_of(raw: RawPerm) -> object:
            return None
    seen: dict[object, int] = {}
    if use_keys:
        seen[key_of(reps[0])] = 0

    def find(raw: RawPerm) -> int | None:
        if use_keys:
            return seen.get(key_of(raw))
        for j, r in enumerate(reps):
            if S.contains_raw(_compose(_inverse(r), raw)):
                return j
        return None

    qi = 0
    gens = G.raw_gens()
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for g in gens:
            x = _compose(g, r)
            if find(x) is None:
                if use_keys:
                    seen[key_of(x)] = len(reps)
                reps.append(x)
    if len(reps) != index:
        raise InvalidInput("transversal size does not match the index")
    return reps


def coset_action(G: PermGroup, S: PermGroup, caps: Caps | None = None,
                 kernel: PermGroup | None = None) -> GroupHom:
    """The left-translation action of G on the left cosets of S.

    Returns the homomorphism onto its image; coset representatives are
    recorded on the homomorphism as `coset_reps` (identity coset first).
    """
    reps = coset_transversal(G, S, caps)
    index = len(reps)
    use_keys = S.order() <= effective_caps(caps).enum_cap
    if use_keys:
        s_elems = S.raw_elements(caps)
        lookup = {min(_compose(r, s) for s in s_elems): j for j, r in enumerate(reps)}

        def coset_index(raw: RawPerm) -> int:
            return lookup[min(_compose(raw, s) for s in s_elems)]
    else:
        inv_reps = [_inverse(r) for r in reps]

        def coset_index(raw: RawPerm) -> int:
            for j, rinv in enumerate(inv_reps):
                if S.contains_raw(_compose(rinv, raw)):
                    return j
            raise InvalidInput("element maps outside the coset space")

    def act(raw: RawPerm) -> RawPerm:
        return tuple(coset_index(_compose(raw, r)) for r in reps)

    gen_images = [Permutation(act(g)) for g in G.raw_gens()]
    image = PermGroup(index, gen_images)
    hom = GroupHom(G, image, gen_images, map_fn=act, kernel=kernel)
    hom.coset_reps = [Permutation(r) for r in reps]
    return hom


def regular_representation(G: PermGroup, caps: Caps | None = None) -> GroupHom:
    """The left-regular action of G on its own (sorted) element list."""
    elems = list(G.raw_elements(caps))
    elems.sort()
    index = {e: i for i, e in enumerate(elems)}

    def act(raw: RawPerm) -> RawPerm:
        return tuple(index[_compose(raw, e)] for e in elems)

    gen_images = [Permutation(act(g)) for g in G.raw_gens()]
    image = PermGroup(len(elems), gen_images)
    return GroupHom(G, image, gen_images, map_fn=act, kernel=trivial_group(G.degree))


@dataclass
class WreathProduct:
    """Γ = G0^N ⋊ Gn with Gn permuting coordinates via its coset action.

    The permutation action uses N disjoint copies of G0's points (coordinate 0
    first) followed by Gn's own points, which keeps the top factor faithful.
    """

    group: PermGroup
    g0: PermGroup
    gn: PermGroup
    gsub: PermGroup
    n_coords: int
    base: PermGroup
    top: GroupHom
    coset_hom: GroupHom

    def coordinate_embedding(self, i: int) -> GroupHom:
        if not 0 <= i < self.n_coords:
            raise InvalidInput(f"coordinate {i} outside 0..{self.n_coords - 1}")
        d0 = self.g0.degree

        def fn(raw: RawPerm) -> RawPerm:
            images = list(range(self.group.degree))
            for p, x in enumerate(raw):
                images[i * d0 + p] = i * d0 + x
            return tuple(images)

        gen_images = [Permutation(fn(g)) for g in self.g0.raw_gens()]
        return GroupHom(self.g0, self.group, gen_images, map_fn=fn)

    def top_lift(self, h) -> Permutation:
        """The canonical lift of h ∈ Gn: permute blocks, act naturally on the tail."""
        raw = h.images if isinstance(h, Permutation) else tuple(h)
        if not self.gn.contains_raw(raw):
            raise InvalidInput("top_lift argument is not in the top group")
        sigma = self.coset_hom.apply_raw(raw)
        d0, dn, n = self.g0.degree, self.gn.degree, self.n_coords
        images = list(range(self.group.degree))
        for i in range(n):
            for p in range(d0):
                images[i * d0 + p] = sigma[i] * d0 + p
        for x in range(dn):
            images[n * d0 + x] = n * d0 + raw[x]
        return Permutation(tuple(images))


def wreath_by_cosets(G0: PermGroup, Gn: PermGroup, G_sub: PermGroup,
                     caps: Caps | None = None) -> WreathProduct:
    """The split extension of G0^N by Gn, N = [Gn : G_sub], coordinates = cosets.

    Coordinate 0 corresponds to the coset of G_sub itself.
    """
    if not G_sub.is_subgroup_of(Gn):
        raise InvalidInput("G_sub must be a subgroup of Gn")
    n = Gn.order() // G_sub.order()
    cap = effective_caps(caps).coord_cap
    if n > cap:
        raise CapExceeded(f"coordinate count {n} exceeds coordinate cap {cap}")
    cos = coset_action(Gn, G_sub, caps)
    d0, dn = G0.degree, Gn.degree
    degree = n * d0 + dn

    def embed(raw: RawPerm, i: int) -> Permutation:
        images = list(range(degree))
        for p, x in enumerate(raw):
            images[i * d0 + p] = i * d0 + x
        return Permutation(tuple(images))

    base_gens = [embed(g, i) for i in range(n) for g in G0.raw_gens()]
    base = PermGroup(degree, base_gens)

    def lift(raw: RawPerm) -> Permutation:
        sigma = cos.apply_raw(raw)
        images = list(range(degree))
        for i in range(n):
            for p in range(d0):
                images[i * d0 + p] = sigma[i] * d0 + p
        for x in range(dn):
            images[n * d0 + x] = n * d0 + raw[x]
        return Permutation(tuple(images))

    top_lifts = [lift(g) for g in Gn.raw_gens()]
    group = PermGroup(degree, base_gens + top_lifts)

    def top_fn(raw: RawPerm) -> RawPerm:
        off = n * d0
        return tuple(raw[off + x] - off for x in range(dn))

    top = GroupHom(group, Gn,
                   [Permutation(top_fn(g.images)) for g in group.generators],
                   map_fn=top_fn, kernel=base)
    W = WreathProduct(group=group, g0=G0, gn=Gn, gsub=G_sub, n_coords=n,
                      base=base, top=top, coset_hom=cos)
    return W
