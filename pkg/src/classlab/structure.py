"""Structural analysis of finite permutation groups.

Conjugacy classes, the normal-subgroup lattice, maximal normal subgroups and
their intersection (the radical), quotients by coset action, solvability-style
predicates, isomorphism certificates, and exhaustive subgroup enumeration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import Caps, effective_caps
from .errors import (
    CapExceeded,
    FalsificationAlarm,
    InvalidInput,
    SubgroupLimitExceeded,
)
from .perm import (
    GroupHom,
    PermGroup,
    Permutation,
    RawPerm,
    StabChain,
    _compose,
    _conjugate,
    _identity,
    _inverse,
    coset_action,
    group_from_elements,
    identity_hom,
    induced_map,
    trivial_group,
)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _raw_order(raw: RawPerm) -> int:
    return Permutation(raw).order()


def _coerce_raws(G: PermGroup, seeds: Iterable) -> list[RawPerm]:
    out = []
    for s in seeds:
        if isinstance(s, Permutation):
            out.append(s.images)
        elif isinstance(s, tuple):
            out.append(s)
        else:
            out.append(Permutation.from_cycles(str(s), G.degree).images)
    return out


def sorted_elements(G: PermGroup, caps: Caps | None = None) -> tuple[RawPerm, ...]:
    cached = G._cache.get("sorted_elements")
    if cached is None:
        cached = tuple(sorted(G.raw_elements(caps)))
        G._cache["sorted_elements"] = cached
    return cached


# ---------------------------------------------------------------------------
# Conjugacy and characteristic subgroups


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class; the representative is the least element."""

    rep: Permutation
    members: frozenset[RawPerm]

    @property
    def size(self) -> int:
        return len(self.members)


def conjugacy_classes(G: PermGroup, caps: Caps | None = None) -> list[ConjClass]:
    """Conjugacy classes ordered by their least element (identity class first)."""
    cached = G._cache.get("conj_classes")
    if cached is not None:
        return cached
    gens = G.raw_gens()
    seen: set[RawPerm] = set()
    classes: list[ConjClass] = []
    for start in sorted_elements(G, caps):
        if start in seen:
            continue
        members = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _conjugate(g, x)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= members
        classes.append(ConjClass(Permutation(start), frozenset(members)))
    G._cache["conj_classes"] = classes
    return classes


def center(G: PermGroup, caps: Caps | None = None) -> PermGroup:
    gens = G.raw_gens()
    members = [z for z in sorted_elements(G, caps)
               if all(_compose(z, g) == _compose(g, z) for g in gens)]
    return group_from_elements(G.degree, members)


def normal_closure(G: PermGroup, seeds: Iterable, caps: Caps | None = None) -> PermGroup:
    """The smallest normal subgroup of G containing the seed elements."""
    raws = _coerce_raws(G, seeds)
    target = G.order()
    chain = StabChain(G.degree)
    gens: list[RawPerm] = []
    frontier: list[RawPerm] = []
    for s in raws:
        if not chain.contains(s):
            chain.extend(s)
            gens.append(s)
            frontier.append(s)
    outer = G.raw_gens()
    while frontier and chain.order() < target:
        nxt = []
        for x in frontier:
            for g in outer:
                c = _conjugate(g, x)
                if not chain.contains(c):
                    chain.extend(c)
                    gens.append(c)
                    nxt.append(c)
        frontier = nxt
    group = PermGroup(G.degree, gens)
    group._chain = chain
    return group


def normal_in(parent: PermGroup, N: PermGroup) -> bool:
    if not N.is_subgroup_of(parent):
        return False
    return all(N.contains_raw(_conjugate(g, x))
               for g in parent.raw_gens() for x in N.raw_gens())


def _commutator(a: RawPerm, b: RawPerm) -> RawPerm:
    return _compose(a, _compose(b, _compose(_inverse(a), _inverse(b))))


def derived_subgroup(G: PermGroup, caps: Caps | None = None) -> PermGroup:
    comms = [_commutator(a, b) for a in G.raw_gens() for b in G.raw_gens()]
    return normal_closure(G, comms, caps)


def derived_series(G: PermGroup, caps: Caps | None = None) -> list[PermGroup]:
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1], caps)
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)
        if nxt.order() == 1:
            return series


def lower_central_series(G: PermGroup, caps: Caps | None = None) -> list[PermGroup]:
    series = [G]
    while True:
        cur = series[-1]
        comms = [_commutator(a, b) for a in G.raw_gens() for b in cur.raw_gens()]
        nxt = normal_closure(G, comms, caps)
        if nxt.order() == cur.order():
            return series
        series.append(nxt)
        if nxt.order() == 1:
            return series


# ---------------------------------------------------------------------------
# Predicates


def is_abelian(G: PermGroup) -> bool:
    gens = G.raw_gens()
    return all(_compose(a, b) == _compose(b, a) for a in gens for b in gens)


def is_cyclic(G: PermGroup, caps: Caps | None = None) -> bool:
    n = G.order()
    if n == 1:
        return True
    if not is_abelian(G):
        return False
    return any(_raw_order(x) == n for x in sorted_elements(G, caps))


def is_p_group(G: PermGroup, p: int) -> bool:
    n = G.order()
    while n % p == 0:
        n //= p
    return n == 1


def is_solvable(G: PermGroup, caps: Caps | None = None) -> bool:
    return derived_series(G, caps)[-1].order() == 1


def is_nilpotent(G: PermGroup, caps: Caps | None = None) -> bool:
    return lower_central_series(G, caps)[-1].order() == 1


def is_simple(G: PermGroup, caps: Caps | None = None) -> bool:
    """True iff G has exactly two normal subgroups (so the trivial group is not simple)."""
    n = G.order()
    if n == 1:
        return False
    factors = _prime_factors(n)
    if len(factors) == 1 and n == factors[0]:
        return True
    if is_abelian(G):
        return False
    for cls in conjugacy_classes(G, caps):
        if cls.rep.is_identity():
            continue
        if normal_closure(G, [cls.rep], caps).order() != n:
            return False
    return True


# ---------------------------------------------------------------------------
# Normal-subgroup lattice


@dataclass
class NormalLattice:
    """The full set of normal subgroups of a group, with maximality flags."""

    parent: PermGroup
    members: list[PermGroup]
    maximal: list[bool]

    def proper_members(self) -> list[PermGroup]:
        n = self.parent.order()
        return [m for m in self.members if m.order() < n]

    def maximal_members(self) -> list[PermGroup]:
        return [m for m, flag in zip(self.members, self.maximal) if flag]

    def find(self, H: PermGroup) -> int | None:
        for i, m in enumerate(self.members):
            if m.same_group(H):
                return i
        return None


def normal_subgroups(G: PermGroup, caps: Caps | None = None) -> NormalLattice:
    """Every normal subgroup, as the join-closure of element normal closures.

    Each normal subgroup is the join of the normal closures of the elements it
    contains, so closing the closures of class representatives under pairwise
    join is exhaustive.  Members are ordered by (order, first-discovery).
    """
    cached = G._cache.get("normal_lattice")
    if cached is not None:
        return cached
    order_G = G.order()
    distinct: list[PermGroup] = [trivial_group(G.degree)]

    def register(N: PermGroup) -> bool:
        for m in distinct:
            if m.order() == N.order() and N.is_subgroup_of(m):
                return False
        distinct.append(N)
        return True

    atoms: list[PermGroup] = []
    for cls in conjugacy_classes(G, caps):
        if cls.rep.is_identity():
            continue
        N = normal_closure(G, [cls.rep], caps)
        if register(N):
            atoms.append(N)

    frontier = list(atoms)
    while frontier:
        nxt = []
        for M in frontier:
            if M.order() == order_G:
                continue
            for A in atoms:
                if all(M.contains_raw(g) for g in A.raw_gens()):
                    continue
                J = M.extended(A.generators)
                if register(J):
                    nxt.append(J)
        frontier = nxt

    order_index = {id(m): i for i, m in enumerate(distinct)}
    members = sorted(distinct, key=lambda m: (m.order(), order_index[id(m)]))
    maximal = []
    for i, m in enumerate(members):
        if m.order() == order_G:
            maximal.append(False)
            continue
        strictly_above = any(
            other.order() < order_G and other.order() > m.order()
            and m.is_subgroup_of(other)
            for other in members)
        maximal.append(not strictly_above)
    lattice = NormalLattice(G, members, maximal)
    G._cache["normal_lattice"] = lattice
    return lattice


def intersect_groups(A: PermGroup, B: PermGroup, caps: Caps | None = None) -> PermGroup:
    if A.degree != B.degree:
        raise InvalidInput("intersection requires equal degrees")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    members = [x for x in small.raw_elements(caps) if big.contains_raw(x)]
    return group_from_elements(A.degree, members)


def baer_radical(G: PermGroup, caps: Caps | None = None) -> PermGroup:
    """The intersection of all maximal normal subgroups of a nontrivial group."""
    if G.order() == 1:
        raise InvalidInput("the radical is defined only for nontrivial groups")
    rad: PermGroup | None = None
    for H in normal_subgroups(G, caps).maximal_members():
        rad = H if rad is None else intersect_groups(rad, H, caps)
        if rad.order() == 1:
            break
    assert rad is not None
    return rad


def quotient(G: PermGroup, N: PermGroup,
             caps: Caps | None = None) -> tuple[PermGroup, GroupHom]:
    """G/N as a faithful permutation group via the action on cosets of N."""
    if not normal_in(G, N):
        raise InvalidInput("quotient requires a normal subgroup")
    if N.order() == 1:
        return G, identity_hom(G)
    if N.order() == G.order():
        Q = trivial_group(1)
        hom = GroupHom(G, Q, [Permutation((0,)) for _ in G.generators],
                       map_fn=lambda raw: (0,), kernel=G)
        return Q, hom
    hom = coset_action(G, N, caps, kernel=N)
    return hom.image(), hom


# ---------------------------------------------------------------------------
# Isomorphism


def element_order_histogram(G: PermGroup, caps: Caps | None = None) -> dict[int, int]:
    hist: dict[int, int] = {}
    for x in G.raw_elements(caps):
        o = _raw_order(x)
        hist[o] = hist.get(o, 0) + 1
    return hist


def fingerprint(G: PermGroup, caps: Caps | None = None) -> tuple:
    """An isomorphism invariant: never asserts isomorphism, only refutes it."""
    cached = G._cache.get("fingerprint")
    if cached is not None:
        return cached
    caps_eff = effective_caps(caps)
    if G.order() > caps_eff.iso_cap:
        raise CapExceeded(f"order {G.order()} exceeds iso cap {caps_eff.iso_cap}")
    hist = tuple(sorted(element_order_histogram(G, caps).items()))
    class_sizes = tuple(sorted(c.size for c in conjugacy_classes(G, caps)))
    z = center(G, caps).order()
    derived = tuple(s.order() for s in derived_series(G, caps))
    fp = (G.order(), hist, class_sizes, z, derived)
    G._cache["fingerprint"] = fp
    return fp


@dataclass
class IsoCertificate:
    """A checkable witness that source ≅ target."""

    forward: GroupHom
    note: tuple

    @property
    def source(self) -> PermGroup:
        return self.forward.source

    @property
    def target(self) -> PermGroup:
        return self.forward.target

    def verify(self, caps: Caps | None = None) -> bool:
        src, tgt = self.source, self.target
        if src.order() != tgt.order():
            return False
        limit = max(src.order() + 1, 2)
        table = induced_map(src.raw_gens(), [g.images for g in self.forward.gen_images],
                            src.degree, tgt.degree, limit)
        if table is None or len(table) != src.order():
            return False
        image = PermGroup(tgt.degree, self.forward.gen_images)
        return image.order() == tgt.order()


def _generating_sequence(G: PermGroup, caps: Caps | None = None) -> list[RawPerm]:
    """A short generating sequence, greedily taking elements of large order."""
    ordered = sorted(G.raw_elements(caps), key=lambda x: (-_raw_order(x), x))
    chain = StabChain(G.degree)
    seq: list[RawPerm] = []
    target = G.order()
    for x in ordered:
        if chain.order() == target:
            break
        if not chain.contains(x):
            chain.extend(x)
            seq.append(x)
    return seq


def isomorphic(G: PermGroup, H: PermGroup,
               caps: Caps | None = None) -> IsoCertificate | None:
    """An isomorphism certificate, or None; fingerprint rejection then backtracking."""
    caps_eff = effective_caps(caps)
    if G.order() != H.order():
        return None
    n = G.order()
    if n > caps_eff.iso_cap:
        raise CapExceeded(f"order {n} exceeds iso cap {caps_eff.iso_cap}")
    fpG, fpH = fingerprint(G, caps), fingerprint(H, caps)
    if fpG != fpH:
        return None
    if n == 1:
        return IsoCertificate(GroupHom(G, H, [], map_fn=lambda raw: _identity(H.degree),
                                       kernel=trivial_group(G.degree)), (fpG, fpH))

    seq = _generating_sequence(G, caps)
    partial_orders = []
    chain = StabChain(G.degree)
    for x in seq:
        chain.extend(x)
        partial_orders.append(chain.order())

    g_class_of: dict[RawPerm, int] = {}
    for cls in conjugacy_classes(G, caps):
        for m in cls.members:
            g_class_of[m] = cls.size
    h_classes = conjugacy_classes(H, caps)
    h_by_key: dict[tuple[int, int], list[RawPerm]] = {}
    for cls in h_classes:
        key = (cls.rep.order(), cls.size)
        h_by_key.setdefault(key, []).extend(sorted(cls.members))
    buckets = []
    for x in seq:
        key = (_raw_order(x), g_class_of[x])
        buckets.append(h_by_key.get(key, []))
        if not buckets[-1]:
            return None

    depth = len(seq)
    found: list[dict[RawPerm, RawPerm]] = []

    def dfs(k: int, h_chain: StabChain, images: list[RawPerm]) -> bool:
        if k == depth:
            table = induced_map(seq, images, G.degree, H.degree, n + 1)
            if table is not None and len(table) == n:
                found.append(table)
                return True
            return False
        for cand in buckets[k]:
            if h_chain.contains(cand):
                if partial_orders[k] != h_chain.order():
                    continue
                trial = h_chain
            else:
                trial = h_chain.copy()
                trial.extend(cand)
                if trial.order() != partial_orders[k]:
                    continue
            if dfs(k + 1, trial, images + [cand]):
                return True
        return False

    if not dfs(0, StabChain(H.degree), []):
        return None
    table = found[0]
    gen_images = [Permutation(table[g]) for g in G.raw_gens()]
    hom = GroupHom(G, H, gen_images, kernel=trivial_group(G.degree))
    return IsoCertificate(hom, (fpG, fpH))


# ---------------------------------------------------------------------------
# Subgroup enumeration


def subgroups(G: PermGroup, limit: int | None = None,
              caps: Caps | None = None) -> list[PermGroup]:
    """All subgroups: deduplicated cyclic subgroups closed under pairwise join."""
    caps_eff = effective_caps(caps)
    cap = limit if limit is not None else caps_eff.subgroup_limit
    cached = G._cache.get("subgroups")
    if cached is not None:
        if len(cached) > cap:
            raise SubgroupLimitExceeded(
                f"subgroup count {len(cached)} exceeds limit {cap}")
        return cached

    def key_of(S: PermGroup) -> frozenset[RawPerm]:
        return S.element_set(caps)

    triv = trivial_group(G.degree)
    found: dict[frozenset[RawPerm], PermGroup] = {key_of(triv): triv}
    atoms: list[PermGroup] = []
    for x in sorted_elements(G, caps):
        A = PermGroup(G.degree, [Permutation(x)])
        k = key_of(A)
        if k not in found:
            found[k] = A
            atoms.append(A)

    frontier = list(atoms)
    while frontier:
        nxt = []
        for S in frontier:
            for A in atoms:
                gen = A.generators[0]
                if S.contains_raw(gen.images):
                    continue
                J = S.extended([gen])
                k = key_of(J)
                if k not in found:
                    found[k] = J
                    nxt.append(J)
                    if len(found) > cap:
                        raise SubgroupLimitExceeded(
                            f"subgroup closure exceeded limit {cap}")
        frontier = nxt

    result = sorted(found.values(), key=lambda S: (S.order(), tuple(sorted(key_of(S)))))
    G._cache["subgroups"] = result
    return result


# ---------------------------------------------------------------------------
# Radical factorization and quotient inventories


@dataclass
class RadicalFactorization:
    """An irredundant family of maximal normal subgroups cutting out the radical."""

    group: PermGroup
    radical: PermGroup
    family: list[PermGroup]
    quotients: list[PermGroup]

    @property
    def quotient_orders(self) -> list[int]:
        return [q.order() for q in self.quotients]


def radical_factorization(G: PermGroup, caps: Caps | None = None) -> RadicalFactorization:
    """Maximal normals H₁..Hₙ with ⋂Hᵢ = Rad(G), each removal breaking that equality.

    Verifies the order identity |G/Rad| = ∏ |G/Hᵢ| and that each quotient is
    simple; a violation would contradict the radical's structure theory, so it
    raises a falsification alarm rather than returning.
    """
    if G.order() == 1:
        raise InvalidInput("radical factorization requires a nontrivial group")
    maximals = normal_subgroups(G, caps).maximal_members()
    rad_order = baer_radical(G, caps).order()

    family: list[PermGroup] = []
    current: PermGroup | None = None
    for H in maximals:
        merged = H if current is None else intersect_groups(current, H, caps)
        if current is None or merged.order() < current.order():
            family.append(H)
            current = merged
        if current.order() == rad_order:
            break
    assert current is not None and current.order() == rad_order

    reduced = list(family)
    i = 0
    while i < len(reduced):
        rest = reduced[:i] + reduced[i + 1:]
        if rest:
            inter = rest[0]
            for H in rest[1:]:
                inter = intersect_groups(inter, H, caps)
            if inter.order() == rad_order:
                reduced = rest
                continue
        i += 1

    n = G.order()
    product = 1
    quotients = []
    for H in reduced:
        Q, _ = quotient(G, H, caps)
        quotients.append(Q)
        product *= n // H.order()
    if product != n // rad_order:
        raise FalsificationAlarm(
            "radical factorization order identity failed",
            witness={"group_order": n, "radical_order": rad_order,
                     "family_orders": [H.order() for H in reduced]})
    for Q in quotients:
        if not is_simple(Q, caps):
            raise FalsificationAlarm(
                "maximal-normal quotient is not simple",
                witness={"quotient_order": Q.order()})
    radical = baer_radical(G, caps)
    return RadicalFactorization(G, radical, reduced, quotients)


def simple_quotients(G: PermGroup, caps: Caps | None = None) -> list[PermGroup]:
    """Iso-type representatives of G/H over maximal normal H."""
    if G.order() == 1:
        return []
    reps: list[PermGroup] = []
    for H in normal_subgroups(G, caps).maximal_members():
        Q, _ = quotient(G, H, caps)
        if not any(isomorphic(Q, R, caps) is not None for R in reps):
            reps.append(Q)
    return reps


def has_prime_order_quotient(G: PermGroup, caps: Caps | None = None) -> bool:
    """True iff some maximal normal subgroup has prime index.

    Equivalent to the abelianization being nontrivial: a prime-order quotient
    factors through G/[G,G], and conversely any nontrivial finite abelian
    group surjects onto some C_p.  Computed via the derived subgroup so that
    large groups need no quotient or lattice construction.
    """
    return derived_subgroup(G, caps).order() < G.order()


def complement_exists(G: PermGroup, N: PermGroup,
                      caps: Caps | None = None) -> PermGroup | None:
    """A subgroup K with K ∩ N = 1 and KN = G, or None.

    Searches lifts of a generating sequence of G/N: a complement maps
    isomorphically onto the quotient, so each generator image must lift to a
    coset element of exactly the same order.
    """
    if not normal_in(G, N):
        raise InvalidInput("complement search requires a normal subgroup")
    if N.order() == 1:
        return G
    if N.order() == G.order():
        return trivial_group(G.degree)
    Q, proj = quotient(G, N, caps)
    q_order = Q.order()
    q_seq = _generating_sequence(Q, caps)

    # The fiber over a quotient element is rep·N for the matching coset
    # representative, so fibers come from one coset each instead of a
    # projection scan over all of G.
    reps = getattr(proj, "coset_reps", None)
    if reps is not None:
        rep_for = {proj.apply_raw(r.images, caps): r.images for r in reps}
        n_elems = sorted(N.raw_elements(caps))

        def fiber_of(q: RawPerm) -> list[RawPerm]:
            rep = rep_for[q]
            return [_compose(rep, s) for s in n_elems]
    else:
        by_image: dict[RawPerm, list[RawPerm]] = {}
        for x in sorted_elements(G, caps):
            by_image.setdefault(proj.apply_raw(x, caps), []).append(x)

        def fiber_of(q: RawPerm) -> list[RawPerm]:
            return by_image.get(q, [])

    fibers: list[list[RawPerm]] = []
    space = 1
    for q in q_seq:
        want = _raw_order(q)
        fiber = [x for x in fiber_of(q) if _raw_order(x) == want]
        if not fiber:
            return None
        fibers.append(fiber)
        space *= len(fiber)
        if space > 2_000_000:
            raise CapExceeded("complement search space too large")

    def dfs(k: int, chain: StabChain, picked: list[RawPerm]) -> PermGroup | None:
        if chain.order() > q_order:
            return None
        if k == len(fibers):
            if chain.order() != q_order:
                return None
            K = PermGroup(G.degree, [Permutation(x) for x in picked])
            K._chain = chain
            return K
        for x in fibers[k]:
            trial = chain.copy()
            trial.extend(x)
            if trial.order() <= q_order:
                result = dfs(k + 1, trial, picked + [x])
                if result is not None:
                    return result
        return None

    return dfs(0, StabChain(G.degree), [])
