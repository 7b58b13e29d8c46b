"""Small brute-force reference implementations used to cross-check fast code."""
from __future__ import annotations

from itertools import product

RawPerm = tuple[int, ...]


def compose(a: RawPerm, b: RawPerm) -> RawPerm:
    return tuple(a[x] for x in b)


def inverse(a: RawPerm) -> RawPerm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def naive_closure(gens: list[RawPerm], degree: int) -> frozenset[RawPerm]:
    """All products of generators, by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def naive_normal_closure(G: frozenset[RawPerm], seeds: list[RawPerm],
                         degree: int) -> frozenset[RawPerm]:
    conj = [compose(g, compose(s, inverse(g))) for g in G for s in seeds]
    return naive_closure(conj, degree)


def naive_center(G: frozenset[RawPerm]) -> frozenset[RawPerm]:
    return frozenset(z for z in G if all(compose(z, g) == compose(g, z) for g in G))


def naive_commutator_subgroup(G: frozenset[RawPerm], degree: int) -> frozenset[RawPerm]:
    comms = [compose(a, compose(b, compose(inverse(a), inverse(b)))) for a in G for b in G]
    return naive_closure(comms, degree)


def naive_normal_subgroups(G: frozenset[RawPerm], degree: int) -> set[frozenset[RawPerm]]:
    """Every normal subgroup, as an element set (feasible only for tiny G)."""
    found = {frozenset({tuple(range(degree))})}
    frontier = list(found)
    while frontier:
        nxt = []
        for N in frontier:
            for x in G:
                if x in N:
                    continue
                M = naive_normal_closure(G, list(N) + [x], degree)
                if M not in found:
                    found.add(M)
                    nxt.append(M)
        frontier = nxt
    return found


def naive_is_homomorphism(table: dict[RawPerm, RawPerm]) -> bool:
    for x, fx in table.items():
        for y, fy in table.items():
            if table[compose(x, y)] != compose(fx, fy):
                return False
    return True


def all_perms(degree: int) -> list[RawPerm]:
    from itertools import permutations

    return [tuple(p) for p in permutations(range(degree))]
