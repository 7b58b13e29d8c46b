"""Normalizer-quotient realization inside wreath products.

Given a target group G, build Γ = G0^N ⋊ Gn (N the index of an embedded copy
of G in Gn) together with H = H0 × G0^{N−1}, where H0 is a maximal
self-normalizing subgroup of the simple non-abelian G0.  The normalizer
N_Γ(H) is computed structurally as (H0 × G0^{N−1}) ⋊ G and, within caps,
confirmed by brute force; the certificate carries a verified isomorphism
N_Γ(H)/H ≅ G.  The module also hosts the supporting demonstrators: exhaustive
realization search in a fixed ambient group, split-extension checks over a
centerless normal subgroup, twisted-diagonal subgroups of direct powers, and
the factor-permutation behaviour of automorphisms of G0^N.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import Caps, effective_caps
from .errors import CapExceeded, FalsificationAlarm, InvalidInput
from .perm import (
    GroupHom,
    PermGroup,
    Permutation,
    RawPerm,
    _compose,
    _conjugate,
    _identity,
    direct_power,
    group_from_elements,
    identity_hom,
    induced_map,
    point_stabilizer,
    regular_representation,
    wreath_by_cosets,
)
from .structure import (
    IsoCertificate,
    complement_exists,
    is_abelian,
    is_simple,
    isomorphic,
    quotient,
    subgroups,
)
from .universe import alternating


# ---------------------------------------------------------------------------
# Primitivity and brute normalizers


def _minimal_block(degree: int, gens: list[RawPerm], beta: int) -> int:
    """Size of the smallest block containing {0, beta} for a transitive action."""
    parent = list(range(degree))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    parent[find(beta)] = find(0)
    queue = [(0, beta)]
    while queue:
        u, v = queue.pop()
        for g in gens:
            ru, rv = find(g[u]), find(g[v])
            if ru != rv:
                parent[rv] = ru
                queue.append((ru, rv))
    root = find(0)
    return sum(1 for x in range(degree) if find(x) == root)


def is_primitive(G: PermGroup) -> bool:
    """No nontrivial block system; the action must be transitive on all points."""
    degree = G.degree
    gens = G.raw_gens()
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    if len(orbit) != degree:
        raise InvalidInput("primitivity requires a transitive action")
    if degree == 1:
        return True
    return all(_minimal_block(degree, gens, beta) == degree
               for beta in range(1, degree))


def brute_normalizer(parent: PermGroup, H: PermGroup,
                     caps: Caps | None = None) -> PermGroup:
    """N_parent(H) by scanning every element of the parent."""
    hgens = H.raw_gens()
    members = [g for g in parent.raw_elements(caps)
               if all(H.contains_raw(_conjugate(g, h)) for h in hgens)]
    return group_from_elements(parent.degree, members)


# ---------------------------------------------------------------------------
# Maximal self-normalizing subgroups of simple groups


def maximal_selfnormalizing(G0: PermGroup, caps: Caps | None = None) -> PermGroup:
    """A maximal subgroup H0 of a simple non-abelian G0 with N_{G0}(H0) = H0.

    Maximality is certified by primitivity of the coset action (a coset action
    with a nontrivial block system would expose an intermediate subgroup), and
    self-normalization is confirmed by a full element scan.
    """
    caps = effective_caps(caps)
    if is_abelian(G0):
        raise InvalidInput("a simple non-abelian group is required (input is abelian)")
    if not is_simple(G0, caps):
        raise InvalidInput("a simple non-abelian group is required (input is not simple)")

    H0 = None
    if _is_transitive(G0):
        stab = point_stabilizer(G0, 0)
        if stab.order() > 1 and is_primitive(G0):
            H0 = stab
    if H0 is None:
        proper = [S for S in subgroups(G0, caps=caps) if S.order() < G0.order()]
        maximal = [S for S in proper
                   if not any(S.order() < T.order() and S.is_subgroup_of(T)
                              for T in proper)]
        maximal = [S for S in maximal if S.order() > 1]
        if not maximal:
            raise InvalidInput("no maximal subgroup found under the subgroup cap")
        H0 = min(maximal, key=lambda S: (-S.order(), S.raw_gens()))
        from .perm import coset_action

        if not is_primitive(coset_action(G0, H0, caps).image()):
            raise FalsificationAlarm(
                "coset action of a lattice-maximal subgroup has nontrivial blocks",
                witness={"g0_order": G0.order(), "h0_order": H0.order()})

    normalizer = brute_normalizer(G0, H0, caps)
    if normalizer.order() != H0.order():
        raise FalsificationAlarm(
            "maximal subgroup of a simple group is not self-normalizing",
            witness={"g0_order": G0.order(), "h0_order": H0.order(),
                     "normalizer_order": normalizer.order()})
    return H0


def _is_transitive(G: PermGroup) -> bool:
    gens = G.raw_gens()
    if not gens:
        return G.degree == 1
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    return len(orbit) == G.degree


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class RealizationCertificate:
    """A verified instance of the normalizer-quotient construction."""

    target: PermGroup
    g0: PermGroup
    h0: PermGroup
    gn: PermGroup
    embed: GroupHom
    n_coords: int
    gamma: PermGroup
    h: PermGroup
    normalizer: PermGroup
    iso: IsoCertificate
    checks: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        def describe(G: PermGroup) -> dict:
            return {"degree": G.degree, "order": G.order(),
                    "gens": G.gen_strings()}

        return {
            "target": describe(self.target),
            "g0": describe(self.g0),
            "h0": describe(self.h0),
            "gn": describe(self.gn),
            "embedding": [str(p) for p in self.embed.gen_images],
            "n_coords": self.n_coords,
            "gamma": describe(self.gamma),
            "h": describe(self.h),
            "normalizer": describe(self.normalizer),
            "iso": {
                "source_gens": [str(p) for p in self.iso.forward.source.generators],
                "images": [str(p) for p in self.iso.forward.gen_images],
            },
            "checks": dict(self.checks),
        }


def build_realization(G: PermGroup, G0: PermGroup, Gn: PermGroup,
                      embed: GroupHom, caps: Caps | None = None,
                      brute_check: bool = True) -> RealizationCertificate:
    """Construct Γ = G0^N ⋊ Gn and certify N_Γ(H)/H ≅ G for H = H0 × G0^{N−1}.

    The normalizer is assembled structurally from H and the canonical lifts of
    the embedded copy of G; when |Γ| fits the enumeration cap (and brute_check
    is on) a full element scan must reproduce it exactly.
    """
    caps = effective_caps(caps)
    checks: dict = {}

    if embed.source is not G and not embed.source.same_group(G):
        raise InvalidInput("embedding source does not match the target group")
    if embed.target is not Gn and not embed.target.same_group(Gn):
        raise InvalidInput("embedding target does not match the top group")
    if embed.kernel(caps).order() != 1:
        raise InvalidInput("embedding is not injective")
    if G.order() * G.order() <= caps.enum_cap:
        if not embed.is_multiplicative(caps):
            raise InvalidInput("embedding is not a homomorphism")
        checks["embedding_multiplicative"] = "passed"
    else:
        checks["embedding_multiplicative"] = "skipped"

    H0 = maximal_selfnormalizing(G0, caps)
    image = embed.image()
    wp = wreath_by_cosets(G0, Gn, image, caps)
    Gamma, N = wp.group, wp.n_coords

    if Gamma.order() != G0.order() ** N * Gn.order():
        raise FalsificationAlarm(
            "wreath order arithmetic failed",
            witness={"gamma_order": Gamma.order(), "g0_order": G0.order(),
                     "n": N, "gn_order": Gn.order()})
    checks["order_arithmetic"] = "passed"

    h_gens = [wp.coordinate_embedding(0).apply_raw(h) for h in H0.raw_gens()]
    for i in range(1, N):
        emb = wp.coordinate_embedding(i)
        h_gens.extend(emb.apply_raw(g) for g in G0.raw_gens())
    H = PermGroup(Gamma.degree, [Permutation(g) for g in h_gens])
    if H.order() != H0.order() * G0.order() ** (N - 1):
        raise FalsificationAlarm(
            "order arithmetic for H failed",
            witness={"h_order": H.order(), "h0_order": H0.order(),
                     "g0_order": G0.order(), "n": N})

    lift_gens = [wp.top_lift(embed.apply(g)) for g in G.generators]
    M = PermGroup(Gamma.degree, list(H.generators) + lift_gens)
    if M.order() != H.order() * G.order():
        raise FalsificationAlarm(
            "structural normalizer has the wrong order",
            witness={"m_order": M.order(), "h_order": H.order(),
                     "g_order": G.order()})
    for m in M.raw_gens():
        for h in H.raw_gens():
            if not H.contains_raw(_conjugate(m, h)):
                raise FalsificationAlarm(
                    "structural normalizer does not normalize H",
                    witness={"m": str(Permutation(m)), "h": str(Permutation(h))})
    checks["structural_normalizer"] = "passed"

    if brute_check:
        if Gamma.order() > caps.enum_cap:
            raise CapExceeded(
                f"|Gamma| = {Gamma.order()} exceeds the enumeration cap "
                f"{caps.enum_cap}; disable the brute-force cross-check to "
                f"proceed structurally")
        brute = brute_normalizer(Gamma, H, caps)
        if brute.order() != M.order() or not all(
                brute.contains_raw(g) for g in M.raw_gens()):
            raise FalsificationAlarm(
                "brute-force normalizer disagrees with the structural one",
                witness={"structural_order": M.order(),
                         "brute_order": brute.order()})
        checks["brute_normalizer"] = "passed"
    else:
        checks["brute_normalizer"] = "skipped"

    _check_top_quotient(wp, checks)

    Q, _ = quotient(M, H, caps)
    iso = isomorphic(Q, G, caps)
    if iso is None:
        raise FalsificationAlarm(
            "normalizer quotient is not isomorphic to the target",
            witness={"quotient_order": Q.order(), "target_order": G.order(),
                     "quotient_gens": Q.gen_strings()})
    checks["iso_verified"] = "passed"

    return RealizationCertificate(
        target=G, g0=G0, h0=H0, gn=Gn, embed=embed, n_coords=N,
        gamma=Gamma, h=H, normalizer=M, iso=iso, checks=checks)


def _check_top_quotient(wp, checks: dict) -> None:
    """Certify Γ/G0^N ≅ Gn via the restriction to the top group's own points."""
    dn = wp.gn.degree
    offset = wp.group.degree - dn

    def tail(raw: RawPerm) -> RawPerm:
        return tuple(raw[offset + i] - offset for i in range(dn))

    tails = []
    for g in wp.group.raw_gens():
        t = tail(g)
        if not wp.gn.contains_raw(t):
            raise FalsificationAlarm(
                "top restriction leaves the top group",
                witness={"element": str(Permutation(g))})
        tails.append(t)
    restricted = PermGroup(dn, [Permutation(t) for t in tails])
    if restricted.order() != wp.gn.order():
        raise FalsificationAlarm(
            "top restriction is not surjective onto the top group",
            witness={"restricted_order": restricted.order(),
                     "gn_order": wp.gn.order()})
    checks["top_quotient"] = "passed"


def realize(G: PermGroup, alt: int | None = None, caps: Caps | None = None,
            brute_check: bool = True,
            G0: PermGroup | None = None,
            top: PermGroup | None = None) -> RealizationCertificate:
    """Convenience driver: G0 = A5, top group = G itself (identity embedding),
    with ``alt=n`` the alternating group A_n and a regular embedding (doubled
    to even permutations when needed), or with ``top=H`` an ambient group that
    is scanned for a subgroup isomorphic to G."""
    caps = effective_caps(caps)
    base = G0 if G0 is not None else alternating(5)
    if alt is not None and top is not None:
        raise InvalidInput("alt and top are mutually exclusive")
    if top is not None:
        embed = embedding_into(G, top, caps)
        return build_realization(G, base, top, embed, caps, brute_check)
    if alt is None:
        return build_realization(G, base, G, identity_hom(G), caps, brute_check)

    if alt < 3:
        raise InvalidInput("alternating top groups need n >= 3")
    Gn = alternating(alt)
    embed = alternating_embedding(G, alt, caps)
    return build_realization(G, base, Gn, embed, caps, brute_check)


def embedding_into(G: PermGroup, ambient: PermGroup,
                   caps: Caps | None = None) -> GroupHom:
    """An injective homomorphism G → ambient, found by scanning the ambient
    subgroup lattice for the first subgroup isomorphic to G."""
    caps = effective_caps(caps)
    if ambient.order() % G.order() != 0:
        raise InvalidInput(
            f"no subgroup of order {G.order()} fits in a group of order "
            f"{ambient.order()}")
    for S in subgroups(ambient, caps=caps):
        if S.order() != G.order():
            continue
        cert = isomorphic(G, S, caps)
        if cert is not None:
            return GroupHom(G, ambient, cert.forward.gen_images)
    raise InvalidInput("the ambient group has no subgroup isomorphic to the source")


def alternating_embedding(G: PermGroup, n: int,
                          caps: Caps | None = None) -> GroupHom:
    """An injective homomorphism G → A_n from the regular action, using two
    disjoint copies when the regular image contains odd permutations."""
    reg = regular_representation(G, caps)
    m = G.order()
    doubled = any(Permutation(reg.apply_raw(g)).parity() == 1
                  for g in G.raw_gens())
    needed = 2 * m if doubled else m
    if needed > n:
        raise InvalidInput(
            f"A{n} cannot host the regular embedding (needs degree {needed})")
    Gn = alternating(n)

    def fn(raw: RawPerm) -> RawPerm:
        r = reg.apply_raw(raw)
        images = list(range(n))
        for i, ri in enumerate(r):
            images[i] = ri
            if doubled:
                images[m + i] = m + ri
        return tuple(images)

    gen_images = [Permutation(fn(g)) for g in G.raw_gens()]
    for p in gen_images:
        if p.parity() != 0:
            raise FalsificationAlarm(
                "regular embedding produced an odd permutation",
                witness={"image": str(p)})
    return GroupHom(G, Gn, gen_images, map_fn=fn)


# ---------------------------------------------------------------------------
# Exhaustive search in a fixed ambient group


@dataclass
class BruteHit:
    """One subgroup H of the ambient group with N(H)/H isomorphic to the target."""

    subgroup: PermGroup
    normalizer: PermGroup
    quotient: PermGroup
    iso: IsoCertificate


def brute_search(Gamma: PermGroup, G: PermGroup, limit: int | None = None,
                 caps: Caps | None = None) -> list[BruteHit]:
    """All subgroups H ≤ Γ with N_Γ(H)/H ≅ G, normalizers by element scan."""
    hits = []
    for H in subgroups(Gamma, limit=limit, caps=caps):
        N = brute_normalizer(Gamma, H, caps)
        if N.order() != H.order() * G.order():
            continue
        Q, _ = quotient(N, H, caps)
        iso = isomorphic(Q, G, caps)
        if iso is not None:
            hits.append(BruteHit(subgroup=H, normalizer=N, quotient=Q, iso=iso))
    return hits


# ---------------------------------------------------------------------------
# Split extensions over products of centerless simple groups


def split_check(G: PermGroup, N: PermGroup,
                caps: Caps | None = None) -> PermGroup:
    """Find a complement to N in G; the caller asserts the hypotheses under
    which a complement must exist, so a non-split verdict raises an alarm."""
    comp = complement_exists(G, N, caps)
    if comp is None:
        raise FalsificationAlarm(
            "no complement found where the hypotheses force a split extension",
            witness={"group_order": G.order(), "normal_order": N.order()})
    return comp


# ---------------------------------------------------------------------------
# Twisted diagonals and factor permutations in direct powers


def conjugation_automorphism(G: PermGroup, s, caps: Caps | None = None) -> GroupHom:
    """The automorphism x ↦ sxs⁻¹ of G, for s normalizing G (s need not lie in G)."""
    raw = s.images if isinstance(s, Permutation) else (
        s if isinstance(s, tuple) else Permutation.from_cycles(s, G.degree).images)
    images = []
    for g in G.raw_gens():
        img = _conjugate(raw, g)
        if not G.contains_raw(img):
            raise InvalidInput("conjugating element does not normalize the group")
        images.append(Permutation(img))
    return GroupHom(G, G, images, map_fn=lambda x: _conjugate(raw, x))


@dataclass
class DiagonalSubgroup:
    """A twisted diagonal {(φ1(x), …, φN(x))} inside G0^N, with its support."""

    group: PermGroup
    ambient: PermGroup
    support: tuple[int, ...]


def diagonal_subgroup(G0: PermGroup, n: int, phis: list,
                      caps: Caps | None = None) -> DiagonalSubgroup:
    """The subgroup {(φ1(x),…,φn(x)) : x ∈ G0} of G0^n.

    Each φ is None (coordinate held at the identity), a homomorphism G0 → G0,
    or a list of generator images; every present φ must be a verified
    automorphism, and at least one must be present.
    """
    caps = effective_caps(caps)
    if len(phis) != n:
        raise InvalidInput(f"expected {n} twist entries, got {len(phis)}")
    homs: list[GroupHom | None] = []
    for phi in phis:
        if phi is None:
            homs.append(None)
            continue
        if isinstance(phi, GroupHom):
            hom = phi
        else:
            images = [p if isinstance(p, Permutation)
                      else Permutation.from_cycles(p, G0.degree)
                      for p in phi]
            hom = GroupHom(G0, G0, images)
        if len(hom.gen_images) != len(G0.generators):
            raise InvalidInput("twist must map the ambient factor's generators")
        if not _is_automorphism(G0, hom, caps):
            raise InvalidInput("twist entry is not an automorphism")
        homs.append(hom)
    support = tuple(i for i, hom in enumerate(homs) if hom is not None)
    if not support:
        raise InvalidInput("at least one twist entry must be present")

    ambient = direct_power(G0, n)
    embeddings = ambient.coordinate_embeddings
    gens = []
    for g in G0.raw_gens():
        word = _identity(ambient.degree)
        for i in support:
            piece = embeddings[i].apply_raw(homs[i].apply_raw(g, caps))
            word = _compose(word, piece)
        gens.append(Permutation(word))
    S = PermGroup(ambient.degree, gens)
    if S.order() != G0.order():
        raise FalsificationAlarm(
            "twisted diagonal has the wrong order",
            witness={"diagonal_order": S.order(), "factor_order": G0.order()})
    return DiagonalSubgroup(group=S, ambient=ambient, support=support)


def _is_automorphism(G: PermGroup, hom: GroupHom, caps: Caps) -> bool:
    images = [p.images for p in hom.gen_images]
    if any(not G.contains_raw(img) for img in images):
        return False
    if PermGroup(G.degree, hom.gen_images).order() != G.order():
        return False
    table = induced_map(G.raw_gens(), images, G.degree, G.degree,
                        limit=G.order() + 1)
    return table is not None


def block_swap_automorphism(G0: PermGroup, n: int, i: int, j: int) -> GroupHom:
    """The automorphism of G0^n that exchanges coordinates i and j."""
    d = G0.degree
    if not (0 <= i < n and 0 <= j < n and i != j):
        raise InvalidInput("coordinate swap needs two distinct coordinates")
    D = direct_power(G0, n)
    swap = list(range(D.degree))
    for p in range(d):
        swap[i * d + p], swap[j * d + p] = j * d + p, i * d + p
    swap_raw = tuple(swap)
    images = [Permutation(_conjugate(swap_raw, g)) for g in D.raw_gens()]
    return GroupHom(D, D, images, map_fn=lambda x: _conjugate(swap_raw, x))


def coordinatewise_automorphism(G0: PermGroup, n: int,
                                alphas: list[GroupHom],
                                caps: Caps | None = None) -> GroupHom:
    """The automorphism (x1,…,xn) ↦ (α1(x1),…,αn(xn)) of G0^n."""
    caps = effective_caps(caps)
    if len(alphas) != n:
        raise InvalidInput(f"expected {n} coordinate automorphisms")
    for alpha in alphas:
        if not _is_automorphism(G0, alpha, caps):
            raise InvalidInput("coordinate entry is not an automorphism")
    D = direct_power(G0, n)
    d = G0.degree

    def fn(raw: RawPerm) -> RawPerm:
        images = list(range(D.degree))
        for i in range(n):
            block = tuple(raw[i * d + p] - i * d for p in range(d))
            mapped = alphas[i].apply_raw(block, caps)
            for p in range(d):
                images[i * d + p] = mapped[p] + i * d
        return tuple(images)

    gen_images = [Permutation(fn(g)) for g in D.raw_gens()]
    return GroupHom(D, D, gen_images, map_fn=fn)


def compose_automorphisms(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer ∘ inner on a common group, keeping fast raw evaluation."""
    if outer.source.degree != inner.source.degree:
        raise InvalidInput("automorphism composition needs a common degree")

    def fn(raw: RawPerm) -> RawPerm:
        return outer.apply_raw(inner.apply_raw(raw))

    gen_images = [Permutation(fn(g)) for g in inner.source.raw_gens()]
    return GroupHom(inner.source, outer.target, gen_images, map_fn=fn)


def factor_permutation_check(G0: PermGroup, n: int, theta: GroupHom,
                             caps: Caps | None = None) -> tuple[int, ...]:
    """The permutation j(i) with theta(i-th factor) = j-th factor.

    theta must be a verified automorphism of G0^n with G0 simple non-abelian;
    an image factor straddling coordinates would falsify the factor-permutation
    statement and raises an alarm.
    """
    caps = effective_caps(caps)
    if is_abelian(G0) or not is_simple(G0, caps):
        raise InvalidInput("factor permutation analysis needs a simple non-abelian factor")
    D = direct_power(G0, n)
    if theta.source.degree != D.degree:
        raise InvalidInput("theta does not act on the direct power")
    if not _is_automorphism(D, GroupHom(D, D, [Permutation(theta.apply_raw(g))
                                               for g in D.raw_gens()],
                                        map_fn=theta.apply_raw), caps):
        raise InvalidInput("theta is not an automorphism of the direct power")

    d = G0.degree
    mapping: list[int] = []
    for i in range(n):
        emb = D.coordinate_embeddings[i]
        blocks = set()
        image_gens = []
        for g in G0.raw_gens():
            img = theta.apply_raw(emb.apply_raw(g))
            image_gens.append(Permutation(img))
            blocks.update(p // d for p in range(D.degree) if img[p] != p)
        if len(blocks) != 1:
            raise FalsificationAlarm(
                "automorphism image of a factor straddles coordinates",
                witness={"factor": i, "blocks": sorted(blocks)})
        j = blocks.pop()
        if PermGroup(D.degree, image_gens).order() != G0.order():
            raise FalsificationAlarm(
                "automorphism image of a factor has the wrong order",
                witness={"factor": i, "target_block": j})
        mapping.append(j)
    if sorted(mapping) != list(range(n)):
        raise FalsificationAlarm(
            "factor mapping is not a permutation",
            witness={"mapping": mapping})
    return tuple(mapping)
