"""Permutation arithmetic, stabilizer chains, and product constructions."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classlab.errors import InvalidInput, ParseError
from classlab.perm import (
    GroupHom,
    Permutation,
    StabChain,
    _compose,
    _conjugate,
    _inverse,
    coset_action,
    direct_power,
    generate,
    group_from_elements,
    induced_map,
    point_stabilizer,
    regular_representation,
    trivial_group,
    wreath_by_cosets,
)

import oracles

perm_of = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(n))).map(tuple))


def same_degree_pairs():
    return st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))).map(tuple),
                            st.permutations(list(range(n))).map(tuple)))


def same_degree_triples():
    return st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))).map(tuple),
                            st.permutations(list(range(n))).map(tuple),
                            st.permutations(list(range(n))).map(tuple)))


class TestPermutationBasics:
    def test_parse_frozen(self):
        assert Permutation.from_cycles("(1 2 3)(4 5)", 5).images == (1, 2, 0, 4, 3)
        assert Permutation.from_cycles("()", 4).images == (0, 1, 2, 3)
        assert Permutation.from_cycles("( 1   2 )", 3).images == (1, 0, 2)

    def test_format_frozen(self):
        assert str(Permutation((1, 2, 0, 4, 3))) == "(1 2 3)(4 5)"
        assert str(Permutation.identity(6)) == "()"

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError):
            Permutation.from_cycles("(1 2", 4)
        with pytest.raises(ParseError):
            Permutation.from_cycles("(1 9)", 4)
        with pytest.raises(ParseError):
            Permutation.from_cycles("(1 2)(2 3)", 4)
        with pytest.raises(ParseError):
            Permutation.from_cycles("", 4)
        with pytest.raises(ParseError):
            Permutation.from_cycles("(1 x)", 4)

    def test_non_bijection_rejected(self):
        with pytest.raises(InvalidInput):
            Permutation((0, 0, 1))

    def test_compose_applies_right_factor_first(self):
        a = Permutation.from_cycles("(1 2)", 3)
        b = Permutation.from_cycles("(2 3)", 3)
        assert str(a * b) == "(1 2 3)"
        assert str(b * a) == "(1 3 2)"

    def test_order_and_parity(self):
        p = Permutation.from_cycles("(1 2 3)(4 5)", 5)
        assert p.order() == 6
        assert p.parity() == 1
        assert Permutation.from_cycles("(1 2 3)", 5).parity() == 0
        assert Permutation.identity(5).order() == 1

    @given(same_degree_pairs())
    def test_compose_matches_oracle(self, pair):
        a, b = pair
        assert (Permutation(a) * Permutation(b)).images == oracles.compose(a, b)

    @given(perm_of)
    def test_inverse(self, raw):
        p = Permutation(raw)
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    @given(same_degree_triples())
    def test_associativity(self, triple):
        a, b, c = triple
        assert _compose(_compose(a, b), c) == _compose(a, _compose(b, c))

    @given(same_degree_pairs())
    def test_conjugate_helper_formula(self, pair):
        g, x = pair
        assert _conjugate(g, x) == _compose(g, _compose(x, _inverse(g)))

    @given(same_degree_pairs())
    def test_parity_is_multiplicative(self, pair):
        a, b = pair
        pa, pb = Permutation(a), Permutation(b)
        assert (pa * pb).parity() == (pa.parity() + pb.parity()) % 2

    @given(perm_of)
    def test_cycle_text_round_trip(self, raw):
        p = Permutation(raw)
        assert Permutation.from_cycles(str(p), p.degree) == p


class TestStabChain:
    def test_a5_order_and_elements(self):
        G = generate(["(1 2 3)", "(3 4 5)"], 5)
        assert G.order() == 60
        elems = set(G.raw_elements())
        assert elems == oracles.naive_closure(G.raw_gens(), 5)

    def test_s4_order(self):
        G = generate(["(1 2)", "(1 2 3 4)"], 4)
        assert G.order() == 24
        assert set(G.raw_elements()) == oracles.naive_closure(G.raw_gens(), 4)

    def test_membership(self):
        A5 = generate(["(1 2 3)", "(3 4 5)"], 5)
        assert A5.contains("(1 2)(3 4)")
        assert not A5.contains("(1 2)")
        assert A5.contains(Permutation.identity(5))

    def test_trivial_group(self):
        T = trivial_group(4)
        assert T.order() == 1
        assert T.raw_elements() == ((0, 1, 2, 3),)

    def test_deterministic_rebuild(self):
        gens = ["(1 2 3)", "(3 4 5)"]
        G1, G2 = generate(gens, 5), generate(gens, 5)
        assert G1.chain().base() == G2.chain().base()
        assert G1.raw_elements() == G2.raw_elements()

    def test_elements_distinct_and_counted(self):
        G = generate(["(1 2)", "(1 2 3 4 5)"], 5)
        assert G.order() == 120
        elems = G.raw_elements()
        assert len(elems) == 120 == len(set(elems))

    def test_chain_copy_is_independent(self):
        G = generate(["(1 2 3)"], 5)
        c = G.chain().copy()
        c.extend(Permutation.from_cycles("(3 4 5)", 5).images)
        assert c.order() == 60
        assert G.order() == 3

    def test_extended_reuses_without_mutation(self):
        C3 = generate(["(1 2 3)"], 5)
        A5 = C3.extended(["(3 4 5)"])
        assert A5.order() == 60
        assert C3.order() == 3
        assert C3.extended(["(1 2 3)"]) is C3

    def test_base_hint_puts_point_first(self):
        G = generate(["(2 3 4)", "(1 2)(3 4)"], 4)
        chain = StabChain(4, G.raw_gens(), base_hint=[0])
        assert chain.base()[0] == 0
        assert chain.order() == G.order()

    @given(st.lists(perm_of, min_size=1, max_size=3))
    @settings(max_examples=40, deadline=None)
    def test_order_matches_naive_closure(self, raws):
        degree = max(len(r) for r in raws)
        padded = [tuple(list(r) + list(range(len(r), degree))) for r in raws]
        G = generate([Permutation(p) for p in padded], degree)
        assert G.order() == len(oracles.naive_closure(padded, degree))


class TestPointStabilizer:
    def test_a5_stabilizer_is_a4(self):
        A5 = generate(["(1 2 3)", "(3 4 5)"], 5)
        S = point_stabilizer(A5, 0)
        assert S.order() == 12
        assert all(g(0) == 0 for g in S.generators)
        assert S.is_subgroup_of(A5)

    def test_stabilizer_in_intransitive_group(self):
        G = generate(["(1 2 3)"], 5)
        assert point_stabilizer(G, 4).order() == 3
        assert point_stabilizer(G, 0).order() == 1


class TestGroupFromElements:
    def test_round_trip(self):
        G = generate(["(1 2)", "(1 2 3)"], 3)
        H = group_from_elements(3, G.raw_elements())
        assert H.order() == 6
        assert H.same_group(G)
        assert len(H.generators) <= 3


class TestHomomorphisms:
    def test_induced_map_builds_sign_character(self):
        table = induced_map([(1, 0, 2), (1, 2, 0)], [(1, 0), (0, 1)], 3, 2, 1000)
        assert table is not None
        assert len(table) == 6
        assert oracles.naive_is_homomorphism(table)

    def test_induced_map_rejects_inconsistent_images(self):
        c4 = [(1, 2, 3, 0)]
        three_cycle = [(1, 2, 0)]
        assert induced_map(c4, three_cycle, 4, 3, 1000) is None

    def test_word_table_hom(self):
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        C2 = generate(["(1 2)"], 2)
        sign = GroupHom(S3, C2, [Permutation((1, 0)), Permutation((0, 1))])
        assert sign.apply(Permutation.from_cycles("(1 3)", 3)).images == (1, 0)
        assert sign.kernel().order() == 3
        assert sign.is_multiplicative()
        assert sign.image().order() == 2

    def test_apply_outside_source_rejected(self):
        A3 = generate(["(1 2 3)"], 3)
        h = GroupHom(A3, A3, A3.generators)
        with pytest.raises(InvalidInput):
            h.apply(Permutation.from_cycles("(1 2)", 3))


class TestDirectPower:
    def test_square_of_a5(self):
        A5 = generate(["(1 2 3)", "(3 4 5)"], 5)
        P = direct_power(A5, 2)
        assert P.degree == 10
        assert P.order() == 3600
        e0, e1 = P.coordinate_embeddings
        g = Permutation.from_cycles("(1 2 3)", 5)
        assert str(e0.apply(g)) == "(1 2 3)"
        assert str(e1.apply(g)) == "(6 7 8)"
        x, y = e0.apply(g), e1.apply(g)
        assert x * y == y * x

    def test_power_one_is_same_group(self):
        C3 = generate(["(1 2 3)"], 3)
        P = direct_power(C3, 1)
        assert P.degree == 3 and P.order() == 3


class TestCosetAction:
    def test_s4_on_cosets_of_c2(self):
        S4 = generate(["(1 2)", "(1 2 3 4)"], 4)
        C2 = generate(["(1 2)"], 4)
        act = coset_action(S4, C2)
        assert act.target.degree == 12
        assert act.coset_reps[0].is_identity()
        assert act.image().order() == 24
        assert act.kernel().order() == 1

    def test_identity_coset_is_fixed_by_subgroup(self):
        S4 = generate(["(1 2)", "(1 2 3 4)"], 4)
        V = generate(["(1 2)(3 4)", "(1 3)(2 4)"], 4)
        act = coset_action(S4, V)
        assert act.target.degree == 6
        for s in V.generators:
            assert act.apply(s)(0) == 0
        assert act.kernel().same_group(V)

    def test_action_is_multiplicative(self):
        S4 = generate(["(1 2)", "(1 2 3 4)"], 4)
        S3 = generate(["(1 2)", "(1 2 3)"], 4)
        act = coset_action(S4, S3)
        assert act.target.degree == 4
        assert act.is_multiplicative()

    def test_whole_group_gives_single_point(self):
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        act = coset_action(S3, S3)
        assert act.target.degree == 1
        assert act.kernel().same_group(S3)

    def test_rejects_non_subgroup(self):
        A4 = generate(["(1 2 3)", "(1 2)(3 4)"], 4)
        C2 = generate(["(1 2)"], 4)
        with pytest.raises(InvalidInput):
            coset_action(A4, C2)


class TestRegularRepresentation:
    def test_s3_regular(self):
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        reg = regular_representation(S3)
        assert reg.target.degree == 6
        assert reg.image().order() == 6
        assert reg.kernel().order() == 1
        assert reg.is_multiplicative()


class TestWreathByCosets:
    def test_two_block_wreath_order(self):
        A5 = generate(["(1 2 3)", "(3 4 5)"], 5)
        C4 = generate(["(1 2 3 4)"], 4)
        C2 = generate(["(1 3)(2 4)"], 4)
        W = wreath_by_cosets(A5, C4, C2)
        assert W.n_coords == 2
        assert W.group.degree == 14
        assert W.group.order() == 14400
        assert W.base.order() == 3600
        assert W.top.kernel().same_group(W.base)
        assert W.top.image().order() == 4

    def test_three_block_wreath_order(self):
        C2 = generate(["(1 2)"], 2)
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        C2sub = generate(["(1 2)"], 3)
        W = wreath_by_cosets(C2, S3, C2sub)
        assert W.n_coords == 3
        assert W.group.order() == 48
        assert W.base.order() == 8

    def test_top_lift_conjugation_permutes_coordinates(self):
        C2 = generate(["(1 2)"], 2)
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        C2sub = generate(["(1 2)"], 3)
        W = wreath_by_cosets(C2, S3, C2sub)
        g = Permutation.from_cycles("(1 2)", 2)
        for h in S3.generators:
            t = W.top_lift(h)
            sigma = W.coset_hom.apply(h)
            for i in range(W.n_coords):
                lhs = t * W.coordinate_embedding(i).apply(g) * t.inverse()
                rhs = W.coordinate_embedding(sigma(i)).apply(g)
                assert lhs == rhs

    def test_top_lift_section_of_projection(self):
        C2 = generate(["(1 2)"], 2)
        S3 = generate(["(1 2)", "(1 2 3)"], 3)
        C2sub = generate(["(1 2)"], 3)
        W = wreath_by_cosets(C2, S3, C2sub)
        for h in S3.elements():
            assert W.top.apply(W.top_lift(h)) == h

    def test_index_one_degenerates_to_direct_product(self):
        A5 = generate(["(1 2 3)", "(3 4 5)"], 5)
        C2 = generate(["(1 2)"], 2)
        W = wreath_by_cosets(A5, C2, C2)
        assert W.n_coords == 1
        assert W.group.order() == 120
        assert W.top.image().order() == 2
