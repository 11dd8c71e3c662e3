import random

import pytest

from commensurators.comm import bs_targets, load_shipped_iso
from commensurators.iso import pullback
from commensurators.subgroups import (
    CosetTable,
    DomainError,
    EnumerationError,
    FiniteAbelianTarget,
    contains,
    enumerate_by_oracle,
    expand,
    index,
    intersect,
    kernel_table,
    reidemeister_rewrite,
    schreier,
    surface_relators,
    whole_group_table,
)
from commensurators.words import GroupPresentation, Word, free_group, is_trivial, surface_group
from helpers import random_element, random_letters, subgroup_order_closure

F = free_group()
S = surface_group()


def k1(G):
    return kernel_table(G, bs_targets(G, 2, 3)[0])


def k2(G):
    return kernel_table(G, bs_targets(G, 2, 3)[1])


def free_tables():
    K1, K2 = k1(F), k2(F)
    return {"K1": K1, "K2": K2, "K1&K2": intersect(K1, K2), "F2": whole_group_table(F)}


def surface_tables():
    K1, K2 = k1(S), k2(S)
    return {"K1": K1, "K2": K2, "K1&K2": intersect(K1, K2), "G": whole_group_table(S)}


# -- kernels


def test_kernel_indices():
    assert index(k1(F)) == 6
    assert index(k1(S)) == 6
    assert index(k2(S)) == 6
    zero = FiniteAbelianTarget((2, 3), ((0, 0), (0, 0)))
    assert index(kernel_table(F, zero)) == 1
    assert index(whole_group_table(S)) == 1


def test_kernel_membership_examples():
    K1 = k1(F)
    assert contains(K1, F.word("A^2"))
    assert not contains(K1, F.word("A"))
    assert contains(K1, F.word("B*A*B^-1*A^-1"))


def test_kernel_rejects_non_homomorphism():
    # [A,B][C,D] has zero exponent sums, so every abelian target is fine
    ok = FiniteAbelianTarget((2,), ((1,), (0,), (0,), (0,)))
    assert index(kernel_table(S, ok)) == 2
    G = GroupPresentation(("A", "B"), ((1, 1),))
    with pytest.raises(ValueError):
        kernel_table(G, FiniteAbelianTarget((3,), ((1,), (0,))))


def test_kernel_membership_matches_residues():
    rng = random.Random(5)
    for G in (F, S):
        for target in bs_targets(G, 2, 3) + (FiniteAbelianTarget((4, 5), [(1, 2)] * G.rank),):
            H = kernel_table(G, target)
            for _ in range(300):
                w = random_letters(rng, G.rank, rng.randint(0, 12))
                assert H.contains(w) == (not any(target.image_of(w)))


def test_relators_fix_every_coset():
    for H in surface_tables().values():
        H.check()
        for s in range(H.n_states):
            assert H.act(s, S.relators[0]) == s


# -- intersections


def test_intersection_index_from_quotient_image():
    # (pi1, pi2): F2 -> (Z/2 x Z/3)^2, A -> ((1,0),(0,1)), B -> ((0,1),(1,0))
    order = subgroup_order_closure([(1, 0, 0, 1), (0, 1, 1, 0)], (2, 3, 2, 3))
    assert order == 36
    assert index(intersect(k1(F), k2(F))) == order


def test_intersection_examples():
    K1 = k1(F)
    assert intersect(K1, K1) == K1
    assert intersect(K1, whole_group_table(F)) == K1
    assert intersect(whole_group_table(F), K1) == K1


@pytest.mark.parametrize("tables", [free_tables, surface_tables])
def test_intersection_divisibility_and_bound(tables):
    rng = random.Random(7)
    T = list(tables().values())
    G = T[0].group
    extra = [kernel_table(G, FiniteAbelianTarget((2, 2), [(rng.randrange(2), rng.randrange(2))
                                                          for _ in range(G.rank)]))
             for _ in range(4)]
    T += extra
    for H in T:
        for K in T:
            M = intersect(H, K)
            assert M.n_states <= H.n_states * K.n_states
            assert M.n_states % H.n_states == 0
            assert M.n_states % K.n_states == 0
            M.check()


# -- Schreier data


def test_nielsen_schreier_counts():
    T = free_tables()
    assert len(schreier(T["K1"]).generators) == 7
    assert len(schreier(T["K1&K2"]).generators) == 37
    for H in T.values():
        assert len(H.schreier.generators) == 1 + H.n_states * (F.rank - 1)


def test_surface_schreier_counts():
    # non-tree pairs only: n*rank - (n - 1)
    for H in surface_tables().values():
        assert len(H.schreier.generators) == H.n_states * S.rank - (H.n_states - 1)


def test_schreier_generators_lie_in_subgroup():
    for H in list(free_tables().values()) + list(surface_tables().values()):
        for t in H.schreier.generators:
            assert H.contains(t)
            assert t  # tree edges carry no symbol


def test_rewrite_examples():
    H = k1(F)
    Sd = schreier(H)
    for j, t in enumerate(Sd.generators, start=1):
        assert reidemeister_rewrite(Sd, t) == (j,)
    assert reidemeister_rewrite(Sd, ()) == ()
    with pytest.raises(DomainError):
        reidemeister_rewrite(Sd, F.word("A"))


@pytest.mark.parametrize("tables", [free_tables, surface_tables])
def test_rewrite_round_trip(tables):
    rng = random.Random(11)
    for name, H in tables().items():
        Sd = H.schreier
        for _ in range(1000):
            w = random_element(rng, H, rng.randint(0, 20))
            assert H.contains(w)
            assert expand(Sd, reidemeister_rewrite(Sd, w)) == w, name


def test_surface_relators():
    G1 = whole_group_table(S)
    rels = surface_relators(G1.schreier)
    assert len(rels) == 1
    assert expand(G1.schreier, rels[0]).letters == S.relators[0]
    H = k1(S)
    rels = surface_relators(H.schreier)
    assert len(rels) == 6
    for seq in rels:
        # each is a conjugate of the relator, so trivial in the group
        assert is_trivial(S, expand(H.schreier, seq))


# -- enumeration and serialization


def test_enumerate_by_oracle_matches_kernel_table():
    for G in (F, S):
        for H in (k1(G), k2(G), intersect(k1(G), k2(G))):
            E = enumerate_by_oracle(G, H.contains, H.n_states)
            assert E == H
    assert enumerate_by_oracle(F, lambda w: True, 1).n_states == 1


def test_enumerate_by_oracle_bound():
    with pytest.raises(EnumerationError):
        enumerate_by_oracle(F, k1(F).contains, 5)


def test_enumerate_by_oracle_restricted_domain():
    """The preimage table agrees with the pairwise membership predicate."""
    psi = load_shipped_iso("psi_free")
    K1, K2 = psi.domain, psi.codomain
    L = intersect(K1, K2)

    def member(w):
        return K1.contains(w) and L.contains(psi.evaluate_letters(w.letters))

    E = enumerate_by_oracle(F, member, K1.n_states * L.n_states)
    P = pullback(psi, L)
    assert E == P
    assert (K1.n_states * L.n_states) % E.n_states == 0
    assert E.n_states == L.n_states


def test_canonical_and_same_subgroup():
    H = k1(F)
    # relabel states 1 and 2 and compare
    perm = list(range(H.n_states))
    perm[1], perm[2] = perm[2], perm[1]
    trans = [tuple(perm[p[perm.index(s)]] for s in range(H.n_states)) for p in H.transitions]
    H2 = CosetTable(F, trans)
    assert H2 != H
    assert H2.same_subgroup(H)
    assert H2.canonical() == H
    assert not H.same_subgroup(k2(F))


def test_json_round_trip():
    for H in list(free_tables().values()) + list(surface_tables().values()):
        assert CosetTable.from_json(H.group, H.to_json()) == H
    assert k1(S).dumps() == k1(S).dumps()


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        CosetTable(F, [(0, 0), (0, 1)])
    doc = k1(S).to_json()
    # [A,B] acts trivially here, but [C,D] is a 3-cycle
    doc["permutations"]["C"] = [1, 0, 2, 3, 4, 5]
    doc["permutations"]["D"] = [0, 2, 1, 3, 4, 5]
    with pytest.raises(ValueError):
        CosetTable.from_json(S, doc)
