from artifact.algebra import AlgebraKind, chain, is_cancellative, is_integral, top, validate
from artifact.nuclei import (
    Conucleus,
    Nucleus,
    conuclear_image,
    enumerate_conuclei,
    enumerate_nuclei,
    enumerate_nuclei_naive,
    identity,
    is_unital,
    nuclear_image,
    validate_conucleus,
    validate_nucleus,
)
from artifact.algebra import are_isomorphic


def test_identity_and_top_are_nuclei(cat3):
    for A in cat3:
        assert validate_nucleus(identity(A)).ok
        if is_integral(A):
            t = top(A)
            assert validate_nucleus(Nucleus(A, (t,) * A.n)).ok


def test_non_monotone_map_is_reported():
    A = chain(3, unit=2)
    rep = validate_nucleus(Nucleus(A, (2, 1, 2)))
    assert any(v.axiom == "monotone" for v in rep.violations)


def test_unital_examples():
    A = chain(3, unit=1)
    assert is_unital(identity(A))
    assert validate_nucleus(Nucleus(A, (2, 2, 2))).ok
    assert not is_unital(Nucleus(A, (2, 2, 2)))


def test_enumeration_matches_naive_oracle(cat3):
    for A in cat3:
        fast = [g.map for g in enumerate_nuclei(A)]
        slow = [g.map for g in enumerate_nuclei_naive(A)]
        assert fast == slow, A.name
        assert fast[0] == tuple(A.elems)


def test_trivial_has_one_nucleus(trivial):
    assert len(enumerate_nuclei(trivial)) == 1


def test_images_keep_their_kind(cat3):
    for A in cat3:
        for g in enumerate_nuclei(A):
            B = nuclear_image(g)
            structure = "slmonoid" if A.join is not None else "pomonoid"
            assert validate(B, AlgebraKind(structure)).ok, (A.name, g.map)


def test_identity_image_is_the_algebra(cat3):
    for A in cat3:
        assert are_isomorphic(nuclear_image(identity(A)), A) is not None


def test_top_image_is_trivial():
    A = chain(3, unit=2)
    assert nuclear_image(Nucleus(A, (2, 2, 2))).n == 1


def test_three_chain_image():
    A = chain(3, unit=2)
    g = Nucleus(A, (1, 1, 2))
    assert validate_nucleus(g).ok
    B = nuclear_image(g)
    assert B.n == 2 and B.le[0][1] and not B.le[1][0]


def test_nuclei_on_cancellative_sl_monoids_are_unital(cat3):
    for A in cat3:
        if A.join is not None and is_cancellative(A):
            assert all(is_unital(g) for g in enumerate_nuclei(A))


def test_conucleus_examples(cat3):
    for A in cat3:
        assert validate_conucleus(Conucleus(A, tuple(A.elems))).ok
        assert are_isomorphic(conuclear_image(Conucleus(A, tuple(A.elems))), A) is not None
        if is_integral(A):
            # everything open only at 1: not decreasing unless A is trivial
            s = Conucleus(A, (A.unit,) * A.n)
            assert validate_conucleus(s).ok == (A.n == 1)


def test_negative_cone_conucleus():
    # chain 0 < 1 < 2 with unit 1 and product min: a -> a ^ 1 is a conucleus onto the cone below 1
    A = chain(3, unit=1)
    s = Conucleus(A, tuple(min(a, 1) for a in A.elems))
    assert validate_conucleus(s).ok
    B = conuclear_image(s)
    assert B.n == 2 and B.unit == 1


def test_enumerated_conuclei_validate(cat3):
    for A in cat3:
        for s in enumerate_conuclei(A):
            assert validate_conucleus(s).ok
            assert s.map[A.unit] == A.unit
