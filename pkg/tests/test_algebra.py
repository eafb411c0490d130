import itertools

import pytest
from hypothesis import given, settings, strategies as st

from artifact.algebra import (
    AlgebraKind,
    FinitePomonoid,
    MalformedAlgebra,
    NotIdeallyResiduated,
    are_isomorphic,
    canonical_key,
    chain,
    dumps,
    enumerate_pomonoids,
    ideal_residuals,
    is_cancellative,
    is_commutative,
    is_equationally_cancellative,
    is_ideally_residuated,
    is_integral,
    is_integrally_closed,
    is_residuated,
    loads,
    make_algebra,
    relabel,
    residual_tables,
    validate,
)


def test_chain_meet_monoid_is_valid(chain2):
    assert validate(chain2, AlgebraKind("pomonoid")).ok
    assert validate(chain2, AlgebraKind("slmonoid", True)).ok


def test_broken_product_reports_witnesses():
    A = make_algebra(2, [(0, 1)], [[1, 0], [0, 1]], 1)
    rep = validate(A, AlgebraKind("pomonoid"))
    axioms = {v.axiom for v in rep.violations}
    assert axioms & {"associativity", "isotone-left", "isotone-right"}


def test_irreflexive_point_is_reported(chain2):
    le = ((False, True), (False, True))
    A = FinitePomonoid(2, le, chain2.mult, 1)
    rep = validate(A)
    assert any(v.axiom == "reflexivity" and v.witness == (0,) for v in rep.violations)


def test_wrong_dimensions_are_structural():
    A = FinitePomonoid(2, ((True,),), ((0, 0), (0, 1)), 1)
    rep = validate(A)
    assert rep.structural and not rep.violations


def test_reported_witnesses_really_violate(cat3):
    # soundness: corrupt each algebra's product at one cell and re-check every witness
    for A in cat3[:20]:
        for a, b in itertools.product(A.elems, A.elems):
            m = [list(r) for r in A.mult]
            m[a][b] = (m[a][b] + 1) % A.n
            B = FinitePomonoid(A.n, A.le, tuple(map(tuple, m)), A.unit)
            for v in validate(B, AlgebraKind("pomonoid")).violations:
                M = B.mult
                if v.axiom == "associativity":
                    x, y, z = v.witness
                    assert M[M[x][y]][z] != M[x][M[y][z]]
                elif v.axiom == "unit":
                    (x,) = v.witness
                    assert M[B.unit][x] != x or M[x][B.unit] != x
                elif v.axiom == "isotone-left":
                    x, y, z = v.witness
                    assert B.le[x][y] and not B.le[M[x][z]][M[y][z]]


def test_integral_examples(trivial):
    assert is_integral(chain(2))
    three = chain(3, unit=1)
    assert not is_integral(three)
    assert is_integral(trivial)


def test_integrally_closed_examples(trivial):
    # {1, a}, a*a = a, a incomparable with 1: a*a <= a but a is not <= 1
    A = make_algebra(2, [], [[0, 1], [1, 1]], 0)
    assert validate(A).ok
    assert not is_integrally_closed(A)
    assert is_integrally_closed(trivial)


def test_cancellative_examples(chain2, trivial):
    assert is_cancellative(trivial)
    assert not is_cancellative(chain2)


def test_absorbing_element_blocks_cancellation(cat3):
    for A in cat3:
        absorbing = [z for z in A.elems if all(A.mult[z][a] == z == A.mult[a][z] for a in A.elems)]
        if absorbing and A.n >= 2:
            assert not is_cancellative(A)


def test_ideal_residuals_examples(chain2):
    assert is_ideally_residuated(chain2)
    assert ideal_residuals(chain2, 0, 0, "left") == (1,)
    for c in chain2.elems:
        assert ideal_residuals(chain2, chain2.unit, c, "left") == (c,)


def test_not_ideally_residuated():
    # 0 is absorbing but sits on top: nothing times 0 lies below 1
    A = make_algebra(2, [(1, 0)], [[0, 0], [0, 1]], 1)
    assert validate(A).ok
    assert not is_ideally_residuated(A)
    with pytest.raises(NotIdeallyResiduated):
        ideal_residuals(A, 0, 1, "left")


def test_residuated_gives_principal_ideal_residuals(cat3):
    for A in cat3:
        tabs = residual_tables(A)
        if tabs is None:
            continue
        ldiv, rdiv = tabs
        assert is_ideally_residuated(A)
        for a, c in itertools.product(A.elems, A.elems):
            assert ideal_residuals(A, a, c, "left") == (ldiv[a][c],)
            assert ideal_residuals(A, a, c, "right") == (rdiv[c][a],)


def test_integral_implies_integrally_closed(cat3):
    for A in cat3:
        if is_integral(A):
            assert is_integrally_closed(A)


def test_equational_and_order_cancellation_agree_on_sl(cat3):
    for A in cat3:
        if A.join is not None:
            assert is_equationally_cancellative(A) == is_cancellative(A)


def test_isomorphism_examples(chain2):
    assert are_isomorphic(chain2, chain2) == (0, 1)
    swapped = relabel(chain2, (1, 0))
    assert are_isomorphic(chain2, swapped) == (1, 0)
    antichain = make_algebra(2, [], [[0, 1], [1, 1]], 0)
    assert are_isomorphic(chain2, antichain) is None


def test_catalog_is_pairwise_non_isomorphic(cat3):
    for A, B in itertools.combinations(cat3, 2):
        if A.n == B.n:
            assert are_isomorphic(A, B) is None


def test_catalog_members_validate(cat3, semigroups3):
    for A in cat3:
        assert validate(A).ok, A.name
    for S in semigroups3:
        assert validate(S, AlgebraKind("posemigroup")).ok, S.name


def test_small_enumeration_counts():
    assert len(enumerate_pomonoids(1)) == 1
    assert len(enumerate_pomonoids(2)) == 1 + 4


def test_integral_filter_is_consistent(cat3):
    integral = [A for A in cat3 if is_integral(A)]
    assert 0 < len(integral) < len(cat3)
    assert all(A in cat3 for A in integral)


def test_commutative_subcatalog(cat3):
    comm = enumerate_pomonoids(3, commutative=True)
    assert len(comm) == sum(1 for A in cat3 if is_commutative(A))


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_pomonoids(5)


def test_text_round_trip(cat3):
    for A in cat3:
        text = dumps(A)
        B, maps = loads(text)
        assert maps == []
        assert dumps(B) == text


def test_comments_and_reflexive_pairs_are_ignored(chain2):
    text = "# a comment\n" + dumps(chain2).replace("le 0 1\n", "le 0 1\nle 0 0  # reflexive\n")
    B, _ = loads(text)
    assert dumps(B) == dumps(chain2)


@pytest.mark.parametrize(
    "text",
    [
        "pomonoid M\nelements 2\nunit 1\nmult 0 0 0\n",
        "pomonoid M\nelements 1\nmult 0 0 0\n",
        "posemigroup S\nelements 1\nunit 0\nmult 0 0 0\n",
        "pomonoid M\nelements 1\nunit 0\nmult 0 0 0\nfrobnicate\n",
        "pomonoid M\nelements 1\nunit 0\nmult 0 0 x\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(MalformedAlgebra):
        loads(text)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_isomorphism_is_invariant_under_relabelling(cat3, data):
    A = data.draw(st.sampled_from(cat3))
    p = tuple(data.draw(st.permutations(list(A.elems))))
    B = relabel(A, p)
    assert canonical_key(A) == canonical_key(B)
    q = are_isomorphic(A, B)
    assert q is not None
    for a, b in itertools.product(A.elems, A.elems):
        assert B.mult[q[a]][q[b]] == q[A.mult[a][b]]
        assert B.le[q[a]][q[b]] == A.le[a][b]


def test_residuated_members_validate_as_residuated(cat3):
    from artifact.algebra import with_residuals

    n = 0
    for A in cat3:
        if is_residuated(A) and A.join is not None:
            n += 1
            assert validate(with_residuals(A), AlgebraKind("residuated")).ok
    assert n > 0
