"""Nuclei and conuclei on finite pomonoids, and their images."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

from .algebra import (
    FinitePomonoid,
    ValidationReport,
    Violation,
    join_table,
    meet_table,
    with_joins,
    with_residuals,
)


@dataclass(frozen=True)
class Nucleus:
    base: FinitePomonoid
    map: tuple[int, ...]
    name: str = "g"

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def closed(self) -> tuple[int, ...]:
        return tuple(a for a in self.base.elems if self.map[a] == a)


@dataclass(frozen=True)
class Conucleus:
    base: FinitePomonoid
    map: tuple[int, ...]
    name: str = "s"

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def open(self) -> tuple[int, ...]:
        return tuple(a for a in self.base.elems if self.map[a] == a)


def identity(A: FinitePomonoid) -> Nucleus:
    return Nucleus(A, tuple(A.elems), "id")


def _common_laws(A, f, increasing: bool) -> list[Violation]:
    le, m, E = A.le, A.mult, A.elems
    out = []
    if len(f) != A.n or any(not (0 <= v < A.n) for v in f):
        return [Violation("totality", tuple(f))]
    for a, b in itertools.product(E, E):
        if le[a][b] and not le[f[a]][f[b]]:
            out.append(Violation("monotone", (a, b)))
    for a in E:
        if increasing and not le[a][f[a]]:
            out.append(Violation("increasing", (a,)))
        if not increasing and not le[f[a]][a]:
            out.append(Violation("decreasing", (a,)))
        if f[f[a]] != f[a]:
            out.append(Violation("idempotent", (a,)))
    for a, b in itertools.product(E, E):
        if not le[m[f[a]][f[b]]][f[m[a][b]]]:
            out.append(Violation("multiplicative", (a, b)))
    return out


def validate_nucleus(g: Nucleus) -> ValidationReport:
    return ValidationReport(violations=_common_laws(g.base, g.map, True))


def validate_conucleus(s: Conucleus) -> ValidationReport:
    rep = ValidationReport(violations=_common_laws(s.base, s.map, False))
    A = s.base
    if A.unit is not None and len(s.map) == A.n and s.map[A.unit] != A.unit:
        rep.violations.append(Violation("unital", (A.unit,)))
    return rep


def is_unital(g: Nucleus) -> bool:
    u = g.base.unit
    return u is not None and g.map[u] == u


def _closure_systems(A: FinitePomonoid) -> Iterator[tuple[int, ...]]:
    """Maps a -> least element of C above a, for every subset C where that exists."""
    E = list(A.elems)
    for r in range(1, A.n + 1):
        for C in itertools.combinations(E, r):
            f = []
            for a in E:
                ups = [c for c in C if A.le[a][c]]
                least = [c for c in ups if all(A.le[c][d] for d in ups)]
                if not least:
                    break
                f.append(least[0])
            else:
                yield tuple(f)


def _interior_systems(A: FinitePomonoid) -> Iterator[tuple[int, ...]]:
    E = list(A.elems)
    for r in range(1, A.n + 1):
        for C in itertools.combinations(E, r):
            f = []
            for a in E:
                downs = [c for c in C if A.le[c][a]]
                great = [c for c in downs if all(A.le[d][c] for d in downs)]
                if not great:
                    break
                f.append(great[0])
            else:
                yield tuple(f)


def _sort_key(f):
    # identity first, then by number of closed points (descending), then lexicographically
    return (-sum(f[a] == a for a in range(len(f))), f)


def enumerate_nuclei(A: FinitePomonoid) -> list[Nucleus]:
    """All nuclei on A, obtained from closure systems filtered by multiplicativity."""
    if A.n > 6:
        raise ValueError("nucleus enumeration is capped at 6 elements")
    maps = sorted(
        (f for f in _closure_systems(A) if not _common_laws(A, f, True)), key=_sort_key
    )
    return [Nucleus(A, f, f"g{i}") for i, f in enumerate(maps)]


def enumerate_nuclei_naive(A: FinitePomonoid) -> list[Nucleus]:
    """Filter over all n**n self-maps; the oracle for small carriers."""
    maps = sorted(
        (f for f in itertools.product(A.elems, repeat=A.n) if not _common_laws(A, f, True)),
        key=_sort_key,
    )
    return [Nucleus(A, tuple(f), f"g{i}") for i, f in enumerate(maps)]


def enumerate_conuclei(A: FinitePomonoid) -> list[Conucleus]:
    out = []
    for f in sorted(_interior_systems(A), key=_sort_key):
        s = Conucleus(A, f)
        if validate_conucleus(s).ok:
            out.append(Conucleus(A, f, f"s{len(out)}"))
    return out


def _restrict(A: FinitePomonoid, keep: Sequence[int], mult, unit, join=None, name=None):
    """Subposet on ``keep`` (renumbered in increasing order) with the given operations."""
    idx = {a: i for i, a in enumerate(keep)}
    k = len(keep)
    le = tuple(tuple(A.le[a][b] for b in keep) for a in keep)
    mt = tuple(tuple(idx[mult(a, b)] for b in keep) for a in keep)
    jt = None
    if join is not None:
        jt = tuple(tuple(idx[join(a, b)] for b in keep) for a in keep)
    return FinitePomonoid(
        n=k, le=le, mult=mt, unit=None if unit is None else idx[unit], join=jt, name=name or A.name
    )


def nuclear_image(g: Nucleus) -> FinitePomonoid:
    """The closed elements with product g(ab), unit g(1) and join g(a v b).

    Residuals, when the base has them, are inherited and reattached.
    """
    A = g.base
    f = g.map
    keep = g.closed
    unit = None if A.unit is None else f[A.unit]
    join = None
    if A.join is not None:
        join = lambda a, b: f[A.join[a][b]]  # noqa: E731
    B = _restrict(A, keep, lambda a, b: f[A.mult[a][b]], unit, join, name=f"{A.name}_{g.name}")
    if B.join is None:
        B = with_joins(B)
    if A.ldiv is not None:
        B = with_residuals(B)
    return B


def image_embedding(g: Nucleus) -> dict[int, int]:
    """Base id -> image id for the closed elements."""
    return {a: i for i, a in enumerate(g.closed)}


def conuclear_image(s: Conucleus) -> FinitePomonoid:
    """The open elements with inherited product and order; meets are s(a ^ b)."""
    A = s.base
    keep = s.open
    B = _restrict(A, keep, lambda a, b: A.mult[a][b], A.unit, name=f"{A.name}_{s.name}")
    mt = meet_table(A)
    if mt is not None:
        idx = {a: i for i, a in enumerate(keep)}
        B = replace(B, meet=tuple(tuple(idx[s.map[mt[a][b]]] for b in keep) for a in keep))
    if join_table(B) is not None:
        B = with_joins(B)
    return B
