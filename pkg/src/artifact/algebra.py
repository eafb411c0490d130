"""Finite partially ordered monoids and semigroups.

Elements are the integers ``0..n-1`` and every operation is a table, so
all structural questions reduce to exhaustive scans.  An algebra carries
its order, multiplication, an optional unit and an optional join table;
meets and residuals are derived on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence

Table = tuple[tuple[int, ...], ...]
Relation = tuple[tuple[bool, ...], ...]

STRUCTURES = ("posemigroup", "pomonoid", "slmonoid", "residuated")


class MalformedAlgebra(ValueError):
    """Raised when tables have the wrong shape or a file cannot be parsed."""


class NotIdeallyResiduated(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraKind:
    structure: str = "pomonoid"
    commutative: bool = False

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}")


@dataclass(frozen=True)
class FinitePomonoid:
    n: int
    le: Relation
    mult: Table
    unit: Optional[int] = None
    join: Optional[Table] = None
    meet: Optional[Table] = None
    ldiv: Optional[Table] = None  # ldiv[a][c] = a\c
    rdiv: Optional[Table] = None  # rdiv[c][a] = c/a
    name: str = "M"

    @property
    def elems(self) -> range:
        return range(self.n)

    def leq(self, a: int, b: int) -> bool:
        return self.le[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def product(self, letters: Sequence[int]) -> int:
        if not letters:
            if self.unit is None:
                raise ValueError("empty product in a semigroup")
            return self.unit
        acc = letters[0]
        for x in letters[1:]:
            acc = self.mult[acc][x]
        return acc

    @property
    def kind(self) -> AlgebraKind:
        if self.unit is None:
            structure = "posemigroup"
        elif self.ldiv is not None and self.rdiv is not None:
            structure = "residuated"
        elif self.join is not None:
            structure = "slmonoid"
        else:
            structure = "pomonoid"
        return AlgebraKind(structure, is_commutative(self))


@dataclass
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} at {self.witness}"


@dataclass
class ValidationReport:
    structural: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def lines(self) -> list[str]:
        return [f"structural: {s}" for s in self.structural] + [str(v) for v in self.violations]


def make_algebra(n, le_pairs, mult, unit=None, join=None, name="M") -> FinitePomonoid:
    """Build an algebra from a list of strict order pairs and a nested mult list.

    The order is closed reflexively (not transitively); validate() reports
    anything else that is missing.
    """
    le = [[i == j for j in range(n)] for i in range(n)]
    for i, j in le_pairs:
        le[i][j] = True
    return FinitePomonoid(
        n=n,
        le=tuple(tuple(r) for r in le),
        mult=tuple(tuple(r) for r in mult),
        unit=unit,
        join=None if join is None else tuple(tuple(r) for r in join),
        name=name,
    )


def chain(n: int, unit: Optional[int] = None, mult=None, name=None) -> FinitePomonoid:
    """The chain 0 < 1 < ... < n-1; mult defaults to min, unit to the top."""
    if unit is None:
        unit = n - 1
    if mult is None:
        mult = [[min(a, b) for b in range(n)] for a in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    return with_joins(make_algebra(n, pairs, mult, unit, name=name or f"C{n}"))


# ---------------------------------------------------------------- validation

def _shape_errors(A: FinitePomonoid) -> list[str]:
    errs = []
    n = A.n

    def square(tab, what, values):
        if len(tab) != n or any(len(r) != n for r in tab):
            errs.append(f"{what} is not {n}x{n}")
            return
        if values and any(not (0 <= x < n) for r in tab for x in r):
            errs.append(f"{what} has entries outside 0..{n - 1}")

    if n < 1:
        errs.append("empty carrier")
        return errs
    square(A.le, "le", False)
    square(A.mult, "mult", True)
    for name in ("join", "meet", "ldiv", "rdiv"):
        tab = getattr(A, name)
        if tab is not None:
            square(tab, name, True)
    if A.unit is not None and not (0 <= A.unit < n):
        errs.append(f"unit {A.unit} outside carrier")
    return errs


def validate(A: FinitePomonoid, kind: Optional[AlgebraKind] = None) -> ValidationReport:
    """Check every axiom of ``kind`` (default: the algebra's own kind)."""
    rep = ValidationReport(structural=_shape_errors(A))
    if rep.structural:
        return rep
    kind = kind or A.kind
    n, le, m = A.n, A.le, A.mult
    out = rep.violations
    E = range(n)

    for a in E:
        if not le[a][a]:
            out.append(Violation("reflexivity", (a,)))
    for a, b in itertools.product(E, E):
        if a != b and le[a][b] and le[b][a]:
            if a < b:
                out.append(Violation("antisymmetry", (a, b)))
    for a, b, c in itertools.product(E, E, E):
        if le[a][b] and le[b][c] and not le[a][c]:
            out.append(Violation("transitivity", (a, b, c)))
    for a, b, c in itertools.product(E, E, E):
        if m[m[a][b]][c] != m[a][m[b][c]]:
            out.append(Violation("associativity", (a, b, c)))
    for a, b, c in itertools.product(E, E, E):
        if le[a][b]:
            if not le[m[a][c]][m[b][c]]:
                out.append(Violation("isotone-left", (a, b, c)))
            if not le[m[c][a]][m[c][b]]:
                out.append(Violation("isotone-right", (a, b, c)))

    if kind.structure != "posemigroup":
        if A.unit is None:
            rep.structural.append("kind requires a unit")
        else:
            u = A.unit
            for a in E:
                if m[u][a] != a or m[a][u] != a:
                    out.append(Violation("unit", (a,)))
    if kind.commutative:
        for a, b in itertools.product(E, E):
            if a < b and m[a][b] != m[b][a]:
                out.append(Violation("commutativity", (a, b)))

    if kind.structure in ("slmonoid", "residuated") or A.join is not None:
        if A.join is None:
            rep.structural.append("kind requires a join table")
        else:
            j = A.join
            for a, b in itertools.product(E, E):
                c = j[a][b]
                if not (le[a][c] and le[b][c]):
                    out.append(Violation("join-upper-bound", (a, b)))
                    continue
                for d in E:
                    if le[a][d] and le[b][d] and not le[c][d]:
                        out.append(Violation("join-least", (a, b, d)))
                        break
            for a, b, c in itertools.product(E, E, E):
                if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                    out.append(Violation("distributive-left", (a, b, c)))
                if m[j[b][c]][a] != j[m[b][a]][m[c][a]]:
                    out.append(Violation("distributive-right", (a, b, c)))

    if A.meet is not None:
        mt = A.meet
        for a, b in itertools.product(E, E):
            c = mt[a][b]
            if not (le[c][a] and le[c][b]) or any(
                le[d][a] and le[d][b] and not le[d][c] for d in E
            ):
                out.append(Violation("meet", (a, b)))

    if kind.structure == "residuated":
        if A.ldiv is None or A.rdiv is None:
            rep.structural.append("kind requires residual tables")
        else:
            for a, b, c in itertools.product(E, E, E):
                left = le[b][A.ldiv[a][c]]
                mid = le[m[a][b]][c]
                right = le[a][A.rdiv[c][b]]
                if not (left == mid == right):
                    out.append(Violation("residuation", (a, b, c)))
    return rep


# ---------------------------------------------------------------- predicates

def is_commutative(A: FinitePomonoid) -> bool:
    return all(A.mult[a][b] == A.mult[b][a] for a in A.elems for b in A.elems)


def top(A: FinitePomonoid) -> Optional[int]:
    for t in A.elems:
        if all(A.le[a][t] for a in A.elems):
            return t
    return None


def bottom(A: FinitePomonoid) -> Optional[int]:
    for b in A.elems:
        if all(A.le[b][a] for a in A.elems):
            return b
    return None


def is_integral(A: FinitePomonoid) -> bool:
    return A.unit is not None and all(A.le[a][A.unit] for a in A.elems)


def is_trivial(A: FinitePomonoid) -> bool:
    return A.n == 1


def is_integrally_closed(A: FinitePomonoid) -> bool:
    """a*x <= a implies x <= 1, and x*a <= a implies x <= 1.

    Without a unit the posemigroup form is used: a*x <= a implies
    x*b <= b and b*x <= b for every b (and dually).
    """
    return integrally_closed_witness(A) is None


def integrally_closed_witness(A: FinitePomonoid) -> Optional[tuple[str, int, int]]:
    """Return (side, a, x) with a*x <= a (side 'left') or x*a <= a but x not 'below 1'."""
    le, m, E = A.le, A.mult, A.elems

    def below_one(x):
        if A.unit is not None:
            return le[x][A.unit]
        return all(le[m[x][b]][b] and le[m[b][x]][b] for b in E)

    for a in E:
        for x in E:
            if le[m[a][x]][a] and not below_one(x):
                return ("left", a, x)
            if le[m[x][a]][a] and not below_one(x):
                return ("right", a, x)
    return None


def cancellativity_witness(A: FinitePomonoid) -> Optional[tuple[str, int, int, int]]:
    """A triple violating order cancellation, e.g. ('right', a, b, x) with a*x <= b*x, a not <= b."""
    le, m, E = A.le, A.mult, A.elems
    for a, b, x in itertools.product(E, E, E):
        if le[a][b]:
            continue
        if le[m[a][x]][m[b][x]]:
            return ("right", a, b, x)
        if le[m[x][a]][m[x][b]]:
            return ("left", a, b, x)
    return None


def is_cancellative(A: FinitePomonoid) -> bool:
    return cancellativity_witness(A) is None


def is_equationally_cancellative(A: FinitePomonoid) -> bool:
    m, E = A.mult, A.elems
    for a, b, x in itertools.product(E, E, E):
        if a != b and (m[a][x] == m[b][x] or m[x][a] == m[x][b]):
            return False
    return True


def solution_set(A: FinitePomonoid, a: int, c: int, side: str) -> list[int]:
    """{x : a*x <= c} for side 'left', {x : x*a <= c} for side 'right'."""
    m, le = A.mult, A.le
    if side == "left":
        return [x for x in A.elems if le[m[a][x]][c]]
    if side == "right":
        return [x for x in A.elems if le[m[x][a]][c]]
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def maximal(A: FinitePomonoid, xs: Sequence[int]) -> tuple[int, ...]:
    xs = sorted(set(xs))
    return tuple(x for x in xs if not any(y != x and A.le[x][y] for y in xs))


def minimal(A: FinitePomonoid, xs: Sequence[int]) -> tuple[int, ...]:
    xs = sorted(set(xs))
    return tuple(x for x in xs if not any(y != x and A.le[y][x] for y in xs))


def is_ideally_residuated(A: FinitePomonoid) -> bool:
    return all(
        solution_set(A, a, c, side)
        for a in A.elems
        for c in A.elems
        for side in ("left", "right")
    )


def ideal_residuals(A: FinitePomonoid, a: int, c: int, side: str = "left") -> tuple[int, ...]:
    """Maximal solutions of a*x <= c (left) or x*a <= c (right), as a sorted tuple."""
    sols = solution_set(A, a, c, side)
    if not sols:
        raise NotIdeallyResiduated(f"no x with {'a*x' if side == 'left' else 'x*a'} <= c for a={a}, c={c}")
    return maximal(A, sols)


def residual_tables(A: FinitePomonoid) -> Optional[tuple[Table, Table]]:
    """(ldiv, rdiv) if every solution set has a greatest element, else None."""
    n = A.n
    ldiv = [[0] * n for _ in range(n)]
    rdiv = [[0] * n for _ in range(n)]
    for a in A.elems:
        for c in A.elems:
            left = maximal(A, solution_set(A, a, c, "left"))
            right = maximal(A, solution_set(A, a, c, "right"))
            if len(left) != 1 or len(right) != 1:
                return None
            ldiv[a][c] = left[0]
            rdiv[c][a] = right[0]
    return tuple(map(tuple, ldiv)), tuple(map(tuple, rdiv))


def is_residuated(A: FinitePomonoid) -> bool:
    return residual_tables(A) is not None


def join_table(A: FinitePomonoid) -> Optional[Table]:
    """Least upper bounds for all pairs, or None if the order is not a join-semilattice."""
    rows = []
    for a in A.elems:
        row = []
        for b in A.elems:
            ubs = [c for c in A.elems if A.le[a][c] and A.le[b][c]]
            least = [c for c in ubs if all(A.le[c][d] for d in ubs)]
            if not least:
                return None
            row.append(least[0])
        rows.append(tuple(row))
    return tuple(rows)


def meet_table(A: FinitePomonoid) -> Optional[Table]:
    rows = []
    for a in A.elems:
        row = []
        for b in A.elems:
            lbs = [c for c in A.elems if A.le[c][a] and A.le[c][b]]
            great = [c for c in lbs if all(A.le[d][c] for d in lbs)]
            if not great:
                return None
            row.append(great[0])
        rows.append(tuple(row))
    return tuple(rows)


def is_down_directed(A: FinitePomonoid) -> bool:
    return all(
        any(A.le[c][a] and A.le[c][b] for c in A.elems) for a in A.elems for b in A.elems
    )


def with_joins(A: FinitePomonoid) -> FinitePomonoid:
    """Attach the join table if the order is a semilattice and mult distributes over it."""
    j = join_table(A)
    if j is None:
        return A
    cand = replace(A, join=j)
    rep = validate(cand, AlgebraKind("slmonoid" if A.unit is not None else "posemigroup"))
    if any(v.axiom.startswith("distributive") for v in rep.violations):
        return A
    return cand


def is_sl(A: FinitePomonoid) -> bool:
    return A.join is not None


def with_residuals(A: FinitePomonoid) -> FinitePomonoid:
    """Attach residual and meet tables when they exist."""
    res = residual_tables(A)
    if res is None:
        return A
    return replace(A, ldiv=res[0], rdiv=res[1], meet=meet_table(A))


# ---------------------------------------------------------------- isomorphism

def _relabel(A: FinitePomonoid, p: Sequence[int]) -> tuple:
    """Tables of A transported along the bijection old -> p[old], as a comparable key."""
    n = A.n
    inv = [0] * n
    for old, new in enumerate(p):
        inv[new] = old
    le = tuple(A.le[inv[i]][inv[j]] for i in range(n) for j in range(n))
    mult = tuple(p[A.mult[inv[i]][inv[j]]] for i in range(n) for j in range(n))
    unit = -1 if A.unit is None else p[A.unit]
    return (unit, le, mult)


def _perms(A: FinitePomonoid):
    # the unit, if any, is mapped to 0 so keys are comparable across algebras
    if A.unit is None:
        yield from itertools.permutations(range(A.n))
        return
    others = [x for x in A.elems if x != A.unit]
    for q in itertools.permutations(range(1, A.n)):
        p = [0] * A.n
        p[A.unit] = 0
        for old, new in zip(others, q):
            p[old] = new
        yield tuple(p)


def canonical_key(A: FinitePomonoid) -> tuple:
    return min(_relabel(A, p) for p in _perms(A))


def are_isomorphic(A: FinitePomonoid, B: FinitePomonoid, kind=None) -> Optional[tuple[int, ...]]:
    """A bijection f (as a tuple, f[a] in B) preserving order, mult and unit, or None.

    Joins, meets and residuals are determined by the order, so they are
    preserved automatically once the order is.
    """
    if A.n != B.n or (A.unit is None) != (B.unit is None):
        return None
    for p in itertools.permutations(range(A.n)):
        if A.unit is not None and p[A.unit] != B.unit:
            continue
        if all(
            A.le[a][b] == B.le[p[a]][p[b]] and p[A.mult[a][b]] == B.mult[p[a]][p[b]]
            for a in A.elems
            for b in A.elems
        ):
            return p
    return None


def relabel(A: FinitePomonoid, p: Sequence[int], name=None) -> FinitePomonoid:
    """The isomorphic copy of A with element a renamed to p[a]."""
    n = A.n
    inv = [0] * n
    for old, new in enumerate(p):
        inv[new] = old

    def tab(t):
        if t is None:
            return None
        return tuple(tuple(p[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))

    return FinitePomonoid(
        n=n,
        le=tuple(tuple(A.le[inv[i]][inv[j]] for j in range(n)) for i in range(n)),
        mult=tab(A.mult),
        unit=None if A.unit is None else p[A.unit],
        join=tab(A.join),
        meet=tab(A.meet),
        ldiv=tab(A.ldiv),
        rdiv=tab(A.rdiv),
        name=name or A.name,
    )


# ---------------------------------------------------------------- enumeration

def _posets(n: int) -> list[Relation]:
    """All labelled partial orders on n points."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            le[i][j] = b
        ok = all(
            not (le[i][j] and le[j][i]) for i, j in pairs
        ) and all(
            le[i][k] or not (le[i][j] and le[j][k])
            for i in range(n) for j in range(n) for k in range(n)
        )
        if ok:
            out.append(tuple(map(tuple, le)))
    return out


def _semigroup_tables(n: int, with_unit: bool) -> Iterator[Table]:
    """Associative tables on 0..n-1; with_unit fixes 0 as the identity."""
    E = range(n)
    if with_unit:
        free = [(i, j) for i in range(1, n) for j in range(1, n)]
    else:
        free = [(i, j) for i in E for j in E]
    for vals in itertools.product(E, repeat=len(free)):
        t = [[0] * n for _ in E]
        if with_unit:
            for x in E:
                t[0][x] = x
                t[x][0] = x
        for (i, j), v in zip(free, vals):
            t[i][j] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a in E for b in E for c in E):
            yield tuple(map(tuple, t))


def _isotone(le: Relation, t: Table, n: int) -> bool:
    for a in range(n):
        for b in range(n):
            if a != b and le[a][b]:
                for c in range(n):
                    if not le[t[a][c]][t[b][c]] or not le[t[c][a]][t[c][b]]:
                        return False
    return True


def enumerate_pomonoids(n_max: int, kind: Optional[AlgebraKind] = None, commutative: bool = False) -> list[FinitePomonoid]:
    """Every algebra with at most n_max elements, one per isomorphism class.

    ``kind.structure`` selects posemigroups, pomonoids or sl-monoids
    (the last being the pomonoids whose order is a join-semilattice over
    which multiplication distributes).  Monoids have unit 0.  Output is
    sorted by size and then by canonical key, so it is deterministic.
    """
    if n_max > 4:
        raise ValueError("enumeration is capped at 4 elements")
    kind = kind or AlgebraKind("pomonoid", commutative)
    commutative = commutative or kind.commutative
    structure = kind.structure
    with_unit = structure != "posemigroup"
    out = []
    for n in range(1, n_max + 1):
        seen = {}
        posets = _posets(n)
        for t in _semigroup_tables(n, with_unit):
            if commutative and any(t[a][b] != t[b][a] for a in range(n) for b in range(n)):
                continue
            for le in posets:
                if not _isotone(le, t, n):
                    continue
                A = FinitePomonoid(n=n, le=le, mult=t, unit=0 if with_unit else None)
                key = canonical_key(A)
                if key not in seen:
                    seen[key] = A
        for key in sorted(seen):
            A = _from_key(n, key)
            if structure in ("slmonoid", "residuated"):
                A = with_joins(A)
                if A.join is None:
                    continue
                if structure == "residuated":
                    A = with_residuals(A)
                    if A.ldiv is None:
                        continue
            else:
                A = with_joins(A)
            out.append(A)
    for i, A in enumerate(out):
        out[i] = replace(A, name=f"{'S' if not with_unit else 'M'}{A.n}_{i}")
    return out


def _from_key(n: int, key: tuple) -> FinitePomonoid:
    unit, le, mult = key
    return FinitePomonoid(
        n=n,
        le=tuple(tuple(le[i * n + j] for j in range(n)) for i in range(n)),
        mult=tuple(tuple(mult[i * n + j] for j in range(n)) for i in range(n)),
        unit=None if unit < 0 else unit,
    )


# ---------------------------------------------------------------- text format

def dumps(A: FinitePomonoid) -> str:
    if A.unit is None:
        header = "posemigroup"
    elif A.join is not None:
        header = "slmonoid"
    else:
        header = "pomonoid"
    lines = [f"{header} {A.name}", f"elements {A.n}"]
    if A.unit is not None:
        lines.append(f"unit {A.unit}")
    for i in A.elems:
        for j in A.elems:
            if i != j and A.le[i][j]:
                lines.append(f"le {i} {j}")
    for i in A.elems:
        for j in A.elems:
            lines.append(f"mult {i} {j} {A.mult[i][j]}")
    if A.join is not None:
        for i in A.elems:
            for j in A.elems:
                lines.append(f"join {i} {j} {A.join[i][j]}")
    return "\n".join(lines) + "\n"


def loads(text: str):
    """Parse an algebra file; returns (algebra, [(nucleus_name, map_tuple), ...])."""
    header = name = None
    n = unit = None
    le_pairs, mult, join = [], {}, {}
    nuclei: list[tuple[str, dict]] = []

    def ints(parts, k, lineno):
        if len(parts) != k:
            raise MalformedAlgebra(f"line {lineno}: expected {k} numbers")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise MalformedAlgebra(f"line {lineno}: non-integer argument") from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        if word in ("pomonoid", "slmonoid", "posemigroup"):
            if header is not None:
                raise MalformedAlgebra(f"line {lineno}: second algebra header")
            header = word
            name = rest[0] if rest else "M"
        elif word == "elements":
            (n,) = ints(rest, 1, lineno)
        elif word == "unit":
            (unit,) = ints(rest, 1, lineno)
        elif word == "le":
            le_pairs.append(tuple(ints(rest, 2, lineno)))
        elif word == "mult":
            i, j, k = ints(rest, 3, lineno)
            mult[i, j] = k
        elif word == "join":
            i, j, k = ints(rest, 3, lineno)
            join[i, j] = k
        elif word == "nucleus":
            nuclei.append((rest[0] if rest else f"g{len(nuclei)}", {}))
        elif word == "map":
            if not nuclei:
                raise MalformedAlgebra(f"line {lineno}: map before nucleus header")
            i, j = ints(rest, 2, lineno)
            nuclei[-1][1][i] = j
        else:
            raise MalformedAlgebra(f"line {lineno}: unknown directive {word!r}")

    if header is None or n is None:
        raise MalformedAlgebra("missing header or elements line")
    if header == "posemigroup" and unit is not None:
        raise MalformedAlgebra("posemigroup with a unit")
    if header != "posemigroup" and unit is None:
        raise MalformedAlgebra(f"{header} without a unit")
    cells = [(i, j) for i in range(n) for j in range(n)]
    if sorted(mult) != cells:
        raise MalformedAlgebra("mult must list every pair exactly once")
    if join and sorted(join) != cells:
        raise MalformedAlgebra("join must list every pair if present")
    if header == "slmonoid" and not join:
        raise MalformedAlgebra("slmonoid without join table")
    for i, j in le_pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise MalformedAlgebra(f"le {i} {j} outside carrier")
    A = make_algebra(
        n,
        le_pairs,
        [[mult[i, j] for j in range(n)] for i in range(n)],
        unit,
        [[join[i, j] for j in range(n)] for i in range(n)] if join else None,
        name=name,
    )
    rep = ValidationReport(structural=_shape_errors(A))
    if rep.structural:
        raise MalformedAlgebra("; ".join(rep.structural))
    maps = []
    for nm, mp in nuclei:
        if sorted(mp) != list(range(n)) or any(not (0 <= v < n) for v in mp.values()):
            raise MalformedAlgebra(f"nucleus {nm} must map every element into the carrier")
        maps.append((nm, tuple(mp[i] for i in range(n))))
    return A, maps


def load(path) -> tuple[FinitePomonoid, list]:
    with open(path) as fh:
        return loads(fh.read())


def dump_nucleus(name: str, table: Sequence[int]) -> str:
    return f"nucleus {name}\n" + "".join(f"map {i} {j}\n" for i, j in enumerate(table))
