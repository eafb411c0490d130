"""Finitely generated downsets, stored as antichains of maximal generators.

Two kinds of carrier are supported: the elements of a finite pomonoid,
and canonical words of the unital free preimage (optionally
commutative) up to a length budget.  ``IdAlgebra`` wraps a carrier and
provides join (union), product, meet, the lifted nucleus and residuals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Optional, Sequence

from .algebra import (
    FinitePomonoid,
    NotIdeallyResiduated,
    ideal_residuals,
    is_down_directed,
    is_integral,
)
from .words import (
    BudgetExceeded,
    FreePreimage,
    Variant,
    format_word,
    max_solutions,
    multisets_upto,
    parse_word,
)


class NotDownDirected(ValueError):
    pass


@dataclass(frozen=True)
class Antichain:
    gens: tuple

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


def _elem_key(x):
    return (len(x), x) if isinstance(x, tuple) else (0, x)


# ---------------------------------------------------------------- carriers

class FiniteCarrier:
    """The elements of a finite pomonoid."""

    words = False

    def __init__(self, A: FinitePomonoid):
        self.A = A

    def le(self, x, y) -> bool:
        return self.A.le[x][y]

    def mult(self, x, y):
        return self.A.mult[x][y]

    @property
    def unit(self):
        return self.A.unit

    def canonical(self, x):
        return x

    def elements(self):
        return list(self.A.elems)

    def fmt(self, x) -> str:
        return str(x)


class WordCarrier:
    """Canonical words of the unital free preimage with a length budget."""

    words = True

    def __init__(self, A: FinitePomonoid, L: int, commutative: bool = False):
        self.A = A
        self.L = L
        self.fp = FreePreimage(A, Variant("umon", commutative))

    def le(self, x, y) -> bool:
        return self.fp.le(x, y)

    def canonical(self, x):
        return self.fp.canonical(x)

    def mult(self, x, y):
        w = self.fp.canonical(self.fp.compose(x, y))
        if len(w) > self.L:
            raise BudgetExceeded(f"{format_word(x)} o {format_word(y)} exceeds length {self.L}")
        return w

    @property
    def unit(self):
        return self.fp.unit_word

    def elements(self, max_len: Optional[int] = None):
        k = self.L if max_len is None else max_len
        seen = {self.fp.canonical(w): None for w in self.fp.all_words(k)}
        return sorted(seen, key=_elem_key)

    def fmt(self, x) -> str:
        return format_word(x)


# ---------------------------------------------------------------- Id algebra

class IdAlgebra:
    """Non-empty finitely generated downsets of a carrier."""

    def __init__(self, carrier, nucleus: Optional[Sequence[int]] = None):
        self.c = carrier
        self.nucleus = nucleus
        self._mult_cache: dict = {}
        self._meet_cache: dict = {}

    # -- construction

    def normalize(self, gens: Iterable[Hashable]) -> Antichain:
        c = self.c
        xs = sorted({c.canonical(x) for x in gens}, key=_elem_key)
        if not xs:
            raise ValueError("downsets in Id are non-empty")
        keep = [x for x in xs if not any(y != x and c.le(x, y) for y in xs)]
        return Antichain(tuple(keep))

    def down(self, x) -> Antichain:
        return Antichain((self.c.canonical(x),))

    @property
    def one(self) -> Antichain:
        return self.down(self.c.unit)

    def all_antichains(self, max_gens: Optional[int] = None, max_len: Optional[int] = None) -> list[Antichain]:
        if self.c.words:
            elems = self.c.elements(max_len)
        else:
            elems = self.c.elements()
        k = len(elems) if max_gens is None else max_gens
        out = []
        for r in range(1, k + 1):
            for combo in itertools.combinations(elems, r):
                if all(not self.c.le(x, y) and not self.c.le(y, x) for x, y in itertools.combinations(combo, 2)):
                    out.append(Antichain(tuple(sorted(combo, key=_elem_key))))
        return out

    # -- lattice and monoid operations

    def le(self, X: Antichain, Y: Antichain) -> bool:
        return all(any(self.c.le(x, y) for y in Y) for x in X)

    def eq(self, X: Antichain, Y: Antichain) -> bool:
        return self.le(X, Y) and self.le(Y, X)

    def join(self, X: Antichain, Y: Antichain) -> Antichain:
        return self.normalize(list(X) + list(Y))

    def mult(self, X: Antichain, Y: Antichain) -> Antichain:
        key = (X, Y)
        hit = self._mult_cache.get(key)
        if hit is None:
            hit = self.normalize(self.c.mult(x, y) for x in X for y in Y)
            self._mult_cache[key] = hit
        return hit

    def meet(self, X: Antichain, Y: Antichain) -> Antichain:
        key = (X, Y)
        hit = self._meet_cache.get(key)
        if hit is None:
            if self.le(X, Y):
                hit = X
            elif self.le(Y, X):
                hit = Y
            else:
                gens = []
                for x in X:
                    for y in Y:
                        gens.extend(self._meet_gens(x, y))
                if not gens:
                    raise NotDownDirected(f"{self.fmt(X)} and {self.fmt(Y)} have no common lower bound")
                hit = self.normalize(gens)
            self._meet_cache[key] = hit
        return hit

    def _meet_gens(self, x, y) -> list:
        c = self.c
        if not c.words:
            lower = [z for z in c.elements() if c.le(z, x) and c.le(z, y)]
            return [z for z in lower if not any(w != z and c.le(z, w) for w in lower)]
        if not is_down_directed(c.A):
            raise NotDownDirected(f"base {c.A.name} is not down-directed")
        return word_meet(c, x, y)

    # -- nucleus and residuals

    def gamma(self, X: Antichain) -> Antichain:
        """The lifted nucleus: down of the (closed) join of the closed generators."""
        A = self.c.A
        if A.join is None:
            raise ValueError("the lifted nucleus needs a base with joins")
        if self.c.words:
            vals = [self.c.fp.gamma(x) for x in X]
            g = lambda a: a  # noqa: E731
        else:
            g = (lambda a: a) if self.nucleus is None else (lambda a: self.nucleus[a])
            vals = [g(x) for x in X]
        acc = vals[0]
        for v in vals[1:]:
            acc = g(A.join[acc][v])
        acc = g(acc)
        return self.down((acc,) if self.c.words else acc)

    def residual(self, X: Antichain, Y: Antichain, side: str = "left") -> Antichain:
        """Largest Z with X*Z <= Y (left) or Z*X <= Y (right)."""
        parts = [self._residual_gen(x, Y, side) for x in X]
        acc = parts[0]
        for p in parts[1:]:
            acc = self.meet(acc, p)
        return acc

    def _residual_gen(self, x, Y: Antichain, side: str) -> Antichain:
        c = self.c
        gens = []
        for z in Y:
            if not c.words:
                gens.extend(ideal_residuals(c.A, x, z, side))
            else:
                left, right = (x, ()) if side == "left" else ((), x)
                sols = max_solutions(c.fp, left, right, z)
                if not sols:
                    continue
                gens.extend(sols)
        if not gens:
            raise NotIdeallyResiduated(f"no solutions below {self.fmt(Y)}")
        return self.normalize(gens)

    def fmt(self, X: Antichain) -> str:
        return "{" + ",".join(self.c.fmt(x) for x in X) + "}"

    # -- the algebra as a finite pomonoid (finite carriers only)

    @cached_property
    def as_pomonoid(self) -> tuple[FinitePomonoid, list[Antichain]]:
        from .algebra import make_algebra

        if self.c.words:
            raise ValueError("only finite carriers give a finite Id algebra")
        elems = self.all_antichains()
        idx = {X: i for i, X in enumerate(elems)}
        n = len(elems)
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j and self.le(elems[i], elems[j])]
        mult = [[idx[self.mult(X, Y)] for Y in elems] for X in elems]
        join = [[idx[self.join(X, Y)] for Y in elems] for X in elems]
        unit = None if self.c.unit is None else idx[self.one]
        B = make_algebra(n, pairs, mult, unit, join, name=f"Id({self.c.A.name})")
        return B, elems


def word_meet(c: WordCarrier, x, y) -> list:
    """Maximal common lower bounds of two words, searched up to the refinement bound.

    Any common lower bound lies below the block evaluation of a common
    refinement, which has at most |x|+|y|-1 pieces (|x|*|y| when commutative).
    """
    fp = c.fp
    A = c.A
    m, n = len(x), len(y)
    bound = m * n if fp.variant.commutative else m + n - 1
    if bound > c.L:
        raise BudgetExceeded(f"meet of {format_word(x)} and {format_word(y)} needs length {bound} > {c.L}")
    integral = is_integral(A)
    alphabet = [a for a in A.elems if not (integral and a == A.unit)]
    if fp.variant.commutative:
        cands = multisets_upto(alphabet, bound, 1)
    else:
        cands = _lower_bound_words(A, x, y, alphabet, bound)
    lower = {fp.canonical(t) for t in cands if fp.le(t, x) and fp.le(t, y)}
    if integral:
        if fp.le(fp.unit_word, x) and fp.le(fp.unit_word, y):
            lower.add(fp.unit_word)
        return sorted((t for t in lower if _locally_maximal(c, t, x, y)), key=_elem_key)
    lower = sorted(lower, key=_elem_key)
    return [t for t in lower if not any(s != t and fp.le(t, s) for s in lower)]


def _lower_bound_words(A: FinitePomonoid, x, y, alphabet, bound):
    """Words up to ``bound`` all of whose prefixes can still start a split below x and y."""
    le, m = A.le, A.mult
    one = A.unit

    def step(states, c, target):
        out = set()
        k = len(target)
        for i, p in states:
            out.add((i, c if p is None else m[p][c]))
            # close the current block, skip empty ones, open a new block with c
            if p is None:
                if not le[one][target[i]]:
                    continue
            elif not le[p][target[i]]:
                continue
            j = i + 1
            while j < k:
                out.add((j, c))
                if not le[one][target[j]]:
                    break
                j += 1
        return frozenset(s for s in out if s[0] < k)

    def accepts(states, target):
        k = len(target)
        for i, p in states:
            ok = le[one][target[i]] if p is None else le[p][target[i]]
            if ok and all(le[one][target[j]] for j in range(i + 1, k)):
                return True
        return False

    def dfs(prefix, sx, sy):
        if prefix and accepts(sx, x) and accepts(sy, y):
            yield tuple(prefix)
        if len(prefix) == bound:
            return
        for c in alphabet:
            nx, ny = step(sx, c, x), step(sy, c, y)
            if nx and ny:
                prefix.append(c)
                yield from dfs(prefix, nx, ny)
                prefix.pop()

    yield from dfs([], frozenset({(0, None)}), frozenset({(0, None)}))


def _locally_maximal(c: WordCarrier, t, x, y) -> bool:
    """No single merge or cover-raise of t stays below both x and y (integral bases)."""
    fp, A = c.fp, c.A
    if t == fp.unit_word:
        return True

    def ok(w):
        w = fp.canonical(w)
        return w != t and fp.le(w, x) and fp.le(w, y)

    k = len(t)
    pairs = itertools.combinations(range(k), 2) if fp.variant.commutative else ((i, i + 1) for i in range(k - 1))
    for i, j in pairs:
        merged = list(t)
        merged[i] = A.mult[t[i]][t[j]]
        del merged[j]
        if ok(merged):
            return False
    for i in range(k):
        for cover in _covers(A, t[i]):
            raised = list(t)
            raised[i] = cover
            if ok(raised):
                return False
    return True


def _covers(A: FinitePomonoid, a: int) -> list[int]:
    ups = [b for b in A.elems if b != a and A.le[a][b]]
    return [b for b in ups if not any(c != b and A.le[c][b] for c in ups)]


# ---------------------------------------------------------------- literals

def parse_antichain(text: str) -> list:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"bad antichain literal {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ValueError("antichains are non-empty")
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    items = [s.strip() for s in out]
    if all(s.lstrip("-").isdigit() for s in items):
        return [int(s) for s in items]
    return [parse_word(s) for s in items]


# ---------------------------------------------------------------- checks

def down_oracle(A: FinitePomonoid, X: Antichain) -> frozenset:
    """The explicit downset generated by X (finite carriers)."""
    return frozenset(z for z in A.elems if any(A.le[z][x] for x in X))


def check_distributive_semilattice(idl: IdAlgebra, max_gens=None, max_len=None):
    """If a <= b v c then a <= b, a <= c, or a = b' v c' with b' <= b, c' <= c.

    Returns a triple (a, b, c) violating this, or None.
    """
    elems = idl.all_antichains(max_gens, max_len)
    for a, b, c in itertools.product(elems, repeat=3):
        if not idl.le(a, idl.join(b, c)):
            continue
        if idl.le(a, b) or idl.le(a, c):
            continue
        below_b = [x for x in elems if idl.le(x, b) and idl.le(x, a)]
        below_c = [x for x in elems if idl.le(x, c) and idl.le(x, a)]
        if not any(idl.eq(a, idl.join(p, q)) for p in below_b for q in below_c):
            return (a, b, c)
    return None


def check_meet_distribution(A: FinitePomonoid, L: int):
    """x(y ^ z) = xy ^ xz and (x ^ y)z = xz ^ yz in Id of the unital free preimage.

    Generators range over canonical words of length <= L // 2 and
    antichains have at most two generators.  Intermediate meets need
    words up to length 2L - 1, which is the working budget.
    Returns (side, x, y, z) or None.
    """
    if not is_integral(A):
        raise ValueError("meet distribution is asserted for integral bases")
    idl = IdAlgebra(WordCarrier(A, 2 * L - 1))
    elems = idl.all_antichains(max_gens=2, max_len=L // 2)
    for x, y, z in itertools.product(elems, repeat=3):
        lhs = idl.mult(x, idl.meet(y, z))
        rhs = idl.meet(idl.mult(x, y), idl.mult(x, z))
        if not idl.eq(lhs, rhs):
            return ("left", x, y, z)
        lhs = idl.mult(idl.meet(x, y), z)
        rhs = idl.meet(idl.mult(x, z), idl.mult(y, z))
        if not idl.eq(lhs, rhs):
            return ("right", x, y, z)
    return None


def ideal_residual_join(A: FinitePomonoid, a: int, c: int, side: str) -> Optional[int]:
    """Join of the ideal residual antichain (sl-monoids); None if A has no joins."""
    if A.join is None:
        return None
    gens = ideal_residuals(A, a, c, side)
    acc = gens[0]
    for g in gens[1:]:
        acc = A.join[acc][g]
    return acc
