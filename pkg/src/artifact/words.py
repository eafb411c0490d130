"""Free nuclear preimages of a finite pomonoid: words under the block preorder.

A word is a tuple of element ids.  ``u <= v`` (written ``le``) holds when
``u`` splits into ``len(v)`` consecutive blocks whose products lie below
the corresponding letters of ``v``.  Monoid variants allow empty blocks
(their product is the unit), the semigroup variant does not, and the
commutative variants split multisets instead of sequences.  The nucleus
sends a word to the singleton of its product.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import FinitePomonoid, is_integral, residual_tables

Word = tuple[int, ...]
EMPTY: Word = ()


class BudgetExceeded(ValueError):
    pass


class VariantError(ValueError):
    pass


@dataclass(frozen=True)
class Variant:
    structure: str = "mon"  # mon | umon | sgrp
    commutative: bool = False

    def __post_init__(self):
        if self.structure not in ("mon", "umon", "sgrp"):
            raise ValueError(f"unknown variant {self.structure!r}")

    @property
    def allows_empty_blocks(self) -> bool:
        return self.structure != "sgrp"

    @property
    def allows_empty_word(self) -> bool:
        return self.structure == "mon"

    def __str__(self):
        return ("c" if self.commutative else "") + self.structure


MON = Variant("mon")
UMON = Variant("umon")
SGRP = Variant("sgrp")


def parse_variant(name: str, commutative: bool = False) -> Variant:
    return Variant(name, commutative)


# ---------------------------------------------------------------- literals

_WORD_RE = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("e", "ε", "[]"):
        return EMPTY
    if not _WORD_RE.match(text):
        raise ValueError(f"bad word literal {text!r}")
    body = text[1:-1].strip()
    return tuple(int(x) for x in body.split(",")) if body else EMPTY


def format_word(u: Sequence[int]) -> str:
    if not u:
        return "e"
    return "[" + ",".join(str(x) for x in u) + "]"


def words_upto(alphabet: Sequence[int], L: int, min_len: int = 0) -> Iterator[Word]:
    """All words of length min_len..L, shortest first, lexicographic within a length."""
    for k in range(min_len, L + 1):
        yield from itertools.product(alphabet, repeat=k)


def multisets_upto(alphabet: Sequence[int], L: int, min_len: int = 0) -> Iterator[Word]:
    for k in range(min_len, L + 1):
        yield from itertools.combinations_with_replacement(sorted(alphabet), k)


# ---------------------------------------------------------------- the preorder

class FreePreimage:
    """Word arithmetic and the decision procedure for one base and variant.

    Results of ``le`` are memoised on the instance, so keep one instance per
    (base, variant) when running many queries.
    """

    def __init__(self, base: FinitePomonoid, variant: Variant = MON):
        if variant.structure != "sgrp" and base.unit is None:
            raise VariantError("monoid variants need a base with a unit")
        self.base = base
        self.variant = variant
        self._le_cache: dict[tuple[Word, Word], bool] = {}
        self._canon_cache: dict[Word, Word] = {}

    # -- basic operations

    def check(self, u: Sequence[int]) -> Word:
        u = tuple(u)
        if any(not (0 <= x < self.base.n) for x in u):
            raise ValueError(f"word {format_word(u)} has letters outside the carrier")
        if not u and self.variant.structure == "sgrp":
            raise VariantError("the semigroup variant has no empty word")
        return u

    def gamma(self, u: Sequence[int]) -> int:
        if not u and self.variant.structure == "sgrp":
            raise VariantError("the semigroup variant has no empty word")
        return self.base.product(u)

    def compose(self, *ws: Sequence[int]) -> Word:
        out: list[int] = []
        for w in ws:
            out.extend(w)
        u = tuple(out)
        return tuple(sorted(u)) if self.variant.commutative else u

    def embed(self, a: int) -> Word:
        return (a,)

    def nucleus_map(self, u: Sequence[int]) -> Word:
        return (self.gamma(u),)

    @cached_property
    def unit_word(self) -> Word:
        return (self.base.unit,)

    def normalize(self, u: Sequence[int]) -> Word:
        """Map the empty word to [1] in the unital variant; sort in commutative ones."""
        u = tuple(u)
        if not u and self.variant.structure == "umon":
            u = self.unit_word
        return tuple(sorted(u)) if self.variant.commutative else u

    # -- decision procedure

    def le(self, u: Sequence[int], v: Sequence[int]) -> bool:
        u, v = self.normalize(u), self.normalize(v)
        key = (u, v)
        hit = self._le_cache.get(key)
        if hit is None:
            if self.variant.commutative:
                hit = self._le_comm(u, v)
            else:
                hit = self._le_seq(u, v)
            self._le_cache[key] = hit
        return hit

    def _le_seq(self, u: Word, v: Word) -> bool:
        A = self.base
        le, m = A.le, A.mult
        if not v:
            return not u
        empty_ok = self.variant.allows_empty_blocks
        one = A.unit
        k = len(u)
        # block[i] lists (end, product of u[i:end]) for end > i
        blocks = []
        for i in range(k):
            acc = u[i]
            row = [(i + 1, acc)]
            for j in range(i + 1, k):
                acc = m[acc][u[j]]
                row.append((j + 1, acc))
            blocks.append(row)
        reach = {0}
        for a in v:
            nxt = set()
            for i in reach:
                if empty_ok and le[one][a]:
                    nxt.add(i)
                if i < k:
                    for end, p in blocks[i]:
                        if le[p][a]:
                            nxt.add(end)
            if not nxt:
                return False
            reach = nxt
        return k in reach

    def _le_comm(self, u: Word, v: Word) -> bool:
        A = self.base
        le = A.le
        if not v:
            return not u
        empty_ok = self.variant.allows_empty_blocks
        letters = sorted(set(u))
        counts = tuple(u.count(x) for x in letters)
        memo: dict[tuple[tuple[int, ...], int], bool] = {}

        def prod(sub):
            acc = A.unit
            first = True
            for x, c in zip(letters, sub):
                for _ in range(c):
                    acc = x if first else A.mult[acc][x]
                    first = False
            return acc, first  # first is True iff sub is empty

        def go(rem: tuple[int, ...], j: int) -> bool:
            key = (rem, j)
            if key in memo:
                return memo[key]
            a = v[j]
            res = False
            if j == len(v) - 1:
                p, empty = prod(rem)
                res = (not empty or empty_ok) and (empty and le[A.unit][a] if empty else le[p][a])
            else:
                for sub in itertools.product(*(range(c + 1) for c in rem)):
                    p, empty = prod(sub)
                    if empty:
                        if not empty_ok or not le[A.unit][a]:
                            continue
                    elif not le[p][a]:
                        continue
                    if go(tuple(r - s for r, s in zip(rem, sub)), j + 1):
                        res = True
                        break
            memo[key] = res
            return res

        return go(counts, 0)

    def equiv(self, u, v) -> bool:
        return self.le(u, v) and self.le(v, u)

    # -- representatives

    def canonical(self, u: Sequence[int]) -> Word:
        """The unique shortest word equivalent to u (lexicographically first if ties)."""
        u = self.normalize(u)
        hit = self._canon_cache.get(u)
        if hit is not None:
            return hit
        A = self.base
        if self.variant.structure == "sgrp":
            res = u
        elif is_integral(A):
            r = tuple(x for x in u if x != A.unit)
            if not r and u:
                r = self.unit_word
            if not r and self.variant.structure == "umon":
                r = self.unit_word
            res = r
        else:
            res = u
            lo = 1 if self.variant.structure == "umon" else 0
            gen = multisets_upto if self.variant.commutative else words_upto
            for w in gen(list(A.elems), len(u) - 1, lo):
                if self.equiv(w, u):
                    res = tuple(w)
                    break
        self._canon_cache[u] = res
        return res

    # -- residuals by singletons

    def residual_by_singleton(self, u: Sequence[int], a: int, side: str = "left") -> Optional[Word]:
        """u\\[a] = [g(u)\\a] (side 'left') or [a]/u = [a/g(u)] (side 'right').

        Returns None when the base residual does not exist.
        """
        res = self._residuals
        if res is None:
            return None
        ldiv, rdiv = res
        g = self.gamma(u)
        if side == "left":
            return (ldiv[g][a],)
        if side == "right":
            return (rdiv[a][g],)
        raise ValueError(side)

    @cached_property
    def _residuals(self):
        A = self.base
        if A.ldiv is not None and A.rdiv is not None:
            return A.ldiv, A.rdiv
        return residual_tables(A)

    # -- enumeration helpers

    def all_words(self, L: int) -> list[Word]:
        lo = 0 if self.variant.allows_empty_word else 1
        gen = multisets_upto if self.variant.commutative else words_upto
        return list(gen(list(self.base.elems), L, lo))

    def fragment(self, L: int) -> "WordFragment":
        return WordFragment(self, L)


def word_le(base: FinitePomonoid, u, v, variant: Variant = MON) -> bool:
    return FreePreimage(base, variant).le(u, v)


def word_equiv(base, u, v, variant: Variant = MON) -> bool:
    return FreePreimage(base, variant).equiv(u, v)


def gamma_eval(base, u, variant: Variant = MON) -> int:
    return FreePreimage(base, variant).gamma(u)


def canonical_form(base, u, variant: Variant = MON) -> Word:
    return FreePreimage(base, variant).canonical(u)


# ---------------------------------------------------------------- fragments

class WordFragment:
    """Canonical words of length at most L with the preorder tabulated."""

    def __init__(self, fp: FreePreimage, L: int):
        if L < 1:
            raise ValueError("fragment length must be at least 1")
        self.fp = fp
        self.L = L
        seen: dict[Word, None] = {}
        for w in fp.all_words(L):
            seen.setdefault(fp.canonical(w), None)
        self.words: list[Word] = sorted(seen, key=lambda w: (len(w), w))
        self.index = {w: i for i, w in enumerate(self.words)}
        self.table = [[fp.le(u, v) for v in self.words] for u in self.words]

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return self.fp.canonical(w) in self.index

    def le(self, u, v) -> bool:
        i = self.index.get(self.fp.canonical(u))
        j = self.index.get(self.fp.canonical(v))
        if i is None or j is None:
            return self.fp.le(u, v)
        return self.table[i][j]

    def maximal(self, ws: Iterable[Word]) -> list[Word]:
        ws = sorted({self.fp.canonical(w) for w in ws}, key=lambda w: (len(w), w))
        return [w for w in ws if not any(x != w and self.le(w, x) for x in ws)]

    def minimal(self, ws: Iterable[Word]) -> list[Word]:
        ws = sorted({self.fp.canonical(w) for w in ws}, key=lambda w: (len(w), w))
        return [w for w in ws if not any(x != w and self.le(x, w) for x in ws)]


def fragment(base, variant: Variant, L: int) -> WordFragment:
    return WordFragment(FreePreimage(base, variant), L)


# ---------------------------------------------------------------- bounded checks

def check_limited_cancellativity(fp: FreePreimage, L: int):
    """Search w <= u.w (or w <= w.u) with e not <= u, |u| + |w| <= L.

    Returns (side, u, w) or None.  Only meaningful for monoid variants.
    """
    if fp.variant.structure == "sgrp":
        raise VariantError("limited cancellativity is stated for monoid variants")
    ws = fp.all_words(L)
    for u in ws:
        if not u or fp.le(EMPTY, u):
            continue
        for w in ws:
            if len(u) + len(w) > L:
                break
            if fp.le(w, fp.compose(u, w)):
                return ("left", u, w)
            if fp.le(w, fp.compose(w, u)):
                return ("right", u, w)
    return None


def check_left_cancellativity(fp: FreePreimage, L: int):
    """Search [a].u <= [a].v with u not <= v, and the right-sided dual.

    Words u, v have length at most L - 1 so both sides stay within L.
    Returns (side, a, u, v) or None.
    """
    if fp.variant.structure == "mon":
        raise VariantError("use the unital or semigroup variant")
    ws = fp.all_words(L - 1)
    for a in fp.base.elems:
        for u in ws:
            for v in ws:
                if fp.le(u, v):
                    continue
                if fp.le(fp.compose((a,), u), fp.compose((a,), v)):
                    return ("left", a, u, v)
                if fp.le(fp.compose(u, (a,)), fp.compose(v, (a,))):
                    return ("right", a, u, v)
    return None


def max_solutions(fp: FreePreimage, left: Sequence[int], right: Sequence[int], target: Sequence[int],
                  max_len: Optional[int] = None) -> list[Word]:
    """Maximal x with left.x.right <= target, searched over words of length <= max(1, |target|).

    The bound is complete: in any witnessing split, x meets at most
    |target| blocks, and replacing each piece of x by its product gives a
    word of that length which is still a solution and lies above x.
    """
    if max_len is None:
        max_len = max(1, len(fp.normalize(target)))
    lo = 0 if fp.variant.allows_empty_word else 1
    gen = multisets_upto if fp.variant.commutative else words_upto
    sols = {fp.canonical(x) for x in gen(list(fp.base.elems), max_len, lo)
            if fp.le(fp.compose(left, x, right), target)}
    sols = sorted(sols, key=lambda w: (len(w), w))
    return [w for w in sols if not any(x != w and fp.le(w, x) for x in sols)]
