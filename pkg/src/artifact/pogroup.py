"""Signed words over a pomonoid and the rewrite system that orders them.

A signed word is a tuple of ``(letter, negative)`` pairs.  For a positive
word ``u = [a1..an]`` the inverse ``u^-1`` is ``[an]^-1 ... [a1]^-1``.
Side conditions of every rule are inequalities between positive words in
the unital free preimage, where the empty word stands for ``[1]``.

Rules (each may be applied inside any context):

========== =========================== =====================================
rule       rewrite                     side condition
========== =========================== =====================================
pos-mono   u -> [a]                    u <= [a]
neg-mono   [a]^-1 -> u^-1              u <= [a]
contract   u^-1 v w^-1 -> x            v <= u x w, u and w not both empty
expand     x -> u^-1 v w^-1            u x w <= v, u and w not both empty
perm-left  u v^-1 -> x^-1 y            x u <= y v, v and x non-empty
perm-right u^-1 v -> x y^-1            v y <= u x, u and y non-empty
========== =========================== =====================================

A proof is normal when its rules appear in the order
neg-mono, contraction, permutation, expansion, pos-mono.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra import (
    FinitePomonoid,
    NotIdeallyResiduated,
    is_ideally_residuated,
    is_integrally_closed,
)
from .words import UMON, FreePreimage, Word, format_word, max_solutions, words_upto

Letter = tuple[int, bool]  # (element, is_negative)
SignedWord = tuple[Letter, ...]

RULES = ("pos-mono", "neg-mono", "contraction", "expansion", "perm-left", "perm-right")
PHASE = {"neg-mono": 0, "contraction": 1, "perm-left": 2, "perm-right": 2, "expansion": 3, "pos-mono": 4}


class NotIntegrallyClosed(ValueError):
    pass


class NoPositiveBound(ValueError):
    pass


# ---------------------------------------------------------------- signed words

_SIGNED_RE = re.compile(r"^\[\s*(~?\d+(\s*,\s*~?\d+)*)?\s*\]$")


def parse_signed(text: str) -> SignedWord:
    text = text.strip()
    if text in ("e", "ε", "[]"):
        return ()
    if not _SIGNED_RE.match(text):
        raise ValueError(f"bad signed word literal {text!r}")
    out = []
    for part in text[1:-1].split(","):
        part = part.strip()
        out.append((int(part.lstrip("~")), part.startswith("~")))
    return tuple(out)


def format_signed(alpha: Sequence[Letter]) -> str:
    if not alpha:
        return "e"
    return "[" + ",".join(("~" if neg else "") + str(a) for a, neg in alpha) + "]"


def pos(u: Sequence[int]) -> SignedWord:
    return tuple((a, False) for a in u)


def inv(u: Sequence[int]) -> SignedWord:
    """u^-1 for a positive word u."""
    return tuple((a, True) for a in reversed(u))


def rank(alpha: Sequence[Letter]) -> int:
    return sum(1 for _, neg in alpha if neg)


def is_positive(alpha: Sequence[Letter]) -> bool:
    return rank(alpha) == 0


def letters(alpha: Sequence[Letter]) -> Word:
    return tuple(a for a, _ in alpha)


def _neg_run(alpha: Sequence[Letter]) -> Optional[Word]:
    """The positive word u with alpha == u^-1, if alpha is all negative."""
    if any(not neg for _, neg in alpha):
        return None
    return tuple(a for a, _ in reversed(alpha))


def _pos_run(alpha: Sequence[Letter]) -> Optional[Word]:
    if any(neg for _, neg in alpha):
        return None
    return tuple(a for a, _ in alpha)


# ---------------------------------------------------------------- proofs


@dataclass(frozen=True)
class ProofStep:
    rule: str
    start: int  # the rewritten segment is word[start:end]
    end: int
    payload: tuple  # sorted (name, value) pairs: positive words and letters

    @property
    def args(self) -> dict:
        return dict(self.payload)

    def lhs(self) -> SignedWord:
        return _instance(self.rule, self.args)[0]

    def rhs(self) -> SignedWord:
        return _instance(self.rule, self.args)[1]

    def side_condition(self) -> str:
        d = self.args
        f = format_word
        if self.rule in ("pos-mono", "neg-mono"):
            return f"{f(d['u'])} <= [{d['a']}]"
        if self.rule == "contraction":
            return f"{f(d['v'])} <= {f(d['u'])} o {f(d['x'])} o {f(d['w'])}"
        if self.rule == "expansion":
            return f"{f(d['u'])} o {f(d['x'])} o {f(d['w'])} <= {f(d['v'])}"
        if self.rule == "perm-left":
            return f"{f(d['x'])} o {f(d['u'])} <= {f(d['y'])} o {f(d['v'])}"
        return f"{f(d['v'])} o {f(d['y'])} <= {f(d['u'])} o {f(d['x'])}"


def _step(rule: str, start: int, end: int, **kw) -> ProofStep:
    return ProofStep(rule, start, end, tuple(sorted(kw.items())))


def _instance(rule: str, d: dict) -> tuple[SignedWord, SignedWord]:
    if rule == "pos-mono":
        return pos(d["u"]), ((d["a"], False),)
    if rule == "neg-mono":
        return ((d["a"], True),), inv(d["u"])
    if rule == "contraction":
        return inv(d["u"]) + pos(d["v"]) + inv(d["w"]), pos(d["x"])
    if rule == "expansion":
        return pos(d["x"]), inv(d["u"]) + pos(d["v"]) + inv(d["w"])
    if rule == "perm-left":
        return pos(d["u"]) + inv(d["v"]), inv(d["x"]) + pos(d["y"])
    if rule == "perm-right":
        return inv(d["u"]) + pos(d["v"]), pos(d["x"]) + inv(d["y"])
    raise ValueError(f"unknown rule {rule!r}")


def _side_ok(fp: FreePreimage, rule: str, d: dict) -> bool:
    le, cat = fp.le, fp.compose
    if rule in ("pos-mono", "neg-mono"):
        return le(d["u"], (d["a"],))
    if rule == "contraction":
        return bool(d["u"] or d["w"]) and le(d["v"], cat(d["u"], d["x"], d["w"]))
    if rule == "expansion":
        return bool(d["u"] or d["w"]) and le(cat(d["u"], d["x"], d["w"]), d["v"])
    if rule == "perm-left":
        return bool(d["v"] and d["x"]) and le(cat(d["x"], d["u"]), cat(d["y"], d["v"]))
    if rule == "perm-right":
        return bool(d["u"] and d["y"]) and le(cat(d["v"], d["y"]), cat(d["u"], d["x"]))
    return False


@dataclass
class Proof:
    start: SignedWord
    steps: list[ProofStep]
    end: SignedWord

    def words(self) -> list[SignedWord]:
        out = [self.start]
        cur = self.start
        for s in self.steps:
            cur = cur[: s.start] + s.rhs() + cur[s.end:]
            out.append(cur)
        return out

    def lines(self) -> list[str]:
        out = [f"0. {format_signed(self.start)}"]
        for i, (s, w) in enumerate(zip(self.steps, self.words()[1:]), 1):
            out.append(f"{i}. {format_signed(w)}   by {s.rule} at {s.start}:{s.end}, {s.side_condition()}")
        return out


def check_proof(fp: FreePreimage, p: Proof) -> bool:
    """Replay every step: contexts must chain and every side condition must hold."""
    n = fp.base.n
    cur = tuple(p.start)
    for s in p.steps:
        if s.rule not in RULES:
            return False
        if not (0 <= s.start <= s.end <= len(cur)):
            raise IndexError(f"step {s} is outside a word of length {len(cur)}")
        d = s.args
        try:
            lhs, rhs = _instance(s.rule, d)
        except KeyError:
            return False
        if any(not (0 <= a < n) for a, _ in lhs + rhs):
            return False
        if cur[s.start: s.end] != lhs or not _side_ok(fp, s.rule, d):
            return False
        cur = cur[: s.start] + rhs + cur[s.end:]
    return cur == tuple(p.end)


def is_normal(p: Proof) -> bool:
    phases = [PHASE[s.rule] for s in p.steps]
    return all(a <= b for a, b in zip(phases, phases[1:]))


# ---------------------------------------------------------------- bounded search


@dataclass
class SearchResult:
    status: str  # proved | unknown-at-depth
    proof: Optional[Proof] = None
    normal: bool = False
    explored: int = 0

    @property
    def proved(self) -> bool:
        return self.status == "proved"


class BoundedProver:
    """Rewrite graph on signed words of length <= cap.

    Local rewrites are computed once per segment, with outputs up to the
    cap, and filtered by the room left in each context.
    """

    def __init__(self, base: FinitePomonoid, cap: int):
        self.base = base
        self.cap = cap
        self.fp = FreePreimage(base, UMON)
        self._local: dict[SignedWord, list[tuple[SignedWord, ProofStep]]] = {}
        self._succ: dict[SignedWord, list[tuple[SignedWord, ProofStep]]] = {}
        self._closure: dict[int, dict] = {}

    # -- local rewrites of one segment

    def local(self, seg: SignedWord) -> list[tuple[SignedWord, ProofStep]]:
        hit = self._local.get(seg)
        if hit is None:
            hit = self._rewrites(seg)
            self._local[seg] = hit
        return hit

    def _rewrites(self, seg: SignedWord) -> list[tuple[SignedWord, ProofStep]]:
        fp, E, K = self.fp, list(self.base.elems), self.cap
        le, cat = fp.le, fp.compose
        out: dict[tuple[str, SignedWord], ProofStep] = {}

        def add(rule, rhs, **kw):
            out.setdefault((rule, rhs), _step(rule, 0, len(seg), **kw))

        p = _pos_run(seg)
        if p is not None:
            for a in E:
                if le(p, (a,)):
                    add("pos-mono", ((a, False),), u=p, a=a)
            # expansion x -> u^-1 v w^-1
            for total in range(1, K + 1):
                for ku in range(total + 1):
                    for kw in range(total - ku + 1):
                        if ku == 0 and kw == 0:
                            continue
                        kv = total - ku - kw
                        for u in itertools.product(E, repeat=ku):
                            for w in itertools.product(E, repeat=kw):
                                lhs = cat(u, p, w)
                                for v in itertools.product(E, repeat=kv):
                                    if le(lhs, v):
                                        add("expansion", inv(u) + pos(v) + inv(w), u=u, v=v, w=w, x=p)
        if len(seg) == 1 and seg[0][1]:
            a = seg[0][0]
            for u in words_upto(E, K):
                if le(u, (a,)):
                    add("neg-mono", inv(u), a=a, u=u)
        # contraction u^-1 v w^-1 -> x
        for u, v, w in _contraction_splits(seg):
            for x in words_upto(E, K):
                if le(v, cat(u, x, w)):
                    add("contraction", pos(x), u=u, v=v, w=w, x=x)
        # perm-left u v^-1 -> x^-1 y
        for k in range(len(seg)):
            u, v = _pos_run(seg[:k]), _neg_run(seg[k:])
            if u is None or v is None or not v:
                continue
            for total in range(1, K + 1):
                for kx in range(1, total + 1):
                    for x in itertools.product(E, repeat=kx):
                        lhs = cat(x, u)
                        for y in itertools.product(E, repeat=total - kx):
                            if le(lhs, cat(y, v)):
                                add("perm-left", inv(x) + pos(y), u=u, v=v, x=x, y=y)
        # perm-right u^-1 v -> x y^-1
        for k in range(1, len(seg) + 1):
            u, v = _neg_run(seg[:k]), _pos_run(seg[k:])
            if u is None or v is None or not u:
                continue
            for total in range(1, K + 1):
                for ky in range(1, total + 1):
                    for y in itertools.product(E, repeat=ky):
                        lhs = cat(v, y)
                        for x in itertools.product(E, repeat=total - ky):
                            if le(lhs, cat(u, x)):
                                add("perm-right", pos(x) + inv(y), u=u, v=v, x=x, y=y)
        return [(rhs, step) for (_, rhs), step in out.items()]

    # -- the graph

    def successors(self, word: SignedWord) -> list[tuple[SignedWord, ProofStep]]:
        hit = self._succ.get(word)
        if hit is not None:
            return hit
        n = len(word)
        seen: dict[SignedWord, ProofStep] = {}
        for i in range(n + 1):
            for j in range(i, n + 1):
                room = self.cap - n + (j - i)
                for rhs, st in self.local(word[i:j]):
                    if len(rhs) > room:
                        continue
                    new = word[:i] + rhs + word[j:]
                    if new != word and new not in seen:
                        seen[new] = ProofStep(st.rule, i, j, st.payload)
        hit = list(seen.items())
        self._succ[word] = hit
        return hit

    def states(self) -> list[SignedWord]:
        signed = [(a, s) for a in self.base.elems for s in (False, True)]
        return [tuple(w) for k in range(self.cap + 1) for w in itertools.product(signed, repeat=k)]

    def _bfs(self, alpha, beta, depth, phased):
        start = (alpha, 0) if phased else (alpha, None)
        parent = {start: None}
        frontier = [start]
        for _ in range(depth):
            nxt = []
            for node in frontier:
                w, ph = node
                for new, st in self.successors(w):
                    if phased and PHASE[st.rule] < ph:
                        continue
                    key = (new, PHASE[st.rule] if phased else None)
                    if key in parent:
                        continue
                    parent[key] = (node, st)
                    if new == beta:
                        return self._path(parent, key, alpha, beta), len(parent)
                    nxt.append(key)
            frontier = nxt
        return None, len(parent)

    @staticmethod
    def _path(parent, key, alpha, beta) -> Proof:
        steps = []
        while parent[key] is not None:
            key, st = parent[key]
            steps.append(st)
        steps.reverse()
        return Proof(alpha, steps, beta)

    def prove(self, alpha: SignedWord, beta: SignedWord, depth: int = 6) -> SearchResult:
        """Normal-order search first, then unrestricted; both bounded by depth and cap."""
        alpha, beta = tuple(alpha), tuple(beta)
        if max(len(alpha), len(beta)) > self.cap:
            raise ValueError(f"words longer than the cap {self.cap}")
        if alpha == beta:
            return SearchResult("proved", Proof(alpha, [], beta), True, 1)
        proof, n1 = self._bfs(alpha, beta, depth, phased=True)
        if proof is not None:
            return SearchResult("proved", proof, True, n1)
        proof, n2 = self._bfs(alpha, beta, depth, phased=False)
        if proof is not None:
            return SearchResult("proved", proof, is_normal(proof), n1 + n2)
        return SearchResult("unknown-at-depth", None, False, n1 + n2)

    def closure(self, depth: int = 6) -> dict[SignedWord, set[SignedWord]]:
        """For every state, the states reachable in at most ``depth`` steps.

        Computed with bitsets by repeated squaring of the one-step relation.
        """
        hit = self._closure.get(depth)
        if hit is not None:
            return hit
        states = self.states()
        idx = {w: i for i, w in enumerate(states)}
        step = [1 << i for i in range(len(states))]
        for i, w in enumerate(states):
            for new, _ in self.successors(w):
                step[i] |= 1 << idx[new]

        def compose(r1, r2):
            out = []
            for m in r1:
                acc = 0
                while m:
                    low = m & -m
                    acc |= r2[low.bit_length() - 1]
                    m ^= low
                out.append(acc)
            return out

        reach = [1 << i for i in range(len(states))]  # depth 0
        power, d = step, depth
        while d:
            if d & 1:
                reach = compose(reach, power)
            d >>= 1
            if d:
                power = compose(power, power)
        res = {}
        for i, w in enumerate(states):
            m, s = reach[i], set()
            while m:
                low = m & -m
                s.add(states[low.bit_length() - 1])
                m ^= low
            res[w] = s
        self._closure[depth] = res
        return res


def _contraction_splits(seg: SignedWord) -> Iterable[tuple[Word, Word, Word]]:
    """All (u, v, w) with seg == u^-1 v w^-1 and u, w not both empty."""
    n = len(seg)
    i = 0
    while i < n and seg[i][1]:
        i += 1
    j = i
    while j < n and not seg[j][1]:
        j += 1
    if any(not neg for _, neg in seg[j:]):
        return
    if i == n:  # all negative: every split point
        for k in range(n + 1):
            u, w = _neg_run(seg[:k]), _neg_run(seg[k:])
            if u or w:
                yield u, (), w
        return
    u, v, w = _neg_run(seg[:i]), _pos_run(seg[i:j]), _neg_run(seg[j:])
    if u or w:
        yield u, v, w


_PROVERS: dict[tuple, BoundedProver] = {}


def prover(base: FinitePomonoid, cap: int) -> BoundedProver:
    key = (base, cap)
    if key not in _PROVERS:
        _PROVERS[key] = BoundedProver(base, cap)
    return _PROVERS[key]


def prove_bounded(base: FinitePomonoid, alpha: SignedWord, beta: SignedWord, depth: int = 6,
                  cap: Optional[int] = None) -> SearchResult:
    """Search for a proof of alpha <= beta; absence is reported, never asserted."""
    if cap is None:
        cap = max(len(alpha), len(beta)) + 1
    return prover(base, cap).prove(tuple(alpha), tuple(beta), depth)


# ---------------------------------------------------------------- positive fragment and sigma


def decide_positive(base: FinitePomonoid, u: Sequence[int], v: Sequence[int]) -> bool:
    """u <= v for positive words, which over an integrally closed base is the preimage order."""
    if not is_integrally_closed(base):
        raise NotIntegrallyClosed(f"{base.name} is not integrally closed")
    return FreePreimage(base, UMON).le(u, v)


@dataclass
class SigmaComputer:
    """The maximal positive words below a signed word, by rank reduction.

    Each step picks a subword u^-1 v w^-1 (u, w not both empty) and
    replaces it by every maximal solution x of u x w <= v.  All subword
    choices are explored, so the union over them is complete; the
    results lie below the input because each replacement is an expansion.
    """

    base: FinitePomonoid
    fp: FreePreimage = field(init=False)
    _memo: dict = field(init=False, default_factory=dict)

    def __post_init__(self):
        if not is_integrally_closed(self.base):
            raise NotIntegrallyClosed(f"{self.base.name} is not integrally closed")
        if not is_ideally_residuated(self.base):
            raise NotIdeallyResiduated(f"{self.base.name} is not ideally residuated")
        self.fp = FreePreimage(self.base, UMON)

    def __call__(self, alpha: SignedWord) -> list[Word]:
        alpha = tuple(alpha)
        hit = self._memo.get(alpha)
        if hit is not None:
            return hit
        fp = self.fp
        if is_positive(alpha):
            res = [fp.canonical(letters(alpha))]
        else:
            cands: list[Word] = []
            for i, j, u, v, w in _reduction_sites(alpha):
                sols = max_solutions(fp, u, w, v)
                if not sols:
                    raise NoPositiveBound(
                        f"{format_word(u)} o x o {format_word(w)} <= {format_word(v)} has no solution"
                    )
                for x in sols:
                    cands.extend(self(alpha[:i] + pos(x) + alpha[j:]))
            res = _maximal(fp, cands)
        self._memo[alpha] = res
        return res


def _reduction_sites(alpha: SignedWord):
    """(start, end, u, v, w) for every subword u^-1 v w^-1 with u or w non-empty."""
    n = len(alpha)
    for i in range(n):
        for j in range(i + 1, n + 1):
            for u, v, w in _contraction_splits(alpha[i:j]):
                yield i, j, u, v, w


def _maximal(fp: FreePreimage, words: Iterable[Word]) -> list[Word]:
    ws = sorted({fp.canonical(w) for w in words}, key=lambda w: (len(w), w))
    return [w for w in ws if not any(x != w and fp.le(w, x) for x in ws)]


def sigma(base: FinitePomonoid, alpha: SignedWord) -> list[Word]:
    return SigmaComputer(base)(alpha)


def is_negative_conucleus(base: FinitePomonoid, sample: Iterable[SignedWord], sig=None) -> bool:
    """Every sigma value in the sample lies below [1]."""
    sig = sig or SigmaComputer(base)
    fp = FreePreimage(base, UMON)
    one = (base.unit,)
    return all(fp.le(u, one) for alpha in sample for u in sig(alpha))


# ---------------------------------------------------------------- the worked example


def worked_example(base: FinitePomonoid, u: Word, a: int, v: Word, b: int, c: int, a1: int, a2: int) -> Proof:
    """u [a]^-1 v <= [b][c] from [a1,a2] <= [a], u <= [b,a2] and v <= [a1,c].

    One negative monotonicity step followed by two contractions.
    """
    nu = len(u)
    start = pos(u) + (((a, True),)) + pos(v)
    steps = [
        _step("neg-mono", nu, nu + 1, a=a, u=(a1, a2)),
        _step("contraction", 0, nu + 1, u=(), v=tuple(u), w=(a2,), x=(b,)),
        _step("contraction", 1, 2 + len(v), u=(a1,), v=tuple(v), w=(), x=(c,)),
    ]
    return Proof(start, steps, ((b, False), (c, False)))
