"""Quasi-inequalities over pomonoids with a nucleus, and the laws built from them.

Terms use ``*`` for the product, ``|`` for join, ``1`` for the unit and
``g(...)`` for the nucleus.  A quasi-inequality is written
``t1 <= u1 & t2 <= u2 => t <= u``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .algebra import FinitePomonoid, cancellativity_witness, is_commutative, make_algebra, with_joins
from .downsets import Antichain, FiniteCarrier, IdAlgebra
from .words import FreePreimage, Variant

# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Term:
    op: str  # var | one | mul | join | g
    args: tuple = ()
    name: str = ""

    def __str__(self):
        return show(self)

    @property
    def depth(self) -> int:
        return 0 if not self.args else 1 + max(a.depth for a in self.args)

    def variables(self) -> set[str]:
        if self.op == "var":
            return {self.name}
        out: set[str] = set()
        for a in self.args:
            out |= a.variables()
        return out

    def ops(self) -> set[str]:
        out = {self.op}
        for a in self.args:
            out |= a.ops()
        return out


ONE = Term("one")


def var(name: str) -> Term:
    return Term("var", (), name)


def mul(a: Term, b: Term) -> Term:
    return Term("mul", (a, b))


def join(a: Term, b: Term) -> Term:
    return Term("join", (a, b))


def g(a: Term) -> Term:
    return Term("g", (a,))


def show(t: Term, ctx: str = "top") -> str:
    if t.op == "var":
        return t.name
    if t.op == "one":
        return "1"
    if t.op == "g":
        return f"g({show(t.args[0])})"
    if t.op == "mul":
        s = f"{show(t.args[0], 'mul')}*{show(t.args[1], 'mulr')}"
        return f"({s})" if ctx == "mulr" else s
    s = f"{show(t.args[0], 'join')}|{show(t.args[1], 'joinr')}"
    return f"({s})" if ctx in ("mul", "mulr", "joinr") else s


@dataclass(frozen=True)
class Inequality:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} <= {self.rhs}"


@dataclass(frozen=True)
class QuasiInequality:
    premises: tuple[Inequality, ...]
    conclusion: Inequality

    def __str__(self):
        if not self.premises:
            return str(self.conclusion)
        return " & ".join(map(str, self.premises)) + " => " + str(self.conclusion)

    def variables(self) -> list[str]:
        vs: set[str] = set()
        for ineq in self.premises + (self.conclusion,):
            vs |= ineq.lhs.variables() | ineq.rhs.variables()
        return sorted(vs)

    def ops(self) -> set[str]:
        out: set[str] = set()
        for ineq in self.premises + (self.conclusion,):
            out |= ineq.lhs.ops() | ineq.rhs.ops()
        return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(<=|=>|[A-Za-z_][A-Za-z0-9_]*|\d+|[*|&()])")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"expected {expect or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def term(self):
        t = self.prod()
        while self.peek() == "|":
            self.take()
            t = join(t, self.prod())
        return t

    def prod(self):
        t = self.atom()
        while self.peek() == "*":
            self.take()
            t = mul(t, self.atom())
        return t

    def atom(self):
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok == "1":
            return ONE
        if tok == "g" and self.peek() == "(":
            self.take("(")
            t = self.term()
            self.take(")")
            return g(t)
        if tok[0].isalpha() or tok[0] == "_":
            return var(tok)
        raise ValueError(f"unexpected token {tok!r}")

    def ineq(self):
        lhs = self.term()
        self.take("<=")
        return Inequality(lhs, self.term())


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return t


def parse_quasi(text: str) -> QuasiInequality:
    p = _Parser(text)
    ineqs = [p.ineq()]
    while p.peek() == "&":
        p.take()
        ineqs.append(p.ineq())
    if p.peek() == "=>":
        p.take()
        concl = p.ineq()
        prem = tuple(ineqs)
    else:
        if len(ineqs) != 1:
            raise ValueError("premises without a conclusion")
        concl, prem = ineqs[0], ()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return QuasiInequality(prem, concl)


# ---------------------------------------------------------------- classification

def classify(phi: QuasiInequality) -> str:
    """'simple', 'unital-simple' or 'general' according to the premise right-hand sides."""
    kinds = set()
    for p in phi.premises:
        r = p.rhs
        if r.op in ("var", "g"):
            kinds.add("simple")
        elif r.op == "one":
            kinds.add("unit")
        else:
            return "general"
    return "unital-simple" if "unit" in kinds else "simple"


# ---------------------------------------------------------------- evaluation

class SignatureMismatch(ValueError):
    pass


def _check_signature(phi: QuasiInequality, A: FinitePomonoid, gamma) -> None:
    ops = phi.ops()
    if "join" in ops and A.join is None:
        raise SignatureMismatch("formula uses joins but the algebra has none")
    if "one" in ops and A.unit is None:
        raise SignatureMismatch("formula uses 1 but the algebra has no unit")
    if "g" in ops and gamma is None:
        raise SignatureMismatch("formula uses the nucleus but none was given")


def eval_term(t: Term, A: FinitePomonoid, env: dict, gamma=None) -> int:
    """Recursive evaluation at one assignment."""
    if t.op == "var":
        return env[t.name]
    if t.op == "one":
        return A.unit
    if t.op == "mul":
        return A.mult[eval_term(t.args[0], A, env, gamma)][eval_term(t.args[1], A, env, gamma)]
    if t.op == "join":
        return A.join[eval_term(t.args[0], A, env, gamma)][eval_term(t.args[1], A, env, gamma)]
    if t.op == "g":
        return gamma[eval_term(t.args[0], A, env, gamma)]
    raise ValueError(t.op)


def eval_quasi_naive(phi: QuasiInequality, A: FinitePomonoid, gamma=None) -> Optional[dict]:
    """Assignment-by-assignment evaluation; the reference for ``eval_quasi``."""
    _check_signature(phi, A, gamma)
    vs = phi.variables()
    for vals in itertools.product(A.elems, repeat=len(vs)):
        env = dict(zip(vs, vals))
        if all(A.le[eval_term(p.lhs, A, env, gamma)][eval_term(p.rhs, A, env, gamma)] for p in phi.premises):
            c = phi.conclusion
            if not A.le[eval_term(c.lhs, A, env, gamma)][eval_term(c.rhs, A, env, gamma)]:
                return env
    return None


class TableEvaluator:
    """Evaluates many terms over all assignments of a fixed variable list at once.

    Each term becomes a tuple of values indexed by assignment, each atomic
    inequality a bitmask of the assignments where it holds.
    """

    def __init__(self, A: FinitePomonoid, variables: Sequence[str], gamma=None):
        self.A = A
        self.gamma = gamma
        self.variables = list(variables)
        self.assignments = list(itertools.product(A.elems, repeat=len(self.variables)))
        self._values: dict[Term, tuple[int, ...]] = {}
        self._masks: dict[tuple[Term, Term], int] = {}
        self.full = (1 << len(self.assignments)) - 1

    def values(self, t: Term) -> tuple[int, ...]:
        hit = self._values.get(t)
        if hit is not None:
            return hit
        A = self.A
        if t.op == "var":
            k = self.variables.index(t.name)
            out = tuple(a[k] for a in self.assignments)
        elif t.op == "one":
            out = (A.unit,) * len(self.assignments)
        elif t.op == "g":
            if self.gamma is None:
                raise SignatureMismatch("formula uses the nucleus but none was given")
            gm = self.gamma
            out = tuple(gm[x] for x in self.values(t.args[0]))
        else:
            tab = A.mult if t.op == "mul" else A.join
            if tab is None:
                raise SignatureMismatch("formula uses joins but the algebra has none")
            out = tuple(tab[x][y] for x, y in zip(self.values(t.args[0]), self.values(t.args[1])))
        self._values[t] = out
        return out

    def mask(self, ineq: Inequality) -> int:
        key = (ineq.lhs, ineq.rhs)
        hit = self._masks.get(key)
        if hit is None:
            le = self.A.le
            hit = 0
            for i, (x, y) in enumerate(zip(self.values(ineq.lhs), self.values(ineq.rhs))):
                if le[x][y]:
                    hit |= 1 << i
            self._masks[key] = hit
        return hit

    def failures(self, phi: QuasiInequality) -> int:
        prem = self.full
        for p in phi.premises:
            prem &= self.mask(p)
        return prem & ~self.mask(phi.conclusion)

    def valid(self, phi: QuasiInequality) -> bool:
        return self.failures(phi) == 0

    def counterexample(self, phi: QuasiInequality) -> Optional[dict]:
        bad = self.failures(phi)
        if not bad:
            return None
        i = (bad & -bad).bit_length() - 1
        env = dict(zip(self.variables, self.assignments[i]))
        return {v: env[v] for v in phi.variables()}


def eval_quasi(phi: QuasiInequality, A: FinitePomonoid, gamma=None) -> Optional[dict]:
    """A falsifying assignment of phi in (A, gamma), or None if phi is valid."""
    _check_signature(phi, A, gamma)
    return TableEvaluator(A, phi.variables(), gamma).counterexample(phi)


# ---------------------------------------------------------------- generation

VARIABLES = ("x", "y", "z")
POMONOID_SIGNATURE = frozenset({"mul", "one", "g"})
SL_SIGNATURE = frozenset({"mul", "one", "join", "g"})

# Fixed probes used to identify terms and formulas that evaluate alike.
# Both are non-commutative (non-unit elements are left zeros) and were
# picked from the 3-element catalog for the largest depth-2 term pools.
_PROBE = dict(n=3, le=[(2, 1)], mult=[[0, 1, 2], [1, 1, 1], [2, 2, 2]], unit=0, gamma=(0, 1, 1))
_PROBE_SL = dict(
    n=3, le=[(0, 2), (1, 0), (1, 2)], mult=[[0, 1, 2], [1, 1, 1], [2, 2, 2]], unit=0, gamma=(2, 2, 2),
)


def probe_algebra(signature=POMONOID_SIGNATURE) -> tuple[FinitePomonoid, tuple[int, ...]]:
    probe = _PROBE_SL if "join" in signature else _PROBE
    A = make_algebra(probe["n"], probe["le"], probe["mult"], probe["unit"], name="probe")
    if "join" in signature:
        A = with_joins(A)
    return A, probe["gamma"]


def term_pool(depth: int, variables: Sequence[str], signature=POMONOID_SIGNATURE) -> list[Term]:
    """Terms up to ``depth``, one per distinct value table on the probe.

    The pool for a smaller depth is a prefix of the pool for a larger one.
    """
    A, gm = probe_algebra(signature)
    ev = TableEvaluator(A, variables, gm)
    seen: dict[tuple, Term] = {}
    levels: list[list[Term]] = []
    base = [var(v) for v in variables] + ([ONE] if "one" in signature else [])
    level = []
    for t in base:
        key = ev.values(t)
        if key not in seen:
            seen[key] = t
            level.append(t)
    levels.append(level)
    for _ in range(depth):
        older = [t for lv in levels for t in lv]
        prev = set(levels[-1])
        cands = []
        if "g" in signature:
            cands.extend(g(t) for t in levels[-1])
        for a, b in itertools.product(older, older):
            if a in prev or b in prev:
                cands.append(mul(a, b))
                if "join" in signature:
                    cands.append(join(a, b))
        new = []
        for t in cands:
            key = ev.values(t)
            if key not in seen:
                seen[key] = t
                new.append(t)
        levels.append(new)
    return [t for lv in levels for t in lv]


def integrally_closed_axioms() -> list[QuasiInequality]:
    return [
        parse_quasi("x*y <= x => y <= 1"),
        parse_quasi("y*x <= x => y <= 1"),
    ]


def generate_simple(depth: int = 2, nvars: int = 3, signature=POMONOID_SIGNATURE) -> list[QuasiInequality]:
    """A deterministic list of pairwise distinct simple quasi-inequalities.

    The integrally closed axioms come first.  Then three shapes follow.
    Unconditional inequalities ``p <= q`` use terms up to ``depth``.
    One-premise formulas ``t <= r => p <= q`` take ``t`` up to ``depth``
    and ``p, q`` one level shallower.  Two-premise formulas
    ``t1 <= r & t2 <= r => p <= r`` take all three terms one level
    shallower.  Here ``r`` is a variable or a nucleus term.  A formula is
    dropped when its premise and conclusion masks on the probe repeat an
    earlier one.
    """
    if depth > 2 or nvars > 3:
        raise ValueError("generation is limited to depth 2 and 3 variables")
    vs = VARIABLES[:nvars]
    pool = term_pool(depth, vs, signature)
    small = term_pool(max(depth - 1, 0), vs, signature)
    A, gm = probe_algebra(signature)
    ev = TableEvaluator(A, vs, gm)
    rhs = [t for t in pool if t.op == "var"]
    if "g" in signature and depth > 0:
        seen = {ev.values(t) for t in rhs}
        for t in small:
            cand = t if t.op == "g" else g(t)
            key = ev.values(cand)
            if key not in seen:
                seen.add(key)
                rhs.append(cand)
    out: list[QuasiInequality] = []
    keys: set = set()

    def emit(prem: tuple[Inequality, ...], concl: Inequality):
        pm = ev.full
        for p in prem:
            pm &= ev.mask(p)
        key = (pm, ev.mask(concl))
        if key not in keys:
            keys.add(key)
            out.append(QuasiInequality(prem, concl))

    for phi in integrally_closed_axioms():
        if set(phi.variables()) <= set(vs):
            emit(phi.premises, phi.conclusion)
    for p, q in itertools.product(pool, pool):
        emit((), Inequality(p, q))
    concl = [Inequality(p, q) for p, q in itertools.product(small, small)]
    for t, r in itertools.product(pool, rhs):
        prem = (Inequality(t, r),)
        for c in concl:
            emit(prem, c)
    for r in rhs:
        for t1, t2 in itertools.combinations(small, 2):
            prem = (Inequality(t1, r), Inequality(t2, r))
            for p in small:
                emit(prem, Inequality(p, r))
    return out


# ---------------------------------------------------------------- square condition


@dataclass(frozen=True)
class SquareTable:
    """``rows[i][j]`` is the tuple of variable indices in cell (i, j)."""

    n: int
    nvars: int
    rows: tuple[tuple[tuple[int, ...], ...], ...]
    commutative: bool

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(v for row in self.rows for v in row[j]) for j in range(self.n)]

    def __str__(self):
        def cell(c):
            return "".join(f"x{v + 1}" for v in c) or "."

        return " / ".join(" ".join(cell(c) for c in row) for row in self.rows)


def _rows(n: int, nvars: int, commutative: bool) -> list[tuple[tuple[int, ...], ...]]:
    if commutative:
        out = []
        for cols in itertools.product(range(n), repeat=nvars):
            out.append(tuple(tuple(v for v in range(nvars) if cols[v] == j) for j in range(n)))
        return out
    out = []
    # cut points 0 <= c1 <= ... <= c_{n-1} <= nvars split x1..x_nvars into consecutive blocks
    for cuts in itertools.combinations_with_replacement(range(nvars + 1), n - 1):
        bounds = (0,) + cuts + (nvars,)
        out.append(tuple(tuple(range(bounds[j], bounds[j + 1])) for j in range(n)))
    return out


def square_tables(n: int, commutative: bool = True, nvars: Optional[int] = None) -> Iterator[SquareTable]:
    """All n x n tables over ``nvars`` variables (default n).

    Commutative tables are taken up to the order of rows; in the
    non-commutative reading row order changes column products, so
    ordered row sequences are produced.
    """
    if n > 4:
        raise ValueError("tables are limited to n <= 4")
    k = n if nvars is None else nvars
    rows = _rows(n, k, commutative)
    combos = itertools.combinations_with_replacement(rows, n) if commutative else itertools.product(rows, repeat=n)
    for combo in combos:
        yield SquareTable(n, k, tuple(combo), commutative)


def _product(A: FinitePomonoid, xs) -> int:
    acc = A.unit
    for x in xs:
        acc = A.mult[acc][x]
    return acc


def _violates(A: FinitePomonoid, pi: int, cols: Sequence[int]) -> Optional[int]:
    """An upper bound y of all column values with pi not <= y, if one exists."""
    le = A.le
    for y in A.elems:
        if all(le[c][y] for c in cols) and not le[pi][y]:
            return y
    return None


@dataclass
class SquareWitness:
    table: SquareTable
    assignment: tuple[int, ...]
    y: int

    def __str__(self):
        vals = ", ".join(f"x{i + 1}={a}" for i, a in enumerate(self.assignment))
        return f"table {self.table}; {vals}; y={self.y}"


def square_condition_at(A: FinitePomonoid, n: int, nvars: int, commutative: bool) -> Optional[SquareWitness]:
    """First violation among n x n tables over nvars variables."""
    rows = _rows(n, nvars, commutative)
    for xs in itertools.product(A.elems, repeat=nvars):
        pi = _product(A, xs)
        # distinct per-row cell products; tables only matter through these
        row_vals: dict[tuple[int, ...], tuple] = {}
        for r in rows:
            row_vals.setdefault(tuple(_product(A, [xs[v] for v in cell]) for cell in r), r)
        keys = list(row_vals)
        combos = itertools.combinations_with_replacement(keys, n) if commutative else itertools.product(keys, repeat=n)
        seen = set()
        for combo in combos:
            cols = tuple(_product(A, [rv[j] for rv in combo]) for j in range(n))
            ckey = tuple(sorted(cols))
            if ckey in seen:
                continue
            seen.add(ckey)
            y = _violates(A, pi, cols)
            if y is not None:
                table = SquareTable(n, nvars, tuple(row_vals[k] for k in combo), commutative)
                return SquareWitness(table, xs, y)
    return None


def check_square_condition(A: FinitePomonoid, n_max: int = 3, commutative: Optional[bool] = None,
                           nvars_max: Optional[int] = None) -> Optional[SquareWitness]:
    """The square condition for tables of size <= n_max over <= nvars_max variables."""
    if commutative is None:
        commutative = is_commutative(A)
    for n in range(1, n_max + 1):
        for k in range(1, (n if nvars_max is None else nvars_max) + 1):
            w = square_condition_at(A, n, k, commutative)
            if w is not None:
                return w
    return None


def check_power_bridge(A: FinitePomonoid, n_max: int = 3, L: int = 3, fp: Optional[FreePreimage] = None):
    """Compare the square condition with w^n <= [a]^n => w <= [a] in the commutative unital preimage.

    Both sides are evaluated separately for each exponent n <= n_max and
    word length m <= L (tables over m variables); any pair (n, m) where
    exactly one side fails is returned as a divergence.
    """
    if not is_commutative(A):
        raise ValueError("the power bridge is stated for commutative pomonoids")
    fp = fp or FreePreimage(A, Variant("umon", True))
    for n in range(1, n_max + 1):
        for m in range(1, L + 1):
            table_side = square_condition_at(A, n, m, True)
            word_side = None
            for w in itertools.combinations_with_replacement(list(A.elems), m):
                for a in A.elems:
                    if fp.le(w * n, (a,) * n) and not fp.le(w, (a,)):
                        word_side = (w, a)
                        break
                if word_side:
                    break
            if (table_side is None) != (word_side is None):
                return {"n": n, "m": m, "table": table_side, "word": word_side}
    return None


# ---------------------------------------------------------------- Id cancellativity


@dataclass
class CycleViolation:
    side: str
    xs: tuple[int, ...]
    y: int
    zs: tuple[int, ...]  # zs[i] is the z paired with x_{i+1} -> x_{i+2}

    def __str__(self):
        n = len(self.xs)
        parts = []
        for i in range(n):
            x, nx, z = self.xs[i], self.xs[(i + 1) % n], self.zs[i]
            if self.side == "left":
                parts.append(f"{x}*{self.y} <= {nx}*{z}")
            else:
                parts.append(f"{self.y}*{x} <= {z}*{nx}")
        return " & ".join(parts) + f" but y={self.y} is below none of {list(self.zs)}"


def cycle_violation(S: FinitePomonoid, n: int, side: str = "left") -> Optional[CycleViolation]:
    """A falsifying assignment of the n-th cycle sentence, found as a closed walk."""
    le, m, E = S.le, S.mult, list(S.elems)
    for y in E:
        edges: dict[int, list[tuple[int, int]]] = {x: [] for x in E}
        for x, nx, z in itertools.product(E, E, E):
            if le[y][z]:
                continue
            ok = le[m[x][y]][m[nx][z]] if side == "left" else le[m[y][x]][m[z][nx]]
            if ok:
                edges[x].append((nx, z))
        for start in E:
            # paths[k][v] = (prev vertex, label) for walks of length k from start
            layer = {start: None}
            parents = []
            for _ in range(n):
                nxt = {}
                for v in layer:
                    for w, z in edges[v]:
                        nxt.setdefault(w, (v, z))
                parents.append(nxt)
                layer = nxt
            if start in layer:
                xs, zs = [], []
                v = start
                for k in range(n - 1, -1, -1):
                    pv, z = parents[k][v]
                    xs.append(pv)
                    zs.append(z)
                    v = pv
                xs.reverse()
                zs.reverse()
                return CycleViolation(side, tuple(xs), y, tuple(zs))
    return None


@dataclass
class IdCancelReport:
    n_max: int
    cycle_violation: Optional[CycleViolation]
    id_cancellative: bool
    id_witness: Optional[tuple]
    constructed: Optional[tuple] = None  # (a, b, c) antichains from the cycle violation
    constructed_ok: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def criterion_holds(self) -> bool:
        return self.cycle_violation is None

    @property
    def agree(self) -> bool:
        return self.criterion_holds == self.id_cancellative and self.constructed_ok


def id_algebra(S: FinitePomonoid) -> tuple[FinitePomonoid, list[Antichain], IdAlgebra]:
    idl = IdAlgebra(FiniteCarrier(S))
    B, elems = idl.as_pomonoid
    return B, elems, idl


def check_id_cancel_criterion(S: FinitePomonoid, n_max: Optional[int] = None) -> IdCancelReport:
    """Cycle sentences up to n_max (default |Id S|) against direct cancellativity of Id S."""
    B, elems, idl = id_algebra(S)
    if n_max is None:
        n_max = B.n
    viol = None
    for n in range(1, n_max + 1):
        for side in ("left", "right"):
            viol = cycle_violation(S, n, side)
            if viol:
                break
        if viol:
            break
    wit = cancellativity_witness(B)
    rep = IdCancelReport(n_max, viol, wit is None, None)
    if wit is not None:
        side, a, b, x = wit
        rep.id_witness = (side, elems[a], elems[b], elems[x])
    if viol is not None:
        a = idl.normalize(viol.xs)
        b = idl.down(viol.y)
        c = idl.normalize(viol.zs)
        rep.constructed = (a, b, c)
        if viol.side == "left":
            premise = idl.le(idl.mult(a, b), idl.mult(a, c))
        else:
            premise = idl.le(idl.mult(b, a), idl.mult(c, a))
        rep.constructed_ok = premise and not idl.le(b, c)
        if not rep.constructed_ok:
            rep.notes.append("constructed triple is not a cancellation failure")
    return rep


def check_xn_yn(A: FinitePomonoid, n_max: int = 4) -> Optional[tuple[int, int, int]]:
    """x^n <= y^n implies x <= y; returns (n, x, y) on failure."""
    for n in range(1, n_max + 1):
        for x, y in itertools.product(A.elems, A.elems):
            if A.le[_product(A, [x] * n)][_product(A, [y] * n)] and not A.le[x][y]:
                return (n, x, y)
    return None


def check_xn_le_one(A: FinitePomonoid, n_max: int = 3) -> Optional[tuple[int, int]]:
    """x^n <= 1 implies x <= 1; returns (n, x) on failure."""
    for n in range(1, n_max + 1):
        for x in A.elems:
            if A.le[_product(A, [x] * n)][A.unit] and not A.le[x][A.unit]:
                return (n, x)
    return None


def id_cancellativity_in_fragment(A: FinitePomonoid, L: int = 4, max_gens: int = 2):
    """Search a*b <= a*c with b not <= c (and the right dual) in Id of the unital preimage.

    Antichains have at most ``max_gens`` generators of length <= L // 2,
    so every product stays within length L.  Returns (side, a, b, c) or None.
    """
    from .downsets import WordCarrier

    idl = IdAlgebra(WordCarrier(A, L))
    elems = idl.all_antichains(max_gens=max_gens, max_len=L // 2)
    for a in elems:
        for b, c in itertools.product(elems, elems):
            if idl.le(b, c):
                continue
            if idl.le(idl.mult(a, b), idl.mult(a, c)):
                return ("left", a, b, c)
            if idl.le(idl.mult(b, a), idl.mult(c, a)):
                return ("right", a, b, c)
    return None
