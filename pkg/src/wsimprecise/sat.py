"""Monotone 3CNF formulas, their rectilinear layouts, and a brute-force oracle.

Layout text::

    order 1 2 3
    clause 1 side=top parent=none legs=1 2 3

Clause ids are 1-based indices into the formula's clause list.  ``legs`` lists
the variables the clause's left, middle and right legs attach to.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class ParseError(ValueError):
    """Malformed or non-monotone formula, or an invalid layout."""


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Clause:
    polarity: Polarity
    vars: tuple

    def satisfied_by(self, values) -> bool:
        want = self.polarity is Polarity.POSITIVE
        return any(values[v - 1] == want for v in self.vars)


@dataclass(frozen=True)
class Formula:
    m: int
    clauses: tuple

    def evaluate(self, values) -> bool:
        return all(c.satisfied_by(values) for c in self.clauses)


def parse_formula(text: str) -> Formula:
    header = None
    clauses = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 1 or header[1] < 0:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(_make_clause(pending, header[0], lineno))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if pending:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return Formula(header[0], tuple(clauses))


def _make_clause(lits, m, lineno) -> Clause:
    if not 1 <= len(lits) <= 3:
        raise ParseError(f"line {lineno}: clause must have 1 to 3 literals, got {len(lits)}")
    if any(abs(l) > m for l in lits):
        raise ParseError(f"line {lineno}: variable index out of range 1..{m}")
    if all(l > 0 for l in lits):
        pol = Polarity.POSITIVE
    elif all(l < 0 for l in lits):
        pol = Polarity.NEGATIVE
    else:
        raise ParseError(f"line {lineno}: mixed-polarity clause {lits}")
    return Clause(pol, tuple(abs(l) for l in lits))


def format_formula(f: Formula) -> str:
    lines = [f"p cnf {f.m} {len(f.clauses)}"]
    for c in f.clauses:
        sign = 1 if c.polarity is Polarity.POSITIVE else -1
        lines.append(" ".join(str(sign * v) for v in c.vars) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# layouts


@dataclass(frozen=True)
class ClauseLayout:
    clause: int                 # 1-based clause id
    side: str                   # "top" or "bottom"
    parent: Optional[int]
    legs: tuple                 # (left, middle, right) variable indices


@dataclass(frozen=True)
class Layout:
    order: tuple                # variables left to right
    clauses: tuple              # ClauseLayout, one per formula clause

    def position(self, var: int) -> int:
        return self.order.index(var)

    def clause_layout(self, cid: int) -> ClauseLayout:
        for c in self.clauses:
            if c.clause == cid:
                return c
        raise KeyError(cid)

    def children(self, cid: Optional[int], side: str) -> list:
        return [c for c in self.clauses if c.parent == cid and c.side == side]


def parse_layout(text: str, f: Formula) -> Layout:
    order = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "order":
            try:
                order = tuple(int(t) for t in parts[1:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad variable order") from None
        elif parts[0] == "clause":
            entries.append(_parse_clause_line(lineno, line))
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if order is None:
        raise ParseError("layout is missing the 'order' line")
    lay = Layout(order, tuple(entries))
    validate_layout(lay, f)
    return lay


def _parse_clause_line(lineno, line) -> ClauseLayout:
    head, _, rest = line.partition(" ")
    toks = rest.split()
    try:
        cid = int(toks[0])
    except (IndexError, ValueError):
        raise ParseError(f"line {lineno}: clause line needs an integer id") from None
    fields = {}
    key = None
    for t in toks[1:]:
        if "=" in t:
            key, _, val = t.partition("=")
            fields[key] = [val] if val else []
        elif key is not None:
            fields[key].append(t)
        else:
            raise ParseError(f"line {lineno}: stray token {t!r}")
    try:
        side = fields["side"][0]
        parent_tok = fields["parent"][0]
        legs = tuple(int(v) for v in fields["legs"])
    except (KeyError, IndexError, ValueError):
        raise ParseError(f"line {lineno}: clause line needs side=, parent= and legs=") from None
    if side not in ("top", "bottom"):
        raise ParseError(f"line {lineno}: side must be top or bottom")
    parent = None if parent_tok == "none" else int(parent_tok)
    return ClauseLayout(cid, side, parent, legs)


def validate_layout(lay: Layout, f: Formula) -> None:
    if sorted(lay.order) != list(range(1, f.m + 1)):
        raise ParseError("'order' must be a permutation of the variables")
    ids = [c.clause for c in lay.clauses]
    if sorted(ids) != list(range(1, len(f.clauses) + 1)):
        raise ParseError("every clause must appear exactly once in the layout")
    by_id = {c.clause: c for c in lay.clauses}
    pos = {v: i for i, v in enumerate(lay.order)}
    for c in lay.clauses:
        clause = f.clauses[c.clause - 1]
        want = "top" if clause.polarity is Polarity.POSITIVE else "bottom"
        if c.side != want:
            raise ParseError(f"clause {c.clause}: {clause.polarity.value} clauses lie on the {want}")
        if len(c.legs) != 3:
            raise ParseError(f"clause {c.clause}: legs must name exactly 3 variables")
        if sorted(c.legs) != sorted(_padded(clause.vars)):
            raise ParseError(f"clause {c.clause}: legs do not match the clause's variables")
        p = [pos[v] for v in c.legs]
        if not p[0] <= p[1] <= p[2]:
            raise ParseError(f"clause {c.clause}: leg order inconsistent with variable order")
        if c.parent is not None:
            if c.parent not in by_id:
                raise ParseError(f"clause {c.clause}: unknown parent {c.parent}")
            if by_id[c.parent].side != c.side:
                raise ParseError(f"clause {c.clause}: parent lies on the other side")
    # parent links must form a forest
    for c in lay.clauses:
        seen = set()
        cur = c
        while cur.parent is not None:
            if cur.clause in seen:
                raise ParseError(f"clause {c.clause}: cyclic nesting")
            seen.add(cur.clause)
            cur = by_id[cur.parent]

    def span(c):
        return pos[c.legs[0]], pos[c.legs[2]]

    def ancestors(c):
        out = []
        while c.parent is not None:
            c = by_id[c.parent]
            out.append(c.clause)
        return out

    for a in lay.clauses:
        for b in lay.clauses:
            if a.clause >= b.clause or a.side != b.side:
                continue
            la, ra = span(a)
            lb, rb = span(b)
            if a.clause in ancestors(b) or b.clause in ancestors(a):
                outer, inner = (a, b) if a.clause in ancestors(b) else (b, a)
                lo, ro = span(outer)
                mo = pos[outer.legs[1]]
                li, ri = span(inner)
                if not ((lo <= li and ri <= mo) or (mo <= li and ri <= ro)):
                    raise ParseError(
                        f"clause {inner.clause} does not fit inside a pocket of clause {outer.clause}")
            elif not (ra <= lb or rb <= la):
                raise ParseError(f"clauses {a.clause} and {b.clause} interleave")


def _padded(vars_):
    """Clauses with fewer than 3 literals repeat their last variable."""
    v = list(vars_)
    while len(v) < 3:
        v.append(v[-1])
    return tuple(v)


def format_layout(lay: Layout) -> str:
    lines = ["order " + " ".join(map(str, lay.order))]
    for c in sorted(lay.clauses, key=lambda c: c.clause):
        parent = "none" if c.parent is None else str(c.parent)
        lines.append(f"clause {c.clause} side={c.side} parent={parent} "
                     f"legs={' '.join(map(str, c.legs))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# brute force


class BudgetExceeded(RuntimeError):
    pass


MAX_VARS = 24


def _assignment(m: int, k: int) -> tuple:
    # variable 1 is the most significant bit; True sorts before False
    return tuple(not (k >> (m - 1 - i)) & 1 for i in range(m))


def brute_force_sat(f: Formula) -> Optional[tuple]:
    """Lexicographically first satisfying assignment (True before False)."""
    if f.m > MAX_VARS:
        raise BudgetExceeded(f"{f.m} variables exceed the enumeration budget of {MAX_VARS}")
    for k in range(1 << f.m):
        values = _assignment(f.m, k)
        if f.evaluate(values):
            return values
    return None


def random_laminar(rng, m: int, n_clauses: int, tries: int = 1000) -> tuple:
    """Random monotone formula over ``m`` variables with a valid laminar
    layout, by rejection sampling.  ``rng`` is a ``random.Random``.

    Legs are drawn as sorted positions with repetition, so clauses such as
    (x or x or y) occur.  Each clause's parent is the tightest same-side
    clause with a pocket containing its span.
    """
    order = tuple(range(1, m + 1))
    for _ in range(tries):
        clauses, entries = [], []
        for cid in range(1, n_clauses + 1):
            legs = tuple(sorted(rng.randint(1, m) for _ in range(3)))
            pol = rng.choice((Polarity.POSITIVE, Polarity.NEGATIVE))
            clauses.append(Clause(pol, legs))
            entries.append((cid, "top" if pol is Polarity.POSITIVE else "bottom", legs))
        f = Formula(m, tuple(clauses))
        lays = []
        for cid, side, legs in entries:
            best = None
            for oid, oside, olegs in entries:
                if oid == cid or oside != side:
                    continue
                lo, mo, ro = olegs
                li, ri = legs[0], legs[2]
                if (lo <= li and ri <= mo) or (mo <= li and ri <= ro):
                    if (li, ri) == (lo, ro):
                        continue
                    width = ro - lo
                    if best is None or width < best[0]:
                        best = (width, oid)
            lays.append(ClauseLayout(cid, side, None if best is None else best[1], legs))
        lay = Layout(order, tuple(lays))
        try:
            validate_layout(lay, f)
        except ParseError:
            continue
        return f, lay
    raise RuntimeError("no laminar layout found")
