"""Factor statistics computed directly on certified prefixes.

For a factor set F of length n, the quantities of interest are:

* factor count p(n) = |F|
* cyclic count c(n): rotation classes meeting F
* abelian count a(n): distinct letter-count vectors over F
* full-class count L(n): rotation classes entirely inside F

L is the quantity the rest of the package cross-checks by algebraic rank
and by automata counting.  All functions are pure; rows can be computed
in parallel safely.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    EmptyWord,
    LengthExceedsPrefix,
    UncertifiedData,
    WindowTooSmall,
)
from .words import Prefix, saturation_window


@dataclass(frozen=True)
class FactorSet:
    n: int
    members: frozenset[str]
    window: int
    certified: bool


@dataclass(frozen=True)
class ConjugacyClass:
    canonical: str
    members: frozenset[str]


@dataclass(frozen=True)
class ComplexityRow:
    n: int
    p: int
    c: int
    a: int
    L: int
    certified: bool


def factor_set(p, n: int, *, certified: bool = False) -> FactorSet:
    """All length-n blocks of the prefix."""
    s = p.letters if isinstance(p, Prefix) else p
    if n < 0:
        raise ValueError("factor length must be nonnegative")
    if n > len(s):
        raise LengthExceedsPrefix("length %d exceeds prefix of %d" % (n, len(s)))
    members = frozenset(s[i : i + n] for i in range(len(s) - n + 1))
    return FactorSet(n, members, len(s), certified)


def saturated_factor_set(generator, n: int, **window_opts) -> FactorSet:
    """Factor set at a doubling-stable window, labeled with the generator's
    certification status."""
    w, certified = saturation_window(generator, n, **window_opts)
    return factor_set(generator.prefix(w), n, certified=certified)


def _rank_seq(v: str, order: Optional[Mapping[str, int]]):
    if order is None:
        return v
    try:
        return tuple(order[c] for c in v)
    except KeyError as exc:
        raise KeyError("letter %s has no declared rank" % exc) from None


def least_rotation(v: str, order: Optional[Mapping[str, int]] = None) -> str:
    """Lexicographically least cyclic rotation (Booth's algorithm).

    `order` maps letters to ranks; omitted, codepoint order is used.
    """
    if not v:
        raise EmptyWord("the empty word has no rotations")
    seq = _rank_seq(v, order)
    s = seq + seq
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    k %= len(v)
    return v[k:] + v[:k]


def rotations(v: str) -> list[str]:
    return [v[i:] + v[:i] for i in range(len(v))]


def conjugacy_class(v: str, order: Optional[Mapping[str, int]] = None) -> ConjugacyClass:
    return ConjugacyClass(least_rotation(v, order), frozenset(rotations(v)))


def is_primitive(v: str) -> bool:
    """A word is primitive iff it occurs exactly twice in its own square."""
    if not v:
        raise EmptyWord("primitivity undefined for the empty word")
    return (v + v).find(v, 1) == len(v)


def primitive_root(v: str) -> str:
    if not v:
        raise EmptyWord("the empty word has no primitive root")
    period = (v + v).find(v, 1)
    return v[:period]


def lie_complexity(fs: FactorSet) -> int:
    """Number of rotation classes entirely contained in the factor set."""
    if fs.n == 0:
        return 1
    members = fs.members
    full = set()
    for v in members:
        canon = least_rotation(v)
        if canon in full:
            continue
        if all(r in members for r in rotations(v)):
            full.add(canon)
    return len(full)


def cyclic_complexity(fs: FactorSet) -> int:
    """Number of rotation classes meeting the factor set."""
    if fs.n == 0:
        return 1
    return len({least_rotation(v) for v in fs.members})


def abelian_complexity(fs: FactorSet) -> int:
    """Number of distinct letter-count vectors over the factor set."""
    return len({frozenset(Counter(v).items()) for v in fs.members})


def complexity_row(generator, n: int, **window_opts) -> ComplexityRow:
    fs = saturated_factor_set(generator, n, **window_opts)
    return ComplexityRow(
        n=n,
        p=len(fs.members),
        c=cyclic_complexity(fs),
        a=abelian_complexity(fs),
        L=lie_complexity(fs),
        certified=fs.certified,
    )


def complexity_table(generator, ns: Iterable[int], **window_opts) -> list[ComplexityRow]:
    """Rows for each n, reusing the (monotone) saturation window."""
    rows = []
    start = window_opts.pop("start", None)
    w = start or 1 << 10
    for n in sorted(ns):
        window, certified = saturation_window(generator, n, start=w, **window_opts)
        w = max(w, window)
        fs = factor_set(generator.prefix(window), n, certified=certified)
        rows.append(
            ComplexityRow(
                n=n,
                p=len(fs.members),
                c=cyclic_complexity(fs),
                a=abelian_complexity(fs),
                L=lie_complexity(fs),
                certified=fs.certified,
            )
        )
    return rows


def first_difference_margin(
    row: ComplexityRow,
    prev_p: int,
    *,
    prev_certified: bool = True,
    strict: bool = True,
) -> int:
    """Slack in the first-difference bound: p(n) - p(n-1) + 1 - L(n).

    Nonnegative whenever the factor data is complete.  In strict mode,
    uncertified rows are refused rather than silently trusted.
    """
    if strict and not (row.certified and prev_certified):
        raise UncertifiedData(
            "margin at n=%d needs certified factor data (pass strict=False to override)"
            % row.n
        )
    return row.p - prev_p + 1 - row.L


def unbounded_exponent_scan(
    generator,
    max_root_len: int,
    exponent: int,
    window: int,
    order: Optional[Mapping[str, int]] = None,
) -> list[str]:
    """Primitive roots y with |y| <= max_root_len whose exponent-th power
    occurs in the window; one canonical rotation per class, sorted."""
    if exponent < 2:
        raise ValueError("exponent must be at least 2")
    if window < exponent * max_root_len:
        raise WindowTooSmall(
            "window %d cannot hold a root of length %d at exponent %d"
            % (window, max_root_len, exponent)
        )
    s = generator.prefix(window).letters
    found = {}
    for ell in range(1, max_root_len + 1):
        for y in sorted({s[i : i + ell] for i in range(len(s) - ell + 1)}):
            if not is_primitive(y):
                continue
            if y * exponent in s:
                canon = least_rotation(y, order)
                found.setdefault((ell, _rank_seq(canon, order)), canon)
    return [found[key] for key in sorted(found)]


def per_w_estimate(
    generator,
    max_root_len: int,
    exponent_schedule: Sequence[int],
    window: int,
    order: Optional[Mapping[str, int]] = None,
) -> int:
    """Count of root classes that survive the top of the exponent schedule."""
    top = max(exponent_schedule)
    return len(unbounded_exponent_scan(generator, max_root_len, top, window, order))


# ---------------------------------------------------------------------------
# tabular output


def rows_to_tsv(rows: Sequence[ComplexityRow]) -> str:
    out = ["n\tp\tc\ta\tL\tcertified"]
    for r in rows:
        out.append(
            "%d\t%d\t%d\t%d\t%d\t%s" % (r.n, r.p, r.c, r.a, r.L, str(r.certified).lower())
        )
    return "\n".join(out) + "\n"


def rows_to_json(rows: Sequence[ComplexityRow]) -> str:
    payload = {
        "rows": [
            {"n": r.n, "p": r.p, "c": r.c, "a": r.a, "L": r.L, "certified": r.certified}
            for r in rows
        ]
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
