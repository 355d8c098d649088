"""Compiling formulas to multi-track automata.

Every connective maps to an automaton operation: comparisons and
sequence atoms to small primitive automata, boolean connectives to
products and complements, quantifiers to projection.  Compound terms
are flattened first: each `+`, `-` or constant introduces a temporary
track constrained by an adder or constant automaton, and temporaries
are projected away once the atom is assembled.  Natural subtraction is
strict, so an atom mentioning a-b is false whenever b exceeds a.

`build_predicate_library` assembles the conjugacy and counting
predicates for one sequence.  Only the factor-equality predicate is
compiled from its formula; the rest reuse it through
`apply_predicate`, which substitutes terms into an already compiled
automaton by renaming tracks and adding constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence

from . import automata as au
from . import formulas as fo
from .errors import BaseMismatch, UnboundSequence, UnboundVariable, UnknownLetter
from .words import Dfao


@dataclass(frozen=True)
class CompileConfig:
    state_cap: int = 10**6


_DEFAULT = CompileConfig()


class _Temps:
    """Fresh track names for flattened subterms; user variables never
    start with an underscore once lexed, so no collisions."""

    def __init__(self):
        self.count = 0
        self.names: list[str] = []

    def fresh(self) -> str:
        self.count += 1
        name = "_t%d" % self.count
        self.names.append(name)
        return name


def _flatten(
    term: fo.Term, base: int, temps: _Temps, constraints: list[au.MultiTrackDfa]
) -> str:
    if isinstance(term, fo.Var):
        return term.name
    if isinstance(term, fo.Const):
        v = temps.fresh()
        constraints.append(au.const_predicate(v, term.value, base))
        return v
    left = _flatten(term.left, base, temps, constraints)
    right = _flatten(term.right, base, temps, constraints)
    if left == right:
        # adders need distinct tracks; duplicate one operand
        copy = temps.fresh()
        constraints.append(au.eq_predicate(right, copy, base))
        right = copy
    v = temps.fresh()
    if isinstance(term, fo.Plus):
        constraints.append(au.add_predicate(left, right, v, base))
    else:
        # v + right = left, so v = left - right when it exists at all
        constraints.append(au.add_predicate(v, right, left, base))
    return v


def _discharge(
    core: au.MultiTrackDfa,
    constraints: list[au.MultiTrackDfa],
    temps: _Temps,
    cap: int,
) -> au.MultiTrackDfa:
    out = au.conjoin([core] + constraints, cap) if constraints else core
    for name in reversed(temps.names):
        out = au.project(out, name, cap)
    return out


class _Compiler:
    def __init__(self, sequences: Mapping[str, Dfao], base: int, config: CompileConfig):
        self.seqs = sequences
        self.base = base
        self.cap = config.state_cap

    def compile(self, f: fo.Formula) -> au.MultiTrackDfa:
        if isinstance(f, (fo.Eq, fo.Lt, fo.Leq)):
            return self.comparison(f)
        if isinstance(f, fo.SeqIs):
            return self.seq_is(f)
        if isinstance(f, (fo.SeqEq, fo.SeqLetterLt)):
            return self.seq_pair(f)
        if isinstance(f, fo.Not):
            return au.complement(self.compile(f.body))
        if isinstance(f, (fo.And, fo.Or)):
            parts = [self.compile(g) for g in _chain(f, type(f))]
            if isinstance(f, fo.And):
                return au.conjoin(parts, self.cap)
            parts.sort(key=lambda a: a.n_states)
            out = parts[0]
            for nxt in parts[1:]:
                out = au.combine(out, nxt, "or", self.cap)
            return out
        if isinstance(f, fo.Implies):
            return au.combine(
                au.complement(self.compile(f.left)), self.compile(f.right), "or", self.cap
            )
        if isinstance(f, fo.Exists):
            out = self.compile(f.body)
            for name in f.names:
                out = au.project(out, name, self.cap)
            return out
        if isinstance(f, fo.Forall):
            out = au.complement(self.compile(f.body))
            for name in f.names:
                out = au.project(out, name, self.cap)
            return au.complement(out)
        raise TypeError("not a formula: %r" % (f,))

    def dfao(self, name: str) -> Dfao:
        try:
            return self.seqs[name]
        except KeyError:
            raise UnboundSequence(
                "sequence %r is not bound (have: %s)"
                % (name, ", ".join(sorted(self.seqs)) or "none")
            ) from None

    def comparison(self, f) -> au.MultiTrackDfa:
        temps = _Temps()
        constraints: list[au.MultiTrackDfa] = []
        left = _flatten(f.left, self.base, temps, constraints)
        right = _flatten(f.right, self.base, temps, constraints)
        if left == right:
            if isinstance(f, fo.Lt):
                core = au.reject_all(self.base, (left,))
            else:
                core = au.accept_all(self.base, (left,))
        elif isinstance(f, fo.Eq):
            core = au.eq_predicate(left, right, self.base)
        elif isinstance(f, fo.Lt):
            core = au.lt_predicate(left, right, self.base)
        else:
            core = au.leq_predicate(left, right, self.base)
        return _discharge(core, constraints, temps, self.cap)

    def seq_is(self, f: fo.SeqIs) -> au.MultiTrackDfa:
        temps = _Temps()
        constraints: list[au.MultiTrackDfa] = []
        pos = _flatten(f.pos, self.base, temps, constraints)
        core = au.seq_letter_predicate(self.dfao(f.seq), pos, f.letter)
        return _discharge(core, constraints, temps, self.cap)

    def seq_pair(self, f) -> au.MultiTrackDfa:
        d_left = self.dfao(f.left_seq)
        d_right = self.dfao(f.right_seq)
        if isinstance(f, fo.SeqEq):
            rel = lambda a, b: a == b
        else:
            if d_left.letters != d_right.letters:
                raise UnknownLetter(
                    "letter order comparison needs one shared alphabet, got %r and %r"
                    % (d_left.letters, d_right.letters)
                )
            order = {c: k for k, c in enumerate(d_left.letters)}
            rel = lambda a, b: order[a] < order[b]
        temps = _Temps()
        constraints: list[au.MultiTrackDfa] = []
        lpos = _flatten(f.left_pos, self.base, temps, constraints)
        rpos = _flatten(f.right_pos, self.base, temps, constraints)
        core = _seq_pair_automaton(d_left, lpos, d_right, rpos, rel)
        return _discharge(core, constraints, temps, self.cap)


def _chain(f: fo.Formula, cls) -> list[fo.Formula]:
    if isinstance(f, cls):
        return _chain(f.left, cls) + _chain(f.right, cls)
    return [f]


def _seq_pair_automaton(
    d_left: Dfao, lpos: str, d_right: Dfao, rpos: str, rel: Callable[[str, str], bool]
) -> au.MultiTrackDfa:
    """Automaton for rel(left[lpos], right[rpos]), built as a product of
    the two output automata.  lpos == rpos reads one shared track."""
    if d_left.base != d_right.base:
        raise BaseMismatch("bases %d and %d" % (d_left.base, d_right.base))
    base = d_left.base
    lt, li, lo = au.padded_dfao(d_left)
    rt, ri, ro = au.padded_dfao(d_right)
    if lpos == rpos:
        tracks = (lpos,)
        pairs = [(e, e) for e in range(base)]
    else:
        tracks = tuple(sorted((lpos, rpos)))
        if tracks[0] == lpos:
            pairs = [divmod(sym, base) for sym in range(base * base)]
        else:
            pairs = [divmod(sym, base)[::-1] for sym in range(base * base)]
    index = {(li, ri): 0}
    order = [(li, ri)]
    rows = []
    for p, q in order:
        row = []
        for dl, dr in pairs:
            nxt = (lt[p][dl], rt[q][dr])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(i for i, (p, q) in enumerate(order) if rel(lo[p], ro[q]))
    return au.minimize(au.MultiTrackDfa(base, tracks, tuple(rows), accepting, 0))


def compile_formula(
    f: fo.Formula,
    sequences: Optional[Mapping[str, Dfao]] = None,
    base: Optional[int] = None,
    config: CompileConfig = _DEFAULT,
) -> au.MultiTrackDfa:
    """Compile to an automaton whose tracks are the free variables."""
    seqs = dict(sequences or {})
    used = fo.sequence_names(f)
    missing = used - seqs.keys()
    if missing:
        raise UnboundSequence(
            "unbound sequence%s: %s"
            % ("s" if len(missing) > 1 else "", ", ".join(sorted(missing)))
        )
    bases = {seqs[s].base for s in used}
    if len(bases) > 1:
        raise BaseMismatch("sequences use bases %s" % sorted(bases))
    if base is None:
        if not bases:
            raise ValueError("formula reads no sequence; pass base explicitly")
        base = bases.pop()
    elif bases and base not in bases:
        raise BaseMismatch("base %d but sequences use base %d" % (base, bases.pop()))
    out = _Compiler(seqs, base, config).compile(f)
    assert set(out.tracks) == set(fo.free_vars(f))
    return au.normalize_padding(out, config.state_cap)


def apply_predicate(
    auto: au.MultiTrackDfa,
    args: Mapping[str, fo.Term],
    config: CompileConfig = _DEFAULT,
) -> au.MultiTrackDfa:
    """Substitute terms into a compiled predicate.

    Each parameter track is renamed to its argument variable, or to a
    fresh constrained track for a compound argument; temporaries are
    then projected out.  Equivalent to inlining the substitution into
    the predicate's formula and recompiling, but much cheaper."""
    base = auto.base
    cap = config.state_cap
    temps = _Temps()
    constraints: list[au.MultiTrackDfa] = []
    rename: dict[str, str] = {}
    for param, term in args.items():
        if isinstance(term, fo.Var):
            target = term.name
        else:
            target = _flatten(term, base, temps, constraints)
        if target != param:
            rename[param] = target
    out = au.rename_tracks(auto, rename, cap) if rename else auto
    return _discharge(out, constraints, temps, cap)


# ---------------------------------------------------------------------------
# the bundled predicates


PREDICATE_TEXTS: tuple[tuple[str, tuple[str, ...], str], ...] = (
    ("factoreq", ("i", "j", "n"), "Au,v (i+v=j+u & u>=i & u<i+n) => W[u]=W[v]"),
    ("shift", ("i", "j", "n", "t"), "factoreq(j, i+t, n-t) & factoreq(i, (j+n)-t, t)"),
    ("conj", ("i", "j", "n"), "Et (t<=n) & shift(i,j,n,t)"),
    ("lessthan", ("i", "j", "n"), "Et (t<n) & factoreq(i,j,t) & W[i+t]<W[j+t]"),
    ("lessthaneq", ("i", "j", "n"), "lessthan(i,j,n) | factoreq(i,j,n)"),
    ("allconj", ("i", "n"), "At (t<=n) => (Ej shift(i,j,n,t))"),
    ("lexleast", ("i", "n"), "Aj conj(i,j,n) => lessthaneq(i,j,n)"),
    ("lie", ("i", "n"), "allconj(i,n) & lexleast(i,n) & (Aj factoreq(i,j,n) => (j>=i))"),
)


def predicate_defs() -> dict[str, fo.PredicateDef]:
    """The bundled predicates as fully inlined parse-time definitions."""
    defs: dict[str, fo.PredicateDef] = {}
    for name, params, text in PREDICATE_TEXTS:
        d = fo.parse_predicate_def(name, params, text, defs)
        extra = fo.free_vars(d.body) - set(params)
        if extra:
            raise UnboundVariable(
                "%s leaves %s unbound" % (name, ", ".join(sorted(extra)))
            )
        defs[name] = d
    return defs


def parse_with_library(text: str) -> fo.Formula:
    return fo.parse(text, predicate_defs())


def build_predicate_library(
    d: Dfao, config: CompileConfig = _DEFAULT
) -> dict[str, au.MultiTrackDfa]:
    """Compile the eight bundled predicates against one sequence.

    factoreq comes from its formula; everything else is assembled with
    automaton operations, mirroring the formula texts in
    PREDICATE_TEXTS operation by operation."""
    return dict(_library_cached(d, config.state_cap))


@lru_cache(maxsize=8)
def _library_cached(d: Dfao, state_cap: int) -> tuple[tuple[str, au.MultiTrackDfa], ...]:
    cfg = CompileConfig(state_cap)
    cap = state_cap
    base = d.base
    V, P, M = fo.Var, fo.Plus, fo.Minus
    lib: dict[str, au.MultiTrackDfa] = {}
    # same language as the published factoreq text, but with one bound
    # variable instead of two coupled ones: the offset form keeps the
    # projection deterministic and scales to larger bases
    offset_form = fo.parse("Au (u<n) => W[i+u]=W[j+u]")
    lib["factoreq"] = compile_formula(offset_form, {"W": d}, config=cfg)

    lib["shift"] = au.conjoin(
        [
            apply_predicate(
                lib["factoreq"],
                {"i": V("j"), "j": P(V("i"), V("t")), "n": M(V("n"), V("t"))},
                cfg,
            ),
            apply_predicate(
                lib["factoreq"],
                {"j": M(P(V("j"), V("n")), V("t")), "n": V("t")},
                cfg,
            ),
        ],
        cap,
    )
    lib["conj"] = au.project(
        au.combine(au.leq_predicate("t", "n", base), lib["shift"], "and", cap), "t", cap
    )
    letter_lt = compile_formula(
        fo.parse("W[i+t]<W[j+t]"), {"W": d}, config=cfg
    )
    lib["lessthan"] = au.project(
        au.conjoin(
            [
                au.lt_predicate("t", "n", base),
                apply_predicate(lib["factoreq"], {"n": V("t")}, cfg),
                letter_lt,
            ],
            cap,
        ),
        "t",
        cap,
    )
    lib["lessthaneq"] = au.combine(lib["lessthan"], lib["factoreq"], "or", cap)
    lib["allconj"] = au.forall(
        au.combine(
            au.complement(au.leq_predicate("t", "n", base)),
            au.project(lib["shift"], "j", cap),
            "or",
            cap,
        ),
        "t",
        cap,
    )
    lib["lexleast"] = au.forall(
        au.combine(au.complement(lib["conj"]), lib["lessthaneq"], "or", cap), "j", cap
    )
    tail = au.forall(
        au.combine(
            au.complement(lib["factoreq"]), au.leq_predicate("i", "j", base), "or", cap
        ),
        "j",
        cap,
    )
    lib["lie"] = au.conjoin([lib["allconj"], lib["lexleast"], tail], cap)
    return tuple(sorted(lib.items()))
