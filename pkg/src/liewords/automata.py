"""Multi-track automata over base-k digit columns.

An automaton reads tuples of digits, one per named track, most significant
column first.  Acceptance is by value: every automaton built here is
padding invariant (prepending all-zero columns never changes acceptance),
so a tuple of naturals is accepted iff any common-length digit string for
it is.  Operations return minimized automata with a canonical breadth
first state numbering, which makes textual equality an equivalence test.

Tracks are kept sorted by name; combining automata with different track
sets implicitly cylindrifies (the automaton simply does not read the
extra tracks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import BaseMismatch, CompileBlowup, UnknownLetter, UnknownTrack
from .words import Dfao, digits_msd


@dataclass(frozen=True)
class MultiTrackDfa:
    base: int
    tracks: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    initial: int = 0

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    @property
    def n_symbols(self) -> int:
        return self.base ** len(self.tracks)


def _check_cap(count: int, cap: Optional[int]):
    if cap is not None and count > cap:
        raise CompileBlowup("automaton grew past the state cap (%d states)" % count)


def sym_of(digits: Sequence[int], base: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * base + d
    return idx


def digits_of(sym: int, base: int, m: int) -> tuple[int, ...]:
    out = [0] * m
    for i in range(m - 1, -1, -1):
        sym, out[i] = divmod(sym, base)
    return tuple(out)


def _submap(all_tracks: Sequence[str], sub_tracks: Sequence[str], base: int) -> list[int]:
    """For each symbol over all_tracks, the induced symbol over sub_tracks."""
    positions = [all_tracks.index(t) for t in sub_tracks]
    m = len(all_tracks)
    n_all = base**m
    out = []
    for sym in range(n_all):
        digs = digits_of(sym, base, m)
        out.append(sym_of([digs[p] for p in positions], base))
    return out


# ---------------------------------------------------------------------------
# minimization and canonical form


def _moore_blocks_numpy(rows: list[tuple[int, ...]], acc: list[bool]) -> list[int]:
    rows_np = np.asarray(rows, dtype=np.int64)
    block = np.asarray(acc, dtype=np.int64)
    n_blocks = len(np.unique(block))
    while True:
        sigs = np.concatenate([block[:, None], block[rows_np]], axis=1)
        _, new_block = np.unique(sigs, axis=0, return_inverse=True)
        count = int(new_block.max()) + 1 if len(new_block) else 0
        if count == n_blocks:
            return [int(x) for x in new_block]
        block = new_block.astype(np.int64)
        n_blocks = count


def _moore_blocks(rows: list[tuple[int, ...]], acc: list[bool]) -> list[int]:
    n = len(rows)
    ids: dict[bool, int] = {}
    block = [ids.setdefault(x, len(ids)) for x in acc]
    n_blocks = len(ids)
    while True:
        sig_ids: dict[tuple, int] = {}
        new_block = [0] * n
        for q in range(n):
            row = rows[q]
            key = (block[q], tuple(block[t] for t in row))
            new_block[q] = sig_ids.setdefault(key, len(sig_ids))
        if len(sig_ids) == n_blocks:
            return new_block
        block = new_block
        n_blocks = len(sig_ids)


def minimize(a: MultiTrackDfa, state_cap: Optional[int] = None) -> MultiTrackDfa:
    """Trim, merge language-equivalent states, renumber breadth first.

    The result is canonical: any two automata with the same language
    over the same tracks minimize to identical objects."""
    nsym = a.n_symbols
    trans = a.transitions

    seen = {a.initial: 0}
    order = [a.initial]
    for q in order:
        for t in trans[q]:
            if t not in seen:
                seen[t] = len(order)
                order.append(t)
    n = len(order)
    _check_cap(n, state_cap)
    rows = [tuple(seen[t] for t in trans[q]) for q in order]
    acc = [order[i] in a.accepting for i in range(n)]

    if n * nsym > 200000:
        block = _moore_blocks_numpy(rows, acc)
    else:
        block = _moore_blocks(rows, acc)

    # representative per block, then canonical BFS renumbering
    rep: dict[int, int] = {}
    for q in range(n):
        rep.setdefault(block[q], q)
    start = block[0]
    renum = {start: 0}
    bfs = [start]
    for b in bfs:
        row = rows[rep[b]]
        for sym in range(nsym):
            nb = block[row[sym]]
            if nb not in renum:
                renum[nb] = len(bfs)
                bfs.append(nb)
    final_rows = []
    for b in bfs:
        row = rows[rep[b]]
        final_rows.append(tuple(renum[block[t]] for t in row))
    final_acc = frozenset(renum[b] for b in bfs if acc[rep[b]])
    return MultiTrackDfa(a.base, a.tracks, tuple(final_rows), final_acc, 0)


def _determinize(
    nsym: int,
    initial: frozenset[int],
    step: Callable[[frozenset[int], int], frozenset[int]],
    is_accepting: Callable[[frozenset[int]], bool],
    state_cap: Optional[int] = None,
):
    index = {initial: 0}
    order = [initial]
    rows = []
    for subset in order:
        row = []
        for sym in range(nsym):
            nxt = step(subset, sym)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                _check_cap(len(order), state_cap)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(i for i, s in enumerate(order) if is_accepting(s))
    return tuple(rows), accepting


def _coreachable(a: MultiTrackDfa) -> frozenset[int]:
    preds: list[list[int]] = [[] for _ in range(a.n_states)]
    for q, row in enumerate(a.transitions):
        for t in set(row):
            preds[t].append(q)
    seen = set(a.accepting)
    stack = list(a.accepting)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def normalize_padding(a: MultiTrackDfa, state_cap: Optional[int] = None) -> MultiTrackDfa:
    """Close the language under leading all-zero columns, both ways.

    Afterwards a string is accepted iff any string with the same track
    values is, so acceptance depends on values only.  All primitive
    constructions here are already padding invariant, in which case this
    is the identity (checked cheaply on the minimal automaton: the
    initial state must be fixed by the zero column).
    """
    a = minimize(a, state_cap)
    if a.transitions[a.initial][0] == a.initial:
        return a
    trans = a.transitions
    acc = a.accepting
    chain = []
    q = a.initial
    while q not in chain:
        chain.append(q)
        q = trans[q][0]
    zero_closure = frozenset(chain)

    # sentinel -1 marks "input so far is all zero columns"; it carries the
    # zero-closure states with it so acceptance of 0^j s needs no lookahead
    initial = frozenset({-1}) | zero_closure

    def step(subset, sym):
        out = set(trans[q][sym] for q in subset if q >= 0)
        if -1 in subset and sym == 0:
            out.add(-1)
            out.update(zero_closure)
        return frozenset(out)

    rows, accepting = _determinize(
        a.n_symbols, initial, step, lambda s: bool(s & acc), state_cap
    )
    return minimize(MultiTrackDfa(a.base, a.tracks, rows, accepting, 0), state_cap)


# ---------------------------------------------------------------------------
# primitive predicates


def accept_all(base: int, tracks: Iterable[str] = ()) -> MultiTrackDfa:
    tracks = tuple(sorted(tracks))
    nsym = base ** len(tracks)
    return MultiTrackDfa(base, tracks, ((0,) * nsym,), frozenset({0}), 0)

def reject_all(base: int, tracks: Iterable[str] = ()) -> MultiTrackDfa:
    tracks = tuple(sorted(tracks))
    nsym = base ** len(tracks)
    return MultiTrackDfa(base, tracks, ((0,) * nsym,), frozenset(), 0)


def _two_track(base, x, y, table, accepting):
    """Helper for comparison automata; table maps (state, cmp) -> state
    where cmp is -1, 0, 1 for the current digit comparison."""
    if x == y:
        raise UnknownTrack("comparison needs two distinct tracks")
    tracks = tuple(sorted((x, y)))
    xi = tracks.index(x)
    n = len(table)
    rows = []
    for q in range(n):
        row = []
        for sym in range(base * base):
            dx, dy = digits_of(sym, base, 2) if xi == 0 else digits_of(sym, base, 2)[::-1]
            cmp_ = (dx > dy) - (dx < dy)
            row.append(table[q][cmp_])
        rows.append(tuple(row))
    return minimize(MultiTrackDfa(base, tracks, tuple(rows), frozenset(accepting), 0))


def eq_predicate(x: str, y: str, base: int) -> MultiTrackDfa:
    # state 0: equal so far; state 1: differ somewhere
    table = [{-1: 1, 0: 0, 1: 1}, {-1: 1, 0: 1, 1: 1}]
    return _two_track(base, x, y, table, {0})


def lt_predicate(x: str, y: str, base: int) -> MultiTrackDfa:
    # msd comparison: the first differing column decides; 1 = less, 2 = greater
    table = [{-1: 1, 0: 0, 1: 2}, {-1: 1, 0: 1, 1: 1}, {-1: 2, 0: 2, 1: 2}]
    return _two_track(base, x, y, table, {1})


def leq_predicate(x: str, y: str, base: int) -> MultiTrackDfa:
    table = [{-1: 1, 0: 0, 1: 2}, {-1: 1, 0: 1, 1: 1}, {-1: 2, 0: 2, 1: 2}]
    return _two_track(base, x, y, table, {0, 1})


def const_predicate(x: str, value: int, base: int) -> MultiTrackDfa:
    """Track x equals the given constant."""
    if value < 0:
        raise ValueError("constants are naturals")
    dead = value + 1
    rows = []
    for v in range(value + 1):
        row = []
        for d in range(base):
            nxt = v * base + d
            row.append(nxt if nxt <= value else dead)
        rows.append(tuple(row))
    rows.append((dead,) * base)
    return minimize(MultiTrackDfa(base, (x,), tuple(rows), frozenset({value}), 0))


def add_predicate(x: str, y: str, z: str, base: int) -> MultiTrackDfa:
    """x + y = z, columns msd first.

    The live balance value(x) + value(y) - value(z) over the consumed
    prefix can only finish at zero from balances 0 and -1; anything else
    is a dead end.
    """
    if len({x, y, z}) != 3:
        raise UnknownTrack("addition needs three distinct tracks")
    tracks = tuple(sorted((x, y, z)))
    pos = {t: i for i, t in enumerate(tracks)}
    balances = {0: 0, -1: 1}
    dead = 2
    rows = []
    for b in (0, -1):
        row = []
        for sym in range(base**3):
            digs = digits_of(sym, base, 3)
            nb = base * b + digs[pos[x]] + digs[pos[y]] - digs[pos[z]]
            row.append(balances.get(nb, dead))
        rows.append(tuple(row))
    rows.append((dead,) * base**3)
    return minimize(MultiTrackDfa(base, tracks, tuple(rows), frozenset({0}), 0))


def padded_dfao(d: Dfao) -> tuple[tuple[tuple[int, ...], ...], int, tuple[str, ...]]:
    """Transitions, initial state and per-state outputs with the initial
    state fixed by digit 0, adding a padding state when needed."""
    if d.transitions[d.initial][0] == d.initial:
        return d.transitions, d.initial, d.outputs
    rows = [tuple([0] + [d.transitions[d.initial][e] + 1 for e in range(1, d.base)])]
    for q in range(d.n_states):
        rows.append(tuple(d.transitions[q][e] + 1 for e in range(d.base)))
    return tuple(rows), 0, (d.outputs[d.initial],) + tuple(d.outputs)


def seq_letter_predicate(d: Dfao, track: str, letter: str) -> MultiTrackDfa:
    """Positions n with d's output at n equal to the given letter.

    Leading zero digits are transparent even when d's initial state is
    not fixed by digit 0.
    """
    if letter not in d.letters:
        raise UnknownLetter("letter %r not among outputs %r" % (letter, d.letters))
    rows, initial, outputs = padded_dfao(d)
    accepting = frozenset(q for q in range(len(rows)) if outputs[q] == letter)
    return minimize(MultiTrackDfa(d.base, (track,), rows, accepting, initial))


# ---------------------------------------------------------------------------
# boolean combinations, projection, renaming


def combine(
    a: MultiTrackDfa, b: MultiTrackDfa, op: str, state_cap: Optional[int] = None
) -> MultiTrackDfa:
    """Product automaton; op is 'and' or 'or'.  Missing tracks on either
    side are simply not read by that side."""
    if a.base != b.base:
        raise BaseMismatch("bases %d and %d" % (a.base, b.base))
    if op not in ("and", "or"):
        raise ValueError("op must be 'and' or 'or'")
    base = a.base
    tracks = tuple(sorted(set(a.tracks) | set(b.tracks)))
    map_a = _submap(tracks, a.tracks, base)
    map_b = _submap(tracks, b.tracks, base)
    nsym = base ** len(tracks)
    ta, tb = a.transitions, b.transitions
    acc_a, acc_b = a.accepting, b.accepting

    index = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    rows = []
    for sa, sb in order:
        ra, rb = ta[sa], tb[sb]
        row = []
        for sym in range(nsym):
            pair = (ra[map_a[sym]], rb[map_b[sym]])
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                _check_cap(len(order), state_cap)
            row.append(index[pair])
        rows.append(tuple(row))
    if op == "and":
        accepting = frozenset(
            i for i, (sa, sb) in enumerate(order) if sa in acc_a and sb in acc_b
        )
    else:
        accepting = frozenset(
            i for i, (sa, sb) in enumerate(order) if sa in acc_a or sb in acc_b
        )
    return minimize(MultiTrackDfa(base, tracks, tuple(rows), accepting, 0), state_cap)


def conjoin(automata: Sequence[MultiTrackDfa], state_cap: Optional[int] = None) -> MultiTrackDfa:
    """Fold a conjunction smallest first to keep intermediates small."""
    if not automata:
        raise ValueError("need at least one operand")
    todo = sorted(automata, key=lambda x: x.n_states)
    out = todo[0]
    for nxt in todo[1:]:
        out = combine(out, nxt, "and", state_cap)
    return out


def complement(a: MultiTrackDfa) -> MultiTrackDfa:
    # the automaton is total, so flipping acceptance suffices; the state
    # graph is untouched and the numbering stays canonical
    full = frozenset(range(a.n_states))
    return MultiTrackDfa(a.base, a.tracks, a.transitions, full - a.accepting, a.initial)


class _GuessNfa:
    """The automaton with one track's digits guessed nondeterministically,
    restricted to states that can still reach acceptance."""

    def __init__(self, a: MultiTrackDfa, track: str):
        base = a.base
        m = len(a.tracks)
        p = a.tracks.index(track)
        self.base = base
        self.kept = tuple(t for t in a.tracks if t != track)
        self.n_red = base ** len(self.kept)
        self.n = a.n_states
        pow_low = base ** (m - 1 - p)
        reds = np.arange(self.n_red)
        hi, lo = np.divmod(reds, pow_low)
        # guess_cols[red] = the full symbols matching reduced symbol red
        self.guess_cols = (
            (hi[:, None] * base + np.arange(base)[None, :]) * pow_low + lo[:, None]
        )
        self.trans = np.asarray(a.transitions, dtype=np.int64)
        useful = _coreachable(a)
        self.useful = np.zeros(self.n, dtype=bool)
        self.useful[list(useful)] = True
        closure = {a.initial}
        stack = [a.initial]
        zero_syms = [int(s) for s in self.guess_cols[0]]
        while stack:
            q = stack.pop()
            for s in zero_syms:
                t = a.transitions[q][s]
                if t not in closure:
                    closure.add(t)
                    stack.append(t)
        self.initial = np.zeros(self.n, dtype=bool)
        self.initial[[q for q in closure if self.useful[q]]] = True
        self.accepting = np.zeros(self.n, dtype=bool)
        self.accepting[[q for q in a.accepting if self.useful[q]]] = True

    def forward_all(self, subset: np.ndarray) -> np.ndarray:
        """Successor subsets for every reduced symbol at once, [n_red, n]."""
        out = np.zeros((self.n_red, self.n), dtype=bool)
        states = np.flatnonzero(subset)
        if len(states):
            targets = self.trans[states][:, self.guess_cols]
            reds = np.arange(self.n_red)[:, None, None]
            out[reds, targets.transpose(1, 0, 2)] = True
            out &= self.useful[None, :]
        return out

    def backward_all(self, member: np.ndarray) -> np.ndarray:
        """Predecessor subsets for every reduced symbol, [n_red, n]."""
        hits = member[self.trans]
        out = hits[:, self.guess_cols].any(axis=2).T.copy()
        out &= self.useful[None, :]
        return out


def _det_by_sets(
    initial: np.ndarray,
    step_all: Callable[[np.ndarray], np.ndarray],
    accepting: np.ndarray,
    state_cap: Optional[int],
) -> tuple[list[tuple[int, ...]], frozenset[int]]:
    """Subset construction over boolean state vectors.

    ``step_all`` maps one subset to successor subsets for all symbols in
    a single array; subsets are keyed by their packed bits."""
    index: dict[bytes, int] = {}
    order: list[np.ndarray] = []

    def intern(vec: np.ndarray, key: bytes) -> int:
        k = index.get(key)
        if k is None:
            k = len(order)
            index[key] = k
            order.append(vec.copy())
            _check_cap(len(order), state_cap)
        return k

    intern(initial, np.packbits(initial, bitorder="little").tobytes())
    rows: list[tuple[int, ...]] = []
    acc_ids = []
    i = 0
    while i < len(order):
        subset = order[i]
        if bool(np.any(subset & accepting)):
            acc_ids.append(i)
        nxt = step_all(subset)
        packed = np.packbits(nxt, axis=1, bitorder="little")
        rows.append(
            tuple(intern(nxt[r], packed[r].tobytes()) for r in range(nxt.shape[0]))
        )
        i += 1
    return rows, frozenset(acc_ids)


def _project_one(a: MultiTrackDfa, track: str, state_cap: Optional[int]) -> MultiTrackDfa:
    nfa = _GuessNfa(a, track)
    base, kept = nfa.base, nfa.kept

    def finish(rows, accepting):
        out = minimize(MultiTrackDfa(base, kept, tuple(rows), accepting, 0), state_cap)
        return normalize_padding(out, state_cap)

    # forward subset construction first; most projections stay small
    soft = 20000 + 4 * nfa.n
    if state_cap is not None:
        soft = min(soft, state_cap)
    try:
        rows, accepting = _det_by_sets(
            nfa.initial, nfa.forward_all, nfa.accepting, soft
        )
        return finish(rows, accepting)
    except CompileBlowup:
        pass

    # determinize the reversed language, minimize, reverse again: lands
    # directly on the minimal automaton even when forward subsets blow up
    rows, accepting = _det_by_sets(
        nfa.accepting, nfa.backward_all, nfa.initial, state_cap
    )
    mid = minimize(MultiTrackDfa(base, kept, tuple(rows), accepting, 0), state_cap)

    mid_trans = np.asarray(mid.transitions, dtype=np.int64)
    mid_acc = np.zeros(mid.n_states, dtype=bool)
    mid_acc[list(mid.accepting)] = True
    mid_init = np.zeros(mid.n_states, dtype=bool)
    mid_init[mid.initial] = True

    rows, accepting = _det_by_sets(
        mid_acc, lambda s: s[mid_trans].T.copy(), mid_init, state_cap
    )
    return finish(rows, accepting)


def project(a: MultiTrackDfa, track: str, state_cap: Optional[int] = None) -> MultiTrackDfa:
    """Existential quantification over one track.

    The projected value may need more digit columns than the remaining
    tracks, so start states are closed under columns that are zero on
    the kept tracks.  States that cannot reach acceptance are pruned
    before the subset construction.
    """
    if track not in a.tracks:
        return a
    return _project_one(a, track, state_cap)


def forall(a: MultiTrackDfa, track: str, state_cap: Optional[int] = None) -> MultiTrackDfa:
    """Universal quantification as the dual of projection."""
    if track not in a.tracks:
        return a
    return complement(project(complement(a), track, state_cap))


def rename_tracks(
    a: MultiTrackDfa, mapping: Mapping[str, str], state_cap: Optional[int] = None
) -> MultiTrackDfa:
    """Rename tracks; mapping two tracks to one name restricts to the
    diagonal (both read the same digits)."""
    for t in mapping:
        if t not in a.tracks:
            raise UnknownTrack("no track %r" % t)
    image = [mapping.get(t, t) for t in a.tracks]
    new_tracks = tuple(sorted(set(image)))
    base = a.base
    m_new = len(new_tracks)
    nsym_new = base**m_new
    pos_new = {t: i for i, t in enumerate(new_tracks)}
    rows = []
    for q in range(a.n_states):
        row_old = a.transitions[q]
        row = []
        for sym in range(nsym_new):
            digs_new = digits_of(sym, base, m_new)
            old_sym = sym_of([digs_new[pos_new[img]] for img in image], base)
            row.append(row_old[old_sym])
        rows.append(tuple(row))
    return minimize(
        MultiTrackDfa(base, new_tracks, tuple(rows), a.accepting, a.initial), state_cap
    )


# ---------------------------------------------------------------------------
# evaluation


def accepts_string(a: MultiTrackDfa, columns: Sequence[Sequence[int]]) -> bool:
    q = a.initial
    for col in columns:
        if len(col) != len(a.tracks):
            raise UnknownTrack("column arity %d != %d" % (len(col), len(a.tracks)))
        q = a.transitions[q][sym_of(col, a.base)]
    return q in a.accepting


def accepts(a: MultiTrackDfa, assignment: Mapping[str, int]) -> bool:
    """Value-level acceptance; missing tracks are an error."""
    for t in a.tracks:
        if t not in assignment:
            raise UnknownTrack("no value for track %r" % t)
    digit_strings = {t: digits_msd(assignment[t], a.base) for t in a.tracks}
    length = max((len(v) for v in digit_strings.values()), default=0)
    cols = []
    for i in range(length):
        col = []
        for t in a.tracks:
            ds = digit_strings[t]
            col.append(ds[i - (length - len(ds))] if i >= length - len(ds) else 0)
        cols.append(col)
    return accepts_string(a, cols)


def accepted_values(
    a: MultiTrackDfa, fixed: Mapping[str, int], track: str, limit: int
) -> list[int]:
    """Values v < limit with track=v (others per fixed) accepted."""
    if track not in a.tracks:
        raise UnknownTrack("no track %r" % track)
    out = []
    for v in range(limit):
        assignment = dict(fixed)
        assignment[track] = v
        if accepts(a, assignment):
            out.append(v)
    return out


def is_empty(a: MultiTrackDfa) -> bool:
    return a.initial not in _coreachable(a)


def is_universal(a: MultiTrackDfa) -> bool:
    return is_empty(complement(a))


def equivalent(a: MultiTrackDfa, b: MultiTrackDfa) -> bool:
    if a.base != b.base or a.tracks != b.tracks:
        return False
    return to_text(minimize(a)) == to_text(minimize(b))


# ---------------------------------------------------------------------------
# serialization


def to_text(a: MultiTrackDfa) -> str:
    """Canonical text form: equal languages over equal tracks serialize
    identically (after minimize)."""
    base = a.base
    m = len(a.tracks)
    out = ["base: %d" % base, "tracks: %s" % " ".join(a.tracks)]
    for q in range(a.n_states):
        tag = " accepting" if q in a.accepting else ""
        out.append("state %d%s" % (q, tag))
        for sym in range(a.n_symbols):
            digs = ",".join(str(d) for d in digits_of(sym, base, m))
            out.append("%s -> %d" % (digs, a.transitions[q][sym]))
    return "\n".join(out) + "\n"


def from_text(text: str) -> MultiTrackDfa:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("base:"):
        raise ValueError("first line must declare 'base: k'")
    base = int(lines[0][len("base:") :])
    if len(lines) < 2 or not lines[1].startswith("tracks:"):
        raise ValueError("second line must declare 'tracks: ...'")
    tracks = tuple(lines[1][len("tracks:") :].split())
    m = len(tracks)
    nsym = base**m
    accepting = set()
    trans: dict[int, dict[int, int]] = {}
    state = None
    for ln in lines[2:]:
        if ln.startswith("state "):
            parts = ln.split()
            state = int(parts[1])
            trans[state] = {}
            if len(parts) == 3 and parts[2] == "accepting":
                accepting.add(state)
            elif len(parts) != 2:
                raise ValueError("bad state line %r" % ln)
        else:
            if state is None or "->" not in ln:
                raise ValueError("transition outside a state block: %r" % ln)
            lhs, rhs = (part.strip() for part in ln.split("->", 1))
            digs = [int(x) for x in lhs.split(",")] if lhs else []
            trans[state][sym_of(digs, base)] = int(rhs)
    n = len(trans)
    if sorted(trans) != list(range(n)):
        raise ValueError("states must be numbered 0..%d" % (n - 1))
    rows = []
    for q in range(n):
        row = trans[q]
        if len(row) != nsym:
            raise ValueError("state %d needs %d transitions" % (q, nsym))
        rows.append(tuple(row[s] for s in range(nsym)))
    return MultiTrackDfa(base, tracks, tuple(rows), frozenset(accepting), 0)
