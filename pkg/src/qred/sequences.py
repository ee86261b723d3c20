"""Finite ordinal sequences, the combine operator, and rank maps.

``combine`` merges two equal-length sequences into one, entrywise via the
pairing: position 0 carries pair_succ of the first entries, and each later
position i carries

    pair_succ( sup(s[0..i]) + w,  pair_succ(s[i], t[i]) ).

It is injective as a map of pairs, length-preserving, and compatible with
restriction (combine of prefixes is the prefix of the combine).  ``split``
inverts it exactly, which gives constant-time preimage detection inside any
finite carrier.

``FiniteUniverse`` is a finite combine-closed carrier of equal-length
sequences with a canonical enumeration; ``seq_rank`` assigns each member a
natural number so that ranks grow strictly along s -> combine(s, t) whenever
the three sequences sit in the carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import count, product
from typing import Dict, Iterable, List, Optional, Tuple

from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    compare,
    hessenberg,
    hessenberg_inv,
    pair_succ,
    sup_of,
)


class SeqError(ValueError):
    pass


@dataclass(frozen=True)
class OrdSeq:
    """A finite sequence of ordinals."""

    entries: Tuple[Ordinal, ...] = ()

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def restrict(self, n: int) -> "OrdSeq":
        return OrdSeq(self.entries[:n])

    def __add__(self, other: "OrdSeq") -> "OrdSeq":
        return OrdSeq(self.entries + other.entries)

    def prefix_of(self, other: "OrdSeq") -> bool:
        return self.entries == other.entries[: len(self.entries)]

    def text(self) -> str:
        return "<" + ",".join(e.text() for e in self.entries) + ">"

    def __repr__(self):
        return f"OrdSeq{self.text()}"

    def to_json(self):
        return [e.to_json() for e in self.entries]

    @staticmethod
    def from_json(data) -> "OrdSeq":
        return OrdSeq(tuple(Ordinal.from_json(e) for e in data))


EMPTY = OrdSeq()


def seq_of(*values) -> OrdSeq:
    """Build an OrdSeq from ints and Ordinals."""
    from .ordinals import from_int

    return OrdSeq(tuple(v if isinstance(v, Ordinal) else from_int(v) for v in values))


def zeros(n: int) -> OrdSeq:
    return OrdSeq((ZERO,) * n)


_combine_memo: Dict[Tuple[Tuple[Ordinal, ...], Tuple[Ordinal, ...]], OrdSeq] = {}


def combine(s: OrdSeq, t: OrdSeq) -> OrdSeq:
    """The length-preserving merge of two equal-length sequences."""
    if len(s) != len(t):
        raise SeqError(f"length mismatch: {len(s)} vs {len(t)}")
    key = (s.entries, t.entries)
    hit = _combine_memo.get(key)
    if hit is not None:
        return hit
    out: List[Ordinal] = []
    run_sup = ZERO
    for i, (a, b) in enumerate(zip(s, t)):
        if compare(a, run_sup) > 0:
            run_sup = a
        if i == 0:
            out.append(pair_succ(a, b))
        else:
            out.append(pair_succ(run_sup + OMEGA, pair_succ(a, b)))
    res = OrdSeq(tuple(out))
    _combine_memo[key] = res
    return res


def combine_tail(s: OrdSeq, t: OrdSeq) -> OrdSeq:
    """The shifted variant: entry i is combine(0^s, 0^t) at position 1+i.

    Satisfies  combine(n^s, m^t) = pair_succ(n, m) ^ combine_tail(s, t)
    for natural heads n, m (^ denoting prefixing).
    """
    if len(s) != len(t):
        raise SeqError(f"length mismatch: {len(s)} vs {len(t)}")
    z = OrdSeq((ZERO,))
    full = combine(z + s, z + t)
    return OrdSeq(full.entries[1:])


def split(s: OrdSeq) -> Optional[Tuple[OrdSeq, OrdSeq]]:
    """Exact inverse of ``combine``: the unique (r, t) with combine(r,t)=s.

    Returns None when s is not in the image.  Works positionwise: each entry
    must be a successor, and the sup-plus-omega component recovered from the
    pairing must match the running sup of the reconstructed first factor.
    """
    if len(s) == 0:
        return EMPTY, EMPTY
    rs: List[Ordinal] = []
    ts: List[Ordinal] = []
    run_sup = ZERO
    for i, e in enumerate(s):
        if not e.is_successor():
            return None
        h = e.pred()
        if i == 0:
            a, b = hessenberg_inv(h)
        else:
            big, inner = hessenberg_inv(h)
            if not inner.is_successor():
                return None
            a, b = hessenberg_inv(inner.pred())
            if compare(a, run_sup) > 0:
                probe = a
            else:
                probe = run_sup
            if big != probe + OMEGA:
                return None
        rs.append(a)
        ts.append(b)
        if compare(a, run_sup) > 0:
            run_sup = a
    r, t = OrdSeq(tuple(rs)), OrdSeq(tuple(ts))
    if combine(r, t) != s:
        return None
    return r, t


_universe_tokens = count()


@dataclass
class FiniteUniverse:
    """A finite combine-closed set of equal-length sequences with ranks.

    ``carrier`` is the closure of ``seeds`` under pairwise combine applied
    ``depth`` times, enumerated in a fixed canonical order (length-lex on the
    serialized text); ``zeta`` is the resulting bijection onto an initial
    segment of the naturals.
    """

    level: int
    seeds: Tuple[OrdSeq, ...]
    depth: int
    carrier: Tuple[OrdSeq, ...]
    zeta: Dict[OrdSeq, int]
    token: int = field(default_factory=lambda: next(_universe_tokens))
    _ranks: Optional[Dict[OrdSeq, int]] = field(default=None, repr=False)

    def __contains__(self, s: OrdSeq) -> bool:
        return s in self.zeta

    def __len__(self):
        return len(self.carrier)

    def rank(self, s: OrdSeq) -> int:
        if s not in self.zeta:
            raise SeqError(f"{s} is outside the carrier")
        if self._ranks is None:
            self._ranks = _rank_table(self)
        return self._ranks[s]

    def to_json(self):
        return {
            "level": self.level,
            "seeds": [s.to_json() for s in self.seeds],
            "depth": self.depth,
        }

    @staticmethod
    def from_json(data) -> "FiniteUniverse":
        seeds = [OrdSeq.from_json(s) for s in data["seeds"]]
        return build_universe(seeds, int(data["depth"]))


def _canonical_key(s: OrdSeq) -> Tuple[int, str]:
    text = s.text()
    return (len(text), text)


def build_universe(seeds: Iterable[OrdSeq], depth: int) -> FiniteUniverse:
    """Close ``seeds`` under pairwise combine, ``depth`` generations deep."""
    seeds = tuple(seeds)
    if not seeds:
        raise SeqError("universe needs at least one seed")
    level = len(seeds[0])
    if level < 1:
        raise SeqError("universe level must be a successor length (>= 1)")
    if any(len(s) != level for s in seeds):
        raise SeqError("universe seeds must share one length")
    if depth < 0:
        raise SeqError("depth must be non-negative")
    gen = set(seeds)
    for _ in range(depth):
        new = {combine(a, b) for a in gen for b in gen}
        if new <= gen:
            break
        gen |= new
    carrier = tuple(sorted(gen, key=_canonical_key))
    zeta = {s: i for i, s in enumerate(carrier)}
    return FiniteUniverse(level, seeds, depth, carrier, zeta)


def universe_from_carrier(members: Iterable[OrdSeq]) -> FiniteUniverse:
    """A universe over an explicit member set, with no closure pass.

    Used when the carrier is harvested from an already combine-saturated
    object; ranks are still exact for whatever preimages lie inside.
    """
    members = set(members)
    if not members:
        raise SeqError("empty carrier")
    level = len(next(iter(members)))
    if level < 1 or any(len(s) != level for s in members):
        raise SeqError("carrier members must share one successor length")
    carrier = tuple(sorted(members, key=_canonical_key))
    zeta = {s: i for i, s in enumerate(carrier)}
    return FiniteUniverse(level, carrier, 0, carrier, zeta)


def _rank_table(u: FiniteUniverse) -> Dict[OrdSeq, int]:
    """Ranks via the two-coordinate construction.

    Members are processed in the well-order (sup of entries, then zeta).  The
    first coordinate is the sup; the second starts at one past the largest
    second coordinate seen earlier in the same sup class, and jumps through
    the pairing when the member is a combine of two carrier members.  Ranks
    are the positions of the paired coordinates.
    """
    members = list(u.carrier)
    sups = {s: sup_of(s.entries) for s in members}
    order = sorted(members, key=lambda s: (cmp_to_key(compare)(sups[s]), u.zeta[s]))
    best_in_class: Dict[Ordinal, Ordinal] = {}
    sigma1: Dict[OrdSeq, Ordinal] = {}
    for s in order:
        prev = best_in_class.get(sups[s])
        pi = (prev + ONE) if prev is not None else ONE
        pre = split(s)
        if pre is not None and pre[0] in u.zeta and pre[1] in u.zeta:
            r = pre[0]
            if r not in sigma1:
                raise AssertionError("combine preimage processed out of order")
            sig = hessenberg(sigma1[r], pi)
        else:
            sig = pi
        sigma1[s] = sig
        if prev is None or compare(sig, prev) > 0:
            best_in_class[sups[s]] = sig
    keys = {s: hessenberg(sups[s], sigma1[s]) for s in members}
    if len({k.terms for k in keys.values()}) != len(members):
        raise AssertionError("rank keys collided")
    ordered = sorted(members, key=lambda s: cmp_to_key(compare)(keys[s]))
    return {s: i for i, s in enumerate(ordered)}


def seq_rank(s: OrdSeq, u: FiniteUniverse) -> int:
    """Rank of ``s`` inside the universe; injective with contiguous range."""
    return u.rank(s)


def all_seqs(values: Iterable[Ordinal], length: int) -> List[OrdSeq]:
    """Every sequence of the given length over a finite value set."""
    vals = sorted(set(values), key=lambda o: _canonical_key(OrdSeq((o,))))
    return [OrdSeq(tup) for tup in product(vals, repeat=length)]
