"""The embedding order on witnessed trees, decided by backtracking search.

A witnessed tree here is a DstTree on bits x ord; ``find_witness_map`` looks
for an injective, monotone, length-preserving map phi on the witness
sequences of the source such that

    (u, s) in source  =>  (u, phi(s)) in destination,

optionally under a per-assignment side constraint (used for rank growth).
The search walks levels bottom-up with forward checking; ties are broken in
serialization order so results are deterministic.  Members of the universe
that carry no constraint receive fresh images built from a reserved exponent
band, which keeps phi total and injective on the declared universe.

``combine_map`` is the canonical explicit witness: s |-> combine(s, xi
restricted to lh(s)); it is automatically monotone and injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from .dsttrees import DstTree, node_len
from .ordinals import Ordinal, omega_power
from .sequences import OrdSeq, combine

Constraint = Callable[[OrdSeq, OrdSeq], bool]

FRESH_EXPONENT = 50


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessMap:
    """A finite injective Lipschitz map between sequence sets."""

    pairs: Tuple[Tuple[OrdSeq, OrdSeq], ...]

    def as_dict(self) -> Dict[OrdSeq, OrdSeq]:
        return dict(self.pairs)

    def apply(self, s: OrdSeq) -> OrdSeq:
        for a, b in self.pairs:
            if a == s:
                return b
        raise MapError(f"{s} is not in the domain")

    def validate(self) -> None:
        table = self.as_dict()
        if len(table) != len(self.pairs):
            raise MapError("duplicate domain entries")
        images: Set[Tuple] = set()
        for a, b in self.pairs:
            if len(a) != len(b):
                raise MapError("map is not length preserving")
            if b.entries in images:
                raise MapError("map is not injective")
            images.add(b.entries)
        for a, b in self.pairs:
            for a2, b2 in self.pairs:
                if a.prefix_of(a2) and not b.prefix_of(b2):
                    raise MapError("map is not monotone")

    def to_json(self):
        return [[a.to_json(), b.to_json()] for a, b in self.pairs]

    @staticmethod
    def from_json(data) -> "WitnessMap":
        return WitnessMap(
            tuple((OrdSeq.from_json(a), OrdSeq.from_json(b)) for a, b in data)
        )


def _tree_tables(tree: DstTree):
    """witnesses-by-level and the bit-set attached to each witness."""
    by_level: Dict[int, List[OrdSeq]] = {}
    usets: Dict[OrdSeq, Set[tuple]] = {}
    for node in tree.nodes:
        if not node_len(node):
            continue
        u, s = node
        seq = OrdSeq(s)
        usets.setdefault(seq, set()).add(u)
        lvl = by_level.setdefault(len(seq), [])
        if seq not in lvl:
            lvl.append(seq)
    for lvl in by_level.values():
        lvl.sort(key=lambda q: q.text())
    return by_level, usets


def find_witness_map(
    src: DstTree,
    dst: DstTree,
    universe: Iterable[OrdSeq],
    constraint: Optional[Constraint] = None,
) -> Optional[WitnessMap]:
    """Search for an embedding witness from ``src`` into ``dst``.

    ``universe`` must be closed under restriction to shorter lengths and
    contain every witness sequence of ``src``.  Returns None when exhaustive
    backtracking rules every candidate out.
    """
    src_levels, src_usets = _tree_tables(src)
    dst_levels, dst_usets = _tree_tables(dst)

    universe = list(dict.fromkeys(universe))
    for lvl in src_levels.values():
        for s in lvl:
            if s not in universe:
                raise MapError("universe misses a source witness")

    assignment: Dict[OrdSeq, OrdSeq] = {}
    used: Dict[int, Set[Tuple]] = {}

    def candidates(s: OrdSeq) -> List[OrdSeq]:
        lvl = len(s)
        need = src_usets[s]
        out = []
        parent = s.restrict(lvl - 1) if lvl > 1 else None
        parent_img = assignment.get(parent) if parent is not None else None
        for t in dst_levels.get(lvl, []):
            if t.entries in used.get(lvl, set()):
                continue
            if not need <= dst_usets.get(t, set()):
                continue
            if parent_img is not None and not parent_img.prefix_of(t):
                continue
            if parent is None and lvl > 1:
                continue
            if constraint is not None and not constraint(s, t):
                continue
            out.append(t)
        return out

    levels = sorted(src_levels)
    groups = [
        sorted(src_levels[lvl], key=lambda q: (-len(src_usets[q]), q.text()))
        for lvl in levels
    ]
    flat: List[OrdSeq] = [s for grp in groups for s in grp]

    def backtrack(i: int) -> bool:
        if i == len(flat):
            return True
        s = flat[i]
        for t in candidates(s):
            assignment[s] = t
            used.setdefault(len(s), set()).add(t.entries)
            if backtrack(i + 1):
                return True
            used[len(s)].discard(t.entries)
            del assignment[s]
        return False

    if not backtrack(0):
        return None

    _extend_fresh(assignment, universe)
    out = WitnessMap(tuple(sorted(assignment.items(), key=lambda p: p[0].text())))
    out.validate()
    return out


def _extend_fresh(assignment: Dict[OrdSeq, OrdSeq], universe: List[OrdSeq]) -> None:
    """Give unconstrained universe members fresh, prefix-coherent images."""
    counter = count(1)
    for s in sorted(universe, key=lambda q: (len(q), q.text())):
        if s in assignment:
            continue
        base: Optional[OrdSeq] = None
        for k in range(len(s) - 1, 0, -1):
            pref = s.restrict(k)
            if pref in assignment:
                base = assignment[pref]
                break
        img = base.entries if base is not None else ()
        while len(img) < len(s):
            img = img + (omega_power(FRESH_EXPONENT, next(counter)),)
        assignment[s] = OrdSeq(img)


def check_witness_map(
    phi: WitnessMap,
    src: DstTree,
    dst: DstTree,
    constraint: Optional[Constraint] = None,
) -> bool:
    """Independent node-by-node verification of a claimed witness."""
    try:
        phi.validate()
    except MapError:
        return False
    table = phi.as_dict()
    for node in src.nodes:
        if not node_len(node):
            continue
        u, s = node
        seq = OrdSeq(s)
        if seq not in table:
            return False
        img = table[seq]
        if (u, img.entries) not in dst.nodes:
            return False
        if constraint is not None and not constraint(seq, img):
            return False
    return True


def combine_map(xi: OrdSeq) -> Callable[[OrdSeq], OrdSeq]:
    """The map s |-> combine(s, xi restricted to lh(s))."""

    def phi(s: OrdSeq) -> OrdSeq:
        if len(s) > len(xi):
            raise MapError("sequence longer than the witness")
        return combine(s, xi.restrict(len(s)))

    return phi


def materialize_combine_map(xi: OrdSeq, universe: Iterable[OrdSeq]) -> WitnessMap:
    phi = combine_map(xi)
    pairs = tuple(
        sorted(((s, phi(s)) for s in dict.fromkeys(universe)), key=lambda p: p[0].text())
    )
    out = WitnessMap(pairs)
    out.validate()
    return out
