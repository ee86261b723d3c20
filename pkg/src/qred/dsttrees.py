"""Prefix-closed trees of component-wise equal-length tuples.

A ``DstTree`` holds nodes like (u, v, s): parallel finite sequences over the
component alphabets named in ``arity`` ("bits" for 0/1 sequences, "ord" for
ordinal sequences).  The module provides:

* ``normalize_tree`` - re-codes the witness coordinate through the triple
  pairing so that a witness sequence determines the other coordinates;
* ``with_diagonal`` - adds the zero-witnessed diagonal (u, u, 0...0);
* ``relation_tree`` - encodes a relation on bit strings as a witnessed tree
  (strings are padded with a leading 0 and raw witnesses are all-ones, so the
  zero witness stays reserved for the diagonal at every level);
* ``build_closure`` - the staged saturation: stage 0 shifts the diagonal
  completion behind a 0 head, stage n+1 re-heads stage n and composes
  middle-matching pairs through ``combine_tail``; iteration stops once the
  full-depth pair relation stabilizes;
* ``compose_once`` - one further round of direct ``combine`` composition,
  used as the codomain-side enrichment for embedding searches;
* ``section`` - the per-string slice {(u, s) : (u, x|lh(u), s) in tree};
* ``project_pairs`` and ``cofinal_branch``.
"""

from __future__ import annotations

import json as _json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .ordinals import ONE, ZERO, Ordinal, from_int
from .sequences import OrdSeq, combine, combine_tail

Node = Tuple[tuple, ...]


class TreeError(ValueError):
    pass


def node_len(node: Node) -> int:
    return len(node[0])

def restrict_node(node: Node, n: int) -> Node:
    return tuple(comp[:n] for comp in node)


@dataclass(frozen=True)
class DstTree:
    """A finite prefix-closed set of equal-width tuples of sequences."""

    arity: Tuple[str, ...]
    depth: int
    nodes: FrozenSet[Node]

    def __post_init__(self):
        for node in self.nodes:
            if len(node) != len(self.arity):
                raise TreeError("node width disagrees with arity")
            lens = {len(comp) for comp in node}
            if len(lens) > 1:
                raise TreeError(f"components of {node} differ in length")
            if node_len(node) > self.depth:
                raise TreeError("node longer than tree depth")

    def check_prefix_closed(self) -> bool:
        for node in self.nodes:
            n = node_len(node)
            if n and restrict_node(node, n - 1) not in self.nodes:
                return False
        return True

    def level(self, n: int) -> List[Node]:
        return sorted((x for x in self.nodes if node_len(x) == n), key=_node_key)

    def witnesses(self, length: Optional[int] = None) -> Set[OrdSeq]:
        """Distinct ordinal-component sequences (the last component)."""
        out = set()
        for node in self.nodes:
            if node_len(node) and (length is None or node_len(node) == length):
                out.add(OrdSeq(node[-1]))
        return out

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, node: Node) -> bool:
        return node in self.nodes

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "arity": list(self.arity),
            "depth": self.depth,
            "nodes": [_node_json(n, self.arity) for n in sorted(self.nodes, key=_node_key)],
        }

    @staticmethod
    def from_json(data) -> "DstTree":
        arity = tuple(data["arity"])
        nodes = frozenset(_node_from_json(n, arity) for n in data["nodes"])
        return DstTree(arity, int(data["depth"]), nodes)

    def to_dot(self) -> str:
        lines = ["digraph tree {", '  rankdir="TB";']
        names = {n: f"n{i}" for i, n in enumerate(sorted(self.nodes, key=_node_key))}
        for node, name in names.items():
            label = _node_label(node)
            lines.append(f'  {name} [label="{label}"];')
        for node, name in names.items():
            n = node_len(node)
            if n:
                parent = restrict_node(node, n - 1)
                if parent in names:
                    lines.append(f"  {names[parent]} -> {name};")
        lines.append("}")
        return "\n".join(lines)


def _node_key(node: Node):
    return (node_len(node), _node_label(node))


def _node_label(node: Node) -> str:
    parts = []
    for comp in node:
        items = [e.text() if isinstance(e, Ordinal) else str(e) for e in comp]
        parts.append(",".join(items))
    return "(" + "|".join(parts) + ")"


def _node_json(node: Node, arity):
    out = []
    for comp, kind in zip(node, arity):
        if kind == "ord":
            out.append([e.to_json() for e in comp])
        else:
            out.append(list(comp))
    return out


def _node_from_json(data, arity) -> Node:
    comps = []
    for comp, kind in zip(data, arity):
        if kind == "ord":
            comps.append(tuple(Ordinal.from_json(e) for e in comp))
        else:
            comps.append(tuple(int(b) for b in comp))
    return tuple(comps)


def make_tree(arity, depth, nodes: Iterable[Node]) -> DstTree:
    """Build a tree, adding every initial segment so the result is closed."""
    closed: Set[Node] = set()
    for node in nodes:
        for n in range(node_len(node) + 1):
            closed.add(restrict_node(node, n))
    if not closed:
        closed = set()
    return DstTree(tuple(arity), depth, frozenset(closed))


ROOT3: Node = ((), (), ())
ROOT2: Node = ((), ())


# -- encoding and normal form -------------------------------------------------

def relation_tree(pairs: Iterable[Tuple[tuple, tuple]], depth: int) -> DstTree:
    """Encode a relation on length-``depth`` bit strings as a witnessed tree.

    Each related pair (x, y) is stored as (0^x, 0^y, 1...1) plus prefixes:
    the strings gain a constant leading 0 and the raw witness is the all-ones
    sequence.  After ``normalize_tree`` every witness entry stays nonzero, so
    zero-witnessed nodes of the closure stages are exactly the diagonal.
    """
    nodes: Set[Node] = {ROOT3}
    big = depth + 1
    for x, y in pairs:
        if len(x) != depth or len(y) != depth:
            raise TreeError("pair length disagrees with depth")
        px, py = (0,) + tuple(x), (0,) + tuple(y)
        ones = (ONE,) * big
        for n in range(big + 1):
            nodes.add((px[:n], py[:n], ones[:n]))
    return DstTree(("bits", "bits", "ord"), big, frozenset(nodes))


def normalize_tree(tree: DstTree) -> DstTree:
    """Re-code witnesses through the triple pairing, entry by entry.

    Afterwards each witness sequence determines its (u, v): distinct nodes
    sharing a witness cannot exist since the triple code is injective.
    """
    from .ordinals import triple_code

    if tree.arity != ("bits", "bits", "ord"):
        raise TreeError("normalize expects a bits x bits x ord tree")
    nodes = set()
    for u, v, s in tree.nodes:
        w = tuple(
            triple_code(from_int(a), from_int(b), e) for a, b, e in zip(u, v, s)
        )
        nodes.add((u, v, w))
    return DstTree(tree.arity, tree.depth, frozenset(nodes))


def with_diagonal(tree: DstTree) -> DstTree:
    """Add (u, u, 0...0) for every bit string u up to the tree depth."""
    nodes = set(tree.nodes)
    nodes.add(ROOT3)
    frontier = [((), (), ())]
    for _ in range(tree.depth):
        nxt = []
        for u, v, s in frontier:
            for b in (0, 1):
                node = (u + (b,), v + (b,), s + (ZERO,))
                nodes.add(node)
                nxt.append(node)
        frontier = nxt
    return DstTree(tree.arity, tree.depth, frozenset(nodes))


# -- staged saturation --------------------------------------------------------

@dataclass
class Closure:
    stages: List[DstTree]
    tree: DstTree


def build_closure(tree: DstTree, max_stage: int = 8) -> Closure:
    """Stagewise saturation of a normalized witnessed tree.

    Stage 0 re-heads the diagonal completion behind a 0: a node (u, v, s) of
    length n >= 1 becomes (u, v, 0 ^ s[:n-1]).  Stage k+1 contains the
    re-headed copies of stage k plus, for every middle-matching pair
    (u,v,k^s'), (v,w,k^t') at one level, the node (u, w, (k+1)^(s' ct t'))
    with ct the shifted combine.  Iteration stops when a stage stops adding
    full-depth pairs; the result records the stage list and their union.
    """
    hat = with_diagonal(tree)
    depth = tree.depth
    stage0: Set[Node] = {ROOT3}
    for u, v, s in hat.nodes:
        n = len(u)
        if n:
            stage0.add((u, v, (ZERO,) + s[: n - 1]))
    stages = [DstTree(tree.arity, depth, frozenset(stage0))]
    seen_pairs = {(u, v) for u, v, s in stage0 if len(u) == depth}
    union: Set[Node] = set(stage0)
    for k in range(max_stage):
        head = from_int(k + 1)
        nxt: Set[Node] = {ROOT3}
        for u, v, s in stages[-1].nodes:
            if len(u):
                nxt.add((u, v, (head,) + s[1:]))
        by_level_first: Dict[int, Dict[tuple, List[Node]]] = {}
        for node in stages[-1].nodes:
            if node_len(node):
                by_level_first.setdefault(node_len(node), {}).setdefault(
                    node[0], []
                ).append(node)
        for node in stages[-1].nodes:
            if not node_len(node):
                continue
            u, v, s = node
            rights = by_level_first.get(node_len(node), {}).get(v, [])
            for _, w, t in rights:
                tail = combine_tail(OrdSeq(s[1:]), OrdSeq(t[1:]))
                nxt.add((u, w, (head,) + tail.entries))
        stage = DstTree(tree.arity, depth, frozenset(nxt))
        stages.append(stage)
        union |= nxt
        new_pairs = {(u, v) for u, v, s in nxt if len(u) == depth}
        if new_pairs <= seen_pairs:
            break
        seen_pairs |= new_pairs
    return Closure(stages, DstTree(tree.arity, depth, frozenset(union)))


def compose_once(tree: DstTree) -> DstTree:
    """Add the direct combine-composition of every middle-matching pair.

    For (u, v, s) and (v, w, t) at one level the composite (u, w, s c t) is a
    node of the fully saturated object; one round of these is what embedding
    searches need on the codomain side.
    """
    nodes: Set[Node] = set(tree.nodes)
    by_level_first: Dict[int, Dict[tuple, List[Node]]] = {}
    for node in tree.nodes:
        if node_len(node):
            by_level_first.setdefault(node_len(node), {}).setdefault(
                node[0], []
            ).append(node)
    for node in tree.nodes:
        if not node_len(node):
            continue
        u, v, s = node
        for _, w, t in by_level_first.get(node_len(node), {}).get(v, []):
            comp = combine(OrdSeq(s), OrdSeq(t))
            nodes.add((u, w, comp.entries))
    return DstTree(tree.arity, tree.depth, frozenset(nodes))


# -- slices and projections ---------------------------------------------------

def section(tree: DstTree, x: tuple) -> DstTree:
    """The slice {(u, s) : (u, x restricted to lh(u), s) in tree}."""
    if len(x) < tree.depth:
        raise TreeError("section string shorter than tree depth")
    nodes: Set[Node] = {ROOT2}
    for u, v, s in tree.nodes:
        if v == tuple(x[: len(u)]):
            nodes.add((u, s))
    return DstTree(("bits", "ord"), tree.depth, frozenset(nodes))


def project_pairs(tree: DstTree, depth: int) -> FrozenSet[Tuple[tuple, tuple]]:
    """Pairs (u, v) with a witness at the given length."""
    if depth > tree.depth:
        raise TreeError("projection deeper than the tree")
    return frozenset((u, v) for u, v, s in tree.nodes if len(u) == depth)


def cofinal_branch(tree: DstTree, budget: int) -> Optional[List[Node]]:
    """A root-to-depth chain of length ``budget``, if one exists.

    Levelwise pruning: keep the nodes that still have descendants at the
    deepest requested level, then walk down through survivors.
    """
    levels: Dict[int, List[Node]] = {}
    for node in tree.nodes:
        levels.setdefault(node_len(node), []).append(node)
    if budget not in levels:
        return None
    alive: Dict[int, Set[Node]] = {budget: set(levels[budget])}
    for n in range(budget - 1, -1, -1):
        parents = {restrict_node(ch, n) for ch in alive[n + 1]}
        alive[n] = {node for node in levels.get(n, []) if node in parents}
        if not alive[n]:
            return None
    branch: List[Node] = []
    cur = None
    for n in range(budget + 1):
        candidates = sorted(
            (
                node
                for node in alive[n]
                if cur is None or restrict_node(node, n - 1) == cur
            ),
            key=_node_key,
        )
        if not candidates:
            return None
        cur = candidates[0]
        branch.append(cur)
    return branch


def dump_json(tree: DstTree) -> str:
    return _json.dumps(tree.to_json(), sort_keys=True, separators=(",", ":"))
