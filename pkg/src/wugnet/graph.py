"""Weighted, slot-labeled concept network.

Concepts are (kind, name) pairs. Directed edges carry an association
strength in [0, 1] that plateaus toward 1.0 under repeated observation
and jumps straight to 1.0 when asserted by a generic statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

OBJECT = "object"
ATTRIBUTE = "attribute"
ACTION = "action"
CATEGORY = "category"
KINDS = (OBJECT, ATTRIBUTE, ACTION, CATEGORY)

SLOT1 = "slot-1"
SLOT2 = "slot-2"
IS = "is"
LABELS = (SLOT1, SLOT2, IS)

DEFAULT_LEARNING_RATE = 0.2

_NAME_RE = re.compile(r"^[a-z][a-z-]*$")


class EdgeRuleError(ValueError):
    """An edge label that is not valid for the target concept's kind."""


class NetworkFormatError(ValueError):
    """Malformed network file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True, order=True)
class Concept:
    kind: str
    name: str

    @property
    def key(self) -> str:
        return f"{self.kind}/{self.name}"

    def __str__(self) -> str:
        return self.key


@dataclass
class Edge:
    source: Concept
    target: Concept
    label: str
    weight: float = 0.0
    generic_origin: bool = False


def _check_label(target: Concept, label: str) -> None:
    if label not in LABELS:
        raise EdgeRuleError(f"unknown edge label {label!r}")
    if label in (SLOT1, SLOT2) and target.kind != ACTION:
        raise EdgeRuleError(f"{label} edge must point at an action, not {target.key}")
    if label == IS and target.kind not in (ATTRIBUTE, CATEGORY):
        raise EdgeRuleError(f"is edge must point at an attribute or category, not {target.key}")


class ConceptNetwork:
    """Mutable store of concepts and slot-labeled association edges.

    Single writer during learning; read-only (by convention) afterwards.
    """

    def __init__(self, learning_rate: float = DEFAULT_LEARNING_RATE):
        self.learning_rate = learning_rate
        self._nodes: dict[tuple[str, str], Concept] = {}
        self._edges: dict[tuple[Concept, Concept, str], Edge] = {}
        self._out: dict[Concept, dict[tuple[Concept, str], Edge]] = {}

    # -- nodes ---------------------------------------------------------

    def add_concept(self, name: str, kind: str) -> Concept:
        """Create (or return the existing) concept for (name, kind)."""
        if kind not in KINDS:
            raise ValueError(f"unknown concept kind {kind!r}")
        if not _NAME_RE.match(name or ""):
            raise ValueError(f"malformed concept name {name!r}")
        node = self._nodes.get((kind, name))
        if node is None:
            node = Concept(kind, name)
            self._nodes[(kind, name)] = node
            self._out[node] = {}
        return node

    def get(self, name: str, kind: str) -> Concept | None:
        return self._nodes.get((kind, name))

    def require(self, name: str, kind: str) -> Concept:
        node = self.get(name, kind)
        if node is None:
            raise KeyError(f"no concept {kind}/{name}")
        return node

    def named(self, name: str) -> list[Concept]:
        """All concepts with this name, across kinds, sorted by kind."""
        return sorted(n for n in self._nodes.values() if n.name == name)

    def concepts(self) -> list[Concept]:
        return sorted(self._nodes.values())

    def __contains__(self, node: Concept) -> bool:
        return (node.kind, node.name) in self._nodes

    def _require_member(self, node: Concept) -> None:
        if (node.kind, node.name) not in self._nodes:
            raise KeyError(f"concept {node.key} is not in this network")

    # -- edges ---------------------------------------------------------

    def edges(self) -> list[Edge]:
        return sorted(
            self._edges.values(),
            key=lambda e: (e.source.kind, e.source.name, e.target.kind, e.target.name, e.label),
        )

    def edge(self, src: Concept, dst: Concept, label: str) -> Edge | None:
        return self._edges.get((src, dst, label))

    def observe_association(self, src: Concept, dst: Concept, label: str) -> float:
        """Strengthen src->dst by one co-occurrence: a <- a + r*(1-a).

        Generic-origin edges stay at 1.0 (the update has its fixed point
        there anyway). Returns the new weight.
        """
        self._require_member(src)
        self._require_member(dst)
        _check_label(dst, label)
        e = self._edges.get((src, dst, label))
        if e is None:
            e = Edge(src, dst, label, 0.0)
            self._edges[(src, dst, label)] = e
            self._out[src][(dst, label)] = e
        if e.generic_origin:
            return 1.0
        e.weight = e.weight + self.learning_rate * (1.0 - e.weight)
        return e.weight

    def assert_generic(self, src: Concept, dst: Concept, label: str) -> float:
        """Pin src->dst at the maximum strength 1.0 and mark it generic."""
        self._require_member(src)
        self._require_member(dst)
        _check_label(dst, label)
        e = self._edges.get((src, dst, label))
        if e is None:
            e = Edge(src, dst, label)
            self._edges[(src, dst, label)] = e
            self._out[src][(dst, label)] = e
        e.weight = 1.0
        e.generic_origin = True
        return 1.0

    def set_strength(self, src: Concept, dst: Concept, label: str, weight: float,
                     generic: bool = False) -> None:
        """Write an edge weight directly (used for feature inheritance)."""
        self._require_member(src)
        self._require_member(dst)
        _check_label(dst, label)
        if not 0.0 <= weight <= 1.0:
            raise ValueError(f"edge weight {weight} outside [0, 1]")
        if generic and weight != 1.0:
            raise ValueError("generic edges must have weight 1.0")
        e = self._edges.get((src, dst, label))
        if e is None:
            e = Edge(src, dst, label)
            self._edges[(src, dst, label)] = e
            self._out[src][(dst, label)] = e
        e.weight = weight
        e.generic_origin = generic

    def get_strength(self, src: Concept, dst: Concept, label: str) -> float:
        """Current weight of src->dst, 0.0 when no such edge exists."""
        e = self._edges.get((src, dst, label))
        return e.weight if e is not None else 0.0

    def neighbors(self, node: Concept) -> list[tuple[Concept, str, float]]:
        """Outgoing edges of a node, sorted by target name then label."""
        self._require_member(node)
        out = [(e.target, e.label, e.weight) for e in self._out[node].values()]
        out.sort(key=lambda t: (t[0].name, t[0].kind, t[1]))
        return out

    def members_of(self, category: Concept) -> list[Concept]:
        """Concepts holding an `is` edge into the category, sorted by name."""
        self._require_member(category)
        if category.kind != CATEGORY:
            raise ValueError(f"{category.key} is not a category")
        members = [e.source for e in self._edges.values()
                   if e.target == category and e.label == IS]
        return sorted(members, key=lambda n: (n.name, n.kind))

    # -- whole-network helpers ------------------------------------------

    def copy(self) -> "ConceptNetwork":
        out = ConceptNetwork(self.learning_rate)
        for node in self._nodes.values():
            out.add_concept(node.name, node.kind)
        for e in self._edges.values():
            out.set_strength(e.source, e.target, e.label, e.weight, e.generic_origin)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConceptNetwork):
            return NotImplemented
        if set(self._nodes) != set(other._nodes):
            return False
        if set(self._edges) != set(other._edges):
            return False
        for key, e in self._edges.items():
            o = other._edges[key]
            if e.weight != o.weight or e.generic_origin != o.generic_origin:
                return False
        return True

    def __len__(self) -> int:
        return len(self._nodes)


def diff_networks(before: ConceptNetwork, after: ConceptNetwork) -> list[str]:
    """Human-readable structural differences, one string per change."""
    out: list[str] = []
    b_nodes = {(n.kind, n.name) for n in before.concepts()}
    a_nodes = {(n.kind, n.name) for n in after.concepts()}
    for kind, name in sorted(a_nodes - b_nodes):
        out.append(f"+node {kind}/{name}")
    for kind, name in sorted(b_nodes - a_nodes):
        out.append(f"-node {kind}/{name}")
    b_edges = {(e.source.key, e.label, e.target.key): e for e in before.edges()}
    a_edges = {(e.source.key, e.label, e.target.key): e for e in after.edges()}
    for key in sorted(set(a_edges) - set(b_edges)):
        e = a_edges[key]
        out.append(f"+edge {key[0]} {key[1]} {key[2]} = {e.weight:.17g}")
    for key in sorted(set(b_edges) - set(a_edges)):
        out.append(f"-edge {key[0]} {key[1]} {key[2]}")
    for key in sorted(set(b_edges) & set(a_edges)):
        b, a = b_edges[key], a_edges[key]
        if b.weight != a.weight or b.generic_origin != a.generic_origin:
            out.append(f"~edge {key[0]} {key[1]} {key[2]} {b.weight:.17g} -> {a.weight:.17g}")
    return out


# -- persistence --------------------------------------------------------

def network_to_text(net: ConceptNetwork) -> str:
    lines = ["conceptnet v1"]
    for node in net.concepts():
        lines.append(f"node {node.kind} {node.name}")
    for e in net.edges():
        lines.append(
            f"edge {e.source.key} {e.label} {e.target.key} "
            f"{e.weight:.17g} generic:{int(e.generic_origin)}"
        )
    return "\n".join(lines) + "\n"


def network_from_text(text: str) -> ConceptNetwork:
    net = ConceptNetwork()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != "conceptnet v1":
                raise NetworkFormatError(f"expected header 'conceptnet v1', got {line!r}", lineno)
            seen_header = True
            continue
        fields = line.split()
        if fields[0] == "node":
            if len(fields) != 3:
                raise NetworkFormatError("node line needs 'node <kind> <name>'", lineno)
            _, kind, name = fields
            if kind not in KINDS:
                raise NetworkFormatError(f"unknown kind {kind!r}", lineno)
            if net.get(name, kind) is not None:
                raise NetworkFormatError(f"duplicate node {kind}/{name}", lineno)
            try:
                net.add_concept(name, kind)
            except ValueError as err:
                raise NetworkFormatError(str(err), lineno) from err
        elif fields[0] == "edge":
            if len(fields) != 6:
                raise NetworkFormatError("edge line needs 6 fields", lineno)
            _, src_key, label, dst_key, weight_s, flag_s = fields
            src = _node_from_key(net, src_key, lineno)
            dst = _node_from_key(net, dst_key, lineno)
            if label not in LABELS:
                raise NetworkFormatError(f"unknown edge label {label!r}", lineno)
            try:
                weight = float(weight_s)
            except ValueError as err:
                raise NetworkFormatError(f"bad weight {weight_s!r}", lineno) from err
            if not 0.0 <= weight <= 1.0:
                raise NetworkFormatError(f"weight {weight_s} outside [0, 1]", lineno)
            if flag_s not in ("generic:0", "generic:1"):
                raise NetworkFormatError(f"bad generic flag {flag_s!r}", lineno)
            try:
                net.set_strength(src, dst, label, weight, flag_s == "generic:1")
            except ValueError as err:
                raise NetworkFormatError(str(err), lineno) from err
        else:
            raise NetworkFormatError(f"unexpected line {fields[0]!r}", lineno)
    if not seen_header:
        raise NetworkFormatError("empty file: missing 'conceptnet v1' header", 1)
    return net


def _node_from_key(net: ConceptNetwork, key: str, lineno: int) -> Concept:
    kind, sep, name = key.partition("/")
    if not sep:
        raise NetworkFormatError(f"bad concept key {key!r} (want kind/name)", lineno)
    node = net.get(name, kind)
    if node is None:
        raise NetworkFormatError(f"edge references undeclared concept {key!r}", lineno)
    return node


def save_network(net: ConceptNetwork, destination: str | Path) -> None:
    Path(destination).write_text(network_to_text(net), encoding="utf-8")


def load_network(source: str | Path) -> ConceptNetwork:
    return network_from_text(Path(source).read_text(encoding="utf-8"))
