"""Combinatorial holomorphic buildings and their consistency checks.

A building is a stack of levels, bottom first.  Each level holds components
with positive and negative asymptotic orbits; consecutive levels are glued
along matching orbit labels.  Nothing about maps or almost complex structures
is modeled, only the data that the compactness conditions talk about.

Level kinds:

* ``bottom_cobordism``, ``symplectization``, ``top_symplectization``: exact
  levels where a nonconstant component has energy A(Gamma+) - A(Gamma-).
* ``nonexact_cobordism``: energies are only required to be nonnegative.

Constant components can only be attached through nodes, given as pairs of
component ids in ``nodes``.  The telescoping identity is reported only for
node-free buildings made of exact levels.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .errors import InvalidScale, ParseError
from .rational import Q, fmt

EXACT_KINDS = frozenset({"bottom_cobordism", "symplectization", "top_symplectization"})
SYMPLECTIZATION_KINDS = frozenset({"symplectization", "top_symplectization"})
LEVEL_KINDS = EXACT_KINDS | {"nonexact_cobordism"}

CODES = (
    "MATCH_FAIL",
    "NOT_TREE",
    "TRIVIAL_LEVEL",
    "CONST_UNSTABLE",
    "ENERGY_ID",
    "ENERGY_BUDGET",
    "ENERGY_POSITIVE",
    "TANGENCY_SUM",
    "TANGENCY_CARRIER",
    "PUNCTURE_COUNT",
)


@dataclass(frozen=True)
class OrbitRef:
    label: str
    action: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "action", Q(self.action))
        if self.action <= 0:
            raise ValueError(f"orbit {self.label}: action must be positive")
        if self.multiplicity < 1:
            raise ValueError(f"orbit {self.label}: multiplicity must be positive")


@dataclass(frozen=True)
class BuildingComponent:
    id: str
    positive_orbits: tuple[OrbitRef, ...] = ()
    negative_orbits: tuple[OrbitRef, ...] = ()
    is_constant: bool = False
    special_points: int | None = None
    energy_tilde: Fraction = Fraction(0)
    tangency_order: int = 0
    carries_tangency: bool = False

    def __post_init__(self):
        object.__setattr__(self, "positive_orbits", tuple(self.positive_orbits))
        object.__setattr__(self, "negative_orbits", tuple(self.negative_orbits))
        object.__setattr__(self, "energy_tilde", Q(self.energy_tilde))
        if self.special_points is None:
            object.__setattr__(self, "special_points", self.num_punctures)
        if self.special_points < 0 or self.tangency_order < 0:
            raise ValueError(f"component {self.id}: negative count")

    @property
    def num_punctures(self) -> int:
        return len(self.positive_orbits) + len(self.negative_orbits)

    @property
    def action_difference(self) -> Fraction:
        return sum((o.action for o in self.positive_orbits), Fraction(0)) - sum(
            (o.action for o in self.negative_orbits), Fraction(0)
        )

    @property
    def is_trivial_cylinder(self) -> bool:
        return (
            not self.is_constant
            and len(self.positive_orbits) == 1
            and len(self.negative_orbits) == 1
            and self.positive_orbits[0].label == self.negative_orbits[0].label
            and self.energy_tilde == 0
        )


@dataclass(frozen=True)
class Level:
    kind: str
    components: tuple[BuildingComponent, ...]
    cotangent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.kind not in LEVEL_KINDS:
            raise ValueError(f"unknown level kind {self.kind!r}")

    def orbits(self, sign: str) -> list[OrbitRef]:
        attr = "positive_orbits" if sign == "+" else "negative_orbits"
        return [o for c in self.components for o in getattr(c, attr)]


@dataclass(frozen=True)
class HolomorphicBuilding:
    levels: tuple[Level, ...]
    target_tangency_k: int = 0
    top_orbits: tuple[OrbitRef, ...] = ()
    bottom_orbits: tuple[OrbitRef, ...] = ()
    nodes: tuple[tuple[str, str], ...] = ()
    budget: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "top_orbits", tuple(self.top_orbits))
        object.__setattr__(self, "bottom_orbits", tuple(self.bottom_orbits))
        object.__setattr__(self, "nodes", tuple(tuple(p) for p in self.nodes))
        if self.budget is not None:
            object.__setattr__(self, "budget", Q(self.budget))
        if not self.levels:
            raise ValueError("a building needs at least one level")
        ids = [c.id for c in self.components()]
        dup = [i for i, m in Counter(ids).items() if m > 1]
        if dup:
            raise ValueError(f"duplicate component ids {dup}")
        known = set(ids)
        for a, b in self.nodes:
            if a not in known or b not in known or a == b:
                raise ValueError(f"node ({a}, {b}) must join two distinct known components")

    def components(self) -> list[BuildingComponent]:
        return [c for lv in self.levels for c in lv.components]

    def level_of(self, cid: str) -> int:
        for nu, lv in enumerate(self.levels, 1):
            if any(c.id == cid for c in lv.components):
                return nu
        raise KeyError(cid)


@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} [{self.where}] {self.message}"


@dataclass(frozen=True)
class EnergyReport:
    total: Fraction
    budget: Fraction | None
    telescoping: Fraction | None
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    energy: EnergyReport

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def _labels(orbits: Iterable[OrbitRef]) -> Counter:
    return Counter(o.label for o in orbits)


def _diff(want: Counter, got: Counter) -> str:
    missing = sorted((want - got).elements())
    extra = sorted((got - want).elements())
    return f"missing {missing}, unexpected {extra}"


def validate_matching(F: HolomorphicBuilding) -> list[Violation]:
    out = []
    lv = F.levels
    for nu in range(len(lv) - 1):
        up, down = _labels(lv[nu].orbits("+")), _labels(lv[nu + 1].orbits("-"))
        if up != down:
            out.append(Violation("MATCH_FAIL", f"interface {nu + 1}|{nu + 2}", _diff(up, down)))
    top, got = _labels(F.top_orbits), _labels(lv[-1].orbits("+"))
    if top != got:
        out.append(Violation("MATCH_FAIL", "top", _diff(top, got)))
    bottom, got = _labels(F.bottom_orbits), _labels(lv[0].orbits("-"))
    if bottom != got:
        out.append(Violation("MATCH_FAIL", "bottom", _diff(bottom, got)))
    return out


def _edges(F: HolomorphicBuilding) -> list[tuple[str, str]]:
    """One edge per glued orbit pair plus one per node.

    Repeated labels at an interface are paired in order of appearance.
    """
    edges = list(F.nodes)
    for nu in range(len(F.levels) - 1):
        owners: dict[str, list[str]] = defaultdict(list)
        for c in F.levels[nu].components:
            for o in c.positive_orbits:
                owners[o.label].append(c.id)
        for c in F.levels[nu + 1].components:
            for o in c.negative_orbits:
                if owners[o.label]:
                    edges.append((owners[o.label].pop(0), c.id))
    return edges


def validate_tree(F: HolomorphicBuilding) -> list[Violation]:
    ids = [c.id for c in F.components()]
    parent = {i: i for i in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for a, b in _edges(F):
        ra, rb = find(a), find(b)
        if ra == rb:
            out.append(Violation("NOT_TREE", f"{a}-{b}", "edge closes a cycle"))
        else:
            parent[ra] = rb
    roots = {find(i) for i in ids}
    if len(roots) > 1:
        out.append(Violation("NOT_TREE", "graph", f"{len(roots)} connected pieces"))
    return out


def validate_stability(F: HolomorphicBuilding) -> list[Violation]:
    out = []
    for nu, lv in enumerate(F.levels, 1):
        if lv.kind in SYMPLECTIZATION_KINDS and lv.components and all(
            c.is_trivial_cylinder for c in lv.components
        ):
            out.append(Violation("TRIVIAL_LEVEL", f"level {nu}", "only trivial cylinders"))
        for c in lv.components:
            if c.is_constant and 2 - c.special_points >= 0:
                out.append(
                    Violation(
                        "CONST_UNSTABLE",
                        c.id,
                        f"chi = 2 - {c.special_points} is not negative",
                    )
                )
    return out


def validate_energy(F: HolomorphicBuilding, budget=None) -> EnergyReport:
    budget = F.budget if budget is None else Q(budget)
    out = []
    total = Fraction(0)
    for lv in F.levels:
        for c in lv.components:
            e = c.energy_tilde
            total += e
            if c.is_constant:
                if e != 0:
                    out.append(Violation("ENERGY_ID", c.id, f"constant component with energy {fmt(e)}"))
            elif e < 0:
                out.append(Violation("ENERGY_ID", c.id, f"negative energy {fmt(e)}"))
            elif lv.kind in EXACT_KINDS and e != c.action_difference:
                out.append(
                    Violation(
                        "ENERGY_ID",
                        c.id,
                        f"energy {fmt(e)} != A(+) - A(-) = {fmt(c.action_difference)}",
                    )
                )
    if budget is not None and total > budget:
        out.append(Violation("ENERGY_BUDGET", "building", f"total {fmt(total)} > {fmt(budget)}"))
    if total <= 0 and any(not c.is_constant for c in F.components()):
        out.append(Violation("ENERGY_POSITIVE", "building", f"total energy {fmt(total)}"))
    telescoping = None
    if not F.nodes and all(lv.kind in EXACT_KINDS for lv in F.levels):
        telescoping = sum((o.action for o in F.top_orbits), Fraction(0)) - sum(
            (o.action for o in F.bottom_orbits), Fraction(0)
        )
    return EnergyReport(total, budget, telescoping, tuple(out))


def _collapsed_neighbours(F: HolomorphicBuilding, start: str) -> set[str]:
    """Nonconstant components reached from ``start`` through constant ones."""
    const = {c.id for c in F.components() if c.is_constant}
    adj = defaultdict(set)
    for a, b in _edges(F):
        adj[a].add(b)
        adj[b].add(a)
    seen, stack, found = {start}, [start], set()
    while stack:
        for nb in adj[stack.pop()]:
            if nb in seen:
                continue
            seen.add(nb)
            if nb in const:
                stack.append(nb)
            else:
                found.add(nb)
    return found


def validate_tangency(F: HolomorphicBuilding) -> list[Violation]:
    out = []
    k = F.target_tangency_k
    carriers = [c for c in F.components() if c.carries_tangency]
    if k == 0:
        if carriers:
            out.append(Violation("TANGENCY_CARRIER", carriers[0].id, "no constraint to carry"))
    elif len(carriers) != 1:
        out.append(
            Violation("TANGENCY_CARRIER", "building", f"{len(carriers)} carriers, need exactly one")
        )
    else:
        C = carriers[0]
        if C.tangency_order != k:
            out.append(
                Violation("TANGENCY_CARRIER", C.id, f"order {C.tangency_order} != target {k}")
            )
        elif C.is_constant:
            by_id = {c.id: c for c in F.components()}
            orders = sorted(by_id[i].tangency_order for i in _collapsed_neighbours(F, C.id))
            if not orders or min(orders) < 1 or sum(orders) < k:
                out.append(
                    Violation("TANGENCY_SUM", C.id, f"child orders {orders} do not reach {k}")
                )
    for lv in F.levels:
        if not lv.cotangent:
            continue
        for c in lv.components:
            kt = c.tangency_order
            if not c.is_constant and kt >= 1 and c.num_punctures <= kt:
                out.append(
                    Violation(
                        "PUNCTURE_COUNT", c.id, f"order {kt} needs >= {kt + 1} punctures, has {c.num_punctures}"
                    )
                )
    return out


def validate(F: HolomorphicBuilding, budget=None) -> ValidationReport:
    matching = validate_matching(F)
    tree = [] if matching else validate_tree(F)
    energy = validate_energy(F, budget)
    vs = matching + tree + validate_stability(F) + list(energy.violations) + validate_tangency(F)
    return ValidationReport(tuple(vs), energy)


def energy_bounds(E_tilde, s) -> tuple[Fraction, Fraction]:
    """Bounds on the action and on the hat-energy from the tilde-energy; ``s`` is e^K."""
    E, s = Q(E_tilde), Q(s)
    if s <= 1:
        raise InvalidScale(f"s must exceed 1, got {s}")
    if E < 0:
        raise ValueError("energy must be nonnegative")
    action, ehat = E / (s - 1), s * E / (s - 1)
    assert ehat == E + action
    return action, ehat


# --- JSON ---------------------------------------------------------------

_BUILDING_KEYS = {"levels", "target_tangency_k", "top_orbits", "bottom_orbits", "nodes", "budget", "orbits"}
_LEVEL_KEYS = {"kind", "components", "cotangent"}
_COMPONENT_KEYS = {
    "id", "positive", "negative", "constant", "special_points",
    "energy", "tangency_order", "carries_tangency",
}


def _check_keys(obj: Any, allowed: set, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"{where}: unknown keys {sorted(extra)}")
    return obj


def _orbit(raw, table: dict[str, OrbitRef], where: str) -> OrbitRef:
    if isinstance(raw, str):
        if raw not in table:
            raise ParseError(f"{where}: orbit {raw!r} not in the orbit table")
        return table[raw]
    raw = _check_keys(raw, {"label", "action", "multiplicity"}, where)
    try:
        return OrbitRef(str(raw["label"]), Q(raw["action"]), int(raw.get("multiplicity", 1)))
    except KeyError as e:
        raise ParseError(f"{where}: missing {e}") from None


def from_json(data: dict) -> HolomorphicBuilding:
    data = _check_keys(data, _BUILDING_KEYS, "building")
    table = {}
    for label, entry in data.get("orbits", {}).items():
        entry = _check_keys(entry, {"action", "multiplicity"}, f"orbits.{label}")
        table[label] = OrbitRef(label, Q(entry["action"]), int(entry.get("multiplicity", 1)))

    def orbits(raws, where):
        return tuple(_orbit(r, table, f"{where}[{i}]") for i, r in enumerate(raws))

    levels = []
    for li, lraw in enumerate(data.get("levels", [])):
        lraw = _check_keys(lraw, _LEVEL_KEYS, f"levels[{li}]")
        comps = []
        for ci, craw in enumerate(lraw.get("components", [])):
            where = f"levels[{li}].components[{ci}]"
            craw = _check_keys(craw, _COMPONENT_KEYS, where)
            if "id" not in craw:
                raise ParseError(f"{where}: missing 'id'")
            comps.append(
                BuildingComponent(
                    id=str(craw["id"]),
                    positive_orbits=orbits(craw.get("positive", []), f"{where}.positive"),
                    negative_orbits=orbits(craw.get("negative", []), f"{where}.negative"),
                    is_constant=bool(craw.get("constant", False)),
                    special_points=craw.get("special_points"),
                    energy_tilde=Q(craw.get("energy", 0)),
                    tangency_order=int(craw.get("tangency_order", 0)),
                    carries_tangency=bool(craw.get("carries_tangency", False)),
                )
            )
        levels.append(Level(lraw.get("kind", ""), tuple(comps), bool(lraw.get("cotangent", False))))
    budget = data.get("budget")
    return HolomorphicBuilding(
        levels=tuple(levels),
        target_tangency_k=int(data.get("target_tangency_k", 0)),
        top_orbits=orbits(data.get("top_orbits", []), "top_orbits"),
        bottom_orbits=orbits(data.get("bottom_orbits", []), "bottom_orbits"),
        nodes=tuple(tuple(p) for p in data.get("nodes", [])),
        budget=None if budget is None else Q(budget),
    )


def _orbit_json(o: OrbitRef) -> dict:
    return {"label": o.label, "action": fmt(o.action), "multiplicity": o.multiplicity}


def to_json(F: HolomorphicBuilding) -> dict:
    out: dict[str, Any] = {
        "target_tangency_k": F.target_tangency_k,
        "top_orbits": [_orbit_json(o) for o in F.top_orbits],
        "bottom_orbits": [_orbit_json(o) for o in F.bottom_orbits],
        "levels": [
            {
                "kind": lv.kind,
                "cotangent": lv.cotangent,
                "components": [
                    {
                        "id": c.id,
                        "positive": [_orbit_json(o) for o in c.positive_orbits],
                        "negative": [_orbit_json(o) for o in c.negative_orbits],
                        "constant": c.is_constant,
                        "special_points": c.special_points,
                        "energy": fmt(c.energy_tilde),
                        "tangency_order": c.tangency_order,
                        "carries_tangency": c.carries_tangency,
                    }
                    for c in lv.components
                ],
            }
            for lv in F.levels
        ],
    }
    if F.nodes:
        out["nodes"] = [list(p) for p in F.nodes]
    if F.budget is not None:
        out["budget"] = fmt(F.budget)
    return out


def loads(text: str) -> HolomorphicBuilding:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        return from_json(data)
    except (TypeError, ValueError, KeyError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from None


# --- the three-level building with p = 3 --------------------------------


def proof_figure_building() -> HolomorphicBuilding:
    """Bottom cotangent level, one symplectization level, top cobordism to gamma_0.

    The bottom component carries the order-2 tangency and has three positive
    ends; the subtree at gamma_1 reaches gamma_0, the other two close off in
    the top level.  Energies sum to the budget 9, so any raise is detected.
    """
    o = {
        lab: OrbitRef(lab, Q(act))
        for lab, act in [
            ("gamma0", 9), ("gamma1", 1), ("gamma2", 1), ("gamma3", 1),
            ("f1", 1), ("f2", "3/2"), ("f3", "3/2"), ("f4", 1), ("f5", "1/2"), ("f6", "1/2"),
        ]
    }
    comp = BuildingComponent
    bottom = Level(
        "bottom_cobordism",
        (comp("C", (o["gamma1"], o["gamma2"], o["gamma3"]), energy_tilde=3,
              tangency_order=2, carries_tangency=True),),
        cotangent=True,
    )
    middle = Level(
        "symplectization",
        (
            comp("A", (o["f1"], o["f4"]), (o["gamma1"],), energy_tilde=1),
            comp("Z2", (o["f2"],), (o["gamma2"],), energy_tilde=Q("1/2")),
            comp("Z3", (o["f3"],), (o["gamma3"],), energy_tilde=Q("1/2")),
            comp("B", (o["f5"], o["f6"]), (), energy_tilde=1),
        ),
    )
    top = Level(
        "nonexact_cobordism",
        (
            comp("T0", (o["gamma0"],), (o["f1"],), energy_tilde=1),
            comp("D4", (), (o["f4"],), energy_tilde=Q("1/2")),
            comp("D2", (), (o["f2"],), energy_tilde=Q("1/2")),
            comp("P35", (), (o["f3"], o["f5"]), energy_tilde=Q("1/2")),
            comp("D3", (), (o["f6"],), energy_tilde=Q("1/2")),
        ),
    )
    return HolomorphicBuilding(
        (bottom, middle, top), target_tangency_k=2, top_orbits=(o["gamma0"],), budget=9
    )
