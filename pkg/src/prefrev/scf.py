"""Social choice functions: profiles, built-in rules, tables, and the file format.

A profile space is indexed mixed-radix with voter 0 most significant: the
digit of voter v is the canonical position of their order inside their
feasible set.  Every scan in the package walks this index ascending, which
is what makes witnesses reproducible across runs and worker counts.

An :class:`Scf` body is either a table (one alternative per profile index)
or a named rule with parameters.  Rules evaluate on societies of any size,
which the quotient reduction relies on; tables require the profile space to
fit the guard.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from .errors import ArgumentError, ConstructionError, ParseError
from .orders import (
    AlternativeSet,
    Axis,
    WeakOrder,
    format_order,
    parse_order,
    peak_position,
    is_single_peaked,
)
from .domains import (
    DEFAULT_PROFILE_GUARD,
    Domain,
    FeasibleSet,
    parse_domain_file,
    _parse_preset,
)


@dataclass(frozen=True)
class Profile:
    """One order per voter."""

    orders: tuple[WeakOrder, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if not self.orders:
            raise ConstructionError("profile must cover at least one voter")

    @property
    def n(self) -> int:
        return len(self.orders)

    def __getitem__(self, v: int) -> WeakOrder:
        return self.orders[v]

    def replace(self, v: int, order: WeakOrder) -> "Profile":
        orders = list(self.orders)
        orders[v] = order
        return Profile(tuple(orders))

    def replace_many(self, changes: dict[int, WeakOrder]) -> "Profile":
        orders = list(self.orders)
        for v, order in changes.items():
            orders[v] = order
        return Profile(tuple(orders))


def profile_strides(domain: Domain) -> tuple[int, ...]:
    """Mixed-radix strides, voter 0 most significant."""
    strides = [1] * domain.n
    for v in range(domain.n - 2, -1, -1):
        strides[v] = strides[v + 1] * len(domain.feasible[v + 1])
    return tuple(strides)


def profile_digits(domain: Domain, profile: Profile) -> tuple[int, ...]:
    if profile.n != domain.n:
        raise ArgumentError(
            f"profile has {profile.n} voters, domain has {domain.n}"
        )
    digits = []
    for v, order in enumerate(profile.orders):
        d = domain.feasible[v].index_of(order)
        if d is None:
            raise ArgumentError(
                f"voter {v + 1}'s order is outside their feasible set"
            )
        digits.append(d)
    return tuple(digits)


def profile_index(domain: Domain, profile: Profile) -> int:
    """Encode a profile as its canonical index; inverse of :func:`profile_at`."""
    digits = profile_digits(domain, profile)
    strides = profile_strides(domain)
    return sum(d * s for d, s in zip(digits, strides))


def profile_at(domain: Domain, index: int) -> Profile:
    count = domain.profile_count()
    if not 0 <= index < count:
        raise ArgumentError(f"profile index {index} outside [0, {count})")
    orders = []
    for v in range(domain.n - 1, -1, -1):
        m = len(domain.feasible[v])
        orders.append(domain.feasible[v][index % m])
        index //= m
    return Profile(tuple(reversed(orders)))


def iter_profiles(
    domain: Domain, guard: int = DEFAULT_PROFILE_GUARD
) -> Iterator[Profile]:
    """All profiles in canonical index order (odometer walk)."""
    domain.require_enumerable(guard)
    sizes = [len(fs) for fs in domain.feasible]
    digits = [0] * domain.n
    while True:
        yield Profile(tuple(domain.feasible[v][digits[v]] for v in range(domain.n)))
        v = domain.n - 1
        while v >= 0:
            digits[v] += 1
            if digits[v] < sizes[v]:
                break
            digits[v] = 0
            v -= 1
        if v < 0:
            return


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------

RULE_NAMES = (
    "constant",
    "dictator-tiebreak",
    "paper-example",
    "median-peaks",
    "plurality-tiebreak",
)


@dataclass(frozen=True, eq=True)
class Rule:
    """A named pure evaluation procedure with normalized parameters.

    Rules are compared (params is a plain dict) but never hashed.
    """

    name: str
    params: dict[str, Any] = field(default_factory=dict)


def _eval_constant(params, alts, orders):
    return params["alternative"]


def _eval_dictator(params, alts, orders):
    top = orders[params["voter"]].top_set()
    for x in params["tiebreak"]:
        if x in top:
            return x
    raise RuntimeError("tiebreak order failed to cover the top set")


def _eval_paper_example(params, alts, orders):
    # Voter 1 picks; a tie among their tops is settled by the best of those
    # tops under voter 2's inverted report, alphabetically first if several.
    p1, p2 = orders
    tops = p1.top_set()
    if len(tops) == 1:
        return next(iter(tops))
    inv = p2.invert()
    best = min(inv.ranks[x] for x in tops)
    return min(
        (x for x in tops if inv.ranks[x] == best), key=lambda x: alts.names[x]
    )


def _eval_median_peaks(params, alts, orders):
    axis = Axis(params["axis"])
    peaks = sorted(peak_position(order, axis) for order in orders)
    return axis.order[peaks[(len(peaks) - 1) // 2]]


def _eval_plurality(params, alts, orders):
    counts = [0] * alts.k
    for order in orders:
        top = order.top_set()
        if len(top) == 1:
            counts[next(iter(top))] += 1
    best = max(counts)
    for x in params["tiebreak"]:
        if counts[x] == best:
            return x
    raise RuntimeError("tiebreak order failed to cover the alternatives")


def _eval_cloned(params, alts, orders):
    base = params["base"]
    blown = tuple(orders[c] for c in params["assignment"])
    return _RULE_EVALUATORS[base.name](base.params, alts, blown)


_RULE_EVALUATORS: dict[str, Callable] = {
    "constant": _eval_constant,
    "dictator-tiebreak": _eval_dictator,
    "paper-example": _eval_paper_example,
    "median-peaks": _eval_median_peaks,
    "plurality-tiebreak": _eval_plurality,
    "cloned": _eval_cloned,
}


# ---------------------------------------------------------------------------
# Scf
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Scf:
    """A total map from the profile space to alternatives."""

    domain: Domain
    rule: Rule | None = None
    table: np.ndarray | None = None

    def __post_init__(self):
        if (self.rule is None) == (self.table is None):
            raise ConstructionError("scf needs exactly one body: rule or table")
        if self.table is not None:
            table = np.asarray(self.table, dtype=np.uint8)
            if table.ndim != 1 or len(table) != self.domain.profile_count():
                raise ConstructionError(
                    "table length must equal the profile count"
                )
            if table.size and int(table.max()) >= self.domain.k:
                raise ConstructionError("table contains an out-of-range alternative")
            table.setflags(write=False)
            object.__setattr__(self, "table", table)

    @property
    def body_kind(self) -> str:
        return "table" if self.table is not None else "rule"

    @classmethod
    def from_table(cls, domain: Domain, values: Sequence[int]) -> "Scf":
        return cls(domain, table=np.asarray(values, dtype=np.uint8))

    @classmethod
    def from_rule(cls, domain: Domain, rule: Rule) -> "Scf":
        if rule.name not in _RULE_EVALUATORS:
            raise ConstructionError(f"unknown rule {rule.name!r}")
        return cls(domain, rule=rule)


def evaluate(scf: Scf, profile: Profile) -> int:
    """The chosen alternative; raises ArgumentError off the domain."""
    if scf.table is not None:
        return int(scf.table[profile_index(scf.domain, profile)])
    profile_digits(scf.domain, profile)  # membership check
    return _RULE_EVALUATORS[scf.rule.name](
        scf.rule.params, scf.domain.alts, profile.orders
    )


def tabulate(scf: Scf, guard: int = DEFAULT_PROFILE_GUARD) -> Scf:
    """Materialize a rule into a table; idempotent on tables."""
    if scf.table is not None:
        return scf
    count = scf.domain.require_enumerable(guard)
    fn = _RULE_EVALUATORS[scf.rule.name]
    params, alts = scf.rule.params, scf.domain.alts
    values = np.fromiter(
        (fn(params, alts, profile.orders) for profile in iter_profiles(scf.domain, guard)),
        dtype=np.uint8,
        count=count,
    )
    return Scf(scf.domain, table=values)


def range_of(scf: Scf, guard: int = DEFAULT_PROFILE_GUARD) -> frozenset[int]:
    """Exact image of the profile space."""
    table = tabulate(scf, guard).table
    return frozenset(int(x) for x in np.unique(table))


# ---------------------------------------------------------------------------
# Built-in rules
# ---------------------------------------------------------------------------


def _as_alt(value, alts: AlternativeSet) -> int:
    if isinstance(value, str):
        return alts.index_of(value)
    x = int(value)
    if not 0 <= x < alts.k:
        raise ArgumentError(f"alternative index {x} outside range(0, {alts.k})")
    return x


def _as_tiebreak(value, alts: AlternativeSet) -> tuple[int, ...]:
    if value is None:
        order = sorted(range(alts.k), key=lambda x: alts.names[x])
        return tuple(order)
    tie = tuple(_as_alt(v, alts) for v in value)
    if sorted(tie) != list(range(alts.k)):
        raise ArgumentError("tiebreak must list every alternative exactly once")
    return tie


def _as_axis(value, alts: AlternativeSet) -> Axis:
    if value is None:
        return Axis.identity(alts.k)
    if isinstance(value, Axis):
        axis = value
    else:
        axis = Axis(tuple(_as_alt(v, alts) for v in value))
    if axis.k != alts.k:
        raise ArgumentError("axis length does not match alternative count")
    return axis


def builtin(name: str, domain: Domain, **params) -> Scf:
    """Construct one of the built-in rules, validated against the domain.

    Names: ``constant(alternative)``, ``dictator-tiebreak(voter, tiebreak)``,
    ``paper-example`` (two voters, alphabetical tie-break),
    ``median-peaks(axis)`` (left median for even societies; needs strict
    single-peaked feasible sets), ``plurality-tiebreak(tiebreak)`` (a
    deliberately manipulable control).
    """
    alts = domain.alts
    if name == "constant":
        if "alternative" not in params:
            raise ArgumentError("constant rule needs an 'alternative' parameter")
        norm = {"alternative": _as_alt(params.pop("alternative"), alts)}
    elif name == "dictator-tiebreak":
        if "voter" not in params:
            raise ArgumentError("dictator-tiebreak needs a 'voter' parameter")
        voter = int(params.pop("voter"))
        if not 0 <= voter < domain.n:
            raise ArgumentError(f"dictator {voter} outside range(0, {domain.n})")
        norm = {
            "voter": voter,
            "tiebreak": _as_tiebreak(params.pop("tiebreak", None), alts),
        }
    elif name == "paper-example":
        if domain.n != 2:
            raise ArgumentError("paper-example is defined for exactly two voters")
        norm = {}
    elif name == "median-peaks":
        axis = _as_axis(params.pop("axis", None), alts)
        for v, fs in enumerate(domain.feasible):
            for order in fs:
                if not order.is_strict() or not is_single_peaked(order, axis):
                    raise ArgumentError(
                        f"median-peaks needs strict single-peaked feasible sets; "
                        f"voter {v + 1} admits {format_order(order, alts)}"
                    )
        norm = {"axis": axis.order}
    elif name == "plurality-tiebreak":
        norm = {"tiebreak": _as_tiebreak(params.pop("tiebreak", None), alts)}
    else:
        raise ArgumentError(f"unknown built-in rule {name!r}")
    if params:
        raise ArgumentError(f"unexpected parameters for {name}: {sorted(params)}")
    return Scf.from_rule(domain, Rule(name, norm))


def cloned_rule(base: Rule, assignment: Sequence[int]) -> Rule:
    """Rule evaluating ``base`` on the profile blown up along ``assignment``.

    ``assignment[v]`` is the index of the (class) voter whose report the
    original voter v receives; used by the quotient reduction.
    """
    if base.name not in _RULE_EVALUATORS or base.name == "cloned":
        raise ArgumentError(f"cannot clone rule {base.name!r}")
    return Rule("cloned", {"base": base, "assignment": tuple(int(c) for c in assignment)})


# ---------------------------------------------------------------------------
# File format (canonical JSON)
# ---------------------------------------------------------------------------


def dumps_canonical(doc: Any) -> str:
    """Deterministic JSON used by every structured output in the package."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def domain_to_dict(domain: Domain) -> dict:
    voters = []
    for fs in domain.feasible:
        if fs.preset is not None:
            voters.append({"preset": fs.preset})
        else:
            voters.append(
                {"orders": [format_order(order, domain.alts) for order in fs]}
            )
    return {"voters": voters}


def domain_from_dict(data: dict, alts: AlternativeSet) -> Domain:
    feasible = []
    for i, entry in enumerate(data["voters"], start=1):
        if "preset" in entry:
            feasible.append(_parse_preset(entry["preset"], alts, line=None))
        elif "orders" in entry:
            orders = [parse_order(text, alts) for text in entry["orders"]]
            feasible.append(FeasibleSet.explicit(alts, orders))
        else:
            raise ParseError(f"voter {i}: expected 'preset' or 'orders'")
    return Domain(tuple(feasible))


def rule_params_to_dict(rule: Rule, alts: AlternativeSet) -> dict:
    params = rule.params
    if rule.name == "constant":
        return {"alternative": alts.names[params["alternative"]]}
    if rule.name == "dictator-tiebreak":
        return {
            "voter": params["voter"] + 1,
            "tiebreak": [alts.names[x] for x in params["tiebreak"]],
        }
    if rule.name == "median-peaks":
        return {"axis": [alts.names[x] for x in params["axis"]]}
    if rule.name == "plurality-tiebreak":
        return {"tiebreak": [alts.names[x] for x in params["tiebreak"]]}
    if rule.name == "cloned":
        return {
            "base": {
                "name": params["base"].name,
                "params": rule_params_to_dict(params["base"], alts),
            },
            "assignment": [c + 1 for c in params["assignment"]],
        }
    return {}


def rule_params_from_dict(name: str, data: dict, alts: AlternativeSet) -> dict:
    try:
        if name == "constant":
            return {"alternative": _as_alt(data["alternative"], alts)}
        if name == "dictator-tiebreak":
            return {
                "voter": int(data["voter"]) - 1,
                "tiebreak": _as_tiebreak(data.get("tiebreak"), alts),
            }
        if name == "median-peaks":
            return {"axis": _as_axis(data.get("axis"), alts).order}
        if name == "plurality-tiebreak":
            return {"tiebreak": _as_tiebreak(data.get("tiebreak"), alts)}
        if name == "cloned":
            base = data["base"]
            return {
                "base": Rule(
                    base["name"],
                    rule_params_from_dict(base["name"], base["params"], alts),
                ),
                "assignment": tuple(int(c) - 1 for c in data["assignment"]),
            }
        return {}
    except KeyError as exc:
        raise ParseError(
            f"rule {name!r} is missing parameter {exc.args[0]!r}"
        ) from None


def scf_to_dict(scf: Scf) -> dict:
    alts = scf.domain.alts
    doc = {
        "alternatives": list(alts.names),
        "voters": scf.domain.n,
        "domain": domain_to_dict(scf.domain),
    }
    if scf.rule is not None:
        doc["rule"] = {
            "name": scf.rule.name,
            "params": rule_params_to_dict(scf.rule, alts),
        }
    else:
        doc["table"] = [alts.names[int(x)] for x in scf.table]
    return doc


def scf_from_dict(data: dict, base_dir: str = ".") -> Scf:
    try:
        alts = AlternativeSet(tuple(data["alternatives"]))
        voters = int(data["voters"])
        dom_field = data["domain"]
        if isinstance(dom_field, str):
            domain = parse_domain_file(os.path.join(base_dir, dom_field))
            if domain.alts != alts:
                raise ParseError(
                    "referenced domain file uses different alternatives"
                )
        else:
            domain = domain_from_dict(dom_field, alts)
        if domain.n != voters:
            raise ParseError(
                f"'voters' is {voters} but the domain lists {domain.n} voters"
            )
        if "rule" in data:
            name = data["rule"]["name"]
            if name not in _RULE_EVALUATORS:
                raise ParseError(f"unknown rule {name!r}")
            params = rule_params_from_dict(name, data["rule"].get("params", {}), alts)
            if name == "cloned":
                return Scf.from_rule(
                    domain, cloned_rule(params["base"], params["assignment"])
                )
            # route through builtin so rule-domain consistency is enforced
            return builtin(name, domain, **params)
        if "table" in data:
            values = [alts.index_of(name) for name in data["table"]]
            return Scf.from_table(domain, values)
        raise ParseError("scf document needs either 'rule' or 'table'")
    except KeyError as exc:
        raise ParseError(f"scf document is missing field {exc.args[0]!r}") from None


def save_scf(scf: Scf, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(scf_to_dict(scf)))


def load_scf(path) -> Scf:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return scf_from_dict(data, base_dir=os.path.dirname(os.fspath(path)) or ".")
