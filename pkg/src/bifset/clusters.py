"""mu-clusters of Milnor arcs, their parity, and the atypical-value verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .arcs import MilnorArc, Monotonicity, RhoType
from .milnor import MilnorRadius, PrimitivityInfo
from .puiseux import LimitKind, LimitValue
from .realroots import AlgebraicReal


class Parity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"

    def __str__(self):
        return self.value


class Phenomenon(enum.Enum):
    VANISHING = "Vanishing"
    SPLITTING = "Splitting"

    def __str__(self):
        return self.value


@dataclass
class MuCluster:
    value: LimitValue
    direction: Monotonicity
    arc_indices: List[int]
    parity: Parity
    extremal_count: int
    first_extremal: Optional[RhoType] = None

    @property
    def phenomenon(self) -> Optional[Phenomenon]:
        """Label of an odd cluster with a finite limit: splitting when it opens with a Max arc,
        vanishing with a Min arc."""
        if self.parity != Parity.ODD or not self.value.is_finite:
            return None
        return Phenomenon.SPLITTING if self.first_extremal == RhoType.MAX else Phenomenon.VANISHING


@dataclass
class BifurcationReport:
    primitivity: PrimitivityInfo
    radius: MilnorRadius
    arcs: List[MilnorArc]
    clusters: List[MuCluster]
    critical_values: List[AlgebraicReal]
    atypical_regular_values: List[Tuple[AlgebraicReal, Set[Phenomenon]]]
    bifurcation_set: List[AlgebraicReal]
    infinity_points: list = field(default_factory=list)
    singular_arc_values: List[AlgebraicReal] = field(default_factory=list)
    polynomial: object = None           # the analysed (translated) polynomial
    source: object = None               # the polynomial as given
    bands: list = field(default_factory=list)

    @property
    def atypical_values(self) -> List[AlgebraicReal]:
        return [v for v, _ in self.atypical_regular_values]


def _value_key(v: LimitValue):
    order = {LimitKind.MINUS_INFINITY: 0, LimitKind.FINITE: 1, LimitKind.PLUS_INFINITY: 2}
    return order[v.kind]


def partition_by_value(arcs: Sequence[MilnorArc]) -> Dict[LimitValue, Tuple[List[int], List[int]]]:
    """Limit value -> (indices of increasing arcs, indices of decreasing arcs).

    Finite values come first in increasing order, then -inf and +inf.
    Singular arcs are left out.
    """
    groups: Dict[LimitValue, Tuple[List[int], List[int]]] = {}
    for a in arcs:
        if a.monotonicity == Monotonicity.SINGULAR:
            continue
        if a.limit is None:
            raise ValueError(f"arc {a.index} has no limit")
        inc, dec = groups.setdefault(a.limit, ([], []))
        (inc if a.monotonicity == Monotonicity.INCREASING else dec).append(a.index)
    finite = sorted((k for k in groups if k.is_finite), key=lambda k: k.value)
    other = sorted((k for k in groups if not k.is_finite), key=_value_key)
    return {k: groups[k] for k in finite + other}


def _key(a: MilnorArc):
    if a.monotonicity == Monotonicity.SINGULAR:
        return None
    return (a.limit, a.monotonicity)


def _runs(arcs: Sequence[MilnorArc]) -> List[List[MilnorArc]]:
    """Maximal cyclic runs of arcs sharing (limit, direction)."""
    n = len(arcs)
    if n == 0:
        return []
    keys = [_key(a) for a in arcs]
    start = next((i for i in range(n) if keys[i] != keys[i - 1]), None)
    if start is None:
        return [list(arcs)] if keys[0] is not None else []
    runs = []
    cur: List[MilnorArc] = []
    for k in range(n):
        i = (start + k) % n
        if cur and keys[i] != keys[(i - 1) % n]:
            runs.append(cur)
            cur = []
        cur.append(arcs[i])
    runs.append(cur)
    return [r for r in runs if _key(r[0]) is not None]


def cluster_parity(members: Sequence[MilnorArc]) -> Tuple[Parity, int]:
    count = sum(1 for a in members if a.rho_type in (RhoType.MAX, RhoType.MIN))
    return (Parity.ODD if count % 2 else Parity.EVEN), count


def form_clusters(arcs: Sequence[MilnorArc], include_infinite: bool = True) -> List[MuCluster]:
    """mu-clusters, ordered by their first arc index."""
    out = []
    for run in _runs(arcs):
        a0 = run[0]
        if not include_infinite and not a0.limit.is_finite:
            continue
        parity, count = cluster_parity(run)
        first = next((a.rho_type for a in run if a.rho_type in (RhoType.MAX, RhoType.MIN)), None)
        out.append(MuCluster(a0.limit, a0.monotonicity, [a.index for a in run], parity, count, first))
    out.sort(key=lambda c: c.arc_indices[0])
    return out


def cluster_alternation_violations(clusters: Sequence[MuCluster], arcs: Sequence[MilnorArc]) -> List[int]:
    """First arc indices of clusters whose extremal arcs do not alternate Max/Min."""
    by_index = {a.index: a for a in arcs}
    bad = []
    for c in clusters:
        types = [by_index[i].rho_type for i in c.arc_indices
                 if by_index[i].rho_type in (RhoType.MAX, RhoType.MIN)]
        if any(s == t for s, t in zip(types, types[1:])):
            bad.append(c.arc_indices[0])
    return bad


def verdict(primitivity: PrimitivityInfo, radius: MilnorRadius, arcs: Sequence[MilnorArc],
            critical_values: Sequence[AlgebraicReal], **extra) -> BifurcationReport:
    """Assemble the report: a finite regular value is atypical iff it owns an odd cluster."""
    clusters = form_clusters(arcs)
    crit = list(critical_values)
    singular_vals: List[AlgebraicReal] = []
    for a in arcs:
        if a.monotonicity == Monotonicity.SINGULAR and a.limit is not None and a.limit.is_finite:
            if a.limit.value not in singular_vals:
                singular_vals.append(a.limit.value)
            if a.limit.value not in crit:
                crit.append(a.limit.value)
    crit.sort()
    atyp: Dict[AlgebraicReal, Set[Phenomenon]] = {}
    for c in clusters:
        if not c.value.is_finite or c.parity != Parity.ODD:
            continue
        v = c.value.value
        if v in crit:
            continue
        atyp.setdefault(v, set()).add(c.phenomenon)
    atypical = sorted(atyp.items(), key=lambda kv: kv[0])
    bif = sorted(set(crit) | set(atyp), key=lambda v: v)
    return BifurcationReport(primitivity, radius, list(arcs), clusters, crit, atypical, bif,
                             singular_arc_values=singular_vals, **extra)
