"""Stratification combinatorics of the compactified configuration space.

A stratum of C_q is labeled by a family of subsets of the point set, each of
size at least two, pairwise nested or disjoint. The number of subsets is the
codimension of the stratum; the codimension-one strata are the faces.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import networkx as nx
from loguru import logger

from knotconf.errors import DomainError, ParseError


Subset = frozenset[int]


def _subset_key(subset: Iterable[int]) -> tuple:
    items = tuple(sorted(subset))
    return (len(items), items)


def compatible(s: Subset, t: Subset) -> bool:
    """Whether two subsets are disjoint or one contains the other."""
    return not (s & t) or s <= t or t <= s


@dataclass(frozen=True)
class StratumLabel:
    ground: int
    """Size of the ground set {1,...,ground}."""

    family: frozenset[Subset] = field(default_factory=frozenset)

    @classmethod
    def of(cls, ground: int, *subsets: Iterable[int]) -> StratumLabel:
        return cls(ground, frozenset(frozenset(s) for s in subsets))

    @property
    def codimension(self) -> int:
        return len(self.family)

    @property
    def subsets(self) -> list[Subset]:
        """Members in deterministic order: by size, then lexicographically."""
        return sorted(self.family, key=_subset_key)

    def sort_key(self) -> tuple:
        return (
            self.codimension,
            tuple(_subset_key(s) for s in self.subsets),
        )

    def __str__(self) -> str:
        inner = ",".join(
            "{" + ",".join(str(i) for i in sorted(s)) + "}"
            for s in self.subsets
        )
        return "{" + inner + "}"


MEMBER = r"\{[^{}]*\}"
LABEL_RE = re.compile(
    r"\{\s*(?P<body>(?:" + MEMBER + r"(?:\s*,\s*" + MEMBER + r")*)?)\s*\}"
)
SUBSET_RE = re.compile(r"\{([^{}]*)\}")


def parse_label(text: str, ground: int) -> StratumLabel:
    """Parse a label such as `{{1,2},{1,2,3}}`.

    Members and the points inside them are separated by commas, and no
    member or point may be repeated.

    Raises:
        ParseError: If the text is not a family of integer subsets.
    """
    match = LABEL_RE.fullmatch(text.strip())
    if match is None:
        raise ParseError("'{}' is not a stratum label".format(text))

    subsets = []
    for inner in SUBSET_RE.findall(match.group("body")):
        items = [x.strip() for x in inner.split(",")] if inner.strip() else []
        if not all(x.isdigit() for x in items):
            raise ParseError(
                "'{{{}}}' is not a set of point indices".format(inner)
            )
        points = [int(x) for x in items]
        if len(set(points)) < len(points):
            raise ParseError(
                "'{{{}}}' repeats a point index".format(inner)
            )
        subset = frozenset(points)
        if subset in subsets:
            raise ParseError(
                "'{}' lists the member {{{}}} twice".format(
                    text, ",".join(str(i) for i in sorted(subset))
                )
            )
        subsets.append(subset)
    return StratumLabel(ground, frozenset(subsets))


def is_valid(label: StratumLabel) -> bool:
    """Whether a label names a stratum.

    Every member must have at least two points, lie in the ground set, and
    every pair of members must be disjoint or nested.
    """
    ground = set(range(1, label.ground + 1))
    for subset in label.family:
        if len(subset) < 2 or not subset <= ground:
            return False
    return all(
        compatible(s, t)
        for s, t in itertools.combinations(label.family, 2)
    )


def admissible_subsets(ground: int) -> list[Subset]:
    """All subsets of {1,...,ground} with at least two points."""
    points = range(1, ground + 1)
    return [
        frozenset(c)
        for size in range(2, ground + 1)
        for c in itertools.combinations(points, size)
    ]


def _nested_families(
    subsets: list[Subset],
    max_codim: Optional[int],
) -> Iterator[tuple[Subset, ...]]:
    def extend(start: int, chosen: tuple[Subset, ...]):
        yield chosen
        if max_codim is not None and len(chosen) >= max_codim:
            return
        for index in range(start, len(subsets)):
            subset = subsets[index]
            if all(compatible(subset, other) for other in chosen):
                yield from extend(index + 1, chosen + (subset,))

    yield from extend(0, ())


def enumerate_strata(
    q: int,
    max_codim: Optional[int] = None,
    point_at_infinity: bool = False,
) -> list[StratumLabel]:
    """Enumerate every stratum label of C_q in deterministic order.

    Args:
        q (int): Number of points.
        max_codim (int, optional): Only labels of at most this codimension.
        point_at_infinity (bool): Use the ground set {1,...,q+1}, the extra
            point standing for the point at infinity.

    Returns:
        list[StratumLabel]: Labels ordered by codimension, then members.
    """
    if q < 0:
        raise DomainError("number of points must be nonnegative")

    ground = q + 1 if point_at_infinity else q
    subsets = admissible_subsets(ground)
    labels = [
        StratumLabel(ground, frozenset(family))
        for family in _nested_families(subsets, max_codim)
    ]
    labels.sort(key=StratumLabel.sort_key)
    logger.debug(
        f"Enumerated {len(labels)} strata on {ground} points "
        f"(max codimension {max_codim})."
    )
    return labels


def faces_containing(label: StratumLabel) -> list[StratumLabel]:
    """The faces whose closure contains the stratum, one per member.

    Raises:
        DomainError: If the label is not valid.
    """
    if not is_valid(label):
        raise DomainError("{} is not a valid stratum label".format(label))
    return [
        StratumLabel(label.ground, frozenset((subset,)))
        for subset in label.subsets
    ]


def face_multiply(a: StratumLabel, b: StratumLabel) -> StratumLabel:
    """Label of the stratum hit by placing two configurations side by side.

    The second factor's points are renumbered after the first's, so codim
    k and l strata multiply into a codimension k + l stratum.
    """
    shift = a.ground
    shifted = frozenset(
        frozenset(i + shift for i in subset) for subset in b.family
    )
    return StratumLabel(a.ground + b.ground, a.family | shifted)


class FacePoset:
    """Strata of C_q ordered by adding one compatible subset at a time."""

    graph: nx.DiGraph
    """Covering relation, edges point from a stratum to the finer one."""

    def __init__(
        self,
        q: int,
        max_codim: Optional[int] = None,
        point_at_infinity: bool = False,
    ) -> None:
        self.q = q
        self.max_codim = max_codim
        self.labels = enumerate_strata(q, max_codim, point_at_infinity)
        ground = q + 1 if point_at_infinity else q
        self.open_stratum = StratumLabel(ground)

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.labels)
        subsets = admissible_subsets(ground)
        for label in self.labels:
            if max_codim is not None and label.codimension >= max_codim:
                continue
            for subset in subsets:
                if subset in label.family:
                    continue
                if all(compatible(subset, s) for s in label.family):
                    finer = StratumLabel(ground, label.family | {subset})
                    self.graph.add_edge(label, finer)

    def covers(self, coarse: StratumLabel, fine: StratumLabel) -> bool:
        return self.graph.has_edge(coarse, fine)

    def is_graded(self) -> bool:
        """Every covering edge raises the codimension by exactly one."""
        return all(
            fine.codimension == coarse.codimension + 1
            for coarse, fine in self.graph.edges
        )

    def minimum(self) -> list[StratumLabel]:
        """Labels nothing covers; the open stratum alone for a poset."""
        return [
            label
            for label, degree in self.graph.in_degree()
            if degree == 0
        ]

    def over_face(self, face: StratumLabel) -> nx.DiGraph:
        """Sub-poset of the strata lying in the closure of a face."""
        (subset,) = face.family
        return self.graph.subgraph(
            label for label in self.labels if subset in label.family
        )

    def to_dot(self) -> str:
        """The covering relation as a DOT digraph."""
        lines = ["digraph strata {", "  rankdir=BT;"]
        for label in self.labels:
            lines.append('  "{}";'.format(label))
        for coarse, fine in sorted(
            self.graph.edges,
            key=lambda edge: (edge[0].sort_key(), edge[1].sort_key()),
        ):
            lines.append('  "{}" -> "{}";'.format(coarse, fine))
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class FacesReport:
    q: int
    labels_checked: int = 0
    counterexamples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "passed": self.passed,
            "labels_checked": self.labels_checked,
            "counterexamples": list(self.counterexamples),
        }


def verify_faces_axioms(q: int) -> FacesReport:
    """Check the manifold-with-faces axioms on the stratum labels of C_q.

    (0) a codimension-k label lies in exactly k distinct faces;
    (1) every label of positive codimension lies in some face;
    (2) for distinct compatible faces {S} and {T}, the label {S,T} is a
        codimension-one element of the sub-poset over each of them.

    Returns:
        FacesReport: Pass/fail with the counterexamples found.
    """
    report = FacesReport(q)
    labels = enumerate_strata(q)
    faces = [label for label in labels if label.codimension == 1]
    face_set = set(faces)
    report.labels_checked = len(labels)

    for label in labels:
        containing = faces_containing(label)
        distinct = set(containing)
        # Counted against the enumerated faces, not the label's members.
        above = {face for face in faces if face.family <= label.family}
        if (
            len(above) != label.codimension
            or len(containing) != len(distinct)
            or distinct != above
        ):
            report.counterexamples.append(
                "axiom 0: {} lies in {} faces, {} reported, "
                "codimension {}".format(
                    label, len(above), len(containing), label.codimension
                )
            )
        if label.codimension >= 1 and not distinct & face_set:
            report.counterexamples.append(
                "axiom 1: {} lies in no face".format(label)
            )

    poset = FacePoset(q, max_codim=2)
    known = set(poset.labels)
    for s_face, t_face in itertools.combinations(faces, 2):
        (s,) = s_face.family
        (t,) = t_face.family
        if not compatible(s, t):
            continue
        meet = StratumLabel(q, frozenset((s, t)))
        if meet not in known:
            report.counterexamples.append(
                "axiom 2: {} is not a stratum".format(meet)
            )
            continue
        for face in (s_face, t_face):
            sub = poset.over_face(face)
            if not sub.has_edge(face, meet):
                report.counterexamples.append(
                    "axiom 2: {} is not a face of {}".format(meet, face)
                )

    logger.debug(
        f"Checked faces axioms for q={q}: {report.labels_checked} labels, "
        f"{len(report.counterexamples)} counterexamples."
    )
    return report
