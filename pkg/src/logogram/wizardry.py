"""Witness/wizard classification and cover analysis.

Every reduced-logogram string certifies membership in the target set. A
string that also certifies membership in some single region is a witness
for that region's solution; a string whose expansion fits inside no region
is a wizard: it promises that some solution works without naming one.
Membership of a minimal string in a region's logogram is decided at the
reduced level, which is sound because minimality transfers: a minimal
target certificate that certifies a region is minimal there too.

The cover of the target is the family of expansions of the reduced
logogram strings; its cardinality and the per-chart counts of containing
regions are reported as computed, including the cases where a chart fits
in several regions or the cover is smaller than the region count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import Budget
from .strings import PartialString
from .universe import expand_ints


@dataclass(frozen=True)
class ClassifiedString:
    string: PartialString
    witness_regions: tuple[int, ...]  # indices into the problem's solutions
    is_wizard: bool


@dataclass(frozen=True)
class ClassifiedLogogram:
    problem_label: str
    length: int
    entries: tuple[ClassifiedString, ...]

    @property
    def wizards(self) -> tuple[ClassifiedString, ...]:
        return tuple(e for e in self.entries if e.is_wizard)

    @property
    def witnesses(self) -> tuple[ClassifiedString, ...]:
        return tuple(e for e in self.entries if not e.is_wizard)

    def to_json_dict(self) -> dict:
        return {
            "problem": self.problem_label,
            "logogram_size": len(self.entries),
            "wizards": [e.string.render(self.length) for e in self.wizards],
            "witnesses": [
                {"string": e.string.render(self.length),
                 "regions": list(e.witness_regions)}
                for e in self.witnesses
            ],
        }


def classify(problem, budget: Budget | None = None) -> ClassifiedLogogram:
    """Split the reduced logogram into witnesses and wizards.

    A string is a witness for region i when its whole expansion lies in
    that region; a wizard fits in none.
    """
    log = problem.logogram(budget)
    slc = problem.slice
    entries = []
    for s in log.elements:
        ext = expand_ints([s], slc)
        regions = tuple(i for i in range(problem.alpha)
                        if ext <= problem.region_ints(i))
        entries.append(ClassifiedString(
            string=s, witness_regions=regions, is_wizard=not regions))
    return ClassifiedLogogram(problem.label, slc.length, tuple(entries))


def witness_union_complete(problem, budget: Budget | None = None) -> bool:
    """Does the union of the region logograms decide the target?

    True is the expected outcome whenever the regions cover the target; a
    False return signals a fault in an adapter or in the search. All the
    region searches run against one shared budget meter.
    """
    meter = (budget or Budget.default()).start(f"witness union: {problem.label}")
    union: list[PartialString] = []
    for i in range(problem.alpha):
        union.extend(problem.region_logogram(i, meter=meter).elements)
    return expand_ints(union, problem.slice) == problem.f_ints


@dataclass(frozen=True)
class Chart:
    string: PartialString
    expansion_size: int
    containing_regions: int


@dataclass(frozen=True)
class CoverReport:
    problem_label: str
    length: int
    charts: tuple[Chart, ...]
    region_count: int

    @property
    def total_charts(self) -> int:
        return len(self.charts)

    @property
    def multiple_containing_regions(self) -> bool:
        """Some chart fits inside more than one region."""
        return any(c.containing_regions > 1 for c in self.charts)

    @property
    def fewer_charts_than_regions(self) -> bool:
        """The cover is smaller than the solution list."""
        return self.total_charts < self.region_count

    def to_json_dict(self) -> dict:
        return {
            "problem": self.problem_label,
            "total_charts": self.total_charts,
            "region_count": self.region_count,
            "flags": {
                "multiple_containing_regions": self.multiple_containing_regions,
                "fewer_charts_than_regions": self.fewer_charts_than_regions,
            },
            "cover": [
                {"string": c.string.render(self.length),
                 "expansion_size": c.expansion_size,
                 "containing_regions": c.containing_regions}
                for c in self.charts
            ],
        }

    def rows(self) -> list[tuple]:
        return [(c.string.render(self.length), c.expansion_size, c.containing_regions)
                for c in self.charts]


def cover(problem, budget: Budget | None = None) -> CoverReport:
    """One chart per reduced-logogram string: the size of its expansion and
    how many regions contain that expansion entirely."""
    log = problem.logogram(budget)
    slc = problem.slice
    charts = []
    for s in log.elements:
        ext = expand_ints([s], slc)
        containing = sum(1 for i in range(problem.alpha)
                         if ext <= problem.region_ints(i))
        charts.append(Chart(string=s, expansion_size=len(ext),
                            containing_regions=containing))
    return CoverReport(problem.label, slc.length, tuple(charts), problem.alpha)
