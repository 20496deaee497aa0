"""Problem adapters: slices paired with target sets, solutions, and regions.

A problem slice fixes one instance size of a decision problem: the slice of
encoded instances, the accepted subset, an ordered list of candidate
solutions, and the per-solution satisfaction predicate that carves the
accepted set into regions. Adapters are provided for CNF satisfiability
over the ternary clause encoding, compositeness of fixed-width binary
integers, connectivity of undirected graphs given as edge bitmaps, and
table-driven problems read from JSON descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable

from .budget import Budget
from .engine import Antichain, reduced_logogram
from .strings import BINARY, TERNARY, Alphabet, PartialString
from .universe import Slice, full_slice


class ProblemFormatError(ValueError):
    """A problem description is malformed or inconsistent."""


class DegenerateProblemError(ValueError):
    """The target set is empty or the whole slice; logogram analysis
    degenerates there and the adapters refuse to build such problems."""


class ProblemSlice:
    """A slice with a target subset, solutions, and regions.

    The regions (words satisfied by each solution) must cover the target
    exactly; this is validated at construction. Instances are immutable
    after construction; reduced logograms are computed on demand and cached.
    """

    def __init__(self, slc: Slice, solutions: Iterable, satisfies: Callable,
                 label: str, f_membership: Callable | None = None,
                 solution_text: Callable = str, cnf_shape: "CnfShape | None" = None):
        self.slice = slc
        self.solutions = tuple(solutions)
        self.satisfies = satisfies
        self.label = label
        self.solution_text = solution_text
        self.cnf_shape = cnf_shape
        words = [(i, slc.word_of_int(i)) for i in slc.word_ints()]
        self._region_sets = tuple(
            frozenset(i for i, w in words if satisfies(w, y))
            for y in self.solutions)
        union = frozenset().union(*self._region_sets) if self._region_sets else frozenset()
        if f_membership is None:
            self.f_ints = union
        else:
            self.f_ints = frozenset(i for i, w in words if f_membership(w))
            if self.f_ints != union:
                raise ProblemFormatError(
                    f"{label}: regions do not cover the target exactly "
                    f"({len(union)} region words vs {len(self.f_ints)} target words)")
        if not self.f_ints:
            raise DegenerateProblemError(f"{label}: empty target set")
        if len(self.f_ints) == slc.word_count():
            raise DegenerateProblemError(f"{label}: target set is the whole slice")
        self._logogram: Antichain | None = None
        self._region_logograms: dict[int, Antichain] = {}

    @property
    def alpha(self) -> int:
        """How many solutions are relevant at this size."""
        return len(self.solutions)

    def region_ints(self, index: int) -> frozenset[int]:
        return self._region_sets[index]

    def accepts(self, word: PartialString) -> bool:
        return self.slice.int_of_word(word) in self.f_ints

    def f_words(self) -> tuple[PartialString, ...]:
        return tuple(self.slice.word_of_int(i) for i in sorted(self.f_ints))

    def solution_texts(self) -> list[str]:
        return [self.solution_text(y) for y in self.solutions]

    def logogram(self, budget: Budget | None = None, meter=None) -> Antichain:
        if self._logogram is None:
            self._logogram = reduced_logogram(self.f_ints, self.slice, budget,
                                              meter=meter)
        return self._logogram

    def region_logogram(self, index: int, budget: Budget | None = None,
                        meter=None) -> Antichain:
        if index not in self._region_logograms:
            self._region_logograms[index] = reduced_logogram(
                self._region_sets[index], self.slice, budget, meter=meter)
        return self._region_logograms[index]

    def descriptor(self) -> dict:
        slc = self.slice
        return {
            "label": self.label,
            "alphabet": list(slc.alphabet.letters),
            "length": slc.length,
            "universe": "all" if slc.is_full else [slc.text_of_int(i) for i in slc.word_ints()],
            "target": [slc.text_of_int(i) for i in sorted(self.f_ints)],
            "regions": [[slc.text_of_int(i) for i in sorted(r)] for r in self._region_sets],
            "solutions": self.solution_texts(),
        }

    def __repr__(self) -> str:
        return f"ProblemSlice({self.label!r})"


# -- CNF satisfiability ----------------------------------------------------


@dataclass(frozen=True)
class CnfShape:
    """Instance size of the clause encoding: words of length
    var_count * clause_count over {0,1,2}, one block of var_count codes per
    clause; 0 = variable absent, 1 = positive literal, 2 = negated."""

    var_count: int
    clause_count: int

    def __post_init__(self):
        if self.var_count < 1 or self.clause_count < 1:
            raise ValueError("var_count and clause_count must be >= 1")

    @property
    def length(self) -> int:
        return self.var_count * self.clause_count

    def position(self, clause: int, var: int) -> int:
        """1-based word position of a variable slot within a clause block."""
        return (clause - 1) * self.var_count + var

    def var_of(self, position: int) -> int:
        return (position - 1) % self.var_count + 1

    def clause_of(self, position: int) -> int:
        return (position - 1) // self.var_count + 1


def _assignment_text(bits: tuple[bool, ...]) -> str:
    return " ".join(f"x{i}={int(b)}" for i, b in enumerate(bits, start=1))


@lru_cache(maxsize=None)
def sat_problem(var_count: int, clause_count: int) -> ProblemSlice:
    """Satisfiability of clause-encoded formulas at one shape.

    Solutions are the 2^n assignments in binary counting order starting
    from all-false, variable 1 least significant. A clause block with no
    literal codes is unsatisfiable, so the all-zero word is the canonical
    rejected instance.
    """
    shape = CnfShape(var_count, clause_count)
    n, m = var_count, clause_count
    slc = full_slice(TERNARY, shape.length, label=f"cnf:{n}x{m}")
    solutions = tuple(
        tuple(bool((i >> v) & 1) for v in range(n)) for i in range(2 ** n))

    def satisfies(word: PartialString, bits: tuple[bool, ...]) -> bool:
        if len(word) != shape.length:
            raise ValueError(f"expected a word of length {shape.length}")
        pairs = word.pairs
        for c in range(m):
            base = c * n
            for v in range(n):
                ch = pairs[base + v][1]
                if (ch == "1" and bits[v]) or (ch == "2" and not bits[v]):
                    break
            else:
                return False
        return True

    return ProblemSlice(slc, solutions, satisfies, label=f"sat:{n}x{m}",
                        solution_text=_assignment_text, cnf_shape=shape)


def predicted_sat_logogram(shape: CnfShape) -> Antichain:
    """The closed-form candidate for the reduced logogram of SAT: every
    consistent choice of one literal per clause.

    A choice is consistent when no variable is picked positively in one
    clause and negatively in another. Whether this equals the computed
    reduced logogram is checked by the acceptance suite, not assumed.
    """
    n, m = shape.var_count, shape.clause_count
    per_clause = [
        [(shape.position(c, v), ch) for v in range(1, n + 1) for ch in ("1", "2")]
        for c in range(1, m + 1)]
    strings = []
    for selection in product(*per_clause):
        wanted: dict[int, str] = {}
        ok = True
        for pos, ch in selection:
            var = shape.var_of(pos)
            if wanted.setdefault(var, ch) != ch:
                ok = False
                break
        if ok:
            strings.append(PartialString(tuple(selection)))
    return Antichain.of(strings, TERNARY)


def gamma(string: PartialString, shape: CnfShape) -> PartialString:
    """The formula whose clauses are exactly the literals one consistent
    selection prescribes: the selection's positions keep their codes and
    every other position is 0.

    The result is a satisfiable word extending the selection, and the
    selection is the only reduced-logogram member it contains.
    """
    n, m = shape.var_count, shape.clause_count
    per_clause: dict[int, int] = {}
    wanted: dict[int, str] = {}
    for p, ch in string.pairs:
        if not 1 <= p <= shape.length:
            raise ValueError(f"position {p} outside the {shape.length}-letter shape")
        if ch not in ("1", "2"):
            raise ValueError(f"selections prescribe only literal codes, got {ch!r}")
        c = shape.clause_of(p)
        per_clause[c] = per_clause.get(c, 0) + 1
        var = shape.var_of(p)
        if wanted.setdefault(var, ch) != ch:
            raise ValueError(f"variable x{var} prescribed with both polarities")
    if sorted(per_clause) != list(range(1, m + 1)) or any(v != 1 for v in per_clause.values()):
        raise ValueError("selection must prescribe exactly one literal per clause")
    fixed = dict(string.pairs)
    return PartialString(tuple(
        (p, fixed.get(p, "0")) for p in range(1, shape.length + 1)))


def formula_word(doc: dict) -> tuple[CnfShape, PartialString]:
    """Encode a clause-list document {"n": ..., "clauses": [[1, 3, -4], ...]}
    as a word of the clause encoding."""
    try:
        n = int(doc["n"])
        clauses = list(doc["clauses"])
    except (KeyError, TypeError) as exc:
        raise ProblemFormatError(f"clause document needs 'n' and 'clauses': {exc}") from None
    if not clauses:
        raise ProblemFormatError("at least one clause is required")
    shape = CnfShape(n, len(clauses))
    cells = {p: "0" for p in range(1, shape.length + 1)}
    for c, clause in enumerate(clauses, start=1):
        for lit in clause:
            var = abs(int(lit))
            if not 1 <= var <= n:
                raise ProblemFormatError(f"literal {lit} outside variables 1..{n}")
            p = shape.position(c, var)
            code = "1" if lit > 0 else "2"
            if cells[p] not in ("0", code):
                raise ProblemFormatError(
                    f"clause {c} uses x{var} with both polarities; "
                    "the encoding has one slot per variable and clause")
            cells[p] = code
    return shape, PartialString(tuple(sorted(cells.items())))


# -- compositeness of binary integers --------------------------------------


@lru_cache(maxsize=None)
def composite_problem(width: int) -> ProblemSlice:
    """Is a fixed-width binary integer (most significant bit first)
    composite? Solutions are all candidate divisors 2..2^width-1; a divisor
    satisfies a word when it properly divides its value."""
    if width < 1:
        raise ValueError("width must be >= 1")
    slc = full_slice(BINARY, width, label=f"bin:{width}")

    def value(word: PartialString) -> int:
        v = 0
        for _, ch in word.pairs:
            v = v * 2 + (ch == "1")
        return v

    def satisfies(word: PartialString, d: int) -> bool:
        v = value(word)
        return 1 < d < v and v % d == 0

    def is_composite(word: PartialString) -> bool:
        v = value(word)
        return v >= 4 and any(v % d == 0 for d in range(2, v))

    return ProblemSlice(slc, tuple(range(2, 2 ** width)), satisfies,
                        label=f"composite:{width}", f_membership=is_composite)


# -- graph connectivity ------------------------------------------------------


@lru_cache(maxsize=None)
def connectivity_problem(vertices: int) -> ProblemSlice:
    """Is an undirected loop-free graph connected? Words are edge bitmaps
    over the vertex pairs (i, j), i < j, in lexicographic order. Solutions
    are the spanning trees of the complete graph, as tuples of edge
    positions in canonical order; a tree satisfies a word when all its
    edges are present."""
    if vertices < 2:
        raise ValueError("need at least 2 vertices")
    edges = [(i, j) for i in range(1, vertices + 1)
             for j in range(i + 1, vertices + 1)]
    slc = full_slice(BINARY, len(edges), label=f"graph:{vertices}")

    def reaches_all(edge_idxs: Iterable[int]) -> bool:
        adj: dict[int, list[int]] = {v: [] for v in range(1, vertices + 1)}
        for e in edge_idxs:
            a, b = edges[e]
            adj[a].append(b)
            adj[b].append(a)
        seen = {1}
        stack = [1]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == vertices

    def connected(word: PartialString) -> bool:
        return reaches_all(p - 1 for p, ch in word.pairs if ch == "1")

    trees = tuple(combo for combo in combinations(range(len(edges)), vertices - 1)
                  if reaches_all(combo))

    def satisfies(word: PartialString, tree: tuple[int, ...]) -> bool:
        pairs = word.pairs
        return all(pairs[e][1] == "1" for e in tree)

    def tree_text(tree: tuple[int, ...]) -> str:
        return "+".join(f"{edges[e][0]}-{edges[e][1]}" for e in tree)

    return ProblemSlice(slc, trees, satisfies, label=f"connectivity:{vertices}",
                        f_membership=connected, solution_text=tree_text)


# -- table-driven problems ---------------------------------------------------


def generic_problem(doc: dict) -> ProblemSlice:
    """Build a problem from an explicit JSON descriptor.

    Required keys: ``alphabet`` (list of letters), ``length``, ``universe``
    ("all" or a word list), ``target`` (word list), ``regions`` (list of
    word lists). Optional: ``label``, ``solutions`` (one name per region).
    The target must lie in the universe and the regions must cover the
    target exactly.
    """
    for key in ("alphabet", "length", "universe", "target", "regions"):
        if key not in doc:
            raise ProblemFormatError(f"descriptor is missing {key!r}")
    try:
        alphabet = Alphabet.of(doc["alphabet"])
        length = int(doc["length"])
    except ValueError as exc:
        raise ProblemFormatError(str(exc)) from None
    label = doc.get("label") or "generic"
    slc = Slice(alphabet, length, doc["universe"], label=f"{label}:universe")

    def words_of(texts, what: str) -> frozenset[int]:
        out = set()
        for t in texts:
            w = slc.word(t)
            if not slc.contains(w):
                raise ProblemFormatError(f"{what} word {t!r} is outside the universe")
            out.add(slc.int_of_word(w))
        return frozenset(out)

    target = words_of(doc["target"], "target")
    regions = [words_of(r, f"region {i + 1}") for i, r in enumerate(doc["regions"])]
    names = doc.get("solutions") or [f"region-{i + 1}" for i in range(len(regions))]
    if len(names) != len(regions):
        raise ProblemFormatError("one solution name per region is required")
    by_name = dict(zip(names, regions))
    if len(by_name) != len(regions):
        raise ProblemFormatError("solution names must be distinct")

    def satisfies(word: PartialString, name: str) -> bool:
        return slc.int_of_word(word) in by_name[name]

    def in_target(word: PartialString) -> bool:
        return slc.int_of_word(word) in target

    return ProblemSlice(slc, tuple(names), satisfies, label=label,
                        f_membership=in_target)
