"""Decision programs as sequences of position probes.

A decision program reads input positions one at a time and ends with a
verdict. The probes it made form a trace, and the probed restriction of
the input is the program's entire knowledge of it, so every verdict must
be justified by that restriction alone: an accept is justified when the
restriction already forces membership in the target, a reject when the
restriction has no accepted extension at all.

The kernel of a program is the set of reduced-logogram strings it actually
certifies with: those included in the probed restriction of some accepted
input. A correct, justified program always has a complete kernel, and when
the reduced logogram is irreducible every such program has the same one.

Three traced solvers for the clause encoding are built in; all probe
lazily and read each position at most once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .budget import Budget, BudgetExceededError
from .engine import Antichain, _log_probe, irreducibility_report
from .strings import PartialString


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    DISCARD = "discard"


class MalformedProgramError(RuntimeError):
    """The program broke the probe discipline (bad position, revisit)."""


class ProgramFaultError(RuntimeError):
    """A program was wrong or unjustified on a specific input."""

    def __init__(self, word_text: str, reason: str):
        super().__init__(f"on input {word_text!r}: {reason}")
        self.word_text = word_text
        self.reason = reason


@dataclass(frozen=True)
class ProbeTrace:
    """Ordered positions read during one run, with the observed letters and
    the final verdict."""

    probes: tuple[tuple[int, str], ...]
    verdict: Verdict

    @property
    def probed_restriction(self) -> PartialString:
        return PartialString(self.probes)


@dataclass(frozen=True)
class DecisionProgram:
    """A named decision procedure driven through a probe callback.

    ``decide`` receives a function position -> letter and returns the
    accept/reject outcome. It must be deterministic given the observed
    letters and must not read a position twice; the runner enforces the
    probe discipline.
    """

    name: str
    decide: Callable[[Callable[[int], str]], bool]


def run_traced(program: DecisionProgram, word: PartialString, problem) -> ProbeTrace:
    """Run the program on one word of the slice and record its trace."""
    slc = problem.slice
    if not slc.contains(word):
        raise ValueError(f"{word!r} is not a word of the slice")
    lookup = dict(word.pairs)
    record: list[tuple[int, str]] = []
    seen: set[int] = set()

    def probe(position: int) -> str:
        if not isinstance(position, int) or not 1 <= position <= slc.length:
            raise MalformedProgramError(
                f"{program.name}: probe outside positions 1..{slc.length}: {position!r}")
        if position in seen:
            raise MalformedProgramError(
                f"{program.name}: position {position} probed twice")
        seen.add(position)
        letter = lookup[position]
        record.append((position, letter))
        return letter

    accepted = program.decide(probe)
    return ProbeTrace(tuple(record), Verdict.ACCEPT if accepted else Verdict.REJECT)


def justified(trace: ProbeTrace, word: PartialString, problem) -> bool:
    """Is the verdict forced by the probed restriction alone?

    Accepts need the restriction to force the target; rejects need the
    restriction to admit no accepted extension within the slice.
    """
    slc = problem.slice
    pairs = slc.pairs_of(trace.probed_restriction)
    if trace.verdict == Verdict.ACCEPT:
        return _log_probe(pairs, problem.f_ints, slc)[0]
    if trace.verdict == Verdict.REJECT:
        e = slc.e_set()
        return not any((e is None or w in e) and w in problem.f_ints
                       for w in slc.iter_completions(pairs))
    raise ValueError(f"no justification notion for verdict {trace.verdict}")


def kernel(program: DecisionProgram, problem,
           budget: Budget | None = None) -> Antichain:
    """The reduced-logogram strings the program actually certifies with.

    Sweeps every word of the slice; the program must be correct and
    justified throughout, otherwise the offending input is reported.
    """
    budget = budget or Budget.default()
    meter = budget.start(f"kernel sweep: {program.name}")
    log = problem.logogram(meter=meter)
    slc = problem.slice
    used: set[PartialString] = set()
    for i in slc.word_ints():
        if meter.out_of_time():
            raise BudgetExceededError(
                f"kernel sweep for {program.name}: out of time at word {i}")
        word = slc.word_of_int(i)
        trace = run_traced(program, word, problem)
        accepted = trace.verdict == Verdict.ACCEPT
        if accepted != (i in problem.f_ints):
            raise ProgramFaultError(slc.text_of_int(i),
                                    f"{program.name} gave the wrong verdict")
        if not justified(trace, word, problem):
            raise ProgramFaultError(slc.text_of_int(i),
                                    f"{program.name} was not justified in its {trace.verdict.value}")
        if accepted:
            observed = dict(trace.probes)
            for g in log.elements:
                if g not in used and all(observed.get(p) == ch for p, ch in g.pairs):
                    used.add(g)
    return Antichain.of(used, slc.alphabet)


@dataclass(frozen=True)
class KernelComparison:
    problem_label: str
    length: int
    names: tuple[str, str]
    kernels: tuple[Antichain, Antichain]
    equal: bool
    logogram_irreducible: bool

    def to_json_dict(self) -> dict:
        return {
            "problem": self.problem_label,
            "programs": list(self.names),
            "kernels": {name: k.texts(self.length)
                        for name, k in zip(self.names, self.kernels)},
            "equal": self.equal,
            "logogram_irreducible": self.logogram_irreducible,
        }


def compare_kernels(first: DecisionProgram, second: DecisionProgram, problem,
                    budget: Budget | None = None) -> KernelComparison:
    """Kernels of two programs side by side, with the irreducibility of the
    reduced logogram (the hypothesis under which they must coincide)."""
    ka = kernel(first, problem, budget)
    kb = kernel(second, problem, budget)
    log = problem.logogram(budget)
    report = irreducibility_report(log.elements, problem, budget)
    return KernelComparison(
        problem_label=problem.label, length=problem.slice.length,
        names=(first.name, second.name), kernels=(ka, kb),
        equal=ka.elements == kb.elements,
        logogram_irreducible=report.irreducible)


def trace_records(program: DecisionProgram, problem,
                  budget: Budget | None = None) -> Iterator[dict]:
    """JSON-ready trace dump, one record per input word."""
    log = problem.logogram(budget)
    slc = problem.slice
    for i in slc.word_ints():
        word = slc.word_of_int(i)
        trace = run_traced(program, word, problem)
        certifying = []
        if trace.verdict == Verdict.ACCEPT:
            observed = dict(trace.probes)
            certifying = [g.render(slc.length) for g in log.elements
                          if all(observed.get(p) == ch for p, ch in g.pairs)]
        yield {
            "input": slc.text_of_int(i),
            "probes": [[p, ch] for p, ch in trace.probes],
            "verdict": trace.verdict.value,
            "justified": justified(trace, word, problem),
            "certifying_strings": certifying,
        }


# -- built-in traced solvers for the clause encoding ----------------------


def _require_shape(problem):
    shape = getattr(problem, "cnf_shape", None)
    if shape is None:
        raise ValueError("built-in traced solvers run on clause-encoding problems")
    return shape


def _assignment_scan(problem, name: str, backward: bool) -> DecisionProgram:
    shape = _require_shape(problem)
    n, m = shape.var_count, shape.clause_count
    assignments = tuple(reversed(problem.solutions)) if backward else problem.solutions

    def decide(probe):
        known: dict[int, str] = {}

        def look(p: int) -> str:
            ch = known.get(p)
            if ch is None:
                ch = known[p] = probe(p)
            return ch

        for bits in assignments:
            satisfied = True
            for c in range(m):
                base = c * n
                for v in range(n):
                    ch = look(base + v + 1)
                    if (ch == "1" and bits[v]) or (ch == "2" and not bits[v]):
                        break
                else:
                    satisfied = False
                    break
            if satisfied:
                return True
        return False

    return DecisionProgram(name, decide)


def forward_assignment_scan(problem) -> DecisionProgram:
    """Try each assignment in solution order, verifying clause by clause and
    probing clause positions left to right until a satisfying literal turns
    up; accept on the first assignment that survives every clause."""
    return _assignment_scan(problem, "forward-assignment-scan", backward=False)


def backward_assignment_scan(problem) -> DecisionProgram:
    """The same scan with the assignments tried in reverse order."""
    return _assignment_scan(problem, "backward-assignment-scan", backward=True)


def clause_first_scan(problem) -> DecisionProgram:
    """Probe whole clause blocks in order, keeping the set of assignments
    that satisfy everything probed so far; reject as soon as it empties,
    accept once every block has been read with survivors left."""
    shape = _require_shape(problem)
    n, m = shape.var_count, shape.clause_count

    def decide(probe):
        viable = list(problem.solutions)
        for c in range(m):
            base = c * n
            block = [(v, probe(base + v + 1)) for v in range(n)]
            viable = [bits for bits in viable
                      if any((ch == "1" and bits[v]) or (ch == "2" and not bits[v])
                             for v, ch in block)]
            if not viable:
                return False
        return True

    return DecisionProgram("clause-first-scan", decide)


def built_in_programs(problem) -> tuple[DecisionProgram, ...]:
    return (forward_assignment_scan(problem),
            backward_assignment_scan(problem),
            clause_first_scan(problem))
