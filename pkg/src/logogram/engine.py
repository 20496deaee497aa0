"""Logograms, closures, and independence of string sets.

The logogram of a target set A within a slice is the set of strings whose
presence in a word of the slice forces membership in A; its minimal
elements form the reduced logogram, the irredundant certificate set of the
target. This module computes reduced logograms by a pruned level-wise
search, decides entanglement between string sets, exposes the
expansion/logogram closure pair, and checks the three independence notions
a decision problem may enjoy.

Everything here is exhaustive over one slice: correctness comes from
enumeration, and budgets keep the enumeration honest about its limits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .budget import Budget, BudgetExceededError, Meter
from .strings import Alphabet, PartialString, sort_strings
from .universe import Pairs, Slice, expand_ints


@dataclass(frozen=True)
class Antichain:
    """A canonically ordered set of pairwise incomparable strings."""

    elements: tuple[PartialString, ...]

    @classmethod
    def of(cls, strings: Iterable[PartialString],
           alphabet: Alphabet | None = None) -> "Antichain":
        elems = sort_strings(strings, alphabet)
        for i, f in enumerate(elems):
            for g in elems[i + 1:]:
                if f <= g or g <= f:
                    raise ValueError(f"not an antichain: {f!r} and {g!r} are comparable")
        return cls(elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, string: PartialString) -> bool:
        return string in self.elements

    def texts(self, length: int) -> list[str]:
        return [s.render(length) for s in self.elements]


@dataclass(frozen=True)
class SearchFrontier:
    """Partial state attached to a budget error: what the level-wise search
    had established when it ran out."""

    minimal_so_far: tuple[PartialString, ...]
    level: int
    live_count: int


# -- membership probes -------------------------------------------------


def _log_probe(pairs: Pairs, a_set: frozenset[int], slc: Slice) -> tuple[bool, bool]:
    """(in logogram of A, occurs in some word of the slice) for one string.

    A string is in the logogram of A when it occurs in the slice and every
    word of the slice extending it lies in A. Completions are scanned in
    ascending order with an early exit on the first counterexample word.
    """
    e = slc.e_set()
    saw = False
    for w in slc.iter_completions(pairs):
        if e is None or w in e:
            saw = True
            if w not in a_set:
                return False, True
    return saw, saw


def _pairs_in_word(pairs: Pairs, word_int: int, slc: Slice) -> bool:
    k = len(slc.alphabet)
    ww = slc._word_weights
    return all((word_int // ww[p - 1]) % k == d for p, d in pairs)


def _pairs_extend(f_pairs: Pairs, g_pairs: Pairs) -> bool:
    """g <= f on packed pairs."""
    fmap = dict(f_pairs)
    return all(fmap.get(p) == d for p, d in g_pairs)


def _target_ints(target_words, slc: Slice) -> frozenset[int]:
    """Normalize a target word set to packed form, checking it lies in the
    slice."""
    out = set()
    for w in target_words:
        i = w if isinstance(w, int) else slc.int_of_word(slc._as_word(w))
        if not slc.contains_int(i):
            raise ValueError(f"target word {slc.text_of_int(i)!r} is outside the slice")
        out.add(i)
    return frozenset(out)


# -- logogram membership and the reduced logogram -----------------------


def in_logogram(string: PartialString, target_words, slc: Slice) -> bool:
    """Does the presence of ``string`` in a word of the slice force
    membership in the target set?"""
    a_set = _target_ints(target_words, slc)
    if string.size > slc.length:
        return False
    pairs = slc.pairs_of(string)
    if pairs is None:
        return False
    return _log_probe(pairs, a_set, slc)[0]


def _minimal_log_codes(a_set: frozenset[int], slc: Slice,
                       budget: Budget | None = None,
                       label: str = "reduced logogram",
                       meter: Meter | None = None) -> list[int]:
    """Codes of the minimal logogram strings, by pruned level-wise search.

    Level j holds the strings with j defined positions. A candidate is
    generated only if every immediate restriction survived the previous
    level as a non-member of the logogram that still occurs in the slice:
    anything extending an already-found minimal element, or a string with
    no occurrence at all, is pruned together with its entire up-set.

    Operations that run several searches pass one shared meter so their
    total work stays within a single budget.
    """
    meter = meter or (budget or Budget.default()).start(label)
    k = len(slc.alphabet)
    L = slc.length
    cw = slc._code_weights
    found: list[int] = []
    level = 0
    live: set[int] = set()
    try:
        meter.charge()
        in_log, in_sigma = _log_probe((), a_set, slc)
        if in_log:
            return [0]
        if in_sigma:
            live.add(0)
        for level in range(1, L + 1):
            frontier: set[int] = set()
            for parent in sorted(live):
                pairs = slc.pairs_of_code(parent)
                start = pairs[-1][0] + 1 if pairs else 1
                for p in range(start, L + 1):
                    wt = cw[p - 1]
                    for d in range(k):
                        child = parent + (d + 1) * wt
                        # the restriction dropping p is the parent itself;
                        # the others must be live too, else the child either
                        # extends a minimal element or cannot occur at all
                        if any(child - (dq + 1) * cw[q - 1] not in live
                               for q, dq in pairs):
                            continue
                        meter.charge()
                        in_log, in_sigma = _log_probe(pairs + ((p, d),), a_set, slc)
                        if in_log:
                            found.append(child)
                        elif in_sigma:
                            frontier.add(child)
            live = frontier
            if not live:
                break
    except BudgetExceededError as err:
        err.partial = SearchFrontier(
            minimal_so_far=sort_strings(
                (slc.string_of_pairs(slc.pairs_of_code(c)) for c in found),
                slc.alphabet),
            level=level, live_count=len(live))
        raise
    return found


def reduced_logogram(target_words, slc: Slice, budget: Budget | None = None,
                     meter: Meter | None = None) -> Antichain:
    """The minimal elements of the logogram of the target set."""
    a_set = _target_ints(target_words, slc)
    codes = _minimal_log_codes(a_set, slc, budget, meter=meter)
    return Antichain.of((slc.string_of_pairs(slc.pairs_of_code(c)) for c in codes),
                        slc.alphabet)


# -- entanglement -------------------------------------------------------


def entangles(antecedent, consequent, slc: Slice) -> bool:
    """Does the presence of the first string set force the second?

    True when every word of the slice extending some member of
    ``antecedent`` also extends some member of ``consequent``.
    """
    e = slc.e_set()
    cons_pairs = [p for p in (slc.pairs_of(g) for g in consequent) if p is not None]
    for f in antecedent:
        pf = slc.pairs_of(f)
        if pf is None:
            continue
        for w in slc.iter_completions(pf):
            if e is not None and w not in e:
                continue
            if not any(_pairs_in_word(pg, w, slc) for pg in cons_pairs):
                return False
    return True


def isoexpansive(first, second, slc: Slice) -> bool:
    """Do the two string sets cut out the same words of the slice?"""
    return expand_ints(first, slc) == expand_ints(second, slc)


# -- the closure pair ----------------------------------------------------


def closure_ba(target_words, slc: Slice,
               budget: Budget | None = None) -> tuple[PartialString, ...]:
    """Close a word set: expand its own reduced logogram.

    Always contains the input and is idempotent; within a fixed-length
    slice it coincides with the input, which is exactly what makes every
    subset of such a slice closed.
    """
    a_set = _target_ints(target_words, slc)
    codes = _minimal_log_codes(a_set, slc, budget, label="closure")
    minimal = [slc.string_of_pairs(slc.pairs_of_code(c)) for c in codes]
    return tuple(slc.word_of_int(i) for i in sorted(expand_ints(minimal, slc)))


def closure_ab_contains(string: PartialString, strings, slc: Slice) -> bool:
    """Is ``string`` in the closure of the string set ``strings``, i.e. in
    the logogram of their expansion?"""
    a_set = expand_ints(strings, slc)
    if string.size > slc.length:
        return False
    pairs = slc.pairs_of(string)
    if pairs is None:
        return False
    return _log_probe(pairs, a_set, slc)[0]


def is_closed(target_words, slc: Slice, budget: Budget | None = None) -> bool:
    a_set = _target_ints(target_words, slc)
    closed = closure_ba(target_words, slc, budget)
    return frozenset(slc.int_of_word(w) for w in closed) == a_set


# -- complete and irreducible certificate sets ---------------------------


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    removable: tuple[PartialString, ...]
    unique_witnesses: dict  # string -> the first word only that string covers

    def witness_texts(self, length: int) -> dict[str, str]:
        return {s.render(length): w.render(length)
                for s, w in self.unique_witnesses.items()}


def is_complete(strings, problem, budget: Budget | None = None) -> bool:
    """Does the subset of the reduced logogram decide the target exactly?

    ``strings`` must be a subset of the problem's reduced logogram.
    """
    log = problem.logogram(budget)
    members = set(log.elements)
    chosen = [s if isinstance(s, PartialString) else
              PartialString.parse(s, problem.slice.alphabet) for s in strings]
    for s in chosen:
        if s not in members:
            raise ValueError(f"{s!r} is not in the reduced logogram")
    return expand_ints(chosen, problem.slice) == problem.f_ints


def irreducibility_report(strings, problem,
                          budget: Budget | None = None) -> IrreducibilityReport:
    """Check that no single string can be dropped.

    Completeness is monotone under supersets, so a complete set is
    irreducible exactly when every member covers some word no other member
    covers; that word is the member's removal witness.
    """
    if not is_complete(strings, problem, budget):
        raise ValueError("irreducibility is only defined for complete sets")
    slc = problem.slice
    chosen = sort_strings(
        (s if isinstance(s, PartialString) else PartialString.parse(s, slc.alphabet)
         for s in strings), slc.alphabet)
    covers = {s: sorted(expand_ints([s], slc)) for s in chosen}
    counts: dict[int, int] = {}
    for ws in covers.values():
        for w in ws:
            counts[w] = counts.get(w, 0) + 1
    removable = []
    witnesses = {}
    for s in chosen:
        unique = next((w for w in covers[s] if counts[w] == 1), None)
        if unique is None:
            removable.append(s)
        else:
            witnesses[s] = slc.word_of_int(unique)
    return IrreducibilityReport(
        irreducible=not removable,
        removable=tuple(removable),
        unique_witnesses=witnesses)


def is_irreducible(strings, problem, budget: Budget | None = None) -> bool:
    return irreducibility_report(strings, problem, budget).irreducible


# -- independence ---------------------------------------------------------


@dataclass(frozen=True)
class IndependenceReport:
    kind: str  # "internal" | "simple" | "strong"
    passed: bool
    strings_checked: int
    pairs_checked: int
    budget_exhausted: bool
    counterexample: dict | None = None
    separators: tuple[tuple[str, str], ...] | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "kind": self.kind,
            "verdict": "pass" if self.passed else "fail",
            "strings_checked": self.strings_checked,
            "pairs_checked": self.pairs_checked,
            "budget_exhausted": self.budget_exhausted,
        }
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        if self.separators is not None:
            doc["separators"] = {s: w for s, w in self.separators}
        return doc


def _separating_word(f_pairs: Pairs, g_pairs: Pairs, slc: Slice) -> int | None:
    """A word of the slice extending f but not g, or None.

    Over a full cube a separator can be written down directly: pick a
    position where g demands something f does not already force, give it a
    different letter, and pad with the first letter.
    """
    e = slc.e_set()
    k = len(slc.alphabet)
    if e is None:
        fmap = dict(f_pairs)
        for p, d in g_pairs:
            have = fmap.get(p)
            if have is None and k > 1:
                cells = dict(fmap)
                cells[p] = (d + 1) % k
                w = sum(dq * slc._word_weights[q - 1] for q, dq in cells.items())
                if not _pairs_in_word(g_pairs, w, slc):
                    return w
            elif have is not None and have != d:
                w = sum(dq * slc._word_weights[q - 1] for q, dq in f_pairs)
                if not _pairs_in_word(g_pairs, w, slc):
                    return w
        return None
    for w in slc.iter_completions(f_pairs):
        if w in e and not _pairs_in_word(g_pairs, w, slc):
            return w
    return None


def internal_independence(slc: Slice, budget: Budget | None = None) -> IndependenceReport:
    """Check that entanglement between single strings degenerates to the
    extension order: one string forces another exactly when it extends it.

    All ordered pairs over the slice's strings are examined, in canonical
    order, as far as the budget allows. A forcing that extends is entailed
    by the order itself, so the work is finding a separating word for every
    non-extending pair.
    """
    budget = budget or Budget.default()
    cap = max(1, int(budget.max_strings ** 0.5))
    meter = budget.start("internal independence")
    codes, saw_all = _sigma_codes(slc, cap)
    pair_list = [(slc.pairs_of_code(c)) for c in codes]
    pairs_checked = 0
    exhausted = not saw_all
    for f_pairs in pair_list:
        if meter.out_of_time():
            exhausted = True
            break
        for g_pairs in pair_list:
            if f_pairs == g_pairs:
                continue
            pairs_checked += 1
            if _pairs_extend(f_pairs, g_pairs):
                continue
            if _separating_word(f_pairs, g_pairs, slc) is None:
                f = slc.string_of_pairs(f_pairs)
                g = slc.string_of_pairs(g_pairs)
                return IndependenceReport(
                    kind="internal", passed=False,
                    strings_checked=len(codes), pairs_checked=pairs_checked,
                    budget_exhausted=exhausted,
                    counterexample={
                        "f": slc.render(f), "g": slc.render(g),
                        "entangled": True, "extends": False,
                    })
    return IndependenceReport(
        kind="internal", passed=True, strings_checked=len(codes),
        pairs_checked=pairs_checked, budget_exhausted=exhausted)


def _sigma_codes(slc: Slice, cap: int) -> tuple[list[int], bool]:
    """Up to ``cap`` strings occurring in the slice, in canonical order
    (domain size first). Second value: whether that was all of them."""
    k = len(slc.alphabet)
    L = slc.length
    cw = slc._code_weights
    e = slc.e_set()

    def in_sigma(pairs: Pairs) -> bool:
        if e is None:
            return True
        return any(w in e for w in slc.iter_completions(pairs))

    out: list[int] = []
    if not in_sigma(()):  # empty slices are rejected at construction
        return out, True
    out.append(0)
    live = [0]
    while live and len(out) < cap:
        live_set = set(live)
        frontier = []
        for parent in live:
            pairs = slc.pairs_of_code(parent)
            start = pairs[-1][0] + 1 if pairs else 1
            for p in range(start, L + 1):
                for d in range(k):
                    child = parent + (d + 1) * cw[p - 1]
                    if all(child - (dq + 1) * cw[q - 1] in live_set
                           for q, dq in pairs) and in_sigma(pairs + ((p, d),)):
                        frontier.append(child)
        frontier.sort(key=lambda c: slc.pairs_of_code(c))
        live = frontier
        out.extend(frontier)
    if len(out) > cap:
        return out[:cap], False
    return out, not live


def simple_independence(problem, budget: Budget | None = None) -> IndependenceReport:
    """Check the reduced logogram strings pairwise: no member may force
    another's presence in the slice."""
    budget = budget or Budget.default()
    meter = budget.start(f"simple independence: {problem.label}")
    log = problem.logogram(meter=meter)
    slc = problem.slice
    pair_list = [slc.pairs_of(s) for s in log.elements]
    pairs_checked = 0
    for i, fp in enumerate(pair_list):
        if meter.out_of_time():
            raise BudgetExceededError(
                f"simple independence: out of time after {pairs_checked} pairs")
        for j, gp in enumerate(pair_list):
            if i == j:
                continue
            pairs_checked += 1
            if _separating_word(fp, gp, slc) is None:
                return IndependenceReport(
                    kind="simple", passed=False,
                    strings_checked=len(pair_list), pairs_checked=pairs_checked,
                    budget_exhausted=False,
                    counterexample={
                        "f": slc.render(log.elements[i]),
                        "g": slc.render(log.elements[j]),
                        "entangled": True,
                    })
    return IndependenceReport(
        kind="simple", passed=True, strings_checked=len(pair_list),
        pairs_checked=pairs_checked, budget_exhausted=False)


def strong_independence(problem, budget: Budget | None = None) -> IndependenceReport:
    """For every reduced logogram string, find a word containing it and no
    other member. One separator per member settles the condition for every
    subset of the logogram at once: a word avoiding all other members
    avoids any selection of them.
    """
    budget = budget or Budget.default()
    meter = budget.start(f"strong independence: {problem.label}")
    log = problem.logogram(meter=meter)
    slc = problem.slice
    e = slc.e_set()
    pair_list = [slc.pairs_of(s) for s in log.elements]
    separators = []
    for i, fp in enumerate(pair_list):
        if meter.out_of_time():
            raise BudgetExceededError(
                f"strong independence: out of time after {i} strings")
        others = [gp for j, gp in enumerate(pair_list) if j != i]
        found = None
        for w in slc.iter_completions(fp):
            if e is not None and w not in e:
                continue
            if not any(_pairs_in_word(gp, w, slc) for gp in others):
                found = w
                break
        if found is None:
            return IndependenceReport(
                kind="strong", passed=False,
                strings_checked=len(pair_list), pairs_checked=0,
                budget_exhausted=False,
                counterexample={"string": slc.render(log.elements[i]),
                                "reason": "every word containing it contains another member"})
        separators.append((slc.render(log.elements[i]), slc.text_of_int(found)))
    return IndependenceReport(
        kind="strong", passed=True, strings_checked=len(pair_list),
        pairs_checked=0, budget_exhausted=False,
        separators=tuple(separators))


# -- the Galois connection property suite ---------------------------------


@dataclass(frozen=True)
class GaloisCheck:
    law: str
    samples: int
    passed: bool
    counterexample: dict | None = None


@dataclass(frozen=True)
class GaloisReport:
    slice_label: str
    seed: int
    sample_count: int
    checks: tuple[GaloisCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "slice": self.slice_label,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "verdict": "pass" if self.passed else "fail",
            "checks": [
                {"eq": c.law, "samples": c.samples,
                 "verdict": "pass" if c.passed else "fail",
                 **({"counterexample": c.counterexample} if c.counterexample else {})}
                for c in self.checks
            ],
        }


def verify_galois(slc: Slice, sample_count: int = 1000, seed: int = 0,
                  budget: Budget | None = None) -> GaloisReport:
    """Sample string sets and word sets and check the laws of the
    expansion/logogram pair: antitonicity both ways, extensiveness of both
    closures, and stability of expansion and logogram under one round trip.
    """
    budget = budget or Budget.default()
    meter = budget.start("galois suite")
    rng = random.Random(seed)
    e_ints = slc.word_ints()
    L = slc.length

    def sample_word_pairs() -> Pairs:
        w = rng.choice(e_ints)
        keep = [p for p in range(1, L + 1) if rng.random() < 0.5]
        k = len(slc.alphabet)
        return tuple((p, (w // slc._word_weights[p - 1]) % k) for p in keep)

    def sample_strings(limit: int = 3) -> list[PartialString]:
        return [slc.string_of_pairs(sample_word_pairs())
                for _ in range(rng.randint(1, limit))]

    def sample_target() -> list[int]:
        n = rng.randint(0, len(e_ints))
        return sorted(rng.sample(e_ints, n))

    e = slc.e_set()

    def lift(strings: list[PartialString]) -> list[PartialString]:
        # random extensions of random members: entangled with the source by
        # construction
        out = []
        for _ in range(rng.randint(1, 3)):
            base = slc.pairs_of(rng.choice(strings))
            w = next(i for i in slc.iter_completions(base)
                     if e is None or i in e)
            extra = [p for p in range(1, L + 1) if rng.random() < 0.3]
            fmap = dict(base)
            k = len(slc.alphabet)
            for p in extra:
                fmap.setdefault(p, (w // slc._word_weights[p - 1]) % k)
            out.append(slc.string_of_pairs(tuple(sorted(fmap.items()))))
        return out

    def minimal(a_ints) -> list[PartialString]:
        codes = _minimal_log_codes(frozenset(a_ints), slc, budget, label="galois sample")
        return [slc.string_of_pairs(slc.pairs_of_code(c)) for c in codes]

    tallies: dict[str, int] = {}
    failures: dict[str, dict] = {}

    def record(law: str, ok: bool, evidence: dict) -> None:
        tallies[law] = tallies.get(law, 0) + 1
        if not ok and law not in failures:
            failures[law] = evidence

    laws = ["antitone-expansion", "antitone-logogram",
            "string-closure-covered", "word-closure-extensive",
            "string-closure-extensive", "expansion-roundtrip-stable",
            "logogram-roundtrip-stable"]
    for _ in range(sample_count):
        if meter.out_of_time():
            raise BudgetExceededError(
                f"galois suite: out of time after "
                f"{max(tallies.values(), default=0)} samples")
        H = sample_strings()
        K = lift(H)
        B = sample_target()
        A = [w for w in B if rng.random() < 0.6]
        h_texts = [slc.render(s) for s in H]
        k_texts = [slc.render(s) for s in K]
        a_texts = [slc.text_of_int(w) for w in A]
        b_texts = [slc.text_of_int(w) for w in B]

        # forcing one set implies the reverse inclusion of expansions
        if entangles(K, H, slc):
            ok = expand_ints(K, slc) <= expand_ints(H, slc)
            record("antitone-expansion", ok, {"H": h_texts, "K": k_texts})

        # nested targets have nested logograms, hence entangled logograms
        min_a, min_b = minimal(A), minimal(B)
        ok = all(_log_probe(slc.pairs_of(g), frozenset(B), slc)[0] for g in min_a) \
            and expand_ints(min_a, slc) <= expand_ints(min_b, slc)
        record("antitone-logogram", ok, {"A": a_texts, "B": b_texts})

        # the logogram of the expansion of H is forced back onto H
        exp_h = expand_ints(H, slc)
        min_exp_h = minimal(exp_h)
        record("string-closure-covered",
               expand_ints(min_exp_h, slc) <= exp_h,
               {"H": h_texts})

        # a target is contained in its closure
        closure_a = expand_ints(min_a, slc)
        record("word-closure-extensive", set(A) <= closure_a, {"A": a_texts})

        # every sampled string lies in the closure of its own set
        record("string-closure-extensive",
               all(closure_ab_contains(h, H, slc) for h in H),
               {"H": h_texts})

        # one round trip leaves the expansion unchanged
        record("expansion-roundtrip-stable",
               expand_ints(min_exp_h, slc) == exp_h,
               {"H": h_texts})

        # and leaves the logogram unchanged
        min_closure_a = minimal(sorted(closure_a))
        record("logogram-roundtrip-stable",
               sort_strings(min_a, slc.alphabet) == sort_strings(min_closure_a, slc.alphabet),
               {"A": a_texts})

    checks = tuple(
        GaloisCheck(law=law, samples=tallies.get(law, 0),
                    passed=law not in failures,
                    counterexample=failures.get(law))
        for law in laws)
    return GaloisReport(slice_label=slc.label, seed=seed,
                        sample_count=sample_count, checks=checks)
