"""Probe traces, justification, kernels of traced programs."""

import pytest

from logogram import (
    DecisionProgram, MalformedProgramError, ProbeTrace, ProgramFaultError,
    Verdict, backward_assignment_scan, built_in_programs, clause_first_scan,
    compare_kernels, forward_assignment_scan, generic_problem, justified,
    kernel, parse_string, run_traced, sat_problem, trace_records, TERNARY,
)


def ps(text, alphabet=TERNARY):
    return parse_string(text, alphabet)


class TestRunTraced:
    def test_forward_scan_accepts_satisfiable_unit(self):
        p = sat_problem(1, 1)
        trace = run_traced(forward_assignment_scan(p), p.slice.word("1"), p)
        assert trace.verdict == Verdict.ACCEPT
        assert trace.probes == ((1, "1"),)

    def test_rejects_empty_clause(self):
        p = sat_problem(1, 1)
        for prog in built_in_programs(p):
            trace = run_traced(prog, p.slice.word("0"), p)
            assert trace.verdict == Verdict.REJECT
            assert trace.probes == ((1, "0"),)

    def test_constant_accept_records_mismatching_verdict(self):
        p = sat_problem(1, 1)
        prog = DecisionProgram("always-accept", lambda probe: True)
        word = p.slice.word("0")
        trace = run_traced(prog, word, p)
        assert trace.verdict == Verdict.ACCEPT
        assert not p.accepts(word)  # wrong, and kernel() will say so

    def test_revisit_is_malformed(self):
        p = sat_problem(2, 1)
        prog = DecisionProgram("revisits", lambda probe: probe(1) == probe(1))
        with pytest.raises(MalformedProgramError):
            run_traced(prog, p.slice.word("10"), p)

    def test_out_of_range_probe_is_malformed(self):
        p = sat_problem(2, 1)
        prog = DecisionProgram("wild", lambda probe: probe(7) == "1")
        with pytest.raises(MalformedProgramError):
            run_traced(prog, p.slice.word("10"), p)

    def test_word_outside_slice_rejected(self):
        p = sat_problem(2, 1)
        with pytest.raises(ValueError):
            run_traced(forward_assignment_scan(p), ps("1"), p)

    def test_probes_record_letters_in_order(self):
        p = sat_problem(2, 2)
        trace = run_traced(clause_first_scan(p), p.slice.word("1012"), p)
        positions = [pos for pos, _ in trace.probes]
        assert positions == sorted(set(positions))
        observed = dict(trace.probes)
        assert all(observed[pos] == "1012"[pos - 1] for pos in observed)


class TestJustified:
    def test_accept_on_forced_restriction(self):
        p = sat_problem(1, 1)
        trace = ProbeTrace(((1, "1"),), Verdict.ACCEPT)
        assert justified(trace, p.slice.word("1"), p)

    def test_accept_with_partial_probe(self):
        p = sat_problem(2, 1)
        trace = ProbeTrace(((1, "1"),), Verdict.ACCEPT)
        assert justified(trace, p.slice.word("10"), p)

    def test_unjustified_accept(self):
        p = sat_problem(2, 1)
        trace = ProbeTrace(((2, "0"),), Verdict.ACCEPT)
        assert not justified(trace, p.slice.word("10"), p)

    def test_justified_reject_requires_no_accepted_extension(self):
        p = sat_problem(2, 1)
        assert justified(ProbeTrace(((1, "0"), (2, "0")), Verdict.REJECT),
                         p.slice.word("00"), p)
        assert not justified(ProbeTrace(((1, "0"),), Verdict.REJECT),
                             p.slice.word("00"), p)

    def test_accepting_restrictions_never_leave_the_target(self):
        # a justified accept's restriction cannot sit inside a rejected word
        p = sat_problem(2, 2)
        for prog in built_in_programs(p):
            for record in trace_records(prog, p):
                if record["verdict"] != "accept":
                    continue
                restriction = {pos: ch for pos, ch in record["probes"]}
                for i in p.slice.word_ints():
                    if i in p.f_ints:
                        continue
                    text = p.slice.text_of_int(i)
                    assert not all(text[pos - 1] == ch
                                   for pos, ch in restriction.items())


class TestKernel:
    def test_forward_scan_1x1(self):
        p = sat_problem(1, 1)
        assert kernel(forward_assignment_scan(p), p).texts(1) == ["1", "2"]

    def test_backward_scan_2x2_full_logogram(self):
        p = sat_problem(2, 2)
        k = kernel(backward_assignment_scan(p), p)
        assert k.elements == p.logogram().elements
        assert len(k) == 12

    def test_single_certificate_problem(self):
        doc = {"alphabet": ["0", "1"], "length": 2, "universe": "all",
               "target": ["10", "11"], "regions": [["10", "11"]], "label": "one"}
        p = generic_problem(doc)

        def decide(probe):
            return probe(1) == "1"

        k = kernel(DecisionProgram("first-position", decide), p)
        assert k.texts(2) == ["1_"]

    def test_incorrect_program_reported_with_input(self):
        p = sat_problem(1, 1)
        with pytest.raises(ProgramFaultError) as err:
            kernel(DecisionProgram("always-accept", lambda probe: True), p)
        assert err.value.word_text == "0"

    def test_underprobing_program_is_unjustified(self):
        # right verdicts on every input of the sweep, but with no probes the
        # restriction justifies none of them
        p = sat_problem(1, 1)
        answers = iter([False, True, True])  # matches the target on "0","1","2"
        psychic = DecisionProgram("sweep-psychic", lambda probe: next(answers))
        with pytest.raises(ProgramFaultError) as err:
            kernel(psychic, p)
        assert "justified" in err.value.reason

    def test_probe_economy(self):
        p = sat_problem(2, 3)
        for prog in built_in_programs(p):
            for record in trace_records(prog, p):
                positions = [pos for pos, _ in record["probes"]]
                assert len(positions) == len(set(positions))
                assert len(positions) <= p.slice.length


class TestKernelLaws:
    @pytest.mark.parametrize("n,m", [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)])
    def test_every_solver_kernel_is_complete_and_full(self, n, m):
        # a correct justified program must certify with a complete set, and
        # on these problems that set is the whole reduced logogram
        from logogram import is_complete
        p = sat_problem(n, m)
        log = p.logogram()
        for prog in built_in_programs(p):
            k = kernel(prog, p)
            assert is_complete(k.elements, p)
            assert k.elements == log.elements


class TestCompareKernels:
    def test_forward_vs_backward_sat_2x1(self):
        p = sat_problem(2, 1)
        report = compare_kernels(forward_assignment_scan(p),
                                 backward_assignment_scan(p), p)
        assert report.equal
        assert report.logogram_irreducible
        assert report.kernels[0].elements == p.logogram().elements

    def test_forward_vs_clause_first_sat_2x2(self):
        p = sat_problem(2, 2)
        report = compare_kernels(forward_assignment_scan(p),
                                 clause_first_scan(p), p)
        assert report.equal

    def test_reducible_logogram_allows_unequal_kernels(self):
        doc = {"alphabet": ["0", "1"], "length": 2, "universe": ["00", "11"],
               "target": ["11"], "regions": [["11"]], "label": "twin"}
        p = generic_problem(doc)
        first = DecisionProgram("first-position", lambda probe: probe(1) == "1")
        second = DecisionProgram("second-position", lambda probe: probe(2) == "1")
        report = compare_kernels(first, second, p)
        assert not report.logogram_irreducible
        assert not report.equal
        assert report.kernels[0].texts(2) == ["1_"]
        assert report.kernels[1].texts(2) == ["_1"]

    def test_json_shape(self):
        p = sat_problem(1, 1)
        doc = compare_kernels(forward_assignment_scan(p),
                              backward_assignment_scan(p), p).to_json_dict()
        assert doc["equal"] is True
        assert doc["kernels"]["forward-assignment-scan"] == ["1", "2"]


class TestTraceRecords:
    def test_record_shape_and_justification(self):
        p = sat_problem(1, 1)
        records = list(trace_records(forward_assignment_scan(p), p))
        assert [r["input"] for r in records] == ["0", "1", "2"]
        assert all(r["justified"] for r in records)
        accept = next(r for r in records if r["input"] == "1")
        assert accept["certifying_strings"] == ["1"]
        reject = next(r for r in records if r["input"] == "0")
        assert reject["certifying_strings"] == []

    def test_built_ins_need_clause_shape(self):
        doc = {"alphabet": ["0", "1"], "length": 2, "universe": "all",
               "target": ["11"], "regions": [["11"]], "label": "corner"}
        with pytest.raises(ValueError):
            forward_assignment_scan(generic_problem(doc))
