import pytest

from arglab.af import ExtensionFamily, is_antichain
from arglab.errors import CapExceeded, FormatError
from arglab.realisable import (
    antichains,
    condition_existential,
    condition_literal,
    format_family_file,
    parse_family,
    prefilter,
    realise_bruteforce,
    realized_families,
    survey,
    survey_record,
)
from arglab.semantics import oracle_extensions



def fam(n, *sets):
    return ExtensionFamily(n, tuple(sum(1 << (j - 1) for j in s) for s in sets))


def test_prefilter_accepts_antichain():
    assert prefilter(fam(2, {1}, {2})) == (True, [])


def test_prefilter_reasons():
    ok, reasons = prefilter(ExtensionFamily(2, ()))
    assert not ok and len(reasons) == 1
    ok, reasons = prefilter(fam(2, {1}, {1, 2}))
    assert not ok and "incomparable" in reasons[0]
    ok, reasons = prefilter(fam(2, set(), {1}))
    assert not ok and len(reasons) == 2


def test_conditions_two_singletons():
    S = fam(2, {1}, {2})
    assert condition_literal(S) == (True, None)
    assert condition_existential(S) == (True, None)


def test_condition_literal_witness():
    ok, w = condition_literal(fam(3, {1, 2}))
    assert not ok
    assert w.T == 0b111 and w.pair == (0, 1) and w.member == 0b011


def test_condition_existential_witness():
    ok, w = condition_existential(fam(3, {1, 2}, {1, 3}, {2, 3}))
    assert not ok and w.T == 0b111


def test_condition_existential_on_empty_member():
    ok, w = condition_existential(fam(1, set()))
    assert not ok and w.T == 0b1


def test_realise_examples():
    H = realise_bruteforce(fam(2, {1}, {2}))
    assert H is not None and H.attacks == frozenset({(0, 1), (1, 0)})
    H = realise_bruteforce(fam(3, {1, 2, 3}))
    assert H is not None and not H.attacks
    assert realise_bruteforce(fam(1, set())) is None
    assert realise_bruteforce(fam(2, {1}, {1, 2})) is None


def test_realise_returns_witness_exhaustive_n3():
    for f in antichains(3):
        S = ExtensionFamily(3, f)
        H = realise_bruteforce(S)
        if H is not None:
            assert oracle_extensions(H, "preferred").as_set() == S.as_set()


def test_prefilter_failure_means_unrealisable_n3():
    # every family of subsets, antichain or not
    subsets = list(range(8))
    for chosen in range(1 << len(subsets)):
        S = ExtensionFamily(3, tuple(s for s in subsets if chosen >> s & 1))
        if not prefilter(S)[0]:
            assert realise_bruteforce(S) is None


def test_realise_cap():
    with pytest.raises(CapExceeded):
        realise_bruteforce(fam(5, {1}))
    with pytest.raises(CapExceeded):
        realise_bruteforce(fam(6, {1}), allow_n5=True)


def test_antichain_counts():
    # Dedekind numbers
    assert [sum(1 for _ in antichains(n)) for n in range(5)] == [2, 3, 6, 20, 168]
    for a in antichains(3):
        assert is_antichain(a)


def test_realized_small():
    assert list(realized_families(1)) == [(1,)]
    assert set(realized_families(2)) == {(0b11,), (0b01,), (0b10,), (0b10, 0b01)}
    assert realized_families(2)[(0b10, 0b01)] == 3


def test_realized_independent_of_chunking():
    base = realized_families(3)
    assert realized_families(3, chunks=7) == base
    assert list(realized_families(3, chunks=7)) == list(base)


@pytest.mark.slow
def test_realized_parallel_matches():
    assert realized_families(3, workers=2, chunks=4) == realized_families(3)


def test_survey_n3():
    rep = survey(3)
    assert rep.systems == 64 and rep.candidates == 20
    assert len(rep.realized) == 18
    assert rep.prefilter_failures_realized == 0
    assert not rep.literal.necessary
    assert len(rep.literal.necessity_counterexamples) == 9
    assert (0b011,) in rep.literal.necessity_counterexamples
    # the odd cycle realises {∅}, which has no pair to offer
    assert rep.existential.necessity_counterexamples == [(0,)]
    assert rep.literal.realized_true + rep.literal.realized_false == 18
    assert rep.existential.unrealized_true + rep.existential.unrealized_false == 2


def test_survey_n4():
    rep = survey(4)
    assert rep.candidates == 168 and len(rep.realized) == 113
    assert rep.prefilter_failures_realized == 0


def test_survey_record_stable_across_chunks():
    assert survey_record(survey(3)) == survey_record(survey(3, chunks=5))


def test_survey_cap():
    with pytest.raises(CapExceeded):
        survey(5)


def test_family_file_round_trip():
    S = fam(3, set())
    assert parse_family(format_family_file(S)) == S
    S = fam(3, {1, 2}, {3})
    text = format_family_file(S)
    assert text == "universe 3\nx3\nx1,x2\n" or text.startswith("universe 3\n")
    assert parse_family(text) == S


@pytest.mark.parametrize("text", ["", "universe x\n", "universe 2\nx3\n", "universe 2\nx1\nx1\n",
                                  "universe 65\n"])
def test_family_file_errors(text):
    with pytest.raises(FormatError):
        parse_family(text)
