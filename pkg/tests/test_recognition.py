import pytest
from hypothesis import given, strategies as st

from rtca.core import CAError
from rtca.recognition import (EmptyWordError, MarkedWord, MarkError,
                              Recognizer, accepts, accepts_at, embed_word,
                              equivalent_up_to, language_up_to, mark_at,
                              no_marks, parse_marked, stabilized, unmark)

words = st.text(alphabet="ab", min_size=1, max_size=12)


def test_embed_single_letter(fle):
    conf = embed_word(fle, "a")
    assert set(conf.support) == {(0,)}


def test_embed_marked_pairs(mra):
    conf = embed_word(mra, mark_at("ab", 0))
    assert set(conf.support) == {(0,), (1,)}


def test_embed_2d_row():
    from rtca.catalog import letter_star
    from rtca.closures import concat_marked_recognizer
    from rtca.lifts import build_linear_lift
    lift = build_linear_lift(concat_marked_recognizer(
        letter_star("a"), letter_star("b")))
    conf = embed_word(lift, "ab")
    assert set(conf.support) == {(0, 0), (1, 0)}


def test_empty_word_rejected(fle):
    with pytest.raises(EmptyWordError):
        accepts(fle, "")
    with pytest.raises(EmptyWordError):
        embed_word(fle, "")


def test_accepts_at_examples(fle):
    # single letter decided by the initial state
    assert accepts_at(fle, "a", 0)
    # deadline semantics on longer words
    assert accepts_at(fle, "aba", 2)
    assert not accepts_at(fle, "ab", 1)


def test_accepts_delegates_to_deadline(fle):
    for w in ("a", "ab", "aba", "abba", "babab"):
        assert accepts(fle, w) == accepts_at(fle, w, fle.deadline(len(w)))


@given(words, st.data())
def test_mark_roundtrip(w, data):
    i = data.draw(st.integers(min_value=0, max_value=len(w) - 1))
    m = mark_at(w, i)
    assert unmark(m) == w
    assert m.mark_count == 1
    assert m.mark_positions() == (i,)


def test_mark_index_out_of_range():
    with pytest.raises(MarkError):
        mark_at("ab", 2)


def test_parse_marked_syntax():
    m = parse_marked("ab*c")
    assert m.letters == "abc" and m.marks == (0, 1, 0)
    assert str(m) == "ab*c"
    assert parse_marked("abc") == no_marks("abc")


def test_equivalence_harness_empty_report(fle):
    assert equivalent_up_to(fle, fle.oracle, 8) == []


def test_equivalence_harness_detects_corruption(fle):
    corrupted = Recognizer(
        name="broken", automaton=fle.automaton, alphabet=fle.alphabet,
        embed_letter=fle.embed_letter,
        accepting=lambda s: not fle.accepting(s))
    report = equivalent_up_to(corrupted, fle.oracle, 4)
    assert report
    assert report[0].recognizer == "broken"
    parsed = report[0].to_json()
    for field in ("word", "marks", "expected", "got", "time", "recognizer"):
        assert field in parsed


def test_language_up_to(bal):
    lang = language_up_to(bal, 6)
    assert lang == {"ab", "aabb", "aaabbb"}


def test_cone_window_matches_larger_window(fle):
    # real-time cone sufficiency: confined window equals any larger one
    from rtca.recognition import _origin_run
    for w in ("ab", "abab", "babba"):
        syms = fle.symbols_of(w)
        t = fle.deadline(len(syms))
        run_small = _origin_run(fle, syms, t)
        big = Recognizer("wide", Automaton_unconfined(fle), fle.alphabet,
                         fle.embed_letter, fle.accepting)
        run_big = _origin_run(big, syms, t)
        assert run_small.state_at(0) == run_big.state_at(0)


def Automaton_unconfined(r):
    from rtca.core import Automaton, STD_1D
    base = r.automaton
    return Automaton(base.name + "-wide", 1, STD_1D, base.quiescent,
                     base.rule, confined=False)


def test_stabilized_latch_is_stable(fle):
    stable = stabilized(fle)
    for w in ("ab", "aba", "abba"):
        expected = fle.oracle(w)
        for extra in range(0, 6):
            assert accepts_at(stable, w, len(w) + extra) == expected


def test_stabilized_requires_real_time(fle):
    slow = Recognizer("slow", fle.automaton, fle.alphabet, fle.embed_letter,
                      fle.accepting, latency=2)
    with pytest.raises(CAError):
        stabilized(slow)


def test_latency_constant_declared(fle, bal):
    # catalog base recognizers run at real time with latency 0
    assert fle.latency == 0 and bal.latency == 0
