"""Scanner behavior: keyword phrases, stop sets, pending punctuation."""

import pytest

from legalc.normalize import preprocess
from legalc.scanner import (
    ScanError,
    Scanner,
    dump_tokens,
    match_keyword_phrase,
    reconstruct_words,
    scan_number,
)
from legalc.tokens import StopSet, Token, TokenKind

K = TokenKind


def norm(source: str):
    return preprocess(source.encode("utf-8"), "test")


def kinds_of(tokens):
    return [t.kind for t in tokens]


# -- keyword phrase matching -------------------------------------------------

@pytest.mark.parametrize("phrase,kind,count", [
    ("قانون", K.TYPE, 1),
    ("قرار", K.TYPE, 1),
    ("مرسوم", K.TYPE, 1),
    ("رقم", K.RAQM, 1),
    ("إن", K.INNA, 1),
    ("ونظرا", K.BINAA, 1),
    ("وبعد الاطلاع", K.BINAA, 2),
    ("وبعد موافقة", K.BINAA, 2),
    ("وبناء على", K.BINAA, 2),
    ("بناء على", K.BINAA, 2),
    ("نظرا", K.HAYSOU, 1),
    ("وبعد أن", K.HAYSOU, 2),
    ("وبما أن", K.HAYSOU, 2),
    ("وحيث أن", K.HAYSOU, 2),
    ("يرسم ما يأتي", K.YAKOUR, 3),
    ("يرسم ما يلي", K.YAKOUR, 3),
    ("يقرر ما يأتي", K.YAKOUR, 3),
    ("يقرر ما يلي", K.YAKOUR, 3),
    ("مادة", K.MADA, 1),
    ("المادة", K.MADA, 1),
    ("في", K.FI, 1),
    ("إمضاء", K.IMDAA, 1),
    ("الإمضاء", K.IMDAA, 1),
])
def test_every_keyword_spelling_matches(phrase, kind, count):
    m = match_keyword_phrase(norm(phrase + " كذا"), 0, 0)
    assert m is not None and (m.kind, m.word_count) == (kind, count)


def test_longest_phrase_wins():
    # the 2-word وبعد أن must win over any 1-word reading of وبعد
    m = match_keyword_phrase(norm("وبعد أن اطلعت"), 0, 0)
    assert m is not None and (m.kind, m.word_count) == (K.HAYSOU, 2)
    assert match_keyword_phrase(norm("وبعد شيء"), 0, 0) is None


def test_folded_spelling_variants_match():
    # bare alef and stripped hamza forms fold onto the canonical keywords
    assert match_keyword_phrase(norm("الامضاء: فلان"), 0, 0).kind is K.IMDAA
    assert match_keyword_phrase(norm("ان الوزير"), 0, 0).kind is K.INNA
    assert match_keyword_phrase(norm("ماده ١:"), 0, 0).kind is K.MADA


def test_phrases_never_span_lines():
    assert match_keyword_phrase(norm("بناء\nعلى الدستور"), 0, 0) is None


def test_intermediate_trailing_punctuation_blocks_phrase():
    assert match_keyword_phrase(norm("يرسم، ما يأتي"), 0, 0) is None
    assert match_keyword_phrase(norm("بناء، على"), 0, 0) is None


def test_trailing_punctuation_on_final_word_is_fine():
    m = match_keyword_phrase(norm("يرسم ما يأتي:"), 0, 0)
    assert m is not None and m.kind is K.YAKOUR


def test_match_respects_stop_before_limit():
    text = norm("كذا بناء على الدستور")
    assert match_keyword_phrase(text, 0, 1) is not None
    # limit excludes the phrase's second word
    assert match_keyword_phrase(text, 0, 1, limit=(0, 2)) is None


def test_scan_number():
    assert scan_number("٢٥") == "٢٥"
    assert scan_number("25") == "25"
    assert scan_number("٢٥أ") is None
    assert scan_number("") is None


# -- token emission ----------------------------------------------------------

def test_statement_line_tokens():
    sc = Scanner(norm("مرسوم رقم ٢٥"))
    assert sc.next_token(StopSet.of(K.TYPE)).kind is K.TYPE
    assert sc.next_token(StopSet.of(K.RAQM)).kind is K.RAQM
    tok = sc.next_token(StopSet.of(K.NUM))
    assert (tok.kind, tok.lexeme) == (K.NUM, "٢٥")
    assert sc.next_token(StopSet.of()).kind is K.EOF


def test_number_only_taken_when_expected():
    sc = Scanner(norm("٢٥ كذا"))
    tok = sc.next_token(StopSet.of())
    assert tok.kind is K.STRING
    assert tok.lexeme == "٢٥ كذا"


def test_string_stops_at_attached_comma_and_queues_it():
    sc = Scanner(norm("رئيس الجمهورية، كذا"))
    tok = sc.next_token(StopSet.of(K.COMMA))
    assert (tok.kind, tok.lexeme) == (K.STRING, "رئيس الجمهورية")
    comma = sc.next_token(StopSet.of(K.COMMA))
    assert (comma.kind, comma.detached) == (K.COMMA, True)
    rest = sc.next_token(StopSet.of())
    assert (rest.kind, rest.lexeme) == (K.STRING, "كذا")


def test_standalone_comma_stops_and_is_not_detached():
    sc = Scanner(norm("كذا ، تابع"))
    tok = sc.next_token(StopSet.of(K.COMMA))
    assert tok.lexeme == "كذا"
    comma = sc.next_token(StopSet.of())
    assert (comma.kind, comma.detached) == (K.COMMA, False)


def test_comma_stops_even_when_unexpected():
    sc = Scanner(norm("كذا، تابع"))
    tok = sc.next_token(StopSet.of())
    assert tok.lexeme == "كذا"
    assert sc.next_token(StopSet.of()).kind is K.COMMA


def test_dot_stops_only_at_line_end():
    sc = Scanner(norm("قمر. شمس نهاية.\nجبل"))
    tok = sc.next_token(StopSet.of(K.DOT))
    assert tok.lexeme == "قمر. شمس نهاية"
    assert sc.next_token(StopSet.of(K.DOT)).kind is K.DOT
    assert sc.next_token(StopSet.of()).lexeme == "جبل"


def test_colon_stops_only_when_expected():
    sc = Scanner(norm("عنوان: تابع"))
    tok = sc.next_token(StopSet.of())
    assert tok.lexeme == "عنوان: تابع"
    sc = Scanner(norm("عنوان: تابع"))
    tok = sc.next_token(StopSet.of(K.COLON))
    assert tok.lexeme == "عنوان"
    assert sc.next_token(StopSet.of()).kind is K.COLON


def test_lone_colon_word_returned_directly_when_expected():
    sc = Scanner(norm("يرسم ما يأتي :"))
    assert sc.next_token(StopSet.of(K.YAKOUR)).kind is K.YAKOUR
    colon = sc.next_token(StopSet.of(K.COLON))
    assert (colon.kind, colon.detached) == (K.COLON, False)


def test_keyword_stops_string_mid_line():
    sc = Scanner(norm("بعيدا في ٢٠١٨"))
    tok = sc.next_token(StopSet.of(K.FI))
    assert tok.lexeme == "بعيدا"
    assert sc.next_token(StopSet.of(K.FI)).kind is K.FI


def test_keyword_at_line_start_needs_line_break_stops():
    sc = Scanner(norm("عنوان طويل\nإن الوزير"))
    tok = sc.next_token(StopSet.of(K.INNA, line_break_stops=True))
    assert tok.lexeme == "عنوان طويل"
    assert sc.next_token(StopSet.of(K.INNA)).kind is K.INNA

    sc = Scanner(norm("عنوان طويل\nإن الوزير"))
    tok = sc.next_token(StopSet.of(K.INNA))
    # without line-break stops the line-initial keyword does not interrupt
    assert tok.lexeme == "عنوان طويل إن الوزير"


def test_unexpected_keyword_is_plain_text():
    sc = Scanner(norm("المرسوم رقم ١١٦ كذا"))
    tok = sc.next_token(StopSet.of(K.COMMA))
    assert tok.lexeme == "المرسوم رقم ١١٦ كذا"


def test_stop_before_bounds_accumulation():
    sc = Scanner(norm("واحد اثنان ثلاثة أربعة"))
    tok = sc.next_token(StopSet.of(stop_before=(0, 2)))
    assert tok.lexeme == "واحد اثنان"
    tok = sc.next_token(StopSet.of(stop_before=(1, 0)))
    assert tok.lexeme == "ثلاثة أربعة"


def test_exhausted_region_raises():
    sc = Scanner(norm("واحد اثنان"))
    sc.next_token(StopSet.of(stop_before=(0, 1)))
    with pytest.raises(ScanError):
        sc.next_token(StopSet.of(stop_before=(0, 1)))


def test_end_of_input_beats_region_bound():
    sc = Scanner(norm("واحد"))
    sc.next_token(StopSet.of())
    assert sc.next_token(StopSet.of(stop_before=(0, 1))).kind is K.EOF


def test_eof_token_at_end():
    sc = Scanner(norm("كلمة"))
    sc.next_token(StopSet.of())
    eof = sc.next_token(StopSet.of())
    assert eof.kind is K.EOF
    assert eof.span.start_line == 0


def test_keyword_lexeme_keeps_original_spelling():
    sc = Scanner(norm("الامضاء: فلان"))
    tok = sc.next_token(StopSet.of(K.IMDAA))
    assert tok.lexeme == "الامضاء"
    assert sc.next_token(StopSet.of(K.COLON)).kind is K.COLON


def test_spans_are_one_based_in_display():
    sc = Scanner(norm("مرسوم رقم ٢٥"))
    tok = sc.next_token(StopSet.of(K.TYPE))
    assert str(tok.span) == "1:1-1:1"


# -- reconstruction and dumps -------------------------------------------------

def test_reconstruct_reattaches_detached_punctuation():
    text = norm("رئيس الجمهورية،\nكذا ، تابع.")
    sc = Scanner(text)
    tokens = []
    while True:
        tok = sc.next_token(StopSet.of(K.COMMA, K.DOT))
        tokens.append(tok)
        if tok.kind is K.EOF:
            break
    original = [w.text for line in text.lines for w in line]
    assert reconstruct_words(tokens) == original


def test_dump_tokens_format():
    sc = Scanner(norm("مرسوم رقم ٢٥"))
    tokens = [sc.next_token(StopSet.of(K.TYPE)),
              sc.next_token(StopSet.of(K.RAQM)),
              sc.next_token(StopSet.of(K.NUM))]
    dump = dump_tokens(tokens)
    lines = dump.splitlines()
    assert lines[0].split("\t") == ["TYPE", "1:1-1:1", "مرسوم"]
    assert lines[2].split("\t") == ["NUM", "1:3-1:3", "٢٥"]
