"""Expectation-driven tokenizer.

The scanner has no fixed token boundaries of its own: the parser tells it,
via a :class:`~legalc.tokens.StopSet`, which kinds may come next, and free
text (STRING) accumulates until an expected keyword, a phrase delimiter or a
scope bound ends it.  Matching uses folded spellings so that e.g. الامضاء
matches the الإمضاء keyword; emitted lexemes always keep the original text.

Delimiters detached from a host word ('الجمهورية،' ends an issuer phrase) are
queued and emitted as their own COMMA/DOT/COLON tokens before the cursor
moves on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .normalize import NormalizedText, fold_for_matching, is_digit_run
from .tokens import Span, StopSet, Token, TokenKind, punctuation_kind


class ScanError(Exception):
    """Raised when a scan request cannot yield a token (empty region)."""

    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.span = span


def _fold_phrase(phrase: str) -> tuple[str, ...]:
    return tuple(fold_for_matching(w).matchable for w in phrase.split(" "))


def _build_tables() -> tuple[dict[tuple[str, ...], TokenKind], ...]:
    one: dict[tuple[str, ...], TokenKind] = {}
    two: dict[tuple[str, ...], TokenKind] = {}
    three: dict[tuple[str, ...], TokenKind] = {}
    spellings: list[tuple[str, TokenKind]] = [
        ("قانون", TokenKind.TYPE),
        ("قرار", TokenKind.TYPE),
        ("مرسوم", TokenKind.TYPE),
        ("رقم", TokenKind.RAQM),
        ("إن", TokenKind.INNA),
        ("ونظرا", TokenKind.BINAA),
        ("وبعد الاطلاع", TokenKind.BINAA),
        ("وبعد موافقة", TokenKind.BINAA),
        ("وبناء على", TokenKind.BINAA),
        ("بناء على", TokenKind.BINAA),
        ("نظرا", TokenKind.HAYSOU),
        ("وبعد أن", TokenKind.HAYSOU),
        ("وبما أن", TokenKind.HAYSOU),
        ("وحيث أن", TokenKind.HAYSOU),
        ("يرسم ما يأتي", TokenKind.YAKOUR),
        ("يرسم ما يلي", TokenKind.YAKOUR),
        ("يقرر ما يأتي", TokenKind.YAKOUR),
        ("يقرر ما يلي", TokenKind.YAKOUR),
        ("مادة", TokenKind.MADA),
        ("المادة", TokenKind.MADA),
        ("في", TokenKind.FI),
        ("إمضاء", TokenKind.IMDAA),
        ("الإمضاء", TokenKind.IMDAA),
    ]
    for phrase, kind in spellings:
        folded = _fold_phrase(phrase)
        {1: one, 2: two, 3: three}[len(folded)][folded] = kind
    return one, two, three


_KEYWORDS_1, _KEYWORDS_2, _KEYWORDS_3 = _build_tables()


@dataclass(frozen=True)
class KeywordMatch:
    kind: TokenKind
    word_count: int


def match_keyword_phrase(text: NormalizedText, line: int, word: int,
                         limit: tuple[int, int] | None = None) -> KeywordMatch | None:
    """Longest keyword phrase starting at (line, word), or None.

    Phrases never span lines; words before the last must carry no trailing
    delimiter.  ``limit`` is an exclusive (line, word) bound.
    """
    if line >= text.line_count:
        return None
    words = text.words(line)
    for count, table in ((3, _KEYWORDS_3), (2, _KEYWORDS_2), (1, _KEYWORDS_1)):
        end = word + count
        if end > len(words):
            continue
        if limit is not None and (line, end - 1) >= limit:
            continue
        folded = [fold_for_matching(w.text) for w in words[word:end]]
        if any(f.trailing for f in folded[:-1]):
            continue
        key = tuple(f.matchable for f in folded)
        kind = table.get(key)
        if kind is not None:
            return KeywordMatch(kind, count)
    return None


def scan_number(word: str) -> str | None:
    """The word itself when it is a pure digit run (either script), else None."""
    return word if is_digit_run(word) else None


@dataclass(frozen=True)
class _Pending:
    kind: TokenKind
    lexeme: str
    span: Span
    detached: bool
    at_line_end: bool


class Scanner:
    """Stateful tokenizer over one :class:`NormalizedText`.

    The cursor only moves forward, and queued delimiter punctuation is always
    emitted before the next word is consumed.
    """

    def __init__(self, text: NormalizedText):
        self.text = text
        self.line = 0
        self.word = 0
        self._pending: deque[_Pending] = deque()

    # -- cursor helpers -------------------------------------------------

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.word)

    @property
    def has_pending(self) -> bool:
        return bool(self._pending)

    def at_end(self) -> bool:
        return self.line >= self.text.line_count

    def _at_bound(self, stop_before: tuple[int, int] | None) -> bool:
        return stop_before is not None and self.position >= stop_before

    def _advance(self) -> None:
        if self.word + 1 < len(self.text.words(self.line)):
            self.word += 1
        else:
            self.line += 1
            self.word = 0

    def _at_line_end(self) -> bool:
        return self.word == len(self.text.words(self.line)) - 1

    def _eof_span(self) -> Span:
        if self.text.line_count == 0:
            return Span.point(0, 0)
        last = self.text.line_count - 1
        return Span.point(last, len(self.text.words(last)))

    def peek_keyword(self, limit: tuple[int, int] | None = None) -> KeywordMatch | None:
        """Non-consuming keyword match at the cursor, regardless of kind."""
        if self.at_end() or self._at_bound(limit):
            return None
        return match_keyword_phrase(self.text, self.line, self.word, limit)

    # -- tokenization ---------------------------------------------------

    def next_token(self, expect: StopSet) -> Token:
        """Produce the next token under the given expectations.

        Pending detached punctuation is emitted first.  Then, in order: a
        keyword phrase whose kind is expected; a NUM when expected and the
        word is a digit run; otherwise STRING accumulation.  Raises
        :class:`ScanError` when asked for a token in an exhausted scope.
        """
        if self._pending:
            p = self._pending.popleft()
            return Token(p.kind, p.lexeme, p.span, detached=p.detached)

        if self.at_end():
            return Token(TokenKind.EOF, "", self._eof_span())
        if self._at_bound(expect.stop_before):
            raise ScanError("no input left in this scan region", Span.point(self.line, self.word))

        match = match_keyword_phrase(self.text, self.line, self.word, expect.stop_before)
        if match is not None and match.kind in expect.kinds:
            return self._take_keyword(match)

        if TokenKind.NUM in expect.kinds:
            folded = fold_for_matching(self.text.word(self.line, self.word).text)
            if scan_number(folded.matchable) is not None:
                return self._take_number(folded)

        return self._take_string(expect)

    def _queue_trailing(self, trailing: str, line: int, word: int, detached: bool) -> None:
        kind = punctuation_kind(trailing)
        if kind is None:
            return
        at_eol = word == len(self.text.words(line)) - 1
        self._pending.append(_Pending(kind, trailing, Span.point(line, word), detached, at_eol))

    def _take_keyword(self, match: KeywordMatch) -> Token:
        start = self.position
        pieces: list[str] = []
        for i in range(match.word_count):
            original = self.text.word(self.line, self.word).text
            if i == match.word_count - 1:
                folded = fold_for_matching(original)
                pieces.append(folded.body)
                if folded.trailing:
                    self._queue_trailing(folded.trailing, self.line, self.word, detached=True)
            else:
                pieces.append(original)
            end = self.position
            self._advance()
        return Token(match.kind, " ".join(pieces), Span(*start, *end))

    def _take_number(self, folded) -> Token:
        span = Span.point(self.line, self.word)
        if folded.trailing:
            self._queue_trailing(folded.trailing, self.line, self.word, detached=True)
        self._advance()
        return Token(TokenKind.NUM, folded.body, span)

    def _take_string(self, expect: StopSet) -> Token:
        pieces: list[str] = []
        start = self.position
        end = self.position
        while not self.at_end() and not self._at_bound(expect.stop_before):
            line, word = self.position
            if pieces and self._keyword_stops_here(expect):
                break
            original = self.text.word(line, word).text
            lone_kind = punctuation_kind(original) if len(original) == 1 else None
            if lone_kind is not None and self._delimiter_stops(lone_kind, expect):
                self._pending.append(_Pending(lone_kind, original, Span.point(line, word),
                                              detached=False, at_line_end=self._at_line_end()))
                self._advance()
                break
            folded = fold_for_matching(original)
            trailing_kind = punctuation_kind(folded.trailing) if folded.trailing else None
            if trailing_kind is not None and self._delimiter_stops(trailing_kind, expect):
                pieces.append(folded.body)
                end = (line, word)
                self._queue_trailing(folded.trailing, line, word, detached=True)
                self._advance()
                break
            pieces.append(original)
            end = (line, word)
            self._advance()
        if not pieces:
            if self._pending:
                # The very first word was standalone punctuation that stopped
                # accumulation; hand it out directly instead of an empty STRING.
                p = self._pending.popleft()
                return Token(p.kind, p.lexeme, p.span, p.detached)
            raise ScanError("expected text, found none", Span.point(*start))
        return Token(TokenKind.STRING, " ".join(pieces), Span(*start, *end))

    def _keyword_stops_here(self, expect: StopSet) -> bool:
        # Mid-line keywords always end accumulation; line-initial keywords
        # only do when the stop set asks for line-break stops.
        if self.word == 0 and not expect.line_break_stops:
            return False
        match = match_keyword_phrase(self.text, self.line, self.word, expect.stop_before)
        return match is not None and match.kind in expect.kinds

    def _delimiter_stops(self, kind: TokenKind, expect: StopSet) -> bool:
        if kind is TokenKind.COMMA:
            return True
        if kind is TokenKind.DOT:
            return self._at_line_end()
        if kind is TokenKind.COLON:
            return TokenKind.COLON in expect.kinds
        return False


def reconstruct_words(tokens: list[Token]) -> list[str]:
    """Rebuild the source word sequence from a completed scan.

    Detached punctuation reattaches to its host word; standalone punctuation
    becomes its own word again.  Used to verify that scanning loses nothing.
    """
    words: list[str] = []
    for tok in tokens:
        if tok.kind is TokenKind.EOF:
            continue
        if tok.kind in (TokenKind.COMMA, TokenKind.DOT, TokenKind.COLON) and tok.detached:
            words[-1] += tok.lexeme
            continue
        words.extend(p for p in tok.lexeme.split(" ") if p)
    return words


def dump_tokens(tokens: list[Token]) -> str:
    """One token per line: KIND<TAB>span<TAB>lexeme."""
    return "\n".join(f"{tok.kind}\t{tok.span}\t{tok.lexeme}" for tok in tokens)
