"""legalc: validate Arabic legal documents and translate them to XML.

The pipeline is preprocess -> scan/parse -> generate -> serialize.  The
high-level entry point is :func:`compile_document`; the intermediate stages
are exposed for tools and tests.
"""

from .normalize import DecodeError, NormalizedText, Word, preprocess
from .tokens import Span, StopSet, Token, TokenKind
from .scanner import ScanError, Scanner, dump_tokens, reconstruct_words
from .grammar import LengthBoundError, derivable_strings, min_derivable_length, oracle_accepts
from .parser import (
    Article,
    Diagnostic,
    Document,
    LocDate,
    ParseResult,
    ScanResult,
    Signature,
    SignatureKind,
    Statement,
    dump_ast,
    parse_document,
    parse_grammar_tokens,
    parse_token_kinds,
    scan_document,
    segment_trailer,
)
from .codegen import Element, EmitConfig, emit, escape_xml, generate, serialize

__version__ = "0.1.0"


class DocumentRejected(ValueError):
    """Raised by :func:`compile_document` when the input does not parse."""

    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__(diagnostics[0].message if diagnostics else "document rejected")
        self.diagnostics = diagnostics


def compile_document(data: bytes, source_name: str = "<input>",
                     config: EmitConfig = EmitConfig()) -> bytes:
    """Bytes in, XML bytes out.

    Raises :class:`DecodeError` on invalid UTF-8 and
    :class:`DocumentRejected` when the document does not match the grammar.
    """
    text = preprocess(data, source_name)
    result = parse_document(text)
    if result.document is None:
        raise DocumentRejected(result.diagnostics)
    return emit(result.document, config)


__all__ = [
    "Article",
    "Diagnostic",
    "DecodeError",
    "Document",
    "DocumentRejected",
    "Element",
    "EmitConfig",
    "LengthBoundError",
    "LocDate",
    "NormalizedText",
    "ParseResult",
    "ScanError",
    "ScanResult",
    "Scanner",
    "Signature",
    "SignatureKind",
    "Span",
    "Statement",
    "StopSet",
    "Token",
    "TokenKind",
    "Word",
    "compile_document",
    "derivable_strings",
    "dump_ast",
    "dump_tokens",
    "emit",
    "escape_xml",
    "generate",
    "min_derivable_length",
    "oracle_accepts",
    "parse_document",
    "parse_grammar_tokens",
    "parse_token_kinds",
    "preprocess",
    "reconstruct_words",
    "scan_document",
    "segment_trailer",
    "serialize",
    "__version__",
]
