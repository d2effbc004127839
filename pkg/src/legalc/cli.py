"""Command-line driver.

Exit codes: 0 all inputs valid, 1 at least one input rejected, 2 usage or
I/O error.  Batch runs process every input and return the worst code.
"""

from __future__ import annotations

import argparse
import contextlib
import re
import sys
from pathlib import Path
from typing import TextIO

from .codegen import EmitConfig, emit
from .normalize import DecodeError, NormalizedText, preprocess
from .parser import Diagnostic, dump_ast, parse_document
from .scanner import dump_tokens
from .tokens import KIND_DISPLAY

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2

_TAG_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legalc",
        description="Validate Arabic legal documents and translate them to XML.")
    parser.add_argument("inputs", nargs="+", metavar="input",
                        help="input file(s); use - to read one document from stdin")
    parser.add_argument("-o", "--output", metavar="PATH",
                        help="output path (single input only); use - for stdout")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--validate", action="store_true",
                      help="check the inputs and set the exit code, write no XML")
    mode.add_argument("--dump-tokens", action="store_true",
                      help="print the token stream instead of XML")
    mode.add_argument("--dump-ast", action="store_true",
                      help="print the parsed structure instead of XML")
    parser.add_argument("--indent", type=int, default=2, metavar="N",
                        help="XML indent width (default: 2)")
    parser.add_argument("--root-tag", default="document", metavar="NAME",
                        help="root element name (default: document)")
    parser.add_argument("--no-declaration", action="store_true",
                        help="omit the XML declaration line")
    return parser


def render_diagnostic(diag: Diagnostic, text: NormalizedText) -> str:
    """Human-readable rendering: location header, offending line, caret."""
    line, word = diag.span.start_line, diag.span.start_word
    out = [f"{diag.severity}: {diag.message} at {text.source_name}:{line + 1}:{word + 1}"]
    if line < text.line_count and text.words(line):
        words = text.words(line)
        line_str = text.line_text(line)
        base = words[0].start
        anchor = words[min(word, len(words) - 1)]
        start = anchor.start - base
        if diag.span.end_line == line and diag.span.end_word < len(words):
            end = words[diag.span.end_word].end - base
        else:
            end = len(line_str)
        out.append("  " + line_str)
        out.append("  " + " " * start + "^" + "~" * max(end - start - 1, 0))
    if diag.expected:
        out.append("expected: " + ", ".join(KIND_DISPLAY[k] for k in diag.expected))
    return "\n".join(out) + "\n"


def _read_input(path: str, err: TextIO) -> bytes | None:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        err.write(f"legalc: error: cannot read {path}: {exc.strerror or exc}\n")
        return None


def _process_one(path: str, args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    source = "<stdin>" if path == "-" else path
    data = _read_input(path, err)
    if data is None:
        return EXIT_USAGE
    try:
        text = preprocess(data, source)
    except DecodeError as exc:
        err.write(f"error: {source}: {exc}\n")
        return EXIT_REJECTED

    result = parse_document(text)
    if args.dump_tokens:
        out.write(dump_tokens(result.tokens) + "\n")
    if result.document is None:
        for diag in result.diagnostics:
            err.write(render_diagnostic(diag, text))
        return EXIT_REJECTED
    if args.validate or args.dump_tokens:
        return EXIT_OK
    if args.dump_ast:
        out.write(dump_ast(result.document) + "\n")
        return EXIT_OK

    config = EmitConfig(root_tag=args.root_tag, indent=args.indent,
                        xml_declaration=not args.no_declaration)
    payload = emit(result.document, config)
    if args.output:
        dest = args.output
    elif path == "-":
        dest = "-"
    else:
        dest = str(Path(path).with_suffix(".xml"))
    if dest == "-":
        out.write(payload.decode("utf-8"))
    else:
        try:
            Path(dest).write_bytes(payload)
        except OSError as exc:
            err.write(f"legalc: error: cannot write {dest}: {exc.strerror or exc}\n")
            return EXIT_USAGE
    return EXIT_OK


def run(argv: list[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_arg_parser()
    try:
        # argparse prints usage/help to the process streams on its own;
        # route that through the streams the caller handed us instead.
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.output and len(args.inputs) > 1:
        err.write("legalc: error: -o/--output requires exactly one input\n")
        return EXIT_USAGE
    if args.indent < 0:
        err.write("legalc: error: --indent must be non-negative\n")
        return EXIT_USAGE
    if not _TAG_NAME.match(args.root_tag):
        err.write(f"legalc: error: invalid root tag name: {args.root_tag!r}\n")
        return EXIT_USAGE
    code = EXIT_OK
    for path in args.inputs:
        code = max(code, _process_one(path, args, out, err))
    return code


def main() -> None:
    raise SystemExit(run())
