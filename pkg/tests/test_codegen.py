"""XML generation: escaping, tree shape, serialization, round-trip."""

import random
import xml.etree.ElementTree as ET

from legalc import (
    Article,
    Document,
    Element,
    EmitConfig,
    LocDate,
    Signature,
    SignatureKind,
    Statement,
    emit,
    escape_xml,
    generate,
    serialize,
)

SAMPLE = Document(
    statement=Statement("مرسوم", "٢٥"),
    title="عنوان",
    issuer="الوزير",
    references=("الدستور",),
    justifications=(),
    articles=(Article("١", "فرعي", "نص"), Article("أولى", None, "نص آخر")),
    loc_date=LocDate("بيروت", "٢٠٢٠", True),
    signatures=(Signature(SignatureKind.TYPE1, "فلان", "منصب"),
                Signature(SignatureKind.TYPE2, "علان", "موقع")),
)


def test_escape_covers_all_five_markup_characters():
    assert escape_xml("&<>\"'") == "&amp;&lt;&gt;&quot;&apos;"
    assert escape_xml("a&amp;b") == "a&amp;amp;b"  # ampersand escapes first


def test_escaped_text_survives_reparse_byte_exactly():
    rng = random.Random(5)
    pool = "&<>\"'ابج xyz&lt;"
    for _ in range(200):
        original = "".join(rng.choice(pool) for _ in range(rng.randint(1, 40)))
        xml = f"<t>{escape_xml(original)}</t>"
        assert ET.fromstring(xml).text == original


def test_tree_shape_and_tag_order():
    root = generate(SAMPLE)
    assert [c.tag for c in root.children] == [
        "type", "contentNumber", "title", "issuer", "references",
        "justifications", "articles", "issueLocation", "issueDate", "signatures",
    ]


def test_numbers_westernized_only_where_numeric():
    root = generate(SAMPLE)
    by_tag = {c.tag: c for c in root.children}
    assert by_tag["contentNumber"].text == "25"
    articles = by_tag["articles"].children
    assert articles[0].children[0].text == "1"
    assert articles[1].children[0].text == "أولى"
    assert by_tag["issueDate"].text == "٢٠٢٠"


def test_signature_child_order_depends_on_kind():
    root = generate(SAMPLE)
    sigs = [c for c in root.children if c.tag == "signatures"][0].children
    assert [c.tag for c in sigs[0].children] == ["name", "position"]
    assert [c.tag for c in sigs[1].children] == ["position", "name"]


def test_empty_collections_self_close():
    out = serialize(generate(SAMPLE))
    assert "<justifications/>" in out
    assert "<articleTitle/>" in out
    assert "<articleTitle>فرعي</articleTitle>" in out


def test_serialize_layout():
    out = serialize(Element("r", children=[Element("a", "x"), Element("b")]))
    assert out == ('<?xml version="1.0" encoding="UTF-8"?>\n'
                   "<r>\n  <a>x</a>\n  <b/>\n</r>\n")


def test_serialize_options():
    el = Element("r", "x")
    assert serialize(el, EmitConfig(xml_declaration=False)) == "<r>x</r>\n"
    nested = Element("r", children=[Element("a", "x")])
    out = serialize(nested, EmitConfig(indent=4, xml_declaration=False))
    assert out == "<r>\n    <a>x</a>\n</r>\n"


def test_emit_is_utf8_bytes_with_trailing_newline():
    payload = emit(SAMPLE)
    assert isinstance(payload, bytes)
    assert payload.endswith(b"</document>\n")
    assert payload.decode("utf-8").startswith('<?xml version="1.0" encoding="UTF-8"?>')


def test_custom_root_tag():
    payload = emit(SAMPLE, EmitConfig(root_tag="decree"))
    root = ET.fromstring(payload)
    assert root.tag == "decree"


def _structure(node):
    children = list(node)
    if children:
        return (node.tag, [_structure(c) for c in children])
    return (node.tag, node.text or "")


def _our_structure(el: Element):
    if el.children:
        return (el.tag, [_our_structure(c) for c in el.children])
    return (el.tag, el.text)


def test_round_trip_structure_matches_element_tree():
    root = generate(SAMPLE)
    reparsed = ET.fromstring(serialize(root).encode("utf-8"))
    assert _structure(reparsed) == _our_structure(root)


def test_corpus_outputs_reparse_and_match_goldens(corpus_paths, golden_dir):
    from legalc import compile_document
    for path in corpus_paths:
        payload = compile_document(path.read_bytes(), path.name)
        ET.fromstring(payload)  # well-formed
        golden = (golden_dir / (path.stem + ".xml")).read_bytes()
        assert payload == golden, path.name
