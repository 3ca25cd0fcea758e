"""Network documents.

A document is a YAML or JSON mapping::

    field: rational            # rational | rational_function | levi_civita
    source: a0
    boundary: [a1]
    edges:
      - {u: a0, v: x, admittance: "1/2"}
      - {u: x, v: a1, element: {L: 0, R: 2, D: 0}}

``admittance`` uses the text syntax of the chosen field (``p/q``;
``(c*l^k + ...)/(d*l^m + ...)``; ``c*t^q + ... + O(t^w)``).  ``element``
gives a passive element ``l/(L l^2 + R l + D)``; over the rationals only
pure resistors are allowed.  Unknown keys are rejected.  Documents are
written back as JSON, which every YAML reader also accepts.
"""

import json
from fractions import Fraction

import yaml

from .errors import NotInFieldError, ParseError
from .fields import FIELDS, ElementSpec
from .fields.rational import parse_rational
from .network import Network

_TOP_KEYS = {"field", "source", "boundary", "edges"}
_EDGE_KEYS = {"u", "v", "admittance", "element"}
_ELEMENT_KEYS = {"L", "R", "D"}


def _fail(node, message, offset=0):
    mark = node.start_mark
    raise ParseError(message, line=mark.line + 1, column=mark.column + 1 + offset)


def _mapping(node, what, allowed, required):
    if not isinstance(node, yaml.MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for key_node, value_node in node.value:
        key = key_node.value
        if key not in allowed:
            _fail(key_node, f"unknown field {key!r} in {what}; allowed: {sorted(allowed)}")
        if key in out:
            _fail(key_node, f"duplicate field {key!r} in {what}")
        out[key] = value_node
    for key in required:
        if key not in out:
            _fail(node, f"{what} is missing required field {key!r}")
    return out


def _scalar(node, what):
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, f"{what} must be a scalar")
    return node.value


def parse_network_document(text):
    """Parse a network document; errors carry the line and column of the offending node."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ParseError(exc.problem or str(exc), line=mark.line + 1, column=mark.column + 1) from None
    if root is None:
        raise ParseError("empty network document", line=1, column=1)
    top = _mapping(root, "network document", _TOP_KEYS, ("field", "source", "boundary", "edges"))
    field_name = _scalar(top["field"], "field")
    if field_name not in FIELDS:
        _fail(top["field"], f"unknown field {field_name!r}; expected one of {sorted(FIELDS)}")
    fld = FIELDS[field_name]
    source = _scalar(top["source"], "source")
    if not isinstance(top["boundary"], yaml.SequenceNode):
        _fail(top["boundary"], "boundary must be a list of vertex names")
    boundary = [_scalar(n, "boundary vertex") for n in top["boundary"].value]
    if not isinstance(top["edges"], yaml.SequenceNode):
        _fail(top["edges"], "edges must be a list")
    edges = []
    for i, edge_node in enumerate(top["edges"].value):
        what = f"edges[{i}]"
        e = _mapping(edge_node, what, _EDGE_KEYS, ("u", "v"))
        u, v = _scalar(e["u"], f"{what}.u"), _scalar(e["v"], f"{what}.v")
        if ("admittance" in e) == ("element" in e):
            _fail(edge_node, f"{what} needs exactly one of 'admittance' or 'element'")
        if "admittance" in e:
            node = e["admittance"]
            raw = _scalar(node, f"{what}.admittance")
            try:
                weight = fld.parse(raw)
            except ParseError as exc:
                _fail(node, f"{what}.admittance: {exc.message}", offset=_quote_offset(node) + (exc.column or 1) - 1)
        else:
            node = e["element"]
            params = _mapping(node, f"{what}.element", _ELEMENT_KEYS, ())
            values = {}
            for key, value_node in params.items():
                try:
                    values[key] = parse_rational(_scalar(value_node, f"{what}.element.{key}"))
                except ParseError as exc:
                    _fail(value_node, f"{what}.element.{key}: {exc.message}")
            try:
                weight = fld.from_element(ElementSpec(**values))
            except (ValueError, NotInFieldError) as exc:
                _fail(node, f"{what}.element: {exc}")
        edges.append(((u, v), weight, edge_node))
    seen = {}
    for (u, v), _, node in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            _fail(node, f"edge {u!r}-{v!r} repeats an earlier edge; parallel edges are not allowed")
        seen[key] = node
    return Network(fld, source, frozenset(boundary), {key: w for key, w, _ in edges})


def _quote_offset(node):
    return 1 if node.style in ("'", '"') else 0


def load_network(path):
    with open(path, encoding="utf-8") as fh:
        return parse_network_document(fh.read())


def network_to_document(net):
    return {
        "field": net.field.name,
        "source": net.source,
        "boundary": sorted(net.boundary),
        "edges": [{"u": u, "v": v, "admittance": net.field.format(w)} for (u, v), w in net.edges.items()],
    }


def dump_network(net):
    return json.dumps(network_to_document(net), indent=2) + "\n"


def coerce_network(net, fld):
    """Same network with admittances moved into ``fld`` (only upward: Q -> Q(l) -> LC)."""
    if fld is net.field:
        return net
    return Network(fld, net.source, net.boundary, {k: fld.coerce(w) for k, w in net.edges.items()})


def parse_fraction_arg(text):
    return Fraction(parse_rational(text))
