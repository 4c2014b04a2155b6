"""Text, JSON and LaTeX forms of every object, and parsers for the text forms."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .correlators import CorrRef, Cylinder, Kernel, Label, Unit, ONE
from .foissy import EMPTY_FOREST, Forest, RootedTree
from .linear import LinComb
from .loops import LoopGraph
from .perms import Perm
from .quantize import HSeries, summary
from .trees import LEAF, Tree


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


# -- parsers

class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            what = repr(got) if got else "end of input"
            raise ParseError(f"expected {ch!r}, found {what}", self.pos)
        self.pos += 1

    def done(self) -> None:
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)


def _tree(r: _Reader) -> Tree:
    ch = r.peek()
    if ch == "|":
        r.pos += 1
        return LEAF
    if ch == "(":
        r.pos += 1
        left = _tree(r)
        r.expect(",")
        right = _tree(r)
        r.expect(")")
        return Tree(left, right)
    what = repr(ch) if ch else "end of input"
    raise ParseError(f"expected '|' or '(', found {what}", r.pos)


def parse_tree(text: str) -> Tree:
    """``"|"`` or ``"(L,R)"``."""
    r = _Reader(text)
    t = _tree(r)
    r.done()
    return t


def parse_perm(text: str) -> Perm:
    """``"312"``, ``"(312)"``, ``"e"`` or comma separated ``"1,2,10"``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if s in ("", "e"):
        return Perm()
    try:
        images = [int(x) for x in s.split(",")] if "," in s else [int(c) for c in s]
    except ValueError:
        bad = next((i for i, c in enumerate(text) if not (c.isdigit() or c in "(), ")), 0)
        raise ParseError("not a permutation", bad) from None
    try:
        return Perm(images)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


_LOOPS = re.compile(r"\s*;\s*loops\s*=\s*\[(.*)\]\s*$")
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_graph(text: str) -> LoopGraph:
    """``"<tree>;loops=[(a,b),...]"``; a bare tree gives a graph without loops."""
    cut = text.find(";")
    if cut < 0:
        return LoopGraph(parse_tree(text))
    base = parse_tree(text[:cut])
    m = _LOOPS.match(text[cut:])
    if not m:
        raise ParseError("expected ';loops=[...]'", cut)
    body = m.group(1)
    pairs = [(int(a), int(b)) for a, b in _PAIR.findall(body)]
    if _PAIR.sub("", body).replace(",", "").strip():
        raise ParseError("malformed loop list", cut)
    try:
        return LoopGraph(base, pairs)
    except ValueError as exc:
        raise ParseError(str(exc), cut) from None


_VERTICES = ("•", "o")


def _rooted(r: _Reader) -> RootedTree:
    ch = r.peek()
    if ch not in _VERTICES:
        what = repr(ch) if ch else "end of input"
        raise ParseError(f"expected a vertex, found {what}", r.pos)
    r.pos += 1
    if r.peek() != "[":
        return RootedTree()
    r.pos += 1
    children = [_rooted(r)]
    while r.peek() == ",":
        r.pos += 1
        children.append(_rooted(r))
    r.expect("]")
    return RootedTree(children)


def parse_forest(text: str) -> Forest:
    """Space separated rooted trees such as ``"•[•,•] •"``; ``"1"`` is the empty forest."""
    if text.strip() in ("1", ""):
        return EMPTY_FOREST
    r = _Reader(text)
    trees = [_rooted(r)]
    while r.peek():
        trees.append(_rooted(r))
    return Forest(trees)


_LABEL = re.compile(r"^(p'*|p\d+|q\d*|qb\d*)$")


def parse_label(text: str) -> Label:
    s = text.strip()
    if not _LABEL.match(s):
        raise ParseError(f"bad label {s!r}", 0)
    if s.startswith("p"):
        if s[1:].isdigit():
            return Label("ext", int(s[1:]))
        return Label("root", len(s) - 1)
    if s.startswith("qb"):
        return Label("qbar", int(s[2:] or 0))
    return Label("q", int(s[1:] or 0))


_CORR = re.compile(r"^\s*W\[g=(\d+),k=(\d+)\]\((.*)\)\s*$")


def parse_corr(text: str) -> CorrRef:
    """``"W[g=0,k=3](p,p1,p2)"``."""
    m = _CORR.match(text)
    if not m:
        raise ParseError("expected W[g=..,k=..](labels)", 0)
    labels = tuple(parse_label(x) for x in m.group(3).split(","))
    if len(labels) != int(m.group(2)):
        raise ParseError("label count does not match k", 0)
    return CorrRef(int(m.group(1)), labels)


# -- text rendering

def _basis_text(b) -> str:
    if isinstance(b, tuple):
        return " (x) ".join(_basis_text(x) for x in b)
    if isinstance(b, Perm):
        return "e" if not b.images else f"({b})"
    if isinstance(b, CorrRef):
        return b.text()
    return str(b)


def _basis_latex(b) -> str:
    if isinstance(b, tuple):
        return r" \otimes ".join(_basis_latex(x) for x in b)
    if isinstance(b, Perm):
        return r"\emptyset" if not b.images else rf"({b})"
    if isinstance(b, Tree):
        return tree_latex(b)
    if isinstance(b, LoopGraph):
        pairs = ",".join(f"({x},{y})" for x, y in b.loops)
        return f"{tree_latex(b.base)}^{{{pairs}}}" if pairs else tree_latex(b.base)
    if isinstance(b, (CorrRef, Unit)):
        return b.latex()
    if isinstance(b, Forest):
        return r"\,".join(str(t) for t in b.trees) or "1"
    return str(b)


def tree_latex(t: Tree) -> str:
    if t.is_leaf:
        return "|"
    return rf"({tree_latex(t.left)} \vee {tree_latex(t.right)})"


def _coef_text(c: Fraction, first: bool, latex: bool) -> tuple[str, str]:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    if a == 1:
        mag = ""
    elif latex:
        mag = (rf"\frac{{{a.numerator}}}{{{a.denominator}}}" if a.denominator != 1 else str(a.numerator)) + " "
    else:
        mag = f"{a.numerator}" + (f"/{a.denominator}" if a.denominator != 1 else "") + "*"
    return sign, mag


def lincomb_text(a: LinComb, latex: bool = False) -> str:
    if not a:
        return "0"
    out = []
    for i, (b, c) in enumerate(a.items()):
        sign, mag = _coef_text(c, i == 0, latex)
        body = _basis_latex(b) if latex else _basis_text(b)
        if i == 0:
            out.append(f"{sign}{mag}{body}")
        else:
            out.append(f"{sign} {mag}{body}")
    return " ".join(out)


def hseries_text(s: HSeries, latex: bool = False) -> str:
    parts = []
    for g, c in enumerate(s.coeffs):
        if not c and g:
            continue
        body = lincomb_text(c, latex)
        if g == 0:
            parts.append(body)
        else:
            h = "h" if g == 1 else f"h^{g}" if not latex else f"h^{{{g}}}"
            parts.append(f"{h}*({body})" if not latex else f"{h}({body})")
    return " + ".join(parts)


def render(obj, fmt: str = "text", full: bool = False) -> str:
    """Canonical rendering in ``text``, ``json`` or ``latex``.

    A ``W^(n)`` series renders as its summary (``W3^0 + h*W1^1``) in text
    unless ``full`` is set.
    """
    if fmt == "json":
        return json.dumps(to_json(obj), sort_keys=True, ensure_ascii=False)
    latex = fmt == "latex"
    if fmt not in ("text", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, LinComb):
        return lincomb_text(obj, latex)
    if isinstance(obj, HSeries):
        if obj.order is not None and not latex and not full:
            return summary(obj)
        return hseries_text(obj, latex)
    if latex:
        return _basis_latex(obj)
    if isinstance(obj, Perm):
        return str(obj)
    return _basis_text(obj)


# -- JSON

def to_json(obj):
    if isinstance(obj, Tree):
        if obj.is_leaf:
            return {"leaf": True}
        return {"left": to_json(obj.left), "right": to_json(obj.right)}
    if isinstance(obj, Perm):
        return {"perm": list(obj.images)}
    if isinstance(obj, LoopGraph):
        return {"base": to_json(obj.base), "loops": [list(p) for p in obj.loops]}
    if isinstance(obj, RootedTree):
        return {"vertex": [to_json(c) for c in obj.children]}
    if isinstance(obj, Forest):
        return {"forest": [to_json(t) for t in obj.trees]}
    if isinstance(obj, Label):
        return obj.text()
    if isinstance(obj, Cylinder):
        return {"cylinder": [obj.x.text(), obj.y.text()]}
    if isinstance(obj, CorrRef):
        return {"W": {"g": obj.genus, "labels": [x.text() for x in obj.labels]}}
    if isinstance(obj, Kernel):
        return {"kernel": {"base": obj.base.text(), "pair": obj.pair,
                           "factors": [to_json(f) for f in obj.factors]}}
    if isinstance(obj, Unit):
        return {"unit": True}
    if isinstance(obj, tuple):
        return {"tensor": [to_json(x) for x in obj]}
    if isinstance(obj, LinComb):
        return {"terms": [{"coef": str(c), "basis": to_json(b)} for b, c in obj.items()]}
    if isinstance(obj, HSeries):
        out = {"hseries": [to_json(c) for c in obj.coeffs]}
        if obj.order is not None:
            out["order"] = obj.order
        return out
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def from_json(d):
    if isinstance(d, str):
        return parse_label(d)
    if not isinstance(d, dict):
        raise ValueError(f"unexpected JSON value {d!r}")
    if d.get("leaf") is True:
        return LEAF
    if "left" in d:
        return Tree(from_json(d["left"]), from_json(d["right"]))
    if "perm" in d:
        return Perm(d["perm"])
    if "base" in d and "loops" in d:
        return LoopGraph(from_json(d["base"]), [tuple(p) for p in d["loops"]])
    if "vertex" in d:
        return RootedTree([from_json(c) for c in d["vertex"]])
    if "forest" in d:
        return Forest([from_json(t) for t in d["forest"]])
    if "cylinder" in d:
        x, y = d["cylinder"]
        return Cylinder(parse_label(x), parse_label(y))
    if "W" in d:
        return CorrRef(d["W"]["g"], tuple(parse_label(x) for x in d["W"]["labels"]))
    if "kernel" in d:
        k = d["kernel"]
        return Kernel(parse_label(k["base"]), k["pair"], tuple(from_json(f) for f in k["factors"]))
    if d.get("unit") is True:
        return ONE
    if "tensor" in d:
        return tuple(from_json(x) for x in d["tensor"])
    if "terms" in d:
        return LinComb((from_json(t["basis"]), Fraction(t["coef"])) for t in d["terms"])
    if "hseries" in d:
        return HSeries([from_json(c) for c in d["hseries"]], order=d.get("order"))
    raise ValueError(f"unrecognized JSON object with keys {sorted(d)}")


def loads(text: str):
    return from_json(json.loads(text))
