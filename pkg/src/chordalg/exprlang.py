"""Expression language for diagram sums, and canonical printers.

Grammar (whitespace insignificant):

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | diagram | '(' expr ')' | '-' factor
    rational := int ['/' int]
    diagram  := 'cd[' pair (',' pair)* ']' | 'cd[]' | fdlit
    pair     := int '-' int
    fdlit    := 'fd{legs=' int ';' vertexdef (';' vertexdef)* '}'
    vertexdef:= 'v' int '=(' anchor ',' anchor ',' anchor ')'
    anchor   := 'L' int | 'v' int '.' slot

'*' multiplies scalars, scales diagrams, and connect-sums two diagram
values.  An fd literal denotes its STU resolution when used as a value;
mixed-degree '+' is rejected at evaluation.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .diagrams import ChordDiagram, DiagramError, DiagramSum
from .feynman import FeynmanDiagram, FeynmanError, feynman_diagram, stu_resolve
from .immanent import PartitionVector
from .operators import CablingPolynomial, product


class ExprError(ValueError):
    """Parse or evaluation error, carrying a 1-based line/column position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.bare_message = message
        super().__init__("%s (line %d, column %d)" % (message, self.line, self.column))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ExprError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def startswith(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.startswith(s):
            self.error("expected %r" % s)
        self.pos += len(s)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    # grammar -----------------------------------------------------------

    def parse(self):
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return node

    def expr(self):
        node = self.term()
        while True:
            if self.startswith("+"):
                self.pos += 1
                node = ("add", node, self.term())
            elif self.startswith("-"):
                self.pos += 1
                node = ("sub", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while self.startswith("*"):
            self.pos += 1
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return ("neg", self.factor())
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if self.startswith("cd["):
            return self.cd_literal()
        if self.startswith("fd{"):
            return self.fd_literal()
        if ch.isdigit():
            num = self.integer()
            if self.startswith("/"):
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
                return ("num", Fraction(num, den))
            return ("num", Fraction(num))
        self.error("expected a number, diagram literal, '(' or '-'")

    def cd_literal(self):
        start = self.pos
        self.expect("cd[")
        pairs = []
        if self.startswith("]"):
            self.pos += 1
            return ("cd", ())
        while True:
            a = self.integer()
            self.expect("-")
            b = self.integer()
            pairs.append((a, b))
            if self.startswith(","):
                self.pos += 1
                continue
            self.expect("]")
            break
        seen: set[int] = set()
        for a, b in pairs:
            if a == b:
                self.error("endpoint paired with itself: %d" % a, start)
            for e in (a, b):
                if e in seen:
                    self.error("duplicate endpoint: %d" % e, start)
                seen.add(e)
        n = 2 * len(pairs)
        if seen != set(range(n)):
            self.error("endpoints must be exactly 0..%d" % (n - 1), start)
        return ("cd", tuple(pairs))

    def fd_literal(self):
        start = self.pos
        self.expect("fd{")
        self.expect("legs")
        self.expect("=")
        legs = self.integer()
        slots: dict[int, tuple] = {}
        while self.startswith(";"):
            self.pos += 1
            self.expect("v")
            vi = self.integer()
            if vi in slots:
                self.error("vertex v%d defined twice" % vi, start)
            self.expect("=(")
            anchors = []
            for k in range(3):
                anchors.append(self.anchor())
                if k < 2:
                    self.expect(",")
            self.expect(")")
            slots[vi] = tuple(anchors)
        self.expect("}")
        if not slots:
            self.error("fd literal needs at least one vertex", start)
        if sorted(slots) != list(range(len(slots))):
            self.error("vertex indices must be v0..v%d" % (len(slots) - 1), start)
        try:
            fd = feynman_diagram(legs, [slots[i] for i in range(len(slots))])
        except FeynmanError as exc:
            self.error(str(exc), start)
        return ("fd", fd)

    def anchor(self):
        if self.startswith("L"):
            self.pos += 1
            return ("L", self.integer())
        if self.startswith("v"):
            self.pos += 1
            vi = self.integer()
            self.expect(".")
            slot = self.integer()
            if slot not in (0, 1, 2):
                self.error("slot must be 0, 1 or 2")
            return ("V", vi, slot)
        self.error("expected an anchor 'L<k>' or 'v<i>.<slot>'")


def parse_expr(text: str):
    """Parse to an AST; raises :class:`ExprError` with line/column info."""
    return _Parser(text).parse()


def eval_expr(node, text: str = ""):
    """Evaluate an AST to a Fraction or a DiagramSum."""
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "cd":
        try:
            d = ChordDiagram(list(node[1])) if node[1] else ChordDiagram(())
        except DiagramError as exc:
            raise ExprError(str(exc), text, 0)
        return DiagramSum.single(d)
    if tag == "fd":
        return stu_resolve(node[1])
    if tag == "neg":
        v = eval_expr(node[1], text)
        return -v if isinstance(v, DiagramSum) else -v
    if tag in ("add", "sub"):
        a = eval_expr(node[1], text)
        b = eval_expr(node[2], text)
        if isinstance(a, Fraction) != isinstance(b, Fraction):
            raise ExprError("cannot add a scalar and a diagram sum", text, 0)
        if isinstance(a, DiagramSum) and isinstance(b, DiagramSum):
            if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
                raise ExprError("degree mismatch", text, 0)
        return a + b if tag == "add" else a - b
    if tag == "mul":
        a = eval_expr(node[1], text)
        b = eval_expr(node[2], text)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b.scaled(a)
        if isinstance(b, Fraction):
            return a.scaled(b)
        return product(a, b)
    raise ExprError("bad AST node %r" % (tag,), text, 0)


def evaluate_expression(text: str):
    return eval_expr(parse_expr(text), text)


def fd_of_expression(text: str) -> FeynmanDiagram:
    """Parse text that must be a single fd literal."""
    node = parse_expr(text)
    if node[0] != "fd":
        raise ExprError("expected a single fd literal", text, 0)
    return node[1]


# --- printing ---------------------------------------------------------------

def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (
        x.numerator, x.denominator)


def format_diagram(d: ChordDiagram) -> str:
    return "cd[%s]" % ",".join("%d-%d" % p for p in d.pairs())


def format_sum(v: DiagramSum) -> str:
    """Deterministic printing, terms in descending encoding order.

    ``parse_expr(format_sum(v))`` evaluates back to v.
    """
    items = sorted(v.items(), key=lambda kv: kv[0].pairs(), reverse=True)
    if not items:
        return "0"
    chunks = []
    for i, (d, c) in enumerate(items):
        mag = abs(c)
        body = format_diagram(d) if mag == 1 else "%s*%s" % (
            format_fraction(mag), format_diagram(d))
        if i == 0:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append((" + " if c > 0 else " - ") + body)
    return "".join(chunks)


def format_partition(p) -> str:
    return "[%s]" % ",".join(map(str, p))


def format_partition_vector(pv: PartitionVector) -> str:
    items = pv.sorted_items()
    if not items:
        return "0"
    chunks = []
    for i, (p, c) in enumerate(items):
        mag = abs(c)
        body = format_partition(p) if mag == 1 else "%s%s" % (
            format_fraction(mag), format_partition(p))
        if i == 0:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append((" + " if c > 0 else " - ") + body)
    return "".join(chunks)


def format_polynomial(cp: CablingPolynomial) -> str:
    chunks = []
    for k, c in enumerate(cp.coefficients):
        if k == 0:
            chunks.append(format_fraction(c))
        else:
            mono = "n" if k == 1 else "n^%d" % k
            mag = abs(c)
            body = "%s*%s" % (format_fraction(mag), mono)
            chunks.append((" + " if c >= 0 else " - ") + body)
    return "".join(chunks)


def sum_to_json(v: DiagramSum) -> str:
    terms = {format_diagram(d): format_fraction(c)
             for d, c in sorted(v.items(), key=lambda kv: kv[0].pairs(),
                                reverse=True)}
    return json.dumps({"terms": terms})


def partition_vector_to_json(pv: PartitionVector) -> str:
    obj = {}
    for p, c in pv.sorted_items():
        obj[format_partition(p)] = (int(c) if c.denominator == 1
                                    else format_fraction(c))
    return json.dumps(obj)


def polynomial_to_json(cp: CablingPolynomial) -> str:
    return json.dumps({"coeffs": [format_fraction(c) for c in cp.coefficients]})


def parse_partition(text: str) -> tuple[int, ...]:
    """Accepts '[2,2]' or '2,2'."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s:
        raise ExprError("empty partition", text, 0)
    try:
        parts = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise ExprError("bad partition %r" % text, text, 0)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        parts = tuple(sorted(parts, reverse=True))
    return parts
