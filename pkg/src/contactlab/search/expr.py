"""A small property language over region variables, evaluated by exhaustion.

Grammar (lowest precedence first)::

    formula := disj [("->" | "<->") formula]
    disj    := conj {("or" | "|") conj}
    conj    := neg {("and" | "&") neg}
    neg     := ("not" | "!" | "~") neg | atom
    atom    := "(" formula ")" | AXIOM | "true" | "false" | term REL term
    REL     := "C" | "<<" | "≪" | "<=" | "≤" | "<" | "=" | "!=" | "≠" | "o"
    term    := prod {"+" prod}
    prod    := unary {("·" | "*") unary}
    unary   := "-" unary | "0" | "1" | VAR | "(" term ")"

Variables are lowercase identifiers and are read as universally
quantified over all regions.  ``AXIOM`` is one of C0-C6, IA, GIA, EXT,
DISC and stands for the whole axiom holding in the model.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

from ..algebra import Region
from ..checks import Axiom, check_axiom
from ..contact import ContactStructure
from ..errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(<->|->|<<|<=|!=|[≪≤≠·*+\-()=<!~&|])|([A-Za-z_][A-Za-z0-9_]*)|([01])(?![0-9]))"
)
AXIOM_NAMES = {a.value for a in Axiom}
KEYWORDS = {"and", "or", "not", "true", "false", "o"}
RELATIONS = {"C", "<<", "≪", "<=", "≤", "<", "=", "!=", "≠", "o"}


@dataclass(frozen=True)
class Token:
    text: str
    kind: str  # "op", "name" or "const"
    column: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line=1, column=col)
        start = m.start(m.lastindex)
        kind = {1: "op", 2: "name", 3: "const"}[m.lastindex]
        out.append(Token(m.group(m.lastindex), kind, start + 1))
        pos = m.end()
    return out


# -- syntax tree ---------------------------------------------------------------
@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Unop:
    op: str
    arg: object


@dataclass(frozen=True)
class Binop:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class AxiomRef:
    axiom: Axiom


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def at(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and t.text in texts

    def take(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", line=1, column=len(self.text) + 1)
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        t = self.peek()
        if t is None or t.text != text:
            col = t.column if t else len(self.text) + 1
            raise ParseError(f"expected {text!r}", line=1, column=col)
        self.i += 1

    def error(self, msg: str):
        t = self.peek()
        raise ParseError(msg, line=1, column=t.column if t else len(self.text) + 1)

    # formulas
    def formula(self):
        left = self.disj()
        if self.at("->", "<->"):
            op = self.take().text
            return Binop(op, left, self.formula())
        return left

    def disj(self):
        node = self.conj()
        while self.at("or", "|"):
            self.take()
            node = Binop("or", node, self.conj())
        return node

    def conj(self):
        node = self.neg()
        while self.at("and", "&"):
            self.take()
            node = Binop("and", node, self.neg())
        return node

    def neg(self):
        if self.at("not", "!", "~"):
            self.take()
            return Unop("not", self.neg())
        return self.atom()

    def atom(self):
        t = self.peek()
        if t is None:
            self.error("unexpected end of expression")
        if t.text in AXIOM_NAMES:
            self.take()
            return AxiomRef(Axiom(t.text))
        if t.text in ("true", "false"):
            self.take()
            return Const(1 if t.text == "true" else 0)
        if t.text == "(":
            # either a parenthesized formula or a term starting with "("
            save = self.i
            try:
                return self.relation()
            except ParseError:
                self.i = save
            self.take()
            node = self.formula()
            self.expect(")")
            return node
        return self.relation()

    def relation(self):
        left = self.term()
        t = self.peek()
        if t is None or t.text not in RELATIONS:
            self.error("expected a relation (C, <<, <=, <, =, !=, o)")
        self.take()
        return Binop(t.text, left, self.term())

    # terms
    def term(self):
        node = self.prod()
        while self.at("+"):
            self.take()
            node = Binop("+", node, self.prod())
        return node

    def prod(self):
        node = self.unary()
        while self.at("·", "*"):
            self.take()
            node = Binop("·", node, self.unary())
        return node

    def unary(self):
        t = self.take()
        if t.text == "-":
            return Unop("-", self.unary())
        if t.kind == "const":
            return Const(int(t.text))
        if t.text == "(":
            node = self.term()
            self.expect(")")
            return node
        if t.kind == "name" and t.text not in KEYWORDS and t.text not in AXIOM_NAMES and t.text[0].islower():
            return Var(t.text)
        raise ParseError(f"expected a region term, got {t.text!r}", line=1, column=t.column)


@dataclass(frozen=True)
class Property:
    """A parsed property with its free variables in order of first appearance."""

    text: str
    tree: object
    variables: tuple[str, ...]

    def __str__(self):
        return self.text


def parse_property(text: str) -> Property:
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty expression", line=1, column=1)
    tree = p.formula()
    if p.peek() is not None:
        p.error(f"unexpected {p.peek().text!r}")
    names: list[str] = []

    def walk(node):
        if isinstance(node, Var) and node.name not in names:
            names.append(node.name)
        for child in (getattr(node, "arg", None), getattr(node, "left", None), getattr(node, "right", None)):
            if child is not None:
                walk(child)

    walk(tree)
    return Property(text, tree, tuple(names))


# -- compilation ---------------------------------------------------------------
def _compile_term(node, cs: ContactStructure, slot: dict[str, int]) -> Callable[[tuple], int]:
    top = cs.algebra.top_code
    if isinstance(node, Var):
        i = slot[node.name]
        return lambda env: env[i]
    if isinstance(node, Const):
        v = top if node.value else 0
        return lambda env: v
    if isinstance(node, Unop):
        f = _compile_term(node.arg, cs, slot)
        return lambda env: top & ~f(env)
    f, g = _compile_term(node.left, cs, slot), _compile_term(node.right, cs, slot)
    if node.op == "+":
        return lambda env: f(env) | g(env)
    return lambda env: f(env) & g(env)


def _compile(node, cs: ContactStructure, slot: dict[str, int], axioms: dict) -> Callable[[tuple], bool]:
    if isinstance(node, AxiomRef):
        if node.axiom not in axioms:
            axioms[node.axiom] = check_axiom(cs, node.axiom)
        v = axioms[node.axiom].holds
        return lambda env: v
    if isinstance(node, Const):
        v = bool(node.value)
        return lambda env: v
    if isinstance(node, Unop):
        f = _compile(node.arg, cs, slot, axioms)
        return lambda env: not f(env)
    op = node.op
    if op in ("and", "or", "->", "<->"):
        f, g = _compile(node.left, cs, slot, axioms), _compile(node.right, cs, slot, axioms)
        return {
            "and": lambda env: f(env) and g(env),
            "or": lambda env: f(env) or g(env),
            "->": lambda env: not f(env) or g(env),
            "<->": lambda env: f(env) == g(env),
        }[op]
    f, g = _compile_term(node.left, cs, slot), _compile_term(node.right, cs, slot)
    if op == "C":
        return lambda env: cs.c(f(env), g(env))
    if op in ("<<", "≪"):
        return lambda env: cs.ll_code(f(env), g(env))
    if op in ("<=", "≤"):
        return lambda env: f(env) & ~g(env) == 0
    if op == "<":
        return lambda env: f(env) != g(env) and f(env) & ~g(env) == 0
    if op == "=":
        return lambda env: f(env) == g(env)
    if op in ("!=", "≠"):
        return lambda env: f(env) != g(env)
    if op == "o":
        return lambda env: f(env) & g(env) != 0
    raise AssertionError(op)  # pragma: no cover


@dataclass(frozen=True)
class Evaluation:
    holds: bool
    assignment: Optional[dict] = None
    axiom_witness: Optional[tuple] = None


def evaluate(prop: Property, cs: ContactStructure) -> Evaluation:
    """Decide ``prop`` on ``cs``; on failure return the first falsifying assignment.

    When the assignment alone does not explain the failure because an axiom
    macro is false under it, that axiom's own witness is attached too.
    """
    slot = {name: i for i, name in enumerate(prop.variables)}
    axioms: dict = {}
    f = _compile(prop.tree, cs, slot, axioms)
    for env in product(range(cs.algebra.size), repeat=len(prop.variables)):
        if not f(env):
            assignment = {name: Region(cs.algebra, env[i]) for name, i in slot.items()}
            failed = [rep.witness for rep in axioms.values() if not rep.holds]
            return Evaluation(False, assignment, failed[0] if failed and not prop.variables else None)
    return Evaluation(True)


def evaluate_at(prop: Property, cs: ContactStructure, assignment: dict) -> bool:
    """Re-evaluate one stored assignment (used to re-validate countermodels)."""
    slot = {name: i for i, name in enumerate(prop.variables)}
    env = tuple(assignment[name].code for name in prop.variables)
    return _compile(prop.tree, cs, slot, {})(env)
