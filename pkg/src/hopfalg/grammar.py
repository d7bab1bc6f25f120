"""Bit-exact text grammars for every element family, with positioned errors.

Serialization is the ``str`` form of each type; the parsers here accept
exactly the serialized output plus insignificant whitespace, so every
printed element re-parses to an equal value.
"""

from __future__ import annotations

from typing import Any

from hopfalg.core import SymWord
from hopfalg.diptdend import BTree, DTree, dleaf
from hopfalg.multibrace import BraceExpr, OperadElement
from hopfalg.trees import (
    Permutation,
    PlanarBinaryTree,
    PlanarTree,
    PlanarUnreducedTree,
    RootedTree,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}, found {self.peek()!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                              or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a name", start)
        return self.text[start:self.pos]

    def done(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError("unexpected trailing input", self.pos)


def _whole(parser):
    def run(text: str):
        sc = Scanner(text)
        value = parser(sc)
        sc.done()
        return value
    return run


# -- planar trees ------------------------------------------------------------


def _planar(sc: Scanner) -> PlanarTree:
    sc.skip_ws()
    if sc.peek() == ".":
        sc.eat()
        return PlanarTree()
    if sc.peek() == "(":
        sc.eat()
        children = []
        while True:
            sc.skip_ws()
            if sc.peek() == ")":
                sc.eat()
                break
            children.append(_planar(sc))
        if len(children) < 2:
            raise ParseError("a node needs at least two children", sc.pos)
        return PlanarTree(tuple(children))
    raise ParseError("expected '.' or '('", sc.pos)


parse_planar_tree = _whole(_planar)


def _pbt(sc: Scanner) -> PlanarBinaryTree:
    sc.skip_ws()
    if sc.peek() == ".":
        sc.eat()
        return PlanarBinaryTree()
    if sc.peek() == "(":
        sc.eat()
        left = _pbt(sc)
        right = _pbt(sc)
        sc.skip_ws()
        sc.expect(")")
        return PlanarBinaryTree((left, right))
    raise ParseError("expected '.' or '('", sc.pos)


parse_pbt = _whole(_pbt)


def _bracket_tree(sc: Scanner) -> tuple:
    sc.skip_ws()
    sc.expect("[")
    children = []
    while True:
        sc.skip_ws()
        if sc.peek() == "]":
            sc.eat()
            return tuple(children)
        children.append(_bracket_tree(sc))


def _ordered(sc: Scanner) -> PlanarUnreducedTree:
    def build(children) -> PlanarUnreducedTree:
        return PlanarUnreducedTree(tuple(build(c) for c in children))
    return build(_bracket_tree(sc))


def _rooted(sc: Scanner) -> RootedTree:
    def build(children) -> RootedTree:
        return RootedTree.make(build(c) for c in children)
    return build(_bracket_tree(sc))


parse_ordered_tree = _whole(_ordered)
parse_rooted_tree = _whole(_rooted)


# -- permutations and compositions --------------------------------------------


def _permutation(sc: Scanner) -> Permutation:
    sc.skip_ws()
    if sc.peek() == "(":
        sc.eat()
        sc.skip_ws()
        sc.expect(")")
        return Permutation(())
    start = sc.pos
    first = sc.integer()
    sc.skip_ws()
    if sc.peek() == ",":
        values = [first]
        while sc.peek() == ",":
            sc.eat()
            values.append(sc.integer())
            sc.skip_ws()
        word = tuple(values)
    else:
        digits = str(first)
        word = tuple(int(d) for d in digits)
    try:
        return Permutation(word)
    except ValueError as exc:
        raise ParseError(str(exc), start) from exc


parse_permutation = _whole(_permutation)


def _composition(sc: Scanner) -> tuple[int, ...]:
    parts = [sc.integer()]
    while True:
        sc.skip_ws()
        if sc.peek() == ".":
            sc.eat()
            parts.append(sc.integer())
        else:
            return tuple(parts)


parse_composition = _whole(_composition)


# -- forests -------------------------------------------------------------------


def _forest(sc: Scanner) -> SymWord:
    sc.skip_ws()
    sc.expect("{")
    trees = []
    while True:
        sc.skip_ws()
        if sc.peek() == "}":
            sc.eat()
            return SymWord.make(trees)
        if trees:
            sc.expect(",")
        trees.append(_rooted(sc))


parse_forest = _whole(_forest)


# -- dipterous monomials ---------------------------------------------------------


def _decorated_planar(sc: Scanner) -> DTree:
    sc.skip_ws()
    if sc.peek() == ".":
        sc.eat()
        return dleaf("")
    if sc.peek() == "(":
        sc.eat()
        children = []
        while True:
            sc.skip_ws()
            if sc.peek() == ")":
                sc.eat()
                break
            children.append(_decorated_planar(sc))
        if len(children) < 2:
            raise ParseError("a node needs at least two children", sc.pos)
        return DTree("", tuple(children))
    if sc.peek().isalnum():
        return dleaf(sc.name())
    raise ParseError("expected a tree", sc.pos)


def parse_dipt_monomial(text: str) -> tuple:
    sc = Scanner(text)
    sc.skip_ws()
    if sc.peek() == "1":
        sc.eat()
        sc.done()
        return ()
    trees = []
    while True:
        sc.skip_ws()
        if not sc.peek():
            break
        trees.append(_decorated_planar(sc))
    if not trees:
        raise ParseError("expected a monomial", sc.pos)
    return tuple(trees)


# -- dendriform trees -------------------------------------------------------------


def parse_dend_tree(text: str) -> BTree:
    sc = Scanner(text)
    shape = _pbt(sc)
    sc.skip_ws()
    symbols: list[str] = [""] * shape.internal
    if sc.peek() == "{":
        sc.eat()
        symbols = []
        while True:
            sc.skip_ws()
            if sc.peek() == "}":
                sc.eat()
                break
            if symbols:
                sc.expect(",")
            symbols.append(sc.name())
        if len(symbols) != shape.internal:
            raise ParseError(
                f"expected {shape.internal} decorations, got {len(symbols)}",
                sc.pos)
    sc.done()
    from hopfalg.diptdend import pbt_to_btree
    return pbt_to_btree(shape, symbols)


# -- brace expressions --------------------------------------------------------------


def _brace(sc: Scanner) -> Any:
    sc.skip_ws()
    if sc.peek() == "{":
        sc.eat()
        head = _brace(sc)
        sc.skip_ws()
        sc.expect(";")
        args = []
        while True:
            sc.skip_ws()
            if sc.peek() == "}":
                sc.eat()
                return BraceExpr(head, tuple(args))
            if args:
                sc.expect(",")
            args.append(_brace(sc))
    return sc.name()


parse_brace_expr = _whole(_brace)


# -- operad elements ------------------------------------------------------------------


def parse_operad_element(text: str) -> OperadElement:
    sc = Scanner(text)
    tree = _ordered(sc)
    sc.skip_ws()
    sc.expect("x")
    perm = _permutation(sc)
    sc.done()
    if tree.vertices != perm.size:
        raise ParseError(
            f"tree has {tree.vertices} vertices but the permutation "
            f"moves {perm.size} letters", 0)
    return OperadElement.of(tree, perm)


# -- quasi-symmetric keys and polynomial generators -------------------------------------


def parse_qsym_key(text: str) -> tuple[int, ...]:
    sc = Scanner(text)
    sc.skip_ws()
    sc.expect("x")
    sc.expect("[")
    parts = []
    while True:
        sc.skip_ws()
        if sc.peek() == "]":
            sc.eat()
            break
        if parts:
            sc.expect(",")
        parts.append(sc.integer())
    sc.done()
    if not all(p >= 1 for p in parts):
        raise ParseError("composition parts must be positive", 0)
    return tuple(parts)


def qsym_text(key: tuple[int, ...]) -> str:
    return "x[" + ",".join(str(p) for p in key) + "]"


def parse_fdb_monomial(text: str) -> SymWord:
    sc = Scanner(text)
    sc.skip_ws()
    if sc.peek() == "1" and sc.pos + 1 == len(sc.text.rstrip()):
        return SymWord()
    letters: list[int] = []
    while True:
        sc.skip_ws()
        sc.expect("a")
        index = sc.integer()
        power = 1
        sc.skip_ws()
        if sc.peek() == "^":
            sc.eat()
            power = sc.integer()
        letters.extend([index] * power)
        sc.skip_ws()
        if sc.peek() == "*":
            sc.eat()
            continue
        sc.done()
        return SymWord.make(letters)


def fdb_monomial_text(mono: SymWord) -> str:
    if not mono.letters:
        return "1"
    parts = []
    for index, mult in mono.counts():
        parts.append(f"a{index}" if mult == 1 else f"a{index}^{mult}")
    return "*".join(parts)
