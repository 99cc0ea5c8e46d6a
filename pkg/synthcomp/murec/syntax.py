"""Surface syntax for μ-recursive terms."""
import re
from typing import Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Set

from synthcomp.errors import ParseError
from synthcomp.murec.terms import Comp, Mu, PrimRec, Proj, Succ, Term, Zero

MACROS: Dict[str, str] = {
    # pred(x) = x - 1, cut off at 0
    "pred": "primrec(zero[0], proj[0/2])",
    # add(n, x) = x + n
    "add": "primrec(proj[0/1], comp(succ; proj[1/3]))",
    # sub(n, x) = x - n, cut off at 0
    "sub": "primrec(proj[0/1], comp(pred; proj[1/3]))",
    # if0(c, a, b) = a if c = 0 else b
    "if0": "primrec(proj[0/2], proj[3/4])",
    # tri(s) = s(s+1)/2
    "tri": "primrec(zero[0], comp(add; proj[1/2], comp(succ; proj[0/2])))",
    # pairsum(<n, m>) = n + m
    "pairsum": (
        "min(comp(sub; comp(tri; comp(succ; proj[0/2])), comp(succ; proj[1/2])))"
    ),
    # pairR(<n, m>) = m
    "pairR": "comp(sub; comp(tri; pairsum), proj[0/1])",
    # pairL(<n, m>) = n
    "pairL": "comp(sub; pairR, pairsum)",
}

KEYWORDS: FrozenSet[str] = frozenset({"zero", "succ", "proj", "comp", "primrec", "min"})

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<nat>\d+)|(?P<sym>\S))")


class _Token(NamedTuple):
    kind: str
    text: str
    position: int


def _tokenize(src: str) -> List[_Token]:
    tokens = []
    for match in _TOKEN.finditer(src):
        kind = match.lastgroup
        if kind is None:
            continue
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
    tokens.append(_Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, macros: Mapping[str, str], expanding: Set[str]):
        self.tokens = _tokenize(src)
        self.index = 0
        self.macros = macros
        self.expanding = expanding

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def fail(self, message: str, expected: FrozenSet[str]) -> ParseError:
        return ParseError(message, self.current.position, expected)

    def symbol(self, text: str) -> None:
        if self.current.text != text or self.current.kind != "sym":
            found = self.current.text or "end of input"
            raise self.fail(f"Unexpected {found!r}", frozenset({text}))
        self.index += 1

    def nat(self) -> int:
        if self.current.kind != "nat":
            raise self.fail("Expected a natural number", frozenset({"nat"}))
        value = int(self.current.text)
        self.index += 1
        return value

    def term(self) -> Term:
        token = self.current
        if token.kind != "name":
            raise self.fail("Expected a term", KEYWORDS | frozenset(self.macros))
        self.index += 1
        if token.text == "zero":
            self.symbol("[")
            k = self.nat()
            self.symbol("]")
            return Zero(k=k)
        if token.text == "succ":
            return Succ()
        if token.text == "proj":
            self.symbol("[")
            i = self.nat()
            self.symbol("/")
            k = self.nat()
            self.symbol("]")
            return Proj(i=i, k=k)
        if token.text == "comp":
            self.symbol("(")
            f = self.term()
            self.symbol(";")
            gs = []
            if self.current.text != ")":
                gs.append(self.term())
                while self.current.text == ",":
                    self.index += 1
                    gs.append(self.term())
            self.symbol(")")
            return Comp(f=f, gs=tuple(gs))
        if token.text == "primrec":
            self.symbol("(")
            f = self.term()
            self.symbol(",")
            g = self.term()
            self.symbol(")")
            return PrimRec(f=f, g=g)
        if token.text == "min":
            self.symbol("(")
            f = self.term()
            self.symbol(")")
            return Mu(f=f)
        if token.text in self.macros:
            return self.expand(token)
        self.index -= 1
        raise self.fail(
            f"Unknown name {token.text!r}", KEYWORDS | frozenset(self.macros)
        )

    def expand(self, token: _Token) -> Term:
        if token.text in self.expanding:
            raise ParseError(
                f"Macro {token.text!r} expands to itself", token.position, frozenset()
            )
        inner = _Parser(
            self.macros[token.text], self.macros, self.expanding | {token.text}
        )
        return inner.parse()

    def parse(self) -> Term:
        t = self.term()
        if self.current.kind != "end":
            raise self.fail("Trailing input", frozenset())
        return t


def parse(src: str, macros: Optional[Mapping[str, str]] = None) -> Term:
    """Parse program text.

    Args:
        src: program in the surface grammar.
        macros: macro table, `MACROS` by default.

    Returns:
        the denoted term, with macros expanded.

    Raises:
        ParseError: with the failing position and the set of expected tokens.

    """
    return _Parser(src, MACROS if macros is None else macros, set()).parse()


def expand_macro(name: str) -> Term:
    """Term a standard macro name stands for."""
    return parse(name)


def print_term(t: Term) -> str:
    """Render a term in the surface grammar; ``parse(print_term(t)) == t``."""
    if isinstance(t, Zero):
        return f"zero[{t.k}]"
    if isinstance(t, Succ):
        return "succ"
    if isinstance(t, Proj):
        return f"proj[{t.i}/{t.k}]"
    if isinstance(t, Comp):
        args = ", ".join(print_term(g) for g in t.gs)
        head = print_term(t.f)
        return f"comp({head}; {args})" if args else f"comp({head};)"
    if isinstance(t, PrimRec):
        return f"primrec({print_term(t.f)}, {print_term(t.g)})"
    return f"min({print_term(t.f)})"
