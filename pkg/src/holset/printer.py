"""Concrete syntax: ASCII prefix s-expressions.

Terms       x                      variable (bare token)
            (f t1 .. tn)           function application, parens even when n=0
Formulas    (= t u) (in t u)       built-in relations
            (P t1 .. tn)           other predicates
            (not F) (and F G) (or F G) (imp F G) (iff F G)
            (all x F) (ex x F)     quantifiers
            (exone x F)            unique existence, accepted on input only
                                   (it expands, so it never appears on output)
Sequents    (seq (F ..) (G ..))    both sides sorted lexicographically when
                                   printed, so output is deterministic

Bare tokens that collide with a declared function or predicate name are
rejected on input; the printer never produces them.
"""

from __future__ import annotations

from typing import List, Tuple, Union

from .errors import ParseError
from .fol import (
    And,
    App,
    Exists,
    Forall,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Pred,
    Sequent,
    Signature,
    Term,
    Var,
)

Sexp = Union[str, list]

_CONNECTIVES = {"not", "and", "or", "imp", "iff", "all", "ex", "exone", "seq"}


def tokenize(text: str) -> List[str]:
    out: List[str] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            out.append(c)
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            out.append(text[i:j])
            i = j
    return out


def _read(tokens: List[str], pos: int) -> Tuple[Sexp, int]:
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items: list = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ParseError("unbalanced parentheses")
            if tokens[pos] == ")":
                return items, pos + 1
            item, pos = _read(tokens, pos)
            items.append(item)
    if tok == ")":
        raise ParseError("unexpected ')'")
    return tok, pos + 1


def read_sexp(text: str) -> Sexp:
    tokens = tokenize(text)
    sexp, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing input after s-expression: {' '.join(tokens[pos:])!r}")
    return sexp


def read_sexps(text: str) -> List[Sexp]:
    tokens = tokenize(text)
    out: List[Sexp] = []
    pos = 0
    while pos < len(tokens):
        sexp, pos = _read(tokens, pos)
        out.append(sexp)
    return out


# ---------------------------------------------------------------------------
# Terms


def term_of_sexp(sig: Signature, s: Sexp) -> Term:
    if isinstance(s, str):
        if sig.lookup_function(s) is not None or sig.lookup_predicate(s) is not None:
            raise ParseError(f"bare token {s!r} collides with a declared symbol")
        return Var(sig.variable(s))
    if not s or not isinstance(s[0], str):
        raise ParseError(f"malformed term: {s!r}")
    fun = sig.lookup_function(s[0])
    if fun is None:
        raise ParseError(f"unknown function symbol: {s[0]!r}")
    args = tuple(term_of_sexp(sig, a) for a in s[1:])
    return sig.mkapp(fun, *args)


def parse_term(sig: Signature, text: str) -> Term:
    return term_of_sexp(sig, read_sexp(text))


def print_term(sig: Signature, t: Term) -> str:
    if isinstance(t, Var):
        return sig.name_of(t.sym)
    inner = " ".join([sig.name_of(t.sym)] + [print_term(sig, a) for a in t.args])
    return f"({inner})"


# ---------------------------------------------------------------------------
# Formulas


def formula_of_sexp(sig: Signature, s: Sexp) -> Formula:
    if isinstance(s, str) or not s:
        raise ParseError(f"malformed formula: {s!r}")
    head = s[0]
    if not isinstance(head, str):
        raise ParseError(f"malformed formula head: {head!r}")
    if head == "not":
        if len(s) != 2:
            raise ParseError("not takes one formula")
        return Not(formula_of_sexp(sig, s[1]))
    if head in ("and", "or", "imp", "iff"):
        if len(s) != 3:
            raise ParseError(f"{head} takes two formulas")
        cls = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[head]
        return cls(formula_of_sexp(sig, s[1]), formula_of_sexp(sig, s[2]))
    if head in ("all", "ex", "exone"):
        if len(s) != 3 or not isinstance(s[1], str):
            raise ParseError(f"{head} takes a variable and a formula")
        if sig.lookup_function(s[1]) is not None or sig.lookup_predicate(s[1]) is not None:
            raise ParseError(f"binder name {s[1]!r} collides with a declared symbol")
        v = sig.variable(s[1])
        body = formula_of_sexp(sig, s[2])
        if head == "all":
            return Forall(v, body)
        if head == "ex":
            return Exists(v, body)
        return sig.exists_one(v, body)
    p = sig.lookup_predicate(head)
    if p is None:
        raise ParseError(f"unknown predicate symbol: {head!r}")
    args = tuple(term_of_sexp(sig, a) for a in s[1:])
    return sig.pred(p, *args)


def parse_formula(sig: Signature, text: str) -> Formula:
    return formula_of_sexp(sig, read_sexp(text))


def print_formula(sig: Signature, f: Formula) -> str:
    if isinstance(f, Pred):
        inner = " ".join([sig.name_of(f.sym)] + [print_term(sig, a) for a in f.args])
        return f"({inner})"
    if isinstance(f, Not):
        return f"(not {print_formula(sig, f.body)})"
    if isinstance(f, And):
        return f"(and {print_formula(sig, f.left)} {print_formula(sig, f.right)})"
    if isinstance(f, Or):
        return f"(or {print_formula(sig, f.left)} {print_formula(sig, f.right)})"
    if isinstance(f, Imp):
        return f"(imp {print_formula(sig, f.left)} {print_formula(sig, f.right)})"
    if isinstance(f, Iff):
        return f"(iff {print_formula(sig, f.left)} {print_formula(sig, f.right)})"
    if isinstance(f, Forall):
        return f"(all {sig.name_of(f.var)} {print_formula(sig, f.body)})"
    if isinstance(f, Exists):
        return f"(ex {sig.name_of(f.var)} {print_formula(sig, f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Sequents


def sequent_of_sexp(sig: Signature, s: Sexp) -> Sequent:
    if isinstance(s, str) or len(s) != 3 or s[0] != "seq":
        raise ParseError(f"malformed sequent: {s!r}")
    if isinstance(s[1], str) or isinstance(s[2], str):
        raise ParseError("sequent sides must be lists of formulas")
    left = [formula_of_sexp(sig, f) for f in s[1]]
    right = [formula_of_sexp(sig, f) for f in s[2]]
    return Sequent(left, right)


def parse_sequent(sig: Signature, text: str) -> Sequent:
    return sequent_of_sexp(sig, read_sexp(text))


def print_sequent(sig: Signature, sq: Sequent) -> str:
    left = " ".join(sorted(print_formula(sig, f) for f in sq.left))
    right = " ".join(sorted(print_formula(sig, f) for f in sq.right))
    return f"(seq ({left}) ({right}))"
