"""First-order syntax: signature, terms, formulas, sequents, substitution.

Design notes that the rest of the package relies on:

* Symbols are interned integers in a `Signature` (name, kind, arity). Variables,
  function symbols and predicate symbols live in separate namespaces; function
  and predicate names must not collide with each other (the printer would become
  ambiguous) nor with the reserved connective heads.

* Terms are immutable trees with precomputed structural hash and free-variable
  set. Formulas additionally carry an alpha-invariant hash: `__eq__` between
  formulas is equality up to renaming of quantifier-bound variables, so sequent
  sets and rule side-condition checks are stable under the bound-variable
  renaming that capture-avoiding substitution performs.

* `exists_one` is notation: it expands at construction into
  `exists x. body and (forall y. body[x:=y] -> y = x)` and is therefore
  idempotent by construction (the expansion contains no `exists_one` nodes).

Uniqueness of fresh names is guaranteed per signature via a monotone counter
suffix on the base name.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import ArityError, DuplicateSymbol, ParseError

VAR = "var"
FUN = "fun"
PRED = "pred"

# Reserved tokens: connective heads and sequent markers used by the printer.
RESERVED = {"not", "and", "or", "imp", "iff", "all", "ex", "seq", "exone"}


def _check_token(name: str) -> None:
    if not name or any(c.isspace() for c in name) or any(c in "()[]" for c in name):
        raise ParseError(f"invalid symbol name: {name!r}")


class Signature:
    """Interned symbol table with atomic id allocation.

    Thread-safety contract: append-only; concurrent interning of the same name
    is idempotent. (CPython dict/list operations used here are atomic enough
    for the single-writer usage in this package; the CLI is single-threaded.)
    """

    def __init__(self) -> None:
        self._names: list[str] = []
        self._kinds: list[str] = []
        self._arities: list[int] = []
        self._vars: Dict[str, int] = {}
        self._funs: Dict[str, int] = {}
        self._preds: Dict[str, int] = {}
        self._fresh: Dict[str, int] = {}
        # Built-in relations; everything else is interned by clients.
        self.EQ = self.predicate("=", 2)
        self.IN = self.predicate("in", 2)

    # -- interning ---------------------------------------------------------

    def _alloc(self, name: str, kind: str, arity: int) -> int:
        sym = len(self._names)
        self._names.append(name)
        self._kinds.append(kind)
        self._arities.append(arity)
        return sym

    def variable(self, name: str) -> int:
        _check_token(name)
        got = self._vars.get(name)
        if got is not None:
            return got
        sym = self._alloc(name, VAR, 0)
        self._vars[name] = sym
        return sym

    def function(self, name: str, arity: int) -> int:
        _check_token(name)
        if name in RESERVED:
            raise ParseError(f"reserved token cannot name a function: {name!r}")
        got = self._funs.get(name)
        if got is not None:
            if self._arities[got] != arity:
                raise DuplicateSymbol(
                    f"function {name!r} exists with arity {self._arities[got]}, not {arity}"
                )
            return got
        if name in self._preds:
            raise DuplicateSymbol(f"name {name!r} already names a predicate")
        sym = self._alloc(name, FUN, arity)
        self._funs[name] = sym
        return sym

    def fresh_function(self, name: str, arity: int) -> int:
        """Like function() but refuses to return an existing symbol."""
        if name in self._funs or name in self._preds:
            raise DuplicateSymbol(f"symbol {name!r} already exists")
        return self.function(name, arity)

    def predicate(self, name: str, arity: int) -> int:
        _check_token(name)
        if name in RESERVED:
            raise ParseError(f"reserved token cannot name a predicate: {name!r}")
        got = self._preds.get(name)
        if got is not None:
            if self._arities[got] != arity:
                raise DuplicateSymbol(
                    f"predicate {name!r} exists with arity {self._arities[got]}, not {arity}"
                )
            return got
        if name in self._funs:
            raise DuplicateSymbol(f"name {name!r} already names a function")
        sym = self._alloc(name, PRED, arity)
        self._preds[name] = sym
        return sym

    def fresh_var(self, base: str) -> int:
        """A variable with a name not used anywhere in the signature yet."""
        base = base.split("~")[0] or "v"
        n = self._fresh.get(base, 0)
        while True:
            n += 1
            name = f"{base}~{n}"
            if name not in self._vars and name not in self._funs and name not in self._preds:
                self._fresh[base] = n
                return self.variable(name)

    # -- queries -----------------------------------------------------------

    def name_of(self, sym: int) -> str:
        return self._names[sym]

    def kind_of(self, sym: int) -> str:
        return self._kinds[sym]

    def arity_of(self, sym: int) -> int:
        return self._arities[sym]

    def lookup_function(self, name: str) -> Optional[int]:
        return self._funs.get(name)

    def lookup_predicate(self, name: str) -> Optional[int]:
        return self._preds.get(name)

    def lookup_variable(self, name: str) -> Optional[int]:
        return self._vars.get(name)

    def __len__(self) -> int:
        return len(self._names)

    # -- node factories ------------------------------------------------------

    def mkvar(self, sym_or_name) -> "Var":
        if isinstance(sym_or_name, str):
            return Var(self.variable(sym_or_name))
        if self._kinds[sym_or_name] != VAR:
            raise ArityError(f"symbol {self.name_of(sym_or_name)!r} is not a variable")
        return Var(sym_or_name)

    def mkapp(self, fun: int, *args: "Term") -> "App":
        if self._kinds[fun] != FUN:
            raise ArityError(f"symbol {self.name_of(fun)!r} is not a function")
        if self._arities[fun] != len(args):
            raise ArityError(
                f"function {self.name_of(fun)!r} expects {self._arities[fun]} args, got {len(args)}"
            )
        return App(fun, tuple(args))

    def pred(self, p: int, *args: "Term") -> "Pred":
        if self._kinds[p] != PRED:
            raise ArityError(f"symbol {self.name_of(p)!r} is not a predicate")
        if self._arities[p] != len(args):
            raise ArityError(
                f"predicate {self.name_of(p)!r} expects {self._arities[p]} args, got {len(args)}"
            )
        return Pred(p, tuple(args))

    def eq(self, t: "Term", u: "Term") -> "Pred":
        return Pred(self.EQ, (t, u))

    def member(self, t: "Term", u: "Term") -> "Pred":
        return Pred(self.IN, (t, u))

    def exists_one(self, v: int, body: "Formula") -> "Formula":
        """The unique-existence notation, expanded at construction."""
        y = self.fresh_var(self.name_of(v))
        renamed = subst_formula(self, body, {v: Var(y)})
        return Exists(v, And(body, Forall(y, Imp(renamed, self.eq(Var(y), Var(v))))))


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ("_hash", "free")

    def __hash__(self) -> int:
        return self._hash


class Var(Term):
    __slots__ = ("sym",)

    def __init__(self, sym: int) -> None:
        self.sym = sym
        self._hash = hash(("v", sym))
        self.free = frozenset((sym,))

    __hash__ = Term.__hash__

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, Var) and other.sym == self.sym

    def __repr__(self) -> str:
        return f"Var({self.sym})"


class App(Term):
    __slots__ = ("sym", "args")

    def __init__(self, sym: int, args: Tuple[Term, ...]) -> None:
        self.sym = sym
        self.args = args
        self._hash = hash(("a", sym, args))
        fv: frozenset = frozenset()
        for a in args:
            fv |= a.free
        self.free = fv

    __hash__ = Term.__hash__

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and other._hash == self._hash
            and other.sym == self.sym
            and other.args == self.args
        )

    def __repr__(self) -> str:
        return f"App({self.sym},{self.args!r})"


# ---------------------------------------------------------------------------
# Formulas


def _term_akey(t: Term, env: Dict[int, int], depth: int):
    """Alpha-invariant structural key for a term under a binder environment."""
    if isinstance(t, Var):
        lvl = env.get(t.sym)
        return ("b", depth - lvl) if lvl is not None else ("f", t.sym)
    return ("a", t.sym) + tuple(_term_akey(a, env, depth) for a in t.args)


class Formula:
    __slots__ = ("_hash", "free")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula) or other._hash != self._hash:
            return False
        return alpha_equal(self, other)

    def _akey(self, env: Dict[int, int], depth: int):
        raise NotImplementedError


class Pred(Formula):
    __slots__ = ("sym", "args")

    def __init__(self, sym: int, args: Tuple[Term, ...]) -> None:
        self.sym = sym
        self.args = args
        fv: frozenset = frozenset()
        for a in args:
            fv |= a.free
        self.free = fv
        self._hash = hash(self._akey({}, 0))

    def _akey(self, env, depth):
        return ("p", self.sym) + tuple(_term_akey(a, env, depth) for a in self.args)


class Not(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula) -> None:
        self.body = body
        self.free = body.free
        self._hash = hash(("n", body._hash))

    def _akey(self, env, depth):
        return ("n", self.body._akey(env, depth))


class _Binary(Formula):
    __slots__ = ("left", "right")
    tag = "?"

    def __init__(self, left: Formula, right: Formula) -> None:
        self.left = left
        self.right = right
        self.free = left.free | right.free
        self._hash = hash((self.tag, left._hash, right._hash))

    def _akey(self, env, depth):
        return (self.tag, self.left._akey(env, depth), self.right._akey(env, depth))


class And(_Binary):
    __slots__ = ()
    tag = "&"


class Or(_Binary):
    __slots__ = ()
    tag = "|"


class Imp(_Binary):
    __slots__ = ()
    tag = ">"


class Iff(_Binary):
    __slots__ = ()
    tag = "="


class _Quant(Formula):
    __slots__ = ("var", "body")
    tag = "?"

    def __init__(self, var: int, body: Formula) -> None:
        self.var = var
        self.body = body
        self.free = body.free - {var}
        self._hash = hash(self._akey({}, 0))

    def _akey(self, env, depth):
        env2 = dict(env)
        env2[self.var] = depth + 1
        return (self.tag, self.body._akey(env2, depth + 1))


class Forall(_Quant):
    __slots__ = ()
    tag = "A"


class Exists(_Quant):
    __slots__ = ()
    tag = "E"


def _alpha_eq(a: Formula, b: Formula, enva: Dict[int, int], envb: Dict[int, int], depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Pred):
        if a.sym != b.sym or len(a.args) != len(b.args):
            return False
        return all(
            _term_akey(x, enva, depth) == _term_akey(y, envb, depth)
            for x, y in zip(a.args, b.args)
        )
    if isinstance(a, Not):
        return _alpha_eq(a.body, b.body, enva, envb, depth)
    if isinstance(a, _Binary):
        return _alpha_eq(a.left, b.left, enva, envb, depth) and _alpha_eq(
            a.right, b.right, enva, envb, depth
        )
    if isinstance(a, _Quant):
        enva2 = dict(enva)
        envb2 = dict(envb)
        enva2[a.var] = depth + 1
        envb2[b.var] = depth + 1
        return _alpha_eq(a.body, b.body, enva2, envb2, depth + 1)
    raise TypeError(f"not a formula: {a!r}")


def alpha_equal(a: Formula, b: Formula) -> bool:
    """Equality up to renaming of quantifier-bound variables."""
    return _alpha_eq(a, b, {}, {}, 0)


# ---------------------------------------------------------------------------
# Substitution


def subst_term(t: Term, m: Mapping[int, Term]) -> Term:
    if isinstance(t, Var):
        return m.get(t.sym, t)
    if not (t.free & m.keys()):
        return t
    return App(t.sym, tuple(subst_term(a, m) for a in t.args))


def subst_formula(sig: Signature, f: Formula, m: Mapping[int, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    live = {k: v for k, v in m.items() if k in f.free}
    if not live:
        return f
    return _subst_f(sig, f, live)


def _subst_f(sig: Signature, f: Formula, m: Dict[int, Term]) -> Formula:
    if isinstance(f, Pred):
        return Pred(f.sym, tuple(subst_term(a, m) for a in f.args))
    if isinstance(f, Not):
        return Not(subst_formula(sig, f.body, m))
    if isinstance(f, _Binary):
        return type(f)(subst_formula(sig, f.left, m), subst_formula(sig, f.right, m))
    if isinstance(f, _Quant):
        live = {k: v for k, v in m.items() if k != f.var and k in f.body.free}
        if not live:
            return f
        v, body = f.var, f.body
        if any(v in t.free for t in live.values()):
            v2 = sig.fresh_var(sig.name_of(v))
            body = subst_formula(sig, body, {v: Var(v2)})
            v = v2
        return type(f)(v, subst_formula(sig, body, live))
    raise TypeError(f"not a formula: {f!r}")


def rename_formula(sig: Signature, f: Formula, m: Mapping[int, int]) -> Formula:
    return subst_formula(sig, f, {k: Var(v) for k, v in m.items()})


# ---------------------------------------------------------------------------
# Occurrence abstraction (used to build equality-substitution contexts)


def replace_term(f: Formula, target: Term, repl: Term) -> Formula:
    """Replace free occurrences of `target` by `repl`.

    An occurrence is replaced only when no enclosing quantifier binds a free
    variable of either term, so the result is always a sound rewrite.
    """
    blocked = target.free | repl.free

    def go_t(t: Term, bound: frozenset) -> Term:
        if t == target and not (blocked & bound):
            return repl
        if isinstance(t, App):
            return App(t.sym, tuple(go_t(a, bound) for a in t.args))
        return t

    def go_f(g: Formula, bound: frozenset) -> Formula:
        if isinstance(g, Pred):
            return Pred(g.sym, tuple(go_t(a, bound) for a in g.args))
        if isinstance(g, Not):
            return Not(go_f(g.body, bound))
        if isinstance(g, _Binary):
            return type(g)(go_f(g.left, bound), go_f(g.right, bound))
        if isinstance(g, _Quant):
            return type(g)(g.var, go_f(g.body, bound | {g.var}))
        raise TypeError(f"not a formula: {g!r}")

    return go_f(f, frozenset())


def occurs_free(f: Formula, target: Term) -> bool:
    probe = object()

    def go_t(t: Term, bound: frozenset) -> bool:
        if t == target and not (target.free & bound):
            return True
        if isinstance(t, App):
            return any(go_t(a, bound) for a in t.args)
        return False

    def go_f(g: Formula, bound: frozenset) -> bool:
        if isinstance(g, Pred):
            return any(go_t(a, bound) for a in g.args)
        if isinstance(g, Not):
            return go_f(g.body, bound)
        if isinstance(g, _Binary):
            return go_f(g.left, bound) or go_f(g.right, bound)
        if isinstance(g, _Quant):
            return go_f(g.body, bound | {g.var})
        raise TypeError(f"not a formula: {g!r}")

    _ = probe
    return go_f(f, frozenset())


# ---------------------------------------------------------------------------
# Sequents


class Sequent:
    """A pair of formula sets. Formula identity is alpha-equivalence, so the
    sets already collapse bound-variable variants."""

    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> None:
        self.left = frozenset(left)
        self.right = frozenset(right)
        self._hash = hash((self.left, self.right))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Sequent)
            and other.left == self.left
            and other.right == self.right
        )

    @property
    def free(self) -> frozenset:
        fv: frozenset = frozenset()
        for f in self.left:
            fv |= f.free
        for f in self.right:
            fv |= f.free
        return fv

    def __repr__(self) -> str:
        return f"Sequent({len(self.left)} |- {len(self.right)})"


def iter_subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from iter_subterms(a)
