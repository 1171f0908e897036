"""The object language: simply typed lambda terms with top-level polymorphism.

Types are type variables, the two ground types (booleans and individuals),
arrows, and applied type constructors (used by generated datatypes). Terms are
variables, constants carrying an explicit type instantiation, applications,
and abstractions. Every term is type-checked at construction; `IllTyped` is
raised right where the mismatch happens.

Equality of terms and types is structural (names matter). Alpha-equivalence
is decided separately through `debruijn_key`, which prints a term into a
typed de Bruijn normal form: two terms get the same key exactly when they are
alpha-equivalent.

A `Constants` table maps constant names to their generic (most polymorphic)
type; `=` and the truth constant `T` are built in. A specific occurrence of a
constant stores the substitution from the generic type's variables, so the
generic type can always be recovered, as needed when matching a later
occurrence against the original definition.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DuplicateSymbol,
    IllTyped,
    NonBooleanConclusion,
    ParseError,
    UnknownSymbol,
    VariableTypeClash,
)
from .printer import read_sexp

# ---------------------------------------------------------------------------
# Types


class HolType:
    __slots__ = ("_hash",)

    def _key(self):  # pragma: no cover - abstract
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, HolType):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return print_type(self)


class TyVar(HolType):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name or not isinstance(name, str):
            raise IllTyped(f"bad type-variable name: {name!r}")
        object.__setattr__(self, "name", name)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("v", self.name)


class Bool(HolType):
    __slots__ = ()

    def _key(self):
        return ("b",)


class Ind(HolType):
    __slots__ = ()

    def _key(self):
        return ("i",)


class Fun(HolType):
    __slots__ = ("dom", "cod")

    def __init__(self, dom: HolType, cod: HolType):
        if not isinstance(dom, HolType) or not isinstance(cod, HolType):
            raise IllTyped("arrow type needs two types")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("f", self.dom._key(), self.cod._key())


class TyCon(HolType):
    __slots__ = ("name", "args")

    def __init__(self, name: str, args: Sequence[HolType] = ()):
        args = tuple(args)
        if not name or any(not isinstance(a, HolType) for a in args):
            raise IllTyped(f"bad type constructor: {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", args)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("t", self.name) + tuple(a._key() for a in self.args)


BOOL = Bool()
IND = Ind()


def type_tyvars(ty: HolType, acc: Optional[List[str]] = None) -> List[str]:
    """Type variables of a type, ordered by first occurrence."""
    if acc is None:
        acc = []
    if isinstance(ty, TyVar):
        if ty.name not in acc:
            acc.append(ty.name)
    elif isinstance(ty, Fun):
        type_tyvars(ty.dom, acc)
        type_tyvars(ty.cod, acc)
    elif isinstance(ty, TyCon):
        for a in ty.args:
            type_tyvars(a, acc)
    return acc


def subst_type(ty: HolType, m: Mapping[str, HolType]) -> HolType:
    if isinstance(ty, TyVar):
        return m.get(ty.name, ty)
    if isinstance(ty, Fun):
        return Fun(subst_type(ty.dom, m), subst_type(ty.cod, m))
    if isinstance(ty, TyCon):
        return TyCon(ty.name, tuple(subst_type(a, m) for a in ty.args))
    return ty


# ---------------------------------------------------------------------------
# Constant signatures


class Constants:
    """Generic types of the known constants.

    `=` is polymorphic equality A -> A -> bool; `T` is the Boolean truth
    constant. Definitions and datatype declarations add entries.
    """

    def __init__(self):
        self._table: Dict[str, HolType] = {}
        self.declare("=", Fun(TyVar("A"), Fun(TyVar("A"), BOOL)))
        self.declare("T", BOOL)

    def declare(self, name: str, generic: HolType) -> None:
        prior = self._table.get(name)
        if prior is not None:
            if prior == generic:
                return
            raise DuplicateSymbol(f"constant {name!r} already declared at another type")
        self._table[name] = generic

    def generic_type(self, name: str) -> HolType:
        ty = self._table.get(name)
        if ty is None:
            raise UnknownSymbol(f"unknown constant: {name!r}")
        return ty

    def known(self, name: str) -> bool:
        return name in self._table

    def names(self) -> List[str]:
        return sorted(self._table)


# ---------------------------------------------------------------------------
# Terms


class HolTerm:
    __slots__ = ("_hash", "_free")

    ty: HolType

    def _key(self):  # pragma: no cover - abstract
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, HolTerm):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return print_term(self)

    @property
    def free(self) -> frozenset:
        """Free variables, as a frozenset of HVar."""
        f = getattr(self, "_free", None)
        if f is None:
            f = self._frees()
            object.__setattr__(self, "_free", f)
        return f

    def _frees(self) -> frozenset:  # pragma: no cover - abstract
        raise NotImplementedError


class HVar(HolTerm):
    __slots__ = ("name", "ty")

    def __init__(self, name: str, ty: HolType):
        if not name or not isinstance(name, str):
            raise IllTyped(f"bad variable name: {name!r}")
        if not isinstance(ty, HolType):
            raise IllTyped(f"variable {name!r} needs a type")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "ty", ty)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("v", self.name, self.ty._key())

    def _frees(self):
        return frozenset((self,))


class HConst(HolTerm):
    __slots__ = ("name", "generic", "inst", "ty")

    def __init__(self, name: str, generic: HolType, inst: Mapping[str, HolType]):
        gvars = type_tyvars(generic)
        extra = sorted(set(inst) - set(gvars))
        if extra:
            raise IllTyped(f"constant {name!r}: instantiation names unknown type variables {extra}")
        inst_t = tuple(sorted(((v, inst[v]) for v in inst), key=lambda p: p[0]))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "generic", generic)
        object.__setattr__(self, "inst", inst_t)
        object.__setattr__(self, "ty", subst_type(generic, dict(inst_t)))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("c", self.name, self.ty._key())

    def _frees(self):
        return frozenset()


class HComb(HolTerm):
    __slots__ = ("fn", "arg", "ty")

    def __init__(self, fn: HolTerm, arg: HolTerm):
        if not isinstance(fn, HolTerm) or not isinstance(arg, HolTerm):
            raise IllTyped("application needs two terms")
        fty = fn.ty
        if not isinstance(fty, Fun):
            raise IllTyped(f"applying a non-function: {print_term(fn)} : {print_type(fty)}")
        if fty.dom != arg.ty:
            raise IllTyped(
                f"argument type mismatch: expected {print_type(fty.dom)}, "
                f"got {print_term(arg)} : {print_type(arg.ty)}"
            )
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "arg", arg)
        object.__setattr__(self, "ty", fty.cod)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("a", self.fn._key(), self.arg._key())

    def _frees(self):
        return self.fn.free | self.arg.free


class HAbs(HolTerm):
    __slots__ = ("var", "body", "ty")

    def __init__(self, var: HVar, body: HolTerm):
        if not isinstance(var, HVar):
            raise IllTyped("abstraction binder must be a variable")
        if not isinstance(body, HolTerm):
            raise IllTyped("abstraction needs a body term")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "ty", Fun(var.ty, body.ty))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return ("l", self.var._key(), self.body._key())

    def _frees(self):
        return self.body.free - {self.var}


def mk_eq(a: HolTerm, b: HolTerm) -> HolTerm:
    """a =^ b at the common type of a and b."""
    if a.ty != b.ty:
        raise IllTyped(
            f"equating terms of different types: {print_type(a.ty)} vs {print_type(b.ty)}"
        )
    eq = HConst("=", Fun(TyVar("A"), Fun(TyVar("A"), BOOL)), {"A": a.ty})
    return HComb(HComb(eq, a), b)


def dest_eq(t: HolTerm) -> Tuple[HolTerm, HolTerm]:
    """Split `a =^ b` into (a, b); raises IllTyped on any other shape."""
    if (
        isinstance(t, HComb)
        and isinstance(t.fn, HComb)
        and isinstance(t.fn.fn, HConst)
        and t.fn.fn.name == "="
    ):
        return t.fn.arg, t.arg
    raise IllTyped(f"not an equation: {print_term(t)}")


def is_eq(t: HolTerm) -> bool:
    return (
        isinstance(t, HComb)
        and isinstance(t.fn, HComb)
        and isinstance(t.fn.fn, HConst)
        and t.fn.fn.name == "="
    )


def term_tyvars(t: HolTerm, acc: Optional[List[str]] = None) -> List[str]:
    """Type variables of a term (including those of constant instantiations
    and binder annotations), ordered by first occurrence."""
    if acc is None:
        acc = []
    if isinstance(t, HVar):
        type_tyvars(t.ty, acc)
    elif isinstance(t, HConst):
        type_tyvars(t.ty, acc)
    elif isinstance(t, HComb):
        term_tyvars(t.fn, acc)
        term_tyvars(t.arg, acc)
    elif isinstance(t, HAbs):
        type_tyvars(t.var.ty, acc)
        term_tyvars(t.body, acc)
    return acc


def all_vars(t: HolTerm, acc: Optional[set] = None) -> set:
    """Every variable occurrence, free or bound."""
    if acc is None:
        acc = set()
    if isinstance(t, HVar):
        acc.add(t)
    elif isinstance(t, HComb):
        all_vars(t.fn, acc)
        all_vars(t.arg, acc)
    elif isinstance(t, HAbs):
        acc.add(t.var)
        all_vars(t.body, acc)
    return acc


def sorted_frees(t: HolTerm) -> List[HVar]:
    """Free variables ordered lexicographically by name (capture order)."""
    return sorted(t.free, key=lambda v: v.name)


def variant_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def vsubst(t: HolTerm, m: Mapping[HVar, HolTerm]) -> HolTerm:
    """Simultaneous capture-avoiding substitution of terms for free variables.

    Every key must be an HVar and every value a term of the key's type.
    Binders are renamed (fresh name variants) when a replacement would be
    captured.
    """
    for v, s in m.items():
        if not isinstance(v, HVar):
            raise IllTyped(f"substitution key is not a variable: {v!r}")
        if v.ty != s.ty:
            raise IllTyped(
                f"substituting {print_term(s)} : {print_type(s.ty)} for "
                f"{v.name} : {print_type(v.ty)}"
            )
    m = {v: s for v, s in m.items() if s != v}
    if not m:
        return t
    return _vsubst(t, m)


def _vsubst(t: HolTerm, m: Dict[HVar, HolTerm]) -> HolTerm:
    if isinstance(t, HVar):
        return m.get(t, t)
    if isinstance(t, HConst):
        return t
    if isinstance(t, HComb):
        fn = _vsubst(t.fn, m)
        arg = _vsubst(t.arg, m)
        if fn is t.fn and arg is t.arg:
            return t
        return HComb(fn, arg)
    # abstraction
    inner = {v: s for v, s in m.items() if v != t.var and v in t.body.free}
    if not inner:
        return t
    if any(t.var in s.free for s in inner.values()):
        taken = {v.name for s in inner.values() for v in s.free}
        taken |= {v.name for v in t.body.free}
        fresh = HVar(variant_name(t.var.name, taken), t.var.ty)
        body = _vsubst(t.body, {t.var: fresh})
        return HAbs(fresh, _vsubst(body, inner))
    return HAbs(t.var, _vsubst(t.body, inner))


def tinst(t: HolTerm, m: Mapping[str, HolType]) -> HolTerm:
    """Instantiate type variables throughout a term.

    Distinct variables may only collide if they share a name at different
    types, which the one-name-one-type discipline already forbids, so no
    renaming is needed here.
    """
    if not m:
        return t
    if isinstance(t, HVar):
        return HVar(t.name, subst_type(t.ty, m))
    if isinstance(t, HConst):
        gvars = type_tyvars(t.generic)
        old = dict(t.inst)
        newinst = {v: subst_type(old.get(v, TyVar(v)), m) for v in gvars}
        return HConst(t.name, t.generic, newinst)
    if isinstance(t, HComb):
        return HComb(tinst(t.fn, m), tinst(t.arg, m))
    return HAbs(tinst(t.var, m), tinst(t.body, m))


# ---------------------------------------------------------------------------
# Alpha-equivalence via typed de Bruijn keys


def debruijn_key(t: HolTerm) -> str:
    """A canonical string: equal for exactly the alpha-equivalent terms."""
    out: List[str] = []
    _db(t, {}, 0, out)
    return "".join(out)


def _db(t: HolTerm, env: Dict[HVar, int], depth: int, out: List[str]) -> None:
    if isinstance(t, HVar):
        lvl = env.get(t)
        if lvl is None:
            out.append(f"f[{t.name}:{print_type(t.ty)}]")
        else:
            out.append(f"#{depth - lvl}")
    elif isinstance(t, HConst):
        out.append(f"c[{t.name}:{print_type(t.ty)}]")
    elif isinstance(t, HComb):
        out.append("(")
        _db(t.fn, env, depth, out)
        out.append(" ")
        _db(t.arg, env, depth, out)
        out.append(")")
    else:
        out.append(f"(\\{print_type(t.var.ty)}.")
        env2 = dict(env)
        env2[t.var] = depth
        _db(t.body, env2, depth + 1, out)
        out.append(")")


def alpha_equal_hol(a: HolTerm, b: HolTerm) -> bool:
    return a == b or debruijn_key(a) == debruijn_key(b)


# ---------------------------------------------------------------------------
# Sequents


def check_one_type_per_name(terms: Iterable[HolTerm]) -> Dict[str, HolType]:
    """Enforce that every variable name carries a single type across terms."""
    seen: Dict[str, HolType] = {}
    for t in terms:
        for v in all_vars(t):
            prior = seen.get(v.name)
            if prior is None:
                seen[v.name] = v.ty
            elif prior != v.ty:
                raise VariableTypeClash(
                    f"variable {v.name!r} occurs both at {print_type(prior)} "
                    f"and at {print_type(v.ty)}"
                )
    return seen


class HolSequent:
    """hyps |- concl with every formula of Boolean type."""

    __slots__ = ("hyps", "concl", "_hash")

    def __init__(self, hyps: Iterable[HolTerm], concl: HolTerm):
        hyps = frozenset(hyps)
        for h in hyps:
            if h.ty != BOOL:
                raise NonBooleanConclusion(
                    f"hypothesis is not Boolean: {print_term(h)} : {print_type(h.ty)}"
                )
        if concl.ty != BOOL:
            raise NonBooleanConclusion(
                f"conclusion is not Boolean: {print_term(concl)} : {print_type(concl.ty)}"
            )
        check_one_type_per_name(list(hyps) + [concl])
        object.__setattr__(self, "hyps", hyps)
        object.__setattr__(self, "concl", concl)
        object.__setattr__(self, "_hash", hash((hyps, concl)))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, HolSequent):
            return NotImplemented
        return self.hyps == other.hyps and self.concl == other.concl

    def __hash__(self):
        return self._hash

    def __repr__(self):
        hs = ", ".join(sorted(print_term(h) for h in self.hyps))
        return f"{hs} |- {print_term(self.concl)}"


# ---------------------------------------------------------------------------
# Concrete syntax (s-expressions, same token rules as the set-theory side)
#
# Types   bool | ind | X (bare token: type variable) | (fun T U) | (tc name T ..)
# Terms   (var x T) | (const name ((A T) ..)) | (comb f x) | (abs (var x T) t)
#         (eq t u) is accepted as shorthand for equality at the common type.


def type_of_sexp(s) -> HolType:
    if isinstance(s, str):
        if s == "bool":
            return BOOL
        if s == "ind":
            return IND
        return TyVar(s)
    if not s or not isinstance(s[0], str):
        raise ParseError(f"malformed type: {s!r}")
    if s[0] == "fun":
        if len(s) != 3:
            raise ParseError("fun takes two types")
        return Fun(type_of_sexp(s[1]), type_of_sexp(s[2]))
    if s[0] == "tc":
        if len(s) < 2 or not isinstance(s[1], str):
            raise ParseError("tc takes a name and type arguments")
        return TyCon(s[1], tuple(type_of_sexp(a) for a in s[2:]))
    raise ParseError(f"unknown type form: {s[0]!r}")


def parse_type(text: str) -> HolType:
    return type_of_sexp(read_sexp(text))


def print_type(ty: HolType) -> str:
    if isinstance(ty, TyVar):
        return ty.name
    if isinstance(ty, Bool):
        return "bool"
    if isinstance(ty, Ind):
        return "ind"
    if isinstance(ty, Fun):
        return f"(fun {print_type(ty.dom)} {print_type(ty.cod)})"
    if isinstance(ty, TyCon):
        inner = " ".join(["tc", ty.name] + [print_type(a) for a in ty.args])
        return f"({inner})"
    raise TypeError(f"not a type: {ty!r}")


def term_of_sexp(consts: Constants, s) -> HolTerm:
    if isinstance(s, str) or not s or not isinstance(s[0], str):
        raise ParseError(f"malformed term: {s!r}")
    head = s[0]
    if head == "var":
        if len(s) != 3 or not isinstance(s[1], str):
            raise ParseError("var takes a name and a type")
        return HVar(s[1], type_of_sexp(s[2]))
    if head == "const":
        if len(s) not in (2, 3) or not isinstance(s[1], str):
            raise ParseError("const takes a name and an optional instantiation")
        generic = consts.generic_type(s[1])
        inst: Dict[str, HolType] = {}
        if len(s) == 3:
            if isinstance(s[2], str):
                raise ParseError("constant instantiation must be a binding list")
            for item in s[2]:
                if isinstance(item, str) or len(item) != 2 or not isinstance(item[0], str):
                    raise ParseError(f"malformed type binding: {item!r}")
                inst[item[0]] = type_of_sexp(item[1])
        return HConst(s[1], generic, inst)
    if head == "comb":
        if len(s) != 3:
            raise ParseError("comb takes two terms")
        return HComb(term_of_sexp(consts, s[1]), term_of_sexp(consts, s[2]))
    if head == "abs":
        if len(s) != 3:
            raise ParseError("abs takes a variable and a body")
        v = term_of_sexp(consts, s[1])
        if not isinstance(v, HVar):
            raise ParseError("abs binder must be a (var ..) form")
        return HAbs(v, term_of_sexp(consts, s[2]))
    if head == "eq":
        if len(s) != 3:
            raise ParseError("eq takes two terms")
        return mk_eq(term_of_sexp(consts, s[1]), term_of_sexp(consts, s[2]))
    raise ParseError(f"unknown term form: {head!r}")


def parse_term(consts: Constants, text: str) -> HolTerm:
    return term_of_sexp(consts, read_sexp(text))


def print_term(t: HolTerm) -> str:
    if isinstance(t, HVar):
        return f"(var {t.name} {print_type(t.ty)})"
    if isinstance(t, HConst):
        if not t.inst:
            return f"(const {t.name})"
        inner = " ".join(f"({v} {print_type(ty)})" for v, ty in t.inst)
        return f"(const {t.name} ({inner}))"
    if isinstance(t, HComb):
        return f"(comb {print_term(t.fn)} {print_term(t.arg)})"
    if isinstance(t, HAbs):
        return f"(abs {print_term(t.var)} {print_term(t.body)})"
    raise TypeError(f"not a term: {t!r}")
