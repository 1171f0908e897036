"""Translating the typed lambda language into set-theory terms.

Types become set terms (type variables stay variables, `bool` becomes the
two-element set, `ind` the naturals, arrows become function spaces). Terms
translate structurally, except for abstractions: the term syntax of
first-order logic has no binders, so each abstraction is replaced by a
reserved variable `lam<i>` applied to the abstraction's captured free
variables, and the behaviour of `lam<i>` is pinned down by a *context
formula* that the embedded sequent carries as a hypothesis:

    lam_i in T1 => .. => Tn => T => B  and
    all y1 in T1. .. all yn in Tn. all x in T. lam_i y1 .. yn x = <body>

The registry hands out `lam<i>` indices from a counter and memoizes on the
typed de Bruijn key, so alpha-equivalent abstractions share one closure.

Embedded sequents carry three kinds of context hypotheses per the
construction: nonemptiness of type variables, variable typings, and closure
definitions, plus `<hyp> = top` for each hypothesis, concluding
`<concl> = top`.
"""

from __future__ import annotations

import urllib.parse
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import hol
from .base import BaseTheory, build_base
from .errors import (
    IllTyped,
    NotAnEmbeddingImage,
    ParseError,
    UnknownTypeConstructor,
    VariableTypeClash,
)
from .fol import And, Exists, Forall, Formula, Iff, Imp, Not, Or, Pred, Sequent, Term, Var, App
from .hol import (
    BOOL,
    IND,
    Bool,
    Constants,
    Fun,
    HAbs,
    HComb,
    HConst,
    HVar,
    HolSequent,
    HolTerm,
    HolType,
    Ind,
    TyCon,
    TyVar,
    debruijn_key,
    print_term,
    print_type,
    sorted_frees,
    term_tyvars,
    type_tyvars,
)
from .kernel import Theorem, Workspace

LAMBDA_PREFIX = "lam"


def is_lambda_name(name: str) -> bool:
    return (
        name.startswith(LAMBDA_PREFIX)
        and name[len(LAMBDA_PREFIX) :].isdigit()
        and name[len(LAMBDA_PREFIX)] != "0"
    )


class RegistryEntry:
    """One closure: a reserved variable, its source abstraction, and the
    context formula template that defines it."""

    __slots__ = (
        "index",
        "name",
        "var",
        "key",
        "abs",
        "captures",
        "tyvars",
        "template",
        "chain_type",
    )

    def __init__(self, index, name, var, key, abs_term, captures, tyvars, template, chain_type):
        self.index = index
        self.name = name  # "lam<i>"
        self.var = var  # FOL variable symbol
        self.key = key  # de Bruijn key of abs_term
        self.abs = abs_term  # representative HAbs
        self.captures = captures  # tuple of HVar, lexicographic
        self.tyvars = tyvars  # tuple of type-variable names
        self.template = template  # the two-conjunct context formula
        self.chain_type = chain_type  # HolType of the full capture chain


class Embedder:
    """Translation state bound to one workspace: the closure registry, the
    constant table, and the datatype table."""

    def __init__(self, ws: Workspace, base: Optional[BaseTheory] = None):
        self.ws = ws
        self.base = base if base is not None else build_base(ws)
        self.consts = Constants()
        # name -> (fol function symbol, generic type, tyvar parameter order)
        self.fol_consts: Dict[str, Tuple[int, HolType, Tuple[str, ...]]] = {}
        self.typing_thms: Dict[str, Theorem] = {}
        # type-constructor name -> (fol function symbol, arity)
        self.tycons: Dict[str, Tuple[int, int]] = {}
        # type-constructor name -> (nonemptiness lemma, parameter symbols)
        self.tycon_nonempty: Dict[str, Tuple[Theorem, Tuple[int, ...]]] = {}
        self._by_key: Dict[str, RegistryEntry] = {}
        self._by_name: Dict[str, RegistryEntry] = {}
        self._next = 1
        ws.ext["embedder"] = self

    # -- registry ---------------------------------------------------------

    def entries(self) -> List[RegistryEntry]:
        return [self._by_key[k] for k in sorted(self._by_key, key=lambda k: self._by_key[k].index)]

    def lookup_lambda(self, name: str) -> Optional[RegistryEntry]:
        return self._by_name.get(name)

    def register_abstraction(self, a: HAbs) -> RegistryEntry:
        if not isinstance(a, HAbs):
            raise IllTyped("only abstractions get closure entries")
        self._check_names(a)
        key = debruijn_key(a)
        hit = self._by_key.get(key)
        if hit is not None:
            return hit
        # Embed the body first: that registers any sub-abstractions, so the
        # index handed out here is strictly larger than any index the
        # template below mentions, and index order is dependency order.
        body_e = self._embed(a.body)
        captures = tuple(sorted_frees(a))
        tyvars = tuple(term_tyvars(a))
        index = self._next
        self._next += 1
        name = f"{LAMBDA_PREFIX}{index}"
        var = self.ws.sig.variable(name)
        s = self.ws.sig
        chain: HolType = a.ty.cod
        chain_ty = Fun(a.var.ty, chain)
        for v in reversed(captures):
            chain_ty = Fun(v.ty, chain_ty)
        member = s.member(Var(var), self.embed_type(chain_ty))
        lhs: Term = Var(var)
        for v in captures:
            lhs = self.base.app_t(lhs, Var(s.variable(v.name)))
        lhs = self.base.app_t(lhs, Var(s.variable(a.var.name)))
        eq = s.eq(lhs, body_e)
        quant = Imp(s.member(Var(s.variable(a.var.name)), self.embed_type(a.var.ty)), eq)
        quant = Forall(s.variable(a.var.name), quant)
        for v in reversed(captures):
            quant = Imp(s.member(Var(s.variable(v.name)), self.embed_type(v.ty)), quant)
            quant = Forall(s.variable(v.name), quant)
        template = And(member, quant)
        entry = RegistryEntry(index, name, var, key, a, captures, tyvars, template, chain_ty)
        self._by_key[key] = entry
        self._by_name[name] = entry
        return entry

    # -- constants and datatypes -------------------------------------------

    def declare_constant(
        self, name: str, generic: HolType, sym: int, typing_thm: Optional[Theorem] = None
    ) -> None:
        """Attach a set-theory class-function symbol to a defined constant.

        The symbol takes the generic type's type variables, in first-
        occurrence order, as parameters."""
        self.consts.declare(name, generic)
        order = tuple(type_tyvars(generic))
        self.fol_consts[name] = (sym, generic, order)
        if typing_thm is not None:
            self.typing_thms[name] = typing_thm

    def constant_typing(self, name: str) -> Optional[Theorem]:
        return self.typing_thms.get(name)

    def declare_tycon(self, name: str, sym: int, arity: int) -> None:
        self.tycons[name] = (sym, arity)

    # -- naming discipline ---------------------------------------------------

    def _check_names(self, t: HolTerm) -> None:
        hol.check_one_type_per_name([t])
        tyvars = set(term_tyvars(t))
        for v in hol.all_vars(t):
            if is_lambda_name(v.name):
                raise VariableTypeClash(
                    f"variable name {v.name!r} collides with the reserved closure set"
                )
            if v.name in tyvars:
                raise VariableTypeClash(
                    f"name {v.name!r} is used both as a term variable and a type variable"
                )
        for x in tyvars:
            if is_lambda_name(x):
                raise VariableTypeClash(
                    f"type-variable name {x!r} collides with the reserved closure set"
                )

    # -- types ----------------------------------------------------------------

    def embed_type(self, ty: HolType) -> Term:
        s = self.ws.sig
        if isinstance(ty, TyVar):
            return Var(s.variable(ty.name))
        if isinstance(ty, Bool):
            return self.base.bool_t
        if isinstance(ty, Ind):
            return self.base.nat_t
        if isinstance(ty, Fun):
            return self.base.arrow_t(self.embed_type(ty.dom), self.embed_type(ty.cod))
        if isinstance(ty, TyCon):
            rec = self.tycons.get(ty.name)
            if rec is None:
                raise UnknownTypeConstructor(f"no datatype named {ty.name!r}")
            sym, arity = rec
            if len(ty.args) != arity:
                raise UnknownTypeConstructor(
                    f"datatype {ty.name!r} takes {arity} parameter(s), got {len(ty.args)}"
                )
            return s.mkapp(sym, *[self.embed_type(a) for a in ty.args])
        raise IllTyped(f"not a type: {ty!r}")

    def unembed_type(self, t: Term) -> HolType:
        """Inverse of embed_type on its image."""
        s = self.ws.sig
        if isinstance(t, Var):
            return TyVar(s.name_of(t.sym))
        if isinstance(t, App):
            if t == self.base.bool_t:
                return BOOL
            if t == self.base.nat_t:
                return IND
            if t.sym == self.base.arrow and len(t.args) == 2:
                return Fun(self.unembed_type(t.args[0]), self.unembed_type(t.args[1]))
            for name, (sym, arity) in self.tycons.items():
                if t.sym == sym and len(t.args) == arity:
                    return TyCon(name, tuple(self.unembed_type(a) for a in t.args))
        raise NotAnEmbeddingImage(f"not the image of a type: {t!r}")

    # -- terms ------------------------------------------------------------------

    def embed_term(self, t: HolTerm, checked: bool = False) -> Term:
        if not checked:
            self._check_names(t)
        return self._embed(t)

    def _embed(self, t: HolTerm) -> Term:
        s = self.ws.sig
        if isinstance(t, HVar):
            return Var(s.variable(t.name))
        if isinstance(t, HConst):
            return self._embed_const(t)
        if isinstance(t, HComb):
            return self.base.app_t(self._embed(t.fn), self._embed(t.arg))
        entry = self.register_abstraction(t)
        e: Term = Var(entry.var)
        for v in entry.captures:
            e = self.base.app_t(e, Var(s.variable(v.name)))
        return e

    def _embed_const(self, t: HConst) -> Term:
        if t.name == "=":
            (pair,) = [ty for v, ty in t.inst] or [TyVar("A")]
            return self.base.eqfn_t(self.embed_type(pair))
        if t.name == "T":
            return self.base.top_t
        rec = self.fol_consts.get(t.name)
        if rec is None:
            raise NotAnEmbeddingImage(
                f"constant {t.name!r} has no set-theory interpretation yet"
            )
        sym, generic, order = rec
        inst = dict(t.inst)
        args = [self.embed_type(inst.get(v, TyVar(v))) for v in order]
        return self.ws.sig.mkapp(sym, *args)

    # -- contexts ------------------------------------------------------------------

    def context_of(self, t: HolTerm, checked: bool = False) -> "ContextSet":
        if not checked:
            self._check_names(t)
        ctx = ContextSet(self)
        self._collect_nonempty(t, ctx)
        self._collect_typing(t, ctx)
        self._collect_defs(t, ctx)
        return ctx

    def _collect_nonempty(self, t: HolTerm, ctx: "ContextSet") -> None:
        s = self.ws.sig
        for name in term_tyvars(t):
            if name not in ctx.nonempty:
                ctx.nonempty[name] = Not(s.eq(Var(s.variable(name)), self.base.empty_t))

    def _collect_typing(self, t: HolTerm, ctx: "ContextSet") -> None:
        s = self.ws.sig
        for v in sorted_frees(t):
            if v.name not in ctx.typing:
                ctx.typing[v.name] = s.member(Var(s.variable(v.name)), self.embed_type(v.ty))
                ctx.typing_types[v.name] = v.ty

    def _collect_defs(self, t: HolTerm, ctx: "ContextSet") -> None:
        if isinstance(t, HComb):
            self._collect_defs(t.fn, ctx)
            self._collect_defs(t.arg, ctx)
        elif isinstance(t, HAbs):
            self._collect_defs(t.body, ctx)
            entry = self.register_abstraction(t)
            if entry.index not in ctx.defs:
                ctx.defs[entry.index] = entry.template

    # -- sequents -------------------------------------------------------------------

    def embed_sequent(self, hs: HolSequent) -> "EmbeddedSequent":
        s = self.ws.sig
        hyps = sorted(hs.hyps, key=print_term)
        terms = hyps + [hs.concl]
        hol.check_one_type_per_name(terms)
        ctx = ContextSet(self)
        for t in terms:
            self._check_names(t)
            self._collect_nonempty(t, ctx)
            self._collect_typing(t, ctx)
            self._collect_defs(t, ctx)
        hyp_embeddings: Dict[HolTerm, Formula] = {}
        for h in hyps:
            hyp_embeddings[h] = s.eq(self._embed(h), self.base.top_t)
        concl = s.eq(self._embed(hs.concl), self.base.top_t)
        left = ctx.formulas() + [hyp_embeddings[h] for h in hyps]
        seq = Sequent(left, (concl,))
        return EmbeddedSequent(hs, seq, ctx, hyp_embeddings, concl)


class ContextSet:
    """The three context components, each insertion-ordered.

    Closure definitions are ordered by closure index, which respects
    dependency: a closure whose template mentions another was necessarily
    registered later."""

    def __init__(self, emb: Embedder):
        self.emb = emb
        self.nonempty: Dict[str, Formula] = {}
        self.typing: Dict[str, Formula] = {}
        self.typing_types: Dict[str, HolType] = {}
        self.defs: Dict[int, Formula] = {}

    def formulas(self) -> List[Formula]:
        ne = [self.nonempty[k] for k in sorted(self.nonempty)]
        ty = [self.typing[k] for k in sorted(self.typing)]
        df = [self.defs[k] for k in sorted(self.defs)]
        return ne + ty + df

    def union(self, other: "ContextSet") -> "ContextSet":
        out = ContextSet(self.emb)
        for src in (self, other):
            out.nonempty.update(src.nonempty)
            out.typing.update(src.typing)
            out.typing_types.update(src.typing_types)
            out.defs.update(src.defs)
        out.defs = {k: out.defs[k] for k in sorted(out.defs)}
        return out

    def copy(self) -> "ContextSet":
        out = ContextSet(self.emb)
        out.nonempty.update(self.nonempty)
        out.typing.update(self.typing)
        out.typing_types.update(self.typing_types)
        out.defs.update(self.defs)
        return out


class EmbeddedSequent:
    """The set-theory sequent for a typed-lambda sequent, with its parts
    kept separate so tactics can tell context hypotheses from embedded
    hypotheses."""

    __slots__ = ("hol", "sequent", "context", "hyp_embeddings", "concl_embedding")

    def __init__(self, hs, sequent, context, hyp_embeddings, concl_embedding):
        self.hol = hs
        self.sequent = sequent
        self.context = context
        self.hyp_embeddings = hyp_embeddings
        self.concl_embedding = concl_embedding


# ---------------------------------------------------------------------------
# Closure-canonical form


def _app_spine(base: BaseTheory, t: Term) -> Tuple[Term, List[Term]]:
    """Split app(app(h, a), b) .. into (h, [a, b, ..])."""
    args: List[Term] = []
    while isinstance(t, App) and t.sym == base.app and len(t.args) == 2:
        args.append(t.args[1])
        t = t.args[0]
    args.reverse()
    return t, args


def is_closure_canonical(emb: Embedder, t: Term) -> bool:
    """True iff every closure variable is applied to exactly its registered
    capture list, recursively."""
    s = emb.ws.sig
    head, args = _app_spine(emb.base, t)
    if isinstance(head, Var) and is_lambda_name(s.name_of(head.sym)):
        entry = emb.lookup_lambda(s.name_of(head.sym))
        if entry is None:
            return False
        k = len(entry.captures)
        if len(args) < k:
            return False
        expect = [Var(s.variable(v.name)) for v in entry.captures]
        if args[:k] != expect:
            return False
        return all(is_closure_canonical(emb, a) for a in args[k:])
    if isinstance(head, App):
        if not all(is_closure_canonical(emb, a) for a in head.args):
            return False
    return all(is_closure_canonical(emb, a) for a in args)


def unembed_term(
    emb: Embedder, t: Term, tyenv: Mapping[str, HolType]
) -> HolTerm:
    """Reconstruct the lambda term a set term is the image of.

    `tyenv` assigns a type to every term variable that may occur. Closure
    variables applied to arbitrary arguments (the non-canonical shapes that
    substitution creates) are resolved through the registry: the first
    `len(captures)` arguments substitute the captures inside the registered
    abstraction, the rest become applications.
    """
    s = emb.ws.sig
    base = emb.base
    head, args = _app_spine(base, t)
    if isinstance(head, Var):
        name = s.name_of(head.sym)
        if is_lambda_name(name):
            entry = emb.lookup_lambda(name)
            if entry is None:
                raise NotAnEmbeddingImage(f"unknown closure variable {name!r}")
            k = len(entry.captures)
            if len(args) < k:
                raise NotAnEmbeddingImage(
                    f"closure {name!r} expects {k} capture argument(s), got {len(args)}"
                )
            m = {
                v: unembed_term(emb, a, tyenv)
                for v, a in zip(entry.captures, args[:k])
            }
            out: HolTerm = hol.vsubst(entry.abs, m)
            rest = args[k:]
        else:
            ty = tyenv.get(name)
            if ty is None:
                raise NotAnEmbeddingImage(f"variable {name!r} has no assigned type")
            out = HVar(name, ty)
            rest = args
        for a in rest:
            out = HComb(out, unembed_term(emb, a, tyenv))
        return out
    if isinstance(head, App):
        if head == base.top_t and not args:
            return HConst("T", BOOL, {})
        if head.sym == base.eqfn and len(head.args) == 1:
            ty = emb.unembed_type(head.args[0])
            out = HConst("=", Fun(TyVar("A"), Fun(TyVar("A"), BOOL)), {"A": ty})
            for a in args:
                out = HComb(out, unembed_term(emb, a, tyenv))
            return out
        for name, (sym, generic, order) in emb.fol_consts.items():
            if head.sym == sym and len(head.args) == len(order):
                inst = {v: emb.unembed_type(a) for v, a in zip(order, head.args)}
                out = HConst(name, generic, inst)
                for a in args:
                    out = HComb(out, unembed_term(emb, a, tyenv))
                return out
    raise NotAnEmbeddingImage(f"not the image of a lambda term: {t!r}")


def recanonicalize_term(
    emb: Embedder, t: Term, tyenv: Mapping[str, HolType]
) -> Tuple[Term, HolTerm]:
    """The closure-canonical form of an embedding image, with the lambda
    term it denotes. Fresh closures are registered as a side effect."""
    h = unembed_term(emb, t, tyenv)
    return emb.embed_term(h, checked=True), h


# ---------------------------------------------------------------------------
# Registry persistence


def save_registry(emb: Embedder, path: str) -> None:
    lines = []
    for e in emb.entries():
        q = urllib.parse.quote(e.key, safe="")
        caps = " ".join(f"({v.name} {print_type(v.ty)})" for v in e.captures)
        tvs = " ".join(e.tyvars)
        rep = urllib.parse.quote(print_term(e.abs), safe="")
        lines.append(f"{e.index} {q} ({caps}) ({tvs}) {rep}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


def load_registry(emb: Embedder, path: str) -> int:
    """Re-register saved abstractions, reclaiming their original indices.

    Must run against a registry that has not handed out indices yet."""
    from .printer import read_sexps

    count = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) < 5:
                raise ParseError(f"registry line {lineno}: expected 5 fields")
            try:
                index = int(toks[0])
            except ValueError:
                raise ParseError(f"registry line {lineno}: bad index {toks[0]!r}")
            rep = urllib.parse.unquote(toks[-1])
            a = hol.parse_term(emb.consts, rep)
            if not isinstance(a, HAbs):
                raise ParseError(f"registry line {lineno}: representative is not an abstraction")
            if emb._next != index:
                raise ParseError(
                    f"registry line {lineno}: index {index} out of order (expected {emb._next})"
                )
            entry = emb.register_abstraction(a)
            if entry.index != index:
                raise ParseError(
                    f"registry line {lineno}: abstraction already registered as {entry.name}"
                )
            count += 1
    return count


def get_embedder(ws: Workspace) -> Embedder:
    emb = ws.ext.get("embedder")
    if emb is None:
        emb = Embedder(ws)
    return emb
