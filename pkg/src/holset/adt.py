"""Algebraic datatype compiler.

A datatype is declared by listing constructors and their argument sorts,
where a sort is either a set-valued term over the type parameters or a
self-reference.  The compiler encodes constructor values as tagged tuples
(the tag is a von Neumann numeral fixed by declaration order, the arguments
form a right-nested pair chain), builds the one-step membership formula

    z in F(H)  <->  exists args. z = (tag_i, args) and each arg in its sort,

obtains the levels function f by an admitted recursion instance at omega
(f(0) is empty, f(n+1) = F(f(n))), carves the carrier A out of union over
the levels using replacement plus union, and defines each constructor as a
symbol: nullary constructors name their tagged tuple directly, constructors
with arguments are curried functions obtained from an admitted graph
existence statement plus a derived uniqueness proof.

Everything else is proved in the kernel: typing of every constructor,
injectivity of each constructor, disjointness of distinct constructors,
and a structural induction principle instantiated per predicate.
"""

from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from . import toolkit as tk
from .base import BaseTheory, define_by_membership, define_by_term
from .definitions import pointwise_unique, template_exists_one
from .errors import (
    ArityError,
    DuplicateAdt,
    DuplicateName,
    InvalidSort,
    NotAnEmbeddingImage,
    ParseError,
    UnknownSymbol,
    UnknownTypeConstructor,
)
from .fol import (
    And,
    Exists,
    Forall,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Sequent,
    Term,
    Var,
    subst_formula,
)
from .hol import BOOL, IND, Fun, HolType, TyCon, TyVar
from .kernel import Theorem, Workspace
from .printer import print_formula


class SelfRef:
    """Marker sort: the datatype under definition."""

    _instance: Optional["SelfRef"] = None

    def __new__(cls) -> "SelfRef":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Self"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SelfRef)

    def __hash__(self) -> int:
        return hash("SelfRef")


SELF = SelfRef()

Sort = object  # SelfRef | Term


class AdtSpec:
    """A datatype declaration: name, type parameters, constructor list.

    Each constructor is a pair (name, sorts) where every sort is either
    SELF or a set-valued term whose free variables are type parameters.
    """

    __slots__ = ("name", "type_params", "constructors")

    def __init__(
        self,
        name: str,
        type_params: Sequence[str],
        constructors: Sequence[Tuple[str, Sequence[Sort]]],
    ) -> None:
        self.name = name
        self.type_params = tuple(type_params)
        self.constructors = tuple(
            (cname, tuple(sorts)) for cname, sorts in constructors
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdtSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.type_params == other.type_params
            and self.constructors == other.constructors
        )

    def __hash__(self) -> int:
        return hash((self.name, self.type_params, self.constructors))

    def __repr__(self) -> str:
        ctors = " | ".join(
            "{}({})".format(c, ", ".join(repr(s) for s in ss))
            for c, ss in self.constructors
        )
        params = "[{}]".format(", ".join(self.type_params)) if self.type_params else ""
        return f"adt {self.name}{params} = {ctors}"


def validate_spec(ws: Workspace, spec: AdtSpec) -> Tuple[int, ...]:
    """Check a declaration for well-formedness.

    Returns the tuple of type-parameter variable symbols.  Raises
    InvalidSort for an unusable sort list, DuplicateName for repeated
    constructor names, ArityError for malformed parameter lists.
    """
    s = ws.sig
    if not spec.name or not isinstance(spec.name, str):
        raise InvalidSort("datatype needs a nonempty name")
    if len(set(spec.type_params)) != len(spec.type_params):
        raise ArityError(f"{spec.name}: repeated type parameter")
    for p in spec.type_params:
        if not p or not isinstance(p, str):
            raise ArityError(f"{spec.name}: type parameters must be nonempty names")
    if not spec.constructors:
        raise InvalidSort(f"{spec.name}: a datatype needs at least one constructor")
    seen: Set[str] = set()
    params = tuple(s.variable(p) for p in spec.type_params)
    allowed = set(params)
    has_base = False
    for cname, sorts in spec.constructors:
        if not cname or not isinstance(cname, str):
            raise InvalidSort(f"{spec.name}: constructor needs a nonempty name")
        if cname in seen:
            raise DuplicateName(f"{spec.name}: constructor {cname} declared twice")
        seen.add(cname)
        self_free = True
        for sort in sorts:
            if isinstance(sort, SelfRef):
                self_free = False
                continue
            if not isinstance(sort, Term):
                raise InvalidSort(
                    f"{spec.name}.{cname}: sorts must be terms or Self"
                )
            if not set(sort.free) <= allowed:
                raise InvalidSort(
                    f"{spec.name}.{cname}: sort mentions a variable that is "
                    "not a type parameter"
                )
        if self_free:
            has_base = True
    if not has_base:
        raise InvalidSort(
            f"{spec.name}: at least one constructor must not mention Self"
        )
    return params


# ---------------------------------------------------------------------------
# tuple encoding and the one-step membership formula


def _pick(taken: Set[str], stem: str) -> str:
    """A variable name based on stem that is not in taken; records it."""
    name = stem
    k = 2
    while name in taken:
        name = f"{stem}_{k}"
        k += 1
    taken.add(name)
    return name


def _rtuple(b: BaseTheory, terms: Sequence[Term]) -> Term:
    cur = terms[-1]
    for t in reversed(terms[:-1]):
        cur = b.opair_t(t, cur)
    return cur


def _tagged(b: BaseTheory, index: int, terms: Sequence[Term]) -> Term:
    tag = b.numeral(index)
    return tag if not terms else b.opair_t(tag, _rtuple(b, terms))


def _or_fold(parts: Sequence[Formula]) -> Formula:
    cur = parts[-1]
    for f in reversed(parts[:-1]):
        cur = Or(f, cur)
    return cur


def _and_fold(parts: Sequence[Formula]) -> Formula:
    cur = parts[-1]
    for f in reversed(parts[:-1]):
        cur = And(f, cur)
    return cur


def member_disjuncts(
    b: BaseTheory,
    spec: AdtSpec,
    z: Term,
    hole: Term,
    binders: Sequence[int],
) -> List[Formula]:
    """The per-constructor disjuncts of  z in F(hole).

    binders supplies the bound argument variables (shared across
    constructors; each uses the first arity-many).
    """
    s = b.ws.sig
    parts: List[Formula] = []
    for index, (cname, sorts) in enumerate(spec.constructors):
        n = len(sorts)
        if n == 0:
            parts.append(s.eq(z, b.numeral(index)))
            continue
        xs = binders[:n]
        tup = _tagged(b, index, [Var(x) for x in xs])
        doms = [hole if isinstance(srt, SelfRef) else srt for srt in sorts]
        mems = [s.member(Var(x), d) for x, d in zip(xs, doms)]
        body: Formula = And(s.eq(z, tup), _and_fold(mems))
        for x in reversed(xs):
            body = Exists(x, body)
        parts.append(body)
    return parts


class AdtFunctor:
    """The one-step membership formula of a datatype, with its holes.

    formula says  elem in F(hole)  where F is the set operation whose
    least fixed point (reached at omega) is the datatype's carrier.
    """

    __slots__ = ("spec", "elem", "hole", "formula", "disjuncts")

    def __init__(
        self,
        spec: AdtSpec,
        elem: Term,
        hole: Term,
        disjuncts: Sequence[Formula],
    ) -> None:
        self.spec = spec
        self.elem = elem
        self.hole = hole
        self.disjuncts = tuple(disjuncts)
        self.formula = _or_fold(disjuncts)


def functor(b: BaseTheory, spec: AdtSpec) -> AdtFunctor:
    """Build the one-step membership formula for a declaration."""
    ws = b.ws
    s = ws.sig
    validate_spec(ws, spec)
    taken = set(spec.type_params)
    z = Var(s.variable(_pick(taken, "z")))
    hole = Var(s.variable(_pick(taken, "H")))
    arity = max(len(ss) for _, ss in spec.constructors)
    binders = [s.variable(_pick(taken, f"x{j + 1}")) for j in range(arity)]
    parts = member_disjuncts(b, spec, z, hole, binders)
    return AdtFunctor(spec, z, hole, parts)


# ---------------------------------------------------------------------------
# compiled artifacts


class AdtConstructor:
    """One compiled constructor: its symbol and per-constructor theorems."""

    __slots__ = (
        "name",
        "index",
        "sorts",
        "sym",
        "term",
        "defining",
        "typing",
        "symbol_typing",
    )

    def __init__(self, name: str, index: int, sorts: Tuple[Sort, ...]) -> None:
        self.name = name
        self.index = index
        self.sorts = sorts
        self.sym = None
        self.term: Optional[Term] = None
        self.defining: Optional[Theorem] = None
        self.typing: Optional[Theorem] = None
        self.symbol_typing: Optional[Theorem] = None


class AdtArtifacts:
    """Everything the compiler produced for one datatype."""

    __slots__ = (
        "spec",
        "params",
        "binders",
        "tags",
        "set_sym",
        "set_term",
        "levels_sym",
        "member_iff",
        "constructors",
        "typing",
        "injectivity1",
        "injectivity2",
        "induction",
    )

    def __init__(self, spec: AdtSpec) -> None:
        self.spec = spec
        self.params: Tuple[int, ...] = ()
        self.binders: Tuple[int, ...] = ()
        self.tags: Dict[str, int] = {}
        self.set_sym = None
        self.set_term: Optional[Term] = None
        self.levels_sym = None
        self.member_iff: Optional[Theorem] = None
        self.constructors: Tuple[AdtConstructor, ...] = ()
        self.typing: Tuple[Theorem, ...] = ()
        self.injectivity1: Tuple[Tuple[str, Optional[Theorem]], ...] = ()
        self.injectivity2: Dict[Tuple[str, str], Theorem] = {}
        self.induction: Optional[Callable[[Formula, int], Theorem]] = None

    def constructor(self, name: str) -> AdtConstructor:
        for c in self.constructors:
            if c.name == name:
                return c
        raise UnknownSymbol(f"{self.spec.name}: no constructor named {name}")


class _Builder:
    """Single-use compilation pass for one validated declaration."""

    def __init__(self, tac, spec: AdtSpec) -> None:
        self.tac = tac
        self.ws: Workspace = tac.ws
        self.b: BaseTheory = tac.base
        self.s = tac.ws.sig
        self.spec = spec
        self.params = validate_spec(self.ws, spec)
        self.art = AdtArtifacts(spec)
        self.art.params = self.params
        taken = set(spec.type_params)
        s = self.s
        self.zv = s.variable(_pick(taken, "z"))
        self.hv = s.variable(_pick(taken, "H"))
        self.gv = s.variable(_pick(taken, "g"))
        self.nv = s.variable(_pick(taken, "n"))
        self.cv = s.variable(_pick(taken, "c"))
        self.mv = s.variable(_pick(taken, "m"))
        self.Yv = s.variable(_pick(taken, "Y"))
        self.srcv = s.variable(_pick(taken, "src"))
        arity = max(len(ss) for _, ss in spec.constructors)
        self.xs = [s.variable(_pick(taken, f"x{j + 1}")) for j in range(arity)]
        self.ys = [s.variable(_pick(taken, f"y{j + 1}")) for j in range(arity)]
        self.art.binders = tuple(self.xs)
        # filled in as the pass runs
        self.f_sym = None
        self.fX: Optional[Term] = None
        self.eq0: Optional[Theorem] = None
        self.steps: Optional[Theorem] = None
        self.steps_f: Optional[Formula] = None
        self.A_t: Optional[Term] = None
        self.chi: Optional[Formula] = None
        self._chain_mono: Optional[Theorem] = None
        self._mem_mono: Optional[Theorem] = None

    # -- small helpers ----------------------------------------------------

    def doms(self, sorts: Sequence[Sort], hole: Term) -> List[Term]:
        return [hole if isinstance(srt, SelfRef) else srt for srt in sorts]

    def level(self, n_term: Term) -> Term:
        return self.b.app_t(self.fX, n_term)

    def disjuncts(self, z: Term, hole: Term) -> List[Formula]:
        return member_disjuncts(self.b, self.spec, z, hole, self.xs)

    def or_inject(self, proof: Theorem, parts: Sequence[Formula], i: int) -> Theorem:
        """From a proof of parts[i], conclude the right-nested disjunction."""
        ws = self.ws
        cur = proof
        if i < len(parts) - 1:
            suffix = _or_fold(parts[i + 1 :])
            cur = ws.ror(cur, parts[i], suffix)
            acc: Formula = Or(parts[i], suffix)
        else:
            acc = parts[i]
        for j in range(i - 1, -1, -1):
            cur = ws.ror(cur, parts[j], acc)
            acc = Or(parts[j], acc)
        return cur

    def or_elim(
        self, branches: Sequence[Theorem], parts: Sequence[Formula]
    ) -> Theorem:
        """Merge branches that each assume one disjunct on the left."""
        ws = self.ws
        cur = branches[-1]
        acc = parts[-1]
        for j in range(len(parts) - 2, -1, -1):
            cur = ws.lor(branches[j], cur, parts[j], acc)
            acc = Or(parts[j], acc)
        return cur

    def conj_parts(
        self, owner: Theorem, conj: Formula, count: int
    ) -> List[Theorem]:
        """Split .. |- conj (right-nested, count parts) into part theorems."""
        ws = self.ws
        out: List[Theorem] = []
        cur_t, cur_f = owner, conj
        for _ in range(count - 1):
            out.append(ws.cut(cur_t, tk.sel_and_l(ws, cur_f.left, cur_f.right), cur_f))
            cur_t = ws.cut(cur_t, tk.sel_and_r(ws, cur_f.left, cur_f.right), cur_f)
            cur_f = cur_f.right
        out.append(cur_t)
        return out

    def conj_intro(self, thms: Sequence[Theorem], parts: Sequence[Formula]) -> Theorem:
        ws = self.ws
        cur = thms[-1]
        acc = parts[-1]
        for j in range(len(parts) - 2, -1, -1):
            cur = ws.rand(thms[j], cur, parts[j], acc)
            acc = And(parts[j], acc)
        return cur

    def conj_formulas(self, conj: Formula, count: int) -> List[Formula]:
        parts: List[Formula] = []
        cur = conj
        for _ in range(count - 1):
            parts.append(cur.left)
            cur = cur.right
        parts.append(cur)
        return parts

    def open_exists(
        self, f: Formula, count: int, eigens: Sequence[int]
    ) -> Tuple[List[Formula], Formula]:
        """Peel count existentials at the given eigenvariables.

        Returns the list of intermediate quantified formulas (for closing
        with lex/rex afterwards) and the fully opened body.
        """
        stack: List[Formula] = []
        cur = f
        for k in range(count):
            stack.append(cur)
            cur = subst_formula(self.s, cur.body, {cur.var: Var(eigens[k])})
        return stack, cur

    def level_iff_at(
        self, n_term: Term, n_nat: Theorem, z_term: Term
    ) -> Theorem:
        """.. |- z in f(succ n) <-> (one-step membership over f(n))."""
        ws, s = self.ws, self.s
        step = tk.bounded_forall_elim(ws, self.steps, n_nat, self.steps_f, n_term)
        inner = subst_formula(s, self.steps_f.body.right, {self.steps_f.var: n_term})
        return tk.forall_elim(ws, step, inner, z_term)

    # -- the levels function ----------------------------------------------

    def build_levels(self) -> None:
        ws, b, s = self.ws, self.b, self.s
        hole_parts = member_disjuncts(
            b, self.spec, Var(self.zv), Var(self.hv), self.xs
        )
        body = _or_fold(hole_parts)
        phi, rec = b.recursion_instance(
            self.gv, self.zv, self.hv, body, params=self.params
        )
        self.f_sym, f_axiom = ws.define_symbol(
            f"{self.spec.name}_f", self.params, self.gv, phi, rec
        )
        self.fX = s.mkapp(self.f_sym, *[Var(p) for p in self.params])
        (ax_f,) = f_axiom.sequent.right
        inst = tk.forall_elim(ws, f_axiom, ax_f, self.fX)
        iff_f = subst_formula(s, ax_f.body, {ax_f.var: self.fX})
        props = tk.iff_mp(ws, inst, ws.refl(self.fX), iff_f.left, iff_f.right)
        props_f = iff_f.right
        self.eq0 = tk.and_left(ws, props, props_f.left, props_f.right)
        self.steps = tk.and_right(ws, props, props_f.left, props_f.right)
        self.steps_f = props_f.right

    # -- the carrier ------------------------------------------------------

    def build_carrier(self) -> None:
        ws, b, s = self.ws, self.b, self.s
        zv, nv, Yv = self.zv, self.nv, self.Yv
        chi = Exists(
            nv,
            And(s.member(Var(nv), b.nat_t), s.member(Var(zv), self.level(Var(nv)))),
        )
        self.chi = chi
        psi = s.eq(Var(Yv), self.level(Var(nv)))
        Bv = s.fresh_var("B")
        auxv = s.fresh_var("Y")
        repl = ws.replacement(nv, Yv, self.srcv, psi, fresh_out=Bv, fresh_aux=auxv)
        repl = ws.inst(repl, {self.srcv: b.nat_t})
        (implf,) = repl.sequent.right
        prem, exb = implf.left, implf.right
        # functional premise: psi is an explicit graph, so uniqueness is
        # equational reasoning
        psi2 = subst_formula(s, psi, {Yv: Var(auxv)})
        conj = And(psi, psi2)
        p1, p2 = self.conj_parts(ws.hypothesis(conj), conj, 2)
        fn = self.level(Var(nv))
        core = tk.eq_trans(
            ws,
            p1,
            tk.eq_sym(ws, p2, Var(auxv), fn),
            Var(Yv),
            fn,
            Var(auxv),
        )
        step = tk.imp_intro(ws, core, conj, s.eq(Var(Yv), Var(auxv)))
        allf = Forall(auxv, Imp(conj, s.eq(Var(Yv), Var(auxv))))
        step = ws.rall(step, allf, auxv)
        allf2 = Forall(Yv, allf)
        step = ws.rall(step, allf2, Yv)
        memf = s.member(Var(nv), b.nat_t)
        step = tk.imp_intro(ws, step, memf, allf2)
        step = ws.rall(step, prem, nv)
        exb_thm = tk.mp(ws, repl, step, prem, exb)
        # under an eigen B satisfying the image property, union(B) collects
        # exactly the members of the levels
        Bev = s.fresh_var("B")
        hb_f = subst_formula(s, exb.body, {exb.var: Var(Bev)})
        hb = ws.hypothesis(hb_f)
        S_t = s.mkapp(ws.UNION, Var(Bev))
        um = ws.inst(b.union_member(), {b.vx: Var(Bev), b.vz: Var(zv)})
        (um_f,) = um.sequent.right
        # forward: z in union(B) implies chi
        fwd_h = ws.hypothesis(s.member(Var(zv), S_t))
        ex_y = tk.iff_mp(ws, um, fwd_h, um_f.left, um_f.right)
        uy = s.fresh_var("u")
        ex_body = subst_formula(s, um_f.right.body, {um_f.right.var: Var(uy)})
        use_h = ws.hypothesis(ex_body)
        in_b, z_in_u = self.conj_parts(use_h, ex_body, 2)
        hb_at = tk.forall_elim(ws, hb, hb_f, Var(uy))
        hb_at_f = subst_formula(s, hb_f.body, {hb_f.var: Var(uy)})
        ex_n = tk.iff_mp(ws, hb_at, in_b, hb_at_f.left, hb_at_f.right)
        env = s.fresh_var("n")
        n_body = subst_formula(s, hb_at_f.right.body, {hb_at_f.right.var: Var(env)})
        use2 = ws.hypothesis(n_body)
        n_nat, u_eq = self.conj_parts(use2, n_body, 2)
        z_in_f = tk.rw_right(
            ws,
            u_eq,
            z_in_u,
            s.member(Var(zv), Var(uy)),
            Var(uy),
            self.level(Var(env)),
        )
        chi_core = ws.rand(
            n_nat,
            z_in_f,
            s.member(Var(env), b.nat_t),
            s.member(Var(zv), self.level(Var(env))),
        )
        chi_thm = ws.rex(chi_core, chi, Var(env))
        chi_thm = tk.exists_elim(ws, ex_n, chi_thm, hb_at_f.right, env)
        chi_thm = tk.exists_elim(ws, ex_y, chi_thm, um_f.right, uy)
        fwd = tk.imp_intro(ws, chi_thm, s.member(Var(zv), S_t), chi)
        # backward: chi implies z in union(B)
        bwd_h = ws.hypothesis(chi)
        env2 = s.fresh_var("n")
        chi_body = subst_formula(s, chi.body, {chi.var: Var(env2)})
        useb = ws.hypothesis(chi_body)
        n_nat2, z_in_f2 = self.conj_parts(useb, chi_body, 2)
        fn2 = self.level(Var(env2))
        hb_at2 = tk.forall_elim(ws, hb, hb_f, fn2)
        hb_at2_f = subst_formula(s, hb_f.body, {hb_f.var: fn2})
        eq_ex = ws.rand(
            n_nat2,
            ws.refl(fn2),
            s.member(Var(env2), b.nat_t),
            s.eq(fn2, fn2),
        )
        eq_ex = ws.rex(eq_ex, hb_at2_f.right, Var(env2))
        f_in_b = tk.iff_mpr(ws, hb_at2, eq_ex, hb_at2_f.left, hb_at2_f.right)
        pair = ws.rand(
            f_in_b,
            z_in_f2,
            s.member(fn2, Var(Bev)),
            s.member(Var(zv), fn2),
        )
        in_union = tk.iff_mpr(
            ws,
            um,
            ws.rex(pair, um_f.right, fn2),
            um_f.left,
            um_f.right,
        )
        in_union = tk.exists_elim(ws, bwd_h, in_union, chi, env2)
        bwd = tk.imp_intro(ws, in_union, chi, s.member(Var(zv), S_t))
        both = ws.riff(fwd, bwd, s.member(Var(zv), S_t), chi)
        both = ws.rall(both, Forall(zv, Iff(s.member(Var(zv), S_t), chi)), zv)
        Sv = s.fresh_var("S")
        ex_goal = Exists(Sv, Forall(zv, Iff(s.member(Var(zv), Var(Sv)), chi)))
        ex_S = ws.rex(both, ex_goal, S_t)
        existence = tk.exists_elim(ws, exb_thm, ex_S, exb, Bev)
        set_sym, member_iff, _ = define_by_membership(
            ws, self.spec.name, self.params, self.zv, chi, existence
        )
        self.art.set_sym = set_sym
        self.art.member_iff = member_iff
        self.A_t = s.mkapp(set_sym, *[Var(p) for p in self.params])
        self.art.set_term = self.A_t

    def in_A_intro(
        self, z_term: Term, n_term: Term, n_nat: Theorem, z_in: Theorem
    ) -> Theorem:
        """From .. |- n in nat and .. |- z in f(n), reach .. |- z in A."""
        ws, s = self.ws, self.s
        iff = self.art.member_iff
        (iff_all,) = iff.sequent.right
        at_z = tk.forall_elim(ws, iff, iff_all, z_term)
        at_z_f = subst_formula(s, iff_all.body, {iff_all.var: z_term})
        pair = ws.rand(
            n_nat,
            z_in,
            s.member(n_term, self.b.nat_t),
            s.member(z_term, self.level(n_term)),
        )
        ex = ws.rex(pair, at_z_f.right, n_term)
        return tk.iff_mpr(ws, at_z, ex, at_z_f.left, at_z_f.right)

    def in_A_elim(self, z_term: Term, z_in_A: Theorem) -> Tuple[Theorem, Formula]:
        """From .. |- z in A, reach .. |- exists n. n in nat and z in f(n)."""
        ws, s = self.ws, self.s
        iff = self.art.member_iff
        (iff_all,) = iff.sequent.right
        at_z = tk.forall_elim(ws, iff, iff_all, z_term)
        at_z_f = subst_formula(s, iff_all.body, {iff_all.var: z_term})
        return (
            tk.iff_mp(ws, at_z, z_in_A, at_z_f.left, at_z_f.right),
            at_z_f.right,
        )

    # -- monotonicity of the levels (needed past one self argument) -------

    def chain_mono(self) -> Theorem:
        """|- all n in nat. all z. z in f(n) -> z in f(succ n)."""
        if self._chain_mono is not None:
            return self._chain_mono
        ws, b, s = self.ws, self.b, self.s
        zv, nv = self.zv, self.nv
        sn = b.succ_t(Var(nv))
        ssn = b.succ_t(sn)
        pform = Forall(
            zv,
            Imp(
                s.member(Var(zv), self.level(Var(nv))),
                s.member(Var(zv), self.level(sn)),
            ),
        )
        # base: f(0) is empty, so the antecedent is absurd
        p0 = subst_formula(s, pform, {nv: b.empty_t})
        h0 = ws.hypothesis(s.member(Var(zv), self.level(b.empty_t)))
        h0r = tk.rw_right(
            ws,
            self.eq0,
            h0,
            s.member(Var(zv), self.level(b.empty_t)),
            self.level(b.empty_t),
            b.empty_t,
        )
        absurd = tk.contradiction(
            ws, h0r, b._not_in_empty_at(Var(zv)), s.member(Var(zv), b.empty_t)
        )
        base = ws.rweak(absurd, p0.body.right)
        base = tk.imp_intro(ws, base, p0.body.left, p0.body.right)
        base = ws.rall(base, p0, zv)
        # step: each disjunct over f(n) also holds over f(succ n), lifting
        # self arguments through the induction hypothesis
        n_nat = ws.hypothesis(s.member(Var(nv), b.nat_t))
        ih = ws.hypothesis(pform)
        hz_f = s.member(Var(zv), self.level(sn))
        hz = ws.hypothesis(hz_f)
        low = self.disjuncts(Var(zv), self.level(Var(nv)))
        high = self.disjuncts(Var(zv), self.level(sn))
        li = self.level_iff_at(Var(nv), n_nat, Var(zv))
        (li_f,) = li.sequent.right
        memf_low = tk.iff_mp(ws, li, hz, li_f.left, li_f.right)
        branches: List[Theorem] = []
        for j, (cname, sorts) in enumerate(self.spec.constructors):
            nargs = len(sorts)
            if nargs == 0:
                branches.append(self.or_inject(ws.hypothesis(low[j]), high, j))
                continue
            eigens = [s.fresh_var(s.name_of(x)) for x in self.xs[:nargs]]
            stack, opened = self.open_exists(low[j], nargs, eigens)
            use = ws.hypothesis(opened)
            eq_part, conj_part = self.conj_parts(use, opened, 2)
            mems = self.conj_parts(conj_part, opened.right, nargs)
            lifted: List[Theorem] = []
            for k, srt in enumerate(sorts):
                if isinstance(srt, SelfRef):
                    at = tk.forall_elim(ws, ih, pform, Var(eigens[k]))
                    at_f = subst_formula(s, pform.body, {zv: Var(eigens[k])})
                    lifted.append(tk.mp(ws, at, mems[k], at_f.left, at_f.right))
                else:
                    lifted.append(mems[k])
            stack_hi, opened_hi = self.open_exists(high[j], nargs, eigens)
            core = ws.rand(
                eq_part,
                self.conj_intro(lifted, self.conj_formulas(opened_hi.right, nargs)),
                opened_hi.left,
                opened_hi.right,
            )
            for k in range(nargs - 1, -1, -1):
                core = ws.rex(core, stack_hi[k], Var(eigens[k]))
            branch = self.or_inject(core, high, j)
            for k in range(nargs - 1, -1, -1):
                branch = ws.lex(branch, stack[k], eigens[k])
            branches.append(branch)
        merged = self.or_elim(branches, low)
        merged = ws.cut(memf_low, merged, _or_fold(low))
        sn_nat = tk.apply_lemma(ws, b.succ_in_nat(), {b.vx: Var(nv)}, n_nat)
        li_hi = self.level_iff_at(sn, sn_nat, Var(zv))
        (li_hi_f,) = li_hi.sequent.right
        merged = tk.iff_mpr(ws, li_hi, merged, li_hi_f.left, li_hi_f.right)
        step = tk.imp_intro(ws, merged, hz_f, s.member(Var(zv), self.level(ssn)))
        p_succ = subst_formula(s, pform, {nv: sn})
        step = ws.rall(step, p_succ, zv)
        self._chain_mono = b.nat_induction(pform, nv, base, step)
        return self._chain_mono

    def mem_mono(self) -> Theorem:
        """|- all n in nat. all m. m in n -> all z. z in f(m) -> z in f(n)."""
        if self._mem_mono is not None:
            return self._mem_mono
        ws, b, s = self.ws, self.b, self.s
        zv, nv, mv = self.zv, self.nv, self.mv
        cm = self.chain_mono()
        (cm_f,) = cm.sequent.right
        inner = Forall(
            zv,
            Imp(
                s.member(Var(zv), self.level(Var(mv))),
                s.member(Var(zv), self.level(Var(nv))),
            ),
        )
        pform = Forall(mv, Imp(s.member(Var(mv), Var(nv)), inner))
        # base: m in 0 is absurd
        p0 = subst_formula(s, pform, {nv: b.empty_t})
        hm = ws.hypothesis(s.member(Var(mv), b.empty_t))
        absurd = tk.contradiction(
            ws, hm, b._not_in_empty_at(Var(mv)), s.member(Var(mv), b.empty_t)
        )
        base = ws.rweak(absurd, p0.body.right)
        base = tk.imp_intro(ws, base, p0.body.left, p0.body.right)
        base = ws.rall(base, p0, mv)
        # step
        n_nat = ws.hypothesis(s.member(Var(nv), b.nat_t))
        ih = ws.hypothesis(pform)
        sn = b.succ_t(Var(nv))
        sm = ws.inst(b.succ_member(), {b.vz: Var(mv), b.vy: Var(nv)})
        (sm_f,) = sm.sequent.right
        hms = ws.hypothesis(s.member(Var(mv), sn))
        split = tk.iff_mp(ws, sm, hms, sm_f.left, sm_f.right)
        cm_at = tk.bounded_forall_elim(ws, cm, n_nat, cm_f, Var(nv))
        cm_at_f = subst_formula(s, cm_f.body.right, {cm_f.var: Var(nv)})
        cm_z_f = subst_formula(s, cm_at_f.body, {cm_at_f.var: Var(zv)})
        inner_succ = Forall(
            zv,
            Imp(
                s.member(Var(zv), self.level(Var(mv))),
                s.member(Var(zv), self.level(sn)),
            ),
        )
        # case m in n: compose the induction hypothesis with one chain step
        ih_at = tk.forall_elim(ws, ih, pform, Var(mv))
        case1_mem = ws.hypothesis(s.member(Var(mv), Var(nv)))
        ih_inner = tk.mp(ws, ih_at, case1_mem, pform.body.left, pform.body.right)
        hzm = ws.hypothesis(s.member(Var(zv), self.level(Var(mv))))
        z_in_n = tk.mp(
            ws,
            tk.forall_elim(ws, ih_inner, inner, Var(zv)),
            hzm,
            inner.body.left,
            inner.body.right,
        )
        z_in_sn = tk.mp(
            ws,
            tk.forall_elim(ws, cm_at, cm_at_f, Var(zv)),
            z_in_n,
            cm_z_f.left,
            cm_z_f.right,
        )
        case1 = tk.imp_intro(ws, z_in_sn, inner_succ.body.left, inner_succ.body.right)
        case1 = ws.rall(case1, inner_succ, zv)
        # case m = n: rewrite and take one chain step
        case2_eq = ws.hypothesis(s.eq(Var(mv), Var(nv)))
        hzm2 = ws.hypothesis(s.member(Var(zv), self.level(Var(mv))))
        z_in_n2 = tk.rw_right(
            ws,
            case2_eq,
            hzm2,
            s.member(Var(zv), self.level(Var(mv))),
            Var(mv),
            Var(nv),
        )
        z_in_sn2 = tk.mp(
            ws,
            tk.forall_elim(ws, cm_at, cm_at_f, Var(zv)),
            z_in_n2,
            cm_z_f.left,
            cm_z_f.right,
        )
        case2 = tk.imp_intro(ws, z_in_sn2, inner_succ.body.left, inner_succ.body.right)
        case2 = ws.rall(case2, inner_succ, zv)
        merged = tk.case_split(
            ws, split, case1, case2, sm_f.right.left, sm_f.right.right
        )
        step = tk.imp_intro(ws, merged, s.member(Var(mv), sn), inner_succ)
        p_succ = subst_formula(s, pform, {nv: sn})
        step = ws.rall(step, p_succ, mv)
        self._mem_mono = b.nat_induction(pform, nv, base, step)
        return self._mem_mono

    def lift_mem(
        self,
        to_term: Term,
        to_nat: Theorem,
        from_term: Term,
        from_in_to: Theorem,
        z_term: Term,
        z_mem: Theorem,
    ) -> Theorem:
        """Lift .. |- z in f(from) along .. |- from in to, to in nat."""
        ws, s = self.ws, self.s
        mm = self.mem_mono()
        (mm_f,) = mm.sequent.right
        l1 = tk.bounded_forall_elim(ws, mm, to_nat, mm_f, to_term)
        f1 = subst_formula(s, mm_f.body.right, {mm_f.var: to_term})
        l2 = tk.forall_elim(ws, l1, f1, from_term)
        f2 = subst_formula(s, f1.body, {f1.var: from_term})
        l3 = tk.mp(ws, l2, from_in_to, f2.left, f2.right)
        f3 = f2.right
        l4 = tk.forall_elim(ws, l3, f3, z_term)
        f4 = subst_formula(s, f3.body, {f3.var: z_term})
        return tk.mp(ws, l4, z_mem, f4.left, f4.right)

    # -- constructors ------------------------------------------------------

    def build_constructor(self, record: AdtConstructor) -> None:
        if record.sorts:
            self._build_curried(record)
        else:
            self._build_nullary(record)

    def _build_nullary(self, record: AdtConstructor) -> None:
        ws, b, s = self.ws, self.b, self.s
        tag = b.numeral(record.index)
        sym, defining, _ = define_by_term(ws, record.name, self.params, tag)
        record.sym = sym
        record.term = s.mkapp(sym, *[Var(p) for p in self.params])
        record.defining = defining
        # the tag is in f(1), hence in the carrier
        parts = self.disjuncts(tag, self.level(b.empty_t))
        core = self.or_inject(ws.refl(tag), parts, record.index)
        li = self.level_iff_at(b.empty_t, b.zero_in_nat(), tag)
        (li_f,) = li.sequent.right
        in_f1 = tk.iff_mpr(ws, li, core, li_f.left, li_f.right)
        one = b.succ_t(b.empty_t)
        one_nat = tk.apply_lemma(ws, b.succ_in_nat(), {b.vx: b.empty_t}, b.zero_in_nat())
        in_A = self.in_A_intro(tag, one, one_nat, in_f1)
        hole = s.fresh_var("hole")
        ctx = s.member(Var(hole), self.A_t)
        record.typing = tk.subst_right(
            ws,
            in_A,
            tk.eq_sym(ws, defining, record.term, tag),
            ctx,
            hole,
            tag,
            record.term,
        )
        record.symbol_typing = record.typing

    def _build_curried(self, record: AdtConstructor) -> None:
        ws, b, s = self.ws, self.b, self.s
        n = len(record.sorts)
        xs = self.xs[:n]
        doms = self.doms(record.sorts, self.A_t)
        suffix: List[Term] = [self.A_t]
        for d in reversed(doms):
            suffix.insert(0, b.arrow_t(d, suffix[0]))
        cv = self.cv
        tup = _tagged(b, record.index, [Var(x) for x in xs])
        chain: Term = Var(cv)
        for x in xs:
            chain = b.app_t(chain, Var(x))
        eqf: Formula = s.eq(chain, tup)
        for k in range(n - 1, -1, -1):
            eqf = Forall(xs[k], Imp(s.member(Var(xs[k]), doms[k]), eqf))
        template = And(s.member(Var(cv), suffix[0]), eqf)
        ex_f = Exists(cv, template)
        existence = ws.admit_schema_instance(
            "constructor-exists", print_formula(s, ex_f), Sequent((), (ex_f,))
        )
        eo = template_exists_one(
            self.tac,
            cv,
            template,
            existence,
            lambda w: pointwise_unique(self.tac, cv, w, template, xs, doms, suffix),
        )
        (stmt,) = eo.sequent.right
        for p in reversed(self.params):
            eo = ws.rall(eo, Forall(p, stmt), p)
            stmt = Forall(p, stmt)
        sym, axiom = ws.define_symbol(record.name, self.params, cv, template, eo)
        record.sym = sym
        record.term = s.mkapp(sym, *[Var(p) for p in self.params])
        (ax_f,) = axiom.sequent.right
        at = tk.forall_elim(ws, axiom, ax_f, record.term)
        at_f = subst_formula(s, ax_f.body, {ax_f.var: record.term})
        props = tk.iff_mp(ws, at, ws.refl(record.term), at_f.left, at_f.right)
        props_f = at_f.right
        record.symbol_typing = tk.and_left(ws, props, props_f.left, props_f.right)
        record.defining = tk.and_right(ws, props, props_f.left, props_f.right)

    def beta(
        self,
        record: AdtConstructor,
        witnesses: Sequence[Term],
        mem_thms: Sequence[Theorem],
    ) -> Tuple[Theorem, Term, Term]:
        """.. |- c args = (tag, args) at the given argument witnesses.

        Returns the theorem, the curried application term, and the tagged
        tuple term.
        """
        ws, b, s = self.ws, self.b, self.s
        cur_t = record.defining
        (cur_f,) = record.defining.sequent.right
        capp: Term = record.term
        for w, m in zip(witnesses, mem_thms):
            cur_t = tk.bounded_forall_elim(ws, cur_t, m, cur_f, w)
            cur_f = subst_formula(s, cur_f.body.right, {cur_f.var: w})
            capp = b.app_t(capp, w)
        return cur_t, capp, cur_f.args[1]

    # -- typing -------------------------------------------------------------

    def build_typing(self, record: AdtConstructor) -> None:
        if not record.sorts:
            self.art.typing += (record.typing,)
            return
        ws, b, s = self.ws, self.b, self.s
        n = len(record.sorts)
        xs = self.xs[:n]
        doms = self.doms(record.sorts, self.A_t)
        mems = [ws.hypothesis(s.member(Var(x), d)) for x, d in zip(xs, doms)]
        selfs = [k for k, srt in enumerate(record.sorts) if isinstance(srt, SelfRef)]
        tup = _tagged(b, record.index, [Var(x) for x in xs])
        if not selfs:
            tuple_in_A = self._tuple_in_level_zero(record, mems)
        elif len(selfs) == 1:
            tuple_in_A = self._tuple_in_level_one(record, mems, selfs[0])
        else:
            tuple_in_A = self._tuple_in_level_many(record, mems, selfs)
        beta_t, capp, _ = self.beta(record, [Var(x) for x in xs], mems)
        hole = s.fresh_var("hole")
        ctx = s.member(Var(hole), self.A_t)
        typing = tk.subst_right(
            ws,
            tuple_in_A,
            tk.eq_sym(ws, beta_t, capp, tup),
            ctx,
            hole,
            tup,
            capp,
        )
        record.typing = typing
        self.art.typing += (typing,)

    def _disjunct_core(
        self,
        record: AdtConstructor,
        hole: Term,
        mems: Sequence[Theorem],
    ) -> Theorem:
        """Prove the record's disjunct at its own tuple over the given hole,
        from memberships of the argument variables."""
        ws, b, s = self.ws, self.b, self.s
        n = len(record.sorts)
        xs = self.xs[:n]
        parts = self.disjuncts(Var(self.zv), hole)
        stack, opened = self.open_exists(parts[record.index], n, xs)
        tup = _tagged(b, record.index, [Var(x) for x in xs])
        opened_at = subst_formula(s, opened, {self.zv: tup})
        core = ws.rand(
            ws.refl(tup),
            self.conj_intro(mems, self.conj_formulas(opened_at.right, n)),
            opened_at.left,
            opened_at.right,
        )
        for k in range(n - 1, -1, -1):
            core = ws.rex(
                core,
                subst_formula(s, stack[k], {self.zv: tup}),
                Var(xs[k]),
            )
        at_parts = [subst_formula(s, p, {self.zv: tup}) for p in parts]
        return self.or_inject(core, at_parts, record.index)

    def _succ_level(
        self, record: AdtConstructor, lv_term: Term, lv_nat: Theorem,
        mems: Sequence[Theorem]
    ) -> Theorem:
        """Place the record's tuple in f(succ lv) and then in the carrier."""
        ws, b = self.ws, self.b
        n = len(record.sorts)
        tup = _tagged(b, record.index, [Var(x) for x in self.xs[:n]])
        dis = self._disjunct_core(record, self.level(lv_term), mems)
        li = self.level_iff_at(lv_term, lv_nat, tup)
        (li_f,) = li.sequent.right
        in_fs = tk.iff_mpr(ws, li, dis, li_f.left, li_f.right)
        sn = b.succ_t(lv_term)
        sn_nat = tk.apply_lemma(ws, b.succ_in_nat(), {b.vx: lv_term}, lv_nat)
        return self.in_A_intro(tup, sn, sn_nat, in_fs)

    def _tuple_in_level_zero(
        self, record: AdtConstructor, mems: Sequence[Theorem]
    ) -> Theorem:
        return self._succ_level(record, self.b.empty_t, self.b.zero_in_nat(), mems)

    def _tuple_in_level_one(
        self, record: AdtConstructor, mems: Sequence[Theorem], k: int
    ) -> Theorem:
        ws, s = self.ws, self.s
        xs = self.xs[: len(record.sorts)]
        ex_n, ex_f = self.in_A_elim(Var(xs[k]), mems[k])
        ev = s.fresh_var("n")
        body = subst_formula(s, ex_f.body, {ex_f.var: Var(ev)})
        use = ws.hypothesis(body)
        e_nat, e_mem = self.conj_parts(use, body, 2)
        level_mems = list(mems)
        level_mems[k] = e_mem
        in_A = self._succ_level(record, Var(ev), e_nat, level_mems)
        return tk.exists_elim(ws, ex_n, in_A, ex_f, ev)

    def _tuple_in_level_many(
        self, record: AdtConstructor, mems: Sequence[Theorem], selfs: List[int]
    ) -> Theorem:
        """Several self arguments: align their levels using trichotomy."""
        ws, b, s = self.ws, self.b, self.s
        xs = self.xs[: len(record.sorts)]
        tri = b.nat_trichotomy()
        (tri_f,) = tri.sequent.right
        exes: List[Tuple[Theorem, Formula]] = []
        eigens: List[int] = []
        bodies: List[Formula] = []
        for k in selfs:
            ex_n, ex_f = self.in_A_elim(Var(xs[k]), mems[k])
            ev = s.fresh_var("n")
            exes.append((ex_n, ex_f))
            eigens.append(ev)
            bodies.append(subst_formula(s, ex_f.body, {ex_f.var: Var(ev)}))
        uses = [ws.hypothesis(bd) for bd in bodies]
        nats: Dict[int, Theorem] = {}
        level_mem: Dict[int, Theorem] = {}
        for idx, k in enumerate(selfs):
            nat_t, mem_t = self.conj_parts(uses[idx], bodies[idx], 2)
            nats[k] = nat_t
            level_mem[k] = mem_t

        def finish(lv_var: int, lv_nat: Theorem, lifted: Dict[int, Theorem]) -> Theorem:
            level_mems = list(mems)
            for k in selfs:
                level_mems[k] = lifted[k]
            return self._succ_level(record, Var(lv_var), lv_nat, level_mems)

        def align(
            lv_var: int,
            lv_nat: Theorem,
            lifted: Dict[int, Theorem],
            pending: List[int],
        ) -> Theorem:
            if not pending:
                return finish(lv_var, lv_nat, lifted)
            k = pending[0]
            rest = pending[1:]
            ek = eigens[selfs.index(k)]
            tri_at = tk.bounded_forall_elim(ws, tri, lv_nat, tri_f, Var(lv_var))
            tri_f1 = subst_formula(s, tri_f.body.right, {tri_f.var: Var(lv_var)})
            tri_at = tk.bounded_forall_elim(ws, tri_at, nats[k], tri_f1, Var(ek))
            tri_body = subst_formula(s, tri_f1.body.right, {tri_f1.var: Var(ek)})
            in_f = tri_body.left
            eq_f = tri_body.right.left
            rev_f = tri_body.right.right
            # the level so far sits inside the new one: lift everything
            h1 = ws.hypothesis(in_f)
            lifted1 = {
                kk: self.lift_mem(Var(ek), nats[k], Var(lv_var), h1, Var(xs[kk]), t)
                for kk, t in lifted.items()
            }
            lifted1[k] = level_mem[k]
            br1 = align(ek, nats[k], lifted1, rest)
            # the levels agree: rewrite the new membership down
            h2 = ws.hypothesis(eq_f)
            m2 = tk.rw_right(
                ws,
                tk.eq_sym(ws, h2, Var(lv_var), Var(ek)),
                level_mem[k],
                s.member(Var(xs[k]), self.level(Var(ek))),
                Var(ek),
                Var(lv_var),
            )
            lifted2 = dict(lifted)
            lifted2[k] = m2
            br2 = align(lv_var, lv_nat, lifted2, rest)
            # the new level sits inside the one so far: lift it
            h3 = ws.hypothesis(rev_f)
            m3 = self.lift_mem(
                Var(lv_var), lv_nat, Var(ek), h3, Var(xs[k]), level_mem[k]
            )
            lifted3 = dict(lifted)
            lifted3[k] = m3
            br3 = align(lv_var, lv_nat, lifted3, rest)
            inner = tk.case_split(
                ws, ws.hypothesis(tri_body.right), br2, br3, eq_f, rev_f
            )
            return tk.case_split(ws, tri_at, br1, inner, in_f, tri_body.right)

        first = selfs[0]
        result = align(eigens[0], nats[first], {first: level_mem[first]}, selfs[1:])
        for idx in range(len(selfs) - 1, -1, -1):
            result = tk.exists_elim(
                ws, exes[idx][0], result, exes[idx][1], eigens[idx]
            )
        return result

    # -- injectivity ---------------------------------------------------------

    def build_injectivity1(self, record: AdtConstructor) -> None:
        if not record.sorts:
            self.art.injectivity1 += ((record.name, None),)
            return
        ws, b, s = self.ws, self.b, self.s
        n = len(record.sorts)
        xs = self.xs[:n]
        ysv = self.ys[:n]
        doms = self.doms(record.sorts, self.A_t)
        mem_x = [ws.hypothesis(s.member(Var(x), d)) for x, d in zip(xs, doms)]
        mem_y = [ws.hypothesis(s.member(Var(y), d)) for y, d in zip(ysv, doms)]
        beta_x, capp_x, tup_x = self.beta(record, [Var(x) for x in xs], mem_x)
        beta_y, capp_y, tup_y = self.beta(record, [Var(y) for y in ysv], mem_y)
        eq_h = ws.hypothesis(s.eq(capp_x, capp_y))
        left = tk.eq_sym(ws, beta_x, capp_x, tup_x)
        mid = tk.eq_trans(ws, eq_h, beta_y, capp_x, capp_y, tup_y)
        tup_eq = tk.eq_trans(ws, left, mid, tup_x, capp_x, tup_y)
        # peel the tag, then each pair layer
        rx = [_rtuple(b, [Var(x) for x in xs[k:]]) for k in range(n)]
        ry = [_rtuple(b, [Var(y) for y in ysv[k:]]) for k in range(n)]
        tag = b.numeral(record.index)
        first = tk.apply_lemma(
            ws,
            b.pair_injectivity(),
            {b.va: tag, b.vb: rx[0], b.vc: tag, b.vd: ry[0]},
            tup_eq,
        )
        (first_f,) = first.sequent.right
        cur = tk.and_right(ws, first, first_f.left, first_f.right)
        eqs: List[Theorem] = []
        for k in range(n - 1):
            stepl = tk.apply_lemma(
                ws,
                b.pair_injectivity(),
                {b.va: Var(xs[k]), b.vb: rx[k + 1], b.vc: Var(ysv[k]), b.vd: ry[k + 1]},
                cur,
            )
            (step_f,) = stepl.sequent.right
            eqs.append(tk.and_left(ws, stepl, step_f.left, step_f.right))
            cur = tk.and_right(ws, stepl, step_f.left, step_f.right)
        eqs.append(cur)
        parts = [s.eq(Var(x), Var(y)) for x, y in zip(xs, ysv)]
        thm = self.conj_intro(eqs, parts)
        self.art.injectivity1 += ((record.name, thm),)

    def build_injectivity2(self, rec_i: AdtConstructor, rec_j: AdtConstructor) -> None:
        ws, b, s = self.ws, self.b, self.s
        ni, nj = len(rec_i.sorts), len(rec_j.sorts)
        xs = self.xs[:ni]
        ysv = self.ys[:nj]
        doms_i = self.doms(rec_i.sorts, self.A_t)
        doms_j = self.doms(rec_j.sorts, self.A_t)
        mem_x = [ws.hypothesis(s.member(Var(x), d)) for x, d in zip(xs, doms_i)]
        mem_y = [ws.hypothesis(s.member(Var(y), d)) for y, d in zip(ysv, doms_j)]
        if ni:
            beta_i, capp_i, tup_i = self.beta(rec_i, [Var(x) for x in xs], mem_x)
        else:
            beta_i, capp_i, tup_i = rec_i.defining, rec_i.term, b.numeral(rec_i.index)
        if nj:
            beta_j, capp_j, tup_j = self.beta(rec_j, [Var(y) for y in ysv], mem_y)
        else:
            beta_j, capp_j, tup_j = rec_j.defining, rec_j.term, b.numeral(rec_j.index)
        eq_f = s.eq(capp_i, capp_j)
        eq_h = ws.hypothesis(eq_f)
        left = tk.eq_sym(ws, beta_i, capp_i, tup_i)
        mid = tk.eq_trans(ws, eq_h, beta_j, capp_i, capp_j, tup_j)
        tup_eq = tk.eq_trans(ws, left, mid, tup_i, capp_i, tup_j)
        if ni and nj:
            peeled = tk.apply_lemma(
                ws,
                b.pair_injectivity(),
                {
                    b.va: b.numeral(rec_i.index),
                    b.vb: _rtuple(b, [Var(x) for x in xs]),
                    b.vc: b.numeral(rec_j.index),
                    b.vd: _rtuple(b, [Var(y) for y in ysv]),
                },
                tup_eq,
            )
            (peeled_f,) = peeled.sequent.right
            tags_eq = tk.and_left(ws, peeled, peeled_f.left, peeled_f.right)
            neg = b.numeral_distinct(rec_i.index, rec_j.index)
            absurd = tk.contradiction(
                ws,
                tags_eq,
                neg,
                s.eq(b.numeral(rec_i.index), b.numeral(rec_j.index)),
            )
        elif not ni and not nj:
            neg = b.numeral_distinct(rec_i.index, rec_j.index)
            absurd = tk.contradiction(ws, tup_eq, neg, s.eq(tup_i, tup_j))
        elif ni:
            # left side is a pair, right side a bare numeral
            pair_t = _rtuple(b, [Var(x) for x in xs])
            neg = ws.inst(
                b.numeral_vs_pair(rec_j.index),
                {b.va: b.numeral(rec_i.index), b.vb: pair_t},
            )
            eq_pair = tk.eq_sym(ws, tup_eq, tup_i, tup_j)
            absurd = tk.contradiction(ws, eq_pair, neg, s.eq(tup_j, tup_i))
        else:
            pair_t = _rtuple(b, [Var(y) for y in ysv])
            neg = ws.inst(
                b.numeral_vs_pair(rec_i.index),
                {b.va: b.numeral(rec_j.index), b.vb: pair_t},
            )
            absurd = tk.contradiction(ws, tup_eq, neg, s.eq(tup_i, tup_j))
        thm = ws.rnot(absurd, eq_f)
        self.art.injectivity2[(rec_i.name, rec_j.name)] = thm

    # -- induction -----------------------------------------------------------

    def make_induction(self) -> Callable[[Formula, int], Theorem]:
        builder = self

        def induction(pred: Formula, xvar: int) -> Theorem:
            return builder._induction(pred, xvar)

        return induction

    def _induction(self, pred: Formula, xvar: int) -> Theorem:
        ws, b, s = self.ws, self.b, self.s
        if xvar in set(self.params):
            raise InvalidSort(
                f"{self.spec.name}: induction variable clashes with a type parameter"
            )
        spec = self.spec
        truth = s.eq(b.top_t, b.top_t)
        taken = {s.name_of(v) for v in pred.free}
        taken |= set(spec.type_params)
        taken.add(s.name_of(xvar))
        arity = max(len(ss) for _, ss in spec.constructors)
        pxs = [s.variable(_pick(taken, f"x{j + 1}")) for j in range(arity)]
        records = self.art.constructors
        premises: List[Formula] = []
        for rec in records:
            n = len(rec.sorts)
            if n == 0:
                premises.append(subst_formula(s, pred, {xvar: rec.term}))
                continue
            doms = self.doms(rec.sorts, self.A_t)
            capp: Term = rec.term
            for x in pxs[:n]:
                capp = b.app_t(capp, Var(x))
            body = subst_formula(s, pred, {xvar: capp})
            for k in range(n - 1, -1, -1):
                ih = (
                    subst_formula(s, pred, {xvar: Var(pxs[k])})
                    if isinstance(rec.sorts[k], SelfRef)
                    else truth
                )
                body = Imp(ih, body)
                body = Forall(pxs[k], Imp(s.member(Var(pxs[k]), doms[k]), body))
            premises.append(body)
        conj = _and_fold(premises)
        conj_h = ws.hypothesis(conj)
        prem_thms = self.conj_parts(conj_h, conj, len(premises))
        # inner goal over the levels: everything in f(n) satisfies pred
        nv2 = s.fresh_var("n")
        q = Forall(xvar, Imp(s.member(Var(xvar), self.level(Var(nv2))), pred))
        # base
        h0 = ws.hypothesis(s.member(Var(xvar), self.level(b.empty_t)))
        h0r = tk.rw_right(
            ws,
            self.eq0,
            h0,
            s.member(Var(xvar), self.level(b.empty_t)),
            self.level(b.empty_t),
            b.empty_t,
        )
        absurd = tk.contradiction(
            ws, h0r, b._not_in_empty_at(Var(xvar)), s.member(Var(xvar), b.empty_t)
        )
        base = ws.rweak(absurd, pred)
        q0 = subst_formula(s, q, {nv2: b.empty_t})
        base = tk.imp_intro(ws, base, q0.body.left, q0.body.right)
        base = ws.rall(base, q0, xvar)
        # step
        n_nat = ws.hypothesis(s.member(Var(nv2), b.nat_t))
        ih_q = ws.hypothesis(q)
        sn = b.succ_t(Var(nv2))
        hx_f = s.member(Var(xvar), self.level(sn))
        hx = ws.hypothesis(hx_f)
        li = self.level_iff_at(Var(nv2), n_nat, Var(xvar))
        (li_f,) = li.sequent.right
        memf_x = tk.iff_mp(ws, li, hx, li_f.left, li_f.right)
        parts = self.disjuncts(Var(xvar), self.level(Var(nv2)))
        branches: List[Theorem] = []
        for j, rec in enumerate(records):
            n = len(rec.sorts)
            if n == 0:
                eq_thm = ws.hypothesis(parts[j])
                back = tk.eq_trans(
                    ws,
                    rec.defining,
                    tk.eq_sym(ws, eq_thm, Var(xvar), b.numeral(rec.index)),
                    rec.term,
                    b.numeral(rec.index),
                    Var(xvar),
                )
                hole = s.fresh_var("hole")
                ctx = subst_formula(s, pred, {xvar: Var(hole)})
                branches.append(
                    tk.subst_right(ws, prem_thms[j], back, ctx, hole, rec.term, Var(xvar))
                )
                continue
            eigens = [s.fresh_var(s.name_of(x)) for x in self.xs[:n]]
            stack, opened = self.open_exists(parts[j], n, eigens)
            use = ws.hypothesis(opened)
            eq_part, conj_part = self.conj_parts(use, opened, 2)
            mems = self.conj_parts(conj_part, opened.right, n)
            # feed the matching premise
            arg_mems: List[Theorem] = []
            cur = prem_thms[j]
            cur_f = premises[j]
            for k in range(n):
                if isinstance(rec.sorts[k], SelfRef):
                    ex_mem = self.in_A_intro(Var(eigens[k]), Var(nv2), n_nat, mems[k])
                    q_at = tk.forall_elim(ws, ih_q, q, Var(eigens[k]))
                    q_at_f = subst_formula(s, q.body, {xvar: Var(eigens[k])})
                    ih_at = tk.mp(ws, q_at, mems[k], q_at_f.left, q_at_f.right)
                else:
                    ex_mem = mems[k]
                    ih_at = ws.refl(b.top_t)
                arg_mems.append(ex_mem)
                cur = tk.bounded_forall_elim(ws, cur, ex_mem, cur_f, Var(eigens[k]))
                inner_f = subst_formula(s, cur_f.body.right, {cur_f.var: Var(eigens[k])})
                cur = tk.mp(ws, cur, ih_at, inner_f.left, inner_f.right)
                cur_f = inner_f.right
            # rewrite pred at the built value back to pred at xvar
            beta_t, capp, tup = self.beta(rec, [Var(e) for e in eigens], arg_mems)
            back = tk.eq_trans(
                ws,
                beta_t,
                tk.eq_sym(ws, eq_part, Var(xvar), tup),
                capp,
                tup,
                Var(xvar),
            )
            hole = s.fresh_var("hole")
            ctx = subst_formula(s, pred, {xvar: Var(hole)})
            branch = tk.subst_right(ws, cur, back, ctx, hole, capp, Var(xvar))
            for k in range(n - 1, -1, -1):
                branch = ws.lex(branch, stack[k], eigens[k])
            branches.append(branch)
        merged = self.or_elim(branches, parts)
        merged = ws.cut(memf_x, merged, _or_fold(parts))
        step = tk.imp_intro(ws, merged, hx_f, pred)
        q_succ = subst_formula(s, q, {nv2: sn})
        step = ws.rall(step, q_succ, xvar)
        nat_ind = b.nat_induction(q, nv2, base, step)
        (ni_f,) = nat_ind.sequent.right
        # unpack: membership in the carrier gives a level, the level gives pred
        xa = ws.hypothesis(s.member(Var(xvar), self.A_t))
        ex_n, ex_f = self.in_A_elim(Var(xvar), xa)
        e0 = s.fresh_var("n")
        body = subst_formula(s, ex_f.body, {ex_f.var: Var(e0)})
        use0 = ws.hypothesis(body)
        nat0, mem0 = self.conj_parts(use0, body, 2)
        q_at = tk.bounded_forall_elim(ws, nat_ind, nat0, ni_f, Var(e0))
        q_at_f = subst_formula(s, ni_f.body.right, {ni_f.var: Var(e0)})
        p_at = tk.forall_elim(ws, q_at, q_at_f, Var(xvar))
        p_at_f = subst_formula(s, q_at_f.body, {q_at_f.var: Var(xvar)})
        concl = tk.mp(ws, p_at, mem0, p_at_f.left, p_at_f.right)
        concl = tk.exists_elim(ws, ex_n, concl, ex_f, e0)
        concl = tk.imp_intro(ws, concl, s.member(Var(xvar), self.A_t), pred)
        goal = Forall(xvar, Imp(s.member(Var(xvar), self.A_t), pred))
        return ws.rall(concl, goal, xvar)

    # -- driver ---------------------------------------------------------------

    def run(self) -> AdtArtifacts:
        records = tuple(
            AdtConstructor(cname, i, tuple(sorts))
            for i, (cname, sorts) in enumerate(self.spec.constructors)
        )
        self.art.constructors = records
        self.art.tags = {r.name: r.index for r in records}
        self.build_levels()
        self.build_carrier()
        self.art.levels_sym = self.f_sym
        for rec in records:
            self.build_constructor(rec)
        for rec in records:
            self.build_typing(rec)
        for rec in records:
            self.build_injectivity1(rec)
        for i in range(len(records)):
            for j in range(i + 1, len(records)):
                self.build_injectivity2(records[i], records[j])
        self.art.induction = self.make_induction()
        return self.art


# ---------------------------------------------------------------------------
# declaration parser


_ADT_PUNCT = ("[", "]", "(", ")", ",", "=", "|", "->")


def _adt_tokens(text: str) -> List[str]:
    out: List[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            out.append("->")
            i += 2
            continue
        if ch in "[](),=|":
            out.append(ch)
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            out.append(text[i:j])
            i = j
            continue
        raise ParseError(f"datatype declaration: unexpected character {ch!r}")
    return out


class _AdtParser:
    def __init__(self, emb, tokens: List[str], params: List[str]) -> None:
        self.emb = emb
        self.toks = tokens
        self.pos = 0
        self.params = params

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        if self.pos >= len(self.toks):
            raise ParseError("datatype declaration: unexpected end of input")
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise ParseError(f"datatype declaration: expected {tok!r}, found {got!r}")

    def name(self) -> str:
        t = self.next()
        if t in _ADT_PUNCT:
            raise ParseError(f"datatype declaration: expected a name, found {t!r}")
        return t

    def type_expr(self) -> HolType:
        left = self.type_atom()
        if self.peek() == "->":
            self.next()
            return Fun(left, self.type_expr())
        return left

    def type_atom(self) -> HolType:
        if self.peek() == "(":
            self.next()
            inner = self.type_expr()
            self.expect(")")
            return inner
        t = self.name()
        if t == "Self":
            raise InvalidSort(
                "datatype declaration: Self can only stand alone as a sort"
            )
        if t in self.params:
            if self.peek() == "[":
                raise ParseError(
                    f"datatype declaration: type parameter {t} takes no arguments"
                )
            return TyVar(t)
        if t == "bool":
            return BOOL
        if t == "ind":
            return IND
        if t in self.emb.tycons:
            _, arity = self.emb.tycons[t]
            args: List[HolType] = []
            if self.peek() == "[":
                self.next()
                args.append(self.type_expr())
                while self.peek() == ",":
                    self.next()
                    args.append(self.type_expr())
                self.expect("]")
            if len(args) != arity:
                raise ArityError(
                    f"datatype declaration: {t} expects {arity} arguments, "
                    f"got {len(args)}"
                )
            return TyCon(t, tuple(args))
        raise UnknownTypeConstructor(f"datatype declaration: unknown type {t!r}")

    def sort(self) -> Sort:
        if self.peek() == "Self":
            self.next()
            return SELF
        ty = self.type_expr()
        return self.emb.embed_type(ty)

    def constructor(self) -> Tuple[str, List[Sort]]:
        cname = self.name()
        self.expect("(")
        sorts: List[Sort] = []
        if self.peek() != ")":
            sorts.append(self.sort())
            while self.peek() == ",":
                self.next()
                sorts.append(self.sort())
        self.expect(")")
        return cname, sorts


def parse_adt(emb, text: str) -> AdtSpec:
    """Parse a declaration like  adt list[T] = nil() | cons(T, Self)."""
    toks = _adt_tokens(text)
    if toks and toks[0] == "adt":
        toks = toks[1:]
    p = _AdtParser(emb, toks, [])
    name = p.name()
    params: List[str] = []
    if p.peek() == "[":
        p.next()
        params.append(p.name())
        while p.peek() == ",":
            p.next()
            params.append(p.name())
        p.expect("]")
    p.params = params
    p.expect("=")
    ctors = [p.constructor()]
    while p.peek() == "|":
        p.next()
        ctors.append(p.constructor())
    if p.peek() is not None:
        raise ParseError(f"datatype declaration: trailing input at {p.peek()!r}")
    return AdtSpec(name, params, ctors)


# ---------------------------------------------------------------------------
# registering a compiled datatype with the embedding


def adt_typing_hook(tac, art: AdtArtifacts) -> None:
    """Register the carrier as a type constructor and the constructors as
    typed constants, with a nonemptiness lemma over the parameters.

    Registration is skipped when a sort is not the image of a type: the
    kernel-level artifacts are complete either way, the datatype just does
    not join the typed vocabulary.
    """
    ws, b, s = tac.ws, tac.base, tac.ws.sig
    emb = tac.emb
    spec = art.spec
    if spec.name in emb.tycons:
        return
    unembedded: Dict[int, Dict[int, HolType]] = {}
    for ci, rec in enumerate(art.constructors):
        per: Dict[int, HolType] = {}
        for k, srt in enumerate(rec.sorts):
            if isinstance(srt, SelfRef):
                continue
            try:
                per[k] = emb.unembed_type(srt)
            except NotAnEmbeddingImage:
                return
        unembedded[ci] = per
    emb.declare_tycon(spec.name, art.set_sym, len(spec.type_params))
    # nonemptiness: a closed implication chain over parameter nonemptiness
    base_rec = None
    for rec in art.constructors:
        if not rec.sorts:
            base_rec = rec
            break
    if base_rec is not None:
        ne_core = tac.nonempty_of_member(base_rec.typing, base_rec.term, art.set_term)
    else:
        base_index = 0
        for ci, rec in enumerate(art.constructors):
            if not any(isinstance(srt, SelfRef) for srt in rec.sorts):
                base_rec = rec
                base_index = ci
                break
        n = len(base_rec.sorts)
        wits = [s.fresh_var("w") for _ in range(n)]
        ex_thms = [
            tac.elem_exists(unembedded[base_index][k]) for k in range(n)
        ]
        typing = ws.inst(
            base_rec.typing,
            {x: Var(w) for x, w in zip(art.binders[:n], wits)},
        )
        capp = base_rec.term
        for w in wits:
            capp = b.app_t(capp, Var(w))
        ne_core = tac.nonempty_of_member(typing, capp, art.set_term)
        for k in range(n - 1, -1, -1):
            (ex_f,) = ex_thms[k].sequent.right
            ne_core = tk.exists_elim(ws, ex_thms[k], ne_core, ex_f, wits[k])
    lemma = ne_core
    (concl,) = lemma.sequent.right
    for p in reversed(art.params):
        ante = Not(s.eq(Var(p), b.empty_t))
        lemma = tk.imp_intro(ws, lemma, ante, concl)
        concl = Imp(ante, concl)
    emb.tycon_nonempty[spec.name] = (lemma, art.params)
    # constants
    self_ty = TyCon(spec.name, tuple(TyVar(p) for p in spec.type_params))
    for ci, rec in enumerate(art.constructors):
        ty: HolType = self_ty
        for k in range(len(rec.sorts) - 1, -1, -1):
            arg_ty = (
                self_ty
                if isinstance(rec.sorts[k], SelfRef)
                else unembedded[ci][k]
            )
            ty = Fun(arg_ty, ty)
        emb.declare_constant(rec.name, ty, rec.sym, rec.symbol_typing)


# ---------------------------------------------------------------------------
# compiler front end


class AdtCompiler:
    """Compiles datatype declarations and remembers the results."""

    def __init__(self, tac) -> None:
        self.tac = tac
        self.defined: Dict[str, AdtArtifacts] = {}
        tac.ws.ext["adt"] = self

    def define(self, spec: AdtSpec) -> AdtArtifacts:
        validate_spec(self.tac.ws, spec)
        if spec.name in self.defined:
            prev = self.defined[spec.name]
            if prev.spec == spec:
                return prev
            raise DuplicateAdt(
                f"{spec.name}: already defined with a different declaration"
            )
        art = _Builder(self.tac, spec).run()
        adt_typing_hook(self.tac, art)
        self.defined[spec.name] = art
        return art

    def define_text(self, text: str) -> AdtArtifacts:
        return self.define(parse_adt(self.tac.emb, text))


def induction_instance(art: AdtArtifacts, pred: Formula, xvar: int) -> Theorem:
    """The structural induction theorem for a predicate and its variable."""
    if art.induction is None:
        raise DuplicateAdt(f"{art.spec.name}: compilation incomplete")
    return art.induction(pred, xvar)
