"""Constant definitions over the embedding.

A new constant comes from a closed definiens. The embedding of the
definiens mentions reserved closure variables, each pinned down by its
context formula, so the defining property of the new class function
quantifies those variables and guards each with its template:

    |- all A1 .. Am. exone c.
         all lam_i1. def(lam_i1) imp .. all lam_ik. def(lam_ik) imp c = <t>

with the closures in dependency order and the type variables of the
constant's type as parameters. Unique existence is assembled inside out:
`c = <t>` pins c trivially, and each quantifier layer is pulled inside the
unique-existential through a swap fact

    exone x. P  imp  ((all x. P imp exone y. Q) iff (exone y. all x. P imp Q))

proven here for the concrete P and Q of each layer, with the closure's own
unique existence (existence admitted per template, uniqueness by function
extensionality along the capture chain) feeding the antecedent.

The kernel's defining axiom then yields a set-equality form
`def(lam_i1), .., def(lam_ik) |- c(A*) = <t>`, a closed typing theorem,
and the definitional theorem `|- c = t` of the typed language.
"""

from __future__ import annotations

from typing import List, Tuple

from . import toolkit as tk
from .embedding import RegistryEntry
from .errors import DuplicateSymbol, IllTyped, OpenTerm, ShapeMismatch
from .fol import (
    Exists,
    Forall,
    Formula,
    Iff,
    Imp,
    Term,
    Var,
    subst_formula,
)
from .hol import (
    HConst,
    HolSequent,
    HolTerm,
    HolType,
    debruijn_key,
    mk_eq,
    print_type,
    term_tyvars,
    type_tyvars,
)
from .kernel import Theorem, Workspace
from .tactics import HolTactics, HolTheorem


class DefinedConstant:
    """Everything a definition produces: the class-function symbol, the
    kernel-side equality and typing facts, and the typed-language
    definitional theorem."""

    __slots__ = (
        "name",
        "generic",
        "params",
        "key",
        "sym",
        "constant",
        "axiom",
        "def_eq",
        "typing",
        "definition",
    )

    def __init__(self, name, generic, params, key, sym, constant, axiom, def_eq, typing, definition):
        self.name = name
        self.generic = generic  # HolType of the constant
        self.params = params  # tyvar names, first occurrence in the type
        self.key = key  # de Bruijn key of the definiens
        self.sym = sym  # FOL function symbol
        self.constant = constant  # the generic HConst
        self.axiom = axiom  # |- all y. y = c(A*) iff <property>
        self.def_eq = def_eq  # def(lam_i).. |- c(A*) = <t>
        self.typing = typing  # |- c(A*) in <type>
        self.definition = definition  # HolTheorem |- c = t


def unique_eq(ws: Workspace, c: int, e: Term) -> Theorem:
    """|- exone c. c = e, for a term e in which c does not occur."""
    s = ws.sig
    goal = s.exists_one(c, s.eq(Var(c), e))
    uniq = subst_formula(s, goal.body.right, {c: e})
    imp = uniq.body
    step = ws.hypothesis(imp.left)
    step = ws.rimp(step, imp.left, imp.right)
    step = ws.rall(step, uniq, uniq.var)
    step = ws.rand(ws.refl(e), step, s.eq(e, e), uniq)
    return ws.rex(step, goal, e)


def pointwise_unique(
    tac: HolTactics,
    v: int,
    w: int,
    template: Formula,
    arg_syms: List[int],
    arg_doms: List[Term],
    suffix_sets: List[Term],
) -> Theorem:
    """template, template[v := w] |- w = v.

    The template must have the shape

        And(v in C0,
            all x1. x1 in D1 imp .. all xn. xn in Dn imp
                app(..app(v, x1).., xn) = rhs)

    with arg_syms = [x1..xn], arg_doms = [D1..Dn], and suffix_sets the
    function-space chain [C0..Cn] (C0 the chain itself, Ci the set after
    i arguments). Both copies force the same pointwise behaviour on the
    same chain, so the heads agree by extensionality at every level."""
    ws, s, b = tac.ws, tac.ws.sig, tac.base
    tmpl_v = template
    tmpl_w = subst_formula(s, tmpl_v, {v: Var(w)})
    n = len(arg_syms)
    mems_y = [
        ws.hypothesis(s.member(Var(arg_syms[i]), arg_doms[i])) for i in range(n)
    ]

    def descend(tmpl: Formula, head: int):
        """Partial-application terms and memberships, plus the fully
        eliminated pointwise equation."""
        terms: List[Term] = [Var(head)]
        mems = [tk.and_left(ws, ws.hypothesis(tmpl), tmpl.left, tmpl.right)]
        for i in range(n - 1):
            mems.append(
                tk.apply_lemma(
                    ws,
                    b.app_typing(),
                    {
                        b.vA: arg_doms[i],
                        b.vB: suffix_sets[i + 1],
                        b.vf: terms[i],
                        b.vx: Var(arg_syms[i]),
                    },
                    mems[i],
                    mems_y[i],
                )
            )
            terms.append(b.app_t(terms[i], Var(arg_syms[i])))
        terms.append(b.app_t(terms[-1], Var(arg_syms[n - 1])))
        beta = tk.and_right(ws, ws.hypothesis(tmpl), tmpl.left, tmpl.right)
        quant = tmpl.right
        for i in range(n):
            beta = tk.bounded_forall_elim(ws, beta, mems_y[i], quant, Var(arg_syms[i]))
            quant = subst_formula(s, quant.body.right, {quant.var: Var(arg_syms[i])})
        return terms, mems, beta, quant.args[1]

    terms_w, mems_w, beta_w, rhs = descend(tmpl_w, w)
    terms_v, mems_v, beta_v, _ = descend(tmpl_v, v)

    cur = tk.eq_trans(
        ws, beta_w, tk.eq_sym(ws, beta_v, terms_v[n], rhs), terms_w[n], rhs, terms_v[n]
    )
    for i in range(n, 0, -1):
        memf = s.member(Var(arg_syms[i - 1]), arg_doms[i - 1])
        eqf = s.eq(terms_w[i], terms_v[i])
        step = tk.imp_intro(ws, cur, memf, eqf)
        allf = Forall(arg_syms[i - 1], Imp(memf, eqf))
        step = ws.rall(step, allf, arg_syms[i - 1])
        cur = tk.apply_lemma(
            ws,
            b.fun_ext(),
            {
                b.vA: arg_doms[i - 1],
                b.vB: suffix_sets[i],
                b.vf: terms_w[i - 1],
                b.vg: terms_v[i - 1],
            },
            mems_w[i - 1],
            mems_v[i - 1],
            step,
        )
    return cur


def closure_unique(tac: HolTactics, entry: RegistryEntry, w: int) -> Theorem:
    """def(lam_i), def(lam_i)[lam_i := w] |- w = lam_i."""
    s, emb = tac.ws.sig, tac.emb
    arg_syms = [s.variable(x.name) for x in entry.captures]
    arg_tys = [x.ty for x in entry.captures]
    arg_syms.append(s.variable(entry.abs.var.name))
    arg_tys.append(entry.abs.var.ty)

    # chain suffix types: suffix[i] is the type after i arguments
    suffix: List[HolType] = [entry.chain_type]
    for _ in range(len(arg_syms)):
        suffix.append(suffix[-1].cod)

    return pointwise_unique(
        tac,
        entry.var,
        w,
        entry.template,
        arg_syms,
        [emb.embed_type(ty) for ty in arg_tys],
        [emb.embed_type(ty) for ty in suffix],
    )


def template_exists_one(
    tac: HolTactics,
    var: int,
    template: Formula,
    existence: Theorem,
    unique_at,
) -> Theorem:
    """Assemble .. |- exone var. template from existence and uniqueness.

    existence proves .. |- ex var. template; unique_at(w) must produce
    template, template[var := w] |- w = var for the fresh w handed to it."""
    ws, s = tac.ws, tac.ws.sig
    goal = s.exists_one(var, template)
    uniqf = goal.body.right
    w = uniqf.var
    core = unique_at(w)
    step = tk.imp_intro(ws, core, uniqf.body.left, uniqf.body.right)
    step = ws.rall(step, uniqf, w)
    step = ws.rand(ws.hypothesis(template), step, template, uniqf)
    step = ws.rex(step, goal, Var(var))
    return tk.exists_elim(ws, existence, step, Exists(var, template), var)


def closure_exists_one(tac: HolTactics, entry: RegistryEntry) -> Theorem:
    """|- exone lam_i. def(lam_i)."""
    hit = tac._ceo_memo.get(entry.index)
    if hit is not None:
        return hit
    thm = template_exists_one(
        tac,
        entry.var,
        entry.template,
        tac.closure_exists(entry),
        lambda w: closure_unique(tac, entry, w),
    )
    tac._ceo_memo[entry.index] = thm
    return thm


def quantifier_swap(ws: Workspace, u: int, D: Formula, c: int, S: Formula) -> Theorem:
    """|- exone u. D imp
         ((all u. D imp exone c. S) iff (exone c. all u. D imp S))

    D may mention u; S may mention u and c. The fact is proven for the
    concrete D and S supplied, not as a schema."""
    s = ws.sig
    E1 = s.exists_one(u, D)
    E2 = s.exists_one(c, S)
    W = Forall(u, Imp(D, E2))
    PC = Forall(u, Imp(D, S))
    G = s.exists_one(c, PC)
    u0 = s.fresh_var(s.name_of(u))
    c0 = s.fresh_var(s.name_of(c))

    body0 = subst_formula(s, E1.body, {u: Var(u0)})
    D0, U0 = body0.left, body0.right
    proj_d0 = tk.sel_and_l(ws, D0, U0)
    proj_u0 = tk.sel_and_r(ws, D0, U0)

    def eq_to_u0(witness: Term) -> Tuple[Theorem, Formula]:
        """From the uniqueness clause at u0: D[u := witness] |- witness = u0
        (plus the And(D0, U0) hypothesis). Returns the theorem and the
        D-instance it consumed."""
        inst = subst_formula(s, U0.body, {U0.var: witness})
        thm = tk.forall_elim(ws, proj_u0, U0, witness)
        return tk.mp(ws, thm, ws.hypothesis(inst.left), inst.left, inst.right), inst.left

    # forward: E1, W |- G
    winst = subst_formula(s, W.body, {u: Var(u0)})
    e2_at_u0 = tk.mp(
        ws,
        tk.forall_elim(ws, ws.hypothesis(W), W, Var(u0)),
        proj_d0,
        winst.left,
        winst.right,
    )
    E2_0 = winst.right
    body_c0 = subst_formula(s, E2_0.body, {E2_0.var: Var(c0)})
    S00, V0 = body_c0.left, body_c0.right

    # part A: all u. D imp S[c := c0]
    PC0 = subst_formula(s, PC, {c: Var(c0)})
    S_c0 = PC0.body.right
    equ, _ = eq_to_u0(Var(u))
    hole = s.fresh_var("hole")
    ctx = subst_formula(s, S_c0, {u: Var(hole)})
    got = tk.subst_right(
        ws,
        tk.sel_and_l(ws, S00, V0),
        tk.eq_sym(ws, equ, Var(u), Var(u0)),
        ctx,
        hole,
        Var(u0),
        Var(u),
    )
    got = tk.imp_intro(ws, got, PC0.body.left, S_c0)
    part_a = ws.rall(got, PC0, u)

    # part B: all c'. (all u. D imp S[c := c']) imp c' = c0
    UQ = subst_formula(s, G.body.right, {c: Var(c0)})
    c3 = UQ.var
    PC3 = UQ.body.left
    pimp = subst_formula(s, PC3.body, {PC3.var: Var(u0)})
    s0c3 = tk.mp(
        ws,
        tk.forall_elim(ws, ws.hypothesis(PC3), PC3, Var(u0)),
        proj_d0,
        pimp.left,
        pimp.right,
    )
    vinst = subst_formula(s, V0.body, {V0.var: Var(c3)})
    eqc = tk.mp(
        ws,
        tk.forall_elim(ws, tk.sel_and_r(ws, S00, V0), V0, Var(c3)),
        s0c3,
        vinst.left,
        vinst.right,
    )
    got = tk.imp_intro(ws, eqc, PC3, vinst.right)
    part_b = ws.rall(got, UQ, c3)

    g_thm = ws.rex(ws.rand(part_a, part_b, PC0, UQ), G, Var(c0))
    g_thm = tk.exists_elim(ws, e2_at_u0, g_thm, E2_0, c0)
    fwd = tk.exists_elim(ws, ws.hypothesis(E1), g_thm, E1, u0)

    # backward: E1, G |- W
    body_g0 = subst_formula(s, G.body, {c: Var(c0)})
    PC0b, UQ0 = body_g0.left, body_g0.right
    pinst = subst_formula(s, PC0b.body, {PC0b.var: Var(u)})
    s_c0 = tk.mp(
        ws,
        tk.forall_elim(ws, tk.sel_and_l(ws, PC0b, UQ0), PC0b, Var(u)),
        ws.hypothesis(pinst.left),
        pinst.left,
        pinst.right,
    )
    S_c0b = pinst.right

    Vc0 = subst_formula(s, E2.body.right, {c: Var(c0)})
    c2 = Vc0.var
    S_c2 = Vc0.body.left
    # under S[c := c2] at the ambient u, land on c2 = c0 via the G witness
    u2 = s.fresh_var(s.name_of(u))
    equ, _ = eq_to_u0(Var(u))
    equ2, dcopy2 = eq_to_u0(Var(u2))
    eq_uu2 = tk.eq_trans(
        ws,
        equ,
        tk.eq_sym(ws, equ2, Var(u2), Var(u0)),
        Var(u),
        Var(u0),
        Var(u2),
    )
    hole2 = s.fresh_var("hole")
    ctx2 = subst_formula(s, S_c2, {u: Var(hole2)})
    moved = tk.subst_right(
        ws, ws.hypothesis(S_c2), eq_uu2, ctx2, hole2, Var(u), Var(u2)
    )
    moved = tk.imp_intro(ws, moved, dcopy2, subst_formula(s, S_c2, {u: Var(u2)}))
    PC2 = subst_formula(s, PC, {c: Var(c2)})
    pc2_thm = ws.rall(moved, PC2, u2)
    uq_inst = subst_formula(s, UQ0.body, {UQ0.var: Var(c2)})
    eq_c2 = tk.mp(
        ws,
        tk.forall_elim(ws, tk.sel_and_r(ws, PC0b, UQ0), UQ0, Var(c2)),
        pc2_thm,
        uq_inst.left,
        uq_inst.right,
    )
    eq_c2 = tk.imp_intro(ws, eq_c2, S_c2, uq_inst.right)
    vc0_thm = ws.rall(eq_c2, Vc0, c2)

    e2_thm = ws.rex(ws.rand(s_c0, vc0_thm, S_c0b, Vc0), E2, Var(c0))
    e2_thm = tk.exists_elim(ws, ws.hypothesis(G), e2_thm, G, c0)
    e2_thm = tk.exists_elim(ws, ws.hypothesis(E1), e2_thm, E1, u0)
    e2_thm = tk.imp_intro(ws, e2_thm, pinst.left, E2)
    bwd = ws.rall(e2_thm, W, u)

    fwd_imp = tk.imp_intro(ws, fwd, W, G)
    bwd_imp = tk.imp_intro(ws, bwd, G, W)
    both = ws.riff(fwd_imp, bwd_imp, W, G)
    return ws.rimp(both, E1, Iff(W, G))


def define_constant(tac: HolTactics, name: str, t: HolTerm) -> DefinedConstant:
    """Define `name` as the closed term t and return the produced facts.

    Identical re-definition returns the original record (so proof replay
    can pass through definitions); anything else on a taken name fails."""
    ws, s, emb = tac.ws, tac.ws.sig, tac.emb
    key = debruijn_key(t)
    prior = tac.defined.get(name)
    if prior is not None:
        if prior.key == key:
            return prior
        raise DuplicateSymbol(f"constant {name!r} is already defined")
    frees = t.free
    if frees:
        names = sorted(v.name for v in frees)
        raise OpenTerm(f"definiens of {name!r} has free variables: {names}")
    generic = t.ty
    params = tuple(type_tyvars(generic))
    stray = [x for x in term_tyvars(t) if x not in set(params)]
    if stray:
        raise IllTyped(
            f"definiens of {name!r} uses type variables {stray} that do not "
            f"occur in its type {print_type(generic)}"
        )
    if emb.consts.known(name):
        raise DuplicateSymbol(f"constant {name!r} is already declared")

    e = emb.embed_term(t)
    ctx = emb.context_of(t, checked=True)
    entries = [emb.lookup_lambda(f"lam{i}") for i in sorted(ctx.defs)]
    k = len(entries)
    c = s.fresh_var("c")

    # nested defining property, inside out
    layers: List[Formula] = [s.eq(Var(c), e)]
    for entry in reversed(entries):
        layers.append(Forall(entry.var, Imp(entry.template, layers[-1])))
    phi = layers[-1]

    # justification: |- all A*. exone c. <phi>
    cur = tk.weaken(ws, unique_eq(ws, c, e), left=[en.template for en in entries])
    for i in range(k, 0, -1):
        entry = entries[i - 1]
        goal_i = s.exists_one(c, layers[k - i])
        step = tk.imp_intro(ws, cur, entry.template, goal_i)
        allf = Forall(entry.var, Imp(entry.template, goal_i))
        step = ws.rall(step, allf, entry.var)
        swap = quantifier_swap(ws, entry.var, entry.template, c, layers[k - i])
        (swapf,) = tuple(swap.sequent.right)
        both = tk.mp(ws, swap, closure_exists_one(tac, entry), swapf.left, swapf.right)
        cur = tk.iff_mp(ws, both, step, swapf.right.left, swapf.right.right)
    param_syms = [s.variable(x) for x in params]
    for p in reversed(param_syms):
        (curf,) = tuple(cur.sequent.right)
        cur = ws.rall(cur, Forall(p, curf), p)

    sym, axiom = ws.define_symbol(name, param_syms, c, phi, cur)
    cterm = s.mkapp(sym, *[Var(p) for p in param_syms])

    # def(lam_i).. |- c(A*) = <t>
    (axf,) = tuple(axiom.sequent.right)
    iff_inst = subst_formula(s, axf.body, {axf.var: cterm})
    peel = tk.iff_mp(
        ws,
        tk.forall_elim(ws, axiom, axf, cterm),
        ws.refl(cterm),
        iff_inst.left,
        iff_inst.right,
    )
    curf = iff_inst.right
    for entry in entries:
        inst = subst_formula(s, curf.body, {curf.var: Var(entry.var)})
        peel = tk.forall_elim(ws, peel, curf, Var(entry.var))
        peel = tk.mp(ws, peel, ws.hypothesis(inst.left), inst.left, inst.right)
        curf = inst.right
    def_eq = peel

    # |- c(A*) in <type>
    tset = emb.embed_type(generic)
    hole = s.fresh_var("hole")
    typing_raw = tk.subst_right(
        ws,
        tac.prooftype(t),
        tk.eq_sym(ws, def_eq, cterm, e),
        s.member(Var(hole), tset),
        hole,
        e,
        cterm,
    )
    typing = tac.clean(typing_raw, frozenset())
    if typing.sequent.left:
        raise ShapeMismatch(
            f"typing theorem for {name!r} kept hypotheses: {typing.sequent}"
        )
    emb.declare_constant(name, generic, sym, typing)

    # |- c = t in the typed language
    constant = HConst(name, generic, {})
    hs = HolSequent((), mk_eq(constant, t))
    definition = tac.finish(hs, tac.eq_to_E(def_eq, constant, t))

    rec = DefinedConstant(
        name, generic, params, key, sym, constant, axiom, def_eq, typing, definition
    )
    tac.defined[name] = rec
    return rec
