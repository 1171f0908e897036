"""Base set-theory vocabulary over the kernel.

Builds, on top of the raw ZF signature: truth values (bot, top, bool), ordered
pairs, successor, function spaces (isfun, arrow, app), the pointwise equality
indicator (eqfn), and the naturals (inductive, nat), together with a library
of proved lemmas about them.

Every definition goes through the kernel's extension-by-definition gate, so
each one carries a kernel-checked unique-existence justification. Set
existence facts that need real set theory are handled according to the
`policy` argument:

* "strict": existence of the function space and of the equality-indicator
  set are proved from the separation scheme; the function-space lemmas
  (app-graph, app-typing, fun-ext, prop-ext, e-typing, e-correct,
  funspace-nonempty) are proved as well.
* "assume": those statements are taken as admitted lemmas, visible in the
  workspace ledger.

One schema stays admitted under both policies: indicator-exists (for each
x in A there is a pointwise equality-indicator function on A). The higher
layers add closure-exists, constructor-exists and recursion-omega to that
irreducible set.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .errors import RuleMismatch, SchemaError, UnknownLemma
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
from .kernel import Theorem, Workspace
from .printer import print_formula
from . import toolkit as tk

POLICIES = ("strict", "assume")

# Admitted families that remain admitted even under --prove-base strict.
IRREDUCIBLE_ADMITS = frozenset(
    {"indicator-exists", "closure-exists", "constructor-exists", "recursion-omega"}
)


def _elim(ws: Workspace, t: Theorem, f: Formula, *terms: Term) -> Tuple[Theorem, Formula]:
    """Strip universal quantifiers from the tracked right-side formula."""
    for term in terms:
        t = tk.forall_elim(ws, t, f, term)
        f = subst_formula(ws.sig, f.body, {f.var: term})
    return t, f


def sel_conj(ws: Workspace, f: Formula, path: str) -> Theorem:
    """{f} |- component, where path walks the And tree ('l'/'r' per step)."""
    if not path:
        return ws.hypothesis(f)
    if not isinstance(f, And):
        raise RuleMismatch("sel_conj: path descends into a non-conjunction")
    d, rest = path[0], path[1:]
    sub = f.left if d == "l" else f.right
    step = tk.sel_and_l(ws, f.left, f.right) if d == "l" else tk.sel_and_r(ws, f.left, f.right)
    if not rest:
        return step
    return ws.cut(step, sel_conj(ws, sub, rest), sub)


def _or_same(ws: Workspace, t: Theorem, phi: Formula) -> Theorem:
    """Collapse .. |- phi or phi, .. to .. |- phi, .."""
    step = ws.lor(ws.hypothesis(phi), ws.hypothesis(phi), phi, phi)
    return ws.cut(t, step, Or(phi, phi))


def _or_elim_left(ws: Workspace, f: Formula, leaf) -> Theorem:
    """Fold a left-nested disjunction hypothesis into a single theorem.

    leaf(g) must return a theorem with g on the left; the results are merged
    with lor, so the returned theorem has f on the left."""
    if isinstance(f, Or):
        l = _or_elim_left(ws, f.left, leaf)
        r = _or_elim_left(ws, f.right, leaf)
        return ws.lor(l, r, f.left, f.right)
    return leaf(f)


# ---------------------------------------------------------------------------
# Definition helpers. Each returns the new symbol plus the most useful form
# of its defining theorem.


def define_by_term(ws: Workspace, name: str, params: Sequence[int], term: Term):
    """Define f(params) := term. Returns (symbol, |- f(params) = term, axiom)."""
    s = ws.sig
    y = s.fresh_var("y")
    y2 = s.fresh_var("y")
    yv, y2v = Var(y), Var(y2)
    params = tuple(params)
    phi = s.eq(yv, term)
    eq2 = s.eq(y2v, term)
    uniq = Forall(y2, Imp(eq2, s.eq(y2v, yv)))
    uniq_inst = Forall(y2, Imp(eq2, eq2))
    step = ws.rimp(ws.hypothesis(eq2), eq2, eq2)
    step = ws.rall(step, uniq_inst, y2)
    conj = ws.rand(ws.refl(term), step, s.eq(term, term), uniq_inst)
    ex = Exists(y, And(phi, uniq))
    just = ws.rex(conj, ex, term)
    fml: Formula = ex
    for p in reversed(params):
        fml = Forall(p, fml)
        just = ws.rall(just, fml, p)
    sym, def_thm = ws.define_symbol(name, params, y, phi, just)
    fterm = s.mkapp(sym, *[Var(p) for p in params])
    (axf,) = def_thm.sequent.right
    inst_ax = tk.forall_elim(ws, def_thm, axf, fterm)
    eq_thm = tk.iff_mp(ws, inst_ax, ws.refl(fterm), s.eq(fterm, fterm), s.eq(fterm, term))
    return sym, eq_thm, def_thm


def define_by_membership(ws: Workspace, name: str, params: Sequence[int], x: int, chi: Formula, existence: Theorem):
    """Define S(params) as the set whose members are exactly the x with chi.

    existence must be |- ex y. all x. x in y iff chi (no hypotheses; the
    uniqueness half comes from extensionality here). Returns
    (symbol, |- all x. x in S(params) iff chi, axiom)."""
    s = ws.sig
    params = tuple(params)
    y = s.fresh_var("s")
    y2 = s.fresh_var("s")
    z = s.fresh_var("z")
    Hy = Forall(x, Iff(s.member(Var(x), Var(y)), chi))
    Hy2 = subst_formula(s, Hy, {y: Var(y2)})
    if existence.sequent.left or existence.sequent != Sequent((), (Exists(y, Hy),)):
        raise SchemaError(f"membership definition of {name!r}: existence theorem has the wrong shape")
    chiz = subst_formula(s, chi, {x: Var(z)})
    in_y = s.member(Var(z), Var(y))
    in_y2 = s.member(Var(z), Var(y2))
    fe_y = tk.forall_elim(ws, ws.hypothesis(Hy), Hy, Var(z))
    fe_y2 = tk.forall_elim(ws, ws.hypothesis(Hy2), Hy2, Var(z))
    fwd = tk.iff_mp(ws, fe_y2, ws.hypothesis(in_y2), in_y2, chiz)
    fwd = tk.iff_mpr(ws, fe_y, fwd, in_y, chiz)
    fwd = ws.rimp(fwd, in_y2, in_y)
    bwd = tk.iff_mp(ws, fe_y, ws.hypothesis(in_y), in_y, chiz)
    bwd = tk.iff_mpr(ws, fe_y2, bwd, in_y2, chiz)
    bwd = ws.rimp(bwd, in_y, in_y2)
    iffz = ws.riff(fwd, bwd, in_y2, in_y)
    allz = ws.rall(iffz, Forall(z, Iff(in_y2, in_y)), z)
    ext = ws.axiom("extensionality")
    (extf,) = ext.sequent.right
    ext2, f2 = _elim(ws, ext, extf, Var(y2), Var(y))
    eqt = tk.iff_mp(ws, ext2, allz, f2.left, f2.right)
    uniq = Forall(y2, Imp(Hy2, s.eq(Var(y2), Var(y))))
    uimp = ws.rimp(eqt, Hy2, s.eq(Var(y2), Var(y)))
    uall = ws.rall(uimp, uniq, y2)
    conj = ws.rand(ws.hypothesis(Hy), uall, Hy, uniq)
    exg = Exists(y, And(Hy, uniq))
    ex1 = ws.rex(conj, exg, Var(y))
    lexed = ws.lex(ex1, Exists(y, Hy), y)
    just = ws.cut(existence, lexed, Exists(y, Hy))
    fml: Formula = exg
    for p in reversed(params):
        fml = Forall(p, fml)
        just = ws.rall(just, fml, p)
    sym, def_thm = ws.define_symbol(name, params, y, Hy, just)
    S = s.mkapp(sym, *[Var(p) for p in params])
    (axf,) = def_thm.sequent.right
    inst_ax = tk.forall_elim(ws, def_thm, axf, S)
    member = tk.iff_mp(ws, inst_ax, ws.refl(S), s.eq(S, S), subst_formula(s, Hy, {y: S}))
    return sym, member, def_thm


def define_by_description(ws: Workspace, name: str, params: Sequence[int], w: int, psi: Formula, default: Term):
    """Define f(params) as "the w with psi, else default".

    The unique-existence justification is proved outright by case analysis on
    whether a unique witness exists, so no axioms are consumed. Returns
    (symbol, axiom); the defining property phi(y) is the disjunction

        (exone w. psi) and psi[w:=y]   or   not (exone w. psi) and y = default
    """
    s = ws.sig
    params = tuple(params)
    y = s.fresh_var("y")
    y2 = s.fresh_var("y")
    w2 = s.fresh_var(s.name_of(w))
    psi2 = subst_formula(s, psi, {w: Var(w2)})
    uniqv = Forall(w2, Imp(psi2, s.eq(Var(w2), Var(w))))
    Hw = And(psi, uniqv)
    chi = Exists(w, Hw)
    psiy = subst_formula(s, psi, {w: Var(y)})
    psiy2 = subst_formula(s, psi, {w: Var(y2)})
    psid = subst_formula(s, psi, {w: default})

    def phi_at(tv: Term, ps: Formula) -> Formula:
        return Or(And(chi, ps), And(Not(chi), s.eq(tv, default)))

    phi = phi_at(Var(y), psiy)
    phi2 = phi_at(Var(y2), psiy2)
    G = Exists(y, And(phi, Forall(y2, Imp(phi2, s.eq(Var(y2), Var(y))))))

    # Case A: a unique witness exists; it serves.
    a1 = tk.sel_and_l(ws, psi, uniqv)
    a2 = tk.sel_and_r(ws, psi, uniqv)
    cchi = ws.rex(ws.hypothesis(Hw), chi, Var(w))
    phiw = phi_at(Var(w), psi)
    c1 = ws.rand(cchi, a1, chi, psi)
    c2 = ws.ror(c1, And(chi, psi), And(Not(chi), s.eq(Var(w), default)))
    s1 = tk.sel_and_r(ws, chi, psiy2)
    fa = tk.forall_elim(ws, a2, uniqv, Var(y2))
    m1 = tk.mp(ws, fa, s1, psiy2, s.eq(Var(y2), Var(w)))
    s2 = tk.sel_and_l(ws, Not(chi), s.eq(Var(y2), default))
    m2 = tk.contradiction(ws, cchi, s2, chi)
    m2 = ws.rweak(m2, s.eq(Var(y2), Var(w)))
    u = ws.lor(m1, m2, And(chi, psiy2), And(Not(chi), s.eq(Var(y2), default)))
    u = ws.rimp(u, phi2, s.eq(Var(y2), Var(w)))
    uq_w = Forall(y2, Imp(phi2, s.eq(Var(y2), Var(w))))
    u = ws.rall(u, uq_w, y2)
    conjA = ws.rand(c2, u, phiw, uq_w)
    exA = ws.rex(conjA, G, Var(w))
    caseA = ws.lex(exA, chi, w)

    # Case B: no unique witness; the default serves.
    b1 = ws.rand(ws.hypothesis(Not(chi)), ws.refl(default), Not(chi), s.eq(default, default))
    b2 = ws.ror(b1, And(chi, psid), And(Not(chi), s.eq(default, default)))
    t1 = tk.sel_and_l(ws, chi, psiy2)
    t2 = tk.contradiction(ws, t1, ws.hypothesis(Not(chi)), chi)
    t2 = ws.rweak(t2, s.eq(Var(y2), default))
    t3 = tk.sel_and_r(ws, Not(chi), s.eq(Var(y2), default))
    ub = ws.lor(t2, t3, And(chi, psiy2), And(Not(chi), s.eq(Var(y2), default)))
    ub = ws.rimp(ub, phi2, s.eq(Var(y2), default))
    uq_d = Forall(y2, Imp(phi2, s.eq(Var(y2), default)))
    ub = ws.rall(ub, uq_d, y2)
    conjB = ws.rand(b2, ub, phi_at(default, psid), uq_d)
    caseB = ws.rex(conjB, G, default)

    just = tk.by_cases(ws, caseA, caseB, chi)
    fml: Formula = G
    for p in reversed(params):
        fml = Forall(p, fml)
        just = ws.rall(just, fml, p)
    sym, def_thm = ws.define_symbol(name, params, y, phi, just)
    return sym, def_thm


def comprehension_exact(ws: Workspace, x: int, source: Term, chi: Formula, mem_proof: Theorem) -> Theorem:
    """Gamma |- ex S. all x. x in S iff chi, given Gamma |- chi imp x in source.

    Gamma must not contain x free (it is generalized over)."""
    s = ws.sig
    z0 = s.fresh_var("src")
    comp = ws.inst(ws.comprehension(x, z0, chi), {z0: source})
    (exg,) = comp.sequent.right
    m = s.fresh_var("S")
    Hm = subst_formula(s, exg.body, {exg.var: Var(m)})
    in_src = s.member(Var(x), source)
    in_m = s.member(Var(x), Var(m))
    conj = And(in_src, chi)
    fe = tk.forall_elim(ws, ws.hypothesis(Hm), Hm, Var(x))
    fwd = tk.iff_mp(ws, fe, ws.hypothesis(in_m), in_m, conj)
    fwd = tk.and_right(ws, fwd, in_src, chi)
    fwd = ws.rimp(fwd, in_m, chi)
    mem = tk.mp(ws, mem_proof, ws.hypothesis(chi), chi, in_src)
    bwd = ws.rand(mem, ws.hypothesis(chi), in_src, chi)
    bwd = tk.iff_mpr(ws, fe, bwd, in_m, conj)
    bwd = ws.rimp(bwd, chi, in_m)
    iff = ws.riff(fwd, bwd, in_m, chi)
    alls = ws.rall(iff, Forall(x, Iff(in_m, chi)), x)
    target = Exists(m, Forall(x, Iff(in_m, chi)))
    ex = ws.rex(alls, target, Var(m))
    lx = ws.lex(ex, exg, m)
    return ws.cut(comp, lx, exg)


# ---------------------------------------------------------------------------


class BaseTheory:
    """The base vocabulary plus a memoized lemma library."""

    def __init__(self, ws: Workspace, policy: str = "assume") -> None:
        if policy not in POLICIES:
            raise SchemaError(f"unknown base policy {policy!r}")
        self.ws = ws
        self.policy = policy
        self._lemmas: Dict[object, Theorem] = {}
        s = ws.sig
        v = s.variable
        self.va, self.vb, self.vc, self.vd = v("a"), v("b"), v("c"), v("d")
        self.vf, self.vg, self.vp, self.vq = v("f"), v("g"), v("p"), v("q")
        self.vx, self.vy, self.vz, self.vw = v("x"), v("y"), v("z"), v("w")
        self.vn, self.vA, self.vB, self.vU = v("n"), v("A"), v("B"), v("U")

        self.empty_t = s.mkapp(ws.EMPTY)
        self.bot, self.bot_eq, _ = define_by_term(ws, "bot", (), self.empty_t)
        self.bot_t = s.mkapp(self.bot)
        self.top, self.top_eq, _ = define_by_term(
            ws, "top", (), s.mkapp(ws.UPAIR, self.empty_t, self.empty_t)
        )
        self.top_t = s.mkapp(self.top)
        self.boolsym, self.bool_eq, _ = define_by_term(
            ws, "bool", (), s.mkapp(ws.UPAIR, self.bot_t, self.top_t)
        )
        self.bool_t = s.mkapp(self.boolsym)

        a, b = Var(self.va), Var(self.vb)
        self.opair, self.opair_eq, _ = define_by_term(
            ws,
            "opair",
            (self.va, self.vb),
            s.mkapp(ws.UPAIR, s.mkapp(ws.UPAIR, a, a), s.mkapp(ws.UPAIR, a, b)),
        )
        yv = Var(self.vy)
        self.succ, self.succ_eq, _ = define_by_term(
            ws,
            "succ",
            (self.vy,),
            s.mkapp(ws.UNION, s.mkapp(ws.UPAIR, yv, s.mkapp(ws.UPAIR, yv, yv))),
        )

        f, g, A, B = Var(self.vf), Var(self.vg), Var(self.vA), Var(self.vB)
        x, y, p = Var(self.vx), Var(self.vy), Var(self.vp)
        conj1 = Forall(
            self.vp,
            Imp(
                s.member(p, f),
                Exists(
                    self.vx,
                    Exists(
                        self.vy,
                        And(
                            s.member(x, A),
                            And(s.member(y, B), s.eq(p, self.opair_t(x, y))),
                        ),
                    ),
                ),
            ),
        )
        conj2 = Forall(
            self.vx,
            Imp(s.member(x, A), s.exists_one(self.vy, s.member(self.opair_t(x, y), f))),
        )
        self.isfun, self.isfun_iff = ws.define_predicate(
            "isfun", (self.vf, self.vA, self.vB), And(conj1, conj2)
        )

        chi_arrow = s.pred(self.isfun, f, A, B)
        if policy == "strict":
            arrow_exists = self._prove_arrow_exists(chi_arrow)
        else:
            sy = s.fresh_var("s")
            arrow_exists = ws.admit_lemma(
                "funspace-set-exists",
                Sequent((), (Exists(sy, Forall(self.vf, Iff(s.member(f, Var(sy)), chi_arrow))),)),
            )
        self.arrow, self.arrow_member_thm, _ = define_by_membership(
            ws, "arrow", (self.vA, self.vB), self.vf, chi_arrow, arrow_exists
        )

        # app(f, x): the w with opair(x, w) in f, else the empty set.
        self.vwit = s.fresh_var("w")
        psi_app = s.member(self.opair_t(x, Var(self.vwit)), f)
        self.app, self.app_def = define_by_description(
            ws, "app", (self.vf, self.vx), self.vwit, psi_app, self.empty_t
        )

        chi_e = Exists(
            self.vx,
            Exists(
                self.vg,
                And(
                    s.member(x, A),
                    And(
                        s.member(g, self.arrow_t(A, self.bool_t)),
                        And(s.eq(p, self.opair_t(x, g)), self.eq_props(x, g)),
                    ),
                ),
            ),
        )
        if policy == "strict":
            eqfn_exists = self._prove_eqfn_exists(chi_e)
        else:
            sy = s.fresh_var("s")
            eqfn_exists = ws.admit_lemma(
                "eq-indicator-set-exists",
                Sequent((), (Exists(sy, Forall(self.vp, Iff(s.member(p, Var(sy)), chi_e))),)),
            )
        self.eqfn, self.eqfn_member_thm, _ = define_by_membership(
            ws, "eqfn", (self.vA,), self.vp, chi_e, eqfn_exists
        )

        w, z = Var(self.vw), Var(self.vz)
        self.inductive, self.inductive_iff = ws.define_predicate(
            "inductive",
            (self.vw,),
            And(
                s.member(self.empty_t, w),
                Forall(self.vz, Imp(s.member(z, w), s.member(self.succ_t(z), w))),
            ),
        )
        chi_nat = Forall(self.vw, Imp(s.pred(self.inductive, w), s.member(x, w)))
        self.natsym, self.nat_member_thm, _ = define_by_membership(
            ws, "nat", (), self.vx, chi_nat, self._prove_nat_exists(chi_nat)
        )
        self.nat_t = s.mkapp(self.natsym)
        self._numeral_terms: List[Term] = [self.empty_t]
        ws.ext["base"] = self

    # -- term builders -------------------------------------------------------

    def opair_t(self, a: Term, b: Term) -> Term:
        return self.ws.sig.mkapp(self.opair, a, b)

    def succ_t(self, t: Term) -> Term:
        return self.ws.sig.mkapp(self.succ, t)

    def arrow_t(self, A: Term, B: Term) -> Term:
        return self.ws.sig.mkapp(self.arrow, A, B)

    def app_t(self, f: Term, x: Term) -> Term:
        return self.ws.sig.mkapp(self.app, f, x)

    def app2_t(self, f: Term, x: Term, y: Term) -> Term:
        return self.app_t(self.app_t(f, x), y)

    def eqfn_t(self, A: Term) -> Term:
        return self.ws.sig.mkapp(self.eqfn, A)

    def numeral(self, k: int) -> Term:
        while len(self._numeral_terms) <= k:
            self._numeral_terms.append(self.succ_t(self._numeral_terms[-1]))
        return self._numeral_terms[k]

    def eq_props(self, xt: Term, gt: Term) -> Formula:
        """all y. y in A imp ((x=y imp app(g,y)=top) and (not x=y imp app(g,y)=bot)),
        the pointwise property of the equality indicator for xt."""
        s = self.ws.sig
        y = Var(self.vy)
        A = Var(self.vA)
        return Forall(
            self.vy,
            Imp(
                s.member(y, A),
                And(
                    Imp(s.eq(xt, y), s.eq(self.app_t(gt, y), self.top_t)),
                    Imp(Not(s.eq(xt, y)), s.eq(self.app_t(gt, y), self.bot_t)),
                ),
            ),
        )

    # -- memo ----------------------------------------------------------------

    def _memo(self, key, builder) -> Theorem:
        got = self._lemmas.get(key)
        if got is None:
            got = builder()
            self._lemmas[key] = got
        return got

    def _ax(self, name: str) -> Tuple[Theorem, Formula]:
        t = self.ws.axiom(name)
        (f,) = t.sequent.right
        return t, f

    def _admit(self, name: str, stmt: Formula) -> Theorem:
        return self.ws.admit_lemma(name, Sequent((), (stmt,)))

    # -- primitive-axiom lemmas ------------------------------------------------

    def upair_member(self) -> Theorem:
        """|- z in upair(x, y) iff (x = z or y = z)"""

        def build():
            ws = self.ws
            t, f = self._ax("pair")
            t, _ = _elim(ws, t, f, Var(self.vx), Var(self.vy), Var(self.vz))
            return t

        return self._memo("upair-member", build)

    def subset_iff(self) -> Theorem:
        """|- sub(x, y) iff all z. z in x imp z in y"""

        def build():
            ws = self.ws
            t, f = self._ax("subset")
            t, _ = _elim(ws, t, f, Var(self.vx), Var(self.vy))
            return t

        return self._memo("subset-iff", build)

    def pow_member(self) -> Theorem:
        """|- x in pow(y) iff sub(x, y)"""

        def build():
            ws = self.ws
            t, f = self._ax("power-set")
            t, _ = _elim(ws, t, f, Var(self.vx), Var(self.vy))
            return t

        return self._memo("pow-member", build)

    def union_member(self) -> Theorem:
        """|- z in union(x) iff ex y. y in x and z in y"""

        def build():
            ws = self.ws
            t, f = self._ax("union")
            t, _ = _elim(ws, t, f, Var(self.vx), Var(self.vz))
            return t

        return self._memo("union-member", build)

    def not_in_empty(self) -> Theorem:
        """|- not (x in empty)"""

        def build():
            ws = self.ws
            t, f = self._ax("empty-set")
            t, _ = _elim(ws, t, f, Var(self.vx))
            return t

        return self._memo("not-in-empty", build)

    def _not_in_empty_at(self, term: Term) -> Theorem:
        return self.ws.inst(self.not_in_empty(), {self.vx: term})

    # -- truth values ----------------------------------------------------------

    def top_member(self) -> Theorem:
        """|- z in top iff z = empty"""

        def build():
            ws = self.ws
            s = ws.sig
            z = Var(self.vz)
            e = self.empty_t
            um = ws.inst(self.upair_member(), {self.vx: e, self.vy: e})
            raw = s.mkapp(ws.UPAIR, e, e)
            um = tk.rw(ws, tk.eq_sym(ws, self.top_eq, self.top_t, raw), um, raw, self.top_t)
            in_top = s.member(z, self.top_t)
            disj = Or(s.eq(e, z), s.eq(e, z))
            got = tk.iff_mp(ws, um, ws.hypothesis(in_top), in_top, disj)
            flip = _or_same(ws, got, s.eq(e, z))
            fwd = ws.rimp(
                ws.cut(flip, tk.eq_sym(ws, ws.hypothesis(s.eq(e, z)), e, z), s.eq(e, z)),
                in_top,
                s.eq(z, e),
            )
            back = tk.eq_sym(ws, ws.hypothesis(s.eq(z, e)), z, e)
            back = ws.ror(back, s.eq(e, z), s.eq(e, z))
            back = tk.iff_mpr(ws, um, back, in_top, disj)
            bwd = ws.rimp(back, s.eq(z, e), in_top)
            return ws.riff(fwd, bwd, in_top, s.eq(z, e))

        return self._memo("top-member", build)

    def bool_member(self) -> Theorem:
        """|- z in bool iff (z = bot or z = top)"""

        def build():
            ws = self.ws
            s = ws.sig
            z = Var(self.vz)
            um = ws.inst(self.upair_member(), {self.vx: self.bot_t, self.vy: self.top_t})
            raw = s.mkapp(ws.UPAIR, self.bot_t, self.top_t)
            um = tk.rw(ws, tk.eq_sym(ws, self.bool_eq, self.bool_t, raw), um, raw, self.bool_t)
            in_bool = s.member(z, self.bool_t)
            src = Or(s.eq(self.bot_t, z), s.eq(self.top_t, z))
            dst = Or(s.eq(z, self.bot_t), s.eq(z, self.top_t))
            got = tk.iff_mp(ws, um, ws.hypothesis(in_bool), in_bool, src)
            c1 = tk.eq_sym(ws, ws.hypothesis(s.eq(self.bot_t, z)), self.bot_t, z)
            c1 = ws.ror(c1, s.eq(z, self.bot_t), s.eq(z, self.top_t))
            c2 = tk.eq_sym(ws, ws.hypothesis(s.eq(self.top_t, z)), self.top_t, z)
            c2 = ws.ror(c2, s.eq(z, self.bot_t), s.eq(z, self.top_t))
            fwd = ws.cut(got, ws.lor(c1, c2, s.eq(self.bot_t, z), s.eq(self.top_t, z)), src)
            fwd = ws.rimp(fwd, in_bool, dst)
            d1 = tk.eq_sym(ws, ws.hypothesis(s.eq(z, self.bot_t)), z, self.bot_t)
            d1 = ws.ror(d1, s.eq(self.bot_t, z), s.eq(self.top_t, z))
            d2 = tk.eq_sym(ws, ws.hypothesis(s.eq(z, self.top_t)), z, self.top_t)
            d2 = ws.ror(d2, s.eq(self.bot_t, z), s.eq(self.top_t, z))
            back = ws.lor(d1, d2, s.eq(z, self.bot_t), s.eq(z, self.top_t))
            back = tk.iff_mpr(ws, um, back, in_bool, src)
            bwd = ws.rimp(back, dst, in_bool)
            return ws.riff(fwd, bwd, in_bool, dst)

        return self._memo("bool-member", build)

    def top_in_bool(self) -> Theorem:
        """|- top in bool"""

        def build():
            ws = self.ws
            s = ws.sig
            bm = ws.inst(self.bool_member(), {self.vz: self.top_t})
            disj = Or(s.eq(self.top_t, self.bot_t), s.eq(self.top_t, self.top_t))
            got = ws.ror(ws.refl(self.top_t), s.eq(self.top_t, self.bot_t), s.eq(self.top_t, self.top_t))
            return tk.iff_mpr(ws, bm, got, s.member(self.top_t, self.bool_t), disj)

        return self._memo("top-in-bool", build)

    def bot_in_bool(self) -> Theorem:
        """|- bot in bool"""

        def build():
            ws = self.ws
            s = ws.sig
            bm = ws.inst(self.bool_member(), {self.vz: self.bot_t})
            disj = Or(s.eq(self.bot_t, self.bot_t), s.eq(self.bot_t, self.top_t))
            got = ws.ror(ws.refl(self.bot_t), s.eq(self.bot_t, self.bot_t), s.eq(self.bot_t, self.top_t))
            return tk.iff_mpr(ws, bm, got, s.member(self.bot_t, self.bool_t), disj)

        return self._memo("bot-in-bool", build)

    def empty_in_top(self) -> Theorem:
        """|- empty in top"""

        def build():
            ws = self.ws
            s = ws.sig
            tm = ws.inst(self.top_member(), {self.vz: self.empty_t})
            return tk.iff_mpr(
                ws,
                tm,
                ws.refl(self.empty_t),
                s.member(self.empty_t, self.top_t),
                s.eq(self.empty_t, self.empty_t),
            )

        return self._memo("empty-in-top", build)

    def truth_distinct(self) -> Theorem:
        """|- not (top = bot)"""

        def build():
            ws = self.ws
            s = ws.sig
            heq = ws.hypothesis(s.eq(self.top_t, self.bot_t))
            r = tk.rw_right(
                ws, heq, self.empty_in_top(), s.member(self.empty_t, self.top_t), self.top_t, self.bot_t
            )
            r = tk.rw_right(ws, self.bot_eq, r, s.member(self.empty_t, self.bot_t), self.bot_t, self.empty_t)
            c = tk.contradiction(ws, r, self._not_in_empty_at(self.empty_t), s.member(self.empty_t, self.empty_t))
            return ws.rnot(c, s.eq(self.top_t, self.bot_t))

        return self._memo("truth-distinct", build)

    def nonempty_intro(self, t: Theorem, elem: Term, setterm: Term) -> Theorem:
        """From .. |- elem in setterm, .. conclude .. |- not (setterm = empty), ..

        setterm must not occur inside elem (the rewrite hits the whole
        membership formula)."""
        ws = self.ws
        s = ws.sig
        heq = ws.hypothesis(s.eq(setterm, self.empty_t))
        r = tk.rw_right(ws, heq, t, s.member(elem, setterm), setterm, self.empty_t)
        c = tk.contradiction(ws, r, self._not_in_empty_at(elem), s.member(elem, self.empty_t))
        return ws.rnot(c, s.eq(setterm, self.empty_t))

    def bool_nonempty(self) -> Theorem:
        """|- not (bool = empty)"""
        return self._memo(
            "bool-nonempty",
            lambda: self.nonempty_intro(self.top_in_bool(), self.top_t, self.bool_t),
        )

    def nonempty_elim(self) -> Theorem:
        """|- not (A = empty) imp ex z. z in A"""

        def build():
            ws = self.ws
            s = ws.sig
            A, z = Var(self.vA), Var(self.vz)
            inA = s.member(z, A)
            ing = s.member(z, self.empty_t)
            exf = Exists(self.vz, inA)
            h1 = ws.rex(ws.hypothesis(inA), exf, z)
            h2 = ws.lnot(h1, exf)
            h2 = ws.rweak(h2, ing)
            fwd = ws.rimp(h2, inA, ing)
            c = tk.contradiction(ws, ws.hypothesis(ing), self._not_in_empty_at(z), ing)
            c = ws.rweak(c, inA)
            bwd = ws.rimp(c, ing, inA)
            iff = ws.riff(fwd, bwd, inA, ing)
            alls = ws.rall(iff, Forall(self.vz, Iff(inA, ing)), self.vz)
            ext, extf = self._ax("extensionality")
            ext2, f2 = _elim(ws, ext, extf, A, self.empty_t)
            eqt = tk.iff_mp(ws, ext2, alls, f2.left, f2.right)
            ln = ws.lnot(eqt, s.eq(A, self.empty_t))
            ln = ws.rweak(ln, exf)
            bc = tk.by_cases(ws, ws.hypothesis(exf), ln, exf)
            return ws.rimp(bc, Not(s.eq(A, self.empty_t)), exf)

        return self._memo("nonempty-elim", build)

    # -- ordered pairs -----------------------------------------------------------

    def upair_eq_first(self) -> Theorem:
        """|- upair(x,y) = upair(c,d) imp (x = c or x = d)"""

        def build():
            ws = self.ws
            s = ws.sig
            x, y, c, d = Var(self.vx), Var(self.vy), Var(self.vc), Var(self.vd)
            uxy = s.mkapp(ws.UPAIR, x, y)
            ucd = s.mkapp(ws.UPAIR, c, d)
            heq = s.eq(uxy, ucd)
            m1 = ws.inst(self.upair_member(), {self.vz: x})
            got = ws.ror(ws.refl(x), s.eq(x, x), s.eq(y, x))
            got = tk.iff_mpr(ws, m1, got, s.member(x, uxy), Or(s.eq(x, x), s.eq(y, x)))
            got = tk.rw_right(ws, ws.hypothesis(heq), got, s.member(x, uxy), uxy, ucd)
            m2 = ws.inst(
                self.upair_member(), {self.vx: c, self.vy: d, self.vz: x}
            )
            disj = Or(s.eq(c, x), s.eq(d, x))
            got = tk.iff_mp(ws, m2, got, s.member(x, ucd), disj)
            tgt = Or(s.eq(x, c), s.eq(x, d))
            c1 = ws.ror(tk.eq_sym(ws, ws.hypothesis(s.eq(c, x)), c, x), s.eq(x, c), s.eq(x, d))
            c2 = ws.ror(tk.eq_sym(ws, ws.hypothesis(s.eq(d, x)), d, x), s.eq(x, c), s.eq(x, d))
            got = ws.cut(got, ws.lor(c1, c2, s.eq(c, x), s.eq(d, x)), disj)
            return ws.rimp(got, heq, tgt)

        return self._memo("upair-eq-first", build)

    def upair_eq_second(self) -> Theorem:
        """|- upair(x,y) = upair(c,d) imp (y = c or y = d)"""

        def build():
            ws = self.ws
            s = ws.sig
            x, y, c, d = Var(self.vx), Var(self.vy), Var(self.vc), Var(self.vd)
            uxy = s.mkapp(ws.UPAIR, x, y)
            ucd = s.mkapp(ws.UPAIR, c, d)
            heq = s.eq(uxy, ucd)
            m1 = ws.inst(self.upair_member(), {self.vz: y})
            got = ws.ror(ws.refl(y), s.eq(x, y), s.eq(y, y))
            got = tk.iff_mpr(ws, m1, got, s.member(y, uxy), Or(s.eq(x, y), s.eq(y, y)))
            got = tk.rw_right(ws, ws.hypothesis(heq), got, s.member(y, uxy), uxy, ucd)
            m2 = ws.inst(self.upair_member(), {self.vx: c, self.vy: d, self.vz: y})
            disj = Or(s.eq(c, y), s.eq(d, y))
            got = tk.iff_mp(ws, m2, got, s.member(y, ucd), disj)
            c1 = ws.ror(tk.eq_sym(ws, ws.hypothesis(s.eq(c, y)), c, y), s.eq(y, c), s.eq(y, d))
            c2 = ws.ror(tk.eq_sym(ws, ws.hypothesis(s.eq(d, y)), d, y), s.eq(y, c), s.eq(y, d))
            got = ws.cut(got, ws.lor(c1, c2, s.eq(c, y), s.eq(d, y)), disj)
            return ws.rimp(got, heq, Or(s.eq(y, c), s.eq(y, d)))

        return self._memo("upair-eq-second", build)

    def pair_injectivity(self) -> Theorem:
        """|- opair(a,b) = opair(c,d) imp (a = c and b = d)"""

        def build():
            ws = self.ws
            s = ws.sig
            a, b, c, d = Var(self.va), Var(self.vb), Var(self.vc), Var(self.vd)
            P = s.mkapp(ws.UPAIR, a, a)
            Q = s.mkapp(ws.UPAIR, a, b)
            R = s.mkapp(ws.UPAIR, c, c)
            S = s.mkapp(ws.UPAIR, c, d)
            H = s.eq(self.opair_t(a, b), self.opair_t(c, d))
            oab = self.opair_eq
            ocd = ws.inst(self.opair_eq, {self.va: c, self.vb: d})
            raw_ab = s.mkapp(ws.UPAIR, P, Q)
            raw_cd = s.mkapp(ws.UPAIR, R, S)
            heq = ws.hypothesis(H)
            heq = tk.rw_right(ws, oab, heq, H, self.opair_t(a, b), raw_ab)
            heq = tk.rw_right(
                ws, ocd, heq, s.eq(raw_ab, self.opair_t(c, d)), self.opair_t(c, d), raw_cd
            )
            # heq : {H} |- upair(P,Q) = upair(R,S)
            first = self.upair_eq_first()
            second = self.upair_eq_second()

            def fst(xt, yt, ct, dt, eq_thm):
                lem = ws.inst(first, {self.vx: xt, self.vy: yt, self.vc: ct, self.vd: dt})
                uxy = s.mkapp(ws.UPAIR, xt, yt)
                ucd2 = s.mkapp(ws.UPAIR, ct, dt)
                return tk.mp(ws, lem, eq_thm, s.eq(uxy, ucd2), Or(s.eq(xt, ct), s.eq(xt, dt)))

            def snd(xt, yt, ct, dt, eq_thm):
                lem = ws.inst(second, {self.vx: xt, self.vy: yt, self.vc: ct, self.vd: dt})
                uxy = s.mkapp(ws.UPAIR, xt, yt)
                ucd2 = s.mkapp(ws.UPAIR, ct, dt)
                return tk.mp(ws, lem, eq_thm, s.eq(uxy, ucd2), Or(s.eq(yt, ct), s.eq(yt, dt)))

            def hsym(eqf):
                return tk.eq_sym(ws, ws.hypothesis(eqf), eqf.args[0], eqf.args[1])

            # a = c, from P = R or P = S
            f1 = fst(P, Q, R, S, heq)
            casePR = _or_same(ws, fst(a, a, c, c, ws.hypothesis(s.eq(P, R))), s.eq(a, c))
            casePS = fst(c, d, a, a, hsym(s.eq(P, S)))
            casePS = _or_same(ws, casePS, s.eq(c, a))
            casePS = ws.cut(casePS, tk.eq_sym(ws, ws.hypothesis(s.eq(c, a)), c, a), s.eq(c, a))
            AC = ws.cut(f1, ws.lor(casePR, casePS, s.eq(P, R), s.eq(P, S)), Or(s.eq(P, R), s.eq(P, S)))
            # AC : {H} |- a = c
            ca = ws.cut(AC, tk.eq_sym(ws, ws.hypothesis(s.eq(a, c)), a, c), s.eq(a, c))
            # ca : {H} |- c = a

            def via_a(bq_thm, d_eq_a_thm, bq, is_b_eq_c):
                """From b=c (or b=a) and d=a-style facts build b=d."""
                if is_b_eq_c:
                    t1 = tk.eq_trans(ws, bq_thm, ca, b, c, a)
                else:
                    t1 = bq_thm
                t2 = ws.cut(d_eq_a_thm, tk.eq_sym(ws, ws.hypothesis(s.eq(d, a)), d, a), s.eq(d, a))
                return tk.eq_trans(ws, t1, t2, b, a, d)

            # b = d, case split on Q = R / Q = S, then S = P / S = Q
            f2 = snd(P, Q, R, S, heq)
            f4 = snd(R, S, P, Q, ws.cut(heq, tk.eq_sym(ws, ws.hypothesis(s.eq(raw_ab, raw_cd)), raw_ab, raw_cd), s.eq(raw_ab, raw_cd)))
            # f4 : {H} |- S = P or S = Q

            def d_eq_a_from_SP():
                return _or_same(ws, snd(c, d, a, a, ws.hypothesis(s.eq(S, P))), s.eq(d, a))

            def bd_with_bc(bc_thm):
                # have b = c; find d
                sp = via_a(bc_thm, d_eq_a_from_SP(), s.eq(b, c), True)
                dsnd = snd(c, d, a, b, ws.hypothesis(s.eq(S, Q)))
                da = via_a(bc_thm, ws.hypothesis(s.eq(d, a)), None, True)
                db = ws.cut(ws.hypothesis(s.eq(d, b)), tk.eq_sym(ws, ws.hypothesis(s.eq(d, b)), d, b), s.eq(d, b))
                sq = ws.cut(dsnd, ws.lor(da, db, s.eq(d, a), s.eq(d, b)), Or(s.eq(d, a), s.eq(d, b)))
                return ws.cut(f4, ws.lor(sp, sq, s.eq(S, P), s.eq(S, Q)), Or(s.eq(S, P), s.eq(S, Q)))

            caseQR = bd_with_bc(_or_same(ws, snd(a, b, c, c, ws.hypothesis(s.eq(Q, R))), s.eq(b, c)))
            # case Q = S: b = c or b = d directly
            qs = snd(a, b, c, d, ws.hypothesis(s.eq(Q, S)))
            bd_direct = ws.hypothesis(s.eq(b, d))
            caseQS = ws.cut(qs, ws.lor(bd_with_bc(ws.hypothesis(s.eq(b, c))), bd_direct, s.eq(b, c), s.eq(b, d)), Or(s.eq(b, c), s.eq(b, d)))
            BD = ws.cut(f2, ws.lor(caseQR, caseQS, s.eq(Q, R), s.eq(Q, S)), Or(s.eq(Q, R), s.eq(Q, S)))
            both = ws.rand(AC, BD, s.eq(a, c), s.eq(b, d))
            return ws.rimp(both, H, And(s.eq(a, c), s.eq(b, d)))

        return self._memo("pair-injectivity", build)

    # -- successor and naturals ---------------------------------------------------

    def succ_member(self) -> Theorem:
        """|- z in succ(y) iff (z in y or z = y)"""

        def build():
            ws = self.ws
            s = ws.sig
            y, z = Var(self.vy), Var(self.vz)
            uyy = s.mkapp(ws.UPAIR, y, y)
            W = s.mkapp(ws.UPAIR, y, uyy)
            raw = s.mkapp(ws.UNION, W)
            um, umf = _elim(ws, *self._ax("union"), W, z)
            # umf : z in union(W) iff ex v. v in W and z in v
            exf = umf.right
            vvar = exf.var
            Hv = exf.body
            vv = Var(vvar)
            in_W = s.member(vv, W)
            in_v = s.member(z, vv)
            sel1 = tk.sel_and_l(ws, in_W, in_v)
            sel2 = tk.sel_and_r(ws, in_W, in_v)
            pm = ws.inst(self.upair_member(), {self.vx: y, self.vy: uyy, self.vz: vv})
            mem_or = tk.iff_mp(ws, pm, sel1, in_W, Or(s.eq(y, vv), s.eq(uyy, vv)))
            tgt = Or(s.member(z, y), s.eq(z, y))
            c1 = tk.rw_right(
                ws,
                tk.eq_sym(ws, ws.hypothesis(s.eq(y, vv)), y, vv),
                sel2,
                in_v,
                vv,
                y,
            )
            c1 = ws.ror(c1, s.member(z, y), s.eq(z, y))
            c2 = tk.rw_right(
                ws,
                tk.eq_sym(ws, ws.hypothesis(s.eq(uyy, vv)), uyy, vv),
                sel2,
                in_v,
                vv,
                uyy,
            )
            pm2 = ws.inst(self.upair_member(), {self.vx: y, self.vy: y, self.vz: z})
            c2 = tk.iff_mp(ws, pm2, c2, s.member(z, uyy), Or(s.eq(y, z), s.eq(y, z)))
            c2 = _or_same(ws, c2, s.eq(y, z))
            c2 = ws.cut(c2, tk.eq_sym(ws, ws.hypothesis(s.eq(y, z)), y, z), s.eq(y, z))
            c2 = ws.ror(c2, s.member(z, y), s.eq(z, y))
            cases = tk.case_split(ws, mem_or, c1, c2, s.eq(y, vv), s.eq(uyy, vv))
            # cases : {Hv} |- z in y or z = y
            got = tk.iff_mp(ws, um, ws.hypothesis(s.member(z, raw)), s.member(z, raw), exf)
            fwd = tk.exists_elim(ws, got, cases, exf, vvar)
            fwd = ws.rimp(fwd, s.member(z, raw), tgt)
            # backward
            pmy = ws.inst(self.upair_member(), {self.vx: y, self.vy: uyy, self.vz: y})
            yW = ws.ror(ws.refl(y), s.eq(y, y), s.eq(uyy, y))
            yW = tk.iff_mpr(ws, pmy, yW, s.member(y, W), Or(s.eq(y, y), s.eq(uyy, y)))
            b1 = ws.rand(yW, ws.hypothesis(s.member(z, y)), s.member(y, W), s.member(z, y))
            b1 = ws.rex(b1, exf, y)
            b1 = tk.iff_mpr(ws, um, b1, s.member(z, raw), exf)
            pmu = ws.inst(self.upair_member(), {self.vx: y, self.vy: uyy, self.vz: uyy})
            uW = ws.ror(ws.refl(uyy), s.eq(y, uyy), s.eq(uyy, uyy))
            uW = tk.iff_mpr(ws, pmu, uW, s.member(uyy, W), Or(s.eq(y, uyy), s.eq(uyy, uyy)))
            zin = tk.eq_sym(ws, ws.hypothesis(s.eq(z, y)), z, y)
            zin = ws.ror(zin, s.eq(y, z), s.eq(y, z))
            zin = tk.iff_mpr(ws, pm2, zin, s.member(z, uyy), Or(s.eq(y, z), s.eq(y, z)))
            b2 = ws.rand(uW, zin, s.member(uyy, W), s.member(z, uyy))
            b2 = ws.rex(b2, exf, uyy)
            b2 = tk.iff_mpr(ws, um, b2, s.member(z, raw), exf)
            bwd = ws.lor(b1, b2, s.member(z, y), s.eq(z, y))
            bwd = ws.rimp(bwd, tgt, s.member(z, raw))
            iff = ws.riff(fwd, bwd, s.member(z, raw), tgt)
            return tk.rw(
                ws,
                tk.eq_sym(ws, self.succ_eq, self.succ_t(y), raw),
                iff,
                raw,
                self.succ_t(y),
            )

        return self._memo("succ-member", build)

    def zero_in_nat(self) -> Theorem:
        """|- empty in nat"""

        def build():
            ws = self.ws
            s = ws.sig
            w = Var(self.vw)
            indw = s.pred(self.inductive, w)
            (nm_f,) = self.nat_member_thm.sequent.right
            iff_i = self.inductive_iff
            (iff_f,) = iff_i.sequent.right
            body = iff_f.right
            got = tk.iff_mp(ws, iff_i, ws.hypothesis(indw), indw, body)
            got = tk.and_left(ws, got, body.left, body.right)
            got = ws.rimp(got, indw, s.member(self.empty_t, w))
            chi0 = Forall(self.vw, Imp(indw, s.member(self.empty_t, w)))
            got = ws.rall(got, chi0, self.vw)
            nm, nmf = _elim(ws, self.nat_member_thm, nm_f, self.empty_t)
            return tk.iff_mpr(ws, nm, got, nmf.left, nmf.right)

        return self._memo("zero-in-nat", build)

    def succ_in_nat(self) -> Theorem:
        """|- x in nat imp succ(x) in nat"""

        def build():
            ws = self.ws
            s = ws.sig
            x, w = Var(self.vx), Var(self.vw)
            indw = s.pred(self.inductive, w)
            (nm_f,) = self.nat_member_thm.sequent.right
            nmx, nmxf = _elim(ws, self.nat_member_thm, nm_f, x)
            chi = nmxf.right
            hx = tk.iff_mp(ws, nmx, ws.hypothesis(s.member(x, self.nat_t)), nmxf.left, chi)
            # hx : {x in nat} |- all w. inductive(w) imp x in w
            few = tk.forall_elim(ws, hx, chi, w)
            xin = tk.mp(ws, few, ws.hypothesis(indw), indw, s.member(x, w))
            (iff_f,) = self.inductive_iff.sequent.right
            body = iff_f.right
            got = tk.iff_mp(ws, self.inductive_iff, ws.hypothesis(indw), indw, body)
            clo = tk.and_right(ws, got, body.left, body.right)
            sx = tk.bounded_forall_elim(ws, clo, xin, body.right, x)
            sx = ws.rimp(sx, indw, s.member(self.succ_t(x), w))
            chi_s = Forall(self.vw, Imp(indw, s.member(self.succ_t(x), w)))
            sx = ws.rall(sx, chi_s, self.vw)
            nms, nmsf = _elim(ws, self.nat_member_thm, nm_f, self.succ_t(x))
            got = tk.iff_mpr(ws, nms, sx, nmsf.left, nmsf.right)
            return ws.rimp(got, s.member(x, self.nat_t), nmsf.left)

        return self._memo("succ-in-nat", build)

    def numeral_in_nat(self, k: int) -> Theorem:
        """|- numeral(k) in nat"""

        def build():
            ws = self.ws
            t = self.zero_in_nat()
            for i in range(k):
                step = ws.inst(self.succ_in_nat(), {self.vx: self.numeral(i)})
                t = tk.mp(
                    ws,
                    step,
                    t,
                    ws.sig.member(self.numeral(i), self.nat_t),
                    ws.sig.member(self.numeral(i + 1), self.nat_t),
                )
            return t

        return self._memo(("numeral-in-nat", k), build)

    def numeral_mem_chain(self, i: int, j: int) -> Theorem:
        """|- numeral(i) in numeral(j), for i < j"""
        if not 0 <= i < j:
            raise SchemaError("numeral_mem_chain needs i < j")

        def build():
            ws = self.ws
            s = ws.sig
            ni = self.numeral(i)
            sm = ws.inst(self.succ_member(), {self.vy: ni, self.vz: ni})
            got = ws.ror(ws.refl(ni), s.member(ni, ni), s.eq(ni, ni))
            got = tk.iff_mpr(
                ws, sm, got, s.member(ni, self.numeral(i + 1)), Or(s.member(ni, ni), s.eq(ni, ni))
            )
            for m in range(i + 1, j):
                nm = self.numeral(m)
                smm = ws.inst(self.succ_member(), {self.vy: nm, self.vz: ni})
                step = ws.ror(got, s.member(ni, nm), s.eq(ni, nm))
                got = tk.iff_mpr(
                    ws,
                    smm,
                    step,
                    s.member(ni, self.numeral(m + 1)),
                    Or(s.member(ni, nm), s.eq(ni, nm)),
                )
            return got

        return self._memo(("numeral-mem", i, j), build)

    def numeral_disj(self, k: int) -> Formula:
        """z = numeral(0) or .. or z = numeral(k-1), left-nested."""
        s = self.ws.sig
        z = Var(self.vz)
        f: Formula = s.eq(z, self.numeral(0))
        for i in range(1, k):
            f = Or(f, s.eq(z, self.numeral(i)))
        return f

    def numeral_member(self, k: int) -> Theorem:
        """|- z in numeral(k) iff (z = numeral(0) or .. or z = numeral(k-1))"""
        if k < 1:
            raise SchemaError("numeral_member needs k >= 1")

        def build():
            ws = self.ws
            s = ws.sig
            z = Var(self.vz)
            if k == 1:
                sm = ws.inst(self.succ_member(), {self.vy: self.numeral(0)})
                in1 = s.member(z, self.numeral(1))
                in0 = s.member(z, self.numeral(0))
                eq0 = s.eq(z, self.numeral(0))
                got = tk.iff_mp(ws, sm, ws.hypothesis(in1), in1, Or(in0, eq0))
                dead = tk.contradiction(ws, ws.hypothesis(in0), self._not_in_empty_at(z), in0)
                dead = ws.rweak(dead, eq0)
                fwd = ws.cut(got, ws.lor(dead, ws.hypothesis(eq0), in0, eq0), Or(in0, eq0))
                fwd = ws.rimp(fwd, in1, eq0)
                back = ws.ror(ws.hypothesis(eq0), in0, eq0)
                back = tk.iff_mpr(ws, sm, back, in1, Or(in0, eq0))
                bwd = ws.rimp(back, eq0, in1)
                return ws.riff(fwd, bwd, in1, eq0)
            prev = self.numeral_member(k - 1)
            dprev = self.numeral_disj(k - 1)
            dk = self.numeral_disj(k)
            nk1 = self.numeral(k - 1)
            ink = s.member(z, self.numeral(k))
            ink1 = s.member(z, nk1)
            eqk1 = s.eq(z, nk1)
            sm = ws.inst(self.succ_member(), {self.vy: nk1})
            got = tk.iff_mp(ws, sm, ws.hypothesis(ink), ink, Or(ink1, eqk1))
            c1 = tk.iff_mp(ws, prev, ws.hypothesis(ink1), ink1, dprev)
            c1 = ws.ror(c1, dprev, eqk1)
            c2 = ws.ror(ws.hypothesis(eqk1), dprev, eqk1)
            fwd = ws.cut(got, ws.lor(c1, c2, ink1, eqk1), Or(ink1, eqk1))
            fwd = ws.rimp(fwd, ink, dk)
            d1 = tk.iff_mpr(ws, prev, ws.hypothesis(dprev), ink1, dprev)
            d1 = ws.ror(d1, ink1, eqk1)
            d1 = tk.iff_mpr(ws, sm, d1, ink, Or(ink1, eqk1))
            d2 = ws.ror(ws.hypothesis(eqk1), ink1, eqk1)
            d2 = tk.iff_mpr(ws, sm, d2, ink, Or(ink1, eqk1))
            bwd = ws.lor(d1, d2, dprev, eqk1)
            bwd = ws.rimp(bwd, dk, ink)
            return ws.riff(fwd, bwd, ink, dk)

        return self._memo(("numeral-member", k), build)

    def numeral_distinct(self, i: int, j: int) -> Theorem:
        """|- not (numeral(i) = numeral(j)), for i < j"""
        if not 0 <= i < j:
            raise SchemaError("numeral_distinct needs i < j")

        def build():
            ws = self.ws
            s = ws.sig
            ni, nj = self.numeral(i), self.numeral(j)
            H = s.eq(ni, nj)
            if i == 0:
                nonj = self.nonempty_intro(self.numeral_mem_chain(0, j), self.numeral(0), nj)
                pos = tk.eq_sym(ws, ws.hypothesis(H), ni, nj)
                c = tk.contradiction(ws, pos, nonj, s.eq(nj, ni))
                return ws.rnot(c, H)
            mem = self.numeral_mem_chain(j - 1, j)
            sym = tk.eq_sym(ws, ws.hypothesis(H), ni, nj)
            mem = tk.rw_right(ws, sym, mem, s.member(self.numeral(j - 1), nj), nj, ni)
            un = ws.inst(self.numeral_member(i), {self.vz: self.numeral(j - 1)})
            disj = subst_formula(s, self.numeral_disj(i), {self.vz: self.numeral(j - 1)})
            got = tk.iff_mp(ws, un, mem, s.member(self.numeral(j - 1), ni), disj)

            def leaf(eqf):
                rhs = eqf.args[1]
                k = next(m for m in range(i) if self.numeral(m) == rhs)
                prior = self.numeral_distinct(k, j - 1)
                pos = tk.eq_sym(ws, ws.hypothesis(eqf), eqf.args[0], rhs)
                return tk.contradiction(ws, pos, prior, s.eq(rhs, eqf.args[0]))

            dead = _or_elim_left(ws, disj, leaf)
            c = ws.cut(got, dead, disj)
            return ws.rnot(c, H)

        return self._memo(("numeral-distinct", i, j), build)

    def numeral_vs_pair(self, k: int) -> Theorem:
        """|- not (numeral(k) = opair(a, b))"""

        def build():
            ws = self.ws
            s = ws.sig
            a, b = Var(self.va), Var(self.vb)
            nk = self.numeral(k)
            op = self.opair_t(a, b)
            P = s.mkapp(ws.UPAIR, a, a)
            Q = s.mkapp(ws.UPAIR, a, b)
            raw = s.mkapp(ws.UPAIR, P, Q)
            H = s.eq(nk, op)
            pmP = ws.inst(self.upair_member(), {self.vx: P, self.vy: Q, self.vz: P})
            PinRaw = ws.ror(ws.refl(P), s.eq(P, P), s.eq(Q, P))
            PinRaw = tk.iff_mpr(ws, pmP, PinRaw, s.member(P, raw), Or(s.eq(P, P), s.eq(Q, P)))
            PinOp = tk.rw_right(
                ws,
                tk.eq_sym(ws, self.opair_eq, op, raw),
                PinRaw,
                s.member(P, raw),
                raw,
                op,
            )
            if k == 0:
                sym = tk.eq_sym(ws, ws.hypothesis(H), nk, op)
                got = tk.rw_right(ws, sym, PinOp, s.member(P, op), op, nk)
                c = tk.contradiction(ws, got, self._not_in_empty_at(P), s.member(P, nk))
                return ws.rnot(c, H)
            mem = self.numeral_mem_chain(0, k)
            mem = tk.rw_right(ws, ws.hypothesis(H), mem, s.member(self.empty_t, nk), nk, op)
            mem = tk.rw_right(ws, self.opair_eq, mem, s.member(self.empty_t, op), op, raw)
            pm0 = ws.inst(self.upair_member(), {self.vx: P, self.vy: Q, self.vz: self.empty_t})
            disj = Or(s.eq(P, self.empty_t), s.eq(Q, self.empty_t))
            got = tk.iff_mp(ws, pm0, mem, s.member(self.empty_t, raw), disj)
            pma = ws.inst(self.upair_member(), {self.vx: a, self.vy: a, self.vz: a})
            ainP = ws.ror(ws.refl(a), s.eq(a, a), s.eq(a, a))
            ainP = tk.iff_mpr(ws, pma, ainP, s.member(a, P), Or(s.eq(a, a), s.eq(a, a)))
            c1 = tk.rw_right(ws, ws.hypothesis(s.eq(P, self.empty_t)), ainP, s.member(a, P), P, self.empty_t)
            c1 = tk.contradiction(ws, c1, self._not_in_empty_at(a), s.member(a, self.empty_t))
            pmq = ws.inst(self.upair_member(), {self.vx: a, self.vy: b, self.vz: a})
            ainQ = ws.ror(ws.refl(a), s.eq(a, a), s.eq(b, a))
            ainQ = tk.iff_mpr(ws, pmq, ainQ, s.member(a, Q), Or(s.eq(a, a), s.eq(b, a)))
            c2 = tk.rw_right(ws, ws.hypothesis(s.eq(Q, self.empty_t)), ainQ, s.member(a, Q), Q, self.empty_t)
            c2 = tk.contradiction(ws, c2, self._not_in_empty_at(a), s.member(a, self.empty_t))
            dead = ws.lor(c1, c2, s.eq(P, self.empty_t), s.eq(Q, self.empty_t))
            c = ws.cut(got, dead, disj)
            return ws.rnot(c, H)

        return self._memo(("numeral-vs-pair", k), build)

    # -- induction over the naturals ------------------------------------------

    def nat_induction(self, pform: Formula, nvar: int, base: Theorem, step: Theorem) -> Theorem:
        """Derive Gamma |- all n. n in nat imp P(n).

        pform is P with nvar free; base proves P(empty); step proves
        P(succ(n)) with {n in nat, P(n)} among its hypotheses. Side
        hypotheses must not contain nvar free."""
        ws = self.ws
        s = ws.sig
        n = Var(nvar)
        in_nat = s.member(n, self.nat_t)
        p0 = subst_formula(s, pform, {nvar: self.empty_t})
        if p0 not in base.sequent.right:
            raise RuleMismatch("nat_induction: base case does not prove P(empty)")
        psucc = subst_formula(s, pform, {nvar: self.succ_t(n)})
        if psucc not in step.sequent.right:
            raise RuleMismatch("nat_induction: step case does not prove P(succ(n))")
        z0 = s.fresh_var("src")
        comp = ws.inst(ws.comprehension(nvar, z0, pform), {z0: self.nat_t})
        (exg,) = comp.sequent.right
        Sv = s.fresh_var("S")
        S = Var(Sv)
        HS = subst_formula(s, exg.body, {exg.var: S})

        def fe(term: Term) -> Theorem:
            return tk.forall_elim(ws, ws.hypothesis(HS), HS, term)

        conj0 = And(s.member(self.empty_t, self.nat_t), p0)
        z_in = ws.rand(self.zero_in_nat(), base, s.member(self.empty_t, self.nat_t), p0)
        z_in = tk.iff_mpr(ws, fe(self.empty_t), z_in, s.member(self.empty_t, S), conj0)
        mvar = s.fresh_var("m")
        m = Var(mvar)
        pm = subst_formula(s, pform, {nvar: m})
        conj_m = And(s.member(m, self.nat_t), pm)
        got = tk.iff_mp(ws, fe(m), ws.hypothesis(s.member(m, S)), s.member(m, S), conj_m)
        mnat = tk.and_left(ws, got, s.member(m, self.nat_t), pm)
        mp_ = tk.and_right(ws, got, s.member(m, self.nat_t), pm)
        snat = tk.mp(
            ws,
            ws.inst(self.succ_in_nat(), {self.vx: m}),
            mnat,
            s.member(m, self.nat_t),
            s.member(self.succ_t(m), self.nat_t),
        )
        stepm = ws.inst(step, {nvar: m})
        psm = subst_formula(s, pform, {nvar: self.succ_t(m)})
        if s.member(m, self.nat_t) in stepm.sequent.left:
            stepm = ws.cut(mnat, stepm, s.member(m, self.nat_t))
        if pm in stepm.sequent.left:
            stepm = ws.cut(mp_, stepm, pm)
        conj_s = And(s.member(self.succ_t(m), self.nat_t), psm)
        clos = ws.rand(snat, stepm, s.member(self.succ_t(m), self.nat_t), psm)
        clos = tk.iff_mpr(ws, fe(self.succ_t(m)), clos, s.member(self.succ_t(m), S), conj_s)
        clos = ws.rimp(clos, s.member(m, S), s.member(self.succ_t(m), S))
        cloall = Forall(mvar, Imp(s.member(m, S), s.member(self.succ_t(m), S)))
        clos = ws.rall(clos, cloall, mvar)
        (iff_f,) = self.inductive_iff.sequent.right
        indS = s.pred(self.inductive, S)
        bodyS = subst_formula(s, iff_f.right, {self.vw: S})
        iffS = ws.inst(self.inductive_iff, {self.vw: S})
        both = ws.rand(z_in, clos, s.member(self.empty_t, S), cloall)
        indS_t = tk.iff_mpr(ws, iffS, both, indS, bodyS)
        (nm_f,) = self.nat_member_thm.sequent.right
        nmn, nmnf = _elim(ws, self.nat_member_thm, nm_f, n)
        chi_n = nmnf.right
        hx = tk.iff_mp(ws, nmn, ws.hypothesis(in_nat), in_nat, chi_n)
        feS = tk.forall_elim(ws, hx, chi_n, S)
        n_in_S = tk.mp(ws, feS, indS_t, indS, s.member(n, S))
        got = tk.iff_mp(ws, fe(n), n_in_S, s.member(n, S), And(in_nat, pform))
        got = tk.and_right(ws, got, in_nat, pform)
        got = ws.rimp(got, in_nat, pform)
        target = Forall(nvar, Imp(in_nat, pform))
        got = ws.rall(got, target, nvar)
        got = ws.lex(got, exg, Sv)
        return ws.cut(comp, got, exg)

    def succ_step_member(self) -> Theorem:
        """|- all y. y in nat imp all z. z in y imp (succ(z) in y or succ(z) = y)"""

        def build():
            ws = self.ws
            s = ws.sig
            y, z = Var(self.vy), Var(self.vz)
            sz = self.succ_t(z)
            orf = Or(s.member(sz, y), s.eq(sz, y))
            pform = Forall(self.vz, Imp(s.member(z, y), orf))

            # base: nothing is in empty
            p0 = subst_formula(s, pform, {self.vy: self.empty_t})
            in0 = s.member(z, self.empty_t)
            dead = tk.contradiction(ws, ws.hypothesis(in0), self._not_in_empty_at(z), in0)
            dead = ws.rweak(dead, p0.body.right)
            dead = ws.rimp(dead, in0, p0.body.right)
            base = ws.rall(dead, p0, self.vz)

            # step: z in succ(y) splits into z in y and z = y
            sy = self.succ_t(y)
            psucc = subst_formula(s, pform, {self.vy: sy})
            orfs = psucc.body.right
            in_sy = s.member(z, sy)
            zy_or = tk.iff_mp(
                ws,
                self.succ_member(),
                ws.hypothesis(in_sy),
                in_sy,
                Or(s.member(z, y), s.eq(z, y)),
            )
            # z in y: the claim at y settles succ(z) against y
            imp_z = tk.forall_elim(ws, ws.hypothesis(pform), pform, z)
            got = tk.mp(ws, imp_z, ws.hypothesis(s.member(z, y)), s.member(z, y), orf)
            smz = ws.inst(self.succ_member(), {self.vz: sz})
            a1 = ws.ror(ws.hypothesis(s.member(sz, y)), s.member(sz, y), s.eq(sz, y))
            a1 = tk.iff_mpr(ws, smz, a1, s.member(sz, sy), orf)
            a1 = ws.ror(a1, s.member(sz, sy), s.eq(sz, sy))
            a2 = ws.ror(ws.hypothesis(s.eq(sz, y)), s.member(sz, y), s.eq(sz, y))
            a2 = tk.iff_mpr(ws, smz, a2, s.member(sz, sy), orf)
            a2 = ws.ror(a2, s.member(sz, sy), s.eq(sz, sy))
            case_zy = tk.case_split(ws, got, a1, a2, s.member(sz, y), s.eq(sz, y))
            # z = y: congruence gives succ(z) = succ(y)
            h = s.fresh_var("hole")
            ctxf = s.eq(sz, self.succ_t(Var(h)))
            c2 = tk.subst_right(ws, ws.refl(sz), ws.hypothesis(s.eq(z, y)), ctxf, h, z, y)
            c2 = ws.ror(c2, s.member(sz, sy), s.eq(sz, sy))
            merged = tk.case_split(ws, zy_or, case_zy, c2, s.member(z, y), s.eq(z, y))
            step = ws.rimp(merged, in_sy, orfs)
            step = ws.rall(step, psucc, self.vz)
            return self.nat_induction(pform, self.vy, base, step)

        return self._memo("succ-step-member", build)

    def nat_trichotomy(self) -> Theorem:
        """|- all x. x in nat imp all y. y in nat imp (x in y or (x = y or y in x))"""

        def build():
            ws = self.ws
            s = ws.sig
            x, y = Var(self.vx), Var(self.vy)

            def tri(a: Term, bt: Term) -> Formula:
                return Or(s.member(a, bt), Or(s.eq(a, bt), s.member(bt, a)))

            in_nat_y = s.member(y, self.nat_t)
            pform = Forall(self.vy, Imp(in_nat_y, tri(x, y)))

            # zero against everything, itself by induction on y
            e = self.empty_t
            p2 = tri(e, y)
            inner0 = tri(e, e)
            z1 = ws.ror(ws.refl(e), s.eq(e, e), s.member(e, e))
            base2 = ws.ror(z1, s.member(e, e), inner0.right)
            sy = self.succ_t(y)
            p2s = tri(e, sy)
            sm0 = ws.inst(self.succ_member(), {self.vz: e})
            or0 = Or(s.member(e, y), s.eq(e, y))

            def zero_in_sy(disj: Theorem) -> Theorem:
                got = tk.iff_mpr(ws, sm0, disj, s.member(e, sy), or0)
                return ws.ror(got, s.member(e, sy), p2s.right)

            k1 = zero_in_sy(
                ws.ror(ws.hypothesis(s.member(e, y)), s.member(e, y), s.eq(e, y))
            )
            k2 = zero_in_sy(ws.ror(ws.hypothesis(s.eq(e, y)), s.member(e, y), s.eq(e, y)))
            k3 = tk.contradiction(
                ws, ws.hypothesis(s.member(y, e)), self._not_in_empty_at(y), s.member(y, e)
            )
            k3 = ws.rweak(k3, p2s)
            k23 = ws.lor(k2, k3, s.eq(e, y), s.member(y, e))
            step2 = ws.lor(k1, k23, s.member(e, y), p2.right)
            zero_case = self.nat_induction(p2, self.vy, base2, step2)

            # step: trichotomy lifts from x to succ(x)
            sx = self.succ_t(x)
            trg = tri(sx, y)
            ih = tk.mp(
                ws,
                tk.forall_elim(ws, ws.hypothesis(pform), pform, y),
                ws.hypothesis(in_nat_y),
                in_nat_y,
                tri(x, y),
            )
            ssm = self.succ_step_member()
            (ssm_f,) = tuple(ssm.sequent.right)
            stepper = tk.bounded_forall_elim(ws, ssm, ws.hypothesis(in_nat_y), ssm_f, y)
            inner_f = ssm_f.body.right
            imp1 = tk.forall_elim(ws, stepper, inner_f, x)
            got1 = tk.mp(
                ws,
                imp1,
                ws.hypothesis(s.member(x, y)),
                s.member(x, y),
                Or(s.member(sx, y), s.eq(sx, y)),
            )
            b1a = ws.ror(ws.hypothesis(s.member(sx, y)), s.member(sx, y), trg.right)
            b1b = ws.ror(ws.hypothesis(s.eq(sx, y)), s.eq(sx, y), s.member(y, sx))
            b1b = ws.ror(b1b, s.member(sx, y), trg.right)
            case1 = tk.case_split(ws, got1, b1a, b1b, s.member(sx, y), s.eq(sx, y))
            # the other two cases land y inside succ(x)
            smyx = ws.inst(self.succ_member(), {self.vz: y, self.vy: x})
            oryx = Or(s.member(y, x), s.eq(y, x))

            def y_in_sx(disj: Theorem) -> Theorem:
                got = tk.iff_mpr(ws, smyx, disj, s.member(y, sx), oryx)
                got = ws.ror(got, s.eq(sx, y), s.member(y, sx))
                return ws.ror(got, s.member(sx, y), trg.right)

            yx = tk.eq_sym(ws, ws.hypothesis(s.eq(x, y)), x, y)
            t2 = y_in_sx(ws.ror(yx, s.member(y, x), s.eq(y, x)))
            t3 = y_in_sx(
                ws.ror(ws.hypothesis(s.member(y, x)), s.member(y, x), s.eq(y, x))
            )
            c23 = ws.lor(t2, t3, s.eq(x, y), s.member(y, x))
            full = tk.case_split(ws, ih, case1, c23, s.member(x, y), tri(x, y).right)
            step = ws.rimp(full, in_nat_y, trg)
            psucc = subst_formula(s, pform, {self.vx: sx})
            step = ws.rall(step, psucc, self.vy)
            return self.nat_induction(pform, self.vx, zero_case, step)

        return self._memo("nat-trichotomy", build)

    def recursion_instance(
        self,
        g: int,
        z: int,
        hole: int,
        body: Formula,
        params: Sequence[int] = (),
        alpha: Term | None = None,
    ) -> Tuple[Formula, Theorem]:
        """Admitted recursion at stage omega for a membership-described functor.

        body says what z in F(H) means, with hole marking the H slot. The
        returned formula phi is the defining property of the level function

            app(g, 0) = 0  and
            all n in nat. all z. z in app(g, succ(n)) iff body[hole := app(g, n)]

        and the theorem is the admitted schema instance |- all params.
        exone g. phi, ready to feed a symbol definition. Free variables of
        body besides z and hole must be listed in params; they become the
        parameters of the instance. Only omega (the nat of this vocabulary)
        is a supported stage."""
        ws = self.ws
        s = ws.sig
        if alpha is not None and alpha != self.nat_t:
            raise SchemaError("recursion instances are only available at stage omega")
        if len({g, z, hole}) != 3:
            raise SchemaError("recursion instance: g, z and hole must be distinct")
        allowed = {z, hole} | set(params)
        if not body.free <= allowed:
            extra = sorted(s.name_of(v) for v in body.free - allowed)
            raise SchemaError(f"recursion instance: unlisted free variables {extra}")
        if g in body.free or g in params:
            raise SchemaError("recursion instance: g must not occur in the functor")
        used = {s.name_of(v) for v in body.free | {g, z, hole} | set(params)}
        nname = "n"
        k = 0
        while nname in used:
            k += 1
            nname = f"n{k}"
        nv = s.variable(nname)
        n = Var(nv)
        gt = Var(g)
        phi = And(
            s.eq(self.app_t(gt, self.empty_t), self.empty_t),
            Forall(
                nv,
                Imp(
                    s.member(n, self.nat_t),
                    Forall(
                        z,
                        Iff(
                            s.member(Var(z), self.app_t(gt, self.succ_t(n))),
                            subst_formula(s, body, {hole: self.app_t(gt, n)}),
                        ),
                    ),
                ),
            ),
        )
        stmt: Formula = s.exists_one(g, phi)
        for p in reversed(tuple(params)):
            stmt = Forall(p, stmt)
        thm = ws.admit_schema_instance(
            "recursion-omega", print_formula(s, stmt), Sequent((), (stmt,))
        )
        return phi, thm

    # -- function-space lemmas (policy-gated) -----------------------------------

    def elem_union_l(self) -> Theorem:
        """|- x in A imp x in union(upair(A, B))"""

        def build():
            ws = self.ws
            s = ws.sig
            x, A, B = Var(self.vx), Var(self.vA), Var(self.vB)
            W = s.mkapp(ws.UPAIR, A, B)
            U = s.mkapp(ws.UNION, W)
            um, umf = _elim(ws, *self._ax("union"), W, x)
            exf = umf.right
            pm = ws.inst(self.upair_member(), {self.vx: A, self.vy: B, self.vz: A})
            AinW = ws.ror(ws.refl(A), s.eq(A, A), s.eq(B, A))
            AinW = tk.iff_mpr(ws, pm, AinW, s.member(A, W), Or(s.eq(A, A), s.eq(B, A)))
            got = ws.rand(AinW, ws.hypothesis(s.member(x, A)), s.member(A, W), s.member(x, A))
            got = ws.rex(got, exf, A)
            got = tk.iff_mpr(ws, um, got, s.member(x, U), exf)
            return ws.rimp(got, s.member(x, A), s.member(x, U))

        return self._memo("elem-union-l", build)

    def elem_union_r(self) -> Theorem:
        """|- x in B imp x in union(upair(A, B))"""

        def build():
            ws = self.ws
            s = ws.sig
            x, A, B = Var(self.vx), Var(self.vA), Var(self.vB)
            W = s.mkapp(ws.UPAIR, A, B)
            U = s.mkapp(ws.UNION, W)
            um, umf = _elim(ws, *self._ax("union"), W, x)
            exf = umf.right
            pm = ws.inst(self.upair_member(), {self.vx: A, self.vy: B, self.vz: B})
            BinW = ws.ror(ws.refl(B), s.eq(A, B), s.eq(B, B))
            BinW = tk.iff_mpr(ws, pm, BinW, s.member(B, W), Or(s.eq(A, B), s.eq(B, B)))
            got = ws.rand(BinW, ws.hypothesis(s.member(x, B)), s.member(B, W), s.member(x, B))
            got = ws.rex(got, exf, B)
            got = tk.iff_mpr(ws, um, got, s.member(x, U), exf)
            return ws.rimp(got, s.member(x, B), s.member(x, U))

        return self._memo("elem-union-r", build)

    def upair_in_pow(self) -> Theorem:
        """|- a in U imp (b in U imp upair(a, b) in pow(U))"""

        def build():
            ws = self.ws
            s = ws.sig
            a, b, U, z = Var(self.va), Var(self.vb), Var(self.vU), Var(self.vz)
            u = s.mkapp(ws.UPAIR, a, b)
            c1 = tk.rw_right(
                ws, ws.hypothesis(s.eq(a, z)), ws.hypothesis(s.member(a, U)), s.member(a, U), a, z
            )
            c2 = tk.rw_right(
                ws, ws.hypothesis(s.eq(b, z)), ws.hypothesis(s.member(b, U)), s.member(b, U), b, z
            )
            pm = ws.inst(self.upair_member(), {self.vx: a, self.vy: b})
            got = tk.iff_mp(
                ws,
                pm,
                ws.hypothesis(s.member(z, u)),
                s.member(z, u),
                Or(s.eq(a, z), s.eq(b, z)),
            )
            got = ws.cut(got, ws.lor(c1, c2, s.eq(a, z), s.eq(b, z)), Or(s.eq(a, z), s.eq(b, z)))
            got = ws.rimp(got, s.member(z, u), s.member(z, U))
            allz = Forall(self.vz, Imp(s.member(z, u), s.member(z, U)))
            got = ws.rall(got, allz, self.vz)
            sub = ws.inst(self.subset_iff(), {self.vx: u, self.vy: U})
            got = tk.iff_mpr(ws, sub, got, s.pred(ws.SUB, u, U), allz)
            pw = ws.inst(self.pow_member(), {self.vx: u, self.vy: U})
            got = tk.iff_mpr(ws, pw, got, s.member(u, s.mkapp(ws.POW, U)), s.pred(ws.SUB, u, U))
            got = ws.rimp(got, s.member(b, U), s.member(u, s.mkapp(ws.POW, U)))
            return ws.rimp(got, s.member(a, U), Imp(s.member(b, U), s.member(u, s.mkapp(ws.POW, U))))

        return self._memo("upair-in-pow", build)

    def opair_in_tower(self) -> Theorem:
        """|- a in U imp (b in U imp opair(a, b) in pow(pow(U)))"""

        def build():
            ws = self.ws
            s = ws.sig
            a, b, U = Var(self.va), Var(self.vb), Var(self.vU)
            powU = s.mkapp(ws.POW, U)
            haU = ws.hypothesis(s.member(a, U))
            hbU = ws.hypothesis(s.member(b, U))
            s1 = tk.apply_lemma(ws, self.upair_in_pow(), {self.vb: a}, haU, haU)
            s2 = tk.apply_lemma(ws, self.upair_in_pow(), {}, haU, hbU)
            uaa = s.mkapp(ws.UPAIR, a, a)
            uab = s.mkapp(ws.UPAIR, a, b)
            s3 = tk.apply_lemma(
                ws, self.upair_in_pow(), {self.va: uaa, self.vb: uab, self.vU: powU}, s1, s2
            )
            raw = s.mkapp(ws.UPAIR, uaa, uab)
            op = self.opair_t(a, b)
            pp = s.mkapp(ws.POW, powU)
            got = tk.rw_right(
                ws, tk.eq_sym(ws, self.opair_eq, op, raw), s3, s.member(raw, pp), raw, op
            )
            got = ws.rimp(got, s.member(b, U), s.member(op, pp))
            return ws.rimp(got, s.member(a, U), Imp(s.member(b, U), s.member(op, pp)))

        return self._memo("opair-in-tower", build)

    def _isfun_parts(self, fterm: Term, Aterm: Term, Bterm: Term):
        """The two conjuncts of the isfun body, instantiated."""
        s = self.ws.sig
        (iff_f,) = self.isfun_iff.sequent.right
        body = subst_formula(
            s, iff_f.right, {self.vf: fterm, self.vA: Aterm, self.vB: Bterm}
        )
        return body.left, body.right, body

    def _prove_arrow_exists(self, chi_arrow: Formula) -> Theorem:
        """|- ex r. all f. f in r iff isfun(f, A, B), via separation inside
        the triple power set of union(upair(A, B))."""
        ws = self.ws
        s = ws.sig
        f, A, B = Var(self.vf), Var(self.vA), Var(self.vB)
        p, x, y = Var(self.vp), Var(self.vx), Var(self.vy)
        U = s.mkapp(ws.UNION, s.mkapp(ws.UPAIR, A, B))
        PPU = s.mkapp(ws.POW, s.mkapp(ws.POW, U))
        TT = s.mkapp(ws.POW, PPU)
        (iff_f,) = self.isfun_iff.sequent.right
        c1, c2 = iff_f.right.left, iff_f.right.right
        hI = ws.hypothesis(chi_arrow)
        body = tk.iff_mp(ws, self.isfun_iff, hI, chi_arrow, iff_f.right)
        c1t = tk.and_left(ws, body, c1, c2)
        fe = tk.forall_elim(ws, c1t, c1, p)
        exf = Exists(
            self.vx,
            Exists(self.vy, And(s.member(x, A), And(s.member(y, B), s.eq(p, self.opair_t(x, y))))),
        )
        mm = tk.mp(ws, fe, ws.hypothesis(s.member(p, f)), s.member(p, f), exf)
        xe = s.fresh_var("x")
        ye = s.fresh_var("y")
        inner = subst_formula(s, exf.body.body, {self.vx: Var(xe), self.vy: Var(ye)})
        selx = sel_conj(ws, inner, "l")
        sely = sel_conj(ws, inner, "rl")
        seleq = sel_conj(ws, inner, "rr")
        xU = tk.apply_lemma(ws, self.elem_union_l(), {self.vx: Var(xe)}, selx)
        yU = tk.apply_lemma(ws, self.elem_union_r(), {self.vx: Var(ye)}, sely)
        op = self.opair_t(Var(xe), Var(ye))
        opT = tk.apply_lemma(
            ws, self.opair_in_tower(), {self.va: Var(xe), self.vb: Var(ye), self.vU: U}, xU, yU
        )
        pT = tk.rw_right(
            ws, tk.eq_sym(ws, seleq, p, op), opT, s.member(op, PPU), op, p
        )
        inner_x = subst_formula(s, exf.body, {self.vx: Var(xe)})
        pT = ws.lex(pT, inner_x, ye)
        pT = ws.lex(pT, exf, xe)
        pT = ws.cut(mm, pT, exf)
        pT = ws.rimp(pT, s.member(p, f), s.member(p, PPU))
        allp = Forall(self.vp, Imp(s.member(p, f), s.member(p, PPU)))
        pT = ws.rall(pT, allp, self.vp)
        sub = ws.inst(self.subset_iff(), {self.vx: f, self.vy: PPU})
        pT = tk.iff_mpr(ws, sub, pT, s.pred(ws.SUB, f, PPU), allp)
        pw = ws.inst(self.pow_member(), {self.vx: f, self.vy: PPU})
        pT = tk.iff_mpr(ws, pw, pT, s.member(f, TT), s.pred(ws.SUB, f, PPU))
        bound = ws.rimp(pT, chi_arrow, s.member(f, TT))
        return comprehension_exact(ws, self.vf, TT, chi_arrow, bound)

    def _prove_eqfn_exists(self, chi_e: Formula) -> Theorem:
        """|- ex e. all p. p in e iff chi_e, via separation inside the double
        power set of union(upair(A, arrow(A, bool)))."""
        ws = self.ws
        s = ws.sig
        A, p = Var(self.vA), Var(self.vp)
        AB = self.arrow_t(A, self.bool_t)
        U = s.mkapp(ws.UNION, s.mkapp(ws.UPAIR, A, AB))
        PPU = s.mkapp(ws.POW, s.mkapp(ws.POW, U))
        xe = s.fresh_var("x")
        ge = s.fresh_var("g")
        inner = subst_formula(s, chi_e.body.body, {self.vx: Var(xe), self.vg: Var(ge)})
        selx = sel_conj(ws, inner, "l")
        selg = sel_conj(ws, inner, "rl")
        seleq = sel_conj(ws, inner, "rrl")
        xU = tk.apply_lemma(ws, self.elem_union_l(), {self.vx: Var(xe), self.vB: AB}, selx)
        gU = tk.apply_lemma(ws, self.elem_union_r(), {self.vx: Var(ge), self.vB: AB}, selg)
        op = self.opair_t(Var(xe), Var(ge))
        opT = tk.apply_lemma(
            ws, self.opair_in_tower(), {self.va: Var(xe), self.vb: Var(ge), self.vU: U}, xU, gU
        )
        pT = tk.rw_right(ws, tk.eq_sym(ws, seleq, p, op), opT, s.member(op, PPU), op, p)
        inner_x = subst_formula(s, chi_e.body, {self.vx: Var(xe)})
        pT = ws.lex(pT, inner_x, ge)
        pT = ws.lex(pT, chi_e, xe)
        bound = ws.rimp(pT, chi_e, s.member(p, PPU))
        return comprehension_exact(ws, self.vp, PPU, chi_e, bound)

    def _prove_nat_exists(self, chi_nat: Formula) -> Theorem:
        """|- ex m. all x. x in m iff (all w. inductive(w) imp x in w),
        carved out of the witness the infinity axiom provides."""
        ws = self.ws
        s = ws.sig
        x, w, z = Var(self.vx), Var(self.vw), Var(self.vz)
        inf, inff = self._ax("infinity")
        Iv = s.fresh_var("I")
        I = Var(Iv)
        HI = subst_formula(s, inff.body, {inff.var: I})
        c1 = sel_conj(ws, HI, "l")
        c2 = sel_conj(ws, HI, "r")
        raw_all = HI.right
        fe = tk.forall_elim(ws, c2, raw_all, z)
        raw_z = subst_formula(s, raw_all.body, {raw_all.var: z})
        mz = tk.mp(ws, fe, ws.hypothesis(s.member(z, I)), raw_z.left, raw_z.right)
        succ_z = self.succ_t(z)
        raw_succ_z = raw_z.right.args[0]
        sym = tk.eq_sym(ws, ws.inst(self.succ_eq, {self.vy: z}), succ_z, raw_succ_z)
        mz = tk.rw_right(ws, sym, mz, raw_z.right, raw_succ_z, succ_z)
        mz = ws.rimp(mz, s.member(z, I), s.member(succ_z, I))
        clo = Forall(self.vz, Imp(s.member(z, I), s.member(succ_z, I)))
        mz = ws.rall(mz, clo, self.vz)
        both = ws.rand(c1, mz, s.member(self.empty_t, I), clo)
        iffI = ws.inst(self.inductive_iff, {self.vw: I})
        (iff_f,) = self.inductive_iff.sequent.right
        bodyI = subst_formula(s, iff_f.right, {self.vw: I})
        indI = tk.iff_mpr(ws, iffI, both, s.pred(self.inductive, I), bodyI)
        # chi imp x in I, under HI
        few = tk.forall_elim(ws, ws.hypothesis(chi_nat), chi_nat, I)
        xin = tk.mp(ws, few, indI, s.pred(self.inductive, I), s.member(x, I))
        bound = ws.rimp(xin, chi_nat, s.member(x, I))
        got = comprehension_exact(ws, self.vx, I, chi_nat, bound)
        got = ws.lex(got, inff, Iv)
        return ws.cut(inf, got, inff)

    # -- admitted/proved function-space lemma statements ------------------------

    def indicator_exists(self) -> Theorem:
        """x in A imp ex g. g in arrow(A, bool) and eq_props(x, g).

        Admitted under both policies: building the indicator function set for
        a fixed x needs a definition-by-replacement that the kernel's
        first-order definition gate does not expose."""

        def build():
            s = self.ws.sig
            x, g, A = Var(self.vx), Var(self.vg), Var(self.vA)
            stmt = Imp(
                s.member(x, A),
                Exists(
                    self.vg,
                    And(s.member(g, self.arrow_t(A, self.bool_t)), self.eq_props(x, g)),
                ),
            )
            return self._admit("indicator-exists", stmt)

        return self._memo("indicator-exists", build)

    def prop_ext(self) -> Theorem:
        """|- p in bool imp (q in bool imp ((p=top iff q=top) imp p=q))"""

        def build():
            ws = self.ws
            s = ws.sig
            p, q = Var(self.vp), Var(self.vq)
            H = Iff(s.eq(p, self.top_t), s.eq(q, self.top_t))
            stmt = Imp(
                s.member(p, self.bool_t),
                Imp(s.member(q, self.bool_t), Imp(H, s.eq(p, q))),
            )
            if self.policy == "assume":
                return self._admit("prop-ext", stmt)
            top, bot = self.top_t, self.bot_t
            hH = ws.hypothesis(H)

            def qcases(on_bot, on_top, qt):
                bm = ws.inst(self.bool_member(), {self.vz: qt})
                disj = Or(s.eq(qt, bot), s.eq(qt, top))
                or_t = tk.iff_mp(
                    ws, bm, ws.hypothesis(s.member(qt, self.bool_t)), s.member(qt, self.bool_t), disj
                )
                return tk.case_split(ws, or_t, on_bot, on_top, s.eq(qt, bot), s.eq(qt, top))

            case_tt = tk.eq_trans(
                ws,
                ws.hypothesis(s.eq(p, top)),
                tk.eq_sym(ws, ws.hypothesis(s.eq(q, top)), q, top),
                p,
                top,
                q,
            )
            fwdH = tk.iff_forward(ws, hH, s.eq(p, top), s.eq(q, top))
            mq = tk.mp(ws, fwdH, ws.hypothesis(s.eq(p, top)), s.eq(p, top), s.eq(q, top))
            tb = tk.eq_trans(
                ws, tk.eq_sym(ws, mq, q, top), ws.hypothesis(s.eq(q, bot)), top, q, bot
            )
            case_tb = tk.contradiction(ws, tb, self.truth_distinct(), s.eq(top, bot))
            case_tb = ws.rweak(case_tb, s.eq(p, q))
            bwdH = tk.iff_backward(ws, hH, s.eq(p, top), s.eq(q, top))
            mp_ = tk.mp(ws, bwdH, ws.hypothesis(s.eq(q, top)), s.eq(q, top), s.eq(p, top))
            bt = tk.eq_trans(
                ws, tk.eq_sym(ws, mp_, p, top), ws.hypothesis(s.eq(p, bot)), top, p, bot
            )
            case_bt = tk.contradiction(ws, bt, self.truth_distinct(), s.eq(top, bot))
            case_bt = ws.rweak(case_bt, s.eq(p, q))
            case_bb = tk.eq_trans(
                ws,
                ws.hypothesis(s.eq(p, bot)),
                tk.eq_sym(ws, ws.hypothesis(s.eq(q, bot)), q, bot),
                p,
                bot,
                q,
            )
            p_top = qcases(case_tb, case_tt, q)
            p_bot = qcases(case_bb, case_bt, q)
            outer = qcases(p_bot, p_top, p)
            got = ws.rimp(outer, H, s.eq(p, q))
            got = ws.rimp(got, s.member(q, self.bool_t), Imp(H, s.eq(p, q)))
            return ws.rimp(
                got, s.member(p, self.bool_t), Imp(s.member(q, self.bool_t), Imp(H, s.eq(p, q)))
            )

        return self._memo("prop-ext", build)

    def app_graph(self) -> Theorem:
        """|- f in arrow(A,B) imp (x in A imp (opair(x,y) in f iff app(f,x) = y))"""

        def build():
            ws = self.ws
            s = ws.sig
            f, A, B = Var(self.vf), Var(self.vA), Var(self.vB)
            x, y = Var(self.vx), Var(self.vy)
            Hf = s.member(f, self.arrow_t(A, B))
            psi_y = s.member(self.opair_t(x, y), f)
            app_eq = s.eq(self.app_t(f, x), y)
            stmt = Imp(Hf, Imp(s.member(x, A), Iff(psi_y, app_eq)))
            if self.policy == "assume":
                return self._admit("app-graph", stmt)
            chi_t = self._conj2_at(ws.hypothesis(Hf), f, A, B, x)
            (chi,) = chi_t.sequent.right
            (axf,) = self.app_def.sequent.right
            fed, fdesc = _elim(ws, self.app_def, axf, y)
            phidesc = fdesc.right
            branch1, branch2 = phidesc.left, phidesc.right
            d1 = ws.rand(chi_t, ws.hypothesis(psi_y), branch1.left, psi_y)
            d2 = ws.ror(d1, branch1, branch2)
            d3 = tk.iff_mpr(ws, fed, d2, fdesc.left, phidesc)
            fwd = tk.eq_sym(ws, d3, y, self.app_t(f, x))
            fwd = ws.rimp(fwd, psi_y, app_eq)
            e1 = tk.eq_sym(ws, ws.hypothesis(app_eq), self.app_t(f, x), y)
            e2 = tk.iff_mp(ws, fed, e1, fdesc.left, phidesc)
            g1 = tk.sel_and_r(ws, branch1.left, psi_y)
            g2 = tk.contradiction(ws, chi_t, tk.sel_and_l(ws, branch2.left, branch2.right), branch1.left)
            g2 = ws.rweak(g2, psi_y)
            merged = ws.lor(g1, g2, branch1, branch2)
            bwd = ws.cut(e2, merged, phidesc)
            bwd = ws.rimp(bwd, app_eq, psi_y)
            got = ws.riff(fwd, bwd, psi_y, app_eq)
            got = ws.rimp(got, s.member(x, A), Iff(psi_y, app_eq))
            return ws.rimp(got, Hf, Imp(s.member(x, A), Iff(psi_y, app_eq)))

        return self._memo("app-graph", build)

    def _arrow_member_at(self, f: Term, A: Term, B: Term) -> Tuple[Theorem, Formula]:
        """|- f in arrow(A,B) iff isfun(f,A,B), fully instantiated."""
        ws = self.ws
        am0 = ws.inst(self.arrow_member_thm, {self.vA: A, self.vB: B})
        (amf0,) = am0.sequent.right
        return _elim(ws, am0, amf0, f)

    def _conj2_at(self, hf: Theorem, f: Term, A: Term, B: Term, x: Term) -> Theorem:
        """{f in arrow(A,B), x in A, ..} |- exone w. opair(x, w) in f"""
        ws = self.ws
        s = ws.sig
        am, amf = self._arrow_member_at(f, A, B)
        isf = tk.iff_mp(ws, am, hf, amf.left, amf.right)
        c1, c2, body = self._isfun_parts(f, A, B)
        iff_inst = ws.inst(self.isfun_iff, {self.vf: f, self.vA: A, self.vB: B})
        pred_f = s.pred(self.isfun, f, A, B)
        both = tk.iff_mp(ws, iff_inst, isf, pred_f, body)
        c2t = tk.and_right(ws, both, c1, c2)
        fe = tk.forall_elim(ws, c2t, c2, x)
        inst = subst_formula(s, c2.body, {c2.var: x})
        return tk.mp(ws, fe, ws.hypothesis(s.member(x, A)), inst.left, inst.right)

    def app_typing(self) -> Theorem:
        """|- f in arrow(A,B) imp (x in A imp app(f,x) in B)"""

        def build():
            ws = self.ws
            s = ws.sig
            f, A, B = Var(self.vf), Var(self.vA), Var(self.vB)
            x = Var(self.vx)
            Hf = s.member(f, self.arrow_t(A, B))
            appx = self.app_t(f, x)
            stmt = Imp(Hf, Imp(s.member(x, A), s.member(appx, B)))
            if self.policy == "assume":
                return self._admit("app-typing", stmt)
            hf = ws.hypothesis(Hf)
            chi_t = self._conj2_at(hf, f, A, B, x)
            (chi,) = chi_t.sequent.right
            we = s.fresh_var("w")
            Hwe = subst_formula(s, chi.body, {chi.var: Var(we)})
            selp = sel_conj(ws, Hwe, "l")
            ag = tk.apply_lemma(
                ws, self.app_graph(), {self.vy: Var(we)}, hf, ws.hypothesis(s.member(x, A))
            )
            (agseq,) = ag.sequent.right
            app_eq = tk.iff_mp(ws, ag, selp, agseq.left, agseq.right)
            # w in B via conj1 and pair injectivity
            c1, c2, body = self._isfun_parts(f, A, B)
            iff_inst = ws.inst(self.isfun_iff, {self.vf: f, self.vA: A, self.vB: B})
            am, amf = self._arrow_member_at(f, A, B)
            isf = tk.iff_mp(ws, am, hf, amf.left, amf.right)
            both = tk.iff_mp(ws, iff_inst, isf, s.pred(self.isfun, f, A, B), body)
            c1t = tk.and_left(ws, both, c1, c2)
            op_xw = self.opair_t(x, Var(we))
            fe = tk.forall_elim(ws, c1t, c1, op_xw)
            inst1 = subst_formula(s, c1.body, {c1.var: op_xw})
            exf = inst1.right
            mm = tk.mp(ws, fe, selp, inst1.left, exf)
            xe2 = s.fresh_var("x")
            ye2 = s.fresh_var("y")
            b1, b2 = exf.var, exf.body.var
            inner = subst_formula(s, exf.body.body, {b1: Var(xe2), b2: Var(ye2)})
            seleq = sel_conj(ws, inner, "rr")
            selyB = sel_conj(ws, inner, "rl")
            pinj = tk.apply_lemma(
                ws,
                self.pair_injectivity(),
                {self.va: x, self.vb: Var(we), self.vc: Var(xe2), self.vd: Var(ye2)},
                seleq,
            )
            wy = tk.and_right(ws, pinj, s.eq(x, Var(xe2)), s.eq(Var(we), Var(ye2)))
            weB = tk.rw_right(
                ws,
                tk.eq_sym(ws, wy, Var(we), Var(ye2)),
                selyB,
                s.member(Var(ye2), B),
                Var(ye2),
                Var(we),
            )
            appB = tk.rw_right(
                ws,
                tk.eq_sym(ws, app_eq, appx, Var(we)),
                weB,
                s.member(Var(we), B),
                Var(we),
                appx,
            )
            inner_x = subst_formula(s, exf.body, {b1: Var(xe2)})
            appB = ws.lex(appB, inner_x, ye2)
            appB = ws.lex(appB, exf, xe2)
            appB = ws.cut(mm, appB, exf)
            appB = ws.lex(appB, chi, we)
            appB = ws.cut(chi_t, appB, chi)
            got = ws.rimp(appB, s.member(x, A), s.member(appx, B))
            return ws.rimp(got, Hf, Imp(s.member(x, A), s.member(appx, B)))

        return self._memo("app-typing", build)

    def fun_ext(self) -> Theorem:
        """|- f in arrow(A,B) imp (g in arrow(A,B) imp
        ((all x. x in A imp app(f,x) = app(g,x)) imp f = g))"""

        def build():
            ws = self.ws
            s = ws.sig
            f, g, A, B = Var(self.vf), Var(self.vg), Var(self.vA), Var(self.vB)
            x, p = Var(self.vx), Var(self.vp)
            AR = self.arrow_t(A, B)
            Hf, Hg = s.member(f, AR), s.member(g, AR)
            pw = Forall(
                self.vx, Imp(s.member(x, A), s.eq(self.app_t(f, x), self.app_t(g, x)))
            )
            stmt = Imp(Hf, Imp(Hg, Imp(pw, s.eq(f, g))))
            if self.policy == "assume":
                return self._admit("fun-ext", stmt)

            def one_dir(ft, gt, hft, hgt, flip):
                # {Hf, Hg, pw, p in ft} |- p in gt
                c1, c2, body = self._isfun_parts(ft, A, B)
                iff_inst = ws.inst(self.isfun_iff, {self.vf: ft, self.vA: A, self.vB: B})
                am, amf = self._arrow_member_at(ft, A, B)
                isf = tk.iff_mp(ws, am, hft, amf.left, amf.right)
                both = tk.iff_mp(ws, iff_inst, isf, s.pred(self.isfun, ft, A, B), body)
                c1t = tk.and_left(ws, both, c1, c2)
                fe = tk.forall_elim(ws, c1t, c1, p)
                inst1 = subst_formula(s, c1.body, {c1.var: p})
                exf = inst1.right
                mm = tk.mp(ws, fe, ws.hypothesis(s.member(p, ft)), inst1.left, exf)
                xe = s.fresh_var("x")
                ye = s.fresh_var("y")
                b1, b2 = exf.var, exf.body.var
                inner = subst_formula(s, exf.body.body, {b1: Var(xe), b2: Var(ye)})
                selx = sel_conj(ws, inner, "l")
                seleq = sel_conj(ws, inner, "rr")
                agf = tk.apply_lemma(
                    ws,
                    self.app_graph(),
                    {self.vf: ft, self.vx: Var(xe), self.vy: Var(ye)},
                    hft,
                    selx,
                )
                op = self.opair_t(Var(xe), Var(ye))
                opin = tk.rw_right(
                    ws, seleq, ws.hypothesis(s.member(p, ft)), s.member(p, ft), p, op
                )
                af_eq = tk.iff_mp(
                    ws, agf, opin, s.member(op, ft), s.eq(self.app_t(ft, Var(xe)), Var(ye))
                )
                pwx = tk.forall_elim(ws, ws.hypothesis(pw), pw, Var(xe))
                pwinst = subst_formula(s, pw.body, {self.vx: Var(xe)})
                pweq = tk.mp(ws, pwx, selx, pwinst.left, pwinst.right)
                if flip:
                    pweq = tk.eq_sym(
                        ws, pweq, self.app_t(f, Var(xe)), self.app_t(g, Var(xe))
                    )
                g_eq = tk.eq_trans(
                    ws,
                    tk.eq_sym(ws, pweq, self.app_t(ft, Var(xe)), self.app_t(gt, Var(xe))),
                    af_eq,
                    self.app_t(gt, Var(xe)),
                    self.app_t(ft, Var(xe)),
                    Var(ye),
                )
                agg = tk.apply_lemma(
                    ws,
                    self.app_graph(),
                    {self.vf: gt, self.vx: Var(xe), self.vy: Var(ye)},
                    hgt,
                    selx,
                )
                og = tk.iff_mpr(
                    ws, agg, g_eq, s.member(op, gt), s.eq(self.app_t(gt, Var(xe)), Var(ye))
                )
                pg = tk.rw_right(ws, tk.eq_sym(ws, seleq, p, op), og, s.member(op, gt), op, p)
                inner_x = subst_formula(s, exf.body, {b1: Var(xe)})
                pg = ws.lex(pg, inner_x, ye)
                pg = ws.lex(pg, exf, xe)
                pg = ws.cut(mm, pg, exf)
                return ws.rimp(pg, s.member(p, ft), s.member(p, gt))

            hf, hg = ws.hypothesis(Hf), ws.hypothesis(Hg)
            fwd = one_dir(f, g, hf, hg, False)
            bwd = one_dir(g, f, hg, hf, True)
            iff = ws.riff(fwd, bwd, s.member(p, f), s.member(p, g))
            alls = ws.rall(iff, Forall(self.vp, Iff(s.member(p, f), s.member(p, g))), self.vp)
            ext, extf = self._ax("extensionality")
            ext2, f2 = _elim(ws, ext, extf, f, g)
            got = tk.iff_mp(ws, ext2, alls, f2.left, f2.right)
            got = ws.rimp(got, pw, s.eq(f, g))
            got = ws.rimp(got, Hg, Imp(pw, s.eq(f, g)))
            return ws.rimp(got, Hf, Imp(Hg, Imp(pw, s.eq(f, g))))

        return self._memo("fun-ext", build)

    def funspace_nonempty(self) -> Theorem:
        """|- not (B = empty) imp not (arrow(A, B) = empty)"""

        def build():
            ws = self.ws
            s = ws.sig
            A, B = Var(self.vA), Var(self.vB)
            AR = self.arrow_t(A, B)
            stmt = Imp(Not(s.eq(B, self.empty_t)), Not(s.eq(AR, self.empty_t)))
            if self.policy == "assume":
                return self._admit("funspace-nonempty", stmt)
            x, p = Var(self.vx), Var(self.vp)
            ye = s.fresh_var("w")
            yt = Var(ye)
            HyB = s.member(yt, B)
            hyB = ws.hypothesis(HyB)
            chi_c = Exists(self.vx, And(s.member(x, A), s.eq(p, self.opair_t(x, yt))))
            U = s.mkapp(ws.UNION, s.mkapp(ws.UPAIR, A, B))
            PPU = s.mkapp(ws.POW, s.mkapp(ws.POW, U))
            xe = s.fresh_var("x")
            Hc = subst_formula(s, chi_c.body, {self.vx: Var(xe)})
            selx = sel_conj(ws, Hc, "l")
            seleq = sel_conj(ws, Hc, "r")
            xU = tk.apply_lemma(ws, self.elem_union_l(), {self.vx: Var(xe)}, selx)
            yU = tk.apply_lemma(ws, self.elem_union_r(), {self.vx: yt}, hyB)
            op = self.opair_t(Var(xe), yt)
            opT = tk.apply_lemma(
                ws, self.opair_in_tower(), {self.va: Var(xe), self.vb: yt, self.vU: U}, xU, yU
            )
            pT = tk.rw_right(ws, tk.eq_sym(ws, seleq, p, op), opT, s.member(op, PPU), op, p)
            pT = ws.lex(pT, chi_c, xe)
            bound = ws.rimp(pT, chi_c, s.member(p, PPU))
            ex_c = comprehension_exact(ws, self.vp, PPU, chi_c, bound)
            (exg,) = ex_c.sequent.right
            cv = s.fresh_var("c")
            C = Var(cv)
            Hm = subst_formula(s, exg.body, {exg.var: C})

            def fe(term: Term) -> Theorem:
                return tk.forall_elim(ws, ws.hypothesis(Hm), Hm, term)

            def fef(term: Term) -> Formula:
                return subst_formula(s, Hm.body, {Hm.var: term})

            # conj1
            f1 = fef(p)
            got = tk.iff_mp(ws, fe(p), ws.hypothesis(s.member(p, C)), f1.left, f1.right)
            chi_p = f1.right
            target_inner = And(
                s.member(Var(xe), A), And(s.member(yt, B), s.eq(p, self.opair_t(Var(xe), yt)))
            )
            t1 = ws.rand(hyB, seleq, s.member(yt, B), s.eq(p, op))
            t1 = ws.rand(selx, t1, s.member(Var(xe), A), And(s.member(yt, B), s.eq(p, op)))
            c1_ex = Exists(
                self.vx,
                Exists(
                    self.vy, And(s.member(x, A), And(s.member(Var(self.vy), B), s.eq(p, self.opair_t(x, Var(self.vy)))))
                ),
            )
            inner_at_xe = subst_formula(s, c1_ex.body, {self.vx: Var(xe)})
            t1 = ws.rex(t1, inner_at_xe, yt)
            t1 = ws.rex(t1, c1_ex, Var(xe))
            t1 = ws.lex(t1, chi_p, xe)
            t1 = ws.cut(got, t1, chi_p)
            conj1_t = ws.rall(
                ws.rimp(t1, s.member(p, C), c1_ex),
                Forall(self.vp, Imp(s.member(p, C), c1_ex)),
                self.vp,
            )
            # conj2
            hxA = ws.hypothesis(s.member(x, A))
            opx = self.opair_t(x, yt)
            wit = ws.rand(hxA, ws.refl(opx), s.member(x, A), s.eq(opx, opx))
            chi_at = subst_formula(s, chi_c, {self.vp: opx})
            wit = ws.rex(wit, chi_at, x)
            fo = fef(opx)
            mem = tk.iff_mpr(ws, fe(opx), wit, fo.left, fo.right)
            w2 = s.fresh_var("w")
            opw2 = self.opair_t(x, Var(w2))
            fw2 = fef(opw2)
            got2 = tk.iff_mp(ws, fe(opw2), ws.hypothesis(s.member(opw2, C)), fw2.left, fw2.right)
            chi_w2 = fw2.right
            xe2 = s.fresh_var("x")
            Hc2 = subst_formula(s, chi_w2.body, {chi_w2.var: Var(xe2)})
            seleq2 = sel_conj(ws, Hc2, "r")
            pinj = tk.apply_lemma(
                ws,
                self.pair_injectivity(),
                {self.va: x, self.vb: Var(w2), self.vc: Var(xe2), self.vd: yt},
                seleq2,
            )
            w2y = tk.and_right(ws, pinj, s.eq(x, Var(xe2)), s.eq(Var(w2), yt))
            w2y = ws.lex(w2y, chi_w2, xe2)
            w2y = ws.cut(got2, w2y, chi_w2)
            uimp = ws.rimp(w2y, s.member(opw2, C), s.eq(Var(w2), yt))
            uniq = Forall(w2, Imp(s.member(opw2, C), s.eq(Var(w2), yt)))
            uall = ws.rall(uimp, uniq, w2)
            pairc = ws.rand(mem, uall, s.member(opx, C), uniq)
            exone = s.exists_one(self.vy, s.member(self.opair_t(x, Var(self.vy)), C))
            ex2 = ws.rex(pairc, exone, yt)
            conj2_t = ws.rall(
                ws.rimp(ex2, s.member(x, A), exone),
                Forall(self.vx, Imp(s.member(x, A), exone)),
                self.vx,
            )
            c1f, c2f, bodyf = self._isfun_parts(C, A, B)
            both = ws.rand(conj1_t, conj2_t, c1f, c2f)
            iff_inst = ws.inst(self.isfun_iff, {self.vf: C, self.vA: A, self.vB: B})
            isC = tk.iff_mpr(ws, iff_inst, both, s.pred(self.isfun, C, A, B), bodyf)
            am, amf = self._arrow_member_at(C, A, B)
            inAR = tk.iff_mpr(ws, am, isC, amf.left, amf.right)
            non = self.nonempty_intro(inAR, C, AR)
            non = ws.lex(non, exg, cv)
            non = ws.cut(ex_c, non, exg)
            exB = Exists(ye, HyB)
            non = ws.lex(non, exB, ye)
            ne = ws.inst(self.nonempty_elim(), {self.vA: B})
            ne = tk.mp(
                ws,
                ne,
                ws.hypothesis(Not(s.eq(B, self.empty_t))),
                Not(s.eq(B, self.empty_t)),
                Exists(self.vz, s.member(Var(self.vz), B)),
            )
            non = ws.cut(ne, non, exB)
            return ws.rimp(non, Not(s.eq(B, self.empty_t)), Not(s.eq(AR, self.empty_t)))

        return self._memo("funspace-nonempty", build)

    def e_typing(self) -> Theorem:
        """|- eqfn(A) in arrow(A, arrow(A, bool))"""

        def build():
            ws = self.ws
            s = ws.sig
            A = Var(self.vA)
            E = self.eqfn_t(A)
            AB = self.arrow_t(A, self.bool_t)
            stmt = s.member(E, self.arrow_t(A, AB))
            if self.policy == "assume":
                return self._admit("e-typing", stmt)
            x, g, p = Var(self.vx), Var(self.vg), Var(self.vp)
            (emf0,) = self.eqfn_member_thm.sequent.right

            def em_at(term: Term):
                t, fa = _elim(ws, self.eqfn_member_thm, emf0, term)
                return t, fa

            # conj1
            emp, fp = em_at(p)
            chiP = fp.right
            got = tk.iff_mp(ws, emp, ws.hypothesis(s.member(p, E)), fp.left, chiP)
            xe = s.fresh_var("x")
            ge = s.fresh_var("g")
            pb1, pb2 = chiP.var, chiP.body.var
            inner = subst_formula(s, chiP.body.body, {pb1: Var(xe), pb2: Var(ge)})
            selx = sel_conj(ws, inner, "l")
            selg = sel_conj(ws, inner, "rl")
            seleq = sel_conj(ws, inner, "rrl")
            t1 = ws.rand(selg, seleq, s.member(Var(ge), AB), s.eq(p, self.opair_t(Var(xe), Var(ge))))
            t1 = ws.rand(selx, t1, s.member(Var(xe), A), And(s.member(Var(ge), AB), s.eq(p, self.opair_t(Var(xe), Var(ge)))))
            c1_ex = Exists(
                self.vx,
                Exists(
                    self.vy,
                    And(
                        s.member(x, A),
                        And(s.member(Var(self.vy), AB), s.eq(p, self.opair_t(x, Var(self.vy)))),
                    ),
                ),
            )
            inner_at = subst_formula(s, c1_ex.body, {self.vx: Var(xe)})
            t1 = ws.rex(t1, inner_at, Var(ge))
            t1 = ws.rex(t1, c1_ex, Var(xe))
            inner_x = subst_formula(s, chiP.body, {pb1: Var(xe)})
            t1 = ws.lex(t1, inner_x, ge)
            t1 = ws.lex(t1, chiP, xe)
            t1 = ws.cut(got, t1, chiP)
            conj1_t = ws.rall(
                ws.rimp(t1, s.member(p, E), c1_ex),
                Forall(self.vp, Imp(s.member(p, E), c1_ex)),
                self.vp,
            )
            # conj2: existence from the admitted indicator, uniqueness by fun_ext
            hxA = ws.hypothesis(s.member(x, A))
            ind = tk.apply_lemma(ws, self.indicator_exists(), {}, hxA)
            ind_ex = Exists(self.vg, And(s.member(g, AB), self.eq_props(x, g)))
            Hg = subst_formula(s, ind_ex.body, {self.vg: Var(ge)})
            selgAB = sel_conj(ws, Hg, "l")
            selprops = sel_conj(ws, Hg, "r")
            opg = self.opair_t(x, Var(ge))
            props_ge = self.eq_props(x, Var(ge))
            wit = ws.rand(ws.refl(opg), selprops, s.eq(opg, opg), props_ge)
            wit = ws.rand(selgAB, wit, s.member(Var(ge), AB), And(s.eq(opg, opg), props_ge))
            wit = ws.rand(hxA, wit, s.member(x, A), And(s.member(Var(ge), AB), And(s.eq(opg, opg), props_ge)))
            chi_at = subst_formula(s, emf0.body.right, {self.vp: opg})
            # chi_at binds x and g; witness them in order
            inner_w = subst_formula(s, chi_at.body, {chi_at.var: x})
            wit = ws.rex(wit, inner_w, Var(ge))
            wit = ws.rex(wit, chi_at, x)
            emo, fo = em_at(opg)
            mem = tk.iff_mpr(ws, emo, wit, fo.left, fo.right)
            # uniqueness
            g2 = s.fresh_var("g")
            opg2 = self.opair_t(x, Var(g2))
            emo2, fo2 = em_at(opg2)
            got2 = tk.iff_mp(ws, emo2, ws.hypothesis(s.member(opg2, E)), fo2.left, fo2.right)
            chi2 = fo2.right
            xe2 = s.fresh_var("x")
            ge2 = s.fresh_var("g")
            inner2 = subst_formula(s, chi2.body.body, {chi2.body.var: Var(ge2), chi2.var: Var(xe2)})
            sel2x = sel_conj(ws, inner2, "l")
            sel2g = sel_conj(ws, inner2, "rl")
            sel2eq = sel_conj(ws, inner2, "rrl")
            sel2pr = sel_conj(ws, inner2, "rrr")
            pinj = tk.apply_lemma(
                ws,
                self.pair_injectivity(),
                {self.va: x, self.vb: Var(g2), self.vc: Var(xe2), self.vd: Var(ge2)},
                sel2eq,
            )
            x_eq = tk.and_left(ws, pinj, s.eq(x, Var(xe2)), s.eq(Var(g2), Var(ge2)))
            g2_eq = tk.and_right(ws, pinj, s.eq(x, Var(xe2)), s.eq(Var(g2), Var(ge2)))
            props_xe2 = self.eq_props(Var(xe2), Var(ge2))
            props_x_ge2 = self.eq_props(x, Var(ge2))
            prt = tk.rw_right(
                ws, tk.eq_sym(ws, x_eq, x, Var(xe2)), sel2pr, props_xe2, Var(xe2), x
            )
            # pointwise agreement of ge2 and ge
            y = Var(self.vy)
            hyA = ws.hypothesis(s.member(y, A))

            def point(props_thm, props_f, gt):
                fe2 = tk.forall_elim(ws, props_thm, props_f, y)
                instf = subst_formula(s, props_f.body, {props_f.var: y})
                return tk.mp(ws, fe2, hyA, instf.left, instf.right), instf.right

            p2, c2f = point(prt, props_x_ge2, Var(ge2))
            p1, c1f2 = point(selprops, props_ge, Var(ge))
            eq_xy = s.eq(x, y)
            app2y = self.app_t(Var(ge2), y)
            app1y = self.app_t(Var(ge), y)
            pos2 = tk.mp(ws, tk.and_left(ws, p2, c2f.left, c2f.right), ws.hypothesis(eq_xy), eq_xy, s.eq(app2y, self.top_t))
            pos1 = tk.mp(ws, tk.and_left(ws, p1, c1f2.left, c1f2.right), ws.hypothesis(eq_xy), eq_xy, s.eq(app1y, self.top_t))
            pos = tk.eq_trans(
                ws, pos2, tk.eq_sym(ws, pos1, app1y, self.top_t), app2y, self.top_t, app1y
            )
            neg2 = tk.mp(ws, tk.and_right(ws, p2, c2f.left, c2f.right), ws.hypothesis(Not(eq_xy)), Not(eq_xy), s.eq(app2y, self.bot_t))
            neg1 = tk.mp(ws, tk.and_right(ws, p1, c1f2.left, c1f2.right), ws.hypothesis(Not(eq_xy)), Not(eq_xy), s.eq(app1y, self.bot_t))
            neg = tk.eq_trans(
                ws, neg2, tk.eq_sym(ws, neg1, app1y, self.bot_t), app2y, self.bot_t, app1y
            )
            agree = tk.by_cases(ws, pos, neg, eq_xy)
            agree = ws.rimp(agree, s.member(y, A), s.eq(app2y, app1y))
            pwf = Forall(self.vy, Imp(s.member(y, A), s.eq(app2y, app1y)))
            agree = ws.rall(agree, pwf, self.vy)
            fext = tk.apply_lemma(
                ws,
                self.fun_ext(),
                {self.vf: Var(ge2), self.vg: Var(ge), self.vB: self.bool_t},
                sel2g,
                selgAB,
                agree,
            )
            g2_ge = tk.eq_trans(ws, g2_eq, fext, Var(g2), Var(ge2), Var(ge))
            inner2_x = subst_formula(s, chi2.body, {chi2.var: Var(xe2)})
            g2_ge = ws.lex(g2_ge, inner2_x, ge2)
            g2_ge = ws.lex(g2_ge, chi2, xe2)
            g2_ge = ws.cut(got2, g2_ge, chi2)
            uimp = ws.rimp(g2_ge, s.member(opg2, E), s.eq(Var(g2), Var(ge)))
            uniq = Forall(g2, Imp(s.member(opg2, E), s.eq(Var(g2), Var(ge))))
            uall = ws.rall(uimp, uniq, g2)
            pairc = ws.rand(mem, uall, s.member(opg, E), uniq)
            exone = s.exists_one(self.vy, s.member(self.opair_t(x, Var(self.vy)), E))
            ex2 = ws.rex(pairc, exone, Var(ge))
            ex2 = ws.lex(ex2, ind_ex, ge)
            ex2 = ws.cut(ind, ex2, ind_ex)
            conj2_t = ws.rall(
                ws.rimp(ex2, s.member(x, A), exone),
                Forall(self.vx, Imp(s.member(x, A), exone)),
                self.vx,
            )
            c1f3, c2f3, bodyf = self._isfun_parts(E, A, AB)
            both = ws.rand(conj1_t, conj2_t, c1f3, c2f3)
            iff_inst = ws.inst(self.isfun_iff, {self.vf: E, self.vB: AB})
            isE = tk.iff_mpr(ws, iff_inst, both, s.pred(self.isfun, E, A, AB), bodyf)
            am, amf = self._arrow_member_at(E, A, AB)
            return tk.iff_mpr(ws, am, isE, amf.left, amf.right)

        return self._memo("e-typing", build)

    def e_correct(self) -> Theorem:
        """|- x in A imp (y in A imp (app(app(eqfn(A),x),y) = top iff x = y))"""

        def build():
            ws = self.ws
            s = ws.sig
            A, x, y = Var(self.vA), Var(self.vx), Var(self.vy)
            E = self.eqfn_t(A)
            AB = self.arrow_t(A, self.bool_t)
            app2 = self.app2_t(E, x, y)
            eq_xy = s.eq(x, y)
            stmt = Imp(
                s.member(x, A), Imp(s.member(y, A), Iff(s.eq(app2, self.top_t), eq_xy))
            )
            if self.policy == "assume":
                return self._admit("e-correct", stmt)
            g = Var(self.vg)
            hxA = ws.hypothesis(s.member(x, A))
            hyA = ws.hypothesis(s.member(y, A))
            ind = tk.apply_lemma(ws, self.indicator_exists(), {}, hxA)
            ind_ex = Exists(self.vg, And(s.member(g, AB), self.eq_props(x, g)))
            ge = s.fresh_var("g")
            Hg = subst_formula(s, ind_ex.body, {self.vg: Var(ge)})
            selgAB = sel_conj(ws, Hg, "l")
            selprops = sel_conj(ws, Hg, "r")
            props_ge = self.eq_props(x, Var(ge))
            opg = self.opair_t(x, Var(ge))
            # opair(x, ge) in E
            (emf0,) = self.eqfn_member_thm.sequent.right
            emo, fo = _elim(ws, self.eqfn_member_thm, emf0, opg)
            wit = ws.rand(ws.refl(opg), selprops, s.eq(opg, opg), props_ge)
            wit = ws.rand(selgAB, wit, s.member(Var(ge), AB), And(s.eq(opg, opg), props_ge))
            wit = ws.rand(hxA, wit, s.member(x, A), And(s.member(Var(ge), AB), And(s.eq(opg, opg), props_ge)))
            chi_at = fo.right
            inner_w = subst_formula(s, chi_at.body, {chi_at.var: x})
            wit = ws.rex(wit, inner_w, Var(ge))
            wit = ws.rex(wit, chi_at, x)
            mem = tk.iff_mpr(ws, emo, wit, fo.left, fo.right)
            ag = tk.apply_lemma(
                ws,
                self.app_graph(),
                {self.vf: E, self.vA: A, self.vB: AB, self.vy: Var(ge)},
                self.e_typing(),
                hxA,
            )
            appE = self.app_t(E, x)
            ag_eq = tk.iff_mp(ws, ag, mem, s.member(opg, E), s.eq(appE, Var(ge)))
            # pointwise property at y
            fe2 = tk.forall_elim(ws, selprops, props_ge, y)
            instf = subst_formula(s, props_ge.body, {props_ge.var: y})
            conj = tk.mp(ws, fe2, hyA, instf.left, instf.right)
            appgy = self.app_t(Var(ge), y)
            posimp = tk.and_left(ws, conj, instf.right.left, instf.right.right)
            negimp = tk.and_right(ws, conj, instf.right.left, instf.right.right)
            # forward
            h_top = ws.hypothesis(s.eq(app2, self.top_t))
            hr = tk.rw_right(ws, ag_eq, h_top, s.eq(app2, self.top_t), appE, Var(ge))
            # hr : .. |- app(ge, y) = top
            negv = tk.mp(ws, negimp, ws.hypothesis(Not(eq_xy)), Not(eq_xy), s.eq(appgy, self.bot_t))
            tb = tk.eq_trans(
                ws,
                tk.eq_sym(ws, hr, appgy, self.top_t),
                negv,
                self.top_t,
                appgy,
                self.bot_t,
            )
            dead = tk.contradiction(ws, tb, self.truth_distinct(), s.eq(self.top_t, self.bot_t))
            dead = ws.rweak(dead, eq_xy)
            fwd = tk.by_cases(ws, ws.hypothesis(eq_xy), dead, eq_xy)
            fwd = ws.rimp(fwd, s.eq(app2, self.top_t), eq_xy)
            # backward
            posv = tk.mp(ws, posimp, ws.hypothesis(eq_xy), eq_xy, s.eq(appgy, self.top_t))
            bwd = tk.rw_right(
                ws,
                tk.eq_sym(ws, ag_eq, appE, Var(ge)),
                posv,
                s.eq(appgy, self.top_t),
                Var(ge),
                appE,
            )
            bwd = ws.rimp(bwd, eq_xy, s.eq(app2, self.top_t))
            iff = ws.riff(fwd, bwd, s.eq(app2, self.top_t), eq_xy)
            iff = ws.lex(iff, ind_ex, ge)
            iff = ws.cut(ind, iff, ind_ex)
            got = ws.rimp(iff, s.member(y, A), Iff(s.eq(app2, self.top_t), eq_xy))
            return ws.rimp(got, s.member(x, A), Imp(s.member(y, A), Iff(s.eq(app2, self.top_t), eq_xy)))

        return self._memo("e-correct", build)

    # -- named lookup ------------------------------------------------------------

    LEMMA_NAMES = {
        "E-correct": "e_correct",
        "E-typing": "e_typing",
        "funExt": "fun_ext",
        "propExt": "prop_ext",
        "appGraph": "app_graph",
        "appTyping": "app_typing",
        "funspaceNonempty": "funspace_nonempty",
        "boolMember": "bool_member",
        "truthDistinct": "truth_distinct",
        "succMember": "succ_member",
        "pairInjectivity": "pair_injectivity",
        "natTrichotomy": "nat_trichotomy",
    }

    def lemma(self, name: str) -> Theorem:
        """The named lemma of the stock library."""
        meth = self.LEMMA_NAMES.get(name)
        if meth is None:
            raise UnknownLemma(f"no base lemma named {name!r}")
        return getattr(self, meth)()


def build_base(ws: Workspace, policy: str = "assume") -> BaseTheory:
    got = ws.ext.get("base")
    if got is not None:
        if got.policy != policy:
            raise SchemaError(
                f"workspace already carries a base theory built with policy {got.policy!r}"
            )
        return got
    return BaseTheory(ws, policy)
