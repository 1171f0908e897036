"""Proof-producing simulation of the typed lambda calculus rules.

Every rule here mirrors one primitive inference of the LCF-style lambda
prover (REFL, TRANS, MK_COMB, ABS, BETA, ASSUME, EQ_MP,
DEDUCT_ANTISYM_RULE, INST, INST_TYPE, ETA) but produces a kernel theorem in
set theory whose sequent is exactly the embedding of the simulated
conclusion. The wrapper type `HolTheorem` enforces that invariant at every
construction site.

Three pieces of machinery do the heavy lifting:

- `prooftype` derives the typing judgement `<t> in <type(t)>` with the
  smallest hypothesis set (variable typings and closure definitions that
  the derivation actually touches).
- `clean` discharges context assumptions a rule's raw proof carries but
  the final sequent must not: closure definitions in reverse index order,
  then variable typings, then type-variable nonemptiness, each removed by
  generalizing the assumption to an existential and cutting with a proof
  of that existential.
- `embed_subst_eq` proves, inside the kernel, that substituting embedded
  terms into an embedding image equals the canonical embedding of the
  substituted lambda term. INST rests on it.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import hol, toolkit as tk
from .embedding import (
    Embedder,
    EmbeddedSequent,
    RegistryEntry,
    get_embedder,
    is_lambda_name,
    unembed_term,
)
from .errors import (
    FreeVariableClash,
    IllTyped,
    NotAlphaEquivalent,
    NotEliminable,
    RuleMismatch,
    ShapeMismatch,
)
from .fol import (
    And,
    Exists,
    Forall,
    Formula,
    Imp,
    Not,
    Pred,
    Sequent,
    Term,
    Var,
    App,
    subst_formula,
    subst_term,
)
from .hol import (
    BOOL,
    Fun,
    HAbs,
    HComb,
    HConst,
    HVar,
    HolSequent,
    HolTerm,
    HolType,
    Bool,
    Ind,
    TyCon,
    TyVar,
    alpha_equal_hol,
    dest_eq,
    mk_eq,
    print_term,
)
from .kernel import Theorem, Workspace


class HolTheorem:
    """A lambda-calculus sequent paired with the kernel theorem proving its
    embedding. The kernel sequent always equals the embedded sequent."""

    __slots__ = ("hol", "embedded", "fo")

    def __init__(self, hs: HolSequent, embedded: EmbeddedSequent, fo: Theorem):
        if fo.sequent != embedded.sequent:
            raise RuleMismatch("embedding invariant violated: kernel sequent differs")
        self.hol = hs
        self.embedded = embedded
        self.fo = fo

    @property
    def hyps(self):
        return self.hol.hyps

    @property
    def concl(self) -> HolTerm:
        return self.hol.concl

    @property
    def assumed(self) -> frozenset:
        return self.fo.assumed

    def __repr__(self) -> str:
        return f"HolTheorem({len(self.hol.hyps)} |- {print_term(self.hol.concl)})"


class HolTactics:
    """The rule suite over one embedder (hence one workspace)."""

    def __init__(self, emb: Embedder):
        self.emb = emb
        self.ws = emb.ws
        self.base = emb.base
        s = self.ws.sig
        self._vA = s.variable("A")
        self._vB = s.variable("B")
        self._vf = s.variable("f")
        self._vg = s.variable("g")
        self._vx = s.variable("x")
        self._vy = s.variable("y")
        self._vp = s.variable("p")
        self._vq = s.variable("q")
        self._pt_memo: Dict[HolTerm, Theorem] = {}
        self._ne_memo: Dict[HolType, Theorem] = {}
        self._ce_memo: Dict[int, Theorem] = {}
        self._ceo_memo: Dict[int, Theorem] = {}
        self._nat_ne: Optional[Theorem] = None
        self.defined: Dict[str, object] = {}
        self.ws.ext["tactics"] = self

    # ------------------------------------------------------------------
    # nonemptiness

    def nonempty_of_member(self, mem: Theorem, e: Term, S: Term) -> Theorem:
        """From .. |- e in S conclude .. |- not (S = empty)."""
        ws, s, b = self.ws, self.ws.sig, self.base
        hy = ws.hypothesis(s.eq(S, b.empty_t))
        inside = tk.rw_right(ws, hy, mem, s.member(e, S), S, b.empty_t)
        neg = ws.inst(b.not_in_empty(), {self._vx: e})
        step = tk.contradiction(ws, inside, neg, s.member(e, b.empty_t))
        return ws.rnot(step, s.eq(S, b.empty_t))

    def type_nonempty(self, ty: HolType) -> Theorem:
        """not (<ty> = empty), from nonemptiness of the type variables."""
        hit = self._ne_memo.get(ty)
        if hit is not None:
            return hit
        ws, s, b = self.ws, self.ws.sig, self.base
        if isinstance(ty, TyVar):
            thm = ws.hypothesis(Not(s.eq(Var(s.variable(ty.name)), b.empty_t)))
        elif isinstance(ty, Bool):
            thm = b.bool_nonempty()
        elif isinstance(ty, Ind):
            if self._nat_ne is None:
                self._nat_ne = self.nonempty_of_member(b.zero_in_nat(), b.empty_t, b.nat_t)
            thm = self._nat_ne
        elif isinstance(ty, Fun):
            thm = tk.apply_lemma(
                ws,
                b.funspace_nonempty(),
                {self._vA: self.emb.embed_type(ty.dom), self._vB: self.emb.embed_type(ty.cod)},
                self.type_nonempty(ty.cod),
            )
        elif isinstance(ty, TyCon):
            rec = self.emb.tycon_nonempty.get(ty.name)
            if rec is None:
                raise NotEliminable(f"datatype {ty.name!r} has no nonemptiness theorem")
            lemma, params = rec
            mapping = {p: self.emb.embed_type(a) for p, a in zip(params, ty.args)}
            thm = tk.apply_lemma(
                ws, lemma, mapping, *[self.type_nonempty(a) for a in ty.args]
            )
        else:
            raise ShapeMismatch(f"not a type: {ty!r}")
        self._ne_memo[ty] = thm
        return thm

    def elem_exists(self, ty: HolType) -> Theorem:
        """ex z. z in <ty>, from type-variable nonemptiness."""
        ws, b = self.ws, self.base
        return tk.apply_lemma(
            ws,
            b.nonempty_elim(),
            {self._vA: self.emb.embed_type(ty)},
            self.type_nonempty(ty),
        )

    def closure_exists(self, entry: RegistryEntry) -> Theorem:
        """ex lam_i. def(lam_i) as an admitted schema instance, one per
        registered closure, keyed by the closure's de Bruijn print.

        The instance carries no hypotheses: when every quantifier domain in
        the template is nonempty the prescribed set function is the witness,
        and an empty domain makes the pointwise clause vacuous, so membership
        in the function-space chain alone decides the matter."""
        hit = self._ce_memo.get(entry.index)
        if hit is not None:
            return hit
        ws = self.ws
        seq = Sequent((), (Exists(entry.var, entry.template),))
        thm = ws.admit_schema_instance("closure-exists", entry.key, seq)
        self._ce_memo[entry.index] = thm
        return thm

    # ------------------------------------------------------------------
    # typing derivations

    def prooftype(self, t: HolTerm) -> Theorem:
        """<t> in <type(t)>, with exactly the typings and closure
        definitions the derivation uses as hypotheses."""
        hit = self._pt_memo.get(t)
        if hit is not None:
            return hit
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        if isinstance(t, HVar):
            thm = ws.hypothesis(s.member(Var(s.variable(t.name)), emb.embed_type(t.ty)))
        elif isinstance(t, HConst):
            if t.name == "=":
                inst = dict(t.inst)
                A = inst.get("A", TyVar("A"))
                thm = ws.inst(b.e_typing(), {self._vA: emb.embed_type(A)})
            elif t.name == "T":
                thm = b.top_in_bool()
            else:
                lemma = emb.typing_thms.get(t.name)
                if lemma is None:
                    raise ShapeMismatch(f"constant {t.name!r} has no typing theorem")
                _, generic, order = emb.fol_consts[t.name]
                inst = dict(t.inst)
                mapping = {
                    s.variable(v): emb.embed_type(inst.get(v, TyVar(v))) for v in order
                }
                thm = ws.inst(lemma, mapping) if mapping else lemma
        elif isinstance(t, HComb):
            fty = t.fn.ty
            thm = tk.apply_lemma(
                ws,
                b.app_typing(),
                {
                    self._vA: emb.embed_type(fty.dom),
                    self._vB: emb.embed_type(fty.cod),
                    self._vf: emb.embed_term(t.fn, checked=True),
                    self._vx: emb.embed_term(t.arg, checked=True),
                },
                self.prooftype(t.fn),
                self.prooftype(t.arg),
            )
        elif isinstance(t, HAbs):
            entry = emb.register_abstraction(t)
            wits = [Var(s.variable(v.name)) for v in entry.captures]
            mems = [
                ws.hypothesis(s.member(Var(s.variable(v.name)), emb.embed_type(v.ty)))
                for v in entry.captures
            ]
            thm, _ = self.closure_member(entry, wits, mems)
        else:
            raise ShapeMismatch(f"not a lambda term: {t!r}")
        self._pt_memo[t] = thm
        return thm

    def closure_member(
        self,
        entry: RegistryEntry,
        wits: Sequence[Term],
        mems: Sequence[Theorem],
    ) -> Tuple[Theorem, Term]:
        """Membership of a closure applied to capture-position arguments:
        from def(lam_i) and argument typings,
        lam_i a1 .. an in <T => B>. Returns the theorem and the applied
        term."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        thm = tk.and_left(ws, ws.hypothesis(entry.template), entry.template.left, entry.template.right)
        cur: Term = Var(entry.var)
        cur_ty: HolType = entry.chain_type
        for wt, mem in zip(wits, mems):
            thm = tk.apply_lemma(
                ws,
                b.app_typing(),
                {
                    self._vA: emb.embed_type(cur_ty.dom),
                    self._vB: emb.embed_type(cur_ty.cod),
                    self._vf: cur,
                    self._vx: wt,
                },
                thm,
                mem,
            )
            cur = b.app_t(cur, wt)
            cur_ty = cur_ty.cod
        return thm, cur

    def closure_beta(
        self,
        entry: RegistryEntry,
        wits: Sequence[Term],
        mems: Sequence[Theorem],
        binder_wit: Term,
        binder_mem: Theorem,
    ) -> Theorem:
        """Eliminate a closure definition at given capture arguments and a
        binder argument: lam_i a1 .. an w = <body>[captures := args, x := w]."""
        ws, s = self.ws, self.ws.sig
        thm = tk.and_right(
            ws, ws.hypothesis(entry.template), entry.template.left, entry.template.right
        )
        quant = entry.template.right
        for wt, mem in zip(list(wits) + [binder_wit], list(mems) + [binder_mem]):
            thm = tk.bounded_forall_elim(ws, thm, mem, quant, wt)
            quant = subst_formula(s, quant.body.right, {quant.var: wt})
        return thm

    # ------------------------------------------------------------------
    # equality plumbing between the two readings of equality

    def to_set_eq(self, fo: Theorem, a: HolTerm, b_: HolTerm) -> Theorem:
        """From .. |- (E <a> <b>) = top derive .. |- <a> = <b>."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        ea, eb = emb.embed_term(a, checked=True), emb.embed_term(b_, checked=True)
        ec = tk.apply_lemma(
            ws,
            b.e_correct(),
            {self._vA: emb.embed_type(a.ty), self._vx: ea, self._vy: eb},
            self.prooftype(a),
            self.prooftype(b_),
        )
        lhs = s.eq(b.app_t(b.app_t(b.eqfn_t(emb.embed_type(a.ty)), ea), eb), b.top_t)
        return tk.iff_mp(ws, ec, fo, lhs, s.eq(ea, eb))

    def eq_to_E(self, fo: Theorem, a: HolTerm, b_: HolTerm) -> Theorem:
        """From .. |- <a> = <b> derive .. |- (E <a> <b>) = top."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        ea, eb = emb.embed_term(a, checked=True), emb.embed_term(b_, checked=True)
        ec = tk.apply_lemma(
            ws,
            b.e_correct(),
            {self._vA: emb.embed_type(a.ty), self._vx: ea, self._vy: eb},
            self.prooftype(a),
            self.prooftype(b_),
        )
        lhs = s.eq(b.app_t(b.app_t(b.eqfn_t(emb.embed_type(a.ty)), ea), eb), b.top_t)
        return tk.iff_mpr(ws, ec, fo, lhs, s.eq(ea, eb))

    # ------------------------------------------------------------------
    # context cleanup

    def clean(self, fo: Theorem, keep: frozenset) -> Theorem:
        """Discharge context assumptions not in `keep`: closure definitions
        in reverse index order, then variable typings, then type-variable
        nonemptiness."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        templates = {e.template: e for e in emb.entries()}
        in_sym = s.member(b.empty_t, b.empty_t).sym
        eq_sym_ = s.eq(b.empty_t, b.empty_t).sym

        def rest_free(f: Formula) -> frozenset:
            fv: frozenset = frozenset()
            for g in fo.sequent.left:
                if g != f:
                    fv |= g.free
            for g in fo.sequent.right:
                fv |= g.free
            return fv

        # memberships of compound terms (e.g. an application of a function
        # variable): re-derive them by typing recursion and cut them out
        def compound_extras() -> List[Pred]:
            out = []
            for f in fo.sequent.left - keep:
                if (
                    isinstance(f, Pred)
                    and f.sym == in_sym
                    and len(f.args) == 2
                    and not isinstance(f.args[0], Var)
                ):
                    out.append(f)
            return out

        while True:
            progressed = False
            for f in compound_extras():
                if f not in fo.sequent.left:
                    continue
                tyenv: Dict[str, "hol.HolType"] = {}
                for g in fo.sequent.left:
                    if (
                        isinstance(g, Pred)
                        and g.sym == in_sym
                        and len(g.args) == 2
                        and isinstance(g.args[0], Var)
                    ):
                        try:
                            tyenv[s.name_of(g.args[0].sym)] = emb.unembed_type(g.args[1])
                        except Exception:
                            pass
                try:
                    ht = unembed_term(emb, f.args[0], tyenv)
                except Exception:
                    continue
                if emb.embed_term(ht, checked=True) != f.args[0]:
                    continue
                if emb.embed_type(ht.ty) != f.args[1]:
                    continue
                fo = ws.cut(self.prooftype(ht), fo, f)
                progressed = True
            if not progressed:
                break

        # closure definitions, highest index first
        cands = [
            templates[f]
            for f in fo.sequent.left - keep
            if f in templates
        ]
        for entry in sorted(cands, key=lambda e: -e.index):
            f = entry.template
            if f not in fo.sequent.left or f in keep:
                continue
            if entry.var in rest_free(f):
                continue
            ex_f = Exists(entry.var, f)
            fo = ws.cut(self.closure_exists(entry), ws.lex(fo, ex_f, entry.var), ex_f)

        # variable typings
        def typing_extras() -> List[Pred]:
            out = []
            for f in fo.sequent.left - keep:
                if (
                    isinstance(f, Pred)
                    and f.sym == in_sym
                    and len(f.args) == 2
                    and isinstance(f.args[0], Var)
                ):
                    out.append(f)
            return out

        for f in sorted(typing_extras(), key=lambda f: -f.args[0].sym):
            if f not in fo.sequent.left:
                continue
            v = f.args[0].sym
            if v in rest_free(f):
                continue
            try:
                ty = emb.unembed_type(f.args[1])
            except Exception:
                continue
            ex_f = Exists(v, f)
            fo = ws.cut(self.elem_exists(ty), ws.lex(fo, ex_f, v), ex_f)

        # type-variable nonemptiness
        def ne_extras() -> List[Not]:
            out = []
            for f in fo.sequent.left - keep:
                if (
                    isinstance(f, Not)
                    and isinstance(f.body, Pred)
                    and f.body.sym == eq_sym_
                    and isinstance(f.body.args[0], Var)
                    and f.body.args[1] == b.empty_t
                ):
                    out.append(f)
            return out

        for f in sorted(ne_extras(), key=lambda f: -f.body.args[0].sym):
            if f not in fo.sequent.left:
                continue
            v = f.body.args[0].sym
            if v in rest_free(f):
                continue
            ex_f = Exists(v, f)
            witness = tk.exists_intro(ws, b.bool_nonempty(), ex_f, b.bool_t)
            fo = ws.cut(witness, ws.lex(fo, ex_f, v), ex_f)

        extras = fo.sequent.left - keep
        if extras:
            from .printer import print_formula

            shown = sorted(print_formula(s, f) for f in extras)
            raise NotEliminable(
                "context cleanup cannot discharge: " + "; ".join(shown[:3])
            )
        return fo

    def finish(
        self, hs: HolSequent, fo: Theorem, target: Optional[EmbeddedSequent] = None
    ) -> HolTheorem:
        if target is None:
            target = self.emb.embed_sequent(hs)
        fo = self.clean(fo, target.sequent.left)
        fo = tk.weaken_to(self.ws, fo, target.sequent)
        return HolTheorem(hs, target, fo)

    # ------------------------------------------------------------------
    # the rule suite

    def refl(self, t: HolTerm) -> HolTheorem:
        """|- t = t."""
        ws, emb = self.ws, self.emb
        hs = HolSequent([], mk_eq(t, t))
        fo = self.eq_to_E(ws.refl(emb.embed_term(t)), t, t)
        return self.finish(hs, fo)

    def trans(self, ab: HolTheorem, bc: HolTheorem) -> HolTheorem:
        """From Gamma |- s = t and Delta |- t = u, Gamma u Delta |- s = u."""
        s_, t_ = dest_eq(ab.hol.concl)
        t2_, u_ = dest_eq(bc.hol.concl)
        if not alpha_equal_hol(t_, t2_):
            raise NotAlphaEquivalent("trans: middle terms differ")
        ws, emb = self.ws, self.emb
        hs = HolSequent(ab.hol.hyps | bc.hol.hyps, mk_eq(s_, u_))
        eq1 = self.to_set_eq(ab.fo, s_, t_)
        eq2 = self.to_set_eq(bc.fo, t2_, u_)
        es, et, eu = (
            emb.embed_term(s_, checked=True),
            emb.embed_term(t_, checked=True),
            emb.embed_term(u_, checked=True),
        )
        chained = tk.eq_trans(ws, eq1, eq2, es, et, eu)
        return self.finish(hs, self.eq_to_E(chained, s_, u_))

    def mk_comb(self, fg: HolTheorem, xy: HolTheorem) -> HolTheorem:
        """From Gamma |- f = g and Delta |- x = y (with f : A -> B, x : A),
        Gamma u Delta |- f x = g y."""
        f_, g_ = dest_eq(fg.hol.concl)
        x_, y_ = dest_eq(xy.hol.concl)
        if not isinstance(f_.ty, Fun):
            raise IllTyped("mk_comb: first equation is not between functions")
        if f_.ty.dom != x_.ty:
            raise IllTyped("mk_comb: argument type does not match the domain")
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        lhs_h, rhs_h = HComb(f_, x_), HComb(g_, y_)
        hs = HolSequent(fg.hol.hyps | xy.hol.hyps, mk_eq(lhs_h, rhs_h))
        ef, eg = emb.embed_term(f_, checked=True), emb.embed_term(g_, checked=True)
        ex, ey = emb.embed_term(x_, checked=True), emb.embed_term(y_, checked=True)
        eqf = self.to_set_eq(fg.fo, f_, g_)
        eqx = self.to_set_eq(xy.fo, x_, y_)
        lhs = b.app_t(ef, ex)
        fo = ws.refl(lhs)
        hole = s.fresh_var("hole")
        if ef != eg:
            ctx = s.eq(lhs, b.app_t(Var(hole), ex))
            fo = tk.subst_right(ws, fo, eqf, ctx, hole, ef, eg)
        if ex != ey:
            ctx = s.eq(lhs, b.app_t(eg, Var(hole)))
            fo = tk.subst_right(ws, fo, eqx, ctx, hole, ex, ey)
        return self.finish(hs, self.eq_to_E(fo, lhs_h, rhs_h))

    def abs(self, x: HVar, thm: HolTheorem) -> HolTheorem:
        """From Gamma |- s = t (x not free in Gamma),
        Gamma |- (\\x. s) = (\\x. t)."""
        if not isinstance(x, HVar):
            raise ShapeMismatch("abs: binder must be a variable")
        for h in thm.hol.hyps:
            if x in h.free:
                raise FreeVariableClash(
                    f"abs: {x.name!r} occurs free in a hypothesis"
                )
        s_, t_ = dest_eq(thm.hol.concl)
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        la, lb = HAbs(x, s_), HAbs(x, t_)
        hs = HolSequent(thm.hol.hyps, mk_eq(la, lb))
        ea = emb.register_abstraction(la)
        eb = emb.register_abstraction(lb)
        mid = self.to_set_eq(thm.fo, s_, t_)
        fo = self._ext_eq(ea, eb, x, mid, emb.embed_term(s_, checked=True),
                          emb.embed_term(t_, checked=True))
        return self.finish(hs, self.eq_to_E(fo, la, lb))

    def _ext_eq(
        self,
        ea: RegistryEntry,
        eb: RegistryEntry,
        x: HVar,
        mid: Theorem,
        es: Term,
        et: Term,
    ) -> Theorem:
        """Functional extensionality between two closures over the same
        binder: from a pointwise bridge mid: .. |- <s> = <t>, conclude
        .. |- lam_a cs = lam_b ds."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        xsym = s.variable(x.name)
        xmem = ws.hypothesis(s.member(Var(xsym), emb.embed_type(x.ty)))

        def identity_args(entry: RegistryEntry):
            wits = [Var(s.variable(v.name)) for v in entry.captures]
            mems = [
                ws.hypothesis(s.member(Var(s.variable(v.name)), emb.embed_type(v.ty)))
                for v in entry.captures
            ]
            return wits, mems

        wa, ma = identity_args(ea)
        wb, mb = identity_args(eb)
        lmem, lterm = self.closure_member(ea, wa, ma)
        rmem, rterm = self.closure_member(eb, wb, mb)
        l_eq = self.closure_beta(ea, wa, ma, Var(xsym), xmem)
        r_eq = self.closure_beta(eb, wb, mb, Var(xsym), xmem)
        lapp = b.app_t(lterm, Var(xsym))
        rapp = b.app_t(rterm, Var(xsym))
        chain = tk.eq_trans(ws, l_eq, mid, lapp, es, et)
        chain = tk.eq_trans(ws, chain, tk.eq_sym(ws, r_eq, rapp, et), lapp, et, rapp)
        memf = s.member(Var(xsym), emb.embed_type(x.ty))
        eqf = s.eq(lapp, rapp)
        step = tk.imp_intro(ws, chain, memf, eqf)
        allf = Forall(xsym, Imp(memf, eqf))
        step = ws.rall(step, allf, xsym)
        A_, B_ = x.ty, ea.abs.body.ty
        return tk.apply_lemma(
            ws,
            b.fun_ext(),
            {
                self._vA: emb.embed_type(A_),
                self._vB: emb.embed_type(B_),
                self._vf: lterm,
                self._vg: rterm,
            },
            lmem,
            rmem,
            step,
        )

    def beta(self, x: HVar, t: HolTerm) -> HolTheorem:
        """|- (\\x. t) x = t."""
        if not isinstance(x, HVar):
            raise ShapeMismatch("beta: binder must be a variable")
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        a = HAbs(x, t)
        comb = HComb(a, x)
        hs = HolSequent([], mk_eq(comb, t))
        entry = emb.register_abstraction(a)
        wits = [Var(s.variable(v.name)) for v in entry.captures]
        mems = [
            ws.hypothesis(s.member(Var(s.variable(v.name)), emb.embed_type(v.ty)))
            for v in entry.captures
        ]
        xmem = ws.hypothesis(s.member(Var(s.variable(x.name)), emb.embed_type(x.ty)))
        fo = self.closure_beta(entry, wits, mems, Var(s.variable(x.name)), xmem)
        return self.finish(hs, self.eq_to_E(fo, comb, t))

    def assume(self, p: HolTerm) -> HolTheorem:
        """p |- p."""
        hs = HolSequent([p], p)
        fo = self.ws.hypothesis(
            self.ws.sig.eq(self.emb.embed_term(p), self.base.top_t)
        )
        return self.finish(hs, fo)

    def eq_mp(self, pq: HolTheorem, p: HolTheorem) -> HolTheorem:
        """From Gamma |- p = q and Delta |- p, Gamma u Delta |- q."""
        p_, q_ = dest_eq(pq.hol.concl)
        if not alpha_equal_hol(p_, p.hol.concl):
            raise NotAlphaEquivalent("eq_mp: premise does not match the equation")
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        hs = HolSequent(pq.hol.hyps | p.hol.hyps, q_)
        eq = self.to_set_eq(pq.fo, p_, q_)
        ep = emb.embed_term(p_, checked=True)
        eq_ = emb.embed_term(q_, checked=True)
        hole = s.fresh_var("hole")
        ctx = s.eq(Var(hole), b.top_t)
        fo = tk.subst_right(ws, p.fo, eq, ctx, hole, ep, eq_)
        return self.finish(hs, fo)

    def deduct_antisym_rule(self, a: HolTheorem, b_: HolTheorem) -> HolTheorem:
        """From Gamma |- p and Delta |- q,
        (Gamma - {q}) u (Delta - {p}) |- p = q."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        p_, q_ = a.hol.concl, b_.hol.concl
        hypsA = frozenset(h for h in a.hol.hyps if not alpha_equal_hol(h, q_))
        hypsB = frozenset(h for h in b_.hol.hyps if not alpha_equal_hol(h, p_))
        hs = HolSequent(hypsA | hypsB, mk_eq(p_, q_))
        ep = emb.embed_term(p_, checked=True)
        eq_ = emb.embed_term(q_, checked=True)
        fp = s.eq(ep, b.top_t)
        fq = s.eq(eq_, b.top_t)
        fwd = tk.imp_intro(ws, b_.fo, fp, fq)
        bwd = tk.imp_intro(ws, a.fo, fq, fp)
        iff = tk.iff_intro(ws, fwd, bwd, fp, fq)
        pe = tk.apply_lemma(
            ws,
            b.prop_ext(),
            {self._vp: ep, self._vq: eq_},
            self.prooftype(p_),
            self.prooftype(q_),
            iff,
        )
        return self.finish(hs, self.eq_to_E(pe, p_, q_))

    def inst(self, thm: HolTheorem, sigma: Mapping[HVar, HolTerm]) -> HolTheorem:
        """Simultaneous substitution of terms for free variables, with the
        embedding recanonicalized and its context repaired."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        live: Dict[HVar, HolTerm] = {}
        for k, v in sigma.items():
            if not isinstance(k, HVar):
                raise IllTyped("inst: substitution keys must be variables")
            if not isinstance(v, HolTerm):
                raise IllTyped("inst: substitution values must be terms")
            if v.ty != k.ty:
                raise IllTyped(
                    f"inst: cannot substitute a {v.ty!r} term for {k.name} : {k.ty!r}"
                )
            if v != k:
                live[k] = v
        new_hyps = [hol.vsubst(h, live) for h in thm.hol.hyps]
        new_concl = hol.vsubst(thm.hol.concl, live)
        hs = HolSequent(new_hyps, new_concl)
        target = emb.embed_sequent(hs)
        if not live:
            return HolTheorem(hs, target, tk.weaken_to(ws, thm.fo, target.sequent))
        sf = {s.variable(k.name): emb.embed_term(v) for k, v in live.items()}
        fo = ws.inst(thm.fo, sf)
        hole = s.fresh_var("hole")
        # conclusion: rewrite the substituted image to the canonical embedding
        ec, lc, rc = self.embed_subst_eq(thm.hol.concl, live)
        if lc != rc:
            ctx = s.eq(Var(hole), b.top_t)
            fo = tk.subst_right(ws, fo, ec, ctx, hole, lc, rc)
        # hypotheses: derive each substituted image from its canonical form
        for h in thm.hol.hyps:
            eh, lh, rh = self.embed_subst_eq(h, live)
            if lh == rh:
                continue
            old_f = s.eq(lh, b.top_t)
            if old_f not in fo.sequent.left:
                continue
            start = ws.hypothesis(s.eq(rh, b.top_t))
            ctx = s.eq(Var(hole), b.top_t)
            bridged = tk.subst_right(
                ws, start, tk.eq_sym(ws, eh, lh, rh), ctx, hole, rh, lh
            )
            fo = ws.cut(bridged, fo, old_f)
        # typings of substituted variables become derived typing facts
        for k, v in live.items():
            f = thm.embedded.context.typing.get(k.name)
            if f is None:
                continue
            f2 = subst_formula(s, f, sf)
            if f2 in fo.sequent.left and f2 not in target.sequent.left:
                fo = ws.cut(self.prooftype(v), fo, f2)
        return self.finish(hs, fo, target)

    def embed_subst_eq(
        self, t: HolTerm, sigma: Mapping[HVar, HolTerm]
    ) -> Tuple[Theorem, Term, Term]:
        """Prove  .. |- <t>[sigma] = <t sigma>  where the left side applies
        the first-order substitution to the embedding and the right side is
        the canonical embedding of the substituted lambda term. Returns the
        theorem with both terms."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        live = {k: v for k, v in sigma.items() if k in t.free and v != k}
        et = emb.embed_term(t, checked=True)
        if not live:
            return ws.refl(et), et, et
        sf = {s.variable(k.name): emb.embed_term(v, checked=True) for k, v in live.items()}
        if isinstance(t, HVar):
            lhs = sf[s.variable(t.name)]
            return ws.refl(lhs), lhs, lhs
        if isinstance(t, HComb):
            thf, lf, rf = self.embed_subst_eq(t.fn, live)
            thu, lu, ru = self.embed_subst_eq(t.arg, live)
            lhs = b.app_t(lf, lu)
            rhs = b.app_t(rf, ru)
            fo = ws.refl(lhs)
            hole = s.fresh_var("hole")
            if lf != rf:
                ctx = s.eq(lhs, b.app_t(Var(hole), lu))
                fo = tk.subst_right(ws, fo, thf, ctx, hole, lf, rf)
            if lu != ru:
                ctx = s.eq(lhs, b.app_t(rf, Var(hole)))
                fo = tk.subst_right(ws, fo, thu, ctx, hole, lu, ru)
            return fo, lhs, rhs
        if isinstance(t, HAbs):
            entry = emb.register_abstraction(t)
            a2 = hol.vsubst(t, live)
            entry2 = emb.register_abstraction(a2)
            lhs = subst_term(et, sf)
            rhs = emb.embed_term(a2, checked=True)
            wits, mems = [], []
            for v in entry.captures:
                if v in live:
                    wits.append(emb.embed_term(live[v], checked=True))
                    mems.append(self.prooftype(live[v]))
                else:
                    wits.append(Var(s.variable(v.name)))
                    mems.append(
                        ws.hypothesis(
                            s.member(Var(s.variable(v.name)), emb.embed_type(v.ty))
                        )
                    )
            wits2 = [Var(s.variable(v.name)) for v in entry2.captures]
            mems2 = [
                ws.hypothesis(s.member(Var(s.variable(v.name)), emb.embed_type(v.ty)))
                for v in entry2.captures
            ]
            lmem, lterm = self.closure_member(entry, wits, mems)
            rmem, rterm = self.closure_member(entry2, wits2, mems2)
            w = a2.var
            wsym = s.variable(w.name)
            wmem = ws.hypothesis(s.member(Var(wsym), emb.embed_type(w.ty)))
            l_eq = self.closure_beta(entry, wits, mems, Var(wsym), wmem)
            r_eq = self.closure_beta(entry2, wits2, mems2, Var(wsym), wmem)
            ih, lb_, rb_ = self.embed_subst_eq(
                t.body, {**live, t.var: HVar(w.name, w.ty)}
            )
            lapp = b.app_t(lterm, Var(wsym))
            rapp = b.app_t(rterm, Var(wsym))
            chain = tk.eq_trans(ws, l_eq, ih, lapp, lb_, rb_)
            chain = tk.eq_trans(
                ws, chain, tk.eq_sym(ws, r_eq, rapp, rb_), lapp, rb_, rapp
            )
            memf = s.member(Var(wsym), emb.embed_type(w.ty))
            eqf = s.eq(lapp, rapp)
            step = tk.imp_intro(ws, chain, memf, eqf)
            allf = Forall(wsym, Imp(memf, eqf))
            step = ws.rall(step, allf, wsym)
            fo = tk.apply_lemma(
                ws,
                b.fun_ext(),
                {
                    self._vA: emb.embed_type(t.var.ty),
                    self._vB: emb.embed_type(t.body.ty),
                    self._vf: lterm,
                    self._vg: rterm,
                },
                lmem,
                rmem,
                step,
            )
            return fo, lhs, rhs
        # constants have no free term variables; unreachable when live is
        # nonempty, kept for safety
        return ws.refl(et), et, et

    def inst_type(self, thm: HolTheorem, theta: Mapping[str, HolType]) -> HolTheorem:
        """Simultaneous type instantiation. Closure variables are renamed to
        the closures of the instantiated abstractions; everything else is a
        plain first-order substitution."""
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        for k, v in theta.items():
            if not isinstance(k, str):
                raise IllTyped("inst_type: keys must be type-variable names")
            if not isinstance(v, HolType):
                raise IllTyped("inst_type: values must be types")
        live = {k: v for k, v in theta.items() if v != TyVar(k)}
        new_hyps = [hol.tinst(h, live) for h in thm.hol.hyps]
        new_concl = hol.tinst(thm.hol.concl, live)
        hs = HolSequent(new_hyps, new_concl)
        target = emb.embed_sequent(hs)
        if not live:
            return HolTheorem(hs, target, tk.weaken_to(ws, thm.fo, target.sequent))
        combined: Dict[int, Term] = {
            s.variable(X): emb.embed_type(ty) for X, ty in live.items()
        }
        for sym in thm.fo.sequent.free:
            name = s.name_of(sym)
            if not name:
                continue
            if is_lambda_name(name):
                entry = emb.lookup_lambda(name)
                if entry is None:
                    continue
                entry2 = emb.register_abstraction(hol.tinst(entry.abs, live))
                if entry2 is not entry:
                    combined[entry.var] = Var(entry2.var)
        fo = ws.inst(thm.fo, combined)
        # nonemptiness of instantiated type variables becomes derived
        for X, ty in live.items():
            f_old = thm.embedded.context.nonempty.get(X)
            if f_old is None:
                continue
            f_new = Not(s.eq(emb.embed_type(ty), b.empty_t))
            if f_new in fo.sequent.left and f_new not in target.sequent.left:
                fo = ws.cut(self.type_nonempty(ty), fo, f_new)
        return self.finish(hs, fo, target)

    def eta(self, x: HVar, t: HolTerm) -> HolTheorem:
        """|- (\\x. t x) = t, for x not free in t."""
        if not isinstance(x, HVar):
            raise ShapeMismatch("eta: binder must be a variable")
        if not isinstance(t.ty, Fun):
            raise IllTyped("eta: the body head must be a function")
        if x.ty != t.ty.dom:
            raise IllTyped("eta: binder type does not match the domain")
        if x in t.free:
            raise FreeVariableClash(f"eta: {x.name!r} occurs free in the body")
        ws, s, b, emb = self.ws, self.ws.sig, self.base, self.emb
        a = HAbs(x, HComb(t, x))
        hs = HolSequent([], mk_eq(a, t))
        entry = emb.register_abstraction(a)
        wits = [Var(s.variable(v.name)) for v in entry.captures]
        mems = [
            ws.hypothesis(s.member(Var(s.variable(v.name)), emb.embed_type(v.ty)))
            for v in entry.captures
        ]
        xsym = s.variable(x.name)
        xmem = ws.hypothesis(s.member(Var(xsym), emb.embed_type(x.ty)))
        lmem, lterm = self.closure_member(entry, wits, mems)
        rmem = self.prooftype(t)
        point = self.closure_beta(entry, wits, mems, Var(xsym), xmem)
        et = emb.embed_term(t, checked=True)
        lapp = b.app_t(lterm, Var(xsym))
        rapp = b.app_t(et, Var(xsym))
        memf = s.member(Var(xsym), emb.embed_type(x.ty))
        eqf = s.eq(lapp, rapp)
        step = tk.imp_intro(ws, point, memf, eqf)
        allf = Forall(xsym, Imp(memf, eqf))
        step = ws.rall(step, allf, xsym)
        fo = tk.apply_lemma(
            ws,
            b.fun_ext(),
            {
                self._vA: emb.embed_type(t.ty.dom),
                self._vB: emb.embed_type(t.ty.cod),
                self._vf: lterm,
                self._vg: et,
            },
            lmem,
            rmem,
            step,
        )
        return self.finish(hs, self.eq_to_E(fo, a, t))

    # ------------------------------------------------------------------
    # derived conversions

    def sym(self, thm: HolTheorem) -> HolTheorem:
        a, b_ = dest_eq(thm.hol.concl)
        hs = HolSequent(thm.hol.hyps, mk_eq(b_, a))
        eq = self.to_set_eq(thm.fo, a, b_)
        ea = self.emb.embed_term(a, checked=True)
        eb = self.emb.embed_term(b_, checked=True)
        fo = self.eq_to_E(tk.eq_sym(self.ws, eq, ea, eb), b_, a)
        return self.finish(hs, fo)

    def alpha_conv(self, y: HVar, a: HAbs) -> HolTheorem:
        """|- (\\x. t) = (\\y. t[x := y])."""
        if not isinstance(a, HAbs):
            raise ShapeMismatch("alpha_conv: target must be an abstraction")
        if not isinstance(y, HVar) or y.ty != a.var.ty:
            raise IllTyped("alpha_conv: the new binder must share the old type")
        if y == a.var:
            return self.refl(a)
        if y in a.free:
            raise FreeVariableClash(
                f"alpha_conv: {y.name!r} occurs free in the abstraction"
            )
        bt = self.beta(a.var, a.body)
        it = self.inst(bt, {a.var: y})
        ab_ = self.abs(y, it)
        et_ = self.eta(y, a)
        return self.trans(self.sym(et_), ab_)

    def alpha_equivalence(self, a: HolTerm, b_: HolTerm) -> HolTheorem:
        """|- a = b when the two terms agree up to bound-variable renaming;
        the embedded sides coincide, so reflexivity closes the gap."""
        if not alpha_equal_hol(a, b_):
            raise NotAlphaEquivalent("alpha_equivalence: terms differ structurally")
        ws, emb = self.ws, self.emb
        hs = HolSequent([], mk_eq(a, b_))
        fo = self.eq_to_E(ws.refl(emb.embed_term(a)), a, b_)
        return self.finish(hs, fo)


def get_tactics(ws: Workspace) -> HolTactics:
    t = ws.ext.get("tactics")
    if t is None:
        t = HolTactics(get_embedder(ws))
    return t
