"""Derived inference rules.

Nothing here is trusted: every function builds its result by calling kernel
rule methods, so a bug can only raise an exception or produce a theorem whose
sequent is not the one the caller wanted, never an unsound theorem.

Conventions: functions take the workspace first; `phi`/`psi` name the formulas
the connective rules pivot on, and callers pass them explicitly (premise
sequents are sets, so inference by pattern matching would be ambiguous).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .errors import RuleMismatch
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
    replace_term,
    subst_formula,
)
from .kernel import Theorem, Workspace


def hyp(ws: Workspace, phi: Formula) -> Theorem:
    return ws.hypothesis(phi)


def weaken(ws: Workspace, t: Theorem, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> Theorem:
    for f in left:
        if f not in t.sequent.left:
            t = ws.lweak(t, f)
    for f in right:
        if f not in t.sequent.right:
            t = ws.rweak(t, f)
    return t


def weaken_to(ws: Workspace, t: Theorem, target: Sequent) -> Theorem:
    if not (t.sequent.left <= target.left and t.sequent.right <= target.right):
        raise RuleMismatch("weaken_to: theorem is not a subsequent of the target")
    return weaken(ws, t, target.left - t.sequent.left, target.right - t.sequent.right)


def mp(ws: Workspace, ab: Theorem, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
    """From  .. |- phi imp psi, ..  and  .. |- phi, ..  conclude  .. |- psi, .."""
    step = ws.limp(a, ws.hypothesis(psi), phi, psi)
    return ws.cut(ab, step, Imp(phi, psi))


def imp_intro(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    """Discharge phi: the antecedent is weakened in when not already present."""
    if phi not in t.sequent.left:
        t = ws.lweak(t, phi)
    return ws.rimp(t, phi, psi)


def iff_intro(ws: Workspace, fwd: Theorem, bwd: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return ws.riff(fwd, bwd, phi, psi)


def iff_forward(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    """From .. |- phi iff psi, .. extract .. |- phi imp psi, .."""
    h = ws.hypothesis(Imp(phi, psi))
    l = ws.liff(h, phi, psi)
    return ws.cut(t, l, Iff(phi, psi))


def iff_backward(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    h = ws.hypothesis(Imp(psi, phi))
    l = ws.liff(h, phi, psi)
    return ws.cut(t, l, Iff(phi, psi))


def iff_mp(ws: Workspace, t: Theorem, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return mp(ws, iff_forward(ws, t, phi, psi), a, phi, psi)


def iff_mpr(ws: Workspace, t: Theorem, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return mp(ws, iff_backward(ws, t, phi, psi), a, psi, phi)


def and_intro(ws: Workspace, a: Theorem, b: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return ws.rand(a, b, phi, psi)


def and_left(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    """From .. |- phi and psi, .. conclude .. |- phi, .."""
    step = ws.land(ws.hypothesis(phi), phi, psi)
    return ws.cut(t, step, And(phi, psi))


def and_right(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    step = ws.land(ws.hypothesis(psi), phi, psi)
    return ws.cut(t, step, And(phi, psi))


def sel_and_l(ws: Workspace, phi: Formula, psi: Formula) -> Theorem:
    """phi and psi |- phi"""
    return ws.land(ws.hypothesis(phi), phi, psi)


def sel_and_r(ws: Workspace, phi: Formula, psi: Formula) -> Theorem:
    """phi and psi |- psi"""
    return ws.land(ws.hypothesis(psi), phi, psi)


def or_intro_l(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return ws.ror(t, phi, psi)


def or_intro_r(ws: Workspace, t: Theorem, phi: Formula, psi: Formula) -> Theorem:
    return ws.ror(t, phi, psi)


def case_split(
    ws: Workspace, ort: Theorem, on_l: Theorem, on_r: Theorem, phi: Formula, psi: Formula
) -> Theorem:
    """From .. |- phi or psi, ..  and  S,phi |- P  and  T,psi |- Q
    conclude  .., (S-phi), (T-psi) |- .., P, Q."""
    step = ws.lor(on_l, on_r, phi, psi)
    return ws.cut(ort, step, Or(phi, psi))


def excluded_middle(ws: Workspace, phi: Formula) -> Theorem:
    """|- phi or not phi  (this calculus is classical)."""
    step = ws.rnot(ws.hypothesis(phi), phi)
    return ws.ror(step, phi, Not(phi))


def by_cases(ws: Workspace, on_pos: Theorem, on_neg: Theorem, phi: Formula) -> Theorem:
    return case_split(ws, excluded_middle(ws, phi), on_pos, on_neg, phi, Not(phi))


def contradiction(ws: Workspace, pos: Theorem, neg: Theorem, phi: Formula) -> Theorem:
    """From .. |- phi, .. and .. |- not phi, .. conclude the merged sequent
    without either."""
    step = ws.lnot(pos, phi)
    return ws.cut(neg, step, Not(phi))


def not_elim(ws: Workspace, t: Theorem, phi: Formula) -> Theorem:
    return ws.lnot(t, phi)


def forall_elim(ws: Workspace, t: Theorem, quantified: Formula, witness: Term) -> Theorem:
    """From .. |- all x. phi, .. conclude .. |- phi[x:=witness], .."""
    if not isinstance(quantified, Forall):
        raise RuleMismatch("forall_elim: not a universal formula")
    inst = subst_formula(ws.sig, quantified.body, {quantified.var: witness})
    step = ws.lall(ws.hypothesis(inst), quantified, witness)
    return ws.cut(t, step, quantified)


def forall_intro(ws: Workspace, t: Theorem, quantified: Formula, eigen: int) -> Theorem:
    return ws.rall(t, quantified, eigen)


def exists_intro(ws: Workspace, t: Theorem, quantified: Formula, witness: Term) -> Theorem:
    return ws.rex(t, quantified, witness)


def exists_elim(ws: Workspace, ext: Theorem, use: Theorem, quantified: Formula, eigen: int) -> Theorem:
    """From .. |- ex x. phi, .. and S, phi[x:=eigen] |- P (eigen fresh)
    conclude .., S |- .., P."""
    step = ws.lex(use, quantified, eigen)
    return ws.cut(ext, step, quantified)


def bounded_forall_elim(
    ws: Workspace, t: Theorem, mem: Theorem, quantified: Formula, witness: Term
) -> Theorem:
    """Eliminate  all x. x in T imp phi  at a witness whose membership theorem
    is supplied."""
    if not isinstance(quantified, Forall) or not isinstance(quantified.body, Imp):
        raise RuleMismatch("bounded_forall_elim: not a bounded universal")
    m = {quantified.var: witness}
    ante = subst_formula(ws.sig, quantified.body.left, m)
    cons = subst_formula(ws.sig, quantified.body.right, m)
    return mp(ws, forall_elim(ws, t, quantified, witness), mem, ante, cons)


# ---------------------------------------------------------------------------
# equality


def eq_sym(ws: Workspace, t: Theorem, a: Term, b: Term) -> Theorem:
    """From .. |- a = b, .. conclude .. |- b = a, .."""
    h = ws.sig.fresh_var("hole")
    ctx = ws.sig.eq(Var(h), a)
    step = ws.rsubst(ws.refl(a), ctx, h, a, b)
    return ws.cut(t, step, ws.sig.eq(a, b))


def eq_trans(ws: Workspace, t1: Theorem, t2: Theorem, a: Term, b: Term, c: Term) -> Theorem:
    """From .. |- a = b, .. and .. |- b = c, .. conclude .. |- a = c, .."""
    if a == b:
        return weaken(ws, t2, left=t1.sequent.left)
    if b == c:
        return weaken(ws, t1, left=t2.sequent.left)
    h = ws.sig.fresh_var("hole")
    ctx = ws.sig.eq(a, Var(h))
    step = ws.rsubst(ws.hypothesis(ws.sig.eq(a, b)), ctx, h, b, c)
    step = ws.cut(t1, step, ws.sig.eq(a, b))
    return ws.cut(t2, step, ws.sig.eq(b, c))


def subst_right(
    ws: Workspace, t: Theorem, eq: Theorem, ctx: Formula, hole: int, a: Term, b: Term
) -> Theorem:
    """Rewrite one right-side formula ctx[hole:=a] to ctx[hole:=b] using a
    proof of a = b."""
    step = ws.rsubst(t, ctx, hole, a, b)
    return ws.cut(eq, step, ws.sig.eq(a, b))


def subst_left(
    ws: Workspace, t: Theorem, eq: Theorem, ctx: Formula, hole: int, a: Term, b: Term
) -> Theorem:
    step = ws.lsubst(t, ctx, hole, a, b)
    return ws.cut(eq, step, ws.sig.eq(a, b))


def rw_right(ws: Workspace, eq: Theorem, t: Theorem, f: Formula, a: Term, b: Term) -> Theorem:
    """Rewrite the single right-side formula f of t from a to b, leaving the
    rest of the sequent alone. eq proves a = b (possibly under hypotheses,
    which are merged in)."""
    h = ws.sig.fresh_var("hole")
    ctx = replace_term(f, a, Var(h))
    return subst_right(ws, t, eq, ctx, h, a, b)


def rw_left(ws: Workspace, eq: Theorem, t: Theorem, f: Formula, a: Term, b: Term) -> Theorem:
    h = ws.sig.fresh_var("hole")
    ctx = replace_term(f, a, Var(h))
    return subst_left(ws, t, eq, ctx, h, a, b)


def apply_lemma(ws: Workspace, lemma: Theorem, mapping: Mapping[int, Term], *ants: Theorem) -> Theorem:
    """Instantiate a lemma of the form |- a1 imp (a2 imp (.. imp body)) and
    discharge the leading antecedents with the supplied theorems.

    The lemma must have an empty left side and exactly one formula on the
    right; unused trailing implications are left in place."""
    if lemma.sequent.left or len(lemma.sequent.right) != 1:
        raise RuleMismatch("apply_lemma: lemma must be |- with a single conclusion")
    t = ws.inst(lemma, dict(mapping)) if mapping else lemma
    (f,) = t.sequent.right
    for ant in ants:
        if not isinstance(f, Imp):
            raise RuleMismatch("apply_lemma: more antecedents than implications")
        t = mp(ws, t, ant, f.left, f.right)
        f = f.right
    return t


def rw(ws: Workspace, eq: Theorem, t: Theorem, a: Term, b: Term) -> Theorem:
    """Rewrite a to b throughout the sequent of t (all occurrences not blocked
    by a capturing binder), then discharge the equation with eq.

    No-op when a does not occur."""
    h = ws.sig.fresh_var("hole")
    changed = False
    eq_ab = ws.sig.eq(a, b)
    for f in sorted(t.sequent.left, key=hash):
        ctx = replace_term(f, a, Var(h))
        if h in ctx.free:
            t = ws.lsubst(t, ctx, h, a, b)
            changed = True
    for f in sorted(t.sequent.right, key=hash):
        ctx = replace_term(f, a, Var(h))
        if h in ctx.free:
            t = ws.rsubst(t, ctx, h, a, b)
            changed = True
    if changed:
        t = ws.cut(eq, t, eq_ab)
    return t
