"""Scratch exercise for the rule suite. Run: python3 smoke_tactics.py"""

import sys

from holset.kernel import Workspace
from holset.base import build_base
from holset.embedding import Embedder
from holset.tactics import HolTactics
from holset.hol import (
    BOOL,
    Bool,
    Fun,
    HAbs,
    HComb,
    HConst,
    HVar,
    TyVar,
    mk_eq,
    print_term,
)
from holset.printer import print_formula, print_sequent
from holset import errors

ws = Workspace()
base = build_base(ws, policy="assume")
emb = Embedder(ws, base)
tac = HolTactics(emb)
s = ws.sig

X, Y, A = TyVar("X"), TyVar("Y"), TyVar("A")
x = HVar("x", X)
y = HVar("y", Y)
f = HVar("f", Fun(Y, X))
g = HVar("g", Fun(X, Y))
p = HVar("p", Bool())
q = HVar("q", Bool())


def show(tag, hth):
    print(f"--- {tag}")
    print("  hol :", ", ".join(sorted(print_term(h) for h in hth.hol.hyps)), "|-", print_term(hth.hol.concl))
    print("  fo  :", print_sequent(s, hth.fo.sequent))
    assert hth.fo.sequent == hth.embedded.sequent
    return hth


# 1. REFL on a variable
r1 = show("refl x", tac.refl(x))
assert len(r1.fo.sequent.left) == 2  # not(X=empty), x in X

# 2. REFL on an abstraction (context carries the closure definition)
r2 = show("refl (\\x.x)", tac.refl(HAbs(x, x)))

# 3. ASSUME
a1 = show("assume p", tac.assume(p))
try:
    tac.assume(x)
    raise AssertionError("assume of a non-boolean must fail")
except errors.NonBooleanConclusion:
    pass

# 4. BETA: |- (\x. y) x = y
b1 = show("beta (\\x.y) x", tac.beta(x, y))
# 5. BETA identity
b2 = show("beta (\\x.x) x", tac.beta(x, x))

# 6. SYM + TRANS with CLEAN dropping the closure def and x's typing:
#    sym(beta) : |- y = (\x.y) x ; trans with beta : |- y = y
t1 = show("trans(sym(beta), beta)", tac.trans(tac.sym(b1), b1))
got = sorted(print_formula(s, f_) for f_ in t1.fo.sequent.left)
print("  left:", got)
assert len(t1.fo.sequent.left) == 2  # not(Y=empty), y in Y

# 7. ETA: |- (\x. g x) = g   (g : X -> Y)
e1 = show("eta x g", tac.eta(x, g))
try:
    tac.eta(x, HComb(f, HVar("x", Y)))  # ill-typed: domain mismatch
    raise AssertionError("eta domain mismatch must fail")
except errors.IllTyped:
    pass
try:
    tac.eta(x, HAbs(HVar("z", X), x))  # x free in body, type X => X
    raise AssertionError("eta with free binder must fail")
except errors.FreeVariableClash:
    pass

# 8. ABS: from |- x = x conclude |- (\x.x) = (\x.x)
ab1 = show("abs x (refl x)", tac.abs(x, tac.refl(x)))
# with a captured variable: from |- y = y conclude |- (\x.y) = (\x.y)
ab2 = show("abs x (refl y)", tac.abs(x, tac.refl(y)))
# side condition: x free in a hypothesis
try:
    tac.abs(p, tac.assume(p))
    raise AssertionError("abs with binder free in hypotheses must fail")
except errors.FreeVariableClash:
    pass

# 9. MK_COMB: from |- g = g and |- x = x conclude |- g x = g x
m1 = show("mk_comb(refl g, refl x)", tac.mk_comb(tac.refl(g), tac.refl(x)))
# nontrivial argument equation: |- f ((\x.y) x) = f y ... via mk_comb(refl f, beta)
m2 = show("mk_comb(refl f, beta)", tac.mk_comb(tac.refl(f), b1))
try:
    tac.mk_comb(tac.refl(x), tac.refl(x))
    raise AssertionError("mk_comb on a non-function must fail")
except errors.IllTyped:
    pass

# 10. DEDUCT_ANTISYM_RULE: assume p twice -> |- p = p
d1 = show("deduct(assume p, assume p)", tac.deduct_antisym_rule(tac.assume(p), tac.assume(p)))
assert not d1.hol.hyps
# distinct: p, q |- p = q
d2 = show("deduct(assume p, assume q)", tac.deduct_antisym_rule(tac.assume(p), tac.assume(q)))
assert len(d2.hol.hyps) == 2

# 11. EQ_MP: from |- p = p (d1) and p |- p (assume) conclude p |- p
q1 = show("eq_mp(d1, assume p)", tac.eq_mp(d1, tac.assume(p)))
try:
    tac.eq_mp(d2, tac.assume(q))
    raise AssertionError("eq_mp premise mismatch must fail")
except errors.NotAlphaEquivalent:
    pass

# 12. ALPHA_EQUIVALENCE / ALPHA_CONV
al1 = show("alpha_equivalence", tac.alpha_equivalence(HAbs(x, x), HAbs(HVar("w", X), HVar("w", X))))
al2 = show("alpha_conv w (\\x.x)", tac.alpha_conv(HVar("w", X), HAbs(x, x)))
al3 = show("alpha_conv w (\\x.y)", tac.alpha_conv(HVar("w", X), HAbs(x, y)))
try:
    tac.alpha_conv(y, HAbs(x, HComb(g, x)))
    raise AssertionError("alpha_conv type clash must fail")
except errors.IllTyped:
    pass

# 13. TRANS via alpha-equivalent middles (\x.x vs \w.w)
mid1 = tac.refl(HAbs(x, x))
# build |- (\w.w) = (\x.x) then trans(refl(\x.x) ... with middle alpha-variant
alpha_thm = tac.alpha_equivalence(HAbs(HVar("w", X), HVar("w", X)), HAbs(x, x))
t2 = show("trans(al1, alpha_thm)", tac.trans(al1, alpha_thm))

# 14. INST: the worked pipeline.
#    th1 = beta x (p = p) : |- (\x:A. p=p) x = (p=p)
xA = HVar("x", A)
yA = HVar("y", A)
pp = mk_eq(p, p)
th1 = show("beta x:A (p=p)", tac.beta(xA, pp))
#    th2 = inst(th1, x := y) : |- (\x. p=p) y = (p=p)
th2 = show("inst th1 [x:=y]", tac.inst(th1, {xA: yA}))
#    th3 = eq_mp(sym(th2), refl p) : |- (\x. p=p) y
th3 = show("S", tac.eq_mp(tac.sym(th2), tac.refl(p)))
print("  S fo:", print_sequent(s, th3.fo.sequent))
#    th4 = inst(th3, p := f2 p) with f2 : bool -> bool
f2 = HVar("f", Fun(Bool(), Bool()))
th4 = show("S[p := f p]", tac.inst(th3, {p: HComb(f2, p)}))

# 15. INST hitting a hypothesis as well: p |- p instantiated
q2 = show("inst(assume p, p := f p)", tac.inst(tac.assume(p), {p: HComb(f2, p)}))

# 16. INST_TYPE
i1 = show("inst_type(refl xA, A := bool)", tac.inst_type(tac.refl(xA), {"A": Bool()}))
i2 = show("inst_type(refl (\\x:A.y:A), A := X=>Y)", tac.inst_type(tac.refl(HAbs(xA, yA)), {"A": Fun(X, Y)}))
i3 = show("inst_type identity", tac.inst_type(tac.refl(xA), {}))

# 17. ProofType displayed example: (\x:A. y) z with y z : A
zA = HVar("z", A)
pt = tac.prooftype(HComb(HAbs(xA, yA), zA))
print("--- prooftype ((\\x.y) z)")
print("  fo  :", print_sequent(s, pt.sequent))

# 18. negative: trans with unrelated middles
try:
    tac.trans(b1, b1)
    raise AssertionError("trans middle mismatch must fail")
except errors.NotAlphaEquivalent:
    pass

# 19. inst with a non-variable key / ill-typed value
try:
    tac.inst(th3, {HComb(f2, p): p})
    raise AssertionError("inst non-variable key must fail")
except errors.IllTyped:
    pass
try:
    tac.inst(th3, {p: xA})
    raise AssertionError("inst ill-typed value must fail")
except errors.IllTyped:
    pass

print()
print("replaying every theorem through the checker ...")
from holset.kernel import check_proof, export_proof
from holset.printer import print_sequent as _ps

for tag, th in [("t1", t1), ("e1", e1), ("ab2", ab2), ("m2", m2), ("d2", d2), ("th4", th4), ("i2", i2)]:
    proof = export_proof(th.fo)
    fresh = Workspace()
    out = check_proof(fresh, proof)
    final = out[max(out)]
    assert _ps(fresh.sig, final.sequent) == _ps(s, th.fo.sequent), tag
    print(f"  {tag}: {len(out)} steps ok ({len(proof)} bytes)")

print("smoke_tactics: all green")
