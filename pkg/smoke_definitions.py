"""Smoke: constant definitions, quantifier swap, closure uniqueness."""

from holset import hol
from holset.definitions import closure_exists_one, define_constant, quantifier_swap, unique_eq
from holset.embedding import Embedder
from holset.errors import DuplicateSymbol, IllTyped, OpenTerm
from holset.fol import Exists, Forall, Iff, Imp, Pred, Var
from holset.hol import BOOL, Bool, Fun, HAbs, HComb, HConst, HVar, TyVar, mk_eq
from holset.kernel import Workspace, check_proof, export_proof
from holset.printer import print_sequent
from holset.tactics import HolTactics

ws = Workspace()
emb = Embedder(ws)
tac = HolTactics(emb)
s = ws.sig

# --- standalone pieces ----------------------------------------------------

u = s.variable("u")
z = s.variable("z")
j0 = unique_eq(ws, z, emb.embed_type(BOOL))
assert not j0.sequent.left
print("unique_eq:", print_sequent(s, j0.sequent))

D = s.member(Var(u), emb.embed_type(BOOL))
S = s.eq(Var(z), Var(u))
sw = quantifier_swap(ws, u, D, z, S)
assert not sw.sequent.left
(swf,) = tuple(sw.sequent.right)
assert isinstance(swf, Imp) and isinstance(swf.right, Iff)
print("swap:", print_sequent(s, sw.sequent))

# --- the universal quantifier as a defined constant ------------------------

A = TyVar("A")
P = HVar("P", Fun(A, BOOL))
x = HVar("x", A)
T = HConst("T", BOOL, {})
t = HAbs(P, mk_eq(P, HAbs(x, T)))

bang = define_constant(tac, "!", t)
print("params:", bang.params)
assert bang.params == ("A",)
print("axiom:", print_sequent(s, bang.axiom.sequent))
print("def_eq:", print_sequent(s, bang.def_eq.sequent))
print("typing:", print_sequent(s, bang.typing.sequent))
print("definition:", hol.print_term(bang.definition.hol.concl))
print("fo:", print_sequent(s, bang.definition.fo.sequent))

assert not bang.typing.sequent.left
assert len(bang.def_eq.sequent.left) == 2  # both closure templates
assert len(bang.definition.fo.sequent.left) == 3  # nonempty A + two templates
assert "def/!" in bang.def_eq.assumed
assert any(a.startswith("admit/closure-exists") for a in bang.definition.fo.assumed)

# unique existence of the inner closure, on its own
inner = emb.lookup_lambda("lam1")
ceo = closure_exists_one(tac, inner)
assert not ceo.sequent.left
print("exone lam1:", print_sequent(s, ceo.sequent)[:120], "..")

# identical re-definition is idempotent, alpha counts as identical
Q = HVar("Q", Fun(A, BOOL))
y = HVar("y", A)
again = define_constant(tac, "!", HAbs(Q, mk_eq(Q, HAbs(y, T))))
assert again is bang

# different definiens on the same name fails
try:
    define_constant(tac, "!", HAbs(Q, mk_eq(Q, Q)))
    raise AssertionError("redefinition passed")
except DuplicateSymbol:
    pass

# open terms fail
try:
    define_constant(tac, "bad", HVar("v", BOOL))
    raise AssertionError("open definiens passed")
except OpenTerm:
    pass

# stray type variables fail
stray = mk_eq(HAbs(HVar("w", TyVar("B")), T), HAbs(HVar("w", TyVar("B")), T))
try:
    define_constant(tac, "bad2", stray)
    raise AssertionError("stray tyvar passed")
except IllTyped:
    pass

# the constant is usable downstream: typing at an instance, and rules over it
bool_bang = HConst("!", t.ty, {"A": Bool()})
pt = tac.prooftype(bool_bang)
assert not pt.sequent.left
print("inst typing:", print_sequent(s, pt.sequent))

flipped = tac.sym(bang.definition)
print("sym:", hol.print_term(flipped.hol.concl))

applied = tac.refl(HComb(bool_bang, HAbs(HVar("p", BOOL), T)))
print("applied refl:", hol.print_term(applied.hol.concl))

# --- replay through the independent checker --------------------------------

for label, thm in (
    ("swap", sw),
    ("def_eq", bang.def_eq),
    ("typing", bang.typing),
    ("definition", bang.definition.fo),
    ("applied", applied.fo),
):
    text = export_proof(thm)
    fresh = Workspace()
    out = check_proof(fresh, text)
    final = out[max(out)]
    assert print_sequent(fresh.sig, final.sequent) == print_sequent(s, thm.sequent), label
    print(f"replay {label}: ok ({len(out)} steps)")

print("smoke_definitions: all green")
