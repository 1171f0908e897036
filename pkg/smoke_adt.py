"""Scratch exercise for the datatype compiler. Run: python3 smoke_adt.py"""

import time

from holset.kernel import Workspace, check_proof, export_proof
from holset.base import build_base
from holset.embedding import Embedder
from holset.tactics import HolTactics
from holset.adt import (
    SELF,
    AdtCompiler,
    AdtSpec,
    functor,
    induction_instance,
    parse_adt,
)
from holset.hol import BOOL, Fun, HComb, HConst, HVar, TyCon, TyVar
from holset.fol import Forall, Imp, Var
from holset.printer import print_formula, print_sequent
from holset import errors
from holset import toolkit as tk

ws = Workspace()
b = build_base(ws, policy="assume")
emb = Embedder(ws, b)
tac = HolTactics(emb)
s = ws.sig
adtc = AdtCompiler(tac)


def show(tag, thm):
    print(f"--- {tag}")
    print("   ", print_sequent(s, thm.sequent))
    return thm


def replay(tag, thm):
    proof = export_proof(thm)
    fresh = Workspace()
    out = check_proof(fresh, proof)
    final = out[max(out)]
    assert print_sequent(fresh.sig, final.sequent) == print_sequent(s, thm.sequent), tag
    print(f"  replay {tag}: {len(out)} steps ok")


# 1. a monomorphic list of booleans, spec built by hand
t0 = time.time()
listbool = AdtSpec("listbool", (), [("bnil", ()), ("bcons", (b.bool_t, SELF))])
fx = functor(b, listbool)
print("--- one-step membership for listbool")
print("   ", print_formula(s, fx.formula))
art = adtc.define(listbool)
print(f"[listbool compiled in {time.time() - t0:.1f}s]")

assert art.tags == {"bnil": 0, "bcons": 1}
show("carrier membership", art.member_iff)
bnil = art.constructor("bnil")
bcons = art.constructor("bcons")
show("bnil typing", bnil.typing)
show("bcons typing", bcons.typing)
assert not bnil.typing.sequent.left
assert len(bcons.typing.sequent.left) == 2

inj1 = dict(art.injectivity1)
assert inj1["bnil"] is None
show("bcons injective", inj1["bcons"])
show("bnil distinct from bcons", art.injectivity2[("bnil", "bcons")])

# taint should list exactly the admitted schema families plus the zf axioms
print("  taint:", sorted(set(a.split("/")[0] for a in bcons.typing.assumed)))

# 2. structural induction with a trivial predicate, premises discharged
lv = s.variable("l")
pred = s.eq(Var(lv), Var(lv))
ind = induction_instance(art, pred, lv)
show("induction instance", ind)
(conj,) = tuple(ind.sequent.left)


def prove_refl_premise(f):
    if isinstance(f, Forall):
        inner = prove_refl_premise(f.body)
        return ws.rall(inner, f, f.var)
    if isinstance(f, Imp):
        inner = prove_refl_premise(f.right)
        return tk.imp_intro(ws, inner, f.left, f.right)
    assert f.args[0] == f.args[1]
    return ws.refl(f.args[0])


parts = []
cur = conj
for _ in range(len(listbool.constructors) - 1):
    parts.append(cur.left)
    cur = cur.right
parts.append(cur)
proofs = [prove_refl_premise(p) for p in parts]
both = proofs[-1]
acc = parts[-1]
for k in range(len(parts) - 2, -1, -1):
    both = ws.rand(proofs[k], both, parts[k], acc)
    from holset.fol import And

    acc = And(parts[k], acc)
closed = ws.cut(both, ind, conj)
show("discharged induction", closed)
assert not closed.sequent.left

# 3. a polymorphic list via the declaration syntax
t0 = time.time()
art2 = adtc.define_text("adt list[T] = nil() | cons(T, Self)")
print(f"[list compiled in {time.time() - t0:.1f}s]")
show("cons typing", art2.constructor("cons").typing)

# idempotent re-definition returns the same artifacts
assert adtc.define_text("adt list[T] = nil() | cons(T, Self)") is art2

# registered with the embedding: prooftype sees the constructors
T = TyVar("T")
list_T = TyCon("list", (T,))
nilb = HConst("nil", list_T, {"T": BOOL})
consb = HConst("cons", Fun(T, Fun(list_T, list_T)), {"T": BOOL})
pvar = HVar("p", BOOL)
term = HComb(HComb(consb, pvar), nilb)
pt = tac.prooftype(term)
show("prooftype cons p nil", pt)
assert emb.embed_type(TyCon("list", (BOOL,))) == s.mkapp(art2.set_sym, b.bool_t)

# induction over the polymorphic list
ind2 = induction_instance(art2, s.eq(Var(lv), Var(lv)), lv)
show("list[T] induction", ind2)

# 4. a tree with two self arguments (exercises level alignment)
t0 = time.time()
art3 = adtc.define_text("adt tree = leaf() | node(Self, Self)")
print(f"[tree compiled in {time.time() - t0:.1f}s]")
show("node typing", art3.constructor("node").typing)
ind3 = induction_instance(art3, s.eq(Var(lv), Var(lv)), lv)
show("tree induction", ind3)

# 5. negatives
for text, exc in [
    ("adt w = s(Self)", errors.InvalidSort),
    ("adt w = a() | a()", errors.DuplicateName),
    ("adt w = mk(list[Self])", errors.InvalidSort),
    ("adt w = mk(nosuch)", errors.UnknownTypeConstructor),
    ("adt w = mk(list[T, T])", errors.ParseError),  # T unknown here
    ("adt w = mk(list)", errors.ArityError),
    ("adt w = mk", errors.ParseError),
    ("adt w = a() extra", errors.ParseError),
]:
    try:
        adtc.define_text(text)
        raise AssertionError(f"{text!r} must fail")
    except exc:
        pass
    except errors.UnknownTypeConstructor:
        # the [T, T] case trips on the unknown parameter first
        assert "T" in text

try:
    adtc.define_text("adt list[T] = nil() | cons(T, T)")
    raise AssertionError("conflicting re-definition must fail")
except errors.DuplicateAdt:
    pass

try:
    art.constructor("nosuch")
    raise AssertionError("unknown constructor lookup must fail")
except errors.UnknownSymbol:
    pass

# 6. replay a sample of everything through the checker
replay("bcons typing", bcons.typing)
replay("injectivity2", art.injectivity2[("bnil", "bcons")])
replay("closed induction", closed)
replay("prooftype", pt)

print("smoke_adt: all green")
