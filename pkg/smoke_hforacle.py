"""Scratch exercise for the finite evaluator. Run: python3 smoke_hforacle.py"""

from holset.kernel import Workspace
from holset.base import build_base
from holset.adt import SELF, AdtSpec
from holset.fol import Forall, Iff, Imp, Or, Var
from holset.hforacle import (
    BOOL,
    BOT,
    EMPTY,
    TOP,
    HfOracle,
    HfSet,
    as_numeral,
    numeral,
    opair,
    tagged,
    universe,
)
from holset import errors

ws = Workspace()
b = build_base(ws, policy="assume")
s = ws.sig
oracle = HfOracle(s)

# basic constructions
assert TOP == HfSet((EMPTY,))
assert oracle.eval_term(b.top_t) == TOP
assert oracle.eval_term(b.bool_t) == BOOL
assert oracle.eval_term(b.numeral(3)) == numeral(3)
assert as_numeral(numeral(4)) == 4 and as_numeral(TOP) == 1
assert as_numeral(opair(TOP, TOP)) is None

# the 4-element boolean function space and the equality indicator
arr = oracle.eval_term(b.arrow_t(b.bool_t, b.bool_t))
assert len(arr) == 4
assert oracle.eval_term(b.app2_t(b.eqfn_t(b.bool_t), b.top_t, b.top_t)) == TOP
assert oracle.eval_term(b.app2_t(b.eqfn_t(b.bool_t), b.top_t, b.bot_t)) == BOT

# app on a non-function or missing key defaults to empty
assert oracle.eval_term(b.app_t(b.bool_t, b.top_t)) == EMPTY

# infinite sets are rejected as terms but decidable as memberships
try:
    oracle.eval_term(b.nat_t)
    raise AssertionError("nat must be rejected")
except errors.Infinite:
    pass
assert oracle.eval_formula(s.member(b.numeral(2), b.nat_t), {}, universe(3))
# bool = {0, 1} is itself the numeral 2, so pick a real non-numeral
non_numeral = s.mkapp(ws.UPAIR, b.top_t, b.top_t)
assert not oracle.eval_formula(s.member(non_numeral, b.nat_t), {}, universe(3))

# rank budget
try:
    t = b.empty_t
    for _ in range(8):
        t = s.mkapp(ws.POW, t)
    oracle.eval_term(t)
    raise AssertionError("tower must exceed the rank budget")
except errors.RankBudgetExceeded:
    pass

# quantified base facts over a small universe
dom = universe(4)
vx, vy, vz = b.vx, b.vy, b.vz
upair_member = Forall(
    vz,
    Iff(
        s.member(Var(vz), s.mkapp(ws.UPAIR, Var(vx), Var(vy))),
        Or(s.eq(Var(vx), Var(vz)), s.eq(Var(vy), Var(vz))),
    ),
)
assert oracle.eval_formula(upair_member, {vx: TOP, vy: numeral(2)}, dom)

ext = Forall(
    vx,
    Forall(
        vy,
        Imp(
            Forall(vz, Iff(s.member(Var(vz), Var(vx)), s.member(Var(vz), Var(vy)))),
            s.eq(Var(vx), Var(vy)),
        ),
    ),
)
assert oracle.eval_formula(ext, {}, universe(3))

# the listbool golden value: f(2) is exactly {nil, cons(top, nil), cons(bot, nil)}
listbool = AdtSpec("listbool", (), [("bnil", ()), ("bcons", (b.bool_t, SELF))])
oracle.register_adt(listbool)
golden = HfSet(
    (
        numeral(0),
        tagged(1, [TOP, numeral(0)]),
        tagged(1, [BOT, numeral(0)]),
    )
)
assert oracle.adt_level("listbool", 2, {}) == golden
print("listbool f(2) =", oracle.adt_level("listbool", 2, {}).brace())

# monotone levels
lev1 = oracle.adt_level("listbool", 1, {})
assert lev1 == HfSet((numeral(0),))
assert lev1.elems <= oracle.adt_level("listbool", 2, {}).elems

# structural carrier membership, no compiled workspace needed
adt = oracle.adts["listbool"]
deep = tagged(1, [TOP, tagged(1, [BOT, numeral(0)])])
fake = tagged(1, [numeral(3), numeral(0)])  # head not a boolean
assert oracle._in_carrier(deep, adt, {})
assert not oracle._in_carrier(fake, adt, {})

print("smoke_hforacle: all green")
