"""The trusted proof kernel: sequent calculus over ZF set theory.

Everything outside this module is untrusted search code. A `Theorem` can only
be minted by the rule methods of a `Workspace`; each theorem records

* its sequent,
* the set of assumption tags it depends on (``zf/*`` axiom uses, ``def/*`` and
  ``defp/*`` defining axioms, ``admit/*`` admitted lemmas and schema
  instances), and
* full provenance (rule tag, premise theorems, rule parameters), enough to
  serialize the derivation DAG to a text file and replay it on a fresh
  workspace.

Rules never mutate their premises; sequents are pairs of formula sets with
alpha-equivalence as formula identity, so the "is this formula present"
side conditions are stable under bound-variable renaming.
"""

from __future__ import annotations

import urllib.parse
from collections import Counter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    ArityError,
    CheckFailure,
    DuplicateName,
    DuplicateSymbol,
    ForwardReference,
    JustificationShape,
    KernelError,
    ParseError,
    RuleMismatch,
    SchemaError,
    UnknownAxiom,
)
from .fol import (
    VAR,
    And,
    App,
    Exists,
    Forall,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Pred,
    Sequent,
    Signature,
    Term,
    Var,
    subst_formula,
)
from . import printer

_TOKEN = object()

CLOSED_AXIOMS = (
    "empty-set",
    "extensionality",
    "subset",
    "pair",
    "union",
    "power-set",
    "foundation",
    "infinity",
)


class Theorem:
    """A kernel-certified sequent. Instances are unforgeable: the constructor
    demands a module-private token, so only Workspace rule methods mint them."""

    __slots__ = ("workspace", "sequent", "assumed", "tag", "prems", "params", "seqno")

    def __init__(self, token, workspace, sequent, assumed, tag, prems, params, seqno):
        if token is not _TOKEN:
            raise KernelError("theorems can only be minted by kernel rules")
        self.workspace = workspace
        self.sequent = sequent
        self.assumed = assumed
        self.tag = tag
        self.prems = prems
        self.params = params
        self.seqno = seqno

    def __repr__(self) -> str:
        return f"<Theorem #{self.seqno} {len(self.sequent.left)}|-{len(self.sequent.right)} {self.tag}>"


class Workspace:
    """ZF signature, axiom access, extension by definition, and the rules."""

    def __init__(self) -> None:
        self.sig = Signature()
        s = self.sig
        self.EMPTY = s.function("empty", 0)
        self.UPAIR = s.function("upair", 2)
        self.UNION = s.function("union", 1)
        self.POW = s.function("pow", 1)
        self.SUB = s.predicate("sub", 2)
        self.steps = 0
        self.by_rule: Counter = Counter()
        self._axioms: Dict[str, Theorem] = {}
        self.definitions: Dict[str, tuple] = {}
        self.predicate_definitions: Dict[str, tuple] = {}
        self.admitted: Dict[str, dict] = {}
        # scratch space for higher layers (registries, lemma caches)
        self.ext: Dict[str, object] = {}

    # ------------------------------------------------------------------
    # internals

    def _mk(self, sequent: Sequent, assumed: frozenset, tag: str, prems: tuple, params: tuple) -> Theorem:
        self.steps += 1
        self.by_rule[tag] += 1
        return Theorem(_TOKEN, self, sequent, assumed, tag, prems, params, self.steps)

    def _own(self, *thms: Theorem) -> frozenset:
        assumed: frozenset = frozenset()
        for t in thms:
            if not isinstance(t, Theorem) or t.workspace is not self:
                raise RuleMismatch("premise is not a theorem of this workspace")
            assumed |= t.assumed
        return assumed

    def _fml(self, *fs) -> None:
        for f in fs:
            if not isinstance(f, Formula):
                raise RuleMismatch(f"expected a formula, got {type(f).__name__}")

    def _term(self, *ts) -> None:
        for t in ts:
            if not isinstance(t, Term):
                raise RuleMismatch(f"expected a term, got {type(t).__name__}")

    def _varsym(self, v) -> int:
        if not isinstance(v, int) or v < 0 or v >= len(self.sig) or self.sig.kind_of(v) != VAR:
            raise RuleMismatch("expected a variable symbol")
        return v

    # ------------------------------------------------------------------
    # structural rules

    def hypothesis(self, phi: Formula) -> Theorem:
        self._fml(phi)
        return self._mk(Sequent((phi,), (phi,)), frozenset(), "hypothesis", (), (phi,))

    def cut(self, a: Theorem, b: Theorem, phi: Formula) -> Theorem:
        assumed = self._own(a, b)
        self._fml(phi)
        if phi not in a.sequent.right:
            raise RuleMismatch("cut: pivot missing on the right of the first premise")
        if phi not in b.sequent.left:
            raise RuleMismatch("cut: pivot missing on the left of the second premise")
        seq = Sequent(
            a.sequent.left | (b.sequent.left - {phi}),
            (a.sequent.right - {phi}) | b.sequent.right,
        )
        return self._mk(seq, assumed, "cut", (a, b), (phi,))

    def lweak(self, a: Theorem, phi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi)
        seq = Sequent(a.sequent.left | {phi}, a.sequent.right)
        return self._mk(seq, assumed, "lweak", (a,), (phi,))

    def rweak(self, a: Theorem, phi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi)
        seq = Sequent(a.sequent.left, a.sequent.right | {phi})
        return self._mk(seq, assumed, "rweak", (a,), (phi,))

    # ------------------------------------------------------------------
    # propositional rules

    def land(self, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi, psi)
        if phi not in a.sequent.left and psi not in a.sequent.left:
            raise RuleMismatch("land: neither conjunct present on the left")
        seq = Sequent((a.sequent.left - {phi, psi}) | {And(phi, psi)}, a.sequent.right)
        return self._mk(seq, assumed, "land", (a,), (phi, psi))

    def rand(self, a: Theorem, b: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a, b)
        self._fml(phi, psi)
        if phi not in a.sequent.right:
            raise RuleMismatch("rand: left conjunct missing on the right of the first premise")
        if psi not in b.sequent.right:
            raise RuleMismatch("rand: right conjunct missing on the right of the second premise")
        seq = Sequent(
            a.sequent.left | b.sequent.left,
            (a.sequent.right - {phi}) | (b.sequent.right - {psi}) | {And(phi, psi)},
        )
        return self._mk(seq, assumed, "rand", (a, b), (phi, psi))

    def lor(self, a: Theorem, b: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a, b)
        self._fml(phi, psi)
        if phi not in a.sequent.left:
            raise RuleMismatch("lor: left disjunct missing on the left of the first premise")
        if psi not in b.sequent.left:
            raise RuleMismatch("lor: right disjunct missing on the left of the second premise")
        seq = Sequent(
            (a.sequent.left - {phi}) | (b.sequent.left - {psi}) | {Or(phi, psi)},
            a.sequent.right | b.sequent.right,
        )
        return self._mk(seq, assumed, "lor", (a, b), (phi, psi))

    def ror(self, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi, psi)
        if phi not in a.sequent.right and psi not in a.sequent.right:
            raise RuleMismatch("ror: neither disjunct present on the right")
        seq = Sequent(a.sequent.left, (a.sequent.right - {phi, psi}) | {Or(phi, psi)})
        return self._mk(seq, assumed, "ror", (a,), (phi, psi))

    def lnot(self, a: Theorem, phi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi)
        if phi not in a.sequent.right:
            raise RuleMismatch("lnot: formula missing on the right")
        seq = Sequent(a.sequent.left | {Not(phi)}, a.sequent.right - {phi})
        return self._mk(seq, assumed, "lnot", (a,), (phi,))

    def rnot(self, a: Theorem, phi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi)
        if phi not in a.sequent.left:
            raise RuleMismatch("rnot: formula missing on the left")
        seq = Sequent(a.sequent.left - {phi}, a.sequent.right | {Not(phi)})
        return self._mk(seq, assumed, "rnot", (a,), (phi,))

    def limp(self, a: Theorem, b: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a, b)
        self._fml(phi, psi)
        if phi not in a.sequent.right:
            raise RuleMismatch("limp: antecedent missing on the right of the first premise")
        if psi not in b.sequent.left:
            raise RuleMismatch("limp: consequent missing on the left of the second premise")
        seq = Sequent(
            a.sequent.left | (b.sequent.left - {psi}) | {Imp(phi, psi)},
            (a.sequent.right - {phi}) | b.sequent.right,
        )
        return self._mk(seq, assumed, "limp", (a, b), (phi, psi))

    def rimp(self, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi, psi)
        if phi not in a.sequent.left:
            raise RuleMismatch("rimp: antecedent missing on the left")
        if psi not in a.sequent.right:
            raise RuleMismatch("rimp: consequent missing on the right")
        seq = Sequent(a.sequent.left - {phi}, (a.sequent.right - {psi}) | {Imp(phi, psi)})
        return self._mk(seq, assumed, "rimp", (a,), (phi, psi))

    def liff(self, a: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a)
        self._fml(phi, psi)
        fwd, bwd = Imp(phi, psi), Imp(psi, phi)
        if fwd not in a.sequent.left and bwd not in a.sequent.left:
            raise RuleMismatch("liff: neither direction present on the left")
        seq = Sequent((a.sequent.left - {fwd, bwd}) | {Iff(phi, psi)}, a.sequent.right)
        return self._mk(seq, assumed, "liff", (a,), (phi, psi))

    def riff(self, a: Theorem, b: Theorem, phi: Formula, psi: Formula) -> Theorem:
        assumed = self._own(a, b)
        self._fml(phi, psi)
        fwd, bwd = Imp(phi, psi), Imp(psi, phi)
        if fwd not in a.sequent.right:
            raise RuleMismatch("riff: forward implication missing in the first premise")
        if bwd not in b.sequent.right:
            raise RuleMismatch("riff: backward implication missing in the second premise")
        seq = Sequent(
            a.sequent.left | b.sequent.left,
            (a.sequent.right - {fwd}) | (b.sequent.right - {bwd}) | {Iff(phi, psi)},
        )
        return self._mk(seq, assumed, "riff", (a, b), (phi, psi))

    # ------------------------------------------------------------------
    # quantifier rules

    def lall(self, a: Theorem, quantified: Formula, witness: Term) -> Theorem:
        assumed = self._own(a)
        self._term(witness)
        if not isinstance(quantified, Forall):
            raise RuleMismatch("lall: parameter must be a universal formula")
        inst = subst_formula(self.sig, quantified.body, {quantified.var: witness})
        if inst not in a.sequent.left:
            raise RuleMismatch("lall: instance missing on the left")
        seq = Sequent((a.sequent.left - {inst}) | {quantified}, a.sequent.right)
        return self._mk(seq, assumed, "lall", (a,), (quantified, witness))

    def rall(self, a: Theorem, quantified: Formula, eigen: int) -> Theorem:
        assumed = self._own(a)
        eigen = self._varsym(eigen)
        if not isinstance(quantified, Forall):
            raise RuleMismatch("rall: parameter must be a universal formula")
        inst = subst_formula(self.sig, quantified.body, {quantified.var: Var(eigen)})
        if inst not in a.sequent.right:
            raise RuleMismatch("rall: instance missing on the right")
        seq = Sequent(a.sequent.left, (a.sequent.right - {inst}) | {quantified})
        if eigen in seq.free:
            raise RuleMismatch("rall: eigenvariable occurs free in the conclusion")
        return self._mk(seq, assumed, "rall", (a,), (quantified, eigen))

    def lex(self, a: Theorem, quantified: Formula, eigen: int) -> Theorem:
        assumed = self._own(a)
        eigen = self._varsym(eigen)
        if not isinstance(quantified, Exists):
            raise RuleMismatch("lex: parameter must be an existential formula")
        inst = subst_formula(self.sig, quantified.body, {quantified.var: Var(eigen)})
        if inst not in a.sequent.left:
            raise RuleMismatch("lex: instance missing on the left")
        seq = Sequent((a.sequent.left - {inst}) | {quantified}, a.sequent.right)
        if eigen in seq.free:
            raise RuleMismatch("lex: eigenvariable occurs free in the conclusion")
        return self._mk(seq, assumed, "lex", (a,), (quantified, eigen))

    def rex(self, a: Theorem, quantified: Formula, witness: Term) -> Theorem:
        assumed = self._own(a)
        self._term(witness)
        if not isinstance(quantified, Exists):
            raise RuleMismatch("rex: parameter must be an existential formula")
        inst = subst_formula(self.sig, quantified.body, {quantified.var: witness})
        if inst not in a.sequent.right:
            raise RuleMismatch("rex: instance missing on the right")
        seq = Sequent(a.sequent.left, (a.sequent.right - {inst}) | {quantified})
        return self._mk(seq, assumed, "rex", (a,), (quantified, witness))

    # ------------------------------------------------------------------
    # equality rules

    def refl(self, t: Term) -> Theorem:
        self._term(t)
        return self._mk(Sequent((), (self.sig.eq(t, t),)), frozenset(), "refl", (), (t,))

    def lsubst(self, a: Theorem, ctx: Formula, hole: int, t: Term, u: Term) -> Theorem:
        assumed = self._own(a)
        self._fml(ctx)
        self._term(t, u)
        hole = self._varsym(hole)
        before = subst_formula(self.sig, ctx, {hole: t})
        after = subst_formula(self.sig, ctx, {hole: u})
        if before not in a.sequent.left:
            raise RuleMismatch("lsubst: instantiated context missing on the left")
        seq = Sequent(
            (a.sequent.left - {before}) | {self.sig.eq(t, u), after},
            a.sequent.right,
        )
        return self._mk(seq, assumed, "lsubst", (a,), (ctx, hole, t, u))

    def rsubst(self, a: Theorem, ctx: Formula, hole: int, t: Term, u: Term) -> Theorem:
        assumed = self._own(a)
        self._fml(ctx)
        self._term(t, u)
        hole = self._varsym(hole)
        before = subst_formula(self.sig, ctx, {hole: t})
        after = subst_formula(self.sig, ctx, {hole: u})
        if before not in a.sequent.right:
            raise RuleMismatch("rsubst: instantiated context missing on the right")
        seq = Sequent(
            a.sequent.left | {self.sig.eq(t, u)},
            (a.sequent.right - {before}) | {after},
        )
        return self._mk(seq, assumed, "rsubst", (a,), (ctx, hole, t, u))

    # ------------------------------------------------------------------
    # instantiation

    def inst(self, a: Theorem, mapping: Mapping[int, Term]) -> Theorem:
        assumed = self._own(a)
        m = {}
        for k, v in mapping.items():
            self._term(v)
            m[self._varsym(k)] = v
        seq = Sequent(
            (subst_formula(self.sig, f, m) for f in a.sequent.left),
            (subst_formula(self.sig, f, m) for f in a.sequent.right),
        )
        items = tuple(sorted(m.items(), key=lambda kv: self.sig.name_of(kv[0])))
        return self._mk(seq, assumed, "inst", (a,), (items,))

    # ------------------------------------------------------------------
    # ZF axioms

    def axiom(self, name: str) -> Theorem:
        got = self._axioms.get(name)
        if got is not None:
            return got
        if name not in CLOSED_AXIOMS:
            raise UnknownAxiom(f"no closed axiom named {name!r}")
        s = self.sig
        x, y, z = Var(s.variable("x")), Var(s.variable("y")), Var(s.variable("z"))
        empty = s.mkapp(self.EMPTY)
        if name == "empty-set":
            f: Formula = Forall(x.sym, Not(s.member(x, empty)))
        elif name == "extensionality":
            f = Forall(
                x.sym,
                Forall(
                    y.sym,
                    Iff(
                        Forall(z.sym, Iff(s.member(z, x), s.member(z, y))),
                        s.eq(x, y),
                    ),
                ),
            )
        elif name == "subset":
            f = Forall(
                x.sym,
                Forall(
                    y.sym,
                    Iff(
                        s.pred(self.SUB, x, y),
                        Forall(z.sym, Imp(s.member(z, x), s.member(z, y))),
                    ),
                ),
            )
        elif name == "pair":
            f = Forall(
                x.sym,
                Forall(
                    y.sym,
                    Forall(
                        z.sym,
                        Iff(
                            s.member(z, s.mkapp(self.UPAIR, x, y)),
                            Or(s.eq(x, z), s.eq(y, z)),
                        ),
                    ),
                ),
            )
        elif name == "union":
            f = Forall(
                x.sym,
                Forall(
                    z.sym,
                    Iff(
                        s.member(z, s.mkapp(self.UNION, x)),
                        Exists(y.sym, And(s.member(y, x), s.member(z, y))),
                    ),
                ),
            )
        elif name == "power-set":
            f = Forall(
                x.sym,
                Forall(
                    y.sym,
                    Iff(s.member(x, s.mkapp(self.POW, y)), s.pred(self.SUB, x, y)),
                ),
            )
        elif name == "foundation":
            f = Forall(
                x.sym,
                Imp(
                    Not(s.eq(x, empty)),
                    Exists(
                        y.sym,
                        And(
                            s.member(y, x),
                            Forall(z.sym, Imp(s.member(z, y), Not(s.member(z, x)))),
                        ),
                    ),
                ),
            )
        else:  # infinity
            succ_y = s.mkapp(self.UNION, s.mkapp(self.UPAIR, y, s.mkapp(self.UPAIR, y, y)))
            f = Exists(
                x.sym,
                And(
                    s.member(empty, x),
                    Forall(y.sym, Imp(s.member(y, x), s.member(succ_y, x))),
                ),
            )
        thm = self._mk(Sequent((), (f,)), frozenset((f"zf/{name}",)), f"ax:{name}", (), ())
        self._axioms[name] = thm
        return thm

    def comprehension(self, x: int, z: int, phi: Formula, fresh: Optional[int] = None) -> Theorem:
        """One instance of the separation scheme:
        |- ex y. all x. x in y iff (x in z and phi)."""
        s = self.sig
        x = self._varsym(x)
        z = self._varsym(z)
        self._fml(phi)
        if x == z:
            raise SchemaError("comprehension: bound and source variables must differ")
        y = self._varsym(fresh) if fresh is not None else s.fresh_var("y")
        if y == x or y == z or y in phi.free:
            raise SchemaError("comprehension: witness variable must be fresh")
        f = Exists(
            y,
            Forall(x, Iff(s.member(Var(x), Var(y)), And(s.member(Var(x), Var(z)), phi))),
        )
        return self._mk(
            Sequent((), (f,)),
            frozenset(("zf/comprehension",)),
            "ax:comprehension",
            (),
            (x, z, phi, y),
        )

    def replacement(
        self,
        x: int,
        y: int,
        a: int,
        psi: Formula,
        fresh_out: Optional[int] = None,
        fresh_aux: Optional[int] = None,
    ) -> Theorem:
        """One instance of the replacement scheme for the class function
        psi(x, y), with source set variable a:

        |- (all x. x in a imp all y. all y'. psi and psi[y:=y'] imp y = y')
           imp ex b. all y. y in b iff ex x. x in a and psi
        """
        s = self.sig
        x = self._varsym(x)
        y = self._varsym(y)
        a = self._varsym(a)
        self._fml(psi)
        if len({x, y, a}) != 3:
            raise SchemaError("replacement: x, y and the source variable must be distinct")
        b = self._varsym(fresh_out) if fresh_out is not None else s.fresh_var("b")
        y2 = self._varsym(fresh_aux) if fresh_aux is not None else s.fresh_var(s.name_of(y))
        if len({x, y, a, b, y2}) != 5:
            raise SchemaError("replacement: witness variables must be fresh")
        if b in psi.free or y2 in psi.free:
            raise SchemaError("replacement: witness variables must not occur in psi")
        psi2 = subst_formula(s, psi, {y: Var(y2)})
        functional = Forall(
            x,
            Imp(
                s.member(Var(x), Var(a)),
                Forall(y, Forall(y2, Imp(And(psi, psi2), s.eq(Var(y), Var(y2))))),
            ),
        )
        image = Exists(
            b,
            Forall(
                y,
                Iff(
                    s.member(Var(y), Var(b)),
                    Exists(x, And(s.member(Var(x), Var(a)), psi)),
                ),
            ),
        )
        f = Imp(functional, image)
        return self._mk(
            Sequent((), (f,)),
            frozenset(("zf/replacement",)),
            "ax:replacement",
            (),
            (x, y, a, psi, b, y2),
        )

    # ------------------------------------------------------------------
    # extension by definition

    def define_symbol(
        self,
        name: str,
        params: Sequence[int],
        y: int,
        phi: Formula,
        justification: Theorem,
    ) -> Tuple[int, Theorem]:
        """Introduce a function symbol for the y such that phi.

        The justification must certify unique existence with the parameters
        universally quantified:  |- all p1 .. all pk. exone y. phi.
        Returns the new symbol and the defining axiom
        |- all y. y = f(p1, .., pk) iff phi  (parameters free).
        """
        s = self.sig
        params = tuple(self._varsym(p) for p in params)
        y = self._varsym(y)
        if len(set(params)) != len(params) or y in params:
            raise SchemaError("definition: parameters and target variable must be distinct")
        self._fml(phi)
        if not phi.free <= (set(params) | {y}):
            extra = sorted(s.name_of(v) for v in phi.free - set(params) - {y})
            raise SchemaError(f"definition: free variables not among parameters: {extra}")
        assumed = self._own(justification)
        expected: Formula = s.exists_one(y, phi)
        for p in reversed(params):
            expected = Forall(p, expected)
        if justification.sequent != Sequent((), (expected,)):
            raise JustificationShape(
                f"definition of {name!r}: justification must be the closed "
                "unique-existence statement for the defining property"
            )
        prior = self.definitions.get(name)
        if prior is not None:
            psym, pparams, py, pphi, pjust, paxiom = prior
            # Identical re-definition is idempotent (needed for proof replay);
            # anything else is an error.
            if pparams == params and py == y and pphi == phi:
                return psym, paxiom
            raise DuplicateSymbol(f"symbol {name!r} is already defined")
        fsym = s.fresh_function(name, len(params))
        ax = Forall(
            y,
            Iff(s.eq(Var(y), s.mkapp(fsym, *[Var(p) for p in params])), phi),
        )
        thm = self._mk(
            Sequent((), (ax,)),
            assumed | frozenset((f"def/{name}",)),
            f"def:{name}",
            (justification,),
            (params, y, phi),
        )
        self.definitions[name] = (fsym, params, y, phi, justification, thm)
        return fsym, thm

    def define_predicate(self, name: str, params: Sequence[int], phi: Formula) -> Tuple[int, Theorem]:
        """Introduce a predicate abbreviation: |- P(p1, .., pk) iff phi."""
        s = self.sig
        params = tuple(self._varsym(p) for p in params)
        if len(set(params)) != len(params):
            raise SchemaError("predicate definition: parameters must be distinct")
        self._fml(phi)
        if not phi.free <= set(params):
            extra = sorted(s.name_of(v) for v in phi.free - set(params))
            raise SchemaError(f"predicate definition: free variables not among parameters: {extra}")
        prior = self.predicate_definitions.get(name)
        if prior is not None:
            psym, pparams, pphi, paxiom = prior
            if pparams == params and pphi == phi:
                return psym, paxiom
            raise DuplicateSymbol(f"predicate {name!r} is already defined")
        if self.sig.lookup_predicate(name) is not None or self.sig.lookup_function(name) is not None:
            raise DuplicateSymbol(f"symbol {name!r} already exists")
        psym = s.predicate(name, len(params))
        ax = Iff(s.pred(psym, *[Var(p) for p in params]), phi)
        thm = self._mk(
            Sequent((), (ax,)),
            frozenset((f"defp/{name}",)),
            f"defp:{name}",
            (),
            (params, phi),
        )
        self.predicate_definitions[name] = (psym, params, phi, thm)
        return psym, thm

    # ------------------------------------------------------------------
    # admitted lemmas

    def admit_lemma(self, name: str, sequent: Sequent) -> Theorem:
        if ":" in name or not name:
            raise SchemaError(f"bad admitted-lemma name: {name!r}")
        if not isinstance(sequent, Sequent):
            raise RuleMismatch("admit_lemma expects a sequent")
        prior = self.admitted.get(name)
        if prior is not None:
            if prior["kind"] == "lemma" and prior["sequent"] == sequent:
                return prior["theorem"]
            raise DuplicateName(f"admitted name {name!r} already used for a different statement")
        thm = self._mk(sequent, frozenset((f"admit/{name}",)), f"admit:{name}", (), (sequent,))
        self.admitted[name] = {
            "kind": "lemma",
            "sequent": sequent,
            "theorem": thm,
            "empty_right": not sequent.right,
        }
        return thm

    def admit_schema_instance(self, family: str, key: str, sequent: Sequent) -> Theorem:
        if ":" in family or not family:
            raise SchemaError(f"bad admitted-family name: {family!r}")
        if not isinstance(sequent, Sequent):
            raise RuleMismatch("admit_schema_instance expects a sequent")
        fam = self.admitted.setdefault(
            f"{family}", {"kind": "family", "instances": {}, "empty_right": False}
        )
        if fam["kind"] != "family":
            raise DuplicateName(f"admitted name {family!r} already used for a plain lemma")
        prior = fam["instances"].get(key)
        if prior is not None:
            if prior["sequent"] == sequent:
                return prior["theorem"]
            raise DuplicateName(
                f"admitted instance {family}:{key} already used for a different statement"
            )
        thm = self._mk(
            sequent, frozenset((f"admit/{family}",)), f"admit:{family}", (), (key, sequent)
        )
        fam["instances"][key] = {
            "sequent": sequent,
            "theorem": thm,
            "empty_right": not sequent.right,
        }
        if not sequent.right:
            fam["empty_right"] = True
        return thm

    def admitted_tags(self) -> frozenset:
        out = set()
        for name in self.admitted:
            out.add(f"admit/{name}")
        return frozenset(out)

    # ------------------------------------------------------------------
    # statistics

    def stats(self) -> dict:
        return {
            "steps": self.steps,
            "by_rule": dict(sorted(self.by_rule.items())),
            "symbols": len(self.sig),
            "definitions": sorted(self.definitions),
            "predicate_definitions": sorted(self.predicate_definitions),
            "admitted": sorted(self.admitted),
        }


# ---------------------------------------------------------------------------
# Proof DAG serialization and replay
#
# One derivation step per line:
#
#   <id> <tag> [<prem-id> ..] <param> ..
#
# ids are positive, strictly increasing, and every premise id must refer to an
# earlier line. Params are s-expressions (formulas, terms, binding lists) or
# bare tokens (variables, percent-encoded instance keys).


def _var_token(sig: Signature, v: int) -> str:
    return sig.name_of(v)


def _params_tokens(ws: Workspace, thm: Theorem) -> List[str]:
    sig = ws.sig
    tag, params = thm.tag, thm.params
    pf = lambda f: printer.print_formula(sig, f)
    pt = lambda t: printer.print_term(sig, t)
    if tag in ("hypothesis", "lweak", "rweak", "lnot", "rnot", "cut"):
        return [pf(params[0])]
    if tag in ("land", "rand", "lor", "ror", "limp", "rimp", "liff", "riff"):
        return [pf(params[0]), pf(params[1])]
    if tag in ("lall", "rex"):
        return [pf(params[0]), pt(params[1])]
    if tag in ("rall", "lex"):
        return [pf(params[0]), _var_token(sig, params[1])]
    if tag in ("lsubst", "rsubst"):
        ctx, hole, t, u = params
        return [pf(ctx), _var_token(sig, hole), pt(t), pt(u)]
    if tag == "refl":
        return [pt(params[0])]
    if tag == "inst":
        items = params[0]
        inner = " ".join(f"({_var_token(sig, k)} {pt(v)})" for k, v in items)
        return [f"({inner})"]
    if tag == "ax:comprehension":
        x, z, phi, y = params
        return [_var_token(sig, x), _var_token(sig, z), pf(phi), _var_token(sig, y)]
    if tag == "ax:replacement":
        x, y, a, psi, b, y2 = params
        return [
            _var_token(sig, x),
            _var_token(sig, y),
            _var_token(sig, a),
            pf(psi),
            _var_token(sig, b),
            _var_token(sig, y2),
        ]
    if tag.startswith("ax:"):
        return []
    if tag.startswith("def:"):
        ps, y, phi = params
        inner = " ".join(_var_token(sig, p) for p in ps)
        return [f"({inner})", _var_token(sig, y), pf(phi)]
    if tag.startswith("defp:"):
        ps, phi = params
        inner = " ".join(_var_token(sig, p) for p in ps)
        return [f"({inner})", pf(phi)]
    if tag.startswith("admit:"):
        if len(params) == 1:
            return [printer.print_sequent(sig, params[0])]
        key, seq = params
        return [urllib.parse.quote(key, safe=""), printer.print_sequent(sig, seq)]
    raise KernelError(f"cannot serialize rule tag {tag!r}")


def _syms_in_term(t: Term, fns: set, preds: set) -> None:
    if isinstance(t, App):
        fns.add(t.sym)
        for a in t.args:
            _syms_in_term(a, fns, preds)


def _syms_in_formula(f: Formula, fns: set, preds: set) -> None:
    if isinstance(f, Pred):
        preds.add(f.sym)
        for a in f.args:
            _syms_in_term(a, fns, preds)
    elif isinstance(f, Not):
        _syms_in_formula(f.body, fns, preds)
    elif isinstance(f, (And, Or, Imp, Iff)):
        _syms_in_formula(f.left, fns, preds)
        _syms_in_formula(f.right, fns, preds)
    elif isinstance(f, (Forall, Exists)):
        _syms_in_formula(f.body, fns, preds)


def _syms_in_params(obj, fns: set, preds: set) -> None:
    if isinstance(obj, Term):
        _syms_in_term(obj, fns, preds)
    elif isinstance(obj, Formula):
        _syms_in_formula(obj, fns, preds)
    elif isinstance(obj, Sequent):
        for f in obj.left:
            _syms_in_formula(f, fns, preds)
        for f in obj.right:
            _syms_in_formula(f, fns, preds)
    elif isinstance(obj, (tuple, list)):
        for x in obj:
            _syms_in_params(x, fns, preds)


def _reachable(roots: Sequence[Theorem], seen: Dict[int, Theorem]) -> List[Theorem]:
    new: List[Theorem] = []
    stack = list(roots)
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen[id(node)] = node
        new.append(node)
        stack.extend(node.prems)
    return new


def export_proof(thm: Theorem) -> str:
    """Serialize the derivation DAG below `thm`, one step per line, premises
    before conclusions, shared subderivations emitted once.

    Any defined symbol mentioned anywhere in the DAG needs its defining step
    replayed first, so those steps (with their own justification subproofs)
    are prepended, in the order the definitions were originally made. The
    result replays on a fresh workspace.
    """
    ws = thm.workspace
    fn_defs = {rec[0]: rec[5] for rec in ws.definitions.values()}
    pred_defs = {rec[0]: rec[3] for rec in ws.predicate_definitions.values()}
    nodes: Dict[int, Theorem] = {}
    frontier = _reachable([thm], nodes)
    prelude: List[Theorem] = []
    have: set = set()
    while frontier:
        fns: set = set()
        preds: set = set()
        for node in frontier:
            _syms_in_params(node.sequent, fns, preds)
            _syms_in_params(node.params, fns, preds)
        wanted = [fn_defs[s] for s in fns if s in fn_defs] + [
            pred_defs[s] for s in preds if s in pred_defs
        ]
        fresh = [d for d in wanted if id(d) not in have]
        for d in fresh:
            have.add(id(d))
        prelude.extend(fresh)
        frontier = _reachable(fresh, nodes)
    prelude.sort(key=lambda d: d.seqno)

    order: List[Theorem] = []
    seen: Dict[int, int] = {}
    for root in prelude + [thm]:
        stack: List[Tuple[Theorem, bool]] = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen:
                continue
            if expanded:
                seen[id(node)] = len(order) + 1
                order.append(node)
            else:
                stack.append((node, True))
                for p in reversed(node.prems):
                    if id(p) not in seen:
                        stack.append((p, False))
    lines = []
    for i, node in enumerate(order, start=1):
        prems = " ".join(str(seen[id(p)]) for p in node.prems)
        toks = _params_tokens(ws, node)
        rest = (" " + " ".join(toks)) if toks else ""
        lines.append(f"{i} {node.tag} [{prems}]{rest}")
    return "\n".join(lines) + "\n"


def _want(sexps: list, n: int, tag: str) -> None:
    if len(sexps) != n:
        raise ParseError(f"rule {tag!r} expects {n} parameter(s), got {len(sexps)}")


def _as_var(sig: Signature, s) -> int:
    if not isinstance(s, str):
        raise ParseError(f"expected a variable token, got {s!r}")
    if sig.lookup_function(s) is not None or sig.lookup_predicate(s) is not None:
        raise ParseError(f"token {s!r} collides with a declared symbol")
    return sig.variable(s)


def _apply_line(ws: Workspace, tag: str, prems: List[Theorem], sexps: list) -> Theorem:
    sig = ws.sig
    ff = lambda s: printer.formula_of_sexp(sig, s)
    tt = lambda s: printer.term_of_sexp(sig, s)

    def arity(n: int) -> None:
        if len(prems) != n:
            raise ParseError(f"rule {tag!r} expects {n} premise(s), got {len(prems)}")

    if tag == "hypothesis":
        arity(0), _want(sexps, 1, tag)
        return ws.hypothesis(ff(sexps[0]))
    if tag == "cut":
        arity(2), _want(sexps, 1, tag)
        return ws.cut(prems[0], prems[1], ff(sexps[0]))
    if tag in ("lweak", "rweak", "lnot", "rnot"):
        arity(1), _want(sexps, 1, tag)
        return getattr(ws, tag)(prems[0], ff(sexps[0]))
    if tag in ("land", "ror", "rimp", "liff"):
        arity(1), _want(sexps, 2, tag)
        return getattr(ws, tag)(prems[0], ff(sexps[0]), ff(sexps[1]))
    if tag in ("rand", "lor", "limp", "riff"):
        arity(2), _want(sexps, 2, tag)
        return getattr(ws, tag)(prems[0], prems[1], ff(sexps[0]), ff(sexps[1]))
    if tag in ("lall", "rex"):
        arity(1), _want(sexps, 2, tag)
        return getattr(ws, tag)(prems[0], ff(sexps[0]), tt(sexps[1]))
    if tag in ("rall", "lex"):
        arity(1), _want(sexps, 2, tag)
        return getattr(ws, tag)(prems[0], ff(sexps[0]), _as_var(sig, sexps[1]))
    if tag in ("lsubst", "rsubst"):
        arity(1), _want(sexps, 4, tag)
        return getattr(ws, tag)(
            prems[0], ff(sexps[0]), _as_var(sig, sexps[1]), tt(sexps[2]), tt(sexps[3])
        )
    if tag == "refl":
        arity(0), _want(sexps, 1, tag)
        return ws.refl(tt(sexps[0]))
    if tag == "inst":
        arity(1), _want(sexps, 1, tag)
        if isinstance(sexps[0], str):
            raise ParseError("inst expects a binding list")
        m = {}
        for item in sexps[0]:
            if isinstance(item, str) or len(item) != 2:
                raise ParseError(f"malformed instantiation binding: {item!r}")
            m[_as_var(sig, item[0])] = tt(item[1])
        return ws.inst(prems[0], m)
    if tag == "ax:comprehension":
        arity(0), _want(sexps, 4, tag)
        return ws.comprehension(
            _as_var(sig, sexps[0]), _as_var(sig, sexps[1]), ff(sexps[2]), _as_var(sig, sexps[3])
        )
    if tag == "ax:replacement":
        arity(0), _want(sexps, 6, tag)
        return ws.replacement(
            _as_var(sig, sexps[0]),
            _as_var(sig, sexps[1]),
            _as_var(sig, sexps[2]),
            ff(sexps[3]),
            _as_var(sig, sexps[4]),
            _as_var(sig, sexps[5]),
        )
    if tag.startswith("ax:"):
        arity(0), _want(sexps, 0, tag)
        return ws.axiom(tag[3:])
    if tag.startswith("def:"):
        arity(1), _want(sexps, 3, tag)
        if isinstance(sexps[0], str):
            raise ParseError("definition expects a parameter list")
        params = [_as_var(sig, p) for p in sexps[0]]
        _, thm = ws.define_symbol(tag[4:], params, _as_var(sig, sexps[1]), ff(sexps[2]), prems[0])
        return thm
    if tag.startswith("defp:"):
        arity(0), _want(sexps, 2, tag)
        if isinstance(sexps[0], str):
            raise ParseError("predicate definition expects a parameter list")
        params = [_as_var(sig, p) for p in sexps[0]]
        _, thm = ws.define_predicate(tag[5:], params, ff(sexps[1]))
        return thm
    if tag.startswith("admit:"):
        arity(0)
        name = tag[6:]
        if len(sexps) == 1:
            return ws.admit_lemma(name, printer.sequent_of_sexp(sig, sexps[0]))
        _want(sexps, 2, tag)
        if not isinstance(sexps[0], str):
            raise ParseError("admitted instance key must be a token")
        key = urllib.parse.unquote(sexps[0])
        return ws.admit_schema_instance(name, key, printer.sequent_of_sexp(sig, sexps[1]))
    raise ParseError(f"unknown rule tag {tag!r}")


def check_proof(ws: Workspace, text: str) -> Dict[int, Theorem]:
    """Replay a serialized derivation line by line through the kernel rules.

    Returns the theorem for every line id. Raises on the first bad line; the
    original error class is preserved with the line number prepended.
    """
    theorems: Dict[int, Theorem] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        try:
            head, _, rest = line.partition(" ")
            try:
                ident = int(head)
            except ValueError:
                raise ParseError(f"step id must be an integer, got {head!r}")
            if ident in theorems:
                raise ParseError(f"duplicate step id {ident}")
            rest = rest.strip()
            tag, _, rest = rest.partition(" ")
            if not tag:
                raise ParseError("missing rule tag")
            rest = rest.strip()
            if not rest.startswith("["):
                raise ParseError("missing premise list")
            close = rest.find("]")
            if close < 0:
                raise ParseError("unterminated premise list")
            prem_ids = [int(p) for p in rest[1:close].split()] if rest[1:close].strip() else []
            prems = []
            for p in prem_ids:
                if p not in theorems:
                    raise ForwardReference(f"step {ident} uses unknown premise {p}")
                prems.append(theorems[p])
            sexps = printer.read_sexps(rest[close + 1 :])
            theorems[ident] = _apply_line(ws, tag, prems, sexps)
        except KernelError as e:
            raise type(e)(f"line {lineno}: {e}") from e
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from e
        except ValueError as e:
            raise ParseError(f"line {lineno}: {e}") from e
    return theorems
