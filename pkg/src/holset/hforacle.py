"""Untrusted finite-model evaluator over hereditarily finite sets.

An independently coded semantics for the base vocabulary: ground terms
evaluate to hereditarily finite sets, ground formulas evaluate to truth
values with quantifiers ranging over the transitive closure of an explicit
finite domain.  Used by the test suite to cross-check admitted statements
and kernel theorems at small rank; it can never mint a theorem.

The vocabulary is dispatched by symbol name.  The naturals are rejected as
a set (they are infinite) but membership in them is decidable, as is
membership in a registered datatype carrier.  Datatype level functions are
evaluated by iterating the declaration's one-step operation from the empty
set.
"""

from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import Infinite, RankBudgetExceeded, UnknownSymbol
from .fol import (
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
    Signature,
    Term,
    Var,
)


class HfSet:
    """A hereditarily finite set, canonical and hashable."""

    __slots__ = ("elems", "rank", "_hash")

    def __init__(self, elems: Iterable["HfSet"] = ()) -> None:
        es = frozenset(elems)
        object.__setattr__(self, "elems", es)
        object.__setattr__(self, "rank", 1 + max((e.rank for e in es), default=-1))
        object.__setattr__(self, "_hash", hash(es))

    def __setattr__(self, *a) -> None:
        raise AttributeError("immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HfSet) and self.elems == other.elems

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, item: "HfSet") -> bool:
        return item in self.elems

    def brace(self) -> str:
        inner = sorted(self.elems, key=lambda e: (e.rank, len(e.elems), e.brace()))
        return "{" + ", ".join(e.brace() for e in inner) + "}"

    def __repr__(self) -> str:
        return f"HfSet({self.brace()})"


EMPTY = HfSet()
TOP = HfSet((EMPTY,))
BOT = EMPTY
BOOL = HfSet((BOT, TOP))


def upair(a: HfSet, b: HfSet) -> HfSet:
    return HfSet((a, b))


def union(a: HfSet) -> HfSet:
    return HfSet(x for e in a.elems for x in e.elems)


def power(a: HfSet, cap: int = 1 << 20) -> HfSet:
    if len(a) >= cap.bit_length():
        raise RankBudgetExceeded(
            f"power set of {len(a)} elements exceeds the enumeration cap"
        )
    items = list(a.elems)
    subs = []
    for bits in range(1 << len(items)):
        subs.append(HfSet(x for k, x in enumerate(items) if bits >> k & 1))
    return HfSet(subs)


def opair(a: HfSet, b: HfSet) -> HfSet:
    return HfSet((HfSet((a,)), HfSet((a, b))))


def as_opair(p: HfSet) -> Optional[Tuple[HfSet, HfSet]]:
    """Decode a Kuratowski pair, or None."""
    es = sorted(p.elems, key=len)
    if len(es) == 1 and len(es[0]) == 1:
        (a,) = es[0].elems
        return a, a
    if len(es) == 2 and len(es[0]) == 1 and len(es[1]) == 2:
        (a,) = es[0].elems
        if a not in es[1]:
            return None
        others = [x for x in es[1].elems if x != a]
        if len(others) != 1:
            return None
        return a, others[0]
    return None


def successor(y: HfSet) -> HfSet:
    return HfSet(set(y.elems) | {y})


def numeral(k: int) -> HfSet:
    cur = EMPTY
    for _ in range(k):
        cur = successor(cur)
    return cur


def as_numeral(z: HfSet) -> Optional[int]:
    """The k with z the k-th von Neumann numeral, or None."""
    k = len(z.elems)
    return k if numeral(k) == z else None


def rtuple(items: List[HfSet]) -> HfSet:
    cur = items[-1]
    for x in reversed(items[:-1]):
        cur = opair(x, cur)
    return cur


def tagged(index: int, items: List[HfSet]) -> HfSet:
    tag = numeral(index)
    return tag if not items else opair(tag, rtuple(items))


def universe(k: int) -> HfSet:
    cur = EMPTY
    for _ in range(k):
        cur = power(cur)
    return cur


def transitive_closure(a: HfSet) -> List[HfSet]:
    seen: Dict[HfSet, None] = {}
    stack = list(a.elems)
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen[x] = None
        stack.extend(x.elems)
    return list(seen)


def apply_graph(f: HfSet, x: HfSet) -> HfSet:
    """The unique second component paired with x in f, else the empty set."""
    found = None
    for p in f.elems:
        xy = as_opair(p)
        if xy is not None and xy[0] == x:
            if found is not None and found != xy[1]:
                return EMPTY
            found = xy[1]
    return EMPTY if found is None else found


def is_function(f: HfSet, A: HfSet, B: HfSet) -> bool:
    for p in f.elems:
        xy = as_opair(p)
        if xy is None or xy[0] not in A or xy[1] not in B:
            return False
    for x in A.elems:
        images = set()
        for p in f.elems:
            xy = as_opair(p)
            if xy is not None and xy[0] == x:
                images.add(xy[1])
        if len(images) != 1:
            return False
    return True


class _HfAdt:
    """Evaluation view of one datatype declaration."""

    __slots__ = ("name", "levels_name", "params", "constructors", "ctor_names")

    def __init__(self, sig: Signature, spec) -> None:
        self.name = spec.name
        self.levels_name = f"{spec.name}_f"
        self.params = tuple(sig.variable(p) for p in spec.type_params)
        self.constructors = tuple(spec.constructors)
        self.ctor_names = {
            cname: (i, tuple(sorts))
            for i, (cname, sorts) in enumerate(spec.constructors)
        }


class HfOracle:
    """Ground evaluation of the base and datatype vocabulary."""

    def __init__(self, sig: Signature, rank_budget: int = 6, fun_cap: int = 10**6):
        self.sig = sig
        self.rank_budget = rank_budget
        self.fun_cap = fun_cap
        self.adts: Dict[str, _HfAdt] = {}

    def register_adt(self, spec) -> None:
        """Make a datatype declaration's symbols evaluable.

        Accepts any object with name, type_params, and constructors in
        declaration shape; sorts that are not terms count as self-references.
        """
        adt = _HfAdt(self.sig, spec)
        self.adts[adt.name] = adt

    # -- datatype evaluation ------------------------------------------------

    def _one_step(
        self, adt: _HfAdt, H: HfSet, env: Dict[int, HfSet], max_rank: Optional[int]
    ) -> HfSet:
        out = set()
        for index, (cname, sorts) in enumerate(adt.constructors):
            doms = [
                H if not isinstance(srt, Term) else self.eval_term(srt, env)
                for srt in sorts
            ]
            if not sorts:
                out.add(numeral(index))
                continue
            for combo in product(*[list(d.elems) for d in doms]):
                v = tagged(index, list(combo))
                if max_rank is None or v.rank <= max_rank:
                    out.add(v)
        return HfSet(out)

    def adt_level(self, adt_name: str, k: int, env: Dict[int, HfSet]) -> HfSet:
        """The k-th level of a registered datatype."""
        adt = self.adts[adt_name]
        cur = EMPTY
        for _ in range(k):
            cur = self._one_step(adt, cur, env, None)
            if cur.rank > self.rank_budget:
                raise RankBudgetExceeded(
                    f"{adt_name} level {k} exceeds rank {self.rank_budget}"
                )
        return cur

    def _in_carrier(self, z: HfSet, adt: _HfAdt, env: Dict[int, HfSet]) -> bool:
        # a value of constructor depth d has rank at least d - 1, and first
        # appears at level d, so iterating rank + 2 times is enough; the rank
        # filter keeps the truncated levels small
        cur = EMPTY
        for _ in range(z.rank + 2):
            cur = self._one_step(adt, cur, env, z.rank)
        return z in cur

    # -- terms ----------------------------------------------------------------

    def _spine(self, t: Term) -> Tuple[Term, List[Term]]:
        args: List[Term] = []
        while isinstance(t, App) and self.sig.name_of(t.sym) == "app" and len(t.args) == 2:
            args.append(t.args[1])
            t = t.args[0]
        return t, list(reversed(args))

    def eval_term(self, t: Term, env: Optional[Dict[int, HfSet]] = None) -> HfSet:
        env = env or {}
        if isinstance(t, Var):
            if t.sym not in env:
                raise UnknownSymbol(
                    f"unbound variable {self.sig.name_of(t.sym)!r} in ground evaluation"
                )
            return env[t.sym]
        if not isinstance(t, App):
            raise UnknownSymbol(f"not a term: {t!r}")
        name = self.sig.name_of(t.sym)
        if name == "app":
            head, args = self._spine(t)
            if isinstance(head, App):
                hname = self.sig.name_of(head.sym)
                got = self._eval_adt_spine(hname, head, args, env)
                if got is not None:
                    return got
            cur = self.eval_term(head, env)
            for a in args:
                cur = apply_graph(cur, self.eval_term(a, env))
            return cur
        if name == "empty":
            return EMPTY
        if name == "bot":
            return BOT
        if name == "top":
            return TOP
        if name == "bool":
            return BOOL
        if name == "upair":
            return upair(self.eval_term(t.args[0], env), self.eval_term(t.args[1], env))
        if name == "union":
            return union(self.eval_term(t.args[0], env))
        if name == "pow":
            base = self.eval_term(t.args[0], env)
            if base.rank + 1 > self.rank_budget:
                raise RankBudgetExceeded(f"power set exceeds rank {self.rank_budget}")
            if 2 ** len(base) > self.fun_cap:
                raise RankBudgetExceeded(
                    f"power set of {len(base)} elements exceeds cap {self.fun_cap}"
                )
            return power(base)
        if name == "opair":
            return opair(self.eval_term(t.args[0], env), self.eval_term(t.args[1], env))
        if name == "succ":
            return successor(self.eval_term(t.args[0], env))
        if name == "arrow":
            return self._arrow(
                self.eval_term(t.args[0], env), self.eval_term(t.args[1], env)
            )
        if name == "eqfn":
            return self._eqfn(self.eval_term(t.args[0], env))
        if name == "nat":
            raise Infinite("nat")
        if name in self.adts:
            raise Infinite(name)
        adt_hit = self._eval_adt_symbol(name, t, env)
        if adt_hit is not None:
            return adt_hit
        raise UnknownSymbol(f"no ground evaluation for symbol {name!r}")

    def _eval_adt_symbol(
        self, name: str, t: App, env: Dict[int, HfSet]
    ) -> Optional[HfSet]:
        for adt in self.adts.values():
            if name == adt.levels_name:
                raise Infinite(name)
            if name in adt.ctor_names:
                index, sorts = adt.ctor_names[name]
                if sorts:
                    raise Infinite(name)
                return numeral(index)
        return None

    def _eval_adt_spine(
        self, hname: str, head: App, args: List[Term], env: Dict[int, HfSet]
    ) -> Optional[HfSet]:
        for adt in self.adts.values():
            if hname == adt.levels_name:
                penv = dict(env)
                for p, a in zip(adt.params, head.args):
                    penv[p] = self.eval_term(a, env)
                kv = as_numeral(self.eval_term(args[0], env))
                cur = EMPTY if kv is None else self.adt_level(adt.name, kv, penv)
                for extra in args[1:]:
                    cur = apply_graph(cur, self.eval_term(extra, env))
                return cur
            if hname in adt.ctor_names:
                index, sorts = adt.ctor_names[hname]
                n = len(sorts)
                if not n or len(args) < n:
                    return None  # partial application: fall through to Infinite
                vals = [self.eval_term(a, env) for a in args[:n]]
                cur = tagged(index, vals)
                for extra in args[n:]:
                    cur = apply_graph(cur, self.eval_term(extra, env))
                return cur
        return None

    def _arrow(self, A: HfSet, B: HfSet) -> HfSet:
        count = len(B) ** len(A) if len(A) else 1
        if count > self.fun_cap:
            raise RankBudgetExceeded(
                f"function space of {count} graphs exceeds cap {self.fun_cap}"
            )
        xs = list(A.elems)
        graphs = []
        for choice in product(list(B.elems), repeat=len(xs)):
            graphs.append(HfSet(opair(x, y) for x, y in zip(xs, choice)))
        return HfSet(graphs)

    def _eqfn(self, A: HfSet) -> HfSet:
        out = []
        for x in A.elems:
            g = HfSet(opair(y, TOP if x == y else BOT) for y in A.elems)
            out.append(opair(x, g))
        return HfSet(out)

    # -- formulas ----------------------------------------------------------------

    def _infinite_side(self, t: Term) -> Optional[str]:
        if isinstance(t, App):
            name = self.sig.name_of(t.sym)
            if name == "nat" or name in self.adts:
                return name
        return None

    def eval_formula(
        self,
        f: Formula,
        env: Optional[Dict[int, HfSet]],
        domain: HfSet,
    ) -> bool:
        env = dict(env or {})
        scope = transitive_closure(domain)
        return self._eval_f(f, env, scope)

    def _eval_f(self, f: Formula, env: Dict[int, HfSet], scope: List[HfSet]) -> bool:
        if isinstance(f, Pred):
            name = self.sig.name_of(f.sym)
            if name == "in":
                side = self._infinite_side(f.args[1])
                z = self.eval_term(f.args[0], env)
                if side == "nat":
                    return as_numeral(z) is not None
                if side is not None:
                    adt = self.adts[side]
                    penv = dict(env)
                    for p, a in zip(adt.params, f.args[1].args):
                        penv[p] = self.eval_term(a, env)
                    return self._in_carrier(z, adt, penv)
                return z in self.eval_term(f.args[1], env)
            if name == "=":
                for side in f.args:
                    hit = self._infinite_side(side)
                    if hit is not None:
                        raise Infinite(hit)
                return self.eval_term(f.args[0], env) == self.eval_term(f.args[1], env)
            if name == "isfun":
                return is_function(
                    self.eval_term(f.args[0], env),
                    self.eval_term(f.args[1], env),
                    self.eval_term(f.args[2], env),
                )
            if name == "inductive":
                w = self.eval_term(f.args[0], env)
                return EMPTY in w and all(successor(z) in w for z in w.elems)
            raise UnknownSymbol(f"no ground evaluation for predicate {name!r}")
        if isinstance(f, Not):
            return not self._eval_f(f.body, env, scope)
        if isinstance(f, And):
            return self._eval_f(f.left, env, scope) and self._eval_f(f.right, env, scope)
        if isinstance(f, Or):
            return self._eval_f(f.left, env, scope) or self._eval_f(f.right, env, scope)
        if isinstance(f, Imp):
            return not self._eval_f(f.left, env, scope) or self._eval_f(
                f.right, env, scope
            )
        if isinstance(f, Iff):
            return self._eval_f(f.left, env, scope) == self._eval_f(f.right, env, scope)
        if isinstance(f, Forall):
            for v in scope:
                env2 = dict(env)
                env2[f.var] = v
                if not self._eval_f(f.body, env2, scope):
                    return False
            return True
        if isinstance(f, Exists):
            for v in scope:
                env2 = dict(env)
                env2[f.var] = v
                if self._eval_f(f.body, env2, scope):
                    return True
            return False
        raise UnknownSymbol(f"no ground evaluation for formula {f!r}")

    def eval_sequent_formulas(
        self,
        left: Iterable[Formula],
        right: Iterable[Formula],
        env: Optional[Dict[int, HfSet]],
        domain: HfSet,
    ) -> bool:
        """Classical reading: some hypothesis fails or some conclusion holds."""
        for f in left:
            if not self.eval_formula(f, env, domain):
                return True
        for f in right:
            if self.eval_formula(f, env, domain):
                return True
        return False
