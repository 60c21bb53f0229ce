"""Arrow justifications and the similarity-based proportion a:b ~ c:d.

An arrow generalization s -> t justifies a -> b when (a, b) lies in its
induced relation {(s(o), t(o))}; both terms see one shared assignment.
The four directed arrow comparisons combine into the quaternary relation.
Maximality ranges over competitor arrows of the right-hand algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebras import Element, FiniteAlgebra, evaluate
from .clone import PairContext, RelationClass
from .terms import ArrowPattern
from .verdicts import CompetitorPolicy, ProportionVerdict, check_policy

__all__ = [
    "Arrow",
    "ArrowJustificationSet",
    "arrow_up_set",
    "arrow_lesssim",
    "proportion_sim",
    "is_characteristic_justification_set",
    "solve_sim",
    "pattern_relation",
]

Arrow = tuple[Element, Element]


@dataclass(frozen=True)
class ArrowJustificationSet:
    arrow: Arrow
    classes: tuple[RelationClass, ...]
    trivial_subset: tuple[RelationClass, ...]


def arrow_up_set(ar: Arrow, ctx: PairContext, side: str = "a") -> ArrowJustificationSet:
    """All relation classes justifying the arrow in one algebra of the pair."""
    alg = ctx.alg_a if side == "a" else ctx.alg_b
    for e in ar:
        if e not in alg.index:
            raise KeyError(f"unknown element {e!r}")
    members = []
    trivial = []
    for rc in ctx.relations:
        rel = rc.rel_a if side == "a" else rc.rel_b
        if ar in rel:
            members.append(rc)
            if rc.trivial:
                trivial.append(rc)
    return ArrowJustificationSet(ar, tuple(members), tuple(trivial))


def _base(ctx: PairContext):
    return dict(
        exact=ctx.saturated,
        max_vars=ctx.bounds.max_vars,
        depth=ctx.clone.depth_reached,
    )


def _fmt(ar: Arrow) -> str:
    return f"{ar[0]}->{ar[1]}"


def arrow_lesssim(
    ar1: Arrow,
    ar2: Arrow,
    ctx: PairContext,
    policy: CompetitorPolicy = "literal",
) -> ProportionVerdict:
    """Directed arrow comparison ar1 <~ ar2 over (A, B)."""
    check_policy(policy)
    base = _base(ctx)
    set1 = ctx.cont_a[ar1]
    set2 = ctx.cont_b[ar2]
    if not set1 and not set2:
        return ProportionVerdict(True, "all-trivial", policy=policy, **base)
    shared = set1 & set2
    if not shared:
        return ProportionVerdict(False, "empty-intersection", policy=policy, **base)
    witness = str(ctx.relations[min(shared)])
    comparisons = []
    for e in ctx.arrows_b:
        if policy == "literal" and e == ar1:
            continue
        other = set1 & ctx.cont_b[e]
        comparisons.append(f"{_fmt(e)}:{'sub' if shared <= other else 'nosub'}")
        if shared <= other and not other <= shared:
            return ProportionVerdict(
                False,
                "dominated",
                policy=policy,
                witness=witness,
                competitor=_fmt(e),
                comparisons=tuple(comparisons),
                **base,
            )
    return ProportionVerdict(
        True, "maximal", policy=policy, witness=witness,
        comparisons=tuple(comparisons), **base,
    )


def proportion_sim(
    a: Element,
    b: Element,
    c: Element,
    d: Element,
    ctx: PairContext,
    policy: CompetitorPolicy = "literal",
) -> ProportionVerdict:
    """The similarity-based analogical proportion a:b ~ c:d over (A, B)."""
    swapped = ctx.swapped()
    conjuncts = [
        (f"{a}->{b} <~ {c}->{d}", (a, b), (c, d), ctx),
        (f"{b}->{a} <~ {d}->{c}", (b, a), (d, c), ctx),
        (f"{c}->{d} <~ {a}->{b}", (c, d), (a, b), swapped),
        (f"{d}->{c} <~ {b}->{a}", (d, c), (b, a), swapped),
    ]
    witness = None
    for name, ar1, ar2, context in conjuncts:
        verdict = arrow_lesssim(ar1, ar2, context, policy)
        if not verdict:
            return ProportionVerdict(
                False, "conjunct-failed", failed_conjunct=name,
                policy=policy, competitor=verdict.competitor,
                witness=verdict.witness, **_base(ctx),
            )
        witness = witness or verdict.witness
    return ProportionVerdict(
        True, "maximal" if witness else "all-trivial",
        policy=policy, witness=witness, **_base(ctx),
    )


def pattern_relation(
    p: ArrowPattern, alg: FiniteAlgebra
) -> frozenset[tuple[Element, Element]]:
    """The binary relation {(s(o), t(o))} with one shared assignment."""
    variables = list(dict.fromkeys(p.lhs.variables() + p.rhs.variables()))
    rel = set()
    for values in itertools.product(alg.universe, repeat=len(variables)):
        o = dict(zip(variables, values))
        rel.add((evaluate(p.lhs, alg, o), evaluate(p.rhs, alg, o)))
    return frozenset(rel)


def is_characteristic_justification_set(
    patterns: list[ArrowPattern] | tuple[ArrowPattern, ...],
    ar1: Arrow,
    ar2: Arrow,
    ctx: PairContext,
) -> bool:
    """Whether the pattern set pins ar2 uniquely among all arrows of B.

    Unlike the element-level notion, the quantifier here has no exclusion:
    it ranges over every arrow of the right-hand algebra.
    """
    patterns = list(patterns)
    rels_a = [pattern_relation(p, ctx.alg_a) for p in patterns]
    rels_b = [pattern_relation(p, ctx.alg_b) for p in patterns]
    if not all(ar1 in r for r in rels_a):
        return False
    if not all(ar2 in r for r in rels_b):
        return False
    for e in ctx.arrows_b:
        if e == ar2:
            continue
        if all(e in r for r in rels_b):
            return False
    return True


def solve_sim(
    a: Element,
    b: Element,
    c: Element,
    ctx: PairContext,
    policy: CompetitorPolicy = "literal",
) -> list[Element]:
    """All d in B with a:b ~ c:d, in universe order."""
    return [
        d for d in ctx.alg_b.universe if proportion_sim(a, b, c, d, ctx, policy)
    ]
