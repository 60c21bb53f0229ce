"""Level-wise enumeration of term denotations over a pair of finite algebras.

Every term over variables x0..x(v-1) induces a pair of tables (one per
algebra).  Terms are deduplicated by that joint table; each class remembers
which variable-occurrence sets are achievable by its member terms, so the
rewrite-rule filter (variables of the right term contained in the left term)
stays decidable after the quotient.

Ordered pairs of classes are further deduplicated by the binary relations
they induce on the two universes; all justification-set queries are answered
on those relation classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .algebras import Element, FiniteAlgebra
from .terms import App, Term, Var

__all__ = [
    "Bounds",
    "DenotationClass",
    "CloneResult",
    "RelationClass",
    "PairContext",
    "ResourceLimitError",
    "generate_clone",
    "build_pair_context",
]

DEFAULT_CLASS_CAP = 100_000


class ResourceLimitError(RuntimeError):
    """Class-count cap exceeded before saturation."""


@dataclass(frozen=True)
class Bounds:
    max_depth: int | None = None
    max_vars: int = 2
    class_cap: int = DEFAULT_CLASS_CAP

    def __post_init__(self):
        if self.max_vars < 1:
            raise ValueError("max_vars must be >= 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


@dataclass
class DenotationClass:
    table_a: tuple[Element, ...]
    table_b: tuple[Element, ...]
    depth_found: int
    # variable-occurrence set -> minimal witness term with that occurrence set
    witnesses: dict[frozenset[int], Term] = field(default_factory=dict)

    @property
    def witness(self) -> Term:
        return min(self.witnesses.values(), key=lambda t: (t.depth(), str(t)))

    @cached_property
    def image_a(self) -> frozenset[Element]:
        return frozenset(self.table_a)

    @cached_property
    def image_b(self) -> frozenset[Element]:
        return frozenset(self.table_b)

    @property
    def var_supports(self) -> frozenset[frozenset[int]]:
        return frozenset(self.witnesses)


@dataclass
class CloneResult:
    alg_a: FiniteAlgebra
    alg_b: FiniteAlgebra
    bounds: Bounds
    classes: list[DenotationClass]
    saturated: bool
    depth_reached: int


def _better(t1: Term, t2: Term) -> Term:
    return min(t1, t2, key=lambda t: (t.depth(), str(t)))


def generate_clone(
    alg_a: FiniteAlgebra,
    alg_b: FiniteAlgebra | None = None,
    bounds: Bounds = Bounds(),
) -> CloneResult:
    """Enumerate joint denotation classes by depth levels to a fixpoint.

    Saturation means one full level added no new (table, occurrence set)
    combination; the class set is then closed under every operation of the
    language and represents the full term universe over v variables.
    """
    if alg_b is None:
        alg_b = alg_a
    if alg_a.language != alg_b.language:
        raise ValueError("joint clone requires a common language")
    v = bounds.max_vars
    assigns_a = list(itertools.product(alg_a.universe, repeat=v))
    assigns_b = list(itertools.product(alg_b.universe, repeat=v))

    classes: dict[tuple, DenotationClass] = {}
    # expansion items: (class key, occurrence set)
    def add(table_a, table_b, support: frozenset[int], term: Term, depth: int) -> bool:
        key = (table_a, table_b)
        cls = classes.get(key)
        if cls is None:
            if len(classes) >= bounds.class_cap:
                raise ResourceLimitError(
                    f"class cap {bounds.class_cap} exceeded at depth {depth}"
                )
            classes[key] = DenotationClass(table_a, table_b, depth, {support: term})
            return True
        if support not in cls.witnesses:
            cls.witnesses[support] = term
            return True
        cls.witnesses[support] = _better(cls.witnesses[support], term)
        return False

    frontier: list[tuple[tuple, frozenset[int]]] = []
    for i in range(v):
        ta = tuple(o[i] for o in assigns_a)
        tb = tuple(o[i] for o in assigns_b)
        add(ta, tb, frozenset([i]), Var(i), 0)
        frontier.append(((ta, tb), frozenset([i])))
    for sym, rank in alg_a.language.symbols:
        if rank == 0:
            ta = tuple(alg_a.apply(sym, ()) for _ in assigns_a)
            tb = tuple(alg_b.apply(sym, ()) for _ in assigns_b)
            if add(ta, tb, frozenset(), App(sym), 0):
                frontier.append((((ta, tb)), frozenset()))

    depth = 0
    saturated = False
    while True:
        if bounds.max_depth is not None and depth >= bounds.max_depth:
            break
        items = [(key, sup) for key, cls in classes.items() for sup in cls.witnesses]
        frontier_set = set(frontier)
        new_frontier: list[tuple[tuple, frozenset[int]]] = []
        candidates: list[tuple[tuple, tuple, frozenset[int], Term]] = []
        for sym, rank in alg_a.language.symbols:
            if rank == 0:
                continue
            for combo in itertools.product(items, repeat=rank):
                if not any(item in frontier_set for item in combo):
                    continue
                child_classes = [classes[key] for key, _ in combo]
                table_a = tuple(
                    alg_a.apply(sym, tuple(c.table_a[i] for c in child_classes))
                    for i in range(len(assigns_a))
                )
                table_b = tuple(
                    alg_b.apply(sym, tuple(c.table_b[i] for c in child_classes))
                    for i in range(len(assigns_b))
                )
                support = frozenset().union(*(sup for _, sup in combo)) if combo else frozenset()
                term = App(
                    sym,
                    tuple(
                        classes[key].witnesses[sup] for key, sup in combo
                    ),
                )
                candidates.append((table_a, table_b, support, term))
        depth += 1
        # deterministic commit order: smallest witness first
        candidates.sort(key=lambda c: (c[3].depth(), str(c[3])))
        for table_a, table_b, support, term in candidates:
            if add(table_a, table_b, support, term, depth):
                new_frontier.append(((table_a, table_b), support))
        if not new_frontier:
            saturated = True
            depth -= 1
            break
        frontier = new_frontier

    ordered = sorted(classes.values(), key=lambda c: (c.depth_found, str(c.witness)))
    return CloneResult(alg_a, alg_b, bounds, ordered, saturated, depth)


@dataclass
class RelationClass:
    """An arrow generalization s -> t up to its induced binary relations."""

    rel_a: frozenset[tuple[Element, Element]]
    rel_b: frozenset[tuple[Element, Element]]
    witness: tuple[Term, Term]
    trivial: bool
    rewrite_witness: tuple[Term, Term] | None = None

    @property
    def has_rewrite_witness(self) -> bool:
        return self.rewrite_witness is not None

    def __str__(self) -> str:
        s, t = self.witness
        return f"{s} -> {t}"


def _pair_key(t: tuple[Term, Term]):
    s, u = t
    return (s.depth() + u.depth(), str(s), str(u))


@dataclass
class PairContext:
    """Everything needed to decide similarity and proportion queries on (A, B)."""

    alg_a: FiniteAlgebra
    alg_b: FiniteAlgebra
    clone: CloneResult
    relations: list[RelationClass]

    @property
    def saturated(self) -> bool:
        return self.clone.saturated

    @property
    def bounds(self) -> Bounds:
        return self.clone.bounds

    @cached_property
    def _full_a(self) -> frozenset:
        u = self.alg_a.universe
        return frozenset(itertools.product(u, u))

    @cached_property
    def _full_b(self) -> frozenset:
        u = self.alg_b.universe
        return frozenset(itertools.product(u, u))

    @cached_property
    def arrows_a(self) -> list[tuple[Element, Element]]:
        u = self.alg_a.universe
        return list(itertools.product(u, u))

    @cached_property
    def arrows_b(self) -> list[tuple[Element, Element]]:
        u = self.alg_b.universe
        return list(itertools.product(u, u))

    @cached_property
    def cont_a(self) -> dict[tuple[Element, Element], frozenset[int]]:
        """Arrow -> ids of non-trivial relation classes containing it in A."""
        out = {ar: set() for ar in self.arrows_a}
        for i, rc in enumerate(self.relations):
            if rc.trivial:
                continue
            for ar in rc.rel_a:
                out[ar].add(i)
        return {ar: frozenset(ids) for ar, ids in out.items()}

    @cached_property
    def cont_b(self) -> dict[tuple[Element, Element], frozenset[int]]:
        out = {ar: set() for ar in self.arrows_b}
        for i, rc in enumerate(self.relations):
            if rc.trivial:
                continue
            for ar in rc.rel_b:
                out[ar].add(i)
        return {ar: frozenset(ids) for ar, ids in out.items()}

    @cached_property
    def jus_a(self) -> dict[tuple[Element, Element], frozenset[int]]:
        """Arrow -> ids of non-trivial rewrite-witnessed classes containing it."""
        return {
            ar: frozenset(
                i for i in ids if self.relations[i].has_rewrite_witness
            )
            for ar, ids in self.cont_a.items()
        }

    @cached_property
    def jus_b(self) -> dict[tuple[Element, Element], frozenset[int]]:
        return {
            ar: frozenset(
                i for i in ids if self.relations[i].has_rewrite_witness
            )
            for ar, ids in self.cont_b.items()
        }

    @cached_property
    def elem_up_a(self) -> dict[Element, frozenset[int]]:
        """Element -> ids of non-trivial denotation classes whose A-image contains it."""
        out = {e: set() for e in self.alg_a.universe}
        for i, cls in enumerate(self.clone.classes):
            if self.class_trivial(cls):
                continue
            for e in cls.image_a:
                out[e].add(i)
        return {e: frozenset(ids) for e, ids in out.items()}

    @cached_property
    def elem_up_b(self) -> dict[Element, frozenset[int]]:
        out = {e: set() for e in self.alg_b.universe}
        for i, cls in enumerate(self.clone.classes):
            if self.class_trivial(cls):
                continue
            for e in cls.image_b:
                out[e].add(i)
        return {e: frozenset(ids) for e, ids in out.items()}

    def class_trivial(self, cls: DenotationClass) -> bool:
        return cls.image_a == frozenset(self.alg_a.universe) and cls.image_b == frozenset(
            self.alg_b.universe
        )

    def swapped(self) -> "PairContext":
        """The same context with the roles of the two algebras exchanged."""
        return _swap_context(self)


def _swap_context(ctx: PairContext) -> PairContext:
    if not hasattr(ctx, "_swapped"):
        swapped_clone = CloneResult(
            ctx.alg_b,
            ctx.alg_a,
            ctx.clone.bounds,
            [
                DenotationClass(c.table_b, c.table_a, c.depth_found, dict(c.witnesses))
                for c in ctx.clone.classes
            ],
            ctx.clone.saturated,
            ctx.clone.depth_reached,
        )
        relations = [
            RelationClass(rc.rel_b, rc.rel_a, rc.witness, rc.trivial, rc.rewrite_witness)
            for rc in ctx.relations
        ]
        swapped = PairContext(ctx.alg_b, ctx.alg_a, swapped_clone, relations)
        swapped._swapped = ctx  # type: ignore[attr-defined]
        ctx._swapped = swapped  # type: ignore[attr-defined]
    return ctx._swapped  # type: ignore[attr-defined]


def build_pair_context(
    alg_a: FiniteAlgebra,
    alg_b: FiniteAlgebra | None = None,
    bounds: Bounds = Bounds(),
) -> PairContext:
    """Generate the joint clone and group class pairs by induced relations."""
    clone = generate_clone(alg_a, alg_b, bounds)
    alg_b = clone.alg_b
    full_a = frozenset(itertools.product(alg_a.universe, alg_a.universe))
    full_b = frozenset(itertools.product(alg_b.universe, alg_b.universe))

    grouped: dict[tuple[frozenset, frozenset], RelationClass] = {}
    for cs in clone.classes:
        for ct in clone.classes:
            rel_a = frozenset(zip(cs.table_a, ct.table_a))
            rel_b = frozenset(zip(cs.table_b, ct.table_b))
            witness = (cs.witness, ct.witness)
            rewrite = _rewrite_witness(cs, ct)
            key = (rel_a, rel_b)
            existing = grouped.get(key)
            if existing is None:
                grouped[key] = RelationClass(
                    rel_a,
                    rel_b,
                    witness,
                    trivial=(rel_a == full_a and rel_b == full_b),
                    rewrite_witness=rewrite,
                )
            else:
                existing.witness = min(existing.witness, witness, key=_pair_key)
                if rewrite is not None and (
                    existing.rewrite_witness is None
                    or _pair_key(rewrite) < _pair_key(existing.rewrite_witness)
                ):
                    existing.rewrite_witness = rewrite
    relations = sorted(grouped.values(), key=lambda rc: _pair_key(rc.witness))
    return PairContext(alg_a, alg_b, clone, relations)


def _rewrite_witness(
    cs: DenotationClass, ct: DenotationClass
) -> tuple[Term, Term] | None:
    best = None
    for sup_s, s in cs.witnesses.items():
        for sup_t, t in ct.witnesses.items():
            if sup_t <= sup_s:
                cand = (s, t)
                if best is None or _pair_key(cand) < _pair_key(best):
                    best = cand
    return best
