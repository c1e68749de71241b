"""Generic finite-group machinery on explicit multiplication tables.

Groups are built by closing a generating set under an exact, hashable
multiplication (quaternions over a number field in practice).  All
higher operations (automorphisms, inner/outer classes) work purely on
the index table, so they apply to any finite group handed to them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class ClosureCapExceeded(Exception):
    """Raised when a generating set does not close within the element cap."""


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group as index tables.

    elements[i] is the canonical representative of index i; mul[i][j] is
    the index of elements[i]*elements[j]; identity_index and inv are
    derived and checked at construction time.
    """

    elements: tuple
    mul: tuple
    inv: tuple
    identity_index: int
    generator_indices: tuple

    @property
    def order(self):
        return len(self.elements)

    def element_order(self, i):
        n = 1
        x = i
        while x != self.identity_index:
            x = self.mul[x][i]
            n += 1
        return n

    def orders(self):
        return tuple(self.element_order(i) for i in range(self.order))

    def center_indices(self):
        n = self.order
        return tuple(
            z for z in range(n) if all(self.mul[z][g] == self.mul[g][z] for g in range(n))
        )

    def conjugation_map(self, g):
        """The inner automorphism x -> g x g^-1 as an index tuple."""
        gi = self.inv[g]
        return tuple(self.mul[self.mul[g][x]][gi] for x in range(self.order))

    def check_axioms(self):
        """Exhaustive group-axiom check; quadratic-to-cubic, for tests."""
        n = self.order
        e = self.identity_index
        for i in range(n):
            assert self.mul[e][i] == i and self.mul[i][e] == i
            assert self.mul[i][self.inv[i]] == e and self.mul[self.inv[i]][i] == e
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul[self.mul[i][j]][k] != self.mul[i][self.mul[j][k]]:
                        raise AssertionError("associativity fails")
        return True


def group_closure(generators, mul=None, inverse=None, identity=None, cap=2000,
                  sort_key=None) -> FiniteGroupTable:
    """Close a generating set and return the full multiplication table.

    The elements must be hashable with exact equality; mul/inverse
    default to the * operator and .inverse().  Raises ClosureCapExceeded
    if more than cap elements appear.
    """
    mul = mul or (lambda a, b: a * b)
    inverse = inverse or (lambda a: a.inverse())
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    if identity is None:
        g = gens[0]
        identity = mul(g, inverse(g))

    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(
                            f"group not finite within cap {cap}"
                        )
        frontier = nxt

    if sort_key is None:
        sort_key = getattr(next(iter(seen)), "sort_key", None)
        if sort_key is not None:
            sort_key = lambda x: x.sort_key()  # noqa: E731
    elements = sorted(seen, key=sort_key) if sort_key else list(seen)
    # identity first, for readability of the tables
    eid = elements.index(identity)
    elements[0], elements[eid] = elements[eid], elements[0]
    index = {x: i for i, x in enumerate(elements)}

    n = len(elements)
    mtable = tuple(
        tuple(index[mul(elements[i], elements[j])] for j in range(n)) for i in range(n)
    )
    inv = tuple(index[inverse(elements[i])] for i in range(n))
    return FiniteGroupTable(
        elements=tuple(elements),
        mul=mtable,
        inv=inv,
        identity_index=0,
        generator_indices=tuple(index[g] for g in gens),
    )


@dataclass(frozen=True)
class GroupMap:
    """A map between groups recorded by the image index of every element."""

    source: FiniteGroupTable
    target: FiniteGroupTable
    images: tuple
    bijective: bool = field(default=False)

    def __call__(self, i):
        return self.images[i]

    def is_homomorphism(self):
        g = self.source
        for i in range(g.order):
            for j in range(g.order):
                if self.images[g.mul[i][j]] != self.target.mul[self.images[i]][self.images[j]]:
                    return False
        return True

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other (other's target must be self's source)."""
        return GroupMap(
            source=other.source,
            target=self.target,
            images=tuple(self.images[x] for x in other.images),
            bijective=self.bijective and other.bijective,
        )


def _reduced_generating_set(g: FiniteGroupTable):
    """A small generating subset found greedily in canonical index order."""
    n = g.order

    def generates(idxs):
        seen = {g.identity_index}
        frontier = [g.identity_index]
        while frontier:
            nxt = []
            for x in frontier:
                for s in idxs:
                    y = g.mul[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen) == n

    candidates = [i for i in range(n) if i != g.identity_index]
    for size in (1, 2, 3):
        for combo in itertools.combinations(candidates, size):
            if generates(combo):
                return combo
    return tuple(g.generator_indices)


def _bfs_words(g: FiniteGroupTable, gens):
    """parent/edge arrays expressing every element as word in gens."""
    parent = [-1] * g.order
    edge = [-1] * g.order
    parent[g.identity_index] = g.identity_index
    frontier = [g.identity_index]
    while frontier:
        nxt = []
        for x in frontier:
            for si, s in enumerate(gens):
                y = g.mul[x][s]
                if parent[y] == -1:
                    parent[y] = x
                    edge[y] = si
                    nxt.append(y)
        frontier = nxt
    if any(p == -1 for p in parent):
        raise ValueError("generators do not generate the group")
    return parent, edge


def _extend_by_words(g: FiniteGroupTable, gens, parent, edge, gen_images):
    """Propagate generator images along the BFS tree; None if inconsistent."""
    images = [-1] * g.order
    images[g.identity_index] = g.identity_index
    order_ids = sorted(range(g.order), key=lambda x: _depth(parent, x))
    for x in order_ids:
        if x == g.identity_index:
            continue
        images[x] = g.mul[images[parent[x]]][gen_images[edge[x]]]
    # verify the candidate really is a homomorphism on every Cayley edge
    for x in range(g.order):
        for si, s in enumerate(gens):
            if images[g.mul[x][s]] != g.mul[images[x]][gen_images[si]]:
                return None
    return tuple(images)


def _depth(parent, x):
    d = 0
    while parent[x] != x:
        x = parent[x]
        d += 1
    return d


def automorphism_group(g: FiniteGroupTable, brute_force=False):
    """All automorphisms of g, sorted by image tuple.

    The search runs over candidate images of a small generating set,
    pruned by element-order preservation; brute_force=True skips the
    pruning and tries every tuple of elements (the cross-check oracle).
    """
    gens = _reduced_generating_set(g)
    parent, edge = _bfs_words(g, gens)
    orders = g.orders()

    pools = []
    for s in gens:
        if brute_force:
            pools.append(list(range(g.order)))
        else:
            pools.append([i for i in range(g.order) if orders[i] == orders[s]])

    auts = []
    for gen_images in itertools.product(*pools):
        images = _extend_by_words(g, gens, parent, edge, gen_images)
        if images is None:
            continue
        if len(set(images)) != g.order:
            continue
        auts.append(GroupMap(source=g, target=g, images=images, bijective=True))
    auts.sort(key=lambda m: m.images)
    return auts


def inner_automorphisms(g: FiniteGroupTable):
    seen = {}
    for x in range(g.order):
        m = g.conjugation_map(x)
        seen.setdefault(m, GroupMap(source=g, target=g, images=m, bijective=True))
    return sorted(seen.values(), key=lambda m: m.images)


def outer_classes(g: FiniteGroupTable, auts):
    """Representatives of Aut/Inn, sorted; auts must be the full group."""
    inner = {m.images for m in inner_automorphisms(g)}
    if len(auts) % len(inner) != 0:
        raise ValueError("automorphism list is not closed under Inn")
    classes = []
    assigned = set()
    for a in auts:
        if a.images in assigned:
            continue
        coset = set()
        for m in inner:
            composed = tuple(a.images[x] for x in m)
            coset.add(composed)
        assigned |= coset
        classes.append(a)
    return classes
