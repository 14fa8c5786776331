"""Exact root systems, Weyl groups and reflection subgroups.

Conventions (Humphreys labeling of Dynkin diagrams, nodes are 1-based in
the public API):

* roots are integer coordinate vectors in the simple-root basis,
* coroots are integer vectors in the simple-coroot basis,
* coweights are rational vectors in the simple-coroot basis,
* ``cartan[i][j]`` is the pairing of the i-th simple root with the j-th
  simple coroot,
* a Weyl element is a permutation of the signed-root index list (all
  positive roots first, then their negatives in the same order).

Products compose like functions: ``(u * v)`` acts by first applying
``v``, then ``u``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .lattice import rational_inverse, solve_in_span


class RootSystemError(ValueError):
    """Invalid root-system construction or query."""


_RANK_BOUNDS = {"A": 1, "B": 2, "C": 3, "D": 4}

#: positive-root counts of the irreducible types, used as a construction oracle
CLASSICAL_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def _cartan_matrix(label, rank):
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j, down=-1, up=-1):
        c[i][j] = down
        c[j][i] = up

    if label in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if label == "B":
            c[rank - 2][rank - 1] = -2
        elif label == "C":
            c[rank - 1][rank - 2] = -2
    elif label == "D":
        for i in range(rank - 3):
            bond(i, i + 1)
        bond(rank - 3, rank - 2)
        bond(rank - 3, rank - 1)
    elif label == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif label == "F":
        bond(0, 1)
        c[1][2] = -2
        c[2][1] = -1
        bond(2, 3)
    elif label == "G":
        c[0][1] = -1
        c[1][0] = -3
    return tuple(tuple(row) for row in c)


def _generate_root_coroot_pairs(cartan):
    """Closure of the simple (root, coroot) pairs under simple reflections."""
    rank = len(cartan)
    start = []
    for i in range(rank):
        e = tuple(int(i == j) for j in range(rank))
        start.append((e, e))
    seen = {p[0]: p[1] for p in start}
    frontier = [p[0] for p in start]
    while frontier:
        nxt = []
        for r in frontier:
            cr = seen[r]
            for j in range(rank):
                pr = sum(r[i] * cartan[i][j] for i in range(rank))
                new_r = tuple(x - pr * int(k == j) for k, x in enumerate(r))
                pc = sum(cartan[j][i] * cr[i] for i in range(rank))
                new_c = tuple(x - pc * int(k == j) for k, x in enumerate(cr))
                if new_r not in seen:
                    seen[new_r] = new_c
                    nxt.append(new_r)
                elif seen[new_r] != new_c:
                    raise RootSystemError("inconsistent coroot closure")
        frontier = nxt
    pos = sorted((r for r in seen if all(x >= 0 for x in r)),
                 key=lambda r: (sum(r), r))
    return pos, [seen[r] for r in pos]


class RootDatum:
    """A finite crystallographic root system with exact integral data.

    Attributes follow the simple-root / simple-coroot bases described in
    the module docstring.  Instances are immutable after construction and
    hash by identity, so they can be shared freely across threads.
    """

    def __init__(self, type_label, rank, cartan, factors=None, center_rank=0):
        self.type_label = type_label
        self.rank = rank
        self.cartan = cartan
        self.factors = factors or ((type_label, rank),)
        self.center_rank = center_rank
        pos, coroots = _generate_root_coroot_pairs(cartan)
        self.positive_roots = tuple(pos)
        self.coroots = tuple(coroots)
        self.num_positive = len(pos)
        self.all_roots = self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots)
        self.all_coroots = self.coroots + tuple(
            tuple(-x for x in c) for c in self.coroots)
        inv = rational_inverse([list(map(Fraction, row)) for row in cartan])
        self.fundamental_coweights = tuple(
            tuple(inv[i][j] for i in range(rank)) for j in range(rank))
        self._index = {r: i for i, r in enumerate(self.all_roots)}
        self._simple_index = tuple(
            self._index[tuple(int(i == j) for j in range(rank))] for i in range(rank))
        self._simple_refl = None
        self._reflections = {}

    # -- basic root bookkeeping -------------------------------------------------

    def root(self, idx):
        return self.all_roots[idx]

    def coroot(self, idx):
        return self.all_coroots[idx]

    def index_of(self, coords):
        try:
            return self._index[tuple(coords)]
        except KeyError:
            raise RootSystemError(f"{coords!r} is not a root") from None

    def simple_root_index(self, node):
        """Root index of the simple root at 1-based diagram node."""
        if not 1 <= node <= self.rank:
            raise RootSystemError(f"node {node} out of range 1..{self.rank}")
        return self._simple_index[node - 1]

    def negate(self, idx):
        n = self.num_positive
        return idx + n if idx < n else idx - n

    def is_positive(self, idx):
        return idx < self.num_positive

    def pairing(self, root_coords, coweight):
        """Exact pairing of a root (root basis) with a coweight (coroot basis)."""
        s = Fraction(0)
        for i, x in enumerate(root_coords):
            if x:
                s += x * sum(self.cartan[i][j] * coweight[j] for j in range(self.rank))
        return s

    def height(self, idx):
        return sum(self.all_roots[idx])

    # -- Weyl elements ----------------------------------------------------------

    def identity_element(self):
        return WeylElement(self, tuple(range(2 * self.num_positive)), word=())

    def simple_reflection(self, node):
        if self._simple_refl is None:
            refl = []
            for j in range(self.rank):
                perm = []
                for r in self.all_roots:
                    pr = sum(r[i] * self.cartan[i][j] for i in range(self.rank))
                    img = tuple(x - pr * int(k == j) for k, x in enumerate(r))
                    perm.append(self._index[img])
                refl.append(WeylElement(self, tuple(perm), word=(j + 1,)))
            self._simple_refl = tuple(refl)
        return self._simple_refl[node - 1]

    def reflection(self, root_idx):
        """The reflection in an arbitrary root, as a Weyl element."""
        key = root_idx if root_idx < self.num_positive else self.negate(root_idx)
        got = self._reflections.get(key)
        if got is None:
            beta = self.all_roots[key]
            beta_cov = self.all_coroots[key]
            perm = []
            for r in self.all_roots:
                pr = self.pairing(r, beta_cov)
                img = tuple(x - pr * b for x, b in zip(r, beta))
                perm.append(self._index[img])
            got = WeylElement(self, tuple(perm))
            self._reflections[key] = got
        return got

    def element_from_word(self, word):
        """Product s_{i1} s_{i2} ... for 1-based node letters, left action."""
        w = self.identity_element()
        for node in word:
            w = w * self.simple_reflection(node)
        return WeylElement(self, w.perm, word=tuple(word))

    def weyl_group(self):
        if not hasattr(self, "_full_group"):
            self._full_group = ReflectionGroup(
                self, tuple(self._simple_index), tuple(range(self.num_positive)))
        return self._full_group


class WeylElement:
    """Weyl-group element stored as a permutation of the signed-root indices.

    ``word``, when present, is a (not necessarily reduced) generating word
    in 1-based simple-reflection letters.
    """

    __slots__ = ("datum", "perm", "word", "_hash")

    def __init__(self, datum, perm, word=None):
        self.datum = datum
        self.perm = perm
        self.word = word
        self._hash = None

    def __mul__(self, other):
        p, q = self.perm, other.perm
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.datum, tuple(p[i] for i in q), word=word)

    def inverse(self):
        q = [0] * len(self.perm)
        for i, img in enumerate(self.perm):
            q[img] = i
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(self.datum, tuple(q), word=word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.perm)
        return self._hash

    def __repr__(self):
        try:
            w = self.datum.weyl_group().reduced_word_nodes(self)
        except Exception:
            w = self.word
        return f"WeylElement({'*'.join('s%d' % i for i in w) or '1'})"

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.perm))

    def act_index(self, idx):
        return self.perm[idx]

    def length(self):
        n = self.datum.num_positive
        return sum(1 for p in range(n) if self.perm[p] >= n)

    def apply(self, vec, *, basis):
        """Exact image of a rational vector under this element.

        ``basis`` must be ``"root"`` (simple-root coordinates) or
        ``"coroot"`` (simple-coroot coordinates).
        """
        if basis not in ("root", "coroot"):
            raise RootSystemError("basis flag must be 'root' or 'coroot'")
        d = self.datum
        rank = d.rank
        cols = []
        for j in range(rank):
            img = self.perm[d._simple_index[j]]
            cols.append(d.all_roots[img] if basis == "root" else d.all_coroots[img])
        return tuple(sum(Fraction(cols[j][i]) * vec[j] for j in range(rank))
                     for i in range(rank))

    def order(self):
        k = 1
        w = self
        while not w.is_identity():
            w = w * self
            k += 1
        return k


def apply(w, vec, *, basis):
    """Module-level alias for :meth:`WeylElement.apply`."""
    return w.apply(vec, basis=basis)


def length(w):
    return w.length()


@dataclass(frozen=True)
class DiagramAut:
    """Cartan-preserving permutation of the diagram nodes (0-based tuple)."""

    perm_on_simples: tuple
    order: int

    def node_image(self, node):
        """1-based image of a 1-based node."""
        return self.perm_on_simples[node - 1] + 1

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.perm_on_simples))

    def inverse_node(self, node):
        return self.perm_on_simples.index(node - 1) + 1

    def power(self, k):
        k %= self.order
        p = tuple(range(len(self.perm_on_simples)))
        for _ in range(k):
            p = tuple(self.perm_on_simples[i] for i in p)
        return DiagramAut(p, _perm_order(p))


def _perm_order(p):
    order = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            order = order * n // _gcd(order, n)
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def identity_aut(datum):
    return DiagramAut(tuple(range(datum.rank)), 1)


def diagram_automorphisms(datum):
    """All Cartan-preserving node permutations, identity included."""
    rank = datum.rank
    cartan = datum.cartan
    out = []
    for p in permutations(range(rank)):
        if all(cartan[p[i]][p[j]] == cartan[i][j]
               for i in range(rank) for j in range(rank)):
            out.append(DiagramAut(p, _perm_order(p)))
    return sorted(out, key=lambda a: a.perm_on_simples)


def aut_root_permutation(datum, aut):
    """Extension of a diagram automorphism to the signed-root index set."""
    perm = []
    for r in datum.all_roots:
        img = [0] * datum.rank
        for i, x in enumerate(r):
            img[aut.perm_on_simples[i]] = x
        perm.append(datum.index_of(img))
    return tuple(perm)


def sigma_orbits_on_nodes(datum, aut):
    """Orbits of the automorphism on 1-based nodes, each sorted, in order."""
    seen = set()
    orbits = []
    for node in range(1, datum.rank + 1):
        if node in seen:
            continue
        orb = []
        j = node
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = aut.node_image(j)
        orbits.append(tuple(sorted(orb)))
    return tuple(orbits)


def sigma_orbit_coweight(datum, aut, orbit):
    """Sum of the fundamental coweights over a sigma-orbit of simple roots."""
    orbit = tuple(sorted(orbit))
    if orbit not in sigma_orbits_on_nodes(datum, aut):
        raise RootSystemError(f"{orbit} is not a sigma-orbit of the diagram")
    out = [Fraction(0)] * datum.rank
    for node in orbit:
        for i, x in enumerate(datum.fundamental_coweights[node - 1]):
            out[i] += x
    return tuple(out)


def support_root(datum, root_coords):
    """1-based nodes carrying a nonzero coefficient of the root."""
    return frozenset(i + 1 for i, x in enumerate(root_coords) if x != 0)


def dynkin_components(datum):
    """Connected components of the diagram as sorted tuples of 1-based nodes."""
    rank = datum.rank
    seen = [False] * rank
    comps = []
    for start in range(rank):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(rank):
                if not seen[j] and datum.cartan[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(n + 1 for n in comp)))
    return tuple(comps)


def build_root_system(type_label, rank):
    """Construct the irreducible root system of the given type and rank."""
    label = type_label.upper()
    if label in ("E6", "E7", "E8"):
        label, rank = "E", int(label[1])
    elif label == "F4":
        label, rank = "F", 4
    elif label == "G2":
        label, rank = "G", 2
    if label in _RANK_BOUNDS:
        if rank < _RANK_BOUNDS[label]:
            raise RootSystemError(
                f"type {label} needs rank >= {_RANK_BOUNDS[label]}, got {rank}")
    elif label == "E":
        if rank not in (6, 7, 8):
            raise RootSystemError(f"type E needs rank 6, 7 or 8, got {rank}")
    elif label == "F":
        if rank != 4:
            raise RootSystemError("type F has rank 4")
    elif label == "G":
        if rank != 2:
            raise RootSystemError("type G has rank 2")
    else:
        raise RootSystemError(f"unknown type label {type_label!r}")
    datum = RootDatum(label, rank, _cartan_matrix(label, rank))
    expected = CLASSICAL_POSITIVE_COUNTS[label](rank)
    if datum.num_positive != expected:
        raise RootSystemError(
            f"{label}{rank}: generated {datum.num_positive} positive roots, "
            f"expected {expected}")
    return datum


def build_product(factors):
    """Orthogonal product of irreducible systems, nodes numbered blockwise."""
    parts = [build_root_system(lbl, rk) for lbl, rk in factors]
    rank = sum(p.rank for p in parts)
    cartan = [[0] * rank for _ in range(rank)]
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                cartan[off + i][off + j] = p.cartan[i][j]
        off += p.rank
    label = "+".join(f"{lbl}{rk}" for lbl, rk in factors)
    return RootDatum(label, rank, tuple(tuple(r) for r in cartan),
                     factors=tuple((lbl, rk) for lbl, rk in factors))


class ReflectionGroup:
    """A reflection subgroup of the ambient Weyl group with its own simple system.

    Covers both the full Weyl group (simples = all simple roots) and the
    subsystem groups W_e arising from fixed-point data.  Lengths, reduced
    words, Bruhat order and coset machinery are all relative to the
    group's own positive system.
    """

    def __init__(self, datum, simples, positives):
        self.datum = datum
        self.simples = tuple(sorted(simples))
        self.positives = tuple(sorted(positives))
        self.positive_set = frozenset(self.positives)
        self.negative_set = frozenset(datum.negate(i) for i in self.positives)
        self.gens = tuple(datum.reflection(i) for i in self.simples)
        self.rank = len(self.simples)
        self._elements = None
        self._delta_coords = None

    @classmethod
    def from_positive_roots(cls, datum, positive_indices):
        """Build the subsystem group on a closed positive set.

        The simple system is recovered as the indecomposable members of
        the positive set.
        """
        pos = sorted(positive_indices)
        coords = {datum.root(i) for i in pos}
        simples = []
        for i in pos:
            r = datum.root(i)
            decomposable = any(
                tuple(a - b for a, b in zip(r, datum.root(j))) in coords
                for j in pos if j != i)
            if not decomposable:
                simples.append(i)
        return cls(datum, tuple(simples), tuple(pos))

    # -- lengths and words ------------------------------------------------------

    def length(self, w):
        neg = self.negative_set
        perm = w.perm
        return sum(1 for p in self.positives if perm[p] in neg)

    def descent(self, w):
        """Least position k with w(simples[k]) negative, or None."""
        neg = self.negative_set
        perm = w.perm
        for k, s in enumerate(self.simples):
            if perm[s] in neg:
                return k
        return None

    def reduced_word(self, w):
        """Canonical reduced word as positions into ``self.simples``."""
        rev = []
        while True:
            k = self.descent(w)
            if k is None:
                break
            rev.append(k)
            w = w * self.gens[k]
        if not w.is_identity():
            raise RootSystemError("element does not lie in this reflection group")
        return tuple(reversed(rev))

    def reduced_word_nodes(self, w):
        """Canonical reduced word in 1-based ambient node letters (full group)."""
        simple_nodes = {idx: n + 1 for n, idx in enumerate(self.datum._simple_index)}
        return tuple(simple_nodes[self.simples[k]] for k in self.reduced_word(w))

    def element(self, positions):
        w = self.datum.identity_element()
        for k in positions:
            w = w * self.gens[k]
        return w

    def is_member(self, w):
        perm = w.perm
        if any(perm[p] not in self.positive_set and perm[p] not in self.negative_set
               for p in self.positives):
            return False
        try:
            self.reduced_word(w)
            return True
        except RootSystemError:
            return False

    def support(self, w):
        """Positions into ``simples`` appearing in the canonical reduced word."""
        return frozenset(self.reduced_word(w))

    # -- enumeration ------------------------------------------------------------

    def elements(self, cap=2_000_000):
        if self._elements is None:
            out = [self.datum.identity_element()]
            seen = {out[0].perm}
            frontier = out[:]
            while frontier:
                nxt = []
                for w in frontier:
                    for g in self.gens:
                        u = w * g
                        if u.perm not in seen:
                            seen.add(u.perm)
                            nxt.append(u)
                            if len(seen) > cap:
                                raise RootSystemError("group enumeration cap exceeded")
                frontier = sorted(nxt, key=lambda x: x.perm)
                out.extend(frontier)
            self._elements = tuple(sorted(out, key=lambda x: (self.length(x), x.perm)))
        return self._elements

    def order(self):
        return len(self.elements())

    # -- longest elements and Bruhat order ---------------------------------------

    def longest_element(self, positions=None):
        """Longest element of the standard parabolic on the given positions.

        ``positions`` defaults to the whole simple system; the empty set
        gives the identity.
        """
        if positions is None:
            positions = range(self.rank)
        allowed = sorted(positions)
        w = self.datum.identity_element()
        neg = self.negative_set
        while True:
            k = next((k for k in allowed if w.perm[self.simples[k]] not in neg), None)
            if k is None:
                return w
            w = w * self.gens[k]

    def bruhat_leq(self, u, w):
        """Subword test for Bruhat order, greedy over one reduced word of w."""
        lu = self.length(u)
        lw = self.length(w)
        if lu > lw:
            return False
        x = u
        for k in reversed(self.reduced_word(w)):
            xs = x * self.gens[k]
            lx = self.length(x)
            if self.length(xs) < lx:
                x = xs
                lx -= 1
            if lx == 0:
                return True
        return x.is_identity()

    def bruhat_interval_below(self, w):
        """All v <= w, via subwords of the canonical reduced word of w."""
        word = self.reduced_word(w)
        out = {self.datum.identity_element()}
        for k in word:
            out |= {v * self.gens[k] for v in out}
        return sorted(out, key=lambda x: (self.length(x), x.perm))

    # -- parabolic and coset machinery --------------------------------------------

    def delta_coords(self, idx):
        """Expansion of a subsystem root in the group's simple basis."""
        if self._delta_coords is None:
            cols = [self.datum.root(s) for s in self.simples]
            table = {}
            for p in self.positives:
                sol = solve_in_span(cols, self.datum.root(p))
                coeffs = tuple(int(x) for x in sol)
                if any(Fraction(c) != x for c, x in zip(coeffs, sol)) or \
                        any(c < 0 for c in coeffs):
                    raise RootSystemError("simple system failed integrality check")
                table[p] = coeffs
                table[self.datum.negate(p)] = tuple(-c for c in coeffs)
            self._delta_coords = table
        return self._delta_coords[idx]

    def root_support_positions(self, idx):
        return frozenset(k for k, c in enumerate(self.delta_coords(idx)) if c != 0)

    def parabolic_positive_set(self, positions):
        ps = frozenset(positions)
        return tuple(p for p in self.positives
                     if self.root_support_positions(p) <= ps)

    def in_parabolic(self, w, positions):
        """Membership in W_K: all inversions supported on K."""
        ps = frozenset(positions)
        neg = self.negative_set
        for p in self.positives:
            if w.perm[p] in neg and not self.root_support_positions(p) <= ps:
                return False
        return True

    def min_coset_rep(self, w, left=(), right=()):
        """Minimal representative of W_K1 w W_K2 by descent stripping."""
        changed = True
        while changed:
            changed = False
            for k in left:
                if (self.gens[k] * w).perm != w.perm and \
                        self.length(self.gens[k] * w) < self.length(w):
                    w = self.gens[k] * w
                    changed = True
            for k in right:
                if self.length(w * self.gens[k]) < self.length(w):
                    w = w * self.gens[k]
                    changed = True
        return w

    def min_double_coset_reps(self, left, right):
        """Minimal-length representatives of W_K1 \\ W / W_K2, sorted."""
        left = tuple(sorted(left))
        right = tuple(sorted(right))
        reps = {self.min_coset_rep(w, left, right) for w in self.elements()}
        return sorted(reps, key=lambda x: (self.length(x), x.perm))

    def one_sided_min(self, positions, side):
        """The set {}^K W (side='left') or W^K (side='right')."""
        neg = self.negative_set
        out = []
        for w in self.elements():
            if side == "left":
                ok = all(w.inverse().perm[self.simples[k]] not in neg
                         for k in positions)
            elif side == "right":
                ok = all(w.perm[self.simples[k]] not in neg for k in positions)
            else:
                raise RootSystemError("side must be 'left' or 'right'")
            if ok:
                out.append(w)
        return sorted(out, key=lambda x: (self.length(x), x.perm))


def longest_element(datum, nodes=None):
    """Longest element of the parabolic on a set of 1-based diagram nodes."""
    group = datum.weyl_group()
    if nodes is None:
        return group.longest_element()
    return group.longest_element([n - 1 for n in nodes])


def bruhat_leq(u, w, group=None):
    group = group or u.datum.weyl_group()
    return group.bruhat_leq(u, w)


def support_elt(w, group=None):
    """1-based simple letters appearing in a reduced expression of w."""
    group = group or w.datum.weyl_group()
    simple_nodes = {idx: n + 1 for n, idx in enumerate(w.datum._simple_index)}
    return frozenset(simple_nodes[group.simples[k]] for k in group.support(w))


def min_double_coset_reps(group, left_nodes, right_nodes):
    """Spec-level wrapper: node subsets of the full group's simple system."""
    return group.min_double_coset_reps(
        tuple(n - 1 for n in left_nodes), tuple(n - 1 for n in right_nodes))
