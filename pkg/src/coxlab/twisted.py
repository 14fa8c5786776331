"""Twisted Coxeter machinery.

Everything here lives in W ⋊ <sigma> for a diagram automorphism sigma: the
canonical sigma-Coxeter words, the rational fixed point e of mu + c sigma,
its integrality subsystem Phi_e, the index-subsequence calculus splitting
c sigma = c_I sigma_I, and the constructive sequence tables with their
mechanical verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import (
    integer_solve,
    mat_mul,
    mat_vec,
    rational_inverse,
    rational_solve,
    smith_normal_form,
)
from .rootsys import (
    DiagramAut,
    ReflectionGroup,
    RootDatum,
    RootSystemError,
    WeylElement,
    aut_root_permutation,
    identity_aut,
    sigma_orbits_on_nodes,
)


class SetupError(ValueError):
    """Invalid twisted setup supplied by a caller."""


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class InternalConsistencyError(AssertionError):
    """A structural identity the construction guarantees failed to hold."""


class UnsupportedCaseError(ValueError):
    """Setup outside the constructive tables (exit code 3 territory)."""


class TwistedGroup:
    """Operations in W ⋊ <sigma>, elements encoded as (Weyl part, sigma power).

    Multiplication is (w, a)(v, b) = (w * sigma^a(v), a + b), where sigma
    acts on Weyl elements through its extension to the root indices.
    """

    def __init__(self, datum, sigma):
        self.datum = datum
        self.sigma = sigma
        self.sigma_perm = aut_root_permutation(datum, sigma)
        self._sigma_powers = [tuple(range(len(self.sigma_perm)))]
        for _ in range(sigma.order - 1):
            prev = self._sigma_powers[-1]
            self._sigma_powers.append(tuple(self.sigma_perm[i] for i in prev))

    def sigma_power_perm(self, k):
        return self._sigma_powers[k % self.sigma.order]

    def twist_weyl(self, w, k=1):
        """sigma^k conjugate of a Weyl element (the automorphism action)."""
        s = self.sigma_power_perm(k)
        sinv = self.sigma_power_perm(-k % self.sigma.order)
        perm = tuple(s[w.perm[sinv[i]]] for i in range(len(w.perm)))
        return WeylElement(self.datum, perm)

    def make(self, w, power):
        return (w, power % self.sigma.order)

    def identity(self):
        return (self.datum.identity_element(), 0)

    def mul(self, a, b):
        return (a[0] * self.twist_weyl(b[0], a[1]), (a[1] + b[1]) % self.sigma.order)

    def inv(self, a):
        w, k = a
        ki = (-k) % self.sigma.order
        return (self.twist_weyl(w.inverse(), ki), ki)

    def power(self, a, n):
        out = self.identity()
        if n < 0:
            a = self.inv(a)
            n = -n
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def is_identity(self, a):
        return a[1] % self.sigma.order == 0 and a[0].is_identity()

    def element_order(self, a):
        k = 1
        b = a
        while not self.is_identity(b):
            b = self.mul(b, a)
            k += 1
        return k

    def act_index(self, a, idx):
        """Image of a root index under (w, k): first sigma^k, then w."""
        return a[0].perm[self.sigma_power_perm(a[1])[idx]]

    def act_perm(self, a):
        sp = self.sigma_power_perm(a[1])
        wp = a[0].perm
        return tuple(wp[sp[i]] for i in range(len(wp)))

    def act_coweight(self, a, vec):
        d = self.datum
        rank = d.rank
        pos = tuple(Fraction(0) for _ in range(rank))
        out = [Fraction(0)] * rank
        sp = self.sigma.perm_on_simples
        twisted = [Fraction(0)] * rank
        v = list(vec)
        for _ in range(a[1] % self.sigma.order):
            v = self._sigma_coweight(v)
        cols = []
        for j in range(rank):
            img = a[0].perm[d._simple_index[j]]
            cols.append(d.all_coroots[img])
        return tuple(sum(Fraction(cols[j][i]) * v[j] for j in range(rank))
                     for i in range(rank))

    def _sigma_coweight(self, vec):
        out = [Fraction(0)] * self.datum.rank
        for i, x in enumerate(vec):
            out[self.sigma.perm_on_simples[i]] = x
        return out


def twisted_length_on(positives, datum, perm):
    """Number of given positive root indices sent negative by a root permutation."""
    n = datum.num_positive
    return sum(1 for p in positives if perm[p] >= n)


class TwistedSetup:
    """A tuple (root datum, sigma, sigma-Coxeter word, integral coweight mu).

    ``c_word`` holds 1-based node letters; ``mu`` holds integer coordinates
    in the fundamental-coweight basis.
    """

    def __init__(self, datum, sigma, c_word, mu):
        self.datum = datum
        self.sigma = sigma
        self.c_word = tuple(int(x) for x in c_word)
        self.mu = tuple(int(x) for x in mu)
        if len(self.mu) != datum.rank:
            raise SetupError(
                f"mu needs {datum.rank} coweight coordinates, got {len(self.mu)}")
        orbits = sigma_orbits_on_nodes(datum, sigma)
        hits = {}
        for node in self.c_word:
            if not 1 <= node <= datum.rank:
                raise SetupError(f"c word letter {node} out of range 1..{datum.rank}")
            orb = next(o for o in orbits if node in o)
            hits[orb] = hits.get(orb, 0) + 1
        if len(self.c_word) != len(orbits) or any(v != 1 for v in hits.values()) \
                or len(hits) != len(orbits):
            raise SetupError(
                "c word must contain exactly one letter from each sigma-orbit "
                f"(orbits {orbits}, word {self.c_word})")
        self.twisted = TwistedGroup(datum, sigma)
        self.c = datum.element_from_word(self.c_word)
        if self.c.length() != len(self.c_word):
            raise SetupError("c word is not reduced")
        self.c_sigma = self.twisted.make(self.c, 1)
        self.mu_coroot = tuple(
            sum(Fraction(self.mu[j]) * datum.fundamental_coweights[j][i]
                for j in range(datum.rank))
            for i in range(datum.rank))

    @property
    def r(self):
        return len(self.c_word)

    def describe(self):
        return {
            "type": self.datum.type_label,
            "rank": self.datum.rank,
            "sigma": [i + 1 for i in self.sigma.perm_on_simples],
            "c": list(self.c_word),
            "mu": list(self.mu),
        }


def is_twisted_coxeter(datum, sigma, word):
    """True iff the word is reduced and hits each sigma-orbit exactly once."""
    try:
        TwistedSetup(datum, sigma, word, (0,) * datum.rank)
        return True
    except SetupError:
        return False


def canonical_coxeter(datum, sigma):
    """Orbit representatives in increasing node order, as a word."""
    return tuple(min(o) for o in sorted(sigma_orbits_on_nodes(datum, sigma)))


@dataclass(frozen=True)
class FixedPointData:
    """The point e with mu + c sigma(e) = e, and its integrality subsystem."""

    e: tuple
    phi_e_positive: tuple           # root indices of Phi_e^+
    delta_e: tuple                  # root indices of the simple system of Phi_e
    group: ReflectionGroup          # W_e inside the ambient Weyl group

    @property
    def is_empty(self):
        return not self.phi_e_positive


def fixed_point_e(setup):
    """Solve (1 - c sigma) e = mu exactly over Q and read off Phi_e, Delta_e.

    Raises PreconditionError when 1 - c sigma is singular on the coroot
    space (c was not twisted-elliptic).
    """
    d = setup.datum
    rank = d.rank
    tw = setup.twisted
    cs = setup.c_sigma
    cols = []
    for j in range(rank):
        v = [Fraction(int(i == j)) for i in range(rank)]
        cols.append(tw.act_coweight(cs, v))
    A = [[Fraction(int(i == j)) - cols[j][i] for j in range(rank)] for i in range(rank)]
    try:
        e = tuple(rational_solve(A, list(setup.mu_coroot)))
    except Exception as exc:
        raise PreconditionError(
            "1 - c*sigma is singular on QPhi^vee; c is not sigma-elliptic") from exc
    phi_pos = tuple(i for i in range(d.num_positive)
                    if d.pairing(d.root(i), e).denominator == 1)
    group = ReflectionGroup.from_positive_roots(d, phi_pos)
    return FixedPointData(e=e, phi_e_positive=phi_pos,
                          delta_e=group.simples, group=group)


@dataclass(frozen=True)
class SubsequenceData:
    """The derived triple for an index subsequence I of the c word.

    ``I`` and ``I_complement`` are 1-based positions into the word;
    ``delta_I`` lists the root indices beta_j in word order.
    """

    I: tuple
    I_complement: tuple
    sigma_I: tuple                  # twisted element (WeylElement, power)
    c_I: WeylElement
    delta_I: tuple


def subsequence_data(setup, I):
    """Split c sigma = c_I sigma_I along the subsequence I (1-based positions)."""
    r = setup.r
    I = tuple(sorted(int(i) for i in I))
    if any(not 1 <= i <= r for i in I) or len(set(I)) != len(I):
        raise SetupError(f"I must be a subsequence of 1..{r}, got {I}")
    comp = tuple(j for j in range(1, r + 1) if j not in I)
    d = setup.datum
    tw = setup.twisted

    prefix = [d.identity_element()]
    for i in I:
        node = setup.c_word[i - 1]
        prefix.append(prefix[-1] * d.simple_reflection(node))

    betas = []
    for j in comp:
        t = sum(1 for i in I if i < j)
        alpha_idx = d.simple_root_index(setup.c_word[j - 1])
        betas.append(prefix[t].perm[alpha_idx])

    c_I = d.identity_element()
    for b in betas:
        c_I = c_I * d.reflection(b)
    sigma_I = tw.make(prefix[len(I)], 1)

    product = tw.mul(tw.make(c_I, 0), sigma_I)
    if product != setup.c_sigma:
        raise InternalConsistencyError(
            f"product identity c sigma = c_I sigma_I failed for I={I}")
    return SubsequenceData(I=I, I_complement=comp, sigma_I=sigma_I,
                           c_I=c_I, delta_I=tuple(betas))


@dataclass
class TheoremCoxeterReport:
    """Mechanical verdicts for the three sequence properties and the corollary."""

    stable: bool                    # sigma_I(Delta_e) = Delta_e
    transversal: bool               # Delta_I is a sigma_I-orbit transversal of Delta_e
    faithful: bool                  # sigma_I^i = 1  <=>  sigma_I^i fixes Delta_e pointwise
    coxeter_conclusion: bool        # c_I is sigma_I-Coxeter in W_e
    degenerate_empty: bool = False  # Delta_e empty: faithfulness holds by convention
    witnesses: tuple = ()

    @property
    def all_pass(self):
        return self.stable and self.transversal and self.faithful \
            and self.coxeter_conclusion


def _orbits_of_perm_on(perm_map, items):
    seen = set()
    orbits = []
    for x in sorted(items):
        if x in seen:
            continue
        orb = []
        y = x
        while y not in seen:
            seen.add(y)
            orb.append(y)
            y = perm_map(y)
        orbits.append(tuple(orb))
    return tuple(orbits)


def verify_theorem_coxeter(setup, sd, fpd=None):
    """Check the three defining properties of a candidate sequence I.

    Failures are data: the report carries a witness per failed property.
    When Delta_e is empty every property except stability is vacuous and
    the faithfulness clause is passed by convention (flagged on the
    report), since there is no root left to separate powers of sigma_I.
    """
    if fpd is None:
        fpd = fixed_point_e(setup)
    tw = setup.twisted
    d = setup.datum
    delta_e = set(fpd.delta_e)
    witnesses = []

    sig_perm = tw.act_perm(sd.sigma_I)
    stable = all(sig_perm[i] in delta_e for i in delta_e)
    if not stable:
        bad = next(i for i in delta_e if sig_perm[i] not in delta_e)
        witnesses.append(("stable", d.root(bad), d.root(sig_perm[bad])))

    transversal = False
    orbits = ()
    if stable:
        orbits = _orbits_of_perm_on(lambda i: sig_perm[i], delta_e)
        in_delta = all(b in delta_e for b in sd.delta_I)
        one_per = len(sd.delta_I) == len(orbits) and all(
            len([b for b in sd.delta_I if b in orb]) == 1 for orb in orbits)
        transversal = in_delta and one_per
        if not transversal:
            witnesses.append(("transversal", [d.root(b) for b in sd.delta_I],
                              [[d.root(x) for x in o] for o in orbits]))

    order = tw.element_order(sd.sigma_I)
    if not delta_e:
        faithful = True
    else:
        faithful = True
        power = tw.identity()
        for i in range(1, order + 1):
            power = tw.mul(power, sd.sigma_I)
            fixes = all(tw.act_perm(power)[b] == b for b in delta_e)
            if fixes != tw.is_identity(power):
                faithful = False
                witnesses.append(("faithful", i, fixes, tw.is_identity(power)))
                break

    conclusion = False
    if stable and transversal:
        ell_e = twisted_length_on(fpd.phi_e_positive, d, sd.c_I.perm)
        conclusion = ell_e == len(sd.delta_I) == len(orbits) and \
            fpd.group.is_member(sd.c_I)
        if not conclusion:
            witnesses.append(("coxeter", ell_e, len(sd.delta_I), len(orbits)))

    return TheoremCoxeterReport(
        stable=stable, transversal=transversal, faithful=faithful,
        coxeter_conclusion=conclusion, degenerate_empty=not delta_e,
        witnesses=tuple(witnesses))


# ---------------------------------------------------------------------------
# Lattice reduction of mu and the constructive case tables
# ---------------------------------------------------------------------------

def coweight_action_matrix(setup, elt=None):
    """Integer matrix of c sigma (or a given twisted element) on the coweight lattice."""
    d = setup.datum
    rank = d.rank
    tw = setup.twisted
    elt = setup.c_sigma if elt is None else elt
    cart = [[Fraction(x) for x in row] for row in d.cartan]
    inv = rational_inverse(cart)
    cols = []
    for j in range(rank):
        omega = [inv[i][j] for i in range(rank)]
        img = tw.act_coweight(elt, omega)
        col = mat_vec(cart, list(img))
        cols.append(col)
    M = [[cols[j][i] for j in range(rank)] for i in range(rank)]
    out = [[int(x) for x in row] for row in M]
    if any(Fraction(out[i][j]) != M[i][j] for i in range(rank) for j in range(rank)):
        raise InternalConsistencyError("c sigma does not preserve the coweight lattice")
    return out


def mu_class_data(setup):
    """Smith data of (1 - c sigma) on the coweight lattice plus mu's class."""
    rank = setup.datum.rank
    M = coweight_action_matrix(setup)
    A = [[int(i == j) - M[i][j] for j in range(rank)] for i in range(rank)]
    D, U, V = smith_normal_form(A)
    factors = tuple(D[i][i] for i in range(rank))
    if any(f == 0 for f in factors):
        raise PreconditionError("1 - c sigma is singular on the coweight lattice")

    def class_of(mu_vec):
        y = mat_vec(U, list(mu_vec))
        return tuple(y[i] % factors[i] for i in range(rank))

    return factors, class_of


def _omega(rank, k):
    return tuple(int(j == k - 1) for j in range(rank))


def _case_A(rank):
    n = rank + 1
    word = tuple(range(1, n))
    reps = [((0,) * rank, None)]
    for k in range(1, n):
        m = _gcd(k, n)
        comp = {(t * n) // m for t in range(1, m)}
        I = tuple(i for i in range(1, n) if i not in comp)
        reps.append((_omega(rank, k), I))
    return word, reps


def _case_2A(rank, sigma):
    n = rank + 1
    word = tuple(range(1, n // 2 + 1))
    reps = [((0,) * rank, None), (_omega(rank, 1), (n // 2,))]
    return word, reps


def _case_B(rank):
    word = tuple(range(1, rank + 1))
    return word, [((0,) * rank, None), (_omega(rank, 1), (rank,))]


def _case_C(rank):
    word = tuple(range(1, rank + 1))
    top = rank if rank % 2 == 1 else rank - 1
    I = tuple(range(1, top + 1, 2))
    return word, [((0,) * rank, None), (_omega(rank, rank), I)]


def _case_D(rank):
    # The printed sequences for mu = omega_{n-1} are garbled in places: the
    # even branch ends in a literal "4" and the odd branch does not parse as
    # an increasing sequence.  We take the closest literal reading as the
    # published candidate; when it fails verification construct_I flags it
    # and falls back to exhaustive search (which lands on the evident
    # pattern: trailing n instead of 4, and {n-2, n-1, n} for odd n).
    n = rank
    word = tuple(range(1, n + 1))
    reps = [((0,) * rank, None), (_omega(rank, 1), (n - 1, n))]
    if n % 2 == 0:
        if n % 4 == 0:
            I = tuple(sorted(set(range(1, n - 2, 2)) | {4}))
        else:
            I = tuple(sorted(set(range(1, n - 2, 2)) | {n - 1}))
    else:
        I = tuple(sorted(set(range(1, n - 4, 2)) | {n - 4, n - 3, n - 2, n}))
    reps.append((_omega(rank, n - 1), I))
    reps.append((_omega(rank, n), "search"))
    return word, reps


def _case_E6(rank):
    # the published sequence lists simple-reflection letters (1,3,5,6);
    # translated to positions in the word s1 s3 s4 s2 s5 s6 this is (1,2,5,6)
    word = (1, 3, 4, 2, 5, 6)
    return word, [((0,) * 6, None), (_omega(6, 1), (1, 2, 5, 6)),
                  (_omega(6, 6), "search")]


def _case_E7(rank):
    # published letters (7,5,2) sit at positions (1,3,5) of the word
    word = (7, 6, 5, 4, 2, 3, 1)
    return word, [((0,) * 7, None), (_omega(7, 7), (1, 3, 5))]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def case_table(datum, sigma):
    """Canonical word and (mu representative, I) table for the setup family.

    Returns (case_id, word, reps, flags); ``reps`` entries map an integral
    coweight representative to a position sequence, ``None`` for the empty
    sequence, or ``"search"`` for classes the source text resolves only by
    diagram symmetry (handled by exhaustive subsequence search).
    """
    label, rank = datum.type_label, datum.rank
    flags = []
    if sigma.is_identity():
        if label == "A":
            return "A-split", *_case_A(rank), flags
        if label == "B":
            return "B-split", *_case_B(rank), flags
        if label == "C":
            return "C-split", *_case_C(rank), flags
        if label == "D":
            word, reps = _case_D(rank)
            return "D-split", word, reps, flags
        if label == "E" and rank == 6:
            return "E6-split", *_case_E6(rank), flags
        if label == "E" and rank == 7:
            word, reps = _case_E7(rank)
            flags.append("source case is labeled E6 but uses node 7; treated as E7")
            return "E7-split", word, reps, flags
    # everything else: the quotient is trivial or handled generically
    word = canonical_coxeter(datum, sigma)
    return "generic", word, [((0,) * rank, None)], flags


def _search_sequence(setup, fpd=None):
    """Deterministic exhaustive search for a sequence passing all properties."""
    if fpd is None:
        fpd = fixed_point_e(setup)
    r = setup.r
    candidates = sorted(
        (tuple(i + 1 for i in range(r) if mask >> i & 1) for mask in range(1 << r)),
        key=lambda t: (len(t), t))
    for I in candidates:
        sd = subsequence_data(setup, I)
        if verify_theorem_coxeter(setup, sd, fpd).all_pass:
            return I
    return None


@dataclass
class Construction:
    """construct_I output: the sequence plus how it was found."""

    sd: SubsequenceData
    case_id: str
    mu_representative: tuple
    moves: tuple
    flags: tuple
    report: TheoremCoxeterReport


def _rotation_moves(word, sigma):
    """The two admissible conjugation moves applied to a word."""
    r = len(word)
    left = word[1:] + (sigma.node_image(word[0]),)
    right = (sigma.inverse_node(word[-1]),) + word[:-1]
    return (("L", word[0], left), ("R", sigma.inverse_node(word[-1]), right))


def _find_move_chain(start, target, sigma):
    """Breadth-first rotation chain from one word to another, or None."""
    if start == target:
        return ()
    frontier = [(start, ())]
    seen = {start}
    bound = 2 * len(start) * sigma.order + 2
    for _ in range(bound):
        nxt = []
        for word, chain in frontier:
            for side, alpha, new in _rotation_moves(word, sigma):
                if new == target:
                    return chain + ((side, alpha),)
                if new not in seen:
                    seen.add(new)
                    nxt.append((new, chain + ((side, alpha),)))
        frontier = nxt
        if not frontier:
            break
    return None


def transport_positions(I, r, side):
    """Move a position set along a rotation: L shifts down, R shifts up."""
    if side == "L":
        return tuple(sorted(r if p == 1 else p - 1 for p in I))
    return tuple(sorted(1 if p == r else p + 1 for p in I))


def conjugate_reduction(setup, alpha_node, I=None, side="auto"):
    """Conjugation move c -> s_alpha c sigma(s_alpha), with I transported.

    ``alpha_node`` must be the first letter of the word or the sigma
    preimage of the last one.  Returns (new setup, transported I or None).
    The transported data is re-verified; a failure would contradict the
    transport lemma and raises InternalConsistencyError.
    """
    word = setup.c_word
    r = len(word)
    is_left = alpha_node == word[0]
    is_right = alpha_node == setup.sigma.inverse_node(word[-1])
    if side == "auto":
        side = "L" if is_left else ("R" if is_right else None)
    if side == "L" and not is_left or side == "R" and not is_right or side is None:
        raise PreconditionError(
            f"alpha must be the first letter {word[0]} or the sigma-preimage "
            f"{setup.sigma.inverse_node(word[-1])} of the last letter")
    if side == "L":
        new_word = word[1:] + (setup.sigma.node_image(word[0]),)
    else:
        new_word = (alpha_node,) + word[:-1]
    d = setup.datum
    s = d.simple_reflection(alpha_node)
    rank = d.rank
    mu_new_coroot = s.apply(setup.mu_coroot, basis="coroot")
    cart = [[Fraction(x) for x in row] for row in d.cartan]
    mu_new = mat_vec(cart, list(mu_new_coroot))
    mu_new_int = tuple(int(x) for x in mu_new)
    if any(Fraction(a) != b for a, b in zip(mu_new_int, mu_new)):
        raise InternalConsistencyError("reflected mu left the coweight lattice")
    new_setup = TwistedSetup(d, setup.sigma, new_word, mu_new_int)
    if I is None:
        return new_setup, None
    new_I = transport_positions(I, r, side)
    sd = subsequence_data(new_setup, new_I)
    report = verify_theorem_coxeter(new_setup, sd)
    if not report.all_pass:
        raise InternalConsistencyError(
            f"transported sequence {new_I} failed verification: "
            f"{report.witnesses}")
    return new_setup, new_I


def construct_I(setup):
    """Produce a sequence I for the setup, following the constructive tables.

    The setup's word must be the table's canonical word or reachable from
    it by rotation moves; mu is reduced modulo (1 - c sigma)P to a listed
    representative.  The result always passes verify_theorem_coxeter.
    """
    case_id, canon_word, reps, flags = case_table(setup.datum, setup.sigma)
    flags = list(flags)
    chain = _find_move_chain(canon_word, setup.c_word, setup.sigma)
    if chain is None:
        raise UnsupportedCaseError(
            f"c word {setup.c_word} is not reachable from the canonical word "
            f"{canon_word} by conjugation moves")

    # pull the user's mu back along the chain to the canonical word
    d = setup.datum
    cart = [[Fraction(x) for x in row] for row in d.cartan]
    mu_back = setup.mu
    for side, alpha in reversed(chain):
        s = d.simple_reflection(alpha)
        cor = tuple(sum(Fraction(mu_back[j]) * d.fundamental_coweights[j][i]
                        for j in range(d.rank)) for i in range(d.rank))
        mu_back = tuple(int(x) for x in mat_vec(cart, list(s.apply(cor, basis="coroot"))))

    base = TwistedSetup(d, setup.sigma, canon_word, mu_back)
    factors, class_of = mu_class_data(base)
    target = class_of(mu_back)
    rep_mu, rep_I = None, None
    for mu_vec, I in reps:
        if class_of(mu_vec) == target:
            rep_mu, rep_I = mu_vec, I
            break
    if rep_mu is None:
        raise UnsupportedCaseError(
            f"mu class {target} (invariant factors {factors}) has no table entry")

    canon_setup = TwistedSetup(d, setup.sigma, canon_word, rep_mu)
    if rep_I is None:
        I0 = ()
    elif rep_I == "search":
        I0 = _search_sequence(canon_setup)
        if I0 is None:
            raise UnsupportedCaseError(
                f"no sequence passes verification for class {target}")
        flags.append(
            f"class {target}: sequence found by exhaustive search "
            "(source resolves this class only by diagram symmetry)")
    else:
        I0 = tuple(rep_I)
        fpd0 = fixed_point_e(canon_setup)
        sd0 = subsequence_data(canon_setup, I0)
        if not verify_theorem_coxeter(canon_setup, sd0, fpd0).all_pass:
            fallback = _search_sequence(canon_setup, fpd0)
            if fallback is None:
                raise UnsupportedCaseError(
                    f"published sequence {I0} fails and no substitute exists")
            flags.append(
                f"published sequence {I0} for class {target} fails verification; "
                f"substituted searched sequence {fallback} (flagged, not silent)")
            I0 = fallback

    # transport forward along the chain
    cur_setup, cur_I = canon_setup, I0
    for side, alpha in chain:
        cur_setup, cur_I = conjugate_reduction(cur_setup, alpha, cur_I, side=side)

    sd = subsequence_data(setup, cur_I)
    report = verify_theorem_coxeter(setup, sd)
    if not report.all_pass:
        raise InternalConsistencyError(
            f"constructed sequence {cur_I} failed final verification")
    if report.degenerate_empty:
        flags.append("Delta_e is empty; faithfulness clause holds by convention")
    return Construction(sd=sd, case_id=case_id, mu_representative=tuple(rep_mu),
                        moves=tuple(chain), flags=tuple(flags), report=report)


def csigma_orbits(setup):
    """Orbits of alpha -> c sigma(alpha) on the full root set, deterministic."""
    perm = setup.twisted.act_perm(setup.c_sigma)
    return _orbits_of_perm_on(lambda i: perm[i],
                              range(len(setup.datum.all_roots)))
