"""Exhaustive machine verification of the combinatorial lemmas.

Each ``verify_*`` function sweeps every instance of one lemma on a given
setup and returns a LemmaReport: a failure is a witness tuple, never an
exception.  Deep-level cell intersections are modeled by finite BN-pair
product rules on W_e (the strongest desk-scale reading of the hypotheses;
every report carries that modeling note).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .conditions import constant_M
from .rootsys import dynkin_components, sigma_orbits_on_nodes, support_root
from .twisted import PreconditionError, twisted_length_on

CELL_MODEL_NOTE = ("cell-intersection hypotheses modeled by BN-pair product "
                   "rules on W_e")


@dataclass
class LemmaReport:
    """Outcome of one exhaustive lemma sweep.

    ``failures`` empty means verified on the swept domain.  ``elapsed``
    is informational only and never serialized (reports must be
    byte-identical across runs).
    """

    lemma_id: str
    instances_checked: int = 0
    failures: tuple = ()
    notes: tuple = ()
    elapsed: float = 0.0

    @property
    def verified(self):
        return not self.failures


def _finish(report, t0):
    report.elapsed = time.monotonic() - t0
    return report


# ---------------------------------------------------------------------------
# Bruhat cell products
# ---------------------------------------------------------------------------

def bruhat_cell_product(group, u, word):
    """All w with BwB inside BuB times the product of the cells B s B.

    ``word`` is a list of positions into the group's simple system.  The
    fold rule per letter is Cell*s = {xs} if xs > x else {xs, x}.
    """
    cells = {u}
    for k in word:
        s = group.gens[k]
        nxt = set()
        for x in cells:
            xs = x * s
            if group.length(xs) > group.length(x):
                nxt.add(xs)
            else:
                nxt.add(xs)
                nxt.add(x)
        cells = nxt
    return frozenset(cells)


def bruhat_cell_product_left(group, word, u):
    """Cells of (product of B s B for s in word) times BuB, folded rightmost-first."""
    cells = {u}
    for k in reversed(word):
        s = group.gens[k]
        nxt = set()
        for x in cells:
            sx = s * x
            if group.length(sx) > group.length(x):
                nxt.add(sx)
            else:
                nxt.add(sx)
                nxt.add(x)
        cells = nxt
    return frozenset(cells)


def demazure_product(group, u, word):
    """Maximal element of the cell product (monoid fold)."""
    x = u
    for k in word:
        xs = x * group.gens[k]
        if group.length(xs) > group.length(x):
            x = xs
    return x


# ---------------------------------------------------------------------------
# Support lemmas
# ---------------------------------------------------------------------------

def _orbit_supports(setup):
    from .twisted import csigma_orbits
    d = setup.datum
    out = []
    for orbit in csigma_orbits(setup):
        supp = frozenset()
        for idx in orbit:
            supp |= support_root(d, d.root(idx))
        out.append((orbit, supp))
    return out


def verify_support_stable(setup):
    """Every c sigma orbit has a sigma-stable support set."""
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="support_stable")
    sigma = setup.sigma
    fails = []
    n = 0
    for orbit, supp in _orbit_supports(setup):
        n += 1
        image = frozenset(sigma.node_image(x) for x in supp)
        if image != supp:
            fails.append(("orbit_rep", orbit[0], tuple(sorted(supp)),
                          tuple(sorted(image))))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


def verify_support_connected(setup):
    """Every orbit support is the sigma-saturation of one diagram component."""
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="support_connected")
    d = setup.datum
    sigma = setup.sigma
    comps = dynkin_components(d)
    unions = set()
    for comp in comps:
        sat = set(comp)
        cur = set(comp)
        for _ in range(sigma.order - 1):
            cur = {sigma.node_image(x) for x in cur}
            sat |= cur
        unions.add(frozenset(sat))
    fails = []
    n = 0
    for orbit, supp in _orbit_supports(setup):
        n += 1
        if supp not in unions:
            fails.append(("orbit_rep", orbit[0], tuple(sorted(supp))))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


# ---------------------------------------------------------------------------
# Stable subsets of Delta_e and parabolic membership helpers
# ---------------------------------------------------------------------------

def in_parabolic_nodes(datum, w, nodes):
    """Membership in W_J for a 1-based node set J: inversions supported on J."""
    allowed = frozenset(nodes)
    n = datum.num_positive
    for p in range(n):
        if w.perm[p] >= n and not support_root(datum, datum.root(p)) <= allowed:
            return False
    return True


def _position_perm(group, root_perm):
    """Permutation induced on simple positions by a root permutation."""
    images = []
    for s in group.simples:
        img = root_perm[s]
        if img not in group.simples:
            return None
        images.append(group.simples.index(img))
    return tuple(images)


def stable_position_subsets(group, pos_perm, proper=False):
    """sigma-stable subsets of the group's simple positions, deterministic order."""
    rank = group.rank
    subsets = []
    for mask in range(1 << rank):
        K = tuple(k for k in range(rank) if mask >> k & 1)
        if proper and len(K) == rank:
            continue
        if all(pos_perm[k] in K for k in K):
            subsets.append(K)
    return sorted(subsets, key=lambda K: (len(K), K))


def verify_corollary_proper(setup, sd, cert, fpd):
    """For each proper stable K in Delta_e exhibit J with the two inclusions."""
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="corollary_proper")
    if cert is None or not cert.valid:
        raise PreconditionError("corollary needs a (*) certificate")
    d = setup.datum
    tw = setup.twisted
    group = fpd.group
    sig_perm = tw.act_perm(sd.sigma_I)
    pos_perm = _position_perm(group, sig_perm)
    if pos_perm is None:
        rep.failures = (("sigma_I does not stabilize Delta_e",),)
        return _finish(rep, t0)
    w_e = group.longest_element()
    w_0 = d.weyl_group().longest_element()
    w0we = w_0 * w_e
    sigma_I_weyl = sd.sigma_I[0]
    fails = []
    n = 0
    for K in stable_position_subsets(group, pos_perm, proper=True):
        n += 1
        K_roots = {group.simples[k] for k in K}
        ok = False
        for pos_i, beta in zip(sd.I_complement, sd.delta_I):
            if beta in K_roots:
                continue
            node_i = setup.c_word[pos_i - 1]
            orbit = next(o for o in sigma_orbits_on_nodes(d, setup.sigma)
                         if node_i in o)
            J = tuple(x for x in range(1, d.rank + 1) if x not in orbit)
            if not in_parabolic_nodes(d, sigma_I_weyl, J):
                continue
            if not in_parabolic_nodes(d, w0we, J):
                continue
            if all(in_parabolic_nodes(d, d.reflection(b), J) for b in K_roots):
                ok = True
                break
        if not ok:
            fails.append(("K", tuple(sorted(K_roots))))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


# ---------------------------------------------------------------------------
# Lemma partial: twisted Coxeter conjugation forces a coset transporter
# ---------------------------------------------------------------------------

def _twisted_coxeter_elements(group, K, pos_perm):
    """All sigma-Coxeter elements of the standard parabolic on positions K."""
    from itertools import permutations as _perms
    orbits = []
    seen = set()
    for k in K:
        if k in seen:
            continue
        orb = []
        j = k
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = pos_perm[j]
        orbits.append(tuple(orb))
    if not orbits:
        return [group.datum.identity_element()]
    out = set()
    choices = [()]
    for orb in orbits:
        choices = [c + (x,) for c in choices for x in orb]
    for combo in choices:
        for ordering in _perms(combo):
            w = group.datum.identity_element()
            for k in ordering:
                w = w * group.gens[k]
            out.add(w)
    return sorted(out, key=lambda w: (group.length(w), w.perm))


def verify_lemma_partial(group, sigma_root_perm):
    """Exhaustive check of the double-coset transporter lemma on one group.

    Sweeps all sigma-stable subset pairs (K1, K2), all sigma-Coxeter
    elements c1, c2 of the parabolics, and all w with c1 sigma(w) = w c2.
    """
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="lemma_partial")
    pos_perm = _position_perm(group, sigma_root_perm)
    if pos_perm is None:
        raise PreconditionError("automorphism must stabilize the simple system")
    elements = group.elements()
    size = len(sigma_root_perm)
    inv_sigma = [0] * size
    for i, img in enumerate(sigma_root_perm):
        inv_sigma[img] = i
    twists = {}
    for w in elements:
        perm = tuple(sigma_root_perm[w.perm[inv_sigma[i]]] for i in range(size))
        twists[w] = perm

    stables = stable_position_subsets(group, pos_perm)
    cox = {K: _twisted_coxeter_elements(group, K, pos_perm) for K in stables}
    reps_cache = {}
    fails = []
    n = 0
    for K1 in stables:
        for c1 in cox[K1]:
            buckets = {}
            for w in elements:
                rhs_perm = tuple(twists[w][j] for j in
                                 (w.inverse() * c1).perm)
                buckets.setdefault(rhs_perm, []).append(w)
            for K2 in stables:
                pair = (K1, K2)
                if pair not in reps_cache:
                    K1_roots = frozenset(group.simples[k] for k in K1)
                    K2_roots = frozenset(group.simples[k] for k in K2)
                    xs = []
                    for x in group.min_double_coset_reps(K1, K2):
                        if frozenset(x.perm[r] for r in K2_roots) == K1_roots:
                            xs.append(x)
                    reps_cache[pair] = xs
                xs = reps_cache[pair]
                for c2 in cox[K2]:
                    for w in buckets.get(c2.perm, ()):
                        n += 1
                        ok = any(group.in_parabolic(x.inverse() * w, K2)
                                 for x in xs)
                        if not ok:
                            fails.append(("K1", K1, "K2", K2,
                                          "w", group.reduced_word(w)))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


# ---------------------------------------------------------------------------
# Weyl-group kernels of the vanishing arguments
# ---------------------------------------------------------------------------

def fixed_subgroup_elements(setup, group):
    """Elements of the group fixed by the twisted Frobenius conjugation."""
    g = setup.twisted.act_perm(setup.c_sigma)
    ginv = [0] * len(g)
    for i, img in enumerate(g):
        ginv[img] = i
    out = []
    for w in group.elements():
        conj = tuple(g[w.perm[ginv[i]]] for i in range(len(g)))
        if conj == w.perm:
            out.append(w)
    return out


def verify_unstable_kernel(setup, sd, i, cert, fpd):
    """Cell-level hypothesis of the instability lemma implies the coset conclusion.

    For w in W_e outside the twisted-fixed subgroup: when the modeled cell
    intersection is nonempty, some proper stable K has
    w (c_I sigma_I)^i sigma_I^{-i} in w_e W_K.
    """
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="unstable_kernel", notes=(CELL_MODEL_NOTE,))
    if cert is None or not cert.valid:
        raise PreconditionError("unstable kernel needs a (*) certificate")
    tw = setup.twisted
    group = fpd.group
    sig_perm = tw.act_perm(sd.sigma_I)
    pos_perm = _position_perm(group, sig_perm)
    t_i = tw.mul(tw.power(setup.c_sigma, i), tw.power(tw.inv(sd.sigma_I), i))
    if t_i[1] != 0 or not group.is_member(t_i[0]):
        raise PreconditionError("(c sigma)^i sigma_I^{-i} left W_e")
    y_i = t_i[0]

    fixed = set(fixed_subgroup_elements(setup, group))
    c_I_word = group.reduced_word(sd.c_I)
    sig_pow_perm = tw.act_perm(tw.power(sd.sigma_I, i))
    sp_inv = [0] * len(sig_pow_perm)
    for a, b in enumerate(sig_pow_perm):
        sp_inv[b] = a
    c_I_tw = _conjugate_by_perm(sd.c_I, sig_pow_perm, sp_inv)
    c_I_tw_word = group.reduced_word(c_I_tw)
    si_inv = [0] * len(sig_perm)
    for a, b in enumerate(sig_perm):
        si_inv[b] = a

    proper_stable = stable_position_subsets(group, pos_perm, proper=True)
    w_e = group.longest_element()
    fails = []
    n = 0
    for w in group.elements():
        if w in fixed:
            continue
        n += 1
        w_i = w * y_i
        lhs = bruhat_cell_product_left(
            group, c_I_word, _conjugate_by_perm(w_i, sig_perm, si_inv))
        rhs = bruhat_cell_product(group, w_i, c_I_tw_word)
        if not lhs & rhs:
            continue
        target = w_e * w_i
        if not any(group.in_parabolic(target, K) for K in proper_stable):
            fails.append(("w", group.reduced_word(w), "i", i))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


def _conjugate_by_perm(w, perm, perm_inv):
    from .rootsys import WeylElement
    return WeylElement(w.datum,
                       tuple(perm[w.perm[perm_inv[k]]] for k in range(len(perm))))


def verify_nonempty_kernel(setup, sd, cert, fpd):
    """Word-level rigidity: the cell equation forces w = u in the stated cases.

    Sweeps i in 0..2N-1 and all pairs from the twisted-fixed subgroup; for
    each pair the equation w (c sigma)^i v sigma_I = u (c sigma)^{i+1}
    determines v, which must lie below c_I for the instance to count.
    """
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="nonempty_kernel", notes=(CELL_MODEL_NOTE,))
    if cert is None or not cert.valid:
        raise PreconditionError("nonempty kernel needs a (*) certificate")
    tw = setup.twisted
    group = fpd.group
    below = {v.perm: v for v in group.bruhat_interval_below(sd.c_I)}
    fixed = fixed_subgroup_elements(setup, group)
    sigma_trivial = tw.is_identity(sd.sigma_I)
    w_e = group.longest_element()
    fails = []
    n = 0
    for i in range(2 * cert.N):
        cs_i = tw.power(setup.c_sigma, i)
        cs_i1 = tw.power(setup.c_sigma, i + 1)
        for w in fixed:
            pre = tw.mul(tw.inv(cs_i), tw.make(w.inverse(), 0))
            for u in fixed:
                v_tw = tw.mul(tw.mul(pre, tw.make(u, 0)),
                              tw.mul(cs_i1, tw.inv(sd.sigma_I)))
                if v_tw[1] != 0 or v_tw[0].perm not in below:
                    continue
                n += 1
                claim_applies = (not sigma_trivial) or \
                    (sigma_trivial and (w * tw.power(tw.make(sd.c_I, 0), i)[0]) != w_e)
                if claim_applies and w != u:
                    fails.append(("i", i, "w", group.reduced_word(w),
                                  "u", group.reduced_word(u)))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)


# ---------------------------------------------------------------------------
# The base-q nonvanishing lemma
# ---------------------------------------------------------------------------

def verify_lemma_nonzero(setup, q):
    """Geometric sums over c sigma orbits are nonzero for the coweight family.

    The character family is (c sigma)^j(omega_O^vee) over sigma-orbits O;
    the structural bound |<chi, beta>| <= M < q is checked for the whole
    family first.
    """
    t0 = time.monotonic()
    rep = LemmaReport(lemma_id="lemma_nonzero")
    d = setup.datum
    tw = setup.twisted
    M = constant_M(d, setup.sigma)
    if q <= M:
        raise PreconditionError(f"need q > M = {M}, got q = {q}")
    from .rootsys import sigma_orbit_coweight as _soc
    from .twisted import csigma_orbits
    N0 = tw.element_order(setup.c_sigma)
    family = []
    for orbit in sigma_orbits_on_nodes(d, setup.sigma):
        chi = _soc(d, setup.sigma, orbit)
        for j in range(N0):
            family.append(tw.act_coweight(tw.power(setup.c_sigma, j), chi))

    fails = []
    n = 1
    bound = 0
    pairings = []
    for chi in family:
        row = [d.pairing(d.root(idx), chi) for idx in range(len(d.all_roots))]
        if any(x.denominator != 1 for x in row):
            fails.append(("family pairing not integral",))
        row = [int(x) for x in row]
        bound = max(bound, max(abs(x) for x in row))
        pairings.append(row)
    if bound > M:
        fails.append(("bound", bound, "M", M))

    perm = tw.act_perm(setup.c_sigma)
    inv = [0] * len(perm)
    for a, b in enumerate(perm):
        inv[b] = a
    inv_powers = [list(range(len(perm)))]
    for _ in range(N0 - 1):
        inv_powers.append([inv[x] for x in inv_powers[-1]])

    orbits = csigma_orbits(setup)
    for orbit in orbits:
        orbit_set = set(orbit)
        for chi, row in zip(family, pairings):
            if all(row[b] == 0 for b in orbit_set):
                continue  # central on C: outside the hypothesis
            if any(abs(row[b]) >= q for b in orbit_set):
                continue
            for gamma in orbit:
                n += 1
                s = sum(q ** j * row[inv_powers[j][gamma]] for j in range(N0))
                if s == 0:
                    fails.append(("orbit_rep", orbit[0], "gamma", gamma,
                                  "chi", tuple(str(x) for x in chi)))
    rep.instances_checked = n
    rep.failures = tuple(fails)
    return _finish(rep, t0)
