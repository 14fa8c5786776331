"""Named families of setups swept by the verification suites.

A "case instance" is a twisted setup built from the constructive tables:
the canonical word for the family together with one representative per
coweight class.  Twist names: split, flip (order-2 symmetry), triality
(the order-3 symmetry of D4).
"""
from __future__ import annotations

from .rootsys import (
    DiagramAut,
    build_product,
    build_root_system,
    diagram_automorphisms,
    identity_aut,
)
from .twisted import TwistedSetup, canonical_coxeter, case_table


def named_twists(datum):
    """(name, automorphism) pairs available on a datum, deterministic order."""
    auts = diagram_automorphisms(datum)
    out = [("split", identity_aut(datum))]
    flips = [a for a in auts if a.order == 2]
    if datum.type_label in ("A", "D") or (datum.type_label == "E" and datum.rank == 6):
        if flips:
            out.append(("flip", flips[0]))
    if datum.type_label == "D" and datum.rank == 4:
        tri = [a for a in auts if a.order == 3]
        if tri:
            out.append(("triality", tri[0]))
    return out


def twist_by_name(datum, name):
    for n, aut in named_twists(datum):
        if n == name:
            return aut
    raise ValueError(f"no twist named {name!r} on {datum.type_label}{datum.rank}")


def connected_data(max_rank):
    """All irreducible root data of rank <= max_rank, deterministic order."""
    out = []
    for rank in range(1, max_rank + 1):
        out.append(build_root_system("A", rank))
        if rank >= 2:
            out.append(build_root_system("B", rank))
        if rank >= 3:
            out.append(build_root_system("C", rank))
        if rank >= 4:
            out.append(build_root_system("D", rank))
    if max_rank >= 2:
        out.append(build_root_system("G", 2))
    if max_rank >= 4:
        out.append(build_root_system("F", 4))
    for r in (6, 7, 8):
        if max_rank >= r:
            out.append(build_root_system("E", r))
    return out


def connected_twisted_pairs(max_rank):
    """(label, datum, twist-name, aut) over all twists of connected types."""
    out = []
    for datum in connected_data(max_rank):
        for name, aut in named_twists(datum):
            prefix = {"split": "", "flip": "2", "triality": "3"}[name]
            label = f"{prefix}{datum.type_label}{datum.rank}"
            out.append((label, datum, name, aut))
    return out


def case_instances(max_rank):
    """All constructive-table setups of rank <= max_rank.

    Yields (label, setup) with the canonical word for the family and one
    setup per coweight class representative (including mu = 0).
    """
    out = []
    for label, datum, name, aut in connected_twisted_pairs(max_rank):
        case_id, word, reps, _flags = case_table(datum, aut)
        for mu_vec, _I in reps:
            k = next((i + 1 for i, x in enumerate(mu_vec) if x), 0)
            mu_label = f"w{k}" if k else "0"
            out.append((f"{label}:mu={mu_label}",
                        TwistedSetup(datum, aut, word, mu_vec)))
    return out


def swapped_product_setups(max_component_rank):
    """Products T x T with the factor-swapping automorphism and product word."""
    out = []
    specs = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3)]
    for lbl, rk in specs:
        if rk > max_component_rank:
            continue
        datum = build_product([(lbl, rk), (lbl, rk)])
        swap = DiagramAut(
            tuple(list(range(rk, 2 * rk)) + list(range(rk))), 2)
        word = canonical_coxeter(datum, swap)
        setup = TwistedSetup(datum, swap, word, (0,) * datum.rank)
        out.append((f"{lbl}{rk}x{lbl}{rk}:swap", setup))
    return out
