#!/usr/bin/env python3
"""Regenerate data/unipotent_families.json.

Classical types (B_n, C_n, D_n) are derived from Lusztig symbols: a family is
the set of symbols sharing the same multiset of entries.  Type A families are
singletons labelled by partitions.  G2 is entered by hand.

Members carry:
  label      unipotent character label
  phi        label of the irreducible Weyl group character for principal-series
             members (null otherwise)
  m          position of the member in the M(Gamma) ordering produced by
             mbound::m_set (identity class first, trivial character first)
  special    true for the special member; its row of A(F) is the positive row

Usage: tools/gen_families.py > data/unipotent_families.json
"""
import itertools
import json
import sys
from collections import defaultdict


def partitions(n, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def bipartitions(n):
    for k in range(n + 1):
        for a in partitions(k):
            for b in partitions(n - k):
                yield a, b


def part_str(p):
    return "".join(str(x) for x in p) if all(x < 10 for x in p) else ",".join(map(str, p))


def bip_str(a, b):
    return f"{part_str(a)}.{part_str(b)}"


def row(part, length):
    """Symbol row: parts padded to `length`, ascending, plus (i-1)."""
    p = sorted(part)
    p = [0] * (length - len(p)) + p
    return tuple(x + i for i, x in enumerate(p))


def entries_key(top, bottom, size):
    """Shift both rows to a fixed total length so entry multisets compare."""
    shift = (size - (len(top) + len(bottom))) // 2
    t = tuple(range(shift)) + tuple(x + shift for x in top)
    b = tuple(range(shift)) + tuple(x + shift for x in bottom)
    return tuple(sorted(t + b))


def is_special_b(top, bottom):
    # top has one more entry: s1 <= t1 <= s2 <= ... <= s_{m+1}
    for i in range(len(bottom)):
        if not (top[i] <= bottom[i] <= top[i + 1]):
            return False
    return True


def is_special_d(top, bottom):
    def inter(s, t):
        return all(s[i] <= t[i] and (i + 1 >= len(s) or t[i] <= s[i + 1]) for i in range(len(s)))
    return inter(top, bottom) or inter(bottom, top)


def classical_families(letter, n):
    symbols = []  # (label, phi, top, bottom)
    if letter in ("B", "C"):
        d = 1
        while (d * d - 1) // 4 <= n:
            s = (d - 1) // 2
            rest = n - s * (s + 1)
            for a, b in bipartitions(rest):
                m = max(len(a) - d, len(b), 0) + 1
                top, bottom = row(a, m + d), row(b, m)
                if d == 1:
                    label, phi = bip_str(a, b), bip_str(a, b)
                else:
                    label, phi = f"{letter}{n}:{bip_str(a, b)}[d={d}]" if rest else f"{letter}{n}[cusp]", None
                symbols.append((label, phi, top, bottom))
            d += 2
        special = is_special_b
    elif letter == "D":
        seen = set()
        for a, b in bipartitions(n):
            key = tuple(sorted([a, b]))
            if key in seen:
                continue
            seen.add(key)
            m = max(len(a), len(b)) + 1
            top, bottom = row(a, m), row(b, m)
            if a == b:
                for sign in "+-":
                    lab = bip_str(a, b) + sign
                    symbols.append((lab, lab, top, bottom))
            else:
                lab = bip_str(*key)
                symbols.append((lab, lab, top, bottom))
        d = 4
        while d * d // 4 <= n:
            rest = n - d * d // 4
            for a, b in bipartitions(rest):
                m = max(len(a) - d, len(b), 0) + 1
                top, bottom = row(a, m + d), row(b, m)
                label = f"D{n}:{bip_str(a, b)}[d={d}]" if rest else f"D{n}[cusp]"
                symbols.append((label, None, top, bottom))
            d += 4
        special = is_special_d
    else:
        raise ValueError(letter)

    size = 4 * n + 8
    groups = defaultdict(list)
    for lab, phi, top, bottom in symbols:
        if top == bottom:
            key = ("degenerate", lab)
        else:
            key = entries_key(top, bottom, size)
        groups[key].append((lab, phi, top, bottom))

    families = []
    for key, members in groups.items():
        if len(members) == 1:
            lab, phi, top, bottom = members[0]
            families.append({"gamma": "1", "members": [
                {"label": lab, "phi": phi, "m": 0, "special": True}]})
            continue
        size_f = len(members)
        e = {4: 1, 16: 2, 64: 3}[size_f]
        specials = [mb for mb in members if mb[1] is not None and special(mb[2], mb[3])]
        assert len(specials) == 1, (letter, n, members)
        sp = specials[0]
        others_principal = [mb for mb in members if mb[1] is not None and mb is not sp]
        non_principal = [mb for mb in members if mb[1] is None]
        assert e == 1, "families with e > 1 need an explicit M(S2^e) labelling"
        # M(S2) order: (1,1), (1,eps), (g,1), (g,eps); the cuspidal-series member is (g,eps).
        ordered = [sp] + others_principal + non_principal
        out = []
        for pos, (lab, phi, top, bottom) in enumerate(ordered):
            out.append({"label": lab, "phi": phi, "m": pos, "special": pos == 0})
        families.append({"gamma": "S2", "members": out})
    return families


def type_a(n):
    return [{"gamma": "1", "members": [{"label": part_str(p), "phi": part_str(p), "m": 0, "special": True}]}
            for p in partitions(n + 1)]


def g2():
    singles = [
        {"gamma": "1", "members": [{"label": "phi1,0", "phi": "phi1,0", "m": 0, "special": True}]},
        {"gamma": "1", "members": [{"label": "phi1,6", "phi": "phi1,6", "m": 0, "special": True}]},
    ]
    # M(S3) order: (1,1) (1,eps) (1,r) (g2,1) (g2,eps) (g3,1) (g3,th) (g3,th^2)
    big = {"gamma": "S3", "members": [
        {"label": "phi2,1", "phi": "phi2,1", "m": 0, "special": True},
        {"label": "G2[1]", "phi": None, "m": 1, "special": False},
        {"label": "phi1,3'", "phi": "phi1,3'", "m": 2, "special": False},
        {"label": "phi2,2", "phi": "phi2,2", "m": 3, "special": False},
        {"label": "G2[-1]", "phi": None, "m": 4, "special": False},
        {"label": "phi1,3''", "phi": "phi1,3''", "m": 5, "special": False},
        {"label": "G2[theta]", "phi": None, "m": 6, "special": False},
        {"label": "G2[theta^2]", "phi": None, "m": 7, "special": False},
    ]}
    return singles + [big]


def main():
    types = {}
    for n in range(1, 6):
        types[f"A{n}"] = type_a(n)
    types["B2"] = classical_families("B", 2)
    types["B3"] = classical_families("B", 3)
    types["C3"] = classical_families("C", 3)
    types["D4"] = classical_families("D", 4)
    types["G2"] = g2()
    for name, fams in types.items():
        for i, f in enumerate(fams):
            f["id"] = i
    doc = {
        "format": "mbound-unipotent-families",
        "version": 1,
        "aliases": {"C2": "B2"},
        "types": {k: [{"id": f["id"], "gamma": f["gamma"], "members": f["members"]} for f in v]
                  for k, v in types.items()},
    }
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
