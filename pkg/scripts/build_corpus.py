"""Regenerate the bundled field corpus under ``src/nfreg/data/corpus/``.

This is a one-off build step, not part of the library. Field data that the
library deliberately does not compute (integral bases, fundamental units,
subfields, relative unit bases) comes from PARI/GP through ``cypari2``.
Fundamental units of the real quadratic fields come from a continued-fraction
expansion and are cross-checked against PARI.

    pip install cypari2
    python scripts/build_corpus.py [--out src/nfreg/data/corpus]
"""
from __future__ import annotations

import argparse
import json
import math
from fractions import Fraction
from pathlib import Path

import cypari2

pari = cypari2.Pari()
pari.set_real_precision(60)

BUILD_DATE = "2026-10-18"

REAL_QUADRATIC_DISCS = [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53, 56, 57, 60, 61, 65]

OTHER_FIELDS = [
    "x^2 + 1",
    "x^2 + x + 1",
    "x^2 + 5",
    "x^2 - x + 6",
    "x^3 + x^2 - 2*x - 1",
    "x^3 - 2",
    "x^3 - x^2 - 3*x + 1",
    "x^3 - x - 1",
    "x^4 - 10*x^2 + 1",
    "x^4 + x^3 + x^2 + x + 1",
    "x^4 + 1",
    "x^4 - x^3 - 3*x^2 + x + 1",
    "x^4 - x - 1",
    "x^5 - x^3 - x^2 + x + 1",
    "x^6 - x^5 + 2*x^4 - 2*x^3 + 2*x^2 - 2*x + 1",
    "x^6 + x^5 + x^4 + x^3 + x^2 + x + 1",
]

# (top polynomial, base polynomial) pairs that get relative-unit data
EXTENSIONS = [
    ("x^4 - 10*x^2 + 1", "x^2 - 2"),
    ("x^4 - 10*x^2 + 1", "x^2 - 3"),
    ("x^6 - x^5 + 2*x^4 - 2*x^3 + 2*x^2 - 2*x + 1", "x^3 - x - 1"),
    ("x^3 + x^2 - 2*x - 1", "x"),
]


def coeffs(pol) -> list[int]:
    """Integer coefficients a_0..a_d of a PARI polynomial."""
    deg = int(pari.poldegree(pol))
    return [int(pari.polcoef(pol, i)) for i in range(deg + 1)]


def label_of(pol) -> str:
    if int(pari.poldegree(pol)) == 1:
        return "Q"
    terms = []
    for i, c in reversed(list(enumerate(coeffs(pol)))):
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x{i}")
        if i == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    text = "".join(s + b for s, b in terms)
    return text[1:] if text.startswith("+") else text


def rat(q) -> str:
    f = Fraction(str(q))
    return f"{f.numerator}/{f.denominator}"


def power_coords(elt, d: int) -> list[str]:
    """Power-basis coordinates of a PARI polmod / polynomial in x."""
    lifted = pari.lift(elt)
    return [rat(pari.polcoef(lifted, i)) for i in range(d)]


def signature(pol) -> list[int]:
    d = int(pari.poldegree(pol))
    r1 = int(pari.polsturm(pol))
    return [r1, (d - r1) // 2]


def cf_fundamental_unit(D: int) -> tuple[int, int]:
    """Fundamental unit x + y*w of Z[w], w = (D%4 + sqrt(D))/2, via continued fractions.

    Walks the regular continued fraction of w, tests the norm of
    p_n - q_n*w' for each convergent, and returns the first unit > 1.
    """
    if D % 4 == 0:
        tr, nm = 0, -(D // 4)          # w = sqrt(D/4)
        P, Q, Dr = 0, 1, D // 4
    else:
        tr, nm = 1, (1 - D) // 4       # w = (1 + sqrt(D))/2
        P, Q, Dr = 1, 2, D
    s = math.isqrt(Dr)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(10000):
        # w_n = (P + sqrt(Dr)) / Q with Q > 0 and Q | Dr - P^2
        a = (P + s) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if abs(p * p - p * q * tr + q * q * nm) == 1:
            # p - q*w is a small unit; its conjugate (p - q*tr) + q*w is > 1
            return p - q * tr, q
        P = a * Q - P
        Q = (Dr - P * P) // Q
    raise RuntimeError(f"no unit found for D={D}")


def quadratic_poly(D: int) -> str:
    if D % 4 == 0:
        return f"x^2 - {D // 4}"
    return f"x^2 - x - {(D - 1) // 4}"


def subfield_data(pol):
    out = []
    for entry in pari.nfsubfields(pol):
        g = pari.polredabs(entry[0])
        if int(pari.poldegree(g)) == int(pari.poldegree(pol)):
            continue
        out.append(g)
    # dedupe (nfsubfields lists each subfield once, polredabs makes it canonical)
    seen, uniq = set(), []
    for g in out:
        key = str(g)
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    uniq.sort(key=lambda g: (int(pari.poldegree(g)), abs(int(pari.nfdisc(g))), str(g)))
    return uniq


def is_subfield(small, big) -> bool:
    if int(pari.poldegree(small)) == 1:
        return True
    if int(pari.poldegree(big)) % int(pari.poldegree(small)):
        return False
    return bool(pari.nfisincl(small, big))


def field_record(polstr: str, units_from_cf: tuple[int, int] | None = None) -> dict:
    pol = pari(polstr)
    d = int(pari.poldegree(pol))
    bnf = pari.bnfinit(pol, 1)
    if d <= 6:
        assert int(pari.bnfcertify(bnf)) == 1
    zk = pari(f"nfbasis({polstr})")
    basis = [power_coords(w, d) for w in zk]
    torsion = int(pari(f"bnfinit({polstr},1).tu[1]"))
    fu = pari(f"bnfinit({polstr},1).fu")
    units = [power_coords(u, d) for u in fu]
    reg = pari(f"bnfinit({polstr},1).reg")
    provenance = {
        "oracle": f"PARI/GP {'.'.join(map(str, pari.version()))} via cypari2 (bnfinit, bnfcertify, nfbasis, nfsubfields)",
        "date": BUILD_DATE,
    }
    if units_from_cf is not None:
        x, y = units_from_cf
        # unit x + y*w with w the generator
        units = [[rat(x), rat(y)]]
        provenance["units"] = "continued-fraction expansion of the generator; regulator cross-checked against PARI"
        cf_reg = pari(f"log(abs(subst({x} + {y}*x, x, polroots({polstr})[2])))")
        assert abs(float(cf_reg) - float(reg)) < 1e-20, (polstr, cf_reg, reg)
    label = label_of(pol)
    subs = subfield_data(pol)
    sub_entries = [
        {
            "label": label_of(g),
            "poly": coeffs(g),
            "discriminant": int(pari.nfdisc(g)),
            "signature": signature(g),
        }
        for g in subs
    ]
    nodes = [(label_of(g), g) for g in subs] + [(label, pol)]
    edges = []
    for a_label, a in nodes:
        for b_label, b in nodes:
            if a_label == b_label:
                continue
            if int(pari.poldegree(a)) < int(pari.poldegree(b)) and is_subfield(a, b):
                edges.append([a_label, b_label])
    return {
        "label": label,
        "poly": coeffs(pol),
        "discriminant": int(pari.nfdisc(pol)),
        "signature": signature(pol),
        "integral_basis": basis,
        "torsion_order": torsion,
        "fundamental_units": units,
        "regulator_hint": _decimal(reg),
        "subfields": sub_entries,
        "lattice_edges": edges,
        "extensions": [],
        "provenance": provenance,
    }


def _decimal(x) -> str:
    return str(pari(f"Strprintf(\"%.30g\", {x})"))


def extension_entry(top: str, base: str) -> dict:
    """Relative unit basis of top/base from the kernel of the norm on log vectors."""
    L, K = pari(top), pari(base)
    dl, dk = int(pari.poldegree(L)), int(pari.poldegree(K))
    if dk == 1:
        emb = pari("0*x")  # the generator x of Q is the root 0 of x
        emb_matrix = [["1/1"]] + [["0/1"] for _ in range(dl - 1)]
    else:
        emb = pari.nfisincl(K, L)[0]
        emb_matrix = [[None] * dk for _ in range(dl)]
        for j in range(dk):
            col = power_coords(pari(f"Mod(({emb})^{j}, {top})"), dl)
            for i in range(dl):
                emb_matrix[i][j] = col[i]
    fu_l = pari(f"bnfinit({top},1).fu")
    rl, rk = len(fu_l), (len(pari(f"bnfinit({base},1).fu")) if dk > 1 else 0)
    r1l = int(pari.polsturm(L))
    roots_l = pari.polroots(L)
    # archimedean places of l: real roots then one of each conjugate pair (upper half plane)
    places = [z for z in roots_l if abs(float(pari.imag(z))) < 1e-30] + [
        z for z in roots_l if float(pari.imag(z)) > 1e-30
    ]
    roots_k = pari.polroots(K) if dk > 1 else [pari(0)]
    kplaces = [z for z in roots_k if abs(float(pari.imag(z))) < 1e-30] + [
        z for z in roots_k if float(pari.imag(z)) > 1e-30
    ]

    def over(z):
        img = pari.subst(pari.lift(pari(f"Mod({emb}, {top})")), "x", z) if dk > 1 else pari(0)
        best = min(range(len(kplaces)), key=lambda j: min(abs(complex(img) - complex(kplaces[j])),
                                                          abs(complex(img) - complex(kplaces[j]).conjugate())))
        return best

    fib = [over(z) for z in places]
    dw = [1 if i < r1l else 2 for i in range(len(places))]
    dv = [1 if abs(float(pari.imag(z))) < 1e-30 else 2 for z in kplaces]
    # log|N(u)|_v summed over the fibre, for each unit of l and each place v of k
    rows = []
    for u in fu_l:
        lu = pari.lift(u)
        vec = [0.0] * len(kplaces)
        for z, v, w in zip(places, fib, dw):
            vec[v] += w * float(pari.log(pari.abs(pari.subst(lu, "x", z))))
        rows.append(vec)
    if dk > 1:
        fu_k = pari(f"bnfinit({base},1).fu")
        kvecs = []
        for u in fu_k:
            lu = pari.lift(u)
            kvecs.append([dv[j] * float(pari.log(pari.abs(pari.subst(lu, "x", kplaces[j])))) for j in range(len(kplaces))])
        # solve rows ~ A * kvecs using the first rk coordinates
        import numpy as np

        Kmat = np.array(kvecs)[:, :rk]
        A = []
        for vec in rows:
            sol = np.linalg.solve(Kmat.T, np.array(vec[:rk]))
            ints = [int(round(s)) for s in sol]
            assert max(abs(s - i) for s, i in zip(sol, ints)) < 1e-8
            A.append(ints)
        Amat = pari.matrix(rl, rk, [a for row in A for a in row])
        ker = pari.matkerint(pari.mattranspose(Amat))
    else:
        ker = pari.matid(rl)
    rel_units = []
    for c in range(int(pari.matsize(ker)[1])):
        expo = [int(ker[i, c]) for i in range(rl)]
        elt = pari(f"Mod(1, {top})")
        for e, u in zip(expo, fu_l):
            elt = elt * u ** e
        rel_units.append(power_coords(elt, dl))
    assert len(rel_units) == rl - rk
    return {
        "base_label": label_of(K),
        "embedding_matrix": emb_matrix,
        "relative_units": rel_units,
    }


def canonical_subfield_labels(records: dict) -> None:
    """Name each subfield after the corpus record of the same field, when there is one."""
    known = {str(pari.polredabs(pari(polstr))): rec for polstr, rec in records.items()}
    for rec in records.values():
        rename = {}
        for sub in rec["subfields"]:
            if sub["label"] == "Q":
                continue
            key = str(pari.polredabs(pari.Pol(list(reversed(sub["poly"])))))
            if key in known and known[key]["label"] != sub["label"]:
                rename[sub["label"]] = known[key]["label"]
                sub["label"] = known[key]["label"]
                sub["poly"] = known[key]["poly"]
        rec["lattice_edges"] = [[rename.get(a, a), rename.get(b, b)] for a, b in rec["lattice_edges"]]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "src" / "nfreg" / "data" / "corpus"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    records = {}
    for D in REAL_QUADRATIC_DISCS:
        polstr = quadratic_poly(D)
        rec = field_record(polstr, cf_fundamental_unit(D))
        assert rec["discriminant"] == D
        rec["extensions"].append(extension_entry(polstr, "x"))
        records[polstr] = rec
    for polstr in OTHER_FIELDS:
        records[polstr] = field_record(polstr)
    for top, base in EXTENSIONS:
        records[top]["extensions"].append(extension_entry(top, base))
    canonical_subfield_labels(records)
    for rec in records.values():
        name = rec["label"].replace("^", "").replace("*", "")
        (out / f"{name}.json").write_text(json.dumps(rec, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(records)} records to {out}")


if __name__ == "__main__":
    main()
