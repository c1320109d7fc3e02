#!/usr/bin/env python3
"""Write the n-dimensional filiform degeneration witnesses to data/witnesses/section5."""
import argparse
import json
from pathlib import Path


def mono(coef, e):
    """coef*t^e as witness grammar."""
    if e == 0:
        return coef
    t = "t" if e == 1 else f"t^{e}"
    if coef == "1":
        return t
    if coef == "-1":
        return "-" + t
    return f"{coef}*{t}"


def zeta_pow(k):
    return "1" if k == 0 else ("z" if k == 1 else f"z^{k}")


def witnesses(n):
    def basis_rows(diag, last):
        rows = []
        for i in range(1, n):
            row = ["0"] * n
            row[i - 1] = diag(i)
            rows.append(row)
        rows.append(last)
        return rows

    def last(entries):
        row = ["0"] * n
        for idx, val in entries:
            row[idx - 1] = val
        return row

    out = {}
    out["p1_2-p1_3"] = ("P1.2", "P1.3", basis_rows(lambda i: mono("1", -i),
                                                   last([(n - 1, "t^-1"), (n, "1")])), 0)
    for src in ("P1.3", "P1.4"):
        out[f"{src.replace('.', '_').lower()}-p1_1"] = (
            src, "P1.1", basis_rows(lambda i: "1", last([(n, "t^-1")])), 0)
    out["p1_5-p1_3"] = ("P1.5", "P1.3", basis_rows(lambda i: mono("1", -i),
                                                   last([(n, mono("1", -n + 2))])), 0)
    out["p1_5-p1_4"] = ("P1.5", "P1.4", basis_rows(lambda i: mono("1", 2 * i),
                                                   last([(n, mono("1", n - 1))])), 0)
    # z is a primitive 2(n-1)-th root of unity, so z^(n-1) = -1 stands for (-1)^(1/(n-1)).
    m = 2 * (n - 1)
    lst = [(k, mono("-" + zeta_pow((-k) % m), n - 2 * k)) for k in range(2, n)]
    lst.append((n, "t"))
    out["p0-p1_4"] = ("P0", "P1.4", basis_rows(lambda i: mono(zeta_pow((-i) % m), -i), last(lst)), m)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data/witnesses/section5"))
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in args.n:
        for name, (src, dst, g, order) in witnesses(n).items():
            w = {"source": f"{src}(n={n})", "target": f"{dst}(n={n})", "g": g, "f": None}
            if order:
                w["field"] = f"cyclotomic:{order}"
            (out / f"n{n}-{name}.json").write_text(json.dumps(w, indent=2) + "\n")


if __name__ == "__main__":
    main()
