"""Build the bundled knot tables from a KnotInfo CSV export.

usage: python3 tools/knotinfo_tables.py knotinfo_data_complete.csv data/

Writes data/knots/upto10.tsv, 11.tsv, 12.tsv and data/pd/upto10.pd.
Braids are KnotInfo's minimal-index braid words; when several are listed
the narrowest, then shortest, is used.
"""
import ast
import csv
import os
import sys

SYM = {
    "chiral": "chiral",
    "reversible": "chiral",
    "negative amphicheiral": "achiral",
    "positive amphicheiral": "achiral",
    "fully amphicheiral": "achiral",
}


def braid(s):
    s = s.strip().replace("{", "[").replace("}", "]")
    b = ast.literal_eval(s)
    if b and isinstance(b[0], list):
        b = min(b, key=lambda w: (max(map(abs, w)), len(w)))
    return b


def main(src, out):
    csv.field_size_limit(10**9)
    rows = list(csv.DictReader(open(src), delimiter="|"))
    tables = {"upto10": [], "11": [], "12": []}
    pds = []
    for r in rows:
        try:
            c = int(r["crossing_number"])
        except ValueError:
            continue
        if c > 12:
            continue
        key = "upto10" if c <= 10 else str(c)
        name = r["name"] if c <= 10 else r["dt_name"]
        if c == 0:
            w, strands, dt = [], 1, ""
        else:
            w = braid(r["braid_notation"])
            strands = max(map(abs, w)) + 1
            dt = " ".join(str(x) for x in ast.literal_eval(r["dt_notation"]))
        sym = "achiral" if c == 0 else SYM.get(r["symmetry_type"].strip(), "unknown")
        tables[key].append(f"{name}\t{strands}\t{','.join(map(str, w))}\t{dt}\t{sym}")
        if 0 < c <= 10:
            pd = ast.literal_eval(r["pd_notation"])
            pds.append(name + " " + " ".join("X[%s]" % ",".join(map(str, x)) for x in pd))
    os.makedirs(os.path.join(out, "knots"), exist_ok=True)
    os.makedirs(os.path.join(out, "pd"), exist_ok=True)
    header = "# name\tstrands\tbraid\tdt\tsymmetry\n# source: KnotInfo\n"
    for k, v in tables.items():
        with open(os.path.join(out, "knots", f"{k}.tsv"), "w") as f:
            f.write(header + "\n".join(v) + "\n")
        print(k, len(v))
    with open(os.path.join(out, "pd", "upto10.pd"), "w") as f:
        f.write("# name PD code (one knot per line)\n# source: KnotInfo\n" + "\n".join(pds) + "\n")
    print("pd", len(pds))


if __name__ == "__main__":
    main(*sys.argv[1:3])
