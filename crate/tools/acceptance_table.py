"""Build data/knots/extra.tsv and data/pd/extra.pd for the 14- and
15-crossing knots used by the tests.

usage: python3 tools/acceptance_table.py MORE_MANIFOLDS.sqlite 15_KNOTS.sqlite data/ path/to/lg

DT codes come from the SnapPy census databases (HT_links table). Braids are
produced by `lg pd2braid` from the converted PD codes.
"""
import sqlite3
import subprocess
import sys

from dt_to_pd import dt_to_pd, fmt, parse_dt

KNOTS = [
    ("14a_680", "chiral"),
    ("14a_12813", "chiral"),
    ("14a_12858", "chiral"),
    ("14a_13107", "chiral"),
    ("14a_13109", "achiral"),
    ("14a_13262", "chiral"),
    ("14a_17268", "chiral"),
    ("14n_1309", "chiral"),
    ("14n_2164", "chiral"),
    ("15n_139717", "achiral"),
]


def snappy_name(name):
    c, rest = name.split("_")
    return "K" + c + rest


def main(db14, db15, out, lg):
    dbs = [sqlite3.connect(db14), sqlite3.connect(db15)]
    pd_lines, dts = [], {}
    for name, _ in KNOTS:
        code = None
        for db in dbs:
            row = db.execute("select DT from HT_links where name = ?", (snappy_name(name),)).fetchone()
            if row:
                code = row[0]
                break
        if code is None:
            sys.exit("%s not found" % name)
        dt = parse_dt(code)
        dts[name] = " ".join(map(str, dt))
        pd_lines.append("%s %s" % (name, fmt(dt_to_pd(dt))))
    with open(out + "/pd/extra.pd", "w") as f:
        f.write("# name PD code (one knot per line)\n# source: SnapPy census DT codes\n")
        f.write("\n".join(pd_lines) + "\n")
    rows = subprocess.run([lg, "pd2braid", out + "/pd/extra.pd"], check=True, capture_output=True, text=True)
    sym = dict(KNOTS)
    with open(out + "/knots/extra.tsv", "w") as f:
        f.write("# name\tstrands\tbraid\tdt\tsymmetry\n# source: SnapPy census DT codes, braids from lg pd2braid\n")
        for line in rows.stdout.splitlines():
            name, strands, braid = line.split("\t")[:3]
            f.write("\t".join([name, strands, braid, dts[name], sym[name]]) + "\n")


if __name__ == "__main__":
    main(*sys.argv[1:])
