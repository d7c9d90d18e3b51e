#!/usr/bin/env python3
"""Convert Dowker-Thistlethwaite codes to PD codes.

Input lines are `name dt...` where the code is either a list of even
integers (`4 8 10 -14 ...`) or a SnapPy-style letter string
(`nancdghbjianlmefk.0110...`). The planar embedding is found by trying both
rotations at every crossing and keeping one whose face count is n + 2. The
result is determined up to mirror image.

    python3 tools/dt_to_pd.py < codes.txt > codes.pd
"""
import itertools
import sys


def parse_dt(text):
    text = text.strip()
    if text[0].isalpha():
        letters = text.split('.')[0]
        n = ord(letters[0]) - ord('a') + 1
        if letters[1] != 'a':
            raise ValueError('only knots are supported')
        body = letters[3:]
        if len(body) != n:
            raise ValueError('length mismatch in %r' % text)
        out = []
        for ch in body:
            v = 2 * (ord(ch.lower()) - ord('a') + 1)
            out.append(v if ch.islower() else -v)
        return out
    return [int(x) for x in text.replace(',', ' ').split()]


def faces(rot, darts):
    """Number of faces of a rotation system. `rot[c]` lists the half-edges
    (edge, end) around crossing c in counterclockwise order."""
    where = {}
    for c, r in enumerate(rot):
        for i, h in enumerate(r):
            where[h] = (c, i)
    seen = set()
    count = 0
    for d in darts:
        if d in seen:
            continue
        count += 1
        x = d
        while x not in seen:
            seen.add(x)
            # Leave along edge x to its other end, then turn to the next
            # half-edge clockwise there.
            e, end = x
            c, i = where[(e, 1 - end)]
            x = rot[c][(i - 1) % 4]
    return count


def dt_to_pd(dt):
    n = len(dt)
    m = 2 * n
    # Passage p (1-based) lies at crossing cross_of[p].
    cross_of = {}
    under_odd = []
    for c, e in enumerate(dt):
        cross_of[2 * c + 1] = c
        cross_of[abs(e)] = c
        # Alternating convention: odd passages under unless the entry is
        # negative.
        under_odd.append(e > 0)
    # Edge k runs from passage k to passage k+1. Half-edge (k, 0) is its
    # tail, (k, 1) its head. At passage p the incoming edge is p-1.
    def inc(p):
        return ((p - 2) % m + 1, 1)

    def out(p):
        return (p, 0)

    base = []
    for c, e in enumerate(dt):
        a, b = 2 * c + 1, abs(e)
        base.append((a, b))
    darts = [(k, end) for k in range(1, m + 1) for end in (0, 1)]
    found = []
    for flips in itertools.product((0, 1), repeat=n - 1):
        flips = (0,) + flips
        rot = []
        for (a, b), f in zip(base, flips):
            if f == 0:
                rot.append([inc(a), inc(b), out(a), out(b)])
            else:
                rot.append([inc(a), out(b), out(a), inc(b)])
        if faces(rot, darts) == n + 2:
            found.append(rot)
    if not found:
        raise ValueError('no planar realization')
    if len(found) > 1:
        print('warning: %d planar realizations, using the first' % len(found), file=sys.stderr)
    rot = found[0]
    pd = []
    for c, r in enumerate(rot):
        a, b = base[c]
        under = a if under_odd[c] else b
        start = r.index(inc(under))
        pd.append([r[(start + j) % 4][0] for j in range(4)])
    return pd


def fmt(pd):
    return ' '.join('X[%s]' % ','.join(map(str, x)) for x in pd)


def main():
    for line in sys.stdin:
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        name, code = line.split(None, 1)
        print(name, fmt(dt_to_pd(parse_dt(code))))


if __name__ == '__main__':
    main()
