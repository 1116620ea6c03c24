"""Regenerate tests/data/isogeny_pairs.json with PARI/GP (cypari2).

Each record is a pair of minimal models linked by a rational isogeny of prime degree n. An
n-isogeny restricts to an isomorphism E[p] -> E'[p] of symplectic type (n/p) for p not dividing
n, which the tests use as an oracle for every local criterion.
"""
import json
import random
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)


def minimal(coeffs):
    E = pari.ellminimalmodel(pari.ellinit(coeffs))
    return [int(E[i]) for i in range(5)]


def prime_degree_pairs(E, keep=lambda n: True):
    curves, M = pari.ellisomat(E)
    ms = [minimal([c[0][0], c[0][1]]) for c in curves]
    for i in range(len(ms)):
        for k in range(i + 1, len(ms)):
            n = int(M[i, k])
            if pari.isprime(n) and keep(n):
                yield {"E": ms[i], "Ep": ms[k], "n": n}


def family(rng):
    k = rng.random()
    if k < 0.25:
        return [0, rng.randint(-30, 30), 0, rng.randint(-30, 30), 0]    # rational 2-torsion
    if k < 0.45:
        return [rng.randint(-6, 6), 0, rng.randint(-9, 9), 0, 0]        # rational 3-torsion
    if k < 0.7:
        t = rng.randint(-12, 12)                                        # 5-torsion
        return [1 - t, -t, -t, 0, 0]
    if k < 0.85:
        t = rng.randint(-8, 8)                                          # 7-torsion
        b, c = t**3 - t**2, t**2 - t
        return [1 - c, -b, -b, 0, 0]
    return [0, 0, 0, rng.randint(-60, 60), rng.randint(-80, 80)]


def random_pairs(seed, draws):
    rng = random.Random(seed)
    twists = [1, -1, 2, -2, 3, -3, 6, 5, -5, 7, -7, 13, -13, 21, -39, 10]
    for _ in range(draws):
        coeffs, d = family(rng), rng.choice(twists)
        try:
            E = pari.ellinit(coeffs)
            if len(E) == 0:
                continue
            if d != 1:
                E = pari.ellinit(pari.elltwist(E, d))
            yield from prime_degree_pairs(pari.ellminimalmodel(E))
        except cypari2.PariError:
            continue


# X0(7): j = (h^2+13h+49)(h^2+5h+1)^3/h. v_13(j) = 2 forces e = 3 at 13 = 1 mod 3, the only
# way to reach the e = 3, p = 3 criterion through an isogeny of degree prime to 3.
def seven_isogenies_e3_at_13(count):
    found = 0
    for h in range(-3000, 3000):
        if h == 0:
            continue
        j = pari((h * h + 13 * h + 49) * (h * h + 5 * h + 1) ** 3) / h
        if pari.valuation(j, 13) != 2:
            continue
        E = pari.ellinit(pari.ellfromj(j))
        E = pari.ellminimalmodel(pari.ellinit(pari.elltwist(E, pari.ellminimaltwist(E))))
        for rec in prime_degree_pairs(E, keep=lambda n: n == 7):
            yield rec
            found += 1
        if found >= count:
            return


def main(path):
    seen, out = set(), []
    for rec in list(random_pairs(2, 3000)) + list(seven_isogenies_e3_at_13(12)):
        key = (tuple(rec["E"]), tuple(rec["Ep"]))
        if key not in seen:
            seen.add(key)
            out.append(rec)
    out.sort(key=lambda r: (r["n"], r["E"], r["Ep"]))
    with open(path, "w") as f:
        f.write("[\n" + ",\n".join(json.dumps(r) for r in out) + "\n]\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/isogeny_pairs.json")
