"""Regenerate tests/data/tate_reference.txt from PARI/GP elllocalred (cypari2)."""
import random
import sys

import cypari2

P = cypari2.Pari()


def kodaira(k):
    k = int(k)
    if k == 1:
        return "I0"
    if k in (2, 3, 4):
        return ["", "", "II", "III", "IV"][k]
    if k > 4:
        return "I%d" % (k - 4)
    return {-1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}.get(k, "I%d*" % (-k - 4))


def main(path):
    random.seed(11)
    per_type, lines, tries = {}, [], 0
    while len(lines) < 400 and tries < 400000:
        tries += 1
        l = random.choice([2, 3, 5, 7, 11])
        a = [random.randint(-30, 30) for _ in range(5)]
        mode = random.random()
        if mode < 0.4:   # scaled, non-minimal at l
            u = l ** random.randint(1, 3)
            a = [a[0] * random.choice([1, l]), a[1] * u, a[2] * u, a[3] * u * u, a[4] * u**3]
        elif mode < 0.7:  # quadratic twist through the b-invariants
            d = random.choice([l, -l, 2 * l, -1, -2])
            a = [0, d * (a[0] ** 2 + 4 * a[1]), 0, 8 * d * d * (a[0] * a[2] + 2 * a[3]),
                 16 * d**3 * (a[2] ** 2 + 4 * a[4])]
        e = P.ellinit(a)
        if len(e) == 0:
            continue
        r = P.elllocalred(e, l)
        key = (kodaira(r[1]), l)
        if per_type.get(key, 0) >= 8:
            continue
        per_type[key] = per_type.get(key, 0) + 1
        vmin = int(P.valuation(e[11], l)) - 12 * int(P.valuation(r[2][0], l))
        lines.append("%s %d %s %d %d %d" % (" ".join(map(str, a)), l, key[0], int(r[0]), vmin, int(r[3])))
    with open(path, "w") as f:
        f.write("# a1 a2 a3 a4 a6 ell kodaira conductor_exponent v(disc_min) tamagawa\n"
                "# reference values computed with PARI/GP elllocalred\n" + "\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/tate_reference.txt")
