"""Regenerate the bundled Gram matrices in src/confdesign/data."""

from fractions import Fraction
from itertools import product
from pathlib import Path

from confdesign.lattice import Lattice, format_gram, gram_from_generators

OUT = Path(__file__).resolve().parent.parent / "src" / "confdesign" / "data"

E8_CARTAN = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]


def unit(i, n, k=1):
    return [k if j == i else 0 for j in range(n)]


def d16_plus() -> Lattice:
    # doubled coordinates: D16 roots and the all-halves glue vector
    gens = [[2 * (a + b) for a, b in zip(unit(i, 16), unit(i + 1, 16, -1))] for i in range(15)]
    gens.append([2 * (a + b) for a, b in zip(unit(14, 16), unit(15, 16))])
    gens.append([1] * 16)
    return gram_from_generators(gens, Fraction(1, 4))


def reed_muller_1_4():
    rows = [[1] * 16]
    for bit in range(4):
        rows.append([(k >> bit) & 1 for k in range(16)])
    words = set()
    for coeffs in product((0, 1), repeat=5):
        words.add(tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) % 2 for k in range(16)))
    return sorted(words)


def barnes_wall_16() -> Lattice:
    # x in Z^16 with x mod 2 in RM(1,4) and sum(x) = 0 mod 4, scaled by 1/2
    gens = [list(w) for w in reed_muller_1_4() if any(w)]
    gens += [[2 * (a + b) for a, b in zip(unit(i, 16), unit(j, 16, s))]
             for i in range(16) for j in range(i + 1, 16) for s in (1, -1)]
    gens.append(unit(0, 16, 4))
    return gram_from_generators(gens, Fraction(1, 2))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    lattices = {
        "A1": Lattice(((2,),), "A1"),
        "E8": Lattice(tuple(map(tuple, E8_CARTAN)), "E8"),
        "D16plus": d16_plus(),
        "BW16": barnes_wall_16(),
    }
    for name, lat in lattices.items():
        lat = Lattice(lat.gram, name)
        (OUT / f"{name}.gram").write_text(format_gram(lat))
        print(name, "det", lat.determinant(), "even", lat.is_even())


if __name__ == "__main__":
    main()
