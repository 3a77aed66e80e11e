"""Generate the stratified erfcx reference grid with 50-digit arithmetic.

Output: tests/data/erfcx_reference.csv with columns re,im,erfcx_re,erfcx_im.
Values are e^{z^2} erfc(z) evaluated by mpmath at mp.dps = 50, then rounded
to 17 significant digits.
"""
import pathlib
import random

import mpmath as mp

mp.mp.dps = 50

RE_EDGES = [0.0, 0.1, 0.5, 1.0, 2.0, 4.0, 7.0, 12.0, 25.0, 50.0, 100.0]
IM_EDGES = [-100.0, -50.0, -20.0, -10.0, -5.0, -2.0, -1.0, 0.0,
            1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0]
PER_CELL = 7


def erfcx(z):
    return mp.exp(z * z) * mp.erfc(z)


def main():
    rng = random.Random(20260114)
    points = []
    for r0, r1 in zip(RE_EDGES, RE_EDGES[1:]):
        for i0, i1 in zip(IM_EDGES, IM_EDGES[1:]):
            for _ in range(PER_CELL):
                points.append((rng.uniform(r0, r1), rng.uniform(i0, i1)))
    # Axis points: pure real and pure imaginary arguments.
    for x in [0.0, 0.25, 1.0, 3.0, 10.0, 30.0, 99.0, 100.0, 5.5, 0.05]:
        points.append((x, 0.0))
    for y in [0.5, -0.5, 2.0, -2.0, 8.0, -8.0, 40.0, -40.0, 100.0, -100.0]:
        points.append((0.0, y))
    assert len(points) == 1000, len(points)

    out = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data" / "erfcx_reference.csv"
    with out.open("w") as fh:
        fh.write("re,im,erfcx_re,erfcx_im\n")
        for x, y in points:
            v = erfcx(mp.mpc(x, y))
            fh.write("{!r},{!r},{},{}\n".format(
                x, y, mp.nstr(v.real, 17, min_fixed=0, max_fixed=0),
                mp.nstr(v.imag, 17, min_fixed=0, max_fixed=0)))


if __name__ == "__main__":
    main()
