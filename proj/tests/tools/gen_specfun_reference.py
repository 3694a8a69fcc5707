"""Freeze 50-digit reference values for the specfun tests."""
import mpmath as mp

mp.mp.dps = 50


def row(x):
    x = mp.mpf(x)
    q = mp.erfc(x / mp.sqrt(2)) / 2
    erfi = mp.erfi(x) if x <= 26 else mp.nan
    return [x, q, mp.erf(x), mp.erfc(x), mp.exp(x * x) * mp.erfc(x),
            mp.sqrt(mp.pi) / 2 * mp.exp(-x * x) * mp.erfi(x), erfi]


def main():
    n = 240
    xs = [mp.mpf(10) ** (-8 + (mp.log10(30) + 8) * i / (n - 1)) for i in range(n)]
    xs = [mp.mpf(float(x)) for x in xs]  # evaluate at the exact double
    with open("specfun_reference.csv", "w") as f:
        f.write("x,q,erf,erfc,erfcx,dawson,erfi\n")
        for x in xs:
            r = row(x)
            f.write(repr(float(x)) + "," + ",".join(mp.nstr(v, 25) if v == v else "nan" for v in r[1:]) + "\n")


if __name__ == "__main__":
    main()
