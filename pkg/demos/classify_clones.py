"""Position of a few clones above DMA in the Leibniz and Frege hierarchies."""

from dm4 import CloneSpec, classify

EXTRAS = [(), ("box",), ("conf",), ("box", "delta_nb"), ("delta",), ("eq_tmin",),
          ("eq_imin",), ("t_n_to_n",), ("const_n",), ("mnh2_1",), ("mhnp3",)]
COLUMNS = ("proto", "equiv", "t-eq", "alg", "selfext")


def main() -> None:
    print(f"{'clone':22}" + "".join(f"{c:>9}" for c in COLUMNS))
    for extra in EXTRAS:
        rec = classify(CloneSpec.build(extra, base="DMA"))
        marks = ["yes" if v else "." for v in rec.flags()]
        print(f"{rec.clone:22}" + "".join(f"{m:>9}" for m in marks))


if __name__ == "__main__":
    main()
