"""Protoimplications are exactly the tables between x <->t-min y and x ->t-max y."""

import numpy as np

from dm4 import CATALOG, interval_count
from dm4.logic import implication_mask, interval_mask, symmetrize, value_ranges


def main() -> None:
    print("interval size:", interval_count())
    rng = np.random.default_rng(7)
    tables = rng.integers(0, 4, size=(200_000, 16), dtype=np.uint8)
    inside, proto = interval_mask(tables), implication_mask(tables)
    print(f"random tables: {proto.sum()} protoimplications, "
          f"{(inside != proto).sum()} disagreements with the interval test")
    # a protoimplication with range {t, f} symmetrizes to the classical biconditional
    tf = tables[proto & (value_ranges(tables) == 0b0011)]
    if len(tf):
        same = (symmetrize(tf) == CATALOG["eq_tf"].array).all(axis=1)
        print(f"{len(tf)} with range {{t, f}}; all symmetrize to eq_tf: {bool(same.all())}")


if __name__ == "__main__":
    main()
