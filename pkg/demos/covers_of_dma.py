"""The three covers of DMA: none lies in DMA, and each pair is separated by an
invariant binary relation."""

from dm4 import CATALOG, CloneSpec, separating_relation, witness_nonmembership

COVERS = ("mnh2_1", "mnh2_2", "mhnp3")
DMA = CloneSpec.build(base="DMA")


def main() -> None:
    for name in COVERS:
        w = witness_nonmembership(CATALOG[name], DMA)
        print(f"{name:7} not in DMA: breaks {w.hex()} = {{{w}}}")
    print()
    for a in COVERS:
        for b in COVERS:
            if a == b:
                continue
            sym, rel = separating_relation(CloneSpec.build((a,), base="DMA"),
                                           CloneSpec.build((b,), base="DMA"))
            print(f"<DMA,{a}> not below <DMA,{b}>: {sym} breaks {rel.hex()} = {{{rel}}}")


if __name__ == "__main__":
    main()
