"""The cubic bound and one configuration that meets it exactly.

The full search over all configurations is `tightham verify-local`
(about a minute); this script only walks through the ingredients.

Run: python demos/local_bound.py
"""

from fractions import Fraction

from tightham.localstruct import check_fact, config_sup, config_value, max_weight_lp, parse_config, validate_config

WITNESS = """
R2:
i1 i2
i1 j2
j1 i2
j1 j2
i1 i3
i1 j3
j1 i3
j1 j3
i2 i3
i2 j3
j2 i3
j2 j3
R3:
i1 i2 i3
i1 i2 j3
i1 i2 k3
i1 j2 i3
i1 j2 j3
i1 j2 k3
i1 k2 i3
i1 k2 j3
j1 i2 i3
j1 i2 j3
j1 i2 k3
j1 j2 i3
j1 j2 j3
j1 j2 k3
j1 k2 i3
j1 k2 j3
k1 i2 i3
k1 i2 j3
k1 j2 i3
k1 j2 j3
B1:
i1
j1
k1
i2
j2
k2
i3
j3
k3
B2:
k1 k2
k1 k3
k2 k3
B3:
k1 k2 k3
"""


def main() -> None:
    print("Maximum of f_{s,p,t} over the sigma range for the listed triples:")
    for line in check_fact().lines:
        print(f"  {line.triple}: {line.max_value:.9f} at sigma={line.argmax:.6f}")

    cfg = parse_config(WITNESS)
    print(f"\nWitness valid: {validate_config(cfg)}")
    opt = max_weight_lp(cfg, 1)
    print(f"best weights at beta=1: q1={opt.q1}, q2={opt.q2}, triples={cfg.t}")
    print(f"value at sigma=1/4: {config_value(cfg, Fraction(1, 4))}")
    sup = config_sup(cfg)
    print(f"sup over the sigma range: {sup.value:.12f} at sigma={sup.sigma:.6f}")


if __name__ == "__main__":
    main()
