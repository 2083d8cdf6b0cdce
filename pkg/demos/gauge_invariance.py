"""Twist K_u by a random gauge: the coproduct and associator change, mu_n does not."""

from qhopf import builtin, gauge_twist, mu_n, random_gauge_transform


def main(seeds=3, n_max=4):
    H = builtin("K_u")
    ref = [mu_n(H, n) for n in range(1, n_max + 1)]
    for seed in range(seeds):
        HF = gauge_twist(H, random_gauge_transform(H, seed))
        same = [mu_n(HF, n) == ref[n - 1] for n in range(1, n_max + 1)]
        print(f"seed {seed}: associator terms {len(H.associator)} -> {len(HF.associator)}, "
              f"mu_1..mu_{n_max} unchanged: {all(same)}")


if __name__ == "__main__":
    main()
