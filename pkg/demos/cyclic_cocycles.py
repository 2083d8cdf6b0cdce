# H(Z_N, w^t): the 1-dimensional module V_g at a generator g has
# nu_{Ns} = zeta_N^{ts} and nu_n = 0 when N does not divide n.

from qhopf import build_group, cyclic_cocycle, dual_group_algebra, nu_n
from qhopf.reptheory import simple_characters


def row_for_generator(N, t, n_max):
    H = dual_group_algebra(build_group("cyclic", N), cyclic_cocycle(N, t))
    (chi,) = [c for c, _ in simple_characters(H) if c.values[1]]   # picks out e(g)
    return [str(nu_n(H, chi, n)) for n in range(1, n_max + 1)]


if __name__ == "__main__":
    for N in (2, 3, 4):
        for t in range(N):
            print(f"N={N} t={t}:", ", ".join(row_for_generator(N, t, 2 * N)))
