#!/usr/bin/env python3
"""Watch sums of Ge(a_i/N)/N converge to the hypoexponential as N grows.

For each N the discrete sum with success probabilities a_i/N has its tail
evaluated at lambda times its mean and compared with the continuous tail;
the sharper discrete bound is compared with its continuous analogue too.

    python scripts/limit_convergence.py --a 1,2 --lambda 2
"""

import argparse

from tailbounds import (
    exp_upper_i,
    geom_tail_exact,
    hypoexp_survival,
    make_exponential_spec,
    make_geometric_spec,
    upper_tail_thm2,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", default="1,2")
    parser.add_argument("--lambda", dest="lam", type=float, default=2.0)
    parser.add_argument("--n-grid", default="10,100,1000,10000")
    args = parser.parse_args()

    rates = [float(t) for t in args.a.split(",")]
    cont = make_exponential_spec(rates)
    exact_cont = hypoexp_survival(cont, args.lam * cont.mu).value
    bound_cont = exp_upper_i(cont, args.lam).value
    print(f"rates={rates}  lambda={args.lam}")
    print(f"continuous exact tail  {exact_cont:.10e}")
    print(f"continuous upper bound {bound_cont:.10e}")
    print(f"{'N':>8} {'discrete exact':>16} {'rel err':>10} "
          f"{'discrete bound':>16} {'rel err':>10}")
    for token in args.n_grid.split(","):
        N = int(token)
        geom = make_geometric_spec([a / N for a in rates])
        exact_disc = geom_tail_exact(geom, args.lam * geom.mu).value
        bound_disc = upper_tail_thm2(geom, args.lam).value
        print(
            f"{N:8d} {exact_disc:16.10e} "
            f"{abs(exact_disc - exact_cont) / exact_cont:10.2e} "
            f"{bound_disc:16.10e} "
            f"{abs(bound_disc - bound_cont) / bound_cont:10.2e}"
        )


if __name__ == "__main__":
    main()
