"""Bound states of the attractive potential.

Levels are zeros of the incoming amplitude on the imaginary k axis.  Each
zero is bracketed and refined, then compared with E_n = -alpha^2 / 4n^2.

    python3 tutorials/02_bound_states.py
"""
from __future__ import annotations

from coulomb1d.spectrum import bound_spectrum, scan_sign_changes


def main() -> None:
    alpha = -2.0
    print(f"alpha = {alpha}")
    for s in bound_spectrum(alpha, 6):
        exact = -alpha * alpha / (4 * s.n ** 2)
        print(f"  n={s.n}  E={s.E:+.15f}  exact={exact:+.15f}  newton step={s.residual:.1e}")

    # an independent scan of the axis finds no other sign changes
    found = scan_sign_changes(alpha, 0.08, 3.0, samples=3000)
    print(f"sign changes between kappa = 0.08 and 3: {len(found)}")
    print(f"repulsive alpha = +2 gives {len(bound_spectrum(2.0, 6))} levels")


if __name__ == "__main__":
    main()
