"""Behaviour at the origin: f2(k, 0), the impenetrable limit and the delta term.

    python3 tutorials/03_origin_and_correction.py
"""
from __future__ import annotations

from coulomb1d import PhysicalParams
from coulomb1d.extensions import delta_correction
from coulomb1d.scattering import f2_at_zero, f2_right_limit, impenetrable_case


def main() -> None:
    params = PhysicalParams.scattering(1.0, 1.0)
    f = f2_at_zero(params)
    print(f"f2(k,0) = {f.value:.12f}, |f2|^2 = {f.abs2:.12f}")
    print(f"limit from the right: {f2_right_limit('real', params):.12f}")

    # the Dirichlet state reflects everything and vanishes linearly at x = 0
    for x in (1e-2, 1e-3, 1e-4):
        case = impenetrable_case(params, x)
        print(f"x={x:.0e}  |R|^2={case.abs2R:.15f}  |f2R|/x={abs(case.f2R) / x:.6f}")

    for form in ("closed", "series"):
        c = delta_correction(params, 1.0, form, terms=100_000)
        print(f"delta coefficient ({form}): {c.coefficient:.12f}  tail<={c.tail_bound:.1e}")
    strong = PhysicalParams.scattering(40.0, 1.0)
    print(f"alpha/2k = 20, asymptotic vs closed: "
          f"{delta_correction(strong, 1.0, 'asymptotic').coefficient:.12f} "
          f"{delta_correction(strong, 1.0).coefficient:.12f}")


if __name__ == "__main__":
    main()
