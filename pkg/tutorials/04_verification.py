"""Self-checks: ODE residuals, Wronskian identities, continuation algebra.

The identity suite reports one known failure (W8, the minus-side Wronskian);
its size follows e^{-pi alpha/k} - 1.

    python3 tutorials/04_verification.py
"""
from __future__ import annotations

from coulomb1d import PhysicalParams
from coulomb1d.oracle import continuation_group_error, identity_suite, ode_residual, solution_evaluator


def main() -> None:
    params = PhysicalParams.scattering(1.0, 1.0)
    for sid, xs in (("plusW", (0.5, 1, 5)), ("minusV", (-0.5, -1, -5))):
        for method in ("fd", "analytic"):
            r = ode_residual(solution_evaluator(sid, params), params, xs, method=method)
            print(f"{sid:7s} {method:8s} residual {r.max_relative_residual:.1e}")

    for name, entry in identity_suite().summary().items():
        flag = "ok  " if entry["passed"] else "FAIL"
        print(f"{flag} {name:18s} worst {entry['worst_error']:.1e} (tol {entry['tolerance']:.0e})")
    print(f"group property at p = -0.4i: {continuation_group_error():.1e}")


if __name__ == "__main__":
    main()
