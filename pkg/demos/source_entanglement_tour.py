"""Tour of the microwave-optical entanglement source.

Walks through the converter model at the nominal parameters: bath
occupations, input-output coefficients, output moments, and all correlation
measures, then scans the two drive cooperativities to show where the source
is stable and entangled.

Run:  python demos/source_entanglement_tour.py
"""

import numpy as np

import mwqi

params = mwqi.nominal_params()
print("converter parameters")
print(f"  mechanical: {params.omega_m / 2 / np.pi / 1e6:.1f} MHz, Q = {params.q_factor:.0f}")
print(f"  microwave cavity: {params.omega_w / 2 / np.pi / 1e9:.1f} GHz, "
      f"half linewidth {params.kappa_w / 2 / np.pi / 1e6:.1f} MHz")
print(f"  optical cavity: {params.lambda_o * 1e9:.0f} nm, "
      f"half linewidth {params.kappa_o / 2 / np.pi / 1e6:.1f} MHz")
print(f"  temperature: {params.t_eom * 1e3:.0f} mK")

baths = mwqi.bath_occupations(params)
print(f"\nbath occupations: microwave {baths.n_w:.3e}, optical {baths.n_o:.0f}, "
      f"mechanical {baths.n_b:.1f}")

# a strongly driven operating point with a bright room-temperature background
coop = mwqi.Cooperativities(5181.95, 668.43)
stability = mwqi.is_stable(coop, params)
print(f"\ndrives: gamma_w = {coop.gamma_w}, gamma_o = {coop.gamma_o}")
print(f"stable: {stability.stable} (margin {stability.margin:.3e} rad/s)")

coef = mwqi.coefficients(coop)
print(f"coefficients: a_w = {coef.a_w:.4f}, a_o = {coef.a_o:.4f}, b = {coef.b:.4f}, "
      f"c_w = {coef.c_w:.4f}, c_o = {coef.c_o:.4f}")

moments = mwqi.source_moments(coef, baths.n_w, baths.n_o, baths.n_b)
print(f"\noutput moments: n_w = {moments.n_w:.4f}, n_o = {moments.n_o:.4f}, "
      f"|<d_w d_o>| = {moments.cross:.4f}")

report = mwqi.correlation_report(moments)
print(f"entanglement metric: {report.e_metric:.4f}  (> 1 means entangled)")
print(f"log negativity: {report.log_neg:.4f} ebits "
      f"({report.log_neg_per_photon:.4f} per microwave photon)")
print(f"coherent information: {report.coh_info:.4f} qubits "
      f"({report.coh_info_per_photon:.4f} per photon)")
print(f"gaussian discord: {report.discord:.4f} bits "
      f"({report.discord_per_photon:.4f} per photon)")

# scan the drive plane: the entanglement boundary hugs the stability boundary
print("\ncooperativity scan (rows gamma_w, cols gamma_o); "
      "'x' unstable, '.' separable, 'E' entangled")
gw_grid = np.geomspace(1e1, 1e4, 10)
go_grid = np.geomspace(1e0, 1e4, 12)
header = "          " + "".join(f"{go:>9.2e}" for go in go_grid)
print(header)
for gw in gw_grid:
    row = [f"{gw:>9.2e} "]
    for go in go_grid:
        if not mwqi.is_stable(mwqi.Cooperativities(gw, go), params).stable:
            row.append("        x")
            continue
        m = mwqi.source_moments(mwqi.coefficients(mwqi.Cooperativities(gw, go)),
                                baths.n_w, baths.n_o, baths.n_b)
        metric = mwqi.entanglement_metric(m)
        row.append("        E" if metric > 1 else "        .")
    print("".join(row))
