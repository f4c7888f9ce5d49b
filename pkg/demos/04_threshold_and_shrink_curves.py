"""The two ingredient curves of the method, as numbers (and PNGs if
matplotlib is around).

First the per-subband threshold as a function of the band's SNR for unit
signal power, for the working Erlang-2 formula and the two comparison
formulas.  Then the input/output curve of the shape-blended shrinkage
rule: semisoft (alpha 0), mu-law (alpha 1), and the midpoint.
"""

import numpy as np

from pwpshrink import apply_shrink, lambda_erlang, lambda_gaussian, lambda_student

snrs = np.arange(-15.0, 16.0, 1.0)
rows = []
for snr in snrs:
    gamma = 10.0 ** (snr / 10.0)
    sigma_n2 = 1.0 / gamma  # unit signal power
    rows.append((
        snr,
        lambda_erlang(sigma_n2, gamma),
        lambda_student(sigma_n2, gamma, 0.5),
        lambda_gaussian(sigma_n2, gamma),
    ))

print("threshold vs SNR (unit signal power)")
print(" snr_db   erlang2  student-t  gaussian")
for snr, e, s, g in rows:
    print(f"{snr:7.0f} {e:9.4f} {s:9.4f} {g:9.4f}")
print("note: the erlang-2 value *rises* with SNR while the gaussian value falls;")
print("at 0 dB the erlang-2 threshold is exactly two noise standard deviations.\n")

ys = np.linspace(-3.0, 3.0, 241)
curves = {
    "semisoft (alpha 0)": [apply_shrink(float(y), 1.0, 2.0, 0.0, 0.9) for y in ys],
    "mu-law (alpha 1)": [apply_shrink(float(y), 1.0, 2.0, 1.0, 0.9) for y in ys],
    "blend (alpha 0.5)": [apply_shrink(float(y), 1.0, 2.0, 0.5, 0.9) for y in ys],
}
print("shrinkage outputs at a few inputs (lambda1 = 1, lambda2 = 2, mu = 0.9):")
print("      y   semisoft    mu-law     blend")
for y in (-2.5, -1.5, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5):
    vals = [apply_shrink(y, 1.0, 2.0, a, 0.9) for a in (0.0, 1.0, 0.5)]
    print(f"{y:7.2f} {vals[0]:9.4f} {vals[1]:9.4f} {vals[2]:9.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    data = np.array(rows)
    for i, label in enumerate(("Erlang-2", "Student t", "Gaussian"), start=1):
        ax1.plot(data[:, 0], data[:, i], label=label)
    ax1.set_xlabel("SNR (dB)"), ax1.set_ylabel("threshold"), ax1.legend()
    ax1.set_title("threshold vs SNR, unit signal power")
    for label, c in curves.items():
        ax2.plot(ys, c, label=label)
    ax2.plot(ys, ys, "k:", lw=0.5)
    ax2.set_xlabel("input"), ax2.set_ylabel("output"), ax2.legend()
    ax2.set_title("shrinkage input/output")
    fig.tight_layout()
    fig.savefig("demo_curves.png", dpi=120)
    print("\nwrote demo_curves.png")
except ImportError:
    print("\n(matplotlib not installed; skipped the PNG)")
