"""Where the closed formula and the true height part ways.

[2 : 2t : 2t^2] is the same curve as [1 : t : t^2], so its height is 0.  The
formula evaluated step by step only sees archimedean data plus a prefactor,
and here it returns 2 log 2: exactly the log of the content of the section
2 T0 T2 - 2 T1^2 (times deg X_A' = 1).  The report carries a
content-corrected value which is invariant under such rescalings.
"""

from fractions import Fraction

from toric_height import canonical_height, mahler_hypersurface_height, validate_config

A = validate_config([(0,), (1,), (2,)])
for alpha in [(1, 1, 1), (2, 2, 2), (6, 6, 6), (3, Fraction(1, 2), 5)]:
    rep = canonical_height(A, alpha)
    mh = mahler_hypersurface_height(A, alpha, samples=200_000)
    print(f"alpha={tuple(str(a) for a in alpha)}: formula {float(rep.value):.4f}, "
          f"corrected {float(rep.content_corrected):.4f}, Mahler {mh.value:.4f}")

# Higher codimension: no Mahler oracle, but rescaling alpha must not matter.
cubic = validate_config([(0,), (1,), (2,), (3,)])
for lam in (1, 10, Fraction(1, 12)):
    rep = canonical_height(cubic, [lam * a for a in (2, 3, 5, 7)])
    print(f"twisted cubic, alpha scaled by {lam}: formula {float(rep.value):.4f},"
          f" corrected {float(rep.content_corrected):.4f}")
