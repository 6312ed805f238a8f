"""The three Lie algebra families and their windowed structure scans.

Brackets are evaluated exactly on finitely supported elements; the
window only bounds the universal quantification of the identity checks.
"""

from tpw import (
    AdditiveMap,
    BiadditiveForm,
    Block,
    GeneralizedWitt,
    Pairing,
    Window,
    WittType,
    bracket,
    center_predicate,
    square_predicate,
    verify_center,
    verify_lie_axioms,
    verify_square,
)

window = Window(2, 1)

# Generalized Witt algebra on Z^2 with a two dimensional coefficient space.
gw = GeneralizedWitt(Pairing([[1, 0], [0, 1]]))
print("[ (1,0) x e1, (0,1) x e1 ] =",
      bracket(gw, gw.basis((1, 0), 0), gw.basis((0, 1), 0)))
print("generalized Witt Lie axioms:", verify_lie_axioms(gw, window).passed)

# Block algebra from the (g, h) presentation; the Lie condition holds by
# construction, so the scan must pass.
b1 = Block.from_gh(AdditiveMap([-1, 0]), AdditiveMap([0, 1]))
print("\n[u_(1,0), u_(0,1)] =", bracket(b1, b1.basis((1, 0)), b1.basis((0, 1))))
print("Block Lie axioms:", verify_lie_axioms(b1, window).passed)

# A raw (g, f) pair with no compatible h: the Jacobi scan finds a witness.
broken = Block.raw_form(
    AdditiveMap([1, 0, 0]),
    BiadditiveForm([[0, 0, 0], [0, 0, 1], [0, -1, 0]]))
report = verify_lie_axioms(broken, window)
print("\ncorrupted Block passes Jacobi:", report.jacobi)
print("first violating triple:", report.jacobi_witness[:3])

# Witt type algebra on Z: the classical relations up to orientation.
wt = WittType(AdditiveMap([1]))
print("\n[e_2, e_5] =", bracket(wt, wt.basis((2,)), wt.basis((5,))))

# Center and square of the Block families, confirmed index by index.
b0 = Block.with_form(BiadditiveForm([[0, -1], [1, 0]]))
w3 = Window(3, 1)
for name, spec in (("g = 0", b0), ("g != 0", b1)):
    center = verify_center(spec, w3)
    square = verify_square(spec, w3)
    print("\nBlock %s: center scan ok=%s, square scan ok=%s"
          % (name, center.passed, square.passed))
    probe = (0, -1) if name == "g != 0" else (0, 0)
    print("  u_%s central: %s" % (probe, center_predicate(spec, probe)))
    probe = (0, -2) if name == "g != 0" else (0, 0)
    print("  u_%s in [L,L]: %s" % (probe, square_predicate(spec, probe)))
