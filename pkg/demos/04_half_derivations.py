"""Solving for half-derivations degree by degree.

A graded map of degree a is a coefficient table on the window; the
defining relation becomes one exact homogeneous system per degree. The
sweep solves every degree in a box and compares the projected solution
spaces against the predicted spanning maps.
"""

from tpw import (
    AdditiveMap,
    BiadditiveForm,
    Block,
    GeneralizedWitt,
    Pairing,
    Window,
    assemble,
    solve,
    sweep,
)

window = Window(3, 2)

# One degree in detail: the Block algebra with g = 0 at degree zero.
b0 = Block.with_form(BiadditiveForm([[0, -1], [1, 0]]))
system = assemble(b0, (0, 0), window)
basis = solve(system)
print("Block g=0, degree (0,0): %d unknowns, %d constraint rows, kernel dim %d"
      % (system.n_unknowns, system.n_constraints, basis.dimension))

# The full sweeps reproduce the classifications on the window.
print("\ngeneralized Witt sweep:")
report = sweep(GeneralizedWitt(Pairing([[1, 0], [0, 1]])), window, 2)
print("  verdict:", report.verdict, "| all degrees pass:", report.all_pass)

print("\nBlock g=0 sweep:")
report = sweep(b0, window, 2)
print("  verdict:", report.verdict, "| all degrees pass:", report.all_pass)

b1 = Block.from_gh(AdditiveMap([-1, 0]), AdditiveMap([0, 1]))
print("\nBlock g!=0 sweep:")
report = sweep(b1, window, 2)
print("  verdict:", report.verdict, "| all degrees pass:", report.all_pass)
for r in report.results:
    if r.projected_dim:
        print("  degree %s: projected dimension %d" % (r.degree, r.projected_dim))

# Degrees where nothing survives are the rigidity statements; the two
# visible degrees carry the identity and the center-valued map.
