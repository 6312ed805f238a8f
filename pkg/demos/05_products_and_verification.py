"""Product candidates and exact verification of the compatibility laws.

Four identities are scanned over window tuples: commutativity,
associativity, the transposed compatibility 2 z . [x,y] = [z.x, y] + [x, z.y],
and the ordinary Poisson rule. Witnesses are concrete basis tuples with
both evaluated sides.
"""

from fractions import Fraction

from tpw import AdditiveMap, BiadditiveForm, Block, Window, WittType
from tpw.algebra import Element
from tpw.tpstruct import (
    ExtensionByZero,
    Mutation,
    SingleIdempotent,
    multiply,
    verify,
)

# Mutations of the group algebra product on the Witt type algebra.
wt = WittType(AdditiveMap([1]))
w = Element({(0,): Fraction(1), (2,): Fraction(-5, 3)})
mutation = Mutation(w)
print("e_1 . e_2 =", multiply(wt, mutation, wt.basis((1,)), wt.basis((2,))))

report = verify(wt, mutation, Window(4, 2))
print("mutation: commutative=%s associative=%s compatible=%s"
      % (report.commutative.passed, report.associative.passed,
         report.trans_leibniz.passed))

# The plain group product is compatible but NOT an ordinary Poisson
# structure; the witness pins the first failing triple.
group_product = Mutation(Element({(0,): 1}))
report = verify(wt, group_product, Window(4, 2))
labels, lhs, rhs = report.poisson_leibniz.witness
print("group product Poisson rule fails at %s: lhs=%s rhs=%s"
      % (labels, lhs, rhs))

# The single idempotent product on Block with g = 0 passes all four laws.
b0 = Block.with_form(BiadditiveForm([[0, -1], [1, 0]]))
report = verify(b0, SingleIdempotent(), Window(3, 2))
print("\nsingle idempotent: all four identities pass:", report.all_pass)

# The extension-by-zero product on the g != 0 Block algebra: the star
# table multiplies the complement of the square into the center.
b1 = Block.from_gh(AdditiveMap([-1, 0]), AdditiveMap([0, 1]))
star = ExtensionByZero({((0, -2), (0, -2)): Element({(0, -1): Fraction(1)})})
print("u_(0,-2) . u_(0,-2) =",
      multiply(b1, star, b1.basis((0, -2)), b1.basis((0, -2))))
report = verify(b1, star, Window(3, 2))
print("extension by zero: all four identities pass:", report.all_pass)
