"""The three graded Lie algebra families as exact sparse structures.

Every family carries a basis indexed by lattice points (for the
generalized Witt family, lattice points times a basis of V). Elements are
finitely supported coefficient maps; brackets are evaluated exactly on
those supports, never truncated. Windows only bound the universal
quantification done by the verification scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import scalar_from_str, scalar_to_str
from .lattice import (
    AdditiveMap,
    BiadditiveForm,
    Pairing,
    Window,
    add,
    box_points,
    form_from_gh,
    search_order,
    sub,
    zero,
)

__all__ = [
    "Block",
    "CenterSquareReport",
    "Element",
    "FamilyMismatchError",
    "GeneralizedWitt",
    "LieReport",
    "SpecMismatchError",
    "WittType",
    "WittTypeCorrespondence",
    "bracket",
    "center_predicate",
    "element_from_json",
    "element_to_json",
    "spec_from_json",
    "spec_to_json",
    "square_predicate",
    "verify_center",
    "verify_lie_axioms",
    "verify_square",
    "witt_to_witt_type",
]


class FamilyMismatchError(Exception):
    """Operation applied to an algebra family it is not defined for."""


class SpecMismatchError(Exception):
    """Elements fed to an operation do not belong to the same spec."""


def _coeff_is_zero(c):
    if isinstance(c, tuple):
        return not any(c)
    return not c


def _coeff_add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _coeff_scale(k, c):
    if isinstance(c, tuple):
        return tuple(k * x for x in c)
    return k * c


class Element:
    """Finitely supported combination of graded basis elements.

    Keys are lattice index tuples; values are rational coefficients
    (scalar families) or rational vectors (generalized Witt). Zero
    coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for idx, c in terms.items():
                if isinstance(c, tuple):
                    c = tuple(Fraction(x) for x in c)
                else:
                    c = Fraction(c)
                if not _coeff_is_zero(c):
                    cleaned[tuple(idx)] = c
        self.terms = cleaned

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for idx, c in other.terms.items():
            if idx in out:
                s = _coeff_add(out[idx], c)
                if _coeff_is_zero(s):
                    del out[idx]
                else:
                    out[idx] = s
            else:
                out[idx] = c
        res = Element.__new__(Element)
        res.terms = out
        return res

    def __neg__(self):
        res = Element.__new__(Element)
        res.terms = {idx: _coeff_scale(-1, c) for idx, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        k = Fraction(k)
        res = Element.__new__(Element)
        if k:
            res.terms = {idx: _coeff_scale(k, c) for idx, c in self.terms.items()}
        else:
            res.terms = {}
        return res

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        bits = ["%s: %s" % (idx, c) for idx, c in sorted(self.terms.items())]
        return "Element{%s}" % ", ".join(bits)


class GeneralizedWitt:
    """W(A, V, <.,.>): group algebra of A tensored with V.

    The bracket of a tensor v at index a with w at index b lands at a + b
    with vector part <v, b> w - <w, a> v.
    """

    family = "generalized_witt"

    def __init__(self, pairing: Pairing):
        self.pairing = pairing

    @property
    def rank(self) -> int:
        return self.pairing.rank

    @property
    def dim_v(self) -> int:
        return self.pairing.dim_v

    def basis(self, a, i: int = 0) -> Element:
        vec = [Fraction(0)] * self.dim_v
        vec[i] = Fraction(1)
        return Element({tuple(a): tuple(vec)})

    def element(self, a, v) -> Element:
        return Element({tuple(a): tuple(Fraction(x) for x in v)})

    def basis_labels(self, points):
        return [(a, i) for a in points for i in range(self.dim_v)]

    def basis_element(self, label) -> Element:
        a, i = label
        return self.basis(a, i)

    def bracket(self, x: Element, y: Element) -> Element:
        pair = self.pairing
        acc = {}
        for a, v in x.terms.items():
            col_a = pair.gen_column(a)
            for b, w in y.terms.items():
                vb = pair(v, b)
                wa = sum((wl * cl for wl, cl in zip(w, col_a) if wl), Fraction(0))
                coeff = tuple(vb * wl - wa * vl for vl, wl in zip(v, w))
                if not any(coeff):
                    continue
                idx = add(a, b)
                if idx in acc:
                    s = _coeff_add(acc[idx], coeff)
                    if _coeff_is_zero(s):
                        del acc[idx]
                    else:
                        acc[idx] = s
                else:
                    acc[idx] = coeff
        res = Element.__new__(Element)
        res.terms = acc
        return res


class Block:
    """Block algebra: basis u_a with [u_a, u_b] = (f(a,b) + g(a-b)) u_{a+b}.

    With g != 0 the constructor takes (g, h) and derives f, so the Lie
    condition holds by construction; ``Block.raw_form`` skips that
    guarantee and exists only to feed negative tests of the Lie verifier.
    """

    family = "block"

    def __init__(self, g: AdditiveMap, h, f: BiadditiveForm, raw: bool = False):
        self.g = g
        self.h = h
        self.f = f
        self.raw = raw

    @classmethod
    def from_gh(cls, g: AdditiveMap, h: AdditiveMap) -> "Block":
        if g.is_zero:
            raise ValueError("use Block.with_form for g = 0")
        return cls(g, h, form_from_gh(g, h))

    @classmethod
    def with_form(cls, f: BiadditiveForm) -> "Block":
        g = AdditiveMap((0,) * f.rank)
        return cls(g, None, f)

    @classmethod
    def raw_form(cls, g: AdditiveMap, f: BiadditiveForm) -> "Block":
        """Arbitrary (g, f) pair; not guaranteed to be a Lie algebra."""
        return cls(g, None, f, raw=True)

    @property
    def rank(self) -> int:
        return self.f.rank

    @property
    def g_is_zero(self) -> bool:
        return self.g.is_zero

    def bracket_coeff(self, a, b) -> Fraction:
        return self.f(a, b) + self.g(sub(a, b))

    def basis(self, a) -> Element:
        return Element({tuple(a): Fraction(1)})

    def basis_labels(self, points):
        return list(points)

    def basis_element(self, label) -> Element:
        return self.basis(label)

    def bracket(self, x: Element, y: Element) -> Element:
        return _scalar_bracket(self, x, y)


class WittType:
    """Witt type algebra: basis e_a with [e_a, e_b] = (f(b) - f(a)) e_{a+b}."""

    family = "witt_type"

    def __init__(self, f: AdditiveMap):
        self.f = f

    @property
    def rank(self) -> int:
        return self.f.rank

    def bracket_coeff(self, a, b) -> Fraction:
        return self.f(b) - self.f(a)

    def basis(self, a) -> Element:
        return Element({tuple(a): Fraction(1)})

    def basis_labels(self, points):
        return list(points)

    def basis_element(self, label) -> Element:
        return self.basis(label)

    def bracket(self, x: Element, y: Element) -> Element:
        return _scalar_bracket(self, x, y)


def _scalar_bracket(spec, x: Element, y: Element) -> Element:
    acc = {}
    coeff_fn = spec.bracket_coeff
    for a, xa in x.terms.items():
        for b, yb in y.terms.items():
            c = coeff_fn(a, b)
            if not c:
                continue
            c *= xa * yb
            idx = add(a, b)
            s = acc.get(idx)
            if s is None:
                acc[idx] = c
            else:
                s += c
                if s:
                    acc[idx] = s
                else:
                    del acc[idx]
    res = Element.__new__(Element)
    res.terms = acc
    return res


def bracket(spec, x: Element, y: Element) -> Element:
    """Bilinear extension of the family's basis bracket; exact, untruncated."""
    for el in (x, y):
        for c in el.terms.values():
            vectorial = isinstance(c, tuple)
            if vectorial != (spec.family == "generalized_witt"):
                raise SpecMismatchError("element coefficients do not match the family")
    return spec.bracket(x, y)


@dataclass(frozen=True)
class LieReport:
    """Outcome of the anticommutativity and Jacobi scans on a window."""

    anticommutative: bool
    anticommutativity_witness: tuple
    jacobi: bool
    jacobi_witness: tuple
    n_pairs: int
    n_triples: int

    @property
    def passed(self) -> bool:
        return self.anticommutative and self.jacobi


def verify_lie_axioms(spec, window: Window, max_triples=None) -> LieReport:
    """Check [x,y] + [y,x] = 0 and the Jacobi identity on the window.

    Anticommutativity is checked on all ordered basis pairs first; with it
    established, the Jacobi identity only needs unordered triples (it is
    alternating in its arguments up to sign).
    """
    points = search_order(window.radius, spec.rank)
    labels = spec.basis_labels(points)
    elems = [spec.basis_element(l) for l in labels]
    n = len(labels)

    pair_bracket = [[None] * n for _ in range(n)]
    anti_ok, anti_witness = True, None
    for i in range(n):
        for j in range(n):
            pair_bracket[i][j] = spec.bracket(elems[i], elems[j])
    n_pairs = 0
    for i in range(n):
        for j in range(i, n):
            n_pairs += 1
            residual = pair_bracket[i][j] + pair_bracket[j][i]
            if not residual.is_zero:
                anti_ok = False
                anti_witness = (labels[i], labels[j], residual)
                break
        if not anti_ok:
            break

    jac_ok, jac_witness = True, None
    n_triples = 0
    for i in range(n):
        if not jac_ok:
            break
        for j in range(i, n):
            if not jac_ok:
                break
            for k in range(j, n):
                n_triples += 1
                if max_triples is not None and n_triples > max_triples:
                    raise ValueError("max_triples limit exceeded")
                residual = (spec.bracket(pair_bracket[i][j], elems[k])
                            + spec.bracket(pair_bracket[j][k], elems[i])
                            + spec.bracket(pair_bracket[k][i], elems[j]))
                if not residual.is_zero:
                    jac_ok = False
                    jac_witness = (labels[i], labels[j], labels[k], residual)
                    break

    return LieReport(anti_ok, anti_witness, jac_ok, jac_witness, n_pairs, n_triples)


def _require_block(spec):
    if spec.family != "block":
        raise FamilyMismatchError("operation is defined for Block algebras only")
    if not spec.g_is_zero and spec.h is None:
        raise FamilyMismatchError("predicate needs the (g, h) presentation")


def center_predicate(spec, a) -> bool:
    """Whether u_a is central according to the classification."""
    _require_block(spec)
    if spec.g_is_zero:
        return not any(a)
    return spec.g(a) == 0 and spec.h(a) + 1 == 0


def square_predicate(spec, a) -> bool:
    """Whether u_a lies in the span of all brackets."""
    _require_block(spec)
    if spec.g_is_zero:
        return any(a)
    return spec.g(a) != 0 or spec.h(a) + 2 != 0


@dataclass(frozen=True)
class CenterSquareReport:
    confirmed: tuple
    witnesses: dict
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_center(spec, window: Window) -> CenterSquareReport:
    """Confirm the center predicate for every index in the inner box.

    Predicate-true indices must commute with the whole box; for
    predicate-false indices a non-commuting partner is exhibited.
    """
    _require_block(spec)
    box = box_points(window.radius, spec.rank)
    order = search_order(window.radius, spec.rank)
    confirmed, witnesses, failures = [], {}, []
    for a in box_points(window.inner_margin, spec.rank):
        if center_predicate(spec, a):
            bad = next((b for b in box if spec.bracket_coeff(a, b)), None)
            if bad is None:
                confirmed.append(a)
            else:
                failures.append((a, bad))
        else:
            hit = next((b for b in order if spec.bracket_coeff(a, b)), None)
            if hit is None:
                failures.append((a, None))
            else:
                witnesses[a] = hit
    return CenterSquareReport(tuple(confirmed), witnesses, tuple(failures))


def verify_square(spec, window: Window) -> CenterSquareReport:
    """Confirm the square predicate for every index in the inner box.

    Predicate-true indices get a pair (a-b, b) bracketing to a nonzero
    multiple of u_a, built by the classification's own recipes;
    predicate-false indices are checked by exhausting all box pairs that
    add up to a.
    """
    _require_block(spec)
    box = box_points(window.radius, spec.rank)
    box_set = set(box)
    order = search_order(window.radius, spec.rank)
    confirmed, witnesses, failures = [], {}, []
    for a in box_points(window.inner_margin, spec.rank):
        if square_predicate(spec, a):
            b = _square_witness(spec, a, order)
            if b is None:
                failures.append((a, None))
            else:
                witnesses[a] = (b, spec.bracket_coeff(sub(a, b), b))
        else:
            bad = next(
                (x for x in box
                 if sub(a, x) in box_set and spec.bracket_coeff(x, sub(a, x))),
                None)
            if bad is None:
                confirmed.append(a)
            else:
                failures.append((a, bad))
    return CenterSquareReport(tuple(confirmed), witnesses, tuple(failures))


def _square_witness(spec, a, order):
    if spec.g_is_zero:
        for b in order:
            if spec.f(a, b):
                return b
        return None
    if spec.g(a):
        return zero(spec.rank)
    for b in order:
        if spec.g(b) and spec.bracket_coeff(sub(a, b), b):
            return b
    return None


@dataclass(frozen=True)
class WittTypeCorrespondence:
    """Rank-one reduction of a generalized Witt algebra to Witt type."""

    f: AdditiveMap
    v: tuple
    verified: bool
    n_pairs: int

    def target(self) -> WittType:
        return WittType(self.f)


def witt_to_witt_type(spec: GeneralizedWitt, v=None, window: Window = None):
    """Reduce a dim-V = 1 generalized Witt algebra to its Witt type form.

    Returns the additive map f(a) = <v, a> together with a verification
    that a (x) v -> e_a intertwines the brackets on all window pairs.
    """
    if spec.family != "generalized_witt" or spec.dim_v != 1:
        raise FamilyMismatchError("requires a generalized Witt algebra with dim V = 1")
    if v is None:
        v = (Fraction(1),)
    v = tuple(Fraction(x) for x in v)
    if not any(v):
        raise ValueError("v must be nonzero")
    if window is None:
        window = Window(2)
    fvals = [spec.pairing(v, unit) for unit in _lattice_units(spec.rank)]
    f = AdditiveMap(fvals)
    target = WittType(f)
    ok = True
    points = box_points(window.radius, spec.rank)
    n_pairs = 0
    for a in points:
        for b in points:
            n_pairs += 1
            w_side = spec.bracket(spec.element(a, v), spec.element(b, v))
            mapped = Element({idx: c[0] / v_scale(v)
                              for idx, c in w_side.terms.items()})
            v_side = target.bracket(target.basis(a), target.basis(b))
            if mapped != v_side:
                ok = False
                break
        if not ok:
            break
    return WittTypeCorrespondence(f, v, ok, n_pairs)


def v_scale(v):
    return next(x for x in v if x)


def _lattice_units(rank):
    for i in range(rank):
        unit = [0] * rank
        unit[i] = 1
        yield tuple(unit)


def element_to_json(el: Element):
    out = []
    for idx in sorted(el.terms):
        c = el.terms[idx]
        if isinstance(c, tuple):
            coeff = [scalar_to_str(x) for x in c]
        else:
            coeff = scalar_to_str(c)
        out.append({"index": list(idx), "coeff": coeff})
    return out


def element_from_json(data) -> Element:
    terms = {}
    for item in data:
        idx = tuple(int(x) for x in item["index"])
        coeff = item["coeff"]
        if isinstance(coeff, list):
            terms[idx] = tuple(scalar_from_str(x) for x in coeff)
        else:
            terms[idx] = scalar_from_str(coeff)
    return Element(terms)


def spec_to_json(spec) -> dict:
    if spec.family == "generalized_witt":
        return {"family": "generalized_witt", "pairing": spec.pairing.to_json()}
    if spec.family == "block":
        out = {"family": "block"}
        if spec.raw:
            out["g"] = spec.g.to_json()
            out["f"] = spec.f.to_json()
            out["raw"] = True
        elif spec.g_is_zero:
            out["f"] = spec.f.to_json()
        else:
            out["g"] = spec.g.to_json()
            out["h"] = spec.h.to_json()
        return out
    if spec.family == "witt_type":
        return {"family": "witt_type", "f": spec.f.to_json()}
    raise FamilyMismatchError("unknown family %r" % (spec.family,))


def spec_from_json(data: dict):
    family = data.get("family")
    if family == "generalized_witt":
        return GeneralizedWitt(Pairing.from_json(data["pairing"]))
    if family == "block":
        if data.get("raw"):
            return Block.raw_form(AdditiveMap.from_json(data["g"]),
                                  BiadditiveForm.from_json(data["f"]))
        if "h" in data:
            return Block.from_gh(AdditiveMap.from_json(data["g"]),
                                 AdditiveMap.from_json(data["h"]))
        return Block.with_form(BiadditiveForm.from_json(data["f"]))
    if family == "witt_type":
        return WittType(AdditiveMap.from_json(data["f"]))
    raise ValueError("unknown algebra family %r" % (family,))
