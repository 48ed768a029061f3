"""Sparse exact Laurent polynomials and the cluster expansion formulas.

The ring is Z[x_1^+-, ..., x_n^+-, y_1, ..., y_n]; terms are stored as
{(x_exponents, y_exponents): coefficient} with arbitrary-precision
integer coefficients.  Bangle functions of curves expand over the order
coideals (predecessor-closed vertex subsets) of the coefficient quiver;
dual Caldero-Chapoton functions use the same counts through the
quiver-Grassmannian interpretation of coideals and multiply over direct
summands.
"""

from dataclasses import dataclass
from .homological import DecoratedModule, g_vector
from .strings import BandWord, DictionaryExhausted, StringWord, decompose
from .surface import CoefficientQuiver, build_QT, \
    coefficient_quiver, shear_coordinates, _vnum


class UnsupportedModule(ValueError):
    pass


@dataclass(frozen=True)
class LaurentPoly:
    n: int
    terms: tuple  # sorted ((x_exps, y_exps), coeff) with nonzero coeffs

    @staticmethod
    def from_dict(n, d):
        items = tuple(sorted((k, int(v)) for k, v in d.items() if v))
        return LaurentPoly(n, items)

    @staticmethod
    def zero(n):
        return LaurentPoly(n, ())

    @staticmethod
    def one(n):
        return LaurentPoly.monomial(n, (0,) * n, (0,) * n)

    @staticmethod
    def monomial(n, xe, ye, coeff=1):
        return LaurentPoly.from_dict(n, {(tuple(xe), tuple(ye)): coeff})

    def __add__(self, other):
        d = dict(self.terms)
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return LaurentPoly.from_dict(self.n, d)

    def __mul__(self, other):
        d = {}
        for (x1, y1), c1 in self.terms:
            for (x2, y2), c2 in other.terms:
                k = (tuple(a + b for a, b in zip(x1, x2)),
                     tuple(a + b for a, b in zip(y1, y2)))
                d[k] = d.get(k, 0) + c1 * c2
        return LaurentPoly.from_dict(self.n, d)

    def __pow__(self, k):
        out = LaurentPoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def coeff_sum(self):
        return sum(c for _, c in self.terms)

    def term_order(self):
        """Terms sorted by (y-exponents, x-exponents)."""
        return sorted(self.terms, key=lambda t: (t[0][1], t[0][0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (xe, ye), c in self.term_order():
            bits = [str(c)]
            for i, e in enumerate(xe):
                if e:
                    bits.append(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}")
            for i, e in enumerate(ye):
                if e:
                    bits.append(f"y{i + 1}^{e}" if e != 1 else f"y{i + 1}")
            parts.append("*".join(bits))
        return " + ".join(parts)

    def to_json(self):
        return [{"coeff": c, "x": list(xe), "y": list(ye)}
                for (xe, ye), c in self.term_order()]

    @staticmethod
    def from_json(n, data):
        d = {}
        for t in data:
            k = (tuple(t["x"]), tuple(t["y"]))
            d[k] = d.get(k, 0) + int(t["coeff"])
        return LaurentPoly.from_dict(n, d)


def specialize(poly, y_values=None):
    """Substitute integers for the y-variables (all 1 by default)."""
    n = poly.n
    if y_values is None:
        y_values = [1] * n
    d = {}
    for (xe, ye), c in poly.terms:
        f = c
        for i, e in enumerate(ye):
            f *= y_values[i] ** e
        k = (xe, (0,) * n)
        d[k] = d.get(k, 0) + f
    return LaurentPoly.from_dict(n, d)


# ---------------------------------------------------------------------------
# signed adjacency and coefficient variables


def signed_adjacency(T):
    """b_ij = #arrows i->j minus #arrows j->i of the triangulation quiver."""
    A = build_QT(T)
    n = A.n
    b = [[0] * n for _ in range(n)]
    for aid, s, t in A.quiver.arrows:
        b[s - 1][t - 1] += 1
        b[t - 1][s - 1] -= 1
    for i in range(n):
        for j in range(n):
            if b[i][j] + b[j][i] != 0:
                raise AssertionError("signed adjacency not skew-symmetric")
    return b


def yhat(j, B):
    """The monomial y_j * prod_i x_i^{b_ij}."""
    n = len(B)
    xe = tuple(B[i][j - 1] for i in range(n))
    ye = tuple(1 if i == j - 1 else 0 for i in range(n))
    return LaurentPoly.monomial(n, xe, ye)


# ---------------------------------------------------------------------------
# order coideals


def order_coideals(Q):
    """All predecessor-closed vertex subsets, ascending as bitmasks."""
    m = len(Q.labels)
    preds = [[] for _ in range(m)]
    for u, v, _ in Q.arrows:
        preds[v - 1].append(u - 1)
    out = []
    for mask in range(1 << m):
        ok = True
        for v in range(m):
            if mask >> v & 1:
                for u in preds[v]:
                    if not mask >> u & 1:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(frozenset(v + 1 for v in range(m) if mask >> v & 1))
    return out


def coideal_generating_function(Q, B):
    """Sum over order coideals of the product of yhat over the labels."""
    n = len(B)
    total = LaurentPoly.zero(n)
    for I in order_coideals(Q):
        t = LaurentPoly.one(n)
        for pos in I:
            t = t * yhat(Q.labels[pos - 1], B)
        total = total + t
    return total


def word_coefficient_quiver(A, w):
    """Coefficient quiver of a string or band module from its word."""
    from .strings import letter_s, letter_t
    cyclic = isinstance(w, BandWord)
    if isinstance(w, StringWord) and w.is_trivial:
        return CoefficientQuiver((w.vertex,), (), False)
    ls = w.letters
    verts = [letter_t(A, c) for c in ls]
    if not cyclic:
        verts.append(letter_s(A, ls[-1]))
    m = len(verts)
    arrows = []
    for i, c in enumerate(ls):
        j2 = (i + 1) % m if cyclic else i + 1
        if c[1]:
            arrows.append((i + 1, j2 + 1, c[0]))
        else:
            arrows.append((j2 + 1, i + 1, c[0]))
    return CoefficientQuiver(tuple(verts), tuple(arrows), cyclic)


# ---------------------------------------------------------------------------
# bangle functions and dual CC functions


def bangle(T, gamma, B=None):
    """Laurent expansion of a curve: x^shear times the coideal sum."""
    if B is None:
        B = signed_adjacency(T)
    n = len(B)
    if gamma.kind == "arc":
        j = _vnum(T)[gamma.arc]
        return LaurentPoly.monomial(
            n, tuple(1 if i == j - 1 else 0 for i in range(n)), (0,) * n)
    s = shear_coordinates(T, gamma)
    Q = coefficient_quiver(T, gamma)
    return LaurentPoly.monomial(n, s, (0,) * n) * \
        coideal_generating_function(Q, B)


def bangle_lamination(T, L, B=None):
    if B is None:
        B = signed_adjacency(T)
    out = LaurentPoly.one(len(B))
    for gamma, mult in L.entries:
        out = out * bangle(T, gamma, B) ** mult
    return out


def cc_prime(T, dec, bound=10, B=None, algebra=None):
    """Dual Caldero-Chapoton function of a decorated module.

    x^g times the generating function of coideal counts (the Euler
    characteristics of the factor-module Grassmannians), multiplicative
    over direct summands.
    """
    A = algebra or build_QT(T)
    if B is None:
        B = signed_adjacency(T)
    n = A.n
    g = g_vector(A, dec)
    out = LaurentPoly.monomial(n, g, (0,) * n)
    if dec.module.dim() == 0:
        return out
    try:
        parts = decompose(A, dec.module, bound)
    except DictionaryExhausted as exc:
        raise UnsupportedModule(str(exc)) from exc
    for w in parts:
        word = w[0] if isinstance(w, tuple) else w
        Q = word_coefficient_quiver(A, word)
        out = out * coideal_generating_function(Q, B)
    return out


def generic_decorated_module(T, L, algebra=None):
    """A generic point of eta(L): summands with pairwise distinct band
    parameters, plus the decoration from the arcs."""
    from .strings import band_module, direct_sum, string_module, zero_rep
    from .surface import curve_to_module
    A = algebra or build_QT(T)
    n = A.n
    v = [0] * n
    parts = []
    lam_pool = iter((2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37))
    for gamma, mult in L.entries:
        if gamma.kind == "arc":
            v[_vnum(T)[gamma.arc] - 1] += mult
            continue
        w = curve_to_module(T, gamma)
        for _ in range(mult):
            if isinstance(w, BandWord):
                parts.append(band_module(A, w, next(lam_pool)))
            else:
                parts.append(string_module(A, w))
    M = direct_sum(A, parts) if parts else zero_rep(A)
    return DecoratedModule(M, tuple(v))


def verify_bangle_equals_generic(T, L, bound=12, algebra=None):
    """Compare the lamination bangle with the generic dual CC function.

    Returns (equal, lhs, rhs, first_diff)."""
    A = algebra or build_QT(T)
    B = signed_adjacency(T)
    lhs = bangle_lamination(T, L, B)
    dec = generic_decorated_module(T, L, algebra=A)
    rhs = cc_prime(T, dec, bound=bound, B=B, algebra=A)
    if lhs == rhs:
        return True, lhs, rhs, None
    lt = dict(lhs.terms)
    rt = dict(rhs.terms)
    for k in sorted(set(lt) | set(rt), key=lambda k: (k[1], k[0])):
        if lt.get(k, 0) != rt.get(k, 0):
            return False, lhs, rhs, (k, lt.get(k, 0), rt.get(k, 0))
    return False, lhs, rhs, None
