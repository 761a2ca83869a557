"""The graded ring Z[b2,b3,b4,b8]/(4b8 + b4^2 - b2b3^2).

Elements are kept in a normal form where the relation has been used to
eliminate every square of b4: monomials are (alpha, beta, epsilon,
gamma) for b2^alpha b3^beta b4^epsilon b8^gamma with epsilon <= 1.
These monomials are a free Z-basis, so equality is literal dictionary
equality.  Degrees: |b2| = 4, |b3| = 6, |b4| = 8, |b8| = 16.

The second half of the module computes, degree by degree, the lattice
spanned by the subring generated by 2b2, b3, b4, b2^2, b2b3, b2b4, b8
inside the full degree component, plus membership tests and the
cokernel.  The quotient is elementary abelian 2-torsion concentrated
on the monomials b2^(2m+1) b8^n.
"""

from functools import lru_cache

from .lattice import FPAbelianGroup, hermite_normal_form, in_row_span
from .series import QYSeries
from .generators import generator_table, stabilizer_power

GENERATOR_DEGREES = (4, 6, 8, 16)  # b2, b3, b4, b8


class Inhomogeneous(ValueError):
    """Raised when an operation needs a single-degree element."""


def monomial_degree(mono):
    a, b, e, g = mono
    return 4 * a + 6 * b + 8 * e + 16 * g


def monomial_index(mono):
    # index-subscript sum; always half the degree
    a, b, e, g = mono
    return 2 * a + 3 * b + 4 * e + 8 * g


class JFElement:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        # internal: coeffs must already be in normal form with no zeros
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("JFElement is immutable")

    def is_zero(self):
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items())

    def degrees(self):
        return sorted({monomial_degree(m) for m in self.coeffs})

    @property
    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) > 1:
            raise Inhomogeneous("element mixes degrees %s" % (ds,))
        return ds[0]

    def graded_component(self, d):
        return JFElement({m: c for m, c in self.coeffs.items()
                          if monomial_degree(m) == d})

    def graded_components(self):
        out = {}
        for m, c in self.coeffs.items():
            out.setdefault(monomial_degree(m), {})[m] = c
        return {d: JFElement(coeffs) for d, coeffs in sorted(out.items())}

    def __eq__(self, other):
        if not isinstance(other, JFElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self):
        return JFElement({m: -c for m, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, JFElement):
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return JFElement(out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if k == 0:
            return JFElement({})
        return JFElement({m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, JFElement):
            return NotImplemented
        acc = {}
        for (a1, b1, e1, g1), c1 in self.coeffs.items():
            for (a2, b2, e2, g2), c2 in other.coeffs.items():
                _accumulate_reduced(acc, (a1 + a2, b1 + b2, e1 + e2, g1 + g2),
                                    c1 * c2)
        return JFElement(acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __repr__(self):
        return "JFElement(%s)" % render_element_text(self)


def _accumulate_reduced(acc, mono, coeff):
    # rewrite b4^2 -> b2 b3^2 - 4 b8 until epsilon <= 1
    stack = [(mono, coeff)]
    while stack:
        (a, b, e, g), c = stack.pop()
        if e <= 1:
            key = (a, b, e, g)
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        else:
            stack.append(((a + 1, b + 2, e - 2, g), c))
            stack.append(((a, b, e - 2, g + 1), -4 * c))


def normal_form(p):
    """Normalize a polynomial in b2, b3, b4, b8 (b4-exponents unrestricted).

    Accepts a JFElement, a map monomial -> coeff, or an iterable of
    (monomial, coeff) pairs, where a monomial is a 4-tuple of
    nonnegative exponents (b2, b3, b4, b8).
    """
    if isinstance(p, JFElement):
        return p
    if isinstance(p, dict):
        pairs = p.items()
    else:
        pairs = p
    acc = {}
    for mono, coeff in pairs:
        a, b, e, g = mono
        if min(a, b, e, g) < 0:
            raise ValueError("negative exponent in %r" % (mono,))
        _accumulate_reduced(acc, (a, b, e, g), coeff)
    return JFElement(acc)


def jf_add(x, y):
    return normal_form(x) + normal_form(y)


def jf_mul(x, y):
    return normal_form(x) * normal_form(y)


ONE = JFElement({(0, 0, 0, 0): 1})
B2 = JFElement({(1, 0, 0, 0): 1})
B3 = JFElement({(0, 1, 0, 0): 1})
B4 = JFElement({(0, 0, 1, 0): 1})
B8 = JFElement({(0, 0, 0, 1): 1})


@lru_cache(maxsize=None)
def degree_basis(d):
    """Normal-form monomials of degree d, descending lexicographic."""
    if d < 0 or d % 2:
        return ()
    out = []
    for g in range(d // 16 + 1):
        for e in (0, 1):
            rest = d - 16 * g - 8 * e
            if rest < 0:
                continue
            for b in range(rest // 6 + 1):
                r = rest - 6 * b
                if r % 4 == 0:
                    out.append((r // 4, b, e, g))
    out.sort(reverse=True)
    return tuple(out)


def element_coords(x, d):
    """Coordinates of a degree-d element in degree_basis(d)."""
    basis = degree_basis(d)
    index = {m: i for i, m in enumerate(basis)}
    vec = [0] * len(basis)
    for m, c in x.coeffs.items():
        if monomial_degree(m) != d:
            raise Inhomogeneous("monomial %r is not of degree %d" % (m, d))
        vec[index[m]] = c
    return vec


def element_from_coords(vec, d):
    basis = degree_basis(d)
    return JFElement({m: c for m, c in zip(basis, vec) if c})


# -- evaluation to series ---------------------------------------------

def eval_series(x, truncation):
    """Realize an element as a q-expansion.

    Returns (series, index) where index is the common index-subscript
    after padding.  For a homogeneous element no padding happens and
    index = degree/2; mixed-degree input is lifted to the maximal index
    with the calibrated stabilizer powers.
    """
    x = normal_form(x)
    t = generator_table(truncation)
    if x.is_zero():
        return QYSeries.zero(truncation), 0
    indices = {m: monomial_index(m) for m in x.coeffs}
    top = max(indices.values())
    acc = QYSeries.zero(truncation)
    for m, c in x.items():
        a, b, e, g = m
        s = t.b2 ** a * t.b3 ** b * t.b4 ** e * t.b8 ** g
        gap = top - indices[m]
        if gap:
            s = s * stabilizer_power(t.a, gap)
        acc = acc + s.scale(c)
    return acc, top


# -- the image lattice and its cokernel --------------------------------

IMAGE_GENERATORS = (
    B2.scale(2),
    B3,
    B4,
    B2 * B2,
    B2 * B3,
    B2 * B4,
    B8,
)


@lru_cache(maxsize=None)
def _image_lattice(d):
    """HNF rows spanning the degree-d piece of the subring generated by
    the seven image generators, in degree_basis(d) coordinates."""
    if d == 0:
        return ([1],)
    basis = degree_basis(d)
    if not basis:
        return ()
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for gen in IMAGE_GENERATORS:
        dg = gen.degree()
        if dg > d:
            continue
        for sub_row in _image_lattice(d - dg):
            elem = gen * element_from_coords(sub_row, d - dg)
            vec = [0] * len(basis)
            for m, c in elem.coeffs.items():
                vec[index[m]] = c
            rows.append(vec)
    return tuple(tuple(r) for r in hermite_normal_form(rows, len(basis)))


def image_basis(d):
    """Lattice basis (HNF rows) of the image in degree d."""
    return [list(r) for r in _image_lattice(d)]


def in_image(x):
    """Is the element in the subring generated by the seven generators?"""
    x = normal_form(x)
    if x.is_zero():
        return True
    d = x.degree()  # raises Inhomogeneous on mixed degrees
    lattice = _image_lattice(d)
    return in_row_span([list(r) for r in lattice], element_coords(x, d))


def cokernel(d):
    """Z^basis(d) modulo the image lattice, as an abelian group."""
    basis = degree_basis(d)
    return FPAbelianGroup.from_presentation(
        len(basis), [list(r) for r in _image_lattice(d)])


def expected_cokernel_rank(d):
    """#{(m, n) >= 0 : 4(2m+1) + 16n = d}."""
    return len(cokernel_representatives(d))


def cokernel_representatives(d):
    """The monomials b2^(2m+1) b8^n of degree d, descending lex."""
    out = []
    n = 0
    while 16 * n + 4 <= d:
        rest = d - 16 * n
        if rest % 4 == 0 and (rest // 4) % 2 == 1:
            out.append((rest // 4, 0, 0, n))
        n += 1
    out.sort(reverse=True)
    return out


# -- rendering ---------------------------------------------------------

_GEN_NAMES = ("b2", "b3", "b4", "b8")


def _monomial_factors(mono):
    out = []
    for name, e in zip(_GEN_NAMES, mono):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append("%s^%d" % (name, e))
    return out


def render_element_text(x):
    """Canonical text form, monomials in ascending lexicographic order."""
    if x.is_zero():
        return "0"
    parts = []
    for mono, c in x.items():
        factors = _monomial_factors(mono)
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append("-" + body if c < 0 else body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def render_element_json(x):
    return [{"a": m[0], "b": m[1], "e": m[2], "g": m[3], "c": str(c)}
            for m, c in x.items()]


def element_from_json(data):
    return normal_form([((t["a"], t["b"], t["e"], t["g"]), int(t["c"]))
                        for t in data])
