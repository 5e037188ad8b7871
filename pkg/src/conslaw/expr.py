"""Immutable symbolic expressions for differential functions on jet space.

An expression is kept permanently in a canonical form: a ratio of two sparse
multivariate polynomials (rational coefficients) over an interned atom set.
Atoms are the four coordinates t, x1, x2, x3, named real parameters, jet
variables u^a_J with an unordered multi-index J, and applications of opaque
(constitutive) functions whose arguments are themselves canonical expressions.

Because the form is canonical, an expression vanishes identically as a
differential function exactly when its numerator is the zero polynomial.
"""
from __future__ import annotations

import math
from fractions import Fraction


class ExprError(Exception):
    pass


class DivisionByZero(ExprError):
    pass


class CyclicSubstitution(ExprError):
    pass


class MissingBinding(ExprError):
    pass


class NumericOverflow(ExprError):
    pass


class UnsupportedClass(ExprError):
    pass


class ShapeError(ExprError):
    pass


COORD_NAMES = ("t", "x1", "x2", "x3")
SPATIAL_NAMES = ("x1", "x2", "x3")

# ---------------------------------------------------------------------------
# atom interning
#
# Atom kinds, in canonical sort order: coordinates, parameters, jet variables,
# opaque applications.  Each atom gets a small integer id; monomials are
# sorted tuples of (atom_id, exponent).

_KIND_COORD = 0
_KIND_PARAM = 1
_KIND_JET = 2
_KIND_OPAQUE = 3

_atom_ids = {}      # key -> id
_atom_info = []     # id -> (kind, data, sort_key)


def _intern(kind, data, sort_key):
    key = (kind, data)
    aid = _atom_ids.get(key)
    if aid is None:
        aid = len(_atom_info)
        _atom_ids[key] = aid
        _atom_info.append((kind, data, sort_key))
    return aid


def _atom_kind(aid):
    return _atom_info[aid][0]


def _atom_data(aid):
    return _atom_info[aid][1]


def atom_sort_key(aid):
    return _atom_info[aid][2]


# ---------------------------------------------------------------------------
# polynomial layer: dict {monomial: Fraction}, monomial = ((aid, exp), ...)

_ONE_M = ()


def _pconst(c):
    c = Fraction(c)
    return {_ONE_M: c} if c else {}


def _patom(aid):
    return {((aid, 1),): Fraction(1)}


def _padd(a, b):
    r = dict(a)
    for m, c in b.items():
        s = r.get(m, 0) + c
        if s:
            r[m] = s
        else:
            r.pop(m, None)
    return r


def _pneg(a):
    return {m: -c for m, c in a.items()}


def _pscale(a, c):
    c = Fraction(c)
    if not c:
        return {}
    return {m: q * c for m, q in a.items()}


def _mmul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for aid, e in m2:
        d[aid] = d.get(aid, 0) + e
    return tuple(sorted((aid, e) for aid, e in d.items() if e))


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    r = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mmul(m1, m2)
            s = r.get(m, 0) + c1 * c2
            if s:
                r[m] = s
            else:
                r.pop(m, None)
    return r


def _ppow(a, n):
    r = _pconst(1)
    b = a
    while n:
        if n & 1:
            r = _pmul(r, b)
        b = _pmul(b, b) if n > 1 else b
        n >>= 1
    return r


def _pdeg(a, aid):
    d = 0
    for m in a:
        for i, e in m:
            if i == aid and e > d:
                d = e
    return d


def _pvars(a):
    s = set()
    for m in a:
        for aid, _ in m:
            s.add(aid)
    return s


def _plead(a):
    # deterministic "leading" monomial: max by (total degree, monomial tuple)
    return max(a, key=lambda m: (sum(e for _, e in m), m))


def _is_monomial(a):
    return len(a) == 1


def _mono_gcd(a, b):
    # gcd of two monomial polynomials, up to units
    (ma, _), = a.items()
    (mb, _), = b.items()
    da = dict(ma)
    g = []
    for aid, e in mb:
        if aid in da:
            g.append((aid, min(e, da[aid])))
    return {tuple(sorted(g)): Fraction(1)}


def _pcoeffs_in(a, aid):
    """Split a into {degree_in_aid: polynomial in remaining atoms}."""
    out = {}
    for m, c in a.items():
        d = 0
        rest = []
        for i, e in m:
            if i == aid:
                d = e
            else:
                rest.append((i, e))
        t = out.setdefault(d, {})
        rm = tuple(rest)
        s = t.get(rm, 0) + c
        if s:
            t[rm] = s
        else:
            t.pop(rm, None)
    return {d: t for d, t in out.items() if t}


def _pfrom_coeffs(coeffs, aid):
    r = {}
    for d, p in coeffs.items():
        for m, c in p.items():
            mm = _mmul(m, ((aid, d),)) if d else m
            s = r.get(mm, 0) + c
            if s:
                r[mm] = s
            else:
                r.pop(mm, None)
    return r


def _pcontent(a, aid):
    """gcd of the coefficient polynomials of a as a polynomial in aid."""
    cs = list(_pcoeffs_in(a, aid).values())
    g = cs[0]
    for c in cs[1:]:
        g = _pgcd(g, c)
        if _is_monomial(g) and g.get(_ONE_M) is not None:
            return _pconst(1)
    return g


def _pdivexact(a, b):
    """Exact polynomial division a / b, or None if it does not divide."""
    if not a:
        return {}
    if b == _pconst(1):
        return a
    if _is_monomial(b):
        (mb, cb), = b.items()
        r = {}
        for m, c in a.items():
            d = dict(m)
            for aid, e in mb:
                d[aid] = d.get(aid, 0) - e
                if d[aid] < 0:
                    return None
            r[tuple(sorted((i, e) for i, e in d.items() if e))] = c / cb
        return r
    vs = sorted(_pvars(b))
    aid = vs[-1]
    num = dict(a)
    quo = {}
    bc = _pcoeffs_in(b, aid)
    db = max(bc)
    blead = bc[db]
    guard = len(a) * (db + 2) + 10
    while num:
        nc = _pcoeffs_in(num, aid)
        dn = max(nc)
        if dn < db:
            return None
        q = _pdivexact(nc[dn], blead)
        if q is None:
            return None
        term = _pfrom_coeffs({dn - db: q}, aid)
        quo = _padd(quo, term)
        num = _padd(num, _pneg(_pmul(term, b)))
        guard -= 1
        if guard < 0:
            return None
    return quo


def _prem(a, b, aid):
    """Pseudo-remainder of a by b with respect to atom aid."""
    ac = _pcoeffs_in(a, aid)
    bc = _pcoeffs_in(b, aid)
    db = max(bc)
    blead = bc[db]
    r = a
    guard = max(ac) - db + 2 if ac else 1
    while r:
        rc = _pcoeffs_in(r, aid)
        dr = max(rc)
        if dr < db:
            return r
        lead = rc[dr]
        r = _padd(_pmul(r, blead),
                  _pneg(_pmul(_pfrom_coeffs({dr - db: lead}, aid), b)))
        guard -= 1
        if guard < 0:
            raise ExprError("pseudo-division failed to terminate")
    return r


def _pprimitive(a, aid):
    c = _pcontent(a, aid)
    q = _pdivexact(a, c)
    return (q if q is not None else a), c


def _pgcd(a, b):
    """Polynomial gcd over the rationals, defined up to a unit."""
    if not a:
        return dict(b) if b else {}
    if not b:
        return dict(a)
    if _ONE_M in a and len(a) == 1:
        return _pconst(1)
    if _ONE_M in b and len(b) == 1:
        return _pconst(1)
    if _is_monomial(a) and _is_monomial(b):
        return _mono_gcd(a, b)
    if _is_monomial(a) or _is_monomial(b):
        mono = a if _is_monomial(a) else b
        other = b if _is_monomial(a) else a
        # common part is the monomial gcd over every term of the other
        g = mono
        for m, c in other.items():
            g = _mono_gcd(g, {m: c})
            if g == _pconst(1):
                return _pconst(1)
        return g
    va, vb = _pvars(a), _pvars(b)
    common = sorted(va & vb)
    if not common:
        return _pconst(1)
    aid = common[-1]
    pa, ca = _pprimitive(a, aid)
    pb, cb = _pprimitive(b, aid)
    cont = _pgcd(ca, cb)
    # primitive PRS
    if _pdeg(pa, aid) < _pdeg(pb, aid):
        pa, pb = pb, pa
    guard = _pdeg(pa, aid) + _pdeg(pb, aid) + 4
    while True:
        r = _prem(pa, pb, aid)
        if not r:
            g, _ = _pprimitive(pb, aid)
            return _pmul(cont, g)
        if _pdeg(r, aid) == 0:
            return cont
        r, _ = _pprimitive(r, aid)
        pa, pb = pb, r
        guard -= 1
        if guard < 0:
            raise ExprError("gcd iteration failed to terminate")


def _pdiff(a, aid):
    r = {}
    for m, c in a.items():
        for i, (j, e) in enumerate(m):
            if j == aid:
                nm = list(m)
                if e == 1:
                    nm.pop(i)
                else:
                    nm[i] = (j, e - 1)
                t = tuple(nm)
                s = r.get(t, 0) + c * e
                if s:
                    r[t] = s
                else:
                    r.pop(t, None)
                break
    return r


# ---------------------------------------------------------------------------
# Expr

class Expr:
    """A differential function in canonical rational normal form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den):
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -------------------------------------------------------

    @staticmethod
    def _make(num, den):
        if not den:
            raise DivisionByZero("division by an identically zero expression")
        if not num:
            return _ZERO if _ZERO is not None else Expr({}, _pconst(1))
        if den != _pconst(1):
            g = _pgcd(num, den)
            if g != _pconst(1):
                qn = _pdivexact(num, g)
                qd = _pdivexact(den, g)
                if qn is not None and qd is not None:
                    num, den = qn, qd
            lc = den[_plead(den)]
            if lc != 1:
                num = _pscale(num, Fraction(1) / lc)
                den = _pscale(den, Fraction(1) / lc)
        e = Expr(num, den)
        return e

    @staticmethod
    def const(c):
        return Expr._make(_pconst(Fraction(c)), _pconst(1))

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_constant(self):
        return (not _pvars(self.num)) and (not _pvars(self.den))

    def as_fraction(self):
        if not self.is_constant:
            raise ExprError("not a constant expression")
        if self.is_zero:
            return Fraction(0)
        return self.num[_ONE_M] / self.den[_ONE_M]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = as_expr(other)
        if self.den == other.den:
            return Expr._make(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Expr._make(num, _pmul(self.den, other.den))

    def __radd__(self, other):
        return as_expr(other) + self

    def __neg__(self):
        return Expr(_pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, VectorExpr):
            return NotImplemented
        other = as_expr(other)
        return Expr._make(_pmul(self.num, other.num),
                          _pmul(self.den, other.den))

    def __rmul__(self, other):
        return as_expr(other) * self

    def __truediv__(self, other):
        other = as_expr(other)
        if other.is_zero:
            raise DivisionByZero("division by an expression that normalizes to zero")
        return Expr._make(_pmul(self.num, other.den),
                          _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return as_expr(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ExprError("only integer powers are supported")
        if n == 0:
            return ONE
        if n < 0:
            if self.is_zero:
                raise DivisionByZero("negative power of zero")
            return Expr._make(_ppow(self.den, -n), _ppow(self.num, -n))
        return Expr._make(_ppow(self.num, n), _ppow(self.den, n))

    def __eq__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, (int, Fraction)):
                other = Expr.const(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()),
                               frozenset(self.den.items())))
        return self._hash

    # -- structure -----------------------------------------------------------

    def atom_ids(self):
        return _pvars(self.num) | _pvars(self.den)

    def jet_atom_ids(self):
        return {a for a in self.atom_ids() if _atom_kind(a) == _KIND_JET}

    def jet_order(self):
        """Highest derivative order among jet atoms (0 if jet-free)."""
        order = 0
        for a in self.jet_atom_ids():
            _, idx = _atom_data(a)
            if len(idx) > order:
                order = len(idx)
        return order

    def diff_atom(self, aid):
        """Partial derivative with respect to a single atom."""
        dn = _pdiff(self.num, aid)
        if self.den == _pconst(1):
            return Expr._make(dn, _pconst(1))
        dd = _pdiff(self.den, aid)
        num = _padd(_pmul(dn, self.den), _pneg(_pmul(self.num, dd)))
        return Expr._make(num, _pmul(self.den, self.den))

    def subs_atoms(self, mapping):
        """Simultaneously replace atoms (by id) with expressions."""
        if not self._mentions(set(mapping)):
            return self

        def image(aid):
            if aid in mapping:
                return mapping[aid]
            if _atom_kind(aid) == _KIND_OPAQUE:
                fn, args = _atom_data(aid)
                new_args = tuple(a.subs_atoms(mapping) for a in args)
                if new_args != args:
                    return fn(*new_args)
            return Expr(_patom(aid), _pconst(1))

        def poly_image(p):
            total = ZERO
            for m, c in p.items():
                term = Expr.const(c)
                for aid, e in m:
                    term = term * image(aid) ** e
                total = total + term
            return total

        # opaque atoms may hide mapped atoms inside their arguments
        extra = {}
        for aid in self.atom_ids():
            if aid in mapping or _atom_kind(aid) != _KIND_OPAQUE:
                continue
            _, args = _atom_data(aid)
            if any(a.atom_ids() & set(mapping) for a in args):
                extra[aid] = image(aid)
        if extra:
            full = dict(mapping)
            full.update(extra)
            return self.subs_atoms(full)
        num_e = poly_image(self.num)
        if self.den == _pconst(1):
            return num_e
        den_e = poly_image(self.den)
        if den_e.is_zero:
            raise DivisionByZero("substitution made a denominator vanish")
        return num_e / den_e

    def _mentions(self, keys):
        for aid in self.atom_ids():
            if aid in keys:
                return True
            if _atom_kind(aid) == _KIND_OPAQUE:
                _, args = _atom_data(aid)
                if any(a._mentions(keys) for a in args):
                    return True
        return False

    def eval(self, binding):
        """IEEE double evaluation; see eval_point."""
        nv = _poly_eval(self.num, binding)
        if self.den == _pconst(1):
            v = nv
        else:
            dv = _poly_eval(self.den, binding)
            if dv == 0.0:
                raise NumericOverflow("denominator evaluated to zero")
            v = nv / dv
        if not math.isfinite(v):
            raise NumericOverflow("non-finite value")
        return v

    def __repr__(self):
        return "<Expr %s>" % format_expr(self)


def _poly_eval(p, binding):
    total = 0.0
    for m, c in p.items():
        try:
            v = float(c)
            for aid, e in m:
                v *= _atom_value(aid, binding) ** e
            total += v
        except OverflowError:
            raise NumericOverflow("value too large for IEEE double")
    return total


def _atom_value(aid, binding):
    kind, data, _ = _atom_info[aid]
    if kind == _KIND_OPAQUE:
        fn, args = data
        f = binding.get(fn.name)
        if f is None:
            f = fn.evaluator
        if f is None:
            raise MissingBinding("no numeric binding for function %r" % fn.name)
        return f(*[a.eval(binding) for a in args])
    e = Expr(_patom(aid), _pconst(1))
    if e in binding:
        return float(binding[e])
    name = data if kind != _KIND_JET else None
    if name is not None and name in binding:
        return float(binding[name])
    raise MissingBinding("unbound atom %s" % format_expr(e))


_ZERO = None
ZERO = Expr._make({}, _pconst(1))
_ZERO = ZERO
ONE = Expr.const(1)


def as_expr(v):
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Expr.const(v)
    raise ExprError("cannot coerce %r to Expr" % (v,))


# ---------------------------------------------------------------------------
# atom constructors

def coord(name):
    if name not in COORD_NAMES:
        raise ExprError("unknown coordinate %r" % name)
    aid = _intern(_KIND_COORD, name, (_KIND_COORD, COORD_NAMES.index(name)))
    return Expr(_patom(aid), _pconst(1))


def param(name):
    aid = _intern(_KIND_PARAM, name, (_KIND_PARAM, name))
    return Expr(_patom(aid), _pconst(1))


def jet(dep, index=()):
    """Jet variable for dependent `dep` with unordered multi-index `index`."""
    idx = tuple(sorted(index, key=COORD_NAMES.index))
    for c in idx:
        if c not in COORD_NAMES:
            raise ExprError("bad derivative coordinate %r" % c)
    aid = _intern(_KIND_JET, (dep, idx),
                  (_KIND_JET, dep, len(idx), tuple(COORD_NAMES.index(c) for c in idx)))
    return Expr(_patom(aid), _pconst(1))


def jet_info(aid):
    """(dependent, index) of a jet atom id."""
    return _atom_data(aid)


def atom_of(e):
    """The single atom id of an atomic expression, else None."""
    if e.den != _pconst(1) or len(e.num) != 1:
        return None
    (m, c), = e.num.items()
    if c != 1 or len(m) != 1 or m[0][1] != 1:
        return None
    return m[0][0]


class OpaqueFunction:
    """A constitutive function treated as an atom after argument normalization.

    partials[i] gives the derivative with respect to argument i, either as a
    callable (args -> Expr template) or None, in which case a derived opaque
    function is created on demand.  Every partial reached while
    differentiating must therefore be either registered or derivable.
    """

    def __init__(self, name, arity, partials=None, evaluator=None, base=None, dindex=()):
        self.name = name
        self.arity = arity
        self.partials = list(partials) if partials is not None else [None] * arity
        if len(self.partials) != arity:
            raise ExprError("need one partial slot per argument")
        self.evaluator = evaluator
        self.base = base or self
        self.dindex = dindex
        self._derived = {}

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ExprError("%s expects %d arguments" % (self.name, self.arity))
        args = tuple(as_expr(a) for a in args)
        key = tuple((frozenset(a.num.items()), frozenset(a.den.items())) for a in args)
        aid = _intern(_KIND_OPAQUE, (self, args),
                      (_KIND_OPAQUE, self.name, key))
        return Expr(_patom(aid), _pconst(1))

    def partial(self, i, args):
        p = self.partials[i]
        if p is not None:
            return p(*args)
        return self._derived_fn(i)(*args)

    def _derived_fn(self, i):
        root = self.base
        idx = tuple(sorted(self.dindex + (i,)))
        fn = root._derived.get(idx)
        if fn is None:
            name = "%s_d%s" % (root.name, "".join(str(k) for k in idx))
            fn = OpaqueFunction(name, self.arity, base=root, dindex=idx)
            root._derived[idx] = fn
        return fn


def opaque_info(aid):
    """(OpaqueFunction, args) of an opaque atom id."""
    if _atom_kind(aid) != _KIND_OPAQUE:
        raise ExprError("not an opaque atom")
    return _atom_data(aid)


def is_jet_atom(aid):
    return _atom_kind(aid) == _KIND_JET


def is_coord_atom(aid):
    return _atom_kind(aid) == _KIND_COORD


def is_param_atom(aid):
    return _atom_kind(aid) == _KIND_PARAM


def is_opaque_atom(aid):
    return _atom_kind(aid) == _KIND_OPAQUE


def coord_name(aid):
    return _atom_data(aid)


# ---------------------------------------------------------------------------
# public operations

def normalize(e):
    """Canonical form of e.  Expressions are kept normalized, so this is
    the identity; it exists so callers can state intent."""
    return as_expr(e)


def substitute(e, rules):
    """Simultaneous replacement of jet variables, then renormalization.

    rules maps jet-variable expressions (atoms) to replacement expressions.
    A rule whose right side contains its own left side is rejected.
    """
    e = as_expr(e)
    amap = {}
    for k, v in rules.items():
        aid = atom_of(as_expr(k))
        if aid is None or not is_jet_atom(aid):
            raise ExprError("substitution keys must be jet variables")
        v = as_expr(v)
        if aid in v.atom_ids():
            raise CyclicSubstitution("rule for %s mentions itself" % format_expr(k))
        amap[aid] = v
    return e.subs_atoms(amap)


def eval_point(e, binding):
    """Evaluate at a point; every atom must be bound.

    binding maps atomic expressions (coordinates, jet variables, parameters)
    to reals, and opaque function names to Python callables.
    """
    return as_expr(e).eval(binding)


# ---------------------------------------------------------------------------
# vectors

class VectorExpr:
    """A triple of expressions indexed by the spatial axes."""

    __slots__ = ("c",)

    def __init__(self, c1, c2, c3):
        self.c = (as_expr(c1), as_expr(c2), as_expr(c3))

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, i):
        return self.c[i]

    def __add__(self, other):
        return VectorExpr(*[a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        return VectorExpr(*[a - b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return VectorExpr(*[-a for a in self.c])

    def __mul__(self, s):
        s = as_expr(s)
        return VectorExpr(*[a * s for a in self.c])

    __rmul__ = __mul__

    def __truediv__(self, s):
        s = as_expr(s)
        return VectorExpr(*[a / s for a in self.c])

    def __eq__(self, other):
        return isinstance(other, VectorExpr) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def dot(self, other):
        return sum((a * b for a, b in zip(self.c, other.c)), ZERO)

    def cross(self, other):
        a1, a2, a3 = self.c
        b1, b2, b3 = other.c
        return VectorExpr(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)

    @property
    def is_zero(self):
        return all(a.is_zero for a in self.c)

    def norm2(self):
        return self.dot(self)

    def __repr__(self):
        return "<Vec [%s, %s, %s]>" % tuple(format_expr(a) for a in self.c)


VZERO = VectorExpr(ZERO, ZERO, ZERO)


def unit_vector(i):
    v = [ZERO, ZERO, ZERO]
    v[i] = ONE
    return VectorExpr(*v)


# ---------------------------------------------------------------------------
# deterministic plain-text rendering (full grammar lives in the dsl module)

def _format_atom(aid):
    kind, data, _ = _atom_info[aid]
    if kind == _KIND_COORD:
        return data
    if kind == _KIND_PARAM:
        return data
    if kind == _KIND_JET:
        dep, idx = data
        return dep if not idx else dep + "_" + "".join(idx)
    fn, args = data
    return "%s(%s)" % (fn.name, ",".join(format_expr(a) for a in args))


def _format_poly(p):
    if not p:
        return "0"
    items = sorted(p.items(),
                   key=lambda mc: (sum(e for _, e in mc[0]),
                                   tuple(atom_sort_key(a) for a, _ in mc[0]),
                                   mc[0]))
    parts = []
    for m, c in items:
        factors = []
        for aid, e in m:
            s = _format_atom(aid)
            if not s.isidentifier() and "(" not in s:
                s = "(%s)" % s
            factors.append(s if e == 1 else "%s^%d" % (s, e))
        if not factors:
            body = _fmt_frac(abs(c))
        else:
            body = "*".join(factors)
            if abs(c) != 1:
                body = _fmt_frac(abs(c)) + "*" + body
        parts.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(parts)
    if out.startswith("+ "):
        out = out[2:]
    elif out.startswith("- "):
        out = "-" + out[2:]
    return out


def _fmt_frac(f):
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def format_expr(e):
    e = as_expr(e)
    ns = _format_poly(e.num)
    if e.den == _pconst(1):
        return ns
    ds = _format_poly(e.den)
    if len(e.num) > 1:
        ns = "(%s)" % ns
    if len(e.den) > 1 or "*" in ds or "^" in ds:
        ds = "(%s)" % ds
    return "%s/%s" % (ns, ds)
