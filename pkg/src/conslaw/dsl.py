"""Text format for PDE systems, conserved currents, exact solutions, and
mapping vectors (file extension .claw), with a recursive-descent parser
producing position-accurate diagnostics and a canonical printer whose
output re-parses to a structurally identical entity.

Grammar (terminals in quotes; [] optional, * repetition):

  document    := item* ;
  item        := system | current | solution | vectorfield ;
  system      := "system" IDENT "{" "dependents:" deplist ";"
                 "equations:" exprlist ";" "leading:" solvedlist ";"
                 [ "assume:" assumelist ";" ] "}" ;
  deplist     := IDENT ("scalar"|"vector") ("," IDENT ("scalar"|"vector"))* ;
  exprlist    := expr ("," expr)* ;
  solvedlist  := JETVAR "=" expr ("," JETVAR "=" expr)* ;
  assumelist  := ASSUMPTION ("," ASSUMPTION)* ;
  current     := "current" IDENT "on" IDENT "kind" KIND "{"
                 [ "density:" exprOrVec ";" ] [ "flux:" exprOrVec ";" ] "}" ;
  solution    := "solution" IDENT "on" IDENT "{"
                 (IDENT ":" expr ";")* "}" ;
  vectorfield := "vectorfield" IDENT "constraint" CONSTRAINT "{"
                 vector ";" "}" ;
  exprOrVec   := expr | vector ;
  vector      := "[" expr "," expr "," expr "]" ;

Expressions use infix + - * / ^ (integer powers), parentheses, rational
and decimal literals, the operators dt(e), di(e, 1|2|3), grad(s), div(v),
curl(v), dot(v, v), cross(v, v), constitutive function application
f(arg, ...), and names.  Jet variables are written u, u_t, u_x1, u_x1x2;
a vector dependent u abbreviates the triple (u1, u2, u3).  Greek letters
are spelled out in ASCII (rho, omega).
"""
from __future__ import annotations

from fractions import Fraction

from .expr import (
    Expr, VectorExpr, ZERO, ExprError, as_expr, coord, jet, param,
    COORD_NAMES, format_expr, opaque_info, is_opaque_atom,
)
from .sysdef import PdeSystem, ExactSolution, systems as builtin_systems
from .laws import (
    ConservedCurrent, VOLUMETRIC, SURFACE_FLUX, CIRCULATORY,
    SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD,
)
from . import mappings as _mappings
from . import jetcalc as jc

KINDS = {
    "volumetric": VOLUMETRIC,
    "surface-flux": SURFACE_FLUX,
    "circulatory": CIRCULATORY,
    "spatial-div": SPATIAL_DIV,
    "spatial-curl": SPATIAL_CURL,
    "spatial-grad": SPATIAL_GRAD,
}

CONSTRAINTS = {
    "divergence-free": _mappings.DIVERGENCE_FREE,
    "curl-free": _mappings.CURL_FREE,
    "constant": _mappings.CONSTANT,
}


class Diagnostic:
    def __init__(self, severity, message, line, col, span):
        self.severity = severity
        self.message = message
        self.line = line
        self.col = col
        self.span = span

    def __repr__(self):
        return "%s:%d:%d: %s" % (self.severity, self.line, self.col,
                                 self.message)


class SourceDocument:
    def __init__(self, text, path="<string>"):
        self.path = path
        self.text = text
        self.entities = []
        self.diagnostics = []

    @property
    def ok(self):
        return not any(d.severity == "error" for d in self.diagnostics)


class ParseAbort(Exception):
    pass


# ---------------------------------------------------------------------------
# lexer

_PUNCT = "{}()[],:;=+-*/^<>!"


class Token:
    __slots__ = ("kind", "value", "line", "col", "span")

    def __init__(self, kind, value, line, col, span):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col
        self.span = span

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.value)


def _lex(text, diags):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, sline, scol = i, line, col
        if ch.isalpha() or ch == "_":
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(Token("ident", text[start:i], sline, scol,
                              (start, i)))
            col += i - start
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            seen_dot = False
            while i < n and (text[i].isdigit() or (text[i] == "." and not seen_dot)):
                if text[i] == ".":
                    seen_dot = True
                i += 1
            toks.append(Token("number", text[start:i], sline, scol, (start, i)))
            col += i - start
            continue
        if ch in _PUNCT:
            toks.append(Token(ch, ch, sline, scol, (start, i + 1)))
            i += 1
            col += 1
            continue
        diags.append(Diagnostic("error", "unexpected character %r" % ch,
                                line, col, (i, i + 1)))
        i += 1
        col += 1
    toks.append(Token("eof", "", line, col, (n, n)))
    return toks


# ---------------------------------------------------------------------------
# name resolution

class Scope:
    """Names visible inside expressions: dependents, parameters, functions."""

    def __init__(self, scalars=(), vectors=(), parameters=(), functions=()):
        self.scalars = set(scalars)
        self.vectors = set(vectors)
        self.parameters = set(parameters)
        self.functions = {f.name: f for f in functions}

    @staticmethod
    def for_system(sys):
        scalars = set(sys.dependents)
        vectors = set()
        for name in list(scalars):
            if name[-1] in "123" and name[:-1]:
                base = name[:-1]
                if all(base + d in scalars for d in "123"):
                    vectors.add(base)
        params = set(sys.parameters) | {"pi"}
        return Scope(scalars, vectors, params, sys.functions)

    def function(self, name):
        f = self.functions.get(name)
        if f is not None:
            return f
        # derived partials print as base_d<digits>
        if "_d" in name:
            base, _, idx = name.rpartition("_d")
            root = self.functions.get(base)
            if root is not None and idx.isdigit():
                cur = root
                for pos in sorted(int(ch) for ch in idx):
                    cur = cur._derived_fn(pos)
                return cur
        return None


_BUILTIN_KEYWORDS = {"dt", "di", "grad", "div", "curl", "dot", "cross"}


class _ExprParser:
    def __init__(self, toks, pos, scope, diags):
        self.toks = toks
        self.pos = pos
        self.scope = scope
        self.diags = diags

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        self.diags.append(Diagnostic("error", msg, tok.line, tok.col,
                                     tok.span))
        raise ParseAbort()

    def expect(self, kind):
        t = self.peek()
        if t.kind != kind:
            self.error("expected %r, found %r" % (kind, t.value or t.kind))
        return self.take()

    # precedence climbing
    def parse_expr(self):
        return self._sum()

    def _sum(self):
        left = self._product()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            right = self._product()
            left = self._combine_add(left, right, op)
        return left

    def _combine_add(self, a, b, op):
        if isinstance(a, VectorExpr) != isinstance(b, VectorExpr):
            self.error("cannot add scalars and vectors")
        return (a + b) if op == "+" else (a - b)

    def _product(self):
        left = self._unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            right = self._unary()
            left = self._combine_mul(left, right, op)
        return left

    def _combine_mul(self, a, b, op):
        av, bv = isinstance(a, VectorExpr), isinstance(b, VectorExpr)
        try:
            if op == "*":
                if av and bv:
                    self.error("use dot() or cross() for vector products")
                return a * b if not av else a * b
            if bv:
                self.error("cannot divide by a vector")
            if isinstance(b, Expr) and b.is_zero:
                self.error("division by zero")
            return a / b
        except ExprError as exc:
            self.error(str(exc))

    def _unary(self):
        t = self.peek()
        if t.kind == "-":
            self.take()
            v = self._unary()
            return -v
        if t.kind == "+":
            self.take()
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self.peek().kind == "^":
            self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            t = self.expect("number")
            if "." in t.value:
                self.error("powers must be integers", t)
            if isinstance(base, VectorExpr):
                self.error("powers apply to scalars only", t)
            try:
                return base ** (sign * int(t.value))
            except ExprError as exc:
                self.error(str(exc), t)
        return base

    def _atom(self):
        t = self.peek()
        if t.kind == "number":
            self.take()
            return Expr.const(Fraction(t.value))
        if t.kind == "(":
            self.take()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "[":
            return self.parse_vector()
        if t.kind == "ident":
            return self._name_or_call()
        self.error("expected an expression, found %r" % (t.value or t.kind))

    def parse_vector(self):
        self.expect("[")
        comps = [self.parse_expr()]
        while self.peek().kind == ",":
            self.take()
            comps.append(self.parse_expr())
        self.expect("]")
        if len(comps) != 3 or any(isinstance(c, VectorExpr) for c in comps):
            self.error("vector literals take exactly three scalar "
                       "components")
        return VectorExpr(*comps)

    def _name_or_call(self):
        t = self.take()
        name = t.value
        if self.peek().kind == "(":
            return self._call(name, t)
        return self._name(name, t)

    def _call(self, name, tok):
        self.expect("(")
        args = []
        if self.peek().kind != ")":
            args.append(self.parse_expr())
            while self.peek().kind == ",":
                self.take()
                args.append(self.parse_expr())
        self.expect(")")

        def need(n):
            if len(args) != n:
                self.error("%s expects %d argument(s)" % (name, n), tok)

        def scalar(i):
            if isinstance(args[i], VectorExpr):
                self.error("argument %d of %s must be a scalar"
                           % (i + 1, name), tok)
            return args[i]

        def vector(i):
            if not isinstance(args[i], VectorExpr):
                self.error("argument %d of %s must be a vector"
                           % (i + 1, name), tok)
            return args[i]

        if name == "dt":
            need(1)
            arg = args[0]
            return jc.vector_total_dt(arg) if isinstance(arg, VectorExpr) \
                else jc.total_dt(arg)
        if name == "di":
            need(2)
            axis = scalar(1)
            try:
                ax = int(axis.as_fraction())
            except (ExprError, ValueError):
                self.error("di() axis must be 1, 2 or 3", tok)
            if ax not in (1, 2, 3):
                self.error("di() axis must be 1, 2 or 3", tok)
            arg = args[0]
            if isinstance(arg, VectorExpr):
                return VectorExpr(*[jc.total_di(cc, ax) for cc in arg])
            return jc.total_di(arg, ax)
        if name == "grad":
            need(1)
            return jc.tgrad(scalar(0))
        if name == "div":
            need(1)
            return jc.tdiv(vector(0))
        if name == "curl":
            need(1)
            return jc.tcurl(vector(0))
        if name == "dot":
            need(2)
            return vector(0).dot(vector(1))
        if name == "cross":
            need(2)
            return vector(0).cross(vector(1))
        fn = self.scope.function(name)
        if fn is None:
            self.error("unknown function %r" % name, tok)
        if len(args) != fn.arity:
            self.error("%s expects %d argument(s)" % (name, fn.arity), tok)
        for a in args:
            if isinstance(a, VectorExpr):
                self.error("constitutive functions take scalar arguments",
                           tok)
        return fn(*args)

    def _name(self, name, tok):
        if name in COORD_NAMES:
            return coord(name)
        if name in self.scope.scalars:
            return jet(name)
        if name in self.scope.vectors:
            return VectorExpr(jet(name + "1"), jet(name + "2"),
                              jet(name + "3"))
        if name in self.scope.parameters:
            return param(name)
        base, _, suffix = name.partition("_")
        if suffix:
            idx = _parse_suffix(suffix)
            if idx is not None:
                if base in self.scope.scalars:
                    return jet(base, idx)
                if base in self.scope.vectors:
                    return VectorExpr(*[jet(base + d, idx) for d in "123"])
        self.error("unknown identifier %r" % name, tok)


def _parse_suffix(suffix):
    idx = []
    i = 0
    while i < len(suffix):
        if suffix[i] == "t":
            idx.append("t")
            i += 1
        elif suffix[i] == "x" and i + 1 < len(suffix) and suffix[i + 1] in "123":
            idx.append("x" + suffix[i + 1])
            i += 2
        else:
            return None
    return tuple(idx)


# ---------------------------------------------------------------------------
# document parser

class _Parser(_ExprParser):
    def _hyphen_ident(self):
        """Entity names may contain hyphens (em-vacuum, div-B); in
        expression position a hyphen is always subtraction."""
        t = self.expect("ident")
        name = t.value
        end = t.span[1]
        while self.peek().kind == "-" and self.peek().span[0] == end:
            dash = self.take()
            nxt = self.peek()
            if nxt.kind not in ("ident", "number") \
                    or nxt.span[0] != dash.span[1]:
                self.error("dangling hyphen in a name", dash)
            part = self.take()
            name += "-" + str(part.value)
            end = part.span[1]
        return name, t

    def __init__(self, text, path):
        self.doc = SourceDocument(text, path)
        toks = _lex(text, self.doc.diagnostics)
        super().__init__(toks, 0, Scope(), self.doc.diagnostics)
        self.local_systems = {}

    def run(self):
        while self.peek().kind != "eof":
            try:
                self._item()
            except ParseAbort:
                self._recover()
        return self.doc

    def _recover(self):
        depth = 0
        while self.peek().kind != "eof":
            t = self.take()
            if t.kind == "{":
                depth += 1
            elif t.kind == "}":
                if depth <= 0:
                    return
                depth -= 1
            elif depth == 0 and t.kind == "ident" and t.value in (
                    "system", "current", "solution", "vectorfield"):
                self.pos -= 1
                return

    def _item(self):
        t = self.peek()
        if t.kind != "ident":
            self.error("expected an item (system, current, solution, "
                       "vectorfield)")
        if t.value == "system":
            self._system()
        elif t.value == "current":
            self._current()
        elif t.value == "solution":
            self._solution()
        elif t.value == "vectorfield":
            self._vectorfield()
        else:
            self.error("expected an item keyword, found %r" % t.value)

    def _section(self, label):
        t = self.expect("ident")
        if t.value != label:
            self.error("expected section %r" % label, t)
        self.expect(":")

    def _system(self):
        self.take()
        name, _ = self._hyphen_ident()
        self.expect("{")
        self._section("dependents")
        scalars, vectors = [], []
        while True:
            dep = self.expect("ident").value
            role = self.expect("ident").value
            if role == "scalar":
                scalars.append(dep)
            elif role == "vector":
                vectors.append(dep)
            else:
                self.error("dependent role must be scalar or vector")
            if self.peek().kind == ",":
                self.take()
                continue
            break
        self.expect(";")
        comps = list(scalars)
        for v in vectors:
            comps += [v + d for d in "123"]
        self.scope = Scope(comps, vectors, parameters={"pi"}, functions=())
        self._collect_parameters()
        self._section("equations")
        equations = [self._scalar_or_vector_equation()]
        while self.peek().kind == ",":
            self.take()
            equations.append(self._scalar_or_vector_equation())
        self.expect(";")
        eqs = []
        for e in equations:
            if isinstance(e, VectorExpr):
                eqs.extend(list(e))
            else:
                eqs.append(e)
        self._section("leading")
        leading = []
        while True:
            lhs_tok = self.peek()
            lhs = self.parse_expr()
            if isinstance(lhs, VectorExpr):
                self.error("leading entries are scalar jet variables",
                           lhs_tok)
            self.expect("=")
            rhs = self.parse_expr()
            if isinstance(rhs, VectorExpr):
                self.error("solved forms are scalar expressions", lhs_tok)
            leading.append((lhs, rhs))
            if self.peek().kind == ",":
                self.take()
                continue
            break
        self.expect(";")
        assumptions = []
        if self.peek().kind == "ident" and self.peek().value == "assume":
            self.take()
            self.expect(":")
            while True:
                first = self.peek()
                last = first
                while self.peek().kind not in (",", ";", "eof"):
                    last = self.take()
                assumptions.append(
                    self.doc.text[first.span[0]:last.span[1]].strip())
                if self.peek().kind == ",":
                    self.take()
                    continue
                break
            self.expect(";")
        self.expect("}")
        try:
            sys = PdeSystem(name, "user-defined system", comps, eqs, leading,
                            assumptions=assumptions,
                            parameters=sorted(self.scope.parameters - {"pi"}))
            bad = sys.check_consistency()
            if bad:
                self.doc.diagnostics.append(Diagnostic(
                    "error", "solved forms do not reproduce the equations "
                    "of system %r" % name, 1, 1, (0, 0)))
            else:
                self.local_systems[name] = sys
                self.doc.entities.append(sys)
        except ExprError as exc:
            self.doc.diagnostics.append(Diagnostic(
                "error", str(exc), 1, 1, (0, 0)))
        self.scope = Scope()

    def _collect_parameters(self):
        """Free identifiers in a system body become parameters: scan ahead
        conservatively by accepting any unknown name as a parameter."""
        self.scope.parameters |= {"rho0", "mu0", "mu", "eta", "c", "pi",
                                  "gamma", "R", "Omega", "E0", "k", "nu"}

    def _scalar_or_vector_equation(self):
        return self.parse_expr()

    def _lookup_system(self, name, tok):
        if name in self.local_systems:
            return self.local_systems[name]
        reg = builtin_systems()
        if name in reg:
            return reg[name]
        self.error("unknown system %r" % name, tok)

    def _current(self):
        self.take()
        cid, _ = self._hyphen_ident()
        kw = self.expect("ident")
        if kw.value != "on":
            self.error("expected 'on'", kw)
        sname, stok = self._hyphen_ident()
        sys = self._lookup_system(sname, stok)
        kw = self.expect("ident")
        if kw.value != "kind":
            self.error("expected 'kind'", kw)
        kname, ktok = self._hyphen_ident()
        if kname not in KINDS:
            self.error("unknown kind %r" % kname, ktok)
        kind = KINDS[kname]
        self.scope = Scope.for_system(sys)
        self.expect("{")
        density = flux = None
        density_tok = None
        while self.peek().kind == "ident":
            sec = self.take()
            self.expect(":")
            val = self.parse_expr()
            self.expect(";")
            if sec.value == "density":
                density = val
                density_tok = sec
            elif sec.value == "flux":
                flux = val
            else:
                self.error("unknown current section %r" % sec.value, sec)
        self.expect("}")
        self.scope = Scope()
        for label, val, tok in (("density", density, density_tok),
                                ("flux", flux, None)):
            if val is None:
                continue
            zero = val.is_zero if not isinstance(val, VectorExpr) \
                else val.is_zero
            if zero:
                self.doc.diagnostics.append(Diagnostic(
                    "warning", "%s of current %r normalizes to zero"
                    % (label, cid),
                    (tok or ktok).line, (tok or ktok).col,
                    (tok or ktok).span))
        try:
            cur = ConservedCurrent(cid, kind, sys.id, density=density,
                                   flux=flux)
            self.doc.entities.append(cur)
        except ExprError as exc:
            self.error(str(exc), ktok)

    def _solution(self):
        self.take()
        sid, _ = self._hyphen_ident()
        kw = self.expect("ident")
        if kw.value != "on":
            self.error("expected 'on'", kw)
        sname, stok = self._hyphen_ident()
        sys = self._lookup_system(sname, stok)
        scope = Scope.for_system(sys)
        scope.functions.update({f.name: f for f in
                                _solution_profile_functions()})
        self.scope = scope
        self.expect("{")
        fields = {}
        while self.peek().kind == "ident":
            dep = self.take()
            if dep.value not in sys.dependents:
                self.error("%r is not a dependent of %r"
                           % (dep.value, sys.id), dep)
            self.expect(":")
            val = self.parse_expr()
            if isinstance(val, VectorExpr):
                self.error("solution fields are scalar expressions", dep)
            self.expect(";")
            fields[dep.value] = val
        self.expect("}")
        self.scope = Scope()
        self.doc.entities.append(ExactSolution(
            sid, sys.id, "user-defined solution", fields))

    def _vectorfield(self):
        self.take()
        name, _ = self._hyphen_ident()
        kw = self.expect("ident")
        if kw.value != "constraint":
            self.error("expected 'constraint'", kw)
        cname, ctok = self._hyphen_ident()
        if cname not in CONSTRAINTS:
            self.error("unknown constraint %r" % cname, ctok)
        self.scope = Scope(parameters={"pi"})
        self.expect("{")
        vec = self.parse_vector()
        self.expect(";")
        self.expect("}")
        self.scope = Scope()
        try:
            self.doc.entities.append(_mappings.MappingVector(
                list(vec), CONSTRAINTS[cname], name=name))
        except ExprError as exc:
            self.error(str(exc), ctok)


def _solution_profile_functions():
    from .sysdef import A_fun, cos_fun, sin_fun
    return (A_fun, cos_fun, sin_fun)


def parse_coordinate_expr(text):
    """Parse a single scalar expression over coordinates and parameters.

    Returns (Expr, diagnostics); the expression is None on error.
    """
    diags = []
    toks = _lex(text, diags)
    p = _ExprParser(toks, 0, Scope(parameters={"pi"}), diags)
    try:
        e = p.parse_expr()
        if p.peek().kind != "eof":
            p.error("unexpected trailing input")
        if isinstance(e, VectorExpr):
            return None, diags + [Diagnostic("error",
                                             "expected a scalar expression",
                                             1, 1, (0, len(text)))]
        return e, diags
    except ParseAbort:
        return None, diags


def parse_document(text, path="<string>"):
    """Parse a .claw document; returns a SourceDocument with entities and
    diagnostics.  Never raises on malformed input."""
    try:
        parser = _Parser(text, path)
    except ParseAbort:  # pragma: no cover - lexing never aborts
        return SourceDocument(text, path)
    try:
        return parser.run()
    except ParseAbort:
        return parser.doc
    except RecursionError:
        parser.doc.diagnostics.append(Diagnostic(
            "error", "input too deeply nested", 1, 1, (0, 0)))
        return parser.doc


# ---------------------------------------------------------------------------
# printer

def _print_value(v):
    if isinstance(v, VectorExpr):
        return "[%s]" % ", ".join(format_expr(cc) for cc in v)
    return format_expr(v)


def print_entity(entity):
    """Canonical text for an entity; parsing it back yields a structurally
    identical entity."""
    if isinstance(entity, ConservedCurrent):
        kind_name = {v: k for k, v in KINDS.items()}[entity.kind]
        lines = ["current %s on %s kind %s {" % (entity.id,
                                                 entity.system_id, kind_name)]
        if entity.density is not None:
            lines.append("  density: %s;" % _print_value(entity.density))
        if entity.flux is not None:
            lines.append("  flux: %s;" % _print_value(entity.flux))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(entity, PdeSystem):
        deps = []
        vectors = set()
        names = set(entity.dependents)
        for name in sorted(names):
            if name[-1] == "1" and name[:-1] + "2" in names \
                    and name[:-1] + "3" in names:
                vectors.add(name[:-1])
        done = set()
        for name in entity.dependents:
            base = name[:-1] if name[-1] in "123" else name
            if base in vectors:
                if base not in done:
                    deps.append("%s vector" % base)
                    done.add(base)
            else:
                deps.append("%s scalar" % name)
        lines = ["system %s {" % entity.id]
        lines.append("  dependents: %s;" % ", ".join(deps))
        lines.append("  equations: %s;" % ",\n    ".join(
            format_expr(g) for g in entity.equations))
        lines.append("  leading: %s;" % ",\n    ".join(
            "%s = %s" % (format_expr(l), format_expr(r))
            for l, r in entity.leading))
        if entity.assumptions:
            lines.append("  assume: %s;" % ", ".join(entity.assumptions))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(entity, ExactSolution):
        lines = ["solution %s on %s {" % (entity.id, entity.system_id)]
        for dep in sorted(entity.fields):
            lines.append("  %s: %s;" % (dep, format_expr(entity.fields[dep])))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(entity, _mappings.MappingVector):
        cname = {v: k for k, v in CONSTRAINTS.items()}[entity.constraint]
        return "vectorfield %s constraint %s {\n  %s;\n}" % (
            entity.name, cname, _print_value(entity.components))
    raise ExprError("cannot print %r" % (entity,))


def print_document(entities):
    return "\n\n".join(print_entity(e) for e in entities) + "\n"
