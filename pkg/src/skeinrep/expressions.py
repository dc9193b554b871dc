"""Noncommutative polynomial expressions in the presentation generators.

The text grammar accepts ``+ - * ^``, parentheses, generator names and
scalar literals (rationals like ``3/4`` or ``0.5``, the root ``A`` and its
powers ``A^k``, and ``i`` in the bigfloat backend).  ``*`` may be omitted;
power binds tighter than product, product tighter than sum.  Scalar literals
are parsed straight into the backend of the enclosing root system, so one
expression source works for both backends.

Normalization rewrites every word into the ordered-monomial form
X1^a X2^b X3^c times a monomial in the central puncture generators, using
the oriented q-commutation rules of the surface presentation.  Every rule
output either sorts the contracted pair or strictly lowers the word degree,
so rewriting terminates; the empirical confluence suite checks independence
of the rewrite order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import matrices
from .errors import ExponentOverflow, ParseError, UnknownGenerator
from .scalars import RootSystem, Scalar
from .surfaces import Surface

EXPONENT_CAP = 1 << 16


# ---------------------------------------------------------------------------
# syntax trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: Scalar


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class SkeinExpr:
    surface: Surface
    rs: RootSystem
    node: object


# ---------------------------------------------------------------------------
# lexer / parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+|\.\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
        if m.lastgroup is None and m.group().strip() == "":
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, surface, rs):
        self.tokens = tokens
        self.i = 0
        self.surface = surface
        self.rs = rs

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse_expr(self):
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        terms.append(self._signed(self.parse_term(), sign))
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                term = self.parse_term()
                terms.append(self._signed(term, -1 if val == "-" else 1))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def _signed(self, node, sign):
        if sign == 1:
            return node
        return Prod((Lit(self.rs.scalar(-1)), node))

    def parse_term(self):
        factors = [self.parse_factor()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                factors.append(self.parse_factor())
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                factors.append(self.parse_factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def parse_factor(self):
        atom = self.parse_atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            exponent, pos = self.parse_exponent()
            if abs(exponent) > EXPONENT_CAP:
                raise ExponentOverflow(f"exponent {exponent} exceeds the cap {EXPONENT_CAP}")
            if isinstance(atom, Lit):
                return Lit(atom.value ** exponent)
            if exponent < 0:
                raise ParseError("negative powers only apply to scalar literals", pos)
            return Power(atom, exponent)
        return atom

    def parse_exponent(self):
        kind, val, pos = self.next()
        if kind == "op" and val == "(":
            inner, _ = self._signed_int()
            self.expect_op(")")
            return inner, pos
        if kind == "op" and val == "-":
            kind2, val2, pos2 = self.next()
            if kind2 != "num" or not val2.isdigit():
                raise ParseError("expected an integer exponent", pos2)
            return -int(val2), pos
        if kind == "num" and val.isdigit():
            return int(val), pos
        raise ParseError("expected an integer exponent", pos)

    def _signed_int(self):
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val == "-":
            sign = -1
            kind, val, pos = self.next()
        if kind != "num" or not val.isdigit():
            raise ParseError("expected an integer exponent", pos)
        return sign * int(val), pos

    def parse_atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Lit(self.rs.scalar(Fraction(val)))
        if kind == "name":
            if val == "A":
                return Lit(self.rs.A)
            if val == "i":
                if self.rs.backend != "bigfloat":
                    raise ParseError("the literal i needs the bigfloat backend", pos)
                return Lit(self.rs.scalar(complex(0.0, 1.0)))
            if val in self.surface.generators:
                return Gen(val)
            raise UnknownGenerator(f"unknown generator {val!r} for surface {self.surface.tag}", pos)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)


def parse(text: str, surface: Surface, rs: RootSystem) -> SkeinExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, surface, rs)
    node = parser.parse_expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input {parser.peek()[1]!r}", parser.peek()[2])
    return SkeinExpr(surface, rs, node)


# ---------------------------------------------------------------------------
# rewrite system and normal forms
# ---------------------------------------------------------------------------

class RewriteSystem:
    """Oriented q-commutation rules of one surface presentation.

    Every rule maps an out-of-order adjacent pair to a combination of the
    sorted pair, a lower-degree generator, and (on the four-puncture sphere)
    central puncture monomials.
    """

    def __init__(self, surface: Surface, rs: RootSystem):
        self.surface = surface
        self.rs = rs
        self.rules = self._build_rules()

    def _pvec(self, *names):
        vec = [0] * len(self.surface.punctures)
        for n in names:
            vec[self.surface.punctures.index(n)] += 1
        return tuple(vec)

    def _build_rules(self):
        rs = self.rs
        if self.surface.kind in ("torus1", "torus0"):
            a2 = rs.a_pow(2)
            gap = rs.a_pow(2) - rs.a_pow(-2)
            z = self._pvec()
            return {
                ("X2", "X1"): [(a2, ("X1", "X2"), z), (-rs.A * gap, ("X3",), z)],
                ("X3", "X2"): [(a2, ("X2", "X3"), z), (-rs.A * gap, ("X1",), z)],
                ("X3", "X1"): [(rs.a_pow(-2), ("X1", "X3"), z), (rs.a_pow(-1) * gap, ("X2",), z)],
            }
        if self.surface.kind == "sphere4":
            a4 = rs.a_pow(4)
            gap4 = rs.a_pow(4) - rs.a_pow(-4)
            gap2 = rs.a_pow(2) - rs.a_pow(-2)
            c_hi = -rs.a_pow(2) * gap2
            c_lo = rs.a_pow(-2) * gap2
            return {
                ("X2", "X1"): [
                    (a4, ("X1", "X2"), self._pvec()),
                    (-rs.a_pow(2) * gap4, ("X3",), self._pvec()),
                    (c_hi, (), self._pvec("P0", "P3")),
                    (c_hi, (), self._pvec("P1", "P2")),
                ],
                ("X3", "X2"): [
                    (a4, ("X2", "X3"), self._pvec()),
                    (-rs.a_pow(2) * gap4, ("X1",), self._pvec()),
                    (c_hi, (), self._pvec("P0", "P1")),
                    (c_hi, (), self._pvec("P2", "P3")),
                ],
                ("X3", "X1"): [
                    (rs.a_pow(-4), ("X1", "X3"), self._pvec()),
                    (rs.a_pow(-2) * gap4, ("X2",), self._pvec()),
                    (c_lo, (), self._pvec("P0", "P2")),
                    (c_lo, (), self._pvec("P1", "P3")),
                ],
            }
        return {}


@dataclass
class NormalForm:
    """Map from ordered monomials to nonzero coefficients."""

    surface: Surface
    rs: RootSystem
    terms: dict

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.surface == other.surface and self.rs.compatible(other.rs)
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def monomial_keys(self):
        return sorted(self.terms.keys())

    def monomial_string(self, key) -> str:
        xexp, pexp = key
        factors = []
        for name, e in zip(self.surface.x_generators, xexp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        for name, e in zip(self.surface.punctures, pexp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return " ".join(factors) if factors else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[key]}) {self.monomial_string(key)}"
                          for key in self.monomial_keys())


def _expand(node, rs):
    """Expand a syntax tree into (coefficient, word) pairs."""
    if isinstance(node, Lit):
        return [(node.value, ())]
    if isinstance(node, Gen):
        return [(rs.one, (node.name,))]
    if isinstance(node, Sum):
        out = []
        for t in node.terms:
            out.extend(_expand(t, rs))
        return out
    if isinstance(node, Prod):
        out = [(rs.one, ())]
        for f in node.factors:
            rhs = _expand(f, rs)
            out = [(c1 * c2, w1 + w2) for (c1, w1) in out for (c2, w2) in rhs]
        return out
    if isinstance(node, Power):
        if node.exponent > EXPONENT_CAP:
            raise ExponentOverflow(f"exponent {node.exponent} exceeds the cap {EXPONENT_CAP}")
        out = [(rs.one, ())]
        base = _expand(node.base, rs)
        for _ in range(node.exponent):
            out = [(c1 * c2, w1 + w2) for (c1, w1) in out for (c2, w2) in base]
        return out
    raise TypeError(f"not an expression node: {node!r}")


def _find_redex(word, rules, order):
    positions = range(len(word) - 1) if order == "leftmost" else range(len(word) - 2, -1, -1)
    for i in positions:
        if (word[i], word[i + 1]) in rules:
            return i
    return None


def normalize(expr: SkeinExpr, rsys: RewriteSystem = None, order: str = "leftmost") -> NormalForm:
    """Rewrite to the ordered-monomial normal form.

    ``order`` selects which innermost redex is contracted first; the result
    is independent of the choice (checked empirically by the test suite).
    """
    if rsys is None:
        rsys = RewriteSystem(expr.surface, expr.rs)
    if rsys.surface != expr.surface or not rsys.rs.compatible(expr.rs):
        raise ValueError("expression and rewrite system disagree on surface or backend")
    surface, rs = expr.surface, expr.rs
    rules = rsys.rules
    punctures = surface.punctures
    xnames = surface.x_generators

    result = {}
    stack = []
    for coeff, word in _expand(expr.node, rs):
        pvec = [0] * len(punctures)
        letters = []
        for g in word:
            if g in punctures:
                pvec[punctures.index(g)] += 1
            else:
                letters.append(g)
        stack.append((coeff, tuple(pvec), tuple(letters)))

    while stack:
        coeff, pvec, word = stack.pop()
        pos = _find_redex(word, rules, order)
        if pos is None:
            xexp = tuple(word.count(n) for n in xnames)
            if any(e > EXPONENT_CAP for e in xexp) or any(e > EXPONENT_CAP for e in pvec):
                raise ExponentOverflow("monomial exponent exceeds the cap")
            key = (xexp, pvec)
            if key in result:
                result[key] = result[key] + coeff
            else:
                result[key] = coeff
            continue
        for scal, repl, pdelta in rules[(word[pos], word[pos + 1])]:
            new_p = tuple(p + d for p, d in zip(pvec, pdelta))
            stack.append((coeff * scal, new_p, word[:pos] + repl + word[pos + 2:]))

    cleaned = {k: v for k, v in result.items() if not v.is_zero()}
    return NormalForm(surface, rs, cleaned)


def normal_form_to_expr(nf: NormalForm) -> SkeinExpr:
    terms = []
    for key in nf.monomial_keys():
        xexp, pexp = key
        factors = [Lit(nf.terms[key])]
        for name, e in zip(nf.surface.x_generators, xexp):
            if e:
                factors.append(Power(Gen(name), e) if e > 1 else Gen(name))
        for name, e in zip(nf.surface.punctures, pexp):
            if e:
                factors.append(Power(Gen(name), e) if e > 1 else Gen(name))
        terms.append(Prod(tuple(factors)) if len(factors) > 1 else factors[0])
    node = Sum(tuple(terms)) if len(terms) != 1 else terms[0]
    if not terms:
        node = Lit(nf.rs.zero)
    return SkeinExpr(nf.surface, nf.rs, node)


# ---------------------------------------------------------------------------
# evaluation in a representation
# ---------------------------------------------------------------------------

def _eval_node(node, rep):
    if isinstance(node, Lit):
        return matrices.scalar_matrix(node.value, rep.dim)
    if isinstance(node, Gen):
        return rep.matrix(node.name)
    if isinstance(node, Sum):
        acc = _eval_node(node.terms[0], rep)
        for t in node.terms[1:]:
            acc = acc + _eval_node(t, rep)
        return acc
    if isinstance(node, Prod):
        acc = _eval_node(node.factors[0], rep)
        for f in node.factors[1:]:
            acc = matrices.matmul(acc, _eval_node(f, rep))
        return acc
    if isinstance(node, Power):
        acc = matrices.identity(rep.rs, rep.dim)
        base = _eval_node(node.base, rep)
        for _ in range(node.exponent):
            acc = matrices.matmul(acc, base)
        return acc
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: SkeinExpr, rep):
    """Homomorphic evaluation: sums to matrix sums, products to products."""
    if expr.surface != rep.surface:
        raise ValueError(f"expression over {expr.surface.tag} evaluated in {rep.surface.tag}")
    if not expr.rs.compatible(rep.rs):
        raise ValueError("expression and representation use different root systems")
    return _eval_node(expr.node, rep)


def evaluate_normal_form(nf: NormalForm, rep):
    """Direct evaluation of an ordered normal form, with cached generator powers."""
    if nf.surface != rep.surface:
        raise ValueError("surface mismatch")
    dim = rep.dim
    power_cache = {}

    def gen_power(name, e):
        if (name, e) not in power_cache:
            acc = matrices.identity(rep.rs, dim)
            base = rep.matrix(name)
            for _ in range(e):
                acc = matrices.matmul(acc, base)
            power_cache[(name, e)] = acc
        return power_cache[(name, e)]

    total = matrices.zeros(rep.rs, dim)
    for (xexp, pexp), coeff in nf.terms.items():
        term = matrices.scalar_matrix(coeff, dim)
        for name, e in zip(nf.surface.x_generators, xexp):
            if e:
                term = matrices.matmul(term, gen_power(name, e))
        for name, e in zip(nf.surface.punctures, pexp):
            if e:
                term = matrices.matmul(term, gen_power(name, e))
        total = total + term
    return total


# ---------------------------------------------------------------------------
# distinguished elements and presentation relations
# ---------------------------------------------------------------------------

def _torus_puncture_polynomial(rs):
    """A X1 X2 X3 - A^2 X1^2 - A^-2 X2^2 - A^2 X3^2 + A^2 + A^-2."""
    return Sum((
        Prod((Lit(rs.A), Gen("X1"), Gen("X2"), Gen("X3"))),
        Prod((Lit(-rs.a_pow(2)), Power(Gen("X1"), 2))),
        Prod((Lit(-rs.a_pow(-2)), Power(Gen("X2"), 2))),
        Prod((Lit(-rs.a_pow(2)), Power(Gen("X3"), 2))),
        Lit(rs.a_pow(2) + rs.a_pow(-2)),
    ))


def _sphere_relation_defect(rs):
    """Left minus right side of the degree-three sphere relation.

    Evaluates to zero in every representation of the four-puncture sphere
    algebra.
    """
    q1 = Sum((Prod((Gen("P0"), Gen("P1"))), Prod((Gen("P2"), Gen("P3")))))
    q2 = Sum((Prod((Gen("P0"), Gen("P2"))), Prod((Gen("P1"), Gen("P3")))))
    q3 = Sum((Prod((Gen("P0"), Gen("P3"))), Prod((Gen("P1"), Gen("P2")))))
    square = rs.a_pow(2) + rs.a_pow(-2)
    return Sum((
        Prod((Lit(rs.a_pow(2)), Gen("X1"), Gen("X2"), Gen("X3"))),
        Prod((Lit(-rs.a_pow(4)), Power(Gen("X1"), 2))),
        Prod((Lit(-rs.a_pow(-4)), Power(Gen("X2"), 2))),
        Prod((Lit(-rs.a_pow(4)), Power(Gen("X3"), 2))),
        Prod((Lit(-rs.a_pow(2)), q1, Gen("X1"))),
        Prod((Lit(-rs.a_pow(-2)), q2, Gen("X2"))),
        Prod((Lit(-rs.a_pow(2)), q3, Gen("X3"))),
        Lit(square * square),
        Prod((Lit(rs.scalar(-1)), Gen("P0"), Gen("P1"), Gen("P2"), Gen("P3"))),
        Prod((Lit(rs.scalar(-1)), Power(Gen("P0"), 2))),
        Prod((Lit(rs.scalar(-1)), Power(Gen("P1"), 2))),
        Prod((Lit(rs.scalar(-1)), Power(Gen("P2"), 2))),
        Prod((Lit(rs.scalar(-1)), Power(Gen("P3"), 2))),
    ))


def puncture_element(surface: Surface, rs: RootSystem) -> SkeinExpr:
    """The distinguished central element of the surface.

    For the one-puncture torus this is the loop around the puncture written
    in the X generators; for the four-puncture sphere it is the defect of
    the degree-three relation, which must evaluate to zero.
    """
    if surface.kind == "torus1":
        return SkeinExpr(surface, rs, _torus_puncture_polynomial(rs))
    if surface.kind == "sphere4":
        return SkeinExpr(surface, rs, _sphere_relation_defect(rs))
    raise ValueError(f"no distinguished puncture element for surface {surface.tag}")


def _qcomm(rs, w, gl, gr, out, central=None):
    """A^w gl gr - A^-w gr gl - (A^2w - A^-2w) out - (A^w - A^-w) central."""
    terms = [
        Prod((Lit(rs.a_pow(w)), Gen(gl), Gen(gr))),
        Prod((Lit(-rs.a_pow(-w)), Gen(gr), Gen(gl))),
        Prod((Lit(-(rs.a_pow(2 * w) - rs.a_pow(-2 * w))), Gen(out))),
    ]
    if central is not None:
        terms.append(Prod((Lit(-(rs.a_pow(w) - rs.a_pow(-w))), central)))
    return Sum(tuple(terms))


def relation_defects(surface: Surface, rs: RootSystem) -> dict:
    """Defect expressions of all presentation relations; zero on representations."""
    defects = {}
    if surface.kind in ("torus1", "torus0"):
        defects["qcomm_12"] = _qcomm(rs, 1, "X1", "X2", "X3")
        defects["qcomm_23"] = _qcomm(rs, 1, "X2", "X3", "X1")
        defects["qcomm_31"] = _qcomm(rs, 1, "X3", "X1", "X2")
        if surface.kind == "torus1":
            defects["puncture"] = Sum((
                _torus_puncture_polynomial(rs),
                Prod((Lit(rs.scalar(-1)), Gen("P"))),
            ))
        else:
            defects["closed_puncture"] = Sum((
                _torus_puncture_polynomial(rs),
                Lit(rs.a_pow(2) + rs.a_pow(-2)),
            ))
    elif surface.kind == "sphere4":
        q1 = Sum((Prod((Gen("P0"), Gen("P1"))), Prod((Gen("P2"), Gen("P3")))))
        q2 = Sum((Prod((Gen("P0"), Gen("P2"))), Prod((Gen("P1"), Gen("P3")))))
        q3 = Sum((Prod((Gen("P0"), Gen("P3"))), Prod((Gen("P1"), Gen("P2")))))
        defects["qcomm_12"] = _qcomm(rs, 2, "X1", "X2", "X3", q3)
        defects["qcomm_23"] = _qcomm(rs, 2, "X2", "X3", "X1", q1)
        defects["qcomm_31"] = _qcomm(rs, 2, "X3", "X1", "X2", q2)
        defects["cubic"] = _sphere_relation_defect(rs)
        for p in surface.punctures:
            for x in surface.x_generators:
                defects[f"central_{p}_{x}"] = Sum((
                    Prod((Gen(p), Gen(x))),
                    Prod((Lit(rs.scalar(-1)), Gen(x), Gen(p))),
                ))
    return {name: SkeinExpr(surface, rs, node) for name, node in defects.items()}


def parse_scalar(text: str, rs: RootSystem) -> Scalar:
    """Parse a generator-free expression straight to a scalar value.

    This is the literal grammar the command line accepts for numeric flags.
    """
    from .surfaces import sphere_k

    expr = parse(text, sphere_k(0), rs)
    total = rs.zero
    for coeff, word in _expand(expr.node, rs):
        if word:
            raise ParseError("expected a pure scalar expression")
        total = total + coeff
    return total


# ---------------------------------------------------------------------------
# random expressions (tests, demos, confluence experiments)
# ---------------------------------------------------------------------------

def random_word_expression(surface: Surface, rng, max_word_len: int = 8, max_terms: int = 3) -> str:
    """Random expression text: a small sum of scalar-weighted generator words."""
    gens = surface.generators
    pieces = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = rng.choice(["1", "2", "3", "1/2", "A", "A^2", "A^-1", "A^-3"])
        word = [rng.choice(gens) for _ in range(rng.randint(1, max_word_len))]
        sign = rng.choice(["+", "-"])
        pieces.append((sign, coeff + " " + " ".join(word)))
    text = ""
    for sign, piece in pieces:
        if not text:
            text = piece if sign == "+" else f"-{piece}"
        else:
            text += f" {sign} {piece}"
    return text
