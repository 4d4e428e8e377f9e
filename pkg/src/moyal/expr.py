"""Closed-form expression trees with exact rational constants.

Carrier for everything the polynomial algebra cannot hold: exponentials,
trigonometric and hyperbolic factors, named parameters, and the time
variable.  Trees are built through normalizing constructors (constants fold
exactly, sums collect like terms, products collect like bases, factor and
term order is canonical), so structurally equal means equal as written
formulas and the printer is deterministic.

Differentiation is rule-based and exact; evaluation binds symbols to floats
and returns a complex.  There is no general simplifier: normalization is
limited to the constructor rules above, and identities beyond them are the
test suite's job to check numerically.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .scalars import ExactScalar

__all__ = [
    "Expr",
    "Const",
    "Sym",
    "Pi",
    "Add",
    "Mul",
    "Pow",
    "Call",
    "const",
    "sym",
    "add",
    "mul",
    "pow_int",
    "call",
    "differentiate",
    "nth_derivative",
    "eval_expr",
    "free_symbols",
    "parse_expr",
    "print_expr",
    "ExprParseError",
    "ExprEvalError",
    "ExprDomainError",
    "FUNCTION_NAMES",
    "SYMBOL_NAMES",
]

FUNCTION_NAMES = ("exp", "sin", "cos", "tan", "sec", "sinh", "cosh")
SYMBOL_NAMES = ("q", "p", "t", "m", "l", "lambda", "omega", "beta", "gamma", "hbar")

_COS_EPS = 1e-12


class ExprEvalError(ValueError):
    pass


class ExprDomainError(ExprEvalError):
    pass


class Expr:
    """Base node.  Instances are immutable and compared structurally."""

    __slots__ = ("_hash", "_free", "_skey")

    def __hash__(self):
        return self._hash

    # arithmetic sugar; everything routes through the normalizing constructors

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, mul(_MINUS_ONE, other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, mul(_MINUS_ONE, self))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, pow_int(other, -1))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(other, pow_int(self, -1))

    def __neg__(self):
        return mul(_MINUS_ONE, self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return pow_int(self, n)

    def __str__(self):
        return print_expr(self)

    def __repr__(self):
        return f"<Expr {print_expr(self)}>"


def _coerce(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction, ExactScalar)):
        return const(x)
    return NotImplemented


_EMPTY: frozenset = frozenset()


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: ExactScalar):
        self.value = value
        self._free = _EMPTY
        self._hash = hash((0, value.re, value.im))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Const and self.value == other.value

    __hash__ = Expr.__hash__


class Sym(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._free = frozenset((name,))
        self._hash = hash((1, name))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Sym and self.name == other.name

    __hash__ = Expr.__hash__


class Pi(Expr):
    __slots__ = ()

    def __init__(self):
        self._free = _EMPTY
        self._hash = hash((2, "pi"))
        self._skey = None

    def __eq__(self, other):
        return self is other or type(other) is Pi

    __hash__ = Expr.__hash__


class Call(Expr):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: str, arg: Expr):
        self.fn = fn
        self.arg = arg
        self._free = arg._free
        self._hash = hash((3, fn, arg._hash))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Call and self.fn == other.fn and self.arg == other.arg

    __hash__ = Expr.__hash__


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base: Expr, exp: int):
        self.base = base
        self.exp = exp
        self._free = base._free
        self._hash = hash((4, base._hash, exp))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Pow and self.exp == other.exp and self.base == other.base

    __hash__ = Expr.__hash__


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple[Expr, ...]):
        self.factors = factors
        self._free = frozenset().union(*(f._free for f in factors))
        self._hash = hash((5,) + tuple(f._hash for f in factors))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Mul and self.factors == other.factors

    __hash__ = Expr.__hash__


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms: tuple[Expr, ...]):
        self.terms = terms
        self._free = frozenset().union(*(t._free for t in terms))
        self._hash = hash((6,) + tuple(t._hash for t in terms))
        self._skey = None

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Add and self.terms == other.terms

    __hash__ = Expr.__hash__


def _sort_key(e: Expr):
    k = e._skey
    if k is not None:
        return k
    if type(e) is Const:
        v = e.value
        k = (0, v.re.numerator, v.re.denominator, v.im.numerator, v.im.denominator)
    elif type(e) is Sym:
        k = (1, e.name)
    elif type(e) is Pi:
        k = (2,)
    elif type(e) is Call:
        k = (3, e.fn, _sort_key(e.arg))
    elif type(e) is Pow:
        k = (4, _sort_key(e.base), e.exp)
    elif type(e) is Mul:
        k = (5, tuple(_sort_key(f) for f in e.factors))
    else:
        k = (6, tuple(_sort_key(t) for t in e.terms))
    e._skey = k
    return k


# -- normalizing constructors -------------------------------------------


def const(x) -> Const:
    if isinstance(x, ExactScalar):
        v = x
    else:
        v = ExactScalar(x)
    if not v:
        return ZERO
    if v == 1:
        return ONE
    return Const(v)


def sym(name: str) -> Sym:
    return Sym(name)


def add(*terms) -> Expr:
    """Sum with exact folding and like-term collection; canonical order."""
    const_acc = ExactScalar(0)
    parts: dict[Expr, ExactScalar] = {}
    stack = list(terms)
    stack.reverse()
    while stack:
        t = stack.pop()
        tt = type(t)
        if tt is Add:
            stack.extend(reversed(t.terms))
        elif tt is Const:
            const_acc = const_acc + t.value
        else:
            if tt is Mul and type(t.factors[0]) is Const:
                coeff = t.factors[0].value
                rest = t.factors[1:]
                part = rest[0] if len(rest) == 1 else Mul(rest)
            else:
                coeff = ExactScalar(1)
                part = t
            got = parts.get(part)
            parts[part] = coeff if got is None else got + coeff
    out: list[Expr] = []
    for part, coeff in parts.items():
        if not coeff:
            continue
        if coeff == 1:
            out.append(part)
        elif type(part) is Mul:
            out.append(Mul((Const(coeff),) + part.factors))
        else:
            out.append(Mul((Const(coeff), part)))
    if const_acc:
        out.append(const(const_acc))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    out.sort(key=_sort_key)
    return Add(tuple(out))


def mul(*factors) -> Expr:
    """Product with exact folding and like-base power collection."""
    coeff = ExactScalar(1)
    powers: dict[Expr, int] = {}
    stack = list(factors)
    stack.reverse()
    while stack:
        f = stack.pop()
        tf = type(f)
        if tf is Mul:
            stack.extend(reversed(f.factors))
        elif tf is Const:
            coeff = coeff * f.value
            if not coeff:
                return ZERO
        elif tf is Pow:
            powers[f.base] = powers.get(f.base, 0) + f.exp
        else:
            powers[f] = powers.get(f, 0) + 1
    parts: list[Expr] = []
    for base, k in powers.items():
        if k == 0:
            continue
        parts.append(pow_int(base, k))
    # pow_int may fold to a Const (only for Const bases, which cannot occur
    # here) or return the base itself; re-sort for canonical order
    parts.sort(key=_sort_key)
    if not parts:
        return const(coeff)
    if coeff == 1:
        return parts[0] if len(parts) == 1 else Mul(tuple(parts))
    return Mul((Const(coeff),) + tuple(parts))


def pow_int(base: Expr, exp: int) -> Expr:
    if not isinstance(exp, int):
        raise TypeError("exponents must be integers")
    if exp == 0:
        return ONE
    if exp == 1:
        return base
    tb = type(base)
    if tb is Const:
        return const(base.value ** exp)
    if tb is Pow:
        return pow_int(base.base, base.exp * exp)
    if tb is Mul:
        return mul(*(pow_int(f, exp) for f in base.factors))
    return Pow(base, exp)


_FOLD_AT_ZERO = {
    "exp": 1,
    "sin": 0,
    "cos": 1,
    "tan": 0,
    "sec": 1,
    "sinh": 0,
    "cosh": 1,
}


def call(fn: str, arg: Expr) -> Expr:
    if fn not in FUNCTION_NAMES:
        raise ValueError(f"unknown function '{fn}'")
    if type(arg) is Const and not arg.value:
        return const(_FOLD_AT_ZERO[fn])
    return Call(fn, arg)


ZERO = Const(ExactScalar(0))
ONE = Const(ExactScalar(1))
_MINUS_ONE = Const(ExactScalar(-1))
PI = Pi()
I_UNIT = Const(ExactScalar(0, 1))


def free_symbols(e: Expr) -> frozenset[str]:
    return e._free


# -- differentiation -----------------------------------------------------

_CHAIN = {
    "exp": lambda u: Call("exp", u),
    "sin": lambda u: Call("cos", u),
    "cos": lambda u: mul(_MINUS_ONE, Call("sin", u)),
    "tan": lambda u: pow_int(Call("sec", u), 2),
    "sec": lambda u: mul(Call("sec", u), Call("tan", u)),
    "sinh": lambda u: Call("cosh", u),
    "cosh": lambda u: Call("sinh", u),
}


def differentiate(e: Expr, var: str) -> Expr:
    """Exact partial derivative; subtrees free of ``var`` prune to zero."""
    memo: dict[int, Expr] = {}

    def d(n: Expr) -> Expr:
        if var not in n._free:
            return ZERO
        got = memo.get(id(n))
        if got is not None:
            return got
        tn = type(n)
        if tn is Sym:
            r = ONE
        elif tn is Add:
            r = add(*(d(t) for t in n.terms))
        elif tn is Mul:
            pieces = []
            fs = n.factors
            for k, f in enumerate(fs):
                if var not in f._free:
                    continue
                df = d(f)
                pieces.append(mul(*fs[:k], df, *fs[k + 1:]))
            r = add(*pieces)
        elif tn is Pow:
            r = mul(const(n.exp), pow_int(n.base, n.exp - 1), d(n.base))
        elif tn is Call:
            r = mul(_CHAIN[n.fn](n.arg), d(n.arg))
        else:
            raise TypeError(f"cannot differentiate {tn.__name__}")
        memo[id(n)] = r
        return r

    return d(e)


def nth_derivative(e: Expr, var: str, n: int) -> Expr:
    for _ in range(n):
        e = differentiate(e, var)
    return e


# -- evaluation ----------------------------------------------------------

_CFUNCS = {
    "exp": cmath.exp,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}


def eval_expr(e: Expr, bindings) -> complex:
    """Evaluate with symbols bound to numbers.  Returns a complex.

    Raises :class:`ExprEvalError` for unbound symbols and
    :class:`ExprDomainError` where sec or tan blow up (cosine of the
    argument below 1e-12 in magnitude) or a zero is raised to a negative
    power.
    """
    memo: dict[int, complex] = {}

    def ev(n: Expr) -> complex:
        got = memo.get(id(n))
        if got is not None:
            return got
        tn = type(n)
        if tn is Const:
            r = complex(n.value)
        elif tn is Sym:
            try:
                r = complex(bindings[n.name])
            except KeyError:
                raise ExprEvalError(f"unbound symbol '{n.name}'") from None
        elif tn is Pi:
            r = complex(math.pi)
        elif tn is Add:
            r = 0j
            for t in n.terms:
                r += ev(t)
        elif tn is Mul:
            r = 1 + 0j
            for f in n.factors:
                r *= ev(f)
        elif tn is Pow:
            b = ev(n.base)
            if n.exp < 0 and abs(b) == 0.0:
                raise ExprDomainError("zero raised to a negative power")
            r = b ** n.exp
        else:
            u = ev(n.arg)
            if n.fn in ("tan", "sec"):
                c = cmath.cos(u)
                if abs(c) < _COS_EPS:
                    raise ExprDomainError(
                        f"{n.fn} evaluated too close to an odd multiple of pi/2"
                    )
                r = cmath.sin(u) / c if n.fn == "tan" else 1.0 / c
            else:
                r = _CFUNCS[n.fn](u)
        memo[id(n)] = r
        return r

    return ev(e)


# -- text form -----------------------------------------------------------


class ExprParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _rat_text(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator) if r.numerator >= 0 else f"({r.numerator})"
    return f"({r.numerator}/{r.denominator})"


def _const_text(v: ExactScalar) -> str:
    if v.im == 0:
        return _rat_text(v.re)
    if v.re == 0:
        if v.im == 1:
            return "i"
        return f"{_rat_text(v.im)}*i"
    im_txt = "i" if v.im == 1 else f"{_rat_text(v.im)}*i"
    return f"({_rat_text(v.re)} + {im_txt})"


def print_expr(e: Expr) -> str:
    """Deterministic text form; parses back to a structurally equal tree."""
    te = type(e)
    if te is Const:
        return _const_text(e.value)
    if te is Sym:
        return e.name
    if te is Pi:
        return "pi"
    if te is Call:
        return f"{e.fn}({print_expr(e.arg)})"
    if te is Pow:
        base = print_expr(e.base)
        if type(e.base) in (Add, Mul):
            base = f"({base})"
        return f"{base}^{e.exp}"
    if te is Mul:
        parts = []
        for f in e.factors:
            txt = print_expr(f)
            if type(f) is Add:
                txt = f"({txt})"
            parts.append(txt)
        return "*".join(parts)
    return " + ".join(print_expr(t) for t in e.terms)


def parse_expr(text: str) -> Expr:
    """Parse the expression grammar: the polynomial grammar plus function
    calls, the parameter names, ``t``, ``pi``, ``/`` division and negative
    integer exponents."""
    p = _ExprParser(text)
    e = p.parse_sum()
    p.skip_ws()
    if p.pos != len(p.text):
        raise ExprParseError("unexpected trailing input", p.pos)
    return e


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        neg = False
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            neg = True
            self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExprParseError("expected digits", start)
        v = int(self.text[start:self.pos])
        return -v if neg else v

    def parse_sum(self) -> Expr:
        negate = False
        if self.take("-"):
            negate = True
        else:
            self.take("+")
        acc = self.parse_product()
        if negate:
            acc = mul(_MINUS_ONE, acc)
        while True:
            ch = self.peek()
            if ch == "+":
                self.take("+")
                acc = add(acc, self.parse_product())
            elif ch == "-":
                self.take("-")
                acc = add(acc, mul(_MINUS_ONE, self.parse_product()))
            else:
                return acc

    def parse_product(self) -> Expr:
        acc = self.parse_power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take("*")
                acc = mul(acc, self.parse_power())
            elif ch == "/":
                self.take("/")
                acc = mul(acc, pow_int(self.parse_power(), -1))
            else:
                return acc

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take("^")
            return pow_int(base, self.integer())
        return base

    def parse_atom(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            inner = self.parse_sum()
            if not self.take(")"):
                raise ExprParseError("expected ')'", self.pos)
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return const(int(self.text[start:self.pos]))
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalpha() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start:self.pos]
            if name in FUNCTION_NAMES:
                if not self.take("("):
                    raise ExprParseError(
                        f"function '{name}' requires an argument", self.pos
                    )
                arg = self.parse_sum()
                if not self.take(")"):
                    raise ExprParseError("expected ')'", self.pos)
                return call(name, arg)
            if name == "i":
                return I_UNIT
            if name == "pi":
                return PI
            if name in SYMBOL_NAMES:
                return sym(name)
            raise ExprParseError(f"unknown name '{name}'", start)
        raise ExprParseError("expected a term", self.pos)
