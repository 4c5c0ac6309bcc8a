'''
Metric_DSL.py

This module parses, prints, evaluates and differentiates the scalar-field
expressions used to describe conformal factors lambda(x, y) and curvature
profiles k(s).

Grammar (whitespace is insignificant):

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := primary ['^' exponent]
    exponent := ['-'] INTEGER | '(' ['-'] INTEGER ')'
    primary  := NUMBER | VARIABLE | 'pi' | FUNCTION '(' expr ')' | '(' expr ')'

    VARIABLE := x | y | s
    FUNCTION := sin | cos | exp | log | sqrt | tanh | cosh | sinh

Precedence is ^ > unary - > * / > + -, binary operators associate to the left.
Exponents are integer literals only. Chained powers need parentheses.

Evaluation accepts floats or numpy arrays for the bindings. Division by zero,
log or sqrt of a non-positive argument and overflow raise ExprDomainError
instead of returning non-finite values.

Derivatives are exact: differentiate() builds a new tree from the usual rules.
The constructors fold products with 0 and 1 so that the derivative trees stay
small, no other simplification is attempted.
'''
###################################################################################
import re
import numpy as np

from .utils.Errors import ExprError, ExprSyntaxError, UnknownIdentifierError, ArityError, \
    UnboundVariableError, ExprDomainError

VARIABLES = ('x', 'y', 's')
CONSTANTS = {'pi': np.pi}

###################################################################################
################################## TREE NODES #####################################
###################################################################################

class Expr(object):
    '''Base node. Subclasses implement _evaluate, derivative and to_text.'''
    __slots__ = ()

    def evaluate(self, env):
        return self._evaluate(env)

    def depends_on(self, var):
        return var in self.variables()

    def variables(self):
        out = set()
        for child in self.children():
            out |= child.variables()
        return out

    def children(self):
        return ()

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.to_text())


class Const(Expr):
    __slots__ = ('value',)

    def __init__(self, value):
        self.value = float(value)

    def _evaluate(self, env):
        return self.value

    def variables(self):
        return set()

    def derivative(self, var):
        return ZERO

    def to_text(self):
        if self.value < 0:
            return '(-%r)' % (-self.value)
        return repr(self.value)


class Var(Expr):
    __slots__ = ('name',)

    def __init__(self, name):
        self.name = name

    def _evaluate(self, env):
        return env[self.name]

    def variables(self):
        return {self.name}

    def derivative(self, var):
        return ONE if var == self.name else ZERO

    def to_text(self):
        return self.name


class NamedConst(Const):
    '''A named constant such as pi; prints by name.'''
    __slots__ = ('name',)

    def __init__(self, name):
        super().__init__(CONSTANTS[name])
        self.name = name

    def to_text(self):
        return self.name


ZERO = Const(0.0)
ONE = Const(1.0)

class Neg(Expr):
    __slots__ = ('arg',)

    def __init__(self, arg):
        self.arg = arg

    def children(self):
        return (self.arg,)

    def _evaluate(self, env):
        return -self.arg._evaluate(env)

    def derivative(self, var):
        return neg(self.arg.derivative(var))

    def to_text(self):
        return '(-%s)' % self.arg.to_text()


class BinaryOp(Expr):
    __slots__ = ('left', 'right')
    symbol = '?'

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)

    def to_text(self):
        return '(%s %s %s)' % (self.left.to_text(), self.symbol, self.right.to_text())


class Add(BinaryOp):
    __slots__ = ()
    symbol = '+'

    def _evaluate(self, env):
        return self.left._evaluate(env) + self.right._evaluate(env)

    def derivative(self, var):
        return add(self.left.derivative(var), self.right.derivative(var))


class Sub(BinaryOp):
    __slots__ = ()
    symbol = '-'

    def _evaluate(self, env):
        return self.left._evaluate(env) - self.right._evaluate(env)

    def derivative(self, var):
        return sub(self.left.derivative(var), self.right.derivative(var))


class Mul(BinaryOp):
    __slots__ = ()
    symbol = '*'

    def _evaluate(self, env):
        return self.left._evaluate(env) * self.right._evaluate(env)

    def derivative(self, var):
        return add(mul(self.left.derivative(var), self.right),
                   mul(self.left, self.right.derivative(var)))


class Div(BinaryOp):
    __slots__ = ()
    symbol = '/'

    def _evaluate(self, env):
        den = self.right._evaluate(env)
        if np.any(np.asarray(den) == 0):
            raise ExprDomainError('division by zero in %s' % self.to_text())
        return self.left._evaluate(env) / den

    def derivative(self, var):
        # (u/v)' = u'/v - u v'/v^2
        du, dv = self.left.derivative(var), self.right.derivative(var)
        first = div(du, self.right)
        if dv is ZERO:
            return first
        return sub(first, div(mul(self.left, dv), power(self.right, 2)))


class Pow(Expr):
    __slots__ = ('base', 'exponent')

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = int(exponent)

    def children(self):
        return (self.base,)

    def _evaluate(self, env):
        value = self.base._evaluate(env)
        if self.exponent < 0:
            if np.any(np.asarray(value) == 0):
                raise ExprDomainError('zero raised to a negative power in %s' % self.to_text())
            return 1.0 / np.power(value, -self.exponent)
        return np.power(value, self.exponent)

    def derivative(self, var):
        inner = self.base.derivative(var)
        if inner is ZERO:
            return ZERO
        outer = mul(Const(self.exponent), power(self.base, self.exponent - 1))
        return mul(outer, inner)

    def to_text(self):
        return '(%s^%d)' % (self.base.to_text(), self.exponent) if self.exponent >= 0 \
            else '(%s^(%d))' % (self.base.to_text(), self.exponent)


###################################################################################
## Functions of one argument
class Func(Expr):
    __slots__ = ('arg',)
    name = '?'

    def __init__(self, arg):
        self.arg = arg

    def children(self):
        return (self.arg,)

    def _evaluate(self, env):
        return self.apply(self.arg._evaluate(env))

    def derivative(self, var):
        inner = self.arg.derivative(var)
        if inner is ZERO:
            return ZERO
        return mul(self.outer_derivative(), inner)

    def to_text(self):
        return '%s(%s)' % (self.name, self.arg.to_text())


class Sin(Func):
    __slots__ = ()
    name = 'sin'
    apply = staticmethod(np.sin)

    def outer_derivative(self):
        return Cos(self.arg)


class Cos(Func):
    __slots__ = ()
    name = 'cos'
    apply = staticmethod(np.cos)

    def outer_derivative(self):
        return neg(Sin(self.arg))


class Exp(Func):
    __slots__ = ()
    name = 'exp'
    apply = staticmethod(np.exp)

    def outer_derivative(self):
        return self


class Log(Func):
    __slots__ = ()
    name = 'log'

    def apply(self, value):
        if np.any(np.asarray(value) <= 0):
            raise ExprDomainError('log of a non-positive argument in %s' % self.to_text())
        return np.log(value)

    def outer_derivative(self):
        return div(ONE, self.arg)


class Sqrt(Func):
    __slots__ = ()
    name = 'sqrt'

    def apply(self, value):
        if np.any(np.asarray(value) <= 0):
            raise ExprDomainError('sqrt of a non-positive argument in %s' % self.to_text())
        return np.sqrt(value)

    def outer_derivative(self):
        return div(Const(0.5), self)


class Tanh(Func):
    __slots__ = ()
    name = 'tanh'
    apply = staticmethod(np.tanh)

    def outer_derivative(self):
        return sub(ONE, power(self, 2))


class Cosh(Func):
    __slots__ = ()
    name = 'cosh'
    apply = staticmethod(np.cosh)

    def outer_derivative(self):
        return Sinh(self.arg)


class Sinh(Func):
    __slots__ = ()
    name = 'sinh'
    apply = staticmethod(np.sinh)

    def outer_derivative(self):
        return Cosh(self.arg)


FUNCTIONS = {cls.name: cls for cls in (Sin, Cos, Exp, Log, Sqrt, Tanh, Cosh, Sinh)}

###################################################################################
## Folding constructors used by the derivative rules
def _is_const(e, value):
    return isinstance(e, Const) and not isinstance(e, NamedConst) and e.value == value

def add(a, b):
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Add(a, b)

def sub(a, b):
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Sub(a, b)

def mul(a, b):
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Mul(a, b)

def div(a, b):
    if _is_const(a, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    return Div(a, b)

def neg(a):
    if _is_const(a, 0.0):
        return ZERO
    if isinstance(a, Const) and not isinstance(a, NamedConst):
        return Const(-a.value)
    return Neg(a)

def power(a, n):
    if n == 0:
        return ONE
    if n == 1:
        return a
    return Pow(a, n)

###################################################################################
##################################### PARSER ######################################
###################################################################################

_TOKEN_RE = re.compile(r'''
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
''', re.VERBOSE)

class Token(object):
    __slots__ = ('kind', 'text', 'offset')

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def tokenize(text):
    '''
    Split text into tokens. Offsets are byte offsets into the UTF-8 encoding.
    The token list always ends with an 'end' token at len(text).
    '''
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError('unexpected character %r' % text[pos], _byte_offset(text, pos))
        kind = match.lastgroup
        if kind != 'ws':
            tokens.append(Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token('end', '', _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode('utf-8'))


class _Parser(object):
    '''Recursive descent over the token list; one method per grammar rule.'''

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text):
        if self.current.text != text or self.current.kind == 'end':
            raise ExprSyntaxError("expected '%s'" % text, self.current.offset)
        return self.advance()

    def parse(self):
        tree = self.expr()
        if self.current.kind != 'end':
            raise ExprSyntaxError('unexpected %r' % self.current.text, self.current.offset)
        return tree

    def expr(self):
        left = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == '+' else Sub(left, right)
        return left

    def term(self):
        left = self.unary()
        while self.current.kind == 'op' and self.current.text in '*/':
            op = self.advance().text
            right = self.unary()
            left = Mul(left, right) if op == '*' else Div(left, right)
        return left

    def unary(self):
        if self.current.kind == 'op' and self.current.text == '-':
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.current.kind == 'op' and self.current.text == '^':
            self.advance()
            base = Pow(base, self.exponent())
            if self.current.kind == 'op' and self.current.text == '^':
                raise ExprSyntaxError("chained '^' needs parentheses", self.current.offset)
        return base

    def exponent(self):
        bracketed = self.current.kind == 'op' and self.current.text == '('
        if bracketed:
            self.advance()
        sign = 1
        if self.current.kind == 'op' and self.current.text == '-':
            self.advance()
            sign = -1
        token = self.current
        if token.kind != 'number' or not token.text.isdigit():
            raise ExprSyntaxError('exponent must be an integer literal', token.offset)
        self.advance()
        if bracketed:
            self.expect(')')
        return sign * int(token.text)

    def primary(self):
        token = self.current
        if token.kind == 'number':
            self.advance()
            return Const(float(token.text))
        if token.kind == 'ident':
            self.advance()
            return self.identifier(token)
        if token.kind == 'op' and token.text == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        if token.kind == 'end':
            raise ExprSyntaxError('unexpected end of input', token.offset)
        raise ExprSyntaxError('unexpected %r' % token.text, token.offset)

    def identifier(self, token):
        name = token.text
        if name in FUNCTIONS:
            if not (self.current.kind == 'op' and self.current.text == '('):
                raise ExprSyntaxError("function '%s' needs an argument list" % name, self.current.offset)
            open_paren = self.advance()
            args = []
            if not (self.current.kind == 'op' and self.current.text == ')'):
                args.append(self.expr())
                while self.current.kind == 'op' and self.current.text == ',':
                    self.advance()
                    args.append(self.expr())
            self.expect(')')
            if len(args) != 1:
                raise ArityError("'%s' takes 1 argument, got %d" % (name, len(args)), open_paren.offset)
            return FUNCTIONS[name](args[0])
        if name in VARIABLES:
            return Var(name)
        if name in CONSTANTS:
            return NamedConst(name)
        raise UnknownIdentifierError("unknown identifier '%s'" % name, token.offset)


###################################################################################
################################## PUBLIC API #####################################
###################################################################################

def parse_expr(text):
    '''
    Parse an expression string into an Expr tree.

    Params:
        text: str, non-empty expression in the grammar above.

    Output:
        Expr tree.

    Raises ExprSyntaxError (with .offset), UnknownIdentifierError or ArityError.
    '''
    if not isinstance(text, str) or not text.strip():
        raise ExprSyntaxError('empty expression', 0)
    return _Parser(text).parse()


def eval_expr(e, bindings):
    '''
    Evaluate e under bindings {var: float or ndarray}.

    Scalar bindings return a float; array bindings return an array of the
    broadcast shape. Unbound variables raise UnboundVariableError, domain
    violations and non-finite results raise ExprDomainError.
    '''
    missing = e.variables() - set(bindings)
    if missing:
        raise UnboundVariableError('unbound variable(s): %s' % ', '.join(sorted(missing)))
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        value = e.evaluate(bindings)
    if not np.all(np.isfinite(value)):
        raise ExprDomainError('non-finite value of %s' % e.to_text())
    shapes = [np.shape(v) for v in bindings.values() if np.ndim(v) > 0]
    if shapes:
        return np.broadcast_to(value, np.broadcast_shapes(*shapes)).astype(float)
    return float(value)


def differentiate(e, var):
    '''Exact partial derivative of e with respect to var (x, y or s).'''
    if var not in VARIABLES:
        raise ExprError("cannot differentiate with respect to '%s'" % var)
    return e.derivative(var)


def to_text(e):
    '''Print e fully parenthesized; parse_expr(to_text(e)) evaluates identically.'''
    return e.to_text()


def free_variables(e):
    return sorted(e.variables())


def as_expr(value):
    '''Accept an Expr, a number or an expression string.'''
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float)):
        return Const(value)
    return parse_expr(value)
