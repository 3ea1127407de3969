"""Group presentations: words, relators, and the line-oriented source grammar.

Words are stored as free-reduced (generator index, exponent) sequences.
The commutator convention is [x,y] = x^-1 y^-1 x y.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Word:
    """A free-reduced word: tuple of (generator index, nonzero exponent)."""

    syllables: tuple = ()

    @staticmethod
    def from_syllables(syls):
        return Word(_reduce(syls))

    @staticmethod
    def generator(i, exp=1):
        return Word(((i, exp),)) if exp else Word()

    def __mul__(self, other):
        return Word(_reduce(self.syllables + other.syllables))

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Word()
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other):
        return self.inverse() * other.inverse() * self * other

    def is_empty(self):
        return not self.syllables

    def length(self):
        return sum(abs(e) for _, e in self.syllables)

    def letters(self):
        """Flatten to column letters: 2*g for a generator, 2*g+1 for its inverse."""
        out = []
        for g, e in self.syllables:
            letter = 2 * g if e > 0 else 2 * g + 1
            out.extend([letter] * abs(e))
        return out

    def cyclic_permutation(self, k):
        letters = self.letters()
        if not letters:
            return self
        k %= len(letters)
        return Word.from_letters(letters[k:] + letters[:k])

    @staticmethod
    def from_letters(letters):
        return Word.from_syllables(tuple(
            (let // 2, 1 if let % 2 == 0 else -1) for let in letters))

    def display(self, names):
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return "*".join(parts)


def _reduce(syls):
    out = []
    for g, e in syls:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((g, merged))
        else:
            out.append((g, e))
    return tuple(out)


@dataclass
class FinitePresentation:
    """Generator names plus relator words (equations stored as w1·w2^-1)."""

    name: str
    generator_names: list
    relators: list = field(default_factory=list)

    @property
    def ngens(self):
        return len(self.generator_names)

    def gen_index(self, name):
        return self.generator_names.index(name)

    def word(self, text):
        """Parse a single word in this presentation's generators."""
        return _parse_word(_tokenize(text, 0), {n: i for i, n in enumerate(self.generator_names)})

    def display(self):
        lines = [f"group {self.name}", "gens " + " ".join(self.generator_names)]
        for r in self.relators:
            lines.append("rel " + r.display(self.generator_names))
        return "\n".join(lines) + "\n"


class PresentationError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")" \
            if line is not None else ""
        super().__init__(message + loc)


def parse_presentation(text):
    """Parse presentation source (see module docstring for the grammar):

    group <name>
    gens a b c
    rel <word> [= <word> ...]     # '#' starts a comment
    """
    name = None
    gen_names = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "group":
            name = rest or None
            if not name:
                raise PresentationError("missing group name", lineno)
        elif head == "gens":
            names = rest.split()
            if not names:
                raise PresentationError("empty generator list", lineno)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", lineno)
            gen_names = names
        elif head == "rel":
            if gen_names is None:
                raise PresentationError("rel before gens", lineno)
            index = {n: i for i, n in enumerate(gen_names)}
            sides = rest.split("=")
            try:
                words = [_parse_word(_tokenize(s, lineno), index) for s in sides]
            except PresentationError as err:
                if err.line is None:
                    raise PresentationError(str(err), lineno) from None
                raise
            if len(words) == 1:
                rel = words[0]
                if not rel.is_empty():
                    relators.append(rel)
            else:
                for left, right in zip(words, words[1:]):
                    rel = left * right.inverse()
                    if not rel.is_empty():
                        relators.append(rel)
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)
    if gen_names is None:
        raise PresentationError("no gens line")
    return FinitePresentation(name or "unnamed", gen_names, relators)


# ----------------------------------------------------------------------
# word expression parser
# ----------------------------------------------------------------------

_SYMBOLS = set("*^()[],")


def _tokenize(text, lineno):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _SYMBOLS:
            tokens.append((ch, i))
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch.isdigit() or ch == "-":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if text[i:j] == "-":
                raise PresentationError("stray '-'", lineno, i)
            tokens.append(("int", int(text[i:j]), i))
            i = j
        else:
            raise PresentationError(f"unexpected character {ch!r}", lineno, i)
    tokens.append(("end", len(text)))
    return _TokenStream(tokens, lineno)


class _TokenStream:
    def __init__(self, tokens, lineno):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise PresentationError(f"expected {kind!r}, got {tok[0]!r}",
                                    self.lineno, tok[-1])
        return tok

    def error(self, msg):
        tok = self.peek()
        raise PresentationError(msg, self.lineno, tok[-1])


def _parse_word(stream, index):
    word = _parse_expr(stream, index)
    if stream.peek()[0] != "end":
        stream.error("trailing input in word")
    return word


def _parse_expr(stream, index):
    word = _parse_term(stream, index)
    while stream.peek()[0] == "*":
        stream.next()
        word = word * _parse_term(stream, index)
    return word


def _parse_term(stream, index):
    atom = _parse_atom(stream, index)
    while stream.peek()[0] == "^":
        stream.next()
        tok = stream.next()
        if tok[0] != "int":
            raise PresentationError("expected integer exponent", stream.lineno, tok[-1])
        exp = tok[1]
        if exp == 0:
            raise PresentationError("zero exponent", stream.lineno, tok[-1])
        atom = atom ** exp
    return atom


def _parse_atom(stream, index):
    tok = stream.next()
    if tok[0] == "name":
        name = tok[1]
        if name == "1":
            return Word()
        if name not in index:
            raise PresentationError(f"undeclared generator {name!r}", stream.lineno, tok[-1])
        return Word.generator(index[name])
    if tok[0] == "int" and tok[1] == 1:
        return Word()  # the identity element
    if tok[0] == "(":
        inner = _parse_expr(stream, index)
        stream.expect(")")
        return inner
    if tok[0] == "[":
        left = _parse_expr(stream, index)
        stream.expect(",")
        right = _parse_expr(stream, index)
        stream.expect("]")
        return left.commutator(right)
    raise PresentationError(f"unexpected token {tok[0]!r}", stream.lineno, tok[-1])
