# **************************************************************************
# *
# * pyspinctl: microwave-only control of an electron-nuclear spin pair
# *
# * This program is free software: you can redistribute it and/or modify
# * it under the terms of the GNU General Public License as published by
# * the Free Software Foundation, either version 3 of the License, or
# * (at your option) any later version.
# *
# * This program is distributed in the hope that it will be useful,
# * but WITHOUT ANY WARRANTY; without even the implied warranty of
# * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# * GNU General Public License for more details.
# *
# * You should have received a copy of the GNU General Public License
# * along with this program.  If not, see <https://www.gnu.org/licenses/>.
# *
# **************************************************************************
"""
Tokenizer of the sequence files. It never fails: characters that do not
start a token are reported as diagnostics and skipped.
"""

import re

from pyspinctl.constants import SEVERITY_ERROR, SEVERITY_WARNING, STDIN_ORIGIN

# Token kinds
NUMBER = 'number'
IDENT = 'identifier'
LBRACE = '{'
RBRACE = '}'
LPAREN = '('
RPAREN = ')'
EQUALS = '='
SEMI = ';'
COMMA = ','
SLASH = '/'
COLON = ':'
EOF = 'end of file'

SYMBOLS = {c: c for c in (LBRACE, RBRACE, LPAREN, RPAREN, EQUALS, SEMI,
                          COMMA, SLASH, COLON)}

_NUMBER_RE = re.compile(r'[+-]?[0-9]+(\.[0-9]+)?')
_IDENT_RE = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


class SourceFile:
    """ Text of a sequence file and where it came from. """
    def __init__(self, text, origin=STDIN_ORIGIN):
        self.text = text
        self.origin = origin

    @classmethod
    def fromBytes(cls, data, origin=STDIN_ORIGIN):
        """ Decode UTF-8, invalid bytes become replacement characters
        that the tokenizer reports. """
        return cls(data.decode('utf-8', errors='replace'), origin)

    @classmethod
    def fromPath(cls, path):
        with open(path, 'rb') as f:
            return cls.fromBytes(f.read(), path)


class ParseDiagnostic:
    """ Message at a 1-based line and column of the source. """
    def __init__(self, line, column, message, severity=SEVERITY_ERROR):
        self.line = line
        self.column = column
        self.message = message
        self.severity = severity

    def isError(self):
        return self.severity == SEVERITY_ERROR

    def format(self, origin=STDIN_ORIGIN):
        return '%s:%d:%d: %s: %s' % (origin, self.line, self.column,
                                     self.severity, self.message)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return 'ParseDiagnostic(%d, %d, %r, %r)' % (
            self.line, self.column, self.message, self.severity)


class Token:
    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def describe(self):
        if self.kind == EOF:
            return EOF
        return "'%s'" % self.text

    def __repr__(self):
        return 'Token(%s, %r, %d:%d)' % (self.kind, self.text, self.line,
                                         self.column)


def tokenize(text):
    """ Split text into tokens. Returns (tokens, diagnostics); the list
    always ends with an EOF token placed on the last character. """
    tokens = []
    diagnostics = []
    line, column = 1, 1
    lastLine, lastColumn = 1, 1
    i, n = 0, len(text)

    while i < n:
        c = text[i]
        lastLine, lastColumn = line, column
        if c == '\n':
            i += 1
            line, column = line + 1, 1
            continue
        if c.isspace():
            i += 1
            column += 1
            continue
        if c == '#':
            end = text.find('\n', i)
            end = n if end < 0 else end
            column += end - i - 1
            lastColumn = column
            column += 1
            i = end
            continue

        match = _NUMBER_RE.match(text, i) or _IDENT_RE.match(text, i)
        if match:
            value = match.group(0)
            kind = IDENT if _IDENT_RE.fullmatch(value) else NUMBER
            tokens.append(Token(kind, value, line, column))
            length = len(value)
        elif c in SYMBOLS:
            tokens.append(Token(SYMBOLS[c], c, line, column))
            length = 1
        else:
            diagnostics.append(ParseDiagnostic(
                line, column, "unexpected character %r" % c))
            length = 1
        i += length
        lastColumn = column + length - 1
        column += length

    tokens.append(Token(EOF, '', lastLine, lastColumn))
    return tokens, diagnostics


__all__ = ['SourceFile', 'ParseDiagnostic', 'Token', 'tokenize',
           'SEVERITY_ERROR', 'SEVERITY_WARNING']
