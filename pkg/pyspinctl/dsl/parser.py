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
Recursive descent parser of the sequence files:

    file           := system_block sequence_block
    system_block   := "system" "{" kv* "}"
    kv             := ident "=" value ";"
    value          := number unit? | "auto" ":" doublet | ident
    sequence_block := "sequence" "{" stmt* "}"
    stmt           := pulse | delay | "dephase" ";" | sample | grid
    pulse          := "pulse" angle "on" target model? ";"
    angle          := "pi" | "pi/2" | number "deg"
    model          := "ideal" | "finite" "(" "w1" "=" number "MHz" ","
                                          "len" "=" number "ns" ")"
    delay          := "delay" number "ns" ("sample" "every" number "ns")? ";"
    sample         := "sample" ident ";"
    grid           := "grid" "from" number "ns" "step" number "ns"
                      "count" number ";"

An error skips to the next ';' or '}' and parsing goes on, up to
MAX_DIAGNOSTICS messages.
"""

import logging
import math

import numpy as np

from pyspinctl.constants import (TARGETS, DOUBLETS, UNIT_MHZ,
                                 UNIT_NS, UNIT_DEG, OFFSET_MODES,
                                 OFFSET_AUTO_2324, INITIAL_STATES, STATE_BA,
                                 MAX_DIAGNOSTICS, SEVERITY_WARNING)
from pyspinctl.exceptions import ParseException, SpinctlException
from pyspinctl.sequence.events import (PulseSpec, Delay, Dephase, Sample,
                                       Sequence, SamplingGrid)
from pyspinctl.spin.model import SpinParams
from .tokenizer import (tokenize, ParseDiagnostic, SourceFile, NUMBER, IDENT,
                        LBRACE, RBRACE, LPAREN, RPAREN, EQUALS, SEMI, COMMA,
                        SLASH, COLON, EOF)

logger = logging.getLogger(__name__)

# System keys
KEY_OMEGA_I = 'omega_I_MHz'
KEY_A = 'A_MHz'
KEY_B = 'B_MHz'
KEY_OFFSET = 'offset'
KEY_INITIAL = 'initial'
REQUIRED_KEYS = (KEY_OMEGA_I, KEY_A, KEY_B)
SYSTEM_KEYS = REQUIRED_KEYS + (KEY_OFFSET, KEY_INITIAL)


class _SyntaxError(Exception):
    """ Raised inside the parser to unwind to the recovery point. """
    pass


class _TooManyErrors(Exception):
    pass


class Parser:
    """ Parser of one source. Use parse() once. """
    def __init__(self, source):
        self.source = source
        self.tokens, self.diagnostics = tokenize(source.text)
        self.pos = 0
        del self.diagnostics[MAX_DIAGNOSTICS:]

    # ------------------------- token helpers --------------------------
    @property
    def nt(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.nt
        if token.kind != EOF:
            self.pos += 1
        return token

    def peek(self, kind, text=None):
        return self.nt.kind == kind and (text is None or self.nt.text == text)

    def peekKw(self, value):
        return self.peek(IDENT, value)

    def error(self, token, message):
        self.diagnostics.append(ParseDiagnostic(token.line, token.column,
                                                message))
        self._checkLimit()
        raise _SyntaxError(message)

    def warning(self, token, message):
        self.diagnostics.append(ParseDiagnostic(token.line, token.column,
                                                message, SEVERITY_WARNING))

    def _checkLimit(self):
        if len(self.getErrors()) >= MAX_DIAGNOSTICS:
            del self.diagnostics[MAX_DIAGNOSTICS:]
            raise _TooManyErrors()

    def match(self, kind):
        if not self.peek(kind):
            self.error(self.nt, "expected '%s', encountered %s instead"
                       % (kind, self.nt.describe()))
        return self.advance()

    def matchKw(self, value):
        if not self.peekKw(value):
            self.error(self.nt, "expected keyword '%s', encountered %s "
                       "instead" % (value, self.nt.describe()))
        return self.advance()

    def matchNumber(self):
        token = self.match(NUMBER)
        value = float(token.text)
        if not math.isfinite(value):
            self.error(token, "number %s is out of range" % token.text)
        return token, value

    def matchUnit(self, *allowed):
        """ Unit keyword, one of allowed. """
        token = self.nt
        if token.kind != IDENT or token.text not in allowed:
            self.error(token, "expected unit %s, encountered %s instead"
                       % (' or '.join("'%s'" % u for u in allowed),
                          token.describe()))
        return self.advance().text

    def synchronize(self):
        """ Skip to the token after the next ';', or stop before '}'. """
        while not (self.peek(EOF) or self.peek(RBRACE)):
            if self.advance().kind == SEMI:
                return

    def getErrors(self):
        return [d for d in self.diagnostics if d.isError()]

    # ---------------------------- grammar -----------------------------
    def parse(self):
        """ Return (params, sequence, diagnostics), params and sequence
        are None when errors were found. """
        params = sequence = None
        if len(self.getErrors()) >= MAX_DIAGNOSTICS:
            return None, None, self.diagnostics
        try:
            params = self._block('system', self.parseSystemBody)
            sequence = self._block('sequence', self.parseSequenceBody)
            if not self.peek(EOF):
                self.error(self.nt, "expected end of file, encountered %s "
                           "instead" % self.nt.describe())
        except (_SyntaxError, _TooManyErrors):
            pass
        if self.getErrors():
            return None, None, self.diagnostics
        return params, sequence, self.diagnostics

    def _block(self, keyword, bodyFunc):
        self.matchKw(keyword)
        opening = self.match(LBRACE)
        result = bodyFunc(opening)
        self.match(RBRACE)
        return result

    def _statements(self, statementFunc):
        while not (self.peek(RBRACE) or self.peek(EOF)):
            try:
                statementFunc()
            except _SyntaxError:
                self.synchronize()

    def parseSystemBody(self, opening):
        values = {}
        tokens = {}

        def keyValue():
            keyToken = self.match(IDENT)
            key = keyToken.text
            if key not in SYSTEM_KEYS:
                self.error(keyToken, "unknown system key '%s', valid keys "
                           "are: %s" % (key, ', '.join(SYSTEM_KEYS)))
            if key in values:
                self.error(keyToken, "duplicated system key '%s'" % key)
            self.match(EQUALS)
            values[key] = self.parseSystemValue(key)
            tokens[key] = keyToken
            self.match(SEMI)

        self._statements(keyValue)

        missing = [k for k in REQUIRED_KEYS if k not in values]
        if missing:
            self.diagnostics.append(ParseDiagnostic(
                opening.line, opening.column,
                "missing required system keys: %s" % ', '.join(missing)))
            self._checkLimit()
            return None
        if self.getErrors():
            return None
        try:
            return SpinParams.fromMHz(
                values[KEY_OMEGA_I], values[KEY_A], values[KEY_B],
                offset=values.get(KEY_OFFSET, OFFSET_AUTO_2324),
                initial=values.get(KEY_INITIAL, STATE_BA))
        except (SpinctlException, ArithmeticError, ValueError,
                np.linalg.LinAlgError) as e:
            self.diagnostics.append(ParseDiagnostic(
                opening.line, opening.column, "invalid system: %s" % e))
            self._checkLimit()
            return None

    def parseSystemValue(self, key):
        token = self.nt
        if key == KEY_INITIAL:
            value = self.match(IDENT).text
            if value not in INITIAL_STATES:
                self.error(token, "unknown initial state '%s', valid states "
                           "are: %s" % (value, ', '.join(INITIAL_STATES)))
            return value
        if key == KEY_OFFSET and self.peekKw('auto'):
            self.advance()
            self.match(COLON)
            doubletToken = self.match(NUMBER)
            mode = 'auto:%s' % doubletToken.text
            if mode not in OFFSET_MODES:
                self.error(doubletToken, "unknown offset mode '%s', valid "
                           "modes are: %s" % (mode, ', '.join(OFFSET_MODES)))
            return mode
        _, value = self.matchNumber()
        if self.peek(IDENT):
            self.matchUnit(UNIT_MHZ)
        return value

    def parseSequenceBody(self, opening):
        events = []
        grids = []

        def statement():
            token = self.nt
            if self.peekKw('pulse'):
                events.append(self.parsePulse())
            elif self.peekKw('delay'):
                events.append(self.parseDelay())
            elif self.peekKw('dephase'):
                self.advance()
                self.match(SEMI)
                events.append(Dephase())
            elif self.peekKw('sample'):
                self.advance()
                label = self.match(IDENT).text
                self.match(SEMI)
                events.append(Sample(label))
            elif self.peekKw('grid'):
                if grids:
                    self.error(token, "only one sampling grid is allowed")
                grids.append(self.parseGrid())
            else:
                self.error(token, "expected a statement (pulse, delay, "
                           "dephase, sample, grid), encountered %s instead"
                           % token.describe())

        self._statements(statement)

        if not events and not self.getErrors():
            self.diagnostics.append(ParseDiagnostic(
                opening.line, opening.column,
                "sequence should have at least one event"))
            self._checkLimit()
        sequence = Sequence(events, grids[0] if grids else None)
        if not self.getErrors():
            for message in sequence.validate():
                self.diagnostics.append(ParseDiagnostic(
                    opening.line, opening.column, message))
                self._checkLimit()
        return sequence

    def parseAngle(self):
        """ Angle in degrees. """
        token = self.nt
        if self.peekKw('pi'):
            self.advance()
            if self.peek(SLASH):
                self.advance()
                two = self.match(NUMBER)
                if two.text != '2':
                    self.error(two, "only pi and pi/2 are allowed, use "
                               "'<number> deg' for other angles")
                return 90.0
            return 180.0
        if self.peek(NUMBER):
            _, value = self.matchNumber()
            self.matchUnit(UNIT_DEG)
            return value
        self.error(token, "expected pulse angle (pi, pi/2 or <number> deg), "
                   "encountered %s instead" % token.describe())

    def parsePulse(self):
        self.matchKw('pulse')
        angle = self.parseAngle()
        self.matchKw('on')
        targetToken = self.nt
        if not (self.peek(NUMBER) and self.nt.text in TARGETS):
            self.error(targetToken, "expected pulse target (%s), encountered "
                       "%s instead" % (', '.join(TARGETS),
                                       targetToken.describe()))
        target = self.advance().text

        pulse = PulseSpec.ideal(target, angle)
        if self.peekKw('ideal'):
            self.advance()
        elif self.peekKw('finite'):
            modelToken = self.advance()
            if target not in DOUBLETS:
                self.error(modelToken, "finite pulses drive a doublet (%s), "
                           "not the single transition %s"
                           % (', '.join(DOUBLETS), target))
            self.match(LPAREN)
            self.matchKw('w1')
            self.match(EQUALS)
            _, w1 = self.matchNumber()
            self.matchUnit(UNIT_MHZ)
            self.match(COMMA)
            self.matchKw('len')
            self.match(EQUALS)
            lengthToken, length = self.matchNumber()
            self.matchUnit(UNIT_NS)
            self.match(RPAREN)
            if length <= 0:
                self.error(lengthToken, "finite pulse length should be "
                           "positive")
            pulse = PulseSpec.finite(target, angle, w1, length)
        self.match(SEMI)
        return pulse

    def parseDelay(self):
        self.matchKw('delay')
        durationToken, duration = self.matchNumber()
        self.matchUnit(UNIT_NS)
        if duration < 0:
            self.error(durationToken, "delay should not be negative")
        every = None
        if self.peekKw('sample'):
            self.advance()
            self.matchKw('every')
            everyToken, every = self.matchNumber()
            self.matchUnit(UNIT_NS)
            if every <= 0:
                self.error(everyToken, "sampling step should be positive")
            if every > duration:
                self.warning(everyToken, "sampling step is longer than the "
                             "delay, only its start is sampled")
        self.match(SEMI)
        return Delay(duration, every)

    def parseGrid(self):
        self.matchKw('grid')
        self.matchKw('from')
        startToken, start = self.matchNumber()
        self.matchUnit(UNIT_NS)
        self.matchKw('step')
        stepToken, step = self.matchNumber()
        self.matchUnit(UNIT_NS)
        self.matchKw('count')
        countToken, count = self.matchNumber()
        self.match(SEMI)
        if start < 0:
            self.error(startToken, "grid start should not be negative")
        if step <= 0:
            self.error(stepToken, "grid step should be positive")
        if count < 1 or count != int(count):
            self.error(countToken, "grid count should be a positive integer")
        return SamplingGrid(start, step, int(count))


def collectDiagnostics(source):
    """ Parse and return only the diagnostics. """
    return Parser(source).parse()[2]


def parseSource(source):
    """ Parse a SourceFile (or text) into (SpinParams, Sequence).
    Raise ParseException holding the diagnostics on errors. """
    if isinstance(source, str):
        source = SourceFile(source)
    params, sequence, diagnostics = Parser(source).parse()
    for d in diagnostics:
        if not d.isError():
            logger.warning(d.format(source.origin))
    if params is None or sequence is None:
        raise ParseException([d for d in diagnostics if d.isError()],
                             source.origin)
    return params, sequence
