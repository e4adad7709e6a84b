#!/usr/bin/env python

import math
import unittest

import numpy as np

from pyspinctl.constants import (EXIT_INPUT_ERROR, MAX_DIAGNOSTICS,
                                 SEVERITY_WARNING, STDIN_ORIGIN, TARGETS,
                                 DOUBLETS, INITIAL_STATES, OFFSET_MODES)
from pyspinctl.dsl import (SourceFile, ParseDiagnostic, parseSource,
                           collectDiagnostics, formatSource)
from pyspinctl.dsl.tokenizer import tokenize, NUMBER, IDENT, SEMI, EOF
from pyspinctl.exceptions import ParseException
from pyspinctl.sequence import PulseSpec, Delay, Dephase, Sample, SamplingGrid
from pyspinctl.tests import BaseTest, SMALL, PULL_REQUEST
from pyspinctl.utils import formatNumber

CANONICAL = """system {
  omega_I_MHz = -14.728;
  A_MHz = -29.271;
  B_MHz = 3.655;
  offset = auto:2324;
  initial = ba;
}
sequence {
  pulse pi on 2324;
  delay 100 ns sample every 10 ns;
  dephase;
  pulse 45 deg on 24;
  pulse pi/2 on 1314 finite(w1=15.6 MHz, len=16 ns);
  sample echo;
  delay 50 ns;
  grid from 0 ns step 5 ns count 3;
}
"""

SYSTEM = """system {
  omega_I_MHz = -14.728;
  A_MHz = -29.271;
  B_MHz = 3.655;
}
"""


def withSequence(*statements):
    return SYSTEM + 'sequence {\n%s\n}\n' % '\n'.join(
        '  ' + s for s in statements)


def randomNumber(rng, low, high):
    """ Canonical text of a value with at most three decimals. """
    return formatNumber(round(float(rng.uniform(low, high)), 3))


def randomStatement(rng):
    """ Return (text, duration in ns) of a random valid statement. """
    kind = rng.integers(5)
    if kind == 0:
        angle = rng.choice(['pi', 'pi/2',
                            '%s deg' % randomNumber(rng, -360, 360)])
        return 'pulse %s on %s;' % (angle, rng.choice(TARGETS)), 0.0
    if kind == 1:
        length = randomNumber(rng, 1, 64)
        text = 'pulse %s on %s finite(w1=%s MHz, len=%s ns);' % (
            rng.choice(['pi', 'pi/2']), rng.choice(DOUBLETS),
            randomNumber(rng, 1, 30), length)
        return text, float(length)
    if kind == 2:
        duration = randomNumber(rng, 0, 1000)
        text = 'delay %s ns' % duration
        if float(duration) >= 1 and rng.random() < 0.5:
            text += ' sample every %s ns' % randomNumber(rng, 0.5,
                                                        float(duration))
        return text + ';', float(duration)
    if kind == 3:
        return 'dephase;', 0.0
    return 'sample %s;' % rng.choice(['echo', 'fid', 'end', 's1']), 0.0


def randomSource(rng):
    """ Text of a valid file with random values and statements. """
    lines = ['system {',
             'omega_I_MHz = %s;' % randomNumber(rng, -40, -1),
             'A_MHz = %s MHz;' % randomNumber(rng, -80, 80),
             'B_MHz = %s;' % randomNumber(rng, 0.1, 12)]
    if rng.random() < 0.5:
        lines.append('offset = %s;' % rng.choice(
            list(OFFSET_MODES) + [randomNumber(rng, -50, 50)]))
    if rng.random() < 0.5:
        lines.append('initial = %s;' % rng.choice(INITIAL_STATES))
    lines += ['}', 'sequence {']
    total = 0.0
    for _ in range(rng.integers(1, 12)):
        text, duration = randomStatement(rng)
        lines.append(text)
        total += duration
    count = int(rng.integers(1, 6))
    step = math.floor(total / count * 1000) / 1000
    if step > 0 and rng.random() < 0.3:
        lines.append('grid from 0 ns step %s ns count %d;'
                     % (formatNumber(step), count))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def mutate(rng, data):
    """ Delete, insert or overwrite a few random bytes. """
    data = bytearray(data)
    for _ in range(rng.integers(1, 6)):
        pos = int(rng.integers(0, len(data) + 1))
        op = rng.integers(3)
        if op == 0 and pos < len(data):
            del data[pos]
        elif op == 1 or pos == len(data):
            data.insert(pos, int(rng.integers(0, 256)))
        else:
            data[pos] = int(rng.integers(0, 256))
    return bytes(data)


class TestTokenizer(BaseTest):
    _labels = [SMALL]

    def test_positions(self):
        tokens, diagnostics = tokenize('  delay 100;\n# note\nx')
        self.assertEqual(diagnostics, [])
        kinds = [t.kind for t in tokens]
        self.assertEqual(kinds, [IDENT, NUMBER, SEMI, IDENT, EOF])
        self.assertEqual((tokens[1].line, tokens[1].column), (1, 9))
        self.assertEqual((tokens[2].line, tokens[2].column), (1, 12))
        self.assertEqual((tokens[3].line, tokens[3].column), (3, 1))

    def test_signedNumbers(self):
        tokens, _ = tokenize('-14.728 +3 w1')
        self.assertEqual([(t.kind, t.text) for t in tokens[:3]],
                         [(NUMBER, '-14.728'), (NUMBER, '+3'), (IDENT, 'w1')])

    def test_badCharacter(self):
        tokens, diagnostics = tokenize('delay @ 5')
        self.assertEqual(len(diagnostics), 1)
        self.assertEqual((diagnostics[0].line, diagnostics[0].column), (1, 7))
        self.assertIn("'@'", diagnostics[0].message)
        self.assertEqual(len(tokens), 3)

    def test_diagnosticFormat(self):
        d = ParseDiagnostic(3, 13, 'boom')
        self.assertEqual(str(d), '%s:3:13: error: boom' % STDIN_ORIGIN)
        self.assertEqual(d.format('a.seq'), 'a.seq:3:13: error: boom')
        self.assertTrue(d.isError())
        self.assertFalse(ParseDiagnostic(1, 1, 'w', SEVERITY_WARNING).isError())


class TestParser(BaseTest):
    _labels = [SMALL]

    def assertParseError(self, text, fragment, line=None):
        with self.assertRaises(ParseException) as ctx:
            parseSource(text)
        diagnostics = ctx.exception.getDiagnostics()
        matching = [d for d in diagnostics if fragment in d.message]
        self.assertTrue(matching, "No diagnostic with '%s' in %s"
                        % (fragment, [d.message for d in diagnostics]))
        if line is not None:
            self.assertEqual(matching[0].line, line)
        return diagnostics

    def test_canonical(self):
        params, sequence = parseSource(CANONICAL)
        self.assertAlmostEqual(params.toMHz()['A_MHz'], -29.271)
        self.assertEqual(params.getInitial(), 'ba')
        self.assertEqual(sequence.events, [
            PulseSpec.ideal('2324', 180),
            Delay(100, 10),
            Dephase(),
            PulseSpec.ideal('24', 45),
            PulseSpec.finite('1314', 90, 15.6, 16),
            Sample('echo'),
            Delay(50)])
        self.assertEqual(sequence.sampling, SamplingGrid(0, 5, 3))

    def test_formatCanonical(self):
        params, sequence = parseSource(CANONICAL)
        self.assertEqual(formatSource(params, sequence), CANONICAL)

    def test_formatNormalizes(self):
        messy = ("# header comment\nsystem{omega_I_MHz=-14.728 MHz;"
                 "A_MHz = -29.271;B_MHz = 3.655;}\n"
                 "sequence {\n\tpulse pi on 2324 ideal;   delay 100.0 ns;\n}")
        params, sequence = parseSource(messy)
        text = formatSource(params, sequence)
        self.assertTrue(text.endswith('}\n'))
        self.assertIn('  pulse pi on 2324;\n  delay 100 ns;\n', text)
        self.assertIn('  offset = auto:2324;\n  initial = ba;\n', text)
        params2, sequence2 = parseSource(text)
        self.assertEqual(params2, params)
        self.assertEqual(sequence2, sequence)
        self.assertEqual(formatSource(params2, sequence2), text)

    def test_missingUnit(self):
        diagnostics = self.assertParseError(withSequence('delay 100;'),
                                            "expected unit 'ns'", line=7)
        self.assertEqual(diagnostics[0].message,
                         "expected unit 'ns', encountered ';' instead")
        self.assertEqual(diagnostics[0].column, 12)

    def test_unknownKey(self):
        text = SYSTEM.replace('B_MHz', 'C_MHz') + 'sequence {\n dephase;\n}\n'
        diagnostics = self.assertParseError(text, "unknown system key 'C_MHz'",
                                            line=4)
        self.assertTrue(any('missing required system keys: B_MHz' in d.message
                            for d in diagnostics))

    def test_missingKeys(self):
        self.assertParseError('system {\n}\nsequence {\n dephase;\n}\n',
                              'missing required system keys: omega_I_MHz, '
                              'A_MHz, B_MHz', line=1)

    def test_recovery(self):
        text = withSequence('delay 100;', 'dephase;', 'pulse pi on 99;',
                            'delay 5 ns;')
        diagnostics = self.assertParseError(text, 'expected pulse target')
        self.assertEqual([d.line for d in diagnostics], [7, 9])

    def test_maxDiagnostics(self):
        text = withSequence(*(['bogus;'] * 30))
        with self.assertRaises(ParseException) as ctx:
            parseSource(text)
        self.assertEqual(len(ctx.exception.getDiagnostics()), MAX_DIAGNOSTICS)

        text = withSequence(*(['@'] * 30))
        diagnostics = collectDiagnostics(SourceFile(text))
        self.assertEqual(len(diagnostics), MAX_DIAGNOSTICS)

    def test_badCharacter(self):
        self.assertParseError(withSequence('dephase; @'),
                              "unexpected character '@'", line=7)

    def test_invalidUtf8(self):
        source = SourceFile.fromBytes(SYSTEM.encode() + b'sequence {\xff}',
                                      'bad.seq')
        with self.assertRaises(ParseException) as ctx:
            parseSource(source)
        self.assertEqual(ctx.exception.getOrigin(), 'bad.seq')
        self.assertIn('unexpected character',
                      ctx.exception.getDiagnostics()[0].message)

    def test_finiteOnTransition(self):
        self.assertParseError(
            withSequence('pulse pi on 24 finite(w1=15.6 MHz, len=16 ns);'),
            'finite pulses drive a doublet')

    def test_angles(self):
        self.assertParseError(withSequence('pulse pi/3 on 24;'),
                              'only pi and pi/2 are allowed')
        self.assertParseError(withSequence('pulse 45 on 24;'),
                              "expected unit 'deg'")
        _, sequence = parseSource(withSequence('pulse 45 deg on 24;',
                                               'pulse pi/2 on 12;'))
        self.assertEqual(sequence.events[0].angleDeg, 45.0)
        self.assertEqual(sequence.events[1].angleDeg, 90.0)

    def test_grid(self):
        self.assertParseError(
            withSequence('delay 10 ns;', 'grid from 0 ns step 5 ns count 4;'),
            'sampling grid ends after the sequence')
        self.assertParseError(
            withSequence('delay 10 ns;', 'grid from 0 ns step 5 ns count 2;',
                         'grid from 0 ns step 5 ns count 2;'),
            'only one sampling grid is allowed')

    def test_samplingWarning(self):
        text = withSequence('delay 5 ns sample every 10 ns;')
        with self.assertLogs('pyspinctl.dsl.parser', 'WARNING') as logs:
            _, sequence = parseSource(text)
        self.assertIn('sampling step is longer than the delay',
                      logs.output[0])
        self.assertEqual(sequence.events[0], Delay(5, 10))
        diagnostics = collectDiagnostics(SourceFile(text))
        self.assertEqual([d.severity for d in diagnostics], [SEVERITY_WARNING])

    def test_exitCode(self):
        with self.assertRaises(ParseException) as ctx:
            parseSource('')
        self.assertEqual(ctx.exception.getExitCode(), EXIT_INPUT_ERROR)
        self.assertIn("expected keyword 'system'", str(ctx.exception))


class TestRandomSources(BaseTest):
    _labels = [PULL_REQUEST]

    def test_roundTrip(self):
        # parse, format and parse again gives the same system and sequence
        rng = np.random.default_rng(3001)
        for _ in range(500):
            text = randomSource(rng)
            params, sequence = parseSource(text)
            canonical = formatSource(params, sequence)
            params2, sequence2 = parseSource(canonical)
            self.assertEqual(params2, params, text)
            self.assertEqual(sequence2, sequence, text)
            self.assertEqual(formatSource(params2, sequence2), canonical)

    def test_arbitraryBytes(self):
        # Any input either parses or fails with bounded diagnostics
        rng = np.random.default_rng(3002)
        valid = CANONICAL.encode('utf-8')
        for i in range(1000):
            if i % 2:
                size = int(rng.integers(0, 200))
                data = rng.integers(0, 256, size=size, dtype=np.uint8).tobytes()
            else:
                data = mutate(rng, valid)
            source = SourceFile.fromBytes(data, 'fuzz.seq')
            try:
                parseSource(source)
            except ParseException as e:
                diagnostics = e.getDiagnostics()
                self.assertTrue(diagnostics)
                self.assertLessEqual(len(diagnostics), MAX_DIAGNOSTICS)
                self.assertEqual(e.getOrigin(), 'fuzz.seq')
                for d in diagnostics:
                    self.assertTrue(d.isError())
                    self.assertGreaterEqual(d.line, 1)
                    self.assertGreaterEqual(d.column, 1)


if __name__ == '__main__':
    unittest.main()
