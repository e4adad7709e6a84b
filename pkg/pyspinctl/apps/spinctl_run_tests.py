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
Run or show the pyspinctl tests. Tests can be selected by name, by label
(small, pull) or by words contained in their identifiers.
"""

import argparse
import os
import sys
import unittest

import pyspinctl.tests as pstests
from pyspinctl.utils import cyanStr, redStr

TESTS_PACKAGE = 'pyspinctltests'


class Tester:
    def main(self, args=None):
        parser = argparse.ArgumentParser(prog='spinctl-tests',
                                         description=__doc__)
        add = parser.add_argument  # shortcut
        add('--run', action='store_true', help='run the selected tests')
        add('--pattern', default='test*.py',
            help='pattern for the files that will be used in the tests')
        add('--grep', default=None, nargs='+',
            help='only show/run tests containing the provided words')
        add('--label', default=None, nargs='+',
            help='only show/run test classes with these labels')
        add('tests', metavar='TEST', nargs='*',
            help='test case from string identifier (module, class or '
                 'callable)')
        args = parser.parse_args(args)

        self.grep = [g.lower() for g in args.grep] if args.grep else []
        self.labels = args.label or []

        loader = unittest.defaultTestLoader
        if args.tests:
            suite = unittest.TestSuite()
            for t in args.tests:
                try:
                    suite.addTests(loader.loadTestsFromName(t))
                except Exception as e:
                    print(redStr('Cannot load test %s -- skipping (%s)'
                                 % (t, e)))
            return self.runTests(suite)

        suite = loader.discover(self.getTestsPath(), pattern=args.pattern,
                                top_level_dir=os.path.dirname(
                                    self.getTestsPath()))
        selected = [t for t in self._flatten(suite) if self._match(t)]
        if args.run:
            return self.runTests(unittest.TestSuite(selected))
        self.printTests(selected)
        return 0

    @staticmethod
    def getTestsPath():
        import pyspinctltests
        return os.path.dirname(pyspinctltests.__file__)

    def _flatten(self, suite):
        tests = []
        toCheck = [suite]
        while toCheck:
            test = toCheck.pop(0)
            if isinstance(test, unittest.TestSuite):
                toCheck[0:0] = list(test)
            else:
                tests.append(test)
        return tests

    def _match(self, test):
        testId = test.id().lower()
        grep = all(g in testId for g in self.grep)
        label = not self.labels or pstests.hasLabel(type(test), self.labels)
        return grep and label

    def printTests(self, tests):
        lastClass = None
        for t in tests:
            className = t.id().rsplit('.', 1)[0]
            if className != lastClass:
                print(cyanStr(className))
                lastClass = className
            print('   %s' % t.id())

    def runTests(self, suite):
        result = pstests.GTestResult()
        suite.run(result)
        result.doReport()
        passed = result.numberTests - result.testFailed
        return 1 if result.testFailed > 0 or passed == 0 else 0


def main(args=None):
    return Tester().main(args)


if __name__ == '__main__':
    sys.exit(main())
