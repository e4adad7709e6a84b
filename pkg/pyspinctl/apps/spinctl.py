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
Simulate microwave only control sequences of an electron-nuclear spin
pair, compute ESEEM spectra and scan orientations for exact cancellation.

Exit codes: 0 success, 2 input or parse error, 3 engine error.
"""

import argparse
import json
import logging
import sys

import numpy as np

from pyspinctl import Config, __version__
from pyspinctl.constants import (EXIT_OK, EXIT_ENGINE_ERROR, STATE_THERMAL,
                                 OBSERVABLES, OBS_SX, BASELINE_MODELS,
                                 BASELINE_BIEXP, ESEEM_TAU_NS, ESEEM_DT_NS,
                                 ESEEM_N, ESEEM_T_START_NS, STDIN_ORIGIN,
                                 WINDOW_SIGMA_FRACTION, ESEEM_PULSES_FINITE,
                                 ESEEM_PULSES_IDEAL)
from pyspinctl.dsl import SourceFile, parseSource, formatSource
from pyspinctl.exceptions import (SpinctlException, ParseException,
                                  ValidationException, ConfigException)
from pyspinctl.manifest import RunManifest
from pyspinctl.sequence import run, eseem3Pulse, blindSpots
from pyspinctl.sigproc import (RealTrace, fitBaseline, apodize, spectrum,
                               peakPick)
from pyspinctl.spin import sigmaState, thermalState
from pyspinctl.spin.model import (derive, ScanGrid, cancellationScan,
                                  protonOmegaI)
from pyspinctl.systemconf import SystemConfig
from pyspinctl.utils import (getLogConfiguration, removeExt, writeCsv,
                             writeText, redStr, yellowStr)

logger = logging.getLogger(__name__)

SCAN_HEADER = ('dir_x', 'dir_y', 'dir_z', 'B0_mT', 'mismatch_MHz',
               'sin_eta_beta')


class Spinctl:
    """ Command line driver, one method per sub command. """
    def main(self, args=None):
        parser = self.getParser()
        try:
            args = parser.parse_args(args)
        except SystemExit as e:
            return e.code
        if args.command is None:
            parser.print_help(sys.stderr)
            return 2

        getLogConfiguration()
        if args.tolerance is not None:
            Config.setTolerance(args.tolerance)

        try:
            return getattr(self, args.command)(args)
        except ParseException as e:
            for d in e.getDiagnostics():
                sys.stderr.write(redStr(d.format(e.getOrigin()),
                                        sys.stderr) + '\n')
            return e.getExitCode()
        except SpinctlException as e:
            logger.error(str(e))
            sys.stderr.write(redStr('ERROR: %s' % e, sys.stderr) + '\n')
            return e.getExitCode()
        except Exception as e:
            if Config.debugOn():
                raise
            logger.exception("Unexpected error")
            sys.stderr.write(redStr('ERROR: %s' % e, sys.stderr) + '\n')
            return EXIT_ENGINE_ERROR

    def getParser(self):
        common = argparse.ArgumentParser(add_help=False)
        add = common.add_argument  # shortcut
        add('--out', default=None,
            help='output file (simulate, scan) or prefix (eseem)')
        add('--seed', type=int, default=None,
            help='seed of the baseline fit random restarts')
        add('--tolerance', type=float, default=None,
            help='numerical equivalence tolerance')
        add('--plot', action='store_true',
            help='also write PNG figures of the outputs')

        parser = argparse.ArgumentParser(prog='spinctl', description=__doc__)
        parser.add_argument('--version', action='version',
                            version='%(prog)s ' + __version__)
        sub = parser.add_subparsers(dest='command')

        p = sub.add_parser('simulate', parents=[common],
                           help='run a sequence file, write its trace')
        p.add_argument('path', help="sequence file, '-' for standard input")
        p.add_argument('--observables', nargs='+', default=None,
                       help='trace columns to write: %s'
                       % ', '.join(OBSERVABLES))

        p = sub.add_parser('eseem', parents=[common],
                           help='three pulse ESEEM trace and spectrum')
        add = p.add_argument
        add('config', help='system configuration file')
        add('--tau', type=float, default=ESEEM_TAU_NS, help='tau (ns)')
        add('--dt', type=float, default=ESEEM_DT_NS, help='T step (ns)')
        add('-n', type=int, default=ESEEM_N, help='number of T values')
        add('--t-start', type=float, default=ESEEM_T_START_NS,
            help='first T (ns)')
        add('--pulses', choices=[ESEEM_PULSES_FINITE, ESEEM_PULSES_IDEAL],
            default=None, help='pulse model, overrides the configuration')
        add('--baseline', choices=BASELINE_MODELS, default=BASELINE_BIEXP,
            help='baseline model')
        add('--no-apodize', action='store_true',
            help='skip the Gaussian window')
        add('--window', type=float, default=WINDOW_SIGMA_FRACTION,
            help='Gaussian window width as a fraction of the trace')
        add('--threshold', type=float, default=0.1,
            help='peak threshold as a fraction of the largest magnitude')

        p = sub.add_parser('scan', parents=[common],
                           help='search orientations for exact cancellation')
        add = p.add_argument
        add('config', help='configuration file with a [tensor] section')
        add('--step', type=float, default=None,
            help='sphere grid step (deg)')
        add('--B0', type=float, nargs='+', default=None,
            help='static fields (mT)')
        add('--threads', type=int, default=None,
            help='worker threads, default SPINCTL_SCAN_THREADS')

        p = sub.add_parser('validate', parents=[common],
                           help='check a sequence file, print it canonical')
        p.add_argument('path', help="sequence file, '-' for standard input")

        sub.add_parser('config', parents=[common],
                       help='print the configuration variables')
        return parser

    # ------------------------------------------------------------------
    def _readSource(self, path):
        if path == '-':
            return SourceFile.fromBytes(sys.stdin.buffer.read(), STDIN_ORIGIN)
        try:
            return SourceFile.fromPath(path)
        except OSError as e:
            raise ValidationException("Cannot read sequence file %s: %s"
                                      % (path, e.strerror or e))

    def _outputBase(self, args, inputPath, default):
        if args.out:
            return args.out
        if inputPath in (None, '-'):
            return default
        return removeExt(inputPath)

    def simulate(self, args):
        params, sequence = parseSource(self._readSource(args.path))
        columns = list(OBSERVABLES)
        if args.observables:
            columns = [c for item in args.observables
                       for c in item.split(',') if c]
            unknown = [c for c in columns if c not in OBSERVABLES]
            if unknown:
                raise ValidationException("Unknown observables: %s (valid: "
                                          "%s)" % (', '.join(unknown),
                                                   ', '.join(OBSERVABLES)))

        initial = params.getInitial()
        rho0 = thermalState() if initial == STATE_THERMAL \
            else sigmaState(initial)
        _, trace = run(rho0, params, sequence)

        out = args.out or self._outputBase(args, args.path, 'trace') + '.csv'
        writeCsv(out, ('time_ns',) + tuple(columns),
                 zip(trace.times, *[trace.getColumn(c) for c in columns]))

        manifest = RunManifest('simulate', [args.path])
        manifest.addOutput(out)
        manifest.setParams(**params.toMHz())
        manifest.extra['derived'] = derive(params).toDict()
        manifest.setFlags(observables=columns, initial=initial,
                          tolerance=Config.getNumericTolerance())
        if args.plot:
            from pyspinctl.gui import plotTrace
            png = removeExt(out) + '.png'
            plotTrace(trace, png, columns)
            manifest.addOutput(png)
        manifest.write(removeExt(out) + '.manifest.json')
        logger.info("simulate: %d samples written to %s", len(trace), out)
        return EXIT_OK

    def eseem(self, args):
        conf = SystemConfig.load(args.config)
        params = conf.requireParams()
        pulses = args.pulses or conf.pulses
        prefix = self._outputBase(args, args.config, 'eseem')

        report = blindSpots(params, args.tau)
        for freq, factor in report.getSuppressed():
            sys.stderr.write(yellowStr(
                'WARNING: %.4g MHz line near a blind spot (factor %.3g)'
                % (freq, factor), sys.stderr) + '\n')

        raw = RealTrace.fromTrace(
            eseem3Pulse(params, args.tau, args.t_start, args.dt, args.n,
                        pulses=pulses, w1MHz=conf.w1MHz,
                        pi2LenNs=conf.pi2LenNs), OBS_SX)
        fit = fitBaseline(raw, args.baseline, args.seed)
        processed = raw.withSamples(raw.samples - fit.curve)
        if not args.no_apodize:
            processed = apodize(processed, args.window)
        spec = spectrum(processed)
        peaks = peakPick(spec, args.threshold)

        manifest = RunManifest('eseem', [args.config])
        raw.writeCsv(manifest.addOutput(prefix + '_raw.csv'))
        processed.writeCsv(manifest.addOutput(prefix + '_processed.csv'))
        spec.writeCsv(manifest.addOutput(prefix + '_spectrum.csv'))
        peaksJson = json.dumps([{'freq_MHz': f, 'magnitude': m}
                                for f, m in peaks], indent=2) + '\n'
        writeText(manifest.addOutput(prefix + '_peaks.json'), peaksJson)
        if args.plot:
            from pyspinctl.gui import plotSpectrum
            plotSpectrum(spec, manifest.addOutput(prefix + '_spectrum.png'),
                         peaks)

        manifest.setParams(**params.toMHz())
        manifest.extra['derived'] = derive(params).toDict()
        manifest.extra['baseline'] = fit.toDict()
        manifest.extra['blind_spots'] = report.toDict()
        manifest.setFlags(tau_ns=args.tau, dt_ns=args.dt, n=args.n,
                          t_start_ns=args.t_start, pulses=pulses,
                          w1_MHz=conf.w1MHz, pi2_len_ns=conf.pi2LenNs,
                          baseline=args.baseline,
                          apodize=not args.no_apodize, window=args.window,
                          threshold=args.threshold, seed=args.seed,
                          n_fft=spec.nFft, df_MHz=spec.df)
        manifest.write(prefix + '.manifest.json')
        logger.info("eseem: %d peaks written to %s_peaks.json", len(peaks),
                    prefix)
        return EXIT_OK

    def scan(self, args):
        conf = SystemConfig.load(args.config)
        tensor = conf.requireTensor()
        fields = args.B0 if args.B0 is not None else conf.fieldsMT
        if not fields:
            raise ConfigException("%s: no static fields, set B0_mT in [scan] "
                                  "or use --B0" % args.config)
        fieldsT = [b * 1e-3 for b in fields]
        step = args.step if args.step is not None else conf.stepDeg
        if conf.directions is not None and args.step is None:
            grid = ScanGrid(conf.directions, fieldsT)
        else:
            grid = ScanGrid.sphere(step, fieldsT)

        rows = cancellationScan(tensor, protonOmegaI(conf.gamma), grid,
                                nThreads=args.threads)
        out = args.out or self._outputBase(args, args.config, 'scan') \
            + '_scan.csv'
        writeCsv(out, SCAN_HEADER,
                 ([float(r.direction[0]), float(r.direction[1]),
                   float(r.direction[2]), r.B0 * 1e3, r.getMismatchMHz(),
                   float(r.sinEtaBeta)] for r in rows))

        manifest = RunManifest('scan', [args.config])
        manifest.addOutput(out)
        manifest.setParams(principal_MHz=tensor.principalValues,
                           euler_deg=np.degrees(tensor.eulerAngles),
                           gamma_MHz_per_T=conf.gamma, B0_mT=list(fields))
        manifest.setFlags(step_deg=None if conf.directions is not None
                          and args.step is None else step,
                          points=len(grid))
        if rows:
            best = rows[0]
            manifest.extra['best'] = {
                'direction': best.direction, 'B0_mT': best.B0 * 1e3,
                'A_MHz': best.A, 'B_MHz': best.B,
                'mismatch_MHz': best.getMismatchMHz()}
        manifest.write(removeExt(out) + '.manifest.json')
        return EXIT_OK

    def validate(self, args):
        params, sequence = parseSource(self._readSource(args.path))
        sys.stdout.write(formatSource(params, sequence))
        return EXIT_OK

    def config(self, args):
        Config.printVars()
        return EXIT_OK


def main(args=None):
    return Spinctl().main(args)


if __name__ == '__main__':
    sys.exit(main())
