#!/usr/bin/env python

import math
import unittest

import numpy as np

from pyspinctl.exceptions import ValidationException, EngineException
from pyspinctl.spin.model import (SpinParams, derive, buildHamiltonian,
                                  diagonalizer, toEigenbasis, fromEigenbasis,
                                  eigenEnergies, resonanceOffset, mhzToRad,
                                  radToMhz, HyperfineTensor,
                                  hyperfineFromOrientation, protonOmegaI,
                                  ScanGrid, cancellationScan)
from pyspinctl.tests import (BaseTest, SMALL, experimentParams,
                             cancellationParams, weakCouplingParams)


def strongCouplingParams():
    return SpinParams(0.0, mhzToRad(-5.0), mhzToRad(25.0), mhzToRad(4.0))


class TestSpinParams(BaseTest):
    _labels = [SMALL]

    def test_units(self):
        self.assertAlmostEqual(mhzToRad(1.0), 2 * math.pi * 1e-3)
        self.assertAlmostEqual(radToMhz(mhzToRad(14.728)), 14.728)

    def test_fromMHz(self):
        p = SpinParams.fromMHz(-14.728, -29.271, 3.655, offset=1.5)
        self.assertAlmostEqual(p.omegaS, mhzToRad(1.5))
        self.assertAlmostEqual(p.omegaI, mhzToRad(-14.728))
        self.assertEqual(p.getSource()['A_MHz'], -29.271)
        self.assertEqual(p.getInitial(), 'ba')
        mhz = p.toMHz()
        self.assertAlmostEqual(mhz['B_MHz'], 3.655)
        self.assertAlmostEqual(mhz['OmegaS_MHz'], 1.5)

    def test_negativeB(self):
        p = SpinParams(0.0, -1.0, 0.5, -0.2)
        self.assertEqual(p.B, 0.2)
        self.assertTrue(p.bSignFlipped())
        self.assertFalse(SpinParams(0.0, -1.0, 0.5, 0.2).bSignFlipped())

    def test_invalid(self):
        with self.assertRaises(ValidationException):
            SpinParams(0.0, math.nan, 1.0, 1.0)
        with self.assertRaises(ValidationException):
            SpinParams(0.0, 1.0, math.inf, 1.0)
        with self.assertRaises(ValidationException):
            SpinParams.fromMHz(-14.0, -28.0, 1.0, offset='auto:9999')
        with self.assertRaises(ValidationException):
            experimentParams().withInitial('up')

    def test_equality(self):
        self.assertEqual(experimentParams(), experimentParams())
        self.assertEqual(hash(experimentParams()), hash(experimentParams()))
        self.assertNotEqual(experimentParams(),
                            experimentParams().withInitial('thermal'))
        self.assertNotEqual(experimentParams(), cancellationParams())

    def test_couplingRegime(self):
        self.assertTrue(weakCouplingParams().isWeakCoupling())
        self.assertFalse(strongCouplingParams().isWeakCoupling())


class TestDiagonalization(BaseTest):
    _labels = [SMALL]

    ALL_PARAMS = (experimentParams, cancellationParams, weakCouplingParams,
                  strongCouplingParams)

    def test_diagonalizer(self):
        for paramsFunc in self.ALL_PARAMS:
            p = paramsFunc()
            U = diagonalizer(p)
            self.assertUnitary(U, 1e-12)
            Hd = toEigenbasis(buildHamiltonian(p), p)
            offDiagonal = Hd - np.diag(np.diag(Hd))
            self.assertLess(np.max(np.abs(offDiagonal)), 1e-12,
                            'H0 not diagonal for %s' % p)
            self.assertMatrixAlmostEqual(fromEigenbasis(Hd, p),
                                         buildHamiltonian(p), 1e-12)

    def test_levelOrdering(self):
        # E1 - E2 = omega12 and E3 - E4 = omega34, both negative
        for paramsFunc in self.ALL_PARAMS:
            p = paramsFunc()
            d = derive(p)
            E = eigenEnergies(p)
            self.assertAlmostEqual(E[0] - E[1], d.omega12, places=12)
            self.assertAlmostEqual(E[2] - E[3], d.omega34, places=12)
            self.assertLessEqual(d.omega12, 0)
            self.assertLessEqual(d.omega34, 0)

    def test_cancellation(self):
        d = derive(cancellationParams())
        self.assertEqual(d.cancellationMismatch, 0.0)
        self.assertAlmostEqual(d.etaBeta, -math.pi / 2)
        self.assertAlmostEqual(d.sinEtaBeta, -1.0)
        self.assertFalse(d.degenerate)
        # Nutation at |omega34| = B/2
        self.assertAlmostEqual(d.omega34, -mhzToRad(3.655) / 2)
        self.assertAlmostEqual(d.getPeriod34(), 2 / 3.655 * 1e3, places=6)

    def test_degeneratePoint(self):
        w = mhzToRad(-14.728)
        p = SpinParams(0.0, w, 2 * w, 0.0)
        d = derive(p)
        self.assertTrue(d.degenerate)
        self.assertEqual(d.etaBeta, 0.0)
        self.assertEqual(d.getPeriod34(), math.inf)
        self.assertMatrixAlmostEqual(diagonalizer(p), np.eye(4))

    def test_smallMixing(self):
        # Far from cancellation the beta manifold is barely mixed
        d = derive(weakCouplingParams())
        self.assertLess(abs(d.sinEtaBeta), 0.2)
        self.assertIn('eta_deg', d.toDict())

    def test_resonanceOffset(self):
        w = mhzToRad(-14.728)
        p = SpinParams(0.0, w, 2 * w, 0.0)
        self.assertAlmostEqual(resonanceOffset(p, '2324'), w, places=12)

        for paramsFunc in (experimentParams, cancellationParams):
            p = paramsFunc()
            E = eigenEnergies(p)
            self.assertAlmostEqual(E[1], (E[2] + E[3]) / 2, places=12)
            p = paramsFunc(offset='auto:1314')
            E = eigenEnergies(p)
            self.assertAlmostEqual(E[0], (E[2] + E[3]) / 2, places=12)

        with self.assertRaises(ValidationException):
            resonanceOffset(p, '13')

    def test_offsetWithoutMixing(self):
        # Without B the 2324 centring offset is omegaI/2 + A/4, which
        # equals A/2 only on the cancellation line A = 2 omegaI
        omegaI, A = -14.728, -10.0
        p = SpinParams(0.0, mhzToRad(omegaI), mhzToRad(A), 0.0)
        offset = resonanceOffset(p, '2324')
        self.assertAlmostEqual(offset, mhzToRad(omegaI / 2 + A / 4),
                               places=12)
        self.assertNotAlmostEqual(offset, mhzToRad(A / 2), places=3)
        E = eigenEnergies(p.withOffset(offset))
        self.assertAlmostEqual(E[1], (E[2] + E[3]) / 2, places=12)


class TestHyperfine(BaseTest):
    _labels = [SMALL]

    def test_principalAxes(self):
        tensor = HyperfineTensor.fromDegrees([-2.0, 4.0, 8.0])
        A, B = hyperfineFromOrientation(tensor, [0, 0, 1])
        self.assertAlmostEqual(A, 8.0)
        self.assertAlmostEqual(B, 0.0, places=6)
        A, B = hyperfineFromOrientation(tensor, [1, 0, 0])
        self.assertAlmostEqual(A, -2.0)

        s = 1 / math.sqrt(2)
        A, B = hyperfineFromOrientation(tensor, [s, 0, s])
        self.assertAlmostEqual(A, 3.0)
        self.assertAlmostEqual(B, 5.0)

    def test_eulerAngles(self):
        # The tensor z axis is taken to the laboratory x axis
        tensor = HyperfineTensor.fromDegrees([-2.0, 4.0, 8.0], [0, 90, 0])
        A, B = hyperfineFromOrientation(tensor, [1, 0, 0])
        self.assertAlmostEqual(A, 8.0)
        self.assertAlmostEqual(B, 0.0, places=5)
        self.assertMatrixAlmostEqual(tensor.getMatrix(),
                                     tensor.getMatrix().T, 1e-12)

        # Axial tensors do not change when turned about their axis
        axial = HyperfineTensor.fromDegrees([1.0, 1.0, 6.0])
        turned = HyperfineTensor.fromDegrees([1.0, 1.0, 6.0], [35, 0, 0])
        n = [0.6, 0.0, 0.8]
        np.testing.assert_allclose(hyperfineFromOrientation(axial, n),
                                   hyperfineFromOrientation(turned, n))

    def test_invalid(self):
        tensor = HyperfineTensor.fromDegrees([1.0, 1.0, 6.0])
        with self.assertRaises(ValidationException):
            hyperfineFromOrientation(tensor, [1, 1, 0])
        with self.assertRaises(ValidationException):
            HyperfineTensor([1.0, 2.0])

    def test_protonOmegaI(self):
        omegaI = protonOmegaI(42.577)
        self.assertAlmostEqual(radToMhz(omegaI(0.35)), -42.577 * 0.35)


class TestCancellationScan(BaseTest):
    _labels = [SMALL]

    def setUp(self):
        s = 1 / math.sqrt(2)
        self.tensor = HyperfineTensor.fromDegrees([5.0, 5.0, -20.0])
        self.grid = ScanGrid([[1, 0, 0], [0, 0, 1], [s, 0, s]], [1.0])
        # omegaI/2pi = -10 MHz at 1 T, so A = -20 MHz cancels
        self.omegaIFn = protonOmegaI(10.0)

    def test_sorted(self):
        rows = cancellationScan(self.tensor, self.omegaIFn, self.grid)
        self.assertEqual([r.index for r in rows], [1, 2, 0])
        self.assertAlmostEqual(rows[0].getMismatchMHz(), 0.0, places=9)
        self.assertAlmostEqual(rows[1].getMismatchMHz(), 12.5)
        self.assertAlmostEqual(rows[2].getMismatchMHz(), 25.0)
        self.assertAlmostEqual(rows[1].B, 12.5)

    def test_threadsKeepOrder(self):
        serial = cancellationScan(self.tensor, self.omegaIFn, self.grid,
                                  nThreads=1)
        threaded = cancellationScan(self.tensor, self.omegaIFn, self.grid,
                                    nThreads=3)
        self.assertEqual([r.index for r in serial],
                         [r.index for r in threaded])
        self.assertEqual([r.mismatch for r in serial],
                         [r.mismatch for r in threaded])

    def test_sphere(self):
        grid = ScanGrid.sphere(90, [0.3, 0.35])
        self.assertEqual(len(grid.directions), 6)
        self.assertEqual(len(grid), 12)
        for d in grid.directions:
            self.assertAlmostEqual(np.linalg.norm(d), 1.0)
        with self.assertRaises(ValidationException):
            ScanGrid.sphere(0, [0.3])

    def test_emptyGrid(self):
        with self.assertRaises(EngineException):
            cancellationScan(self.tensor, self.omegaIFn, ScanGrid([], [1.0]))


if __name__ == '__main__':
    unittest.main()
