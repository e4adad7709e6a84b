#!/usr/bin/env python

import math
import unittest

import numpy as np

from pyspinctl.constants import TRANSITIONS, DOUBLETS
from pyspinctl.exceptions import ValidationException
from pyspinctl.spin import (sigmaState, thermalState, evolve, populations,
                            expHermitian, buildOperator, gateFidelity, SY24)
from pyspinctl.spin.model import (derive, toEigenbasis, fromEigenbasis,
                                  buildHamiltonian, mhzToRad)
from pyspinctl.spin.pulses import (freePropagator, idealSelectivePulse,
                                   finitePulse, idealSemiselective,
                                   semiselectiveGenerator, sharedLevel,
                                   dephase, togglingFidelity,
                                   finitePulseFidelity, getPropagatorCache,
                                   PropagatorCache)
from pyspinctl.tests import (BaseTest, SMALL, experimentParams,
                             cancellationParams, weakCouplingParams,
                             simulationParams)


def eigenState(p, level):
    """ Projector onto the eigenstate of a level (0 based). """
    rho = np.zeros((4, 4), dtype=complex)
    rho[level, level] = 1.0
    return fromEigenbasis(rho, p)


def eigenPopulations(rho, p):
    return np.real(np.diag(toEigenbasis(rho, p)))


class TestFreePropagator(BaseTest):
    _labels = [SMALL]

    def test_free(self):
        p = experimentParams()
        U = freePropagator(p, 250.0)
        self.assertUnitary(U)
        self.assertMatrixAlmostEqual(
            U, expHermitian(buildHamiltonian(p), 250.0), 1e-12)
        self.assertMatrixAlmostEqual(freePropagator(p, 0.0), np.eye(4))
        with self.assertRaises(ValidationException):
            freePropagator(p, -1.0)

    def test_cache(self):
        cache = PropagatorCache(maxSize=2)
        calls = []

        def build():
            calls.append(1)
            return np.eye(4, dtype=complex)

        first = cache.get('a', build)
        second = cache.get('a', build)
        self.assertIs(first, second)
        self.assertEqual(len(calls), 1)
        self.assertFalse(first.flags.writeable)
        cache.get('b', build)
        cache.get('c', build)
        self.assertLessEqual(len(cache), 2)
        cache.clear()
        self.assertEqual(len(cache), 0)

        p = experimentParams()
        self.assertIs(freePropagator(p, 12.0), freePropagator(p, 12.0))
        self.assertGreater(len(getPropagatorCache()), 0)


class TestSelectivePulses(BaseTest):
    _labels = [SMALL]

    def test_unitary(self):
        for p in (experimentParams(), weakCouplingParams()):
            for target in TRANSITIONS:
                for angle in (math.pi / 2, math.pi, 1.234):
                    self.assertUnitary(idealSelectivePulse(p, target, angle))

    def test_inversion(self):
        p = experimentParams()
        d = derive(p)
        # Allowed transitions rotate by angle*cos(eta), the 24 pulse moves
        # |ab> to |bb> in the product basis
        rho = evolve(sigmaState('ab'),
                     idealSelectivePulse(p, '24', math.pi / math.cos(d.eta)))
        np.testing.assert_allclose(populations(rho), [0, 0, 0, 1],
                                   atol=1e-12)
        # Nuclear transitions use the nominal angle
        rho = evolve(eigenState(p, 0), idealSelectivePulse(p, '12', math.pi))
        np.testing.assert_allclose(eigenPopulations(rho, p), [0, 1, 0, 0],
                                   atol=1e-12)
        rho = evolve(eigenState(p, 2),
                     idealSelectivePulse(p, '34', math.pi / 2))
        np.testing.assert_allclose(eigenPopulations(rho, p),
                                   [0, 0, 0.5, 0.5], atol=1e-12)

    def test_allowedPulse(self):
        # The 24 pulse is exp(-i beta cos(eta) Sy24) in the product basis
        for p in (experimentParams(), cancellationParams(),
                  weakCouplingParams()):
            d = derive(p)
            for beta in (math.pi / 2, math.pi, 2.1):
                expected = expHermitian(buildOperator(SY24),
                                        beta * math.cos(d.eta))
                self.assertMatrixAlmostEqual(
                    idealSelectivePulse(p, '24', beta), expected, tol=1e-12)

    def test_spectators(self):
        # A pulse on 13 leaves levels 2 and 4 alone
        p = experimentParams()
        U = toEigenbasis(idealSelectivePulse(p, '13', 0.8), p)
        self.assertAlmostEqual(abs(U[1, 1]), 1.0)
        self.assertAlmostEqual(abs(U[3, 3]), 1.0)

    def test_phase(self):
        # Phase changes the axis, not the transfer
        p = experimentParams()
        rho = evolve(eigenState(p, 0),
                     idealSelectivePulse(p, '12', math.pi, math.pi / 2))
        np.testing.assert_allclose(eigenPopulations(rho, p), [0, 1, 0, 0],
                                   atol=1e-12)

    def test_invalid(self):
        p = experimentParams()
        with self.assertRaises(ValidationException):
            idealSelectivePulse(p, '14', math.pi)
        with self.assertRaises(ValidationException):
            idealSelectivePulse(p, '12', math.nan)


class TestSemiselective(BaseTest):
    _labels = [SMALL]

    def test_generator(self):
        p = experimentParams()
        for doublet in DOUBLETS:
            G = toEigenbasis(semiselectiveGenerator(p, doublet), p)
            self.assertHermitian(G)
            shared = sharedLevel(doublet)
            # Only the shared row and column, with unit spin 1/2 weight
            mask = np.zeros((4, 4), dtype=bool)
            mask[shared, 2:] = mask[2:, shared] = True
            self.assertLess(np.max(np.abs(G[~mask])), 1e-12)
            self.assertAlmostEqual(np.sum(np.abs(G[shared, 2:]) ** 2), 0.25)

    def test_inversion(self):
        p = experimentParams()
        for doublet in DOUBLETS:
            shared = sharedLevel(doublet)
            U = idealSemiselective(p, doublet, math.pi)
            self.assertUnitary(U)
            pops = eigenPopulations(evolve(eigenState(p, shared), U), p)
            self.assertAlmostEqual(pops[shared], 0.0, places=12)
            self.assertAlmostEqual(pops[2] + pops[3], 1.0, places=12)

    def test_betaToAlpha(self):
        # With nearly no alpha mixing, (pi)2324 takes |bb> to |ab>
        p = cancellationParams(B_MHz=1e-4)
        rho = evolve(sigmaState('bb'), idealSemiselective(p, '2324', math.pi))
        self.assertGreater(populations(rho)[1], 1 - 1e-6)

    def test_invalid(self):
        with self.assertRaises(ValidationException):
            idealSemiselective(experimentParams(), '24', math.pi)


class TestDephase(BaseTest):
    _labels = [SMALL]

    def test_dephase(self):
        p = experimentParams()
        rho = evolve(thermalState(),
                     idealSemiselective(p, '2324', math.pi / 2))
        out = dephase(rho, p)
        inEigen = toEigenbasis(out, p)
        self.assertMatrixAlmostEqual(inEigen, np.diag(np.diag(inEigen)),
                                     1e-12)
        self.assertAlmostEqual(np.trace(out).real, np.trace(rho).real)
        self.assertMatrixAlmostEqual(dephase(out, p), out, 1e-12)
        # Populations of the eigenbasis are kept
        np.testing.assert_allclose(eigenPopulations(out, p),
                                   eigenPopulations(rho, p), atol=1e-12)


class TestFinitePulse(BaseTest):
    _labels = [SMALL]

    def test_unitary(self):
        p = experimentParams()
        self.assertUnitary(finitePulse(p, mhzToRad(15.6), 16.0))
        with self.assertRaises(ValidationException):
            finitePulse(p, mhzToRad(15.6), 0.0)

    def test_inversion(self):
        # A 32 ns pi pulse at 15.6 MHz takes |ab> mostly to the beta manifold
        p = experimentParams()
        rho = evolve(sigmaState('ab'), finitePulse(p, mhzToRad(15.6), 32.0))
        pops = populations(rho)
        self.assertGreater(pops[2] + pops[3], 0.95)

    def test_fidelity(self):
        p = experimentParams()
        f = finitePulseFidelity(p, '2324', mhzToRad(15.6), 32.0)
        self.assertGreater(f, 0.95)
        self.assertLessEqual(f, 1.0 + 1e-12)
        V = idealSemiselective(p, '2324', math.pi)
        self.assertAlmostEqual(togglingFidelity(p, V, V, 0.0), 1.0)

    def test_simulatedSample(self):
        # The 15.6 MHz, 32 ns rectangular pi pulse against the ideal
        # semi-selective one, without and with the toggling frame
        p = simulationParams()
        V = idealSemiselective(p, '2324', math.pi)
        W = finitePulse(p, mhzToRad(15.6), 32.0)
        self.assertGreater(gateFidelity(V, W), 0.95)
        self.assertGreater(togglingFidelity(p, V, W, 32.0), 0.9)
        rho = evolve(sigmaState('ab'), W)
        pops = populations(rho)
        self.assertGreater(pops[2] + pops[3], 0.95)


if __name__ == '__main__':
    unittest.main()
