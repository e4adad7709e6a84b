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
Matplotlib figures written as PNG files next to the command outputs.
Only the non interactive Agg backend is used.
"""

try:
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

from pyspinctl.exceptions import EngineException
from pyspinctl.utils import makeFilePath


class Plotter:
    """ Grid of x rows by y columns of subplots in one figure. """
    def __init__(self, x=1, y=1, mainTitle="", figsize=None, dpi=100,
                 fontsize=8):
        if plt is None:
            raise EngineException("matplotlib is needed to write plots")
        if figsize is None:
            figsize = (6, 4) if x == 1 and y == 1 else (8, 3 * x)
        self.figure = plt.figure(figsize=figsize, dpi=dpi)
        if mainTitle:
            self.figure.suptitle(mainTitle, fontsize=fontsize + 4)
        self.plot_count = 0
        self.last_subplot = None
        self.fontsize = fontsize
        self.plot_title_fontsize = fontsize + 4
        self.plot_axis_fontsize = fontsize + 2
        self.gridx = x
        self.gridy = y

    def getFigure(self):
        return self.figure

    def createSubPlot(self, title, xlabel, ylabel):
        """ Add the next subplot with its title and axis labels. """
        self.plot_count += 1
        a = self.figure.add_subplot(self.gridx, self.gridy, self.plot_count)
        a.set_title(title, fontsize=self.plot_title_fontsize)
        a.set_xlabel(xlabel, fontsize=self.plot_axis_fontsize)
        a.set_ylabel(ylabel, fontsize=self.plot_axis_fontsize)
        for label in a.xaxis.get_ticklabels() + a.yaxis.get_ticklabels():
            label.set_fontsize(self.fontsize)
        self.last_subplot = a
        self.plot = a.plot
        return a

    def legend(self, loc='best', **kwargs):
        self.last_subplot.legend(loc=loc, fontsize=self.fontsize, **kwargs)

    def savefig(self, path, **kwargs):
        makeFilePath(path)
        self.figure.tight_layout()
        self.figure.savefig(path, **kwargs)

    def close(self):
        plt.close(self.figure)


def plotTrace(trace, path, columns=None, title='Trace'):
    """ Write the selected columns of a sequence Trace against time. """
    plotter = Plotter(mainTitle=title)
    plotter.createSubPlot('', 'time (ns)', 'expectation value')
    for name in columns or trace.getObservables():
        plotter.plot(trace.times, trace.getColumn(name), label=name)
    plotter.legend()
    plotter.savefig(path)
    plotter.close()


def plotSpectrum(spec, path, peaks=(), title='Spectrum'):
    """ Write a magnitude spectrum with the picked peaks marked. """
    plotter = Plotter(mainTitle=title)
    plotter.createSubPlot('', 'frequency (MHz)', 'magnitude')
    plotter.plot(spec.getFrequencies(), spec.magnitudes)
    if peaks:
        plotter.plot([f for f, _ in peaks], [m for _, m in peaks], 'o')
    plotter.savefig(path)
    plotter.close()
