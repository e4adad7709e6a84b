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
This module have the classes for execution of independent tasks.
The basic one will run tasks, one by one, in the calling thread.
There is one based on threads to execute tasks in parallel.
Both return the results in the order of the input tasks, so merged
results do not depend on the number of threads.
"""

import logging
import threading
import traceback

logger = logging.getLogger(__name__)


class TaskExecutor:
    """ Run a list of tasks (callables without arguments). """
    def __init__(self, **kwargs):
        pass

    def getNumberOfThreads(self):
        return 1

    def runTasks(self, tasks):
        return [task() for task in tasks]


class TaskThread(threading.Thread):
    """ Thread to run tasks in parallel. Every thread takes the next
    pending index from the shared queue until it is empty. """
    def __init__(self, thId, tasks, results, errors, state, lock):
        threading.Thread.__init__(self)
        self.thId = thId
        self.tasks = tasks
        self.results = results
        self.errors = errors
        self.state = state
        self.lock = lock

    def _nextIndex(self):
        with self.lock:
            i = self.state['next']
            if i >= len(self.tasks) or self.errors:
                return None
            self.state['next'] = i + 1
            return i

    def run(self):
        while True:
            i = self._nextIndex()
            if i is None:
                break
            try:
                self.results[i] = self.tasks[i]()
            except Exception as e:
                logger.debug(traceback.format_exc())
                with self.lock:
                    self.errors.append((i, e))


class ThreadTaskExecutor(TaskExecutor):
    """ Run tasks in parallel using threads. """
    def __init__(self, nThreads, **kwargs):
        TaskExecutor.__init__(self, **kwargs)
        self.numberOfThreads = max(1, int(nThreads))

    def getNumberOfThreads(self):
        return self.numberOfThreads

    def runTasks(self, tasks):
        tasks = list(tasks)
        results = [None] * len(tasks)
        errors = []
        sharedLock = threading.Lock()
        state = {'next': 0}

        threads = [TaskThread(thId, tasks, results, errors, state, sharedLock)
                   for thId in range(min(self.numberOfThreads, len(tasks)))]
        for th in threads:
            th.start()
        for th in threads:
            th.join()

        if errors:
            # Report the failing task with the lowest index
            raise sorted(errors, key=lambda e: e[0])[0][1]
        return results


def getExecutor(nThreads=1):
    """ Serial executor for one thread, threaded otherwise. """
    if nThreads is None or nThreads <= 1:
        return TaskExecutor()
    return ThreadTaskExecutor(nThreads)
